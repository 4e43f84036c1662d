use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{EchelonBuilder, Matrix, Scalar, Subspace};

/// Sparse structure constants: entry `i·dim + j` lists `(k, c)` with `e_i e_j = Σ c e_k`.
pub type Table = Vec<Vec<(u32, Scalar)>>;

/// A finite-dimensional unital algebra over ℚ(i) with a ℤ₂-grading on its basis.
#[derive(Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    labels: Vec<String>,
    table: Table,
    unit: Vec<Scalar>,
    grading: Vec<u8>,
}

impl fmt::Debug for FdAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdAlgebra(dim {}, {:?})", self.dim(), self.labels)
    }
}

impl FdAlgebra {
    /// Checks table shape, grading compatibility and the unit law.
    pub fn from_sparse(labels: Vec<String>, table: Table, unit: Vec<Scalar>, grading: Vec<u8>) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim || unit.len() != dim || grading.len() != dim {
            return Err(Error::InvalidPresentation(format!(
                "table of {} entries for dimension {dim}",
                table.len()
            )));
        }
        for (idx, entry) in table.iter().enumerate() {
            let (i, j) = (idx / dim, idx % dim);
            for (k, c) in entry {
                if *k as usize >= dim {
                    return Err(Error::InvalidPresentation(format!("basis index {k} out of range")));
                }
                if !c.is_zero() && grading[*k as usize] != (grading[i] + grading[j]) % 2 {
                    return Err(Error::NotHomogeneous);
                }
            }
        }
        let a = FdAlgebra {
            labels,
            table: table
                .into_iter()
                .map(|e| e.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                .collect(),
            unit,
            grading: grading.into_iter().map(|g| g % 2).collect(),
        };
        for k in 0..dim {
            let e = a.basis_vector(k);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(Error::Verification(format!("unit law fails on {}", a.labels[k])));
            }
        }
        Ok(a)
    }

    /// Builds a table from a product closure on basis indices.
    pub fn from_fn<F>(labels: Vec<String>, grading: Vec<u8>, unit: Vec<Scalar>, product: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Vec<Scalar>,
    {
        let dim = labels.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(sparse(&product(i, j)));
            }
        }
        FdAlgebra::from_sparse(labels, table, unit, grading)
    }

    /// ℚ(i) in degree 0.
    pub fn ground_field() -> Self {
        FdAlgebra::from_sparse(vec!["1".into()], vec![vec![(0, Scalar::one())]], vec![Scalar::one()], vec![0]).unwrap()
    }

    /// ℂG = span{1, σ}, σ² = 1, σ odd.
    pub fn group_algebra() -> Self {
        FdAlgebra::from_fn(vec!["1".into(), "s".into()], vec![0, 1], unit_vector(2, 0), |i, j| {
            unit_vector(2, (i + j) % 2)
        })
        .unwrap()
    }

    /// `ℚ(i)[t]/(p)` in degree 0 on the basis `1, t, …, t^{d−1}`.
    pub fn truncated_polynomial(p: &crate::exactlinalg::Poly) -> Result<Self> {
        let d = p.degree().filter(|d| *d > 0).ok_or(Error::Verification("constant modulus".into()))?;
        let p = p.monic();
        let labels = (0..d).map(|k| match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        });
        FdAlgebra::from_fn(labels.collect(), vec![0; d], unit_vector(d, 0), |i, j| {
            let mut c = vec![Scalar::zero(); i + j + 1];
            c[i + j] = Scalar::one();
            let (_, r) = crate::exactlinalg::Poly::new(c).div_rem(&p);
            let mut out = r.coeffs().to_vec();
            out.resize(d, Scalar::zero());
            out
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn grading(&self) -> &[u8] {
        &self.grading
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        unit_vector(self.dim(), k)
    }

    /// `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk as usize == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, c) in &self.table[i * self.dim() + j] {
            out[*k as usize] = c.clone();
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * dim + j] {
                    out[*k as usize] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], e: usize) -> Vec<Scalar> {
        (0..e).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    pub fn is_graded(&self) -> bool {
        self.grading.contains(&1)
    }

    /// Splits `v` into its degree-0 and degree-1 components.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut even = vec![Scalar::zero(); self.dim()];
        let mut odd = vec![Scalar::zero(); self.dim()];
        for (k, c) in v.iter().enumerate() {
            if self.grading[k] == 0 {
                even[k] = c.clone();
            } else {
                odd[k] = c.clone();
            }
        }
        (even, odd)
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, v: &[Scalar]) -> Option<u8> {
        let (even, odd) = self.homogeneous_parts(v);
        match (is_zero(&even), is_zero(&odd)) {
            (false, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }

    pub fn degree_indices(&self, d: u8) -> Vec<usize> {
        (0..self.dim()).filter(|k| self.grading[*k] == d).collect()
    }

    pub fn degree_part(&self, d: u8) -> Subspace {
        let vs = self.degree_indices(d).into_iter().map(|k| self.basis_vector(k)).collect();
        Subspace::span(self.dim(), vs)
    }

    pub fn verify_associative(&self) -> Result<()> {
        let dim = self.dim();
        let check = |i: usize| -> Result<()> {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::Verification(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
            Ok(())
        };
        crate::par::map(&(0..dim).collect::<Vec<_>>(), |i| check(*i))
            .into_iter()
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| (i + 1..dim).all(|j| self.table[i * dim + j] == self.table[j * dim + i]))
    }

    /// Same table with the grading erased.
    pub fn ungraded(&self) -> FdAlgebra {
        FdAlgebra {
            grading: vec![0; self.dim()],
            ..self.clone()
        }
    }

    /// Matrix of `y ↦ x·y` (column `j` is `x·e_j`).
    pub fn left_multiplication(&self, x: &[Scalar]) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let col = self.mul(x, &self.basis_vector(j));
            for (k, c) in col.into_iter().enumerate() {
                m.row_mut(k)[j] = c;
            }
        }
        m
    }

    /// `{x : x·e_j = e_j·x for all j}`.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let mut eq = EchelonBuilder::new(dim);
        for j in 0..dim {
            // row (j, k): Σ_i x_i (c[i][j][k] − c[j][i][k])
            let mut rows = vec![vec![Scalar::zero(); dim]; dim];
            for i in 0..dim {
                for (k, c) in &self.table[i * dim + j] {
                    rows[*k as usize][i] += c;
                }
                for (k, c) in &self.table[j * dim + i] {
                    rows[*k as usize][i] -= c;
                }
            }
            for r in rows {
                if !is_zero(&r) {
                    eq.push(r);
                }
            }
            if eq.rank() == dim {
                break;
            }
        }
        eq.kernel()
    }

    /// Span of all products `a·b` with `a ∈ u`, `b ∈ v`.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut acc = EchelonBuilder::new(self.dim());
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                acc.push(self.mul(&a, &b));
            }
        }
        acc.row_space()
    }

    /// Two-sided ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let full = Subspace::full(self.dim());
        let g = Subspace::span(self.dim(), gens.to_vec());
        let left = self.product_space(&full, &g);
        self.product_space(&left, &full)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis_vectors().iter().all(|v| {
            (0..self.dim()).all(|k| {
                let e = self.basis_vector(k);
                s.contains(&self.mul(v, &e)) && s.contains(&self.mul(&e, v))
            })
        })
    }

    pub fn is_homogeneous_subspace(&self, s: &Subspace) -> bool {
        s.basis_vectors().iter().all(|v| {
            let (even, odd) = self.homogeneous_parts(v);
            s.contains(&even) && s.contains(&odd)
        })
    }

    /// Subalgebra spanned by `vectors` with identity `unit` (which may be a non-unit idempotent
    /// of `self`, giving a corner or block). Basis: the canonical basis of the span.
    /// The grading is inherited when every basis vector is homogeneous, and erased otherwise.
    pub fn subalgebra(&self, vectors: Vec<Vec<Scalar>>, unit: &[Scalar]) -> Result<Embedded> {
        let span = Subspace::span(self.dim(), vectors);
        self.subalgebra_on(span, unit)
    }

    pub fn subalgebra_on(&self, span: Subspace, unit: &[Scalar]) -> Result<Embedded> {
        let basis = span.basis_vectors();
        let degrees: Vec<Option<u8>> = basis.iter().map(|b| self.degree_of(b)).collect();
        let grading: Vec<u8> = if degrees.iter().all(Option::is_some) {
            degrees.into_iter().map(Option::unwrap).collect()
        } else {
            vec![0; basis.len()]
        };
        let coords = |v: &[Scalar]| {
            span.coordinates(v)
                .ok_or_else(|| Error::Verification("subspace not closed under multiplication".into()))
        };
        let unit_c = coords(unit)?;
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                table.push(sparse(&coords(&self.mul(a, b))?));
            }
        }
        let labels = (0..basis.len()).map(|k| format!("b{k}")).collect();
        let algebra = FdAlgebra::from_sparse(labels, table, unit_c, grading)?;
        Ok(Embedded { algebra, span })
    }

    /// Quotient by a two-sided ideal; basis = standard basis vectors off the ideal's pivots.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::Verification("quotient by a non-ideal".into()));
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|k| !ideal.pivots().contains(k)).collect();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let mut table = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                table.push(sparse(&project(&self.basis_product(i, j))));
            }
        }
        let homogeneous = self.is_homogeneous_subspace(ideal);
        let grading = keep
            .iter()
            .map(|&k| if homogeneous { self.grading[k] } else { 0 })
            .collect();
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        let algebra = FdAlgebra::from_sparse(labels, table, project(&self.unit), grading)?;
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            kept: keep,
        })
    }

    /// Twisted tensor product with the Koszul sign: `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
    /// Basis `(i, j) ↦ i·dim(other) + j`.
    pub fn twisted_tensor(&self, other: &FdAlgebra) -> FdAlgebra {
        self.tensor_with_sign(other, true)
    }

    /// Ordinary tensor product of algebras, with the total grading.
    pub fn tensor(&self, other: &FdAlgebra) -> FdAlgebra {
        self.tensor_with_sign(other, false)
    }

    fn tensor_with_sign(&self, other: &FdAlgebra, twisted: bool) -> FdAlgebra {
        let (m, n) = (self.dim(), other.dim());
        let mut labels = Vec::with_capacity(m * n);
        let mut grading = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                labels.push(tensor_label(&self.labels[i], &other.labels[j]));
                grading.push((self.grading[i] + other.grading[j]) % 2);
            }
        }
        let mut table = Vec::with_capacity(m * m * n * n);
        for i in 0..m {
            for j in 0..n {
                for i2 in 0..m {
                    for j2 in 0..n {
                        let sign = if twisted && other.grading[j] == 1 && self.grading[i2] == 1 {
                            -Scalar::one()
                        } else {
                            Scalar::one()
                        };
                        let mut entry = Vec::new();
                        for (k, c) in &self.table[i * m + i2] {
                            for (l, d) in &other.table[j * n + j2] {
                                entry.push((*k * n as u32 + *l, &(c * d) * &sign));
                            }
                        }
                        entry.sort_by_key(|(k, _)| *k);
                        table.push(entry);
                    }
                }
            }
        }
        let mut unit = vec![Scalar::zero(); m * n];
        for (i, a) in self.unit.iter().enumerate() {
            for (j, b) in other.unit.iter().enumerate() {
                unit[i * n + j] = a * b;
            }
        }
        FdAlgebra {
            labels,
            table,
            unit,
            grading,
        }
    }

    /// Direct product `self × other`, basis concatenated.
    pub fn product(&self, other: &FdAlgebra) -> FdAlgebra {
        let (m, n) = (self.dim(), other.dim());
        let d = m + n;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..m {
            for j in 0..m {
                table[i * d + j] = self.table[i * m + j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                table[(m + i) * d + m + j] = other.table[i * n + j]
                    .iter()
                    .map(|(k, c)| (*k + m as u32, c.clone()))
                    .collect();
            }
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let mut grading = self.grading.clone();
        grading.extend(other.grading.iter().copied());
        FdAlgebra {
            labels,
            table,
            unit,
            grading,
        }
    }

    /// Relabels the basis by an invertible matrix whose rows are the new basis vectors.
    pub fn change_basis(&self, rows: &Matrix) -> Result<FdAlgebra> {
        let inv = rows
            .inverse()
            .ok_or_else(|| Error::Verification("singular change of basis".into()))?;
        let basis = rows.row_vecs();
        // new coordinates of v: solve c·rows = v, i.e. c = v·rows⁻¹
        let coords = |v: &[Scalar]| -> Vec<Scalar> {
            (0..v.len())
                .map(|c| (0..v.len()).map(|r| &v[r] * &inv[(r, c)]).sum())
                .collect()
        };
        let mut table = Vec::new();
        for a in &basis {
            for b in &basis {
                table.push(sparse(&coords(&self.mul(a, b))));
            }
        }
        let grading = basis.iter().map(|b| self.degree_of(b).unwrap_or(0)).collect();
        let labels = (0..basis.len()).map(|k| format!("b{k}")).collect();
        FdAlgebra::from_sparse(labels, table, coords(&self.unit), grading)
    }

    /// Dense structure-constant cube `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let dim = self.dim();
        (0..dim)
            .map(|i| (0..dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    /// Checks that the linear map sending basis vector `k` of `self` to `images[k]` in `target`
    /// is a unital algebra isomorphism.
    pub fn is_isomorphism(&self, target: &FdAlgebra, images: &[Vec<Scalar>]) -> bool {
        if images.len() != self.dim() || target.dim() != self.dim() {
            return false;
        }
        let m = Matrix::from_rows(target.dim(), images.to_vec());
        if m.rank() != self.dim() {
            return false;
        }
        let apply = |v: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); target.dim()];
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(&images[k]) {
                    *o += &(c * x);
                }
            }
            out
        };
        if apply(&self.unit) != target.unit {
            return false;
        }
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| apply(&self.basis_product(i, j)) == target.mul(&images[i], &images[j]))
        })
    }
}

/// A subalgebra together with its span inside the ambient algebra.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub algebra: FdAlgebra,
    pub span: Subspace,
}

impl Embedded {
    /// Ambient vector of an element given in subalgebra coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.span.ambient_dim()];
        for (c, b) in coords.iter().zip(self.span.basis_vectors()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&b) {
                *o += &(c * x);
            }
        }
        out
    }

    pub fn coordinates(&self, ambient: &[Scalar]) -> Option<Vec<Scalar>> {
        self.span.coordinates(ambient)
    }
}

/// A quotient algebra, with the kept standard basis indices of the ambient algebra.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FdAlgebra,
    pub ideal: Subspace,
    pub kept: Vec<usize>,
}

impl Quotient {
    /// The canonical preimage: zero on the ideal's pivot positions.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ideal.ambient_dim()];
        for (c, &k) in coords.iter().zip(&self.kept) {
            out[k] = c.clone();
        }
        out
    }

    pub fn project(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        let r = self.ideal.reduce(ambient);
        self.kept.iter().map(|&k| r[k].clone()).collect()
    }
}

fn tensor_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}.{b}"),
    }
}

pub fn unit_vector(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[k] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sparse(v: &[Scalar]) -> Vec<(u32, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c.clone()))
        .collect()
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(x: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    x.iter().map(|a| a * c).collect()
}
