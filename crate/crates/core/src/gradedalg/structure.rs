use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{is_zero, scale, sub, FdAlgebra};
use super::search::candidates;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::{factor_small, minimal_polynomial, EchelonBuilder, Matrix, Poly, Scalar, Subspace};

/// Jacobson radical by the trace-form criterion: `x ∈ J` iff `tr L_{x·y} = 0` for all `y`.
/// The result is checked to be a nilpotent two-sided ideal, and homogeneous when `a` is graded.
pub fn radical(a: &FdAlgebra) -> Result<Subspace> {
    let dim = a.dim();
    let traces: Vec<Scalar> = (0..dim)
        .map(|k| (0..dim).map(|m| a.structure_constant(k, m, m)).sum())
        .collect();
    let mut form = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut t = Scalar::zero();
            for (k, c) in &a.table()[i * dim + j] {
                t += &(c * &traces[*k as usize]);
            }
            form.row_mut(i)[j] = t;
        }
    }
    // the form is symmetric, so its kernel is the radical of the pairing
    let j = crate::exactlinalg::kernel(&form);
    if !a.is_ideal(&j) {
        return Err(Error::Verification("trace radical is not an ideal".into()));
    }
    if a.is_graded() && !a.is_homogeneous_subspace(&j) {
        return Err(Error::RadicalNotHomogeneous);
    }
    radical_powers(a, &j)?;
    Ok(j)
}

/// `[J, J², J³, …]` down to (excluding) the zero power; errors if `J` is not nilpotent.
pub fn radical_powers(a: &FdAlgebra, j: &Subspace) -> Result<Vec<Subspace>> {
    let mut powers = Vec::new();
    let mut current = j.clone();
    while !current.is_zero() {
        if powers.len() > a.dim() {
            return Err(Error::NotNilpotent);
        }
        let next = a.product_space(&current, j);
        if next == current {
            return Err(Error::NotNilpotent);
        }
        powers.push(current);
        current = next;
    }
    Ok(powers)
}

/// Layer dims `dim J/J², dim J²/J³, …`.
pub fn radical_layers(a: &FdAlgebra, j: &Subspace) -> Result<Vec<usize>> {
    let powers = radical_powers(a, j)?;
    Ok((0..powers.len())
        .map(|k| powers[k].dim() - powers.get(k + 1).map_or(0, Subspace::dim))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// `M_n(ℚ(i))`, certified by explicit idempotents.
    MatrixOverBase { degree: usize },
    /// Semisimple with center a field generated by a root of `min_poly`.
    FieldExtension { min_poly: Poly },
    /// Central simple; no splitting certificate found within the search budget.
    CentralSimpleUndetermined { dim: usize },
    LocalCommutative { radical_layers: Vec<usize> },
    Local { radical_layers: Vec<usize> },
    /// Not semisimple and not local: radical plus the kind of the semisimple top.
    NonSemisimple { radical_dim: usize, top: Box<BlockKind> },
}

impl BlockKind {
    pub fn is_split(&self) -> bool {
        match self {
            BlockKind::MatrixOverBase { .. } | BlockKind::LocalCommutative { .. } | BlockKind::Local { .. } => true,
            BlockKind::NonSemisimple { top, .. } => top.is_split(),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BlockKind::MatrixOverBase { degree } => format!("M{degree}"),
            BlockKind::FieldExtension { min_poly } => format!("field[{min_poly}]"),
            BlockKind::CentralSimpleUndetermined { dim } => format!("central-simple?{dim}"),
            BlockKind::LocalCommutative { radical_layers } => format!("local-commutative{radical_layers:?}"),
            BlockKind::Local { radical_layers } => format!("local{radical_layers:?}"),
            BlockKind::NonSemisimple { radical_dim, top } => format!("radical{radical_dim}+{}", top.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub dim: usize,
    pub idempotent: Vec<Scalar>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport {
    pub blocks: Vec<Block>,
}

impl BlockReport {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn all_split(&self) -> bool {
        self.blocks.iter().all(|b| b.kind.is_split())
    }
}

/// A primitive idempotent of a commutative semisimple algebra and what is known about its component.
#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub idempotent: Vec<Scalar>,
    pub dim: usize,
    pub field: Option<Poly>,
}

fn idempotent_rank(s: &FdAlgebra, e: &[Scalar]) -> (Vec<Vec<Scalar>>, usize) {
    let mut acc = EchelonBuilder::new(s.dim());
    for k in 0..s.dim() {
        acc.push(s.mul(e, &s.basis_vector(k)));
    }
    let sp = acc.row_space();
    (sp.basis_vectors(), sp.dim())
}

/// Coprime factor parts of a minimal polynomial (factors with multiplicity, plus any
/// unfactored remainder).
fn coprime_parts(m: &Poly) -> Vec<Poly> {
    let f = factor_small(m);
    let mut parts: Vec<Poly> = f.factors.iter().map(|(p, k)| p.pow(*k)).collect();
    if f.remainder.degree().unwrap_or(0) > 0 {
        parts.push(f.remainder.monic());
    }
    parts
}

/// CRT idempotents `s_q·(m/q)` evaluated at `x`, one per coprime part `q` of `m`.
fn crt_idempotents<F>(unit: &[Scalar], x: &[Scalar], m: &Poly, parts: &[Poly], mul: F) -> Vec<Vec<Scalar>>
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar> + Copy,
{
    parts
        .iter()
        .map(|q| {
            let cof = m.div_rem(q).0;
            let (_, s, _) = cof.ext_gcd(q);
            let e = s.mul(&cof).div_rem(m).1;
            e.eval_in(unit, x, mul)
        })
        .collect()
}

/// Primitive idempotents of a commutative semisimple algebra, by splitting along
/// minimal polynomials of search elements.
pub(crate) fn split_commutative(s: &FdAlgebra, cfg: &Config) -> Vec<Component> {
    let mul = |x: &[Scalar], y: &[Scalar]| s.mul(x, y);
    let mut queue = vec![s.unit().to_vec()];
    let mut done = Vec::new();
    while let Some(e) = queue.pop() {
        let (basis, d) = idempotent_rank(s, &e);
        if d == 1 {
            done.push(Component {
                idempotent: e,
                dim: 1,
                field: None,
            });
            continue;
        }
        let mut field = None;
        let mut split = false;
        for z in candidates(basis, cfg.search_height, cfg.seed, 8 * d + 24) {
            let z = s.mul(&e, &z);
            let m = minimal_polynomial(&e, &z, mul);
            let parts = coprime_parts(&m);
            if parts.len() >= 2 {
                let mut pieces = crt_idempotents(&e, &z, &m, &parts, mul);
                pieces.retain(|p| !is_zero(p));
                queue.extend(pieces);
                split = true;
                break;
            }
            if m.degree() == Some(d) && parts.len() == 1 && factor_small(&m).factors.len() == 1 && d == 2 {
                field = Some(m);
                break;
            }
        }
        if !split {
            done.push(Component {
                idempotent: e,
                dim: d,
                field,
            });
        }
    }
    done.sort_by(|a, b| b.dim.cmp(&a.dim));
    done
}

/// Newton iteration `e ← 3e² − 2e³` until `e² = e`.
pub fn lift_idempotent(a: &FdAlgebra, e: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut e = e.to_vec();
    for _ in 0..=2 * (usize::BITS - a.dim().leading_zeros()) + 2 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = sub(&scale(&e2, &Scalar::from(3)), &scale(&e3, &Scalar::from(2)));
    }
    Err(Error::NotNilpotent)
}

/// Nontrivial idempotent from a zero divisor `x` of a semisimple algebra: solve `x·z·x = x`
/// and return `z·x`.
pub fn idempotent_from_zero_divisor(a: &FdAlgebra, x: &[Scalar]) -> Option<Vec<Scalar>> {
    let dim = a.dim();
    // columns: x e_j x; augmented with x
    let cols: Vec<Vec<Scalar>> = (0..dim).map(|j| a.mul(&a.mul(x, &a.basis_vector(j)), x)).collect();
    let mut m = Matrix::zeros(dim, dim + 1);
    for (j, c) in cols.iter().enumerate() {
        for k in 0..dim {
            m.row_mut(k)[j] = c[k].clone();
        }
    }
    for k in 0..dim {
        m.row_mut(k)[dim] = x[k].clone();
    }
    let pivots = m.rref_in_place();
    if pivots.contains(&dim) {
        return None;
    }
    let mut z = vec![Scalar::zero(); dim];
    for (r, &p) in pivots.iter().enumerate() {
        z[p] = m[(r, dim)].clone();
    }
    let e = a.mul(&z, x);
    let trivial = is_zero(&e) || e.as_slice() == a.unit();
    (a.mul(&e, &e) == e && !trivial).then_some(e)
}

/// Certifies a central simple algebra as `M_n(ℚ(i))` by recursive corner reduction along
/// explicit idempotents. `None` when no certificate is found.
pub fn certify_split(a: &FdAlgebra, cfg: &Config) -> Option<usize> {
    let d = a.dim();
    let n = (d as f64).sqrt().round() as usize;
    if n * n != d {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    let basis: Vec<Vec<Scalar>> = (0..d).map(|k| a.basis_vector(k)).collect();
    let mul = |x: &[Scalar], y: &[Scalar]| a.mul(x, y);
    for x in candidates(basis, cfg.search_height, cfg.seed, 4 * d + 64) {
        let m = minimal_polynomial(a.unit(), &x, mul);
        if m.degree() == Some(1) {
            continue;
        }
        let f = factor_small(&m);
        let mut idem = None;
        if let Some((root, _)) = f.roots().first() {
            let y = sub(&x, &scale(a.unit(), root));
            idem = idempotent_from_zero_divisor(a, &y);
        }
        if idem.is_none() {
            let parts = coprime_parts(&m);
            if parts.len() >= 2 {
                idem = crt_idempotents(a.unit(), &x, &m, &parts, mul).into_iter().next();
            }
        }
        let Some(e) = idem else { continue };
        let other = sub(a.unit(), &e);
        let corner = |g: &[Scalar]| {
            let vs = (0..d).map(|k| a.mul(&a.mul(g, &a.basis_vector(k)), g)).collect();
            a.subalgebra(vs, g).ok()
        };
        let (c1, c2) = (corner(&e)?, corner(&other)?);
        let small = if c1.algebra.dim() <= c2.algebra.dim() { c1 } else { c2 };
        return certify_split(&small.algebra.ungraded(), cfg).map(|_| n);
    }
    if n == 2 {
        let z = quaternion_zero_divisor(a)?;
        return idempotent_from_zero_divisor(a, &z).map(|_| 2);
    }
    None
}

/// Zero divisor of a 4-dimensional central simple algebra, from a small solution of
/// `a s² + b t² − ab u² = c²` where `x² = a`, `y² = b`, `xy = −yx` are pure.
fn quaternion_zero_divisor(a: &FdAlgebra) -> Option<Vec<Scalar>> {
    let d = a.dim();
    let traces: Vec<Scalar> = (0..d)
        .map(|k| {
            let l = a.left_multiplication(&a.basis_vector(k));
            (0..d).map(|j| l[(j, j)].clone()).sum()
        })
        .collect();
    let pure = crate::exactlinalg::kernel(&Matrix::from_rows(d, vec![traces])).basis_vectors();
    let scalar_of = |v: &[Scalar]| -> Option<Scalar> {
        let k = a.unit().iter().position(|c| !c.is_zero())?;
        let c = &v[k] / &a.unit()[k];
        (scale(a.unit(), &c) == v).then_some(c)
    };
    let x = pure.first()?.clone();
    let a2 = scalar_of(&a.mul(&x, &x))?;
    if a2.is_zero() {
        return Some(x);
    }
    // y ∈ pure with xy + yx = 0
    let images: Vec<Vec<Scalar>> = pure
        .iter()
        .map(|t| super::algebra::add(&a.mul(&x, t), &a.mul(t, &x)))
        .collect();
    let mut rows = vec![Vec::with_capacity(pure.len()); d];
    for img in &images {
        for (k, c) in img.iter().enumerate() {
            rows[k].push(c.clone());
        }
    }
    let coeffs = crate::exactlinalg::kernel(&Matrix::from_rows(pure.len(), rows)).basis_vectors();
    let y = coeffs.first().map(|c| {
        c.iter()
            .zip(&pure)
            .fold(vec![Scalar::zero(); d], |acc, (ci, t)| super::algebra::add(&acc, &scale(t, ci)))
    })?;
    let b2 = scalar_of(&a.mul(&y, &y))?;
    if b2.is_zero() {
        return Some(y);
    }
    let (x, a2) = square_reduced(&x, &a2);
    let (y, b2) = square_reduced(&y, &b2);
    let xy = a.mul(&x, &y);
    let ab = &a2 * &b2;
    let small = small_gaussian_integers(3);
    for s in &small {
        for t in &small {
            for u in &small {
                if s.is_zero() && t.is_zero() && u.is_zero() {
                    continue;
                }
                let norm = &(&(&a2 * &(s * s)) + &(&b2 * &(t * t))) - &(&ab * &(u * u));
                let Some(c) = norm.sqrt() else { continue };
                let w = super::algebra::add(&super::algebra::add(&scale(&x, s), &scale(&y, t)), &scale(&xy, u));
                return Some(sub(&w, &scale(a.unit(), &c)));
            }
        }
    }
    None
}

/// Rescales `x` (with `x² = c`) so that `c` becomes a Gaussian integer free of small square factors.
fn square_reduced(x: &[Scalar], c: &Scalar) -> (Vec<Scalar>, Scalar) {
    let den = Scalar::from(num_rational::BigRational::from_integer(c.denominator_lcm()));
    let mut x = scale(x, &den);
    let mut c = &(c * &den) * &den;
    for g in small_gaussian_integers(20) {
        if g.norm() < num_rational::BigRational::from_integer(2.into()) {
            continue;
        }
        let g2 = &g * &g;
        loop {
            let q = &c / &g2;
            if q.as_gaussian_integer().is_none() {
                break;
            }
            c = q;
            x = scale(&x, &g.inv().unwrap());
        }
    }
    (x, c)
}

/// Gaussian integers with both parts in `[-h, h]`, by increasing norm.
fn small_gaussian_integers(h: i64) -> Vec<Scalar> {
    let mut out: Vec<(i64, Scalar)> = (-h..=h)
        .flat_map(|re| (-h..=h).map(move |im| (re * re + im * im, Scalar::gaussian(re, im))))
        .collect();
    out.sort_by_key(|(n, _)| *n);
    out.into_iter().map(|(_, s)| s).collect()
}

/// Blocks of `a` as an ungraded algebra: primitive central idempotents and block kinds.
pub fn block_decompose(a: &FdAlgebra) -> Result<BlockReport> {
    block_decompose_with(a, &Config::default())
}

pub fn block_decompose_with(a: &FdAlgebra, cfg: &Config) -> Result<BlockReport> {
    let a = a.ungraded();
    let center = a.subalgebra_on(a.center(), a.unit())?;
    let jz = radical(&center.algebra)?;
    let top = center.algebra.quotient(&jz)?;
    let mut blocks = Vec::new();
    for comp in split_commutative(&top.algebra, cfg) {
        let e = lift_idempotent(&center.algebra, &top.lift(&comp.idempotent))?;
        let e = center.lift(&e);
        let span: Vec<Vec<Scalar>> = (0..a.dim()).map(|k| a.mul(&e, &a.basis_vector(k))).collect();
        let block = a.subalgebra(span, &e)?;
        let kind = identify_block(&block.algebra, &comp, cfg)?;
        blocks.push(Block {
            dim: block.algebra.dim(),
            idempotent: e,
            kind,
        });
    }
    blocks.sort_by(|a, b| b.dim.cmp(&a.dim));
    let report = BlockReport { blocks };
    check_blocks(&a, &report)?;
    Ok(report)
}

fn identify_block(b: &FdAlgebra, comp: &Component, cfg: &Config) -> Result<BlockKind> {
    let j = radical(b)?;
    if j.is_zero() {
        return Ok(semisimple_kind(b, comp, cfg));
    }
    let layers = radical_layers(b, &j)?;
    if b.dim() - j.dim() == 1 {
        return Ok(if b.is_commutative() {
            BlockKind::LocalCommutative { radical_layers: layers }
        } else {
            BlockKind::Local { radical_layers: layers }
        });
    }
    let top = b.quotient(&j)?;
    Ok(BlockKind::NonSemisimple {
        radical_dim: j.dim(),
        top: Box::new(semisimple_kind(&top.algebra, comp, cfg)),
    })
}

fn semisimple_kind(b: &FdAlgebra, comp: &Component, cfg: &Config) -> BlockKind {
    if comp.dim == 1 {
        return match certify_split(b, cfg) {
            Some(n) => BlockKind::MatrixOverBase { degree: n },
            None => BlockKind::CentralSimpleUndetermined { dim: b.dim() },
        };
    }
    match &comp.field {
        Some(m) => BlockKind::FieldExtension { min_poly: m.clone() },
        None => BlockKind::CentralSimpleUndetermined { dim: b.dim() },
    }
}

/// Orthogonality, centrality, completeness and dimension count of block idempotents.
pub fn check_blocks(a: &FdAlgebra, report: &BlockReport) -> Result<()> {
    let mut total = vec![Scalar::zero(); a.dim()];
    for (i, b) in report.blocks.iter().enumerate() {
        for (j, c) in report.blocks.iter().enumerate() {
            let p = a.mul(&b.idempotent, &c.idempotent);
            let ok = if i == j { p == b.idempotent } else { is_zero(&p) };
            if !ok {
                return Err(Error::Verification("block idempotents not orthogonal".into()));
            }
        }
        if !a.center().contains(&b.idempotent) {
            return Err(Error::NotCentral("block idempotent".into()));
        }
        total = super::algebra::add(&total, &b.idempotent);
    }
    if total != a.unit() || report.dims().iter().sum::<usize>() != a.dim() {
        return Err(Error::Verification("block idempotents do not sum to 1".into()));
    }
    Ok(())
}

/// Whether `x` is a unit, via the rank of left multiplication.
pub fn is_invertible(a: &FdAlgebra, x: &[Scalar]) -> bool {
    a.left_multiplication(x).rank() == a.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truncated(coeffs: &[i64]) -> FdAlgebra {
        FdAlgebra::truncated_polynomial(&Poly::from_i64(coeffs)).unwrap()
    }

    #[test]
    fn radical_of_nilpotent_truncation() {
        let a = truncated(&[0, 0, 0, 1]);
        let j = radical(&a).unwrap();
        assert_eq!(j.dim(), 2);
        assert_eq!(radical_layers(&a, &j).unwrap(), vec![1, 1]);
        assert!(radical(&FdAlgebra::group_algebra()).unwrap().is_zero());
    }

    #[test]
    fn z_squared_minus_four_splits_into_two_points() {
        let a = truncated(&[-4, 0, 1]);
        let r = block_decompose(&a).unwrap();
        assert_eq!(r.dims(), vec![1, 1]);
        // idempotents (2 ± z)/4
        let mut ids: Vec<Vec<Scalar>> = r.blocks.iter().map(|b| b.idempotent.clone()).collect();
        ids.sort_by_key(|v| v[1].to_string());
        assert_eq!(ids[0], vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 4)]);
        assert_eq!(ids[1], vec![Scalar::ratio(1, 2), Scalar::ratio(1, 4)]);
    }

    #[test]
    fn mixed_local_and_point_blocks() {
        // (t+1)³(t−3) = t⁴ − 6t² − 8t − 3
        let a = truncated(&[-3, -8, -6, 0, 1]);
        let r = block_decompose(&a).unwrap();
        assert_eq!(r.dims(), vec![3, 1]);
        assert_eq!(r.blocks[0].kind, BlockKind::LocalCommutative { radical_layers: vec![1, 1] });
        assert_eq!(r.blocks[1].kind, BlockKind::MatrixOverBase { degree: 1 });
    }

    #[test]
    fn irreducible_quadratic_is_a_field_extension() {
        let a = truncated(&[-2, 0, 1]);
        let r = block_decompose(&a).unwrap();
        assert_eq!(r.len(), 1);
        assert!(matches!(r.blocks[0].kind, BlockKind::FieldExtension { .. }));
        // t² + 1 splits over ℚ(i)
        assert_eq!(block_decompose(&truncated(&[1, 0, 1])).unwrap().dims(), vec![1, 1]);
    }

    #[test]
    fn twisted_square_of_group_algebra_is_a_matrix_algebra() {
        let g = FdAlgebra::group_algebra();
        let r = block_decompose(&g.twisted_tensor(&g)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.blocks[0].kind, BlockKind::MatrixOverBase { degree: 2 });
        let r = block_decompose(&g.twisted_tensor(&g).twisted_tensor(&g).twisted_tensor(&g)).unwrap();
        assert_eq!(r.blocks[0].kind, BlockKind::MatrixOverBase { degree: 4 });
    }

    #[test]
    fn scrambled_matrix_algebra_is_certified() {
        let g = FdAlgebra::group_algebra();
        let m2 = g.twisted_tensor(&g).ungraded();
        let gi = |re, im| Scalar::gaussian(re, im);
        // unimodular over ℤ[i]
        let p = Matrix::from_rows(
            4,
            vec![
                vec![gi(0, 0), gi(1, 0), gi(2, 1), gi(3, 0)],
                vec![gi(1, 0), gi(0, 0), gi(0, -1), gi(1, 0)],
                vec![gi(0, 0), gi(0, 0), gi(1, 0), gi(2, -2)],
                vec![gi(0, 0), gi(0, 0), gi(0, 0), gi(0, 1)],
            ],
        );
        let scrambled = m2.change_basis(&p).unwrap();
        assert_eq!(certify_split(&scrambled, &Config::default()), Some(2));
        let z = quaternion_zero_divisor(&scrambled).unwrap();
        assert!(!is_invertible(&scrambled, &z));
    }

    #[test]
    fn ground_field_is_one_block() {
        let r = block_decompose(&FdAlgebra::ground_field()).unwrap();
        assert_eq!(r.blocks[0].kind, BlockKind::MatrixOverBase { degree: 1 });
    }

    #[test]
    fn zero_divisor_gives_idempotent() {
        let g = FdAlgebra::group_algebra().ungraded();
        let x = vec![Scalar::from(1), Scalar::from(1)];
        let e = idempotent_from_zero_divisor(&g, &x).unwrap();
        assert_eq!(g.mul(&e, &e), e);
        assert!(idempotent_from_zero_divisor(&g, g.unit()).is_none());
        assert!(is_invertible(&g, g.unit()));
        assert!(!is_invertible(&g, &x));
    }
}
