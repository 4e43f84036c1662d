use num_traits::Zero;

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `K^n`, stored by its unique reduced row-echelon basis.
/// Two subspaces are equal iff their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_matrix(&Matrix::identity(ambient_dim))
    }

    /// Row span of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref_basis();
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        Subspace::from_matrix(&Matrix::from_rows(ambient_dim, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the subspace component along pivot columns; the result is the
    /// canonical representative of `v` modulo the subspace (zero on all pivots).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (c, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[c] -= &(&factor * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis; `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::span(self.ambient_dim, rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // u ∩ v = (u° + v°)°
        let both = self.annihilator().sum(&other.annihilator())?;
        Ok(both.annihilator())
    }

    /// `{α : Σ α_k v_k = 0 for all v}` under the standard coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// Null space `{v : m·v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref_basis();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = num_traits::One::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, vectors)
}

/// Row-by-row echelon accumulator for large, mostly sparse constraint systems.
/// Rows are reduced against the stored pivots on insertion; zero rows are dropped.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    cols: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBuilder {
    pub fn new(cols: usize) -> Self {
        EchelonBuilder { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row; returns `true` if it was independent of the stored rows.
    pub fn push(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols);
        if self.rows.len() == self.cols {
            return false;
        }
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].inv().unwrap();
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.rows.iter().map(|(_, r)| r.clone()).collect())
    }

    /// `{x : row·x = 0 for every pushed row}`.
    pub fn kernel(&self) -> Subspace {
        kernel(&Matrix::from_rows(self.cols, self.rows.iter().map(|(_, r)| r.clone()).collect()))
    }
}

/// Annihilator of a relation space `R ⊆ V⊗V` inside `V*⊗V*`, with the pairing
/// `⟨α⊗β, v⊗w⟩ = α(v)β(w)` in dual bases. Tensor coordinates `(i, j) ↦ i·n + j`.
pub fn annihilator(relations: &Subspace) -> Subspace {
    relations.annihilator()
}
