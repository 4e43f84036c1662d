//! Exact dense linear algebra over the Gaussian rationals ℚ(i).
//!
//! Everything here is pure and allocation-based: no floating point, no
//! interior mutability. Subspaces compare by their canonical reduced
//! row-echelon bases.

mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use matrix::{dot, Matrix};
pub use poly::{factor_small, minimal_polynomial, square_free_decomposition, Poly, SmallFactorization};
pub use scalar::{ParseScalarError, Scalar};
pub use subspace::{annihilator, kernel, EchelonBuilder, Subspace};

/// Reduced row-echelon form of `m`.
pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

/// `u ∩ v` for subspaces of the same ambient space.
pub fn intersect(u: &Subspace, v: &Subspace) -> crate::Result<Subspace> {
    u.intersect(v)
}
