//! Exact Clifford deformations of noncommutative quadric hypersurfaces.
//!
//! The pipeline for a quadric `A/(f)` is: quadratic dual `A^!`, the Clifford
//! map `θ_f`, the deformation `C_{A^!}(θ_f)` as a ℤ₂-graded finite-dimensional
//! algebra, then graded Wedderburn data and a singularity verdict. All
//! arithmetic is over ℚ(i).

pub mod clifford;
pub mod config;
pub mod error;
pub mod exactlinalg;
pub mod gradedalg;
pub mod hypersurface;
pub mod par;
pub mod presentation;
pub mod rewrite;

pub use error::{Error, Result};
pub use exactlinalg::{Matrix, Poly, Scalar, Subspace};
