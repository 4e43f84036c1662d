//! Structure theory of finite-dimensional ℤ₂-graded algebras given by structure constants.

mod algebra;
mod classify;
mod gelement;
mod graded;
mod search;
mod structure;

pub use algebra::{add, is_zero, scale, sparse, sub, unit_vector, Embedded, FdAlgebra, Quotient, Table};
pub use classify::{
    classify_algebra, classify_singularity, mcm_simple_count, summarize, BlockSummary, ClassificationReport, Evidence,
    GradedBlockSummary, Verdict,
};
pub use gelement::{copy_decomposition, copy_decomposition_with, find_g_element, find_g_element_with, lift_g_element, CopyDecomposition, GElement};
pub use graded::{
    even_part, graded_block_decompose, graded_block_decompose_with, graded_simple_type, graded_simple_type_with,
    strongly_graded, xi_isomorphism, GradedBlock, GradedBlockReport, GradedSimpleType, XiIsomorphism,
};
pub use search::{candidates, small_gaussian};
pub use structure::{
    block_decompose, block_decompose_with, certify_split, check_blocks, idempotent_from_zero_divisor, is_invertible,
    lift_idempotent, radical, radical_layers, radical_powers, Block, BlockKind, BlockReport,
};

/// `E^♮`: the same algebra with its grading forgotten.
pub fn ungraded(a: &FdAlgebra) -> FdAlgebra {
    a.ungraded()
}
