use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{scale, FdAlgebra};
use super::structure::{block_decompose_with, lift_idempotent, radical, split_commutative, BlockKind, BlockReport};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::{EchelonBuilder, Scalar};

/// Graded division type of a graded simple algebra: matrices over graded ℚ(i) (`Type0`)
/// or over ℂG (`Type1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradedSimpleType {
    Type0,
    Type1,
    UndeterminedNonSplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBlock {
    pub dim: usize,
    pub idempotent: Vec<Scalar>,
    pub kind: GradedSimpleType,
    pub degree0: BlockReport,
    pub strongly_graded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBlockReport {
    pub blocks: Vec<GradedBlock>,
    /// Components of the even center that could not be split.
    pub unsplit_components: usize,
}

impl GradedBlockReport {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }
}

/// `E₁E₁ = E₀`.
pub fn strongly_graded(a: &FdAlgebra) -> bool {
    let odd = a.degree_indices(1);
    if odd.is_empty() {
        return false;
    }
    let mut acc = EchelonBuilder::new(a.dim());
    for &i in &odd {
        for &j in &odd {
            acc.push(a.basis_product(i, j));
        }
    }
    acc.row_space() == a.degree_part(0)
}

/// Degree-0 subalgebra `E₀`.
pub fn even_part(a: &FdAlgebra) -> Result<super::algebra::Embedded> {
    a.subalgebra_on(a.degree_part(0), a.unit())
}

/// Decomposition of a graded semisimple algebra along the central idempotents of the
/// even part of its center.
pub fn graded_block_decompose(a: &FdAlgebra) -> Result<GradedBlockReport> {
    graded_block_decompose_with(a, &Config::default())
}

pub fn graded_block_decompose_with(a: &FdAlgebra, cfg: &Config) -> Result<GradedBlockReport> {
    let j = radical(a)?;
    if !j.is_zero() {
        return Err(Error::GradedNotSemisimple(j.dim()));
    }
    let z0 = a.center().intersect(&a.degree_part(0))?;
    let z0 = a.subalgebra_on(z0, a.unit())?;
    let mut blocks = Vec::new();
    let mut unsplit = 0;
    for comp in split_commutative(&z0.algebra, cfg) {
        let e = z0.lift(&lift_idempotent(&z0.algebra, &comp.idempotent)?);
        let span = (0..a.dim()).map(|k| a.mul(&e, &a.basis_vector(k))).collect();
        let block = a.subalgebra(span, &e)?.algebra;
        let kind = if comp.dim > 1 {
            unsplit += 1;
            GradedSimpleType::UndeterminedNonSplit
        } else {
            graded_simple_type_with(&block, cfg)?
        };
        let degree0 = block_decompose_with(&even_part(&block)?.algebra, cfg)?;
        blocks.push(GradedBlock {
            dim: block.dim(),
            idempotent: e,
            kind,
            degree0,
            strongly_graded: strongly_graded(&block),
        });
    }
    Ok(GradedBlockReport {
        blocks,
        unsplit_components: unsplit,
    })
}

/// Decision rule on the even part `s₀`: one split block gives `Type1` (or `Type0` when the
/// grading is trivial), two split blocks give `Type0`.
pub fn graded_simple_type(s: &FdAlgebra) -> Result<GradedSimpleType> {
    graded_simple_type_with(s, &Config::default())
}

pub fn graded_simple_type_with(s: &FdAlgebra, cfg: &Config) -> Result<GradedSimpleType> {
    let j = radical(s)?;
    if !j.is_zero() {
        return Err(Error::GradedNotSemisimple(j.dim()));
    }
    let z0 = s.center().intersect(&s.degree_part(0))?;
    if z0.dim() > 1 {
        let z0 = s.subalgebra_on(z0, s.unit())?;
        let comps = split_commutative(&z0.algebra, cfg);
        if comps.len() > 1 {
            return Err(Error::NotGradedSimple(comps.len()));
        }
        return Ok(GradedSimpleType::UndeterminedNonSplit);
    }
    let s0 = block_decompose_with(&even_part(s)?.algebra, cfg)?;
    let split = s0
        .blocks
        .iter()
        .all(|b| matches!(b.kind, BlockKind::MatrixOverBase { .. }));
    Ok(match (s0.len(), split) {
        (1, true) if s.degree_indices(1).is_empty() => GradedSimpleType::Type0,
        (1, true) => GradedSimpleType::Type1,
        (2, true) => GradedSimpleType::Type0,
        (n, _) if n > 2 => return Err(Error::NotGradedSimple(n)),
        _ => GradedSimpleType::UndeterminedNonSplit,
    })
}

/// The map `(E⊗̂ℂG)₀ → E^♮`, `a⊗1 ↦ a`, `a⊗σ ↦ i·a`, verified to be an isomorphism.
#[derive(Clone, Debug)]
pub struct XiIsomorphism {
    pub domain: FdAlgebra,
    pub images: Vec<Vec<Scalar>>,
}

pub fn xi_isomorphism(e: &FdAlgebra) -> Result<XiIsomorphism> {
    let g = FdAlgebra::group_algebra();
    let t = e.twisted_tensor(&g);
    let even = even_part(&t)?;
    let target = e.ungraded();
    let images: Vec<Vec<Scalar>> = even
        .span
        .basis_vectors()
        .iter()
        .map(|v| {
            // basis index a·2 + j
            let k = v.iter().position(|c| !c.is_zero()).unwrap();
            let (a, j) = (k / 2, k % 2);
            let coeff = if j == 1 { Scalar::i() } else { Scalar::from(1) };
            scale(&e.basis_vector(a), &(&coeff * &v[k]))
        })
        .collect();
    if !even.algebra.is_isomorphism(&target, &images) {
        return Err(Error::Verification("Xi is not an algebra isomorphism".into()));
    }
    Ok(XiIsomorphism {
        domain: even.algebra,
        images,
    })
}
