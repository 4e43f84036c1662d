use serde::{Deserialize, Serialize};

use super::algebra::FdAlgebra;
use super::graded::{even_part, graded_block_decompose_with, strongly_graded, GradedSimpleType};
use super::structure::{block_decompose_with, radical, BlockKind, BlockReport};
use crate::clifford::CliffordAlgebraResult;
use crate::config::Config;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    #[serde(rename = "simple-0-type")]
    SimpleType0,
    #[serde(rename = "simple-1-type")]
    SimpleType1,
    GradedSemisimpleNotSimple,
    NotGradedSemisimple,
    UndeterminedNonSplit,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SimpleType0 => "simple-0-type",
            Verdict::SimpleType1 => "simple-1-type",
            Verdict::GradedSemisimpleNotSimple => "graded-semisimple-not-simple",
            Verdict::NotGradedSemisimple => "not-graded-semisimple",
            Verdict::UndeterminedNonSplit => "undetermined-non-split",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub dim: usize,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBlockSummary {
    pub dim: usize,
    pub kind: GradedSimpleType,
    pub degree0_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub graded_radical_dim: usize,
    pub graded_blocks: Vec<GradedBlockSummary>,
    pub degree0_blocks: Vec<BlockSummary>,
    pub degree0_radical_dim: usize,
    pub strongly_graded: bool,
    /// Simple modules of the degree-0 part (blocks of `C₀/J(C₀)`).
    pub simple_module_count: usize,
    /// Blocks of the algebra with its grading forgotten.
    pub ungraded_blocks: Vec<BlockSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl ClassificationReport {
    pub fn ungraded_block_count(&self) -> usize {
        self.evidence.ungraded_blocks.len()
    }

    /// Block count of `C₀` for graded semisimple `C`; `None` otherwise.
    pub fn mcm_simple_count(&self) -> Option<usize> {
        (self.evidence.graded_radical_dim == 0).then_some(self.evidence.degree0_blocks.len())
    }
}

pub fn summarize(r: &BlockReport) -> Vec<BlockSummary> {
    r.blocks
        .iter()
        .map(|b| BlockSummary {
            dim: b.dim,
            kind: b.kind.clone(),
        })
        .collect()
}

/// Singularity verdict for a Clifford deformation.
pub fn classify_singularity(c: &CliffordAlgebraResult) -> Result<ClassificationReport> {
    classify_algebra(&c.algebra, &c.config)
}

/// Graded radical nonzero gives `NotGradedSemisimple`; one graded block is typed by
/// `graded_simple_type`; several graded blocks give `GradedSemisimpleNotSimple`.
pub fn classify_algebra(a: &FdAlgebra, cfg: &Config) -> Result<ClassificationReport> {
    let j = radical(a)?;
    let even = even_part(a)?.algebra;
    let degree0 = block_decompose_with(&even, cfg)?;
    let j0 = radical(&even)?;
    let top0 = even.quotient(&j0)?.algebra;
    let simple_module_count = block_decompose_with(&top0, cfg)?.len();
    let ungraded = block_decompose_with(&a.ungraded(), cfg)?;
    let mut evidence = Evidence {
        graded_radical_dim: j.dim(),
        graded_blocks: Vec::new(),
        degree0_blocks: summarize(&degree0),
        degree0_radical_dim: j0.dim(),
        strongly_graded: strongly_graded(a),
        simple_module_count,
        ungraded_blocks: summarize(&ungraded),
    };
    if !j.is_zero() {
        return Ok(ClassificationReport {
            verdict: Verdict::NotGradedSemisimple,
            evidence,
        });
    }
    let graded = graded_block_decompose_with(a, cfg)?;
    evidence.graded_blocks = graded
        .blocks
        .iter()
        .map(|b| GradedBlockSummary {
            dim: b.dim,
            kind: b.kind,
            degree0_dims: b.degree0.dims(),
        })
        .collect();
    let verdict = if graded.unsplit_components > 0 {
        Verdict::UndeterminedNonSplit
    } else if graded.len() == 1 {
        match graded.blocks[0].kind {
            GradedSimpleType::Type0 => Verdict::SimpleType0,
            GradedSimpleType::Type1 => Verdict::SimpleType1,
            GradedSimpleType::UndeterminedNonSplit => Verdict::UndeterminedNonSplit,
        }
    } else {
        Verdict::GradedSemisimpleNotSimple
    };
    Ok(ClassificationReport { verdict, evidence })
}

/// Number of indecomposable nonprojective graded MCM modules up to shift: blocks of `C₀`.
pub fn mcm_simple_count(c: &CliffordAlgebraResult) -> Result<usize> {
    let report = classify_singularity(c)?;
    report
        .mcm_simple_count()
        .ok_or(Error::GradedNotSemisimple(report.evidence.graded_radical_dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_for_small_graded_algebras() {
        let cfg = Config::default();
        let g = FdAlgebra::group_algebra();
        let r = classify_algebra(&g, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::SimpleType1);
        assert_eq!(r.mcm_simple_count(), Some(1));
        assert_eq!(r.ungraded_block_count(), 2);

        let r = classify_algebra(&g.twisted_tensor(&g), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::SimpleType0);
        assert_eq!(r.mcm_simple_count(), Some(2));
        assert_eq!(r.ungraded_block_count(), 1);

        let r = classify_algebra(&g.product(&g), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::GradedSemisimpleNotSimple);
        assert_eq!(r.ungraded_block_count(), 4);

        let r = classify_algebra(&FdAlgebra::ground_field(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::SimpleType0);
        assert_eq!(r.evidence.degree0_blocks[0].kind, BlockKind::MatrixOverBase { degree: 1 });
    }

    #[test]
    fn verdict_strings() {
        assert_eq!(Verdict::SimpleType0.as_str(), "simple-0-type");
        assert_eq!(Verdict::NotGradedSemisimple.as_str(), "not-graded-semisimple");
    }
}
