//! JSON report documents. Exact scalars are strings such as `"1/2+3/4i"`.

use serde::{Deserialize, Serialize};

use quadric_core::config::Config;
use quadric_core::gradedalg::{ClassificationReport, Verdict};
use quadric_core::hypersurface::{AnalysisReport, ConicCoverCheck, KnorrerCheck, TensorCheck};

/// Bumped whenever a field of any report type changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: String,
    pub command: String,
    pub config: Config,
    /// Normalized DSL text of the input.
    pub input: String,
    pub result: ReportBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    Analysis(AnalysisReport),
    Algebra(AlgebraReport),
    Cover(CoverReport),
    Tensor(TensorReport),
    Knorrer(KnorrerCheck),
    Rank(RankReport),
    Copy(ConicCoverCheck),
}

/// Classification of a `grading z2` input taken directly as the algebra `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub classification: ClassificationReport,
    pub mcm_simple_count: Option<usize>,
    pub ungraded_block_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub times: u8,
    pub covered_input: String,
    pub original: AnalysisReport,
    pub covered: AnalysisReport,
    /// Ungraded block count of `C` for the original quadric.
    pub original_ungraded_block_count: usize,
    /// Block count of `C₀` for the cover; equals the line above for a double cover.
    pub covered_degree0_block_count: usize,
    /// `times = 2` only: Morita invariants and mcm counts agree.
    pub knorrer_equal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub other_input: String,
    pub check: TensorCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub f: String,
    pub witness: Vec<(String, String)>,
    pub passed: bool,
}

impl ReportDocument {
    pub fn new(command: &str, cfg: &Config, input: String, result: ReportBody) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: format!("quadric {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            config: cfg.clone(),
            input,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Verdicts this report vouches for; drives the exit code.
    pub fn verdicts(&self) -> Vec<Verdict> {
        match &self.result {
            ReportBody::Analysis(r) => vec![r.verdict()],
            ReportBody::Algebra(r) => vec![r.classification.verdict],
            ReportBody::Cover(r) => vec![r.original.verdict(), r.covered.verdict()],
            _ => Vec::new(),
        }
    }

    /// Pass/fail flag of a `verify` report.
    pub fn passed(&self) -> Option<bool> {
        match &self.result {
            ReportBody::Tensor(r) => Some(r.check.passed),
            ReportBody::Knorrer(r) => Some(r.passed),
            ReportBody::Rank(r) => Some(r.passed),
            ReportBody::Copy(r) => Some(r.passed),
            _ => None,
        }
    }
}
