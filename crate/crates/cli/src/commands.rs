use std::fs;
use std::path::Path;

use anyhow::{bail, Context};

use quadric_core::config::Config;
use quadric_core::gradedalg::{classify_algebra, Verdict};
use quadric_core::hypersurface::{
    analyze, conic_cover_check, double_cover, knorrer_check, verify_rank_witness, verify_tensor_decomposition,
    QuadricInput,
};
use quadric_core::rewrite::RewriteSystem;

use crate::dsl::{self, Source};
use crate::report::{AlgebraReport, CoverReport, RankReport, ReportBody, ReportDocument, TensorReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Tensor,
    Knorrer,
    Rank,
    Copy,
}

pub fn load(path: &Path) -> anyhow::Result<Source> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    dsl::parse(&text).with_context(|| format!("{}", path.display()))
}

fn provenance(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn quadric(src: &Source, path: &Path, cfg: &Config) -> anyhow::Result<QuadricInput> {
    src.quadric(&provenance(path), cfg)
}

/// A `grading z2` input is classified as the algebra it presents.
fn analyze_algebra(src: &Source, cfg: &Config) -> anyhow::Result<AlgebraReport> {
    let p = src.presentation()?;
    let rw = RewriteSystem::complete(&p, cfg.truncation_for(p.num_generators()))?;
    let a = rw.multiplication_table()?;
    let classification = classify_algebra(&a, cfg)?;
    let names = p.generators();
    Ok(AlgebraReport {
        generators: names.to_vec(),
        relations: src.to_string().lines().filter(|l| l.starts_with("rel ")).map(String::from).collect(),
        dim: a.dim(),
        basis: rw.basis_words().iter().map(|w| w.render(names)).collect(),
        mcm_simple_count: classification.mcm_simple_count(),
        ungraded_block_count: classification.ungraded_block_count(),
        classification,
    })
}

pub fn cmd_analyze(path: &Path, cfg: &Config) -> anyhow::Result<ReportDocument> {
    let src = load(path)?;
    let body = if src.z2 {
        ReportBody::Algebra(analyze_algebra(&src, cfg)?)
    } else {
        ReportBody::Analysis(analyze(&quadric(&src, path, cfg)?, cfg)?)
    };
    Ok(ReportDocument::new("analyze", cfg, src.to_string(), body))
}

pub fn cmd_cover(path: &Path, times: u8, cfg: &Config) -> anyhow::Result<ReportDocument> {
    if !(1..=2).contains(&times) {
        bail!("--times must be 1 or 2");
    }
    let src = load(path)?;
    let q = quadric(&src, path, cfg)?;
    let mut covered = q.clone();
    for _ in 0..times {
        covered = double_cover(&covered, cfg)?;
    }
    let (original, covered_report, knorrer_equal) = if times == 2 {
        let k = knorrer_check(&q, cfg)?;
        (k.original, k.double, Some(k.passed))
    } else {
        (analyze(&q, cfg)?, analyze(&covered, cfg)?, None)
    };
    let body = CoverReport {
        times,
        covered_input: Source::from_quadric(&covered).to_string(),
        original_ungraded_block_count: original.ungraded_block_count,
        covered_degree0_block_count: covered_report.classification.evidence.degree0_blocks.len(),
        original,
        covered: covered_report,
        knorrer_equal,
    };
    Ok(ReportDocument::new("cover", cfg, src.to_string(), ReportBody::Cover(body)))
}

pub fn cmd_verify(path: &Path, check: Check, with: Option<&Path>, cfg: &Config) -> anyhow::Result<ReportDocument> {
    let src = load(path)?;
    let q = quadric(&src, path, cfg)?;
    let body = match check {
        Check::Tensor => {
            let (other_src, other) = match with {
                Some(p) => {
                    let s = load(p)?;
                    let o = quadric(&s, p, cfg)?;
                    (s, o)
                }
                None => (src.clone(), q.clone()),
            };
            let check = verify_tensor_decomposition(&q, &other, cfg)?;
            ReportBody::Tensor(TensorReport {
                other_input: other_src.to_string(),
                check,
            })
        }
        Check::Knorrer => ReportBody::Knorrer(knorrer_check(&q, cfg)?),
        Check::Rank => {
            if src.witness.is_empty() {
                bail!("{}: no `witness` statements", path.display());
            }
            let passed = verify_rank_witness(&q, &src.witness, cfg)?;
            let names = q.generators();
            let render = |v: &[quadric_core::Scalar]| dsl::format_linear(names, v);
            ReportBody::Rank(RankReport {
                f: q.f_display(),
                witness: src.witness.iter().map(|(u, v)| (render(u), render(v))).collect(),
                passed,
            })
        }
        Check::Copy => ReportBody::Copy(conic_cover_check(&q, cfg)?),
    };
    Ok(ReportDocument::new("verify", cfg, src.to_string(), body))
}

/// 2 if any verdict is undetermined, 1 if a verify check failed, else 0.
pub fn exit_code(doc: &ReportDocument) -> u8 {
    if doc.verdicts().contains(&Verdict::UndeterminedNonSplit) {
        2
    } else if doc.passed() == Some(false) {
        1
    } else {
        0
    }
}
