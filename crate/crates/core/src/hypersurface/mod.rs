//! End-to-end analysis of quadrics `A/(f)`: dual, Clifford map, deformation, verdict.

mod checks;
pub mod corpus;

use serde::{Deserialize, Serialize};

pub use checks::{
    commutative_conic, conic, conic_cover_check, double_cover, knorrer_check, morita_invariant, tensor_quadric,
    verify_rank_witness, verify_tensor_decomposition, ConicCoverCheck, ConicParams, CopySummary, InvariantEntry,
    KnorrerCheck, MoritaInvariant, TensorCheck,
};

use crate::clifford::{clifford_deformation, theta_from_central, CliffordAlgebraResult};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Scalar};
use crate::gradedalg::{classify_singularity, ClassificationReport, Verdict};
use crate::presentation::{transform_quadratic, CentralElement, QuadraticPresentation};
use crate::rewrite::RewriteSystem;

/// A quadric hypersurface `A/(f)` with `f` verified central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricInput {
    pub algebra: QuadraticPresentation,
    pub f: CentralElement,
    pub provenance: String,
    /// Hilbert-series regularity certificate up to the configured degree.
    pub regular: bool,
}

impl QuadricInput {
    pub fn new(algebra: QuadraticPresentation, f: CentralElement, provenance: impl Into<String>, cfg: &Config) -> Result<Self> {
        if !algebra.is_homogeneous() {
            return Err(Error::InhomogeneousInput);
        }
        let n = algebra.num_generators();
        if f.lift.len() != n * n {
            return Err(Error::InvalidPresentation("central element has the wrong length".into()));
        }
        let rs = RewriteSystem::complete(&algebra, cfg.truncation_for(n))?;
        let outside = rs.non_commuting_generators(&f)?;
        if !outside.is_empty() {
            return Err(Error::NotCentral(format!("{} fails to commute with {}", f.name, outside.join(", "))));
        }
        let regular = rs.is_regular(&f, cfg.regularity_degree)?;
        Ok(QuadricInput {
            algebra,
            f,
            provenance: provenance.into(),
            regular,
        })
    }

    pub fn generators(&self) -> &[String] {
        self.algebra.generators()
    }

    pub fn f_display(&self) -> String {
        self.algebra.format_quadratic(&self.f.lift)
    }

    /// Same quadric after the substitution `x_a = Σ_c g[a][c] y_c`.
    pub fn change_of_basis(&self, g: &Matrix, cfg: &Config) -> Result<QuadricInput> {
        let algebra = self.algebra.change_of_basis(g)?;
        let f = CentralElement::new(self.f.name.clone(), transform_quadratic(&self.f.lift, g));
        QuadricInput::new(algebra, f, format!("{} (changed basis)", self.provenance), cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub relation: String,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisChecks {
    pub central: bool,
    pub regular: bool,
    pub clifford_map: bool,
    pub dimension_invariance: bool,
    pub strongly_graded: bool,
    pub frobenius_found: bool,
    /// `dim C = 2ⁿ`, checked when `A` has the Hilbert series of a polynomial ring.
    pub dim_power_of_two: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub provenance: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub central: String,
    pub dual_generators: Vec<String>,
    pub dual_relations: Vec<String>,
    pub theta: Vec<ThetaValue>,
    pub clifford_dim: usize,
    pub clifford_basis: Vec<String>,
    pub degree0_dim: usize,
    pub checks: AnalysisChecks,
    pub classification: ClassificationReport,
    pub mcm_simple_count: Option<usize>,
    pub ungraded_block_count: usize,
}

impl AnalysisReport {
    pub fn verdict(&self) -> Verdict {
        self.classification.verdict
    }
}

pub fn analyze(q: &QuadricInput, cfg: &Config) -> Result<AnalysisReport> {
    Ok(analyze_full(q, cfg)?.0)
}

/// `analyze` together with the constructed Clifford deformation.
pub fn analyze_full(q: &QuadricInput, cfg: &Config) -> Result<(AnalysisReport, CliffordAlgebraResult)> {
    let dual = q.algebra.quadratic_dual().map_err(|e| e.at("dual"))?;
    let theta = theta_from_central(&q.algebra, &q.f, cfg).map_err(|e| e.at("theta"))?;
    let c = clifford_deformation(&dual, &theta, cfg).map_err(|e| e.at("deformation"))?;
    let classification = classify_singularity(&c).map_err(|e| e.at("classify"))?;
    let n = q.algebra.num_generators();
    let dim_power_of_two = has_polynomial_hilbert(&q.algebra, cfg)?.then(|| c.algebra.dim() == 1 << n);
    let names = dual.generators();
    let report = AnalysisReport {
        provenance: q.provenance.clone(),
        generators: q.generators().to_vec(),
        relations: q
            .algebra
            .display_relations()
            .iter()
            .map(|r| q.algebra.format_quadratic(&r.quadratic))
            .collect(),
        central: q.f_display(),
        dual_generators: names.to_vec(),
        dual_relations: theta.relation_basis().iter().map(|r| dual.format_quadratic(r)).collect(),
        theta: theta
            .relation_basis()
            .iter()
            .zip(theta.values())
            .map(|(r, v)| ThetaValue {
                relation: crate::presentation::format_quadratic(names, r),
                value: v.clone(),
            })
            .collect(),
        clifford_dim: c.algebra.dim(),
        clifford_basis: c.algebra.labels().to_vec(),
        degree0_dim: c.algebra.degree_indices(0).len(),
        checks: AnalysisChecks {
            central: true,
            regular: q.regular,
            clifford_map: true,
            dimension_invariance: c.checks.dimension_invariance,
            strongly_graded: c.checks.strongly_graded,
            frobenius_found: c.checks.frobenius_found,
            dim_power_of_two,
        },
        mcm_simple_count: classification.mcm_simple_count(),
        ungraded_block_count: classification.ungraded_block_count(),
        classification,
    };
    Ok((report, c))
}

/// Hilbert dims of `A` agree with `binom(n + k − 1, k)` through the truncation degree.
fn has_polynomial_hilbert(a: &QuadraticPresentation, cfg: &Config) -> Result<bool> {
    let n = a.num_generators();
    let rs = RewriteSystem::complete(a, cfg.truncation_for(n))?;
    let h = rs.hilbert();
    let mut expected = 1usize;
    for (k, d) in h.dims.iter().enumerate() {
        if k > 0 {
            expected = expected * (n + k - 1) / k;
        }
        if *d != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_central_quadric_is_rejected() {
        let a = QuadraticPresentation::skew_polynomial(&["x", "y"], &Scalar::from(2));
        let f = CentralElement::diagonal("f", &[Scalar::from(1), Scalar::from(0)]);
        assert!(matches!(QuadricInput::new(a, f, "t", &Config::default()), Err(Error::NotCentral(_))));
    }

    #[test]
    fn commutative_plane_pipeline() {
        let cfg = Config::default();
        let r = analyze(&corpus::commutative_plane(&cfg), &cfg).unwrap();
        assert_eq!(r.verdict(), Verdict::SimpleType0);
        assert_eq!(r.clifford_dim, 4);
        assert_eq!(r.mcm_simple_count, Some(2));
        assert_eq!(r.checks.dim_power_of_two, Some(true));
        assert!(r.checks.regular && r.checks.strongly_graded && r.checks.frobenius_found);
    }
}
