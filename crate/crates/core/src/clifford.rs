//! Clifford maps `θ: R → ℚ(i)` and Clifford deformations `C_E(θ) = T(X)/(r − θ(r))`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::{dot, Matrix, Scalar, Subspace};
use crate::gradedalg::{small_gaussian, strongly_graded, unit_vector, FdAlgebra};
use crate::presentation::{CentralElement, QuadraticPresentation};
use crate::rewrite::{RewriteSystem, Word};

/// A linear functional on the relation space of `source`, given on its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordMap {
    source: QuadraticPresentation,
    relations: Subspace,
    values: Vec<Scalar>,
    validated: bool,
}

impl CliffordMap {
    /// Values on the canonical basis of `R_E`. The result is unvalidated.
    pub fn new(source: &QuadraticPresentation, values: Vec<Scalar>) -> Result<Self> {
        let relations = source.relation_space();
        if values.len() != relations.dim() {
            return Err(Error::InvalidPresentation(format!(
                "{} values for {} relations",
                values.len(),
                relations.dim()
            )));
        }
        Ok(CliffordMap {
            source: source.clone(),
            relations,
            values,
            validated: false,
        })
    }

    /// `θ(r)` computed by `f` on each canonical basis relation.
    pub fn from_fn(source: &QuadraticPresentation, f: impl Fn(&[Scalar]) -> Scalar) -> Self {
        let relations = source.relation_space();
        let values = relations.basis_vectors().iter().map(|r| f(r)).collect();
        CliffordMap {
            source: source.clone(),
            relations,
            values,
            validated: false,
        }
    }

    pub fn zero(source: &QuadraticPresentation) -> Self {
        CliffordMap::from_fn(source, |_| Scalar::zero())
    }

    pub fn source(&self) -> &QuadraticPresentation {
        &self.source
    }

    pub fn relation_basis(&self) -> Vec<Vec<Scalar>> {
        self.relations.basis_vectors()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `θ(r)`, or `None` when `r ∉ R`.
    pub fn eval(&self, r: &[Scalar]) -> Option<Scalar> {
        let coords = self.relations.coordinates(r)?;
        Some(coords.iter().zip(&self.values).map(|(a, b)| a * b).sum())
    }

    /// Checks the Clifford condition and marks the map as validated.
    pub fn validate(mut self) -> Result<Self> {
        if !is_clifford_map(&self.source, &self) {
            return Err(Error::NotCliffordMap);
        }
        self.validated = true;
        Ok(self)
    }
}

/// `(θ⊗1 − 1⊗θ)(X⊗R ∩ R⊗X) = 0`, with `X⊗X⊗X` coordinates `(a, b, c) ↦ (a·n + b)·n + c`.
pub fn is_clifford_map(e: &QuadraticPresentation, theta: &CliffordMap) -> bool {
    let n = e.num_generators();
    let rels = e.relation_space();
    if rels.is_zero() || theta.is_zero() {
        return true;
    }
    let n2 = n * n;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for r in rels.basis_vectors() {
        for a in 0..n {
            let mut xr = vec![Scalar::zero(); n2 * n];
            let mut rx = vec![Scalar::zero(); n2 * n];
            for (ij, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                xr[a * n2 + ij] = c.clone();
                rx[ij * n + a] = c.clone();
            }
            left.push(xr);
            right.push(rx);
        }
    }
    let overlap = Subspace::span(n2 * n, left)
        .intersect(&Subspace::span(n2 * n, right))
        .expect("same ambient");
    overlap.basis_vectors().iter().all(|w| {
        (0..n).all(|a| {
            // w = Σ_a w_{·a} ⊗ x_a = Σ_a x_a ⊗ w_{a·}
            let last: Vec<Scalar> = (0..n2).map(|ij| w[ij * n + a].clone()).collect();
            let first: Vec<Scalar> = (0..n2).map(|jk| w[a * n2 + jk].clone()).collect();
            match (theta.eval(&last), theta.eval(&first)) {
                (Some(l), Some(f)) => l == f,
                _ => false,
            }
        })
    })
}

/// `θ_f(α) = α(r₀)` on `R^⊥`, the relation space of `A^!`. Checks centrality of `f` and
/// that a second lift `r₀ + r` with `r ∈ R_A` gives the same values.
pub fn theta_from_central(a: &QuadraticPresentation, f: &CentralElement, cfg: &Config) -> Result<CliffordMap> {
    let dual = a.quadratic_dual()?;
    let n = a.num_generators();
    if f.lift.len() != n * n {
        return Err(Error::InvalidPresentation("central element has the wrong length".into()));
    }
    let rs = RewriteSystem::complete(a, cfg.truncation_for(n))?;
    let outside = rs.non_commuting_generators(f)?;
    if !outside.is_empty() {
        return Err(Error::NotCentral(format!("{} fails to commute with {}", f.name, outside.join(", "))));
    }
    let theta = CliffordMap::from_fn(&dual, |alpha| dot(alpha, &f.lift));
    if let Some(r) = a.relation_space().basis_vectors().first() {
        let shifted: Vec<Scalar> = f.lift.iter().zip(r).map(|(x, y)| x + y).collect();
        let other = CliffordMap::from_fn(&dual, |alpha| dot(alpha, &shifted));
        if other.values != theta.values {
            return Err(Error::Verification("θ depends on the choice of lift".into()));
        }
    }
    Ok(theta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordChecks {
    pub dimension_invariance: bool,
    pub strongly_graded: bool,
    pub frobenius_found: bool,
    pub source_dim: usize,
}

/// `C_E(θ)` as a ℤ₂-graded structure-constant table on normal words.
#[derive(Clone, Debug)]
pub struct CliffordAlgebraResult {
    pub algebra: FdAlgebra,
    pub presentation: QuadraticPresentation,
    pub map: CliffordMap,
    pub checks: CliffordChecks,
    pub frobenius_functional: Option<Vec<Scalar>>,
    /// Normal words indexing the basis of `algebra`.
    pub basis_words: Vec<Word>,
    pub config: Config,
}

pub fn clifford_deformation(e: &QuadraticPresentation, theta: &CliffordMap, cfg: &Config) -> Result<CliffordAlgebraResult> {
    if !is_clifford_map(e, theta) {
        return Err(Error::NotCliffordMap);
    }
    let truncation = cfg.truncation_for(e.num_generators());
    let source = RewriteSystem::complete(e, truncation)?.hilbert();
    if !source.stabilized {
        return Err(Error::NotFiniteDimensional(truncation));
    }
    let presentation = e.deform(&theta.relation_basis(), theta.values())?;
    let rs = RewriteSystem::complete(&presentation, truncation)?;
    let algebra = rs.multiplication_table()?;
    let basis_words = rs.basis_words();
    let frobenius_functional = frobenius_search(&algebra, cfg);
    let checks = CliffordChecks {
        dimension_invariance: algebra.dim() == source.total(),
        strongly_graded: strongly_graded(&algebra),
        frobenius_found: frobenius_functional.is_some(),
        source_dim: source.total(),
    };
    let mut map = theta.clone();
    map.validated = true;
    Ok(CliffordAlgebraResult {
        algebra,
        presentation,
        map,
        checks,
        frobenius_functional,
        basis_words,
        config: cfg.clone(),
    })
}

/// First functional `λ` (basis duals, then seeded random small Gaussian combinations) whose
/// pairing `(x, y) ↦ λ(xy)` is nondegenerate. `None` means unknown, not non-Frobenius.
pub fn frobenius_search(a: &FdAlgebra, cfg: &Config) -> Option<Vec<Scalar>> {
    let dim = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let duals = (0..dim).map(|k| unit_vector(dim, k));
    let random: Vec<Vec<Scalar>> = (0..cfg.frobenius_attempts)
        .map(|_| (0..dim).map(|_| small_gaussian(&mut rng, 3)).collect())
        .collect();
    duals.chain(random).find(|lambda| pairing(a, lambda).rank() == dim)
}

/// Gram matrix `λ(e_i e_j)`.
pub fn pairing(a: &FdAlgebra, lambda: &[Scalar]) -> Matrix {
    let dim = a.dim();
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut s = Scalar::zero();
            for (k, c) in &a.table()[i * dim + j] {
                s += &(c * &lambda[*k as usize]);
            }
            m.row_mut(i)[j] = s;
        }
    }
    m
}
