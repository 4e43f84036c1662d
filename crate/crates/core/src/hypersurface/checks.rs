use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{analyze, analyze_full, AnalysisReport, QuadricInput};
use crate::clifford::{clifford_deformation, theta_from_central, CliffordAlgebraResult};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::Scalar;
use crate::gradedalg::{block_decompose_with, copy_decomposition_with, ClassificationReport, FdAlgebra, GradedSimpleType, Verdict};
use crate::presentation::{embed_quadratic, CentralElement, QuadraticPresentation};
use crate::rewrite::{NcPoly, RewriteSystem, Word};

/// `A ⊗ B` with `h = f + g`; clashing generator names on the right get a numeric suffix.
pub fn tensor_quadric(p: &QuadricInput, q: &QuadricInput, cfg: &Config) -> Result<QuadricInput> {
    let mut taken: Vec<String> = p.generators().to_vec();
    let mut renamed = Vec::new();
    for g in q.generators() {
        let name = fresh(g, &taken);
        taken.push(name.clone());
        renamed.push(name);
    }
    let right = q.algebra.rename_generators(renamed)?;
    let algebra = QuadraticPresentation::tensor(&p.algebra, &right)?;
    let (n, m) = (p.generators().len(), q.generators().len());
    let lift = embed_quadratic(&p.f.lift, n, 0, n + m)
        .into_iter()
        .zip(embed_quadratic(&q.f.lift, m, n, n + m))
        .map(|(a, b)| a + b)
        .collect();
    QuadricInput::new(
        algebra,
        CentralElement::new("h", lift),
        format!("({}) ⊗ ({})", p.provenance, q.provenance),
        cfg,
    )
}

fn fresh(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (2..).map(|k| format!("{base}{k}")).find(|c| !taken.contains(c)).unwrap()
}

/// `(A/(f))^# = A[w]/(f + w²)`.
pub fn double_cover(q: &QuadricInput, cfg: &Config) -> Result<QuadricInput> {
    let taken = q.generators();
    let name = ["z", "w", "t", "s", "u", "v"]
        .iter()
        .map(|s| s.to_string())
        .find(|c| !taken.contains(c))
        .unwrap_or_else(|| fresh("w", taken));
    let line = QuadricInput::new(
        QuadraticPresentation::polynomial(&[name.as_str()]),
        CentralElement::diagonal("g", &[Scalar::one()]),
        format!("{name}^2"),
        cfg,
    )?;
    let mut cover = tensor_quadric(q, &line, cfg)?;
    cover.provenance = format!("({})#", q.provenance);
    Ok(cover)
}

fn clifford_of(q: &QuadricInput, cfg: &Config) -> Result<CliffordAlgebraResult> {
    let dual = q.algebra.quadratic_dual()?;
    let theta = theta_from_central(&q.algebra, &q.f, cfg)?;
    clifford_deformation(&dual, &theta, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorCheck {
    pub passed: bool,
    pub left_dim: usize,
    pub right_dim: usize,
    pub detail: String,
}

/// Compares `C_{(A⊗B)!}(θ_{f+g})` with `C_{A!}(θ_f) ⊗̂ C_{B!}(θ_g)` under the map sending
/// `a ⊗ b` (normal words) to the product of the corresponding dual generators.
pub fn verify_tensor_decomposition(p: &QuadricInput, q: &QuadricInput, cfg: &Config) -> Result<TensorCheck> {
    let h = tensor_quadric(p, q, cfg)?;
    let left = clifford_of(&h, cfg)?;
    let (cp, cq) = (clifford_of(p, cfg)?, clifford_of(q, cfg)?);
    let right = cp.algebra.twisted_tensor(&cq.algebra);
    let (left_dim, right_dim) = (left.algebra.dim(), right.dim());
    if left_dim != right_dim {
        return Ok(TensorCheck {
            passed: false,
            left_dim,
            right_dim,
            detail: format!("dimension mismatch {left_dim} vs {right_dim}"),
        });
    }
    let n = p.generators().len() as u8;
    let word_image = |w: &[u8]| -> Option<Vec<Scalar>> {
        let mut acc = left.algebra.unit().to_vec();
        for g in w {
            let k = left.basis_words.iter().position(|b| b.0 == [*g])?;
            acc = left.algebra.mul(&acc, &left.algebra.basis_vector(k));
        }
        Some(acc)
    };
    let mut images = Vec::with_capacity(right_dim);
    for a in &cp.basis_words {
        for b in &cq.basis_words {
            let shifted: Vec<u8> = b.0.iter().map(|g| g + n).collect();
            match word_image(&Word::concat(&[&a.0, &shifted]).0) {
                Some(v) => images.push(v),
                None => {
                    return Ok(TensorCheck {
                        passed: false,
                        left_dim,
                        right_dim,
                        detail: "a dual generator is not a normal word".into(),
                    })
                }
            }
        }
    }
    let passed = right.is_isomorphism(&left.algebra, &images);
    Ok(TensorCheck {
        passed,
        left_dim,
        right_dim,
        detail: if passed { "structure constants agree".into() } else { "structure constants differ".into() },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantEntry {
    pub division: String,
    pub degree0_dims: Vec<usize>,
}

/// Multiset of (division type, degree-0 block dims) over graded blocks, dims divided by
/// their common gcd so that a common matrix scaling is factored out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaInvariant {
    pub verdict: Verdict,
    pub entries: Vec<InvariantEntry>,
}

pub fn morita_invariant(c: &ClassificationReport) -> MoritaInvariant {
    let g = c
        .evidence
        .graded_blocks
        .iter()
        .flat_map(|b| b.degree0_dims.iter().copied())
        .fold(0, num_integer::gcd);
    let mut entries: Vec<InvariantEntry> = c
        .evidence
        .graded_blocks
        .iter()
        .map(|b| {
            let mut dims: Vec<usize> = b.degree0_dims.iter().map(|d| d / g.max(1)).collect();
            dims.sort_unstable();
            InvariantEntry {
                division: match b.kind {
                    GradedSimpleType::Type0 => "base",
                    GradedSimpleType::Type1 => "cg",
                    GradedSimpleType::UndeterminedNonSplit => "nonsplit",
                }
                .into(),
                degree0_dims: dims,
            }
        })
        .collect();
    entries.sort();
    MoritaInvariant {
        verdict: c.verdict,
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnorrerCheck {
    pub passed: bool,
    pub original_invariant: MoritaInvariant,
    pub double_invariant: MoritaInvariant,
    pub original: AnalysisReport,
    pub double: AnalysisReport,
}

/// Invariant-level comparison of `q` with `q^{##} = A[x, y]/(f + x² + y²)`.
pub fn knorrer_check(q: &QuadricInput, cfg: &Config) -> Result<KnorrerCheck> {
    let double = double_cover(&double_cover(q, cfg)?, cfg)?;
    let original = analyze(q, cfg)?;
    let double = analyze(&double, cfg)?;
    let original_invariant = morita_invariant(&original.classification);
    let double_invariant = morita_invariant(&double.classification);
    let passed = original_invariant == double_invariant && original.mcm_simple_count == double.mcm_simple_count;
    Ok(KnorrerCheck {
        passed,
        original_invariant,
        double_invariant,
        original,
        double,
    })
}

/// Parameters of `S^(α,β,γ)/(ax² + by² + cz²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConicParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl ConicParams {
    pub fn from_i64(abg: [i64; 3], abc: [i64; 3]) -> Self {
        ConicParams {
            alpha: abg[0].into(),
            beta: abg[1].into(),
            gamma: abg[2].into(),
            a: abc[0].into(),
            b: abc[1].into(),
            c: abc[2].into(),
        }
    }

    /// `"α,β,γ/a:b:c"`, used as the dataset key.
    pub fn key(&self) -> String {
        format!(
            "{},{},{}/{}:{}:{}",
            self.alpha, self.beta, self.gamma, self.a, self.b, self.c
        )
    }
}

/// `ℚ(i)⟨x,y,z⟩/(yz + zy + αx², zx + xz + βy², xy + yx + γz²)` with `f = ax² + by² + cz²`.
pub fn conic(p: &ConicParams, cfg: &Config) -> Result<QuadricInput> {
    if p.a.is_zero() && p.b.is_zero() && p.c.is_zero() {
        return Err(Error::InvalidPresentation("(a, b, c) must not all vanish".into()));
    }
    let idx = |i: usize, j: usize| i * 3 + j;
    let rel = |i: usize, j: usize, k: usize, coef: &Scalar| {
        let mut v = vec![Scalar::zero(); 9];
        v[idx(i, j)] = Scalar::one();
        v[idx(j, i)] = Scalar::one();
        v[idx(k, k)] = coef.clone();
        v
    };
    let algebra = QuadraticPresentation::homogeneous(
        vec!["x".into(), "y".into(), "z".into()],
        vec![rel(1, 2, 0, &p.alpha), rel(2, 0, 1, &p.beta), rel(0, 1, 2, &p.gamma)],
    )?;
    let f = CentralElement::diagonal("f", &[p.a.clone(), p.b.clone(), p.c.clone()]);
    QuadricInput::new(algebra, f, format!("S^({},{},{})/({})", p.alpha, p.beta, p.gamma, p.key()), cfg)
}

/// Commutative `ℚ(i)[x, y, z]` with `f = ax² + by² + cz²`.
pub fn commutative_conic(a: &Scalar, b: &Scalar, c: &Scalar, cfg: &Config) -> Result<QuadricInput> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::InvalidPresentation("(a, b, c) must not all vanish".into()));
    }
    let f = CentralElement::diagonal("f", &[a.clone(), b.clone(), c.clone()]);
    QuadricInput::new(QuadraticPresentation::polynomial(&["x", "y", "z"]), f, format!("C[x,y,z]/({a}:{b}:{c})"), cfg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopySummary {
    pub factor_dims: [usize; 2],
    pub g_element: Vec<Scalar>,
    pub factor_block_dims: [Vec<usize>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicCoverCheck {
    pub noncommutative_input: bool,
    pub commutative_clifford: bool,
    pub in_hypothesis: bool,
    pub ungraded_block_dims: Vec<usize>,
    pub degree0_block_dims: Vec<usize>,
    pub copy: Option<CopySummary>,
    pub passed: bool,
    pub report: AnalysisReport,
}

/// For a noncommutative conic with commutative `C`: `C^♮ ≅ C₀ × C₀` via the copy decomposition,
/// and the ungraded block count of `C` is twice that of `C₀`.
pub fn conic_cover_check(q: &QuadricInput, cfg: &Config) -> Result<ConicCoverCheck> {
    let (report, c) = analyze_full(q, cfg)?;
    let noncommutative_input = !quotient_is_commutative(q, cfg)?;
    let commutative_clifford = c.algebra.is_commutative();
    let in_hypothesis = noncommutative_input && commutative_clifford;
    let ungraded_block_dims: Vec<usize> = report.classification.evidence.ungraded_blocks.iter().map(|b| b.dim).collect();
    let degree0_block_dims: Vec<usize> = report.classification.evidence.degree0_blocks.iter().map(|b| b.dim).collect();
    let mut copy = None;
    let mut passed = false;
    if in_hypothesis {
        let d = copy_decomposition_with(&c.algebra, cfg)?;
        let block_dims = |f: &FdAlgebra| block_decompose_with(f, cfg).map(|r| r.dims());
        let factor_block_dims = [block_dims(&d.factors[0])?, block_dims(&d.factors[1])?];
        let c0 = c.algebra.degree_indices(0).len();
        passed = d.factor_dims() == [c0, c0]
            && ungraded_block_dims.len() == 2 * degree0_block_dims.len()
            && factor_block_dims.iter().all(|f| f == &degree0_block_dims);
        copy = Some(CopySummary {
            factor_dims: d.factor_dims(),
            g_element: d.g.element,
            factor_block_dims,
        });
    }
    Ok(ConicCoverCheck {
        noncommutative_input,
        commutative_clifford,
        in_hypothesis,
        ungraded_block_dims,
        degree0_block_dims,
        copy,
        passed,
        report,
    })
}

/// Whether all generators commute in `A/(f)` (degree-2 check suffices for quadratic algebras).
fn quotient_is_commutative(q: &QuadricInput, cfg: &Config) -> Result<bool> {
    let quotient = q.algebra.with_relations(vec![q.f.lift.clone()])?;
    let rs = RewriteSystem::complete(&quotient, cfg.truncation_for(q.generators().len()).min(3))?;
    let n = q.generators().len();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (NcPoly::generator(i), NcPoly::generator(j));
            if !rs.normal_form(&x.mul(&y).sub(&y.mul(&x)))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f − Σ u_i v_i` has normal form zero in `A`; certifies `rank f ≤ r`.
pub fn verify_rank_witness(q: &QuadricInput, witness: &[(Vec<Scalar>, Vec<Scalar>)], cfg: &Config) -> Result<bool> {
    let n = q.generators().len();
    let mut diff = NcPoly::from_quadratic(&q.f.lift, n);
    for (u, v) in witness {
        if u.len() != n || v.len() != n {
            return Err(Error::InvalidPresentation("witness has the wrong length".into()));
        }
        diff = diff.sub(&NcPoly::from_linear(u).mul(&NcPoly::from_linear(v)));
    }
    let rs = RewriteSystem::complete(&q.algebra, cfg.truncation_for(n))?;
    Ok(rs.normal_form(&diff)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::super::corpus;
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from(x)
    }

    #[test]
    fn tensor_of_lines_is_the_plane() {
        let cfg = Config::default();
        let x = corpus::double_point(&cfg);
        let xy = tensor_quadric(&x, &x, &cfg).unwrap();
        assert_eq!(xy.generators(), ["x", "x2"]);
        assert!(xy.algebra.same_relations(&corpus::commutative_plane(&cfg).algebra));
        assert_eq!(xy.f.lift, corpus::commutative_plane(&cfg).f.lift);
        let cover = double_cover(&corpus::commutative_plane(&cfg), &cfg).unwrap();
        assert_eq!(cover.generators(), ["x", "y", "z"]);
        assert_eq!(cover.f.lift, corpus::sum_of_squares_conic(3, &cfg).f.lift);
    }

    #[test]
    fn rank_witnesses() {
        let cfg = Config::default();
        let q = corpus::commutative_plane(&cfg);
        assert!(verify_rank_witness(&q, &[(vec![s(1), s(0)], vec![s(1), s(0)]), (vec![s(0), s(1)], vec![s(0), s(1)])], &cfg).unwrap());
        let i = Scalar::i();
        assert!(verify_rank_witness(&q, &[(vec![s(1), i.clone()], vec![s(1), -i])], &cfg).unwrap());
        assert!(!verify_rank_witness(&q, &[(vec![s(1), s(0)], vec![s(1), s(0)])], &cfg).unwrap());
        let conic = corpus::worked_conic(&cfg);
        let u = vec![s(-1), s(-1), s(2)];
        assert!(verify_rank_witness(&conic, &[(u.clone(), u)], &cfg).unwrap());
    }

    #[test]
    fn conic_family_points() {
        let cfg = Config::default();
        assert!(conic(&ConicParams::from_i64([0, 0, 0], [0, 0, 0]), &cfg).is_err());
        // squares are central throughout the family
        for abg in [[1, 0, 0], [1, 2, 3], [0, 0, 1]] {
            for abc in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                assert!(conic(&ConicParams::from_i64(abg, abc), &cfg).is_ok());
            }
        }
        assert_eq!(corpus::worked_conic_params().key(), "1,1,0/3:3:4");
    }

    #[test]
    fn tensor_decomposition_of_small_pairs() {
        let cfg = Config::default();
        let (a, b) = (corpus::double_point(&cfg), corpus::skew_plane(&cfg));
        let t = verify_tensor_decomposition(&a, &a, &cfg).unwrap();
        assert!(t.passed && t.left_dim == 4);
        let t = verify_tensor_decomposition(&b, &a, &cfg).unwrap();
        assert!(t.passed && t.left_dim == 8, "{t:?}");
    }
}
