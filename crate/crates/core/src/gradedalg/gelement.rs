use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::algebra::{add, is_zero, scale, sub, FdAlgebra};
use super::graded::{even_part, graded_block_decompose_with, strongly_graded};
use super::search::candidates;
use super::structure::{radical, radical_powers};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlinalg::{Scalar, Subspace};

/// Homogeneous degree-1 element with `u² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GElement {
    pub element: Vec<Scalar>,
    /// Correction steps taken when lifting through a nilpotent ideal.
    pub iterations: usize,
}

/// Lifts `x` with `x² − 1 ∈ I` to an exact G-element by `x ← x(1 − r/2)`, `r = x² − 1`.
/// Each step moves `r` from `I^m` to `I^{2m}`.
pub fn lift_g_element(e: &FdAlgebra, ideal: &Subspace, x: &[Scalar]) -> Result<GElement> {
    if e.degree_of(x) != Some(1) {
        return Err(Error::NotHomogeneous);
    }
    let one = e.unit().to_vec();
    let r = sub(&e.mul(x, x), &one);
    if !ideal.contains(&r) {
        return Err(Error::Verification("x² − 1 is not in the ideal".into()));
    }
    let depth = radical_powers(e, ideal)?.len();
    let half = Scalar::ratio(1, 2);
    let mut x = x.to_vec();
    let mut iterations = 0;
    loop {
        let r = sub(&e.mul(&x, &x), &one);
        if is_zero(&r) {
            return Ok(GElement { element: x, iterations });
        }
        if (1usize << iterations) > depth {
            return Err(Error::NotNilpotent);
        }
        x = e.mul(&x, &sub(&one, &scale(&r, &half)));
        iterations += 1;
    }
}

/// Finds a G-element: a square-one odd element in each graded block of `E/J`, lifted along `J`.
pub fn find_g_element(e: &FdAlgebra) -> Result<GElement> {
    find_g_element_with(e, &Config::default())
}

pub fn find_g_element_with(e: &FdAlgebra, cfg: &Config) -> Result<GElement> {
    if !strongly_graded(e) {
        return Err(Error::NoGElement("not strongly graded".into()));
    }
    let j = radical(e)?;
    let q = e.quotient(&j)?;
    let top = &q.algebra;
    let blocks = graded_block_decompose_with(top, cfg)?;
    let odd: Vec<Vec<Scalar>> = top.degree_indices(1).into_iter().map(|k| top.basis_vector(k)).collect();
    let mut u = vec![Scalar::zero(); top.dim()];
    for (b, block) in blocks.blocks.iter().enumerate() {
        let eb = &block.idempotent;
        let found = candidates(odd.clone(), cfg.search_height, cfg.seed, 4 * odd.len() + 40).find_map(|v| {
            let v = top.mul(eb, &v);
            if is_zero(&v) {
                return None;
            }
            let sq = top.mul(&v, &v);
            let k = eb.iter().position(|c| !c.is_zero())?;
            let c = &sq[k] / &eb[k];
            if c.is_zero() || sq != scale(eb, &c) {
                return None;
            }
            let root = c.sqrt()?;
            Some(scale(&v, &root.inv()?))
        });
        let Some(ub) = found else {
            return Err(Error::NoGElement(format!("no square-one odd element in graded block {b}")));
        };
        u = add(&u, &ub);
    }
    lift_g_element(e, &j, &q.lift(&u))
}

/// `E ≅ E₀ × E₀` for commutative strongly graded `E`, via `e± = (1 ± g)/2`.
#[derive(Clone, Debug)]
pub struct CopyDecomposition {
    pub g: GElement,
    pub idempotents: [Vec<Scalar>; 2],
    pub factors: [FdAlgebra; 2],
    pub degree0: FdAlgebra,
}

impl CopyDecomposition {
    pub fn factor_dims(&self) -> [usize; 2] {
        [self.factors[0].dim(), self.factors[1].dim()]
    }
}

pub fn copy_decomposition(e: &FdAlgebra) -> Result<CopyDecomposition> {
    copy_decomposition_with(e, &Config::default())
}

pub fn copy_decomposition_with(e: &FdAlgebra, cfg: &Config) -> Result<CopyDecomposition> {
    if !e.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let g = find_g_element_with(e, cfg)?;
    let one = e.unit().to_vec();
    let half = Scalar::ratio(1, 2);
    let plus = scale(&add(&one, &g.element), &half);
    let minus = scale(&sub(&one, &g.element), &half);
    let orthogonal = is_zero(&e.mul(&plus, &minus));
    if e.mul(&plus, &plus) != plus || e.mul(&minus, &minus) != minus || !orthogonal || add(&plus, &minus) != one {
        return Err(Error::Verification("copy idempotents".into()));
    }
    let e0 = even_part(e)?;
    let ungraded = e.ungraded();
    let mut factors = Vec::new();
    for idem in [&plus, &minus] {
        let span = (0..e.dim()).map(|k| ungraded.mul(idem, &ungraded.basis_vector(k))).collect();
        let factor = ungraded.subalgebra(span, idem)?;
        // a₀ ↦ a₀·e±, expressed in the factor's basis
        let images: Option<Vec<Vec<Scalar>>> = e0
            .span
            .basis_vectors()
            .iter()
            .map(|a| factor.coordinates(&ungraded.mul(a, idem)))
            .collect();
        let ok = images.is_some_and(|im| e0.algebra.ungraded().is_isomorphism(&factor.algebra, &im));
        if !ok {
            return Err(Error::Verification("factor is not isomorphic to the even part".into()));
        }
        factors.push(factor.algebra);
    }
    let [f1, f2]: [FdAlgebra; 2] = factors.try_into().unwrap();
    Ok(CopyDecomposition {
        g,
        idempotents: [plus, minus],
        factors: [f1, f2],
        degree0: e0.algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// `ℚ(i)[y, n]/(n^k, y² − 1 − n)` with `|y| = 1`, `|n| = 0`; basis `n^a` then `y n^a`.
    pub(crate) fn perturbed_cover(k: usize) -> FdAlgebra {
        let dim = 2 * k;
        let labels = (0..dim)
            .map(|b| format!("{}n{}", if b >= k { "y" } else { "" }, b % k))
            .collect();
        let grading = (0..dim).map(|b| (b >= k) as u8).collect();
        let mut unit = vec![Scalar::zero(); dim];
        unit[0] = Scalar::one();
        FdAlgebra::from_fn(labels, grading, unit, |i, j| {
            let mut out = vec![Scalar::zero(); dim];
            let (yi, ni) = (i / k, i % k);
            let (yj, nj) = (j / k, j % k);
            let n = ni + nj;
            let ys = yi + yj;
            // y² = 1 + n
            let terms: Vec<(usize, usize)> = if ys == 2 { vec![(0, n), (0, n + 1)] } else { vec![(ys, n)] };
            for (y, p) in terms {
                if p < k {
                    out[y * k + p] += &Scalar::one();
                }
            }
            out
        })
        .unwrap()
    }

    #[test]
    fn lift_through_square_zero_ideal_takes_one_step() {
        let e = perturbed_cover(2);
        e.verify_associative().unwrap();
        let ideal = e.ideal(&[e.basis_vector(1)]);
        let g = lift_g_element(&e, &ideal, &e.basis_vector(2)).unwrap();
        assert_eq!(g.iterations, 1);
        // y(1 − n/2)
        assert_eq!(g.element, vec![0.into(), 0.into(), 1.into(), Scalar::ratio(-1, 2)]);
        assert_eq!(e.mul(&g.element, &g.element), e.unit().to_vec());
    }

    #[test]
    fn lift_through_cube_zero_ideal_takes_two_steps() {
        let e = perturbed_cover(3);
        e.verify_associative().unwrap();
        let ideal = e.ideal(&[e.basis_vector(1)]);
        let g = lift_g_element(&e, &ideal, &e.basis_vector(3)).unwrap();
        assert_eq!(g.iterations, 2);
        assert_eq!(e.mul(&g.element, &g.element), e.unit().to_vec());
        assert!(ideal.contains(&sub(&g.element, &e.basis_vector(3))));
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let e = perturbed_cover(2);
        let ideal = e.ideal(&[e.basis_vector(1)]);
        assert_eq!(lift_g_element(&e, &ideal, &e.basis_vector(1)).unwrap_err(), Error::NotHomogeneous);
        let g = FdAlgebra::group_algebra();
        let s = g.basis_vector(1);
        let unchanged = lift_g_element(&g, &Subspace::zero(2), &s).unwrap();
        assert_eq!((unchanged.element, unchanged.iterations), (s, 0));
    }

    #[test]
    fn g_elements_and_copies() {
        let g = FdAlgebra::group_algebra();
        assert_eq!(find_g_element(&g).unwrap().element, g.basis_vector(1));
        let gg = g.product(&g);
        let u = find_g_element(&gg).unwrap().element;
        assert_eq!(gg.mul(&u, &u), gg.unit().to_vec());

        let c = copy_decomposition(&g).unwrap();
        assert_eq!(c.factor_dims(), [1, 1]);
        let c = copy_decomposition(&gg).unwrap();
        assert_eq!(c.factor_dims(), [2, 2]);

        let e = perturbed_cover(3);
        let c = copy_decomposition(&e).unwrap();
        assert_eq!(c.factor_dims(), [3, 3]);
        assert_eq!(find_g_element(&FdAlgebra::ground_field()).unwrap_err(), Error::NoGElement("not strongly graded".into()));
        assert_eq!(copy_decomposition(&g.twisted_tensor(&g)).unwrap_err(), Error::NotCommutative);
    }
}
