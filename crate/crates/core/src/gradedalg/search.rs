use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::Scalar;

/// Deterministic stream of search elements in the span of `basis`: the basis itself,
/// then pairs `b_i + c·b_j` with `c ∈ {1, −1, i}`, then seeded random combinations
/// with Gaussian-integer coefficients of height at most `height`.
pub fn candidates(basis: Vec<Vec<Scalar>>, height: i64, seed: u64, budget: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let n = basis.len();
    let coeffs = [Scalar::from(1), Scalar::from(-1), Scalar::i()];
    let mut pairs = (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (0..3).map(move |c| (i, j, c))));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = 0usize;
    std::iter::from_fn(move || {
        if n == 0 || k >= budget {
            return None;
        }
        k += 1;
        if k <= n {
            return Some(basis[k - 1].clone());
        }
        if let Some((i, j, c)) = pairs.next() {
            return Some(
                basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| a + &(&coeffs[c] * b))
                    .collect(),
            );
        }
        let mut v = vec![Scalar::zero(); basis[0].len()];
        for b in &basis {
            let c = small_gaussian(&mut rng, height);
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        Some(v)
    })
}

/// Uniform Gaussian integer with both parts in `[−h, h]`.
pub fn small_gaussian<R: Rng>(rng: &mut R, h: i64) -> Scalar {
    Scalar::gaussian(rng.gen_range(-h..=h), rng.gen_range(-h..=h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_deterministic_and_bounded() {
        let basis = vec![vec![Scalar::from(1), Scalar::zero()], vec![Scalar::zero(), Scalar::from(1)]];
        let a: Vec<_> = candidates(basis.clone(), 3, 7, 20).collect();
        let b: Vec<_> = candidates(basis, 3, 7, 20).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert_eq!(a[2], vec![Scalar::from(1), Scalar::from(1)]);
    }
}
