//! Named quadrics used throughout the tests, benches and CLI.

use num_traits::{One, Zero};

use super::{conic, ConicParams, QuadricInput};
use crate::config::Config;
use crate::exactlinalg::Scalar;
use crate::presentation::{CentralElement, QuadraticPresentation};

fn sum_of_squares(n: usize, k: usize) -> CentralElement {
    let coeffs: Vec<Scalar> = (0..n).map(|i| if i < k { Scalar::one() } else { Scalar::zero() }).collect();
    CentralElement::diagonal("f", &coeffs)
}

fn build(a: QuadraticPresentation, f: CentralElement, name: &str, cfg: &Config) -> QuadricInput {
    QuadricInput::new(a, f, name, cfg).expect("corpus quadric is central")
}

/// `ℚ(i)[x, y]`, `f = x² + y²`.
pub fn commutative_plane(cfg: &Config) -> QuadricInput {
    build(QuadraticPresentation::polynomial(&["x", "y"]), sum_of_squares(2, 2), "commutative-plane", cfg)
}

/// `ℚ(i)₋₁[x, y]`, `f = x² + y²`.
pub fn skew_plane(cfg: &Config) -> QuadricInput {
    let a = QuadraticPresentation::skew_polynomial(&["x", "y"], &-Scalar::one());
    build(a, sum_of_squares(2, 2), "skew-plane", cfg)
}

/// `ℚ(i)[x]`, `f = x²`.
pub fn double_point(cfg: &Config) -> QuadricInput {
    build(QuadraticPresentation::polynomial(&["x"]), sum_of_squares(1, 1), "double-point", cfg)
}

/// Commutative `ℚ(i)[x, y, z]` with `f = x²`, `x² + y²`, `x² + y² + z²` for rows 1, 2, 3.
pub fn sum_of_squares_conic(row: usize, cfg: &Config) -> QuadricInput {
    assert!((1..=3).contains(&row));
    build(
        QuadraticPresentation::polynomial(&["x", "y", "z"]),
        sum_of_squares(3, row),
        &format!("sum-of-squares-{row}"),
        cfg,
    )
}

/// Five generators; `x_i, x_j` commute for `(i, j) ∈ {(1,2), (2,3), (3,4)}` and anticommute
/// otherwise; `f = Σ x_i²`.
pub fn five_generator(cfg: &Config) -> QuadricInput {
    let names = ["x1", "x2", "x3", "x4", "x5"];
    let n = names.len();
    let commuting = [(0, 1), (1, 2), (2, 3)];
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![Scalar::zero(); n * n];
            v[i * n + j] = Scalar::one();
            v[j * n + i] = if commuting.contains(&(i, j)) { -Scalar::one() } else { Scalar::one() };
            rels.push(v);
        }
    }
    let a = QuadraticPresentation::homogeneous(names.iter().map(|s| s.to_string()).collect(), rels).unwrap();
    build(a, sum_of_squares(n, n), "five-generator", cfg)
}

pub fn worked_conic_params() -> ConicParams {
    ConicParams::from_i64([1, 1, 0], [3, 3, 4])
}

/// `S^(1,1,0)` with `f = 3x² + 3y² + 4z²`.
pub fn worked_conic(cfg: &Config) -> QuadricInput {
    conic(&worked_conic_params(), cfg).expect("worked conic is central")
}

/// The regression corpus: the three planar examples and the three sum-of-squares conics.
pub fn all(cfg: &Config) -> Vec<QuadricInput> {
    vec![commutative_plane(cfg), skew_plane(cfg), double_point(cfg), sum_of_squares_conic(1, cfg), sum_of_squares_conic(2, cfg), sum_of_squares_conic(3, cfg)]
}
