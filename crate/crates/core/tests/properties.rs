use num_traits::{One, Zero};
use proptest::prelude::*;

use quadric_core::clifford::{clifford_deformation, is_clifford_map, theta_from_central};
use quadric_core::config::Config;
use quadric_core::exactlinalg::{factor_small, minimal_polynomial, Matrix, Poly, Scalar, Subspace};
use quadric_core::gradedalg::{block_decompose, radical, FdAlgebra};
use quadric_core::hypersurface::{conic, ConicParams, QuadricInput};
use quadric_core::presentation::{CentralElement, QuadraticPresentation};
use quadric_core::rewrite::{NcPoly, RewriteSystem};

fn scalar(h: i64) -> impl Strategy<Value = Scalar> {
    (-h..=h, -h..=h, 1i64..=3).prop_map(|(re, im, d)| &Scalar::gaussian(re, im) * &Scalar::ratio(1, d))
}

fn nonzero(h: i64) -> impl Strategy<Value = Scalar> {
    scalar(h).prop_filter("nonzero", |s| !s.is_zero())
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(scalar(2), n), 0..=max)
}

fn presentation(names: &'static [&'static str]) -> impl Strategy<Value = QuadraticPresentation> {
    let n = names.len();
    vectors(n * n, n * n).prop_map(move |rels| {
        QuadraticPresentation::homogeneous(names.iter().map(|s| s.to_string()).collect(), rels).unwrap()
    })
}

/// `±1`-skew polynomial ring in up to three generators with a nondegenerate diagonal `f`.
fn skew_quadric() -> impl Strategy<Value = QuadricInput> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * n), prop::collection::vec(nonzero(2), n)))
        .prop_map(|(n, signs, coeffs)| {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let mut rels = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = vec![Scalar::zero(); n * n];
                    v[i * n + j] = Scalar::one();
                    v[j * n + i] = if signs[i * n + j] { Scalar::one() } else { -Scalar::one() };
                    rels.push(v);
                }
            }
            let a = QuadraticPresentation::homogeneous(names, rels).unwrap();
            QuadricInput::new(a, CentralElement::diagonal("f", &coeffs), "skew", &Config::default()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_field_laws(a in scalar(4), b in scalar(4), c in scalar(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn sqrt_of_a_square(a in scalar(5)) {
        let r = (&a * &a).sqrt().unwrap();
        prop_assert!(r == a || r == -a.clone());
    }

    #[test]
    fn factor_recovers_planted_roots(roots in prop::collection::vec((scalar(3), 1usize..=3), 1..=3)) {
        let p = roots.iter().fold(Poly::one(), |acc, (r, m)| acc.mul(&Poly::linear(r).pow(*m)));
        let f = factor_small(&p);
        prop_assert_eq!(f.product(), p.clone());
        prop_assert!(f.splits());
        let total: usize = f.roots().iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, p.degree().unwrap());
        for (r, _) in &roots {
            prop_assert!(f.roots().iter().any(|(s, _)| s == r));
        }
    }

    #[test]
    fn annihilator_is_an_involution(n in 1usize..=3, rows in vectors(9, 9)) {
        let rows: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r[..n * n].to_vec()).collect();
        let r = Subspace::span(n * n, rows);
        let ann = r.annihilator();
        prop_assert_eq!(ann.dim() + r.dim(), n * n);
        prop_assert_eq!(ann.annihilator(), r);
    }

    #[test]
    fn intersection_matches_containment(u in vectors(4, 3), v in vectors(4, 3)) {
        let (u, v) = (Subspace::span(4, u), Subspace::span(4, v));
        let w = u.intersect(&v).unwrap();
        prop_assert!(u.contains_subspace(&w) && v.contains_subspace(&w));
        prop_assert_eq!(w.dim() + u.sum(&v).unwrap().dim(), u.dim() + v.dim());
    }

    #[test]
    fn quadratic_dual_is_an_involution(a in presentation(&["x", "y"])) {
        let back = a.quadratic_dual().unwrap().quadratic_dual().unwrap();
        prop_assert!(back.same_relations(&a));
    }

    #[test]
    fn dual_of_tensor_is_twisted_tensor_of_duals(a in presentation(&["x", "y"]), b in presentation(&["u"])) {
        let left = QuadraticPresentation::tensor(&a, &b).unwrap().quadratic_dual().unwrap();
        let right = QuadraticPresentation::twisted_tensor(&a.quadratic_dual().unwrap(), &b.quadratic_dual().unwrap());
        prop_assert!(left.same_relations(&right));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_linear(
        a in presentation(&["x", "y"]),
        p in prop::collection::vec((0u8..2, 0u8..2, scalar(2)), 1..5),
        c in scalar(2),
    ) {
        let rw = RewriteSystem::complete(&a, 5).unwrap();
        let poly = p.iter().fold(NcPoly::zero(), |acc, (i, j, k)| {
            acc.add(&NcPoly::generator(*i as usize).mul(&NcPoly::generator(*j as usize)).scale(k))
        });
        let nf = rw.normal_form(&poly).unwrap();
        prop_assert_eq!(rw.normal_form(&nf).unwrap(), nf.clone());
        prop_assert_eq!(rw.normal_form(&poly.scale(&c)).unwrap(), nf.scale(&c));
    }

    #[test]
    fn clifford_deformation_keeps_dimension(q in skew_quadric()) {
        let cfg = Config::default();
        let dual = q.algebra.quadratic_dual().unwrap();
        let theta = theta_from_central(&q.algebra, &q.f, &cfg).unwrap();
        prop_assert!(is_clifford_map(&dual, &theta));
        let c = clifford_deformation(&dual, &theta, &cfg).unwrap();
        prop_assert_eq!(c.algebra.dim(), 1 << q.generators().len());
        prop_assert!(c.checks.dimension_invariance);
        prop_assert!(c.algebra.verify_associative().is_ok());
        // nondegenerate diagonal form: C is semisimple
        prop_assert!(radical(&c.algebra).unwrap().is_zero());
    }

    #[test]
    fn central_conic_points_give_clifford_maps(
        alpha in scalar(2), beta in scalar(2), gamma in scalar(2),
        abc in (-3i64..=3, -3i64..=3, -3i64..=3).prop_filter("f ≠ 0", |t| *t != (0, 0, 0)),
    ) {
        let cfg = Config::default();
        let p = ConicParams {
            alpha, beta, gamma,
            a: Scalar::from(abc.0), b: Scalar::from(abc.1), c: Scalar::from(abc.2),
        };
        if let Ok(q) = conic(&p, &cfg) {
            let dual = q.algebra.quadratic_dual().unwrap();
            let theta = theta_from_central(&q.algebra, &q.f, &cfg).unwrap();
            prop_assert!(is_clifford_map(&dual, &theta));
        }
    }

    #[test]
    fn truncated_products_split_by_factor(
        roots in prop::collection::btree_set(-4i64..=4, 1..=3),
        mult in prop::collection::vec(1usize..=3, 3),
    ) {
        // ℚ(i)[t]/(Π (t − r)^m) has one local block of dim m per root
        let mut expected: Vec<usize> = roots.iter().zip(&mult).map(|(_, m)| *m).collect();
        let p = roots.iter().zip(&mult).fold(Poly::one(), |acc, (r, m)| acc.mul(&Poly::linear(&Scalar::from(*r)).pow(*m)));
        let a = FdAlgebra::truncated_polynomial(&p).unwrap();
        let mut dims = block_decompose(&a).unwrap().dims();
        dims.sort_unstable();
        expected.sort_unstable();
        prop_assert_eq!(dims, expected);
    }

    #[test]
    fn minimal_polynomial_annihilates(entries in prop::collection::vec(scalar(2), 4)) {
        // 2×2 matrices as a 4-dim algebra
        let m2 = {
            let g = FdAlgebra::group_algebra();
            g.twisted_tensor(&g).ungraded()
        };
        let mul = |x: &[Scalar], y: &[Scalar]| m2.mul(x, y);
        let m = minimal_polynomial(m2.unit(), &entries, mul);
        prop_assert!(m.degree().unwrap() <= 2);
        let value = m.eval_in(m2.unit(), &entries, mul);
        prop_assert!(value.iter().all(Zero::is_zero));
    }

    #[test]
    fn change_of_basis_preserves_structure(q in skew_quadric(), seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let cfg = Config::default();
        let n = q.generators().len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Matrix::identity(n).row_vecs();
        for _ in 0..2 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                let shifted: Vec<Scalar> = rows[i].iter().zip(&rows[j]).map(|(x, y)| x + y).collect();
                rows[i] = shifted;
            }
        }
        let moved = q.change_of_basis(&Matrix::from_rows(n, rows), &cfg).unwrap();
        let dual = moved.algebra.quadratic_dual().unwrap();
        let theta = theta_from_central(&moved.algebra, &moved.f, &cfg).unwrap();
        let c = clifford_deformation(&dual, &theta, &cfg).unwrap();
        prop_assert_eq!(c.algebra.dim(), 1 << n);
        prop_assert!(radical(&c.algebra).unwrap().is_zero());
    }
}
