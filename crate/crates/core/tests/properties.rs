mod common;

use common::*;
use frameposet::dual::{dual_family, dual_neg, dual_sum};
use frameposet::frame::{diagram_vector, diagram_vectors, Field};
use frameposet::io::{fmt_g17, frame_to_json, parse_frame};
use frameposet::linalg::{hermitian_inverse, inner, norm, orthonormal_nullspace, Matrix, ToleranceConfig, C64};
use frameposet::poset::{empty_cover, factor_poset, poset_necessary_check, prime_factors, reconstruct_from_ec};
use frameposet::sampling::{gaussian_matrix, random_frame, seeded_rng};
use frameposet::Frame;
use proptest::prelude::*;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b)| C64::new(a, b)), n)
}

/// Small integer frames without zero vectors.
fn int_frame() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|n| {
        let v = prop::collection::vec(-2i64..=2, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0));
        (Just(n), prop::collection::vec(v, 1..=7))
    })
}

fn to_frame(vs: &[Vec<i64>], n: usize) -> Frame {
    Frame::real(n, vs.iter().map(|v| v.iter().map(|&x| x as f64).collect()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn diagram_inner_product_identity(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        for field in [Field::Real, Field::Complex] {
            let f = frameposet::sampling::gaussian_vector(&mut rng, field, n);
            let g = frameposet::sampling::gaussian_vector(&mut rng, field, n);
            let lhs = (n as f64 - 1.0) * diagram_vector(&f, field).unwrap().inner(&diagram_vector(&g, field).unwrap());
            let rhs = n as f64 * inner(&f, &g).norm_sqr() - norm(&f).powi(2) * norm(&g).powi(2);
            let scale = n as f64 * norm(&f).powi(2) * norm(&g).powi(2);
            prop_assert!((lhs - C64::new(rhs, 0.0)).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn diagram_vectors_scale_quadratically(v in complex_vec(3), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let c = C64::new(re, im);
        let scaled: Vec<C64> = v.iter().map(|z| z * c).collect();
        let a = diagram_vector(&v, Field::Complex).unwrap();
        let b = diagram_vector(&scaled, Field::Complex).unwrap();
        let s = c.norm_sqr();
        for (x, y) in a.data().iter().zip(b.data()) {
            prop_assert!((x * s - y).norm() <= 1e-12 * (1.0 + s) * (1.0 + x.norm()));
        }
        prop_assert_eq!(a.len(), 9);
    }

    #[test]
    fn poset_matches_exact_oracle((n, vs) in int_frame()) {
        let f = to_frame(&vs, n);
        let p = factor_poset(&f, &tol()).unwrap();
        prop_assert_eq!(member_masks(&p), exact_tight_masks_int(&vs));
    }

    #[test]
    fn empty_cover_round_trip_and_necessary_check((n, vs) in int_frame()) {
        let p = factor_poset(&to_frame(&vs, n), &tol()).unwrap();
        let back = reconstruct_from_ec(&empty_cover(&p), p.ground()).unwrap();
        prop_assert!(back.same_members(&p));
        prop_assert!(empty_cover(&p).is_antichain());
        // Factor posets of actual frames satisfy every necessary condition.
        let check = poset_necessary_check(&p);
        prop_assert!(check.passed(), "{:?}", check.violations);
    }

    #[test]
    fn tight_frames_split_into_disjoint_primes((n, vs) in int_frame()) {
        let f = to_frame(&vs, n);
        if let Ok(parts) = prime_factors(&f, &tol()) {
            let mut union = frameposet::IndexSet::EMPTY;
            for p in &parts {
                prop_assert!(union.intersection(*p).is_empty());
                union = union.union(*p);
            }
            prop_assert_eq!(union, f.all_indices());
        }
    }

    #[test]
    fn diagram_sum_vanishes_exactly_for_tight_integer_frames((n, vs) in int_frame()) {
        let f = to_frame(&vs, n);
        let full = (1u32 << vs.len()) - 1;
        let exact = exact_tight_masks_int(&vs).contains(&full);
        let dims = Field::Real.diagram_len(n);
        let mut sum = vec![C64::new(0.0, 0.0); dims];
        for d in diagram_vectors(&f) {
            for (s, x) in sum.iter_mut().zip(d.data()) {
                *s += x;
            }
        }
        prop_assert_eq!(norm(&sum) <= 1e-12, exact);
    }

    #[test]
    fn nullspace_is_orthonormal_kernel(seed in any::<u64>(), n in 1usize..=4, extra in 0usize..=4) {
        let mut rng = seeded_rng(seed);
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let m = gaussian_matrix(&mut rng, field, n, n + extra, 1.0);
        let basis = orthonormal_nullspace(&m, &tol());
        prop_assert_eq!(basis.len(), extra);
        for (i, u) in basis.iter().enumerate() {
            prop_assert!(norm(&m.mul_vec(u).unwrap()) <= 1e-12 * (1.0 + m.frobenius()));
            for (j, w) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                prop_assert!((inner(u, w) - C64::new(target, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_inverse_inverts(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix(&mut rng, Field::Complex, n, n + 2, 1.0);
        let m = a.mul(&a.adjoint()).unwrap().add(&Matrix::identity(n).scale(C64::new(0.1, 0.0))).unwrap();
        let inv = hermitian_inverse(&m, &tol()).unwrap();
        prop_assert!(m.mul(&inv).unwrap().identity_residual() <= 1e-10);
    }

    #[test]
    fn dual_coefficients_round_trip_and_group_laws(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let f = random_frame(&mut rng, field, 3, 6);
        let fam = dual_family(&f, &tol()).unwrap();
        let draw = |rng: &mut _| fam.element(gaussian_matrix(rng, field, 3, 3, 1.0)).unwrap();
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));

        let back = fam.decompose(a.materialized()).unwrap();
        prop_assert!(back.coeffs().sub(a.coeffs()).unwrap().max_abs() <= 1e-12);
        prop_assert!(a.duality_residual() <= 1e-9);

        let ab = dual_sum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &dual_sum(&b, &a).unwrap());
        let l = dual_sum(&ab, &c).unwrap();
        let r = dual_sum(&a, &dual_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(l.coeffs().sub(r.coeffs()).unwrap().max_abs() <= 1e-12);
        prop_assert!(dual_sum(&a, &dual_neg(&a)).unwrap().is_canonical());
        prop_assert!(ab.duality_residual() <= 1e-9);
    }

    #[test]
    fn frame_files_round_trip_bitwise(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let field = if seed % 2 == 0 { Field::Real } else { Field::Complex };
        let f = random_frame(&mut rng, field, 3, 5);
        prop_assert_eq!(parse_frame(&frame_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn g17_round_trips(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        prop_assert_eq!(fmt_g17(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }
}
