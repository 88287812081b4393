//! Property tests: algebraic identities, frame completion, slice extension,
//! quadrature exactness and kernel symmetries over random inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use slicewave::algebra::{para_inv, ImaginaryUnit, Multivector, Paravector};
use slicewave::frame::{complete_basis, frame_coords, FrameSolver};
use slicewave::harness::{CatalogEntry, SuiteConfig};
use slicewave::numerics::{integrate_simpson_real, UniformGrid};
use slicewave::paley_wiener::{pw_kernel, pw_kernel_quadrature};
use slicewave::slice::{alpha_beta, ext_eval, representation_eval, representation_forms, SlicePair};

fn unit(n: usize) -> impl Strategy<Value = ImaginaryUnit> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("away from zero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-2)
        .prop_map(|v| ImaginaryUnit::new(v).unwrap())
}

fn multivector(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-2.0f64..2.0, 1 << n).prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
}

fn paravector(n: usize) -> impl Strategy<Value = Paravector> {
    (-3.0f64..3.0, prop::collection::vec(-3.0f64..3.0, n))
        .prop_filter("invertible", |(x0, v)| x0 * x0 + v.iter().map(|c| c * c).sum::<f64>() > 1e-2)
        .prop_map(|(x0, v)| Paravector::new(x0, v).unwrap())
}

fn hardy_entry() -> impl Strategy<Value = CatalogEntry> {
    (0.5f64..2.0, 1u32..=3).prop_map(|(a, k)| CatalogEntry::HardyRational { a, k }.new().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in (1usize..=5).prop_flat_map(|n| (multivector(n), multivector(n), multivector(n)))) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        let scale = a.norm() * b.norm() * c.norm();
        prop_assert!(left.dist(&right) <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn paravector_inverse_is_two_sided(x in (1usize..=6).prop_flat_map(paravector)) {
        let inv = para_inv(&x).unwrap();
        let one = Multivector::scalar(x.dim(), 1.0).unwrap();
        prop_assert!((&x.to_multivector() * &inv.to_multivector()).dist(&one) <= 1e-12);
        prop_assert!((&inv.to_multivector() * &x.to_multivector()).dist(&one) <= 1e-12);
    }

    #[test]
    fn unit_imaginaries_square_to_minus_one(i in (1usize..=6).prop_flat_map(unit)) {
        let sq = &i.to_multivector() * &i.to_multivector();
        prop_assert!(sq.dist(&Multivector::scalar(i.dim(), -1.0).unwrap()) <= 1e-14);
    }

    #[test]
    fn completed_frames_are_orthonormal((seed, rng_seed) in ((2usize..=8).prop_flat_map(unit), any::<u64>())) {
        let frame = complete_basis(&seed, rng_seed).unwrap();
        prop_assert_eq!(frame.units()[0].components(), seed.components());
        prop_assert!(frame.orthonormality_defect() <= 1e-12);
    }

    #[test]
    fn frame_coordinates_round_trip(
        (seed, m) in (2usize..=5).prop_flat_map(|n| (unit(n), multivector(n))),
        rng_seed in any::<u64>(),
    ) {
        let frame = complete_basis(&seed, rng_seed).unwrap();
        let solver = FrameSolver::new(&frame).unwrap();
        let coords = frame_coords(&m, &frame).unwrap();
        prop_assert!(solver.recompose(&coords).dist(&m) <= 1e-11 * m.norm().max(1.0));
    }

    #[test]
    fn slice_extension_matches_direct_evaluation(
        entry in hardy_entry(),
        (i, k) in (2usize..=5).prop_flat_map(|n| (unit(n), unit(n))),
        u in 0.1f64..3.0,
        v in -4.0f64..4.0,
    ) {
        let f = entry.evaluator();
        let pair = SlicePair::sample(f, &i, u, v);
        let direct = f(&Paravector::on_slice(u, v, &k));
        let ext = ext_eval(&pair, &k);
        prop_assert!(ext.dist(&direct) <= 1e-12 * direct.norm().max(1.0));
        let x = Paravector::on_slice(u, v, &k);
        let rep = representation_eval(&pair, &x).unwrap();
        prop_assert!(rep.dist(&direct) <= 1e-12 * direct.norm().max(1.0));
        let (first, second) = representation_forms(&pair, &x).unwrap();
        prop_assert!(first.dist(&second) <= 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn alpha_beta_are_slice_independent_for_intrinsic_functions(
        entry in hardy_entry(),
        (i, k) in (2usize..=5).prop_flat_map(|n| (unit(n), unit(n))),
        u in 0.1f64..3.0,
        v in -4.0f64..4.0,
    ) {
        let f = entry.evaluator();
        let (a1, b1) = alpha_beta(&SlicePair::sample(f, &i, u, v));
        let (a2, b2) = alpha_beta(&SlicePair::sample(f, &k, u, v));
        prop_assert!(a1.dist(&a2) <= 1e-12 * a1.norm().max(1.0));
        prop_assert!(b1.dist(&b2) <= 1e-12 * b1.norm().max(1.0));
        // both are real for a function that is real on the real axis
        prop_assert!((a1.norm() - a1.scalar_part().abs()).abs() <= 1e-12 * a1.norm().max(1.0));
    }

    #[test]
    fn simpson_integrates_cubics_exactly(
        c in prop::array::uniform4(-3.0f64..3.0),
        lo in -5.0f64..0.0,
        width in 0.5f64..5.0,
        count in 3usize..60,
    ) {
        let grid = UniformGrid::new(lo, lo + width, count).unwrap();
        let p = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        let antider = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
        let values: Vec<f64> = grid.nodes().map(p).collect();
        let exact = antider(lo + width) - antider(lo);
        let got = integrate_simpson_real(&grid, &values).unwrap();
        prop_assert!((got - exact).abs() <= 1e-11 * (1.0 + exact.abs()));
    }

    #[test]
    fn bandlimited_kernel_matches_quadrature(
        x in (2usize..=4).prop_flat_map(|n| (-3.0f64..3.0, prop::collection::vec(-1.0f64..1.0, n)))
            .prop_map(|(x0, v)| Paravector::new(x0, v).unwrap()),
        xi in -3.0f64..3.0,
        b in 0.5f64..2.0,
    ) {
        let closed = pw_kernel(&x, xi, b).unwrap();
        let quad = pw_kernel_quadrature(&x, xi, b, 2049).unwrap();
        prop_assert!(closed.dist(&quad) <= 1e-9 * closed.norm().max(1.0));
    }

    #[test]
    fn bandlimited_kernel_is_real_and_even_on_the_real_axis(t in -10.0f64..10.0, b in 0.5f64..2.0) {
        let k = |s: f64| pw_kernel(&Paravector::real(3, s).unwrap(), 0.0, b).unwrap();
        let (plus, minus) = (k(t), k(-t));
        prop_assert!((plus.norm() - plus.scalar_part().abs()).abs() <= 1e-15);
        prop_assert!(plus.dist(&minus) <= 1e-15);
    }

    #[test]
    fn catalog_entries_are_real_on_the_real_axis(entry in hardy_entry(), t in -20.0f64..20.0) {
        let z = entry.eval_complex(Complex64::new(t, 0.0));
        prop_assert!(z.im.abs() <= 1e-15 * z.norm().max(1e-300));
        let conj = entry.eval_complex(Complex64::new(0.7, t)).conj();
        prop_assert!((conj - entry.eval_complex(Complex64::new(0.7, -t))).norm() <= 1e-14 * conj.norm().max(1e-300));
    }

    #[test]
    fn config_overrides_round_trip(seed in any::<u32>(), count in 3usize..=6, tol in 1e-12f64..1e-3) {
        let overrides = [
            format!("rng_seed={seed}"),
            format!("slice_count={count}"),
            format!("tolerances.theorem_tol={tol:e}"),
        ];
        let cfg = SuiteConfig::from_toml_with_overrides("", &overrides).unwrap();
        prop_assert_eq!(cfg.rng_seed, u64::from(seed));
        prop_assert_eq!(cfg.slice_count, count);
        prop_assert_eq!(cfg.tolerances.theorem_tol, tol);
        cfg.validate().unwrap();
    }
}
