use cnqual::bounds::contractivity_bound;
use cnqual::matrix::*;
use cnqual::polynomials::{eval_recurrence, PolyKind};
use cnqual::scalar::{rational, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

/// Entries agree relative to the largest entry of the matrix.
fn close(a: &CnMatrixF64, b: &CnMatrixF64, rel: f64) -> bool {
    let scale = a.max_abs_entry().max(b.max_abs_entry());
    a.entries().iter().zip(b.entries()).all(|(u, v)| (u - v).abs() <= rel * scale)
}

type CnMatrixF64 = CnMatrix<f64>;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_numeric(m in 1usize..=64, s in 1e-3f64..=8.0) {
        let p = CflPoint::from_s(s).unwrap();
        let numeric = build_a_numeric(m, &p).unwrap();
        let scaled = build_a_closed_scaled(m, &p).unwrap();
        prop_assert!(close(&numeric, &scaled, 1e-9));
        if let Ok(recurrence) = build_a_closed(m, &p) {
            prop_assert!(close(&numeric, &recurrence, 1e-9));
        }
    }

    #[test]
    fn closed_norm_matches_direct(m in 1usize..=64, s in 1e-3f64..=8.0) {
        let p = CflPoint::from_s(s).unwrap();
        let direct = inf_norm(&build_a_numeric(m, &p).unwrap());
        let closed = inf_norm_closed_scaled(m, &p).unwrap();
        prop_assert!((direct - closed).abs() <= 1e-9 * direct.max(closed));
    }

    #[test]
    fn bisymmetric_and_small_residual(m in 1usize..=64, s in 1e-3f64..=8.0) {
        let a = build_a_numeric(m, &CflPoint::from_s(s).unwrap()).unwrap();
        prop_assert!(a.is_bisymmetric(&1e-12));
        prop_assert!(a.defining_residual() <= 1e-10 * (1.0 + s));
    }

    #[test]
    fn corner_is_smallest_diagonal_entry(m in 1usize..=40, s in 1e-2f64..=8.0) {
        let p = CflPoint::from_s(s).unwrap();
        let a = build_a_numeric(m, &p).unwrap();
        let diag_min = (0..m).map(|i| *a.get(i, i)).fold(f64::INFINITY, f64::min);
        let x = *p.x();
        let corner = eval_recurrence(PolyKind::P, m, &x).unwrap() / eval_recurrence(PolyKind::U, m, &x).unwrap();
        prop_assert!((diag_min - *a.get(0, 0)).abs() <= 1e-12);
        prop_assert!((corner - *a.get(0, 0)).abs() <= 1e-10);
    }

    #[test]
    fn row_sums_bounded_below_contractivity_bound(m in 1usize..=40, frac in 0.01f64..=1.0) {
        let s_max = contractivity_bound::<f64>(m).unwrap().s().unwrap_or(50.0);
        let a = build_a_numeric(m, &CflPoint::from_s(frac * s_max).unwrap()).unwrap();
        prop_assert!(inf_norm(&a) <= 1.0 + 1e-12);
    }

    #[test]
    fn cfl_point_coordinates(s in 1e-4f64..=1e4) {
        let p = CflPoint::from_s(s).unwrap();
        prop_assert!((p.x() - (1.0 + 1.0 / s)).abs() <= 1e-14 * p.x());
        prop_assert!((p.omega().cosh() - p.x()).abs() <= 1e-14 * p.x());
    }

    #[test]
    fn exact_distinct_entry_count(m in 1usize..=10, num in 1i64..=40, den in 1i64..=10) {
        let a = build_a_numeric(m, &CflPoint::from_s(rational(num, den)).unwrap()).unwrap();
        let expect = if m % 2 == 1 { (m + 1) * (m + 1) / 4 } else { (m / 2 + 1) * m / 2 };
        prop_assert!(a.is_bisymmetric(&BigRational::int(0)));
        // equal values can coincide at special s, never exceed the bound
        prop_assert!(a.distinct_entries(&BigRational::int(0)) <= expect);
    }
}

#[test]
fn distinct_entry_count() {
    let expect = |m: usize| if m % 2 == 1 { (m + 1) * (m + 1) / 4 } else { (m / 2 + 1) * m / 2 };
    // deep interior entries converge geometrically, so in f64 the classes
    // stay 1e-12 apart only for small m
    for m in 1..=12usize {
        let a = build_a_numeric(m, &CflPoint::from_s(0.7).unwrap()).unwrap();
        assert_eq!(a.distinct_entries(&1e-12), expect(m), "m={m}");
    }
    for m in [13usize, 20, 21] {
        let a = build_a_numeric(m, &CflPoint::from_s(rational(7, 10)).unwrap()).unwrap();
        assert_eq!(a.distinct_entries(&BigRational::int(0)), expect(m), "m={m}");
    }
}

#[test]
fn closed_layout_small_cases() {
    let x = rational(13, 10);
    let p = CflPoint::from_x(x.clone()).unwrap();
    let val = |k, n| eval_recurrence(k, n, &x).unwrap();
    let a = build_a_closed(3, &p).unwrap();
    let u3 = val(PolyKind::U, 3);
    assert_eq!(*a.get(0, 0), val(PolyKind::P, 3) / u3.clone());
    assert_eq!(*a.get(0, 1), val(PolyKind::C, 2) / u3.clone());
    assert_eq!(*a.get(0, 2), val(PolyKind::C, 1) / u3.clone());
    assert_eq!(*a.get(1, 1), (val(PolyKind::C, 1) + val(PolyKind::P, 3)) / u3);
    let a = build_a_closed(4, &p).unwrap();
    assert_eq!(*a.get(0, 3), val(PolyKind::C, 1) / val(PolyKind::U, 4));
    let a = build_a_closed(2, &p).unwrap();
    let u2 = val(PolyKind::U, 2);
    assert_eq!(*a.get(0, 0), val(PolyKind::P, 2) / u2.clone());
    assert_eq!(*a.get(0, 1), val(PolyKind::C, 1) / u2);
    assert_eq!(a, build_a_numeric(2, &p).unwrap());
}

#[test]
fn norm_examples() {
    for s in [0.01f64, 0.3, 1.0, 5.0, 100.0, 1e4] {
        assert!(inf_norm_closed_scaled(3, &CflPoint::from_s(s).unwrap()).unwrap() < 1.0);
    }
    let n9 = inf_norm_closed_scaled(9, &CflPoint::from_s(1.53518f64).unwrap()).unwrap();
    assert!((n9 - 1.0).abs() < 5e-6);
}
