use cnqual::bounds::{contractivity_bound, positivity_bound};
use cnqual::matrix::{build_a_numeric, CflPoint, GridConfig};
use cnqual::simulator::{run, step, InitialCondition, SimConfig};
use proptest::prelude::*;

fn tau_for(m: usize, s: f64) -> f64 {
    let h = 1.0 / (m as f64 + 1.0);
    s * h * h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crank_nicolson_step_is_a_times_w(
        m in 1usize..=32,
        s in 0.01f64..20.0,
        w in prop::collection::vec(-10.0f64..10.0, 32),
    ) {
        let w = &w[..m];
        let g = GridConfig::unit(m).unwrap();
        let tau = tau_for(m, s);
        let cfg = SimConfig::crank_nicolson(g.clone(), tau, 1, InitialCondition::Custom(w.to_vec()));
        let a = build_a_numeric(m, &CflPoint::from_tau(&g, tau).unwrap()).unwrap();
        let expect = a.mul_vec(w).unwrap();
        let got = step(&cfg, w).unwrap();
        let scale = w.iter().fold(1e-300f64, |acc, v| acc.max(v.abs()));
        for (x, y) in got.iter().zip(&expect) {
            prop_assert!((x - y).abs() <= 1e-12 * scale * (1.0 + s), "{} vs {}", x, y);
        }
    }

    #[test]
    fn nonnegative_data_stays_nonnegative_below_positivity_bound(
        m in 1usize..=32,
        frac in 0.05f64..=1.0,
        w in prop::collection::vec(0.0f64..5.0, 32),
        steps in 1usize..40,
    ) {
        let s = frac * positivity_bound::<f64>(m).unwrap().s().unwrap();
        let cfg = SimConfig::crank_nicolson(
            GridConfig::unit(m).unwrap(), tau_for(m, s), steps, InitialCondition::Custom(w[..m].to_vec()));
        let t = run(&cfg).unwrap();
        prop_assert_eq!(t.positivity_violation, None);
    }

    #[test]
    fn norm_never_grows_below_contractivity_bound(
        m in 4usize..=32,
        frac in 0.05f64..=1.0,
        w in prop::collection::vec(-5.0f64..5.0, 32),
        steps in 1usize..40,
    ) {
        let s = frac * contractivity_bound::<f64>(m).unwrap().s().unwrap();
        let cfg = SimConfig::crank_nicolson(
            GridConfig::unit(m).unwrap(), tau_for(m, s), steps, InitialCondition::Custom(w[..m].to_vec()));
        let t = run(&cfg).unwrap();
        prop_assert_eq!(t.norm_violation, None);
    }

    #[test]
    fn backward_euler_is_unconditional(
        m in 1usize..=32,
        s in 0.01f64..100.0,
        w in prop::collection::vec(0.0f64..5.0, 32),
        steps in 1usize..20,
    ) {
        let cfg = SimConfig {
            grid: GridConfig::unit(m).unwrap(),
            theta: 1.0,
            tau: tau_for(m, s),
            steps,
            initial: InitialCondition::Custom(w[..m].to_vec()),
        };
        let t = run(&cfg).unwrap();
        prop_assert_eq!((t.positivity_violation, t.norm_violation), (None, None));
    }
}

#[test]
fn crank_nicolson_with_small_meshes_is_always_contractive() {
    for m in 1..=3 {
        for s in [0.5, 5.0, 50.0, 500.0] {
            let w: Vec<f64> = (0..m).map(|i| if i % 2 == 0 { 1.0 } else { -2.0 }).collect();
            let cfg = SimConfig::crank_nicolson(
                GridConfig::unit(m).unwrap(), tau_for(m, s), 30, InitialCondition::Custom(w));
            assert_eq!(run(&cfg).unwrap().norm_violation, None, "m={m} s={s}");
        }
    }
}
