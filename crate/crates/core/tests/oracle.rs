//! Both evaluators against a direct evaluation of the definition.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{line, m_hat_by_definition};
use fuzzy_prokhorov::random::{random_dyadic_measure, random_standard_space};
use fuzzy_prokhorov::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn t(v: f64) -> TimeScale {
    TimeScale::new(v).unwrap()
}

fn pair_space(m: f64) -> Arc<FuzzySpace> {
    let mut values = BTreeMap::new();
    values.insert((0, 1), vec![m]);
    Arc::new(FuzzySpace::table(vec!["x".into(), "y".into()], vec![1.0], &values).unwrap())
}

#[test]
fn oracle_agrees_with_worked_examples() {
    let s = pair_space(0.2);
    let x = dirac(s.clone(), 0).unwrap();
    let y = dirac(s.clone(), 1).unwrap();
    let mix = Measure::new(s, [(0, 0.7), (1, 0.3)]).unwrap();
    assert!((m_hat_by_definition(&x, &y, 1.0) - 0.2).abs() < 1e-12);
    assert!((m_hat_by_definition(&x, &mix, 1.0) - 0.7).abs() < 1e-12);

    let close = pair_space(0.9);
    let x = dirac(close.clone(), 0).unwrap();
    let y = dirac(close, 1).unwrap();
    assert!((m_hat_by_definition(&x, &y, 1.0) - 0.9).abs() < 1e-12);
}

#[test]
fn frozen_values_on_a_line() {
    // Points at 0, 1, 3, 4; values from `m_hat_by_definition`.
    let s = line(&[0.0, 1.0, 3.0, 4.0]);
    let mu = Measure::new(s.clone(), [(0, 0.5), (1, 0.25), (3, 0.25)]).unwrap();
    let nu = Measure::new(s.clone(), [(1, 0.375), (2, 0.625)]).unwrap();
    for (tv, expected) in [(0.25, 0.25), (1.0, 0.5), (4.0, 2.0 / 3.0)] {
        let flow = prokhorov_flow(&mu, &nu, t(tv)).unwrap().value;
        let brute = prokhorov_brute(&mu, &nu, t(tv)).unwrap().value;
        assert!((flow - expected).abs() < 1e-12, "t = {tv}: flow {flow}");
        assert!((brute - expected).abs() < 1e-12, "t = {tv}: brute {brute}");
    }

    // Chain x, y, z at 0, 1, 2: δx vs δz is M(x, z, 1) = 1/3.
    let chain = line(&[0.0, 1.0, 2.0]);
    let x = dirac(chain.clone(), 0).unwrap();
    let z = dirac(chain.clone(), 2).unwrap();
    assert!((prokhorov_flow(&x, &z, t(1.0)).unwrap().value - 1.0 / 3.0).abs() < 1e-12);
    assert!((prokhorov_brute(&x, &z, t(1.0)).unwrap().value - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn brute_witness_binds() {
    let s = line(&[0.0, 1.0, 3.0, 4.0]);
    let mu = Measure::new(s.clone(), [(0, 0.5), (1, 0.25), (3, 0.25)]).unwrap();
    let nu = Measure::new(s.clone(), [(1, 0.375), (2, 0.625)]).unwrap();
    let result = prokhorov_brute(&mu, &nu, t(1.0)).unwrap();
    let w = result.witness.expect("distinct measures have a witness");
    let (from, to) = match w.side {
        Side::First => (&mu, &nu),
        Side::Second => (&nu, &mu),
    };
    let a: PointSet = w.points.iter().copied().collect();
    // Just below r*, the witness constraint fails.
    let r = Radius::new(result.r_star - 1e-9).unwrap();
    let hood = neighborhood(&s, &a, r, t(1.0)).unwrap();
    assert!(from.mass(&a).unwrap() > to.mass(&hood).unwrap() + r.get());
}

fn instance() -> impl Strategy<Value = (u64, f64)> {
    (any::<u64>(), prop_oneof![Just(0.25), Just(1.0), Just(4.0)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn evaluators_match_definition((seed, tv) in instance()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 4) as usize;
        let s = random_standard_space(&mut rng, n);
        let mu = random_dyadic_measure(&mut rng, &s, n);
        let nu = random_dyadic_measure(&mut rng, &s, n);
        let oracle = m_hat_by_definition(&mu, &nu, tv);
        let flow = prokhorov_flow(&mu, &nu, t(tv)).unwrap().value;
        let brute = prokhorov_brute(&mu, &nu, t(tv)).unwrap().value;
        prop_assert!((flow - oracle).abs() <= 1e-9, "flow {} oracle {}", flow, oracle);
        prop_assert!((brute - oracle).abs() <= 1e-9, "brute {} oracle {}", brute, oracle);
    }

    #[test]
    fn feasible_matches_definition((seed, tv) in instance(), r in 0.001f64..0.999) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 4) as usize;
        let s = random_standard_space(&mut rng, n);
        let mu = random_dyadic_measure(&mut rng, &s, n);
        let nu = random_dyadic_measure(&mut rng, &s, n);
        let fast = feasible(&mu, &nu, Radius::new(r).unwrap(), t(tv)).unwrap();
        prop_assert_eq!(fast, common::feasible_by_definition(&mu, &nu, r, tv));
    }
}
