mod common;

use std::f64::consts::PI;

use fucik::weights::presets::{bump, lobes, sine};
use fucik::weights::SignChangeCount;
use fucik::{Error, Poly, Weight};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn evaluation_matches_pieces_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = common::random_indefinite_weight(&mut rng, -1.0, 2.0, 5);
    for _ in 0..1000 {
        let t = rng.gen_range(-1.0..=2.0);
        let i = w.piece_index(t);
        let lo = w.breakpoints()[i];
        assert_eq!(w.evaluate(t).unwrap(), w.pieces()[i].eval(t - lo));
    }
    assert!(matches!(w.evaluate(2.5), Err(Error::Domain { .. })));
}

#[test]
fn sine_lobes_count_sign_changes() {
    for k in 1..=6 {
        let w: Weight = sine(0.0, (k as f64 + 1.0) * PI).unwrap();
        let profile = w.sign_profile();
        assert_eq!(profile.sign_change_count, SignChangeCount::Finite(k), "k = {k}");
        assert_eq!(profile.simple_change_points.len(), k);
        for (j, &c) in profile.simple_change_points.iter().enumerate() {
            assert!((c - (j as f64 + 1.0) * PI).abs() < 1e-9, "change {j} at {c}");
        }
    }
}

#[test]
fn first_positive_time_is_monotone() {
    let w: Weight = lobes(&[-1, 1, 0, -1, 1]).unwrap();
    let mut last = f64::NEG_INFINITY;
    for i in 0..=200 {
        let s = 5.0 * PI * f64::from(i) / 200.0;
        if let Some(t) = w.first_positive_time(s).unwrap() {
            assert!(t >= s && t >= last);
            last = t;
        }
    }
    assert!(w.first_positive_time(4.5 * PI).unwrap().is_some());
    assert_eq!(w.first_negative_time(4.0 * PI + 0.1).unwrap(), None);
}

#[test]
fn bump_support_edges() {
    let w: Weight = bump(PI / 4.0, 3.0 * PI / 4.0, 0.0, PI).unwrap();
    let (lo, hi) = w.support_edges().for_sign(true);
    assert!((lo.unwrap() - PI / 4.0).abs() < 1e-9);
    assert!((hi.unwrap() - 3.0 * PI / 4.0).abs() < 1e-9);
    assert_eq!(w.support_edges().for_sign(false), (None, None));
}

#[test]
fn invalid_weights_are_rejected() {
    let p = || Poly::new(vec![1.0]);
    assert!(matches!(
        Weight::new(vec![0.0, 1.0, 1.0], vec![p(), p()]),
        Err(Error::InvalidWeight(_))
    ));
    assert!(matches!(
        Weight::new(vec![0.0, 1.0], vec![p(), p()]),
        Err(Error::InvalidWeight(_))
    ));
    assert!(matches!(
        Weight::new(vec![0.0, f64::NAN], vec![p()]),
        Err(Error::InvalidWeight(_))
    ));
}

proptest! {
    #[test]
    fn negation_reflects_the_sign_profile(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_indefinite_weight(&mut rng, 0.0, 1.0, 4);
        let neg = w.negated();
        prop_assert_eq!(&w.sign_profile().positive_intervals, &neg.sign_profile().negative_intervals);
        prop_assert_eq!(&w.sign_profile().negative_intervals, &neg.sign_profile().positive_intervals);
        let (lo, hi) = w.range();
        let (nlo, nhi) = neg.range();
        prop_assert_eq!((lo, hi), (-nhi, -nlo));
    }

    #[test]
    fn sign_intervals_have_the_claimed_sign(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_indefinite_weight(&mut rng, 0.0, 1.0, 4);
        let profile = w.sign_profile();
        for &(a, b) in &profile.positive_intervals {
            prop_assert!(w.value(0.5 * (a + b)) > 0.0);
        }
        for &(a, b) in &profile.negative_intervals {
            prop_assert!(w.value(0.5 * (a + b)) < 0.0);
        }
    }
}
