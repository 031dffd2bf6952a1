mod common;

use common::*;
use sphertest_core::asymptotics::h_of_theta;
use sphertest_core::classical::*;
use sphertest_core::power::{classical_power, empirical_power};
use sphertest_core::sampler::{sample_eigs_with, EigenSample, Sampler, SpikedModel};
use sphertest_core::Error;

const ALPHA: f64 = 0.05;

fn draws(p: usize, n: usize, h: f64, seed: u64, reps: u64) -> Vec<EigenSample> {
    let model = SpikedModel::new(p, n, h).unwrap().with_seed(seed);
    (0..reps).map(|r| sample_eigs_with(&model, r, Sampler::Bidiagonal).unwrap()).collect()
}

fn rate(samples: &[EigenSample], f: impl Fn(&EigenSample) -> TestReport) -> f64 {
    samples.iter().filter(|e| f(e).reject).count() as f64 / samples.len() as f64
}

fn flat(p: usize, n: usize, value: f64) -> EigenSample {
    EigenSample::from_eigenvalues(vec![value; p.min(n)], p, n).unwrap()
}

#[test]
fn spherical_spectrum_never_rejects() {
    for &(p, n) in &[(10, 20), (50, 50)] {
        let e = flat(p, n, 2.5);
        let r = john_test(&e, ALPHA).unwrap();
        assert!(!r.reject);
        assert!((r.stat + 0.5 * (p as f64 + 1.0)).abs() < 1e-12);
    }
    let r = ledoit_wolf_test(&flat(40, 40, 1.0), ALPHA).unwrap();
    assert!((r.stat + 20.5).abs() < 1e-12, "{}", r.stat);
    assert!(matches!(john_test(&flat(5, 10, 0.0), ALPHA), Err(Error::Degenerate(_))));
}

#[test]
fn report_serialization() {
    let r = john_test(&flat(10, 20, 1.0), ALPHA).unwrap().with_seed(4);
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in ["test", "stat", "crit", "alpha", "reject", "p", "n", "seed"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["test"], "john");
    assert_eq!(r.reject, r.stat > r.crit);
}

#[test]
fn john_ignores_scale_and_lw_does_not() {
    for e in draws(30, 45, 0.7, 3, 5).iter().chain(&draws(45, 30, 0.7, 4, 5)) {
        let a = john_test(e, ALPHA).unwrap().stat;
        let b = john_test(&e.scaled(3.7).unwrap(), ALPHA).unwrap().stat;
        assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
        let l1 = ledoit_wolf_test(e, ALPHA).unwrap().stat;
        let l2 = ledoit_wolf_test(&e.scaled(2.0).unwrap(), ALPHA).unwrap().stat;
        assert!((l1 - l2).abs() > 1.0);
    }
}

#[test]
fn john_and_ledoit_wolf_null_calibration() {
    let (p, n) = (200, 400);
    let null = draws(p, n, 0.0, 10, 5000);
    let size_j = rate(&null, |e| john_test(e, ALPHA).unwrap());
    let size_lw = rate(&null, |e| ledoit_wolf_test(e, ALPHA).unwrap());
    assert!((size_j - ALPHA).abs() < 0.01, "john size {size_j}");
    assert!((size_lw - ALPHA).abs() < 0.01, "lw size {size_lw}");
    // nU - p = 2 * stat + 1
    let nu: Vec<f64> = null.iter().map(|e| 2.0 * john_test(e, ALPHA).unwrap().stat + 1.0).collect();
    assert!((mean(&nu) - 1.0).abs() < 3.0 * std_err(&nu), "{}", mean(&nu));
    assert!((var(&nu) / 4.0 - 1.0).abs() < 0.15, "{}", var(&nu));
}

#[test]
fn clr_matches_direct_formula() {
    let e = draws(20, 50, 0.5, 2, 1).remove(0);
    let (p, n) = (20.0f64, 50.0f64);
    let want = e.lambda.iter().sum::<f64>() - e.lambda.iter().map(|l| l.ln()).sum::<f64>()
        - p
        - p * (1.0 - (1.0 - n / p) * (1.0 - p / n).ln());
    assert!((clr_statistic(&e).unwrap() - want).abs() < 1e-10);
    let ones = flat(20, 50, 1.0);
    let want = -p * (1.0 - (1.0 - n / p) * (1.0 - p / n).ln());
    assert!((clr_statistic(&ones).unwrap() - want).abs() < 1e-12);
    assert!(matches!(clr_test(&flat(50, 50, 1.0), ALPHA, 0.99), Err(Error::Inapplicable(_))));
    assert!(matches!(clr_test(&flat(60, 50, 1.0), ALPHA, 0.5), Err(Error::Inapplicable(_))));
}

#[test]
fn clr_null_calibration() {
    let (p, n) = (200, 400);
    let null = draws(p, n, 0.0, 11, 5000);
    let clr: Vec<f64> = null.iter().map(|e| clr_statistic(e).unwrap()).collect();
    let target = -0.5 * 0.5f64.ln();
    assert!((mean(&clr) - target).abs() < 3.0 * std_err(&clr), "{} vs {target}", mean(&clr));
    let size = rate(&null, |e| clr_test(e, ALPHA, e.c()).unwrap());
    assert!((size - ALPHA).abs() < 0.01, "clr size {size}");
}

#[test]
fn linear_statistic_powers() {
    let (p, n) = (200, 400);
    for (test, theta) in [
        (TestName::John, 1.5),
        (TestName::LedoitWolf, 1.5),
        (TestName::Clr, 2.0),
        (TestName::John, 2.0),
    ] {
        let emp = empirical_power(test, theta, p, n, 3000, ALPHA, 40).unwrap();
        let want = classical_power(theta, ALPHA, test, Some(0.5)).unwrap();
        assert!((emp - want).abs() < 0.05, "{test} at {theta}: {emp} vs {want}");
    }
}

#[test]
fn tw1_table_behaviour() {
    let q: Vec<f64> = [0.9, 0.95, 0.99].iter().map(|&q| tw1_quantile(q).unwrap()).collect();
    assert!(q[0] < q[1] && q[1] < q[2]);
    // published values: 0.4501, 0.9793, 2.0234
    for (got, want) in q.iter().zip([0.4501, 0.9793, 2.0234]) {
        assert!((got - want).abs() < 2e-3, "{got} vs {want}");
    }
    for i in 1..100 {
        let level = i as f64 / 100.0;
        assert!((tw1_cdf(tw1_quantile(level).unwrap()) - level).abs() < 1e-3);
    }
    let mut prev = 0.0;
    for i in 0..=2000 {
        let f = tw1_cdf(-10.0 + i as f64 * 0.01);
        assert!(f >= prev);
        prev = f;
    }
    assert!(tw1_quantile(0.0).is_err() && tw1_quantile(1.0).is_err());
}

#[test]
fn tracy_widom_null_and_alternatives() {
    let (p, n) = (400, 400);
    let null = draws(p, n, 0.0, 12, 5000);
    for kind in [TwKind::Lambda, TwKind::Mu] {
        let size = rate(&null, |e| tracy_widom_test(e, ALPHA, kind).unwrap());
        assert!((size - ALPHA).abs() < 0.015, "{kind:?} size {size}");
    }
    let far = draws(p, n, 2.0, 14, 500);
    let r = rate(&far, |e| tracy_widom_test(e, ALPHA, TwKind::Lambda).unwrap());
    assert!(r > 0.99, "supercritical {r}");
}

#[test]
fn tracy_widom_power_under_contiguous_alternatives() {
    let tw = |e: &EigenSample| tracy_widom_test(e, ALPHA, TwKind::Lambda).unwrap();
    let h = h_of_theta(0.5, 1.0).unwrap();
    let r = rate(&draws(400, 400, h, 13, 3000), tw);
    assert!((r - ALPHA).abs() < 0.02, "theta 0.5: {r}");
}

#[test]
fn tracy_widom_percentile_cross_check() {
    let null = draws(800, 800, 0.0, 15, 5000);
    let mut s: Vec<f64> = null
        .iter()
        .map(|e| tracy_widom_statistic(e, TwKind::Lambda).unwrap())
        .collect();
    s.sort_by(f64::total_cmp);
    let q = s[(0.95 * s.len() as f64).ceil() as usize - 1];
    let want = tw1_quantile(0.95).unwrap();
    assert!((q - want).abs() < 0.15, "{q} vs {want}");
}

#[test]
fn power_ordering_under_alternatives() {
    let (p, n) = (200, 400);
    for (k, &theta) in [1.0, 2.0, 3.0].iter().enumerate() {
        let h = h_of_theta(theta, 0.5).unwrap();
        let alt = draws(p, n, h, 50 + k as u64, 3000);
        let clr = rate(&alt, |e| clr_test(e, ALPHA, e.c()).unwrap());
        let john = rate(&alt, |e| john_test(e, ALPHA).unwrap());
        assert!(ALPHA < clr + 0.03 && clr <= john + 0.03, "theta {theta}: {clr} {john}");
    }
}
