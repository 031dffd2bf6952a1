mod common;

use common::*;
use proptest::prelude::*;
use sphertest_core::asymptotics::*;
use sphertest_core::contour::{log_lr_exact, LrKind};
use sphertest_core::mp_law::saddle_location;
use sphertest_core::sampler::{delta_p, sample_eigs_with, EigenSample, Sampler, SpikedModel};
use sphertest_core::Error;

fn null_draws(p: usize, n: usize, seed: u64, reps: u64) -> Vec<EigenSample> {
    let model = SpikedModel::null(p, n).unwrap().with_seed(seed);
    (0..reps).map(|r| sample_eigs_with(&model, r, Sampler::Bidiagonal).unwrap()).collect()
}

#[test]
fn hand_evaluated_covariance() {
    let t = theta_of_h(0.5, 1.0).unwrap();
    let law = gp_law(LrKind::Lambda, 1.0, &[t, 2.0 * t]).unwrap();
    assert!((law.cov[(0, 0)] - 0.143841).abs() < 1e-6, "{}", law.cov[(0, 0)]);
    assert!((law.cov[(0, 0)] + 0.5 * 0.75f64.ln()).abs() < 1e-14);
}

#[test]
fn zero_theta_is_degenerate() {
    for kind in [LrKind::Lambda, LrKind::Mu] {
        let law = gp_law(kind, 0.5, &[0.0, 0.5, 1.5, 4.0]).unwrap();
        assert_eq!(law.mean[0], 0.0);
        for j in 0..4 {
            assert_eq!(law.cov[(0, j)], 0.0);
            assert_eq!(law.cov[(j, 0)], 0.0);
        }
    }
}

#[test]
fn valid_lr_identity_and_psd() {
    let grid: Vec<f64> = (0..300).map(|i| 6.0 * i as f64 / 299.0).collect();
    for kind in [LrKind::Lambda, LrKind::Mu] {
        let law = gp_law(kind, 0.8, &grid).unwrap();
        for j in 0..grid.len() {
            assert!((law.mean[j] + 0.5 * law.cov[(j, j)]).abs() < 1e-12);
        }
        assert_eq!(law.cov, law.cov.transpose());
        let eig = law.cov.clone().symmetric_eigenvalues();
        assert!(eig.min() > -1e-8, "{kind}: {}", eig.min());
    }
}

#[test]
fn theta_map_edges() {
    assert_eq!(theta_of_h(0.0, 0.3).unwrap(), 0.0);
    assert_eq!(h_of_theta(0.0, 0.3).unwrap(), 0.0);
    for &c in &[0.2f64, 1.0, 3.0] {
        // -ln(1 - 0.999^2) = 6.2151
        let t = theta_of_h(0.999 * c.sqrt(), c).unwrap();
        assert!((t - 6.2151f64.sqrt()).abs() < 1e-4, "{t}");
        assert!(matches!(theta_of_h(c.sqrt(), c), Err(Error::OutOfRegime { .. })));
        assert!(matches!(theta_of_h(2.0 * c.sqrt(), c), Err(Error::OutOfRegime { .. })));
    }
    let tp = ThetaParam::from_h(0.5, 1.0).unwrap();
    assert!((tp.psi() - 0.25).abs() < 1e-15);
}

#[test]
fn lecam_shift_adds_covariance_column() {
    let grid = [0.0, 0.4, 1.0, 1.7, 3.0];
    for kind in [LrKind::Lambda, LrKind::Mu] {
        let law = gp_law(kind, 0.5, &grid).unwrap();
        assert_eq!(lecam_shift(&law, 0.0).unwrap(), law);
        let shifted = lecam_shift(&law, grid[3]).unwrap();
        assert_eq!(shifted.cov, law.cov);
        for j in 0..grid.len() {
            assert!((shifted.mean[j] - law.mean[j] - law.cov[(j, 3)]).abs() < 1e-15);
        }
        let off = lecam_shift(&law, 1.234).unwrap();
        assert!((off.mean[2] - law.mean[2] - kernel(kind, 1.0, 1.234).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn asymptotic_lr_vanishes_with_spike() {
    let eigs = &null_draws(60, 90, 3, 1)[0];
    for kind in [LrKind::Lambda, LrKind::Mu] {
        let v = log_lr_asym(eigs, 1e-8, kind).unwrap();
        assert!(v.abs() < 1e-6, "{kind}: {v}");
    }
}

#[test]
fn asymptotic_lr_guards() {
    let eigs = &null_draws(50, 100, 4, 1)[0];
    let c: f64 = 0.5;
    assert!(matches!(
        log_lr_asym(eigs, c.sqrt(), LrKind::Lambda),
        Err(Error::OutOfRegime { .. })
    ));
    // a planted outlier beyond the saddle point
    let h = 0.3;
    let mut lam = eigs.lambda.clone();
    lam[0] = saddle_location(h, c) + 1.0;
    let bad = EigenSample::from_eigenvalues(lam, 50, 100).unwrap();
    assert!(matches!(
        log_lr_asym(&bad, h, LrKind::Mu),
        Err(Error::SaddleCollision { .. })
    ));
}

#[test]
fn null_moments_of_mu_kind() {
    let (c, h) = (0.5, 0.4);
    let r: f64 = h * h / c;
    // the O(1/n) bias of the variance is still a few percent at p = 400
    let draws = null_draws(800, 1600, 31, 2000);
    let xs: Vec<f64> = draws.iter().map(|e| log_lr_asym(e, h, LrKind::Mu).unwrap()).collect();
    let mean_target = 0.25 * ((1.0 - r).ln() + r);
    let var_target = -0.5 * ((1.0 - r).ln() + r);
    assert!((mean(&xs) - mean_target).abs() < 3.0 * std_err(&xs), "{} vs {mean_target}", mean(&xs));
    assert!((var(&xs) / var_target - 1.0).abs() < 0.1, "{} vs {var_target}", var(&xs));
    assert!((mean_target + 0.5 * var_target).abs() < 1e-15);
}

#[test]
fn trace_and_log_spectrum_moments() {
    let (p, n) = (400, 800);
    let c = 0.5;
    let all = null_draws(p, n, 77, 5000);
    // z0(0.5) = 3 sits just past the bulk edge 2.914, and a few draws reach it
    let draws: Vec<&EigenSample> = all.iter().filter(|e| e.largest() < saddle_location(0.5, c)).collect();
    assert!(draws.len() > 4950, "{} collisions", all.len() - draws.len());
    let s: Vec<f64> = draws.iter().map(|e| e.trace - p as f64).collect();
    assert!((var(&s) / (2.0 * c) - 1.0).abs() < 0.1, "{}", var(&s));
    for &h in &[0.2, 0.5] {
        let z0 = saddle_location(h, c);
        let d: Vec<f64> = draws.iter().map(|e| delta_p(e, z0).unwrap()).collect();
        let prod: Vec<f64> = s.iter().zip(&d).map(|(a, b)| (a - mean(&s)) * (b - mean(&d))).collect();
        let se = std_err(&prod);
        assert!((cov(&s, &d) + 2.0 * h).abs() < 3.0 * se, "h = {h}: {} (se {se})", cov(&s, &d));
    }
}

#[test]
fn exact_and_asymptotic_lr_converge() {
    let (c, h) = (0.5, 0.3);
    let medians: Vec<f64> = [100usize, 200, 400]
        .iter()
        .map(|&n| {
            let p = (c * n as f64) as usize;
            let gaps: Vec<f64> = null_draws(p, n, 1000 + n as u64, 50)
                .iter()
                .map(|e| {
                    (log_lr_exact(e, h, LrKind::Mu).unwrap().value - log_lr_asym(e, h, LrKind::Mu).unwrap())
                        .abs()
                })
                .collect();
            median(&gaps)
        })
        .collect();
    assert!(medians[0] > medians[1] && medians[1] > medians[2], "{medians:?}");
}

#[test]
fn supercritical_decay() {
    let probe = lr_decay_probe(1.0, 2.0, &[50, 100, 200], 50, 5).unwrap();
    let m: Vec<f64> = probe.rows.iter().map(|r| r.median).collect();
    assert!(m[0] > m[1] && m[1] > m[2], "{m:?}");
    assert!(probe.slope < -0.01, "{}", probe.slope);
    assert!(matches!(
        lr_decay_probe(1.0, 1.0, &[50], 5, 5),
        Err(Error::OutOfRegime { .. })
    ));
}

proptest! {
    #[test]
    fn theta_round_trip(t in 0.0f64..3.0, c in 0.05f64..4.0) {
        let h = h_of_theta(t, c).unwrap();
        prop_assert!((theta_of_h(h, c).unwrap() - t).abs() < 1e-12);
    }

    #[test]
    fn h_round_trip(u in 0.0f64..0.99, c in 0.05f64..4.0) {
        let h = u * c.sqrt();
        let t = theta_of_h(h, c).unwrap();
        prop_assert!((h_of_theta(t, c).unwrap() - h).abs() < 1e-12);
    }

    #[test]
    fn covariance_is_psd(mut grid in proptest::collection::vec(0.0f64..6.0, 1..40)) {
        grid.sort_by(f64::total_cmp);
        for kind in [LrKind::Lambda, LrKind::Mu] {
            let law = gp_law(kind, 1.0, &grid).unwrap();
            let sym = (&law.cov + law.cov.transpose()) * 0.5;
            prop_assert!(sym.symmetric_eigenvalues().min() > -1e-8);
        }
    }
}
