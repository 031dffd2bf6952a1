//! Large-dimensional behaviour of the likelihood ratio processes.
//!
//! Below the phase transition both log likelihood ratios are asymptotically
//! linear in the centered log spectrum and converge to Gaussian processes in
//! `h`. The processes are indexed here by `theta = sqrt(-ln(1 - h^2 / c))`,
//! in which the covariance kernels take the form `k(sqrt(psi_j psi_k))` with
//! `psi = 1 - exp(-theta^2)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::contour::{log_lr_exact, LrKind};
use crate::error::{domain, out_of_regime, Error, Result};
use crate::mp_law::{check_subcritical, saddle_location, DEFAULT_GUARD};
use crate::rng::{derive_seed, replicate};
use crate::sampler::{delta_p, sample_eigs_with, EigenSample, Sampler, SpikedModel};

/// Asymptotic approximation of the log likelihood ratio at a subcritical `h`,
/// with `c = p / n`.
///
/// The mu-kind formula is centered at unit scale: it assumes the data were
/// generated with `sigma2 = 1`.
pub fn log_lr_asym(eigs: &EigenSample, h: f64, kind: LrKind) -> Result<f64> {
    let c = eigs.c();
    check_subcritical(h, c, DEFAULT_GUARD)?;
    let z0 = saddle_location(h, c);
    if z0 <= eigs.largest() {
        return Err(Error::SaddleCollision {
            z0,
            lambda1: eigs.largest(),
        });
    }
    let delta = delta_p(eigs, z0)?;
    let r = h * h / c;
    let base = delta - (-r).ln_1p();
    Ok(match kind {
        LrKind::Lambda => -0.5 * base,
        LrKind::Mu => -0.5 * (base - 0.5 * r + h / c * (eigs.trace - eigs.p as f64)),
    })
}

/// Spike norm and the matching process index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParam {
    pub theta: f64,
    pub h: f64,
    pub c: f64,
}

impl ThetaParam {
    pub fn from_h(h: f64, c: f64) -> Result<Self> {
        Ok(Self {
            theta: theta_of_h(h, c)?,
            h,
            c,
        })
    }

    pub fn from_theta(theta: f64, c: f64) -> Result<Self> {
        Ok(Self {
            theta,
            h: h_of_theta(theta, c)?,
            c,
        })
    }

    /// `1 - exp(-theta^2) = h^2 / c`.
    pub fn psi(&self) -> f64 {
        -(-self.theta * self.theta).exp_m1()
    }
}

fn check_c(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(domain(format!("dimension ratio must be positive, got {c}")));
    }
    Ok(())
}

/// `sqrt(-ln(1 - h^2 / c))` for `0 <= h < sqrt(c)`.
pub fn theta_of_h(h: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    if !(h.is_finite() && h >= 0.0) {
        return Err(domain(format!("spike norm must be nonnegative, got {h}")));
    }
    if h >= c.sqrt() {
        return Err(out_of_regime(h, format!("contiguity requires h < sqrt(c) = {}", c.sqrt())));
    }
    Ok((-(-h * h / c).ln_1p()).sqrt())
}

/// `sqrt(c (1 - exp(-theta^2)))` for `theta >= 0`.
pub fn h_of_theta(theta: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(domain(format!("theta must be finite and nonnegative, got {theta}")));
    }
    Ok((c * -(-theta * theta).exp_m1()).sqrt())
}

/// Limiting Gaussian law of a log likelihood ratio process on a theta grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianProcessLaw {
    pub kind: LrKind,
    pub c: f64,
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    pub cov: DMatrix<f64>,
}

impl GaussianProcessLaw {
    /// Covariance between the process at `a` and at `b`, neither needing to be
    /// on the grid.
    pub fn kernel(&self, a: f64, b: f64) -> Result<f64> {
        kernel(self.kind, a, b)
    }
}

fn check_theta(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(domain(format!("theta must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

/// Closed-form covariance of the limiting process at `theta = a, b`.
pub fn kernel(kind: LrKind, a: f64, b: f64) -> Result<f64> {
    check_theta(a)?;
    check_theta(b)?;
    if a == 0.0 || b == 0.0 {
        return Ok(0.0);
    }
    let (ea, eb) = ((-a * a).exp(), (-b * b).exp());
    let psi_a = -(-a * a).exp_m1();
    let psi_b = -(-b * b).exp_m1();
    let r = (psi_a * psi_b).sqrt();
    // ln(1 - r) written without cancellation: 1 - r = (1 - psi_a psi_b) / (1 + r)
    let ln_gap = if a == b {
        -a * a
    } else {
        let num = ea + eb - ea * eb;
        if num <= 0.0 {
            return Err(domain(format!("theta = {a}, {b} are too large to resolve")));
        }
        num.ln() - r.ln_1p()
    };
    Ok(match kind {
        LrKind::Lambda => -0.5 * ln_gap,
        LrKind::Mu => -0.5 * (ln_gap + r),
    })
}

/// Gaussian law of the limiting process on `grid`.
pub fn gp_law(kind: LrKind, c: f64, grid: &[f64]) -> Result<GaussianProcessLaw> {
    check_c(c)?;
    let m = grid.len();
    let mut cov = DMatrix::zeros(m, m);
    for j in 0..m {
        for k in 0..=j {
            let v = kernel(kind, grid[j], grid[k])?;
            cov[(j, k)] = v;
            cov[(k, j)] = v;
        }
    }
    let mean = (0..m).map(|j| -0.5 * cov[(j, j)]).collect();
    Ok(GaussianProcessLaw {
        kind,
        c,
        grid: grid.to_vec(),
        mean,
        cov,
    })
}

/// The law under the local alternative `theta1`: the mean moves by the
/// covariance with the process at `theta1`.
pub fn lecam_shift(law: &GaussianProcessLaw, theta1: f64) -> Result<GaussianProcessLaw> {
    let mut out = law.clone();
    for (m, &t) in out.mean.iter_mut().zip(&law.grid) {
        *m += law.kernel(t, theta1)?;
    }
    Ok(out)
}

/// Median of the exact mu-kind log likelihood ratio under the null at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub n: usize,
    pub p: usize,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayProbe {
    pub c: f64,
    pub h: f64,
    pub rows: Vec<DecayRow>,
    /// Least-squares slope of the medians against `n`.
    pub slope: f64,
}

/// Simulates null spectra at each `n` (with `p = round(c n)`) and records the
/// median exact mu-kind log likelihood ratio at a supercritical `h`.
pub fn lr_decay_probe(
    c: f64,
    h: f64,
    n_list: &[usize],
    reps: u64,
    seed: u64,
) -> Result<DecayProbe> {
    check_c(c)?;
    let edge = (1.0 + DEFAULT_GUARD) * c.sqrt();
    if !(h.is_finite() && h > edge) {
        return Err(out_of_regime(h, format!("decay probe requires h > {edge}")));
    }
    if reps == 0 || n_list.is_empty() {
        return Err(domain("decay probe needs at least one n and one replication"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = ((c * n as f64).round() as usize).max(1);
        let model = SpikedModel::null(p, n)?.with_seed(derive_seed(seed, n as u64));
        let values = replicate(reps, |r| {
            let eigs = sample_eigs_with(&model, r, Sampler::Bidiagonal)?;
            Ok(log_lr_exact(&eigs, h, LrKind::Mu)?.value)
        })
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
        rows.push(DecayRow {
            n,
            p,
            median: median(values),
        });
    }
    let slope = ls_slope(
        &rows.iter().map(|r| r.n as f64).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.median).collect::<Vec<_>>(),
    );
    Ok(DecayProbe { c, h, rows, slope })
}

pub(crate) fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}
