//! Asymptotic and finite-sample power of the sphericity tests.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{gp_law, h_of_theta, kernel, GaussianProcessLaw};
use crate::classical::{
    check_alpha, clr_test, john_test, ledoit_wolf_test, normal_quantile, normal_sf, tracy_widom_test, TestName,
    TestReport, TwKind,
};
use crate::contour::{log_lr_exact, LrKind};
use crate::error::{domain, Error, Result};
use crate::rng::{derive_seed, replicate, stream};
use crate::sampler::{sample_eigs_with, EigenSample, Sampler, SpikedModel};

/// Draws per task in the Gaussian-process simulation.
const BATCH: usize = 2048;
const JITTER_START: f64 = 1e-10;
const JITTER_MAX: f64 = 1e-6;
/// Largest tolerated share of replications lost to contour failures.
const MAX_FAILURE_RATE: f64 = 0.01;

/// Equally spaced grid of `points` values on `[0, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(max: f64, points: usize) -> Result<Self> {
        if !(max.is_finite() && max >= 0.0) {
            return Err(domain(format!("grid end must be finite and nonnegative, got {max}")));
        }
        if points == 0 || (points == 1 && max != 0.0) {
            return Err(domain(format!("a grid on [0, {max}] needs at least two points")));
        }
        Ok(Self { max, points })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![0.0];
        }
        let step = self.max / (self.points - 1) as f64;
        (0..self.points).map(|i| i as f64 * step).collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.max, self.points)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = Error;
    /// Parses `M:points`.
    fn from_str(s: &str) -> Result<Self> {
        let (m, k) = s
            .split_once(':')
            .ok_or_else(|| domain(format!("grid {s:?} is not of the form M:points")))?;
        let max = m.trim().parse().map_err(|_| domain(format!("bad grid end {m:?}")))?;
        let points = k.trim().parse().map_err(|_| domain(format!("bad grid size {k:?}")))?;
        GridSpec::new(max, points)
    }
}

/// How a log likelihood ratio process is reduced to a test statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Functional {
    /// `2 max_theta X_theta`
    Sup,
    /// `ln` of the grid average of `exp(X_theta)`, a uniform weight on `[0, M]`.
    Wap,
}

impl Functional {
    fn apply(self, values: impl Iterator<Item = f64> + Clone) -> f64 {
        match self {
            Functional::Sup => 2.0 * values.fold(f64::NEG_INFINITY, f64::max),
            Functional::Wap => {
                let m = values.clone().fold(f64::NEG_INFINITY, f64::max);
                let (mut s, mut k) = (0.0, 0usize);
                for v in values {
                    s += (v - m).exp();
                    k += 1;
                }
                m + (s / k as f64).ln()
            }
        }
    }
}

/// Upper-type empirical quantile: the order statistic at `ceil(level * len)`.
pub fn upper_quantile(sorted: &[f64], level: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(domain("quantile of an empty sample"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!("quantile level must lie in (0, 1), got {level}")));
    }
    let k = ((level * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Ok(sorted[k - 1])
}

/// Bootstrap standard error of [`upper_quantile`].
pub fn quantile_bootstrap_se(sorted: &[f64], level: f64, resamples: u64, seed: u64) -> Result<f64> {
    upper_quantile(sorted, level)?;
    if resamples < 2 {
        return Err(domain("bootstrap needs at least two resamples"));
    }
    let m = sorted.len();
    let k = ((level * m as f64).ceil() as usize).clamp(1, m);
    let qs = replicate(resamples, |b| {
        // a resample's order statistic only needs the multiplicity of each index
        let mut rng = stream(seed, b);
        let mut counts = vec![0u32; m];
        for _ in 0..m {
            counts[rng.random_range(0..m)] += 1;
        }
        let mut seen = 0usize;
        for (i, &c) in counts.iter().enumerate() {
            seen += c as usize;
            if seen >= k {
                return sorted[i];
            }
        }
        sorted[m - 1]
    });
    let mean = qs.iter().sum::<f64>() / qs.len() as f64;
    Ok((qs.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / (qs.len() - 1) as f64).sqrt())
}

/// Asymptotic power envelope at the local alternative `theta1`.
pub fn envelope(theta1: f64, alpha: f64, kind: LrKind) -> Result<f64> {
    check_alpha(alpha)?;
    check_theta1(theta1)?;
    if theta1 == 0.0 {
        return Ok(alpha);
    }
    let shift = match kind {
        LrKind::Lambda => theta1 / std::f64::consts::SQRT_2,
        LrKind::Mu => {
            let t2 = theta1 * theta1;
            // t2 - (1 - exp(-t2)), accurate for small t2
            let gap = t2 + (-t2).exp_m1();
            (0.5 * gap.max(0.0)).sqrt()
        }
    };
    Ok(normal_sf(normal_quantile(1.0 - alpha) - shift))
}

fn check_theta1(theta1: f64) -> Result<()> {
    if !(theta1.is_finite() && theta1 >= 0.0) {
        return Err(domain(format!("theta1 must be finite and nonnegative, got {theta1}")));
    }
    Ok(())
}

/// Asymptotic power of a classical test at `theta1`. The corrected LR test
/// also needs the dimension ratio `c` in `(0, 1)`.
pub fn classical_power(theta1: f64, alpha: f64, test: TestName, c: Option<f64>) -> Result<f64> {
    check_alpha(alpha)?;
    check_theta1(theta1)?;
    if let (TestName::Clr, Some(c)) = (test, c) {
        if !(c > 0.0 && c < 1.0) {
            return Err(domain(format!("corrected LR power needs c in (0, 1), got {c}")));
        }
    }
    if theta1 == 0.0 && !matches!(test, TestName::LrSup | TestName::Wap) {
        return Ok(alpha);
    }
    let psi = -(-theta1 * theta1).exp_m1();
    let z = normal_quantile(1.0 - alpha);
    match test {
        TestName::TracyWidomLambda | TestName::TracyWidomMu => Ok(alpha),
        TestName::John | TestName::LedoitWolf => Ok(normal_sf(z - 0.5 * psi)),
        TestName::Clr => {
            let c = c.ok_or_else(|| domain("corrected LR power needs c"))?;
            if !(c > 0.0 && c < 1.0) {
                return Err(domain(format!("corrected LR power needs c in (0, 1), got {c}")));
            }
            let s = (c * psi).sqrt();
            // s - ln(1 + s) and -2 ln(1 - c) - 2c, both without cancellation
            let num = s - s.ln_1p();
            let var = -2.0 * ((-c).ln_1p() + c);
            Ok(normal_sf(z - num / var.sqrt()))
        }
        TestName::LrSup | TestName::Wap => Err(Error::Inapplicable(format!(
            "{test} has no closed-form power; simulate it"
        ))),
    }
}

/// A power function on a grid of local alternatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    pub theta_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub label: String,
    pub alpha: f64,
    pub c: Option<f64>,
}

impl PowerCurve {
    pub fn from_fn(
        theta_grid: &[f64],
        label: impl Into<String>,
        alpha: f64,
        c: Option<f64>,
        f: impl Fn(f64) -> Result<f64>,
    ) -> Result<Self> {
        Ok(Self {
            theta_grid: theta_grid.to_vec(),
            values: theta_grid.iter().map(|&t| f(t)).collect::<Result<_>>()?,
            label: label.into(),
            alpha,
            c,
        })
    }
}

/// Simulated values of a functional of the limiting process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupDistribution {
    /// Sorted ascending.
    pub samples: Vec<f64>,
    pub grid: GridSpec,
    pub draws: usize,
    pub kind: LrKind,
    pub functional: Functional,
    pub seed: u64,
    pub shift_theta1: Option<f64>,
}

impl SupDistribution {
    pub fn quantile(&self, level: f64) -> Result<f64> {
        upper_quantile(&self.samples, level)
    }

    /// Share of samples strictly above `x`.
    pub fn exceedance(&self, x: f64) -> f64 {
        let below = self.samples.partition_point(|&s| s <= x);
        (self.samples.len() - below) as f64 / self.samples.len() as f64
    }
}

/// Draws of the limiting process on a fixed grid. Grid points at `theta = 0`
/// carry the constant zero; the rest are drawn through a Cholesky factor.
pub struct GpSimulator {
    law: GaussianProcessLaw,
    active: Vec<usize>,
    factor: DMatrix<f64>,
    /// Diagonal loading that made the factorization succeed.
    pub jitter: f64,
}

impl GpSimulator {
    pub fn new(kind: LrKind, grid: &[f64]) -> Result<Self> {
        Self::with_jitter(kind, grid, JITTER_START)
    }

    /// As [`GpSimulator::new`], with the first diagonal loading tried set to
    /// `jitter` (raised tenfold on failure up to `1e-6`).
    pub fn with_jitter(kind: LrKind, grid: &[f64], jitter: f64) -> Result<Self> {
        if !(jitter > 0.0 && jitter <= JITTER_MAX) {
            return Err(domain(format!("jitter must lie in (0, {JITTER_MAX}], got {jitter}")));
        }
        if grid.is_empty() {
            return Err(domain("empty theta grid"));
        }
        // the limiting law does not depend on c in the theta parametrization
        let law = gp_law(kind, 1.0, grid)?;
        let active: Vec<usize> = (0..grid.len()).filter(|&i| grid[i] > 0.0).collect();
        let m = active.len();
        let sub = DMatrix::from_fn(m, m, |i, j| law.cov[(active[i], active[j])]);
        let mut jitter = jitter;
        loop {
            let mut loaded = sub.clone();
            for i in 0..m {
                loaded[(i, i)] += jitter;
            }
            if let Some(ch) = loaded.cholesky() {
                return Ok(Self {
                    law,
                    active,
                    factor: ch.l(),
                    jitter,
                });
            }
            jitter *= 10.0;
            if jitter > JITTER_MAX * (1.0 + 1e-9) {
                return Err(Error::Numeric(format!(
                    "covariance on {} grid points is not positive definite even with jitter {JITTER_MAX}",
                    m
                )));
            }
        }
    }

    pub fn law(&self) -> &GaussianProcessLaw {
        &self.law
    }

    /// Mean of the process under the local alternative `theta1` (`None` for the null).
    fn mean_under(&self, theta1: Option<f64>) -> Result<Vec<f64>> {
        let mut mean = self.law.mean.clone();
        if let Some(t1) = theta1 {
            for (m, &t) in mean.iter_mut().zip(&self.law.grid) {
                *m += kernel(self.law.kind, t, t1)?;
            }
        }
        Ok(mean)
    }

    /// Process draws for batch `b`, one per column, over the active points.
    fn batch(&self, b: usize, size: usize, seed: u64) -> DMatrix<f64> {
        let m = self.active.len();
        let mut rng = stream(seed, b as u64);
        let z = DMatrix::<f64>::from_fn(m, size, |_, _| rng.sample(StandardNormal));
        &self.factor * z
    }

    fn statistic(&self, functional: Functional, x: &DMatrix<f64>, j: usize, mean: &[f64]) -> f64 {
        let zeros = std::iter::repeat_n(0.0, self.law.grid.len() - self.active.len());
        let active = self.active.iter().enumerate().map(move |(i, &g)| x[(i, j)] + mean[g]);
        functional.apply(active.chain(zeros))
    }

    /// `draws` values of `functional` under the mean for `shift`, in draw order.
    pub fn sample(&self, functional: Functional, draws: usize, seed: u64, shift: Option<f64>) -> Result<Vec<f64>> {
        let mean = self.mean_under(shift)?;
        let per_batch: Vec<Vec<f64>> = (0..draws.div_ceil(BATCH))
            .into_par_iter()
            .map(|b| {
                let size = BATCH.min(draws - b * BATCH);
                let x = self.batch(b, size, seed);
                (0..size).map(|j| self.statistic(functional, &x, j, &mean)).collect()
            })
            .collect();
        Ok(per_batch.concat())
    }

    /// For each shift, the number of draws whose statistic exceeds `crit`.
    /// Every shift sees the same Gaussian draws.
    fn exceedances(
        &self,
        functional: Functional,
        draws: usize,
        seed: u64,
        shifts: &[Option<f64>],
        crit: f64,
    ) -> Result<Vec<usize>> {
        let means: Vec<Vec<f64>> = shifts.iter().map(|&s| self.mean_under(s)).collect::<Result<_>>()?;
        let per_batch: Vec<Vec<usize>> = (0..draws.div_ceil(BATCH))
            .into_par_iter()
            .map(|b| {
                let size = BATCH.min(draws - b * BATCH);
                let x = self.batch(b, size, seed);
                means
                    .iter()
                    .map(|mean| (0..size).filter(|&j| self.statistic(functional, &x, j, mean) > crit).count())
                    .collect()
            })
            .collect();
        let mut total = vec![0; shifts.len()];
        for counts in per_batch {
            for (t, c) in total.iter_mut().zip(counts) {
                *t += c;
            }
        }
        Ok(total)
    }
}

/// Simulates `draws` values of `2 sup X_theta` over `grid`, under the local
/// alternative `shift_theta1` when given.
pub fn simulate_sup(
    kind: LrKind,
    grid: GridSpec,
    draws: usize,
    seed: u64,
    shift_theta1: Option<f64>,
) -> Result<SupDistribution> {
    simulate_functional(kind, Functional::Sup, grid, draws, seed, shift_theta1)
}

pub fn simulate_functional(
    kind: LrKind,
    functional: Functional,
    grid: GridSpec,
    draws: usize,
    seed: u64,
    shift_theta1: Option<f64>,
) -> Result<SupDistribution> {
    if draws == 0 {
        return Err(domain("at least one draw is needed"));
    }
    if let Some(t) = shift_theta1 {
        check_theta1(t)?;
    }
    let sim = GpSimulator::new(kind, &grid.values())?;
    let mut samples = sim.sample(functional, draws, seed, shift_theta1)?;
    samples.sort_by(f64::total_cmp);
    Ok(SupDistribution {
        samples,
        grid,
        draws,
        kind,
        functional,
        seed,
        shift_theta1,
    })
}

fn process_power_curve(
    kind: LrKind,
    functional: Functional,
    theta1_grid: &[f64],
    alpha: f64,
    grid: GridSpec,
    draws: usize,
    seed: u64,
) -> Result<PowerCurve> {
    check_alpha(alpha)?;
    for &t in theta1_grid {
        check_theta1(t)?;
    }
    if draws == 0 {
        return Err(domain("at least one draw is needed"));
    }
    let sim = GpSimulator::new(kind, &grid.values())?;
    let mut null = sim.sample(functional, draws, seed, None)?;
    null.sort_by(f64::total_cmp);
    let crit = upper_quantile(&null, 1.0 - alpha)?;
    let shifts: Vec<Option<f64>> = theta1_grid.iter().map(|&t| Some(t)).collect();
    let values = sim
        .exceedances(functional, draws, seed, &shifts, crit)?
        .into_iter()
        .map(|k| k as f64 / draws as f64)
        .collect();
    let label = match functional {
        Functional::Sup => format!("lr_{kind}"),
        Functional::Wap => format!("wap_{kind}"),
    };
    Ok(PowerCurve {
        theta_grid: theta1_grid.to_vec(),
        values,
        label,
        alpha,
        c: None,
    })
}

/// Asymptotic power of the likelihood ratio sup test: the null and shifted
/// processes are simulated from the same Gaussian draws.
pub fn lr_power_curve(
    kind: LrKind,
    theta1_grid: &[f64],
    alpha: f64,
    grid: GridSpec,
    draws: usize,
    seed: u64,
) -> Result<PowerCurve> {
    process_power_curve(kind, Functional::Sup, theta1_grid, alpha, grid, draws, seed)
}

/// Asymptotic power of the weighted average power test with uniform weight
/// on `[0, grid.max]`.
pub fn wap_power_curve(
    kind: LrKind,
    theta1_grid: &[f64],
    alpha: f64,
    grid: GridSpec,
    draws: usize,
    seed: u64,
) -> Result<PowerCurve> {
    process_power_curve(kind, Functional::Wap, theta1_grid, alpha, grid, draws, seed)
}

/// `functional` of the exact log likelihood ratio process of one sample on a
/// theta grid.
pub fn exact_lr_statistic(eigs: &EigenSample, kind: LrKind, functional: Functional, grid: &[f64]) -> Result<f64> {
    let c = eigs.c();
    let values = grid
        .iter()
        .map(|&t| {
            if t == 0.0 {
                Ok(0.0)
            } else {
                Ok(log_lr_exact(eigs, h_of_theta(t, c)?, kind)?.value)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(functional.apply(values.into_iter()))
}

/// Monte Carlo null distribution of an exact likelihood ratio statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCritical {
    pub kind: LrKind,
    pub functional: Functional,
    pub p: usize,
    pub n: usize,
    pub grid: GridSpec,
    pub alpha: f64,
    pub critical_value: f64,
    /// Bootstrap standard error of `critical_value`.
    pub standard_error: f64,
    pub reps: u64,
    pub seed: u64,
    pub sigma2: f64,
    /// Replications dropped because a contour evaluation failed.
    pub failures: u64,
    /// Sorted statistics of the successful replications.
    #[serde(skip)]
    pub samples: Vec<f64>,
}

/// Null critical value of the exact sup (or WAP) likelihood ratio test.
///
/// The statistic is pivotal, so `sigma2` only matters for the lambda kind.
#[allow(clippy::too_many_arguments)]
pub fn mc_exact_critical(
    kind: LrKind,
    functional: Functional,
    p: usize,
    n: usize,
    grid: GridSpec,
    reps: u64,
    alpha: f64,
    seed: u64,
    sigma2: f64,
) -> Result<McCritical> {
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(domain("at least one replication is needed"));
    }
    let model = SpikedModel::null(p, n)?.with_sigma2(sigma2)?.with_seed(seed);
    let thetas = grid.values();
    let results = replicate(reps, |r| {
        let eigs = sample_eigs_with(&model, r, Sampler::Bidiagonal)?;
        match exact_lr_statistic(&eigs, kind, functional, &thetas) {
            Ok(v) => Ok(Some(v)),
            Err(Error::Geometry(_) | Error::Numeric(_)) => Ok(None),
            Err(e) => Err(e),
        }
    });
    let mut samples = Vec::with_capacity(reps as usize);
    let mut failures = 0u64;
    for r in results {
        match r? {
            Some(v) => samples.push(v),
            None => failures += 1,
        }
    }
    if failures as f64 > MAX_FAILURE_RATE * reps as f64 {
        return Err(Error::Numeric(format!(
            "{failures} of {reps} replications failed in the contour evaluation"
        )));
    }
    samples.sort_by(f64::total_cmp);
    let critical_value = upper_quantile(&samples, 1.0 - alpha)?;
    let standard_error = if samples.len() > 1 {
        quantile_bootstrap_se(&samples, 1.0 - alpha, 200, derive_seed(seed, 0xB007))?
    } else {
        f64::NAN
    };
    Ok(McCritical {
        kind,
        functional,
        p,
        n,
        grid,
        alpha,
        critical_value,
        standard_error,
        reps,
        seed,
        sigma2,
        failures,
        samples,
    })
}

/// Runs a classical test on one sample.
pub fn run_classical(test: TestName, eigs: &EigenSample, alpha: f64) -> Result<TestReport> {
    match test {
        TestName::John => john_test(eigs, alpha),
        TestName::LedoitWolf => ledoit_wolf_test(eigs, alpha),
        TestName::Clr => clr_test(eigs, alpha, eigs.c()),
        TestName::TracyWidomLambda => tracy_widom_test(eigs, alpha, TwKind::Lambda),
        TestName::TracyWidomMu => tracy_widom_test(eigs, alpha, TwKind::Mu),
        TestName::LrSup | TestName::Wap => Err(Error::Inapplicable(format!(
            "{test} needs a simulated critical value"
        ))),
    }
}

fn alternative_model(theta1: f64, p: usize, n: usize, seed: u64) -> Result<SpikedModel> {
    check_theta1(theta1)?;
    let model = SpikedModel::null(p, n)?;
    let h = h_of_theta(theta1, model.c())?;
    Ok(SpikedModel::new(p, n, h)?.with_seed(seed))
}

/// Rejection rate of a classical test on data from the local alternative
/// `theta1` (spike `h = h_of_theta(theta1, p / n)`).
pub fn empirical_power(
    test: TestName,
    theta1: f64,
    p: usize,
    n: usize,
    reps: u64,
    alpha: f64,
    seed: u64,
) -> Result<f64> {
    check_alpha(alpha)?;
    if reps == 0 {
        return Err(domain("at least one replication is needed"));
    }
    let model = alternative_model(theta1, p, n, seed)?;
    let rejections = replicate(reps, |r| {
        let eigs = sample_eigs_with(&model, r, Sampler::Bidiagonal)?;
        Ok(run_classical(test, &eigs, alpha)?.reject)
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    Ok(rejections.iter().filter(|&&r| r).count() as f64 / reps as f64)
}

/// Rejection rate of the exact likelihood ratio test with critical value
/// `critical` on data from the local alternative `theta1`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_lr_power(
    kind: LrKind,
    functional: Functional,
    theta1: f64,
    p: usize,
    n: usize,
    grid: GridSpec,
    critical: f64,
    reps: u64,
    seed: u64,
) -> Result<f64> {
    if reps == 0 {
        return Err(domain("at least one replication is needed"));
    }
    let model = alternative_model(theta1, p, n, seed)?;
    let thetas = grid.values();
    let rejections = replicate(reps, |r| {
        let eigs = sample_eigs_with(&model, r, Sampler::Bidiagonal)?;
        Ok(exact_lr_statistic(&eigs, kind, functional, &thetas)? > critical)
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    Ok(rejections.iter().filter(|&&r| r).count() as f64 / reps as f64)
}
