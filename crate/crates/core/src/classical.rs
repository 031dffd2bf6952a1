//! Sphericity tests built from linear spectral statistics and from the
//! largest eigenvalue.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::error::{domain, Error, Result};
use crate::sampler::EigenSample;
use crate::tw1_table::{TW1_CDF, TW1_HI, TW1_LO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestName {
    #[serde(rename = "john")]
    John,
    #[serde(rename = "lw")]
    LedoitWolf,
    #[serde(rename = "clr")]
    Clr,
    #[serde(rename = "tw_lambda")]
    TracyWidomLambda,
    #[serde(rename = "tw_mu")]
    TracyWidomMu,
    #[serde(rename = "lr_sup")]
    LrSup,
    #[serde(rename = "wap")]
    Wap,
}

impl TestName {
    pub const ALL: [TestName; 7] = [
        TestName::John,
        TestName::LedoitWolf,
        TestName::Clr,
        TestName::TracyWidomLambda,
        TestName::TracyWidomMu,
        TestName::LrSup,
        TestName::Wap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TestName::John => "john",
            TestName::LedoitWolf => "lw",
            TestName::Clr => "clr",
            TestName::TracyWidomLambda => "tw_lambda",
            TestName::TracyWidomMu => "tw_mu",
            TestName::LrSup => "lr_sup",
            TestName::Wap => "wap",
        }
    }
}

impl std::fmt::Display for TestName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TestName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = match s {
            "john" => TestName::John,
            "lw" | "ledoit_wolf" => TestName::LedoitWolf,
            "clr" => TestName::Clr,
            "tw_lambda" | "tw" => TestName::TracyWidomLambda,
            "tw_mu" => TestName::TracyWidomMu,
            "lr_sup" => TestName::LrSup,
            "wap" => TestName::Wap,
            _ => return Err(domain(format!("unknown test {s:?}"))),
        };
        Ok(t)
    }
}

/// Outcome of one test on one sample. Serializes to a flat JSON object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test: TestName,
    pub stat: f64,
    pub crit: f64,
    pub alpha: f64,
    pub reject: bool,
    pub p: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reps: Option<u64>,
}

impl TestReport {
    pub fn new(test: TestName, stat: f64, crit: f64, alpha: f64, p: usize, n: usize) -> Self {
        Self {
            test,
            stat,
            crit,
            alpha,
            reject: stat > crit,
            p,
            n,
            seed: None,
            reps: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_reps(mut self, reps: u64) -> Self {
        self.reps = Some(reps);
        self
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

fn std_normal() -> Normal {
    Normal::standard()
}

/// `Phi^{-1}(q)`, polished by Newton steps on the tail that `q` lies in.
pub fn normal_quantile(q: f64) -> f64 {
    let nd = std_normal();
    let mut x = nd.inverse_cdf(q);
    if !x.is_finite() {
        return x;
    }
    for _ in 0..2 {
        let pdf = nd.pdf(x);
        if pdf == 0.0 {
            break;
        }
        x += if q > 0.5 {
            (nd.sf(x) - (1.0 - q)) / pdf
        } else {
            (q - nd.cdf(x)) / pdf
        };
    }
    x
}

/// `Phi(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    std_normal().cdf(x)
}

/// `1 - Phi(x)`, accurate in the upper tail.
pub fn normal_sf(x: f64) -> f64 {
    std_normal().sf(x)
}

fn nonzero_trace(eigs: &EigenSample) -> Result<f64> {
    if !(eigs.trace > 0.0) {
        return Err(Error::Degenerate("sample covariance has zero trace".into()));
    }
    Ok(eigs.trace)
}

/// John's test, based on `U = (1/p) sum (lambda_j / mean(lambda) - 1)^2`.
pub fn john_test(eigs: &EigenSample, alpha: f64) -> Result<TestReport> {
    check_alpha(alpha)?;
    let s = nonzero_trace(eigs)?;
    let (p, n) = (eigs.p as f64, eigs.n as f64);
    let lbar = s / p;
    let stored: f64 = eigs.lambda.iter().map(|l| (l / lbar - 1.0).powi(2)).sum();
    let u = (stored + eigs.implicit_zeros() as f64) / p;
    let stat = 0.5 * (n * u - p - 1.0);
    Ok(TestReport::new(TestName::John, stat, normal_quantile(1.0 - alpha), alpha, eigs.p, eigs.n))
}

/// Ledoit and Wolf's test of `Sigma = I`.
pub fn ledoit_wolf_test(eigs: &EigenSample, alpha: f64) -> Result<TestReport> {
    check_alpha(alpha)?;
    nonzero_trace(eigs)?;
    let (p, n) = (eigs.p as f64, eigs.n as f64);
    let stored: f64 = eigs.lambda.iter().map(|l| (l - 1.0).powi(2)).sum();
    let sq = stored + eigs.implicit_zeros() as f64;
    let c = p / n;
    let w = sq / p - c * (eigs.trace / p).powi(2) + c;
    let stat = 0.5 * (n * w - p - 1.0);
    Ok(TestReport::new(
        TestName::LedoitWolf,
        stat,
        normal_quantile(1.0 - alpha),
        alpha,
        eigs.p,
        eigs.n,
    ))
}

/// Corrected likelihood ratio statistic
/// `S - sum ln(lambda_j) - p - p (1 - (1 - n/p) ln(1 - p/n))`.
pub fn clr_statistic(eigs: &EigenSample) -> Result<f64> {
    let (p, n) = (eigs.p, eigs.n);
    if p >= n {
        return Err(Error::Inapplicable(format!(
            "corrected LR test needs p < n, got p = {p}, n = {n}"
        )));
    }
    if eigs.implicit_zeros() > 0 || eigs.lambda.iter().any(|&l| l <= 0.0) {
        return Err(domain("corrected LR test needs strictly positive eigenvalues"));
    }
    let (pf, nf) = (p as f64, n as f64);
    let log_det: f64 = eigs.lambda.iter().map(|l| l.ln()).sum();
    let correction = pf * (1.0 - (1.0 - nf / pf) * (-pf / nf).ln_1p());
    Ok(eigs.trace - log_det - pf - correction)
}

/// The corrected likelihood ratio test; `c` is the dimension ratio used for
/// the null centering and scale, normally `p / n`.
pub fn clr_test(eigs: &EigenSample, alpha: f64, c: f64) -> Result<TestReport> {
    check_alpha(alpha)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Inapplicable(format!("corrected LR test needs c in (0, 1), got {c}")));
    }
    let clr = clr_statistic(eigs)?;
    let l = (-c).ln_1p();
    let stat = clr + 0.5 * l;
    let crit = (-2.0 * l - 2.0 * c).sqrt() * normal_quantile(1.0 - alpha);
    Ok(TestReport::new(TestName::Clr, stat, crit, alpha, eigs.p, eigs.n))
}

/// Which largest-eigenvalue statistic to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwKind {
    Lambda,
    Mu,
}

/// Centered and scaled largest eigenvalue. The mu variant replaces
/// `lambda_1` with `lambda_1 / (S / p)`.
pub fn tracy_widom_statistic(eigs: &EigenSample, kind: TwKind) -> Result<f64> {
    let c = eigs.c();
    let sc = c.sqrt();
    let top = match kind {
        TwKind::Lambda => eigs.largest(),
        TwKind::Mu => eigs.largest() / (nonzero_trace(eigs)? / eigs.p as f64),
    };
    let n = eigs.n as f64;
    Ok(n.powf(2.0 / 3.0) * c.powf(1.0 / 6.0) * (1.0 + sc).powf(-4.0 / 3.0) * (top - (1.0 + sc).powi(2)))
}

pub fn tracy_widom_test(eigs: &EigenSample, alpha: f64, kind: TwKind) -> Result<TestReport> {
    check_alpha(alpha)?;
    let stat = tracy_widom_statistic(eigs, kind)?;
    let name = match kind {
        TwKind::Lambda => TestName::TracyWidomLambda,
        TwKind::Mu => TestName::TracyWidomMu,
    };
    Ok(TestReport::new(name, stat, tw1_quantile(1.0 - alpha)?, alpha, eigs.p, eigs.n))
}

fn tw1_slopes() -> &'static [f64] {
    static SLOPES: OnceLock<Vec<f64>> = OnceLock::new();
    SLOPES.get_or_init(|| {
        // Fritsch-Carlson monotone slopes
        let m = TW1_CDF.len();
        let dx = (TW1_HI - TW1_LO) / (m - 1) as f64;
        let delta: Vec<f64> = TW1_CDF.windows(2).map(|w| (w[1] - w[0]) / dx).collect();
        let mut d = vec![0.0; m];
        d[0] = delta[0];
        d[m - 1] = delta[m - 2];
        for i in 1..m - 1 {
            let (a, b) = (delta[i - 1], delta[i]);
            d[i] = if a * b <= 0.0 { 0.0 } else { 2.0 * a * b / (a + b) };
        }
        d
    })
}

/// Tracy–Widom (first kind) distribution function, interpolated from an
/// embedded table on `[-10, 10]`.
pub fn tw1_cdf(x: f64) -> f64 {
    if x <= TW1_LO {
        return 0.0;
    }
    if x >= TW1_HI {
        return 1.0;
    }
    let m = TW1_CDF.len();
    let dx = (TW1_HI - TW1_LO) / (m - 1) as f64;
    let i = (((x - TW1_LO) / dx) as usize).min(m - 2);
    let t = (x - TW1_LO - i as f64 * dx) / dx;
    let d = tw1_slopes();
    let (y0, y1) = (TW1_CDF[i], TW1_CDF[i + 1]);
    let h00 = (1.0 + 2.0 * t) * (1.0 - t).powi(2);
    let h10 = t * (1.0 - t).powi(2);
    let h01 = t * t * (3.0 - 2.0 * t);
    let h11 = t * t * (t - 1.0);
    h00 * y0 + h10 * dx * d[i] + h01 * y1 + h11 * dx * d[i + 1]
}

/// Inverse of [`tw1_cdf`].
pub fn tw1_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("quantile level must lie in (0, 1), got {q}")));
    }
    let (mut lo, mut hi) = (TW1_LO, TW1_HI);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if tw1_cdf(mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
