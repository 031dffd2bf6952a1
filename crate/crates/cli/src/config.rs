use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use sphertest_core::asymptotics::theta_of_h;
use sphertest_core::classical::TestName;
use sphertest_core::power::{Functional, GridSpec};
use sphertest_core::{LrKind, Sampler};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Desk,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// Binary eigenvalue records (simulate only).
    Spk1,
}

fn parse_kind(s: &str) -> Result<LrKind, String> {
    s.parse().map_err(|e: sphertest_core::Error| e.to_string())
}

fn parse_functional(s: &str) -> Result<Functional, String> {
    match s {
        "sup" => Ok(Functional::Sup),
        "wap" => Ok(Functional::Wap),
        _ => Err(format!("unknown functional {s:?} (expected sup or wap)")),
    }
}

fn parse_sampler(s: &str) -> Result<Sampler, String> {
    match s {
        "dense" => Ok(Sampler::Dense),
        "bidiagonal" => Ok(Sampler::Bidiagonal),
        _ => Err(format!("unknown sampler {s:?} (expected dense or bidiagonal)")),
    }
}

/// Run settings. Every field can come from a flag or from the JSON file
/// named by `--config`; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// JSON file with default settings.
    #[arg(long, global = true, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Verb the file was written for; checked against the one invoked.
    #[arg(skip)]
    pub command: Option<String>,

    /// Dimension ratio p / n.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub p: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Local alternative in the theta parametrization.
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// Spike norm (alternative to --theta).
    #[arg(long, global = true)]
    pub h: Option<f64>,
    /// Process grid on [0, M], written M:points.
    #[arg(long, global = true, value_name = "M:POINTS")]
    pub grid: Option<String>,
    /// Grid of alternatives for power curves, written M:points.
    #[arg(long, global = true, value_name = "M:POINTS")]
    pub curve: Option<String>,
    #[arg(long, global = true)]
    pub reps: Option<u64>,
    /// Replications for exact critical values inside `test`.
    #[arg(long, global = true)]
    pub crit_reps: Option<u64>,
    #[arg(long, global = true)]
    pub draws: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub scale: Option<Scale>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_parser = parse_kind)]
    pub kind: Option<LrKind>,
    #[arg(long, global = true, value_parser = parse_functional)]
    pub functional: Option<Functional>,
    /// Comma-separated subset of john, lw, clr, tw_lambda, tw_mu, lr_sup, wap.
    #[arg(long, global = true, value_delimiter = ',')]
    pub tests: Option<Vec<String>>,
    #[arg(long, global = true, value_parser = parse_sampler)]
    pub sampler: Option<Sampler>,
    #[arg(long, global = true)]
    pub sigma2: Option<f64>,
    /// Comma-separated sample sizes for the decay probe.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    /// Eigenvalue file (SPK1 binary or one value per line).
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

macro_rules! prefer {
    ($a:ident, $b:ident; $($f:ident),*) => {
        RunConfig {
            config: $a.config,
            $($f: $a.$f.or($b.$f),)*
        }
    };
}

impl RunConfig {
    /// Fills unset fields from `file`.
    pub fn over(self, file: RunConfig) -> RunConfig {
        prefer!(self, file; command, c, p, n, alpha, theta, h, grid, curve, reps, crit_reps, draws, seed,
            threads, scale, out, format, kind, functional, tests, sampler, sigma2, n_list, input)
    }

    pub fn scale(&self) -> Scale {
        self.scale.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    pub fn alpha(&self) -> Result<f64, CliError> {
        let a = self.alpha.unwrap_or(0.05);
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::Config(format!("alpha must lie in (0, 1), got {a}")));
        }
        Ok(a)
    }

    pub fn grid_or(&self, default: &str) -> Result<GridSpec, CliError> {
        parse_grid(self.grid.as_deref().unwrap_or(default), "grid")
    }

    pub fn curve_or(&self, default: &str) -> Result<GridSpec, CliError> {
        parse_grid(self.curve.as_deref().unwrap_or(default), "curve")
    }

    /// Positive dimension ratio; `p / n` when both are given.
    pub fn ratio(&self) -> Result<f64, CliError> {
        let c = match (self.p, self.n) {
            (Some(p), Some(n)) => {
                let c = p as f64 / n.max(1) as f64;
                if let Some(given) = self.c {
                    if (given - c).abs() > 1e-9 * c {
                        return Err(CliError::Config(format!("--c {given} contradicts p / n = {c}")));
                    }
                }
                c
            }
            _ => self.c.unwrap_or(0.5),
        };
        if !(c.is_finite() && c > 0.0) {
            return Err(CliError::Config(format!("c must be positive, got {c}")));
        }
        Ok(c)
    }

    /// `(p, n)`, completing a missing dimension from `c`. With neither given
    /// `n` defaults to 200.
    pub fn dims(&self) -> Result<(usize, usize), CliError> {
        let c = self.ratio()?;
        let (p, n) = match (self.p, self.n) {
            (Some(p), Some(n)) => (p, n),
            (None, Some(n)) => ((c * n as f64).round() as usize, n),
            (Some(p), None) => (p, (p as f64 / c).round() as usize),
            (None, None) => ((c * 200.0).round() as usize, 200),
        };
        if p == 0 || n == 0 {
            return Err(CliError::Config(format!("dimensions must be positive, got p = {p}, n = {n}")));
        }
        Ok((p, n))
    }

    /// The local alternative in theta units, from `--theta` or `--h`.
    pub fn theta_opt(&self, c: f64) -> Result<Option<f64>, CliError> {
        match (self.theta, self.h) {
            (Some(_), Some(_)) => Err(CliError::Config("give --theta or --h, not both".into())),
            (Some(t), None) if !(t.is_finite() && t >= 0.0) => {
                Err(CliError::Config(format!("theta must be finite and nonnegative, got {t}")))
            }
            (Some(t), None) => Ok(Some(t)),
            (None, Some(h)) => Ok(Some(theta_of_h(h, c)?)),
            (None, None) => Ok(None),
        }
    }

    pub fn tests(&self, default: &[TestName]) -> Result<Vec<TestName>, CliError> {
        match &self.tests {
            None => Ok(default.to_vec()),
            Some(names) => names
                .iter()
                .map(|s| s.trim().parse::<TestName>().map_err(CliError::from))
                .collect(),
        }
    }
}

fn parse_grid(s: &str, what: &str) -> Result<GridSpec, CliError> {
    s.parse()
        .map_err(|e: sphertest_core::Error| CliError::Config(format!("--{what}: {e}")))
}
