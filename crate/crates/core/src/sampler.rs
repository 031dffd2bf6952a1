//! Data from the rank-one spiked covariance model and its sample spectrum.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::mp_law::mp_log_potential_real;
use crate::rng::{stream, StreamRng};
use crate::tridiag::tridiagonal_eigenvalues;

/// Columns are i.i.d. `N(0, sigma2 (I + h v v'))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikedModel {
    pub p: usize,
    pub n: usize,
    pub h: f64,
    pub sigma2: f64,
    pub v: Vec<f64>,
    pub seed: u64,
}

impl SpikedModel {
    /// Model with `sigma2 = 1`, `v = e1` and seed 0.
    pub fn new(p: usize, n: usize, h: f64) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(domain(format!("dimensions must be positive, got p = {p}, n = {n}")));
        }
        if !(h.is_finite() && h >= 0.0) {
            return Err(domain(format!("spike norm must be nonnegative, got {h}")));
        }
        let mut v = vec![0.0; p];
        v[0] = 1.0;
        Ok(Self {
            p,
            n,
            h,
            sigma2: 1.0,
            v,
            seed: 0,
        })
    }

    pub fn null(p: usize, n: usize) -> Result<Self> {
        Self::new(p, n, 0.0)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sigma2(mut self, sigma2: f64) -> Result<Self> {
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(domain(format!("sigma2 must be positive, got {sigma2}")));
        }
        self.sigma2 = sigma2;
        Ok(self)
    }

    pub fn with_direction(mut self, v: Vec<f64>) -> Result<Self> {
        if v.len() != self.p {
            return Err(domain(format!("direction has length {}, expected {}", v.len(), self.p)));
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(domain(format!("direction must have unit norm, got {norm}")));
        }
        self.v = v;
        Ok(self)
    }

    pub fn c(&self) -> f64 {
        self.p as f64 / self.n as f64
    }
}

/// How eigenvalues are drawn.
///
/// `Dense` forms the data matrix and the smaller Gram matrix. `Bidiagonal`
/// draws the bidiagonal form of the data matrix directly; its eigenvalues have
/// the same joint law (the law is invariant to the spike direction) at
/// O(min(p, n)^2) cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    #[default]
    Dense,
    Bidiagonal,
}

/// Sorted sample eigenvalues, their sum, and the normalized spectrum.
///
/// Only the first `lambda.len()` eigenvalues are stored; the remaining
/// `p - lambda.len()` are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSample {
    pub p: usize,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub trace: f64,
    /// `lambda_j / trace` for all stored eigenvalues but the last.
    pub mu: Vec<f64>,
}

impl EigenSample {
    /// Builds a sample from eigenvalues in any order. Negative rounding noise
    /// is clamped to zero.
    pub fn from_eigenvalues(mut lambda: Vec<f64>, p: usize, n: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(domain(format!("dimensions must be positive, got p = {p}, n = {n}")));
        }
        if lambda.is_empty() || lambda.len() > p {
            return Err(domain(format!(
                "expected between 1 and p = {p} eigenvalues, got {}",
                lambda.len()
            )));
        }
        let scale = lambda.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for x in lambda.iter_mut() {
            if !x.is_finite() {
                return Err(domain("eigenvalues must be finite"));
            }
            if *x < 0.0 {
                if *x < -1e-10 * scale.max(1.0) {
                    return Err(domain(format!("negative eigenvalue {x}")));
                }
                *x = 0.0;
            }
        }
        lambda.sort_by(|a, b| b.total_cmp(a));
        let trace: f64 = lambda.iter().sum();
        let mu = if trace > 0.0 {
            lambda[..lambda.len() - 1].iter().map(|x| x / trace).collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            p,
            n,
            lambda,
            trace,
            mu,
        })
    }

    pub fn c(&self) -> f64 {
        self.p as f64 / self.n as f64
    }

    pub fn largest(&self) -> f64 {
        self.lambda[0]
    }

    /// Number of eigenvalues not stored (exact zeros).
    pub fn implicit_zeros(&self) -> usize {
        self.p - self.lambda.len()
    }

    /// `lambda_j / (trace / p)`: the spectrum rescaled to unit average.
    pub fn normalized(&self) -> Result<Vec<f64>> {
        if !(self.trace > 0.0) {
            return Err(Error::Degenerate("trace is zero".into()));
        }
        let s = self.p as f64 / self.trace;
        Ok(self.lambda.iter().map(|x| x * s).collect())
    }

    /// Multiplies every eigenvalue by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::from_eigenvalues(self.lambda.iter().map(|x| x * s).collect(), self.p, self.n)
    }
}

/// Draws the spectrum for replication `rep` of `model` with the dense sampler.
pub fn sample_eigs(model: &SpikedModel, rep: u64) -> Result<EigenSample> {
    sample_eigs_with(model, rep, Sampler::Dense)
}

pub fn sample_eigs_with(model: &SpikedModel, rep: u64, sampler: Sampler) -> Result<EigenSample> {
    let mut rng = stream(model.seed, rep);
    let lambda = match sampler {
        Sampler::Dense => dense_eigenvalues(model, &mut rng)?,
        Sampler::Bidiagonal => bidiagonal_eigenvalues(model, &mut rng)?,
    };
    EigenSample::from_eigenvalues(lambda, model.p, model.n)
}

/// Draws the `p x n` data matrix.
pub fn sample_data(model: &SpikedModel, rng: &mut StreamRng) -> DMatrix<f64> {
    let (p, n) = (model.p, model.n);
    let sigma = model.sigma2.sqrt();
    let boost = (1.0 + model.h).sqrt() - 1.0;
    let mut x = DMatrix::<f64>::zeros(p, n);
    for j in 0..n {
        let mut col = x.column_mut(j);
        for i in 0..p {
            col[i] = rng.sample(StandardNormal);
        }
        if boost != 0.0 {
            let proj: f64 = col.iter().zip(&model.v).map(|(a, b)| a * b).sum();
            for i in 0..p {
                col[i] += boost * proj * model.v[i];
            }
        }
        col *= sigma;
    }
    x
}

fn dense_eigenvalues(model: &SpikedModel, rng: &mut StreamRng) -> Result<Vec<f64>> {
    let x = sample_data(model, rng);
    let inv_n = 1.0 / model.n as f64;
    let gram = if model.p <= model.n {
        &x * x.transpose() * inv_n
    } else {
        x.transpose() * &x * inv_n
    };
    let dim = gram.nrows();
    let frob = gram.norm();
    let eig = nalgebra::SymmetricEigen::try_new(gram, f64::EPSILON, 100 * dim.max(10)).ok_or_else(|| {
        Error::Numeric(format!(
            "symmetric eigensolver did not converge on a {dim}x{dim} Gram matrix (Frobenius norm {frob:e})"
        ))
    })?;
    Ok(eig.eigenvalues.iter().copied().collect())
}

fn chi(rng: &mut StreamRng, dof: usize) -> f64 {
    ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .sample(rng)
        .sqrt()
}

fn bidiagonal_eigenvalues(model: &SpikedModel, rng: &mut StreamRng) -> Result<Vec<f64>> {
    let (p, n) = (model.p, model.n);
    let m = p.min(n);
    // Lower bidiagonal B (p x n): B[k][k] ~ chi(n - k), B[k+1][k] ~ chi(p - 1 - k).
    // The spike scales the first row, which holds only B[0][0].
    let mut diag: Vec<f64> = (0..m).map(|k| chi(rng, n - k)).collect();
    let sub_len = if p > n { m } else { m - 1 };
    let sub: Vec<f64> = (0..sub_len).map(|k| chi(rng, p - 1 - k)).collect();
    diag[0] *= (1.0 + model.h).sqrt();

    let scale = model.sigma2 / n as f64;
    let (td, te): (Vec<f64>, Vec<f64>) = if p <= n {
        // B B' restricted to the leading p x p block
        let td = (0..m)
            .map(|k| diag[k] * diag[k] + if k > 0 { sub[k - 1] * sub[k - 1] } else { 0.0 })
            .collect();
        let te = (0..m - 1).map(|k| diag[k] * sub[k]).collect();
        (td, te)
    } else {
        let td = (0..m).map(|k| diag[k] * diag[k] + sub[k] * sub[k]).collect();
        let te = (0..m - 1).map(|k| sub[k] * diag[k + 1]).collect();
        (td, te)
    };
    let td: Vec<f64> = td.into_iter().map(|v: f64| v * scale).collect();
    let te: Vec<f64> = te.into_iter().map(|v: f64| v * scale).collect();
    tridiagonal_eigenvalues(&td, &te)
}

/// `sum_j ln(z - lambda_j) - p int ln(z - x) dF(x)` at real `z > lambda_1`,
/// zero eigenvalues included.
pub fn delta_p(eigs: &EigenSample, z: f64) -> Result<f64> {
    check_right_of_spectrum(eigs, z)?;
    let potential = mp_log_potential_real(z, eigs.c())?;
    delta_p_with_potential(eigs, z, potential)
}

/// As [`delta_p`], with the Marchenko–Pastur log potential at `z` supplied
/// (it depends only on `z` and `p / n`, so Monte Carlo loops compute it once).
pub fn delta_p_with_potential(eigs: &EigenSample, z: f64, potential: f64) -> Result<f64> {
    check_right_of_spectrum(eigs, z)?;
    let sum: f64 = eigs.lambda.iter().map(|l| (z - l).ln()).sum::<f64>()
        + eigs.implicit_zeros() as f64 * z.ln();
    Ok(sum - eigs.p as f64 * potential)
}

fn check_right_of_spectrum(eigs: &EigenSample, z: f64) -> Result<()> {
    if !(z > eigs.largest()) {
        return Err(domain(format!(
            "evaluation point {z} must exceed the largest eigenvalue {}",
            eigs.largest()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_sum_matches_trace() {
        for &(p, n) in &[(30, 50), (50, 30), (1, 10), (10, 1)] {
            let model = SpikedModel::new(p, n, 0.7).unwrap().with_seed(3);
            let mut rng = stream(model.seed, 0);
            let x = sample_data(&model, &mut rng);
            let tr = x.iter().map(|v| v * v).sum::<f64>() / n as f64;
            let eigs = sample_eigs(&model, 0).unwrap();
            assert_eq!(eigs.lambda.len(), p.min(n));
            assert!((eigs.trace - tr).abs() < 1e-8 * tr);
            assert!(eigs.lambda.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn mu_sums_to_one_with_remainder() {
        let eigs = sample_eigs(&SpikedModel::null(20, 40).unwrap(), 1).unwrap();
        let last = eigs.lambda.last().unwrap() / eigs.trace;
        let s: f64 = eigs.mu.iter().sum::<f64>() + last;
        assert!((s - 1.0).abs() < 1e-14);
        assert_eq!(eigs.mu.len(), eigs.lambda.len() - 1);
    }

    #[test]
    fn bidiagonal_shapes() {
        for &(p, n) in &[(5, 9), (9, 5), (7, 7), (1, 4), (4, 1)] {
            let model = SpikedModel::new(p, n, 1.0).unwrap();
            let eigs = sample_eigs_with(&model, 0, Sampler::Bidiagonal).unwrap();
            assert_eq!(eigs.lambda.len(), p.min(n));
            assert!(eigs.lambda.iter().all(|&l| l >= 0.0));
        }
    }

    #[test]
    fn rejects_bad_models() {
        assert!(SpikedModel::new(0, 3, 0.0).is_err());
        assert!(SpikedModel::new(3, 3, -1.0).is_err());
        assert!(SpikedModel::null(3, 3).unwrap().with_sigma2(0.0).is_err());
        assert!(SpikedModel::null(2, 3).unwrap().with_direction(vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn delta_p_direct_recomputation() {
        let c = 1e-6;
        let eigs = EigenSample::from_eigenvalues(vec![1.0], 1, 1_000_000).unwrap();
        let pot = mp_log_potential_real(2.0, c).unwrap();
        let d = delta_p(&eigs, 2.0).unwrap();
        assert!((d - (1f64.ln() - pot)).abs() < 1e-14);
        // the law concentrates at 1 as c -> 0
        assert!(d.abs() < 1e-5);
        assert!(delta_p(&eigs, 0.5).is_err());
    }
}
