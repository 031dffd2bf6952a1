//! Exact likelihood ratios and spherical integrals by contour integration.
//!
//! Both reduce to integrals of `exp(phi(z))` over a contour that comes in from
//! `-inf` below the real axis, crosses it to the right of every singularity,
//! and returns to `-inf` above it. The contour used here is a rectangle: a
//! vertical side through the real saddle point of `phi` and a horizontal side
//! at height `H`, with both tails cut where `Re phi` has dropped far below its
//! peak. For the likelihood ratios the integrand is conjugate symmetric, so the
//! lower half is never evaluated.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::rng::stream;
use crate::sampler::EigenSample;

/// Tails are dropped where `Re phi` is this far below its maximum.
const TAIL_DROP: f64 = 45.0;
const MAX_REFINEMENTS: usize = 7;
/// First-level panels span this many times the local width estimate.
const INITIAL_PANEL_SCALE: f64 = 4.0;

/// Likelihood ratio based on the eigenvalues (known scale) or on the
/// normalized eigenvalues (unknown scale).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LrKind {
    Lambda,
    Mu,
}

impl std::fmt::Display for LrKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LrKind::Lambda => "lambda",
            LrKind::Mu => "mu",
        })
    }
}

impl std::str::FromStr for LrKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(LrKind::Lambda),
            "mu" => Ok(LrKind::Mu),
            _ => Err(domain(format!("unknown kind {s:?} (expected lambda or mu)"))),
        }
    }
}

/// Contour overrides and quadrature controls. Unset geometry is chosen
/// automatically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Where the contour crosses the real axis.
    pub z0: Option<f64>,
    /// Height of the horizontal sides; defaults to `3 * z0`.
    pub height: Option<f64>,
    /// Real part at which the horizontal sides are cut.
    pub left_truncation: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_segment: usize,
    /// Relative change at which panel refinement stops.
    pub refinement_tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            z0: None,
            height: None,
            left_truncation: None,
            nodes_per_segment: 16,
            refinement_tol: 1e-10,
        }
    }
}

/// The contour actually integrated over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolvedContour {
    pub z0: f64,
    pub height: f64,
    /// Length of the vertical side kept after truncation.
    pub vertical_extent: f64,
    /// `None` when the horizontal sides are negligible and were skipped.
    pub left_truncation: Option<f64>,
    pub nodes: usize,
}

/// Natural log of an exact likelihood ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLrExact {
    pub value: f64,
    pub h: f64,
    pub kind: LrKind,
    /// Absolute change in `value` at the last panel refinement.
    pub quadrature_error_estimate: f64,
    pub contour: ResolvedContour,
}

#[derive(Debug, Clone, Copy)]
enum Lead {
    /// `a z`
    Exponential { a: f64 },
    /// `-(half_n) Log(1 - k z)`, defined for `Re z < 1 / k`.
    Power { half_n: f64, k: f64 },
}

/// `phi(z) = lead(z) - (1/2) sum_j Log(z - s_j)`, where the `s_j` are the
/// stored points plus `zeros` copies of the origin.
/// `sum_j Log(z - s_j)`.
///
/// Off the real axis each `w_j = -i sign(Im z) (z - s_j)` has positive real
/// part, so the argument of a product of two of them is the sum of their
/// arguments with no wrap-around. That halves the number of `atan2` calls, and
/// the moduli are multiplied up in blocks before taking one logarithm.
fn sum_logs(points: &[f64], z: Complex64) -> Complex64 {
    const BLOCK: usize = 8;
    if z.im == 0.0 {
        return points.iter().map(|&l| (z - l).ln()).sum();
    }
    let sgn = z.im.signum();
    let y = z.im.abs();
    let mut ln_mod = 0.0;
    let mut arg = 0.0;
    for block in points.chunks(BLOCK) {
        let mut prod_sq = 1.0;
        let mut pairs = block.chunks_exact(2);
        for pair in &mut pairs {
            let (a, b) = (z.re - pair[0], z.re - pair[1]);
            // w = y - i sgn a for each point
            let re = y * y - a * b;
            let im = -sgn * y * (a + b);
            arg += im.atan2(re);
            prod_sq *= (y * y + a * a) * (y * y + b * b);
        }
        for &l in pairs.remainder() {
            let a = z.re - l;
            arg += (-sgn * a).atan2(y);
            prod_sq *= y * y + a * a;
        }
        if prod_sq.is_normal() {
            ln_mod += 0.5 * prod_sq.ln();
        } else {
            ln_mod += block.iter().map(|&l| (z.re - l).hypot(y).ln()).sum::<f64>();
        }
    }
    let quarter_turns = sgn * std::f64::consts::FRAC_PI_2 * points.len() as f64;
    Complex64::new(ln_mod, arg + quarter_turns)
}

struct Phase<'a> {
    points: &'a [f64],
    zeros: f64,
    lead: Lead,
}

impl Phase<'_> {
    fn multiplicity(&self) -> f64 {
        self.points.len() as f64 + self.zeros
    }

    fn phi(&self, z: Complex64) -> Complex64 {
        let mut s = sum_logs(self.points, z);
        if self.zeros > 0.0 {
            s += z.ln() * self.zeros;
        }
        self.lead_value(z) - 0.5 * s
    }

    fn lead_value(&self, z: Complex64) -> Complex64 {
        match self.lead {
            Lead::Exponential { a } => z * a,
            Lead::Power { half_n, k } => -(1.0 - z * k).ln() * half_n,
        }
    }

    fn dphi(&self, z: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for &l in self.points {
            s += 1.0 / (z - l);
        }
        if self.zeros > 0.0 {
            s += self.zeros / z;
        }
        let lead = match self.lead {
            Lead::Exponential { a } => Complex64::new(a, 0.0),
            Lead::Power { half_n, k } => half_n * k / (1.0 - z * k),
        };
        lead - 0.5 * s
    }

    fn d2phi_real(&self, x: f64) -> f64 {
        let mut s: f64 = self.points.iter().map(|l| (x - l).powi(-2)).sum();
        if self.zeros > 0.0 {
            s += self.zeros / (x * x);
        }
        let lead = match self.lead {
            Lead::Exponential { .. } => 0.0,
            Lead::Power { half_n, k } => half_n * k * k / (1.0 - k * x).powi(2),
        };
        lead + 0.5 * s
    }

    /// Largest singularity on the real axis.
    fn right_singularity(&self) -> f64 {
        let top = self.points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if self.zeros > 0.0 {
            top.max(0.0)
        } else {
            top
        }
    }

    fn left_singularity(&self) -> f64 {
        let low = self.points.iter().copied().fold(f64::INFINITY, f64::min);
        if self.zeros > 0.0 {
            low.min(0.0)
        } else {
            low
        }
    }

    /// Bound on real crossings imposed by the lead term.
    fn crossing_limit(&self) -> f64 {
        match self.lead {
            Lead::Exponential { .. } => f64::INFINITY,
            Lead::Power { k, .. } => 1.0 / k,
        }
    }

    /// Distance from `z` to the nearest singularity or branch point.
    fn distance(&self, z: Complex64) -> f64 {
        let mut d = self.points.iter().fold(f64::INFINITY, |m, &l| m.min((z - l).norm()));
        if self.zeros > 0.0 {
            d = d.min(z.norm());
        }
        if let Lead::Power { k, .. } = self.lead {
            d = d.min((z - 1.0 / k).norm());
        }
        d
    }

    /// Upper bound of `Re phi` on the horizontal side at height `height` left of `x`.
    fn horizontal_bound(&self, x: f64, height: f64) -> f64 {
        let lead = match self.lead {
            Lead::Exponential { a } => a * x,
            Lead::Power { half_n, k } => -half_n * (1.0 - k * x).max(k * height).ln(),
        };
        lead - 0.5 * self.multiplicity() * height.ln()
    }

    /// Minimizer of `phi` on the real interval right of the singularities.
    fn real_saddle(&self) -> Result<f64> {
        let lo0 = self.right_singularity();
        let limit = self.crossing_limit();
        if !(lo0 < limit) {
            return Err(Error::Geometry(format!(
                "no admissible real crossing: largest singularity {lo0} is beyond the bound {limit}"
            )));
        }
        let mut lo = lo0;
        let mut hi = match self.lead {
            Lead::Exponential { a } => lo0 + 0.5 * self.multiplicity() / a + 1.0,
            Lead::Power { .. } => limit,
        };
        let slope = |x: f64| self.dphi(Complex64::new(x, 0.0)).re;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        let x = 0.5 * (lo + hi);
        if !(x > lo0 && x < limit) {
            return Err(Error::Geometry(format!("saddle search collapsed onto a singularity at {x}")));
        }
        Ok(x)
    }
}

struct Segment {
    start: Complex64,
    dir: Complex64,
    length: f64,
}

impl Segment {
    fn at(&self, t: f64) -> Complex64 {
        self.start + self.dir * t
    }
}

struct Geometry {
    resolved: ResolvedContour,
    segments: Vec<Segment>,
    /// Typical scale of the vertical side near the crossing.
    sigma: f64,
}

fn resolve_geometry(phase: &Phase<'_>, spec: &ContourSpec, min_height: f64) -> Result<Geometry> {
    let right = phase.right_singularity();
    let left_sing = phase.left_singularity();
    let limit = phase.crossing_limit();
    let z0 = match spec.z0 {
        Some(z) => z,
        None => phase.real_saddle()?,
    };
    if !(z0 > right) {
        return Err(Error::Geometry(format!(
            "crossing {z0} does not enclose the largest singularity {right}"
        )));
    }
    if !(z0 < limit) {
        return Err(Error::Geometry(format!(
            "crossing {z0} violates the half-plane bound Re z < {limit}"
        )));
    }
    let height = spec.height.unwrap_or(3.0 * z0.abs().max(min_height));
    if !(height > 0.0 && height.is_finite()) {
        return Err(Error::Geometry(format!("height must be positive, got {height}")));
    }
    let spectrum_left = left_sing.min(0.0);
    if let Some(l) = spec.left_truncation {
        if !(l < spectrum_left) {
            return Err(Error::Geometry(format!(
                "left truncation {l} must lie left of {spectrum_left}"
            )));
        }
    }

    let re_phi = |z: Complex64| phase.phi(z).re;
    let peak = re_phi(Complex64::new(z0, 0.0));
    let floor = peak - TAIL_DROP;

    // Re phi decreases monotonically up the vertical side.
    let top_corner = Complex64::new(z0, height);
    let vertical_extent = if re_phi(top_corner) < floor {
        let (mut lo, mut hi) = (0.0, height);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if re_phi(Complex64::new(z0, mid)) < floor {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    } else {
        height
    };

    let mut segments = vec![Segment {
        start: Complex64::new(z0, 0.0),
        dir: Complex64::new(0.0, 1.0),
        length: vertical_extent,
    }];

    let include_top = spec.left_truncation.is_some() || phase.horizontal_bound(z0, height) >= floor;
    let left_truncation = if include_top {
        let l = match spec.left_truncation {
            Some(l) => l,
            None => {
                // Left of every singularity Re phi decreases monotonically.
                let base = spectrum_left - 1.0;
                let below = |x: f64| re_phi(Complex64::new(x, height)) < floor;
                if below(base) {
                    base
                } else {
                    let mut step = 1.0f64.max(base.abs());
                    while !below(base - step) {
                        step *= 2.0;
                        if step > 1e300 {
                            return Err(Error::Geometry("integrand does not decay to the left".into()));
                        }
                    }
                    let (mut lo, mut hi) = (base - step, base - 0.5 * step);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if below(mid) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    lo
                }
            }
        };
        segments.push(Segment {
            start: top_corner,
            dir: Complex64::new(-1.0, 0.0),
            length: z0 - l,
        });
        Some(l)
    } else {
        None
    };

    let curvature = phase.d2phi_real(z0);
    let sigma = if curvature > 0.0 { curvature.sqrt().recip() } else { height };
    Ok(Geometry {
        resolved: ResolvedContour {
            z0,
            height,
            vertical_extent,
            left_truncation,
            nodes: 0,
        },
        segments,
        sigma,
    })
}

fn panel_edges(phase: &Phase<'_>, seg: &Segment, sigma: f64, scale: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    if seg.length <= 0.0 {
        return edges;
    }
    let min_width = seg.length * 1e-7;
    let mut t = 0.0;
    while t < seg.length {
        let z = seg.at(t);
        let rate = phase.dphi(z).norm();
        let mut w = (2.0 * sigma).min(phase.distance(z));
        if rate > 0.0 {
            w = w.min(2.0 / rate);
        }
        w = (w * scale).max(min_width);
        t = (t + w).min(seg.length);
        if seg.length - t < 0.25 * w {
            t = seg.length;
        }
        edges.push(t);
    }
    edges
}

/// Nodes, weights (including the segment direction) and phase values for one
/// refinement level.
fn evaluate(phase: &Phase<'_>, geom: &Geometry, scale: f64, order: usize) -> Vec<(Complex64, Complex64, Complex64)> {
    let rule = GaussLegendre::cached(order);
    let mut out = Vec::new();
    for seg in &geom.segments {
        let edges = panel_edges(phase, seg, geom.sigma, scale);
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                let z = seg.at(mid + half * x);
                out.push((z, seg.dir * (wt * half), phase.phi(z)));
            }
        }
    }
    out
}

struct UpperIntegral {
    /// Integral of `exp(phi - shift)` over the upper half.
    value: Complex64,
    shift: f64,
    /// Change in `value` at the last refinement.
    change: Complex64,
    geometry: Geometry,
    nodes: usize,
    /// Panel scale of the accepted level.
    scale: f64,
}

/// Integrates `exp(phi)` over the upper half of the contour, halving every
/// panel until the quantity picked out by `target` stabilizes.
fn integrate_upper(
    phase: &Phase<'_>,
    spec: &ContourSpec,
    min_height: f64,
    target: impl Fn(Complex64) -> f64,
) -> Result<UpperIntegral> {
    if spec.nodes_per_segment < 2 {
        return Err(domain("need at least two nodes per segment"));
    }
    if !(spec.refinement_tol > 0.0) {
        return Err(domain("refinement tolerance must be positive"));
    }
    let geometry = resolve_geometry(phase, spec, min_height)?;
    let mut shift = f64::NEG_INFINITY;
    let mut prev: Option<Complex64> = None;
    let mut nodes = 0;
    let mut scale = INITIAL_PANEL_SCALE;
    for _ in 0..=MAX_REFINEMENTS {
        let pts = evaluate(phase, &geometry, scale, spec.nodes_per_segment);
        nodes += pts.len();
        if shift == f64::NEG_INFINITY {
            shift = pts.iter().fold(phase.phi(Complex64::new(geometry.resolved.z0, 0.0)).re, |m, p| m.max(p.2.re));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (_, w, f) in &pts {
            acc += w * (f - shift).exp();
        }
        if let Some(p) = prev {
            let change = acc - p;
            let t = target(acc).abs();
            if target(change).abs() <= spec.refinement_tol * t {
                return Ok(UpperIntegral {
                    value: acc,
                    shift,
                    change,
                    geometry,
                    nodes,
                    scale,
                });
            }
        }
        prev = Some(acc);
        scale *= 0.5;
    }
    let p = prev.unwrap();
    Err(Error::Numeric(format!(
        "contour quadrature did not reach relative tolerance {:e} (value {p})",
        spec.refinement_tol
    )))
}

fn ln_constant(p: usize, n: usize, h: f64, kind: LrKind, trace: f64) -> f64 {
    let (pf, nf) = (p as f64, n as f64);
    let ln_k1 = -0.5 * (pf - 2.0) * h.ln() + 0.5 * (pf - nf - 2.0) * h.ln_1p() + ln_gamma(0.5 * pf);
    match kind {
        LrKind::Lambda => ln_k1 + 0.5 * (pf - 2.0) * (2.0 / nf).ln(),
        LrKind::Mu => {
            let big_n = nf * pf - pf + 2.0;
            ln_k1 + ln_gamma(0.5 * big_n) - ln_gamma(0.5 * nf * pf) + 0.5 * (pf - 2.0) * trace.ln()
        }
    }
}

/// Exact `ln L(h)` for a sample of `p x n` data, with the default contour.
pub fn log_lr_exact(eigs: &EigenSample, h: f64, kind: LrKind) -> Result<LogLrExact> {
    log_lr_exact_with(eigs, h, kind, &ContourSpec::default())
}

pub fn log_lr_exact_with(eigs: &EigenSample, h: f64, kind: LrKind, spec: &ContourSpec) -> Result<LogLrExact> {
    if !(h.is_finite() && h > 0.0) {
        return Err(domain(format!("spike norm must be positive, got {h}")));
    }
    if kind == LrKind::Mu && !(eigs.trace > 0.0) {
        return Err(Error::Degenerate("trace is zero".into()));
    }
    let (p, n) = (eigs.p, eigs.n);
    let kappa = h / (1.0 + h);
    let lead = match kind {
        LrKind::Lambda => Lead::Exponential {
            a: 0.5 * n as f64 * kappa,
        },
        LrKind::Mu => Lead::Power {
            half_n: 0.5 * ((n * p) as f64 - p as f64 + 2.0),
            k: kappa / eigs.trace,
        },
    };
    let phase = Phase {
        points: &eigs.lambda,
        zeros: eigs.implicit_zeros() as f64,
        lead,
    };
    let up = integrate_upper(&phase, spec, 1.0, |v| v.im)?;
    let im = up.value.im;
    if !(im > 0.0) {
        return Err(Error::Numeric(format!(
            "contour integral has non-positive imaginary part {im:e} after scaling"
        )));
    }
    let value = ln_constant(p, n, h, kind, eigs.trace) + up.shift + im.ln() - std::f64::consts::PI.ln();
    let mut contour = up.geometry.resolved;
    contour.nodes = up.nodes;
    Ok(LogLrExact {
        value,
        h,
        kind,
        quadrature_error_estimate: (up.change.im / im).abs(),
        contour,
    })
}

/// Spherical average of `exp(x' D x)` over the unit sphere in `R^r`, by
/// integrating `Gamma(r/2) / (2 pi i) exp(s) prod (s - d_j)^(-1/2)` around a
/// rectangle enclosing the origin and every `d_j`.
///
/// Both halves of the contour are integrated; the relative size of the
/// imaginary part of the result is returned alongside the value.
pub fn spherical_integral_contour(d: &[f64]) -> Result<(f64, f64)> {
    spherical_integral_contour_with(d, &ContourSpec::default())
}

pub fn spherical_integral_contour_with(d: &[f64], spec: &ContourSpec) -> Result<(f64, f64)> {
    if d.is_empty() {
        return Err(domain("need at least one coefficient"));
    }
    if d.iter().any(|x| !x.is_finite()) {
        return Err(domain("coefficients must be finite"));
    }
    let r = d.len();
    let phase = Phase {
        points: d,
        zeros: 0.0,
        lead: Lead::Exponential { a: 1.0 },
    };
    let min_height = (r as f64).max(1.0);
    let up = integrate_upper(&phase, spec, min_height, |v| v.norm())?;
    // Lower half, evaluated directly on the mirrored nodes.
    let pts = evaluate(&phase, &up.geometry, up.scale, spec.nodes_per_segment);
    let mut lower = Complex64::new(0.0, 0.0);
    for (z, w, _) in &pts {
        lower -= w.conj() * (phase.phi(z.conj()) - up.shift).exp();
    }
    let total = (up.value + lower) / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let scale = (ln_gamma(0.5 * r as f64) + up.shift).exp();
    let value = total.re * scale;
    let residue = total.im.abs() / total.norm();
    if !(value > 0.0) || residue > 1e-8 {
        return Err(Error::Numeric(format!(
            "spherical contour integral failed: value {value:e}, imaginary residue {residue:e}"
        )));
    }
    Ok((value, residue))
}

/// Monte Carlo estimate of the spherical average of `exp(x' D x)` and its
/// standard error.
pub fn spherical_integral_mc(d: &[f64], draws: usize, seed: u64) -> Result<(f64, f64)> {
    if d.is_empty() {
        return Err(domain("need at least one coefficient"));
    }
    if draws < 2 {
        return Err(domain("need at least two draws"));
    }
    const CHUNK: usize = 1 << 14;
    let chunks = draws.div_ceil(CHUNK);
    // per-chunk (count, mean, sum of squared deviations), merged in order
    let parts: Vec<(f64, f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64);
            let count = CHUNK.min(draws - c * CHUNK);
            let (mut k, mut mean, mut m2) = (0.0, 0.0, 0.0);
            let mut y = vec![0.0; d.len()];
            for _ in 0..count {
                let mut norm = 0.0;
                for yj in y.iter_mut() {
                    let g: f64 = rng.sample(StandardNormal);
                    *yj = g * g;
                    norm += *yj;
                }
                let expo: f64 = y.iter().zip(d).map(|(u, dj)| u / norm * dj).sum();
                let v = expo.exp();
                k += 1.0;
                let delta = v - mean;
                mean += delta / k;
                m2 += delta * (v - mean);
            }
            (k, mean, m2)
        })
        .collect();
    let (nf, mean, m2) = parts.iter().fold((0.0, 0.0, 0.0), |(na, ma, sa), &(nb, mb, sb)| {
        let n = na + nb;
        let delta = mb - ma;
        (n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n)
    });
    let var = m2 / (nf - 1.0);
    Ok((mean, (var / nf).sqrt()))
}

/// Confluent Lauricella series for the spherical average, truncated at total
/// degree `max_order`.
pub fn lauricella_series(d: &[f64], max_order: usize) -> Result<f64> {
    if d.is_empty() {
        return Err(domain("need at least one coefficient"));
    }
    if max_order > 60 {
        return Err(domain(format!("order {max_order} exceeds the supported maximum of 60")));
    }
    if d.iter().any(|x| !(x.abs() <= 1.0)) {
        return Err(domain("series requires |d_j| <= 1"));
    }
    // coef[k] = coefficient of t^k in prod_j (1 - d_j t)^(-1/2)
    let mut coef = vec![0.0; max_order + 1];
    coef[0] = 1.0;
    let mut factor = vec![0.0; max_order + 1];
    for &dj in d {
        factor[0] = 1.0;
        for m in 1..=max_order {
            factor[m] = factor[m - 1] * (m as f64 - 0.5) / m as f64 * dj;
        }
        for k in (0..=max_order).rev() {
            let mut acc = 0.0;
            for m in 0..=k {
                acc += factor[m] * coef[k - m];
            }
            coef[k] = acc;
        }
    }
    let half_r = 0.5 * d.len() as f64;
    let mut poch = 1.0;
    let mut sum = 0.0;
    for (k, c) in coef.iter().enumerate() {
        if k > 0 {
            poch *= half_r + (k - 1) as f64;
        }
        sum += c / poch;
    }
    Ok(sum)
}
