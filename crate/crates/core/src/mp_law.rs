//! Marchenko–Pastur law, its Stieltjes transform, and the saddle-point data of
//! the Laplace phase used by the likelihood-ratio asymptotics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, out_of_regime, Error, Result};
use crate::quadrature::{integrate_doubling, GaussLegendre};

/// Default relative width of the excluded band just below `sqrt(c)`.
pub const DEFAULT_GUARD: f64 = 0.05;

const LOG_POTENTIAL_NODES: usize = 200;
const LOG_POTENTIAL_MAX_NODES: usize = 200 * 512;
const LOG_POTENTIAL_TOL: f64 = 1e-10;

/// Aspect ratio and support edges of the Marchenko–Pastur law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MpParams {
    pub c: f64,
    pub a: f64,
    pub b: f64,
}

impl MpParams {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(domain(format!("aspect ratio must be positive and finite, got {c}")));
        }
        let s = c.sqrt();
        Ok(Self {
            c,
            a: (1.0 - s).powi(2),
            b: (1.0 + s).powi(2),
        })
    }

    /// Mass of the atom at zero.
    pub fn mass_at_zero(&self) -> f64 {
        (1.0 - 1.0 / self.c).max(0.0)
    }

    /// Point `x(t) = (a + b)/2 + (b - a)/2 sin t` of the support and the
    /// density times `dx/dt` there, for `t` in `(-pi/2, pi/2)`.
    fn angle_node(&self, t: f64) -> (f64, f64) {
        let half = 0.5 * (self.b - self.a);
        // 1 + sin t and 1 - sin t without cancellation at the ends
        let u = 2.0 * (0.5 * t + 0.25 * PI).sin().powi(2);
        let w = 2.0 * (0.5 * t + 0.25 * PI).cos().powi(2);
        let x = self.a + half * u;
        (x, half * half * u * w / (2.0 * PI * self.c * x))
    }
}

/// Density of the continuous part at `x`.
pub fn mp_density(x: f64, c: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("density argument must be finite, got {x}")));
    }
    let mp = MpParams::new(c)?;
    if x <= mp.a || x >= mp.b {
        return Ok(0.0);
    }
    Ok(((mp.b - x) * (x - mp.a)).sqrt() / (2.0 * PI * c * x))
}

pub fn mp_mass_at_zero(c: f64) -> Result<f64> {
    Ok(MpParams::new(c)?.mass_at_zero())
}

/// Distribution function, including the atom at zero when `c > 1`.
pub fn mp_cdf(x: f64, c: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("cdf argument must be finite, got {x}")));
    }
    let mp = MpParams::new(c)?;
    let atom = if x >= 0.0 { mp.mass_at_zero() } else { 0.0 };
    if x <= mp.a {
        return Ok(atom);
    }
    if x >= mp.b {
        return Ok(1.0);
    }
    let mid = 0.5 * (mp.a + mp.b);
    let half = 0.5 * (mp.b - mp.a);
    let upper = ((x - mid) / half).clamp(-1.0, 1.0).asin();
    let (v, _, _) = integrate_doubling(-PI / 2.0, upper, 32, 1 << 14, 1e-13, |t| mp.angle_node(t).1);
    Ok((atom + v).min(1.0))
}

fn is_in_support(z: Complex64, mp: &MpParams) -> bool {
    z.im == 0.0 && z.re >= mp.a && z.re <= mp.b
}

/// The square root `R` with `R^2 = (z - c - 1)^2 - 4c`, on the branch that
/// agrees in sign with `z - c - 1`.
fn branch_root(z: Complex64, c: f64) -> Complex64 {
    let w = z - (c + 1.0);
    let s = (w * w - 4.0 * c).sqrt();
    if (s * w.conj()).re < 0.0 {
        -s
    } else {
        s
    }
}

/// Stieltjes transform `m(z) = int dF(x) / (x - z)`.
pub fn mp_stieltjes(z: Complex64, c: f64) -> Result<Complex64> {
    let mp = MpParams::new(c)?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("Stieltjes argument must be finite"));
    }
    if is_in_support(z, &mp) || z == Complex64::new(0.0, 0.0) {
        return Err(domain(format!("z = {z} lies on the support")));
    }
    Ok(stieltjes_unchecked(z, c, branch_root(z, c)))
}

fn stieltjes_unchecked(z: Complex64, c: f64, r: Complex64) -> Complex64 {
    // Two algebraically equal forms; pick the one without cancellation.
    let t = z + (c - 1.0);
    let d1 = t + r;
    let d2 = r - t;
    if d1.norm() >= d2.norm() {
        -2.0 / d1
    } else {
        d2 / (2.0 * c * z)
    }
}

/// `m, m', m'', m'''` at `z`.
pub fn mp_stieltjes_derivatives(z: Complex64, c: f64) -> Result<[Complex64; 4]> {
    let m = mp_stieltjes(z, c)?;
    let r = branch_root(z, c);
    let w = z - (c + 1.0);
    let r1 = w / r;
    let r2 = -4.0 * c / (r * r * r);
    // m' R = -c m^2 - m, differentiated repeatedly.
    let m1 = -(c * m * m + m) / r;
    let p1 = -(2.0 * c * m + 1.0) * m1;
    let m2 = (p1 - m1 * r1) / r;
    let p2 = -2.0 * c * m1 * m1 - (2.0 * c * m + 1.0) * m2;
    let m3 = (p2 - 2.0 * m2 * r1 - m1 * r2) / r;
    Ok([m, m1, m2, m3])
}

/// `int ln(z - x) dF(x)` with principal logarithms, atom included.
pub fn mp_log_potential(z: Complex64, c: f64) -> Result<Complex64> {
    let mp = MpParams::new(c)?;
    if is_in_support(z, &mp) || z == Complex64::new(0.0, 0.0) {
        return Err(domain(format!("z = {z} lies on the support")));
    }
    let integrand = |t: f64| {
        let (x, weight) = mp.angle_node(t);
        (z - x).ln() * weight
    };
    let lo = -PI / 2.0;
    let hi = PI / 2.0;
    let mut n = LOG_POTENTIAL_NODES;
    let mut prev = GaussLegendre::cached(n).integrate(lo, hi, integrand);
    loop {
        n *= 2;
        let cur = GaussLegendre::cached(n).integrate(lo, hi, integrand);
        let change = (cur - prev).norm();
        if change <= LOG_POTENTIAL_TOL * cur.norm().max(1.0) {
            prev = cur;
            break;
        }
        if n >= LOG_POTENTIAL_MAX_NODES {
            return Err(Error::Numeric(format!(
                "log potential at z = {z} did not converge (last change {change:e})"
            )));
        }
        prev = cur;
    }
    let atom = mp.mass_at_zero();
    if atom > 0.0 {
        prev += z.ln() * atom;
    }
    Ok(prev)
}

/// Real log potential for real `z` to the right of the support.
pub fn mp_log_potential_real(z: f64, c: f64) -> Result<f64> {
    let mp = MpParams::new(c)?;
    if !(z > mp.b) {
        return Err(domain(format!("z = {z} must exceed the upper edge {}", mp.b)));
    }
    Ok(mp_log_potential(Complex64::new(z, 0.0), c)?.re)
}

/// Saddle point of the Laplace phase and the leading expansion data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleData {
    pub h: f64,
    pub c: f64,
    pub z0: f64,
    pub f0: f64,
    pub f2: f64,
    pub a0_magnitude: f64,
}

/// Saddle data with the default guard band.
pub fn saddle_point(h: f64, c: f64) -> Result<SaddleData> {
    saddle_point_with_guard(h, c, DEFAULT_GUARD)
}

pub fn saddle_point_with_guard(h: f64, c: f64, guard: f64) -> Result<SaddleData> {
    MpParams::new(c)?;
    check_subcritical(h, c, guard)?;
    Ok(SaddleData {
        h,
        c,
        z0: saddle_location(h, c),
        f0: f0_subcritical(h, c),
        f2: -h * h / (4.0 * (1.0 + h).powi(2) * (c - h * h)),
        a0_magnitude: (1.0 + h) * (c - h * h).sqrt() / h,
    })
}

pub(crate) fn check_subcritical(h: f64, c: f64, guard: f64) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(out_of_regime(h, "spike norm must be positive"));
    }
    if !(0.0..1.0).contains(&guard) {
        return Err(domain(format!("guard must lie in [0, 1), got {guard}")));
    }
    let edge = (1.0 - guard) * c.sqrt();
    if h >= edge {
        return Err(out_of_regime(
            h,
            format!("must be below {edge} (guarded phase-transition threshold)"),
        ));
    }
    Ok(())
}

/// `(1 + h)(c + h) / h`.
pub fn saddle_location(h: f64, c: f64) -> f64 {
    (1.0 + h) * (c + h) / h
}

fn f0_subcritical(h: f64, c: f64) -> f64 {
    -0.5 * (c + (1.0 - c) * h.ln_1p() - c * (c / h).ln())
}

/// Value of the phase at `z0(h)` for `h` above the threshold.
pub fn f0_supercritical(h: f64, c: f64) -> Result<f64> {
    MpParams::new(c)?;
    if !(h.is_finite() && h > c.sqrt()) {
        return Err(out_of_regime(h, format!("must exceed sqrt(c) = {}", c.sqrt())));
    }
    Ok(-0.5 * (h + c + (1.0 - c) * (c + h).ln() - c / h - h.ln()))
}

/// `f(z) = -(1/2)(h z / (1 + h) - c int ln(z - x) dF(x))`.
pub fn f_value(z: Complex64, h: f64, c: f64) -> Result<Complex64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(domain(format!("spike norm must be positive, got {h}")));
    }
    let lp = mp_log_potential(z, c)?;
    Ok(-0.5 * (z * (h / (1.0 + h)) - lp * c))
}

/// Taylor coefficients `f_s = f^(s)(z0) / s!` for `s = 2, 3, 4`.
pub fn f_taylor(h: f64, c: f64) -> Result<[f64; 3]> {
    let sd = saddle_point_with_guard(h, c, 0.0)?;
    let [_, m1, m2, m3] = mp_stieltjes_derivatives(Complex64::new(sd.z0, 0.0), c)?;
    Ok([-0.25 * c * m1.re, -c * m2.re / 12.0, -c * m3.re / 48.0])
}

/// Second even coefficient of the Laplace expansion for an amplitude with
/// Taylor coefficients `g = [g0, g1, g2]` at the saddle.
///
/// The branch of `f2^(1/2)` is the one for which the leading coefficient is
/// `a0 = i (1 + h) sqrt(c - h^2) g0 / h`; the result is therefore complex.
pub fn laplace_a2(h: f64, c: f64, g: [f64; 3]) -> Result<Complex64> {
    check_subcritical(h, c, 0.0)?;
    let [f2, f3, f4] = f_taylor(h, c)?;
    let [g0, g1, g2] = g;
    let num = 4.0 * g2 - 6.0 * f3 * g1 / f2 + (15.0 * f3 * f3 / (2.0 * f2 * f2) - 6.0 * f4 / f2) * g0;
    let sqrt_f2 = Complex64::new(0.0, -(-f2).sqrt());
    Ok(num / (8.0 * f2 * sqrt_f2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn density_at_two_for_unit_ratio() {
        let v = mp_density(2.0, 1.0).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(mp_density(5.0, 1.0).unwrap(), 0.0);
        assert!(mp_density(f64::NAN, 1.0).is_err());
        assert!(mp_density(1.0, 0.0).is_err());
    }

    #[test]
    fn stieltjes_closed_form_point() {
        let m = mp_stieltjes(cx(4.5, 0.0), 1.0).unwrap();
        assert!((m.re + 1.0 / 3.0).abs() < 1e-14 && m.im == 0.0);
    }

    #[test]
    fn stieltjes_rejects_support_and_origin() {
        assert!(mp_stieltjes(cx(1.0, 0.0), 0.5).is_err());
        assert!(mp_stieltjes(cx(0.0, 0.0), 0.5).is_err());
        assert!(mp_stieltjes(cx(1.0, 1e-3), 0.5).is_ok());
    }

    #[test]
    fn saddle_example() {
        let sd = saddle_point(0.5, 1.0).unwrap();
        assert!((sd.z0 - 4.5).abs() < 1e-15);
        assert!((sd.f2 + 1.0 / 27.0).abs() < 1e-15);
        assert!(saddle_point(0.96, 1.0).is_err());
        assert!(saddle_point(0.0, 1.0).is_err());
        assert!(saddle_point_with_guard(0.96, 1.0, 0.0).is_ok());
    }

    #[test]
    fn supercritical_f0_example() {
        let v = f0_supercritical(2.0, 1.0).unwrap();
        assert!((v + 0.5 * (2.5 - 2f64.ln())).abs() < 1e-15);
        assert!(f0_supercritical(1.0, 1.0).is_err());
    }

    #[test]
    fn derivative_chain_matches_closed_form_f2() {
        for &(h, c) in &[(0.3, 0.5), (0.5, 1.0), (0.9, 2.0)] {
            let sd = saddle_point(h, c).unwrap();
            let [f2, _, _] = f_taylor(h, c).unwrap();
            assert!((f2 - sd.f2).abs() < 1e-12 * sd.f2.abs(), "{f2} vs {}", sd.f2);
        }
    }

    #[test]
    fn a2_collapses_for_constant_amplitude() {
        let (h, c) = (0.4, 0.7);
        let [f2, f3, f4] = f_taylor(h, c).unwrap();
        let a2 = laplace_a2(h, c, [1.0, 0.0, 0.0]).unwrap();
        let num = 15.0 * f3 * f3 / (2.0 * f2 * f2) - 6.0 * f4 / f2;
        let expect = num / (8.0 * Complex64::new(f2, 0.0).powf(1.5).conj());
        // f2 < 0: the chosen root is -i sqrt|f2|, the conjugate of the principal one
        assert!((a2 - expect).norm() < 1e-12 * expect.norm());
        assert!(a2.re.abs() < 1e-14 * a2.norm());
    }
}
