//! Real special functions and quadrature: Γ, K_ν, ₁F₂, modified Struve,
//! adaptive Gauss-Kronrod and the regulated radial integral.

use crate::error::{Error, Result};
use crate::C64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(gamma_real(x))
}

/// Γ(x) on the whole real line away from the poles (reflection below 1/2).
/// Returns NaN at non-positive integers.
pub fn gamma_real(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_real(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Tanh-sinh quadrature of a smooth function on [a, b].
///
/// Halves the step until two successive levels agree to `rel_tol`.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let node = |t: f64| -> (f64, f64) {
        let s = 0.5 * PI * t.sinh();
        let ch = s.cosh();
        let x = s.tanh();
        let w = 0.5 * PI * t.cosh() / (ch * ch);
        (x, w)
    };
    let t_max = 3.2;
    let mut h = 0.5;
    let mut sum = {
        let (_, w0) = node(0.0);
        w0 * f(c)
    };
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > t_max {
            break;
        }
        let (x, w) = node(t);
        sum += w * (f(c + hw * x) + f(c - hw * x));
        k += 1;
    }
    let mut prev = sum * h * hw;
    for _level in 0..10 {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > t_max {
                break;
            }
            let (x, w) = node(t);
            sum += w * (f(c + hw * x) + f(c - hw * x));
            k += 2;
        }
        let est = sum * h * hw;
        if (est - prev).abs() <= rel_tol * est.abs() {
            return est;
        }
        prev = est;
    }
    prev
}

/// Modified Bessel function of the second kind K_ν(z), from
/// K_ν(z) = e^{-z} ∫₀^∞ e^{-z(cosh t - 1)} cosh(νt) dt.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires z > 0, got {z}")));
    }
    let nu = nu.abs();
    // Cut where the integrand has dropped below e^{-60} of its scale.
    let mut t_hi: f64 = 1.0;
    while z * (t_hi.cosh() - 1.0) - nu * t_hi < 60.0 {
        t_hi += 0.5;
    }
    let g = |t: f64| (-z * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
    // The bulk sits near t ~ asinh(ν/z); split there so both pieces are smooth.
    let t_mid = (nu / z).asinh().min(0.5 * t_hi).max(0.25 * t_hi.min(1.0));
    let val = tanh_sinh(g, 0.0, t_mid, 1e-14) + tanh_sinh(g, t_mid, t_hi, 1e-14);
    Ok(val * (-z).exp())
}

/// ₁F₂(a; b1, b2; z) from its power series.
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    hyp1f2_with_tol(a, b1, b2, z, f64::EPSILON * 0.25)
}

/// ₁F₂ summed until |term| < tol·|partial sum|.
pub fn hyp1f2_with_tol(a: f64, b1: f64, b2: f64, z: f64, tol: f64) -> Result<f64> {
    for b in [b1, b2] {
        if b <= 0.0 && b == b.floor() {
            return Err(Error::Domain(format!("hyp1f2 parameter pole at b = {b}")));
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..100_000u32 {
        let n = n as f64;
        term *= (a + n) / ((b1 + n) * (b2 + n) * (n + 1.0)) * z;
        sum += term;
        if term == 0.0 || (term.abs() < tol * sum.abs() && n > 2.0 * z.abs().sqrt()) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("hyp1f2 series did not settle at z = {z}")))
}

/// Modified Struve function L_μ(x) for x > 0.
pub fn struve_l(mu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("struve_l requires x > 0, got {x}")));
    }
    let f = hyp1f2(1.0, 1.5, mu + 1.5, 0.25 * x * x)?;
    Ok((0.5 * x).powf(mu + 1.0) * f / (gamma_real(1.5) * gamma_real(mu + 1.5)))
}

/// Tail integral ∫_u^∞ t^{-ν} K_ν(t) dt for ν < 1 (analytically continued
/// through ν = 1/2).
pub fn tail_integral_k(nu: f64, u: f64) -> Result<f64> {
    let pref = 2f64.powf(-nu - 1.0) * PI.sqrt() * gamma_real(0.5 - nu);
    let bracket = bessel_k(nu, u)? * struve_l(-nu - 1.0, u)?
        + struve_l(-nu, u)? * bessel_k(nu + 1.0, u)?;
    Ok(pref * (1.0 - u * bracket))
}

const GK_XK: [f64; 8] = [
    0.991_455_371_120_812_639,
    0.949_107_912_342_758_525,
    0.864_864_423_359_769_073,
    0.741_531_185_599_394_440,
    0.586_087_235_467_691_130,
    0.405_845_151_377_397_167,
    0.207_784_955_007_898_468,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_184,
    0.140_653_259_715_525_919,
    0.169_004_726_639_267_903,
    0.190_350_578_064_785_410,
    0.204_432_940_075_298_892,
    0.209_482_141_084_727_828,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_693,
    0.279_705_391_489_276_668,
    0.381_830_050_505_118_945,
    0.417_959_183_673_469_388,
];

fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * GK_WK[7];
    let mut gauss = fc * GK_WG[3];
    for j in 0..7 {
        let x = h * GK_XK[j];
        let s = f(c - x) + f(c + x);
        kron += s * GK_WK[j];
        if j % 2 == 1 {
            gauss += s * GK_WG[j / 2];
        }
    }
    ((kron * h), ((kron - gauss) * h).norm())
}

/// Adaptive Gauss-Kronrod (7/15) on a finite interval with global
/// bisection of the worst subinterval.
pub fn adaptive_gk<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> (C64, f64) {
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    while err > abs_tol.max(rel_tol * total.norm()) && parts.len() < max_subdivisions {
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, pv, pe) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    let total = parts.iter().fold(C64::new(0.0, 0.0), |s, p| s + p.2);
    let err = parts.iter().map(|p| p.3).sum();
    (total, err)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Subinterval budget per unit-length panel.
    pub max_subdivisions: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Regulator strengths in units of 1/M, strictly decreasing.
    pub regulator_deltas: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            max_subdivisions: 64,
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            regulator_deltas: vec![0.2, 0.1, 0.05, 0.025],
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if self.regulator_deltas.is_empty() || self.regulator_deltas.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::InvalidParameter("regulator deltas must be positive".into()));
        }
        if self.regulator_deltas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter("regulator deltas must strictly decrease".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter("max_subdivisions must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RegulatedIntegral {
    pub value: C64,
    /// Regulated integrals at each δ (in 1/M units).
    pub samples: Vec<(f64, C64)>,
    /// Extrapolations using the first 1, 2, ... samples.
    pub estimates: Vec<C64>,
    /// Size of the last extrapolation correction.
    pub correction: f64,
}

/// Polynomial extrapolation of (x_i, y_i) to x = 0 by Neville's scheme.
pub fn neville_at_zero(xs: &[f64], ys: &[C64]) -> C64 {
    let mut p: Vec<C64> = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i] * xs[i + m] - p[i + 1] * xs[i]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// lim_{δ→0⁺} ∫₀^∞ f(k) e^{-δ√(k²+M²)} dk, from the regulated integrals at
/// each δ in `spec` followed by polynomial extrapolation in δ.
pub fn regulated_radial_integral<F: Fn(f64) -> C64>(
    f: F,
    mass: f64,
    spec: &QuadratureSpec,
) -> Result<RegulatedIntegral> {
    spec.validate()?;
    if !(mass > 0.0) {
        return Err(Error::InvalidParameter("mass must be positive".into()));
    }
    let mut samples = Vec::with_capacity(spec.regulator_deltas.len());
    for &d in &spec.regulator_deltas {
        let delta = d / mass;
        let g = |k: f64| f(k) * (-delta * (k * k + mass * mass).sqrt()).exp();
        // e^{-δk} falls below e^{-45}; algebraic growth of f is absorbed in the margin.
        let k_max = 45.0 / delta + mass;
        let panel = (1.0f64).min(k_max);
        let n_panels = (k_max / panel).ceil() as usize;
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n_panels {
            let a = j as f64 * panel;
            let b = ((j + 1) as f64 * panel).min(k_max);
            let (v, _) = adaptive_gk(&g, a, b, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
            acc += v;
        }
        samples.push((d, acc));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<C64> = samples.iter().map(|s| s.1).collect();
    let estimates: Vec<C64> = (1..=xs.len()).map(|n| neville_at_zero(&xs[..n], &ys[..n])).collect();
    let value = *estimates.last().expect("at least one delta");
    let n = estimates.len();
    let correction = if n >= 2 { (estimates[n - 1] - estimates[n - 2]).norm() } else { 0.0 };
    if n >= 3 {
        let prev = (estimates[n - 2] - estimates[n - 3]).norm();
        let floor = 1e-6 * value.norm() + spec.abs_tol;
        if correction > prev && correction > floor {
            return Err(Error::Convergence(format!(
                "extrapolation corrections grow: last {correction:.3e} after {prev:.3e}; estimates {estimates:?}"
            )));
        }
    }
    Ok(RegulatedIntegral { value, samples, estimates, correction })
}
