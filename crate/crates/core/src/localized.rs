//! Localized Proca states A^{(ε,s)}_y, their radial profiles I₁, I₂, I₃, and the probability
//! density, current and total probability.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fields::{plane_wave_prefactor, DiscreteModeField};
use crate::mode_algebra::{spatial, Chirality, FourVec, MetricParams, PhysicsConfig, Vec3c};
use crate::specfun::{bessel_k, gamma_real, hyp1f2, regulated_radial_integral, tail_integral_k, QuadratureSpec};
use crate::transforms::{u_operators, WaveFunctionSet};
use crate::C64;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// sin(kz)/(kz³) − cos(kz)/z², with its series near k = 0.
fn omega2(k: f64, z: f64) -> f64 {
    let x = k * z;
    let core = if x < 1e-2 {
        let x2 = x * x;
        x2 * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 / 840.0))
    } else {
        x.sin() / x - x.cos()
    };
    core / (z * z)
}

/// Abel-regulator ladder δ_i = min(0.2, Mz/4)·2^{−i}, i = 0..6, in units of 1/M.
pub fn localized_spec(cfg: &PhysicsConfig, z: f64) -> QuadratureSpec {
    let d0 = 0.2f64.min(cfg.m * z / 4.0);
    QuadratureSpec { regulator_deltas: (0..7).map(|i| d0 * 0.5f64.powi(i)).collect(), ..QuadratureSpec::default() }
}

fn check_z(z: f64) -> Result<()> {
    if z == 0.0 {
        return Err(Error::Singularity("the localized state is singular at x = y (z = 0)".into()));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("radial distance must be positive and finite, got {z}")));
    }
    Ok(())
}

/// (I₁, I₂, I₃) at radial distance z and time offset dt = x⁰ − x⁰₀ by regulated quadrature.
pub fn i_integrals(eps: Chirality, z: f64, dt: f64, cfg: &PhysicsConfig, spec: &QuadratureSpec) -> Result<[C64; 3]> {
    i_integrals_damped(eps, z, dt, 0.0, cfg, spec)
}

/// As `i_integrals` with Ω₁ multiplied by e^{−δω}: the profiles of a field whose modes carry
/// the extra factor e^{−δω}. δ = 0 gives the unregulated profiles.
pub fn i_integrals_damped(
    eps: Chirality,
    z: f64,
    dt: f64,
    damping: f64,
    cfg: &PhysicsConfig,
    spec: &QuadratureSpec,
) -> Result<[C64; 3]> {
    check_z(z)?;
    if !(damping >= 0.0) {
        return Err(Error::InvalidParameter(format!("damping must be nonnegative, got {damping}")));
    }
    let m = cfg.m;
    let e = eps.sign();
    let omega1 = |k: f64| {
        let w = (k * k + m * m).sqrt();
        C64::from_polar((-damping * w).exp() / w.sqrt(), -e * dt * w)
    };
    let f1 = |k: f64| omega1(k) * (k * k * omega2(k, z));
    let f2 = |k: f64| {
        let w = (k * k + m * m).sqrt();
        omega1(k) * (k * (k * z).sin() / z + omega2(k, z) * (w / m - 1.0))
    };
    let f3 = |k: f64| {
        let w = (k * k + m * m).sqrt();
        omega1(k) * ((k * (k * z).sin() / z - 3.0 * omega2(k, z)) * (w / m - 1.0))
    };
    let p1 = z / (2.0 * PI * PI * (m * cfg.kappa).sqrt());
    let p23 = (m / cfg.kappa).sqrt() / (2.0 * PI * PI);
    Ok([
        regulated_radial_integral(f1, m, spec)?.value * p1,
        regulated_radial_integral(f2, m, spec)?.value * p23,
        regulated_radial_integral(f3, m, spec)?.value * p23,
    ])
}

/// C_s(u) = ∫₀^∞ cos(uk)(1+k²)^{−s} dk and its first two u-derivatives.
fn c_family(s: f64, u: f64) -> Result<[f64; 3]> {
    let nu = s - 0.5;
    let pre = PI.sqrt() / gamma_real(s) * 2f64.powf(-nu);
    let k = |n: f64| bessel_k(n.abs(), u);
    let c0 = pre * u.powf(nu) * k(nu)?;
    let c1 = -pre * u.powf(nu) * k(nu - 1.0)?;
    let c2 = -pre * (u.powf(nu - 1.0) * k(nu - 1.0)? - u.powf(nu) * k(nu - 2.0)?);
    Ok([c0, c1, c2])
}

/// Dimensionless profiles Î_j(u) for M = κ = 1; I_j(z) = √(M/κ) M^{5/2} Î_j(Mz).
fn i_hat(u: f64) -> Result<[f64; 3]> {
    let cp = c_family(0.25, u)?;
    let cm = c_family(-0.25, u)?;
    let cg = [cm[0] - cp[0], cm[1] - cp[1]];
    // S_g = ∫ [(1+k²)^{1/4} − (1+k²)^{−1/4}] sin(uk)/k dk.
    let a = PI.sqrt() * 2f64.powf(0.75) / gamma_real(-0.25);
    let b = PI.sqrt() * 2f64.powf(0.25) / gamma_real(0.25);
    let sg = -(a * tail_integral_k(0.75, u)? - b * tail_integral_k(0.25, u)?);
    let norm = 2.0 * PI * PI;
    let i1 = u * (-cp[1] / u.powi(3) + cp[2] / (u * u)) / norm;
    let i2 = (-cp[1] / u + sg / u.powi(3) - cg[0] / (u * u)) / norm;
    let i3 = (-cg[1] / u - 3.0 * (sg / u.powi(3) - cg[0] / (u * u))) / norm;
    Ok([i1, i2, i3])
}

/// Closed forms of (I₁, I₂, I₃) at x⁰ = x⁰₀ in terms of K_{±1/4}, K_{±3/4}, K_{5/4}, K_{7/4}
/// and integrals of K.
pub fn i_closed(z: f64, cfg: &PhysicsConfig) -> Result<[f64; 3]> {
    check_z(z)?;
    let m = cfg.m;
    let scale = (m / cfg.kappa).sqrt() * m.powf(2.5);
    Ok(i_hat(m * z)?.map(|v| v * scale))
}

/// The ₁F₂-based closed forms. I₁ agrees with `i_closed`; I₂ and I₃ in this form do not
/// match their defining integrals and are kept for comparison only.
pub fn i_closed_printed(z: f64, cfg: &PhysicsConfig) -> Result<[f64; 3]> {
    check_z(z)?;
    let m = cfg.m;
    let u = m * z;
    let g = gamma_real(0.25);
    let pref = (m / cfg.kappa).sqrt() / (2f64.powf(0.75) * PI.powf(1.5) * g) * (m / z).powf(1.25);
    let k = |n: f64| bessel_k(n, u);
    let q = u * u / 4.0;
    let f = |a: f64, b1: f64, b2: f64| hyp1f2(a, b1, b2, q);
    let i1 = pref * (2.5 / u * k(1.25)? + k(0.25)?);
    let i2 = pref
        * (k(1.25)? + k(0.25)? / u + g * g / (4.0 * PI * u.powf(1.5)) * k(0.75)?
            + u.powf(-0.75) * (2.0 * PI / g * f(0.5, 1.25, 1.5)? + g.powi(3) / (3.0 * PI * 2f64.powf(1.75)) * f(0.5, 1.5, 1.75)?)
            + g / u.powf(1.25) * (f(0.25, 0.25, 0.75)? / (2f64.powf(0.75) * u) - 2f64.powf(0.25) * f(0.25, 0.75, 1.25)?));
    let i3 = pref
        * (3.0 * k(0.25)? / u + k(1.25)? / u.powf(1.25)
            + g * g / (4.0 * PI * u.sqrt()) * (k(1.75)? + 3.0 * k(0.75)? / u)
            + (2.0 * u).powf(-0.75) * (12.0 * PI / g * f(0.5, 1.25, 1.5)? + g.powi(3) / (2.0 * PI) * f(0.5, 1.5, 1.75)?)
            + 3.0 * g / u.powf(1.25) * (f(-0.25, 0.25, 0.75)? / (2f64.powf(0.75) * u) + 2f64.powf(0.25) * f(0.25, 0.75, 1.25)?));
    Ok([i1, i2, i3])
}

/// One row of the profile table: closed-form and quadrature values at Mz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub mz: f64,
    pub closed: [f64; 3],
    pub quadrature: [f64; 3],
}

/// Profiles at x⁰ = x⁰₀ for each Mz.
pub fn profile_table(mz: &[f64], cfg: &PhysicsConfig) -> Result<Vec<ProfileRow>> {
    profile_table_for(Chirality::Plus, mz, cfg)
}

/// Profiles with the quadrature column taken in chirality sector ε.
pub fn profile_table_for(eps: Chirality, mz: &[f64], cfg: &PhysicsConfig) -> Result<Vec<ProfileRow>> {
    mz.iter()
        .map(|&u| {
            let z = u / cfg.m;
            let closed = i_closed(z, cfg)?;
            let q = i_integrals(eps, z, 0.0, cfg, &localized_spec(cfg, z))?;
            Ok(ProfileRow { mz: u, closed, quadrature: q.map(|c| c.re) })
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("Mz,I1_closed,I2_closed,I3_closed,I1_quad,I2_quad,I3_quad\n");
    for r in rows {
        let vals: Vec<String> =
            std::iter::once(r.mz).chain(r.closed).chain(r.quadrature).map(|v| format!("{v:.16e}")).collect();
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    out
}

/// A localized state A^{(ε,s)}_y evaluated at a list of points (x⁰, x).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedStateQuery {
    pub epsilon: Chirality,
    /// Spin label s ∈ {+1, −1, 0}, i.e. the x, y, z Cartesian component.
    pub s: i32,
    pub y: [f64; 3],
    pub x0_0: f64,
    pub points: Vec<(f64, [f64; 3])>,
}

/// Cartesian index of the spin label.
pub fn spin_label_index(s: i32) -> Result<usize> {
    match s {
        1 => Ok(0),
        -1 => Ok(1),
        0 => Ok(2),
        _ => Err(Error::InvalidParameter(format!("spin label must be +1, -1 or 0, got {s}"))),
    }
}

/// Assembles A⁰ and vec A from (I₁, I₂, I₃) and the polar/azimuthal angles of x − y.
pub fn assemble_localized(eps: Chirality, s: i32, theta: f64, phi: f64, i: [C64; 3]) -> Result<FourVec> {
    let [i1, i2, i3] = i;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let v1 = i2 + i3 * (st * st * cp * cp);
    let v2 = i3 * (0.5 * st * st * (2.0 * phi).sin());
    let v3 = i3 * (0.5 * (2.0 * theta).sin() * cp);
    let v4 = i2 + i3 * (st * st * sp * sp);
    let v5 = i3 * (0.5 * (2.0 * theta).sin() * sp);
    let v6 = i2 + i3 * (ct * ct);
    let ie = C64::new(0.0, eps.sign());
    Ok(match spin_label_index(s)? {
        0 => FourVec::new(ie * st * cp * i1, v1, v2, v3),
        1 => FourVec::new(ie * st * sp * i1, v2, v4, v5),
        _ => FourVec::new(ie * ct * i1, v3, v5, v6),
    })
}

/// A^{(ε,s)}_y(x⁰, x) at each query point by radial quadrature.
pub fn localized_field(query: &LocalizedStateQuery, cfg: &PhysicsConfig) -> Result<Vec<FourVec>> {
    localized_field_damped(query, 0.0, cfg)
}

/// `localized_field` for the state whose modes carry the extra factor e^{−δω}.
pub fn localized_field_damped(query: &LocalizedStateQuery, damping: f64, cfg: &PhysicsConfig) -> Result<Vec<FourVec>> {
    spin_label_index(query.s)?;
    query
        .points
        .iter()
        .map(|(x0, x)| {
            let d = [x[0] - query.y[0], x[1] - query.y[1], x[2] - query.y[2]];
            let z = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            check_z(z)?;
            let theta = (d[2] / z).clamp(-1.0, 1.0).acos();
            let phi = d[1].atan2(d[0]);
            let i = i_integrals_damped(query.epsilon, z, x0 - query.x0_0, damping, cfg, &localized_spec(cfg, z))?;
            assemble_localized(query.epsilon, query.s, theta, phi, i)
        })
        .collect()
}

/// Value and covariant derivatives ∂_μ, ∂_μ∂_ν of a complex 3-vector plane-wave sum.
#[derive(Debug, Clone, Copy)]
struct VJet {
    val: Vec3c,
    d: [Vec3c; 4],
    dd: [[Vec3c; 4]; 4],
}

impl VJet {
    fn zero() -> Self {
        Self { val: Vec3c::zeros(), d: [Vec3c::zeros(); 4], dd: [[Vec3c::zeros(); 4]; 4] }
    }

    fn add(&mut self, v: Vec3c, kl: &[f64; 4]) {
        self.val += v;
        for m in 0..4 {
            self.d[m] += v * C64::new(0.0, kl[m]);
            for n in 0..4 {
                self.dd[m][n] += v * re(-kl[m] * kl[n]);
            }
        }
    }
}

/// Per-wave data for pointwise densities and currents.
#[derive(Debug, Clone)]
struct WaveData {
    kl: [f64; 4],
    eps: f64,
    /// 𝔘 a, 𝔘₊₊ a, 𝔘₋₊ a for the spatial amplitude a (including (2π)^{−3/2}).
    ua: Vec3c,
    upp: Vec3c,
    ump: Vec3c,
    omega: f64,
}

/// Pointwise ϱ, 𝒥^μ and ∂_μ𝒥^μ for a fixed field and metric choice.
#[derive(Debug, Clone)]
pub struct DensityEvaluator {
    cfg: PhysicsConfig,
    params: MetricParams,
    waves: Vec<WaveData>,
}

impl DensityEvaluator {
    pub fn new(field: &DiscreteModeField, params: &MetricParams) -> Result<Self> {
        let cfg = field.cfg;
        let mut waves = Vec::with_capacity(2 * field.len());
        for w in field.plane_waves()? {
            let ops = u_operators(&w.k, &cfg, params)?;
            let a = spatial(&w.amp);
            let kl = w.k_lower();
            waves.push(WaveData {
                kl,
                eps: w.eps.sign(),
                ua: ops.u * a,
                upp: ops.u_ee[0][0] * a,
                ump: ops.u_ee[1][0] * a,
                omega: w.omega,
            });
        }
        Ok(Self { cfg, params: *params, waves })
    }

    fn phase(w: &WaveData, x0: f64, x: &[f64; 3]) -> C64 {
        let arg = w.kl[0] * x0 + w.kl[1] * x[0] + w.kl[2] * x[1] + w.kl[3] * x[2];
        C64::from_polar(1.0, arg)
    }

    /// ϱ = (κ/2M){|𝔘A|² + |𝔘A_c|²} with A_c = i D^{−1/2} Ȧ; valid for 𝔞 = 1.
    pub fn density_unit(&self, x0: f64, x: &[f64; 3]) -> f64 {
        let (mut a, mut ac) = (Vec3c::zeros(), Vec3c::zeros());
        for w in &self.waves {
            let v = w.ua * Self::phase(w, x0, x);
            a += v;
            ac += v * re(w.eps);
        }
        self.cfg.kappa / (2.0 * self.cfg.m) * (a.norm_squared() + ac.norm_squared())
    }

    /// ϱ_𝔞 = (κ/4M){|𝔘₊₊A|² + |𝔘₋₊A|² + |𝔘₊₊A_c|² + |𝔘₋₊A_c|²
    ///              + 2Re[(𝔘₊₊A)*·𝔘₊₊A_c − (𝔘₋₊A)*·𝔘₋₊A_c]}.
    pub fn density_general(&self, x0: f64, x: &[f64; 3]) -> f64 {
        let z = Vec3c::zeros();
        let (mut pa, mut pc, mut ma, mut mc) = (z, z, z, z);
        for w in &self.waves {
            let ph = Self::phase(w, x0, x);
            pa += w.upp * ph;
            pc += w.upp * (ph * w.eps);
            ma += w.ump * ph;
            mc += w.ump * (ph * w.eps);
        }
        let cross = pa.dotc(&pc).re - ma.dotc(&mc).re;
        self.cfg.kappa / (4.0 * self.cfg.m)
            * (pa.norm_squared() + ma.norm_squared() + pc.norm_squared() + mc.norm_squared() + 2.0 * cross)
    }

    pub fn density(&self, x0: f64, x: &[f64; 3]) -> f64 {
        if self.params.is_unit() {
            self.density_unit(x0, x)
        } else {
            self.density_general(x0, x)
        }
    }

    /// Jets of 𝔘A, 𝔘A_c, D⁻¹∂^μ𝔘Ȧ, D⁻¹∂^μ𝔘Ȧ_c and W = D^{−1/2}(D^{1/2}+M)⁻¹𝔘Ȧ, W_c.
    fn current_jets(&self, x0: f64, x: &[f64; 3]) -> ([VJet; 2], [[VJet; 4]; 2], [VJet; 2]) {
        let mut a = [VJet::zero(); 2];
        let mut q = [[VJet::zero(); 4]; 2];
        let mut wj = [VJet::zero(); 2];
        let m = self.cfg.m;
        let i = C64::new(0.0, 1.0);
        for w in &self.waves {
            let v = w.ua * Self::phase(w, x0, x);
            let adot = v * C64::new(0.0, -w.eps * w.omega);
            // ∂^0 = −∂_0 and ∂^j = ∂_j.
            let up = [-i * w.kl[0], i * w.kl[1], i * w.kl[2], i * w.kl[3]];
            let wv = adot * re(1.0 / (w.omega * (w.omega + m)));
            for (c, sign) in [(0usize, 1.0), (1, w.eps)] {
                a[c].add(v * re(sign), &w.kl);
                for mu in 0..4 {
                    q[c][mu].add(adot * (up[mu] * sign / (w.omega * w.omega)), &w.kl);
                }
                wj[c].add(wv * re(sign), &w.kl);
            }
        }
        (a, q, wj)
    }

    fn check_unit(&self) -> Result<()> {
        if self.params.is_unit() {
            Ok(())
        } else {
            Err(Error::Unsupported("the probability current is only available for 𝔞 = 1".into()))
        }
    }

    /// 𝒥^μ at (x⁰, x); requires 𝔞 = 1.
    pub fn current(&self, x0: f64, x: &[f64; 3]) -> Result<[f64; 4]> {
        Ok(self.current_and_divergence(x0, x)?.0)
    }

    /// (𝒥^μ, ∂_μ𝒥^μ) at (x⁰, x), differentiated exactly mode by mode; requires 𝔞 = 1.
    pub fn current_and_divergence(&self, x0: f64, x: &[f64; 3]) -> Result<([f64; 4], f64)> {
        self.check_unit()?;
        let (a, q, wj) = self.current_jets(x0, x);
        let pre = self.cfg.kappa / (2.0 * self.cfg.m);
        let mut j = [0.0; 4];
        let mut div = 0.0;
        for c in 0..2 {
            for mu in 0..4 {
                j[mu] += a[c].val.dotc(&q[c][mu].val).re;
                // ∂_μ of the μ-th component.
                div += (a[c].d[mu].dotc(&q[c][mu].val) + a[c].val.dotc(&q[c][mu].d[mu])).re;
            }
            let divw = |jet: &VJet| (0..3).map(|l| jet.d[l + 1][l]).sum::<C64>();
            let divw_d = |jet: &VJet, nu: usize| (0..3).map(|l| jet.dd[nu][l + 1][l]).sum::<C64>();
            let (av, ww) = (&a[c], &wj[c]);
            for i in 0..3 {
                let mu = i + 1;
                let adv: C64 = (0..3).map(|l| av.val[l].conj() * ww.d[l + 1][i]).sum();
                j[mu] += (av.val[i].conj() * divw(ww) - adv).re;
                let d_first = av.d[mu][i].conj() * divw(ww) + av.val[i].conj() * divw_d(ww, mu);
                let d_second: C64 = (0..3)
                    .map(|l| av.d[mu][l].conj() * ww.d[l + 1][i] + av.val[l].conj() * ww.dd[mu][l + 1][i])
                    .sum();
                div += (d_first - d_second).re;
            }
        }
        Ok((j.map(|v| v * pre), div * pre))
    }
}

/// ϱ(x⁰, x): the 𝔞 = 1 form when params are unit, the general form otherwise.
pub fn probability_density(field: &DiscreteModeField, x0: f64, x: &[f64; 3], params: &MetricParams) -> Result<f64> {
    Ok(DensityEvaluator::new(field, params)?.density(x0, x))
}

/// 𝒥^μ(x⁰, x) for 𝔞 = 1.
pub fn probability_current(field: &DiscreteModeField, x0: f64, x: &[f64; 3], params: &MetricParams) -> Result<[f64; 4]> {
    if !params.is_unit() {
        return Err(Error::Unsupported("the probability current is only available for 𝔞 = 1".into()));
    }
    DensityEvaluator::new(field, params)?.current(x0, x)
}

/// ∂_μ𝒥^μ(x⁰, x) for 𝔞 = 1.
pub fn current_divergence(field: &DiscreteModeField, x0: f64, x: &[f64; 3], params: &MetricParams) -> Result<f64> {
    if !params.is_unit() {
        return Err(Error::Unsupported("the probability current is only available for 𝔞 = 1".into()));
    }
    Ok(DensityEvaluator::new(field, params)?.current_and_divergence(x0, x)?.1)
}

/// Σ_{ε,s}|f(ε, s, x⁰, x)|², the density built from the wave function in position space.
pub fn density_from_wavefunction(wf: &WaveFunctionSet, x0: f64, x: &[f64; 3]) -> f64 {
    let pre = plane_wave_prefactor();
    let mut f = [Vec3c::zeros(); 2];
    for (k, fk) in wf.ks.iter().zip(&wf.f) {
        let w = k.omega(wf.cfg.m);
        for e in Chirality::ALL {
            let arg = k.0.x * x[0] + k.0.y * x[1] + k.0.z * x[2] - e.sign() * w * (x0 - wf.x0_0);
            f[e.index()] += fk[e.index()] * C64::from_polar(pre, arg);
        }
    }
    f[0].norm_squared() + f[1].norm_squared()
}

/// ∫ϱ d³x at x⁰, from the general density with plane-wave orthogonality
/// ∫φ_k*φ_k′ = δ_{kk′}.
pub fn total_probability(field: &DiscreteModeField, x0: f64, params: &MetricParams) -> Result<f64> {
    let cfg = field.cfg;
    let mut total = 0.0;
    for (j, md) in field.modes.iter().enumerate() {
        let ops = u_operators(&md.k, &cfg, params)?;
        let ap = spatial(&field.sector_amplitude(j, Chirality::Plus, x0)?);
        let am = spatial(&field.sector_amplitude(j, Chirality::Minus, x0)?);
        let (a, ac) = (ap + am, ap - am);
        let (pa, pc) = (ops.u_ee[0][0] * a, ops.u_ee[0][0] * ac);
        let (ma, mc) = (ops.u_ee[1][0] * a, ops.u_ee[1][0] * ac);
        let cross = pa.dotc(&pc).re - ma.dotc(&mc).re;
        total += pa.norm_squared() + ma.norm_squared() + pc.norm_squared() + mc.norm_squared() + 2.0 * cross;
    }
    Ok(total * cfg.kappa / (4.0 * cfg.m))
}
