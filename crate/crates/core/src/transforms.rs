//! Foldy wave functions f(ε, s, ·) and the 𝔘 operators that produce them.
//!
//! The spin label s of f(ε, s, ·) is carried as a Cartesian component index:
//! (s¹, s², s³) = (+1, −1, 0) correspond to the x, y, z components of 𝔘_{ε,+}A_ε.

use crate::error::{Error, Result};
use crate::fields::{DiscreteModeField, FieldInitialData, ModeData, Normalization};
use crate::mode_algebra::{helicity_matrix, spatial, Chirality, Mat3, MetricParams, Momentum3, PhysicsConfig, Vec3c, FourVec};
use crate::C64;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UOperators {
    pub u: Mat3,
    pub u_inv: Mat3,
    /// 𝔘_{ε,ε′} indexed [ε][ε′].
    pub u_ee: [[Mat3; 2]; 2],
    /// 𝔘_{ε,+}⁻¹ indexed [ε].
    pub u_ee_plus_inv: [Mat3; 2],
}

pub fn u_operators(k: &Momentum3, cfg: &PhysicsConfig, params: &MetricParams) -> Result<UOperators> {
    let h = helicity_matrix(k)?;
    let h2 = h * h;
    let id = Mat3::identity();
    let m = cfg.m;
    let w = k.omega(m);
    let q = w.sqrt();
    let u = h2 * re(q - m / q) + id * re(m / q);
    let u_inv = h2 * re(1.0 / q - q / m) + id * re(q / m);
    let mut u_ee = [[Mat3::zeros(); 2]; 2];
    let mut u_ee_plus_inv = [Mat3::zeros(); 2];
    for e in Chirality::ALL {
        let a0 = params.alpha[e.index()][2];
        let zp = params.z(e, 1.0);
        let zm = params.z(e, -1.0);
        for ep in Chirality::ALL {
            let s = ep.sign();
            let dq = q.powf(s);
            let mq = m.powf(s) / dq;
            u_ee[e.index()][ep.index()] = h2 * (zp * dq - a0 * mq) + h * (zm * dq) + id * (a0 * mq);
        }
        let tzp = params.z_tilde(e, 1.0);
        let tzm = params.z_tilde(e, -1.0);
        let last = re(q / m) / a0;
        u_ee_plus_inv[e.index()] = h2 * (tzp / q - last) + h * (tzm / q) + id * last;
    }
    Ok(UOperators { u, u_inv, u_ee, u_ee_plus_inv })
}

/// f[ε] at each momentum, as Cartesian 3-vectors, referred to time x⁰₀.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunctionSet {
    pub cfg: PhysicsConfig,
    pub x0_0: f64,
    pub ks: Vec<Momentum3>,
    pub f: Vec<[Vec3c; 2]>,
}

impl WaveFunctionSet {
    /// Σ_{εs} ∫|f|² under the Kronecker convention.
    pub fn norm_squared(&self) -> f64 {
        self.f.iter().flatten().map(|v| v.norm_squared()).sum()
    }

    /// Σ_{εs} ∫ f* f′ for wave functions on the same momentum list.
    pub fn overlap(&self, other: &Self) -> Result<C64> {
        if self.ks != other.ks {
            return Err(Error::Incompatible("wave functions live on different momentum sets".into()));
        }
        Ok(self.f.iter().zip(&other.f).map(|(a, b)| a[0].dotc(&b[0]) + a[1].dotc(&b[1])).sum())
    }

    /// f(ε) → e^{−iεωΔ} f(ε).
    pub fn evolve(&self, dt: f64) -> Self {
        let mut out = self.clone();
        for (k, f) in out.ks.iter().zip(out.f.iter_mut()) {
            let w = k.omega(self.cfg.m);
            for e in Chirality::ALL {
                f[e.index()] *= C64::from_polar(1.0, -e.sign() * w * dt);
            }
        }
        out.x0_0 += dt;
        out
    }

    /// (k·S) f, the wave-function form of p₀·s₀.
    pub fn apply_momentum_dot_spin(&self) -> Self {
        let mut out = self.clone();
        for (k, f) in out.ks.iter().zip(out.f.iter_mut()) {
            let kc = k.complex();
            for v in f.iter_mut() {
                *v = kc.cross(v) * C64::new(0.0, 1.0);
            }
        }
        out
    }
}

/// f(ε, ·) = √(κ/M) 𝔘_{ε,+} A_ε(x⁰₀).
pub fn to_wavefunction(field: &DiscreteModeField, params: &MetricParams, x0_0: f64) -> Result<WaveFunctionSet> {
    let cfg = field.cfg;
    let s = (cfg.kappa / cfg.m).sqrt();
    let mut f = Vec::with_capacity(field.len());
    for (j, md) in field.modes.iter().enumerate() {
        let ops = u_operators(&md.k, &cfg, params)?;
        let mut pair = [Vec3c::zeros(); 2];
        for e in Chirality::ALL {
            let a = spatial(&field.sector_amplitude(j, e, x0_0)?);
            pair[e.index()] = ops.u_ee[e.index()][0] * a * re(s);
        }
        f.push(pair);
    }
    Ok(WaveFunctionSet { cfg, x0_0, ks: field.ks(), f })
}

/// Same map from the (A, E) form: ½√(κ/M)(𝔘₊₊A − i𝔘₊₋E, 𝔘₋₊A + i𝔘₋₋E).
pub fn to_wavefunction_from_ae(field: &DiscreteModeField, params: &MetricParams, x0_0: f64) -> Result<WaveFunctionSet> {
    let cfg = field.cfg;
    let s = 0.5 * (cfg.kappa / cfg.m).sqrt();
    let i = C64::new(0.0, 1.0);
    let mut f = Vec::with_capacity(field.len());
    for (j, md) in field.modes.iter().enumerate() {
        let ops = u_operators(&md.k, &cfg, params)?;
        let d = field.mode_data(j, x0_0)?;
        let a = spatial(&d.a);
        let e = d.electric();
        let plus = (ops.u_ee[0][0] * a - ops.u_ee[0][1] * e * i) * re(s);
        let minus = (ops.u_ee[1][0] * a + ops.u_ee[1][1] * e * i) * re(s);
        f.push([plus, minus]);
    }
    Ok(WaveFunctionSet { cfg, x0_0, ks: field.ks(), f })
}

/// Initial data of the field whose wave function is `wf`.
pub fn wavefunction_initial_data(wf: &WaveFunctionSet, params: &MetricParams) -> Result<FieldInitialData> {
    let cfg = wf.cfg;
    let i = C64::new(0.0, 1.0);
    let smk = (cfg.m * cfg.kappa).sqrt();
    let smk_ratio = (cfg.m / cfg.kappa).sqrt();
    let (ap0, am0) = (params.alpha[0][2], params.alpha[1][2]);
    let mut modes = Vec::with_capacity(wf.ks.len());
    for (k, f) in wf.ks.iter().zip(&wf.f) {
        let ops = u_operators(k, &cfg, params)?;
        let w = k.omega(cfg.m);
        let q = w.sqrt();
        let kc = k.complex();
        let (x1, x2) = (f[0], f[1]);
        let a0 = kc.dot(&(x1 / ap0 - x2 / am0)) / (q * smk);
        let a0dot = -i * kc.dot(&(x1 / ap0 + x2 / am0)) * (q / smk);
        let p = ops.u_ee_plus_inv[0] * x1;
        let m = ops.u_ee_plus_inv[1] * x2;
        let a = (p + m) * re(smk_ratio);
        let adot = (p - m) * (-i * smk_ratio * w);
        modes.push(ModeData { k: *k, a: FourVec::new(a0, a[0], a[1], a[2]), adot: FourVec::new(a0dot, adot[0], adot[1], adot[2]) });
    }
    Ok(FieldInitialData { cfg, x0: wf.x0_0, modes })
}

/// Inverse of `to_wavefunction`.
pub fn from_wavefunction(wf: &WaveFunctionSet, params: &MetricParams, normalization: Normalization) -> Result<DiscreteModeField> {
    DiscreteModeField::from_initial_data(&wavefunction_initial_data(wf, params)?, normalization)
}

/// The map U_𝔞 sending a field of the 𝔞 = 1 space to the field of the 𝔞-space describing
/// the same state: c_{εh} → c_{εh}/α_{εh}.
pub fn change_of_metric(field: &DiscreteModeField, params: &MetricParams) -> DiscreteModeField {
    field.map_coeffs(|_, e, h, c| c / params.alpha_of(e, h))
}
