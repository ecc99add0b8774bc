//! Lorentz boosts of mode fields, the conserved current J^μ, the general-𝔞 density J⁰_𝔞,
//! and boost invariance of inner products.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fields::{jet, momentum_key, DiscreteModeField, Jet, Mode, PlaneWave};
use crate::inner::{inner, InnerProductKind};
use crate::mode_algebra::{
    helicity_matrix, minkowski_conj, polarization_basis, spatial, Chirality, FourVec, Helicity, Mat3, MetricParams,
    Momentum3, Vec3c,
};
use crate::C64;

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Λ^μ_ν with x′ = Λx for a frame moving with velocity β.
pub type Lorentz = [[f64; 4]; 4];

fn check_beta(beta: &[f64; 3]) -> Result<f64> {
    let b2: f64 = beta.iter().map(|b| b * b).sum();
    if !b2.is_finite() || b2 >= 1.0 {
        return Err(Error::Domain(format!("boost speed must be below 1, got |β| = {}", b2.sqrt())));
    }
    Ok(b2)
}

/// Finite boost: x′⁰ = γ(x⁰ − β·x), x′ = x + (γ−1)(β̂·x)β̂ − γβx⁰.
pub fn boost_matrix(beta: &[f64; 3]) -> Result<Lorentz> {
    let b2 = check_beta(beta)?;
    let g = 1.0 / (1.0 - b2).sqrt();
    let mut l = [[0.0; 4]; 4];
    l[0][0] = g;
    for i in 0..3 {
        l[0][i + 1] = -g * beta[i];
        l[i + 1][0] = -g * beta[i];
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            let outer = if b2 > 0.0 { (g - 1.0) * beta[i] * beta[j] / b2 } else { 0.0 };
            l[i + 1][j + 1] = id + outer;
        }
    }
    Ok(l)
}

/// First-order boost: x′⁰ = x⁰ − β·x, x′ = x − βx⁰.
pub fn boost_matrix_first_order(beta: &[f64; 3]) -> Result<Lorentz> {
    check_beta(beta)?;
    let mut l = [[0.0; 4]; 4];
    for (m, row) in l.iter_mut().enumerate() {
        row[m] = 1.0;
    }
    for i in 0..3 {
        l[0][i + 1] = -beta[i];
        l[i + 1][0] = -beta[i];
    }
    Ok(l)
}

pub fn apply_lorentz(l: &Lorentz, v: &FourVec) -> FourVec {
    let mut out = FourVec::zeros();
    for m in 0..4 {
        for n in 0..4 {
            out[m] += v[n] * l[m][n];
        }
    }
    out
}

pub fn apply_lorentz_real(l: &Lorentz, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for m in 0..4 {
        for n in 0..4 {
            out[m] += l[m][n] * v[n];
        }
    }
    out
}

/// Collinear velocity addition (β₁ + β₂)/(1 + β₁β₂).
pub fn velocity_addition(b1: f64, b2: f64) -> f64 {
    (b1 + b2) / (1.0 + b1 * b2)
}

/// Each chirality sector of each mode moves to k′ = spatial part of Λ(εω, k); its
/// four-vector amplitude is mapped by Λ, multiplied by `weight(ω, ω′)` and re-expanded in
/// {u_{ε,h′}(k′)}. Sectors with vanishing coefficients are dropped.
fn transform_modes<W: Fn(f64, f64) -> f64>(field: &DiscreteModeField, l: &Lorentz, weight: W) -> Result<DiscreteModeField> {
    let cfg = field.cfg;
    let mut index: HashMap<[u64; 3], usize> = HashMap::new();
    let mut modes: Vec<Mode> = Vec::new();
    let mut filled: Vec<[bool; 2]> = Vec::new();
    for j in 0..field.len() {
        let w = field.omega(j);
        let k = field.modes[j].k.0;
        for e in Chirality::ALL {
            if field.modes[j].c[e.index()].iter().all(|c| c.norm() == 0.0) {
                continue;
            }
            let p = apply_lorentz_real(l, &[e.sign() * w, k.x, k.y, k.z]);
            if p[0] * e.sign() <= 0.0 {
                return Err(Error::Domain("boost reversed the sign of a frequency".into()));
            }
            let kp = Momentum3::new(p[1], p[2], p[3]);
            if kp.norm() == 0.0 {
                return Err(Error::Representation("a boosted mode is at rest and has no helicity frame".into()));
            }
            let wp = kp.omega(cfg.m);
            let amp = apply_lorentz(l, &field.sector_amplitude(j, e, 0.0)?) * C64::new(weight(w, wp), 0.0);
            let pol = polarization_basis(&kp, e, &cfg)?;
            let mut c = [C64::new(0.0, 0.0); 3];
            for h in Helicity::ALL {
                c[h.index()] = minkowski_conj(&pol.u[h.index()], &amp) / field.normalization.factor(&cfg, e, h);
            }
            let key = momentum_key(&kp);
            let slot = match index.get(&key) {
                Some(&s) => s,
                None => {
                    modes.push(Mode { k: kp, c: [[C64::new(0.0, 0.0); 3]; 2] });
                    filled.push([false; 2]);
                    index.insert(key, modes.len() - 1);
                    modes.len() - 1
                }
            };
            if filled[slot][e.index()] {
                return Err(Error::Representation(format!("two modes collide at k′ = {:?} after the boost", kp.0)));
            }
            filled[slot][e.index()] = true;
            modes[slot].c[e.index()] = c;
        }
    }
    DiscreteModeField::new(cfg, modes, field.normalization)
}

/// The field seen in the boosted frame, A′(x′) = ΛA(Λ⁻¹x′), mode by mode.
pub fn lorentz_transform_field(field: &DiscreteModeField, beta: &[f64; 3]) -> Result<DiscreteModeField> {
    transform_modes(field, &boost_matrix(beta)?, |_, _| 1.0)
}

/// Boost under the unit-weight mode convention: the Lorentz-transformed field with each
/// coefficient rescaled by √(ω/ω′), which absorbs the invariant measure d³k/ω.
pub fn boost_field(field: &DiscreteModeField, beta: &[f64; 3]) -> Result<DiscreteModeField> {
    transform_modes(field, &boost_matrix(beta)?, |w, wp| (w / wp).sqrt())
}

/// `boost_field` with Λ truncated at first order in β.
pub fn boost_field_first_order(field: &DiscreteModeField, beta: &[f64; 3]) -> Result<DiscreteModeField> {
    transform_modes(field, &boost_matrix_first_order(beta)?, |w, wp| (w / wp).sqrt())
}

/// |((A, A′)) − ((ΛA, ΛA′))| for the general product, both evaluated at x⁰ = 0 in their frames.
pub fn boost_invariance_check(a: &DiscreteModeField, b: &DiscreteModeField, beta: &[f64; 3], params: &MetricParams) -> Result<f64> {
    let kind = InnerProductKind::General(*params);
    let before = inner(&kind, a, b, 0.0)?;
    let after = inner(&kind, &boost_field(a, beta)?, &boost_field(b, beta)?, 0.0)?;
    Ok((before - after).norm())
}

fn lower(v: &FourVec) -> FourVec {
    FourVec::new(-v[0], v[1], v[2], v[3])
}

/// F^{νμ} = ∂^νA^μ − ∂^μA^ν and its derivatives ∂_ρF^{νμ}.
fn field_strength(j: &Jet) -> ([[C64; 4]; 4], [[[C64; 4]; 4]; 4]) {
    let mut f = [[C64::new(0.0, 0.0); 4]; 4];
    let mut df = [[[C64::new(0.0, 0.0); 4]; 4]; 4];
    for n in 0..4 {
        for m in 0..4 {
            f[n][m] = j.d[n][m] * ETA[n] - j.d[m][n] * ETA[m];
            for r in 0..4 {
                df[r][n][m] = j.dd[r][n][m] * ETA[n] - j.dd[r][m][n] * ETA[m];
            }
        }
    }
    (f, df)
}

fn amp_c(w: &PlaneWave) -> FourVec {
    // A_c = i D^{−1/2} Ȧ = ε A sector by sector.
    w.amp * C64::new(w.eps.sign(), 0.0)
}

/// J^μ and ∂_μJ^μ from J^μ = (iκ/2M){A_ν* F_c^{νμ} − F^{νμ*} A_{cν}}, all derivatives exact.
pub fn current_and_divergence(field: &DiscreteModeField, x: &[f64; 4]) -> Result<([C64; 4], C64)> {
    let waves = field.plane_waves()?;
    let a = jet(&waves, x, |w| w.amp);
    let ac = jet(&waves, x, amp_c);
    let (f, df) = field_strength(&a);
    let (fc, dfc) = field_strength(&ac);
    let (al, acl) = (lower(&a.val), lower(&ac.val));
    let dal: Vec<FourVec> = (0..4).map(|r| lower(&a.d[r])).collect();
    let dacl: Vec<FourVec> = (0..4).map(|r| lower(&ac.d[r])).collect();
    let mut cur = [C64::new(0.0, 0.0); 4];
    let mut div = C64::new(0.0, 0.0);
    for m in 0..4 {
        for n in 0..4 {
            cur[m] += al[n].conj() * fc[n][m] - f[n][m].conj() * acl[n];
            div += dal[m][n].conj() * fc[n][m] + al[n].conj() * dfc[m][n][m]
                - df[m][n][m].conj() * acl[n]
                - f[n][m].conj() * dacl[m][n];
        }
    }
    let pre = C64::new(0.0, field.cfg.kappa / (2.0 * field.cfg.m));
    Ok((cur.map(|c| c * pre), div * pre))
}

/// J^μ at the spacetime point x = (x⁰, x); 𝔞 = 1.
pub fn current_j(field: &DiscreteModeField, x: &[f64; 4]) -> Result<[C64; 4]> {
    Ok(current_and_divergence(field, x)?.0)
}

/// (|∂_μJ^μ|, local scale Σ_μ|J^μ|).
pub fn continuity_residual(field: &DiscreteModeField, x: &[f64; 4]) -> Result<(f64, f64)> {
    let (j, d) = current_and_divergence(field, x)?;
    Ok((d.norm(), j.iter().map(|c| c.norm()).sum()))
}

/// Per-wave vectors entering J⁰_𝔞: A, E, and the Θ_{±,0}-weighted D^{−1/2}Ė, D^{−1/2}Ȧ, E, A.
struct J0Terms {
    a: Vec3c,
    e: Vec3c,
    tp_edot: Vec3c,
    tp_adot: Vec3c,
    tm_e: Vec3c,
    tm_a: Vec3c,
}

fn j0_terms(w: &PlaneWave, theta: (&Mat3, &Mat3)) -> J0Terms {
    let i = C64::new(0.0, 1.0);
    let eps = w.eps.sign();
    let a = spatial(&w.amp);
    // E = −Ȧ − ∇A⁰ with Ȧ = −iεωA and ∇ → ik.
    let e = a * (i * eps * w.omega) - w.k.complex() * (i * w.amp[0]);
    // D^{−1/2}∂₀ = −iε on a chirality-ε plane wave.
    let m = -i * eps;
    J0Terms { a, e, tp_edot: theta.0 * e * m, tp_adot: theta.0 * a * m, tm_e: theta.1 * e, tm_a: theta.1 * a }
}

fn j0_combine(s: &J0Terms, kappa: f64, m: f64) -> C64 {
    let i = C64::new(0.0, 1.0);
    let first = s.a.dotc(&s.tp_edot) - s.e.dotc(&s.tp_adot);
    let second = s.a.dotc(&s.tm_e) - s.e.dotc(&s.tm_a);
    (first - i * second) * (kappa / (2.0 * m))
}

fn sum_terms<I: Iterator<Item = (J0Terms, C64)>>(it: I) -> J0Terms {
    let z = Vec3c::zeros();
    let mut s = J0Terms { a: z, e: z, tp_edot: z, tp_adot: z, tm_e: z, tm_a: z };
    for (t, ph) in it {
        s.a += t.a * ph;
        s.e += t.e * ph;
        s.tp_edot += t.tp_edot * ph;
        s.tp_adot += t.tp_adot * ph;
        s.tm_e += t.tm_e * ph;
        s.tm_a += t.tm_a * ph;
    }
    s
}

fn thetas(k: &Momentum3, params: &MetricParams) -> Result<(Mat3, Mat3)> {
    let h = helicity_matrix(k)?;
    Ok((params.theta(1.0, &h), params.theta(-1.0, &h)))
}

/// J⁰_𝔞(x) = (κ/2M){A*·Θ₊D^{−1/2}Ė − E*·Θ₊D^{−1/2}Ȧ − i[A*·Θ₋E − E*·Θ₋A]}.
pub fn j0_general(field: &DiscreteModeField, x: &[f64; 4], params: &MetricParams) -> Result<C64> {
    let waves = field.plane_waves()?;
    let terms = waves
        .iter()
        .map(|w| {
            let t = thetas(&w.k, params)?;
            Ok((j0_terms(w, (&t.0, &t.1)), w.phase(x)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(j0_combine(&sum_terms(terms.into_iter()), field.cfg.kappa, field.cfg.m))
}

/// J⁰ = (κ/2M){A*·D^{−1/2}Ė − E*·D^{−1/2}Ȧ}, the 𝔞 = 1 density.
pub fn j0_unit(field: &DiscreteModeField, x: &[f64; 4]) -> Result<C64> {
    j0_general(field, x, &MetricParams::unit())
}

/// ∫J⁰_𝔞 d³x at time x⁰ using ∫φ_k*φ_k′ = δ_{kk′}.
pub fn integrated_j0_general(field: &DiscreteModeField, x0: f64, params: &MetricParams) -> Result<C64> {
    let waves = field.plane_waves()?;
    let pre = crate::fields::plane_wave_prefactor();
    let mut total = C64::new(0.0, 0.0);
    // plane_waves lists the two chirality sectors of each mode consecutively.
    for pair in waves.chunks(2) {
        let t = thetas(&pair[0].k, params)?;
        let terms = pair.iter().map(|w| (j0_terms(w, (&t.0, &t.1)), w.phase(&[x0, 0.0, 0.0, 0.0]) / pre));
        total += j0_combine(&sum_terms(terms), field.cfg.kappa, field.cfg.m);
    }
    Ok(total)
}
