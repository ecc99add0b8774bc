//! Inner products on Proca fields under the Kronecker convention:
//! ∫d³x φ_k* φ_k′ = 1 when k = k′ exactly, 0 otherwise.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::Result;
use crate::fields::{momentum_key, DiscreteModeField, ModeData};
use crate::mode_algebra::{helicity_matrix, spatial, Chirality, Helicity, MetricParams, Vec3c};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerProductKind {
    /// Indefinite Proca product i g ∫{A*·(−E′) + E*·A′} with g = κ/(2M).
    Sigma3,
    /// Positive-definite product of the 𝔞 = 1 metric.
    Canonical,
    /// General positive-definite product with parameters α_{εh}.
    General(MetricParams),
}

/// Pairs (j, j′) of modes of `a` and `b` carrying the same momentum.
pub fn matched_modes(a: &DiscreteModeField, b: &DiscreteModeField) -> Vec<(usize, usize)> {
    let index: HashMap<_, _> = b.modes.iter().enumerate().map(|(j, m)| (momentum_key(&m.k), j)).collect();
    a.modes
        .iter()
        .enumerate()
        .filter_map(|(j, m)| index.get(&momentum_key(&m.k)).map(|&jp| (j, jp)))
        .collect()
}

fn dotc(a: &Vec3c, b: &Vec3c) -> C64 {
    a.dotc(b)
}

/// Mode-level integrand of the chosen product.
pub fn mode_inner(kind: &InnerProductKind, x: &ModeData, y: &ModeData, m: f64, kappa: f64) -> Result<C64> {
    let w = x.k.omega(m);
    let pref = C64::new(kappa / (2.0 * m), 0.0);
    let i = C64::new(0.0, 1.0);
    let (a, e) = (spatial(&x.a), x.electric());
    let (ap, ep) = (spatial(&y.a), y.electric());
    Ok(match kind {
        InnerProductKind::Sigma3 => pref * i * (dotc(&e, &ap) - dotc(&a, &ep)),
        InnerProductKind::Canonical => {
            let epd = y.electric_dot(m);
            let apd = spatial(&y.adot);
            pref * (dotc(&a, &epd) - dotc(&e, &apd)) / w
        }
        InnerProductKind::General(p) => {
            let h = helicity_matrix(&x.k)?;
            let tp = p.theta(1.0, &h);
            let tm = p.theta(-1.0, &h);
            let epd = y.electric_dot(m);
            let apd = spatial(&y.adot);
            let first = (dotc(&a, &(tp * epd)) - dotc(&e, &(tp * apd))) / w;
            let second = dotc(&a, &(tm * ep)) - dotc(&e, &(tm * ap));
            pref * (first - i * second)
        }
    })
}

/// ((A, A′)) at time x⁰, evaluated from the position-space formulas.
pub fn inner(kind: &InnerProductKind, a: &DiscreteModeField, b: &DiscreteModeField, x0: f64) -> Result<C64> {
    a.compatible(b)?;
    if let InnerProductKind::General(p) = kind {
        MetricParams::new(p.alpha)?;
    }
    let mut sum = C64::new(0.0, 0.0);
    for (j, jp) in matched_modes(a, b) {
        let x = a.mode_data(j, x0)?;
        let y = b.mode_data(jp, x0)?;
        sum += mode_inner(kind, &x, &y, a.cfg.m, a.cfg.kappa)?;
    }
    Ok(sum)
}

/// Mode-space form (κ/M) Σ 𝔞_{εh} ω (N c)* (N′ c′).
pub fn inner_mode_sum(params: &MetricParams, a: &DiscreteModeField, b: &DiscreteModeField) -> Result<C64> {
    a.compatible(b)?;
    let cfg = a.cfg;
    let mut sum = C64::new(0.0, 0.0);
    for (j, jp) in matched_modes(a, b) {
        let w = a.omega(j);
        let (x, y) = (a.amplitudes(j), b.amplitudes(jp));
        for e in Chirality::ALL {
            for h in Helicity::ALL {
                let (ei, hi) = (e.index(), h.index());
                sum += x[ei][hi].conj() * y[ei][hi] * (params.frak_a(e, h) * w);
            }
        }
    }
    Ok(sum * (cfg.kappa / cfg.m))
}

/// Σ_{εh} ε 𝔞_{εh} ((A_{εh}, A′_{εh}))_{Σ₃}.
pub fn decompose_as_sigma3(a: &DiscreteModeField, b: &DiscreteModeField, params: &MetricParams, x0: f64) -> Result<C64> {
    a.compatible(b)?;
    let mut sum = C64::new(0.0, 0.0);
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            let keep = |f: &DiscreteModeField| f.map_coeffs(|_, e2, h2, c| if (e2, h2) == (e, h) { c } else { C64::new(0.0, 0.0) });
            let s = inner(&InnerProductKind::Sigma3, &keep(a), &keep(b), x0)?;
            sum += s * (e.sign() * params.frak_a(e, h));
        }
    }
    Ok(sum)
}

/// G_{ij} = ((f_i, f_j)).
pub fn gram(kind: &InnerProductKind, fields: &[DiscreteModeField], x0: f64) -> Result<DMatrix<C64>> {
    let n = fields.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = inner(kind, &fields[i], &fields[j], x0)?;
            g[(i, j)] = v;
            if i != j {
                g[(j, i)] = v.conj();
            }
        }
    }
    Ok(g)
}

/// ((A, A)) as a real number (imaginary part discarded).
pub fn norm_squared(kind: &InnerProductKind, a: &DiscreteModeField, x0: f64) -> Result<f64> {
    Ok(inner(kind, a, a, x0)?.re)
}
