//! PT and C on fields, and the one-parameter gauge group G_𝔞 tied to conservation of the
//! total probability.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::fields::{DiscreteModeField, FieldInitialData, ModeData};
use crate::mode_algebra::{helicity_matrix, spatial, Chirality, FourVec, Helicity, MetricParams, Momentum3};
use crate::C64;

fn parity_conj(v: &FourVec) -> FourVec {
    FourVec::new(-v[0].conj(), v[1].conj(), v[2].conj(), v[3].conj())
}

/// [PT A](x⁰) = (−A⁰(−x⁰)*, A(−x⁰)*). Mode k maps to −k, re-expanded in the basis at −k.
pub fn apply_pt(field: &DiscreteModeField) -> Result<DiscreteModeField> {
    let modes = (0..field.len())
        .map(|j| {
            let md = field.mode_data(j, 0.0)?;
            Ok(ModeData {
                k: Momentum3(md.k.0.map(|x| if x == 0.0 { 0.0 } else { -x })),
                a: parity_conj(&md.a),
                adot: -parity_conj(&md.adot),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteModeField::from_initial_data(&FieldInitialData { cfg: field.cfg, x0: 0.0, modes }, field.normalization)
}

/// [C A](x⁰) = ε A_ε(x⁰) sector by sector.
pub fn apply_c(field: &DiscreteModeField) -> DiscreteModeField {
    field.apply_c()
}

/// C A = i D^{−1/2} Ȧ, built from initial data.
pub fn apply_c_from_time_derivative(field: &DiscreteModeField, x0: f64) -> Result<DiscreteModeField> {
    let i = C64::new(0.0, 1.0);
    let m = field.cfg.m;
    let modes = (0..field.len())
        .map(|j| {
            let md = field.mode_data(j, x0)?;
            let w = md.k.omega(m);
            // d/dx⁰ of iȦ/ω is iÄ/ω = −iωA.
            Ok(ModeData { k: md.k, a: md.adot * (i / w), adot: md.a * (-i * w) })
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteModeField::from_initial_data(&FieldInitialData { cfg: field.cfg, x0, modes }, field.normalization)
}

/// A_{εh} → e^{−iε𝔞_{εh}θ} A_{εh}.
pub fn gauge_transform(field: &DiscreteModeField, theta: f64, params: &MetricParams) -> DiscreteModeField {
    field.map_coeffs(|_, e, h, c| c * C64::from_polar(1.0, -e.sign() * params.frak_a(e, h) * theta))
}

/// Generator (ϑ_{+,0}C + ϑ_{−,0})A with ϑ_{ε,0} acting on A through the helicity matrix and
/// L⁰_ε on A⁰.
pub fn gauge_generator(field: &DiscreteModeField, params: &MetricParams) -> Result<DiscreteModeField> {
    let c = field.apply_c();
    let t0p = params.l0(1.0);
    let t0m = params.l0(-1.0);
    let mut modes = Vec::with_capacity(field.len());
    for j in 0..field.len() {
        let h = helicity_matrix(&field.modes[j].k)?;
        let (tp, tm) = (params.theta(1.0, &h), params.theta(-1.0, &h));
        let a = field.mode_data(j, 0.0)?;
        let ca = c.mode_data(j, 0.0)?;
        let comb = |x: &FourVec, cx: &FourVec| {
            let v = tp * spatial(cx) + tm * spatial(x);
            FourVec::new(cx[0] * t0p + x[0] * t0m, v[0], v[1], v[2])
        };
        modes.push(ModeData { k: a.k, a: comb(&a.a, &ca.a), adot: comb(&a.adot, &ca.adot) });
    }
    DiscreteModeField::from_initial_data(&FieldInitialData { cfg: field.cfg, x0: 0.0, modes }, field.normalization)
}

/// g_𝔞(θ) in the order (+,+1), (+,−1), (+,0), (−,+1), (−,−1), (−,0).
pub fn group_element(theta: f64, params: &MetricParams) -> [C64; 6] {
    let mut out = [C64::new(0.0, 0.0); 6];
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            out[3 * e.index() + h.index()] = C64::from_polar(1.0, -e.sign() * params.frak_a(e, h) * theta);
        }
    }
    out
}

/// A gauge parameter given exactly: a rational p/q or a tagged irrational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactParam {
    Rational(i64, i64),
    Irrational,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupClass {
    /// Isomorphic to U(1); the period is 2π·num/den.
    CompactU1 { num: i64, den: i64 },
    /// Isomorphic to ℝ⁺.
    NoncompactR,
}

impl GroupClass {
    pub fn period(&self) -> Option<f64> {
        match self {
            GroupClass::CompactU1 { num, den } => Some(TAU * *num as f64 / *den as f64),
            GroupClass::NoncompactR => None,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Compact iff every 𝔞 is rational. With 𝔞_i = p_i/q_i and Q = lcm(q_i), the period is
/// 2πQ/gcd(𝔞_i Q).
pub fn classify_group(params: &[ExactParam; 6]) -> Result<GroupClass> {
    let mut reduced = Vec::with_capacity(6);
    let mut irrational = false;
    for p in params {
        match *p {
            ExactParam::Rational(_, 0) => return Err(Error::InvalidParameter("zero denominator".into())),
            ExactParam::Rational(n, d) => {
                if (n > 0) != (d > 0) || n == 0 {
                    return Err(Error::InvalidParameter(format!("gauge parameter {n}/{d} must be positive")));
                }
                let g = gcd(n, d);
                reduced.push(((n / g).abs(), (d / g).abs()));
            }
            ExactParam::Irrational => irrational = true,
        }
    }
    if irrational {
        return Ok(GroupClass::NoncompactR);
    }
    let lcm = reduced.iter().fold(1i64, |l, &(_, q)| l / gcd(l, q) * q);
    let g = reduced.iter().fold(0i64, |g, &(p, q)| gcd(g, p * (lcm / q)));
    let r = gcd(lcm, g);
    Ok(GroupClass::CompactU1 { num: lcm / r, den: g / r })
}

/// MetricParams with real positive α = √𝔞 from exact rationals.
pub fn params_from_rationals(params: &[ExactParam; 6]) -> Result<MetricParams> {
    let mut a = [0.0; 6];
    for (x, p) in a.iter_mut().zip(params) {
        *x = match *p {
            ExactParam::Rational(n, d) if d != 0 => n as f64 / d as f64,
            ExactParam::Rational(..) => return Err(Error::InvalidParameter("zero denominator".into())),
            ExactParam::Irrational => return Err(Error::InvalidParameter("irrational marker has no numeric value".into())),
        };
    }
    MetricParams::from_frak_a(a)
}
