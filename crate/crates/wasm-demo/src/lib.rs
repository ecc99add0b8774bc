//! wasm-bindgen exports for the static demo page. Errors reach JavaScript as strings; the
//! functions are ordinary Rust on native targets.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use proca::fields::Normalization;
use proca::inner::{inner, InnerProductKind};
use proca::io::read_field;
use proca::localized::{probability_density, profile_table};
use proca::mode_algebra::{MetricParams, PhysicsConfig};
use wasm_bindgen::prelude::*;

/// [I1, I2, I3 closed form, I1, I2, I3 quadrature] at Mz with M = κ = 1.
#[wasm_bindgen]
pub fn localized_profile(mz: f64) -> Result<Vec<f64>, String> {
    if !(mz > 0.0) {
        return Err(format!("Mz must be positive, got {mz}"));
    }
    let rows = profile_table(&[mz], &PhysicsConfig::default()).map_err(|e| e.to_string())?;
    let r = rows[0];
    Ok(r.closed.iter().chain(&r.quadrature).copied().collect())
}

/// [re, im] of the inner product of two field files. `kind` is sigma3, canonical or general;
/// the general product uses the α of the first field's relativistic normalization, else α = 1.
#[wasm_bindgen]
pub fn inner_product(a: &str, b: &str, kind: &str, x0: f64) -> Result<Vec<f64>, String> {
    let fa = read_field(a).map_err(|e| format!("field A: {e}"))?;
    let fb = read_field(b).map_err(|e| format!("field B: {e}"))?;
    let kind = match kind {
        "sigma3" => InnerProductKind::Sigma3,
        "canonical" => InnerProductKind::Canonical,
        "general" => InnerProductKind::General(match fa.normalization {
            Normalization::Relativistic(p) => p,
            Normalization::Unit => MetricParams::unit(),
        }),
        other => return Err(format!("unknown inner product {other:?}")),
    };
    let v = inner(&kind, &fa, &fb, x0).map_err(|e| e.to_string())?;
    Ok(vec![v.re, v.im])
}

/// Probability density on the z = 0 plane, n × n points over [−half, half]², row-major in y.
#[wasm_bindgen]
pub fn density_slice(field: &str, x0: f64, n: usize, half: f64) -> Result<Vec<f64>, String> {
    if n == 0 || n > 400 || !(half > 0.0) {
        return Err("need 1 ≤ n ≤ 400 and half > 0".into());
    }
    let f = read_field(field).map_err(|e| e.to_string())?;
    let params = match f.normalization {
        Normalization::Relativistic(p) => p,
        Normalization::Unit => MetricParams::unit(),
    };
    let coord = |i: usize| if n == 1 { 0.0 } else { -half + 2.0 * half * i as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(n * n);
    for iy in 0..n {
        for ix in 0..n {
            out.push(probability_density(&f, x0, &[coord(ix), coord(iy), 0.0], &params).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}
