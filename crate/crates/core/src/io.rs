//! Text formats: the field file and the flat key=value run configuration.
//!
//! Field file:
//! ```text
//! # comment
//! M 1.0000000000000000e0
//! gamma 1.0000000000000000e0
//! kappa 1.0000000000000000e0
//! normalization unit
//! modes 1
//! kx ky kz  re im  re im  re im  re im  re im  re im
//! ```
//! `normalization relativistic` is followed by six `re im` pairs of α. Coefficient pairs
//! are ordered (ε,h) = (+,+1), (+,−1), (+,0), (−,+1), (−,−1), (−,0). Reals are written with
//! 17 significant digits, which round-trips every f64 exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fields::{DiscreteModeField, Mode, Normalization};
use crate::mode_algebra::{MetricParams, Momentum3, PhysicsConfig};
use crate::C64;

/// f64 with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("expected a real number, found {tok:?}") })
}

fn parse_pairs(toks: &[&str], line: usize) -> Result<Vec<C64>> {
    if !toks.len().is_multiple_of(2) {
        return Err(Error::Parse { line, msg: "complex values come in re im pairs".into() });
    }
    toks.chunks(2).map(|p| Ok(C64::new(parse_real(p[0], line)?, parse_real(p[1], line)?))).collect()
}

pub fn write_field(field: &DiscreteModeField) -> String {
    let mut s = String::new();
    let cfg = field.cfg;
    writeln!(s, "M {}", fmt_real(cfg.m)).unwrap();
    writeln!(s, "gamma {}", fmt_real(cfg.gamma)).unwrap();
    writeln!(s, "kappa {}", fmt_real(cfg.kappa)).unwrap();
    match &field.normalization {
        Normalization::Unit => writeln!(s, "normalization unit").unwrap(),
        Normalization::Relativistic(p) => {
            s.push_str("normalization relativistic");
            for a in p.alpha.iter().flatten() {
                write!(s, " {} {}", fmt_real(a.re), fmt_real(a.im)).unwrap();
            }
            s.push('\n');
        }
    }
    writeln!(s, "modes {}", field.modes.len()).unwrap();
    for m in &field.modes {
        let k = m.k.0;
        write!(s, "{} {} {}", fmt_real(k.x), fmt_real(k.y), fmt_real(k.z)).unwrap();
        for c in m.c.iter().flatten() {
            write!(s, " {} {}", fmt_real(c.re), fmt_real(c.im)).unwrap();
        }
        s.push('\n');
    }
    s
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn read_field(text: &str) -> Result<DiscreteModeField> {
    let mut lines = content_lines(text);
    let mut header = |key: &str| -> Result<(usize, Vec<&str>)> {
        let (n, l) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("missing header field {key:?}") })?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] != key {
            return Err(Error::Parse { line: n, msg: format!("expected {key:?}, found {:?}", toks[0]) });
        }
        Ok((n, toks[1..].to_vec()))
    };
    let mut scalar = |key: &str| -> Result<f64> {
        let (n, t) = header(key)?;
        match t.as_slice() {
            [v] => parse_real(v, n),
            _ => Err(Error::Parse { line: n, msg: format!("{key} takes one value") }),
        }
    };
    let (m, gamma, kappa) = (scalar("M")?, scalar("gamma")?, scalar("kappa")?);
    let cfg = PhysicsConfig::new(m, gamma, kappa).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    let (n, t) = header("normalization")?;
    let normalization = match t.split_first() {
        Some((&"unit", [])) => Normalization::Unit,
        Some((&"relativistic", rest)) => {
            let v = parse_pairs(rest, n)?;
            let v: [C64; 6] = v.try_into().map_err(|_| Error::Parse { line: n, msg: "relativistic needs six α pairs".into() })?;
            Normalization::Relativistic(MetricParams::from_flat(v).map_err(|e| Error::Parse { line: n, msg: e.to_string() })?)
        }
        _ => return Err(Error::Parse { line: n, msg: "normalization is `unit` or `relativistic` with six α pairs".into() }),
    };
    let (n, t) = header("modes")?;
    let count: usize = match t.as_slice() {
        [v] => v.parse().map_err(|_| Error::Parse { line: n, msg: format!("bad mode count {v:?}") })?,
        _ => return Err(Error::Parse { line: n, msg: "modes takes one count".into() }),
    };
    let mut modes = Vec::with_capacity(count);
    let mut last = n;
    for (n, l) in lines {
        last = n;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 15 {
            return Err(Error::Parse { line: n, msg: format!("a mode record has 15 numbers, found {}", toks.len()) });
        }
        let k: Vec<f64> = toks[..3].iter().map(|t| parse_real(t, n)).collect::<Result<_>>()?;
        let c = parse_pairs(&toks[3..], n)?;
        modes.push(Mode { k: Momentum3::new(k[0], k[1], k[2]), c: [[c[0], c[1], c[2]], [c[3], c[4], c[5]]] });
    }
    if modes.len() != count {
        return Err(Error::Parse { line: last, msg: format!("header announces {count} modes, found {}", modes.len()) });
    }
    DiscreteModeField::new(cfg, modes, normalization).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
}

/// Run configuration for the verification suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub cfg: PhysicsConfig,
    pub params: MetricParams,
    pub lattice_n: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { cfg: PhysicsConfig::default(), params: MetricParams::unit(), lattice_n: 32, seed: 7 }
    }
}

const ALPHA_KEYS: [&str; 6] = ["alpha_pp", "alpha_pm", "alpha_p0", "alpha_mp", "alpha_mm", "alpha_m0"];

/// Parses `key = value` lines. Keys: M, gamma, kappa, alpha_pp, alpha_pm, alpha_p0, alpha_mp,
/// alpha_mm, alpha_m0 (each `re,im`), lattice_n, seed. Missing keys keep their defaults.
pub fn read_config(text: &str) -> Result<RunConfig> {
    let mut rc = RunConfig::default();
    let (mut m, mut gamma, mut kappa) = (rc.cfg.m, rc.cfg.gamma, rc.cfg.kappa);
    let mut alpha: Vec<C64> = rc.params.alpha.iter().flatten().copied().collect();
    for (n, l) in content_lines(text) {
        let (key, value) = l.split_once('=').ok_or(Error::Parse { line: n, msg: "expected key = value".into() })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "M" => m = parse_real(value, n)?,
            "gamma" => gamma = parse_real(value, n)?,
            "kappa" => kappa = parse_real(value, n)?,
            "lattice_n" => rc.lattice_n = value.parse().map_err(|_| Error::Parse { line: n, msg: format!("bad lattice size {value:?}") })?,
            "seed" => rc.seed = value.parse().map_err(|_| Error::Parse { line: n, msg: format!("bad seed {value:?}") })?,
            _ => {
                let i = ALPHA_KEYS.iter().position(|k| *k == key).ok_or(Error::Parse { line: n, msg: format!("unknown key {key:?}") })?;
                let (re, im) = value.split_once(',').ok_or(Error::Parse { line: n, msg: "alpha entries are re,im".into() })?;
                alpha[i] = C64::new(parse_real(re.trim(), n)?, parse_real(im.trim(), n)?);
            }
        }
    }
    rc.cfg = PhysicsConfig::new(m, gamma, kappa).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    rc.params = MetricParams::from_flat(alpha.try_into().unwrap()).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    if rc.lattice_n < 4 || !rc.lattice_n.is_multiple_of(2) {
        return Err(Error::Parse { line: 0, msg: format!("lattice_n must be even and at least 4, got {}", rc.lattice_n) });
    }
    Ok(rc)
}

pub fn write_config(rc: &RunConfig) -> String {
    let mut s = String::new();
    writeln!(s, "M = {}", fmt_real(rc.cfg.m)).unwrap();
    writeln!(s, "gamma = {}", fmt_real(rc.cfg.gamma)).unwrap();
    writeln!(s, "kappa = {}", fmt_real(rc.cfg.kappa)).unwrap();
    for (key, a) in ALPHA_KEYS.iter().zip(rc.params.alpha.iter().flatten()) {
        writeln!(s, "{key} = {},{}", fmt_real(a.re), fmt_real(a.im)).unwrap();
    }
    writeln!(s, "lattice_n = {}", rc.lattice_n).unwrap();
    writeln!(s, "seed = {}", rc.seed).unwrap();
    s
}
