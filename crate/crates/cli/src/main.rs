#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use proca::fields::{DiscreteModeField, Normalization};
use proca::inner::{inner, InnerProductKind};
use proca::io::{fmt_real, read_config, read_field, RunConfig};
use proca::localized::{probability_density, profile_csv, profile_table_for, spin_label_index, total_probability};
use proca::mode_algebra::{Chirality, MetricParams, PhysicsConfig};
use proca::verify;

#[derive(Parser)]
#[command(name = "proca", version, about = "Pseudo-Hermitian quantum mechanics of free Proca fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suites; exit 1 if any check fails.
    Verify {
        /// key=value run configuration (M, gamma, kappa, alpha_*, lattice_n, seed).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run only these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Write the radial profiles I1, I2, I3 of the localized states as CSV (M = kappa = 1).
    Localized {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: i32,
        #[arg(long, allow_hyphen_values = true)]
        spin: i32,
        #[arg(long, allow_hyphen_values = true)]
        mz_min: f64,
        #[arg(long)]
        mz_max: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve a stored field and write density snapshots on a cubic grid.
    Evolve {
        field: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, allow_hyphen_values = true)]
        dt: f64,
        /// Points per axis and half-width of the cube, as N,L.
        #[arg(long)]
        density_grid: String,
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Inner product of two stored fields.
    Inner {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        kind: Kind,
        /// Supplies alpha for the general product.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sigma3,
    Canonical,
    General,
}

/// A failure with its exit code: 1 for failed checks and I/O, 2 for usage and parse errors.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, Failure> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => read_config(&read_text(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))),
    }
}

fn load_field(path: &Path) -> Result<DiscreteModeField, Failure> {
    read_field(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(config: &Option<PathBuf>, suites: &[String]) -> Result<bool, Failure> {
    let rc = load_config(config)?;
    let reports = verify::run(&rc, suites).map_err(|e| usage(e.to_string()))?;
    let mut all = true;
    for r in &reports {
        print!("{}", r.render());
        eprintln!("{}: {} in {:.3} s", r.suite, if r.passed() { "pass" } else { "FAIL" }, r.wall_time.as_secs_f64());
        all &= r.passed();
    }
    println!("overall: {}", if all { "pass" } else { "FAIL" });
    Ok(all)
}

fn cmd_localized(epsilon: i32, spin: i32, mz_min: f64, mz_max: f64, points: usize, out: &Path) -> Result<bool, Failure> {
    let eps = Chirality::from_sign(epsilon).map_err(|e| usage(format!("--epsilon: {e}")))?;
    spin_label_index(spin).map_err(|e| usage(format!("--spin: {e}")))?;
    if !(mz_min > 0.0) || !mz_min.is_finite() {
        return Err(usage(format!("--mz-min must be positive, got {mz_min}")));
    }
    if points == 0 || (points > 1 && !(mz_max > mz_min)) || !mz_max.is_finite() {
        return Err(usage("need --points ≥ 1 and --mz-max > --mz-min"));
    }
    let grid: Vec<f64> = if points == 1 {
        vec![mz_min]
    } else {
        (0..points).map(|i| mz_min + (mz_max - mz_min) * i as f64 / (points - 1) as f64).collect()
    };
    let rows = profile_table_for(eps, &grid, &PhysicsConfig::default()).map_err(|e| Failure(1, e.to_string()))?;
    write_text(out, &profile_csv(&rows))?;
    Ok(true)
}

fn params_of(field: &DiscreteModeField) -> MetricParams {
    match field.normalization {
        Normalization::Relativistic(p) => p,
        Normalization::Unit => MetricParams::unit(),
    }
}

fn parse_grid(s: &str) -> Result<(usize, f64), Failure> {
    let bad = || usage(format!("--density-grid expects N,L with N ≥ 1 and L > 0, got {s:?}"));
    let (n, l) = s.split_once(',').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let l: f64 = l.trim().parse().map_err(|_| bad())?;
    if n == 0 || !(l > 0.0) || !l.is_finite() {
        return Err(bad());
    }
    Ok((n, l))
}

fn cmd_evolve(path: &Path, steps: usize, dt: f64, grid: &str, prefix: &Path) -> Result<bool, Failure> {
    let (n, half) = parse_grid(grid)?;
    if !dt.is_finite() {
        return Err(usage("--dt must be finite"));
    }
    let mut field = load_field(path)?;
    let params = params_of(&field);
    let axis: Vec<f64> = (0..n).map(|i| if n == 1 { 0.0 } else { -half + 2.0 * half * i as f64 / (n - 1) as f64 }).collect();
    let lib = |e: proca::Error| Failure(1, e.to_string());
    let p0 = total_probability(&field, 0.0, &params).map_err(lib)?;
    let mut drift: f64 = 0.0;
    println!("step,x0,total_probability");
    for step in 0..=steps {
        if step > 0 {
            field = field.evolve(dt);
        }
        let p = total_probability(&field, 0.0, &params).map_err(lib)?;
        drift = drift.max((p - p0).abs() / p0);
        println!("{step},{},{}", fmt_real(step as f64 * dt), fmt_real(p));
        let mut csv = String::from("x,y,z,rho\n");
        for &x in &axis {
            for &y in &axis {
                for &z in &axis {
                    let rho = probability_density(&field, 0.0, &[x, y, z], &params).map_err(lib)?;
                    writeln!(csv, "{},{},{},{}", fmt_real(x), fmt_real(y), fmt_real(z), fmt_real(rho)).unwrap();
                }
            }
        }
        let mut name = prefix.as_os_str().to_owned();
        name.push(format!("_{step:04}.csv"));
        write_text(Path::new(&name), &csv)?;
    }
    if drift > 1e-10 {
        eprintln!("total probability drifted by {drift:e} (relative), above 1e-10");
        return Ok(false);
    }
    Ok(true)
}

fn cmd_inner(a: &Path, b: &Path, kind: Kind, config: &Option<PathBuf>, x0: f64) -> Result<bool, Failure> {
    let rc = load_config(config)?;
    let (fa, fb) = (load_field(a)?, load_field(b)?);
    let kind = match kind {
        Kind::Sigma3 => InnerProductKind::Sigma3,
        Kind::Canonical => InnerProductKind::Canonical,
        Kind::General => InnerProductKind::General(rc.params),
    };
    let v = inner(&kind, &fa, &fb, x0).map_err(|e| usage(e.to_string()))?;
    println!("{},{}", fmt_real(v.re), fmt_real(v.im));
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { config, suites } => cmd_verify(config, suites),
        Command::Localized { epsilon, spin, mz_min, mz_max, points, out } => cmd_localized(*epsilon, *spin, *mz_min, *mz_max, *points, out),
        Command::Evolve { field, steps, dt, density_grid, out_prefix } => cmd_evolve(field, *steps, *dt, density_grid, out_prefix),
        Command::Inner { a, b, kind, config, x0 } => cmd_inner(a, b, *kind, config, *x0),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
