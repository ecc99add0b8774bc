use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proca::fields::DiscreteModeField;
use proca::inner::{inner, InnerProductKind};
use proca::io::{fmt_real, write_field};
use proca::localized::i_closed;
use proca::mode_algebra::{Chirality, Helicity, Momentum3, PhysicsConfig};
use proca::sampling;
use proca::C64;

fn proca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proca")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_sample(dir: &Path, name: &str, seed: u64) -> (String, DiscreteModeField) {
    let mut rng = sampling::rng(seed);
    let f = sampling::field(&mut rng, PhysicsConfig::new(1.2, 0.8, 0.9).unwrap(), 3, 2.0);
    let path = dir.join(name);
    fs::write(&path, write_field(&f)).unwrap();
    (path.to_str().unwrap().to_string(), f)
}

#[test]
fn localized_csv_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let o = proca(&["localized", "--epsilon", "-1", "--spin", "0", "--mz-min", "0.5", "--mz-max", "4", "--points", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "Mz,I1_closed,I2_closed,I3_closed,I1_quad,I2_quad,I3_quad");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0][0], 0.5);
    assert_eq!(rows[7][0], 4.0);
    for r in &rows {
        let closed = i_closed(r[0], &PhysicsConfig::default()).unwrap();
        for j in 0..3 {
            assert_eq!(r[1 + j], closed[j]);
            assert!((r[4 + j] - closed[j]).abs() <= 1e-3 * closed[j].abs());
        }
    }
    // 17 significant digits per value.
    assert!(text.lines().nth(1).unwrap().split(',').all(|v| v.split('e').next().unwrap().trim_start_matches('-').len() == 18));
}

#[test]
fn localized_single_point_and_bad_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let out = out.to_str().unwrap();
    let o = proca(&["localized", "--epsilon", "1", "--spin", "1", "--mz-min", "2", "--mz-max", "3", "--points", "1", "--out", out]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out).unwrap().lines().count(), 2);
    for args in [
        ["--epsilon", "1", "--spin", "1", "--mz-min", "0", "--mz-max", "3", "--points", "4"],
        ["--epsilon", "1", "--spin", "1", "--mz-min", "-1", "--mz-max", "3", "--points", "4"],
        ["--epsilon", "2", "--spin", "1", "--mz-min", "1", "--mz-max", "3", "--points", "4"],
        ["--epsilon", "1", "--spin", "5", "--mz-min", "1", "--mz-max", "3", "--points", "4"],
        ["--epsilon", "1", "--spin", "1", "--mz-min", "1", "--mz-max", "3", "--points", "0"],
    ] {
        let mut a = vec!["localized"];
        a.extend(args);
        a.extend(["--out", out]);
        assert_eq!(proca(&a).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_filters_suites_and_is_deterministic() {
    let a = proca(&["verify", "--suite", "gauge", "--suite", "specfun"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let text = stdout(&a);
    assert!(text.lines().filter(|l| l.starts_with("gauge ")).count() == 3);
    assert!(text.lines().any(|l| l.starts_with("specfun ")));
    assert!(!text.contains("mode_algebra"));
    assert!(text.ends_with("overall: pass\n"));
    let b = proca(&["verify", "--suite", "gauge", "--suite", "specfun"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(proca(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_reports_check_failures_with_exit_one() {
    // The lorentz suite contains the helicity-dependent boost check, which fails by construction.
    let o = proca(&["verify", "--suite", "lorentz"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("random (eps,h)-dependent a") && text.contains("FAIL"));
    assert!(text.contains("continuity") && text.contains("pass"));
}

#[test]
fn verify_reads_the_config_and_rejects_bad_ones() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.cfg");
    fs::write(&good, "M = 1.5\nkappa = 0.7\nalpha_pm = 0.8,0.3\nseed = 11\n").unwrap();
    let o = proca(&["verify", "--config", good.to_str().unwrap(), "--suite", "inner_products"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "M = 1\nwhat = 3\n").unwrap();
    let o = proca(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn inner_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let (pa, fa) = write_sample(dir.path(), "a.field", 1);
    let mut rng = sampling::rng(2);
    let fb = sampling::field_on(&mut rng, fa.cfg, &fa.ks());
    let pb = dir.path().join("b.field");
    fs::write(&pb, write_field(&fb)).unwrap();
    let o = proca(&["inner", &pa, pb.to_str().unwrap(), "--kind", "canonical", "--x0", "-0.5"]);
    assert!(o.status.success());
    let want = inner(&InnerProductKind::Canonical, &fa, &fb, -0.5).unwrap();
    assert_eq!(stdout(&o), format!("{},{}\n", fmt_real(want.re), fmt_real(want.im)));
}

#[test]
fn corrupt_field_file_exits_two_with_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let (pa, _) = write_sample(dir.path(), "a.field", 3);
    let text = fs::read_to_string(&pa).unwrap().replace("kappa", "kapa");
    fs::write(&pa, text).unwrap();
    let o = proca(&["inner", &pa, &pa]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = proca(&["inner", "/nonexistent/a.field", &pa]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/a.field"));
}

fn evolve(dir: &Path, field: &str, dt: &str, steps: &str) -> (Output, String) {
    let prefix = dir.join("snap");
    let o = proca(&["evolve", field, "--steps", steps, "--dt", dt, "--density-grid", "3,4", "--out-prefix", prefix.to_str().unwrap()]);
    (o, prefix.to_str().unwrap().to_string())
}

#[test]
fn evolve_conserves_probability_and_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let (pa, _) = write_sample(dir.path(), "a.field", 4);
    let (o, prefix) = evolve(dir.path(), &pa, "0.3", "10");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let totals: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(totals.len(), 11);
    assert!(totals.iter().all(|t| (t - totals[0]).abs() <= 1e-10 * totals[0]));
    let snap = fs::read_to_string(format!("{prefix}_0010.csv")).unwrap();
    assert_eq!(snap.lines().next().unwrap(), "x,y,z,rho");
    assert_eq!(snap.lines().count(), 28);
}

#[test]
fn evolve_with_zero_step_repeats_the_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let (pa, _) = write_sample(dir.path(), "a.field", 5);
    let (o, prefix) = evolve(dir.path(), &pa, "0", "2");
    assert!(o.status.success());
    let first = fs::read_to_string(format!("{prefix}_0000.csv")).unwrap();
    assert_eq!(first, fs::read_to_string(format!("{prefix}_0002.csv")).unwrap());
}

#[test]
fn two_mode_density_oscillates_in_space() {
    let cfg = PhysicsConfig::default();
    let a = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, 0.5), Chirality::Plus, Helicity::Plus, C64::new(1.0, 0.0)).unwrap();
    let b = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, -0.5), Chirality::Plus, Helicity::Minus, C64::new(1.0, 0.0)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.field");
    fs::write(&path, write_field(&a.add(&b).unwrap())).unwrap();
    let prefix = dir.path().join("s");
    let o = proca(&["evolve", path.to_str().unwrap(), "--steps", "3", "--dt", "0.7", "--density-grid", "9,3", "--out-prefix", prefix.to_str().unwrap()]);
    assert!(o.status.success());
    let snap = fs::read_to_string(format!("{}_0001.csv", prefix.to_str().unwrap())).unwrap();
    let rho: Vec<f64> = snap.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    let (lo, hi) = rho.iter().fold((f64::INFINITY, 0.0f64), |(l, h), r| (l.min(*r), h.max(*r)));
    assert!(hi > 1.5 * lo, "{lo} {hi}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(proca(&[]).status.code(), Some(2));
    assert_eq!(proca(&["localized", "--epsilon", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let (pa, _) = write_sample(dir.path(), "a.field", 6);
    let o = proca(&["evolve", &pa, "--steps", "1", "--dt", "0.1", "--density-grid", "x", "--out-prefix", "/tmp/never"]);
    assert_eq!(o.status.code(), Some(2));
}
