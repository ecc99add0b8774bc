use num_complex::Complex;
use proca::error::Error;
use proca::fields::*;
use proca::inner::{inner, inner_mode_sum, InnerProductKind};
use proca::localized::total_probability;
use proca::mode_algebra::*;
use proca::relativity::*;
use proca::sampling;
use proca::C64;
use proptest::prelude::*;
use rand::Rng;

fn c(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

/// Nonzero (k, ε, coefficients) sectors of a field.
fn sectors(f: &DiscreteModeField) -> Vec<(Momentum3, usize, [C64; 3])> {
    let mut out = Vec::new();
    for m in &f.modes {
        for e in 0..2 {
            if m.c[e].iter().any(|x| x.norm() > 0.0) {
                out.push((m.k, e, m.c[e]));
            }
        }
    }
    out
}

/// Largest coefficient mismatch after pairing sectors with equal ε and |k − k′| < 1e-10.
fn sector_distance(a: &DiscreteModeField, b: &DiscreteModeField) -> f64 {
    let (sa, sb) = (sectors(a), sectors(b));
    assert_eq!(sa.len(), sb.len());
    let mut worst: f64 = 0.0;
    for (k, e, ca) in &sa {
        let (_, _, cb) = sb
            .iter()
            .find(|(kb, eb, _)| eb == e && (kb.0 - k.0).norm() < 1e-10)
            .unwrap_or_else(|| panic!("no partner for k = {:?}", k.0));
        for h in 0..3 {
            worst = worst.max((ca[h] - cb[h]).norm());
        }
    }
    worst
}

fn random_beta<R: Rng>(rng: &mut R, max: f64) -> [f64; 3] {
    let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let s = rng.gen_range(0.0..max);
    v.map(|x| x / n * s)
}

fn chirality_only_params<R: Rng>(rng: &mut R) -> MetricParams {
    let (p, m) = (rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0));
    MetricParams::from_frak_a([p, p, p, m, m, m]).unwrap()
}

#[test]
fn zero_boost_is_the_identity() {
    let mut rng = sampling::rng(1);
    let cfg = sampling::config(&mut rng);
    let f = sampling::field(&mut rng, cfg, 5, 2.0);
    let b = boost_field(&f, &[0.0; 3]).unwrap();
    assert!(sector_distance(&f, &b) < 1e-14);
}

#[test]
fn superluminal_boost_is_rejected() {
    let mut rng = sampling::rng(2);
    let cfg = sampling::config(&mut rng);
    let f = sampling::field(&mut rng, cfg, 2, 2.0);
    assert!(matches!(boost_field(&f, &[0.6, 0.8, 0.0]), Err(Error::Domain(_))));
    assert!(matches!(boost_field(&f, &[1.2, 0.0, 0.0]), Err(Error::Domain(_))));
    assert!(matches!(boost_field(&f, &[f64::NAN, 0.0, 0.0]), Err(Error::Domain(_))));
}

#[test]
fn boost_matrix_preserves_the_metric() {
    let mut rng = sampling::rng(3);
    for _ in 0..20 {
        let l = boost_matrix(&random_beta(&mut rng, 0.95)).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let g: f64 = (0..4).map(|m| [-1.0, 1.0, 1.0, 1.0][m] * l[m][a] * l[m][b]).sum();
                let want = if a == b { [-1.0, 1.0, 1.0, 1.0][a] } else { 0.0 };
                assert!((g - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn boost_then_inverse_is_the_identity() {
    for seed in 10..30 {
        let mut rng = sampling::rng(seed);
        let cfg = sampling::config(&mut rng);
        let f = sampling::field(&mut rng, cfg, 4, 2.5);
        let beta = random_beta(&mut rng, 0.9);
        let back = boost_field(&boost_field(&f, &beta).unwrap(), &beta.map(|b| -b)).unwrap();
        assert!(sector_distance(&f, &back) < 1e-12 * (1.0 + f.coeff_norm()));
    }
}

#[test]
fn boosted_plane_wave_is_the_transformed_field() {
    let mut rng = sampling::rng(4);
    for _ in 0..10 {
        let cfg = sampling::config(&mut rng);
        let k = sampling::momentum(&mut rng, 2.0);
        let e = if rng.gen_bool(0.5) { Chirality::Plus } else { Chirality::Minus };
        let f = sampling::field_on(&mut rng, cfg, &[k]);
        let f = if e == Chirality::Plus { f.chirality_split().0 } else { f.chirality_split().1 };
        let beta = random_beta(&mut rng, 0.8);
        let l = boost_matrix(&beta).unwrap();
        let linv = boost_matrix(&beta.map(|b| -b)).unwrap();
        let t = lorentz_transform_field(&f, &beta).unwrap();
        let b = boost_field(&f, &beta).unwrap();
        let wp = t.omega(0);
        for _ in 0..5 {
            let xp = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let x = apply_lorentz_real(&linv, &xp);
            let want = apply_lorentz(&l, &f.evaluate(x[0], &[x[1], x[2], x[3]]).unwrap());
            let got = t.evaluate(xp[0], &[xp[1], xp[2], xp[3]]).unwrap();
            assert!((got - want).norm() < 1e-12 * (1.0 + want.norm()));
            let scaled = b.evaluate(xp[0], &[xp[1], xp[2], xp[3]]).unwrap();
            assert!((scaled - want * c((k.omega(cfg.m) / wp).sqrt())).norm() < 1e-12 * (1.0 + want.norm()));
        }
    }
}

#[test]
fn transverse_boost_mixes_helicities() {
    let cfg = PhysicsConfig::new(1.0, 1.0, 1.0).unwrap();
    let f = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, 1.0), Chirality::Plus, Helicity::Plus, c(1.0)).unwrap();
    let b = boost_field(&f, &[0.5, 0.0, 0.0]).unwrap();
    let coeffs = b.modes[0].c[0];
    assert!(coeffs[Helicity::Plus.index()].norm() > 0.1);
    assert!(coeffs[Helicity::Minus.index()].norm() > 1e-3 || coeffs[Helicity::Zero.index()].norm() > 1e-3);
    // A boost along k keeps the helicity.
    let along = boost_field(&f, &[0.0, 0.0, 0.4]).unwrap();
    let ca = along.modes[0].c[0];
    assert!(ca[Helicity::Minus.index()].norm() + ca[Helicity::Zero.index()].norm() < 1e-13);
}

#[test]
fn opposite_chiralities_may_share_a_boosted_momentum() {
    let cfg = PhysicsConfig::new(1.0, 1.0, 1.0).unwrap();
    // Along z with M = 1: k = 3/4 (ε = +) and k = −3/4 (ε = −) both have ω = 5/4.
    let a = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, 0.75), Chirality::Plus, Helicity::Plus, c(1.0)).unwrap();
    let b = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, 0.4), Chirality::Minus, Helicity::Plus, c(1.0)).unwrap();
    let f = a.add(&b).unwrap();
    let boosted = boost_field(&f, &[0.0, 0.0, -0.3]).unwrap();
    assert_eq!(sectors(&boosted).len(), 2);
}

#[test]
fn a_mode_brought_to_rest_is_rejected() {
    let cfg = PhysicsConfig::new(1.0, 1.0, 1.0).unwrap();
    let f = DiscreteModeField::basis(cfg, Momentum3::new(0.0, 0.0, 0.75), Chirality::Plus, Helicity::Plus, c(1.0)).unwrap();
    assert!(matches!(boost_field(&f, &[0.0, 0.0, 0.6]), Err(Error::Representation(_))));
}

#[test]
fn invariance_for_helicity_independent_metrics() {
    for seed in 40..60 {
        let mut rng = sampling::rng(seed);
        let cfg = sampling::config(&mut rng);
        let a = sampling::field(&mut rng, cfg, 4, 2.0);
        let b = sampling::field_on(&mut rng, cfg, &a.ks());
        let beta = random_beta(&mut rng, 0.8);
        let p = chirality_only_params(&mut rng);
        let scale = inner(&InnerProductKind::General(p), &a, &a, 0.0).unwrap().norm();
        assert!(boost_invariance_check(&a, &b, &beta, &p).unwrap() < 1e-10 * scale.max(1.0));
        let s3 = InnerProductKind::Sigma3;
        let before = inner(&s3, &a, &b, 0.0).unwrap();
        let after = inner(&s3, &boost_field(&a, &beta).unwrap(), &boost_field(&b, &beta).unwrap(), 0.0).unwrap();
        assert!((before - after).norm() < 1e-10 * scale.max(1.0));
    }
}

#[test]
fn invariance_along_the_mode_axis_for_any_metric() {
    let mut rng = sampling::rng(61);
    for _ in 0..10 {
        let cfg = sampling::config(&mut rng);
        // |k|/ω > |β| keeps every boosted momentum on the same side, so helicities are preserved.
        let ks: Vec<Momentum3> = (0..4).map(|_| Momentum3::new(0.0, 0.0, cfg.m * rng.gen_range(1.0..3.0))).collect();
        let a = sampling::field_on(&mut rng, cfg, &ks);
        let b = sampling::field_on(&mut rng, cfg, &ks);
        let p = sampling::metric_params(&mut rng);
        let scale = inner(&InnerProductKind::General(p), &a, &a, 0.0).unwrap().norm();
        assert!(boost_invariance_check(&a, &b, &[0.0, 0.0, 0.6], &p).unwrap() < 1e-10 * scale);
    }
}

#[test]
fn helicity_dependent_metrics_are_frame_dependent() {
    // A generic boost rotates helicities, so a metric that weighs them differently is not
    // boost invariant.
    let mut rng = sampling::rng(62);
    let cfg = sampling::config(&mut rng);
    let a = sampling::field(&mut rng, cfg, 4, 2.0);
    let p = MetricParams::from_frak_a([1.0, 2.5, 0.5, 1.0, 1.7, 0.8]).unwrap();
    let scale = inner(&InnerProductKind::General(p), &a, &a, 0.0).unwrap().norm();
    assert!(boost_invariance_check(&a, &a, &[0.5, -0.3, 0.2], &p).unwrap() > 1e-4 * scale);
}

#[test]
fn first_order_boost_is_invariant_to_first_order() {
    let mut rng = sampling::rng(63);
    let cfg = sampling::config(&mut rng);
    let a = sampling::field(&mut rng, cfg, 4, 2.0);
    let dir = random_beta(&mut rng, 1.0);
    let dir = {
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        dir.map(|x| x / n)
    };
    let kind = InnerProductKind::Canonical;
    let n0 = inner(&kind, &a, &a, 0.0).unwrap().re;
    let resid = |s: f64| {
        let b = boost_field_first_order(&a, &dir.map(|x| x * s)).unwrap();
        (inner(&kind, &b, &b, 0.0).unwrap().re - n0).abs() / n0
    };
    let (r1, r2, r3) = (resid(1e-2), resid(5e-3), resid(2.5e-3));
    assert!(r1 < 1e-2);
    assert!((r1 / r2 - 4.0).abs() < 0.3 && (r2 / r3 - 4.0).abs() < 0.3, "{r1} {r2} {r3}");
}

#[test]
fn collinear_boosts_compose_by_velocity_addition() {
    let mut rng = sampling::rng(64);
    for _ in 0..10 {
        let cfg = sampling::config(&mut rng);
        let f = sampling::field(&mut rng, cfg, 4, 2.0);
        let n = random_beta(&mut rng, 1.0);
        let nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let n = n.map(|x| x / nn);
        let (b1, b2) = (rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
        let two = boost_field(&boost_field(&f, &n.map(|x| x * b1)).unwrap(), &n.map(|x| x * b2)).unwrap();
        let one = boost_field(&f, &n.map(|x| x * velocity_addition(b1, b2))).unwrap();
        assert!(sector_distance(&two, &one) < 1e-12 * (1.0 + f.coeff_norm()));
    }
}

#[test]
fn boosts_commute_with_the_chirality_split() {
    let mut rng = sampling::rng(65);
    let cfg = sampling::config(&mut rng);
    let f = sampling::field(&mut rng, cfg, 4, 2.0);
    let beta = random_beta(&mut rng, 0.9);
    let (p, m) = f.chirality_split();
    let (bp, bm) = boost_field(&f, &beta).unwrap().chirality_split();
    assert!(sector_distance(&boost_field(&p, &beta).unwrap(), &bp) < 1e-14);
    assert!(sector_distance(&boost_field(&m, &beta).unwrap(), &bm) < 1e-14);
}

#[test]
fn plane_wave_current() {
    let cfg = PhysicsConfig::new(1.3, 1.0, 0.8).unwrap();
    let k = Momentum3::new(0.4, 0.1, -0.7);
    let w = k.omega(cfg.m);
    let amp = C64::new(0.3, 1.1);
    let dens = cfg.kappa / cfg.m * w * amp.norm_sqr() * (2.0 * std::f64::consts::PI).powi(-3);
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            let f = DiscreteModeField::basis(cfg, k, e, h, amp).unwrap();
            for x in [[0.0; 4], [0.7, -1.0, 2.0, 0.3]] {
                let (j, d) = current_and_divergence(&f, &x).unwrap();
                assert!((j[0] - c(dens)).norm() < 1e-13 * dens);
                // J = ε (κ/M)|A|² k.
                for i in 0..3 {
                    assert!((j[i + 1] - c(e.sign() * dens * k.0[i] / w)).norm() < 1e-13 * dens);
                }
                assert!(d.norm() < 1e-14 * dens);
            }
        }
    }
}

#[test]
fn time_component_matches_the_density_formula() {
    let mut rng = sampling::rng(66);
    for _ in 0..10 {
        let cfg = sampling::config(&mut rng);
        let f = sampling::field(&mut rng, cfg, 4, 2.0);
        for _ in 0..5 {
            let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let j = current_j(&f, &x).unwrap();
            let j0 = j0_unit(&f, &x).unwrap();
            let scale = j.iter().map(|v| v.norm()).sum::<f64>();
            assert!((j[0] - j0).norm() < 1e-12 * scale);
        }
    }
}

#[test]
fn current_is_conserved_at_random_points() {
    for seed in 70..80 {
        let mut rng = sampling::rng(seed);
        let cfg = sampling::config(&mut rng);
        let n = rng.gen_range(2..=5);
        let f = sampling::field(&mut rng, cfg, n, 2.5);
        for _ in 0..20 {
            let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let (r, scale) = continuity_residual(&f, &x).unwrap();
            // The local scale of ∂J is |k|·|J|; momenta are bounded by 2.5 and ω by 3.9.
            assert!(r <= 1e-10 * scale.max(1e-300) * 4.0, "{r} vs {scale}");
        }
    }
}

#[test]
fn current_transforms_as_a_four_vector() {
    let mut rng = sampling::rng(81);
    let cfg = sampling::config(&mut rng);
    let f = sampling::field(&mut rng, cfg, 4, 2.0);
    let beta = random_beta(&mut rng, 0.7);
    let l = boost_matrix(&beta).unwrap();
    let linv = boost_matrix(&beta.map(|b| -b)).unwrap();
    let t = lorentz_transform_field(&f, &beta).unwrap();
    for _ in 0..5 {
        let xp = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let x = apply_lorentz_real(&linv, &xp);
        let j = current_j(&f, &x).unwrap();
        let want = apply_lorentz(&l, &FourVec::new(j[0], j[1], j[2], j[3]));
        let got = current_j(&t, &xp).unwrap();
        let scale = want.norm();
        for m in 0..4 {
            assert!((got[m] - want[m]).norm() < 1e-11 * scale);
        }
    }
}

#[test]
fn integrated_density_is_the_inner_product() {
    for seed in 90..100 {
        let mut rng = sampling::rng(seed);
        let cfg = sampling::config(&mut rng);
        let f = sampling::field(&mut rng, cfg, 5, 2.5);
        let canon = inner(&InnerProductKind::Canonical, &f, &f, 0.0).unwrap().re;
        let j_unit = integrated_j0_general(&f, 0.0, &MetricParams::unit()).unwrap();
        assert!((j_unit - c(canon)).norm() < 1e-12 * canon);
        let p = sampling::metric_params(&mut rng);
        let oracle = inner_mode_sum(&p, &f, &f).unwrap().re;
        for x0 in [0.0, 1.7, -4.2] {
            let j = integrated_j0_general(&f, x0, &p).unwrap();
            assert!((j - c(oracle)).norm() < 1e-12 * oracle, "{j} vs {oracle}");
            // ∫ϱ = ∫J⁰_𝔞.
            let prob = total_probability(&f, x0, &p).unwrap();
            assert!((prob - j.re).abs() < 1e-12 * oracle);
        }
    }
}

#[test]
fn general_density_reduces_at_unit_params() {
    let mut rng = sampling::rng(101);
    let cfg = sampling::config(&mut rng);
    let f = sampling::field(&mut rng, cfg, 4, 2.0);
    for _ in 0..10 {
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let a = j0_general(&f, &x, &MetricParams::unit()).unwrap();
        let b = current_j(&f, &x).unwrap()[0];
        assert!((a - b).norm() < 1e-12 * b.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn canonical_norm_is_boost_invariant(seed in 0u64..100_000, bx in -0.55f64..0.55, by in -0.55f64..0.55, bz in -0.55f64..0.55) {
        let mut rng = sampling::rng(seed);
        let cfg = sampling::config(&mut rng);
        let f = sampling::field(&mut rng, cfg, 3, 2.5);
        let kind = InnerProductKind::Canonical;
        let n0 = inner(&kind, &f, &f, 0.0).unwrap().re;
        let b = boost_field(&f, &[bx, by, bz]).unwrap();
        let n1 = inner(&kind, &b, &b, 0.0).unwrap().re;
        prop_assert!((n0 - n1).abs() <= 1e-11 * n0);
    }
}
