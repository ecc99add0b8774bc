use num_complex::Complex;
use proca::fields::*;
use proca::inner::*;
use proca::mode_algebra::*;
use proca::sampling;
use proca::C64;
use proptest::prelude::*;

fn c(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

fn kz() -> Momentum3 {
    Momentum3::new(0.0, 0.0, 1.0)
}

fn pair(seed: u64, n: usize) -> (DiscreteModeField, DiscreteModeField, MetricParams) {
    let mut rng = sampling::rng(seed);
    let cfg = sampling::config(&mut rng);
    let a = sampling::field(&mut rng, cfg, n, 2.5);
    let b = sampling::field_on(&mut rng, cfg, &a.ks());
    (a, b, sampling::metric_params(&mut rng))
}

#[test]
fn general_unit_params_single_mode_is_omega() {
    let cfg = PhysicsConfig::default();
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            let f = DiscreteModeField::basis(cfg, kz(), e, h, c(1.0)).unwrap();
            let v = inner(&InnerProductKind::General(MetricParams::unit()), &f, &f, 0.0).unwrap();
            assert!((v - c(2f64.sqrt())).norm() < 1e-14, "{e:?} {h:?} {v}");
        }
    }
}

#[test]
fn sigma3_is_indefinite() {
    let cfg = PhysicsConfig::new(1.3, 0.7, 2.1).unwrap();
    let k = Momentum3::new(0.3, 0.5, -0.2);
    let w = k.omega(cfg.m);
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            let f = DiscreteModeField::basis(cfg, k, e, h, c(1.0)).unwrap();
            let v = inner(&InnerProductKind::Sigma3, &f, &f, 0.4).unwrap();
            let want = e.sign() * w * cfg.kappa / cfg.m;
            assert!((v - c(want)).norm() < 1e-13, "{v} vs {want}");
        }
    }
    let unit = PhysicsConfig::default();
    let neg = DiscreteModeField::basis(unit, kz(), Chirality::Minus, Helicity::Plus, c(1.0)).unwrap();
    let v = inner(&InnerProductKind::Sigma3, &neg, &neg, 0.0).unwrap();
    assert!((v + c(2f64.sqrt())).norm() < 1e-14);
}

#[test]
fn canonical_equals_general_at_unit_params() {
    for seed in 0..50 {
        let (a, b, _) = pair(seed, 3);
        let x = inner(&InnerProductKind::Canonical, &a, &b, 0.3).unwrap();
        let y = inner(&InnerProductKind::General(MetricParams::unit()), &a, &b, 0.3).unwrap();
        assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
    }
}

#[test]
fn three_routes_to_the_general_product_agree() {
    for seed in 100..130 {
        let (a, b, p) = pair(seed, 4);
        let pos = inner(&InnerProductKind::General(p), &a, &b, -0.6).unwrap();
        let modes = inner_mode_sum(&p, &a, &b).unwrap();
        let s3 = decompose_as_sigma3(&a, &b, &p, -0.6).unwrap();
        let scale = pos.norm().max(1.0);
        assert!((pos - modes).norm() <= 1e-12 * scale, "{pos} {modes}");
        assert!((pos - s3).norm() <= 1e-12 * scale, "{pos} {s3}");
    }
}

#[test]
fn time_invariance_and_hermitian_symmetry() {
    for seed in 200..210 {
        let (a, b, p) = pair(seed, 4);
        for kind in [InnerProductKind::Canonical, InnerProductKind::General(p), InnerProductKind::Sigma3] {
            let v0 = inner(&kind, &a, &b, 0.0).unwrap();
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            let mut t = 0.0;
            for _ in 0..20 {
                a2 = a2.evolve(0.17);
                b2 = b2.evolve(0.17);
                t += 0.17;
                let v = inner(&kind, &a2, &b2, t).unwrap();
                assert!((v - v0).norm() <= 1e-12 * v0.norm().max(1.0));
                // Same field read at a different time.
                let w = inner(&kind, &a, &b, t).unwrap();
                assert!((w - v0).norm() <= 1e-12 * v0.norm().max(1.0));
            }
            let back = inner(&kind, &b, &a, 0.0).unwrap();
            assert!((back - v0.conj()).norm() <= 1e-13 * v0.norm().max(1.0));
        }
    }
}

#[test]
fn positivity_and_gram_matrices() {
    let mut rng = sampling::rng(300);
    let cfg = sampling::config(&mut rng);
    let ks: Vec<_> = (0..4).map(|_| sampling::momentum(&mut rng, 2.0)).collect();
    let fields: Vec<_> = (0..6).map(|_| sampling::field_on(&mut rng, cfg, &ks)).collect();
    let p = sampling::metric_params(&mut rng);
    for kind in [InnerProductKind::Canonical, InnerProductKind::General(p)] {
        let g = gram(&kind, &fields, 0.5).unwrap();
        assert!((g.clone() - g.adjoint()).norm() < 1e-12 * g.norm());
        let ev = nalgebra::SymmetricEigen::new(g).eigenvalues;
        assert!(ev.iter().all(|&x| x > 0.0), "{ev}");
    }
    let dup = vec![fields[0].clone(), fields[1].clone(), fields[0].clone()];
    let g = gram(&InnerProductKind::General(p), &dup, 0.0).unwrap();
    assert!(g.determinant().norm() < 1e-10 * g.norm().powi(3));
}

#[test]
fn relativistic_normalization_gives_two_omega() {
    let mut rng = sampling::rng(301);
    let cfg = sampling::config(&mut rng);
    let p = sampling::metric_params(&mut rng);
    let k = sampling::momentum(&mut rng, 2.0);
    let w = k.omega(cfg.m);
    let mut fields = Vec::new();
    for e in Chirality::ALL {
        for h in Helicity::ALL {
            fields.push(DiscreteModeField::basis(cfg, k, e, h, c(1.0)).unwrap().with_normalization(Normalization::Relativistic(p)));
        }
    }
    let g = gram(&InnerProductKind::General(p), &fields, 0.0).unwrap();
    let want = nalgebra::DMatrix::<C64>::identity(6, 6) * c(2.0 * w);
    assert!((g - want).norm() < 1e-12 * w);
}

#[test]
fn positive_frequency_coincidence_with_sigma3() {
    for seed in 400..420 {
        let (a, b, _) = pair(seed, 3);
        let (ap, _) = a.chirality_split();
        let (bp, _) = b.chirality_split();
        let s = inner(&InnerProductKind::Sigma3, &ap, &bp, 0.2).unwrap();
        let g = inner(&InnerProductKind::General(MetricParams::unit()), &ap, &bp, 0.2).unwrap();
        assert!((s - g).norm() <= 1e-12 * s.norm().max(1.0));
        let (_, bm) = b.chirality_split();
        let p = sampling::metric_params(&mut sampling::rng(seed));
        assert!(inner(&InnerProductKind::General(p), &ap, &bm, 0.9).unwrap().norm() < 1e-12);
    }
}

#[test]
fn negative_mode_sign_flip_keeps_general_positive() {
    let cfg = PhysicsConfig::default();
    let p = MetricParams::from_frak_a([1.0, 2.0, 3.0, 0.5, 0.7, 1.9]).unwrap();
    let f = DiscreteModeField::basis(cfg, kz(), Chirality::Minus, Helicity::Zero, c(1.0)).unwrap();
    let s3 = inner(&InnerProductKind::Sigma3, &f, &f, 0.0).unwrap();
    let gen = decompose_as_sigma3(&f, &f, &p, 0.0).unwrap();
    assert!(s3.re < 0.0);
    assert!((gen - c(1.9 * 2f64.sqrt())).norm() < 1e-13);
}

#[test]
fn energy_and_helicity_are_self_adjoint() {
    for seed in 500..510 {
        let (a, b, p) = pair(seed, 4);
        for kind in [InnerProductKind::Canonical, InnerProductKind::General(p)] {
            let l = inner(&kind, &a.apply_energy(), &b, 0.1).unwrap();
            let r = inner(&kind, &a, &b.apply_energy(), 0.1).unwrap();
            assert!((l - r).norm() <= 1e-12 * l.norm().max(1.0));
            let l = inner(&kind, &a.apply_helicity(), &b, 0.1).unwrap();
            let r = inner(&kind, &a, &b.apply_helicity(), 0.1).unwrap();
            assert!((l - r).norm() <= 1e-12 * l.norm().max(1.0));
            let l = inner(&kind, &a.apply_c(), &b, 0.1).unwrap();
            let r = inner(&kind, &a, &b.apply_c(), 0.1).unwrap();
            assert!((l - r).norm() <= 1e-12 * l.norm().max(1.0));
        }
    }
}

#[test]
fn mismatched_configs_are_rejected() {
    let a = DiscreteModeField::basis(PhysicsConfig::default(), kz(), Chirality::Plus, Helicity::Plus, c(1.0)).unwrap();
    let b = DiscreteModeField::basis(PhysicsConfig::new(2.0, 1.0, 1.0).unwrap(), kz(), Chirality::Plus, Helicity::Plus, c(1.0)).unwrap();
    assert!(matches!(inner(&InnerProductKind::Canonical, &a, &b, 0.0), Err(proca::Error::Incompatible(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_norm_is_positive_and_matches_mode_sum(seed in 0u64..100_000) {
        let (a, _, p) = pair(seed, 3);
        let v = inner(&InnerProductKind::General(p), &a, &a, 0.77).unwrap();
        let mut want = 0.0;
        for (j, md) in a.modes.iter().enumerate() {
            for e in Chirality::ALL { for h in Helicity::ALL {
                want += p.frak_a(e, h) * a.omega(j) * md.c[e.index()][h.index()].norm_sqr();
            }}
        }
        want *= a.cfg.kappa / a.cfg.m;
        prop_assert!(v.re > 0.0);
        prop_assert!((v - c(want)).norm() <= 1e-12 * want);
    }
}
