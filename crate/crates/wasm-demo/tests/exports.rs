use proca::fields::DiscreteModeField;
use proca::inner::{inner, InnerProductKind};
use proca::io::write_field;
use proca::localized::i_closed;
use proca::mode_algebra::{Chirality, Helicity, Momentum3, PhysicsConfig};
use proca::C64;
use proca_wasm_demo::*;

fn two_mode() -> DiscreteModeField {
    let cfg = PhysicsConfig::default();
    let a = DiscreteModeField::basis(cfg, Momentum3::new(0.3, 0.0, 0.5), Chirality::Plus, Helicity::Plus, C64::new(1.0, 0.0)).unwrap();
    let b = DiscreteModeField::basis(cfg, Momentum3::new(-0.2, 0.1, 0.4), Chirality::Minus, Helicity::Zero, C64::new(0.3, 0.0)).unwrap();
    a.add(&b).unwrap()
}

#[test]
fn profile_matches_the_library() {
    let v = localized_profile(1.0).unwrap();
    let closed = i_closed(1.0, &PhysicsConfig::default()).unwrap();
    assert_eq!(&v[..3], &closed);
    for j in 0..3 {
        assert!((v[3 + j] - closed[j]).abs() < 1e-8 * closed[j].abs());
    }
    assert!(localized_profile(0.0).is_err());
}

#[test]
fn inner_product_matches_the_library() {
    let f = two_mode();
    let text = write_field(&f);
    for (name, kind) in [("sigma3", InnerProductKind::Sigma3), ("canonical", InnerProductKind::Canonical)] {
        let v = inner_product(&text, &text, name, 0.3).unwrap();
        let want = inner(&kind, &f, &f, 0.3).unwrap();
        assert_eq!(v, vec![want.re, want.im]);
    }
    assert!(inner_product(&text, &text, "other", 0.0).is_err());
    assert!(inner_product("M 1\n", &text, "general", 0.0).unwrap_err().starts_with("field A"));
}

#[test]
fn density_slice_is_nonnegative_and_sized() {
    let text = write_field(&two_mode());
    let rho = density_slice(&text, 0.5, 9, 5.0).unwrap();
    assert_eq!(rho.len(), 81);
    assert!(rho.iter().all(|r| *r >= 0.0));
    assert!(rho.iter().any(|r| *r > 0.0));
    assert!(density_slice(&text, 0.0, 0, 5.0).is_err());
}
