use std::sync::Arc;

use sylow2::constructions::wreath_z2;
use sylow2::oracle::{gl2, invariant_fingerprint, sylow2};
use sylow2::presentations::{build_base, BaseGroupSpec, BaseKind};
use sylow2::DEFAULT_CAP;

fn base_fingerprint(kind: BaseKind, t: u32) -> sylow2::oracle::Fingerprint {
    invariant_fingerprint(&build_base(BaseGroupSpec::new(kind, t)).unwrap())
}

#[test]
fn gl2_3_sylow_is_semidihedral_16() {
    let p = sylow2(&gl2(3).unwrap());
    assert_eq!(p.order(), 16);
    assert_eq!(invariant_fingerprint(&p), base_fingerprint(BaseKind::Semidihedral, 2));
}

#[test]
fn gl2_7_sylow_is_semidihedral_32() {
    let p = sylow2(&gl2(7).unwrap());
    assert_eq!(p.order(), 32);
    assert_eq!(invariant_fingerprint(&p), base_fingerprint(BaseKind::Semidihedral, 3));
}

#[test]
fn gl2_5_sylow_is_z4_wreath_z2() {
    let p = sylow2(&gl2(5).unwrap());
    let z4 = Arc::new(build_base(BaseGroupSpec::new(BaseKind::Cyclic, 2)).unwrap());
    let w = wreath_z2(&z4, DEFAULT_CAP).unwrap();
    assert_eq!(invariant_fingerprint(&p), invariant_fingerprint(&w));
    assert_ne!(invariant_fingerprint(&p), base_fingerprint(BaseKind::Semidihedral, 3));
}

#[test]
fn catalog_agrees_with_matrices() {
    for q in [3u32, 5, 7, 11] {
        let p = sylow2(&gl2(q).unwrap());
        let spec = format!("gl 2 {q}").parse().unwrap();
        let c = sylow2::catalog::construct_sylow(&spec, DEFAULT_CAP).unwrap();
        assert_eq!(invariant_fingerprint(&p), invariant_fingerprint(&c), "q = {q}");
    }
}
