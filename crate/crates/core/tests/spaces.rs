//! Cross-validation of the two solution-space engines and the theorem
//! instances they make checkable: elimination kernels against exhaustive
//! enumeration, Jordan spaces against derivation spaces, and both against
//! the inner maps.

use std::sync::Arc;

use matderiv::{
    build_constraints, enumerate_space, example1_algebra, example1_map, inner_space, is_derivation,
    is_jordan, kernel_mod_p, same_space, Algebra, MapKind, MapSpace, Zmod, DEFAULT_BUDGET,
};

const STAGED_BUDGET: u64 = 10_000_000;

fn z(m: u64) -> Zmod {
    Zmod::new(m).unwrap()
}

const ALL_KINDS: [MapKind; 3] = [
    MapKind::Jordan,
    MapKind::Derivation,
    MapKind::Antiderivation,
];

fn kernel(alg: &Arc<Algebra<Zmod>>, kind: MapKind) -> MapSpace<Zmod> {
    kernel_mod_p(&build_constraints(alg, kind)).unwrap()
}

#[test]
fn kernel_and_enumeration_agree_everywhere_both_run() {
    let configs: Vec<(&str, Arc<Algebra<Zmod>>)> = vec![
        ("T2/Z2", Algebra::upper_triangular(2, z(2)).unwrap()),
        ("T2/Z3", Algebra::upper_triangular(2, z(3)).unwrap()),
        ("M2/Z2", Algebra::full(2, z(2)).unwrap()),
        ("M2/Z3", Algebra::full(2, z(3)).unwrap()),
        ("Ex1/Z2", example1_algebra()),
    ];
    for (name, alg) in &configs {
        for kind in ALL_KINDS {
            let from_kernel = kernel(alg, kind);
            let from_scan = enumerate_space(alg, kind, STAGED_BUDGET).unwrap();
            assert!(
                same_space(&from_kernel, &from_scan).unwrap(),
                "{name} {kind:?}: kernel and enumeration disagree"
            );
        }
    }
}

#[test]
fn triangular_theorem_instances() {
    // Jordan space = derivation space = inner space on T_n, here run for
    // n in {2, 3} over Z/2 and Z/3.
    for n in [2usize, 3] {
        for m in [2u64, 3] {
            let alg = Algebra::upper_triangular(n, z(m)).unwrap();
            let jordan = kernel(&alg, MapKind::Jordan);
            let deriv = kernel(&alg, MapKind::Derivation);
            assert!(
                same_space(&jordan, &deriv).unwrap(),
                "T{n}/Z{m}: jordan space must equal derivation space"
            );
            let inner = inner_space(&alg, DEFAULT_BUDGET).unwrap();
            assert!(
                same_space(&jordan, &inner).unwrap(),
                "T{n}/Z{m}: jordan space must equal inner space"
            );
        }
    }
}

#[test]
fn full_theorem_instances() {
    for m in [2u64, 3] {
        let alg = Algebra::full(2, z(m)).unwrap();
        let jordan = kernel(&alg, MapKind::Jordan);
        let deriv = kernel(&alg, MapKind::Derivation);
        let inner = inner_space(&alg, DEFAULT_BUDGET).unwrap();
        assert!(same_space(&jordan, &deriv).unwrap());
        assert!(same_space(&jordan, &inner).unwrap());
        // The common dimension is 3: inner maps modulo the scalar center.
        assert_eq!(jordan.dimension(), Some(3));
    }
}

#[test]
fn example_algebra_breaks_the_pattern() {
    // On the two-torsion pattern algebra the Jordan space is strictly
    // bigger than the derivation space, the shipped map witnessing the gap.
    let alg = example1_algebra();
    let jordan = kernel(&alg, MapKind::Jordan);
    let deriv = kernel(&alg, MapKind::Derivation);
    let inner = inner_space(&alg, DEFAULT_BUDGET).unwrap();

    assert!(!same_space(&jordan, &deriv).unwrap());
    assert!(jordan.dimension().unwrap() > deriv.dimension().unwrap());

    let d = example1_map(&alg);
    assert!(jordan.contains(&d).unwrap());
    assert!(!deriv.contains(&d).unwrap());

    // Derivations still sit inside the Jordan space, and the inner maps
    // inside the derivations.
    for b in deriv.representatives() {
        assert!(jordan.contains(&b).unwrap());
    }
    for m in inner.members(DEFAULT_BUDGET).unwrap() {
        assert!(deriv.contains(&m).unwrap());
    }
}

#[test]
fn scaled_triangular_kernel_instance() {
    // T_3 over Z/2: 36 unknowns, kernel-only scale.
    let alg = Algebra::upper_triangular(3, z(2)).unwrap();
    let jordan = kernel(&alg, MapKind::Jordan);
    let deriv = kernel(&alg, MapKind::Derivation);
    assert_eq!(jordan.dimension(), deriv.dimension());
    assert!(same_space(&jordan, &deriv).unwrap());
    // 6 basis elements modulo a 1-dimensional center.
    assert_eq!(jordan.dimension(), Some(5));

    for b in jordan.representatives() {
        assert!(is_derivation(&b).holds);
    }
    let inner = inner_space(&alg, DEFAULT_BUDGET).unwrap();
    assert!(same_space(&jordan, &inner).unwrap());
}

#[test]
fn antiderivations_are_jordan_derivations() {
    // Linear-algebra form of the containment: every antiderivation basis
    // vector lies in the Jordan kernel, so the whole space does.
    let configs: Vec<Arc<Algebra<Zmod>>> = vec![
        Algebra::upper_triangular(2, z(2)).unwrap(),
        Algebra::upper_triangular(2, z(3)).unwrap(),
        Algebra::upper_triangular(3, z(2)).unwrap(),
        Algebra::full(2, z(2)).unwrap(),
        Algebra::full(2, z(3)).unwrap(),
        example1_algebra(),
    ];
    for alg in &configs {
        let jordan = kernel(alg, MapKind::Jordan);
        for kind in [MapKind::Derivation, MapKind::Antiderivation] {
            let space = kernel(alg, kind);
            for b in space.representatives() {
                assert!(jordan.contains(&b).unwrap());
            }
        }
        // Member-level spot check through the classifier as well.
        let anti = kernel(alg, MapKind::Antiderivation);
        if anti.count().is_some_and(|c| c <= 4096) {
            for m in anti.members(DEFAULT_BUDGET).unwrap() {
                let res = is_jordan(&m);
                assert!(res.holds);
                assert!(res.certificates.is_empty());
            }
        }
    }
}

#[test]
fn kernel_closure_spot_checks() {
    let alg = example1_algebra();
    let jordan = kernel(&alg, MapKind::Jordan);
    let basis = jordan.representatives();
    assert!(basis.len() >= 2);
    let sum = basis[0].add(&basis[1]).unwrap();
    assert!(jordan.contains(&sum).unwrap());
    let shifted = sum.add(&example1_map(&alg)).unwrap();
    assert!(jordan.contains(&shifted).unwrap());
}
