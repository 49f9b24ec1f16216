use cylmob::construction::{build, build_with_cap, Family};
use cylmob::stabilizer::{
    classify_residual, min_distance, syndrome, PauliOperator, ResidualClass, Sector,
};

fn op(n: usize, s: &str) -> PauliOperator {
    PauliOperator::parse(n, s).unwrap()
}

/// Printed generators with G4's last factor corrected from Z13 to X13.
const CYLINDRICAL_15: [&str; 15] = [
    "X1 X7 X10", "X1 X2 X8 X11", "X2 X9 X12", "X3 X10 X13", "X3 X4 X11 X14", "X4 X12 X15",
    "X5 X7 X13", "X5 X6 X8 X14", "X6 X9 X15", "Z1 Z5 Z7 Z8", "Z2 Z6 Z8 Z9", "Z1 Z3 Z10 Z11",
    "Z2 Z4 Z11 Z12", "Z3 Z5 Z13 Z14", "Z4 Z6 Z14 Z15",
];

/// Möbius replacements for G4, G6, G12, G13 (G4 with the same correction).
const MOEBIUS_CHANGES: [(usize, &str); 4] =
    [(3, "X3 X12 X13"), (5, "X4 X10 X15"), (11, "Z1 Z4 Z10 Z11"), (12, "Z2 Z3 Z11 Z12")];

fn generator_strings(family: Family) -> Vec<String> {
    build(family, 3, 3).unwrap().generators().iter().map(|g| g.to_string()).collect()
}

#[test]
fn cylindrical_15_generators() {
    assert_eq!(generator_strings(Family::Cylindrical), CYLINDRICAL_15);
}

#[test]
fn mobius_15_differs_in_four_generators() {
    let mob = generator_strings(Family::Moebius);
    let mut want: Vec<String> = CYLINDRICAL_15.iter().map(|s| s.to_string()).collect();
    for (i, g) in MOEBIUS_CHANGES {
        want[i] = g.to_string();
    }
    assert_eq!(mob, want);
    let differing = mob.iter().zip(CYLINDRICAL_15).filter(|(a, b)| a != b).count();
    assert_eq!(differing, 4);
}

#[test]
fn worked_examples() {
    let code = build(Family::Cylindrical, 3, 3).unwrap();
    let s = syndrome(&code, &op(15, "Z3 Z7 Z11 Z13")).unwrap();
    assert_eq!(s.support(), vec![0, 1]);
    assert_eq!(classify_residual(&code, &op(15, "X1X7X10")).unwrap(), ResidualClass::Stabilizer);
    assert_eq!(classify_residual(&code, &op(15, "Z7Z10Z13")).unwrap(), ResidualClass::LogicalZ);
    let mob = build(Family::Moebius, 3, 3).unwrap();
    let z8 = op(15, "Z8Z11Z14");
    assert_eq!(classify_residual(&mob, &z8).unwrap(), ResidualClass::LogicalZ);
    assert!(!mob.z_stabilizers().contains(z8.z_part()));
    // Z7 Z10 Z13 is a logical of the cylinder but not of the Möbius code.
    assert_ne!(classify_residual(&mob, &op(15, "Z7Z10Z13")).unwrap(), ResidualClass::LogicalZ);
}

#[test]
fn parameters_by_exhaustive_distance_search() {
    let cases = [
        (Family::Surface, 3, 3, "[[13,1,3]]", 3, 3),
        (Family::Surface, 5, 5, "[[41,1,5]]", 5, 5),
        (Family::Surface, 3, 5, "[[23,1,3/5]]", 5, 3),
        (Family::Cylindrical, 3, 3, "[[15,1,3]]", 3, 3),
        (Family::Cylindrical, 5, 5, "[[45,1,5]]", 5, 5),
        (Family::Cylindrical, 5, 3, "[[25,1,3/5]]", 3, 5),
        (Family::Moebius, 3, 3, "[[15,1,3]]", 3, 3),
        (Family::Moebius, 5, 5, "[[45,1,5]]", 5, 5),
        (Family::Moebius, 5, 3, "[[25,1,3/5]]", 3, 5),
    ];
    for (family, lc, lf, label, dx, dz) in cases {
        let code = build_with_cap(family, lc, lf, 5).unwrap();
        assert_eq!(code.label(), label, "{family:?} {lc}x{lf}");
        assert_eq!(min_distance(&code, Sector::X, 5), Some(dx));
        assert_eq!(min_distance(&code, Sector::Z, 5), Some(dz));
        assert_eq!(code.formula_distances(), (dx, dz));
        assert!(code.d_x().unwrap().verified && code.d_z().unwrap().verified);
    }
}

#[test]
fn logical_pairs_anticommute() {
    for family in Family::ALL {
        let code = build_with_cap(family, 3, 3, 3).unwrap();
        let (lx, lz) = (&code.logical_x()[0], &code.logical_z()[0]);
        assert!(!lx.commutes_with(lz));
        for g in code.generators() {
            assert!(g.commutes_with(lx) && g.commutes_with(lz));
        }
        assert_eq!(lx.weight(), 3);
        assert_eq!(lz.weight(), 3);
    }
}
