//! Cells where the cycle-by-cycle closed form and the exact value differ.
//! These pin the observed behaviour; they do not assert the closed form.

use xconn_core::closed_form::{ceiling_identity, kappa_formula, Family, FamilyParams};
use xconn_core::extra_conn::{kappa_extra_fragment, kappa_extra_subset, Kappa};
use xconn_core::witnesses::{build_witness, WitnessKind, WitnessSpec};
use xconn_core::Error;

#[test]
fn c6_by_c6_at_g2_needs_twelve() {
    let params = FamilyParams::new(Family::CycleCycle, 6, 6, 2).unwrap();
    assert_eq!(kappa_formula(&params).unwrap().value, 11);

    let pg = Family::CycleCycle.build(6, 6).unwrap();
    let exact = kappa_extra_fragment(pg.graph(), 2).unwrap();
    assert_eq!(exact.value, Kappa::Finite(12));

    // The corner construction needs 12 vertices here, not 11.
    let err = build_witness(&WitnessSpec::new(params, WitnessKind::S3)).unwrap_err();
    assert!(matches!(
        err,
        Error::WitnessSizeMismatch {
            predicted: 11,
            actual: 12,
            ..
        }
    ));
}

#[test]
fn corner_ceiling_split_is_not_exact() {
    assert!(!ceiling_identity(Family::CycleCycle, 2));
    assert!(ceiling_identity(Family::CycleCycle, 3));
}

/// Independent confirmation with the brute-force solver; about a billion
/// subsets at sizes up to 11, so it is not run by default.
#[test]
#[ignore]
fn c6_by_c6_at_g2_by_subsets() {
    let pg = Family::CycleCycle.build(6, 6).unwrap();
    let exact = kappa_extra_subset(pg.graph(), 2, Some(u64::MAX)).unwrap();
    assert_eq!(exact.value, Kappa::Finite(12));
}
