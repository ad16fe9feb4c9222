//! Cross-cutting checks on the catalog fixtures and the composites built
//! from them.

use gmat_core::construct::{plugin_double, strip_plugin_quadrant};
use gmat_core::search::{normalize_matrix, search_gh_backtrack, SearchSpec};
use gmat_core::*;

#[test]
fn gw13_underlying_design_is_a_symmetric_13_9_6() {
    let m = catalog::get("gw13-s3").unwrap().matrix().unwrap();
    let report = verify_block_design(
        &m,
        DesignKind::Sbibd,
        Some(DesignParams {
            r: 9,
            k: 9,
            lambda: 6,
        }),
        Convention::XY,
    )
    .unwrap();
    assert!(report.passed(), "{}", report);

    // and the full Bhaskar Rao reading passes under the a2b3 presentation
    let brd = verify_block_design(&m, DesignKind::BhaskarRao, None, Convention::XY).unwrap();
    assert!(brd.passed(), "{}", brd);
    assert_eq!(brd.param_value("balance_lambda"), Some("6"));
}

#[test]
fn gh20_is_already_normalized() {
    let m = catalog::get("gh20").unwrap().matrix().unwrap();
    assert_eq!(normalize_matrix(&m).unwrap(), m);
}

#[test]
fn sylvester_doubling_gives_a_real_hadamard() {
    let bh2 = catalog::get("bh2").unwrap().matrix().unwrap();
    let h4 = kronecker_compose(&bh2, &bh2).unwrap();
    let report = verify_numeric(&h4, NumericKind::Real).unwrap();
    assert!(report.passed());
    assert_eq!(report.param_value("c"), Some("4"));
}

#[test]
fn composing_two_order3_matrices_balances_at_order_nine() {
    let u = catalog::get("butson3").unwrap().matrix().unwrap();
    let m = kronecker_compose(&u, &u).unwrap();
    assert_eq!((m.rows(), m.cols()), (9, 9));
    let report = verify_balance(&m, Convention::XY).unwrap();
    assert!(report.passed(), "{}", report);
    assert_eq!(report.param_value("lambda"), Some("3"));
}

#[test]
fn plugin_double_quadrants_recover_the_input_and_its_conjugate() {
    let c = catalog::get("gw17-z3").unwrap().matrix().unwrap();
    let (doubled, report) = plugin_double(&c).unwrap();
    assert!(report.passed());

    let g = c.group().clone();
    let conj = c.map_entries(|e| match e {
        Entry::Elem(x) => Entry::Elem(g.inv(x)),
        other => other,
    });
    assert_eq!(strip_plugin_quadrant(&doubled, true, true).unwrap(), c);
    assert_eq!(strip_plugin_quadrant(&doubled, true, false).unwrap(), c);
    assert_eq!(strip_plugin_quadrant(&doubled, false, true).unwrap(), conj);
    assert_eq!(strip_plugin_quadrant(&doubled, false, false).unwrap(), conj);
}

#[test]
fn exhaustive_order6_search_contains_the_catalog_fixture() {
    let fixture = catalog::get("gh6-z3").unwrap().matrix().unwrap();
    // the fixture is normalized already, so it must appear verbatim
    assert_eq!(normalize_matrix(&fixture).unwrap(), fixture);
    let out = search_gh_backtrack(&SearchSpec::balance_gh(6, &Group::cyclic(3))).unwrap();
    assert!(out.matrices().contains(&fixture));
}

#[test]
fn strange13_rejects_unmasked_properties() {
    let m = catalog::get("strange13").unwrap().matrix().unwrap();
    // wildcards are only meaningful to the masked real check
    assert!(verify_balance(&m, Convention::XY).is_err());
    assert!(verify_butson(&m, 2).is_err());
}
