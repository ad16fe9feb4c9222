//! Regression anchors for every derived artifact: the generators rerun and
//! their output must match the frozen copies under tests/data byte for byte.
//! Set GMAT_FREEZE=1 to (re)write the frozen copies.

mod common;

use common::*;
use gmat_core::catalog;
use gmat_core::construct::klein_fragment_text;

#[test]
fn gh10_assignment_verdicts_are_frozen() {
    compare_or_freeze("gh10-assignments.txt", &gh10_assignment_summary());
}

#[test]
fn gh10_fixture_matches_first_passing_assignment() {
    let first_pass = gmat_core::construct::build_gh10_z6()
        .into_iter()
        .find(|c| c.report.passed())
        .expect("at least one verifying assignment");
    let fixture = catalog::get("gh10-z6").unwrap().matrix().unwrap();
    assert_eq!(first_pass.matrix, fixture);
}

#[test]
fn four_circulant_verdicts_are_frozen() {
    compare_or_freeze("four-circulant-20.txt", &four_circulant_summary(20));
    compare_or_freeze("four-circulant-28.txt", &four_circulant_summary(28));
}

#[test]
fn gw13_four_convention_runs_are_frozen() {
    compare_or_freeze("gw13-s3-verdicts.txt", &gw13_four_runs());
}

#[test]
fn brock13_diagnostic_is_frozen() {
    compare_or_freeze("brock13-report.txt", &brock13_report_text());
}

#[test]
fn residue39_diagnostic_is_frozen() {
    compare_or_freeze("residue39-report.txt", &residue39_report_text());
}

#[test]
fn klein_fragment_is_frozen() {
    compare_or_freeze("klein-fragment.txt", &klein_fragment_text());
}

#[test]
fn gw17_witness_set_is_frozen() {
    compare_or_freeze("gw17-witnesses.txt", &gw17_witness_summary());
}

#[test]
fn gw17_fixture_matches_first_witness() {
    use gmat_core::search::*;
    use gmat_core::*;
    let g = Group::cyclic(3);
    let out = search_circulant_gw(
        17,
        16,
        &g,
        &CirculantRunOptions {
            limit: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let c = circulant(&g, &out.first_rows[0]).unwrap();
    let fixture = catalog::get("gw17-z3").unwrap().matrix().unwrap();
    assert_eq!(c, fixture);
}

#[test]
fn gh6_search_count_is_frozen() {
    compare_or_freeze("gh6-z3-count.txt", &gh6_search_summary());
}

#[test]
fn brock_fixtures_match_their_builders() {
    use gmat_core::construct::build_brock;
    for (len, name) in [(7usize, "brock7"), (13, "brock13")] {
        let (m, _) = build_brock(len).unwrap();
        let fixture = catalog::get(name).unwrap().matrix().unwrap();
        assert_eq!(m, fixture, "{}", name);
    }
    let (m, _) = gmat_core::construct::build_residue_39().unwrap();
    assert_eq!(m, catalog::get("residue39").unwrap().matrix().unwrap());
}
