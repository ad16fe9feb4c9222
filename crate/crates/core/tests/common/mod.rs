//! Shared helpers for the integration suites: generators for the derived
//! (frozen) reports and the independent oracles the exact verifiers are
//! cross-checked against.

#![allow(dead_code)]

use std::collections::HashMap;

use gmat_core::construct::*;
use gmat_core::search::*;
use gmat_core::*;

/// Compares generated text against the frozen copy under tests/data, or
/// rewrites the frozen copy when GMAT_FREEZE is set.
pub fn compare_or_freeze(name: &str, text: &str) {
    let path = format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), name);
    if std::env::var("GMAT_FREEZE").is_ok() {
        std::fs::create_dir_all(format!("{}/tests/data", env!("CARGO_MANIFEST_DIR"))).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let frozen = std::fs::read_to_string(&path).unwrap_or_else(|e| {
        panic!(
            "missing frozen fixture {} ({}); run with GMAT_FREEZE=1",
            name, e
        )
    });
    assert_eq!(text, frozen, "derived output drifted from frozen {}", name);
}

pub fn gh10_assignment_summary() -> String {
    let mut out = String::new();
    for c in build_gh10_z6() {
        out.push_str(&format!(
            "X=p{} Y=p{} Z=p{} W=p{} {}\n",
            c.assignment[0],
            c.assignment[1],
            c.assignment[2],
            c.assignment[3],
            c.report.verdict()
        ));
    }
    out
}

pub fn four_circulant_summary(order: usize) -> String {
    let (g, rows) = match order {
        20 => four_circulant_set_20(),
        28 => four_circulant_set_28(),
        _ => panic!("unsupported set"),
    };
    let results = build_four_circulant(&g, &rows).unwrap();
    let passing = results.iter().filter(|r| r.report.passed()).count();
    let mut out = format!("arrangements: {}  passing: {}\n", results.len(), passing);
    for r in &results {
        out.push_str(&format!(
            "{}/{}/p{}p{}p{}p{} {}\n",
            r.template,
            r.policy,
            r.assignment[0],
            r.assignment[1],
            r.assignment[2],
            r.assignment[3],
            r.report.verdict()
        ));
    }
    out
}

/// The S3 weighing matrix under both presentations and both quotient
/// conventions: four full reports.
pub fn gw13_four_runs() -> String {
    let base = catalog::get("gw13-s3").unwrap().fixture_text();
    let mut out = String::new();
    for presentation in ["s3-a2b3", "s3-a3b2"] {
        let text = base.replace("group: s3-a2b3", &format!("group: {}", presentation));
        let m = GMatrix::parse(&text).unwrap();
        for convention in [Convention::XY, Convention::YX] {
            let report = verify_balance(&m, convention).unwrap();
            out.push_str(&format!(
                "== presentation={} convention={}\n{}",
                presentation, convention, report
            ));
        }
    }
    out
}

pub fn brock13_report_text() -> String {
    let (_, report) = build_brock(13).unwrap();
    report.to_string()
}

pub fn residue39_report_text() -> String {
    let (_, report) = build_residue_39().unwrap();
    report.to_string()
}

pub fn gw17_witness_summary() -> String {
    let g = Group::cyclic(3);
    let out = search_circulant_gw(17, 16, &g, &CirculantRunOptions::default()).unwrap();
    let mut text = format!("witnesses: {}\n", out.first_rows.len());
    for row in &out.first_rows {
        let toks: Vec<String> = row.iter().map(|e| entry_token(*e, &g)).collect();
        text.push_str(&toks.join(" "));
        text.push('\n');
    }
    text
}

pub fn gh6_search_summary() -> String {
    let spec = SearchSpec::balance_gh(6, &Group::cyclic(3));
    let out = search_gh_backtrack(&spec).unwrap();
    format!("normalized solutions: {}\n", out.matrices().len())
}

/// Independent balance oracle: dictionary counting with token keys, no group
/// ring machinery. Zeros skip; equal-weight and pair-independence checks
/// mirror the verifier's contract.
pub fn dict_balance_oracle(m: &GMatrix, convention: Convention) -> bool {
    let g = m.group();
    let weight0 = m.row_weight(0);
    if m.has_zero() && (0..m.rows()).any(|i| m.row_weight(i) != weight0) {
        return false;
    }
    let mut reference: Option<HashMap<String, usize>> = None;
    for i in 0..m.rows() {
        for j in (i + 1)..m.rows() {
            let mut counts: HashMap<String, usize> = HashMap::new();
            for c in 0..m.cols() {
                if let (Entry::Elem(x), Entry::Elem(y)) = (m.entry(i, c), m.entry(j, c)) {
                    let q = match convention {
                        Convention::XY => g.mul(x, g.inv(y)),
                        Convention::YX => g.mul(g.inv(y), x),
                    };
                    *counts.entry(g.token(q)).or_insert(0) += 1;
                }
            }
            // uniform over the whole group
            let first = counts.get(&g.token(0)).copied().unwrap_or(0);
            for e in g.elements() {
                if counts.get(&g.token(e)).copied().unwrap_or(0) != first {
                    return false;
                }
            }
            match &reference {
                Some(r) => {
                    let rf = r.get(&g.token(0)).copied().unwrap_or(0);
                    if rf != first {
                        return false;
                    }
                }
                None => reference = Some(counts),
            }
        }
    }
    true
}

/// Floating-point Gram oracle: the largest off-diagonal magnitude of
/// M * conj(M)^T with entries evaluated as complex roots of unity.
pub fn float_gram_max_offdiag(m: &GMatrix, q: u32) -> f64 {
    let base = m.group().order();
    let scale = (q / base) as f64;
    let angle = |e: Entry| -> (f64, f64) {
        let k = e.elem().expect("root entries") as f64 * scale;
        let t = 2.0 * std::f64::consts::PI * k / q as f64;
        (t.cos(), t.sin())
    };
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in (i + 1)..m.rows() {
            let (mut re, mut im) = (0.0, 0.0);
            for c in 0..m.cols() {
                let (ar, ai) = angle(m.entry(i, c));
                let (br, bi) = angle(m.entry(j, c));
                // a * conj(b)
                re += ar * br + ai * bi;
                im += ai * br - ar * bi;
            }
            worst = worst.max((re * re + im * im).sqrt());
        }
    }
    worst
}

/// Brute-force GH enumeration: complete candidate rows are generated without
/// any partial-count pruning and tested with the dictionary oracle against
/// all earlier rows. Independent of the pruned backtracker.
pub fn brute_force_gh(v: usize, group: &Group) -> Vec<GMatrix> {
    let order = group.order();
    let mut results = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![vec![0; v]];

    fn balanced_pair(g: &Group, a: &[u32], b: &[u32]) -> bool {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for (x, y) in a.iter().zip(b) {
            *counts.entry(g.mul(*x, g.inv(*y))).or_insert(0) += 1;
        }
        let first = counts.get(&0).copied().unwrap_or(0);
        g.elements()
            .all(|e| counts.get(&e).copied().unwrap_or(0) == first)
    }

    fn rec(v: usize, order: u32, g: &Group, rows: &mut Vec<Vec<u32>>, results: &mut Vec<GMatrix>) {
        if rows.len() == v {
            let m = GMatrix::from_rows(
                g,
                rows.iter()
                    .map(|r| r.iter().map(|&x| Entry::Elem(x)).collect())
                    .collect(),
            )
            .unwrap();
            results.push(m);
            return;
        }
        // all rows with column 0 pinned to the identity, in lexicographic order
        let cells = v - 1;
        let total = (order as u64).pow(cells as u32);
        for code in 0..total {
            let mut row = vec![0u32; v];
            let mut c = code;
            for cell in (1..v).rev() {
                row[cell] = (c % order as u64) as u32;
                c /= order as u64;
            }
            if rows.iter().all(|prev| balanced_pair(g, prev, &row)) {
                rows.push(row);
                rec(v, order, g, rows, results);
                rows.pop();
            }
        }
    }

    rec(v, order, group, &mut rows, &mut results);
    results
}
