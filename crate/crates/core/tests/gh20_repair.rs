//! Derivation record for the order-20 fixture repair.
//!
//! The transmitted copy of the 20x20 matrix is not balanced: rows 16-19 each
//! hold five 3s and three 4s, and row 15 breaks column balance at columns
//! 9/10. This test re-derives the shipped repair from scratch: taking the 16
//! mutually consistent rows (after swapping the two transposed entries of
//! row 15), it exhaustively completes the design and checks that the unique
//! nearest completion is exactly the shipped fixture, with the corruption
//! explained as a uniform +1 shift of the final diagonal block.

use gmat_core::*;

/// Rows 15..19 exactly as transmitted.
const PRINTED_TAIL: [[u32; 20]; 5] = [
    [0, 1, 4, 2, 3, 2, 1, 0, 2, 1, 4, 3, 2, 3, 4, 0, 0, 3, 1, 4],
    [0, 3, 2, 1, 1, 2, 3, 4, 0, 4, 3, 2, 4, 1, 3, 0, 2, 0, 3, 1],
    [0, 3, 2, 1, 2, 4, 1, 3, 4, 2, 0, 3, 3, 4, 0, 1, 3, 2, 1, 0],
    [0, 3, 2, 1, 3, 1, 4, 2, 3, 0, 2, 4, 1, 0, 4, 3, 0, 1, 2, 3],
    [0, 3, 2, 1, 4, 3, 2, 1, 2, 3, 4, 0, 0, 3, 1, 4, 1, 3, 0, 2],
];

fn fixture_rows() -> Vec<Vec<u32>> {
    let m = catalog::get("gh20").unwrap().matrix().unwrap();
    (0..20)
        .map(|i| m.row(i).iter().map(|e| e.elem().unwrap()).collect())
        .collect()
}

/// All completions of the last four rows against the given sixteen, with the
/// first four columns pinned per row. Pure counting backtracker, independent
/// of the library's search module.
fn completions(base: &[Vec<u32>], pinned: &[[u32; 4]; 4]) -> Vec<Vec<[u32; 20]>> {
    let mut sols = Vec::new();
    let mut rows: Vec<Vec<u32>> = base.to_vec();
    extend(&mut rows, pinned, 0, &mut sols);
    sols
}

fn extend(
    rows: &mut Vec<Vec<u32>>,
    pinned: &[[u32; 4]; 4],
    depth: usize,
    sols: &mut Vec<Vec<[u32; 20]>>,
) {
    if depth == 4 {
        sols.push(
            rows[16..]
                .iter()
                .map(|r| <[u32; 20]>::try_from(r.as_slice()).unwrap())
                .collect(),
        );
        return;
    }
    let n = rows.len();
    let mut counts = vec![[0u8; 5]; n];
    let mut row = [0u32; 20];
    row[..4].copy_from_slice(&pinned[depth]);
    for (t, r) in rows.iter().enumerate() {
        for c in 0..4 {
            counts[t][((5 + row[c] - r[c]) % 5) as usize] += 1;
        }
    }
    if counts.iter().any(|c| c.iter().any(|&x| x > 4)) {
        return;
    }
    let rows_snapshot = rows.clone();
    place(
        &rows_snapshot,
        &mut counts,
        &mut row,
        4,
        rows,
        pinned,
        depth,
        sols,
    );
}

#[allow(clippy::too_many_arguments)]
fn place(
    fixed: &[Vec<u32>],
    counts: &mut [[u8; 5]],
    row: &mut [u32; 20],
    col: usize,
    rows: &mut Vec<Vec<u32>>,
    pinned: &[[u32; 4]; 4],
    depth: usize,
    sols: &mut Vec<Vec<[u32; 20]>>,
) {
    if col == 20 {
        rows.push(row.to_vec());
        extend(rows, pinned, depth + 1, sols);
        rows.pop();
        return;
    }
    'vals: for v in 0..5u32 {
        for (t, r) in fixed.iter().enumerate() {
            let q = ((5 + v - r[col]) % 5) as usize;
            if counts[t][q] == 4 {
                for (u, ru) in fixed.iter().enumerate().take(t) {
                    counts[u][((5 + v - ru[col]) % 5) as usize] -= 1;
                }
                continue 'vals;
            }
            counts[t][q] += 1;
        }
        row[col] = v;
        place(fixed, counts, row, col + 1, rows, pinned, depth, sols);
        for (t, r) in fixed.iter().enumerate() {
            counts[t][((5 + v - r[col]) % 5) as usize] -= 1;
        }
    }
}

#[test]
fn shipped_repair_is_the_unique_nearest_completion() {
    let fixture = fixture_rows();

    // row 15 as transmitted differs from the fixture by one adjacent swap
    let mut printed15 = PRINTED_TAIL[0].to_vec();
    assert_ne!(printed15, fixture[15]);
    printed15.swap(9, 10);
    assert_eq!(printed15, fixture[15]);

    // base: transmitted rows 0..14 equal the fixture; row 15 after the swap
    let base: Vec<Vec<u32>> = fixture[..16].to_vec();
    let pinned: [[u32; 4]; 4] = [
        PRINTED_TAIL[1][..4].try_into().unwrap(),
        PRINTED_TAIL[2][..4].try_into().unwrap(),
        PRINTED_TAIL[3][..4].try_into().unwrap(),
        PRINTED_TAIL[4][..4].try_into().unwrap(),
    ];
    let sols = completions(&base, &pinned);
    assert_eq!(sols.len(), 24, "completion count changed");

    let dist = |sol: &Vec<[u32; 20]>| -> usize {
        sol.iter()
            .zip(&PRINTED_TAIL[1..])
            .map(|(a, b)| a.iter().zip(b.iter()).filter(|(x, y)| x != y).count())
            .sum()
    };
    let mut ranked: Vec<(usize, &Vec<[u32; 20]>)> = sols.iter().map(|s| (dist(s), s)).collect();
    ranked.sort_by_key(|(d, _)| *d);
    assert_eq!(ranked[0].0, 16, "nearest completion distance changed");
    assert!(ranked[1].0 >= 38, "repair is no longer uniquely minimal");

    // the nearest completion is exactly the shipped fixture tail
    for (srow, frow) in ranked[0].1.iter().zip(&fixture[16..]) {
        assert_eq!(srow.as_slice(), frow.as_slice());
    }

    // and the corruption is a uniform +1 shift of the final diagonal block
    for (p, f) in PRINTED_TAIL[1..].iter().zip(&fixture[16..]) {
        for c in 0..20 {
            if c >= 16 {
                assert_eq!(p[c], (f[c] + 1) % 5);
            } else {
                assert_eq!(p[c], f[c]);
            }
        }
    }
}
