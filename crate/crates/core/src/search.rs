//! Exhaustive and circulant-restricted searches for group-orthogonal
//! matrices at desk scale.
//!
//! Candidate order is lexicographic everywhere (row-major cells, element
//! indexes ascending), so result sets are reproducible and runs can be
//! partitioned by first-row prefix into independent work units whose merge
//! reproduces the serial order exactly.

use std::fmt;
use std::time::Instant;

use crate::group::Group;
use crate::matrix::{circulant, Entry, GMatrix, MatrixError};
use crate::verify::{verify_balance, Convention, VerifyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    BadParameters(String),
    BeyondDeskScale { cells: u64, bound: u64 },
    NonAbelian(String),
    HasZeros,
    Matrix(MatrixError),
    Verify(VerifyError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::BadParameters(msg) => write!(f, "bad search parameters: {}", msg),
            SearchError::BeyondDeskScale { cells, bound } => write!(
                f,
                "search of {} cells exceeds the desk-scale bound {} (raise the bound to force)",
                cells, bound
            ),
            SearchError::NonAbelian(what) => write!(f, "{} needs an abelian group", what),
            SearchError::HasZeros => write!(f, "input must not contain zeros or wildcards"),
            SearchError::Matrix(e) => write!(f, "{}", e),
            SearchError::Verify(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for SearchError {}

impl From<MatrixError> for SearchError {
    fn from(e: MatrixError) -> SearchError {
        SearchError::Matrix(e)
    }
}

impl From<VerifyError> for SearchError {
    fn from(e: VerifyError) -> SearchError {
        SearchError::Verify(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Square balance (generalized Hadamard) matrices, no zeros.
    BalanceGh,
    /// Circulant generalized weighing matrices with a prescribed weight.
    CirculantGw,
    /// Butson matrices over a roots-of-unity group.
    Butson,
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchTarget::BalanceGh => "balance-gh",
            SearchTarget::CirculantGw => "circulant-gw",
            SearchTarget::Butson => "butson",
        })
    }
}

/// Parameters for a search run. `prefix` pins the leading free cells to one
/// work unit of a partitioned run.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub target: SearchTarget,
    pub v: usize,
    pub group: Group,
    pub weight: Option<usize>,
    pub normalized: bool,
    pub limit: Option<usize>,
    pub prefix: Option<Vec<u32>>,
    /// Upper bound on v * |G| accepted without forcing; None lifts the guard.
    pub desk_bound: Option<u64>,
}

impl SearchSpec {
    pub fn balance_gh(v: usize, group: &Group) -> SearchSpec {
        SearchSpec {
            target: SearchTarget::BalanceGh,
            v,
            group: group.clone(),
            weight: None,
            normalized: true,
            limit: None,
            prefix: None,
            desk_bound: Some(24),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Assignments attempted (search tree nodes).
    pub nodes: u64,
    /// Wall time; informational only, never part of determinism checks.
    pub wall_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The divisibility preflight ruled the space empty without searching.
    ProvenEmpty { reason: String },
    /// The enumeration ran to completion (or to the result limit).
    Completed {
        matrices: Vec<GMatrix>,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn matrices(&self) -> &[GMatrix] {
        match self {
            SearchOutcome::Completed { matrices, .. } => matrices,
            SearchOutcome::ProvenEmpty { .. } => &[],
        }
    }

    pub fn is_proven_empty(&self) -> bool {
        matches!(self, SearchOutcome::ProvenEmpty { .. })
    }
}

/// Row-by-row backtracking for balance matrices. Normalization fixes row 0
/// and column 0 to the identity; a partial row is pruned as soon as any
/// quotient-multiset count against an earlier row exceeds v / |G|. Solutions
/// come back in lexicographic order and every one passes `verify_balance`.
pub fn search_gh_backtrack(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    match spec.target {
        SearchTarget::Butson => return search_butson(spec),
        SearchTarget::CirculantGw => {
            // route to the circulant engine; weight is the GW parameter k
            let k = spec.weight.ok_or_else(|| {
                SearchError::BadParameters("circulant-gw target needs a weight".into())
            })?;
            let options = CirculantRunOptions {
                limit: spec.limit,
                ..Default::default()
            };
            let result = search_circulant_gw(spec.v, k, &spec.group, &options)?;
            let matrices = result
                .first_rows
                .iter()
                .map(|row| circulant(&spec.group, row).expect("accepted rows are nonempty"))
                .collect();
            return Ok(SearchOutcome::Completed {
                matrices,
                stats: result.stats,
            });
        }
        SearchTarget::BalanceGh => {}
    }
    let v = spec.v;
    let g = &spec.group;
    let order = g.order() as usize;
    if v == 0 {
        return Err(SearchError::BadParameters("v must be positive".into()));
    }
    if let Some(bound) = spec.desk_bound {
        let cells = v as u64 * order as u64;
        if cells > bound {
            return Err(SearchError::BeyondDeskScale { cells, bound });
        }
    }
    if !v.is_multiple_of(order) {
        return Ok(SearchOutcome::ProvenEmpty {
            reason: format!(
                "group order {} does not divide the pair overlap {}",
                order, v
            ),
        });
    }

    let started = Instant::now();
    let cap = (v / order) as u8;
    let mut matrices = Vec::new();
    let mut stats = SearchStats::default();

    // Free cells in row-major order; normalization pins row 0 and column 0.
    let free: Vec<(usize, usize)> = if spec.normalized {
        (1..v).flat_map(|r| (1..v).map(move |c| (r, c))).collect()
    } else {
        (0..v).flat_map(|r| (0..v).map(move |c| (r, c))).collect()
    };
    let prefix = spec.prefix.clone().unwrap_or_default();
    if prefix.len() > free.len() || prefix.iter().any(|&x| x as usize >= order) {
        return Err(SearchError::BadParameters("invalid prefix".into()));
    }

    let mut grid = vec![0u32; v * v];
    // counts[r][j][q]: quotient q multiplicity between row r and earlier row j
    let mut counts = vec![vec![[0u8; 32]; v]; v];
    debug_assert!(order <= 32);

    struct Ctx<'a> {
        v: usize,
        g: &'a Group,
        cap: u8,
        free: &'a [(usize, usize)],
        limit: Option<usize>,
    }

    fn place(
        ctx: &Ctx,
        grid: &mut [u32],
        counts: &mut [Vec<[u8; 32]>],
        cell: usize,
        prefix: &[u32],
        matrices: &mut Vec<GMatrix>,
        stats: &mut SearchStats,
    ) -> bool {
        if ctx.limit.is_some_and(|l| matrices.len() >= l) {
            return false;
        }
        if cell == ctx.free.len() {
            matrices.push(grid_to_matrix(ctx.g, ctx.v, grid));
            return ctx.limit.is_none_or(|l| matrices.len() < l);
        }
        let (r, c) = ctx.free[cell];
        let choices: Vec<u32> = if cell < prefix.len() {
            vec![prefix[cell]]
        } else {
            (0..ctx.g.order()).collect()
        };
        for x in choices {
            stats.nodes += 1;
            let mut ok = true;
            let mut advanced = 0;
            for j in 0..r {
                let q = ctx.g.quotient(x, grid[j * ctx.v + c]) as usize;
                if counts[r][j][q] == ctx.cap {
                    ok = false;
                    break;
                }
                counts[r][j][q] += 1;
                advanced += 1;
            }
            if ok {
                grid[r * ctx.v + c] = x;
                let keep = place(ctx, grid, counts, cell + 1, prefix, matrices, stats);
                for j in 0..r {
                    let q = ctx.g.quotient(x, grid[j * ctx.v + c]) as usize;
                    counts[r][j][q] -= 1;
                }
                if !keep {
                    return false;
                }
            } else {
                for j in 0..advanced {
                    let q = ctx.g.quotient(x, grid[j * ctx.v + c]) as usize;
                    counts[r][j][q] -= 1;
                }
            }
        }
        true
    }

    // normalization pins column 0 to the identity, so every row pair starts
    // with one identity quotient on the books
    if spec.normalized {
        for (r, row_counts) in counts.iter_mut().enumerate() {
            for pair_counts in row_counts.iter_mut().take(r) {
                pair_counts[0] += 1;
            }
        }
    }

    let ctx = Ctx {
        v,
        g,
        cap,
        free: &free,
        limit: spec.limit,
    };
    place(
        &ctx,
        &mut grid,
        &mut counts,
        0,
        &prefix,
        &mut matrices,
        &mut stats,
    );
    stats.wall_ms = started.elapsed().as_millis();

    debug_assert!(matrices
        .iter()
        .all(|m| verify_balance(m, Convention::XY).is_ok_and(|r| r.passed())));
    Ok(SearchOutcome::Completed { matrices, stats })
}

fn grid_to_matrix(g: &Group, v: usize, grid: &[u32]) -> GMatrix {
    let rows = (0..v)
        .map(|r| (0..v).map(|c| Entry::Elem(grid[r * v + c])).collect())
        .collect();
    GMatrix::from_rows(g, rows).expect("square grid")
}

/// Butson target: same normalized row-by-row enumeration, but rows are
/// accepted by exact cyclotomic Gram sums on completion (no count pruning
/// applies). Desk scale only.
fn search_butson(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    let q = spec.group.roots_order().ok_or_else(|| {
        SearchError::BadParameters("butson target needs a roots-of-unity group".into())
    })?;
    let v = spec.v;
    if v == 0 {
        return Err(SearchError::BadParameters("v must be positive".into()));
    }
    if let Some(bound) = spec.desk_bound {
        let cells = v as u64 * q as u64;
        if cells > bound {
            return Err(SearchError::BeyondDeskScale { cells, bound });
        }
    }
    let started = Instant::now();

    struct ButsonSearch<'a> {
        q: u32,
        v: usize,
        group: &'a Group,
        limit: Option<usize>,
        matrices: Vec<GMatrix>,
        stats: SearchStats,
    }

    impl ButsonSearch<'_> {
        // returns false once the result limit is reached
        fn extend(&mut self, rows: &mut Vec<Vec<u32>>) -> bool {
            if rows.len() == self.v {
                let m = GMatrix::from_rows(
                    self.group,
                    rows.iter()
                        .map(|r| r.iter().map(|&x| Entry::Elem(x)).collect())
                        .collect(),
                )
                .expect("shape");
                self.matrices.push(m);
                return self.limit.is_none_or(|l| self.matrices.len() < l);
            }
            let mut row = vec![0u32; self.v];
            self.fill(&mut row, 0, rows)
        }

        fn fill(&mut self, row: &mut Vec<u32>, col: usize, rows: &mut Vec<Vec<u32>>) -> bool {
            use crate::cyclotomic::CyclotomicInt;
            let q = self.q;
            if col == self.v {
                let ok = rows.iter().all(|prev| {
                    let mut s = CyclotomicInt::zero(q);
                    for (a, b) in row.iter().zip(prev) {
                        s.add_root_power((q + a - b) % q);
                    }
                    s.is_zero()
                });
                if ok {
                    rows.push(row.clone());
                    let keep = self.extend(rows);
                    rows.pop();
                    return keep;
                }
                return true;
            }
            let choices: std::ops::Range<u32> = if col == 0 { 0..1 } else { 0..q };
            for x in choices {
                self.stats.nodes += 1;
                row[col] = x;
                if !self.fill(row, col + 1, rows) {
                    return false;
                }
            }
            true
        }
    }

    let mut search = ButsonSearch {
        q,
        v,
        group: &spec.group,
        limit: spec.limit,
        matrices: Vec::new(),
        stats: SearchStats::default(),
    };
    let mut rows: Vec<Vec<u32>> = vec![vec![0; v]];
    search.extend(&mut rows);
    let ButsonSearch {
        matrices,
        mut stats,
        ..
    } = search;
    stats.wall_ms = started.elapsed().as_millis();
    Ok(SearchOutcome::Completed { matrices, stats })
}

/// Result of a circulant weighing-matrix search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantGwResult {
    pub first_rows: Vec<Vec<Entry>>,
    pub stats: SearchStats,
    /// Work units in partition order, each with its result count.
    pub unit_counts: Vec<usize>,
    /// Checkpoint for resuming: the last fully enumerated unit prefix.
    pub last_completed_prefix: Option<Vec<u32>>,
}

/// Options controlling the circulant search run shape. The defaults give a
/// serial run over the whole space.
#[derive(Clone, Debug)]
pub struct CirculantRunOptions {
    pub limit: Option<usize>,
    /// Number of leading value cells that define one work unit.
    pub prefix_len: usize,
    /// Concurrent work units; 1 keeps the run serial.
    pub jobs: usize,
    /// Skip units up to and including this prefix (resume support).
    pub resume_after: Option<Vec<u32>>,
    pub convention: Convention,
}

impl Default for CirculantRunOptions {
    fn default() -> Self {
        CirculantRunOptions {
            limit: None,
            prefix_len: 0,
            jobs: 1,
            resume_after: None,
            convention: Convention::XY,
        }
    }
}

/// Enumerates first rows of v x v circulants over `group` with exactly
/// `k` nonzero entries whose circulant is a generalized weighing matrix.
///
/// Zero positions are enumerated lexicographically (for k = v-1 the zero is
/// pinned at position 0); value cells are enumerated in element order. A row
/// is accepted when every cyclic shift d = 1..v/2 has a uniform quotient
/// multiset; shifts d and v-d carry elementwise-inverse multisets, so this
/// suffices. Every accepted row's full circulant is cross-checked with
/// `verify_balance`.
pub fn search_circulant_gw(
    v: usize,
    k: usize,
    group: &Group,
    options: &CirculantRunOptions,
) -> Result<CirculantGwResult, SearchError> {
    if k > v || v == 0 || k == 0 {
        return Err(SearchError::BadParameters(format!(
            "need 1 <= k <= v, got v={} k={}",
            v, k
        )));
    }
    let started = Instant::now();
    let zeros = v - k;
    let patterns: Vec<Vec<usize>> = if zeros == 0 {
        vec![vec![]]
    } else if zeros == 1 {
        vec![vec![0]]
    } else {
        combinations(v, zeros)
    };

    let mut first_rows = Vec::new();
    let mut stats = SearchStats::default();
    let mut unit_counts = Vec::new();
    let mut last_completed_prefix = None;
    for pattern in &patterns {
        if options.limit.is_some_and(|l| first_rows.len() >= l) {
            break;
        }
        let budget = options.limit.map(|l| l - first_rows.len());
        let (rows, nodes, units, last) = search_pattern(v, group, pattern, budget, options)?;
        stats.nodes += nodes;
        unit_counts.extend(units);
        first_rows.extend(rows);
        if last.is_some() {
            last_completed_prefix = last;
        }
    }
    stats.wall_ms = started.elapsed().as_millis();
    Ok(CirculantGwResult {
        first_rows,
        stats,
        unit_counts,
        last_completed_prefix,
    })
}

fn combinations(v: usize, take: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, v: usize, take: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == take {
            out.push(cur.clone());
            return;
        }
        for p in start..v {
            if v - p < take - cur.len() {
                break;
            }
            cur.push(p);
            rec(p + 1, v, take, cur, out);
            cur.pop();
        }
    }
    rec(0, v, take, &mut cur, &mut out);
    out
}

/// Accepted rows for one zero pattern, with visited node count, per-unit
/// result counts, and the last fully enumerated unit prefix.
type PatternRows = (Vec<Vec<Entry>>, u64, Vec<usize>, Option<Vec<u32>>);

/// One zero pattern: checks shift overlaps, then runs the (possibly
/// partitioned) value enumeration.
fn search_pattern(
    v: usize,
    group: &Group,
    zero_positions: &[usize],
    limit: Option<usize>,
    options: &CirculantRunOptions,
) -> Result<PatternRows, SearchError> {
    let order = group.order() as usize;
    let is_zero: Vec<bool> = {
        let mut z = vec![false; v];
        for &p in zero_positions {
            z[p] = true;
        }
        z
    };
    let value_cells: Vec<usize> = (0..v).filter(|&p| !is_zero[p]).collect();

    // overlap per shift must be constant and divisible by the group order
    let half = v / 2;
    let mut overlap = None;
    for d in 1..=half {
        let o = (0..v)
            .filter(|&x| !is_zero[x] && !is_zero[(x + d) % v])
            .count();
        if *overlap.get_or_insert(o) != o || o % order != 0 {
            return Ok((Vec::new(), 0, Vec::new(), None));
        }
    }
    let cap = (overlap.unwrap_or(0) / order) as u16;

    let prefix_len = options.prefix_len.min(value_cells.len());
    let units: Vec<Vec<u32>> = enumerate_prefixes(order as u32, prefix_len)
        .into_iter()
        .filter(|p| match &options.resume_after {
            Some(done) => p.as_slice() > done.as_slice(),
            None => true,
        })
        .collect();

    let run_unit = |prefix: &[u32], budget: Option<usize>| -> (Vec<Vec<Entry>>, u64) {
        enumerate_values(
            v,
            group,
            &is_zero,
            &value_cells,
            prefix,
            cap,
            budget,
            options.convention,
        )
    };

    let mut all_rows = Vec::new();
    let mut nodes = 0u64;
    let mut unit_counts = Vec::new();
    let mut last_completed: Option<Vec<u32>> = None;
    if options.jobs <= 1 || units.len() <= 1 {
        for unit in &units {
            if limit.is_some_and(|l| all_rows.len() >= l) {
                break;
            }
            let budget = limit.map(|l| l - all_rows.len());
            let (rows, n) = run_unit(unit, budget);
            nodes += n;
            unit_counts.push(rows.len());
            all_rows.extend(rows);
            if limit.is_none_or(|l| all_rows.len() < l) {
                last_completed = Some(unit.clone());
            }
        }
    } else {
        // independent units, merged in partition order afterwards
        let results: Vec<(Vec<Vec<Entry>>, u64)> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for chunk in units.chunks(units.len().div_ceil(options.jobs)) {
                handles.push(scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|unit| run_unit(unit, limit))
                        .collect::<Vec<_>>()
                }));
            }
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker"))
                .collect()
        });
        for (rows, n) in results {
            nodes += n;
            unit_counts.push(rows.len());
            all_rows.extend(rows);
        }
        if let Some(l) = limit {
            all_rows.truncate(l);
        }
        last_completed = units.last().cloned();
    }
    Ok((all_rows, nodes, unit_counts, last_completed))
}

fn enumerate_prefixes(order: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..order).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_values(
    v: usize,
    group: &Group,
    is_zero: &[bool],
    value_cells: &[usize],
    prefix: &[u32],
    cap: u16,
    limit: Option<usize>,
    convention: Convention,
) -> (Vec<Vec<Entry>>, u64) {
    let order = group.order() as usize;
    let half = v / 2;
    let mut counts = vec![vec![0u16; order]; half + 1];
    let mut values = vec![0u32; v];
    let mut accepted = Vec::new();
    let mut nodes = 0u64;

    // quotient contributed by the ordered pair (earlier position x, later x+d)
    let quot = |g: &Group, a: u32, b: u32| match convention {
        Convention::XY => g.mul(a, g.inv(b)),
        Convention::YX => g.mul(g.inv(b), a),
    };

    struct Frame {
        cell: usize,
        undo: Vec<(usize, usize)>,
    }
    let mut stack: Vec<Frame> = Vec::new();

    // assigns value x at cell index ci; returns None when pruned
    let assign = |ci: usize,
                  x: u32,
                  values: &mut [u32],
                  counts: &mut [Vec<u16>],
                  nodes: &mut u64|
     -> Option<Vec<(usize, usize)>> {
        *nodes += 1;
        let p = value_cells[ci];
        values[p] = x;
        let mut undo: Vec<(usize, usize)> = Vec::new();
        for &r in &value_cells[..ci] {
            // the pair {r, p} contributes one product to the multiset of its
            // canonical shift (two when v is even and the separation is v/2)
            let d1 = (v + p - r) % v;
            let dd = d1.min(v - d1);
            if dd == 0 {
                continue;
            }
            let forward = quot(group, values[r], values[p]);
            let backward = quot(group, values[p], values[r]);
            let mut products: Vec<u32> = Vec::with_capacity(2);
            if v.is_multiple_of(2) && dd == half {
                products.push(forward);
                products.push(backward);
            } else if d1 <= half {
                products.push(forward);
            } else {
                products.push(backward);
            }
            for q in products {
                let slot = q as usize;
                if counts[dd][slot] == cap {
                    for &(ud, us) in undo.iter().rev() {
                        counts[ud][us] -= 1;
                    }
                    return None;
                }
                counts[dd][slot] += 1;
                undo.push((dd, slot));
            }
        }
        Some(undo)
    };

    // seed prefix
    let mut pi = 0;
    while pi < prefix.len() {
        match assign(pi, prefix[pi], &mut values, &mut counts, &mut nodes) {
            Some(undo) => stack.push(Frame { cell: pi, undo }),
            None => {
                // prefix itself is infeasible
                for f in stack.drain(..).rev() {
                    for &(d, s) in f.undo.iter().rev() {
                        counts[d][s] -= 1;
                    }
                }
                return (accepted, nodes);
            }
        }
        pi += 1;
    }

    let base = prefix.len();
    let mut cell = base;
    let mut next_val = vec![0u32; value_cells.len() + 1];
    loop {
        if limit.is_some_and(|l| accepted.len() >= l) {
            break;
        }
        if cell == value_cells.len() {
            // complete: counts are exact by the cap argument; cross-check
            let row: Vec<Entry> = (0..v)
                .map(|p| {
                    if is_zero[p] {
                        Entry::Zero
                    } else {
                        Entry::Elem(values[p])
                    }
                })
                .collect();
            debug_assert!({
                let m = circulant(group, &row).expect("row");
                verify_balance(&m, convention).is_ok_and(|r| r.passed())
            });
            accepted.push(row);
            // backtrack
            match stack.pop() {
                Some(f) if f.cell >= base => {
                    for &(d, s) in f.undo.iter().rev() {
                        counts[d][s] -= 1;
                    }
                    cell = f.cell;
                    next_val[cell] = values[value_cells[cell]] + 1;
                }
                _ => break,
            }
            continue;
        }
        let mut x = next_val[cell];
        let mut descended = false;
        while (x as usize) < order {
            if let Some(undo) = assign(cell, x, &mut values, &mut counts, &mut nodes) {
                stack.push(Frame { cell, undo });
                next_val[cell] = 0;
                cell += 1;
                next_val[cell] = 0;
                descended = true;
                break;
            }
            x += 1;
        }
        if descended {
            continue;
        }
        // exhausted this cell: pop
        match stack.pop() {
            Some(f) if f.cell >= base => {
                for &(d, s) in f.undo.iter().rev() {
                    counts[d][s] -= 1;
                }
                cell = f.cell;
                next_val[cell] = values[value_cells[cell]] + 1;
            }
            other => {
                if let Some(f) = other {
                    for &(d, s) in f.undo.iter().rev() {
                        counts[d][s] -= 1;
                    }
                }
                break;
            }
        }
    }
    // unwind remaining ledger entries (prefix frames)
    for f in stack.drain(..).rev() {
        for &(d, s) in f.undo.iter().rev() {
            counts[d][s] -= 1;
        }
    }
    (accepted, nodes)
}

/// Normalizes an abelian, zero-free matrix: multiplies every column by the
/// inverse of its row-0 entry, then every row by the inverse of its column-0
/// entry, producing identity first row and column.
pub fn normalize_matrix(m: &GMatrix) -> Result<GMatrix, SearchError> {
    if !m.group().is_abelian() {
        return Err(SearchError::NonAbelian("normalization".into()));
    }
    if m.has_zero() || m.has_wildcard() {
        return Err(SearchError::HasZeros);
    }
    let g = m.group().clone();
    let mut out = m.clone();
    for c in 0..m.cols() {
        let top = out.entry(0, c).elem().expect("no zeros");
        out = out.scale_col(c, g.inv(top));
    }
    for r in 0..m.rows() {
        let left = out.entry(r, 0).elem().expect("no zeros");
        out = out.scale_row(r, g.inv(left));
    }
    Ok(out)
}

/// Text manifest for a search run: spec, partition, counts, wall time. The
/// wall time line is informational and excluded from determinism checks.
pub struct RunManifest {
    pub target: SearchTarget,
    pub group: Group,
    pub v: usize,
    pub k: Option<usize>,
    pub limit: Option<usize>,
    pub prefix_len: usize,
    pub units: usize,
    pub unit_counts: Vec<usize>,
    pub results: usize,
    pub nodes: u64,
    pub wall_ms: u128,
    pub last_completed_prefix: Option<Vec<u32>>,
}

impl fmt::Display for RunManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "group: {}", self.group)?;
        writeln!(f, "v: {}", self.v)?;
        if let Some(k) = self.k {
            writeln!(f, "k: {}", k)?;
        }
        match self.limit {
            Some(l) => writeln!(f, "limit: {}", l)?,
            None => writeln!(f, "limit: none")?,
        }
        writeln!(f, "prefix_len: {}", self.prefix_len)?;
        writeln!(f, "units: {}", self.units)?;
        let counts: Vec<String> = self.unit_counts.iter().map(|c| c.to_string()).collect();
        writeln!(f, "unit_results: {}", counts.join(","))?;
        writeln!(f, "results: {}", self.results)?;
        writeln!(f, "nodes: {}", self.nodes)?;
        if let Some(p) = &self.last_completed_prefix {
            let toks: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(f, "last_completed_prefix: {}", toks.join(","))?;
        }
        writeln!(f, "wall_ms: {}", self.wall_ms)
    }
}
