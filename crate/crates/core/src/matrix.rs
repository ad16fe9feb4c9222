//! Matrices over a finite group with a design-zero and a wildcard entry,
//! plus the construction combinators: circulants, block grids, Kronecker
//! products, adjoints, and residue-class matrices.
//!
//! The text interchange format is line oriented: a four-line header
//! (`group:`, `semantics:`, `rows:`, `cols:`) followed by one line of
//! whitespace-separated entry tokens per matrix row. `.` is the design-zero
//! and `*` the wildcard; both are entry-level markers distinct from any
//! group identity.

use std::fmt;

use crate::group::{Group, GroupError, GroupKind};

/// One matrix entry: a group element (by canonical index), the design-zero,
/// or the wildcard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Elem(u32),
    Zero,
    Wild,
}

impl Entry {
    pub fn is_elem(&self) -> bool {
        matches!(self, Entry::Elem(_))
    }

    pub fn elem(&self) -> Option<u32> {
        match self {
            Entry::Elem(i) => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    EmptyRow,
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    MixedGroups {
        left: String,
        right: String,
    },
    DimensionMismatch {
        what: String,
    },
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    ElementOutOfRange,
    ZeroInKronecker,
    IncompatibleGroups(String),
    AdjointDomain(String),
    BadResiduePrime(u32),
    NotSquare,
    Group(GroupError),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::EmptyRow => write!(f, "matrix rows must be nonempty"),
            MatrixError::Ragged {
                row,
                expected,
                found,
            } => write!(
                f,
                "ragged input: row {} has {} entries, expected {}",
                row, found, expected
            ),
            MatrixError::MixedGroups { left, right } => {
                write!(f, "blocks over different groups: {} vs {}", left, right)
            }
            MatrixError::DimensionMismatch { what } => write!(f, "dimension mismatch: {}", what),
            MatrixError::Parse { line, col, msg } => {
                write!(f, "parse error at line {}, column {}: {}", line, col, msg)
            }
            MatrixError::ElementOutOfRange => write!(f, "element index out of range"),
            MatrixError::ZeroInKronecker => {
                write!(f, "Kronecker factors must not contain zeros or wildcards")
            }
            MatrixError::IncompatibleGroups(msg) => write!(f, "incompatible groups: {}", msg),
            MatrixError::AdjointDomain(msg) => write!(f, "adjoint kind not applicable: {}", msg),
            MatrixError::BadResiduePrime(p) => write!(
                f,
                "cubic residue classes undefined for p = {} (need a prime p = 1 mod 3)",
                p
            ),
            MatrixError::NotSquare => write!(f, "matrix must be square"),
            MatrixError::Group(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for MatrixError {}

impl From<GroupError> for MatrixError {
    fn from(e: GroupError) -> MatrixError {
        MatrixError::Group(e)
    }
}

/// The elementwise involution applied along with transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointKind {
    /// Transpose only.
    Plain,
    /// Transpose with each element replaced by its group inverse.
    GroupInverse,
    /// Transpose with exponent negation; roots-of-unity entries only.
    ComplexConjugate,
    /// Transpose with quaternion conjugation; Q8 entries only.
    QuaternionConjugate,
}

/// A v x b matrix whose entries are group elements, the design-zero, or the
/// wildcard. Immutable after construction; all combinators return new values.
#[derive(Clone, Debug)]
pub struct GMatrix {
    group: Group,
    rows: usize,
    cols: usize,
    semantics: String,
    entries: Vec<Entry>,
}

impl PartialEq for GMatrix {
    /// Value equality: group, shape, entries. The `semantics` tag is file
    /// metadata and does not participate.
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for GMatrix {}

impl GMatrix {
    pub fn from_rows(group: &Group, rows: Vec<Vec<Entry>>) -> Result<GMatrix, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::EmptyRow);
        }
        let cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        if entries
            .iter()
            .any(|e| matches!(e, Entry::Elem(i) if *i >= group.order()))
        {
            return Err(MatrixError::ElementOutOfRange);
        }
        Ok(GMatrix {
            group: group.clone(),
            rows: rows.len(),
            cols,
            semantics: "generic".into(),
            entries,
        })
    }

    /// Parses every token of every row with the group's grammar.
    pub fn from_tokens(group: &Group, rows: &[&[&str]]) -> Result<GMatrix, MatrixError> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|t| parse_entry(t, group)).collect())
            .collect::<Result<Vec<Vec<Entry>>, _>>()?;
        GMatrix::from_rows(group, parsed)
    }

    pub fn filled(group: &Group, rows: usize, cols: usize, entry: Entry) -> GMatrix {
        GMatrix {
            group: group.clone(),
            rows,
            cols,
            semantics: "generic".into(),
            entries: vec![entry; rows * cols],
        }
    }

    /// The n x n identity-element matrix (not a design identity; every entry
    /// is the group identity).
    pub fn constant_identity(group: &Group, n: usize) -> GMatrix {
        GMatrix::filled(group, n, n, Entry::Elem(0))
    }

    pub fn with_semantics(mut self, semantics: &str) -> GMatrix {
        self.semantics = semantics.to_string();
        self
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn semantics(&self) -> &str {
        &self.semantics
    }

    pub fn entry(&self, row: usize, col: usize) -> Entry {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn has_zero(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, Entry::Zero))
    }

    pub fn has_wildcard(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, Entry::Wild))
    }

    /// Number of non-zero, non-wildcard entries in a row.
    pub fn row_weight(&self, row: usize) -> usize {
        self.row(row).iter().filter(|e| e.is_elem()).count()
    }

    pub fn map_entries(&self, f: impl Fn(Entry) -> Entry) -> GMatrix {
        GMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            semantics: self.semantics.clone(),
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }

    /// Left-multiplies every element entry of one row by a fixed element.
    pub fn scale_row(&self, row: usize, by: u32) -> GMatrix {
        let mut out = self.clone();
        for c in 0..self.cols {
            if let Entry::Elem(x) = out.entries[row * self.cols + c] {
                out.entries[row * self.cols + c] = Entry::Elem(self.group.mul(by, x));
            }
        }
        out
    }

    /// Right-multiplies every element entry of one column by a fixed element.
    pub fn scale_col(&self, col: usize, by: u32) -> GMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            if let Entry::Elem(x) = out.entries[r * self.cols + col] {
                out.entries[r * self.cols + col] = Entry::Elem(self.group.mul(x, by));
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> GMatrix {
        assert_eq!(perm.len(), self.rows);
        let rows = perm.iter().map(|&r| self.row(r).to_vec()).collect();
        let mut out = GMatrix::from_rows(&self.group, rows).expect("shape preserved");
        out.semantics = self.semantics.clone();
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> GMatrix {
        assert_eq!(perm.len(), self.cols);
        let rows = (0..self.rows)
            .map(|r| perm.iter().map(|&c| self.entry(r, c)).collect())
            .collect();
        let mut out = GMatrix::from_rows(&self.group, rows).expect("shape preserved");
        out.semantics = self.semantics.clone();
        out
    }

    /// Transpose with the chosen elementwise involution. Zeros and wildcards
    /// transpose unchanged.
    pub fn adjoint(&self, kind: AdjointKind) -> Result<GMatrix, MatrixError> {
        match kind {
            AdjointKind::ComplexConjugate => {
                if self.group.roots_order().is_none()
                    && !matches!(self.group.kind(), GroupKind::Cyclic(_))
                {
                    return Err(MatrixError::AdjointDomain(
                        "complex conjugation needs roots-of-unity or cyclic entries".into(),
                    ));
                }
            }
            AdjointKind::QuaternionConjugate => {
                if !matches!(self.group.kind(), GroupKind::Q8) {
                    return Err(MatrixError::AdjointDomain(
                        "quaternion conjugation needs q8 entries".into(),
                    ));
                }
            }
            AdjointKind::Plain | AdjointKind::GroupInverse => {}
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                let e = match self.entry(r, c) {
                    Entry::Elem(x) => Entry::Elem(match kind {
                        AdjointKind::Plain => x,
                        // conjugation is inversion for roots of unity and for
                        // the unit quaternions alike
                        AdjointKind::GroupInverse
                        | AdjointKind::ComplexConjugate
                        | AdjointKind::QuaternionConjugate => self.group.inv(x),
                    }),
                    other => other,
                };
                entries.push(e);
            }
        }
        Ok(GMatrix {
            group: self.group.clone(),
            rows: self.cols,
            cols: self.rows,
            semantics: self.semantics.clone(),
            entries,
        })
    }

    pub fn transpose(&self) -> GMatrix {
        self.adjoint(AdjointKind::Plain)
            .expect("plain adjoint is total")
    }

    /// Reinterprets the matrix over the roots-of-unity group of order q.
    /// Cyclic entries of order n lift with exponent scaling by q/n, as do
    /// roots entries of smaller order. Zeros and wildcards are preserved.
    pub fn lift_to_roots(&self, q: u32) -> Result<GMatrix, MatrixError> {
        let n = match self.group.kind() {
            GroupKind::Cyclic(n) => *n,
            GroupKind::Roots(n) => *n,
            _ => {
                return Err(MatrixError::IncompatibleGroups(format!(
                    "{} does not embed in u{}",
                    self.group, q
                )))
            }
        };
        if !q.is_multiple_of(n) {
            return Err(MatrixError::IncompatibleGroups(format!(
                "order {} does not divide {}",
                n, q
            )));
        }
        let scale = q / n;
        let target = Group::roots(q);
        Ok(GMatrix {
            group: target,
            rows: self.rows,
            cols: self.cols,
            semantics: self.semantics.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    Entry::Elem(x) => Entry::Elem(x * scale),
                    other => *other,
                })
                .collect(),
        })
    }

    /// Serializes to the interchange format; `parse` inverts this exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("group: {}\n", self.group.descriptor()));
        out.push_str(&format!("semantics: {}\n", self.semantics));
        out.push_str(&format!("rows: {}\n", self.rows));
        out.push_str(&format!("cols: {}\n", self.cols));
        for r in 0..self.rows {
            let line: Vec<String> = self
                .row(r)
                .iter()
                .map(|e| entry_token(*e, &self.group))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the interchange format. Blank lines and `#` comment lines are
    /// skipped. Reports 1-based line and token positions on failure.
    pub fn parse(text: &str) -> Result<GMatrix, MatrixError> {
        let mut group: Option<Group> = None;
        let mut semantics = String::from("generic");
        let mut rows: Option<usize> = None;
        let mut cols: Option<usize> = None;
        let mut body: Vec<Vec<Entry>> = Vec::new();
        let mut body_lines: Vec<usize> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("group:") {
                group = Some(Group::parse(rest.trim()).map_err(|e| MatrixError::Parse {
                    line: lineno,
                    col: 1,
                    msg: e.to_string(),
                })?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("semantics:") {
                semantics = rest.trim().to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("rows:") {
                rows = Some(parse_header_count(rest, lineno)?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("cols:") {
                cols = Some(parse_header_count(rest, lineno)?);
                continue;
            }
            let g = group.as_ref().ok_or(MatrixError::Parse {
                line: lineno,
                col: 1,
                msg: "entry row before group: header".into(),
            })?;
            let mut row = Vec::new();
            for (tokno, tok) in line.split_whitespace().enumerate() {
                let e = parse_entry(tok, g).map_err(|e| MatrixError::Parse {
                    line: lineno,
                    col: tokno + 1,
                    msg: e.to_string(),
                })?;
                row.push(e);
            }
            body.push(row);
            body_lines.push(lineno);
        }

        let group = group.ok_or(MatrixError::Parse {
            line: 1,
            col: 1,
            msg: "missing group: header".into(),
        })?;
        let rows = rows.ok_or(MatrixError::Parse {
            line: 1,
            col: 1,
            msg: "missing rows: header".into(),
        })?;
        let cols = cols.ok_or(MatrixError::Parse {
            line: 1,
            col: 1,
            msg: "missing cols: header".into(),
        })?;
        if body.len() != rows {
            return Err(MatrixError::DimensionMismatch {
                what: format!("header declares {} rows, found {}", rows, body.len()),
            });
        }
        for (i, row) in body.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch {
                    what: format!(
                        "header declares {} cols, line {} has {}",
                        cols,
                        body_lines[i],
                        row.len()
                    ),
                });
            }
        }
        Ok(GMatrix::from_rows(&group, body)?.with_semantics(&semantics))
    }
}

fn parse_header_count(rest: &str, lineno: usize) -> Result<usize, MatrixError> {
    rest.trim().parse().map_err(|_| MatrixError::Parse {
        line: lineno,
        col: 1,
        msg: "expected a positive integer".into(),
    })
}

/// Parses one entry token: `.` for the design-zero, `*` for the wildcard,
/// anything else via the group's token grammar.
pub fn parse_entry(token: &str, group: &Group) -> Result<Entry, GroupError> {
    match token {
        "." => Ok(Entry::Zero),
        "*" => Ok(Entry::Wild),
        _ => Ok(Entry::Elem(group.parse_token(token)?)),
    }
}

/// Canonical token for an entry, the inverse of [`parse_entry`].
pub fn entry_token(entry: Entry, group: &Group) -> String {
    match entry {
        Entry::Zero => ".".into(),
        Entry::Wild => "*".into(),
        Entry::Elem(i) => group.token(i),
    }
}

/// The n x n circulant with the given first row: row i is the first row
/// cyclically shifted right by i, so `M[i][j] = first[(j - i) mod n]`.
/// Wildcards and zeros shift with the row.
pub fn circulant(group: &Group, first_row: &[Entry]) -> Result<GMatrix, MatrixError> {
    if first_row.is_empty() {
        return Err(MatrixError::EmptyRow);
    }
    let n = first_row.len();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| first_row[(n + j - i) % n]).collect())
        .collect();
    GMatrix::from_rows(group, rows)
}

/// The n x n back-circulant: `M[i][j] = first[(i + j) mod n]`. Always symmetric.
pub fn back_circulant(group: &Group, first_row: &[Entry]) -> Result<GMatrix, MatrixError> {
    if first_row.is_empty() {
        return Err(MatrixError::EmptyRow);
    }
    let n = first_row.len();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| first_row[(i + j) % n]).collect())
        .collect();
    GMatrix::from_rows(group, rows)
}

/// Concatenates a grid of blocks into one matrix. All blocks must share a
/// group; blocks in one grid row must agree on height and blocks in one grid
/// column on width.
pub fn block_grid(blocks: &[Vec<GMatrix>]) -> Result<GMatrix, MatrixError> {
    if blocks.is_empty() || blocks[0].is_empty() {
        return Err(MatrixError::EmptyRow);
    }
    let grid_cols = blocks[0].len();
    let group = blocks[0][0].group().clone();
    for row in blocks {
        if row.len() != grid_cols {
            return Err(MatrixError::Ragged {
                row: 0,
                expected: grid_cols,
                found: row.len(),
            });
        }
        for b in row {
            if *b.group() != group {
                return Err(MatrixError::MixedGroups {
                    left: group.descriptor(),
                    right: b.group().descriptor(),
                });
            }
        }
    }
    // consistent tiling: heights constant along grid rows, widths along grid columns
    for (i, row) in blocks.iter().enumerate() {
        let h = row[0].rows();
        if row.iter().any(|b| b.rows() != h) {
            return Err(MatrixError::DimensionMismatch {
                what: format!("grid row {} mixes block heights", i),
            });
        }
    }
    for j in 0..grid_cols {
        let w = blocks[0][j].cols();
        if blocks.iter().any(|row| row[j].cols() != w) {
            return Err(MatrixError::DimensionMismatch {
                what: format!("grid column {} mixes block widths", j),
            });
        }
    }

    let mut rows: Vec<Vec<Entry>> = Vec::new();
    for grid_row in blocks {
        for r in 0..grid_row[0].rows() {
            let mut line = Vec::new();
            for b in grid_row {
                line.extend_from_slice(b.row(r));
            }
            rows.push(line);
        }
    }
    GMatrix::from_rows(&group, rows)
}

/// Kronecker composition: `entry[(i1,i2),(j1,j2)] = A[i1,j1] * B[i2,j2]`.
/// Factors must contain no zeros or wildcards. When the groups differ, both
/// are lifted to the smallest common roots-of-unity group (so a +-1 matrix
/// composes with a u6 matrix via 1 -> zeta^0, -1 -> zeta^3).
pub fn kronecker_compose(a: &GMatrix, b: &GMatrix) -> Result<GMatrix, MatrixError> {
    if a.has_zero() || a.has_wildcard() || b.has_zero() || b.has_wildcard() {
        return Err(MatrixError::ZeroInKronecker);
    }
    let (a, b) = if a.group() == b.group() {
        (a.clone(), b.clone())
    } else {
        let qa = embeddable_order(a.group()).ok_or_else(|| {
            MatrixError::IncompatibleGroups(format!("{} vs {}", a.group(), b.group()))
        })?;
        let qb = embeddable_order(b.group()).ok_or_else(|| {
            MatrixError::IncompatibleGroups(format!("{} vs {}", a.group(), b.group()))
        })?;
        let q = lcm(qa, qb);
        (a.lift_to_roots(q)?, b.lift_to_roots(q)?)
    };
    let g = a.group().clone();
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut rows = Vec::with_capacity(ra * rb);
    for i1 in 0..ra {
        for i2 in 0..rb {
            let mut line = Vec::with_capacity(ca * cb);
            for j1 in 0..ca {
                let x = a.entry(i1, j1).elem().expect("checked above");
                for j2 in 0..cb {
                    let y = b.entry(i2, j2).elem().expect("checked above");
                    line.push(Entry::Elem(g.mul(x, y)));
                }
            }
            rows.push(line);
        }
    }
    GMatrix::from_rows(&g, rows)
}

fn embeddable_order(g: &Group) -> Option<u32> {
    match g.kind() {
        GroupKind::Cyclic(n) | GroupKind::Roots(n) => Some(*n),
        _ => None,
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The three cubic residue classes mod a prime p = 1 mod 3: class 0 holds the
/// nonzero cubes, class i holds g^i * (cubes) for the smallest non-cube g.
pub fn cubic_residue_classes(p: u32) -> Result<[Vec<u32>; 3], MatrixError> {
    if p < 7 || !is_prime(p) || p % 3 != 1 {
        return Err(MatrixError::BadResiduePrime(p));
    }
    let cubes: Vec<u32> = {
        let mut set: Vec<bool> = vec![false; p as usize];
        for x in 1..p {
            set[(x as u64 * x as u64 % p as u64 * x as u64 % p as u64) as usize] = true;
        }
        (1..p).filter(|&x| set[x as usize]).collect()
    };
    let g = (2..p)
        .find(|&x| !cubes.contains(&x))
        .expect("non-residue exists for p = 1 mod 3");
    let shift = |s: u64| -> Vec<u32> {
        let mut v: Vec<u32> = cubes
            .iter()
            .map(|&c| ((c as u64 * s) % p as u64) as u32)
            .collect();
        v.sort_unstable();
        v
    };
    let c1 = shift(g as u64);
    let c2 = shift(g as u64 * g as u64 % p as u64);
    Ok([cubes, c1, c2])
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Per-class coefficients for a residue-class matrix: one entry for the
/// diagonal and one for each cubic residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueCoeffs {
    pub diagonal: Entry,
    pub classes: [Entry; 3],
}

/// The p x p matrix whose (i,j) entry is the coefficient of the cubic residue
/// class containing (j - i) mod p, with the diagonal coefficient on j = i.
pub fn residue_class_matrix(
    p: u32,
    group: &Group,
    coeffs: &ResidueCoeffs,
) -> Result<GMatrix, MatrixError> {
    let classes = cubic_residue_classes(p)?;
    let mut class_of = vec![3usize; p as usize];
    for (ci, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x as usize] = ci;
        }
    }
    let n = p as usize;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        coeffs.diagonal
                    } else {
                        coeffs.classes[class_of[(n + j - i) % n]]
                    }
                })
                .collect()
        })
        .collect();
    GMatrix::from_rows(group, rows)
}
