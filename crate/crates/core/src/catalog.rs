//! The fixture catalog: every archival matrix as a shipped file, paired with
//! the verifier that judges its claim and notes on anything the transmitted
//! copies got wrong.
//!
//! Fixtures are embedded at compile time. Setting the `GMAT_FIXTURE_DIR`
//! environment variable overrides the embedded copies with files named
//! `<name>.gmat` in that directory.

use std::fmt;

use crate::matrix::{GMatrix, MatrixError};
use crate::verify::{
    verify_balance, verify_butson, verify_numeric, Convention, NumericKind, VerificationReport,
    VerifyError,
};

/// Environment variable naming a directory of replacement fixture files.
pub const FIXTURE_DIR_ENV: &str = "GMAT_FIXTURE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownName {
        name: String,
        available: Vec<&'static str>,
    },
    Io(String),
    Matrix(MatrixError),
    Verify(VerifyError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownName { name, available } => write!(
                f,
                "unknown catalog entry '{}'; available: {}",
                name,
                available.join(", ")
            ),
            CatalogError::Io(msg) => write!(f, "fixture io error: {}", msg),
            CatalogError::Matrix(e) => write!(f, "{}", e),
            CatalogError::Verify(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CatalogError {}

impl From<MatrixError> for CatalogError {
    fn from(e: MatrixError) -> CatalogError {
        CatalogError::Matrix(e)
    }
}

impl From<VerifyError> for CatalogError {
    fn from(e: VerifyError) -> CatalogError {
        CatalogError::Verify(e)
    }
}

/// The property a catalog entry claims to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Group balance (difference matrix / generalized Hadamard / weighing).
    Balance,
    /// Butson orthogonality at the given root order.
    Butson(u32),
    /// Real orthogonality; wildcards mask pairwise.
    Real,
    Complex,
    Quaternion,
}

impl Claim {
    /// Runs the claimed verifier on a matrix.
    pub fn run(&self, m: &GMatrix) -> Result<VerificationReport, VerifyError> {
        match self {
            Claim::Balance => verify_balance(m, Convention::XY),
            Claim::Butson(q) => verify_butson(m, *q),
            Claim::Real => verify_numeric(m, NumericKind::Real),
            Claim::Complex => verify_numeric(m, NumericKind::Complex),
            Claim::Quaternion => verify_numeric(m, NumericKind::Quaternion),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Balance => f.write_str("balance"),
            Claim::Butson(q) => write!(f, "butson(q={})", q),
            Claim::Real => f.write_str("real"),
            Claim::Complex => f.write_str("complex"),
            Claim::Quaternion => f.write_str("quaternion"),
        }
    }
}

/// Whether an entry is a confirmed result (its claim must pass, enforced by
/// the regression suite) or a diagnostic (the exact report is frozen, pass
/// or fail).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Diagnostic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Diagnostic => "diagnostic",
        })
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    /// Where the object comes from, in one line.
    pub origin: &'static str,
    pub claim: Claim,
    pub status: Status,
    pub notes: &'static [&'static str],
    embedded: &'static str,
}

impl CatalogEntry {
    /// Loads and parses the fixture, honoring the directory override.
    pub fn matrix(&self) -> Result<GMatrix, CatalogError> {
        let text = match std::env::var(FIXTURE_DIR_ENV) {
            Ok(dir) => std::fs::read_to_string(format!("{}/{}.gmat", dir, self.name))
                .map_err(|e| CatalogError::Io(format!("{}/{}.gmat: {}", dir, self.name, e)))?,
            Err(_) => self.embedded.to_string(),
        };
        Ok(GMatrix::parse(&text)?)
    }

    /// The fixture exactly as shipped.
    pub fn fixture_text(&self) -> &'static str {
        self.embedded
    }

    /// Runs the entry's claimed verifier on its matrix.
    pub fn run_claim(&self) -> Result<VerificationReport, CatalogError> {
        Ok(self.claim.run(&self.matrix()?)?)
    }
}

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!("../fixtures/", $name, ".gmat"))
    };
}

pub static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "lexicon-h",
        origin: "classical order-4 real Hadamard matrix",
        claim: Claim::Real,
        status: Status::Confirmed,
        notes: &["HH^T = 4I; the first orthogonality example of the collection"],
        embedded: fixture!("lexicon-h"),
    },
    CatalogEntry {
        name: "lexicon-g",
        origin: "order-4 matrix over the Klein four group",
        claim: Claim::Balance,
        status: Status::Confirmed,
        notes: &["each pair's quotient multiset is the whole group once (lambda = 1)"],
        embedded: fixture!("lexicon-g"),
    },
    CatalogEntry {
        name: "gh20",
        origin: "archival 20x20 example over five symbols",
        claim: Claim::Balance,
        status: Status::Confirmed,
        notes: &[
            "the source labels it GH(20,Z4) yet it uses five symbols; it verifies over the cyclic group of order 5 with lambda = 4",
            "the transmitted copy is misprinted: the last 4x4 diagonal block is uniformly shifted by +1 mod 5 and two adjacent entries of row 15 are transposed; the shipped fixture applies the unique minimal repair, derived by exhaustively completing the 16 consistent rows (24 completions; nearest at Hamming distance 16, next at 38)",
        ],
        embedded: fixture!("gh20"),
    },
    CatalogEntry {
        name: "gh6-z3",
        origin: "order-6 difference matrix over Z3",
        claim: Claim::Balance,
        status: Status::Confirmed,
        notes: &["lambda = 2"],
        embedded: fixture!("gh6-z3"),
    },
    CatalogEntry {
        name: "gh7-z6-a",
        origin: "first order-7 matrix over the 6th roots of unity",
        claim: Claim::Butson(6),
        status: Status::Confirmed,
        notes: &["sign-times-root tokens canonicalize to exponents: 1, -w^2, w, -1, w^2, -w are zeta^0..zeta^5"],
        embedded: fixture!("gh7-z6-a"),
    },
    CatalogEntry {
        name: "gh7-z6-b",
        origin: "second order-7 matrix over the 6th roots of unity",
        claim: Claim::Butson(6),
        status: Status::Confirmed,
        notes: &[],
        embedded: fixture!("gh7-z6-b"),
    },
    CatalogEntry {
        name: "butson3",
        origin: "order-3 Fourier matrix over the cube roots",
        claim: Claim::Butson(3),
        status: Status::Confirmed,
        notes: &["Gram matrix is exactly 3I"],
        embedded: fixture!("butson3"),
    },
    CatalogEntry {
        name: "complex-a",
        origin: "order-2 complex matrix [[1,1],[i,-i]]",
        claim: Claim::Complex,
        status: Status::Confirmed,
        notes: &["c = 2 under the conjugate-transpose adjoint"],
        embedded: fixture!("complex-a"),
    },
    CatalogEntry {
        name: "complex-b",
        origin: "order-2 complex matrix [[i,1],[1,i]]",
        claim: Claim::Complex,
        status: Status::Confirmed,
        notes: &["c = 2 under the conjugate-transpose adjoint"],
        embedded: fixture!("complex-b"),
    },
    CatalogEntry {
        name: "quaternion-v",
        origin: "order-2 quaternion matrix [[1,k],[i,j]]",
        claim: Claim::Quaternion,
        status: Status::Confirmed,
        notes: &["the source prints the Gram constant as an unexplained Z; exact computation gives c = 2"],
        embedded: fixture!("quaternion-v"),
    },
    CatalogEntry {
        name: "bh2",
        origin: "order-2 real Hadamard matrix",
        claim: Claim::Real,
        status: Status::Confirmed,
        notes: &["the Kronecker seed for all power-of-two composites"],
        embedded: fixture!("bh2"),
    },
    CatalogEntry {
        name: "gw13-s3",
        origin: "order-13 circulant weighing matrix over S3, weight 9",
        claim: Claim::Balance,
        status: Status::Diagnostic,
        notes: &[
            "the word tokens are ambiguous between the two S3 presentations; verified under both presentations and both quotient conventions (4 runs)",
            "passes balance under a2b3 with either convention (lambda = 6 overlap 6... see frozen report); fails under a3b2 where ab2 collapses to a",
            "the underlying 0/1 design is a symmetric (13,9,6) block design under every reading",
        ],
        embedded: fixture!("gw13-s3"),
    },
    CatalogEntry {
        name: "strange13",
        origin: "order-13 circulant with one wildcard per row, entries 0 and +-1",
        claim: Claim::Real,
        status: Status::Confirmed,
        notes: &[
            "orthogonal when the wildcard column is ignored pairwise; masked diagonal constant c = 9",
            "the source writes 0 for the numeric zero and - for -1; the fixture uses . and -1",
        ],
        embedded: fixture!("strange13"),
    },
    CatalogEntry {
        name: "brock7",
        origin: "3x3 grid of order-7 circulants from digit vectors over Z3",
        claim: Claim::Balance,
        status: Status::Confirmed,
        notes: &["order 21, lambda = 7"],
        embedded: fixture!("brock7"),
    },
    CatalogEntry {
        name: "brock13",
        origin: "3x3 grid of order-13 circulants from digit vectors over Z3",
        claim: Claim::Balance,
        status: Status::Diagnostic,
        notes: &[
            "the source itself asks how much of this works; the frozen report lists every failing row pair deterministically",
        ],
        embedded: fixture!("brock13"),
    },
    CatalogEntry {
        name: "residue39",
        origin: "3x3 grid of cubic-residue class matrices mod 13 over Z3",
        claim: Claim::Balance,
        status: Status::Diagnostic,
        notes: &[
            "block (0,2) of the transmitted coefficients has no C1 term; it is kept as printed, so that block carries design-zeros and the row weights differ between block rows",
        ],
        embedded: fixture!("residue39"),
    },
    CatalogEntry {
        name: "gh10-z6",
        origin: "order-10 block matrix of four order-5 circulants over the 6th roots",
        claim: Claim::Butson(6),
        status: Status::Confirmed,
        notes: &[
            "derived fixture: the first verifying assignment (X,Y,Z,W = printed rows 0,1,3,2) of the 24 tried",
            "the transmitted fourth first-row prints -w^2 at position 2; the unique single-token repair is -w, restoring the palindromic shape of the other rows (no assignment verifies without it)",
        ],
        embedded: fixture!("gh10-z6"),
    },
    CatalogEntry {
        name: "gw17-z3",
        origin: "order-17 circulant weighing matrix over Z3, weight 16",
        claim: Claim::Balance,
        status: Status::Confirmed,
        notes: &[
            "derived fixture: the lexicographically first of the 12 witnesses found by the full 3^16 circulant enumeration; all 12 are palindromic",
            "this is the plug-in doubling input for the order-34 composite",
        ],
        embedded: fixture!("gw17-z3"),
    },
];

/// All catalog names, in catalog order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Looks up a catalog entry; unknown names list what is available.
pub fn get(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName {
            name: name.to_string(),
            available: names(),
        })
}

/// One line per entry: name, shape, claim, status, origin.
pub fn index_text() -> String {
    let mut out = String::new();
    for e in ENTRIES {
        let shape = match e.matrix() {
            Ok(m) => format!("{}x{} {}", m.rows(), m.cols(), m.group()),
            Err(_) => "unreadable".into(),
        };
        out.push_str(&format!(
            "{:<14} {:<14} {:<14} {:<11} {}\n",
            e.name,
            shape,
            e.claim.to_string(),
            e.status.to_string(),
            e.origin
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::{Mutex, OnceLock};

    // matrix() reads the override env var, so tests that touch it or rely on
    // its absence serialize on this lock
    fn env_lock() -> &'static Mutex<()> {
        static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
        LOCK.get_or_init(|| Mutex::new(()))
    }

    #[test]
    fn every_fixture_parses() {
        let _guard = env_lock().lock().unwrap();
        for e in ENTRIES {
            let m = e
                .matrix()
                .unwrap_or_else(|err| panic!("{}: {}", e.name, err));
            assert!(m.rows() > 0);
        }
    }

    #[test]
    fn unknown_name_lists_available() {
        match get("no-such") {
            Err(CatalogError::UnknownName { available, .. }) => {
                assert!(available.contains(&"gh20"));
                assert!(available.contains(&"gw13-s3"));
            }
            other => panic!(
                "expected unknown-name error, got {:?}",
                other.map(|e| e.name)
            ),
        }
    }

    #[test]
    fn required_names_present() {
        for name in [
            "gh20",
            "gh6-z3",
            "gh7-z6-a",
            "gh7-z6-b",
            "butson3",
            "complex-a",
            "complex-b",
            "quaternion-v",
            "gw13-s3",
            "strange13",
            "brock7",
            "brock13",
        ] {
            assert!(get(name).is_ok(), "missing {}", name);
        }
    }

    #[test]
    fn confirmed_entries_pass_their_claims() {
        let _guard = env_lock().lock().unwrap();
        for e in ENTRIES.iter().filter(|e| e.status == Status::Confirmed) {
            let report = e.run_claim().unwrap();
            assert!(report.passed(), "{}: {}", e.name, report);
        }
    }

    #[test]
    fn fixture_dir_override_is_honored() {
        let _guard = env_lock().lock().unwrap();
        let dir = std::env::temp_dir().join(format!("gmat-fixtures-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("bh2.gmat"),
            "group: u2\nsemantics: real\nrows: 1\ncols: 1\n1\n",
        )
        .unwrap();
        std::env::set_var(FIXTURE_DIR_ENV, &dir);
        let m = get("bh2").unwrap().matrix();
        std::env::remove_var(FIXTURE_DIR_ENV);
        std::fs::remove_dir_all(&dir).ok();
        let m = m.unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
    }
}
