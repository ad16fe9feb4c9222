//! Exact construction, verification, and search for matrices that are
//! orthogonal over finite groups: generalized Hadamard and Butson matrices,
//! generalized weighing matrices, Bhaskar Rao designs, and block designs.
//!
//! Everything verdict-bearing is computed in exact integer arithmetic
//! (group tables, cyclotomic integers, integer quaternions); floating point
//! appears only in test oracles. Matrices travel in a line-oriented text
//! format described in [`matrix`].

pub mod catalog;
pub mod construct;
pub mod cyclotomic;
pub mod group;
pub mod matrix;
pub mod quaternion;
pub mod ring;
pub mod search;
pub mod table;
pub mod verify;

pub use cyclotomic::{cyclo_zero_test, cyclotomic_polynomial, CyclotomicInt};
pub use group::{Group, GroupElement, GroupError, GroupKind, S3Presentation};
pub use matrix::{
    back_circulant, block_grid, circulant, cubic_residue_classes, entry_token, kronecker_compose,
    parse_entry, residue_class_matrix, AdjointKind, Entry, GMatrix, MatrixError, ResidueCoeffs,
};
pub use quaternion::{quat_mul, Quaternion};
pub use ring::{ring_convolve, GroupRingVector};
pub use verify::{
    verify_balance, verify_block_design, verify_butson, verify_numeric, Convention, DesignKind,
    DesignParams, Failure, Loc, NumericKind, Verdict, VerificationReport, VerifyError,
};
