//! Jacobi and Kronecker symbols computed alongside left-to-right GCD
//! reduction.
//!
//! Any GCD scheme that repeatedly subtracts a multiple of the smaller
//! number from the larger can be extended to compute the Jacobi symbol:
//! each reduction updates a constant-size state (one table lookup), so the
//! symbol costs only linear extra time over the plain GCD. This crate
//! provides the reduction engine with unit-step, Euclid and Lehmer-window
//! policies, the state machine with its 512- and 208-entry table forms,
//! Kronecker preprocessing, a right-to-left binary baseline, and oracle
//! suites that cross-check all of them.
//!
//! ```
//! use jacobi_core::{jacobi, Nat, QuotientPolicy, Symbol};
//!
//! let a: Nat = Nat::parse("19").unwrap();
//! let b: Nat = Nat::parse("45").unwrap();
//! assert_eq!(jacobi(&a, &b, QuotientPolicy::Lehmer), Ok(Symbol::One));
//! ```
//!
//! The core is generic over the limb type (`u32`, `u64`); `Nat` defaults
//! to the platform word.

mod error;
pub mod jacobi;
pub mod jstate;
pub mod mpnat;
pub mod reduce;
pub mod selftest;
pub mod word;

pub use error::Error;
pub use jacobi::{
    binary_kronecker, gcd, invariant_probe, jacobi, jacobi_bruteforce, jacobi_with, kronecker,
    Int, ProbeSnapshot, StateBackend,
};
pub use jstate::{JacobiState, ReductionEvent, Symbol};
pub use mpnat::Nat;
pub use reduce::{
    apply_batch, lehmer_window, reduce_once, step_euclid, step_unit, Mat2, QuotientPolicy,
    ReductionBatch,
};
pub use word::{NativeWord, Word};

/// Concrete limb instantiations.
pub type Nat32 = mpnat::Nat<u32>;
pub type Nat64 = mpnat::Nat<u64>;
pub type Int32 = jacobi::Int<u32>;
pub type Int64 = jacobi::Int<u64>;
