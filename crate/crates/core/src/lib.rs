//! Type checking for first-order terms whose types combine subtyping over an
//! ordered alphabet of at-most-unary constructors with parametric
//! signatures.
//!
//! A term is reduced to a system of type inequations ([`infer`]), and the
//! system is decided by a terminating instantiation search ([`solver`]).
//! [`oracle`] holds brute-force reference procedures used in tests.

pub mod alphabet;
pub mod check;
pub mod error;
pub mod infer;
pub mod oracle;
pub mod problem;
pub mod solver;
pub mod subst;
pub mod types;

pub use alphabet::{Alphabet, Constructor};
pub use error::{Error, Result};
pub use infer::{
    gen_constraints, init_context, verify_witness, FreshNames, Inequation, InequationSystem,
    Signature, Signatures, Term, TypeAssignment,
};
pub use solver::{solve, NormalForm, Normalized, SolveResult, SolveStats};
pub use subst::Substitution;
pub use types::{Depth, Type};
