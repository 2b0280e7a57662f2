//! Orthologic and quantified orthologic.
//!
//! The crate provides canonical formula terms, a text syntax, a proof
//! kernel for the sequent calculus of orthologic, a saturation prover, proof
//! based interpolation, and finite ortholattice semantics.
//!
//! It builds without `std` when the default `std` feature is disabled; only
//! `alloc` is required then.
//!
//! ```
//! use ol_core::{check_proof, interpolate, parse_sequent, prove};
//!
//! let goal = parse_sequent("x & y |- y | z").unwrap();
//! let proof = prove(&goal.sequent(), &[]).proof().unwrap().clone();
//! assert!(check_proof(&proof, &[]).is_accepted());
//! let r = interpolate(goal.first.clone(), goal.second.clone(), &proof).unwrap();
//! assert_eq!(r.interpolant.to_string(), "y");
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod formula;
pub mod interpolation;
pub mod proof;
pub mod prover;
pub mod semantics;
pub mod sequent;
pub mod syntax;

pub use formula::{canonicalize, subformula_closure, Formula, FormulaError, Ident, Kind, Quantifier, RawFormula};
pub use interpolation::{
    interpolate, interpolate_dual_check, quantified_interpolant, InterpolationError, InterpolationResult,
    QuantifiedInterpolant,
};
pub use proof::{check_proof, conclusion_of, CheckError, CheckFailure, CheckReport, ProofStep, Rule, Verdict};
pub use prover::{decide_leq, mutually_provable, prove, prove_with, ProverConfig, ProverOutcome, ProverStats};
pub use semantics::{
    builtin, eval_formula, eval_sequent, falsify, normalize_single_var, validate_ortholattice, Assignment, Element,
    FiniteOrtholattice, LatticeCandidate, LatticeError,
};
pub use sequent::{AnnotatedFormula, Sequent, Side};
pub use syntax::{parse_formula, parse_sequent, print_formula, print_sequent, ParseError, SequentText};
