//! Oracles and generators shared by the test suites.
//!
//! Nothing here is used by the library itself. The backward-search oracle
//! is deliberately naive and shares no code with the saturation prover.

pub mod corpus;
pub mod gen;
pub mod oracle;
