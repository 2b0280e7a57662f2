//! File formats, demonstrations and the command-line front end for
//! [`ol_core`].

pub mod cli;
pub mod demo;
pub mod lattice_json;
pub mod proof_json;
