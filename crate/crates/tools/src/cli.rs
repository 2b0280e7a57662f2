//! Subcommands of the `ol` binary.
//!
//! Exit status is 0 for proved, valid or accepted, 1 for not provable,
//! false or rejected, and 2 for usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ol_core::{
    check_proof, decide_leq, eval_formula, eval_sequent, interpolate, parse_formula, parse_sequent, print_formula,
    prove_with, quantified_interpolant, AnnotatedFormula, Assignment, Ident, ProverConfig, ProverOutcome, Sequent,
};

use crate::{demo, lattice_json, proof_json};

pub const OK: i32 = 0;
pub const NO: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ol", version, about = "Orthologic prover, proof checker and interpolator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a sequent such as "x & y |- x".
    Prove {
        sequent: String,
        /// Extra axiom sequent; may be repeated.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        /// Write the proof as JSON to this path.
        #[arg(long)]
        emit_proof: Option<PathBuf>,
        /// Print search statistics.
        #[arg(long)]
        stats: bool,
        /// Try witness instantiation for quantified goals.
        #[arg(long)]
        quantifiers: bool,
    },
    /// Compute an interpolant for A |- B.
    Interpolate {
        a: String,
        b: String,
        /// Print `forall z. B` over the variables of B missing from A.
        #[arg(long)]
        quantified: bool,
        /// Write left.json and right.json witness proofs into this directory.
        #[arg(long)]
        emit_proofs: Option<PathBuf>,
    },
    /// Check a JSON proof file.
    Check {
        proof: PathBuf,
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
    /// Evaluate a formula or sequent in a finite ortholattice.
    Eval {
        /// Built-in name (b2, m2, m4, mo<n>) or lattice JSON file.
        #[arg(long)]
        lattice: String,
        /// Assignment `var=element`; may be repeated.
        #[arg(long = "assign")]
        assignments: Vec<String>,
        text: String,
    },
    /// Run a demonstration: no-qe or refutation.
    Demo { name: String },
}

type Out<'a> = &'a mut dyn Write;

macro_rules! out {
    ($w:expr, $($arg:tt)*) => {
        let _ = writeln!($w, $($arg)*);
    };
}

pub fn run(cli: Cli, out: Out<'_>, err: Out<'_>) -> i32 {
    match cli.command {
        Command::Prove {
            sequent,
            axioms,
            emit_proof,
            stats,
            quantifiers,
        } => cmd_prove(&sequent, &axioms, emit_proof.as_deref(), stats, quantifiers, out, err),
        Command::Interpolate {
            a,
            b,
            quantified,
            emit_proofs,
        } => cmd_interpolate(&a, &b, quantified, emit_proofs.as_deref(), out, err),
        Command::Check { proof, axioms } => cmd_check(&proof, &axioms, out, err),
        Command::Eval {
            lattice,
            assignments,
            text,
        } => cmd_eval(&lattice, &assignments, &text, out, err),
        Command::Demo { name } => cmd_demo(&name, out, err),
    }
}

fn parse_axioms(texts: &[String], err: Out<'_>) -> Option<Vec<Sequent>> {
    let mut axioms = Vec::with_capacity(texts.len());
    for t in texts {
        match parse_sequent(t) {
            Ok(s) => axioms.push(s.sequent()),
            Err(e) => {
                out!(err, "error: axiom `{}`: {}", t, e);
                return None;
            }
        }
    }
    Some(axioms)
}

fn write_file(path: &Path, contents: &str, err: Out<'_>) -> bool {
    match std::fs::write(path, contents) {
        Ok(()) => true,
        Err(e) => {
            out!(err, "error: cannot write {}: {}", path.display(), e);
            false
        }
    }
}

pub fn cmd_prove(
    text: &str,
    axiom_texts: &[String],
    emit_proof: Option<&Path>,
    stats: bool,
    quantifiers: bool,
    out: Out<'_>,
    err: Out<'_>,
) -> i32 {
    let goal = match parse_sequent(text) {
        Ok(s) => s.sequent(),
        Err(e) => {
            out!(err, "error: {}", e);
            return INPUT_ERROR;
        }
    };
    let Some(axioms) = parse_axioms(axiom_texts, err) else {
        return INPUT_ERROR;
    };
    let config = ProverConfig {
        quantifier_heuristic: quantifiers,
    };
    let outcome = prove_with(&goal, &axioms, &config);
    if stats {
        if let Some(s) = outcome.stats() {
            out!(out, "states_enumerated: {}", s.states_enumerated);
            out!(out, "states_derived: {}", s.states_derived);
            out!(out, "rule_applications: {}", s.rule_applications);
            out!(out, "closure_size: {}", s.closure_size);
            out!(out, "state_bound: {}", s.state_bound());
            out!(out, "elapsed_ms: {:.3}", s.elapsed.as_secs_f64() * 1e3);
        }
    }
    match outcome {
        ProverOutcome::Proved { proof, .. } => {
            out!(out, "proved: {}", goal);
            out!(out, "proof nodes: {}", proof.node_count());
            if let Some(path) = emit_proof {
                if !write_file(path, &proof_json::to_string(&proof), err) {
                    return INPUT_ERROR;
                }
            }
            OK
        }
        ProverOutcome::NotProvable(_) => {
            out!(out, "not provable: {}", goal);
            NO
        }
        ProverOutcome::Unsupported(reason) => {
            out!(err, "error: {}", reason);
            INPUT_ERROR
        }
    }
}

pub fn cmd_interpolate(a: &str, b: &str, quantified: bool, emit: Option<&Path>, out: Out<'_>, err: Out<'_>) -> i32 {
    let (fa, fb) = match (parse_formula(a), parse_formula(b)) {
        (Ok(fa), Ok(fb)) => (fa, fb),
        (Err(e), _) | (_, Err(e)) => {
            out!(err, "error: {}", e);
            return INPUT_ERROR;
        }
    };
    if !fa.is_quantifier_free() || !fb.is_quantifier_free() {
        out!(err, "error: formulas must be quantifier-free");
        return INPUT_ERROR;
    }
    let outcome = decide_leq(&fa, &fb, &[]);
    let Some(proof) = outcome.proof() else {
        out!(err, "not provable: {} |- {}", fa, fb);
        return NO;
    };
    let (interpolant, left, right) = if quantified {
        match quantified_interpolant(&fa, &fb, proof) {
            Ok(q) => (q.interpolant, q.left_proof, q.right_proof),
            Err(e) => {
                out!(err, "error: {}", e);
                return INPUT_ERROR;
            }
        }
    } else {
        match interpolate(Some(AnnotatedFormula::left(fa)), Some(AnnotatedFormula::right(fb)), proof) {
            Ok(r) => (r.interpolant, r.left_proof, r.right_proof),
            Err(e) => {
                out!(err, "error: {}", e);
                return INPUT_ERROR;
            }
        }
    };
    out!(out, "{}", print_formula(&interpolant));
    if let Some(dir) = emit {
        if let Err(e) = std::fs::create_dir_all(dir) {
            out!(err, "error: cannot create {}: {}", dir.display(), e);
            return INPUT_ERROR;
        }
        let ok = write_file(&dir.join("left.json"), &proof_json::to_string(&left), err)
            && write_file(&dir.join("right.json"), &proof_json::to_string(&right), err);
        if !ok {
            return INPUT_ERROR;
        }
    }
    OK
}

pub fn cmd_check(path: &Path, axiom_texts: &[String], out: Out<'_>, err: Out<'_>) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            out!(err, "error: cannot read {}: {}", path.display(), e);
            return INPUT_ERROR;
        }
    };
    let Some(axioms) = parse_axioms(axiom_texts, err) else {
        return INPUT_ERROR;
    };
    let proof = match proof_json::from_str(&text) {
        Ok(p) => p,
        Err(e @ proof_json::DecodeError::Malformed(_)) => {
            out!(err, "error: {}", e);
            return INPUT_ERROR;
        }
        Err(e) => {
            out!(out, "rejected {}", e);
            return NO;
        }
    };
    let report = check_proof(&proof, &axioms);
    match (report.conclusion(), report.failure()) {
        (Some(c), _) => {
            out!(out, "accepted: {}", c);
            out!(out, "nodes: {}, cut: {}", report.node_count, if report.uses_cut { "yes" } else { "no" });
            OK
        }
        (None, Some(f)) => {
            out!(out, "rejected {}", f);
            NO
        }
        (None, None) => unreachable!("a report either accepts or rejects"),
    }
}

pub fn cmd_eval(lattice: &str, assignments: &[String], text: &str, out: Out<'_>, err: Out<'_>) -> i32 {
    let l = match lattice_json::load(lattice) {
        Ok(l) => l,
        Err(e) => {
            out!(err, "error: {}", e);
            return INPUT_ERROR;
        }
    };
    let mut sigma = Assignment::new();
    for a in assignments {
        let Some((var, elem)) = a.split_once('=') else {
            out!(err, "error: assignment `{}` is not of the form var=element", a);
            return INPUT_ERROR;
        };
        let (var, elem) = (var.trim(), elem.trim());
        if !Ident::is_valid(var) {
            out!(err, "error: `{}` is not a variable name", var);
            return INPUT_ERROR;
        }
        let Some(e) = l.element(elem) else {
            out!(err, "error: lattice has no element `{}`", elem);
            return INPUT_ERROR;
        };
        sigma.set(Ident::new(var), e);
    }
    if text.contains("|-") {
        let s = match parse_sequent(text) {
            Ok(s) => s.sequent(),
            Err(e) => {
                out!(err, "error: {}", e);
                return INPUT_ERROR;
            }
        };
        match eval_sequent(&l, &sigma, &s) {
            Ok(true) => {
                out!(out, "true");
                OK
            }
            Ok(false) => {
                out!(out, "false");
                NO
            }
            Err(e) => {
                out!(err, "error: {}", e);
                INPUT_ERROR
            }
        }
    } else {
        let f = match parse_formula(text) {
            Ok(f) => f,
            Err(e) => {
                out!(err, "error: {}", e);
                return INPUT_ERROR;
            }
        };
        match eval_formula(&l, &sigma, &f) {
            Ok(v) => {
                out!(out, "{}", l.name(v));
                OK
            }
            Err(e) => {
                out!(err, "error: {}", e);
                INPUT_ERROR
            }
        }
    }
}

pub fn cmd_demo(name: &str, out: Out<'_>, err: Out<'_>) -> i32 {
    let (text, reproduced) = match name {
        "no-qe" => {
            let r = demo::no_qe();
            (r.render(), r.reproduced())
        }
        "refutation" => {
            let r = demo::refutation();
            (r.render(), r.reproduced())
        }
        other => {
            out!(err, "error: unknown demo `{}`; available: {}", other, demo::DEMOS.join(", "));
            return INPUT_ERROR;
        }
    };
    let _ = out.write_all(text.as_bytes());
    if reproduced {
        OK
    } else {
        NO
    }
}
