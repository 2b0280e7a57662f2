//! The two demonstrations packaged by `ol demo`.
//!
//! `no-qe` shows that `exists x. !x & (y | x)` is not equivalent to any
//! quantifier-free formula over `y`. `refutation` shows that the
//! inconsistent pair of axioms below has no refutation-based interpolant
//! over their shared variable.

use std::fmt::Write as _;

use ol_core::semantics::mo;
use ol_core::{
    builtin, check_proof, eval_formula, eval_sequent, mutually_provable, normalize_single_var, parse_formula,
    parse_sequent, prove, Assignment, FiniteOrtholattice, Formula, Ident, Sequent,
};

pub const DEMOS: [&str; 2] = ["no-qe", "refutation"];

pub const NO_QE_FORMULA: &str = "exists x. !x & (y | x)";
pub const AXIOM_A: &str = "|- (z | !y) & (!z | !y)";
pub const AXIOM_B: &str = "|- (x & y) | (!x & y)";

/// Size bound for the single-variable forms certified at runtime.
const CERTIFY_NODES: usize = 5;

fn candidate_formulas() -> [Formula; 4] {
    let y = Formula::var(Ident::new("y"));
    [Formula::zero(), Formula::one(), y.clone(), Formula::not(y)]
}

/// Counts the formulas over `y` of at most `max_nodes` nodes, checking that
/// each one normalizes to a candidate it is provably equivalent to.
/// Returns `None` on the first formula that does not.
pub fn certify_single_var_forms(max_nodes: usize) -> Option<usize> {
    let candidates = candidate_formulas();
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_nodes + 1];
    by_size[1] = vec![Formula::zero(), Formula::one(), Formula::var(Ident::new("y"))];
    for n in 2..=max_nodes {
        let mut fresh: Vec<Formula> = by_size[n - 1].iter().map(|a| Formula::not(a.clone())).collect();
        for i in 1..n - 1 {
            for a in &by_size[i] {
                for b in &by_size[n - 1 - i] {
                    fresh.push(Formula::and(a.clone(), b.clone()));
                    fresh.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        fresh.sort();
        fresh.dedup();
        by_size[n] = fresh;
    }
    let mut count = 0;
    for f in by_size.iter().flatten() {
        let n = normalize_single_var(f).ok()?;
        if !candidates.contains(&n) || mutually_provable(f, &n).is_none() {
            return None;
        }
        count += 1;
    }
    Some(count)
}

#[derive(Clone, Debug)]
pub struct CandidateValues {
    pub candidate: Formula,
    pub m2: String,
    pub m4: String,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct NoQeReport {
    pub m2: String,
    pub m4: String,
    pub candidates: Vec<CandidateValues>,
    pub certified_forms: Option<usize>,
}

impl NoQeReport {
    pub fn reproduced(&self) -> bool {
        self.m2 == "a"
            && self.m4 == "1"
            && self.certified_forms.is_some()
            && self.candidates.iter().all(|c| !c.matches)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "formula: {}", NO_QE_FORMULA);
        let _ = writeln!(s, "assignment: y = a");
        let _ = writeln!(s, "M2: {}, M4: {}", self.m2, self.m4);
        let _ = writeln!(s, "{:<10} {:<4} {:<4} same values", "candidate", "M2", "M4");
        for c in &self.candidates {
            let _ = writeln!(
                s,
                "{:<10} {:<4} {:<4} {}",
                c.candidate.to_string(),
                c.m2,
                c.m4,
                if c.matches { "yes" } else { "no" }
            );
        }
        match self.certified_forms {
            Some(n) => {
                let _ = writeln!(s, "single-variable forms certified: {} formulas up to {} nodes", n, CERTIFY_NODES);
            }
            None => {
                let _ = writeln!(s, "single-variable forms certified: FAILED");
            }
        }
        let verdict = if self.reproduced() { "reproduced" } else { "NOT reproduced" };
        let _ = writeln!(s, "separation: {}", verdict);
        s
    }
}

fn value_at_a(l: &FiniteOrtholattice, f: &Formula) -> String {
    let a = l.element("a").expect("MO(n) has the atom a");
    let sigma = Assignment::new().with("y", a);
    let v = eval_formula(l, &sigma, f).expect("only y is free");
    l.name(v).to_string()
}

pub fn no_qe() -> NoQeReport {
    let e = parse_formula(NO_QE_FORMULA).expect("demo formula parses");
    let (m2, m4) = (mo(1), mo(2));
    let (v2, v4) = (value_at_a(&m2, &e), value_at_a(&m4, &e));
    let candidates = candidate_formulas()
        .into_iter()
        .map(|c| {
            let normal = normalize_single_var(&c).map(|n| n == c).unwrap_or(false);
            let (c2, c4) = (value_at_a(&m2, &c), value_at_a(&m4, &c));
            let matches = !normal || (c2 == v2 && c4 == v4);
            CandidateValues {
                candidate: c,
                m2: c2,
                m4: c4,
                matches,
            }
        })
        .collect();
    NoQeReport {
        m2: v2,
        m4: v4,
        candidates,
        certified_forms: certify_single_var_forms(CERTIFY_NODES),
    }
}

/// A model and assignment witnessing a negative claim.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub lattice: String,
    pub assignment: String,
}

#[derive(Clone, Debug)]
pub struct CandidateRow {
    pub candidate: Sequent,
    pub from_a: bool,
    pub inconsistent_with_b: bool,
    /// For a failed condition, a model where `A` holds and the candidate
    /// does not, or where the candidate and `B` both hold.
    pub evidence: Option<Countermodel>,
}

impl CandidateRow {
    pub fn is_interpolant(&self) -> bool {
        self.from_a && self.inconsistent_with_b
    }
}

#[derive(Clone, Debug)]
pub struct RefutationReport {
    /// Node count of the kernel-checked proof of `|-` from both axioms, if
    /// one was found.
    pub inconsistency_proof: Option<u64>,
    pub rows: Vec<CandidateRow>,
    pub certified_forms: Option<usize>,
}

impl RefutationReport {
    pub fn reproduced(&self) -> bool {
        self.inconsistency_proof.is_some()
            && self.certified_forms.is_some()
            && self.rows.len() == 4
            && self.rows.iter().all(|r| !r.is_interpolant())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "A: {}", AXIOM_A);
        let _ = writeln!(s, "B: {}", AXIOM_B);
        match self.inconsistency_proof {
            Some(n) => {
                let _ = writeln!(s, "A, B derive |-: proved, kernel-checked proof of {} nodes", n);
            }
            None => {
                let _ = writeln!(s, "A, B derive |-: NOT proved");
            }
        }
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "{:<10} {:<8} {:<20} {:<8} countermodel", "candidate", "from A", "inconsistent with B", "result");
        for r in &self.rows {
            let evidence = match &r.evidence {
                Some(c) => format!("{}: {}", c.lattice, c.assignment),
                None => "-".to_string(),
            };
            let _ = writeln!(
                s,
                "{:<10} {:<8} {:<20} {:<8} {}",
                r.candidate.to_string(),
                yn(r.from_a),
                yn(r.inconsistent_with_b),
                if r.is_interpolant() { "holds" } else { "fails" },
                evidence
            );
        }
        match self.certified_forms {
            Some(n) => {
                let _ = writeln!(s, "single-variable forms certified: {} formulas up to {} nodes", n, CERTIFY_NODES);
            }
            None => {
                let _ = writeln!(s, "single-variable forms certified: FAILED");
            }
        }
        let verdict = if self.reproduced() { "reproduced" } else { "NOT reproduced" };
        let _ = writeln!(s, "no refutation-based interpolant over y: {}", verdict);
        s
    }
}

fn assignments(l: &FiniteOrtholattice, vars: &[Ident]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for x in vars {
        out = out
            .into_iter()
            .flat_map(|s| l.elements().map(move |e| s.clone().with(x.clone(), e)))
            .collect();
    }
    out
}

/// A built-in model and assignment making every `holds` sequent true and
/// `fails` false (`fails = None` asks only for the first part).
fn find_model(holds: &[&Sequent], fails: Option<&Sequent>) -> Option<Countermodel> {
    let mut vars = std::collections::BTreeSet::new();
    for s in holds.iter().copied().chain(fails) {
        vars.extend(s.free_vars());
    }
    let vars: Vec<Ident> = vars.into_iter().collect();
    for name in ["b2", "m2", "m4"] {
        let l = builtin(name).expect("builtin");
        for sigma in assignments(&l, &vars) {
            let ok = holds.iter().all(|s| eval_sequent(&l, &sigma, s) == Ok(true))
                && fails.is_none_or(|s| eval_sequent(&l, &sigma, s) == Ok(false));
            if ok {
                return Some(Countermodel {
                    lattice: name.to_string(),
                    assignment: sigma.display(&l),
                });
            }
        }
    }
    None
}

pub fn refutation() -> RefutationReport {
    let a = parse_sequent(AXIOM_A).expect("axiom parses").sequent();
    let b = parse_sequent(AXIOM_B).expect("axiom parses").sequent();
    let both = [a.clone(), b.clone()];
    let empty = Sequent::empty();
    let inconsistency_proof = prove(&empty, &both).proof().and_then(|p| {
        let report = check_proof(p, &both);
        (report.conclusion() == Some(&empty)).then(|| p.node_count())
    });
    let rows = candidate_formulas()
        .into_iter()
        .map(|f| {
            let c = Sequent::single(ol_core::AnnotatedFormula::right(f));
            let from_a = prove(&c, std::slice::from_ref(&a)).is_proved();
            let inconsistent_with_b = prove(&empty, &[c.clone(), b.clone()]).is_proved();
            let evidence = if !from_a {
                find_model(&[&a], Some(&c))
            } else if !inconsistent_with_b {
                find_model(&[&c, &b], None)
            } else {
                None
            };
            CandidateRow {
                candidate: c,
                from_a,
                inconsistent_with_b,
                evidence,
            }
        })
        .collect();
    RefutationReport {
        inconsistency_proof,
        rows,
        certified_forms: certify_single_var_forms(CERTIFY_NODES),
    }
}
