//! Proof trees and the proof checker.
//!
//! This is the trusted part of the crate. Every node records the sequent it
//! concludes, but `check_proof` never relies on a recorded conclusion
//! without re-deriving it from the node's rule and premises. Sequents are
//! sets, so a rule instance may merge its context with the principal
//! formula; the checker accepts exactly the instances where some context
//! `Γ` (empty or one annotated formula) makes both premise and conclusion
//! match the schema.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Formula, Ident, Kind};
use crate::sequent::{AnnotatedFormula, Sequent, Side};

/// The rule applied at a proof node, with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Hyp(Formula),
    /// Cut on the given formula; premises `Γ, ψ^R` and `ψ^L, Δ`.
    Cut(Formula),
    /// Adds one annotated formula, or nothing.
    Weaken(Option<AnnotatedFormula>),
    LeftAnd { kept: Formula, dropped: Formula },
    RightAnd { left: Formula, right: Formula },
    LeftOr { left: Formula, right: Formula },
    RightOr { kept: Formula, dropped: Formula },
    LeftNot(Formula),
    RightNot(Formula),
    LeftForall { binder: Ident, body: Formula, witness: Formula },
    RightForall { binder: Ident, body: Formula, eigenvariable: Ident },
    LeftExists { binder: Ident, body: Formula, eigenvariable: Ident },
    RightExists { binder: Ident, body: Formula, witness: Formula },
    AxiomLeaf(usize),
    /// Concludes `Γ, 0^L`.
    ZeroLeaf(Option<AnnotatedFormula>),
    /// Concludes `Γ, 1^R`.
    OneLeaf(Option<AnnotatedFormula>),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Hyp(_) => "Hyp",
            Rule::Cut(_) => "Cut",
            Rule::Weaken(_) => "Weaken",
            Rule::LeftAnd { .. } => "LeftAnd",
            Rule::RightAnd { .. } => "RightAnd",
            Rule::LeftOr { .. } => "LeftOr",
            Rule::RightOr { .. } => "RightOr",
            Rule::LeftNot(_) => "LeftNot",
            Rule::RightNot(_) => "RightNot",
            Rule::LeftForall { .. } => "LeftForall",
            Rule::RightForall { .. } => "RightForall",
            Rule::LeftExists { .. } => "LeftExists",
            Rule::RightExists { .. } => "RightExists",
            Rule::AxiomLeaf(_) => "AxiomLeaf",
            Rule::ZeroLeaf(_) => "ZeroLeaf",
            Rule::OneLeaf(_) => "OneLeaf",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Hyp(_) | Rule::AxiomLeaf(_) | Rule::ZeroLeaf(_) | Rule::OneLeaf(_) => 0,
            Rule::Cut(_) | Rule::RightAnd { .. } | Rule::LeftOr { .. } => 2,
            _ => 1,
        }
    }

    pub fn is_quantifier_rule(&self) -> bool {
        matches!(
            self,
            Rule::LeftForall { .. }
                | Rule::RightForall { .. }
                | Rule::LeftExists { .. }
                | Rule::RightExists { .. }
        )
    }
}

#[derive(Debug)]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<ProofStep>,
}

/// A proof tree. Cloning is cheap and subtrees may be shared.
#[derive(Clone, Debug)]
pub struct ProofStep(Arc<ProofNode>);

impl ProofStep {
    /// Builds a node as given, without any validation.
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<ProofStep>) -> ProofStep {
        ProofStep(Arc::new(ProofNode {
            rule,
            conclusion,
            premises,
        }))
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.0.conclusion
    }

    pub fn premises(&self) -> &[ProofStep] {
        &self.0.premises
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Number of nodes of the tree, counting shared subtrees once per use.
    pub fn node_count(&self) -> u64 {
        fn go(p: &ProofStep, memo: &mut BTreeMap<usize, u64>) -> u64 {
            if let Some(&n) = memo.get(&p.key()) {
                return n;
            }
            let n = p
                .premises()
                .iter()
                .fold(1u64, |acc, q| acc.saturating_add(go(q, memo)));
            memo.insert(p.key(), n);
            n
        }
        go(self, &mut BTreeMap::new())
    }

    pub fn hyp(phi: Formula) -> ProofStep {
        let concl = Sequent::pair(AnnotatedFormula::left(phi.clone()), AnnotatedFormula::right(phi.clone()));
        ProofStep::new(Rule::Hyp(phi), concl, vec![])
    }

    pub fn axiom(index: usize, axiom: &Sequent) -> ProofStep {
        ProofStep::new(Rule::AxiomLeaf(index), axiom.clone(), vec![])
    }

    pub fn zero_leaf(ctx: Option<AnnotatedFormula>) -> ProofStep {
        let concl = Sequent::of(ctx.clone(), Some(AnnotatedFormula::left(Formula::zero())));
        ProofStep::new(Rule::ZeroLeaf(ctx), concl, vec![])
    }

    pub fn one_leaf(ctx: Option<AnnotatedFormula>) -> ProofStep {
        let concl = Sequent::of(ctx.clone(), Some(AnnotatedFormula::right(Formula::one())));
        ProofStep::new(Rule::OneLeaf(ctx), concl, vec![])
    }

    /// Weakening; `None` if the premise already has two other members.
    pub fn weaken(premise: ProofStep, added: Option<AnnotatedFormula>) -> Option<ProofStep> {
        let concl = match &added {
            Some(a) => premise.conclusion().with(a)?,
            None => premise.conclusion().clone(),
        };
        Some(ProofStep::new(Rule::Weaken(added), concl, vec![premise]))
    }

    pub fn cut(
        cut: Formula,
        gamma: Option<AnnotatedFormula>,
        delta: Option<AnnotatedFormula>,
        left: ProofStep,
        right: ProofStep,
    ) -> ProofStep {
        ProofStep::new(Rule::Cut(cut), Sequent::of(gamma, delta), vec![left, right])
    }

    fn unary(rule: Rule, ctx: Option<AnnotatedFormula>, principal: AnnotatedFormula, premises: Vec<ProofStep>) -> ProofStep {
        ProofStep::new(rule, Sequent::of(ctx, Some(principal)), premises)
    }

    pub fn left_and(ctx: Option<AnnotatedFormula>, kept: Formula, dropped: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::left(Formula::and(kept.clone(), dropped.clone()));
        ProofStep::unary(Rule::LeftAnd { kept, dropped }, ctx, principal, vec![premise])
    }

    pub fn right_or(ctx: Option<AnnotatedFormula>, kept: Formula, dropped: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::right(Formula::or(kept.clone(), dropped.clone()));
        ProofStep::unary(Rule::RightOr { kept, dropped }, ctx, principal, vec![premise])
    }

    pub fn right_and(
        ctx: Option<AnnotatedFormula>,
        left: Formula,
        right: Formula,
        p_left: ProofStep,
        p_right: ProofStep,
    ) -> ProofStep {
        let principal = AnnotatedFormula::right(Formula::and(left.clone(), right.clone()));
        ProofStep::unary(Rule::RightAnd { left, right }, ctx, principal, vec![p_left, p_right])
    }

    pub fn left_or(
        ctx: Option<AnnotatedFormula>,
        left: Formula,
        right: Formula,
        p_left: ProofStep,
        p_right: ProofStep,
    ) -> ProofStep {
        let principal = AnnotatedFormula::left(Formula::or(left.clone(), right.clone()));
        ProofStep::unary(Rule::LeftOr { left, right }, ctx, principal, vec![p_left, p_right])
    }

    pub fn left_not(ctx: Option<AnnotatedFormula>, phi: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::left(Formula::not(phi.clone()));
        ProofStep::unary(Rule::LeftNot(phi), ctx, principal, vec![premise])
    }

    pub fn right_not(ctx: Option<AnnotatedFormula>, phi: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::right(Formula::not(phi.clone()));
        ProofStep::unary(Rule::RightNot(phi), ctx, principal, vec![premise])
    }

    pub fn left_forall(ctx: Option<AnnotatedFormula>, binder: Ident, body: Formula, witness: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::left(Formula::forall(&binder, body.clone()));
        ProofStep::unary(Rule::LeftForall { binder, body, witness }, ctx, principal, vec![premise])
    }

    pub fn right_exists(ctx: Option<AnnotatedFormula>, binder: Ident, body: Formula, witness: Formula, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::right(Formula::exists(&binder, body.clone()));
        ProofStep::unary(Rule::RightExists { binder, body, witness }, ctx, principal, vec![premise])
    }

    pub fn right_forall(ctx: Option<AnnotatedFormula>, binder: Ident, body: Formula, eigenvariable: Ident, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::right(Formula::forall(&binder, body.clone()));
        ProofStep::unary(Rule::RightForall { binder, body, eigenvariable }, ctx, principal, vec![premise])
    }

    pub fn left_exists(ctx: Option<AnnotatedFormula>, binder: Ident, body: Formula, eigenvariable: Ident, premise: ProofStep) -> ProofStep {
        let principal = AnnotatedFormula::left(Formula::exists(&binder, body.clone()));
        ProofStep::unary(Rule::LeftExists { binder, body, eigenvariable }, ctx, principal, vec![premise])
    }
}

/// The root's recorded conclusion, unchecked.
pub fn conclusion_of(p: &ProofStep) -> &Sequent {
    p.conclusion()
}

/// Why a node was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckError {
    Arity { rule: &'static str, expected: usize, found: usize },
    RuleMismatch { rule: &'static str, detail: String },
    Freshness { eigenvariable: Ident },
    AxiomIndex { index: usize, available: usize },
    OpenTerm,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::Arity { rule, expected, found } => {
                write!(f, "{} takes {} premise(s), found {}", rule, expected, found)
            }
            CheckError::RuleMismatch { rule, detail } => write!(f, "{} does not apply: {}", rule, detail),
            CheckError::Freshness { eigenvariable } => write!(
                f,
                "freshness violation: eigenvariable `{}` occurs free in the context or the quantified formula",
                eigenvariable
            ),
            CheckError::AxiomIndex { index, available } => {
                write!(f, "axiom index {} out of range ({} axioms)", index, available)
            }
            CheckError::OpenTerm => f.write_str("rule argument has dangling bound variables"),
        }
    }
}

/// A rejected node: the premise indices leading from the root, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub reason: CheckError,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("at root")?;
        for i in &self.path {
            write!(f, ".{}", i)?;
        }
        write!(f, ": {}", self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted(Sequent),
    Rejected(CheckFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub node_count: u64,
    pub uses_cut: bool,
    pub uses_quantifier_rules: bool,
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted(_))
    }

    pub fn conclusion(&self) -> Option<&Sequent> {
        match &self.verdict {
            Verdict::Accepted(s) => Some(s),
            Verdict::Rejected(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&CheckFailure> {
        match &self.verdict {
            Verdict::Accepted(_) => None,
            Verdict::Rejected(f) => Some(f),
        }
    }
}

/// Checks `p` bottom-up against the rules, with `axioms` available as
/// `AxiomLeaf` targets.
pub fn check_proof(p: &ProofStep, axioms: &[Sequent]) -> CheckReport {
    let mut checker = Checker {
        axioms,
        verified: BTreeSet::new(),
        uses_cut: false,
        uses_quantifiers: false,
    };
    let mut path = Vec::new();
    let verdict = match checker.check(p, &mut path) {
        Ok(()) => Verdict::Accepted(p.conclusion().clone()),
        Err(failure) => Verdict::Rejected(failure),
    };
    CheckReport {
        verdict,
        node_count: p.node_count(),
        uses_cut: checker.uses_cut,
        uses_quantifier_rules: checker.uses_quantifiers,
    }
}

struct Checker<'a> {
    axioms: &'a [Sequent],
    verified: BTreeSet<usize>,
    uses_cut: bool,
    uses_quantifiers: bool,
}

fn mismatch(rule: &'static str, detail: impl Into<String>) -> CheckError {
    CheckError::RuleMismatch {
        rule,
        detail: detail.into(),
    }
}

/// Candidate contexts: empty, or any member of the given sequents.
fn contexts<'s>(sequents: &[&'s Sequent]) -> Vec<Option<&'s AnnotatedFormula>> {
    let mut out = vec![None];
    for s in sequents {
        for m in s.members() {
            if !out.contains(&Some(m)) {
                out.push(Some(m));
            }
        }
    }
    out
}

fn with_ctx(ctx: Option<&AnnotatedFormula>, a: &AnnotatedFormula) -> Sequent {
    Sequent::of(ctx.cloned(), Some(a.clone()))
}

impl Checker<'_> {
    fn check(&mut self, p: &ProofStep, path: &mut Vec<usize>) -> Result<(), CheckFailure> {
        let rule = p.rule();
        self.uses_cut |= matches!(rule, Rule::Cut(_));
        self.uses_quantifiers |= rule.is_quantifier_rule();
        if self.verified.contains(&p.key()) {
            return Ok(());
        }
        for (i, q) in p.premises().iter().enumerate() {
            path.push(i);
            self.check(q, path)?;
            path.pop();
        }
        self.check_node(p).map_err(|reason| CheckFailure {
            path: path.clone(),
            reason,
        })?;
        self.verified.insert(p.key());
        Ok(())
    }

    fn check_node(&self, p: &ProofStep) -> Result<(), CheckError> {
        let rule = p.rule();
        let name = rule.name();
        if p.premises().len() != rule.arity() {
            return Err(CheckError::Arity {
                rule: name,
                expected: rule.arity(),
                found: p.premises().len(),
            });
        }
        if !rule_terms_closed(rule) {
            return Err(CheckError::OpenTerm);
        }
        let concl = p.conclusion();
        let prem: Vec<&Sequent> = p.premises().iter().map(ProofStep::conclusion).collect();
        let l = AnnotatedFormula::left;
        let r = AnnotatedFormula::right;
        match rule {
            Rule::Hyp(phi) => {
                if *concl == Sequent::pair(l(phi.clone()), r(phi.clone())) {
                    Ok(())
                } else {
                    Err(mismatch(name, "conclusion must be φ^L, φ^R"))
                }
            }
            Rule::ZeroLeaf(ctx) => {
                if *concl == Sequent::of(ctx.clone(), Some(l(Formula::zero()))) {
                    Ok(())
                } else {
                    Err(mismatch(name, "conclusion must be Γ, 0^L"))
                }
            }
            Rule::OneLeaf(ctx) => {
                if *concl == Sequent::of(ctx.clone(), Some(r(Formula::one()))) {
                    Ok(())
                } else {
                    Err(mismatch(name, "conclusion must be Γ, 1^R"))
                }
            }
            Rule::AxiomLeaf(i) => match self.axioms.get(*i) {
                None => Err(CheckError::AxiomIndex {
                    index: *i,
                    available: self.axioms.len(),
                }),
                Some(ax) if ax == concl => Ok(()),
                Some(_) => Err(mismatch(name, "conclusion differs from the axiom")),
            },
            Rule::Weaken(added) => {
                let expected = match added {
                    Some(a) => prem[0].with(a),
                    None => Some(prem[0].clone()),
                };
                if expected.as_ref() == Some(concl) {
                    Ok(())
                } else {
                    Err(mismatch(name, "conclusion must be the premise plus the added formula"))
                }
            }
            Rule::Cut(psi) => {
                let (psi_r, psi_l) = (r(psi.clone()), l(psi.clone()));
                for gamma in contexts(&[prem[0]]) {
                    if with_ctx(gamma, &psi_r) != *prem[0] {
                        continue;
                    }
                    for delta in contexts(&[prem[1]]) {
                        if with_ctx(delta, &psi_l) == *prem[1]
                            && Sequent::of(gamma.cloned(), delta.cloned()) == *concl
                        {
                            return Ok(());
                        }
                    }
                }
                Err(mismatch(name, "premises must be Γ, ψ^R and ψ^L, Δ concluding Γ, Δ"))
            }
            Rule::LeftAnd { kept, dropped } => self.unary(
                name,
                prem[0],
                concl,
                &l(kept.clone()),
                &l(Formula::and(kept.clone(), dropped.clone())),
            ),
            Rule::RightOr { kept, dropped } => self.unary(
                name,
                prem[0],
                concl,
                &r(kept.clone()),
                &r(Formula::or(kept.clone(), dropped.clone())),
            ),
            Rule::LeftNot(phi) => self.unary(name, prem[0], concl, &r(phi.clone()), &l(Formula::not(phi.clone()))),
            Rule::RightNot(phi) => self.unary(name, prem[0], concl, &l(phi.clone()), &r(Formula::not(phi.clone()))),
            Rule::RightAnd { left, right } => self.binary(
                name,
                prem[0],
                prem[1],
                concl,
                &r(left.clone()),
                &r(right.clone()),
                &r(Formula::and(left.clone(), right.clone())),
            ),
            Rule::LeftOr { left, right } => self.binary(
                name,
                prem[0],
                prem[1],
                concl,
                &l(left.clone()),
                &l(right.clone()),
                &l(Formula::or(left.clone(), right.clone())),
            ),
            Rule::LeftForall { binder, body, witness } => self.unary(
                name,
                prem[0],
                concl,
                &l(body.substitute(binder, witness)),
                &l(Formula::forall(binder, body.clone())),
            ),
            Rule::RightExists { binder, body, witness } => self.unary(
                name,
                prem[0],
                concl,
                &r(body.substitute(binder, witness)),
                &r(Formula::exists(binder, body.clone())),
            ),
            Rule::RightForall { binder, body, eigenvariable } => self.eigen(
                name,
                prem[0],
                concl,
                Side::R,
                Formula::forall(binder, body.clone()),
                body.substitute(binder, &Formula::var(eigenvariable.clone())),
                eigenvariable,
            ),
            Rule::LeftExists { binder, body, eigenvariable } => self.eigen(
                name,
                prem[0],
                concl,
                Side::L,
                Formula::exists(binder, body.clone()),
                body.substitute(binder, &Formula::var(eigenvariable.clone())),
                eigenvariable,
            ),
        }
    }

    fn unary(
        &self,
        name: &'static str,
        premise: &Sequent,
        concl: &Sequent,
        active: &AnnotatedFormula,
        principal: &AnnotatedFormula,
    ) -> Result<(), CheckError> {
        let ok = contexts(&[premise, concl])
            .into_iter()
            .any(|ctx| with_ctx(ctx, active) == *premise && with_ctx(ctx, principal) == *concl);
        if ok {
            Ok(())
        } else {
            Err(mismatch(name, "premise and conclusion do not share a context around the principal formula"))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn binary(
        &self,
        name: &'static str,
        p1: &Sequent,
        p2: &Sequent,
        concl: &Sequent,
        a1: &AnnotatedFormula,
        a2: &AnnotatedFormula,
        principal: &AnnotatedFormula,
    ) -> Result<(), CheckError> {
        let ok = contexts(&[p1, p2, concl]).into_iter().any(|ctx| {
            with_ctx(ctx, a1) == *p1 && with_ctx(ctx, a2) == *p2 && with_ctx(ctx, principal) == *concl
        });
        if ok {
            Ok(())
        } else {
            Err(mismatch(name, "premises and conclusion do not share a context"))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn eigen(
        &self,
        name: &'static str,
        premise: &Sequent,
        concl: &Sequent,
        side: Side,
        quantified: Formula,
        opened: Formula,
        eigen: &Ident,
    ) -> Result<(), CheckError> {
        let active = AnnotatedFormula::new(opened, side);
        let fresh_in_quantified = !quantified.has_free(eigen);
        let principal = AnnotatedFormula::new(quantified, side);
        let mut matched = false;
        for ctx in contexts(&[premise, concl]) {
            if with_ctx(ctx, &active) == *premise && with_ctx(ctx, &principal) == *concl {
                matched = true;
                let fresh_in_ctx = ctx.is_none_or(|c| !c.formula.has_free(eigen));
                if fresh_in_ctx && fresh_in_quantified {
                    return Ok(());
                }
            }
        }
        if matched {
            Err(CheckError::Freshness {
                eigenvariable: eigen.clone(),
            })
        } else {
            Err(mismatch(name, "premise and conclusion do not share a context around the principal formula"))
        }
    }
}

fn rule_terms_closed(rule: &Rule) -> bool {
    let closed = |f: &Formula| f.is_closed_term();
    let ann = |a: &Option<AnnotatedFormula>| a.as_ref().is_none_or(|a| closed(&a.formula));
    match rule {
        Rule::Hyp(f) | Rule::Cut(f) | Rule::LeftNot(f) | Rule::RightNot(f) => closed(f),
        Rule::Weaken(a) | Rule::ZeroLeaf(a) | Rule::OneLeaf(a) => ann(a),
        Rule::LeftAnd { kept: a, dropped: b }
        | Rule::RightOr { kept: a, dropped: b }
        | Rule::RightAnd { left: a, right: b }
        | Rule::LeftOr { left: a, right: b } => closed(a) && closed(b),
        Rule::LeftForall { body, witness, .. } | Rule::RightExists { body, witness, .. } => {
            closed(body) && closed(witness)
        }
        Rule::RightForall { body, .. } | Rule::LeftExists { body, .. } => closed(body),
        Rule::AxiomLeaf(_) => true,
    }
}

/// True if the formula is a quantifier node, for callers that build
/// quantifier rule instances.
pub fn is_quantifier(f: &Formula) -> bool {
    matches!(f.kind(), Kind::Forall { .. } | Kind::Exists { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }
    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap().sequent()
    }
    fn l(s: &str) -> AnnotatedFormula {
        AnnotatedFormula::left(f(s))
    }
    fn r(s: &str) -> AnnotatedFormula {
        AnnotatedFormula::right(f(s))
    }

    #[test]
    fn conclusion_of_leaves() {
        assert_eq!(*conclusion_of(&ProofStep::hyp(f("x"))), seq("x |- x"));
        let z = ProofStep::zero_leaf(Some(r("y")));
        assert_eq!(*conclusion_of(&z), seq("0 |- y"));
    }

    #[test]
    fn left_and_over_hyp() {
        let p = ProofStep::left_and(Some(r("x")), f("x"), f("y"), ProofStep::hyp(f("x")));
        let report = check_proof(&p, &[]);
        assert_eq!(report.conclusion(), Some(&seq("x & y |- x")));
        assert_eq!(report.node_count, 2);
        assert!(!report.uses_cut);
    }

    #[test]
    fn merging_contraction_accepted() {
        // x^L, x^R  ->  x^L, !x^L  ->  x^L, (x & !x)^L  ->  (x & !x)^L
        let p = ProofStep::left_not(Some(l("x")), f("x"), ProofStep::hyp(f("x")));
        let p = ProofStep::left_and(Some(l("x")), f("!x"), f("x"), p);
        let p = ProofStep::left_and(Some(l("x & !x")), f("x"), f("!x"), p);
        let report = check_proof(&p, &[]);
        assert_eq!(report.conclusion(), Some(&seq("x & !x |-")));
    }

    #[test]
    fn wrong_conclusion_rejected_with_path() {
        let bad = ProofStep::new(
            Rule::LeftAnd { kept: f("x"), dropped: f("y") },
            seq("x & y |- y"),
            vec![ProofStep::hyp(f("x"))],
        );
        let top = ProofStep::weaken(bad, None).unwrap();
        let report = check_proof(&top, &[]);
        let failure = report.failure().unwrap();
        assert_eq!(failure.path, vec![0]);
        assert!(matches!(failure.reason, CheckError::RuleMismatch { rule: "LeftAnd", .. }));
    }

    #[test]
    fn arity_checked() {
        let p = ProofStep::new(Rule::Hyp(f("x")), seq("x |- x"), vec![ProofStep::hyp(f("x"))]);
        assert!(matches!(
            check_proof(&p, &[]).failure().unwrap().reason,
            CheckError::Arity { expected: 0, found: 1, .. }
        ));
    }

    #[test]
    fn axiom_index_out_of_range() {
        let p = ProofStep::new(Rule::AxiomLeaf(1), seq("|- y"), vec![]);
        let report = check_proof(&p, &[seq("|- y")]);
        assert_eq!(
            report.failure().unwrap().reason,
            CheckError::AxiomIndex { index: 1, available: 1 }
        );
        let p = ProofStep::new(Rule::AxiomLeaf(0), seq("|- y"), vec![]);
        assert!(check_proof(&p, &[seq("|- y")]).is_accepted());
    }

    #[test]
    fn right_forall_freshness() {
        // y |- y  ==>  y |- forall z. z  with eigenvariable y: y is free in Γ.
        let p = ProofStep::right_forall(Some(l("y")), "z".into(), f("z"), "y".into(), ProofStep::hyp(f("y")));
        let report = check_proof(&p, &[]);
        assert_eq!(
            report.failure().unwrap().reason,
            CheckError::Freshness { eigenvariable: "y".into() }
        );
        assert!(report.uses_quantifier_rules);
    }

    #[test]
    fn right_forall_body_freshness() {
        // y |- y | y  ==> with binder x, body (x | y), eigenvariable y.
        let premise = ProofStep::right_or(Some(l("y")), f("y"), f("y"), ProofStep::hyp(f("y")));
        let p = ProofStep::right_forall(None, "x".into(), f("x | y"), "y".into(), premise.clone());
        // Γ would have to be y^L, which mentions y.
        assert!(!check_proof(&p, &[]).is_accepted());
        let p = ProofStep::new(
            Rule::RightForall { binder: "x".into(), body: f("x | y"), eigenvariable: "y".into() },
            seq("y |- forall x. x | y"),
            vec![premise],
        );
        assert!(matches!(
            check_proof(&p, &[]).failure().unwrap().reason,
            CheckError::Freshness { .. }
        ));
    }

    #[test]
    fn left_forall_with_witness() {
        let b = f("(x & y) | (!x & y)");
        let p = ProofStep::left_forall(Some(AnnotatedFormula::right(b.clone())), "z".into(), b.clone(), f("z"), ProofStep::hyp(b.clone()));
        let report = check_proof(&p, &[]);
        assert!(report.is_accepted(), "{:?}", report);
        assert_eq!(
            report.conclusion().unwrap(),
            &Sequent::pair(
                AnnotatedFormula::left(Formula::forall(&"z".into(), b.clone())),
                AnnotatedFormula::right(b)
            )
        );
    }

    #[test]
    fn weaken_adds_at_most_one() {
        let p = ProofStep::new(
            Rule::Weaken(Some(r("a"))),
            seq("b |- a"),
            vec![ProofStep::new(Rule::AxiomLeaf(0), Sequent::empty(), vec![])],
        );
        assert!(!check_proof(&p, &[Sequent::empty()]).is_accepted());
    }

    #[test]
    fn cut_schema() {
        let ax = [seq("|- y")];
        let left = ProofStep::axiom(0, &ax[0]);
        let right = ProofStep::left_not(None, f("y"), ProofStep::axiom(0, &ax[0]));
        // y^R and (!y)^L cannot be cut: the cut formula must match.
        let bad = ProofStep::cut(f("y"), None, None, left.clone(), right.clone());
        assert!(!check_proof(&bad, &ax).is_accepted());
        let right = ProofStep::left_not(Some(r("z")), f("y"), ProofStep::weaken(ProofStep::axiom(0, &ax[0]), Some(r("z"))).unwrap());
        let _ = right;
        let hyp = ProofStep::hyp(f("y"));
        let good = ProofStep::cut(f("y"), None, Some(r("y")), left, hyp);
        let report = check_proof(&good, &ax);
        assert_eq!(report.conclusion(), Some(&seq("|- y")));
        assert!(report.uses_cut);
    }
}
