//! Interpolants from cut-free proofs.
//!
//! Given a proof of a sequent `Γ, Δ` and the ordered pair `(Γ, Δ)`,
//! `interpolate` walks the proof from the root and returns a formula `I`
//! over the common variables together with proofs of `Γ, I^R` and
//! `I^L, Δ`. Each proof node is visited at most once per path, so the work
//! is linear in the size of the proof.

use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Formula, Ident};
use crate::proof::{check_proof, CheckFailure, ProofStep, Rule};
use crate::prover::mutually_provable;
use crate::sequent::{AnnotatedFormula, Sequent, Side};

#[derive(Clone, Debug)]
pub struct InterpolationResult {
    pub interpolant: Formula,
    /// Proof of `Γ, I^R`.
    pub left_proof: ProofStep,
    /// Proof of `I^L, Δ`.
    pub right_proof: ProofStep,
    pub recursion_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpolationError {
    NotAccepted(CheckFailure),
    ContainsCut,
    ContainsQuantifierRule,
    PartitionMismatch { expected: Sequent, found: Sequent },
    QuantifiedInput,
}

impl fmt::Display for InterpolationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpolationError::NotAccepted(failure) => write!(f, "proof rejected by the checker: {}", failure),
            InterpolationError::ContainsCut => f.write_str("proof uses Cut; a cut-free proof is required"),
            InterpolationError::ContainsQuantifierRule => {
                f.write_str("proof uses quantifier rules; only propositional proofs are supported")
            }
            InterpolationError::PartitionMismatch { expected, found } => {
                write!(f, "partition {} does not match the proved sequent {}", expected, found)
            }
            InterpolationError::QuantifiedInput => f.write_str("formulas must be quantifier-free"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InterpolationError {}

fn validate(gamma: &Option<AnnotatedFormula>, delta: &Option<AnnotatedFormula>, p: &ProofStep) -> Result<(), InterpolationError> {
    let report = check_proof(p, &[]);
    if let Some(failure) = report.failure() {
        return Err(InterpolationError::NotAccepted(failure.clone()));
    }
    if report.uses_cut {
        return Err(InterpolationError::ContainsCut);
    }
    if report.uses_quantifier_rules {
        return Err(InterpolationError::ContainsQuantifierRule);
    }
    let partition = Sequent::of(gamma.clone(), delta.clone());
    if partition != *p.conclusion() {
        return Err(InterpolationError::PartitionMismatch {
            expected: partition,
            found: p.conclusion().clone(),
        });
    }
    Ok(())
}

/// Interpolant for the ordered pair `(gamma, delta)` from a cut-free,
/// quantifier-free proof of `{gamma, delta}`.
pub fn interpolate(
    gamma: Option<AnnotatedFormula>,
    delta: Option<AnnotatedFormula>,
    p: &ProofStep,
) -> Result<InterpolationResult, InterpolationError> {
    validate(&gamma, &delta, p)?;
    let mut calls = 0;
    let w = interp(gamma.as_ref(), delta.as_ref(), p, &mut calls);
    Ok(InterpolationResult {
        interpolant: w.i,
        left_proof: w.left,
        right_proof: w.right,
        recursion_count: calls,
    })
}

/// Whether the interpolant of `(Δ, Γ)` from `p2` is mutually provable with
/// the negation of the interpolant of `(Γ, Δ)` from `p`.
pub fn interpolate_dual_check(
    gamma: Option<AnnotatedFormula>,
    delta: Option<AnnotatedFormula>,
    p: &ProofStep,
    p2: &ProofStep,
) -> Result<bool, InterpolationError> {
    let forward = interpolate(gamma.clone(), delta.clone(), p)?;
    let backward = interpolate(delta, gamma, p2)?;
    Ok(mutually_provable(&backward.interpolant, &Formula::not(forward.interpolant)).is_some())
}

#[derive(Clone, Debug)]
pub struct QuantifiedInterpolant {
    pub interpolant: Formula,
    /// Proof of `A ⊢ I`.
    pub left_proof: ProofStep,
    /// Proof of `I ⊢ B`.
    pub right_proof: ProofStep,
}

/// `⋀z̄. B` for the variables `z̄` of `B` that do not occur in `A`.
pub fn quantified_interpolant(a: &Formula, b: &Formula, p: &ProofStep) -> Result<QuantifiedInterpolant, InterpolationError> {
    if !a.is_quantifier_free() || !b.is_quantifier_free() {
        return Err(InterpolationError::QuantifiedInput);
    }
    let report = check_proof(p, &[]);
    if let Some(failure) = report.failure() {
        return Err(InterpolationError::NotAccepted(failure.clone()));
    }
    let goal = Sequent::entails(a.clone(), b.clone());
    if *p.conclusion() != goal {
        return Err(InterpolationError::PartitionMismatch {
            expected: goal,
            found: p.conclusion().clone(),
        });
    }
    let fa = a.free_vars();
    let zs: Vec<Ident> = b.free_vars().into_iter().filter(|z| !fa.contains(z)).collect();
    let lhs = AnnotatedFormula::left(a.clone());
    let rhs = AnnotatedFormula::right(b.clone());
    let mut body = b.clone();
    let mut left = p.clone();
    let mut right = ProofStep::hyp(b.clone());
    for z in zs.iter().rev() {
        left = ProofStep::right_forall(Some(lhs.clone()), z.clone(), body.clone(), z.clone(), left);
        right = ProofStep::left_forall(Some(rhs.clone()), z.clone(), body.clone(), Formula::var(z.clone()), right);
        body = Formula::forall(z, body);
    }
    Ok(QuantifiedInterpolant {
        interpolant: body,
        left_proof: left,
        right_proof: right,
    })
}

/// The principal formula of a one-premise propositional rule.
fn principal(p: &ProofStep) -> AnnotatedFormula {
    match p.rule() {
        Rule::LeftAnd { kept, dropped } => AnnotatedFormula::left(Formula::and(kept.clone(), dropped.clone())),
        Rule::RightOr { kept, dropped } => AnnotatedFormula::right(Formula::or(kept.clone(), dropped.clone())),
        Rule::LeftNot(phi) => AnnotatedFormula::left(Formula::not(phi.clone())),
        Rule::RightNot(phi) => AnnotatedFormula::right(Formula::not(phi.clone())),
        _ => unreachable!("not a one-premise logical rule"),
    }
}

struct Witness {
    i: Formula,
    left: ProofStep,
    right: ProofStep,
}

fn ann_r(f: &Formula) -> Option<AnnotatedFormula> {
    Some(AnnotatedFormula::right(f.clone()))
}

fn ann_l(f: &Formula) -> Option<AnnotatedFormula> {
    Some(AnnotatedFormula::left(f.clone()))
}

fn weaken(p: ProofStep, added: Option<AnnotatedFormula>) -> ProofStep {
    ProofStep::weaken(p, added).expect("at most two members after weakening")
}

fn interp(gamma: Option<&AnnotatedFormula>, delta: Option<&AnnotatedFormula>, p: &ProofStep, calls: &mut u64) -> Witness {
    *calls += 1;
    let zero = Formula::zero();
    let one = Formula::one();
    match (gamma, delta) {
        (Some(_), None) => {
            return Witness {
                left: weaken(p.clone(), ann_r(&zero)),
                right: ProofStep::zero_leaf(None),
                i: zero,
            }
        }
        (None, Some(_)) => {
            return Witness {
                left: ProofStep::one_leaf(None),
                right: weaken(p.clone(), ann_l(&one)),
                i: one,
            }
        }
        (Some(g), Some(d)) if g == d => {
            return Witness {
                left: weaken(p.clone(), ann_r(&zero)),
                right: ProofStep::zero_leaf(Some(g.clone())),
                i: zero,
            }
        }
        (None, None) => {
            return Witness {
                left: weaken(p.clone(), ann_r(&zero)),
                right: ProofStep::zero_leaf(None),
                i: zero,
            }
        }
        _ => {}
    }
    let (g, d) = (gamma.expect("gamma"), delta.expect("delta"));
    let prem = p.premises();
    match p.rule() {
        Rule::Hyp(phi) => {
            if g.side == Side::L {
                Witness {
                    i: phi.clone(),
                    left: ProofStep::hyp(phi.clone()),
                    right: ProofStep::hyp(phi.clone()),
                }
            } else {
                Witness {
                    i: Formula::not(phi.clone()),
                    left: ProofStep::right_not(ann_r(phi), phi.clone(), ProofStep::hyp(phi.clone())),
                    right: ProofStep::left_not(ann_l(phi), phi.clone(), ProofStep::hyp(phi.clone())),
                }
            }
        }
        Rule::ZeroLeaf(_) => {
            if g.formula == zero && g.side == Side::L {
                Witness {
                    left: ProofStep::zero_leaf(ann_r(&zero)),
                    right: ProofStep::zero_leaf(Some(d.clone())),
                    i: zero,
                }
            } else {
                Witness {
                    left: ProofStep::one_leaf(Some(g.clone())),
                    right: ProofStep::zero_leaf(ann_l(&one)),
                    i: one,
                }
            }
        }
        Rule::OneLeaf(_) => {
            if g.formula == one && g.side == Side::R {
                Witness {
                    left: ProofStep::one_leaf(ann_r(&zero)),
                    right: ProofStep::zero_leaf(Some(d.clone())),
                    i: zero,
                }
            } else {
                Witness {
                    left: ProofStep::one_leaf(Some(g.clone())),
                    right: ProofStep::one_leaf(ann_l(&one)),
                    i: one,
                }
            }
        }
        Rule::Weaken(added) => {
            let q = &prem[0];
            if q.conclusion() == p.conclusion() {
                return interp(gamma, delta, q, calls);
            }
            if added.as_ref() == Some(g) {
                let c = interp(None, Some(d), q, calls);
                Witness {
                    left: weaken(c.left, Some(g.clone())),
                    right: c.right,
                    i: c.i,
                }
            } else {
                let c = interp(Some(g), None, q, calls);
                Witness {
                    left: c.left,
                    right: weaken(c.right, Some(d.clone())),
                    i: c.i,
                }
            }
        }
        Rule::LeftAnd { kept, dropped } => unary(g, d, &prem[0], calls, principal(p), AnnotatedFormula::left(kept.clone()), |ctx, q| {
            ProofStep::left_and(ctx, kept.clone(), dropped.clone(), q)
        }),
        Rule::RightOr { kept, dropped } => unary(g, d, &prem[0], calls, principal(p), AnnotatedFormula::right(kept.clone()), |ctx, q| {
            ProofStep::right_or(ctx, kept.clone(), dropped.clone(), q)
        }),
        Rule::LeftNot(phi) => unary(g, d, &prem[0], calls, principal(p), AnnotatedFormula::right(phi.clone()), |ctx, q| {
            ProofStep::left_not(ctx, phi.clone(), q)
        }),
        Rule::RightNot(phi) => unary(g, d, &prem[0], calls, principal(p), AnnotatedFormula::left(phi.clone()), |ctx, q| {
            ProofStep::right_not(ctx, phi.clone(), q)
        }),
        Rule::RightAnd { left, right } => {
            let principal = AnnotatedFormula::right(Formula::and(left.clone(), right.clone()));
            let (a1, a2) = (AnnotatedFormula::right(left.clone()), AnnotatedFormula::right(right.clone()));
            let rebuild = |ctx, q1, q2| ProofStep::right_and(ctx, left.clone(), right.clone(), q1, q2);
            binary(g, d, &principal, (&a1, &a2), (&prem[0], &prem[1]), calls, rebuild)
        }
        Rule::LeftOr { left, right } => {
            let principal = AnnotatedFormula::left(Formula::or(left.clone(), right.clone()));
            let (a1, a2) = (AnnotatedFormula::left(left.clone()), AnnotatedFormula::left(right.clone()));
            let rebuild = |ctx, q1, q2| ProofStep::left_or(ctx, left.clone(), right.clone(), q1, q2);
            binary(g, d, &principal, (&a1, &a2), (&prem[0], &prem[1]), calls, rebuild)
        }
        Rule::Cut(_) | Rule::AxiomLeaf(_) => unreachable!("rejected before recursion"),
        _ => unreachable!("quantifier rules rejected before recursion"),
    }
}

/// One-premise rules: recurse with the active formula in the slot held by
/// the principal formula, then reapply the rule with the interpolant as
/// context on the side that needs it.
fn unary(
    g: &AnnotatedFormula,
    d: &AnnotatedFormula,
    q: &ProofStep,
    calls: &mut u64,
    principal: AnnotatedFormula,
    active: AnnotatedFormula,
    rebuild: impl Fn(Option<AnnotatedFormula>, ProofStep) -> ProofStep,
) -> Witness {
    if *g == principal {
        let c = interp(Some(&active), Some(d), q, calls);
        Witness {
            left: rebuild(ann_r(&c.i), c.left),
            right: c.right,
            i: c.i,
        }
    } else {
        let c = interp(Some(g), Some(&active), q, calls);
        Witness {
            left: c.left,
            right: rebuild(ann_l(&c.i), c.right),
            i: c.i,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    g: &AnnotatedFormula,
    d: &AnnotatedFormula,
    principal: &AnnotatedFormula,
    active: (&AnnotatedFormula, &AnnotatedFormula),
    premises: (&ProofStep, &ProofStep),
    calls: &mut u64,
    rebuild: impl Fn(Option<AnnotatedFormula>, ProofStep, ProofStep) -> ProofStep,
) -> Witness {
    let (a1, a2) = active;
    let (p1, p2) = premises;
    if g == principal {
        let d1 = interp(Some(a1), Some(d), p1, calls);
        let d2 = interp(Some(a2), Some(d), p2, calls);
        let i = Formula::or(d1.i.clone(), d2.i.clone());
        let l1 = ProofStep::right_or(Some(a1.clone()), d1.i.clone(), d2.i.clone(), d1.left);
        let l2 = ProofStep::right_or(Some(a2.clone()), d2.i.clone(), d1.i.clone(), d2.left);
        let left = rebuild(ann_r(&i), l1, l2);
        let right = ProofStep::left_or(Some(d.clone()), d1.i, d2.i, d1.right, d2.right);
        Witness { i, left, right }
    } else {
        let c1 = interp(Some(g), Some(a1), p1, calls);
        let c2 = interp(Some(g), Some(a2), p2, calls);
        let i = Formula::and(c1.i.clone(), c2.i.clone());
        let left = ProofStep::right_and(Some(g.clone()), c1.i.clone(), c2.i.clone(), c1.left, c2.left);
        let r1 = ProofStep::left_and(Some(a1.clone()), c1.i.clone(), c2.i.clone(), c1.right);
        let r2 = ProofStep::left_and(Some(a2.clone()), c2.i.clone(), c1.i.clone(), c2.right);
        let right = rebuild(ann_l(&i), r1, r2);
        Witness { i, left, right }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::decide_leq;
    use crate::syntax::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn check_result(gamma: &Option<AnnotatedFormula>, delta: &Option<AnnotatedFormula>, r: &InterpolationResult) {
        let i = &r.interpolant;
        let left = check_proof(&r.left_proof, &[]);
        let right = check_proof(&r.right_proof, &[]);
        assert_eq!(
            left.conclusion(),
            Some(&Sequent::of(gamma.clone(), Some(AnnotatedFormula::right(i.clone())))),
            "{:?}",
            left.failure()
        );
        assert_eq!(
            right.conclusion(),
            Some(&Sequent::of(Some(AnnotatedFormula::left(i.clone())), delta.clone())),
            "{:?}",
            right.failure()
        );
    }

    #[test]
    fn hyp_cases() {
        let p = ProofStep::hyp(f("x"));
        let (l, r) = (AnnotatedFormula::left(f("x")), AnnotatedFormula::right(f("x")));
        let res = interpolate(Some(l.clone()), Some(r.clone()), &p).unwrap();
        assert_eq!(res.interpolant, f("x"));
        check_result(&Some(l.clone()), &Some(r.clone()), &res);
        let res = interpolate(Some(r.clone()), Some(l.clone()), &p).unwrap();
        assert_eq!(res.interpolant, f("!x"));
        check_result(&Some(r.clone()), &Some(l.clone()), &res);
        assert!(interpolate_dual_check(Some(l), Some(r), &p, &p).unwrap());
    }

    #[test]
    fn special_partitions() {
        let p = ProofStep::zero_leaf(None);
        let pi = AnnotatedFormula::left(Formula::zero());
        let res = interpolate(Some(pi.clone()), None, &p).unwrap();
        assert_eq!(res.interpolant, Formula::zero());
        check_result(&Some(pi.clone()), &None, &res);
        let res = interpolate(None, Some(pi.clone()), &p).unwrap();
        assert_eq!(res.interpolant, Formula::one());
        check_result(&None, &Some(pi.clone()), &res);
        let res = interpolate(Some(pi.clone()), Some(pi.clone()), &p).unwrap();
        assert_eq!(res.interpolant, Formula::zero());
        check_result(&Some(pi.clone()), &Some(pi.clone()), &res);
        assert!(interpolate_dual_check(Some(pi), None, &p, &p).unwrap());
    }

    #[test]
    fn conjunction_to_disjunction() {
        let p = ProofStep::right_or(
            Some(AnnotatedFormula::left(f("x & y"))),
            f("y"),
            f("z"),
            ProofStep::left_and(Some(AnnotatedFormula::right(f("y"))), f("y"), f("x"), ProofStep::hyp(f("y"))),
        );
        let gamma = Some(AnnotatedFormula::left(f("x & y")));
        let delta = Some(AnnotatedFormula::right(f("y | z")));
        let res = interpolate(gamma.clone(), delta.clone(), &p).unwrap();
        assert_eq!(res.interpolant, f("y"));
        assert!(res.recursion_count <= p.node_count());
        check_result(&gamma, &delta, &res);
    }

    #[test]
    fn prover_proofs_interpolate() {
        for (a, b) in [
            ("x & y", "y | z"),
            ("!(x | y)", "!x & !y"),
            ("x & (y & !y)", "z"),
            ("a", "b | !b"),
            ("(a & b) | (a & c)", "a & (b | c)"),
        ] {
            let p = decide_leq(&f(a), &f(b), &[]).proof().cloned().unwrap();
            let gamma = Some(AnnotatedFormula::left(f(a)));
            let delta = Some(AnnotatedFormula::right(f(b)));
            let res = interpolate(gamma.clone(), delta.clone(), &p).unwrap();
            check_result(&gamma, &delta, &res);
            let common: Vec<_> = f(a).free_vars().intersection(&f(b).free_vars()).cloned().collect();
            assert!(res.interpolant.free_vars().iter().all(|v| common.contains(v)), "{}", res.interpolant);
            assert!(res.recursion_count <= p.node_count());
            assert!(interpolate_dual_check(gamma, delta, &p, &p).unwrap());
        }
    }

    #[test]
    fn rejects_cut_and_mismatch() {
        let ax = [parse_sequent("|- y").unwrap().sequent()];
        let cut = ProofStep::cut(
            f("y"),
            None,
            Some(AnnotatedFormula::right(f("y"))),
            ProofStep::axiom(0, &ax[0]),
            ProofStep::hyp(f("y")),
        );
        assert!(matches!(
            interpolate(None, Some(AnnotatedFormula::right(f("y"))), &cut),
            Err(InterpolationError::NotAccepted(_))
        ));
        let p = ProofStep::hyp(f("x"));
        assert!(matches!(
            interpolate(Some(AnnotatedFormula::left(f("x"))), None, &p),
            Err(InterpolationError::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn quantified_construction() {
        for (a, b, expected) in [
            ("x & y", "y | z", "forall z. y | z"),
            ("y", "y | (z & !z)", "forall z. y | (z & !z)"),
            ("x & y", "x", "x"),
        ] {
            let p = decide_leq(&f(a), &f(b), &[]).proof().cloned().unwrap();
            let q = quantified_interpolant(&f(a), &f(b), &p).unwrap();
            assert_eq!(q.interpolant, f(expected));
            let l = check_proof(&q.left_proof, &[]);
            let r = check_proof(&q.right_proof, &[]);
            assert_eq!(l.conclusion(), Some(&Sequent::entails(f(a), q.interpolant.clone())));
            assert_eq!(r.conclusion(), Some(&Sequent::entails(q.interpolant.clone(), f(b))));
        }
    }
}
