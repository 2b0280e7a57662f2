//! Exponential backward proof search for quantifier-free sequents.
//!
//! Every rule is read bottom-up, including all ways a conclusion can arise
//! by merging a context with the principal formula. Cycles are cut by
//! refusing to revisit a sequent already on the current path. Successes are
//! cached unconditionally; a failure is cached only if it did not depend on
//! a path cut above the sequent being refuted.

use std::collections::HashMap;

use ol_core::{AnnotatedFormula, Formula, Kind, Sequent, Side};

pub fn provable(goal: &Sequent) -> bool {
    assert!(goal.is_quantifier_free(), "oracle handles quantifier-free sequents only");
    let mut search = Search {
        path: Vec::new(),
        cache: HashMap::new(),
    };
    search.go(goal).0
}

struct Search {
    path: Vec<Sequent>,
    cache: HashMap<Sequent, bool>,
}

const NO_CUT: usize = usize::MAX;

fn seq(ctx: Option<&AnnotatedFormula>, a: AnnotatedFormula) -> Sequent {
    Sequent::of(ctx.cloned(), Some(a))
}

impl Search {
    /// Returns the verdict and the shallowest path index a cut referred to.
    fn go(&mut self, s: &Sequent) -> (bool, usize) {
        if let Some(&v) = self.cache.get(s) {
            return (v, NO_CUT);
        }
        if let Some(i) = self.path.iter().position(|p| p == s) {
            return (false, i);
        }
        if is_axiom(s) {
            self.cache.insert(s.clone(), true);
            return (true, NO_CUT);
        }
        let depth = self.path.len();
        self.path.push(s.clone());
        let mut low = NO_CUT;
        let mut found = false;
        'alts: for alt in alternatives(s) {
            let mut all = true;
            for premise in &alt {
                let (ok, l) = self.go(premise);
                low = low.min(l);
                if !ok {
                    all = false;
                    break;
                }
            }
            if all {
                found = true;
                break 'alts;
            }
        }
        self.path.pop();
        if found {
            self.cache.insert(s.clone(), true);
            (true, NO_CUT)
        } else if low >= depth {
            self.cache.insert(s.clone(), false);
            (false, NO_CUT)
        } else {
            (false, low)
        }
    }
}

fn is_axiom(s: &Sequent) -> bool {
    let members: Vec<&AnnotatedFormula> = s.members().collect();
    if let [a, b] = members.as_slice() {
        if a.formula == b.formula && a.side != b.side {
            return true;
        }
    }
    members.iter().any(|m| {
        (m.side == Side::L && matches!(m.formula.kind(), Kind::Zero))
            || (m.side == Side::R && matches!(m.formula.kind(), Kind::One))
    })
}

/// Each alternative is a list of premises that together derive `s`.
fn alternatives(s: &Sequent) -> Vec<Vec<Sequent>> {
    let members: Vec<&AnnotatedFormula> = s.members().collect();
    let mut out = Vec::new();
    for i in 0..members.len() {
        let other = if members.len() == 2 { Some(members[1 - i].clone()) } else { None };
        out.push(vec![Sequent::of(other, None)]);
    }
    for (i, m) in members.iter().enumerate() {
        let contexts: Vec<Option<&AnnotatedFormula>> = if members.len() == 2 {
            vec![Some(members[1 - i])]
        } else {
            vec![None, Some(*m)]
        };
        for ctx in contexts {
            let l = |f: &Formula| AnnotatedFormula::left(f.clone());
            let r = |f: &Formula| AnnotatedFormula::right(f.clone());
            match (m.formula.kind(), m.side) {
                (Kind::And(a, b), Side::L) => {
                    out.push(vec![seq(ctx, l(a))]);
                    out.push(vec![seq(ctx, l(b))]);
                }
                (Kind::Or(a, b), Side::R) => {
                    out.push(vec![seq(ctx, r(a))]);
                    out.push(vec![seq(ctx, r(b))]);
                }
                (Kind::And(a, b), Side::R) => out.push(vec![seq(ctx, r(a)), seq(ctx, r(b))]),
                (Kind::Or(a, b), Side::L) => out.push(vec![seq(ctx, l(a)), seq(ctx, l(b))]),
                (Kind::Not(a), Side::L) => out.push(vec![seq(ctx, r(a))]),
                (Kind::Not(a), Side::R) => out.push(vec![seq(ctx, l(a))]),
                _ => {}
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ol_core::parse_sequent;

    fn p(s: &str) -> bool {
        provable(&parse_sequent(s).unwrap().sequent())
    }

    #[test]
    fn known_cases() {
        assert!(p("x & y |- x"));
        assert!(p("x & !x |-"));
        assert!(p("1 |- x | !x"));
        assert!(p("!(x | y) |- !x & !y"));
        assert!(!p("x & (y | z) |- (x & y) | (x & z)"));
        assert!(!p("x | y |- x"));
        assert!(!p("|-"));
    }
}
