//! Annotated formulas and two-element sequents.

use alloc::collections::BTreeSet;
use core::fmt;

use crate::formula::{Formula, Ident};

/// Which side of the turnstile an annotated formula sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedFormula {
    pub formula: Formula,
    pub side: Side,
}

impl AnnotatedFormula {
    pub fn new(formula: Formula, side: Side) -> Self {
        AnnotatedFormula { formula, side }
    }

    pub fn left(formula: Formula) -> Self {
        AnnotatedFormula::new(formula, Side::L)
    }

    pub fn right(formula: Formula) -> Self {
        AnnotatedFormula::new(formula, Side::R)
    }
}

impl fmt::Display for AnnotatedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::L => write!(f, "{} |-", self.formula),
            Side::R => write!(f, "|- {}", self.formula),
        }
    }
}

/// A set of at most two annotated formulas.
///
/// Members are kept sorted and deduplicated, so equal sets compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    first: Option<AnnotatedFormula>,
    second: Option<AnnotatedFormula>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TooManyMembers;

impl fmt::Display for TooManyMembers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a sequent holds at most two annotated formulas")
    }
}

impl Sequent {
    pub fn empty() -> Sequent {
        Sequent::default()
    }

    pub fn single(a: AnnotatedFormula) -> Sequent {
        Sequent {
            first: Some(a),
            second: None,
        }
    }

    /// `{a, b}`; collapses to a singleton when `a == b`.
    pub fn pair(a: AnnotatedFormula, b: AnnotatedFormula) -> Sequent {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Sequent {
                first: Some(a),
                second: Some(b),
            },
            core::cmp::Ordering::Equal => Sequent::single(a),
            core::cmp::Ordering::Greater => Sequent {
                first: Some(b),
                second: Some(a),
            },
        }
    }

    /// `{a, b}` with either part possibly absent.
    pub fn of(a: Option<AnnotatedFormula>, b: Option<AnnotatedFormula>) -> Sequent {
        match (a, b) {
            (None, None) => Sequent::empty(),
            (Some(a), None) | (None, Some(a)) => Sequent::single(a),
            (Some(a), Some(b)) => Sequent::pair(a, b),
        }
    }

    /// `φ^L, ψ^R`, the sequent read as `φ ⊢ ψ`.
    pub fn entails(lhs: Formula, rhs: Formula) -> Sequent {
        Sequent::pair(AnnotatedFormula::left(lhs), AnnotatedFormula::right(rhs))
    }

    pub fn from_members(
        members: impl IntoIterator<Item = AnnotatedFormula>,
    ) -> Result<Sequent, TooManyMembers> {
        let set: BTreeSet<AnnotatedFormula> = members.into_iter().collect();
        if set.len() > 2 {
            return Err(TooManyMembers);
        }
        let mut it = set.into_iter();
        Ok(Sequent {
            first: it.next(),
            second: it.next(),
        })
    }

    pub fn len(&self) -> usize {
        self.first.is_some() as usize + self.second.is_some() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_none()
    }

    pub fn members(&self) -> impl Iterator<Item = &AnnotatedFormula> + Clone {
        self.first.iter().chain(self.second.iter())
    }

    pub fn first(&self) -> Option<&AnnotatedFormula> {
        self.first.as_ref()
    }

    pub fn second(&self) -> Option<&AnnotatedFormula> {
        self.second.as_ref()
    }

    pub fn contains(&self, a: &AnnotatedFormula) -> bool {
        self.members().any(|m| m == a)
    }

    /// `self ∪ {a}`, or `None` if that would exceed two members.
    pub fn with(&self, a: &AnnotatedFormula) -> Option<Sequent> {
        if self.contains(a) {
            return Some(self.clone());
        }
        match (&self.first, &self.second) {
            (None, _) => Some(Sequent::single(a.clone())),
            (Some(x), None) => Some(Sequent::pair(x.clone(), a.clone())),
            _ => None,
        }
    }

    /// The member other than `a`, when `a` is one of the members.
    pub fn other_than(&self, a: &AnnotatedFormula) -> Option<Option<&AnnotatedFormula>> {
        match (&self.first, &self.second) {
            (Some(x), Some(y)) if x == a => Some(Some(y)),
            (Some(x), Some(y)) if y == a => Some(Some(x)),
            (Some(x), None) if x == a => Some(None),
            _ => None,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> + Clone {
        self.members().map(|m| &m.formula)
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_free(&mut out);
        }
        out
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.formulas().all(Formula::is_quantifier_free)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_sequent(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn l(s: &str) -> AnnotatedFormula {
        AnnotatedFormula::left(parse_formula(s).unwrap())
    }
    fn r(s: &str) -> AnnotatedFormula {
        AnnotatedFormula::right(parse_formula(s).unwrap())
    }

    #[test]
    fn duplicates_collapse() {
        let s = Sequent::pair(l("x & y"), l("y & x"));
        assert_eq!(s.len(), 1);
        assert_eq!(Sequent::pair(l("x"), r("x")), Sequent::pair(r("x"), l("x")));
    }

    #[test]
    fn three_members_rejected() {
        assert_eq!(
            Sequent::from_members([l("a"), r("b"), r("c")]),
            Err(TooManyMembers)
        );
        assert_eq!(Sequent::from_members([l("a"), l("a"), r("c")]).unwrap().len(), 2);
    }

    #[test]
    fn with_respects_cap() {
        let s = Sequent::pair(l("a"), r("b"));
        assert!(s.with(&r("c")).is_none());
        assert_eq!(s.with(&r("b")), Some(s.clone()));
        assert_eq!(Sequent::empty().with(&r("c")), Some(Sequent::single(r("c"))));
    }
}
