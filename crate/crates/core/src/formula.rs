//! Canonical formula terms.
//!
//! Formulas are immutable, reference counted trees. Binders are stored in
//! locally-nameless style: free variables carry names, bound occurrences are
//! de Bruijn indices counting enclosing binders. Every `And`/`Or` node keeps
//! its two children sorted by the canonical total order, so `x & y` and
//! `y & x` build the same term, and alpha-equivalent formulas are
//! structurally identical. Associativity and idempotence are not quotiented.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

/// A variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(name: &str) -> Self {
        Ident(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `[a-zA-Z_][a-zA-Z0-9_']*`, excluding the quantifier keywords.
    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
            && !is_reserved(name)
    }

    /// First name of the form `self`, `self'`, `self''`, ... not rejected by `taken`.
    pub fn freshen(&self, mut taken: impl FnMut(&str) -> bool) -> Ident {
        if !taken(self.as_str()) {
            return self.clone();
        }
        let mut name = String::from(self.as_str());
        loop {
            name.push('\'');
            if !taken(&name) {
                return Ident::new(&name);
            }
        }
    }
}

pub(crate) fn is_reserved(name: &str) -> bool {
    matches!(name, "forall" | "exists")
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// The shape of a formula node.
///
/// `Bound(i)` refers to the `i`-th enclosing binder and only ever occurs
/// inside a quantifier body. The binder `hint` is a printing aid and takes
/// no part in equality, ordering or hashing.
#[derive(Clone)]
pub enum Kind {
    Zero,
    One,
    Bound(u32),
    Var(Ident),
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Forall { hint: Ident, body: Formula },
    Exists { hint: Ident, body: Formula },
}

impl Kind {
    fn rank(&self) -> u8 {
        match self {
            Kind::Zero => 0,
            Kind::One => 1,
            Kind::Bound(_) => 2,
            Kind::Var(_) => 3,
            Kind::Not(_) => 4,
            Kind::And(..) => 5,
            Kind::Or(..) => 6,
            Kind::Forall { .. } => 7,
            Kind::Exists { .. } => 8,
        }
    }
}

struct Node {
    kind: Kind,
    hash: u64,
    size: usize,
    /// One more than the largest loose de Bruijn index; zero when closed.
    loose: u32,
    quantified: bool,
}

/// A canonical OL/QOL formula.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn mix(h: u64, v: u64) -> u64 {
    let mut x = (h ^ v).wrapping_mul(FNV_PRIME);
    x ^= x >> 29;
    x.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn hash_str(s: &str) -> u64 {
    s.bytes()
        .fold(FNV_OFFSET, |h, b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

impl Formula {
    fn mk(kind: Kind) -> Formula {
        let tag = kind.rank() as u64;
        let (hash, size, loose, quantified) = match &kind {
            Kind::Zero | Kind::One => (mix(FNV_OFFSET, tag), 1, 0, false),
            Kind::Bound(i) => (mix(mix(FNV_OFFSET, tag), *i as u64), 1, i + 1, false),
            Kind::Var(name) => (mix(mix(FNV_OFFSET, tag), hash_str(name.as_str())), 1, 0, false),
            Kind::Not(a) => (
                mix(mix(FNV_OFFSET, tag), a.0.hash),
                a.0.size + 1,
                a.0.loose,
                a.0.quantified,
            ),
            Kind::And(a, b) | Kind::Or(a, b) => (
                mix(mix(mix(FNV_OFFSET, tag), a.0.hash), b.0.hash),
                a.0.size + b.0.size + 1,
                a.0.loose.max(b.0.loose),
                a.0.quantified || b.0.quantified,
            ),
            Kind::Forall { body, .. } | Kind::Exists { body, .. } => (
                mix(mix(FNV_OFFSET, tag), body.0.hash),
                body.0.size + 1,
                body.0.loose.saturating_sub(1),
                true,
            ),
        };
        Formula(Arc::new(Node {
            kind,
            hash,
            size,
            loose,
            quantified,
        }))
    }

    pub fn zero() -> Formula {
        Formula::mk(Kind::Zero)
    }

    pub fn one() -> Formula {
        Formula::mk(Kind::One)
    }

    pub fn var(name: impl Into<Ident>) -> Formula {
        Formula::mk(Kind::Var(name.into()))
    }

    pub(crate) fn bound(index: u32) -> Formula {
        Formula::mk(Kind::Bound(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::mk(Kind::Not(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        let (l, r) = sorted(a, b);
        Formula::mk(Kind::And(l, r))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        let (l, r) = sorted(a, b);
        Formula::mk(Kind::Or(l, r))
    }

    /// `forall x. body`, binding the free occurrences of `x` in `body`.
    pub fn forall(x: &Ident, body: Formula) -> Formula {
        let body = body.abstract_var(x, 0);
        Formula::mk(Kind::Forall {
            hint: x.clone(),
            body,
        })
    }

    /// `exists x. body`, binding the free occurrences of `x` in `body`.
    pub fn exists(x: &Ident, body: Formula) -> Formula {
        let body = body.abstract_var(x, 0);
        Formula::mk(Kind::Exists {
            hint: x.clone(),
            body,
        })
    }

    pub fn quantify(q: Quantifier, x: &Ident, body: Formula) -> Formula {
        match q {
            Quantifier::Forall => Formula::forall(x, body),
            Quantifier::Exists => Formula::exists(x, body),
        }
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_quantifier_free(&self) -> bool {
        !self.0.quantified
    }

    /// True when the formula has no dangling de Bruijn index.
    pub fn is_closed_term(&self) -> bool {
        self.0.loose == 0
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_var(&self) -> Option<&Ident> {
        match self.kind() {
            Kind::Var(x) => Some(x),
            _ => None,
        }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<Ident>) {
        match self.kind() {
            Kind::Var(x) => {
                out.insert(x.clone());
            }
            Kind::Zero | Kind::One | Kind::Bound(_) => {}
            Kind::Not(a) => a.collect_free(out),
            Kind::And(a, b) | Kind::Or(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Kind::Forall { body, .. } | Kind::Exists { body, .. } => body.collect_free(out),
        }
    }

    pub fn has_free(&self, x: &Ident) -> bool {
        match self.kind() {
            Kind::Var(y) => y == x,
            Kind::Zero | Kind::One | Kind::Bound(_) => false,
            Kind::Not(a) => a.has_free(x),
            Kind::And(a, b) | Kind::Or(a, b) => a.has_free(x) || b.has_free(x),
            Kind::Forall { body, .. } | Kind::Exists { body, .. } => body.has_free(x),
        }
    }

    /// Capture-avoiding substitution `self[x := g]`.
    ///
    /// Bound occurrences are indices, so no renaming is ever needed; the
    /// result is re-canonicalized. Unchanged subterms are shared.
    pub fn substitute(&self, x: &Ident, g: &Formula) -> Formula {
        debug_assert!(g.is_closed_term());
        self.map_leaves(&mut |leaf, _| match leaf.kind() {
            Kind::Var(y) if y == x => Some(g.clone()),
            _ => None,
        })
    }

    /// Replaces the binder of a quantifier body with `g`.
    pub(crate) fn instantiate(&self, g: &Formula) -> Formula {
        debug_assert!(g.is_closed_term());
        self.map_leaves(&mut |leaf, depth| match leaf.kind() {
            Kind::Bound(i) if *i == depth => Some(g.clone()),
            _ => None,
        })
    }

    fn abstract_var(&self, x: &Ident, depth: u32) -> Formula {
        self.map_leaves_from(depth, &mut |leaf, d| match leaf.kind() {
            Kind::Var(y) if y == x => Some(Formula::bound(d)),
            _ => None,
        })
    }

    fn map_leaves(&self, f: &mut impl FnMut(&Formula, u32) -> Option<Formula>) -> Formula {
        self.map_leaves_from(0, f)
    }

    fn map_leaves_from(
        &self,
        depth: u32,
        f: &mut impl FnMut(&Formula, u32) -> Option<Formula>,
    ) -> Formula {
        match self.kind() {
            Kind::Zero | Kind::One | Kind::Bound(_) | Kind::Var(_) => {
                f(self, depth).unwrap_or_else(|| self.clone())
            }
            Kind::Not(a) => {
                let na = a.map_leaves_from(depth, f);
                if na.ptr_eq(a) {
                    self.clone()
                } else {
                    Formula::not(na)
                }
            }
            Kind::And(a, b) | Kind::Or(a, b) => {
                let na = a.map_leaves_from(depth, f);
                let nb = b.map_leaves_from(depth, f);
                if na.ptr_eq(a) && nb.ptr_eq(b) {
                    self.clone()
                } else if matches!(self.kind(), Kind::And(..)) {
                    Formula::and(na, nb)
                } else {
                    Formula::or(na, nb)
                }
            }
            Kind::Forall { hint, body } | Kind::Exists { hint, body } => {
                let nbody = body.map_leaves_from(depth + 1, f);
                if nbody.ptr_eq(body) {
                    self.clone()
                } else if matches!(self.kind(), Kind::Forall { .. }) {
                    Formula::mk(Kind::Forall {
                        hint: hint.clone(),
                        body: nbody,
                    })
                } else {
                    Formula::mk(Kind::Exists {
                        hint: hint.clone(),
                        body: nbody,
                    })
                }
            }
        }
    }

    /// For a quantifier node: the quantifier, a binder name that does not
    /// clash with the formula's free variables, and the body opened with that
    /// name.
    pub fn open_named(&self) -> Option<(Quantifier, Ident, Formula)> {
        let (q, hint, body) = match self.kind() {
            Kind::Forall { hint, body } => (Quantifier::Forall, hint, body),
            Kind::Exists { hint, body } => (Quantifier::Exists, hint, body),
            _ => return None,
        };
        let free = self.free_vars();
        let name = hint.freshen(|n| free.iter().any(|v| v.as_str() == n));
        let opened = body.instantiate(&Formula::var(name.clone()));
        Some((q, name, opened))
    }

    /// For a quantifier node: its body with the bound variable replaced by `g`.
    pub fn open_with(&self, g: &Formula) -> Option<Formula> {
        match self.kind() {
            Kind::Forall { body, .. } | Kind::Exists { body, .. } => Some(body.instantiate(g)),
            _ => None,
        }
    }

    /// Immediate subformulas. Quantifier bodies are opened with a
    /// non-clashing variable name.
    pub fn children(&self) -> Vec<Formula> {
        match self.kind() {
            Kind::Zero | Kind::One | Kind::Bound(_) | Kind::Var(_) => Vec::new(),
            Kind::Not(a) => alloc::vec![a.clone()],
            Kind::And(a, b) | Kind::Or(a, b) => alloc::vec![a.clone(), b.clone()],
            Kind::Forall { .. } | Kind::Exists { .. } => {
                let (_, _, body) = self.open_named().expect("quantifier");
                alloc::vec![body]
            }
        }
    }
}

fn sorted(a: Formula, b: Formula) -> (Formula, Formula) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn compare(a: &Formula, b: &Formula) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    let (ka, kb) = (a.kind(), b.kind());
    match ka.rank().cmp(&kb.rank()) {
        Ordering::Equal => {}
        other => return other,
    }
    match (ka, kb) {
        (Kind::Bound(i), Kind::Bound(j)) => i.cmp(j),
        (Kind::Var(x), Kind::Var(y)) => x.cmp(y),
        (Kind::Not(x), Kind::Not(y)) => compare(x, y),
        (Kind::And(a1, b1), Kind::And(a2, b2)) | (Kind::Or(a1, b1), Kind::Or(a2, b2)) => {
            compare(a1, a2).then_with(|| compare(b1, b2))
        }
        (Kind::Forall { body: x, .. }, Kind::Forall { body: y, .. })
        | (Kind::Exists { body: x, .. }, Kind::Exists { body: y, .. }) => compare(x, y),
        _ => Ordering::Equal,
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        self.ptr_eq(other)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && compare(self, other) == Ordering::Equal)
    }
}

impl Eq for Formula {}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Formula) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Formula) -> Ordering {
        compare(self, other)
    }
}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self)
    }
}

/// A formula tree with named binders and operands in input order, before
/// canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawFormula {
    Var(String),
    Zero,
    One,
    Not(Box<RawFormula>),
    And(Box<RawFormula>, Box<RawFormula>),
    Or(Box<RawFormula>, Box<RawFormula>),
    Forall(String, Box<RawFormula>),
    Exists(String, Box<RawFormula>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaError {
    InvalidIdentifier(String),
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::InvalidIdentifier(name) => {
                write!(f, "`{}` is not a valid variable name", name)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FormulaError {}

impl RawFormula {
    pub fn canonicalize(&self) -> Result<Formula, FormulaError> {
        let mut scope = Vec::new();
        self.build(&mut scope)
    }

    fn build<'a>(&'a self, scope: &mut Vec<&'a str>) -> Result<Formula, FormulaError> {
        Ok(match self {
            RawFormula::Var(name) => {
                check_ident(name)?;
                match scope.iter().rev().position(|b| b == name) {
                    Some(depth) => Formula::bound(depth as u32),
                    None => Formula::var(Ident::new(name)),
                }
            }
            RawFormula::Zero => Formula::zero(),
            RawFormula::One => Formula::one(),
            RawFormula::Not(a) => Formula::not(a.build(scope)?),
            RawFormula::And(a, b) => Formula::and(a.build(scope)?, b.build(scope)?),
            RawFormula::Or(a, b) => Formula::or(a.build(scope)?, b.build(scope)?),
            RawFormula::Forall(x, body) | RawFormula::Exists(x, body) => {
                check_ident(x)?;
                scope.push(x);
                let body = body.build(scope);
                scope.pop();
                let kind = if matches!(self, RawFormula::Forall(..)) {
                    Kind::Forall {
                        hint: Ident::new(x),
                        body: body?,
                    }
                } else {
                    Kind::Exists {
                        hint: Ident::new(x),
                        body: body?,
                    }
                };
                Formula::mk(kind)
            }
        })
    }
}

fn check_ident(name: &str) -> Result<(), FormulaError> {
    if Ident::is_valid(name) {
        Ok(())
    } else {
        Err(FormulaError::InvalidIdentifier(String::from(name)))
    }
}

/// `canonicalize` as a free function.
pub fn canonicalize(raw: &RawFormula) -> Result<Formula, FormulaError> {
    raw.canonicalize()
}

/// Least set containing `seed` and closed under immediate subformulas.
pub fn subformula_closure<'a>(seed: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Formula> = seed.into_iter().cloned().collect();
    while let Some(f) = stack.pop() {
        if out.contains(&f) {
            continue;
        }
        stack.extend(f.children());
        out.insert(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn commutativity_is_quotiented() {
        assert_eq!(p("x & y"), p("y & x"));
        assert_eq!(p("x | !y"), p("!y | x"));
    }

    #[test]
    fn alpha_equivalence() {
        assert_eq!(p("exists x. x"), p("exists z. z"));
        assert_eq!(p("forall a. forall b. a & b"), p("forall b. forall a. b & a"));
        assert_ne!(p("forall a. forall b. a"), p("forall a. forall b. b"));
    }

    #[test]
    fn associativity_is_not_quotiented() {
        assert_ne!(p("(x & y) & z"), p("x & (y & z)"));
    }

    #[test]
    fn free_vars_examples() {
        let fv = p("exists x. !x & (y | x)").free_vars();
        assert_eq!(fv.into_iter().collect::<Vec<_>>(), alloc::vec![Ident::new("y")]);
        assert!(p("0").free_vars().is_empty());
        let fv = p("x & forall x. x").free_vars();
        assert_eq!(fv.into_iter().collect::<Vec<_>>(), alloc::vec![Ident::new("x")]);
    }

    #[test]
    fn substitution_examples() {
        let x = Ident::new("x");
        assert_eq!(p("x | y").substitute(&x, &p("!z")), p("!z | y"));
        let captured = p("forall y. x | y").substitute(&x, &p("y"));
        assert_eq!(captured, p("forall w. y | w"));
        assert_eq!(crate::syntax::print_formula(&captured), "forall y'. y | y'");
        assert_eq!(p("forall x. x").substitute(&x, &p("1")), p("forall x. x"));
    }

    #[test]
    fn closure_examples() {
        let c = subformula_closure([&p("x & y")]);
        assert_eq!(c, [p("x & y"), p("x"), p("y")].into_iter().collect());
        let c = subformula_closure([&p("!(x | y)")]);
        assert_eq!(c.len(), 4);
        let c = subformula_closure([&p("exists x. !x")]);
        assert_eq!(c, [p("exists x. !x"), p("!x"), p("x")].into_iter().collect());
    }

    #[test]
    fn canonicalize_rejects_bad_names() {
        let raw = RawFormula::Var(String::from("forall"));
        assert!(raw.canonicalize().is_err());
        let raw = RawFormula::Forall(String::from("9"), Box::new(RawFormula::Zero));
        assert!(raw.canonicalize().is_err());
    }

    #[test]
    fn canonicalize_is_idempotent_on_printed_form() {
        let f = p("forall x. (y & x) | !(x & 0)");
        let again = p(&crate::syntax::print_formula(&f));
        assert_eq!(f, again);
    }
}
