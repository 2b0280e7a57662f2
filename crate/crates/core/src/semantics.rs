//! Finite ortholattices and evaluation of formulas and sequents in them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Formula, Ident, Kind};
use crate::sequent::{Sequent, Side};

/// Index of an element of a lattice.
pub type Element = usize;

/// A lattice as given by the user: element names, covering pairs
/// `(lower, upper)` and the complement map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeCandidate {
    pub elements: Vec<String>,
    pub hasse: Vec<(String, String)>,
    pub comp: BTreeMap<String, String>,
    pub zero: String,
    pub one: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Antisymmetry,
    /// `0 ≤ x`
    P3,
    /// `x ≤ 1`
    P3Prime,
    /// A pair without a greatest lower bound.
    Meet,
    /// A pair without a least upper bound.
    Join,
    /// `¬¬x = x`
    V6,
    /// `x ≤ y ⟹ ¬y ≤ ¬x`
    P8,
    /// `x ∨ ¬x = 1`
    V7,
    /// `x ∧ ¬x = 0`
    V7Prime,
    /// `¬(x ∨ y) = ¬x ∧ ¬y`
    V8,
    /// `¬(x ∧ y) = ¬x ∨ ¬y`
    V8Prime,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::P3 => "P3",
            Axiom::P3Prime => "P3'",
            Axiom::Meet => "P4-P6 (meet)",
            Axiom::Join => "P5'-P6' (join)",
            Axiom::V6 => "V6",
            Axiom::P8 => "P8",
            Axiom::V7 => "V7",
            Axiom::V7Prime => "V7'",
            Axiom::V8 => "V8",
            Axiom::V8Prime => "V8'",
        }
    }
}

/// The first violated axiom and the elements witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} violated at {}", self.axiom.label(), self.witnesses.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    Malformed(String),
    Violation(Violation),
    UnknownBuiltin(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Malformed(m) => write!(f, "malformed lattice: {}", m),
            LatticeError::Violation(v) => write!(f, "not an ortholattice: {}", v),
            LatticeError::UnknownBuiltin(n) => write!(f, "unknown built-in lattice `{}` (expected b2, m2, m4 or mo<n>)", n),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LatticeError {}

/// A validated finite ortholattice with precomputed tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrtholattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Element>,
    join: Vec<Element>,
    comp: Vec<Element>,
    zero: Element,
    one: Element,
}

impl FiniteOrtholattice {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<Element> {
        0..self.names.len()
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        self.join[a * self.len() + b]
    }

    pub fn comp(&self, a: Element) -> Element {
        self.comp[a]
    }

    /// Covering pairs `(lower, upper)` of the order.
    pub fn hasse(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b
                    && self.leq(a, b)
                    && !self.elements().any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The candidate this lattice is loaded from.
    pub fn to_candidate(&self) -> LatticeCandidate {
        LatticeCandidate {
            elements: self.names.clone(),
            hasse: self
                .hasse()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
            comp: self
                .elements()
                .map(|e| (self.names[e].clone(), self.names[self.comp(e)].clone()))
                .collect(),
            zero: self.names[self.zero].clone(),
            one: self.names[self.one].clone(),
        }
    }

    /// Re-checks every ortholattice law against the tables.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.len();
        let els = self.elements();
        let v = |axiom, w: &[Element]| Violation {
            axiom,
            witnesses: w.iter().map(|&e| self.names[e].clone()).collect(),
        };
        for a in els.clone() {
            for b in els.clone() {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(v(Axiom::Antisymmetry, &[a, b]));
                }
            }
        }
        for x in els.clone() {
            if !self.leq(self.zero, x) {
                return Err(v(Axiom::P3, &[x]));
            }
            if !self.leq(x, self.one) {
                return Err(v(Axiom::P3Prime, &[x]));
            }
        }
        for a in els.clone() {
            for b in els.clone() {
                let m = self.meet(a, b);
                let glb = self.leq(m, a) && self.leq(m, b) && els.clone().all(|c| !(self.leq(c, a) && self.leq(c, b)) || self.leq(c, m));
                if !glb {
                    return Err(v(Axiom::Meet, &[a, b]));
                }
                let j = self.join(a, b);
                let lub = self.leq(a, j) && self.leq(b, j) && els.clone().all(|c| !(self.leq(a, c) && self.leq(b, c)) || self.leq(j, c));
                if !lub {
                    return Err(v(Axiom::Join, &[a, b]));
                }
            }
        }
        for x in els.clone() {
            if self.comp(self.comp(x)) != x {
                return Err(v(Axiom::V6, &[x]));
            }
        }
        for x in els.clone() {
            for y in els.clone() {
                if self.leq(x, y) && !self.leq(self.comp(y), self.comp(x)) {
                    return Err(v(Axiom::P8, &[x, y]));
                }
            }
        }
        for x in els.clone() {
            if self.meet(x, self.comp(x)) != self.zero {
                return Err(v(Axiom::V7Prime, &[x]));
            }
            if self.join(x, self.comp(x)) != self.one {
                return Err(v(Axiom::V7, &[x]));
            }
        }
        for x in els.clone() {
            for y in els.clone() {
                if self.comp(self.join(x, y)) != self.meet(self.comp(x), self.comp(y)) {
                    return Err(v(Axiom::V8, &[x, y]));
                }
                if self.comp(self.meet(x, y)) != self.join(self.comp(x), self.comp(y)) {
                    return Err(v(Axiom::V8Prime, &[x, y]));
                }
            }
        }
        debug_assert!(n > 0);
        Ok(())
    }
}

/// Builds the order from the covering pairs, computes meets and joins and
/// checks the ortholattice laws.
pub fn validate_ortholattice(c: &LatticeCandidate) -> Result<FiniteOrtholattice, LatticeError> {
    let n = c.elements.len();
    if n == 0 {
        return Err(LatticeError::Malformed("no elements".to_string()));
    }
    let mut index = BTreeMap::new();
    for (i, name) in c.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::Malformed(format!("duplicate element `{}`", name)));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::Malformed(format!("unknown element `{}`", name)))
    };
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (lo, hi) in &c.hasse {
        let (a, b) = (lookup(lo)?, lookup(hi)?);
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    for (x, y) in &c.comp {
        comp[lookup(x)?] = lookup(y)?;
    }
    if let Some(i) = comp.iter().position(|&e| e == usize::MAX) {
        return Err(LatticeError::Malformed(format!("no complement given for `{}`", c.elements[i])));
    }
    let zero = lookup(&c.zero)?;
    let one = lookup(&c.one)?;
    let le = |a: usize, b: usize| leq[a * n + b];
    let name = |e: usize| c.elements[e].clone();
    for a in 0..n {
        for b in 0..n {
            if a != b && le(a, b) && le(b, a) {
                return Err(LatticeError::Violation(Violation {
                    axiom: Axiom::Antisymmetry,
                    witnesses: vec![name(a), name(b)],
                }));
            }
        }
    }
    for x in 0..n {
        if !le(zero, x) {
            return Err(LatticeError::Violation(Violation { axiom: Axiom::P3, witnesses: vec![name(x)] }));
        }
        if !le(x, one) {
            return Err(LatticeError::Violation(Violation { axiom: Axiom::P3Prime, witnesses: vec![name(x)] }));
        }
    }
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
            let glb = lower.iter().copied().find(|&m| lower.iter().all(|&c| le(c, m)));
            let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
            let lub = upper.iter().copied().find(|&j| upper.iter().all(|&c| le(j, c)));
            match (glb, lub) {
                (Some(m), Some(j)) => {
                    meet[a * n + b] = m;
                    join[a * n + b] = j;
                }
                (None, _) => {
                    return Err(LatticeError::Violation(Violation { axiom: Axiom::Meet, witnesses: vec![name(a), name(b)] }))
                }
                (_, None) => {
                    return Err(LatticeError::Violation(Violation { axiom: Axiom::Join, witnesses: vec![name(a), name(b)] }))
                }
            }
        }
    }
    let lattice = FiniteOrtholattice {
        names: c.elements.clone(),
        leq,
        meet,
        join,
        comp,
        zero,
        one,
    };
    lattice.validate().map_err(LatticeError::Violation)?;
    Ok(lattice)
}

/// `MO(n)`: `0`, `1` and `n` complementary pairs of incomparable atoms.
pub fn mo(n: usize) -> FiniteOrtholattice {
    let mut c = LatticeCandidate {
        elements: vec!["0".to_string(), "1".to_string()],
        zero: "0".to_string(),
        one: "1".to_string(),
        ..LatticeCandidate::default()
    };
    c.comp.insert("0".to_string(), "1".to_string());
    c.comp.insert("1".to_string(), "0".to_string());
    for i in 0..n {
        let atom = atom_name(i);
        let neg = format!("!{}", atom);
        for e in [&atom, &neg] {
            c.elements.push(e.clone());
            c.hasse.push(("0".to_string(), e.clone()));
            c.hasse.push((e.clone(), "1".to_string()));
        }
        c.comp.insert(atom.clone(), neg.clone());
        c.comp.insert(neg, atom);
    }
    if n == 0 {
        c.hasse.push(("0".to_string(), "1".to_string()));
    }
    validate_ortholattice(&c).expect("MO(n) is an ortholattice")
}

fn atom_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{}", i)
    }
}

/// The two-element Boolean algebra.
pub fn b2() -> FiniteOrtholattice {
    mo(0)
}

/// Built-in lattices by name: `b2`, `m2` (= `mo1`), `m4` (= `mo2`), `mo<n>`
/// or `mo(<n>)` for `n ≥ 1`. Case-insensitive.
pub fn builtin(name: &str) -> Result<FiniteOrtholattice, LatticeError> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "b2" => return Ok(b2()),
        "m2" => return Ok(mo(1)),
        "m4" => return Ok(mo(2)),
        _ => {}
    }
    let digits = lower
        .strip_prefix("mo")
        .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'));
    match digits.and_then(|d| d.parse::<usize>().ok()) {
        Some(n) if n >= 1 => Ok(mo(n)),
        _ => Err(LatticeError::UnknownBuiltin(name.to_string())),
    }
}

/// Values of free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Ident, Element>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, x: Ident, e: Element) {
        self.0.insert(x, e);
    }

    pub fn with(mut self, x: impl Into<Ident>, e: Element) -> Assignment {
        self.set(x.into(), e);
        self
    }

    pub fn get(&self, x: &Ident) -> Option<Element> {
        self.0.get(x).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, Element)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    /// `x=e` pairs, comma separated, with element names from `l`.
    pub fn display(&self, l: &FiniteOrtholattice) -> String {
        let parts: Vec<String> = self.iter().map(|(x, e)| format!("{}={}", x, l.name(e))).collect();
        parts.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Unassigned(Ident),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Unassigned(x) => write!(f, "no value assigned to free variable `{}`", x),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

/// The value of `f`; quantifiers range over every element.
pub fn eval_formula(l: &FiniteOrtholattice, sigma: &Assignment, f: &Formula) -> Result<Element, EvalError> {
    let mut bound = Vec::new();
    eval(l, sigma, f, &mut bound)
}

fn eval(l: &FiniteOrtholattice, sigma: &Assignment, f: &Formula, bound: &mut Vec<Element>) -> Result<Element, EvalError> {
    Ok(match f.kind() {
        Kind::Zero => l.zero(),
        Kind::One => l.one(),
        Kind::Bound(i) => bound[bound.len() - 1 - *i as usize],
        Kind::Var(x) => sigma.get(x).ok_or_else(|| EvalError::Unassigned(x.clone()))?,
        Kind::Not(a) => l.comp(eval(l, sigma, a, bound)?),
        Kind::And(a, b) => {
            let x = eval(l, sigma, a, bound)?;
            l.meet(x, eval(l, sigma, b, bound)?)
        }
        Kind::Or(a, b) => {
            let x = eval(l, sigma, a, bound)?;
            l.join(x, eval(l, sigma, b, bound)?)
        }
        Kind::Forall { body, .. } => {
            let mut acc = l.one();
            for e in l.elements() {
                bound.push(e);
                let v = eval(l, sigma, body, bound);
                bound.pop();
                acc = l.meet(acc, v?);
            }
            acc
        }
        Kind::Exists { body, .. } => {
            let mut acc = l.zero();
            for e in l.elements() {
                bound.push(e);
                let v = eval(l, sigma, body, bound);
                bound.pop();
                acc = l.join(acc, v?);
            }
            acc
        }
    })
}

/// Truth of a sequent under `sigma`.
pub fn eval_sequent(l: &FiniteOrtholattice, sigma: &Assignment, s: &Sequent) -> Result<bool, EvalError> {
    let members: Vec<(Element, Side)> = s
        .members()
        .map(|m| Ok((eval_formula(l, sigma, &m.formula)?, m.side)))
        .collect::<Result<_, EvalError>>()?;
    Ok(match members.as_slice() {
        [] => l.leq(l.one(), l.zero()),
        [(a, Side::L)] => l.leq(*a, l.zero()),
        [(a, Side::R)] => l.leq(l.one(), *a),
        [(a, Side::L), (b, Side::R)] | [(b, Side::R), (a, Side::L)] => l.leq(*a, *b),
        [(a, Side::L), (b, Side::L)] => l.leq(*a, l.comp(*b)),
        [(a, Side::R), (b, Side::R)] => l.leq(l.comp(*a), *b),
        _ => unreachable!("sequents have at most two members"),
    })
}

/// An assignment of the free variables of `s` that makes it false, if any.
pub fn falsify(l: &FiniteOrtholattice, s: &Sequent) -> Option<Assignment> {
    let vars: Vec<Ident> = s.free_vars().into_iter().collect();
    let mut digits = vec![0usize; vars.len()];
    loop {
        let mut sigma = Assignment::new();
        for (x, &e) in vars.iter().zip(&digits) {
            sigma.set(x.clone(), e);
        }
        if !eval_sequent(l, &sigma, s).expect("all free variables assigned") {
            return Some(sigma);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] < l.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeError {
    TooManyVariables(BTreeSet<Ident>),
    Quantified,
}

impl fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizeError::TooManyVariables(vs) => {
                let names: Vec<&str> = vs.iter().map(Ident::as_str).collect();
                write!(f, "expected at most one free variable, found {}", names.join(", "))
            }
            NormalizeError::Quantified => f.write_str("formula contains quantifiers"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NormalizeError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Single {
    Zero,
    One,
    Y,
    NotY,
}

impl Single {
    fn not(self) -> Single {
        match self {
            Single::Zero => Single::One,
            Single::One => Single::Zero,
            Single::Y => Single::NotY,
            Single::NotY => Single::Y,
        }
    }

    fn and(self, other: Single) -> Single {
        match (self, other) {
            (Single::Zero, _) | (_, Single::Zero) => Single::Zero,
            (Single::One, x) | (x, Single::One) => x,
            (a, b) if a == b => a,
            _ => Single::Zero,
        }
    }

    fn or(self, other: Single) -> Single {
        self.not().and(other.not()).not()
    }
}

/// Reduces a quantifier-free formula over at most one variable to one of
/// `0`, `1`, `y`, `!y`.
pub fn normalize_single_var(f: &Formula) -> Result<Formula, NormalizeError> {
    if !f.is_quantifier_free() {
        return Err(NormalizeError::Quantified);
    }
    let vars = f.free_vars();
    if vars.len() > 1 {
        return Err(NormalizeError::TooManyVariables(vars));
    }
    fn go(f: &Formula) -> Single {
        match f.kind() {
            Kind::Zero => Single::Zero,
            Kind::One => Single::One,
            Kind::Var(_) => Single::Y,
            Kind::Not(a) => go(a).not(),
            Kind::And(a, b) => go(a).and(go(b)),
            Kind::Or(a, b) => go(a).or(go(b)),
            Kind::Bound(_) | Kind::Forall { .. } | Kind::Exists { .. } => unreachable!("quantifier-free"),
        }
    }
    let var = || Formula::var(vars.iter().next().expect("variable present").clone());
    Ok(match go(f) {
        Single::Zero => Formula::zero(),
        Single::One => Formula::one(),
        Single::Y => var(),
        Single::NotY => Formula::not(var()),
    })
}
