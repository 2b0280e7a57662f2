//! Forward saturation prover.
//!
//! The search space is every sequent of at most two annotated formulas drawn
//! from the subformula closure of the goal and the axioms. Starting from the
//! leaf instances (`Hyp`, constant leaves, axioms), rules are applied forward
//! until nothing new is derivable. Cuts are only tried on formulas from the
//! closure of the axioms, so axiom-free runs are cut-free.
//!
//! Sequents are encoded as pairs of annotated-formula ids `2 * i + side`,
//! sorted, with `NONE` marking an absent member.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use hashbrown::{HashMap, HashSet};

use crate::formula::{subformula_closure, Formula, Ident, Kind, Quantifier};
use crate::proof::{ProofStep, Rule};
use crate::sequent::{AnnotatedFormula, Sequent, Side};

const NONE: u32 = u32::MAX;

type Key = (u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProverStats {
    /// Distinct sequents the search touched: derived ones plus premises
    /// that were looked up and found missing.
    pub states_enumerated: u64,
    pub states_derived: u64,
    pub rule_applications: u64,
    /// Size of the subformula closure the space is built from.
    pub closure_size: u64,
    /// Zero when built without `std`.
    pub elapsed: Duration,
}

impl ProverStats {
    /// `(2s + 1)^2` for the closure size `s`.
    pub fn state_bound(&self) -> u64 {
        let t = 2 * self.closure_size + 1;
        t * t
    }
}

#[derive(Clone, Debug)]
pub enum ProverOutcome {
    Proved { proof: ProofStep, stats: ProverStats },
    NotProvable(ProverStats),
    Unsupported(String),
}

impl ProverOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProverOutcome::Proved { .. })
    }

    pub fn proof(&self) -> Option<&ProofStep> {
        match self {
            ProverOutcome::Proved { proof, .. } => Some(proof),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<&ProverStats> {
        match self {
            ProverOutcome::Proved { stats, .. } | ProverOutcome::NotProvable(stats) => Some(stats),
            ProverOutcome::Unsupported(_) => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProverConfig {
    /// Accept quantified input and try instantiation with witnesses from the
    /// quantifier-free part of the space. Incomplete: a failed search is
    /// reported as `Unsupported`, never `NotProvable`.
    pub quantifier_heuristic: bool,
}

pub fn prove(goal: &Sequent, axioms: &[Sequent]) -> ProverOutcome {
    prove_with(goal, axioms, &ProverConfig::default())
}

/// `prove` on `A^L, B^R`.
pub fn decide_leq(a: &Formula, b: &Formula, axioms: &[Sequent]) -> ProverOutcome {
    prove(&Sequent::entails(a.clone(), b.clone()), axioms)
}

/// Proofs of `A ⊢ B` and `B ⊢ A`, when both exist.
pub fn mutually_provable(a: &Formula, b: &Formula) -> Option<(ProofStep, ProofStep)> {
    let ab = decide_leq(a, b, &[]).proof()?.clone();
    let ba = decide_leq(b, a, &[]).proof()?.clone();
    Some((ab, ba))
}

pub fn prove_with(goal: &Sequent, axioms: &[Sequent], config: &ProverConfig) -> ProverOutcome {
    let quantified = !goal.is_quantifier_free() || axioms.iter().any(|a| !a.is_quantifier_free());
    if quantified && !config.quantifier_heuristic {
        return ProverOutcome::Unsupported(String::from(
            "quantified input; enable the quantifier heuristic to search anyway",
        ));
    }
    let start = Clock::now();
    let mut sat = Saturation::new(goal, axioms, quantified);
    sat.run(axioms);
    let goal_key = sat.key_of(goal);
    let mut stats = sat.stats();
    stats.elapsed = start.elapsed();
    match sat.derived.get(&goal_key) {
        Some(&index) => ProverOutcome::Proved {
            proof: sat.extract(index, axioms),
            stats,
        },
        None if quantified => ProverOutcome::Unsupported(String::from(
            "quantified goal not reached by the heuristic search",
        )),
        None => ProverOutcome::NotProvable(stats),
    }
}

#[cfg(feature = "std")]
struct Clock(std::time::Instant);

#[cfg(feature = "std")]
impl Clock {
    fn now() -> Clock {
        Clock(std::time::Instant::now())
    }
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

#[cfg(not(feature = "std"))]
struct Clock;

#[cfg(not(feature = "std"))]
impl Clock {
    fn now() -> Clock {
        Clock
    }
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Clone, Copy)]
enum Link {
    NotOf,
    AndWith(u32),
    OrWith(u32),
    /// Instance of a quantified formula, with the witness or eigenvariable.
    Instance(Inst),
}

#[derive(Clone, Copy)]
enum Inst {
    Witness(u32),
    Eigen,
}

#[derive(Clone, Copy)]
enum Just {
    Hyp(u32),
    Zero(u32),
    One(u32),
    Axiom(u32),
    Weaken { premise: u32, added: u32 },
    LeftAnd { premise: u32, kept: u32, dropped: u32 },
    RightOr { premise: u32, kept: u32, dropped: u32 },
    LeftNot { premise: u32, inner: u32 },
    RightNot { premise: u32, inner: u32 },
    RightAnd { premises: [u32; 2], parts: [u32; 2] },
    LeftOr { premises: [u32; 2], parts: [u32; 2] },
    Cut { premises: [u32; 2], formula: u32 },
    Quant { premise: u32, quantified: u32, inst: Inst },
}

struct Saturation {
    formulas: Vec<Formula>,
    index: BTreeMap<Formula, u32>,
    /// For each formula, the formulas it is an immediate part of.
    parents: Vec<Vec<(u32, Link)>>,
    cuttable: Vec<bool>,
    /// Free variables per formula, only filled for eigenvariable checks.
    free: Vec<BTreeSet<Ident>>,
    /// Eigenvariable used to open each quantified formula.
    eigen: Vec<Option<Ident>>,
    derived: HashMap<Key, u32>,
    keys: Vec<Key>,
    justs: Vec<Just>,
    queue_head: usize,
    containing: Vec<Vec<u32>>,
    missed: HashSet<Key>,
    applications: u64,
}

fn key2(a: u32, b: u32) -> Key {
    if a == b {
        (a, NONE)
    } else if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn members(k: Key) -> impl Iterator<Item = (u32, u32)> {
    let (a, b) = k;
    let v: [(u32, u32); 2] = if a == NONE {
        [(NONE, NONE); 2]
    } else if b == NONE {
        [(a, NONE), (NONE, NONE)]
    } else {
        [(a, b), (b, a)]
    };
    v.into_iter().filter(|&(x, _)| x != NONE)
}

impl Saturation {
    fn new(goal: &Sequent, axioms: &[Sequent], quantified: bool) -> Saturation {
        let seed: Vec<&Formula> = goal.formulas().chain(axioms.iter().flat_map(|a| a.formulas())).collect();
        let mut closure = subformula_closure(seed.iter().copied());
        let cut_set = subformula_closure(axioms.iter().flat_map(|a| a.formulas()));
        if quantified {
            closure = add_instances(closure);
        }
        let formulas: Vec<Formula> = closure.into_iter().collect();
        let index: BTreeMap<Formula, u32> =
            formulas.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let mut parents = vec![Vec::new(); formulas.len()];
        let mut eigen = vec![None; formulas.len()];
        let witnesses: Vec<u32> = formulas
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_quantifier_free())
            .map(|(i, _)| i as u32)
            .collect();
        for (i, f) in formulas.iter().enumerate() {
            let i = i as u32;
            match f.kind() {
                Kind::Not(a) => parents[index[a] as usize].push((i, Link::NotOf)),
                Kind::And(a, b) => {
                    let (ia, ib) = (index[a], index[b]);
                    parents[ia as usize].push((i, Link::AndWith(ib)));
                    if ia != ib {
                        parents[ib as usize].push((i, Link::AndWith(ia)));
                    }
                }
                Kind::Or(a, b) => {
                    let (ia, ib) = (index[a], index[b]);
                    parents[ia as usize].push((i, Link::OrWith(ib)));
                    if ia != ib {
                        parents[ib as usize].push((i, Link::OrWith(ia)));
                    }
                }
                Kind::Forall { .. } | Kind::Exists { .. } => {
                    let (_, name, opened) = f.open_named().expect("quantifier");
                    if let Some(&o) = index.get(&opened) {
                        parents[o as usize].push((i, Link::Instance(Inst::Eigen)));
                    }
                    eigen[i as usize] = Some(name);
                    for &w in &witnesses {
                        let inst = f.open_with(&formulas[w as usize]).expect("quantifier");
                        if let Some(&o) = index.get(&inst) {
                            parents[o as usize].push((i, Link::Instance(Inst::Witness(w))));
                        }
                    }
                }
                _ => {}
            }
        }
        let cuttable = formulas.iter().map(|f| cut_set.contains(f)).collect();
        let free = if quantified {
            formulas.iter().map(Formula::free_vars).collect()
        } else {
            Vec::new()
        };
        let n = formulas.len();
        Saturation {
            formulas,
            index,
            parents,
            cuttable,
            free,
            eigen,
            derived: HashMap::new(),
            keys: Vec::new(),
            justs: Vec::new(),
            queue_head: 0,
            containing: vec![Vec::new(); 2 * n],
            missed: HashSet::new(),
            applications: 0,
        }
    }

    fn ann_id(&self, a: &AnnotatedFormula) -> u32 {
        let f = self.index[&a.formula];
        2 * f + (a.side == Side::R) as u32
    }

    fn key_of(&self, s: &Sequent) -> Key {
        let ids: Vec<u32> = s.members().map(|m| self.ann_id(m)).collect();
        match ids.as_slice() {
            [] => (NONE, NONE),
            [a] => (*a, NONE),
            [a, b] => key2(*a, *b),
            _ => unreachable!(),
        }
    }

    fn annotated(&self, id: u32) -> AnnotatedFormula {
        let side = if id & 1 == 0 { Side::L } else { Side::R };
        AnnotatedFormula::new(self.formulas[(id >> 1) as usize].clone(), side)
    }

    fn opt_annotated(&self, id: u32) -> Option<AnnotatedFormula> {
        (id != NONE).then(|| self.annotated(id))
    }

    fn sequent(&self, k: Key) -> Sequent {
        Sequent::of(self.opt_annotated(k.0), self.opt_annotated(k.1))
    }

    fn derive(&mut self, k: Key, just: Just) {
        self.applications += 1;
        if self.derived.contains_key(&k) {
            return;
        }
        let idx = self.keys.len() as u32;
        self.derived.insert(k, idx);
        self.keys.push(k);
        self.justs.push(just);
        for (x, _) in members(k) {
            self.containing[x as usize].push(idx);
        }
    }

    fn lookup(&mut self, k: Key) -> Option<u32> {
        let found = self.derived.get(&k).copied();
        if found.is_none() {
            self.missed.insert(k);
        }
        found
    }

    fn run(&mut self, axioms: &[Sequent]) {
        let n = self.formulas.len() as u32;
        for f in 0..n {
            self.derive(key2(2 * f, 2 * f + 1), Just::Hyp(f));
        }
        if let Some(&z) = self.index.get(&Formula::zero()) {
            self.derive((2 * z, NONE), Just::Zero(NONE));
            for c in 0..2 * n {
                self.derive(key2(c, 2 * z), Just::Zero(c));
            }
        }
        if let Some(&o) = self.index.get(&Formula::one()) {
            self.derive((2 * o + 1, NONE), Just::One(NONE));
            for c in 0..2 * n {
                self.derive(key2(c, 2 * o + 1), Just::One(c));
            }
        }
        for (i, ax) in axioms.iter().enumerate() {
            let k = self.key_of(ax);
            self.derive(k, Just::Axiom(i as u32));
        }
        while self.queue_head < self.keys.len() {
            let idx = self.queue_head as u32;
            self.queue_head += 1;
            self.step(idx);
        }
    }

    fn step(&mut self, idx: u32) {
        let k = self.keys[idx as usize];
        let n2 = 2 * self.formulas.len() as u32;
        if k.0 == NONE {
            for c in 0..n2 {
                self.derive((c, NONE), Just::Weaken { premise: idx, added: c });
            }
            return;
        }
        if k.1 == NONE {
            for c in 0..n2 {
                if c != k.0 {
                    self.derive(key2(k.0, c), Just::Weaken { premise: idx, added: c });
                }
            }
        }
        for (x, ctx) in members(k) {
            self.apply_parents(idx, x, ctx);
            if self.cuttable[(x >> 1) as usize] {
                self.apply_cut(idx, x, ctx);
            }
        }
    }

    fn apply_parents(&mut self, idx: u32, x: u32, ctx: u32) {
        let f = x >> 1;
        let right = x & 1 == 1;
        for pi in 0..self.parents[f as usize].len() {
            let (p, link) = self.parents[f as usize][pi];
            let pl = 2 * p;
            let pr = 2 * p + 1;
            match link {
                Link::NotOf if right => self.derive(key2(ctx, pl), Just::LeftNot { premise: idx, inner: f }),
                Link::NotOf => self.derive(key2(ctx, pr), Just::RightNot { premise: idx, inner: f }),
                Link::AndWith(g) if !right => {
                    self.derive(key2(ctx, pl), Just::LeftAnd { premise: idx, kept: f, dropped: g })
                }
                Link::OrWith(g) if right => {
                    self.derive(key2(ctx, pr), Just::RightOr { premise: idx, kept: f, dropped: g })
                }
                Link::AndWith(g) => {
                    if let Some(other) = self.lookup(key2(ctx, 2 * g + 1)) {
                        self.derive(
                            key2(ctx, pr),
                            Just::RightAnd { premises: [idx, other], parts: [f, g] },
                        );
                    }
                }
                Link::OrWith(g) => {
                    if let Some(other) = self.lookup(key2(ctx, 2 * g)) {
                        self.derive(
                            key2(ctx, pl),
                            Just::LeftOr { premises: [idx, other], parts: [f, g] },
                        );
                    }
                }
                Link::Instance(inst) => self.apply_instance(idx, x, ctx, p, inst),
            }
        }
    }

    fn apply_instance(&mut self, idx: u32, x: u32, ctx: u32, q: u32, inst: Inst) {
        let right = x & 1 == 1;
        let forall = matches!(self.formulas[q as usize].kind(), Kind::Forall { .. });
        let applies = match inst {
            // LeftForall and RightExists.
            Inst::Witness(_) => forall != right,
            // RightForall and LeftExists.
            Inst::Eigen => {
                let name = self.eigen[q as usize].as_ref().expect("quantifier");
                forall == right && (ctx == NONE || !self.free[(ctx >> 1) as usize].contains(name))
            }
        };
        if applies {
            let target = 2 * q + right as u32;
            self.derive(key2(ctx, target), Just::Quant { premise: idx, quantified: q, inst });
        }
    }

    fn apply_cut(&mut self, idx: u32, x: u32, ctx: u32) {
        let dual = x ^ 1;
        let others: Vec<u32> = self.containing[dual as usize].clone();
        for t in others {
            let tk = self.keys[t as usize];
            let rest = if tk.0 == dual { tk.1 } else { tk.0 };
            let formula = x >> 1;
            let (left, right) = if x & 1 == 1 { (idx, t) } else { (t, idx) };
            self.derive(key2(ctx, rest), Just::Cut { premises: [left, right], formula });
        }
    }

    fn stats(&self) -> ProverStats {
        let extra = self.missed.iter().filter(|k| !self.derived.contains_key(*k)).count();
        ProverStats {
            states_enumerated: (self.keys.len() + extra) as u64,
            states_derived: self.keys.len() as u64,
            rule_applications: self.applications,
            closure_size: self.formulas.len() as u64,
            elapsed: Duration::ZERO,
        }
    }

    fn premises_of(just: &Just) -> Vec<u32> {
        match *just {
            Just::Hyp(_) | Just::Zero(_) | Just::One(_) | Just::Axiom(_) => vec![],
            Just::Weaken { premise, .. }
            | Just::LeftAnd { premise, .. }
            | Just::RightOr { premise, .. }
            | Just::LeftNot { premise, .. }
            | Just::RightNot { premise, .. }
            | Just::Quant { premise, .. } => vec![premise],
            Just::RightAnd { premises, .. } | Just::LeftOr { premises, .. } | Just::Cut { premises, .. } => {
                premises.to_vec()
            }
        }
    }

    /// Builds the proof of state `root`. Premises are always derived before
    /// their conclusions, so building in index order needs no recursion.
    fn extract(&self, root: u32, axioms: &[Sequent]) -> ProofStep {
        let mut needed = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if needed.insert(i) {
                stack.extend(Self::premises_of(&self.justs[i as usize]));
            }
        }
        let mut built: BTreeMap<u32, ProofStep> = BTreeMap::new();
        for &i in &needed {
            let step = self.build(i, &built, axioms);
            built.insert(i, step);
        }
        built.remove(&root).expect("root built")
    }

    fn build(&self, i: u32, built: &BTreeMap<u32, ProofStep>, axioms: &[Sequent]) -> ProofStep {
        let f = |id: u32| self.formulas[id as usize].clone();
        let p = |id: u32| built[&id].clone();
        let concl = self.sequent(self.keys[i as usize]);
        let (rule, premises) = match self.justs[i as usize] {
            Just::Hyp(x) => return ProofStep::hyp(f(x)),
            Just::Zero(c) => return ProofStep::zero_leaf(self.opt_annotated(c)),
            Just::One(c) => return ProofStep::one_leaf(self.opt_annotated(c)),
            Just::Axiom(a) => return ProofStep::axiom(a as usize, &axioms[a as usize]),
            Just::Weaken { premise, added } => (Rule::Weaken(Some(self.annotated(added))), vec![p(premise)]),
            Just::LeftAnd { premise, kept, dropped } => {
                (Rule::LeftAnd { kept: f(kept), dropped: f(dropped) }, vec![p(premise)])
            }
            Just::RightOr { premise, kept, dropped } => {
                (Rule::RightOr { kept: f(kept), dropped: f(dropped) }, vec![p(premise)])
            }
            Just::LeftNot { premise, inner } => (Rule::LeftNot(f(inner)), vec![p(premise)]),
            Just::RightNot { premise, inner } => (Rule::RightNot(f(inner)), vec![p(premise)]),
            Just::RightAnd { premises: [a, b], parts: [l, r] } => {
                (Rule::RightAnd { left: f(l), right: f(r) }, vec![p(a), p(b)])
            }
            Just::LeftOr { premises: [a, b], parts: [l, r] } => {
                (Rule::LeftOr { left: f(l), right: f(r) }, vec![p(a), p(b)])
            }
            Just::Cut { premises: [a, b], formula } => (Rule::Cut(f(formula)), vec![p(a), p(b)]),
            Just::Quant { premise, quantified, inst } => {
                let q = &self.formulas[quantified as usize];
                let (kind, binder, body) = q.open_named().expect("quantifier");
                let rule = match (kind, inst) {
                    (Quantifier::Forall, Inst::Witness(w)) => Rule::LeftForall { binder, body, witness: f(w) },
                    (Quantifier::Exists, Inst::Witness(w)) => Rule::RightExists { binder, body, witness: f(w) },
                    (Quantifier::Forall, Inst::Eigen) => {
                        Rule::RightForall { eigenvariable: binder.clone(), binder, body }
                    }
                    (Quantifier::Exists, Inst::Eigen) => {
                        Rule::LeftExists { eigenvariable: binder.clone(), binder, body }
                    }
                };
                (rule, vec![p(premise)])
            }
        };
        ProofStep::new(rule, concl, premises)
    }
}

/// One round of witness instances for every quantified formula, closed
/// under subformulas again.
fn add_instances(closure: BTreeSet<Formula>) -> BTreeSet<Formula> {
    let witnesses: Vec<&Formula> = closure.iter().filter(|f| f.is_quantifier_free()).collect();
    let mut extra = Vec::new();
    for q in closure.iter().filter(|f| matches!(f.kind(), Kind::Forall { .. } | Kind::Exists { .. })) {
        for w in &witnesses {
            extra.push(q.open_with(w).expect("quantifier"));
        }
    }
    let mut out = subformula_closure(extra.iter());
    out.extend(closure);
    out
}
