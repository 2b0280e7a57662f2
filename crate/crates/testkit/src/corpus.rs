//! Random provable sequents, each with a proof from the saturation prover.

use ol_core::{prove, AnnotatedFormula, Formula, ProofStep, Sequent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen::{connectives, random_formula, shuffle_equivalent, strengthen, vars, weaken};

/// An ordered partition `(gamma, delta)` of a proved sequent.
#[derive(Clone, Debug)]
pub struct Instance {
    pub gamma: Option<AnnotatedFormula>,
    pub delta: Option<AnnotatedFormula>,
    pub proof: ProofStep,
}

impl Instance {
    pub fn sequent(&self) -> Sequent {
        Sequent::of(self.gamma.clone(), self.delta.clone())
    }
}

/// Variable names used by the corpus.
pub const VARIABLES: [&str; 4] = ["p", "q", "r", "s"];

/// `count` provable quantifier-free sequents over at most four variables,
/// with at most `max_connectives` connectives per side. Deterministic in
/// `seed`.
pub fn provable_corpus(seed: u64, count: usize, max_connectives: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leaves = vars(&VARIABLES);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let size = rng.gen_range(max_connectives / 3..=max_connectives).max(1);
        let base = random_formula(&mut rng, &leaves, size);
        let budget = 4;
        let (gamma, delta) = match rng.gen_range(0..10) {
            0 => {
                // A^L, B^L from A ≤ ¬B.
                let c = weaken(&mut rng, &base, &leaves, budget);
                let b = shuffle_equivalent(&mut rng, &Formula::not(c));
                (AnnotatedFormula::left(base), AnnotatedFormula::left(b))
            }
            1 => {
                // A^R, B^R from ¬A ≤ B.
                let c = strengthen(&mut rng, &base, &leaves, budget);
                let a = shuffle_equivalent(&mut rng, &Formula::not(c));
                (AnnotatedFormula::right(a), AnnotatedFormula::right(base))
            }
            2 => {
                let n = rng.gen_range(0..=size);
                let other = random_formula(&mut rng, &leaves, n);
                (AnnotatedFormula::left(base), AnnotatedFormula::right(other))
            }
            3 | 4 => {
                let shuffled = shuffle_equivalent(&mut rng, &base);
                let a = strengthen(&mut rng, &shuffled, &leaves, budget);
                (AnnotatedFormula::left(a), AnnotatedFormula::right(base))
            }
            5 | 6 => {
                let shuffled = shuffle_equivalent(&mut rng, &base);
                let b = weaken(&mut rng, &shuffled, &leaves, budget);
                (AnnotatedFormula::left(base), AnnotatedFormula::right(b))
            }
            _ => {
                // Both sides rewritten around a common middle formula.
                let lower = strengthen(&mut rng, &base, &leaves, budget);
                let upper = weaken(&mut rng, &base, &leaves, budget);
                let a = shuffle_equivalent(&mut rng, &lower);
                let b = shuffle_equivalent(&mut rng, &upper);
                (AnnotatedFormula::left(a), AnnotatedFormula::right(b))
            }
        };
        if connectives(&gamma.formula) > max_connectives || connectives(&delta.formula) > max_connectives {
            continue;
        }
        let goal = Sequent::pair(gamma.clone(), delta.clone());
        if let Some(proof) = prove(&goal, &[]).proof() {
            let (gamma, delta) = if gamma == delta { (Some(gamma), None) } else { (Some(gamma), Some(delta)) };
            out.push(Instance {
                gamma,
                delta,
                proof: proof.clone(),
            });
        }
    }
    out
}
