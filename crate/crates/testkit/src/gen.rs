//! Formula generators.

use std::collections::BTreeSet;

use ol_core::{Formula, Ident, Kind};
use rand::Rng;

/// Number of `!`, `&` and `|` nodes.
pub fn connectives(f: &Formula) -> usize {
    match f.kind() {
        Kind::Not(a) => 1 + connectives(a),
        Kind::And(a, b) | Kind::Or(a, b) => 1 + connectives(a) + connectives(b),
        Kind::Forall { body, .. } | Kind::Exists { body, .. } => 1 + connectives(body),
        _ => 0,
    }
}

/// Every distinct formula with at most `max_nodes` nodes built from the
/// given leaves with `!`, `&`, `|`.
pub fn all_formulas(leaves: &[Formula], max_nodes: usize) -> Vec<Formula> {
    // by_size[n] holds the formulas of exactly n nodes.
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_nodes + 1];
    let mut seen = BTreeSet::new();
    if max_nodes >= 1 {
        for l in leaves {
            if seen.insert(l.clone()) {
                by_size[1].push(l.clone());
            }
        }
    }
    for n in 2..=max_nodes {
        let mut fresh = Vec::new();
        for a in &by_size[n - 1] {
            fresh.push(Formula::not(a.clone()));
        }
        for i in 1..n - 1 {
            let j = n - 1 - i;
            if i > j {
                break;
            }
            for a in &by_size[i] {
                for b in &by_size[j] {
                    fresh.push(Formula::and(a.clone(), b.clone()));
                    fresh.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        for f in fresh {
            if seen.insert(f.clone()) {
                by_size[n].push(f);
            }
        }
    }
    by_size.into_iter().flatten().collect()
}

pub fn vars(names: &[&str]) -> Vec<Formula> {
    names.iter().map(|n| Formula::var(Ident::new(n))).collect()
}

/// A random quantifier-free formula with exactly `connectives` connectives.
/// Constants appear as leaves with small probability.
pub fn random_formula<R: Rng>(rng: &mut R, leaves: &[Formula], connectives: usize) -> Formula {
    if connectives == 0 {
        return match rng.gen_range(0..50) {
            0 => Formula::zero(),
            1 => Formula::one(),
            _ => leaves[rng.gen_range(0..leaves.len())].clone(),
        };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, leaves, connectives - 1)),
        k => {
            let left = rng.gen_range(0..connectives);
            let a = random_formula(rng, leaves, left);
            let b = random_formula(rng, leaves, connectives - 1 - left);
            if k % 2 == 0 {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
    }
}

/// A formula `g` with `f ≤ g` in every ortholattice, obtained by monotone
/// rewriting: dropping conjuncts, adding disjuncts, strengthening under
/// negation.
pub fn weaken<R: Rng>(rng: &mut R, f: &Formula, leaves: &[Formula], budget: usize) -> Formula {
    let roll = rng.gen_range(0..10);
    if roll == 0 && budget > 0 {
        let n = rng.gen_range(0..budget.min(3));
        let extra = random_formula(rng, leaves, n);
        return Formula::or(f.clone(), extra);
    }
    match f.kind() {
        Kind::And(a, b) => match rng.gen_range(0..8) {
            0 => weaken(rng, a, leaves, budget),
            1 => weaken(rng, b, leaves, budget),
            _ => Formula::and(weaken(rng, a, leaves, budget / 2), weaken(rng, b, leaves, budget / 2)),
        },
        Kind::Or(a, b) => Formula::or(weaken(rng, a, leaves, budget / 2), weaken(rng, b, leaves, budget / 2)),
        Kind::Not(a) => Formula::not(strengthen(rng, a, leaves, budget)),
        _ => f.clone(),
    }
}

/// A formula `g` with `g ≤ f`; the dual of [`weaken`].
pub fn strengthen<R: Rng>(rng: &mut R, f: &Formula, leaves: &[Formula], budget: usize) -> Formula {
    let roll = rng.gen_range(0..10);
    if roll == 0 && budget > 0 {
        let n = rng.gen_range(0..budget.min(3));
        let extra = random_formula(rng, leaves, n);
        return Formula::and(f.clone(), extra);
    }
    match f.kind() {
        Kind::Or(a, b) => match rng.gen_range(0..8) {
            0 => strengthen(rng, a, leaves, budget),
            1 => strengthen(rng, b, leaves, budget),
            _ => Formula::or(strengthen(rng, a, leaves, budget / 2), strengthen(rng, b, leaves, budget / 2)),
        },
        Kind::And(a, b) => Formula::and(strengthen(rng, a, leaves, budget / 2), strengthen(rng, b, leaves, budget / 2)),
        Kind::Not(a) => Formula::not(weaken(rng, a, leaves, budget)),
        _ => f.clone(),
    }
}

/// Rewrites with De Morgan and double negation laws at random positions.
pub fn shuffle_equivalent<R: Rng>(rng: &mut R, f: &Formula) -> Formula {
    let g = match f.kind() {
        Kind::Not(a) => Formula::not(shuffle_equivalent(rng, a)),
        Kind::And(a, b) => Formula::and(shuffle_equivalent(rng, a), shuffle_equivalent(rng, b)),
        Kind::Or(a, b) => Formula::or(shuffle_equivalent(rng, a), shuffle_equivalent(rng, b)),
        _ => f.clone(),
    };
    match (rng.gen_range(0..8), g.kind()) {
        (0, Kind::And(a, b)) => Formula::not(Formula::or(Formula::not(a.clone()), Formula::not(b.clone()))),
        (0, Kind::Or(a, b)) => Formula::not(Formula::and(Formula::not(a.clone()), Formula::not(b.clone()))),
        (1, Kind::Not(a)) => match a.kind() {
            Kind::Not(inner) => inner.clone(),
            _ => g.clone(),
        },
        (2, _) => Formula::not(Formula::not(g.clone())),
        _ => g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let leaves = vars(&["y"]);
        let fs = all_formulas(&leaves, 3);
        // y, !y, !!y, y&y, y|y
        assert_eq!(fs.len(), 5);
        let fs = all_formulas(&[Formula::var(Ident::new("x")), Formula::var(Ident::new("y"))], 3);
        // x, y, !x, !y, !!x, !!y, x&y, x|y, x&x, x|x, y&y, y|y
        assert_eq!(fs.len(), 12);
    }
}
