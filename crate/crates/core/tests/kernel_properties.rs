use ol_core::semantics::{b2, mo};
use ol_core::{check_proof, falsify, AnnotatedFormula, ProofStep, Sequent};
use ol_testkit::corpus;
use proptest::prelude::*;

/// Rebuilds `p` with the conclusion at `path` replaced.
fn tamper(p: &ProofStep, path: &[usize], conclusion: Sequent) -> ProofStep {
    match path.split_first() {
        None => ProofStep::new(p.rule().clone(), conclusion, p.premises().to_vec()),
        Some((&i, rest)) => {
            let mut premises = p.premises().to_vec();
            premises[i] = tamper(&premises[i], rest, conclusion);
            ProofStep::new(p.rule().clone(), p.conclusion().clone(), premises)
        }
    }
}

fn random_path(p: &ProofStep, choices: &[usize]) -> Vec<usize> {
    let mut path = Vec::new();
    let mut node = p;
    for &c in choices {
        if node.premises().is_empty() {
            break;
        }
        let i = c % node.premises().len();
        path.push(i);
        node = &node.premises()[i];
    }
    path
}

#[test]
fn accepted_proofs_are_sound_in_finite_models() {
    let models = [b2(), mo(1), mo(2), mo(3)];
    for inst in corpus::provable_corpus(21, 120, 6) {
        let report = check_proof(&inst.proof, &[]);
        let conclusion = report.conclusion().unwrap();
        assert!(conclusion.len() <= 2);
        for m in &models {
            assert!(falsify(m, conclusion).is_none(), "{}", conclusion);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tampered_conclusions_are_rejected_at_the_node(seed in 0u64..1000, choices in proptest::collection::vec(0usize..4, 0..12)) {
        let inst = corpus::provable_corpus(seed, 1, 6).remove(0);
        let path = random_path(&inst.proof, &choices);
        let mut node = &inst.proof;
        for &i in &path {
            node = &node.premises()[i];
        }
        let bogus = AnnotatedFormula::right(ol_core::parse_formula("zz & !zz").unwrap());
        let replaced = Sequent::single(bogus);
        prop_assume!(*node.conclusion() != replaced);
        let bad = tamper(&inst.proof, &path, replaced);
        let report = check_proof(&bad, &[]);
        let failure = report.failure().expect("tampered proof accepted");
        // Either the tampered node itself or its parent notices.
        let parent = &path[..path.len().saturating_sub(1)];
        prop_assert!(failure.path == path || failure.path == parent, "{} vs {:?}", failure, path);
    }

    #[test]
    fn checking_is_deterministic(seed in 0u64..1000) {
        let inst = corpus::provable_corpus(seed, 1, 8).remove(0);
        let a = check_proof(&inst.proof, &[]);
        let b = check_proof(&inst.proof, &[]);
        prop_assert_eq!(a, b);
    }
}
