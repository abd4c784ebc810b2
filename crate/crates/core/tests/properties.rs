//! Property tests over randomly generated terms, models and rule instances.
//! The generators are the library's own, driven by a proptest-chosen seed.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dyncalc::pdl_translate::{erase_formula, translate_formula};
use dyncalc::proof_kernel::{check, expand_identity};
use dyncalc::rule_catalog::{
    catalog, conclusion_of, match_conclusion, premises_of, Premises, RuleSchema,
};
use dyncalc::semantics::gen::{random_opterm, random_pdl, random_structure};
use dyncalc::semantics::{
    closure_plus, interpret, pdl_eval, random_substitution, KripkeModel, Rel,
};
use dyncalc::syntax::{
    parse_opterm, parse_pdl, parse_sequent, parse_structure, substructures, ParseOptions, Position,
    Sequent, Signature, Sort,
};
use dyncalc::typing::{check_sequent, sort_of_op};

fn sig() -> Signature {
    Signature::new(["p", "q", "r"], ["a", "b"]).expect("disjoint atoms")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sort() -> impl Strategy<Value = Sort> {
    prop::sample::select(Sort::ALL.to_vec())
}

fn schema() -> impl Strategy<Value = &'static RuleSchema> {
    let all: Vec<&'static RuleSchema> = catalog().iter().collect();
    prop::sample::select(all)
}

/// Two relations on the same 1 to 6 worlds.
fn relations() -> impl Strategy<Value = (Rel, Rel)> {
    (1usize..=6).prop_flat_map(|k| {
        let rel = move |bits: Vec<bool>| {
            Rel::from_pairs(k, (0..k * k).filter(|&i| bits[i]).map(|i| (i / k, i % k)))
        };
        let bits = || prop::collection::vec(any::<bool>(), k * k);
        (bits().prop_map(rel), bits().prop_map(rel))
    })
}

proptest! {
    #[test]
    fn opterm_round_trip(seed: u64, s in sort(), depth in 0usize..5) {
        let t = random_opterm(&mut rng(seed), s, depth, &sig());
        prop_assert_eq!(parse_opterm(&t.to_string(), &sig()).unwrap(), t.clone());
        // Stored indices agree with the ones recomputed from child sorts.
        prop_assert_eq!(sort_of_op(&t).unwrap(), s);
    }

    #[test]
    fn structure_and_sequent_round_trip(seed: u64, s in sort(), depth in 0usize..4) {
        let mut g = rng(seed);
        let x = random_structure(&mut g, s, depth, &sig());
        let y = random_structure(&mut g, s, depth, &sig());
        prop_assert_eq!(parse_structure(&x.to_string(), &sig()).unwrap(), x.clone());
        let seq = Sequent::new(x, y);
        prop_assert_eq!(parse_sequent(&seq.to_string(), &sig()).unwrap(), seq);
    }

    #[test]
    fn pdl_round_trip(seed: u64, depth in 1usize..5, adjoint: bool) {
        let a = random_pdl(&mut rng(seed), depth, &sig(), adjoint);
        let opts = ParseOptions { infer_indices: false, adjoint: true };
        prop_assert_eq!(parse_pdl(&a.to_string(), &sig(), opts).unwrap(), a);
    }

    #[test]
    fn polarity_flips_with_the_root(seed: u64, s in sort(), depth in 0usize..4) {
        let x = random_structure(&mut rng(seed), s, depth, &sig());
        let ant = substructures(&x, Position::Ant);
        let suc = substructures(&x, Position::Suc);
        prop_assert_eq!(ant.len(), suc.len());
        for (l, r) in ant.iter().zip(&suc) {
            prop_assert_eq!(&l.path, &r.path);
            prop_assert_eq!(l.position.flip(), r.position);
        }
    }

    #[test]
    fn translation_preserves_meaning(seed: u64, depth in 1usize..5, k in 1usize..=4, adjoint: bool) {
        let mut g = rng(seed);
        let m = KripkeModel::random(&mut g, k, &sig(), 0.4);
        let a = random_pdl(&mut g, depth, &sig(), adjoint);
        let t = translate_formula(&a);
        prop_assert_eq!(interpret(&m, &t).worlds(), Some(pdl_eval(&m, &a)));
        prop_assert_eq!(erase_formula(&t).unwrap(), a);
    }

    #[test]
    fn closure_is_the_least_transitive_superset((r, s) in relations()) {
        let plus = closure_plus(r);
        prop_assert!(plus.is_transitive());
        prop_assert!(r.subset_of(&plus));
        prop_assert_eq!(closure_plus(plus), plus);
        // Adjunction against a transitive relation.
        let t = closure_plus(s);
        prop_assert_eq!(r.subset_of(&t), plus.subset_of(&t));
    }

    #[test]
    fn invertible_rules_undo_each_other(rule in schema(), seed: u64) {
        let Some(inv) = rule.inverse.as_deref().and_then(|i| catalog().get(i)) else { return Ok(()) };
        let sub = random_substitution(&mut rng(seed), rule, 2, &sig());
        let premise = premises_of(rule, &sub, None).unwrap().remove(0);
        let conclusion = conclusion_of(rule, &sub).unwrap();
        let back = match_conclusion(inv, &premise)
            .into_iter()
            .any(|s| premises_of(inv, &s, None).is_ok_and(|ps| ps == [conclusion.clone()]));
        prop_assert!(back, "{} then {} on {}", rule.id, inv.id, conclusion);
    }

    #[test]
    fn instances_are_closed_under_substitution(rule in schema(), seed: u64) {
        prop_assume!(matches!(rule.premises, Premises::Finite(_)));
        let sub = random_substitution(&mut rng(seed), rule, 2, &sig());
        let conclusion = conclusion_of(rule, &sub).unwrap();
        let premises = premises_of(rule, &sub, None).unwrap();
        // Well-sorted instances are type-uniform.
        prop_assert!(check_sequent(&conclusion).is_ok(), "{}: {}", rule.id, conclusion);
        for p in &premises {
            prop_assert!(check_sequent(p).is_ok(), "{}: {}", rule.id, p);
        }
        // Matching the instance recovers the substitution on the conclusion's
        // metavariables; the others come from the original.
        let recovered = match_conclusion(rule, &conclusion).into_iter().any(|mut s| {
            s.extend_missing(&sub);
            conclusion_of(rule, &s).as_ref() == Ok(&conclusion) && premises_of(rule, &s, None).as_ref() == Ok(&premises)
        });
        prop_assert!(recovered, "{} on {}", rule.id, conclusion);
    }

    #[test]
    fn identity_expansion_checks(seed: u64, s in sort(), depth in 0usize..4) {
        let t = random_opterm(&mut rng(seed), s, depth, &sig());
        let p = expand_identity(&t).unwrap();
        prop_assert!(check(&p, 1).ok());
        prop_assert_eq!(p.conclusion().ant.as_op(), Some(&t));
        prop_assert_eq!(p.conclusion().suc.as_op(), Some(&t));
    }
}
