use super::*;
use crate::syntax::{parse_sequent, Signature};

fn sig() -> Signature {
    Signature::new(["p", "q"], ["a", "b"]).unwrap()
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text, &sig()).unwrap()
}

fn cuts(p: &Proof) -> usize {
    let mut n = 0;
    p.visit(1, &mut |x| n += usize::from(x.rule().starts_with("cut_")));
    n
}

/// End-sequents written out by hand from the axiom table.
const BOX_ORACLE: [(&str, &str); 12] = [
    ("K", "a fbox1 (p -> q) |- (a fbox1 p) -> (a fbox1 q)"),
    (
        "BoxChoice_LR",
        "(a cup1 b) fbox1 p |- (a fbox1 p) & (b fbox1 p)",
    ),
    (
        "BoxChoice_RL",
        "(a fbox1 p) & (b fbox1 p) |- (a cup1 b) fbox1 p",
    ),
    (
        "BoxComposition_LR",
        "(a ;1 b) fbox1 p |- a fbox1 (b fbox1 p)",
    ),
    (
        "BoxComposition_RL",
        "a fbox1 (b fbox1 p) |- (a ;1 b) fbox1 p",
    ),
    ("BoxTest_LR", "(p ?1) fbox1 q |- p -> q"),
    ("BoxTest_RL", "p -> q |- (p ?1) fbox1 q"),
    (
        "BoxDistributivity_LR",
        "a fbox1 (p & q) |- (a fbox1 p) & (a fbox1 q)",
    ),
    (
        "BoxDistributivity_RL",
        "(a fbox1 p) & (a fbox1 q) |- a fbox1 (p & q)",
    ),
    (
        "BoxFixpoint_LR",
        "(a +) fbox0 p |- (a fbox1 p) & (a fbox1 ((a +) fbox0 p))",
    ),
    (
        "BoxFixpoint_RL",
        "(a fbox1 p) & (a fbox1 ((a +) fbox0 p)) |- (a +) fbox0 p",
    ),
    (
        "BoxInduction",
        "(a fbox1 p) & ((a +) fbox0 (p -> (a fbox1 p))) |- (a +) fbox0 p",
    ),
];

#[test]
fn axiom_table_matches_oracle() {
    for (name, text) in BOX_ORACLE {
        let id: AxiomId = name.parse().unwrap();
        assert_eq!(
            axiom_sequent(id, &Params::default()).unwrap(),
            seq(text),
            "{name}"
        );
    }
}

#[test]
fn every_box_axiom_derives() {
    let params = Params {
        omega_bound: 3,
        ..Params::default()
    };
    for (name, text) in BOX_ORACLE {
        let p = derive(name.parse().unwrap(), &params).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.conclusion(), &seq(text), "{name}");
        assert_eq!(p.conclusion().to_string(), seq(text).to_string());
    }
}

#[test]
fn fixpoint_lr_uses_the_literal_absorption() {
    let p = derive(AxiomId::BoxFixpointLR, &Params::default()).unwrap();
    assert!(p.rules_used(1).contains("abs4"));
}

#[test]
fn induction_ends_in_the_omega_node() {
    let p = derive(
        AxiomId::BoxInduction,
        &Params {
            omega_bound: 2,
            ..Params::default()
        },
    )
    .unwrap();
    let mut omega = Vec::new();
    p.visit(2, &mut |x| {
        if let Proof::Omega { rule, family, .. } = x {
            omega.push((rule.clone(), family.name().to_string()));
        }
    });
    assert_eq!(
        omega,
        [("omega_btri".to_string(), "induction_premise".to_string())]
    );
}

#[test]
fn diamond_samples_derive_without_negation() {
    for id in AxiomId::DIAMOND {
        let p = derive(id, &Params::default()).unwrap_or_else(|e| panic!("{id}: {e}"));
        let used = p.rules_used(1);
        assert!(
            !used
                .iter()
                .any(|r| r.starts_with("bot_") || r.starts_with("fbox_")),
            "{id}: {used:?}"
        );
    }
}

#[test]
fn lemma_examples() {
    let d = Params::default();
    assert_eq!(
        lemma(LemmaId::PlusUnfold, 1, &d).unwrap().conclusion(),
        &seq("(a +) fbox0 p |- a fbox1 p")
    );
    assert_eq!(
        lemma(LemmaId::PlusUnfold, 3, &d).unwrap().conclusion(),
        &seq("(a +) fbox0 p |- a fbox1 (a fbox1 (a fbox1 p))")
    );
    assert_eq!(
        lemma(LemmaId::InductionPremise, 2, &d)
            .unwrap()
            .conclusion(),
        &seq("(a ;b1 a) sbtri1 ((a fbox1 p) , ((a +) fbox0 (p -> (a fbox1 p)))) |- p")
    );
    assert_eq!(
        lemma(LemmaId::BoxStep, 1, &d).unwrap().conclusion(),
        &seq("(a fbox1 p) , (a fbox1 (p -> (a fbox1 p))) |- a sfbox1 (a sfbox1 p)")
    );
    assert_eq!(
        lemma(LemmaId::BoxStepClosed, 2, &d).unwrap().conclusion(),
        &seq("(a fbox1 (a fbox1 p)) , (a fbox1 (a fbox1 (p -> (a fbox1 p)))) |- a fbox1 (a fbox1 (a fbox1 p))")
    );
}

#[test]
fn chain_cut_count_is_n_minus_one() {
    for n in 1..=4 {
        let p = lemma(LemmaId::Chain, n, &Params::default()).unwrap();
        assert_eq!(cuts(&p), n - 1, "n = {n}");
    }
    let p = lemma(LemmaId::Chain, 3, &Params::default()).unwrap();
    let b = "p -> (a fbox1 p)";
    let expected = format!(
        "(((a fbox1 p) , (a fbox1 ({b}))) , (a fbox1 (a fbox1 ({b})))) , (a fbox1 (a fbox1 (a fbox1 ({b})))) \
         |- a sfbox1 (a sfbox1 (a sfbox1 (a sfbox1 p)))"
    );
    assert_eq!(p.conclusion(), &seq(&expected));
}

#[test]
fn custom_atom_names() {
    let params = Params {
        alpha: "go".into(),
        beta: "stay".into(),
        a: "up".into(),
        b: "down".into(),
        omega_bound: 2,
    };
    for id in AxiomId::BOX {
        let p = derive(id, &params).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(p.conclusion(), &axiom_sequent(id, &params).unwrap());
    }
}

#[test]
fn errors() {
    assert!(matches!(
        "Box".parse::<AxiomId>(),
        Err(CorpusError::UnknownAxiom(_))
    ));
    assert!(matches!(
        "lemma9".parse::<LemmaId>(),
        Err(CorpusError::UnknownLemma(_))
    ));
    assert!(matches!(
        lemma(LemmaId::Chain, 0, &Params::default()),
        Err(CorpusError::BadIndex(0))
    ));
    let clash = Params {
        alpha: "p".into(),
        ..Params::default()
    };
    assert!(matches!(
        derive(AxiomId::K, &clash),
        Err(CorpusError::InvalidParams(_))
    ));
    let reserved = Params {
        a: "top".into(),
        ..Params::default()
    };
    assert!(matches!(
        derive(AxiomId::K, &reserved),
        Err(CorpusError::InvalidParams(_))
    ));
    let zero = Params {
        omega_bound: 0,
        ..Params::default()
    };
    assert!(matches!(
        derive(AxiomId::BoxInduction, &zero),
        Err(CorpusError::InvalidParams(_))
    ));
}

#[test]
fn induction_family_round_trips_through_the_registry() {
    let fam = InductionFamily::new(Params::default());
    let back = resolve_generator(fam.name(), &fam.args()).unwrap();
    assert_eq!(
        back.proof(2).unwrap().conclusion(),
        fam.proof(2).unwrap().conclusion()
    );
    assert!(resolve_generator("nope", &fam.args()).is_none());
    assert!(fam.proof(0).is_err());
}

#[test]
fn all_lemmas_check_up_to_six() {
    for id in LemmaId::ALL {
        for n in 1..=6 {
            lemma(id, n, &Params::default()).unwrap_or_else(|e| panic!("{id} {n}: {e}"));
        }
    }
}

#[test]
fn end_sequents_hold_on_random_models() {
    use crate::semantics::{holds, KripkeModel, Verdict};
    use rand::{Rng, SeedableRng};

    let d = Params::default();
    let mut ends: Vec<(String, Sequent)> = AxiomId::all()
        .filter(|id| !id.uses_omega())
        .map(|id| (id.to_string(), derive(id, &d).unwrap().conclusion().clone()))
        .collect();
    for id in LemmaId::ALL {
        for n in 1..=6 {
            ends.push((
                format!("{id}({n})"),
                lemma(id, n, &d).unwrap().conclusion().clone(),
            ));
        }
    }
    // The induction proof for k-world models is verified at bound k².
    let induction: Vec<Sequent> = (1..=4)
        .map(|k| {
            derive(
                AxiomId::BoxInduction,
                &Params {
                    omega_bound: k * k,
                    ..d.clone()
                },
            )
            .unwrap()
            .conclusion()
            .clone()
        })
        .collect();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let m = KripkeModel::random(&mut rng, k, &sig(), 0.4);
        for (name, s) in &ends {
            assert_eq!(
                holds(&m, s),
                Verdict::Holds(true),
                "{name} fails on\n{}",
                m.to_text()
            );
        }
        assert_eq!(
            holds(&m, &induction[k - 1]),
            Verdict::Holds(true),
            "induction fails on\n{}",
            m.to_text()
        );
    }
}
