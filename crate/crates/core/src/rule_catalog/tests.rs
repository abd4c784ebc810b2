use super::*;
use crate::syntax::{parse_sequent, parse_structure};
use crate::typing::check_sequent;

fn sig() -> Signature {
    Signature::new(["p", "q"], ["a", "b", "c"]).unwrap()
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text, &sig()).unwrap()
}

fn st(text: &str) -> Structure {
    parse_structure(text, &sig()).unwrap()
}

fn rule(id: &str) -> &'static RuleSchema {
    catalog().get(id).unwrap_or_else(|| panic!("missing {id}"))
}

fn sub(pairs: &[(&str, &str)]) -> Substitution {
    let mut s = Substitution::new();
    for (k, v) in pairs {
        s.0.insert(k.to_string(), Binding::St(st(v)));
    }
    s
}

#[test]
fn plus_r_conclusion() {
    assert_eq!(rule("plus_R").conclusion.to_string(), "Psi^op |- alpha+");
}

#[test]
fn abs4_shape() {
    let r = rule("abs4");
    let prem: Vec<String> = r.premise_patterns().iter().map(|p| p.to_string()).collect();
    assert_eq!(prem, ["Gamma |- Delta", "Xi |- Delta"]);
    assert_eq!(r.conclusion.to_string(), "Gamma ;b4 Xi |- Delta^om");
}

#[test]
fn omega_btri_family() {
    let r = rule("omega_btri");
    assert!(r.is_omega());
    let s = sub(&[("Pi", "a"), ("X", "p"), ("Y", "q")]);
    let ps = premises_of(r, &s, Some(3)).unwrap();
    assert_eq!(ps[0], seq("a sbtri1 p |- q"));
    assert_eq!(ps[2], seq("(a ;b1 (a ;b1 a)) sbtri1 p |- q"));
    assert_eq!(
        premises_of(r, &s, None),
        Err(RuleError::MissingBound("omega_btri".into()))
    );
}

#[test]
fn matching_examples() {
    let id = match_conclusion(rule("Id_p"), &seq("p |- p"));
    assert_eq!(
        id,
        vec![Substitution::new().with_op("p", OpTerm::prop("p"))]
    );
    assert!(match_conclusion(rule("Id_p"), &seq("p & q |- p & q")).is_empty());

    let hits: Vec<_> = catalog()
        .find("wtri_R")
        .into_iter()
        .flat_map(|r| match_conclusion(r, &seq("a swtri1 p |- a wtri1 p")))
        .collect();
    assert_eq!(hits.len(), 1);
    let m = &hits[0];
    assert_eq!(m.get("x"), Some(&Binding::St(st("a"))));
    assert_eq!(m.get("Y"), Some(&Binding::St(st("p"))));
    assert_eq!(m.get("a"), Some(&Binding::Op(OpTerm::act("a"))));
    assert_eq!(m.get("B"), Some(&Binding::Op(OpTerm::prop("p"))));

    let hits = match_conclusion(rule("abs4"), &seq("a ^op ;b4 b+ |- c+ ^om"));
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].get("Gamma"), Some(&Binding::St(st("a ^op"))));
    assert_eq!(hits[0].get("Delta"), Some(&Binding::St(st("c+"))));
}

#[test]
fn premises_examples() {
    let ps = premises_of(
        rule("FP_btri"),
        &sub(&[("Pi", "a"), ("X", "p"), ("Y", "q")]),
        None,
    )
    .unwrap();
    assert_eq!(
        ps,
        vec![seq("a sbtri1 p |- q"), seq("(a ;b3 a ^op) sbtri1 p |- q")]
    );

    let cut = sub(&[("X", "p"), ("Y", "p")]).with_op("A", OpTerm::prop("p"));
    assert_eq!(
        premises_of(rule("cut_Fm"), &cut, None).unwrap(),
        vec![seq("p |- p"), seq("p |- p")]
    );

    let ps = premises_of(
        rule("omega_wtri"),
        &sub(&[("Pi", "a"), ("X", "p"), ("Y", "q")]),
        Some(2),
    )
    .unwrap();
    assert_eq!(
        ps,
        vec![seq("a swtri1 p |- q"), seq("(a ;b1 a) swtri1 p |- q")]
    );
}

#[test]
fn sort_violation_is_reported() {
    let bad = sub(&[("Pi", "a ^op"), ("X", "p"), ("Y", "q")]);
    assert!(matches!(
        premises_of(rule("FP_btri"), &bad, None),
        Err(RuleError::SortViolation { .. })
    ));
    assert!(matches!(
        premises_of(rule("FP_btri"), &sub(&[("Pi", "a")]), None),
        Err(RuleError::Unbound { .. })
    ));
}

#[test]
fn audit_examples() {
    assert_eq!(
        audit_schema(rule("cut_Act")).outcome(Condition::C10),
        &Outcome::Pass
    );
    let id = audit_schema(rule("Id_p"));
    assert!(id.passed());
    assert_eq!(id.outcome(Condition::C1), &Outcome::Pass);
    assert_eq!(
        audit_schema(rule("wtri_L1")).outcome(Condition::C5),
        &Outcome::Pass
    );
}

#[test]
fn whole_catalogue_passes_audit() {
    for r in catalog().iter() {
        let report = audit_schema(r);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn every_derived_rule_is_simulated() {
    for r in catalog().iter().filter(|r| r.is_derived()) {
        if let Err(e) = simulate_derived(r) {
            panic!("{e}");
        }
    }
}

#[test]
fn patterns_type_check_and_inverses_link() {
    for r in catalog().iter() {
        for p in r.premise_patterns() {
            check_sequent(p).unwrap_or_else(|e| panic!("{}: {e}", r.id));
        }
        if let Some(inv) = &r.inverse {
            assert_eq!(rule(inv).inverse.as_deref(), Some(r.id.as_str()));
        }
    }
}

#[test]
fn index_ranges_are_expanded() {
    assert_eq!(catalog().find("act_wtri").len(), 4);
    assert!(catalog().get("act3_wtri").is_some());
    assert_eq!(catalog().find("wtri_L").len(), 2);
    assert!(catalog().get("Gri_L").is_some());
    assert!(rule("nec_fbox1").is_derived());
}

#[test]
fn double_line_rules_round_trip() {
    let r = rule("dp_comma_gt_L");
    let inv = rule(r.inverse.as_deref().unwrap());
    let start = seq("p , q |- p & q");
    let up = &match_conclusion(inv, &start)[0];
    let mid = premises_of(inv, up, None).unwrap().remove(0);
    assert_eq!(mid, seq("q |- p > p & q"));
    let down = &match_conclusion(r, &mid)[0];
    assert_eq!(premises_of(r, down, None).unwrap(), vec![start]);
}

#[test]
fn simulation_rejects_wrong_base() {
    let mut wrong = rule("nec_fbox1").clone();
    wrong.derived_from = vec!["nec_wtri1".into()];
    assert!(simulate_derived(&wrong).is_err());
    assert_eq!(simulate_derived(rule("nec_fbox1")).unwrap(), ["nec_btri1"]);
}
