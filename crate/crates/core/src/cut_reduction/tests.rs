use super::*;
use crate::proof_kernel::{axiom, check, Reason};
use crate::syntax::{parse_opterm, parse_sequent, Signature};
use crate::typing::check_sequent;

fn sig() -> Signature {
    Signature::new(["p", "q"], ["a", "b"]).unwrap()
}

fn term(text: &str) -> OpTerm {
    parse_opterm(text, &sig()).unwrap()
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text, &sig()).unwrap()
}

fn id_p() -> Proof {
    axiom("Id_p", seq("p |- p")).unwrap()
}

fn every_sequent_uniform(p: &Proof) -> bool {
    let mut ok = true;
    p.visit(1, &mut |n| ok &= check_sequent(n.conclusion()).is_ok());
    ok
}

/// Reduce the principal cut at the root once and check the invariants.
fn one_step(t: &str) -> Proof {
    let p = principal_fixture(&term(t)).unwrap();
    assert!(check(&p, 1).ok(), "fixture for {t}");
    assert!(
        is_principal(&p, &[]).unwrap(),
        "fixture for {t} is principal"
    );
    let q = principal_step(&p, &[]).unwrap_or_else(|e| panic!("{t}: {e}"));
    assert_eq!(q.conclusion(), p.conclusion(), "{t}");
    let v = check(&q, 1);
    assert!(v.ok(), "{t}: {v}");
    assert!(
        ranks_descend(&cut_ranks(&p), &cut_ranks(&q)),
        "{t}: {:?} -> {:?}",
        cut_ranks(&p),
        cut_ranks(&q)
    );
    assert!(every_sequent_uniform(&q), "{t}");
    q
}

#[test]
fn atom_cut_collapses() {
    let p = apply_rule("cut_Fm", Substitution::new(), vec![id_p(), id_p()]).unwrap();
    assert!(is_principal(&p, &[]).unwrap());
    assert_eq!(principal_step(&p, &[]).unwrap(), id_p());
    let q = one_step("a");
    assert_eq!(q.rule(), "Id_pi");
}

#[test]
fn weakening_premise_is_not_principal() {
    let weak = apply_rule(
        "W1_R",
        Substitution::new().with_st("Y", crate::syntax::Structure::Op(term("p"))),
        vec![id_p()],
    )
    .unwrap();
    assert_eq!(weak.conclusion(), &seq("p < p |- p"));
    let p = apply_rule("cut_Fm", Substitution::new(), vec![weak, id_p()]).unwrap();
    assert!(!is_principal(&p, &[]).unwrap());
    assert!(is_identity_cut(&p, &[]).unwrap());
    assert!(matches!(
        is_principal(&id_p(), &[]),
        Err(CutError::NotACut { .. })
    ));
}

#[test]
fn top_cut_keeps_the_premise() {
    let top = axiom("top_R", seq("I |- top")).unwrap();
    let inner = apply_rule("I2_L", Substitution::new(), vec![id_p()]).unwrap();
    let left = apply_rule("top_L", Substitution::new(), vec![inner.clone()]).unwrap();
    let p = apply_rule("cut_Fm", Substitution::new(), vec![top, left]).unwrap();
    assert!(is_principal(&p, &[]).unwrap());
    assert_eq!(principal_step(&p, &[]).unwrap(), inner);
}

#[test]
fn diamond_cut_splits_into_action_and_formula_cuts() {
    let q = one_step("a wtri1 p");
    let mut sorts = Vec::new();
    q.visit(1, &mut |n| {
        if n.rule().starts_with("cut_") {
            sorts.push(n.rule().to_string());
        }
    });
    sorts.sort();
    assert_eq!(sorts, ["cut_Act", "cut_Fm"]);
}

#[test]
fn every_connective_reduces() {
    for t in [
        "top",
        "bot",
        "p & q",
        "p | q",
        "p -> q",
        "a wtri1 p",
        "a + wtri0 p",
        "a btri1 p",
        "a + btri0 q",
        "a fbox1 p",
        "a + fbox0 p",
        "a bbox1 p",
        "a + bbox0 p",
        "p ?1",
        "p ?0",
        "a +",
        "a + -",
        "a ;1 b",
    ] {
        one_step(t);
    }
}

#[test]
fn nested_diamond_needs_three_steps() {
    let p = principal_fixture(&term("a wtri1 p")).unwrap();
    let (q, report) = reduce(&p, 100);
    assert_eq!(report.steps, 3, "{report}");
    assert_eq!(report.residual, 0);
    assert!(cut_nodes(&q).is_empty());
    assert!(report.rechecked);
    assert_eq!(q.conclusion(), p.conclusion());
    for w in report.ranks.windows(2) {
        assert!(ranks_descend(&w[0], &w[1]), "{:?}", report.ranks);
    }
}

#[test]
fn atomic_subterms_reduce_to_cut_free() {
    for t in ["p & q", "a fbox1 q", "p ?0", "a ;1 b", "a bbox1 p"] {
        let p = principal_fixture(&term(t)).unwrap();
        let (q, report) = reduce(&p, 100);
        assert!(cut_nodes(&q).is_empty(), "{t}: {report}");
        assert_eq!(report.steps, 1 + term(t).args().len(), "{t}");
    }
}

#[test]
fn compound_subterms_leave_parametric_cuts() {
    for t in [
        "(a ;1 b) + fbox0 (p & (q -> p))",
        "(p ?1 ;1 a) btri1 (a + wtri0 q)",
        "a + - + -",
    ] {
        let p = principal_fixture(&term(t)).unwrap();
        let (q, report) = reduce(&p, 1000);
        assert!(report.steps >= 1, "{t}");
        assert!(
            report.unsupported.is_empty(),
            "{t}: {:?}",
            report.unsupported
        );
        assert!(!report.fuel_exhausted);
        assert!(report.rechecked);
        assert_eq!(q.conclusion(), p.conclusion());
        assert_eq!(report.residual, cut_nodes(&q).len(), "{t}");
        for w in report.ranks.windows(2) {
            assert!(ranks_descend(&w[0], &w[1]), "{t}: {:?}", report.ranks);
        }
        // What is left sits under display postulates on at least one side.
        for n in cut_nodes(&q) {
            assert!(!is_principal(&q, &n).unwrap() && !is_identity_cut(&q, &n).unwrap());
        }
    }
}

#[test]
fn fuel_bounds_the_driver() {
    let p = principal_fixture(&term("a wtri1 p")).unwrap();
    let (q, report) = reduce(&p, 0);
    assert_eq!(q, p);
    assert!(report.fuel_exhausted);
    assert_eq!(report.steps, 0);
    let (_, report) = reduce(&p, 1);
    assert!(report.fuel_exhausted);
    assert_eq!(report.steps, 1);
}

#[test]
fn non_reducible_cuts_are_residual() {
    let weak = apply_rule(
        "W1_R",
        Substitution::new().with_st("Y", crate::syntax::Structure::Op(term("q"))),
        vec![id_p()],
    )
    .unwrap();
    let other = apply_rule(
        "W1_L",
        Substitution::new().with_st("Y", crate::syntax::Structure::Op(term("q"))),
        vec![id_p()],
    )
    .unwrap();
    // `p < p |- q` against `q |- p < p`: the cut on q is parametric on both sides.
    let p = apply_rule("cut_Fm", Substitution::new(), vec![weak, other]).unwrap();
    assert!(!is_principal(&p, &[]).unwrap());
    assert!(matches!(
        principal_step(&p, &[]),
        Err(CutError::NotPrincipal(_))
    ));
    let (q, report) = reduce(&p, 10);
    assert_eq!(q, p);
    assert_eq!(report.residual, 1);
    assert!(!report.fuel_exhausted);
}

#[test]
fn kernel_errors_propagate() {
    let e = CutError::from(crate::proof_kernel::Failure {
        path: vec![],
        reason: Reason::UnknownRule("x".into()),
    });
    assert!(e.to_string().contains("unknown rule"));
}
