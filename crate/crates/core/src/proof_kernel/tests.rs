use super::*;
use crate::rule_catalog::iterate_semi;
use crate::syntax::{parse_sequent, parse_structure, SeqPath, Signature, Structure};

fn sig() -> Signature {
    Signature::new(["p", "q"], ["a", "b"]).unwrap()
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text, &sig()).unwrap()
}

fn st(text: &str) -> Structure {
    parse_structure(text, &sig()).unwrap()
}

fn id_p() -> Proof {
    axiom("Id_p", seq("p |- p")).unwrap()
}

/// `n |-> a^(n) swtri1 I |- p > p`, failing past `limit`.
struct NecFamily {
    limit: usize,
}

impl OmegaFamily for NecFamily {
    fn name(&self) -> &str {
        "nec_test"
    }
    fn args(&self) -> serde_json::Value {
        serde_json::json!({ "limit": self.limit })
    }
    fn proof(&self, n: usize) -> Result<Proof, String> {
        if n > self.limit {
            return Err(format!("limit {} reached", self.limit));
        }
        let top =
            apply_rule("I2_L", Substitution::new(), vec![id_p()]).map_err(|e| e.to_string())?;
        let x = iterate_semi(&st("a"), n);
        apply_rule("nec_wtri1", Substitution::new().with_st("x", x), vec![top])
            .map_err(|e| e.to_string())
    }
}

#[test]
fn axiom_checks() {
    let v = check(&id_p(), 1);
    assert!(v.ok(), "{v}");
    assert!(axiom("Id_p", seq("p & q |- p & q")).is_err());
    assert!(axiom("plus_R", seq("p |- p")).is_err());
}

#[test]
fn plus_r_application() {
    let leaf = axiom("Id_pi", seq("a |- a")).unwrap();
    let s = Substitution::new()
        .with_st("Psi", st("a"))
        .with_op("alpha", crate::syntax::OpTerm::act("a"));
    let p = apply_rule("plus_R", s, vec![leaf]).unwrap();
    assert_eq!(p.conclusion(), &seq("a ^op |- a+"));
    assert!(check(&p, 1).ok());
}

#[test]
fn contraction_application() {
    let weak = apply_rule(
        "W1_L",
        Substitution::new().with_st("Y", st("p")),
        vec![id_p()],
    )
    .unwrap();
    assert_eq!(weak.conclusion(), &seq("p |- p < p"));
    let comma = apply_rule("dp_comma_lt_L_inv", Substitution::new(), vec![weak]).unwrap();
    assert_eq!(comma.conclusion(), &seq("p , p |- p"));
    let p = apply_rule("C_L", Substitution::new(), vec![comma]).unwrap();
    assert_eq!(p.conclusion(), &seq("p |- p"));
    assert!(check(&p, 1).ok());
}

#[test]
fn wrong_child_is_rejected() {
    let e = apply_rule("C_L", Substitution::new(), vec![id_p()]).unwrap_err();
    assert!(matches!(e.reason, Reason::BadMatch { .. }), "{e}");
    assert_eq!(e.path, vec![0]);

    let forged = Proof::Rule {
        rule: "C_L".into(),
        subst: Substitution::new()
            .with_st("X", st("p"))
            .with_st("Y", st("p")),
        children: vec![id_p()],
        conclusion: seq("p |- p"),
    };
    let v = check(&forged, 1);
    assert!(
        matches!(
            v.failure,
            Some(Failure {
                reason: Reason::BadMatch { .. },
                ..
            })
        ),
        "{v}"
    );

    let unknown = Proof::Axiom {
        rule: "foo".into(),
        conclusion: seq("p |- p"),
    };
    assert_eq!(
        check(&unknown, 1).failure.unwrap().reason,
        Reason::UnknownRule("foo".into())
    );
}

#[test]
fn omega_nodes() {
    let fam: Arc<dyn OmegaFamily> = Arc::new(NecFamily { limit: 10 });
    let p = apply_omega("omega_wtri", Substitution::new(), fam, 4).unwrap();
    assert_eq!(p.conclusion(), &seq("a ^op swtri0 I |- p > p"));
    assert!(check(&p, 6).ok());

    let short: Arc<dyn OmegaFamily> = Arc::new(NecFamily { limit: 2 });
    let p = apply_omega("omega_wtri", Substitution::new(), short, 2).unwrap();
    let v = check(&p, 3);
    assert!(
        matches!(
            v.failure,
            Some(Failure {
                reason: Reason::OmegaExhausted { n: 3, .. },
                ..
            })
        ),
        "{v}"
    );
}

#[test]
fn display_examples() {
    let s = seq("a swtri1 p |- q");
    let chain = display(&s, &SeqPath::parse("ant.1", &s).unwrap(), DISPLAY_BUDGET).unwrap();
    assert_eq!(chain.end, seq("p |- a sbbox1 q"));
    assert_eq!(chain.steps.len(), 1);
    assert!(chain.steps[0].rule.starts_with("dp_wtri_bbox1"));

    let s = seq("p |- q");
    let chain = display(&s, &SeqPath::parse("ant", &s).unwrap(), DISPLAY_BUDGET).unwrap();
    assert!(chain.steps.is_empty());

    let s = seq("a ^op |- b+");
    let chain = display(&s, &SeqPath::parse("ant.0", &s).unwrap(), DISPLAY_BUDGET).unwrap();
    assert_eq!(chain.end, seq("a |- b+ ^om"));
}

#[test]
fn display_chains_transport_proofs() {
    let s = seq("p , p |- p");
    let chain = display(&s, &SeqPath::parse("ant.1", &s).unwrap(), DISPLAY_BUDGET).unwrap();
    let weak = apply_rule(
        "W1_L",
        Substitution::new().with_st("Y", st("p")),
        vec![id_p()],
    )
    .unwrap();
    let start = apply_rule("dp_comma_lt_L_inv", Substitution::new(), vec![weak]).unwrap();
    let end = chain.prove_end(start).unwrap();
    assert_eq!(end.conclusion(), &chain.end);
    let back = chain.prove_start(end).unwrap();
    assert_eq!(back.conclusion(), &s);
    assert!(check(&back, 1).ok());
}

#[test]
fn scripts_round_trip() {
    let weak = apply_rule(
        "W1_L",
        Substitution::new().with_st("Y", st("q")),
        vec![id_p()],
    )
    .unwrap();
    let text = save_script(&weak);
    let none = |_: &str, _: &serde_json::Value| None;
    assert_eq!(load_script(&text, &none).unwrap(), weak);

    let bad = text.replace("\"W1_L\"", "\"foo\"");
    assert!(matches!(
        load_script(&bad, &none),
        Err(ScriptError::UnknownRule { .. })
    ));

    let fam: Arc<dyn OmegaFamily> = Arc::new(NecFamily { limit: 10 });
    let p = apply_omega("omega_wtri", Substitution::new(), fam, 3).unwrap();
    let text = save_script(&p);
    let resolve = |name: &str, args: &serde_json::Value| -> Option<Arc<dyn OmegaFamily>> {
        let limit = args["limit"].as_u64()? as usize;
        (name == "nec_test").then(|| Arc::new(NecFamily { limit }) as Arc<dyn OmegaFamily>)
    };
    let back = load_script(&text, &resolve).unwrap();
    assert_eq!(back, p);
    assert!(check(&back, 5).ok());
    assert!(matches!(
        load_script(&text, &none),
        Err(ScriptError::UnknownGenerator { .. })
    ));
}

#[test]
fn latex_export() {
    let p = apply_rule(
        "W1_L",
        Substitution::new().with_st("Y", st("q")),
        vec![id_p()],
    )
    .unwrap();
    let tex = to_bussproofs(&p);
    assert!(tex.starts_with("\\begin{prooftree}"));
    assert!(tex.contains("\\UnaryInfC"));
    assert!(tex.contains("W1\\_L"));
}
