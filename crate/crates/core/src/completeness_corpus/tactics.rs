//! Small proof-building combinators shared by the corpus builders.

use std::collections::HashMap;

use super::{CorpusError, Params};
use crate::proof_kernel::{apply_rule, connect, display, expand_identity, Proof, DISPLAY_BUDGET};
use crate::rule_catalog::Substitution;
use crate::syntax::{
    parse_opterm, parse_sequent, parse_structure, Path, SeqPath, Sequent, Side, Signature,
    Structure,
};

/// Budget for the breadth-first fallback of [`to`].
const CONNECT_BUDGET: usize = 4096;

/// Parameter names plus the signature they induce.
pub(super) struct Kit {
    pub sig: Signature,
    /// Action α.
    pub a: String,
    /// Action β.
    pub b: String,
    /// Formula A.
    pub p: String,
    /// Formula B.
    pub q: String,
}

impl Kit {
    pub fn new(params: &Params) -> Result<Kit, CorpusError> {
        let sig = Signature::new(
            [params.a.clone(), params.b.clone()],
            [params.alpha.clone(), params.beta.clone()],
        )
        .map_err(|e| CorpusError::InvalidParams(e.to_string()))?;
        Ok(Kit {
            sig,
            a: params.alpha.clone(),
            b: params.beta.clone(),
            p: params.a.clone(),
            q: params.b.clone(),
        })
    }

    pub fn seq(&self, text: &str) -> Result<Sequent, CorpusError> {
        parse_sequent(text, &self.sig).map_err(|e| CorpusError::Internal(format!("`{text}`: {e}")))
    }

    pub fn st(&self, text: &str) -> Result<Structure, CorpusError> {
        parse_structure(text, &self.sig)
            .map_err(|e| CorpusError::Internal(format!("`{text}`: {e}")))
    }

    /// Identity on an operational term, expanded down to atoms.
    pub fn id(&self, term: &str) -> Result<Proof, CorpusError> {
        let t = parse_opterm(term, &self.sig)
            .map_err(|e| CorpusError::Internal(format!("`{term}`: {e}")))?;
        Ok(expand_identity(&t)?)
    }

    /// `A -> α fbox A`, the step formula of the induction axiom.
    pub fn step_formula(&self) -> String {
        format!("{p} -> ({a} fbox1 {p})", a = self.a, p = self.p)
    }
}

pub(super) fn r(rule: &str, kids: Vec<Proof>) -> Result<Proof, CorpusError> {
    Ok(apply_rule(rule, Substitution::new(), kids)?)
}

/// Apply a rule whose conclusion has metavariables not fixed by its premises.
pub(super) fn rw(
    rule: &str,
    binds: &[(&str, Structure)],
    kids: Vec<Proof>,
) -> Result<Proof, CorpusError> {
    let sub = binds
        .iter()
        .fold(Substitution::new(), |s, (k, v)| s.with_st(k, v.clone()));
    Ok(apply_rule(rule, sub, kids)?)
}

/// Apply a unary rule `k` times.
pub(super) fn repeat(rule: &str, k: usize, p: Proof) -> Result<Proof, CorpusError> {
    (0..k).try_fold(p, |p, _| r(rule, vec![p]))
}

/// `U |- x sfbox1 W` to `x sbtri1 U |- W`, `k` times.
pub(super) fn box_in(p: Proof, k: usize) -> Result<Proof, CorpusError> {
    repeat("dp_btri_fbox1_inv", k, p)
}

/// `x sbtri1 U |- W` to `U |- x sfbox1 W`, `k` times.
pub(super) fn box_out(p: Proof, k: usize) -> Result<Proof, CorpusError> {
    repeat("dp_btri_fbox1", k, p)
}

/// From `α^(▲ k-1)(U) |- α sfbox1 T` to `U |- α fbox1 (... α fbox1 T)` with
/// `k` operational boxes, alternating box introduction and display.
pub(super) fn close_boxes(p: Proof, k: usize) -> Result<Proof, CorpusError> {
    let mut p = r("fbox_R1", vec![p])?;
    for _ in 1..k {
        p = r("fbox_R1", vec![box_out(p, 1)?])?;
    }
    Ok(p)
}

/// Move `p` to the display-equivalent `goal`.
///
/// Both sequents are displayed on every substructure; a shared end sequent
/// gives the chain. Otherwise a plain breadth-first search is tried.
pub(super) fn to(p: Proof, goal: &Sequent) -> Result<Proof, CorpusError> {
    let from = p.conclusion().clone();
    if &from == goal {
        return Ok(p);
    }
    let mut ends = HashMap::new();
    for at in SeqPath::all(&from) {
        if let Ok(c) = display(&from, &at, DISPLAY_BUDGET) {
            ends.entry(c.end.clone()).or_insert(c);
        }
    }
    for at in SeqPath::all(goal) {
        if let Ok(down) = display(goal, &at, DISPLAY_BUDGET) {
            if let Some(up) = ends.get(&down.end) {
                return Ok(down.prove_start(up.prove_end(p)?)?);
            }
        }
    }
    let chain = connect(goal, &from, CONNECT_BUDGET).ok_or_else(|| CorpusError::NoDisplay {
        from: from.to_string(),
        goal: goal.to_string(),
    })?;
    Ok(chain.prove_start(p)?)
}

fn replace(st: &Structure, indices: &[usize], with: &Structure) -> Structure {
    match (indices.split_first(), st) {
        (None, _) => with.clone(),
        (Some((&k, rest)), Structure::App(c, args)) => {
            let mut args = args.clone();
            args[k] = replace(&args[k], rest, with);
            Structure::App(*c, args)
        }
        _ => st.clone(),
    }
}

/// Replace the antecedent-positioned substructure at `indices` of the
/// antecedent by the antecedent of `q`, where `q` proves `new |- old`:
/// display, cut, display back.
pub(super) fn rewrite_ant(p: Proof, indices: &[usize], q: Proof) -> Result<Proof, CorpusError> {
    let s = p.conclusion().clone();
    let bad = || CorpusError::Internal(format!("no substructure at ant.{indices:?} of `{s}`"));
    let at = SeqPath {
        side: Side::Ant,
        path: Path::from_indices(&s.ant, indices).ok_or_else(bad)?,
    };
    let shown = display(&s, &at, DISPLAY_BUDGET)?.prove_end(p)?;
    let new = q.conclusion().ant.clone();
    let cut = r("cut_Fm", vec![q, shown])?;
    let goal = Sequent {
        ant: replace(&s.ant, indices, &new),
        suc: s.suc.clone(),
    };
    let back = SeqPath {
        side: Side::Ant,
        path: Path::from_indices(&goal.ant, indices).ok_or_else(bad)?,
    };
    let chain = display(&goal, &back, DISPLAY_BUDGET)?;
    if &chain.end != cut.conclusion() {
        return to(cut, &goal);
    }
    Ok(chain.prove_start(cut)?)
}

/// From `(U , D) , D |- W` to `U , D |- W`. Exchange and associativity are
/// made explicit around the contraction.
pub(super) fn contract_tail(p: Proof) -> Result<Proof, CorpusError> {
    let p = r("E_L", vec![p])?; // D , (U , D) |- W
    let p = r("dp_comma_gt_L", vec![p])?; // U , D |- D > W
    let p = r("E_L", vec![p])?; // D , U |- D > W
    let p = r("dp_comma_gt_L_inv", vec![p])?; // D , (D , U) |- W
    let p = r("A_L", vec![p])?; // (D , D) , U |- W
    let p = r("dp_comma_lt_L", vec![p])?; // D , D |- W < U
    let p = r("C_L", vec![p])?;
    let p = r("dp_comma_lt_L_inv", vec![p])?; // D , U |- W
    r("E_L", vec![p])
}
