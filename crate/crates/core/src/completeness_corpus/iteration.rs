//! Schematic lemmas about positive iteration, and the induction axiom.
//!
//! Notation in comments: `Cn(F)` is `α fbox1 (... α fbox1 F)` with `n` boxes,
//! `▲n(U)` and `▷n(W)` are the structural counterparts, `B` is
//! `A -> α fbox A` and `D+` is `α+ fbox0 B`.

use std::sync::Arc;

use super::tactics::{box_in, box_out, close_boxes, contract_tail, r, rewrite_ant, rw, to, Kit};
use super::{CorpusError, Params};
use crate::proof_kernel::{apply_omega, OmegaFamily, Proof};
use crate::rule_catalog::Substitution;

type Built = Result<Proof, CorpusError>;

/// `▲n(Cn(A) , Cn(B)) |- ▷(n-1)(α sfbox1 A)` after spreading `▲` over the
/// comma `n` times.
fn spread(k: &Kit, n: usize) -> Built {
    let (a, p) = (&k.a, &k.p);
    let unbox = || -> Built { r("fbox_L1", vec![k.id(a)?, k.id(p)?]) };
    // Cn(A) |- ▷n(A), then ▲n(Cn(A)) |- A.
    let left = (1..n).try_fold(unbox()?, |acc, _| r("fbox_L1", vec![k.id(a)?, acc]))?;
    let left = box_in(left, n)?;
    // B |- ▲n(Cn(A)) > α sfbox1 A, boxed n times and displayed.
    let right = r("imp_L", vec![left, unbox()?])?;
    let right = (0..n).try_fold(right, |acc, _| r("fbox_L1", vec![k.id(a)?, acc]))?;
    let mut acc = r("dp_comma_gt_L_inv", vec![box_in(right, n)?])?;
    for level in (1..=n).rev() {
        acc = r("mon_btri1", vec![acc])?;
        if level > 1 {
            acc = box_out(acc, 1)?;
        }
    }
    Ok(acc)
}

/// `Cn(A) , Cn(B) |- ▷(n+1)(A)`.
pub(super) fn box_step(k: &Kit, n: usize) -> Built {
    box_out(spread(k, n)?, 1)
}

/// `Cn(A) , Cn(B) |- C(n+1)(A)`.
pub(super) fn box_step_closed(k: &Kit, n: usize) -> Built {
    close_boxes(box_in(spread(k, n)?, n - 1)?, n + 1)
}

/// `C1(A) , C1(B) , ... , Cn(B) |- ▷(n+1)(A)`, with commas nested to the left.
/// Uses exactly `n - 1` cuts.
pub(super) fn chain(k: &Kit, n: usize) -> Built {
    if n == 1 {
        return box_step(k, 1);
    }
    let mut acc = box_step_closed(k, 1)?;
    for i in 2..=n {
        let link = if i < n {
            box_step_closed(k, i)?
        } else {
            box_step(k, n)?
        };
        let link = r("dp_comma_lt_L", vec![link])?;
        acc = r("dp_comma_lt_L_inv", vec![r("cut_Fm", vec![acc, link])?])?;
    }
    Ok(acc)
}

/// `α+ fbox0 C |- Cn(C)`.
pub(super) fn plus_unfold(k: &Kit, n: usize, c: &str) -> Built {
    let a = &k.a;
    let unit = || -> Built { r("plus_R", vec![k.id(a)?]) };
    if n == 1 {
        let pr = r("dem_fbox", vec![r("fbox_L0", vec![unit()?, k.id(c)?])?])?;
        return r("fbox_R1", vec![pr]);
    }
    // α |- α+ ^om, absorbed into α^(n) |- α+ ^om.
    let once = r("dp_plus", vec![unit()?])?;
    let iterated = (1..n).try_fold(once.clone(), |acc, _| r("abs1", vec![once.clone(), acc]))?;
    let pr = r("fbox_L0", vec![r("dp_plus_inv", vec![iterated])?, k.id(c)?])?;
    let mut pr = r("dem_fbox", vec![pr])?;
    for _ in 1..n {
        pr = box_in(r("act1_fbox_inv", vec![pr])?, 1)?;
    }
    close_boxes(pr, n)
}

/// `C1(A) , D+ |- ▷n(A)`: the chain with every `Di` cut against `D+` and
/// the copies of `D+` contracted.
pub(super) fn plus_chain(k: &Kit, n: usize) -> Built {
    let (a, p) = (&k.a, &k.p);
    let d_plus = format!("({a} +) fbox0 ({})", k.step_formula());
    if n == 1 {
        let pr = rw(
            "W2_L",
            &[("Y", k.st(&d_plus)?)],
            vec![r("fbox_L1", vec![k.id(a)?, k.id(p)?])?],
        )?;
        return r("dp_comma_gt_L_inv", vec![pr]);
    }
    // The chain for n - 1 ends in ▷n(A).
    let m = n - 1;
    let mut pr = chain(k, m)?;
    for i in 1..=m {
        let at: Vec<usize> = std::iter::repeat_n(0, m - i).chain([1]).collect();
        pr = rewrite_ant(pr, &at, plus_unfold(k, i, &k.step_formula())?)?;
    }
    for _ in 1..m {
        pr = contract_tail(pr)?;
    }
    Ok(pr)
}

/// `α^(n) ▲ (α fbox A , α+ fbox (A -> α fbox A)) |- A`.
pub(super) fn induction_premise(k: &Kit, n: usize) -> Built {
    let pr = box_in(plus_chain(k, n)?, n)?;
    (1..n).try_fold(pr, |acc, _| r("act1_btri", vec![acc]))
}

/// Premises of the ω-node in the induction derivation.
pub struct InductionFamily {
    params: Params,
}

impl InductionFamily {
    /// Registry name in proof scripts.
    pub const NAME: &'static str = "induction_premise";

    pub fn new(params: Params) -> InductionFamily {
        InductionFamily { params }
    }
}

impl OmegaFamily for InductionFamily {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn args(&self) -> serde_json::Value {
        serde_json::to_value(&self.params).expect("parameters serialize")
    }

    fn proof(&self, n: usize) -> Result<Proof, String> {
        if n == 0 {
            return Err("family members start at 1".into());
        }
        let k = Kit::new(&self.params).map_err(|e| e.to_string())?;
        induction_premise(&k, n).map_err(|e| e.to_string())
    }
}

pub(super) fn induction(k: &Kit, params: &Params) -> Built {
    let (a, p) = (&k.a, &k.p);
    let ctx = format!("({a} fbox1 {p}) , (({a} +) fbox0 ({}))", k.step_formula());
    let family = Arc::new(InductionFamily::new(params.clone()));
    let pr = apply_omega(
        "omega_btri",
        Substitution::new(),
        family,
        params.omega_bound,
    )?;
    let pr = to(pr, &k.seq(&format!("{a} ^op |- {p} vwleft0 ({ctx})"))?)?;
    let pr = r("plus_L", vec![pr])?;
    let pr = to(pr, &k.seq(&format!("{ctx} |- ({a} +) sfbox0 {p}"))?)?;
    r("and_L", vec![r("fbox_R0", vec![pr])?])
}
