//! Two diamond axioms, derived directly rather than through box/diamond
//! interdefinability.

use super::tactics::{r, rw, to, Kit};
use super::CorpusError;
use crate::proof_kernel::Proof;

type Built = Result<Proof, CorpusError>;

/// `(α cup1 β) wtri1 A |- (α wtri1 A) | (β wtri1 A)`.
pub(super) fn choice_lr(k: &Kit) -> Built {
    let (a, b, p) = (&k.a, &k.b, &k.p);
    let side = |act: &str| -> Built {
        let pr = r("wtri_R1", vec![k.id(act)?, k.id(p)?])?;
        r("dp_wtri_bleft1", vec![pr])
    };
    let cup = r("cup_L1", vec![side(a)?, side(b)?])?;
    let pr = r("dp_wtri_bleft1_inv", vec![r("choice_bleft_1", vec![cup])?])?;
    r("or_R", vec![r("wtri_L1", vec![pr])?])
}

/// `α+ wtri0 A |- (α wtri1 A) | (α wtri1 (α+ wtri0 A))`.
pub(super) fn fixpoint_lr(k: &Kit) -> Built {
    let (a, p) = (&k.a, &k.p);
    let d1 = format!("{a} wtri1 {p}");
    let d2 = format!("{a} wtri1 (({a} +) wtri0 {p})");
    let ctx = format!("({d1}) , ({d2})");

    let once = r("wtri_R1", vec![k.id(a)?, k.id(p)?])?;
    let once = rw("W2_R", &[("Y", k.st(&d2)?)], vec![once])?;
    let once = to(once, &k.seq(&format!("{a} |- ({ctx}) sbleft1 {p}"))?)?;

    let inner = r("wtri_R0", vec![r("plus_R", vec![k.id(a)?])?, k.id(p)?])?;
    let twice = r("wtri_R1", vec![k.id(a)?, inner])?;
    let twice = rw("W1_R", &[("Y", k.st(&d1)?)], vec![twice])?;
    let twice = to(
        twice,
        &k.seq(&format!("{a} swtri1 (({a} ^op) swtri0 {p}) |- {ctx}"))?,
    )?;
    let twice = r("act3_wtri", vec![twice])?;
    let twice = to(
        twice,
        &k.seq(&format!("{a} ;b3 ({a} ^op) |- ({ctx}) sbleft1 {p}"))?,
    )?;

    let pr = r("plus_L", vec![r("FP_bleft", vec![once, twice])?])?;
    let pr = to(pr, &k.seq(&format!("({a} +) swtri0 {p} |- {ctx}"))?)?;
    r("or_R", vec![r("wtri_L0", vec![pr])?])
}
