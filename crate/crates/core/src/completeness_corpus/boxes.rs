//! Box axioms other than induction.

use super::tactics::{box_in, box_out, r, rw, to, Kit};
use super::CorpusError;
use crate::proof_kernel::Proof;

type Built = Result<Proof, CorpusError>;

/// `α fbox A |- α sfbox A`.
fn unbox(k: &Kit, act: &str, fm: &str) -> Built {
    r("fbox_L1", vec![k.id(act)?, k.id(fm)?])
}

pub(super) fn k_axiom(k: &Kit) -> Built {
    let (a, p, q) = (&k.a, &k.p, &k.q);
    // α ▲ (α fbox A) |- A
    let left = box_in(unbox(k, a, p)?, 1)?;
    let imp = r("imp_L", vec![left, k.id(q)?])?;
    let boxed = r("fbox_L1", vec![k.id(a)?, imp])?;
    let pr = r("dp_comma_gt_L_inv", vec![box_in(boxed, 1)?])?;
    let pr = box_out(r("mon_btri1", vec![pr])?, 1)?;
    let pr = r("fbox_R1", vec![pr])?;
    let pr = to(
        pr,
        &k.seq(&format!(
            "{a} fbox1 ({p} -> {q}) |- ({a} fbox1 {p}) > ({a} fbox1 {q})"
        ))?,
    )?;
    r("imp_R", vec![pr])
}

pub(super) fn choice_lr(k: &Kit) -> Built {
    let (a, b, p) = (&k.a, &k.b, &k.p);
    let left = rw("W_2R1", &[("z", k.st(b)?)], vec![k.id(a)?])?;
    let left = r("cup_R1", vec![left])?;
    let right = rw("W_1R1", &[("z", k.st(a)?)], vec![k.id(b)?])?;
    let right = r("cup_R1", vec![right])?;
    let branch = |act: Proof| -> Built { r("fbox_R1", vec![r("fbox_L1", vec![act, k.id(p)?])?]) };
    let both = r("and_R", vec![branch(left)?, branch(right)?])?;
    r("C_L", vec![both])
}

pub(super) fn choice_rl(k: &Kit) -> Built {
    let (a, b, p) = (&k.a, &k.b, &k.p);
    // α |- A swleft1 (α fbox A)
    let side = |act: &str| -> Built { r("dp_btri_wleft1", vec![box_in(unbox(k, act, p)?, 1)?]) };
    let cup = r("cup_L1", vec![side(a)?, side(b)?])?;
    let pr = r("choice_wleft_2", vec![cup])?;
    let pr = box_out(r("dp_btri_wleft1_inv", vec![pr])?, 1)?;
    r("and_L", vec![r("fbox_R1", vec![pr])?])
}

pub(super) fn composition_lr(k: &Kit) -> Built {
    let (a, b, p) = (&k.a, &k.b, &k.p);
    let seq = r("seq_R1", vec![k.id(a)?, k.id(b)?])?;
    let pr = r("fbox_L1", vec![seq, k.id(p)?])?;
    let pr = r("act1_fbox_inv", vec![pr])?;
    let pr = box_out(r("fbox_R1", vec![box_in(pr, 1)?])?, 1)?;
    r("fbox_R1", vec![pr])
}

pub(super) fn composition_rl(k: &Kit) -> Built {
    let (a, b, p) = (&k.a, &k.b, &k.p);
    let inner = unbox(k, b, p)?;
    let pr = r("fbox_L1", vec![k.id(a)?, inner])?;
    let pr = r("act1_fbox", vec![pr])?;
    let pr = r("dp_btri_wleft1", vec![box_in(pr, 1)?])?;
    let pr = r("seq_L1", vec![pr])?;
    let pr = box_out(r("dp_btri_wleft1_inv", vec![pr])?, 1)?;
    r("fbox_R1", vec![pr])
}

pub(super) fn test_lr(k: &Kit) -> Built {
    let (p, q) = (&k.p, &k.q);
    let test = r("test_R1", vec![k.id(p)?])?;
    let pr = r("fbox_L1", vec![test, k.id(q)?])?;
    let pr = r("test_fbox1_inv", vec![pr])?;
    r("imp_R", vec![pr])
}

pub(super) fn test_rl(k: &Kit) -> Built {
    let (p, q) = (&k.p, &k.q);
    let pr = r("imp_L", vec![k.id(p)?, k.id(q)?])?;
    let pr = r("test_fbox1", vec![pr])?;
    let pr = r("dp_btri_wleft1", vec![box_in(pr, 1)?])?;
    let pr = r("test_L1", vec![pr])?;
    let pr = box_out(r("dp_btri_wleft1_inv", vec![pr])?, 1)?;
    r("fbox_R1", vec![pr])
}

pub(super) fn distributivity_lr(k: &Kit) -> Built {
    let (a, p, q) = (&k.a, &k.p, &k.q);
    // A , B |- A and A , B |- B by weakening.
    let first = r(
        "dp_comma_gt_L_inv",
        vec![rw("W2_L", &[("Y", k.st(q)?)], vec![k.id(p)?])?],
    )?;
    let second = r(
        "dp_comma_lt_L_inv",
        vec![rw("W1_L", &[("Y", k.st(p)?)], vec![k.id(q)?])?],
    )?;
    let branch = |pr: Proof| -> Built {
        let pr = r("fbox_L1", vec![k.id(a)?, r("and_L", vec![pr])?])?;
        r("fbox_R1", vec![pr])
    };
    let both = r("and_R", vec![branch(first)?, branch(second)?])?;
    r("C_L", vec![both])
}

pub(super) fn distributivity_rl(k: &Kit) -> Built {
    let (a, p, q) = (&k.a, &k.p, &k.q);
    let left = box_in(unbox(k, a, p)?, 1)?;
    let right = box_in(unbox(k, a, q)?, 1)?;
    let pr = r("mon_btri1", vec![r("and_R", vec![left, right])?])?;
    let pr = r("fbox_R1", vec![box_out(pr, 1)?])?;
    r("and_L", vec![pr])
}

/// `α+ fbox A |- (α fbox A) & (α fbox (α+ fbox A))`, following the literal
/// absorption step on `α⊕ ;b4 α⁺`.
pub(super) fn fixpoint_lr(k: &Kit) -> Built {
    let (a, p) = (&k.a, &k.p);
    let unit = || -> Built { r("plus_R", vec![k.id(a)?]) };
    let first = r(
        "fbox_R1",
        vec![r("dem_fbox", vec![r("fbox_L0", vec![unit()?, k.id(p)?])?])?],
    )?;

    let absorbed = r("abs4", vec![unit()?, k.id(&format!("{a} +"))?])?;
    let pr = r("fbox_L0", vec![r("dp_plus_inv", vec![absorbed])?, k.id(p)?])?;
    let pr = r("act4_fbox_inv", vec![r("dem_fbox", vec![pr])?])?;
    let pr = r("fbox_R0", vec![r("dp_btri_fbox0_inv", vec![pr])?])?;
    let pr = r("dem_fbox", vec![r("dp_btri_fbox0", vec![pr])?])?;
    let second = r("fbox_R1", vec![pr])?;
    r("C_L", vec![r("and_R", vec![first, second])?])
}

/// `(α fbox A) & (α fbox (α+ fbox A)) |- α+ fbox A` through the fixed-point
/// rule for the white left arrow.
pub(super) fn fixpoint_rl(k: &Kit) -> Built {
    let (a, p) = (&k.a, &k.p);
    let d1 = format!("{a} fbox1 {p}");
    let d2 = format!("{a} fbox1 (({a} +) fbox0 {p})");
    let ctx = format!("({d1}) , ({d2})");
    let once = rw("W2_L", &[("Y", k.st(&d2)?)], vec![unbox(k, a, p)?])?;
    let once = to(once, &k.seq(&format!("{a} |- {p} swleft1 ({ctx})"))?)?;

    let plus = r("fbox_L0", vec![r("plus_R", vec![k.id(a)?])?, k.id(p)?])?;
    let twice = r("act3_fbox", vec![r("fbox_L1", vec![k.id(a)?, plus])?])?;
    let twice = rw("W1_L", &[("Y", k.st(&d1)?)], vec![twice])?;
    let twice = to(
        twice,
        &k.seq(&format!("{a} ;b3 ({a} ^op) |- {p} swleft1 ({ctx})"))?,
    )?;

    let pr = r("plus_L", vec![r("FP_wleft", vec![once, twice])?])?;
    let pr = to(pr, &k.seq(&format!("{ctx} |- ({a} +) sfbox0 {p}"))?)?;
    r("and_L", vec![r("fbox_R0", vec![pr])?])
}
