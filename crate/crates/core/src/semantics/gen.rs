//! Random terms, structures and PDL formulas for property tests and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{
    OpCon, OpTerm, PdlAction, PdlFormula, Position, Signature, Sort, StCon, Structure,
};
use crate::typing::counterpart;

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty choice")
}

fn leaf(rng: &mut impl Rng, sort: Sort, sig: &Signature) -> OpTerm {
    let props: Vec<&String> = sig.props.iter().collect();
    let acts: Vec<&String> = sig.acts.iter().collect();
    match sort {
        Sort::Fm => match rng.gen_range(0..6) {
            0 => OpTerm::top(),
            1 => OpTerm::bot(),
            _ => OpTerm::prop(pick(rng, &props)),
        },
        Sort::Act => OpTerm::act(pick(rng, &acts)),
        Sort::TAct => OpTerm::plus(OpTerm::act(pick(rng, &acts))),
    }
}

/// Random term of the logical language of `sort` with at most `depth` nested
/// constructors above the leaves. `sig` needs a proposition and an action.
pub fn random_opterm(rng: &mut impl Rng, sort: Sort, depth: usize, sig: &Signature) -> OpTerm {
    if depth == 0 || rng.gen_bool(0.35) {
        return leaf(rng, sort, sig);
    }
    let cons: Vec<OpCon> = OpCon::all()
        .iter()
        .copied()
        .filter(|c| {
            c.in_language() && c.arity() > 0 && c.signature().is_some_and(|(_, s)| s == sort)
        })
        .collect();
    let c = *pick(rng, &cons);
    let (args, _) = c.signature().expect("filtered");
    OpTerm::App(
        c,
        args.into_iter()
            .map(|s| random_opterm(rng, s, depth - 1, sig))
            .collect(),
    )
}

/// Random structure of `sort` built from non-virtual structural connectives,
/// with operational leaves of depth at most 1.
pub fn random_structure(
    rng: &mut impl Rng,
    sort: Sort,
    depth: usize,
    sig: &Signature,
) -> Structure {
    if depth == 0 || rng.gen_bool(0.4) {
        return Structure::Op(random_opterm(rng, sort, 1, sig));
    }
    let cons: Vec<StCon> = StCon::all()
        .iter()
        .copied()
        .filter(|c| !c.is_virtual() && c.signature().is_some_and(|(_, s)| s == sort))
        .collect();
    let c = *pick(rng, &cons);
    let (args, _) = c.signature().expect("filtered");
    Structure::App(
        c,
        args.into_iter()
            .map(|s| random_structure(rng, s, depth - 1, sig))
            .collect(),
    )
}

/// Random structure of `sort` that has an operational reading when placed at
/// `pos`.
pub fn random_readable_structure(
    rng: &mut impl Rng,
    sort: Sort,
    depth: usize,
    sig: &Signature,
    pos: Position,
) -> Structure {
    if depth == 0 || rng.gen_bool(0.4) {
        return Structure::Op(random_opterm(rng, sort, 1, sig));
    }
    let cons: Vec<StCon> = StCon::all()
        .iter()
        .copied()
        .filter(|c| counterpart(*c, pos).is_some() && c.signature().is_some_and(|(_, s)| s == sort))
        .collect();
    let Some(&c) = cons.choose(rng) else {
        return Structure::Op(random_opterm(rng, sort, 1, sig));
    };
    let (args, _) = c.signature().expect("filtered");
    let children = args
        .into_iter()
        .zip(c.flips())
        .map(|(s, &flip)| random_readable_structure(rng, s, depth - 1, sig, pos.flip_if(flip)))
        .collect();
    Structure::App(c, children)
}

/// Random PDL formula of depth at most `depth`, with the backward modalities
/// when `adjoint` is set.
pub fn random_pdl(rng: &mut impl Rng, depth: usize, sig: &Signature, adjoint: bool) -> PdlFormula {
    let props: Vec<&String> = sig.props.iter().collect();
    if depth <= 1 || rng.gen_bool(0.25) {
        return PdlFormula::atom(pick(rng, &props));
    }
    let sub = |rng: &mut _| random_pdl(rng, depth - 1, sig, adjoint);
    let kinds = if adjoint { 8 } else { 6 };
    match rng.gen_range(0..kinds) {
        0 => PdlFormula::neg(sub(rng)),
        1 => PdlFormula::or(sub(rng), sub(rng)),
        2 => PdlFormula::and(sub(rng), sub(rng)),
        3 | 4 => PdlFormula::diamond(random_pdl_action(rng, depth - 1, sig, adjoint), sub(rng)),
        5 => PdlFormula::boxed(random_pdl_action(rng, depth - 1, sig, adjoint), sub(rng)),
        6 => PdlFormula::back_diamond(random_pdl_action(rng, depth - 1, sig, adjoint), sub(rng)),
        _ => PdlFormula::back_box(random_pdl_action(rng, depth - 1, sig, adjoint), sub(rng)),
    }
}

pub fn random_pdl_action(
    rng: &mut impl Rng,
    depth: usize,
    sig: &Signature,
    adjoint: bool,
) -> PdlAction {
    let acts: Vec<&String> = sig.acts.iter().collect();
    if depth <= 1 || rng.gen_bool(0.3) {
        return PdlAction::atom(pick(rng, &acts));
    }
    let sub = |rng: &mut _| random_pdl_action(rng, depth - 1, sig, adjoint);
    match rng.gen_range(0..4) {
        0 => PdlAction::seq(sub(rng), sub(rng)),
        1 => PdlAction::choice(sub(rng), sub(rng)),
        2 => PdlAction::test(random_pdl(rng, depth - 1, sig, adjoint)),
        _ => PdlAction::plus(sub(rng)),
    }
}
