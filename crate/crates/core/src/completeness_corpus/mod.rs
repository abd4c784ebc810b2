//! Programmatic derivations of the box axioms of PDL and of the iteration
//! lemmas behind the induction axiom.
//!
//! Every builder assembles its proof from rule applications and hands the
//! result to [`check`] before returning it. Schematic lemmas take their
//! parameter `n` as a loop bound, so each `n` gets its own exact derivation.
//!
//! Steps the kernel needs but a hand derivation leaves implicit are spelled
//! out where they occur:
//! - `plus_chain` contracts copies of `α+ fbox (A -> α fbox A)` through an
//!   explicit exchange, display, associativity and contraction sequence
//!   (`tactics::contract_tail`);
//! - `plus_chain` at `n` uses `chain` at `n - 1`, whose succedent already
//!   has `n` structural boxes;
//! - every cut inserted by `plus_chain` sits between a display chain down to
//!   the replaced formula and one back up (`tactics::rewrite_ant`).

mod boxes;
mod diamonds;
mod iteration;
mod tactics;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use iteration::InductionFamily;

use crate::proof_kernel::{check, DisplayError, Failure, OmegaFamily, Proof};
use crate::syntax::Sequent;
use tactics::Kit;

/// Errors raised by the corpus builders.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("lemma index must be at least 1, got {0}")]
    BadIndex(usize),
    #[error(transparent)]
    Kernel(#[from] Failure),
    #[error(transparent)]
    Display(#[from] DisplayError),
    #[error("no display chain from `{from}` to `{goal}`")]
    NoDisplay { from: String, goal: String },
    #[error("built proof ends in `{found}`, expected `{expected}`")]
    WrongConclusion { expected: String, found: String },
    #[error("kernel rejected the built proof: {0}")]
    Rejected(String),
    #[error("builder bug: {0}")]
    Internal(String),
}

/// Atom names for α, β, A and B, plus the ω bound used by the induction
/// derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub alpha: String,
    pub beta: String,
    pub a: String,
    pub b: String,
    pub omega_bound: usize,
}

impl Default for Params {
    fn default() -> Params {
        Params {
            alpha: "a".into(),
            beta: "b".into(),
            a: "p".into(),
            b: "q".into(),
            omega_bound: 6,
        }
    }
}

impl Params {
    fn validate(&self) -> Result<Kit, CorpusError> {
        if self.omega_bound == 0 {
            return Err(CorpusError::InvalidParams(
                "omega bound must be at least 1".into(),
            ));
        }
        Kit::new(self)
    }
}

/// The box axioms, each direction separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    K,
    BoxChoiceLR,
    BoxChoiceRL,
    BoxCompositionLR,
    BoxCompositionRL,
    BoxTestLR,
    BoxTestRL,
    BoxDistributivityLR,
    BoxDistributivityRL,
    BoxFixpointLR,
    BoxFixpointRL,
    BoxInduction,
    /// Diamond choice, left to right.
    DiamondChoiceLR,
    /// Diamond fixed point, left to right.
    DiamondFixpointLR,
}

impl AxiomId {
    /// The twelve box axioms.
    pub const BOX: [AxiomId; 12] = [
        AxiomId::K,
        AxiomId::BoxChoiceLR,
        AxiomId::BoxChoiceRL,
        AxiomId::BoxCompositionLR,
        AxiomId::BoxCompositionRL,
        AxiomId::BoxTestLR,
        AxiomId::BoxTestRL,
        AxiomId::BoxDistributivityLR,
        AxiomId::BoxDistributivityRL,
        AxiomId::BoxFixpointLR,
        AxiomId::BoxFixpointRL,
        AxiomId::BoxInduction,
    ];

    pub const DIAMOND: [AxiomId; 2] = [AxiomId::DiamondChoiceLR, AxiomId::DiamondFixpointLR];

    pub fn all() -> impl Iterator<Item = AxiomId> {
        AxiomId::BOX.into_iter().chain(AxiomId::DIAMOND)
    }

    pub fn name(self) -> &'static str {
        use AxiomId::*;
        match self {
            K => "K",
            BoxChoiceLR => "BoxChoice_LR",
            BoxChoiceRL => "BoxChoice_RL",
            BoxCompositionLR => "BoxComposition_LR",
            BoxCompositionRL => "BoxComposition_RL",
            BoxTestLR => "BoxTest_LR",
            BoxTestRL => "BoxTest_RL",
            BoxDistributivityLR => "BoxDistributivity_LR",
            BoxDistributivityRL => "BoxDistributivity_RL",
            BoxFixpointLR => "BoxFixpoint_LR",
            BoxFixpointRL => "BoxFixpoint_RL",
            BoxInduction => "BoxInduction",
            DiamondChoiceLR => "DiamondChoice_LR",
            DiamondFixpointLR => "DiamondFixpoint_LR",
        }
    }

    /// Whether the derivation contains an ω-node.
    pub fn uses_omega(self) -> bool {
        self == AxiomId::BoxInduction
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<AxiomId, CorpusError> {
        AxiomId::all()
            .find(|id| id.name() == s)
            .ok_or_else(|| CorpusError::UnknownAxiom(s.to_string()))
    }
}

/// The schematic lemmas, indexed by `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// `Cn(A) , Cn(B) |- ▷(n+1)(A)` with `B = A -> α fbox A`.
    BoxStep,
    /// The same with an operational succedent `C(n+1)(A)`.
    BoxStepClosed,
    /// `C1(A) , C1(B) , ... , Cn(B) |- ▷(n+1)(A)`, built with `n - 1` cuts.
    Chain,
    /// `α+ fbox A |- Cn(A)`.
    PlusUnfold,
    /// `C1(A) , α+ fbox B |- ▷n(A)`.
    PlusChain,
    /// `α^(n) ▲ (α fbox A , α+ fbox B) |- A`, the ω-premise of induction.
    InductionPremise,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::BoxStep,
        LemmaId::BoxStepClosed,
        LemmaId::Chain,
        LemmaId::PlusUnfold,
        LemmaId::PlusChain,
        LemmaId::InductionPremise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::BoxStep => "box_step",
            LemmaId::BoxStepClosed => "box_step_closed",
            LemmaId::Chain => "chain",
            LemmaId::PlusUnfold => "plus_unfold",
            LemmaId::PlusChain => "plus_chain",
            LemmaId::InductionPremise => "induction_premise",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<LemmaId, CorpusError> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| CorpusError::UnknownLemma(s.to_string()))
    }
}

/// The end-sequent each axiom builder must reach: the operational reading of
/// the axiom, with the left-hand column as antecedent for `_LR`.
pub fn axiom_sequent(id: AxiomId, params: &Params) -> Result<Sequent, CorpusError> {
    let k = params.validate()?;
    let (a, b, p, q) = (&k.a, &k.b, &k.p, &k.q);
    let lr = |l: String, r: String| format!("{l} |- {r}");
    let rl = |l: String, r: String| format!("{r} |- {l}");
    let choice = || {
        (
            format!("({a} cup1 {b}) fbox1 {p}"),
            format!("({a} fbox1 {p}) & ({b} fbox1 {p})"),
        )
    };
    let comp = || {
        (
            format!("({a} ;1 {b}) fbox1 {p}"),
            format!("{a} fbox1 ({b} fbox1 {p})"),
        )
    };
    let test = || (format!("({p} ?1) fbox1 {q}"), format!("{p} -> {q}"));
    let dist = || {
        (
            format!("{a} fbox1 ({p} & {q})"),
            format!("({a} fbox1 {p}) & ({a} fbox1 {q})"),
        )
    };
    let fix = || {
        (
            format!("({a} +) fbox0 {p}"),
            format!("({a} fbox1 {p}) & ({a} fbox1 (({a} +) fbox0 {p}))"),
        )
    };
    use AxiomId::*;
    let text = match id {
        K => format!("{a} fbox1 ({p} -> {q}) |- ({a} fbox1 {p}) -> ({a} fbox1 {q})"),
        BoxChoiceLR => lr(choice().0, choice().1),
        BoxChoiceRL => rl(choice().0, choice().1),
        BoxCompositionLR => lr(comp().0, comp().1),
        BoxCompositionRL => rl(comp().0, comp().1),
        BoxTestLR => lr(test().0, test().1),
        BoxTestRL => rl(test().0, test().1),
        BoxDistributivityLR => lr(dist().0, dist().1),
        BoxDistributivityRL => rl(dist().0, dist().1),
        BoxFixpointLR => lr(fix().0, fix().1),
        BoxFixpointRL => rl(fix().0, fix().1),
        BoxInduction => format!(
            "({a} fbox1 {p}) & (({a} +) fbox0 ({})) |- ({a} +) fbox0 {p}",
            k.step_formula()
        ),
        DiamondChoiceLR => format!("({a} cup1 {b}) wtri1 {p} |- ({a} wtri1 {p}) | ({b} wtri1 {p})"),
        DiamondFixpointLR => {
            format!("({a} +) wtri0 {p} |- ({a} wtri1 {p}) | ({a} wtri1 (({a} +) wtri0 {p}))")
        }
    };
    k.seq(&text)
}

/// Kernel-check `p` at `bound`.
fn verified(p: Proof, bound: usize) -> Result<Proof, CorpusError> {
    let v = check(&p, bound);
    if !v.ok() {
        return Err(CorpusError::Rejected(v.to_string()));
    }
    Ok(p)
}

/// Derive an axiom. The result is kernel-checked, at `params.omega_bound`
/// for the induction axiom, and ends exactly in [`axiom_sequent`].
pub fn derive(id: AxiomId, params: &Params) -> Result<Proof, CorpusError> {
    let k = params.validate()?;
    use AxiomId::*;
    let p = match id {
        K => boxes::k_axiom(&k)?,
        BoxChoiceLR => boxes::choice_lr(&k)?,
        BoxChoiceRL => boxes::choice_rl(&k)?,
        BoxCompositionLR => boxes::composition_lr(&k)?,
        BoxCompositionRL => boxes::composition_rl(&k)?,
        BoxTestLR => boxes::test_lr(&k)?,
        BoxTestRL => boxes::test_rl(&k)?,
        BoxDistributivityLR => boxes::distributivity_lr(&k)?,
        BoxDistributivityRL => boxes::distributivity_rl(&k)?,
        BoxFixpointLR => boxes::fixpoint_lr(&k)?,
        BoxFixpointRL => boxes::fixpoint_rl(&k)?,
        BoxInduction => iteration::induction(&k, params)?,
        DiamondChoiceLR => diamonds::choice_lr(&k)?,
        DiamondFixpointLR => diamonds::fixpoint_lr(&k)?,
    };
    let expected = axiom_sequent(id, params)?;
    if p.conclusion() != &expected {
        return Err(CorpusError::WrongConclusion {
            expected: expected.to_string(),
            found: p.conclusion().to_string(),
        });
    }
    verified(
        p,
        if id.uses_omega() {
            params.omega_bound
        } else {
            1
        },
    )
}

/// Instantiate a schematic lemma at `n`. The formula parameter of
/// `plus_unfold` is `A`.
pub fn lemma(id: LemmaId, n: usize, params: &Params) -> Result<Proof, CorpusError> {
    if n == 0 {
        return Err(CorpusError::BadIndex(n));
    }
    let k = params.validate()?;
    let p = match id {
        LemmaId::BoxStep => iteration::box_step(&k, n)?,
        LemmaId::BoxStepClosed => iteration::box_step_closed(&k, n)?,
        LemmaId::Chain => iteration::chain(&k, n)?,
        LemmaId::PlusUnfold => iteration::plus_unfold(&k, n, &k.p)?,
        LemmaId::PlusChain => iteration::plus_chain(&k, n)?,
        LemmaId::InductionPremise => iteration::induction_premise(&k, n)?,
    };
    verified(p, 1)
}

/// Rebuild an ω-family named in a proof script.
pub fn resolve_generator(name: &str, args: &serde_json::Value) -> Option<Arc<dyn OmegaFamily>> {
    match name {
        InductionFamily::NAME => {
            let params: Params = serde_json::from_value(args.clone()).ok()?;
            params.validate().ok()?;
            Some(Arc::new(InductionFamily::new(params)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests;
