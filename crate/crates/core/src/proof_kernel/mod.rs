//! Derivations and their checker.
//!
//! A [`Proof`] is a tree of rule applications. ω-rule nodes hold a generator
//! for their infinitely many premises; checking one instantiates the generator
//! for `n = 1..=omega_bound`, so acceptance of an ω-node is a bounded
//! certificate rather than a complete one.

mod display;
mod latex;
mod script;

use std::fmt;
use std::sync::Arc;

pub use display::{connect, display, DisplayChain, DisplayError, DisplayStep, DISPLAY_BUDGET};
pub use latex::to_bussproofs;
pub use script::{load_script, save_script, GeneratorResolver, ScriptError};

use crate::rule_catalog::{
    catalog, conclusion_of, instantiate_sequent, match_sequent, normalize_substitution,
    omega_premise, premises_of, Binding, Premises, RuleError, RuleSchema, Substitution,
};
use crate::syntax::{OpCon, OpTerm, Sequent};
use crate::typing::check_sequent;

/// Generator of the premise derivations of an ω-node.
pub trait OmegaFamily: Send + Sync {
    /// Registry name used by proof scripts.
    fn name(&self) -> &str;
    /// Parameters needed to rebuild the generator from a script.
    fn args(&self) -> serde_json::Value;
    /// Derivation of the `n`-th premise, `n >= 1`.
    fn proof(&self, n: usize) -> Result<Proof, String>;
}

impl fmt::Debug for dyn OmegaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.args())
    }
}

#[derive(Clone, Debug)]
pub enum Proof {
    Axiom {
        rule: String,
        conclusion: Sequent,
    },
    Rule {
        rule: String,
        subst: Substitution,
        children: Vec<Proof>,
        conclusion: Sequent,
    },
    Omega {
        rule: String,
        subst: Substitution,
        family: Arc<dyn OmegaFamily>,
        verified_up_to: usize,
        conclusion: Sequent,
    },
}

/// Generators compare by name and arguments.
impl PartialEq for Proof {
    fn eq(&self, other: &Proof) -> bool {
        use Proof::*;
        deep(|| match (self, other) {
            (
                Axiom {
                    rule: r1,
                    conclusion: c1,
                },
                Axiom {
                    rule: r2,
                    conclusion: c2,
                },
            ) => r1 == r2 && c1 == c2,
            (
                Rule {
                    rule: r1,
                    subst: s1,
                    children: k1,
                    conclusion: c1,
                },
                Rule {
                    rule: r2,
                    subst: s2,
                    children: k2,
                    conclusion: c2,
                },
            ) => r1 == r2 && s1 == s2 && k1 == k2 && c1 == c2,
            (
                Omega {
                    rule: r1,
                    subst: s1,
                    family: f1,
                    verified_up_to: v1,
                    conclusion: c1,
                },
                Omega {
                    rule: r2,
                    subst: s2,
                    family: f2,
                    verified_up_to: v2,
                    conclusion: c2,
                },
            ) => {
                r1 == r2
                    && s1 == s2
                    && v1 == v2
                    && c1 == c2
                    && f1.name() == f2.name()
                    && f1.args() == f2.args()
            }
            _ => false,
        })
    }
}

impl Proof {
    pub fn conclusion(&self) -> &Sequent {
        match self {
            Proof::Axiom { conclusion, .. }
            | Proof::Rule { conclusion, .. }
            | Proof::Omega { conclusion, .. } => conclusion,
        }
    }

    pub fn rule(&self) -> &str {
        match self {
            Proof::Axiom { rule, .. } | Proof::Rule { rule, .. } | Proof::Omega { rule, .. } => {
                rule
            }
        }
    }

    /// Finite children; ω-nodes have none.
    pub fn children(&self) -> &[Proof] {
        match self {
            Proof::Rule { children, .. } => children,
            _ => &[],
        }
    }

    /// Number of nodes, not counting ω-family members.
    pub fn size(&self) -> usize {
        deep(|| 1 + self.children().iter().map(Proof::size).sum::<usize>())
    }

    pub fn height(&self) -> usize {
        deep(|| 1 + self.children().iter().map(Proof::height).max().unwrap_or(0))
    }

    /// Visit every node, expanding ω-families up to `omega_bound`. Members the
    /// generator fails to produce are skipped.
    pub fn visit(&self, omega_bound: usize, f: &mut impl FnMut(&Proof)) {
        deep(|| self.visit_inner(omega_bound, f))
    }

    fn visit_inner(&self, omega_bound: usize, f: &mut impl FnMut(&Proof)) {
        f(self);
        match self {
            Proof::Rule { children, .. } => children.iter().for_each(|c| c.visit(omega_bound, f)),
            Proof::Omega { family, .. } => {
                for n in 1..=omega_bound {
                    if let Ok(p) = family.proof(n) {
                        p.visit(omega_bound, f);
                    }
                }
            }
            Proof::Axiom { .. } => {}
        }
    }

    /// Identifiers of every rule used, including inside ω-families.
    pub fn rules_used(&self, omega_bound: usize) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.visit(omega_bound, &mut |p| {
            out.insert(p.rule().to_string());
        });
        out
    }
}

/// Run a recursive step, moving to a fresh heap segment when the stack runs
/// low. Derivations for large ω-bounds are several hundred nodes tall.
pub(crate) fn deep<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, f)
}

/// Why a node was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Reason {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("`{rule}` does not match: expected `{expected}`, found `{found}`")]
    BadMatch {
        rule: String,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("`{sequent}` is not type-uniform: {detail}")]
    IllTyped { sequent: String, detail: String },
    #[error("`{rule}` takes {expected} premises, got {found}")]
    Arity {
        rule: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` has premises and cannot close a branch")]
    NotAxiom(String),
    #[error("`{0}` is an ω-rule and needs an ω-node")]
    NeedsOmegaNode(String),
    #[error("ω-family `{family}` has no derivation for n = {n}: {detail}")]
    OmegaExhausted {
        family: String,
        n: usize,
        detail: String,
    },
}

/// A rejected node: child indices from the root, then the reason. Members of
/// an ω-family are addressed by `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at {path:?}: {reason}")]
pub struct Failure {
    pub path: Vec<usize>,
    pub reason: Reason,
}

impl Failure {
    fn root(reason: impl Into<Reason>) -> Failure {
        Failure {
            path: Vec::new(),
            reason: reason.into(),
        }
    }

    fn under(mut self, k: usize) -> Failure {
        self.path.insert(0, k);
        self
    }
}

/// Outcome of [`check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failure: Option<Failure>,
    /// Nodes validated, ω-family members included.
    pub nodes: usize,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok ({} nodes)", self.nodes),
            Some(e) => write!(f, "rejected {e}"),
        }
    }
}

fn schema(id: &str) -> Result<&'static RuleSchema, Failure> {
    catalog()
        .get(id)
        .ok_or_else(|| Failure::root(Reason::UnknownRule(id.to_string())))
}

fn uniform(s: &Sequent) -> Result<(), Failure> {
    check_sequent(s).map(|_| ()).map_err(|e| {
        Failure::root(Reason::IllTyped {
            sequent: s.to_string(),
            detail: e.to_string(),
        })
    })
}

fn bad_match(rule: &str, expected: &Sequent, found: &Sequent) -> Failure {
    Failure::root(Reason::BadMatch {
        rule: rule.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    })
}

/// Validate every node of `p`, instantiating ω-families at `1..=omega_bound`.
pub fn check(p: &Proof, omega_bound: usize) -> Verdict {
    let mut nodes = 0;
    let failure = check_node(p, omega_bound.max(1), &mut nodes).err();
    Verdict { failure, nodes }
}

fn check_node(p: &Proof, bound: usize, nodes: &mut usize) -> Result<(), Failure> {
    deep(|| check_node_inner(p, bound, nodes))
}

fn check_node_inner(p: &Proof, bound: usize, nodes: &mut usize) -> Result<(), Failure> {
    *nodes += 1;
    uniform(p.conclusion())?;
    match p {
        Proof::Axiom { rule, conclusion } => {
            let r = schema(rule)?;
            if !r.is_axiom() {
                return Err(Failure::root(Reason::NotAxiom(rule.clone())));
            }
            if crate::rule_catalog::match_conclusion(r, conclusion).is_empty() {
                return Err(bad_match(rule, &r.conclusion, conclusion));
            }
            Ok(())
        }
        Proof::Rule {
            rule,
            subst,
            children,
            conclusion,
        } => {
            let r = schema(rule)?;
            if r.is_omega() {
                return Err(Failure::root(Reason::NeedsOmegaNode(rule.clone())));
            }
            let premises = premises_of(r, subst, None).map_err(Failure::root)?;
            let expected = conclusion_of(r, subst).map_err(Failure::root)?;
            if &expected != conclusion {
                return Err(bad_match(rule, &expected, conclusion));
            }
            if premises.len() != children.len() {
                return Err(Failure::root(Reason::Arity {
                    rule: rule.clone(),
                    expected: premises.len(),
                    found: children.len(),
                }));
            }
            for (k, (prem, child)) in premises.iter().zip(children).enumerate() {
                if prem != child.conclusion() {
                    return Err(bad_match(rule, prem, child.conclusion()).under(k));
                }
                check_node(child, bound, nodes).map_err(|e| e.under(k))?;
            }
            Ok(())
        }
        Proof::Omega {
            rule,
            subst,
            family,
            conclusion,
            ..
        } => {
            let r = schema(rule)?;
            let sub = normalize_substitution(r, subst);
            let expected = conclusion_of(r, &sub).map_err(Failure::root)?;
            if &expected != conclusion {
                return Err(bad_match(rule, &expected, conclusion));
            }
            for n in 1..=bound {
                let prem = omega_premise(r, &sub, n).map_err(Failure::root)?;
                let child = family.proof(n).map_err(|detail| {
                    Failure::root(Reason::OmegaExhausted {
                        family: family.name().to_string(),
                        n,
                        detail,
                    })
                })?;
                if &prem != child.conclusion() {
                    return Err(bad_match(rule, &prem, child.conclusion()).under(n - 1));
                }
                check_node(&child, bound, nodes).map_err(|e| e.under(n - 1))?;
            }
            Ok(())
        }
    }
}

/// Close a branch with an axiom.
pub fn axiom(rule: &str, conclusion: Sequent) -> Result<Proof, Failure> {
    let r = schema(rule)?;
    let p = Proof::Axiom {
        rule: rule.to_string(),
        conclusion,
    };
    if !r.is_axiom() {
        return Err(Failure::root(Reason::NotAxiom(rule.to_string())));
    }
    check_node(&p, 1, &mut 0)?;
    Ok(p)
}

/// Apply a finitary rule. Metavariables not given in `subst` are read off the
/// children's conclusions; the result is a validated node.
pub fn apply_rule(rule: &str, subst: Substitution, children: Vec<Proof>) -> Result<Proof, Failure> {
    let r = schema(rule)?;
    let Premises::Finite(patterns) = &r.premises else {
        return Err(Failure::root(Reason::NeedsOmegaNode(rule.to_string())));
    };
    if patterns.len() != children.len() {
        return Err(Failure::root(Reason::Arity {
            rule: rule.to_string(),
            expected: patterns.len(),
            found: children.len(),
        }));
    }
    let mut sub = normalize_substitution(r, &subst);
    for (k, (pat, child)) in patterns.iter().zip(&children).enumerate() {
        if !match_sequent(pat, child.conclusion(), &mut sub) {
            return Err(
                bad_match(rule, &instantiate_sequent(pat, &sub), child.conclusion()).under(k),
            );
        }
    }
    let conclusion = conclusion_of(r, &sub).map_err(Failure::root)?;
    uniform(&conclusion)?;
    if patterns.is_empty() {
        return Ok(Proof::Axiom {
            rule: rule.to_string(),
            conclusion,
        });
    }
    Ok(Proof::Rule {
        rule: rule.to_string(),
        subst: sub,
        children,
        conclusion,
    })
}

/// Apply an ω-rule. Missing bindings are read off the first family member,
/// and members `1..=verify` are checked.
pub fn apply_omega(
    rule: &str,
    subst: Substitution,
    family: Arc<dyn OmegaFamily>,
    verify: usize,
) -> Result<Proof, Failure> {
    let r = schema(rule)?;
    let Premises::Omega {
        pattern,
        iterate,
        base,
    } = &r.premises
    else {
        return Err(Failure::root(RuleError::NotOmega(rule.to_string())));
    };
    let mut sub = normalize_substitution(r, &subst);
    let first = family.proof(1).map_err(|detail| {
        Failure::root(Reason::OmegaExhausted {
            family: family.name().to_string(),
            n: 1,
            detail,
        })
    })?;
    let mut probe = sub.clone();
    if let Some(b) = sub.get(base) {
        probe.0.insert(iterate.clone(), b.clone());
    }
    if !match_sequent(pattern, first.conclusion(), &mut probe) {
        return Err(bad_match(
            rule,
            &instantiate_sequent(pattern, &probe),
            first.conclusion(),
        )
        .under(0));
    }
    if let Some(Binding::St(b)) = probe.get(iterate).cloned() {
        sub.0.entry(base.clone()).or_insert(Binding::St(b));
    }
    sub.extend_missing(&Substitution(
        probe.0.into_iter().filter(|(k, _)| k != iterate).collect(),
    ));
    let sub = normalize_substitution(r, &sub);
    let conclusion = conclusion_of(r, &sub).map_err(Failure::root)?;
    let verify = verify.max(1);
    let p = Proof::Omega {
        rule: rule.to_string(),
        subst: sub,
        family,
        verified_up_to: verify,
        conclusion,
    };
    check_node(&p, verify, &mut 0)?;
    Ok(p)
}

/// Rules deriving `t |- t` for a compound `t`: the rule building `t` from its
/// immediate subterms, the order in which it takes them, and the rule turning
/// `t` into its structural counterpart on the other side.
fn expansion(con: OpCon) -> Option<(String, &'static [usize], String)> {
    use OpCon::*;
    let r =
        |b: &str, order: &'static [usize], pk: &str| Some((b.to_string(), order, pk.to_string()));
    match con {
        Top => r("top_R", &[], "top_L"),
        Bot => r("bot_L", &[], "bot_R"),
        And => r("and_R", &[0, 1], "and_L"),
        Or => r("or_L", &[0, 1], "or_R"),
        Imp => r("imp_L", &[0, 1], "imp_R"),
        Dimp => r("dimp_R", &[0, 1], "dimp_L"),
        Rimp => r("rimp_L", &[0, 1], "rimp_R"),
        Dsub => r("dsub_R", &[0, 1], "dsub_L"),
        Wtri(i) => r(&format!("wtri_R{i}"), &[0, 1], &format!("wtri_L{i}")),
        Btri(i) => r(&format!("btri_R{i}"), &[0, 1], &format!("btri_L{i}")),
        Fbox(i) => r(&format!("fbox_L{i}"), &[0, 1], &format!("fbox_R{i}")),
        Bbox(i) => r(&format!("bbox_L{i}"), &[0, 1], &format!("bbox_R{i}")),
        Test(i) => r(&format!("test_R{i}"), &[0], &format!("test_L{i}")),
        Plus => r("plus_R", &[0], "plus_L"),
        Minus => r("minus_L", &[0], "minus_R"),
        Seq(j) => r(&format!("seq_R{j}"), &[0, 1], &format!("seq_L{j}")),
        Cup(j) => r(&format!("cup_L{j}"), &[0, 1], &format!("cup_R{j}")),
        _ => None,
    }
}

/// Derivation of `t |- t` from identity axioms on the atoms of `t`.
pub fn expand_identity(t: &OpTerm) -> Result<Proof, Failure> {
    match t {
        OpTerm::Prop(_) => axiom("Id_p", Sequent::new(t.clone(), t.clone())),
        OpTerm::Act(_) => axiom("Id_pi", Sequent::new(t.clone(), t.clone())),
        OpTerm::Meta(m) => Err(Failure::root(RuleError::Unbound {
            rule: "identity".into(),
            meta: m.name.to_string(),
        })),
        OpTerm::App(con, args) => {
            let (build, order, pack) =
                expansion(*con).ok_or_else(|| Failure::root(Reason::UnknownRule(con.token())))?;
            let children = order
                .iter()
                .map(|&k| expand_identity(&args[k]))
                .collect::<Result<_, _>>()?;
            let built = apply_rule(&build, Substitution::new(), children)?;
            apply_rule(&pack, Substitution::new(), vec![built])
        }
    }
}

#[cfg(test)]
mod tests;
