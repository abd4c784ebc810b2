//! Principal cut reductions and a bounded driver.
//!
//! A cut is principal when both premises end in a rule that introduces the
//! cut term. Every operational connective pairs a single-premise rule that
//! turns the term into its structural counterpart (`wtri_L`, `fbox_R`,
//! `plus_L`, `minus_R`, `top_L`, ...) with a rule that builds the term from
//! its immediate subterms. The reduct keeps the first premise and, for each
//! subterm, displays it, cuts it against the matching premise of the second
//! rule and displays the result back. Cuts against an identity axiom collapse
//! to the other premise.
//!
//! Parametric cuts are left in place and counted in the [`Report`].

use std::collections::BTreeSet;
use std::fmt;

use crate::proof_kernel::{
    apply_rule, check, connect, display, expand_identity, DisplayError, Failure, Proof,
    DISPLAY_BUDGET,
};
use crate::rule_catalog::{catalog, Substitution};
use crate::syntax::{OpTerm, Path, Position, SeqPath, Sequent, Side, Sort, Structure};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("no proof node at {0:?}")]
    BadPath(Vec<usize>),
    #[error("node at {path:?} applies `{rule}`, not a cut")]
    NotACut { path: Vec<usize>, rule: String },
    #[error("cut at {0:?} is not principal")]
    NotPrincipal(Vec<usize>),
    #[error("unsupported principal pair `{left}` / `{right}`: {detail}")]
    Unsupported {
        left: String,
        right: String,
        detail: String,
    },
    #[error(transparent)]
    Kernel(#[from] Failure),
    #[error(transparent)]
    Display(#[from] DisplayError),
}

fn is_cut_rule(rule: &str) -> bool {
    catalog().get(rule).is_some_and(|r| r.is_cut())
}

fn cut_rule(sort: Sort) -> &'static str {
    match sort {
        Sort::Fm => "cut_Fm",
        Sort::Act => "cut_Act",
        Sort::TAct => "cut_TAct",
    }
}

/// The proof node at `path`, following finite children only.
pub fn node_at<'a>(p: &'a Proof, path: &[usize]) -> Option<&'a Proof> {
    path.iter().try_fold(p, |cur, &k| cur.children().get(k))
}

/// `p` with the node at `path` replaced by `new`, which must have the same
/// conclusion for the result to stay valid.
fn replace_at(p: &Proof, path: &[usize], new: Proof) -> Proof {
    match path.split_first() {
        None => new,
        Some((&k, rest)) => match p {
            Proof::Rule {
                rule,
                subst,
                children,
                conclusion,
            } => {
                let mut children = children.clone();
                children[k] = crate::proof_kernel::deep(|| replace_at(&children[k], rest, new));
                Proof::Rule {
                    rule: rule.clone(),
                    subst: subst.clone(),
                    children,
                    conclusion: conclusion.clone(),
                }
            }
            _ => p.clone(),
        },
    }
}

/// Paths of every cut node in pre-order. ω-families are not entered.
pub fn cut_nodes(p: &Proof) -> Vec<Vec<usize>> {
    fn go(p: &Proof, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if is_cut_rule(p.rule()) {
            out.push(path.clone());
        }
        for (k, c) in p.children().iter().enumerate() {
            path.push(k);
            crate::proof_kernel::deep(|| go(c, path, out));
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(p, &mut Vec::new(), &mut out);
    out
}

/// The cut term of a cut node: the succedent of its left premise.
fn cut_term(cut: &Proof) -> Option<&OpTerm> {
    cut.children().first()?.conclusion().suc.as_op()
}

/// Sizes of all cut terms, largest first.
pub fn cut_ranks(p: &Proof) -> Vec<usize> {
    let mut out: Vec<usize> = cut_nodes(p)
        .iter()
        .filter_map(|path| node_at(p, path).and_then(cut_term).map(OpTerm::size))
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Strict multiset-ordering descent: `after` arises from `before` by removing
/// at least one element and adding only strictly smaller ones.
pub fn ranks_descend(before: &[usize], after: &[usize]) -> bool {
    let mut rest_before = before.to_vec();
    let mut added = Vec::new();
    for &y in after {
        match rest_before.iter().position(|&x| x == y) {
            Some(i) => {
                rest_before.swap_remove(i);
            }
            None => added.push(y),
        }
    }
    !rest_before.is_empty() && added.iter().all(|&y| rest_before.iter().any(|&x| x > y))
}

fn cut_at<'a>(p: &'a Proof, path: &[usize]) -> Result<(&'a Proof, &'a Proof, &'a Proof), CutError> {
    let node = node_at(p, path).ok_or_else(|| CutError::BadPath(path.to_vec()))?;
    if !is_cut_rule(node.rule()) {
        return Err(CutError::NotACut {
            path: path.to_vec(),
            rule: node.rule().to_string(),
        });
    }
    match node.children() {
        [l, r] => Ok((node, l, r)),
        _ => Err(CutError::NotACut {
            path: path.to_vec(),
            rule: node.rule().to_string(),
        }),
    }
}

/// Whether the last rule of `p` introduces the operational term at the whole
/// `side` of its conclusion.
fn introduces(p: &Proof, side: Side) -> bool {
    let Some(r) = catalog().get(p.rule()) else {
        return false;
    };
    if r.group == "identity" {
        return true;
    }
    !r.is_cut()
        && !r.is_omega()
        && matches!(r.conclusion.side(side), Structure::Op(t) if t.con().is_some())
}

fn is_identity(p: &Proof) -> bool {
    catalog()
        .get(p.rule())
        .is_some_and(|r| r.group == "identity")
}

/// Both cut-term occurrences of the cut at `node` are introduced by the last
/// rule of their premise.
pub fn is_principal(p: &Proof, node: &[usize]) -> Result<bool, CutError> {
    let (_, l, r) = cut_at(p, node)?;
    Ok(introduces(l, Side::Suc) && introduces(r, Side::Ant))
}

/// The cut at `node` has an identity axiom as a premise, so it collapses to
/// the other premise.
pub fn is_identity_cut(p: &Proof, node: &[usize]) -> Result<bool, CutError> {
    let (_, l, r) = cut_at(p, node)?;
    Ok(is_identity(l) || is_identity(r))
}

fn other(side: Side) -> Side {
    match side {
        Side::Ant => Side::Suc,
        Side::Suc => Side::Ant,
    }
}

/// A single-premise rule whose premise differs from its conclusion only by
/// the structural counterpart of the term at `side`.
fn packing(p: &Proof, side: Side) -> Option<&Proof> {
    let [child] = p.children() else { return None };
    let (below, above) = (p.conclusion(), child.conclusion());
    (below.side(other(side)) == above.side(other(side))
        && matches!(above.side(side), Structure::App(..)))
    .then_some(child)
}

fn replace_structure(st: &Structure, indices: &[usize], with: &Structure) -> Structure {
    match (indices.split_first(), st) {
        (None, _) => with.clone(),
        (Some((&k, rest)), Structure::App(c, args)) => {
            let mut args = args.clone();
            args[k] = replace_structure(&args[k], rest, with);
            Structure::App(*c, args)
        }
        _ => st.clone(),
    }
}

/// Replace the operational leaf at `at` in the conclusion of `p` by the far
/// side of `q`, via display, a cut on the leaf, and display back.
fn splice(p: Proof, at: &SeqPath, q: Proof) -> Result<Proof, CutError> {
    let s = p.conclusion().clone();
    let leaf = at
        .resolve(&s)
        .and_then(Structure::as_op)
        .cloned()
        .ok_or(DisplayError::BadPath)?;
    let chain = display(&s, at, DISPLAY_BUDGET)?;
    let shown = chain.prove_end(p)?;
    let rule = cut_rule(leaf.root_sort());
    let (cut, with) = match at.position() {
        Position::Ant => {
            let with = q.conclusion().ant.clone();
            (apply_rule(rule, Substitution::new(), vec![q, shown])?, with)
        }
        Position::Suc => {
            let with = q.conclusion().suc.clone();
            (apply_rule(rule, Substitution::new(), vec![shown, q])?, with)
        }
    };
    let indices = at.path.indices();
    let goal = match at.side {
        Side::Ant => Sequent {
            ant: replace_structure(&s.ant, &indices, &with),
            suc: s.suc.clone(),
        },
        Side::Suc => Sequent {
            ant: s.ant.clone(),
            suc: replace_structure(&s.suc, &indices, &with),
        },
    };
    let back = match SeqPath::parse(&at.to_string(), &goal)
        .map(|gp| display(&goal, &gp, DISPLAY_BUDGET))
    {
        Some(Ok(c)) if &c.end == cut.conclusion() => c,
        _ => connect(&goal, cut.conclusion(), DISPLAY_BUDGET)
            .ok_or(DisplayError::Budget(DISPLAY_BUDGET))?,
    };
    Ok(back.prove_start(cut)?)
}

fn unsupported(l: &Proof, r: &Proof, detail: impl Into<String>) -> CutError {
    CutError::Unsupported {
        left: l.rule().to_string(),
        right: r.rule().to_string(),
        detail: detail.into(),
    }
}

/// Reduct of a single cut node, before it is put back into the tree.
fn reduct(cut: &Proof, l: &Proof, r: &Proof) -> Result<Proof, CutError> {
    if is_identity(l) {
        return Ok(r.clone());
    }
    if is_identity(r) {
        return Ok(l.clone());
    }
    let term = cut_term(cut)
        .cloned()
        .ok_or_else(|| unsupported(l, r, "cut term is not operational"))?;
    let (kept, builder, side) = if let Some(c) = packing(r, Side::Ant) {
        (c, l, Side::Ant)
    } else if let Some(c) = packing(l, Side::Suc) {
        (c, r, Side::Suc)
    } else {
        return Err(unsupported(l, r, "neither premise unfolds the cut term"));
    };
    let counterpart = kept.conclusion().side(side).clone();
    let slots = counterpart.args();
    if slots.len() != term.args().len()
        || slots
            .iter()
            .zip(term.args())
            .any(|(s, t)| s.as_op() != Some(t))
    {
        return Err(unsupported(
            l,
            r,
            format!("`{counterpart}` does not unfold `{term}`"),
        ));
    }
    let slot = |m: usize| SeqPath {
        side,
        path: Path::from_indices(&counterpart, &[m]).expect("child of counterpart"),
    };
    let mut used = BTreeSet::new();
    let mut out = kept.clone();
    for q in builder.children() {
        let qs = q.conclusion();
        let found =
            (0..slots.len())
                .filter(|m| !used.contains(m))
                .find(|&m| match slot(m).position() {
                    Position::Ant => qs.suc == slots[m],
                    Position::Suc => qs.ant == slots[m],
                });
        let Some(m) = found else {
            return Err(unsupported(
                l,
                r,
                format!("premise `{qs}` matches no subterm of `{term}`"),
            ));
        };
        used.insert(m);
        let at = slot(m);
        out = splice(out, &at, q.clone())?;
    }
    if used.len() != slots.len() {
        return Err(unsupported(l, r, "some subterms have no premise"));
    }
    if out.conclusion() != cut.conclusion() {
        return Err(unsupported(
            l,
            r,
            format!("reduct ends in `{}`", out.conclusion()),
        ));
    }
    Ok(out)
}

/// Rewrite the principal or identity cut at `node`. The end-sequent is
/// unchanged; the cut disappears or is replaced by cuts on immediate subterms
/// of its cut term.
pub fn principal_step(p: &Proof, node: &[usize]) -> Result<Proof, CutError> {
    if !(is_principal(p, node)? || is_identity_cut(p, node)?) {
        return Err(CutError::NotPrincipal(node.to_vec()));
    }
    let (cut, l, r) = cut_at(p, node)?;
    let new = reduct(cut, l, r)?;
    Ok(replace_at(p, node, new))
}

/// Outcome of [`reduce`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Rewrites performed.
    pub steps: usize,
    /// Cuts left that are neither principal nor against an identity axiom.
    pub residual: usize,
    /// Principal pairs without a reduction, by node path.
    pub unsupported: Vec<(Vec<usize>, String)>,
    /// The driver stopped with a reducible cut still present.
    pub fuel_exhausted: bool,
    /// Cut ranks before the first and after each step.
    pub ranks: Vec<Vec<usize>>,
    /// The final proof passed the kernel check (ω-families at `n = 1`).
    pub rechecked: bool,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} steps, {} residual cuts", self.steps, self.residual)?;
        if !self.unsupported.is_empty() {
            write!(f, ", {} unsupported", self.unsupported.len())?;
        }
        if self.fuel_exhausted {
            write!(f, ", fuel exhausted")?;
        }
        if !self.rechecked {
            write!(f, ", recheck failed")?;
        }
        Ok(())
    }
}

/// Apply [`principal_step`] until no reducible cut remains or `fuel` steps
/// have been spent.
pub fn reduce(p: &Proof, fuel: usize) -> (Proof, Report) {
    let mut cur = p.clone();
    let mut report = Report {
        ranks: vec![cut_ranks(&cur)],
        ..Report::default()
    };
    let mut skip: BTreeSet<Vec<usize>> = BTreeSet::new();
    loop {
        let next = cut_nodes(&cur)
            .into_iter()
            .filter(|n| !skip.contains(n))
            .find(|n| {
                is_principal(&cur, n).unwrap_or(false) || is_identity_cut(&cur, n).unwrap_or(false)
            });
        let Some(node) = next else { break };
        if report.steps == fuel {
            report.fuel_exhausted = true;
            break;
        }
        match principal_step(&cur, &node) {
            Ok(q) => {
                cur = q;
                report.steps += 1;
                report.ranks.push(cut_ranks(&cur));
            }
            Err(e) => {
                report.unsupported.push((node.clone(), e.to_string()));
                skip.insert(node);
            }
        }
    }
    report.residual = cut_nodes(&cur)
        .iter()
        .filter(|n| {
            !(is_principal(&cur, n).unwrap_or(false) || is_identity_cut(&cur, n).unwrap_or(false))
        })
        .count();
    report.rechecked = check(&cur, 1).ok();
    (cur, report)
}

/// A principal cut on `t`: the rule building `t` against the identity
/// expansion of `t`, each introducing `t` on its side of the cut.
pub fn principal_fixture(t: &OpTerm) -> Result<Proof, CutError> {
    let id = expand_identity(t)?;
    let (l, r) = match id.children() {
        [] => (id.clone(), id),
        [built] if built.conclusion().suc.as_op() == Some(t) => (built.clone(), id),
        [built] => (id.clone(), built.clone()),
        _ => unreachable!("identity expansions end in a single-premise rule"),
    };
    Ok(apply_rule(
        cut_rule(t.root_sort()),
        Substitution::new(),
        vec![l, r],
    )?)
}

#[cfg(test)]
mod tests;
