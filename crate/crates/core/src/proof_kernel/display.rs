//! Breadth-first search for display chains.

use std::collections::{HashMap, VecDeque};

use super::{apply_rule, Failure, Proof};
use crate::rule_catalog::{
    catalog, instantiate_sequent, match_sequent, Binding, Premises, Substitution,
};
use crate::syntax::{SeqPath, Sequent, Side, Structure};

/// Default number of sequents the search may expand.
pub const DISPLAY_BUDGET: usize = 64;

/// Reserved name of the marker standing for the target substructure.
const TARGET: &str = "\u{1}target";

/// One display postulate application, read bottom-up: `from` is the
/// conclusion of `rule` and `to` its premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayStep {
    pub rule: String,
    pub subst: Substitution,
    pub from: Sequent,
    pub to: Sequent,
}

/// A chain from `start` to `end`, where `end` has the target as a whole side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayChain {
    pub start: Sequent,
    pub end: Sequent,
    pub target: Structure,
    pub steps: Vec<DisplayStep>,
}

impl DisplayChain {
    /// Turn a derivation of `end` into one of `start`.
    pub fn prove_start(&self, end: Proof) -> Result<Proof, Failure> {
        self.steps
            .iter()
            .rev()
            .try_fold(end, |p, s| apply_rule(&s.rule, s.subst.clone(), vec![p]))
    }

    /// Turn a derivation of `start` into one of `end`, using inverse postulates.
    pub fn prove_end(&self, start: Proof) -> Result<Proof, Failure> {
        self.steps.iter().try_fold(start, |p, s| {
            let inv = catalog()
                .get(&s.rule)
                .and_then(|r| r.inverse.clone())
                .expect("display postulates are invertible");
            apply_rule(&inv, Substitution::new(), vec![p])
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DisplayError {
    #[error("path does not resolve in the sequent")]
    BadPath,
    #[error("no display chain found within {0} expanded sequents")]
    Budget(usize),
}

fn replace(st: &Structure, indices: &[usize], with: &Structure) -> Structure {
    match indices.split_first() {
        None => with.clone(),
        Some((&k, rest)) => match st {
            Structure::App(c, args) => {
                let mut args = args.clone();
                args[k] = replace(&args[k], rest, with);
                Structure::App(*c, args)
            }
            _ => st.clone(),
        },
    }
}

fn restore(s: &Sequent, target: &Structure) -> Sequent {
    let sub = Substitution::new().with_st(TARGET, target.clone());
    instantiate_sequent(s, &sub)
}

fn restore_subst(sub: &Substitution, target: &Structure) -> Substitution {
    let mark = Substitution::new().with_st(TARGET, target.clone());
    Substitution(
        sub.0
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    Binding::St(st) => Binding::St(crate::rule_catalog::instantiate(st, &mark)),
                    op => op.clone(),
                };
                (k.clone(), v)
            })
            .collect(),
    )
}

/// Search steps as `(from, rule, substitution, to)`.
type Trail = Vec<(Sequent, String, Substitution, Sequent)>;

/// Breadth-first search upward from `start` through display postulates until
/// `goal` holds. Returns the reached sequent and its steps, with `from` and `to`
/// as seen in the search space.
fn search(
    start: &Sequent,
    goal: impl Fn(&Sequent) -> bool,
    budget: usize,
) -> Result<(Sequent, Trail), DisplayError> {
    let postulates: Vec<_> = catalog().display_postulates().collect();
    // Each visited sequent maps to the step that reached it.
    let mut parent: HashMap<Sequent, Option<(Sequent, String, Substitution)>> =
        HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut expanded = 0;
    while let Some(cur) = queue.pop_front() {
        if goal(&cur) {
            let mut steps = Vec::new();
            let mut at = cur.clone();
            while let Some(Some((prev, rule, sub))) = parent.get(&at) {
                steps.push((prev.clone(), rule.clone(), sub.clone(), at.clone()));
                at = prev.clone();
            }
            steps.reverse();
            return Ok((cur, steps));
        }
        if expanded == budget {
            break;
        }
        expanded += 1;
        for d in &postulates {
            let Premises::Finite(ps) = &d.premises else {
                continue;
            };
            let mut sub = Substitution::new();
            if !match_sequent(&d.conclusion, &cur, &mut sub) {
                continue;
            }
            let next = instantiate_sequent(&ps[0], &sub);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), d.id.clone(), sub)));
                queue.push_back(next);
            }
        }
    }
    Err(DisplayError::Budget(budget))
}

/// Find the shortest chain of display postulates that isolates the
/// substructure at `path` as a whole side. The target keeps its position, so
/// it ends up antecedent or succedent accordingly.
pub fn display(s: &Sequent, path: &SeqPath, budget: usize) -> Result<DisplayChain, DisplayError> {
    let target = path.resolve(s).ok_or(DisplayError::BadPath)?.clone();
    let marker = Structure::meta(TARGET, target.root_sort());
    let indices = path.path.indices();
    let marked = match path.side {
        Side::Ant => Sequent {
            ant: replace(&s.ant, &indices, &marker),
            suc: s.suc.clone(),
        },
        Side::Suc => Sequent {
            ant: s.ant.clone(),
            suc: replace(&s.suc, &indices, &marker),
        },
    };
    let (end, raw) = search(
        &marked,
        |cur| cur.ant == marker || cur.suc == marker,
        budget,
    )?;
    let steps = raw
        .into_iter()
        .map(|(from, rule, sub, to)| DisplayStep {
            rule,
            subst: restore_subst(&sub, &target),
            from: restore(&from, &target),
            to: restore(&to, &target),
        })
        .collect();
    Ok(DisplayChain {
        start: s.clone(),
        end: restore(&end, &target),
        target,
        steps,
    })
}

/// Find a chain of display postulates from `goal` up to `from`, so that a
/// derivation of `from` yields one of `goal` via
/// [`DisplayChain::prove_start`]. `None` when the two sequents are not
/// display-equivalent within `budget` expanded sequents.
pub fn connect(goal: &Sequent, from: &Sequent, budget: usize) -> Option<DisplayChain> {
    let (end, raw) = search(goal, |cur| cur == from, budget).ok()?;
    let steps = raw
        .into_iter()
        .map(|(from, rule, subst, to)| DisplayStep {
            rule,
            subst,
            from,
            to,
        })
        .collect();
    Some(DisplayChain {
        start: goal.clone(),
        end,
        target: from.ant.clone(),
        steps,
    })
}
