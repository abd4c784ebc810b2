//! Schema-level conditions and the bounded simulation of derived rules.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use super::{
    catalog, instantiate_sequent, match_sequent, meta_positions, Premises, RuleSchema, Substitution,
};
use crate::syntax::{OpTerm, Position, Sequent, Sort, Structure};
use crate::typing::check_sequent;

/// Machine-checkable conditions on a schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Premise operational terms are subterms of conclusion terms, and
    /// premise metavariables reappear in the conclusion.
    C1,
    /// Every occurrence of a metavariable has the declared kind.
    C2,
    /// Every occurrence of a metavariable has the declared sort and each
    /// pattern is well typed.
    C2Prime,
    /// A structural parameter occurs at most once in the conclusion.
    C3,
    /// All occurrences of a structural parameter share a position.
    C4,
    /// Compound operational terms of the conclusion fill a whole side.
    C5,
    /// Cut schemas are sort-uniform.
    C10,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::C1,
        Condition::C2,
        Condition::C2Prime,
        Condition::C3,
        Condition::C4,
        Condition::C5,
        Condition::C10,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C2Prime => "C'2",
            Condition::C3 => "C3",
            Condition::C4 => "C4",
            Condition::C5 => "C5",
            Condition::C10 => "C10",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            Outcome::Fail(why) => write!(f, "FAIL ({why})"),
            Outcome::NotApplicable(why) => write!(f, "n/a ({why})"),
        }
    }
}

/// Audit result for one schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub rule: String,
    pub outcomes: BTreeMap<Condition, Outcome>,
}

impl ConditionReport {
    pub fn outcome(&self, c: Condition) -> &Outcome {
        &self.outcomes[&c]
    }

    /// No condition failed.
    pub fn passed(&self) -> bool {
        !self.outcomes.values().any(Outcome::is_fail)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.rule)?;
        for (c, o) in &self.outcomes {
            write!(f, " {c}={o}")?;
        }
        Ok(())
    }
}

pub fn audit_schema(schema: &RuleSchema) -> ConditionReport {
    let outcomes = Condition::ALL
        .iter()
        .map(|&c| {
            let o = match c {
                Condition::C1 => c1(schema),
                Condition::C2 => c2(schema),
                Condition::C2Prime => c2_prime(schema),
                Condition::C3 => c3(schema),
                Condition::C4 => c4(schema),
                Condition::C5 => c5(schema),
                Condition::C10 => c10(schema),
            };
            (c, o)
        })
        .collect();
    ConditionReport {
        rule: schema.id.clone(),
        outcomes,
    }
}

fn all_patterns(schema: &RuleSchema) -> Vec<&Sequent> {
    let mut v = schema.premise_patterns();
    v.push(&schema.conclusion);
    v
}

fn op_leaves(s: &Sequent) -> Vec<&OpTerm> {
    let mut out = Vec::new();
    s.ant.visit_ops(&mut |t| out.push(t));
    s.suc.visit_ops(&mut |t| out.push(t));
    out
}

fn subterms<'a>(t: &'a OpTerm, out: &mut HashSet<&'a OpTerm>) {
    out.insert(t);
    if let OpTerm::App(_, args) = t {
        args.iter().for_each(|a| subterms(a, out));
    }
}

fn meta_names(s: &Sequent) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut add = |m: &crate::syntax::Meta| {
        out.insert(m.name.to_string());
    };
    s.ant.visit_metas(&mut add);
    s.suc.visit_metas(&mut add);
    out
}

fn omega_iterate(schema: &RuleSchema) -> Option<&str> {
    match &schema.premises {
        Premises::Omega { iterate, .. } => Some(iterate),
        Premises::Finite(_) => None,
    }
}

fn c1(schema: &RuleSchema) -> Outcome {
    if schema.is_cut() {
        return Outcome::NotApplicable("cut term is eliminated".into());
    }
    let mut concl_terms = HashSet::new();
    for t in op_leaves(&schema.conclusion) {
        subterms(t, &mut concl_terms);
    }
    let concl_metas = meta_names(&schema.conclusion);
    for p in schema.premise_patterns() {
        for t in op_leaves(p) {
            if !concl_terms.contains(t) {
                return Outcome::Fail(format!("premise term `{t}` is not a conclusion subterm"));
            }
        }
        for m in meta_names(p) {
            if Some(m.as_str()) != omega_iterate(schema) && !concl_metas.contains(&m) {
                return Outcome::Fail(format!("`{m}` does not occur in the conclusion"));
            }
        }
    }
    Outcome::Pass
}

/// Occurrences of metavariables in a pattern, tagged structural or not.
fn occurrences(s: &Sequent) -> Vec<(String, Sort, bool)> {
    fn go(st: &Structure, out: &mut Vec<(String, Sort, bool)>) {
        match st {
            Structure::Meta(m) => out.push((m.name.to_string(), m.sort, true)),
            Structure::Op(t) => {
                t.visit_metas(&mut |m| out.push((m.name.to_string(), m.sort, false)))
            }
            Structure::App(_, args) => args.iter().for_each(|a| go(a, out)),
        }
    }
    let mut out = Vec::new();
    go(&s.ant, &mut out);
    go(&s.suc, &mut out);
    out
}

fn c2(schema: &RuleSchema) -> Outcome {
    for p in all_patterns(schema) {
        for (name, _, structural) in occurrences(p) {
            match schema.meta(&name) {
                None => return Outcome::Fail(format!("`{name}` is undeclared")),
                // An operational metavariable may stand as a structure leaf,
                // but a structural one never sits inside a term.
                Some(d) if d.structural && !structural => {
                    return Outcome::Fail(format!("structural `{name}` inside an operational term"))
                }
                Some(_) => {}
            }
        }
    }
    Outcome::Pass
}

fn c2_prime(schema: &RuleSchema) -> Outcome {
    for p in all_patterns(schema) {
        for (name, sort, _) in occurrences(p) {
            if let Some(d) = schema.meta(&name) {
                if d.sort != sort {
                    return Outcome::Fail(format!("`{name}` used at {sort}, declared {}", d.sort));
                }
            }
        }
        if let Err(e) = check_sequent(p) {
            return Outcome::Fail(format!("pattern `{p}` is ill typed: {e}"));
        }
    }
    Outcome::Pass
}

fn c3(schema: &RuleSchema) -> Outcome {
    let mut seen = BTreeMap::<String, usize>::new();
    for (name, _, structural) in occurrences(&schema.conclusion) {
        if structural {
            *seen.entry(name).or_default() += 1;
        }
    }
    match seen.into_iter().find(|&(_, n)| n > 1) {
        Some((name, n)) => Outcome::Fail(format!("`{name}` occurs {n} times in the conclusion")),
        None => Outcome::Pass,
    }
}

fn c4(schema: &RuleSchema) -> Outcome {
    let mut pos = BTreeMap::<String, Position>::new();
    for p in all_patterns(schema) {
        for (m, at) in meta_positions(p) {
            match pos.get(&*m.name) {
                Some(&old) if old != at => {
                    return Outcome::Fail(format!(
                        "`{}` occurs in both {old} and {at} position",
                        m.name
                    ))
                }
                Some(_) => {}
                None => {
                    pos.insert(m.name.to_string(), at);
                }
            }
        }
    }
    Outcome::Pass
}

fn c5(schema: &RuleSchema) -> Outcome {
    fn nested(st: &Structure, top: bool) -> Option<&OpTerm> {
        match st {
            Structure::Op(t @ OpTerm::App(..)) if !top => Some(t),
            Structure::App(_, args) => args.iter().find_map(|a| nested(a, false)),
            _ => None,
        }
    }
    let c = &schema.conclusion;
    match nested(&c.ant, true).or_else(|| nested(&c.suc, true)) {
        Some(t) => Outcome::Fail(format!("principal `{t}` is not a whole side")),
        None => Outcome::Pass,
    }
}

fn c10(schema: &RuleSchema) -> Outcome {
    if !schema.is_cut() {
        return Outcome::NotApplicable("not a cut".into());
    }
    let sorts: BTreeSet<Sort> = all_patterns(schema)
        .into_iter()
        .flat_map(|s| [s.ant.root_sort(), s.suc.root_sort()])
        .chain(schema.metas.iter().map(|m| m.sort))
        .collect();
    if sorts.len() == 1 {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("cut mixes sorts {sorts:?}"))
    }
}

/// Maximum number of sequents visited by one display search.
pub const SIMULATION_BUDGET: usize = 32;

/// Nesting depth of backward base-rule applications.
const BASE_DEPTH: usize = 3;

/// Show that a derived schema follows from its base schemas and the display
/// postulates, treating its metavariables as opaque constants. Returns the
/// base rules used, in order of application (backwards from the conclusion).
pub fn simulate_derived(schema: &RuleSchema) -> Result<Vec<String>, String> {
    if !schema.is_derived() {
        return Err(format!("`{}` is primitive", schema.id));
    }
    let cat = catalog();
    let mut bases = Vec::new();
    for id in &schema.derived_from {
        let b = cat
            .get(id)
            .ok_or_else(|| format!("unknown base rule `{id}`"))?;
        bases.push(b);
        if let Some(inv) = b.inverse.as_deref().and_then(|i| cat.get(i)) {
            bases.push(inv);
        }
    }
    let display: Vec<&RuleSchema> = cat.display_postulates().collect();
    let hyps: Vec<&Sequent> = schema.premise_patterns();
    let search = Search {
        hyps,
        bases,
        display,
    };
    search
        .prove(&schema.conclusion, BASE_DEPTH)
        .ok_or_else(|| format!("`{}` not simulated within the search bounds", schema.id))
}

struct Search<'a> {
    hyps: Vec<&'a Sequent>,
    bases: Vec<&'a RuleSchema>,
    display: Vec<&'a RuleSchema>,
}

impl Search<'_> {
    /// Sequents display-equivalent to `start`, in breadth-first order.
    fn display_class(&self, start: &Sequent) -> Vec<Sequent> {
        let mut seen = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(s) = queue.pop_front() {
            for d in &self.display {
                let Premises::Finite(ps) = &d.premises else {
                    continue;
                };
                let mut sub = Substitution::new();
                if !match_sequent(&d.conclusion, &s, &mut sub) {
                    continue;
                }
                for p in ps {
                    let next = instantiate_sequent(p, &sub);
                    if order.len() < SIMULATION_BUDGET && seen.insert(next.clone()) {
                        order.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        order
    }

    fn prove(&self, goal: &Sequent, depth: usize) -> Option<Vec<String>> {
        let class = self.display_class(goal);
        if class.iter().any(|s| self.hyps.contains(&s)) {
            return Some(Vec::new());
        }
        if depth == 0 {
            return None;
        }
        for node in &class {
            for b in &self.bases {
                let mut sub = Substitution::new();
                if !match_sequent(&b.conclusion, node, &mut sub) {
                    continue;
                }
                let premises: Vec<Sequent> = b
                    .premise_patterns()
                    .iter()
                    .map(|p| instantiate_sequent(p, &sub))
                    .collect();
                let mut trace = vec![b.id.clone()];
                let all = premises.iter().all(|p| match self.prove(p, depth - 1) {
                    Some(t) => {
                        trace.extend(t);
                        true
                    }
                    None => false,
                });
                if all {
                    return Some(trace);
                }
            }
        }
        None
    }
}
