//! Rule schemas of the calculus: patterns, instantiation, matching and the
//! schema-level audit.
//!
//! A schema is a list of premise patterns and a conclusion pattern over
//! metavariables. Structural metavariables appear as [`Structure::Meta`],
//! operational ones as [`OpTerm::Meta`] leaves. Every index range is expanded,
//! so each schema has fixed sorts. Double-line rules are stored as two schemas
//! pointing at each other through `inverse`.

mod audit;
mod tables;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

pub use audit::{
    audit_schema, simulate_derived, Condition, ConditionReport, Outcome, SIMULATION_BUDGET,
};

use crate::syntax::{Meta, OpTerm, Position, Sequent, Signature, Sort, StCon, Structure};
use crate::typing::{sort_of_op, sort_of_structure};

/// Declared metavariable of a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaDecl {
    pub name: String,
    pub sort: Sort,
    /// Ranges over structures rather than operational terms.
    pub structural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideCondition {
    /// The operational metavariable must be bound to an atom.
    Atomic(String),
}

/// Premises of a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Premises {
    Finite(Vec<Sequent>),
    /// One premise per `n >= 1`: `pattern` with the metavariable `iterate`
    /// replaced by `base^(n)`, the right-nested `;b1` power of `base`.
    Omega {
        pattern: Sequent,
        iterate: String,
        base: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchema {
    /// Stable identifier, unique in the catalogue.
    pub id: String,
    /// Identifier with the index suffix removed; several schemas share it.
    pub family: String,
    /// Table the rule belongs to.
    pub group: &'static str,
    pub metas: Vec<MetaDecl>,
    pub premises: Premises,
    pub conclusion: Sequent,
    pub side_conditions: Vec<SideCondition>,
    /// Identifier of the other direction of a double-line rule.
    pub inverse: Option<String>,
    /// Primitive schemas this rule is simulated by; empty for primitive rules.
    pub derived_from: Vec<String>,
    /// Display postulate.
    pub display: bool,
}

impl RuleSchema {
    pub fn is_derived(&self) -> bool {
        !self.derived_from.is_empty()
    }

    pub fn is_omega(&self) -> bool {
        matches!(self.premises, Premises::Omega { .. })
    }

    pub fn is_cut(&self) -> bool {
        self.group == "cut"
    }

    pub fn is_axiom(&self) -> bool {
        matches!(&self.premises, Premises::Finite(p) if p.is_empty())
    }

    /// Mentions a connective without semantic interpretation.
    pub fn is_virtual(&self) -> bool {
        self.conclusion.has_virtual() || self.premise_patterns().iter().any(|p| p.has_virtual())
    }

    /// Finite premise patterns, or the single ω pattern.
    pub fn premise_patterns(&self) -> Vec<&Sequent> {
        match &self.premises {
            Premises::Finite(ps) => ps.iter().collect(),
            Premises::Omega { pattern, .. } => vec![pattern],
        }
    }

    pub fn meta(&self, name: &str) -> Option<&MetaDecl> {
        self.metas.iter().find(|m| m.name == name)
    }

    /// Number of premises, `None` for ω-rules.
    pub fn arity(&self) -> Option<usize> {
        match &self.premises {
            Premises::Finite(ps) => Some(ps.len()),
            Premises::Omega { .. } => None,
        }
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = match &self.premises {
            Premises::Finite(ps) => ps.iter().map(|p| p.to_string()).collect(),
            Premises::Omega {
                pattern,
                iterate,
                base,
            } => {
                vec![format!("( {pattern} | {iterate} = {base}^(n), n >= 1 )")]
            }
        };
        let line = if self.inverse.is_some() {
            "===="
        } else {
            "----"
        };
        write!(
            f,
            "{}: {} {line} {}",
            self.id,
            prem.join("  ;;  "),
            self.conclusion
        )
    }
}

/// Value of a metavariable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binding {
    St(Structure),
    Op(OpTerm),
}

impl Binding {
    pub fn as_structure(&self) -> Structure {
        match self {
            Binding::St(s) => s.clone(),
            Binding::Op(t) => Structure::Op(t.clone()),
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::St(s) => s.fmt(f),
            Binding::Op(t) => t.fmt(f),
        }
    }
}

/// Map from metavariable names to values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(pub BTreeMap<String, Binding>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn with_st(mut self, name: &str, s: Structure) -> Substitution {
        self.0.insert(name.to_string(), Binding::St(s));
        self
    }

    pub fn with_op(mut self, name: &str, t: OpTerm) -> Substitution {
        self.0.insert(name.to_string(), Binding::Op(t));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.0.get(name)
    }

    /// Add the bindings of `other` that are not already present.
    pub fn extend_missing(&mut self, other: &Substitution) {
        for (k, v) in &other.0 {
            self.0.entry(k.clone()).or_insert_with(|| v.clone());
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k} := {v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("metavariable `{meta}` of `{rule}` is unbound")]
    Unbound { rule: String, meta: String },
    #[error("`{meta}` expects a {expected} {kind}, got `{found}`")]
    SortViolation {
        meta: String,
        expected: Sort,
        kind: &'static str,
        found: String,
    },
    #[error("side condition of `{rule}` fails: `{meta}` must be atomic")]
    SideCondition { rule: String, meta: String },
    #[error("`{0}` is an ω-rule and needs a verification bound")]
    MissingBound(String),
    #[error("`{0}` is not an ω-rule")]
    NotOmega(String),
}

/// The immutable catalogue.
pub struct Catalog {
    schemas: Vec<RuleSchema>,
    by_id: HashMap<String, usize>,
}

impl Catalog {
    fn new(schemas: Vec<RuleSchema>) -> Catalog {
        let by_id = schemas
            .iter()
            .enumerate()
            .map(|(k, s)| (s.id.clone(), k))
            .collect::<HashMap<_, _>>();
        assert_eq!(by_id.len(), schemas.len(), "duplicate rule identifiers");
        Catalog { schemas, by_id }
    }

    pub fn get(&self, id: &str) -> Option<&RuleSchema> {
        self.by_id.get(id).map(|&k| &self.schemas[k])
    }

    /// Schemas with this exact id, or else every schema of this family.
    pub fn find(&self, name: &str) -> Vec<&RuleSchema> {
        match self.get(name) {
            Some(s) => vec![s],
            None => self.schemas.iter().filter(|s| s.family == name).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &RuleSchema> {
        self.schemas.iter()
    }

    pub fn len(&self) -> usize {
        self.schemas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemas.is_empty()
    }

    pub fn display_postulates(&self) -> impl Iterator<Item = &RuleSchema> {
        self.schemas.iter().filter(|s| s.display)
    }
}

/// Every rule schema, built once.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::new(tables::build()))
}

/// Schemas used only to test that the soundness harness can fail.
pub fn mutant_schemas() -> Vec<RuleSchema> {
    tables::mutants()
}

/// `base^(n)`: `base ;b1 (base ;b1 ( ... base))` with `n` copies.
pub fn iterate_semi(base: &Structure, n: usize) -> Structure {
    assert!(n >= 1, "iteration count starts at 1");
    let mut out = base.clone();
    for _ in 1..n {
        out = Structure::App(StCon::Semi(1), vec![base.clone(), out]);
    }
    out
}

fn match_op(pat: &OpTerm, val: &OpTerm, sub: &mut Substitution) -> bool {
    match pat {
        OpTerm::Meta(m) => bind(
            &m.name,
            m.sort,
            Binding::Op(val.clone()),
            val.root_sort(),
            sub,
        ),
        OpTerm::App(c, ps) => match val {
            OpTerm::App(d, vs) if c == d && ps.len() == vs.len() => {
                ps.iter().zip(vs).all(|(p, v)| match_op(p, v, sub))
            }
            _ => false,
        },
        atom => atom == val,
    }
}

fn bind(name: &str, sort: Sort, val: Binding, found: Sort, sub: &mut Substitution) -> bool {
    if found != sort {
        return false;
    }
    match sub.0.get(name) {
        Some(old) => *old == val,
        None => {
            sub.0.insert(name.to_string(), val);
            true
        }
    }
}

/// Syntactic matching of a structure pattern, extending `sub`.
pub fn match_structure(pat: &Structure, val: &Structure, sub: &mut Substitution) -> bool {
    match pat {
        Structure::Meta(m) => bind(
            &m.name,
            m.sort,
            Binding::St(val.clone()),
            val.root_sort(),
            sub,
        ),
        Structure::Op(p) => matches!(val, Structure::Op(v) if match_op(p, v, sub)),
        Structure::App(c, ps) => match val {
            Structure::App(d, vs) if c == d && ps.len() == vs.len() => {
                ps.iter().zip(vs).all(|(p, v)| match_structure(p, v, sub))
            }
            _ => false,
        },
    }
}

pub fn match_sequent(pat: &Sequent, val: &Sequent, sub: &mut Substitution) -> bool {
    match_structure(&pat.ant, &val.ant, sub) && match_structure(&pat.suc, &val.suc, sub)
}

fn side_conditions_hold(schema: &RuleSchema, sub: &Substitution) -> Result<(), RuleError> {
    for SideCondition::Atomic(name) in &schema.side_conditions {
        match sub.get(name) {
            Some(Binding::Op(t)) if t.is_atom() => {}
            None => {}
            _ => {
                return Err(RuleError::SideCondition {
                    rule: schema.id.clone(),
                    meta: name.clone(),
                })
            }
        }
    }
    Ok(())
}

/// All most general matches of the conclusion against `s`. Matching is
/// syntactic, so there is at most one.
pub fn match_conclusion(schema: &RuleSchema, s: &Sequent) -> Vec<Substitution> {
    let mut sub = Substitution::new();
    if match_sequent(&schema.conclusion, s, &mut sub) && side_conditions_hold(schema, &sub).is_ok()
    {
        vec![sub]
    } else {
        Vec::new()
    }
}

fn subst_op(t: &OpTerm, sub: &Substitution) -> OpTerm {
    match t {
        OpTerm::Meta(m) => match sub.get(&m.name) {
            Some(Binding::Op(v)) => v.clone(),
            _ => t.clone(),
        },
        OpTerm::App(c, args) => OpTerm::App(*c, args.iter().map(|a| subst_op(a, sub)).collect()),
        atom => atom.clone(),
    }
}

/// Replace bound metavariables; unbound ones stay in place.
pub fn instantiate(pat: &Structure, sub: &Substitution) -> Structure {
    match pat {
        Structure::Meta(m) => match sub.get(&m.name) {
            Some(b) => b.as_structure(),
            None => pat.clone(),
        },
        Structure::Op(t) => Structure::Op(subst_op(t, sub)),
        Structure::App(c, args) => {
            Structure::App(*c, args.iter().map(|a| instantiate(a, sub)).collect())
        }
    }
}

pub fn instantiate_sequent(pat: &Sequent, sub: &Substitution) -> Sequent {
    Sequent {
        ant: instantiate(&pat.ant, sub),
        suc: instantiate(&pat.suc, sub),
    }
}

/// Check that every binding respects the declared sort and kind, that every
/// metavariable of the schema is bound, and that side conditions hold.
pub fn validate_substitution(schema: &RuleSchema, sub: &Substitution) -> Result<(), RuleError> {
    let iterate = match &schema.premises {
        Premises::Omega { iterate, .. } => Some(iterate.as_str()),
        Premises::Finite(_) => None,
    };
    for decl in &schema.metas {
        if Some(decl.name.as_str()) == iterate {
            continue;
        }
        let b = sub.get(&decl.name).ok_or_else(|| RuleError::Unbound {
            rule: schema.id.clone(),
            meta: decl.name.clone(),
        })?;
        let (found, kind) = match (b, decl.structural) {
            (Binding::St(s), true) => (sort_of_structure(s).ok(), "structure"),
            (Binding::Op(t), true) => (sort_of_op(t).ok(), "structure"),
            (Binding::Op(t), false) => (sort_of_op(t).ok(), "operational term"),
            (Binding::St(Structure::Op(t)), false) => (sort_of_op(t).ok(), "operational term"),
            (Binding::St(_), false) => (None, "operational term"),
        };
        if found != Some(decl.sort) {
            return Err(RuleError::SortViolation {
                meta: decl.name.clone(),
                expected: decl.sort,
                kind,
                found: b.to_string(),
            });
        }
    }
    side_conditions_hold(schema, sub)
}

/// Normalize bindings to the kind each metavariable is declared with.
pub fn normalize_substitution(schema: &RuleSchema, sub: &Substitution) -> Substitution {
    let mut out = sub.clone();
    for decl in &schema.metas {
        if let Some(b) = out.0.get_mut(&decl.name) {
            match (&*b, decl.structural) {
                (Binding::St(Structure::Op(t)), false) => *b = Binding::Op(t.clone()),
                (Binding::Op(t), true) => *b = Binding::St(Structure::Op(t.clone())),
                _ => {}
            }
        }
    }
    out
}

/// The `n`-th premise of an ω-schema.
pub fn omega_premise(
    schema: &RuleSchema,
    sub: &Substitution,
    n: usize,
) -> Result<Sequent, RuleError> {
    match &schema.premises {
        Premises::Omega {
            pattern,
            iterate,
            base,
        } => {
            let b = sub.get(base).ok_or_else(|| RuleError::Unbound {
                rule: schema.id.clone(),
                meta: base.clone(),
            })?;
            let mut full = sub.clone();
            full.0.insert(
                iterate.clone(),
                Binding::St(iterate_semi(&b.as_structure(), n)),
            );
            Ok(instantiate_sequent(pattern, &full))
        }
        Premises::Finite(_) => Err(RuleError::NotOmega(schema.id.clone())),
    }
}

/// Instantiated premises. ω-schemas yield the prefix `n = 1..=omega_bound`;
/// [`omega_premise`] gives any further member.
pub fn premises_of(
    schema: &RuleSchema,
    sub: &Substitution,
    omega_bound: Option<usize>,
) -> Result<Vec<Sequent>, RuleError> {
    let sub = normalize_substitution(schema, sub);
    validate_substitution(schema, &sub)?;
    match &schema.premises {
        Premises::Finite(ps) => Ok(ps.iter().map(|p| instantiate_sequent(p, &sub)).collect()),
        Premises::Omega { .. } => {
            let bound = omega_bound.ok_or_else(|| RuleError::MissingBound(schema.id.clone()))?;
            (1..=bound)
                .map(|n| omega_premise(schema, &sub, n))
                .collect()
        }
    }
}

/// Instantiated conclusion.
pub fn conclusion_of(schema: &RuleSchema, sub: &Substitution) -> Result<Sequent, RuleError> {
    let sub = normalize_substitution(schema, sub);
    validate_substitution(schema, &sub)?;
    Ok(instantiate_sequent(&schema.conclusion, &sub))
}

/// Position of every occurrence of each structural metavariable in a pattern.
pub fn meta_positions(s: &Sequent) -> Vec<(Meta, Position)> {
    fn go(st: &Structure, pos: Position, out: &mut Vec<(Meta, Position)>) {
        match st {
            Structure::Meta(m) => out.push((m.clone(), pos)),
            Structure::Op(_) => {}
            Structure::App(c, args) => {
                for (a, &flip) in args.iter().zip(c.flips()) {
                    go(a, pos.flip_if(flip), out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&s.ant, Position::Ant, &mut out);
    go(&s.suc, Position::Suc, &mut out);
    out
}

/// Parse a binding text for a declared metavariable.
pub fn parse_binding(
    decl: &MetaDecl,
    text: &str,
    sig: &Signature,
) -> Result<Binding, crate::syntax::ParseError> {
    let st = crate::syntax::parse_structure(text, sig)?;
    Ok(match (st, decl.structural) {
        (Structure::Op(t), false) => Binding::Op(t),
        (st, _) => Binding::St(st),
    })
}

#[cfg(test)]
mod tests;
