//! Terms, structures and sequents of the calculus, plus the PDL source language.
//!
//! Operational terms ([`OpTerm`]) and structures ([`Structure`]) are stored as
//! generic applications of a constructor tag to a child vector. Each tag knows
//! its arity, sort signature, concrete token and fixity, so traversal, parsing,
//! rendering and pattern matching are all table driven.

mod lexer;
mod parse;
mod path;
mod pdl;
mod render;
mod structure;
mod term;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{
    parse_opterm, parse_opterm_with, parse_pdl, parse_pdl_action, parse_sequent,
    parse_sequent_with, parse_structure, parse_structure_with, Node, NodeKind, ParseError,
    ParseOptions,
};
pub(crate) use parse::{parse_pattern, MetaTable};
pub use path::{substructures, Path, SeqPath, Side, Step, Substructure};
pub use pdl::{PdlAction, PdlFormula};
pub use render::{latex_preamble, Latex};
pub use structure::{Sequent, StCon, Structure};
pub use term::{Fixity, OpCon, OpTerm};

/// The three disjoint types. Operational and structural terms share the same
/// set of sorts; the structural names (`FM`, `ACT`, `TACT`) are used when a
/// sort is reported for a structure or sequent.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Sort {
    Fm,
    Act,
    TAct,
}

impl Sort {
    pub const ALL: [Sort; 3] = [Sort::Fm, Sort::Act, Sort::TAct];

    /// Name used for operational terms.
    pub fn op_name(self) -> &'static str {
        match self {
            Sort::Fm => "Fm",
            Sort::Act => "Act",
            Sort::TAct => "TAct",
        }
    }

    /// Name used for structures.
    pub fn struct_name(self) -> &'static str {
        match self {
            Sort::Fm => "FM",
            Sort::Act => "ACT",
            Sort::TAct => "TACT",
        }
    }

    /// Action sorts carry a transitivity index: 0 for `TAct`, 1 for `Act`.
    pub fn action_index(self) -> Option<u8> {
        match self {
            Sort::Fm => None,
            Sort::Act => Some(1),
            Sort::TAct => Some(0),
        }
    }

    pub fn from_action_index(i: u8) -> Option<Sort> {
        match i {
            0 => Some(Sort::TAct),
            1 => Some(Sort::Act),
            _ => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.struct_name())
    }
}

/// Antecedent or succedent position of an occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Ant,
    Suc,
}

impl Position {
    pub fn flip(self) -> Position {
        match self {
            Position::Ant => Position::Suc,
            Position::Suc => Position::Ant,
        }
    }

    /// Flip when `cond` holds.
    pub fn flip_if(self, cond: bool) -> Position {
        if cond {
            self.flip()
        } else {
            self
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Ant => "antecedent",
            Position::Suc => "succedent",
        })
    }
}

/// A schematic variable used in rule patterns. It stands for an operational
/// term when it appears inside an operational leaf, and for a whole structure
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Meta {
    pub name: Arc<str>,
    pub sort: Sort,
}

impl Meta {
    pub fn new(name: &str, sort: Sort) -> Meta {
        Meta {
            name: Arc::from(name),
            sort,
        }
    }
}

/// Declared atomic propositions and atomic actions. The two sets are kept
/// disjoint; an identifier declared in neither is a parse error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub props: BTreeSet<String>,
    pub acts: BTreeSet<String>,
}

/// Errors raised while building a [`Signature`].
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("identifier `{0}` declared both as proposition and as action")]
    Overlap(String),
    #[error("`{0}` is a reserved word and cannot name an atom")]
    Reserved(String),
    #[error("`{0}` is not a valid atom name")]
    BadName(String),
    #[error("malformed atoms header: {0}")]
    Header(String),
}

impl Signature {
    pub fn new<P, A>(props: P, acts: A) -> Result<Signature, SignatureError>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<String>,
    {
        let props: BTreeSet<String> = props.into_iter().map(Into::into).collect();
        let acts: BTreeSet<String> = acts.into_iter().map(Into::into).collect();
        for name in props.iter().chain(acts.iter()) {
            if !lexer::is_atom_name(name) {
                return Err(SignatureError::BadName(name.clone()));
            }
            if lexer::is_reserved(name) {
                return Err(SignatureError::Reserved(name.clone()));
            }
        }
        if let Some(shared) = props.intersection(&acts).next() {
            return Err(SignatureError::Overlap(shared.clone()));
        }
        Ok(Signature { props, acts })
    }

    /// Parse a header line `atoms: props = p,q ; acts = a,b`.
    pub fn parse_header(line: &str) -> Result<Signature, SignatureError> {
        let body = line
            .trim()
            .strip_prefix("atoms:")
            .ok_or_else(|| SignatureError::Header("missing `atoms:` prefix".into()))?;
        let mut props = Vec::new();
        let mut acts = Vec::new();
        for part in body.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, list) = part.split_once('=').ok_or_else(|| {
                SignatureError::Header(format!("expected `key = list` in `{part}`"))
            })?;
            let names = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from);
            match key.trim() {
                "props" => props.extend(names),
                "acts" => acts.extend(names),
                other => return Err(SignatureError::Header(format!("unknown key `{other}`"))),
            }
        }
        Signature::new(props, acts)
    }

    pub fn header(&self) -> String {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        format!(
            "atoms: props = {} ; acts = {}",
            join(&self.props),
            join(&self.acts)
        )
    }

    /// Collect every atom occurring in the given sequents.
    pub fn of_sequents<'a>(seqs: impl IntoIterator<Item = &'a Sequent>) -> Signature {
        let mut sig = Signature::default();
        for s in seqs {
            s.ant.collect_atoms(&mut sig);
            s.suc.collect_atoms(&mut sig);
        }
        sig
    }

    pub fn merge(&mut self, other: &Signature) {
        self.props.extend(other.props.iter().cloned());
        self.acts.extend(other.acts.iter().cloned());
    }
}
