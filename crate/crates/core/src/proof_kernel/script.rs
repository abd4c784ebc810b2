//! Proof scripts: JSON lines, one node per line.
//!
//! The first line is `{"atoms": "<signature header>"}`. Every further line is
//! a node record whose `children` refer to earlier `id`s; the last node is the
//! root. ω-nodes name a generator and its arguments instead of children.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{OmegaFamily, Proof};
use crate::rule_catalog::{catalog, parse_binding, Binding, Substitution};
use crate::syntax::{parse_sequent, ParseError, Signature, SignatureError};

/// Rebuilds an ω-family from its name and arguments.
pub type GeneratorResolver<'a> =
    &'a dyn Fn(&str, &serde_json::Value) -> Option<Arc<dyn OmegaFamily>>;

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("line {line}: malformed record: {msg}")]
    Json { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("bad signature header: {0}")]
    Header(#[from] SignatureError),
    #[error("line {line}: unknown rule `{rule}`")]
    UnknownRule { line: usize, rule: String },
    #[error("line {line}: rule `{rule}` has no metavariable `{meta}`")]
    UnknownMeta {
        line: usize,
        rule: String,
        meta: String,
    },
    #[error("line {line}: child {child} is not an earlier node")]
    BadChild { line: usize, child: usize },
    #[error("line {line}: unknown ω-generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("script has no header or no nodes")]
    Empty,
}

#[derive(Serialize, Deserialize)]
struct Header {
    atoms: String,
}

#[derive(Serialize, Deserialize)]
struct OmegaRecord {
    generator: String,
    args: serde_json::Value,
    verified_up_to: usize,
}

#[derive(Serialize, Deserialize)]
struct NodeRecord {
    id: usize,
    rule: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    subst: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<OmegaRecord>,
    conclusion: String,
}

fn signature_of(p: &Proof) -> Signature {
    let mut sig = Signature::default();
    let mut walk = |q: &Proof| {
        q.conclusion().ant.collect_atoms(&mut sig);
        q.conclusion().suc.collect_atoms(&mut sig);
        if let Proof::Rule { subst, .. } | Proof::Omega { subst, .. } = q {
            for b in subst.0.values() {
                b.as_structure().collect_atoms(&mut sig);
            }
        }
    };
    fn go(q: &Proof, f: &mut impl FnMut(&Proof)) {
        super::deep(|| {
            f(q);
            q.children().iter().for_each(|c| go(c, f));
        })
    }
    go(p, &mut walk);
    sig
}

/// Serialize a proof. ω-families are stored by reference, not expanded.
pub fn save_script(p: &Proof) -> String {
    fn go(q: &Proof, out: &mut Vec<NodeRecord>) -> usize {
        let children = super::deep(|| q.children().iter().map(|c| go(c, out)).collect());
        let (subst, omega) = match q {
            Proof::Axiom { .. } => (BTreeMap::new(), None),
            Proof::Rule { subst, .. } => (render(subst), None),
            Proof::Omega {
                subst,
                family,
                verified_up_to,
                ..
            } => (
                render(subst),
                Some(OmegaRecord {
                    generator: family.name().to_string(),
                    args: family.args(),
                    verified_up_to: *verified_up_to,
                }),
            ),
        };
        let id = out.len();
        out.push(NodeRecord {
            id,
            rule: q.rule().to_string(),
            subst,
            children,
            omega,
            conclusion: q.conclusion().to_string(),
        });
        id
    }
    fn render(s: &Substitution) -> BTreeMap<String, String> {
        s.0.iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect()
    }
    let mut nodes = Vec::new();
    go(p, &mut nodes);
    let mut out = serde_json::to_string(&Header {
        atoms: signature_of(p).header(),
    })
    .expect("serializable");
    out.push('\n');
    for n in nodes {
        out.push_str(&serde_json::to_string(&n).expect("serializable"));
        out.push('\n');
    }
    out
}

/// Parse a script. The result is not checked; pass it to [`super::check`].
pub fn load_script(text: &str, generators: GeneratorResolver<'_>) -> Result<Proof, ScriptError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(ScriptError::Empty)?;
    let header: Header = serde_json::from_str(first).map_err(|e| ScriptError::Json {
        line: 1,
        msg: e.to_string(),
    })?;
    let sig = Signature::parse_header(&header.atoms)?;
    let mut built: HashMap<usize, Proof> = HashMap::new();
    let mut last = None;
    for (k, text) in lines {
        let line = k + 1;
        let rec: NodeRecord = serde_json::from_str(text).map_err(|e| ScriptError::Json {
            line,
            msg: e.to_string(),
        })?;
        let schema = catalog()
            .get(&rec.rule)
            .ok_or_else(|| ScriptError::UnknownRule {
                line,
                rule: rec.rule.clone(),
            })?;
        let conclusion = parse_sequent(&rec.conclusion, &sig)
            .map_err(|source| ScriptError::Parse { line, source })?;
        let mut subst = Substitution::new();
        for (name, value) in &rec.subst {
            let decl = schema.meta(name).ok_or_else(|| ScriptError::UnknownMeta {
                line,
                rule: rec.rule.clone(),
                meta: name.clone(),
            })?;
            let b: Binding = parse_binding(decl, value, &sig)
                .map_err(|source| ScriptError::Parse { line, source })?;
            subst.0.insert(name.clone(), b);
        }
        let node = match rec.omega {
            Some(o) => {
                let family = generators(&o.generator, &o.args).ok_or_else(|| {
                    ScriptError::UnknownGenerator {
                        line,
                        name: o.generator.clone(),
                    }
                })?;
                Proof::Omega {
                    rule: rec.rule,
                    subst,
                    family,
                    verified_up_to: o.verified_up_to,
                    conclusion,
                }
            }
            None if schema.is_axiom() && rec.children.is_empty() && rec.subst.is_empty() => {
                Proof::Axiom {
                    rule: rec.rule,
                    conclusion,
                }
            }
            None => {
                let children = rec
                    .children
                    .iter()
                    .map(|c| {
                        built
                            .remove(c)
                            .ok_or(ScriptError::BadChild { line, child: *c })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Proof::Rule {
                    rule: rec.rule,
                    subst,
                    children,
                    conclusion,
                }
            }
        };
        built.insert(rec.id, node);
        last = Some(rec.id);
    }
    last.and_then(|id| built.remove(&id))
        .ok_or(ScriptError::Empty)
}
