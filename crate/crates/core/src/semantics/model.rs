use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use super::bits::{Rel, Worlds, MAX_WORLDS};
use crate::syntax::{Signature, SignatureError};

/// Finite Kripke model: `k` worlds, one relation per atomic action and one
/// world set per atomic proposition. Undeclared atoms denote the empty
/// relation or set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    k: usize,
    relations: BTreeMap<String, Rel>,
    valuation: BTreeMap<String, Worlds>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("model must have between 1 and {MAX_WORLDS} worlds, got {0}")]
    Size(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Atoms(#[from] SignatureError),
}

impl KripkeModel {
    pub fn new(k: usize) -> Result<KripkeModel, ModelError> {
        if k == 0 || k > MAX_WORLDS {
            return Err(ModelError::Size(k));
        }
        Ok(KripkeModel {
            k,
            relations: BTreeMap::new(),
            valuation: BTreeMap::new(),
        })
    }

    pub fn worlds(&self) -> usize {
        self.k
    }

    pub fn set_relation(
        &mut self,
        act: &str,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> &mut Self {
        self.relations
            .insert(act.to_string(), Rel::from_pairs(self.k, pairs));
        self
    }

    pub fn set_valuation(&mut self, prop: &str, ws: impl IntoIterator<Item = usize>) -> &mut Self {
        self.valuation
            .insert(prop.to_string(), Worlds::from_iter(self.k, ws));
        self
    }

    pub fn relation(&self, act: &str) -> Rel {
        self.relations
            .get(act)
            .copied()
            .unwrap_or_else(|| Rel::empty(self.k))
    }

    pub fn valuation(&self, prop: &str) -> Worlds {
        self.valuation
            .get(prop)
            .copied()
            .unwrap_or_else(|| Worlds::empty(self.k))
    }

    pub fn signature(&self) -> Signature {
        Signature {
            props: self.valuation.keys().cloned().collect(),
            acts: self.relations.keys().cloned().collect(),
        }
    }

    /// Uniformly random model over the atoms of `sig`: each pair and each
    /// membership is present with probability `density`.
    pub fn random(rng: &mut impl Rng, k: usize, sig: &Signature, density: f64) -> KripkeModel {
        let mut m = KripkeModel::new(k).expect("model size within bounds");
        for a in &sig.acts {
            let mut r = Rel::empty(k);
            for u in 0..k {
                for v in 0..k {
                    if rng.gen_bool(density) {
                        r.insert(u, v);
                    }
                }
            }
            m.relations.insert(a.clone(), r);
        }
        for p in &sig.props {
            let ws = (0..k).filter(|_| rng.gen_bool(density)).collect::<Vec<_>>();
            m.valuation.insert(p.clone(), Worlds::from_iter(k, ws));
        }
        m
    }

    /// Text form: an atoms header, `worlds: k`, then one line per action
    /// (`a: (0,1) (1,1)`) and per proposition (`p: 0 1`).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.signature().header());
        let _ = writeln!(out, "worlds: {}", self.k);
        for (a, r) in &self.relations {
            let pairs: Vec<String> = r.pairs().map(|(u, v)| format!("({u},{v})")).collect();
            let _ = writeln!(out, "{a}: {}", pairs.join(" "));
        }
        for (p, ws) in &self.valuation {
            let items: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(out, "{p}: {}", items.join(" "));
        }
        // Keep lines free of trailing blanks when a set is empty.
        out.lines()
            .map(str::trim_end)
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }

    pub fn from_text(text: &str) -> Result<KripkeModel, ModelError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, header) = lines.next().ok_or(ModelError::Syntax {
            line: 1,
            msg: "missing atoms header".into(),
        })?;
        let sig = Signature::parse_header(header)?;
        let (n, size_line) = lines.next().ok_or(ModelError::Syntax {
            line: 2,
            msg: "missing `worlds:` line".into(),
        })?;
        let k: usize = size_line
            .trim()
            .strip_prefix("worlds:")
            .and_then(|s| s.trim().parse().ok())
            .ok_or(ModelError::Syntax {
                line: n + 1,
                msg: "expected `worlds: <k>`".into(),
            })?;
        let mut m = KripkeModel::new(k)?;
        for a in &sig.acts {
            m.relations.insert(a.clone(), Rel::empty(k));
        }
        for p in &sig.props {
            m.valuation.insert(p.clone(), Worlds::empty(k));
        }
        for (n, line) in lines {
            let err = |msg: String| ModelError::Syntax { line: n + 1, msg };
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| err("expected `name: ...`".into()))?;
            let name = name.trim();
            let world = |s: &str| -> Result<usize, ModelError> {
                let w: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad world `{s}`")))?;
                if w >= k {
                    return Err(err(format!("world {w} out of range")));
                }
                Ok(w)
            };
            if sig.acts.contains(name) {
                let mut r = Rel::empty(k);
                for item in rest.split_whitespace() {
                    let inner = item
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| err(format!("bad pair `{item}`")))?;
                    let (u, v) = inner
                        .split_once(',')
                        .ok_or_else(|| err(format!("bad pair `{item}`")))?;
                    r.insert(world(u)?, world(v)?);
                }
                m.relations.insert(name.to_string(), r);
            } else if sig.props.contains(name) {
                let mut ws = Worlds::empty(k);
                for item in rest.split_whitespace() {
                    ws.bits |= 1 << world(item)?;
                }
                m.valuation.insert(name.to_string(), ws);
            } else {
                return Err(err(format!("`{name}` is not declared in the header")));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_exact() {
        let mut m = KripkeModel::new(3).unwrap();
        m.set_relation("a", [(0, 1), (1, 1)])
            .set_relation("b", [])
            .set_valuation("p", [0, 2])
            .set_valuation("q", []);
        let text = m.to_text();
        assert_eq!(
            text,
            "atoms: props = p,q ; acts = a,b\nworlds: 3\na: (0,1) (1,1)\nb:\np: 0 2\nq:\n"
        );
        let back = KripkeModel::from_text(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn rejects_out_of_range_world() {
        let text = "atoms: props = p ; acts = a\nworlds: 2\np: 2\n";
        assert!(matches!(
            KripkeModel::from_text(text),
            Err(ModelError::Syntax { line: 3, .. })
        ));
    }
}
