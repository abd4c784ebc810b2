//! Sort assignment, type-uniformity, and the position-dependent reading of
//! structures as operational terms.

use std::fmt;

use crate::syntax::{OpCon, OpTerm, Path, Position, Sequent, Side, Sort, StCon, Step, Structure};

/// Child-index address inside a term or structure, used in diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("ill-sorted node at {path}: {detail}")]
    IllSorted {
        side: Option<Side>,
        path: NodePath,
        detail: String,
    },
    #[error("type mismatch: antecedent is {0}, succedent is {1}")]
    Mismatch(Sort, Sort),
}

impl TypeError {
    fn on_side(self, side: Side) -> TypeError {
        match self {
            TypeError::IllSorted { path, detail, .. } => TypeError::IllSorted {
                side: Some(side),
                path,
                detail,
            },
            other => other,
        }
    }
}

fn ill(path: &[usize], detail: String) -> TypeError {
    TypeError::IllSorted {
        side: None,
        path: NodePath(path.to_vec()),
        detail,
    }
}

fn check_op(t: &OpTerm, path: &mut Vec<usize>) -> Result<Sort, TypeError> {
    match t {
        OpTerm::Prop(_) => Ok(Sort::Fm),
        OpTerm::Act(_) => Ok(Sort::Act),
        OpTerm::Meta(m) => Ok(m.sort),
        OpTerm::App(c, args) => {
            let (want, out) = c
                .signature()
                .ok_or_else(|| ill(path, format!("`{}` has no valid signature", c.token())))?;
            if want.len() != args.len() {
                return Err(ill(
                    path,
                    format!(
                        "`{}` expects {} arguments, got {}",
                        c.token(),
                        want.len(),
                        args.len()
                    ),
                ));
            }
            for (k, (arg, w)) in args.iter().zip(&want).enumerate() {
                path.push(k);
                let got = check_op(arg, path)?;
                if got != *w {
                    return Err(ill(
                        path,
                        format!(
                            "`{}` expects {} here, found {}",
                            c.token(),
                            w.op_name(),
                            got.op_name()
                        ),
                    ));
                }
                path.pop();
            }
            Ok(out)
        }
    }
}

fn check_st(s: &Structure, path: &mut Vec<usize>) -> Result<Sort, TypeError> {
    match s {
        Structure::Op(t) => check_op(t, path),
        Structure::Meta(m) => Ok(m.sort),
        Structure::App(c, args) => {
            let (want, out) = c
                .signature()
                .ok_or_else(|| ill(path, format!("`{}` has no valid signature", c.token())))?;
            if want.len() != args.len() {
                return Err(ill(
                    path,
                    format!(
                        "`{}` expects {} arguments, got {}",
                        c.token(),
                        want.len(),
                        args.len()
                    ),
                ));
            }
            for (k, (arg, w)) in args.iter().zip(&want).enumerate() {
                path.push(k);
                let got = check_st(arg, path)?;
                if got != *w {
                    return Err(ill(
                        path,
                        format!("`{}` expects {} here, found {}", c.token(), w, got),
                    ));
                }
                path.pop();
            }
            Ok(out)
        }
    }
}

/// Sort of an operational term, checking every constructor signature.
pub fn sort_of_op(t: &OpTerm) -> Result<Sort, TypeError> {
    check_op(t, &mut Vec::new())
}

/// Sort of a structure, checking every constructor signature.
pub fn sort_of_structure(s: &Structure) -> Result<Sort, TypeError> {
    check_st(s, &mut Vec::new())
}

/// A sequent whose sides are well sorted and of equal sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedSequent {
    pub sequent: Sequent,
    pub sort: Sort,
}

pub fn check_sequent(s: &Sequent) -> Result<TypedSequent, TypeError> {
    let ant = sort_of_structure(&s.ant).map_err(|e| e.on_side(Side::Ant))?;
    let suc = sort_of_structure(&s.suc).map_err(|e| e.on_side(Side::Suc))?;
    if ant != suc {
        return Err(TypeError::Mismatch(ant, suc));
    }
    Ok(TypedSequent {
        sequent: s.clone(),
        sort: ant,
    })
}

/// Result of reading a structure as an operational term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reading {
    Term(OpTerm),
    /// The node at this path has no counterpart on its side, or is virtual.
    Uninterpretable(Path),
}

impl Reading {
    pub fn term(self) -> Option<OpTerm> {
        match self {
            Reading::Term(t) => Some(t),
            Reading::Uninterpretable(_) => None,
        }
    }
}

/// Operational counterpart of a structural connective at a position.
pub fn counterpart(con: StCon, pos: Position) -> Option<OpCon> {
    use Position::{Ant, Suc};
    use StCon::*;
    if con.is_virtual() {
        return None;
    }
    Some(match (con, pos) {
        (I, Ant) => OpCon::Top,
        (I, Suc) => OpCon::Bot,
        (Comma, Ant) => OpCon::And,
        (Comma, Suc) => OpCon::Or,
        (Gt, Ant) => OpCon::Dimp,
        (Gt, Suc) => OpCon::Imp,
        (Lt, Ant) => OpCon::Dsub,
        (Lt, Suc) => OpCon::Rimp,
        (RevTest(i), Suc) => OpCon::RevTest(i),
        (Wtri(i), Ant) => OpCon::Wtri(i),
        (Btri(i), Ant) => OpCon::Btri(i),
        (Fbox(i), Suc) => OpCon::Fbox(i),
        (Bbox(i), Suc) => OpCon::Bbox(i),
        (GI(i), Suc) => OpCon::Crash(i),
        (Phi(i), Ant) => OpCon::Skip(i),
        (Ominus, Suc) => OpCon::Minus,
        (Oplus, Ant) => OpCon::Plus,
        (Test(i), Ant) => OpCon::Test(i),
        (Semi(j), Ant) => OpCon::Seq(j),
        (Btw(j), Suc) => OpCon::Cup(j),
        (Succ(j), Suc) => OpCon::ResSucc(j),
        (Prec(j), Suc) => OpCon::ResPrec(j),
        (ResR(j), Ant) => OpCon::DiffR(j),
        (ResL(j), Ant) => OpCon::DiffL(j),
        (WLeft(i), Suc) => OpCon::WLeft(i),
        (BLeft(i), Suc) => OpCon::BLeft(i),
        _ => return None,
    })
}

/// Read a structure at a position, replacing each structural connective by
/// its counterpart on that side. Structural metavariables read as operational
/// metavariables of the same sort.
pub fn operational_reading(st: &Structure, pos: Position) -> Reading {
    fn go(st: &Structure, pos: Position, path: &mut Vec<Step>) -> Result<OpTerm, Path> {
        match st {
            Structure::Op(t) => Ok(t.clone()),
            Structure::Meta(m) => Ok(OpTerm::Meta(m.clone())),
            Structure::App(con, args) => {
                let op = counterpart(*con, pos).ok_or_else(|| Path {
                    steps: path.clone(),
                })?;
                let mut out = Vec::with_capacity(args.len());
                for (child, (arg, &flip)) in args.iter().zip(con.flips()).enumerate() {
                    path.push(Step { child, flip });
                    out.push(go(arg, pos.flip_if(flip), path)?);
                    path.pop();
                }
                Ok(OpTerm::App(op, out))
            }
        }
    }
    match go(st, pos, &mut Vec::new()) {
        Ok(t) => Reading::Term(t),
        Err(p) => Reading::Uninterpretable(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_opterm, parse_sequent, parse_structure, Signature};

    fn sig() -> Signature {
        Signature::new(["p", "q"], ["a", "b"]).unwrap()
    }

    #[test]
    fn sorts_of_examples() {
        let s = sig();
        assert_eq!(sort_of_op(&parse_opterm("a+", &s).unwrap()), Ok(Sort::TAct));
        assert_eq!(
            sort_of_op(&parse_opterm("a wtri1 p", &s).unwrap()),
            Ok(Sort::Fm)
        );
        assert_eq!(
            sort_of_op(&parse_opterm("a+ ;4 b+", &s).unwrap()),
            Ok(Sort::Act)
        );
        assert!(sort_of_op(&parse_opterm("a+ wtri1 p", &s).unwrap()).is_err());
    }

    #[test]
    fn checks_uniformity() {
        let s = sig();
        let ok = check_sequent(&parse_sequent("a^op |- a+", &s).unwrap()).unwrap();
        assert_eq!(ok.sort, Sort::TAct);
        let bad = check_sequent(&parse_sequent("a |- p", &s).unwrap());
        assert_eq!(bad, Err(TypeError::Mismatch(Sort::Act, Sort::Fm)));
    }

    #[test]
    fn reads_by_position() {
        let s = sig();
        let st = parse_structure("p, q", &s).unwrap();
        assert_eq!(
            operational_reading(&st, Position::Ant).term(),
            Some(parse_opterm("p & q", &s).unwrap())
        );
        assert_eq!(
            operational_reading(&st, Position::Suc).term(),
            Some(parse_opterm("p | q", &s).unwrap())
        );
        let plus = parse_structure("a^op", &s).unwrap();
        assert_eq!(
            operational_reading(&plus, Position::Ant).term(),
            Some(parse_opterm("a+", &s).unwrap())
        );
        let virt = parse_structure("p vwleft0 q", &s).unwrap();
        for pos in [Position::Ant, Position::Suc] {
            assert!(matches!(
                operational_reading(&virt, pos),
                Reading::Uninterpretable(_)
            ));
        }
    }
}
