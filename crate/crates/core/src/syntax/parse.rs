use super::lexer::{is_ident_start, lex, Token};
use super::term::Fixity;
use super::{OpCon, OpTerm, PdlAction, PdlFormula, Sequent, Signature, Sort, StCon, Structure};

/// Syntax errors carry the byte offset they refer to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("at {pos}: unexpected character `{found}`")]
    BadChar { pos: usize, found: char },
    #[error("at {pos}: unexpected `{found}`, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: String,
    },
    #[error("unexpected end of input, expected {expected}")]
    End { expected: String },
    #[error("at {pos}: `{name}` is declared neither as a proposition nor as an action")]
    Undeclared { pos: usize, name: String },
    #[error("at {pos}: `{name}` is a {found} atom where a {wanted} atom is required")]
    WrongAtom {
        pos: usize,
        name: String,
        found: &'static str,
        wanted: &'static str,
    },
    #[error("at {pos}: structural connective `{token}` inside an operational term")]
    StructuralInTerm { pos: usize, token: String },
    #[error("at {pos}: cannot infer the index of `{family}` from its arguments")]
    Index { pos: usize, family: String },
    #[error("at {pos}: backward modalities are disabled")]
    Adjoint { pos: usize },
}

/// Parser switches.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept index-free connective tokens and reconstruct the index from the
    /// sorts of the arguments.
    pub infer_indices: bool,
    /// Accept the backward PDL modalities `<~a>` and `[~a]`.
    pub adjoint: bool,
}

/// Which grammar to parse with [`Node::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Pdl,
    OpTerm,
    Structure,
    Sequent,
}

/// Result of [`Node::parse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Pdl(PdlFormula),
    Op(OpTerm),
    Structure(Structure),
    Sequent(Sequent),
}

impl Node {
    pub fn parse(
        kind: NodeKind,
        text: &str,
        sig: &Signature,
        opts: ParseOptions,
    ) -> Result<Node, ParseError> {
        Ok(match kind {
            NodeKind::Pdl => Node::Pdl(parse_pdl(text, sig, opts)?),
            NodeKind::OpTerm => Node::Op(parse_opterm_with(text, sig, opts)?),
            NodeKind::Structure => Node::Structure(parse_structure_with(text, sig, opts)?),
            NodeKind::Sequent => Node::Sequent(parse_sequent_with(text, sig, opts)?),
        })
    }
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Node::Pdl(a) => write!(f, "{a}"),
            Node::Op(t) => write!(f, "{t}"),
            Node::Structure(s) => write!(f, "{s}"),
            Node::Sequent(s) => write!(f, "{s}"),
        }
    }
}

pub fn parse_opterm(text: &str, sig: &Signature) -> Result<OpTerm, ParseError> {
    parse_opterm_with(text, sig, ParseOptions::default())
}

pub fn parse_structure(text: &str, sig: &Signature) -> Result<Structure, ParseError> {
    parse_structure_with(text, sig, ParseOptions::default())
}

pub fn parse_sequent(text: &str, sig: &Signature) -> Result<Sequent, ParseError> {
    parse_sequent_with(text, sig, ParseOptions::default())
}

pub fn parse_opterm_with(
    text: &str,
    sig: &Signature,
    opts: ParseOptions,
) -> Result<OpTerm, ParseError> {
    let mut p = Parser::new(text, opts)?;
    let raw = p.expr(0)?;
    p.finish()?;
    raw.to_op(&Scope::plain(sig))
}

pub fn parse_structure_with(
    text: &str,
    sig: &Signature,
    opts: ParseOptions,
) -> Result<Structure, ParseError> {
    let mut p = Parser::new(text, opts)?;
    let raw = p.expr(0)?;
    p.finish()?;
    raw.to_structure(&Scope::plain(sig))
}

pub fn parse_sequent_with(
    text: &str,
    sig: &Signature,
    opts: ParseOptions,
) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text, opts)?;
    let ant = p.expr(0)?;
    p.expect("|-")?;
    let suc = p.expr(0)?;
    p.finish()?;
    let sc = Scope::plain(sig);
    Ok(Sequent {
        ant: ant.to_structure(&sc)?,
        suc: suc.to_structure(&sc)?,
    })
}

/// Metavariable declarations for schema patterns: name to sort and whether
/// the variable ranges over structures (`true`) or operational terms.
pub(crate) type MetaTable = std::collections::BTreeMap<String, (Sort, bool)>;

struct Scope<'a> {
    sig: &'a Signature,
    metas: Option<&'a MetaTable>,
}

impl<'a> Scope<'a> {
    fn plain(sig: &'a Signature) -> Scope<'a> {
        Scope { sig, metas: None }
    }
}

/// Parse a sequent pattern whose free identifiers may be metavariables.
/// Index-free family tokens are accepted.
pub(crate) fn parse_pattern(
    text: &str,
    sig: &Signature,
    metas: &MetaTable,
) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(
        text,
        ParseOptions {
            infer_indices: true,
            adjoint: false,
        },
    )?;
    let ant = p.expr(0)?;
    p.expect("|-")?;
    let suc = p.expr(0)?;
    p.finish()?;
    let sc = Scope {
        sig,
        metas: Some(metas),
    };
    Ok(Sequent {
        ant: ant.to_structure(&sc)?,
        suc: suc.to_structure(&sc)?,
    })
}

#[derive(Clone, Debug)]
enum Head {
    Atom(String),
    Op(OpCon),
    St(StCon),
    OpFamily(String),
    StFamily(String),
}

#[derive(Clone, Debug)]
struct Raw {
    head: Head,
    args: Vec<Raw>,
    pos: usize,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    opts: ParseOptions,
}

impl Parser {
    fn new(text: &str, opts: ParseOptions) -> Result<Parser, ParseError> {
        let toks = lex(text).map_err(|e| ParseError::BadChar {
            pos: e.pos,
            found: e.found,
        })?;
        Ok(Parser { toks, at: 0, opts })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::Unexpected {
                pos: t.pos,
                found: t.text.clone(),
                expected: "end of input".into(),
            }),
        }
    }

    fn expect(&mut self, text: &str) -> Result<usize, ParseError> {
        match self.peek() {
            Some(t) if t.text == text => {
                let pos = t.pos;
                self.at += 1;
                Ok(pos)
            }
            Some(t) => Err(ParseError::Unexpected {
                pos: t.pos,
                found: t.text.clone(),
                expected: format!("`{text}`"),
            }),
            None => Err(ParseError::End {
                expected: format!("`{text}`"),
            }),
        }
    }

    /// Classify a token as a connective, if it is one.
    fn classify(&self, text: &str) -> Option<(Head, Fixity)> {
        if let Some(c) = OpCon::by_token(text) {
            return Some((Head::Op(c), c.fixity()));
        }
        if let Some(c) = StCon::by_token(text) {
            return Some((Head::St(c), c.fixity()));
        }
        if self.opts.infer_indices {
            if let Some(c) = OpCon::by_family(text).first() {
                return Some((Head::OpFamily(text.to_string()), c.fixity()));
            }
            if let Some(c) = StCon::by_family(text).first() {
                return Some((Head::StFamily(text.to_string()), c.fixity()));
            }
        }
        None
    }

    fn expr(&mut self, min_level: u8) -> Result<Raw, ParseError> {
        let mut left = self.primary()?;
        while let Some(tok) = self.peek().cloned() {
            let Some((head, fixity)) = self.classify(&tok.text) else {
                break;
            };
            match fixity {
                Fixity::Postfix => {
                    self.at += 1;
                    left = Raw {
                        head,
                        args: vec![left],
                        pos: tok.pos,
                    };
                }
                Fixity::Infix { level, right } if level >= min_level => {
                    self.at += 1;
                    let next = if right { level } else { level + 1 };
                    let rhs = self.expr(next)?;
                    left = Raw {
                        head,
                        args: vec![left, rhs],
                        pos: tok.pos,
                    };
                }
                _ => break,
            }
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<Raw, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::End {
                expected: "a term".into(),
            });
        };
        if tok.text == "(" {
            self.at += 1;
            let inner = self.expr(0)?;
            self.expect(")")?;
            return Ok(inner);
        }
        if let Some((head, Fixity::Nullary)) = self.classify(&tok.text) {
            self.at += 1;
            return Ok(Raw {
                head,
                args: vec![],
                pos: tok.pos,
            });
        }
        if tok.text.starts_with(is_ident_start) && self.classify(&tok.text).is_none() {
            self.at += 1;
            return Ok(Raw {
                head: Head::Atom(tok.text),
                args: vec![],
                pos: tok.pos,
            });
        }
        Err(ParseError::Unexpected {
            pos: tok.pos,
            found: tok.text,
            expected: "a term".into(),
        })
    }
}

fn pick_index<C: Copy>(
    family: &str,
    pos: usize,
    candidates: Vec<C>,
    arg_sorts: &[Sort],
    sig_of: impl Fn(&C) -> Option<(Vec<Sort>, Sort)>,
) -> Result<C, ParseError> {
    let fits: Vec<C> = candidates
        .into_iter()
        .filter(|c| {
            sig_of(c)
                .map(|(args, _)| args == arg_sorts)
                .unwrap_or(false)
        })
        .collect();
    match fits.as_slice() {
        [only] => Ok(*only),
        _ => Err(ParseError::Index {
            pos,
            family: family.to_string(),
        }),
    }
}

impl Raw {
    fn to_op(&self, sc: &Scope) -> Result<OpTerm, ParseError> {
        match &self.head {
            Head::Atom(name) => {
                let sig = sc.sig;
                if let Some(&(sort, structural)) = sc.metas.and_then(|m| m.get(name.as_str())) {
                    if structural {
                        return Err(ParseError::StructuralInTerm {
                            pos: self.pos,
                            token: name.clone(),
                        });
                    }
                    Ok(OpTerm::meta(name, sort))
                } else if sig.props.contains(name) {
                    Ok(OpTerm::prop(name))
                } else if sig.acts.contains(name) {
                    Ok(OpTerm::act(name))
                } else {
                    Err(ParseError::Undeclared {
                        pos: self.pos,
                        name: name.clone(),
                    })
                }
            }
            Head::Op(c) => {
                let args = self
                    .args
                    .iter()
                    .map(|a| a.to_op(sc))
                    .collect::<Result<_, _>>()?;
                Ok(OpTerm::App(*c, args))
            }
            Head::OpFamily(fam) => {
                let args: Vec<OpTerm> = self
                    .args
                    .iter()
                    .map(|a| a.to_op(sc))
                    .collect::<Result<_, _>>()?;
                let sorts: Vec<Sort> = args.iter().map(OpTerm::root_sort).collect();
                let c = pick_index(
                    fam,
                    self.pos,
                    OpCon::by_family(fam),
                    &sorts,
                    OpCon::signature,
                )?;
                Ok(OpTerm::App(c, args))
            }
            Head::St(c) => Err(ParseError::StructuralInTerm {
                pos: self.pos,
                token: c.token(),
            }),
            Head::StFamily(f) => Err(ParseError::StructuralInTerm {
                pos: self.pos,
                token: f.clone(),
            }),
        }
    }

    fn to_structure(&self, sc: &Scope) -> Result<Structure, ParseError> {
        match &self.head {
            Head::St(c) => {
                let args = self
                    .args
                    .iter()
                    .map(|a| a.to_structure(sc))
                    .collect::<Result<_, _>>()?;
                Ok(Structure::App(*c, args))
            }
            Head::StFamily(fam) => {
                let args: Vec<Structure> = self
                    .args
                    .iter()
                    .map(|a| a.to_structure(sc))
                    .collect::<Result<_, _>>()?;
                let sorts: Vec<Sort> = args.iter().map(Structure::root_sort).collect();
                let c = pick_index(
                    fam,
                    self.pos,
                    StCon::by_family(fam),
                    &sorts,
                    StCon::signature,
                )?;
                Ok(Structure::App(c, args))
            }
            Head::Atom(name) => match sc.metas.and_then(|m| m.get(name.as_str())) {
                Some(&(sort, true)) => Ok(Structure::meta(name, sort)),
                _ => Ok(Structure::Op(self.to_op(sc)?)),
            },
            _ => Ok(Structure::Op(self.to_op(sc)?)),
        }
    }
}

// PDL: a separate recursive-descent grammar over the same tokens.

pub fn parse_pdl(
    text: &str,
    sig: &Signature,
    opts: ParseOptions,
) -> Result<PdlFormula, ParseError> {
    let mut p = PdlParser {
        inner: Parser::new(text, opts)?,
        sig,
    };
    let a = p.formula()?;
    p.inner.finish()?;
    Ok(a)
}

pub fn parse_pdl_action(
    text: &str,
    sig: &Signature,
    opts: ParseOptions,
) -> Result<PdlAction, ParseError> {
    let mut p = PdlParser {
        inner: Parser::new(text, opts)?,
        sig,
    };
    let x = p.action()?;
    p.inner.finish()?;
    Ok(x)
}

struct PdlParser<'s> {
    inner: Parser,
    sig: &'s Signature,
}

impl PdlParser<'_> {
    fn peek_text(&self) -> Option<&str> {
        self.inner.peek().map(|t| t.text.as_str())
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.inner.peek() {
            Some(t) => ParseError::Unexpected {
                pos: t.pos,
                found: t.text.clone(),
                expected: expected.into(),
            },
            None => ParseError::End {
                expected: expected.into(),
            },
        }
    }

    fn formula(&mut self) -> Result<PdlFormula, ParseError> {
        let mut left = self.conj()?;
        while self.peek_text() == Some("|") {
            self.inner.at += 1;
            left = PdlFormula::or(left, self.conj()?);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<PdlFormula, ParseError> {
        let mut left = self.unary()?;
        while self.peek_text() == Some("&") {
            self.inner.at += 1;
            left = PdlFormula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<PdlFormula, ParseError> {
        let Some(tok) = self.inner.peek().cloned() else {
            return Err(self.unexpected("a formula"));
        };
        match tok.text.as_str() {
            "~" => {
                self.inner.at += 1;
                Ok(PdlFormula::neg(self.unary()?))
            }
            "<" | "[" => {
                self.inner.at += 1;
                let back = self.peek_text() == Some("~");
                if back {
                    if !self.inner.opts.adjoint {
                        return Err(ParseError::Adjoint { pos: tok.pos });
                    }
                    self.inner.at += 1;
                }
                let x = self.action()?;
                let close = if tok.text == "<" { ">" } else { "]" };
                self.inner.expect(close)?;
                let a = self.unary()?;
                Ok(match (tok.text.as_str(), back) {
                    ("<", false) => PdlFormula::diamond(x, a),
                    ("<", true) => PdlFormula::back_diamond(x, a),
                    (_, false) => PdlFormula::boxed(x, a),
                    (_, true) => PdlFormula::back_box(x, a),
                })
            }
            "(" => {
                self.inner.at += 1;
                let a = self.formula()?;
                self.inner.expect(")")?;
                Ok(a)
            }
            name if name.starts_with(is_ident_start) => {
                self.inner.at += 1;
                if self.sig.props.contains(name) {
                    Ok(PdlFormula::atom(name))
                } else if self.sig.acts.contains(name) {
                    Err(ParseError::WrongAtom {
                        pos: tok.pos,
                        name: name.into(),
                        found: "action",
                        wanted: "proposition",
                    })
                } else {
                    Err(ParseError::Undeclared {
                        pos: tok.pos,
                        name: name.into(),
                    })
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn action(&mut self) -> Result<PdlAction, ParseError> {
        let mut left = self.seq()?;
        while self.peek_text() == Some("cup") {
            self.inner.at += 1;
            left = PdlAction::choice(left, self.seq()?);
        }
        Ok(left)
    }

    fn seq(&mut self) -> Result<PdlAction, ParseError> {
        let mut left = self.postfix()?;
        while self.peek_text() == Some(";") {
            self.inner.at += 1;
            left = PdlAction::seq(left, self.postfix()?);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<PdlAction, ParseError> {
        let mut x = self.primary_action()?;
        while self.peek_text() == Some("+") {
            self.inner.at += 1;
            x = PdlAction::plus(x);
        }
        Ok(x)
    }

    fn primary_action(&mut self) -> Result<PdlAction, ParseError> {
        let Some(tok) = self.inner.peek().cloned() else {
            return Err(self.unexpected("an action"));
        };
        if tok.text == "(" {
            let save = self.inner.at;
            self.inner.at += 1;
            if let Ok(x) = self.action() {
                if self.peek_text() == Some(")") {
                    self.inner.at += 1;
                    return Ok(x);
                }
            }
            self.inner.at = save + 1;
            let a = self.formula()?;
            self.inner.expect(")")?;
            self.inner.expect("?")?;
            return Ok(PdlAction::test(a));
        }
        if tok.text.starts_with(is_ident_start) {
            self.inner.at += 1;
            let name = tok.text.as_str();
            if self.sig.acts.contains(name) {
                return Ok(PdlAction::atom(name));
            }
            if self.sig.props.contains(name) {
                self.inner.expect("?")?;
                return Ok(PdlAction::test(PdlFormula::atom(name)));
            }
            return Err(ParseError::Undeclared {
                pos: tok.pos,
                name: name.into(),
            });
        }
        Err(self.unexpected("an action"))
    }
}
