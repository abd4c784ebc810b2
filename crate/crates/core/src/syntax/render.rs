//! ASCII and LaTeX renderers.
//!
//! A child is parenthesized whenever it is an infix node binding no tighter
//! than its parent, so the ASCII output reparses to the same tree regardless
//! of associativity.

use std::fmt::{self, Write as _};

use super::term::{Fixity, POSTFIX_LEVEL};
use super::{Meta, OpCon, OpTerm, Sequent, StCon, Structure};

/// Uniform view over operational and structural nodes.
enum View<'a> {
    Atom(&'a str),
    Meta(&'a Meta),
    Node {
        fixity: Fixity,
        con: Con,
        args: Args<'a>,
    },
}

#[derive(Clone, Copy)]
enum Con {
    Op(OpCon),
    St(StCon),
}

#[derive(Clone, Copy)]
enum Args<'a> {
    Op(&'a [OpTerm]),
    St(&'a [Structure]),
}

trait Viewable {
    fn view(&self) -> View<'_>;
}

impl Viewable for OpTerm {
    fn view(&self) -> View<'_> {
        match self {
            OpTerm::Prop(p) | OpTerm::Act(p) => View::Atom(p),
            OpTerm::Meta(m) => View::Meta(m),
            OpTerm::App(c, args) => View::Node {
                fixity: c.fixity(),
                con: Con::Op(*c),
                args: Args::Op(args),
            },
        }
    }
}

impl Viewable for Structure {
    fn view(&self) -> View<'_> {
        match self {
            Structure::Op(t) => t.view(),
            Structure::Meta(m) => View::Meta(m),
            Structure::App(c, args) => View::Node {
                fixity: c.fixity(),
                con: Con::St(*c),
                args: Args::St(args),
            },
        }
    }
}

fn level(v: &View<'_>) -> u8 {
    match v {
        View::Node {
            fixity: Fixity::Infix { level, .. },
            ..
        } => *level,
        _ => POSTFIX_LEVEL,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Ascii,
    Latex,
}

fn con_ascii(c: Con) -> String {
    match c {
        Con::Op(c) => c.token(),
        Con::St(c) => c.token(),
    }
}

fn con_latex(c: Con) -> String {
    let (mac, idx) = match c {
        Con::Op(c) => (c.latex_macro(), c.index()),
        Con::St(c) => (c.latex_macro(), c.index()),
    };
    match idx {
        Some(i) => format!("\\{mac}{{{i}}}"),
        None => format!("\\{mac}"),
    }
}

fn write_view(out: &mut String, v: &View<'_>, style: Style) {
    match v {
        View::Atom(a) => out.push_str(a),
        View::Meta(m) => {
            if style == Style::Latex {
                let _ = write!(out, "\\mathit{{{}}}", m.name);
            } else {
                out.push_str(&m.name);
            }
        }
        View::Node { fixity, con, args } => {
            let tok = match style {
                Style::Ascii => con_ascii(*con),
                Style::Latex => con_latex(*con),
            };
            let children: Vec<View<'_>> = match args {
                Args::Op(a) => a.iter().map(Viewable::view).collect(),
                Args::St(a) => a.iter().map(Viewable::view).collect(),
            };
            let my = level(v);
            let child = |out: &mut String, c: &View<'_>| {
                let infix = matches!(
                    c,
                    View::Node {
                        fixity: Fixity::Infix { .. },
                        ..
                    }
                );
                if infix && level(c) <= my {
                    out.push('(');
                    write_view(out, c, style);
                    out.push(')');
                } else {
                    write_view(out, c, style);
                }
            };
            match fixity {
                Fixity::Nullary => out.push_str(&tok),
                Fixity::Postfix => {
                    child(out, &children[0]);
                    out.push_str(&tok);
                }
                Fixity::Infix { .. } => {
                    child(out, &children[0]);
                    let comma = matches!(con, Con::St(StCon::Comma));
                    if comma && style == Style::Ascii {
                        out.push_str(", ");
                    } else {
                        out.push(' ');
                        out.push_str(&tok);
                        out.push(' ');
                    }
                    child(out, &children[1]);
                }
            }
        }
    }
}

fn render(v: &impl Viewable, style: Style) -> String {
    let mut s = String::new();
    write_view(&mut s, &v.view(), style);
    s
}

impl fmt::Display for OpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Ascii))
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Ascii))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.ant, self.suc)
    }
}

/// LaTeX rendering wrapper: `Latex(&x).to_string()`.
pub struct Latex<'a, T>(pub &'a T);

impl fmt::Display for Latex<'_, OpTerm> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0, Style::Latex))
    }
}

impl fmt::Display for Latex<'_, Structure> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0, Style::Latex))
    }
}

impl fmt::Display for Latex<'_, Sequent> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} \\vdash {}", Latex(&self.0.ant), Latex(&self.0.suc))
    }
}

/// `\newcommand` definitions for every connective macro. Redefine any of them
/// to change the printed glyphs.
pub fn latex_preamble() -> String {
    let mut seen = std::collections::BTreeMap::new();
    for c in OpCon::all() {
        seen.entry(c.latex_macro())
            .or_insert((c.index().is_some(), op_glyph(*c)));
    }
    for c in StCon::all() {
        seen.entry(c.latex_macro())
            .or_insert((c.index().is_some(), st_glyph(*c)));
    }
    let mut out = String::new();
    for (mac, (indexed, glyph)) in seen {
        if indexed {
            let _ = writeln!(out, "\\newcommand{{\\{mac}}}[1]{{{glyph}_{{#1}}}}");
        } else {
            let _ = writeln!(out, "\\newcommand{{\\{mac}}}{{{glyph}}}");
        }
    }
    out
}

fn op_glyph(c: OpCon) -> &'static str {
    use OpCon::*;
    match c {
        Top => "\\top",
        Bot => "\\bot",
        And => "\\wedge",
        Or => "\\vee",
        Imp => "\\rightarrow",
        Dimp => "\\succ",
        Rimp => "\\leftarrow",
        Dsub => "\\prec",
        Wtri(_) => "\\vartriangle",
        Btri(_) => "\\blacktriangle",
        Fbox(_) => "\\multimap",
        Bbox(_) => "\\multimapdot",
        Test(_) => "?",
        Plus => "^{+}",
        Minus => "^{-}",
        Seq(_) => ";",
        Cup(_) => "\\cup",
        Crash(_) => "0",
        Skip(_) => "1",
        RevTest(_) => "\\text{\\textexclamdown}",
        ResSucc(_) => "\\succ",
        ResPrec(_) => "\\prec",
        DiffR(_) => "\\setminus",
        DiffL(_) => "\\setminus",
        WLeft(_) => "\\trianglelefteq",
        BLeft(_) => "\\blacktriangleleft",
    }
}

fn st_glyph(c: StCon) -> &'static str {
    use StCon::*;
    match c {
        I => "\\mathrm{I}",
        Comma => ",",
        Gt => ">",
        Lt => "<",
        RevTest(_) => "\\text{\\textexclamdown}",
        Wtri(_) => "\\mathbin{\\bigtriangleup}",
        Btri(_) => "\\mathbin{\\blacktriangle}",
        Fbox(_) => "\\mathbin{\\triangleright}",
        Bbox(_) => "\\mathbin{\\blacktriangleright}",
        GI(_) => "\\mathbb{I}",
        Phi(_) => "\\Phi",
        Ominus => "^{\\ominus}",
        Oplus => "^{\\oplus}",
        Test(_) => "\\boldsymbol{?}",
        Semi(_) => "\\,;\\,",
        Btw(_) => "\\between",
        Succ(_) | ResR(_) => "\\succ",
        Prec(_) | ResL(_) => "\\prec",
        WLeft(_) => "\\triangleleft",
        BLeft(_) => "\\blacktriangleleft",
    }
}
