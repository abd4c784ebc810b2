//! Translation from PDL with adjoint modalities into the operational language,
//! and its left inverse.
//!
//! Negation becomes `A -> bot`. Composition and choice get the index fixed by
//! the sorts of their translated arguments. A test gets index 0 only where the
//! enclosing connective needs a transitive action, otherwise 1. Iterating an
//! already transitive action inserts `-` so that `+` receives a plain action.

use std::fmt;

use crate::syntax::{OpCon, OpTerm, PdlAction, PdlFormula, Sort};

/// Either kind of PDL node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pdl {
    Formula(PdlFormula),
    Action(PdlAction),
}

impl fmt::Display for Pdl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pdl::Formula(a) => a.fmt(f),
            Pdl::Action(x) => x.fmt(f),
        }
    }
}

/// The term has no PDL source.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("term `{0}` is not in the image of the translation")]
pub struct NotInImage(pub OpTerm);

/// Translate a formula.
pub fn translate_formula(a: &PdlFormula) -> OpTerm {
    use PdlFormula::*;
    match a {
        Atom(p) => OpTerm::Prop(p.clone()),
        Neg(b) => OpTerm::imp(translate_formula(b), OpTerm::bot()),
        Or(b, c) => OpTerm::or(translate_formula(b), translate_formula(c)),
        And(b, c) => OpTerm::and(translate_formula(b), translate_formula(c)),
        Diamond(x, b) => OpTerm::wtri(translate_action(x), translate_formula(b)),
        Box(x, b) => OpTerm::fbox(translate_action(x), translate_formula(b)),
        BackDiamond(x, b) => OpTerm::btri(translate_action(x), translate_formula(b)),
        BackBox(x, b) => OpTerm::bbox(translate_action(x), translate_formula(b)),
    }
}

/// Translate an action in a context that accepts either action sort.
pub fn translate_action(x: &PdlAction) -> OpTerm {
    action_in(x, None)
}

/// `want` is the sort demanded by the enclosing connective, if it is fixed.
fn action_in(x: &PdlAction, want: Option<Sort>) -> OpTerm {
    use PdlAction::*;
    match x {
        Atom(a) => OpTerm::Act(a.clone()),
        Seq(y, z) => OpTerm::seq(action_in(y, None), action_in(z, None)),
        Choice(y, z) => OpTerm::cup(action_in(y, None), action_in(z, None)),
        Test(b) => OpTerm::test(
            if want == Some(Sort::TAct) { 0 } else { 1 },
            translate_formula(b),
        ),
        Plus(y) => {
            let inner = action_in(y, Some(Sort::Act));
            if inner.root_sort() == Sort::TAct {
                OpTerm::plus(OpTerm::minus(inner))
            } else {
                OpTerm::plus(inner)
            }
        }
    }
}

/// Translate either kind of node.
pub fn translate(n: &Pdl) -> OpTerm {
    match n {
        Pdl::Formula(a) => translate_formula(a),
        Pdl::Action(x) => translate_action(x),
    }
}

/// Left inverse of [`translate`].
pub fn erase(t: &OpTerm) -> Result<Pdl, NotInImage> {
    match t.root_sort() {
        Sort::Fm => erase_formula(t).map(Pdl::Formula),
        _ => erase_action(t).map(Pdl::Action),
    }
}

pub fn erase_formula(t: &OpTerm) -> Result<PdlFormula, NotInImage> {
    let miss = || NotInImage(t.clone());
    match t {
        OpTerm::Prop(p) => Ok(PdlFormula::Atom(p.clone())),
        OpTerm::App(c, args) => {
            let f = |k: usize| erase_formula(&args[k]);
            let x = |k: usize| erase_action(&args[k]);
            match c {
                OpCon::Imp if args[1] == OpTerm::bot() => Ok(PdlFormula::neg(f(0)?)),
                OpCon::Or => Ok(PdlFormula::or(f(0)?, f(1)?)),
                OpCon::And => Ok(PdlFormula::and(f(0)?, f(1)?)),
                OpCon::Wtri(_) => Ok(PdlFormula::diamond(x(0)?, f(1)?)),
                OpCon::Fbox(_) => Ok(PdlFormula::boxed(x(0)?, f(1)?)),
                OpCon::Btri(_) => Ok(PdlFormula::back_diamond(x(0)?, f(1)?)),
                OpCon::Bbox(_) => Ok(PdlFormula::back_box(x(0)?, f(1)?)),
                _ => Err(miss()),
            }
        }
        _ => Err(miss()),
    }
}

pub fn erase_action(t: &OpTerm) -> Result<PdlAction, NotInImage> {
    let miss = || NotInImage(t.clone());
    match t {
        OpTerm::Act(a) => Ok(PdlAction::Atom(a.clone())),
        OpTerm::App(c, args) => match c {
            OpCon::Seq(_) => Ok(PdlAction::seq(
                erase_action(&args[0])?,
                erase_action(&args[1])?,
            )),
            OpCon::Cup(_) => Ok(PdlAction::choice(
                erase_action(&args[0])?,
                erase_action(&args[1])?,
            )),
            OpCon::Test(_) => Ok(PdlAction::test(erase_formula(&args[0])?)),
            OpCon::Plus => match &args[0] {
                OpTerm::App(OpCon::Minus, inner) => Ok(PdlAction::plus(erase_action(&inner[0])?)),
                other => Ok(PdlAction::plus(erase_action(other)?)),
            },
            _ => Err(miss()),
        },
        _ => Err(miss()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_opterm, parse_pdl, parse_pdl_action, ParseOptions, Signature};
    use crate::typing::sort_of_op;

    fn sig() -> Signature {
        Signature::new(["p", "q"], ["a", "b"]).unwrap()
    }

    fn tr(text: &str) -> OpTerm {
        let opts = ParseOptions {
            adjoint: true,
            ..Default::default()
        };
        translate_formula(&parse_pdl(text, &sig(), opts).unwrap())
    }

    fn op(text: &str) -> OpTerm {
        parse_opterm(text, &sig()).unwrap()
    }

    #[test]
    fn modalities() {
        assert_eq!(tr("<a>p"), op("a wtri1 p"));
        assert_eq!(tr("[a+]p"), op("a+ fbox0 p"));
        assert_eq!(tr("<~a>p"), op("a btri1 p"));
        assert_eq!(tr("[~a+]p"), op("a+ bbox0 p"));
        assert_eq!(tr("~p"), op("p -> bot"));
    }

    #[test]
    fn action_indices_follow_argument_sorts() {
        let x = parse_pdl_action("a ; b+", &sig(), ParseOptions::default()).unwrap();
        assert_eq!(translate_action(&x), op("a ;3 b+"));
        let y = parse_pdl_action("a+ cup b+", &sig(), ParseOptions::default()).unwrap();
        assert_eq!(translate_action(&y), op("a+ cup4 b+"));
        let z = parse_pdl_action("(a+)+", &sig(), ParseOptions::default()).unwrap();
        let t = translate_action(&z);
        assert_eq!(t, op("a+ - +"));
        assert_eq!(sort_of_op(&t), Ok(Sort::TAct));
    }

    #[test]
    fn erase_examples() {
        assert_eq!(erase(&op("a wtri1 p")).unwrap().to_string(), "<a>p");
        assert!(erase(&op("a+ -")).is_err());
        assert_eq!(erase(&op("a+ cup4 b+")).unwrap().to_string(), "a+ cup b+");
        assert!(erase(&op("p -> q")).is_err());
    }
}
