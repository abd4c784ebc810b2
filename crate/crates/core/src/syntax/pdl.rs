use std::fmt;
use std::sync::Arc;

/// Formulas of PDL with positive iteration, optionally extended with the
/// backward modalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PdlFormula {
    Atom(Arc<str>),
    Neg(Box<PdlFormula>),
    Or(Box<PdlFormula>, Box<PdlFormula>),
    And(Box<PdlFormula>, Box<PdlFormula>),
    Diamond(Box<PdlAction>, Box<PdlFormula>),
    Box(Box<PdlAction>, Box<PdlFormula>),
    BackDiamond(Box<PdlAction>, Box<PdlFormula>),
    BackBox(Box<PdlAction>, Box<PdlFormula>),
}

/// Programs of PDL.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PdlAction {
    Atom(Arc<str>),
    Seq(Box<PdlAction>, Box<PdlAction>),
    Choice(Box<PdlAction>, Box<PdlAction>),
    Test(Box<PdlFormula>),
    Plus(Box<PdlAction>),
}

impl PdlFormula {
    pub fn atom(p: &str) -> PdlFormula {
        PdlFormula::Atom(Arc::from(p))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: PdlFormula) -> PdlFormula {
        PdlFormula::Neg(Box::new(a))
    }
    pub fn or(a: PdlFormula, b: PdlFormula) -> PdlFormula {
        PdlFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: PdlFormula, b: PdlFormula) -> PdlFormula {
        PdlFormula::And(Box::new(a), Box::new(b))
    }
    pub fn diamond(x: PdlAction, a: PdlFormula) -> PdlFormula {
        PdlFormula::Diamond(Box::new(x), Box::new(a))
    }
    pub fn boxed(x: PdlAction, a: PdlFormula) -> PdlFormula {
        PdlFormula::Box(Box::new(x), Box::new(a))
    }
    pub fn back_diamond(x: PdlAction, a: PdlFormula) -> PdlFormula {
        PdlFormula::BackDiamond(Box::new(x), Box::new(a))
    }
    pub fn back_box(x: PdlAction, a: PdlFormula) -> PdlFormula {
        PdlFormula::BackBox(Box::new(x), Box::new(a))
    }

    /// Whether a backward modality occurs anywhere.
    pub fn uses_adjoint(&self) -> bool {
        use PdlFormula::*;
        match self {
            Atom(_) => false,
            Neg(a) => a.uses_adjoint(),
            Or(a, b) | And(a, b) => a.uses_adjoint() || b.uses_adjoint(),
            Diamond(x, a) | Box(x, a) => x.uses_adjoint() || a.uses_adjoint(),
            BackDiamond(..) | BackBox(..) => true,
        }
    }

    pub fn depth(&self) -> usize {
        use PdlFormula::*;
        1 + match self {
            Atom(_) => 0,
            Neg(a) => a.depth(),
            Or(a, b) | And(a, b) => a.depth().max(b.depth()),
            Diamond(x, a) | Box(x, a) | BackDiamond(x, a) | BackBox(x, a) => {
                x.depth().max(a.depth())
            }
        }
    }
}

impl PdlAction {
    pub fn atom(a: &str) -> PdlAction {
        PdlAction::Atom(Arc::from(a))
    }
    pub fn seq(x: PdlAction, y: PdlAction) -> PdlAction {
        PdlAction::Seq(Box::new(x), Box::new(y))
    }
    pub fn choice(x: PdlAction, y: PdlAction) -> PdlAction {
        PdlAction::Choice(Box::new(x), Box::new(y))
    }
    pub fn test(a: PdlFormula) -> PdlAction {
        PdlAction::Test(Box::new(a))
    }
    pub fn plus(x: PdlAction) -> PdlAction {
        PdlAction::Plus(Box::new(x))
    }

    pub fn uses_adjoint(&self) -> bool {
        use PdlAction::*;
        match self {
            Atom(_) => false,
            Seq(x, y) | Choice(x, y) => x.uses_adjoint() || y.uses_adjoint(),
            Test(a) => a.uses_adjoint(),
            Plus(x) => x.uses_adjoint(),
        }
    }

    pub fn depth(&self) -> usize {
        use PdlAction::*;
        1 + match self {
            Atom(_) => 0,
            Seq(x, y) | Choice(x, y) => x.depth().max(y.depth()),
            Test(a) => a.depth(),
            Plus(x) => x.depth(),
        }
    }
}

// Binding levels: `|` < `&` < prefix operators; `cup` < `;` < postfix.
fn formula_level(a: &PdlFormula) -> u8 {
    match a {
        PdlFormula::Or(..) => 1,
        PdlFormula::And(..) => 2,
        _ => 3,
    }
}

fn action_level(x: &PdlAction) -> u8 {
    match x {
        PdlAction::Choice(..) => 1,
        PdlAction::Seq(..) => 2,
        _ => 3,
    }
}

struct Paren<'a, T>(&'a T, bool);

impl fmt::Display for Paren<'_, PdlFormula> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Paren<'_, PdlAction> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for PdlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PdlFormula::*;
        let lvl = formula_level(self);
        // Children at the same level are parenthesized so that the rendering
        // does not depend on associativity.
        let sub = |a: &PdlFormula| formula_level(a) <= lvl && lvl < 3;
        let arg = |a: &PdlFormula| formula_level(a) < 3;
        match self {
            Atom(p) => f.write_str(p),
            Neg(a) => write!(f, "~{}", Paren(a.as_ref(), arg(a))),
            Or(a, b) => write!(
                f,
                "{} | {}",
                Paren(a.as_ref(), sub(a)),
                Paren(b.as_ref(), sub(b))
            ),
            And(a, b) => write!(
                f,
                "{} & {}",
                Paren(a.as_ref(), sub(a)),
                Paren(b.as_ref(), sub(b))
            ),
            Diamond(x, a) => write!(f, "<{}>{}", x, Paren(a.as_ref(), arg(a))),
            Box(x, a) => write!(f, "[{}]{}", x, Paren(a.as_ref(), arg(a))),
            BackDiamond(x, a) => write!(f, "<~{}>{}", x, Paren(a.as_ref(), arg(a))),
            BackBox(x, a) => write!(f, "[~{}]{}", x, Paren(a.as_ref(), arg(a))),
        }
    }
}

impl fmt::Display for PdlAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PdlAction::*;
        let lvl = action_level(self);
        let sub = |x: &PdlAction| action_level(x) <= lvl;
        match self {
            Atom(a) => f.write_str(a),
            Seq(x, y) => write!(
                f,
                "{} ; {}",
                Paren(x.as_ref(), sub(x)),
                Paren(y.as_ref(), sub(y))
            ),
            Choice(x, y) => {
                write!(
                    f,
                    "{} cup {}",
                    Paren(x.as_ref(), sub(x)),
                    Paren(y.as_ref(), sub(y))
                )
            }
            Test(a) => match a.as_ref() {
                PdlFormula::Atom(p) => write!(f, "{p}?"),
                other => write!(f, "({other})?"),
            },
            Plus(x) => write!(
                f,
                "{}+",
                Paren(x.as_ref(), !matches!(x.as_ref(), Atom(_) | Plus(_)))
            ),
        }
    }
}
