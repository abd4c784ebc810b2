use std::collections::HashMap;
use std::sync::OnceLock;

use super::term::{pair_index, pair_sorts, residual_left, residual_right, Fixity};
use super::{Meta, OpTerm, Signature, Sort};

/// Structural connectives.
///
/// Index conventions follow [`super::OpCon`]. For the residual families the
/// index is the one of the composition or choice they are adjoint to, which
/// is why some of them land in `TACT`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StCon {
    /// Unit `I`.
    I,
    Comma,
    /// `X > Y`
    Gt,
    /// `X < Y`
    Lt,
    /// Reverse test `x ?rb_i`: an action structure read as a formula.
    RevTest(u8),
    Wtri(u8),
    Btri(u8),
    Fbox(u8),
    Bbox(u8),
    /// Unit of structural choice.
    GI(u8),
    /// Unit of structural composition.
    Phi(u8),
    /// `Delta ^om`: transitive action seen as an action.
    Ominus,
    /// `Pi ^op`: action seen as a transitive action.
    Oplus,
    /// `X ?b_i`
    Test(u8),
    /// Structural composition.
    Semi(u8),
    /// Structural choice.
    Btw(u8),
    /// `x succ_j z`, right residual of `;b_j`. Virtual for `j` in {3, 4}.
    Succ(u8),
    /// `z prec_j y`, left residual of `;b_j`. Virtual for `j` in {2, 4}.
    Prec(u8),
    /// `x resR_k z`, residual of `btw_k` in its first argument.
    ResR(u8),
    /// `z resL_k y`, residual of `btw_k` in its second argument.
    ResL(u8),
    /// `Z swleft Y`, residual of the backward triangle. Virtual when `i = 0`.
    WLeft(u8),
    /// `Z sbleft Y`, residual of the forward triangle. Virtual when `i = 0`.
    BLeft(u8),
}

use Sort::{Act, Fm, TAct};

impl StCon {
    pub fn signature(&self) -> Option<(Vec<Sort>, Sort)> {
        use StCon::*;
        let act = |i: u8| Sort::from_action_index(i);
        Some(match *self {
            I => (vec![], Fm),
            Comma | Gt | Lt => (vec![Fm, Fm], Fm),
            RevTest(i) => (vec![act(i)?], Fm),
            Wtri(i) | Btri(i) | Fbox(i) | Bbox(i) => (vec![act(i)?, Fm], Fm),
            GI(i) | Phi(i) => (vec![], act(i)?),
            Ominus => (vec![TAct], Act),
            Oplus => (vec![Act], TAct),
            Test(i) => (vec![Fm], act(i)?),
            Semi(j) | Btw(j) => (pair_sorts(j)?.to_vec(), Act),
            Succ(j) | ResR(j) => residual_right(j)?,
            Prec(j) | ResL(j) => residual_left(j)?,
            WLeft(i) | BLeft(i) => (vec![Fm, Fm], act(i)?),
        })
    }

    pub fn arity(&self) -> usize {
        self.signature().map(|(a, _)| a.len()).unwrap_or(0)
    }

    /// Per child: whether the child sits on the opposite side of its parent.
    pub fn flips(&self) -> &'static [bool] {
        use StCon::*;
        match self {
            Gt | Fbox(_) | Bbox(_) | Succ(_) | ResR(_) => &[true, false],
            Lt | WLeft(_) | BLeft(_) | Prec(_) | ResL(_) => &[false, true],
            Comma | Wtri(_) | Btri(_) | Semi(_) | Btw(_) => &[false, false],
            RevTest(_) | Ominus | Oplus | Test(_) => &[false],
            I | GI(_) | Phi(_) => &[],
        }
    }

    /// Constructors that exist only to restore displayability and have no
    /// semantic reading.
    pub fn is_virtual(&self) -> bool {
        use StCon::*;
        matches!(
            self,
            Succ(3) | Succ(4) | Prec(2) | Prec(4) | WLeft(0) | BLeft(0)
        )
    }

    pub fn token(&self) -> String {
        use StCon::*;
        match *self {
            I => "I".into(),
            Comma => ",".into(),
            Gt => ">".into(),
            Lt => "<".into(),
            RevTest(i) => format!("?rb{i}"),
            Wtri(i) => format!("swtri{i}"),
            Btri(i) => format!("sbtri{i}"),
            Fbox(i) => format!("sfbox{i}"),
            Bbox(i) => format!("sbbox{i}"),
            GI(i) => format!("gI_{i}"),
            Phi(i) => format!("Phi_{i}"),
            Ominus => "^om".into(),
            Oplus => "^op".into(),
            Test(i) => format!("?b{i}"),
            Semi(j) => format!(";b{j}"),
            Btw(j) => format!("btw{j}"),
            Succ(j) if self.is_virtual() => format!("vsucc{j}"),
            Succ(j) => format!("succ{j}"),
            Prec(j) if self.is_virtual() => format!("vprec{j}"),
            Prec(j) => format!("prec{j}"),
            ResR(j) => format!("resR{j}"),
            ResL(j) => format!("resL{j}"),
            WLeft(0) => "vwleft0".into(),
            WLeft(i) => format!("swleft{i}"),
            BLeft(0) => "vbleft0".into(),
            BLeft(i) => format!("sbleft{i}"),
        }
    }

    pub fn index(&self) -> Option<u8> {
        use StCon::*;
        match *self {
            RevTest(i) | Wtri(i) | Btri(i) | Fbox(i) | Bbox(i) | GI(i) | Phi(i) | Test(i)
            | Semi(i) | Btw(i) | Succ(i) | Prec(i) | ResR(i) | ResL(i) | WLeft(i) | BLeft(i) => {
                Some(i)
            }
            I | Comma | Gt | Lt | Ominus | Oplus => None,
        }
    }

    /// Token with the index removed.
    pub fn family(&self) -> String {
        let tok = self.token();
        if self.index().is_some() {
            tok.trim_end_matches(|c: char| c.is_ascii_digit())
                .to_string()
        } else {
            tok
        }
    }

    pub fn fixity(&self) -> Fixity {
        use StCon::*;
        match self {
            I | GI(_) | Phi(_) => Fixity::Nullary,
            RevTest(_) | Ominus | Oplus | Test(_) => Fixity::Postfix,
            Comma => Fixity::Infix {
                level: 1,
                right: false,
            },
            Gt | Lt | Succ(_) | Prec(_) | ResR(_) | ResL(_) => Fixity::Infix {
                level: 2,
                right: true,
            },
            Btw(_) => Fixity::Infix {
                level: 3,
                right: false,
            },
            Semi(_) => Fixity::Infix {
                level: 4,
                right: false,
            },
            Wtri(_) | Btri(_) | Fbox(_) | Bbox(_) | WLeft(_) | BLeft(_) => Fixity::Infix {
                level: 5,
                right: true,
            },
        }
    }

    pub fn latex_macro(&self) -> String {
        use StCon::*;
        let base = match self {
            I => "dcI",
            Comma => "dcComma",
            Gt => "dcGt",
            Lt => "dcLt",
            RevTest(_) => "dcSRevTest",
            Wtri(_) => "dcSWtri",
            Btri(_) => "dcSBtri",
            Fbox(_) => "dcSFbox",
            Bbox(_) => "dcSBbox",
            GI(_) => "dcGI",
            Phi(_) => "dcPhi",
            Ominus => "dcOminus",
            Oplus => "dcOplus",
            Test(_) => "dcSTest",
            Semi(_) => "dcSSemi",
            Btw(_) => "dcBtw",
            Succ(_) if self.is_virtual() => "dcVSucc",
            Succ(_) => "dcSucc",
            Prec(_) if self.is_virtual() => "dcVPrec",
            Prec(_) => "dcPrec",
            ResR(_) => "dcResR",
            ResL(_) => "dcResL",
            WLeft(_) if self.is_virtual() => "dcVWLeft",
            WLeft(_) => "dcSWLeft",
            BLeft(_) if self.is_virtual() => "dcVBLeft",
            BLeft(_) => "dcSBLeft",
        };
        base.to_string()
    }

    pub fn all() -> &'static [StCon] {
        static ALL: OnceLock<Vec<StCon>> = OnceLock::new();
        ALL.get_or_init(|| {
            use StCon::*;
            let mut v = vec![I, Comma, Gt, Lt, Ominus, Oplus];
            let indexed: [fn(u8) -> StCon; 16] = [
                RevTest, Wtri, Btri, Fbox, Bbox, GI, Phi, Test, Semi, Btw, Succ, Prec, ResR, ResL,
                WLeft, BLeft,
            ];
            for make in indexed {
                for k in 0..=4 {
                    let c = make(k);
                    if c.signature().is_some() {
                        v.push(c);
                    }
                }
            }
            v
        })
    }

    pub(crate) fn by_token(tok: &str) -> Option<StCon> {
        static MAP: OnceLock<HashMap<String, StCon>> = OnceLock::new();
        MAP.get_or_init(|| StCon::all().iter().map(|c| (c.token(), *c)).collect())
            .get(tok)
            .copied()
    }

    pub(crate) fn by_family(fam: &str) -> Vec<StCon> {
        StCon::all()
            .iter()
            .filter(|c| c.index().is_some() && c.family() == fam)
            .copied()
            .collect()
    }
}

/// Structural term. Operational terms enter as leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Op(OpTerm),
    Meta(Meta),
    App(StCon, Vec<Structure>),
}

impl From<OpTerm> for Structure {
    fn from(t: OpTerm) -> Structure {
        Structure::Op(t)
    }
}

impl Structure {
    pub fn meta(name: &str, sort: Sort) -> Structure {
        Structure::Meta(Meta::new(name, sort))
    }
    pub fn app(con: StCon, args: Vec<Structure>) -> Structure {
        Structure::App(con, args)
    }
    pub fn unit() -> Structure {
        Structure::App(StCon::I, vec![])
    }
    pub fn comma(x: Structure, y: Structure) -> Structure {
        Structure::App(StCon::Comma, vec![x, y])
    }
    pub fn gt(x: Structure, y: Structure) -> Structure {
        Structure::App(StCon::Gt, vec![x, y])
    }
    pub fn lt(x: Structure, y: Structure) -> Structure {
        Structure::App(StCon::Lt, vec![x, y])
    }
    pub fn wtri(x: Structure, y: Structure) -> Structure {
        let i = x.action_index();
        Structure::App(StCon::Wtri(i), vec![x, y])
    }
    pub fn btri(x: Structure, y: Structure) -> Structure {
        let i = x.action_index();
        Structure::App(StCon::Btri(i), vec![x, y])
    }
    pub fn fbox(x: Structure, y: Structure) -> Structure {
        let i = x.action_index();
        Structure::App(StCon::Fbox(i), vec![x, y])
    }
    pub fn bbox(x: Structure, y: Structure) -> Structure {
        let i = x.action_index();
        Structure::App(StCon::Bbox(i), vec![x, y])
    }
    pub fn oplus(x: Structure) -> Structure {
        Structure::App(StCon::Oplus, vec![x])
    }
    pub fn ominus(x: Structure) -> Structure {
        Structure::App(StCon::Ominus, vec![x])
    }
    pub fn test(i: u8, x: Structure) -> Structure {
        Structure::App(StCon::Test(i), vec![x])
    }
    pub fn semi(x: Structure, y: Structure) -> Structure {
        let j = pair_index(x.root_sort(), y.root_sort()).unwrap_or(1);
        Structure::App(StCon::Semi(j), vec![x, y])
    }
    pub fn btw(x: Structure, y: Structure) -> Structure {
        let j = pair_index(x.root_sort(), y.root_sort()).unwrap_or(1);
        Structure::App(StCon::Btw(j), vec![x, y])
    }

    pub fn root_sort(&self) -> Sort {
        match self {
            Structure::Op(t) => t.root_sort(),
            Structure::Meta(m) => m.sort,
            Structure::App(c, _) => c.signature().map(|(_, s)| s).unwrap_or(Sort::Fm),
        }
    }

    fn action_index(&self) -> u8 {
        self.root_sort().action_index().unwrap_or(1)
    }

    pub fn args(&self) -> &[Structure] {
        match self {
            Structure::App(_, args) => args,
            _ => &[],
        }
    }

    pub fn con(&self) -> Option<StCon> {
        match self {
            Structure::App(c, _) => Some(*c),
            _ => None,
        }
    }

    pub fn as_op(&self) -> Option<&OpTerm> {
        match self {
            Structure::Op(t) => Some(t),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Structure::Op(t) => t.size(),
            Structure::Meta(_) => 1,
            Structure::App(_, args) => 1 + args.iter().map(Structure::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Structure::Op(t) => t.depth(),
            Structure::Meta(_) => 1,
            Structure::App(_, args) => 1 + args.iter().map(Structure::depth).max().unwrap_or(0),
        }
    }

    pub fn has_virtual(&self) -> bool {
        match self {
            Structure::App(c, args) => c.is_virtual() || args.iter().any(Structure::has_virtual),
            _ => false,
        }
    }

    pub fn has_meta(&self) -> bool {
        match self {
            Structure::Op(t) => t.has_meta(),
            Structure::Meta(_) => true,
            Structure::App(_, args) => args.iter().any(Structure::has_meta),
        }
    }

    /// Visit every metavariable, structural and operational.
    pub fn visit_metas<'a>(&'a self, f: &mut impl FnMut(&'a Meta)) {
        match self {
            Structure::Op(t) => t.visit_metas(f),
            Structure::Meta(m) => f(m),
            Structure::App(_, args) => args.iter().for_each(|a| a.visit_metas(f)),
        }
    }

    /// Visit every operational leaf.
    pub fn visit_ops<'a>(&'a self, f: &mut impl FnMut(&'a OpTerm)) {
        match self {
            Structure::Op(t) => f(t),
            Structure::Meta(_) => {}
            Structure::App(_, args) => args.iter().for_each(|a| a.visit_ops(f)),
        }
    }

    pub(crate) fn collect_atoms(&self, sig: &mut Signature) {
        self.visit_ops(&mut |t| t.collect_atoms(sig));
    }
}

/// A sequent `ant |- suc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub ant: Structure,
    pub suc: Structure,
}

impl Sequent {
    pub fn new(ant: impl Into<Structure>, suc: impl Into<Structure>) -> Sequent {
        Sequent {
            ant: ant.into(),
            suc: suc.into(),
        }
    }

    pub fn side(&self, side: super::Side) -> &Structure {
        match side {
            super::Side::Ant => &self.ant,
            super::Side::Suc => &self.suc,
        }
    }

    pub fn size(&self) -> usize {
        self.ant.size() + self.suc.size()
    }

    pub fn has_meta(&self) -> bool {
        self.ant.has_meta() || self.suc.has_meta()
    }

    pub fn has_virtual(&self) -> bool {
        self.ant.has_virtual() || self.suc.has_virtual()
    }
}
