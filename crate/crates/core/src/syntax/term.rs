use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::{Meta, Signature, Sort};

/// How a constructor is written in the ASCII grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixity {
    Nullary,
    Postfix,
    /// Binary infix operator. Higher levels bind tighter.
    Infix {
        level: u8,
        right: bool,
    },
}

/// Binding level shared by postfix operators; tighter than every infix level.
pub(crate) const POSTFIX_LEVEL: u8 = 10;

/// Operational connectives.
///
/// Indexed constructors carry the index that the child sorts determine:
/// `i` is 0 for transitive and 1 for general actions, `j` in `1..=4` encodes
/// the pair of action sorts `(Act,Act)`, `(TAct,Act)`, `(Act,TAct)`,
/// `(TAct,TAct)`.
///
/// The variants after [`OpCon::Cup`] never occur in the object language; they
/// are the operations that structures are read as when interpreted in a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpCon {
    Top,
    Bot,
    And,
    Or,
    Imp,
    /// `A >- B`, read as `not A and B`.
    Dimp,
    /// `B <- A`, read as `A -> B`.
    Rimp,
    /// `B -< A`, read as `B and not A`.
    Dsub,
    /// Forward diamond: `alpha wtri_i A`.
    Wtri(u8),
    /// Backward diamond.
    Btri(u8),
    /// Forward box.
    Fbox(u8),
    /// Backward box.
    Bbox(u8),
    Test(u8),
    Plus,
    Minus,
    Seq(u8),
    Cup(u8),
    Crash(u8),
    Skip(u8),
    /// Diagonal of a relation, as a set of worlds.
    RevTest(u8),
    /// Right residual of composition.
    ResSucc(u8),
    /// Left residual of composition.
    ResPrec(u8),
    /// `x oresR z` is `z` minus `x`.
    DiffR(u8),
    /// `z oresL y` is `z` minus `y`.
    DiffL(u8),
    /// `B wleft A`: pairs whose source in `A` forces target in `B`.
    WLeft(u8),
    /// `B bleft A`: pairs whose target in `A` forces source in `B`.
    BLeft(u8),
}

use Sort::{Act, Fm, TAct};

/// Child sorts of the index-`j` action constructors.
pub(crate) fn pair_sorts(j: u8) -> Option<[Sort; 2]> {
    match j {
        1 => Some([Act, Act]),
        2 => Some([TAct, Act]),
        3 => Some([Act, TAct]),
        4 => Some([TAct, TAct]),
        _ => None,
    }
}

/// Index `j` for a pair of action sorts.
pub(crate) fn pair_index(l: Sort, r: Sort) -> Option<u8> {
    (1..=4).find(|&j| pair_sorts(j) == Some([l, r]))
}

const FM2: &[Sort] = &[Fm, Fm];

impl OpCon {
    /// Child sorts and result sort; `None` for an index outside the constructor's range.
    pub fn signature(&self) -> Option<(Vec<Sort>, Sort)> {
        use OpCon::*;
        let act = |i: u8| Sort::from_action_index(i);
        Some(match *self {
            Top | Bot => (vec![], Fm),
            And | Or | Imp | Dimp | Rimp | Dsub => (FM2.to_vec(), Fm),
            Wtri(i) | Btri(i) | Fbox(i) | Bbox(i) => (vec![act(i)?, Fm], Fm),
            Test(i) => (vec![Fm], act(i)?),
            Plus => (vec![Act], TAct),
            Minus => (vec![TAct], Act),
            Seq(j) | Cup(j) => (pair_sorts(j)?.to_vec(), Act),
            Crash(i) | Skip(i) => (vec![], act(i)?),
            RevTest(i) => (vec![act(i)?], Fm),
            ResSucc(j) => match j {
                1 => (vec![Act, Act], Act),
                2 => (vec![TAct, Act], Act),
                _ => return None,
            },
            ResPrec(j) => match j {
                1 => (vec![Act, Act], Act),
                3 => (vec![Act, TAct], Act),
                _ => return None,
            },
            DiffR(j) => residual_right(j)?,
            DiffL(j) => residual_left(j)?,
            WLeft(i) | BLeft(i) if i == 1 => (FM2.to_vec(), Act),
            WLeft(_) | BLeft(_) => return None,
        })
    }

    pub fn arity(&self) -> usize {
        self.signature().map(|(a, _)| a.len()).unwrap_or(0)
    }

    /// False for the semantic-only operations used to read structures.
    pub fn in_language(&self) -> bool {
        use OpCon::*;
        !matches!(
            self,
            Rimp | Dsub
                | Crash(_)
                | Skip(_)
                | RevTest(_)
                | ResSucc(_)
                | ResPrec(_)
                | DiffR(_)
                | DiffL(_)
                | WLeft(_)
                | BLeft(_)
        )
    }

    pub fn token(&self) -> String {
        use OpCon::*;
        match *self {
            Top => "top".into(),
            Bot => "bot".into(),
            And => "&".into(),
            Or => "|".into(),
            Imp => "->".into(),
            Dimp => ">-".into(),
            Rimp => "<-".into(),
            Dsub => "-<".into(),
            Wtri(i) => format!("wtri{i}"),
            Btri(i) => format!("btri{i}"),
            Fbox(i) => format!("fbox{i}"),
            Bbox(i) => format!("bbox{i}"),
            Test(i) => format!("?{i}"),
            Plus => "+".into(),
            Minus => "-".into(),
            Seq(j) => format!(";{j}"),
            Cup(j) => format!("cup{j}"),
            Crash(i) => format!("crash{i}"),
            Skip(i) => format!("skip{i}"),
            RevTest(i) => format!("?r{i}"),
            ResSucc(j) => format!("osucc{j}"),
            ResPrec(j) => format!("oprec{j}"),
            DiffR(j) => format!("oresR{j}"),
            DiffL(j) => format!("oresL{j}"),
            WLeft(i) => format!("wleft{i}"),
            BLeft(i) => format!("bleft{i}"),
        }
    }

    /// Token with the index removed, as accepted by the index-inferring parser.
    pub fn family(&self) -> String {
        let tok = self.token();
        if self.index().is_some() {
            tok.trim_end_matches(|c: char| c.is_ascii_digit())
                .to_string()
        } else {
            tok
        }
    }

    pub fn index(&self) -> Option<u8> {
        use OpCon::*;
        match *self {
            Wtri(i) | Btri(i) | Fbox(i) | Bbox(i) | Test(i) | Seq(i) | Cup(i) | Crash(i)
            | Skip(i) | RevTest(i) | ResSucc(i) | ResPrec(i) | DiffR(i) | DiffL(i) | WLeft(i)
            | BLeft(i) => Some(i),
            _ => None,
        }
    }

    pub fn fixity(&self) -> Fixity {
        use OpCon::*;
        match self {
            Top | Bot | Crash(_) | Skip(_) => Fixity::Nullary,
            Test(_) | Plus | Minus | RevTest(_) => Fixity::Postfix,
            Imp | Dimp | Rimp | Dsub | ResSucc(_) | ResPrec(_) | DiffR(_) | DiffL(_) => {
                Fixity::Infix {
                    level: 2,
                    right: true,
                }
            }
            Or | Cup(_) => Fixity::Infix {
                level: 3,
                right: false,
            },
            And | Seq(_) => Fixity::Infix {
                level: 4,
                right: false,
            },
            Wtri(_) | Btri(_) | Fbox(_) | Bbox(_) | WLeft(_) | BLeft(_) => Fixity::Infix {
                level: 5,
                right: true,
            },
        }
    }

    /// LaTeX macro name (without backslash) for this connective.
    pub fn latex_macro(&self) -> String {
        use OpCon::*;
        let base = match self {
            Top => "dcTop",
            Bot => "dcBot",
            And => "dcAnd",
            Or => "dcOr",
            Imp => "dcImp",
            Dimp => "dcDimp",
            Rimp => "dcRimp",
            Dsub => "dcDsub",
            Wtri(_) => "dcWtri",
            Btri(_) => "dcBtri",
            Fbox(_) => "dcFbox",
            Bbox(_) => "dcBbox",
            Test(_) => "dcTest",
            Plus => "dcPlus",
            Minus => "dcMinus",
            Seq(_) => "dcSeq",
            Cup(_) => "dcCup",
            Crash(_) => "dcCrash",
            Skip(_) => "dcSkip",
            RevTest(_) => "dcRevTest",
            ResSucc(_) => "dcResSucc",
            ResPrec(_) => "dcResPrec",
            DiffR(_) => "dcDiffR",
            DiffL(_) => "dcDiffL",
            WLeft(_) => "dcWLeft",
            BLeft(_) => "dcBLeft",
        };
        base.to_string()
    }

    /// Every constructor with a valid index.
    pub fn all() -> &'static [OpCon] {
        static ALL: OnceLock<Vec<OpCon>> = OnceLock::new();
        ALL.get_or_init(|| {
            use OpCon::*;
            let mut v = vec![Top, Bot, And, Or, Imp, Dimp, Rimp, Dsub, Plus, Minus];
            let indexed: [fn(u8) -> OpCon; 16] = [
                Wtri, Btri, Fbox, Bbox, Test, Seq, Cup, Crash, Skip, RevTest, ResSucc, ResPrec,
                DiffR, DiffL, WLeft, BLeft,
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

    pub(crate) fn by_token(tok: &str) -> Option<OpCon> {
        static MAP: OnceLock<HashMap<String, OpCon>> = OnceLock::new();
        MAP.get_or_init(|| OpCon::all().iter().map(|c| (c.token(), *c)).collect())
            .get(tok)
            .copied()
    }

    /// All constructors sharing an index-free family token.
    pub(crate) fn by_family(fam: &str) -> Vec<OpCon> {
        OpCon::all()
            .iter()
            .filter(|c| c.index().is_some() && c.family() == fam)
            .copied()
            .collect()
    }
}

/// Signature shared by the `x oresR z` family of difference operations.
pub(crate) fn residual_right(j: u8) -> Option<(Vec<Sort>, Sort)> {
    Some(match j {
        1 => (vec![Act, Act], Act),
        2 => (vec![TAct, Act], Act),
        3 => (vec![Act, Act], TAct),
        4 => (vec![TAct, Act], TAct),
        _ => return None,
    })
}

/// Signature shared by the `z oresL y` family of difference operations.
pub(crate) fn residual_left(j: u8) -> Option<(Vec<Sort>, Sort)> {
    Some(match j {
        1 => (vec![Act, Act], Act),
        2 => (vec![Act, Act], TAct),
        3 => (vec![Act, TAct], Act),
        4 => (vec![Act, TAct], TAct),
        _ => return None,
    })
}

/// Operational term. Atoms carry their sort by construction: the parser
/// resolves identifiers against a [`Signature`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpTerm {
    Prop(Arc<str>),
    Act(Arc<str>),
    Meta(Meta),
    App(OpCon, Vec<OpTerm>),
}

impl OpTerm {
    pub fn prop(name: &str) -> OpTerm {
        OpTerm::Prop(Arc::from(name))
    }
    pub fn act(name: &str) -> OpTerm {
        OpTerm::Act(Arc::from(name))
    }
    pub fn meta(name: &str, sort: Sort) -> OpTerm {
        OpTerm::Meta(Meta::new(name, sort))
    }
    pub fn app(con: OpCon, args: Vec<OpTerm>) -> OpTerm {
        OpTerm::App(con, args)
    }
    pub fn top() -> OpTerm {
        OpTerm::App(OpCon::Top, vec![])
    }
    pub fn bot() -> OpTerm {
        OpTerm::App(OpCon::Bot, vec![])
    }
    pub fn and(a: OpTerm, b: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::And, vec![a, b])
    }
    pub fn or(a: OpTerm, b: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::Or, vec![a, b])
    }
    pub fn imp(a: OpTerm, b: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::Imp, vec![a, b])
    }
    /// Forward diamond; the index follows the sort of `act`.
    pub fn wtri(act: OpTerm, fm: OpTerm) -> OpTerm {
        let i = act.action_index();
        OpTerm::App(OpCon::Wtri(i), vec![act, fm])
    }
    pub fn btri(act: OpTerm, fm: OpTerm) -> OpTerm {
        let i = act.action_index();
        OpTerm::App(OpCon::Btri(i), vec![act, fm])
    }
    pub fn fbox(act: OpTerm, fm: OpTerm) -> OpTerm {
        let i = act.action_index();
        OpTerm::App(OpCon::Fbox(i), vec![act, fm])
    }
    pub fn bbox(act: OpTerm, fm: OpTerm) -> OpTerm {
        let i = act.action_index();
        OpTerm::App(OpCon::Bbox(i), vec![act, fm])
    }
    pub fn test(i: u8, fm: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::Test(i), vec![fm])
    }
    pub fn plus(a: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::Plus, vec![a])
    }
    pub fn minus(d: OpTerm) -> OpTerm {
        OpTerm::App(OpCon::Minus, vec![d])
    }
    /// Composition; the index follows the sorts of the arguments.
    pub fn seq(a: OpTerm, b: OpTerm) -> OpTerm {
        let j = pair_index(a.root_sort(), b.root_sort()).unwrap_or(1);
        OpTerm::App(OpCon::Seq(j), vec![a, b])
    }
    /// Choice; the index follows the sorts of the arguments.
    pub fn cup(a: OpTerm, b: OpTerm) -> OpTerm {
        let j = pair_index(a.root_sort(), b.root_sort()).unwrap_or(1);
        OpTerm::App(OpCon::Cup(j), vec![a, b])
    }

    /// Sort announced by the root constructor, without checking children.
    pub fn root_sort(&self) -> Sort {
        match self {
            OpTerm::Prop(_) => Sort::Fm,
            OpTerm::Act(_) => Sort::Act,
            OpTerm::Meta(m) => m.sort,
            OpTerm::App(c, _) => c.signature().map(|(_, s)| s).unwrap_or(Sort::Fm),
        }
    }

    fn action_index(&self) -> u8 {
        self.root_sort().action_index().unwrap_or(1)
    }

    pub fn args(&self) -> &[OpTerm] {
        match self {
            OpTerm::App(_, args) => args,
            _ => &[],
        }
    }

    pub fn con(&self) -> Option<OpCon> {
        match self {
            OpTerm::App(c, _) => Some(*c),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, OpTerm::Prop(_) | OpTerm::Act(_))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(OpTerm::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(OpTerm::depth).max().unwrap_or(0)
    }

    /// Whether `sub` occurs in `self` (reflexively).
    pub fn contains(&self, sub: &OpTerm) -> bool {
        self == sub || self.args().iter().any(|a| a.contains(sub))
    }

    pub fn has_meta(&self) -> bool {
        match self {
            OpTerm::Meta(_) => true,
            _ => self.args().iter().any(OpTerm::has_meta),
        }
    }

    /// True when every constructor belongs to the object language.
    pub fn in_language(&self) -> bool {
        match self {
            OpTerm::App(c, args) => c.in_language() && args.iter().all(OpTerm::in_language),
            _ => true,
        }
    }

    pub fn visit_metas<'a>(&'a self, f: &mut impl FnMut(&'a Meta)) {
        match self {
            OpTerm::Meta(m) => f(m),
            OpTerm::App(_, args) => args.iter().for_each(|a| a.visit_metas(f)),
            _ => {}
        }
    }

    pub(crate) fn collect_atoms(&self, sig: &mut Signature) {
        match self {
            OpTerm::Prop(p) => {
                sig.props.insert(p.to_string());
            }
            OpTerm::Act(a) => {
                sig.acts.insert(a.to_string());
            }
            OpTerm::Meta(_) => {}
            OpTerm::App(_, args) => args.iter().for_each(|a| a.collect_atoms(sig)),
        }
    }
}
