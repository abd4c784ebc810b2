//! Finite Kripke models and the interpretation of both languages.
//!
//! Formulas denote world sets, actions denote relations. Transitive actions
//! denote transitive relations; the difference operations that land in the
//! transitive sort are closed under `+` to keep that invariant.

mod bits;
mod fuzz;
pub mod gen;
mod model;

pub use bits::{closure_plus, Rel, Worlds, MAX_WORLDS};
pub use fuzz::{
    fuzz_schemas, fuzz_soundness, fuzz_targets, random_substitution, run_trial, Counterexample,
    FuzzConfig, FuzzReport,
};
pub use model::{KripkeModel, ModelError};

use crate::syntax::{OpCon, OpTerm, Path, PdlAction, PdlFormula, Position, Sequent, Structure};
use crate::typing::{operational_reading, Reading};

/// Denotation of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Worlds(Worlds),
    Rel(Rel),
    Uninterpretable(Path),
}

impl Extension {
    pub fn worlds(&self) -> Option<Worlds> {
        match self {
            Extension::Worlds(w) => Some(*w),
            _ => None,
        }
    }

    pub fn rel(&self) -> Option<Rel> {
        match self {
            Extension::Rel(r) => Some(*r),
            _ => None,
        }
    }

    /// Inclusion between two extensions of the same kind.
    pub fn included_in(&self, other: &Extension) -> Option<bool> {
        match (self, other) {
            (Extension::Worlds(a), Extension::Worlds(b)) => Some(a.subset_of(b)),
            (Extension::Rel(a), Extension::Rel(b)) => Some(a.subset_of(b)),
            _ => None,
        }
    }
}

enum Val {
    W(Worlds),
    R(Rel),
}

impl Val {
    fn w(&self) -> Worlds {
        match self {
            Val::W(w) => *w,
            Val::R(_) => unreachable!("formula expected; terms are sort-checked before evaluation"),
        }
    }
    fn r(&self) -> Rel {
        match self {
            Val::R(r) => *r,
            Val::W(_) => unreachable!("action expected; terms are sort-checked before evaluation"),
        }
    }
}

fn eval(m: &KripkeModel, t: &OpTerm) -> Option<Val> {
    use OpCon::*;
    let k = m.worlds();
    Some(match t {
        OpTerm::Prop(p) => Val::W(m.valuation(p)),
        OpTerm::Act(a) => Val::R(m.relation(a)),
        OpTerm::Meta(_) => return None,
        OpTerm::App(c, args) => {
            let v: Vec<Val> = args.iter().map(|a| eval(m, a)).collect::<Option<_>>()?;
            match *c {
                Top => Val::W(Worlds::full(k)),
                Bot => Val::W(Worlds::empty(k)),
                And => Val::W(v[0].w().and(v[1].w())),
                Or => Val::W(v[0].w().or(v[1].w())),
                Imp => Val::W(v[0].w().complement().or(v[1].w())),
                Dimp => Val::W(v[0].w().complement().and(v[1].w())),
                Rimp => Val::W(v[1].w().complement().or(v[0].w())),
                Dsub => Val::W(v[0].w().and(v[1].w().complement())),
                Wtri(_) => Val::W(v[0].r().preimage(v[1].w())),
                Btri(_) => Val::W(v[0].r().image(v[1].w())),
                Fbox(_) => Val::W(v[0].r().preimage(v[1].w().complement()).complement()),
                Bbox(_) => Val::W(v[0].r().image(v[1].w().complement()).complement()),
                Test(_) => Val::R(Rel::diagonal(v[0].w())),
                Plus => Val::R(v[0].r().closure_plus()),
                Minus => Val::R(v[0].r()),
                Seq(_) => Val::R(v[0].r().compose(v[1].r())),
                Cup(_) => Val::R(v[0].r().union(v[1].r())),
                Crash(_) => Val::R(Rel::empty(k)),
                Skip(_) => Val::R(Rel::identity(k)),
                RevTest(_) => Val::W(v[0].r().diag_worlds()),
                ResSucc(_) => Val::R(res_succ(v[0].r(), v[1].r())),
                ResPrec(_) => Val::R(res_prec(v[0].r(), v[1].r())),
                DiffR(j) => Val::R(transitive_if(v[1].r().minus(v[0].r()), j >= 3)),
                DiffL(j) => Val::R(transitive_if(v[0].r().minus(v[1].r()), j == 2 || j == 4)),
                WLeft(_) => Val::R(left_triangle(v[0].w(), v[1].w(), false)),
                BLeft(_) => Val::R(left_triangle(v[0].w(), v[1].w(), true)),
            }
        }
    })
}

fn transitive_if(r: Rel, close: bool) -> Rel {
    if close {
        r.closure_plus()
    } else {
        r
    }
}

/// `{(z, z') | forall w. (w, z) in a => (w, z') in b}`.
fn res_succ(a: Rel, b: Rel) -> Rel {
    let k = a.k;
    let mut out = Rel::empty(k);
    for z in 0..k {
        for z2 in 0..k {
            if (0..k).all(|w| !a.contains(w, z) || b.contains(w, z2)) {
                out.insert(z, z2);
            }
        }
    }
    out
}

/// `{(z, z') | forall w. (z', w) in b => (z, w) in a}`.
fn res_prec(a: Rel, b: Rel) -> Rel {
    let k = a.k;
    let mut out = Rel::empty(k);
    for z in 0..k {
        for z2 in 0..k {
            if (0..k).all(|w| !b.contains(z2, w) || a.contains(z, w)) {
                out.insert(z, z2);
            }
        }
    }
    out
}

/// With `target_side = false`: `{(z, z') | z in a => z' in b}`; otherwise
/// `{(z, z') | z' in a => z in b}`.
fn left_triangle(b: Worlds, a: Worlds, target_side: bool) -> Rel {
    let k = a.k;
    let mut out = Rel::empty(k);
    for z in 0..k {
        for z2 in 0..k {
            let ok = if target_side {
                !a.contains(z2) || b.contains(z)
            } else {
                !a.contains(z) || b.contains(z2)
            };
            if ok {
                out.insert(z, z2);
            }
        }
    }
    out
}

/// Denotation of a well-sorted, metavariable-free operational term.
pub fn interpret(m: &KripkeModel, t: &OpTerm) -> Extension {
    match eval(m, t) {
        Some(Val::W(w)) => Extension::Worlds(w),
        Some(Val::R(r)) => Extension::Rel(r),
        None => Extension::Uninterpretable(Path::root()),
    }
}

/// Denotation of a structure read at `pos`.
pub fn interpret_structure(m: &KripkeModel, st: &Structure, pos: Position) -> Extension {
    match operational_reading(st, pos) {
        Reading::Term(t) => interpret(m, &t),
        Reading::Uninterpretable(p) => Extension::Uninterpretable(p),
    }
}

/// Truth of a sequent in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(bool),
    Uninterpretable,
}

/// Whether the antecedent's extension is included in the succedent's.
pub fn holds(m: &KripkeModel, s: &Sequent) -> Verdict {
    let ant = interpret_structure(m, &s.ant, Position::Ant);
    let suc = interpret_structure(m, &s.suc, Position::Suc);
    match ant.included_in(&suc) {
        Some(b) => Verdict::Holds(b),
        None => Verdict::Uninterpretable,
    }
}

/// Standard PDL semantics, with converse relations for the backward modalities.
pub fn pdl_eval(m: &KripkeModel, a: &PdlFormula) -> Worlds {
    use PdlFormula::*;
    match a {
        Atom(p) => m.valuation(p),
        Neg(b) => pdl_eval(m, b).complement(),
        Or(b, c) => pdl_eval(m, b).or(pdl_eval(m, c)),
        And(b, c) => pdl_eval(m, b).and(pdl_eval(m, c)),
        Diamond(x, b) => pdl_rel(m, x).preimage(pdl_eval(m, b)),
        Box(x, b) => pdl_rel(m, x)
            .preimage(pdl_eval(m, b).complement())
            .complement(),
        BackDiamond(x, b) => pdl_rel(m, x).converse().preimage(pdl_eval(m, b)),
        BackBox(x, b) => pdl_rel(m, x)
            .converse()
            .preimage(pdl_eval(m, b).complement())
            .complement(),
    }
}

/// Relation denoted by a PDL program.
pub fn pdl_rel(m: &KripkeModel, x: &PdlAction) -> Rel {
    use PdlAction::*;
    match x {
        Atom(a) => m.relation(a),
        Seq(y, z) => pdl_rel(m, y).compose(pdl_rel(m, z)),
        Choice(y, z) => pdl_rel(m, y).union(pdl_rel(m, z)),
        Test(b) => Rel::diagonal(pdl_eval(m, b)),
        Plus(y) => {
            // Union of powers, kept independent of `Rel::closure_plus`.
            let r = pdl_rel(m, y);
            let mut acc = r;
            let mut power = r;
            for _ in 1..m.worlds() * m.worlds() {
                power = power.compose(r);
                acc = acc.union(power);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_opterm, parse_pdl, parse_sequent, ParseOptions, Signature};

    fn sig() -> Signature {
        Signature::new(["p", "q"], ["a", "b"]).unwrap()
    }

    fn model(k: usize, a: &[(usize, usize)], p: &[usize], q: &[usize]) -> KripkeModel {
        let mut m = KripkeModel::new(k).unwrap();
        m.set_relation("a", a.iter().copied())
            .set_valuation("p", p.iter().copied())
            .set_valuation("q", q.iter().copied());
        m
    }

    fn ext(m: &KripkeModel, text: &str) -> Extension {
        interpret(m, &parse_opterm(text, &sig()).unwrap())
    }

    #[test]
    fn diamond_over_single_edge() {
        let m = model(2, &[(0, 1)], &[1], &[]);
        assert_eq!(
            ext(&m, "a wtri1 p"),
            Extension::Worlds(Worlds::from_iter(2, [0]))
        );
        let pdl = parse_pdl("<a>p", &sig(), ParseOptions::default()).unwrap();
        assert_eq!(pdl_eval(&m, &pdl), Worlds::from_iter(2, [0]));
    }

    #[test]
    fn plus_of_a_two_cycle_is_full() {
        let m = model(2, &[(0, 1), (1, 0)], &[], &[]);
        assert_eq!(ext(&m, "a+"), Extension::Rel(Rel::full(2)));
    }

    #[test]
    fn test_is_a_diagonal() {
        let m = model(2, &[], &[1], &[]);
        assert_eq!(ext(&m, "p?1"), Extension::Rel(Rel::from_pairs(2, [(1, 1)])));
    }

    #[test]
    fn structure_readings() {
        let s = sig();
        let m = model(2, &[(0, 1)], &[0], &[0, 1]);
        let st = crate::syntax::parse_structure("p, q", &s).unwrap();
        assert_eq!(
            interpret_structure(&m, &st, Position::Ant),
            Extension::Worlds(Worlds::from_iter(2, [0]))
        );
        let plus = crate::syntax::parse_structure("a^op", &s).unwrap();
        assert_eq!(
            interpret_structure(&m, &plus, Position::Ant),
            Extension::Rel(Rel::from_pairs(2, [(0, 1)]))
        );
        let virt = crate::syntax::parse_structure("p vwleft0 q", &s).unwrap();
        assert!(matches!(
            interpret_structure(&m, &virt, Position::Suc),
            Extension::Uninterpretable(_)
        ));
    }

    #[test]
    fn sequent_truth() {
        let s = sig();
        let m = model(2, &[(0, 1)], &[1], &[]);
        assert_eq!(
            holds(&m, &parse_sequent("a swtri1 p |- q", &s).unwrap()),
            Verdict::Holds(false)
        );
        assert_eq!(
            holds(&m, &parse_sequent("a^op |- a+", &s).unwrap()),
            Verdict::Holds(true)
        );
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            closure_plus(Rel::from_pairs(3, [(0, 1)])),
            Rel::from_pairs(3, [(0, 1)])
        );
        assert_eq!(
            closure_plus(Rel::from_pairs(3, [(0, 1), (1, 2)])),
            Rel::from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        );
        assert_eq!(
            closure_plus(Rel::from_pairs(3, [(0, 0)])),
            Rel::from_pairs(3, [(0, 0)])
        );
    }

    #[test]
    fn pdl_examples() {
        let s = sig();
        let opts = ParseOptions {
            adjoint: true,
            ..Default::default()
        };
        let empty = model(2, &[], &[], &[]);
        let bot_box = parse_pdl("[a](p & ~p)", &s, opts).unwrap();
        assert_eq!(pdl_eval(&empty, &bot_box), Worlds::full(2));
        let m = model(2, &[(0, 1)], &[0], &[]);
        let back = parse_pdl("<~a>p", &s, opts).unwrap();
        assert_eq!(pdl_eval(&m, &back), Worlds::from_iter(2, [1]));
    }
}
