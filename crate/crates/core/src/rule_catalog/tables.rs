//! The rule tables, written as ASCII patterns.
//!
//! Metavariable declarations use `name:K`, where `K` is `F`, `A` or `T` for
//! structures of sort FM, ACT, TACT and `f`, `a`, `t` for operational terms of
//! sort Fm, Act, TAct.

use super::{MetaDecl, Premises, RuleSchema, SideCondition};
use crate::syntax::{parse_pattern, MetaTable, Signature, Sort};

#[derive(Clone, Copy)]
enum Kind<'a> {
    Primitive,
    Display,
    Derived(&'a [&'a str]),
}

use Kind::{Derived, Display, Primitive};

fn decls(spec: &str) -> Vec<MetaDecl> {
    spec.split_whitespace()
        .map(|item| {
            let (name, k) = item.split_once(':').expect("meta declaration `name:K`");
            let (sort, structural) = match k {
                "F" => (Sort::Fm, true),
                "A" => (Sort::Act, true),
                "T" => (Sort::TAct, true),
                "f" => (Sort::Fm, false),
                "a" => (Sort::Act, false),
                "t" => (Sort::TAct, false),
                _ => panic!("bad meta kind `{k}`"),
            };
            MetaDecl {
                name: name.to_string(),
                sort,
                structural,
            }
        })
        .collect()
}

/// Structural sort letter for an action index.
fn s(i: u8) -> &'static str {
    if i == 1 {
        "A"
    } else {
        "T"
    }
}

/// Operational sort letter for an action index.
fn o(i: u8) -> &'static str {
    if i == 1 {
        "a"
    } else {
        "t"
    }
}

/// Action indices of the two arguments of the `j`-th composition or choice.
fn pair(j: u8) -> (u8, u8) {
    match j {
        1 => (1, 1),
        2 => (0, 1),
        3 => (1, 0),
        4 => (0, 0),
        _ => unreachable!("pair index out of range"),
    }
}

fn j_of(a: u8, b: u8) -> u8 {
    (1..=4).find(|&j| pair(j) == (a, b)).expect("valid pair")
}

fn bleft(i: u8) -> &'static str {
    if i == 1 {
        "sbleft1"
    } else {
        "vbleft0"
    }
}

fn wleft(i: u8) -> &'static str {
    if i == 1 {
        "swleft1"
    } else {
        "vwleft0"
    }
}

struct Tables {
    out: Vec<RuleSchema>,
    sig: Signature,
}

impl Tables {
    fn table(metas: &[MetaDecl]) -> MetaTable {
        metas
            .iter()
            .map(|m| (m.name.clone(), (m.sort, m.structural)))
            .collect()
    }

    fn pattern(&self, id: &str, metas: &[MetaDecl], text: &str) -> crate::syntax::Sequent {
        parse_pattern(text, &self.sig, &Self::table(metas))
            .unwrap_or_else(|e| panic!("rule {id}: `{text}`: {e}"))
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        kind: Kind,
        group: &'static str,
        family: &str,
        id: String,
        metas: &str,
        premises: Premises,
        conclusion: &str,
    ) -> &mut RuleSchema {
        let mut metas = decls(metas);
        let conclusion = self.pattern(&id, &metas, conclusion);
        // Shared declaration strings may name metavariables a rule never uses.
        let mut used = std::collections::BTreeSet::new();
        let patterns = match &premises {
            Premises::Finite(ps) => ps.iter().collect(),
            Premises::Omega { pattern, .. } => vec![pattern],
        };
        for s in patterns.into_iter().chain([&conclusion]) {
            s.ant.visit_metas(&mut |m| {
                used.insert(m.name.to_string());
            });
            s.suc.visit_metas(&mut |m| {
                used.insert(m.name.to_string());
            });
        }
        metas.retain(|m| used.contains(&m.name));
        let (derived_from, display) = match kind {
            Primitive => (vec![], false),
            Display => (vec![], true),
            Derived(bases) => (bases.iter().map(|b| b.to_string()).collect(), false),
        };
        self.out.push(RuleSchema {
            id,
            family: family.to_string(),
            group,
            metas,
            premises,
            conclusion,
            side_conditions: vec![],
            inverse: None,
            derived_from,
            display,
        });
        self.out.last_mut().expect("just pushed")
    }

    #[allow(clippy::too_many_arguments)]
    fn rule(
        &mut self,
        kind: Kind,
        group: &'static str,
        family: &str,
        id: String,
        metas: &str,
        premises: &[String],
        conclusion: &str,
    ) -> &mut RuleSchema {
        let ds = decls(metas);
        let ps = premises.iter().map(|p| self.pattern(&id, &ds, p)).collect();
        self.push(
            kind,
            group,
            family,
            id,
            metas,
            Premises::Finite(ps),
            conclusion,
        )
    }

    /// A double-line rule: `id` reads top to bottom, `id_inv` bottom to top.
    #[allow(clippy::too_many_arguments)]
    fn double(
        &mut self,
        kind: Kind,
        group: &'static str,
        family: &str,
        id: String,
        metas: &str,
        top: &str,
        bottom: &str,
    ) {
        let inv = format!("{id}_inv");
        let inv_kind = match kind {
            Derived(_) => kind,
            other => other,
        };
        self.rule(
            kind,
            group,
            family,
            id.clone(),
            metas,
            &[top.to_string()],
            bottom,
        )
        .inverse = Some(inv.clone());
        self.rule(
            inv_kind,
            group,
            &format!("{family}_inv"),
            inv,
            metas,
            &[bottom.to_string()],
            top,
        )
        .inverse = Some(id);
    }

    fn omega(&mut self, kind: Kind, family: &str, metas: &str, pattern: &str, conclusion: &str) {
        let ds = decls(metas);
        let pattern = self.pattern(family, &ds, pattern);
        let premises = Premises::Omega {
            pattern,
            iterate: "Pn".into(),
            base: "Pi".into(),
        };
        self.push(
            kind,
            "omega",
            family,
            family.to_string(),
            metas,
            premises,
            conclusion,
        );
    }
}

pub(super) fn build() -> Vec<RuleSchema> {
    let mut t = Tables {
        out: Vec::new(),
        sig: Signature::default(),
    };
    identity_and_cut(&mut t);
    propositional(&mut t);
    heterogeneous(&mut t);
    test_and_iteration(&mut t);
    fixed_points(&mut t);
    action_constants(&mut t);
    action_structure(&mut t);
    t.out
}

fn identity_and_cut(t: &mut Tables) {
    t.rule(
        Primitive,
        "identity",
        "Id_p",
        "Id_p".into(),
        "p:f",
        &[],
        "p |- p",
    )
    .side_conditions
    .push(SideCondition::Atomic("p".into()));
    t.rule(
        Primitive,
        "identity",
        "Id_pi",
        "Id_pi".into(),
        "pi:a",
        &[],
        "pi |- pi",
    )
    .side_conditions
    .push(SideCondition::Atomic("pi".into()));
    t.rule(
        Primitive,
        "cut",
        "cut_Fm",
        "cut_Fm".into(),
        "X:F Y:F A:f",
        &["X |- A".into(), "A |- Y".into()],
        "X |- Y",
    );
    t.rule(
        Primitive,
        "cut",
        "cut_Act",
        "cut_Act".into(),
        "Pi:A Sigma:A alpha:a",
        &["Pi |- alpha".into(), "alpha |- Sigma".into()],
        "Pi |- Sigma",
    );
    t.rule(
        Primitive,
        "cut",
        "cut_TAct",
        "cut_TAct".into(),
        "Gamma:T Delta:T delta:t",
        &["Gamma |- delta".into(), "delta |- Delta".into()],
        "Gamma |- Delta",
    );
}

fn propositional(t: &mut Tables) {
    let g = "prop-structural";
    let xyz = "X:F Y:F Z:F W:F";
    for (id, top, bottom) in [
        ("I1_L", "X |- Y", "I |- Y < X"),
        ("I1_R", "X |- Y", "X < Y |- I"),
        ("I2_L", "X |- Y", "I |- X > Y"),
        ("I2_R", "X |- Y", "Y > X |- I"),
        ("Gri_L", "X > (Y < Z) |- W", "(X > Y) < Z |- W"),
        ("Gri_R", "W |- X > (Y < Z)", "W |- (X > Y) < Z"),
    ] {
        t.double(Primitive, g, id, id.into(), xyz, top, bottom);
    }
    for (id, top, bottom) in [
        ("W1_L", "X |- Z", "Y |- Z < X"),
        ("W1_R", "X |- Z", "X < Z |- Y"),
        ("W2_L", "X |- Z", "Y |- X > Z"),
        ("W2_R", "X |- Z", "Z > X |- Y"),
        ("C_L", "X , X |- Y", "X |- Y"),
        ("C_R", "Y |- X , X", "Y |- X"),
        ("A_L", "X , (Y , Z) |- W", "(X , Y) , Z |- W"),
        ("A_R", "W |- (Z , Y) , X", "W |- Z , (Y , X)"),
        ("E_L", "Y , X |- Z", "X , Y |- Z"),
        ("E_R", "Z |- X , Y", "Z |- Y , X"),
    ] {
        t.rule(Primitive, g, id, id.into(), xyz, &[top.into()], bottom);
    }

    let g = "prop-display";
    for (id, top, bottom) in [
        ("dp_comma_gt_L", "X , Y |- Z", "Y |- X > Z"),
        ("dp_comma_gt_R", "Z |- X , Y", "X > Z |- Y"),
        ("dp_comma_lt_L", "X , Y |- Z", "X |- Z < Y"),
        ("dp_comma_lt_R", "Z |- X , Y", "Z < Y |- X"),
    ] {
        t.double(Display, g, id, id.into(), xyz, top, bottom);
    }

    let g = "prop-operational";
    let m = "X:F Y:F Z:F A:f B:f";
    t.rule(Primitive, g, "bot_L", "bot_L".into(), m, &[], "bot |- I");
    t.rule(
        Primitive,
        g,
        "bot_R",
        "bot_R".into(),
        m,
        &["X |- I".into()],
        "X |- bot",
    );
    t.rule(
        Primitive,
        g,
        "top_L",
        "top_L".into(),
        m,
        &["I |- X".into()],
        "top |- X",
    );
    t.rule(Primitive, g, "top_R", "top_R".into(), m, &[], "I |- top");
    for (id, prem, concl) in [
        ("and_L", vec!["A , B |- X"], "A & B |- X"),
        ("and_R", vec!["X |- A", "Y |- B"], "X , Y |- A & B"),
        ("or_L", vec!["A |- X", "B |- Y"], "A | B |- X , Y"),
        ("or_R", vec!["X |- A , B"], "X |- A | B"),
        ("imp_L", vec!["X |- A", "B |- Y"], "A -> B |- X > Y"),
        ("imp_R", vec!["X |- A > B"], "X |- A -> B"),
        ("rimp_L", vec!["B |- Y", "X |- A"], "B <- A |- Y < X"),
        ("rimp_R", vec!["Z |- B < A"], "Z |- B <- A"),
        ("dimp_L", vec!["A > B |- Z"], "A >- B |- Z"),
        ("dimp_R", vec!["A |- X", "Y |- B"], "X > Y |- A >- B"),
        ("dsub_L", vec!["B < A |- X"], "B -< A |- X"),
        ("dsub_R", vec!["Y |- B", "A |- X"], "Y < X |- B -< A"),
    ] {
        let prem: Vec<String> = prem.into_iter().map(String::from).collect();
        t.rule(Primitive, g, id, id.into(), m, &prem, concl);
    }
}

fn heterogeneous(t: &mut Tables) {
    for i in [0u8, 1] {
        let (si, oi) = (s(i), o(i));
        let g = "heterogeneous-operational";
        let m = format!("x:{si} a:{oi} B:f Y:F Z:F");
        for (fam, st, op) in [("wtri", "swtri", "wtri"), ("btri", "sbtri", "btri")] {
            t.rule(
                Primitive,
                g,
                &format!("{fam}_L"),
                format!("{fam}_L{i}"),
                &m,
                &[format!("a {st}{i} B |- Z")],
                &format!("a {op}{i} B |- Z"),
            );
            t.rule(
                Primitive,
                g,
                &format!("{fam}_R"),
                format!("{fam}_R{i}"),
                &m,
                &["x |- a".into(), "Y |- B".into()],
                &format!("x {st}{i} Y |- a {op}{i} B"),
            );
        }
        for (fam, st, op) in [("fbox", "sfbox", "fbox"), ("bbox", "sbbox", "bbox")] {
            t.rule(
                Primitive,
                g,
                &format!("{fam}_L"),
                format!("{fam}_L{i}"),
                &m,
                &["x |- a".into(), "B |- Y".into()],
                &format!("a {op}{i} B |- x {st}{i} Y"),
            );
            t.rule(
                Primitive,
                g,
                &format!("{fam}_R"),
                format!("{fam}_R{i}"),
                &m,
                &[format!("Z |- a {st}{i} B")],
                &format!("Z |- a {op}{i} B"),
            );
        }

        let g = "heterogeneous-display";
        let m = format!("x:{si} Y:F Z:F");
        t.double(
            Display,
            g,
            "dp_wtri_bbox",
            format!("dp_wtri_bbox{i}"),
            &m,
            &format!("x swtri{i} Y |- Z"),
            &format!("Y |- x sbbox{i} Z"),
        );
        t.double(
            Display,
            g,
            "dp_btri_fbox",
            format!("dp_btri_fbox{i}"),
            &m,
            &format!("x sbtri{i} Y |- Z"),
            &format!("Y |- x sfbox{i} Z"),
        );
        t.double(
            Display,
            g,
            "dp_wtri_bleft",
            format!("dp_wtri_bleft{i}"),
            &m,
            &format!("x swtri{i} Y |- Z"),
            &format!("x |- Z {} Y", bleft(i)),
        );
        t.double(
            Display,
            g,
            "dp_btri_wleft",
            format!("dp_btri_wleft{i}"),
            &m,
            &format!("x sbtri{i} Y |- Z"),
            &format!("x |- Z {} Y", wleft(i)),
        );

        let g = "necessitation";
        let m = format!("x:{si} W:F");
        t.rule(
            Primitive,
            g,
            "nec_wtri",
            format!("nec_wtri{i}"),
            &m,
            &["I |- W".into()],
            &format!("x swtri{i} I |- W"),
        );
        t.rule(
            Primitive,
            g,
            "nec_btri",
            format!("nec_btri{i}"),
            &m,
            &["I |- W".into()],
            &format!("x sbtri{i} I |- W"),
        );
        let from_btri = [format!("nec_btri{i}")];
        let from_wtri = [format!("nec_wtri{i}")];
        t.rule(
            Derived(&[from_btri[0].as_str()]),
            g,
            "nec_fbox",
            format!("nec_fbox{i}"),
            &m,
            &["I |- W".into()],
            &format!("I |- x sfbox{i} W"),
        );
        t.rule(
            Derived(&[from_wtri[0].as_str()]),
            g,
            "nec_bbox",
            format!("nec_bbox{i}"),
            &m,
            &["I |- W".into()],
            &format!("I |- x sbbox{i} W"),
        );

        let m = format!("x:{si} Y:F Z:F W:F");
        let g = "conjugation";
        for (fam, prem, concl) in [
            (
                "conj_wtri",
                format!("x swtri{i} ((x sbtri{i} Y) , Z) |- W"),
                format!("Y , (x swtri{i} Z) |- W"),
            ),
            (
                "conj_fbox",
                format!("W |- x sfbox{i} ((x sbbox{i} Y) , Z)"),
                format!("W |- Y , (x sfbox{i} Z)"),
            ),
            (
                "conj_btri",
                format!("x sbtri{i} ((x swtri{i} Y) , Z) |- W"),
                format!("Y , (x sbtri{i} Z) |- W"),
            ),
            (
                "conj_bbox",
                format!("W |- x sbbox{i} ((x sfbox{i} Y) , Z)"),
                format!("W |- Y , (x sbbox{i} Z)"),
            ),
        ] {
            t.rule(Primitive, g, fam, format!("{fam}{i}"), &m, &[prem], &concl);
        }
        let g = "fischer-servi";
        for (fam, prem, concl) in [
            (
                "FS_wtri",
                format!("(x sfbox{i} Y) > (x swtri{i} Z) |- W"),
                format!("x swtri{i} (Y > Z) |- W"),
            ),
            (
                "FS_fbox",
                format!("W |- (x swtri{i} Y) > (x sfbox{i} Z)"),
                format!("W |- x sfbox{i} (Y > Z)"),
            ),
            (
                "FS_btri",
                format!("(x sbbox{i} Y) > (x sbtri{i} Z) |- W"),
                format!("x sbtri{i} (Y > Z) |- W"),
            ),
            (
                "FS_bbox",
                format!("W |- (x sbtri{i} Y) > (x sbbox{i} Z)"),
                format!("W |- x sbbox{i} (Y > Z)"),
            ),
        ] {
            t.rule(Primitive, g, fam, format!("{fam}{i}"), &m, &[prem], &concl);
        }
        let g = "monotonicity";
        for (fam, prem, concl) in [
            (
                "mon_wtri",
                format!("(x swtri{i} Y) , (x swtri{i} Z) |- W"),
                format!("x swtri{i} (Y , Z) |- W"),
            ),
            (
                "mon_fbox",
                format!("W |- (x sfbox{i} Y) , (x sfbox{i} Z)"),
                format!("W |- x sfbox{i} (Y , Z)"),
            ),
            (
                "mon_btri",
                format!("(x sbtri{i} Y) , (x sbtri{i} Z) |- W"),
                format!("x sbtri{i} (Y , Z) |- W"),
            ),
            (
                "mon_bbox",
                format!("W |- (x sbbox{i} Y) , (x sbbox{i} Z)"),
                format!("W |- x sbbox{i} (Y , Z)"),
            ),
        ] {
            t.rule(Primitive, g, fam, format!("{fam}{i}"), &m, &[prem], &concl);
        }
    }

    let g = "actions";
    for j in 1..=4u8 {
        let (ix, iy) = pair(j);
        let m = format!("x:{} y:{} Z:F W:F", s(ix), s(iy));
        t.double(
            Primitive,
            g,
            "act_wtri",
            format!("act{j}_wtri"),
            &m,
            &format!("x swtri{ix} (y swtri{iy} Z) |- W"),
            &format!("(x ;b{j} y) swtri1 Z |- W"),
        );
        let base = format!("act{j}_wtri");
        t.double(
            Derived(&[base.as_str()]),
            g,
            "act_bbox",
            format!("act{j}_bbox"),
            &format!("x:{} y:{} Z:F W:F", s(iy), s(ix)),
            &format!("W |- x sbbox{iy} (y sbbox{ix} Z)"),
            &format!("W |- (y ;b{j} x) sbbox1 Z"),
        );
        // For the backward connectives the composition lists `y` first.
        let m = format!("x:{} y:{} Z:F W:F", s(iy), s(ix));
        t.double(
            Primitive,
            g,
            "act_btri",
            format!("act{j}_btri"),
            &m,
            &format!("x sbtri{iy} (y sbtri{ix} Z) |- W"),
            &format!("(y ;b{j} x) sbtri1 Z |- W"),
        );
        let base = format!("act{j}_btri");
        t.double(
            Derived(&[base.as_str()]),
            g,
            "act_fbox",
            format!("act{j}_fbox"),
            &format!("x:{} y:{} Z:F W:F", s(ix), s(iy)),
            &format!("W |- x sfbox{ix} (y sfbox{iy} Z)"),
            &format!("W |- (x ;b{j} y) sfbox1 Z"),
        );
    }
}

fn test_and_iteration(t: &mut Tables) {
    for i in [0u8, 1] {
        let si = s(i);
        let g = "test-iteration-operational";
        t.rule(
            Primitive,
            g,
            "test_L",
            format!("test_L{i}"),
            &format!("A:f x:{si}"),
            &[format!("A ?b{i} |- x")],
            &format!("A ?{i} |- x"),
        );
        t.rule(
            Primitive,
            g,
            "test_R",
            format!("test_R{i}"),
            "X:F A:f",
            &["X |- A".into()],
            &format!("X ?b{i} |- A ?{i}"),
        );
        t.double(
            Display,
            "test-iteration-display",
            "dp_test",
            format!("dp_test{i}"),
            &format!("X:F x:{si}"),
            &format!("X ?b{i} |- x"),
            &format!("X |- x ?rb{i}"),
        );

        let g = "test-structural";
        let m = "X:F Y:F Z:F";
        t.double(
            Primitive,
            g,
            "test_wtri",
            format!("test_wtri{i}"),
            m,
            "X , Y |- Z",
            &format!("X ?b{i} swtri{i} Y |- Z"),
        );
        t.double(
            Primitive,
            g,
            "test_btri",
            format!("test_btri{i}"),
            m,
            "X , Y |- Z",
            &format!("Y ?b{i} sbtri{i} X |- Z"),
        );
        let (b1, b2) = (format!("test_btri{i}"), format!("test_wtri{i}"));
        t.double(
            Derived(&[b1.as_str(), "E_L"]),
            g,
            "test_fbox",
            format!("test_fbox{i}"),
            m,
            "Y |- X > Z",
            &format!("Y |- X ?b{i} sfbox{i} Z"),
        );
        t.double(
            Derived(&[b2.as_str(), "E_L"]),
            g,
            "test_bbox",
            format!("test_bbox{i}"),
            m,
            "Y |- X > Z",
            &format!("Y |- X ?b{i} sbbox{i} Z"),
        );
    }
    let g = "test-iteration-operational";
    t.rule(
        Primitive,
        g,
        "plus_L",
        "plus_L".into(),
        "alpha:a Delta:T",
        &["alpha ^op |- Delta".into()],
        "alpha + |- Delta",
    );
    t.rule(
        Primitive,
        g,
        "plus_R",
        "plus_R".into(),
        "Psi:A alpha:a",
        &["Psi |- alpha".into()],
        "Psi ^op |- alpha +",
    );
    t.rule(
        Primitive,
        g,
        "minus_L",
        "minus_L".into(),
        "delta:t Delta:T",
        &["delta |- Delta".into()],
        "delta - |- Delta ^om",
    );
    t.rule(
        Primitive,
        g,
        "minus_R",
        "minus_R".into(),
        "Psi:A delta:t",
        &["Psi |- delta ^om".into()],
        "Psi |- delta -",
    );
    t.double(
        Display,
        "test-iteration-display",
        "dp_plus",
        "dp_plus".into(),
        "Pi:A Delta:T",
        "Pi ^op |- Delta",
        "Pi |- Delta ^om",
    );

    let g = "absorption";
    let m = "Pi:A Sigma:A Gamma:T Delta:T Xi:T";
    t.rule(
        Primitive,
        g,
        "abs1",
        "abs1".into(),
        m,
        &["Pi |- Delta ^om".into(), "Sigma |- Delta ^om".into()],
        "Pi ;b1 Sigma |- Delta ^om",
    );
    t.rule(
        Primitive,
        g,
        "abs2",
        "abs2".into(),
        m,
        &["Gamma |- Delta".into(), "Sigma |- Delta ^om".into()],
        "Gamma ;b2 Sigma |- Delta ^om",
    );
    t.rule(
        Primitive,
        g,
        "abs3",
        "abs3".into(),
        m,
        &["Sigma |- Delta ^om".into(), "Gamma |- Delta".into()],
        "Sigma ;b3 Gamma |- Delta ^om",
    );
    t.rule(
        Primitive,
        g,
        "abs4",
        "abs4".into(),
        m,
        &["Gamma |- Delta".into(), "Xi |- Delta".into()],
        "Gamma ;b4 Xi |- Delta ^om",
    );

    let g = "promotion-demotion";
    let m = "Pi:A Sigma:A Gamma:T Delta:T";
    for (id, top, bottom) in [
        (
            "pd_semi21",
            "Gamma ;b2 Sigma |- Pi",
            "Gamma ^om ;b1 Sigma |- Pi",
        ),
        (
            "pd_btw21",
            "Pi |- Gamma btw2 Sigma",
            "Pi |- Gamma ^om btw1 Sigma",
        ),
        (
            "pd_semi31",
            "Sigma ;b3 Gamma |- Pi",
            "Sigma ;b1 Gamma ^om |- Pi",
        ),
        (
            "pd_btw31",
            "Pi |- Sigma btw3 Gamma",
            "Pi |- Sigma btw1 Gamma ^om",
        ),
        (
            "pd_semi42",
            "Delta ;b4 Gamma |- Pi",
            "Delta ;b2 Gamma ^om |- Pi",
        ),
        (
            "pd_btw42",
            "Pi |- Delta btw4 Gamma",
            "Pi |- Delta btw2 Gamma ^om",
        ),
        (
            "pd_semi43",
            "Delta ;b4 Gamma |- Pi",
            "Delta ^om ;b3 Gamma |- Pi",
        ),
        (
            "pd_btw43",
            "Pi |- Delta btw4 Gamma",
            "Pi |- Delta ^om btw3 Gamma",
        ),
    ] {
        t.double(Primitive, g, id, id.into(), m, top, bottom);
    }
    t.double(
        Primitive,
        g,
        "pd_test",
        "pd_test".into(),
        "X:F Delta:T",
        "X ?b0 |- Delta",
        "X ?b1 |- Delta ^om",
    );
    let m = "Pi:A X:F Y:F";
    t.rule(
        Primitive,
        g,
        "dem_wtri",
        "dem_wtri".into(),
        m,
        &["Pi ^op swtri0 X |- Y".into()],
        "Pi swtri1 X |- Y",
    );
    t.rule(
        Primitive,
        g,
        "dem_btri",
        "dem_btri".into(),
        m,
        &["Pi ^op sbtri0 X |- Y".into()],
        "Pi sbtri1 X |- Y",
    );
    t.rule(
        Derived(&["dem_btri"]),
        g,
        "dem_fbox",
        "dem_fbox".into(),
        m,
        &["X |- Pi ^op sfbox0 Y".into()],
        "X |- Pi sfbox1 Y",
    );
    t.rule(
        Derived(&["dem_wtri"]),
        g,
        "dem_bbox",
        "dem_bbox".into(),
        m,
        &["X |- Pi ^op sbbox0 Y".into()],
        "X |- Pi sbbox1 Y",
    );
    t.rule(
        Derived(&["dem_wtri"]),
        g,
        "dem_bleft",
        "dem_bleft".into(),
        m,
        &["Pi ^op |- Y vbleft0 X".into()],
        "Pi |- Y sbleft1 X",
    );
    t.rule(
        Derived(&["dem_btri"]),
        g,
        "dem_wleft",
        "dem_wleft".into(),
        m,
        &["Pi ^op |- Y vwleft0 X".into()],
        "Pi |- Y swleft1 X",
    );
}

fn fixed_points(t: &mut Tables) {
    let g = "fixed-point";
    let m = "Pi:A X:F Y:F";
    t.rule(
        Primitive,
        g,
        "FP_wtri",
        "FP_wtri".into(),
        m,
        &[
            "Pi swtri1 X |- Y".into(),
            "(Pi ;b3 Pi ^op) swtri1 X |- Y".into(),
        ],
        "Pi ^op swtri0 X |- Y",
    );
    t.rule(
        Primitive,
        g,
        "FP_btri",
        "FP_btri".into(),
        m,
        &[
            "Pi sbtri1 X |- Y".into(),
            "(Pi ;b3 Pi ^op) sbtri1 X |- Y".into(),
        ],
        "Pi ^op sbtri0 X |- Y",
    );
    t.rule(
        Derived(&["FP_btri"]),
        g,
        "FP_fbox",
        "FP_fbox".into(),
        m,
        &[
            "X |- Pi sfbox1 Y".into(),
            "X |- (Pi ;b3 Pi ^op) sfbox1 Y".into(),
        ],
        "X |- Pi ^op sfbox0 Y",
    );
    t.rule(
        Derived(&["FP_wtri"]),
        g,
        "FP_bbox",
        "FP_bbox".into(),
        m,
        &[
            "X |- Pi sbbox1 Y".into(),
            "X |- (Pi ;b3 Pi ^op) sbbox1 Y".into(),
        ],
        "X |- Pi ^op sbbox0 Y",
    );
    t.rule(
        Derived(&["FP_wtri"]),
        g,
        "FP_bleft",
        "FP_bleft".into(),
        m,
        &[
            "Pi |- Y sbleft1 X".into(),
            "Pi ;b3 Pi ^op |- Y sbleft1 X".into(),
        ],
        "Pi ^op |- Y vbleft0 X",
    );
    t.rule(
        Derived(&["FP_btri"]),
        g,
        "FP_wleft",
        "FP_wleft".into(),
        m,
        &[
            "Pi |- Y swleft1 X".into(),
            "Pi ;b3 Pi ^op |- Y swleft1 X".into(),
        ],
        "Pi ^op |- Y vwleft0 X",
    );

    let m = "Pi:A Pn:A X:F Y:F";
    t.omega(
        Primitive,
        "omega_wtri",
        m,
        "Pn swtri1 X |- Y",
        "Pi ^op swtri0 X |- Y",
    );
    t.omega(
        Primitive,
        "omega_btri",
        m,
        "Pn sbtri1 X |- Y",
        "Pi ^op sbtri0 X |- Y",
    );
    t.omega(
        Derived(&["omega_btri"]),
        "omega_fbox",
        m,
        "X |- Pn sfbox1 Y",
        "X |- Pi ^op sfbox0 Y",
    );
    t.omega(
        Derived(&["omega_wtri"]),
        "omega_bbox",
        m,
        "X |- Pn sbbox1 Y",
        "X |- Pi ^op sbbox0 Y",
    );
    t.omega(
        Derived(&["omega_wtri"]),
        "omega_bleft",
        m,
        "Pn |- Y sbleft1 X",
        "Pi ^op |- Y vbleft0 X",
    );
    t.omega(
        Derived(&["omega_btri"]),
        "omega_wleft",
        m,
        "Pn |- Y swleft1 X",
        "Pi ^op |- Y vwleft0 X",
    );
}

fn action_constants(t: &mut Tables) {
    let g = "gI";
    let plain = "x:A y:A";
    let trans = "Delta:T Gamma:T";
    t.double(
        Primitive,
        g,
        "gI1R",
        "gI1R1".into(),
        plain,
        "x |- y",
        "x |- gI_1 btw1 y",
    );
    t.double(
        Primitive,
        g,
        "gI1R",
        "gI1R2".into(),
        plain,
        "x |- y",
        "x |- gI_0 btw2 y",
    );
    t.double(
        Primitive,
        g,
        "gI1R",
        "gI1R3".into(),
        trans,
        "Delta |- Gamma",
        "Delta ^om |- gI_1 btw3 Gamma",
    );
    t.double(
        Primitive,
        g,
        "gI1R",
        "gI1R4".into(),
        trans,
        "Delta |- Gamma",
        "Delta ^om |- gI_0 btw4 Gamma",
    );
    t.double(
        Primitive,
        g,
        "gI2R",
        "gI2R1".into(),
        plain,
        "x |- y",
        "x |- y btw1 gI_1",
    );
    t.double(
        Primitive,
        g,
        "gI2R",
        "gI2R3".into(),
        plain,
        "x |- y",
        "x |- y btw3 gI_0",
    );
    t.double(
        Primitive,
        g,
        "gI2R",
        "gI2R2".into(),
        trans,
        "Delta |- Gamma",
        "Delta ^om |- Gamma btw2 gI_1",
    );
    t.double(
        Primitive,
        g,
        "gI2R",
        "gI2R4".into(),
        trans,
        "Delta |- Gamma",
        "Delta ^om |- Gamma btw4 gI_0",
    );

    let g = "Phi";
    t.double(
        Primitive,
        g,
        "Phi1L",
        "Phi1L1".into(),
        plain,
        "x |- y",
        "Phi_1 ;b1 x |- y",
    );
    t.double(
        Primitive,
        g,
        "Phi1L",
        "Phi1L2".into(),
        plain,
        "x |- y",
        "Phi_0 ;b2 x |- y",
    );
    t.double(
        Primitive,
        g,
        "Phi1L",
        "Phi1L3".into(),
        trans,
        "Delta |- Gamma",
        "Phi_1 ;b3 Delta |- Gamma ^om",
    );
    t.double(
        Primitive,
        g,
        "Phi1L",
        "Phi1L4".into(),
        trans,
        "Delta |- Gamma",
        "Phi_0 ;b4 Delta |- Gamma ^om",
    );
    t.double(
        Primitive,
        g,
        "Phi2L",
        "Phi2L1".into(),
        plain,
        "x |- y",
        "x ;b1 Phi_1 |- y",
    );
    t.double(
        Primitive,
        g,
        "Phi2L",
        "Phi2L3".into(),
        plain,
        "x |- y",
        "x ;b3 Phi_0 |- y",
    );
    t.double(
        Primitive,
        g,
        "Phi2L",
        "Phi2L2".into(),
        trans,
        "Delta |- Gamma",
        "Delta ;b2 Phi_1 |- Gamma ^om",
    );
    t.double(
        Primitive,
        g,
        "Phi2L",
        "Phi2L4".into(),
        trans,
        "Delta |- Gamma",
        "Delta ;b4 Phi_0 |- Gamma ^om",
    );
}

fn action_structure(t: &mut Tables) {
    let g = "weakening-actions";
    let m = "x:A y:A Delta:T Gamma:T Pi:A Gamma2:T";
    let weak = [
        ("W_1R", "W_1R1", "x |- y", "x |- z btw1 y", "z:A"),
        ("W_1R", "W_1R2", "x |- y", "x |- z btw2 y", "z:T"),
        (
            "W_1R",
            "W_1R3",
            "Delta |- Gamma",
            "Delta ^om |- Pi btw3 Gamma",
            "",
        ),
        (
            "W_1R",
            "W_1R4",
            "Delta |- Gamma",
            "Delta ^om |- Gamma2 btw4 Gamma",
            "",
        ),
        ("W_2R", "W_2R1", "x |- y", "x |- y btw1 z", "z:A"),
        ("W_2R", "W_2R3", "x |- y", "x |- y btw3 z", "z:T"),
        (
            "W_2R",
            "W_2R2",
            "Delta |- Gamma",
            "Delta ^om |- Gamma btw2 Pi",
            "",
        ),
        (
            "W_2R",
            "W_2R4",
            "Delta |- Gamma",
            "Delta ^om |- Gamma btw4 Gamma2",
            "",
        ),
    ];
    for (fam, id, prem, concl, extra) in weak {
        t.rule(
            Primitive,
            g,
            fam,
            id.into(),
            &format!("{m} {extra}"),
            &[prem.into()],
            concl,
        );
    }

    let g = "contraction-actions";
    t.rule(
        Primitive,
        g,
        "C_R",
        "C_R1".into(),
        "y:A x:A",
        &["y |- x btw1 x".into()],
        "y |- x",
    );
    t.rule(
        Primitive,
        g,
        "C_R",
        "C_R4".into(),
        "y:A x:T",
        &["y |- x btw4 x".into()],
        "y |- x ^om",
    );

    let g = "exchange-actions";
    t.double(
        Primitive,
        g,
        "E23_R",
        "E23_R".into(),
        "Sigma:A Delta:T Pi:A",
        "Sigma |- Delta btw2 Pi",
        "Sigma |- Pi btw3 Delta",
    );
    t.rule(
        Primitive,
        g,
        "Ekk_R",
        "E11_R".into(),
        "z:A x:A y:A",
        &["z |- x btw1 y".into()],
        "z |- y btw1 x",
    );
    t.rule(
        Primitive,
        g,
        "Ekk_R",
        "E44_R".into(),
        "z:A x:T y:T",
        &["z |- x btw4 y".into()],
        "z |- y btw4 x",
    );

    let g = "associativity-actions";
    for sx in [1u8, 0] {
        for sy in [1u8, 0] {
            for sz in [1u8, 0] {
                let code = format!("{sx}{sy}{sz}");
                let m = format!("x:{} y:{} z:{} w:A", s(sx), s(sy), s(sz));
                let (inner_r, outer_r) = (j_of(sy, sz), j_of(sx, 1));
                let (inner_l, outer_l) = (j_of(sx, sy), j_of(1, sz));
                t.rule(
                    Primitive,
                    g,
                    "assoc_L",
                    format!("assoc_L_{code}"),
                    &m,
                    &[format!("x ;b{outer_r} (y ;b{inner_r} z) |- w")],
                    &format!("(x ;b{inner_l} y) ;b{outer_l} z |- w"),
                );
                // Choice nests the other way round: `(z btw y) btw x` to `z btw (y btw x)`.
                let (inner_p, outer_p) = (j_of(sz, sy), j_of(1, sx));
                let (inner_c, outer_c) = (j_of(sy, sx), j_of(sz, 1));
                t.rule(
                    Primitive,
                    g,
                    "assoc_R",
                    format!("assoc_R_{code}"),
                    &m,
                    &[format!("w |- (z btw{inner_p} y) btw{outer_p} x")],
                    &format!("w |- z btw{outer_c} (y btw{inner_c} x)"),
                );
            }
        }
    }

    let g = "choice-structural";
    let m = "Psi:A X:F Y:F Z:F";
    for (fam, st) in [("choice_bleft", "sbleft1"), ("choice_wleft", "swleft1")] {
        t.rule(
            Primitive,
            g,
            fam,
            format!("{fam}_1"),
            m,
            &[format!("Psi |- (Y {st} X) btw1 (Z {st} X)")],
            &format!("Psi |- (Y , Z) {st} X"),
        );
        t.rule(
            Primitive,
            g,
            fam,
            format!("{fam}_2"),
            m,
            &[format!("Psi |- (X {st} Y) btw1 (X {st} Z)")],
            &format!("Psi |- X {st} (Y , Z)"),
        );
    }

    let g = "choice-display";
    for k in 1..=4u8 {
        let (ix, iy) = pair(k);
        let m = format!("x:{} y:{} z:A", s(ix), s(iy));
        t.double(
            Display,
            g,
            "dp_btw_resR",
            format!("dp_btw_resR{k}"),
            &m,
            &format!("z |- x btw{k} y"),
            &format!("x resR{k} z |- y"),
        );
        t.double(
            Display,
            g,
            "dp_btw_resL",
            format!("dp_btw_resL{k}"),
            &m,
            &format!("z |- x btw{k} y"),
            &format!("z resL{k} y |- x"),
        );
        let succ = if k >= 3 {
            format!("vsucc{k}")
        } else {
            format!("succ{k}")
        };
        let prec = if k % 2 == 0 {
            format!("vprec{k}")
        } else {
            format!("prec{k}")
        };
        t.double(
            Display,
            g,
            "dp_semi_succ",
            format!("dp_semi_succ{k}"),
            &m,
            &format!("x ;b{k} y |- z"),
            &format!("y |- x {succ} z"),
        );
        t.double(
            Display,
            g,
            "dp_semi_prec",
            format!("dp_semi_prec{k}"),
            &m,
            &format!("x ;b{k} y |- z"),
            &format!("x |- z {prec} y"),
        );
    }

    let g = "choice-operational";
    for j in 1..=4u8 {
        let (i1, i2) = pair(j);
        let m = format!("f:{} g:{} x:{} y:{} z:A", o(i1), o(i2), s(i1), s(i2));
        t.rule(
            Primitive,
            g,
            "cup_L",
            format!("cup_L{j}"),
            &m,
            &["f |- x".into(), "g |- y".into()],
            &format!("f cup{j} g |- x btw{j} y"),
        );
        t.rule(
            Primitive,
            g,
            "cup_R",
            format!("cup_R{j}"),
            &m,
            &[format!("z |- f btw{j} g")],
            &format!("z |- f cup{j} g"),
        );
        t.rule(
            Primitive,
            g,
            "seq_L",
            format!("seq_L{j}"),
            &m,
            &[format!("f ;b{j} g |- z")],
            &format!("f ;{j} g |- z"),
        );
        t.rule(
            Primitive,
            g,
            "seq_R",
            format!("seq_R{j}"),
            &m,
            &["x |- f".into(), "y |- g".into()],
            &format!("x ;b{j} y |- f ;{j} g"),
        );
    }
}

/// Absorption with the transitive succedent `Delta ^om` replaced by an
/// arbitrary action `Psi`. Without transitivity the rule is unsound.
pub(super) fn mutants() -> Vec<RuleSchema> {
    let mut t = Tables {
        out: Vec::new(),
        sig: Signature::default(),
    };
    t.rule(
        Primitive,
        "mutant",
        "abs_mutant",
        "abs_mutant".into(),
        "Pi:A Sigma:A Psi:A",
        &["Pi |- Psi".into(), "Sigma |- Psi".into()],
        "Pi ;b1 Sigma |- Psi",
    );
    t.out
}
