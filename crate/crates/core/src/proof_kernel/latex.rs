//! `bussproofs` export.

use std::fmt::Write;

use super::Proof;
use crate::rule_catalog::catalog;
use crate::syntax::Latex;

fn label(rule: &str) -> String {
    format!("\\RightLabel{{\\scriptsize {}}}", rule.replace('_', "\\_"))
}

fn emit(p: &Proof, out: &mut String) {
    super::deep(|| emit_node(p, out))
}

fn emit_node(p: &Proof, out: &mut String) {
    let seq = Latex(p.conclusion());
    let double = catalog().get(p.rule()).is_some_and(|r| r.inverse.is_some());
    match p {
        Proof::Axiom { rule, .. } => {
            let _ = writeln!(out, "\\AxiomC{{}}\n{}\n\\UnaryInfC{{${seq}$}}", label(rule));
        }
        Proof::Rule { rule, children, .. } => {
            for c in children {
                emit(c, out);
            }
            let inf = match children.len() {
                0 => {
                    out.push_str("\\AxiomC{}\n");
                    "UnaryInfC"
                }
                1 => "UnaryInfC",
                2 => "BinaryInfC",
                3 => "TrinaryInfC",
                4 => "QuaternaryInfC",
                _ => "QuinaryInfC",
            };
            if double {
                out.push_str("\\doubleLine\n");
            }
            let _ = writeln!(out, "{}\n\\{inf}{{${seq}$}}", label(rule));
        }
        Proof::Omega {
            rule,
            family,
            verified_up_to,
            ..
        } => {
            let _ = writeln!(
                out,
                "\\AxiomC{{$\\left(\\text{{{}}}(n)\\right)_{{n \\geq 1}}$ \\scriptsize(checked to {verified_up_to})}}",
                family.name().replace('_', "\\_")
            );
            let _ = writeln!(out, "{}\n\\UnaryInfC{{${seq}$}}", label(rule));
        }
    }
}

/// A `prooftree` environment; connective macros come from
/// [`crate::syntax::latex_preamble`].
pub fn to_bussproofs(p: &Proof) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    emit(p, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}
