//! Proof kernel and toolchain for the multi-type display calculus of
//! propositional dynamic logic.

pub mod completeness_corpus;
pub mod cut_reduction;
pub mod pdl_translate;
pub mod proof_kernel;
pub mod rule_catalog;
pub mod semantics;
pub mod syntax;
pub mod typing;
