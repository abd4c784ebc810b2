//! Randomized soundness check of rule schemas on finite models.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::{random_opterm, random_readable_structure, random_structure};
use super::{holds, KripkeModel, Verdict};
use crate::rule_catalog::{
    catalog, conclusion_of, premises_of, Binding, Premises, RuleSchema, SideCondition, Substitution,
};
use crate::syntax::{OpTerm, Sequent, Signature, Sort};

/// Parameters of a fuzzing run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Largest model size, at most 5.
    pub max_worlds: usize,
    pub trials: usize,
    /// Restrict to schemas with this id or family.
    pub filter: Option<String>,
    /// Maximum depth of generated structures.
    pub max_depth: usize,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig {
            seed: 1,
            max_worlds: 4,
            trials: 1000,
            filter: None,
            max_depth: 3,
        }
    }
}

/// An instance whose premises hold but whose conclusion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub rule: String,
    pub subst: Substitution,
    pub model: KripkeModel,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rule {} with {}", self.rule, self.subst)?;
        for p in &self.premises {
            writeln!(f, "  premise    {p}")?;
        }
        writeln!(f, "  conclusion {}", self.conclusion)?;
        write!(f, "{}", self.model.to_text())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: usize,
    /// Trials where every premise held and the conclusion was evaluated.
    pub tested: usize,
    /// Trials with a false premise.
    pub vacuous: usize,
    /// Trials with an uninterpretable premise or conclusion.
    pub uninterpretable: usize,
    /// Schemas the run drew from.
    pub schemas: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} trials over {} schemas: {} tested, {} vacuous, {} uninterpretable, {} counterexamples",
            self.trials,
            self.schemas,
            self.tested,
            self.vacuous,
            self.uninterpretable,
            self.counterexamples.len()
        )
    }
}

fn fuzz_signature() -> Signature {
    Signature::new(["p", "q"], ["a", "b"]).expect("disjoint atoms")
}

/// Non-virtual catalogue schemas selected by `cfg.filter`.
pub fn fuzz_targets(cfg: &FuzzConfig) -> Vec<&'static RuleSchema> {
    catalog()
        .iter()
        .filter(|r| !r.is_virtual())
        .filter(|r| {
            cfg.filter
                .as_deref()
                .is_none_or(|f| r.id == f || r.family == f)
        })
        .collect()
}

/// Fuzz the catalogue schemas selected by `cfg`.
pub fn fuzz_soundness(cfg: &FuzzConfig) -> FuzzReport {
    fuzz_schemas(cfg, &fuzz_targets(cfg))
}

/// Trial `t` draws from its own generator seeded by `(seed, t)`, so a run is
/// reproducible trial by trial.
pub fn fuzz_schemas(cfg: &FuzzConfig, schemas: &[&RuleSchema]) -> FuzzReport {
    let mut report = FuzzReport {
        schemas: schemas.len(),
        ..FuzzReport::default()
    };
    if schemas.is_empty() {
        return report;
    }
    let sig = fuzz_signature();
    let max_worlds = cfg.max_worlds.clamp(1, 5);
    for t in 0..cfg.trials {
        let mut rng =
            ChaCha8Rng::seed_from_u64(cfg.seed ^ (t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let schema = *schemas.choose(&mut rng).expect("non-empty");
        let k = rng.gen_range(1..=max_worlds);
        let density = rng.gen_range(0.2..0.7);
        let model = KripkeModel::random(&mut rng, k, &sig, density);
        let sub = random_substitution(&mut rng, schema, cfg.max_depth, &sig);
        report.trials += 1;
        run_trial(schema, &sub, &model, &mut report);
    }
    report
}

/// A random instance of every metavariable of `schema`, respecting sorts
/// and atomicity side conditions. The ω-iterated metavariable is left free.
pub fn random_substitution(
    rng: &mut impl Rng,
    schema: &RuleSchema,
    depth: usize,
    sig: &Signature,
) -> Substitution {
    let iterate = match &schema.premises {
        Premises::Omega { iterate, .. } => Some(iterate.as_str()),
        Premises::Finite(_) => None,
    };
    let mut sub = Substitution::new();
    let positions: Vec<_> = crate::rule_catalog::meta_positions(&schema.conclusion);
    for d in &schema.metas {
        if Some(d.name.as_str()) == iterate {
            continue;
        }
        let atomic = schema
            .side_conditions
            .iter()
            .any(|SideCondition::Atomic(m)| *m == d.name);
        let size = rng.gen_range(0..=depth);
        let b = if atomic {
            let fm = d.sort == Sort::Fm;
            let names: Vec<&String> = if fm {
                sig.props.iter().collect()
            } else {
                sig.acts.iter().collect()
            };
            let name = names.choose(rng).expect("atoms");
            Binding::Op(if fm {
                OpTerm::prop(name)
            } else {
                OpTerm::act(name)
            })
        } else if d.structural {
            // Mostly readable at the metavariable's position; sometimes not,
            // so that skipped instances stay visible in the report.
            let at = positions
                .iter()
                .find(|(m, _)| *m.name == *d.name)
                .map(|(_, p)| *p);
            match at {
                Some(pos) if rng.gen_bool(0.85) => {
                    Binding::St(random_readable_structure(rng, d.sort, size, sig, pos))
                }
                _ => Binding::St(random_structure(rng, d.sort, size, sig)),
            }
        } else {
            Binding::Op(random_opterm(rng, d.sort, size, sig))
        };
        sub.0.insert(d.name.clone(), b);
    }
    sub
}

/// Evaluate one instance. ω-schemas are checked on the premises `n = 1..=k²`,
/// after which the iterated compositions stop producing new relations.
pub fn run_trial(
    schema: &RuleSchema,
    sub: &Substitution,
    model: &KripkeModel,
    report: &mut FuzzReport,
) {
    let k = model.worlds();
    let bound = schema.is_omega().then_some(k * k);
    let (Ok(premises), Ok(conclusion)) =
        (premises_of(schema, sub, bound), conclusion_of(schema, sub))
    else {
        report.uninterpretable += 1;
        return;
    };
    let mut vacuous = false;
    for p in &premises {
        match holds(model, p) {
            Verdict::Uninterpretable => {
                report.uninterpretable += 1;
                return;
            }
            Verdict::Holds(false) => vacuous = true,
            Verdict::Holds(true) => {}
        }
    }
    if vacuous {
        report.vacuous += 1;
        return;
    }
    match holds(model, &conclusion) {
        Verdict::Uninterpretable => report.uninterpretable += 1,
        Verdict::Holds(true) => report.tested += 1,
        Verdict::Holds(false) => {
            report.tested += 1;
            report.counterexamples.push(Counterexample {
                rule: schema.id.clone(),
                subst: sub.clone(),
                model: model.clone(),
                premises,
                conclusion,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule_catalog::mutant_schemas;

    #[test]
    fn fixed_point_rule_survives() {
        let cfg = FuzzConfig {
            filter: Some("FP_btri".into()),
            ..FuzzConfig::default()
        };
        let r = fuzz_soundness(&cfg);
        assert_eq!(r.schemas, 1);
        assert!(r.tested > 0);
        assert!(r.counterexamples.is_empty(), "{}", r.counterexamples[0]);
    }

    #[test]
    fn mutant_is_caught() {
        let m = mutant_schemas();
        let refs: Vec<&RuleSchema> = m.iter().collect();
        let r = fuzz_schemas(&FuzzConfig::default(), &refs);
        assert!(!r.counterexamples.is_empty(), "{r}");
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = FuzzConfig {
            trials: 200,
            seed: 9,
            ..FuzzConfig::default()
        };
        assert_eq!(fuzz_soundness(&cfg), fuzz_soundness(&cfg));
    }

    #[test]
    fn virtual_schemas_are_excluded() {
        assert!(fuzz_targets(&FuzzConfig::default())
            .iter()
            .all(|r| !r.is_virtual()));
        let cfg = FuzzConfig {
            filter: Some("dp_wtri_bleft0".into()),
            ..FuzzConfig::default()
        };
        assert!(fuzz_targets(&cfg).is_empty());
    }
}
