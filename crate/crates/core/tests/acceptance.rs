//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. Runs without the libtest harness so the
//! lines are always shown.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dyncalc::completeness_corpus::{axiom_sequent, derive, lemma, AxiomId, LemmaId, Params};
use dyncalc::cut_reduction::{cut_ranks, principal_fixture, ranks_descend, reduce};
use dyncalc::pdl_translate::translate_formula;
use dyncalc::proof_kernel::{check, display, Proof, DISPLAY_BUDGET};
use dyncalc::rule_catalog::{
    audit_schema, catalog, mutant_schemas, simulate_derived, Condition, Outcome, SIMULATION_BUDGET,
};
use dyncalc::semantics::gen::random_pdl;
use dyncalc::semantics::{
    closure_plus, fuzz_schemas, fuzz_targets, interpret, pdl_eval, FuzzConfig, KripkeModel, Rel,
};
use dyncalc::syntax::{parse_opterm, parse_sequent, SeqPath, Sequent, Signature};
use dyncalc::typing::check_sequent;

/// Criterion 1: wall-clock limit for building and checking the box corpus.
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(10);
/// Criterion 1: ω-bound for the induction axiom.
const INDUCTION_BOUND: usize = 6;
/// Criterion 2: lemma instances checked.
const LEMMA_RANGE: std::ops::RangeInclusive<usize> = 1..=6;
/// Criterion 3: trials per schema, and for the mutant.
const FUZZ_TRIALS: usize = 1000;
const FUZZ_WORLDS: usize = 4;
/// Criterion 4.
const PDL_SAMPLES: usize = 500;
const PDL_DEPTH: usize = 4;
const PDL_WORLDS: usize = 4;
/// Criterion 5.
const CLOSURE_SAMPLES: usize = 200;
const CLOSURE_WORLDS: usize = 6;
const ADJUNCTION_WORLDS: usize = 4;
/// Criterion 6: rewrite budget per fixture.
const CUT_FUEL: usize = 100;

/// End-sequents of the box axioms from the axiom table: the printed form,
/// which must match character for character, and a fully parenthesized
/// reading, which must parse to the same sequent.
const BOX_TABLE: [(&str, &str, &str); 12] = [
    (
        "K",
        "a fbox1 (p -> q) |- a fbox1 p -> a fbox1 q",
        "a fbox1 (p -> q) |- (a fbox1 p) -> (a fbox1 q)",
    ),
    (
        "BoxChoice_LR",
        "(a cup1 b) fbox1 p |- a fbox1 p & b fbox1 p",
        "(a cup1 b) fbox1 p |- (a fbox1 p) & (b fbox1 p)",
    ),
    (
        "BoxChoice_RL",
        "a fbox1 p & b fbox1 p |- (a cup1 b) fbox1 p",
        "(a fbox1 p) & (b fbox1 p) |- (a cup1 b) fbox1 p",
    ),
    (
        "BoxComposition_LR",
        "(a ;1 b) fbox1 p |- a fbox1 (b fbox1 p)",
        "(a ;1 b) fbox1 p |- a fbox1 (b fbox1 p)",
    ),
    (
        "BoxComposition_RL",
        "a fbox1 (b fbox1 p) |- (a ;1 b) fbox1 p",
        "a fbox1 (b fbox1 p) |- (a ;1 b) fbox1 p",
    ),
    (
        "BoxTest_LR",
        "p?1 fbox1 q |- p -> q",
        "(p ?1) fbox1 q |- p -> q",
    ),
    (
        "BoxTest_RL",
        "p -> q |- p?1 fbox1 q",
        "p -> q |- (p ?1) fbox1 q",
    ),
    (
        "BoxDistributivity_LR",
        "a fbox1 (p & q) |- a fbox1 p & a fbox1 q",
        "a fbox1 (p & q) |- (a fbox1 p) & (a fbox1 q)",
    ),
    (
        "BoxDistributivity_RL",
        "a fbox1 p & a fbox1 q |- a fbox1 (p & q)",
        "(a fbox1 p) & (a fbox1 q) |- a fbox1 (p & q)",
    ),
    (
        "BoxFixpoint_LR",
        "a+ fbox0 p |- a fbox1 p & a fbox1 (a+ fbox0 p)",
        "(a +) fbox0 p |- (a fbox1 p) & (a fbox1 ((a +) fbox0 p))",
    ),
    (
        "BoxFixpoint_RL",
        "a fbox1 p & a fbox1 (a+ fbox0 p) |- a+ fbox0 p",
        "(a fbox1 p) & (a fbox1 ((a +) fbox0 p)) |- (a +) fbox0 p",
    ),
    (
        "BoxInduction",
        "a fbox1 p & a+ fbox0 (p -> a fbox1 p) |- a+ fbox0 p",
        "(a fbox1 p) & ((a +) fbox0 (p -> (a fbox1 p))) |- (a +) fbox0 p",
    ),
];

/// Cut-reduction shapes: one fixture term per connective family.
const CUT_SHAPES: [(&str, &str); 16] = [
    ("atom (formula)", "p"),
    ("atom (action)", "a"),
    ("top", "top"),
    ("wtri1", "a wtri1 p"),
    ("wtri0", "a+ wtri0 p"),
    ("fbox1", "a fbox1 p"),
    ("fbox0", "a+ fbox0 p"),
    ("btri1", "a btri1 p"),
    ("btri0", "a+ btri0 q"),
    ("bbox1", "a bbox1 p"),
    ("bbox0", "a+ bbox0 p"),
    ("test1", "p?1"),
    ("test0", "p?0"),
    ("plus", "a+"),
    ("minus", "a+ -"),
    ("and", "p & q"),
];

type Checked = Result<String, String>;

/// Proofs accepted during the run, for criteria 7 and 9.
#[derive(Default)]
struct Accepted {
    /// Proof, and the ω-bound it was checked at.
    proofs: Vec<(Proof, usize)>,
}

impl Accepted {
    fn sequents(&self) -> Vec<Sequent> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (p, bound) in &self.proofs {
            p.visit(*bound, &mut |n| {
                if seen.insert(n.conclusion().clone()) {
                    out.push(n.conclusion().clone());
                }
            });
        }
        out
    }
}

fn sig() -> Signature {
    Signature::new(["p", "q"], ["a", "b"]).expect("disjoint atoms")
}

fn cuts(p: &Proof) -> usize {
    let mut n = 0;
    p.visit(1, &mut |x| n += usize::from(x.rule().starts_with("cut_")));
    n
}

fn corpus(acc: &mut Accepted) -> Checked {
    let start = Instant::now();
    let params = Params {
        omega_bound: INDUCTION_BOUND,
        ..Params::default()
    };
    for (name, text, reading) in BOX_TABLE {
        let id: AxiomId = name.parse().map_err(|e| format!("{e}"))?;
        let p = derive(id, &params).map_err(|e| format!("{name}: {e}"))?;
        let bound = if id.uses_omega() { INDUCTION_BOUND } else { 1 };
        let v = check(&p, bound);
        if !v.ok() {
            return Err(format!("{name}: {v}"));
        }
        let end = p.conclusion().to_string();
        if end != text {
            return Err(format!("{name}: ends in `{end}`, table has `{text}`"));
        }
        let parsed = parse_sequent(reading, &sig()).map_err(|e| format!("{name}: {e}"))?;
        if parsed != *p.conclusion()
            || axiom_sequent(id, &params).map_err(|e| e.to_string())? != parsed
        {
            return Err(format!("{name}: end-sequent differs from `{reading}`"));
        }
        acc.proofs.push((p, bound));
    }
    let took = start.elapsed();
    if took >= CORPUS_TIME_LIMIT {
        return Err(format!("took {took:.2?}, limit {CORPUS_TIME_LIMIT:?}"));
    }
    Ok(format!(
        "12 box axioms, induction at bound {INDUCTION_BOUND}, {took:.2?}"
    ))
}

fn lemmas(acc: &mut Accepted) -> Checked {
    let params = Params::default();
    let mut count = 0;
    for id in LemmaId::ALL {
        for n in LEMMA_RANGE {
            let p = lemma(id, n, &params).map_err(|e| format!("{id}({n}): {e}"))?;
            let v = check(&p, 1);
            if !v.ok() {
                return Err(format!("{id}({n}): {v}"));
            }
            if id == LemmaId::Chain && cuts(&p) != n - 1 {
                return Err(format!("chain({n}) uses {} cuts", cuts(&p)));
            }
            acc.proofs.push((p, 1));
            count += 1;
        }
    }
    Ok(format!("{count} lemma instances, chain(n) uses n-1 cuts"))
}

fn soundness() -> Checked {
    let cfg = FuzzConfig {
        seed: 1,
        max_worlds: FUZZ_WORLDS,
        trials: FUZZ_TRIALS,
        filter: None,
        max_depth: 3,
    };
    let (mut tested, mut uninterpretable, mut vacuous, mut bad) = (0, 0, 0, Vec::new());
    let targets = fuzz_targets(&cfg);
    for schema in &targets {
        let r = fuzz_schemas(&cfg, &[*schema]);
        tested += r.tested;
        vacuous += r.vacuous;
        uninterpretable += r.uninterpretable;
        bad.extend(r.counterexamples.into_iter().map(|c| c.rule));
    }
    let mutants = mutant_schemas();
    let caught = fuzz_schemas(&cfg, &mutants.iter().collect::<Vec<_>>())
        .counterexamples
        .len();
    let summary = format!(
        "{} schemas x {FUZZ_TRIALS} trials: {tested} tested, {vacuous} vacuous, {uninterpretable} skipped as uninterpretable; mutant caught {caught} times",
        targets.len()
    );
    if !bad.is_empty() {
        bad.dedup();
        return Err(format!("counterexamples for {bad:?}; {summary}"));
    }
    if caught == 0 {
        return Err(format!("mutant not caught; {summary}"));
    }
    Ok(summary)
}

fn translation() -> Checked {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sig = sig();
    for i in 0..PDL_SAMPLES {
        let k = rng.gen_range(1..=PDL_WORLDS);
        let m = KripkeModel::random(&mut rng, k, &sig, 0.4);
        let depth = rng.gen_range(1..=PDL_DEPTH);
        let a = random_pdl(&mut rng, depth, &sig, i % 2 == 1);
        let direct = pdl_eval(&m, &a);
        let via = interpret(&m, &translate_formula(&a)).worlds();
        if via != Some(direct) {
            return Err(format!(
                "`{a}`: pdl {direct}, translated {via:?}\n{}",
                m.to_text()
            ));
        }
    }
    Ok(format!(
        "{PDL_SAMPLES} formulas of depth <= {PDL_DEPTH}, 0 failures"
    ))
}

/// Union of all powers, by repeated boolean matrix products.
fn closure_oracle(k: usize, r: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let mut power = r.to_vec();
    let mut acc = r.to_vec();
    for _ in 1..k.max(1) {
        let mut next = vec![vec![false; k]; k];
        for (u, row) in next.iter_mut().enumerate() {
            for (v, cell) in row.iter_mut().enumerate() {
                *cell = (0..k).any(|w| power[u][w] && r[w][v]);
            }
        }
        power = next;
        for u in 0..k {
            for v in 0..k {
                acc[u][v] |= power[u][v];
            }
        }
    }
    acc
}

fn rel_of(k: usize, m: &[Vec<bool>]) -> Rel {
    Rel::from_pairs(
        k,
        (0..k)
            .flat_map(|u| (0..k).map(move |v| (u, v)))
            .filter(|&(u, v)| m[u][v]),
    )
}

fn transitive_relations(k: usize) -> Vec<Rel> {
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|u| (0..k).map(move |v| (u, v))).collect();
    (0u32..1 << cells.len())
        .map(|bits| {
            Rel::from_pairs(
                k,
                cells
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &c)| c),
            )
        })
        .filter(Rel::is_transitive)
        .collect()
}

fn closure() -> Checked {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let transitive: Vec<Vec<Rel>> = (0..=ADJUNCTION_WORLDS).map(transitive_relations).collect();
    let mut adjunction_checks = 0usize;
    for _ in 0..CLOSURE_SAMPLES {
        let k = rng.gen_range(1..=CLOSURE_WORLDS);
        let density = rng.gen_range(0.05..0.6);
        let m: Vec<Vec<bool>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_bool(density)).collect())
            .collect();
        let r = rel_of(k, &m);
        let plus = closure_plus(r);
        let oracle = rel_of(k, &closure_oracle(k, &m));
        if plus != oracle {
            return Err(format!("closure of {r} is {plus}, oracle {oracle}"));
        }
        if k <= ADJUNCTION_WORLDS {
            for t in &transitive[k] {
                adjunction_checks += 1;
                if r.subset_of(t) != plus.subset_of(t) {
                    return Err(format!("adjunction fails for {r} against {t}"));
                }
            }
        }
    }
    Ok(format!("{CLOSURE_SAMPLES} relations on <= {CLOSURE_WORLDS} worlds, {adjunction_checks} adjunction checks"))
}

fn cut_reductions(acc: &mut Accepted) -> Checked {
    let sig = sig();
    let mut steps = 0;
    for (shape, text) in CUT_SHAPES {
        let t = parse_opterm(text, &sig).map_err(|e| format!("{shape}: {e}"))?;
        let p = principal_fixture(&t).map_err(|e| format!("{shape}: {e}"))?;
        let (q, report) = reduce(&p, CUT_FUEL);
        if report.steps == 0 || !report.unsupported.is_empty() || report.fuel_exhausted {
            return Err(format!("{shape}: {report}"));
        }
        if q.conclusion() != p.conclusion() {
            return Err(format!("{shape}: end-sequent changed"));
        }
        if !report.rechecked || !check(&q, 1).ok() {
            return Err(format!("{shape}: reduct rejected"));
        }
        if let Some(w) = report
            .ranks
            .windows(2)
            .find(|w| !ranks_descend(&w[0], &w[1]))
        {
            return Err(format!("{shape}: ranks {:?} -> {:?}", w[0], w[1]));
        }
        if !ranks_descend(&cut_ranks(&p), &cut_ranks(&q)) {
            return Err(format!("{shape}: no overall descent"));
        }
        steps += report.steps;
        acc.proofs.push((p, 1));
        acc.proofs.push((q, 1));
    }
    Ok(format!(
        "{} shapes, {steps} rewrites, ranks strictly descending",
        CUT_SHAPES.len()
    ))
}

fn relativized_display(acc: &Accepted) -> Checked {
    let mut targets = 0;
    let mut longest = 0;
    for s in acc.sequents() {
        for at in SeqPath::all(&s) {
            let chain =
                display(&s, &at, DISPLAY_BUDGET).map_err(|e| format!("`{s}` at {at}: {e}"))?;
            longest = longest.max(chain.steps.len());
            targets += 1;
        }
    }
    Ok(format!(
        "{targets} substructures displayed within budget {DISPLAY_BUDGET}, longest chain {longest}"
    ))
}

fn audit() -> Checked {
    let cat = catalog();
    let mut derived = 0;
    for r in cat.iter() {
        let rep = audit_schema(r);
        if !rep.passed() {
            return Err(rep.to_string());
        }
        if r.is_cut() && rep.outcome(Condition::C10) != &Outcome::Pass {
            return Err(format!("{}: C10 {}", r.id, rep.outcome(Condition::C10)));
        }
        if r.is_derived() {
            simulate_derived(r).map_err(|e| format!("{}: {e}", r.id))?;
            derived += 1;
        }
    }
    let cut_rules = cat.iter().filter(|r| r.is_cut()).count();
    Ok(format!(
        "{} schemas pass, {cut_rules} cut schemas pass C10, {derived} derived rules simulated within {SIMULATION_BUDGET}",
        cat.len()
    ))
}

fn uniformity(acc: &Accepted) -> Checked {
    let seqs = acc.sequents();
    for s in &seqs {
        check_sequent(s).map_err(|e| format!("`{s}`: {e}"))?;
    }
    Ok(format!(
        "{} distinct sequents from {} proofs, 0 exceptions",
        seqs.len(),
        acc.proofs.len()
    ))
}

fn diamonds(acc: &mut Accepted) -> Checked {
    for id in AxiomId::DIAMOND {
        let p = derive(id, &Params::default()).map_err(|e| format!("{id}: {e}"))?;
        let v = check(&p, 1);
        if !v.ok() {
            return Err(format!("{id}: {v}"));
        }
        let used = p.rules_used(1);
        if let Some(r) = used
            .iter()
            .find(|r| r.starts_with("bot_") || r.starts_with("fbox_") || r.starts_with("bbox_"))
        {
            return Err(format!("{id} uses `{r}`"));
        }
        acc.proofs.push((p, 1));
    }
    Ok("DiamondChoice_LR and DiamondFixpoint_LR check without box or negation rules".into())
}

fn main() -> ExitCode {
    // Criteria 7 and 9 run last so that they see every proof built by the
    // others.
    let mut acc = Accepted::default();
    let mut results: Vec<(usize, &str, Checked)> = vec![
        (1, "corpus completeness", corpus(&mut acc)),
        (2, "lemma schemata", lemmas(&mut acc)),
        (3, "soundness fuzz", soundness()),
        (4, "translation preservation", translation()),
        (5, "closure oracle", closure()),
        (6, "cut reductions", cut_reductions(&mut acc)),
        (10, "diamond stretch", diamonds(&mut acc)),
    ];
    results.push((7, "relativized display", relativized_display(&acc)));
    results.push((8, "schema audit", audit()));
    results.push((9, "type uniformity", uniformity(&acc)));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({why})");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
