//! `dyncalc`: batch front end for the proof kernel, corpus, semantics and
//! cut reduction. Each subcommand parses its inputs, calls one library entry
//! point and prints the result.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dyncalc::completeness_corpus::{derive, lemma, resolve_generator, AxiomId, LemmaId, Params};
use dyncalc::cut_reduction::reduce;
use dyncalc::pdl_translate::translate_formula;
use dyncalc::proof_kernel::{check, display, load_script, save_script, to_bussproofs, Proof};
use dyncalc::rule_catalog::{audit_schema, catalog, mutant_schemas, simulate_derived};
use dyncalc::semantics::{fuzz_schemas, fuzz_soundness, holds, FuzzConfig, KripkeModel, Verdict};
use dyncalc::syntax::{Latex, Node, NodeKind, ParseOptions, SeqPath, Signature};

/// Atoms assumed when an input carries no header and `--atoms` is absent.
const DEFAULT_ATOMS: &str = "atoms: props = p,q,r,s ; acts = a,b,c,d";

#[derive(Parser)]
#[command(
    name = "dyncalc",
    version,
    about = "Multi-type display calculus for dynamic logic"
)]
struct Cli {
    /// Atom declarations for inline inputs, e.g. `props = p,q ; acts = a,b`.
    #[arg(long, global = true)]
    atoms: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pdl,
    Opterm,
    Structure,
    Sequent,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and echo in normal form.
    Parse {
        /// Text, or a file whose first line may be an atoms header.
        input: String,
        #[arg(long, value_enum, default_value_t = Kind::Sequent)]
        kind: Kind,
        /// Render as LaTeX instead of ASCII.
        #[arg(long)]
        latex: bool,
        /// Accept index-free connectives.
        #[arg(long)]
        infer: bool,
        /// Accept backward PDL modalities.
        #[arg(long)]
        adjoint: bool,
    },
    /// Translate a PDL formula into the multi-type language.
    Translate {
        input: String,
        #[arg(long)]
        adjoint: bool,
    },
    /// Check a proof script.
    Check {
        script: PathBuf,
        #[arg(long, env = "DYNCALC_OMEGA_BOUND", default_value_t = 6)]
        omega_bound: usize,
    },
    /// Build a corpus derivation: an axiom id or a lemma id.
    Derive {
        id: String,
        /// Lemma instance.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, env = "DYNCALC_OMEGA_BOUND", default_value_t = 6)]
        omega_bound: usize,
        /// Write the script here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit a bussproofs rendering (to `<out>.tex` when `--out` is given).
        #[arg(long)]
        latex: bool,
    },
    /// Evaluate a sequent on a model file.
    ModelEval { model: PathBuf, sequent: String },
    /// Randomized soundness check of the rule schemas.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest number of worlds.
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Restrict to one schema id or family.
        #[arg(long)]
        schema: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Fuzz the deliberately unsound schemas instead.
        #[arg(long)]
        mutant: bool,
    },
    /// Display the substructure at a path such as `ant.0.1`.
    Display {
        sequent: String,
        path: String,
        #[arg(long, default_value_t = dyncalc::proof_kernel::DISPLAY_BUDGET)]
        budget: usize,
    },
    /// Reduce principal cuts in a proof script.
    Cutreduce {
        script: PathBuf,
        #[arg(long, default_value_t = 100)]
        fuel: usize,
        /// Write the reduced script here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rule catalogue operations.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
    /// Check every schema against the admissibility conditions.
    Audit,
}

#[derive(Subcommand)]
enum RulesAction {
    /// Print every schema, one per line.
    Dump,
}

/// Inline text or file contents, with the atoms header split off.
fn source(input: &str, atoms: Option<&str>) -> Result<(Signature, String)> {
    let text = if Path::new(input).is_file() {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else {
        input.to_string()
    };
    let mut body = text.trim_start();
    let mut header = None;
    if body.starts_with("atoms:") {
        let (first, rest) = body.split_once('\n').unwrap_or((body, ""));
        header = Some(first.to_string());
        body = rest;
    }
    let header = header
        .or_else(|| atoms.map(|a| format!("atoms: {a}")))
        .unwrap_or_else(|| DEFAULT_ATOMS.into());
    Ok((Signature::parse_header(&header)?, body.trim().to_string()))
}

fn load(path: &Path) -> Result<Proof> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(load_script(&text, &resolve_generator)?)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    let atoms = cli.atoms.as_deref();
    match cli.command {
        Command::Parse {
            input,
            kind,
            latex,
            infer,
            adjoint,
        } => {
            let (sig, text) = source(&input, atoms)?;
            let kind = match kind {
                Kind::Pdl => NodeKind::Pdl,
                Kind::Opterm => NodeKind::OpTerm,
                Kind::Structure => NodeKind::Structure,
                Kind::Sequent => NodeKind::Sequent,
            };
            let node = Node::parse(
                kind,
                &text,
                &sig,
                ParseOptions {
                    infer_indices: infer,
                    adjoint,
                },
            )?;
            match (&node, latex) {
                (_, false) => writeln!(out, "{node}")?,
                (Node::Op(t), true) => writeln!(out, "{}", Latex(t))?,
                (Node::Structure(s), true) => writeln!(out, "{}", Latex(s))?,
                (Node::Sequent(s), true) => writeln!(out, "{}", Latex(s))?,
                (Node::Pdl(_), true) => bail!("LaTeX output covers the multi-type language only"),
            }
        }
        Command::Translate { input, adjoint } => {
            let (sig, text) = source(&input, atoms)?;
            let a = dyncalc::syntax::parse_pdl(
                &text,
                &sig,
                ParseOptions {
                    infer_indices: false,
                    adjoint,
                },
            )?;
            writeln!(out, "{}", translate_formula(&a))?;
        }
        Command::Check {
            script,
            omega_bound,
        } => {
            let verdict = check(&load(&script)?, omega_bound);
            writeln!(out, "{verdict}")?;
            return Ok(verdict.ok());
        }
        Command::Derive {
            id,
            n,
            omega_bound,
            out: file,
            latex,
        } => {
            let params = Params {
                omega_bound,
                ..Params::default()
            };
            let proof = if let Ok(axiom) = id.parse::<AxiomId>() {
                derive(axiom, &params)?
            } else if let Ok(l) = id.parse::<LemmaId>() {
                lemma(l, n, &params)?
            } else {
                bail!("unknown axiom or lemma `{id}`");
            };
            let script = save_script(&proof);
            match file {
                Some(path) => {
                    fs::write(&path, &script)
                        .with_context(|| format!("writing {}", path.display()))?;
                    if latex {
                        let mut tex = path.into_os_string();
                        tex.push(".tex");
                        fs::write(&tex, to_bussproofs(&proof))?;
                    }
                    writeln!(out, "{}", proof.conclusion())?;
                }
                None if latex => write!(out, "{}", to_bussproofs(&proof))?,
                None => write!(out, "{script}")?,
            }
        }
        Command::ModelEval { model, sequent } => {
            let text = fs::read_to_string(&model)
                .with_context(|| format!("reading {}", model.display()))?;
            let m = KripkeModel::from_text(&text)?;
            let sig = match atoms {
                Some(a) => Signature::parse_header(&format!("atoms: {a}"))?,
                None => m.signature(),
            };
            let s = dyncalc::syntax::parse_sequent(&sequent, &sig)?;
            match holds(&m, &s) {
                Verdict::Holds(b) => writeln!(out, "{b}")?,
                Verdict::Uninterpretable => writeln!(out, "uninterpretable")?,
            }
        }
        Command::Fuzz {
            seed,
            trials,
            size,
            schema,
            depth,
            mutant,
        } => {
            let cfg = FuzzConfig {
                seed,
                max_worlds: size,
                trials,
                filter: schema,
                max_depth: depth,
            };
            let report = if mutant {
                let mutants = mutant_schemas();
                fuzz_schemas(&cfg, &mutants.iter().collect::<Vec<_>>())
            } else {
                fuzz_soundness(&cfg)
            };
            if report.schemas == 0 {
                bail!("no schema matches the filter");
            }
            for c in &report.counterexamples {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "{report}")?;
            return Ok(report.counterexamples.is_empty());
        }
        Command::Display {
            sequent,
            path,
            budget,
        } => {
            let (sig, text) = source(&sequent, atoms)?;
            let s = dyncalc::syntax::parse_sequent(&text, &sig)?;
            let at = SeqPath::parse(&path, &s)
                .ok_or_else(|| anyhow!("path `{path}` does not resolve in `{s}`"))?;
            let chain = display(&s, &at, budget)?;
            writeln!(out, "{}", chain.start)?;
            for step in &chain.steps {
                writeln!(out, "  {:<24} {}", step.rule, step.to)?;
            }
            writeln!(out, "{} steps", chain.steps.len())?;
        }
        Command::Cutreduce {
            script,
            fuel,
            out: file,
        } => {
            let proof = load(&script)?;
            let (reduced, report) = reduce(&proof, fuel);
            for (node, why) in &report.unsupported {
                writeln!(out, "unsupported at {node:?}: {why}")?;
            }
            writeln!(out, "{report}")?;
            if let Some(path) = file {
                fs::write(&path, save_script(&reduced))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(report.rechecked);
        }
        Command::Rules {
            action: RulesAction::Dump,
        } => {
            for r in catalog().iter() {
                writeln!(out, "{r}")?;
            }
        }
        Command::Audit => {
            let mut failed = 0;
            for r in catalog().iter() {
                let rep = audit_schema(r);
                failed += usize::from(!rep.passed());
                writeln!(out, "{rep}")?;
                if r.is_derived() {
                    match simulate_derived(r) {
                        Ok(used) => writeln!(out, "  simulated by {}", used.join(", "))?,
                        Err(e) => {
                            failed += 1;
                            writeln!(out, "  simulation FAIL ({e})")?;
                        }
                    }
                }
            }
            writeln!(out, "{} schemas, {failed} failures", catalog().len())?;
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
