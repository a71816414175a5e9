//! Command-line front end. Exit codes: 0 pass, 1 failed check, 2 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::assumptions::check_assumptions;
use crate::choice::PreferenceStructure;
use crate::conditions::{check_conditions, ConditionId};
use crate::consequence::{ConsequenceRelation, Mode};
use crate::error::{Error, Result};
use crate::formula::{parse_kb, Formula};
use crate::harness::{verify_theorem, Theorem, VerifyConfig};
use crate::modeltheory::{cap_from_env, CloneStats, Frame};
use crate::semantics::{Kind, SemanticStructure};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "prefcons", version, about = "Preferential consequence over classical, FOUR and J3 semantics")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Kv,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// classical, four or j3.
    #[arg(long, default_value = "classical")]
    semantics: String,
    /// Comma-separated atoms; taken from the KB when omitted.
    #[arg(long)]
    atoms: Option<String>,
    /// Knowledge base: one formula per line, `#` comments.
    #[arg(long)]
    kb: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Relation {
    /// Preference structure file; identity structure when omitted.
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Use the discriminative relation.
    #[arg(long)]
    discriminative: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the models of the KB.
    Models {
        #[command(flatten)]
        target: Target,
    },
    /// List the consequences of the KB, canonically ordered.
    Consequences {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        relation: Relation,
    },
    /// Check conditions on the relation induced by a structure.
    Check {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        relation: Relation,
        /// Conditions such as `c0..c12,P,KLM`.
        #[arg(long, default_value = "c0..c12")]
        conditions: String,
    },
    /// Verify a representation theorem over seeded instances.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        semantics: Option<String>,
        #[arg(long)]
        atoms: Option<String>,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        /// States per valuation allowed in the structure search.
        #[arg(long, default_value_t = 2)]
        copies: usize,
        /// Fail instead of sampling when the closure exceeds the cap.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Sizes of the valuation set, fingerprint universe and definable family.
    CloneStats {
        #[arg(long)]
        semantics: Option<String>,
        #[arg(long)]
        atoms: Option<String>,
        /// Largest atom count listed when no atoms are given.
        #[arg(long, default_value_t = 2)]
        max_atoms: usize,
    },
    /// Check assumptions A1, A2 and A3.
    Assumptions {
        #[command(flatten)]
        target: Target,
    },
}

/// Parse `args` (including the program name) and run, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let kv = cli.format == Format::Kv;
    match &cli.command {
        Command::Models { target } => {
            let (structure, kb) = load_structure(target)?;
            let mut models = structure.full_set();
            for f in &kb {
                models = models.intersection(structure.model_pair(f)?.0);
            }
            if kv {
                writeln!(out, "models.count={}", models.len())?;
                for (i, v) in models.iter().enumerate() {
                    writeln!(out, "models.{i}=v{v} {}", structure.format_valuation(v))?;
                }
            } else {
                for v in models.iter() {
                    writeln!(out, "v{v}: {}", structure.format_valuation(v))?;
                }
                writeln!(out, "{} model(s)", models.len())?;
            }
            Ok(EXIT_PASS)
        }
        Command::Consequences { target, relation } => {
            let (frame, kb) = load_frame(target)?;
            let rel = induce(&frame, relation)?;
            let set = rel.consequences(&frame, frame.mod_formulas(&kb)?)?;
            let texts = frame.witnesses(set);
            if kv {
                writeln!(out, "consequences.mode={}", rel.mode())?;
                writeln!(out, "consequences.sampled={}", !frame.is_exhaustive())?;
                writeln!(out, "consequences.count={}", texts.len())?;
                for (i, t) in texts.iter().enumerate() {
                    writeln!(out, "consequences.{i}={t}")?;
                }
            } else {
                if !frame.is_exhaustive() {
                    writeln!(out, "# sampled mode: universe truncated")?;
                }
                for t in &texts {
                    writeln!(out, "{t}")?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Check { target, relation, conditions } => {
            let ids = ConditionId::parse_list(conditions)?;
            let (frame, _) = load_frame(target)?;
            let rel = induce(&frame, relation)?;
            let reports = check_conditions(&frame, &rel, &ids);
            let pass = reports.iter().all(|r| r.pass);
            let sampled = !frame.is_exhaustive();
            if kv {
                for r in &reports {
                    writeln!(out, "check.{}.pass={}", r.id, r.pass)?;
                    if let Some(w) = &r.witness {
                        writeln!(out, "check.{}.witness={}", r.id, w.describe(&frame))?;
                    }
                }
                writeln!(out, "check.sampled={sampled}")?;
                writeln!(out, "check.pass={pass}")?;
            } else {
                if sampled {
                    writeln!(out, "sampled mode: passes do not certify the conditions")?;
                }
                for r in &reports {
                    match &r.witness {
                        None => writeln!(out, "{:<4} PASS", r.id.name())?,
                        Some(w) => writeln!(out, "{:<4} FAIL  {}", r.id.name(), w.describe(&frame))?,
                    }
                }
            }
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify { theorem, semantics, atoms, seeds, first_seed, copies, exhaustive } => {
            let theorem: Theorem = theorem.parse()?;
            let mut config = VerifyConfig::new(theorem);
            if let Some(s) = semantics {
                config.kind = s.parse()?;
            }
            if let Some(a) = atoms {
                config.atoms = split_atoms(a);
            }
            config.seeds = *seeds;
            config.first_seed = *first_seed;
            config.copies = *copies;
            config.exhaustive = *exhaustive;
            let report = verify_theorem(&config)?;
            if kv {
                write!(out, "{}", report.to_kv())?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.pass() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::CloneStats { semantics, atoms, max_atoms } => {
            let kinds = match semantics {
                Some(s) => vec![s.parse::<Kind>()?],
                None => Kind::ALL.to_vec(),
            };
            let atom_lists: Vec<Vec<String>> = match atoms {
                Some(a) => vec![split_atoms(a)],
                None => (1..=*max_atoms).map(default_atoms).collect(),
            };
            for kind in kinds {
                for atoms in &atom_lists {
                    let frame = Frame::build(SemanticStructure::new(kind, atoms)?, &[], cap_from_env())?;
                    let stats = CloneStats::of(&frame);
                    if kv {
                        let p = format!("clone.{kind}.{}", atoms.len());
                        writeln!(out, "{p}.valuations={}", stats.valuations)?;
                        writeln!(out, "{p}.universe={}", stats.universe)?;
                        writeln!(out, "{p}.definable={}", stats.definable)?;
                        writeln!(out, "{p}.definable_coherent={}", stats.definable_coherent)?;
                        writeln!(out, "{p}.union_closed={}", stats.union_closed)?;
                        writeln!(out, "{p}.powerset={}", stats.powerset)?;
                        writeln!(out, "{p}.exhaustive={}", stats.exhaustive)?;
                    } else {
                        writeln!(out, "{stats}")?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Assumptions { target } => {
            let (frame, _) = load_frame(target)?;
            let r = check_assumptions(&frame);
            let a2 = r.a2.as_ref().map(|w| {
                format!("Gamma={} alpha={}", frame.show_set(frame.family().get(w.gamma)), frame.describe(w.alpha))
            });
            let a3 = r.a3.as_ref().map(|w| {
                format!(
                    "law={} alpha={} beta={} v={}",
                    w.law,
                    frame.describe(w.alpha),
                    frame.describe(w.beta),
                    frame.structure().format_valuation(w.valuation)
                )
            });
            if kv {
                writeln!(out, "assumptions.a1={}", r.a1)?;
                writeln!(out, "assumptions.a2={}", r.a2_holds())?;
                if let Some(w) = &a2 {
                    writeln!(out, "assumptions.a2.witness={w}")?;
                }
                writeln!(out, "assumptions.a3={}", r.a3_holds())?;
                if let Some(w) = &a3 {
                    writeln!(out, "assumptions.a3.witness={w}")?;
                }
                writeln!(out, "assumptions.sampled={}", r.sampled)?;
            } else {
                writeln!(out, "{r}")?;
                if let Some(w) = a2 {
                    writeln!(out, "A2 counterexample: {w}")?;
                }
                if let Some(w) = a3 {
                    writeln!(out, "A3 counterexample: {w}")?;
                }
            }
            Ok(EXIT_PASS)
        }
    }
}

fn split_atoms(list: &str) -> Vec<String> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn default_atoms(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn read_kb(path: &Path) -> Result<Vec<Formula>> {
    let text = std::fs::read_to_string(path)?;
    parse_kb(&text).map_err(|(line, source)| Error::KbSyntax { line, source })
}

fn load_structure(target: &Target) -> Result<(SemanticStructure, Vec<Formula>)> {
    let kind: Kind = target.semantics.parse()?;
    let kb = match &target.kb {
        Some(p) => read_kb(p)?,
        None => Vec::new(),
    };
    let atoms = match &target.atoms {
        Some(a) => split_atoms(a),
        None => kb.iter().flat_map(|f| f.atoms()).collect::<std::collections::BTreeSet<_>>().into_iter().collect(),
    };
    if atoms.is_empty() {
        return Err(Error::NoAtoms);
    }
    for f in &kb {
        if let Some(a) = f.atoms().into_iter().find(|a| !atoms.contains(a)) {
            return Err(Error::UnknownAtom(a));
        }
    }
    Ok((SemanticStructure::new(kind, &atoms)?, kb))
}

fn load_frame(target: &Target) -> Result<(Frame, Vec<Formula>)> {
    let (structure, kb) = load_structure(target)?;
    Ok((Frame::build(structure, &kb, cap_from_env())?, kb))
}

fn induce(frame: &Frame, relation: &Relation) -> Result<ConsequenceRelation> {
    let pref = match &relation.structure {
        Some(p) => PreferenceStructure::parse(&std::fs::read_to_string(p)?, frame.structure())?,
        None => PreferenceStructure::identity(frame.width()),
    };
    let mode = if relation.discriminative { Mode::Discriminative } else { Mode::Plain };
    Ok(ConsequenceRelation::induce(frame, &pref.choice_function(frame), mode))
}
