//! Two-directional verification of the representation theorems.
//!
//! Forward runs induce a relation from a generated choice function and check
//! the characterising conditions. Backward runs reconstruct a choice function
//! from a relation and check that the conditions hold exactly when the
//! reconstruction is valid and re-induces the relation.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use super::gen::{density_for, gen_choice_function, gen_preference_structure, rng, ChoiceMode, GenFlags};
use super::search::{search_any_relation, search_representation_where, SearchOutcome, MAX_STATES};
use crate::assumptions::check_assumptions;
use crate::choice::{mu_sharp, ChoiceFunction};
use crate::conditions::{
    check_beta_laws, check_condition, check_layer_laws, check_reconstruction_laws, check_system_p, Analysis,
    ConditionId,
};
use crate::consequence::{ConsequenceRelation, Mode};
use crate::error::{Error, Result};
use crate::modeltheory::Frame;
use crate::semantics::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// DP (LM) preferential relations and `(|~0)`–`(|~4)`.
    DpPreferential,
    /// Preferential relations and `(|~5)`.
    Preferential,
    /// DP preferential-discriminative relations and `(|~6)`–`(|~11)`.
    DpDiscriminative,
    /// Preferential-discriminative relations and `(|~12)`.
    Discriminative,
    /// Coherence versus representability by a transitive irreflexive structure.
    StructureSearch,
    /// Smooth strict orders satisfy system P on single premises.
    PBridge,
    /// Structural laws of the layer, `β` and reconstruction constructions.
    Lemmas,
}

use ConditionId::*;

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::DpPreferential,
        Theorem::Preferential,
        Theorem::DpDiscriminative,
        Theorem::Discriminative,
        Theorem::StructureSearch,
        Theorem::PBridge,
        Theorem::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::DpPreferential => "repClaSyn",
            Theorem::Preferential => "repGen",
            Theorem::DpDiscriminative => "repArgSyn",
            Theorem::Discriminative => "repGenArg",
            Theorem::StructureSearch => "karl-search",
            Theorem::PBridge => "P-bridge",
            Theorem::Lemmas => "lemmas",
        }
    }

    /// Semantics and atoms used when none are given.
    pub fn default_target(self) -> (Kind, &'static [&'static str]) {
        match self {
            Theorem::DpPreferential | Theorem::PBridge => (Kind::Classical, &["p", "q"]),
            Theorem::Preferential | Theorem::Lemmas => (Kind::Four, &["p"]),
            Theorem::DpDiscriminative | Theorem::Discriminative => (Kind::J3, &["p"]),
            Theorem::StructureSearch => (Kind::Classical, &["p"]),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Roundtrip,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
            Direction::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    pub kind: Kind,
    pub atoms: Vec<String>,
    pub seeds: u64,
    pub first_seed: u64,
    /// States per valuation allowed in the structure search.
    pub copies: usize,
    pub max_states: usize,
    /// Refuse to run on a truncated frame.
    pub exhaustive: bool,
}

impl VerifyConfig {
    pub fn new(theorem: Theorem) -> Self {
        let (kind, atoms) = theorem.default_target();
        VerifyConfig {
            theorem,
            kind,
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            seeds: 100,
            first_seed: 0,
            copies: 2,
            max_states: MAX_STATES,
            exhaustive: true,
        }
    }

    pub fn on(mut self, kind: Kind, atoms: &[&str]) -> Self {
        self.kind = kind;
        self.atoms = atoms.iter().map(|a| a.to_string()).collect();
        self
    }

    pub fn seeds(mut self, n: u64) -> Self {
        self.seeds = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub direction: Direction,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    cases: usize,
    forward: usize,
    backward: usize,
    unmet: usize,
    bound: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn fail(&mut self, seed: u64, direction: Direction, detail: impl Into<String>) {
        self.failures.push(Failure { seed, direction, detail: detail.into() });
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.forward += other.forward;
        self.backward += other.backward;
        self.unmet += other.unmet;
        self.bound += other.bound;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub kind: Kind,
    pub atoms: Vec<String>,
    pub direction: Direction,
    pub first_seed: u64,
    pub seeds: u64,
    pub cases: usize,
    pub forward: usize,
    pub backward: usize,
    pub hypothesis_unmet: usize,
    /// Coherent choice functions with no representation inside the search bound.
    pub bound_exhausted: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub sampled: bool,
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// Line-oriented `key=value` report; deterministic for a fixed config.
    pub fn to_kv(&self) -> String {
        let p = "verify";
        let mut lines = vec![
            format!("{p}.theorem={}", self.theorem),
            format!("{p}.semantics={}", self.kind),
            format!("{p}.atoms={}", self.atoms.join(",")),
            format!("{p}.direction={}", self.direction.name()),
            format!("{p}.first_seed={}", self.first_seed),
            format!("{p}.seeds={}", self.seeds),
            format!("{p}.cases={}", self.cases),
            format!("{p}.forward={}", self.forward),
            format!("{p}.backward={}", self.backward),
            format!("{p}.hypothesis_unmet={}", self.hypothesis_unmet),
            format!("{p}.bound_exhausted={}", self.bound_exhausted),
            format!("{p}.sampled={}", self.sampled),
            format!("{p}.failures={}", self.failures.len()),
        ];
        for (i, n) in self.notes.iter().enumerate() {
            lines.push(format!("{p}.note.{i}={n}"));
        }
        for (i, f) in self.failures.iter().enumerate() {
            lines.push(format!("{p}.failure.{i}=seed:{} {}: {}", f.seed, f.direction.name(), f.detail));
        }
        lines.push(format!("{p}.pass={}", self.pass()));
        lines.join("\n") + "\n"
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} on {} over {{{}}}: {} ({} cases, {} forward, {} backward, {} hypothesis unmet, {} beyond search bound) in {:.2?}",
            self.theorem,
            self.kind,
            self.atoms.join(", "),
            if self.pass() { "PASS" } else { "FAIL" },
            self.cases,
            self.forward,
            self.backward,
            self.hypothesis_unmet,
            self.bound_exhausted,
            self.runtime
        )?;
        if self.sampled {
            writeln!(f, "  sampled frame: passes do not certify the theorem")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  seed {} {}: {}", x.seed, x.direction.name(), x.detail)?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    frame: &'a Frame,
    config: &'a VerifyConfig,
    a2: bool,
    a3: bool,
    union_closed: bool,
}

impl Ctx<'_> {
    fn width(&self) -> usize {
        self.frame.width()
    }

    /// First failing condition, described, after re-checking its witness.
    fn first_failure(&self, rel: &ConsequenceRelation, an: &Analysis, ids: &[ConditionId]) -> Option<String> {
        ids.iter().find_map(|&id| {
            let r = check_condition(self.frame, rel, an, id);
            let w = r.witness.as_ref()?;
            let genuine = r.recheck(self.frame, rel, an);
            Some(format!(
                "{id} fails{}: {}",
                if genuine { "" } else { " (witness did not recheck)" },
                w.describe(self.frame)
            ))
        })
    }

    fn holds(&self, rel: &ConsequenceRelation, an: &Analysis, ids: &[ConditionId]) -> bool {
        ids.iter().all(|&id| check_condition(self.frame, rel, an, id).pass)
    }

    fn reinduces(&self, mu: &ChoiceFunction, mode: Mode, rel: &ConsequenceRelation) -> bool {
        ConsequenceRelation::induce(self.frame, mu, mode).table() == rel.table()
    }

    fn random_structure_choice(&self, seed: u64, strict: bool) -> (ChoiceFunction, bool) {
        let mut r = rng(seed ^ 0x5bd1_e995);
        let k = r.random_range(1..=2);
        let flags = if strict { GenFlags::STRICT_ORDER } else { GenFlags::default() };
        let pref = gen_preference_structure(seed, self.width(), k, density_for(seed), flags);
        let smooth = pref.is_smooth(self.frame.family().sets());
        (pref.choice_function(self.frame), smooth)
    }
}

const CLA: [ConditionId; 4] = [C0, C1, C2, C3];

fn case_dp_preferential(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, ..Default::default() };
    let pref = gen_preference_structure(seed, ctx.width(), 1, density_for(seed), GenFlags::STRICT_ORDER);
    let mu = pref.choice_function(frame);
    if !mu.is_dp(frame) {
        t.unmet += 1;
    } else {
        t.forward += 1;
        let rel = ConsequenceRelation::induce(frame, &mu, Mode::Plain);
        let an = Analysis::new(frame, &rel);
        if let Some(msg) = ctx.first_failure(&rel, &an, &CLA) {
            t.fail(seed, Direction::Forward, msg);
        }
        if ctx.union_closed && pref.is_smooth(frame.family().sets()) {
            if !mu.is_locally_monotonic() {
                t.fail(seed, Direction::Forward, "smooth strict order gave a choice function that is not LM");
            }
            if let Some(msg) = ctx.first_failure(&rel, &an, &[C4]) {
                t.fail(seed, Direction::Forward, msg);
            }
        }
        backward_dp_preferential(ctx, seed, &rel, &an, &mut t);
    }
    let other = gen_choice_function(seed, frame, ChoiceMode::Arbitrary);
    let rel = ConsequenceRelation::induce(frame, &other, Mode::Plain);
    backward_dp_preferential(ctx, seed, &rel, &Analysis::new(frame, &rel), &mut t);
    t
}

fn backward_dp_preferential(ctx: &Ctx, seed: u64, rel: &ConsequenceRelation, an: &Analysis, t: &mut Tally) {
    t.backward += 1;
    let frame = ctx.frame;
    let conds = ctx.holds(rel, an, &CLA);
    let cand = ChoiceFunction::new(frame, an.mt.clone());
    let valid = cand.is_choice() && cand.is_coherent() && cand.is_dp(frame) && ctx.reinduces(&cand, Mode::Plain, rel);
    if conds != valid {
        t.fail(
            seed,
            Direction::Backward,
            format!("c0..c3 hold={conds} but reconstruction M(C(Gamma)) valid={valid}\n{}", cand.dump()),
        );
    } else if valid {
        let lm_conds = ctx.holds(rel, an, &[C4]);
        if lm_conds != cand.is_locally_monotonic() {
            t.fail(seed, Direction::Backward, format!("c4 holds={lm_conds} but reconstruction LM={}", !lm_conds));
        }
    }
}

fn case_preferential(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, forward: 1, ..Default::default() };
    let (mu, _) = ctx.random_structure_choice(seed, false);
    if !mu.is_coherent() {
        t.fail(seed, Direction::Forward, "choice function of a structure is not coherent");
    }
    let rel = ConsequenceRelation::induce(frame, &mu, Mode::Plain);
    let an = Analysis::new(frame, &rel);
    if let Some(msg) = ctx.first_failure(&rel, &an, &[C5]) {
        t.fail(seed, Direction::Forward, msg);
    }
    backward_preferential(ctx, seed, &rel, &an, &mut t);
    let other = gen_choice_function(seed, frame, ChoiceMode::Arbitrary);
    let rel = ConsequenceRelation::induce(frame, &other, Mode::Plain);
    backward_preferential(ctx, seed, &rel, &Analysis::new(frame, &rel), &mut t);
    t
}

fn backward_preferential(ctx: &Ctx, seed: u64, rel: &ConsequenceRelation, an: &Analysis, t: &mut Tally) {
    t.backward += 1;
    let sharp = mu_sharp(ctx.frame, &an.mt);
    let conds = ctx.holds(rel, an, &[C5]);
    let valid = sharp.is_choice() && sharp.is_coherent() && ctx.reinduces(&sharp, Mode::Plain, rel);
    if conds != valid {
        t.fail(seed, Direction::Backward, format!("c5 holds={conds} but mu_sharp re-induces={valid}"));
    }
}

fn dp_disc_conditions(a2: bool) -> Vec<ConditionId> {
    let mut ids = vec![C0, C6, C7, C8, C9];
    if !a2 {
        ids.push(C11);
    }
    ids
}

fn case_dp_discriminative(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, ..Default::default() };
    if !ctx.a3 {
        t.unmet += 1;
        return t;
    }
    let ids = dp_disc_conditions(ctx.a2);
    let (mu, _) = ctx.random_structure_choice(seed, seed.is_multiple_of(2));
    if !mu.is_dp(frame) || !(ctx.a2 || mu.is_cp(frame)) {
        t.unmet += 1;
    } else {
        t.forward += 1;
        let rel = ConsequenceRelation::induce(frame, &mu, Mode::Discriminative);
        let an = Analysis::new(frame, &rel);
        if let Some(msg) = ctx.first_failure(&rel, &an, &ids) {
            t.fail(seed, Direction::Forward, msg);
        }
        if mu.is_locally_monotonic() {
            if let Some(msg) = ctx.first_failure(&rel, &an, &[C10]) {
                t.fail(seed, Direction::Forward, msg);
            }
        }
        if an.y != mu.table() {
            t.fail(seed, Direction::Roundtrip, "M(Gamma, C(Gamma), H(Gamma)) differs from the choice function");
        }
        backward_dp_discriminative(ctx, seed, &rel, &an, &ids, &mut t);
    }
    let other = gen_choice_function(seed, frame, ChoiceMode::Arbitrary);
    let rel = ConsequenceRelation::induce(frame, &other, Mode::Discriminative);
    backward_dp_discriminative(ctx, seed, &rel, &Analysis::new(frame, &rel), &ids, &mut t);
    t
}

fn backward_dp_discriminative(
    ctx: &Ctx,
    seed: u64,
    rel: &ConsequenceRelation,
    an: &Analysis,
    ids: &[ConditionId],
    t: &mut Tally,
) {
    t.backward += 1;
    let frame = ctx.frame;
    let conds = ctx.holds(rel, an, ids);
    let cand = ChoiceFunction::new(frame, an.y.clone());
    let valid = cand.is_choice()
        && cand.is_coherent()
        && cand.is_dp(frame)
        && (ctx.a2 || cand.is_cp(frame))
        && ctx.reinduces(&cand, Mode::Discriminative, rel);
    if conds != valid {
        t.fail(
            seed,
            Direction::Backward,
            format!("conditions hold={conds} but reconstruction M(Gamma, C, H) valid={valid}\n{}", cand.dump()),
        );
    } else if valid {
        let lm_conds = ctx.holds(rel, an, &[C10]);
        if lm_conds != cand.is_locally_monotonic() {
            t.fail(seed, Direction::Backward, format!("c10 holds={lm_conds} but reconstruction LM={}", !lm_conds));
        }
    }
}

fn disc_conditions(a2: bool) -> Vec<ConditionId> {
    let mut ids = vec![C0, C6, C7, C8, C12];
    if !a2 {
        ids.push(C11);
    }
    ids
}

fn case_discriminative(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, ..Default::default() };
    if !ctx.a3 {
        t.unmet += 1;
        return t;
    }
    let ids = disc_conditions(ctx.a2);
    let (mu, _) = ctx.random_structure_choice(seed, false);
    if !(ctx.a2 || mu.is_cp(frame)) {
        t.unmet += 1;
    } else {
        t.forward += 1;
        let rel = ConsequenceRelation::induce(frame, &mu, Mode::Discriminative);
        let an = Analysis::new(frame, &rel);
        if let Some(msg) = ctx.first_failure(&rel, &an, &ids) {
            t.fail(seed, Direction::Forward, msg);
        }
        backward_discriminative(ctx, seed, &rel, &an, &ids, &mut t);
    }
    let other = gen_choice_function(seed, frame, ChoiceMode::Arbitrary);
    let rel = ConsequenceRelation::induce(frame, &other, Mode::Discriminative);
    backward_discriminative(ctx, seed, &rel, &Analysis::new(frame, &rel), &ids, &mut t);
    t
}

fn backward_discriminative(
    ctx: &Ctx,
    seed: u64,
    rel: &ConsequenceRelation,
    an: &Analysis,
    ids: &[ConditionId],
    t: &mut Tally,
) {
    t.backward += 1;
    let sharp = mu_sharp(ctx.frame, &an.y);
    let conds = ctx.holds(rel, an, ids);
    let valid =
        sharp.is_coherent() && (ctx.a2 || sharp.is_cp(ctx.frame)) && ctx.reinduces(&sharp, Mode::Discriminative, rel);
    if conds != valid {
        t.fail(
            seed,
            Direction::Backward,
            format!("conditions hold={conds} but mu_sharp of M(Gamma, C, H) valid={valid}"),
        );
    }
}

fn case_structure_search(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let cfg = ctx.config;
    let mut t = Tally { cases: 1, ..Default::default() };
    let mu = if seed.is_multiple_of(2) {
        let k = if ctx.width() * cfg.copies <= cfg.max_states { cfg.copies } else { 1 };
        let k = rng(seed).random_range(1..=k.max(1));
        gen_preference_structure(seed, ctx.width(), k, density_for(seed), GenFlags::STRICT_ORDER).choice_function(frame)
    } else {
        gen_choice_function(seed, frame, ChoiceMode::Arbitrary)
    };
    let coherent = mu.is_coherent();
    if coherent {
        t.forward += 1;
    }
    let mut outcome = search_representation_where(frame, &mu, cfg.copies, cfg.max_states, |_| true);
    if !outcome.is_found() {
        outcome = search_any_relation(frame, &mu, cfg.copies, cfg.max_states);
    }
    check_found(ctx, seed, &mu, &outcome, coherent, false, &mut t);
    if ctx.union_closed && coherent && mu.is_locally_monotonic() {
        let sets = frame.family().sets();
        let smooth = search_representation_where(frame, &mu, cfg.copies, cfg.max_states, |r| r.is_smooth(sets));
        check_found(ctx, seed, &mu, &smooth, true, true, &mut t);
    }
    t
}

fn check_found(
    ctx: &Ctx,
    seed: u64,
    mu: &ChoiceFunction,
    outcome: &SearchOutcome,
    expected: bool,
    smooth: bool,
    t: &mut Tally,
) {
    match outcome {
        SearchOutcome::Found(r) => {
            t.backward += 1;
            let represents = r.choice_function(ctx.frame).table() == mu.table();
            if !represents
                || (smooth && !(r.is_transitive() && r.is_irreflexive() && r.is_smooth(ctx.frame.family().sets())))
            {
                t.fail(
                    seed,
                    Direction::Backward,
                    "search returned a structure that does not represent the choice function",
                );
            } else if !mu.is_coherent() || (smooth && !mu.is_locally_monotonic()) {
                t.fail(
                    seed,
                    Direction::Backward,
                    format!("represented choice function lacks coherence or LM\n{}", mu.dump()),
                );
            }
        }
        SearchOutcome::NoneWithinBound => {
            if expected {
                t.bound += 1;
            }
        }
    }
}

fn case_p_bridge(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, ..Default::default() };
    let pref = gen_preference_structure(seed, ctx.width(), 1, density_for(seed), GenFlags::STRICT_ORDER);
    let singletons: Vec<_> = frame.universe().entries().iter().map(|fp| fp.pos).collect();
    if !pref.is_smooth(&singletons) {
        t.unmet += 1;
        return t;
    }
    t.forward += 1;
    let rel = ConsequenceRelation::induce(frame, &pref.choice_function(frame), Mode::Plain);
    let report = check_system_p(frame, &rel);
    if let Some(w) = &report.witness {
        let an = Analysis::new(frame, &rel);
        let genuine = report.recheck(frame, &rel, &an);
        t.fail(seed, Direction::Forward, format!("system P fails (recheck={genuine}): {}", w.describe(frame)));
    }
    t
}

fn case_lemmas(ctx: &Ctx, seed: u64) -> Tally {
    let frame = ctx.frame;
    let mut t = Tally { cases: 1, ..Default::default() };
    let mode = if seed.is_multiple_of(2) { ChoiceMode::CoherentViaStructure } else { ChoiceMode::Arbitrary };
    let mu = gen_choice_function(seed, frame, mode);
    for m in [Mode::Plain, Mode::Discriminative] {
        let rel = ConsequenceRelation::induce(frame, &mu, m);
        for k in 0..frame.family().len() {
            if let Err(e) = check_layer_laws(frame, &rel, k) {
                t.fail(seed, Direction::Forward, format!("{m}: {e}"));
            }
        }
    }
    t.forward += 1;
    let rel = ConsequenceRelation::induce(frame, &mu, Mode::Discriminative);
    let an = Analysis::new(frame, &rel);
    if ctx.a3 && ctx.holds(&rel, &an, &[C6, C7, C8]) {
        t.forward += 1;
        for k in 0..frame.family().len() {
            if let Err(e) = check_beta_laws(frame, &rel, &an, k) {
                t.fail(seed, Direction::Forward, e.to_string());
            }
        }
    } else {
        t.unmet += 1;
    }
    if ctx.a3 && mu.is_dp(frame) {
        t.forward += 1;
        if let Some(msg) = ctx.first_failure(&rel, &an, &[C6, C7, C8]) {
            t.fail(seed, Direction::Forward, msg);
        }
        let cp = mu.is_cp(frame);
        for k in 0..frame.family().len() {
            if let Err(e) = check_reconstruction_laws(frame, &mu, &rel, &an, k, ctx.a2, cp) {
                t.fail(seed, Direction::Forward, e.to_string());
            }
        }
    } else {
        t.unmet += 1;
    }
    t
}

/// Build the frame for `config` and run it.
pub fn verify_theorem(config: &VerifyConfig) -> Result<VerificationReport> {
    let frame = if config.exhaustive {
        Frame::for_atoms(config.kind, &config.atoms)?
    } else {
        let s = crate::semantics::SemanticStructure::new(config.kind, &config.atoms)?;
        Frame::build(s, &[], crate::modeltheory::cap_from_env())?
    };
    verify_theorem_on(&frame, config)
}

/// Run the seeds of `config` on a prepared frame.
pub fn verify_theorem_on(frame: &Frame, config: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    if config.theorem == Theorem::PBridge && frame.kind() != Kind::Classical {
        return Err(Error::Config("P-bridge is defined for classical semantics only".into()));
    }
    let assumptions = check_assumptions(frame);
    let ctx = Ctx {
        frame,
        config,
        a2: assumptions.a2_holds(),
        a3: assumptions.a3_holds(),
        union_closed: frame.family().is_union_closed(),
    };
    let case: fn(&Ctx, u64) -> Tally = match config.theorem {
        Theorem::DpPreferential => case_dp_preferential,
        Theorem::Preferential => case_preferential,
        Theorem::DpDiscriminative => case_dp_discriminative,
        Theorem::Discriminative => case_discriminative,
        Theorem::StructureSearch => case_structure_search,
        Theorem::PBridge => case_p_bridge,
        Theorem::Lemmas => case_lemmas,
    };
    let seeds: Vec<u64> = (config.first_seed..config.first_seed + config.seeds).collect();
    let tallies: Vec<Tally> = seeds.par_iter().map(|&s| case(&ctx, s)).collect();
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let mut notes = Vec::new();
    if matches!(config.theorem, Theorem::DpDiscriminative | Theorem::Discriminative) {
        notes.push(format!("A2 {}", if ctx.a2 { "holds" } else { "fails; CP variant checked" }));
    }
    if !ctx.union_closed && matches!(config.theorem, Theorem::DpPreferential | Theorem::StructureSearch) {
        notes.push("D is not closed under union; smooth variant skipped".into());
    }
    let direction = match config.theorem {
        Theorem::PBridge | Theorem::Lemmas => Direction::Forward,
        _ => Direction::Roundtrip,
    };
    Ok(VerificationReport {
        theorem: config.theorem,
        kind: frame.kind(),
        atoms: frame.structure().atoms().to_vec(),
        direction,
        first_seed: config.first_seed,
        seeds: config.seeds,
        cases: total.cases,
        forward: total.forward,
        backward: total.backward,
        hypothesis_unmet: total.unmet,
        bound_exhausted: total.bound,
        failures: total.failures,
        notes,
        sampled: !frame.is_exhaustive(),
        runtime: start.elapsed(),
    })
}
