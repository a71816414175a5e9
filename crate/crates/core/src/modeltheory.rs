//! Model sets, theories, the definable family `D`, coherent sets `C`, and
//! the finite universe of formula classes.
//!
//! Formulas are identified by their *fingerprint* `(M(α), M(¬α))`. Every
//! operation that quantifies over formulas quantifies over a
//! [`FingerprintUniverse`] instead: a closed set of fingerprints, each with a
//! witness formula that is canonical-minimal among the formulas discovered
//! for it.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formula::{canonical_text_cmp, Formula};
use crate::semantics::{Kind, SemanticStructure};
pub use crate::valset::ValuationSet;

/// Default bound on the number of fingerprints a closure may produce.
pub const DEFAULT_CAP: usize = 100_000;

/// Environment override for [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "PREFCONS_CAP";

/// The cap from `PREFCONS_CAP`, or [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// The semantic identity of a formula: `(M(α), M(¬α))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub pos: ValuationSet,
    pub neg: ValuationSet,
}

impl Fingerprint {
    pub fn new(pos: ValuationSet, neg: ValuationSet) -> Self {
        Fingerprint { pos, neg }
    }

    /// Fingerprint of `¬α`.
    pub fn swap(self) -> Self {
        Fingerprint { pos: self.neg, neg: self.pos }
    }

    /// Fingerprint of `α ∨ β`, applying the disjunction rule to every valuation at once.
    pub fn or(self, other: Self) -> Self {
        Fingerprint { pos: self.pos.union(other.pos), neg: self.neg.intersection(other.neg) }
    }

    /// Fingerprint of `α ∧ β`.
    pub fn and(self, other: Self) -> Self {
        Fingerprint { pos: self.pos.intersection(other.pos), neg: self.neg.union(other.neg) }
    }
}

/// Index of a fingerprint inside a [`FingerprintUniverse`].
pub type FpId = usize;

/// A set of universe fingerprints.
pub type FingerprintSet = FixedBitSet;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Not,
    Or,
    And,
}

/// Binding strength of a formula's top connective, as used by the renderer.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Not(_) => 3,
        _ => 4,
    }
}

fn compose_text(op: Op, a: &str, pa: u8, b: &str, pb: u8) -> String {
    let wrap = |s: &str, yes: bool| if yes { format!("({s})") } else { s.to_string() };
    match op {
        Op::Not => format!("!{}", wrap(a, pa < 3)),
        Op::Or => format!("{} | {}", a, wrap(b, pb <= 1)),
        Op::And => format!("{} & {}", wrap(a, pa < 2), wrap(b, pb <= 2)),
    }
}

/// All fingerprints reachable from the atoms and constants (possibly truncated).
#[derive(Clone, Debug)]
pub struct FingerprintUniverse {
    kind: Kind,
    width: usize,
    entries: Vec<Fingerprint>,
    witnesses: Vec<Formula>,
    index: HashMap<Fingerprint, FpId>,
    complete: bool,
    /// `pos_members[v]`: fingerprints whose pos-set contains valuation `v`.
    pos_members: Vec<FixedBitSet>,
    neg_members: Vec<FixedBitSet>,
}

struct UniverseBuilder<'s> {
    structure: &'s SemanticStructure,
    fps: Vec<Fingerprint>,
    formulas: Vec<Formula>,
    texts: Vec<String>,
    index: HashMap<Fingerprint, FpId>,
}

impl<'s> UniverseBuilder<'s> {
    fn new(structure: &'s SemanticStructure) -> Self {
        UniverseBuilder { structure, fps: Vec::new(), formulas: Vec::new(), texts: Vec::new(), index: HashMap::new() }
    }

    /// Record `f`; returns true if its fingerprint is new.
    fn offer_formula(&mut self, f: Formula) -> Result<bool> {
        let (pos, neg) = self.structure.model_pair(&f)?;
        let text = f.render();
        Ok(self.offer(Fingerprint::new(pos, neg), text, || f))
    }

    fn offer(&mut self, fp: Fingerprint, text: String, build: impl FnOnce() -> Formula) -> bool {
        match self.index.get(&fp) {
            Some(&id) => {
                if canonical_text_cmp(&text, &self.texts[id]).is_lt() {
                    self.formulas[id] = build();
                    self.texts[id] = text;
                }
                false
            }
            None => {
                self.index.insert(fp, self.fps.len());
                self.fps.push(fp);
                self.formulas.push(build());
                self.texts.push(text);
                true
            }
        }
    }

    fn combine(&mut self, op: Op, a: FpId, b: FpId) -> bool {
        let fp = match op {
            Op::Not => self.fps[a].swap(),
            Op::Or => self.fps[a].or(self.fps[b]),
            Op::And => self.fps[a].and(self.fps[b]),
        };
        if let Some(&id) = self.index.get(&fp) {
            // Only pay for rendering when the candidate could be shorter.
            let bound = match op {
                Op::Not => self.texts[a].len() + 1,
                _ => self.texts[a].len() + self.texts[b].len() + 3,
            };
            if bound > self.texts[id].len() {
                return false;
            }
        }
        let (pa, pb) = (precedence(&self.formulas[a]), precedence(&self.formulas[b]));
        let text = compose_text(op, &self.texts[a], pa, &self.texts[b], pb);
        let (fa, fb) = (&self.formulas[a], &self.formulas[b]);
        let build = || match op {
            Op::Not => Formula::not(fa.clone()),
            Op::Or => Formula::or(fa.clone(), fb.clone()),
            Op::And => Formula::and(fa.clone(), fb.clone()),
        };
        let built = build();
        self.offer(fp, text, move || built)
    }

    fn seed_basics(&mut self) -> Result<()> {
        self.offer_formula(Formula::True)?;
        self.offer_formula(Formula::False)?;
        for a in self.structure.atoms().to_vec() {
            self.offer_formula(Formula::Atom(a))?;
        }
        Ok(())
    }

    /// Close under the connectives. Returns false if `cap` was hit first.
    fn close(&mut self, cap: usize) -> bool {
        let mut frontier_start = 0;
        loop {
            let known = self.fps.len();
            if frontier_start == known {
                return true;
            }
            for a in frontier_start..known {
                self.combine(Op::Not, a, a);
                for b in 0..known {
                    for op in [Op::Or, Op::And] {
                        self.combine(op, a, b);
                        if b < frontier_start {
                            self.combine(op, b, a);
                        }
                    }
                    if self.fps.len() > cap {
                        return false;
                    }
                }
            }
            frontier_start = known;
        }
    }

    fn finish(self, complete: bool) -> FingerprintUniverse {
        let width = self.structure.len();
        let mut order: Vec<FpId> = (0..self.fps.len()).collect();
        order.sort_by(|&a, &b| canonical_text_cmp(&self.texts[a], &self.texts[b]).then(self.fps[a].cmp(&self.fps[b])));
        let entries: Vec<Fingerprint> = order.iter().map(|&i| self.fps[i]).collect();
        let mut formulas: Vec<Option<Formula>> = self.formulas.into_iter().map(Some).collect();
        let witnesses: Vec<Formula> = order.iter().map(|&i| formulas[i].take().unwrap()).collect();
        FingerprintUniverse::assemble(self.structure.kind(), width, entries, witnesses, complete)
    }
}

impl FingerprintUniverse {
    fn assemble(kind: Kind, width: usize, entries: Vec<Fingerprint>, witnesses: Vec<Formula>, complete: bool) -> Self {
        let n = entries.len();
        let index = entries.iter().enumerate().map(|(i, fp)| (*fp, i)).collect();
        let mut pos_members = vec![FixedBitSet::with_capacity(n); width];
        let mut neg_members = vec![FixedBitSet::with_capacity(n); width];
        for (id, fp) in entries.iter().enumerate() {
            for v in fp.pos.iter() {
                pos_members[v].insert(id);
            }
            for v in fp.neg.iter() {
                neg_members[v].insert(id);
            }
        }
        FingerprintUniverse { kind, width, entries, witnesses, index, complete, pos_members, neg_members }
    }

    /// Fixed-point closure of `{atoms, true, false}` under `¬`, `∨`, `∧`.
    pub fn closure(structure: &SemanticStructure, cap: usize) -> Result<Self> {
        let mut b = UniverseBuilder::new(structure);
        b.seed_basics()?;
        if !b.close(cap) {
            return Err(Error::CapExceeded(b.fps.len()));
        }
        Ok(b.finish(true))
    }

    /// The closure truncated at `cap` fingerprints, always containing the
    /// basics, every formula of `seeds`, and their negations. Marked
    /// incomplete unless the closure actually finished.
    pub fn sampled(structure: &SemanticStructure, seeds: &[Formula], cap: usize) -> Result<Self> {
        let mut b = UniverseBuilder::new(structure);
        b.seed_basics()?;
        for a in structure.atoms().to_vec() {
            b.offer_formula(Formula::not(Formula::Atom(a)))?;
        }
        for f in seeds {
            b.offer_formula(f.clone())?;
            b.offer_formula(Formula::not(f.clone()))?;
        }
        let complete = b.close(cap);
        Ok(b.finish(complete))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when the universe is closed under all connectives.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, id: FpId) -> Fingerprint {
        self.entries[id]
    }

    pub fn witness(&self, id: FpId) -> &Formula {
        &self.witnesses[id]
    }

    pub fn entries(&self) -> &[Fingerprint] {
        &self.entries
    }

    pub fn id_of(&self, fp: Fingerprint) -> Option<FpId> {
        self.index.get(&fp).copied()
    }

    pub fn ids(&self) -> std::ops::Range<FpId> {
        0..self.entries.len()
    }

    pub fn empty_set(&self) -> FingerprintSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_fingerprint_set(&self) -> FingerprintSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Ids whose pos-set contains every valuation of `v`.
    fn pos_cover(&self, v: ValuationSet) -> FingerprintSet {
        let mut out = self.full_fingerprint_set();
        for i in v.iter() {
            out.intersect_with(&self.pos_members[i]);
        }
        out
    }

    fn neg_cover(&self, v: ValuationSet) -> FingerprintSet {
        let mut out = self.full_fingerprint_set();
        for i in v.iter() {
            out.intersect_with(&self.neg_members[i]);
        }
        out
    }
}

/// The family `D` of definable valuation sets, each with a witness `Γ`.
#[derive(Clone, Debug)]
pub struct DefinableFamily {
    sets: Vec<ValuationSet>,
    witnesses: Vec<Vec<FpId>>,
    index: HashMap<ValuationSet, usize>,
    complete: bool,
}

impl DefinableFamily {
    /// Closure of `{full} ∪ {pos(φ) : φ ∈ generators}` under binary intersection,
    /// stopping (incomplete) once `cap` members exist.
    pub fn generate(universe: &FingerprintUniverse, generators: impl IntoIterator<Item = FpId>, cap: usize) -> Self {
        let full = ValuationSet::full(universe.width());
        let mut sets = vec![full];
        let mut witnesses: Vec<Vec<FpId>> = vec![Vec::new()];
        let mut index: HashMap<ValuationSet, usize> = HashMap::from([(full, 0)]);
        for id in generators {
            let pos = universe.get(id).pos;
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(pos) {
                e.insert(sets.len());
                sets.push(pos);
                witnesses.push(vec![id]);
            }
        }
        let mut complete = true;
        let mut frontier_start = 1;
        'outer: while frontier_start < sets.len() {
            let known = sets.len();
            for a in frontier_start..known {
                for b in 0..known {
                    let meet = sets[a].intersection(sets[b]);
                    if index.contains_key(&meet) {
                        continue;
                    }
                    if sets.len() >= cap {
                        complete = false;
                        break 'outer;
                    }
                    let mut w = witnesses[a].clone();
                    w.extend(witnesses[b].iter().copied());
                    w.sort_unstable();
                    w.dedup();
                    index.insert(meet, sets.len());
                    sets.push(meet);
                    witnesses.push(w);
                }
            }
            frontier_start = known;
        }
        // Canonical order: by bit pattern, so the empty set (if present) is index 0.
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by_key(|&i| sets[i]);
        let sets: Vec<ValuationSet> = order.iter().map(|&i| sets[i]).collect();
        let witnesses = order.iter().map(|&i| std::mem::take(&mut witnesses[i])).collect();
        let index = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        DefinableFamily { sets, witnesses, index, complete }
    }

    /// `D` over a complete universe.
    pub fn from_universe(universe: &FingerprintUniverse, cap: usize) -> Self {
        Self::generate(universe, universe.ids(), cap)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, k: usize) -> ValuationSet {
        self.sets[k]
    }

    pub fn sets(&self) -> &[ValuationSet] {
        &self.sets
    }

    /// A formula set `Γ` (as fingerprint ids) with `M(Γ) = get(k)`.
    pub fn witness(&self, k: usize) -> &[FpId] {
        &self.witnesses[k]
    }

    pub fn index_of(&self, v: ValuationSet) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn contains(&self, v: ValuationSet) -> bool {
        self.index.contains_key(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, ValuationSet)> + '_ {
        self.sets.iter().copied().enumerate()
    }

    /// Whether `V ∪ W ∈ D` for all `V, W ∈ D`.
    pub fn is_union_closed(&self) -> bool {
        self.sets.iter().all(|a| self.sets.iter().all(|b| self.contains(a.union(*b))))
    }
}

/// A semantic structure together with its fingerprint universe and `D`.
///
/// In *exhaustive* mode both are complete, so quantification over formulas
/// and formula sets is exact. Otherwise the frame is *sampled*: checks can
/// refute but never certify.
#[derive(Clone, Debug)]
pub struct Frame {
    structure: SemanticStructure,
    universe: FingerprintUniverse,
    family: DefinableFamily,
    /// Maximal sets of the form `pos(φ) ∩ neg(φ)`; `V ∉ C` iff `V` fits inside one.
    glut_sets: Vec<ValuationSet>,
}

impl Frame {
    /// Full closure; fails with [`Error::CapExceeded`] if the universe or `D` is too large.
    pub fn exhaustive(structure: SemanticStructure, cap: usize) -> Result<Self> {
        let universe = FingerprintUniverse::closure(&structure, cap)?;
        let family = DefinableFamily::from_universe(&universe, cap);
        if !family.is_complete() {
            return Err(Error::CapExceeded(family.len()));
        }
        Ok(Self::assemble(structure, universe, family))
    }

    /// Convenience constructor from a kind and atom names.
    pub fn for_atoms<S: AsRef<str>>(kind: Kind, atoms: &[S]) -> Result<Self> {
        Self::exhaustive(SemanticStructure::new(kind, atoms)?, cap_from_env())
    }

    /// A sampled frame: truncated universe containing `seeds`, and `D`
    /// generated from the pos-sets of the literals and seeds plus `extra_sets`.
    pub fn sampled(
        structure: SemanticStructure,
        seeds: &[Formula],
        universe_cap: usize,
        family_cap: usize,
    ) -> Result<Self> {
        let universe = FingerprintUniverse::sampled(&structure, seeds, universe_cap)?;
        let mut generators = Vec::new();
        for a in structure.atoms() {
            let atom = Formula::atom(a.clone());
            generators.push(atom.clone());
            generators.push(Formula::not(atom));
        }
        generators.push(Formula::False);
        generators.extend(seeds.iter().cloned());
        let mut ids = Vec::new();
        for f in &generators {
            let (pos, neg) = structure.model_pair(f)?;
            ids.extend(universe.id_of(Fingerprint::new(pos, neg)));
        }
        let family = DefinableFamily::generate(&universe, ids, family_cap);
        Ok(Self::assemble(structure, universe, family))
    }

    /// Exhaustive if the closure fits in `cap`, sampled around `seeds` otherwise.
    pub fn build(structure: SemanticStructure, seeds: &[Formula], cap: usize) -> Result<Self> {
        match Self::exhaustive(structure.clone(), cap) {
            Ok(frame) => Ok(frame),
            Err(Error::CapExceeded(_)) => Self::sampled(structure, seeds, cap.min(SAMPLED_UNIVERSE), cap),
            Err(e) => Err(e),
        }
    }

    fn assemble(structure: SemanticStructure, universe: FingerprintUniverse, family: DefinableFamily) -> Self {
        let mut gluts: Vec<ValuationSet> = universe.entries().iter().map(|fp| fp.pos.intersection(fp.neg)).collect();
        gluts.sort_by_key(|s| std::cmp::Reverse(s.len()));
        gluts.dedup();
        let mut glut_sets: Vec<ValuationSet> = Vec::new();
        for g in gluts {
            if !glut_sets.iter().any(|m| g.is_subset(*m)) {
                glut_sets.push(g);
            }
        }
        Frame { structure, universe, family, glut_sets }
    }

    pub fn structure(&self) -> &SemanticStructure {
        &self.structure
    }

    pub fn universe(&self) -> &FingerprintUniverse {
        &self.universe
    }

    pub fn family(&self) -> &DefinableFamily {
        &self.family
    }

    pub fn kind(&self) -> Kind {
        self.structure.kind()
    }

    pub fn width(&self) -> usize {
        self.structure.len()
    }

    pub fn full_set(&self) -> ValuationSet {
        self.structure.full_set()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.universe.is_complete() && self.family.is_complete()
    }

    /// Fingerprint of a formula, by evaluation.
    pub fn fingerprint(&self, f: &Formula) -> Result<Fingerprint> {
        let (pos, neg) = self.structure.model_pair(f)?;
        Ok(Fingerprint::new(pos, neg))
    }

    /// Universe id of a formula's fingerprint, if the universe holds it.
    pub fn id_of(&self, f: &Formula) -> Result<Option<FpId>> {
        Ok(self.universe.id_of(self.fingerprint(f)?))
    }

    /// Like [`Frame::id_of`] but failing when the formula's class is missing.
    pub fn require_id(&self, f: &Formula) -> Result<FpId> {
        self.id_of(f)?.ok_or_else(|| Error::StructureFile {
            line: 0,
            message: format!("formula `{f}` is outside the sampled universe"),
        })
    }

    /// Universe id of `¬φ`.
    pub fn negation(&self, id: FpId) -> Option<FpId> {
        self.universe.id_of(self.universe.get(id).swap())
    }

    pub fn pos(&self, id: FpId) -> ValuationSet {
        self.universe.get(id).pos
    }

    pub fn neg(&self, id: FpId) -> ValuationSet {
        self.universe.get(id).neg
    }

    /// `M(Γ)` for a list of ids.
    pub fn mod_ids(&self, ids: impl IntoIterator<Item = FpId>) -> ValuationSet {
        ids.into_iter().fold(self.full_set(), |acc, id| acc.intersection(self.pos(id)))
    }

    /// `M(Γ)`.
    pub fn mod_set(&self, gamma: &FingerprintSet) -> ValuationSet {
        self.mod_ids(gamma.ones())
    }

    /// `M(Γ)` for formulas, by evaluation.
    pub fn mod_formulas(&self, gamma: &[Formula]) -> Result<ValuationSet> {
        gamma.iter().try_fold(self.full_set(), |acc, f| Ok(acc.intersection(self.fingerprint(f)?.pos)))
    }

    /// `T(V) = {φ : V ⊆ M(φ)}`.
    pub fn theory(&self, v: ValuationSet) -> FingerprintSet {
        self.universe.pos_cover(v)
    }

    /// `Tc(V) = {φ : V ⊆ M(φ), V ⊆ M(¬φ)}`.
    pub fn theory_c(&self, v: ValuationSet) -> FingerprintSet {
        let mut t = self.universe.pos_cover(v);
        t.intersect_with(&self.universe.neg_cover(v));
        t
    }

    /// `Td(V) = {φ : V ⊆ M(φ), V ⊄ M(¬φ)}`.
    pub fn theory_d(&self, v: ValuationSet) -> FingerprintSet {
        let mut t = self.universe.pos_cover(v);
        t.difference_with(&self.universe.neg_cover(v));
        t
    }

    /// `{φ : V ⊆ M(¬φ)}`.
    pub fn neg_theory(&self, v: ValuationSet) -> FingerprintSet {
        self.universe.neg_cover(v)
    }

    /// `V ∈ C`: no formula has both itself and its negation true throughout `V`.
    pub fn in_c(&self, v: ValuationSet) -> bool {
        !self.glut_sets.iter().any(|g| v.is_subset(*g))
    }

    /// `Γ ⊢ φ`.
    pub fn entails(&self, gamma: impl IntoIterator<Item = FpId>, phi: FpId) -> bool {
        self.mod_ids(gamma).is_subset(self.pos(phi))
    }

    pub fn is_consistent(&self, gamma: impl IntoIterator<Item = FpId>) -> bool {
        self.in_c(self.mod_ids(gamma))
    }

    /// `C⊢(Γ) = T(M(Γ))`.
    pub fn closure_of(&self, gamma: &FingerprintSet) -> FingerprintSet {
        self.theory(self.mod_set(gamma))
    }

    /// The set of ids `{φ}`.
    pub fn singleton(&self, id: FpId) -> FingerprintSet {
        let mut s = self.universe.empty_set();
        s.insert(id);
        s
    }

    /// Rendered witnesses of a fingerprint set, in canonical order.
    pub fn witnesses(&self, set: &FingerprintSet) -> Vec<String> {
        set.ones().map(|id| self.universe.witness(id).render()).collect()
    }

    pub fn describe(&self, id: FpId) -> String {
        self.universe.witness(id).render()
    }

    /// Valuation sets rendered as `{v6,v7}`.
    pub fn show_set(&self, v: ValuationSet) -> String {
        let items: Vec<String> = v.iter().map(|i| format!("v{i}")).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// Universe size used for sampled frames.
pub const SAMPLED_UNIVERSE: usize = 2_000;

/// Summary numbers for the `clone-stats` command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneStats {
    pub kind: Kind,
    pub atoms: usize,
    pub valuations: usize,
    pub universe: usize,
    pub definable: usize,
    pub definable_coherent: usize,
    pub union_closed: bool,
    pub powerset: bool,
    pub exhaustive: bool,
}

impl CloneStats {
    pub fn of(frame: &Frame) -> Self {
        let family = frame.family();
        CloneStats {
            kind: frame.kind(),
            atoms: frame.structure().atoms().len(),
            valuations: frame.width(),
            universe: frame.universe().len(),
            definable: family.len(),
            definable_coherent: family.sets().iter().filter(|v| frame.in_c(**v)).count(),
            union_closed: family.is_union_closed(),
            powerset: frame.width() < 32 && family.len() == 1usize << frame.width(),
            exhaustive: frame.is_exhaustive(),
        }
    }
}

impl fmt::Display for CloneStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} |A|={}: |V|={} universe={} |D|={} |D∩C|={} union_closed={} D=P(V)={}{}",
            self.kind,
            self.atoms,
            self.valuations,
            self.universe,
            self.definable,
            self.definable_coherent,
            self.union_closed,
            self.powerset,
            if self.exhaustive { "" } else { " (sampled)" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use std::collections::HashSet;

    fn frame(kind: Kind, atoms: &[&str]) -> Frame {
        Frame::for_atoms(kind, atoms).unwrap()
    }

    fn id(fr: &Frame, f: &str) -> FpId {
        fr.id_of(&parse(f).unwrap()).unwrap().unwrap()
    }

    /// Independent closure: brute-force fixpoint over the pair algebra
    /// starting from formula evaluation, no witnesses.
    fn oracle_pairs(s: &SemanticStructure) -> HashSet<Fingerprint> {
        let mut set: HashSet<Fingerprint> = HashSet::new();
        let mut basics = vec![Formula::True, Formula::False];
        basics.extend(s.atoms().iter().map(|a| Formula::atom(a.clone())));
        for f in basics {
            let (p, n) = s.model_pair(&f).unwrap();
            set.insert(Fingerprint::new(p, n));
        }
        loop {
            let items: Vec<_> = set.iter().copied().collect();
            let before = set.len();
            for a in &items {
                set.insert(a.swap());
                for b in &items {
                    set.insert(a.or(*b));
                    set.insert(a.and(*b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn classical_one_atom_universe_has_four_classes() {
        let fr = frame(Kind::Classical, &["p"]);
        assert_eq!(fr.universe().len(), 4);
        for fp in fr.universe().entries() {
            assert_eq!(fp.neg, fp.pos.complement(2));
        }
    }

    #[test]
    fn universe_matches_fixpoint_oracle() {
        for (kind, atoms) in [
            (Kind::Classical, vec!["p"]),
            (Kind::Classical, vec!["p", "q"]),
            (Kind::Four, vec!["p"]),
            (Kind::J3, vec!["p"]),
            (Kind::Four, vec!["p", "q"]),
        ] {
            let fr = frame(kind, &atoms);
            let got: HashSet<_> = fr.universe().entries().iter().copied().collect();
            assert_eq!(got, oracle_pairs(fr.structure()), "{kind} {atoms:?}");
        }
    }

    #[test]
    fn universe_is_closed_and_witnesses_realize_their_pairs() {
        for kind in Kind::ALL {
            let fr = frame(kind, &["p", "q"]);
            let u = fr.universe();
            for (i, fp) in u.entries().iter().enumerate() {
                assert_eq!(fr.fingerprint(u.witness(i)).unwrap(), *fp);
                assert!(u.id_of(fp.swap()).is_some());
                for other in u.entries().iter().step_by(7) {
                    assert!(u.id_of(fp.or(*other)).is_some());
                    assert!(u.id_of(fp.and(*other)).is_some());
                }
            }
            if kind == Kind::J3 {
                assert!(u.entries().iter().all(|fp| fp.pos.union(fp.neg) == fr.full_set()));
            }
        }
    }

    #[test]
    fn witnesses_are_canonically_ordered() {
        let fr = frame(Kind::Four, &["p"]);
        let texts: Vec<String> = fr.universe().ids().map(|i| fr.describe(i)).collect();
        let mut sorted = texts.clone();
        sorted.sort_by(|a, b| canonical_text_cmp(a, b));
        assert_eq!(texts, sorted);
        assert_eq!(texts[0], "p");
        assert!(texts.contains(&"!p & p".to_string()));
    }

    #[test]
    fn cap_is_enforced() {
        let s = SemanticStructure::new(Kind::Classical, &["p", "q"]).unwrap();
        assert!(matches!(FingerprintUniverse::closure(&s, 10), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn fingerprint_examples() {
        let fr = frame(Kind::Classical, &["p", "q", "r"]);
        let r = fr.fingerprint(&parse("r").unwrap()).unwrap();
        assert_eq!(r.pos, ValuationSet::from_indices([4, 5, 6, 7]));
        let t = fr.fingerprint(&Formula::True).unwrap();
        assert_eq!(t.pos, fr.full_set());
        assert!(fr.fingerprint(&Formula::False).unwrap().pos.is_empty());

        let four = frame(Kind::Four, &["p"]);
        let p = four.fingerprint(&parse("p").unwrap()).unwrap();
        assert_eq!(p.pos, ValuationSet::from_indices([1, 2]));
        assert_eq!(p.neg, ValuationSet::from_indices([0, 2]));
    }

    #[test]
    fn definable_family_examples() {
        let fr = frame(Kind::Classical, &["p"]);
        let sets: HashSet<_> = fr.family().sets().iter().copied().collect();
        let expected: HashSet<_> = [0b00u128, 0b01, 0b10, 0b11].into_iter().map(ValuationSet::from_bits).collect();
        assert_eq!(sets, expected);

        for kind in Kind::ALL {
            let fr = frame(kind, &["p"]);
            assert!(fr.family().contains(fr.full_set()));
            assert!(fr.family().contains(ValuationSet::EMPTY));
            for (k, v) in fr.family().iter() {
                assert_eq!(fr.mod_ids(fr.family().witness(k).iter().copied()), v);
                for (_, w) in fr.family().iter() {
                    assert!(fr.family().contains(v.intersection(w)));
                }
            }
        }

        let nixon = frame(Kind::Classical, &["p", "q", "r"]);
        let qr = nixon.mod_formulas(&[parse("q").unwrap(), parse("r").unwrap()]).unwrap();
        assert_eq!(qr, ValuationSet::from_indices([6, 7]));
        assert!(nixon.family().contains(qr));
    }

    #[test]
    fn theory_examples() {
        for kind in Kind::ALL {
            let fr = frame(kind, &["p"]);
            assert_eq!(fr.theory(ValuationSet::EMPTY).count_ones(..), fr.universe().len());
            assert_eq!(fr.theory_d(ValuationSet::EMPTY).count_ones(..), 0);
            assert!(!fr.in_c(ValuationSet::EMPTY));
        }
        let cl = frame(Kind::Classical, &["p", "q"]);
        for (_, v) in cl.family().iter().filter(|(_, v)| !v.is_empty()) {
            assert_eq!(cl.theory_d(v), cl.theory(v));
            assert_eq!(cl.theory_c(v).count_ones(..), 0);
            assert!(cl.in_c(v));
        }
        let four = frame(Kind::Four, &["p"]);
        let top = ValuationSet::singleton(2);
        assert!(four.theory_c(top).contains(id(&four, "p")));
        assert!(!four.in_c(top));
    }

    #[test]
    fn theory_splits_into_d_and_c_parts() {
        for kind in Kind::ALL {
            let fr = frame(kind, &["p", "q"]);
            for v in fr.full_set().subsets().step_by(3) {
                let (t, td, tc) = (fr.theory(v), fr.theory_d(v), fr.theory_c(v));
                assert!(td.is_disjoint(&tc));
                let mut union = td.clone();
                union.union_with(&tc);
                assert_eq!(union, t);
            }
        }
    }

    #[test]
    fn entailment_examples() {
        let cl = Frame::sampled(
            SemanticStructure::new(Kind::Classical, &["p", "q", "r"]).unwrap(),
            &[],
            SAMPLED_UNIVERSE,
            DEFAULT_CAP,
        )
        .unwrap();
        let gamma = [id(&cl, "!r"), id(&cl, "r | q")];
        assert!(cl.entails(gamma, id(&cl, "q")));
        assert!(cl.entails([], id(&cl, "true")));

        let s4 = SemanticStructure::new(Kind::Four, &["q", "r"]).unwrap();
        let fr = Frame::sampled(s4, &[parse("r | q").unwrap()], 500, 10_000).unwrap();
        let gamma = [id(&fr, "!r"), id(&fr, "r | q")];
        assert!(!fr.entails(gamma, id(&fr, "q")));
    }

    #[test]
    fn consistency_examples() {
        let cl = frame(Kind::Classical, &["p"]);
        assert!(!cl.is_consistent([id(&cl, "p"), id(&cl, "!p")]));
        let four = frame(Kind::Four, &["p"]);
        let contradiction = [id(&four, "p"), id(&four, "!p")];
        assert!(!four.is_consistent(contradiction));
        assert!(!four.mod_ids(contradiction).is_empty());
        assert!(four.is_consistent([id(&four, "p")]));
    }

    #[test]
    fn pair_algebra_agrees_with_evaluation() {
        for kind in Kind::ALL {
            let fr = frame(kind, &["p", "q"]);
            let u = fr.universe();
            for a in u.ids().step_by(5) {
                for b in u.ids().step_by(11) {
                    let (fa, fb) = (u.witness(a).clone(), u.witness(b).clone());
                    let or = fr.fingerprint(&Formula::or(fa.clone(), fb.clone())).unwrap();
                    let and = fr.fingerprint(&Formula::and(fa.clone(), fb)).unwrap();
                    let not = fr.fingerprint(&Formula::not(fa)).unwrap();
                    assert_eq!(or, u.get(a).or(u.get(b)));
                    assert_eq!(and, u.get(a).and(u.get(b)));
                    assert_eq!(not, u.get(a).swap());
                }
            }
        }
    }

    #[test]
    fn closure_identities_hold() {
        let fr = frame(Kind::Four, &["p"]);
        let u = fr.universe();
        let subsets: Vec<FingerprintSet> = (0u32..(1 << u.len()))
            .step_by(3)
            .map(|mask| {
                let mut s = u.empty_set();
                for i in 0..u.len() {
                    if mask & (1 << i) != 0 {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        for g in &subsets {
            let cg = fr.closure_of(g);
            assert_eq!(fr.mod_set(&cg), fr.mod_set(g));
            for d in subsets.iter().step_by(4) {
                let mut both = g.clone();
                both.union_with(d);
                assert_eq!(fr.mod_set(&both), fr.mod_set(g).intersection(fr.mod_set(d)));
                let lhs = g.is_subset(&fr.closure_of(d));
                assert_eq!(lhs, fr.mod_set(d).is_subset(fr.mod_set(g)));
            }
        }
        for (_, v) in fr.family().iter() {
            assert_eq!(fr.mod_set(&fr.theory(v)), v);
        }
    }

    #[test]
    fn stats_for_small_structures() {
        let st = CloneStats::of(&frame(Kind::Classical, &["p"]));
        assert_eq!((st.valuations, st.universe, st.definable, st.definable_coherent), (2, 4, 4, 3));
        assert!(st.powerset && st.union_closed && st.exhaustive);
        let four = CloneStats::of(&frame(Kind::Four, &["p"]));
        assert_eq!(four.universe, 6);
        assert!(!four.powerset);
    }
}
