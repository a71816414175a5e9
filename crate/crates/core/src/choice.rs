//! Choice functions over `D` and preference structures on valuations.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::modeltheory::{Frame, ValuationSet};
use crate::semantics::SemanticStructure;

pub type StateId = usize;

/// `⟨S, l, ≺⟩`: states labelled by valuation indices, with a strict preference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceStructure {
    width: usize,
    names: Vec<String>,
    labels: Vec<usize>,
    /// `below[t]` holds every `s` with `s ≺ t`.
    below: Vec<FixedBitSet>,
}

impl PreferenceStructure {
    /// States with the given labels and an empty preference.
    pub fn new(width: usize, labels: Vec<usize>) -> Self {
        let n = labels.len();
        debug_assert!(labels.iter().all(|&l| l < width));
        PreferenceStructure {
            width,
            names: (0..n).map(|i| format!("s{i}")).collect(),
            labels,
            below: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// One state per valuation, labelled by identity, no preferences.
    pub fn identity(width: usize) -> Self {
        Self::new(width, (0..width).collect())
    }

    /// Identity-labelled structure with `v ≺ w` iff `prefers(v, w)`.
    pub fn from_relation(width: usize, mut prefers: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::identity(width);
        for v in 0..width {
            for w in 0..width {
                if prefers(v, w) {
                    r.add_preference(v, w);
                }
            }
        }
        r
    }

    /// Parse the `state <id> label <valuation>` / `prefer <id> <id>` format.
    pub fn parse(text: &str, structure: &SemanticStructure) -> Result<Self> {
        let mut ids: HashMap<String, StateId> = HashMap::new();
        let mut names = Vec::new();
        let mut labels = Vec::new();
        let mut prefs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::StructureFile { line: line_no, message };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("state") => {
                    let id = words.next().ok_or_else(|| err("missing state id".into()))?;
                    if words.next() != Some("label") {
                        return Err(err("expected `label` after state id".into()));
                    }
                    let fields: Vec<&str> = words.collect();
                    let label = structure.parse_valuation(&fields.join(" ")).map_err(|e| err(e.to_string()))?;
                    if ids.insert(id.to_string(), names.len()).is_some() {
                        return Err(err(format!("duplicate state `{id}`")));
                    }
                    names.push(id.to_string());
                    labels.push(label);
                }
                Some("prefer") => {
                    let a = words.next().ok_or_else(|| err("missing state".into()))?;
                    let b = words.next().ok_or_else(|| err("missing state".into()))?;
                    if words.next().is_some() {
                        return Err(err("trailing input after `prefer a b`".into()));
                    }
                    prefs.push((line_no, a.to_string(), b.to_string()));
                }
                Some(other) => return Err(err(format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }
        let mut r = Self::new(structure.len(), labels);
        r.names = names;
        for (line, a, b) in prefs {
            let lookup = |id: &str| {
                ids.get(id)
                    .copied()
                    .ok_or_else(|| Error::StructureFile { line, message: format!("unknown state `{id}`") })
            };
            r.add_preference(lookup(&a)?, lookup(&b)?);
        }
        Ok(r)
    }

    /// Inverse of [`PreferenceStructure::parse`].
    pub fn to_text(&self, structure: &SemanticStructure) -> String {
        let mut out = String::new();
        for s in self.states() {
            let _ = writeln!(out, "state {} label {}", self.names[s], structure.format_valuation(self.labels[s]));
        }
        for t in self.states() {
            for s in self.below[t].ones() {
                let _ = writeln!(out, "prefer {} {}", self.names[s], self.names[t]);
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.labels.len()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn label(&self, s: StateId) -> usize {
        self.labels[s]
    }

    /// Record `s ≺ t`.
    pub fn add_preference(&mut self, s: StateId, t: StateId) {
        self.below[t].insert(s);
    }

    /// `s ≺ t`.
    pub fn prefers(&self, s: StateId, t: StateId) -> bool {
        self.below[t].contains(s)
    }

    pub fn edge_count(&self) -> usize {
        self.below.iter().map(|b| b.count_ones(..)).sum()
    }

    pub fn state_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// `L(V)`.
    pub fn states_labelled(&self, v: ValuationSet) -> FixedBitSet {
        let mut out = self.state_set();
        for s in self.states() {
            if v.contains(self.labels[s]) {
                out.insert(s);
            }
        }
        out
    }

    pub fn is_preferred_in(&self, s: StateId, set: &FixedBitSet) -> bool {
        self.below[s].is_disjoint(set)
    }

    /// The states of `set` with no strict predecessor inside `set`.
    pub fn preferred_states(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.state_set();
        for s in set.ones() {
            if self.is_preferred_in(s, set) {
                out.insert(s);
            }
        }
        out
    }

    /// `μ_R(V)`.
    pub fn mu(&self, v: ValuationSet) -> ValuationSet {
        let states = self.states_labelled(v);
        self.preferred_states(&states).ones().map(|s| self.labels[s]).collect()
    }

    /// `μ_R` tabulated over `D`.
    pub fn choice_function(&self, frame: &Frame) -> ChoiceFunction {
        let domain = frame.family().sets().to_vec();
        let table = domain.iter().map(|v| self.mu(*v)).collect();
        ChoiceFunction { domain, table }
    }

    pub fn is_irreflexive(&self) -> bool {
        self.states().all(|s| !self.prefers(s, s))
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// `(a, b, c)` with `a ≺ b ≺ c` but not `a ≺ c`.
    pub fn transitivity_violation(&self) -> Option<(StateId, StateId, StateId)> {
        for c in self.states() {
            for b in self.below[c].ones() {
                if let Some(a) = self.below[b].difference(&self.below[c]).next() {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Close `≺` under transitivity (Warshall).
    pub fn transitive_closure(&mut self) {
        let n = self.len();
        for k in 0..n {
            for t in 0..n {
                if self.below[t].contains(k) {
                    let via = self.below[k].clone();
                    self.below[t].union_with(&via);
                }
            }
        }
    }

    pub fn remove_reflexive(&mut self) {
        for s in self.states() {
            self.below[s].set(s, false);
        }
    }

    /// Smoothness over `family`; on failure returns `(V, s)`.
    pub fn check_smooth<'a>(
        &self,
        family: impl IntoIterator<Item = &'a ValuationSet>,
    ) -> Result<(), (ValuationSet, StateId)> {
        for v in family {
            let states = self.states_labelled(*v);
            let preferred = self.preferred_states(&states);
            for s in states.ones() {
                if !preferred.contains(s) && self.below[s].is_disjoint(&preferred) {
                    return Err((*v, s));
                }
            }
        }
        Ok(())
    }

    pub fn is_smooth<'a>(&self, family: impl IntoIterator<Item = &'a ValuationSet>) -> bool {
        self.check_smooth(family).is_ok()
    }
}

/// A violation of one of the choice-function properties. Indices refer to `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `μ(V) ⊄ V`.
    NotChoice { v: usize },
    /// `V ⊆ W`, `u ∈ μ(W) ∩ V`, `u ∉ μ(V)`.
    Coherence { v: usize, w: usize, u: usize },
    /// `μ(W) ⊆ V ⊆ W` and `μ(V) ⊄ μ(W)`.
    LocalMonotonicity { v: usize, w: usize },
    /// `μ(V) ∉ D`.
    Definability { v: usize },
    /// `V ∈ C`, `μ(V) ∉ C`.
    Coherency { v: usize },
}

/// A map from `D` (by index) to valuation sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceFunction {
    domain: Vec<ValuationSet>,
    table: Vec<ValuationSet>,
}

impl ChoiceFunction {
    /// `table[k]` is the value at `D[k]`.
    pub fn new(frame: &Frame, table: Vec<ValuationSet>) -> Self {
        assert_eq!(table.len(), frame.family().len(), "table must cover D");
        ChoiceFunction { domain: frame.family().sets().to_vec(), table }
    }

    pub fn from_fn(frame: &Frame, mut f: impl FnMut(ValuationSet) -> ValuationSet) -> Self {
        let table = frame.family().sets().iter().map(|v| f(*v)).collect();
        Self::new(frame, table)
    }

    pub fn identity(frame: &Frame) -> Self {
        Self::from_fn(frame, |v| v)
    }

    pub fn domain(&self) -> &[ValuationSet] {
        &self.domain
    }

    pub fn table(&self) -> &[ValuationSet] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn at(&self, k: usize) -> ValuationSet {
        self.table[k]
    }

    /// Value at a set, if it belongs to the domain.
    pub fn apply(&self, v: ValuationSet) -> Option<ValuationSet> {
        self.domain.iter().position(|d| *d == v).map(|k| self.table[k])
    }

    pub fn check_choice(&self) -> Result<(), Violation> {
        match (0..self.len()).find(|&k| !self.table[k].is_subset(self.domain[k])) {
            Some(v) => Err(Violation::NotChoice { v }),
            None => Ok(()),
        }
    }

    pub fn check_coherent(&self) -> Result<(), Violation> {
        for (w, &big) in self.domain.iter().enumerate() {
            for (v, &small) in self.domain.iter().enumerate() {
                if !small.is_subset(big) {
                    continue;
                }
                let lost = self.table[w].intersection(small).difference(self.table[v]);
                if let Some(u) = lost.iter().next() {
                    return Err(Violation::Coherence { v, w, u });
                }
            }
        }
        Ok(())
    }

    pub fn check_locally_monotonic(&self) -> Result<(), Violation> {
        for (w, &big) in self.domain.iter().enumerate() {
            for (v, &mid) in self.domain.iter().enumerate() {
                if self.table[w].is_subset(mid) && mid.is_subset(big) && !self.table[v].is_subset(self.table[w]) {
                    return Err(Violation::LocalMonotonicity { v, w });
                }
            }
        }
        Ok(())
    }

    pub fn check_dp(&self, frame: &Frame) -> Result<(), Violation> {
        match (0..self.len()).find(|&k| !frame.family().contains(self.table[k])) {
            Some(v) => Err(Violation::Definability { v }),
            None => Ok(()),
        }
    }

    pub fn check_cp(&self, frame: &Frame) -> Result<(), Violation> {
        let bad = (0..self.len()).find(|&k| frame.in_c(self.domain[k]) && !frame.in_c(self.table[k]));
        match bad {
            Some(v) => Err(Violation::Coherency { v }),
            None => Ok(()),
        }
    }

    pub fn is_choice(&self) -> bool {
        self.check_choice().is_ok()
    }

    pub fn is_coherent(&self) -> bool {
        self.check_coherent().is_ok()
    }

    pub fn is_locally_monotonic(&self) -> bool {
        self.check_locally_monotonic().is_ok()
    }

    pub fn is_dp(&self, frame: &Frame) -> bool {
        self.check_dp(frame).is_ok()
    }

    pub fn is_cp(&self, frame: &Frame) -> bool {
        self.check_cp(frame).is_ok()
    }

    /// `μ′(V) = V ∩ μ(M(T(V)))`; `None` if `M(T(V))` lies outside the domain.
    pub fn extend(&self, frame: &Frame, v: ValuationSet) -> Option<ValuationSet> {
        let hull = frame.mod_set(&frame.theory(v));
        self.apply(hull).map(|m| v.intersection(m))
    }

    /// `μ′` on every subset of `V`, indexed by bit pattern. Needs `|V| ≤ 20`.
    pub fn extend_to_powerset(&self, frame: &Frame) -> Option<Vec<ValuationSet>> {
        let width = frame.width();
        if width > 20 {
            return None;
        }
        (0u128..1 << width).map(|bits| self.extend(frame, ValuationSet::from_bits(bits))).collect()
    }

    /// One line per `D`-index: `V#<k>: {..} -> {..}`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, (v, m)) in self.domain.iter().zip(&self.table).enumerate() {
            let _ = writeln!(out, "V#{k}: {v} -> {m}");
        }
        out
    }
}

/// `μ^f(V) = {v ∈ V : ∀ W ∈ D, v ∈ W ⊆ V ⟹ v ∈ f(W)}`.
pub fn mu_sharp(frame: &Frame, f: &[ValuationSet]) -> ChoiceFunction {
    let domain = frame.family().sets();
    assert_eq!(f.len(), domain.len(), "f must cover D");
    let table = domain
        .iter()
        .map(|&v| {
            let evicted = domain
                .iter()
                .zip(f)
                .filter(|(w, _)| w.is_subset(v))
                .fold(ValuationSet::EMPTY, |acc, (w, fw)| acc.union(w.difference(*fw)));
            v.difference(evicted)
        })
        .collect();
    ChoiceFunction::new(frame, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Kind;

    fn classical(atoms: &[&str]) -> Frame {
        Frame::for_atoms(Kind::Classical, atoms).unwrap()
    }

    fn vs(indices: &[usize]) -> ValuationSet {
        ValuationSet::from_indices(indices.iter().copied())
    }

    /// Independent statement of the classical Nixon preference.
    fn nixon(frame: &Frame) -> PreferenceStructure {
        let s = frame.structure();
        let val = |i: usize, atom: usize| s.valuations()[i].get(atom).is_designated();
        let (p, q, r) = (0, 1, 2);
        PreferenceStructure::from_relation(8, |v, w| {
            (val(v, r) && !val(v, p) && val(w, r) && val(w, p)) || (val(v, q) && val(v, p) && val(w, q) && !val(w, p))
        })
    }

    #[test]
    fn empty_preference_prefers_everything() {
        let r = PreferenceStructure::identity(4);
        let all = r.states_labelled(ValuationSet::full(4));
        assert_eq!(r.preferred_states(&all), all);
        assert!(r.is_transitive() && r.is_irreflexive());
        assert!(r.is_smooth(&[ValuationSet::full(4)]));
    }

    #[test]
    fn nixon_preferred_states() {
        let fr = classical(&["p", "q", "r"]);
        let r = nixon(&fr);
        assert_eq!(r.mu(vs(&[4, 5, 6, 7])), vs(&[4]));
        assert_eq!(r.mu(vs(&[6, 7])), ValuationSet::EMPTY);
        assert_eq!(r.mu(ValuationSet::EMPTY), ValuationSet::EMPTY);
        assert!(r.is_irreflexive());
        assert!(!r.is_transitive());
        assert!(r.transitivity_violation().is_some());
        let err = r.check_smooth(fr.family().sets()).unwrap_err();
        assert!(!r.mu(err.0).contains(r.label(err.1)));
    }

    #[test]
    fn nixon_choice_function_is_coherent() {
        let fr = classical(&["p", "q", "r"]);
        let mu = nixon(&fr).choice_function(&fr);
        assert!(mu.is_choice());
        assert!(mu.is_coherent());
        assert!(mu.is_dp(&fr));
    }

    #[test]
    fn reflexive_edge_breaks_irreflexivity() {
        let mut r = PreferenceStructure::identity(2);
        r.add_preference(0, 0);
        assert!(!r.is_irreflexive());
        r.remove_reflexive();
        assert!(r.is_irreflexive());
    }

    #[test]
    fn transitive_closure_makes_transitive() {
        let mut r = PreferenceStructure::identity(4);
        r.add_preference(0, 1);
        r.add_preference(1, 2);
        r.add_preference(2, 3);
        assert!(!r.is_transitive());
        r.transitive_closure();
        assert!(r.is_transitive());
        assert!(r.prefers(0, 3));
    }

    #[test]
    fn structure_file_roundtrip() {
        let fr = classical(&["p", "q"]);
        let text = "# two states\nstate a label p=t q=f\nstate b label v3\nprefer a b\n";
        let r = PreferenceStructure::parse(text, fr.structure()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r.label(0), r.label(1)), (1, 3));
        assert!(r.prefers(0, 1));
        let again = PreferenceStructure::parse(&r.to_text(fr.structure()), fr.structure()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn structure_file_errors_carry_lines() {
        let fr = classical(&["p"]);
        for (text, line) in [
            ("state a label p=t\nprefer a b\n", 2),
            ("state a p=t\n", 1),
            ("\nfoo\n", 2),
            ("state a label p=t\nstate a label p=f\n", 2),
            ("state a label z=t\n", 1),
        ] {
            match PreferenceStructure::parse(text, fr.structure()) {
                Err(Error::StructureFile { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn coherence_violation_is_reported() {
        let fr = classical(&["p"]);
        let d = fr.family();
        // D = {∅, {0}, {1}, {0,1}}; μ(V) = V except μ({1}) = ∅.
        let table = d.sets().iter().map(|v| if *v == vs(&[1]) { ValuationSet::EMPTY } else { *v }).collect();
        let mu = ChoiceFunction::new(&fr, table);
        match mu.check_coherent() {
            Err(Violation::Coherence { v, w, u }) => {
                assert_eq!(d.get(v), vs(&[1]));
                assert!(d.get(v).is_subset(d.get(w)));
                assert!(mu.at(w).contains(u) && !mu.at(v).contains(u));
            }
            other => panic!("{other:?}"),
        }
        assert!(ChoiceFunction::identity(&fr).is_coherent());
    }

    #[test]
    fn local_monotonicity_examples() {
        let fr = classical(&["p", "q"]);
        assert!(ChoiceFunction::identity(&fr).is_locally_monotonic());
        let (w, v) = (vs(&[0, 1, 2]), vs(&[0, 1]));
        let mu = ChoiceFunction::from_fn(&fr, |x| {
            if x == w {
                vs(&[0])
            } else if x == v {
                vs(&[1])
            } else {
                x
            }
        });
        assert!(matches!(mu.check_locally_monotonic(), Err(Violation::LocalMonotonicity { .. })));
    }

    #[test]
    fn dp_and_cp_examples() {
        let fr = classical(&["p"]);
        let id = ChoiceFunction::identity(&fr);
        assert!(id.is_dp(&fr) && id.is_cp(&fr));
        let empty = ChoiceFunction::from_fn(&fr, |_| ValuationSet::EMPTY);
        assert!(empty.is_dp(&fr));
        assert!(matches!(empty.check_cp(&fr), Err(Violation::Coherency { .. })));

        let four = Frame::for_atoms(Kind::Four, &["p"]).unwrap();
        let outside = (0u128..16)
            .map(ValuationSet::from_bits)
            .find(|s| !four.family().contains(*s))
            .expect("FOUR |A|=1 has non-definable sets");
        let mu = ChoiceFunction::from_fn(&four, |v| if outside.is_subset(v) { outside } else { v });
        assert!(matches!(mu.check_dp(&four), Err(Violation::Definability { .. })));
    }

    #[test]
    fn mu_sharp_examples() {
        let fr = classical(&["p", "q"]);
        let d = fr.family().sets().to_vec();
        assert_eq!(mu_sharp(&fr, &d), ChoiceFunction::identity(&fr));
        let none = vec![ValuationSet::EMPTY; d.len()];
        assert!(mu_sharp(&fr, &none).table().iter().all(|m| m.is_empty()));
    }

    #[test]
    fn powerset_extension_agrees_on_d() {
        let fr = Frame::for_atoms(Kind::Four, &["p"]).unwrap();
        let r = PreferenceStructure::from_relation(4, |v, w| v == 1 && w == 2);
        let mu = r.choice_function(&fr);
        let ext = mu.extend_to_powerset(&fr).unwrap();
        for (k, v) in fr.family().iter() {
            assert_eq!(ext[v.bits() as usize], mu.at(k));
        }
        assert!(ext[0].is_empty());
        for (bits, e) in ext.iter().enumerate() {
            assert!(e.is_subset(ValuationSet::from_bits(bits as u128)));
        }
    }

    #[test]
    fn dump_format() {
        let fr = classical(&["p"]);
        let text = ChoiceFunction::identity(&fr).dump();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().all(|l| l.starts_with("V#") && l.contains(" -> ")));
        assert!(text.contains("V#0: {} -> {}"));
    }
}
