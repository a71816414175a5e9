//! The syntactic and semi-syntactic conditions `(|~0)`–`(|~12)`, the
//! constructions `H`, `M_i`, `β`, `F`, `G`, system P and KLM0–2.
//!
//! Premise sets are quantified through their `D`-class, single formulas
//! through the fingerprint universe. Every failing check returns a
//! [`Witness`] that [`ConditionReport::recheck`] can re-evaluate.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::choice::{mu_sharp, ChoiceFunction};
use crate::consequence::ConsequenceRelation;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::modeltheory::{Fingerprint, FingerprintSet, FpId, Frame, ValuationSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    SystemP,
    Klm,
}

impl ConditionId {
    pub const NUMBERED: [ConditionId; 13] = [
        ConditionId::C0,
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
        ConditionId::C6,
        ConditionId::C7,
        ConditionId::C8,
        ConditionId::C9,
        ConditionId::C10,
        ConditionId::C11,
        ConditionId::C12,
    ];

    pub fn number(self) -> Option<usize> {
        Self::NUMBERED.iter().position(|c| *c == self)
    }

    pub fn name(self) -> String {
        match self {
            ConditionId::SystemP => "P".into(),
            ConditionId::Klm => "KLM".into(),
            c => format!("c{}", c.number().unwrap()),
        }
    }

    /// Parse a comma list such as `c0..c3,c6,P,KLM`.
    pub fn parse_list(text: &str) -> Result<Vec<ConditionId>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((a, b)) = item.split_once("..") {
                let (a, b) = (a.parse::<ConditionId>()?, b.parse::<ConditionId>()?);
                match (a.number(), b.number()) {
                    (Some(x), Some(y)) if x <= y => out.extend_from_slice(&Self::NUMBERED[x..=y]),
                    _ => return Err(Error::UnknownCondition(item.to_string())),
                }
            } else {
                out.push(item.parse()?);
            }
        }
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => return Ok(ConditionId::SystemP),
            "KLM" | "klm" => return Ok(ConditionId::Klm),
            _ => {}
        }
        s.strip_prefix('c')
            .or_else(|| s.strip_prefix('C'))
            .and_then(|n| n.parse::<usize>().ok())
            .and_then(|n| Self::NUMBERED.get(n).copied())
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))
    }
}

/// A violating instance. `gamma`/`delta` are `D`-indices; `alpha`, `beta`,
/// `third` are universe ids; `valuation` is a valuation index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub gamma: Option<usize>,
    pub delta: Option<usize>,
    pub alpha: Option<FpId>,
    pub beta: Option<FpId>,
    pub third: Option<FpId>,
    pub valuation: Option<usize>,
    pub rule: Option<&'static str>,
}

impl Witness {
    fn gamma(k: usize) -> Self {
        Witness { gamma: Some(k), ..Default::default() }
    }

    fn pair(g: usize, d: usize) -> Self {
        Witness { gamma: Some(g), delta: Some(d), ..Default::default() }
    }

    fn formulas(k: usize, alpha: FpId, beta: Option<FpId>) -> Self {
        Witness { gamma: Some(k), alpha: Some(alpha), beta, ..Default::default() }
    }

    /// Human-readable rendering using witness formulas and `D` members.
    pub fn describe(&self, frame: &Frame) -> String {
        let mut parts = Vec::new();
        if let Some(rule) = self.rule {
            parts.push(format!("rule={rule}"));
        }
        let set = |k: usize| {
            let ids = frame.family().witness(k);
            let names: Vec<String> = ids.iter().map(|&i| frame.describe(i)).collect();
            format!("M{{{}}}={}", names.join(", "), frame.show_set(frame.family().get(k)))
        };
        if let Some(g) = self.gamma {
            parts.push(format!("Gamma={}", set(g)));
        }
        if let Some(d) = self.delta {
            parts.push(format!("Delta={}", set(d)));
        }
        if let Some(v) = self.valuation {
            parts.push(format!("v={}", frame.structure().format_valuation(v)));
        }
        for (name, id) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.third)] {
            if let Some(id) = id {
                parts.push(format!("{name}={}", frame.describe(id)));
            }
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub pass: bool,
    pub witness: Option<Witness>,
    /// The frame was truncated: a pass does not certify the condition.
    pub sampled: bool,
}

impl ConditionReport {
    fn new(frame: &Frame, id: ConditionId, witness: Option<Witness>) -> Self {
        ConditionReport { id, pass: witness.is_none(), witness, sampled: !frame.is_exhaustive() }
    }

    /// Re-evaluate the witness from the definitions; true if it is a genuine violation.
    pub fn recheck(&self, frame: &Frame, rel: &ConsequenceRelation, an: &Analysis) -> bool {
        match &self.witness {
            Some(w) => violated(self.id, frame, rel, an, w),
            None => false,
        }
    }
}

/// Per-class data shared by the condition checkers.
#[derive(Clone, Debug)]
pub struct Analysis {
    /// `M(C|~(Γ))`.
    pub mt: Vec<ValuationSet>,
    /// `M(Γ ∪ C|~(Γ))`.
    pub x: Vec<ValuationSet>,
    /// `H(Γ)`.
    pub h: Vec<FingerprintSet>,
    /// `M(Γ ∪ C|~(Γ) ∪ H(Γ))`.
    pub y: Vec<ValuationSet>,
    /// `M(C|~(Γ) ∪ H(Γ))`.
    pub mth: Vec<ValuationSet>,
}

impl Analysis {
    pub fn new(frame: &Frame, rel: &ConsequenceRelation) -> Self {
        let n = frame.family().len();
        let per: Vec<_> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mt = frame.mod_set(rel.at(k));
                let hr = compute_h(frame, rel, k);
                let mh = frame.mod_set(&hr.set);
                (mt, frame.family().get(k).intersection(mt), hr, mt.intersection(mh))
            })
            .collect();
        let mut an = Analysis { mt: vec![], x: vec![], h: vec![], y: vec![], mth: vec![] };
        for (mt, x, hr, mth) in per {
            an.mt.push(mt);
            an.x.push(x);
            an.y.push(hr.model);
            an.h.push(hr.set);
            an.mth.push(mth);
        }
        an
    }
}

/// Result of iterating the `H_i` construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HConstruction {
    pub set: FingerprintSet,
    /// `M(Γ ∪ C|~(Γ) ∪ H(Γ))`.
    pub model: ValuationSet,
    pub rounds: usize,
}

/// `H(Γ)` for `M(Γ) = D[k]`, iterated to the model-set fixpoint.
pub fn compute_h(frame: &Frame, rel: &ConsequenceRelation, k: usize) -> HConstruction {
    let t = rel.at(k);
    let mut z = frame.family().get(k).intersection(frame.mod_set(t));
    let mut set = frame.universe().empty_set();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut cand = frame.theory_d(z);
        cand.difference_with(t);
        let mut next = z;
        for b in cand.ones() {
            if let Some(nb) = frame.negation(b) {
                set.insert(nb);
            }
            next = next.intersection(frame.neg(b));
        }
        if next == z {
            return HConstruction { set, model: z, rounds };
        }
        z = next;
    }
}

/// `M_1(Γ), M_2(Γ), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    /// `X = M(Γ ∪ C|~(Γ))`.
    pub x: ValuationSet,
    /// The non-empty layers, in order.
    pub layers: Vec<ValuationSet>,
    /// `remainders[i] = X \ (M_1 ∪ … ∪ M_i)`; one more entry than `layers`.
    pub remainders: Vec<ValuationSet>,
    pub m_plus: ValuationSet,
}

impl LayerDecomposition {
    pub fn n(&self) -> usize {
        self.layers.len()
    }
}

fn layer_step(frame: &Frame, t: &FingerprintSet, r: ValuationSet) -> ValuationSet {
    let mut cand = frame.theory(r);
    cand.difference_with(t);
    cand.ones().fold(ValuationSet::EMPTY, |acc, b| acc.union(r.difference(frame.neg(b))))
}

/// The first `count` layers, computed literally, including empty ones.
pub fn layer_sequence(frame: &Frame, rel: &ConsequenceRelation, k: usize, count: usize) -> Vec<ValuationSet> {
    let t = rel.at(k);
    let mut r = frame.family().get(k).intersection(frame.mod_set(t));
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let m = layer_step(frame, t, r);
        out.push(m);
        r = r.difference(m);
    }
    out
}

pub fn compute_m_layers(frame: &Frame, rel: &ConsequenceRelation, k: usize) -> LayerDecomposition {
    let t = rel.at(k);
    let x = frame.family().get(k).intersection(frame.mod_set(t));
    let mut r = x;
    let mut layers = Vec::new();
    let mut remainders = vec![x];
    loop {
        let m = layer_step(frame, t, r);
        if m.is_empty() {
            break;
        }
        layers.push(m);
        r = r.difference(m);
        remainders.push(r);
    }
    let m_plus = layers.iter().fold(ValuationSet::EMPTY, |a, m| a.union(*m));
    LayerDecomposition { x, layers, remainders, m_plus }
}

/// `β(Γ)` with the per-valuation choices that built it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta {
    pub fingerprint: Fingerprint,
    pub formula: Formula,
    /// `parts[i]` lists `(v_j, β_j)` for layer `i`.
    pub parts: Vec<Vec<(usize, FpId)>>,
}

/// `β(Γ)`, or `None` when `M+(Γ)` is empty.
pub fn synth_beta(
    frame: &Frame,
    rel: &ConsequenceRelation,
    k: usize,
    layers: &LayerDecomposition,
) -> Result<Option<Beta>> {
    if layers.m_plus.is_empty() {
        return Ok(None);
    }
    let t = rel.at(k);
    let mut parts = Vec::new();
    for (layer, rem) in layers.layers.iter().zip(&layers.remainders) {
        let mut cand = frame.theory(*rem);
        cand.difference_with(t);
        let mut chosen = Vec::new();
        for v in layer.iter() {
            let b = cand.ones().find(|&b| !frame.neg(b).contains(v)).ok_or(Error::NoWitness(v))?;
            chosen.push((v, b));
        }
        parts.push(chosen);
    }
    let u = frame.universe();
    let fingerprint = parts.iter().flatten().map(|&(_, b)| u.get(b)).reduce(Fingerprint::or).expect("non-empty layers");
    let formula =
        Formula::disjunction(parts.iter().map(|layer| {
            Formula::disjunction(layer.iter().map(|&(_, b)| u.witness(b).clone())).expect("non-empty layer")
        }))
        .expect("at least one layer");
    Ok(Some(Beta { fingerprint, formula, parts }))
}

/// `F(Γ)`: the fingerprint of `¬β(Γ)`, if `M+(Γ)` is non-empty.
pub fn compute_f(frame: &Frame, rel: &ConsequenceRelation, k: usize) -> Result<Option<Fingerprint>> {
    let layers = compute_m_layers(frame, rel, k);
    Ok(synth_beta(frame, rel, k, &layers)?.map(|b| b.fingerprint.swap()))
}

/// `G(Γ)`.
pub fn compute_g(frame: &Frame, rel: &ConsequenceRelation, k: usize) -> FingerprintSet {
    let t = rel.at(k);
    let x = frame.family().get(k).intersection(frame.mod_set(t));
    let mut out = frame.universe().empty_set();
    for a in frame.universe().ids() {
        if t.contains(a) || frame.negation(a).is_some_and(|na| t.contains(na)) {
            continue;
        }
        if frame.theory_d(x.intersection(frame.pos(a))).is_subset(t) {
            out.insert(a);
        }
    }
    out
}

/// `V \ ∪_{W ∈ D, W ⊆ V} (W \ f(W))` for every `V ∈ D`.
fn sharp_sets(frame: &Frame, f: &[ValuationSet]) -> Vec<ValuationSet> {
    mu_sharp(frame, f).table().to_vec()
}

fn meet_index(frame: &Frame, a: ValuationSet, b: ValuationSet) -> Option<usize> {
    frame.family().index_of(a.intersection(b))
}

/// Whether `w` is a genuine violation of condition `id`.
pub fn violated(id: ConditionId, frame: &Frame, rel: &ConsequenceRelation, an: &Analysis, w: &Witness) -> bool {
    let d = frame.family();
    let t = |k: usize| rel.at(k);
    let g = w.gamma.unwrap_or(0);
    match id {
        ConditionId::C0 => false,
        ConditionId::C1 => frame.theory(an.mt[g]) != *t(g),
        ConditionId::C2 => !frame.theory(d.get(g)).is_subset(t(g)),
        ConditionId::C3 => {
            let j = w.delta.unwrap_or(0);
            match meet_index(frame, d.get(g), d.get(j)) {
                Some(m) => !t(m).is_subset(&frame.theory(an.mt[g].intersection(d.get(j)))),
                None => false,
            }
        }
        ConditionId::C4 => {
            let j = w.delta.unwrap_or(0);
            d.get(j).is_subset(d.get(g)) && frame.theory(d.get(j)).is_subset(t(g)) && !t(g).is_subset(t(j))
        }
        ConditionId::C5 => {
            let s = sharp_sets(frame, &an.mt);
            frame.theory(s[g]) != *t(g)
        }
        ConditionId::C6 => {
            let (a, b) = (w.alpha.unwrap_or(0), w.beta.unwrap_or(0));
            let x = an.x[g];
            x.is_subset(frame.pos(b))
                && !t(g).contains(b)
                && x.intersection(frame.neg(b)).is_subset(frame.neg(a))
                && t(g).contains(a)
        }
        ConditionId::C7 => {
            let (a, b) = (w.alpha.unwrap_or(0), w.beta.unwrap_or(0));
            let x = an.x[g];
            let y = x.intersection(frame.neg(a));
            let or = frame.universe().id_of(frame.universe().get(a).or(frame.universe().get(b)));
            x.is_subset(frame.pos(a))
                && !t(g).contains(a)
                && y.is_subset(frame.pos(b))
                && !t(g).contains(b)
                && or.is_some_and(|o| t(g).contains(o))
        }
        ConditionId::C8 => {
            let a = w.alpha.unwrap_or(0);
            t(g).contains(a) && an.x[g].is_subset(frame.neg(a))
        }
        ConditionId::C9 => {
            let j = w.delta.unwrap_or(0);
            d.get(g).is_subset(d.get(j)) && !an.y[j].intersection(d.get(g)).is_subset(an.mth[g])
        }
        ConditionId::C10 => {
            let j = w.delta.unwrap_or(0);
            d.get(j).is_subset(d.get(g)) && an.y[g].is_subset(d.get(j)) && !an.y[j].is_subset(an.mth[g])
        }
        ConditionId::C11 => {
            let v = d.get(g);
            frame.in_c(v)
                && !(frame.in_c(an.mt[g]) && frame.theory(v).is_subset(t(g)) && frame.theory(an.mt[g]) == *t(g))
        }
        ConditionId::C12 => {
            let s = sharp_sets(frame, &an.mth);
            frame.theory(an.y[g]) != frame.theory(s[g])
        }
        ConditionId::SystemP => system_p_violated(frame, rel, w),
        ConditionId::Klm => klm_violated(frame, w),
    }
}

fn first_k(n: usize, f: impl Fn(usize) -> Option<Witness> + Sync + Send) -> Option<Witness> {
    (0..n).into_par_iter().find_map_first(f)
}

/// Evaluate one condition.
pub fn check_condition(frame: &Frame, rel: &ConsequenceRelation, an: &Analysis, id: ConditionId) -> ConditionReport {
    let d = frame.family();
    let n = d.len();
    let t = |k: usize| rel.at(k);
    let witness = match id {
        ConditionId::C0 => None,
        ConditionId::C1 | ConditionId::C2 | ConditionId::C11 => first_k(n, |k| {
            let w = Witness::gamma(k);
            violated(id, frame, rel, an, &w).then_some(w)
        }),
        ConditionId::C3 | ConditionId::C4 | ConditionId::C9 | ConditionId::C10 => {
            first_k(n, |g| (0..n).map(|j| Witness::pair(g, j)).find(|w| violated(id, frame, rel, an, w)))
        }
        ConditionId::C5 | ConditionId::C12 => {
            let f = if id == ConditionId::C5 { &an.mt } else { &an.mth };
            let s = sharp_sets(frame, f);
            first_k(n, |k| {
                let lhs = if id == ConditionId::C5 { t(k).clone() } else { frame.theory(an.y[k]) };
                (lhs != frame.theory(s[k])).then(|| Witness::gamma(k))
            })
        }
        ConditionId::C6 => first_k(n, |k| {
            let x = an.x[k];
            let mut betas = frame.theory(x);
            betas.difference_with(t(k));
            betas.ones().find_map(|b| {
                let mut hit = frame.neg_theory(x.intersection(frame.neg(b)));
                hit.intersect_with(t(k));
                hit.ones().next().map(|a| Witness::formulas(k, a, Some(b)))
            })
        }),
        ConditionId::C7 => first_k(n, |k| {
            let x = an.x[k];
            let u = frame.universe();
            let mut alphas = frame.theory(x);
            alphas.difference_with(t(k));
            alphas.ones().find_map(|a| {
                let mut betas = frame.theory(x.intersection(frame.neg(a)));
                betas.difference_with(t(k));
                betas.ones().find_map(|b| {
                    let or = u.id_of(u.get(a).or(u.get(b)))?;
                    t(k).contains(or).then(|| Witness::formulas(k, a, Some(b)))
                })
            })
        }),
        ConditionId::C8 => first_k(n, |k| {
            let mut hit = frame.neg_theory(an.x[k]);
            hit.intersect_with(t(k));
            hit.ones().next().map(|a| Witness::formulas(k, a, None))
        }),
        ConditionId::SystemP => return check_system_p(frame, rel),
        ConditionId::Klm => return check_klm(frame),
    };
    ConditionReport::new(frame, id, witness)
}

/// Evaluate a list of conditions with one shared [`Analysis`].
pub fn check_conditions(frame: &Frame, rel: &ConsequenceRelation, ids: &[ConditionId]) -> Vec<ConditionReport> {
    let an = Analysis::new(frame, rel);
    ids.iter().map(|&id| check_condition(frame, rel, &an, id)).collect()
}

/// True if every listed condition passes.
pub fn all_pass(frame: &Frame, rel: &ConsequenceRelation, an: &Analysis, ids: &[ConditionId]) -> bool {
    ids.iter().all(|&id| check_condition(frame, rel, an, id).pass)
}

const P_RULES: [&str; 6] =
    ["Reflexivity", "LeftLogicalEquivalence", "RightWeakening", "Cut", "CautiousMonotonicity", "Or"];

struct SingletonView<'a> {
    frame: &'a Frame,
    rel: &'a ConsequenceRelation,
    row_of: Vec<Option<usize>>,
}

impl<'a> SingletonView<'a> {
    fn new(frame: &'a Frame, rel: &'a ConsequenceRelation) -> Self {
        let row_of = frame.universe().ids().map(|a| frame.family().index_of(frame.pos(a))).collect();
        SingletonView { frame, rel, row_of }
    }

    fn row(&self, a: FpId) -> Option<&FingerprintSet> {
        self.row_of[a].map(|k| self.rel.at(k))
    }

    fn holds(&self, a: FpId, b: FpId) -> bool {
        self.row(a).is_some_and(|r| r.contains(b))
    }

    fn op(&self, a: FpId, b: FpId, f: fn(Fingerprint, Fingerprint) -> Fingerprint) -> Option<FpId> {
        let u = self.frame.universe();
        u.id_of(f(u.get(a), u.get(b)))
    }

    fn valid(&self, fp: Fingerprint) -> bool {
        fp.pos == self.frame.full_set()
    }

    fn implies(&self, a: FpId, b: FpId) -> bool {
        let u = self.frame.universe();
        self.valid(u.get(a).swap().or(u.get(b)))
    }

    fn equivalent(&self, a: FpId, b: FpId) -> bool {
        let u = self.frame.universe();
        let (fa, fb) = (u.get(a), u.get(b));
        self.valid(fa.swap().or(fb).and(fb.swap().or(fa)))
    }

    /// First `c` violating the rule at `(a, b)`.
    fn rule_violation(&self, rule: usize, a: FpId, b: FpId) -> Option<FpId> {
        let u = self.frame.universe();
        let outside = |sub: Option<&FingerprintSet>, sup: Option<&FingerprintSet>| -> Option<FpId> {
            let sub = sub?;
            match sup {
                Some(sup) => sub.difference(sup).next(),
                None => None,
            }
        };
        match rule {
            0 => (a == b && !self.holds(a, a)).then_some(a),
            1 => {
                if self.equivalent(a, b) {
                    outside(self.row(a), self.row(b))
                } else {
                    None
                }
            }
            2 => {
                if self.implies(a, b) {
                    u.ids().find(|&c| self.holds(c, a) && !self.holds(c, b))
                } else {
                    None
                }
            }
            3 => {
                let ab = self.op(a, b, Fingerprint::and)?;
                if self.holds(a, b) {
                    outside(self.row(ab), self.row(a))
                } else {
                    None
                }
            }
            4 => {
                let ab = self.op(a, b, Fingerprint::and)?;
                if self.holds(a, b) {
                    outside(self.row(a), self.row(ab))
                } else {
                    None
                }
            }
            5 => {
                let aob = self.op(a, b, Fingerprint::or)?;
                let (ra, rb) = (self.row(a)?, self.row(b)?);
                let mut both = ra.clone();
                both.intersect_with(rb);
                outside(Some(&both), self.row(aob))
            }
            _ => None,
        }
    }
}

fn system_p_violated(frame: &Frame, rel: &ConsequenceRelation, w: &Witness) -> bool {
    let view = SingletonView::new(frame, rel);
    let Some(rule) = w.rule.and_then(|r| P_RULES.iter().position(|x| *x == r)) else {
        return false;
    };
    let (a, b, c) = (w.alpha.unwrap_or(0), w.beta.unwrap_or(0), w.third.unwrap_or(0));
    match rule {
        0 => !view.holds(a, a),
        1 => view.equivalent(a, b) && view.holds(a, c) && !view.holds(b, c),
        2 => view.implies(a, b) && view.holds(c, a) && !view.holds(c, b),
        3 => {
            view.op(a, b, Fingerprint::and).is_some_and(|ab| view.holds(ab, c) && view.holds(a, b) && !view.holds(a, c))
        }
        4 => {
            view.op(a, b, Fingerprint::and).is_some_and(|ab| view.holds(a, b) && view.holds(a, c) && !view.holds(ab, c))
        }
        5 => view
            .op(a, b, Fingerprint::or)
            .is_some_and(|aob| view.holds(a, c) && view.holds(b, c) && !view.holds(aob, c)),
        _ => false,
    }
}

/// The six rules of system P on single-formula premises: `α |~ β` iff `β ∈ C|~({α})`.
pub fn check_system_p(frame: &Frame, rel: &ConsequenceRelation) -> ConditionReport {
    let view = SingletonView::new(frame, rel);
    let ids: Vec<FpId> = frame.universe().ids().collect();
    let witness = (0..P_RULES.len()).find_map(|rule| {
        ids.par_iter().find_map_first(|&a| {
            let bs: Box<dyn Iterator<Item = FpId>> =
                if rule == 0 { Box::new(std::iter::once(a)) } else { Box::new(ids.iter().copied()) };
            for b in bs {
                if let Some(c) = view.rule_violation(rule, a, b) {
                    return Some(Witness {
                        alpha: Some(a),
                        beta: Some(b),
                        third: Some(c),
                        rule: Some(P_RULES[rule]),
                        ..Default::default()
                    });
                }
            }
            None
        })
    });
    ConditionReport::new(frame, ConditionId::SystemP, witness)
}

fn klm_violated(frame: &Frame, w: &Witness) -> bool {
    let s = frame.structure();
    let u = frame.universe();
    let (Some(v), Some(a)) = (w.valuation, w.alpha) else { return false };
    let sat = |f: &Formula| s.eval_at(v, f).map(|x| x.is_designated()).unwrap_or(false);
    let fa = u.witness(a).clone();
    match (w.rule, w.beta) {
        (Some("KLM0"), _) => sat(&Formula::not(fa.clone())) == sat(&fa),
        (Some("KLM1"), Some(b)) => {
            let fb = u.witness(b).clone();
            sat(&Formula::or(fa.clone(), fb.clone())) != (sat(&fa) || sat(&fb))
        }
        _ => false,
    }
}

/// KLM0 and KLM1 by direct evaluation; KLM2 holds on finite structures.
pub fn check_klm(frame: &Frame) -> ConditionReport {
    let s = frame.structure();
    let u = frame.universe();
    let width = frame.width();
    let sat = |v: usize, f: &Formula| s.eval_at(v, f).map(|x| x.is_designated()).unwrap_or(false);
    let klm0 = u.ids().find_map(|a| {
        let f = u.witness(a);
        let nf = Formula::not(f.clone());
        (0..width).find(|&v| sat(v, &nf) == sat(v, f)).map(|v| Witness {
            alpha: Some(a),
            valuation: Some(v),
            rule: Some("KLM0"),
            ..Default::default()
        })
    });
    let witness = klm0.or_else(|| {
        let ids: Vec<FpId> = u.ids().collect();
        ids.par_iter().find_map_first(|&a| {
            let fa = u.witness(a);
            ids.iter().find_map(|&b| {
                let fb = u.witness(b);
                let or = Formula::or(fa.clone(), fb.clone());
                (0..width).find(|&v| sat(v, &or) != (sat(v, fa) || sat(v, fb))).map(|v| Witness {
                    alpha: Some(a),
                    beta: Some(b),
                    valuation: Some(v),
                    rule: Some("KLM1"),
                    ..Default::default()
                })
            })
        })
    });
    ConditionReport::new(frame, ConditionId::Klm, witness)
}

/// A failed structural law about the constructions, at `D`-index `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub gamma: usize,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "law `{}` fails at D#{}", self.law, self.gamma)
    }
}

fn law(ok: bool, name: &'static str, gamma: usize) -> Result<(), LawViolation> {
    if ok {
        Ok(())
    } else {
        Err(LawViolation { law: name, gamma })
    }
}

/// Laws of the layer decomposition; they hold for every relation.
pub fn check_layer_laws(frame: &Frame, rel: &ConsequenceRelation, k: usize) -> Result<(), LawViolation> {
    let t = rel.at(k);
    let dec = compute_m_layers(frame, rel, k);
    let count = frame.width() + 2;
    let raw = layer_sequence(frame, rel, k, count);
    let n = dec.n();
    let mut rem = dec.x;
    let mut rems = Vec::with_capacity(count);
    for m in &raw {
        rems.push(rem);
        rem = rem.difference(*m);
    }
    for i in 0..count {
        for j in 0..i {
            law(raw[i].intersection(raw[j]).is_empty(), "layers-disjoint", k)?;
        }
        if i + 1 < count {
            law(!raw[i].is_empty() || raw[i + 1].is_empty(), "empty-layer-persists", k)?;
        }
        let td_inside = frame.theory_d(rems[i]).is_subset(t);
        law(td_inside == raw[i].is_empty(), "layer-empty-iff-remainder-theory-inside", k)?;
        law((i < n) == !raw[i].is_empty(), "layers-nonempty-exactly-below-n", k)?;
    }
    law(n <= frame.width(), "layer-count-finite", k)?;
    law(raw[..n] == dec.layers[..], "layers-agree", k)?;
    let union = raw.iter().fold(ValuationSet::EMPTY, |a, m| a.union(*m));
    law(union == dec.m_plus, "m-plus-is-union", k)?;
    law(frame.theory_d(dec.x.difference(dec.m_plus)).is_subset(t), "final-remainder-theory-inside", k)
}

/// Laws of `β`, `F`, `H` for a relation satisfying `(|~6)`–`(|~8)` under A3.
pub fn check_beta_laws(frame: &Frame, rel: &ConsequenceRelation, an: &Analysis, k: usize) -> Result<(), LawViolation> {
    let t = rel.at(k);
    let dec = compute_m_layers(frame, rel, k);
    let x = dec.x;
    let beta = synth_beta(frame, rel, k, &dec).map_err(|_| LawViolation { law: "beta-exists", gamma: k })?;
    let mf = match &beta {
        Some(b) => {
            let fp = b.fingerprint;
            if let Some(id) = frame.universe().id_of(fp) {
                law(!t.contains(id), "beta-not-concluded", k)?;
            }
            law(frame.fingerprint(&b.formula).ok() == Some(fp), "beta-formula-matches", k)?;
            law(x.is_subset(fp.pos), "beta-covers-x", k)?;
            law(dec.m_plus.intersection(fp.neg).is_empty(), "beta-negation-misses-m-plus", k)?;
            law(x.difference(dec.m_plus).is_subset(fp.neg), "beta-negation-covers-rest", k)?;
            fp.neg
        }
        None => frame.full_set(),
    };
    let xf = x.intersection(mf);
    law(x.difference(dec.m_plus) == xf, "f-cuts-m-plus", k)?;
    law(frame.theory_d(xf) == *t, "relation-is-td-of-f", k)?;
    law(an.y[k] == xf, "h-equals-f", k)?;
    law(frame.theory_d(an.y[k]) == *t, "relation-is-td-of-h", k)
}

/// Laws linking a DP choice function to its discriminative relation.
/// `a2`: the structure satisfies A2; `cp`: `μ` is CP.
pub fn check_reconstruction_laws(
    frame: &Frame,
    mu: &ChoiceFunction,
    rel: &ConsequenceRelation,
    an: &Analysis,
    k: usize,
    a2: bool,
    cp: bool,
) -> Result<(), LawViolation> {
    let m = mu.at(k);
    let dec = compute_m_layers(frame, rel, k);
    let x = dec.x;
    law(m.is_subset(x), "choice-inside-x", k)?;
    law(dec.m_plus.intersection(m).is_empty(), "m-plus-avoids-choice", k)?;
    let mtc = frame.mod_set(&frame.theory_c(m));
    law(x.intersection(mtc) == m, "x-and-contradictions-give-choice", k)?;
    if !dec.m_plus.is_empty() {
        law(an.y[k] == m, "h-recovers-choice-when-layers", k)?;
    }
    if a2 {
        if dec.m_plus.is_empty() {
            let mg = frame.mod_set(&compute_g(frame, rel, k));
            law(mg == mtc, "g-matches-contradictions", k)?;
            law(x.is_subset(mg), "x-inside-g", k)?;
        }
        law(an.y[k] == m, "h-recovers-choice", k)?;
    }
    if cp {
        law(an.y[k] == m, "h-recovers-choice-cp", k)?;
    }
    Ok(())
}
