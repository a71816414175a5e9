//! Bounded search for a structure representing a choice function.

use crate::choice::{ChoiceFunction, PreferenceStructure};
use crate::modeltheory::{Frame, ValuationSet};

/// Largest state count the search will enumerate partial orders on.
pub const MAX_STATES: usize = 6;

/// Largest state count for the search over arbitrary relations.
pub const MAX_RELATION_STATES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PreferenceStructure),
    NoneWithinBound,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Try every labelling with `0..=copies` states per valuation (at most
/// `max_states` states) and every strict partial order on those states.
pub fn search_representation(frame: &Frame, mu: &ChoiceFunction, copies: usize, max_states: usize) -> SearchOutcome {
    search_representation_where(frame, mu, copies, max_states, |_| true)
}

/// As [`search_representation`], accepting only structures satisfying `accept`.
pub fn search_representation_where(
    frame: &Frame,
    mu: &ChoiceFunction,
    copies: usize,
    max_states: usize,
    accept: impl Fn(&PreferenceStructure) -> bool,
) -> SearchOutcome {
    let max_states = max_states.min(MAX_STATES);
    for total in 0..=max_states {
        for mult in multiplicities(frame.width(), copies.max(1), total) {
            let target = Target::new(frame, mu, &mult);
            let mut found = None;
            let mut below = Vec::with_capacity(total);
            posets(&mut below, total, &mut |below: &[u8]| {
                if !target.represented_by(below) {
                    return false;
                }
                let r = target.structure(below);
                let ok = accept(&r);
                if ok {
                    found = Some(r);
                }
                ok
            });
            if let Some(r) = found {
                return SearchOutcome::Found(r);
            }
        }
    }
    SearchOutcome::NoneWithinBound
}

/// Try every labelling with `0..=copies` states per valuation (at most
/// `max_states`, capped at [`MAX_RELATION_STATES`]) and every binary
/// relation on those states, including cyclic and reflexive ones.
pub fn search_any_relation(frame: &Frame, mu: &ChoiceFunction, copies: usize, max_states: usize) -> SearchOutcome {
    for total in 0..=max_states.min(MAX_RELATION_STATES) {
        for mult in multiplicities(frame.width(), copies.max(1), total) {
            let target = Target::new(frame, mu, &mult);
            let mut below = vec![0u8; total];
            for edges in 0u32..(1 << (total * total)) {
                for (t, b) in below.iter_mut().enumerate() {
                    *b = (0..total).filter(|&s| edges >> (s * total + t) & 1 == 1).fold(0, |acc, s| acc | 1 << s);
                }
                if target.represented_by(&below) {
                    return SearchOutcome::Found(target.structure(&below));
                }
            }
        }
    }
    SearchOutcome::NoneWithinBound
}

/// A labelling of states together with the choice table to reproduce.
struct Target<'a> {
    width: usize,
    labels: Vec<usize>,
    /// Per `V ∈ D`, the states labelled inside `V`.
    state_masks: Vec<u8>,
    table: &'a [ValuationSet],
}

impl<'a> Target<'a> {
    fn new(frame: &Frame, mu: &'a ChoiceFunction, mult: &[usize]) -> Self {
        let labels: Vec<usize> = mult.iter().enumerate().flat_map(|(v, &m)| std::iter::repeat_n(v, m)).collect();
        let state_masks = frame
            .family()
            .sets()
            .iter()
            .map(|v| labels.iter().enumerate().filter(|(_, &l)| v.contains(l)).fold(0u8, |acc, (s, _)| acc | 1 << s))
            .collect();
        Target { width: frame.width(), labels, state_masks, table: mu.table() }
    }

    /// `below[t]` holds the states preferred to `t`.
    fn represented_by(&self, below: &[u8]) -> bool {
        self.state_masks.iter().zip(self.table).all(|(&states, &want)| {
            let chosen = (0..self.labels.len())
                .filter(|&t| states >> t & 1 == 1 && below[t] & states == 0)
                .fold(ValuationSet::EMPTY, |acc, t| acc.with(self.labels[t]));
            chosen == want
        })
    }

    fn structure(&self, below: &[u8]) -> PreferenceStructure {
        let mut r = PreferenceStructure::new(self.width, self.labels.clone());
        for (t, &mask) in below.iter().enumerate() {
            for s in 0..self.labels.len() {
                if mask >> s & 1 == 1 {
                    r.add_preference(s, t);
                }
            }
        }
        r
    }
}

fn multiplicities(width: usize, copies: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, copies: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=copies.min(left) {
            cur[i] = m;
            rec(i + 1, left - m, copies, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, total, copies, &mut vec![0; width], &mut out);
    out
}

/// Enumerate strict partial orders on `n` states as `below` masks, adding
/// one state at a time with a down-set `l` and an up-set `u`. Stops when
/// `visit` returns true.
fn posets(below: &mut Vec<u8>, n: usize, visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
    let m = below.len();
    if m == n {
        return visit(below);
    }
    let above =
        |b: &[u8], x: usize| -> u8 { (0..b.len()).filter(|&y| b[y] >> x & 1 == 1).fold(0u8, |acc, y| acc | 1 << y) };
    for l in 0u8..(1 << m) {
        if (0..m).any(|a| l >> a & 1 == 1 && below[a] & !l != 0) {
            continue;
        }
        for u in 0u8..(1 << m) {
            if l & u != 0 {
                continue;
            }
            let ok = (0..m).all(|b| u >> b & 1 == 0 || (above(below, b) & !u == 0 && l & !below[b] == 0));
            if !ok {
                continue;
            }
            let snapshot = below.clone();
            for (b, mask) in below.iter_mut().enumerate() {
                if u >> b & 1 == 1 {
                    *mask |= 1 << m;
                }
            }
            below.push(l);
            let stop = posets(below, n, visit);
            *below = snapshot;
            if stop {
                return true;
            }
        }
    }
    false
}
