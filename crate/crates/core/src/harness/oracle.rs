//! Brute-force oracles that avoid the fingerprint algebra.

use std::collections::BTreeMap;

use crate::consequence::ConsequenceRelation;
use crate::error::Result;
use crate::formula::Formula;
use crate::modeltheory::{Fingerprint, Frame, ValuationSet};

/// `μ^f(V)` by scanning each `v ∈ V` against every `W ∈ D`.
pub fn oracle_mu_sharp(frame: &Frame, f: &[ValuationSet], v: ValuationSet) -> ValuationSet {
    let d = frame.family().sets();
    let mut out = ValuationSet::EMPTY;
    for x in v.iter() {
        let mut keep = true;
        for (w, fw) in d.iter().zip(f) {
            if w.contains(x) && w.is_subset(v) && !fw.contains(x) {
                keep = false;
                break;
            }
        }
        if keep {
            out = out.with(x);
        }
    }
    out
}

/// Formulas up to a depth, one representative per `(M(α), M(¬α))`, with
/// model pairs computed by evaluating each formula.
#[derive(Clone, Debug)]
pub struct FormulaEnumeration {
    pub depth: usize,
    pub formulas: BTreeMap<(u128, u128), Formula>,
}

impl FormulaEnumeration {
    pub fn new(frame: &Frame, depth: usize) -> Result<Self> {
        let s = frame.structure();
        let mut formulas = BTreeMap::new();
        let mut frontier = Vec::new();
        let add = |f: Formula, formulas: &mut BTreeMap<(u128, u128), Formula>, frontier: &mut Vec<Formula>| {
            let (pos, neg) = s.model_pair(&f)?;
            if let std::collections::btree_map::Entry::Vacant(e) = formulas.entry((pos.bits(), neg.bits())) {
                e.insert(f.clone());
                frontier.push(f);
            }
            Ok::<_, crate::error::Error>(())
        };
        for base in [Formula::True, Formula::False] {
            add(base, &mut formulas, &mut frontier)?;
        }
        for a in s.atoms() {
            add(Formula::atom(a.clone()), &mut formulas, &mut frontier)?;
        }
        for _ in 0..depth {
            let old: Vec<Formula> = formulas.values().cloned().collect();
            let fresh = std::mem::take(&mut frontier);
            for a in &fresh {
                add(Formula::not(a.clone()), &mut formulas, &mut frontier)?;
                for b in &old {
                    add(Formula::or(a.clone(), b.clone()), &mut formulas, &mut frontier)?;
                    add(Formula::or(b.clone(), a.clone()), &mut formulas, &mut frontier)?;
                    add(Formula::and(a.clone(), b.clone()), &mut formulas, &mut frontier)?;
                    add(Formula::and(b.clone(), a.clone()), &mut formulas, &mut frontier)?;
                }
            }
            if frontier.is_empty() {
                break;
            }
        }
        Ok(FormulaEnumeration { depth, formulas })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// Every universe fingerprint is reached and nothing outside it.
    pub fn covers(&self, frame: &Frame) -> bool {
        let u = frame.universe();
        self.formulas.len() == u.len()
            && self.formulas.keys().all(|&(p, n)| {
                u.id_of(Fingerprint::new(ValuationSet::from_bits(p), ValuationSet::from_bits(n))).is_some()
            })
    }
}

/// `H(Γ)` computed over enumerated formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HOracle {
    pub fingerprints: Vec<Fingerprint>,
    pub coverage_complete: bool,
}

pub fn oracle_h_formula_enum(frame: &Frame, rel: &ConsequenceRelation, k: usize, depth: usize) -> Result<HOracle> {
    let en = FormulaEnumeration::new(frame, depth)?;
    Ok(oracle_h_with(frame, rel, k, &en))
}

/// As [`oracle_h_formula_enum`] with a prepared enumeration.
pub fn oracle_h_with(frame: &Frame, rel: &ConsequenceRelation, k: usize, en: &FormulaEnumeration) -> HOracle {
    let s = frame.structure();
    let u = frame.universe();
    let t = rel.at(k);
    let sat = |v: usize, f: &Formula| s.eval_at(v, f).map(|x| x.is_designated()).unwrap_or(false);
    let concluded = |f: &Formula| {
        s.model_pair(f).ok().and_then(|(p, n)| u.id_of(Fingerprint::new(p, n))).is_some_and(|id| t.contains(id))
    };
    let formulas: Vec<&Formula> = en.formulas.values().collect();
    let mut z = frame.family().get(k);
    for f in &formulas {
        if concluded(f) {
            z = ValuationSet::from_indices(z.iter().filter(|&v| sat(v, f)));
        }
    }
    let mut h: BTreeMap<(u128, u128), Fingerprint> = BTreeMap::new();
    loop {
        let mut next = z;
        for beta in &formulas {
            let nb = Formula::not((*beta).clone());
            let in_t = z.iter().all(|v| sat(v, beta));
            let neg_in_t = z.iter().all(|v| sat(v, &nb));
            if in_t && !neg_in_t && !concluded(beta) {
                let (p, n) = s.model_pair(&nb).expect("enumerated formulas use frame atoms");
                h.insert((p.bits(), n.bits()), Fingerprint::new(p, n));
                next = ValuationSet::from_indices(next.iter().filter(|&v| sat(v, &nb)));
            }
        }
        if next == z {
            break;
        }
        z = next;
    }
    HOracle { fingerprints: h.into_values().collect(), coverage_complete: en.covers(frame) }
}
