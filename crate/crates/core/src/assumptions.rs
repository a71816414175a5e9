//! Checks of the structural assumptions A1, A2 and A3 on a frame.

use std::fmt;

use rayon::prelude::*;

use crate::modeltheory::{FpId, Frame};
use crate::semantics::TruthValue;

/// A2 counterexample: `α ∉ T(V)`, `¬α ∉ T(V)`, yet `V ∩ M(α) ⊆ M(¬α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Witness {
    pub gamma: usize,
    pub alpha: FpId,
}

/// A3 counterexample at valuation `valuation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Witness {
    pub law: &'static str,
    pub alpha: FpId,
    pub beta: FpId,
    pub valuation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub a1: bool,
    pub a2: Option<A2Witness>,
    pub a3: Option<A3Witness>,
    /// The universe or `D` was truncated, so passes are not certified.
    pub sampled: bool,
}

impl AssumptionReport {
    pub fn a2_holds(&self) -> bool {
        self.a2.is_none()
    }

    pub fn a3_holds(&self) -> bool {
        self.a3.is_none()
    }
}

impl fmt::Display for AssumptionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A1={} A2={} A3={}", self.a1, self.a2_holds(), self.a3_holds())?;
        if self.sampled {
            f.write_str(" (sampled)")?;
        }
        Ok(())
    }
}

type Law = (&'static str, fn(TruthValue, TruthValue) -> (bool, bool));

/// Each law as `(lhs designated, rhs designated)` for values of `α`, `β`.
const LAWS: [Law; 5] = [
    ("or", |a, b| (a.or(b).is_designated(), a.is_designated() || b.is_designated())),
    ("and", |a, b| (a.and(b).is_designated(), a.is_designated() && b.is_designated())),
    ("double-negation", |a, _| (a.negate().negate().is_designated(), a.is_designated())),
    ("de-morgan-or", |a, b| (a.or(b).negate().is_designated(), a.negate().and(b.negate()).is_designated())),
    ("de-morgan-and", |a, b| (a.and(b).negate().is_designated(), a.negate().or(b.negate()).is_designated())),
];

/// Whether the A2 instance `(V = D[gamma], α)` is a violation.
pub fn a2_violated(frame: &Frame, w: &A2Witness) -> bool {
    let v = frame.family().get(w.gamma);
    let (pos, neg) = (frame.pos(w.alpha), frame.neg(w.alpha));
    !v.is_subset(pos) && !v.is_subset(neg) && v.intersection(pos).is_subset(neg)
}

/// Whether the A3 instance is a violation, evaluating `α ∘ β` on witness formulas.
pub fn a3_violated(frame: &Frame, w: &A3Witness) -> bool {
    let s = frame.structure();
    let u = frame.universe();
    let value = |id| s.eval_at(w.valuation, u.witness(id)).expect("universe witnesses use frame atoms");
    let Some((_, law)) = LAWS.iter().find(|(name, _)| *name == w.law) else { return false };
    let (lhs, rhs) = law(value(w.alpha), value(w.beta));
    lhs != rhs
}

/// A1 holds by construction. A2 ranges over `D × universe`. A3 is pointwise,
/// so it is checked over all pairs of values realised by universe members at
/// each valuation, which covers every pair of universe members.
pub fn check_assumptions(frame: &Frame) -> AssumptionReport {
    let d = frame.family();
    let u = frame.universe();
    let ids: Vec<FpId> = u.ids().collect();
    let a2 = (0..d.len())
        .into_par_iter()
        .find_map_first(|gamma| ids.iter().map(|&alpha| A2Witness { gamma, alpha }).find(|w| a2_violated(frame, w)));
    let s = frame.structure();
    let a3 = (0..frame.width()).into_par_iter().find_map_first(|v| {
        let mut realised: Vec<(TruthValue, FpId)> = Vec::new();
        for &id in &ids {
            let x = s.eval_at(v, u.witness(id)).expect("universe witnesses use frame atoms");
            if !realised.iter().any(|(y, _)| *y == x) {
                realised.push((x, id));
            }
        }
        for &(name, law) in &LAWS {
            for &(a, ia) in &realised {
                for &(b, ib) in &realised {
                    let (lhs, rhs) = law(a, b);
                    if lhs != rhs {
                        return Some(A3Witness { law: name, alpha: ia, beta: ib, valuation: v });
                    }
                }
            }
        }
        None
    });
    AssumptionReport { a1: true, a2, a3, sampled: !frame.is_exhaustive() }
}
