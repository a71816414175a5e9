//! The Nixon diamond over classical and FOUR valuations.

use crate::choice::PreferenceStructure;
use crate::consequence::{ConsequenceRelation, Mode};
use crate::error::Result;
use crate::formula::{parse, Formula};
use crate::modeltheory::{cap_from_env, Frame, SAMPLED_UNIVERSE};
use crate::semantics::{Kind, SemanticStructure};

pub const NIXON_ATOMS: [&str; 3] = ["p", "q", "r"];

/// `(premises, conclusion, expected)`.
pub type Query = (&'static [&'static str], &'static str, bool);

pub const NIXON_CLASSICAL_QUERIES: &[Query] =
    &[(&["r"], "!p", true), (&["r", "p"], "!p", false), (&["q"], "p", true), (&["q", "!p"], "p", false)];

pub const NIXON_FOUR_QUERIES: &[Query] = &[
    (&["r"], "!p", true),
    (&["r", "p"], "!p", false),
    (&["q"], "p", true),
    (&["q", "!p"], "p", false),
    (&["p", "!p", "q"], "p", true),
    (&["p", "!p", "q"], "!p", true),
    (&["p", "!p", "q"], "q", true),
    (&["p", "!p", "q"], "!q", false),
    (&["q", "r"], "p", true),
    (&["q", "r"], "!p", true),
    (&["q", "r"], "q", true),
    (&["q", "r"], "!q", false),
    (&["q", "r"], "r", true),
    (&["q", "r"], "!r", false),
    (&["!r", "r | q"], "q", false),
];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub frame: Frame,
    pub preference: PreferenceStructure,
    pub queries: &'static [Query],
}

impl Fixture {
    pub fn relation(&self, mode: Mode) -> ConsequenceRelation {
        ConsequenceRelation::induce(&self.frame, &self.preference.choice_function(&self.frame), mode)
    }

    /// Each query with the answer of the plain relation.
    pub fn answers(&self) -> Result<Vec<(String, bool, bool)>> {
        let rel = self.relation(Mode::Plain);
        self.queries
            .iter()
            .map(|(gamma, alpha, expected)| {
                let premises = formulas(gamma)?;
                let got = rel.holds_formulas(&self.frame, &premises, &parse(alpha)?)?;
                Ok((format!("{{{}}} |~ {alpha}", gamma.join(", ")), *expected, got))
            })
            .collect()
    }
}

fn formulas(items: &[&str]) -> Result<Vec<Formula>> {
    items.iter().map(|s| Ok(parse(s)?)).collect()
}

/// `v ≺ w` iff `r` holds in both and `p` is normal in `v` only, or `q` holds
/// in both and `p` is normal in `v` only, for the respective classes.
pub fn nixon_classical() -> Result<Fixture> {
    let frame = Frame::for_atoms(Kind::Classical, &NIXON_ATOMS)?;
    let s = frame.structure().clone();
    let sat = |v: usize, a: usize| s.valuations()[v].get(a).is_designated();
    let (p, q, r) = (0, 1, 2);
    let preference = PreferenceStructure::from_relation(frame.width(), |v, w| {
        (sat(v, r) && !sat(v, p) && sat(w, r) && sat(w, p)) || (sat(v, q) && sat(v, p) && sat(w, q) && !sat(w, p))
    });
    Ok(Fixture { frame, preference, queries: NIXON_CLASSICAL_QUERIES })
}

/// The FOUR variant over 64 valuations. The full clone is too large, so the
/// frame is sampled around every query formula.
pub fn nixon_four() -> Result<Fixture> {
    let structure = SemanticStructure::new(Kind::Four, &NIXON_ATOMS)?;
    let mut seeds = Vec::new();
    for (gamma, alpha, _) in NIXON_FOUR_QUERIES {
        seeds.extend(formulas(gamma)?);
        seeds.push(parse(alpha)?);
    }
    let frame = Frame::sampled(structure, &seeds, SAMPLED_UNIVERSE, cap_from_env())?;
    let s = frame.structure().clone();
    let one = |v: usize, a: usize| s.valuations()[v].get(a).is_designated();
    let zero = |v: usize, a: usize| s.valuations()[v].get(a).is_refuted();
    let (p, q, r) = (0, 1, 2);
    let preference = PreferenceStructure::from_relation(frame.width(), |v, w| {
        (one(v, r) && zero(v, p) && !one(v, p) && one(w, r) && !zero(w, p))
            || (one(v, q) && one(v, p) && !zero(v, p) && one(w, q) && !one(w, p))
    });
    Ok(Fixture { frame, preference, queries: NIXON_FOUR_QUERIES })
}
