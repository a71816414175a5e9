//! Preferential and preferential-discriminative consequence relations,
//! tabulated over `D`.

use std::fmt;
use std::str::FromStr;

use crate::choice::ChoiceFunction;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::modeltheory::{FingerprintSet, FpId, Frame, ValuationSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Γ |~ α` iff `μ(M(Γ)) ⊆ M(α)`.
    Plain,
    /// Additionally `μ(M(Γ)) ⊄ M(¬α)`.
    Discriminative,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Discriminative => "discriminative",
        }
    }

    /// Whether a formula with fingerprint `(pos, neg)` follows when `chosen` is selected.
    pub fn accepts(self, chosen: ValuationSet, pos: ValuationSet, neg: ValuationSet) -> bool {
        chosen.is_subset(pos) && (self == Mode::Plain || !chosen.is_subset(neg))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Mode::Plain),
            "discriminative" | "disc" => Ok(Mode::Discriminative),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// `C|~` for every `D`-class of premise sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceRelation {
    mode: Mode,
    table: Vec<FingerprintSet>,
    chosen: Option<Vec<ValuationSet>>,
}

impl ConsequenceRelation {
    /// Plain: `T(μ(V))`; discriminative: `Td(μ(V))`.
    pub fn induce(frame: &Frame, mu: &ChoiceFunction, mode: Mode) -> Self {
        let table = mu
            .table()
            .iter()
            .map(|&m| match mode {
                Mode::Plain => frame.theory(m),
                Mode::Discriminative => frame.theory_d(m),
            })
            .collect();
        ConsequenceRelation { mode, table, chosen: Some(mu.table().to_vec()) }
    }

    /// An arbitrary relation given by its table over `D`.
    pub fn from_table(mode: Mode, table: Vec<FingerprintSet>) -> Self {
        ConsequenceRelation { mode, table, chosen: None }
    }

    pub fn from_fn(frame: &Frame, mode: Mode, f: impl FnMut(ValuationSet) -> FingerprintSet) -> Self {
        Self::from_table(mode, frame.family().sets().iter().copied().map(f).collect())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn table(&self) -> &[FingerprintSet] {
        &self.table
    }

    /// `C|~(Γ)` for `M(Γ) = D[k]`.
    pub fn at(&self, k: usize) -> &FingerprintSet {
        &self.table[k]
    }

    /// The choice function values, if the relation was induced from one.
    pub fn chosen(&self) -> Option<&[ValuationSet]> {
        self.chosen.as_deref()
    }

    /// `C|~(Γ)` for `M(Γ) = v`.
    pub fn consequences(&self, frame: &Frame, v: ValuationSet) -> Result<&FingerprintSet> {
        let k = frame.family().index_of(v).ok_or_else(|| Error::Undefinable(frame.show_set(v)))?;
        Ok(&self.table[k])
    }

    /// `Γ |~ φ`.
    pub fn holds(&self, frame: &Frame, gamma: impl IntoIterator<Item = FpId>, phi: FpId) -> Result<bool> {
        Ok(self.consequences(frame, frame.mod_ids(gamma))?.contains(phi))
    }

    /// `Γ |~ α` on formulas. Works for any `α` when the relation came from a
    /// choice function; otherwise `α` must lie in the universe.
    pub fn holds_formulas(&self, frame: &Frame, gamma: &[Formula], alpha: &Formula) -> Result<bool> {
        let v = frame.mod_formulas(gamma)?;
        let k = frame.family().index_of(v).ok_or_else(|| Error::Undefinable(frame.show_set(v)))?;
        let fp = frame.fingerprint(alpha)?;
        if let Some(chosen) = &self.chosen {
            return Ok(self.mode.accepts(chosen[k], fp.pos, fp.neg));
        }
        let id = frame.universe().id_of(fp).ok_or_else(|| Error::Undefinable(frame.show_set(fp.pos)))?;
        Ok(self.table[k].contains(id))
    }
}
