//! Classical, FOUR and J3 semantic structures.
//!
//! A truth value is read as the subset of `{0, 1}` it contains: `f = {0}`,
//! `t = {1}`, `top = {0, 1}`, `bot = {}`. A valuation satisfies a formula
//! when `1` belongs to its value.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{is_atom_name, Formula};
use crate::valset::{ValuationSet, MAX_VALUATIONS};

/// Which semantic structure a [`SemanticStructure`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Classical,
    Four,
    J3,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Classical, Kind::Four, Kind::J3];

    /// The value domain, in canonical enumeration order.
    pub fn domain(self) -> &'static [TruthValue] {
        use TruthValue::*;
        match self {
            Kind::Classical => &[F, T],
            Kind::J3 => &[F, T, Top],
            Kind::Four => &[F, T, Top, Bot],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Four => "four",
            Kind::J3 => "j3",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classical" | "cl" => Ok(Kind::Classical),
            "four" | "4" => Ok(Kind::Four),
            "j3" => Ok(Kind::J3),
            _ => Err(Error::UnknownSemantics(s.to_string())),
        }
    }
}

/// A truth value. The derived order `f < t < top < bot` is the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    F,
    T,
    Top,
    Bot,
}

impl TruthValue {
    /// `1 ∈ v`.
    pub fn is_designated(self) -> bool {
        matches!(self, TruthValue::T | TruthValue::Top)
    }

    /// `0 ∈ v`.
    pub fn is_refuted(self) -> bool {
        matches!(self, TruthValue::F | TruthValue::Top)
    }

    pub fn from_membership(one: bool, zero: bool) -> TruthValue {
        match (one, zero) {
            (true, false) => TruthValue::T,
            (false, true) => TruthValue::F,
            (true, true) => TruthValue::Top,
            (false, false) => TruthValue::Bot,
        }
    }

    pub fn negate(self) -> TruthValue {
        TruthValue::from_membership(self.is_refuted(), self.is_designated())
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        TruthValue::from_membership(
            self.is_designated() || other.is_designated(),
            self.is_refuted() && other.is_refuted(),
        )
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        TruthValue::from_membership(
            self.is_designated() && other.is_designated(),
            self.is_refuted() || other.is_refuted(),
        )
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue::F => "f",
            TruthValue::T => "t",
            TruthValue::Top => "top",
            TruthValue::Bot => "bot",
        }
    }

    /// Parse a value symbol; `0`/`1` are accepted only for the classical kind.
    pub fn parse(s: &str, kind: Kind) -> Option<TruthValue> {
        let v = match s {
            "f" => TruthValue::F,
            "t" => TruthValue::T,
            "top" => TruthValue::Top,
            "bot" => TruthValue::Bot,
            "0" if kind == Kind::Classical => TruthValue::F,
            "1" if kind == Kind::Classical => TruthValue::T,
            _ => return None,
        };
        kind.domain().contains(&v).then_some(v)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An assignment of truth values to the structure's atoms, by atom position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<TruthValue>);

impl Valuation {
    pub fn values(&self) -> &[TruthValue] {
        &self.0
    }

    pub fn get(&self, atom: usize) -> TruthValue {
        self.0[atom]
    }
}

/// The complete finite valuation universe of one kind over a fixed atom list.
#[derive(Clone, Debug)]
pub struct SemanticStructure {
    kind: Kind,
    atoms: Vec<String>,
    valuations: Vec<Valuation>,
}

/// Enumerate every valuation of `kind` over `atoms`.
///
/// Valuation `i` assigns atom `k` the domain value with index
/// `(i / b^k) % b`, where `b` is the domain size: the last atom is the most
/// significant digit, so over `p, q, r` classically `v_4` is `r=1, q=0, p=0`.
pub fn enumerate_valuations(kind: Kind, atoms: &[String]) -> Vec<Valuation> {
    let domain = kind.domain();
    let base = domain.len();
    let count = base.pow(atoms.len() as u32);
    (0..count)
        .map(|mut i| {
            let values = (0..atoms.len())
                .map(|_| {
                    let d = domain[i % base];
                    i /= base;
                    d
                })
                .collect();
            Valuation(values)
        })
        .collect()
}

impl SemanticStructure {
    /// Build a structure; atoms are sorted and deduplicated.
    pub fn new<S: AsRef<str>>(kind: Kind, atoms: &[S]) -> Result<Self> {
        let mut atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().trim().to_string()).collect();
        if let Some(bad) = atoms.iter().find(|a| !is_atom_name(a)) {
            return Err(Error::InvalidAtom(bad.clone()));
        }
        atoms.sort();
        atoms.dedup();
        if atoms.is_empty() {
            return Err(Error::NoAtoms);
        }
        let count = (kind.domain().len() as f64).powi(atoms.len() as i32);
        if count > MAX_VALUATIONS as f64 {
            return Err(Error::TooManyValuations { count: count as usize, max: MAX_VALUATIONS });
        }
        let valuations = enumerate_valuations(kind, &atoms);
        Ok(SemanticStructure { kind, atoms, valuations })
    }

    /// Parse a comma-separated atom list such as `p,q,r`.
    pub fn from_atom_list(kind: Kind, list: &str) -> Result<Self> {
        let atoms: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::new(kind, &atoms)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }

    pub fn full_set(&self) -> ValuationSet {
        ValuationSet::full(self.len())
    }

    pub fn atom_index(&self, name: &str) -> Result<usize> {
        self.atoms.binary_search_by(|a| a.as_str().cmp(name)).map_err(|_| Error::UnknownAtom(name.to_string()))
    }

    /// Index of the valuation with the given per-atom values.
    pub fn index_of(&self, values: &[TruthValue]) -> usize {
        let domain = self.kind.domain();
        values
            .iter()
            .rev()
            .fold(0, |acc, v| acc * domain.len() + domain.iter().position(|d| d == v).expect("value outside domain"))
    }

    /// Value of `f` at valuation `v`, computed bottom-up.
    pub fn eval(&self, v: &Valuation, f: &Formula) -> Result<TruthValue> {
        Ok(match f {
            Formula::Atom(a) => v.get(self.atom_index(a)?),
            Formula::True => TruthValue::T,
            Formula::False => TruthValue::F,
            Formula::Not(c) => self.eval(v, c)?.negate(),
            Formula::Or(l, r) => self.eval(v, l)?.or(self.eval(v, r)?),
            Formula::And(l, r) => self.eval(v, l)?.and(self.eval(v, r)?),
        })
    }

    pub fn eval_at(&self, index: usize, f: &Formula) -> Result<TruthValue> {
        self.eval(&self.valuations[index], f)
    }

    pub fn satisfies(&self, v: &Valuation, f: &Formula) -> Result<bool> {
        Ok(self.eval(v, f)?.is_designated())
    }

    /// `(M(f), M(¬f))` by evaluation at every valuation.
    pub fn model_pair(&self, f: &Formula) -> Result<(ValuationSet, ValuationSet)> {
        let mut pos = ValuationSet::EMPTY;
        let mut neg = ValuationSet::EMPTY;
        for (i, v) in self.valuations.iter().enumerate() {
            let value = self.eval(v, f)?;
            if value.is_designated() {
                pos = pos.with(i);
            }
            if value.is_refuted() {
                neg = neg.with(i);
            }
        }
        Ok((pos, neg))
    }

    /// Parse `p=t q=top r=f` (spaces or commas), or `v<k>` / `#<k>` by index.
    pub fn parse_valuation(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        let bad = || Error::InvalidValuation(text.to_string());
        if let Some(idx) = text.strip_prefix('v').or_else(|| text.strip_prefix('#')) {
            if let Ok(i) = idx.parse::<usize>() {
                return if i < self.len() { Ok(i) } else { Err(bad()) };
            }
        }
        let mut values: Vec<Option<TruthValue>> = vec![None; self.atoms.len()];
        for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (atom, value) = item.split_once('=').ok_or_else(bad)?;
            let k = self.atom_index(atom.trim())?;
            let v = TruthValue::parse(value.trim(), self.kind).ok_or_else(bad)?;
            if values[k].replace(v).is_some() {
                return Err(bad());
            }
        }
        let values: Option<Vec<_>> = values.into_iter().collect();
        Ok(self.index_of(&values.ok_or_else(bad)?))
    }

    /// `p=t q=top r=f`.
    pub fn format_valuation(&self, index: usize) -> String {
        self.atoms
            .iter()
            .zip(self.valuations[index].values())
            .map(|(a, v)| format!("{a}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use TruthValue::*;

    fn structure(kind: Kind, atoms: &[&str]) -> SemanticStructure {
        SemanticStructure::new(kind, atoms).unwrap()
    }

    #[test]
    fn classical_enumeration_matches_nixon_table() {
        let s = structure(Kind::Classical, &["r", "q", "p"]);
        assert_eq!(s.len(), 8);
        // Rows of the r/q/p table: v_i has r as the high bit, p as the low bit.
        for i in 0..8 {
            let v = &s.valuations()[i];
            let bit = |name: &str| v.get(s.atom_index(name).unwrap()) == T;
            assert_eq!(bit("r"), i & 4 != 0);
            assert_eq!(bit("q"), i & 2 != 0);
            assert_eq!(bit("p"), i & 1 != 0);
        }
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(structure(Kind::Four, &["p"]).len(), 4);
        assert_eq!(structure(Kind::J3, &["p", "q"]).len(), 9);
        let four = structure(Kind::Four, &["p"]);
        let vals: Vec<_> = four.valuations().iter().map(|v| v.get(0)).collect();
        assert_eq!(vals, vec![F, T, Top, Bot]);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_indexable() {
        for kind in Kind::ALL {
            let s = structure(kind, &["a", "b"]);
            let set: std::collections::HashSet<_> = s.valuations().iter().collect();
            assert_eq!(set.len(), s.len());
            for (i, v) in s.valuations().iter().enumerate() {
                assert_eq!(s.index_of(v.values()), i);
            }
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Top.or(Bot), T);
        assert_eq!(Top.negate(), Top);
        assert_eq!(T.and(Top), Top);
        let s = structure(Kind::J3, &["p"]);
        let v = &s.valuations()[0];
        assert_eq!(v.get(0), F);
        assert!(s.satisfies(v, &parse("p | !p").unwrap()).unwrap());
    }

    #[test]
    fn satisfaction_is_paraconsistent_in_four() {
        let s = structure(Kind::Four, &["p"]);
        let top = &s.valuations()[2];
        assert!(s.satisfies(top, &parse("p").unwrap()).unwrap());
        assert!(s.satisfies(top, &parse("!p").unwrap()).unwrap());
        let c = structure(Kind::Classical, &["p"]);
        assert!(!c.satisfies(&c.valuations()[1], &parse("!p").unwrap()).unwrap());
    }

    #[test]
    fn constants_are_forced() {
        for kind in Kind::ALL {
            let s = structure(kind, &["p"]);
            for v in s.valuations() {
                assert_eq!(s.eval(v, &Formula::True).unwrap(), T);
                assert_eq!(s.eval(v, &Formula::False).unwrap(), F);
            }
        }
    }

    #[test]
    fn unknown_atom_is_an_error() {
        let s = structure(Kind::Classical, &["p"]);
        assert!(matches!(s.eval_at(0, &parse("q").unwrap()), Err(Error::UnknownAtom(a)) if a == "q"));
    }

    #[test]
    fn valuation_text_round_trips() {
        let s = structure(Kind::Four, &["p", "q", "r"]);
        for i in [0, 17, 63] {
            assert_eq!(s.parse_valuation(&s.format_valuation(i)).unwrap(), i);
        }
        assert_eq!(s.parse_valuation("v5").unwrap(), 5);
        assert_eq!(s.parse_valuation("p=top,q=f,r=bot").unwrap(), s.index_of(&[Top, F, Bot]));
        let c = structure(Kind::Classical, &["p", "q"]);
        assert_eq!(c.parse_valuation("p=1 q=0").unwrap(), 1);
        assert!(c.parse_valuation("p=top q=0").is_err());
        assert!(c.parse_valuation("p=1").is_err());
        assert!(structure(Kind::J3, &["p"]).parse_valuation("p=bot").is_err());
    }

    #[test]
    fn size_limit_enforced() {
        assert!(matches!(
            SemanticStructure::new(Kind::Four, &["a", "b", "c", "d"]),
            Err(Error::TooManyValuations { .. })
        ));
        assert!(SemanticStructure::new(Kind::J3, &["a", "b", "c", "d"]).is_ok());
        assert!(matches!(SemanticStructure::new::<&str>(Kind::J3, &[]), Err(Error::NoAtoms)));
        assert!(matches!(SemanticStructure::new(Kind::J3, &["P"]), Err(Error::InvalidAtom(_))));
    }

    #[test]
    fn j3_never_leaves_a_gap() {
        let s = structure(Kind::J3, &["p", "q"]);
        for f in ["p & !q", "!(p | q)", "p & !p", "q | false"] {
            let f = parse(f).unwrap();
            let (pos, neg) = s.model_pair(&f).unwrap();
            assert_eq!(pos.union(neg), s.full_set());
        }
    }
}
