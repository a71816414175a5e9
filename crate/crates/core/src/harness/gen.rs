//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::{ChoiceFunction, PreferenceStructure};
use crate::modeltheory::{Frame, ValuationSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenFlags {
    pub force_transitive: bool,
    pub force_irreflexive: bool,
}

impl GenFlags {
    pub const STRICT_ORDER: GenFlags = GenFlags { force_transitive: true, force_irreflexive: true };
}

/// `k` states per valuation (state `s` is labelled `s % width`), each
/// ordered pair of states related with probability `density`. With both
/// flags set, edges only go down a random ranking so the result is a strict
/// order.
pub fn gen_preference_structure(
    seed: u64,
    width: usize,
    k: usize,
    density: f64,
    flags: GenFlags,
) -> PreferenceStructure {
    assert!(k >= 1, "at least one copy per valuation");
    let mut rng = rng(seed);
    let n = width * k;
    let mut r = PreferenceStructure::new(width, (0..n).map(|s| s % width).collect());
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(&mut rng);
    let acyclic = flags.force_transitive && flags.force_irreflexive;
    for s in 0..n {
        for t in 0..n {
            if rng.random_bool(density.clamp(0.0, 1.0)) && (!acyclic || rank[s] < rank[t]) {
                r.add_preference(s, t);
            }
        }
    }
    if flags.force_transitive {
        r.transitive_closure();
    }
    if flags.force_irreflexive {
        r.remove_reflexive();
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceMode {
    /// A random subset of each `V ∈ D`.
    Arbitrary,
    /// `μ_R` for a random preference structure.
    CoherentViaStructure,
}

pub fn gen_choice_function(seed: u64, frame: &Frame, mode: ChoiceMode) -> ChoiceFunction {
    match mode {
        ChoiceMode::Arbitrary => {
            let mut rng = rng(seed);
            ChoiceFunction::from_fn(frame, |v| v.intersection(ValuationSet::from_bits(rng.random::<u128>())))
        }
        ChoiceMode::CoherentViaStructure => {
            let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
            let k = rng.random_range(1..=2);
            let density = rng.random_range(0.05..0.5);
            gen_preference_structure(seed, frame.width(), k, density, GenFlags::default()).choice_function(frame)
        }
    }
}

/// Edge density for `seed`, spread over sparse and dense structures.
pub fn density_for(seed: u64) -> f64 {
    rng(seed.wrapping_mul(31).wrapping_add(7)).random_range(0.02..0.6)
}
