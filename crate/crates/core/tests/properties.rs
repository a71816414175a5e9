use std::cmp::Ordering;
use std::sync::OnceLock;

use proptest::prelude::*;

use prefcons::choice::mu_sharp;
use prefcons::conditions::{check_conditions, compute_h, ConditionId};
use prefcons::consequence::{ConsequenceRelation, Mode};
use prefcons::formula::parse;
use prefcons::harness::oracle::{oracle_h_with, FormulaEnumeration};
use prefcons::harness::{gen_choice_function, gen_preference_structure, ChoiceMode, GenFlags};
use prefcons::modeltheory::FingerprintSet;
use prefcons::{Fingerprint, Formula, Frame, Kind, SemanticStructure, ValuationSet};

fn frame(kind: Kind, atoms: usize) -> &'static Frame {
    static FRAMES: OnceLock<Vec<((Kind, usize), Frame)>> = OnceLock::new();
    let all = FRAMES.get_or_init(|| {
        let mut v = Vec::new();
        for kind in Kind::ALL {
            for n in 1..=2 {
                let atoms = &["p", "q"][..n];
                v.push(((kind, n), Frame::for_atoms(kind, atoms).unwrap()));
            }
        }
        v
    });
    &all.iter().find(|(k, _)| *k == (kind, atoms)).unwrap().1
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf =
        prop_oneof![Just(Formula::True), Just(Formula::False), Just(Formula::atom("p")), Just(Formula::atom("q")),];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::and(a, b)),
        ]
    })
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Classical), Just(Kind::Four), Just(Kind::J3)]
}

fn fp_set(frame: &Frame, picks: &[usize]) -> FingerprintSet {
    let mut s = frame.universe().empty_set();
    for &i in picks {
        s.insert(i % frame.universe().len());
    }
    s
}

fn pair(s: &SemanticStructure, f: &Formula) -> (ValuationSet, ValuationSet) {
    s.model_pair(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_roundtrip(f in formula()) {
        prop_assert_eq!(parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn canonical_order_is_total(a in formula(), b in formula()) {
        let (ra, rb) = (a.render(), b.render());
        let ab = a.canonical_cmp(&b);
        prop_assert_eq!(ab, b.canonical_cmp(&a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, ra == rb);
    }

    #[test]
    fn negation_and_de_morgan_laws(k in kind(), a in formula(), b in formula()) {
        let s = frame(k, 2).structure();
        let n = |f: &Formula| Formula::not(f.clone());
        prop_assert_eq!(pair(s, &n(&n(&a))), pair(s, &a));
        prop_assert_eq!(pair(s, &n(&Formula::or(a.clone(), b.clone()))), pair(s, &Formula::and(n(&a), n(&b))));
        prop_assert_eq!(pair(s, &n(&Formula::and(a.clone(), b.clone()))), pair(s, &Formula::or(n(&a), n(&b))));
    }

    #[test]
    fn fingerprint_pair_algebra(k in kind(), a in formula(), b in formula()) {
        let fr = frame(k, 2);
        let (fa, fb) = (fr.fingerprint(&a).unwrap(), fr.fingerprint(&b).unwrap());
        prop_assert_eq!(fr.fingerprint(&Formula::not(a.clone())).unwrap(), fa.swap());
        prop_assert_eq!(fr.fingerprint(&Formula::or(a.clone(), b.clone())).unwrap(), fa.or(fb));
        prop_assert_eq!(fr.fingerprint(&Formula::and(a, b)).unwrap(), fa.and(fb));
    }

    #[test]
    fn classical_negation_flips_satisfaction(a in formula()) {
        let s = frame(Kind::Classical, 2).structure();
        let (pos, neg) = pair(s, &a);
        prop_assert_eq!(neg, pos.complement(s.len()));
    }

    #[test]
    fn j3_pos_and_neg_cover(a in formula()) {
        let s = frame(Kind::J3, 2).structure();
        let (pos, neg) = pair(s, &a);
        prop_assert_eq!(pos.union(neg), s.full_set());
    }

    #[test]
    fn model_theory_identities(
        k in kind(),
        g in prop::collection::vec(any::<usize>(), 0..5),
        d in prop::collection::vec(any::<usize>(), 0..5),
    ) {
        let fr = frame(k, 2);
        let (gs, ds) = (fp_set(fr, &g), fp_set(fr, &d));
        let mut union = gs.clone();
        union.union_with(&ds);
        prop_assert_eq!(fr.mod_set(&union), fr.mod_set(&gs).intersection(fr.mod_set(&ds)));
        let closure = fr.closure_of(&gs);
        prop_assert_eq!(&closure, &fr.theory(fr.mod_set(&gs)));
        prop_assert_eq!(fr.mod_set(&closure), fr.mod_set(&gs));
        prop_assert_eq!(gs.is_subset(&fr.closure_of(&ds)), fr.mod_set(&ds).is_subset(fr.mod_set(&gs)));
    }

    #[test]
    fn theory_splits_into_td_and_tc(k in kind(), bits in any::<u128>()) {
        let fr = frame(k, 2);
        let v = fr.full_set().intersection(ValuationSet::from_bits(bits));
        let (t, td, tc) = (fr.theory(v), fr.theory_d(v), fr.theory_c(v));
        prop_assert!(td.is_disjoint(&tc));
        let mut u = td.clone();
        u.union_with(&tc);
        prop_assert_eq!(u, t);
    }

    #[test]
    fn definable_sets_are_fixed_points(k in kind(), pick in any::<usize>()) {
        let fr = frame(k, 2);
        let v = fr.family().get(pick % fr.family().len());
        prop_assert_eq!(fr.mod_set(&fr.theory(v)), v);
    }

    #[test]
    fn structures_induce_coherent_choice(k in kind(), seed in any::<u64>(), copies in 1usize..3, density in 0.0f64..0.7) {
        let fr = frame(k, 1);
        let mu = gen_preference_structure(seed, fr.width(), copies, density, GenFlags::default()).choice_function(fr);
        prop_assert!(mu.is_choice());
        prop_assert!(mu.is_coherent());
    }

    #[test]
    fn smooth_strict_orders_are_locally_monotonic(k in kind(), seed in any::<u64>(), copies in 1usize..3, density in 0.0f64..0.7) {
        let fr = frame(k, 1);
        let r = gen_preference_structure(seed, fr.width(), copies, density, GenFlags::STRICT_ORDER);
        prop_assert!(r.is_transitive() && r.is_irreflexive());
        prop_assume!(r.is_smooth(fr.family().sets()));
        let mu = r.choice_function(fr);
        prop_assert!(mu.is_coherent());
        prop_assert!(mu.is_locally_monotonic());
    }

    #[test]
    fn mu_sharp_is_coherent_choice(k in kind(), bits in prop::collection::vec(any::<u128>(), 48)) {
        let fr = frame(k, 2);
        let f: Vec<ValuationSet> = (0..fr.family().len()).map(|i| ValuationSet::from_bits(bits[i % bits.len()])).collect();
        let mu = mu_sharp(fr, &f);
        prop_assert!(mu.is_choice());
        prop_assert!(mu.is_coherent());
    }

    #[test]
    fn mu_sharp_preserves_theories(k in kind(), seed in any::<u64>()) {
        let fr = frame(k, 1);
        let mu = gen_choice_function(seed, fr, ChoiceMode::CoherentViaStructure);
        let f: Vec<ValuationSet> = mu.table().iter().map(|&m| fr.mod_set(&fr.theory(m))).collect();
        let sharp = mu_sharp(fr, &f);
        for (k, fv) in f.iter().enumerate() {
            prop_assert_eq!(*fv, fr.mod_set(&fr.theory(sharp.at(k))));
        }
    }

    #[test]
    fn plain_relations_are_supraclassical(k in kind(), seed in any::<u64>()) {
        let fr = frame(k, 2);
        let mu = gen_choice_function(seed, fr, ChoiceMode::CoherentViaStructure);
        let rel = ConsequenceRelation::induce(fr, &mu, Mode::Plain);
        for (i, v) in fr.family().iter() {
            let t = rel.at(i);
            prop_assert!(fr.theory(v).is_subset(t));
            let gamma = fr.family().witness(i);
            prop_assert!(gamma.iter().all(|&g| t.contains(g)));
        }
    }

    #[test]
    fn discriminative_relations_never_hold_both_sides(k in kind(), seed in any::<u64>(), coherent in any::<bool>()) {
        let fr = frame(k, 2);
        let mode = if coherent { ChoiceMode::CoherentViaStructure } else { ChoiceMode::Arbitrary };
        let mu = gen_choice_function(seed, fr, mode);
        let rel = ConsequenceRelation::induce(fr, &mu, Mode::Discriminative);
        for i in 0..fr.family().len() {
            let t = rel.at(i);
            for phi in t.ones() {
                let swap = fr.universe().id_of(fr.universe().get(phi).swap()).unwrap();
                prop_assert!(!t.contains(swap));
            }
            prop_assert!(mu.at(i).is_subset(fr.family().get(i).intersection(fr.mod_set(t))));
        }
    }

    #[test]
    fn discriminative_soundness_and_fixed_point(k in kind(), seed in any::<u64>()) {
        let fr = frame(k, 1);
        let mu = gen_choice_function(seed, fr, ChoiceMode::CoherentViaStructure);
        let rel = ConsequenceRelation::induce(fr, &mu, Mode::Discriminative);
        let reports = check_conditions(fr, &rel, &[ConditionId::C6, ConditionId::C7, ConditionId::C8]);
        prop_assert!(reports.iter().all(|r| r.pass), "{:?}", reports);
        for i in 0..fr.family().len() {
            let h = compute_h(fr, &rel, i);
            prop_assert_eq!(&fr.theory_d(h.model), rel.at(i));
        }
    }

    #[test]
    fn discriminative_reconstruction_recovers_dp_choice(seed in any::<u64>()) {
        let fr = frame(Kind::J3, 1);
        let mu = gen_choice_function(seed, fr, ChoiceMode::CoherentViaStructure);
        prop_assume!(mu.is_dp(fr));
        let rel = ConsequenceRelation::induce(fr, &mu, Mode::Discriminative);
        for i in 0..fr.family().len() {
            prop_assert_eq!(compute_h(fr, &rel, i).model, mu.at(i));
        }
    }
}

fn h_agreement(fr: &Frame, depth: usize) -> (bool, usize, usize) {
    let en = FormulaEnumeration::new(fr, depth).unwrap();
    let (mut not_subset, mut unequal) = (0, 0);
    for seed in 0..6 {
        let mu = gen_choice_function(seed, fr, ChoiceMode::CoherentViaStructure);
        let rel = ConsequenceRelation::induce(fr, &mu, Mode::Discriminative);
        for k in 0..fr.family().len() {
            let ours = compute_h(fr, &rel, k).set;
            let oracle = oracle_h_with(fr, &rel, k, &en);
            let ids: Vec<_> = oracle.fingerprints.iter().map(|f| fr.universe().id_of(*f).unwrap()).collect();
            let subset = ids.iter().all(|&i| ours.contains(i));
            not_subset += usize::from(!subset);
            unequal += usize::from(!subset || ids.len() != ours.count_ones(..));
        }
    }
    (en.covers(fr), not_subset, unequal)
}

#[test]
fn h_oracle_agrees_once_enumeration_covers() {
    for (kind, atoms, depth) in [(Kind::Four, 1, 2), (Kind::J3, 2, 4), (Kind::Four, 2, 4)] {
        let (covers, _, unequal) = h_agreement(frame(kind, atoms), depth);
        assert!(covers, "{kind}/{atoms} depth {depth}");
        assert_eq!(unequal, 0, "{kind}/{atoms} depth {depth}");
    }
}

/// A truncated enumeration can start H from a larger model set, where a
/// formula is in Td although it is in Tc of the true set.
#[test]
fn truncated_h_oracle_can_overshoot() {
    let (covers, not_subset, _) = h_agreement(frame(Kind::J3, 2), 1);
    assert!(!covers);
    assert!(not_subset > 0);
}

#[test]
fn non_classical_kinds_break_negation_flip() {
    for k in [Kind::Four, Kind::J3] {
        let s = frame(k, 1).structure();
        let (pos, neg) = pair(s, &Formula::atom("p"));
        assert!(!pos.intersection(neg).is_empty() || pos.union(neg) != s.full_set(), "{k}");
    }
}

#[test]
fn fingerprint_swap_is_involutive() {
    let f = Fingerprint::new(ValuationSet::from_bits(0b0110), ValuationSet::from_bits(0b1100));
    assert_eq!(f.swap().swap(), f);
}
