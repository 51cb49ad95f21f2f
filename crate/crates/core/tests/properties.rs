use std::collections::BTreeSet;

use bfcensus::boolfn::{BoolFn, Directions, Signature};
use bfcensus::enumerate::{enumerate_monotone, enumerate_unate, filter_nondegenerate, EnumOptions, FunctionSet};
use bfcensus::equiv::{all_perm_indexes, canonical_form, class_census_by_canonical, filter_classes, PermutationIndex};
use bfcensus::oracle::brute_force_census;
use bfcensus::property::Property;
use bfcensus::transforms::{binomial_transform, inverse_binomial_transform, CountSequence, Label};
use proptest::prelude::*;

fn any_fn(max_n: usize) -> impl Strategy<Value = BoolFn> {
    (0..=max_n).prop_flat_map(|n| {
        let bits = 1usize << n;
        proptest::collection::vec(any::<bool>(), bits).prop_map(|b| BoolFn::from_bits(&b).unwrap())
    })
}

fn fn_and_shift(max_n: usize) -> impl Strategy<Value = (BoolFn, usize)> {
    any_fn(max_n).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), 0..1usize << n)
    })
}

/// A non-degenerate unate function (a translate of a non-degenerate monotone one) and a shift.
fn nd_unate_and_shift(max_n: usize) -> impl Strategy<Value = (BoolFn, usize)> {
    (1..=max_n).prop_flat_map(|n| {
        let nd = filter_nondegenerate(&monotone(n)).into_items();
        let size = 1usize << n;
        (prop::sample::select(nd), 0..size, 0..size).prop_map(|(f, b, a)| (f.shift_index(b), a))
    })
}

fn fn_and_perm(max_n: usize) -> impl Strategy<Value = (BoolFn, Vec<usize>)> {
    any_fn(max_n).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn monotone(n: usize) -> FunctionSet {
    enumerate_monotone(n, &EnumOptions::default()).unwrap()
}

fn all_functions(n: usize) -> impl Iterator<Item = BoolFn> {
    (0..1u64 << (1u32 << n)).map(move |w| BoolFn::from_word(n, w).unwrap())
}

proptest! {
    #[test]
    fn negate_and_reverse_are_involutions(f in any_fn(8)) {
        prop_assert_eq!(f.negate().negate(), f.clone());
        prop_assert_eq!(f.reverse().reverse(), f.clone());
        prop_assert_eq!(f.dual().dual(), f.clone());
        prop_assert_eq!(f.negate().weight() + f.weight(), f.len() as u64);
    }

    #[test]
    fn dual_and_negation_keep_unateness(f in any_fn(6)) {
        prop_assert_eq!(f.dual().is_monotone(), f.is_monotone());
        prop_assert_eq!(f.dual().is_unate(), f.is_unate());
        prop_assert_eq!(f.negate().is_unate(), f.is_unate());
        prop_assert_eq!(f.dual().is_nondegenerate(), f.is_nondegenerate());
    }

    #[test]
    fn translation_keeps_unateness((f, a) in fn_and_shift(7)) {
        let g = f.shift_index(a);
        prop_assert_eq!(g.is_unate(), f.is_unate());
        prop_assert_eq!(g.weight(), f.weight());
        prop_assert_eq!(g.is_nondegenerate(), f.is_nondegenerate());
        prop_assert_eq!(g.shift_index(a), f);
    }

    #[test]
    fn signature_shifts_by_xor((f, a) in nd_unate_and_shift(5)) {
        let Signature::Vec(s) = f.signature().unwrap() else { unreachable!() };
        let Signature::Vec(t) = f.shift_index(a).signature().unwrap() else { unreachable!() };
        prop_assert_eq!(t, s.xor(&Directions::new(f.n(), a as u32)));
    }

    #[test]
    fn permutation_preserves_properties((f, p) in fn_and_perm(6)) {
        let pi = PermutationIndex::new(&p).unwrap();
        let g = pi.apply(&f).unwrap();
        for prop in Property::ALL {
            prop_assert_eq!(prop.holds(&g), prop.holds(&f), "{}", prop);
        }
        prop_assert_eq!(g.is_nondegenerate(), f.is_nondegenerate());
        prop_assert_eq!(canonical_form(&g), canonical_form(&f));
    }

    #[test]
    fn canonical_form_is_idempotent_and_minimal((f, p) in fn_and_perm(7)) {
        let c = canonical_form(&f);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert!(c <= f);
        let pi = PermutationIndex::new(&p).unwrap();
        prop_assert!(c <= pi.apply(&f).unwrap());
    }

    #[test]
    fn concat_splits_back(g in any_fn(6), h_bits in proptest::collection::vec(any::<bool>(), 64)) {
        let h = BoolFn::from_bits(&h_bits[..g.len()]).unwrap();
        let f = BoolFn::concat(&g, &h).unwrap();
        prop_assert_eq!(f.halves().unwrap(), (g.clone(), h.clone()));
        prop_assert_eq!(f.is_monotone(), g.is_monotone() && h.is_monotone() && g.leq(&h).unwrap());
    }

    #[test]
    fn text_form_round_trips(f in any_fn(9)) {
        let back: BoolFn = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn binomial_transform_round_trips(values in proptest::collection::vec(0u64..1_000_000, 0..12)) {
        let nd = CountSequence::from_u64(Label::nd(Property::Monotone), &values);
        let total = binomial_transform(&nd);
        prop_assert_eq!(inverse_binomial_transform(&total).unwrap().values, nd.values);
    }
}

#[test]
fn weight_symmetry_exhaustive() {
    for n in 0..=4 {
        let c = brute_force_census(n, false, false).unwrap();
        for p in [Property::Monotone, Property::Unate] {
            let w = c.weight_counts(Label::count(p));
            assert!(w.iter().eq(w.iter().rev()), "{p} n={n}: {w:?}");
        }
    }
}

#[test]
fn nondegenerate_unate_is_translated_monotone() {
    for n in 0..=4 {
        let c = brute_force_census(n, false, false).unwrap();
        assert_eq!(c.count(Label::nd(Property::Unate)), c.count(Label::nd(Property::Monotone)) << n);
        assert_eq!(c.count(Label::nd(Property::BalancedUnate)), c.count(Label::nd(Property::BalancedMonotone)) << n);
    }
}

#[test]
fn translation_orbits_are_distinct() {
    // the 2^n translates of distinct non-degenerate monotone functions never collide
    for n in 0..=4 {
        let nd = filter_nondegenerate(&monotone(n));
        let mut seen = BTreeSet::new();
        for f in nd.items() {
            for a in 0..1usize << n {
                assert!(seen.insert(f.shift_index(a)), "n={n} f={f} a={a}");
            }
        }
        let nd_unate: BTreeSet<BoolFn> = all_functions(n).filter(|f| f.is_unate() && f.is_nondegenerate()).collect();
        assert_eq!(seen, nd_unate, "n={n}");
    }
}

#[test]
fn degenerate_monotone_translates_do_collide() {
    // x_1 over two variables: shifting x_2 changes nothing
    let f: BoolFn = "0011".parse().unwrap();
    assert_eq!(f.shift_index(1), f);
}

#[test]
fn closures_exhaustive() {
    for n in 0..=4 {
        let unate: BTreeSet<BoolFn> = all_functions(n).filter(|f| f.is_unate()).collect();
        let mono: BTreeSet<BoolFn> = all_functions(n).filter(|f| f.is_monotone()).collect();
        for f in &unate {
            assert!(unate.contains(&f.negate()));
            assert!(unate.contains(&f.dual()));
        }
        for f in &mono {
            assert!(mono.contains(&f.dual()));
        }
    }
}

#[test]
fn every_unate_function_has_a_valid_signature() {
    for n in 0..=4 {
        let u = enumerate_unate(n, &EnumOptions::default()).unwrap();
        for s in &u.items {
            let f = &s.function;
            let Signature::Vec(d) = s.sig else {
                assert!(f.is_constant());
                continue;
            };
            // flipping the decreasing variables gives a monotone function
            let flip = !d.bits() & ((1u32 << n) - 1);
            assert!(f.shift_index(flip as usize).is_monotone(), "{f} {d}");
        }
    }
}

#[test]
fn filter_matches_canonical_up_to_5() {
    for n in 0..=5 {
        let m = monotone(n);
        let u = enumerate_unate(n, &EnumOptions::default()).unwrap().to_function_set();
        for set in [&m, &u] {
            for s in [set.clone(), filter_nondegenerate(set), bfcensus::enumerate::filter_balanced(set)] {
                let a = filter_classes(&s);
                let b = class_census_by_canonical(&s);
                assert_eq!(a.class_count, b.class_count, "{} n={n}", s.label());
                let canon: BTreeSet<BoolFn> = a.representatives.items().iter().map(canonical_form).collect();
                assert_eq!(canon.into_iter().collect::<Vec<_>>(), b.representatives.items(), "{} n={n}", s.label());
            }
        }
    }
}

#[test]
fn permutation_tables_form_a_group() {
    for n in 0..=4 {
        let perms = all_perm_indexes(n);
        let tables: BTreeSet<Vec<u32>> = perms.iter().map(|p| p.table().to_vec()).collect();
        assert_eq!(tables.len(), perms.len());
        for p in &perms {
            for q in &perms {
                assert!(tables.contains(p.then(q).unwrap().table()));
            }
        }
    }
}
