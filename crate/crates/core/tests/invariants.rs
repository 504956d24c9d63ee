use std::collections::HashSet;

use proptest::prelude::*;

use hpoly_core::descent::{build_descent_system, Direction};
use hpoly_core::hpoly::{
    eulerian, length_poly, permutahedron_h, simple_embedding_h, toric_poincare,
};
use hpoly_core::smooth::{enumerate_smooth_subsets, is_combinatorially_smooth};
use hpoly_core::weyl::BruhatOracle;
use hpoly_core::{CartanType, IntPoly, Limits, NodeSet, RootSystem, WeylElt, WeylGroup};

const TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A5", "B5", "C5", "D5",
];

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse::<CartanType>().unwrap())
}

/// A type of rank at most 5 with a proper subset of its nodes.
fn type_and_subset() -> impl Strategy<Value = (&'static str, NodeSet)> {
    prop::sample::select(TYPES).prop_flat_map(|t| {
        let n = t.parse::<CartanType>().unwrap().rank();
        (Just(t), 0u32..(1u32 << n) - 1).prop_map(|(t, bits)| (t, NodeSet::from_bits(bits)))
    })
}

fn smooth_type_and_subset() -> impl Strategy<Value = (&'static str, NodeSet)> {
    prop::sample::select(TYPES).prop_flat_map(|t| {
        let subsets = enumerate_smooth_subsets(&rs(t));
        (Just(t), prop::sample::select(subsets))
    })
}

/// Minimal element of `W_J x W_J`.
fn double_coset_min(g: &WeylGroup<'_>, x: &WeylElt, j: NodeSet) -> WeylElt {
    let mut cur = x.clone();
    loop {
        let right = j.iter().find(|&s| !cur.sends_positive(s));
        if let Some(s) = right {
            cur = g.right_mul_simple(&cur, s);
            continue;
        }
        let left = j
            .iter()
            .map(|s| g.left_mul_simple(s, &cur))
            .find(|y| y.length() < cur.length());
        match left {
            Some(y) => cur = y,
            None => return cur,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_factorises_w((t, j) in type_and_subset()) {
        let r = rs(t);
        let g = WeylGroup::new(&r);
        let q = g.quotient(j).unwrap();
        let wj = g.parabolic_subgroup(j).unwrap();
        prop_assert_eq!((q.len() * wj.len()) as u128, g.order());
        prop_assert!(q.elements().iter().all(|w| g.is_min_coset_rep(w, j)));
        let top = q.longest().length();
        prop_assert_eq!(q.elements().iter().filter(|w| w.length() == top).count(), 1);
        let lengths: Vec<u32> = q.elements().iter().map(|w| w.length()).collect();
        prop_assert!(lengths.windows(2).all(|p| p[0] <= p[1]));
        for w in q.elements() {
            prop_assert_eq!(g.count_inversions(w), w.length());
        }
    }

    #[test]
    fn descent_system_structure((t, j) in type_and_subset()) {
        let r = rs(t);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, j).unwrap();
        let mut seen = HashSet::new();
        for class in ds.classes() {
            let s = class.node;
            prop_assert!(!j.contains(s));
            for x in &class.elements {
                prop_assert!(ds.quotient().contains(x));
                prop_assert!(!x.is_identity());
                prop_assert!(seen.insert(x.clone()), "classes overlap");
                prop_assert_eq!(double_coset_min(&g, x, j), g.simple(s));
            }
            let commutes = r.dynkin().attached_in(s, j).is_empty();
            prop_assert_eq!(class.delta == Some(1), commutes);
        }
        let stats = ds.nu_stats();
        let last = ds.quotient().len() - 1;
        prop_assert_eq!(stats.nu_plain(0) as usize, ds.descent_set_len());
        prop_assert_eq!(stats.nu_plain(last), 0);
        for (k, w) in ds.quotient().elements().iter().enumerate() {
            for (c, class) in ds.classes().iter().enumerate() {
                let ascents = class
                    .elements
                    .iter()
                    .filter(|x| ds.ascent_descent(w, x).unwrap() == Direction::Ascent)
                    .count();
                let descents = class
                    .elements
                    .iter()
                    .filter(|x| ds.ascent_descent(w, x).unwrap() == Direction::Descent)
                    .count();
                prop_assert_eq!(ascents as u32, stats.nu[k][c]);
                prop_assert_eq!(ascents + descents, class.elements.len());
            }
        }
        let plain = IntPoly::from_exponents((0..stats.len()).map(|k| stats.nu_plain(k)));
        prop_assert_eq!(plain.eval_i64(1), (ds.quotient().len() as i64).into());
    }

    #[test]
    fn smooth_verdicts((t, j) in type_and_subset()) {
        let r = rs(t);
        let v = is_combinatorially_smooth(&r, j).unwrap();
        prop_assert_eq!(v.smooth, v.violations.is_empty());
        if v.smooth {
            let g = WeylGroup::new(&r);
            let ds = build_descent_system(&g, j).unwrap();
            for class in ds.classes() {
                prop_assert!(ds.delta(class.node).is_ok());
            }
        }
    }

    #[test]
    fn simple_embedding_invariants((t, j) in smooth_type_and_subset()) {
        let r = rs(t);
        let g = WeylGroup::new(&r);
        let h = simple_embedding_h(&g, j).unwrap();
        let size = g.quotient(j).unwrap().len() as i64;
        prop_assert!(h.h.is_palindromic());
        prop_assert!(!h.h.has_negative_coefficient());
        prop_assert_eq!(h.dimension as usize, r.root_count() + r.rank());
        prop_assert_eq!(h.euler_characteristic.clone(), (size * size).into());
        let (first, second) = h.factors.clone().unwrap();
        prop_assert!(first.is_palindromic());
        prop_assert_eq!(second, length_poly(&g, j).unwrap());
        prop_assert_eq!(h.poincare.clone(), h.h.substitute_square());
        let toric = toric_poincare(&g, j).unwrap();
        prop_assert_eq!(toric.eval_i64(1), size.into());
    }

    #[test]
    fn shortcut_matches_bruhat((t, j) in type_and_subset()) {
        let r = rs(t);
        let g = WeylGroup::new(&r);
        prop_assume!(g.order() <= 1200);
        let oracle = BruhatOracle::new(&g, 1200).unwrap();
        let ds = build_descent_system(&g, j).unwrap();
        for w in ds.quotient().elements() {
            for x in ds.descent_set() {
                let wr = g.multiply(w, x);
                let ascent = wr != *w && oracle.leq(w, &wr);
                let proj = g.min_coset_rep(&wr, j);
                let descent = proj != *w && oracle.leq(&proj, w);
                prop_assert!(ascent != descent);
                prop_assert_eq!(ds.ascent_descent(w, x).unwrap() == Direction::Ascent, ascent);
            }
        }
    }
}

#[test]
fn eulerian_equals_face_sum() {
    let lim = Limits::default();
    for n in 1..=8 {
        assert_eq!(
            eulerian(n, &lim).unwrap(),
            permutahedron_h(n, &lim).unwrap()
        );
    }
}

#[test]
fn two_variable_specialisation() {
    for n in 2..=6 {
        let r = rs(&format!("A{n}"));
        let g = WeylGroup::new(&r);
        let j = NodeSet::label_range(3, n);
        let ds = build_descent_system(&g, j).unwrap();
        let h2 = ds.two_variable_euler().unwrap();
        assert_eq!(h2.specialize(2, 2), toric_poincare(&g, j).unwrap());
        let one = num_bigint::BigInt::from(1);
        assert_eq!(h2.eval(&one, &one), (ds.quotient().len() as i64).into());
    }
}

#[test]
fn exceptional_quotients() {
    let e7 = rs("E7");
    let g = WeylGroup::new(&e7);
    let q = g.quotient(NodeSet::label_range(1, 6)).unwrap();
    assert_eq!(q.len(), 576);
    let e8 = rs("E8");
    let g8 = WeylGroup::new(&e8);
    let q8 = g8.quotient(NodeSet::label_range(1, 7)).unwrap();
    assert_eq!(q8.len(), 17280);
    let hist = q8.length_histogram();
    let n = hist.len();
    assert!((0..n).all(|k| hist[k] == hist[n - 1 - k]));
}
