use num_bigint::BigUint;
use proptest::prelude::*;

use dessinry::braid::{preset_gamma2_generators, preset_pure_generators};
use dessinry::enumeration::{count_transitive_tuples, enumerate, hall_count};
use dessinry::perm::{all_perms, factorial};
use dessinry::words::{FreeWord, Letter};
use dessinry::{MonodromyTuple, Perm};

fn perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// Random tuples satisfying the product constraint; transitivity is not forced.
fn tuple(n: usize, d: usize) -> impl Strategy<Value = MonodromyTuple> {
    prop::collection::vec(perm(d), n - 1).prop_map(move |mut perms| {
        let product = perms.iter().fold(Perm::identity(d), |acc, g| acc.then(g));
        perms.push(product.inverse());
        MonodromyTuple::new(perms).unwrap()
    })
}

fn any_tuple() -> impl Strategy<Value = MonodromyTuple> {
    (3usize..=5, 1usize..=6).prop_flat_map(|(n, d)| tuple(n, d))
}

fn transitive() -> impl Strategy<Value = MonodromyTuple> {
    any_tuple().prop_filter("transitive", |t| t.validate().is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent(t in transitive()) {
        let c = t.canonical_form().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical_form().unwrap(), c.clone());
        prop_assert!(t.isomorphic(&c).unwrap());
    }

    #[test]
    fn canonical_form_ignores_relabeling(
        (t, pi) in transitive().prop_flat_map(|t| { let d = t.d(); (Just(t), perm(d)) })
    ) {
        let s = t.relabel(&pi);
        prop_assert_eq!(s.canonical_form().unwrap(), t.canonical_form().unwrap());
        prop_assert_eq!(s.canonical_with_automorphisms().1, t.canonical_with_automorphisms().1);
    }

    #[test]
    fn genus_parity(t in transitive()) {
        let profile = t.cycle_profile();
        prop_assert_eq!(profile.ramification_total() % 2, 0);
        for parts in &profile.0 {
            prop_assert_eq!(parts.iter().sum::<usize>(), t.d());
        }
        let g = t.genus().unwrap();
        prop_assert_eq!(2 * g + 2 * t.d(), profile.ramification_total() + 2);
    }

    #[test]
    fn orientation_reverse_is_an_involution(t in transitive()) {
        let r = t.orientation_reverse().unwrap();
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(r.orientation_reverse().unwrap(), t.clone());
        prop_assert_eq!(r.cycle_profile(), t.cycle_profile());
    }

    #[test]
    fn normal_dessins_have_uniform_cycles(t in transitive()) {
        if t.is_normal().unwrap() {
            for g in t.perms() {
                let ct = g.cycle_type();
                prop_assert!(ct.iter().all(|&c| c == ct[0]), "{}", t);
            }
        }
    }

    #[test]
    fn json_roundtrip(t in any_tuple()) {
        let text = t.to_json_value().to_string();
        prop_assert_eq!(MonodromyTuple::from_json(&text).unwrap(), t);
    }

    #[test]
    fn pure_braids_preserve_each_cycle_type(
        (t, k) in (4usize..=5, 2usize..=5)
            .prop_flat_map(|(n, d)| tuple(n, d))
            .prop_filter("transitive", |t| t.validate().is_ok())
            .prop_flat_map(|t| { let m = preset_pure_generators(t.n()).len(); (Just(t), 0..m) })
    ) {
        let g = &preset_pure_generators(t.n())[k];
        let image = g.forward.apply(&t).unwrap();
        prop_assert_eq!(image.cycle_profile(), t.cycle_profile());
        prop_assert_eq!(g.inverse.as_ref().unwrap().apply(&image).unwrap(), t);
    }

    #[test]
    fn gamma2_generators_are_invertible(
        t in (1usize..=5).prop_flat_map(|d| tuple(4, d)).prop_filter("transitive", |t| t.validate().is_ok())
    ) {
        for g in preset_gamma2_generators() {
            let image = g.forward.apply(&t).unwrap();
            prop_assert_eq!(image.genus().unwrap(), t.genus().unwrap());
            prop_assert_eq!(g.inverse.as_ref().unwrap().apply(&image).unwrap(), t.clone());
        }
    }
}

fn letter() -> impl Strategy<Value = Letter> {
    (0usize..6, any::<bool>()).prop_map(|(i, inv)| if inv { Letter::inv(i) } else { Letter::gen(i) })
}

fn word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(letter(), 0..12).prop_map(FreeWord::from_letters)
}

proptest! {
    #[test]
    fn word_display_parse_roundtrip(w in word()) {
        let parsed: FreeWord = w.to_string().parse().unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn word_times_inverse_is_empty(w in word()) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (t, a, b) in (2usize..=4).prop_flat_map(|d| (tuple(6, d), word(), word()))
    ) {
        let ab = a.concat(&b).evaluate(&t).unwrap();
        prop_assert_eq!(ab, a.evaluate(&t).unwrap().then(&b.evaluate(&t).unwrap()));
    }
}

/// Brute-force isomorphism: some relabeling carries one tuple to the other.
fn brute_isomorphic(a: &MonodromyTuple, b: &MonodromyTuple) -> bool {
    all_perms(a.d()).iter().any(|pi| a.relabel(pi) == *b)
}

#[test]
fn isomorphism_matches_brute_force() {
    for d in 1..=3 {
        let all: Vec<MonodromyTuple> = all_perms(d)
            .into_iter()
            .flat_map(|g0| all_perms(d).into_iter().map(move |g1| (g0.clone(), g1)))
            .map(|(g0, g1)| {
                let g2 = g0.then(&g1).inverse();
                MonodromyTuple::new(vec![g0, g1, g2]).unwrap()
            })
            .filter(|t| t.validate().is_ok())
            .collect();
        for a in &all {
            let aut = all_perms(d).iter().filter(|pi| a.relabel(pi) == *a).count();
            assert_eq!(a.canonical_with_automorphisms().1, aut, "{a}");
            for b in &all {
                assert_eq!(a.isomorphic(b).unwrap(), brute_isomorphic(a, b), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn class_weights_sum_to_tuple_count() {
    for (n, dmax) in [(3, 5), (4, 4), (5, 3)] {
        for d in 1..=dmax {
            let classes = enumerate(n, d).unwrap();
            let weighted: u128 = classes.classes.iter().map(|c| factorial(d) / c.automorphisms as u128).sum();
            let count = count_transitive_tuples(n, d).unwrap();
            assert_eq!(weighted, count, "n = {n}, d = {d}");
            assert_eq!(classes.marked_count, count);
            let hall = hall_count(n - 1, d).unwrap() * BigUint::from(factorial(d - 1));
            assert_eq!(BigUint::from(count), hall, "n = {n}, d = {d}");
        }
    }
}
