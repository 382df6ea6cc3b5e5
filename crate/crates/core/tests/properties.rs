use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tripfact::action::CosetAction;
use tripfact::factorisation::{
    is_triple_factorisation_geometric, is_triple_factorisation_movement, oracle_aba, product_set,
};
use tripfact::io::{format_group, parse_group, parse_permutation};
use tripfact::movement::move_points;
use tripfact::{PermGroup, Permutation, TripleFactorisation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens(n: usize, max: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..=max)
}

/// A random group of degree `n` with two random subgroups inside it.
fn triple(n: usize) -> impl Strategy<Value = TripleFactorisation> {
    (gens(n, 2), 0..3usize, 0..3usize, any::<u64>()).prop_map(move |(g, ka, kb, seed)| {
        let g = PermGroup::new(n, g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<_> = (0..ka).map(|_| g.random_element(&mut rng)).collect();
        let b: Vec<_> = (0..kb).map(|_| g.random_element(&mut rng)).collect();
        TripleFactorisation::new(g, PermGroup::new(n, a).unwrap(), PermGroup::new(n, b).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_a_group_law(x in perm(7), y in perm(7), z in perm(7)) {
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert!(x.compose(&x.inverse()).is_identity());
        prop_assert_eq!(x.compose(&Permutation::identity(7)), x.clone());
        // right action: apply x, then y
        for p in 0..7 {
            prop_assert_eq!(x.compose(&y).apply(p), y.apply(x.apply(p)));
        }
        prop_assert!(x.pow(x.order()).is_identity());
    }

    #[test]
    fn order_and_orbits_ignore_generator_order(mut g in gens(6, 3)) {
        let h = PermGroup::new(6, g.clone()).unwrap();
        g.reverse();
        let r = PermGroup::new(6, g.clone()).unwrap();
        prop_assert_eq!(h.order(), r.order());
        prop_assert_eq!(h.orbits(), r.orbits());
        prop_assert!(h.same_as(&r));
        prop_assert_eq!(h.elements().unwrap().len() as u128, h.order());
        prop_assert_eq!(720 % h.order(), 0);
        let orbit_sum: usize = h.orbits().iter().map(Vec::len).sum();
        prop_assert_eq!(orbit_sum, 6);
    }

    #[test]
    fn coset_action_is_a_homomorphism(t in triple(6), seed in any::<u64>()) {
        let action = CosetAction::new(t.g(), t.a()).unwrap();
        prop_assert_eq!(action.len() as u128 * t.a().order(), t.g().order());
        prop_assert_eq!(action.image().order() * action.kernel().order(), t.g().order());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = t.g().random_element(&mut rng);
        let y = t.g().random_element(&mut rng);
        prop_assert_eq!(action.act(&x.compose(&y)), action.act(&x).compose(&action.act(&y)));
        prop_assert_eq!(action.act(&x).apply(0) == 0, t.a().has(&x));
    }

    #[test]
    fn product_order_formula(t in triple(5)) {
        let ab = product_set(t.a(), t.b(), 1_000_000).unwrap();
        prop_assert_eq!(ab.len() as u128, t.ab_order());
        let elems = t.a().elements().unwrap();
        let common = elems.iter().filter(|x| t.b().has(x)).count() as u128;
        prop_assert_eq!(common, t.intersection().order());
    }

    #[test]
    fn criteria_agree(t in triple(5)) {
        let geometric = is_triple_factorisation_geometric(&t).unwrap();
        let movement = is_triple_factorisation_movement(&t).unwrap();
        let oracle = oracle_aba(&t, 2_000_000).unwrap().len() as u128 == t.g().order();
        prop_assert_eq!(geometric, oracle);
        prop_assert_eq!(movement, oracle);
        prop_assert_eq!(t.status().unwrap().is_factorisation(), oracle);
    }

    #[test]
    fn status_is_conjugation_invariant(t in triple(6), x in perm(6)) {
        let c = t.conjugate(&x).unwrap();
        prop_assert_eq!(c.status().unwrap(), t.status().unwrap());
    }

    #[test]
    fn movement_is_translate_invariant(g in gens(7, 2), mask in 1u8..127, seed in any::<u64>()) {
        let g = PermGroup::new(7, g).unwrap();
        let gamma: Vec<usize> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
        let x = g.random_element(&mut ChaCha8Rng::seed_from_u64(seed));
        let image: Vec<usize> = gamma.iter().map(|&p| x.apply(p)).collect();
        let m = move_points(&g, &gamma).unwrap();
        prop_assert_eq!(move_points(&g, &image).unwrap(), m);
        prop_assert!(m <= gamma.len());
    }

    #[test]
    fn cycle_notation_round_trips(x in perm(9), g in gens(8, 3)) {
        prop_assert_eq!(parse_permutation(&x.to_cycle_string(), 9).unwrap(), x);
        let h = PermGroup::new(8, g).unwrap();
        let back = parse_group(&format_group(&h)).unwrap();
        prop_assert_eq!(back.generators(), h.generators());
    }
}
