use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regcycle_core::actions::{AffineAction, CosetAction, KSetAction, NaturalAction, PartitionAction, ProductAction, WreathElement};
use regcycle_core::gf::{AffineMap, Field, Matrix};
use regcycle_core::lang::{self, ActionSpec, GroupSpec, RunConfig};
use regcycle_core::regcycle::{
    affine_witness, certify, decide_bruteforce, decide_fix_union, kset_decide, kset_witness, orbit_lengths,
    partition_witness, product_witness,
};
use regcycle_core::suites::random_permutation;
use regcycle_core::{Action, GeneratedGroup, Permutation};

const CAP: u64 = 10_000_000;

fn random_invertible(rng: &mut ChaCha8Rng, q: u64, d: usize) -> Matrix {
    let f = Field::get(q).unwrap();
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..q) as u8).collect();
        let m = Matrix::new(f, d, d, data).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fix_union_matches_bruteforce_beyond_the_corpus(seed in any::<u64>(), m in 9usize..13, k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_permutation(m, &mut rng);
        let a = KSetAction::new(m, k).unwrap();
        let b = decide_bruteforce(&a, &g, CAP).unwrap();
        let f = decide_fix_union(&a, &g, CAP).unwrap();
        prop_assert_eq!(b.has_regular_cycle, f.has_regular_cycle);
        prop_assert_eq!(b.induced_order, f.induced_order);
    }

    #[test]
    fn kset_rule_and_witness(seed in any::<u64>(), m in 2usize..40, k in 1usize..6) {
        prop_assume!(2 * k <= m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_permutation(m, &mut rng);
        let d = kset_decide(&g.cycle_type(), k).unwrap();
        let a = KSetAction::new(m, k).unwrap();
        if d.has_regular_cycle() {
            let x = kset_witness(&g, k).unwrap();
            prop_assert!(certify(&a, &g, &x).is_ok());
        } else if a.domain_size() <= 200_000 {
            prop_assert!(!decide_bruteforce(&a, &g, CAP).unwrap().has_regular_cycle);
        }
    }

    #[test]
    fn partition_witness_is_certified(seed in any::<u64>(), a in 2usize..7, b in 2usize..7) {
        prop_assume!((a, b) != (2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_permutation(a * b, &mut rng);
        let w = partition_witness(&g, a, b).unwrap();
        prop_assert!(certify(&PartitionAction::new(a, b).unwrap(), &g, &w.point).is_ok());
    }

    #[test]
    fn product_witness_over_alt5(seed in any::<u64>(), ell in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alt5 = regcycle_core::groups::alternating(5).unwrap();
        let comps: Vec<Permutation> = (0..ell).map(|_| alt5.elements()[rng.gen_range(0..60)].clone()).collect();
        let sigma = random_permutation(ell, &mut rng);
        let g = WreathElement::new(comps, sigma).unwrap();
        let act = ProductAction::new(NaturalAction::new(5), ell).unwrap();
        let inner = |h: &Permutation| {
            Ok(decide_bruteforce(&NaturalAction::new(5), h, CAP)?.witness_index.expect("Alt(5) elements are regular") as u32)
        };
        let x = product_witness(&act, &g, inner).unwrap();
        prop_assert!(certify(&act, &g, &x).is_ok());
    }

    #[test]
    fn affine_witness_is_certified(seed in any::<u64>(), case in 0usize..6) {
        let (d, q) = [(3, 3), (2, 7), (4, 2), (2, 8), (2, 9), (3, 4)][case];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::get(q).unwrap();
        let t = (0..d).map(|_| rng.gen_range(0..q) as u8).collect();
        let map = AffineMap::new(random_invertible(&mut rng, q, d), t).unwrap();
        let w = affine_witness(&map, CAP).unwrap();
        prop_assert!(certify(&AffineAction::new(f.order(), d).unwrap(), &map, &w).is_ok());
    }

    #[test]
    fn coset_actions_are_transitive_of_index_degree(seed in any::<u64>(), n in 4usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sym = regcycle_core::groups::symmetric(n).unwrap();
        let h = GeneratedGroup::closure_with_degree(n, &[random_permutation(n, &mut rng)], CAP).unwrap();
        let a = CosetAction::new(&sym, &h, CAP).unwrap();
        prop_assert_eq!(a.domain_size(), sym.order() / h.order());
        let g = random_permutation(n, &mut rng);
        // orbit lengths of g partition the domain
        let lens = orbit_lengths(&a, &g, CAP).unwrap();
        prop_assert_eq!(lens.iter().sum::<u64>(), a.domain_size());
        let gens: Vec<Permutation> = sym.generators().iter().map(|x| a.table.induced(x).unwrap()).collect();
        let induced = GeneratedGroup::closure_with_degree(a.domain_size() as usize, &gens, CAP).unwrap();
        prop_assert!(induced.is_transitive());
    }

    #[test]
    fn front_end_matches_direct_decision(seed in any::<u64>(), m in 4usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_permutation(m, &mut rng);
        let group: GroupSpec = format!("sym:{m}").parse().unwrap();
        let action: ActionSpec = "ksets:2".parse().unwrap();
        let v = lang::decide(&group, &action, &g.to_string(), &RunConfig::default()).unwrap();
        let b = decide_bruteforce(&KSetAction::new(m, 2).unwrap(), &g, CAP).unwrap();
        prop_assert_eq!(v.has_regular_cycle, b.has_regular_cycle);
        prop_assert_eq!(v.order, g.order());
        prop_assert!(v.certified || !v.has_regular_cycle);
    }
}
