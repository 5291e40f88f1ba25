use proptest::prelude::*;

use vll_core::gset::{build_wlambda, check_modular_instance, enumerate_congruences, EnumerationBudget, GSet};
use vll_core::{normalize_for_replay, proof_replay, PartitionLambda, Word};

fn lam(parts: &[usize]) -> PartitionLambda {
    PartitionLambda::new(parts.to_vec()).unwrap()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn small_lambdas() -> Vec<PartitionLambda> {
    [&[1, 1][..], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[4, 1], &[3, 2], &[1, 1, 1, 1]]
        .iter()
        .map(|p| lam(p))
        .collect()
}

#[test]
fn carrier_sizes_are_multinomial() {
    for parts in [vec![2, 1], vec![3, 3], vec![3, 2, 1, 1], vec![2, 2, 2], vec![4, 2, 1]] {
        let g = build_wlambda(&lam(&parts)).unwrap();
        let expected = factorial(parts.iter().sum()) / parts.iter().map(|&p| factorial(p)).product::<u128>();
        assert_eq!(g.len() as u128, expected);
        let mut sorted = g.carrier().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), g.len());
        assert_eq!(sorted, g.carrier());
        for w in g.carrier() {
            assert_eq!(w.profile().parts, parts);
        }
    }
}

#[test]
fn group_acts_by_bijections() {
    for l in small_lambdas() {
        let g = build_wlambda(&l).unwrap();
        let expected: u128 = l
            .parts()
            .chunk_by(|a, b| a == b)
            .map(|block| factorial(block.len()))
            .product();
        assert_eq!(g.group().len() as u128, expected);
        for act in g.actions() {
            let mut img = act.clone();
            img.sort();
            assert_eq!(img, (0..g.len()).collect::<Vec<_>>());
        }
        for p in g.group() {
            for q in g.group() {
                assert!(g.group().contains(&p.then(q).unwrap()));
            }
            assert!(g.group().contains(&p.inverse()));
        }
    }
}

fn congruences(g: &GSet) -> Vec<vll_core::GCongruence> {
    enumerate_congruences(g, &EnumerationBudget::default()).unwrap()
}

#[test]
fn generated_congruence_is_least() {
    for l in small_lambdas().into_iter().filter(|l| l.multinomial().unwrap() <= 8) {
        let g = build_wlambda(&l).unwrap();
        let all = congruences(&g);
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                let c = g
                    .congruence_from_pairs(&[(g.word(a).clone(), g.word(b).clone())])
                    .unwrap();
                assert!(g.is_congruence(c.equivalence()));
                assert!(all.contains(&c));
                for d in all.iter().filter(|d| d.related(a, b)) {
                    assert!(c.leq(d).unwrap(), "W_{l}: generated congruence not least");
                }
            }
        }
    }
}

#[test]
fn congruences_form_a_lattice() {
    for l in small_lambdas().into_iter().filter(|l| l.multinomial().unwrap() <= 8) {
        let g = build_wlambda(&l).unwrap();
        let all = congruences(&g);
        for a in &all {
            assert_eq!(a.join(a).unwrap(), *a);
            assert_eq!(a.meet(a).unwrap(), *a);
            for b in &all {
                let j = a.join(b).unwrap();
                let m = a.meet(b).unwrap();
                assert!(all.contains(&j) && all.contains(&m));
                assert_eq!(j, b.join(a).unwrap());
                assert_eq!(m, b.meet(a).unwrap());
                assert_eq!(a.join(&m).unwrap(), *a);
                assert_eq!(a.meet(&j).unwrap(), *a);
            }
        }
        // associativity on a sample of triples
        for (i, a) in all.iter().enumerate().step_by(3) {
            for b in all.iter().skip(i % 5).step_by(7) {
                for c in all.iter().step_by(11) {
                    assert_eq!(a.join(&b.join(c).unwrap()).unwrap(), a.join(b).unwrap().join(c).unwrap());
                    assert_eq!(a.meet(&b.meet(c).unwrap()).unwrap(), a.meet(b).unwrap().meet(c).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_inequality(pairs in prop::collection::vec((0usize..12, 0usize..12), 0..4),
                          more in prop::collection::vec((0usize..12, 0usize..12), 0..3),
                          x_pairs in prop::collection::vec((0usize..12, 0usize..12), 0..4)) {
        let g = build_wlambda(&lam(&[2, 1, 1])).unwrap();
        let w = |i: usize| g.word(i).clone();
        let to_words = |ps: &[(usize, usize)]| ps.iter().map(|&(a, b)| (w(a), w(b))).collect::<Vec<_>>();
        let y = g.congruence_from_pairs(&to_words(&pairs)).unwrap();
        let z = y.join(&g.congruence_from_pairs(&to_words(&more)).unwrap()).unwrap();
        let x = g.congruence_from_pairs(&to_words(&x_pairs)).unwrap();
        let r = check_modular_instance(&x, &y, &z).unwrap();
        prop_assert!(r.y_below_z);
        prop_assert!(r.rhs_below_lhs);
    }

    #[test]
    fn replay_structure_holds(a in 2usize..5, b in 1usize..4, shuffle in any::<prop::sample::Index>()) {
        // u = a^ka b^kb with ka > kb > 1 after normalisation, v a non-trivial anagram
        let u: Word = format!("a^{}b^{}", a + b, b + 1).parse().unwrap();
        let mut letters: Vec<_> = u.letters().to_vec();
        let k = shuffle.index(letters.len() - 1) + 1;
        letters.rotate_left(k);
        let v = Word::new(letters).unwrap();
        prop_assume!(u != v);
        let (u, v) = normalize_for_replay(&u, &v).unwrap();
        let n = u.len() + 2;
        prop_assume!(n <= 9);
        let report = proof_replay(&u, &v).unwrap();
        prop_assert!(report.structure_verified());
        for inst in &report.instances {
            prop_assert!(inst.chain_pair_in_lhs && inst.rhs_below_lhs && inst.inference_consistent);
        }
    }
}
