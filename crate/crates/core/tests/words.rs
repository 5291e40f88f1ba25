use proptest::prelude::*;
use std::collections::BTreeMap;

use vll_core::{contains_instance, is_balanced, Letter, LetterPermutation, Substitution, Word};

fn word(max_letter: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_letter, 1..=max_len).prop_map(|v| Word::from_indices(&v).unwrap())
}

fn permutation(n: u32) -> impl Strategy<Value = LetterPermutation> {
    Just((1..=n).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(move |img| {
            let map: BTreeMap<Letter, Letter> =
                (1..=n).zip(img).map(|(a, b)| (Letter::x(a), Letter::x(b))).collect();
            LetterPermutation::new(map).unwrap()
        })
}

fn substitution(n: u32) -> impl Strategy<Value = Substitution> {
    prop::collection::vec(word(n, 3), n as usize).prop_map(|imgs| {
        Substitution::from_pairs(imgs.into_iter().enumerate().map(|(i, w)| (Letter::x(i as u32 + 1), w)))
    })
}

fn sorted(w: &Word) -> Vec<u32> {
    let mut v: Vec<u32> = w.letters().iter().map(|l| l.index()).collect();
    v.sort();
    v
}

proptest! {
    #[test]
    fn permutation_keeps_length_and_profile(w in word(4, 12), p in permutation(4)) {
        let q = w.permute(&p).unwrap();
        prop_assert_eq!(q.len(), w.len());
        prop_assert_eq!(&q.profile().parts, &w.profile().parts);
        prop_assert_eq!(q.permute(&p.inverse()).unwrap(), w);
    }

    #[test]
    fn substitution_composition(w in word(3, 8), s in substitution(3), t in substitution(3)) {
        prop_assert_eq!(w.apply(&s).apply(&t), w.apply(&s.then(&t)));
    }

    #[test]
    fn balanced_iff_anagram(u in word(3, 7), v in word(3, 7)) {
        let anagram = sorted(&u) == sorted(&v);
        prop_assert_eq!(is_balanced(&u, &v), anagram);
        let same_profile = u.profile().counts == v.profile().counts;
        prop_assert_eq!(is_balanced(&u, &v), same_profile);
    }

    #[test]
    fn anagrams_are_balanced(u in word(3, 9)) {
        prop_assert!(is_balanced(&u, &u.reversed()));
    }

    #[test]
    fn instances_are_monotone(w in word(3, 8), l in word(3, 3), r in word(3, 3), p in word(3, 4)) {
        if contains_instance(&w, &p) {
            prop_assert!(contains_instance(&l.concat(&w).concat(&r), &p));
        }
    }

    #[test]
    fn substituted_pattern_is_found(p in word(3, 4), s in substitution(3), l in word(2, 2)) {
        let w = l.concat(&p.apply(&s));
        prop_assert!(contains_instance(&w, &p));
    }

    #[test]
    fn text_round_trip(w in word(30, 10)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        prop_assert_eq!(w.to_power_string().parse::<Word>().unwrap(), w);
    }
}
