use std::collections::HashMap;

use vll_core::words::all_words;
use vll_core::{holds, BuiltinModel, FiniteSemigroup, Identity, Letter, Substitution, VarietyId, Word};

fn varieties() -> Vec<VarietyId> {
    vec![
        VarietyId::T,
        VarietyId::SL,
        VarietyId::LZ,
        VarietyId::RZ,
        VarietyId::COM,
        VarietyId::C(2),
        VarietyId::C(3),
        VarietyId::P,
        VarietyId::Prev,
        VarietyId::zero_reduced(vec!["aa".parse().unwrap()]).unwrap(),
        VarietyId::zero_reduced(vec!["ab".parse().unwrap(), "bab".parse().unwrap()]).unwrap(),
    ]
}

fn eq(u: &Word, v: &Word) -> Identity {
    Identity::Equation(u.clone(), v.clone())
}

fn check(v: &VarietyId, u: &Word, w: &Word) -> bool {
    holds(v, &eq(u, w)).unwrap().holds
}

/// Independent restatement of the criteria from letter counts of strings.
fn oracle(v: &VarietyId, u: &str, w: &str) -> Option<bool> {
    let count = |s: &str| {
        let mut m = HashMap::new();
        for c in s.chars() {
            *m.entry(c).or_insert(0usize) += 1;
        }
        m
    };
    let (cu, cw) = (count(u), count(w));
    let same_content = {
        let mut a: Vec<char> = cu.keys().copied().collect();
        let mut b: Vec<char> = cw.keys().copied().collect();
        a.sort();
        b.sort();
        a == b
    };
    let last = |s: &str| s.chars().last().unwrap();
    let first = |s: &str| s.chars().next().unwrap();
    Some(match v {
        VarietyId::T => true,
        VarietyId::SL => same_content,
        VarietyId::LZ => first(u) == first(w),
        VarietyId::RZ => last(u) == last(w),
        VarietyId::COM => cu == cw,
        VarietyId::C(m) => {
            let m = *m as usize;
            same_content && cu.iter().all(|(c, &k)| k == cw[c] || (k >= m && cw[c] >= m))
        }
        VarietyId::P => {
            let (a, b) = (last(u), last(w));
            same_content && ((cu[&a] > 1 && cw[&b] > 1) || (cu[&a] == 1 && cw[&b] == 1 && a == b))
        }
        VarietyId::Prev => {
            let (a, b) = (first(u), first(w));
            same_content && ((cu[&a] > 1 && cw[&b] > 1) || (cu[&a] == 1 && cw[&b] == 1 && a == b))
        }
        _ => return None,
    })
}

#[test]
fn criteria_agree_with_string_oracle() {
    let words = all_words(5, 3);
    for v in varieties() {
        for u in &words {
            for w in &words {
                if let Some(expected) = oracle(&v, &u.to_string(), &w.to_string()) {
                    assert_eq!(check(&v, u, w), expected, "{v}: {u} = {w}");
                }
            }
        }
    }
}

#[test]
fn criteria_are_equivalences() {
    for (len, letters) in [(6, 2), (4, 3)] {
        let words = all_words(len, letters);
        for v in varieties() {
            let n = words.len();
            let rel: Vec<Vec<bool>> = words
                .iter()
                .map(|u| words.iter().map(|w| check(&v, u, w)).collect())
                .collect();
            for i in 0..n {
                assert!(rel[i][i], "{v} not reflexive at {}", words[i]);
                for j in 0..n {
                    assert_eq!(rel[i][j], rel[j][i], "{v} not symmetric");
                    if rel[i][j] {
                        for k in 0..n {
                            if rel[j][k] {
                                assert!(rel[i][k], "{v}: {} {} {}", words[i], words[j], words[k]);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn criteria_are_fully_invariant() {
    let words = all_words(4, 2);
    let images = all_words(2, 2);
    let (a, b) = (Letter::x(1), Letter::x(2));
    let subs: Vec<Substitution> = images
        .iter()
        .flat_map(|p| images.iter().map(move |q| Substitution::new().with(a, p.clone()).with(b, q.clone())))
        .collect();
    let contexts: Vec<Option<Word>> = std::iter::once(None)
        .chain((1..=3).map(|i| Some(Word::letter(Letter::x(i)))))
        .collect();
    for v in varieties() {
        for u in &words {
            for w in words.iter().filter(|w| check(&v, u, w)) {
                for s in &subs {
                    assert!(check(&v, &u.apply(s), &w.apply(s)), "{v}: {u} = {w} under {s}");
                }
                for l in &contexts {
                    for r in &contexts {
                        let wrap = |x: &Word| {
                            let x = l.as_ref().map_or(x.clone(), |l| l.concat(x));
                            r.as_ref().map_or(x.clone(), |r| x.concat(r))
                        };
                        assert!(check(&v, &wrap(u), &wrap(w)), "{v}: context of {u} = {w}");
                    }
                }
            }
        }
    }
}

#[test]
fn criteria_sound_against_models() {
    let words = all_words(5, 3);
    for v in varieties() {
        let models = v.builtin_models();
        assert!(!models.is_empty());
        for u in &words {
            for w in words.iter().filter(|w| *w > u && check(&v, u, w)) {
                for m in &models {
                    assert!(m.satisfies(&eq(u, w)).unwrap().holds, "{v}: {} fails {u} = {w}", m.name());
                }
            }
        }
    }
}

#[test]
fn defining_identities_pass() {
    for v in varieties() {
        for id in v.defining_system().identities() {
            assert!(holds(&v, &id).unwrap().holds, "{v}: {id}");
        }
    }
}

#[test]
fn exact_models_match_small_varieties() {
    // LZ2, RZ2 and SL2 generate LZ, RZ and SL
    let words = all_words(4, 3);
    for (v, m) in [
        (VarietyId::LZ, BuiltinModel::LeftZero2),
        (VarietyId::RZ, BuiltinModel::RightZero2),
        (VarietyId::SL, BuiltinModel::Semilattice2),
    ] {
        let m = FiniteSemigroup::builtin(m);
        for u in &words {
            for w in &words {
                assert_eq!(check(&v, u, w), m.satisfies(&eq(u, w)).unwrap().holds, "{v}: {u} = {w}");
            }
        }
    }
}

#[test]
fn xuy_yux_fails_outside_commutative_parts() {
    // u of the shape x1^l1 ... xm^lm with strictly decreasing exponents
    let us = ["a^3b^2", "a^2", "a^4b^3c^2", "b^2a^3", "a^3b^2a"];
    for u in us {
        let u: Word = u.parse().unwrap();
        let m = u.max_letter().index();
        let (x, y) = (Word::letter(Letter::x(m + 1)), Word::letter(Letter::x(m + 2)));
        let id = eq(&x.concat(&u).concat(&y), &y.concat(&u).concat(&x));
        for v in [VarietyId::LZ, VarietyId::RZ, VarietyId::P, VarietyId::Prev] {
            assert!(!holds(&v, &id).unwrap().holds, "{v}: {id}");
        }
        assert!(holds(&VarietyId::C(2), &id).unwrap().holds);
    }
}
