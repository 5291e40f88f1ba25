use vll_core::words::all_words;
use vll_core::{holds, BuiltinModel, FiniteSemigroup, Identity, VarietyId};

#[test]
fn cyclic_monoids_satisfy_their_variety() {
    for m in 1..=5u32 {
        let s = FiniteSemigroup::builtin(BuiltinModel::CyclicMonoid(m as usize));
        for id in VarietyId::C(m).defining_system().identities() {
            assert!(s.satisfies(&id).unwrap().holds, "C{m}: {id}");
        }
    }
}

#[test]
fn products_satisfy_common_identities() {
    let models = [
        FiniteSemigroup::builtin(BuiltinModel::LeftZero2),
        FiniteSemigroup::builtin(BuiltinModel::RightZero2),
        FiniteSemigroup::builtin(BuiltinModel::Semilattice2),
        FiniteSemigroup::builtin(BuiltinModel::Cyclic(2)),
        FiniteSemigroup::builtin(BuiltinModel::Nil2),
    ];
    let words = all_words(3, 2);
    for a in &models {
        for b in &models {
            let p = a.direct_product(b);
            for u in &words {
                for v in &words {
                    let id = Identity::Equation(u.clone(), v.clone());
                    let both = a.satisfies(&id).unwrap().holds && b.satisfies(&id).unwrap().holds;
                    assert_eq!(p.satisfies(&id).unwrap().holds, both, "{} x {}: {id}", a.name(), b.name());
                }
            }
        }
    }
}

#[test]
fn refutation_witnesses_evaluate_differently() {
    let s = FiniteSemigroup::builtin(BuiltinModel::RightZero2);
    let id: Identity = "ab = ba".parse().unwrap();
    let sat = s.satisfies(&id).unwrap();
    let a = sat.witness.expect("RZ2 is not commutative");
    let (u, v) = id.sides().unwrap();
    assert_ne!(s.evaluate(u, &a), s.evaluate(v, &a));
}

#[test]
fn com_agrees_with_cyclic_monoid_on_short_words() {
    // x^k for k <= 4 are distinct in the free commutative monoid on {0..4}
    let m = FiniteSemigroup::builtin(BuiltinModel::CyclicMonoid(4));
    for u in all_words(4, 2) {
        for v in all_words(4, 2) {
            let id = Identity::Equation(u.clone(), v.clone());
            if holds(&VarietyId::COM, &id).unwrap().holds {
                assert!(m.satisfies(&id).unwrap().holds);
            }
        }
    }
}
