use vll_core::lattice::{chain, ElementProperty, FiniteLattice};
use vll_core::{catalog, ElementClassification};

fn catalog_up_to_ten() -> Vec<FiniteLattice> {
    let base = ["chain(1)", "chain(2)", "chain(3)", "chain(4)", "chain(5)", "boolean(2)", "boolean(3)", "M3", "N5"];
    let mut out: Vec<FiniteLattice> = base.iter().map(|n| catalog(n).unwrap()).collect();
    let small: Vec<FiniteLattice> = out.clone();
    for a in &small {
        for b in &small {
            if a.size() * b.size() <= 10 && a.size() > 1 && b.size() > 1 {
                out.push(a.product(b));
            }
        }
    }
    out
}

/// Second implementation: joins and meets searched from the order on demand.
fn oracle(l: &FiniteLattice, x: usize) -> ElementClassification {
    let n = l.size();
    let lub = |a: usize, b: usize| {
        (0..n)
            .filter(|&k| l.leq(a, k) && l.leq(b, k))
            .find(|&k| (0..n).all(|u| !(l.leq(a, u) && l.leq(b, u)) || l.leq(k, u)))
            .unwrap()
    };
    let glb = |a: usize, b: usize| {
        (0..n)
            .filter(|&k| l.leq(k, a) && l.leq(k, b))
            .find(|&k| (0..n).all(|u| !(l.leq(u, a) && l.leq(u, b)) || l.leq(u, k)))
            .unwrap()
    };
    let pairs = || (0..n).flat_map(|y| (0..n).map(move |z| (y, z)));
    ElementClassification {
        element: x,
        modular: pairs().all(|(y, z)| !l.leq(y, z) || glb(lub(x, y), z) == lub(glb(x, z), y)),
        lower_modular: pairs().all(|(y, z)| !l.leq(x, y) || lub(x, glb(y, z)) == glb(y, lub(x, z))),
        upper_modular: pairs().all(|(y, z)| !l.leq(y, x) || lub(glb(z, x), y) == glb(lub(z, y), x)),
        distributive: pairs().all(|(y, z)| lub(x, glb(y, z)) == glb(lub(x, y), lub(x, z))),
    }
}

#[test]
fn classification_matches_oracle() {
    for l in catalog_up_to_ten() {
        for x in 0..l.size() {
            assert_eq!(l.classify_element(x), oracle(&l, x), "{} element {}", l.name(), l.label(x));
        }
    }
}

#[test]
fn bounds_and_distributive_elements() {
    for l in catalog_up_to_ten() {
        let bottom = l.classify_element(l.bottom());
        assert!(bottom.lower_modular && bottom.distributive, "{}", l.name());
        assert!(l.classify_element(l.top()).lower_modular, "{}", l.name());
        for c in l.classify_all() {
            assert!(!c.distributive || c.lower_modular, "{} {}", l.name(), c.element);
        }
    }
}

#[test]
fn lemma_checks_on_catalog() {
    for l in catalog_up_to_ten() {
        assert_eq!(l.check_lower_modular_lift(), None, "{}", l.name());
        assert_eq!(l.check_upper_modular_preservation(10).unwrap(), None, "{}", l.name());
    }
}

#[test]
fn lemma_checks_on_quotients() {
    for l in catalog_up_to_ten() {
        for theta in l.enumerate_congruences(10).unwrap() {
            let (q, phi) = l.quotient(&theta).unwrap();
            for a in 0..l.size() {
                for b in 0..l.size() {
                    assert_eq!(phi[l.join(a, b)], q.join(phi[a], phi[b]));
                    assert_eq!(phi[l.meet(a, b)], q.meet(phi[a], phi[b]));
                }
            }
            assert_eq!(q.check_lower_modular_lift(), None);
        }
    }
}

#[test]
fn chains_are_zero_distributive() {
    for n in 1..=8 {
        assert!(chain(n).unwrap().is_zero_distributive());
    }
}

#[test]
fn duality() {
    for l in catalog_up_to_ten() {
        let d = l.dual();
        for x in 0..l.size() {
            assert_eq!(
                l.has_property(x, ElementProperty::UpperModular),
                d.has_property(x, ElementProperty::LowerModular),
                "{}",
                l.name()
            );
            assert_eq!(
                l.has_property(x, ElementProperty::LowerModular),
                d.has_property(x, ElementProperty::UpperModular)
            );
        }
    }
}

#[test]
fn coideal_embeddings_preserve_operations() {
    for l in catalog_up_to_ten() {
        for a in 0..l.size() {
            let (sub, embed) = l.principal_coideal(a);
            for i in 0..sub.size() {
                for j in 0..sub.size() {
                    assert_eq!(embed[sub.join(i, j)], l.join(embed[i], embed[j]));
                    assert_eq!(embed[sub.meet(i, j)], l.meet(embed[i], embed[j]));
                }
            }
        }
    }
}
