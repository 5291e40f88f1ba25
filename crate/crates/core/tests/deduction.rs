use vll_core::words::all_words;
use vll_core::{derive, refute, replay_trace, Bounds, DeductionResult, FiniteSemigroup, Identity, IdentitySystem, VarietyId};

fn small() -> Bounds {
    Bounds {
        max_word_length: 7,
        max_subst_image_length: 2,
        max_states: 20_000,
    }
}

fn models_of(system: &IdentitySystem, candidates: &[FiniteSemigroup]) -> Vec<FiniteSemigroup> {
    candidates
        .iter()
        .filter(|m| system.identities().all(|id| m.satisfies(&id).map(|s| s.holds).unwrap_or(false)))
        .cloned()
        .collect()
}

fn all_candidates() -> Vec<FiniteSemigroup> {
    let mut out = Vec::new();
    for v in [VarietyId::T, VarietyId::LZ, VarietyId::RZ, VarietyId::COM, VarietyId::P, VarietyId::Prev, VarietyId::C(3)] {
        out.extend(v.builtin_models());
    }
    out
}

#[test]
fn proofs_replay_and_never_meet_refutations() {
    let candidates = all_candidates();
    let words = all_words(4, 2);
    for v in [VarietyId::SL, VarietyId::P, VarietyId::C(2), VarietyId::LZ] {
        let system = v.defining_system();
        let models = models_of(&system, &candidates);
        assert!(!models.is_empty(), "{v}");
        let mut proved = 0;
        for u in &words {
            for w in words.iter().filter(|w| *w > u) {
                let id = Identity::Equation(u.clone(), w.clone());
                let result = derive(&system, &id, &small()).unwrap();
                if let DeductionResult::Proved(trace) = &result {
                    proved += 1;
                    replay_trace(&system, u, w, trace).unwrap();
                    assert!(!refute(&models, &id).unwrap().is_refuted(), "{v}: {id}");
                }
            }
        }
        assert!(proved > 0, "{v}");
    }
}

#[test]
fn derive_is_monotone_in_bounds() {
    let system = VarietyId::P.defining_system();
    let larger = Bounds {
        max_word_length: 9,
        max_subst_image_length: 3,
        max_states: 200_000,
    };
    for u in all_words(4, 2) {
        for w in all_words(4, 2).into_iter().filter(|w| *w > u) {
            let id = Identity::Equation(u.clone(), w);
            if derive(&system, &id, &small()).unwrap().is_proved() {
                assert!(derive(&system, &id, &larger).unwrap().is_proved(), "{id}");
            }
        }
    }
}

#[test]
fn proofs_agree_with_criteria() {
    // a derivation from the defining identities implies the criterion holds
    for v in [VarietyId::SL, VarietyId::P, VarietyId::Prev, VarietyId::C(2)] {
        let system = v.defining_system();
        for u in all_words(4, 2) {
            for w in all_words(4, 2).into_iter().filter(|w| *w > u) {
                let id = Identity::Equation(u.clone(), w);
                if derive(&system, &id, &small()).unwrap().is_proved() {
                    assert!(vll_core::holds(&v, &id).unwrap().holds, "{v}: {id}");
                }
            }
        }
    }
}
