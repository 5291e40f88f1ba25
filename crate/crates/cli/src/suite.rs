//! The verification suite: nine exhaustive, bounded checks with time limits.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use vll_core::deduction::consistency_scan;
use vll_core::gset::{build_wlambda, enumerate_by_closure, enumerate_by_filter, enumerate_congruences, EnumerationBudget};
use vll_core::lattice::{catalog, chain, ElementProperty, FiniteLattice};
use vll_core::words::all_words;
use vll_core::{
    holds, join_contains_p_scan, proof_replay, replay_case2_chain, replay_trace, sapir_system, Bounds, BuiltinModel,
    DeductionResult, FiniteSemigroup, Identity, IdentitySystem, Letter, VarietyId, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    /// Word length bound for the exhaustive identity scans.
    pub fn max_word_length(self) -> usize {
        match self {
            Profile::Quick => 4,
            Profile::Full => 5,
        }
    }

    pub fn max_carrier(self) -> usize {
        match self {
            Profile::Quick => 8,
            Profile::Full => 12,
        }
    }

    /// `VLL_BUDGET`, when set, wins over the requested profile.
    pub fn from_env_or(requested: Profile) -> Result<Profile, String> {
        match std::env::var("VLL_BUDGET") {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(requested),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Profile, String> {
        match s.trim() {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}, expected quick or full")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

/// A failed check carries a witness that can be fed back to the CLI.
type Outcome = Result<(), String>;

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    pub limit: Duration,
    run: fn(Profile) -> Outcome,
}

impl Check {
    pub fn run(&self, profile: Profile) -> CheckReport {
        let start = Instant::now();
        let outcome = (self.run)(profile);
        let elapsed = start.elapsed();
        let (status, witness) = match outcome {
            Ok(()) if elapsed <= self.limit => (Status::Pass, None),
            Ok(()) => (
                Status::Fail,
                Some(format!("took {} ms, limit {} ms", elapsed.as_millis(), self.limit.as_millis())),
            ),
            Err(w) => (Status::Fail, Some(w)),
        };
        CheckReport {
            id: self.id.to_string(),
            status,
            witness,
            millis: elapsed.as_millis(),
        }
    }
}

pub fn checks() -> Vec<Check> {
    let secs = Duration::from_secs;
    vec![
        Check {
            id: "1-criteria-vs-models",
            summary: "word-problem criteria agree with small models",
            limit: secs(10),
            run: criteria_vs_models,
        },
        Check {
            id: "2-join-contains-p",
            summary: "identities of C2 ∨ RZ hold in P (bounded scan)",
            limit: secs(30),
            run: join_inclusion,
        },
        Check {
            id: "3-identity-xuy-yux",
            summary: "xuy = yux fails in LZ, RZ, P, Prev and holds in COM, SL",
            limit: secs(1),
            run: identity_two,
        },
        Check {
            id: "4-proof-replay",
            summary: "congruences β, γ, γ′ and the chain on W_(3,2,1,1)",
            limit: secs(60),
            run: replay,
        },
        Check {
            id: "5-sapir-systems",
            summary: "S(G) families for r = 2 and the xwx = xw^(2n)x chain",
            limit: secs(60),
            run: sapir,
        },
        Check {
            id: "6-deduction-soundness",
            summary: "proof traces replay and rewrite classes respect the criteria",
            limit: secs(300),
            run: deduction,
        },
        Check {
            id: "7-lattice-lemmas",
            summary: "lower-modular lift and upper-modular preservation on the catalog",
            limit: secs(300),
            run: lattice_lemmas,
        },
        Check {
            id: "8-special-elements",
            summary: "special elements of N5, M3 and chains",
            limit: secs(10),
            run: special_elements,
        },
        Check {
            id: "9-gset-counts",
            summary: "carrier sizes, group orders and congruence counts",
            limit: secs(10),
            run: gset_counts,
        },
    ]
}

/// Runs every check concurrently; the report lists them in id order.
pub fn run_suite(profile: Profile) -> Report {
    let checks = checks();
    let results: Vec<CheckReport> = checks.par_iter().map(|c| c.run(profile)).collect();
    Report {
        suite: format!("verify-paper/{profile}"),
        checks: results,
    }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err(e: impl fmt::Display) -> String {
    format!("error: {e}")
}

fn eq(u: &Word, v: &Word) -> Identity {
    Identity::Equation(u.clone(), v.clone())
}

fn w(s: &str) -> Word {
    s.parse().expect("suite words are valid")
}

fn criteria_vs_models(profile: Profile) -> Outcome {
    let words = all_words(profile.max_word_length(), 3);
    let model = |m| FiniteSemigroup::builtin(m);
    let exact = [
        (VarietyId::RZ, model(BuiltinModel::RightZero2)),
        (VarietyId::LZ, model(BuiltinModel::LeftZero2)),
        (VarietyId::SL, model(BuiltinModel::Semilattice2)),
        // no two-element semigroup separates all unbalanced identities, see README
        (VarietyId::COM, model(BuiltinModel::CyclicMonoid(profile.max_word_length()))),
    ];
    let sound = [
        (VarietyId::COM, model(BuiltinModel::Semilattice2)),
        (VarietyId::COM, model(BuiltinModel::Cyclic(2))),
        (VarietyId::COM, model(BuiltinModel::Nil2)),
        (VarietyId::C(2), model(BuiltinModel::CyclicMonoid(2))),
    ];
    for u in &words {
        for v in &words {
            let id = eq(u, v);
            for (variety, m) in &exact {
                let c = holds(variety, &id).map_err(err)?.holds;
                let s = m.satisfies(&id).map_err(err)?;
                ensure(c == s.holds, || format!("{variety} vs {}: {id} criterion {c}, model {}", m.name(), s.holds))?;
            }
            for (variety, m) in &sound {
                let c = holds(variety, &id).map_err(err)?.holds;
                let s = m.satisfies(&id).map_err(err)?;
                ensure(!c || s.holds, || {
                    format!("{variety} holds but {} refutes {id} at {}", m.name(), s.witness.map_or(String::new(), |a| a.to_string()))
                })?;
            }
        }
    }
    Ok(())
}

fn join_inclusion(profile: Profile) -> Outcome {
    let mut bounds = vec![(4, 3), (5, 2)];
    if profile == Profile::Full {
        bounds.push((5, 3));
    }
    for (len, letters) in bounds {
        let scan = join_contains_p_scan(len, letters).map_err(err)?;
        ensure(scan.holds && scan.counterexample.is_none(), || {
            format!(
                "scan ({len},{letters}) counterexample {}",
                scan.counterexample.as_ref().map_or("none".into(), |c| c.to_string())
            )
        })?;
    }
    Ok(())
}

fn identity_two(_: Profile) -> Outcome {
    for u in ["a^3b^2", "a^4b^3c^2", "a^5b^4c^3d^2", "a^2", "ba^2b^2a^2", "a^3b^2a^2c^3b^2"] {
        let u = w(u);
        let m = u.max_letter().index();
        let (x, y) = (Word::letter(Letter::x(m + 1)), Word::letter(Letter::x(m + 2)));
        let id = eq(&x.concat(&u).concat(&y), &y.concat(&u).concat(&x));
        for v in [VarietyId::LZ, VarietyId::RZ, VarietyId::P, VarietyId::Prev] {
            ensure(!holds(&v, &id).map_err(err)?.holds, || format!("{id} holds in {v}"))?;
        }
        for v in [VarietyId::COM, VarietyId::SL] {
            ensure(holds(&v, &id).map_err(err)?.holds, || format!("{id} fails in {v}"))?;
        }
    }
    Ok(())
}

fn replay(_: Profile) -> Outcome {
    let r = proof_replay(&w("a^3b^2"), &w("b^2a^3")).map_err(err)?;
    ensure(r.lambda.parts() == [3, 2, 1, 1], || format!("λ = {}", r.lambda))?;
    ensure(r.carrier_size == 420, || format!("|W_λ| = {}", r.carrier_size))?;
    ensure(r.beta_is_congruence && r.gamma_is_congruence && r.gamma_prime_is_congruence, || {
        "β, γ or γ′ is not a congruence".into()
    })?;
    for m in &r.memberships {
        ensure(m.holds, || format!("{} {} {} fails", m.left, m.relation, m.right))?;
    }
    for inst in &r.instances {
        ensure(inst.y_below_z && inst.rhs_below_lhs, || format!("modular inequality fails for {:?}", inst.roles))?;
        ensure(inst.inference_consistent, || format!("instance {:?} holds without its conclusion", inst.roles))?;
    }
    Ok(())
}

fn sapir(_: Profile) -> Outcome {
    let s = sapir_system(2, &[w("aa")]).map_err(err)?;
    ensure(s.zero_exponent() == 6, || format!("x0 = x^{}", s.zero_exponent()))?;
    let expected: Vec<Identity> = ["bcd = bc^3d", "b^6c^6 = c^6b^6", "bb = b^4", "baaaac = baac"]
        .iter()
        .map(|s| s.parse().expect("valid identity"))
        .collect();
    ensure(s.generated.len() == expected.len(), || format!("{} identities generated", s.generated.len()))?;
    for e in &expected {
        ensure(s.generated.contains(e), || format!("missing {e}"))?;
    }
    let (system, target, result) = replay_case2_chain(2, &w("a"), 3, &Bounds::default()).map_err(err)?;
    match result {
        DeductionResult::Proved(trace) => {
            let (u, v) = target.sides().expect("equation");
            replay_trace(&system, u, v, &trace).map_err(err)
        }
        other => Err(format!("{target}: {other:?}")),
    }
}

fn deduction(_: Profile) -> Outcome {
    // traces for the case-2 chains at several lengths
    for (word, n) in [("a", 2), ("a", 3), ("ab", 2), ("aab", 2)] {
        let (system, target, result) = replay_case2_chain(2, &w(word), n, &Bounds::default()).map_err(err)?;
        let trace = result.trace().ok_or_else(|| format!("{target} not proved"))?;
        let (u, v) = target.sides().expect("equation");
        replay_trace(&system, u, v, trace).map_err(err)?;
    }
    for v in [VarietyId::P, VarietyId::C(2), VarietyId::SL] {
        let system = v.defining_system();
        for id in ["ab = aaab", "aab = abab", "abc = acbc"] {
            let id: Identity = id.parse().expect("valid identity");
            let bounds = Bounds {
                max_word_length: 8,
                max_subst_image_length: 2,
                max_states: 50_000,
            };
            if let DeductionResult::Proved(trace) = vll_core::derive(&system, &id, &bounds).map_err(err)? {
                let (u, v2) = id.sides().expect("equation");
                replay_trace(&system, u, v2, &trace).map_err(err)?;
            }
        }
    }
    let scans: [(VarietyId, IdentitySystem, usize); 3] = [
        (VarietyId::P, VarietyId::P.defining_system(), 5),
        (VarietyId::C(2), VarietyId::C(2).defining_system(), 5),
        (VarietyId::SL, VarietyId::SL.defining_system(), 4),
    ];
    for (v, system, len) in scans {
        let scan = consistency_scan(&v, &system, len).map_err(err)?;
        ensure(scan.holds, || {
            format!(
                "{v}: rewriting joins {} but the criterion separates it",
                scan.counterexample.as_ref().map_or("?".into(), |c| c.to_string())
            )
        })?;
    }
    Ok(())
}

/// chain(2..5), boolean(2..3), M3, N5, products up to ten elements, and all
/// their quotients.
pub fn lattice_catalog() -> Vec<FiniteLattice> {
    let names = ["chain(2)", "chain(3)", "chain(4)", "chain(5)", "boolean(2)", "boolean(3)", "M3", "N5"];
    let base: Vec<FiniteLattice> = names.iter().map(|n| catalog(n).expect("catalog name")).collect();
    let mut out = base.clone();
    for a in &base {
        for b in &base {
            if a.size() * b.size() <= 10 {
                out.push(a.product(b));
            }
        }
    }
    out
}

fn lattice_lemmas(_: Profile) -> Outcome {
    for l in lattice_catalog() {
        let mut family = vec![l.clone()];
        for theta in l.enumerate_congruences(10).map_err(err)? {
            family.push(l.quotient(&theta).map_err(err)?.0);
        }
        for q in family {
            if let Some(v) = q.check_lower_modular_lift() {
                return Err(format!("{}: {} ∨ {} not lower-modular in [{})", q.name(), q.label(v.x), q.label(v.a), q.label(v.a)));
            }
            if let Some(v) = q.check_upper_modular_preservation(10).map_err(err)? {
                return Err(format!("{}: image of {} under {:?}", q.name(), q.label(v.x), v.congruence.labels()));
            }
        }
    }
    Ok(())
}

fn special_elements(_: Profile) -> Outcome {
    let n5 = catalog("N5").map_err(err)?;
    let c = n5.index_of("c").expect("N5 has c");
    ensure(!n5.classify_element(c).modular, || "c is modular in N5".into())?;
    let m3 = catalog("M3").map_err(err)?;
    ensure(m3.classify_all().iter().all(|e| e.modular), || "M3 has a non-modular element".into())?;
    ensure(!m3.is_zero_distributive(), || "M3 is 0-distributive".into())?;
    ensure(n5.is_zero_distributive(), || format!("N5: {:?}", n5.zero_distributivity_violation()))?;
    for n in 1..=6 {
        let ch = chain(n).map_err(err)?;
        ensure(ch.is_zero_distributive(), || format!("chain({n}) is not 0-distributive"))?;
    }
    for l in lattice_catalog() {
        ensure(l.has_property(l.bottom(), ElementProperty::Distributive), || format!("{}: bottom", l.name()))?;
        for e in l.classify_all() {
            ensure(!e.distributive || e.lower_modular, || format!("{}: {}", l.name(), l.label(e.element)))?;
        }
    }
    Ok(())
}

fn gset_counts(profile: Profile) -> Outcome {
    let lam = |s: &str| s.parse().expect("valid partition");
    let g = build_wlambda(&lam("2,1")).map_err(err)?;
    ensure(g.len() == 3 && g.group().len() == 1, || format!("W_(2,1): {} elements, group {}", g.len(), g.group().len()))?;
    let g = build_wlambda(&lam("1,1")).map_err(err)?;
    let con = enumerate_congruences(&g, &EnumerationBudget::default()).map_err(err)?;
    ensure(g.len() == 2 && g.group().len() == 2 && con.len() == 2, || {
        format!("W_(1,1): {} elements, group {}, {} congruences", g.len(), g.group().len(), con.len())
    })?;
    let g = build_wlambda(&lam("3,2,1,1")).map_err(err)?;
    ensure(g.len() == 420 && g.group().len() == 2, || format!("W_(3,2,1,1): {} elements, group {}", g.len(), g.group().len()))?;
    // both enumeration routes must agree on every carrier within the profile
    let cases: &[&str] = match profile {
        Profile::Quick => &["1,1", "2,1", "1,1,1", "2,2", "3,1", "4,1"],
        Profile::Full => &["1,1", "2,1", "1,1,1", "2,2", "3,1", "4,1", "2,1,1"],
    };
    for l in cases {
        let g = build_wlambda(&lam(l)).map_err(err)?;
        if g.len() > profile.max_carrier() {
            continue;
        }
        let a = enumerate_by_filter(&g, usize::MAX).map_err(err)?;
        let b = enumerate_by_closure(&g, usize::MAX).map_err(err)?;
        ensure(a == b, || format!("W_({l}): {} congruences by filtering, {} by closure", a.len(), b.len()))?;
    }
    Ok(())
}
