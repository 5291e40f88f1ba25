use std::fmt::Write as _;
use std::path::Path;

use vll_core::gset::{build_wlambda, enumerate_congruences, EnumerationBudget};
use vll_core::lattice::{ElementProperty, FiniteLattice};
use vll_core::{
    derive as derive_identity, holds, normalize_for_replay, proof_replay, refute as refute_identity, sapir_with_verbal,
    Bounds, DeductionResult, FiniteSemigroup, Identity, IdentitySystem, PartitionLambda, VarietyId, Word,
};

use crate::suite::{run_suite, Profile, Status};
use crate::{CliError, CliResult, Output};

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Splits a comma separated word list; empty input gives no words.
pub fn parse_words(list: &str) -> CliResult<Vec<Word>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(CliError::from))
        .collect()
}

pub fn parse_variety(name: &str, patterns: Option<&str>) -> CliResult<VarietyId> {
    match (name.trim(), patterns) {
        ("ZR", Some(p)) => Ok(VarietyId::zero_reduced(parse_words(p)?)?),
        ("ZR", None) => Err(CliError::Usage("ZR needs --patterns".into())),
        (other, _) => Ok(other.parse()?),
    }
}

#[derive(serde::Serialize)]
struct Verdict<'a> {
    identity: String,
    holds: bool,
    reason: &'a vll_core::Reason,
}

pub fn check(variety: &VarietyId, ids: &[Identity], as_json: bool) -> CliResult<Output> {
    let results = ids
        .iter()
        .map(|id| holds(variety, id).map(|r| (id, r)))
        .collect::<Result<Vec<_>, _>>()?;
    let all = results.iter().all(|(_, r)| r.holds);
    let text = if as_json {
        let verdicts: Vec<Verdict> = results
            .iter()
            .map(|(id, r)| Verdict {
                identity: id.to_string(),
                holds: r.holds,
                reason: &r.reason,
            })
            .collect();
        json(&verdicts)?
    } else {
        results.iter().fold(String::new(), |mut s, (id, r)| {
            let verdict = if r.holds { "holds" } else { "fails" };
            let _ = writeln!(s, "{variety}: {id}: {verdict} ({})", r.reason);
            s
        })
    };
    Ok(Output::verdict(text, all))
}

pub fn replay(u: &Word, v: &Word, normalize: bool, as_json: bool) -> CliResult<Output> {
    let (u, v) = if normalize {
        normalize_for_replay(u, v)?
    } else {
        (u.clone(), v.clone())
    };
    let report = proof_replay(&u, &v)?;
    let text = if as_json {
        json(&report)?
    } else {
        let mut s = format!("identity {u} = {v}\n");
        for line in &report.trace {
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "structure verified: {}", report.structure_verified());
        s
    };
    Ok(Output::verdict(text, report.structure_verified()))
}

pub fn verify_paper(profile: Profile, json_out: Option<&Path>) -> CliResult<Output> {
    let report = run_suite(profile);
    let mut text = format!("{}\n", report.suite);
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        };
        let _ = write!(text, "{status} {} ({} ms)", c.id, c.millis);
        if let Some(w) = &c.witness {
            let _ = write!(text, ": {w}");
        }
        text.push('\n');
    }
    if let Some(path) = json_out {
        std::fs::write(path, json(&report)?).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(Output::verdict(text, report.passed()))
}

#[derive(Default, Clone, Copy)]
pub struct LatticeQuery {
    pub classify: bool,
    pub zero_distributive: bool,
    pub congruences: bool,
    pub lemmas: bool,
}

pub fn lattice(l: &FiniteLattice, q: LatticeQuery) -> CliResult<Output> {
    let mut s = format!("{l}\n");
    let mut ok = true;
    if q.classify {
        for e in l.classify_all() {
            let flags: Vec<String> = ElementProperty::ALL
                .iter()
                .map(|&p| {
                    let mark = if l.has_property(e.element, p) { "" } else { "non-" };
                    format!("{mark}{p}")
                })
                .collect();
            let _ = write!(s, "{}: {}", l.label(e.element), flags.join(", "));
            if let Some((y, z)) = l.find_violation(e.element, ElementProperty::Modular) {
                let _ = write!(s, " (modular fails at y={}, z={})", l.label(y), l.label(z));
            }
            s.push('\n');
        }
    }
    if q.zero_distributive {
        match l.zero_distributivity_violation() {
            None => s.push_str("0-distributive: yes\n"),
            Some((x, y, z)) => {
                let _ = writeln!(s, "0-distributive: no (x={}, y={}, z={})", l.label(x), l.label(y), l.label(z));
            }
        }
    }
    if q.congruences {
        let all = l.enumerate_congruences(vll_core::lattice::MAX_CONGRUENCE_SIZE)?;
        let _ = writeln!(s, "congruences: {}", all.len());
        for theta in &all {
            let classes: Vec<String> = theta
                .classes()
                .iter()
                .map(|c| c.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(s, "  {{{}}}", classes.join(" | "));
        }
    }
    if q.lemmas {
        let lift = l.check_lower_modular_lift();
        let pres = l.check_upper_modular_preservation(vll_core::lattice::MAX_CONGRUENCE_SIZE)?;
        let _ = writeln!(s, "lower-modular lift: {}", lift.map_or("ok".into(), |v| format!("violated at x={}, a={}", v.x, v.a)));
        let _ = writeln!(
            s,
            "upper-modular preservation: {}",
            pres.as_ref().map_or("ok".into(), |v| format!("violated at x={}", v.x))
        );
        ok &= lift.is_none() && pres.is_none();
    }
    Ok(Output::verdict(s, ok))
}

pub fn gset(lambda: &PartitionLambda, enumerate: bool, pairs: &[(Word, Word)], budget: &EnumerationBudget) -> CliResult<Output> {
    let g = build_wlambda(lambda)?;
    let mut s = format!("W_{lambda}: {} words, group of order {}\n", g.len(), g.group().len());
    if !pairs.is_empty() {
        let c = g.congruence_from_pairs(pairs)?;
        let _ = writeln!(s, "generated congruence: {} classes", c.class_count());
        for class in g.describe(&c) {
            let words: Vec<String> = class.iter().map(Word::to_string).collect();
            let _ = writeln!(s, "  {{{}}}", words.join(", "));
        }
    }
    if enumerate {
        let all = enumerate_congruences(&g, budget)?;
        let _ = writeln!(s, "congruences: {}", all.len());
    }
    Ok(Output::ok(s))
}

pub fn sapir(r: u32, basis: &[Word], verbal: &[Word], as_json: bool) -> CliResult<Output> {
    let sys = sapir_with_verbal(r, basis, verbal)?;
    if as_json {
        return Ok(Output::ok(json(&sys)?));
    }
    let mut s = format!("{} (x0 = x^{})\n", sys.generated.label, sys.zero_exponent());
    for (family, id) in &sys.members {
        let _ = writeln!(s, "{id}    # {family}");
    }
    Ok(Output::ok(s))
}

pub fn derive(system: &IdentitySystem, id: &Identity, bounds: &Bounds, as_json: bool) -> CliResult<Output> {
    let result = derive_identity(system, id, bounds)?;
    if as_json {
        return Ok(Output::verdict(json(&result)?, result.is_proved()));
    }
    let mut s = String::new();
    match &result {
        DeductionResult::Proved(trace) => {
            let _ = writeln!(s, "proved {id} in {} steps", trace.len());
            for step in trace {
                let dir = if step.reversed { "<-" } else { "->" };
                let _ = writeln!(
                    s,
                    "  {} => {}   axiom {} {dir} at {} with {}",
                    step.before, step.after, step.axiom, step.position, step.substitution
                );
            }
        }
        DeductionResult::Unknown => {
            let _ = writeln!(s, "unknown: {id} not reached within {bounds:?}");
        }
        DeductionResult::Refuted { model, assignment } => {
            let _ = writeln!(s, "refuted in {model} at {assignment}");
        }
    }
    Ok(Output::verdict(s, result.is_proved()))
}

pub fn refute(models: &[FiniteSemigroup], id: &Identity) -> CliResult<Output> {
    let result = refute_identity(models, id)?;
    let text = match &result {
        DeductionResult::Refuted { model, assignment } => format!("{id} fails in {model} at {assignment}\n"),
        _ => format!("{id} holds in all {} models\n", models.len()),
    };
    Ok(Output::verdict(text, result.is_refuted()))
}
