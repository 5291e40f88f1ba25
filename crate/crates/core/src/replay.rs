//! Replays the modular-law argument on `W_λ` for a balanced identity `u = v`.
//!
//! With fresh letters `x`, `y` the G-set is `W_λ` for `λ = (ℓ_1, ..., ℓ_m, 1, 1)`.
//! β, γ and γ′ are the explicit partitions below, α is the congruence generated
//! by the four pairs `(xyu,xyv) (yxu,yxv) (xuy,xvy) (yux,yvx)`:
//!
//! ```text
//! β  : {xyu,xyv} {yxu,yxv}
//! γ  : {xyu,xuy} {xyv,xvy} {yxu,yux} {yxv,yvx}
//! γ′ : {xyu,yux} {xyv,yvx} {yxu,xuy} {yxv,xvy}
//! ```
//!
//! The report records whether the two modular-law instances actually hold for
//! this α, and whether the conclusions drawn from them are in α.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gset::{build_wlambda, check_modular_instance, GCongruence, GSet, PartitionLambda};
use crate::words::{is_balanced, Letter, Substitution, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub relation: String,
    pub left: Word,
    pub right: Word,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    /// Names of the three congruences `(x, y, z)` in `(x∨y)∧z = (x∧z)∨y`.
    pub roles: [String; 3],
    pub lhs_classes: Vec<Vec<Word>>,
    pub rhs_classes: Vec<Vec<Word>>,
    pub lhs_equals_z: bool,
    pub rhs_equals_y: bool,
    pub equal: bool,
    pub y_below_z: bool,
    pub rhs_below_lhs: bool,
    /// The pair the argument places in the left side.
    pub chain_pair: (Word, Word),
    pub chain_pair_in_lhs: bool,
    pub chain_pair_in_rhs: bool,
    /// The pair the argument concludes lies in α.
    pub conclusion: (Word, Word),
    pub conclusion_in_alpha: bool,
    /// If the instance holds, the conclusion must be in α.
    pub inference_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofReplayReport {
    pub u: Word,
    pub v: Word,
    pub lambda: PartitionLambda,
    pub carrier_size: usize,
    pub group_order: usize,
    pub x: Letter,
    pub y: Letter,
    pub beta_is_congruence: bool,
    pub gamma_is_congruence: bool,
    pub gamma_prime_is_congruence: bool,
    pub beta_below_alpha: bool,
    pub alpha_classes: Vec<Vec<Word>>,
    pub memberships: Vec<Membership>,
    pub instances: Vec<InstanceSummary>,
    pub trace: Vec<String>,
}

impl ProofReplayReport {
    /// True when every membership and congruence check succeeded.
    pub fn structure_verified(&self) -> bool {
        self.beta_is_congruence
            && self.gamma_is_congruence
            && self.gamma_prime_is_congruence
            && self.beta_below_alpha
            && self.memberships.iter().all(|m| m.holds)
    }
}

fn check_preconditions(u: &Word, v: &Word) -> Result<Vec<usize>> {
    if u == v {
        return Err(Error::Precondition(format!("{u} = {v} is trivial")));
    }
    if !is_balanced(u, v) {
        return Err(Error::Precondition(format!("{u} = {v} is not balanced")));
    }
    let m = u.content().len() as u32;
    if u.max_letter().index() != m {
        return Err(Error::Precondition(format!(
            "the letters of {u} must be x1..x{m}; rename them first"
        )));
    }
    let counts: Vec<usize> = (1..=m).map(|i| u.occurrences(Letter::x(i))).collect();
    if counts.windows(2).any(|w| w[0] <= w[1]) || counts.last().is_some_and(|&c| c < 2) {
        return Err(Error::Precondition(format!(
            "occurrence counts {counts:?} of {u} must be strictly decreasing and all above 1; \
             multiply both sides on the right"
        )));
    }
    Ok(counts)
}

/// Renames letters by decreasing count and multiplies both sides on the right
/// so that the counts become strictly decreasing and all above 1.
pub fn normalize_for_replay(u: &Word, v: &Word) -> Result<(Word, Word)> {
    if !is_balanced(u, v) {
        return Err(Error::Precondition(format!("{u} = {v} is not balanced")));
    }
    let mut letters: Vec<Letter> = u.content().into_iter().collect();
    letters.sort_by_key(|&x| std::cmp::Reverse(u.occurrences(x)));
    let rename = Substitution::from_pairs(
        letters
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, Word::letter(Letter::x(i as u32 + 1)))),
    );
    let (u, v) = (u.apply(&rename), v.apply(&rename));
    let counts: Vec<usize> = (1..=letters.len() as u32).map(|i| u.occurrences(Letter::x(i))).collect();
    let mut target = counts.clone();
    for i in (0..target.len()).rev() {
        let floor = target.get(i + 1).map_or(2, |&next| next + 1);
        target[i] = target[i].max(floor);
    }
    let suffix: Vec<Letter> = target
        .iter()
        .zip(&counts)
        .enumerate()
        .flat_map(|(i, (&t, &c))| std::iter::repeat_n(Letter::x(i as u32 + 1), t - c))
        .collect();
    if suffix.is_empty() {
        return Ok((u, v));
    }
    let suffix = Word::new(suffix)?;
    Ok((u.concat(&suffix), v.concat(&suffix)))
}

struct Ctx<'a> {
    g: &'a GSet,
    trace: Vec<String>,
}

impl Ctx<'_> {
    fn member(&mut self, name: &str, c: &GCongruence, a: &Word, b: &Word) -> Result<Membership> {
        let holds = self.g.contains(c, a, b)?;
        self.trace.push(format!("{a} {name} {b}: {holds}"));
        Ok(Membership {
            relation: name.to_string(),
            left: a.clone(),
            right: b.clone(),
            holds,
        })
    }
}

pub fn proof_replay(u: &Word, v: &Word) -> Result<ProofReplayReport> {
    let counts = check_preconditions(u, v)?;
    let m = counts.len() as u32;
    let (x, y) = (Letter::x(m + 1), Letter::x(m + 2));
    let mut parts = counts.clone();
    parts.extend([1, 1]);
    let lambda = PartitionLambda::new(parts)?;
    let g = build_wlambda(&lambda)?;
    let mut ctx = Ctx {
        g: &g,
        trace: vec![format!(
            "λ = {lambda}, |W_λ| = {}, |S_λ| = {}, x = {x}, y = {y}",
            g.len(),
            g.group().len()
        )],
    };

    let (lx, ly) = (Word::letter(x), Word::letter(y));
    let xy = lx.concat(&ly);
    let yx = ly.concat(&lx);
    let xyu = xy.concat(u);
    let xyv = xy.concat(v);
    let yxu = yx.concat(u);
    let yxv = yx.concat(v);
    let xuy = lx.concat(u).concat(&ly);
    let xvy = lx.concat(v).concat(&ly);
    let yux = ly.concat(u).concat(&lx);
    let yvx = ly.concat(v).concat(&lx);

    let classes = |pairs: &[(&Word, &Word)]| -> Vec<Vec<Word>> {
        pairs.iter().map(|(a, b)| vec![(*a).clone(), (*b).clone()]).collect()
    };
    let beta_eq = g.equivalence_from_classes(&classes(&[(&xyu, &xyv), (&yxu, &yxv)]))?;
    let gamma_eq = g.equivalence_from_classes(&classes(&[
        (&xyu, &xuy),
        (&xyv, &xvy),
        (&yxu, &yux),
        (&yxv, &yvx),
    ]))?;
    let gamma_p_eq = g.equivalence_from_classes(&classes(&[
        (&xyu, &yux),
        (&xyv, &yvx),
        (&yxu, &xuy),
        (&yxv, &xvy),
    ]))?;
    let beta_ok = g.is_congruence(&beta_eq);
    let gamma_ok = g.is_congruence(&gamma_eq);
    let gamma_p_ok = g.is_congruence(&gamma_p_eq);
    ctx.trace.push(format!(
        "congruence checks: β {beta_ok}, γ {gamma_ok}, γ′ {gamma_p_ok}"
    ));
    if !(beta_ok && gamma_ok && gamma_p_ok) {
        return Err(Error::NotACongruence(format!(
            "β {beta_ok}, γ {gamma_ok}, γ′ {gamma_p_ok} on W_{lambda}"
        )));
    }
    let beta = g.to_congruence(beta_eq)?;
    let gamma = g.to_congruence(gamma_eq)?;
    let gamma_p = g.to_congruence(gamma_p_eq)?;

    let alpha = g.congruence_from_pairs(&[
        (xyu.clone(), xyv.clone()),
        (yxu.clone(), yxv.clone()),
        (xuy.clone(), xvy.clone()),
        (yux.clone(), yvx.clone()),
    ])?;
    let beta_below_alpha = beta.leq(&alpha)?;
    ctx.trace.push(format!(
        "α has {} non-singleton classes; β ⊆ α: {beta_below_alpha}",
        g.describe(&alpha).len()
    ));

    let gamma_beta = gamma.join(&beta)?;
    let gamma_p_beta = gamma_p.join(&beta)?;
    let memberships = vec![
        ctx.member("β", &beta, &xyu, &xyv)?,
        ctx.member("γ", &gamma, &xuy, &xyu)?,
        ctx.member("γ", &gamma, &xyv, &xvy)?,
        ctx.member("γ∨β", &gamma_beta, &xuy, &xvy)?,
        ctx.member("γ′", &gamma_p, &yux, &xyu)?,
        ctx.member("γ′", &gamma_p, &xyv, &yvx)?,
        ctx.member("γ′∨β", &gamma_p_beta, &yux, &yvx)?,
    ];

    let mut instances = Vec::new();
    for (name, x_role, chain, conclusion) in [
        ("γ", &gamma, (&xuy, &xvy), (&xuy, &xyu)),
        ("γ′", &gamma_p, (&yux, &yvx), (&xyu, &yux)),
    ] {
        let inst = check_modular_instance(x_role, &beta, &alpha)?;
        let chain_pair_in_lhs = g.contains(&inst.lhs, chain.0, chain.1)?;
        let chain_pair_in_rhs = g.contains(&inst.rhs, chain.0, chain.1)?;
        let conclusion_in_alpha = g.contains(&alpha, conclusion.0, conclusion.1)?;
        ctx.trace.push(format!(
            "({name}∨β)∧α = ({name}∧α)∨β: {}; lhs = α: {}, rhs = β: {}; ({},{}) in lhs {chain_pair_in_lhs}, in rhs {chain_pair_in_rhs}; ({},{}) in α: {conclusion_in_alpha}",
            inst.equal,
            inst.lhs == alpha,
            inst.rhs == beta,
            chain.0,
            chain.1,
            conclusion.0,
            conclusion.1,
        ));
        instances.push(InstanceSummary {
            roles: [name.to_string(), "β".into(), "α".into()],
            lhs_classes: g.describe(&inst.lhs),
            rhs_classes: g.describe(&inst.rhs),
            lhs_equals_z: inst.lhs == alpha,
            rhs_equals_y: inst.rhs == beta,
            equal: inst.equal,
            y_below_z: inst.y_below_z,
            rhs_below_lhs: inst.rhs_below_lhs,
            chain_pair: (chain.0.clone(), chain.1.clone()),
            chain_pair_in_lhs,
            chain_pair_in_rhs,
            conclusion: (conclusion.0.clone(), conclusion.1.clone()),
            conclusion_in_alpha,
            inference_consistent: !inst.equal || conclusion_in_alpha,
        });
    }

    Ok(ProofReplayReport {
        u: u.clone(),
        v: v.clone(),
        carrier_size: g.len(),
        group_order: g.group().len(),
        lambda,
        x,
        y,
        beta_is_congruence: beta_ok,
        gamma_is_congruence: gamma_ok,
        gamma_prime_is_congruence: gamma_p_ok,
        beta_below_alpha,
        alpha_classes: g.describe(&alpha),
        memberships,
        instances,
        trace: ctx.trace,
    })
}
