//! The G-sets `W_λ`: all words with letter counts `ℓ_1, ..., ℓ_m`, acted on by
//! the letter permutations `σ` with `ℓ_i = ℓ_{iσ}`. Congruences are the
//! equivalences on the carrier that the action preserves.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::partitions::Equivalence;
use crate::partitions::{SetPartitions, UnionFind};
use crate::words::{Letter, LetterPermutation, Word};

pub const DEFAULT_CARRIER_CAP: usize = 1_000_000;

/// A partition `ℓ_1 >= ... >= ℓ_m` of `n` with at least two parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct PartitionLambda(Vec<usize>);

impl PartitionLambda {
    pub fn new(parts: Vec<usize>) -> Result<PartitionLambda> {
        if parts.len() < 2 {
            return Err(Error::InvalidPartition(format!("{parts:?} has fewer than two parts")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(PartitionLambda(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// `n! / (ℓ_1! ... ℓ_m!)`, or `None` on overflow.
    pub fn multinomial(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        let mut placed: u128 = 0;
        for &l in &self.0 {
            for k in 1..=l as u128 {
                placed += 1;
                acc = acc.checked_mul(placed)? / k;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for PartitionLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for PartitionLambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<PartitionLambda> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionLambda::new(parts)
    }
}

/// An equivalence on the carrier of a G-set that the action preserves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct GCongruence {
    lambda: PartitionLambda,
    classes: Equivalence,
}

impl GCongruence {
    pub fn lambda(&self) -> &PartitionLambda {
        &self.lambda
    }

    pub fn equivalence(&self) -> &Equivalence {
        &self.classes
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.classes.related(a, b)
    }

    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    pub fn leq(&self, other: &GCongruence) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.classes.leq(&other.classes))
    }

    fn same_carrier(&self, other: &GCongruence) -> Result<()> {
        if self.lambda == other.lambda {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn join(&self, other: &GCongruence) -> Result<GCongruence> {
        self.same_carrier(other)?;
        Ok(GCongruence {
            lambda: self.lambda.clone(),
            classes: self.classes.join(&other.classes)?,
        })
    }

    pub fn meet(&self, other: &GCongruence) -> Result<GCongruence> {
        self.same_carrier(other)?;
        Ok(GCongruence {
            lambda: self.lambda.clone(),
            classes: self.classes.meet(&other.classes)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct GSet {
    lambda: PartitionLambda,
    carrier: Vec<Word>,
    index: HashMap<Word, usize>,
    group: Vec<LetterPermutation>,
    /// `actions[g][i]` is the index of `carrier[i]` under `group[g]`.
    actions: Vec<Vec<usize>>,
}

pub fn build_wlambda(lambda: &PartitionLambda) -> Result<GSet> {
    build_wlambda_capped(lambda, DEFAULT_CARRIER_CAP)
}

pub fn build_wlambda_capped(lambda: &PartitionLambda, cap: usize) -> Result<GSet> {
    match lambda.multinomial() {
        Some(size) if size <= cap as u128 => {}
        size => {
            return Err(Error::Budget(format!(
                "W_{lambda} has {} elements, cap is {cap}",
                size.map_or_else(|| "too many".to_string(), |s| s.to_string())
            )))
        }
    }
    let letters: Vec<Letter> = (1..=lambda.m() as u32).map(Letter::x).collect();
    let mut current: Vec<Letter> = lambda
        .parts()
        .iter()
        .zip(&letters)
        .flat_map(|(&l, &x)| std::iter::repeat_n(x, l))
        .collect();
    let mut carrier = Vec::new();
    loop {
        carrier.push(Word::new(current.clone())?);
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index: HashMap<Word, usize> = carrier.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

    let group = stabilizer(lambda, &letters)?;
    let actions = group
        .iter()
        .map(|p| {
            carrier
                .iter()
                .map(|w| Ok(index[&w.permute(p)?]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GSet {
        lambda: lambda.clone(),
        carrier,
        index,
        group,
        actions,
    })
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Letter permutations preserving the part sizes, identity first.
fn stabilizer(lambda: &PartitionLambda, letters: &[Letter]) -> Result<Vec<LetterPermutation>> {
    let blocks: Vec<Vec<Letter>> = letters
        .iter()
        .zip(lambda.parts())
        .chunk_by(|(_, &l)| l)
        .into_iter()
        .map(|(_, g)| g.map(|(&x, _)| x).collect())
        .collect();
    blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).map(move |img| (b.clone(), img)))
        .multi_cartesian_product()
        .map(|choice| {
            let map = choice
                .into_iter()
                .flat_map(|(dom, img)| dom.into_iter().zip(img))
                .collect();
            LetterPermutation::new(map)
        })
        .collect()
}

impl GSet {
    pub fn lambda(&self) -> &PartitionLambda {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[Word] {
        &self.carrier
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.carrier[i]
    }

    pub fn group(&self) -> &[LetterPermutation] {
        &self.group
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn index_of(&self, w: &Word) -> Result<usize> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::ForeignWord(w.to_string()))
    }

    fn wrap(&self, classes: Equivalence) -> GCongruence {
        GCongruence {
            lambda: self.lambda.clone(),
            classes,
        }
    }

    pub fn discrete(&self) -> GCongruence {
        self.wrap(Equivalence::discrete(self.len()))
    }

    pub fn full(&self) -> GCongruence {
        self.wrap(Equivalence::full(self.len()))
    }

    /// The equivalence whose non-singleton classes are `classes`.
    pub fn equivalence_from_classes(&self, classes: &[Vec<Word>]) -> Result<Equivalence> {
        let mut labels: Vec<usize> = (0..self.len()).collect();
        let mut seen = HashSet::new();
        for class in classes {
            let idx = class.iter().map(|w| self.index_of(w)).collect::<Result<Vec<_>>>()?;
            for (&i, w) in idx.iter().zip(class) {
                if !seen.insert(i) {
                    return Err(Error::Precondition(format!("{w} occurs in two classes")));
                }
                labels[i] = idx[0];
            }
        }
        Ok(Equivalence::from_labels(&labels))
    }

    pub fn is_congruence(&self, eq: &Equivalence) -> bool {
        if eq.len() != self.len() {
            return false;
        }
        let reps: Vec<usize> = eq.classes().iter().map(|c| c[0]).collect();
        self.actions.iter().all(|act| {
            (0..self.len()).all(|i| eq.related(act[i], act[reps[eq.labels()[i]]]))
        })
    }

    pub fn to_congruence(&self, eq: Equivalence) -> Result<GCongruence> {
        if eq.len() != self.len() {
            return Err(Error::CarrierMismatch);
        }
        if !self.is_congruence(&eq) {
            return Err(Error::NotACongruence(format!("not invariant on W_{}", self.lambda)));
        }
        Ok(self.wrap(eq))
    }

    /// Least congruence containing `pairs`.
    pub fn congruence_from_pairs(&self, pairs: &[(Word, Word)]) -> Result<GCongruence> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((self.index_of(a)?, self.index_of(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generated(&idx))
    }

    fn generated(&self, pairs: &[(usize, usize)]) -> GCongruence {
        let mut uf = UnionFind::new(self.len());
        for &(a, b) in pairs {
            for act in &self.actions {
                uf.union(act[a], act[b]);
            }
        }
        self.wrap(Equivalence::from_canonical(uf.labels()))
    }

    pub fn contains(&self, c: &GCongruence, a: &Word, b: &Word) -> Result<bool> {
        Ok(c.related(self.index_of(a)?, self.index_of(b)?))
    }

    /// Non-singleton classes of `c`, as words.
    pub fn describe(&self, c: &GCongruence) -> Vec<Vec<Word>> {
        c.classes
            .classes()
            .into_iter()
            .filter(|cl| cl.len() > 1)
            .map(|cl| cl.into_iter().map(|i| self.carrier[i].clone()).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_carrier: usize,
    /// Carriers up to this size are enumerated through all set partitions.
    pub bell_threshold: usize,
    pub max_results: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_carrier: 12,
            bell_threshold: 9,
            max_results: 5_000_000,
        }
    }
}

/// All congruences of `g`, sorted by their class labels.
pub fn enumerate_congruences(g: &GSet, budget: &EnumerationBudget) -> Result<Vec<GCongruence>> {
    if g.len() > budget.max_carrier {
        return Err(Error::Budget(format!(
            "carrier of W_{} has {} elements, limit is {}",
            g.lambda,
            g.len(),
            budget.max_carrier
        )));
    }
    if g.len() <= budget.bell_threshold {
        enumerate_by_filter(g, budget.max_results)
    } else {
        enumerate_by_closure(g, budget.max_results)
    }
}

/// Filters every set partition of the carrier through [`GSet::is_congruence`].
pub fn enumerate_by_filter(g: &GSet, max_results: usize) -> Result<Vec<GCongruence>> {
    let mut out = Vec::new();
    for labels in SetPartitions::new(g.len()) {
        let eq = Equivalence::from_canonical(labels);
        if g.is_congruence(&eq) {
            if out.len() == max_results {
                return Err(Error::Budget(format!("more than {max_results} congruences")));
            }
            out.push(g.wrap(eq));
        }
    }
    Ok(out)
}

/// Closes the principal congruences under joins.
pub fn enumerate_by_closure(g: &GSet, max_results: usize) -> Result<Vec<GCongruence>> {
    let n = g.len();
    let principals: Vec<Equivalence> = (0..n)
        .tuple_combinations()
        .map(|(a, b)| g.generated(&[(a, b)]).classes)
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let mut seen: HashSet<Equivalence> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(Equivalence::discrete(n));
    queue.push_back(Equivalence::discrete(n));
    while let Some(c) = queue.pop_front() {
        for p in &principals {
            if p.leq(&c) {
                continue;
            }
            let j = c.join(p)?;
            if seen.insert(j.clone()) {
                if seen.len() > max_results {
                    return Err(Error::Budget(format!("more than {max_results} congruences")));
                }
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<Equivalence> = seen.into_iter().collect();
    out.sort();
    Ok(out.into_iter().map(|eq| g.wrap(eq)).collect())
}

/// Both sides of `(x ∨ y) ∧ z = (x ∧ z) ∨ y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularInstance {
    pub lhs: GCongruence,
    pub rhs: GCongruence,
    pub equal: bool,
    pub y_below_z: bool,
    /// `rhs ⊆ lhs`; guaranteed when `y ⊆ z`.
    pub rhs_below_lhs: bool,
}

pub fn check_modular_instance(x: &GCongruence, y: &GCongruence, z: &GCongruence) -> Result<ModularInstance> {
    let lhs = x.join(y)?.meet(z)?;
    let rhs = x.meet(z)?.join(y)?;
    Ok(ModularInstance {
        equal: lhs == rhs,
        y_below_z: y.leq(z)?,
        rhs_below_lhs: rhs.leq(&lhs)?,
        lhs,
        rhs,
    })
}
