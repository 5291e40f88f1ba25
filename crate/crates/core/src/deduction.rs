//! Bounded equational deduction.
//!
//! Words are connected by one-step rewrites `a·s(p)·b → a·s(q)·b` where
//! `p = q` or `q = p` is an axiom and `s` a substitution. A derivation is a
//! path in this undirected graph; the search is a bidirectional breadth-first
//! search with caps on word length, image length and visited states. A
//! `Proved` answer is always a genuine consequence; running out of budget gives
//! `Unknown`, never a refutation.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{holds, ScanOutcome, VarietyId};
use crate::error::{Error, Result};
use crate::identity::{Identity, IdentitySystem};
use crate::instance::{binding_substitution, for_each_match_at};
use crate::models::{Assignment, FiniteSemigroup};
use crate::partitions::UnionFind;
use crate::sapir::{fresh_letters, sapir_system, Family};
use crate::words::{all_words, Letter, Substitution, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Bounds {
    pub max_word_length: usize,
    pub max_subst_image_length: usize,
    pub max_states: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_word_length: 16,
            max_subst_image_length: 4,
            max_states: 2_000_000,
        }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_length == 0 || self.max_subst_image_length == 0 || self.max_states == 0 {
            return Err(Error::Bounds(format!("all bounds must be positive: {self:?}")));
        }
        Ok(())
    }
}

/// One rewrite: `before = a·s(lhs)·b` becomes `after = a·s(rhs)·b`, where
/// `(lhs, rhs)` is axiom `axiom`, read right-to-left when `reversed`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RewriteStep {
    pub before: Word,
    pub after: Word,
    pub axiom: usize,
    pub reversed: bool,
    pub position: usize,
    pub substitution: Substitution,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum DeductionResult {
    Proved(Vec<RewriteStep>),
    Refuted { model: String, assignment: Assignment },
    Unknown,
}

impl DeductionResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, DeductionResult::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, DeductionResult::Refuted { .. })
    }

    pub fn trace(&self) -> Option<&[RewriteStep]> {
        match self {
            DeductionResult::Proved(t) => Some(t),
            _ => None,
        }
    }
}

struct Rule {
    lhs: Word,
    rhs: Word,
    axiom: usize,
    reversed: bool,
    /// Letters of `rhs` absent from `lhs`; their images range over all short words.
    free: Vec<Letter>,
}

/// The one-step rewrite relation of a system under fixed bounds.
pub struct Rewriter {
    axioms: Vec<(Word, Word)>,
    rules: Vec<Rule>,
    max_image: usize,
    max_len: usize,
    free_images: Vec<Word>,
}

impl Rewriter {
    /// Images of letters that appear on one side of an axiom only are drawn
    /// from words over `alphabet`.
    pub fn new(
        system: &IdentitySystem,
        alphabet: &BTreeSet<Letter>,
        max_image: usize,
        max_len: usize,
    ) -> Rewriter {
        let axioms = system.as_equations();
        let mut rules = Vec::with_capacity(axioms.len() * 2);
        for (i, (p, q)) in axioms.iter().enumerate() {
            for (lhs, rhs, reversed) in [(p, q, false), (q, p, true)] {
                let bound = lhs.content();
                rules.push(Rule {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    axiom: i,
                    reversed,
                    free: rhs.content().into_iter().filter(|x| !bound.contains(x)).collect(),
                });
            }
        }
        let free_images = words_over(alphabet, max_image);
        Rewriter {
            axioms,
            rules,
            max_image,
            max_len,
            free_images,
        }
    }

    pub fn axioms(&self) -> &[(Word, Word)] {
        &self.axioms
    }

    fn for_each_successor<F>(&self, word: &[Letter], mut f: F) -> ControlFlow<()>
    where
        F: FnMut(Vec<Letter>, &Rule, usize, &dyn Fn() -> Substitution) -> ControlFlow<()>,
    {
        let n = word.len();
        for rule in &self.rules {
            if rule.lhs.len() > n {
                continue;
            }
            for start in 0..=n - rule.lhs.len() {
                for_each_match_at(&rule.lhs, word, start, self.max_image, |end, binding| {
                    let mut choice = vec![0usize; rule.free.len()];
                    loop {
                        let mut next = Vec::with_capacity(n + rule.rhs.len());
                        next.extend_from_slice(&word[..start]);
                        for x in rule.rhs.letters() {
                            if let Some(&(_, off, len)) = binding.iter().find(|b| b.0 == *x) {
                                next.extend_from_slice(&word[off..off + len]);
                            } else {
                                let k = rule.free.iter().position(|y| y == x).expect("free letter");
                                next.extend_from_slice(self.free_images[choice[k]].letters());
                            }
                        }
                        next.extend_from_slice(&word[end..]);
                        if next.len() <= self.max_len {
                            let subst = || {
                                let mut s = binding_substitution(word, binding);
                                for (x, &c) in rule.free.iter().zip(&choice) {
                                    s.insert(*x, self.free_images[c].clone());
                                }
                                s
                            };
                            f(next, rule, start, &subst)?;
                        }
                        if !bump(&mut choice, self.free_images.len()) {
                            break;
                        }
                    }
                    ControlFlow::Continue(())
                })?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Every word reachable from `word` in one step, possibly with repeats.
    pub fn successors(&self, word: &[Letter]) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let _ = self.for_each_successor(word, |next, _, _, _| {
            out.push(next);
            ControlFlow::Continue(())
        });
        out
    }

    /// A single rewrite step turning `from` into `to`, if one exists.
    pub fn step_between(&self, from: &Word, to: &Word) -> Option<RewriteStep> {
        let mut found = None;
        let _ = self.for_each_successor(from.letters(), |next, rule, position, substitution| {
            if next == to.letters() {
                found = Some(RewriteStep {
                    before: from.clone(),
                    after: to.clone(),
                    axiom: rule.axiom,
                    reversed: rule.reversed,
                    position,
                    substitution: substitution(),
                });
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        found
    }
}

fn bump(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn words_over(alphabet: &BTreeSet<Letter>, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = alphabet.iter().copied().collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &letters {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(|v| Word::new(v).expect("non-empty")));
        layer = next;
    }
    out
}

/// Searches for a derivation of `id` from `system` within `bounds`.
pub fn derive(system: &IdentitySystem, id: &Identity, bounds: &Bounds) -> Result<DeductionResult> {
    bounds.validate()?;
    let Identity::Equation(u, v) = id else {
        return Err(Error::Unsupported(format!("derive needs an equation, got {id}")));
    };
    if u == v {
        return Ok(DeductionResult::Proved(Vec::new()));
    }
    if u.len() > bounds.max_word_length || v.len() > bounds.max_word_length {
        return Ok(DeductionResult::Unknown);
    }
    let rewriter = Rewriter::new(
        system,
        &id.content(),
        bounds.max_subst_image_length,
        bounds.max_word_length,
    );
    let Some(path) = bidirectional_search(&rewriter, u, v, bounds.max_states) else {
        return Ok(DeductionResult::Unknown);
    };
    let trace = path
        .windows(2)
        .map(|pair| {
            rewriter
                .step_between(&pair[0], &pair[1])
                .expect("consecutive words on a search path are one step apart")
        })
        .collect();
    Ok(DeductionResult::Proved(trace))
}

struct Side {
    seen: HashMap<Vec<Letter>, usize>,
    nodes: Vec<Vec<Letter>>,
    /// Parent node of each node; `usize::MAX` for the root.
    parents: Vec<usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: &Word) -> Side {
        let mut seen = HashMap::new();
        seen.insert(root.letters().to_vec(), 0);
        Side {
            seen,
            nodes: vec![root.letters().to_vec()],
            parents: vec![usize::MAX],
            frontier: vec![0],
        }
    }

    fn add(&mut self, w: Vec<Letter>, parent: usize) -> usize {
        let idx = self.nodes.len();
        self.seen.insert(w.clone(), idx);
        self.nodes.push(w);
        self.parents.push(parent);
        idx
    }

    /// Words from node `idx` back to the root.
    fn path_to_root(&self, mut idx: usize) -> Vec<Word> {
        let mut out = Vec::new();
        while idx != usize::MAX {
            out.push(Word::new(self.nodes[idx].clone()).expect("non-empty"));
            idx = self.parents[idx];
        }
        out
    }
}

/// Path of words from `u` to `v`, or `None` when the state budget runs out
/// or a component is exhausted.
fn bidirectional_search(rw: &Rewriter, u: &Word, v: &Word, max_states: usize) -> Option<Vec<Word>> {
    let mut sides = [Side::new(u), Side::new(v)];
    loop {
        if sides[0].frontier.is_empty() || sides[1].frontier.is_empty() {
            return None;
        }
        let k = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        let frontier = std::mem::take(&mut sides[k].frontier);
        let expansions: Vec<(usize, Vec<Vec<Letter>>)> = frontier
            .par_iter()
            .map(|&i| (i, rw.successors(&sides[k].nodes[i])))
            .collect();
        let mut next = Vec::new();
        for (i, succ) in expansions {
            for w in succ {
                if sides[k].seen.contains_key(&w) {
                    continue;
                }
                if let Some(&j) = sides[1 - k].seen.get(&w) {
                    let meet = sides[k].add(w, i);
                    let mut path: Vec<Word> = sides[k].path_to_root(meet).into_iter().rev().collect();
                    path.extend(sides[1 - k].path_to_root(j).into_iter().skip(1));
                    if k == 1 {
                        path.reverse();
                    }
                    return Some(path);
                }
                next.push(sides[k].add(w, i));
                if sides[0].nodes.len() + sides[1].nodes.len() > max_states {
                    return None;
                }
            }
        }
        sides[k].frontier = next;
    }
}

/// Checks that `trace` is a derivation of `u = v` from `system`: consecutive,
/// and each step an axiom instance placed in context.
pub fn replay_trace(system: &IdentitySystem, u: &Word, v: &Word, trace: &[RewriteStep]) -> Result<()> {
    let axioms = system.as_equations();
    let fail = |step: usize, message: String| Error::InvalidTrace { step, message };
    let mut current = u.clone();
    for (i, st) in trace.iter().enumerate() {
        if st.before != current {
            return Err(fail(i, format!("starts at {} but the previous word is {current}", st.before)));
        }
        let (p, q) = axioms
            .get(st.axiom)
            .ok_or_else(|| fail(i, format!("no axiom {}", st.axiom)))?;
        let (lhs, rhs) = if st.reversed { (q, p) } else { (p, q) };
        let (from, to) = (lhs.apply(&st.substitution), rhs.apply(&st.substitution));
        let letters = st.before.letters();
        let end = st.position + from.len();
        if end > letters.len() || &letters[st.position..end] != from.letters() {
            return Err(fail(i, format!("{from} does not occur at {} in {}", st.position, st.before)));
        }
        let mut expected = letters[..st.position].to_vec();
        expected.extend_from_slice(to.letters());
        expected.extend_from_slice(&letters[end..]);
        if expected != st.after.letters() {
            return Err(fail(i, format!("rewriting gives {expected:?}, trace says {}", st.after)));
        }
        current = st.after.clone();
    }
    if &current != v {
        return Err(fail(trace.len(), format!("derivation ends at {current}, not {v}")));
    }
    Ok(())
}

/// Searches the given models for a falsifying assignment.
pub fn refute(models: &[FiniteSemigroup], id: &Identity) -> Result<DeductionResult> {
    if !matches!(id, Identity::Equation(..)) {
        return Err(Error::Unsupported(format!("refute needs an equation, got {id}")));
    }
    for m in models {
        let s = m.satisfies(id)?;
        if !s.holds {
            return Ok(DeductionResult::Refuted {
                model: m.name().to_string(),
                assignment: s.witness.expect("failures carry a witness"),
            });
        }
    }
    Ok(DeductionResult::Unknown)
}

/// Derives `xwx = x w^(2n) x` from `xwx = xw^2x` and the basis family
/// `x v^2 y = x v y` of `S(G)` at `v = w`.
pub fn replay_case2_chain(r: u32, w: &Word, n: usize, bounds: &Bounds) -> Result<(IdentitySystem, Identity, DeductionResult)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let sg = sapir_system(r, std::slice::from_ref(w))?;
    let basis = sg
        .family(&Family::Basis(w.clone()))
        .expect("one basis word")
        .clone();
    let x = Word::letter(fresh_letters([w], 1)[0]);
    let xwx = x.concat(w).concat(&x);
    let axiom = Identity::Equation(xwx.clone(), x.concat(&w.pow(2)).concat(&x));
    let system = IdentitySystem::from_identities(format!("case 2 chain, r={r}, w={w}"), [axiom, basis]);
    let target = Identity::Equation(xwx, x.concat(&w.pow(2 * n)).concat(&x));
    let result = derive(&system, &target, bounds)?;
    Ok((system, target, result))
}

/// Checks every identity derivable from `system` through words of length at
/// most `max_len` over three letters against the criterion of `variety`.
pub fn consistency_scan(variety: &VarietyId, system: &IdentitySystem, max_len: usize) -> Result<ScanOutcome> {
    consistency_scan_with(variety, system, max_len, 3)
}

pub fn consistency_scan_with(
    variety: &VarietyId,
    system: &IdentitySystem,
    max_len: usize,
    letters: u32,
) -> Result<ScanOutcome> {
    if max_len == 0 || letters == 0 {
        return Err(Error::Bounds("scan bounds must be at least 1".into()));
    }
    let words = all_words(max_len, letters);
    let index: HashMap<&[Letter], usize> =
        words.iter().enumerate().map(|(i, w)| (w.letters(), i)).collect();
    let alphabet: BTreeSet<Letter> = (1..=letters).map(Letter::x).collect();
    let rw = Rewriter::new(system, &alphabet, max_len, max_len);
    let edges: Vec<(usize, Vec<usize>)> = words
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let succ = rw
                .successors(w.letters())
                .into_iter()
                .filter_map(|s| index.get(s.as_slice()).copied())
                .collect();
            (i, succ)
        })
        .collect();
    let mut comps = UnionFind::new(words.len());
    for (i, succ) in &edges {
        for &j in succ {
            comps.union(*i, j);
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..words.len() {
        classes.entry(comps.find(i)).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = classes.into_values().filter(|c| c.len() > 1).collect();
    classes.sort();
    let checked: usize = classes.iter().map(|c| c.len() * (c.len() - 1) / 2).sum();
    let failures: Vec<Identity> = classes
        .par_iter()
        .filter_map(|class| {
            for (a, &i) in class.iter().enumerate() {
                for &j in &class[a + 1..] {
                    let id = Identity::Equation(words[i].clone(), words[j].clone());
                    match holds(variety, &id) {
                        Ok(r) if r.holds => {}
                        _ => return Some(id),
                    }
                }
            }
            None
        })
        .collect();
    let counterexample = failures.into_iter().min();
    Ok(ScanOutcome {
        holds: counterexample.is_none(),
        counterexample,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::BuiltinModel;

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    fn sys(label: &str, ids: &[&str]) -> IdentitySystem {
        IdentitySystem::from_identities(label, ids.iter().map(|s| id(s)))
    }

    fn proved(system: &IdentitySystem, target: &str) -> Vec<RewriteStep> {
        let target = id(target);
        let r = derive(system, &target, &Bounds::default()).unwrap();
        let trace = r.trace().expect("proved").to_vec();
        let (u, v) = target.sides().unwrap();
        replay_trace(system, u, v, &trace).unwrap();
        trace
    }

    #[test]
    fn p_derives_cube() {
        let p = sys("P", &["ab = aab", "aabb = bbaa"]);
        let trace = proved(&p, "ab = aaab");
        assert!(trace.len() <= 3);
    }

    #[test]
    fn reflexivity_is_free() {
        let p = sys("P", &["ab = aab"]);
        assert_eq!(proved(&p, "abc = abc").len(), 0);
    }

    #[test]
    fn square_to_fourth_power() {
        let s = sys("chain", &["aca = acca"]);
        proved(&s, "aca = acccca");
    }

    #[test]
    fn zero_patterns_take_part() {
        let s = IdentitySystem::from_identities("nil", [id("aa = 0")]);
        // both sides collapse to zero: aab = aa = baa
        proved(&s, "aab = baa");
    }

    #[test]
    fn unknown_when_not_derivable_in_bounds() {
        let p = sys("P", &["ab = aab", "aabb = bbaa"]);
        let small = Bounds { max_word_length: 4, max_subst_image_length: 2, max_states: 10_000 };
        let r = derive(&p, &id("ab = ba"), &small).unwrap();
        assert_eq!(r, DeductionResult::Unknown);
    }

    #[test]
    fn bounds_validated() {
        let bad = Bounds { max_states: 0, ..Bounds::default() };
        assert!(derive(&sys("x", &["a = aa"]), &id("a = aa"), &bad).is_err());
        assert!(derive(&sys("x", &["a = aa"]), &id("a = 0"), &Bounds::default()).is_err());
    }

    #[test]
    fn tampered_traces_rejected() {
        let p = sys("P", &["ab = aab"]);
        let mut trace = proved(&p, "ab = aaab");
        trace[0].position += 1;
        let (u, v) = (id("ab = aaab").sides().map(|(a, b)| (a.clone(), b.clone()))).unwrap();
        assert!(replay_trace(&p, &u, &v, &trace).is_err());
        assert!(replay_trace(&p, &u, &"aab".parse().unwrap(), &[]).is_err());
    }

    #[test]
    fn refute_examples() {
        let rz = FiniteSemigroup::builtin(BuiltinModel::RightZero2);
        assert!(refute(&[rz], &id("ab = ba")).unwrap().is_refuted());
        let z2 = FiniteSemigroup::builtin(BuiltinModel::Cyclic(2));
        assert_eq!(refute(&[z2], &id("aa = aaaa")).unwrap(), DeductionResult::Unknown);
        assert_eq!(refute(&[], &id("ab = ba")).unwrap(), DeductionResult::Unknown);
    }

    #[test]
    fn case2_chain_small() {
        let (system, target, r) = replay_case2_chain(1, &"a".parse().unwrap(), 1, &Bounds::default()).unwrap();
        assert!(system.contains(&target));
        let trace = r.trace().unwrap();
        assert_eq!(trace.len(), 1);
        assert!(replay_case2_chain(1, &"a".parse().unwrap(), 0, &Bounds::default()).is_err());
    }

    #[test]
    fn consistency_small() {
        let sl = VarietyId::SL;
        let r = consistency_scan(&sl, &sl.defining_system(), 3).unwrap();
        assert!(r.holds, "{r:?}");
        // deliberately wrong criterion: SL axioms are not sound for COM
        let r = consistency_scan(&VarietyId::COM, &sl.defining_system(), 3).unwrap();
        assert!(!r.holds);
    }
}
