//! Word-problem criteria: when does `u = v` (or `w = 0`) hold in a variety.
//!
//! Each criterion is a syntactic test on the two words. The right-zero, `C_2`
//! and `P` tests are the classical ones; `LZ` and the mirror of `P` are their
//! left-right duals; `SL`, `COM` and the general `C_m` test are folklore and
//! are cross-checked against finite models in the test suites.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{Identity, IdentitySystem};
use crate::instance::find_instance;
use crate::models::{BuiltinModel, FiniteSemigroup};
use crate::words::{all_words, Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VarietyId {
    /// Trivial variety.
    T,
    /// Semilattices.
    SL,
    /// Left zero semigroups.
    LZ,
    /// Right zero semigroups.
    RZ,
    /// Commutative semigroups.
    COM,
    /// `var{x^m = x^(m+1), xy = yx}`; `C(0)` is `T` and `C(1)` is `SL`.
    C(u32),
    /// `var{xy = x^2 y, x^2 y^2 = y^2 x^2}`.
    P,
    /// `var{xy = x y^2, x^2 y^2 = y^2 x^2}`, the mirror image of `P`.
    Prev,
    /// Given by the zero identities `w = 0`, `w` in the (non-empty) set.
    ZeroReduced(Vec<Word>),
}

impl VarietyId {
    pub fn zero_reduced(patterns: Vec<Word>) -> Result<VarietyId> {
        if patterns.is_empty() {
            return Err(Error::Precondition("a 0-reduced variety needs at least one pattern".into()));
        }
        Ok(VarietyId::ZeroReduced(patterns))
    }

    /// A defining system of identities over `a, b`.
    pub fn defining_system(&self) -> IdentitySystem {
        let ids: Vec<&str> = match self {
            VarietyId::T | VarietyId::C(0) => vec!["a = b"],
            VarietyId::SL | VarietyId::C(1) => vec!["a = aa", "ab = ba"],
            VarietyId::LZ => vec!["ab = a"],
            VarietyId::RZ => vec!["ab = b"],
            VarietyId::COM => vec!["ab = ba"],
            VarietyId::P => vec!["ab = aab", "aabb = bbaa"],
            VarietyId::Prev => vec!["ab = abb", "aabb = bbaa"],
            VarietyId::C(m) => {
                let x = Letter::x(1);
                let power = Identity::Equation(
                    Word::letter_power(x, *m as usize),
                    Word::letter_power(x, *m as usize + 1),
                );
                return IdentitySystem::from_identities(
                    self.to_string(),
                    [power, "ab = ba".parse().expect("literal")],
                );
            }
            VarietyId::ZeroReduced(ws) => {
                return IdentitySystem::from_identities(
                    self.to_string(),
                    ws.iter().cloned().map(Identity::Zero),
                );
            }
        };
        IdentitySystem::from_identities(
            self.to_string(),
            ids.into_iter().map(|s| s.parse().expect("literal")),
        )
    }

    /// Small semigroups lying in the variety. Used only for sound refutation;
    /// none of them is claimed to generate the variety.
    pub fn builtin_models(&self) -> Vec<FiniteSemigroup> {
        use BuiltinModel::*;
        let b = FiniteSemigroup::builtin;
        match self {
            VarietyId::T | VarietyId::C(0) => vec![b(Trivial)],
            VarietyId::SL | VarietyId::C(1) => vec![b(Trivial), b(Semilattice2)],
            VarietyId::LZ => vec![b(LeftZero2)],
            VarietyId::RZ => vec![b(RightZero2)],
            VarietyId::COM => vec![
                b(Semilattice2),
                b(Cyclic(2)),
                b(Cyclic(3)),
                b(CyclicMonoid(2)),
                b(CyclicMonoid(3)),
                b(Nil2),
            ],
            VarietyId::C(m) => {
                let mut out = vec![b(Semilattice2), b(Nil2)];
                out.extend((1..=(*m as usize).min(4)).map(|k| b(CyclicMonoid(k))));
                out
            }
            VarietyId::P => vec![b(Semilattice2), b(Nil2), p3(false)],
            VarietyId::Prev => vec![b(Semilattice2), b(Nil2), p3(true)],
            VarietyId::ZeroReduced(ws) => {
                let mut out = vec![b(Trivial)];
                if ws.iter().all(|w| w.len() >= 2) {
                    out.push(b(Nil2));
                }
                out
            }
        }
    }
}

/// `{0, a, e}` with `ex = x` for every `x` and every other product 0. A
/// non-commutative member of `P`; its transpose lies in the mirror variety.
fn p3(mirrored: bool) -> FiniteSemigroup {
    let rows = vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 2]];
    let rows = if mirrored {
        (0..3).map(|i| (0..3).map(|j| rows[j][i]).collect()).collect()
    } else {
        rows
    };
    let name = if mirrored { "P3rev" } else { "P3" };
    FiniteSemigroup::validate(name, rows).expect("associative")
}

impl fmt::Display for VarietyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyId::T => write!(f, "T"),
            VarietyId::SL => write!(f, "SL"),
            VarietyId::LZ => write!(f, "LZ"),
            VarietyId::RZ => write!(f, "RZ"),
            VarietyId::COM => write!(f, "COM"),
            VarietyId::C(m) => write!(f, "C{m}"),
            VarietyId::P => write!(f, "P"),
            VarietyId::Prev => write!(f, "Prev"),
            VarietyId::ZeroReduced(ws) => {
                let ws: Vec<String> = ws.iter().map(Word::to_string).collect();
                write!(f, "ZR({})", ws.join(","))
            }
        }
    }
}

impl FromStr for VarietyId {
    type Err = Error;

    /// Accepts `T SL LZ RZ COM P Prev`, `C<m>` or `Cm(<m>)`, and `ZR(w1,w2,...)`.
    fn from_str(s: &str) -> Result<VarietyId> {
        let s = s.trim();
        Ok(match s {
            "T" => VarietyId::T,
            "SL" => VarietyId::SL,
            "LZ" => VarietyId::LZ,
            "RZ" => VarietyId::RZ,
            "COM" => VarietyId::COM,
            "P" => VarietyId::P,
            "Prev" | "P_rev" => VarietyId::Prev,
            _ => {
                if let Some(inner) = s.strip_prefix("ZR(").and_then(|r| r.strip_suffix(')')) {
                    let ws = inner
                        .split(',')
                        .map(|w| w.trim().parse())
                        .collect::<Result<Vec<Word>>>()?;
                    VarietyId::zero_reduced(ws)?
                } else if let Some(m) = s
                    .strip_prefix("Cm(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix('C'))
                    .and_then(|m| m.parse::<u32>().ok())
                {
                    VarietyId::C(m)
                } else {
                    return Err(Error::UnknownName(s.to_string()));
                }
            }
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Which clause of a criterion decided the answer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Reason {
    /// Every identity holds in `T`.
    TrivialVariety,
    /// The two sides are the same word.
    Literal,
    /// `letter` occurs on one side only.
    ContentDiffers { letter: Letter },
    ContentAgrees,
    LastLetters { left: Letter, right: Letter },
    FirstLetters { left: Letter, right: Letter },
    /// Counts of `letter` differ and, when `threshold` is set, are not both at least it.
    CountMismatch { letter: Letter, left: usize, right: usize, threshold: Option<usize> },
    CountsAgree { threshold: Option<usize> },
    /// Counts of the last (or first) letters on each side.
    EdgeMultiplicity { left: (Letter, usize), right: (Letter, usize) },
    /// Both sides contain instances of 0-patterns.
    BothZero { left: Word, right: Word },
    /// The given side contains no instance of any pattern.
    NotZero { side: Side },
    /// `w` contains an instance of `pattern`.
    ZeroInstance { pattern: Word },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::TrivialVariety => write!(f, "every identity holds in T"),
            Reason::Literal => write!(f, "both sides are the same word"),
            Reason::ContentDiffers { letter } => write!(f, "{letter} occurs on one side only"),
            Reason::ContentAgrees => write!(f, "both sides have the same letters"),
            Reason::LastLetters { left, right } => write!(f, "last letters {left} and {right}"),
            Reason::FirstLetters { left, right } => write!(f, "first letters {left} and {right}"),
            Reason::CountMismatch { letter, left, right, threshold } => {
                write!(f, "{letter} occurs {left} vs {right} times")?;
                if let Some(m) = threshold {
                    write!(f, " (not both >= {m})")?;
                }
                Ok(())
            }
            Reason::CountsAgree { threshold: None } => write!(f, "every letter occurs equally often"),
            Reason::CountsAgree { threshold: Some(m) } => {
                write!(f, "every letter occurs equally often or at least {m} times on both sides")
            }
            Reason::EdgeMultiplicity { left, right } => write!(
                f,
                "edge letters {} (x{}) and {} (x{})",
                left.0, left.1, right.0, right.1
            ),
            Reason::BothZero { left, right } => {
                write!(f, "both sides contain 0-instances ({left}, {right})")
            }
            Reason::NotZero { side } => write!(f, "{side:?} side contains no 0-instance"),
            Reason::ZeroInstance { pattern } => write!(f, "contains an instance of {pattern}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub holds: bool,
    pub reason: Reason,
}

impl CheckResult {
    fn new(holds: bool, reason: Reason) -> CheckResult {
        CheckResult { holds, reason }
    }
}

fn content_check(u: &Word, v: &Word) -> Option<CheckResult> {
    let (cu, cv) = (u.content(), v.content());
    cu.symmetric_difference(&cv)
        .next()
        .map(|&letter| CheckResult::new(false, Reason::ContentDiffers { letter }))
}

/// Counts agree letter by letter, or are both at least `threshold`.
fn count_check(u: &Word, v: &Word, threshold: Option<usize>) -> CheckResult {
    let (pu, pv) = (u.profile().counts, v.profile().counts);
    for (&letter, &left) in &pu {
        let right = pv.get(&letter).copied().unwrap_or(0);
        let saturated = threshold.is_some_and(|m| left >= m && right >= m);
        if left != right && !saturated {
            return CheckResult::new(false, Reason::CountMismatch { letter, left, right, threshold });
        }
    }
    for (&letter, &right) in &pv {
        if !pu.contains_key(&letter) {
            return CheckResult::new(
                false,
                Reason::CountMismatch { letter, left: 0, right, threshold },
            );
        }
    }
    CheckResult::new(true, Reason::CountsAgree { threshold })
}

/// The criterion for `P`, applied to `u` and `v` directly or to their mirror images.
fn p_check(u: &Word, v: &Word, mirrored: bool) -> CheckResult {
    if let Some(r) = content_check(u, v) {
        return r;
    }
    let edge = |w: &Word| if mirrored { w.first_letter() } else { w.last_letter() };
    let (tu, tv) = (edge(u), edge(v));
    let (lu, lv) = (u.occurrences(tu), v.occurrences(tv));
    let holds = (lu > 1 && lv > 1) || (lu == 1 && lv == 1 && tu == tv);
    CheckResult::new(holds, Reason::EdgeMultiplicity { left: (tu, lu), right: (tv, lv) })
}

/// Decides whether `id` holds in `variety`.
///
/// Zero identities are only decided for 0-reduced varieties.
pub fn holds(variety: &VarietyId, id: &Identity) -> Result<CheckResult> {
    let (u, v) = match id {
        Identity::Equation(u, v) => (u, v),
        Identity::Zero(w) => {
            let VarietyId::ZeroReduced(patterns) = variety else {
                return Err(Error::Unsupported(format!(
                    "zero identity {id} against {variety}"
                )));
            };
            return Ok(match patterns.iter().find(|p| find_instance(w, p).is_some()) {
                Some(p) => CheckResult::new(true, Reason::ZeroInstance { pattern: p.clone() }),
                None => CheckResult::new(false, Reason::NotZero { side: Side::Left }),
            });
        }
    };
    Ok(match variety {
        VarietyId::T | VarietyId::C(0) => CheckResult::new(true, Reason::TrivialVariety),
        VarietyId::SL | VarietyId::C(1) => {
            content_check(u, v).unwrap_or(CheckResult::new(true, Reason::ContentAgrees))
        }
        VarietyId::COM => count_check(u, v, None),
        VarietyId::C(m) => {
            content_check(u, v).unwrap_or_else(|| count_check(u, v, Some(*m as usize)))
        }
        VarietyId::RZ => {
            let (left, right) = (u.last_letter(), v.last_letter());
            CheckResult::new(left == right, Reason::LastLetters { left, right })
        }
        VarietyId::LZ => {
            let (left, right) = (u.first_letter(), v.first_letter());
            CheckResult::new(left == right, Reason::FirstLetters { left, right })
        }
        VarietyId::P => p_check(u, v, false),
        VarietyId::Prev => p_check(u, v, true),
        VarietyId::ZeroReduced(patterns) => {
            if u == v {
                return Ok(CheckResult::new(true, Reason::Literal));
            }
            let zero_in = |w: &Word| patterns.iter().find(|p| find_instance(w, p).is_some()).cloned();
            match (zero_in(u), zero_in(v)) {
                (Some(left), Some(right)) => {
                    CheckResult::new(true, Reason::BothZero { left, right })
                }
                (None, _) => CheckResult::new(false, Reason::NotZero { side: Side::Left }),
                (_, None) => CheckResult::new(false, Reason::NotZero { side: Side::Right }),
            }
        }
    })
}

/// An identity holds in a join iff it holds in every joinand.
pub fn holds_in_join(varieties: &[VarietyId], id: &Identity) -> Result<bool> {
    for v in varieties {
        if !holds(v, id)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of an exhaustive bounded scan.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ScanOutcome {
    pub holds: bool,
    pub counterexample: Option<Identity>,
    /// Number of identities examined.
    pub checked: usize,
}

/// Checks that every identity of `C_2 ∨ RZ` with sides of length at most
/// `max_len` over at most `max_letters` letters also holds in `P`.
pub fn join_contains_p_scan(max_len: usize, max_letters: u32) -> Result<ScanOutcome> {
    if max_len == 0 || max_letters == 0 {
        return Err(Error::Bounds("scan bounds must be at least 1".into()));
    }
    let words = all_words(max_len, max_letters);
    let join = [VarietyId::C(2), VarietyId::RZ];
    let failures: Vec<(usize, Identity)> = words
        .par_iter()
        .enumerate()
        .filter_map(|(i, u)| {
            words.iter().find_map(|v| {
                let id = Identity::Equation(u.clone(), v.clone());
                let in_join = holds_in_join(&join, &id).expect("equations are supported");
                let in_p = holds(&VarietyId::P, &id).expect("equations are supported").holds;
                (in_join && !in_p).then_some((i, id))
            })
        })
        .collect();
    let counterexample = failures.into_iter().min_by_key(|(i, _)| *i).map(|(_, id)| id);
    Ok(ScanOutcome {
        holds: counterexample.is_none(),
        counterexample,
        checked: words.len() * words.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    fn check(v: &VarietyId, s: &str) -> bool {
        holds(v, &id(s)).unwrap().holds
    }

    #[test]
    fn word_problem_examples() {
        assert!(check(&VarietyId::P, "ab = aab"));
        assert!(!check(&VarietyId::P, "ab = ba"));
        assert!(check(&VarietyId::RZ, "ab = cb"));
        assert!(check(&VarietyId::C(2), "aabb = bbaa"));
        assert!(!check(&VarietyId::C(2), "ab = aab"));
        assert!(check(&VarietyId::T, "ab = c"));
        let zr = VarietyId::zero_reduced(vec!["aa".parse().unwrap()]).unwrap();
        assert!(check(&zr, "abab = baba"));
    }

    #[test]
    fn reasons_name_the_deciding_clause() {
        let r = holds(&VarietyId::P, &id("ab = ba")).unwrap();
        assert_eq!(
            r.reason,
            Reason::EdgeMultiplicity { left: (Letter::x(2), 1), right: (Letter::x(1), 1) }
        );
        let r = holds(&VarietyId::C(2), &id("ab = aab")).unwrap();
        assert_eq!(
            r.reason,
            Reason::CountMismatch { letter: Letter::x(1), left: 1, right: 2, threshold: Some(2) }
        );
        let r = holds(&VarietyId::SL, &id("ab = a")).unwrap();
        assert_eq!(r.reason, Reason::ContentDiffers { letter: Letter::x(2) });
    }

    #[test]
    fn mirror_criteria() {
        assert!(check(&VarietyId::Prev, "ab = abb"));
        assert!(!check(&VarietyId::Prev, "ab = aab"));
        assert!(check(&VarietyId::LZ, "ab = ac"));
        assert!(!check(&VarietyId::LZ, "ab = ba"));
    }

    #[test]
    fn cm_family() {
        assert!(check(&VarietyId::C(3), "aaab = baaaa"));
        assert!(!check(&VarietyId::C(3), "aab = baaa"));
        assert!(check(&VarietyId::C(1), "aab = ba"));
        assert!(check(&VarietyId::C(0), "a = b"));
    }

    #[test]
    fn zero_identities_only_for_zero_reduced() {
        let err = holds(&VarietyId::P, &id("aa = 0")).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        let zr = VarietyId::zero_reduced(vec!["aa".parse().unwrap()]).unwrap();
        assert!(check(&zr, "abab = 0"));
        assert!(!check(&zr, "aba = 0"));
        assert!(!check(&zr, "aba = abab"));
        assert!(check(&zr, "aba = aba"));
        assert!(VarietyId::zero_reduced(vec![]).is_err());
    }

    #[test]
    fn join_examples() {
        let join = [VarietyId::C(2), VarietyId::RZ];
        assert!(!holds_in_join(&join, &id("aab = ab")).unwrap());
        assert!(holds_in_join(&join, &id("aabbc = bbaac")).unwrap());
        assert!(holds_in_join(&[VarietyId::T], &id("a = b")).unwrap());
    }

    #[test]
    fn join_scan_small() {
        let r = join_contains_p_scan(1, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked, 1);
        assert!(join_contains_p_scan(0, 1).is_err());
    }

    #[test]
    fn names_round_trip() {
        for name in ["T", "SL", "LZ", "RZ", "COM", "C2", "C5", "P", "Prev", "ZR(aa,abc)"] {
            let v: VarietyId = name.parse().unwrap();
            assert_eq!(v.to_string(), name);
        }
        assert_eq!("Cm(3)".parse::<VarietyId>().unwrap(), VarietyId::C(3));
        assert!("Q".parse::<VarietyId>().is_err());
    }

    #[test]
    fn defining_identities_pass_their_criterion() {
        let varieties = [
            VarietyId::T,
            VarietyId::SL,
            VarietyId::LZ,
            VarietyId::RZ,
            VarietyId::COM,
            VarietyId::C(2),
            VarietyId::C(3),
            VarietyId::P,
            VarietyId::Prev,
            VarietyId::zero_reduced(vec!["aa".parse().unwrap(), "abc".parse().unwrap()]).unwrap(),
        ];
        for v in &varieties {
            for ax in v.defining_system().identities() {
                assert!(holds(v, &ax).unwrap().holds, "{v}: {ax}");
            }
        }
    }

    #[test]
    fn p3_is_not_commutative() {
        assert!(!p3(false).satisfies(&id("ab = ba")).unwrap().holds);
        assert!(!p3(true).satisfies(&id("ab = ba")).unwrap().holds);
        assert!(!p3(false).satisfies(&id("ab = abb")).unwrap().holds);
    }

    #[test]
    fn builtin_models_satisfy_defining_identities() {
        let varieties = [
            VarietyId::T,
            VarietyId::SL,
            VarietyId::LZ,
            VarietyId::RZ,
            VarietyId::COM,
            VarietyId::C(2),
            VarietyId::C(4),
            VarietyId::P,
            VarietyId::Prev,
            VarietyId::zero_reduced(vec!["ab".parse().unwrap()]).unwrap(),
        ];
        for v in &varieties {
            for m in v.builtin_models() {
                for ax in v.defining_system().identities() {
                    assert!(m.satisfies(&ax).unwrap().holds, "{} in {v}: {ax}", m.name());
                }
            }
        }
    }
}
