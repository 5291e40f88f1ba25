//! Words of the free semigroup over a countable alphabet.
//!
//! Letters are positive indices. The text form writes `x1..x26` as `a..z`,
//! higher letters as `[n]`, and allows `^k` exponents on a letter or on a
//! parenthesised group: `a^3(ab)^2` is `aaaabab`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(index: u32) -> Result<Letter> {
        if index == 0 {
            return Err(Error::ZeroLetter);
        }
        Ok(Letter(index))
    }

    /// Letter `x_index`. Panics on zero; meant for literals in code and tests.
    pub const fn x(index: u32) -> Letter {
        assert!(index > 0, "letter index must be positive");
        Letter(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 <= 26 {
            write!(f, "{}", (b'a' + (self.0 - 1) as u8) as char)
        } else {
            write!(f, "[{}]", self.0)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Letter, D::Error> {
        let w: Word = Word::deserialize(deserializer)?;
        match w.letters() {
            [x] => Ok(*x),
            _ => Err(serde::de::Error::custom(format!("expected a single letter, got {w}"))),
        }
    }
}

/// A non-empty finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

#[allow(clippy::len_without_is_empty)]
impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn from_indices(indices: &[u32]) -> Result<Word> {
        let letters = indices
            .iter()
            .map(|&i| Letter::new(i))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn letter(x: Letter) -> Word {
        Word(vec![x])
    }

    /// `x^k`; `k` must be at least one.
    pub fn letter_power(x: Letter, k: usize) -> Word {
        assert!(k > 0, "empty power");
        Word(vec![x; k])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    pub fn occurrences(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    pub fn first_letter(&self) -> Letter {
        self.0[0]
    }

    pub fn last_letter(&self) -> Letter {
        self.0[self.0.len() - 1]
    }

    /// Largest letter index occurring in the word.
    pub fn max_letter(&self) -> Letter {
        *self.0.iter().max().expect("non-empty")
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self^k`; `k` must be at least one.
    pub fn pow(&self, k: usize) -> Word {
        assert!(k > 0, "empty power");
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn apply(&self, s: &Substitution) -> Word {
        let mut out = Vec::with_capacity(self.len());
        for &x in &self.0 {
            match s.0.get(&x) {
                Some(image) => out.extend_from_slice(&image.0),
                None => out.push(x),
            }
        }
        Word(out)
    }

    /// Letter-wise relabelling `uπ`. Every letter must lie in the domain of `p`.
    pub fn permute(&self, p: &LetterPermutation) -> Result<Word> {
        self.0
            .iter()
            .map(|&x| {
                p.apply(x)
                    .ok_or_else(|| Error::LetterOutsideDomain(format!("{x:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn profile(&self) -> LetterProfile {
        let mut counts = BTreeMap::new();
        for &x in &self.0 {
            *counts.entry(x).or_insert(0usize) += 1;
        }
        let mut parts: Vec<usize> = counts.values().copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        LetterProfile { parts, counts }
    }

    /// Compact rendering with exponents on letter runs, e.g. `a^3b^2`.
    pub fn to_power_string(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == x {
                j += 1;
            }
            out.push_str(&x.to_string());
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut parser = WordParser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let letters = parser.sequence()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected character"));
        }
        Word::new(letters).map_err(|_| Error::InvalidWord(s.to_string(), "empty word".into()))
    }
}

struct WordParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidWord(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn sequence(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.get(self.pos) {
            let item = match c {
                'a'..='z' => {
                    self.pos += 1;
                    vec![Letter(c as u32 - 'a' as u32 + 1)]
                }
                '[' => {
                    self.pos += 1;
                    let n = self.number()?;
                    self.expect(']')?;
                    vec![Letter::new(n as u32).map_err(|_| self.error("letter [0]"))?]
                }
                '(' => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    self.expect(')')?;
                    if inner.is_empty() {
                        return Err(self.error("empty group"));
                    }
                    inner
                }
                _ => break,
            };
            let reps = if self.chars.get(self.pos) == Some(&'^') {
                self.pos += 1;
                let k = self.number()?;
                if k == 0 {
                    return Err(self.error("zero exponent"));
                }
                k
            } else {
                1
            };
            for _ in 0..reps {
                out.extend_from_slice(&item);
            }
        }
        Ok(out)
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("number too large"))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiplicities of a word: the sorted multiset and the per-letter counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterProfile {
    /// Letter multiplicities, non-increasing.
    pub parts: Vec<usize>,
    pub counts: BTreeMap<Letter, usize>,
}

/// True iff every letter occurs equally often in `u` and `v`.
pub fn is_balanced(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && u.profile().counts == v.profile().counts
}

/// Endomorphism of the free semigroup, the identity outside its support.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Substitution(BTreeMap<Letter, Word>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (Letter, Word)>>(pairs: I) -> Substitution {
        Substitution(pairs.into_iter().collect())
    }

    pub fn with(mut self, x: Letter, image: Word) -> Substitution {
        self.0.insert(x, image);
        self
    }

    pub fn insert(&mut self, x: Letter, image: Word) {
        self.0.insert(x, image);
    }

    pub fn image(&self, x: Letter) -> Word {
        self.0.get(&x).cloned().unwrap_or_else(|| Word::letter(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Word)> {
        self.0.iter()
    }

    /// `t ∘ self`: first apply `self`, then `t`.
    pub fn then(&self, t: &Substitution) -> Substitution {
        let mut out: BTreeMap<Letter, Word> =
            self.0.iter().map(|(&x, w)| (x, w.apply(t))).collect();
        for (&x, w) in &t.0 {
            out.entry(x).or_insert_with(|| w.clone());
        }
        Substitution(out)
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.0.iter().map(|(x, w)| (x, w.to_string())))
            .finish()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(x, w)| format!("{x}->{w}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A bijection on a finite set of letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LetterPermutation(BTreeMap<Letter, Letter>);

impl LetterPermutation {
    pub fn new(map: BTreeMap<Letter, Letter>) -> Result<LetterPermutation> {
        let domain: BTreeSet<Letter> = map.keys().copied().collect();
        let image: BTreeSet<Letter> = map.values().copied().collect();
        if domain != image {
            return Err(Error::NotBijective(format!("{map:?}")));
        }
        Ok(LetterPermutation(map))
    }

    pub fn identity<I: IntoIterator<Item = Letter>>(letters: I) -> LetterPermutation {
        LetterPermutation(letters.into_iter().map(|x| (x, x)).collect())
    }

    /// Swap of `a` and `b`, fixing the remaining letters of `domain`.
    pub fn transposition<I: IntoIterator<Item = Letter>>(
        domain: I,
        a: Letter,
        b: Letter,
    ) -> LetterPermutation {
        let mut map: BTreeMap<Letter, Letter> = domain.into_iter().map(|x| (x, x)).collect();
        map.insert(a, b);
        map.insert(b, a);
        LetterPermutation(map)
    }

    pub fn apply(&self, x: Letter) -> Option<Letter> {
        self.0.get(&x).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }

    /// First `self`, then `other`. Domains must agree.
    pub fn then(&self, other: &LetterPermutation) -> Result<LetterPermutation> {
        self.0
            .iter()
            .map(|(&x, &y)| {
                other
                    .apply(y)
                    .map(|z| (x, z))
                    .ok_or_else(|| Error::LetterOutsideDomain(format!("{y:?}")))
            })
            .collect::<Result<BTreeMap<_, _>>>()
            .and_then(LetterPermutation::new)
    }

    pub fn inverse(&self) -> LetterPermutation {
        LetterPermutation(self.0.iter().map(|(&x, &y)| (y, x)).collect())
    }
}

/// All words of length `1..=max_len` over `x_1..x_letters`, shortest first,
/// lexicographic within a length.
pub fn all_words(max_len: usize, letters: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters as usize);
        for w in &layer {
            for i in 1..=letters {
                let mut v = w.clone();
                v.push(Letter(i));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        layer = next;
    }
    out
}
