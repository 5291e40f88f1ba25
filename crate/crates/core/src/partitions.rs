//! Set partitions as restricted growth strings, equivalences on `0..n`, and a
//! small union-find.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Iterates all partitions of `{0..n}` as restricted growth strings: `a[0] = 0`
/// and `a[i] <= 1 + max(a[..i])`. Lexicographic order, `Bell(n)` items.
pub struct SetPartitions {
    current: Vec<usize>,
    /// `maxes[i] = max(current[..=i])`
    maxes: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> SetPartitions {
        SetPartitions {
            current: vec![0; n],
            maxes: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let n = self.current.len();
        // rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] <= self.maxes[i - 1] {
                self.current[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                break;
            }
        }
        Some(out)
    }
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("non-empty")];
        for &x in &row {
            let last = *next.last().expect("non-empty");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[derive(Clone, Debug)]
pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    /// Merges the classes of `a` and `b`; true if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }

    /// Canonical class labels: classes numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.0.len();
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        canonical_labels(&roots)
    }
}

/// Relabels so that classes are numbered `0, 1, ...` by first occurrence.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// An equivalence on `0..len`, stored as canonical class labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct Equivalence(Vec<usize>);

impl Equivalence {
    pub(crate) fn from_canonical(labels: Vec<usize>) -> Equivalence {
        debug_assert_eq!(canonical_labels(&labels), labels);
        Equivalence(labels)
    }

    pub fn from_labels(labels: &[usize]) -> Equivalence {
        Equivalence(canonical_labels(labels))
    }

    pub fn discrete(n: usize) -> Equivalence {
        Equivalence((0..n).collect())
    }

    pub fn full(n: usize) -> Equivalence {
        Equivalence(vec![0; n])
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.0.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.0.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// True if every class of `self` lies inside a class of `other`.
    pub fn leq(&self, other: &Equivalence) -> bool {
        let mut image = vec![usize::MAX; self.class_count()];
        self.0.iter().zip(&other.0).all(|(&a, &b)| {
            if image[a] == usize::MAX {
                image[a] = b;
            }
            image[a] == b
        })
    }

    fn check_len(&self, other: &Equivalence) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn join(&self, other: &Equivalence) -> Result<Equivalence> {
        self.check_len(other)?;
        let mut uf = UnionFind::new(self.len());
        let mut first = vec![usize::MAX; self.len()];
        for labels in [&self.0, &other.0] {
            first.iter_mut().for_each(|f| *f = usize::MAX);
            for (i, &c) in labels.iter().enumerate() {
                if first[c] == usize::MAX {
                    first[c] = i;
                } else {
                    uf.union(first[c], i);
                }
            }
        }
        Ok(Equivalence(uf.labels()))
    }

    pub fn meet(&self, other: &Equivalence) -> Result<Equivalence> {
        self.check_len(other)?;
        let mut map = HashMap::new();
        let labels: Vec<usize> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|pair| {
                let next = map.len();
                *map.entry(pair).or_insert(next)
            })
            .collect();
        Ok(Equivalence(labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expected = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell(n), b);
        }
        assert_eq!(bell(12), 4_213_597);
    }

    #[test]
    fn enumeration_counts_match_bell() {
        for n in 1..=8 {
            let all: Vec<_> = SetPartitions::new(n).collect();
            assert_eq!(all.len() as u128, bell(n), "n = {n}");
            assert!(all.iter().all(|p| canonical_labels(p) == *p));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn three_set() {
        let all: Vec<_> = SetPartitions::new(3).collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]
        );
    }

    #[test]
    fn union_find_labels() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 0);
        assert_eq!(uf.labels(), vec![0, 1, 2, 1, 0]);
        assert!(!uf.union(1, 3));
    }
}
