//! Finite semigroups given by Cayley tables, used to refute identities.
//!
//! Table file format: the order `n` on the first line, then `n` rows of `n`
//! space-separated 0-based indices, optionally followed by `zero: k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::words::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSemigroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    zero: Option<usize>,
}

/// Values of letters in a model.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Assignment(pub BTreeMap<Letter, usize>);

impl Assignment {
    pub fn get(&self, x: Letter) -> Option<usize> {
        self.0.get(&x).copied()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(x, e)| format!("{x}={e}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Outcome of an exhaustive satisfaction check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Satisfaction {
    pub holds: bool,
    /// First falsifying assignment in lexicographic order, when `holds` is false.
    pub witness: Option<Assignment>,
}

impl FiniteSemigroup {
    /// Checks shape, range and associativity of all `n^3` triples.
    pub fn validate(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<FiniteSemigroup> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= order) {
                return Err(Error::InvalidTable(format!("entry {bad} in row {i} out of range")));
            }
            table.extend_from_slice(row);
        }
        let mut s = FiniteSemigroup {
            name: name.into(),
            order,
            table,
            zero: None,
        };
        for a in 0..order {
            for b in 0..order {
                let ab = s.mul(a, b);
                for c in 0..order {
                    if s.mul(ab, c) != s.mul(a, s.mul(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        s.zero = (0..order).find(|&z| s.is_zero(z));
        Ok(s)
    }

    fn is_zero(&self, z: usize) -> bool {
        (0..self.order).all(|a| self.mul(a, z) == z && self.mul(z, a) == z)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// The absorbing element, if any.
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Value of `w`; every letter of `w` must be assigned.
    pub fn evaluate(&self, w: &Word, assignment: &Assignment) -> usize {
        let mut letters = w.letters().iter();
        let value = |x: &Letter| {
            assignment
                .get(*x)
                .unwrap_or_else(|| panic!("letter {x:?} is unassigned"))
        };
        let first = value(letters.next().expect("non-empty"));
        letters.fold(first, |acc, x| self.mul(acc, value(x)))
    }

    /// Exhaustive check over all `n^k` assignments of the identity's letters.
    ///
    /// `w = 0` holds iff the semigroup has a zero and every value of `w` is it;
    /// asking this of a semigroup without a zero is an error.
    pub fn satisfies(&self, id: &Identity) -> Result<Satisfaction> {
        let zero = match id {
            Identity::Zero(_) => Some(self.zero.ok_or_else(|| Error::NoZero(self.name.clone()))?),
            Identity::Equation(..) => None,
        };
        let letters: Vec<Letter> = id.content().into_iter().collect();
        let mut values = vec![0usize; letters.len()];
        loop {
            let a = Assignment(letters.iter().copied().zip(values.iter().copied()).collect());
            let ok = match id {
                Identity::Equation(u, v) => self.evaluate(u, &a) == self.evaluate(v, &a),
                Identity::Zero(w) => Some(self.evaluate(w, &a)) == zero,
            };
            if !ok {
                return Ok(Satisfaction {
                    holds: false,
                    witness: Some(a),
                });
            }
            if !advance(&mut values, self.order) {
                return Ok(Satisfaction {
                    holds: true,
                    witness: None,
                });
            }
        }
    }

    /// Componentwise product; the pair `(i, j)` has index `i * |other| + j`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for i in 0..n * m {
            for j in 0..n * m {
                let a = self.mul(i / m, j / m);
                let b = other.mul(i % m, j % m);
                table.push(a * m + b);
            }
        }
        let zero = match (self.zero, other.zero) {
            (Some(a), Some(b)) => Some(a * m + b),
            _ => None,
        };
        FiniteSemigroup {
            name: format!("{}x{}", self.name, other.name),
            order: n * m,
            table,
            zero,
        }
    }

    pub fn builtin(model: BuiltinModel) -> FiniteSemigroup {
        let rows: Vec<Vec<usize>> = match model {
            BuiltinModel::LeftZero2 => vec![vec![0, 0], vec![1, 1]],
            BuiltinModel::RightZero2 => vec![vec![0, 1], vec![0, 1]],
            BuiltinModel::Semilattice2 => vec![vec![0, 0], vec![0, 1]],
            BuiltinModel::Cyclic(r) => (0..r).map(|i| (0..r).map(|j| (i + j) % r).collect()).collect(),
            // element i stands for a^i, with a^0 the identity
            BuiltinModel::CyclicMonoid(m) => (0..=m)
                .map(|i| (0..=m).map(|j| (i + j).min(m)).collect())
                .collect(),
            // 0 is a, 1 is zero
            BuiltinModel::Nil2 => vec![vec![1, 1], vec![1, 1]],
            BuiltinModel::Trivial => vec![vec![0]],
        };
        FiniteSemigroup::validate(model.to_string(), rows).expect("builtin tables are semigroups")
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<FiniteSemigroup> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (line, first) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing order line".into()))?;
        let order: usize = first
            .parse()
            .map_err(|_| parse_err(line, format!("bad order {first:?}")))?;
        let mut rows = Vec::with_capacity(order);
        let mut declared_zero = None;
        for (line, text) in lines {
            if let Some(rest) = text.strip_prefix("zero:") {
                let z: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad zero {rest:?}")))?;
                declared_zero = Some((line, z));
                continue;
            }
            if rows.len() == order {
                return Err(parse_err(line, "too many rows".into()));
            }
            let row = text
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != order {
            return Err(Error::InvalidTable(format!("expected {order} rows, found {}", rows.len())));
        }
        let s = FiniteSemigroup::validate(name, rows)?;
        if let Some((line, z)) = declared_zero {
            if z >= order || !s.is_zero(z) {
                return Err(parse_err(line, format!("element {z} is not a zero")));
            }
        }
        Ok(s)
    }

    pub fn to_table_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        if let Some(z) = self.zero {
            out.push_str(&format!("zero: {z}\n"));
        }
        out
    }
}

/// Lexicographic odometer step over `base^len`; false once it wraps around.
fn advance(values: &mut [usize], base: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BuiltinModel {
    LeftZero2,
    RightZero2,
    Semilattice2,
    /// Cyclic group of order r.
    Cyclic(usize),
    /// `{1, a, ..., a^m}` with `a^(m+1) = a^m`.
    CyclicMonoid(usize),
    /// `{a, 0}` with every product 0.
    Nil2,
    Trivial,
}

impl fmt::Display for BuiltinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinModel::LeftZero2 => write!(f, "LZ2"),
            BuiltinModel::RightZero2 => write!(f, "RZ2"),
            BuiltinModel::Semilattice2 => write!(f, "SL2"),
            BuiltinModel::Cyclic(r) => write!(f, "Zr({r})"),
            BuiltinModel::CyclicMonoid(m) => write!(f, "CyclicMonoid({m})"),
            BuiltinModel::Nil2 => write!(f, "NilN2"),
            BuiltinModel::Trivial => write!(f, "Trivial"),
        }
    }
}

impl FromStr for BuiltinModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<BuiltinModel> {
        let unknown = || Error::UnknownName(s.to_string());
        let arg = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.trim().parse().ok()
        };
        Ok(match s.trim() {
            "LZ2" => BuiltinModel::LeftZero2,
            "RZ2" => BuiltinModel::RightZero2,
            "SL2" => BuiltinModel::Semilattice2,
            "NilN2" => BuiltinModel::Nil2,
            "Trivial" => BuiltinModel::Trivial,
            _ => {
                if let Some(r) = arg("Zr(") {
                    if r == 0 {
                        return Err(unknown());
                    }
                    BuiltinModel::Cyclic(r)
                } else if let Some(m) = arg("CyclicMonoid(") {
                    BuiltinModel::CyclicMonoid(m)
                } else if let Some(r) = s.strip_prefix('Z').and_then(|r| r.parse().ok()).filter(|&r| r > 0) {
                    BuiltinModel::Cyclic(r)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}
