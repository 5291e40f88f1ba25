//! Finite lattices given by their order, special elements, principal coideals,
//! congruences and quotients.
//!
//! For an element `x` and all `y`, `z`:
//!
//! ```text
//! modular        y <= z  =>  (x ∨ y) ∧ z = (x ∧ z) ∨ y
//! lower-modular  x <= y  =>  x ∨ (y ∧ z) = y ∧ (x ∨ z)
//! upper-modular  y <= x  =>  (z ∧ x) ∨ y = (z ∨ y) ∧ x
//! distributive   x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{Equivalence, SetPartitions};

pub const MAX_CONGRUENCE_SIZE: usize = 10;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ElementProperty {
    Modular,
    LowerModular,
    UpperModular,
    Distributive,
}

impl ElementProperty {
    pub const ALL: [ElementProperty; 4] = [
        ElementProperty::Modular,
        ElementProperty::LowerModular,
        ElementProperty::UpperModular,
        ElementProperty::Distributive,
    ];
}

impl fmt::Display for ElementProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementProperty::Modular => "modular",
            ElementProperty::LowerModular => "lower-modular",
            ElementProperty::UpperModular => "upper-modular",
            ElementProperty::Distributive => "distributive",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ElementClassification {
    pub element: usize,
    pub modular: bool,
    pub lower_modular: bool,
    pub upper_modular: bool,
    pub distributive: bool,
}

/// A triple `(x, y, z)` violating `x ∧ z = y ∧ z = 0 => (x ∨ y) ∧ z = 0`.
pub type ZeroDistributivityWitness = (usize, usize, usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LiftViolation {
    pub x: usize,
    pub a: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PreservationViolation {
    pub congruence: Equivalence,
    pub x: usize,
}

fn check_order(leq: &[Vec<bool>]) -> Result<()> {
    let n = leq.len();
    if n == 0 {
        return Err(Error::NotAnOrder("empty carrier".into()));
    }
    if let Some(row) = leq.iter().position(|r| r.len() != n) {
        return Err(Error::NotAnOrder(format!("row {row} has the wrong length")));
    }
    for i in 0..n {
        if !leq[i][i] {
            return Err(Error::NotAnOrder(format!("{i} <= {i} fails")));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(Error::NotAnOrder(format!("{i} <= {j} <= {i}")));
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return Err(Error::NotAnOrder(format!("{i} <= {j} <= {k} but not {i} <= {k}")));
                }
            }
        }
    }
    Ok(())
}

impl FiniteLattice {
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<FiniteLattice> {
        let n = leq.len();
        FiniteLattice::with_labels("lattice", (0..n).map(|i| i.to_string()).collect(), leq)
    }

    pub fn with_labels(name: impl Into<String>, labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice> {
        check_order(&leq)?;
        let n = leq.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let upper: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&k| upper.iter().all(|&u| leq[k][u]))
                    .ok_or(Error::NotALattice(i, j, "least upper bound"))?;
                let lower: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&k| lower.iter().all(|&l| leq[l][k]))
                    .ok_or(Error::NotALattice(i, j, "greatest lower bound"))?;
                join[i][j] = lub;
                join[j][i] = lub;
                meet[i][j] = glb;
                meet[j][i] = glb;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|k| leq[b][k])).expect("finite lattices have a bottom");
        let top = (0..n).find(|&t| (0..n).all(|k| leq[k][t])).expect("finite lattices have a top");
        Ok(FiniteLattice {
            name: name.into(),
            labels,
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// The lattice whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<FiniteLattice> {
        FiniteLattice::from_covers_labeled("lattice", (0..size).map(|i| i.to_string()).collect(), covers)
    }

    fn from_covers_labeled(name: &str, labels: Vec<String>, covers: &[(usize, usize)]) -> Result<FiniteLattice> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::NotAnOrder(format!("cover {a} < {b} is out of range")));
            }
            if a == b {
                return Err(Error::NotAnOrder(format!("cover {a} < {a} is reflexive")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            let row_k = leq[k].clone();
            for row in leq.iter_mut().filter(|row| row[k]) {
                for (cell, &via) in row.iter_mut().zip(&row_k) {
                    *cell |= via;
                }
            }
        }
        FiniteLattice::with_labels(name, labels, leq)
    }

    /// Reads `n <size>` followed by cover lines `i < j`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<FiniteLattice> {
        let mut size = None;
        let mut covers = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            if size.is_none() {
                let n = line
                    .strip_prefix('n')
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .ok_or_else(|| err(format!("expected 'n <size>', got {line:?}")))?;
                size = Some(n);
                continue;
            }
            let (a, b) = line
                .split_once('<')
                .ok_or_else(|| err(format!("expected 'i < j', got {line:?}")))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| err(format!("bad element {s:?}")));
            covers.push((parse(a)?, parse(b)?));
        }
        let size = size.ok_or(Error::Parse {
            line: 1,
            message: "missing 'n <size>' line".into(),
        })?;
        FiniteLattice::from_covers(size, &covers)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteLattice {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Covering pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("n {}\n", self.size());
        for (a, b) in self.covers() {
            s.push_str(&format!("{a} < {b}\n"));
        }
        s
    }

    pub fn dual(&self) -> FiniteLattice {
        let n = self.size();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        FiniteLattice::with_labels(format!("dual({})", self.name), self.labels.clone(), leq)
            .expect("the dual of a lattice is a lattice")
    }

    /// Componentwise order; element `(i, j)` has index `i * |other| + j`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n, m) = (self.size(), other.size());
        let labels = (0..n * m)
            .map(|k| format!("({},{})", self.labels[k / m], other.labels[k % m]))
            .collect();
        let leq = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| self.leq[a / m][b / m] && other.leq[a % m][b % m])
                    .collect()
            })
            .collect();
        FiniteLattice::with_labels(format!("product({},{})", self.name, other.name), labels, leq)
            .expect("a product of lattices is a lattice")
    }

    /// A pair `(y, z)` violating `property` at `x`, if any.
    pub fn find_violation(&self, x: usize, property: ElementProperty) -> Option<(usize, usize)> {
        let n = self.size();
        let (j, m) = (&self.join, &self.meet);
        for y in 0..n {
            for z in 0..n {
                let bad = match property {
                    ElementProperty::Modular => self.leq[y][z] && m[j[x][y]][z] != j[m[x][z]][y],
                    ElementProperty::LowerModular => self.leq[x][y] && j[x][m[y][z]] != m[y][j[x][z]],
                    ElementProperty::UpperModular => self.leq[y][x] && j[m[z][x]][y] != m[j[z][y]][x],
                    ElementProperty::Distributive => j[x][m[y][z]] != m[j[x][y]][j[x][z]],
                };
                if bad {
                    return Some((y, z));
                }
            }
        }
        None
    }

    pub fn has_property(&self, x: usize, property: ElementProperty) -> bool {
        self.find_violation(x, property).is_none()
    }

    pub fn classify_element(&self, x: usize) -> ElementClassification {
        ElementClassification {
            element: x,
            modular: self.has_property(x, ElementProperty::Modular),
            lower_modular: self.has_property(x, ElementProperty::LowerModular),
            upper_modular: self.has_property(x, ElementProperty::UpperModular),
            distributive: self.has_property(x, ElementProperty::Distributive),
        }
    }

    pub fn classify_all(&self) -> Vec<ElementClassification> {
        (0..self.size()).map(|x| self.classify_element(x)).collect()
    }

    /// The sublattice `[a) = {x | x >= a}` and its embedding into `self`.
    pub fn principal_coideal(&self, a: usize) -> (FiniteLattice, Vec<usize>) {
        let embed: Vec<usize> = (0..self.size()).filter(|&x| self.leq[a][x]).collect();
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let leq = embed
            .iter()
            .map(|&p| embed.iter().map(|&q| self.leq[p][q]).collect())
            .collect();
        let sub = FiniteLattice::with_labels(format!("[{})", self.labels[a]), labels, leq)
            .expect("a principal coideal is a lattice");
        (sub, embed)
    }

    /// For lower-modular `x` and any `a`, `x ∨ a` must be lower-modular in `[a)`.
    pub fn check_lower_modular_lift(&self) -> Option<LiftViolation> {
        for x in (0..self.size()).filter(|&x| self.has_property(x, ElementProperty::LowerModular)) {
            for a in 0..self.size() {
                let (sub, embed) = self.principal_coideal(a);
                let image = embed
                    .iter()
                    .position(|&e| e == self.join[x][a])
                    .expect("x ∨ a lies above a");
                if !sub.has_property(image, ElementProperty::LowerModular) {
                    return Some(LiftViolation { x, a });
                }
            }
        }
        None
    }

    /// A violation of `x ∧ z = y ∧ z = 0 => (x ∨ y) ∧ z = 0`, if any.
    pub fn zero_distributivity_violation(&self) -> Option<ZeroDistributivityWitness> {
        let n = self.size();
        let zero = self.bottom;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let premise = self.meet[x][z] == zero && self.meet[y][z] == zero;
                    if premise && self.meet[self.join[x][y]][z] != zero {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_zero_distributive(&self) -> bool {
        self.zero_distributivity_violation().is_none()
    }

    pub fn is_lattice_congruence(&self, theta: &Equivalence) -> bool {
        if theta.len() != self.size() {
            return false;
        }
        let n = self.size();
        let reps: Vec<usize> = theta.classes().iter().map(|c| c[0]).collect();
        (0..n).all(|u| {
            let v = reps[theta.labels()[u]];
            (0..n).all(|w| {
                theta.related(self.join[u][w], self.join[v][w]) && theta.related(self.meet[u][w], self.meet[v][w])
            })
        })
    }

    /// All lattice congruences, by filtering set partitions.
    pub fn enumerate_congruences(&self, max_size: usize) -> Result<Vec<Equivalence>> {
        if self.size() > max_size {
            return Err(Error::Budget(format!(
                "{} has {} elements, limit is {max_size}",
                self.name,
                self.size()
            )));
        }
        Ok(SetPartitions::new(self.size())
            .map(|labels| Equivalence::from_labels(&labels))
            .filter(|eq| self.is_lattice_congruence(eq))
            .collect())
    }

    /// The quotient by `theta` and the canonical surjection.
    pub fn quotient(&self, theta: &Equivalence) -> Result<(FiniteLattice, Vec<usize>)> {
        if !self.is_lattice_congruence(theta) {
            return Err(Error::NotACongruence(format!("partition of {}", self.name)));
        }
        let classes = theta.classes();
        let k = classes.len();
        let leq = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| theta.labels()[self.join[classes[a][0]][classes[b][0]]] == b)
                    .collect()
            })
            .collect();
        let labels = classes
            .iter()
            .map(|c| c.iter().map(|&x| self.labels[x].as_str()).collect::<Vec<_>>().join("~"))
            .collect();
        let q = FiniteLattice::with_labels(format!("{}/θ", self.name), labels, leq)?;
        Ok((q, theta.labels().to_vec()))
    }

    /// For every congruence θ and upper-modular `x`, the class of `x` must be
    /// upper-modular in the quotient.
    pub fn check_upper_modular_preservation(&self, max_size: usize) -> Result<Option<PreservationViolation>> {
        let upper: Vec<usize> = (0..self.size())
            .filter(|&x| self.has_property(x, ElementProperty::UpperModular))
            .collect();
        for theta in self.enumerate_congruences(max_size)? {
            let (q, phi) = self.quotient(&theta)?;
            if let Some(&x) = upper
                .iter()
                .find(|&&x| !q.has_property(phi[x], ElementProperty::UpperModular))
            {
                return Ok(Some(PreservationViolation { congruence: theta, x }));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.size())
    }
}

pub fn chain(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::UnknownName("chain(0)".into()));
    }
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers_labeled(&format!("chain({n})"), (0..n).map(|i| i.to_string()).collect(), &covers)
}

pub fn boolean(n: usize) -> Result<FiniteLattice> {
    if n > 6 {
        return Err(Error::Budget(format!("boolean({n}) has more than 64 elements")));
    }
    let size = 1usize << n;
    let leq = (0..size)
        .map(|a| (0..size).map(|b| a & b == a).collect())
        .collect();
    FiniteLattice::with_labels(format!("boolean({n})"), (0..size).map(|i| format!("{i:0n$b}", n = n.max(1))).collect(), leq)
}

pub fn m3() -> FiniteLattice {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    FiniteLattice::from_covers_labeled("M3", labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("M3 is a lattice")
}

/// `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    FiniteLattice::from_covers_labeled("N5", labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        .expect("N5 is a lattice")
}

/// Parses `chain(n)`, `boolean(n)`, `M3`, `N5` and `product(a,b)`.
pub fn catalog(name: &str) -> Result<FiniteLattice> {
    let name = name.trim();
    let unknown = || Error::UnknownName(name.to_string());
    match name {
        "M3" => return Ok(m3()),
        "N5" => return Ok(n5()),
        _ => {}
    }
    let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
    let args = rest.strip_suffix(')').ok_or_else(unknown)?;
    match head.trim() {
        "chain" => chain(args.trim().parse().map_err(|_| unknown())?),
        "boolean" => boolean(args.trim().parse().map_err(|_| unknown())?),
        "product" => {
            let mut depth = 0i32;
            let split = args
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    c == ',' && depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(unknown)?;
            Ok(catalog(&args[..split])?.product(&catalog(&args[split + 1..])?))
        }
        _ => Err(unknown()),
    }
}
