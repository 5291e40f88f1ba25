//! Identities `u = v`, zero identities `w = 0`, and finite systems of them.
//!
//! Text format: one identity per line, `u = v` or `w = 0`, `#` starts a
//! comment. Systems may carry a `label: ...` header line.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Identity {
    Equation(Word, Word),
    /// `w = 0`, shorthand for `wx = xw = w` with `x` not in `w`.
    Zero(Word),
}

impl Identity {
    pub fn eq(u: Word, v: Word) -> Identity {
        Identity::Equation(u, v)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Identity::Equation(u, v) if u == v)
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        match self {
            Identity::Equation(u, v) => u.content().union(&v.content()).copied().collect(),
            Identity::Zero(w) => w.content(),
        }
    }

    /// The two sides of an equation; `None` for a zero identity.
    pub fn sides(&self) -> Option<(&Word, &Word)> {
        match self {
            Identity::Equation(u, v) => Some((u, v)),
            Identity::Zero(_) => None,
        }
    }

    pub fn flipped(&self) -> Identity {
        match self {
            Identity::Equation(u, v) => Identity::Equation(v.clone(), u.clone()),
            z => z.clone(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Equation(u, v) => write!(f, "{u} = {v}"),
            Identity::Zero(w) => write!(f, "{w} = 0"),
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidWord(s.to_string(), "expected 'u = v'".into()))?;
        let lhs: Word = lhs.trim().parse()?;
        let rhs = rhs.trim();
        if rhs == "0" {
            Ok(Identity::Zero(lhs))
        } else {
            Ok(Identity::Equation(lhs, rhs.parse()?))
        }
    }
}

/// Parses an identity file, reporting the 1-based line of the first error.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line);
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|e: Error| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct IdentitySystem {
    pub label: String,
    pub equations: Vec<(Word, Word)>,
    pub zero_patterns: Vec<Word>,
}

impl IdentitySystem {
    pub fn new(label: impl Into<String>) -> IdentitySystem {
        IdentitySystem {
            label: label.into(),
            ..Default::default()
        }
    }

    pub fn from_identities(label: impl Into<String>, ids: impl IntoIterator<Item = Identity>) -> Self {
        let mut sys = IdentitySystem::new(label);
        for id in ids {
            sys.push(id);
        }
        sys
    }

    pub fn push(&mut self, id: Identity) {
        match id {
            Identity::Equation(u, v) => {
                if !self.equations.contains(&(u.clone(), v.clone())) {
                    self.equations.push((u, v));
                }
            }
            Identity::Zero(w) => {
                if !self.zero_patterns.contains(&w) {
                    self.zero_patterns.push(w);
                }
            }
        }
    }

    pub fn identities(&self) -> impl Iterator<Item = Identity> + '_ {
        self.equations
            .iter()
            .map(|(u, v)| Identity::Equation(u.clone(), v.clone()))
            .chain(self.zero_patterns.iter().cloned().map(Identity::Zero))
    }

    pub fn contains(&self, id: &Identity) -> bool {
        match id {
            Identity::Equation(u, v) => self.equations.iter().any(|(a, b)| a == u && b == v),
            Identity::Zero(w) => self.zero_patterns.contains(w),
        }
    }

    pub fn len(&self) -> usize {
        self.equations.len() + self.zero_patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Plain equations equivalent to the system: each `w = 0` becomes
    /// `wx = w` and `xw = w` for a letter `x` outside `w`.
    pub fn as_equations(&self) -> Vec<(Word, Word)> {
        let mut out = self.equations.clone();
        for w in &self.zero_patterns {
            let fresh = Word::letter(Letter::x(w.max_letter().index() + 1));
            out.push((w.concat(&fresh), w.clone()));
            out.push((fresh.concat(w), w.clone()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<IdentitySystem> {
        let mut label = String::new();
        let mut body = String::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = strip_comment(line);
            if let Some(rest) = trimmed.strip_prefix("label:") {
                if !label.is_empty() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "duplicate label".into(),
                    });
                }
                label = rest.trim().to_string();
                body.push('\n');
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        Ok(IdentitySystem::from_identities(label, parse_identities(&body)?))
    }
}

impl fmt::Display for IdentitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_empty() {
            writeln!(f, "label: {}", self.label)?;
        }
        for id in self.identities() {
            writeln!(f, "{id}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines() {
        let ids = parse_identities("# comment\nab = aab\n\n  aa = 0 # nil\n").unwrap();
        assert_eq!(
            ids,
            vec![
                Identity::Equation("ab".parse().unwrap(), "aab".parse().unwrap()),
                Identity::Zero("aa".parse().unwrap()),
            ]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_identities("ab = ba\nab ba\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_identities("ab = ba\n\nab = B\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn system_round_trip() {
        let sys = IdentitySystem::parse("label: P\nab = aab\naabb = bbaa\n").unwrap();
        assert_eq!(sys.label, "P");
        assert_eq!(sys.len(), 2);
        assert_eq!(IdentitySystem::parse(&sys.to_string()).unwrap(), sys);
    }

    #[test]
    fn zero_patterns_expand() {
        let sys = IdentitySystem::from_identities("nil", [Identity::Zero("aa".parse().unwrap())]);
        let eqs = sys.as_equations();
        assert_eq!(eqs.len(), 2);
        assert_eq!(eqs[0].0.to_string(), "aab");
        assert_eq!(eqs[1].0.to_string(), "baa");
    }
}
