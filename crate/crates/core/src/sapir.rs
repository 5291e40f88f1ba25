//! Identity systems `S(G)` and `S(G, X)` attached to a periodic group variety
//! of exponent `r` with a semigroup-word basis `{v_i = 1}`:
//!
//! ```text
//! S(G)    = var{ xyz = x y^(r+1) z,  x0 y0 = y0 x0,  x^2 = x^(r+2),  x v_i^2 y = x v_i y }
//! S(G, X) = S(G) ∧ var{ x w x = (x w x)^(r+1) | w in W },   X generated by W
//! ```
//!
//! where `x0` abbreviates `x^(r(r+1))`. Schema letters are the smallest
//! indices not occurring in the basis or verbal words.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{Identity, IdentitySystem};
use crate::words::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Family {
    /// `xyz = x y^(r+1) z`
    Periodic,
    /// `x0 y0 = y0 x0`
    CommutingIdempotents,
    /// `x^2 = x^(r+2)`
    SquarePeriod,
    /// `x v^2 y = x v y` for a basis word `v`.
    Basis(Word),
    /// `x w x = (x w x)^(r+1)` for a verbal generator `w`.
    Verbal(Word),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Periodic => write!(f, "xyz = xy^(r+1)z"),
            Family::CommutingIdempotents => write!(f, "x0y0 = y0x0"),
            Family::SquarePeriod => write!(f, "x^2 = x^(r+2)"),
            Family::Basis(v) => write!(f, "xv^2y = xvy, v = {v}"),
            Family::Verbal(w) => write!(f, "xwx = (xwx)^(r+1), w = {w}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SapirSystem {
    pub r: u32,
    pub basis_words: Vec<Word>,
    pub verbal_words: Option<Vec<Word>>,
    /// Each generated identity tagged with its family.
    pub members: Vec<(Family, Identity)>,
    pub generated: IdentitySystem,
}

impl SapirSystem {
    /// The exponent abbreviated by `x0`, namely `r(r+1)`.
    pub fn zero_exponent(&self) -> usize {
        (self.r * (self.r + 1)) as usize
    }

    pub fn family(&self, family: &Family) -> Option<&Identity> {
        self.members.iter().find(|(f, _)| f == family).map(|(_, id)| id)
    }
}

/// The `k` smallest letters not occurring in any of `words`.
pub fn fresh_letters<'a>(words: impl IntoIterator<Item = &'a Word>, k: usize) -> Vec<Letter> {
    let used: BTreeSet<Letter> = words.into_iter().flat_map(Word::content).collect();
    (1..)
        .map(Letter::x)
        .filter(|x| !used.contains(x))
        .take(k)
        .collect()
}

fn build(r: u32, basis: &[Word], verbal: Option<&[Word]>) -> Result<SapirSystem> {
    if r == 0 {
        return Err(Error::Precondition("the exponent r must be at least 1".into()));
    }
    let all_words = basis.iter().chain(verbal.unwrap_or(&[]));
    let fresh = fresh_letters(all_words, 3);
    let (x, y, z) = (fresh[0], fresh[1], fresh[2]);
    let (lx, ly, lz) = (Word::letter(x), Word::letter(y), Word::letter(z));
    let r_us = r as usize;
    let zero_exp = r_us * (r_us + 1);

    let mut members = vec![
        (
            Family::Periodic,
            Identity::Equation(
                lx.concat(&ly).concat(&lz),
                lx.concat(&Word::letter_power(y, r_us + 1)).concat(&lz),
            ),
        ),
        (
            Family::CommutingIdempotents,
            Identity::Equation(
                Word::letter_power(x, zero_exp).concat(&Word::letter_power(y, zero_exp)),
                Word::letter_power(y, zero_exp).concat(&Word::letter_power(x, zero_exp)),
            ),
        ),
        (
            Family::SquarePeriod,
            Identity::Equation(Word::letter_power(x, 2), Word::letter_power(x, r_us + 2)),
        ),
    ];
    for v in basis {
        members.push((
            Family::Basis(v.clone()),
            Identity::Equation(
                lx.concat(&v.pow(2)).concat(&ly),
                lx.concat(v).concat(&ly),
            ),
        ));
    }
    for w in verbal.unwrap_or(&[]) {
        let xwx = lx.concat(w).concat(&lx);
        members.push((
            Family::Verbal(w.clone()),
            Identity::Equation(xwx.clone(), xwx.pow(r_us + 1)),
        ));
    }
    let label = match verbal {
        None => format!("S(G) r={r}"),
        Some(_) => format!("S(G,X) r={r}"),
    };
    let generated = IdentitySystem::from_identities(label, members.iter().map(|(_, id)| id.clone()));
    Ok(SapirSystem {
        r,
        basis_words: basis.to_vec(),
        verbal_words: verbal.map(<[Word]>::to_vec),
        members,
        generated,
    })
}

/// `S(G)` for exponent `r` and basis words `v_i`.
pub fn sapir_system(r: u32, basis: &[Word]) -> Result<SapirSystem> {
    build(r, basis, None)
}

/// `S(G, X)` with `X` generated by `verbal`; an empty `verbal` gives `S(G)`.
pub fn sapir_with_verbal(r: u32, basis: &[Word], verbal: &[Word]) -> Result<SapirSystem> {
    if verbal.is_empty() {
        return sapir_system(r, basis);
    }
    build(r, basis, Some(verbal))
}
