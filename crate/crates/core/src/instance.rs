//! Occurrences of substitution instances of a pattern inside a word.
//!
//! A match of `p` at position `start` of `w` is a substitution `s` with
//! non-empty images such that `s(p)` is the factor `w[start..end]`. The search
//! backtracks over image lengths; exponential in the worst case, which is fine
//! for patterns of a handful of letters.

use std::ops::ControlFlow;

use crate::words::{Letter, Substitution, Word};

/// Images of the pattern letters, as `(letter, offset, len)` slices of the subject.
pub type Binding = [(Letter, usize, usize)];

struct Matcher<'a> {
    /// Pattern positions rewritten as dense ids.
    ids: Vec<usize>,
    letters: Vec<Letter>,
    subject: &'a [Letter],
    max_image: usize,
    bound: Vec<Option<(usize, usize)>>,
}

impl Matcher<'_> {
    fn run<F>(&mut self, i: usize, j: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(usize, &Binding) -> ControlFlow<()>,
    {
        if i == self.ids.len() {
            let binding: Vec<(Letter, usize, usize)> = self
                .bound
                .iter()
                .zip(&self.letters)
                .map(|(b, &x)| {
                    let (off, len) = b.expect("every pattern letter is bound");
                    (x, off, len)
                })
                .collect();
            return f(j, &binding);
        }
        let id = self.ids[i];
        let n = self.subject.len();
        if let Some((off, len)) = self.bound[id] {
            if j + len <= n && self.subject[off..off + len] == self.subject[j..j + len] {
                return self.run(i + 1, j + len, f);
            }
            return ControlFlow::Continue(());
        }
        let remaining = self.ids.len() - i - 1;
        if j + remaining >= n {
            return ControlFlow::Continue(());
        }
        let longest = self.max_image.min(n - j - remaining);
        for len in 1..=longest {
            self.bound[id] = Some((j, len));
            let flow = self.run(i + 1, j + len, f);
            self.bound[id] = None;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f(end, binding)` for every match of `pattern` starting at `start`
/// whose letter images have length at most `max_image`. Stops early when `f`
/// breaks.
pub fn for_each_match_at<F>(
    pattern: &Word,
    subject: &[Letter],
    start: usize,
    max_image: usize,
    mut f: F,
) -> ControlFlow<()>
where
    F: FnMut(usize, &Binding) -> ControlFlow<()>,
{
    let mut letters: Vec<Letter> = Vec::new();
    let ids = pattern
        .letters()
        .iter()
        .map(|x| match letters.iter().position(|y| y == x) {
            Some(k) => k,
            None => {
                letters.push(*x);
                letters.len() - 1
            }
        })
        .collect();
    let mut m = Matcher {
        ids,
        bound: vec![None; letters.len()],
        letters,
        subject,
        max_image,
    };
    m.run(0, start, &mut f)
}

/// Turns a binding back into the substitution it denotes.
pub fn binding_substitution(subject: &[Letter], binding: &Binding) -> Substitution {
    Substitution::from_pairs(binding.iter().map(|&(x, off, len)| {
        (
            x,
            Word::new(subject[off..off + len].to_vec()).expect("bound images are non-empty"),
        )
    }))
}

/// Does some factor of `w` equal `s(pattern)` for a substitution `s`?
pub fn contains_instance(w: &Word, pattern: &Word) -> bool {
    find_instance(w, pattern).is_some()
}

/// First `(start, end, s)` with `w[start..end] == s(pattern)`, scanning starts left to right.
pub fn find_instance(w: &Word, pattern: &Word) -> Option<(usize, usize, Substitution)> {
    if pattern.len() > w.len() {
        return None;
    }
    let subject = w.letters();
    for start in 0..=subject.len() - pattern.len() {
        let mut found = None;
        let _ = for_each_match_at(pattern, subject, start, subject.len(), |end, b| {
            found = Some((start, end, binding_substitution(subject, b)));
            ControlFlow::Break(())
        });
        if found.is_some() {
            return found;
        }
    }
    None
}
