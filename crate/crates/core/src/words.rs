//! The free monoid `⟨X⟩`: words, the lexicographic and reduction orders,
//! reduction-factorization and prime words.
//!
//! [`Word`]'s `Ord` implementation *is* the reduction order `≺_r`:
//!
//! 1. the empty word is smallest;
//! 2. otherwise compare the originals of the first letters,
//! 3. then the lengths,
//! 4. then lexicographically.
//!
//! Because letter ids already encode `≺` and `o(·)`, none of this needs the
//! alphabet.

use std::cmp::Ordering;
use std::fmt;

use crate::alphabet::{Alphabet, LetterId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<LetterId>);

impl Word {
    /// The empty word `1`.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: LetterId) -> Self {
        Word(vec![a])
    }

    pub(crate) fn from_ids(ids: Vec<LetterId>) -> Self {
        Word(ids)
    }

    pub fn letters(&self) -> &[LetterId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `l(α)`.
    pub fn first_letter(&self) -> Option<LetterId> {
        self.0.first().copied()
    }

    /// `o(α) = o(l(α))`.
    pub fn origin(&self) -> Option<LetterId> {
        self.first_letter().map(LetterId::original)
    }

    /// `α(y)`, the number of occurrences of `y`.
    pub fn occurrences(&self, y: LetterId) -> usize {
        self.0.iter().filter(|&&a| a == y).count()
    }

    pub fn contains(&self, y: LetterId) -> bool {
        self.0.contains(&y)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn split_at(&self, i: usize) -> (Word, Word) {
        let (l, r) = self.0.split_at(i);
        (Word(l.to_vec()), Word(r.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Sum of letter degrees.
    pub fn degree(&self, alphabet: &Alphabet) -> u64 {
        self.0.iter().map(|&a| alphabet.degree(a) as u64).sum()
    }

    /// `m_α`, the `≺`-greatest letter occurring in the word.
    pub fn max_letter(&self) -> Result<LetterId> {
        self.0
            .iter()
            .max()
            .copied()
            .ok_or(Error::EmptyWord("max_letter"))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        reduction_compare(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order: proper prefixes are smaller.
pub fn lex_compare(a: &Word, b: &Word) -> Ordering {
    a.0.cmp(&b.0)
}

/// The reduction order `≺_r`.
pub fn reduction_compare(a: &Word, b: &Word) -> Ordering {
    a.origin()
        .cmp(&b.origin())
        .then(a.len().cmp(&b.len()))
        .then_with(|| lex_compare(a, b))
}

/// Least element of a non-empty set of words.
///
/// Selects in three stages: least original of the first letter, then
/// minimal length, then lexicographically least.
pub fn min_word<'a, I>(words: I) -> Result<&'a Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let all: Vec<&Word> = words.into_iter().collect();
    if all.is_empty() {
        return Err(Error::EmptySet("min_word"));
    }
    let least_origin = all.iter().map(|w| w.origin()).min().unwrap();
    let stage1: Vec<&Word> = all
        .into_iter()
        .filter(|w| w.origin() == least_origin)
        .collect();
    let least_len = stage1.iter().map(|w| w.len()).min().unwrap();
    Ok(stage1
        .into_iter()
        .filter(|w| w.len() == least_len)
        .min_by(|a, b| lex_compare(a, b))
        .unwrap())
}

/// `rf(α) = (α_L, α_R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFactorization {
    pub left: Word,
    pub right: Word,
}

/// Reduction-factorization: `right` is the `≺_r`-greatest suffix.
///
/// Linear scan: with `m = o(m_α)`, the greatest suffix starts at the first
/// position holding `m` or its mirror.
pub fn rfactor(alpha: &Word) -> Result<RFactorization> {
    let m = alpha
        .max_letter()
        .map_err(|_| Error::EmptyWord("rfactor"))?
        .original();
    let start = alpha
        .0
        .iter()
        .position(|a| a.original() == m)
        .expect("the greatest letter occurs");
    let (left, right) = alpha.split_at(start);
    Ok(RFactorization { left, right })
}

pub fn is_prime(alpha: &Word) -> Result<bool> {
    if alpha.is_empty() {
        return Err(Error::EmptyWord("is_prime"));
    }
    Ok(rfactor(alpha)?.left.is_empty())
}

/// The unique strictly ascending factorization into prime words,
/// returned left to right (`ω_n, …, ω_1`).
pub fn prime_factorization(omega: &Word) -> Result<Vec<Word>> {
    if omega.is_empty() {
        return Err(Error::EmptyWord("prime_factorization"));
    }
    let mut factors = Vec::new();
    let mut rest = omega.clone();
    while !rest.is_empty() {
        let rf = rfactor(&rest)?;
        factors.push(rf.right);
        rest = rf.left;
    }
    factors.reverse();
    Ok(factors)
}

impl Alphabet {
    pub fn word(&self, letters: &[LetterId]) -> Result<Word> {
        for &a in letters {
            self.letter(a)?;
        }
        Ok(Word(letters.to_vec()))
    }

    /// Parses whitespace-separated letter names; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(Word::empty());
        }
        trimmed
            .split_whitespace()
            .map(|name| self.id(name))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Every word of length at most `max_len`, in ascending `≺_r` order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let ids: Vec<LetterId> = self.ids().collect();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * ids.len());
            for w in &layer {
                for &a in &ids {
                    let mut v = w.0.clone();
                    v.push(a);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, &a) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(a))?;
        }
        Ok(())
    }
}
