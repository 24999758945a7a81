//! Elements of the free algebra `k⟨X⟩` and of its tensor square.

mod scalar;
mod tensor;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub use scalar::{Field, Scalar};
pub use tensor::TensorPolynomial;
pub use text::PolynomialDisplay;

use crate::alphabet::LetterId;
use crate::error::{Error, Result};
use crate::words::Word;

/// A finite linear combination of words with non-zero exact coefficients.
///
/// Terms are keyed by [`Word`], whose ordering is `≺_r`, so the leading word
/// is the last key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::word(field, Word::empty())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Word::empty())
    }

    /// The word `ω` with coefficient 1.
    pub fn word(field: Field, w: Word) -> Self {
        Self::monomial(field.one(), w)
    }

    pub fn letter(field: Field, a: LetterId) -> Self {
        Self::word(field, Word::letter(a))
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = Polynomial::zero(c.field());
        p.add_term(w, c);
        p
    }

    /// Builds a polynomial from terms, merging repeated words.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Word)>>(field: Field, terms: I) -> Self {
        let mut p = Polynomial::zero(field);
        for (c, w) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Adds `c·w` in place. Panics on a field mismatch.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert_eq!(c.field(), self.field, "scalar field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c·other`. Panics on a field mismatch.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Polynomial) {
        assert_eq!(other.field, self.field, "polynomial field mismatch");
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Terms in descending `≺_r` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter().rev()
    }

    /// Terms in ascending `≺_r` order.
    pub fn terms_ascending(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys().rev()
    }

    /// `ε(p)`: the coefficient of the empty word.
    pub fn augmentation(&self) -> Scalar {
        self.coefficient(&Word::empty())
    }

    /// `LW(p)`, the `≺_r`-greatest word of the support.
    pub fn leading_word(&self) -> Result<&Word> {
        self.terms
            .keys()
            .next_back()
            .ok_or(Error::ZeroPolynomial("leading_word"))
    }

    pub fn leading_term(&self) -> Result<(&Word, &Scalar)> {
        self.terms
            .iter()
            .next_back()
            .ok_or(Error::ZeroPolynomial("leading_term"))
    }

    /// `m_p`, the `≺`-greatest letter over the support.
    pub fn max_letter(&self) -> Result<LetterId> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("max_letter"));
        }
        self.terms
            .keys()
            .filter_map(|w| w.max_letter().ok())
            .max()
            .ok_or(Error::NoLetters)
    }

    /// Length of the longest support word (0 for the zero polynomial).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Every letter occurring in the support.
    pub fn letters(&self) -> std::collections::BTreeSet<LetterId> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        out.add_scaled(c, self);
        out
    }

    /// Multiplies every word on the left by `u` and on the right by `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (u.concat(w).concat(v), c.clone()))
                .collect(),
        }
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        Ok(self * other)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                c.field().to_string(),
            ));
        }
        Ok(self.scale(c))
    }

    /// `pⁿ` (with `p⁰ = 1`).
    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(self.field), |acc, _| &acc * self)
    }

    /// Replaces every occurrence of each letter by a polynomial.
    ///
    /// Letters missing from `images` are kept.
    pub fn substitute(&self, images: &BTreeMap<LetterId, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (w, c) in &self.terms {
            let mut prod = Polynomial::constant(c.clone());
            for &a in w.letters() {
                match images.get(&a) {
                    Some(img) => prod = &prod * img,
                    None => prod = prod.sandwich(&Word::empty(), &Word::letter(a)),
                }
            }
            out.add_scaled(&self.field.one(), &prod);
        }
        out
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), rhs);
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        let mut out = Polynomial::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }
}
