//! Elements of `k⟨X⟩ ⊗ k⟨X⟩`.

use std::collections::BTreeMap;
use std::ops::Mul;

use super::{Field, Polynomial, Scalar};
use crate::alphabet::Alphabet;
use crate::words::Word;

/// A finite combination of pure tensors `a ⊗ b` of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPolynomial {
    field: Field,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorPolynomial {
    pub fn zero(field: Field) -> Self {
        TensorPolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1`.
    pub fn one(field: Field) -> Self {
        let mut t = Self::zero(field);
        t.add_term(Word::empty(), Word::empty(), field.one());
        t
    }

    /// `p ⊗ q`.
    pub fn tensor(p: &Polynomial, q: &Polynomial) -> Self {
        let mut t = Self::zero(p.field());
        t.add_tensor(&p.field().one(), p, q);
        t
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

    pub fn add_term(&mut self, left: Word, right: Word, c: Scalar) {
        assert_eq!(c.field(), self.field, "scalar field mismatch");
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// `self += c·(p ⊗ q)`.
    pub fn add_tensor(&mut self, c: &Scalar, p: &Polynomial, q: &Polynomial) {
        for (a, x) in p.terms_ascending() {
            for (b, y) in q.terms_ascending() {
                self.add_term(a.clone(), b.clone(), &(c * x) * y);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &TensorPolynomial) {
        for ((a, b), k) in &other.terms {
            self.add_term(a.clone(), b.clone(), c * k);
        }
    }

    /// Terms `(left, right, coefficient)` in ascending order of the pair.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    /// Collects the left factors for each right word: `Σ_b p_b ⊗ b`.
    pub fn group_by_right(&self) -> BTreeMap<Word, Polynomial> {
        let mut out: BTreeMap<Word, Polynomial> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry(b.clone())
                .or_insert_with(|| Polynomial::zero(self.field))
                .add_term(a.clone(), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Applies `ε ⊗ id`.
    pub fn counit_left(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for ((a, b), c) in &self.terms {
            if a.is_empty() {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }

    /// Applies `f ⊗ g` where `f`, `g` are linear maps given on words.
    pub fn map_both<F, G>(&self, mut f: F, mut g: G) -> TensorPolynomial
    where
        F: FnMut(&Word) -> Polynomial,
        G: FnMut(&Word) -> Polynomial,
    {
        let mut out = TensorPolynomial::zero(self.field);
        for ((a, b), c) in &self.terms {
            out.add_tensor(c, &f(a), &g(b));
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (right, left) in self.group_by_right().iter().rev() {
            parts.push(format!(
                "({}) ⊗ {}",
                left.display(alphabet),
                right.display(alphabet)
            ));
        }
        parts.join(" + ")
    }
}

impl<'a> Mul<&'a TensorPolynomial> for &'a TensorPolynomial {
    type Output = TensorPolynomial;
    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    fn mul(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        assert_eq!(self.field, rhs.field, "tensor field mismatch");
        let mut out = TensorPolynomial::zero(self.field);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &rhs.terms {
                out.add_term(a.concat(c), b.concat(d), x * y);
            }
        }
        out
    }
}
