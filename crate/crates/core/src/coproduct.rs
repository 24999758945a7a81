//! Skew-triangular comultiplications on `k⟨X⟩`.
//!
//! Each letter carries
//!
//! ```text
//! Δ(x) = x ⊗ 1 + (1 − z_x) ⊗ x + Σ x′ ⊗ x″
//! ```
//!
//! where `z_x` is a degree-zero letter or the unit marker (`1 − z_x := 1`)
//! and every tail term has a single letter `x″` of smaller degree with
//! `x″ ≺ x`. `Δ` extends multiplicatively to words.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, LetterId};
use crate::error::{Error, Result};
use crate::polynomial::{Field, Polynomial, TensorPolynomial};
use crate::words::{rfactor, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTerm {
    /// `x′`
    pub left: Polynomial,
    /// `x″`
    pub right: LetterId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterCoproduct {
    /// `z_x`; `None` is the unit marker.
    pub group_part: Option<LetterId>,
    pub tail: Vec<TailTerm>,
}

impl LetterCoproduct {
    pub fn unit() -> Self {
        LetterCoproduct {
            group_part: None,
            tail: Vec::new(),
        }
    }

    pub fn group(z: LetterId) -> Self {
        LetterCoproduct {
            group_part: Some(z),
            tail: Vec::new(),
        }
    }

    pub fn with_tail(mut self, left: Polynomial, right: LetterId) -> Self {
        self.tail.push(TailTerm { left, right });
        self
    }
}

/// Per-letter coproduct data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductSpec {
    field: Field,
    entries: BTreeMap<LetterId, LetterCoproduct>,
}

/// `Δ(ω)` split into its closed-form parts and the remaining tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaClassification {
    pub word: Word,
    /// `ω ⊗ 1`
    pub head: TensorPolynomial,
    /// `[1 − z_ω] ⊗ ω`
    pub group: TensorPolynomial,
    /// `ω_L[1 − z_{ω_R}] ⊗ ω_R`, present only when `ω` is not prime.
    pub middle: Option<TensorPolynomial>,
    /// Remaining terms `(ω′, ω″)`, grouped by the right factor.
    pub tail: Vec<(Polynomial, Word)>,
}

impl DeltaClassification {
    /// Reassembles `Δ(ω)` from the parts.
    pub fn total(&self) -> TensorPolynomial {
        let field = self.head.field();
        let one = field.one();
        let mut t = self.head.clone();
        t.add_scaled(&one, &self.group);
        if let Some(m) = &self.middle {
            t.add_scaled(&one, m);
        }
        for (left, right) in &self.tail {
            t.add_tensor(&one, left, &Polynomial::word(field, right.clone()));
        }
        t
    }
}

/// Outcome of the degree-plus-length descent check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub holds: bool,
    /// A right tensor factor violating the bound, if any.
    pub counterexample: Option<Word>,
}

impl CoproductSpec {
    pub fn new(field: Field) -> Self {
        CoproductSpec {
            field,
            entries: BTreeMap::new(),
        }
    }

    /// Every letter primitive-like: `Δ(x) = x ⊗ 1 + 1 ⊗ x`.
    pub fn unit_for_all(alphabet: &Alphabet, field: Field) -> Self {
        let mut spec = Self::new(field);
        for id in alphabet.ids() {
            spec.insert(id, LetterCoproduct::unit());
        }
        spec
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn insert(&mut self, x: LetterId, entry: LetterCoproduct) {
        self.entries.insert(x, entry);
    }

    pub fn remove_tail_term(&mut self, x: LetterId, index: usize) {
        if let Some(e) = self.entries.get_mut(&x) {
            e.tail.remove(index);
        }
    }

    pub fn entry(&self, x: LetterId) -> Option<&LetterCoproduct> {
        self.entries.get(&x)
    }

    pub fn entries(&self) -> impl Iterator<Item = (LetterId, &LetterCoproduct)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    fn get(&self, x: LetterId, alphabet: Option<&Alphabet>) -> Result<&LetterCoproduct> {
        self.entries.get(&x).ok_or_else(|| {
            Error::MissingCoproductEntry(match alphabet.and_then(|a| a.letter(x).ok()) {
                Some(l) => l.name.clone(),
                None => format!("#{}", x.code()),
            })
        })
    }

    /// `1 − z_x` (or `1` for the unit marker).
    pub fn one_minus_group(&self, x: LetterId) -> Result<Polynomial> {
        let one = Polynomial::one(self.field);
        Ok(match self.get(x, None)?.group_part {
            None => one,
            Some(z) => &one - &Polynomial::letter(self.field, z),
        })
    }

    /// `[1 − z_ω] = ∏ (1 − z_{xᵢ})` in word order.
    pub fn bracket_one_minus(&self, omega: &Word) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.field);
        for &a in omega.letters() {
            acc = &acc * &self.one_minus_group(a)?;
        }
        Ok(acc)
    }

    /// Checks every skew-triangularity clause; returns human-readable
    /// violations (empty when valid). Fails only if a letter has no entry.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<Vec<String>> {
        let mut violations = Vec::new();
        for id in alphabet.ids() {
            self.get(id, Some(alphabet))?;
        }
        for (&x, entry) in &self.entries {
            let Ok(letter) = alphabet.letter(x) else {
                violations.push(format!("entry for unknown letter #{}", x.code()));
                continue;
            };
            let name = &letter.name;
            if let Some(z) = entry.group_part {
                match alphabet.letter(z) {
                    Err(_) => violations.push(format!("{name}: group part is not a letter")),
                    Ok(zl) if zl.degree != 0 => violations.push(format!(
                        "{name}: group part `{}` is not of degree 0",
                        zl.name
                    )),
                    Ok(zl) if letter.degree == 0 && z != x => violations.push(format!(
                        "{name}: a degree-0 letter must have itself as group part, got `{}`",
                        zl.name
                    )),
                    Ok(_) => {}
                }
            }
            if letter.degree == 0 && !entry.tail.is_empty() {
                violations.push(format!("{name}: a degree-0 letter must have an empty tail"));
            }
            for (i, term) in entry.tail.iter().enumerate() {
                let Ok(r) = alphabet.letter(term.right) else {
                    violations.push(format!(
                        "{name}: tail entry {i} has an unknown right letter"
                    ));
                    continue;
                };
                if r.degree >= letter.degree {
                    violations.push(format!(
                        "{name}: tail entry {i}: t(x″) < t(x) fails (t({}) = {} ≥ {})",
                        r.name, r.degree, letter.degree
                    ));
                }
                if term.right >= x {
                    violations.push(format!(
                        "{name}: tail entry {i}: x″ ≺ x fails for x″ = {}",
                        r.name
                    ));
                }
                if term.left.field() != self.field {
                    violations.push(format!("{name}: tail entry {i}: field mismatch"));
                } else if term.left.is_zero() {
                    violations.push(format!("{name}: tail entry {i}: left factor is zero"));
                } else if !term.left.augmentation().is_zero() {
                    violations.push(format!(
                        "{name}: tail entry {i}: left factor has non-zero augmentation"
                    ));
                }
            }
        }
        Ok(violations)
    }

    /// Like [`validate`](Self::validate) but turns violations into an error.
    pub fn ensure_valid(&self, alphabet: &Alphabet) -> Result<()> {
        let v = self.validate(alphabet)?;
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v))
        }
    }

    /// `Δ(x)` for a single letter.
    pub fn delta_letter(&self, x: LetterId) -> Result<TensorPolynomial> {
        let f = self.field;
        let entry = self.get(x, None)?;
        let one = Polynomial::one(f);
        let xp = Polynomial::letter(f, x);
        let mut t = TensorPolynomial::tensor(&xp, &one);
        t.add_tensor(&f.one(), &self.one_minus_group(x)?, &xp);
        for term in &entry.tail {
            t.add_tensor(&f.one(), &term.left, &Polynomial::letter(f, term.right));
        }
        Ok(t)
    }

    /// `Δ(ω)`, the product of the letters' coproducts.
    pub fn delta_word(&self, omega: &Word) -> Result<TensorPolynomial> {
        let mut acc = TensorPolynomial::one(self.field);
        for &a in omega.letters() {
            acc = &acc * &self.delta_letter(a)?;
        }
        Ok(acc)
    }

    /// `Δ(p)` by linearity.
    pub fn delta(&self, p: &Polynomial) -> Result<TensorPolynomial> {
        let mut acc = TensorPolynomial::zero(self.field);
        for (w, c) in p.terms() {
            acc.add_scaled(c, &self.delta_word(w)?);
        }
        Ok(acc)
    }

    /// Splits `Δ(ω)` into head, group, middle and tail, and checks the
    /// structural bounds on the tail's right factors:
    ///
    /// * prime `ω`: `ω″ ⪯_r (ω″)_R ≺_r ω`, `|ω″| ≤ |ω|` and `ε(ω′) = 0`;
    /// * otherwise: `(ω″)_R ≺_r ω_R`, or `ω″ = f·ω_R` with
    ///   `o(m_f) ≺ o(m_{ω_R})`.
    pub fn classify_delta(&self, omega: &Word, alphabet: &Alphabet) -> Result<DeltaClassification> {
        let f = self.field;
        let one = f.one();
        let rf = rfactor(omega)?;
        let total = self.delta_word(omega)?;
        let w = Polynomial::word(f, omega.clone());
        let head = TensorPolynomial::tensor(&w, &Polynomial::one(f));
        let group = TensorPolynomial::tensor(&self.bracket_one_minus(omega)?, &w);
        let middle = if rf.left.is_empty() {
            None
        } else {
            let left =
                &Polynomial::word(f, rf.left.clone()) * &self.bracket_one_minus(&rf.right)?;
            Some(TensorPolynomial::tensor(
                &left,
                &Polynomial::word(f, rf.right.clone()),
            ))
        };
        let mut rest = total;
        rest.add_scaled(&-one.clone(), &head);
        rest.add_scaled(&-one.clone(), &group);
        if let Some(m) = &middle {
            rest.add_scaled(&-one, m);
        }
        let tail: Vec<(Polynomial, Word)> = rest
            .group_by_right()
            .into_iter()
            .rev()
            .map(|(right, left)| (left, right))
            .collect();

        let show = |w: &Word| w.display(alphabet).to_string();
        let violation = |right: &Word, why: &str| {
            Error::BoundViolation(format!(
                "Δ({}): tail factor {} {}",
                show(omega),
                show(right),
                why
            ))
        };
        for (left, right) in &tail {
            if right.is_empty() {
                return Err(violation(right, "is the empty word"));
            }
            let right_r = rfactor(right)?.right;
            if rf.left.is_empty() {
                if !(*right <= right_r && right_r < *omega) {
                    return Err(violation(right, "breaks ω″ ⪯_r (ω″)_R ≺_r ω"));
                }
                if right.len() > omega.len() {
                    return Err(violation(right, "is longer than ω"));
                }
                if !left.augmentation().is_zero() {
                    return Err(violation(
                        right,
                        "has a left factor with non-zero augmentation",
                    ));
                }
            } else {
                let below = right_r < rf.right;
                let shaped = right.len() > rf.right.len()
                    && right.letters().ends_with(rf.right.letters())
                    && {
                        let prefix = right.prefix(right.len() - rf.right.len());
                        prefix.max_letter()?.original() < rf.right.max_letter()?.original()
                    };
                if !below && !shaped {
                    return Err(violation(
                        right,
                        "satisfies neither (ω″)_R ≺_r ω_R nor ω″ = f·ω_R with o(m_f) ≺ o(m_{ω_R})",
                    ));
                }
            }
        }
        Ok(DeltaClassification {
            word: omega.clone(),
            head,
            group,
            middle,
            tail,
        })
    }

    /// For every tail and middle term `(f′, f″)` of `Δ(ω)`:
    /// `deg f″ ≤ deg ω`, `|f″| ≤ |ω|` and `deg f″ + |f″| < deg ω + |ω|`.
    pub fn check_degree_length_descent(
        &self,
        omega: &Word,
        alphabet: &Alphabet,
    ) -> Result<Descent> {
        if omega.is_empty() {
            return Ok(Descent {
                holds: true,
                counterexample: None,
            });
        }
        let total = self.delta_word(omega)?;
        let f = self.field;
        let mut rest = total;
        let w = Polynomial::word(f, omega.clone());
        rest.add_scaled(
            &-f.one(),
            &TensorPolynomial::tensor(&w, &Polynomial::one(f)),
        );
        rest.add_scaled(
            &-f.one(),
            &TensorPolynomial::tensor(&self.bracket_one_minus(omega)?, &w),
        );
        let (d, l) = (omega.degree(alphabet), omega.len() as u64);
        for right in rest.group_by_right().keys() {
            let (dr, lr) = (right.degree(alphabet), right.len() as u64);
            if dr > d || lr > l || dr + lr >= d + l {
                return Ok(Descent {
                    holds: false,
                    counterexample: Some(right.clone()),
                });
            }
        }
        Ok(Descent {
            holds: true,
            counterexample: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::LetterSpec;

    fn grouplike_x() -> (Alphabet, CoproductSpec) {
        let a = Alphabet::from_names(&["x"]).unwrap();
        let mut spec = CoproductSpec::new(Field::Rational);
        let x = a.id("x").unwrap();
        spec.insert(x, LetterCoproduct::group(x));
        (a, spec)
    }

    fn sweedler_like() -> (Alphabet, CoproductSpec) {
        let a = Alphabet::new(&[
            LetterSpec::original("z", 0, 0),
            LetterSpec::original("x", 1, 0),
            LetterSpec::original("w", 1, 1),
        ])
        .unwrap();
        let q = Field::Rational;
        let id = |n| a.id(n).unwrap();
        let mut spec = CoproductSpec::new(q);
        spec.insert(id("z"), LetterCoproduct::group(id("z")));
        spec.insert(id("x"), LetterCoproduct::group(id("z")));
        spec.insert(
            id("w"),
            LetterCoproduct::unit().with_tail(a.parse_polynomial("-w", q).unwrap(), id("z")),
        );
        (a, spec)
    }

    fn tp(a: &Alphabet, l: &str, r: &str) -> TensorPolynomial {
        let q = Field::Rational;
        TensorPolynomial::tensor(
            &a.parse_polynomial(l, q).unwrap(),
            &a.parse_polynomial(r, q).unwrap(),
        )
    }

    #[test]
    fn bracket_examples() {
        let (a, spec) = grouplike_x();
        let q = Field::Rational;
        assert_eq!(
            spec.bracket_one_minus(&a.parse_word("x x").unwrap())
                .unwrap(),
            a.parse_polynomial("1 - 2 * x + x x", q).unwrap()
        );
        assert_eq!(
            spec.bracket_one_minus(&Word::empty()).unwrap(),
            Polynomial::one(q)
        );
        let b = Alphabet::from_names(&["x"]).unwrap();
        let unit = CoproductSpec::unit_for_all(&b, q);
        assert_eq!(
            unit.bracket_one_minus(&b.parse_word("x").unwrap()).unwrap(),
            Polynomial::one(q)
        );
        let empty = CoproductSpec::new(q);
        assert!(matches!(
            empty.bracket_one_minus(&b.parse_word("x").unwrap()),
            Err(Error::MissingCoproductEntry(_))
        ));
    }

    #[test]
    fn validation_examples() {
        let (a, spec) = grouplike_x();
        assert!(spec.validate(&a).unwrap().is_empty());

        let b = Alphabet::new(&[
            LetterSpec::original("x", 1, 0),
            LetterSpec::original("y", 1, 1),
            LetterSpec::original("u", 2, 0),
        ])
        .unwrap();
        let q = Field::Rational;
        let id = |n| b.id(n).unwrap();
        let mut bad = CoproductSpec::unit_for_all(&b, q);
        bad.insert(
            id("y"),
            LetterCoproduct::unit().with_tail(b.parse_polynomial("x", q).unwrap(), id("y")),
        );
        let v = bad.validate(&b).unwrap();
        assert!(v.iter().any(|m| m.contains("x″ ≺ x fails")), "{v:?}");
        assert!(v.iter().any(|m| m.contains("t(x″) < t(x) fails")), "{v:?}");

        let mut same_degree = CoproductSpec::unit_for_all(&b, q);
        same_degree.insert(
            id("y"),
            LetterCoproduct::unit().with_tail(b.parse_polynomial("x", q).unwrap(), id("x")),
        );
        let v = same_degree.validate(&b).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("t(x″) < t(x)"));

        let mut augmented = CoproductSpec::unit_for_all(&b, q);
        augmented.insert(
            id("u"),
            LetterCoproduct::unit().with_tail(b.parse_polynomial("1 + x", q).unwrap(), id("x")),
        );
        assert!(augmented.validate(&b).unwrap()[0].contains("augmentation"));

        let missing = CoproductSpec::new(q);
        assert!(matches!(missing.validate(&b), Err(Error::MissingCoproductEntry(n)) if n == "x"));
    }

    #[test]
    fn degree_zero_forcing() {
        let a = Alphabet::from_names(&["z", "g"]).unwrap();
        let mut spec = CoproductSpec::new(Field::Rational);
        spec.insert(
            a.id("z").unwrap(),
            LetterCoproduct::group(a.id("g").unwrap()),
        );
        spec.insert(
            a.id("g").unwrap(),
            LetterCoproduct::group(a.id("g").unwrap()),
        );
        let v = spec.validate(&a).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].starts_with("z:"));
    }

    #[test]
    fn delta_of_words() {
        let (a, spec) = grouplike_x();
        let q = Field::Rational;
        assert_eq!(
            spec.delta_word(&Word::empty()).unwrap(),
            TensorPolynomial::one(q)
        );
        let x = a.parse_word("x").unwrap();
        let mut expected = tp(&a, "x", "1");
        expected.add_scaled(&q.one(), &tp(&a, "1 - x", "x"));
        assert_eq!(spec.delta_word(&x).unwrap(), expected);

        let mut xx = tp(&a, "x x", "1");
        xx.add_scaled(&q.one(), &tp(&a, "x - x x", "x"));
        xx.add_scaled(&q.one(), &tp(&a, "x - x x", "x"));
        xx.add_scaled(&q.one(), &tp(&a, "1 - 2 * x + x x", "x x"));
        assert_eq!(spec.delta_word(&a.parse_word("x x").unwrap()).unwrap(), xx);
    }

    #[test]
    fn classification_of_square() {
        let (a, spec) = grouplike_x();
        let q = Field::Rational;
        let omega = a.parse_word("x x").unwrap();
        let c = spec.classify_delta(&omega, &a).unwrap();
        assert!(c.middle.is_none());
        assert_eq!(c.tail.len(), 1);
        assert_eq!(c.tail[0].1, a.parse_word("x").unwrap());
        assert_eq!(
            c.tail[0].0,
            a.parse_polynomial("2 * x - 2 * x x", q).unwrap()
        );
        assert_eq!(c.total(), spec.delta_word(&omega).unwrap());
        assert!(spec.check_degree_length_descent(&omega, &a).unwrap().holds);
    }

    #[test]
    fn classification_with_middle_term() {
        let (a, spec) = sweedler_like();
        let omega = a.parse_word("z x").unwrap();
        let c = spec.classify_delta(&omega, &a).unwrap();
        assert!(c.middle.is_some());
        assert_eq!(c.total(), spec.delta_word(&omega).unwrap());
        let w = a.parse_word("w").unwrap();
        let c = spec.classify_delta(&w, &a).unwrap();
        assert_eq!(
            c.tail,
            vec![(
                a.parse_polynomial("-w", Field::Rational).unwrap(),
                a.parse_word("z").unwrap()
            )]
        );
        assert!(spec.check_degree_length_descent(&w, &a).unwrap().holds);
    }

    #[test]
    fn counit_identity() {
        let (a, spec) = sweedler_like();
        for omega in a.words_up_to(3) {
            let d = spec.delta_word(&omega).unwrap();
            assert_eq!(d.counit_left(), Polynomial::word(Field::Rational, omega));
        }
    }

    #[test]
    fn multiplicativity() {
        let (a, spec) = sweedler_like();
        let words = a.words_up_to(2);
        for u in &words {
            for v in &words {
                let lhs = spec.delta_word(&u.concat(v)).unwrap();
                let rhs = &spec.delta_word(u).unwrap() * &spec.delta_word(v).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
