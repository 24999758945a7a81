//! Ideal presentations, truncated spans, normal forms and the
//! `Δ(I) ⊆ I ⊗ A + A ⊗ I` check.

pub(crate) mod echelon;
mod span;

pub use span::{IdealPresentation, ReducibilityAnswer, TruncatedSpan};

use std::collections::BTreeMap;

use crate::coproduct::CoproductSpec;
use crate::error::Result;
use crate::polynomial::{Polynomial, TensorPolynomial};
use crate::words::Word;

/// Outcome of [`check_delta_stabilizes_ideal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaIdealStatus {
    Holds,
    /// A basis element whose coproduct leaves `I ⊗ A + A ⊗ I`.
    Fails {
        witness: Polynomial,
    },
    /// Some coproduct term is longer than the span bound.
    Inconclusive {
        element: Polynomial,
    },
}

/// For every basis element `f` with all words of length ≤ `sample_bound`,
/// checks `(NF ⊗ NF)(Δ f) = 0`. Since `NF` is a projection with kernel the
/// span `V`, the kernel of `NF ⊗ NF` is exactly `V ⊗ W + W ⊗ V`.
pub fn check_delta_stabilizes_ideal(
    span: &TruncatedSpan,
    spec: &CoproductSpec,
    sample_bound: usize,
) -> Result<DeltaIdealStatus> {
    let mut inconclusive = None;
    for f in span.basis() {
        if f.max_len() > sample_bound {
            continue;
        }
        let d = spec.delta(f)?;
        if d.terms()
            .any(|(a, b, _)| a.len() > span.bound() || b.len() > span.bound())
        {
            inconclusive.get_or_insert_with(|| f.clone());
            continue;
        }
        if !project(span, &d)?.is_zero() {
            return Ok(DeltaIdealStatus::Fails { witness: f.clone() });
        }
    }
    Ok(match inconclusive {
        Some(element) => DeltaIdealStatus::Inconclusive { element },
        None => DeltaIdealStatus::Holds,
    })
}

/// `(NF ⊗ NF)(t)`.
fn project(span: &TruncatedSpan, t: &TensorPolynomial) -> Result<TensorPolynomial> {
    let field = span.field();
    let mut cache: BTreeMap<Word, Polynomial> = BTreeMap::new();
    let mut nf = |w: &Word| -> Result<Polynomial> {
        if let Some(p) = cache.get(w) {
            return Ok(p.clone());
        }
        let p = span.normal_form(&Polynomial::word(field, w.clone()))?;
        cache.insert(w.clone(), p.clone());
        Ok(p)
    };
    let mut out = TensorPolynomial::zero(field);
    for (a, b, c) in t.terms() {
        out.add_tensor(c, &nf(a)?, &nf(b)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, LetterSpec};
    use crate::coproduct::LetterCoproduct;
    use crate::error::Error;
    use crate::polynomial::Field;

    const Q: Field = Field::Rational;

    fn xy() -> Alphabet {
        Alphabet::new(&[
            LetterSpec::original("x", 1, 0),
            LetterSpec::original("y", 2, 0),
        ])
        .unwrap()
    }

    fn span_of(a: &Alphabet, gens: &[&str], l: usize, s: usize) -> TruncatedSpan {
        let gens = gens
            .iter()
            .map(|g| a.parse_polynomial(g, Q).unwrap())
            .collect();
        let pres = IdealPresentation::new(Q, gens, a).unwrap();
        TruncatedSpan::build(a, &pres, l, s).unwrap()
    }

    fn words(a: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| a.parse_word(w).unwrap()).collect()
    }

    fn nf(a: &Alphabet, span: &TruncatedSpan, p: &str) -> String {
        let p = a.parse_polynomial(p, Q).unwrap();
        span.normal_form(&p).unwrap().display(a).to_string()
    }

    #[test]
    fn small_span_has_distinct_leads() {
        let a = xy();
        let span = span_of(&a, &["y - x x"], 3, 0);
        let leads: Vec<String> = span
            .basis()
            .map(|f| f.leading_word().unwrap().display(&a).to_string())
            .collect();
        assert!(leads.contains(&"y".to_string()));
        assert!(leads.contains(&"y x".to_string()));
        assert!(leads.contains(&"x x x".to_string()) || leads.contains(&"x y".to_string()));
        for f in span.basis() {
            assert!(f.augmentation().is_zero());
            assert!(f.max_len() <= 3);
        }
        assert!(span_of(&a, &[], 2, 0).is_empty());
    }

    #[test]
    fn group_like_square_span() {
        let a = Alphabet::from_names(&["x"]).unwrap();
        let span = span_of(&a, &["x x - 2 * x"], 3, 0);
        let leads: Vec<Word> = span
            .basis()
            .map(|f| f.leading_word().unwrap().clone())
            .collect();
        assert_eq!(leads, words(&a, &["x x", "x x x"]));
    }

    #[test]
    fn bound_checks() {
        let a = xy();
        let pres = IdealPresentation::new(Q, vec![a.parse_polynomial("y - x x x", Q).unwrap()], &a)
            .unwrap();
        assert_eq!(
            TruncatedSpan::build(&a, &pres, 2, 0).unwrap_err(),
            Error::BoundTooSmall {
                bound: 2,
                needed: 3
            }
        );
        let span = span_of(&a, &["y - x x"], 3, 0);
        assert!(matches!(
            span.is_reducible(&a.parse_word("x x x x").unwrap()),
            Err(Error::BoundExceeded {
                length: 4,
                bound: 3
            })
        ));
        assert!(span.irreducible_words_up_to(4).is_err());
        assert!(
            IdealPresentation::new(Q, vec![a.parse_polynomial("1 + x", Q).unwrap()], &a).is_err()
        );
    }

    #[test]
    fn reducibility_queries() {
        let a = xy();
        let span = span_of(&a, &["y - x x"], 6, 2);
        match span.is_reducible(&a.parse_word("y").unwrap()).unwrap() {
            ReducibilityAnswer::Certified(f) => {
                assert_eq!(f, a.parse_polynomial("y - x x", Q).unwrap())
            }
            ReducibilityAnswer::Unknown => panic!("y must be certified"),
        }
        assert_eq!(
            span.is_reducible(&a.parse_word("x").unwrap()).unwrap(),
            ReducibilityAnswer::Unknown
        );
        let m = Alphabet::from_names(&["x", "x*"]).unwrap();
        let mirror = span_of(&m, &["x x* - x - x*", "x* x - x - x*"], 4, 2);
        for w in ["x x*", "x* x"] {
            assert!(mirror
                .is_reducible(&m.parse_word(w).unwrap())
                .unwrap()
                .is_certified());
        }
    }

    #[test]
    fn normal_forms() {
        let a = xy();
        let span = span_of(&a, &["y - x x"], 6, 2);
        assert_eq!(nf(&a, &span, "y"), "x x");
        assert_eq!(nf(&a, &span, "y x"), "x y");
        assert_eq!(nf(&a, &span, "y y"), "x x y");
        assert_eq!(nf(&a, &span, "y x x"), "x x y");
        assert_eq!(nf(&a, &span, "x y x"), "x x y");
        assert_eq!(nf(&a, &span, "x x x x"), "x x y");
        assert_eq!(nf(&a, &span, "x y - y x"), "0");
    }

    #[test]
    fn irreducible_words_match_weight_oracle() {
        // k<x,y>/(y - x²) ≅ k[x]: one irreducible word per weight, the
        // ≺_r-least word of that weight.
        let a = xy();
        let span = span_of(&a, &["y - x x"], 6, 2);
        assert_eq!(
            span.irreducible_words_up_to(3).unwrap(),
            words(&a, &["1", "x", "x x", "x y", "x x y", "x y y"])
        );
        assert_eq!(
            span.irreducible_words_up_to(5).unwrap(),
            words(
                &a,
                &[
                    "1",
                    "x",
                    "x x",
                    "x y",
                    "x x y",
                    "x y y",
                    "x x y y",
                    "x y y y",
                    "x x y y y",
                    "x y y y y"
                ]
            )
        );
        let free = span_of(&a, &[], 2, 0);
        assert_eq!(free.irreducible_words_up_to(2).unwrap().len(), 7);
    }

    #[test]
    fn letter_partitions() {
        let a = xy();
        let span = span_of(&a, &["y - x x"], 6, 2);
        assert_eq!(
            span.letter_partition(),
            (vec![a.id("y").unwrap()], vec![a.id("x").unwrap()])
        );
        let free = span_of(&a, &[], 2, 0);
        assert_eq!(free.letter_partition().0, vec![]);
    }

    #[test]
    fn delta_ideal_check() {
        let a = xy();
        let span = span_of(&a, &["y - x x"], 6, 2);
        let (x, y) = (a.id("x").unwrap(), a.id("y").unwrap());
        let mut spec = CoproductSpec::unit_for_all(&a, Q);
        spec.insert(
            y,
            LetterCoproduct::unit().with_tail(a.parse_polynomial("2 * x", Q).unwrap(), x),
        );
        assert_eq!(
            check_delta_stabilizes_ideal(&span, &spec, 4).unwrap(),
            DeltaIdealStatus::Holds
        );

        let broken = CoproductSpec::unit_for_all(&a, Q);
        assert!(matches!(
            check_delta_stabilizes_ideal(&span, &broken, 4).unwrap(),
            DeltaIdealStatus::Fails { .. }
        ));

        let empty = span_of(&a, &[], 3, 0);
        assert_eq!(
            check_delta_stabilizes_ideal(&empty, &broken, 3).unwrap(),
            DeltaIdealStatus::Holds
        );
    }
}
