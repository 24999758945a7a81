//! Reducibility consequences of the mirror relations
//! `xx* ≡ x + x*` and `x*x ≡ x + x*`.

use crate::alphabet::LetterId;
use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Scalar};
use crate::reduction::TruncatedSpan;
use crate::words::Word;

/// A span element with a prescribed leading word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorCertificate {
    pub word: Word,
    pub polynomial: Polynomial,
}

/// What a certified `x* ≡ k_x·x + Σ k_ω ω` implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MirrorDichotomy {
    /// `k_x = 0`: `x` itself is reducible.
    LetterReducible { certificate: Polynomial },
    /// `k_x ≠ 0`: `x²` is reducible, witnessed by
    /// `(k_x + 1)x + Σ k_ω ω − k_x x² − Σ k_ω ωx`.
    SquareReducible {
        k_x: Scalar,
        certificate: MirrorCertificate,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub letter: LetterId,
    /// Present when `x` is certified: the constructed certificate for `x*`.
    pub mirror_certificate: Option<MirrorCertificate>,
    /// Present when `x*` is certified.
    pub dichotomy: Option<MirrorDichotomy>,
}

impl MirrorReport {
    pub fn triggered(&self) -> bool {
        self.mirror_certificate.is_some() || self.dichotomy.is_some()
    }
}

/// Checks both consequences of the mirror relations for `x ∈ D`:
///
/// * if `x ≡ Σ k_ω ω` is certified, then `f = x* + x − Σ k_ω ωx*` lies in the
///   ideal and has leading word `x*`;
/// * if `x* ≡ k_x x + Σ k_ω ω` is certified, then `x` is reducible when
///   `k_x = 0` and `x²` is reducible otherwise.
pub fn check_mirror_relations(x: LetterId, span: &TruncatedSpan) -> Result<MirrorReport> {
    let alphabet = span.alphabet();
    let field = span.field();
    let letter = alphabet.letter(x)?;
    let xs = match (letter.is_original(), letter.partner) {
        (true, Some(p)) => p,
        _ => {
            return Err(Error::Precondition(format!(
                "`{}` is not an original letter with a mirror",
                letter.name
            )))
        }
    };
    let px = Polynomial::letter(field, x);
    let pxs = Polynomial::letter(field, xs);
    let both = &px + &pxs;
    for rel in [&(&px * &pxs) - &both, &(&pxs * &px) - &both] {
        if !span.contains(&rel)? {
            return Err(Error::Precondition(format!(
                "mirror relation {} is missing",
                rel.display(alphabet)
            )));
        }
    }
    let show = |p: &Polynomial| p.display(alphabet).to_string();

    let mirror_certificate = match span.certificate(&Word::letter(x)) {
        None => None,
        Some(row) => {
            // row = x − Σ k_ω ω, so f = x* + x + (row − x)·x*.
            let tail = row - &px;
            let f = &(&pxs + &px) + &(&tail * &pxs);
            let word = Word::letter(xs);
            if f.leading_word()? != &word {
                return Err(Error::Invariant(format!(
                    "constructed certificate {} does not lead with x*",
                    show(&f)
                )));
            }
            if !span.contains(&f)? {
                return Err(Error::Inconsistent(format!(
                    "{} is not in the span",
                    show(&f)
                )));
            }
            Some(MirrorCertificate {
                word,
                polynomial: f,
            })
        }
    };

    let dichotomy = match span.certificate(&Word::letter(xs)) {
        None => None,
        Some(row) => {
            // x* ≡ lower = k_x x + Σ k_ω ω.
            let lower = &pxs - row;
            let k_x = lower.coefficient(&Word::letter(x));
            let rest = &lower - &px.scale(&k_x);
            if k_x.is_zero() {
                match span.certificate(&Word::letter(x)) {
                    Some(c) => Some(MirrorDichotomy::LetterReducible {
                        certificate: c.clone(),
                    }),
                    None => {
                        return Err(Error::Inconsistent(format!(
                            "k_x = 0 but `{}` is not certified; try larger bounds",
                            letter.name
                        )))
                    }
                }
            } else {
                let k1 = &k_x + &field.one();
                let p = &(&(&px.scale(&k1) + &rest) - &(&px * &px).scale(&k_x)) - &(&rest * &px);
                let square = Word::letter(x).concat(&Word::letter(x));
                if p.leading_word()? != &square
                    || !span.contains(&p)?
                    || span.certificate(&square).is_none()
                {
                    return Err(Error::Inconsistent(format!(
                        "k_x ≠ 0 but x² is not certified via {}; try larger bounds",
                        show(&p)
                    )));
                }
                Some(MirrorDichotomy::SquareReducible {
                    k_x,
                    certificate: MirrorCertificate {
                        word: square,
                        polynomial: p,
                    },
                })
            }
        }
    };

    Ok(MirrorReport {
        letter: x,
        mirror_certificate,
        dichotomy,
    })
}
