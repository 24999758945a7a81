//! Truncated, row-reduced spans of two-sided ideals.

use std::collections::{BTreeMap, HashSet};

use log::debug;

use super::echelon::{Echelon, SparseVec};
use crate::alphabet::{Alphabet, LetterId};
use crate::error::{Error, Result};
use crate::polynomial::{Field, Polynomial};
use crate::words::Word;

/// Generators of a two-sided ideal `I ⊆ ker ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    field: Field,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    /// Rejects generators with non-zero augmentation and drops zeros.
    pub fn new(field: Field, generators: Vec<Polynomial>, alphabet: &Alphabet) -> Result<Self> {
        let mut kept = Vec::new();
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch(
                    field.to_string(),
                    g.field().to_string(),
                ));
            }
            if !g.augmentation().is_zero() {
                return Err(Error::NonAugmentedGenerator(
                    g.display(alphabet).to_string(),
                ));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(IdealPresentation {
            field,
            generators: kept,
        })
    }

    pub fn empty(field: Field) -> Self {
        IdealPresentation {
            field,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// A presentation with extra generators appended.
    pub fn with_generators(&self, extra: &[Polynomial], alphabet: &Alphabet) -> Result<Self> {
        let mut all = self.generators.clone();
        all.extend(extra.iter().cloned());
        IdealPresentation::new(self.field, all, alphabet)
    }
}

/// Answer of a bounded reducibility query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducibilityAnswer {
    /// A span element whose leading word is the queried word.
    Certified(Polynomial),
    /// No certificate within the bounds; this is *not* a proof of
    /// irreducibility.
    Unknown,
}

impl ReducibilityAnswer {
    pub fn is_certified(&self) -> bool {
        matches!(self, ReducibilityAnswer::Certified(_))
    }
}

/// Column key for span elimination: words longer than the bound sort above
/// all short words, so they are eliminated first.
type SpanKey = (bool, Word);

/// `I ∩ span{words of length ≤ L}`, approximated from the products `u·g·v`
/// with `|u| + maxlen(g) + |v| ≤ L + S`, in reduced echelon form under `≺_r`.
#[derive(Clone, Debug)]
pub struct TruncatedSpan {
    alphabet: Alphabet,
    field: Field,
    bound: usize,
    slack: usize,
    /// Leading word → monic basis element.
    basis: BTreeMap<Word, Polynomial>,
}

impl TruncatedSpan {
    /// Builds the span. Fails if `L` is below the longest generator word.
    pub fn build(
        alphabet: &Alphabet,
        presentation: &IdealPresentation,
        bound: usize,
        slack: usize,
    ) -> Result<Self> {
        let field = presentation.field();
        let needed = presentation
            .generators()
            .iter()
            .map(Polynomial::max_len)
            .max()
            .unwrap_or(0);
        if bound < needed {
            return Err(Error::BoundTooSmall { bound, needed });
        }
        let limit = bound + slack;
        let to_key = |w: Word| (w.len() > bound, w);
        let mut echelon: Echelon<SpanKey> = Echelon::new(field);
        let mut seen: HashSet<Polynomial> = HashSet::new();
        let layers: Vec<Vec<Word>> = (0..=limit).map(|n| words_of_length(alphabet, n)).collect();
        let mut products = 0usize;
        // Breadth-first by the total length |u| + maxlen(g) + |v|.
        for total in 0..=limit {
            for g in presentation.generators() {
                let gl = g.max_len();
                if gl > total {
                    continue;
                }
                let free = total - gl;
                for lu in 0..=free {
                    for u in &layers[lu] {
                        for v in &layers[free - lu] {
                            let p = g.sandwich(u, v);
                            if !seen.insert(p.clone()) {
                                continue;
                            }
                            products += 1;
                            let row: SparseVec<SpanKey> = p
                                .terms_ascending()
                                .map(|(w, c)| (to_key(w.clone()), c.clone()))
                                .collect();
                            echelon.insert(row);
                        }
                    }
                }
            }
        }
        echelon.interreduce();
        echelon.retain(|(long, _)| !long);
        let basis: BTreeMap<Word, Polynomial> = echelon
            .into_rows()
            .into_iter()
            .map(|((_, lead), row)| {
                let p = Polynomial::from_terms(field, row.into_iter().map(|((_, w), c)| (c, w)));
                (lead, p)
            })
            .collect();
        debug!(
            "span L={bound} S={slack}: {products} products, {} basis rows",
            basis.len()
        );
        Ok(TruncatedSpan {
            alphabet: alphabet.clone(),
            field,
            bound,
            slack,
            basis,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    /// Basis elements in ascending order of their leading words.
    pub fn basis(&self) -> impl Iterator<Item = &Polynomial> {
        self.basis.values()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_len(&self, w: &Word) -> Result<()> {
        if w.len() > self.bound {
            Err(Error::BoundExceeded {
                length: w.len(),
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    /// Certified iff some basis element has leading word `α`.
    pub fn is_reducible(&self, alpha: &Word) -> Result<ReducibilityAnswer> {
        self.check_len(alpha)?;
        Ok(match self.basis.get(alpha) {
            Some(f) => ReducibilityAnswer::Certified(f.clone()),
            None => ReducibilityAnswer::Unknown,
        })
    }

    pub(crate) fn certificate(&self, alpha: &Word) -> Option<&Polynomial> {
        self.basis.get(alpha)
    }

    /// Repeatedly replaces the greatest certified word `α` by `α − f`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                p.field().to_string(),
            ));
        }
        if let Some(w) = p.support().find(|w| w.len() > self.bound) {
            return Err(Error::BoundExceeded {
                length: w.len(),
                bound: self.bound,
            });
        }
        let mut rest = p.clone();
        let mut out = Polynomial::zero(self.field);
        // Terms are consumed from the top; certificates only contain smaller
        // words, so each step strictly lowers the greatest remaining word.
        while let Some((w, c)) = rest
            .leading_term()
            .ok()
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            match self.basis.get(&w) {
                Some(f) => rest.add_scaled(&-c, f),
                None => {
                    rest.add_term(w.clone(), -c.clone());
                    out.add_term(w, c);
                }
            }
        }
        Ok(out)
    }

    /// Whether `p` lies in the span (its normal form vanishes).
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Words of length ≤ `maxlen` without a certificate, ascending in `≺_r`.
    pub fn irreducible_words_up_to(&self, maxlen: usize) -> Result<Vec<Word>> {
        if maxlen > self.bound {
            return Err(Error::BoundExceeded {
                length: maxlen,
                bound: self.bound,
            });
        }
        Ok(self
            .alphabet
            .words_up_to(maxlen)
            .into_iter()
            .filter(|w| !self.basis.contains_key(w))
            .collect())
    }

    /// Splits the letters into (certified reducible, uncertified).
    pub fn letter_partition(&self) -> (Vec<LetterId>, Vec<LetterId>) {
        self.alphabet
            .ids()
            .partition(|&a| self.basis.contains_key(&Word::letter(a)))
    }

    /// Basis elements as text, one per line, ascending by leading word.
    pub fn export(&self) -> String {
        self.basis
            .values()
            .map(|p| format!("{}\n", p.display(&self.alphabet)))
            .collect()
    }
}

fn words_of_length(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let ids: Vec<LetterId> = alphabet.ids().collect();
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<LetterId>| {
                ids.iter().map(move |&a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    layer.into_iter().map(Word::from_ids).collect()
}
