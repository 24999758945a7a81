//! Expressing reducible letters through smaller irreducible ones.
//!
//! Every search is a linear solve over a [`TruncatedSpan`]: candidate
//! monomials are normalised, added greedily in ascending `≺_r` order while
//! they stay independent, and the search stops as soon as the target's
//! normal form lies in their span. The result therefore minimises the
//! `≺_r`-greatest monomial used, and is the unique expression over the
//! greedily chosen monomials. Witnesses are re-verified by a separate
//! normal-form check that shares nothing with the search.

mod mirror;
mod relations;
mod report;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use mirror::{check_mirror_relations, MirrorCertificate, MirrorDichotomy, MirrorReport};
pub use relations::{build_group_like_relations, GroupLikeKind, GroupLikeRelations};
pub use report::{verify_generation, Attempt, GenerationReport, InverseCheck, WitnessEntry};

use crate::alphabet::{Alphabet, LetterId};
use crate::coproduct::CoproductSpec;
use crate::error::{Error, Result};
use crate::polynomial::{Field, Polynomial, Scalar};
use crate::reduction::echelon::{axpy, Echelon, SparseVec};
use crate::reduction::{IdealPresentation, TruncatedSpan};
use crate::words::{rfactor, Word};

/// Truncation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// `L`: longest word kept in the span.
    pub length: usize,
    /// `S`: extra length allowed while generating ideal products.
    pub slack: usize,
    /// Longest word checked by the generation test.
    pub check_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            length: 6,
            slack: 2,
            check_len: 4,
        }
    }
}

/// An algebra presented by letters, relations and a skew-triangular
/// comultiplication, with inverse witnesses for its degree-zero letters.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub alphabet: Alphabet,
    pub field: Field,
    pub coproduct: CoproductSpec,
    /// Explicit relations followed by those generated from `group_likes`.
    pub ideal: IdealPresentation,
    pub group_likes: BTreeMap<LetterId, GroupLikeKind>,
    /// `c_z` for degree-zero letters: derived, then overridden explicitly.
    pub inverse_witnesses: BTreeMap<LetterId, Polynomial>,
    pub bounds: Bounds,
}

impl HopfPresentation {
    pub fn new(
        alphabet: Alphabet,
        field: Field,
        coproduct: CoproductSpec,
        relations: Vec<Polynomial>,
        group_likes: BTreeMap<LetterId, GroupLikeKind>,
        inverse_overrides: BTreeMap<LetterId, Polynomial>,
        bounds: Bounds,
    ) -> Result<Self> {
        coproduct.ensure_valid(&alphabet)?;
        let mut all = relations;
        let mut inverse_witnesses = BTreeMap::new();
        for (&z, &kind) in &group_likes {
            let built = build_group_like_relations(&alphabet, field, z, kind)?;
            all.extend(built.relations);
            inverse_witnesses.extend(built.inverse_witnesses);
        }
        inverse_witnesses.extend(inverse_overrides);
        let ideal = IdealPresentation::new(field, all, &alphabet)?;
        Ok(HopfPresentation {
            alphabet,
            field,
            coproduct,
            ideal,
            group_likes,
            inverse_witnesses,
            bounds,
        })
    }

    pub fn span(&self, bounds: &Bounds) -> Result<TruncatedSpan> {
        TruncatedSpan::build(&self.alphabet, &self.ideal, bounds.length, bounds.slack)
    }

    /// The same presentation with additional relations (used for doctored
    /// variants in tests and experiments).
    pub fn with_relations(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut out = self.clone();
        out.ideal = self.ideal.with_generators(extra, &self.alphabet)?;
        Ok(out)
    }
}

/// A verified expression of a letter modulo the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationWitness {
    pub letter: LetterId,
    pub expression: Polynomial,
    pub certificate: WitnessCertificate,
}

/// Record of the independent check `NF(x − expression) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub bound: usize,
    pub slack: usize,
    pub verified: bool,
}

impl EliminationWitness {
    /// Whether the expression is the letter itself (nothing to eliminate).
    pub fn is_identity(&self) -> bool {
        self.expression == Polynomial::letter(self.expression.field(), self.letter)
    }
}

/// `NF(x − expression) = 0`, computed from scratch.
pub fn verify_witness(span: &TruncatedSpan, witness: &EliminationWitness) -> Result<bool> {
    let x = Polynomial::letter(span.field(), witness.letter);
    Ok(span.normal_form(&(&x - &witness.expression))?.is_zero())
}

fn certify(
    span: &TruncatedSpan,
    letter: LetterId,
    expression: Polynomial,
) -> Result<EliminationWitness> {
    let mut w = EliminationWitness {
        letter,
        expression,
        certificate: WitnessCertificate {
            bound: span.bound(),
            slack: span.slack(),
            verified: false,
        },
    };
    w.certificate.verified = verify_witness(span, &w)?;
    if !w.certificate.verified {
        return Err(Error::Invariant(format!(
            "witness for `{}` does not verify",
            span.alphabet().name(letter)
        )));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Column {
    /// Records which candidate contributed; sorts below every word.
    Tag(usize),
    Word(Word),
}

/// Finds `E = Σ c_m m` over `candidates` (taken in the given order) with
/// `NF(target − E) = 0`, or `None` if the candidates do not suffice.
pub(crate) fn solve(
    span: &TruncatedSpan,
    target: &Polynomial,
    candidates: &[Word],
) -> Result<Option<Polynomial>> {
    let field = span.field();
    let as_columns = |p: &Polynomial| -> SparseVec<Column> {
        p.terms_ascending()
            .map(|(w, c)| (Column::Word(w.clone()), c.clone()))
            .collect()
    };
    let words_vanish =
        |v: &SparseVec<Column>| !matches!(v.keys().next_back(), Some(Column::Word(_)));
    let extract = |rest: &SparseVec<Column>| {
        // rest = NF(target) − Σ a_i (NF(m_i) + tag_i) with no word columns
        // left, so target ≡ Σ a_i m_i where a_i = −rest[tag_i].
        Polynomial::from_terms(
            field,
            rest.iter().map(|(k, c)| match k {
                Column::Tag(i) => (-c.clone(), candidates[*i].clone()),
                Column::Word(_) => unreachable!("word columns were eliminated"),
            }),
        )
    };

    let mut echelon: Echelon<Column> = Echelon::new(field);
    let mut rest = as_columns(&span.normal_form(target)?);
    if words_vanish(&rest) {
        return Ok(Some(extract(&rest)));
    }
    for (i, m) in candidates.iter().enumerate() {
        let mut v = as_columns(&span.normal_form(&Polynomial::word(field, m.clone()))?);
        echelon.reduce_full(&mut v);
        if words_vanish(&v) {
            continue; // dependent on earlier candidates
        }
        v.insert(Column::Tag(i), field.one());
        let Some(lead) = echelon.insert_reduced(v) else {
            continue;
        };
        if let Some(c) = rest.get(&lead).cloned() {
            axpy(&mut rest, &-c, &echelon.rows()[&lead]);
        }
        if words_vanish(&rest) {
            return Ok(Some(extract(&rest)));
        }
    }
    Ok(None)
}

/// Non-empty words of length ≤ `max_len` over `letters`, ascending in `≺_r`.
fn monomials(letters: &[LetterId], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&a| w.concat(&Word::letter(a))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.sort();
    out
}

fn not_found(span: &TruncatedSpan, what: &str) -> Error {
    Error::NotFoundWithinBounds {
        letter: what.to_string(),
        bound: span.bound(),
        slack: span.slack(),
    }
}

fn require_certified(span: &TruncatedSpan, x: LetterId) -> Result<()> {
    span.alphabet().letter(x)?;
    if span.certificate(&Word::letter(x)).is_none() {
        return Err(Error::Precondition(format!(
            "`{}` is not certified reducible",
            span.alphabet().name(x)
        )));
    }
    Ok(())
}

/// Expresses a certified-reducible letter `x` through monomials in letters
/// strictly below `x`. For a mirror `x*` this includes its partner `x`.
pub fn express_letter_smaller(x: LetterId, span: &TruncatedSpan) -> Result<EliminationWitness> {
    require_certified(span, x)?;
    let smaller: Vec<LetterId> = span.alphabet().ids().filter(|&a| a < x).collect();
    let candidates = monomials(&smaller, span.bound());
    match solve(span, &Polynomial::letter(span.field(), x), &candidates)? {
        Some(e) => certify(span, x, e),
        None => Err(not_found(span, span.alphabet().name(x))),
    }
}

/// Expresses `x` through monomials in uncertified letters strictly below
/// `x`; an uncertified letter is returned as itself.
pub fn express_letter_irreducible(x: LetterId, span: &TruncatedSpan) -> Result<EliminationWitness> {
    let alphabet = span.alphabet();
    alphabet.letter(x)?;
    let field = span.field();
    if span.certificate(&Word::letter(x)).is_none() {
        return certify(span, x, Polynomial::letter(field, x));
    }
    let (_, uncertified) = span.letter_partition();
    let below: Vec<LetterId> = uncertified.into_iter().filter(|&a| a < x).collect();
    let candidates = monomials(&below, span.bound());
    if let Some(e) = solve(span, &Polynomial::letter(field, x), &candidates)? {
        return certify(span, x, e);
    }
    // Locate the letter where the descent gets stuck.
    let smaller = express_letter_smaller(x, span)?;
    for y in smaller.expression.letters() {
        if span.certificate(&Word::letter(y)).is_some() {
            express_letter_irreducible(y, span)?;
        }
    }
    Err(not_found(span, alphabet.name(x)))
}

/// From `p = ω_R + Σ k_f f·ω_R + Σ k_g g` in the span, finds terms `k_h h`
/// with every `h_R ≺_r ω_R` and `ω_R ≡ Σ k_h h`.
pub fn reduce_suffix_expression(
    omega_r: &Word,
    fs: &[(Scalar, Word)],
    gs: &[(Scalar, Word)],
    span: &TruncatedSpan,
) -> Result<Vec<(Scalar, Word)>> {
    let alphabet = span.alphabet();
    let field = span.field();
    let show = |w: &Word| w.display(alphabet).to_string();
    let m_r = omega_r.max_letter()?.original();
    for (_, f) in fs {
        let ok = f.max_letter().map(|m| m.original() < m_r).unwrap_or(false);
        if !ok {
            return Err(Error::Precondition(format!(
                "f = {} needs o(m_f) ≺ o(m_ωR) for ωR = {}",
                show(f),
                show(omega_r)
            )));
        }
    }
    for (_, g) in gs {
        if g.is_empty() || rfactor(g)?.right >= *omega_r {
            return Err(Error::Precondition(format!(
                "g = {} needs g_R ≺_r ωR = {}",
                show(g),
                show(omega_r)
            )));
        }
    }
    let mut p = Polynomial::word(field, omega_r.clone());
    for (k, f) in fs {
        p.add_term(f.concat(omega_r), k.clone());
    }
    for (k, g) in gs {
        p.add_term(g.clone(), k.clone());
    }
    if !span.contains(&p)? {
        return Err(Error::Precondition(format!(
            "{} is not in the span",
            p.display(alphabet)
        )));
    }
    if fs.is_empty() {
        return Ok(gs.iter().map(|(k, g)| (-k.clone(), g.clone())).collect());
    }
    let candidates: Vec<Word> = alphabet
        .words_up_to(span.bound())
        .into_iter()
        .filter(|h| !h.is_empty() && rfactor(h).map(|r| r.right < *omega_r).unwrap_or(false))
        .collect();
    match solve(span, &Polynomial::word(field, omega_r.clone()), &candidates)? {
        Some(e) => Ok(e.terms().map(|(w, c)| (c.clone(), w.clone())).collect()),
        None => Err(not_found(span, &show(omega_r))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::LetterSpec;
    use crate::coproduct::LetterCoproduct;

    const Q: Field = Field::Rational;

    fn example() -> (Alphabet, TruncatedSpan) {
        let a = Alphabet::new(&[
            LetterSpec::original("x", 1, 0),
            LetterSpec::original("y", 2, 0),
        ])
        .unwrap();
        let pres =
            IdealPresentation::new(Q, vec![a.parse_polynomial("y - x x", Q).unwrap()], &a).unwrap();
        let span = TruncatedSpan::build(&a, &pres, 6, 2).unwrap();
        (a, span)
    }

    fn sweedler() -> HopfPresentation {
        let a = Alphabet::new(&[
            LetterSpec::original("z", 0, 0),
            LetterSpec::original("x", 1, 0),
            LetterSpec::original("w", 1, 1),
        ])
        .unwrap();
        let id = |n| a.id(n).unwrap();
        let p = |s| a.parse_polynomial(s, Q).unwrap();
        let mut spec = CoproductSpec::new(Q);
        spec.insert(id("z"), LetterCoproduct::group(id("z")));
        spec.insert(id("x"), LetterCoproduct::group(id("z")));
        spec.insert(id("w"), LetterCoproduct::unit().with_tail(p("-w"), id("z")));
        let relations = vec![p("x x"), p("x z + z x - 2 * x"), p("w - x + z x")];
        let group_likes = BTreeMap::from([(id("z"), GroupLikeKind::FiniteOrder(2))]);
        HopfPresentation::new(
            a.clone(),
            Q,
            spec,
            relations,
            group_likes,
            BTreeMap::new(),
            Bounds {
                length: 4,
                slack: 2,
                check_len: 4,
            },
        )
        .unwrap()
    }

    #[test]
    fn example_letter_y() {
        let (a, span) = example();
        let y = a.id("y").unwrap();
        let w = express_letter_smaller(y, &span).unwrap();
        assert_eq!(w.expression.display(&a).to_string(), "x x");
        assert!(w.certificate.verified);
        let w = express_letter_irreducible(y, &span).unwrap();
        assert_eq!(w.expression.display(&a).to_string(), "x x");
        let x = a.id("x").unwrap();
        assert!(matches!(
            express_letter_smaller(x, &span),
            Err(Error::Precondition(_))
        ));
        assert!(express_letter_irreducible(x, &span).unwrap().is_identity());
    }

    #[test]
    fn letter_in_ideal_has_zero_expression() {
        let a = Alphabet::from_names(&["x", "y"]).unwrap();
        let pres =
            IdealPresentation::new(Q, vec![a.parse_polynomial("y", Q).unwrap()], &a).unwrap();
        let span = TruncatedSpan::build(&a, &pres, 3, 0).unwrap();
        let w = express_letter_smaller(a.id("y").unwrap(), &span).unwrap();
        assert!(w.expression.is_zero());
    }

    #[test]
    fn sweedler_elimination() {
        let h = sweedler();
        let a = &h.alphabet;
        let span = h.span(&h.bounds).unwrap();
        let w = a.id("w").unwrap();
        let (cert, unc) = span.letter_partition();
        assert_eq!(cert, vec![w]);
        assert_eq!(unc, vec![a.id("z").unwrap(), a.id("x").unwrap()]);
        let wit = express_letter_irreducible(w, &span).unwrap();
        assert_eq!(wit.expression.display(a).to_string(), "x - z x");
        assert!(verify_witness(&span, &wit).unwrap());
    }

    #[test]
    fn suffix_expressions() {
        let h = sweedler();
        let a = &h.alphabet;
        let span = h.span(&h.bounds).unwrap();
        let w = a.parse_word("w").unwrap();
        let gs = vec![
            (Q.from_i64(-1), a.parse_word("x").unwrap()),
            (Q.one(), a.parse_word("z x").unwrap()),
        ];
        let hs = reduce_suffix_expression(&w, &[], &gs, &span).unwrap();
        assert_eq!(
            hs,
            vec![
                (Q.one(), a.parse_word("x").unwrap()),
                (Q.from_i64(-1), a.parse_word("z x").unwrap())
            ]
        );

        // With an f-term present the solver must find r-suffixes below ω_R.
        let fs = vec![(Q.one(), a.parse_word("z").unwrap())];
        let mut p = Polynomial::word(Q, w.clone());
        p.add_term(a.parse_word("z w").unwrap(), Q.one());
        let nf = span.normal_form(&p).unwrap();
        let gs: Vec<(Scalar, Word)> = nf.terms().map(|(w, c)| (-c.clone(), w.clone())).collect();
        let hs = reduce_suffix_expression(&w, &fs, &gs, &span).unwrap();
        let mut e = Polynomial::zero(Q);
        for (k, h) in &hs {
            assert!(rfactor(h).unwrap().right < w);
            e.add_term(h.clone(), k.clone());
        }
        assert!(span
            .contains(&(&Polynomial::word(Q, w.clone()) - &e))
            .unwrap());
    }

    #[test]
    fn suffix_preconditions() {
        let a = Alphabet::from_names(&["x", "x*"]).unwrap();
        let gens = vec![
            a.parse_polynomial("x x* - x - x*", Q).unwrap(),
            a.parse_polynomial("x* x - x - x*", Q).unwrap(),
        ];
        let span =
            TruncatedSpan::build(&a, &IdealPresentation::new(Q, gens, &a).unwrap(), 3, 1).unwrap();
        let xs = a.parse_word("x*").unwrap();
        let fs = vec![(Q.one(), a.parse_word("x").unwrap())];
        assert!(matches!(
            reduce_suffix_expression(&xs, &fs, &[], &span),
            Err(Error::Precondition(_))
        ));
        let gs = vec![(Q.one(), a.parse_word("x* x").unwrap())];
        assert!(matches!(
            reduce_suffix_expression(&xs, &[], &gs, &span),
            Err(Error::Precondition(_))
        ));
    }
}
