#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use reduction_words::frontend::{fixtures, parse_presentation, PresentationFile};
use reduction_words::words::Word;
use reduction_words::{Alphabet, Field, HopfPresentation, Polynomial};

/// A bundled presentation, parsed.
pub fn fixture(name: &str) -> HopfPresentation {
    let text = fixtures::get(name).unwrap_or_else(|| panic!("no fixture {name}"));
    parse_presentation(text).unwrap_or_else(|d| panic!("{name}: {d:?}"))
}

pub fn fixture_file(name: &str) -> PresentationFile {
    PresentationFile::from_json(fixtures::get(name).unwrap()).unwrap()
}

/// Three letters with one mirror pair: `x < x* < y`.
pub fn mirror_alphabet() -> Alphabet {
    Alphabet::from_names(&["x", "x*", "y"]).unwrap()
}

/// Three plain letters `x < y < z`.
pub fn plain_alphabet() -> Alphabet {
    Alphabet::from_names(&["x", "y", "z"]).unwrap()
}

pub fn word(a: &Alphabet, text: &str) -> Word {
    a.parse_word(text).unwrap()
}

pub fn poly(a: &Alphabet, text: &str, field: Field) -> Polynomial {
    a.parse_polynomial(text, field).unwrap()
}

/// A random polynomial with up to `terms` terms, small integer
/// coefficients and words of length ≤ `max_len`.
pub fn random_polynomial(
    rng: &mut StdRng,
    a: &Alphabet,
    field: Field,
    max_len: usize,
    terms: usize,
) -> Polynomial {
    let ids: Vec<_> = a.ids().collect();
    let mut p = Polynomial::zero(field);
    for _ in 0..rng.gen_range(1..=terms) {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<_> = (0..len).map(|_| ids[rng.gen_range(0..ids.len())]).collect();
        let c = field.from_i64(rng.gen_range(-5..=5));
        p.add_term(a.word(&letters).unwrap(), c);
    }
    p
}

/// Largest suffix under the reduction order, by enumeration.
pub fn brute_force_rsuffix(w: &Word) -> Word {
    (0..w.len())
        .map(|i| w.suffix_from(i))
        .max()
        .expect("non-empty word")
}

/// Prime factorization by iterating the brute-force r-suffix.
pub fn oracle_factorization(w: &Word) -> Vec<Word> {
    if w.is_empty() {
        return Vec::new();
    }
    let right = brute_force_rsuffix(w);
    let mut out = oracle_factorization(&w.prefix(w.len() - right.len()));
    out.push(right);
    out
}
