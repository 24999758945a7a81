//! Presentation files (JSON) and the command-line interface.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "letters": [ { "name": "x", "degree": 1, "rank": 0 } ],
//!   "coproduct": { "x": { "group_part": "unit", "tail": [] } },
//!   "relations": [ "x x" ],
//!   "group_likes": { "z": { "finite_order": 2 } },
//!   "inverse_witnesses": { "z": "1 - z" },
//!   "bounds": { "length": 6, "slack": 2, "check_len": 4 }
//! }
//! ```
//!
//! Only `letters` is required. A missing `coproduct` section means every
//! letter has unit group part and no tail. An optional `model` section
//! describes a finite-dimensional algebra the presentation should map onto,
//! used as an independent oracle.

mod cli;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cli::{run_command, CommandOutput};

use crate::alphabet::{Alphabet, LetterId, LetterSpec};
use crate::coproduct::{CoproductSpec, LetterCoproduct};
use crate::elimination::{Bounds, GroupLikeKind, HopfPresentation};
use crate::error::Error;
use crate::polynomial::{Field, Polynomial, Scalar};
use crate::words::Word;

/// Bundled presentation files, by name.
pub mod fixtures {
    pub const EXAMPLE_3_2: &str = include_str!("../../fixtures/example_3_2.json");
    pub const MIRROR_PAIR: &str = include_str!("../../fixtures/mirror_pair.json");
    pub const Z2_GROUPLIKE: &str = include_str!("../../fixtures/z2_grouplike.json");
    pub const AUGMENTED_SWEEDLER: &str = include_str!("../../fixtures/augmented_sweedler.json");
    pub const DIVIDED_POWER: &str = include_str!("../../fixtures/divided_power.json");

    pub const ALL: [(&str, &str); 5] = [
        ("example_3_2", EXAMPLE_3_2),
        ("mirror_pair", MIRROR_PAIR),
        ("z2_grouplike", Z2_GROUPLIKE),
        ("augmented_sweedler", AUGMENTED_SWEEDLER),
        ("divided_power", DIVIDED_POWER),
    ];

    pub fn get(name: &str) -> Option<&'static str> {
        ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductEntry {
    /// A degree-zero letter name or `"unit"`.
    pub group_part: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<TailSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_len: Option<usize>,
}

/// A finite-dimensional algebra given by a basis, letter images and
/// structure constants: `products[i][j]` is the coordinate vector of
/// `basis[i]·basis[j]`. The first basis element must be the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub basis: Vec<String>,
    pub letter_images: BTreeMap<String, Vec<String>>,
    pub products: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default)]
    pub field: Field,
    pub letters: Vec<LetterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproduct: Option<BTreeMap<String, CoproductEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub group_likes: BTreeMap<String, GroupLikeKind>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inverse_witnesses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSection>,
}

/// A problem in a presentation file, with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Maps semantic errors back to positions in the source text.
struct Locator<'a> {
    text: &'a str,
    diagnostics: Vec<Diagnostic>,
}

impl Locator<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    /// Offset of the first character inside the JSON string literal `s`.
    fn find_literal(&self, s: &str) -> Option<usize> {
        let quoted = serde_json::to_string(s).ok()?;
        self.text.find(&quoted).map(|o| o + 1)
    }

    /// Reports at the literal `anchor` (plus `column - 1` characters inside
    /// it), or at 1:1 when it cannot be found.
    fn report(&mut self, anchor: &str, column: usize, message: String) {
        let (line, col) = match self.find_literal(anchor) {
            Some(o) => {
                let (l, c) = self.position(o);
                (l, c + column.saturating_sub(1))
            }
            None => (1, 1),
        };
        self.diagnostics.push(Diagnostic {
            line,
            column: col,
            message,
        });
    }

    fn error(&mut self, anchor: &str, context: &str, e: &Error) {
        let column = match e {
            Error::Parse { column, .. } => *column,
            _ => 1,
        };
        self.report(anchor, column, format!("{context}: {e}"));
    }
}

/// First backquoted name in an error message, used to locate it.
fn quoted_name(message: &str) -> Option<&str> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(&message[start..start + len])
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self, Vec<Diagnostic>> {
        serde_json::from_str(text).map_err(|e| {
            vec![Diagnostic {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }]
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("presentation serializes");
        s.push('\n');
        s
    }

    /// The bounds given in the file, falling back to the defaults.
    pub fn bounds(&self) -> Bounds {
        let d = Bounds::default();
        let b = self.bounds.clone().unwrap_or_default();
        Bounds {
            length: b.length.unwrap_or(d.length),
            slack: b.slack.unwrap_or(d.slack),
            check_len: b.check_len.unwrap_or(d.check_len),
        }
    }

    /// Builds and validates the presentation. `source` is the original
    /// text, used only to attach positions to diagnostics.
    pub fn to_presentation(&self, source: &str) -> Result<HopfPresentation, Vec<Diagnostic>> {
        let mut loc = Locator {
            text: source,
            diagnostics: Vec::new(),
        };
        let field = self.field;
        let alphabet = match Alphabet::new(&self.letters) {
            Ok(a) => a,
            Err(e) => {
                let msg = e.to_string();
                loc.error(quoted_name(&msg).unwrap_or("letters"), "letters", &e);
                return Err(loc.diagnostics);
            }
        };
        let letter = |loc: &mut Locator, name: &str, context: &str| -> Option<LetterId> {
            match alphabet.id(name) {
                Ok(id) => Some(id),
                Err(e) => {
                    loc.error(name, context, &e);
                    None
                }
            }
        };
        let poly = |loc: &mut Locator, text: &str, context: &str| -> Option<Polynomial> {
            match alphabet.parse_polynomial(text, field) {
                Ok(p) => Some(p),
                Err(e) => {
                    loc.error(text, context, &e);
                    None
                }
            }
        };

        let mut spec = CoproductSpec::unit_for_all(&alphabet, field);
        if let Some(entries) = &self.coproduct {
            for l in alphabet.letters() {
                if !entries.contains_key(&l.name) {
                    loc.report(
                        "coproduct",
                        1,
                        format!(
                            "coproduct: {}",
                            Error::MissingCoproductEntry(l.name.clone())
                        ),
                    );
                }
            }
            for (name, entry) in entries {
                let Some(x) = letter(&mut loc, name, "coproduct") else {
                    continue;
                };
                let group_part = if entry.group_part == "unit" {
                    None
                } else {
                    letter(
                        &mut loc,
                        &entry.group_part,
                        &format!("coproduct of `{name}`"),
                    )
                };
                let mut c = match group_part {
                    Some(z) => LetterCoproduct::group(z),
                    None => LetterCoproduct::unit(),
                };
                for t in &entry.tail {
                    let ctx = format!("tail of `{name}`");
                    if let (Some(left), Some(right)) = (
                        poly(&mut loc, &t.left, &ctx),
                        letter(&mut loc, &t.right, &ctx),
                    ) {
                        c = c.with_tail(left, right);
                    }
                }
                spec.insert(x, c);
            }
        }
        match spec.validate(&alphabet) {
            Ok(violations) => {
                for v in violations {
                    let name = v.split(':').next().unwrap_or("").to_string();
                    loc.report(
                        &name,
                        1,
                        format!("coproduct: skew-triangularity violated: {v}"),
                    );
                }
            }
            Err(e) => loc.error("coproduct", "coproduct", &e),
        }

        let mut relations = Vec::new();
        for r in &self.relations {
            if let Some(p) = poly(&mut loc, r, "relation") {
                if !p.augmentation().is_zero() {
                    loc.report(
                        r,
                        1,
                        format!("relation: {}", Error::NonAugmentedGenerator(r.clone())),
                    );
                }
                relations.push(p);
            }
        }
        let mut group_likes = BTreeMap::new();
        for (name, kind) in &self.group_likes {
            if let Some(z) = letter(&mut loc, name, "group_likes") {
                group_likes.insert(z, *kind);
            }
        }
        let mut inverses = BTreeMap::new();
        for (name, text) in &self.inverse_witnesses {
            if let (Some(z), Some(c)) = (
                letter(&mut loc, name, "inverse_witnesses"),
                poly(&mut loc, text, "inverse witness"),
            ) {
                inverses.insert(z, c);
            }
        }
        if let Some(model) = &self.model {
            if let Err(e) = ModelAlgebra::new(model, &alphabet, field) {
                loc.report("model", 1, format!("model: {e}"));
            }
        }
        if !loc.diagnostics.is_empty() {
            return Err(loc.diagnostics);
        }
        HopfPresentation::new(
            alphabet,
            field,
            spec,
            relations,
            group_likes,
            inverses,
            self.bounds(),
        )
        .map_err(|e| {
            let msg = e.to_string();
            loc.error(quoted_name(&msg).unwrap_or(""), "presentation", &e);
            loc.diagnostics
        })
    }
}

/// Parses and validates a presentation file.
pub fn parse_presentation(text: &str) -> Result<HopfPresentation, Vec<Diagnostic>> {
    PresentationFile::from_json(text)?.to_presentation(text)
}

/// Evaluates free-algebra elements in a [`ModelSection`].
#[derive(Clone, Debug)]
pub struct ModelAlgebra {
    field: Field,
    dim: usize,
    images: BTreeMap<LetterId, Vec<Scalar>>,
    products: Vec<Vec<Vec<Scalar>>>,
}

impl ModelAlgebra {
    pub fn new(model: &ModelSection, alphabet: &Alphabet, field: Field) -> Result<Self, Error> {
        let dim = model.basis.len();
        let bad = |m: String| Error::Presentation(m);
        let vector = |v: &[String]| -> Result<Vec<Scalar>, Error> {
            if v.len() != dim {
                return Err(bad(format!(
                    "vector of length {} in a {dim}-dimensional model",
                    v.len()
                )));
            }
            v.iter().map(|s| field.parse_scalar(s)).collect()
        };
        if dim == 0 {
            return Err(bad("empty model basis".into()));
        }
        let mut images = BTreeMap::new();
        for l in alphabet.letters() {
            let v = model
                .letter_images
                .get(&l.name)
                .ok_or_else(|| bad(format!("no image for letter `{}`", l.name)))?;
            images.insert(l.id, vector(v)?);
        }
        for name in model.letter_images.keys() {
            alphabet.id(name)?;
        }
        if model.products.len() != dim || model.products.iter().any(|r| r.len() != dim) {
            return Err(bad(format!("products must be a {dim}×{dim} table")));
        }
        let products = model
            .products
            .iter()
            .map(|row| row.iter().map(|v| vector(v)).collect())
            .collect::<Result<Vec<Vec<Vec<Scalar>>>, Error>>()?;
        Ok(ModelAlgebra {
            field,
            dim,
            images,
            products,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[0] = self.field.one();
        v
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.products[i][j].iter().enumerate() {
                    out[k] = &out[k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn word(&self, w: &Word) -> Vec<Scalar> {
        w.letters()
            .iter()
            .fold(self.unit(), |acc, a| self.multiply(&acc, &self.images[a]))
    }

    pub fn evaluate(&self, p: &Polynomial) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (w, c) in p.terms() {
            for (k, x) in self.word(w).iter().enumerate() {
                out[k] = &out[k] + &(c * x);
            }
        }
        out
    }

    /// Rank of a family of model vectors (exact Gaussian elimination).
    pub fn rank(&self, vectors: &[Vec<Scalar>]) -> usize {
        let mut rows: Vec<Vec<Scalar>> = vectors.to_vec();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].inverse().expect("non-zero pivot");
            let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse() {
        for (name, text) in fixtures::ALL {
            let h = parse_presentation(text).unwrap_or_else(|d| panic!("{name}: {d:?}"));
            assert!(!h.alphabet.is_empty(), "{name}");
        }
        let h = parse_presentation(fixtures::EXAMPLE_3_2).unwrap();
        assert_eq!(h.alphabet.len(), 2);
        assert_eq!(h.ideal.generators().len(), 1);
        let m = parse_presentation(fixtures::MIRROR_PAIR).unwrap();
        let rels: Vec<String> = m
            .ideal
            .generators()
            .iter()
            .map(|g| g.display(&m.alphabet).to_string())
            .collect();
        assert_eq!(rels, ["x x* - x* - x", "x* x - x* - x"]);
    }

    #[test]
    fn round_trip() {
        for (name, text) in fixtures::ALL {
            let f = PresentationFile::from_json(text).unwrap();
            let again = PresentationFile::from_json(&f.to_json()).unwrap();
            assert_eq!(f, again, "{name}");
            assert_eq!(f.to_json(), again.to_json(), "{name}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{ "letters": [ { "name": "x", "degree": 0, "rank": 0 } ], "extra": 1 }"#;
        let d = parse_presentation(text).unwrap_err();
        assert!(d[0].message.contains("unknown field"), "{d:?}");
    }

    #[test]
    fn tail_violation_is_located() {
        let text = r#"{
  "letters": [
    { "name": "x", "degree": 1, "rank": 0 },
    { "name": "y", "degree": 2, "rank": 0 }
  ],
  "coproduct": {
    "x": { "group_part": "unit", "tail": [ { "left": "y", "right": "y" } ] },
    "y": { "group_part": "unit" }
  }
}"#;
        let d = parse_presentation(text).unwrap_err();
        assert!(
            d.iter().any(|d| d.message.contains("x″ ≺ x fails")),
            "{d:?}"
        );
        assert!(d.iter().all(|d| d.line > 1), "{d:?}");
    }

    #[test]
    fn polynomial_errors_point_into_the_string() {
        let text = "{\n  \"letters\": [ { \"name\": \"x\", \"degree\": 1, \"rank\": 0 } ],\n  \"relations\": [ \"x - q\" ]\n}";
        let d = parse_presentation(text).unwrap_err();
        assert_eq!((d[0].line, d[0].column), (3, 23), "{d:?}");
        let dup = r#"{ "letters": [ { "name": "x", "degree": 0, "rank": 0 }, { "name": "x", "degree": 1, "rank": 0 } ] }"#;
        let d = parse_presentation(dup).unwrap_err();
        assert!(d[0].message.contains("duplicate letter"), "{d:?}");
        let syntax = "{ \"letters\": [ }";
        let d = parse_presentation(syntax).unwrap_err();
        assert_eq!(d[0].line, 1);
    }

    #[test]
    fn model_oracle_for_sweedler() {
        let f = PresentationFile::from_json(fixtures::AUGMENTED_SWEEDLER).unwrap();
        let h = f.to_presentation(fixtures::AUGMENTED_SWEEDLER).unwrap();
        let m = ModelAlgebra::new(f.model.as_ref().unwrap(), &h.alphabet, h.field).unwrap();
        for g in h.ideal.generators() {
            assert!(
                m.evaluate(g).iter().all(Scalar::is_zero),
                "{}",
                g.display(&h.alphabet)
            );
        }
    }
}
