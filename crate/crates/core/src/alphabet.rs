//! Well-ordered finite alphabets `X = O ∪ D*`.
//!
//! Every letter is either an *original* or the *mirror* `x*` of an original
//! `x`. Originals are ordered by `(degree, rank)`; a mirror sits immediately
//! after its partner. A [`LetterId`] encodes the position of the letter's
//! original in that order together with a mirror bit, so comparing two ids of
//! the same alphabet is exactly the letter order `≺`, and `o(a)` is a bit mask.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2 * (index of the original) + (1 if mirror)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub(crate) u32);

impl LetterId {
    /// The original letter `o(a)`.
    pub fn original(self) -> LetterId {
        LetterId(self.0 & !1)
    }

    pub fn is_mirror(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterKind {
    Original,
    Mirror,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub id: LetterId,
    pub name: String,
    pub kind: LetterKind,
    /// The degree map `t`.
    pub degree: u32,
    /// Position inside the degree class; mirrors inherit the partner's rank.
    pub rank: u32,
    pub partner: Option<LetterId>,
}

impl Letter {
    pub fn is_original(&self) -> bool {
        self.kind == LetterKind::Original
    }
}

/// Declaration of a single letter, as found in presentation files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror_of: Option<String>,
}

impl LetterSpec {
    pub fn original(name: &str, degree: u32, rank: u32) -> Self {
        LetterSpec {
            name: name.to_string(),
            degree: Some(degree),
            rank: Some(rank),
            mirror_of: None,
        }
    }

    pub fn mirror(of: &str) -> Self {
        LetterSpec {
            name: format!("{of}*"),
            degree: None,
            rank: None,
            mirror_of: Some(of.to_string()),
        }
    }
}

/// An immutable, finite, well-ordered alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<Letter>,
    by_name: HashMap<String, LetterId>,
    /// letter code -> position in `letters`
    slot: Vec<u32>,
}

pub(crate) fn valid_base_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Alphabet {
    /// Builds an alphabet from letter declarations.
    ///
    /// Originals need an explicit degree and rank, and no two originals may
    /// share both. A mirror is named `<partner>*`; its degree (if given) must
    /// equal the partner's.
    pub fn new(specs: &[LetterSpec]) -> Result<Self> {
        let bad = |msg: String| Error::InvalidAlphabet(msg);
        if specs.is_empty() {
            return Err(bad("an alphabet needs at least one letter".into()));
        }
        let mut originals: HashMap<&str, (u32, u32)> = HashMap::new();
        let mut seen = HashMap::new();
        for s in specs {
            if seen.insert(s.name.as_str(), ()).is_some() {
                return Err(bad(format!("duplicate letter `{}`", s.name)));
            }
            if s.mirror_of.is_none() {
                if !valid_base_name(&s.name) {
                    return Err(bad(format!("`{}` is not a valid letter name", s.name)));
                }
                let degree = s
                    .degree
                    .ok_or_else(|| bad(format!("letter `{}` has no degree", s.name)))?;
                let rank = s
                    .rank
                    .ok_or_else(|| bad(format!("letter `{}` has no rank", s.name)))?;
                if let Some((other, _)) = originals.iter().find(|(_, &v)| v == (degree, rank)) {
                    return Err(bad(format!(
                        "letters `{other}` and `{}` tie at degree {degree}, rank {rank}",
                        s.name
                    )));
                }
                originals.insert(&s.name, (degree, rank));
            }
        }

        let mut mirrored: HashMap<&str, ()> = HashMap::new();
        // (degree, rank, is_mirror, spec index)
        let mut keyed = Vec::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            match &s.mirror_of {
                None => {
                    let (d, r) = originals[s.name.as_str()];
                    keyed.push((d, r, false, i));
                }
                Some(of) => {
                    let &(d, r) = originals.get(of.as_str()).ok_or_else(|| {
                        bad(format!("`{}` mirrors unknown original `{of}`", s.name))
                    })?;
                    if s.name != format!("{of}*") {
                        return Err(bad(format!("mirror of `{of}` must be named `{of}*`")));
                    }
                    if mirrored.insert(of.as_str(), ()).is_some() {
                        return Err(bad(format!("`{of}` has more than one mirror")));
                    }
                    if s.degree.is_some_and(|sd| sd != d) {
                        return Err(bad(format!(
                            "mirror `{}` must have the degree of `{of}` ({d})",
                            s.name
                        )));
                    }
                    if s.rank.is_some_and(|sr| sr != r) {
                        return Err(bad(format!(
                            "mirror `{}` inherits the rank of `{of}`",
                            s.name
                        )));
                    }
                    keyed.push((d, r, true, i));
                }
            }
        }
        keyed.sort();

        let mut by_name = HashMap::new();
        let mut next_original = 0u32;
        let mut codes = Vec::with_capacity(keyed.len());
        for &(_, _, is_mirror, i) in &keyed {
            let code = if is_mirror {
                by_name[specs[i].mirror_of.as_deref().unwrap()] + 1
            } else {
                next_original += 1;
                2 * (next_original - 1)
            };
            by_name.insert(specs[i].name.clone(), code);
            codes.push(code);
        }
        let by_name: HashMap<String, LetterId> =
            by_name.into_iter().map(|(k, v)| (k, LetterId(v))).collect();

        let mut slot = vec![u32::MAX; 2 * next_original as usize];
        let mut letters = Vec::with_capacity(keyed.len());
        for (pos, (&(degree, rank, is_mirror, i), &code)) in keyed.iter().zip(&codes).enumerate() {
            let s = &specs[i];
            let id = LetterId(code);
            let (kind, partner) = if is_mirror {
                (LetterKind::Mirror, Some(id.original()))
            } else {
                let p = by_name.get(&format!("{}*", s.name)).copied();
                (LetterKind::Original, p)
            };
            slot[code as usize] = pos as u32;
            letters.push(Letter {
                id,
                name: s.name.clone(),
                kind,
                degree,
                rank,
                partner,
            });
        }
        Ok(Alphabet {
            letters,
            by_name,
            slot,
        })
    }

    /// Quick alphabet from names in increasing order, all of degree 0.
    /// A name `x*` declares the mirror of `x`, which must appear earlier.
    pub fn from_names(names: &[&str]) -> Result<Self> {
        let mut specs = Vec::new();
        let mut rank = 0;
        for n in names {
            if let Some(base) = n.strip_suffix('*') {
                specs.push(LetterSpec::mirror(base));
            } else {
                specs.push(LetterSpec::original(n, 0, rank));
                rank += 1;
            }
        }
        Alphabet::new(&specs)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn ids(&self) -> impl Iterator<Item = LetterId> + '_ {
        self.letters.iter().map(|l| l.id)
    }

    pub fn letter(&self, id: LetterId) -> Result<&Letter> {
        match self.slot.get(id.0 as usize) {
            Some(&pos) if pos != u32::MAX => Ok(&self.letters[pos as usize]),
            _ => Err(Error::DomainMismatch(id.0)),
        }
    }

    pub fn id(&self, name: &str) -> Result<LetterId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Panics if `id` is not a letter of this alphabet.
    pub fn name(&self, id: LetterId) -> &str {
        &self.letter(id).expect("letter of this alphabet").name
    }

    /// Panics if `id` is not a letter of this alphabet.
    pub fn degree(&self, id: LetterId) -> u32 {
        self.letter(id).expect("letter of this alphabet").degree
    }

    pub fn contains(&self, id: LetterId) -> bool {
        self.letter(id).is_ok()
    }

    /// `o(a)`: the letter itself for originals, the partner for mirrors.
    pub fn original_of(&self, a: LetterId) -> Result<LetterId> {
        self.letter(a).map(|l| l.id.original())
    }

    /// The letter order `≺`.
    pub fn compare_letters(&self, a: LetterId, b: LetterId) -> Result<Ordering> {
        self.letter(a)?;
        self.letter(b)?;
        Ok(a.cmp(&b))
    }

    pub fn originals(&self) -> impl Iterator<Item = &Letter> {
        self.letters.iter().filter(|l| l.is_original())
    }

    /// Originals that have a mirror partner (the set `D`).
    pub fn mirrored(&self) -> impl Iterator<Item = &Letter> {
        self.letters
            .iter()
            .filter(|l| l.is_original() && l.partner.is_some())
    }

    pub fn mirrors(&self) -> impl Iterator<Item = &Letter> {
        self.letters.iter().filter(|l| !l.is_original())
    }

    /// Letters of degree zero (`X₀`).
    pub fn degree_zero(&self) -> impl Iterator<Item = &Letter> {
        self.letters.iter().filter(|l| l.degree == 0)
    }

    /// Letter declarations that rebuild this alphabet.
    pub fn specs(&self) -> Vec<LetterSpec> {
        self.letters
            .iter()
            .map(|l| match l.kind {
                LetterKind::Original => LetterSpec::original(&l.name, l.degree, l.rank),
                LetterKind::Mirror => LetterSpec::mirror(self.name(l.partner.unwrap())),
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.letters.iter().map(|l| l.name.as_str()).collect();
        write!(f, "{}", names.join(" < "))
    }
}
