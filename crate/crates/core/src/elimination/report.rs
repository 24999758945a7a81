//! End-to-end check that the uncertified letters generate the algebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use log::{info, warn};
use serde::{Deserialize, Serialize};

use super::{express_letter_irreducible, Bounds, HopfPresentation};
use crate::alphabet::LetterId;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::reduction::echelon::{Echelon, SparseVec};
use crate::reduction::{check_delta_stabilizes_ideal, DeltaIdealStatus, TruncatedSpan};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub length: usize,
    pub slack: usize,
    pub not_found: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub letter: String,
    pub expression: String,
    /// `NF(x − expression) = 0` re-checked independently.
    pub verified: bool,
    /// Every letter of the expression is uncertified and below the letter.
    pub descends: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseCheck {
    pub letter: String,
    pub witness: Option<String>,
    /// `NF(c_z(1 − z) − 1) = 0`
    pub left_inverse: bool,
    /// `NF((1 − z)c_z − 1) = 0`
    pub right_inverse: bool,
    /// `o(m_{c_z}) ⪯ o(z)`
    pub order_control: bool,
}

impl InverseCheck {
    pub fn ok(&self) -> bool {
        self.witness.is_some() && self.left_inverse && self.right_inverse && self.order_control
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub status: String,
    pub bounds: Bounds,
    pub attempts: Vec<Attempt>,
    pub certified_reducible: Vec<String>,
    pub uncertified: Vec<String>,
    /// Number of uncertified original letters.
    pub uncertified_originals: usize,
    pub witnesses: Vec<WitnessEntry>,
    pub not_found: Vec<String>,
    pub generation_checked_words: usize,
    /// Words whose witness expansion is longer than the bound, so the span
    /// cannot decide them.
    pub generation_skipped_words: usize,
    /// Words whose normal form is outside the span of normal forms of
    /// monomials in uncertified letters.
    pub generation_failures: Vec<String>,
    pub inverse_checks: Vec<InverseCheck>,
    /// Mirrored letters or mirrors of non-zero degree.
    pub degree_zero_violations: Vec<String>,
    pub spec_violations: Vec<String>,
    pub delta_ideal: String,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| {
            if v.is_empty() {
                "(none)".to_string()
            } else {
                v.join(", ")
            }
        };
        let _ = writeln!(s, "status: {}", self.status);
        let _ = writeln!(
            s,
            "bounds: L = {}, S = {}, check_len = {}",
            self.bounds.length, self.bounds.slack, self.bounds.check_len
        );
        for a in &self.attempts {
            let _ = writeln!(
                s,
                "attempt L = {}, S = {}: not found {}",
                a.length,
                a.slack,
                list(&a.not_found)
            );
        }
        let _ = writeln!(
            s,
            "certified reducible: {}",
            list(&self.certified_reducible)
        );
        let _ = writeln!(s, "uncertified: {}", list(&self.uncertified));
        let _ = writeln!(s, "uncertified originals: {}", self.uncertified_originals);
        for w in &self.witnesses {
            let _ = writeln!(
                s,
                "witness {} = {} [{}{}]",
                w.letter,
                w.expression,
                if w.verified {
                    "verified"
                } else {
                    "NOT verified"
                },
                if w.descends { "" } else { ", does not descend" }
            );
        }
        let _ = writeln!(s, "not found: {}", list(&self.not_found));
        let _ = writeln!(
            s,
            "generation: {} words checked, {} beyond the bound, failures {}",
            self.generation_checked_words,
            self.generation_skipped_words,
            list(&self.generation_failures)
        );
        for c in &self.inverse_checks {
            let _ = writeln!(
                s,
                "inverse witness for {}: {} [left {}, right {}, order {}]",
                c.letter,
                c.witness.as_deref().unwrap_or("(missing)"),
                c.left_inverse,
                c.right_inverse,
                c.order_control
            );
        }
        let _ = writeln!(
            s,
            "degree-0 violations: {}",
            list(&self.degree_zero_violations)
        );
        let _ = writeln!(s, "spec violations: {}", list(&self.spec_violations));
        let _ = writeln!(s, "delta ideal: {}", self.delta_ideal);
        s
    }
}

/// Runs the full elimination and every structural check. If some letter
/// has no witness, retries once at `(L + 2, S + 1)`.
pub fn verify_generation(hopf: &HopfPresentation, bounds: &Bounds) -> Result<GenerationReport> {
    let mut attempts = Vec::new();
    let first = eliminate(hopf, bounds)?;
    attempts.push(first.attempt(bounds));
    let (bounds, state) = if first.not_found.is_empty() {
        (*bounds, first)
    } else {
        let wider = Bounds {
            length: bounds.length + 2,
            slack: bounds.slack + 1,
            check_len: bounds.check_len,
        };
        warn!(
            "no witness for {:?} at L = {}, S = {}; retrying at L = {}, S = {}",
            first.not_found, bounds.length, bounds.slack, wider.length, wider.slack
        );
        let second = eliminate(hopf, &wider)?;
        attempts.push(second.attempt(&wider));
        (wider, second)
    };
    for a in &attempts {
        info!(
            "attempt L = {}, S = {}: not found {:?}",
            a.length, a.slack, a.not_found
        );
    }
    finish(hopf, bounds, attempts, state)
}

struct Elimination {
    span: TruncatedSpan,
    /// Length of the longest word in each letter's expression in
    /// uncertified letters (1 for uncertified letters).
    expansion: BTreeMap<LetterId, usize>,
    witnesses: Vec<WitnessEntry>,
    not_found: Vec<String>,
}

impl Elimination {
    fn attempt(&self, b: &Bounds) -> Attempt {
        Attempt {
            length: b.length,
            slack: b.slack,
            not_found: self.not_found.clone(),
        }
    }
}

fn eliminate(hopf: &HopfPresentation, bounds: &Bounds) -> Result<Elimination> {
    let span = hopf.span(bounds)?;
    let alphabet = &hopf.alphabet;
    let (certified, uncertified) = span.letter_partition();
    let mut witnesses = Vec::new();
    let mut not_found = Vec::new();
    let mut expansion: BTreeMap<LetterId, usize> = uncertified.iter().map(|&a| (a, 1)).collect();
    for &x in &certified {
        match express_letter_irreducible(x, &span) {
            Ok(w) => {
                expansion.insert(x, w.expression.max_len());
                let descends = w
                    .expression
                    .letters()
                    .iter()
                    .all(|a| *a < x && uncertified.contains(a));
                witnesses.push(WitnessEntry {
                    letter: alphabet.name(x).to_string(),
                    expression: w.expression.display(alphabet).to_string(),
                    verified: super::verify_witness(&span, &w)?,
                    descends,
                });
            }
            Err(Error::NotFoundWithinBounds { letter, .. }) => not_found.push(letter),
            Err(e) => return Err(e),
        }
    }
    Ok(Elimination {
        span,
        expansion,
        witnesses,
        not_found,
    })
}

/// Normal forms of all words up to `check_len` lie in the span of normal
/// forms of monomials in uncertified letters up to the bound. Words whose
/// expansion through the witnesses exceeds the bound (or that contain a
/// letter without witness) are skipped: the truncated span cannot see
/// the monomials they would need.
fn generation_check(
    span: &TruncatedSpan,
    uncertified: &[LetterId],
    expansion: &BTreeMap<LetterId, usize>,
    check_len: usize,
) -> Result<(usize, usize, Vec<Word>)> {
    let field = span.field();
    let as_vec = |p: Polynomial| -> SparseVec<Word> {
        p.terms_ascending()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    };
    let mut echelon: Echelon<Word> = Echelon::new(field);
    echelon.insert_reduced(as_vec(Polynomial::one(field)));
    for m in super::monomials(uncertified, span.bound()) {
        echelon.insert_reduced(as_vec(span.normal_form(&Polynomial::word(field, m))?));
    }
    let words = span.alphabet().words_up_to(check_len.min(span.bound()));
    let mut failures = Vec::new();
    let mut skipped = 0;
    for w in &words {
        let expanded: Option<usize> = w.letters().iter().map(|a| expansion.get(a).copied()).sum();
        if expanded.is_none_or(|n| n > span.bound()) {
            skipped += 1;
            continue;
        }
        let mut v = as_vec(span.normal_form(&Polynomial::word(field, w.clone()))?);
        echelon.reduce_full(&mut v);
        if !v.is_empty() {
            failures.push(w.clone());
        }
    }
    Ok((words.len() - skipped, skipped, failures))
}

fn inverse_check(
    span: &TruncatedSpan,
    hopf: &HopfPresentation,
    z: LetterId,
) -> Result<InverseCheck> {
    let alphabet = &hopf.alphabet;
    let field = hopf.field;
    let name = alphabet.name(z).to_string();
    let Some(c) = hopf.inverse_witnesses.get(&z) else {
        return Ok(InverseCheck {
            letter: name,
            witness: None,
            left_inverse: false,
            right_inverse: false,
            order_control: false,
        });
    };
    let one = Polynomial::one(field);
    let g = &one - &Polynomial::letter(field, z);
    let vanishes = |p: Polynomial| -> Result<bool> {
        match span.contains(&p) {
            Ok(b) => Ok(b),
            Err(Error::BoundExceeded { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let order_control = match c.max_letter() {
        Ok(m) => m.original() <= z.original(),
        Err(_) => true,
    };
    Ok(InverseCheck {
        letter: name,
        witness: Some(c.display(alphabet).to_string()),
        left_inverse: vanishes(&(c * &g) - &one)?,
        right_inverse: vanishes(&(&g * c) - &one)?,
        order_control,
    })
}

fn finish(
    hopf: &HopfPresentation,
    bounds: Bounds,
    attempts: Vec<Attempt>,
    state: Elimination,
) -> Result<GenerationReport> {
    let alphabet = &hopf.alphabet;
    let span = &state.span;
    let names = |ids: &[LetterId]| -> Vec<String> {
        ids.iter().map(|&a| alphabet.name(a).to_string()).collect()
    };
    let (certified, uncertified) = span.letter_partition();
    let uncertified_originals = uncertified.iter().filter(|a| !a.is_mirror()).count();

    let (checked, skipped, failures) =
        generation_check(span, &uncertified, &state.expansion, bounds.check_len)?;
    let inverse_checks = alphabet
        .degree_zero()
        .map(|l| inverse_check(span, hopf, l.id))
        .collect::<Result<Vec<_>>>()?;
    let degree_zero_violations: Vec<String> = alphabet
        .mirrored()
        .chain(alphabet.mirrors())
        .filter(|l| l.degree != 0)
        .map(|l| format!("{} has degree {}", l.name, l.degree))
        .collect();
    let spec_violations = hopf.coproduct.validate(alphabet)?;
    let delta = check_delta_stabilizes_ideal(span, &hopf.coproduct, bounds.check_len)?;
    let delta_ok = !matches!(delta, DeltaIdealStatus::Fails { .. });
    let delta_ideal = match delta {
        DeltaIdealStatus::Holds => "holds".to_string(),
        DeltaIdealStatus::Fails { witness } => format!("fails for {}", witness.display(alphabet)),
        DeltaIdealStatus::Inconclusive { element } => {
            format!(
                "inconclusive (terms of Δ({}) exceed L)",
                element.display(alphabet)
            )
        }
    };

    let pass = state.not_found.is_empty()
        && state.witnesses.iter().all(|w| w.verified && w.descends)
        && failures.is_empty()
        && inverse_checks.iter().all(InverseCheck::ok)
        && degree_zero_violations.is_empty()
        && spec_violations.is_empty()
        && delta_ok;
    Ok(GenerationReport {
        status: if pass { "PASS" } else { "FAIL" }.to_string(),
        bounds,
        attempts,
        certified_reducible: names(&certified),
        uncertified: names(&uncertified),
        uncertified_originals,
        witnesses: state.witnesses,
        not_found: state.not_found,
        generation_checked_words: checked,
        generation_skipped_words: skipped,
        generation_failures: failures
            .iter()
            .map(|w| w.display(alphabet).to_string())
            .collect(),
        inverse_checks,
        degree_zero_violations,
        spec_violations,
        delta_ideal,
    })
}
