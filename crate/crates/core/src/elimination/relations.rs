//! Relations forced by group-like letters.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, LetterId};
use crate::error::{Error, Result};
use crate::polynomial::{Field, Polynomial};

/// How the group-like element `1 − z` is constrained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupLikeKind {
    /// `(1 − z)ⁿ = 1`.
    FiniteOrder(u32),
    /// `(1 − z)(1 − z*) = (1 − z*)(1 − z) = 1`.
    Mirror,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeRelations {
    pub relations: Vec<Polynomial>,
    /// Inverse witnesses `c` with `c(1 − z) ≡ (1 − z)c ≡ 1`.
    pub inverse_witnesses: Vec<(LetterId, Polynomial)>,
}

fn monic(p: Polynomial) -> Polynomial {
    match p.leading_term() {
        Ok((_, c)) if !c.is_one() => {
            let inv = c.inverse().expect("non-zero lead");
            p.scale(&inv)
        }
        _ => p,
    }
}

/// Generators and inverse witnesses for a degree-zero letter `z`.
///
/// `FiniteOrder(n)` gives the monic form of `(1 − z)ⁿ − 1` with
/// `c_z = (1 − z)ⁿ⁻¹`; `Mirror` gives `zz* − z − z*`, `z*z − z − z*` with
/// `c_z = 1 − z*` and `c_{z*} = 1 − z`.
pub fn build_group_like_relations(
    alphabet: &Alphabet,
    field: Field,
    z: LetterId,
    kind: GroupLikeKind,
) -> Result<GroupLikeRelations> {
    let letter = alphabet.letter(z)?;
    if letter.degree != 0 {
        return Err(Error::Precondition(format!(
            "group-like letter `{}` must have degree 0",
            letter.name
        )));
    }
    let one = Polynomial::one(field);
    let zp = Polynomial::letter(field, z);
    let g = &one - &zp;
    match kind {
        GroupLikeKind::FiniteOrder(0) => Err(Error::Precondition(format!(
            "finite order of `{}` must be at least 1",
            letter.name
        ))),
        GroupLikeKind::FiniteOrder(n) => Ok(GroupLikeRelations {
            relations: vec![monic(&g.pow(n) - &one)],
            inverse_witnesses: vec![(z, g.pow(n - 1))],
        }),
        GroupLikeKind::Mirror => {
            let partner = match (letter.is_original(), letter.partner) {
                (true, Some(p)) => p,
                _ => {
                    return Err(Error::Precondition(format!(
                        "`{}` has no mirror partner",
                        letter.name
                    )))
                }
            };
            let zs = Polynomial::letter(field, partner);
            let both = &zp + &zs;
            Ok(GroupLikeRelations {
                relations: vec![&(&zp * &zs) - &both, &(&zs * &zp) - &both],
                inverse_witnesses: vec![(z, &one - &zs), (partner, g)],
            })
        }
    }
}
