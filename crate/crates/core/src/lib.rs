//! Reduction order on words, truncated normal forms modulo two-sided ideals,
//! and elimination of reducible letters in presented bialgebras.

pub mod alphabet;
pub mod coproduct;
pub mod elimination;
pub mod error;
pub mod frontend;
pub mod polynomial;
pub mod reduction;
pub mod words;

pub use alphabet::{Alphabet, LetterId, LetterSpec};
pub use coproduct::CoproductSpec;
pub use elimination::{Bounds, HopfPresentation};
pub use error::{Error, Result};
pub use polynomial::{Field, Polynomial, Scalar, TensorPolynomial};
pub use reduction::{IdealPresentation, ReducibilityAnswer, TruncatedSpan};
pub use words::Word;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/order.md")]
    mod order {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/spans.md")]
    mod spans {}
    #[doc = include_str!("../../../book/src/coproducts.md")]
    mod coproducts {}
    #[doc = include_str!("../../../book/src/elimination.md")]
    mod elimination {}
    #[doc = include_str!("../../../book/src/frontend.md")]
    mod frontend {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
}
