//! Exact computer algebra for the generalized Heisenberg-Virasoro algebra and
//! the Drinfel'd twist quantization of its centerless quotient.
//!
//! * [`algebra`]: generators and structure constants.
//! * [`enveloping`]: PBW normal forms, tensor powers, `Δ₀`, `S₀`, `ε`.
//! * [`quantization`]: factorial elements, the twist `𝓕`, `u`, `v`, and the
//!   deformed coproduct and antipode.
//! * [`verifier`]: a registry of named identity checks producing a report.

pub mod algebra;
pub mod combination;
pub mod enveloping;
pub mod error;
pub mod quantization;
pub mod render;
pub mod scalar;
pub mod series;
pub mod verifier;

pub use algebra::{AlgebraMode, BracketTable, Generator, StandardBracket};
pub use combination::{leg_embed, tensor2, tensor3, flip, Basis, Combination, Element, Monomial, Tensor2, Tensor3};
pub use enveloping::Algebra;
pub use error::{AlgebraError, Result};
pub use quantization::{QParams, Quantizer};
pub use scalar::{gen_binomial, GroupElement, Scalar};
pub use series::{ElementSeries, Series, Tensor2Series, Tensor3Series};
