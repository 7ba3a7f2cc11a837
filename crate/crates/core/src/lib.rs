//! Invertible substitutions over the three-letter alphabet `{a, b, c}`.
//!
//! * [`word`]: reduced words in the free group and free monoid.
//! * [`endo`]: endomorphisms, substitutions, generators, substitution matrices.
//! * [`nielsen`]: invertibility and inverses by Nielsen cancellation.
//! * [`decompose`]: `σ = I_W ∘ g₁ ∘ … ∘ g_k` with permutation and Fibonacci factors.
//! * [`enumerate`]: exhaustive enumeration of simple and invertible substitutions.
//! * [`factor`]: factorization of matrices into non-negative elementary matrices.

pub mod decompose;
pub mod endo;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod matrix;
pub mod nielsen;
pub mod word;

pub use decompose::{decompose, is_simple, Decomposition, Factor};
pub use endo::{BasicGenerator, Endomorphism, Fib, GeneratorId, Permutation, Side, Substitution};
pub use error::{Error, Result};
pub use factor::{factor_elementary, ElementaryFactor};
pub use matrix::Matrix3;
pub use nielsen::{NielsenEngine, NielsenWitness};
pub use word::{Letter, Sign, SignedLetter, Word};

/// Substitution matrices: letter counts are exact machine integers.
pub type SubstitutionMatrix = Matrix3<i64>;
/// Wide variant for long products.
pub type WideMatrix = Matrix3<i128>;
