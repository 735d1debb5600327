//! Exact combinatorics of finite root systems, their Weyl groups and the
//! affine dot action, with the truncation posets Λ_m ⊆ Y and Γ_m ⊆ (W_p·0)⁺
//! and exhaustive checks of their properties.
//!
//! Weights are integer vectors in the basis of fundamental weights, so
//! `coords[i] = <x, α_i^∨>`. Simple roots follow Bourbaki numbering,
//! zero-based.
//!
//! ```
//! use std::sync::Arc;
//! use weyltrunc_core::{AffineContext, RootSystem, RootSystemSpec, TruncationPair};
//!
//! let rs = RootSystem::build(RootSystemSpec::parse("A", 1)?)?;
//! let ctx = AffineContext::new(Arc::new(rs), 5)?;
//! let pair = TruncationPair::build(&ctx, 2)?;
//! assert_eq!((pair.lambda.len(), pair.lambda_py().len(), pair.gamma.len()), (11, 3, 3));
//! # Ok::<(), weyltrunc_core::Error>(())
//! ```

pub mod affine;
pub mod error;
pub mod export;
pub mod limits;
pub mod orders;
pub mod relation;
pub mod root_data;
pub mod truncate;
pub mod verify;
pub mod weight;
pub mod weyl;

pub use affine::{is_prime, AffineContext, AffineElement, PRegime};
pub use error::{Error, Result};
pub use limits::Limits;
pub use orders::{ExcellentReading, OrderKind, OrderTag};
pub use relation::{relation_on, Relation};
pub use root_data::{OrbitEnd, PositiveRoot, RootSystem, RootSystemSpec, TypeLetter};
pub use truncate::{BackwardWitness, TruncationPair};
pub use verify::{Universe, VerificationReport};
pub use weight::{BoxIter, Weight, WeightSet};
pub use weyl::WeylElement;
