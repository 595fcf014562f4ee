//! Separability of rank-two mixed states on `M` parties of local dimension `N`.
//!
//! The crate is organized bottom-up:
//!
//! - [`shape`]: party shapes, multi-indices and the canonical bipartitions.
//! - [`state`]: dense pure states, local unitaries and matricization.
//! - [`density`]: density matrices, the Hermitian eigensolver and rank-two
//!   extraction.
//! - [`concurrence`]: local-unitary invariants, the generalized concurrence
//!   `C_N^M`, pure-state separability and product factorization.
//! - [`system`]: the quadratic equation set `αλ² + βλ + γ = 0` whose common
//!   roots mark product vectors `|E1⟩ + λ|E2⟩` in the range of a rank-two state.
//! - [`criterion`]: the real and complex separability decisions and the
//!   explicit product-state decomposition.
//! - [`oracle`]: criterion-free checks (matricization rank, partial transpose,
//!   reconstruction).
//! - [`random`]: seeded samplers for states, unitaries and test mixtures.
//!
//! Amplitudes are stored row-major over the multi-index with party 0 varying
//! slowest.

pub mod concurrence;
pub mod criterion;
pub mod density;
pub mod error;
pub mod oracle;
pub mod random;
pub mod shape;
pub mod state;
pub mod system;
pub mod tolerance;

pub use num_complex::Complex64;

pub use concurrence::{
    concurrence, factorize, invariants, is_pure_separable, InvariantSet, ProductFactorization,
};
pub use criterion::{
    concurrence_ratio, construct_decomposition, corollary_bound_check, decide, decide_real,
    Decision, Decomposition, FailedCheck, RootPair, SeparabilityVerdict, WeightedPair, Witness,
};
pub use density::{rank_two_extract, DensityMatrix, RankTwoState};
pub use error::{Error, Result};
pub use oracle::{partial_transpose, ppt_check, pure_product_oracle, reconstruct, PptReport};
pub use shape::{Bipartition, CutLayout, MultiIndex, PartyShape};
pub use state::{LocalUnitary, PureState};
pub use system::{build_system, solve_quadratic, QuadraticEntry, QuadraticSystem};
pub use tolerance::Tolerances;
