use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape (M={parties}, N={local_dim}): {reason}")]
    InvalidShape {
        parties: usize,
        local_dim: usize,
        reason: &'static str,
    },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("density matrix has negative eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("factor {party} is not unitary (max deviation {deviation:e})")]
    NotUnitary { party: usize, deviation: f64 },
    #[error("eigenvectors are not orthogonal (|<E1|E2>| = {overlap:e})")]
    NotOrthogonal { overlap: f64 },
    #[error("weight p = {0} is outside (0, 1)")]
    InvalidWeight(f64),
    #[error("density matrix is not rank two (numerical rank {rank}; eigenvalues {leading:?})")]
    NotRankTwo { rank: usize, leading: Vec<f64> },
    #[error("state is not a product state (reconstruction residual {residual:e})")]
    NotSeparable { residual: f64 },
    #[error("real branch requires real amplitudes (max |im| = {max_imag:e})")]
    ComplexInput { max_imag: f64 },
    #[error("roots reproduce p = {recomputed}, but the state has p = {expected}")]
    InconsistentRoots { expected: f64, recomputed: String },
    #[error("E1 is not orthogonal to the GHZ vector (|<GHZ|E1>| = {overlap:e})")]
    NotOrthogonalToGhz { overlap: f64 },
    #[error("invalid tolerance `{name}` = {value}")]
    InvalidTolerance { name: String, value: f64 },
    #[error("E2 is separable (concurrence {concurrence:e}); ratio undefined")]
    E2Separable { concurrence: f64 },
}
