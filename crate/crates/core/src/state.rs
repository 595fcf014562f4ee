//! Dense pure states and local unitary transformations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::shape::{Bipartition, MultiIndex, PartyShape};

/// A normalized pure state `Σ a_{i_1…i_M} e_{i_1}⊗…⊗e_{i_M}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    shape: PartyShape,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Validates length, finiteness and `|‖ψ‖² − 1| ≤ norm_tol`.
    pub fn new(shape: PartyShape, amps: Vec<Complex64>, norm_tol: f64) -> Result<Self> {
        check_amplitudes(&shape, &amps)?;
        let norm_sqr = norm_sqr(&amps);
        if (norm_sqr - 1.0).abs() > norm_tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(PureState { shape, amps })
    }

    /// Rescales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(shape: PartyShape, mut amps: Vec<Complex64>) -> Result<Self> {
        check_amplitudes(&shape, &amps)?;
        let norm_sqr = norm_sqr(&amps);
        if norm_sqr.is_nan() || norm_sqr <= 0.0 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let scale = norm_sqr.sqrt().recip();
        amps.iter_mut().for_each(|a| *a *= scale);
        Ok(PureState { shape, amps })
    }

    /// Computational basis state `|i_0 i_1 … i_{M−1}⟩`.
    pub fn basis(shape: PartyShape, digits: &[usize]) -> Result<Self> {
        let index = MultiIndex::new(&shape, digits.to_vec())?;
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
        amps[shape.flat_index(&index)] = Complex64::new(1.0, 0.0);
        Ok(PureState { shape, amps })
    }

    /// `(1/√N) Σ_i e_i⊗…⊗e_i`.
    pub fn ghz(shape: PartyShape) -> Self {
        let n = shape.local_dim();
        let weight = Complex64::new((n as f64).sqrt().recip(), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
        for i in 0..n {
            let index = MultiIndex(vec![i; shape.parties()]);
            amps[shape.flat_index(&index)] = weight;
        }
        PureState { shape, amps }
    }

    /// Normalized tensor product of one vector per party.
    pub fn product(shape: PartyShape, factors: &[Vec<Complex64>]) -> Result<Self> {
        PureState::normalized(shape, tensor_product(&shape, factors)?)
    }

    pub fn shape(&self) -> PartyShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amplitude(&self, index: &MultiIndex) -> Complex64 {
        self.amps[self.shape.flat_index(index)]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        ensure_same_shape(self.shape, other.shape)?;
        Ok(inner(&self.amps, &other.amps))
    }

    /// Largest `|im|` over the amplitudes.
    pub fn max_imag(&self) -> f64 {
        self.amps.iter().map(|a| a.im.abs()).fold(0.0, f64::max)
    }

    /// View the amplitudes as an `N^|T| × N^|S|` matrix.
    pub fn matricize(&self, cut: &Bipartition) -> Result<DMatrix<Complex64>> {
        let layout = cut.layout(&self.shape)?;
        Ok(DMatrix::from_fn(layout.rows, layout.cols, |r, c| {
            self.amps[layout.merge(r, c)]
        }))
    }

    /// Inverse of [`PureState::matricize`]. The matrix must already be normalized.
    pub fn from_matricized(
        shape: PartyShape,
        cut: &Bipartition,
        matrix: &DMatrix<Complex64>,
        norm_tol: f64,
    ) -> Result<Self> {
        let layout = cut.layout(&shape)?;
        if matrix.nrows() != layout.rows || matrix.ncols() != layout.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", layout.rows, layout.cols),
                found: format!("{}x{}", matrix.nrows(), matrix.ncols()),
            });
        }
        let amps = (0..shape.dim())
            .map(|flat| {
                let (r, c) = layout.split(flat);
                matrix[(r, c)]
            })
            .collect();
        PureState::new(shape, amps, norm_tol)
    }

    pub fn apply_local_unitary(&self, u: &LocalUnitary) -> Result<PureState> {
        ensure_same_shape(self.shape, u.shape)?;
        let mut amps = self.amps.clone();
        for (party, factor) in u.factors.iter().enumerate() {
            amps = apply_single_party(&self.shape, party, factor, &amps);
        }
        Ok(PureState {
            shape: self.shape,
            amps,
        })
    }
}

/// `⟨a|b⟩` for two states of the same shape.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.inner(b)
}

/// `U_1 ⊗ … ⊗ U_M`, with `U e_i = Σ_j U[j, i] e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    shape: PartyShape,
    factors: Vec<DMatrix<Complex64>>,
}

impl LocalUnitary {
    pub fn new(shape: PartyShape, factors: Vec<DMatrix<Complex64>>, tol: f64) -> Result<Self> {
        if factors.len() != shape.parties() {
            return Err(Error::LengthMismatch {
                expected: shape.parties(),
                found: factors.len(),
            });
        }
        let n = shape.local_dim();
        for (party, u) in factors.iter().enumerate() {
            if u.nrows() != n || u.ncols() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n}x{n} factor"),
                    found: format!("{}x{} at party {party}", u.nrows(), u.ncols()),
                });
            }
            let gram = u * u.adjoint();
            let deviation = (gram - DMatrix::<Complex64>::identity(n, n))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if deviation > tol {
                return Err(Error::NotUnitary { party, deviation });
            }
        }
        Ok(LocalUnitary { shape, factors })
    }

    pub fn identity(shape: PartyShape) -> Self {
        let n = shape.local_dim();
        LocalUnitary {
            shape,
            factors: vec![DMatrix::identity(n, n); shape.parties()],
        }
    }

    pub fn shape(&self) -> PartyShape {
        self.shape
    }

    pub fn factors(&self) -> &[DMatrix<Complex64>] {
        &self.factors
    }

    /// Factorwise product `after · self`: applying the result equals applying
    /// `self` first and `after` second.
    pub fn then(&self, after: &LocalUnitary) -> Result<LocalUnitary> {
        ensure_same_shape(self.shape, after.shape)?;
        Ok(LocalUnitary {
            shape: self.shape,
            factors: self
                .factors
                .iter()
                .zip(&after.factors)
                .map(|(first, second)| second * first)
                .collect(),
        })
    }
}

fn apply_single_party(
    shape: &PartyShape,
    party: usize,
    u: &DMatrix<Complex64>,
    amps: &[Complex64],
) -> Vec<Complex64> {
    let n = shape.local_dim();
    let stride = shape.stride(party);
    let block = stride * n;
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for outer in (0..amps.len()).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    acc += u[(j, i)] * amps[base + i * stride];
                }
                out[base + j * stride] = acc;
            }
        }
    }
    out
}

pub(crate) fn tensor_product(
    shape: &PartyShape,
    factors: &[Vec<Complex64>],
) -> Result<Vec<Complex64>> {
    if factors.len() != shape.parties() {
        return Err(Error::LengthMismatch {
            expected: shape.parties(),
            found: factors.len(),
        });
    }
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        if f.len() != shape.local_dim() {
            return Err(Error::LengthMismatch {
                expected: shape.local_dim(),
                found: f.len(),
            });
        }
        out = out
            .iter()
            .flat_map(|&a| f.iter().map(move |&b| a * b))
            .collect();
    }
    Ok(out)
}

pub(crate) fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn ensure_same_shape(a: PartyShape, b: PartyShape) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: a.to_string(),
            found: b.to_string(),
        })
    }
}

fn check_amplitudes(shape: &PartyShape, amps: &[Complex64]) -> Result<()> {
    if amps.len() != shape.dim() {
        return Err(Error::LengthMismatch {
            expected: shape.dim(),
            found: amps.len(),
        });
    }
    if let Some(pos) = amps
        .iter()
        .position(|a| !(a.re.is_finite() && a.im.is_finite()))
    {
        return Err(Error::NonFinite(pos));
    }
    Ok(())
}
