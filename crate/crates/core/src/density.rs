//! Density matrices, the Hermitian eigensolver and rank-two extraction.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::shape::PartyShape;
use crate::state::{ensure_same_shape, PureState};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    shape: PartyShape,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Checks dimensions, Hermiticity (`herm`) and unit trace (`norm`).
    /// Positivity is checked where the spectrum is computed anyway.
    pub fn new(shape: PartyShape, entries: DMatrix<Complex64>, tol: &Tolerances) -> Result<Self> {
        let d = shape.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::ShapeMismatch {
                expected: format!("{d}x{d}"),
                found: format!("{}x{}", entries.nrows(), entries.ncols()),
            });
        }
        if let Some(pos) = entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(pos));
        }
        let deviation = hermitian_deviation(&entries);
        if deviation > tol.herm {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = entries.trace().re;
        if (trace - 1.0).abs() > tol.norm {
            return Err(Error::BadTrace { trace });
        }
        Ok(DensityMatrix { shape, entries })
    }

    /// `Σ_k w_k |ψ_k⟩⟨ψ_k|` for weights summing to one.
    pub fn mixture(terms: &[(f64, &PureState)]) -> Result<Self> {
        let shape = terms
            .first()
            .map(|(_, s)| s.shape())
            .ok_or(Error::LengthMismatch {
                expected: 1,
                found: 0,
            })?;
        let d = shape.dim();
        let mut entries = DMatrix::<Complex64>::zeros(d, d);
        for (w, state) in terms {
            ensure_same_shape(shape, state.shape())?;
            if !(*w >= 0.0 && *w <= 1.0) {
                return Err(Error::InvalidWeight(*w));
            }
            let v = DVector::from_column_slice(state.amplitudes());
            entries += (&v * v.adjoint()) * Complex64::new(*w, 0.0);
        }
        DensityMatrix::new(shape, entries, &Tolerances::default())
    }

    pub fn pure(state: &PureState) -> Self {
        let v = DVector::from_column_slice(state.amplitudes());
        DensityMatrix {
            shape: state.shape(),
            entries: &v * v.adjoint(),
        }
    }

    /// Build from `dim²` entries in row-major order.
    pub fn from_row_major(
        shape: PartyShape,
        entries: &[Complex64],
        tol: &Tolerances,
    ) -> Result<Self> {
        let d = shape.dim();
        if entries.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                found: entries.len(),
            });
        }
        DensityMatrix::new(shape, DMatrix::from_row_slice(d, d, entries), tol)
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let d = self.shape.dim();
        (0..d * d).map(|k| self.entries[(k / d, k % d)]).collect()
    }

    pub fn shape(&self) -> PartyShape {
        self.shape
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Max entrywise `|self − other|`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        ensure_same_shape(self.shape, other.shape)?;
        Ok(max_abs_diff(&self.entries, &other.entries))
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenpairs of a Hermitian matrix, sorted by descending eigenvalue.
///
/// Each eigenvector has its first significant amplitude made real positive.
/// Eigenvalues equal within `tie_tol` are ordered by the lexicographically
/// larger modulus profile of their eigenvectors.
pub fn hermitian_eigen(m: &DMatrix<Complex64>, tie_tol: f64) -> Vec<(f64, Vec<Complex64>)> {
    let eig = m.clone().symmetric_eigen();
    let mut pairs: Vec<(f64, Vec<Complex64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&val, col)| {
            let mut v: Vec<Complex64> = col.iter().copied().collect();
            fix_phase(&mut v);
            (val, v)
        })
        .collect();
    pairs.sort_by(|(la, va), (lb, vb)| {
        if (la - lb).abs() <= tie_tol {
            modulus_profile_cmp(vb, va)
        } else {
            lb.partial_cmp(la).unwrap_or(Ordering::Equal)
        }
    });
    pairs
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    vals
}

fn modulus_profile_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.norm().partial_cmp(&y.norm()) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

/// Index of the first amplitude whose modulus is significant relative to the
/// largest one.
pub(crate) fn first_significant(v: &[Complex64]) -> Option<usize> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return None;
    }
    let cutoff = max * f64::EPSILON.sqrt();
    v.iter().position(|z| z.norm() > cutoff)
}

pub(crate) fn fix_phase(v: &mut [Complex64]) {
    if let Some(k) = first_significant(v) {
        let phase = v[k].conj() / v[k].norm();
        v.iter_mut().for_each(|z| *z *= phase);
        v[k] = Complex64::new(v[k].re, 0.0);
    }
}

/// `ρ = p|E1⟩⟨E1| + (1 − p)|E2⟩⟨E2|` with orthonormal `E1`, `E2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoState {
    p: f64,
    e1: PureState,
    e2: PureState,
}

impl RankTwoState {
    pub fn new(p: f64, e1: PureState, e2: PureState, tol: &Tolerances) -> Result<Self> {
        ensure_same_shape(e1.shape(), e2.shape())?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidWeight(p));
        }
        for s in [&e1, &e2] {
            let norm_sqr = s.norm_sqr();
            if (norm_sqr - 1.0).abs() > tol.norm {
                return Err(Error::NotNormalized { norm_sqr });
            }
        }
        let overlap = e1.inner(&e2)?.norm();
        if overlap > tol.orth {
            return Err(Error::NotOrthogonal { overlap });
        }
        Ok(RankTwoState { p, e1, e2 })
    }

    pub fn shape(&self) -> PartyShape {
        self.e1.shape()
    }

    /// Weight of `E1`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Weight of `E2`, `q = 1 − p`.
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn e1(&self) -> &PureState {
        &self.e1
    }

    pub fn e2(&self) -> &PureState {
        &self.e2
    }

    pub fn to_density(&self) -> DensityMatrix {
        let v1 = DVector::from_column_slice(self.e1.amplitudes());
        let v2 = DVector::from_column_slice(self.e2.amplitudes());
        let entries = (&v1 * v1.adjoint()) * Complex64::new(self.p, 0.0)
            + (&v2 * v2.adjoint()) * Complex64::new(self.q(), 0.0);
        DensityMatrix {
            shape: self.shape(),
            entries,
        }
    }
}

/// Recover `(p, E1, E2)` from a density matrix of rank two.
///
/// `p` is the larger eigenvalue renormalized so that `p + q = 1`; eigenvalues
/// below `tol.rank` count as zero.
pub fn rank_two_extract(rho: &DensityMatrix, tol: &Tolerances) -> Result<RankTwoState> {
    let pairs = hermitian_eigen(rho.matrix(), tol.rank);
    let min_eigenvalue = pairs.iter().map(|(l, _)| *l).fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    let rank = pairs.iter().filter(|(l, _)| *l >= tol.rank).count();
    if rank != 2 || pairs.len() < 2 {
        return Err(Error::NotRankTwo {
            rank,
            leading: pairs.iter().take(3).map(|(l, _)| *l).collect(),
        });
    }
    let (l1, v1) = &pairs[0];
    let (l2, v2) = &pairs[1];
    let p = l1 / (l1 + l2);
    let e1 = PureState::normalized(rho.shape(), v1.clone())?;
    let e2 = PureState::normalized(rho.shape(), v2.clone())?;
    RankTwoState::new(p, e1, e2, tol)
}
