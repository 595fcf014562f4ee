//! Criterion-free checks used to cross-examine the decisions.
//!
//! Nothing here relies on the quadratic system: product tests use singular
//! values of matricizations, the partial transpose is the usual necessary
//! condition for separability, and [`reconstruct`] turns a claimed
//! decomposition back into a matrix.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::density::{hermitian_eigenvalues, DensityMatrix};
use crate::error::{Error, Result};
use crate::shape::Bipartition;
use crate::state::{ensure_same_shape, PureState};

/// A pure state is fully separable iff every single-party matricization has
/// rank one, tested as `σ2/σ1 < tol`.
pub fn pure_product_oracle(state: &PureState, tol: f64) -> bool {
    state.shape().single_party_cuts().iter().all(|cut| {
        let a = state
            .matricize(cut)
            .expect("cut built from the state's shape");
        let sv = a.singular_values();
        let mut sv: Vec<f64> = sv.iter().copied().collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        match sv.as_slice() {
            [s1, s2, ..] if *s1 > 0.0 => s2 / s1 < tol,
            _ => true,
        }
    })
}

/// Transpose the `T`-position indices between the row and column multi-indices.
pub fn partial_transpose(rho: &DensityMatrix, cut: &Bipartition) -> Result<DMatrix<Complex64>> {
    let shape = rho.shape();
    let layout = cut.layout(&shape)?;
    let m = rho.matrix();
    let d = shape.dim();
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        let (ti, si) = layout.split(i);
        for j in 0..d {
            let (tj, sj) = layout.split(j);
            out[(layout.merge(tj, si), layout.merge(ti, sj))] = m[(i, j)];
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PptReport {
    /// Smallest eigenvalue of the partial transpose over each canonical cut.
    pub per_bipartition: Vec<(Bipartition, f64)>,
    pub passed: bool,
}

impl PptReport {
    pub fn min_eigenvalue(&self) -> f64 {
        self.per_bipartition
            .iter()
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Partial transpose over every canonical cut. A failure proves entanglement;
/// a pass proves nothing.
pub fn ppt_check(rho: &DensityMatrix, tol: f64) -> PptReport {
    let per_bipartition: Vec<(Bipartition, f64)> = rho
        .shape()
        .bipartitions()
        .into_iter()
        .map(|cut| {
            let pt = partial_transpose(rho, &cut).expect("cut built from the matrix shape");
            let min = hermitian_eigenvalues(&pt)[0];
            (cut, min)
        })
        .collect();
    let passed = per_bipartition.iter().all(|(_, v)| *v >= -tol);
    PptReport {
        per_bipartition,
        passed,
    }
}

/// `p′|E1′⟩⟨E1′| + (1 − p′)|E2′⟩⟨E2′|`.
pub fn reconstruct(p_prime: f64, e1p: &PureState, e2p: &PureState) -> Result<DensityMatrix> {
    ensure_same_shape(e1p.shape(), e2p.shape())?;
    if !(0.0..=1.0).contains(&p_prime) {
        return Err(Error::InvalidWeight(p_prime));
    }
    let v1 = DVector::from_column_slice(e1p.amplitudes());
    let v2 = DVector::from_column_slice(e2p.amplitudes());
    let m = (&v1 * v1.adjoint()) * Complex64::new(p_prime, 0.0)
        + (&v2 * v2.adjoint()) * Complex64::new(1.0 - p_prime, 0.0);
    DensityMatrix::new(e1p.shape(), m, &Default::default())
}
