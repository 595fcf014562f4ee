//! Local-unitary invariants, the generalized concurrence and pure-state
//! separability.
//!
//! For a cut `(T, S)` with matricization `A`, the biquadratic invariant is
//! `I_TS = tr((AA†)²)` and the quadratic one is `I_0 = ‖A‖²`. The generalized
//! concurrence over `d = 2^(M−1) − 1` canonical cuts is
//!
//! ```text
//! C = sqrt( N / (d (N − 1)) · (d I_0² − Σ I_TS) )
//! ```
//!
//! Each term `I_0² − I_TS` equals twice the sum of `|A_rc A_r'c' − A_rc' A_r'c|²`
//! over the distinct 2×2 minors of `A`. [`concurrence`] evaluates that form,
//! which stays accurate near zero where the trace form loses about half the
//! significant digits to cancellation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::first_significant;
use crate::error::{Error, Result};
use crate::shape::{Bipartition, MultiIndex};
use crate::state::{tensor_product, PureState};

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSet {
    pub i0: f64,
    /// One `I_TS` per canonical bipartition, in enumeration order.
    pub biquadratics: Vec<(Bipartition, f64)>,
}

impl InvariantSet {
    /// Concurrence from the invariants through the trace form. Accurate only to
    /// about `sqrt(ε)` near zero; see [`concurrence`].
    pub fn concurrence(&self, local_dim: usize) -> f64 {
        let d = self.biquadratics.len() as f64;
        let n = local_dim as f64;
        let sum: f64 = self.biquadratics.iter().map(|(_, v)| v).sum();
        let radicand = n / (d * (n - 1.0)) * (d * self.i0 * self.i0 - sum);
        radicand.max(0.0).sqrt()
    }
}

pub fn invariants(state: &PureState) -> InvariantSet {
    let shape = state.shape();
    let biquadratics = shape
        .bipartitions()
        .into_iter()
        .map(|cut| {
            let a = state
                .matricize(&cut)
                .expect("cut built from the state's shape");
            let gram = &a * a.adjoint();
            let value = gram.iter().map(|z| z.norm_sqr()).sum::<f64>();
            (cut, value)
        })
        .collect();
    InvariantSet {
        i0: state.norm_sqr(),
        biquadratics,
    }
}

/// Sum of `|minor|²` over the distinct 2×2 minors of `a` (rows `r < r'`,
/// columns `c < c'`).
///
/// Per row pair this is `‖x‖²‖y‖² − |⟨x,y⟩|²`, evaluated as `‖x‖²‖y_⊥‖²` with
/// `y_⊥` the part of `y` orthogonal to `x`.
pub(crate) fn minor_norm_sqr(a: &DMatrix<Complex64>) -> f64 {
    let rows: Vec<Vec<Complex64>> = a.row_iter().map(|r| r.iter().copied().collect()).collect();
    let norms: Vec<f64> = rows
        .iter()
        .map(|r| r.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let mut total = 0.0;
    for (i, x) in rows.iter().enumerate() {
        if norms[i] == 0.0 {
            continue;
        }
        for y in &rows[i + 1..] {
            let overlap: Complex64 = x.iter().zip(y).map(|(u, v)| u.conj() * v).sum();
            let coef = overlap / norms[i];
            let perp: f64 = x
                .iter()
                .zip(y)
                .map(|(u, v)| (v - coef * u).norm_sqr())
                .sum();
            total += norms[i] * perp;
        }
    }
    total
}

/// Generalized concurrence `C_N^M` of a pure state.
pub fn concurrence(state: &PureState) -> f64 {
    let shape = state.shape();
    let d = shape.num_bipartitions() as f64;
    let n = shape.local_dim() as f64;
    let minors: f64 = shape
        .bipartitions()
        .iter()
        .map(|cut| minor_norm_sqr(&state.matricize(cut).expect("same shape")))
        .sum();
    (2.0 * n / (d * (n - 1.0)) * minors).sqrt()
}

/// A pure state is fully separable iff its concurrence vanishes.
pub fn is_pure_separable(state: &PureState, tol: f64) -> bool {
    concurrence(state) < tol
}

/// `global_phase · f_0 ⊗ f_1 ⊗ … ⊗ f_{M−1}` with unit factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFactorization {
    pub factors: Vec<Vec<Complex64>>,
    pub global_phase: Complex64,
    /// Max entrywise distance between the input state and the product.
    pub residual: f64,
}

impl ProductFactorization {
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(1.0, 0.0)];
        for f in &self.factors {
            out = out
                .iter()
                .flat_map(|&a| f.iter().map(move |&b| a * b))
                .collect();
        }
        out.iter_mut().for_each(|a| *a *= self.global_phase);
        out
    }
}

/// Split a product state into one unit vector per party.
///
/// The fibers through the largest-modulus amplitude give the factors; each
/// factor has its first significant entry made real positive and the leftover
/// phase goes into `global_phase`. Fails with [`Error::NotSeparable`] when the
/// product differs from the state by more than `tol` in any amplitude.
pub fn factorize(state: &PureState, tol: f64) -> Result<ProductFactorization> {
    let shape = state.shape();
    let amps = state.amplitudes();
    let anchor_flat = amps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(k, _)| k)
        .expect("states are nonempty");
    let anchor = shape.multi_index(anchor_flat);
    let mut factors = Vec::with_capacity(shape.parties());
    for party in 0..shape.parties() {
        let mut fiber: Vec<Complex64> = (0..shape.local_dim())
            .map(|x| {
                let mut idx = anchor.0.clone();
                idx[party] = x;
                state.amplitude(&MultiIndex(idx))
            })
            .collect();
        let norm = fiber.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        fiber.iter_mut().for_each(|z| *z /= norm);
        if let Some(k) = first_significant(&fiber) {
            let phase = fiber[k].conj() / fiber[k].norm();
            fiber.iter_mut().for_each(|z| *z *= phase);
            fiber[k] = Complex64::new(fiber[k].re, 0.0);
        }
        factors.push(fiber);
    }
    let product = tensor_product(&shape, &factors)?;
    let ratio = amps[anchor_flat] / product[anchor_flat];
    let global_phase = ratio / ratio.norm();
    let residual = amps
        .iter()
        .zip(&product)
        .map(|(a, b)| (a - global_phase * b).norm())
        .fold(0.0, f64::max);
    if residual.is_nan() || residual > tol {
        return Err(Error::NotSeparable { residual });
    }
    Ok(ProductFactorization {
        factors,
        global_phase,
        residual,
    })
}
