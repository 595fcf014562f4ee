//! Seeded samplers for states, unitaries and test mixtures.
//!
//! All generators take any [`Rng`]; [`seeded`] gives the portable ChaCha
//! stream used by the CLI so that a seed fixes the output bit for bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::density::{DensityMatrix, RankTwoState};
use crate::error::Result;
use crate::shape::PartyShape;
use crate::state::{LocalUnitary, PureState};
use crate::tolerance::Tolerances;

pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Whether sampled amplitudes are complex or restricted to reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = match field {
        Field::Real => 0.0,
        Field::Complex => rng.sample(StandardNormal),
    };
    Complex64::new(re, im)
}

/// Haar-random unit vector of length `n`.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng, field)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

pub fn random_state<R: Rng + ?Sized>(shape: PartyShape, field: Field, rng: &mut R) -> PureState {
    PureState::normalized(shape, unit_vector(shape.dim(), field, rng)).expect("unit vector")
}

pub fn random_product_state<R: Rng + ?Sized>(
    shape: PartyShape,
    field: Field,
    rng: &mut R,
) -> PureState {
    let factors: Vec<_> = (0..shape.parties())
        .map(|_| unit_vector(shape.local_dim(), field, rng))
        .collect();
    PureState::product(shape, &factors).expect("factor count matches shape")
}

/// Haar-random `n × n` unitary from the QR decomposition of a complex
/// Gaussian matrix, with the phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng, Field::Complex));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    q
}

pub fn random_local_unitary<R: Rng + ?Sized>(shape: PartyShape, rng: &mut R) -> LocalUnitary {
    let factors = (0..shape.parties())
        .map(|_| random_unitary(shape.local_dim(), rng))
        .collect();
    LocalUnitary::new(shape, factors, 1e-10).expect("QR factors are unitary")
}

/// Random unit vector orthogonal to `target`.
pub fn random_orthogonal_to<R: Rng + ?Sized>(
    target: &PureState,
    field: Field,
    rng: &mut R,
) -> PureState {
    let shape = target.shape();
    loop {
        let v = unit_vector(shape.dim(), field, rng);
        let overlap: Complex64 = target
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(t, x)| t.conj() * x)
            .sum();
        let w: Vec<Complex64> = v
            .iter()
            .zip(target.amplitudes())
            .map(|(x, t)| x - overlap * t)
            .collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            let mut s = PureState::normalized(shape, w).expect("nonzero");
            // one Gram-Schmidt pass leaves ~1e-16 overlap; a second pass
            // removes what rounding reintroduced
            let again = target.inner(&s).expect("same shape");
            if again.norm() > 1e-15 {
                let w: Vec<Complex64> = s
                    .amplitudes()
                    .iter()
                    .zip(target.amplitudes())
                    .map(|(x, t)| x - again * t)
                    .collect();
                s = PureState::normalized(shape, w).expect("nonzero");
            }
            return s;
        }
    }
}

/// A rank-two mixture `w|u⟩⟨u| + (1 − w)|v⟩⟨v|` of two non-parallel product
/// states.
#[derive(Debug, Clone)]
pub struct ProductMixture {
    pub weight: f64,
    pub u: PureState,
    pub v: PureState,
    pub rho: DensityMatrix,
}

/// Weight drawn from `[0.2, 0.8]`; `u` and `v` are resampled until
/// `|⟨u|v⟩| < 0.95`.
pub fn product_mixture<R: Rng + ?Sized>(
    shape: PartyShape,
    field: Field,
    rng: &mut R,
) -> ProductMixture {
    let weight = rng.random_range(0.2..0.8);
    let u = random_product_state(shape, field, rng);
    let v = loop {
        let v = random_product_state(shape, field, rng);
        if u.inner(&v).expect("same shape").norm() < 0.95 {
            break v;
        }
    };
    let rho = DensityMatrix::mixture(&[(weight, &u), (1.0 - weight, &v)]).expect("valid mixture");
    ProductMixture { weight, u, v, rho }
}

/// `p|E1⟩⟨E1| + (1 − p)|GHZ⟩⟨GHZ|` with a random `E1 ⊥ GHZ`.
pub fn ghz_orthogonal<R: Rng + ?Sized>(
    shape: PartyShape,
    p: f64,
    field: Field,
    rng: &mut R,
) -> Result<RankTwoState> {
    let ghz = PureState::ghz(shape);
    let e1 = random_orthogonal_to(&ghz, field, rng);
    RankTwoState::new(p, e1, ghz, &Tolerances::default())
}
