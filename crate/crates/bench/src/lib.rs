//! Seeded inputs shared by the benchmarks in `benches/`.

use rank2sep_core::random::{ghz_orthogonal, product_mixture, random_state, seeded, Field};
use rank2sep_core::{DensityMatrix, PartyShape, PureState, RankTwoState, Tolerances};

/// `(N, M)` pairs, local dimension first.
pub const SHAPES: [(usize, usize); 4] = [(2, 3), (3, 3), (2, 4), (2, 5)];

pub fn shape(n: usize, m: usize) -> PartyShape {
    PartyShape::new(m, n).expect("benchmark shapes are valid")
}

pub fn pure(n: usize, m: usize) -> PureState {
    random_state(shape(n, m), Field::Complex, &mut seeded(1))
}

/// A separable density matrix and its extracted rank-two form.
pub fn separable(n: usize, m: usize) -> (DensityMatrix, RankTwoState) {
    let rho = product_mixture(shape(n, m), Field::Complex, &mut seeded(2)).rho;
    let st = rank2sep_core::rank_two_extract(&rho, &Tolerances::default())
        .expect("rank two by construction");
    (rho, st)
}

pub fn entangled(n: usize, m: usize) -> RankTwoState {
    ghz_orthogonal(shape(n, m), 0.3, Field::Complex, &mut seeded(3)).expect("valid weight")
}

pub fn real_separable(n: usize, m: usize) -> RankTwoState {
    let rho = product_mixture(shape(n, m), Field::Real, &mut seeded(4)).rho;
    rank2sep_core::rank_two_extract(&rho, &Tolerances::default()).expect("rank two by construction")
}
