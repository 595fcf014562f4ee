//! Separability decisions for rank-two states.
//!
//! Let `ρ = p|E1⟩⟨E1| + (1 − p)|E2⟩⟨E2|`. When `E2` is entangled, the product
//! vectors in the range of `ρ` are `|E1⟩ + μ|E2⟩` for the common roots `μ` of
//! the [quadratic system](crate::system). `ρ` is separable iff there are two
//! distinct common roots `μ1`, `μ2` and a weight `p′ ∈ [0, 1]` with
//!
//! ```text
//! ρ = p′|E1′⟩⟨E1′| + (1 − p′)|E2′⟩⟨E2′|,   |Ek′⟩ = (|E1⟩ + μk|E2⟩) / sqrt(1 + |μk|²)
//! ```
//!
//! Matching coefficients yields, with `z = μ2 − μ1`,
//!
//! ```text
//! p  = (1 − μ1 μ2 z̄/z)⁻¹
//! p′ = μ2 (1 + |μ1|²) / (z − μ1 μ2 z̄)
//! ```
//!
//! so every equation must satisfy `γ = e^{iθ}(1 − 1/p) α` for one global phase
//! `e^{iθ} = z/z̄`, and all `β` must be proportional to `α` with the same
//! ratio. [`decide`] checks these conditions directly; [`decide_real`] uses the
//! two sum-of-squares quantities that are available when every amplitude is
//! real, where `e^{iθ}` can only be `+1` (real roots of opposite sign) or `−1`
//! (purely imaginary roots).
//!
//! When every `α` vanishes `E2` is a product state, and `ρ` is separable iff
//! `E1` is a product state too.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::concurrence::{concurrence, factorize, ProductFactorization};
use crate::density::{max_abs_diff, RankTwoState};
use crate::error::{Error, Result};
use crate::state::{ensure_same_shape, PureState};
use crate::system::{build_system, solve_quadratic, QuadraticSystem};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Separable,
    Entangled,
    /// `E1` and `E2` are both product states, so the spectral decomposition is
    /// already separable.
    BothEigenvectorsSeparable,
}

impl Decision {
    pub fn is_separable(self) -> bool {
        !matches!(self, Decision::Entangled)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Separable => "Separable",
            Decision::Entangled => "Entangled",
            Decision::BothEigenvectorsSeparable => "BothEigenvectorsSeparable",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first condition that failed on the way to a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailedCheck {
    /// `E2` is a product state but `E1` is not.
    ProductE2EntangledE1,
    /// `γ = e^{iθ}(1 − 1/p) α` fails for some equation.
    PhaseMismatch,
    /// `β α_ref = α β_ref` fails for some equation.
    ProportionalityMismatch,
    /// The reference quadratic has a repeated root.
    RepeatedRoot,
    /// A root of the reference quadratic does not solve some other equation.
    NonCommonRoot,
    /// `z = e^{iθ} z̄` fails.
    RootPhaseMismatch,
    /// The roots do not reproduce the input weight `p`.
    InconsistentRoots,
    /// `p′` is not real or lies outside `[0, 1]`.
    WeightOutOfRange,
    /// A decomposition component did not factorize.
    NonProductComponent,
    /// The decomposition does not reproduce `ρ`.
    ReconstructionMismatch,
    /// Real branch: neither `Δ1` nor `Δ2` vanishes.
    DeltaNonzero,
}

impl FailedCheck {
    pub fn as_str(self) -> &'static str {
        match self {
            FailedCheck::ProductE2EntangledE1 => "product-e2-entangled-e1",
            FailedCheck::PhaseMismatch => "phase-mismatch",
            FailedCheck::ProportionalityMismatch => "proportionality-mismatch",
            FailedCheck::RepeatedRoot => "repeated-root",
            FailedCheck::NonCommonRoot => "non-common-root",
            FailedCheck::RootPhaseMismatch => "root-phase-mismatch",
            FailedCheck::InconsistentRoots => "inconsistent-roots",
            FailedCheck::WeightOutOfRange => "weight-out-of-range",
            FailedCheck::NonProductComponent => "non-product-component",
            FailedCheck::ReconstructionMismatch => "reconstruction-mismatch",
            FailedCheck::DeltaNonzero => "delta-nonzero",
        }
    }
}

impl fmt::Display for FailedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Diagnostic record: the failed check, if any, and every residual that was
/// compared against a threshold, keyed by name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Witness {
    pub failed: Option<FailedCheck>,
    pub residuals: BTreeMap<String, f64>,
}

impl Witness {
    fn record(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), value);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub mu1: Complex64,
    pub mu2: Complex64,
    /// Radians; `e^{iθ}` links `γ` to `(1 − 1/p) α`.
    pub theta: f64,
}

/// A certified separable decomposition `p′|E1′⟩⟨E1′| + (1 − p′)|E2′⟩⟨E2′|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub p_prime: f64,
    pub e1_prime: PureState,
    pub e2_prime: PureState,
    pub factors1: ProductFactorization,
    pub factors2: ProductFactorization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityVerdict {
    pub decision: Decision,
    pub roots: Option<RootPair>,
    pub decomposition: Option<Decomposition>,
    pub witness: Witness,
}

impl SeparabilityVerdict {
    fn entangled(roots: Option<RootPair>, mut witness: Witness, failed: FailedCheck) -> Self {
        witness.failed = Some(failed);
        SeparabilityVerdict {
            decision: Decision::Entangled,
            roots,
            decomposition: None,
            witness,
        }
    }
}

/// Output of [`construct_decomposition`] before range checks.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPair {
    /// `μ2(1 + |μ1|²)/(z − μ1μ2 z̄)`; real in `[0, 1]` for a valid decomposition.
    pub p_prime: Complex64,
    /// `(1 − μ1μ2 z̄/z)⁻¹`, which must equal the input `p`.
    pub p_recomputed: Complex64,
    pub e1_prime: PureState,
    pub e2_prime: PureState,
}

/// Build `E1′`, `E2′` and `p′` from a root pair.
///
/// Fails with [`Error::InconsistentRoots`] if the roots do not reproduce the
/// weight `p` of `state` within `tol`.
pub fn construct_decomposition(
    state: &RankTwoState,
    roots: &RootPair,
    tol: f64,
) -> Result<WeightedPair> {
    let (mu1, mu2) = (roots.mu1, roots.mu2);
    let z = mu2 - mu1;
    let one = Complex64::new(1.0, 0.0);
    let p_recomputed = one / (one - mu1 * mu2 * z.conj() / z);
    let p_prime = mu2 * (1.0 + mu1.norm_sqr()) / (z - mu1 * mu2 * z.conj());
    let gap = (p_recomputed - state.p()).norm();
    if gap.is_nan() || gap > tol {
        return Err(Error::InconsistentRoots {
            expected: state.p(),
            recomputed: format!("{p_recomputed}"),
        });
    }
    Ok(WeightedPair {
        p_prime,
        p_recomputed,
        e1_prime: combine(state, mu1)?,
        e2_prime: combine(state, mu2)?,
    })
}

/// `(|E1⟩ + μ|E2⟩) / sqrt(1 + |μ|²)`, renormalized against rounding.
fn combine(state: &RankTwoState, mu: Complex64) -> Result<PureState> {
    let amps = state
        .e1()
        .amplitudes()
        .iter()
        .zip(state.e2().amplitudes())
        .map(|(a, b)| a + mu * b)
        .collect();
    PureState::normalized(state.shape(), amps)
}

fn order_roots(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let key = |z: &Complex64| (z.re, z.im);
    if key(&a) <= key(&b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Both eigenvectors must factorize; the spectral decomposition is then the
/// certificate.
fn both_product_verdict(
    state: &RankTwoState,
    tol: &Tolerances,
    mut witness: Witness,
) -> SeparabilityVerdict {
    let f1 = factorize(state.e1(), tol.product);
    let f2 = factorize(state.e2(), tol.product);
    match (f1, f2) {
        (Ok(factors1), Ok(factors2)) => {
            witness.record("factor_residual_e1", factors1.residual);
            witness.record("factor_residual_e2", factors2.residual);
            witness.record("reconstruction", 0.0);
            SeparabilityVerdict {
                decision: Decision::BothEigenvectorsSeparable,
                roots: None,
                decomposition: Some(Decomposition {
                    p_prime: state.p(),
                    e1_prime: state.e1().clone(),
                    e2_prime: state.e2().clone(),
                    factors1,
                    factors2,
                }),
                witness,
            }
        }
        (r1, r2) => {
            for (name, r) in [("factor_residual_e1", r1), ("factor_residual_e2", r2)] {
                let residual = match r {
                    Ok(f) => f.residual,
                    Err(Error::NotSeparable { residual }) => residual,
                    Err(_) => f64::INFINITY,
                };
                witness.record(name, residual);
            }
            SeparabilityVerdict::entangled(None, witness, FailedCheck::NonProductComponent)
        }
    }
}

/// Verdict for a system without any `|α| ≥ tol` (`E2` is a product state).
fn product_e2_verdict(
    state: &RankTwoState,
    system: &QuadraticSystem,
    tol: &Tolerances,
    mut witness: Witness,
) -> SeparabilityVerdict {
    let max_gamma = system
        .entries()
        .iter()
        .map(|e| e.gamma.norm())
        .fold(0.0, f64::max);
    witness.record("max_gamma", max_gamma);
    if max_gamma >= tol.coefficient {
        return SeparabilityVerdict::entangled(None, witness, FailedCheck::ProductE2EntangledE1);
    }
    both_product_verdict(state, tol, witness)
}

/// Turn validated roots into a certified verdict: weight range, factorization
/// of both components and reconstruction of `ρ`.
fn certify(
    state: &RankTwoState,
    roots: RootPair,
    tol: &Tolerances,
    mut witness: Witness,
) -> SeparabilityVerdict {
    let pair = match construct_decomposition(state, &roots, tol.criterion) {
        Ok(pair) => pair,
        Err(_) => {
            let z = roots.mu2 - roots.mu1;
            let one = Complex64::new(1.0, 0.0);
            let rec = one / (one - roots.mu1 * roots.mu2 * z.conj() / z);
            witness.record("p_consistency", (rec - state.p()).norm());
            return SeparabilityVerdict::entangled(
                Some(roots),
                witness,
                FailedCheck::InconsistentRoots,
            );
        }
    };
    witness.record("p_consistency", (pair.p_recomputed - state.p()).norm());
    let pp = pair.p_prime;
    witness.record("p_prime_imag", pp.im.abs());
    let range_excess = (-pp.re).max(pp.re - 1.0).max(0.0);
    witness.record("p_prime_range", range_excess);
    if pp.im.abs() > tol.criterion || range_excess > tol.criterion {
        return SeparabilityVerdict::entangled(Some(roots), witness, FailedCheck::WeightOutOfRange);
    }
    let p_prime = pp.re.clamp(0.0, 1.0);
    let f1 = factorize(&pair.e1_prime, tol.product);
    let f2 = factorize(&pair.e2_prime, tol.product);
    let (factors1, factors2) = match (f1, f2) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            let residual = |r: Result<ProductFactorization>| match r {
                Ok(f) => f.residual,
                Err(Error::NotSeparable { residual }) => residual,
                Err(_) => f64::INFINITY,
            };
            witness.record("factor_residual_e1", residual(a));
            witness.record("factor_residual_e2", residual(b));
            return SeparabilityVerdict::entangled(
                Some(roots),
                witness,
                FailedCheck::NonProductComponent,
            );
        }
    };
    witness.record("factor_residual_e1", factors1.residual);
    witness.record("factor_residual_e2", factors2.residual);
    let reconstruction = reconstruction_residual(state, p_prime, &pair.e1_prime, &pair.e2_prime);
    witness.record("reconstruction", reconstruction);
    if reconstruction > tol.reconstruction {
        return SeparabilityVerdict::entangled(
            Some(roots),
            witness,
            FailedCheck::ReconstructionMismatch,
        );
    }
    SeparabilityVerdict {
        decision: Decision::Separable,
        roots: Some(roots),
        decomposition: Some(Decomposition {
            p_prime,
            e1_prime: pair.e1_prime,
            e2_prime: pair.e2_prime,
            factors1,
            factors2,
        }),
        witness,
    }
}

fn reconstruction_residual(
    state: &RankTwoState,
    p_prime: f64,
    e1p: &PureState,
    e2p: &PureState,
) -> f64 {
    let rebuilt = crate::oracle::reconstruct(p_prime, e1p, e2p).expect("same shape as the state");
    max_abs_diff(rebuilt.matrix(), state.to_density().matrix())
}

/// Decide separability for arbitrary complex amplitudes.
///
/// Every residual compared against a threshold is recorded in the witness:
/// `phase` and `proportionality` are normalized by the system scale (largest
/// coefficient modulus), `root_separation` by `max(1, |μ1|, |μ2|)`,
/// `common_root` is the worst relative residual over all equations and both
/// roots, `root_phase` is `|z − e^{iθ}z̄| / |z|`.
pub fn decide(state: &RankTwoState, tol: &Tolerances) -> SeparabilityVerdict {
    let system = build_system(state, tol.coefficient);
    let mut witness = Witness::default();
    let scale = system.scale();
    witness.record("system_scale", scale);
    let Some(reference) = system.reference().cloned() else {
        return product_e2_verdict(state, &system, tol, witness);
    };

    let factor = 1.0 - state.p().recip();
    let theta = (reference.gamma / (reference.alpha * factor)).arg();
    let k = Complex64::from_polar(1.0, theta) * factor;

    let phase = system
        .entries()
        .iter()
        .map(|e| (e.gamma - k * e.alpha).norm())
        .fold(0.0, f64::max)
        / scale;
    witness.record("phase", phase);
    witness.record("theta", theta);
    if phase > tol.criterion {
        return SeparabilityVerdict::entangled(None, witness, FailedCheck::PhaseMismatch);
    }

    let proportionality = system
        .entries()
        .iter()
        .map(|e| (e.beta * reference.alpha - e.alpha * reference.beta).norm())
        .fold(0.0, f64::max)
        / (scale * scale);
    witness.record("proportionality", proportionality);
    if proportionality > tol.criterion {
        return SeparabilityVerdict::entangled(None, witness, FailedCheck::ProportionalityMismatch);
    }

    let (r1, r2) = solve_quadratic(reference.alpha, reference.beta, reference.gamma)
        .expect("reference has nonzero alpha");
    let (mu1, mu2) = order_roots(r1, r2);
    let roots = RootPair { mu1, mu2, theta };
    let separation = (mu2 - mu1).norm() / 1f64.max(mu1.norm()).max(mu2.norm());
    witness.record("root_separation", separation);
    if separation <= tol.root {
        return SeparabilityVerdict::entangled(Some(roots), witness, FailedCheck::RepeatedRoot);
    }

    let common_root = system
        .entries()
        .iter()
        .map(|e| e.relative_residual(mu1).max(e.relative_residual(mu2)))
        .fold(0.0, f64::max);
    witness.record("common_root", common_root);
    if common_root > tol.criterion {
        return SeparabilityVerdict::entangled(Some(roots), witness, FailedCheck::NonCommonRoot);
    }

    let z = mu2 - mu1;
    let root_phase = (z - Complex64::from_polar(1.0, theta) * z.conj()).norm() / z.norm();
    witness.record("root_phase", root_phase);
    if root_phase > tol.criterion {
        return SeparabilityVerdict::entangled(
            Some(roots),
            witness,
            FailedCheck::RootPhaseMismatch,
        );
    }

    certify(state, roots, tol, witness)
}

/// Decide separability when every amplitude of `E1` and `E2` is real.
///
/// With coefficients scaled by the system scale and `c = 1 − 1/p`,
///
/// ```text
/// Δ1 = Σ|γ − cα|² + Σ_{pairs}|β α′ − α β′|²
/// Δ2 = Σ|γ + cα|² + Σ|β|²
/// ```
///
/// and `ρ` is separable iff one of them vanishes (`< tol.criterion²`). The
/// pair sum runs over ordered pairs of equations and is evaluated as
/// `2‖α‖²‖β_⊥‖²`, with `β_⊥` the component of `β` orthogonal to `α`.
pub fn decide_real(state: &RankTwoState, tol: &Tolerances) -> Result<SeparabilityVerdict> {
    let max_imag = state.e1().max_imag().max(state.e2().max_imag());
    if max_imag >= tol.criterion {
        return Err(Error::ComplexInput { max_imag });
    }
    let system = build_system(state, tol.coefficient);
    let mut witness = Witness::default();
    let scale = system.scale();
    witness.record("system_scale", scale);
    let norm = if scale > 0.0 { scale.recip() } else { 0.0 };
    let alpha: Vec<f64> = system.entries().iter().map(|e| e.alpha.re * norm).collect();
    let beta: Vec<f64> = system.entries().iter().map(|e| e.beta.re * norm).collect();
    let gamma: Vec<f64> = system.entries().iter().map(|e| e.gamma.re * norm).collect();
    let c = 1.0 - state.p().recip();

    let alpha_sq: f64 = alpha.iter().map(|a| a * a).sum();
    let cross = if alpha_sq > 0.0 {
        let ab: f64 = alpha.iter().zip(&beta).map(|(a, b)| a * b).sum();
        let ratio = ab / alpha_sq;
        let perp: f64 = alpha
            .iter()
            .zip(&beta)
            .map(|(a, b)| (b - ratio * a).powi(2))
            .sum();
        2.0 * alpha_sq * perp
    } else {
        0.0
    };
    let delta1 = alpha
        .iter()
        .zip(&gamma)
        .map(|(a, g)| (g - c * a).powi(2))
        .sum::<f64>()
        + cross;
    let delta2 = alpha
        .iter()
        .zip(&gamma)
        .map(|(a, g)| (g + c * a).powi(2))
        .sum::<f64>()
        + beta.iter().map(|b| b * b).sum::<f64>();
    witness.record("delta1", delta1);
    witness.record("delta2", delta2);

    let threshold = tol.criterion * tol.criterion;
    let Some(reference) = system.reference().cloned() else {
        if delta1.min(delta2) >= threshold {
            let max_gamma = gamma.iter().fold(0.0f64, |m, g| m.max(g.abs())) * scale;
            witness.record("max_gamma", max_gamma);
            return Ok(SeparabilityVerdict::entangled(
                None,
                witness,
                FailedCheck::ProductE2EntangledE1,
            ));
        }
        return Ok(product_e2_verdict(state, &system, tol, witness));
    };

    let mut candidates = Vec::new();
    if delta1 < threshold {
        candidates.push(0.0);
    }
    if delta2 < threshold {
        candidates.push(std::f64::consts::PI);
    }
    if candidates.is_empty() {
        return Ok(SeparabilityVerdict::entangled(
            None,
            witness,
            FailedCheck::DeltaNonzero,
        ));
    }

    let (a, b, g) = (reference.alpha.re, reference.beta.re, reference.gamma.re);
    let (r1, r2) =
        solve_quadratic(a.into(), b.into(), g.into()).expect("reference has nonzero alpha");
    let (mu1, mu2) = order_roots(r1, r2);
    let mut best: Option<SeparabilityVerdict> = None;
    for theta in candidates {
        let verdict = certify(state, RootPair { mu1, mu2, theta }, tol, witness.clone());
        let residual = |v: &SeparabilityVerdict| {
            if v.decision.is_separable() {
                v.witness
                    .residuals
                    .get("reconstruction")
                    .copied()
                    .unwrap_or(f64::INFINITY)
            } else {
                f64::INFINITY
            }
        };
        best = match best {
            Some(prev) if residual(&prev) <= residual(&verdict) => Some(prev),
            _ => Some(verdict),
        };
    }
    Ok(best.expect("at least one candidate"))
}

/// True when `p < 1/2` and `E2` is the GHZ vector: such a state is certified
/// entangled. False only means this bound gives no certificate.
pub fn corollary_bound_check(e1: &PureState, p: f64, tol: &Tolerances) -> Result<bool> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidWeight(p));
    }
    let ghz = PureState::ghz(e1.shape());
    ensure_same_shape(ghz.shape(), e1.shape())?;
    let overlap = ghz.inner(e1)?.norm();
    if overlap > tol.orth {
        return Err(Error::NotOrthogonalToGhz { overlap });
    }
    Ok(p < 0.5)
}

/// `C(E1) / C(E2)`. Equals `(1 − p)/p` whenever `ρ` is separable with an
/// entangled `E2`.
pub fn concurrence_ratio(state: &RankTwoState, tol: &Tolerances) -> Result<f64> {
    let c2 = concurrence(state.e2());
    if c2 < tol.product {
        return Err(Error::E2Separable { concurrence: c2 });
    }
    Ok(concurrence(state.e1()) / c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::PartyShape;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ghz_minus(shape: PartyShape) -> PureState {
        let mut amps = vec![c(0.0, 0.0); shape.dim()];
        amps[0] = c(FRAC_1_SQRT_2, 0.0);
        amps[shape.dim() - 1] = c(-FRAC_1_SQRT_2, 0.0);
        PureState::new(shape, amps, 1e-12).unwrap()
    }

    #[test]
    fn symmetric_roots_give_half() {
        let shape = PartyShape::new(3, 2).unwrap();
        let st = RankTwoState::new(
            0.5,
            ghz_minus(shape),
            PureState::ghz(shape),
            &Tolerances::default(),
        )
        .unwrap();
        let roots = RootPair {
            mu1: c(-1.0, 0.0),
            mu2: c(1.0, 0.0),
            theta: 0.0,
        };
        let pair = construct_decomposition(&st, &roots, 1e-12).unwrap();
        assert!((pair.p_recomputed - c(0.5, 0.0)).norm() < 1e-15);
        assert!((pair.p_prime - c(0.5, 0.0)).norm() < 1e-15);
        let wrong = RankTwoState::new(
            0.3,
            st.e1().clone(),
            st.e2().clone(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(matches!(
            construct_decomposition(&wrong, &roots, 1e-9),
            Err(Error::InconsistentRoots { .. })
        ));
    }

    #[test]
    fn imaginary_roots_weight() {
        // μ1 = −it, μ2 = it: z̄/z = −1, so p = 1/(1 + t²).
        let shape = PartyShape::new(2, 2).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let p = 1.0 / (1.0 + t * t);
            let e1 = PureState::basis(shape, &[0, 0]).unwrap();
            let e2 = PureState::basis(shape, &[1, 1]).unwrap();
            let st = RankTwoState::new(p, e1, e2, &Tolerances::default()).unwrap();
            let roots = RootPair {
                mu1: c(0.0, -t),
                mu2: c(0.0, t),
                theta: std::f64::consts::PI,
            };
            let pair = construct_decomposition(&st, &roots, 1e-12).unwrap();
            assert!((pair.p_recomputed.re - p).abs() < 1e-14);
            assert!((pair.p_prime - c(0.5, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn ghz_pair_at_half_is_separable() {
        // ½(|GHZ+⟩⟨GHZ+| + |GHZ−⟩⟨GHZ−|) = ½(|000⟩⟨000| + |111⟩⟨111|)
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let st = RankTwoState::new(0.5, ghz_minus(shape), PureState::ghz(shape), &tol).unwrap();
        let v = decide(&st, &tol);
        assert_eq!(v.decision, Decision::Separable, "{:?}", v.witness);
        let real = decide_real(&st, &tol).unwrap();
        assert_eq!(real.decision, Decision::Separable, "{:?}", real.witness);
        let d = v.decomposition.unwrap();
        assert!((d.p_prime - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ghz_pair_below_half_is_entangled() {
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let st = RankTwoState::new(0.3, ghz_minus(shape), PureState::ghz(shape), &tol).unwrap();
        let v = decide(&st, &tol);
        assert_eq!(v.decision, Decision::Entangled);
        assert_eq!(v.witness.failed, Some(FailedCheck::PhaseMismatch));
        assert!(v.decomposition.is_none());
        let real = decide_real(&st, &tol).unwrap();
        assert_eq!(real.decision, Decision::Entangled);
        assert_eq!(real.witness.failed, Some(FailedCheck::DeltaNonzero));
        assert!(corollary_bound_check(st.e1(), 0.3, &tol).unwrap());
        assert!((concurrence_ratio(&st, &tol).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn both_basis_vectors_separable() {
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let e1 = PureState::basis(shape, &[0, 1, 0]).unwrap();
        let e2 = PureState::basis(shape, &[1, 1, 1]).unwrap();
        let st = RankTwoState::new(0.8, e1, e2, &tol).unwrap();
        assert_eq!(
            decide(&st, &tol).decision,
            Decision::BothEigenvectorsSeparable
        );
        assert_eq!(
            decide_real(&st, &tol).unwrap().decision,
            Decision::BothEigenvectorsSeparable
        );
        assert!(matches!(
            concurrence_ratio(&st, &tol),
            Err(Error::E2Separable { .. })
        ));
    }

    #[test]
    fn entangled_e1_with_product_e2() {
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let e2 = PureState::basis(shape, &[0, 1, 0]).unwrap();
        let st = RankTwoState::new(0.6, PureState::ghz(shape), e2, &tol).unwrap();
        let v = decide(&st, &tol);
        assert_eq!(v.decision, Decision::Entangled);
        assert_eq!(v.witness.failed, Some(FailedCheck::ProductE2EntangledE1));
        assert_eq!(
            decide_real(&st, &tol).unwrap().decision,
            Decision::Entangled
        );
    }

    #[test]
    fn product_e1_entangled_e2_is_entangled_for_all_p() {
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let e1 = PureState::basis(shape, &[0, 1, 0]).unwrap();
        for p in [0.1, 0.5, 0.9] {
            let st = RankTwoState::new(p, e1.clone(), PureState::ghz(shape), &tol).unwrap();
            assert_eq!(concurrence_ratio(&st, &tol).unwrap(), 0.0);
            assert_eq!(decide(&st, &tol).decision, Decision::Entangled);
        }
    }

    #[test]
    fn complex_input_rejected_by_real_branch() {
        let shape = PartyShape::new(2, 2).unwrap();
        let tol = Tolerances::default();
        let e1 = PureState::new(
            shape,
            vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            1e-12,
        )
        .unwrap();
        let e2 = PureState::basis(shape, &[1, 1]).unwrap();
        let st = RankTwoState::new(0.6, e1, e2, &tol).unwrap();
        assert!(matches!(
            decide_real(&st, &tol),
            Err(Error::ComplexInput { .. })
        ));
    }

    #[test]
    fn corollary_bound_edges() {
        let shape = PartyShape::new(3, 2).unwrap();
        let tol = Tolerances::default();
        let e1 = ghz_minus(shape);
        assert!(corollary_bound_check(&e1, 0.3, &tol).unwrap());
        assert!(!corollary_bound_check(&e1, 0.5, &tol).unwrap());
        assert!(!corollary_bound_check(&e1, 0.7, &tol).unwrap());
        assert!(matches!(
            corollary_bound_check(&PureState::basis(shape, &[0, 0, 0]).unwrap(), 0.3, &tol),
            Err(Error::NotOrthogonalToGhz { .. })
        ));
        assert!(corollary_bound_check(&e1, 0.0, &tol).is_err());
    }
}
