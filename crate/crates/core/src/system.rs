//! The quadratic equation set for product vectors in the range of a rank-two
//! state.
//!
//! Write `a¹` for the amplitudes of `E1` and `a²` for those of `E2`. The
//! vector `|E1⟩ + λ|E2⟩` has amplitudes `a¹ + λa²`, and it is a product state
//! iff every 2×2 minor of every matricization vanishes. Expanding one minor
//!
//! ```text
//! (a¹+λa²)_{TS}(a¹+λa²)_{T'S'} − (a¹+λa²)_{TS'}(a¹+λa²)_{T'S} = αλ² + βλ + γ
//! ```
//!
//! gives
//!
//! ```text
//! α = a²_{TS} a²_{T'S'} − a²_{TS'} a²_{T'S}
//! β = a²_{TS} a¹_{T'S'} + a¹_{TS} a²_{T'S'} − a²_{TS'} a¹_{T'S} − a¹_{TS'} a²_{T'S}
//! γ = a¹_{TS} a¹_{T'S'} − a¹_{TS'} a¹_{T'S}
//! ```
//!
//! Swapping the two rows (or the two columns) of a minor negates all three
//! coefficients and swapping both leaves them unchanged, so each cut
//! contributes one equation per row pair `r < r'` and column pair `c < c'`.

use num_complex::Complex64;

use crate::density::RankTwoState;
use crate::shape::{Bipartition, MultiIndex, PartyShape};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticEntry {
    /// Position of the cut in [`QuadraticSystem::cuts`].
    pub cut: usize,
    /// Flat index of `I = (T-part r, S-part c)`.
    pub first: usize,
    /// Flat index of `I' = (T-part r', S-part c')`.
    pub second: usize,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl QuadraticEntry {
    pub fn magnitude(&self) -> f64 {
        self.alpha
            .norm()
            .max(self.beta.norm())
            .max(self.gamma.norm())
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        (self.alpha * lambda + self.beta) * lambda + self.gamma
    }

    /// `|αλ² + βλ + γ| / (|α||λ|² + |β||λ| + |γ|)`, zero for the trivial
    /// equation.
    pub fn relative_residual(&self, lambda: Complex64) -> f64 {
        let l = lambda.norm();
        let scale = (self.alpha.norm() * l + self.beta.norm()) * l + self.gamma.norm();
        if scale == 0.0 {
            0.0
        } else {
            self.eval(lambda).norm() / scale
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticSystem {
    shape: PartyShape,
    cuts: Vec<Bipartition>,
    entries: Vec<QuadraticEntry>,
    reference: Option<usize>,
}

impl QuadraticSystem {
    pub fn shape(&self) -> PartyShape {
        self.shape
    }

    pub fn cuts(&self) -> &[Bipartition] {
        &self.cuts
    }

    pub fn entries(&self) -> &[QuadraticEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry with the largest `|α|`, present iff that `|α|` reached the build
    /// tolerance (that is, iff `E2` is entangled).
    pub fn reference(&self) -> Option<&QuadraticEntry> {
        self.reference.map(|k| &self.entries[k])
    }

    pub fn reference_index(&self) -> Option<usize> {
        self.reference
    }

    /// Largest coefficient modulus in the system, zero when empty.
    pub fn scale(&self) -> f64 {
        self.entries
            .iter()
            .map(QuadraticEntry::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn index_pair(&self, entry: &QuadraticEntry) -> (MultiIndex, MultiIndex) {
        (
            self.shape.multi_index(entry.first),
            self.shape.multi_index(entry.second),
        )
    }
}

/// Enumerate every canonical cut and every distinct 2×2 minor, dropping
/// equations whose three coefficients are all below `tol`.
pub fn build_system(state: &RankTwoState, tol: f64) -> QuadraticSystem {
    let shape = state.shape();
    let cuts = shape.bipartitions();
    let a1 = state.e1().amplitudes();
    let a2 = state.e2().amplitudes();
    let mut entries = Vec::new();
    for (cut_index, cut) in cuts.iter().enumerate() {
        let layout = cut
            .layout(&shape)
            .expect("cut built from the state's shape");
        for r in 0..layout.rows {
            for r2 in r + 1..layout.rows {
                for c in 0..layout.cols {
                    for c2 in c + 1..layout.cols {
                        let i = layout.merge(r, c);
                        let i2 = layout.merge(r2, c2);
                        let x = layout.merge(r, c2);
                        let x2 = layout.merge(r2, c);
                        let alpha = a2[i] * a2[i2] - a2[x] * a2[x2];
                        let gamma = a1[i] * a1[i2] - a1[x] * a1[x2];
                        let beta =
                            a2[i] * a1[i2] + a1[i] * a2[i2] - a2[x] * a1[x2] - a1[x] * a2[x2];
                        let entry = QuadraticEntry {
                            cut: cut_index,
                            first: i,
                            second: i2,
                            alpha,
                            beta,
                            gamma,
                        };
                        if entry.magnitude() >= tol {
                            entries.push(entry);
                        }
                    }
                }
            }
        }
    }
    let reference = entries
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.alpha.norm().total_cmp(&b.1.alpha.norm()))
        .filter(|(_, e)| e.alpha.norm() >= tol)
        .map(|(k, _)| k);
    QuadraticSystem {
        shape,
        cuts,
        entries,
        reference,
    }
}

/// Roots of `a x² + b x + c = 0` for `a ≠ 0`.
///
/// The root of larger modulus comes from `q = −(b + s·√(b² − 4ac))/2` with the
/// sign `s` aligned to `b`, the other from `c / q`, which avoids cancellation.
/// Returns `None` when `a` is zero.
pub fn solve_quadratic(a: Complex64, b: Complex64, c: Complex64) -> Option<(Complex64, Complex64)> {
    if a.norm() == 0.0 {
        return None;
    }
    let disc = (b * b - a * c * 4.0).sqrt();
    let sign = if (b.conj() * disc).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let q = -(b + disc * sign) * 0.5;
    if q.norm() == 0.0 {
        // b = 0 and b² = 4ac, so c = 0 too: double root at zero.
        return Some((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    Some((q / a, c / q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use crate::tolerance::Tolerances;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_roots_are_accurate() {
        let cases = [
            (c(1.0, 0.0), c(-3.0, 0.0), c(2.0, 0.0)),
            (c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
            (c(2.0, 1.0), c(-0.5, 3.0), c(1e-3, -2.0)),
            (c(1.0, 0.0), c(1e8, 0.0), c(1.0, 0.0)),
        ];
        for (a, b, cc) in cases {
            let (x1, x2) = solve_quadratic(a, b, cc).unwrap();
            for x in [x1, x2] {
                let scale = a.norm() * x.norm_sqr() + b.norm() * x.norm() + cc.norm();
                assert!(
                    ((a * x + b) * x + cc).norm() <= 1e-14 * scale,
                    "{a} {b} {cc} -> {x}"
                );
            }
            assert!((x1 * x2 - cc / a).norm() <= 1e-12 * (cc / a).norm().max(1.0));
        }
        assert!(solve_quadratic(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).is_none());
        assert_eq!(
            solve_quadratic(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
            Some((c(0.0, 0.0), c(0.0, 0.0)))
        );
    }

    #[test]
    fn basis_pair_has_only_linear_entries() {
        let shape = PartyShape::new(3, 2).unwrap();
        let e1 = PureState::basis(shape, &[0, 0, 0]).unwrap();
        let e2 = PureState::basis(shape, &[1, 1, 1]).unwrap();
        let st = RankTwoState::new(0.5, e1, e2, &Tolerances::default()).unwrap();
        let sys = build_system(&st, 1e-12);
        assert!(!sys.is_empty());
        assert!(sys.reference().is_none());
        for e in sys.entries() {
            assert_eq!(e.alpha, c(0.0, 0.0));
            assert_eq!(e.gamma, c(0.0, 0.0));
            assert_eq!(e.beta.norm(), 1.0);
        }
        // one surviving minor per cut: rows {0,1} and the two columns holding 000 and 111
        assert_eq!(sys.len(), 3);
    }

    #[test]
    fn minor_count_before_dropping() {
        // N=2, M=3: three cuts of shape 2x4, each with C(2,2)·C(4,2) = 6 minors.
        let shape = PartyShape::new(3, 2).unwrap();
        let g = PureState::ghz(shape);
        let mut other = vec![c(0.0, 0.0); 8];
        other[0] = c(0.5, 0.0);
        other[7] = c(-0.5, 0.0);
        other[1] = c(0.5, 0.0);
        other[6] = c(0.5, 0.0);
        let e1 = PureState::new(shape, other, 1e-12).unwrap();
        let st = RankTwoState::new(0.5, e1, g, &Tolerances::default()).unwrap();
        let sys = build_system(&st, 0.0);
        assert_eq!(sys.len(), 18);
    }
}
