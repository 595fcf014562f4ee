//! Tolerance profile shared by every check in the crate.
//!
//! All thresholds derive from one base value (default `1e-8`). Structural
//! checks (normalization, orthogonality, Hermiticity, positivity, rank) run at
//! a tenth of the base; the criterion, root, product and reconstruction checks
//! run at the base itself.

use crate::error::{Error, Result};

pub const DEFAULT_BASE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|‖ψ‖² − 1|` and `|tr ρ − 1|`.
    pub norm: f64,
    /// `|⟨E1|E2⟩|`.
    pub orth: f64,
    /// Max entrywise `|ρ − ρ†|`.
    pub herm: f64,
    /// Smallest admissible eigenvalue is `−psd`.
    pub psd: f64,
    /// Unitarity of local factors, `max |UU† − 1|`.
    pub unitary: f64,
    /// Eigenvalues below this are treated as zero when counting rank.
    pub rank: f64,
    /// Quadratic entries whose coefficients are all below this are dropped.
    pub coefficient: f64,
    /// Relative residual for the phase, proportionality and common-root checks.
    pub criterion: f64,
    /// Relative separation below which two roots count as repeated.
    pub root: f64,
    /// Pure-state product tests (concurrence, singular value ratio, factor residual).
    pub product: f64,
    /// Max entrywise residual of a reconstructed density matrix.
    pub reconstruction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::from_base(DEFAULT_BASE)
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 11] = [
        "norm",
        "orth",
        "herm",
        "psd",
        "unitary",
        "rank",
        "coefficient",
        "criterion",
        "root",
        "product",
        "reconstruction",
    ];

    pub fn from_base(base: f64) -> Self {
        let structural = base * 0.1;
        Tolerances {
            norm: structural,
            orth: structural,
            herm: structural,
            psd: structural,
            unitary: structural,
            rank: structural,
            coefficient: base,
            criterion: base,
            root: base,
            product: base,
            reconstruction: base,
        }
    }

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "norm" => &mut self.norm,
            "orth" => &mut self.orth,
            "herm" => &mut self.herm,
            "psd" => &mut self.psd,
            "unitary" => &mut self.unitary,
            "rank" => &mut self.rank,
            "coefficient" => &mut self.coefficient,
            "criterion" => &mut self.criterion,
            "root" => &mut self.root,
            "product" => &mut self.product,
            "reconstruction" => &mut self.reconstruction,
            _ => return None,
        })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(name).map(|v| *v)
    }

    /// Override a single named threshold.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(tolerance_error(name, value));
        }
        match self.slot(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(tolerance_error(name, value)),
        }
    }

    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        Self::NAMES
            .iter()
            .map(|&n| (n, self.get(n).expect("known name")))
            .collect()
    }
}

fn tolerance_error(name: &str, value: f64) -> Error {
    Error::InvalidTolerance {
        name: name.to_string(),
        value,
    }
}
