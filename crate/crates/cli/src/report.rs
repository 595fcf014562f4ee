//! Machine-readable reports written by `--json-out`.
//!
//! Field order is fixed by the struct definitions and every map is a
//! `BTreeMap`, so a given input and tolerance profile always serialize to the
//! same bytes.

use std::collections::BTreeMap;

use rank2sep_core::{Complex64, Tolerances};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const REPORT_VERSION: &str = "1";

/// `sha256:<hex>` of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn tolerance_profile(tol: &Tolerances) -> BTreeMap<String, f64> {
    tol.entries()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutValue {
    pub cut: String,
    pub t: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub i0: f64,
    pub biquadratics: Vec<CutValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    pub format_version: String,
    pub command: String,
    pub input_digest: String,
    pub dims: Vec<usize>,
    pub concurrence: f64,
    pub invariants: Invariants,
    pub tolerance_profile: BTreeMap<String, f64>,
}

/// Eigen-decomposition of a density input, echoed for auditing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub p: f64,
    pub e1: Vec<[f64; 2]>,
    pub e2: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concurrences {
    pub c_e1: f64,
    pub c_e2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Roots {
    pub mu1: [f64; 2],
    pub mu2: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    /// Max entrywise difference between the rebuilt and the input matrix;
    /// absent when the verdict carries no decomposition.
    pub reconstruction: Option<f64>,
    pub components_product: bool,
    pub ppt_passed: bool,
    pub ppt_min_eig: BTreeMap<String, f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub format_version: String,
    pub command: String,
    pub input_digest: String,
    pub kind: String,
    pub dims: Vec<usize>,
    pub branch: String,
    pub decision: String,
    pub failed_check: Option<String>,
    pub p: f64,
    pub extraction: Option<Extraction>,
    pub concurrences: Concurrences,
    pub theta: Option<f64>,
    pub roots: Option<Roots>,
    pub p_prime: Option<f64>,
    /// Exactly the values the verdict compared against thresholds.
    pub residuals: BTreeMap<String, f64>,
    pub verification: Option<Verification>,
    pub tolerance_profile: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format_version: String,
    pub command: String,
    pub input_digest: String,
    pub kind: String,
    pub dims: Vec<usize>,
    pub entanglement_detected: bool,
    pub checks: BTreeMap<String, bool>,
    pub ppt_min_eig: BTreeMap<String, f64>,
    pub tolerance_profile: BTreeMap<String, f64>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    crate::json::to_pretty(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn profile_lists_every_tolerance() {
        let p = tolerance_profile(&Tolerances::default());
        assert_eq!(p.len(), Tolerances::NAMES.len());
        assert_eq!(p["criterion"], 1e-8);
    }
}
