//! The `StateFile` JSON format, version `"1"`.
//!
//! ```json
//! {"version": "1", "kind": "pure",    "dims": [2, 2, 2], "amplitudes": [[re, im], ...]}
//! {"version": "1", "kind": "rank2",   "dims": [2, 2, 2], "p": 0.3, "e1": [[re, im], ...], "e2": [...]}
//! {"version": "1", "kind": "density", "dims": [2, 2, 2], "matrix": [[re, im], ...]}
//! ```
//!
//! Amplitudes are row-major over the multi-index (party 0 slowest); `matrix`
//! is the density matrix flattened row by row. Every entry of `dims` must be
//! equal.

use rank2sep_core::{Complex64, DensityMatrix, PartyShape, PureState, RankTwoState, Tolerances};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pure,
    Rank2,
    Density,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Pure => "pure",
            Kind::Rank2 => "rank2",
            Kind::Density => "density",
        }
    }
}

/// On-disk representation. Fields that do not belong to `kind` must be absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub version: String,
    pub kind: Kind,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e1: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

/// A validated input.
#[derive(Debug, Clone)]
pub enum Input {
    Pure(PureState),
    Rank2(RankTwoState),
    Density(DensityMatrix),
}

impl Input {
    pub fn kind(&self) -> Kind {
        match self {
            Input::Pure(_) => Kind::Pure,
            Input::Rank2(_) => Kind::Rank2,
            Input::Density(_) => Kind::Density,
        }
    }

    pub fn shape(&self) -> PartyShape {
        match self {
            Input::Pure(s) => s.shape(),
            Input::Rank2(s) => s.shape(),
            Input::Density(r) => r.shape(),
        }
    }
}

pub fn to_pairs(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect()
}

fn dims_of(shape: PartyShape) -> Vec<usize> {
    vec![shape.local_dim(); shape.parties()]
}

impl StateFile {
    pub fn pure(state: &PureState) -> Self {
        StateFile {
            amplitudes: Some(to_pairs(state.amplitudes())),
            ..StateFile::empty(Kind::Pure, state.shape())
        }
    }

    pub fn rank2(state: &RankTwoState) -> Self {
        StateFile {
            p: Some(state.p()),
            e1: Some(to_pairs(state.e1().amplitudes())),
            e2: Some(to_pairs(state.e2().amplitudes())),
            ..StateFile::empty(Kind::Rank2, state.shape())
        }
    }

    pub fn density(rho: &DensityMatrix) -> Self {
        StateFile {
            matrix: Some(to_pairs(&rho.to_row_major())),
            ..StateFile::empty(Kind::Density, rho.shape())
        }
    }

    fn empty(kind: Kind, shape: PartyShape) -> Self {
        StateFile {
            version: FORMAT_VERSION.to_string(),
            kind,
            dims: dims_of(shape),
            amplitudes: None,
            p: None,
            e1: None,
            e2: None,
            matrix: None,
        }
    }

    pub fn to_json(&self) -> String {
        crate::json::to_pretty(self)
    }
}

/// Line and column (1-based) of the first `"name":` key in `text`.
fn locate(text: &str, name: &str) -> Option<(usize, usize)> {
    let needle = format!("\"{name}\"");
    let mut from = 0;
    while let Some(rel) = text[from..].find(&needle) {
        let start = from + rel;
        let rest = text[start + needle.len()..].trim_start();
        if rest.starts_with(':') {
            let line = text[..start].matches('\n').count() + 1;
            let col = start - text[..start].rfind('\n').map_or(0, |k| k + 1) + 1;
            return Some((line, col));
        }
        from = start + needle.len();
    }
    None
}

fn field_error(text: &str, field: &str, message: String) -> CliError {
    let at = match locate(text, field) {
        Some((line, col)) => format!("line {line} column {col}"),
        None => "top level".to_string(),
    };
    CliError::Parse(format!("field `{field}` ({at}): {message}"))
}

fn require<'a, T>(value: &'a Option<T>, field: &str, kind: Kind) -> Result<&'a T, CliError> {
    value.as_ref().ok_or_else(|| {
        CliError::Parse(format!("kind `{}` requires field `{field}`", kind.as_str()))
    })
}

fn forbid<T>(text: &str, value: &Option<T>, field: &str, kind: Kind) -> Result<(), CliError> {
    match value {
        Some(_) => Err(field_error(
            text,
            field,
            format!("not allowed for kind `{}`", kind.as_str()),
        )),
        None => Ok(()),
    }
}

fn check_len(
    text: &str,
    field: &str,
    values: &[[f64; 2]],
    expected: usize,
) -> Result<(), CliError> {
    if values.len() != expected {
        return Err(field_error(
            text,
            field,
            format!("expected {expected} [re, im] pairs, found {}", values.len()),
        ));
    }
    if let Some(k) = values
        .iter()
        .position(|[re, im]| !(re.is_finite() && im.is_finite()))
    {
        return Err(field_error(text, field, format!("entry {k} is not finite")));
    }
    Ok(())
}

fn shape_from_dims(text: &str, dims: &[usize]) -> Result<PartyShape, CliError> {
    let Some(&n) = dims.first() else {
        return Err(field_error(
            text,
            "dims",
            "must list at least two parties".into(),
        ));
    };
    if let Some(k) = dims.iter().position(|&d| d != n) {
        return Err(field_error(
            text,
            "dims",
            format!(
                "all local dimensions must be equal; entry {k} is {} but entry 0 is {n}",
                dims[k]
            ),
        ));
    }
    PartyShape::new(dims.len(), n).map_err(|e| field_error(text, "dims", e.to_string()))
}

/// Parse and validate. Syntax and layout problems are [`CliError::Parse`];
/// a well-formed file whose content violates a state invariant (normalization,
/// orthogonality, Hermiticity, trace) is [`CliError::Invariant`].
pub fn parse(text: &str, tol: &Tolerances) -> Result<Input, CliError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.version != FORMAT_VERSION {
        return Err(field_error(
            text,
            "version",
            format!(
                "unsupported version {:?}, expected {FORMAT_VERSION:?}",
                file.version
            ),
        ));
    }
    let shape = shape_from_dims(text, &file.dims)?;
    let d = shape.dim();
    match file.kind {
        Kind::Pure => {
            for (v, name) in [(&file.e1, "e1"), (&file.e2, "e2"), (&file.matrix, "matrix")] {
                forbid(text, v, name, file.kind)?;
            }
            forbid(text, &file.p, "p", file.kind)?;
            let amps = require(&file.amplitudes, "amplitudes", file.kind)?;
            check_len(text, "amplitudes", amps, d)?;
            Ok(Input::Pure(PureState::new(
                shape,
                from_pairs(amps),
                tol.norm,
            )?))
        }
        Kind::Rank2 => {
            forbid(text, &file.amplitudes, "amplitudes", file.kind)?;
            forbid(text, &file.matrix, "matrix", file.kind)?;
            let p = *require(&file.p, "p", file.kind)?;
            let e1 = require(&file.e1, "e1", file.kind)?;
            let e2 = require(&file.e2, "e2", file.kind)?;
            check_len(text, "e1", e1, d)?;
            check_len(text, "e2", e2, d)?;
            let e1 = PureState::new(shape, from_pairs(e1), tol.norm)?;
            let e2 = PureState::new(shape, from_pairs(e2), tol.norm)?;
            Ok(Input::Rank2(RankTwoState::new(p, e1, e2, tol)?))
        }
        Kind::Density => {
            forbid(text, &file.amplitudes, "amplitudes", file.kind)?;
            forbid(text, &file.p, "p", file.kind)?;
            forbid(text, &file.e1, "e1", file.kind)?;
            forbid(text, &file.e2, "e2", file.kind)?;
            let m = require(&file.matrix, "matrix", file.kind)?;
            check_len(text, "matrix", m, d * d)?;
            Ok(Input::Density(DensityMatrix::from_row_major(
                shape,
                &from_pairs(m),
                tol,
            )?))
        }
    }
}
