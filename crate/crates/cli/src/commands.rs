use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rank2sep_core::random::{ghz_orthogonal, product_mixture, random_state, seeded, Field};
use rank2sep_core::{
    concurrence, decide, decide_real, invariants, ppt_check, pure_product_oracle, rank_two_extract,
    reconstruct, Complex64, DensityMatrix, PartyShape, PptReport, RankTwoState,
    SeparabilityVerdict, Tolerances,
};

use crate::error::CliError;
use crate::format::{self, to_pairs, Input, Kind, StateFile};
use crate::report::{
    self, pair, tolerance_profile, ConcurrenceReport, Concurrences, CutValue, Extraction,
    Invariants, Roots, VerdictReport, Verification, VerifyReport, REPORT_VERSION,
};

/// Exit code, text for standard output and the optional JSON report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub human: String,
    pub report: Option<String>,
}

/// `base` scales every default; `profile` is `name=value[,name=value...]`.
pub fn tolerances(base: f64, profile: Option<&str>) -> Result<Tolerances, CliError> {
    if !(base.is_finite() && base > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be a positive number, got {base}"
        )));
    }
    let mut tol = Tolerances::from_base(base);
    for item in profile
        .into_iter()
        .flat_map(|p| p.split(','))
        .map(str::trim)
    {
        if item.is_empty() {
            continue;
        }
        let (name, value) = item.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--tol-profile entry `{item}` is not name=value"))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            CliError::Usage(format!("--tol-profile value for `{name}` is not a number"))
        })?;
        tol.set(name.trim(), value)?;
    }
    Ok(tol)
}

fn read(path: &Path) -> Result<(Vec<u8>, String), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))?;
    Ok((bytes, text))
}

fn dims(shape: PartyShape) -> Vec<usize> {
    vec![shape.local_dim(); shape.parties()]
}

fn complex(z: Complex64) -> String {
    format!(
        "{:.12} {} {:.12}i",
        z.re,
        if z.im < 0.0 { '-' } else { '+' },
        z.im.abs()
    )
}

fn ppt_map(report: &PptReport) -> BTreeMap<String, f64> {
    report
        .per_bipartition
        .iter()
        .map(|(cut, v)| (cut.to_string(), *v))
        .collect()
}

pub fn concurrence_cmd(path: &Path, tol: &Tolerances) -> Result<Outcome, CliError> {
    let (bytes, text) = read(path)?;
    let state = match format::parse(&text, tol)? {
        Input::Pure(s) => s,
        other => {
            return Err(CliError::Parse(format!(
                "concurrence needs kind `pure`, found `{}`",
                other.kind().as_str()
            )))
        }
    };
    let c = concurrence(&state);
    let inv = invariants(&state);
    let mut human = String::new();
    writeln!(human, "shape: {}", state.shape()).unwrap();
    writeln!(human, "C = {c:.12}").unwrap();
    writeln!(human, "I0 = {:.12}", inv.i0).unwrap();
    for (cut, v) in &inv.biquadratics {
        writeln!(human, "I[{cut}] = {v:.12}").unwrap();
    }
    let report = ConcurrenceReport {
        format_version: REPORT_VERSION.into(),
        command: "concurrence".into(),
        input_digest: report::digest(&bytes),
        dims: dims(state.shape()),
        concurrence: c,
        invariants: Invariants {
            i0: inv.i0,
            biquadratics: inv
                .biquadratics
                .iter()
                .map(|(cut, v)| CutValue {
                    cut: cut.to_string(),
                    t: cut.t_positions().to_vec(),
                    value: *v,
                })
                .collect(),
        },
        tolerance_profile: tolerance_profile(tol),
    };
    Ok(Outcome {
        code: 0,
        human,
        report: Some(report::to_json(&report)),
    })
}

/// Rebuild `ρ` from the verdict's decomposition and cross-examine it with the
/// criterion-free oracles.
fn verify_verdict(
    rho: &DensityMatrix,
    verdict: &SeparabilityVerdict,
    tol: &Tolerances,
) -> Verification {
    let ppt = ppt_check(rho, tol.psd);
    let (reconstruction, components_product) = match &verdict.decomposition {
        Some(d) => {
            let rebuilt =
                reconstruct(d.p_prime, &d.e1_prime, &d.e2_prime).and_then(|r| r.max_abs_diff(rho));
            (
                Some(rebuilt.unwrap_or(f64::INFINITY)),
                pure_product_oracle(&d.e1_prime, tol.product)
                    && pure_product_oracle(&d.e2_prime, tol.product),
            )
        }
        None => (None, false),
    };
    let passed = if verdict.decision.is_separable() {
        reconstruction.is_some_and(|r| r <= tol.reconstruction) && components_product && ppt.passed
    } else {
        // a PPT pass proves nothing, and a PPT failure agrees with the verdict
        true
    };
    Verification {
        reconstruction,
        components_product,
        ppt_passed: ppt.passed,
        ppt_min_eig: ppt_map(&ppt),
        passed,
    }
}

fn exit_code(verdict: &SeparabilityVerdict, verification: Option<&Verification>) -> i32 {
    match verification {
        Some(v) if !v.passed => 5,
        _ if verdict.decision.is_separable() => 0,
        _ => 1,
    }
}

pub fn decide_cmd(
    path: &Path,
    tol: &Tolerances,
    real_branch: bool,
    verify: bool,
) -> Result<Outcome, CliError> {
    let (bytes, text) = read(path)?;
    let input = format::parse(&text, tol)?;
    let (state, rho, extraction): (RankTwoState, DensityMatrix, Option<Extraction>) = match input {
        Input::Rank2(st) => {
            let rho = st.to_density();
            (st, rho, None)
        }
        Input::Density(rho) => {
            let st = rank_two_extract(&rho, tol)?;
            let ex = Extraction {
                p: st.p(),
                e1: to_pairs(st.e1().amplitudes()),
                e2: to_pairs(st.e2().amplitudes()),
            };
            (st, rho, Some(ex))
        }
        Input::Pure(_) => {
            return Err(CliError::Parse(
                "decide needs kind `rank2` or `density`, found `pure`".into(),
            ))
        }
    };
    let verdict = if real_branch {
        decide_real(&state, tol)?
    } else {
        decide(&state, tol)
    };
    let verification = verify.then(|| verify_verdict(&rho, &verdict, tol));
    let conc = Concurrences {
        c_e1: concurrence(state.e1()),
        c_e2: concurrence(state.e2()),
    };

    let mut human = String::new();
    writeln!(human, "shape: {}", state.shape()).unwrap();
    writeln!(
        human,
        "branch: {}",
        if real_branch { "real" } else { "complex" }
    )
    .unwrap();
    if extraction.is_some() {
        writeln!(human, "extracted p = {:.12}", state.p()).unwrap();
    } else {
        writeln!(human, "p = {:.12}", state.p()).unwrap();
    }
    writeln!(
        human,
        "C(E1) = {:.12}, C(E2) = {:.12}",
        conc.c_e1, conc.c_e2
    )
    .unwrap();
    writeln!(human, "decision: {}", verdict.decision).unwrap();
    if let Some(f) = verdict.witness.failed {
        writeln!(human, "failed check: {f}").unwrap();
    }
    if let Some(r) = &verdict.roots {
        writeln!(human, "theta = {:.12}", r.theta).unwrap();
        writeln!(human, "mu1 = {}", complex(r.mu1)).unwrap();
        writeln!(human, "mu2 = {}", complex(r.mu2)).unwrap();
    }
    if let Some(d) = &verdict.decomposition {
        writeln!(human, "p' = {:.12}", d.p_prime).unwrap();
    }
    writeln!(human, "residuals:").unwrap();
    for (k, v) in &verdict.witness.residuals {
        writeln!(human, "  {k} = {v:.3e}").unwrap();
    }
    if let Some(v) = &verification {
        writeln!(
            human,
            "verification: {} (reconstruction {}, components product: {}, PPT: {})",
            if v.passed { "passed" } else { "FAILED" },
            v.reconstruction
                .map_or("n/a".to_string(), |r| format!("{r:.3e}")),
            v.components_product,
            if v.ppt_passed { "passed" } else { "failed" },
        )
        .unwrap();
    }

    let code = exit_code(&verdict, verification.as_ref());
    let report = VerdictReport {
        format_version: REPORT_VERSION.into(),
        command: "decide".into(),
        input_digest: report::digest(&bytes),
        kind: if extraction.is_some() {
            Kind::Density
        } else {
            Kind::Rank2
        }
        .as_str()
        .into(),
        dims: dims(state.shape()),
        branch: if real_branch { "real" } else { "complex" }.into(),
        decision: verdict.decision.as_str().into(),
        failed_check: verdict.witness.failed.map(|f| f.as_str().into()),
        p: state.p(),
        extraction,
        concurrences: conc,
        theta: verdict.roots.map(|r| r.theta),
        roots: verdict.roots.map(|r| Roots {
            mu1: pair(r.mu1),
            mu2: pair(r.mu2),
        }),
        p_prime: verdict.decomposition.as_ref().map(|d| d.p_prime),
        residuals: verdict.witness.residuals.clone(),
        verification,
        tolerance_profile: tolerance_profile(tol),
    };
    Ok(Outcome {
        code,
        human,
        report: Some(report::to_json(&report)),
    })
}

/// Oracle battery only: product test for pure inputs and the partial
/// transpose over every cut. Exit 1 when any check proves entanglement,
/// 0 when none does (which is not a proof of separability).
pub fn verify_cmd(path: &Path, tol: &Tolerances) -> Result<Outcome, CliError> {
    let (bytes, text) = read(path)?;
    let input = format::parse(&text, tol)?;
    let mut checks = BTreeMap::new();
    let rho = match &input {
        Input::Pure(s) => {
            checks.insert(
                "pure_product".to_string(),
                pure_product_oracle(s, tol.product),
            );
            DensityMatrix::pure(s)
        }
        Input::Rank2(st) => {
            checks.insert(
                "e1_product".to_string(),
                pure_product_oracle(st.e1(), tol.product),
            );
            checks.insert(
                "e2_product".to_string(),
                pure_product_oracle(st.e2(), tol.product),
            );
            st.to_density()
        }
        Input::Density(rho) => rho.clone(),
    };
    let ppt = ppt_check(&rho, tol.psd);
    checks.insert("ppt".to_string(), ppt.passed);
    let detected = !ppt.passed || checks.get("pure_product") == Some(&false);

    let mut human = String::new();
    writeln!(human, "shape: {}", input.shape()).unwrap();
    for (k, v) in &checks {
        writeln!(human, "{k}: {}", if *v { "pass" } else { "fail" }).unwrap();
    }
    for (cut, v) in &ppt.per_bipartition {
        writeln!(human, "  min eig of partial transpose [{cut}] = {v:.3e}").unwrap();
    }
    writeln!(
        human,
        "{}",
        if detected {
            "entanglement detected"
        } else {
            "no entanglement detected"
        }
    )
    .unwrap();
    let report = VerifyReport {
        format_version: REPORT_VERSION.into(),
        command: "verify".into(),
        input_digest: report::digest(&bytes),
        kind: input.kind().as_str().into(),
        dims: dims(input.shape()),
        entanglement_detected: detected,
        checks,
        ppt_min_eig: ppt_map(&ppt),
        tolerance_profile: tolerance_profile(tol),
    };
    Ok(Outcome {
        code: i32::from(detected),
        human,
        report: Some(report::to_json(&report)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    ProductMixture,
    GhzOrthogonal,
    RandomPure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerateRequest {
    pub kind: GenerateKind,
    pub parties: usize,
    pub local_dim: usize,
    pub seed: u64,
    pub p: f64,
    pub real: bool,
}

/// Deterministic `StateFile` text for a fixed request.
pub fn generate(request: &GenerateRequest) -> Result<String, CliError> {
    let shape = PartyShape::new(request.parties, request.local_dim)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let field = if request.real {
        Field::Real
    } else {
        Field::Complex
    };
    let mut rng = seeded(request.seed);
    let file = match request.kind {
        GenerateKind::ProductMixture => {
            StateFile::density(&product_mixture(shape, field, &mut rng).rho)
        }
        GenerateKind::GhzOrthogonal => {
            if !(request.p > 0.0 && request.p < 1.0) {
                return Err(CliError::Usage(format!(
                    "--p must lie in (0, 1), got {}",
                    request.p
                )));
            }
            StateFile::rank2(&ghz_orthogonal(shape, request.p, field, &mut rng)?)
        }
        GenerateKind::RandomPure => StateFile::pure(&random_state(shape, field, &mut rng)),
    };
    Ok(file.to_json())
}
