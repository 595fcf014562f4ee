mod common;

use std::process::Command;

use common::{bin, check_cases, fixtures, generate, golden_dir, run_case, CASES, GENERATED};
use rank2sep_cli::format::{self, Input};
use rank2sep_cli::report::VerdictReport;
use rank2sep_core::{
    decide, is_pure_separable, reconstruct, Complex64, DensityMatrix, PureState, RankTwoState,
    Tolerances,
};

/// Set `UPDATE_GOLDEN=1` to rewrite the generated fixtures and pinned reports
/// from the current binary before checking them.
fn update_golden() {
    if std::env::var_os("UPDATE_GOLDEN").is_none() {
        return;
    }
    for (fixture, args) in GENERATED {
        assert_eq!(generate(args, &fixtures().join(fixture)), 0);
    }
    std::fs::create_dir_all(golden_dir()).unwrap();
    let scratch = tempfile::tempdir().unwrap();
    for case in CASES.iter().filter(|c| c.golden) {
        let run = run_case(case, scratch.path());
        std::fs::write(
            golden_dir().join(format!("{}.json", case.name)),
            run.report.unwrap(),
        )
        .unwrap();
    }
}

#[test]
fn exit_codes_and_golden_reports() {
    update_golden();
    let scratch = tempfile::tempdir().unwrap();
    let problems = check_cases(scratch.path());
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn human_output() {
    let scratch = tempfile::tempdir().unwrap();
    let find = |name: &str| CASES.iter().find(|c| c.name == name).unwrap();
    let run = |name: &str| run_case(find(name), scratch.path());

    assert!(run("concurrence_ghz_3x3")
        .stdout
        .contains("C = 1.000000000000\n"));
    assert!(run("concurrence_product_2x3")
        .stdout
        .contains("C = 0.000000000000\n"));
    let bad = run("concurrence_malformed_length");
    assert!(
        bad.stderr.contains("`amplitudes` (line 5 column 3)"),
        "{}",
        bad.stderr
    );
    assert!(bad.stderr.contains("expected 8"), "{}", bad.stderr);
    assert!(bad.stdout.is_empty());
    let bound = run("decide_ghz_orthogonal_2x3_p03");
    assert!(bound.stdout.contains("decision: Entangled"));
    assert!(bound.stdout.contains("failed check: phase-mismatch"));
    let mixture = run("decide_product_mixture_2x3_seed7");
    for key in [
        "decision: Separable",
        "theta = ",
        "mu1 = ",
        "mu2 = ",
        "p' = ",
        "verification: passed",
    ] {
        assert!(
            mixture.stdout.contains(key),
            "missing {key}:\n{}",
            mixture.stdout
        );
    }
    // the report only goes to the file
    assert!(!mixture.stdout.contains('{'));
}

#[test]
fn generation_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["product-mixture", "ghz-orthogonal", "random-pure"] {
        let args = [
            "--kind",
            kind,
            "--parties",
            "4",
            "--local-dim",
            "2",
            "--seed",
            "99",
        ];
        let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
        assert_eq!(generate(&args, &a), 0);
        assert_eq!(generate(&args, &b), 0);
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{kind}"
        );
        let other = dir.path().join("c.json");
        let args = [
            "--kind",
            kind,
            "--parties",
            "4",
            "--local-dim",
            "2",
            "--seed",
            "100",
        ];
        assert_eq!(generate(&args, &other), 0);
        assert_ne!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&other).unwrap(),
            "{kind}"
        );
    }
}

#[test]
fn generate_errors_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    assert_eq!(
        generate(
            &[
                "--kind",
                "random-pure",
                "--parties",
                "1",
                "--local-dim",
                "2"
            ],
            &out
        ),
        2
    );
    assert_eq!(
        generate(
            &[
                "--kind",
                "random-pure",
                "--parties",
                "3",
                "--local-dim",
                "1"
            ],
            &out
        ),
        2
    );
    assert_eq!(
        generate(
            &[
                "--kind",
                "ghz-orthogonal",
                "--parties",
                "3",
                "--local-dim",
                "2",
                "--p",
                "1.2"
            ],
            &out
        ),
        2
    );
    assert_eq!(
        generate(
            &["--kind", "bogus", "--parties", "3", "--local-dim", "2"],
            &out
        ),
        2
    );
    let printed = Command::new(bin())
        .args([
            "generate",
            "--kind",
            "random-pure",
            "--parties",
            "2",
            "--local-dim",
            "3",
            "--seed",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(printed.status.code(), Some(0));
    let text = String::from_utf8(printed.stdout).unwrap();
    assert!(matches!(
        format::parse(&text, &Tolerances::default()).unwrap(),
        Input::Pure(_)
    ));
}

#[test]
fn generated_inputs_decide_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n, expected) in [
        ("product-mixture", "2", 0),
        ("product-mixture", "3", 0),
        ("ghz-orthogonal", "2", 1),
        ("ghz-orthogonal", "3", 1),
    ] {
        for seed in ["1", "2", "3"] {
            let path = dir.path().join("in.json");
            let args = [
                "--kind",
                kind,
                "--parties",
                "3",
                "--local-dim",
                n,
                "--seed",
                seed,
            ];
            assert_eq!(generate(&args, &path), 0);
            let status = Command::new(bin())
                .args(["decide", "--verify"])
                .arg(&path)
                .output()
                .unwrap();
            assert_eq!(
                status.status.code(),
                Some(expected),
                "{kind} N={n} seed {seed}"
            );
        }
    }
}

fn pairs(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// Rebuild each pinned decide report's decomposition from nothing but the
/// reported `p′`, `μ1`, `μ2` and the (input or extracted) eigenvectors.
#[test]
fn reports_round_trip() {
    let tol = Tolerances::default();
    let mut separable_seen = 0;
    for case in CASES.iter().filter(|c| c.golden && c.args[0] == "decide") {
        let text =
            std::fs::read_to_string(golden_dir().join(format!("{}.json", case.name))).unwrap();
        let report: VerdictReport = serde_json::from_str(&text).unwrap();
        let input = format::parse(
            &std::fs::read_to_string(fixtures().join(case.fixture)).unwrap(),
            &tol,
        )
        .unwrap();
        let (rho, state) = match input {
            Input::Rank2(st) => (st.to_density(), st),
            Input::Density(rho) => {
                let ex = report
                    .extraction
                    .as_ref()
                    .expect("density inputs echo the extraction");
                let e1 = PureState::new(rho.shape(), pairs(&ex.e1), 1e-12).unwrap();
                let e2 = PureState::new(rho.shape(), pairs(&ex.e2), 1e-12).unwrap();
                (rho, RankTwoState::new(ex.p, e1, e2, &tol).unwrap())
            }
            Input::Pure(_) => unreachable!(),
        };
        assert_eq!(report.p, state.p());
        assert_eq!(decide(&state, &tol).decision.as_str(), report.decision);
        if report.decision != "Separable" {
            assert!(report.p_prime.is_none());
            continue;
        }
        separable_seen += 1;
        let roots = report.roots.as_ref().unwrap();
        let component = |mu: [f64; 2]| {
            let mu = Complex64::new(mu[0], mu[1]);
            let amps = state
                .e1()
                .amplitudes()
                .iter()
                .zip(state.e2().amplitudes())
                .map(|(a, b)| a + mu * b)
                .collect();
            PureState::normalized(state.shape(), amps).unwrap()
        };
        let (e1p, e2p) = (component(roots.mu1), component(roots.mu2));
        assert!(is_pure_separable(&e1p, 1e-8) && is_pure_separable(&e2p, 1e-8));
        let rebuilt: DensityMatrix = reconstruct(report.p_prime.unwrap(), &e1p, &e2p).unwrap();
        assert!(rebuilt.max_abs_diff(&rho).unwrap() < 1e-8, "{}", case.name);
        let reported = report.residuals["reconstruction"];
        assert!(reported < 1e-8);
    }
    assert_eq!(separable_seen, 3);
}
