use biracah::numcore::rational::{int, ratio};
use biracah::verify::{run, Suite, VerifyOptions};
use biracah::{RacahContext, UCandidate, VerifyReport};

fn ctx(n: usize) -> RacahContext {
    RacahContext::new(ratio(1, 4), ratio(3, 4), int(1), n).unwrap()
}

#[test]
fn all_suites_pass_at_defaults() {
    let report = run(&ctx(4), Suite::All, &VerifyOptions::default()).unwrap();
    assert!(report.pass, "{report:?}");
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["orthogonality", "norm", "eigen", "unitarity", "decomposition", "genfun", "degree"]);
    assert_eq!(report.check("eigen").unwrap().max_abs_err, "0");
    assert_eq!(report.signs.len(), 25);
}

#[test]
fn report_round_trips_through_json() {
    let report = run(&ctx(3), Suite::All, &VerifyOptions::default()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["context"]["N"], 3);
    assert_eq!(value["context"]["mu1"], "1/4");
    assert_eq!(value["config"]["flags"]["u_candidate"], "prev-a");
}

#[test]
fn corrupt_phase_fails_genfun_with_odd_rows() {
    let opts = VerifyOptions::default().with_corrupt_phase(true);
    let report = run(&ctx(4), Suite::Genfun, &opts).unwrap();
    assert!(!report.pass);
    let bad = report.sign_mismatches();
    assert!(!bad.is_empty() && bad.iter().all(|(s, _)| s % 2 == 1));
    // rows are flipped as a whole, so unitarity still holds
    assert!(run(&ctx(4), Suite::Unitarity, &opts).unwrap().pass);
}

#[test]
fn swapped_u_candidate_is_a_domain_error_or_a_failure() {
    for u in [UCandidate::SameIndex, UCandidate::PrevBoth] {
        let opts = VerifyOptions::default().with_u(u);
        match run(&ctx(4), Suite::Unitarity, &opts) {
            Ok(r) => assert!(!r.pass),
            Err(e) => assert!(e.is_numeric_domain()),
        }
    }
}
