//! Runs every acceptance criterion and prints one pass/fail line per criterion.
//!
//! Criteria 7 and 8 ask for a certificate at k = 8 and eps0 = 1/5. At that k the example
//! chains are shadowed (a single fuzzy set stays within 3/16 of every element), so no sound
//! certificate exists and both lines print FAIL. The test pins that outcome: it asserts that
//! exactly those two criteria fail, that the shadowing set really shadows, and that the
//! certificate goes through once 1/k < 1/4 - eps0.

use fuzzhyper::config::Budget;
use fuzzhyper::rational::{int, q};
use fuzzhyper::report::{Check, Evidence};
use fuzzhyper::shadowing::{
    example_connected_chain, example_discrete_chain, fuzzy_tracking_distance,
};
use fuzzhyper::suite::{self, CRITERIA};
use fuzzhyper::StepFuzzySet;

fn line(c: &Check) -> String {
    format!(
        "[{}] {:>13}  {}",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.description
    )
}

#[test]
fn acceptance_suite() {
    let start = std::time::Instant::now();
    let report = suite::run_all(&Budget::default());
    println!();
    for c in &report.checks {
        println!("{}", line(c));
    }
    println!(
        "acceptance suite finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );

    for (n, _) in CRITERIA {
        assert!(
            report.checks.iter().any(|c| c.id == n.to_string()),
            "criterion {n} missing"
        );
    }
    for c in &report.checks {
        if let Evidence::Witness(w) = &c.evidence {
            if !c.passed && !matches!(c.id.as_str(), "7" | "8") {
                println!("{} evidence: {w}", c.id);
            }
        }
    }
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.as_str())
        .collect();
    assert_eq!(failing, vec!["7", "8"]);
    assert!(report
        .checks
        .iter()
        .any(|c| c.id == "7-admissible" && c.passed));
    assert!(report
        .checks
        .iter()
        .any(|c| c.id == "8-admissible" && c.passed));
}

#[test]
fn k8_example_chains_are_shadowed() {
    let eps0 = q(1, 5);
    let d = example_discrete_chain(8).unwrap();
    let c = StepFuzzySet::normal(d.system.space().clone(), vec![int(1), q(11, 16)]).unwrap();
    let dist = fuzzy_tracking_distance(&d.system, &d.chain.points, &c).unwrap();
    assert_eq!(dist, q(3, 16));
    assert!(dist < eps0);

    let e = example_connected_chain(8).unwrap();
    let s = e.system.space();
    let mut mu = vec![q(0, 1); s.len()];
    mu[s.index("0").unwrap()] = int(1);
    mu[s.index("8").unwrap()] = q(11, 16);
    let c = StepFuzzySet::normal(s.clone(), mu).unwrap();
    assert_eq!(
        fuzzy_tracking_distance(&e.system, &e.chain.points, &c).unwrap(),
        q(3, 16)
    );
}
