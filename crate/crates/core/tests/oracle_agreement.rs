//! Moderate-bound end-to-end runs of the verification suites. The full
//! spec-scale sweep lives in the CLI crate's acceptance tests.

use mulaut::verify::{prime_power_contexts, run_suite, Suite, VerifyScope};

fn assert_suite_passes(suite: Suite, bound: u64) {
    let report = run_suite(suite, VerifyScope::sweep(bound));
    let failures: Vec<String> = report
        .failures()
        .iter()
        .map(|c| format!("{} @ {}", c.name, c.context))
        .collect();
    assert!(
        report.passed(),
        "suite {} failed at bound {bound}: {failures:?}",
        report.suite
    );
}

#[test]
fn arith_suite_bound_128() {
    assert_suite_passes(Suite::Arith, 128);
}

#[test]
fn unit_aut_suite_bound_128() {
    assert_suite_passes(Suite::UnitAut, 128);
}

#[test]
fn structure_suite() {
    assert_suite_passes(Suite::Structure, 128);
}

#[test]
fn monoid_aut_suite_bound_128() {
    assert_suite_passes(Suite::MonoidAut, 128);
}

#[test]
fn sweep_covers_every_prime_power() {
    let contexts = prime_power_contexts(128);
    assert_eq!(contexts.len(), 44); // 31 primes + 13 higher prime powers
    let report = run_suite(Suite::Arith, VerifyScope::sweep(128));
    for ctx in contexts {
        assert!(
            report.cases.iter().any(|c| c.context == ctx.to_string()),
            "no cases for {ctx}"
        );
    }
}
