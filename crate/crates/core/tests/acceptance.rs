//! End-to-end acceptance suite: runs every top-level criterion at its exact
//! tolerance and prints one pass/fail line per criterion.

use pdcalc_core::suite::{
    criterion_1, criterion_10, criterion_11, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, report_all, serialize_reports,
    CriterionReport, RunConfig, SuiteCtx,
};
use pdcalc_core::Limits;
use std::time::Instant;

fn ctx() -> SuiteCtx {
    SuiteCtx::new(&RunConfig::new(Limits::default())).expect("suite context")
}

fn check(name: &str, description: &str, r: CriterionReport, budget_s: u64, start: Instant) {
    let elapsed = start.elapsed();
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!(
        "{name}: {status} — {description} ({} ms)",
        elapsed.as_millis()
    );
    assert!(
        r.passed(),
        "{name} failed: {:?}",
        r.witness.unwrap_or_default()
    );
    assert!(
        elapsed.as_secs() < budget_s,
        "{name} exceeded its {budget_s}s budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_product_comparison_defect() {
    let t = Instant::now();
    check(
        "criterion 1",
        "the product comparison at the span is 23 vs 25, injective, not surjective, missing the corner span",
        criterion_1(&ctx()),
        1,
        t,
    );
}

#[test]
fn criterion_02_ho_after_nerve_is_identity() {
    let t = Instant::now();
    check(
        "criterion 2",
        "ho of a nerve recovers the category on all six fixtures",
        criterion_2(&ctx()),
        5,
        t,
    );
}

#[test]
fn criterion_03_underlying_of_representable_and_homotopy() {
    let t = Instant::now();
    check(
        "criterion 3",
        "R of a representable is the nerve; R after Ho is the identity",
        criterion_3(&ctx()),
        5,
        t,
    );
}

#[test]
fn criterion_04_unit_isomorphism() {
    let t = Instant::now();
    check(
        "criterion 4",
        "the unit X -> RL(X) is a levelwise bijection on all eight fixtures",
        criterion_4(&ctx()),
        10,
        t,
    );
}

#[test]
fn criterion_05_quasi_representability_positives() {
    let t = Instant::now();
    check(
        "criterion 5",
        "homotopy and representable fixtures pass all three conditions",
        criterion_5(&ctx()),
        60,
        t,
    );
}

#[test]
fn criterion_06_quasi_representability_negatives() {
    let t = Instant::now();
    check(
        "criterion 6",
        "each negative fixture fails its designated condition at its designated location with the exact witness",
        criterion_6(&ctx()),
        30,
        t,
    );
}

#[test]
fn criterion_07_condition_one_prime_consistency() {
    let t = Instant::now();
    check(
        "criterion 7",
        "conditions (1) and (1') agree; the pushout comparison has 20 = 20 elements",
        criterion_7(&ctx()),
        10,
        t,
    );
}

#[test]
fn criterion_08_reconstruction() {
    let t = Instant::now();
    check(
        "criterion 8",
        "reconstruction succeeds on positives and refuses negatives naming the failing condition",
        criterion_8(&ctx()),
        60,
        t,
    );
}

#[test]
fn criterion_09_cotensor_compatibility() {
    let t = Instant::now();
    check(
        "criterion 9",
        "ho is compatible with cotensors by nerves, 20 = 20 at the arrow probe",
        criterion_9(&ctx()),
        30,
        t,
    );
}

#[test]
fn criterion_10_model_structure_shadows() {
    let t = Instant::now();
    check(
        "criterion 10",
        "fibrancy, acyclic-fibration, and cofibration-injectivity verdicts",
        criterion_10(&ctx()),
        60,
        t,
    );
}

#[test]
fn criterion_11_weak_equivalence_consequence() {
    let t = Instant::now();
    check(
        "criterion 11",
        "the certified codiscrete collapse is levelwise an equivalence of categories",
        criterion_11(&ctx()),
        10,
        t,
    );
}

#[test]
fn criterion_12_determinism() {
    let t = Instant::now();
    // Two full consecutive runs must serialize byte-identically; report_all
    // performs exactly that comparison, and its own output must also be
    // reproducible.
    let config = RunConfig::new(Limits::default());
    let all = report_all(&config).expect("suite runs");
    let c12 = all.last().unwrap().clone();
    let again = serialize_reports(&report_all(&config).expect("suite runs"));
    let first = serialize_reports(&all);
    assert_eq!(first.unwrap(), again.unwrap(), "report documents must be byte-identical");
    check(
        "criterion 12",
        "consecutive aggregate runs emit byte-identical reports",
        c12,
        300,
        t,
    );
}
