//! Module-level invariant suites at their full corpus sizes (the acceptance
//! harness covers the headline criteria; these cover the rest).

use mvsheaf::selftest::*;

fn check(r: SuiteResult) {
    assert!(
        r.passed(),
        "suite {} failed ({} cases): {:?}",
        r.name,
        r.cases,
        &r.failures[..r.failures.len().min(3)]
    );
    println!("suite {}: PASS ({} cases)", r.name, r.cases);
}

/// Bit-for-bit agreement of the atomic interleaving predicate with the
/// module oracle on the section images, over a 500-pair corpus with
/// endpoints in -8..8 and infinities, degrees -1..2, radii 0, 1/2, ..., 2.
#[test]
fn bar_predicate_matches_oracle_on_corpus() {
    check(suite_bar_oracle_agreement(97, 500));
}

#[test]
fn interleaving_predicate_shape() {
    check(suite_interleaving_symmetry_monotone(97, 500));
}

#[test]
fn five_term_sequences_are_exact() {
    check(suite_five_term_exactness(97, 100));
}

#[test]
fn metric_axioms_hold() {
    check(suite_metric_axioms(97, 100));
}

#[test]
fn matching_feasibility_separates_by_type() {
    check(suite_type_segregation(97, 200));
}

#[test]
fn convolution_contracts_distances() {
    check(suite_convolution_contracts(97, 150));
}

#[test]
fn system_shifts_form_a_semigroup() {
    check(suite_shift_semigroup_systems(97, 200));
}

#[test]
fn block_operations_round_trip() {
    check(suite_block_round_trips(97, 300));
}

#[test]
fn zigzag_decompositions_verify() {
    check(suite_zigzag_oracle(97, 200));
}

#[test]
fn pipeline_diagram_commutes() {
    check(suite_pipeline_commutes(97, 50));
}

#[test]
fn pointwise_dims_match_on_random_functions() {
    check(suite_pointwise_random(97, 40));
}
