//! Shared fixtures for the criterion benches.

use lrseq_core::{rational_from_str, validate_lrs, LRSpec};

/// Build a spec from rational strings, panicking on bad fixture data.
pub fn spec(coefficients: &[&str], initial: &[&str]) -> LRSpec {
    let parse = |xs: &[&str]| {
        xs.iter()
            .map(|x| rational_from_str(x).expect("fixture rational"))
            .collect()
    };
    validate_lrs(parse(coefficients), parse(initial)).expect("fixture spec")
}

pub fn fibonacci() -> LRSpec {
    spec(&["1", "1"], &["1", "1"])
}

pub fn tribonacci() -> LRSpec {
    spec(&["1", "1", "1"], &["1", "1", "1"])
}

/// X^2 - X + 2: a conjugate pair of maximal roots.
pub fn conjugate_pair() -> LRSpec {
    spec(&["1", "-2"], &["1", "1"])
}

/// X^3 + X - 1: one real root below a conjugate pair of maximal roots.
pub fn cubic_pair() -> LRSpec {
    spec(&["0", "-1", "1"], &["1", "1", "1"])
}
