//! Empirical root-configuration densities over boxes of integer polynomials.
//!
//! The families are the monic box X^m + a_1 X^{m-1} + ... + a_m with
//! |a_i| <= H, and the general box with a nonzero leading coefficient
//! |a_0| <= H as well. Every member is classified by its number of
//! maximal-modulus roots (counted with multiplicity) and by degeneracy,
//! either exhaustively or on a seeded uniform sample.
//!
//! Zero roots take part in the modulus comparison but can never be
//! dominant, and a polynomial whose roots are all zero counts as
//! degenerate; this keeps degree 1 sensible, where X is the single
//! non-dominant member of its box.

use crate::poly::{degeneracy_status, IntPolynomial};
use crate::roots::root_profile;
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Monic,
    General,
}

/// Classification counts over one family box. The buckets `two_max` and
/// `three_plus` partition the non-unique-maximum configurations;
/// `dominant` is the k = 1 bucket minus polynomials whose unique maximal
/// root is 0 (only X^1 qualifies). `degenerate` counts separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub family: Family,
    pub degree: usize,
    pub height: u32,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub total: u64,
    pub dominant: u64,
    pub two_max: u64,
    pub three_plus: u64,
    pub degenerate: u64,
    pub fraction_dominant: f64,
    pub fraction_two_max: f64,
    pub fraction_degenerate: f64,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    dominant: u64,
    two_max: u64,
    three_plus: u64,
    degenerate: u64,
}

impl Tally {
    fn merge(a: Tally, b: Tally) -> Tally {
        Tally {
            dominant: a.dominant + b.dominant,
            two_max: a.two_max + b.two_max,
            three_plus: a.three_plus + b.three_plus,
            degenerate: a.degenerate + b.degenerate,
        }
    }
}

fn classify_poly(f: &IntPolynomial) -> Tally {
    let mut t = Tally::default();
    let profile = root_profile(f, true).expect("integer polynomial profiling is total");
    if profile.dominant {
        t.dominant = 1;
    }
    match profile.k_max {
        1 => {}
        2 => t.two_max = 1,
        _ => t.three_plus = 1,
    }
    let zeros = f.zero_root_multiplicity();
    let core = f.shift_down(zeros);
    let degenerate = if core.degree() == 0 {
        true
    } else {
        degeneracy_status(&core)
            .expect("core polynomial has a nonzero constant term")
            .degenerate
    };
    if degenerate {
        t.degenerate = 1;
    }
    t
}

/// Decode index digits in base 2H+1 into the m low coefficients.
fn low_coefficients(m: usize, height: u32, mut idx: u64) -> Vec<BigInt> {
    let b = 2 * height as u64 + 1;
    let mut coeffs = Vec::with_capacity(m + 1);
    for _ in 0..m {
        coeffs.push(BigInt::from((idx % b) as i64 - height as i64));
        idx /= b;
    }
    coeffs
}

fn poly_at_index(m: usize, height: u32, family: Family, idx: u64) -> IntPolynomial {
    match family {
        Family::Monic => {
            let mut coeffs = low_coefficients(m, height, idx);
            coeffs.push(BigInt::one());
            IntPolynomial::from_ascending(coeffs)
        }
        Family::General => {
            let tail = (2 * height as u64 + 1).pow(m as u32);
            let mut coeffs = low_coefficients(m, height, idx % tail);
            // Leading index 0..2H-1 maps onto -H..-1, 1..H.
            let lead_idx = (idx / tail) as i64;
            let lead = if lead_idx < height as i64 {
                lead_idx - height as i64
            } else {
                lead_idx - height as i64 + 1
            };
            coeffs.push(BigInt::from(lead));
            IntPolynomial::from_ascending(coeffs)
        }
    }
}

/// Uniform member of the box, drawn from a per-index ChaCha stream so the
/// sample is independent of how workers partition the index range.
fn sample_poly(m: usize, height: u32, family: Family, seed: u64, index: u64) -> IntPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let span = -(height as i64)..=height as i64;
    let mut coeffs: Vec<BigInt> =
        (0..m).map(|_| BigInt::from(rng.gen_range(span.clone()))).collect();
    let lead = match family {
        Family::Monic => BigInt::one(),
        Family::General => loop {
            let v = rng.gen_range(span.clone());
            if v != 0 {
                break BigInt::from(v);
            }
        },
    };
    coeffs.push(lead);
    IntPolynomial::from_ascending(coeffs)
}

/// Classify a whole family box, exhaustively when `samples` is None.
///
/// The seed only matters for sampling; exhaustive scans ignore it. Counts
/// are merged by summation, so any worker partition yields the same report.
pub fn density_scan(
    m: usize,
    height: u32,
    family: Family,
    samples: Option<u64>,
    seed: u64,
) -> DensityReport {
    assert!(m >= 1, "degree must be at least 1");
    assert!(height >= 1, "height must be at least 1");
    let (total, tally, mode, seed_field) = match samples {
        None => {
            let b = 2 * height as u64 + 1;
            let space = b
                .checked_pow(m as u32)
                .and_then(|t| match family {
                    Family::Monic => Some(t),
                    Family::General => t.checked_mul(2 * height as u64),
                })
                .expect("box too large to enumerate; use sampling");
            let tally = (0..space)
                .into_par_iter()
                .map(|i| classify_poly(&poly_at_index(m, height, family, i)))
                .reduce(Tally::default, Tally::merge);
            (space, tally, "exhaustive", None)
        }
        Some(n) => {
            assert!(n >= 1, "sample size must be at least 1");
            let tally = (0..n)
                .into_par_iter()
                .map(|i| classify_poly(&sample_poly(m, height, family, seed, i)))
                .reduce(Tally::default, Tally::merge);
            (n, tally, "sample", Some(seed))
        }
    };
    let frac = |c: u64| c as f64 / total as f64;
    DensityReport {
        family,
        degree: m,
        height,
        mode: mode.to_string(),
        seed: seed_field,
        total,
        dominant: tally.dominant,
        two_max: tally.two_max,
        three_plus: tally.three_plus,
        degenerate: tally.degenerate,
        fraction_dominant: frac(tally.dominant),
        fraction_two_max: frac(tally.two_max),
        fraction_degenerate: frac(tally.degenerate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::collections::BTreeSet;

    fn poly(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending_i64(desc)
    }

    #[test]
    fn single_polynomial_classifications() {
        let case = |desc: &[i64]| {
            let t = classify_poly(&poly(desc));
            (t.dominant, t.two_max, t.three_plus, t.degenerate)
        };
        assert_eq!(case(&[1, -1, -1]), (1, 0, 0, 0)); // X^2-X-1
        assert_eq!(case(&[1, 0, 1]), (0, 1, 0, 1)); // X^2+1
        assert_eq!(case(&[1, 1, 0]), (1, 0, 0, 0)); // X(X+1)
        assert_eq!(case(&[1, 0, 0]), (0, 1, 0, 1)); // X^2
        assert_eq!(case(&[1, 0, 0, 0]), (0, 0, 1, 1)); // X^3
        assert_eq!(case(&[1, 0, -1, 0]), (0, 1, 0, 1)); // X(X-1)(X+1)
        assert_eq!(case(&[1, 1, 1, 1]), (0, 0, 1, 1)); // (X+1)(X^2+1)
        assert_eq!(case(&[1, -2, 1]), (0, 1, 0, 0)); // (X-1)^2: simple but not dominant
        assert_eq!(case(&[1, 0]), (0, 0, 0, 1)); // X: unique maximal root is 0
        assert_eq!(case(&[1, 1]), (1, 0, 0, 0)); // X+1
    }

    #[test]
    fn monic_quadratics_at_height_one_by_hand() {
        // The 9 quadratics split into 4 dominant (X^2 +- X, X^2 +- X - 1)
        // and 5 with an equal-modulus pair, all of those degenerate.
        let r = density_scan(2, 1, Family::Monic, None, 0);
        assert_eq!(r.total, 9);
        assert_eq!(r.dominant, 4);
        assert_eq!(r.two_max, 5);
        assert_eq!(r.three_plus, 0);
        assert_eq!(r.degenerate, 5);
        assert_eq!(r.fraction_dominant, 4.0 / 9.0);
        assert_eq!(r.mode, "exhaustive");
        assert_eq!(r.seed, None);
    }

    #[test]
    fn degree_one_counts_match_formula() {
        for h in [1u32, 4, 9] {
            let r = density_scan(1, h, Family::Monic, None, 0);
            assert_eq!(r.total, 2 * h as u64 + 1);
            assert_eq!(r.dominant, 2 * h as u64);
            assert_eq!(r.degenerate, 1); // X alone
            assert_eq!(r.two_max + r.three_plus, 0);
        }
    }

    #[test]
    fn general_family_doubles_monic_at_height_one() {
        // At H = 1 the leading coefficient is +-1, and scaling by -1
        // preserves the roots, so every monic count doubles.
        let r = density_scan(2, 1, Family::General, None, 0);
        assert_eq!(r.total, 18);
        assert_eq!(r.dominant, 8);
        assert_eq!(r.two_max, 10);
        assert_eq!(r.degenerate, 10);
    }

    #[test]
    fn general_enumeration_hits_distinct_polynomials() {
        let mut seen = BTreeSet::new();
        for i in 0..18 {
            let f = poly_at_index(2, 1, Family::General, i);
            assert_eq!(f.degree(), 2);
            assert!(!f.leading().is_zero());
            seen.insert(f.coeffs().to_vec());
        }
        assert_eq!(seen.len(), 18);
    }

    #[test]
    fn parallel_merge_matches_sequential() {
        let r = density_scan(3, 1, Family::Monic, None, 0);
        let mut seq = Tally::default();
        for i in 0..27 {
            seq = Tally::merge(seq, classify_poly(&poly_at_index(3, 1, Family::Monic, i)));
        }
        assert_eq!(r.total, 27);
        assert_eq!(r.dominant, seq.dominant);
        assert_eq!(r.two_max, seq.two_max);
        assert_eq!(r.three_plus, seq.three_plus);
        assert_eq!(r.degenerate, seq.degenerate);
        assert!(r.dominant + r.two_max + r.three_plus <= 27);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = density_scan(3, 30, Family::General, Some(120), 42);
        let b = density_scan(3, 30, Family::General, Some(120), 42);
        assert_eq!(a, b);
        assert_eq!(a.total, 120);
        assert_eq!(a.mode, "sample");
        assert_eq!(a.seed, Some(42));
        // Mostly dominant at this height.
        assert!(a.fraction_dominant > 0.5, "{}", a.fraction_dominant);
    }

    #[test]
    fn report_json_shape() {
        let r = density_scan(2, 1, Family::Monic, None, 7);
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(json["family"], "monic");
        assert_eq!(json["degree"], 2);
        assert_eq!(json["total"], 9);
        assert_eq!(json["dominant"], 4);
        assert!(json.get("seed").is_none());
        let s = density_scan(2, 2, Family::General, Some(10), 7);
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(json["seed"], 7);
        assert_eq!(json["mode"], "sample");
    }
}
