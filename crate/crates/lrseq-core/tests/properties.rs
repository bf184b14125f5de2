//! Randomized invariants for the exact kernels: interval arithmetic always
//! encloses, heights obey the standard identities, rescaling is lossless,
//! released bounds are monotone in their ingredients, and decider verdicts
//! survive independent re-verification by exact iteration.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use lrseq_core::{
    bounds_from_parameters, bounds_from_parameters_at, decide_positivity, decide_skolem,
    density_scan, integer_rescaling, iterate_terms, matveev_lower, minimal_annihilator,
    root_profile, validate_lrs, weil_height_rational, Answer, BigFloat, BoundCase, BoundInputs,
    Family, IntPolynomial, LRSpec, Mode, Problem, Rational, RealInterval,
};

fn big_rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| big_rational(n, d))
}

/// A valid spec of order 1..=max_order: nonzero trailing coefficient, not
/// all initial terms zero. Minimality is not forced; the deciders reduce.
fn spec_strategy(max_order: usize) -> impl Strategy<Value = LRSpec> {
    (1..=max_order).prop_flat_map(|m| {
        (
            proptest::collection::vec(rational(), m),
            proptest::collection::vec(rational(), m),
        )
            .prop_map(move |(mut a, mut u)| {
                if a[m - 1].is_zero() {
                    a[m - 1] = Rational::one();
                }
                if u.iter().all(|x| x.is_zero()) {
                    u[0] = Rational::one();
                }
                validate_lrs(a, u).expect("constructed to satisfy the constraints")
            })
    })
}

/// Exactly representable dyadic a * 2^-k, so floating-point containment
/// checks are free of conversion error.
fn dyadic() -> impl Strategy<Value = BigFloat> {
    (-1_000_000i64..=1_000_000, 0i64..=8).prop_map(|(a, k)| BigFloat::new(BigInt::from(a), -k))
}

fn positive_dyadic() -> impl Strategy<Value = BigFloat> {
    (1i64..=1_000_000, 0i64..=8).prop_map(|(a, k)| BigFloat::new(BigInt::from(a), -k))
}

mod intervals {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        /// Coarse-precision sums and products still enclose the exact value
        /// (BigFloat add/sub/mul are exact, so the target is exact too).
        #[test]
        fn ring_ops_enclose(x in dyadic(), y in dyadic(), prec in 8u32..=64) {
            let ix = RealInterval::point(x.clone());
            let iy = RealInterval::point(y.clone());
            prop_assert!(ix.add(&iy, prec).contains(&x.add(&y)));
            prop_assert!(ix.sub(&iy, prec).contains(&x.sub(&y)));
            prop_assert!(ix.mul(&iy, prec).contains(&x.mul(&y)));
            let combo = ix.mul(&iy, prec).add(&ix, prec).sub(&iy, prec);
            prop_assert!(combo.contains(&x.mul(&y).add(&x).sub(&y)));
        }

        /// x/y times y must still enclose x; the reciprocal encloses 1.
        #[test]
        fn division_round_trips(x in dyadic(), y in dyadic(), prec in 8u32..=48) {
            prop_assume!(!y.is_zero());
            let ix = RealInterval::point(x.clone());
            let iy = RealInterval::point(y.clone());
            prop_assert!(ix.div(&iy, prec).mul(&iy, 256).contains(&x));
            prop_assert!(iy.recip(prec).mul(&iy, 256).contains(&BigFloat::one()));
        }

        /// The square of a sqrt enclosure covers the radicand.
        #[test]
        fn sqrt_squares_back(x in positive_dyadic(), prec in 8u32..=48) {
            let s = RealInterval::point(x.clone()).sqrt(prec);
            prop_assert!(s.mul(&s, 256).contains(&x));
        }

        /// ln(xy) and ln(x) + ln(y) enclose the same real number.
        #[test]
        fn ln_is_additive(x in positive_dyadic(), y in positive_dyadic()) {
            let sum = RealInterval::point(x.clone())
                .ln(48)
                .add(&RealInterval::point(y.clone()).ln(48), 48);
            let joint = RealInterval::point(x.mul(&y)).ln(48);
            prop_assert!(sum.overlaps(&joint));
        }

        /// Integer powers at low precision still enclose the exact power.
        #[test]
        fn pow_encloses(x in dyadic(), n in 0u64..=6, prec in 8u32..=48) {
            let mut exact = BigFloat::one();
            for _ in 0..n {
                exact = exact.mul(&x);
            }
            prop_assert!(RealInterval::point(x).pow_u64(n, prec).contains(&exact));
        }

        /// Compressing to fewer bits only widens the enclosure.
        #[test]
        fn compress_keeps_containment(x in dyadic(), y in dyadic()) {
            let i = RealInterval::point(x.clone()).mul(&RealInterval::point(y.clone()), 256);
            prop_assert!(i.compress(12).contains(&x.mul(&y)));
        }
    }
}

mod heights {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        /// h(q^n) = |n| h(q) for nonzero rationals, up to rounding.
        #[test]
        fn power_scales_height(n in -60i64..=60, d in 1i64..=50, e in -3i32..=3) {
            prop_assume!(n != 0);
            let q = big_rational(n, d);
            let h = weil_height_rational(&q).to_f64();
            let hp = weil_height_rational(&q.clone().pow(e)).to_f64();
            prop_assert!((hp - e.unsigned_abs() as f64 * h).abs() <= 1e-9 * (1.0 + hp.abs()));
        }

        /// h(q1 q2) <= h(q1) + h(q2) and h(q1 + q2) <= h(q1) + h(q2) + ln 2.
        #[test]
        fn height_is_subadditive(q1 in rational(), q2 in rational()) {
            let h1 = weil_height_rational(&q1).to_f64();
            let h2 = weil_height_rational(&q2).to_f64();
            let hm = weil_height_rational(&(&q1 * &q2)).to_f64();
            let hs = weil_height_rational(&(&q1 + &q2)).to_f64();
            prop_assert!(hm <= h1 + h2 + 1e-9);
            prop_assert!(hs <= h1 + h2 + std::f64::consts::LN_2 + 1e-9);
        }

        /// Heights are nonnegative and vanish exactly on 0 and the units.
        #[test]
        fn height_zero_iff_unit(q in rational()) {
            let h = weil_height_rational(&q).to_f64();
            prop_assert!(h >= 0.0);
            let unit = q.is_zero() || q == Rational::one() || q == -Rational::one();
            prop_assert_eq!(h == 0.0, unit);
        }
    }
}

mod sequences {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Streamed terms satisfy the defining recurrence exactly.
        #[test]
        fn terms_satisfy_recurrence(spec in spec_strategy(4)) {
            let m = spec.order();
            let terms = iterate_terms(&spec, m + 12);
            for n in 0..12 {
                let mut expect = Rational::zero();
                for (i, a) in spec.coefficients().iter().enumerate() {
                    expect += a * &terms[n + m - 1 - i];
                }
                prop_assert_eq!(&terms[n + m], &expect);
            }
        }

        /// The minimal annihilator reproduces the sequence and cannot be
        /// shortened further.
        #[test]
        fn minimal_annihilator_is_faithful(spec in spec_strategy(4)) {
            let reduced = minimal_annihilator(&spec);
            prop_assert!(reduced.order() <= spec.order());
            prop_assert!(reduced.is_minimal());
            let k = 2 * spec.order() + 8;
            prop_assert_eq!(iterate_terms(&reduced, k), iterate_terms(&spec, k));
        }

        /// z_n = L delta^n u_n is an integer sequence satisfying the integer
        /// recurrence, and term_from_z inverts the rescaling exactly.
        #[test]
        fn rescaling_round_trips(spec in spec_strategy(4)) {
            let resc = integer_rescaling(&spec);
            let m = spec.order();
            let mut z = resc.initial.clone();
            for n in m..m + 12 {
                let mut next = BigInt::zero();
                for (i, c) in resc.coefficients.iter().enumerate() {
                    next += c * &z[n - 1 - i];
                }
                z.push(next);
            }
            let terms = iterate_terms(&spec, m + 12);
            for (n, u) in terms.iter().enumerate() {
                let back = resc.term_from_z(n as u64, z[n].clone());
                prop_assert_eq!(&back, u);
                prop_assert_eq!(z[n].is_zero(), u.is_zero());
            }
        }
    }
}

mod released_bounds {
    use super::*;

    /// Bound ingredients derived from an actual integer characteristic
    /// polynomial, so height and coefficient sums are mutually consistent.
    fn inputs_strategy() -> impl Strategy<Value = BoundInputs> {
        (2usize..=4).prop_flat_map(|m| {
            (
                proptest::collection::vec(-9i64..=9, m - 1),
                proptest::collection::vec(0.0f64..4.0, m),
                prop_oneof![Just(1i64), Just(2), Just(-3), Just(7)],
                any::<bool>(),
                any::<bool>(),
                1u32..=2,
            )
                .prop_map(move |(mids, hs, last, irreducible, all_real, d)| {
                    let mut desc = vec![1i64];
                    desc.extend(mids);
                    desc.push(last);
                    let f = IntPolynomial::from_descending_i64(&desc);
                    BoundInputs {
                        m,
                        d,
                        heights_u: hs.into_iter().map(BigFloat::from_f64).collect(),
                        height_fstar: f.height(),
                        sumsq_fstar: f.sum_sq(),
                        irreducible,
                        all_real_roots: all_real,
                    }
                })
        })
    }

    fn case_for(m: usize) -> BoundCase {
        // m = 2 supports both cases; exercise the pair bound there and the
        // dominant bound above.
        if m == 2 {
            BoundCase::EqualModulus
        } else {
            BoundCase::Dominant
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Every released bound is a positive integer with floor <= ceiling.
        #[test]
        fn released_bounds_are_positive(inputs in inputs_strategy(), dominant in any::<bool>()) {
            let case = if dominant { BoundCase::Dominant } else { BoundCase::EqualModulus };
            let report = bounds_from_parameters(&inputs, case).unwrap();
            prop_assert!(report.bound.ceiling.is_positive());
            prop_assert!(report.bound.floor <= report.bound.ceiling);
            prop_assert!(&report.bound.ceiling - &report.bound.floor <= BigInt::one());
            prop_assert!(report.bound.log10 > 0.0);
        }

        /// Raising any height ingredient never shrinks the released bound.
        #[test]
        fn bounds_monotone_in_heights(inputs in inputs_strategy()) {
            let case = case_for(inputs.m);
            let base = bounds_from_parameters(&inputs, case).unwrap().bound.floor;
            let mut taller = inputs.clone();
            taller.heights_u = taller
                .heights_u
                .iter()
                .map(|h| h.add(&BigFloat::one()))
                .collect();
            let grown = bounds_from_parameters(&taller, case).unwrap().bound.floor;
            prop_assert!(grown >= base);
        }

        /// ... nor does raising the polynomial height, the coefficient sum,
        /// or the field degree.
        #[test]
        fn bounds_monotone_in_polynomial_data(inputs in inputs_strategy()) {
            let case = case_for(inputs.m);
            let base = bounds_from_parameters(&inputs, case).unwrap().bound.floor;

            let mut higher = inputs.clone();
            higher.height_fstar += BigInt::from(3);
            prop_assert!(bounds_from_parameters(&higher, case).unwrap().bound.floor >= base);

            let mut heavier = inputs.clone();
            heavier.sumsq_fstar *= BigInt::from(4);
            prop_assert!(bounds_from_parameters(&heavier, case).unwrap().bound.floor >= base);

            let mut wider = inputs.clone();
            wider.d *= 2;
            prop_assert!(bounds_from_parameters(&wider, case).unwrap().bound.floor >= base);
        }

        /// An irreducibility certificate can only tighten the bound.
        #[test]
        fn irreducibility_never_loosens(inputs in inputs_strategy()) {
            let case = case_for(inputs.m);
            let mut generic = inputs.clone();
            generic.irreducible = false;
            let mut certified = inputs;
            certified.irreducible = true;
            let loose = bounds_from_parameters(&generic, case).unwrap().bound.floor;
            let tight = bounds_from_parameters(&certified, case).unwrap().bound.floor;
            prop_assert!(tight <= loose);
        }

        /// Recomputing at 4x working precision never raises the ceiling:
        /// released values are honest outer enclosures.
        #[test]
        fn release_tightens_with_precision(inputs in inputs_strategy(), dominant in any::<bool>()) {
            let case = if dominant { BoundCase::Dominant } else { BoundCase::EqualModulus };
            let coarse = bounds_from_parameters(&inputs, case).unwrap();
            let fine = bounds_from_parameters_at(&inputs, case, 768).unwrap();
            prop_assert!(fine.bound.ceiling <= coarse.bound.ceiling);
            prop_assert!((fine.bound.log10 - coarse.bound.log10).abs()
                <= 1e-6 * (1.0 + coarse.bound.log10.abs()));
        }

        /// The Matveev floor is strictly negative and deepens as the
        /// exponent bound grows.
        #[test]
        fn matveev_is_negative_and_monotone(
            a1 in 1i64..=1_000,
            a2 in 1i64..=1_000,
            b in 2i64..=1_000_000,
        ) {
            let heights = [BigFloat::from_i64(a1), BigFloat::from_i64(a2)];
            let shallow = matveev_lower(2, 2, &heights, &BigFloat::from_i64(b));
            let deep = matveev_lower(2, 2, &heights, &BigFloat::from_i64(2 * b));
            prop_assert_eq!(shallow.signum(), -1);
            prop_assert!(deep.to_f64() <= shallow.to_f64());
        }
    }
}

mod root_structure {
    use super::*;

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        (2usize..=4).prop_flat_map(|m| {
            (
                proptest::collection::vec(-9i64..=9, m - 1),
                prop_oneof![Just(1i64), Just(-1), Just(5), Just(-7)],
            )
                .prop_map(|(mids, last)| {
                    let mut desc = vec![1i64];
                    desc.extend(mids);
                    desc.push(last);
                    IntPolynomial::from_descending_i64(&desc)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Multiplicities add up to the degree, groups are certifiably
        /// separated in modulus, and the dominance flag matches k_max.
        #[test]
        fn profile_accounts_for_every_root(f in poly_strategy()) {
            let profile = root_profile(&f, false).unwrap();
            let total: u32 = profile.boxes.iter().map(|b| b.multiplicity).sum();
            prop_assert_eq!(total as usize, f.degree());

            let grouped: usize = profile.groups.iter().map(Vec::len).sum();
            prop_assert_eq!(grouped, profile.boxes.len());

            let top: u32 = profile.groups[0]
                .iter()
                .map(|&i| profile.boxes[i].multiplicity)
                .sum();
            prop_assert_eq!(top, profile.k_max);
            if profile.dominant {
                prop_assert_eq!(profile.k_max, 1);
            }

            for w in profile.groups.windows(2) {
                let hi = &profile.moduli[w[0][0]];
                let lo = &profile.moduli[w[1][0]];
                prop_assert!(lo.strictly_below(hi));
            }

            for (i, b) in profile.boxes.iter().enumerate() {
                if let Some(j) = b.conj_partner {
                    prop_assert!(!b.is_real);
                    prop_assert_ne!(j, i);
                    prop_assert_eq!(profile.boxes[j].conj_partner, Some(i));
                }
            }
        }

        /// The Sturm count agrees with the certified isolation's real boxes.
        #[test]
        fn sturm_matches_isolation(f in poly_strategy()) {
            let profile = root_profile(&f, false).unwrap();
            let real = profile.boxes.iter().filter(|b| b.is_real).count();
            prop_assert_eq!(f.distinct_real_roots(), real);
        }
    }
}

mod verdicts {
    use super::*;

    fn verify_witness(spec: &LRSpec, index: u64, value: &Rational) -> Result<(), TestCaseError> {
        let terms = iterate_terms(spec, index as usize + 1);
        prop_assert_eq!(&terms[index as usize], value);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// Whatever the Skolem decider answers, exact iteration agrees.
        #[test]
        fn skolem_verdicts_survive_reverification(spec in spec_strategy(3)) {
            let v = decide_skolem(&spec, 500, Mode::Plain).unwrap();
            prop_assert_eq!(v.problem, Problem::SP);
            match v.answer {
                Answer::ZeroAt(n) => {
                    let w = v.witness.expect("zero verdicts carry a witness");
                    prop_assert_eq!(w.index, n);
                    prop_assert!(w.value.is_zero());
                    verify_witness(&spec, n, &Rational::zero())?;
                }
                Answer::NoZero => {
                    // Order-1 refusals carry no range; any prefix of a true
                    // NoZero must be free of zeros either way.
                    let upto = v.scanned.map_or(100, |(_, hi)| hi.min(3_000));
                    for t in iterate_terms(&spec, upto as usize + 1) {
                        prop_assert!(!t.is_zero());
                    }
                }
                Answer::Unknown => prop_assert!(v.reason.is_some()),
                Answer::Yes | Answer::No => prop_assert!(false, "SP answers in zero vocabulary"),
            }
        }

        /// Positivity witnesses are exact terms; Yes verdicts have a
        /// positive prefix.
        #[test]
        fn positivity_verdicts_survive_reverification(spec in spec_strategy(3)) {
            let v = decide_positivity(&spec, 500, Mode::Plain).unwrap();
            prop_assert_eq!(v.problem, Problem::PP);
            match v.answer {
                Answer::No => {
                    let w = v.witness.expect("refutations carry a witness");
                    prop_assert!(!w.value.is_positive());
                    if w.index <= 3_000 {
                        verify_witness(&spec, w.index, &w.value)?;
                    }
                }
                Answer::Yes => {
                    for t in iterate_terms(&spec, 300) {
                        prop_assert!(t.is_positive());
                    }
                }
                Answer::Unknown => prop_assert!(v.reason.is_some()),
                _ => prop_assert!(false, "PP answers yes/no/unknown"),
            }
        }
    }
}

mod family_counts {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// The k_max buckets cover the box (exactly, once a nonzero root is
        /// guaranteed) and fractions are exact count ratios.
        #[test]
        fn tallies_partition_the_box(
            m in 1usize..=2,
            h in 1u32..=2,
            general in any::<bool>(),
            samples in proptest::option::of(20u64..=60),
            seed in any::<u64>(),
        ) {
            let family = if general { Family::General } else { Family::Monic };
            let r = density_scan(m, h, family, samples, seed);
            let bucketed = r.dominant + r.two_max + r.three_plus;
            prop_assert!(bucketed <= r.total);
            prop_assert!(r.degenerate <= r.total);
            prop_assert_eq!(r.fraction_dominant, r.dominant as f64 / r.total as f64);
            prop_assert_eq!(r.fraction_two_max, r.two_max as f64 / r.total as f64);
            prop_assert_eq!(r.fraction_degenerate, r.degenerate as f64 / r.total as f64);
            let side = 2 * u64::from(h) + 1;
            if m >= 2 {
                // c X^m still lands in a k_max bucket, so the cover is exact.
                prop_assert_eq!(bucketed, r.total);
            } else {
                // A single root never ties; only c X escapes every bucket.
                prop_assert_eq!(r.two_max + r.three_plus, 0);
                if samples.is_none() {
                    let escapees = if general { side - 1 } else { 1 };
                    prop_assert_eq!(r.dominant, r.total - escapees);
                }
            }
            match samples {
                Some(n) => prop_assert_eq!(r.total, n),
                None => prop_assert_eq!(
                    r.total,
                    if general { side - 1 } else { 1 } * side.pow(m as u32)
                ),
            }
        }
    }
}
