//! Explicit term-count bounds for the zero/positivity scans, with
//! upward-directed rounding throughout.
//!
//! Every released value is the upper endpoint of an interval enclosure, so
//! the true bound never exceeds the released ceiling. Order-2 sequences get
//! the quadratic bounds N3/N4; higher orders get N1 (dominant root) or N2
//! (two maximal roots, SP only).

use crate::error::{Error, Result};
use crate::lrs::{primitive_char_poly, weil_height_rational, LRSpec};
use crate::poly::{irreducibility_certificate, Irreducibility};
use crate::rigor::{ln_enclosure, pi, BigFloat, RealInterval};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Working precision for bound evaluation; tests recompute at 4x this.
pub const BOUND_PRECISION: u32 = 192;

/// The numeric ingredients of the term-count bounds.
///
/// `d` is the degree of the number field generated by the sequence data;
/// rational input always has d = 1, but the field is kept open so callers
/// with algebraic parameters can supply their own.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub m: usize,
    pub d: u32,
    /// Upper bounds on the Weil heights h(u_0)..h(u_{m-1}).
    pub heights_u: Vec<BigFloat>,
    /// Height of the primitive characteristic polynomial f*.
    pub height_fstar: BigInt,
    /// Sum of the squared coefficients of f*.
    pub sumsq_fstar: BigInt,
    pub irreducible: bool,
    pub all_real_roots: bool,
}

impl BoundInputs {
    /// Extract the bound ingredients from a validated sequence.
    ///
    /// Irreducibility is only claimed when certified by a small-prime
    /// reduction; the flag stays false otherwise, which keeps every
    /// downstream bound valid (merely looser). Realness of all roots is
    /// decided exactly by Sturm counting on the squarefree part.
    pub fn from_spec(spec: &LRSpec) -> Self {
        let (fstar, _) = primitive_char_poly(spec);
        let heights_u = spec.initial_terms().iter().map(weil_height_rational).collect();
        let (sf, _) = fstar.squarefree_part();
        let all_real_roots = sf.distinct_real_roots() == sf.degree();
        let irreducible =
            matches!(irreducibility_certificate(&fstar), Irreducibility::Proven { .. });
        BoundInputs {
            m: spec.order(),
            d: 1,
            heights_u,
            height_fstar: fstar.height(),
            sumsq_fstar: fstar.sum_sq(),
            irreducible,
            all_real_roots,
        }
    }
}

/// Which root configuration a bound request targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    Dominant,
    EqualModulus,
}

/// A released term-count bound: an exact integer ceiling, the matching scan
/// limit (floor), a log10 view, and the named intermediate quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct BigBound {
    /// Exact integer upper bound on the real bound value.
    pub ceiling: BigInt,
    /// Scan limit: the decider tests indices 0..=floor.
    pub floor: BigInt,
    pub log10: f64,
    pub components: BTreeMap<String, f64>,
}

/// A BigBound tagged with the statement it instantiates.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: String,
    pub bound: BigBound,
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("theorem", &self.theorem)?;
        map.serialize_entry("floor", &self.bound.floor.to_string())?;
        // f64::INFINITY has no JSON representation; serde_json emits null,
        // which readers treat as "too large to display".
        map.serialize_entry("log10", &self.bound.log10)?;
        map.serialize_entry("components", &self.bound.components)?;
        map.end()
    }
}

// ---------------------------------------------------------------------------
// Interval helpers. All quantities are positive; released values take hi().

fn iv_int(v: i64) -> RealInterval {
    RealInterval::from_i64(v)
}

fn iv_big(v: &BigInt) -> RealInterval {
    RealInterval::from_bigint(v)
}

fn factorial(m: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=m {
        f *= k;
    }
    f
}

/// Sum of initial-term heights as a point-interval (inputs are already
/// upper bounds, so treating them as exact keeps the result an upper bound).
fn height_sum(inputs: &BoundInputs, prec: u32) -> RealInterval {
    let mut s = RealInterval::zero();
    for h in &inputs.heights_u {
        s = s.add(&RealInterval::point(h.clone()), prec);
    }
    s
}

/// ln(sum of squared coefficients of f*).
fn ln_sumsq(inputs: &BoundInputs, prec: u32) -> RealInterval {
    ln_enclosure(&BigFloat::from_bigint(&inputs.sumsq_fstar), prec)
}

/// Shared core of B(u) and C1/C2:
///   scale * d * m! * ( sum h(u_i) + (3/2) k ln(sumsq) + (3/2)m^2 - m/2 + tail )
/// where k = m^2 generically and k = m under an irreducibility certificate.
fn height_core(inputs: &BoundInputs, scale: i64, tail: i64, prec: u32) -> RealInterval {
    let m = inputs.m as i64;
    let k = if inputs.irreducible { m } else { m * m };
    let log_term = iv_int(3 * k)
        .mul(&ln_sumsq(inputs, prec), prec)
        .mul_pow2(-1);
    // (3m^2 - m)/2 + tail, as an exact dyadic-friendly combination.
    let poly_term = iv_int(3 * m * m - m).mul_pow2(-1).add(&iv_int(tail), prec);
    let inner = height_sum(inputs, prec).add(&log_term, prec).add(&poly_term, prec);
    let front = factorial(inputs.m) * BigInt::from(scale) * BigInt::from(inputs.d);
    iv_big(&front).mul(&inner, prec)
}

fn b_height_interval(inputs: &BoundInputs, prec: u32) -> Result<RealInterval> {
    if inputs.m < 2 {
        return Err(Error::OrderTooSmall { m: inputs.m });
    }
    Ok(height_core(inputs, 1, -1, prec))
}

/// Height bound B(u) on ln|b_j| for the exponential-sum coefficients,
/// upward rounded.
pub fn b_height_bound(inputs: &BoundInputs) -> Result<BigFloat> {
    Ok(b_height_interval(inputs, BOUND_PRECISION)?.hi().clone())
}

/// C1 (generic) or C2 (irreducible): the multiplier carrying the height data.
fn c_factor(inputs: &BoundInputs, prec: u32) -> RealInterval {
    height_core(inputs, 4, 0, prec)
}

fn to_display(x: &RealInterval) -> f64 {
    x.hi().to_f64()
}

fn c_component_name(inputs: &BoundInputs) -> &'static str {
    if inputs.irreducible {
        "C2"
    } else {
        "C1"
    }
}

/// Package an enclosure of a bound value, recording components.
fn release(value: &RealInterval, components: BTreeMap<String, f64>) -> BigBound {
    let hi = value.hi();
    let ceiling = hi.ceil_bigint();
    let floor = hi.floor_bigint();
    debug_assert!(ceiling.is_positive(), "term-count bounds are positive");
    let ln10 = ln_enclosure(&BigFloat::from_i64(10), 80);
    let log10 = ln_enclosure(&BigFloat::from_bigint(&ceiling), 80)
        .div(&ln10, 80)
        .to_f64_mid();
    BigBound { ceiling, floor, log10, components }
}

/// N1: the dominant-root bound covering SP, PP and UPP for m >= 3.
///
/// Generic form 2^{m(m-1)(m-2)/2} (m+1)^{m(m-1)+6} H^{2m(m-1)+2} C; under an
/// irreducibility certificate with all roots real, the alternative
/// (2m+1)^{3m} H^{4m-1} C2 also applies and the smaller is released.
pub fn n1_bound(inputs: &BoundInputs) -> Result<BigBound> {
    n1_bound_at(inputs, BOUND_PRECISION)
}

pub fn n1_bound_at(inputs: &BoundInputs, prec: u32) -> Result<BigBound> {
    if inputs.m < 3 {
        return Err(Error::OrderTooSmall { m: inputs.m });
    }
    let m = inputs.m;
    let c = c_factor(inputs, prec);
    let h = &inputs.height_fstar;

    let two_exp = m * (m - 1) * (m - 2) / 2;
    let prefactor = (BigInt::one() << two_exp)
        * BigInt::from(m as u64 + 1).pow((m * (m - 1) + 6) as u32)
        * h.pow((2 * m * (m - 1) + 2) as u32);
    let generic = iv_big(&prefactor).mul(&c, prec);

    let mut components = BTreeMap::new();
    components.insert("B".into(), to_display(&b_height_interval(inputs, prec)?));
    components.insert(c_component_name(inputs).into(), to_display(&c));
    components.insert("r".into(), to_display(&separation_r(inputs, prec)));
    components.insert("N1_generic".into(), to_display(&generic));

    let released = if inputs.irreducible && inputs.all_real_roots {
        let alt_prefactor =
            BigInt::from(2 * m as u64 + 1).pow(3 * m as u32) * h.pow(4 * m as u32 - 1);
        let all_real = iv_big(&alt_prefactor).mul(&c, prec);
        components.insert("N1_all_real".into(), to_display(&all_real));
        if all_real.hi() < generic.hi() {
            all_real
        } else {
            generic
        }
    } else {
        generic
    };
    Ok(release(&released, components))
}

/// The root-separation quantity r(u) behind N1 (one real root among equal
/// moduli): 2^{-m(m-1)(m-2)/2} (m+1)^{-m(m-1)-6} H^{-2m(m-1)-1}.
fn separation_r(inputs: &BoundInputs, prec: u32) -> RealInterval {
    let m = inputs.m;
    let two_exp = m * (m - 1) * (m - 2) / 2;
    let denom = (BigInt::one() << two_exp)
        * BigInt::from(m as u64 + 1).pow((m * (m - 1) + 6) as u32)
        * inputs.height_fstar.pow((2 * m * (m - 1) + 1) as u32);
    iv_big(&denom).recip(prec)
}

/// The general pairwise separation s(u) behind N2:
/// 2^{-m(m-1)(m-2)} (m+1)^{-m^3/4+3m/4-6} H^{-m^3+m^2+m/2-2}.
fn separation_s(inputs: &BoundInputs, prec: u32) -> RealInterval {
    let m = inputs.m as i64;
    let two_exp = m * (m - 1) * (m - 2);
    let two = iv_int(2).pow_u64(two_exp as u64, prec).recip(prec);
    // (m+1)^{-(m^3-3m)/4 - 6}: m^3-3m is even but not always divisible by 4,
    // so route through half-steps on (m+1)^{1/2}.
    let mp1 = iv_int(m + 1);
    let mp1_twice = -(m.pow(3) - 3 * m) / 2 - 12;
    let mp1_pow = mp1.pow_half_steps(mp1_twice, prec);
    let h = iv_big(&inputs.height_fstar);
    let h_pow = h
        .pow_u64((m.pow(3) - m * m - m / 2 + 2).unsigned_abs(), prec)
        .recip(prec);
    debug_assert!(m.pow(3) - m * m - m / 2 + 2 > 0);
    two.mul(&mp1_pow, prec).mul(&h_pow, prec)
}

/// N2: the two-maximal-root bound (SP only) for m >= 3.
///
/// N2 = 2 C3 ln C3 with C3 = F(m,d) H^{m^3-m^2-m/2+3.5} C and
/// F(m,d) = 2^{m(m-1)(m-2)+42} pi (m! d)^{3.5} (m+1)^{m^3/4-3m/4+6.5}.
pub fn n2_bound(inputs: &BoundInputs) -> Result<BigBound> {
    n2_bound_at(inputs, BOUND_PRECISION)
}

pub fn n2_bound_at(inputs: &BoundInputs, prec: u32) -> Result<BigBound> {
    if inputs.m < 3 {
        return Err(Error::OrderTooSmall { m: inputs.m });
    }
    let m = inputs.m as i64;
    let c = c_factor(inputs, prec);

    let two_exp = (m * (m - 1) * (m - 2) + 42) as usize;
    let md = factorial(inputs.m) * BigInt::from(inputs.d);
    let md_pow = iv_big(&md).pow_half_steps(7, prec);
    // (m+1)^{(m^3-3m)/4 + 6.5}; the doubled exponent (m^3-3m)/2 + 13 is integral.
    let mp1_pow = iv_int(m + 1).pow_half_steps((m.pow(3) - 3 * m) / 2 + 13, prec);
    let f = iv_big(&(BigInt::one() << two_exp))
        .mul(&pi(prec), prec)
        .mul(&md_pow, prec)
        .mul(&mp1_pow, prec);

    // H^{m^3-m^2-m/2+3.5}: doubled exponent 2m^3-2m^2-m+7.
    let h_pow = iv_big(&inputs.height_fstar).pow_half_steps(2 * m.pow(3) - 2 * m * m - m + 7, prec);
    let c3 = f.mul(&h_pow, prec).mul(&c, prec);
    let n2 = iv_int(2).mul(&c3, prec).mul(&c3.ln(prec), prec);

    let mut components = BTreeMap::new();
    components.insert("B".into(), to_display(&b_height_interval(inputs, prec)?));
    components.insert(c_component_name(inputs).into(), to_display(&c));
    components.insert("s".into(), to_display(&separation_s(inputs, prec)));
    components.insert("F".into(), to_display(&f));
    components.insert("C3".into(), to_display(&c3));
    Ok(release(&n2, components))
}

/// N3/N4: the order-2 bounds. N3 = 4 d H^2 S (dominant root) and N4 = 8 d S
/// (equal-modulus pair) with S = h(u_0) + h(u_1) + (3/2) ln(sumsq) + 3/2.
pub fn n3_n4_bound(inputs: &BoundInputs, case: BoundCase) -> Result<BigBound> {
    n3_n4_bound_at(inputs, case, BOUND_PRECISION)
}

pub fn n3_n4_bound_at(inputs: &BoundInputs, case: BoundCase, prec: u32) -> Result<BigBound> {
    if inputs.m != 2 {
        return Err(Error::OrderMismatch { expected: 2, got: inputs.m });
    }
    let three_halves = iv_int(3).mul_pow2(-1);
    let s = height_sum(inputs, prec)
        .add(&three_halves.mul(&ln_sumsq(inputs, prec), prec), prec)
        .add(&three_halves, prec);
    let front = match case {
        BoundCase::Dominant => BigInt::from(4 * inputs.d) * inputs.height_fstar.pow(2),
        BoundCase::EqualModulus => BigInt::from(8 * inputs.d),
    };
    let n = iv_big(&front).mul(&s, prec);
    let mut components = BTreeMap::new();
    components.insert("height_sum".into(), to_display(&s));
    Ok(release(&n, components))
}

/// Matveev-type lower bound on a nonzero linear form in logarithms:
/// returns -2^{6k+20} D^2 A_1..A_k ln(eD) ln(eB), rounded toward minus
/// infinity so the returned value never exceeds the true bound.
pub fn matveev_lower(k: u32, big_d: u32, a: &[BigFloat], b: &BigFloat) -> BigFloat {
    assert_eq!(a.len(), k as usize, "one height per logarithm");
    assert!(k >= 2);
    let prec = BOUND_PRECISION;
    let one = iv_int(1);
    let ln_ed = ln_enclosure(&BigFloat::from_i64(big_d as i64), prec).add(&one, prec);
    let ln_eb = ln_enclosure(b, prec).add(&one, prec);
    let mut mag = iv_big(&(BigInt::one() << (6 * k + 20)))
        .mul(&iv_int((big_d as i64) * (big_d as i64)), prec)
        .mul(&ln_ed, prec)
        .mul(&ln_eb, prec);
    for aj in a {
        mag = mag.mul(&RealInterval::point(aj.clone()), prec);
    }
    mag.hi().neg()
}

/// Entry point: dispatch on order and case, naming the statement applied.
pub fn bounds_from_parameters(inputs: &BoundInputs, case: BoundCase) -> Result<BoundReport> {
    bounds_from_parameters_at(inputs, case, BOUND_PRECISION)
}

pub fn bounds_from_parameters_at(
    inputs: &BoundInputs,
    case: BoundCase,
    prec: u32,
) -> Result<BoundReport> {
    if inputs.m < 2 {
        return Err(Error::OrderTooSmall { m: inputs.m });
    }
    if inputs.m == 2 {
        let theorem = match case {
            BoundCase::Dominant => "3.3/N3",
            BoundCase::EqualModulus => "3.3/N4",
        };
        return Ok(BoundReport {
            theorem: theorem.into(),
            bound: n3_n4_bound_at(inputs, case, prec)?,
        });
    }
    match case {
        BoundCase::Dominant => Ok(BoundReport {
            theorem: "3.1/N1".into(),
            bound: n1_bound_at(inputs, prec)?,
        }),
        BoundCase::EqualModulus => Ok(BoundReport {
            theorem: "3.2/N2".into(),
            bound: n2_bound_at(inputs, prec)?,
        }),
    }
}
