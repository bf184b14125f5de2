use super::bigfloat::{BigFloat, Round};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;

/// Closed real interval `[lo, hi]` with outward-rounded endpoints.
///
/// Every operation takes a working precision `prec`; endpoints are computed
/// exactly where the dyadic representation allows and rounded outward (lo
/// down, hi up) where it does not, so the result always contains the true
/// value of the operation applied to any points of the inputs.
#[derive(Clone, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigFloat,
    hi: BigFloat,
}

impl RealInterval {
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RealInterval { lo, hi }
    }

    pub fn point(x: BigFloat) -> Self {
        RealInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        RealInterval::point(BigFloat::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        RealInterval::point(BigFloat::from_i64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        RealInterval::point(BigFloat::from_bigint(v))
    }

    /// Tight enclosure of a rational number at `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = BigFloat::from_bigint(q.numer());
        let d = BigFloat::from_bigint(q.denom());
        RealInterval::new(n.div(&d, prec, Round::Down), n.div(&d, prec, Round::Up))
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    /// Round endpoints outward to `prec` bits.
    pub fn compress(&self, prec: u32) -> Self {
        RealInterval::new(self.lo.round(prec, Round::Down), self.hi.round(prec, Round::Up))
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        RealInterval::new(self.lo.add(&other.lo), self.hi.add(&other.hi)).compress(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        RealInterval::new(self.lo.sub(&other.hi), self.hi.sub(&other.lo)).compress(prec)
    }

    pub fn neg(&self) -> Self {
        RealInterval::new(self.hi.neg(), self.lo.neg())
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = if self.lo.neg() > self.hi { self.lo.neg() } else { self.hi.clone() };
            RealInterval::new(BigFloat::zero(), m)
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RealInterval::new(lo, hi).compress(prec)
    }

    /// Exact scaling by 2^k (positive scalar, order preserved).
    pub fn mul_pow2(&self, k: i64) -> Self {
        RealInterval::new(self.lo.mul_pow2(k), self.hi.mul_pow2(k))
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self, prec: u32) -> Self {
        assert!(!self.contains_zero(), "reciprocal of interval containing zero");
        let one = BigFloat::one();
        RealInterval::new(one.div(&self.hi, prec, Round::Down), one.div(&self.lo, prec, Round::Up))
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        self.mul(&other.recip(prec + 4), prec)
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self, prec: u32) -> Self {
        RealInterval::new(self.lo.sqrt(prec, Round::Down), self.hi.sqrt(prec, Round::Up))
    }

    /// Integer power by repeated squaring.
    pub fn pow_u64(&self, n: u64, prec: u32) -> Self {
        let mut result = RealInterval::point(BigFloat::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, prec);
            }
            base = base.mul(&base, prec);
            n >>= 1;
        }
        result
    }

    /// `x^(twice/2)` for a positive interval; `twice` may be negative or odd.
    ///
    /// All exponents in the bound formulas are integers or half-integers, so
    /// they are passed around as `2 * exponent` to stay exact.
    pub fn pow_half_steps(&self, twice: i64, prec: u32) -> Self {
        assert!(self.lo.signum() > 0, "pow_half_steps needs a positive base");
        let mag = twice.unsigned_abs();
        let whole = self.pow_u64(mag / 2, prec);
        let p = if mag % 2 == 1 { whole.mul(&self.sqrt(prec), prec) } else { whole };
        if twice < 0 {
            p.recip(prec)
        } else {
            p
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo)
    }

    /// True if `self.hi < other.lo` (every point below every point).
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !(self.strictly_below(other) || other.strictly_below(self))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        RealInterval::new(
            if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        )
    }

    pub fn contains(&self, x: &BigFloat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn to_f64_mid(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self, prec: u32) -> Self {
        assert!(self.lo.signum() > 0, "ln of interval touching zero");
        let lo = ln_enclosure(&self.lo, prec);
        let hi = ln_enclosure(&self.hi, prec);
        RealInterval::new(lo.lo, hi.hi)
    }

    /// Ordering against another interval when certain, None when overlapping.
    pub fn certain_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.strictly_below(other) {
            Some(Ordering::Less)
        } else if other.strictly_below(self) {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Certified enclosure of ln(2) at `prec` bits via 2*atanh(1/3).
pub fn ln2(prec: u32) -> RealInterval {
    let w = prec + 16;
    let third = RealInterval::from_i64(1).div(&RealInterval::from_i64(3), w);
    atanh_small(&third, w).mul_pow2(1).compress(prec)
}

/// Certified enclosure of ln(x) for a positive dyadic x.
pub fn ln_enclosure(x: &BigFloat, prec: u32) -> RealInterval {
    assert!(x.signum() > 0, "ln of non-positive value");
    let w = prec + 16;
    // x = m * 2^k with m in [1, 2).
    let k = x.msb_position() - 1;
    let m = x.mul_pow2(-k);
    let one = BigFloat::one();
    let mut result = RealInterval::zero();
    if m != one {
        let num = RealInterval::point(m.sub(&one));
        let den = RealInterval::point(m.add(&one));
        let t = num.div(&den, w);
        result = atanh_small(&t, w).mul_pow2(1);
    }
    if k != 0 {
        let kl = ln2(w).mul(&RealInterval::from_i64(k), w);
        result = result.add(&kl, w);
    }
    result.compress(prec)
}

/// atanh(t) = sum t^(2i+1)/(2i+1) for an interval t inside [0, 1/2].
///
/// The geometric tail after the term with exponent 2i+1 is bounded by
/// t^(2i+3)/(1-t^2) <= (4/3) * next_term_hi, which is added to the upper end.
fn atanh_small(t: &RealInterval, w: u32) -> RealInterval {
    assert!(t.lo().signum() >= 0, "atanh_small expects non-negative t");
    assert!(t.hi() < &BigFloat::from_f64(0.51), "atanh_small expects t <= 1/2");
    let tsq = t.mul(t, w);
    let mut power = t.clone(); // t^(2i+1)
    let mut sum = t.clone();
    let mut i = 1u64;
    loop {
        power = power.mul(&tsq, w);
        let term = power.div(&RealInterval::from_i64((2 * i + 1) as i64), w);
        sum = sum.add(&term, w);
        // Stop when the next term cannot move the sum at this precision.
        let next_hi = power.hi().mul(tsq.hi());
        if next_hi.is_zero() || next_hi.log2_abs_f64() < -(w as f64) - 4.0 {
            // Tail bound: sum_{j>i} t^(2j+1)/(2j+1) <= t^(2i+3)/(1 - t^2) and
            // t <= 1/2 makes 1/(1-t^2) <= 4/3 <= 2.
            let tail = BigFloat::from_f64(2.0).mul(&next_hi);
            sum = RealInterval::new(sum.lo().clone(), sum.hi().add(&tail));
            return sum;
        }
        i += 1;
    }
}

/// Certified enclosure of pi via Machin's formula.
pub fn pi(prec: u32) -> RealInterval {
    let w = prec + 16;
    let a = atan_inverse_int(5, w);
    let b = atan_inverse_int(239, w);
    a.mul_pow2(4).sub(&b.mul_pow2(2), w).compress(prec)
}

/// atan(1/q) for integer q >= 2, by the alternating Maclaurin series.
fn atan_inverse_int(q: i64, w: u32) -> RealInterval {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut qpow = BigInt::from(q); // q^(2i+1)
    let mut sum = RealInterval::zero();
    let mut i: i64 = 0;
    loop {
        let denom = BigInt::from(2 * i + 1) * &qpow;
        let term = RealInterval::from_i64(1).div(&RealInterval::from_bigint(&denom), w);
        sum = if i % 2 == 0 { sum.add(&term, w) } else { sum.sub(&term, w) };
        qpow *= &q2;
        // Alternating series: the remainder is bounded by the next term.
        let next = BigInt::from(2 * i + 3) * &qpow;
        if next.bits() as i64 > w as i64 + 4 {
            let slack = BigFloat::one().div(&BigFloat::from_bigint(&next), 32, Round::Up);
            sum = RealInterval::new(sum.lo().sub(&slack), sum.hi().add(&slack));
            return sum;
        }
        i += 1;
    }
}
