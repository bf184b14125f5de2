use super::bigfloat::{BigFloat, Round};
use super::interval::RealInterval;
use std::fmt;

/// Complex midpoint-radius enclosure: all points within distance `rad` of
/// `re + i*im` (Euclidean).
///
/// Center arithmetic is exact (dyadic); `compress` trims the center to a
/// working precision and folds the trimming error into the radius, so the
/// enclosure property is preserved across any sequence of operations.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigFloat,
    im: BigFloat,
    rad: BigFloat,
}

/// Radii carry little information; a short mantissa suffices.
pub const RAD_BITS: u32 = 32;

impl ComplexBall {
    pub fn exact(re: BigFloat, im: BigFloat) -> Self {
        ComplexBall { re, im, rad: BigFloat::zero() }
    }

    pub fn new(re: BigFloat, im: BigFloat, rad: BigFloat) -> Self {
        debug_assert!(rad.signum() >= 0);
        ComplexBall { re, im, rad }
    }

    pub fn zero() -> Self {
        ComplexBall::exact(BigFloat::zero(), BigFloat::zero())
    }

    /// Tight enclosure of a rational point on the real axis.
    pub fn from_rational(q: &num_rational::BigRational, prec: u32) -> Self {
        let iv = RealInterval::from_rational(q, prec);
        let half = iv.hi().sub(iv.lo()).mul_pow2(-1);
        let center = iv.lo().add(&half);
        ComplexBall {
            re: center,
            im: BigFloat::zero(),
            rad: half.round(RAD_BITS, Round::Up),
        }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn rad(&self) -> &BigFloat {
        &self.rad
    }

    /// Trim the center to `prec` bits, widening the radius by the error.
    pub fn compress(&self, prec: u32) -> Self {
        let re = self.re.round(prec, Round::Down);
        let im = self.im.round(prec, Round::Down);
        let err = self.re.sub(&re).abs().add(&self.im.sub(&im).abs());
        let rad = self.rad.add(&err).round(RAD_BITS, Round::Up);
        ComplexBall { re, im, rad }
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexBall {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
            rad: self.rad.add(&other.rad).round(RAD_BITS, Round::Up),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad.clone() }
    }

    /// Upper bound on the modulus of the center.
    fn center_modulus_upper(&self) -> BigFloat {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        sq.sqrt(RAD_BITS, Round::Up)
    }

    /// Ball product: centers multiply exactly, radius covers the cross terms
    /// |a| rb + |b| ra + ra rb.
    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            BigFloat::zero()
        } else {
            let ma = self.center_modulus_upper();
            let mb = other.center_modulus_upper();
            ma.mul(&other.rad)
                .add(&mb.mul(&self.rad))
                .add(&self.rad.mul(&other.rad))
                .round(RAD_BITS, Round::Up)
        };
        ComplexBall { re, im, rad }
    }

    /// Exact scaling by a dyadic real.
    pub fn scale(&self, s: &BigFloat) -> Self {
        ComplexBall {
            re: self.re.mul(s),
            im: self.im.mul(s),
            rad: self.rad.mul(&s.abs()).round(RAD_BITS, Round::Up),
        }
    }

    /// Certified enclosure of the modulus of every point in the ball.
    pub fn modulus(&self, prec: u32) -> RealInterval {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let lo = sq.sqrt(prec, Round::Down).sub(&self.rad);
        let lo = if lo.signum() < 0 { BigFloat::zero() } else { lo };
        let hi = sq.sqrt(prec, Round::Up).add(&self.rad);
        RealInterval::new(lo.round(prec, Round::Down), hi.round(prec, Round::Up))
    }

    pub fn contains_zero(&self) -> bool {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        sq.sqrt(RAD_BITS + 8, Round::Down) <= self.rad
    }

    /// Lower bound on |z - w| over all z in self, w in other.
    pub fn distance_lower(&self, other: &Self) -> BigFloat {
        let dre = self.re.sub(&other.re);
        let dim = self.im.sub(&other.im);
        let sq = dre.mul(&dre).add(&dim.mul(&dim));
        let d = sq.sqrt(RAD_BITS + 8, Round::Down);
        d.sub(&self.rad).sub(&other.rad)
    }

    /// True when the balls cannot share a point.
    pub fn disjoint_from(&self, other: &Self) -> bool {
        self.distance_lower(other).signum() > 0
    }

    /// True when the balls might share a point.
    pub fn intersects(&self, other: &Self) -> bool {
        !self.disjoint_from(other)
    }

    /// Reciprocal; requires the ball to exclude zero.
    ///
    /// For |z - c| <= r with |c| > r: |1/z - 1/c| <= r / (|c| (|c| - r)).
    pub fn inv(&self, prec: u32) -> Self {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let modulus_lo = sq.sqrt(prec + 8, Round::Down);
        assert!(modulus_lo > self.rad, "inverting a ball that may contain zero");
        // Center: conj(c) / |c|^2 with two-sided division, error into radius.
        let re_lo = self.re.div(&sq, prec + 8, Round::Down);
        let re_hi = self.re.div(&sq, prec + 8, Round::Up);
        let im_neg = self.im.neg();
        let im_lo = im_neg.div(&sq, prec + 8, Round::Down);
        let im_hi = im_neg.div(&sq, prec + 8, Round::Up);
        let center_err = re_hi.sub(&re_lo).add(&im_hi.sub(&im_lo));
        let denom = modulus_lo.mul(&modulus_lo.sub(&self.rad));
        let prop = self.rad.div(&denom, RAD_BITS, Round::Up);
        ComplexBall {
            re: re_lo,
            im: im_lo,
            rad: prop.add(&center_err).round(RAD_BITS, Round::Up),
        }
        .compress(prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        self.mul(&other.inv(prec)).compress(prec)
    }

    /// Integer power by repeated squaring, compressing along the way.
    pub fn pow_u64(&self, n: u64, prec: u32) -> Self {
        let mut result = ComplexBall::exact(BigFloat::one(), BigFloat::zero());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).compress(prec);
            }
            base = base.mul(&base).compress(prec);
            n >>= 1;
        }
        result
    }

    /// Whether every point of the ball has imaginary part of known sign or
    /// the ball certifiably straddles the real axis.
    pub fn im_interval(&self) -> RealInterval {
        RealInterval::new(self.im.sub(&self.rad), self.im.add(&self.rad))
    }

    pub fn re_interval(&self) -> RealInterval {
        RealInterval::new(self.re.sub(&self.rad), self.re.add(&self.rad))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ball({} {:+}i; r={})",
            self.re.to_f64(),
            self.im.to_f64(),
            self.rad.to_f64()
        )
    }
}
