use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for operations that cannot stay exact.
///
/// `Down` rounds toward negative infinity, `Up` toward positive infinity,
/// on the value (not the magnitude). Interval endpoints use `Down` for the
/// lower end and `Up` for the upper end, which is what makes every interval
/// result an enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Exact dyadic number `mantissa * 2^exp`.
///
/// Addition, subtraction and multiplication are exact; only `round`, `div`
/// and `sqrt` lose information, and those take an explicit [`Round`]. The
/// mantissa is kept free of trailing zero bits so representations are
/// canonical and equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        let mut x = BigFloat { mantissa, exp };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa = &self.mantissa >> tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        BigFloat { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mantissa: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        BigFloat::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        BigFloat::new(v.clone(), 0)
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "BigFloat::from_f64 needs a finite value");
        if v == 0.0 {
            return BigFloat::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigFloat::new(BigInt::from(sign * mant as i64), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mantissa: -&self.mantissa, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    /// Number of significant bits in the mantissa (0 for zero).
    pub fn precision_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Position of the most significant bit: the magnitude lies in
    /// `[2^(msb-1), 2^msb)`. Meaningless for zero.
    pub fn msb_position(&self) -> i64 {
        self.mantissa.bits() as i64 + self.exp
    }

    /// Exact addition.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &other.mantissa << (other.exp - e) as u64;
        BigFloat::new(a + b, e)
    }

    /// Exact subtraction.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BigFloat::zero();
        }
        BigFloat::new(&self.mantissa * &other.mantissa, self.exp + other.exp)
    }

    /// Exact multiplication by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return BigFloat::zero();
        }
        BigFloat { mantissa: self.mantissa.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = shift_value(&self.mantissa, shift, dir);
        BigFloat::new(m, self.exp + shift as i64)
    }

    /// Directed division with `prec` bits of quotient mantissa.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "division by zero BigFloat");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let a_bits = self.mantissa.bits() as i64;
        let b_bits = other.mantissa.bits() as i64;
        // Scale the numerator so the integer quotient carries prec+2 bits.
        let scale = (prec as i64 + 2 - (a_bits - b_bits)).max(0) as u64;
        let num = &self.mantissa << scale;
        let (q, r) = num_integer::Integer::div_mod_floor(&num, &other.mantissa);
        // div_mod_floor gives the floor quotient; bump for upward rounding.
        let q = match dir {
            Round::Down => q,
            Round::Up => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        BigFloat::new(q, self.exp - other.exp - scale as i64).round(prec, dir)
    }

    /// Directed square root; requires a non-negative value.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative BigFloat");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let mut m = self.mantissa.clone();
        let mut e = self.exp;
        if e.rem_euclid(2) == 1 {
            m <<= 1u32;
            e -= 1;
        }
        let want = 2 * (prec as i64 + 2);
        let extra = (want - m.bits() as i64).max(0) as u64;
        let extra = extra + (extra & 1); // keep the exponent even
        m <<= extra;
        e -= extra as i64;
        let root = m.sqrt();
        let root = match dir {
            Round::Down => root,
            Round::Up => {
                if &root * &root == m {
                    root
                } else {
                    root + 1
                }
            }
        };
        BigFloat::new(root, e / 2).round(prec, dir)
    }

    /// Largest integer <= value.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mantissa << self.exp as u64
        } else {
            shift_value(&self.mantissa, (-self.exp) as u64, Round::Down)
        }
    }

    /// Smallest integer >= value.
    pub fn ceil_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mantissa << self.exp as u64
        } else {
            shift_value(&self.mantissa, (-self.exp) as u64, Round::Up)
        }
    }

    /// Nearest-ish `f64`; saturates to +/-infinity far outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let (top, shift) = if bits > 64 {
            let t = shift_value(&self.mantissa, bits - 64, Round::Down);
            (t, bits as i64 - 64)
        } else {
            (self.mantissa.clone(), 0)
        };
        let t = top.to_string().parse::<f64>().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 1_100 {
            return if self.signum() > 0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -1_200 {
            return if self.signum() > 0 { 0.0 } else { -0.0 };
        }
        t * 2f64.powi(e as i32)
    }

    /// log2 of |value| as f64, robust for values far outside f64 range.
    pub fn log2_abs_f64(&self) -> f64 {
        assert!(!self.is_zero());
        let bits = self.mantissa.bits();
        let take = bits.min(53);
        let top = shift_value(&self.mantissa.abs(), bits - take, Round::Down);
        let t = top.to_string().parse::<f64>().unwrap_or(1.0);
        t.log2() + (bits - take) as f64 + self.exp as f64
    }
}

/// Shift right by `shift` bits, rounding the value in direction `dir`.
fn shift_value(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let (sign, mag) = (m.sign(), m.magnitude());
    if sign == Sign::NoSign {
        return BigInt::zero();
    }
    let floor_mag;
    let had_rem;
    {
        let dropped = mag & &((BigUint::one() << shift) - 1u32);
        had_rem = !dropped.is_zero();
        floor_mag = mag >> shift;
    }
    match (sign, dir) {
        (Sign::Plus, Round::Down) => BigInt::from_biguint(Sign::Plus, floor_mag),
        (Sign::Plus, Round::Up) => {
            let m = if had_rem { floor_mag + 1u32 } else { floor_mag };
            BigInt::from_biguint(Sign::Plus, m)
        }
        (Sign::Minus, Round::Down) => {
            let m = if had_rem { floor_mag + 1u32 } else { floor_mag };
            BigInt::from_biguint(Sign::Minus, m)
        }
        (Sign::Minus, Round::Up) => BigInt::from_biguint(Sign::Minus, floor_mag),
        (Sign::NoSign, _) => BigInt::zero(),
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare MSB positions first to avoid giant shifts.
        let pa = self.msb_position();
        let pb = other.msb_position();
        if pa != pb {
            let mag = pa.cmp(&pb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &other.mantissa << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({} * 2^{} ~ {})", self.mantissa, self.exp, self.to_f64())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}
