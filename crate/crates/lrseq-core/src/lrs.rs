//! Linear recurrence sequences over the rationals: validation, minimality
//! reduction, exact term iteration, and heights.
//!
//! A sequence is given by u_{n+m} = a_1 u_{n+m-1} + ... + a_m u_n with
//! a_m != 0 and at least one nonzero initial term. The characteristic
//! polynomial is f(X) = X^m - a_1 X^{m-1} - ... - a_m; clearing denominators
//! with the least positive delta gives the primitive integer polynomial
//! f* = delta * f.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::rigor::{ln_enclosure, BigFloat, Round};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::VecDeque;

pub type Rational = BigRational;

/// Canonical string form: "p" for integers, "p/q" otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse "p" or "p/q" into a canonical rational.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let mut parts = s.splitn(3, '/');
    let numer: BigInt = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        None => BigInt::one(),
        Some(d) => d.parse().map_err(|_| bad())?,
    };
    if parts.next().is_some() || denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// A validated linear recurrence sequence u_{n+m} = a_1 u_{n+m-1} + ... + a_m u_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRSpec {
    coefficients: Vec<Rational>,
    initial: Vec<Rational>,
    minimal: bool,
}

impl LRSpec {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Recurrence coefficients a_1..a_m.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Initial terms u_0..u_{m-1}.
    pub fn initial_terms(&self) -> &[Rational] {
        &self.initial
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn term_stream(&self) -> TermStream {
        TermStream {
            coefficients: self.coefficients.clone(),
            window: self.initial.iter().cloned().collect(),
            pending: 0,
        }
    }
}

/// Check the defining constraints and build an LRSpec (not yet minimal).
pub fn validate_lrs(coefficients: Vec<Rational>, initial: Vec<Rational>) -> Result<LRSpec> {
    if coefficients.is_empty() || coefficients.len() != initial.len() {
        return Err(Error::LengthMismatch);
    }
    if coefficients.last().expect("nonempty").is_zero() {
        return Err(Error::ZeroTrailingCoefficient);
    }
    if initial.iter().all(|u| u.is_zero()) {
        return Err(Error::AllInitialTermsZero);
    }
    Ok(LRSpec { coefficients, initial, minimal: false })
}

/// Infinite exact iterator of sequence terms.
pub struct TermStream {
    coefficients: Vec<Rational>,
    window: VecDeque<Rational>,
    pending: usize,
}

impl Iterator for TermStream {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let m = self.coefficients.len();
        if self.pending < self.window.len() {
            self.pending += 1;
            return Some(self.window[self.pending - 1].clone());
        }
        // u_{n+m} = sum a_i u_{n+m-i}; window holds the last m terms.
        let mut next = Rational::zero();
        for (i, a) in self.coefficients.iter().enumerate() {
            next += a * &self.window[m - 1 - i];
        }
        self.window.pop_front();
        self.window.push_back(next.clone());
        Some(next)
    }
}

/// First `count` terms by exact rational arithmetic.
pub fn iterate_terms(spec: &LRSpec, count: usize) -> Vec<Rational> {
    spec.term_stream().take(count).collect()
}

/// Reduce to the least-order recurrence annihilating the same sequence.
///
/// The candidate of order k is fitted on the first 2m terms by exact
/// Gaussian elimination; since the true sequence satisfies an order-m
/// recurrence, agreement on 2m >= k+m terms forces agreement everywhere.
/// At the minimal order the annihilator is the (unique) minimal polynomial
/// of the sequence, whose trailing coefficient is nonzero because it
/// divides a characteristic polynomial with nonzero constant term.
pub fn minimal_annihilator(spec: &LRSpec) -> LRSpec {
    let m = spec.order();
    let terms = iterate_terms(spec, 2 * m);
    for k in 1..m {
        if let Some(coeffs) = fit_recurrence(&terms, k) {
            assert!(
                !coeffs[k - 1].is_zero(),
                "minimal annihilator must keep a nonzero trailing coefficient"
            );
            return LRSpec {
                coefficients: coeffs,
                initial: terms[..k].to_vec(),
                minimal: true,
            };
        }
    }
    LRSpec { minimal: true, ..spec.clone() }
}

/// Solve for c_1..c_k with u_{n+k} = sum c_i u_{n+k-i} on all windows of the
/// given terms; None when no order-k recurrence fits.
fn fit_recurrence(terms: &[Rational], k: usize) -> Option<Vec<Rational>> {
    let rows = terms.len() - k;
    // Augmented matrix [u_{n+k-1} ... u_n | u_{n+k}] for n = 0..rows.
    let mut mat: Vec<Vec<Rational>> = (0..rows)
        .map(|n| {
            let mut row: Vec<Rational> =
                (0..k).map(|i| terms[n + k - 1 - i].clone()).collect();
            row.push(terms[n + k].clone());
            row
        })
        .collect();
    // Exact Gauss-Jordan.
    let mut pivot_of_col = vec![usize::MAX; k];
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..=k {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent iff some residual row is (0,...,0 | nonzero).
    for row in &mat[r..] {
        if row[..k].iter().all(|x| x.is_zero()) && !row[k].is_zero() {
            return None;
        }
    }
    // Particular solution with free variables zero.
    let mut sol = vec![Rational::zero(); k];
    for c in 0..k {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = mat[pivot_of_col[c]][k].clone();
        }
    }
    // The elimination only used the first `rows` windows; verify the fit on
    // every available term to reject spurious solutions from rank deficits.
    for n in 0..terms.len() - k {
        let mut acc = Rational::zero();
        for (i, c) in sol.iter().enumerate() {
            acc += c * &terms[n + k - 1 - i];
        }
        if acc != terms[n + k] {
            return None;
        }
    }
    Some(sol)
}

/// Clear denominators of the characteristic polynomial:
/// f* = delta (X^m - a_1 X^{m-1} - ... - a_m) with the least delta >= 1.
pub fn primitive_char_poly(spec: &LRSpec) -> (IntPolynomial, BigInt) {
    let m = spec.order();
    let mut delta = BigInt::one();
    for a in &spec.coefficients {
        delta = delta.lcm(a.denom());
    }
    let mut coeffs = vec![BigInt::zero(); m + 1];
    coeffs[m] = delta.clone();
    for (i, a) in spec.coefficients.iter().enumerate() {
        // coefficient of X^{m-1-i} is -delta * a_{i+1}
        let scaled = -(a * Rational::from(delta.clone()));
        debug_assert!(scaled.denom().is_one());
        coeffs[m - 1 - i] = scaled.numer().clone();
    }
    (IntPolynomial::from_ascending(coeffs), delta)
}

/// Weil height of a rational: ln max(|p|, q) in lowest terms, upper rounded;
/// h(0) = 0 by convention.
pub fn weil_height_rational(q: &Rational) -> BigFloat {
    if q.is_zero() {
        return BigFloat::zero();
    }
    let p = q.numer().abs();
    let top = if p > *q.denom() { p } else { q.denom().clone() };
    if top.is_one() {
        return BigFloat::zero();
    }
    ln_enclosure(&BigFloat::from_bigint(&top), 64).hi().round(64, Round::Up)
}

/// Integer rescaling z_n = L * delta^n * u_n of the sequence.
///
/// L is the lcm of the initial-term denominators and delta clears the
/// coefficients, so z satisfies the integer recurrence
/// z_{n+m} = sum (a_i delta^i) z_{n+m-i}. z_n = 0 iff u_n = 0, which makes
/// z the right object for modular zero scanning.
pub struct IntegerRescaling {
    pub coefficients: Vec<BigInt>,
    pub initial: Vec<BigInt>,
    /// L: clears the initial-term denominators.
    pub scale: BigInt,
    /// delta: clears the coefficient denominators.
    pub delta: BigInt,
}

impl IntegerRescaling {
    /// Recover the exact sequence term from its rescaled value.
    pub fn term_from_z(&self, n: u64, z: BigInt) -> Rational {
        Rational::new(z, &self.scale * self.delta.pow(u32::try_from(n).expect("index fits")))
    }
}

pub fn integer_rescaling(spec: &LRSpec) -> IntegerRescaling {
    let (_, delta) = primitive_char_poly(spec);
    let mut l = BigInt::one();
    for u in &spec.initial {
        l = l.lcm(u.denom());
    }
    let mut dpow = BigInt::one();
    let mut initial = Vec::with_capacity(spec.order());
    for u in &spec.initial {
        let z = u * Rational::from(&l * &dpow);
        debug_assert!(z.denom().is_one());
        initial.push(z.numer().clone());
        dpow *= &delta;
    }
    let mut coefficients = Vec::with_capacity(spec.order());
    let mut dpow = delta.clone();
    for a in &spec.coefficients {
        let c = a * Rational::from(dpow.clone());
        debug_assert!(c.denom().is_one());
        coefficients.push(c.numer().clone());
        dpow *= &delta;
    }
    IntegerRescaling { coefficients, initial, scale: l, delta }
}

// ---------------------------------------------------------------------------
// JSON contract: {"coefficients": ["1","1"], "initial": ["1","1"]}.

#[derive(Serialize, Deserialize)]
struct RawSpec {
    coefficients: Vec<String>,
    initial: Vec<String>,
}

impl Serialize for LRSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpec {
            coefficients: self.coefficients.iter().map(rational_to_string).collect(),
            initial: self.initial.iter().map(rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LRSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(deserializer)?;
        let parse = |v: &[String]| -> Result<Vec<Rational>> {
            v.iter().map(|s| rational_from_str(s)).collect()
        };
        let coefficients = parse(&raw.coefficients).map_err(serde::de::Error::custom)?;
        let initial = parse(&raw.initial).map_err(serde::de::Error::custom)?;
        validate_lrs(coefficients, initial).map_err(serde::de::Error::custom)
    }
}
