//! Decision procedures for the Skolem problem (does some term vanish?),
//! the positivity problem (are all terms positive?), and ultimate
//! positivity (are all but finitely many terms positive?).
//!
//! The route is always: reduce to minimal order, classify the maximal-root
//! configuration, evaluate the matching term-count bound, and close the gap
//! with an exact scan. Scanning works on the integer rescaling
//! z_n = L delta^n u_n, exactly for an initial stretch and modulo three
//! fixed 62-bit primes beyond it; a joint residue zero is re-verified
//! exactly before it is ever reported.

use crate::bounds::{bounds_from_parameters, BoundCase, BoundInputs, BoundReport};
use crate::error::{Error, Result};
use crate::lrs::{
    integer_rescaling, minimal_annihilator, primitive_char_poly, rational_to_string,
    IntegerRescaling, LRSpec, Rational,
};
use crate::poly::{degeneracy_status, ratio_unity_split, IntPolynomial};
use crate::rigor::{BigFloat, ComplexBall, RealInterval, PRECISION_CAP};
use crate::roots::{root_profile_at, RootBox, RootProfile};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::VecDeque;
use std::sync::OnceLock;

/// Exact big-integer scanning switches to modular residues past this index.
const EXACT_SCAN_LIMIT: u64 = 10_000;

/// Cases without a theorem still get a scan of this many terms, since a
/// zero or sign witness settles SP or PP regardless of classification.
const COURTESY_SCAN: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Problem {
    SP,
    PP,
    UPP,
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Problem::SP => "SP",
            Problem::PP => "PP",
            Problem::UPP => "UPP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Sharp,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Sharp => "sharp",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    ZeroAt(u64),
    NoZero,
    Unknown,
}

impl Answer {
    fn label(&self) -> &'static str {
        match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::ZeroAt(_) => "ZeroAt",
            Answer::NoZero => "NoZero",
            Answer::Unknown => "Unknown",
        }
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Answer::ZeroAt(n) => write!(f, "ZeroAt({n})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Certified maximal-root configuration of a minimal sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    NotSimple,
    Dominant,
    TwoMaxNonDegenerate,
    DegenerateMaxPair,
    Inconclusive,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::NotSimple => "NotSimple",
            CaseTag::Dominant => "Dominant",
            CaseTag::TwoMaxNonDegenerate => "TwoMaxNonDegenerate",
            CaseTag::DegenerateMaxPair => "DegenerateMaxPair",
            CaseTag::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

/// An index n with the exact value of u_n, proving a zero (SP) or a
/// non-positive term (PP).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub index: u64,
    pub value: Rational,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("index", &self.index)?;
        map.serialize_entry("value", &rational_to_string(&self.value))?;
        map.end()
    }
}

/// Interval certificate for dominant-root sign arguments: past n0 the sign
/// of u_n equals the sign of b1 alpha_1^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<u64>,
    pub b1_sign: i32,
}

/// The decider's answer with everything needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub problem: Problem,
    pub answer: Answer,
    pub mode: Mode,
    /// Inclusive index range covered by exact (or modular-verified) scanning.
    pub scanned: Option<(u64, u64)>,
    pub witness: Option<Witness>,
    pub certificate: Option<SignCertificate>,
    pub bound: Option<BoundReport>,
    pub reason: Option<String>,
}

impl Verdict {
    fn new(problem: Problem, answer: Answer, mode: Mode) -> Self {
        Verdict {
            problem,
            answer,
            mode,
            scanned: None,
            witness: None,
            certificate: None,
            bound: None,
            reason: None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let extras = [
            self.scanned.is_some(),
            self.witness.is_some(),
            self.certificate.is_some(),
            self.bound.is_some(),
            self.reason.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        let mut map = serializer.serialize_map(Some(3 + extras))?;
        map.serialize_entry("problem", &self.problem)?;
        map.serialize_entry("answer", self.answer.label())?;
        map.serialize_entry("mode", self.mode.as_str())?;
        if let Some((lo, hi)) = self.scanned {
            map.serialize_entry("scanned", &[lo, hi])?;
        }
        if let Some(w) = &self.witness {
            map.serialize_entry("witness", w)?;
        }
        if let Some(c) = &self.certificate {
            map.serialize_entry("certificate", c)?;
        }
        if let Some(b) = &self.bound {
            map.serialize_entry("bound", b)?;
        }
        if let Some(r) = &self.reason {
            map.serialize_entry("reason", r)?;
        }
        map.end()
    }
}

fn minimalize(spec: &LRSpec) -> LRSpec {
    if spec.is_minimal() {
        spec.clone()
    } else {
        minimal_annihilator(spec)
    }
}

// ---------------------------------------------------------------------------
// Classification.

/// Root-box refinement target for a requested starting precision in bits.
fn start_target(bits: u32) -> i64 {
    -(bits.max(64) as i64)
}

/// Certified case analysis of the maximal-modulus roots.
pub fn classify(spec: &LRSpec) -> Result<CaseTag> {
    classify_at(spec, 64)
}

/// Like [`classify`] with a caller-chosen starting precision; refinement
/// still escalates as needed, so the answer does not depend on it.
pub fn classify_at(spec: &LRSpec, precision: u32) -> Result<CaseTag> {
    let spec = minimalize(spec);
    if spec.order() == 1 {
        return Ok(CaseTag::Dominant);
    }
    let (fstar, _) = primitive_char_poly(&spec);
    let (_, simple) = fstar.squarefree_part();
    if !simple {
        return Ok(CaseTag::NotSimple);
    }
    let profile = root_profile_at(&fstar, false, start_target(precision))?;
    if profile.dominant {
        return Ok(CaseTag::Dominant);
    }
    if profile.k_max == 2 {
        let verdict = top_pair_unity(&fstar, precision)?;
        return Ok(match verdict {
            Some(true) => CaseTag::DegenerateMaxPair,
            Some(false) => {
                // A non-unity equal-modulus pair over the rationals is
                // necessarily a complex-conjugate pair: two real roots of
                // equal modulus would be {beta, -beta} with ratio -1.
                let g = &profile.groups[0];
                debug_assert_eq!(profile.boxes[g[0]].conj_partner, Some(g[1]));
                CaseTag::TwoMaxNonDegenerate
            }
            None => CaseTag::Inconclusive,
        });
    }
    Ok(CaseTag::Inconclusive)
}

/// Is the ratio of the two maximal-modulus roots a root of unity?
///
/// The ratio polynomial splits exactly into a cyclotomic part c and a
/// unity-free part h; the top ratio rho is a root of exactly one of them.
/// Ball evaluation on a certified enclosure of rho decides which, with
/// `None` if the precision cap is reached first.
fn top_pair_unity(fstar: &IntPolynomial, precision: u32) -> Result<Option<bool>> {
    if !degeneracy_status(fstar)?.degenerate {
        return Ok(Some(false));
    }
    let split = ratio_unity_split(fstar)?;
    if split.cyclotomic_part.is_constant() {
        return Ok(Some(false));
    }
    if split.rest.is_constant() {
        return Ok(Some(true));
    }
    let mut target: i64 = start_target(precision.max(128));
    while -target < PRECISION_CAP as i64 {
        let profile = match root_profile_at(fstar, false, target) {
            Ok(p) => p,
            Err(Error::PrecisionExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let g = &profile.groups[0];
        debug_assert_eq!(g.len(), 2);
        let prec = (-target) as u32 + 64;
        let rho = profile.boxes[g[0]].ball.div(&profile.boxes[g[1]].ball, prec);
        if !split.cyclotomic_part.eval_ball(&rho, prec).contains_zero() {
            return Ok(Some(false));
        }
        if !split.rest.eval_ball(&rho, prec).contains_zero() {
            return Ok(Some(true));
        }
        target *= 2;
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Coefficient intervals.

/// Certified enclosures of the b_j in u_n = sum b_j alpha_j^n, paired with
/// the root boxes they belong to.
#[derive(Debug, Clone)]
pub struct CoefficientIntervals {
    pub boxes: Vec<RootBox>,
    pub coefficients: Vec<ComplexBall>,
}

/// Solve the Vandermonde system for the b_j and refine until every
/// coefficient interval excludes zero (minimality guarantees b_j != 0).
pub fn solve_coefficients_interval(spec: &LRSpec, precision: u32) -> Result<CoefficientIntervals> {
    let spec = minimalize(spec);
    let (fstar, _) = primitive_char_poly(&spec);
    let (_, simple) = fstar.squarefree_part();
    if !simple {
        return Err(Error::NotSimple);
    }
    let mut target = start_target(precision);
    loop {
        let profile = root_profile_at(&fstar, false, target)?;
        let prec = (-target) as u32 + 64;
        if let Some(coefficients) = solve_with_boxes(&spec, &profile.boxes, prec) {
            if coefficients.iter().all(|b| !b.contains_zero()) {
                return Ok(CoefficientIntervals { boxes: profile.boxes, coefficients });
            }
        }
        // root_profile_at fails with PrecisionExhausted at the cap, which
        // bounds this loop.
        target = target.saturating_mul(2);
    }
}

/// One ball-arithmetic Gaussian elimination pass; None when a pivot cannot
/// be certified nonzero at this precision.
fn solve_with_boxes(spec: &LRSpec, boxes: &[RootBox], prec: u32) -> Option<Vec<ComplexBall>> {
    let m = boxes.len();
    debug_assert_eq!(m, spec.order());
    let mut a: Vec<Vec<ComplexBall>> = (0..m)
        .map(|i| boxes.iter().map(|b| b.ball.pow_u64(i as u64, prec)).collect())
        .collect();
    let mut rhs: Vec<ComplexBall> = spec
        .initial_terms()
        .iter()
        .map(|u| ComplexBall::from_rational(u, prec))
        .collect();
    for col in 0..m {
        let mut best = col;
        let mut best_lo = BigFloat::zero();
        for (row, r) in a.iter().enumerate().take(m).skip(col) {
            let lo = r[col].modulus(64).lo().clone();
            if lo > best_lo {
                best_lo = lo;
                best = row;
            }
        }
        if best_lo.signum() <= 0 {
            return None;
        }
        a.swap(col, best);
        rhs.swap(col, best);
        for row in col + 1..m {
            let factor = a[row][col].div(&a[col][col], prec);
            for k in col..m {
                let t = factor.mul(&a[col][k]).compress(prec);
                a[row][k] = a[row][k].sub(&t).compress(prec);
            }
            let t = factor.mul(&rhs[col]).compress(prec);
            rhs[row] = rhs[row].sub(&t).compress(prec);
        }
    }
    let mut x = vec![ComplexBall::zero(); m];
    for col in (0..m).rev() {
        let mut acc = rhs[col].clone();
        for k in col + 1..m {
            let t = a[col][k].mul(&x[k]).compress(prec);
            acc = acc.sub(&t).compress(prec);
        }
        x[col] = acc.div(&a[col][col], prec);
    }
    Some(x)
}

fn ball_real_sign(b: &ComplexBall) -> Option<i32> {
    let re = b.re_interval();
    if re.is_strictly_positive() {
        Some(1)
    } else if re.is_strictly_negative() {
        Some(-1)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Sharp cutoff.

struct DominantAnalysis {
    alpha_sign: i32,
    b1_sign: i32,
    n0: u64,
}

/// Refine until the dominant root's sign, b1's sign, and the index past
/// which |b1 alpha_1^n| certifiably exceeds the tail are all locked in.
fn dominant_analysis(
    spec: &LRSpec,
    fstar: &IntPolynomial,
    guard: &BigInt,
    precision: u32,
) -> Result<DominantAnalysis> {
    let mut target = start_target(precision);
    loop {
        let profile = root_profile_at(fstar, false, target)?;
        assert!(profile.dominant, "dominant analysis requires a dominant root");
        let top = profile.groups[0][0];
        let prec = (-target) as u32 + 64;
        if let Some(coeffs) = solve_with_boxes(spec, &profile.boxes, prec) {
            let alpha_sign = profile.boxes[top].real_sign();
            let b1_sign = ball_real_sign(&coeffs[top]);
            if let (Some(a), Some(b)) = (alpha_sign, b1_sign) {
                if a != 0 {
                    if let Some(k) = first_certified_separation(&profile, &coeffs, guard, prec) {
                        return Ok(DominantAnalysis {
                            alpha_sign: a,
                            b1_sign: b,
                            n0: k.saturating_sub(1),
                        });
                    }
                }
            }
        }
        target = target.saturating_mul(2);
    }
}

/// Least k with a certified |b1| > sum_{j>=2} |b_j| (|alpha_j|/|alpha_1|)^k,
/// searched by doubling plus bisection; None asks the caller to refine.
fn first_certified_separation(
    profile: &RootProfile,
    coeffs: &[ComplexBall],
    guard: &BigInt,
    prec: u32,
) -> Option<u64> {
    let top = profile.groups[0][0];
    let lb_b1 = RealInterval::point(coeffs[top].modulus(prec).lo().clone());
    if lb_b1.hi().signum() <= 0 {
        return None;
    }
    let lb_a1 = profile.moduli[top].lo().clone();
    if lb_a1.signum() <= 0 {
        return None;
    }
    let lb_a1 = RealInterval::point(lb_a1);
    let mut tail: Vec<(RealInterval, RealInterval)> = Vec::new();
    for j in 0..coeffs.len() {
        if j == top {
            continue;
        }
        let ub_bj = RealInterval::point(coeffs[j].modulus(prec).hi().clone());
        let ratio = RealInterval::point(profile.moduli[j].hi().clone()).div(&lb_a1, prec);
        if ratio.hi() >= &BigFloat::one() {
            return None;
        }
        tail.push((ub_bj, ratio));
    }
    let h_positive = |k: u64| -> bool {
        let mut sum = RealInterval::zero();
        for (ub, ratio) in &tail {
            sum = sum.add(&ub.mul(&ratio.pow_u64(k, prec), prec), prec);
        }
        lb_b1.sub(&sum, prec).is_strictly_positive()
    };
    if h_positive(0) {
        return Some(0);
    }
    let guard = guard.to_u64().unwrap_or(u64::MAX);
    let mut lo = 0u64; // h(lo) not certified
    let mut hi = 1u64;
    while !h_positive(hi) {
        if hi >= guard {
            return None;
        }
        lo = hi;
        hi = hi.saturating_mul(2).min(guard);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if h_positive(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Smallest certified n0 past which sign(u_n) = sign(b1 alpha_1^n).
///
/// Requires a dominant root; the theorem-level term bound caps the search.
pub fn sharp_cutoff(spec: &LRSpec) -> Result<u64> {
    let spec = minimalize(spec);
    if spec.order() == 1 {
        return Ok(0);
    }
    let (fstar, _) = primitive_char_poly(&spec);
    let (_, simple) = fstar.squarefree_part();
    if !simple {
        return Err(Error::NotSimple);
    }
    let profile = crate::roots::root_profile(&fstar, false)?;
    if !profile.dominant {
        return Err(Error::NoDominantRoot);
    }
    let report = bounds_from_parameters(&BoundInputs::from_spec(&spec), BoundCase::Dominant)?;
    let guard = &report.bound.floor + BigInt::one();
    Ok(dominant_analysis(&spec, &fstar, &guard, 64)?.n0)
}

// ---------------------------------------------------------------------------
// Exact and modular scanning.

/// Exact integer stream of z_n = L delta^n u_n.
struct ZStream {
    coeffs: Vec<BigInt>,
    window: VecDeque<BigInt>,
    pending: usize,
}

impl ZStream {
    fn new(resc: &IntegerRescaling) -> Self {
        ZStream {
            coeffs: resc.coefficients.clone(),
            window: resc.initial.iter().cloned().collect(),
            pending: 0,
        }
    }

    /// The last m emitted values, valid once at least m terms were emitted.
    fn window(&self) -> &VecDeque<BigInt> {
        &self.window
    }
}

impl Iterator for ZStream {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let m = self.coeffs.len();
        if self.pending < self.window.len() {
            self.pending += 1;
            return Some(self.window[self.pending - 1].clone());
        }
        let mut next = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            next += c * &self.window[m - 1 - i];
        }
        self.window.pop_front();
        self.window.push_back(next.clone());
        Some(next)
    }
}

fn z_at(resc: &IntegerRescaling, n: u64) -> BigInt {
    ZStream::new(resc)
        .nth(usize::try_from(n).expect("index fits"))
        .expect("infinite stream")
}

/// Residue stream of the z recurrence modulo one scanner prime.
struct ModStream {
    coeffs: Vec<u64>,
    window: VecDeque<u64>,
    p: u64,
}

impl ModStream {
    fn seeded(resc: &IntegerRescaling, window: &VecDeque<BigInt>, p: u64) -> Self {
        let pb = BigInt::from(p);
        let red = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits in u64");
        ModStream {
            coeffs: resc.coefficients.iter().map(red).collect(),
            window: window.iter().map(red).collect(),
            p,
        }
    }

    fn step(&mut self) -> u64 {
        let m = self.coeffs.len();
        let mut acc: u128 = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc += c as u128 * self.window[m - 1 - i] as u128 % self.p as u128;
        }
        let next = (acc % self.p as u128) as u64;
        self.window.pop_front();
        self.window.push_back(next);
        next
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed base set decides all of u64.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The three largest primes below 2^62: fixed moduli for residue scanning.
fn scanner_primes() -> [u64; 3] {
    static PRIMES: OnceLock<[u64; 3]> = OnceLock::new();
    *PRIMES.get_or_init(|| {
        let mut found = [0u64; 3];
        let mut i = 0;
        let mut candidate: u64 = (1u64 << 62) - 1;
        while i < 3 {
            if is_prime_u64(candidate) {
                found[i] = candidate;
                i += 1;
            }
            candidate -= 2;
        }
        found
    })
}

/// First n in 0..=limit with u_n = 0, or None.
fn find_zero(spec: &LRSpec, limit: u64) -> Option<u64> {
    find_zero_with(spec, limit, EXACT_SCAN_LIMIT)
}

fn find_zero_with(spec: &LRSpec, limit: u64, exact_limit: u64) -> Option<u64> {
    let resc = integer_rescaling(spec);
    let mut z = ZStream::new(&resc);
    let exact_end = limit.min(exact_limit.max(resc.coefficients.len() as u64));
    for n in 0..=exact_end {
        if z.next().expect("infinite stream").is_zero() {
            return Some(n);
        }
    }
    if exact_end == limit {
        return None;
    }
    let mut streams: Vec<ModStream> = scanner_primes()
        .iter()
        .map(|&p| ModStream::seeded(&resc, z.window(), p))
        .collect();
    for n in exact_end + 1..=limit {
        let mut joint_zero = true;
        for s in streams.iter_mut() {
            if s.step() != 0 {
                joint_zero = false;
            }
        }
        // Three joint residue zeros are overwhelmingly a true zero, but only
        // the exact recomputation is allowed to decide.
        if joint_zero && z_at(&resc, n).is_zero() {
            return Some(n);
        }
    }
    None
}

/// First n in 0..=limit with u_n <= 0, with its exact value.
fn find_nonpositive(spec: &LRSpec, limit: u64) -> Option<Witness> {
    let resc = integer_rescaling(spec);
    let mut z = ZStream::new(&resc);
    for n in 0..=limit {
        let zn = z.next().expect("infinite stream");
        if !zn.is_positive() {
            return Some(Witness { index: n, value: resc.term_from_z(n, zn) });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Deciders.

fn inapplicability_reason(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::NotSimple => "characteristic polynomial has repeated roots",
        CaseTag::DegenerateMaxPair => "maximal-modulus root pair has a root-of-unity ratio",
        CaseTag::Inconclusive => "root configuration is outside the decidable cases",
        _ => unreachable!("applicable cases are dispatched before this point"),
    }
}

fn zero_verdict(mode: Mode, n: u64, scanned: (u64, u64)) -> Verdict {
    let mut v = Verdict::new(Problem::SP, Answer::ZeroAt(n), mode);
    v.scanned = Some(scanned);
    v.witness = Some(Witness { index: n, value: Rational::zero() });
    v
}

/// Zero-scan a bounded range: the full theorem range when it fits under the
/// cutoff, otherwise as far as the cutoff allows, reporting Unknown.
fn plain_zero_scan(spec: &LRSpec, report: BoundReport, cutoff: u64) -> Verdict {
    let mut v = match report.bound.floor.to_u64() {
        Some(fl) if fl <= cutoff => match find_zero(spec, fl) {
            Some(n) => zero_verdict(Mode::Plain, n, (0, fl)),
            None => {
                let mut v = Verdict::new(Problem::SP, Answer::NoZero, Mode::Plain);
                v.scanned = Some((0, fl));
                v
            }
        },
        _ => match find_zero(spec, cutoff) {
            Some(n) => zero_verdict(Mode::Plain, n, (0, cutoff)),
            None => {
                let mut v = Verdict::new(Problem::SP, Answer::Unknown, Mode::Plain);
                v.scanned = Some((0, cutoff));
                v.reason =
                    Some("scan bound exceeds the cutoff; raise it or use sharp mode".into());
                v
            }
        },
    };
    v.bound = Some(report);
    v
}

/// Does any term vanish? Answers by exact scanning up to a certified bound.
pub fn decide_skolem(spec: &LRSpec, cutoff: u64, mode: Mode) -> Result<Verdict> {
    decide_skolem_at(spec, cutoff, mode, 64)
}

/// [`decide_skolem`] with a caller-chosen starting precision.
pub fn decide_skolem_at(spec: &LRSpec, cutoff: u64, mode: Mode, precision: u32) -> Result<Verdict> {
    let spec = minimalize(spec);
    if spec.order() == 1 {
        let mut v = Verdict::new(Problem::SP, Answer::NoZero, Mode::Plain);
        v.reason = Some("order-1 sequences u_n = u_0 a_1^n never vanish".into());
        return Ok(v);
    }
    let tag = classify_at(&spec, precision)?;
    match tag {
        CaseTag::Dominant => {
            let report =
                bounds_from_parameters(&BoundInputs::from_spec(&spec), BoundCase::Dominant)?;
            if mode == Mode::Sharp {
                let (fstar, _) = primitive_char_poly(&spec);
                let guard = &report.bound.floor + BigInt::one();
                let analysis = dominant_analysis(&spec, &fstar, &guard, precision)?;
                let mut v = match find_zero(&spec, analysis.n0) {
                    Some(n) => zero_verdict(Mode::Sharp, n, (0, analysis.n0)),
                    None => {
                        let mut v = Verdict::new(Problem::SP, Answer::NoZero, Mode::Sharp);
                        v.scanned = Some((0, analysis.n0));
                        v.certificate = Some(SignCertificate {
                            n0: Some(analysis.n0),
                            b1_sign: analysis.b1_sign,
                        });
                        v
                    }
                };
                v.bound = Some(report);
                Ok(v)
            } else {
                Ok(plain_zero_scan(&spec, report, cutoff))
            }
        }
        CaseTag::TwoMaxNonDegenerate => {
            // No sharp certificate in this case; the scan bound rules.
            let report =
                bounds_from_parameters(&BoundInputs::from_spec(&spec), BoundCase::EqualModulus)?;
            Ok(plain_zero_scan(&spec, report, cutoff))
        }
        tag => {
            let lim = cutoff.min(COURTESY_SCAN);
            match find_zero(&spec, lim) {
                Some(n) => Ok(zero_verdict(Mode::Plain, n, (0, lim))),
                None => {
                    let mut v = Verdict::new(Problem::SP, Answer::Unknown, Mode::Plain);
                    v.scanned = Some((0, lim));
                    v.reason = Some(inapplicability_reason(tag).into());
                    Ok(v)
                }
            }
        }
    }
}

/// Are all terms strictly positive? (A zero term already defeats it.)
pub fn decide_positivity(spec: &LRSpec, cutoff: u64, mode: Mode) -> Result<Verdict> {
    decide_positivity_at(spec, cutoff, mode, 64)
}

/// [`decide_positivity`] with a caller-chosen starting precision.
pub fn decide_positivity_at(
    spec: &LRSpec,
    cutoff: u64,
    mode: Mode,
    precision: u32,
) -> Result<Verdict> {
    let spec = minimalize(spec);
    if spec.order() == 1 {
        return Ok(order_one_signs(&spec, Problem::PP));
    }
    let tag = classify_at(&spec, precision)?;
    match tag {
        CaseTag::Dominant => {
            let report =
                bounds_from_parameters(&BoundInputs::from_spec(&spec), BoundCase::Dominant)?;
            let (fstar, _) = primitive_char_poly(&spec);
            let guard = &report.bound.floor + BigInt::one();
            let analysis = dominant_analysis(&spec, &fstar, &guard, precision)?;
            if analysis.alpha_sign > 0 {
                positive_dominant_pp(&spec, report, &analysis, cutoff, mode)
            } else {
                negative_dominant_pp(&spec, report, &analysis, cutoff, mode)
            }
        }
        CaseTag::TwoMaxNonDegenerate => {
            // No positive maximal-modulus root, so negative terms occur
            // infinitely often; the scan only has to exhibit one.
            match find_nonpositive(&spec, cutoff) {
                Some(w) => {
                    let mut v = Verdict::new(Problem::PP, Answer::No, Mode::Plain);
                    v.scanned = Some((0, w.index));
                    v.witness = Some(w);
                    v.reason = Some("no positive root of maximal modulus".into());
                    Ok(v)
                }
                None => {
                    let mut v = Verdict::new(Problem::PP, Answer::Unknown, Mode::Plain);
                    v.scanned = Some((0, cutoff));
                    v.reason = Some(
                        "negative terms exist (no positive maximal root) but none surfaced \
                         within the cutoff"
                            .into(),
                    );
                    Ok(v)
                }
            }
        }
        tag => {
            let lim = cutoff.min(COURTESY_SCAN);
            match find_nonpositive(&spec, lim) {
                Some(w) => {
                    // Sound regardless of classification: the term is there.
                    let mut v = Verdict::new(Problem::PP, Answer::No, Mode::Plain);
                    v.scanned = Some((0, w.index));
                    v.witness = Some(w);
                    Ok(v)
                }
                None => {
                    let mut v = Verdict::new(Problem::PP, Answer::Unknown, Mode::Plain);
                    v.scanned = Some((0, lim));
                    v.reason = Some(inapplicability_reason(tag).into());
                    Ok(v)
                }
            }
        }
    }
}

fn positive_dominant_pp(
    spec: &LRSpec,
    report: BoundReport,
    analysis: &DominantAnalysis,
    cutoff: u64,
    mode: Mode,
) -> Result<Verdict> {
    let (end, complete) = match mode {
        Mode::Sharp => (analysis.n0, true),
        Mode::Plain => match report.bound.floor.to_u64() {
            Some(fl) if fl <= cutoff => (fl, true),
            _ => (cutoff.min(COURTESY_SCAN), false),
        },
    };
    if let Some(w) = find_nonpositive(spec, end) {
        let mut v = Verdict::new(Problem::PP, Answer::No, mode);
        v.scanned = Some((0, end));
        v.witness = Some(w);
        v.bound = Some(report);
        return Ok(v);
    }
    if !complete {
        let mut v = Verdict::new(Problem::PP, Answer::Unknown, mode);
        v.scanned = Some((0, end));
        v.bound = Some(report);
        v.reason = Some("scan bound exceeds the cutoff; raise it or use sharp mode".into());
        return Ok(v);
    }
    let mut v = if analysis.b1_sign > 0 {
        Verdict::new(Problem::PP, Answer::Yes, mode)
    } else {
        // All scanned terms positive but the tail is negative: the first
        // index past the certified range is a witness. Verify it exactly.
        let resc = integer_rescaling(spec);
        let n = end + 1;
        let zn = z_at(&resc, n);
        assert!(!zn.is_positive(), "sign certificate contradicts the exact term");
        let mut v = Verdict::new(Problem::PP, Answer::No, mode);
        v.witness = Some(Witness { index: n, value: resc.term_from_z(n, zn) });
        v
    };
    v.scanned = Some((0, end));
    v.certificate = Some(SignCertificate { n0: Some(analysis.n0), b1_sign: analysis.b1_sign });
    v.bound = Some(report);
    Ok(v)
}

fn negative_dominant_pp(
    spec: &LRSpec,
    report: BoundReport,
    analysis: &DominantAnalysis,
    cutoff: u64,
    mode: Mode,
) -> Result<Verdict> {
    // Signs alternate past n0, so a non-positive term exists by n0 + 2.
    let wanted = analysis.n0 + 2;
    let lim = wanted.min(cutoff.max(COURTESY_SCAN));
    match find_nonpositive(spec, lim) {
        Some(w) => {
            let mut v = Verdict::new(Problem::PP, Answer::No, mode);
            v.scanned = Some((0, w.index));
            v.witness = Some(w);
            v.certificate =
                Some(SignCertificate { n0: Some(analysis.n0), b1_sign: analysis.b1_sign });
            v.bound = Some(report);
            Ok(v)
        }
        None => {
            debug_assert!(lim < wanted, "alternation guarantees a witness by n0 + 2");
            let mut v = Verdict::new(Problem::PP, Answer::Unknown, mode);
            v.scanned = Some((0, lim));
            v.bound = Some(report);
            v.reason = Some("alternating witness lies beyond the scan range".into());
            Ok(v)
        }
    }
}

/// Are all but finitely many terms positive? Pure sign analysis, no scan.
pub fn decide_upp(spec: &LRSpec, cutoff: u64, mode: Mode) -> Result<Verdict> {
    decide_upp_at(spec, cutoff, mode, 64)
}

/// [`decide_upp`] with a caller-chosen starting precision.
pub fn decide_upp_at(spec: &LRSpec, _cutoff: u64, mode: Mode, precision: u32) -> Result<Verdict> {
    let spec = minimalize(spec);
    if spec.order() == 1 {
        return Ok(order_one_signs(&spec, Problem::UPP));
    }
    let tag = classify_at(&spec, precision)?;
    match tag {
        CaseTag::Dominant => {
            let report =
                bounds_from_parameters(&BoundInputs::from_spec(&spec), BoundCase::Dominant)?;
            let (fstar, _) = primitive_char_poly(&spec);
            let guard = &report.bound.floor + BigInt::one();
            let analysis = dominant_analysis(&spec, &fstar, &guard, precision)?;
            let mut v = if analysis.alpha_sign > 0 {
                if analysis.b1_sign > 0 {
                    Verdict::new(Problem::UPP, Answer::Yes, mode)
                } else {
                    let mut v = Verdict::new(Problem::UPP, Answer::No, mode);
                    v.reason = Some("terms are eventually strictly negative".into());
                    v
                }
            } else {
                let mut v = Verdict::new(Problem::UPP, Answer::No, mode);
                v.reason = Some("negative dominant root forces both signs infinitely often".into());
                v
            };
            if analysis.alpha_sign > 0 {
                v.certificate =
                    Some(SignCertificate { n0: Some(analysis.n0), b1_sign: analysis.b1_sign });
            }
            v.bound = Some(report);
            Ok(v)
        }
        CaseTag::TwoMaxNonDegenerate => {
            let mut v = Verdict::new(Problem::UPP, Answer::No, Mode::Plain);
            v.reason =
                Some("no positive root of maximal modulus; negative terms recur forever".into());
            Ok(v)
        }
        tag => {
            let mut v = Verdict::new(Problem::UPP, Answer::Unknown, Mode::Plain);
            v.reason = Some(inapplicability_reason(tag).into());
            Ok(v)
        }
    }
}

/// Order-1 sequences are u_0 a_1^n: sign analysis is immediate.
fn order_one_signs(spec: &LRSpec, problem: Problem) -> Verdict {
    let a1 = &spec.coefficients()[0];
    let u0 = &spec.initial_terms()[0];
    let all_positive = u0.is_positive() && a1.is_positive();
    match problem {
        Problem::PP => {
            if all_positive {
                let mut v = Verdict::new(Problem::PP, Answer::Yes, Mode::Plain);
                v.certificate = Some(SignCertificate { n0: Some(0), b1_sign: 1 });
                v.reason = Some("order-1: u_n = u_0 a_1^n with u_0 > 0, a_1 > 0".into());
                v
            } else {
                let (index, value) =
                    if u0.is_positive() { (1, u0 * a1) } else { (0, u0.clone()) };
                let mut v = Verdict::new(Problem::PP, Answer::No, Mode::Plain);
                v.witness = Some(Witness { index, value });
                v
            }
        }
        Problem::UPP => {
            if all_positive {
                let mut v = Verdict::new(Problem::UPP, Answer::Yes, Mode::Plain);
                v.certificate = Some(SignCertificate { n0: Some(0), b1_sign: 1 });
                v
            } else {
                let mut v = Verdict::new(Problem::UPP, Answer::No, Mode::Plain);
                v.reason = Some(if a1.is_positive() {
                    "all terms share the negative sign of u_0".into()
                } else {
                    "negative ratio alternates the sign forever".into()
                });
                v
            }
        }
        Problem::SP => unreachable!("order-1 Skolem is answered inline"),
    }
}
