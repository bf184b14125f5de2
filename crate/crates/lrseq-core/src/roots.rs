//! Certified isolation of polynomial roots in complex balls.
//!
//! Approximations come from Aberth's simultaneous iteration; certification
//! wraps each approximation in a Weierstrass inclusion disk D(z_k, n|W_k|)
//! with W_k = f(z_k) / (lc * prod_{j!=k} (z_k - z_j)) evaluated in ball
//! arithmetic. Pairwise disjoint disks each contain exactly one root. Real
//! roots are identified by conjugate matching and cross-checked against a
//! Sturm count; multiplicities come from Yun's decomposition, so the balls
//! always carry exact multiplicities.

use crate::error::{Error, Result};
use crate::poly::{modulus_gap_bound, GapCase, IntPolynomial};
use crate::rigor::{BigFloat, ComplexBall, RealInterval, Round, PRECISION_CAP};
use num_rational::BigRational;
use num_traits::Zero;

/// A certified enclosure of one distinct root.
#[derive(Debug, Clone)]
pub struct RootBox {
    pub ball: ComplexBall,
    pub multiplicity: u32,
    pub is_real: bool,
    /// Index of the certified complex conjugate among the returned boxes.
    pub conj_partner: Option<usize>,
}

impl RootBox {
    /// Sign of a certified real root, once its real part excludes zero.
    pub fn real_sign(&self) -> Option<i32> {
        if !self.is_real {
            return None;
        }
        let re = self.ball.re_interval();
        if re.is_strictly_positive() {
            Some(1)
        } else if re.is_strictly_negative() {
            Some(-1)
        } else if self.ball.rad().is_zero() && self.ball.re().is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Plain complex arithmetic on BigFloat pairs (iteration only, uncertified).

#[derive(Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Cx {
    fn new(re: BigFloat, im: BigFloat) -> Self {
        Cx { re, im }
    }

    fn zero() -> Self {
        Cx::new(BigFloat::zero(), BigFloat::zero())
    }

    fn round(&self, prec: u32) -> Self {
        Cx::new(self.re.round(prec, Round::Down), self.im.round(prec, Round::Down))
    }

    fn add(&self, o: &Cx) -> Self {
        Cx::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    fn sub(&self, o: &Cx) -> Self {
        Cx::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    fn mul(&self, o: &Cx, prec: u32) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Cx::new(re, im).round(prec)
    }

    fn norm2(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// None when the divisor is exactly zero.
    fn div(&self, o: &Cx, prec: u32) -> Option<Cx> {
        let d = o.norm2();
        if d.is_zero() {
            return None;
        }
        let num_re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let num_im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Cx::new(
            num_re.div(&d, prec, Round::Down),
            num_im.div(&d, prec, Round::Down),
        ))
    }
}

// ---------------------------------------------------------------------------
// Aberth iteration on one squarefree factor.

/// One full pass of simultaneous Newton corrections; returns the largest
/// squared relative correction observed.
fn aberth_pass(coeffs: &[Cx], zs: &mut [Cx], prec: u32) -> BigFloat {
    let n = zs.len();
    let mut worst = BigFloat::zero();
    for k in 0..n {
        // Horner for p and p' together.
        let mut p = Cx::zero();
        let mut dp = Cx::zero();
        for c in coeffs.iter().rev() {
            dp = dp.mul(&zs[k], prec).add(&p).round(prec);
            p = p.mul(&zs[k], prec).add(c).round(prec);
        }
        if p.norm2().is_zero() {
            continue; // already on a root to working precision
        }
        let Some(newton) = p.div(&dp, prec) else {
            // p'(z_k) vanished; take a deterministic sidestep.
            zs[k] = zs[k].add(&Cx::new(
                BigFloat::from_i64(1).mul_pow2(-(prec as i64) / 3),
                BigFloat::from_i64(k as i64 + 1).mul_pow2(-(prec as i64) / 3),
            ));
            worst = BigFloat::one();
            continue;
        };
        let mut repel = Cx::zero();
        let mut collided = false;
        for j in 0..n {
            if j == k {
                continue;
            }
            let diff = zs[k].sub(&zs[j]);
            match Cx::new(BigFloat::one(), BigFloat::zero()).div(&diff, prec) {
                Some(inv) => repel = repel.add(&inv).round(prec),
                None => {
                    collided = true;
                    break;
                }
            }
        }
        if collided {
            zs[k] = zs[k].add(&Cx::new(
                BigFloat::from_i64(2 * k as i64 + 1).mul_pow2(-(prec as i64) / 2),
                BigFloat::one().mul_pow2(-(prec as i64) / 2),
            ));
            worst = BigFloat::one();
            continue;
        }
        let denom = Cx::new(BigFloat::one(), BigFloat::zero()).sub(&newton.mul(&repel, prec));
        let w = newton.div(&denom, prec).unwrap_or(newton);
        zs[k] = zs[k].sub(&w).round(prec);
        let scale = zs[k].norm2().add(&BigFloat::one());
        // relative squared correction, compared via scaled inequality
        let rel = w.norm2().div(&scale, 64, Round::Up);
        if rel > worst {
            worst = rel;
        }
    }
    worst
}

/// Weierstrass inclusion disks for the current approximations, or None when
/// the disks are not pairwise disjoint at this precision.
fn certify(g: &IntPolynomial, zs: &[Cx], prec: u32) -> Option<Vec<ComplexBall>> {
    let n = zs.len();
    let lc = BigFloat::from_bigint(g.leading());
    let mut balls = Vec::with_capacity(n);
    for k in 0..n {
        let zk = ComplexBall::exact(zs[k].re.clone(), zs[k].im.clone());
        let num = g.eval_ball(&zk, prec);
        let mut den = ComplexBall::exact(lc.clone(), BigFloat::zero());
        for (j, zj) in zs.iter().enumerate() {
            if j == k {
                continue;
            }
            let diff = ComplexBall::exact(zs[k].re.sub(&zj.re), zs[k].im.sub(&zj.im));
            den = den.mul(&diff).compress(prec);
        }
        if den.contains_zero() {
            return None;
        }
        let w = num.div(&den, prec);
        let r = w
            .modulus(prec)
            .hi()
            .mul(&BigFloat::from_i64(n as i64))
            .round(crate::rigor::RAD_BITS, Round::Up);
        balls.push(ComplexBall::new(zs[k].re.clone(), zs[k].im.clone(), r));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !balls[i].disjoint_from(&balls[j]) {
                return None;
            }
        }
    }
    Some(balls)
}

/// Isolate all roots of a squarefree polynomial into pairwise disjoint balls
/// of radius at most 2^target_log2.
fn isolate_squarefree(g: &IntPolynomial, target_log2: i64) -> Result<Vec<ComplexBall>> {
    let n = g.degree();
    if n == 0 {
        return Ok(vec![]);
    }
    let radius_cap = BigFloat::one().mul_pow2(target_log2);
    if n == 1 {
        // Exact rational root -c0/c1, enclosed as tightly as requested.
        let root = BigRational::new(-g.coefficient(0), g.coefficient(1));
        let mut prec = 128u32.max((-target_log2).max(0) as u32 + 16);
        loop {
            let iv = RealInterval::from_rational(&root, prec);
            let half = BigFloat::from_i64(1).mul_pow2(-1);
            let mid = iv.lo().add(iv.hi()).mul(&half);
            let rad = iv.hi().sub(iv.lo()).round(crate::rigor::RAD_BITS, Round::Up);
            if rad <= radius_cap {
                return Ok(vec![ComplexBall::new(mid, BigFloat::zero(), rad)]);
            }
            prec = bump(prec)?;
        }
    }
    // Circle of initial guesses sized by the Cauchy annulus, with an angular
    // offset so no guess starts on an axis of symmetry.
    let (_, hi) = crate::poly::cauchy_bounds(g).unwrap_or((BigFloat::zero(), BigFloat::from_i64(1)));
    let r = hi.to_f64().min(1e9).max(0.5);
    let mut zs: Vec<Cx> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.43;
            Cx::new(
                BigFloat::from_f64(r * theta.cos()),
                BigFloat::from_f64(r * theta.sin()),
            )
        })
        .collect();
    let coeffs = coeffs_cx(g);
    let mut prec = 128u32.max((-target_log2).max(0) as u32 + 64);
    loop {
        // Iterate until corrections stall at this precision.
        let stall = BigFloat::one().mul_pow2(-2 * (prec as i64 - 8));
        for _ in 0..60 + 8 * n {
            let worst = aberth_pass(&coeffs, &mut zs, prec);
            if worst < stall {
                break;
            }
        }
        if let Some(balls) = certify(g, &zs, prec) {
            if balls.iter().all(|b| *b.rad() <= radius_cap) {
                return Ok(balls);
            }
        }
        prec = bump(prec)?;
    }
}

fn coeffs_cx(g: &IntPolynomial) -> Vec<Cx> {
    g.coeffs()
        .iter()
        .map(|c| Cx::new(BigFloat::from_bigint(c), BigFloat::zero()))
        .collect()
}

fn bump(prec: u32) -> Result<u32> {
    let next = prec.saturating_mul(2);
    if next > PRECISION_CAP {
        return Err(Error::PrecisionExhausted { cap_bits: PRECISION_CAP });
    }
    Ok(next)
}

// ---------------------------------------------------------------------------
// Whole-polynomial isolation with multiplicities and real identification.

/// Isolate every distinct root of f into globally pairwise disjoint balls of
/// radius at most 2^target_log2, with exact multiplicities and certified
/// real/complex identification.
pub fn isolate_roots(f: &IntPolynomial, target_log2: i64) -> Result<Vec<RootBox>> {
    assert!(f.degree() >= 1, "isolate_roots needs degree >= 1");
    let zero_mult = f.zero_root_multiplicity();
    let core = f.shift_down(zero_mult);
    let factors = if core.degree() >= 1 {
        core.squarefree_decomposition()
    } else {
        vec![]
    };
    let mut target = target_log2;
    'outer: loop {
        let mut boxes: Vec<RootBox> = vec![];
        let mut factor_ranges: Vec<(usize, usize)> = vec![];
        if zero_mult > 0 {
            boxes.push(RootBox {
                ball: ComplexBall::zero(),
                multiplicity: zero_mult as u32,
                is_real: true,
                conj_partner: None,
            });
        }
        for (g, mult) in &factors {
            let start = boxes.len();
            for ball in isolate_squarefree(g, target)? {
                boxes.push(RootBox { ball, multiplicity: *mult, is_real: false, conj_partner: None });
            }
            factor_ranges.push((start, boxes.len()));
        }
        // Roots of distinct factors are distinct; insist the balls show it.
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if !boxes[i].ball.disjoint_from(&boxes[j].ball) {
                    target -= 16;
                    ensure_target(target)?;
                    continue 'outer;
                }
            }
        }
        // Conjugate matching within each factor: the conjugate of each ball
        // must meet exactly one ball; itself means a real root, another ball
        // pins down the conjugate pair.
        for (fi, &(lo, hi)) in factor_ranges.iter().enumerate() {
            let mut reals = 0usize;
            for k in lo..hi {
                let cb = boxes[k].ball.conj();
                let hits: Vec<usize> =
                    (lo..hi).filter(|&j| boxes[j].ball.intersects(&cb)).collect();
                if hits.len() != 1 {
                    target -= 16;
                    ensure_target(target)?;
                    continue 'outer;
                }
                if hits[0] == k {
                    boxes[k].is_real = true;
                    reals += 1;
                } else {
                    boxes[k].conj_partner = Some(hits[0]);
                }
            }
            // Independent count of distinct real roots must agree.
            assert_eq!(
                reals,
                factors[fi].0.distinct_real_roots(),
                "conjugate matching disagrees with the Sturm count"
            );
        }
        return Ok(boxes);
    }
}

fn ensure_target(target: i64) -> Result<()> {
    if target < -(PRECISION_CAP as i64) {
        return Err(Error::PrecisionExhausted { cap_bits: PRECISION_CAP });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Modulus classification.

/// Certified grouping of the roots by modulus, in strictly decreasing order.
#[derive(Debug, Clone)]
pub struct RootProfile {
    pub boxes: Vec<RootBox>,
    /// Certified modulus enclosure per box, parallel to `boxes`.
    pub moduli: Vec<RealInterval>,
    /// Indices grouped by equal modulus, groups sorted by decreasing modulus.
    pub groups: Vec<Vec<usize>>,
    /// Total multiplicity of the maximal-modulus group.
    pub k_max: u32,
    /// Exactly one maximal-modulus root, simple, with positive modulus.
    pub dominant: bool,
    pub max_modulus: RealInterval,
    pub second_modulus: Option<RealInterval>,
}

impl RootProfile {
    pub fn dominant_root(&self) -> Option<&RootBox> {
        if self.dominant {
            Some(&self.boxes[self.groups[0][0]])
        } else {
            None
        }
    }
}

/// Classify root moduli with certificates, starting from balls of radius
/// 2^start_target and refining as needed.
pub fn root_profile_at(
    f: &IntPolynomial,
    allow_zero_roots: bool,
    start_target: i64,
) -> Result<RootProfile> {
    assert!(f.degree() >= 1);
    if f.constant_term().is_zero() && !allow_zero_roots {
        return Err(Error::ZeroRoot);
    }
    // Separation bounds come from the squarefree part, which has every
    // distinct root of f exactly once.
    let (sf, _) = f.squarefree_part();
    let m = sf.degree();
    let h = sf.height();
    let gap_general = if m >= 3 {
        Some(modulus_gap_bound(m, &h, GapCase::General)?)
    } else {
        None
    };
    let gap_one_real = if m >= 3 {
        Some(modulus_gap_bound(m, &h, GapCase::OneReal)?)
    } else {
        None
    };
    let gap_quadratic = if m == 2 {
        Some(modulus_gap_bound(2, &h, GapCase::Quadratic)?)
    } else {
        None
    };
    let mut target = start_target;
    'outer: loop {
        let boxes = isolate_roots(f, target)?;
        let prec = ((-target).max(0) as u32) + 64;
        let moduli: Vec<RealInterval> = boxes.iter().map(|b| b.ball.modulus(prec)).collect();
        let n = boxes.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if !moduli[i].overlaps(&moduli[j]) {
                    continue;
                }
                let certified_equal = if boxes[i].conj_partner == Some(j) {
                    true
                } else {
                    // Contrapositive of the separation bound: enclosures of
                    // two root moduli that overlap while their combined width
                    // is below the guaranteed gap can only be equal.
                    let gap = if m == 2 {
                        // A real quadratic with a non-real root has a
                        // conjugate pair, caught above; distinct moduli of a
                        // quadratic force two real roots.
                        gap_quadratic.as_ref()
                    } else if boxes[i].is_real || boxes[j].is_real {
                        gap_one_real.as_ref()
                    } else {
                        gap_general.as_ref()
                    };
                    match gap {
                        Some(gap) => moduli[i].width().add(&moduli[j].width()) < *gap,
                        None => false,
                    }
                };
                if certified_equal {
                    let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                    uf[a] = b;
                } else {
                    target -= 32;
                    ensure_target(target)?;
                    continue 'outer;
                }
            }
        }
        // Build groups and order them by modulus.
        let mut groups: Vec<Vec<usize>> = vec![];
        let mut rep: Vec<(usize, usize)> = vec![]; // (root index of class rep, group slot)
        for i in 0..n {
            let r = find(&mut uf, i);
            if let Some(&(_, slot)) = rep.iter().find(|&&(rr, _)| rr == r) {
                groups[slot].push(i);
            } else {
                rep.push((r, groups.len()));
                groups.push(vec![i]);
            }
        }
        groups.sort_by(|a, b| {
            moduli[b[0]]
                .lo()
                .partial_cmp(moduli[a[0]].lo())
                .expect("total order on bounds")
        });
        let hull = |g: &[usize]| {
            let mut h = moduli[g[0]].clone();
            for &i in &g[1..] {
                h = h.hull(&moduli[i]);
            }
            h
        };
        let max_modulus = hull(&groups[0]);
        // The top group must be certified nonzero unless it is the exact
        // zero ball (which happens only when zero is the sole root).
        let top_is_zero_ball =
            groups[0].len() == 1 && boxes[groups[0][0]].ball.rad().is_zero()
                && boxes[groups[0][0]].ball.re().is_zero()
                && boxes[groups[0][0]].ball.im().is_zero();
        if !top_is_zero_ball && !max_modulus.is_strictly_positive() {
            target -= 32;
            ensure_target(target)?;
            continue 'outer;
        }
        let k_max: u32 = groups[0].iter().map(|&i| boxes[i].multiplicity).sum();
        let dominant = k_max == 1 && !top_is_zero_ball;
        let second_modulus = groups.get(1).map(|g| hull(g));
        return Ok(RootProfile {
            boxes,
            moduli,
            groups,
            k_max,
            dominant,
            max_modulus,
            second_modulus,
        });
    }
}

/// Classify root moduli with certificates at the default starting radius.
pub fn root_profile(f: &IntPolynomial, allow_zero_roots: bool) -> Result<RootProfile> {
    root_profile_at(f, allow_zero_roots, -64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending_i64(desc)
    }

    fn approx(b: &RootBox) -> (f64, f64) {
        b.ball.to_f64_pair()
    }

    #[test]
    fn fibonacci_roots() {
        let boxes = isolate_roots(&poly(&[1, -1, -1]), -80).unwrap();
        assert_eq!(boxes.len(), 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut res: Vec<f64> = boxes.iter().map(|b| approx(b).0).collect();
        res.sort_by(f64::total_cmp);
        assert!((res[0] - (1.0 - phi)).abs() < 1e-12);
        assert!((res[1] - phi).abs() < 1e-12);
        assert!(boxes.iter().all(|b| b.is_real && b.multiplicity == 1));
    }

    #[test]
    fn conjugate_pair_detection() {
        // X^2 - X + 2: complex pair with modulus sqrt(2).
        let boxes = isolate_roots(&poly(&[1, -1, 2]), -80).unwrap();
        assert_eq!(boxes.len(), 2);
        assert!(boxes.iter().all(|b| !b.is_real));
        assert_eq!(boxes[0].conj_partner, Some(1));
        assert_eq!(boxes[1].conj_partner, Some(0));
        let (re, im) = approx(&boxes[0]);
        assert!((re - 0.5).abs() < 1e-12);
        assert!((im.abs() - (7f64).sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn multiplicities_from_yun() {
        // (X-1)^2 (X-2)^3
        let f = poly(&[1, -1]).mul(&poly(&[1, -1]))
            .mul(&poly(&[1, -2])).mul(&poly(&[1, -2])).mul(&poly(&[1, -2]));
        let mut boxes = isolate_roots(&f, -60).unwrap();
        boxes.sort_by(|a, b| approx(a).0.total_cmp(&approx(b).0));
        assert_eq!(boxes.len(), 2);
        assert_eq!(boxes[0].multiplicity, 2);
        assert_eq!(boxes[1].multiplicity, 3);
        assert!((approx(&boxes[0]).0 - 1.0).abs() < 1e-12);
        assert!((approx(&boxes[1]).0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_roots_exact() {
        // X^3 (X - 3)
        let f = poly(&[1, -3, 0, 0, 0]);
        let boxes = isolate_roots(&f, -60).unwrap();
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].ball.rad().is_zero());
        assert_eq!(boxes[0].multiplicity, 3);
        assert_eq!(boxes[0].real_sign(), Some(0));
        assert!((approx(&boxes[1]).0 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn profile_dominant_fibonacci() {
        let p = root_profile(&poly(&[1, -1, -1]), false).unwrap();
        assert!(p.dominant);
        assert_eq!(p.k_max, 1);
        assert_eq!(p.groups.len(), 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((p.max_modulus.to_f64_mid() - phi).abs() < 1e-12);
        let d = p.dominant_root().unwrap();
        assert_eq!(d.real_sign(), Some(1));
    }

    #[test]
    fn profile_equal_modulus_conjugates() {
        // X^2 - X + 2: one group of two conjugate roots, no dominant root.
        let p = root_profile(&poly(&[1, -1, 2]), false).unwrap();
        assert!(!p.dominant);
        assert_eq!(p.k_max, 2);
        assert_eq!(p.groups.len(), 1);
        assert!((p.max_modulus.to_f64_mid() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn profile_mixed_equal_modulus_needs_gap_certificate() {
        // X^3 - 3X^2 + 6X - 8 = (X-2)(X^2 - X + 4): all three roots have
        // modulus 2 but only two are conjugates.
        let p = root_profile(&poly(&[1, -3, 6, -8]), false).unwrap();
        assert_eq!(p.groups.len(), 1);
        assert_eq!(p.k_max, 3);
        assert!(!p.dominant);
        // X^3 - 1 likewise: 1 and a conjugate pair on the unit circle.
        let q = root_profile(&poly(&[1, 0, 0, -1]), false).unwrap();
        assert_eq!(q.groups.len(), 1);
        assert_eq!(q.k_max, 3);
    }

    #[test]
    fn profile_tribonacci() {
        let p = root_profile(&poly(&[1, -1, -1, -1]), false).unwrap();
        assert!(p.dominant);
        assert_eq!(p.groups.len(), 2);
        assert_eq!(p.groups[1].len(), 2);
        assert!((p.max_modulus.to_f64_mid() - 1.8392867552141612).abs() < 1e-12);
        let second = p.second_modulus.as_ref().unwrap();
        assert!((second.to_f64_mid() - 0.7373527057603276).abs() < 1e-12);
    }

    #[test]
    fn profile_zero_root_allowed() {
        // X^2 (X - 2): zero is a double root, 2 dominates.
        let p = root_profile(&poly(&[1, -2, 0, 0]), true).unwrap();
        assert!(p.dominant);
        assert_eq!(p.groups.len(), 2);
        assert!(matches!(root_profile(&poly(&[1, -2, 0, 0]), false), Err(Error::ZeroRoot)));
    }

    #[test]
    fn profile_all_zero_roots_not_dominant() {
        let p = root_profile(&poly(&[1, 0, 0, 0]), true).unwrap();
        assert!(!p.dominant);
        assert_eq!(p.k_max, 3);
        assert_eq!(p.groups.len(), 1);
    }

    #[test]
    fn tight_target_radius_honored() {
        let boxes = isolate_roots(&poly(&[1, -1, -1]), -300).unwrap();
        let cap = BigFloat::one().mul_pow2(-300);
        assert!(boxes.iter().all(|b| *b.ball.rad() <= cap));
    }

    #[test]
    fn high_degree_cyclotomic_like() {
        // X^6 - 1: six simple roots on the unit circle, one group.
        let p = root_profile(&poly(&[1, 0, 0, 0, 0, 0, -1]), false).unwrap();
        assert_eq!(p.groups.len(), 1);
        assert_eq!(p.k_max, 6);
        let reals = p.boxes.iter().filter(|b| b.is_real).count();
        assert_eq!(reals, 2);
    }
}
