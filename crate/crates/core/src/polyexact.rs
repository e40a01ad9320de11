//! Exact polynomial arithmetic over the rationals and Gaussian rationals.
//!
//! Root *counting* is done in exact arithmetic (Sturm sequences over the
//! rationals, gcd-based distinct counts over the complexes) because Crofton
//! counts must be integers, never float-fuzzy. Root *locations* are then
//! refined in floating point inside certified isolating intervals.
//!
//! `f64` coefficients convert exactly: every finite float is a dyadic
//! rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Result of a root count that can degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCount {
    Finite(usize),
    /// The zero polynomial: every parameter solves the equation.
    Infinite,
}

impl RootCount {
    pub fn finite(self) -> Option<usize> {
        match self {
            RootCount::Finite(n) => Some(n),
            RootCount::Infinite => None,
        }
    }
}

/// Univariate polynomial with exact rational coefficients, ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    /// Exact conversion from float coefficients.
    pub fn from_f64(coeffs: &[f64]) -> Result<Self> {
        let converted: Option<Vec<BigRational>> =
            coeffs.iter().map(|&c| BigRational::from_float(c)).collect();
        converted
            .map(Self::new)
            .ok_or_else(|| Error::Domain("non-finite polynomial coefficient".into()))
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of `self / other` (other nonzero).
    fn remainder(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero());
        let d = other.degree();
        let lead = other.coeffs[d].clone();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree() >= d {
            let rd = rem.degree();
            let factor = &rem.coeffs[rd] / &lead;
            for i in 0..=d {
                let idx = rd - d + i;
                let sub = &factor * &other.coeffs[i];
                rem.coeffs[idx] = &rem.coeffs[idx] - sub;
            }
            // Force the leading term to cancel exactly, then renormalize.
            rem.coeffs[rd] = BigRational::zero();
            rem = Self::new(rem.coeffs);
        }
        rem
    }

    /// Divides by the largest coefficient magnitude (a positive constant, so
    /// all sign information is preserved). Keeps Sturm chains small.
    fn normalized_signs(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let m = self
            .coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .expect("nonempty");
        if m.is_zero() || m.is_one() {
            return self;
        }
        Self::new(self.coeffs.into_iter().map(|c| c / &m).collect())
    }
}

/// Canonical Sturm chain of `p`.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone().normalized_signs()];
    if p.degree() == 0 {
        return chain;
    }
    chain.push(p.derivative().normalized_signs());
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let rem = chain[n - 2].remainder(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        let neg = RatPoly::new(rem.coeffs.into_iter().map(|c| -c).collect());
        chain.push(neg.normalized_signs());
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Nudge used to move window endpoints off roots: 2^-100.
fn endpoint_nudge() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2).pow(100))
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
///
/// Exact for roots away from the endpoints by more than 2^-100; endpoint
/// roots are counted as inside.
pub fn count_real_roots(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> RootCount {
    if p.is_zero() {
        return RootCount::Infinite;
    }
    if p.degree() == 0 {
        return RootCount::Finite(0);
    }
    let chain = sturm_chain(p);
    let eps = endpoint_nudge();
    let a = lo - &eps;
    let b = hi + &eps;
    let va = sign_variations(&chain, &a);
    let vb = sign_variations(&chain, &b);
    RootCount::Finite(va.saturating_sub(vb))
}

/// Distinct real roots of `p` inside `[lo, hi]`, refined to `tol`, in
/// ascending order. Counting and isolation use exact Sturm bisection; final
/// refinement is floating-point bisection inside the certified interval
/// (falling back to Sturm bisection at even-multiplicity roots).
pub fn real_roots(p: &RatPoly, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    let lo_r = BigRational::from_float(lo)
        .ok_or_else(|| Error::Domain("non-finite window".into()))?;
    let hi_r = BigRational::from_float(hi)
        .ok_or_else(|| Error::Domain("non-finite window".into()))?;
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial has no isolated roots".into()));
    }
    if p.degree() == 0 {
        return Ok(vec![]);
    }
    let chain = sturm_chain(p);
    let eps = endpoint_nudge();
    let a = &lo_r - &eps;
    let b = &hi_r + &eps;
    let va = sign_variations(&chain, &a);
    let vb = sign_variations(&chain, &b);
    let total = va.saturating_sub(vb);
    let mut roots = Vec::with_capacity(total);
    if total > 0 {
        isolate(&chain, (a, va), (b, vb), total, tol, &mut roots, 0);
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(roots)
}

/// Recursive Sturm bisection down to isolating intervals, then refinement.
fn isolate(
    chain: &[RatPoly],
    lo: (BigRational, usize),
    hi: (BigRational, usize),
    count: usize,
    tol: f64,
    out: &mut Vec<f64>,
    depth: u32,
) {
    let (a, va) = lo;
    let (b, vb) = hi;
    debug_assert_eq!(va.saturating_sub(vb), count);
    let width = (&b - &a).to_f64().unwrap_or(f64::INFINITY);
    if count == 1 {
        out.push(refine_single(chain, &a, &b, va, tol));
        return;
    }
    if width <= tol || depth > 200 {
        // A cluster narrower than the tolerance: report the midpoint for
        // each root in it.
        let mid = ((&a + &b) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(0.0);
        for _ in 0..count {
            out.push(mid);
        }
        return;
    }
    let mid = (&a + &b) / BigRational::from_integer(2.into());
    let vm = sign_variations(chain, &mid);
    let left = va.saturating_sub(vm);
    let right = vm.saturating_sub(vb);
    if left > 0 {
        isolate(chain, (a, va), (mid.clone(), vm), left, tol, out, depth + 1);
    }
    if right > 0 {
        isolate(chain, (mid, vm), (b, vb), right, tol, out, depth + 1);
    }
}

fn refine_single(
    chain: &[RatPoly],
    a: &BigRational,
    b: &BigRational,
    va: usize,
    tol: f64,
) -> f64 {
    let p = &chain[0];
    let mut fa = a.to_f64().unwrap();
    let mut fb = b.to_f64().unwrap();
    let sa = p.eval_f64(fa);
    let sb = p.eval_f64(fb);
    // The interval is half-open on the left: a zero sitting exactly on the
    // left endpoint belongs to the neighbouring interval, so an endpoint
    // zero forces the exact Sturm path below.
    if sa != 0.0 && sb != 0.0 && sa.signum() != sb.signum() {
        // Simple root (or odd multiplicity): plain float bisection.
        let mut left_sign = sa;
        while fb - fa > tol {
            let m = 0.5 * (fa + fb);
            if m <= fa || m >= fb {
                break;
            }
            let vm = p.eval_f64(m);
            if vm == 0.0 {
                return m;
            }
            if vm.signum() == left_sign.signum() {
                fa = m;
                left_sign = vm;
            } else {
                fb = m;
            }
        }
        return 0.5 * (fa + fb);
    }
    // Even multiplicity: bisect on the Sturm variation count instead.
    let mut lo = a.clone();
    let mut hi = b.clone();
    let mut vl = va;
    let two = BigRational::from_integer(2.into());
    for _ in 0..200 {
        if (hi.clone() - lo.clone()).to_f64().unwrap_or(0.0) <= tol {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let vm = sign_variations(chain, &mid);
        if vl.saturating_sub(vm) >= 1 {
            hi = mid;
        } else {
            lo = mid;
            vl = vm;
        }
    }
    0.5 * (lo.to_f64().unwrap() + hi.to_f64().unwrap())
}

// --- Gaussian rationals ------------------------------------------------------

/// Exact complex rational `re + i im`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(BigRational::from_float(re)?, BigRational::from_float(im)?))
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn div(&self, o: &Self) -> Self {
        let d = &o.re * &o.re + &o.im * &o.im;
        Self::new(
            (&self.re * &o.re + &self.im * &o.im) / &d,
            (&self.im * &o.re - &self.re * &o.im) / &d,
        )
    }
}

/// Polynomial with Gaussian-rational coefficients, ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPoly {
    coeffs: Vec<GaussRational>,
}

impl GaussPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(GaussRational::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(GaussRational::zero());
        }
        Self { coeffs }
    }

    /// Exact conversion from complex float coefficients `(re, im)`.
    pub fn from_f64(coeffs: &[(f64, f64)]) -> Result<Self> {
        let converted: Option<Vec<GaussRational>> = coeffs
            .iter()
            .map(|&(re, im)| GaussRational::from_f64(re, im))
            .collect();
        converted
            .map(Self::new)
            .ok_or_else(|| Error::Domain("non-finite polynomial coefficient".into()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::new(vec![]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let k = BigRational::from_integer(BigInt::from(i));
                    GaussRational::new(&c.re * &k, &c.im * &k)
                })
                .collect(),
        )
    }

    fn monic(mut self) -> Self {
        if self.is_zero() {
            return self;
        }
        let lead = self.coeffs.last().unwrap().clone();
        for c in &mut self.coeffs {
            *c = c.div(&lead);
        }
        self
    }

    fn remainder(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero());
        let d = other.degree();
        let lead = other.coeffs[d].clone();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree() >= d {
            let rd = rem.degree();
            let factor = rem.coeffs[rd].div(&lead);
            for i in 0..=d {
                let idx = rd - d + i;
                let sub = factor.mul(&other.coeffs[i]);
                rem.coeffs[idx] = rem.coeffs[idx].sub(&sub);
            }
            rem.coeffs[rd] = GaussRational::zero();
            rem = Self::new(rem.coeffs);
        }
        rem
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone().monic();
        let mut b = other.clone().monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.remainder(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Number of *distinct* complex roots: `deg(p) - deg(gcd(p, p'))`.
    pub fn distinct_complex_roots(&self) -> RootCount {
        if self.is_zero() {
            return RootCount::Infinite;
        }
        if self.degree() == 0 {
            return RootCount::Finite(0);
        }
        let g = self.gcd(&self.derivative());
        RootCount::Finite(self.degree() - g.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> RatPoly {
        RatPoly::from_f64(c).unwrap()
    }

    #[test]
    fn sturm_counts_quadratic() {
        // t^2 - 1: two roots in [-2, 2], none in [2, 3]
        let p = poly(&[-1.0, 0.0, 1.0]);
        let two = BigRational::from_float(2.0).unwrap();
        let neg_two = BigRational::from_float(-2.0).unwrap();
        let three = BigRational::from_float(3.0).unwrap();
        assert_eq!(count_real_roots(&p, &neg_two, &two), RootCount::Finite(2));
        assert_eq!(count_real_roots(&p, &two, &three), RootCount::Finite(0));
        // t^2 + 1: no real roots
        let p = poly(&[1.0, 0.0, 1.0]);
        assert_eq!(count_real_roots(&p, &neg_two, &two), RootCount::Finite(0));
    }

    #[test]
    fn double_root_counts_once() {
        // (t-1)^2
        let p = poly(&[1.0, -2.0, 1.0]);
        let lo = BigRational::from_float(0.0).unwrap();
        let hi = BigRational::from_float(2.0).unwrap();
        assert_eq!(count_real_roots(&p, &lo, &hi), RootCount::Finite(1));
        let roots = real_roots(&p, 0.0, 2.0, 1e-12).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() < 1e-9, "{roots:?}");
    }

    #[test]
    fn endpoint_root_included() {
        let p = poly(&[-1.0, 1.0]); // t - 1
        let lo = BigRational::from_float(1.0).unwrap();
        let hi = BigRational::from_float(2.0).unwrap();
        assert_eq!(count_real_roots(&p, &lo, &hi), RootCount::Finite(1));
    }

    #[test]
    fn zero_polynomial_is_infinite() {
        let p = RatPoly::zero();
        let a = BigRational::zero();
        assert_eq!(count_real_roots(&p, &a, &a), RootCount::Infinite);
        let gp = GaussPoly::new(vec![]);
        assert_eq!(gp.distinct_complex_roots(), RootCount::Infinite);
    }

    #[test]
    fn cubic_roots_are_refined() {
        // (t+2)(t)(t-1.5) = t^3 + 0.5 t^2 - 3 t
        let p = poly(&[0.0, -3.0, 0.5, 1.0]);
        let roots = real_roots(&p, -5.0, 5.0, 1e-12).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-2.0, 0.0, 1.5]) {
            assert!((r - want).abs() < 1e-10, "{roots:?}");
        }
    }

    #[test]
    fn close_roots_isolated() {
        // roots at 0.5 and 0.5 + 2^-20, both exactly dyadic
        let a = 0.5;
        let b = 0.5 + 2.0f64.powi(-20);
        let p = poly(&[a * b, -(a + b), 1.0]);
        let roots = real_roots(&p, 0.0, 1.0, 1e-14).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - a).abs() < 1e-11 && (roots[1] - b).abs() < 1e-11);
    }

    #[test]
    fn distinct_complex_counts() {
        // t^2 + 1: two distinct complex roots
        let p = GaussPoly::from_f64(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert_eq!(p.distinct_complex_roots(), RootCount::Finite(2));
        // (t - i)^2 = t^2 - 2 i t - 1: one distinct root
        let p = GaussPoly::from_f64(&[(-1.0, 0.0), (0.0, -2.0), (1.0, 0.0)]).unwrap();
        assert_eq!(p.distinct_complex_roots(), RootCount::Finite(1));
        // cubic with three distinct roots
        let p = GaussPoly::from_f64(&[(1.0, 1.0), (0.5, 0.0), (0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert_eq!(p.distinct_complex_roots(), RootCount::Finite(3));
    }
}
