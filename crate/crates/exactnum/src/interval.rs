//! Closed intervals with dyadic endpoints and outward rounding.
//!
//! Every operation returns an interval guaranteed to contain the exact image
//! of its inputs. Transcendental enclosures (pi, arccos) come from the arcsin
//! Taylor series with an explicit geometric tail bound, so the results are
//! mathematically rigorous, not merely heuristically tight.

use crate::dyadic::{Dyadic, Round};
use crate::NumError;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Default number of fractional bits kept by the outward-rounding cap.
pub const DEFAULT_PREC: i64 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl RatInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        RatInterval::point(Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        RatInterval::point(Dyadic::from_int(n))
    }

    /// Tight outward enclosure of num/den at prec fractional bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: i64) -> Self {
        RatInterval {
            lo: Dyadic::from_ratio(num, den, prec, Round::Down),
            hi: Dyadic::from_ratio(num, den, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// Sign if determined: Some(-1) if hi < 0, Some(1) if lo > 0,
    /// Some(0) if the interval is exactly [0,0], None otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RatInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Self) -> Self {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval { lo: self.lo.add(&other.lo), hi: self.hi.add(&other.hi) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if k >= 0 {
            RatInterval { lo: self.lo.mul_int(k), hi: self.hi.mul_int(k) }
        } else {
            RatInterval { lo: self.hi.mul_int(k), hi: self.lo.mul_int(k) }
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        let kd = Dyadic::from_bigint(k.clone());
        let a = self.lo.mul(&kd);
        let b = self.hi.mul(&kd);
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        RatInterval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// Outward-round both endpoints to prec fractional bits, bounding
    /// mantissa growth in long computation chains.
    pub fn cap(&self, prec: i64) -> Self {
        RatInterval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    /// Division by an interval not containing zero.
    pub fn div(&self, other: &Self, prec: i64) -> Result<Self, NumError> {
        if other.contains_zero() {
            return Err(NumError::InvalidDomain("interval division by zero".into()));
        }
        let c = [
            self.lo.div(&other.lo, prec, Round::Down),
            self.lo.div(&other.hi, prec, Round::Down),
            self.hi.div(&other.lo, prec, Round::Down),
            self.hi.div(&other.hi, prec, Round::Down),
        ];
        let cu = [
            self.lo.div(&other.lo, prec, Round::Up),
            self.lo.div(&other.hi, prec, Round::Up),
            self.hi.div(&other.lo, prec, Round::Up),
            self.hi.div(&other.hi, prec, Round::Up),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = cu.iter().max().unwrap().clone();
        Ok(RatInterval { lo, hi })
    }

    /// Enclosure of sqrt; requires hi >= 0, and clips a slightly negative
    /// lower endpoint (outward rounding artifact) to zero.
    pub fn sqrt(&self, prec: i64) -> Result<Self, NumError> {
        if self.hi.signum() < 0 {
            return Err(NumError::InvalidDomain("sqrt of negative interval".into()));
        }
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(prec, Round::Down)
        };
        let hi = self.hi.sqrt(prec, Round::Up);
        Ok(RatInterval { lo, hi })
    }

    pub fn square(&self) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let (mut lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if self.contains_zero() {
            lo = Dyadic::zero();
        }
        RatInterval { lo, hi }
    }

    /// Rigorous enclosure of pi at roughly prec valid fractional bits.
    pub fn pi(prec: i64) -> Self {
        static CACHE: OnceLock<Mutex<HashMap<i64, RatInterval>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = cache.lock().unwrap().get(&prec) {
            return v.clone();
        }
        // pi = 6 arcsin(1/2)
        let half = RatInterval::point(Dyadic::pow2(-1));
        let v = asin_nonneg(&half, prec + 8).mul_int(6).cap(prec);
        cache.lock().unwrap().insert(prec, v.clone());
        v
    }

    /// Rigorous enclosure of arccos over the interval, which is clipped to
    /// [-1, 1] first (outward rounding can nudge endpoints past the domain);
    /// an interval disjoint from [-1, 1] is an error.
    pub fn arccos(&self, prec: i64) -> Result<Self, NumError> {
        let one = Dyadic::one();
        let neg_one = one.neg();
        if self.lo > one || self.hi < neg_one {
            return Err(NumError::InvalidDomain("arccos of interval outside [-1,1]".into()));
        }
        let lo_clipped = if self.lo < neg_one { neg_one.clone() } else { self.lo.clone() };
        let hi_clipped = if self.hi > one { one.clone() } else { self.hi.clone() };
        // arccos is decreasing
        let lower = acos_point(&hi_clipped, prec);
        let upper = acos_point(&lo_clipped, prec);
        Ok(RatInterval { lo: lower.lo, hi: upper.hi }.cap(prec))
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Decimal rendering "[lo, hi]" with directed rounding, `digits`
    /// fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        format!(
            "[{},{}]",
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up)
        )
    }
}

impl std::fmt::Display for RatInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

/// Enclosure of arcsin on an interval contained in [0, 0.7]: Taylor series
/// sum_{n>=0} C(2n,n)/(4^n (2n+1)) x^(2n+1) with tail bound
/// x^(2N+1) / (1 - x^2) (all series coefficients are <= 1).
fn asin_nonneg(x: &RatInterval, prec: i64) -> RatInterval {
    assert!(x.lo().signum() >= 0, "asin_nonneg: negative input");
    let w = prec + 16;
    let x2 = x.square().cap(w);
    let mut term = x.clone(); // x^(2n+1)
    let mut sum = RatInterval::zero();
    let mut binom = BigInt::one(); // C(2n, n)
    let mut den = BigInt::one(); // 4^n (2n+1)
    let mut n: u64 = 0;
    let threshold = Dyadic::pow2(-(prec + 8));
    loop {
        let coeff = RatInterval::from_ratio(&binom, &den, w);
        sum = sum.add(&coeff.mul(&term)).cap(w);
        n += 1;
        binom = binom * BigInt::from((2 * n - 1) * (2 * n)) / BigInt::from(n * n);
        den = BigInt::from(4u32).pow(n as u32) * BigInt::from(2 * n + 1);
        term = term.mul(&x2).cap(w);
        if term.hi() < &threshold {
            break;
        }
        assert!(n < 100_000, "asin series failed to converge");
    }
    // tail: sum_{m >= n} c_m x^(2m+1) in [0, term_hi / (1 - x2_hi)]
    let one_minus = RatInterval::from_int(1).sub(&x2);
    assert!(one_minus.lo().signum() > 0, "asin_nonneg: input too close to 1");
    let tail = RatInterval::new(Dyadic::zero(), term.hi().clone())
        .div(&one_minus, w)
        .expect("tail denominator positive");
    let tail = RatInterval::new(Dyadic::zero(), tail.hi().clone().max(Dyadic::zero()));
    sum.add(&tail).cap(prec)
}

/// Enclosure of arccos at a single dyadic point in [-1, 1].
fn acos_point(x: &Dyadic, prec: i64) -> RatInterval {
    let w = prec + 8;
    let one = Dyadic::one();
    let half = Dyadic::pow2(-1);
    if *x == one {
        return RatInterval::zero();
    }
    if *x == one.neg() {
        return RatInterval::pi(prec);
    }
    if x.abs() <= half {
        // pi/2 - asin(|x|) with sign handling
        let half_pi = RatInterval::pi(w).mul_pow2(-1);
        let a = asin_nonneg(&RatInterval::point(x.abs()), w);
        let r = if x.signum() >= 0 { half_pi.sub(&a) } else { half_pi.add(&a) };
        r.cap(prec)
    } else if x.signum() > 0 {
        // arccos(x) = 2 asin(sqrt((1-x)/2)), argument < 1/2
        let arg = RatInterval::point(one.sub(x).mul_pow2(-1));
        let root = arg.sqrt(w).expect("nonnegative");
        asin_nonneg(&root, w).mul_pow2(1).cap(prec)
    } else {
        // arccos(x) = pi - arccos(-x)
        let inner = acos_point(&x.neg(), w);
        RatInterval::pi(w).sub(&inner).cap(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    // The reference value is only f64-accurate, so allow rounding slack at
    // the f64 level around mathematically tight enclosures.
    fn assert_encloses(iv: &RatInterval, x: f64) {
        let eps = 1e-12 * (1.0 + x.abs());
        assert!(
            iv.lo().to_f64() - eps <= x && x <= iv.hi().to_f64() + eps,
            "{x} not in {iv}"
        );
    }

    #[test]
    fn interval_basics() {
        let a = RatInterval::new(d(1, -1), d(3, -1)); // [0.5, 1.5]
        let b = RatInterval::new(d(-1, 0), d(1, -2)); // [-1, 0.25]
        let s = a.add(&b);
        assert_eq!(s.lo(), &d(-1, -1));
        assert_eq!(s.hi(), &d(7, -2));
        let p = a.mul(&b);
        assert_eq!(p.lo(), &d(-3, -1)); // 1.5 * -1
        assert_eq!(p.hi(), &d(3, -3)); // 1.5 * 0.25
        assert!(b.contains_zero());
        assert_eq!(a.sign(), Some(1));
        assert_eq!(b.sign(), None);
    }

    #[test]
    fn division_brackets() {
        let a = RatInterval::from_int(1);
        let b = RatInterval::new(d(3, 0), d(3, 0));
        let q = a.div(&b, 100).unwrap();
        assert!(q.lo() <= q.hi());
        assert!(q.mul_int(3).contains(&Dyadic::one()));
        assert!(a.div(&RatInterval::new(d(-1, 0), d(1, 0)), 10).is_err());
    }

    #[test]
    fn pi_enclosure() {
        let pi = RatInterval::pi(128);
        assert_encloses(&pi, std::f64::consts::PI);
        assert!(pi.width() <= Dyadic::pow2(-120));
        // cache hit returns same value
        assert_eq!(RatInterval::pi(128), pi);
    }

    #[test]
    fn arccos_special_values() {
        // arccos(1/2) = pi/3
        let x = RatInterval::point(d(1, -1));
        let a = x.arccos(128).unwrap();
        assert_encloses(&a, std::f64::consts::PI / 3.0);
        assert!(a.width() <= Dyadic::pow2(-96));
        // arccos(0) = pi/2
        let b = RatInterval::zero().arccos(128).unwrap();
        assert_encloses(&b, std::f64::consts::PI / 2.0);
        // arccos(1) = 0, arccos(-1) = pi
        let c = RatInterval::from_int(1).arccos(64).unwrap();
        assert!(c.lo().signum() >= 0 && c.hi() <= &Dyadic::pow2(-60));
        let e = RatInterval::from_int(-1).arccos(64).unwrap();
        assert_encloses(&e, std::f64::consts::PI);
    }

    #[test]
    fn arccos_monotone_and_clipping() {
        let x = RatInterval::new(d(-3, -2), d(7, -3)); // [-0.75, 0.875]
        let a = x.arccos(96).unwrap();
        assert_encloses(&a, (-0.75f64).acos());
        assert_encloses(&a, (0.875f64).acos());
        assert_encloses(&a, 0.3f64.acos());
        // interval poking past 1 clips
        let y = RatInterval::new(d(1, -1), d(9, -3)); // [0.5, 1.125]
        let b = y.arccos(96).unwrap();
        assert!(b.lo().signum() >= 0);
        assert_encloses(&b, 0.5f64.acos());
        // fully outside domain errors
        assert!(RatInterval::new(d(9, -3), d(10, -3)).arccos(32).is_err());
    }

    #[test]
    fn arccos_deep_precision() {
        // enclosures at increasing precision nest around arccos(1/3)
        let x = RatInterval::from_ratio(&BigInt::from(1), &BigInt::from(3), 300);
        let a1 = x.arccos(128).unwrap();
        let a2 = x.arccos(256).unwrap();
        assert!(a1.contains_interval(&a2) || a2.width() < a1.width());
        assert_encloses(&a2, (1.0f64 / 3.0).acos());
        assert!(a2.width() <= Dyadic::pow2(-250));
    }

    #[test]
    fn sqrt_interval() {
        let x = RatInterval::new(d(2, 0), d(3, 0));
        let r = x.sqrt(128).unwrap();
        assert_encloses(&r, 2f64.sqrt());
        assert_encloses(&r, 3f64.sqrt());
        assert!(!r.contains(&d(1, 0)));
    }
}
