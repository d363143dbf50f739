//! Dyadic rationals `mant * 2^exp` with arbitrary-precision mantissa.
//!
//! All arithmetic except division is exact. Directed rounding to a given
//! number of fractional bits is the primitive the interval layer builds on.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// A dyadic rational `mant * 2^exp`, normalized so `mant` is odd or zero
/// (zero is stored with `exp == 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// Rounding direction for the lossy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// 2^k
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        Dyadic::new((&hi.mant << shift) + &lo.mant, lo.exp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to a multiple of 2^-prec in the given direction.
    pub fn round(&self, prec: i64, dir: Round) -> Self {
        if self.is_zero() || self.exp >= -prec {
            return self.clone();
        }
        let shift = (-prec - self.exp) as u64;
        let den = BigInt::one() << shift;
        let q = match dir {
            Round::Down => self.mant.div_floor(&den),
            Round::Up => -((-&self.mant).div_floor(&den)),
        };
        Dyadic::new(q, -prec)
    }

    /// Directed rounding of the rational num/den (den != 0) to prec fractional bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: i64, dir: Round) -> Self {
        assert!(!den.is_zero(), "from_ratio: zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = if prec >= 0 { num << (prec as u64) } else { num >> ((-prec) as u64) };
        let q = match dir {
            Round::Down => scaled.div_floor(&den),
            Round::Up => -((-scaled).div_floor(&den)),
        };
        Dyadic::new(q, -prec)
    }

    /// Directed dyadic division to prec fractional bits.
    pub fn div(&self, other: &Self, prec: i64, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        let e = self.exp - other.exp;
        let q = Dyadic::from_ratio(&self.mant, &other.mant, prec + e.max(0) + 64, dir);
        q.mul_pow2(e).round(prec, dir)
    }

    /// Floor square root scaled to prec fractional bits; `self >= 0` required
    /// for Down, and the result brackets sqrt from the requested side.
    pub fn sqrt(&self, prec: i64, dir: Round) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // sqrt(m * 2^e) * 2^prec = sqrt(m * 2^(e + 2 prec))
        let e2 = self.exp + 2 * prec;
        let scaled: BigInt = if e2 >= 0 { &self.mant << (e2 as u64) } else { &self.mant >> ((-e2) as u64) };
        // For Down, use floor of the (possibly floored) scaled value: still a lower bound.
        match dir {
            Round::Down => Dyadic::new(scaled.sqrt(), -prec),
            Round::Up => {
                // Ceiling of sqrt of a value >= self * 4^prec.
                let scaled_up: BigInt = if e2 >= 0 {
                    scaled
                } else {
                    // ceil(m / 2^-e2)
                    -((-&self.mant).div_floor(&(BigInt::one() << ((-e2) as u64))))
                };
                let r = scaled_up.sqrt();
                if &r * &r == scaled_up {
                    Dyadic::new(r, -prec)
                } else {
                    Dyadic::new(r + 1, -prec)
                }
            }
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Approximate conversion for rendering; not used in any proof path.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let excess = bits - 53;
        if excess > 0 {
            let m = (&self.mant >> (excess as u64)).to_f64().unwrap_or(0.0);
            m * 2f64.powi((self.exp + excess) as i32)
        } else {
            self.mant.to_f64().unwrap_or(0.0) * 2f64.powi(self.exp as i32)
        }
    }

    /// Decimal string with exactly `digits` fractional decimal digits,
    /// directed rounding.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let ten_d = BigInt::from(10u32).pow(digits);
        // n = round(self * 10^digits)
        let scaled_num = &self.mant * &ten_d;
        let n = if self.exp >= 0 {
            scaled_num << (self.exp as u64)
        } else {
            let den = BigInt::one() << ((-self.exp) as u64);
            match dir {
                Round::Down => scaled_num.div_floor(&den),
                Round::Up => -((-scaled_num).div_floor(&den)),
            }
        };
        let neg = n.is_negative();
        let mag = n.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        let (int_part, frac_part) = mag.split_at(split);
        let body = if digits == 0 { int_part.to_string() } else { format!("{int_part}.{frac_part}") };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}
