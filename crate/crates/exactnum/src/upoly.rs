//! Dense univariate polynomials over the integers.
//!
//! Provides the subresultant polynomial remainder sequence (resultant and
//! gcd), a Sylvester/Bareiss determinant retained as an independent oracle,
//! verified modular gcd and resultant routes for large operands, square-free
//! parts, Kronecker-substitution multiplication, exact sign evaluation at
//! rational and dyadic points, interval evaluation, and the `deg:coeff;...`
//! text format.

use crate::dyadic::Dyadic;
use crate::interval::RatInterval;
use crate::modp::{bigint_mod, crt_symmetric, PolyFp, PrimeStream};
use crate::NumError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivarPoly {
    /// coeffs[i] is the coefficient of x^i; no trailing zeros.
    coeffs: Vec<BigInt>,
}

impl UnivarPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UnivarPoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivarPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UnivarPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        UnivarPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        UnivarPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UnivarPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(deg: usize, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            return UnivarPoly::zero();
        }
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = coeff;
        UnivarPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial (panics on zero).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Sum of absolute coefficient values.
    pub fn height_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn neg(&self) -> Self {
        UnivarPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            c.push(a + b);
        }
        UnivarPoly::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UnivarPoly::zero();
        }
        let work = self.coeffs.len().saturating_mul(other.coeffs.len());
        if work >= 16_384 {
            kronecker_mul(self, other)
        } else {
            self.mul_schoolbook(other)
        }
    }

    fn mul_schoolbook(&self, other: &Self) -> Self {
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        UnivarPoly::new(c)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return UnivarPoly::zero();
        }
        UnivarPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiply by x^k.
    pub fn mul_pow_x(&self, k: usize) -> Self {
        if self.is_zero() {
            return UnivarPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UnivarPoly { coeffs: c }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UnivarPoly::zero();
        }
        UnivarPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-free part with positive leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return UnivarPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        UnivarPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// den^deg * p(num/den) for den > 0; exact sign of p at the rational point.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        assert!(den.is_positive(), "eval_homogeneous: denominator must be positive");
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut acc = self.coeffs.last().unwrap().clone();
        let mut pw = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            pw = &pw * den;
            acc = acc * num + c * &pw;
        }
        acc
    }

    pub fn sign_at_ratio(&self, num: &BigInt, den: &BigInt) -> i32 {
        let v = if den.is_negative() {
            self.eval_homogeneous(&-num, &-den)
        } else {
            self.eval_homogeneous(num, den)
        };
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn sign_at_dyadic(&self, x: &Dyadic) -> i32 {
        if x.exp() >= 0 {
            let v = self.eval_bigint(&(x.mant() << (x.exp() as u64)));
            match v.sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            }
        } else {
            self.sign_at_ratio(x.mant(), &(BigInt::one() << ((-x.exp()) as u64)))
        }
    }

    /// Interval Horner evaluation with per-step outward capping.
    pub fn eval_interval(&self, x: &RatInterval, prec: i64) -> RatInterval {
        let mut acc = RatInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(Dyadic::from_bigint(c.clone()))).cap(prec);
        }
        acc
    }

    /// p(x + a) via repeated synthetic division (exact).
    pub fn taylor_shift(&self, a: &BigInt) -> Self {
        if self.is_zero() || a.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        // Horner-style: repeatedly divide by (x - (-a)) accumulating remainders.
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = &c[j + 1] * a;
                c[j] += add;
            }
        }
        UnivarPoly::new(c)
    }

    /// p(c * x): coefficient i scaled by c^i.
    pub fn scale_arg(&self, cfac: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw = &pw * cfac;
        }
        UnivarPoly::new(out)
    }

    /// 2^(k*deg) * p(x / 2^k): coefficient i scaled by 2^(k*(deg-i)). Exact
    /// integer version of halving the argument, used by root isolation.
    pub fn scale_down_pow2(&self, k: u64) -> Self {
        if self.is_zero() {
            return UnivarPoly::zero();
        }
        let d = self.deg();
        UnivarPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k * ((d - i) as u64)))
                .collect(),
        )
    }

    /// x^deg * p(1/x).
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        UnivarPoly::new(c)
    }

    /// Strip x^k factors; returns (k, quotient).
    pub fn strip_x_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, UnivarPoly::zero());
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        (k, UnivarPoly { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Exact polynomial division over Z; None if it does not divide.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(UnivarPoly::zero());
        }
        let dd = div.deg();
        if self.deg() < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = rem.len() - 1;
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        let lc = div.lc();
        for k in (0..=dn - dd).rev() {
            let head = std::mem::take(&mut rem[k + dd]);
            if head.is_zero() {
                continue;
            }
            let (q, r) = head.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, djc) in div.coeffs.iter().enumerate().take(dd) {
                let sub = &q * djc;
                rem[k + j] -= sub;
            }
            quo[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UnivarPoly::new(quo))
    }

    /// Pseudo-remainder: lc(div)^(deg(self)-deg(div)+1) * self mod div.
    pub fn pseudo_rem(&self, div: &Self) -> Self {
        assert!(!div.is_zero());
        let dd = div.deg();
        if self.degree().map_or(true, |d| d < dd) {
            return self.clone();
        }
        let lb = div.lc().clone();
        let mut e = (self.deg() - dd + 1) as i64;
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= dd {
            let k = r.deg() - dd;
            let rl = r.lc().clone();
            r = r.mul_scalar(&lb).sub(&div.mul_pow_x(k).mul_scalar(&rl));
            e -= 1;
        }
        if e > 0 {
            let mut f = BigInt::one();
            for _ in 0..e {
                f = f * &lb;
            }
            r = r.mul_scalar(&f);
        }
        r
    }

    pub fn to_modp(&self, p: u64) -> PolyFp {
        PolyFp::new(p, self.coeffs.iter().map(|c| bigint_mod(c, p)).collect())
    }

    /// Resultant by the subresultant polynomial remainder sequence.
    pub fn resultant_prs(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let (da, db) = (self.deg(), other.deg());
        if da == 0 && db == 0 {
            // res of two constants is the empty determinant
            return BigInt::one();
        }
        if da == 0 {
            return self.coeffs[0].pow(db as u32);
        }
        if db == 0 {
            return other.coeffs[0].pow(da as u32);
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = UnivarPoly { coeffs: self.coeffs.iter().map(|c| c / &ca).collect() };
        let mut b = UnivarPoly { coeffs: other.coeffs.iter().map(|c| c / &cb).collect() };
        let mut t = ca.pow(db as u32) * cb.pow(da as u32);
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                t = -t;
            }
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        let mut s = BigInt::one();
        loop {
            let da = a.deg();
            let db = b.deg();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            // b = r / (g * h^delta), exact by the subresultant theorem
            let denom = &g * h.pow(delta);
            b = UnivarPoly::new(r.coeffs.iter().map(|c| c / &denom).collect());
            g = a.lc().clone();
            // h = g^delta * h^(1-delta)
            h = if delta == 0 {
                h
            } else {
                let gp = g.pow(delta);
                let hp = h.pow(delta - 1);
                gp / hp
            };
            if b.is_zero() {
                // nontrivial common factor (deg a >= 1 here)
                return BigInt::zero();
            }
            if b.deg() == 0 {
                let da = a.deg() as u32;
                // h' = lc(b)^dA * h^(1-dA); resultant = s*t*h'
                let num = b.coeffs[0].pow(da);
                let hp = if da == 0 { BigInt::one() } else { h.pow(da - 1) };
                return s * t * (num / hp);
            }
        }
    }

    /// Resultant by Bareiss fraction-free elimination of the Sylvester matrix.
    /// Independent oracle for the PRS and modular routes.
    pub fn resultant_sylvester(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let m = self.deg();
        let n = other.deg();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// Resultant by evaluation mod primes + CRT, with a rigorous coefficient
    /// bound (product of row absolute sums of the Sylvester matrix bounds the
    /// determinant's magnitude).
    pub fn resultant_modular(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let m = self.deg();
        let n = other.deg();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return self.coeffs[0].pow(n as u32);
        }
        if n == 0 {
            return other.coeffs[0].pow(m as u32);
        }
        let bound: BigInt = self.height_sum().pow(n as u32) * other.height_sum().pow(m as u32);
        let bound2 = bound << 1;
        let mut primes = Vec::new();
        let mut residues = Vec::new();
        let mut modulus = BigInt::one();
        for p in PrimeStream::new() {
            if bigint_mod(self.lc(), p) == 0 || bigint_mod(other.lc(), p) == 0 {
                continue;
            }
            residues.push(self.to_modp(p).resultant(&other.to_modp(p)));
            primes.push(p);
            modulus *= BigInt::from(p);
            if modulus > bound2 {
                break;
            }
        }
        crt_symmetric(&residues, &primes)
    }

    /// Resultant: PRS for small operands, modular for large, always exact.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let cost = self
            .degree()
            .unwrap_or(0)
            .saturating_mul(other.degree().unwrap_or(0));
        if cost > 400 {
            self.resultant_modular(other)
        } else {
            self.resultant_prs(other)
        }
    }

    /// Primitive gcd with positive leading coefficient, subresultant PRS.
    pub fn gcd_prs(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_normalized();
        }
        if other.is_zero() {
            return self.primitive_normalized();
        }
        let mut a = self.primitive_normalized();
        let mut b = other.primitive_normalized();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            return UnivarPoly::one();
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = (a.deg() - b.deg()) as u32;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive_normalized();
            }
            if r.deg() == 0 {
                return UnivarPoly::one();
            }
            a = b;
            let denom = &g * h.pow(delta);
            b = UnivarPoly::new(r.coeffs.iter().map(|c| c / &denom).collect());
            g = a.lc().clone();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta) / h.pow(delta - 1)
            };
        }
    }

    /// Primitive gcd via modular images with exact-division verification.
    pub fn gcd_modular(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_normalized();
        }
        if other.is_zero() {
            return self.primitive_normalized();
        }
        let a = self.primitive_normalized();
        let b = other.primitive_normalized();
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return UnivarPoly::one();
        }
        let lc_g = a.lc().gcd(b.lc());
        let mut best_deg = usize::MAX;
        let mut primes: Vec<u64> = Vec::new();
        let mut images: Vec<PolyFp> = Vec::new();
        let mut rounds = 0;
        for p in PrimeStream::new() {
            if bigint_mod(a.lc(), p) == 0 || bigint_mod(b.lc(), p) == 0 {
                continue;
            }
            rounds += 1;
            assert!(rounds < 10_000, "modular gcd failed to stabilize");
            let gp = a.to_modp(p).gcd(&b.to_modp(p));
            let d = gp.deg().unwrap();
            if d == 0 {
                return UnivarPoly::one();
            }
            if d < best_deg {
                best_deg = d;
                primes.clear();
                images.clear();
            }
            if d > best_deg {
                continue; // unlucky prime
            }
            let scale = bigint_mod(&lc_g, p);
            images.push(gp.scale(scale));
            primes.push(p);
            // try reconstruction once we have at least one image, doubling effort
            if primes.len().is_power_of_two() {
                let cand = reconstruct_poly(&images, &primes, best_deg);
                let cand = cand.primitive_normalized();
                if !cand.is_zero()
                    && a.div_exact(&cand).is_some()
                    && b.div_exact(&cand).is_some()
                {
                    return cand;
                }
            }
        }
        unreachable!("prime stream is infinite")
    }

    /// Primitive gcd (positive lc); dispatches modular vs PRS.
    pub fn gcd(&self, other: &Self) -> Self {
        let cost = self
            .degree()
            .unwrap_or(0)
            .saturating_mul(other.degree().unwrap_or(0));
        if cost > 400 {
            self.gcd_modular(other)
        } else {
            self.gcd_prs(other)
        }
    }

    /// Square-free part: primitive, positive lc, same real roots without
    /// multiplicity.
    pub fn square_free(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::InvalidDomain("square-free part of zero".into()));
        }
        if self.deg() == 0 {
            return Ok(UnivarPoly::one());
        }
        let p = self.primitive_normalized();
        let g = p.gcd(&p.derivative());
        if g.degree() == Some(0) {
            return Ok(p);
        }
        let sf = p
            .div_exact(&g)
            .expect("gcd divides the polynomial");
        Ok(sf.primitive_normalized())
    }

    /// Largest k with g^k | self, along with self / g^k.
    pub fn remove_factor(&self, g: &Self) -> (usize, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(g) {
            cur = q;
            k += 1;
            if cur.is_zero() {
                break;
            }
        }
        (k, cur)
    }
}

/// Bareiss fraction-free determinant (consumes the matrix).
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// CRT-combine modular images of a degree-d polynomial (symmetric lift).
fn reconstruct_poly(images: &[PolyFp], primes: &[u64], d: usize) -> UnivarPoly {
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let residues: Vec<u64> = images.iter().map(|g| g.c.get(i).copied().unwrap_or(0)).collect();
        coeffs.push(crt_symmetric(&residues, primes));
    }
    UnivarPoly::new(coeffs)
}

/// Kronecker-substitution multiplication: pack into big integers at a stride
/// wide enough for the product coefficients, multiply, unpack. Negative
/// coefficients are handled by the (P+, P-) split into four nonnegative
/// products.
fn kronecker_mul(a: &UnivarPoly, b: &UnivarPoly) -> UnivarPoly {
    let min_len = a.coeffs.len().min(b.coeffs.len());
    let bound: BigInt = BigInt::from(min_len) * a.height() * b.height();
    let stride_bits = (bound.bits() + 2).div_ceil(8) * 8; // byte-aligned
    let (ap, an) = split_signs(&a.coeffs);
    let (bp, bn) = split_signs(&b.coeffs);
    let out_len = a.coeffs.len() + b.coeffs.len() - 1;
    let pp = pack_mul_unpack(&ap, &bp, stride_bits, out_len);
    let pn = pack_mul_unpack(&ap, &bn, stride_bits, out_len);
    let np = pack_mul_unpack(&an, &bp, stride_bits, out_len);
    let nn = pack_mul_unpack(&an, &bn, stride_bits, out_len);
    let mut c = Vec::with_capacity(out_len);
    for i in 0..out_len {
        c.push(&pp[i] + &nn[i] - &pn[i] - &np[i]);
    }
    UnivarPoly::new(c)
}

fn split_signs(coeffs: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut pos = Vec::with_capacity(coeffs.len());
    let mut neg = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.is_negative() {
            pos.push(BigInt::zero());
            neg.push(-c);
        } else {
            pos.push(c.clone());
            neg.push(BigInt::zero());
        }
    }
    (pos, neg)
}

fn pack_mul_unpack(a: &[BigInt], b: &[BigInt], stride_bits: u64, out_len: usize) -> Vec<BigInt> {
    use num_bigint::BigUint;
    let stride_bytes = (stride_bits / 8) as usize;
    let pack = |v: &[BigInt]| -> BigUint {
        let mut bytes = vec![0u8; v.len() * stride_bytes];
        for (i, c) in v.iter().enumerate() {
            let cb = c.magnitude().to_bytes_le();
            let off = i * stride_bytes;
            bytes[off..off + cb.len()].copy_from_slice(&cb);
        }
        BigUint::from_bytes_le(&bytes)
    };
    let pa = pack(a);
    let pb = pack(b);
    if pa.is_zero() || pb.is_zero() {
        return vec![BigInt::zero(); out_len];
    }
    let prod = pa * pb;
    let bytes = prod.to_bytes_le();
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let off = i * stride_bytes;
        if off >= bytes.len() {
            out.push(BigInt::zero());
            continue;
        }
        let end = (off + stride_bytes).min(bytes.len());
        out.push(BigInt::from(BigUint::from_bytes_le(&bytes[off..end])));
    }
    out
}

impl std::fmt::Display for UnivarPoly {
    /// `deg:coeff;...` with terms in descending degree; zero prints as `0:0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0:0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{}:{}", i, c)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for UnivarPoly {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, NumError> {
        let mut coeffs: Vec<(usize, BigInt)> = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (d, c) = part
                .split_once(':')
                .ok_or_else(|| NumError::Parse(format!("term without ':': {part}")))?;
            let deg: usize = d
                .trim()
                .parse()
                .map_err(|_| NumError::Parse(format!("bad degree: {d}")))?;
            let coeff = BigInt::from_str(c.trim())
                .map_err(|_| NumError::Parse(format!("bad coefficient: {c}")))?;
            if coeffs.iter().any(|(d0, _)| *d0 == deg) {
                return Err(NumError::Parse(format!("duplicate degree {deg}")));
            }
            coeffs.push((deg, coeff));
        }
        if coeffs.is_empty() {
            return Err(NumError::Parse("empty polynomial text".into()));
        }
        let max_deg = coeffs.iter().map(|(d, _)| *d).max().unwrap();
        let mut v = vec![BigInt::zero(); max_deg + 1];
        for (d, c) in coeffs {
            v[d] = c;
        }
        Ok(UnivarPoly::new(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UnivarPoly {
        UnivarPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 3]); // 3x^2+2x+1
        let b = p(&[-1, 1]); // x-1
        assert_eq!(a.add(&b), p(&[0, 3, 3]));
        assert_eq!(a.mul(&b), p(&[-1, -1, -1, 3]));
        assert_eq!(a.derivative(), p(&[2, 6]));
        assert_eq!(p(&[2, 4, 6]).content(), BigInt::from(2));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a = UnivarPoly::new((0..200).map(|i| BigInt::from(i * 7 - 300)).collect());
        let b = UnivarPoly::new((0..150).map(|i| BigInt::from(-i * 13 + 500)).collect());
        assert_eq!(kronecker_mul(&a, &b), a.mul_schoolbook(&b));
    }

    #[test]
    fn division_and_pseudo_remainder() {
        let a = p(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let b = p(&[-1, 1]); // x - 1
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        assert!(a.div_exact(&p(&[1, 1, 1])).is_none());
        // prem(x^2+1, 2x+1) = 4(x^2+1) mod (2x+1) = 5
        let r = p(&[1, 0, 1]).pseudo_rem(&p(&[1, 2]));
        assert_eq!(r, p(&[5]));
    }

    #[test]
    fn taylor_shift_and_scaling() {
        let a = p(&[0, 0, 1]); // x^2
        assert_eq!(a.taylor_shift(&BigInt::from(1)), p(&[1, 2, 1]));
        let b = p(&[1, 1]); // x + 1
        assert_eq!(b.scale_arg(&BigInt::from(3)), p(&[1, 3]));
        // 2^2k * p(x/2^k) for p = x^2 + 1, k = 1: x^2 + 4
        assert_eq!(p(&[1, 0, 1]).scale_down_pow2(1), p(&[4, 0, 1]));
        assert_eq!(p(&[0, 0, 3, 5]).strip_x_power().0, 2);
    }

    #[test]
    fn resultants_agree_small() {
        let a = p(&[6, -5, 1]); // (x-2)(x-3)
        let b = p(&[20, -9, 1]); // (x-4)(x-5)
        assert_eq!(a.resultant_prs(&b), BigInt::from(12));
        assert_eq!(a.resultant_sylvester(&b), BigInt::from(12));
        assert_eq!(a.resultant_modular(&b), BigInt::from(12));
        // shared root
        let c = p(&[-2, 1]);
        assert_eq!(a.resultant_prs(&c), BigInt::zero());
        assert_eq!(a.resultant_sylvester(&c), BigInt::zero());
        // res(f, const) = const^deg f
        assert_eq!(a.resultant_prs(&p(&[7])), BigInt::from(49));
        assert_eq!(p(&[7]).resultant_prs(&a), BigInt::from(49));
    }

    #[test]
    fn gcd_routes_agree() {
        let g = p(&[1, 2, 1]); // (x+1)^2
        let a = g.mul(&p(&[-3, 1]));
        let b = g.mul(&p(&[5, 0, 1]));
        assert_eq!(a.gcd_prs(&b), g);
        assert_eq!(a.gcd_modular(&b), g);
        assert_eq!(p(&[1, 1]).gcd_prs(&p(&[1, 0, 1])), UnivarPoly::one());
    }

    #[test]
    fn square_free_strips_multiplicity() {
        let sf = p(&[-1, 1]).mul(&p(&[-2, 1])); // (x-1)(x-2)
        let sq = sf.mul(&p(&[-1, 1])); // (x-1)^2 (x-2)
        assert_eq!(sq.square_free().unwrap(), sf);
        assert_eq!(p(&[4, 4, 1]).square_free().unwrap(), p(&[2, 1]));
    }

    #[test]
    fn sign_evaluation() {
        let a = p(&[-2, 0, 1]); // x^2 - 2
        assert_eq!(a.sign_at_ratio(&BigInt::from(1), &BigInt::from(1)), -1);
        assert_eq!(a.sign_at_ratio(&BigInt::from(3), &BigInt::from(2)), 1);
        assert_eq!(p(&[-1, 1]).sign_at_ratio(&BigInt::from(1), &BigInt::from(1)), 0);
        let x = Dyadic::new(BigInt::from(3), -1); // 1.5
        assert_eq!(a.sign_at_dyadic(&x), 1);
        let iv = a.eval_interval(&RatInterval::new(Dyadic::from_int(1), Dyadic::from_int(2)), 64);
        assert!(iv.contains_zero());
    }

    #[test]
    fn text_format_round_trip() {
        let a = p(&[1, -20, 10, 20, 5]);
        let s = a.to_string();
        assert_eq!(s, "4:5;3:20;2:10;1:-20;0:1");
        assert_eq!(UnivarPoly::from_str(&s).unwrap(), a);
        assert_eq!(UnivarPoly::zero().to_string(), "0:0");
        assert_eq!(UnivarPoly::from_str("0:0").unwrap(), UnivarPoly::zero());
        assert_eq!(UnivarPoly::from_str("2:1;0:-3").unwrap(), p(&[-3, 0, 1]));
        assert!(UnivarPoly::from_str("2:1;2:5").is_err());
        assert!(UnivarPoly::from_str("x:1").is_err());
    }
}
