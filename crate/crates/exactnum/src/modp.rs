//! Arithmetic mod word-size primes: scalar helpers, dense polynomials over
//! F_p, Newton interpolation, Euclidean resultants, and CRT reconstruction.
//! This is the workhorse behind the exact modular resultant/gcd routes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Reduce a BigInt into [0, p).
pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending stream of primes just below 2^62.
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }

    pub fn starting_at(n: u64) -> Self {
        PrimeStream { next: n | 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

/// Minimal deterministic RNG for randomized subroutines (equal-degree
/// factorization); splitmix64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Dense polynomial over F_p; coefficient of x^i at index i, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    pub p: u64,
    pub c: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFp { p, c }
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyFp { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        PolyFp { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().expect("lc of zero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u64; n];
        for (i, v) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            *v = addmod(a, b, p);
        }
        PolyFp::new(p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u64; n];
        for (i, v) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            *v = submod(a, b, p);
        }
        PolyFp::new(p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = addmod(c[i + j], mulmod(a, b, p), p);
            }
        }
        PolyFp::new(p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        let p = self.p;
        PolyFp::new(p, self.c.iter().map(|&a| mulmod(a, k, p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lc(), self.p))
    }

    /// (quotient, remainder) with divisor nonzero.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = div.deg().unwrap();
        if self.deg().map_or(true, |d| d < dd) {
            return (PolyFp::zero(p), self.clone());
        }
        let mut rem = self.c.clone();
        let dn = rem.len() - 1;
        let mut quo = vec![0u64; dn - dd + 1];
        let inv_lc = invmod(div.lc(), p);
        for k in (0..=dn - dd).rev() {
            let coef = mulmod(rem[k + dd], inv_lc, p);
            quo[k] = coef;
            if coef != 0 {
                for (j, &dj) in div.c.iter().enumerate() {
                    rem[k + j] = submod(rem[k + j], mulmod(coef, dj, p), p);
                }
            }
        }
        rem.truncate(dd);
        (PolyFp::new(p, quo), PolyFp::new(p, rem))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with g monic and s*self + t*other = g.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyFp::one(p), PolyFp::zero(p));
        let (mut t0, mut t1) = (PolyFp::zero(p), PolyFp::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        if self.c.len() <= 1 {
            return PolyFp::zero(p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulmod(a, (i as u64) % p, p))
            .collect();
        PolyFp::new(p, c)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = addmod(mulmod(acc, x, p), a, p);
        }
        acc
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = PolyFp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Resultant via the Euclidean remainder sequence with the classical
    /// lc-power and sign bookkeeping.
    pub fn resultant(&self, other: &Self) -> u64 {
        let p = self.p;
        let mut f = self.clone();
        let mut g = other.clone();
        if f.is_zero() || g.is_zero() {
            // res(f, 0) = 0 except res(const, 0) which never arises here
            return 0;
        }
        let mut res = 1u64;
        let mut negate = false;
        loop {
            let df = f.deg().unwrap();
            let dg = g.deg().unwrap();
            if dg == 0 {
                res = mulmod(res, powmod(g.c[0], df as u64, p), p);
                break;
            }
            let r = f.rem(&g);
            if r.is_zero() {
                return 0;
            }
            let dr = r.deg().unwrap();
            if df % 2 == 1 && dg % 2 == 1 {
                negate = !negate;
            }
            res = mulmod(res, powmod(g.lc(), (df - dr) as u64, p), p);
            f = g;
            g = r;
        }
        if negate && res != 0 {
            p - res
        } else {
            res
        }
    }

    /// Newton interpolation through distinct points.
    pub fn interpolate(p: u64, xs: &[u64], ys: &[u64]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        if n == 0 {
            return PolyFp::zero(p);
        }
        // divided differences
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = submod(dd[i], dd[i - 1], p);
                let den = submod(xs[i], xs[i - level], p);
                dd[i] = mulmod(num, invmod(den, p), p);
            }
        }
        // horner assembly: poly = dd[n-1]; poly = poly*(x - xs[i]) + dd[i]
        let mut poly = PolyFp::new(p, vec![dd[n - 1]]);
        for i in (0..n - 1).rev() {
            let shift = PolyFp::new(p, vec![submod(0, xs[i], p), 1]);
            poly = poly.mul(&shift).add(&PolyFp::new(p, vec![dd[i]]));
        }
        poly
    }
}

/// Incremental CRT: residues r_i mod primes p_i combined into the symmetric
/// representative mod prod p_i.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    assert_eq!(residues.len(), primes.len());
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let pm = BigInt::from(p);
        let x_mod_p = bigint_mod(&x, p);
        let m_mod_p = bigint_mod(&modulus, p);
        let t = mulmod(submod(r, x_mod_p, p), invmod(m_mod_p, p), p);
        x += &modulus * BigInt::from(t);
        modulus *= pm;
    }
    // x is in [0, M); fold into the symmetric range (-M/2, M/2]
    let half = &modulus >> 1;
    if x > half {
        x -= &modulus;
    }
    x
}

/// True if `n` reduced mod p equals r.
pub fn check_residue(n: &BigInt, r: u64, p: u64) -> bool {
    bigint_mod(n, p) == r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_stream_yields_primes() {
        let ps: Vec<u64> = PrimeStream::new().take(5).collect();
        assert_eq!(ps.len(), 5);
        for p in ps {
            assert!(is_prime_u64(p));
            assert!(p < (1 << 62));
        }
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(561)); // Carmichael
    }

    #[test]
    fn scalar_ops() {
        let p = PrimeStream::new().next().unwrap();
        assert_eq!(mulmod(p - 1, p - 1, p), 1);
        assert_eq!(powmod(3, p - 1, p), 1); // Fermat
        assert_eq!(mulmod(invmod(12345, p), 12345, p), 1);
    }

    #[test]
    fn poly_divrem_roundtrip() {
        let f = PolyFp::new(97, vec![1, 2, 3, 4, 5]);
        let g = PolyFp::new(97, vec![7, 0, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.deg().unwrap_or(0) < g.deg().unwrap());
    }

    #[test]
    fn poly_gcd_common_factor() {
        let p = 101;
        let a = PolyFp::new(p, vec![1, 1]); // x + 1
        let b = PolyFp::new(p, vec![2, 1]); // x + 2
        let c = PolyFp::new(p, vec![5, 1]); // x + 5
        let f = a.mul(&b);
        let g = a.mul(&c);
        assert_eq!(f.gcd(&g), a.monic());
        assert_eq!(b.gcd(&c).deg(), Some(0));
    }

    #[test]
    fn resultant_matches_root_product() {
        // f = (x-2)(x-3), g = (x-4)(x-5): res = prod (ri - sj) = (2-4)(2-5)(3-4)(3-5) = 12
        let p = 1009;
        let f = PolyFp::new(p, vec![6, p - 5, 1]);
        let g = PolyFp::new(p, vec![20, p - 9, 1]);
        assert_eq!(f.resultant(&g), 12);
        // common root -> 0
        let h = PolyFp::new(p, vec![p - 2, 1]); // x - 2
        assert_eq!(f.resultant(&h), 0);
    }

    #[test]
    fn interpolation_recovers_poly() {
        let p = 1013;
        let f = PolyFp::new(p, vec![3, 0, 7, 1]);
        let xs: Vec<u64> = (10..14).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| f.eval(x)).collect();
        assert_eq!(PolyFp::interpolate(p, &xs, &ys), f);
    }

    #[test]
    fn crt_reconstructs_signed() {
        let primes: Vec<u64> = PrimeStream::new().take(3).collect();
        let n = BigInt::from(-123456789012345678i64);
        let residues: Vec<u64> = primes.iter().map(|&p| bigint_mod(&n, p)).collect();
        assert_eq!(crt_symmetric(&residues, &primes), n);
        let m = BigInt::from(98765432109876543i64);
        let residues: Vec<u64> = primes.iter().map(|&p| bigint_mod(&m, p)).collect();
        assert_eq!(crt_symmetric(&residues, &primes), m);
    }
}
