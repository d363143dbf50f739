//! Bounded factorization of squarefree integer polynomials.
//!
//! Zassenhaus-style: factor modulo a small prime (distinct-degree plus
//! Cantor-Zassenhaus equal-degree splitting), Hensel-lift the modular
//! factors past a coefficient bound, then recombine subsets. Recombination
//! is budgeted; when the budget runs out the unfactored part is returned
//! as a remainder instead of looping forever on a hard input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::{bigint_mod, PolyFp, SplitMix64};
use crate::upoly::UnivarPoly;

/// Result of a bounded factoring run. `factors` are irreducible over the
/// integers, primitive with positive leading coefficient. `remainder`, if
/// present, is a nontrivial cofactor the budget did not allow to split.
#[derive(Debug, Clone)]
pub struct FactorOutcome {
    pub factors: Vec<UnivarPoly>,
    pub remainder: Option<UnivarPoly>,
}

impl FactorOutcome {
    fn irreducible(p: UnivarPoly) -> Self {
        FactorOutcome {
            factors: vec![p],
            remainder: None,
        }
    }
}

/// Default cap on recombination subset trials.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Factor a squarefree primitive polynomial with positive leading
/// coefficient. Degree 0 inputs yield no factors. The product of the
/// returned factors times the remainder equals the input.
pub fn factor_squarefree(p: &UnivarPoly, budget: usize) -> FactorOutcome {
    let deg = match p.degree() {
        None | Some(0) => {
            return FactorOutcome {
                factors: Vec::new(),
                remainder: None,
            }
        }
        Some(d) => d,
    };
    if deg == 1 {
        return FactorOutcome::irreducible(p.clone());
    }

    // Powers of x split off exactly (squarefree: at most one).
    let (k, body) = p.strip_x_power();
    if k > 0 {
        let mut out = factor_squarefree(&body, budget);
        out.factors.insert(0, UnivarPoly::x());
        return out;
    }

    let modular = match modular_factorization(p) {
        Some(m) => m,
        // No usable prime found: treat as opaque.
        None => {
            return FactorOutcome {
                factors: Vec::new(),
                remainder: Some(p.clone()),
            }
        }
    };
    if modular.factors.len() == 1 {
        return FactorOutcome::irreducible(p.clone());
    }

    let lifted = hensel_lift(p, &modular);
    recombine(p, lifted, budget)
}

// ---------------------------------------------------------------------------
// modular factorization
// ---------------------------------------------------------------------------

struct ModularFactors {
    prime: u64,
    factors: Vec<PolyFp>,
}

/// Find a small odd prime where the image stays squarefree with full
/// degree, and factor the monic image there. Among the first few usable
/// primes, keep the one giving the fewest modular factors.
fn modular_factorization(p: &UnivarPoly) -> Option<ModularFactors> {
    const SMALL_PRIMES: [u64; 24] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97,
    ];
    let mut best: Option<ModularFactors> = None;
    let mut tried = 0usize;
    for &ell in SMALL_PRIMES.iter() {
        if p.lc().mod_floor(&BigInt::from(ell)).is_zero() {
            continue;
        }
        let image = p.to_modp(ell).monic();
        if !image.gcd(&image.derivative()).deg().map_or(false, |d| d == 0) {
            continue;
        }
        let factors = factor_monic_squarefree_fp(&image, ell);
        tried += 1;
        let better = best
            .as_ref()
            .map_or(true, |b| factors.len() < b.factors.len());
        if better {
            best = Some(ModularFactors {
                prime: ell,
                factors,
            });
        }
        if tried >= 3 || best.as_ref().map_or(false, |b| b.factors.len() == 1) {
            break;
        }
    }
    best
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial over F_ell (ell odd).
fn factor_monic_squarefree_fp(f: &PolyFp, ell: u64) -> Vec<PolyFp> {
    let mut out = Vec::new();
    let mut v = f.clone();
    let mut w = PolyFp::x(ell).rem(&v);
    let mut i = 0usize;
    while v.deg().map_or(false, |d| d > 0) {
        i += 1;
        let dv = v.deg().unwrap();
        if 2 * i > dv {
            out.push(v.clone());
            break;
        }
        // w = x^(ell^i) mod v
        w = w.pow_mod(ell, &v);
        let g = w.sub(&PolyFp::x(ell)).gcd(&v);
        if g.deg().map_or(false, |d| d > 0) {
            equal_degree_split(&g, i, ell, &mut out);
            v = v.divrem(&g).0;
            w = w.rem(&v);
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a monic product of distinct irreducibles
/// all of degree `d`.
fn equal_degree_split(g: &PolyFp, d: usize, ell: u64, out: &mut Vec<PolyFp>) {
    let dg = g.deg().unwrap();
    if dg == d {
        out.push(g.clone());
        return;
    }
    // (ell^d - 1) / 2
    let mut e = BigInt::from(ell);
    e = num_traits::pow::pow(e, d) - 1;
    e /= 2;
    let mut rng = SplitMix64::new(0x9e3779b97f4a7c15 ^ (dg as u64) << 8 ^ d as u64);
    loop {
        let coeffs: Vec<u64> = (0..dg).map(|_| rng.below(ell)).collect();
        let h = PolyFp::new(ell, coeffs);
        if h.deg().is_none() {
            continue;
        }
        let c = h.gcd(g);
        let cd = c.deg().unwrap();
        if cd > 0 && cd < dg {
            equal_degree_split(&c, d, ell, out);
            equal_degree_split(&g.divrem(&c).0, d, ell, out);
            return;
        }
        let w = pow_mod_big(&h, &e, g);
        let one = PolyFp::one(ell);
        let c = w.sub(&one).gcd(g);
        let cd = c.deg().unwrap();
        if cd > 0 && cd < dg {
            equal_degree_split(&c, d, ell, out);
            equal_degree_split(&g.divrem(&c).0, d, ell, out);
            return;
        }
    }
}

/// h^e mod m over F_ell with a big exponent.
fn pow_mod_big(h: &PolyFp, e: &BigInt, m: &PolyFp) -> PolyFp {
    let mut result = PolyFp::one(h.p);
    let mut base = h.rem(m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = result.mul(&base).rem(m);
        }
        if i + 1 < bits {
            base = base.mul(&base).rem(m);
        }
    }
    result
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// Polynomial over Z/m with coefficients stored as BigInt in [0, m).
#[derive(Debug, Clone)]
struct ZmPoly {
    c: Vec<BigInt>,
}

impl ZmPoly {
    fn from_fp(p: &PolyFp) -> Self {
        let c = p.c.iter().map(|&x| BigInt::from(x)).collect();
        ZmPoly { c }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    fn zero() -> Self {
        ZmPoly { c: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn reduce(&self, m: &BigInt) -> Self {
        let c = self.c.iter().map(|x| x.mod_floor(m)).collect();
        ZmPoly { c }.trimmed()
    }

    fn add(&self, other: &Self, m: &BigInt) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] += x;
        }
        ZmPoly { c }.reduce(m)
    }

    fn sub(&self, other: &Self, m: &BigInt) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] -= x;
        }
        ZmPoly { c }.reduce(m)
    }

    fn mul(&self, other: &Self, m: &BigInt) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZmPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZmPoly { c }.reduce(m)
    }

    /// Division with remainder by a monic divisor.
    fn divrem_monic(&self, d: &Self, m: &BigInt) -> (Self, Self) {
        debug_assert!(!d.is_zero() && d.c.last().unwrap().is_one());
        if self.c.len() < d.c.len() {
            return (ZmPoly::zero(), self.clone());
        }
        let mut rem = self.c.clone();
        let dd = d.deg();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].mod_floor(m);
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                let t = (&rem[i - dd + j] - &q * dc).mod_floor(m);
                rem[i - dd + j] = t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (
            ZmPoly { c: quot }.reduce(m),
            ZmPoly { c: rem }.reduce(m),
        )
    }

    /// Lift to an integer polynomial with coefficients in (-m/2, m/2].
    fn symmetric(&self, m: &BigInt) -> UnivarPoly {
        let half = m >> 1;
        let c: Vec<BigInt> = self
            .c
            .iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect();
        UnivarPoly::new(c)
    }
}

/// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
/// with h monic, to the same data mod m^2.
fn hensel_step(
    f: &ZmPoly,
    g: &ZmPoly,
    h: &ZmPoly,
    s: &ZmPoly,
    t: &ZmPoly,
    m2: &BigInt,
) -> (ZmPoly, ZmPoly, ZmPoly, ZmPoly) {
    let e = f.sub(&g.mul(h, m2), m2);
    let (q, r) = s.mul(&e, m2).divrem_monic(h, m2);
    let g1 = g.add(&t.mul(&e, m2), m2).add(&q.mul(g, m2), m2);
    let h1 = h.add(&r, m2);
    let one = ZmPoly {
        c: vec![BigInt::one()],
    };
    let b = s
        .mul(&g1, m2)
        .add(&t.mul(&h1, m2), m2)
        .sub(&one, m2);
    let (c, d) = s.mul(&b, m2).divrem_monic(&h1, m2);
    let s1 = s.sub(&d, m2);
    let t1 = t.sub(&t.mul(&b, m2), m2).sub(&c.mul(&g1, m2), m2);
    (g1, h1, s1, t1)
}

/// Lift f = g0*h0 (mod ell) to f = G*H (mod target), g0 and h0 monic and
/// coprime mod ell, f monic mod target.
fn lift_pair(
    f: &ZmPoly,
    g0: &PolyFp,
    h0: &PolyFp,
    ell: u64,
    target: &BigInt,
) -> (ZmPoly, ZmPoly) {
    let (one, s0, t0) = g0.xgcd(h0);
    debug_assert_eq!(one.deg(), Some(0));
    let mut m = BigInt::from(ell);
    let mut g = ZmPoly::from_fp(g0);
    let mut h = ZmPoly::from_fp(h0);
    let mut s = ZmPoly::from_fp(&s0);
    let mut t = ZmPoly::from_fp(&t0);
    while &m < target {
        let m2 = &m * &m;
        let fm = f.reduce(&m2);
        let (g1, h1, s1, t1) = hensel_step(&fm, &g, &h, &s, &t, &m2);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = m2;
    }
    (g.reduce(&m), h.reduce(&m))
}

struct Lifted {
    modulus: BigInt,
    factors: Vec<ZmPoly>,
}

/// Lift the monic modular factorization of p past the factor coefficient
/// bound. Returns monic factors of monic(p) modulo `modulus`.
fn hensel_lift(p: &UnivarPoly, modular: &ModularFactors) -> Lifted {
    let ell = modular.prime;
    // Landau-Mignotte style bound: coefficients of lc(p) * (any monic
    // factor product) are below |lc| * 2^deg * sum|coeffs|.
    let deg = p.deg();
    let bound: BigInt = p.lc().abs() * p.height_sum() * (BigInt::one() << (deg as u32 + 1));
    let mut target = BigInt::from(ell);
    while target <= bound {
        target = &target * &target;
    }

    // Monic image of p modulo target: multiply by lc^-1. The inverse exists
    // since ell does not divide lc; compute it by lifting the mod-ell inverse.
    let lc_mod = bigint_mod(p.lc(), ell);
    let mut inv = BigInt::from(crate::modp::invmod(lc_mod, ell));
    let mut m = BigInt::from(ell);
    while &m < &target {
        m = &m * &m;
        // Newton: inv <- inv * (2 - lc*inv) mod m
        let two = BigInt::from(2);
        inv = (&inv * (two - p.lc() * &inv)).mod_floor(&m);
    }
    let f_monic = ZmPoly {
        c: p.coeffs().iter().map(|c| (c * &inv).mod_floor(&m)).collect(),
    }
    .trimmed();

    let factors = lift_tree(&f_monic, &modular.factors, ell, &m);
    Lifted { modulus: m, factors }
}

fn lift_tree(f: &ZmPoly, factors: &[PolyFp], ell: u64, target: &BigInt) -> Vec<ZmPoly> {
    if factors.len() == 1 {
        return vec![f.reduce(target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[PolyFp]| -> PolyFp {
        let mut acc = PolyFp::one(ell);
        for f in fs {
            acc = acc.mul(f);
        }
        acc
    };
    let (g, h) = lift_pair(f, &prod(left), &prod(right), ell, target);
    let mut out = lift_tree(&g, left, ell, target);
    out.extend(lift_tree(&h, right, ell, target));
    out
}

// ---------------------------------------------------------------------------
// recombination
// ---------------------------------------------------------------------------

/// Try subset products of the lifted factors against the integer
/// polynomial. Subsets are enumerated by cardinality so irreducible factors
/// are found smallest-first; each trial division costs one unit of budget.
fn recombine(p: &UnivarPoly, lifted: Lifted, budget: usize) -> FactorOutcome {
    let m = lifted.modulus;
    let mut pool: Vec<ZmPoly> = lifted.factors;
    let mut current = p.clone();
    let mut found: Vec<UnivarPoly> = Vec::new();
    let mut spent = 0usize;

    'outer: loop {
        let n = pool.len();
        if n == 0 {
            break;
        }
        if n == 1 {
            found.push(current.primitive_normalized());
            current = UnivarPoly::one();
            pool.clear();
            break;
        }
        let half = n / 2;
        for size in 1..=half {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                if spent >= budget {
                    break 'outer;
                }
                spent += 1;
                if let Some(factor) = try_subset(&current, &pool, &subset, &m) {
                    let quotient = current.div_exact(&factor).expect("verified divisor");
                    found.push(factor.primitive_normalized());
                    current = quotient;
                    // Remove the used modular factors and restart.
                    let mut keep = Vec::with_capacity(n - size);
                    for (i, f) in pool.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(f);
                        }
                    }
                    pool = keep;
                    continue 'outer;
                }
                if !next_subset(&mut subset, n) {
                    break;
                }
            }
        }
        // No subset up to half the pool divides: the rest is irreducible.
        found.push(current.primitive_normalized());
        current = UnivarPoly::one();
        pool.clear();
        break;
    }

    let remainder = if current.degree().map_or(false, |d| d > 0) {
        Some(current.primitive_normalized())
    } else {
        None
    };
    found.sort_by(|a, b| {
        (a.degree(), a.coeffs().to_vec()).cmp(&(b.degree(), b.coeffs().to_vec()))
    });
    FactorOutcome {
        factors: found,
        remainder,
    }
}

/// Build the candidate integer factor for a subset and trial-divide.
fn try_subset(
    current: &UnivarPoly,
    pool: &[ZmPoly],
    subset: &[usize],
    m: &BigInt,
) -> Option<UnivarPoly> {
    // Quick reject on the constant term before building full products:
    // lc * prod of constant terms must, symmetrically reduced, divide
    // lc * p(0).
    let lc = current.lc();
    if !current.coeff(0).is_zero() {
        let mut c0 = lc.mod_floor(m);
        for &i in subset {
            let t = pool[i].c.first().cloned().unwrap_or_else(BigInt::zero);
            c0 = (c0 * t).mod_floor(m);
        }
        let half = m >> 1;
        if c0 > half {
            c0 -= m;
        }
        if c0.is_zero() {
            return None;
        }
        let target = lc * current.coeff(0);
        if !target.mod_floor(&c0.abs()).is_zero() {
            return None;
        }
    }
    let mut prod = ZmPoly {
        c: vec![lc.mod_floor(m)],
    };
    for &i in subset {
        prod = prod.mul(&pool[i], m);
    }
    let candidate = prod.symmetric(m).primitive_normalized();
    if candidate.degree().map_or(true, |d| d == 0) {
        return None;
    }
    current.div_exact(&candidate).map(|_| candidate)
}

/// Advance to the next subset of the same size in lexicographic order.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factor an arbitrary nonzero polynomial: squarefree decomposition first,
/// then bounded factoring of each squarefree part. Multiplicities are
/// reflected by repetition in the output.
pub fn factor(p: &UnivarPoly, budget: usize) -> Result<FactorOutcome, crate::NumError> {
    let mut factors = Vec::new();
    let mut remainder: Option<UnivarPoly> = None;
    let mut work = p.primitive_normalized();
    // Yun-style loop: peel squarefree parts with multiplicity.
    let mut mult = 0usize;
    while work.degree().map_or(false, |d| d > 0) {
        mult += 1;
        let sf = work.square_free()?;
        let out = factor_squarefree(&sf, budget);
        for f in &out.factors {
            let (k, reduced) = work.remove_factor(f);
            debug_assert!(k >= 1);
            for _ in 0..k {
                factors.push(f.clone());
            }
            work = reduced;
        }
        if let Some(r) = out.remainder {
            let (k, reduced) = work.remove_factor(&r);
            debug_assert!(k >= 1);
            let _ = k;
            work = reduced;
            remainder = Some(match remainder {
                None => r,
                Some(prev) => prev.mul(&r),
            });
        }
        if mult > 64 + p.deg() {
            return Err(crate::NumError::InvalidDomain(
                "factor: no progress in multiplicity loop".into(),
            ));
        }
    }
    factors.sort_by(|a, b| {
        (a.degree(), a.coeffs().to_vec()).cmp(&(b.degree(), b.coeffs().to_vec()))
    });
    Ok(FactorOutcome { factors, remainder })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn poly(s: &str) -> UnivarPoly {
        UnivarPoly::from_str(s).unwrap()
    }

    fn product(fs: &[UnivarPoly]) -> UnivarPoly {
        let mut acc = UnivarPoly::one();
        for f in fs {
            acc = acc.mul(f);
        }
        acc
    }

    #[test]
    fn quadratic_splits() {
        // (x - 1)(x + 2)
        let p = poly("2:1;1:1;0:-2");
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.len(), 2);
        assert_eq!(product(&out.factors), p);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // x^4 + 4x - 1 has no rational roots and no quadratic factors.
        let p = poly("4:1;1:4;0:-1");
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.len(), 1);
        assert_eq!(out.factors[0], p);
    }

    #[test]
    fn three_way_product() {
        let a = poly("2:1;0:-2"); // x^2 - 2
        let b = poly("3:1;1:-3;0:1"); // x^3 - 3x + 1
        let c = poly("1:2;0:1"); // 2x + 1
        let p = product(&[a.clone(), b.clone(), c.clone()]);
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        let mut got = out.factors.clone();
        let mut want = vec![a, b, c];
        got.sort_by_key(|f| f.to_string());
        want.sort_by_key(|f| f.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn cyclotomic_like_product() {
        // (x^4 + x^3 + x^2 + x + 1)(x^2 + x + 1)(x - 1) = (x^15-1)/(x^10+x^5... )
        let a = poly("4:1;3:1;2:1;1:1;0:1");
        let b = poly("2:1;1:1;0:1");
        let c = poly("1:1;0:-1");
        let p = product(&[a.clone(), b.clone(), c.clone()]);
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.len(), 3);
        assert_eq!(product(&out.factors), p);
        assert!(out.factors.contains(&a));
        assert!(out.factors.contains(&b));
        assert!(out.factors.contains(&c));
    }

    #[test]
    fn big_coefficients() {
        // Two quadratics with large coefficients.
        let a = poly("2:123456789123456789;1:-987654321;0:1000000007");
        let b = poly("2:1;1:123456789;0:-999999999999");
        let p = product(&[a.clone(), b.clone()]);
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.len(), 2);
        assert_eq!(product(&out.factors).primitive_normalized(), p.primitive_normalized());
    }

    #[test]
    fn with_multiplicities() {
        let a = poly("1:1;0:-3"); // x - 3
        let b = poly("2:1;0:2"); // x^2 + 2
        let p = product(&[a.clone(), a.clone(), a.clone(), b.clone(), b.clone()]);
        let out = factor(&p, DEFAULT_BUDGET).unwrap();
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.iter().filter(|f| **f == a).count(), 3);
        assert_eq!(out.factors.iter().filter(|f| **f == b).count(), 2);
        assert_eq!(out.factors.len(), 5);
    }

    #[test]
    fn x_power_and_content() {
        // 6x^3(x^2 - 5)
        let p = poly("5:6;3:-30");
        let out = factor(&p, DEFAULT_BUDGET).unwrap();
        assert!(out.remainder.is_none());
        let x = UnivarPoly::x();
        assert_eq!(out.factors.iter().filter(|f| **f == x).count(), 3);
        assert!(out.factors.contains(&poly("2:1;0:-5")));
    }

    #[test]
    fn swinnerton_dyer_style_resists_small_subsets() {
        // Minimal polynomial of sqrt(2)+sqrt(3): x^4 - 10x^2 + 1, irreducible
        // over Z but splits into quadratics mod every prime.
        let p = poly("4:1;2:-10;0:1");
        let out = factor_squarefree(&p, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        assert_eq!(out.factors.len(), 1);
    }

    #[test]
    fn moderate_degree_product() {
        // Product of three polynomials of degrees 8, 9, 10 built from
        // shifted Chebyshev-like patterns with mixed signs.
        let mut rng = SplitMix64::new(42);
        let mut rand_poly = |d: usize| -> UnivarPoly {
            loop {
                let coeffs: Vec<BigInt> = (0..=d)
                    .map(|i| {
                        let v = rng.below(2001) as i64 - 1000;
                        if i == d && v == 0 {
                            BigInt::one()
                        } else {
                            BigInt::from(v)
                        }
                    })
                    .collect();
                let p = UnivarPoly::new(coeffs).primitive_normalized();
                if p.degree() == Some(d) {
                    return p;
                }
            }
        };
        let parts = [rand_poly(8), rand_poly(9), rand_poly(10)];
        let p = product(&parts);
        let sf = p.square_free().unwrap();
        let out = factor_squarefree(&sf, DEFAULT_BUDGET);
        assert!(out.remainder.is_none());
        // Whatever the split, the product must reassemble.
        assert_eq!(product(&out.factors), sf);
        // Each part is a product of some of the found irreducibles.
        for part in &parts {
            let mut rem = part.primitive_normalized();
            for f in &out.factors {
                while let Some(q) = rem.div_exact(f) {
                    rem = q;
                }
            }
            assert_eq!(rem.degree(), Some(0));
        }
    }

    #[test]
    fn budget_exhaustion_returns_remainder() {
        let a = poly("2:1;0:-2");
        let b = poly("2:1;0:-3");
        let p = a.mul(&b);
        // Budget zero: nothing may be tried, everything lands in remainder.
        let out = factor_squarefree(&p, 0);
        let mut acc = product(&out.factors);
        if let Some(r) = &out.remainder {
            acc = acc.mul(r);
        }
        assert_eq!(acc.primitive_normalized(), p.primitive_normalized());
        assert!(out.remainder.is_some());
    }
}
