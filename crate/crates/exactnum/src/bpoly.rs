//! Sparse bivariate polynomials over the integers in the variables (r, s).
//!
//! Resultants with respect to either variable run through two independent
//! exact routes: a subresultant PRS over Z[other][main], and an
//! evaluation/interpolation + CRT route with a rigorous coefficient bound for
//! large operands. Bivariate gcd and square-free parts support the final
//! cleanup of derived polynomials.

use crate::modp::{bigint_mod, crt_symmetric, PolyFp, PrimeStream};
use crate::interval::RatInterval;
use crate::upoly::UnivarPoly;
use crate::NumError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    R,
    S,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::R => Var::S,
            Var::S => Var::R,
        }
    }
}

/// Term order used for display and the normalized-sign convention: total
/// degree first, then r-degree (descending when printing).
fn graded_lex_key(k: &(u32, u32)) -> (u32, u32) {
    (k.0 + k.1, k.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    /// (deg_r, deg_s) -> nonzero coefficient.
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn new(terms: BTreeMap<(u32, u32), BigInt>) -> Self {
        let mut t = terms;
        t.retain(|_, c| !c.is_zero());
        BivarPoly { terms: t }
    }

    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BivarPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        BivarPoly { terms: t }
    }

    pub fn monomial(dr: u32, ds: u32, c: BigInt) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((dr, ds), c);
        }
        BivarPoly { terms: t }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::R => BivarPoly::monomial(1, 0, BigInt::one()),
            Var::S => BivarPoly::monomial(0, 1, BigInt::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg(&self, v: Var) -> u32 {
        match v {
            Var::R => self.terms.keys().map(|k| k.0).max().unwrap_or(0),
            Var::S => self.terms.keys().map(|k| k.1).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Coefficient of the graded-lex leading term.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .max_by_key(|(k, _)| graded_lex_key(k))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, c) in &other.terms {
            let e = t.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
        }
        BivarPoly::new(t)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, c) in &other.terms {
            let e = t.entry(*k).or_insert_with(BigInt::zero);
            *e -= c;
        }
        BivarPoly::new(t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero();
        }
        let work = self.terms.len().saturating_mul(other.terms.len());
        if work >= 4096 {
            self.mul_kronecker(other)
        } else {
            self.mul_schoolbook(other)
        }
    }

    fn mul_schoolbook(&self, other: &Self) -> Self {
        let mut t: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k = (ka.0 + kb.0, ka.1 + kb.1);
                let e = t.entry(k).or_insert_with(BigInt::zero);
                *e += ca * cb;
            }
        }
        BivarPoly::new(t)
    }

    /// Pack both operands into univariate polynomials (s-stride wide enough
    /// for the product), multiply there, unpack.
    fn mul_kronecker(&self, other: &Self) -> Self {
        let stride = self.deg(Var::S) + other.deg(Var::S) + 1;
        let pack = |p: &BivarPoly| -> UnivarPoly {
            let n = (p.deg(Var::R) * stride + p.deg(Var::S)) as usize + 1;
            let mut c = vec![BigInt::zero(); n];
            for (k, v) in &p.terms {
                c[(k.0 * stride + k.1) as usize] = v.clone();
            }
            UnivarPoly::new(c)
        };
        let prod = pack(self).mul(&pack(other));
        let mut t = BTreeMap::new();
        for (idx, c) in prod.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let i = idx as u32 / stride;
                let j = idx as u32 % stride;
                t.insert((i, j), c.clone());
            }
        }
        BivarPoly { terms: t }
    }

    pub fn mul_scalar(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(key, c)| (*key, c * k)).collect() }
    }

    /// Multiply by r^a s^b.
    pub fn mul_monomial(&self, a: u32, b: u32) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| ((k.0 + a, k.1 + b), c.clone())).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BivarPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut t = BTreeMap::new();
        for (k, c) in &self.terms {
            match v {
                Var::R if k.0 > 0 => {
                    t.insert((k.0 - 1, k.1), c * BigInt::from(k.0));
                }
                Var::S if k.1 > 0 => {
                    t.insert((k.0, k.1 - 1), c * BigInt::from(k.1));
                }
                _ => {}
            }
        }
        BivarPoly { terms: t }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest (a, b) with r^a s^b dividing self.
    pub fn monomial_content(&self) -> (u32, u32) {
        if self.is_zero() {
            return (0, 0);
        }
        let a = self.terms.keys().map(|k| k.0).min().unwrap();
        let b = self.terms.keys().map(|k| k.1).min().unwrap();
        (a, b)
    }

    pub fn div_monomial(&self, a: u32, b: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    assert!(k.0 >= a && k.1 >= b, "monomial does not divide");
                    ((k.0 - a, k.1 - b), c.clone())
                })
                .collect(),
        }
    }

    /// Remove integer content and fix the sign so the graded-lex leading
    /// coefficient is positive.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return BivarPoly::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        BivarPoly { terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect() }
    }

    /// Coefficient vector along `main`: index = degree in main, entries are
    /// polynomials in the other variable.
    pub fn nested_in(&self, main: Var) -> Vec<UnivarPoly> {
        let d = self.deg(main) as usize;
        let od = self.deg(main.other()) as usize;
        let mut rows = vec![vec![BigInt::zero(); od + 1]; d + 1];
        for (k, c) in &self.terms {
            let (i, j) = match main {
                Var::R => (k.0 as usize, k.1 as usize),
                Var::S => (k.1 as usize, k.0 as usize),
            };
            rows[i][j] = c.clone();
        }
        rows.into_iter().map(UnivarPoly::new).collect()
    }

    pub fn from_nested(main: Var, rows: Vec<UnivarPoly>) -> Self {
        let mut t = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let k = match main {
                        Var::R => (i as u32, j as u32),
                        Var::S => (j as u32, i as u32),
                    };
                    t.insert(k, c.clone());
                }
            }
        }
        BivarPoly { terms: t }
    }

    /// If the polynomial involves only `v`, view it as univariate.
    pub fn as_univar(&self, v: Var) -> Option<UnivarPoly> {
        if self.deg(v.other()) != 0 {
            return None;
        }
        let d = self.deg(v) as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (k, coeff) in &self.terms {
            let i = match v {
                Var::R => k.0,
                Var::S => k.1,
            };
            c[i as usize] = coeff.clone();
        }
        Some(UnivarPoly::new(c))
    }

    pub fn from_univar(v: Var, p: &UnivarPoly) -> Self {
        let mut t = BTreeMap::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let k = match v {
                    Var::R => (i as u32, 0),
                    Var::S => (0, i as u32),
                };
                t.insert(k, c.clone());
            }
        }
        BivarPoly { terms: t }
    }

    /// Substitute the given variable by 1.
    pub fn substitute_one(&self, v: Var) -> UnivarPoly {
        let keep = v.other();
        let d = self.deg(keep) as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (k, coeff) in &self.terms {
            let i = match keep {
                Var::R => k.0,
                Var::S => k.1,
            };
            c[i as usize] += coeff;
        }
        UnivarPoly::new(c)
    }

    pub fn swap_vars(&self) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(k, c)| ((k.1, k.0), c.clone())).collect() }
    }

    /// Interval evaluation: Horner in r of Horner-in-s rows.
    pub fn eval_interval(&self, xr: &RatInterval, xs: &RatInterval, prec: i64) -> RatInterval {
        let rows = self.nested_in(Var::R);
        let mut acc = RatInterval::zero();
        for row in rows.iter().rev() {
            acc = acc.mul(xr).add(&row.eval_interval(xs, prec)).cap(prec);
        }
        acc
    }

    /// Exact sign at the rational point (nr/dr, ns/ds); denominators positive.
    pub fn sign_at_ratio(&self, nr: &BigInt, dr: &BigInt, ns: &BigInt, ds: &BigInt) -> i32 {
        assert!(dr.is_positive() && ds.is_positive());
        let rows = self.nested_in(Var::R);
        // sum_i (nr^i dr^(D-i)) * row_i(ns/ds) homogenized in s
        let d = rows.len() - 1;
        let ds_deg = self.deg(Var::S) as usize;
        let mut acc = BigInt::zero();
        let mut pw = BigInt::one(); // dr^(D-i) built downward
        let mut num_pows = Vec::with_capacity(d + 1);
        let mut p = BigInt::one();
        for _ in 0..=d {
            num_pows.push(p.clone());
            p = &p * nr;
        }
        for (i, row) in rows.iter().enumerate().rev() {
            if i == d {
                pw = BigInt::one();
            } else {
                pw = &pw * dr;
            }
            if row.is_zero() {
                continue;
            }
            // homogenize row in s to common degree ds_deg
            let v = row.eval_homogeneous(ns, ds);
            let lift = ds.pow((ds_deg - row.degree().unwrap_or(0)) as u32);
            acc += v * lift * &num_pows[i] * &pw;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Resultant eliminating `var`; the result is univariate in the other
    /// variable. Degree-0 convention: if exactly one operand is free of `var`
    /// the resultant is that operand raised to the other's `var`-degree; both
    /// free of `var` is an error.
    pub fn resultant_wrt(&self, var: Var, other: &Self) -> Result<UnivarPoly, NumError> {
        if self.is_zero() || other.is_zero() {
            return Ok(UnivarPoly::zero());
        }
        let dp = self.deg(var);
        let dq = other.deg(var);
        if dp == 0 && dq == 0 {
            return Err(NumError::Degenerate(
                "resultant of two polynomials both free of the eliminated variable".into(),
            ));
        }
        if dp == 0 {
            let base = self.as_univar(var.other()).expect("free of eliminated variable");
            return Ok(poly_pow(&base, dq));
        }
        if dq == 0 {
            let base = other.as_univar(var.other()).expect("free of eliminated variable");
            return Ok(poly_pow(&base, dp));
        }
        let p = self.nested_in(var);
        let q = other.nested_in(var);
        let cost = (dp as usize + dq as usize).pow(2)
            * (self.deg(var.other()) as usize + other.deg(var.other()) as usize + 1);
        if cost > 20_000 {
            Ok(resultant_modular_nested(&p, &q))
        } else {
            Ok(resultant_prs_nested(&p, &q))
        }
    }

    /// Both exact resultant routes agree; exposed for cross-checking.
    pub fn resultant_both_routes(&self, var: Var, other: &Self) -> (UnivarPoly, UnivarPoly) {
        let p = self.nested_in(var);
        let q = other.nested_in(var);
        (resultant_prs_nested(&p, &q), resultant_modular_nested(&p, &q))
    }

    /// Primitive bivariate gcd (subresultant PRS over Z[s][r] with content
    /// handling).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_normalized();
        }
        if other.is_zero() {
            return self.primitive_normalized();
        }
        // contents as polynomials in s
        let pa = self.nested_in(Var::R);
        let pb = other.nested_in(Var::R);
        let cont_a = poly_vec_gcd(&pa);
        let cont_b = poly_vec_gcd(&pb);
        let cont_gcd = cont_a.gcd(&cont_b);
        let prim_a: Vec<UnivarPoly> = pa.iter().map(|c| c.div_exact(&cont_a).unwrap()).collect();
        let prim_b: Vec<UnivarPoly> = pb.iter().map(|c| c.div_exact(&cont_b).unwrap()).collect();
        let da = nested_deg(&prim_a).unwrap_or(0);
        let db = nested_deg(&prim_b).unwrap_or(0);
        let ya = self.deg(Var::S) as usize;
        let yb = other.deg(Var::S) as usize;
        let pp_gcd = if da >= 1 && db >= 1 && (da + db) * (ya + yb) > 240 {
            gcd_modular_nested(&prim_a, &prim_b)
        } else {
            gcd_prs_nested(&prim_a, &prim_b)
        };
        let g = BivarPoly::from_nested(Var::R, pp_gcd)
            .mul(&BivarPoly::from_univar(Var::S, &cont_gcd));
        g.primitive_normalized()
    }

    /// Square-free part: same zero set in the open quadrant, no repeated
    /// factors. Splits off the s-only content first so every remaining factor
    /// involves r and is caught by gcd with the r-derivative.
    pub fn square_free_part(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::InvalidDomain("square-free part of zero".into()));
        }
        let nested = self.nested_in(Var::R);
        let cont_s = poly_vec_gcd(&nested);
        let pp: Vec<UnivarPoly> = nested.iter().map(|c| c.div_exact(&cont_s).unwrap()).collect();
        let pp = BivarPoly::from_nested(Var::R, pp);
        let sf_cont = cont_s.square_free()?;
        let result = if pp.deg(Var::R) == 0 {
            BivarPoly::from_univar(Var::S, &sf_cont).mul_scalar(&pp.leading_coeff())
        } else {
            let g = pp.gcd(&pp.derivative(Var::R));
            let sf_pp = pp.div_exact(&g).expect("gcd divides");
            sf_pp.mul(&BivarPoly::from_univar(Var::S, &sf_cont))
        };
        Ok(result.primitive_normalized())
    }

    /// Exact division over Z[r,s]; None if it does not divide.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "bivariate division by zero");
        if self.is_zero() {
            return Some(BivarPoly::zero());
        }
        let dn = self.nested_in(Var::R);
        let dd = div.nested_in(Var::R);
        let ddeg = dd.len() - 1;
        if dn.len() < dd.len() {
            return None;
        }
        let mut rem = dn;
        let lc = dd.last().unwrap();
        let mut quo = vec![UnivarPoly::zero(); rem.len() - ddeg];
        for k in (0..=rem.len() - 1 - ddeg).rev() {
            let head = rem[k + ddeg].clone();
            if head.is_zero() {
                continue;
            }
            let q = head.div_exact(lc)?;
            for (j, djc) in dd.iter().enumerate().take(ddeg) {
                rem[k + j] = rem[k + j].sub(&q.mul(djc));
            }
            rem[k + ddeg] = UnivarPoly::zero();
            quo[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BivarPoly::from_nested(Var::R, quo))
    }
}

fn poly_pow(p: &UnivarPoly, e: u32) -> UnivarPoly {
    let mut acc = UnivarPoly::one();
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

fn poly_vec_gcd(v: &[UnivarPoly]) -> UnivarPoly {
    let mut g = UnivarPoly::zero();
    for p in v {
        if p.is_zero() {
            continue;
        }
        g = g.gcd(p);
        if g.degree() == Some(0) {
            break;
        }
    }
    if g.is_zero() {
        UnivarPoly::one()
    } else {
        g
    }
}

// ---- subresultant PRS over Z[y][x] (nested coefficient polynomials) ----

fn nested_deg(p: &[UnivarPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn nested_trim(mut p: Vec<UnivarPoly>) -> Vec<UnivarPoly> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn nested_scale(p: &[UnivarPoly], k: &UnivarPoly) -> Vec<UnivarPoly> {
    p.iter().map(|c| c.mul(k)).collect()
}

fn nested_sub(a: &[UnivarPoly], b: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(UnivarPoly::zero);
        let y = b.get(i).cloned().unwrap_or_else(UnivarPoly::zero);
        out.push(x.sub(&y));
    }
    nested_trim(out)
}

fn nested_shift(p: &[UnivarPoly], k: usize) -> Vec<UnivarPoly> {
    let mut out = vec![UnivarPoly::zero(); k];
    out.extend_from_slice(p);
    out
}

fn nested_div_coeff(p: &[UnivarPoly], d: &UnivarPoly) -> Vec<UnivarPoly> {
    p.iter()
        .map(|c| {
            if c.is_zero() {
                UnivarPoly::zero()
            } else {
                c.div_exact(d).expect("exact coefficient division in PRS")
            }
        })
        .collect()
}

/// Pseudo-remainder over Z[y][x]: lc(b)^(da-db+1) * a mod b.
fn nested_pseudo_rem(a: &[UnivarPoly], b: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let da = nested_deg(a).unwrap();
    let db = nested_deg(b).unwrap();
    assert!(da >= db);
    let lb = b[db].clone();
    let mut e = (da - db + 1) as i64;
    let mut r = a.to_vec();
    loop {
        let dr = match nested_deg(&r) {
            None => break,
            Some(d) => d,
        };
        if dr < db {
            break;
        }
        let rl = r[dr].clone();
        let scaled = nested_scale(&r, &lb);
        let sub = nested_scale(&nested_shift(b, dr - db), &rl);
        r = nested_sub(&scaled, &sub);
        e -= 1;
    }
    if e > 0 {
        let mut f = UnivarPoly::one();
        for _ in 0..e {
            f = f.mul(&lb);
        }
        r = nested_scale(&r, &f);
    }
    nested_trim(r)
}

/// Subresultant PRS gcd over Z[y][x] for primitive inputs; returns the
/// primitive gcd as nested rows.
fn gcd_prs_nested(pa: &[UnivarPoly], pb: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let mut a = nested_trim(pa.to_vec());
    let mut b = nested_trim(pb.to_vec());
    if nested_deg(&a) < nested_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if nested_deg(&b).is_none() {
        return nested_primitive(a);
    }
    if nested_deg(&b) == Some(0) {
        // gcd of a primitive poly and a coefficient: the coefficient gcd
        let mut g = b[0].clone();
        for c in &a {
            g = g.gcd(c);
        }
        return vec![g];
    }
    let mut g = UnivarPoly::one();
    let mut h = UnivarPoly::one();
    loop {
        let da = nested_deg(&a).unwrap();
        let db = nested_deg(&b).unwrap();
        let delta = (da - db) as u32;
        let r = nested_pseudo_rem(&a, &b);
        if nested_deg(&r).is_none() {
            return nested_primitive(b);
        }
        if nested_deg(&r) == Some(0) {
            return vec![UnivarPoly::one()];
        }
        a = b;
        let denom = g.mul(&poly_pow(&h, delta));
        b = nested_div_coeff(&r, &denom);
        g = a[nested_deg(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            poly_pow(&g, delta)
                .div_exact(&poly_pow(&h, delta - 1))
                .expect("subresultant h update is exact")
        };
    }
}

fn nested_primitive(p: Vec<UnivarPoly>) -> Vec<UnivarPoly> {
    let cont = poly_vec_gcd(&p);
    p.iter()
        .map(|c| if c.is_zero() { UnivarPoly::zero() } else { c.div_exact(&cont).unwrap() })
        .collect()
}

/// Primitive gcd over Z[y][x] for content-free operands of positive x-degree,
/// by modular images: per prime, take monic univariate gcds at many y points,
/// rescale by the leading-coefficient gcd so the images interpolate a fixed
/// polynomial, CRT across primes, and verify candidates by exact division.
/// Points or primes where the gcd degree jumps are unlucky and get discarded.
fn gcd_modular_nested(pa: &[UnivarPoly], pb: &[UnivarPoly]) -> Vec<UnivarPoly> {
    let a = nested_trim(pa.to_vec());
    let b = nested_trim(pb.to_vec());
    let da = nested_deg(&a).expect("nonzero operand");
    let db = nested_deg(&b).expect("nonzero operand");
    // leading-coefficient gcd including integer content: the gcd's leading
    // coefficient must divide it over Z[y], not just up to content
    let lc_cont = a[da].content().gcd(&b[db].content());
    let gamma = a[da].gcd(&b[db]).mul_scalar(&lc_cont);
    let ya = a.iter().map(|c| c.degree().unwrap_or(0)).max().unwrap();
    let yb = b.iter().map(|c| c.degree().unwrap_or(0)).max().unwrap();
    // y-degrees are additive under multiplication, so the gcd stays within
    // min(ya, yb); the gamma rescale adds its own degree on top
    let npoints = ya.min(yb) + gamma.degree().unwrap_or(0) + 1;
    let av = BivarPoly::from_nested(Var::R, a.clone());
    let bv = BivarPoly::from_nested(Var::R, b.clone());
    let mut best_deg = usize::MAX;
    let mut primes: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<Vec<u64>>> = Vec::new(); // per prime: [x-power][y-coeff]
    let mut rounds = 0;
    'primes: for p in PrimeStream::new() {
        if bigint_mod(gamma.lc(), p) == 0 {
            continue;
        }
        let am: Vec<PolyFp> = a.iter().map(|c| c.to_modp(p)).collect();
        let bm: Vec<PolyFp> = b.iter().map(|c| c.to_modp(p)).collect();
        if am[da].is_zero() || bm[db].is_zero() {
            continue;
        }
        rounds += 1;
        assert!(rounds < 10_000, "modular bivariate gcd failed to stabilize");
        let gm = gamma.to_modp(p);
        let mut ts: Vec<u64> = Vec::with_capacity(npoints);
        let mut gs: Vec<PolyFp> = Vec::with_capacity(npoints);
        let mut pt = 0u64;
        while ts.len() < npoints {
            assert!(
                pt < (npoints as u64) * 4 + 64,
                "could not find enough good evaluation points"
            );
            let t = pt;
            pt += 1;
            if am[da].eval(t) == 0 || bm[db].eval(t) == 0 {
                continue;
            }
            let fa = PolyFp::new(p, am.iter().map(|c| c.eval(t)).collect());
            let fb = PolyFp::new(p, bm.iter().map(|c| c.eval(t)).collect());
            let g = fa.gcd(&fb);
            let dg = g.deg().unwrap();
            if dg == 0 {
                // coprime at a good point: the operands are coprime
                return vec![UnivarPoly::one()];
            }
            if dg > best_deg {
                continue; // unlucky evaluation point
            }
            if dg < best_deg {
                best_deg = dg;
                primes.clear();
                images.clear();
                ts.clear();
                gs.clear();
            }
            ts.push(t);
            gs.push(g.scale(gm.eval(t)));
        }
        let mut img = vec![vec![0u64; npoints]; best_deg + 1];
        for j in 0..=best_deg {
            let ys: Vec<u64> = gs.iter().map(|g| g.c.get(j).copied().unwrap_or(0)).collect();
            let coeffs = PolyFp::interpolate(p, &ts, &ys);
            for (k, &c) in coeffs.c.iter().enumerate() {
                img[j][k] = c;
            }
        }
        images.push(img);
        primes.push(p);
        if primes.len().is_power_of_two() {
            let mut rows = Vec::with_capacity(best_deg + 1);
            for j in 0..=best_deg {
                let coeffs: Vec<BigInt> = (0..npoints)
                    .map(|k| {
                        let residues: Vec<u64> = images.iter().map(|img| img[j][k]).collect();
                        crt_symmetric(&residues, &primes)
                    })
                    .collect();
                rows.push(UnivarPoly::new(coeffs));
            }
            let cand = BivarPoly::from_nested(Var::R, nested_primitive(rows)).primitive_normalized();
            if cand.is_zero() {
                continue 'primes;
            }
            if av.div_exact(&cand).is_some() && bv.div_exact(&cand).is_some() {
                return cand.nested_in(Var::R);
            }
        }
    }
    unreachable!("prime stream is infinite")
}

/// Resultant over Z[y][x] by the subresultant PRS (Cohen-style bookkeeping,
/// coefficients in Z[y]).
fn resultant_prs_nested(pa: &[UnivarPoly], pb: &[UnivarPoly]) -> UnivarPoly {
    let mut a = nested_trim(pa.to_vec());
    let mut b = nested_trim(pb.to_vec());
    let (da0, db0) = (nested_deg(&a), nested_deg(&b));
    if da0.is_none() || db0.is_none() {
        return UnivarPoly::zero();
    }
    let (mut da, mut db) = (da0.unwrap(), db0.unwrap());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        std::mem::swap(&mut da, &mut db);
    }
    if db == 0 {
        let r = poly_pow(&b[0], da as u32);
        return if negate { r.neg() } else { r };
    }
    let mut g = UnivarPoly::one();
    let mut h = UnivarPoly::one();
    loop {
        let da = nested_deg(&a).unwrap();
        let db = nested_deg(&b).unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = nested_pseudo_rem(&a, &b);
        a = b;
        let denom = g.mul(&poly_pow(&h, delta));
        b = if nested_deg(&r).is_none() {
            vec![]
        } else {
            nested_div_coeff(&r, &denom)
        };
        if nested_deg(&b).is_none() {
            return UnivarPoly::zero();
        }
        g = a[nested_deg(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            poly_pow(&g, delta)
                .div_exact(&poly_pow(&h, delta - 1))
                .expect("subresultant h update is exact")
        };
        if nested_deg(&b) == Some(0) {
            let da = nested_deg(&a).unwrap() as u32;
            let num = poly_pow(&b[0], da);
            let res = if da == 0 {
                num
            } else {
                num.div_exact(&poly_pow(&h, da - 1))
                    .expect("final subresultant division is exact")
            };
            return if negate { res.neg() } else { res };
        }
    }
}

/// Modular resultant over Z[y][x]: evaluate y at many points mod several
/// primes, take univariate resultants, interpolate, CRT with a rigorous
/// bound. Exact for all inputs.
fn resultant_modular_nested(pa: &[UnivarPoly], pb: &[UnivarPoly]) -> UnivarPoly {
    let a = nested_trim(pa.to_vec());
    let b = nested_trim(pb.to_vec());
    let da = match nested_deg(&a) {
        None => return UnivarPoly::zero(),
        Some(d) => d,
    };
    let db = match nested_deg(&b) {
        None => return UnivarPoly::zero(),
        Some(d) => d,
    };
    let ya = a.iter().map(|c| c.degree().map_or(0, |d| d)).max().unwrap();
    let yb = b.iter().map(|c| c.degree().map_or(0, |d| d)).max().unwrap();
    // degree bound of the resultant in y
    let dbound = ya * db + yb * da;
    // coefficient bound: product over Sylvester rows of entry height sums
    let sa: BigInt = a.iter().map(|c| c.height_sum()).sum();
    let sb: BigInt = b.iter().map(|c| c.height_sum()).sum();
    let bound: BigInt = sa.pow(db as u32) * sb.pow(da as u32) * (BigInt::from(dbound) + 1);
    let bound2 = bound << 1;
    let mut primes = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new(); // per prime: resultant coeffs
    let mut modulus = BigInt::one();
    'primes: for p in PrimeStream::new() {
        // reduce nested polys mod p, skip primes killing leading structure
        let am: Vec<PolyFp> = a.iter().map(|c| c.to_modp(p)).collect();
        let bm: Vec<PolyFp> = b.iter().map(|c| c.to_modp(p)).collect();
        if am[da].is_zero() || bm[db].is_zero() {
            continue;
        }
        let npoints = dbound + 1;
        let mut xs = Vec::with_capacity(npoints);
        let mut ys = Vec::with_capacity(npoints);
        let mut pt = 0u64;
        while xs.len() < npoints {
            assert!(
                pt < (npoints as u64) * 4 + 64,
                "could not find enough good evaluation points"
            );
            let x = pt;
            pt += 1;
            // skip evaluation points where a leading coefficient vanishes
            if am[da].eval(x) == 0 || bm[db].eval(x) == 0 {
                continue;
            }
            let fa = PolyFp::new(p, am.iter().map(|c| c.eval(x)).collect());
            let fb = PolyFp::new(p, bm.iter().map(|c| c.eval(x)).collect());
            xs.push(x);
            ys.push(fa.resultant(&fb));
        }
        let interp = PolyFp::interpolate(p, &xs, &ys);
        let mut coeffs = interp.c.clone();
        coeffs.resize(dbound + 1, 0);
        images.push(coeffs);
        primes.push(p);
        modulus *= BigInt::from(p);
        if modulus > bound2 {
            break 'primes;
        }
    }
    let mut out = Vec::with_capacity(dbound + 1);
    for i in 0..=dbound {
        let residues: Vec<u64> = images.iter().map(|img| img[i]).collect();
        out.push(crt_symmetric(&residues, &primes));
    }
    UnivarPoly::new(out)
}

impl std::fmt::Display for BivarPoly {
    /// `deg_r,deg_s:coeff;...` in descending graded-lex order; zero prints
    /// as `0,0:0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0,0:0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse(graded_lex_key(k)));
        let mut first = true;
        for k in keys {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{},{}:{}", k.0, k.1, self.terms[k])?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for BivarPoly {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, NumError> {
        let mut terms = BTreeMap::new();
        let mut any = false;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            any = true;
            let (degs, c) = part
                .split_once(':')
                .ok_or_else(|| NumError::Parse(format!("term without ':': {part}")))?;
            let (dr, ds) = degs
                .split_once(',')
                .ok_or_else(|| NumError::Parse(format!("degrees without ',': {degs}")))?;
            let dr: u32 = dr.trim().parse().map_err(|_| NumError::Parse(format!("bad r-degree: {dr}")))?;
            let ds: u32 = ds.trim().parse().map_err(|_| NumError::Parse(format!("bad s-degree: {ds}")))?;
            let coeff = BigInt::from_str(c.trim())
                .map_err(|_| NumError::Parse(format!("bad coefficient: {c}")))?;
            if terms.insert((dr, ds), coeff).is_some() {
                return Err(NumError::Parse(format!("duplicate monomial {dr},{ds}")));
            }
        }
        if !any {
            return Err(NumError::Parse("empty polynomial text".into()));
        }
        Ok(BivarPoly::new(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BivarPoly {
        BivarPoly::from_str(s).unwrap()
    }

    #[test]
    fn arithmetic_and_degrees() {
        let r = BivarPoly::var(Var::R);
        let s = BivarPoly::var(Var::S);
        let p = r.add(&s).mul(&r.sub(&s)); // r^2 - s^2
        assert_eq!(p, bp("2,0:1;0,2:-1"));
        assert_eq!(p.deg(Var::R), 2);
        assert_eq!(p.deg(Var::S), 2);
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.substitute_one(Var::R), UnivarPoly::from_i64(&[1, 0, -1]));
    }

    #[test]
    fn kronecker_matches_schoolbook_bivar() {
        let mut t1 = BTreeMap::new();
        let mut t2 = BTreeMap::new();
        for i in 0..12u32 {
            for j in 0..9u32 {
                t1.insert((i, j), BigInt::from((i * 31 + j * 17) as i64 - 140));
                t2.insert((j, i), BigInt::from((i * 13) as i64 - (j * 29) as i64 + 3));
            }
        }
        let a = BivarPoly::new(t1);
        let b = BivarPoly::new(t2);
        assert_eq!(a.mul_kronecker(&b), a.mul_schoolbook(&b));
    }

    #[test]
    fn division_exact() {
        let a = bp("1,0:1;0,1:1"); // r + s
        let b = bp("1,0:1;0,1:-1"); // r - s
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(p.div_exact(&bp("1,0:1;0,0:1")).is_none());
    }

    #[test]
    fn resultant_eliminates_variable() {
        // p = r^2 + s^2 - 1, q = r - s: Res_r = 2s^2 - 1
        let p = bp("2,0:1;0,2:1;0,0:-1");
        let q = bp("1,0:1;0,1:-1");
        let res = p.resultant_wrt(Var::R, &q).unwrap();
        assert_eq!(res, UnivarPoly::from_i64(&[-1, 0, 2]));
        // both routes agree
        let (prs, modular) = p.resultant_both_routes(Var::R, &q);
        assert_eq!(prs, modular);
        assert_eq!(prs, res);
    }

    #[test]
    fn resultant_degree_zero_conventions() {
        let p = bp("0,2:1;0,0:-2"); // s^2 - 2, free of r
        let q = bp("2,0:1;0,1:1"); // r^2 + s
        let res = p.resultant_wrt(Var::R, &q).unwrap();
        // p^(deg_r q) = (s^2-2)^2
        assert_eq!(res, UnivarPoly::from_i64(&[4, 0, -4, 0, 1]));
        let err = p.resultant_wrt(Var::R, &bp("0,1:1")).unwrap_err();
        assert!(matches!(err, NumError::Degenerate(_)));
    }

    #[test]
    fn resultant_common_factor_is_zero() {
        let a = bp("1,0:1;0,1:1"); // r + s
        let p = a.mul(&bp("1,0:1;0,0:-1"));
        let q = a.mul(&bp("0,1:1;0,0:3"));
        assert!(p.resultant_wrt(Var::R, &q).unwrap().is_zero());
    }

    #[test]
    fn gcd_and_square_free() {
        let a = bp("1,0:1;0,1:1"); // r + s
        let b = bp("1,0:1;0,1:-2"); // r - 2s
        let p = a.square().mul(&b);
        assert_eq!(p.gcd(&a.mul(&b)).primitive_normalized(), a.mul(&b).primitive_normalized());
        assert_eq!(p.square_free_part().unwrap(), a.mul(&b).primitive_normalized());
        // s-only repeated factor is also stripped
        let c = bp("0,1:1;0,0:-1"); // s - 1
        let q = c.square().mul(&a);
        assert_eq!(q.square_free_part().unwrap(), c.mul(&a).primitive_normalized());
    }

    #[test]
    fn sign_at_rational_points() {
        let p = bp("2,0:1;0,2:1;0,0:-1"); // r^2 + s^2 - 1
        let two = BigInt::from(2);
        let one = BigInt::one();
        // (1/2, 1/2): 1/4 + 1/4 - 1 < 0
        assert_eq!(p.sign_at_ratio(&one, &two, &one, &two), -1);
        // (1, 1): 1 > 0
        assert_eq!(p.sign_at_ratio(&one, &one, &one, &one), 1);
        // (3/5, 4/5): on the circle
        assert_eq!(p.sign_at_ratio(&BigInt::from(3), &BigInt::from(5), &BigInt::from(4), &BigInt::from(5)), 0);
    }

    #[test]
    fn interval_evaluation_contains_truth() {
        let p = bp("2,0:1;1,1:-3;0,2:1;0,0:7");
        let xr = RatInterval::from_ratio(&BigInt::from(1), &BigInt::from(3), 80);
        let xs = RatInterval::from_ratio(&BigInt::from(2), &BigInt::from(7), 80);
        let v = p.eval_interval(&xr, &xs, 120);
        // exact value at (1/3, 2/7): 1/9 - 3*2/21 + 4/49 + 7
        // = 1/9 - 2/7 + 4/49 + 7; sign must match
        assert_eq!(v.sign(), Some(1));
        assert_eq!(
            p.sign_at_ratio(&BigInt::from(1), &BigInt::from(3), &BigInt::from(2), &BigInt::from(7)),
            1
        );
    }

    #[test]
    fn text_format_graded_lex_round_trip() {
        let p = bp("2,0:1;1,1:2;0,2:1;1,0:-5;0,0:4");
        let s = p.to_string();
        assert_eq!(s, "2,0:1;1,1:2;0,2:1;1,0:-5;0,0:4");
        assert_eq!(BivarPoly::from_str(&s).unwrap(), p);
        assert_eq!(BivarPoly::zero().to_string(), "0,0:0");
        assert!(BivarPoly::from_str("1,1:1;1,1:2").is_err());
    }

    /// Deterministic dense polynomial for the large-gcd tests.
    fn pseudo_poly(dr: u32, ds: u32, seed: i64) -> BivarPoly {
        let mut t = BTreeMap::new();
        let mut state = seed;
        for i in 0..=dr {
            for j in 0..=ds {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                t.insert((i, j), BigInt::from(state >> 40));
            }
        }
        BivarPoly::new(t)
    }

    #[test]
    fn modular_gcd_agrees_with_prs() {
        let g = pseudo_poly(3, 3, 11);
        let a = g.mul(&pseudo_poly(4, 5, 23));
        let b = g.mul(&pseudo_poly(5, 4, 37));
        let pa = a.nested_in(Var::R);
        let pb = b.nested_in(Var::R);
        let prs = BivarPoly::from_nested(Var::R, gcd_prs_nested(&pa, &pb)).primitive_normalized();
        let modular =
            BivarPoly::from_nested(Var::R, gcd_modular_nested(&pa, &pb)).primitive_normalized();
        assert_eq!(prs, modular);
        assert!(a.div_exact(&modular).is_some());
        assert!(b.div_exact(&modular).is_some());
        // cofactors are coprime generically, so the gcd is the planted factor
        assert_eq!(modular, g.primitive_normalized());
        // coprime operands
        let c = pseudo_poly(4, 4, 51);
        let d = pseudo_poly(4, 4, 77);
        let g2 = BivarPoly::from_nested(
            Var::R,
            gcd_modular_nested(&c.nested_in(Var::R), &d.nested_in(Var::R)),
        );
        assert_eq!(g2.total_degree(), 0);
    }

    #[test]
    fn square_free_part_of_large_power_product() {
        // a^3 b^2 c with distinct irreducible-ish factors, large enough to
        // route through the modular gcd
        let a = bp("1,0:1;0,1:1;0,0:1");
        let b = bp("2,0:1;0,1:-1;0,0:2");
        let c = pseudo_poly(3, 4, 91);
        let p = a.pow(3).mul(&b.square()).mul(&c);
        let sf = p.square_free_part().unwrap();
        let expect = a.mul(&b).mul(&c.square_free_part().unwrap()).primitive_normalized();
        assert_eq!(sf, expect);
    }
}
