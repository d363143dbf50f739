//! Real algebraic numbers as (squarefree polynomial, isolating interval)
//! pairs, with exact sign evaluation of polynomial expressions at such
//! numbers.

use std::cmp::Ordering;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bpoly::{BivarPoly, Var};
use crate::dyadic::Dyadic;
use crate::factor::factor_squarefree;
use crate::interval::RatInterval;
use crate::isolate::isolate_real_roots;
use crate::modp::{bigint_mod, crt_symmetric, PolyFp, PrimeStream};
use crate::upoly::UnivarPoly;
use crate::NumError;

/// Isolating state: interval plus the sign of the defining polynomial at
/// the left endpoint (0 for point intervals).
#[derive(Debug, Clone)]
struct CellState {
    iv: RatInterval,
    sign_lo: i32,
}

/// A real root of a squarefree integer polynomial, pinned down by an
/// isolating interval with dyadic endpoints. Non-point intervals contain
/// exactly one root strictly inside and the polynomial does not vanish at
/// either endpoint; point intervals designate an exact dyadic root.
///
/// The interval shrinks on demand behind a mutex, so shared references can
/// be refined concurrently.
#[derive(Debug)]
pub struct AlgebraicReal {
    poly: Arc<UnivarPoly>,
    cell: Mutex<CellState>,
}

impl Clone for AlgebraicReal {
    fn clone(&self) -> Self {
        let state = self.cell.lock().unwrap().clone();
        AlgebraicReal {
            poly: Arc::clone(&self.poly),
            cell: Mutex::new(state),
        }
    }
}

/// Sign of `p` at a dyadic point, trying interval arithmetic at escalating
/// precision before falling back to exact evaluation.
fn dyadic_sign(p: &UnivarPoly, x: &Dyadic) -> i32 {
    for prec in [128i64, 512, 2048] {
        let iv = p.eval_interval(&RatInterval::point(x.clone()), prec);
        if let Some(s) = iv.sign() {
            return s;
        }
    }
    p.sign_at_dyadic(x)
}

impl AlgebraicReal {
    /// Wrap an isolating interval produced for the squarefree polynomial
    /// `poly`. The interval must satisfy the isolation invariants.
    pub fn from_isolated(poly: Arc<UnivarPoly>, iv: RatInterval) -> Self {
        let sign_lo = if iv.is_point() {
            0
        } else {
            let s = dyadic_sign(&poly, iv.lo());
            debug_assert!(s != 0, "endpoint must not be a root");
            debug_assert!(s * dyadic_sign(&poly, iv.hi()) < 0, "sign change required");
            s
        };
        AlgebraicReal {
            poly,
            cell: Mutex::new(CellState { iv, sign_lo }),
        }
    }

    /// An exact dyadic value as an algebraic number.
    pub fn from_dyadic(d: &Dyadic) -> Self {
        // Primitive form of (x - d): either x - m*2^e or 2^-e x - m.
        let mant = d.mant().clone();
        let exp = d.exp();
        let poly = if exp >= 0 {
            UnivarPoly::new(vec![-(mant << exp as usize), BigInt::one()])
        } else {
            UnivarPoly::new(vec![-mant, BigInt::one() << (-exp) as usize])
        };
        AlgebraicReal {
            poly: Arc::new(poly),
            cell: Mutex::new(CellState {
                iv: RatInterval::point(d.clone()),
                sign_lo: 0,
            }),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_dyadic(&Dyadic::from_int(n))
    }

    /// All real roots of `p` inside the open window, as algebraic numbers
    /// over the squarefree part of `p`, in increasing order.
    pub fn roots_in(p: &UnivarPoly, window: &RatInterval) -> Result<Vec<Self>, NumError> {
        let sf = Arc::new(p.square_free()?);
        let cells = isolate_real_roots(&sf, window)?;
        Ok(cells
            .into_iter()
            .map(|iv| Self::from_isolated(Arc::clone(&sf), iv))
            .collect())
    }

    pub fn defining(&self) -> &UnivarPoly {
        &self.poly
    }

    pub fn defining_arc(&self) -> Arc<UnivarPoly> {
        Arc::clone(&self.poly)
    }

    /// Snapshot of the current isolating interval.
    pub fn cell(&self) -> RatInterval {
        self.cell.lock().unwrap().iv.clone()
    }

    pub fn is_rational_point(&self) -> bool {
        self.cell.lock().unwrap().iv.is_point()
    }

    /// One bisection step; no-op on point cells.
    fn refine_once(&self) {
        let mut state = self.cell.lock().unwrap();
        if state.iv.is_point() {
            return;
        }
        let mid = state.iv.midpoint();
        let s = dyadic_sign(&self.poly, &mid);
        if s == 0 {
            state.iv = RatInterval::point(mid);
            state.sign_lo = 0;
        } else if s == state.sign_lo {
            state.iv = RatInterval::new(mid, state.iv.hi().clone());
        } else {
            state.iv = RatInterval::new(state.iv.lo().clone(), mid);
        }
    }

    /// Shrink the isolating interval to width at most 2^-prec and return it.
    pub fn approx(&self, prec: i64) -> RatInterval {
        let tol = Dyadic::pow2(-prec);
        loop {
            {
                let state = self.cell.lock().unwrap();
                if state.iv.is_point() || state.iv.width() <= tol {
                    return state.iv.clone();
                }
            }
            self.refine_once();
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(60).to_f64_mid()
    }

    /// Decimal enclosure with the given number of fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let prec = (digits as i64) * 10 / 3 + 16;
        self.approx(prec).to_decimal(digits)
    }

    /// Exact sign of the number itself.
    pub fn sign(&self) -> i32 {
        {
            let state = self.cell.lock().unwrap();
            if let Some(s) = state.iv.sign() {
                return s;
            }
            // The cell straddles zero; it contains exactly one root, so the
            // number is zero iff zero is a root of the defining polynomial.
            if self.poly.coeff(0).is_zero() {
                return 0;
            }
        }
        loop {
            self.refine_once();
            let state = self.cell.lock().unwrap();
            if let Some(s) = state.iv.sign() {
                return s;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Does `g` vanish at this number? Decided exactly through the gcd with
    /// the defining polynomial: the cell isolates one root of the defining
    /// polynomial, so membership in the gcd's root set is a sign test at
    /// the cell endpoints.
    pub fn vanishes(&self, g: &UnivarPoly) -> bool {
        if g.is_zero() {
            return true;
        }
        let common = self.poly.gcd(g);
        if common.degree().map_or(true, |d| d == 0) {
            return false;
        }
        let state = self.cell.lock().unwrap();
        if state.iv.is_point() {
            return common.sign_at_dyadic(state.iv.lo()) == 0;
        }
        // The endpoints are not roots of the defining polynomial, hence not
        // of its divisor either.
        let slo = dyadic_sign(&common, state.iv.lo());
        let shi = dyadic_sign(&common, state.iv.hi());
        debug_assert!(slo != 0 && shi != 0);
        slo * shi < 0
    }

    /// Exact sign of a univariate polynomial at this number.
    pub fn sign_of(&self, g: &UnivarPoly) -> i32 {
        if g.is_zero() {
            return 0;
        }
        if self.is_rational_point() {
            let state = self.cell.lock().unwrap();
            return g.sign_at_dyadic(state.iv.lo());
        }
        for prec in [96i64, 224, 480] {
            let iv = g.eval_interval(&self.approx(prec), prec + 32);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return s;
                }
            }
        }
        if self.vanishes(g) {
            return 0;
        }
        let mut prec = 960i64;
        loop {
            let iv = g.eval_interval(&self.approx(prec), prec + 32);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return s;
                }
            }
            prec *= 2;
            assert!(prec < 1 << 24, "sign_of failed to converge");
        }
    }

    /// Replace the defining polynomial by a smaller one still vanishing at
    /// this number: first by gcd against library polynomials that often
    /// share a root, then by bounded factoring. Falls back to the current
    /// polynomial when nothing smaller is certified.
    pub fn reduced(&self, library: &[UnivarPoly], budget: usize) -> AlgebraicReal {
        let mut current = self.clone();
        // Library passes can chain: a gcd may itself share a root with a
        // later library entry.
        let mut progressed = true;
        while progressed {
            progressed = false;
            for lib in library {
                if lib.is_zero() || current.poly.degree().map_or(true, |d| d <= 1) {
                    continue;
                }
                let g = current.poly.gcd(lib);
                if let Some(d) = g.degree() {
                    if d >= 1 && d < current.poly.deg() && current.vanishes(&g) {
                        current = current.with_defining(g);
                        progressed = true;
                    }
                }
            }
        }
        if current.poly.degree().map_or(true, |d| d <= 1) {
            return current;
        }
        let outcome = factor_squarefree(&current.poly, budget);
        for f in &outcome.factors {
            if f.degree().map_or(false, |d| d >= 1) && current.vanishes(f) {
                return current.with_defining(f.clone());
            }
        }
        if let Some(rem) = &outcome.remainder {
            if rem.deg() < current.poly.deg() && current.vanishes(rem) {
                return current.with_defining(rem.clone());
            }
        }
        current
    }

    /// Rebuild over a divisor of the defining polynomial that still
    /// vanishes here. The current cell stays isolating: it contains this
    /// number and every root of the divisor is a root of the old poly.
    fn with_defining(&self, g: UnivarPoly) -> AlgebraicReal {
        let g = g.primitive_normalized();
        let state = self.cell.lock().unwrap().clone();
        let sign_lo = if state.iv.is_point() {
            0
        } else {
            dyadic_sign(&g, state.iv.lo())
        };
        debug_assert!(state.iv.is_point() || sign_lo != 0);
        AlgebraicReal {
            poly: Arc::new(g),
            cell: Mutex::new(CellState {
                iv: state.iv,
                sign_lo,
            }),
        }
    }

    /// Exact equality, decided without refinement loops: overlapping cells
    /// plus a gcd certificate.
    fn equal_certified(&self, other: &AlgebraicReal) -> bool {
        let a = self.cell();
        let b = other.cell();
        if a.is_disjoint(&b) {
            return false;
        }
        if a.is_point() && b.is_point() {
            return a.lo() == b.lo();
        }
        if a.is_point() {
            return other.poly.sign_at_dyadic(a.lo()) == 0 && b.contains(a.lo());
        }
        if b.is_point() {
            return self.poly.sign_at_dyadic(b.lo()) == 0 && a.contains(b.lo());
        }
        // If the numbers are equal, both are the same root of the gcd.
        let g = self.poly.gcd(&other.poly);
        if g.degree().map_or(true, |d| d < 1) {
            return false;
        }
        if !self.vanishes(&g) || !other.vanishes(&g) {
            return false;
        }
        self.same_root_of(&g, other)
    }

    /// Both numbers are roots of squarefree `g`; are they the same root?
    fn same_root_of(&self, g: &UnivarPoly, other: &AlgebraicReal) -> bool {
        let hull = self.cell().hull(&other.cell());
        let pad = Dyadic::pow2(hull.width().exp().saturating_sub(4));
        let window = RatInterval::new(hull.lo().sub(&pad), hull.hi().add(&pad));
        let boxes = match isolate_real_roots(g, &window) {
            Ok(b) => b,
            Err(_) => return false,
        };
        for _ in 0..100_000usize {
            let ca = self.cell();
            let cb = other.cell();
            // A point box is a dyadic root of g (hence of both defining
            // polynomials); if both cells contain it, both numbers are it.
            for b in &boxes {
                if b.is_point() && ca.contains(b.lo()) && cb.contains(b.lo()) {
                    return true;
                }
            }
            let ia = boxes.iter().position(|b| b.contains_interval(&ca));
            let ib = boxes.iter().position(|b| b.contains_interval(&cb));
            if let (Some(i), Some(j)) = (ia, ib) {
                return i == j;
            }
            if ca.is_disjoint(&cb) {
                return false;
            }
            self.refine_once();
            other.refine_once();
        }
        panic!("same_root_of failed to localize");
    }

    /// Refine two known-distinct numbers until their cells separate.
    fn order_distinct(&self, other: &AlgebraicReal) -> Ordering {
        for _ in 0..100_000usize {
            let a = self.cell();
            let b = other.cell();
            // Roots lie strictly inside non-point cells, so a shared
            // endpoint still separates distinct numbers.
            if a.hi() < b.lo() || (a.hi() == b.lo() && !(a.is_point() && b.is_point())) {
                return Ordering::Less;
            }
            if b.hi() < a.lo() || (b.hi() == a.lo() && !(a.is_point() && b.is_point())) {
                return Ordering::Greater;
            }
            self.refine_once();
            other.refine_once();
        }
        panic!("order_distinct failed to separate");
    }

    /// Total order on real algebraic numbers.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if self.equal_certified(other) {
            Ordering::Equal
        } else {
            self.order_distinct(other)
        }
    }

    pub fn is_eq(&self, other: &AlgebraicReal) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }

    /// Exact sign of a bivariate polynomial at (r, s) = (x, y). Interval
    /// arithmetic decides nonzero signs; exact zeros are certified through
    /// a univariate reduction or, in the truly bivariate case, a resultant
    /// whose roots enclose the value.
    pub fn sign_at(f: &BivarPoly, x: &AlgebraicReal, y: &AlgebraicReal) -> Result<i32, NumError> {
        if f.is_zero() {
            return Ok(0);
        }
        if let Some(u) = f.as_univar(Var::R) {
            return Ok(x.sign_of(&u));
        }
        if let Some(u) = f.as_univar(Var::S) {
            return Ok(y.sign_of(&u));
        }
        if x.is_rational_point() {
            let u = substitute_var_dyadic(f, Var::R, x.cell().lo());
            return Ok(y.sign_of(&u));
        }
        if y.is_rational_point() {
            let u = substitute_var_dyadic(f, Var::S, y.cell().lo());
            return Ok(x.sign_of(&u));
        }

        for prec in [128i64, 320, 800] {
            let iv = f.eval_interval(&x.approx(prec), &y.approx(prec), prec + 32);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
        }
        if Self::certify_zero(f, x, y)? {
            return Ok(0);
        }
        let mut prec = 1600i64;
        loop {
            let iv = f.eval_interval(&x.approx(prec), &y.approx(prec), prec + 32);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return Ok(s);
                }
            }
            prec *= 2;
            assert!(prec < 1 << 24, "sign_at failed to converge");
        }
    }

    /// Decide whether f(x, y) = 0 exactly. The value u = f(x, y) is a root
    /// of C(t) = Res_r(A, Res_s(B, t - f)); if C(0) != 0 then u != 0, and
    /// otherwise u = 0 iff 0 is the unique root of C inside a tight
    /// enclosure of u.
    fn certify_zero(f: &BivarPoly, x: &AlgebraicReal, y: &AlgebraicReal) -> Result<bool, NumError> {
        let c = value_resultant(f, &x.poly, &y.poly)?.square_free()?;
        if !c.coeff(0).is_zero() {
            return Ok(false);
        }
        let zero = Dyadic::zero();
        let mut prec = 160i64;
        loop {
            let v = f.eval_interval(&x.approx(prec), &y.approx(prec), prec + 32);
            if let Some(s) = v.sign() {
                if s != 0 {
                    return Ok(false);
                }
            }
            if !v.contains(&zero) {
                return Ok(false);
            }
            // Pad the enclosure so the value sits strictly inside the
            // isolation window.
            let pad = Dyadic::pow2(-(prec + 8));
            let window = RatInterval::new(v.lo().sub(&pad), v.hi().add(&pad));
            let roots = isolate_real_roots(&c, &window)?;
            debug_assert!(!roots.is_empty(), "value must be a root of its resultant");
            if roots.len() == 1 {
                // The unique root of C in the window is u itself; zero is a
                // root of C lying in the window, so u = 0.
                debug_assert!(roots[0].contains(&zero));
                return Ok(true);
            }
            prec *= 2;
            assert!(prec < 1 << 22, "certify_zero failed to localize value");
        }
    }
}

/// Evaluate f at var = v (dyadic), returning an integer polynomial in the
/// other variable equal to 2^k * f for some k >= 0 (sign behaviour intact).
fn substitute_var_dyadic(f: &BivarPoly, var: Var, v: &Dyadic) -> UnivarPoly {
    let dv = f.deg(var);
    let mant = v.mant();
    let exp = v.exp();
    let mut out = UnivarPoly::zero();
    for ((er, es), c) in f.terms() {
        let (ev, eo) = match var {
            Var::R => (*er, *es),
            Var::S => (*es, *er),
        };
        let mut k = c * num_traits::pow::pow(mant.clone(), ev as usize);
        // Global scaling 2^(dv*|exp|) clears denominators when exp < 0.
        let shift = if exp >= 0 {
            (ev as i64) * exp
        } else {
            ((dv - ev) as i64) * (-exp)
        };
        k <<= shift as usize;
        out = out.add(&UnivarPoly::monomial(eo as usize, k));
    }
    out
}

/// C(t) = Res_r(A(r), Res_s(B(s), t - f(r, s))), computed by exact integer
/// evaluation at t = 0, 1, ..., n and CRT interpolation (n = deg A deg B).
/// Degree drops of the inner resultant at special t are compensated by
/// lc(A) powers, so every value equals the symbolic specialization.
fn value_resultant(
    f: &BivarPoly,
    a: &UnivarPoly,
    b: &UnivarPoly,
) -> Result<UnivarPoly, NumError> {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    if da == 0 || db == 0 {
        return Err(NumError::InvalidDomain(
            "value_resultant: constant defining polynomial".into(),
        ));
    }
    let n = da * db;
    let b_bi = BivarPoly::from_univar(Var::S, b);

    let mut inners: Vec<UnivarPoly> = Vec::with_capacity(n + 1);
    for t in 0..=n as i64 {
        let shifted = BivarPoly::constant(BigInt::from(t)).sub(f);
        let inner = b_bi.resultant_wrt(Var::S, &shifted)?;
        if inner.is_zero() {
            return Err(NumError::Degenerate(
                "value_resultant: inner resultant vanished".into(),
            ));
        }
        inners.push(inner);
    }
    // deg_r of the symbolic inner resultant: the maximum over n+1 > deg B
    // points is attained, since the leading coefficient (a polynomial in t)
    // has at most deg B roots.
    let dmax = inners.iter().map(|p| p.deg()).max().unwrap();
    let values: Vec<BigInt> = inners
        .iter()
        .map(|inner| {
            let base = a.resultant(inner);
            let drop = dmax - inner.deg();
            if drop == 0 {
                base
            } else {
                base * num_traits::pow::pow(a.lc().clone(), drop)
            }
        })
        .collect();

    if values.iter().all(|v| v.is_zero()) {
        return Err(NumError::Degenerate(
            "value_resultant: resultant vanished identically".into(),
        ));
    }

    // Newton forward differences at unit spacing: |Delta^k| <= 2^k max|C(t_j)|
    // and the binomial basis polynomials have coefficient 1-norms equal to 1,
    // so every coefficient of C is below 2^(n+1) max|C(t_j)|.
    let maxval = values.iter().map(|v| v.abs()).max().unwrap();
    let bound: BigInt = maxval * (BigInt::one() << (n + 1));
    let two_bound: BigInt = &bound << 1;

    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    let mut stream = PrimeStream::new();
    while modulus <= two_bound {
        let p = stream.next().expect("prime stream exhausted");
        primes.push(p);
        modulus *= BigInt::from(p);
    }

    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        let xs: Vec<u64> = (0..=n as u64).map(|t| t % p).collect();
        let ys: Vec<u64> = values.iter().map(|v| bigint_mod(v, p)).collect();
        let interp = PolyFp::interpolate(p, &xs, &ys);
        let mut coeffs = interp.c.clone();
        coeffs.resize(n + 1, 0);
        residues.push(coeffs);
    }

    let coeffs: Vec<BigInt> = (0..=n)
        .map(|i| {
            let r: Vec<u64> = residues.iter().map(|row| row[i]).collect();
            crt_symmetric(&r, &primes)
        })
        .collect();
    Ok(UnivarPoly::new(coeffs))
}
