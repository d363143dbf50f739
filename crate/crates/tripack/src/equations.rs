//! Exact angle equations imposed by coronas on the radii (r, s).
//!
//! The angle at the center of a disc of radius y subtended by two tangent
//! neighbors of radii x and z has cosine 1 - 2xz/((x+y)(y+z)); its sine is a
//! polynomial multiple of one of eight square roots X_1..X_8 of polynomials
//! in r and s.  The cosine of a corona's full angle sum expands, through the
//! addition formulas, into an expression that is linear in each X_i.
//! Setting the sum to 2 pi and eliminating the X_i by repeated squaring
//! yields one polynomial equation in (r, s), together with a trace of the
//! squarings performed; certification later replays that trace to reject
//! the parasitic roots the squarings introduce.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Mutex;

use exactnum::{AlgebraicReal, BivarPoly, RatInterval, Var};
use num_bigint::BigInt;
use once_cell::sync::Lazy;

use crate::coronas::{AngleVector, CoronaCode, SizeLabel};
use crate::{Error, Result};

fn poly(terms: &[(u32, u32, i64)]) -> BivarPoly {
    let mut map = BTreeMap::new();
    for &(dr, ds, c) in terms {
        map.insert((dr, ds), BigInt::from(c));
    }
    BivarPoly::new(map)
}

/// Squares of the eight auxiliary sine radicals, indexed 1..=8:
/// X1²=s(s+2), X2²=rs(r+s+1), X3²=2s+1, X4²=s(2r+s), X5²=r(r+2s),
/// X6²=3, X7²=r(r+2), X8²=2r+1.
static X_SQUARES: Lazy<[BivarPoly; 8]> = Lazy::new(|| {
    [
        poly(&[(0, 2, 1), (0, 1, 2)]),
        poly(&[(2, 1, 1), (1, 2, 1), (1, 1, 1)]),
        poly(&[(0, 1, 2), (0, 0, 1)]),
        poly(&[(1, 1, 2), (0, 2, 1)]),
        poly(&[(2, 0, 1), (1, 1, 2)]),
        poly(&[(0, 0, 3)]),
        poly(&[(2, 0, 1), (1, 0, 2)]),
        poly(&[(1, 0, 2), (0, 0, 1)]),
    ]
});

pub fn x_square(i: usize) -> &'static BivarPoly {
    &X_SQUARES[i - 1]
}

/// Cleared-denominator form of one angle kind: cos = cos_num/den and
/// sin = sin_factor · X_radical / den, with den > 0 on 0 < s < r < 1.
pub struct AngleParts {
    pub den: BivarPoly,
    pub cos_num: BivarPoly,
    pub sin_factor: BivarPoly,
    pub radical: usize,
}

/// The 18 angle kinds as a 3x6 table indexed by (apex, flank-pair index).
static ANGLE_TABLE: Lazy<[[AngleParts; 6]; 3]> = Lazy::new(|| {
    let e = |den: &[(u32, u32, i64)],
             cos_num: &[(u32, u32, i64)],
             sin_factor: &[(u32, u32, i64)],
             radical: usize| AngleParts {
        den: poly(den),
        cos_num: poly(cos_num),
        sin_factor: poly(sin_factor),
        radical,
    };
    // Apex L: angles x-1-z.
    let apex_l = [
        // 1,1: cos 1/2
        e(&[(0, 0, 2)], &[(0, 0, 1)], &[(0, 0, 1)], 6),
        // 1,r: cos 1/(1+r)
        e(&[(1, 0, 1), (0, 0, 1)], &[(0, 0, 1)], &[(0, 0, 1)], 7),
        // 1,s: cos 1/(1+s)
        e(&[(0, 1, 1), (0, 0, 1)], &[(0, 0, 1)], &[(0, 0, 1)], 1),
        // r,r: cos 1 - 2r²/(1+r)²
        e(
            &[(2, 0, 1), (1, 0, 2), (0, 0, 1)],
            &[(2, 0, -1), (1, 0, 2), (0, 0, 1)],
            &[(1, 0, 2)],
            8,
        ),
        // r,s: cos 1 - 2rs/((1+r)(1+s))
        e(
            &[(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)],
            &[(1, 0, 1), (0, 1, 1), (0, 0, 1), (1, 1, -1)],
            &[(0, 0, 2)],
            2,
        ),
        // s,s: cos 1 - 2s²/(1+s)²
        e(
            &[(0, 2, 1), (0, 1, 2), (0, 0, 1)],
            &[(0, 2, -1), (0, 1, 2), (0, 0, 1)],
            &[(0, 1, 2)],
            3,
        ),
    ];
    // Apex M: angles x-r-z.
    let apex_m = [
        // 1,1: cos 1 - 2/(1+r)²
        e(
            &[(2, 0, 1), (1, 0, 2), (0, 0, 1)],
            &[(2, 0, 1), (1, 0, 2), (0, 0, -1)],
            &[(0, 0, 2)],
            7,
        ),
        // 1,r: cos r/(1+r)
        e(&[(1, 0, 1), (0, 0, 1)], &[(1, 0, 1)], &[(0, 0, 1)], 8),
        // 1,s: cos 1 - 2s/((1+r)(r+s))
        e(
            &[(2, 0, 1), (1, 1, 1), (1, 0, 1), (0, 1, 1)],
            &[(2, 0, 1), (1, 1, 1), (1, 0, 1), (0, 1, -1)],
            &[(0, 0, 2)],
            2,
        ),
        // r,r: cos 1/2
        e(&[(0, 0, 2)], &[(0, 0, 1)], &[(0, 0, 1)], 6),
        // r,s: cos r/(r+s)
        e(&[(1, 0, 1), (0, 1, 1)], &[(1, 0, 1)], &[(0, 0, 1)], 4),
        // s,s: cos 1 - 2s²/(r+s)²
        e(
            &[(2, 0, 1), (1, 1, 2), (0, 2, 1)],
            &[(2, 0, 1), (1, 1, 2), (0, 2, -1)],
            &[(0, 1, 2)],
            5,
        ),
    ];
    // Apex S: angles x-s-z.
    let apex_s = [
        // 1,1: cos 1 - 2/(1+s)²
        e(
            &[(0, 2, 1), (0, 1, 2), (0, 0, 1)],
            &[(0, 2, 1), (0, 1, 2), (0, 0, -1)],
            &[(0, 0, 2)],
            1,
        ),
        // 1,r: cos 1 - 2r/((1+s)(r+s))
        e(
            &[(1, 1, 1), (1, 0, 1), (0, 2, 1), (0, 1, 1)],
            &[(1, 1, 1), (1, 0, -1), (0, 2, 1), (0, 1, 1)],
            &[(0, 0, 2)],
            2,
        ),
        // 1,s: cos s/(1+s)
        e(&[(0, 1, 1), (0, 0, 1)], &[(0, 1, 1)], &[(0, 0, 1)], 3),
        // r,r: cos 1 - 2r²/(r+s)²
        e(
            &[(2, 0, 1), (1, 1, 2), (0, 2, 1)],
            &[(2, 0, -1), (1, 1, 2), (0, 2, 1)],
            &[(1, 0, 2)],
            4,
        ),
        // r,s: cos s/(r+s)
        e(&[(1, 0, 1), (0, 1, 1)], &[(0, 1, 1)], &[(0, 0, 1)], 5),
        // s,s: cos 1/2
        e(&[(0, 0, 2)], &[(0, 0, 1)], &[(0, 0, 1)], 6),
    ];
    [apex_l, apex_m, apex_s]
});

/// Angle parts for the angle at an `apex`-disc whose flanks form pair `pair`
/// (index into [`FLANK_PAIRS`]).
pub fn angle_parts(apex: SizeLabel, pair: usize) -> &'static AngleParts {
    &ANGLE_TABLE[apex.index()][pair]
}

/// A polynomial in r, s and the radicals X_1..X_8, linear in each radical.
/// Terms are keyed by a bitmask over the radicals (bit i-1 for X_i).
#[derive(Clone, Debug)]
pub struct TrigExpr {
    terms: BTreeMap<u8, BivarPoly>,
}

impl TrigExpr {
    pub fn zero() -> Self {
        TrigExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(0u8, p);
        }
        TrigExpr { terms }
    }

    pub fn radical_multiple(radical: usize, factor: BivarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !factor.is_zero() {
            terms.insert(1u8 << (radical - 1), factor);
        }
        TrigExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &BivarPoly)> {
        self.terms.iter().map(|(&m, p)| (m, p))
    }

    fn insert_add(terms: &mut BTreeMap<u8, BivarPoly>, mask: u8, p: BivarPoly) {
        if p.is_zero() {
            return;
        }
        match terms.remove(&mask) {
            None => {
                terms.insert(mask, p);
            }
            Some(old) => {
                let sum = old.add(&p);
                if !sum.is_zero() {
                    terms.insert(mask, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, p) in &other.terms {
            Self::insert_add(&mut terms, m, p.clone());
        }
        TrigExpr { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, p) in &other.terms {
            Self::insert_add(&mut terms, m, p.neg());
        }
        TrigExpr { terms }
    }

    /// Product with reduction of every squared radical via its polynomial.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&ma, pa) in &self.terms {
            for (&mb, pb) in &other.terms {
                let mut coeff = pa.mul(pb);
                let mut common = ma & mb;
                while common != 0 {
                    let i = common.trailing_zeros() as usize + 1;
                    coeff = coeff.mul(x_square(i));
                    common &= common - 1;
                }
                Self::insert_add(&mut terms, ma ^ mb, coeff);
            }
        }
        TrigExpr { terms }
    }

    /// Smallest radical index appearing, if any.
    pub fn min_radical(&self) -> Option<usize> {
        let mut mask_union = 0u8;
        for &m in self.terms.keys() {
            mask_union |= m;
        }
        if mask_union == 0 {
            None
        } else {
            Some(mask_union.trailing_zeros() as usize + 1)
        }
    }

    /// Splits into (A, B) with self = A·X_i + B and neither part mentioning X_i.
    pub fn split(&self, radical: usize) -> (TrigExpr, TrigExpr) {
        let bit = 1u8 << (radical - 1);
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (&m, p) in &self.terms {
            if m & bit != 0 {
                a.insert(m & !bit, p.clone());
            } else {
                b.insert(m, p.clone());
            }
        }
        (TrigExpr { terms: a }, TrigExpr { terms: b })
    }

    /// The radical-free part, which is the whole expression once every
    /// radical has been eliminated.
    pub fn into_poly(mut self) -> BivarPoly {
        debug_assert!(self.terms.keys().all(|&m| m == 0));
        self.terms.remove(&0).unwrap_or_else(BivarPoly::zero)
    }

    /// Divides out integer content and monomial factors shared by all
    /// coefficients; both are nonzero on the open quadrant, so the zero set
    /// there is unchanged.
    fn strip_safe_content(self) -> Self {
        if self.terms.is_empty() {
            return self;
        }
        let mut mr = u32::MAX;
        let mut ms = u32::MAX;
        for p in self.terms.values() {
            let (a, b) = p.monomial_content();
            mr = mr.min(a);
            ms = ms.min(b);
        }
        let mut gcd = BigInt::from(0);
        for p in self.terms.values() {
            gcd = num_integer::Integer::gcd(&gcd, &p.content());
        }
        if mr == 0 && ms == 0 && gcd == BigInt::from(1) {
            return self;
        }
        let terms = self
            .terms
            .into_iter()
            .map(|(m, p)| {
                let stripped = p.div_monomial(mr, ms);
                let map: BTreeMap<(u32, u32), BigInt> = stripped
                    .terms()
                    .map(|(&k, c)| (k, c / &gcd))
                    .collect();
                (m, BivarPoly::new(map))
            })
            .collect();
        TrigExpr { terms }
    }

    /// Outward-rounded enclosure of the value at boxes for (r, s), taking
    /// every radical as the nonnegative square root of its polynomial.
    pub fn eval_interval(
        &self,
        r_box: &RatInterval,
        s_box: &RatInterval,
        prec: i64,
    ) -> std::result::Result<RatInterval, exactnum::NumError> {
        let mut total = RatInterval::zero();
        for (&m, p) in &self.terms {
            let mut v = p.eval_interval(r_box, s_box, prec);
            let mut mask = m;
            while mask != 0 {
                let i = mask.trailing_zeros() as usize + 1;
                let g = x_square(i).eval_interval(r_box, s_box, prec);
                // The true square is nonnegative; clip rounding artifacts.
                let g = clip_nonneg(&g);
                v = v.mul(&g.sqrt(prec)?);
                mask &= mask - 1;
            }
            total = total.add(&v);
        }
        Ok(total.cap(prec))
    }
}

fn clip_nonneg(x: &RatInterval) -> RatInterval {
    if x.lo().signum() < 0 {
        RatInterval::new(exactnum::Dyadic::zero(), x.hi().clone())
    } else {
        x.clone()
    }
}

/// One squaring step of the radical elimination: the equation A·X_i + B = 0
/// was replaced by A²·X_i² - B² = 0.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub radical: usize,
    pub a: TrigExpr,
    pub b: TrigExpr,
}

/// The ordered squaring steps leading from the cosine expansion to the
/// final polynomial, earliest first.
#[derive(Clone, Debug, Default)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

/// Polynomial factors that are sign-constant on 0 < s < r < 1; dividing
/// them out never changes the zero set there.  They are the factors of the
/// angle denominators and radical squares, plus the coordinate differences.
static SAFE_FACTORS: Lazy<Vec<BivarPoly>> = Lazy::new(|| {
    vec![
        poly(&[(1, 0, 1)]),                       // r
        poly(&[(0, 1, 1)]),                       // s
        poly(&[(1, 0, 1), (0, 0, 1)]),            // 1+r
        poly(&[(0, 1, 1), (0, 0, 1)]),            // 1+s
        poly(&[(1, 0, 1), (0, 1, 1)]),            // r+s
        poly(&[(1, 0, 1), (0, 0, 2)]),            // r+2
        poly(&[(0, 1, 1), (0, 0, 2)]),            // s+2
        poly(&[(1, 0, 2), (0, 0, 1)]),            // 2r+1
        poly(&[(0, 1, 2), (0, 0, 1)]),            // 2s+1
        poly(&[(1, 0, 2), (0, 1, 1)]),            // 2r+s
        poly(&[(1, 0, 1), (0, 1, 2)]),            // r+2s
        poly(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]), // 1+r+s
        poly(&[(1, 0, -1), (0, 0, 1)]),           // 1-r
        poly(&[(0, 1, -1), (0, 0, 1)]),           // 1-s
        poly(&[(1, 0, 1), (0, 1, -1)]),           // r-s
    ]
});

/// Normalizes the eliminated polynomial: square-free part, content and
/// sign-constant factors removed, leading graded-lex coefficient positive.
fn cleanup_final(p: BivarPoly) -> Result<BivarPoly> {
    if p.is_zero() {
        return Ok(p);
    }
    let mut p = p.square_free_part()?;
    loop {
        let mut divided = false;
        for f in SAFE_FACTORS.iter() {
            if p.total_degree() < f.total_degree() {
                continue;
            }
            if let Some(q) = p.div_exact(f) {
                if !q.is_zero() {
                    p = q;
                    divided = true;
                }
            }
        }
        if !divided {
            break;
        }
    }
    Ok(p.primitive_normalized())
}

/// The polynomial consequence of "the angles of this vector sum to 2 pi",
/// with the squaring trace.  The zero polynomial signals a corona whose
/// angle sum is identically 2 pi (the all-equal coronas at 6 times pi/3).
pub fn vector_polynomial(v: &AngleVector) -> Result<(BivarPoly, DerivationTrace)> {
    static CACHE: Lazy<Mutex<HashMap<(SizeLabel, [u32; 6]), (BivarPoly, DerivationTrace)>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (v.apex(), v.counts());
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let computed = vector_polynomial_uncached(v)?;
    CACHE
        .lock()
        .unwrap()
        .insert(key, computed.clone());
    Ok(computed)
}

fn vector_polynomial_uncached(v: &AngleVector) -> Result<(BivarPoly, DerivationTrace)> {
    // Accumulate cos and sin numerators of the running angle sum over the
    // common denominator product; the accumulators share that denominator,
    // so no content may be stripped before the subtraction below.
    let mut cos_acc = TrigExpr::from_poly(BivarPoly::one());
    let mut sin_acc = TrigExpr::zero();
    let mut den_acc = BivarPoly::one();
    for (pair, &count) in v.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let parts = angle_parts(v.apex(), pair);
        let c = TrigExpr::from_poly(parts.cos_num.clone());
        let s = TrigExpr::radical_multiple(parts.radical, parts.sin_factor.clone());
        for _ in 0..count {
            let next_cos = cos_acc.mul(&c).sub(&sin_acc.mul(&s));
            let next_sin = sin_acc.mul(&c).add(&cos_acc.mul(&s));
            cos_acc = next_cos;
            sin_acc = next_sin;
            den_acc = den_acc.mul(&parts.den);
        }
    }
    // cos(sum) = 1 clears to cos numerator minus denominator.
    let mut e = cos_acc.sub(&TrigExpr::from_poly(den_acc)).strip_safe_content();
    // Eliminate radicals in ascending index order by squaring.  Between
    // steps the radical-free equations are pruned to their square-free
    // parts with sign-constant factors removed: this keeps only the zero
    // set, which is all the replay of the trace relies on.
    let mut trace = DerivationTrace::default();
    while let Some(i) = e.min_radical() {
        let (a, b) = e.split(i);
        trace.steps.push(TraceStep {
            radical: i,
            a: a.clone(),
            b: b.clone(),
        });
        let squared = a
            .mul(&a)
            .mul(&TrigExpr::from_poly(x_square(i).clone()))
            .sub(&b.mul(&b));
        e = if squared.min_radical().is_none() {
            TrigExpr::from_poly(cleanup_final(squared.into_poly())?)
        } else {
            squared.strip_safe_content()
        };
    }
    let final_poly = cleanup_final(e.into_poly())?;
    Ok((final_poly, trace))
}

/// The defining polynomial of a corona's angle equation.
pub fn corona_polynomial(c: &CoronaCode) -> Result<(BivarPoly, DerivationTrace)> {
    vector_polynomial(&c.angle_vector())
}

/// Rigorous enclosure of one angle kind at boxes for r and s.
pub fn angle_interval(
    apex: SizeLabel,
    pair: usize,
    r_box: &RatInterval,
    s_box: &RatInterval,
    prec: i64,
) -> Result<RatInterval> {
    let parts = angle_parts(apex, pair);
    let num = parts.cos_num.eval_interval(r_box, s_box, prec);
    let den = parts.den.eval_interval(r_box, s_box, prec);
    let cos = num.div(&den, prec).map_err(Error::Num)?;
    cos.arccos(prec).map_err(Error::Num)
}

/// Rigorous enclosure of the angle sum of a vector at boxes for r and s.
pub fn angle_sum_interval(
    v: &AngleVector,
    r_box: &RatInterval,
    s_box: &RatInterval,
    prec: i64,
) -> Result<RatInterval> {
    let mut total = RatInterval::zero();
    for (pair, &count) in v.counts().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let one = angle_interval(v.apex(), pair, r_box, s_box, prec)?;
        total = total.add(&one.mul_int(count as i64));
    }
    Ok(total.cap(prec))
}

/// Certifies that the angle sum of `v` is exactly one full turn at the
/// point (r, s) boxed by the arguments: the enclosure must contain 2 pi and
/// be too narrow to contain any other multiple.
pub fn certify_full_turn(
    v: &AngleVector,
    r_box: &RatInterval,
    s_box: &RatInterval,
) -> Result<bool> {
    for prec in [64i64, 128, 256, 512] {
        let sum = angle_sum_interval(v, r_box, s_box, prec)?;
        let two_pi = RatInterval::pi(prec).mul_int(2);
        if sum.is_disjoint(&two_pi) {
            return Ok(false);
        }
        if sum.width() < RatInterval::pi(prec).lo().clone() {
            return Ok(true);
        }
    }
    Err(Error::Invalid(
        "angle sum enclosure would not converge".into(),
    ))
}

/// The root in (0, 1) of the one-variable angle equation obtained by
/// deflating `c` (shrinking its 1-discs to r-discs) and reading the deflated
/// corona's equation in the ratio s/r.  Roots where the angles wrap around
/// more than once are discarded by interval arithmetic.
pub fn ratio_lower_bound(c: &CoronaCode) -> Result<AlgebraicReal> {
    let renamed = c.deflate().rename_m_to_l();
    let (p, _) = corona_polynomial(&renamed)?;
    let u = p
        .as_univar(Var::S)
        .ok_or_else(|| Error::Invalid(format!("ratio equation of {c} involves r")))?;
    let window = RatInterval::new(exactnum::Dyadic::zero(), exactnum::Dyadic::one());
    let roots = AlgebraicReal::roots_in(&u, &window)?;
    let v = renamed.angle_vector();
    // The renamed corona has no medium flank, so r is a dummy here.
    let r_box = RatInterval::point(exactnum::Dyadic::new(BigInt::from(1), -1));
    let mut selected: Vec<AlgebraicReal> = Vec::new();
    for root in roots {
        let s_box = root.approx(128);
        if certify_full_turn(&v, &r_box, &s_box)? {
            selected.push(root);
        }
    }
    if selected.len() != 1 {
        return Err(Error::Invalid(format!(
            "expected one ratio root in (0,1) for {c}, found {}",
            selected.len()
        )));
    }
    Ok(selected.pop().unwrap())
}
