//! Solving pairs of corona equations into exact radius pairs, and
//! certifying which coronas are realizable at a given pair.
//!
//! A pair of coronas (one around a small disc, one around a medium disc)
//! yields two polynomial equations in (r, s).  Eliminating each variable in
//! turn by resultants gives two univariate polynomials whose roots in (0, 1)
//! are crossed into candidate pairs; this deliberately over-approximates the
//! common roots, and the candidates are then narrowed by interval arithmetic
//! and finally certified or refuted exactly.

use std::cmp::Ordering;

use exactnum::{AlgebraicReal, BivarPoly, Dyadic, NumError, RatInterval, UnivarPoly, Var};

use crate::coronas::{AngleVector, CoronaCode, SizeLabel};
use crate::equations::{
    angle_interval, angle_sum_interval, certify_full_turn, vector_polynomial, x_square, TrigExpr,
};
use crate::{Error, Result};

/// An exact radius pair 0 < s < r < 1.
#[derive(Clone, Debug)]
pub struct CandidatePair {
    pub r: AlgebraicReal,
    pub s: AlgebraicReal,
}

impl CandidatePair {
    /// Equality as points of the plane, decided exactly.
    pub fn same_point(&self, other: &CandidatePair) -> bool {
        self.r.is_eq(&other.r) && self.s.is_eq(&other.s)
    }

    /// The same point with both coordinates rebuilt over smaller defining
    /// polynomials where the library or bounded factoring certifies one.
    /// Raw resultants have huge degrees; certifying exact zeros at a pair
    /// is only affordable once its coordinates are reduced.
    pub fn reduced(&self, library: &[UnivarPoly], budget: usize) -> CandidatePair {
        CandidatePair {
            r: self.r.reduced(library, budget),
            s: self.s.reduced(library, budget),
        }
    }
}

fn unit_window() -> RatInterval {
    RatInterval::new(Dyadic::zero(), Dyadic::one())
}

/// Resultant of p and q eliminating `var`, with the degenerate case (both
/// free of `var`) resolved by the univariate gcd: its roots are the only
/// values of the remaining variable where both can vanish.
fn elimination(p: &BivarPoly, q: &BivarPoly, var: Var) -> Result<UnivarPoly> {
    match p.resultant_wrt(var, q) {
        Ok(u) => Ok(u),
        Err(NumError::Degenerate(_)) => {
            let a = p.as_univar(var.other()).expect("free of eliminated variable");
            let b = q.as_univar(var.other()).expect("free of eliminated variable");
            Ok(a.gcd(&b))
        }
        Err(e) => Err(Error::Num(e)),
    }
}

/// Candidate pairs of the system {p = 0, q = 0} with 0 < s < r < 1, by
/// eliminating one variable at a time.  The result is the full cross
/// product of the per-variable root sets, a superset of the true common
/// roots.  A zero resultant means the equations share a whole curve and
/// the system has no isolated solutions to enumerate.
pub fn hidden_variable(p: &BivarPoly, q: &BivarPoly) -> Result<Vec<CandidatePair>> {
    let r_poly = elimination(p, q, Var::S)?;
    let s_poly = elimination(p, q, Var::R)?;
    if r_poly.is_zero() || s_poly.is_zero() {
        return Err(Error::Continuum(
            "eliminating a variable left the zero polynomial".into(),
        ));
    }
    let window = unit_window();
    let r_roots = AlgebraicReal::roots_in(&r_poly, &window)?;
    let s_roots = AlgebraicReal::roots_in(&s_poly, &window)?;
    let mut out = Vec::new();
    for r0 in &r_roots {
        for s0 in &s_roots {
            if s0.cmp_exact(r0) == Ordering::Less {
                out.push(CandidatePair {
                    r: r0.clone(),
                    s: s0.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Interval screen of a candidate pair against the angle equations of the
/// vectors that produced it.  A pair passes when no equation can be refuted
/// by enclosures: each polynomial encloses zero, each angle sum encloses
/// one full turn, and some corona of a unit disc can close up.  Only
/// refutations are decisions; everything kept here still awaits exact
/// certification.
pub fn interval_filter(cand: &CandidatePair, vectors: &[AngleVector]) -> Result<bool> {
    {
        let r_box = cand.r.approx(40);
        let s_box = cand.s.approx(40);
        for v in vectors {
            let (p, _) = vector_polynomial(v)?;
            if !p.eval_interval(&r_box, &s_box, 48).contains_zero() {
                return Ok(false);
            }
        }
    }
    for prec in [32i64, 80] {
        let r_box = cand.r.approx(prec);
        let s_box = cand.s.approx(prec);
        let two_pi = RatInterval::pi(prec).mul_int(2);
        for v in vectors {
            let sum = angle_sum_interval(v, &r_box, &s_box, prec)?;
            if sum.is_disjoint(&two_pi) {
                return Ok(false);
            }
        }
    }
    exists_large_corona(&cand.r.approx(80), &cand.s.approx(80))
}

/// Angle vectors around `apex` whose angle sum encloses one full turn at
/// the given boxes and which admit a circular word.  The search walks the
/// six counts depth-first, cutting a branch as soon as the partial sum
/// exceeds the full turn.
pub fn corona_vectors(
    apex: SizeLabel,
    r_box: &RatInterval,
    s_box: &RatInterval,
    prec: i64,
) -> Result<Vec<AngleVector>> {
    let mut angles = Vec::with_capacity(6);
    for pair in 0..6 {
        let a = angle_interval(apex, pair, r_box, s_box, prec)?;
        if a.lo().signum() <= 0 {
            return Err(Error::Invalid(format!(
                "angle enclosure around {} touches zero; boxes too wide",
                apex.letter()
            )));
        }
        angles.push(a);
    }
    let two_pi = RatInterval::pi(prec).mul_int(2);
    let mut counts = [0u32; 6];
    let mut out = Vec::new();
    descend(0, &RatInterval::zero(), &mut counts, &angles, &two_pi, apex, &mut out)?;
    Ok(out)
}

fn descend(
    idx: usize,
    sum: &RatInterval,
    counts: &mut [u32; 6],
    angles: &[RatInterval],
    two_pi: &RatInterval,
    apex: SizeLabel,
    out: &mut Vec<AngleVector>,
) -> Result<()> {
    if idx == 6 {
        let total: u32 = counts.iter().sum();
        if total >= 3 && !sum.is_disjoint(two_pi) {
            let v = AngleVector::new(apex, *counts)?;
            if v.has_coding() {
                out.push(v);
            }
        }
        return Ok(());
    }
    let mut acc = sum.clone();
    let mut k = 0u32;
    loop {
        counts[idx] = k;
        descend(idx + 1, &acc, counts, angles, two_pi, apex, out)?;
        acc = acc.add(&angles[idx]);
        if acc.lo() > two_pi.hi() {
            break;
        }
        k += 1;
        if k > 64 {
            return Err(Error::Invalid(
                "corona search unbounded; an angle enclosure is too small".into(),
            ));
        }
    }
    counts[idx] = 0;
    Ok(())
}

/// Can any corona close up around a unit disc at these radii?
pub fn exists_large_corona(r_box: &RatInterval, s_box: &RatInterval) -> Result<bool> {
    Ok(!corona_vectors(SizeLabel::L, r_box, s_box, 80)?.is_empty())
}

/// Certifies exactly whether the angles of `v` sum to one full turn at the
/// pair.  Three facts are needed: the eliminated polynomial vanishes, each
/// squaring step of the derivation is reversible at the point (the equation
/// did not pick up the conjugate branch), and the angle sum is a single
/// turn rather than several.
///
/// Candidates must carry reduced defining polynomials; certifying a zero
/// value over raw resultant factors is prohibitively expensive.
pub fn exact_certify(cand: &CandidatePair, v: &AngleVector) -> Result<bool> {
    let (p, trace) = vector_polynomial(v)?;
    if !p.is_zero() && AlgebraicReal::sign_at(&p, &cand.r, &cand.s)? != 0 {
        return Ok(false);
    }
    if !certify_full_turn(v, &cand.r.approx(128), &cand.s.approx(128))? {
        return Ok(false);
    }
    // Walk the squarings backwards.  Knowing a²X² - b² = 0 at the point,
    // the step is reversible iff the conjugate aX - b is nonzero there;
    // then aX + b = 0, which is the previous equation.  When the conjugate
    // refuses to separate from zero by intervals, decide the sign of the
    // pre-squaring expression exactly instead.
    for step in trace.steps.iter().rev() {
        let x = TrigExpr::radical_multiple(step.radical, BivarPoly::one());
        let conj = step.a.mul(&x).sub(&step.b);
        let mut separated = false;
        for prec in [96i64, 192, 384, 768] {
            let e = conj.eval_interval(&cand.r.approx(prec), &cand.s.approx(prec), prec)?;
            if !e.contains_zero() {
                separated = true;
                break;
            }
        }
        if separated {
            continue;
        }
        let branch = step.a.mul(&x).add(&step.b);
        if sign_trig(&branch, &cand.r, &cand.s)? != 0 {
            return Ok(false);
        }
        // The pre-squaring expression itself vanishes; keep walking.
    }
    Ok(true)
}

/// Exact sign of a radical expression at an exact pair.  The smallest
/// radical X is split off as aX + b; the radicands are strictly positive
/// on the open quadrant, so the sign follows from the signs of a and b,
/// comparing a²X² against b² recursively when they disagree.
fn sign_trig(e: &TrigExpr, r: &AlgebraicReal, s: &AlgebraicReal) -> Result<i32> {
    let Some(i) = e.min_radical() else {
        return Ok(AlgebraicReal::sign_at(&e.clone().into_poly(), r, s)?);
    };
    let (a, b) = e.split(i);
    let sw = AlgebraicReal::sign_at(x_square(i), r, s)?;
    debug_assert!(sw > 0, "radicand must be positive on the open quadrant");
    let sa = if sw == 0 { 0 } else { sign_trig(&a, r, s)? };
    let sb = sign_trig(&b, r, s)?;
    if sa == 0 {
        return Ok(sb);
    }
    if sb == 0 || sa == sb {
        return Ok(sa);
    }
    // Opposite signs: |aX| vs |b| is decided by a²X² - b².
    let diff = a
        .mul(&a)
        .mul(&TrigExpr::from_poly(x_square(i).clone()))
        .sub(&b.mul(&b));
    let cmp = sign_trig(&diff, r, s)?;
    Ok(match cmp.cmp(&0) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    })
}

/// The coronas of each disc size certified realizable at an exact pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoronaInventory {
    pub small: Vec<CoronaCode>,
    pub medium: Vec<CoronaCode>,
    pub large: Vec<CoronaCode>,
}

/// Enumerates, for each disc size, every corona whose angle sum is exactly
/// one full turn at the pair.  Candidate vectors come from the interval
/// search; each is then certified or refuted exactly.
pub fn corona_inventory(cand: &CandidatePair) -> Result<CoronaInventory> {
    let r_box = cand.r.approx(96);
    let s_box = cand.s.approx(96);
    let mut inv = CoronaInventory::default();
    for apex in SizeLabel::ALL {
        let mut words: Vec<CoronaCode> = Vec::new();
        for v in corona_vectors(apex, &r_box, &s_box, 96)? {
            if exact_certify(cand, &v)? {
                words.extend(v.codings());
            }
        }
        words.sort();
        match apex {
            SizeLabel::L => inv.large = words,
            SizeLabel::M => inv.medium = words,
            SizeLabel::S => inv.small = words,
        }
    }
    Ok(inv)
}

/// Solutions of {p = 0, q = 0, u = 0} with 0 < s < r < 1, where u is
/// univariate in `var`.  Unlike [`hidden_variable`] this tolerates p and q
/// sharing a curve: the shared part is split off by the bivariate gcd and
/// intersected with the roots of u, while the coprime cofactors contribute
/// finitely many points checked against u exactly.
pub fn triangular_solutions(
    p: &BivarPoly,
    q: &BivarPoly,
    u: &UnivarPoly,
    var: Var,
) -> Result<Vec<CandidatePair>> {
    if p.is_zero() || q.is_zero() || u.is_zero() {
        return Err(Error::Invalid("zero equation in a triangular system".into()));
    }
    let window = unit_window();
    let g = p.gcd(q);
    let mut out: Vec<CandidatePair> = Vec::new();
    if g.total_degree() >= 1 {
        let u_biv = BivarPoly::from_univar(var, u);
        let t = g.resultant_wrt(var, &u_biv)?;
        if t.is_zero() {
            return Err(Error::Continuum(
                "the shared curve contains a line of the pinned variable".into(),
            ));
        }
        let free_roots = AlgebraicReal::roots_in(&t, &window)?;
        let pinned_roots = AlgebraicReal::roots_in(u, &window)?;
        for a in &free_roots {
            for b in &pinned_roots {
                let (r0, s0) = match var {
                    Var::S => (a, b),
                    Var::R => (b, a),
                };
                if s0.cmp_exact(r0) == Ordering::Less
                    && AlgebraicReal::sign_at(&g, r0, s0)? == 0
                {
                    out.push(CandidatePair {
                        r: r0.clone(),
                        s: s0.clone(),
                    });
                }
            }
        }
    }
    let pp = p.div_exact(&g).expect("gcd divides");
    let qq = q.div_exact(&g).expect("gcd divides");
    for cand in hidden_variable(&pp, &qq)? {
        let pinned = match var {
            Var::S => &cand.s,
            Var::R => &cand.r,
        };
        if pinned.sign_of(u) != 0 {
            continue;
        }
        // Cross pairs are a superset; keep only true common roots.
        if AlgebraicReal::sign_at(&pp, &cand.r, &cand.s)? == 0
            && AlgebraicReal::sign_at(&qq, &cand.r, &cand.s)? == 0
        {
            out.push(cand);
        }
    }
    let mut unique: Vec<CandidatePair> = Vec::new();
    for c in out {
        if !unique.iter().any(|known| known.same_point(&c)) {
            unique.push(c);
        }
    }
    Ok(unique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::corona_polynomial;

    fn code(text: &str) -> CoronaCode {
        text.parse().unwrap()
    }

    fn poly_of(text: &str) -> BivarPoly {
        corona_polynomial(&code(text)).unwrap().0
    }

    /// The pair where four unit discs close around a medium disc and two
    /// unit plus two small discs close around a small one.
    fn binary_pair() -> CandidatePair {
        let p = poly_of("s:11ss");
        let q = poly_of("s:1111").swap_vars();
        let pairs = hidden_variable(&p, &q).unwrap();
        assert_eq!(pairs.len(), 1);
        pairs.into_iter().next().unwrap()
    }

    #[test]
    fn two_univariate_equations_cross_once() {
        let cand = binary_pair();
        assert!((cand.r.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((cand.s.to_f64() - (5.0 - 2.0 * 6f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn equal_roots_rejected_by_strict_order() {
        let p = poly_of("s:1111");
        let q = poly_of("s:1111").swap_vars();
        assert!(hidden_variable(&p, &q).unwrap().is_empty());
    }

    #[test]
    fn identical_bivariate_equations_are_a_continuum() {
        let p = poly_of("s:11rs");
        match hidden_variable(&p, &p) {
            Err(Error::Continuum(_)) => {}
            Err(e) => panic!("expected a continuum, got {e}"),
            Ok(v) => panic!("expected a continuum, got {} pairs", v.len()),
        }
    }

    #[test]
    fn planted_line_systems_recover_the_grid() {
        // p has roots r = 1/2, 1/3 and q has roots s = 2/5, 1/7; the pairs
        // with s < r are exactly three of the four grid points.
        let p = BivarPoly::from_univar(Var::R, &UnivarPoly::from_i64(&[1, -5, 6]));
        let q = BivarPoly::from_univar(Var::S, &UnivarPoly::from_i64(&[2, -19, 35]));
        let pairs = hidden_variable(&p, &q).unwrap();
        assert_eq!(pairs.len(), 3);
        let as_f64: Vec<(f64, f64)> = pairs
            .iter()
            .map(|c| (c.r.to_f64(), c.s.to_f64()))
            .collect();
        for want in [(0.5, 0.4), (0.5, 1.0 / 7.0), (1.0 / 3.0, 1.0 / 7.0)] {
            assert!(
                as_f64
                    .iter()
                    .any(|got| (got.0 - want.0).abs() < 1e-12 && (got.1 - want.1).abs() < 1e-12),
                "missing pair {want:?}"
            );
        }
    }

    #[test]
    fn interval_filter_keeps_the_true_pair() {
        let cand = binary_pair();
        let vs = [code("s:11ss").angle_vector(), code("r:1111").angle_vector()];
        assert!(interval_filter(&cand, &vs).unwrap());
    }

    #[test]
    fn interval_filter_rejects_a_wrong_pair() {
        // The same equations forced against a mismatched candidate.
        let p = BivarPoly::from_univar(Var::R, &UnivarPoly::from_i64(&[-1, 0, 2]));
        let q = BivarPoly::from_univar(Var::S, &UnivarPoly::from_i64(&[-1, 0, 4]));
        let wrong = hidden_variable(&p, &q).unwrap().remove(0);
        let vs = [code("s:11ss").angle_vector(), code("r:1111").angle_vector()];
        assert!(!interval_filter(&wrong, &vs).unwrap());
    }

    #[test]
    fn exact_certification_of_the_binary_pair() {
        let cand = binary_pair();
        assert!(exact_certify(&cand, &code("s:11ss").angle_vector()).unwrap());
        assert!(exact_certify(&cand, &code("r:1111").angle_vector()).unwrap());
        // A corona whose equation picks a different root of s.
        assert!(!exact_certify(&cand, &code("s:11sss").angle_vector()).unwrap());
    }

    #[test]
    fn all_equal_coronas_certify_by_angle_count_alone() {
        let cand = binary_pair();
        let hexagon = AngleVector::new(SizeLabel::S, [0, 0, 0, 0, 0, 6]).unwrap();
        assert!(exact_certify(&cand, &hexagon).unwrap());
        let double_turn = AngleVector::new(SizeLabel::S, [0, 0, 0, 0, 0, 12]).unwrap();
        assert!(!exact_certify(&cand, &double_turn).unwrap());
    }

    #[test]
    fn inventory_of_the_binary_pair() {
        let inv = corona_inventory(&binary_pair()).unwrap();
        assert!(inv.small.contains(&code("s:11ss")));
        assert!(inv.small.contains(&code("s:ssssss")));
        assert!(inv.medium.contains(&code("r:1111")));
        assert!(inv.large.contains(&code("1:111111")));
        assert!(!inv.small.contains(&code("s:11sss")));
    }

    #[test]
    fn triangular_system_on_a_shared_curve() {
        // p and q share the factor vanishing at r = 1/2, so their plain
        // resultant is zero.  Pinning s by 4s² - s (roots 0 and 1/4, only
        // 1/4 in the open window) cuts the shared line down to (1/2, 1/4);
        // the coprime cofactors meet at (3/4, 1/4), which also satisfies
        // the pin.
        let shared = BivarPoly::from_univar(Var::R, &UnivarPoly::from_i64(&[-1, 2]));
        let pp = BivarPoly::from_univar(Var::R, &UnivarPoly::from_i64(&[-3, 4]));
        let qq = BivarPoly::from_univar(Var::S, &UnivarPoly::from_i64(&[-1, 4]));
        let p = shared.mul(&pp);
        let q = shared.mul(&qq);
        let u = UnivarPoly::from_i64(&[0, -1, 4]);
        let sols = triangular_solutions(&p, &q, &u, Var::S).unwrap();
        assert_eq!(sols.len(), 2);
        let as_f64: Vec<(f64, f64)> = sols.iter().map(|c| (c.r.to_f64(), c.s.to_f64())).collect();
        for want in [(0.5, 0.25), (0.75, 0.25)] {
            assert!(
                as_f64
                    .iter()
                    .any(|got| (got.0 - want.0).abs() < 1e-12 && (got.1 - want.1).abs() < 1e-12),
                "missing solution {want:?}"
            );
        }
    }
}
