//! The candidate funnel pairing small coronas with medium coronas.
//!
//! A packing that contains a given small corona cannot have an arbitrarily
//! small ratio s/r: deflating the corona's 1-discs to radius r gives a
//! corona over {r, s} whose one-variable angle equation pins the ratio from
//! below.  That bound in turn caps how many s-discs fit around an r-disc,
//! so each small corona admits only finitely many medium coronas as
//! companions.  This module enumerates those companions and the resulting
//! candidate pairs.

use exactnum::{AlgebraicReal, RatInterval};

use crate::coronas::{deflation_columns, AngleVector, CoronaCode, SizeLabel};
use crate::equations::ratio_lower_bound;
use crate::Result;

/// A deflation class: the small coronas sharing a deflated word, together
/// with the lower bound on s/r that any of them forces on a packing.
pub struct RatioColumn {
    /// The shared deflated word over {r, s}.
    pub deflated: CoronaCode,
    /// Root of the deflated corona's ratio equation; in any packing
    /// containing a corona of this class, s/r is at least this value.
    pub alpha: AlgebraicReal,
    /// The small coronas of the class, in canonical order.
    pub coronas: Vec<CoronaCode>,
}

/// The deflation classes of all small coronas other than the all-s one,
/// sorted by decreasing ratio bound.
pub fn ratio_columns() -> Result<Vec<RatioColumn>> {
    let mut cols = Vec::new();
    for (deflated, coronas) in deflation_columns()? {
        let alpha = ratio_lower_bound(&deflated)?;
        cols.push(RatioColumn {
            deflated,
            alpha,
            coronas,
        });
    }
    cols.sort_by(|x, y| y.alpha.cmp_exact(&x.alpha));
    Ok(cols)
}

/// Flank-pair vectors a medium corona can have in a packing with
/// s/r >= `alpha`.  Necessary conditions only, so the list is a superset
/// of the realizable coronas.
///
/// Writing the vector (l1, ..., l6) in the flank-pair order, the angle sum
/// can only reach 2 pi if its term-wise bounds allow it.  Every angle at a
/// medium apex is below its limit for s -> r and r -> 0, which gives
/// pi * l1 + pi/2 * (l2 + l3) + pi/3 * (l4 + l5 + l6) > 2 pi, and at least
/// pi/3 (flanks no smaller than the apex) or its limit for s/r -> alpha
/// (flanks involving s), which gives
/// pi/3 * (l1 + l2 + l4) + u * (l3 + l5) + v * l6 < 2 pi where
/// u = arccos(1/(1+alpha)) and v = arccos(1 - 2 alpha^2 / (1+alpha)^2).
/// A corona also has at most five neighbors of radius r or larger, each
/// subtending an angle of at least pi/3, and its vector must admit a
/// coding.
///
/// All three inequalities are strict, which rejects the all-r corona, the
/// one realizable vector meeting them with equality.  That corona exists
/// for every pair of radii, so its angle equation is vacuous and pairing
/// it with a small corona never constrains the radii; it is left out.
pub fn candidate_r_vectors(alpha: &AlgebraicReal) -> Result<Vec<AngleVector>> {
    let prec = 80;
    let a = alpha.approx(prec);
    let one = RatInterval::from_int(1);
    let shifted = one.add(&a);
    let u = one.div(&shifted, prec)?.arccos(prec)?;
    let v = one
        .sub(&a.square().mul_int(2).div(&shifted.square(), prec)?)
        .arccos(prec)?;
    let third = RatInterval::pi(prec).div(&RatInterval::from_int(3), prec)?;
    let two_pi = RatInterval::pi(prec).mul_int(2);

    let mut out = Vec::new();
    // 2(l1 + l2 + l4) + l3 + l5 < 12: at most five neighbors of radius >= r.
    for l1 in 0..=5u32 {
        for l2 in 0..=5 - l1 {
            for l4 in 0..=5 - l1 - l2 {
                let big = l1 + l2 + l4;
                let room = 11 - 2 * big;
                for l3 in 0..=room {
                    for l5 in 0..=room - l3 {
                        let base = third
                            .mul_int(big as i64)
                            .add(&u.mul_int((l3 + l5) as i64));
                        let mut l6 = 0u32;
                        loop {
                            let lhs = base.add(&v.mul_int(l6 as i64)).cap(prec);
                            if lhs.lo() > two_pi.hi() {
                                break; // the sum of lower bounds grows with l6
                            }
                            assert!(l6 <= 120, "medium vectors not bounded at {a:?}");
                            let keep = 6 * l1 + 3 * (l2 + l3) + 2 * (l4 + l5 + l6) > 12;
                            if keep {
                                let vec =
                                    AngleVector::new(SizeLabel::M, [l1, l2, l3, l4, l5, l6])?;
                                if vec.has_coding() {
                                    out.push(vec);
                                }
                            }
                            l6 += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every (small corona, medium vector) pair that could share a packing:
/// each small corona is paired with the medium vectors allowed by the
/// ratio bound of its deflation class.
pub fn candidate_pairs() -> Result<Vec<(CoronaCode, AngleVector)>> {
    let mut out = Vec::new();
    for col in ratio_columns()? {
        let vectors = candidate_r_vectors(&col.alpha)?;
        for corona in &col.coronas {
            for &vector in &vectors {
                out.push((corona.clone(), vector));
            }
        }
    }
    Ok(out)
}
