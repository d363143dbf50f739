//! Real root isolation by the Descartes/bisection method with exact integer
//! transforms. Input must be square-free; output is a sorted list of disjoint
//! intervals, each containing exactly one root of the open window, with the
//! polynomial nonvanishing at non-point endpoints. A dyadic root encountered
//! at a bisection midpoint is reported exactly, as a point interval.

use crate::dyadic::Dyadic;
use crate::interval::RatInterval;
use crate::upoly::UnivarPoly;
use crate::NumError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sign variation count of the coefficient sequence, zeros skipped.
fn sign_variations(p: &UnivarPoly) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for c in p.coeffs() {
        let s = if c.is_negative() {
            -1
        } else if c.is_zero() {
            0
        } else {
            1
         };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound for the number of roots of q in the open interval (0,1):
/// variations of (x+1)^deg q(1/(x+1)).
fn descartes_01(q: &UnivarPoly) -> usize {
    let t = q.reverse().taylor_shift(&BigInt::one());
    sign_variations(&t)
}

struct Node {
    depth: u64,
    offset: BigInt,
    poly: UnivarPoly,
    // Node boundary coincides with a root of the input polynomial (window
    // edge root or an exact dyadic root split off earlier). Output intervals
    // must not stop there, so such nodes split until they detach.
    forbid_lo: bool,
    forbid_hi: bool,
}

/// Isolate the real roots of square-free `p` inside the open window.
pub fn isolate_real_roots(p: &UnivarPoly, window: &RatInterval) -> Result<Vec<RatInterval>, NumError> {
    if p.is_zero() {
        return Err(NumError::InvalidDomain("cannot isolate roots of the zero polynomial".into()));
    }
    if p.deg() == 0 {
        return Ok(vec![]);
    }
    let lo = window.lo().clone();
    let hi = window.hi().clone();
    if lo >= hi {
        return Ok(vec![]);
    }
    let width = hi.sub(&lo);

    // Base transform: integer polynomial with roots in (0,1) mirroring the
    // roots of p in (lo, hi). With lo = a/2^t and width = c/2^t:
    // q(x) = 2^(t d) p((a + c x)/2^t).
    let t = (-lo.exp()).max(-width.exp()).max(0) as u64;
    let a = lo.mant() << ((t as i64 + lo.exp()) as u64);
    let c = width.mant() << ((t as i64 + width.exp()) as u64);
    let mut q = p.scale_down_pow2(t).taylor_shift(&a).scale_arg(&c);

    // strip roots at the window endpoints (open window excludes them)
    let (k_lo, stripped) = q.strip_x_power();
    q = stripped;
    let root_at_lo = k_lo > 0;
    let mut root_at_hi = false;
    let x_minus_1 = UnivarPoly::from_i64(&[-1, 1]);
    while q.eval_bigint(&BigInt::one()).is_zero() {
        q = q.div_exact(&x_minus_1).expect("root at 1 divides");
        root_at_hi = true;
    }

    let mut out: Vec<RatInterval> = Vec::new();
    let to_window = |depth: u64, offset: &BigInt| -> Dyadic {
        // lo + width * offset / 2^depth
        let frac = Dyadic::new(offset.clone(), -(depth as i64));
        lo.add(&width.mul(&frac))
    };

    let mut stack = vec![Node {
        depth: 0,
        offset: BigInt::zero(),
        poly: q,
        forbid_lo: root_at_lo,
        forbid_hi: root_at_hi,
    }];
    while let Some(node) = stack.pop() {
        if node.poly.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let v = descartes_01(&node.poly);
        if v == 0 {
            continue;
        }
        if v == 1 && !node.forbid_lo && !node.forbid_hi {
            let a = to_window(node.depth, &node.offset);
            let b = to_window(node.depth, &(&node.offset + 1));
            out.push(RatInterval::new(a, b));
            continue;
        }
        assert!(
            node.depth < 4096,
            "root isolation did not terminate; input not square-free?"
        );
        // split: left = 2^d q(x/2), right = left(x+1)
        let mut left = node.poly.scale_down_pow2(1);
        let mut right = left.taylor_shift(&BigInt::one());
        // midpoint root shows up as right(0) == 0 (equivalently left(1) == 0)
        let (k, stripped) = right.strip_x_power();
        let mut root_at_mid = false;
        if k > 0 {
            assert_eq!(k, 1, "repeated midpoint root; input not square-free");
            right = stripped;
            left = left.div_exact(&x_minus_1).expect("midpoint root divides");
            root_at_mid = true;
            let m_off = (&node.offset << 1u8) + 1;
            out.push(RatInterval::point(to_window(node.depth + 1, &m_off)));
        }
        let off2 = &node.offset << 1u8;
        stack.push(Node {
            depth: node.depth + 1,
            offset: &off2 + 1,
            poly: right,
            forbid_lo: root_at_mid,
            forbid_hi: node.forbid_hi,
        });
        stack.push(Node {
            depth: node.depth + 1,
            offset: off2,
            poly: left,
            forbid_lo: node.forbid_lo,
            forbid_hi: root_at_mid,
        });
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

/// Count roots in the open window (square-free input).
pub fn count_real_roots(p: &UnivarPoly, window: &RatInterval) -> Result<usize, NumError> {
    Ok(isolate_real_roots(p, window)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn poly(coeffs: &[i64]) -> UnivarPoly {
        UnivarPoly::from_i64(coeffs)
    }

    fn unit() -> RatInterval {
        RatInterval::new(Dyadic::zero(), Dyadic::one())
    }

    fn wide(a: i64, b: i64) -> RatInterval {
        RatInterval::new(Dyadic::from_int(a), Dyadic::from_int(b))
    }

    #[test]
    fn isolates_two_close_roots() {
        // (x - 1/3)(x - 1/3 - 1/1000) scaled: (3x-1)(3000x - 1003)
        let p = poly(&[-1, 3]).mul(&poly(&[-1003, 3000]));
        let roots = isolate_real_roots(&p, &unit()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi() <= roots[1].lo());
        for iv in &roots {
            // exactly one sign change across each interval
            assert!(p.sign_at_dyadic(iv.lo()) * p.sign_at_dyadic(iv.hi()) < 0);
        }
    }

    #[test]
    fn excludes_window_endpoint_roots() {
        // roots at 0, 1/2, 1
        let p = poly(&[0, 1]).mul(&poly(&[-1, 2])).mul(&poly(&[-1, 1]));
        let roots = isolate_real_roots(&p, &unit()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&Dyadic::new(BigInt::from(1), -1)));
    }

    #[test]
    fn exact_dyadic_root_reported_as_point() {
        // root exactly at 1/2 among irrational neighbors: (2x-1)(x^2-2x+1/2 scaled)
        let p = poly(&[-1, 2]).mul(&poly(&[1, -4, 2])); // (2x-1)(2x^2-4x+1)
        let roots = isolate_real_roots(&p, &unit()).unwrap();
        // roots in (0,1): 1/2 and 1 - 1/sqrt2 ~ 0.2929
        assert_eq!(roots.len(), 2);
        let exact: Vec<_> = roots.iter().filter(|iv| iv.is_point()).collect();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].lo(), &Dyadic::new(BigInt::from(1), -1));
    }

    #[test]
    fn wider_windows_and_negatives() {
        // x^2 - 2: roots +-sqrt2
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &wide(-2, 2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi().signum() <= 0);
        assert!(roots[1].lo().signum() >= 0);
        let none = isolate_real_roots(&p, &RatInterval::new(Dyadic::from_int(3), Dyadic::from_int(5))).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn dense_root_family() {
        // prod (k x - 1) for k in 2..=12: roots 1/k all in (0,1)
        let mut p = UnivarPoly::one();
        for k in 2..=12i64 {
            p = p.mul(&poly(&[-1, k]));
        }
        let roots = isolate_real_roots(&p, &unit()).unwrap();
        assert_eq!(roots.len(), 11);
        for iv in &roots {
            if iv.is_point() {
                assert_eq!(p.sign_at_dyadic(iv.lo()), 0);
            } else {
                assert!(p.sign_at_dyadic(iv.lo()) * p.sign_at_dyadic(iv.hi()) < 0);
            }
        }
    }

    #[test]
    fn table_style_quartic() {
        let p = UnivarPoly::from_str("4:5;3:20;2:10;1:-20;0:1").unwrap();
        let roots = isolate_real_roots(&p, &unit()).unwrap();
        assert_eq!(roots.len(), 2);
    }
}
