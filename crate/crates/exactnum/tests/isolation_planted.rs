//! Root isolation fuzzing against planted rational roots.

use exactnum::isolate::{count_real_roots, isolate_real_roots};
use exactnum::modp::SplitMix64;
use exactnum::{Dyadic, RatInterval, UnivarPoly};
use num_bigint::BigInt;

fn window(lo: i64, hi: i64) -> RatInterval {
    RatInterval::new(Dyadic::from_int(lo), Dyadic::from_int(hi))
}

/// Product of (q x - p) over planted rationals p/q.
fn planted(roots: &[(i64, i64)]) -> UnivarPoly {
    let mut acc = UnivarPoly::one();
    for &(p, q) in roots {
        acc = acc.mul(&UnivarPoly::new(vec![BigInt::from(-p), BigInt::from(q)]));
    }
    acc
}

#[test]
fn planted_rational_roots() {
    let mut rng = SplitMix64::new(0xbeef_0001);
    for trial in 0..120 {
        // Distinct rationals p/q in (-4, 4) with q in 1..=9.
        let count = 1 + rng.below(7) as usize;
        let mut roots: Vec<(i64, i64)> = Vec::new();
        while roots.len() < count {
            let q = 1 + rng.below(9) as i64;
            let p = rng.below(8 * q as u64 + 1) as i64 - 4 * q;
            if roots
                .iter()
                .all(|&(p0, q0)| p0 * q != p * q0)
            {
                roots.push((p, q));
            }
        }
        let poly = planted(&roots);
        let boxes = isolate_real_roots(&poly, &window(-5, 5)).unwrap();
        assert_eq!(
            boxes.len(),
            roots.len(),
            "trial {trial}: wrong root count for {poly}"
        );
        // Each planted root lies in exactly one box.
        for &(p, q) in &roots {
            let mut containing = 0;
            for b in &boxes {
                // compare p/q against dyadic endpoints exactly: x <= p/q
                // iff q*x - p <= 0 (q > 0)
                let lo_le = b
                    .lo()
                    .mul_int(q)
                    .sub(&Dyadic::from_int(p))
                    .signum()
                    <= 0;
                let hi_ge = b
                    .hi()
                    .mul_int(q)
                    .sub(&Dyadic::from_int(p))
                    .signum()
                    >= 0;
                if lo_le && hi_ge {
                    containing += 1;
                }
            }
            assert_eq!(containing, 1, "trial {trial}: root {p}/{q} not isolated");
        }
        // Boxes are sorted and pairwise disjoint (shared endpoints allowed
        // only when the touching sides are not both points).
        for w in boxes.windows(2) {
            assert!(w[0].hi() <= w[1].lo());
        }
    }
}

#[test]
fn exact_dyadic_roots_may_become_points() {
    // A root at 1/2 always coincides with the first midpoint the unit node
    // splits at, so it is reported exactly; other dyadic roots may or may
    // not be hit, but any reported point must be a true root.
    let mut rng = SplitMix64::new(0xbeef_0002);
    for _ in 0..60 {
        let m = 1 + rng.below(15) as i64; // extra root m/16 in (0, 1)
        let mut roots = vec![(1i64, 2i64), (1, 3), (2, 7)];
        if m != 8 {
            roots.push((m, 16));
        }
        let poly = planted(&roots);
        let boxes = isolate_real_roots(&poly, &window(0, 1)).unwrap();
        assert_eq!(boxes.len(), roots.len());
        let half = Dyadic::new(BigInt::from(1), -1);
        assert!(
            boxes.iter().any(|b| b.is_point() && b.lo() == &half),
            "root 1/2 must be reported exactly"
        );
        for b in &boxes {
            if b.is_point() {
                assert_eq!(poly.sign_at_dyadic(b.lo()), 0, "false exact root");
            } else {
                assert!(poly.sign_at_dyadic(b.lo()) * poly.sign_at_dyadic(b.hi()) < 0);
            }
        }
    }
}

#[test]
fn window_edges_are_excluded_and_endpoints_clean() {
    // Roots at the window edges are excluded; surviving boxes never have a
    // root of the input at a non-point endpoint.
    let poly = planted(&[(0, 1), (1, 1), (1, 2), (1, 3)]);
    let boxes = isolate_real_roots(&poly, &window(0, 1)).unwrap();
    assert_eq!(boxes.len(), 2, "0 and 1 excluded, 1/2 and 1/3 inside");
    for b in &boxes {
        if b.is_point() {
            assert_eq!(poly.sign_at_dyadic(b.lo()), 0);
        } else {
            assert!(poly.sign_at_dyadic(b.lo()) * poly.sign_at_dyadic(b.hi()) < 0);
        }
    }
    assert_eq!(count_real_roots(&poly, &window(-1, 2)).unwrap(), 4);
}

#[test]
fn clustered_roots_separate() {
    // Roots 1/k for k = 50..60 cluster tightly near zero.
    let ks: Vec<(i64, i64)> = (50..=60).map(|k| (1, k)).collect();
    let poly = planted(&ks);
    let boxes = isolate_real_roots(&poly, &window(0, 1)).unwrap();
    assert_eq!(boxes.len(), 11);
}

#[test]
fn high_degree_with_close_pair() {
    // (3x - 1)(3000x - 1003) has roots 1/3 and 1003/3000, split by ~1e-4.
    let close = UnivarPoly::new(vec![BigInt::from(-1), BigInt::from(3)]).mul(&UnivarPoly::new(
        vec![BigInt::from(-1003), BigInt::from(3000)],
    ));
    let filler = planted(&[(1, 2), (3, 4), (5, 6)]);
    let poly = close.mul(&filler);
    let boxes = isolate_real_roots(&poly, &window(0, 1)).unwrap();
    assert_eq!(boxes.len(), 5);
}
