//! Property-based invariants for the exact kernel and the classifier.

use gmax_core::basis::{classify_ab_with, Classification};
use gmax_core::geom::{union_measure, ConvexPolygon, Point, Vec2};
use gmax_core::maximal::eta_of;
use gmax_core::scalar::{int, rat, snap, Scalar};
use gmax_core::seq::tau_truncated;
use num::{Signed, Zero};
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-200i64..200, 1i64..50).prop_map(|(n, d)| rat(n, d))
}

fn point_strategy() -> impl Strategy<Value = Point> {
    (scalar_strategy(), scalar_strategy()).prop_map(|(x, y)| Point::new(x, y))
}

fn polygon_strategy() -> impl Strategy<Value = ConvexPolygon> {
    proptest::collection::vec(point_strategy(), 3..7)
        .prop_map(ConvexPolygon::new)
        .prop_filter("nondegenerate", |p| !p.is_empty())
}

fn decreasing_sequence() -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((1i64..40, 1i64..40), 6..16).prop_map(|steps| {
        let mut acc = int(0);
        let mut climb: Vec<Scalar> = steps
            .into_iter()
            .map(|(n, d)| {
                acc += rat(n, d);
                acc.clone()
            })
            .collect();
        climb.reverse();
        climb
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_preserves_area(p in polygon_strategy(), dx in scalar_strategy(), dy in scalar_strategy()) {
        let q = p.translate(&Vec2::new(dx, dy));
        prop_assert_eq!(p.area(), q.area());
    }

    #[test]
    fn homothety_scales_area_by_square(p in polygon_strategy(), n in 1i64..20, d in 1i64..20) {
        let r = rat(n, d);
        let q = p.homothety(&Point::origin(), &r).unwrap();
        prop_assert_eq!(q.area(), &r * &r * p.area());
    }

    #[test]
    fn intersection_is_contained_and_small(a in polygon_strategy(), b in polygon_strategy()) {
        let c = a.intersect(&b);
        prop_assert!(c.area() <= a.area());
        prop_assert!(c.area() <= b.area());
        for v in c.vertices() {
            prop_assert!(a.contains_point(v));
            prop_assert!(b.contains_point(v));
        }
    }

    #[test]
    fn union_between_max_and_sum(a in polygon_strategy(), b in polygon_strategy()) {
        let u = union_measure(&[a.clone(), b.clone()]);
        let (pa, pb) = (a.area(), b.area());
        prop_assert!(u <= &pa + &pb);
        prop_assert!(u >= pa.clone().max(pb));
    }

    #[test]
    fn inclusion_exclusion_two_parts(a in polygon_strategy(), b in polygon_strategy()) {
        let u = union_measure(&[a.clone(), b.clone()]);
        prop_assert_eq!(u, a.area() + b.area() - a.intersect(&b).area());
    }

    #[test]
    fn tau_monotone_in_truncation(t in decreasing_sequence()) {
        let mut prev: Option<Scalar> = None;
        for cap in 3..=t.len() {
            let est = tau_truncated(&t, cap).unwrap();
            prop_assert!(est.value >= int(2));
            if let Some(p) = &prev {
                prop_assert!(&est.value >= p);
            }
            prev = Some(est.value);
        }
    }

    #[test]
    fn classification_consistent_under_integer_scaling(
        an in 1i64..8, ad in 1i64..4, bn in 1i64..6, bd in 1i64..4, l in 1i64..4
    ) {
        // keep l * b small enough that pi/(4 k^{lb}) stays above the
        // snap resolution over the witness range
        let (a, b) = (rat(an, ad), rat(bn, bd));
        let base = classify_ab_with(&a, &b, 8).unwrap();
        let scaled = classify_ab_with(&(int(l) * &a), &(int(l) * &b), 8).unwrap();
        match base {
            Classification::Good { .. } => prop_assert!(scaled.is_good()),
            _ => prop_assert!(!scaled.is_good()),
        }
    }

    #[test]
    fn eta_is_capped_quarter_and_positive(n in 1i64..100, d in 1i64..100) {
        let e = rat(n, d);
        let eta = eta_of(&e);
        prop_assert!(eta.is_positive());
        prop_assert!(eta <= rat(1, 4));
        prop_assert_eq!(eta_of(&e.recip()) , rat(1,4).min(e / int(4)));
    }

    #[test]
    fn snap_stays_close_and_bounded(x in scalar_strategy()) {
        let s = snap(&x, 1 << 20);
        prop_assert!((s.clone() - &x).abs() <= rat(1, 1 << 20));
        prop_assert!(s.denom() <= &num::BigInt::from(1u64 << 20));
    }

    #[test]
    fn empty_union_is_zero(_x in 0u8..1) {
        prop_assert!(union_measure(&[]).is_zero());
    }
}
