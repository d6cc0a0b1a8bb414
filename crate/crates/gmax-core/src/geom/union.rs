//! Exact area of a union of convex polygons by a vertical slab sweep.
//!
//! Between consecutive breakpoints (vertex abscissae plus abscissae of
//! pairwise edge crossings) the union's vertical cross-section length is
//! an affine function of x, so the area over each slab is the exact
//! trapezoid (width) * (L(left) + L(right)) / 2. No tolerances anywhere.

use super::polygon::ConvexPolygon;
use crate::exec;
use crate::scalar::{rat, Scalar};
use num::Zero;

/// A union of convex polygons treated as a single measurable set.
#[derive(Clone, Debug)]
pub struct PolygonUnion {
    parts: Vec<ConvexPolygon>,
}

impl PolygonUnion {
    pub fn new(parts: Vec<ConvexPolygon>) -> PolygonUnion {
        PolygonUnion {
            parts: parts.into_iter().filter(|p| !p.is_empty()).collect(),
        }
    }

    pub fn parts(&self) -> &[ConvexPolygon] {
        &self.parts
    }

    pub fn measure(&self) -> Scalar {
        union_measure(&self.parts)
    }
}

type Edge = (Scalar, Scalar, Scalar, Scalar); // (x1, y1, x2, y2), x1 < x2

fn non_vertical_edges(polys: &[ConvexPolygon]) -> Vec<Edge> {
    let mut edges = Vec::new();
    for p in polys {
        let vs = p.vertices();
        let n = vs.len();
        for i in 0..n {
            let a = &vs[i];
            let b = &vs[(i + 1) % n];
            if a.x == b.x {
                continue;
            }
            if a.x < b.x {
                edges.push((a.x.clone(), a.y.clone(), b.x.clone(), b.y.clone()));
            } else {
                edges.push((b.x.clone(), b.y.clone(), a.x.clone(), a.y.clone()));
            }
        }
    }
    edges
}

/// x-coordinates where two non-vertical open segments cross, if the
/// crossing is strictly interior to both x-ranges. Crossings at shared
/// endpoints coincide with vertex breakpoints and need no extra entry.
fn crossing_x(e1: &Edge, e2: &Edge) -> Option<Scalar> {
    let (ref ax1, ref ay1, ref ax2, ref ay2) = *e1;
    let (ref bx1, ref by1, ref bx2, ref by2) = *e2;
    let lo = if ax1 > bx1 { ax1 } else { bx1 };
    let hi = if ax2 < bx2 { ax2 } else { bx2 };
    if lo >= hi {
        return None;
    }
    let s1 = (ay2 - ay1) / (ax2 - ax1);
    let s2 = (by2 - by1) / (bx2 - bx1);
    if s1 == s2 {
        return None;
    }
    // y1 + s1 (x - ax1) = by1 + s2 (x - bx1)
    let x = (by1 - ay1 + &s1 * ax1 - &s2 * bx1) / (&s1 - &s2);
    if &x > lo && &x < hi {
        Some(x)
    } else {
        None
    }
}

/// Total length of the union of closed intervals.
fn interval_union_length(mut iv: Vec<(Scalar, Scalar)>) -> Scalar {
    iv.sort();
    let mut total = Scalar::zero();
    let mut cur: Option<(Scalar, Scalar)> = None;
    for (lo, hi) in iv {
        match cur {
            None => cur = Some((lo, hi)),
            Some((clo, chi)) => {
                if lo <= chi {
                    cur = Some((clo, if hi > chi { hi } else { chi }));
                } else {
                    total += &chi - &clo;
                    cur = Some((lo, hi));
                }
            }
        }
    }
    if let Some((clo, chi)) = cur {
        total += chi - clo;
    }
    total
}

fn section_length(polys: &[ConvexPolygon], x: &Scalar) -> Scalar {
    interval_union_length(
        polys
            .iter()
            .filter_map(|p| p.y_interval_at(x))
            .collect(),
    )
}

fn breakpoints(polys: &[ConvexPolygon]) -> Vec<Scalar> {
    let mut xs: Vec<Scalar> = polys
        .iter()
        .flat_map(|p| p.vertices().iter().map(|v| v.x.clone()))
        .collect();
    let edges = non_vertical_edges(polys);
    let pairs: Vec<(usize, usize)> = (0..edges.len())
        .flat_map(|i| ((i + 1)..edges.len()).map(move |j| (i, j)))
        .collect();
    let crossings = exec::pmap(pairs, |(i, j)| crossing_x(&edges[i], &edges[j]));
    xs.extend(crossings.into_iter().flatten());
    xs.sort();
    xs.dedup();
    xs
}

fn measure_with<F>(polys: &[ConvexPolygon], map: F) -> Scalar
where
    F: Fn(Vec<usize>, &(dyn Fn(usize) -> Scalar + Sync)) -> Vec<Scalar>,
{
    let polys: Vec<ConvexPolygon> = polys.iter().filter(|p| !p.is_empty()).cloned().collect();
    if polys.is_empty() {
        return Scalar::zero();
    }
    let xs = breakpoints(&polys);
    if xs.len() < 2 {
        return Scalar::zero();
    }
    // L is affine on each open slab but jumps at vertical edges, so the
    // midpoint value (which equals the slab average) is the safe sample
    let lengths = map(
        (0..xs.len() - 1).collect(),
        &|i: usize| -> Scalar {
            let mid = (&xs[i] + &xs[i + 1]) / rat(2, 1);
            section_length(&polys, &mid)
        },
    );
    let mut total = Scalar::zero();
    for i in 0..xs.len() - 1 {
        total += (&xs[i + 1] - &xs[i]) * &lengths[i];
    }
    total
}

/// Exact Lebesgue measure of the union, parallelized over breakpoints
/// when the `parallel` feature is active.
pub fn union_measure(polys: &[ConvexPolygon]) -> Scalar {
    measure_with(polys, |idx, f| exec::pmap(idx, f))
}

/// Same computation forced onto one thread; benchmark baseline.
pub fn union_measure_serial(polys: &[ConvexPolygon]) -> Scalar {
    measure_with(polys, |idx, f| exec::smap(idx, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::{Point, Vec2};
    use crate::scalar::int;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(int(x), int(y))
    }

    fn square(x: i64, y: i64, side: i64) -> ConvexPolygon {
        ConvexPolygon::new(vec![
            pt(x, y),
            pt(x + side, y),
            pt(x + side, y + side),
            pt(x, y + side),
        ])
    }

    #[test]
    fn single_polygon_matches_area() {
        let tri = ConvexPolygon::new(vec![pt(0, 0), pt(3, 0), pt(3, 2)]);
        assert_eq!(union_measure(&[tri.clone()]), tri.area());
    }

    #[test]
    fn disjoint_parts_add() {
        let a = square(0, 0, 1);
        let b = square(5, 5, 2);
        assert_eq!(union_measure(&[a, b]), int(5));
    }

    #[test]
    fn overlap_subtracts_exactly() {
        // two unit squares overlapping in a 1/2 x 1 strip
        let a = square(0, 0, 1);
        let b = a.translate(&Vec2::new(rat(1, 2), int(0)));
        assert_eq!(union_measure(&[a, b]), rat(3, 2));
    }

    #[test]
    fn inclusion_exclusion_two_triangles() {
        let a = ConvexPolygon::new(vec![pt(0, 0), pt(2, 0), pt(2, 2)]);
        let b = a.translate(&Vec2::new(int(1), int(1)));
        let expect = a.area() + b.area() - a.intersect(&b).area();
        assert_eq!(union_measure(&[a, b]), expect);
    }

    #[test]
    fn crossing_edges_handled() {
        // X-shaped overlap of two slanted thin triangles
        let a = ConvexPolygon::new(vec![
            Point::new(int(0), int(0)),
            Point::new(int(4), int(2)),
            Point::new(int(4), rat(5, 2)),
        ]);
        let b = ConvexPolygon::new(vec![
            Point::new(int(0), int(2)),
            Point::new(int(4), int(0)),
            Point::new(int(4), rat(1, 2)),
        ]);
        let expect = a.area() + b.area() - a.intersect(&b).area();
        assert_eq!(union_measure(&[a.clone(), b.clone()]), expect);
        assert_eq!(union_measure_serial(&[a, b]), expect);
    }

    #[test]
    fn nested_polygon_contributes_nothing() {
        let outer = square(0, 0, 4);
        let inner = square(1, 1, 1);
        assert_eq!(union_measure(&[outer, inner]), int(16));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let polys: Vec<ConvexPolygon> = (0..6)
            .map(|k| {
                ConvexPolygon::new(vec![
                    Point::new(int(0), int(0)),
                    Point::new(int(1), rat(1, k + 1)),
                    Point::new(int(1), rat(1, k + 2)),
                ])
            })
            .collect();
        assert_eq!(union_measure(&polys), union_measure_serial(&polys));
    }
}
