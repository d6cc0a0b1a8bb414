use super::point::{orient, Orientation, Point, Vec2};
use crate::error::GeometryError;
use crate::scalar::{rat, Scalar};
use num::{Signed, Zero};

/// A convex polygon in canonical form: vertices counter-clockwise,
/// strictly convex (collinear chains merged), starting at the
/// lexicographically smallest vertex. Degenerate input normalizes to the
/// distinguished empty polygon of area zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    verts: Vec<Point>,
}

impl ConvexPolygon {
    /// Canonicalize an arbitrary point set: convex hull with strict
    /// turns. Never fails; anything flat collapses to the empty polygon.
    pub fn new(mut points: Vec<Point>) -> ConvexPolygon {
        points.sort();
        points.dedup();
        if points.len() < 3 {
            return ConvexPolygon { verts: Vec::new() };
        }
        // Andrew monotone chain, strict orientation predicate
        let mut lower: Vec<Point> = Vec::new();
        for p in &points {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p)
                    != Orientation::CounterClockwise
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in points.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p)
                    != Orientation::CounterClockwise
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return ConvexPolygon { verts: Vec::new() };
        }
        ConvexPolygon { verts: lower }
    }

    pub fn empty() -> ConvexPolygon {
        ConvexPolygon { verts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    /// Exact area (shoelace). Zero for the empty polygon.
    pub fn area(&self) -> Scalar {
        let n = self.verts.len();
        if n < 3 {
            return Scalar::zero();
        }
        let mut twice = Scalar::zero();
        for i in 0..n {
            let p = &self.verts[i];
            let q = &self.verts[(i + 1) % n];
            twice += &p.x * &q.y - &q.x * &p.y;
        }
        twice / rat(2, 1)
    }

    pub fn translate(&self, v: &Vec2) -> ConvexPolygon {
        // canonical form is translation invariant except for the start
        // vertex; re-canonicalize to keep representations unique
        ConvexPolygon::new(self.verts.iter().map(|p| p.translated(v)).collect())
    }

    /// center + ratio * (vertex - center) for each vertex; ratio must be
    /// positive.
    pub fn homothety(&self, center: &Point, ratio: &Scalar) -> Result<ConvexPolygon, GeometryError> {
        if !ratio.is_positive() {
            return Err(GeometryError::NonPositiveRatio(ratio.to_string()));
        }
        Ok(ConvexPolygon::new(
            self.verts
                .iter()
                .map(|p| center.translated(&center.vector_to(p).scaled(ratio)))
                .collect(),
        ))
    }

    /// Closed containment.
    pub fn contains_point(&self, p: &Point) -> bool {
        let n = self.verts.len();
        if n < 3 {
            return false;
        }
        for i in 0..n {
            if orient(&self.verts[i], &self.verts[(i + 1) % n], p) == Orientation::Clockwise {
                return false;
            }
        }
        true
    }

    /// Exact convex intersection by Sutherland-Hodgman clipping against
    /// each edge of `other`.
    pub fn intersect(&self, other: &ConvexPolygon) -> ConvexPolygon {
        if self.is_empty() || other.is_empty() {
            return ConvexPolygon::empty();
        }
        let mut cur: Vec<Point> = self.verts.clone();
        let n = other.verts.len();
        for i in 0..n {
            let a = &other.verts[i];
            let b = &other.verts[(i + 1) % n];
            let mut next: Vec<Point> = Vec::with_capacity(cur.len() + 1);
            let m = cur.len();
            for j in 0..m {
                let s = &cur[j];
                let e = &cur[(j + 1) % m];
                let s_in = orient(a, b, s) != Orientation::Clockwise;
                let e_in = orient(a, b, e) != Orientation::Clockwise;
                if s_in {
                    next.push(s.clone());
                }
                if s_in != e_in {
                    next.push(line_segment_crossing(a, b, s, e));
                }
            }
            cur = next;
            if cur.is_empty() {
                return ConvexPolygon::empty();
            }
        }
        ConvexPolygon::new(cur)
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = self.verts.first()?;
        let (mut xmin, mut xmax) = (first.x.clone(), first.x.clone());
        let (mut ymin, mut ymax) = (first.y.clone(), first.y.clone());
        for p in &self.verts[1..] {
            if p.x < xmin {
                xmin = p.x.clone();
            }
            if p.x > xmax {
                xmax = p.x.clone();
            }
            if p.y < ymin {
                ymin = p.y.clone();
            }
            if p.y > ymax {
                ymax = p.y.clone();
            }
        }
        Some((Point::new(xmin, ymin), Point::new(xmax, ymax)))
    }

    /// The y-interval cut out by the vertical line at `x`, or None when
    /// the line misses the polygon.
    pub fn y_interval_at(&self, x: &Scalar) -> Option<(Scalar, Scalar)> {
        let n = self.verts.len();
        if n < 3 {
            return None;
        }
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        let mut push = |y: Scalar| {
            if lo.as_ref().is_none_or(|l| &y < l) {
                lo = Some(y.clone());
            }
            if hi.as_ref().is_none_or(|h| &y > h) {
                hi = Some(y);
            }
        };
        for i in 0..n {
            let p = &self.verts[i];
            let q = &self.verts[(i + 1) % n];
            let (xmin, xmax) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
            if x < xmin || x > xmax {
                continue;
            }
            if p.x == q.x {
                push(p.y.clone());
                push(q.y.clone());
            } else {
                let t = (x - &p.x) / (&q.x - &p.x);
                push(&p.y + t * (&q.y - &p.y));
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) => Some((l, h)),
            _ => None,
        }
    }

    pub fn centroid(&self) -> Option<Point> {
        if self.verts.is_empty() {
            return None;
        }
        let n = rat(self.verts.len() as i64, 1);
        let mut sx = Scalar::zero();
        let mut sy = Scalar::zero();
        for p in &self.verts {
            sx += &p.x;
            sy += &p.y;
        }
        Some(Point::new(sx / &n, sy / n))
    }
}

/// Intersection of segment (s, e) with the line through (a, b); the
/// caller guarantees s and e straddle the line.
fn line_segment_crossing(a: &Point, b: &Point, s: &Point, e: &Point) -> Point {
    let d1 = (&b.x - &a.x) * (&s.y - &a.y) - (&b.y - &a.y) * (&s.x - &a.x);
    let d2 = (&b.x - &a.x) * (&e.y - &a.y) - (&b.y - &a.y) * (&e.x - &a.x);
    let t = &d1 / (&d1 - &d2);
    s.lerp(e, &t)
}

/// A triangle with labeled vertices, used where the geometric lemmas
/// talk about A, B, C by name. Its canonical polygon is derived on
/// demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Triangle {
        Triangle { a, b, c }
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.a.clone(), self.b.clone(), self.c.clone()])
    }

    pub fn is_degenerate(&self) -> bool {
        orient(&self.a, &self.b, &self.c) == Orientation::Collinear
    }

    pub fn translate(&self, v: &Vec2) -> Triangle {
        Triangle::new(
            self.a.translated(v),
            self.b.translated(v),
            self.c.translated(v),
        )
    }

    /// Delta_2 = B + (Delta - A) / 2.
    pub fn delta2(&self) -> Triangle {
        let half = rat(1, 2);
        let shift = |p: &Point| {
            self.b
                .translated(&self.a.vector_to(p).scaled(&half))
        };
        Triangle::new(shift(&self.a), shift(&self.b), shift(&self.c))
    }
}
