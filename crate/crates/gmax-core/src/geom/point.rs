use crate::scalar::{format_scalar, Scalar};
use num::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

/// Displacement vector; kept distinct from `Point` so translations read
/// as point + vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn translated(&self, v: &Vec2) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn vector_to(&self, other: &Point) -> Vec2 {
        Vec2::new(&other.x - &self.x, &other.y - &self.y)
    }

    /// self + ratio * (self -> other)
    pub fn lerp(&self, other: &Point, ratio: &Scalar) -> Point {
        Point::new(
            &self.x + ratio * (&other.x - &self.x),
            &self.y + ratio * (&other.y - &self.y),
        )
    }
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::new(Scalar::zero(), Scalar::zero())
    }

    pub fn vertical(dy: Scalar) -> Self {
        Vec2::new(Scalar::zero(), dy)
    }

    pub fn scaled(&self, s: &Scalar) -> Vec2 {
        Vec2::new(&self.x * s, &self.y * s)
    }

    pub fn plus(&self, other: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn negated(&self) -> Vec2 {
        Vec2::new(-self.x.clone(), -self.y.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Exact orientation of the triple (a, b, c).
pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    let cross = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if cross.is_positive() {
        Orientation::CounterClockwise
    } else if cross.is_negative() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_scalar(&self.x), format_scalar(&self.y))
    }
}
