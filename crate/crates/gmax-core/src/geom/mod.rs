//! Exact rational planar geometry: points, convex polygons, unions.

mod fan;
mod point;
mod polygon;
mod union;

pub use fan::{fan_union_measure, FanStrip};
pub use point::{orient, Orientation, Point, Vec2};
pub use polygon::{ConvexPolygon, Triangle};
pub use union::{union_measure, union_measure_serial, PolygonUnion};
