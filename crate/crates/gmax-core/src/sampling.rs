//! Deterministic rational sampling for fuzz campaigns: a seeded ChaCha8
//! stream produces exact rationals on a fixed dyadic grid, so every
//! campaign is reproducible bit-for-bit from its seed.

use crate::geom::{orient, Orientation, Point, Triangle};
use crate::scalar::{int, Scalar};
use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform rational in [lo, hi] with denominator dividing 2^16.
pub fn rand_scalar(rng: &mut ChaCha8Rng, lo: &Scalar, hi: &Scalar) -> Scalar {
    let grid: u32 = 1 << 16;
    let ticks: u32 = rng.gen_range(0..=grid);
    lo + (hi - lo) * Scalar::new(BigInt::from(ticks), BigInt::from(grid))
}

/// Non-degenerate triangle with vertices on the dyadic grid inside the
/// given box, relabeled counter-clockwise.
pub fn rand_triangle(rng: &mut ChaCha8Rng, lo: &Scalar, hi: &Scalar) -> Triangle {
    loop {
        let mut v = || Point::new(rand_scalar(rng, lo, hi), rand_scalar(rng, lo, hi));
        let (a, b, c) = (v(), v(), v());
        match orient(&a, &b, &c) {
            Orientation::Collinear => continue,
            Orientation::CounterClockwise => return Triangle::new(a, b, c),
            Orientation::Clockwise => return Triangle::new(a, c, b),
        }
    }
}

/// Uniform-ish rational point inside a triangle: barycentric weights on
/// the dyadic grid, folded into the lower half when they overflow.
pub fn rand_point_in_triangle(rng: &mut ChaCha8Rng, tri: &Triangle) -> Point {
    let u = rand_scalar(rng, &int(0), &int(1));
    let v = rand_scalar(rng, &int(0), &int(1));
    let (u, v) = if &u + &v > int(1) {
        (int(1) - u, int(1) - v)
    } else {
        (u, v)
    };
    let ab = tri.a.vector_to(&tri.b);
    let ac = tri.a.vector_to(&tri.c);
    tri.a.translated(&ab.scaled(&u).plus(&ac.scaled(&v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sampling_is_seed_deterministic() {
        let mut r1 = rng_from_seed(7);
        let mut r2 = rng_from_seed(7);
        for _ in 0..32 {
            assert_eq!(
                rand_scalar(&mut r1, &rat(-1, 2), &rat(1, 2)),
                rand_scalar(&mut r2, &rat(-1, 2), &rat(1, 2))
            );
        }
        let t1 = rand_triangle(&mut r1, &int(0), &int(1));
        let t2 = rand_triangle(&mut r2, &int(0), &int(1));
        assert_eq!(t1, t2);
    }

    #[test]
    fn samples_respect_bounds() {
        let mut rng = rng_from_seed(11);
        for _ in 0..100 {
            let x = rand_scalar(&mut rng, &rat(1, 3), &rat(2, 3));
            assert!(x >= rat(1, 3) && x <= rat(2, 3));
        }
    }

    #[test]
    fn triangle_points_are_inside() {
        let mut rng = rng_from_seed(13);
        for _ in 0..50 {
            let tri = rand_triangle(&mut rng, &int(-2), &int(2));
            let poly = tri.polygon();
            assert!(!poly.is_empty());
            for _ in 0..10 {
                let p = rand_point_in_triangle(&mut rng, &tri);
                assert!(poly.contains_point(&p));
            }
        }
    }
}
