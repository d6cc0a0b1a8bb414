//! Exact area of a union of "fan strips": regions of the form
//! { (x, y) : 0 <= x <= 1, a_k + lo_k * x <= y <= a_k + hi_k * x }.
//!
//! Every shifted basis triangle in a Perron tree has this shape (apex at
//! (0, a_k), base on the line x = 1), so the tree's union measure reduces
//! to integrating the length of a union of intervals whose endpoints move
//! along straight lines. The cross-section length is piecewise affine in
//! x with breakpoints only where two endpoint lines cross, and at such a
//! crossing the length is continuous. We therefore sweep x from 0 to 1,
//! keep the 2m endpoint lines in sorted order, and maintain the affine
//! section length A + B*x incrementally: each crossing event swaps a
//! contiguous block of concurrent lines and touches only the adjacent
//! terms of A and B. Total work is O(m^2 log m) exact-rational operations
//! instead of the O(m^3) of the generic slab sweep, which matters for
//! trees with hundreds of triangles.

use crate::exec;
use crate::scalar::{rat, Scalar};
use num::{One, Zero};

/// One strip: for x in [0, 1], the vertical section is
/// [intercept + slope_lo * x, intercept + slope_hi * x].
#[derive(Clone, Debug)]
pub struct FanStrip {
    pub intercept: Scalar,
    pub slope_lo: Scalar,
    pub slope_hi: Scalar,
}

struct Line {
    a: Scalar,
    b: Scalar,
    w: i64, // +1 lower endpoint, -1 upper endpoint
}

/// Sum a list of rationals pairwise so denominators stay balanced.
fn balanced_sum(mut v: Vec<Scalar>) -> Scalar {
    if v.is_empty() {
        return Scalar::zero();
    }
    while v.len() > 1 {
        v = v
            .chunks(2)
            .map(|c| {
                if c.len() == 2 {
                    &c[0] + &c[1]
                } else {
                    c[0].clone()
                }
            })
            .collect();
    }
    v.pop().unwrap()
}

/// Exact Lebesgue measure of the union of the strips over x in [0, 1].
pub fn fan_union_measure(strips: &[FanStrip]) -> Scalar {
    let mut lines: Vec<Line> = Vec::with_capacity(2 * strips.len());
    for s in strips {
        if s.slope_lo >= s.slope_hi {
            // degenerate or inverted strip: measure zero, skip
            continue;
        }
        lines.push(Line {
            a: s.intercept.clone(),
            b: s.slope_lo.clone(),
            w: 1,
        });
        lines.push(Line {
            a: s.intercept.clone(),
            b: s.slope_hi.clone(),
            w: -1,
        });
    }
    let n = lines.len();
    if n == 0 {
        return Scalar::zero();
    }

    // Order valid for all sufficiently small x > 0: by value at 0, then by
    // slope; lower endpoints before upper ones on exact ties so transient
    // coverage never dips negative across a zero-length gap.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        lines[i]
            .a
            .cmp(&lines[j].a)
            .then(lines[i].b.cmp(&lines[j].b))
            .then(lines[j].w.cmp(&lines[i].w))
    });
    let mut pos = vec![0usize; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }

    // cov[p] = coverage of the gap between sorted positions p and p+1.
    let mut cov = vec![0i64; n];
    let mut run = 0i64;
    for p in 0..n {
        run += lines[order[p]].w;
        cov[p] = run;
    }

    // Section length L(x) = A + B*x, summing (y_{p+1} - y_p) over covered gaps.
    let mut aa = Scalar::zero();
    let mut bb = Scalar::zero();
    for p in 0..n - 1 {
        if cov[p] > 0 {
            aa += &lines[order[p + 1]].a - &lines[order[p]].a;
            bb += &lines[order[p + 1]].b - &lines[order[p]].b;
        }
    }

    // All pairwise crossings strictly inside (0, 1).
    let idx: Vec<usize> = (0..n).collect();
    let one = Scalar::one();
    let mut events: Vec<(Scalar, usize, usize)> = exec::pmap(idx, |i| {
        let mut local = Vec::new();
        for j in (i + 1)..n {
            if lines[i].b == lines[j].b {
                continue;
            }
            let x = (&lines[j].a - &lines[i].a) / (&lines[i].b - &lines[j].b);
            if x > Scalar::zero() && x < one {
                local.push((x, i, j));
            }
        }
        local
    })
    .into_iter()
    .flatten()
    .collect();
    events.sort_by(|u, v| u.0.cmp(&v.0));

    let mut terms: Vec<Scalar> = Vec::with_capacity(events.len() + 1);
    let mut prev_x = Scalar::zero();
    let half = rat(1, 2);

    let mut e = 0usize;
    while e < events.len() {
        let x = events[e].0.clone();
        // accumulate the slab [prev_x, x]; L is affine here
        terms.push(&aa * (&x - &prev_x) + &bb * &half * (&x * &x - &prev_x * &prev_x));

        // all lines involved in events at this x
        let mut involved: Vec<usize> = Vec::new();
        while e < events.len() && events[e].0 == x {
            involved.push(events[e].1);
            involved.push(events[e].2);
            e += 1;
        }
        let mut positions: Vec<usize> = involved.iter().map(|&i| pos[i]).collect();
        positions.sort_unstable();
        positions.dedup();

        // Lines concurrent at one point occupy contiguous positions; find
        // maximal runs with equal y at x and reverse each one.
        let mut s = 0usize;
        while s < positions.len() {
            let mut t = s;
            while t + 1 < positions.len() && positions[t + 1] == positions[t] + 1 {
                let i = order[positions[t]];
                let j = order[positions[t + 1]];
                if &lines[i].a + &lines[i].b * &x == &lines[j].a + &lines[j].b * &x {
                    t += 1;
                } else {
                    break;
                }
            }
            if t > s {
                let p = positions[s];
                let q = positions[t];
                // drop the affected gap terms
                let g_lo = p.saturating_sub(1);
                let g_hi = if q < n - 1 { q } else { q - 1 };
                for g in g_lo..=g_hi {
                    if cov[g] > 0 {
                        aa -= &lines[order[g + 1]].a - &lines[order[g]].a;
                        bb -= &lines[order[g + 1]].b - &lines[order[g]].b;
                    }
                }
                order[p..=q].reverse();
                for (off, &i) in order[p..=q].iter().enumerate() {
                    pos[i] = p + off;
                }
                let mut run = if p == 0 { 0 } else { cov[p - 1] };
                for g in p..=q {
                    run += lines[order[g]].w;
                    cov[g] = run;
                }
                for g in g_lo..=g_hi {
                    if cov[g] > 0 {
                        aa += &lines[order[g + 1]].a - &lines[order[g]].a;
                        bb += &lines[order[g + 1]].b - &lines[order[g]].b;
                    }
                }
            }
            s = t + 1;
        }
        prev_x = x;
    }
    // final slab up to x = 1
    terms.push(&aa * (&one - &prev_x) + &bb * &half * (&one - &prev_x * &prev_x));
    balanced_sum(terms)
}
