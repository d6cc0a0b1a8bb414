//! Generalized Perron trees: vertical-shift assignments for a block of
//! 2^n consecutive thin triangles that compress the union's measure
//! while keeping the half-scale triangles pairwise disjoint. The
//! construction is bisection merging with a monotone repair sweep; its
//! correctness contract is the pair of exactly-checked postconditions
//! (area bound, half-triangle disjointness), not the provenance of the
//! shifts.

use crate::basis::TriangleFamily;
use crate::error::PerronError;
use crate::exec;
use crate::geom::{fan_union_measure, union_measure, ConvexPolygon, FanStrip, Point, PolygonUnion, Vec2};
use crate::scalar::{int, pow_i, rat, snap_f64, to_f64, Scalar};
use crate::seq::{tau_truncated, TauEstimate};
use num::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronScale {
    pub alpha: Scalar,
    pub n: u32,
    /// Zero-based offset into the family: the tree uses triangles
    /// start .. start + 2^n.
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAssignment {
    /// Vertical components; the shift vectors are (0, s_k).
    pub shifts: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct PerronTree {
    pub scale: PerronScale,
    /// The 2^n + 1 tangents bounding the chosen triangles.
    pub tvals: Vec<Scalar>,
    pub shifts: ShiftAssignment,
    /// s_k + delta_k, in slice order.
    pub triangles: Vec<ConvexPolygon>,
    pub area_x: Scalar,
    pub area_sum: Scalar,
    pub tau_slice: TauEstimate,
    pub epsilon_bound: Scalar,
}

impl PerronTree {
    pub fn union(&self) -> PolygonUnion {
        PolygonUnion::new(self.triangles.clone())
    }
}

/// alpha^{2n} + tau (1 - alpha), the measure-compression bound.
pub fn epsilon(alpha: &Scalar, n: u32, tau: &Scalar) -> Scalar {
    pow_i(alpha, 2 * n as i32) + tau * (Scalar::one() - alpha)
}

#[derive(Clone, Debug)]
pub struct AlphaChoice {
    pub alpha: Scalar,
    pub epsilon: Scalar,
}

/// Minimize epsilon(alpha, n, tau) over alpha in (0,1). The stationary
/// point (tau/2n)^{1/(2n-1)} is cross-checked against a ternary search
/// on the convex objective, then snapped to a modest denominator — the
/// objective is flat to second order at the minimum, so a coarse
/// rational alpha costs little and keeps downstream arithmetic small.
pub fn optimize_alpha(n: u32, tau: &Scalar) -> Result<AlphaChoice, PerronError> {
    let two_n = 2 * n;
    let tau_f = to_f64(tau);
    if Scalar::from(int(two_n as i64)) <= *tau {
        return Err(PerronError::NoInteriorMinimum {
            two_n,
            tau: tau.to_string(),
        });
    }
    let closed = (tau_f / f64::from(two_n)).powf(1.0 / f64::from(two_n - 1));
    let obj = |a: f64| a.powi(two_n as i32) + tau_f * (1.0 - a);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if obj(m1) < obj(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let searched = (lo + hi) / 2.0;
    debug_assert!(
        (searched - closed).abs() < 1e-6,
        "ternary search {searched} disagrees with closed form {closed}"
    );
    let mut alpha = snap_f64(closed, 1024);
    if alpha <= Scalar::zero() {
        alpha = rat(1, 1024);
    }
    if alpha >= Scalar::one() {
        alpha = rat(1023, 1024);
    }
    let eps = epsilon(&alpha, n, tau);
    Ok(AlphaChoice {
        alpha,
        epsilon: eps,
    })
}

/// The shift assignment: n bisection stages over blocks of consecutive
/// triangles. Each stage translates the upper block of a pair down so
/// the merged pair occupies an alpha-fraction of the combined tangent
/// span, closes inter-block gaps bottom-up, and a final sweep restores
/// weak monotonicity of the base bottoms p_k = t_{k+1} + s_k (the shape
/// the half-triangle disjointness argument needs).
pub fn perron_shifts(slice: &[Scalar], n: u32, alpha: &Scalar) -> Vec<Scalar> {
    let m = 1usize << n;
    debug_assert_eq!(slice.len(), m + 1);
    let mut shifts = vec![Scalar::zero(); m];
    // (member indices, low tangent, high tangent)
    let mut blocks: Vec<(Vec<usize>, Scalar, Scalar)> = (0..m)
        .map(|k| (vec![k], slice[k + 1].clone(), slice[k].clone()))
        .collect();
    let one_minus = Scalar::one() - alpha;
    for _ in 0..n {
        let mut merged: Vec<(Vec<usize>, Scalar, Scalar)> = Vec::with_capacity(blocks.len() / 2);
        for pair in blocks.chunks(2) {
            let (up, lo) = (&pair[0], &pair[1]);
            let s = &one_minus * (&up.2 - &lo.1);
            for &k in &up.0 {
                shifts[k] -= &s;
            }
            let mut members = up.0.clone();
            members.extend_from_slice(&lo.0);
            merged.push((members, lo.1.clone(), &up.2 - &s));
        }
        for i in (0..merged.len().saturating_sub(1)).rev() {
            let d = &merged[i].1 - &merged[i + 1].2;
            if !d.is_zero() {
                for &k in &merged[i].0 {
                    shifts[k] -= &d;
                }
                merged[i].1 -= &d;
                merged[i].2 -= &d;
            }
        }
        blocks = merged;
    }
    let mut p: Vec<Scalar> = (0..m).map(|k| &slice[k + 1] + &shifts[k]).collect();
    for k in (0..m.saturating_sub(1)).rev() {
        if p[k] < p[k + 1] {
            let d = &p[k + 1] - &p[k];
            shifts[k] += &d;
            p[k] = p[k + 1].clone();
        }
    }
    shifts
}

/// Exact pairwise-disjointness test for the base-bottom-anchored half
/// triangles: with p_k = t_{k+1} + s_k, the pair (k, l), k < l, is
/// disjoint in measure iff p_k >= p_l or p_l - p_k >= (t_k - t_{l+1})/2.
fn half_triangle_overlap_pair(slice: &[Scalar], p: &[Scalar], k: usize, l: usize) -> bool {
    if p[k] >= p[l] {
        return false;
    }
    &p[l] - &p[k] < (&slice[k] - &slice[l + 1]) / int(2)
}

pub fn build_perron_tree(
    family: &TriangleFamily,
    scale: &PerronScale,
) -> Result<PerronTree, PerronError> {
    if !scale.alpha.is_positive() || scale.alpha >= Scalar::one() {
        return Err(PerronError::AlphaOutOfRange(scale.alpha.to_string()));
    }
    let m = 1usize << scale.n;
    let end = scale.start + m + 1;
    if end > family.tvals.len() {
        return Err(PerronError::SliceOutOfRange {
            start: scale.start,
            end,
            len: family.tvals.len(),
        });
    }
    let slice: Vec<Scalar> = family.tvals[scale.start..end].to_vec();
    let tau_slice = tau_truncated(&slice, m + 1)?;
    let shifts = perron_shifts(&slice, scale.n, &scale.alpha);

    let p: Vec<Scalar> = (0..m).map(|k| &slice[k + 1] + &shifts[k]).collect();
    for k in 0..m {
        for l in k + 1..m {
            if half_triangle_overlap_pair(&slice, &p, k, l) {
                return Err(PerronError::DisjointnessViolated { k, l });
            }
        }
    }

    let triangles: Vec<ConvexPolygon> = (0..m)
        .map(|k| {
            crate::basis::delta_triangle(&slice[k], &slice[k + 1])
                .translate(&Vec2::vertical(shifts[k].clone()))
        })
        .collect();
    // Each shifted triangle is a fan strip (apex at x = 0, base at x = 1),
    // so use the specialized line sweep; it is exact and scales to the
    // hundreds of triangles in a depth-8 tree.
    let strips: Vec<FanStrip> = (0..m)
        .map(|k| FanStrip {
            intercept: shifts[k].clone(),
            slope_lo: slice[k + 1].clone(),
            slope_hi: slice[k].clone(),
        })
        .collect();
    let area_x = fan_union_measure(&strips);
    let area_sum = (&slice[0] - &slice[m]) / int(2);
    let epsilon_bound = epsilon(&scale.alpha, scale.n, &tau_slice.value);
    if area_x > &epsilon_bound * &area_sum {
        return Err(PerronError::BoundViolated {
            alpha: scale.alpha.to_string(),
            n: scale.n,
            start: scale.start,
            ratio: (&area_x / &area_sum).to_string(),
            bound: epsilon_bound.to_string(),
        });
    }
    Ok(PerronTree {
        scale: scale.clone(),
        tvals: slice,
        shifts: ShiftAssignment { shifts },
        triangles,
        area_x,
        area_sum,
        tau_slice,
        epsilon_bound,
    })
}

/// Which vertex of the shifted triangle anchors its half-scale copy.
/// The level-set argument needs the base-bottom anchor; the base-top
/// variant is reported alongside for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// (1, t_{k+1} + s_k), the lower base vertex.
    BaseBottom,
    /// (1, t_k + s_k), the upper base vertex.
    BaseTop,
}

/// The half-scale triangles (anchor + s_k) + delta_k / 2, verified
/// pairwise disjoint by exact polygon intersection, each of area
/// |delta_k| / 4.
pub fn half_triangle_witnesses(
    tree: &PerronTree,
    anchor: Anchor,
) -> Result<Vec<ConvexPolygon>, PerronError> {
    let m = tree.triangles.len();
    let half = rat(1, 2);
    let halves: Vec<ConvexPolygon> = (0..m)
        .map(|k| {
            let s = &tree.shifts.shifts[k];
            let ay = match anchor {
                Anchor::BaseBottom => &tree.tvals[k + 1] + s,
                Anchor::BaseTop => &tree.tvals[k] + s,
            };
            // (anchor vector) + (1/2)(s_k + delta_k - s_k translated):
            // scale the unshifted delta about O, then translate by the
            // anchor point of the shifted triangle
            crate::basis::delta_triangle(&tree.tvals[k], &tree.tvals[k + 1])
                .homothety(&Point::origin(), &half)
                .expect("positive ratio")
                .translate(&Vec2::new(int(1), ay))
        })
        .collect();
    for k in 0..m {
        let expect = tree.triangles[k].area() / int(4);
        if halves[k].area() != expect {
            return Err(PerronError::DisjointnessViolated { k, l: k });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|k| ((k + 1)..m).map(move |l| (k, l)))
        .collect();
    let bad = exec::pmap(pairs, |(k, l)| {
        if halves[k].intersect(&halves[l]).area().is_zero() {
            None
        } else {
            Some((k, l))
        }
    });
    if let Some((k, l)) = bad.into_iter().flatten().next() {
        return Err(PerronError::DisjointnessViolated { k, l });
    }
    Ok(halves)
}

#[derive(Clone, Debug)]
pub struct CandidateOutcome {
    pub start: usize,
    pub outcome: Result<(), String>,
}

#[derive(Debug)]
pub struct NSearch {
    pub tree: PerronTree,
    pub transcript: Vec<CandidateOutcome>,
}

/// Doubling offsets 0, 1, 2, 4, ... capped so the slice stays inside
/// the family.
pub fn default_start_candidates(family_len: usize, n: u32) -> Vec<usize> {
    let m = 1usize << n;
    let mut out = vec![0usize];
    let mut c = 1usize;
    while c + m + 1 <= family_len {
        out.push(c);
        c *= 2;
    }
    out
}

/// Smallest candidate start offset at which the construction meets both
/// postconditions; the full per-candidate transcript is retained.
pub fn choose_start(
    family: &TriangleFamily,
    alpha: &Scalar,
    n: u32,
    candidates: &[usize],
) -> Result<NSearch, PerronError> {
    let mut transcript = Vec::new();
    for &start in candidates {
        let scale = PerronScale {
            alpha: alpha.clone(),
            n,
            start,
        };
        match build_perron_tree(family, &scale) {
            Ok(tree) => {
                transcript.push(CandidateOutcome {
                    start,
                    outcome: Ok(()),
                });
                return Ok(NSearch { tree, transcript });
            }
            Err(e) => transcript.push(CandidateOutcome {
                start,
                outcome: Err(e.to_string()),
            }),
        }
    }
    Err(PerronError::AllCandidatesFailed {
        tried: transcript.len(),
        last: transcript
            .last()
            .and_then(|c| c.outcome.as_ref().err().cloned())
            .unwrap_or_else(|| "no candidates".into()),
    })
}

/// Like [`choose_start`], but re-derives the scaling factor for each
/// candidate window from that window's own tau functional (falling back
/// to 3/4 when the interior-minimum condition fails). Later windows of a
/// slowly varying sequence have smaller tau, so this finds deep trees
/// that a single family-wide alpha misses.
pub fn choose_start_adaptive(
    family: &TriangleFamily,
    n: u32,
    candidates: &[usize],
) -> Result<NSearch, PerronError> {
    let m = 1usize << n;
    let mut transcript = Vec::new();
    for &start in candidates {
        let end = start + m + 1;
        if end > family.tvals.len() {
            transcript.push(CandidateOutcome {
                start,
                outcome: Err(format!("slice {start}..{end} outside family")),
            });
            continue;
        }
        let alpha = match tau_truncated(&family.tvals[start..end], m + 1) {
            Ok(tau) => match optimize_alpha(n, &tau.value) {
                Ok(choice) => choice.alpha,
                Err(_) => rat(3, 4),
            },
            Err(e) => {
                transcript.push(CandidateOutcome {
                    start,
                    outcome: Err(e.to_string()),
                });
                continue;
            }
        };
        match build_perron_tree(family, &PerronScale { alpha, n, start }) {
            Ok(tree) => {
                transcript.push(CandidateOutcome {
                    start,
                    outcome: Ok(()),
                });
                return Ok(NSearch { tree, transcript });
            }
            Err(e) => transcript.push(CandidateOutcome {
                start,
                outcome: Err(e.to_string()),
            }),
        }
    }
    Err(PerronError::AllCandidatesFailed {
        tried: transcript.len(),
        last: transcript
            .last()
            .and_then(|c| c.outcome.as_ref().err().cloned())
            .unwrap_or_else(|| "no candidates".into()),
    })
}

/// For triangles from a geometric tangent sequence no shift assignment
/// compresses the union below half the unshifted fan: the largest
/// triangle alone is at least half of it. Returns true when the chain
/// |X| >= max_i |delta_i| >= (1/2)|union of unshifted delta_i| holds.
pub fn geometric_counterexample_check(
    family: &TriangleFamily,
    indices: &[usize],
    shifts: &[Scalar],
) -> Result<bool, PerronError> {
    if indices.is_empty() || indices.len() != shifts.len() {
        return Err(PerronError::SliceOutOfRange {
            start: 0,
            end: indices.len(),
            len: family.deltas.len(),
        });
    }
    let mut shifted = Vec::with_capacity(indices.len());
    let mut plain = Vec::with_capacity(indices.len());
    for (&i, s) in indices.iter().zip(shifts) {
        let d = family
            .deltas
            .get(i)
            .ok_or(PerronError::SliceOutOfRange {
                start: i,
                end: i + 1,
                len: family.deltas.len(),
            })?;
        plain.push(d.clone());
        shifted.push(d.translate(&Vec2::vertical(s.clone())));
    }
    let area_x = union_measure(&shifted);
    let biggest = plain.iter().map(|d| d.area()).max().expect("nonempty");
    let plain_union = union_measure(&plain);
    Ok(area_x >= biggest && int(2) * &biggest >= plain_union)
}
