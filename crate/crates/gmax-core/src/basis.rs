//! Basis families: paired orientation/eccentricity sequences, the thin
//! triangles they generate, rational rectangle realizations with their
//! axis-parallel covers and 1/16 sandwich, and the good/bad operator
//! classifier with its witness parameters.

use crate::error::BasisError;
use crate::geom::{ConvexPolygon, Point, Vec2};
use crate::scalar::{int, rat, Scalar};
use crate::seq::{eval_sequence, eval_sequence_raw, ScaleFactor, SequenceSpec};
use num::{One, Signed};

/// Default generator range used by the classifier when producing
/// witness constants.
pub const DEFAULT_RANGE_MAX: u64 = 64;

#[derive(Clone, Debug)]
pub struct BasisSpec {
    pub t: SequenceSpec,
    pub e: SequenceSpec,
    /// When present, the family promises e_k < mu0 (t_k - t_{k+1}).
    pub mu0: Option<Scalar>,
    /// When present, the family promises t_k <= c e_k.
    pub c: Option<Scalar>,
}

/// The basis with eccentricity 1/n^a and orientation tangent snapped
/// from pi/(4 n^b), over generator indices k_min..=k_max.
pub fn ab_basis(a: &Scalar, b: &Scalar, k_min: u64, k_max: u64) -> BasisSpec {
    BasisSpec {
        t: SequenceSpec::power_law(b.clone(), ScaleFactor::QuarterPi, k_min, k_max),
        e: SequenceSpec::power_law(a.clone(), ScaleFactor::Rational(Scalar::one()), k_min, k_max),
        mu0: None,
        c: None,
    }
}

/// Thin triangles of a family: delta_k spans tangents [t_{k+1}, t_k]
/// over the unit horizontal interval, and the basis triangle for index k
/// has the short vertical side e_k on top of tangent t_k.
#[derive(Clone, Debug)]
pub struct TriangleFamily {
    pub tvals: Vec<Scalar>,
    pub evals: Vec<Scalar>,
    /// deltas[k] has vertices O, (1, t_k), (1, t_{k+1}); len = tvals.len() - 1
    pub deltas: Vec<ConvexPolygon>,
    /// basis_triangles[k] has vertices O, (1, t_k), (1, t_k + e_k); same len as tvals
    pub basis_triangles: Vec<ConvexPolygon>,
}

pub fn delta_triangle(t_hi: &Scalar, t_lo: &Scalar) -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Point::origin(),
        Point::new(int(1), t_hi.clone()),
        Point::new(int(1), t_lo.clone()),
    ])
}

pub fn basis_triangle(t: &Scalar, e: &Scalar) -> ConvexPolygon {
    ConvexPolygon::new(vec![
        Point::origin(),
        Point::new(int(1), t.clone()),
        Point::new(int(1), t + e),
    ])
}

pub fn build_triangle_family(spec: &BasisSpec) -> Result<TriangleFamily, BasisError> {
    let tvals = eval_sequence(&spec.t)?.values;
    let evals = eval_sequence_raw(&spec.e)?.values;
    if evals.len() != tvals.len() {
        return Err(BasisError::Sequence(
            crate::error::SequenceError::InvalidSpec(format!(
                "orientation and eccentricity ranges differ: {} vs {} terms",
                tvals.len(),
                evals.len()
            )),
        ));
    }
    if let Some(c) = &spec.c {
        for (k, (t, e)) in tvals.iter().zip(&evals).enumerate() {
            let ce = c * e;
            if t > &ce {
                return Err(BasisError::DominationViolated {
                    k,
                    t: t.to_string(),
                    ce: ce.to_string(),
                });
            }
        }
    }
    if let Some(mu0) = &spec.mu0 {
        for k in 0..tvals.len() - 1 {
            if &evals[k] >= &(mu0 * (&tvals[k] - &tvals[k + 1])) {
                return Err(BasisError::GapHypothesisViolated { k });
            }
        }
    }
    let deltas = tvals
        .windows(2)
        .map(|w| delta_triangle(&w[0], &w[1]))
        .collect();
    let basis_triangles = tvals
        .iter()
        .zip(&evals)
        .map(|(t, e)| basis_triangle(t, e))
        .collect();
    Ok(TriangleFamily {
        tvals,
        evals,
        deltas,
        basis_triangles,
    })
}

/// A rational-vertex rectangle with orientation tangent t and
/// eccentricity exactly e: sides along u = (1, t) and e-scaled normal
/// w = e (-t, 1), so short/long = e while every vertex stays rational.
#[derive(Clone, Debug)]
pub struct RectangleGenerator {
    pub index: u64,
    pub tangent: Scalar,
    pub eccentricity: Scalar,
    pub rect: ConvexPolygon,
}

pub fn oriented_rectangle(t: &Scalar, e: &Scalar) -> ConvexPolygon {
    let u = (int(1), t.clone());
    let w = (-(e * t), e.clone());
    ConvexPolygon::new(vec![
        Point::origin(),
        Point::new(u.0.clone(), u.1.clone()),
        Point::new(&u.0 + &w.0, &u.1 + &w.1),
        Point::new(w.0, w.1),
    ])
}

pub fn rectangle_generator(spec: &BasisSpec, index: u64) -> Result<RectangleGenerator, BasisError> {
    if index < spec.t.k_min || index > spec.t.k_max {
        return Err(BasisError::ParameterOutOfRange);
    }
    let pos = (index - spec.t.k_min) as usize;
    let t = eval_sequence(&spec.t)?.values[pos].clone();
    let e = eval_sequence_raw(&spec.e)?.values[pos].clone();
    if !t.is_positive() || t > Scalar::one() || !e.is_positive() || e > Scalar::one() {
        return Err(BasisError::ParameterOutOfRange);
    }
    Ok(RectangleGenerator {
        index,
        tangent: t.clone(),
        eccentricity: e.clone(),
        rect: oriented_rectangle(&t, &e),
    })
}

/// Axis-parallel cover: the bounding box of R, with the area inflation
/// certified against 8(1+C).
pub fn axis_cover(r: &ConvexPolygon, c: &Scalar) -> Result<ConvexPolygon, BasisError> {
    let (lo, hi) = r
        .bounding_box()
        .ok_or(BasisError::ContainmentFailed("empty rectangle"))?;
    let p = ConvexPolygon::new(vec![
        Point::new(lo.x.clone(), lo.y.clone()),
        Point::new(hi.x.clone(), lo.y.clone()),
        Point::new(hi.x.clone(), hi.y.clone()),
        Point::new(lo.x.clone(), hi.y.clone()),
    ]);
    let bound = int(8) * (int(1) + c) * r.area();
    if p.area() > bound {
        return Err(BasisError::CoverBoundExceeded {
            ratio: (p.area() / r.area()).to_string(),
            bound: (int(8) * (int(1) + c)).to_string(),
        });
    }
    Ok(p)
}

/// Two-sided rectangle/triangle comparison for a basis triangle with
/// tangent t and vertical side e: `outer` is the oriented rectangle
/// scaled by h = 1 + et/(1+t^2) so it circumscribes the triangle, and
/// `inner` = shift + (1/16) outer sits inside the triangle. Both
/// containments are verified vertex-by-vertex with exact predicates.
#[derive(Clone, Debug)]
pub struct Sandwich {
    pub outer: ConvexPolygon,
    pub shift: Vec2,
    pub inner: ConvexPolygon,
}

pub fn rect_triangle_sandwich(t: &Scalar, e: &Scalar) -> Result<Sandwich, BasisError> {
    if !t.is_positive() || t > &Scalar::one() || !e.is_positive() || e > &Scalar::one() {
        return Err(BasisError::ParameterOutOfRange);
    }
    let tri = basis_triangle(t, e);
    let h = int(1) + e * t / (int(1) + t * t);
    let outer = oriented_rectangle(t, e)
        .homothety(&Point::origin(), &h)
        .expect("h > 0");
    for v in tri.vertices() {
        if !outer.contains_point(v) {
            return Err(BasisError::ContainmentFailed(
                "triangle vertex outside scaled rectangle",
            ));
        }
    }
    let shift = Vec2::new(rat(3, 4), rat(3, 4) * t);
    let inner = outer
        .homothety(&Point::origin(), &rat(1, 16))
        .expect("positive ratio")
        .translate(&shift);
    for v in inner.vertices() {
        if !tri.contains_point(v) {
            return Err(BasisError::ContainmentFailed(
                "shifted 1/16 rectangle vertex outside triangle",
            ));
        }
    }
    Ok(Sandwich {
        outer,
        shift,
        inner,
    })
}

/// Trichotomy verdict for the operator with exponents (a, b), with the
/// witness parameter the corresponding proof needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// a <= b: domination constant c with t_k <= c e_k over the witness
    /// range. `boundary` flags the edge case a = b.
    Good { c: Scalar, boundary: bool },
    /// a >= b + 1: direct regime; mu0 strictly dominates e_k / gap_k
    /// over the witness range.
    BadDirect { mu0: Scalar },
    /// b < a < b + 1: pass to the sub-basis with exponents (ell0 a,
    /// ell0 b), which lands in the direct regime.
    BadSubsequence {
        ell0: u64,
        child_a: Scalar,
        child_b: Scalar,
    },
}

impl Classification {
    pub fn is_good(&self) -> bool {
        matches!(self, Classification::Good { .. })
    }
}

/// Smallest positive integer l with l (a - b) > 1.
pub fn ell0(a: &Scalar, b: &Scalar) -> Result<u64, BasisError> {
    let d = a - b;
    if !d.is_positive() {
        return Err(BasisError::ParameterOutOfRange);
    }
    let inv = d.recip();
    let fl: u64 = inv
        .floor()
        .numer()
        .try_into()
        .map_err(|_| BasisError::ParameterOutOfRange)?;
    Ok(fl + 1)
}

pub fn classify_ab(a: &Scalar, b: &Scalar) -> Result<Classification, BasisError> {
    classify_ab_with(a, b, DEFAULT_RANGE_MAX)
}

pub fn classify_ab_with(
    a: &Scalar,
    b: &Scalar,
    range_max: u64,
) -> Result<Classification, BasisError> {
    if !a.is_positive() {
        return Err(BasisError::NonPositiveExponent(a.to_string()));
    }
    if !b.is_positive() {
        return Err(BasisError::NonPositiveExponent(b.to_string()));
    }
    if a <= b {
        // witness constant: worst ratio t_k / e_k over the range; with
        // a <= b the ratio is bounded (the range maximum certifies the
        // sampled generators, which is what downstream checks consume)
        let fam = build_triangle_family(&ab_basis(a, b, 1, range_max))?;
        let c = fam
            .tvals
            .iter()
            .zip(&fam.evals)
            .map(|(t, e)| t / e)
            .max()
            .expect("nonempty range");
        return Ok(Classification::Good {
            c,
            boundary: a == b,
        });
    }
    if a >= &(b + int(1)) {
        let fam = build_triangle_family(&ab_basis(a, b, 1, range_max))?;
        let worst = (0..fam.tvals.len() - 1)
            .map(|k| &fam.evals[k] / (&fam.tvals[k] - &fam.tvals[k + 1]))
            .max()
            .expect("range has at least two terms");
        return Ok(Classification::BadDirect { mu0: int(2) * worst });
    }
    let l = ell0(a, b)?;
    Ok(Classification::BadSubsequence {
        ell0: l,
        child_a: int(l as i64) * a,
        child_b: int(l as i64) * b,
    })
}

/// The sub-basis of B_{a,b} whose generator pairs are those of
/// B_{la, lb}: index m of the child corresponds to index m^l of the
/// parent.
pub fn subsequence_basis(
    a: &Scalar,
    b: &Scalar,
    l: u64,
    k_min: u64,
    k_max: u64,
) -> Result<BasisSpec, BasisError> {
    if l == 0 {
        return Err(BasisError::ZeroSubsequenceFactor);
    }
    let li = int(l as i64);
    Ok(ab_basis(&(&li * a), &(li * b), k_min, k_max))
}

/// Exact eccentricity of an `oriented_rectangle` output: ratio of the
/// shorter to the longer side, squared lengths compared exactly.
pub fn rectangle_eccentricity(rect: &ConvexPolygon) -> Result<Scalar, BasisError> {
    let vs = rect.vertices();
    if vs.len() != 4 {
        return Err(BasisError::ParameterOutOfRange);
    }
    let side = |i: usize, j: usize| -> Scalar {
        let dx = &vs[j].x - &vs[i].x;
        let dy = &vs[j].y - &vs[i].y;
        &dx * &dx + &dy * &dy
    };
    let s0 = side(0, 1);
    let s1 = side(1, 2);
    let (short2, long2) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
    crate::scalar::exact_root(&(short2 / long2), 2).ok_or(BasisError::ParameterOutOfRange)
}
