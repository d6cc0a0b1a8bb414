//! Lower bounds for the basis maximal operator applied to indicator
//! functions: per-point witnesses from the two geometric-estimate
//! lemmas, disjoint level-set certificates built on a Perron tree, the
//! resulting p-norm lower bounds, and an independent brute-force
//! enumeration oracle.

use crate::basis::TriangleFamily;
use crate::error::MaximalError;
use crate::geom::{union_measure, ConvexPolygon, Point, PolygonUnion, Triangle, Vec2};
use crate::perron::{half_triangle_witnesses, Anchor, PerronTree};
use crate::sampling::{rand_point_in_triangle, rng_from_seed};
use crate::scalar::{exact_root, int, rat, to_f64, Scalar};
use num::{One, Signed, Zero};

/// An element of the dilation-translation closure of the basis: the
/// polygon v + h T_k.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub generator: usize,
    pub dilation: Scalar,
    pub translation: Vec2,
    pub polygon: ConvexPolygon,
}

impl BasisElement {
    pub fn realize(
        generator: usize,
        base: &ConvexPolygon,
        dilation: Scalar,
        translation: Vec2,
    ) -> Result<BasisElement, MaximalError> {
        let polygon = base
            .homothety(&Point::origin(), &dilation)
            .map_err(|_| MaximalError::ZeroAreaElement)?
            .translate(&translation);
        if polygon.area().is_zero() {
            return Err(MaximalError::ZeroAreaElement);
        }
        Ok(BasisElement {
            generator,
            dilation,
            translation,
            polygon,
        })
    }
}

/// A certified point evaluation: `value` is the element's average of
/// the indicator, hence a lower bound for the maximal function at
/// `point`.
#[derive(Clone, Debug)]
pub struct MaxFnWitness {
    pub point: Point,
    pub element: BasisElement,
    pub value: Scalar,
}

/// Exact |E intersect X| / |E|. Overlapping parts of X are handled by
/// measuring the union of the clipped pieces.
pub fn average_over(element: &ConvexPolygon, x: &PolygonUnion) -> Result<Scalar, MaximalError> {
    let denom = element.area();
    if denom.is_zero() {
        return Err(MaximalError::ZeroAreaElement);
    }
    let pieces: Vec<ConvexPolygon> = x
        .parts()
        .iter()
        .map(|p| element.intersect(p))
        .filter(|q| !q.is_empty())
        .collect();
    Ok(union_measure(&pieces) / denom)
}

/// min(1/4, 1/(4e)) — the level threshold the thin-triangle witness
/// guarantees for eccentricity parameter e.
pub fn eta_of(e: &Scalar) -> Scalar {
    let quarter = rat(1, 4);
    let inv = rat(1, 4) / e;
    if inv < quarter {
        inv
    } else {
        quarter
    }
}

/// For each sample x in Delta_2 = B + (Delta - A)/2, the translate
/// (x - B) + Delta contains x and covers at least a quarter of its own
/// area inside Delta; the returned witnesses carry the exact values,
/// all >= 1/4.
pub fn lemma1_check(
    tri: &Triangle,
    samples: &[Point],
) -> Result<Vec<MaxFnWitness>, MaximalError> {
    if tri.is_degenerate() {
        return Err(MaximalError::DegenerateTriangle);
    }
    lemma_witnesses(tri, &tri.clone(), samples, &rat(1, 4), 0)
}

/// Same with the witness triangle T = A, B, B + e BC in place of Delta;
/// threshold eta(e).
pub fn lemma2_check(
    tri: &Triangle,
    e: &Scalar,
    samples: &[Point],
) -> Result<Vec<MaxFnWitness>, MaximalError> {
    if tri.is_degenerate() {
        return Err(MaximalError::DegenerateTriangle);
    }
    if !e.is_positive() {
        return Err(MaximalError::ZeroAreaElement);
    }
    let bc = tri.b.vector_to(&tri.c);
    let t = Triangle::new(
        tri.a.clone(),
        tri.b.clone(),
        tri.b.translated(&bc.scaled(e)),
    );
    lemma_witnesses(tri, &t, samples, &eta_of(e), 0)
}

fn lemma_witnesses(
    tri: &Triangle,
    witness_tri: &Triangle,
    samples: &[Point],
    threshold: &Scalar,
    generator: usize,
) -> Result<Vec<MaxFnWitness>, MaximalError> {
    let delta2 = tri.delta2().polygon();
    let delta_poly = PolygonUnion::new(vec![tri.polygon()]);
    let witness_poly = witness_tri.polygon();
    let mut out = Vec::with_capacity(samples.len());
    for (index, x) in samples.iter().enumerate() {
        if !delta2.contains_point(x) {
            return Err(MaximalError::SampleOutsideDelta2);
        }
        let shift = tri.b.vector_to(x);
        let elem_poly = witness_poly.translate(&shift);
        if !elem_poly.contains_point(x) {
            return Err(MaximalError::ElementMissesPoint);
        }
        let value = average_over(&elem_poly, &delta_poly)?;
        if &value < threshold {
            return Err(MaximalError::WitnessBelowThreshold {
                index,
                value: value.to_string(),
                threshold: threshold.to_string(),
            });
        }
        out.push(MaxFnWitness {
            point: x.clone(),
            element: BasisElement {
                generator,
                dilation: Scalar::one(),
                translation: shift,
                polygon: elem_poly,
            },
            value,
        });
    }
    Ok(out)
}

/// Pairwise-disjoint parts, each certified to sit inside the level set
/// {M 1_X > threshold} via exact per-sample witness checks (equality is
/// admitted at part corners, where the lemma bound is attained).
#[derive(Clone, Debug)]
pub struct LevelSetCertificate {
    pub threshold: Scalar,
    pub parts: Vec<ConvexPolygon>,
    pub certified_measure: Scalar,
    pub samples_checked: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CertificateConfig {
    /// Seeded interior samples per part, on top of the three corners
    /// and the centroid checked always.
    pub interior_samples: usize,
    pub seed: u64,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig {
            interior_samples: 5,
            seed: 17,
        }
    }
}

pub fn level_set_from_perron(
    tree: &PerronTree,
    family: &TriangleFamily,
    mu0: &Scalar,
) -> Result<LevelSetCertificate, MaximalError> {
    level_set_from_perron_with(tree, family, mu0, CertificateConfig::default())
}

/// Certificate over the tree's half-triangle parts. Part k is
/// (A_{k+1} + s_k) + Delta_k / 2; the witness element for a sample x is
/// the basis triangle sharing the part's anchored edge, translated to
/// x, and its average is measured against the single shifted triangle
/// s_k + Delta_k (a subset of X, so the value is a sound lower bound).
pub fn level_set_from_perron_with(
    tree: &PerronTree,
    family: &TriangleFamily,
    mu0: &Scalar,
    config: CertificateConfig,
) -> Result<LevelSetCertificate, MaximalError> {
    let m = tree.triangles.len();
    let start = tree.scale.start;
    // hypothesis: eccentricities stay below mu0 times the tangent gap
    for k in 0..m {
        let gap = &tree.tvals[k] - &tree.tvals[k + 1];
        if &family.evals[start + k] >= &(mu0 * &gap) {
            return Err(MaximalError::GapHypothesisViolated { k });
        }
    }
    let parts =
        half_triangle_witnesses(tree, Anchor::BaseBottom).map_err(|e| match e {
            crate::error::PerronError::DisjointnessViolated { k, l } if k == l => {
                MaximalError::PartAreaMismatch { k }
            }
            crate::error::PerronError::DisjointnessViolated { k, l } => {
                MaximalError::PartsOverlap { k, l }
            }
            _ => MaximalError::EmptyCertificate,
        })?;
    let threshold = eta_of(mu0);
    let mut rng = rng_from_seed(config.seed);
    let mut samples_checked = 0usize;
    for k in 0..m {
        let s = &tree.shifts.shifts[k];
        let anchor = Point::new(int(1), &tree.tvals[k + 1] + s);
        let shifted_delta = PolygonUnion::new(vec![tree.triangles[k].clone()]);
        // witness candidates: the basis triangles hanging off the
        // part's anchored edge (slice-relative indices k+1 and k)
        let candidates = [
            (start + k + 1, Point::new(int(1), tree.tvals[k + 1].clone())),
            (start + k, Point::new(int(1), tree.tvals[k].clone())),
        ];
        let part_tri = Triangle::new(
            anchor.clone(),
            Point::new(rat(3, 2), &anchor.y + &tree.tvals[k] / int(2)),
            Point::new(rat(3, 2), &anchor.y + &tree.tvals[k + 1] / int(2)),
        );
        let mut samples = vec![
            part_tri.a.clone(),
            part_tri.b.clone(),
            part_tri.c.clone(),
        ];
        if let Some(c) = parts[k].centroid() {
            samples.push(c);
        }
        for _ in 0..config.interior_samples {
            samples.push(rand_point_in_triangle(&mut rng, &part_tri));
        }
        for (index, x) in samples.iter().enumerate() {
            let mut ok = false;
            let mut best = Scalar::zero();
            for (gen, base_vertex) in &candidates {
                let Some(base) = family.basis_triangles.get(*gen) else {
                    continue;
                };
                // (x - (anchor + s_k)) + (s_k + T_gen) collapses to a
                // plain translate of the unshifted basis triangle
                let shift = Vec2::new(&x.x - &base_vertex.x, &x.y - &base_vertex.y);
                let elem = base.translate(&shift);
                if !elem.contains_point(x) {
                    continue;
                }
                let value = average_over(&elem, &shifted_delta)?;
                if value > best {
                    best = value;
                }
                if best >= threshold {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Err(MaximalError::WitnessBelowThreshold {
                    index,
                    value: best.to_string(),
                    threshold: threshold.to_string(),
                });
            }
            samples_checked += 1;
        }
    }
    let certified_measure: Scalar = parts.iter().map(|p| p.area()).sum();
    if certified_measure.is_zero() {
        return Err(MaximalError::EmptyCertificate);
    }
    debug_assert_eq!(certified_measure, &tree.area_sum / int(4));
    Ok(LevelSetCertificate {
        threshold,
        parts,
        certified_measure,
        samples_checked,
    })
}

/// Operator-norm lower bound eta * epsilon^{-1/p}, with
/// epsilon = |X| / certified level-set measure (the certified measure
/// is a quarter of the triangle mass, so this epsilon already carries
/// the factor 4 relative to the tree's compression bound).
#[derive(Clone, Debug)]
pub struct NormBound {
    pub p: Scalar,
    pub eta: Scalar,
    pub epsilon: Scalar,
    pub bound: f64,
    /// Exact value when epsilon^{1/p} is rational (integer p only).
    pub bound_exact: Option<Scalar>,
}

pub fn pnorm_lower_bound(
    cert: &LevelSetCertificate,
    x_area: &Scalar,
    p: &Scalar,
) -> Result<NormBound, MaximalError> {
    if cert.certified_measure.is_zero() {
        return Err(MaximalError::EmptyCertificate);
    }
    let epsilon = x_area / &cert.certified_measure;
    let eta = cert.threshold.clone();
    let bound = to_f64(&eta) * to_f64(&epsilon).powf(-1.0 / to_f64(p));
    let bound_exact = if p.denom() == &num::BigInt::one() {
        u32::try_from(p.numer().clone())
            .ok()
            .and_then(|pi| exact_root(&epsilon, pi))
            .map(|r| &eta / r)
    } else {
        None
    };
    Ok(NormBound {
        p: p.clone(),
        eta,
        epsilon,
        bound,
        bound_exact,
    })
}

/// Finite enumeration that approximates the defining supremum from
/// below: generator indices in a range, a dilation grid, and anchor
/// translations that pin each vertex of the scaled generator to x (so
/// every enumerated element contains x by construction).
#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub k_lo: usize,
    pub k_hi: usize,
    pub dilations: Vec<Scalar>,
}

pub fn brute_force_maxfn(
    x: &Point,
    big_x: &PolygonUnion,
    family: &TriangleFamily,
    config: &EnumerationConfig,
) -> Result<MaxFnWitness, MaximalError> {
    let mut best: Option<MaxFnWitness> = None;
    for k in config.k_lo..=config.k_hi.min(family.basis_triangles.len().saturating_sub(1)) {
        let base = &family.basis_triangles[k];
        for h in &config.dilations {
            if !h.is_positive() {
                continue;
            }
            let scaled = base
                .homothety(&Point::origin(), h)
                .map_err(|_| MaximalError::ZeroAreaElement)?;
            for q in scaled.vertices().to_vec() {
                let shift = Vec2::new(&x.x - &q.x, &x.y - &q.y);
                let polygon = scaled.translate(&shift);
                debug_assert!(polygon.contains_point(x));
                let value = average_over(&polygon, big_x)?;
                if best.as_ref().is_none_or(|b| value > b.value) {
                    best = Some(MaxFnWitness {
                        point: x.clone(),
                        element: BasisElement {
                            generator: k,
                            dilation: h.clone(),
                            translation: shift,
                            polygon,
                        },
                        value,
                    });
                }
            }
        }
    }
    best.ok_or(MaximalError::EmptyEnumeration)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_triangle_family, BasisSpec};
    use crate::perron::{build_perron_tree, PerronScale};
    use crate::sampling::rand_triangle;
    use crate::seq::SequenceSpec;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(int(x), int(y))
    }

    fn unit_tri() -> Triangle {
        Triangle::new(pt(0, 0), pt(1, 0), pt(1, 1))
    }

    #[test]
    fn average_trivial_cases() {
        let tri = unit_tri().polygon();
        let x = PolygonUnion::new(vec![tri.clone()]);
        assert_eq!(average_over(&tri, &x).unwrap(), int(1));
        let far = tri.translate(&Vec2::new(int(10), int(0)));
        assert_eq!(average_over(&far, &x).unwrap(), int(0));
        let shifted = tri.translate(&Vec2::new(rat(1, 2), rat(1, 2)));
        assert_eq!(average_over(&shifted, &x).unwrap(), rat(1, 4));
    }

    #[test]
    fn eta_branches() {
        assert_eq!(eta_of(&rat(1, 2)), rat(1, 4));
        assert_eq!(eta_of(&int(1)), rat(1, 4));
        assert_eq!(eta_of(&int(2)), rat(1, 8));
    }

    #[test]
    fn lemma1_anchor_and_corner() {
        let tri = unit_tri();
        // x = B: the witness is the triangle itself
        let w = lemma1_check(&tri, &[tri.b.clone()]).unwrap();
        assert_eq!(w[0].value, int(1));
        // extreme corner of Delta_2: exactly 1/4
        let corner = Point::new(rat(3, 2), rat(1, 2));
        let w = lemma1_check(&tri, &[corner]).unwrap();
        assert_eq!(w[0].value, rat(1, 4));
    }

    #[test]
    fn lemma1_rejects_outside_sample() {
        assert!(matches!(
            lemma1_check(&unit_tri(), &[pt(10, 10)]),
            Err(MaximalError::SampleOutsideDelta2)
        ));
    }

    #[test]
    fn lemma1_fuzz() {
        let mut rng = rng_from_seed(101);
        for _ in 0..100 {
            let tri = rand_triangle(&mut rng, &int(-2), &int(2));
            let d2 = tri.delta2();
            let samples: Vec<Point> = (0..10)
                .map(|_| rand_point_in_triangle(&mut rng, &d2))
                .collect();
            let ws = lemma1_check(&tri, &samples).unwrap();
            for w in ws {
                assert!(w.value >= rat(1, 4));
            }
        }
    }

    #[test]
    fn lemma2_reduces_to_lemma1_at_e_one() {
        let tri = unit_tri();
        let corner = Point::new(rat(3, 2), rat(1, 2));
        let w1 = lemma1_check(&tri, &[corner.clone()]).unwrap();
        let w2 = lemma2_check(&tri, &int(1), &[corner]).unwrap();
        assert_eq!(w1[0].value, w2[0].value);
    }

    #[test]
    fn lemma2_elongated_witness_exact() {
        // e = 2: at the worst corner the overlap is 1/8 = (1/(4e)) |T|
        let tri = unit_tri();
        let corner = Point::new(rat(3, 2), rat(1, 2));
        let w = lemma2_check(&tri, &int(2), &[corner]).unwrap();
        assert_eq!(w[0].element.polygon.area(), int(1));
        assert_eq!(w[0].value, rat(1, 8));
    }

    #[test]
    fn lemma2_short_branch_corner_equality() {
        // 0 < e <= 1: the corner value is exactly 1/4 of |T|
        let mut rng = rng_from_seed(103);
        for _ in 0..50 {
            let tri = rand_triangle(&mut rng, &int(-2), &int(2));
            let e = rat(1 + i64::from(rng_pick(&mut rng)), 8);
            let half = rat(1, 2);
            let corner = tri
                .b
                .translated(&tri.a.vector_to(&tri.c).scaled(&half));
            let w = lemma2_check(&tri, &e, &[corner]).unwrap();
            assert_eq!(w[0].value, rat(1, 4));
        }
    }

    fn rng_pick(rng: &mut rand_chacha::ChaCha8Rng) -> u8 {
        use rand::Rng;
        rng.gen_range(0..7)
    }

    fn harmonic_family_with_halved_gaps(terms: i64) -> TriangleFamily {
        let t: Vec<Scalar> = (1..=terms).map(|k| rat(1, k)).collect();
        let e: Vec<Scalar> = (0..t.len())
            .map(|k| {
                if k + 1 < t.len() {
                    (&t[k] - &t[k + 1]) / int(2)
                } else {
                    (&t[k] / int(2)).clone()
                }
            })
            .collect();
        build_triangle_family(&BasisSpec {
            t: SequenceSpec::explicit(t),
            e: SequenceSpec::explicit(e),
            mu0: Some(int(1)),
            c: None,
        })
        .unwrap()
    }

    #[test]
    fn certificate_from_harmonic_tree() {
        let fam = harmonic_family_with_halved_gaps(60);
        let tree = build_perron_tree(
            &fam,
            &PerronScale {
                alpha: rat(9, 10),
                n: 3,
                start: 0,
            },
        )
        .unwrap();
        let cert = level_set_from_perron(&tree, &fam, &int(1)).unwrap();
        assert_eq!(cert.threshold, rat(1, 4));
        assert_eq!(cert.certified_measure, &tree.area_sum / int(4));
        // the claim's inequality: |X| <= 4 epsilon |level set part|
        assert!(tree.area_x <= int(4) * &tree.epsilon_bound * &cert.certified_measure);
    }

    #[test]
    fn certificate_rejects_wide_triangles() {
        let fam = harmonic_family_with_halved_gaps(20);
        let tree = build_perron_tree(
            &fam,
            &PerronScale {
                alpha: rat(9, 10),
                n: 2,
                start: 0,
            },
        )
        .unwrap();
        // mu0 = 1/4 makes the gap hypothesis fail (e = gap/2 >= gap/4)
        assert!(matches!(
            level_set_from_perron(&tree, &fam, &rat(1, 4)),
            Err(MaximalError::GapHypothesisViolated { .. })
        ));
    }

    #[test]
    fn norm_bound_examples() {
        let cert = LevelSetCertificate {
            threshold: rat(1, 4),
            parts: vec![],
            certified_measure: int(1),
            samples_checked: 0,
        };
        // epsilon = 1: bound equals eta
        let nb = pnorm_lower_bound(&cert, &int(1), &int(2)).unwrap();
        assert_eq!(nb.bound_exact, Some(rat(1, 4)));
        // eta = 1/4, epsilon = 1/16, p = 2 -> exactly 1
        let nb = pnorm_lower_bound(&cert, &rat(1, 16), &int(2)).unwrap();
        assert_eq!(nb.bound_exact, Some(int(1)));
        assert!((nb.bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norm_bound_monotone_in_epsilon() {
        let cert = LevelSetCertificate {
            threshold: rat(1, 4),
            parts: vec![],
            certified_measure: int(1),
            samples_checked: 0,
        };
        let mut prev = f64::NEG_INFINITY;
        for den in [1i64, 4, 9, 16, 25] {
            let nb = pnorm_lower_bound(&cert, &rat(1, den), &int(2)).unwrap();
            assert!(nb.bound > prev);
            prev = nb.bound;
        }
    }

    #[test]
    fn brute_force_dominates_lemma_witness() {
        let fam = harmonic_family_with_halved_gaps(10);
        // X = first basis triangle; x in its Delta_2
        let tri_poly = fam.basis_triangles[0].clone();
        let vs = tri_poly.vertices().to_vec();
        let tri = Triangle::new(vs[0].clone(), vs[1].clone(), vs[2].clone());
        let x_set = PolygonUnion::new(vec![tri_poly]);
        let sample = tri.delta2().polygon().centroid().unwrap();
        let config = EnumerationConfig {
            k_lo: 0,
            k_hi: 3,
            dilations: vec![rat(1, 2), int(1), int(2)],
        };
        let w = brute_force_maxfn(&sample, &x_set, &fam, &config).unwrap();
        assert!(w.value >= rat(1, 4));
        // refinement monotonicity: a denser grid never loses
        let denser = EnumerationConfig {
            k_lo: 0,
            k_hi: 3,
            dilations: vec![rat(1, 4), rat(1, 2), rat(3, 4), int(1), rat(3, 2), int(2)],
        };
        let w2 = brute_force_maxfn(&sample, &x_set, &fam, &denser).unwrap();
        assert!(w2.value >= w.value);
    }

    #[test]
    fn brute_force_finds_full_average_inside() {
        let fam = harmonic_family_with_halved_gaps(10);
        let square = ConvexPolygon::new(vec![pt(-5, -5), pt(5, -5), pt(5, 5), pt(-5, 5)]);
        let x_set = PolygonUnion::new(vec![square]);
        let config = EnumerationConfig {
            k_lo: 0,
            k_hi: 2,
            dilations: vec![int(1)],
        };
        let w = brute_force_maxfn(&Point::origin(), &x_set, &fam, &config).unwrap();
        assert_eq!(w.value, int(1));
    }

    #[test]
    fn brute_force_requires_elements() {
        let fam = harmonic_family_with_halved_gaps(10);
        let x_set = PolygonUnion::new(vec![unit_tri().polygon()]);
        let config = EnumerationConfig {
            k_lo: 0,
            k_hi: 2,
            dilations: vec![],
        };
        assert!(matches!(
            brute_force_maxfn(&Point::origin(), &x_set, &fam, &config),
            Err(MaximalError::EmptyEnumeration)
        ));
    }
}
