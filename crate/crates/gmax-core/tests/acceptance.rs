//! Acceptance gate: each test implements one of the project's primary
//! criteria with exact (zero-tolerance) arithmetic and prints a single
//! pass line. Criteria for the phase diagram and byte determinism live
//! in the CLI crate's acceptance suite.

use gmax_core::basis::{
    ab_basis, axis_cover, build_triangle_family, rect_triangle_sandwich, rectangle_generator,
    BasisSpec, TriangleFamily,
};
use gmax_core::geom::{union_measure, ConvexPolygon, Point, PolygonUnion, Triangle, Vec2};
use gmax_core::maximal::{eta_of, lemma1_check, lemma2_check, pnorm_lower_bound, LevelSetCertificate};
use gmax_core::perron::{
    build_perron_tree, choose_start, choose_start_adaptive, default_start_candidates, epsilon,
    geometric_counterexample_check, half_triangle_witnesses, optimize_alpha, Anchor, AlphaChoice,
    PerronScale,
};
use gmax_core::sampling::{rand_point_in_triangle, rand_scalar, rand_triangle, rng_from_seed};
use gmax_core::scalar::{int, pow_i, rat, to_f64, Scalar};
use gmax_core::seq::{tau_truncated, SequenceSpec};
use num::{One, Signed, Zero};
use rand::Rng;

fn delta2_samples(
    rng: &mut rand_chacha::ChaCha8Rng,
    tri: &Triangle,
    count: usize,
) -> Vec<Point> {
    let d2 = tri.delta2();
    // always include the extreme corner x0 = B + AC/2, where the lemma
    // bounds are attained
    let half = rat(1, 2);
    let x0 = tri.b.translated(&tri.a.vector_to(&tri.c).scaled(&half));
    let mut samples = vec![x0, d2.a.clone(), d2.b.clone(), d2.c.clone()];
    while samples.len() < count {
        samples.push(rand_point_in_triangle(rng, &d2));
    }
    samples
}

#[test]
fn criterion_1_lemma1_campaign() {
    let mut rng = rng_from_seed(0xC1);
    let quarter = rat(1, 4);
    for _ in 0..1000 {
        let tri = rand_triangle(&mut rng, &int(-4), &int(4));
        let samples = delta2_samples(&mut rng, &tri, 50);
        let witnesses = lemma1_check(&tri, &samples).expect("lemma 1 witness failed");
        assert_eq!(witnesses.len(), 50);
        for w in &witnesses {
            assert!(w.value >= quarter);
        }
    }
    println!("ACCEPTANCE 1 lemma-1 suite (1000 triangles x 50 samples, exact >= 1/4): PASS");
}

#[test]
fn criterion_2_lemma2_campaign() {
    let mut rng = rng_from_seed(0xC2);
    let half = rat(1, 2);
    for e in [rat(1, 4), rat(1, 2), int(1), int(2), int(5)] {
        let eta = eta_of(&e);
        for _ in 0..200 {
            let tri = rand_triangle(&mut rng, &int(-4), &int(4));
            let samples = delta2_samples(&mut rng, &tri, 50);
            let witnesses = lemma2_check(&tri, &e, &samples).expect("lemma 2 witness failed");
            for w in &witnesses {
                assert!(w.value >= eta);
            }
            if e <= Scalar::one() {
                // short branch: the corner value is exactly 1/4 of |T|
                let x0 = tri.b.translated(&tri.a.vector_to(&tri.c).scaled(&half));
                let w = &lemma2_check(&tri, &e, &[x0]).unwrap()[0];
                assert_eq!(w.value, rat(1, 4));
            }
        }
    }
    println!("ACCEPTANCE 2 lemma-2 suite (1000 triangles x 50 samples x 5 eccentricities): PASS");
}

fn harmonic_family(terms: i64) -> TriangleFamily {
    let t: Vec<Scalar> = (1..=terms).map(|k| rat(1, k)).collect();
    family_from(t)
}

fn arithmetic_family(terms: i64) -> TriangleFamily {
    family_from((1..=terms).map(|k| int(1) - rat(k, terms + 1)).collect())
}

fn family_from(t: Vec<Scalar>) -> TriangleFamily {
    let e: Vec<Scalar> = (0..t.len())
        .map(|k| {
            if k + 1 < t.len() {
                (&t[k] - &t[k + 1]) / int(2)
            } else {
                &t[t.len() - 1] / int(2)
            }
        })
        .collect();
    build_triangle_family(&BasisSpec {
        t: SequenceSpec::explicit(t),
        e: SequenceSpec::explicit(e),
        mu0: None,
        c: None,
    })
    .unwrap()
}

fn alpha_for(n: u32, tau: &Scalar) -> AlphaChoice {
    optimize_alpha(n, tau).unwrap_or_else(|_| AlphaChoice {
        alpha: rat(3, 4),
        epsilon: epsilon(&rat(3, 4), n, tau),
    })
}

#[test]
fn criterion_3_proposition_bullets() {
    let cases: [(&str, TriangleFamily, Scalar); 2] = [
        ("harmonic", harmonic_family(1200), rat(10, 3)),
        ("arithmetic", arithmetic_family(600), int(2)),
    ];
    for (label, fam, _tau) in &cases {
        for n in 1..=8u32 {
            // scaling factor re-optimized from each candidate window's own
            // tau functional; deep harmonic windows need a later start
            let cands = default_start_candidates(fam.tvals.len(), n);
            let found = choose_start_adaptive(fam, n, &cands)
                .unwrap_or_else(|e| panic!("{label} n={n}: {e}"));
            let tree = found.tree;
            // bullet 1; for small trees also re-assert against an
            // independently recomputed union measure (generic slab sweep)
            if n <= 5 {
                assert_eq!(union_measure(&tree.triangles), tree.area_x);
            }
            assert!(&tree.area_x <= &(&tree.epsilon_bound * &tree.area_sum));
            // bullet 2 with the base-bottom anchor, via exact pairwise
            // polygon intersections
            let halves = half_triangle_witnesses(&tree, Anchor::BaseBottom)
                .unwrap_or_else(|e| panic!("{label} n={n}: {e}"));
            assert_eq!(halves.len(), 1 << n);
        }
    }
    println!("ACCEPTANCE 3 proposition bullets (harmonic + arithmetic, n=1..8, exact): PASS");
}

#[test]
fn criterion_4_epsilon_decay_and_norm_divergence() {
    // re-derive tau = 10/3 with the brute-force oracle at K = 256
    let t: Vec<Scalar> = (1..=256i64).map(|k| rat(1, k)).collect();
    let est = tau_truncated(&t, 256).unwrap();
    assert_eq!(est.value, rat(10, 3));

    let tau = est.value;
    let eta = rat(1, 4); // eta(mu0) with mu0 <= 1
    let mut prev_eps: Option<Scalar> = None;
    let mut prev_bound = f64::NEG_INFINITY;
    for n in 2..=10u32 {
        let choice = optimize_alpha(n, &tau).unwrap();
        if let Some(p) = &prev_eps {
            assert!(&choice.epsilon < p, "epsilon not strictly decreasing at n={n}");
        }
        // p = 2 norm bound eta * eps^{-1/2}: strictly increasing exactly
        // when epsilon strictly decreases (x -> x^{-1/2} monotone)
        let bound = to_f64(&eta) / to_f64(&choice.epsilon).sqrt();
        assert!(bound > prev_bound);
        prev_bound = bound;
        prev_eps = Some(choice.epsilon);
    }
    println!("ACCEPTANCE 4 epsilon decay n=2..10 at tau=10/3 (oracle K=256) + norm ladder: PASS");
}

#[test]
fn criterion_5_geometric_counterexample() {
    let fam = family_from((1..=12i64).map(|k| pow_i(&rat(1, 2), k as i32)).collect());
    let indices: Vec<usize> = (0..8).collect();
    let mut rng = rng_from_seed(0xC5);
    for _ in 0..1000 {
        let shifts: Vec<Scalar> = (0..8)
            .map(|_| rand_scalar(&mut rng, &int(-1), &int(1)))
            .collect();
        assert!(geometric_counterexample_check(&fam, &indices, &shifts).unwrap());
    }
    // the construction search cannot reach epsilon < 1/2 on this family
    for n in [1u32, 2, 3] {
        let choice = alpha_for(n, &rat(10, 3));
        let cands = default_start_candidates(fam.tvals.len(), n);
        let mut reached_small = false;
        for &start in &cands {
            if let Ok(tree) = build_perron_tree(
                &fam,
                &PerronScale {
                    alpha: choice.alpha.clone(),
                    n,
                    start,
                },
            ) {
                if int(2) * &tree.area_x < tree.area_sum {
                    reached_small = true;
                }
            }
        }
        assert!(!reached_small, "geometric family compressed below 1/2 at n={n}");
    }
    println!("ACCEPTANCE 5 geometric counterexample (1000 fuzzed shifts, exact; no eps<1/2): PASS");
}

#[test]
fn criterion_6_axis_cover() {
    for (a, b) in [
        (int(1), int(1)),
        (int(1), int(2)),
        (rat(1, 2), int(1)),
        (int(2), int(3)),
    ] {
        let spec = ab_basis(&a, &b, 1, 64);
        let fam = build_triangle_family(&spec).unwrap();
        let c = fam
            .tvals
            .iter()
            .zip(&fam.evals)
            .map(|(t, e)| t / e)
            .max()
            .unwrap();
        let bound = int(8) * (int(1) + &c);
        for n in 1..=64u64 {
            let g = rectangle_generator(&spec, n).unwrap();
            let p = axis_cover(&g.rect, &c).unwrap();
            assert!(p.area() <= &bound * g.rect.area());
        }
    }
    println!("ACCEPTANCE 6 axis-parallel cover |P| <= 8(1+C)|R| (4 cells, n <= 64, exact): PASS");
}

#[test]
fn criterion_7_sandwich() {
    for (a, b) in [
        (int(1), int(1)),
        (int(1), int(2)),
        (rat(1, 2), int(1)),
        (int(2), int(3)),
    ] {
        let spec = ab_basis(&a, &b, 1, 32);
        let fam = build_triangle_family(&spec).unwrap();
        for (t, e) in fam.tvals.iter().zip(&fam.evals) {
            rect_triangle_sandwich(t, e)
                .unwrap_or_else(|err| panic!("sandwich failed at t={t}, e={e}: {err}"));
        }
    }
    println!("ACCEPTANCE 7 1/16 sandwich containments (4 cells, n <= 32, exact): PASS");
}

#[test]
fn criterion_9_monte_carlo_kernel_oracle() {
    let mut rng = rng_from_seed(0xC9);
    let samples_per_instance = 800usize;
    for case in 0..500 {
        let t1 = rand_triangle(&mut rng, &int(-3), &int(3)).polygon();
        let t2 = rand_triangle(&mut rng, &int(-3), &int(3)).polygon();
        let exact = if case % 2 == 0 {
            t1.intersect(&t2).area()
        } else {
            union_measure(&[t1.clone(), t2.clone()])
        };
        // sample the joint bounding box
        let (lo1, hi1) = t1.bounding_box().unwrap();
        let (lo2, hi2) = t2.bounding_box().unwrap();
        let lo = Point::new(lo1.x.min(lo2.x), lo1.y.min(lo2.y));
        let hi = Point::new(hi1.x.max(hi2.x), hi1.y.max(hi2.y));
        let box_area = to_f64(&((&hi.x - &lo.x) * (&hi.y - &lo.y)));
        let mut hits = 0usize;
        for _ in 0..samples_per_instance {
            let p = Point::new(
                rand_scalar(&mut rng, &lo.x, &hi.x),
                rand_scalar(&mut rng, &lo.y, &hi.y),
            );
            let inside = if case % 2 == 0 {
                t1.contains_point(&p) && t2.contains_point(&p)
            } else {
                t1.contains_point(&p) || t2.contains_point(&p)
            };
            if inside {
                hits += 1;
            }
        }
        let phat = hits as f64 / samples_per_instance as f64;
        let estimate = phat * box_area;
        let se = box_area * (phat * (1.0 - phat) / samples_per_instance as f64).sqrt();
        // degenerate-variance guard: allow an absolute floor scaled to
        // the box so p-hat in {0,1} cases keep a usable band
        let band = 3.0 * se + 3.0 * box_area / samples_per_instance as f64;
        let exact_f = to_f64(&exact);
        assert!(
            (estimate - exact_f).abs() <= band,
            "case {case}: estimate {estimate} vs exact {exact_f} (band {band})"
        );
    }
    println!("ACCEPTANCE 9 Monte-Carlo kernel oracle (500 instances, 3 sigma): PASS");
}

#[test]
fn norm_bound_ladder_on_built_trees() {
    // supporting check for the divergence mechanism: bounds computed
    // from actual trees (not just the closed form) climb with n
    let fam = harmonic_family(800);
    let tau = rat(10, 3);
    let mut prev = 0.0f64;
    for n in 2..=5u32 {
        let choice = optimize_alpha(n, &tau).unwrap();
        let cands = default_start_candidates(fam.tvals.len(), n);
        let found = choose_start(&fam, &choice.alpha, n, &cands).unwrap();
        let cert = LevelSetCertificate {
            threshold: rat(1, 4),
            parts: half_triangle_witnesses(&found.tree, Anchor::BaseBottom).unwrap(),
            certified_measure: &found.tree.area_sum / int(4),
            samples_checked: 0,
        };
        let nb = pnorm_lower_bound(&cert, &found.tree.area_x, &int(2)).unwrap();
        assert!(nb.bound > prev, "bound did not climb at n={n}");
        prev = nb.bound;
    }
}
