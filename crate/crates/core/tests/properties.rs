//! Cross-module invariants: algebraic identities of the geometry kernel,
//! duality between numeric expectations and their vertex oracles, and the
//! ordering laws of the set-valued expectations.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use setexp::geometry::{contains, hausdorff, intersect_halfspaces, vec2, Cone2, UnitVec, Vec2};
use setexp::numeric::{e_value, extreme_densities, u_value};
use setexp::risk_depth::{is_acceptable, make_portfolio, Provenance};
use setexp::set_expectation::{
    superlinear_cone_translate, superlinear_min_lower, superlinear_reduced_max, vector_superlinear,
};
use setexp::*;

fn point_strategy() -> impl Strategy<Value = Vec2> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(x, y)| vec2(x, y))
}

fn polytope_strategy() -> impl Strategy<Value = ConvexSet2> {
    proptest::collection::vec(point_strategy(), 1..7).prop_map(|pts| ConvexSet2::polytope(&pts))
}

proptest! {
    #[test]
    fn support_is_sublinear(a in polytope_strategy(), t1 in 0.0f64..6.2, t2 in 0.0f64..6.2) {
        let u = UnitVec::from_angle(t1).as_vec();
        let v = UnitVec::from_angle(t2).as_vec();
        let hu = a.support_finite(u);
        let hv = a.support_finite(v);
        let huv = a.support_finite(u + v);
        prop_assert!(huv <= hu + hv + 1e-9);
    }

    #[test]
    fn support_is_additive_under_minkowski(
        a in polytope_strategy(),
        b in polytope_strategy(),
        t in 0.0f64..6.2,
    ) {
        let u = UnitVec::from_angle(t).as_vec();
        let sum = a.minkowski_sum(&b);
        prop_assert!(
            (sum.support_finite(u) - a.support_finite(u) - b.support_finite(u)).abs() <= 1e-9
        );
    }

    #[test]
    fn h_rep_round_trip(a in polytope_strategy()) {
        let rec = intersect_halfspaces(&a.h_rep());
        prop_assert!(hausdorff(&rec, &a).unwrap() <= 1e-9);
    }

    #[test]
    fn hausdorff_zero_iff_mutual_containment(a in polytope_strategy(), shift in point_strategy()) {
        let b = a.translate(shift);
        let d = hausdorff(&a, &b).unwrap();
        let both = contains(&a, &b, 1e-12) && contains(&b, &a, 1e-12);
        prop_assert_eq!(d <= 1e-12, both);
    }

    #[test]
    fn minkowski_commutes(a in polytope_strategy(), b in polytope_strategy()) {
        let ab = a.minkowski_sum(&b);
        let ba = b.minkowski_sum(&a);
        prop_assert!(hausdorff(&ab, &ba).unwrap() <= 1e-9);
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_space(rng: &mut ChaCha8Rng, n: usize) -> std::sync::Arc<ScenarioSpace> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..1.0)).collect();
    let s: f64 = w.iter().sum();
    for x in &mut w {
        *x /= s;
    }
    let r = 1.0 - w.iter().sum::<f64>();
    w[0] += r;
    ScenarioSpace::new(w).unwrap()
}

fn random_scalar(rng: &mut ChaCha8Rng, space: &std::sync::Arc<ScenarioSpace>) -> RandomScalar {
    let vals: Vec<f64> = (0..space.len()).map(|_| rng.random_range(-3.0..3.0)).collect();
    RandomScalar::from_f64s(space.clone(), vals).unwrap()
}

fn random_family(rng: &mut ChaCha8Rng) -> RepresentingFamily {
    match rng.random_range(0u8..3) {
        0 => RepresentingFamily::avar(rng.random_range(0.2..1.0)).unwrap(),
        1 => RepresentingFamily::max_of_n(rng.random_range(1..4)).unwrap(),
        _ => RepresentingFamily::Expectation,
    }
}

#[test]
fn numeric_sub_and_superadditivity_randomized() {
    let mut rng = rng_for(11);
    for _ in 0..1000 {
        let n = rng.random_range(2..5);
        let sp = random_space(&mut rng, n);
        let a = random_scalar(&mut rng, &sp);
        let b = random_scalar(&mut rng, &sp);
        let sum = RandomScalar::from_f64s(
            sp.clone(),
            a.finite_values()
                .unwrap()
                .iter()
                .zip(b.finite_values().unwrap())
                .map(|(x, y)| x + y)
                .collect(),
        )
        .unwrap();
        let m = random_family(&mut rng);
        let (ea, eb, es) = (
            e_value(&m, &a).unwrap().as_finite().unwrap(),
            e_value(&m, &b).unwrap().as_finite().unwrap(),
            e_value(&m, &sum).unwrap().as_finite().unwrap(),
        );
        assert!(es <= ea + eb + 1e-9, "subadditivity of e: {es} vs {ea}+{eb}");
        let (ua, ub, us) = (
            u_value(&m, &a).unwrap(),
            u_value(&m, &b).unwrap(),
            u_value(&m, &sum).unwrap(),
        );
        assert!(us >= ua + ub - 1e-9, "superadditivity of u");
        // the unit density is feasible in all three families
        let mean = a.expectation().as_finite().unwrap();
        assert!(ua <= mean + 1e-9 && mean <= ea + 1e-9, "sandwich around the mean");
    }
}

#[test]
fn numeric_matches_vertex_oracle_randomized() {
    let mut rng = rng_for(12);
    for _ in 0..300 {
        let n = rng.random_range(2..7);
        let sp = random_space(&mut rng, n);
        let b = random_scalar(&mut rng, &sp);
        let m = random_family(&mut rng);
        let gammas = extreme_densities(&m, &sp).unwrap();
        let vals = b.finite_values().unwrap();
        let dot = |g: &Vec<f64>| -> f64 {
            g.iter()
                .zip(sp.probs())
                .zip(&vals)
                .map(|((g, w), v)| g * w * v)
                .sum()
        };
        let mx = gammas.iter().map(dot).fold(f64::NEG_INFINITY, f64::max);
        let mn = gammas.iter().map(dot).fold(f64::INFINITY, f64::min);
        assert!((e_value(&m, &b).unwrap().as_finite().unwrap() - mx).abs() <= 1e-9);
        assert!((u_value(&m, &b).unwrap() - mn).abs() <= 1e-9);
    }
}

/// If `E h(Y, zeta) <= E h(X, zeta)` for every scenario-wise direction
/// choice on a per-scenario grid, then `Y` is contained in `X` scenario by
/// scenario.
#[test]
fn scenario_wise_support_domination_implies_containment() {
    let mut rng = rng_for(13);
    let dirs: Vec<Vec2> = (0..24)
        .map(|k| UnitVec::from_angle(std::f64::consts::TAU * k as f64 / 24.0).as_vec())
        .collect();
    let mut dominated_seen = 0;
    for case in 0..60 {
        let n = rng.random_range(1..4usize);
        let sp = random_space(&mut rng, n);
        let xs: Vec<ConvexSet2> = (0..n)
            .map(|_| {
                let pts: Vec<Vec2> = (0..5)
                    .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                    .collect();
                ConvexSet2::polytope(&pts)
            })
            .collect();
        // half the cases construct Y inside X, half independently
        let ys: Vec<ConvexSet2> = if case % 2 == 0 {
            xs.iter()
                .map(|x| {
                    let c = rng.random_range(0.2..0.9);
                    let shrunk = x.dilate(c).unwrap();
                    let centroid = x.vertices().iter().fold(Vec2::ZERO, |a, &v| a + v)
                        * (1.0 / x.vertices().len() as f64);
                    shrunk.translate(centroid * (1.0 - c))
                })
                .collect()
        } else {
            (0..n)
                .map(|_| {
                    let pts: Vec<Vec2> = (0..4)
                        .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                        .collect();
                    ConvexSet2::polytope(&pts)
                })
                .collect()
        };
        let x = RandomConvexSet::new(sp.clone(), xs, Cone2::Zero).unwrap();
        let y = RandomConvexSet::new(sp.clone(), ys, Cone2::Zero).unwrap();
        // every scenario-wise assignment of grid directions
        let mut dominated = true;
        let mut assignment = vec![0usize; n];
        'outer: loop {
            let zeta = RandomVector2::new(
                sp.clone(),
                assignment.iter().map(|&k| dirs[k]).collect(),
            )
            .unwrap();
            let ex = x.support_rv(&zeta).unwrap().expectation().as_finite().unwrap();
            let ey = y.support_rv(&zeta).unwrap().expectation().as_finite().unwrap();
            if ey > ex + 1e-12 {
                dominated = false;
                break;
            }
            let mut i = 0;
            loop {
                assignment[i] += 1;
                if assignment[i] < dirs.len() {
                    break;
                }
                assignment[i] = 0;
                i += 1;
                if i == n {
                    break 'outer;
                }
            }
        }
        if dominated {
            dominated_seen += 1;
            for (xv, yv) in x.values().iter().zip(y.values()) {
                // grid domination certifies containment up to the grid gap
                assert!(contains(xv, yv, 0.05), "domination without containment");
            }
        }
    }
    assert!(dominated_seen >= 10, "the constructed cases must exercise the oracle");
}

#[test]
fn minimal_extension_stays_inside_reduced_maximal() {
    let mut rng = rng_for(14);
    let c = Cone2::lower_quadrant();
    for _ in 0..25 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let pts: Vec<Vec2> = (0..n)
            .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect();
        let xi = RandomVector2::new(sp, pts).unwrap();
        let x = RandomConvexSet::cone_translates(&xi, c).unwrap();
        let spec = NonlinearSpec::new(
            RepresentingFamily::avar(rng.random_range(0.3..1.0)).unwrap(),
            c,
            180,
        )
        .unwrap();
        let under = superlinear_min_lower(&x, &spec, 8).unwrap();
        let tilde = superlinear_reduced_max(&x, &spec).unwrap();
        assert!(contains(&tilde, &under, 1e-6));
    }
}

/// The minimal extension agrees with the reduced maximal expectation on
/// half-spaces with a deterministic normal: every boundary selection of
/// `H_v(beta)` reproduces the half-space at the superlinear offset, so the
/// re-extension of the minimal extension recovers the reduced maximal one.
#[test]
fn half_space_minimal_extension_recovers_u() {
    let mut rng = rng_for(15);
    for _ in 0..40 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let beta = random_scalar(&mut rng, &sp);
        let v = UnitVec::from_angle(rng.random_range(0.0..std::f64::consts::TAU));
        let family = RepresentingFamily::avar(rng.random_range(0.3..1.0)).unwrap();
        let w = v.rot90().as_vec();
        // boundary selections: beta * v + s * w per scenario
        let offsets: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let pts: Vec<Vec2> = beta
            .finite_values()
            .unwrap()
            .iter()
            .zip(&offsets)
            .map(|(&t, &s)| v.as_vec() * t + w * s)
            .collect();
        let sel = RandomVector2::new(sp.clone(), pts).unwrap();
        let hp_cone = Cone2::HalfPlane { start: v.rot90() };
        let spec = NonlinearSpec::new(family.clone(), hp_cone, 8).unwrap();
        let u_set = superlinear_cone_translate(&sel, &hp_cone, &spec).unwrap();
        let want = ConvexSet2::half_space(v, u_value(&family, &beta).unwrap());
        assert!(hausdorff(&u_set, &want).unwrap() <= 1e-9);
    }
}

/// A nondeterministic singleton has an empty superlinear expectation.
#[test]
fn superlinear_of_nondeterministic_singleton_is_empty() {
    let sp = ScenarioSpace::uniform(2).unwrap();
    let xi = RandomVector2::new(sp, vec![vec2(0.0, 0.0), vec2(1.0, 0.5)]).unwrap();
    let x = RandomConvexSet::cone_translates(&xi, Cone2::Zero).unwrap();
    let spec = NonlinearSpec::new(RepresentingFamily::avar(0.5).unwrap(), Cone2::Zero, 360).unwrap();
    let u = superlinear_reduced_max(&x, &spec).unwrap();
    assert!(u.is_empty());
}

#[test]
fn acceptance_is_translation_consistent() {
    let mut rng = rng_for(16);
    let c = Cone2::lower_quadrant();
    let spec = NonlinearSpec::new(RepresentingFamily::avar(0.7).unwrap(), c, 360).unwrap();
    for _ in 0..40 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let pts: Vec<Vec2> = (0..n)
            .map(|_| vec2(rng.random_range(-1.0..1.5), rng.random_range(-1.0..1.5)))
            .collect();
        let xi = RandomVector2::new(sp, pts).unwrap();
        let p = make_portfolio(&xi, Provenance::ConsumptionOnly).unwrap();
        let accepted = is_acceptable(&p, &spec).unwrap();
        // 0 in U(X) iff the coordinatewise u vector dominates the origin
        let uvec = vector_superlinear(&xi, spec.family()).unwrap();
        assert_eq!(accepted, uvec.x >= -1e-9 && uvec.y >= -1e-9);
        // translating by the u vector moves the expectation to the origin corner
        let shifted = make_portfolio(&xi.translate(vec2(-uvec.x, -uvec.y)), Provenance::ConsumptionOnly)
            .unwrap();
        assert!(is_acceptable(&shifted, &spec).unwrap());
    }
}

/// Lower-set-extension acceptance implies reduced-maximal acceptance.
#[test]
fn minimal_extension_acceptance_is_stronger() {
    let mut rng = rng_for(17);
    let c = Cone2::lower_quadrant();
    let spec = NonlinearSpec::new(RepresentingFamily::avar(0.6).unwrap(), c, 180).unwrap();
    let mut both = 0;
    for _ in 0..40 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let pts: Vec<Vec2> = (0..n)
            .map(|_| vec2(rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5)))
            .collect();
        let xi = RandomVector2::new(sp, pts).unwrap();
        let x = RandomConvexSet::cone_translates(&xi, c).unwrap();
        let under = superlinear_min_lower(&x, &spec, 8).unwrap();
        let tilde = superlinear_reduced_max(&x, &spec).unwrap();
        let under_ok = !under.is_empty() && under.contains_point(Vec2::ZERO, 1e-9);
        let tilde_ok = !tilde.is_empty() && tilde.contains_point(Vec2::ZERO, 1e-9);
        if under_ok {
            both += 1;
            assert!(tilde_ok, "minimal-extension acceptance must imply the maximal one");
        }
    }
    assert!(both >= 5, "the suite must hit accepting instances");
}

/// The sublinear expectation equals its own reduced maximal re-extension:
/// re-intersecting the supporting half-spaces at the reconstruction grid
/// reproduces the set.
#[test]
fn sublinear_reextension_is_idempotent() {
    let mut rng = rng_for(18);
    for _ in 0..20 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let vals: Vec<ConvexSet2> = (0..n)
            .map(|_| {
                let pts: Vec<Vec2> = (0..4)
                    .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                    .collect();
                ConvexSet2::polytope(&pts)
            })
            .collect();
        let x = RandomConvexSet::new(sp, vals, Cone2::Zero).unwrap();
        let spec = NonlinearSpec::new(
            RepresentingFamily::avar(rng.random_range(0.3..1.0)).unwrap(),
            Cone2::Zero,
            180,
        )
        .unwrap();
        let e = setexp::set_expectation::sublinear(&x, &spec).unwrap();
        let re = intersect_halfspaces(&e.h_rep());
        assert!(hausdorff(&e, &re).unwrap() <= 1e-9);
    }
}

/// Diversification: two acceptable portfolios stay acceptable after summing.
#[test]
fn diversification_randomized() {
    let mut rng = rng_for(19);
    let c = Cone2::lower_quadrant();
    let mut accepted_pairs = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let alpha = rng.random_range(0.3..1.0);
        let spec = NonlinearSpec::new(RepresentingFamily::avar(alpha).unwrap(), c, 120).unwrap();
        let draw = |rng: &mut ChaCha8Rng| -> RandomVector2 {
            let pts: Vec<Vec2> = (0..n)
                .map(|_| vec2(rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5)))
                .collect();
            RandomVector2::new(sp.clone(), pts).unwrap()
        };
        let xi = draw(&mut rng);
        let eta = draw(&mut rng);
        let px = make_portfolio(&xi, Provenance::ConsumptionOnly).unwrap();
        let py = make_portfolio(&eta, Provenance::ConsumptionOnly).unwrap();
        if is_acceptable(&px, &spec).unwrap() && is_acceptable(&py, &spec).unwrap() {
            accepted_pairs += 1;
            let sum: Vec<Vec2> = xi
                .points()
                .iter()
                .zip(eta.points())
                .map(|(&a, &b)| a + b)
                .collect();
            let psum = make_portfolio(
                &RandomVector2::new(sp.clone(), sum).unwrap(),
                Provenance::ConsumptionOnly,
            )
            .unwrap();
            assert!(is_acceptable(&psum, &spec).unwrap(), "diversification failed");
        }
    }
    assert!(accepted_pairs >= 20, "suite must hit accepting pairs, got {accepted_pairs}");
}

/// Ordering chain of the expectations: fixed points, superlinear, selection,
/// sublinear, support hull.
#[test]
fn expectation_ordering_chain() {
    let mut rng = rng_for(20);
    for _ in 0..40 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        // shared core keeps the fixed-point set (and the superlinear
        // expectation) non-empty
        let core = ConvexSet2::rectangle(-0.5, -0.5, 0.5, 0.5);
        let vals: Vec<ConvexSet2> = (0..n)
            .map(|_| {
                let pts: Vec<Vec2> = (0..3)
                    .map(|_| vec2(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)))
                    .collect();
                ConvexSet2::convex_hull(&[core.clone(), ConvexSet2::polytope(&pts)])
            })
            .collect();
        let x = RandomConvexSet::new(sp, vals, Cone2::Zero).unwrap();
        let spec = NonlinearSpec::new(
            RepresentingFamily::avar(rng.random_range(0.4..1.0)).unwrap(),
            Cone2::Zero,
            180,
        )
        .unwrap();
        let fixed = x.fixed_points();
        let u = superlinear_reduced_max(&x, &spec).unwrap();
        let ex = x.selection_expectation();
        let e = setexp::set_expectation::sublinear(&x, &spec).unwrap();
        let supp = x.support_set();
        assert!(contains(&u, &fixed, 1e-6));
        assert!(contains(&ex, &u, 1e-6));
        assert!(contains(&e, &ex, 1e-6));
        assert!(contains(&supp, &e, 1e-6));
    }
}

/// Holder bound: the sublinear expectation is contained in the Firey p-mean
/// scaled by the largest q-norm of the representing densities.
#[test]
fn firey_bound_on_the_sublinear_expectation() {
    let mut rng = rng_for(21);
    let p = 2.0;
    for _ in 0..25 {
        let n = rng.random_range(2..4);
        let sp = random_space(&mut rng, n);
        let alpha = rng.random_range(0.3..1.0);
        // values containing the origin keep supports nonnegative
        let vals: Vec<ConvexSet2> = (0..n)
            .map(|_| {
                let mut pts: Vec<Vec2> = (0..4)
                    .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                    .collect();
                pts.push(Vec2::ZERO);
                ConvexSet2::polytope(&pts)
            })
            .collect();
        let x = RandomConvexSet::new(sp.clone(), vals, Cone2::Zero).unwrap();
        let spec =
            NonlinearSpec::new(RepresentingFamily::avar(alpha).unwrap(), Cone2::Zero, 180).unwrap();
        let e = setexp::set_expectation::sublinear(&x, &spec).unwrap();
        let firey = x.firey_expectation(p).unwrap();
        // sup of (E gamma^q)^(1/q) over the density vertices, q conjugate to p
        let q = p / (p - 1.0);
        let c = extreme_densities(spec.family(), &sp)
            .unwrap()
            .iter()
            .map(|g| {
                g.iter()
                    .zip(sp.probs())
                    .map(|(gi, w)| w * gi.powf(q))
                    .sum::<f64>()
                    .powf(1.0 / q)
            })
            .fold(1.0f64, f64::max);
        let bound = firey.dilate(c).unwrap();
        assert!(contains(&bound, &e, 1e-6), "alpha {alpha}, c {c}");
    }
}

/// The selection expectation of a conditional expectation equals the
/// unconditional one (tower property at the level of sets).
#[test]
fn set_level_tower_property() {
    let mut rng = rng_for(22);
    for _ in 0..20 {
        let sp = random_space(&mut rng, 3);
        let vals: Vec<ConvexSet2> = (0..3)
            .map(|_| {
                let pts: Vec<Vec2> = (0..4)
                    .map(|_| vec2(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                    .collect();
                ConvexSet2::polytope(&pts)
            })
            .collect();
        let x = RandomConvexSet::new(sp, vals, Cone2::Zero).unwrap();
        let ex = x.selection_expectation();
        for part in Partition::enumerate_all(3) {
            let cond = x.conditional_selection_expectation(&part).unwrap();
            let ec = cond.selection_expectation();
            assert!(hausdorff(&ex, &ec).unwrap() <= 1e-9);
        }
    }
}

/// Heavier randomized agreement sweep; run explicitly with
/// `cargo test --release -p setexp --test properties -- --ignored`.
#[test]
#[ignore]
fn stress_oracle_agreement() {
    let mut rng = rng_for(23);
    for case in 0..2000 {
        let n = rng.random_range(2..7usize);
        let alpha = rng.random_range(0.15..1.0);
        let scale = 10f64.powf(rng.random_range(-2.0..2.0));
        let sp = random_space(&mut rng, n);
        let vals: Vec<ConvexSet2> = (0..n)
            .map(|_| {
                let pts: Vec<Vec2> = (0..rng.random_range(1..7))
                    .map(|_| {
                        vec2(
                            scale * rng.random_range(-2.0..2.0),
                            scale * rng.random_range(-2.0..2.0),
                        )
                    })
                    .collect();
                ConvexSet2::polytope(&pts)
            })
            .collect();
        let x = RandomConvexSet::new(sp.clone(), vals, Cone2::Zero).unwrap();
        let spec =
            NonlinearSpec::new(RepresentingFamily::avar(alpha).unwrap(), Cone2::Zero, 360).unwrap();
        let by_grid = setexp::set_expectation::sublinear(&x, &spec).unwrap();
        let by_union = setexp::set_expectation::sublinear_union_oracle(&x, &spec).unwrap();
        let d = hausdorff(&by_grid, &by_union).unwrap();
        assert!(d <= 1e-3 * scale.max(1.0), "case {case}: {d} at scale {scale}");

        let pts: Vec<Vec2> = (0..n)
            .map(|_| {
                vec2(
                    scale * rng.random_range(-2.0..2.0),
                    scale * rng.random_range(-2.0..2.0),
                )
            })
            .collect();
        let xi = RandomVector2::new(sp, pts).unwrap();
        let lower = RandomConvexSet::cone_translates(&xi, Cone2::lower_quadrant()).unwrap();
        let specl = NonlinearSpec::new(
            RepresentingFamily::avar(alpha).unwrap(),
            Cone2::lower_quadrant(),
            360,
        )
        .unwrap();
        let dual = superlinear_reduced_max(&lower, &specl).unwrap();
        let inter = setexp::set_expectation::superlinear_intersection_oracle(&lower, &specl).unwrap();
        let d2 = hausdorff(&dual, &inter).unwrap();
        assert!(d2 <= 1e-6 * scale.max(1.0), "case {case}: {d2} at scale {scale}");
    }
}
