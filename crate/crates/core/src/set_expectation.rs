//! Set-valued nonlinear expectations.
//!
//! The minimal sublinear expectation of a random convex set has support
//! `e(h(X, u))` over the polar cone of the declared recession cone; the
//! reduced maximal superlinear expectation is the largest convex set whose
//! support is dominated by `u(h(X, v))`. Both are reconstructed by
//! half-space intersection over a direction grid, with independent exact
//! oracles over the extreme densities of the representing family. The
//! minimal superlinear extension searches boundary selections. Zonoid
//! regions, the lift expectation and geometric parametric families are the
//! application-facing constructions.

use crate::error::{capacity, domain, validation, Result};
use crate::ext::ExtReal;
use crate::geometry::{
    intersect_halfspaces, intersect_sets, Cone2, ConvexSet2, DirectionGrid, HalfSpace2, UnitVec,
    Vec2, POLAR_TOL,
};
use crate::numeric::{
    e_value, extreme_densities, geometric_max_expectation, u_value, RepresentingFamily,
};
use crate::random_set::{reweighted_expectation, weighted_minkowski_average, RandomConvexSet};
use crate::scenario::{RandomScalar, RandomVector2};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Combination guard for the boundary-selection search.
const MIN_LOWER_MAX_COMBOS: usize = 20_000_000;
/// Scenario guard for subset enumeration in the exact parametric path.
const SUBSET_MAX_SCENARIOS: usize = 16;

/// Parameters of a nonlinear expectation: the representing family, the
/// declared recession cone, the reconstruction grid on its polar, and an
/// optional direction-dependent family map (nearest-direction lookup).
#[derive(Clone, Debug)]
pub struct NonlinearSpec {
    family: RepresentingFamily,
    grid: DirectionGrid,
    cone: Cone2,
    per_direction: Vec<(UnitVec, RepresentingFamily)>,
}

impl NonlinearSpec {
    pub fn new(family: RepresentingFamily, cone: Cone2, grid_size: usize) -> Result<NonlinearSpec> {
        if cone.is_full() {
            return Err(validation("the declared cone must differ from the plane"));
        }
        let grid = DirectionGrid::in_cone(&cone.polar(), grid_size)?;
        Ok(NonlinearSpec {
            family,
            grid,
            cone,
            per_direction: Vec::new(),
        })
    }

    pub fn with_per_direction(
        mut self,
        map: Vec<(UnitVec, RepresentingFamily)>,
    ) -> NonlinearSpec {
        self.per_direction = map;
        self
    }

    pub fn family(&self) -> &RepresentingFamily {
        &self.family
    }

    pub fn cone(&self) -> &Cone2 {
        &self.cone
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    pub fn has_per_direction(&self) -> bool {
        !self.per_direction.is_empty()
    }

    /// Family at a unit direction, by nearest key when a map is present.
    pub fn family_at(&self, u: UnitVec) -> &RepresentingFamily {
        if self.per_direction.is_empty() {
            return &self.family;
        }
        self.per_direction
            .iter()
            .max_by(|(a, _), (b, _)| {
                a.dot(u.as_vec())
                    .partial_cmp(&b.dot(u.as_vec()))
                    .unwrap()
            })
            .map(|(_, f)| f)
            .unwrap()
    }

    fn check_cone(&self, x: &RandomConvexSet) -> Result<()> {
        if !self.cone.approx_eq(x.cone(), POLAR_TOL) {
            return Err(domain(
                "the random set's declared cone differs from the expectation's cone",
            ));
        }
        Ok(())
    }

    /// Grid directions augmented with the instance's facet normals (so
    /// deterministic inputs reconstruct exactly) and the cross-scenario
    /// support crossings (where order-dependent offsets kink).
    fn dirs_for(&self, x: &RandomConvexSet) -> DirectionGrid {
        self.grid
            .augment(&x.facet_normals())
            .augment(&x.support_crossing_dirs())
    }
}

fn reconstruct(dirs: &DirectionGrid, mut offset: impl FnMut(UnitVec) -> Result<ExtReal>) -> Result<ConvexSet2> {
    let mut hs = Vec::with_capacity(dirs.dirs().len());
    for &u in dirs.dirs() {
        hs.push(HalfSpace2::new(u, offset(u)?));
    }
    Ok(intersect_halfspaces(&hs))
}

/// Minimal sublinear expectation: support `e(h(X, u))` over the grid.
///
/// Directions with infinite offset are skipped; if every offset is infinite
/// the whole plane is returned (detectable via `is_whole_plane`).
pub fn sublinear(x: &RandomConvexSet, spec: &NonlinearSpec) -> Result<ConvexSet2> {
    spec.check_cone(x)?;
    let dirs = spec.dirs_for(x);
    reconstruct(&dirs, |u| {
        let beta = x.support_at(u.as_vec())?;
        e_value(spec.family_at(u), &beta)
    })
}

/// Primal oracle for `sublinear`: the closed convex hull of the reweighted
/// selection expectations `E(gamma X)` over the extreme densities of M.
pub fn sublinear_union_oracle(x: &RandomConvexSet, spec: &NonlinearSpec) -> Result<ConvexSet2> {
    spec.check_cone(x)?;
    if spec.has_per_direction() {
        return Err(domain("the union oracle needs a single representing family"));
    }
    let gammas = extreme_densities(spec.family(), x.space())?;
    let parts: Vec<ConvexSet2> = gammas
        .iter()
        .map(|g| reweighted_expectation(x, g))
        .collect();
    Ok(ConvexSet2::convex_hull(&parts))
}

/// Reduced maximal superlinear expectation: the largest convex set whose
/// support is dominated by `u(h(X, v))` over the grid. May be empty.
///
/// A `+inf` support inside the polar cone means the set is not closed under
/// the declared cone and is a domain error.
pub fn superlinear_reduced_max(x: &RandomConvexSet, spec: &NonlinearSpec) -> Result<ConvexSet2> {
    spec.check_cone(x)?;
    // cone translates of a wedge: the intersection of half-spaces at the two
    // polar boundary rays is exact, no grid needed
    if let Some(xi) = as_cone_translates(x) {
        if matches!(spec.cone(), Cone2::Wedge { .. }) {
            return superlinear_cone_translate(&xi, spec.cone(), spec);
        }
    }
    let dirs = spec.dirs_for(x);
    reconstruct(&dirs, |u| {
        let beta = x.support_at(u.as_vec())?;
        let v = u_value(spec.family_at(u), &beta).map_err(|_| {
            domain("support is +inf inside the polar cone: the set is not closed under the declared cone")
        })?;
        Ok(ExtReal::Finite(v))
    })
}

/// Dual oracle for `superlinear_reduced_max`: the exact intersection of the
/// reweighted selection expectations over the extreme densities.
pub fn superlinear_intersection_oracle(
    x: &RandomConvexSet,
    spec: &NonlinearSpec,
) -> Result<ConvexSet2> {
    spec.check_cone(x)?;
    if spec.has_per_direction() {
        return Err(domain(
            "the intersection oracle needs a single representing family",
        ));
    }
    let gammas = extreme_densities(spec.family(), x.space())?;
    let parts: Vec<ConvexSet2> = gammas
        .iter()
        .map(|g| reweighted_expectation(x, g))
        .collect();
    Ok(intersect_sets(&parts))
}

fn as_cone_translates(x: &RandomConvexSet) -> Option<RandomVector2> {
    let mut pts = Vec::with_capacity(x.scenario_count());
    for v in x.values() {
        if v.vertices().len() != 1 || !v.recession().approx_eq(x.cone(), POLAR_TOL) {
            return None;
        }
        pts.push(v.vertices()[0]);
    }
    RandomVector2::new(x.space().clone(), pts).ok()
}

/// Reduced maximal superlinear expectation of `xi + K`.
///
/// For a wedge `K` the result is a single translate `x + K`, the apex read
/// off the two polar boundary offsets (exact); other cones fall back to the
/// grid reconstruction.
pub fn superlinear_cone_translate(
    xi: &RandomVector2,
    k: &Cone2,
    spec: &NonlinearSpec,
) -> Result<ConvexSet2> {
    if k.is_full() {
        return Err(domain("the cone must differ from the whole plane"));
    }
    if let Cone2::Wedge { .. } = k {
        let g = k.polar();
        let gens = g.generators();
        let (g1, g2) = (gens[0], gens[1]);
        let t1 = u_value(spec.family_at(g1), &xi.dot(g1.as_vec()))?;
        let t2 = u_value(spec.family_at(g2), &xi.dot(g2.as_vec()))?;
        // solve <x, g1> = t1, <x, g2> = t2
        let (a, b) = (g1.as_vec(), g2.as_vec());
        let det = a.x * b.y - a.y * b.x;
        let apex = Vec2 {
            x: (t1 * b.y - t2 * a.y) / det,
            y: (a.x * t2 - b.x * t1) / det,
        };
        return Ok(ConvexSet2::cone_at(apex, *k));
    }
    let grid = DirectionGrid::in_cone(&k.polar(), spec.grid().dirs().len().max(2))?;
    reconstruct(&grid, |u| {
        let v = u_value(spec.family_at(u), &xi.dot(u.as_vec()))?;
        Ok(ExtReal::Finite(v))
    })
}

/// Componentwise sublinear expectation of a random vector against the lower
/// quadrant; equals the coordinatewise supremum of `sublinear({xi} + C)`.
pub fn vector_sublinear(xi: &RandomVector2, spec: &NonlinearSpec) -> Result<Vec2> {
    if !spec.cone().approx_eq(&Cone2::lower_quadrant(), POLAR_TOL) {
        return Err(domain("vector_sublinear needs the lower-quadrant cone"));
    }
    let e1 = UnitVec::new(Vec2 { x: 1.0, y: 0.0 }).unwrap();
    let e2 = UnitVec::new(Vec2 { x: 0.0, y: 1.0 }).unwrap();
    let x = e_value(spec.family_at(e1), &xi.component(0))?
        .as_finite()
        .ok_or_else(|| domain("infinite componentwise expectation"))?;
    let y = e_value(spec.family_at(e2), &xi.component(1))?
        .as_finite()
        .ok_or_else(|| domain("infinite componentwise expectation"))?;
    Ok(Vec2 { x, y })
}

/// Coordinatewise superlinear expectation `(u(xi_1), u(xi_2))`.
pub fn vector_superlinear(xi: &RandomVector2, family: &RepresentingFamily) -> Result<Vec2> {
    Ok(Vec2 {
        x: u_value(family, &xi.component(0))?,
        y: u_value(family, &xi.component(1))?,
    })
}

/// Minimal superlinear extension via boundary selections.
///
/// Per scenario the boundary of `X(omega)` is discretized at `resolution`
/// samples per edge and per recession ray, augmented with the vertices of
/// the pointwise intersection of the scenario values (constant selections
/// realize them exactly). Every joint choice contributes the coordinatewise
/// superlinear point of the selection; the result is their hull plus the
/// declared cone, a subset of the reduced maximal expectation.
pub fn superlinear_min_lower(
    x: &RandomConvexSet,
    spec: &NonlinearSpec,
    resolution: usize,
) -> Result<ConvexSet2> {
    spec.check_cone(x)?;
    if resolution < 2 {
        return Err(domain("resolution must be at least 2"));
    }
    if spec.has_per_direction() {
        return Err(domain("the minimal extension needs a single representing family"));
    }
    let is_lower_like = matches!(spec.cone(), Cone2::Wedge { .. });
    if !is_lower_like {
        return Err(domain(
            "the minimal extension is implemented for wedge cones (lower sets included)",
        ));
    }

    // structured candidates: vertices of the pointwise intersection
    let fixed = intersect_sets(x.values());
    let fixed_verts: Vec<Vec2> = if fixed.is_empty() {
        vec![]
    } else {
        fixed.vertices().to_vec()
    };

    let scale = x
        .values()
        .iter()
        .flat_map(|v| v.vertices())
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0f64, f64::max);
    let range = 4.0 * scale;

    let mut cands: Vec<Vec<Vec2>> = Vec::with_capacity(x.scenario_count());
    for v in x.values() {
        let mut c = boundary_points(v, resolution, range);
        for &w in &fixed_verts {
            c.push(w);
        }
        cands.push(c);
    }
    let combos: usize = cands.iter().map(|c| c.len()).product();
    if combos > MIN_LOWER_MAX_COMBOS {
        return Err(capacity(format!(
            "boundary search would visit {combos} selections; lower the resolution"
        )));
    }

    let probs = x.space().probs();
    let family = spec.family();
    let n = x.scenario_count();
    let mut idx = vec![0usize; n];
    let mut xs = vec![0.0f64; n];
    let mut ys = vec![0.0f64; n];
    let mut scratch: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut points: Vec<Vec2> = Vec::with_capacity(combos.min(1 << 20));
    loop {
        for i in 0..n {
            let p = cands[i][idx[i]];
            xs[i] = p.x;
            ys[i] = p.y;
        }
        let ux = crate::numeric::u_slice(family, probs, &xs, &mut scratch);
        let uy = crate::numeric::u_slice(family, probs, &ys, &mut scratch);
        points.push(Vec2 { x: ux, y: uy });
        // odometer
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
            if i == n {
                let hull = crate::geometry::convex_hull_points(&points);
                return Ok(ConvexSet2::from_points_cone(&hull, *x.cone()));
            }
        }
        // keep the point buffer bounded: collapse to its hull periodically
        if points.len() >= 1 << 20 {
            points = crate::geometry::convex_hull_points(&points);
        }
    }
}

/// Boundary discretization of a set: vertices, `resolution` samples per
/// bounded edge, and `resolution` samples along each recession ray up to
/// `range`.
fn boundary_points(v: &ConvexSet2, resolution: usize, range: f64) -> Vec<Vec2> {
    let verts = v.vertices();
    let mut out: Vec<Vec2> = verts.to_vec();
    let closed = matches!(v.recession(), Cone2::Zero) && verts.len() >= 3;
    let m = verts.len();
    let edges = if closed { m } else { m.saturating_sub(1) };
    for e in 0..edges {
        let a = verts[e];
        let b = verts[(e + 1) % m];
        for k in 1..resolution {
            let t = k as f64 / resolution as f64;
            out.push(a + (b - a) * t);
        }
    }
    match v.recession() {
        Cone2::Zero => {}
        cone => {
            let gens = cone.generators();
            if gens.is_empty() {
                return out; // the whole plane has no boundary
            }
            // rays attach at the chain ends: the last generator at the head,
            // the first at the tail (counterclockwise boundary order)
            let (head_dir, tail_dir) = match gens.len() {
                1 => (gens[0], gens[0]),
                _ => (gens[gens.len() - 1], gens[0]),
            };
            let head = verts[0];
            let tail = verts[m - 1];
            for k in 1..=resolution {
                let t = range * k as f64 / resolution as f64;
                out.push(head + head_dir.as_vec() * t);
                out.push(tail + tail_dir.as_vec() * t);
            }
        }
    }
    out
}

/// The two-scenario wedge benchmark: `X = xi + K` where `xi` is the origin
/// or `a` with equal probabilities and `K` is the wedge through `(1, -pi)`
/// and `(-pi', 1)`. Returns the reduced maximal expectation as an exact
/// translate `x + K` and the minimal extension from the boundary search.
pub fn example62(
    a: Vec2,
    pi: f64,
    pi_prime: f64,
    alpha: f64,
    resolution: usize,
) -> Result<(ConvexSet2, ConvexSet2)> {
    let (k, xi) = example62_instance(a, pi, pi_prime)?;
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(domain(format!("alpha {alpha} must lie in (1/2, 1)")));
    }
    let spec = NonlinearSpec::new(RepresentingFamily::avar(alpha)?, k, 360)?;
    let tilde = superlinear_cone_translate(&xi, &k, &spec)?;
    let x = RandomConvexSet::cone_translates(&xi, k)?;
    let under = superlinear_min_lower(&x, &spec, resolution)?;
    Ok((tilde, under))
}

/// The wedge and two-point random vector underlying `example62`.
pub fn example62_instance(a: Vec2, pi: f64, pi_prime: f64) -> Result<(Cone2, RandomVector2)> {
    if !(pi > 1.0 && pi_prime > 1.0) {
        return Err(domain("the benchmark needs pi, pi' > 1"));
    }
    let k = Cone2::wedge(
        UnitVec::dir(Vec2 {
            x: -pi_prime,
            y: 1.0,
        })?,
        UnitVec::dir(Vec2 { x: 1.0, y: -pi })?,
    )?;
    let space = crate::scenario::ScenarioSpace::uniform(2)?;
    let xi = RandomVector2::new(space, vec![Vec2::ZERO, a])?;
    Ok((k, xi))
}

/// Zonoid-trimmed region of `xi` at level `alpha`: the set of reweighted
/// means `E(gamma xi)` over densities bounded by `1/alpha`.
pub fn zonoid_region(xi: &RandomVector2, alpha: f64) -> Result<ConvexSet2> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("zonoid level {alpha} must lie in (0,1]")));
    }
    let family = RepresentingFamily::avar(alpha)?;
    let space = xi.space();
    if space.len() <= crate::numeric::ORACLE_MAX_SCENARIOS {
        let gammas = extreme_densities(&family, space)?;
        let pts: Vec<Vec2> = gammas
            .iter()
            .map(|g| {
                let mut acc = Vec2::ZERO;
                for (i, &p) in xi.points().iter().enumerate() {
                    acc = acc + p * (space.prob(i) * g[i]);
                }
                acc
            })
            .collect();
        return Ok(ConvexSet2::polytope(&pts));
    }
    let grid = DirectionGrid::circle(3600)?;
    reconstruct(&grid, |u| e_value(&family, &xi.dot(u.as_vec())))
}

/// Lift expectation of a scalar: the selection expectation of the convex
/// hull of the origin and `{1} x [beta]`, an exact zonotope built from the
/// per-scenario segments `[(0,0), (w_i, w_i beta_i)]`.
pub fn lift_expectation(beta: &RandomScalar) -> Result<ConvexSet2> {
    let vals = beta.finite_values()?;
    let space = beta.space();
    let mut acc = ConvexSet2::point(Vec2::ZERO);
    for (i, &v) in vals.iter().enumerate() {
        let w = space.prob(i);
        let seg = ConvexSet2::segment(Vec2::ZERO, Vec2 { x: w, y: w * v });
        acc = acc.minkowski_sum(&seg);
    }
    Ok(acc)
}

/// Vertical slice `{ y : (alpha, y) in z }` of a bounded set.
pub fn vertical_slice(z: &ConvexSet2, alpha: f64) -> Result<(f64, f64)> {
    let e1 = UnitVec::new(Vec2 { x: 1.0, y: 0.0 }).unwrap();
    let cut = intersect_sets(&[
        z.clone(),
        ConvexSet2::half_space(e1, alpha),
        ConvexSet2::half_space(-e1, -alpha),
    ]);
    if cut.is_empty() {
        return Err(domain(format!("the slice at {alpha} is empty")));
    }
    let lo = cut
        .vertices()
        .iter()
        .map(|p| p.y)
        .fold(f64::INFINITY, f64::min);
    let hi = cut
        .vertices()
        .iter()
        .map(|p| p.y)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Sublinear parametric family `E_lambda`: support transformed by the
/// expected maximum over a geometric number of i.i.d. copies.
pub fn parametric_sub(x: &RandomConvexSet, lambda: f64, grid_size: usize) -> Result<ConvexSet2> {
    let grid = DirectionGrid::in_cone(&x.cone().polar(), grid_size)?
        .augment(&x.facet_normals())
        .augment(&x.support_crossing_dirs());
    reconstruct(&grid, |u| {
        let beta = x.support_at(u.as_vec())?;
        if !beta.is_all_finite() {
            return Ok(ExtReal::PosInf);
        }
        Ok(ExtReal::Finite(geometric_max_expectation(&beta, lambda)?))
    })
}

/// Outcome of the Monte Carlo superlinear parametric family.
#[derive(Clone, Debug)]
pub struct McOutcome {
    pub set: ConvexSet2,
    /// An empty intersection was drawn: the family value is empty.
    pub empty_detected: bool,
    pub samples: u64,
}

/// Superlinear parametric family `U_lambda`: the selection expectation of
/// the intersection of a geometric number of i.i.d. draws, estimated by
/// seeded Monte Carlo. An intersection that is empty with positive
/// probability makes the value empty.
pub fn parametric_super(
    x: &RandomConvexSet,
    lambda: f64,
    samples: u64,
    seed: u64,
) -> Result<McOutcome> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(domain(format!("lambda {lambda} must lie in (0,1]")));
    }
    if samples == 0 {
        return Err(domain("at least one sample is required"));
    }
    let n = x.scenario_count();
    if n > 64 {
        return Err(capacity("Monte Carlo path supports at most 64 scenarios"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = x.space().probs();
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for _ in 0..samples {
        let draws = if lambda >= 1.0 {
            1u64
        } else {
            let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
            1 + (u.ln() / (1.0 - lambda).ln()).floor() as u64
        };
        let mut mask = 0u64;
        for _ in 0..draws {
            let mut t: f64 = rng.random();
            let mut idx = n - 1;
            for (i, &w) in probs.iter().enumerate() {
                if t < w {
                    idx = i;
                    break;
                }
                t -= w;
            }
            mask |= 1 << idx;
            if mask.count_ones() as usize == n {
                break; // intersection can only shrink to the full pointwise one
            }
        }
        *counts.entry(mask).or_insert(0) += 1;
    }
    // average the per-mask intersections, weighted by their frequencies
    let mut sets = Vec::with_capacity(counts.len());
    let mut weights = Vec::with_capacity(counts.len());
    let mut masks: Vec<u64> = counts.keys().copied().collect();
    masks.sort_unstable();
    for mask in masks {
        let members: Vec<ConvexSet2> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| x.values()[i].clone())
            .collect();
        let inter = intersect_sets(&members);
        if inter.is_empty() {
            return Ok(McOutcome {
                set: ConvexSet2::empty(),
                empty_detected: true,
                samples,
            });
        }
        sets.push(inter);
        weights.push(counts[&mask] as f64 / samples as f64);
    }
    let refs: Vec<&ConvexSet2> = sets.iter().collect();
    Ok(McOutcome {
        set: weighted_minkowski_average(&weights, &refs),
        empty_detected: false,
        samples,
    })
}

/// Exact value of the superlinear parametric family by subset enumeration:
/// the probability that the geometric batch of draws realizes exactly the
/// scenario subset `S` has the closed form
/// `sum_{T subset S} (-1)^{|S|-|T|} G(P(T))` with
/// `G(F) = lambda F / (1 - (1-lambda) F)`.
pub fn parametric_super_exact(x: &RandomConvexSet, lambda: f64) -> Result<ConvexSet2> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(domain(format!("lambda {lambda} must lie in (0,1]")));
    }
    let n = x.scenario_count();
    if n > SUBSET_MAX_SCENARIOS {
        return Err(capacity(format!(
            "exact subset enumeration limited to {SUBSET_MAX_SCENARIOS} scenarios"
        )));
    }
    let probs = x.space().probs();
    let g = |f: f64| lambda * f / (1.0 - (1.0 - lambda) * f);
    let mut subset_prob = vec![0.0f64; 1 << n];
    for (t, sp) in subset_prob.iter_mut().enumerate().skip(1) {
        let mass: f64 = (0..n).filter(|i| t >> i & 1 == 1).map(|i| probs[i]).sum();
        *sp = g(mass);
    }
    let mut sets = Vec::new();
    let mut weights = Vec::new();
    for s in 1usize..1 << n {
        // inclusion-exclusion over subsets of s
        let mut p = 0.0;
        let mut t = s;
        loop {
            let sign = if ((s.count_ones() - t.count_ones()) & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            p += sign * subset_prob[t];
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        if p <= 1e-15 {
            continue;
        }
        let members: Vec<ConvexSet2> = (0..n)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| x.values()[i].clone())
            .collect();
        let inter = intersect_sets(&members);
        if inter.is_empty() {
            return Ok(ConvexSet2::empty());
        }
        sets.push(inter);
        weights.push(p);
    }
    let total: f64 = weights.iter().sum();
    debug_assert!((total - 1.0).abs() < 1e-9, "subset probabilities sum to {total}");
    let refs: Vec<&ConvexSet2> = sets.iter().collect();
    Ok(weighted_minkowski_average(&weights, &refs))
}
