//! Half-space intersection.
//!
//! The recession cone of the intersection is derived analytically from the
//! polar of the conical hull of the constraint normals; vertices come from
//! incrementally clipping a large bounding box, whose artifacts are culled
//! before the canonical chain is rebuilt. Degenerate (parallel) constraints
//! are merged by keeping the tightest offset.

use super::cone::{conical_hull, Cone2};
use super::convex::{ConvexSet2, HalfSpace2};
use super::vec2::{UnitVec, Vec2};

/// Exact V-representation of the intersection of half-spaces.
///
/// Offsets of `+inf` stand for the whole plane and are dropped; an empty
/// constraint list (or all-infinite offsets) yields the whole plane. The
/// empty set is a valid result.
pub fn intersect_halfspaces(hs: &[HalfSpace2]) -> ConvexSet2 {
    let mut finite: Vec<(UnitVec, f64)> = hs
        .iter()
        .filter_map(|h| h.offset.as_finite().map(|t| (h.normal, t)))
        .collect();
    if finite.is_empty() {
        return ConvexSet2::whole_plane();
    }
    // merge parallel constraints, keep the tightest offset
    finite.sort_by(|a, b| {
        a.0.angle()
            .partial_cmp(&b.0.angle())
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    let mut merged: Vec<(UnitVec, f64)> = Vec::with_capacity(finite.len());
    for (n, t) in finite {
        match merged.last_mut() {
            Some((m, mt)) if m.same_dir(n) => *mt = mt.min(t),
            _ => merged.push((n, t)),
        }
    }

    let normals: Vec<UnitVec> = merged.iter().map(|(n, _)| *n).collect();
    let recession = conical_hull(&normals).polar();

    match recession {
        Cone2::Full => ConvexSet2::whole_plane(),
        Cone2::HalfPlane { .. } => {
            // single normal direction after merging
            let (n, t) = merged[0];
            ConvexSet2::half_space(n, t)
        }
        Cone2::Line(_) => {
            // exactly two antiparallel normals: a slab, a line, or empty
            let (n0, t0) = merged[0];
            let (_, t1) = merged[1];
            let scale = 1.0f64.max(t0.abs()).max(t1.abs());
            if t0 + t1 < -1e-12 * scale {
                return ConvexSet2::empty();
            }
            let pts = [n0.as_vec() * t0, n0.as_vec() * (-t1)];
            ConvexSet2::from_points_cone(&pts, recession)
        }
        cone => {
            let scale = merged
                .iter()
                .map(|(_, t)| t.abs())
                .fold(1.0f64, f64::max);
            // an antiparallel pair of width ~0 pins the region to a line;
            // polygon clipping degenerates there, so reduce to one dimension
            for i in 0..merged.len() {
                for j in i + 1..merged.len() {
                    let (ni, ti) = merged[i];
                    let (nj, tj) = merged[j];
                    if ni.same_dir(-nj) && ti + tj <= 1e-9 * scale {
                        if ti + tj < -1e-12 * scale {
                            return ConvexSet2::empty();
                        }
                        return on_line_intersection(ni, 0.5 * (ti - tj), &merged, scale);
                    }
                }
            }
            let big = 1e5 * scale;
            let mut poly: Vec<Vec2> = vec![
                Vec2 { x: -big, y: -big },
                Vec2 { x: big, y: -big },
                Vec2 { x: big, y: big },
                Vec2 { x: -big, y: big },
            ];
            for &(n, t) in &merged {
                poly = clip_polygon(&poly, n, t);
                if poly.is_empty() {
                    return ConvexSet2::empty();
                }
            }
            let margin = big * (1.0 - 1e-6);
            let pts: Vec<Vec2> = poly
                .iter()
                .filter(|p| p.x.abs() < margin && p.y.abs() < margin)
                .map(|&p| snap_vertex(p, &merged))
                .collect();
            if pts.is_empty() {
                // feasible, but every true vertex sits outside the box; at
                // desk scale this only happens for conical feasible regions
                // whose apex the box clipped away, so fall back to the box
                // polygon itself to stay conservative.
                return ConvexSet2::from_points_cone(&poly, cone);
            }
            ConvexSet2::from_points_cone(&pts, cone)
        }
    }
}

/// Intersection of finitely many convex sets (exact, via their H-forms).
pub fn intersect_sets(sets: &[ConvexSet2]) -> ConvexSet2 {
    if sets.iter().any(|s| s.is_empty()) {
        return ConvexSet2::empty();
    }
    let hs: Vec<HalfSpace2> = sets.iter().flat_map(|s| s.h_rep()).collect();
    if hs.is_empty() {
        return ConvexSet2::whole_plane();
    }
    intersect_halfspaces(&hs)
}

/// Re-solve a clipped vertex from its two nearest active constraints.
///
/// Crossing points accumulated against box-scale edges carry noise the
/// direct 2x2 solve at data scale does not have.
fn snap_vertex(p: Vec2, merged: &[(UnitVec, f64)]) -> Vec2 {
    let mut best = [(f64::INFINITY, 0usize); 2];
    for (j, (n, t)) in merged.iter().enumerate() {
        let r = (t - n.dot(p)).abs();
        if r < best[0].0 {
            best[1] = best[0];
            best[0] = (r, j);
        } else if r < best[1].0 {
            best[1] = (r, j);
        }
    }
    let near = 1e-6 * (1.0 + p.norm());
    if best[1].0 > near {
        return p;
    }
    let (a, ta) = merged[best[0].1];
    let (b, tb) = merged[best[1].1];
    let det = a.as_vec().cross(b.as_vec());
    if det.abs() < 1e-9 {
        return p;
    }
    let q = Vec2 {
        x: (ta * b.as_vec().y - tb * a.as_vec().y) / det,
        y: (a.as_vec().x * tb - b.as_vec().x * ta) / det,
    };
    if (q - p).norm() <= near {
        q
    } else {
        p
    }
}

/// Intersection restricted to the line `<x, u> = t`: a 1-dimensional
/// feasibility problem along the direction `rot90(u)`.
fn on_line_intersection(
    u: UnitVec,
    t: f64,
    merged: &[(UnitVec, f64)],
    scale: f64,
) -> ConvexSet2 {
    let base = u.as_vec() * t;
    let d = u.rot90().as_vec();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for &(n, tn) in merged {
        let along = n.dot(d);
        let rhs = tn - n.dot(base);
        if along.abs() <= 1e-12 {
            if rhs < -1e-9 * scale {
                return ConvexSet2::empty();
            }
        } else if along > 0.0 {
            hi = hi.min(rhs / along);
        } else {
            lo = lo.max(rhs / along);
        }
    }
    if lo > hi + 1e-9 * scale {
        return ConvexSet2::empty();
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let (a, b) = (base + d * lo, base + d * hi.max(lo));
            ConvexSet2::from_points_cone(&[a, b], Cone2::Zero)
        }
        (true, false) => ConvexSet2::cone_at(base + d * lo, Cone2::Ray(UnitVec::dir(d).unwrap())),
        (false, true) => {
            ConvexSet2::cone_at(base + d * hi, Cone2::Ray(UnitVec::dir(-d).unwrap()))
        }
        (false, false) => ConvexSet2::from_points_cone(&[base], Cone2::line(UnitVec::dir(d).unwrap())),
    }
}

/// Sutherland–Hodgman clip of a convex polygon by `{x: <x, n> <= t}`.
///
/// Each vertex is classified once, with a tolerance scaled to its own
/// magnitude, so adjacent edges can never disagree about a shared endpoint;
/// the crossing parameter is clamped for borderline flips inside the band.
fn clip_polygon(poly: &[Vec2], n: UnitVec, t: f64) -> Vec<Vec2> {
    let k = poly.len();
    let mut dist = Vec::with_capacity(k);
    let mut inside = Vec::with_capacity(k);
    for p in poly {
        let d = n.dot(*p) - t;
        let tol = 1e-12 * (1.0 + t.abs()) + 1e-14 * (p.x.abs() + p.y.abs());
        dist.push(d);
        inside.push(d <= tol);
    }
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..k {
        let j = (i + 1) % k;
        if inside[i] {
            out.push(poly[i]);
        }
        if inside[i] != inside[j] {
            let s = (dist[i] / (dist[i] - dist[j])).clamp(0.0, 1.0);
            out.push(poly[i] + (poly[j] - poly[i]) * s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::ExtReal;
    use crate::geometry::vec2::vec2;

    fn hs(x: f64, y: f64, t: f64) -> HalfSpace2 {
        HalfSpace2::new(UnitVec::dir(vec2(x, y)).unwrap(), ExtReal::Finite(t))
    }

    #[test]
    fn unit_square_from_slabs() {
        let set = intersect_halfspaces(&[
            hs(1.0, 0.0, 1.0),
            hs(-1.0, 0.0, 0.0),
            hs(0.0, 1.0, 1.0),
            hs(0.0, -1.0, 0.0),
        ]);
        assert_eq!(set.vertices(), ConvexSet2::unit_square().vertices());
        assert!(set.is_bounded());
    }

    #[test]
    fn contradictory_slabs_are_empty() {
        let set = intersect_halfspaces(&[hs(1.0, 0.0, 0.0), hs(-1.0, 0.0, -1.0)]);
        assert!(set.is_empty());
    }

    #[test]
    fn feasible_slab_keeps_line_recession() {
        let set = intersect_halfspaces(&[hs(1.0, 0.0, 1.0), hs(-1.0, 0.0, 0.0)]);
        assert!(!set.is_empty());
        assert!(matches!(set.recession(), Cone2::Line(_)));
        assert!(set.contains_point(vec2(0.5, 100.0), 1e-9));
        assert!(!set.contains_point(vec2(1.5, 0.0), 1e-9));
    }

    #[test]
    fn wedge_region() {
        // {x <= 1, y <= 2} is a lower-left quadrant translate
        let set = intersect_halfspaces(&[hs(1.0, 0.0, 1.0), hs(0.0, 1.0, 2.0)]);
        assert_eq!(set.vertices(), &[vec2(1.0, 2.0)]);
        assert!(set.recession().approx_eq(&Cone2::lower_quadrant(), 1e-9));
    }

    #[test]
    fn single_halfspace() {
        let set = intersect_halfspaces(&[hs(0.0, 1.0, 3.0)]);
        assert!(matches!(set.recession(), Cone2::HalfPlane { .. }));
        assert_eq!(set.vertices(), &[vec2(0.0, 3.0)]);
    }

    #[test]
    fn no_constraints_is_plane() {
        let set = intersect_halfspaces(&[HalfSpace2::new(
            UnitVec::dir(vec2(1.0, 0.0)).unwrap(),
            ExtReal::PosInf,
        )]);
        assert!(set.is_whole_plane());
    }

    #[test]
    fn grid_reconstruction_of_square() {
        // supporting half-spaces sampled densely reconstruct the body
        let sq = ConvexSet2::unit_square();
        let n = 3600usize;
        let hs: Vec<HalfSpace2> = (0..n)
            .map(|k| {
                let u = UnitVec::from_angle(std::f64::consts::TAU * k as f64 / n as f64);
                HalfSpace2::new(u, sq.support(u.as_vec()).unwrap())
            })
            .collect();
        let rec = intersect_halfspaces(&hs);
        let d = crate::geometry::hausdorff(&rec, &sq).unwrap();
        assert!(d <= 1e-3, "hausdorff {d}");
    }

    #[test]
    fn round_trip_through_h_rep() {
        let sets = [
            ConvexSet2::unit_square(),
            ConvexSet2::cone_at(vec2(1.0, 2.0), Cone2::lower_quadrant()),
            ConvexSet2::half_space(UnitVec::dir(vec2(1.0, 1.0)).unwrap(), 2.0),
            ConvexSet2::segment(vec2(0.0, 0.0), vec2(1.0, 1.0)),
            ConvexSet2::point(vec2(-3.0, 0.5)),
            ConvexSet2::from_points_cone(
                &[vec2(0.0, 0.0), vec2(2.0, 0.0)],
                Cone2::Ray(UnitVec::dir(vec2(0.0, -1.0)).unwrap()),
            ),
        ];
        for s in &sets {
            let rec = intersect_halfspaces(&s.h_rep());
            let d = crate::geometry::hausdorff(&rec, s).unwrap();
            assert!(d <= 1e-9, "{s:?} -> {rec:?}, hausdorff {d}");
        }
    }
}
