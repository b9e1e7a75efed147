//! Set comparison: containment and Hausdorff distance.

use super::cone::Cone2;
use super::convex::{ConvexSet2, POLAR_TOL};
use super::vec2::{UnitVec, Vec2};
use crate::error::{domain, Result};
use crate::ext::ExtReal;

/// Number of directions in the canonical verification grid.
pub const CONTAINS_GRID: usize = 720;
/// Default containment tolerance.
pub const CONTAINS_TOL: f64 = 1e-9;

fn facet_normals(a: &ConvexSet2) -> Vec<UnitVec> {
    if a.is_empty() {
        return vec![];
    }
    a.h_rep().iter().map(|h| h.normal).collect()
}

/// `B` is contained in `A` up to `tol`: the support of `B` never exceeds the
/// support of `A` by more than `tol` on the canonical grid plus both sets'
/// facet normals, and `B`'s recession cone lies in `A`'s.
pub fn contains(a: &ConvexSet2, b: &ConvexSet2, tol: f64) -> bool {
    if b.is_empty() {
        return true;
    }
    if a.is_empty() {
        return false;
    }
    if a.is_whole_plane() {
        return true;
    }
    if !a.recession().contains_cone(b.recession(), POLAR_TOL) {
        return false;
    }
    let mut dirs: Vec<Vec2> = (0..CONTAINS_GRID)
        .map(|k| UnitVec::from_angle(std::f64::consts::TAU * k as f64 / CONTAINS_GRID as f64).as_vec())
        .collect();
    dirs.extend(facet_normals(a).iter().map(|u| u.as_vec()));
    dirs.extend(facet_normals(b).iter().map(|u| u.as_vec()));
    for u in dirs {
        let hb = b.support(u).expect("b non-empty");
        let ha = a.support(u).expect("a non-empty");
        match (ha, hb) {
            (ExtReal::PosInf, _) => {}
            (ExtReal::Finite(_), ExtReal::PosInf) => return false,
            (ExtReal::Finite(x), ExtReal::Finite(y)) => {
                if y > x + tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Hausdorff distance between two non-empty sets sharing a recession cone.
///
/// Evaluated as the maximum support gap over the union of both facet-normal
/// fans, the polar boundary rays, and the pairwise vertex-difference
/// directions (where the gap of two polytopes is stationary); exact for
/// vertex-represented sets.
pub fn hausdorff(a: &ConvexSet2, b: &ConvexSet2) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("hausdorff distance requires non-empty sets"));
    }
    if !a.recession().approx_eq(b.recession(), POLAR_TOL) {
        return Err(domain("hausdorff distance requires identical recession cones"));
    }
    if a.is_whole_plane() {
        return Ok(0.0);
    }
    let g = a.recession().polar();
    let mut dirs: Vec<Vec2> = Vec::new();
    dirs.extend(facet_normals(a).iter().map(|u| u.as_vec()));
    dirs.extend(facet_normals(b).iter().map(|u| u.as_vec()));
    dirs.extend(g.generators().iter().map(|u| u.as_vec()));
    for &va in a.vertices() {
        for &vb in b.vertices() {
            let w = va - vb;
            if w.norm() > 0.0 {
                dirs.push(w * (1.0 / w.norm()));
                dirs.push(w * (-1.0 / w.norm()));
            }
        }
    }
    let mut best = 0.0f64;
    for u in dirs {
        if !g.contains_dir(u, POLAR_TOL) {
            continue;
        }
        let (ha, hb) = (a.support(u)?, b.support(u)?);
        if let (ExtReal::Finite(x), ExtReal::Finite(y)) = (ha, hb) {
            best = best.max((x - y).abs() / u.norm());
        }
    }
    Ok(best)
}

/// The largest support gap `h(a, u) - h(b, u)` over witness directions in the
/// polar cone; positive when `b` is strictly inside `a` somewhere.
pub fn max_support_gap(a: &ConvexSet2, b: &ConvexSet2) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("support gap requires non-empty sets"));
    }
    let g = Cone2::hull(a.recession(), b.recession()).polar();
    let mut dirs: Vec<Vec2> = Vec::new();
    dirs.extend(facet_normals(a).iter().map(|u| u.as_vec()));
    dirs.extend(facet_normals(b).iter().map(|u| u.as_vec()));
    dirs.extend(g.generators().iter().map(|u| u.as_vec()));
    let mut best = f64::NEG_INFINITY;
    for u in dirs {
        if !g.contains_dir(u, POLAR_TOL) {
            continue;
        }
        if let (ExtReal::Finite(x), ExtReal::Finite(y)) = (a.support(u)?, b.support(u)?) {
            best = best.max((x - y) / u.norm());
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(domain("no finite support direction in the common polar cone"))
    }
}
