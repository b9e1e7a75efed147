//! Planar closed convex sets in vertex representation.
//!
//! A set is stored as `conv(verts) + recession cone`. The vertex list is a
//! canonical chain: for bounded sets a counterclockwise cycle starting at the
//! lexicographically smallest vertex; for sets with ray or wedge recession a
//! counterclockwise open chain whose outward normals sweep the polar cone of
//! the recession; half-planes, slabs and the whole plane keep one or two
//! canonical base points. The empty set has an empty vertex list.

use super::cone::Cone2;
use super::vec2::{ccw_angle, UnitVec, Vec2};
use crate::error::{domain, Result};
use crate::ext::ExtReal;
use std::f64::consts::TAU;

/// Merge tolerance for coincident vertices (relative to coordinate scale).
pub const VERTEX_TOL: f64 = 1e-12;
/// Cross-product tolerance for collinearity (relative to squared scale).
pub const COLLINEAR_TOL: f64 = 1e-12;
/// Directions at most this far outside the polar cone still count as finite.
pub const POLAR_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct HalfSpace2 {
    pub normal: UnitVec,
    pub offset: ExtReal,
}

impl HalfSpace2 {
    pub fn new(normal: UnitVec, offset: ExtReal) -> HalfSpace2 {
        HalfSpace2 { normal, offset }
    }
}

#[derive(Clone, Debug)]
pub struct ConvexSet2 {
    verts: Vec<Vec2>,
    cone: Cone2,
}

impl ConvexSet2 {
    pub fn empty() -> ConvexSet2 {
        ConvexSet2 {
            verts: vec![],
            cone: Cone2::Zero,
        }
    }

    pub fn whole_plane() -> ConvexSet2 {
        ConvexSet2 {
            verts: vec![Vec2::ZERO],
            cone: Cone2::Full,
        }
    }

    pub fn point(p: Vec2) -> ConvexSet2 {
        ConvexSet2 {
            verts: vec![p],
            cone: Cone2::Zero,
        }
    }

    pub fn segment(a: Vec2, b: Vec2) -> ConvexSet2 {
        ConvexSet2::from_points_cone(&[a, b], Cone2::Zero)
    }

    pub fn polytope(pts: &[Vec2]) -> ConvexSet2 {
        ConvexSet2::from_points_cone(pts, Cone2::Zero)
    }

    pub fn cone_at(apex: Vec2, cone: Cone2) -> ConvexSet2 {
        ConvexSet2::from_points_cone(&[apex], cone)
    }

    /// The half-space `{x: <x, normal> <= offset}`.
    pub fn half_space(normal: UnitVec, offset: f64) -> ConvexSet2 {
        ConvexSet2 {
            verts: vec![normal.as_vec() * offset],
            cone: Cone2::HalfPlane {
                start: normal.rot90(),
            },
        }
    }

    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexSet2 {
        ConvexSet2::polytope(&[
            Vec2 { x: x0, y: y0 },
            Vec2 { x: x1, y: y0 },
            Vec2 { x: x1, y: y1 },
            Vec2 { x: x0, y: y1 },
        ])
    }

    pub fn unit_square() -> ConvexSet2 {
        ConvexSet2::rectangle(0.0, 0.0, 1.0, 1.0)
    }

    /// Canonical form of `conv(pts) + cone`. An empty point list is empty.
    pub fn from_points_cone(pts: &[Vec2], cone: Cone2) -> ConvexSet2 {
        if pts.is_empty() {
            return ConvexSet2::empty();
        }
        canonicalize(pts, cone)
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn is_whole_plane(&self) -> bool {
        self.cone.is_full() && !self.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.cone, Cone2::Zero) && !self.is_empty()
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.verts
    }

    pub fn recession(&self) -> &Cone2 {
        &self.cone
    }

    /// Support function `h(A, u) = sup { <x, u> : x in A }`.
    ///
    /// Errors on the empty set: callers must branch on emptiness first.
    pub fn support(&self, u: Vec2) -> Result<ExtReal> {
        if self.is_empty() {
            return Err(domain("support function of the empty set"));
        }
        if !self.cone.in_polar(u, POLAR_TOL) {
            return Ok(ExtReal::PosInf);
        }
        let m = self
            .verts
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(ExtReal::Finite(m))
    }

    /// Finite support value; panics on empty or unbounded direction (tests).
    pub fn support_finite(&self, u: Vec2) -> f64 {
        self.support(u)
            .expect("non-empty set")
            .as_finite()
            .expect("finite support direction")
    }

    pub fn translate(&self, a: Vec2) -> ConvexSet2 {
        if self.is_empty() {
            return ConvexSet2::empty();
        }
        let pts: Vec<Vec2> = self.verts.iter().map(|&v| v + a).collect();
        canonicalize(&pts, self.cone)
    }

    /// Dilation by `c > 0`; the recession cone is unchanged.
    pub fn dilate(&self, c: f64) -> Result<ConvexSet2> {
        if c <= 0.0 || !c.is_finite() {
            return Err(domain(format!("scaling factor {c} must be positive")));
        }
        if self.is_empty() {
            return Ok(ConvexSet2::empty());
        }
        let pts: Vec<Vec2> = self.verts.iter().map(|&v| v * c).collect();
        Ok(canonicalize(&pts, self.cone))
    }

    /// Reflection through the origin.
    pub fn reflect(&self) -> ConvexSet2 {
        if self.is_empty() {
            return ConvexSet2::empty();
        }
        let pts: Vec<Vec2> = self.verts.iter().map(|&v| -v).collect();
        canonicalize(&pts, self.cone.reflect())
    }

    /// Closed Minkowski sum; empty if either summand is empty.
    pub fn minkowski_sum(&self, other: &ConvexSet2) -> ConvexSet2 {
        if self.is_empty() || other.is_empty() {
            return ConvexSet2::empty();
        }
        let cone = Cone2::hull(&self.cone, &other.cone);
        let mut pts = Vec::with_capacity(self.verts.len() * other.verts.len());
        for &a in &self.verts {
            for &b in &other.verts {
                pts.push(a + b);
            }
        }
        canonicalize(&pts, cone)
    }

    /// Closed convex hull of a family of sets.
    pub fn convex_hull(parts: &[ConvexSet2]) -> ConvexSet2 {
        let mut pts = Vec::new();
        let mut cone = Cone2::Zero;
        for p in parts.iter().filter(|p| !p.is_empty()) {
            pts.extend_from_slice(&p.verts);
            cone = Cone2::hull(&cone, &p.cone);
        }
        if pts.is_empty() {
            return ConvexSet2::empty();
        }
        canonicalize(&pts, cone)
    }

    /// Supporting half-spaces whose intersection is exactly this set.
    ///
    /// Empty for the whole plane; callers must branch on the empty set.
    pub fn h_rep(&self) -> Vec<HalfSpace2> {
        assert!(!self.is_empty(), "h_rep of the empty set");
        let hs_at = |n: UnitVec, pts: &[Vec2]| {
            let t = pts.iter().map(|v| n.dot(*v)).fold(f64::NEG_INFINITY, f64::max);
            HalfSpace2::new(n, ExtReal::Finite(t))
        };
        match self.cone {
            Cone2::Full => vec![],
            Cone2::HalfPlane { start } => {
                let g = -start.rot90();
                vec![hs_at(g, &self.verts)]
            }
            Cone2::Line(d) => {
                let n = d.rot90();
                vec![hs_at(n, &self.verts), hs_at(-n, &self.verts)]
            }
            Cone2::Zero => {
                let k = self.verts.len();
                match k {
                    1 => {
                        let axes = [
                            Vec2 { x: 1.0, y: 0.0 },
                            Vec2 { x: 0.0, y: 1.0 },
                            Vec2 { x: -1.0, y: 0.0 },
                            Vec2 { x: 0.0, y: -1.0 },
                        ];
                        axes.iter()
                            .map(|&a| hs_at(UnitVec::new(a).unwrap(), &self.verts))
                            .collect()
                    }
                    2 => {
                        let d = UnitVec::dir(self.verts[1] - self.verts[0]).unwrap();
                        let n = d.rot270();
                        vec![
                            hs_at(n, &self.verts),
                            hs_at(-n, &self.verts),
                            hs_at(d, &self.verts),
                            hs_at(-d, &self.verts),
                        ]
                    }
                    _ => (0..k)
                        .map(|i| {
                            let a = self.verts[i];
                            let b = self.verts[(i + 1) % k];
                            hs_at(UnitVec::dir(b - a).unwrap().rot270(), &self.verts)
                        })
                        .collect(),
                }
            }
            Cone2::Ray(_) | Cone2::Wedge { .. } => {
                let (g1, g2) = polar_arc(&self.cone);
                let mut out = vec![hs_at(g1, &self.verts)];
                for w in self.verts.windows(2) {
                    out.push(hs_at(UnitVec::dir(w[1] - w[0]).unwrap().rot270(), &self.verts));
                }
                out.push(hs_at(g2, &self.verts));
                if self.verts.len() == 1 {
                    if let Cone2::Ray(d) = self.cone {
                        // a lone apex with a ray cone needs a cap to pin it
                        out.push(hs_at(-d, &self.verts));
                    }
                }
                out
            }
        }
    }

    /// Point membership, up to `tol` on every supporting half-space.
    pub fn contains_point(&self, p: Vec2, tol: f64) -> bool {
        if self.is_empty() {
            return false;
        }
        self.h_rep()
            .iter()
            .all(|h| h.normal.dot(p) <= h.offset.to_f64() + tol)
    }
}

/// Boundary rays of the polar cone, in sweep order, for ray/wedge cones.
pub(crate) fn polar_arc(cone: &Cone2) -> (UnitVec, UnitVec) {
    match cone.polar() {
        Cone2::Wedge { start, end } => (start, end),
        Cone2::HalfPlane { start } => (start, -start),
        other => unreachable!("polar_arc of {other:?}"),
    }
}

fn coordinate_scale(pts: &[Vec2]) -> f64 {
    pts.iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max)
}

/// Strict convex hull (no collinear vertices), counterclockwise, starting at
/// the lexicographically smallest point. Returns 1 or 2 points for degenerate
/// inputs.
///
/// The chain itself uses exact turn predicates; near-collinear noise vertices
/// are merged afterwards on the properly ordered cycle, where dropping the
/// middle point of a flat triple is order-independent.
pub fn convex_hull_points(pts: &[Vec2]) -> Vec<Vec2> {
    let scale = coordinate_scale(pts);
    let tol = VERTEX_TOL * scale;
    let mut p: Vec<Vec2> = pts.to_vec();
    p.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    p.dedup_by(|a, b| (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol);
    if p.len() <= 2 {
        if p.len() == 2 {
            // distance dedup on the sorted pair
            if (p[0].x - p[1].x).abs() <= tol && (p[0].y - p[1].y).abs() <= tol {
                p.pop();
            }
        }
        return p;
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 {
            let a = lower[lower.len() - 2];
            let b = lower[lower.len() - 1];
            if (b - a).cross(q - a) <= 0.0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(q);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 {
            let a = upper[upper.len() - 2];
            let b = upper[upper.len() - 1];
            if (b - a).cross(q - a) <= 0.0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        let a = p[0];
        let b = p[p.len() - 1];
        return if (a.x - b.x).abs() <= VERTEX_TOL * scale && (a.y - b.y).abs() <= VERTEX_TOL * scale
        {
            vec![a]
        } else {
            vec![a, b]
        };
    }
    simplify_cycle(lower, VERTEX_TOL.max(COLLINEAR_TOL) * scale)
}

/// Remove vertices of a convex cycle that sit within `dist_tol` of the chord
/// between their neighbours. The test is the distance from the chord (the
/// cross product normalized by the chord length): a raw area test would also
/// flag a far-away point whose two neighbours form a micro-edge, and such
/// sliver triples do arise from clipping noise. Flat points are popped one
/// at a time, stack-style, so clusters collapse to one survivor.
fn simplify_cycle(mut cycle: Vec<Vec2>, dist_tol: f64) -> Vec<Vec2> {
    let flat = |a: Vec2, b: Vec2, v: Vec2| -> bool {
        (b - a).cross(v - b) <= dist_tol * (v - a).norm()
    };
    loop {
        let k = cycle.len();
        if k <= 2 {
            break;
        }
        let mut out: Vec<Vec2> = Vec::with_capacity(k);
        for &v in &cycle {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if flat(a, b, v) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(v);
        }
        // flats across the seam
        while out.len() >= 3 {
            let m = out.len();
            if flat(out[m - 2], out[m - 1], out[0]) {
                out.pop();
                continue;
            }
            if flat(out[m - 1], out[0], out[1]) {
                out.remove(0);
                continue;
            }
            break;
        }
        if out.len() < 2 {
            cycle.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
            let a = cycle[0];
            let b = cycle[cycle.len() - 1];
            return if (a.x - b.x).abs() <= dist_tol && (a.y - b.y).abs() <= dist_tol {
                vec![a]
            } else {
                vec![a, b]
            };
        }
        let stable = out.len() == cycle.len();
        cycle = out;
        if stable {
            break;
        }
    }
    // canonical start at the lexicographic minimum
    if cycle.len() > 2 {
        let start = cycle
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        cycle.rotate_left(start);
    }
    cycle
}

/// Whether the open angular arcs `(a0, a0+asweep)` and `(b0, b0+bsweep)` meet.
fn open_arcs_intersect(a0: f64, asweep: f64, b0: f64, bsweep: f64) -> bool {
    const EPS: f64 = 1e-12;
    if asweep <= EPS || bsweep <= EPS {
        return false;
    }
    let mut d = b0 - a0;
    d -= TAU * (d / TAU).floor();
    d < asweep - EPS || d + bsweep > TAU + EPS
}

fn canonicalize(pts: &[Vec2], cone: Cone2) -> ConvexSet2 {
    debug_assert!(!pts.is_empty());
    match cone {
        Cone2::Full => ConvexSet2 {
            verts: vec![Vec2::ZERO],
            cone,
        },
        Cone2::HalfPlane { start } => {
            let g = -start.rot90();
            let t = pts.iter().map(|p| g.dot(*p)).fold(f64::NEG_INFINITY, f64::max);
            ConvexSet2 {
                verts: vec![g.as_vec() * t],
                cone,
            }
        }
        Cone2::Line(d) => {
            let n = d.rot90();
            let tmin = pts.iter().map(|p| n.dot(*p)).fold(f64::INFINITY, f64::min);
            let tmax = pts.iter().map(|p| n.dot(*p)).fold(f64::NEG_INFINITY, f64::max);
            let scale = coordinate_scale(pts);
            let verts = if (tmax - tmin).abs() <= VERTEX_TOL * scale {
                vec![n.as_vec() * tmin]
            } else {
                vec![n.as_vec() * tmin, n.as_vec() * tmax]
            };
            ConvexSet2 { verts, cone }
        }
        Cone2::Zero => ConvexSet2 {
            verts: convex_hull_points(pts),
            cone,
        },
        Cone2::Ray(_) | Cone2::Wedge { .. } => {
            let hull = convex_hull_points(pts);
            let (g1, g2) = polar_arc(&cone);
            let verts = select_chain(&hull, g1, g2);
            ConvexSet2 { verts, cone }
        }
    }
}

/// Extreme points of `conv(hull) + cone` whose polar arc runs from `g1` to
/// `g2`, ordered so outward normals sweep counterclockwise from `g1` to `g2`.
fn select_chain(hull: &[Vec2], g1: UnitVec, g2: UnitVec) -> Vec<Vec2> {
    let g_start = g1.angle();
    let g_sweep = ccw_angle(g1, g2);
    match hull.len() {
        0 => vec![],
        1 => vec![hull[0]],
        2 => {
            let keep = |a: Vec2, b: Vec2| -> bool {
                // some direction in the closed polar arc exposes `a` over `b`
                let w = a - b;
                let mut best = g1.dot(w).max(g2.dot(w));
                if w.norm() > 0.0 {
                    let wd = UnitVec::dir(w).unwrap();
                    let rel = ccw_angle(g1, wd);
                    if rel <= g_sweep {
                        best = best.max(w.norm());
                    }
                }
                best > 1e-12 * w.norm()
            };
            let ka = keep(hull[0], hull[1]);
            let kb = keep(hull[1], hull[0]);
            match (ka, kb) {
                (true, true) => {
                    // order so the head is the maximizer at g1
                    if g1.dot(hull[0]) >= g1.dot(hull[1]) {
                        vec![hull[0], hull[1]]
                    } else {
                        vec![hull[1], hull[0]]
                    }
                }
                (true, false) => vec![hull[0]],
                (false, true) => vec![hull[1]],
                (false, false) => vec![hull[0]],
            }
        }
        k => {
            // normal arc of vertex i spans the edge normals around it
            let edge_normal = |i: usize| -> f64 {
                let d = hull[(i + 1) % k] - hull[i];
                d.angle() - std::f64::consts::FRAC_PI_2
            };
            let survives: Vec<bool> = (0..k)
                .map(|i| {
                    let prev = edge_normal((i + k - 1) % k);
                    let arc = {
                        let mut s = edge_normal(i) - prev;
                        s -= TAU * (s / TAU).floor();
                        s
                    };
                    open_arcs_intersect(prev, arc, g_start, g_sweep)
                })
                .collect();
            let start = (0..k)
                .find(|&i| survives[i] && !survives[(i + k - 1) % k])
                .unwrap_or_else(|| {
                    // every hull vertex is extreme: anchor the chain at the
                    // vertex whose normal arc contains the first polar ray
                    (0..k)
                        .find(|&i| {
                            let prev = edge_normal((i + k - 1) % k);
                            let mut rel = g_start - prev;
                            rel -= TAU * (rel / TAU).floor();
                            let mut arc = edge_normal(i) - prev;
                            arc -= TAU * (arc / TAU).floor();
                            rel <= arc + 1e-12
                        })
                        .unwrap_or(0)
                });
            let mut chain = Vec::new();
            let mut i = start;
            while survives[i] {
                chain.push(hull[i]);
                i = (i + 1) % k;
                if i == start {
                    break;
                }
            }
            chain
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec2::vec2;

    fn uv(x: f64, y: f64) -> UnitVec {
        UnitVec::dir(vec2(x, y)).unwrap()
    }

    #[test]
    fn square_support() {
        let sq = ConvexSet2::unit_square();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.support_finite(vec2(0.0, 1.0)), 1.0);
        assert_eq!(sq.support_finite(vec2(1.0, 1.0)), 2.0);
        assert_eq!(sq.support_finite(vec2(-1.0, -1.0)), 0.0);
    }

    #[test]
    fn cone_translate_support() {
        // (1,2) + lower quadrant: finite on the upper-right polar cone only
        let a = ConvexSet2::cone_at(vec2(1.0, 2.0), Cone2::lower_quadrant());
        let s = 1.0 / 2f64.sqrt();
        let h = a.support(vec2(s, s)).unwrap();
        assert!((h.as_finite().unwrap() - 3.0 * s).abs() < 1e-12);
        assert_eq!(a.support(vec2(s, -s)).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn canonical_chain_for_ray_cone() {
        let down = Cone2::Ray(uv(0.0, -1.0));
        let a = ConvexSet2::from_points_cone(
            &[vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(1.0, 1.0), vec2(0.0, 1.0)],
            down,
        );
        assert_eq!(a.vertices(), &[vec2(1.0, 1.0), vec2(0.0, 1.0)]);
    }

    #[test]
    fn canonical_chain_absorbs_interior_ray_points() {
        let right = Cone2::Ray(uv(1.0, 0.0));
        let a = ConvexSet2::from_points_cone(&[vec2(0.0, 0.0), vec2(1.0, 0.0)], right);
        assert_eq!(a.vertices(), &[vec2(0.0, 0.0)]);
    }

    #[test]
    fn dilation_examples() {
        let sq = ConvexSet2::unit_square();
        let twice = sq.dilate(2.0).unwrap();
        assert_eq!(twice.vertices(), ConvexSet2::rectangle(0.0, 0.0, 2.0, 2.0).vertices());
        let same = sq.dilate(1.0).unwrap();
        assert_eq!(same.vertices(), sq.vertices());
        let c = Cone2::lower_quadrant();
        let half = ConvexSet2::cone_at(vec2(2.0, 2.0), c).dilate(0.5).unwrap();
        assert_eq!(half.vertices(), &[vec2(1.0, 1.0)]);
        assert!(half.recession().approx_eq(&c, 1e-12));
        assert!(sq.dilate(0.0).is_err());
        assert!(sq.dilate(-1.0).is_err());
    }

    #[test]
    fn minkowski_squares() {
        let sq = ConvexSet2::unit_square();
        let sum = sq.minkowski_sum(&sq);
        let want = ConvexSet2::rectangle(0.0, 0.0, 2.0, 2.0);
        assert_eq!(sum.vertices(), want.vertices());
    }

    #[test]
    fn minkowski_cone_translates() {
        let c = Cone2::lower_quadrant();
        let a = ConvexSet2::cone_at(vec2(1.0, 0.0), c);
        let b = ConvexSet2::cone_at(vec2(0.0, 1.0), c);
        let s = a.minkowski_sum(&b);
        assert_eq!(s.vertices(), &[vec2(1.0, 1.0)]);
        assert!(s.recession().approx_eq(&c, 1e-9));
    }

    #[test]
    fn minkowski_with_empty() {
        let sq = ConvexSet2::unit_square();
        assert!(sq.minkowski_sum(&ConvexSet2::empty()).is_empty());
    }

    #[test]
    fn hull_of_two_squares() {
        let a = ConvexSet2::unit_square();
        let b = a.translate(vec2(2.0, 0.0));
        let h = ConvexSet2::convex_hull(&[a, b]);
        let want = ConvexSet2::rectangle(0.0, 0.0, 3.0, 1.0);
        assert_eq!(h.vertices(), want.vertices());
    }

    #[test]
    fn half_space_member() {
        let h = ConvexSet2::half_space(uv(1.0, 1.0), 0.0);
        assert!(h.contains_point(vec2(-1.0, 0.5), 1e-9));
        assert!(!h.contains_point(vec2(1.0, 1.0), 1e-9));
        // finite along the outward normal, infinite elsewhere
        assert!(h.support(vec2(1.0, 1.0)).unwrap().as_finite().unwrap().abs() < 1e-12);
        assert_eq!(h.support(vec2(1.0, 0.0)).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn ray_h_rep_pins_apex() {
        let a = ConvexSet2::cone_at(vec2(1.0, 2.0), Cone2::Ray(uv(1.0, 0.0)));
        assert!(a.contains_point(vec2(3.0, 2.0), 1e-9));
        assert!(!a.contains_point(vec2(0.5, 2.0), 1e-9));
        assert!(!a.contains_point(vec2(3.0, 2.1), 1e-9));
    }
}
