//! Closed convex cones in the plane.
//!
//! A cone is one of: the origin, a single ray, a wedge spanning an angle in
//! `(0, pi)`, a closed half-plane, a line through the origin, or the whole
//! plane. Wedges store their boundary rays in counterclockwise order. Lines
//! arise from operations (e.g. intersecting two opposite half-spaces yields a
//! slab); they are never the declared recession cone of a random set.

use super::vec2::{ccw_angle, UnitVec, Vec2, DIR_TOL};
use crate::error::{validation, Result};
use std::f64::consts::PI;

const ANG_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub enum Cone2 {
    Zero,
    Ray(UnitVec),
    /// Directions swept counterclockwise from `start` to `end`; angle in `(0, pi)`.
    Wedge { start: UnitVec, end: UnitVec },
    /// Directions swept counterclockwise from `start` through `start + pi`.
    HalfPlane { start: UnitVec },
    /// Both directions of a line; the stored direction has angle in `[0, pi)`.
    Line(UnitVec),
    Full,
}

impl Cone2 {
    pub fn wedge(start: UnitVec, end: UnitVec) -> Result<Cone2> {
        let sweep = ccw_angle(start, end);
        if sweep <= ANG_TOL || sweep >= PI - ANG_TOL {
            return Err(validation(format!(
                "wedge angle {sweep} must lie strictly between 0 and pi"
            )));
        }
        Ok(Cone2::Wedge { start, end })
    }

    pub fn line(d: UnitVec) -> Cone2 {
        // canonical representative: angle in [0, pi)
        let v = d.as_vec();
        if v.y < 0.0 || (v.y == 0.0 && v.x < 0.0) {
            Cone2::Line(-d)
        } else {
            Cone2::Line(d)
        }
    }

    /// The lower-left quadrant `{x <= 0, y <= 0}`.
    pub fn lower_quadrant() -> Cone2 {
        Cone2::Wedge {
            start: UnitVec::new(Vec2 { x: -1.0, y: 0.0 }).unwrap(),
            end: UnitVec::new(Vec2 { x: 0.0, y: -1.0 }).unwrap(),
        }
    }

    /// The upper-right quadrant `{x >= 0, y >= 0}`.
    pub fn upper_quadrant() -> Cone2 {
        Cone2::Wedge {
            start: UnitVec::new(Vec2 { x: 1.0, y: 0.0 }).unwrap(),
            end: UnitVec::new(Vec2 { x: 0.0, y: 1.0 }).unwrap(),
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Cone2::Full)
    }

    /// The extreme rays of the cone (empty for `Zero` and `Full`).
    pub fn generators(&self) -> Vec<UnitVec> {
        match *self {
            Cone2::Zero | Cone2::Full => vec![],
            Cone2::Ray(d) => vec![d],
            Cone2::Wedge { start, end } => vec![start, end],
            Cone2::HalfPlane { start } => vec![start, -start],
            Cone2::Line(d) => vec![d, -d],
        }
    }

    /// Generators plus interior witnesses; enough to test convex containment.
    fn witness_dirs(&self) -> Vec<UnitVec> {
        match *self {
            Cone2::HalfPlane { start } => vec![start, -start, start.rot90()],
            Cone2::Wedge { start, end } => {
                let mid = UnitVec::from_angle(start.angle() + ccw_angle(start, end) / 2.0);
                vec![start, end, mid]
            }
            _ => self.generators(),
        }
    }

    /// Whether the direction `d` (any nonzero length) lies in the cone.
    pub fn contains_dir(&self, d: Vec2, tol: f64) -> bool {
        let n = d.norm();
        if n == 0.0 {
            return true;
        }
        let t = tol * n;
        match *self {
            Cone2::Zero => false,
            Cone2::Full => true,
            Cone2::Ray(r) => r.cross(d).abs() <= t && r.dot(d) > 0.0,
            Cone2::Wedge { start, end } => start.cross(d) >= -t && d.cross(end.as_vec()) >= -t,
            Cone2::HalfPlane { start } => start.rot90().dot(d) >= -t,
            Cone2::Line(l) => l.cross(d).abs() <= t,
        }
    }

    /// Whether `u` lies in the polar cone, i.e. `h(C, u) <= 0`.
    pub fn in_polar(&self, u: Vec2, tol: f64) -> bool {
        let n = u.norm();
        if n == 0.0 {
            return true;
        }
        let t = tol * n;
        match *self {
            Cone2::Zero => true,
            Cone2::Full => false,
            Cone2::Ray(d) => d.dot(u) <= t,
            Cone2::Wedge { start, end } => start.dot(u) <= t && end.dot(u) <= t,
            Cone2::HalfPlane { start } => start.dot(u).abs() <= t && start.rot90().dot(u) <= t,
            Cone2::Line(d) => d.dot(u).abs() <= t,
        }
    }

    pub fn polar(&self) -> Cone2 {
        match *self {
            Cone2::Zero => Cone2::Full,
            Cone2::Full => Cone2::Zero,
            Cone2::Ray(d) => Cone2::HalfPlane { start: d.rot90() },
            Cone2::HalfPlane { start } => Cone2::Ray(-start.rot90()),
            Cone2::Wedge { start, end } => Cone2::Wedge {
                start: end.rot90(),
                end: -start.rot90(),
            },
            Cone2::Line(d) => Cone2::line(d.rot90()),
        }
    }

    /// Reflection through the origin.
    pub fn reflect(&self) -> Cone2 {
        match *self {
            Cone2::Zero => Cone2::Zero,
            Cone2::Full => Cone2::Full,
            Cone2::Ray(d) => Cone2::Ray(-d),
            Cone2::Wedge { start, end } => Cone2::Wedge {
                start: -start,
                end: -end,
            },
            Cone2::HalfPlane { start } => Cone2::HalfPlane { start: -start },
            Cone2::Line(d) => Cone2::line(d),
        }
    }

    pub fn contains_cone(&self, other: &Cone2, tol: f64) -> bool {
        if self.is_full() {
            return true;
        }
        other
            .witness_dirs()
            .iter()
            .all(|d| self.contains_dir(d.as_vec(), tol))
            && !(matches!(other, Cone2::Full) && !self.is_full())
    }

    pub fn approx_eq(&self, other: &Cone2, tol: f64) -> bool {
        self.contains_cone(other, tol) && other.contains_cone(self, tol)
    }

    /// Smallest convex cone containing both operands.
    pub fn hull(a: &Cone2, b: &Cone2) -> Cone2 {
        if a.is_full() || b.is_full() {
            return Cone2::Full;
        }
        let mut dirs: Vec<UnitVec> = a.witness_dirs();
        dirs.extend(b.witness_dirs());
        conical_hull(&dirs)
    }
}

/// Convex conical hull of a finite set of directions.
pub fn conical_hull(dirs: &[UnitVec]) -> Cone2 {
    let mut ds: Vec<UnitVec> = Vec::new();
    for &d in dirs {
        if !ds.iter().any(|e| e.same_dir(d)) {
            ds.push(d);
        }
    }
    match ds.len() {
        0 => return Cone2::Zero,
        1 => return Cone2::Ray(ds[0]),
        _ => {}
    }
    // Largest counterclockwise gap between consecutive directions determines
    // the span: dirs fit in an arc of width 2*pi minus that gap.
    let mut angles: Vec<f64> = ds.iter().map(|d| d.angle()).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = angles.len();
    let mut gap_max = 0.0;
    let mut gap_idx = 0usize;
    for i in 0..n {
        let next = angles[(i + 1) % n] + if i + 1 == n { std::f64::consts::TAU } else { 0.0 };
        let gap = next - angles[i];
        if gap > gap_max {
            gap_max = gap;
            gap_idx = i;
        }
    }
    let width = std::f64::consts::TAU - gap_max;
    let start = UnitVec::from_angle(angles[(gap_idx + 1) % n]);
    let end = UnitVec::from_angle(angles[gap_idx]);
    if width <= ANG_TOL {
        Cone2::Ray(start)
    } else if width < PI - ANG_TOL {
        Cone2::Wedge { start, end }
    } else if width <= PI + ANG_TOL {
        // Exactly a straight span: either a genuine half-plane or a line
        // when the directions are all collinear.
        let line = ds
            .iter()
            .all(|d| d.cross(ds[0].as_vec()).abs() <= DIR_TOL * 4.0);
        if line {
            Cone2::line(ds[0])
        } else {
            Cone2::HalfPlane { start }
        }
    } else {
        Cone2::Full
    }
}
