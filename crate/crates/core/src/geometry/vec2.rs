//! Planar vectors and unit directions.

use crate::error::{validation, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance for unit-length and direction-coincidence checks.
pub const DIR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub const fn vec2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn rot90(self) -> Vec2 {
        vec2(-self.y, self.x)
    }

    /// Clockwise rotation by 90 degrees.
    pub fn rot270(self) -> Vec2 {
        vec2(self.y, -self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(self, c: f64) -> Vec2 {
        vec2(c * self.x, c * self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        vec2(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        vec2(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        vec2(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, c: f64) -> Vec2 {
        self.scale(c)
    }
}

/// A unit vector: length one within `DIR_TOL`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitVec(Vec2);

/// Flush negative zeros so `atan2` never flips between the `pi` branches.
fn canon(v: Vec2) -> Vec2 {
    vec2(v.x + 0.0, v.y + 0.0)
}

impl UnitVec {
    /// Accepts a vector already of unit length (within `DIR_TOL`).
    pub fn new(v: Vec2) -> Result<UnitVec> {
        if !v.is_finite() {
            return Err(validation("direction has non-finite coordinates"));
        }
        if (v.norm() - 1.0).abs() > DIR_TOL {
            return Err(validation(format!(
                "direction ({}, {}) is not a unit vector",
                v.x, v.y
            )));
        }
        Ok(UnitVec(canon(v)))
    }

    /// Normalizes a nonzero vector.
    pub fn dir(v: Vec2) -> Result<UnitVec> {
        let n = v.norm();
        if !v.is_finite() || n == 0.0 {
            return Err(validation("cannot normalize a zero or non-finite vector"));
        }
        Ok(UnitVec(canon(vec2(v.x / n, v.y / n))))
    }

    pub fn from_angle(theta: f64) -> UnitVec {
        UnitVec(canon(vec2(theta.cos(), theta.sin())))
    }

    pub fn as_vec(self) -> Vec2 {
        self.0
    }

    pub fn angle(self) -> f64 {
        self.0.angle()
    }

    pub fn dot(self, v: Vec2) -> f64 {
        self.0.dot(v)
    }

    pub fn cross(self, v: Vec2) -> f64 {
        self.0.cross(v)
    }

    pub fn rot90(self) -> UnitVec {
        UnitVec(canon(self.0.rot90()))
    }

    pub fn rot270(self) -> UnitVec {
        UnitVec(canon(self.0.rot270()))
    }

    pub fn same_dir(self, other: UnitVec) -> bool {
        self.0.cross(other.0).abs() <= DIR_TOL && self.0.dot(other.0) > 0.0
    }
}

impl Neg for UnitVec {
    type Output = UnitVec;
    fn neg(self) -> UnitVec {
        UnitVec(canon(-self.0))
    }
}

/// Counterclockwise angle from `a` to `b`, in `[0, 2*pi)`.
pub fn ccw_angle(a: UnitVec, b: UnitVec) -> f64 {
    let mut d = b.angle() - a.angle();
    if d < 0.0 {
        d += std::f64::consts::TAU;
    }
    if d >= std::f64::consts::TAU {
        d -= std::f64::consts::TAU;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_checks() {
        assert!(UnitVec::new(vec2(1.0, 0.0)).is_ok());
        assert!(UnitVec::new(vec2(1.0, 1.0)).is_err());
        let d = UnitVec::dir(vec2(3.0, 4.0)).unwrap();
        assert!((d.as_vec().x - 0.6).abs() < 1e-15);
    }

    #[test]
    fn ccw_wraps() {
        let a = UnitVec::from_angle(3.0);
        let b = UnitVec::from_angle(-3.0);
        let d = ccw_angle(a, b);
        assert!((d - (std::f64::consts::TAU - 6.0)).abs() < 1e-12);
    }
}
