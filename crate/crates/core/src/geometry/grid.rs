//! Finite direction grids that discretize the unit circle or one of its arcs.

use super::cone::Cone2;
use super::vec2::{ccw_angle, UnitVec, Vec2};
use crate::error::{validation, Result};
use std::f64::consts::TAU;

#[derive(Clone, Debug)]
pub struct DirectionGrid {
    dirs: Vec<UnitVec>,
    restriction: Cone2,
}

impl DirectionGrid {
    /// `n` uniformly spaced directions on the full circle; `n >= 3`.
    pub fn circle(n: usize) -> Result<DirectionGrid> {
        if n < 3 {
            return Err(validation("a full-circle grid needs at least 3 directions"));
        }
        let dirs = (0..n)
            .map(|k| UnitVec::from_angle(TAU * k as f64 / n as f64))
            .collect();
        Ok(DirectionGrid {
            dirs,
            restriction: Cone2::Full,
        })
    }

    /// About `n` directions spread across the arc of `g`, always including
    /// the boundary rays of the arc.
    pub fn in_cone(g: &Cone2, n: usize) -> Result<DirectionGrid> {
        match *g {
            Cone2::Full => DirectionGrid::circle(n.max(3)),
            Cone2::Zero => Err(validation("cannot build a direction grid in the zero cone")),
            Cone2::Ray(d) => Ok(DirectionGrid {
                dirs: vec![d],
                restriction: *g,
            }),
            Cone2::Line(d) => Ok(DirectionGrid {
                dirs: vec![d, -d],
                restriction: *g,
            }),
            Cone2::Wedge { .. } | Cone2::HalfPlane { .. } => {
                let (start, sweep) = match *g {
                    Cone2::Wedge { start, end } => (start, ccw_angle(start, end)),
                    Cone2::HalfPlane { start } => (start, std::f64::consts::PI),
                    _ => unreachable!(),
                };
                let m = n.max(2);
                let a0 = start.angle();
                let dirs = (0..=m)
                    .map(|k| UnitVec::from_angle(a0 + sweep * k as f64 / m as f64))
                    .collect();
                Ok(DirectionGrid {
                    dirs,
                    restriction: *g,
                })
            }
        }
    }

    pub fn dirs(&self) -> &[UnitVec] {
        &self.dirs
    }

    pub fn restriction(&self) -> &Cone2 {
        &self.restriction
    }

    /// Add extra directions (filtered to the restriction, deduplicated),
    /// keeping the grid sorted by angle so reduction order stays fixed.
    pub fn augment(&self, extra: &[Vec2]) -> DirectionGrid {
        let mut dirs = self.dirs.clone();
        for &v in extra {
            if v.norm() == 0.0 {
                continue;
            }
            if !self.restriction.contains_dir(v, 1e-9) {
                continue;
            }
            let u = UnitVec::dir(v).unwrap();
            if !dirs.iter().any(|d| d.same_dir(u)) {
                dirs.push(u);
            }
        }
        let mut g = DirectionGrid {
            dirs,
            restriction: self.restriction,
        };
        g.sort_dedup();
        g
    }

    fn sort_dedup(&mut self) {
        self.dirs.sort_by(|a, b| {
            let (mut x, mut y) = (a.angle(), b.angle());
            if x < 0.0 {
                x += TAU;
            }
            if y < 0.0 {
                y += TAU;
            }
            x.partial_cmp(&y).unwrap()
        });
        self.dirs.dedup_by(|a, b| a.same_dir(*b));
    }
}
