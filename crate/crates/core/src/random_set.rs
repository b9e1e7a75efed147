//! Scenario-indexed convex sets and the linear (selection) expectation.

use crate::error::{domain, validation, Result};
use crate::ext::ExtReal;
use crate::geometry::{intersect_sets, Cone2, ConvexSet2, DirectionGrid, Vec2, POLAR_TOL};
use crate::scenario::{Partition, RandomScalar, RandomVector2, ScenarioSpace};
use std::sync::Arc;

/// A random closed convex set: one non-empty value per scenario, each closed
/// under addition of the declared cone `C`.
#[derive(Clone, Debug)]
pub struct RandomConvexSet {
    space: Arc<ScenarioSpace>,
    values: Vec<ConvexSet2>,
    cone: Cone2,
}

impl RandomConvexSet {
    pub fn new(
        space: Arc<ScenarioSpace>,
        values: Vec<ConvexSet2>,
        cone: Cone2,
    ) -> Result<RandomConvexSet> {
        if values.len() != space.len() {
            return Err(validation(format!(
                "value count {} does not match scenario count {}",
                values.len(),
                space.len()
            )));
        }
        if cone.is_full() {
            return Err(validation("the declared cone must differ from the plane"));
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_empty() {
                return Err(validation(format!(
                    "scenario {i} value is empty; random sets are almost surely non-empty"
                )));
            }
            if !v.recession().contains_cone(&cone, POLAR_TOL) {
                return Err(validation(format!(
                    "scenario {i} value is not closed under the declared cone"
                )));
            }
        }
        Ok(RandomConvexSet {
            space,
            values,
            cone,
        })
    }

    pub fn deterministic(space: Arc<ScenarioSpace>, value: ConvexSet2) -> Result<RandomConvexSet> {
        let cone = *value.recession();
        let n = space.len();
        RandomConvexSet::new(space, vec![value; n], cone)
    }

    /// The random set `xi + C` of cone translates.
    pub fn cone_translates(xi: &RandomVector2, cone: Cone2) -> Result<RandomConvexSet> {
        let values = xi
            .points()
            .iter()
            .map(|&p| ConvexSet2::cone_at(p, cone))
            .collect();
        RandomConvexSet::new(xi.space().clone(), values, cone)
    }

    pub fn space(&self) -> &Arc<ScenarioSpace> {
        &self.space
    }

    pub fn values(&self) -> &[ConvexSet2] {
        &self.values
    }

    pub fn cone(&self) -> &Cone2 {
        &self.cone
    }

    pub fn scenario_count(&self) -> usize {
        self.space.len()
    }

    /// Support function evaluated at a scenario-wise direction.
    pub fn support_rv(&self, zeta: &RandomVector2) -> Result<RandomScalar> {
        if zeta.space().len() != self.space.len() {
            return Err(validation("direction vector lives on a different space"));
        }
        let values: Result<Vec<ExtReal>> = self
            .values
            .iter()
            .zip(zeta.points())
            .map(|(v, &u)| v.support(u))
            .collect();
        RandomScalar::new(self.space.clone(), values?)
    }

    /// Support function at a deterministic direction.
    pub fn support_at(&self, u: Vec2) -> Result<RandomScalar> {
        let values: Result<Vec<ExtReal>> = self.values.iter().map(|v| v.support(u)).collect();
        RandomScalar::new(self.space.clone(), values?)
    }

    /// Facet normals of every scenario value (plus polar boundary rays);
    /// these are the directions where scenario support functions kink.
    pub fn facet_normals(&self) -> Vec<Vec2> {
        let mut out = Vec::new();
        for v in &self.values {
            out.extend(v.h_rep().iter().map(|h| h.normal.as_vec()));
        }
        out.extend(
            self.cone
                .polar()
                .generators()
                .iter()
                .map(|u| u.as_vec()),
        );
        out
    }

    /// Directions where two scenario support functions cross, i.e. where a
    /// law-dependent reweighting (which sorts scenarios by support value)
    /// kinks. On a fan cell two supports are exposed by single vertices, so
    /// their difference vanishes perpendicular to the vertex difference.
    pub fn support_crossing_dirs(&self) -> Vec<Vec2> {
        let mut out = Vec::new();
        let n = self.values.len();
        for i in 0..n {
            for j in i + 1..n {
                for &va in self.values[i].vertices() {
                    for &vb in self.values[j].vertices() {
                        let w = va - vb;
                        if w.norm() > 0.0 {
                            out.push(w.rot90());
                            out.push(-w.rot90());
                        }
                    }
                }
            }
        }
        out
    }

    /// The probability-weighted Minkowski average of the scenario values;
    /// exact on vertex data, so `h(E X, u) = E h(X, u)` identically.
    pub fn selection_expectation(&self) -> ConvexSet2 {
        weighted_minkowski_average(
            self.space.probs(),
            &self.values.iter().collect::<Vec<_>>(),
        )
    }

    /// Block-wise selection expectation, constant on each partition block.
    pub fn conditional_selection_expectation(&self, part: &Partition) -> Result<RandomConvexSet> {
        part.check(self.space.len())?;
        let mut values = vec![ConvexSet2::empty(); self.space.len()];
        for block in part.blocks() {
            let mass: f64 = block.iter().map(|&i| self.space.prob(i)).sum();
            let w: Vec<f64> = block.iter().map(|&i| self.space.prob(i) / mass).collect();
            let sets: Vec<&ConvexSet2> = block.iter().map(|&i| &self.values[i]).collect();
            let avg = weighted_minkowski_average(&w, &sets);
            for &i in block {
                values[i] = avg.clone();
            }
        }
        RandomConvexSet::new(self.space.clone(), values, self.cone)
    }

    /// Firey `p`-expectation: the set whose support is the `p`-mean of the
    /// scenario supports. Requires `0 in X` almost surely so supports are
    /// nonnegative; reconstructed by half-space intersection on a grid
    /// augmented with every scenario facet normal.
    pub fn firey_expectation(&self, p: f64) -> Result<ConvexSet2> {
        if p < 1.0 || !p.is_finite() {
            return Err(domain(format!("firey exponent {p} must satisfy p >= 1")));
        }
        for (i, v) in self.values.iter().enumerate() {
            if !v.contains_point(Vec2::ZERO, 1e-9) {
                return Err(domain(format!(
                    "firey expectation requires 0 in X almost surely; scenario {i} fails"
                )));
            }
        }
        let g = self.cone.polar();
        let grid = DirectionGrid::in_cone(&g, 720)?.augment(&self.facet_normals());
        let mut hs = Vec::with_capacity(grid.dirs().len());
        for &u in grid.dirs() {
            let sup = self.support_at(u.as_vec())?;
            let mut acc = 0.0f64;
            let mut finite = true;
            for (i, v) in sup.values().iter().enumerate() {
                match v.as_finite() {
                    Some(x) => {
                        if x < -1e-9 {
                            return Err(domain(
                                "negative support encountered in Firey expectation",
                            ));
                        }
                        acc += self.space.prob(i) * x.max(0.0).powf(p);
                    }
                    None => {
                        finite = false;
                        break;
                    }
                }
            }
            let offset = if finite {
                ExtReal::Finite(acc.powf(1.0 / p))
            } else {
                ExtReal::PosInf
            };
            hs.push(crate::geometry::HalfSpace2::new(u, offset));
        }
        Ok(crate::geometry::intersect_halfspaces(&hs))
    }

    /// The set of fixed points: the intersection of all scenario values.
    pub fn fixed_points(&self) -> ConvexSet2 {
        intersect_sets(&self.values)
    }

    /// Closed convex hull of the union of the scenario values.
    ///
    /// The support of a random set need not be convex; expectations take
    /// values among convex sets, so the hull is returned.
    pub fn support_set(&self) -> ConvexSet2 {
        ConvexSet2::convex_hull(&self.values)
    }
}

/// Exact weighted Minkowski combination `sum_i w_i A_i` (all `w_i > 0`).
pub fn weighted_minkowski_average(weights: &[f64], sets: &[&ConvexSet2]) -> ConvexSet2 {
    debug_assert_eq!(weights.len(), sets.len());
    let mut acc: Option<ConvexSet2> = None;
    for (&w, &s) in weights.iter().zip(sets) {
        let term = s.dilate(w).expect("weights are positive");
        acc = Some(match acc {
            None => term,
            Some(a) => a.minkowski_sum(&term),
        });
    }
    acc.unwrap_or_else(ConvexSet2::empty)
}

/// The selection expectation of the reweighted set `gamma X`:
/// `sum_i w_i gamma_i X_i`, where a zero coefficient contributes `{0}`.
pub fn reweighted_expectation(x: &RandomConvexSet, gamma: &[f64]) -> ConvexSet2 {
    debug_assert_eq!(gamma.len(), x.scenario_count());
    let mut acc: Option<ConvexSet2> = None;
    for (i, &g) in gamma.iter().enumerate() {
        let c = x.space().prob(i) * g;
        if c <= 1e-15 {
            continue; // the term {0} is the Minkowski identity
        }
        let term = x.values()[i].dilate(c).unwrap();
        acc = Some(match acc {
            None => term,
            Some(a) => a.minkowski_sum(&term),
        });
    }
    acc.unwrap_or_else(|| ConvexSet2::point(Vec2::ZERO))
}

/// A random point lying in the random set at every scenario.
#[derive(Clone, Debug)]
pub struct Selection {
    vector: RandomVector2,
}

impl Selection {
    pub fn new(x: &RandomConvexSet, vector: RandomVector2, tol: f64) -> Result<Selection> {
        if vector.space().len() != x.space().len() {
            return Err(validation("selection lives on a different space"));
        }
        for (i, (&p, v)) in vector.points().iter().zip(x.values()).enumerate() {
            if !v.contains_point(p, tol) {
                return Err(validation(format!(
                    "selection point at scenario {i} lies outside the set"
                )));
            }
        }
        Ok(Selection { vector })
    }

    pub fn vector(&self) -> &RandomVector2 {
        &self.vector
    }
}
