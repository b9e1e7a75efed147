//! Finite probability spaces and scenario-indexed scalars and vectors.

use crate::error::{domain, validation, Result};
use crate::ext::ExtReal;
use crate::geometry::Vec2;
use std::sync::Arc;

/// Probability weights must sum to one within this tolerance; inputs outside
/// it are rejected, not renormalized.
pub const PROB_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioSpace {
    probs: Vec<f64>,
}

impl ScenarioSpace {
    pub fn new(probs: Vec<f64>) -> Result<Arc<ScenarioSpace>> {
        if probs.is_empty() {
            return Err(validation("a scenario space needs at least one scenario"));
        }
        if probs.iter().any(|&p| !p.is_finite() || p <= 0.0) {
            return Err(validation("every scenario weight must be positive"));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(validation(format!(
                "probs sum {}",
                (sum * 1e9).round() / 1e9
            )));
        }
        Ok(Arc::new(ScenarioSpace { probs }))
    }

    pub fn uniform(n: usize) -> Result<Arc<ScenarioSpace>> {
        ScenarioSpace::new(vec![1.0 / n as f64; n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// A scenario-indexed extended-real value; `+inf` allowed, `-inf` never.
#[derive(Clone, Debug)]
pub struct RandomScalar {
    space: Arc<ScenarioSpace>,
    values: Vec<ExtReal>,
}

impl RandomScalar {
    pub fn new(space: Arc<ScenarioSpace>, values: Vec<ExtReal>) -> Result<RandomScalar> {
        if values.len() != space.len() {
            return Err(validation(format!(
                "value count {} does not match scenario count {}",
                values.len(),
                space.len()
            )));
        }
        if values
            .iter()
            .any(|v| matches!(v, ExtReal::Finite(x) if !x.is_finite()))
        {
            return Err(validation("scalar values must be finite or +inf"));
        }
        Ok(RandomScalar { space, values })
    }

    pub fn from_f64s(space: Arc<ScenarioSpace>, values: Vec<f64>) -> Result<RandomScalar> {
        RandomScalar::new(space, values.into_iter().map(ExtReal::Finite).collect())
    }

    pub fn constant(space: Arc<ScenarioSpace>, c: f64) -> Result<RandomScalar> {
        let n = space.len();
        RandomScalar::from_f64s(space, vec![c; n])
    }

    pub fn space(&self) -> &Arc<ScenarioSpace> {
        &self.space
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn is_all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn finite_values(&self) -> Result<Vec<f64>> {
        self.values
            .iter()
            .map(|v| v.as_finite().ok_or_else(|| domain("value is +inf")))
            .collect()
    }

    pub fn expectation(&self) -> ExtReal {
        let mut acc = ExtReal::Finite(0.0);
        for (i, &v) in self.values.iter().enumerate() {
            acc = acc + v.scale(self.space.prob(i));
        }
        acc
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RandomScalar {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                ExtReal::Finite(x) => ExtReal::Finite(f(*x)),
                ExtReal::PosInf => ExtReal::PosInf,
            })
            .collect();
        RandomScalar {
            space: self.space.clone(),
            values,
        }
    }

    /// Lower (left-continuous) `s`-quantile of the induced distribution.
    pub fn quantile(&self, s: f64) -> Result<f64> {
        if !(0.0 < s && s < 1.0) {
            return Err(domain(format!("quantile level {s} must lie in (0,1)")));
        }
        let vals = self.finite_values()?;
        let mut order: Vec<usize> = (0..vals.len()).collect();
        order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
        let mut cum = 0.0;
        for &i in &order {
            cum += self.space.prob(i);
            if cum >= s - PROB_TOL {
                return Ok(vals[i]);
            }
        }
        Ok(vals[*order.last().unwrap()])
    }

    /// Block-wise weighted average, constant on each block of the partition.
    pub fn conditional_expectation(&self, part: &Partition) -> Result<RandomScalar> {
        part.check(self.space.len())?;
        let vals = self.finite_values()?;
        let mut out = vec![0.0; vals.len()];
        for block in part.blocks() {
            let mass: f64 = block.iter().map(|&i| self.space.prob(i)).sum();
            let avg: f64 = block
                .iter()
                .map(|&i| self.space.prob(i) * vals[i])
                .sum::<f64>()
                / mass;
            for &i in block {
                out[i] = avg;
            }
        }
        RandomScalar::from_f64s(self.space.clone(), out)
    }
}

/// A scenario-indexed planar point.
#[derive(Clone, Debug)]
pub struct RandomVector2 {
    space: Arc<ScenarioSpace>,
    points: Vec<Vec2>,
}

impl RandomVector2 {
    pub fn new(space: Arc<ScenarioSpace>, points: Vec<Vec2>) -> Result<RandomVector2> {
        if points.len() != space.len() {
            return Err(validation(format!(
                "point count {} does not match scenario count {}",
                points.len(),
                space.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(validation("points must be finite"));
        }
        Ok(RandomVector2 { space, points })
    }

    pub fn constant(space: Arc<ScenarioSpace>, p: Vec2) -> Result<RandomVector2> {
        let n = space.len();
        RandomVector2::new(space, vec![p; n])
    }

    pub fn space(&self) -> &Arc<ScenarioSpace> {
        &self.space
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn expectation(&self) -> Vec2 {
        let mut acc = Vec2::ZERO;
        for (i, &p) in self.points.iter().enumerate() {
            acc = acc + p * self.space.prob(i);
        }
        acc
    }

    /// The scenario-wise scalar `<xi, u>` for a deterministic direction.
    pub fn dot(&self, u: Vec2) -> RandomScalar {
        let values = self.points.iter().map(|p| ExtReal::Finite(p.dot(u))).collect();
        RandomScalar {
            space: self.space.clone(),
            values,
        }
    }

    pub fn component(&self, axis: usize) -> RandomScalar {
        let values = self
            .points
            .iter()
            .map(|p| ExtReal::Finite(if axis == 0 { p.x } else { p.y }))
            .collect();
        RandomScalar {
            space: self.space.clone(),
            values,
        }
    }

    pub fn translate(&self, a: Vec2) -> RandomVector2 {
        RandomVector2 {
            space: self.space.clone(),
            points: self.points.iter().map(|&p| p + a).collect(),
        }
    }
}

/// Disjoint non-empty blocks of scenario indices covering every scenario.
#[derive(Clone, Debug)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Partition> {
        let p = Partition { blocks };
        p.check(n)?;
        Ok(p)
    }

    pub fn trivial(n: usize) -> Partition {
        Partition {
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn identity(n: usize) -> Partition {
        Partition {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for block in &self.blocks {
            if block.is_empty() {
                return Err(validation("partition blocks must be non-empty"));
            }
            for &i in block {
                if i >= n {
                    return Err(validation(format!("scenario index {i} out of range")));
                }
                if seen[i] {
                    return Err(validation(format!("scenario index {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(validation("partition does not cover all scenarios"));
        }
        Ok(())
    }

    /// All set partitions of `{0, .., n-1}`; intended for small `n` in tests.
    pub fn enumerate_all(n: usize) -> Vec<Partition> {
        fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
            if i == n {
                out.push(Partition {
                    blocks: cur.clone(),
                });
                return;
            }
            for b in 0..cur.len() {
                cur[b].push(i);
                rec(i + 1, n, cur, out);
                cur[b].pop();
            }
            cur.push(vec![i]);
            rec(i + 1, n, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        rec(0, n, &mut Vec::new(), &mut out);
        out
    }
}
