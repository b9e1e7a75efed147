//! Scalar sublinear and superlinear expectations generated by representing
//! density families on a finite scenario space.
//!
//! A representing family M is a set of nonnegative densities with unit mean;
//! `e` is the supremum and `u` the infimum of the reweighted expectations
//! E(gamma * beta) over M. On finite spaces both have exact closed forms, and
//! `extreme_densities` enumerates the vertices of M as an independent oracle.

use crate::error::{capacity, domain, validation, Result};
use crate::ext::ExtReal;
use crate::scenario::{RandomScalar, ScenarioSpace};

/// Scenario-count guard for the vertex-enumeration oracle.
pub const ORACLE_MAX_SCENARIOS: usize = 12;
/// Tighter guard for the permutation-based family of `MaxOfN`.
pub const ORACLE_MAX_SCENARIOS_PERMUTATION: usize = 8;

#[derive(Clone, Debug)]
pub enum RepresentingFamily {
    /// The single density 1: plain expectation.
    Expectation,
    /// Densities bounded by `1/alpha`: average value-at-risk at level alpha.
    Avar { alpha: f64 },
    /// The family generating the expected maximum of `n` i.i.d. copies.
    MaxOfN { n: u32 },
    /// Scenario-wise density bounds `lower <= gamma <= upper`.
    DensityBand { lower: Vec<f64>, upper: Vec<f64> },
}

impl RepresentingFamily {
    pub fn avar(alpha: f64) -> Result<RepresentingFamily> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(validation(format!("avar level {alpha} must lie in (0,1]")));
        }
        Ok(RepresentingFamily::Avar { alpha })
    }

    pub fn max_of_n(n: u32) -> Result<RepresentingFamily> {
        if n < 1 {
            return Err(validation("max-of-n needs n >= 1"));
        }
        Ok(RepresentingFamily::MaxOfN { n })
    }

    pub fn density_band(
        space: &ScenarioSpace,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<RepresentingFamily> {
        if lower.len() != space.len() || upper.len() != space.len() {
            return Err(validation("density band length mismatch"));
        }
        for i in 0..lower.len() {
            if !(0.0 <= lower[i] && lower[i] <= upper[i]) {
                return Err(validation(format!(
                    "density band must satisfy 0 <= lower <= upper at scenario {i}"
                )));
            }
        }
        let lo: f64 = lower.iter().zip(space.probs()).map(|(l, w)| l * w).sum();
        let hi: f64 = upper.iter().zip(space.probs()).map(|(u, w)| u * w).sum();
        if lo > 1.0 + 1e-12 || hi < 1.0 - 1e-12 {
            return Err(validation(
                "density band admits no density with unit mean",
            ));
        }
        Ok(RepresentingFamily::DensityBand { lower, upper })
    }

    /// Whether the constant density 1 belongs to the family.
    pub fn unit_density_feasible(&self, space: &ScenarioSpace) -> bool {
        match self {
            RepresentingFamily::Expectation
            | RepresentingFamily::Avar { .. }
            | RepresentingFamily::MaxOfN { .. } => true,
            RepresentingFamily::DensityBand { lower, upper } => {
                let _ = space;
                lower.iter().all(|&l| l <= 1.0 + 1e-12)
                    && upper.iter().all(|&u| u >= 1.0 - 1e-12)
            }
        }
    }

    /// Whether the family depends on scenario values only through the law.
    pub fn is_law_invariant(&self) -> bool {
        !matches!(self, RepresentingFamily::DensityBand { .. })
    }
}

/// Values sorted ascending with their probabilities.
fn sorted_masses(beta: &RandomScalar) -> Result<Vec<(f64, f64)>> {
    let vals = beta.finite_values()?;
    let space = beta.space();
    let mut pairs: Vec<(f64, f64)> = vals
        .iter()
        .zip(space.probs())
        .map(|(&v, &w)| (v, w))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(pairs)
}

/// Average of the upper-`alpha` tail of the distribution (top quantiles).
fn avar_upper(beta: &RandomScalar, alpha: f64) -> Result<f64> {
    let mut pairs = sorted_masses(beta)?;
    pairs.reverse();
    let mut left = alpha;
    let mut acc = 0.0;
    for (v, w) in pairs {
        let take = w.min(left);
        acc += take * v;
        left -= take;
        if left <= 1e-15 {
            break;
        }
    }
    Ok(acc / alpha)
}

/// Average of the lower-`alpha` tail.
fn avar_lower(beta: &RandomScalar, alpha: f64) -> Result<f64> {
    let pairs = sorted_masses(beta)?;
    let mut left = alpha;
    let mut acc = 0.0;
    for (v, w) in pairs {
        let take = w.min(left);
        acc += take * v;
        left -= take;
        if left <= 1e-15 {
            break;
        }
    }
    Ok(acc / alpha)
}

/// Exact `E max` of `n` i.i.d. copies via distribution-function powers.
fn max_of_n_value(beta: &RandomScalar, n: u32) -> Result<f64> {
    let pairs = sorted_masses(beta)?;
    let mut acc = 0.0;
    let mut f_prev = 0.0f64;
    let mut i = 0;
    while i < pairs.len() {
        let v = pairs[i].0;
        let mut w = 0.0;
        while i < pairs.len() && pairs[i].0 == v {
            w += pairs[i].1;
            i += 1;
        }
        let f = (f_prev + w).min(1.0);
        acc += v * (f.powi(n as i32) - f_prev.powi(n as i32));
        f_prev = f;
    }
    Ok(acc)
}

/// Exact `E min` of `n` i.i.d. copies via survival-function powers.
fn min_of_n_value(beta: &RandomScalar, n: u32) -> Result<f64> {
    let neg = beta.map(|x| -x);
    Ok(-max_of_n_value(&neg, n)?)
}

/// Greedy solution of `max E(gamma beta)` over the band `lower<=gamma<=upper`
/// with `E gamma = 1`; set `sign = -1` for the minimum.
fn band_value(
    beta: &RandomScalar,
    lower: &[f64],
    upper: &[f64],
    maximize: bool,
) -> Result<f64> {
    let vals = beta.finite_values()?;
    let w = beta.space().probs();
    let mut gamma: Vec<f64> = lower.to_vec();
    let mut budget = 1.0 - gamma.iter().zip(w).map(|(g, w)| g * w).sum::<f64>();
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    if maximize {
        order.reverse();
    }
    for i in order {
        if budget <= 1e-15 {
            break;
        }
        let room = (upper[i] - lower[i]).min(budget / w[i]);
        gamma[i] += room;
        budget -= room * w[i];
    }
    Ok(gamma
        .iter()
        .zip(w)
        .zip(&vals)
        .map(|((g, w), v)| g * w * v)
        .sum())
}

/// Sublinear value `e(beta) = sup { E(gamma beta) : gamma in M, E gamma = 1 }`.
///
/// Any `+inf` input propagates to `+inf`.
pub fn e_value(family: &RepresentingFamily, beta: &RandomScalar) -> Result<ExtReal> {
    if !beta.is_all_finite() {
        return Ok(ExtReal::PosInf);
    }
    let v = match family {
        RepresentingFamily::Expectation => beta.expectation().as_finite().unwrap(),
        RepresentingFamily::Avar { alpha } => avar_upper(beta, *alpha)?,
        RepresentingFamily::MaxOfN { n } => max_of_n_value(beta, *n)?,
        RepresentingFamily::DensityBand { lower, upper } => {
            band_value(beta, lower, upper, true)?
        }
    };
    Ok(ExtReal::Finite(v))
}

/// Superlinear value `u(beta) = inf { E(gamma beta) : gamma in M, E gamma = 1 }`.
pub fn u_value(family: &RepresentingFamily, beta: &RandomScalar) -> Result<f64> {
    if !beta.is_all_finite() {
        return Err(domain("superlinear expectation of a +inf value"));
    }
    match family {
        RepresentingFamily::Expectation => Ok(beta.expectation().as_finite().unwrap()),
        RepresentingFamily::Avar { alpha } => avar_lower(beta, *alpha),
        RepresentingFamily::MaxOfN { n } => min_of_n_value(beta, *n),
        RepresentingFamily::DensityBand { lower, upper } => {
            band_value(beta, lower, upper, false)
        }
    }
}

/// Allocation-free `u` over raw slices for hot search loops; `scratch` is a
/// reusable sort buffer. Values must be finite.
pub(crate) fn u_slice(
    family: &RepresentingFamily,
    probs: &[f64],
    vals: &[f64],
    scratch: &mut Vec<(f64, f64)>,
) -> f64 {
    scratch.clear();
    scratch.extend(vals.iter().zip(probs).map(|(&v, &w)| (v, w)));
    scratch.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    match family {
        RepresentingFamily::Expectation => scratch.iter().map(|(v, w)| v * w).sum(),
        RepresentingFamily::Avar { alpha } => {
            let mut left = *alpha;
            let mut acc = 0.0;
            for &(v, w) in scratch.iter() {
                let take = w.min(left);
                acc += take * v;
                left -= take;
                if left <= 1e-15 {
                    break;
                }
            }
            acc / alpha
        }
        RepresentingFamily::MaxOfN { n } => {
            // E min of n i.i.d. copies via survival powers
            let mut acc = 0.0;
            let mut s_prev = 1.0f64;
            let mut i = 0;
            while i < scratch.len() {
                let v = scratch[i].0;
                let mut w = 0.0;
                while i < scratch.len() && scratch[i].0 == v {
                    w += scratch[i].1;
                    i += 1;
                }
                let s = (s_prev - w).max(0.0);
                acc += v * (s_prev.powi(*n as i32) - s.powi(*n as i32));
                s_prev = s;
            }
            acc
        }
        RepresentingFamily::DensityBand { lower, upper } => {
            let mut acc: f64 = lower
                .iter()
                .zip(probs)
                .zip(vals)
                .map(|((l, w), v)| l * w * v)
                .sum();
            let mut budget = 1.0 - lower.iter().zip(probs).map(|(l, w)| l * w).sum::<f64>();
            let mut order: Vec<usize> = (0..vals.len()).collect();
            order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
            for i in order {
                if budget <= 1e-15 {
                    break;
                }
                let room = (upper[i] - lower[i]).min(budget / probs[i]);
                acc += room * probs[i] * vals[i];
                budget -= room * probs[i];
            }
            acc
        }
    }
}

fn push_dedup(out: &mut Vec<Vec<f64>>, cand: Vec<f64>) {
    if !out
        .iter()
        .any(|g| g.iter().zip(&cand).all(|(a, b)| (a - b).abs() <= 1e-9))
    {
        out.push(cand);
    }
}

/// Vertices of the band polytope `{lower <= gamma <= upper, E gamma = 1}`:
/// all but one coordinate sit at a bound.
fn band_vertices(space: &ScenarioSpace, lower: &[f64], upper: &[f64]) -> Vec<Vec<f64>> {
    let n = space.len();
    let w = space.probs();
    let mut out = Vec::new();
    for frac in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != frac).collect();
        for mask in 0u64..(1u64 << others.len()) {
            let mut gamma = vec![0.0; n];
            let mut mass = 0.0;
            for (bit, &i) in others.iter().enumerate() {
                gamma[i] = if mask >> bit & 1 == 1 { upper[i] } else { lower[i] };
                mass += gamma[i] * w[i];
            }
            let g = (1.0 - mass) / w[frac];
            if g >= lower[frac] - 1e-9 && g <= upper[frac] + 1e-9 {
                gamma[frac] = g.clamp(lower[frac], upper[frac]);
                push_dedup(&mut out, gamma);
            }
        }
    }
    out
}

/// Permutation densities of a distortion `g`: sorted along each scenario
/// order, the density takes the increments of `g` over the cumulated mass.
fn distortion_vertices(space: &ScenarioSpace, g: impl Fn(f64) -> f64) -> Vec<Vec<f64>> {
    let n = space.len();
    let w = space.probs();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p: &[usize]| {
        let mut gamma = vec![0.0; n];
        let mut cum = 0.0;
        for &i in p {
            let next = (cum + w[i]).min(1.0);
            gamma[i] = (g(next) - g(cum)) / w[i];
            cum = next;
        }
        push_dedup(&mut out, gamma);
    });
    out
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// All vertices of the density polytope `{gamma in M, E gamma = 1}`.
///
/// `e_value` equals the maximum of `E(gamma beta)` over this list and
/// `u_value` the minimum. Guarded by `ORACLE_MAX_SCENARIOS`.
pub fn extreme_densities(
    family: &RepresentingFamily,
    space: &ScenarioSpace,
) -> Result<Vec<Vec<f64>>> {
    let n = space.len();
    if n > ORACLE_MAX_SCENARIOS {
        return Err(capacity(format!(
            "extreme densities limited to {ORACLE_MAX_SCENARIOS} scenarios, got {n}"
        )));
    }
    match family {
        RepresentingFamily::Expectation => Ok(vec![vec![1.0; n]]),
        RepresentingFamily::Avar { alpha } => {
            let lower = vec![0.0; n];
            let upper = vec![1.0 / alpha; n];
            Ok(band_vertices(space, &lower, &upper))
        }
        RepresentingFamily::DensityBand { lower, upper } => {
            Ok(band_vertices(space, lower, upper))
        }
        RepresentingFamily::MaxOfN { n: m } => {
            if n > ORACLE_MAX_SCENARIOS_PERMUTATION {
                return Err(capacity(format!(
                    "max-of-n extreme densities limited to {ORACLE_MAX_SCENARIOS_PERMUTATION} scenarios, got {n}"
                )));
            }
            let m = *m as i32;
            Ok(distortion_vertices(space, |t| {
                1.0 - (1.0 - t).powi(m)
            }))
        }
    }
}

/// The geometric compound transform `G(F) = lambda F / (1 - (1-lambda) F)`,
/// the distribution function of the running maximum over a geometric number
/// of i.i.d. draws.
fn geometric_transform(lambda: f64, f: f64) -> f64 {
    lambda * f / (1.0 - (1.0 - lambda) * f)
}

/// `E[max(beta_1, .., beta_N)]` for `N` geometric with success rate lambda.
pub fn geometric_max_expectation(beta: &RandomScalar, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(domain(format!("lambda {lambda} must lie in (0,1]")));
    }
    let pairs = sorted_masses(beta)?;
    let mut acc = 0.0;
    let mut f_prev = 0.0f64;
    let mut i = 0;
    while i < pairs.len() {
        let v = pairs[i].0;
        let mut w = 0.0;
        while i < pairs.len() && pairs[i].0 == v {
            w += pairs[i].1;
            i += 1;
        }
        let f = (f_prev + w).min(1.0);
        acc += v * (geometric_transform(lambda, f) - geometric_transform(lambda, f_prev));
        f_prev = f;
    }
    Ok(acc)
}

/// Survival-side companion: `E[min(beta_1, .., beta_N)]`.
pub fn geometric_min_expectation(beta: &RandomScalar, lambda: f64) -> Result<f64> {
    let neg = beta.map(|x| -x);
    Ok(-geometric_max_expectation(&neg, lambda)?)
}
