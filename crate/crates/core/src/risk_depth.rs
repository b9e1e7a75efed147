//! Set-valued portfolios, acceptance, risk sets, and data depth of sets.
//!
//! A multivariate position is modelled as a random lower convex set; it is
//! acceptable when the origin belongs to its superlinear expectation, and its
//! risk set is the origin reflection of that expectation. Depth of a convex
//! set against a sample is measured with the geometric parametric families.

use crate::error::{domain, validation, Result};
use crate::geometry::{contains, Cone2, ConvexSet2, UnitVec, Vec2, POLAR_TOL};
use crate::random_set::RandomConvexSet;
use crate::scenario::{RandomVector2, ScenarioSpace};
use crate::set_expectation::{
    parametric_sub, parametric_super, parametric_super_exact, superlinear_reduced_max,
    NonlinearSpec,
};

/// Membership tolerance for acceptance tests.
pub const ACCEPT_TOL: f64 = 1e-9;
/// Containment tolerance inside depth computations.
pub const DEPTH_CONTAIN_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub enum Provenance {
    /// No exchanges: positions are selections of `xi + R_-^2`.
    ConsumptionOnly,
    /// Free exchange and disposal: the half-space `{x: sum x_i <= sum xi_i}`.
    FullExchange,
    /// Exchanges along a wedge cone containing the lower quadrant.
    ConeExchange(Cone2),
}

#[derive(Clone, Debug)]
pub struct Portfolio {
    set: RandomConvexSet,
    provenance: Provenance,
}

impl Portfolio {
    pub fn set(&self) -> &RandomConvexSet {
        &self.set
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Build the random lower set carrying a position.
pub fn make_portfolio(xi: &RandomVector2, mode: Provenance) -> Result<Portfolio> {
    let set = match &mode {
        Provenance::ConsumptionOnly => {
            RandomConvexSet::cone_translates(xi, Cone2::lower_quadrant())?
        }
        Provenance::FullExchange => {
            let n = UnitVec::dir(Vec2 { x: 1.0, y: 1.0 }).unwrap();
            let values: Vec<ConvexSet2> = xi
                .points()
                .iter()
                .map(|p| ConvexSet2::half_space(n, n.dot(*p)))
                .collect();
            let cone = *values[0].recession();
            RandomConvexSet::new(xi.space().clone(), values, cone)?
        }
        Provenance::ConeExchange(k) => {
            if !matches!(k, Cone2::Wedge { .. })
                || !k.contains_cone(&Cone2::lower_quadrant(), POLAR_TOL)
            {
                return Err(domain(
                    "the exchange cone must be a wedge containing the lower quadrant",
                ));
            }
            RandomConvexSet::cone_translates(xi, *k)?
        }
    };
    Ok(Portfolio {
        set,
        provenance: mode,
    })
}

/// A portfolio is acceptable when the origin belongs to its superlinear
/// expectation.
pub fn is_acceptable(p: &Portfolio, spec: &NonlinearSpec) -> Result<bool> {
    let u = superlinear_reduced_max(p.set(), spec)?;
    Ok(u.contains_point(Vec2::ZERO, ACCEPT_TOL))
}

/// The risk of a portfolio: the origin reflection of its superlinear
/// expectation (empty when the expectation is empty).
pub fn risk_set(p: &Portfolio, spec: &NonlinearSpec) -> Result<ConvexSet2> {
    Ok(superlinear_reduced_max(p.set(), spec)?.reflect())
}

/// A sample of observed convex sets, all sharing a recession cone.
#[derive(Clone, Debug)]
pub struct SampleOfSets {
    observations: Vec<ConvexSet2>,
}

impl SampleOfSets {
    pub fn new(observations: Vec<ConvexSet2>) -> Result<SampleOfSets> {
        if observations.is_empty() {
            return Err(validation("a sample needs at least one observation"));
        }
        if observations.iter().any(|o| o.is_empty()) {
            return Err(validation("observations must be non-empty sets"));
        }
        let cone = *observations[0].recession();
        for (i, o) in observations.iter().enumerate() {
            if !o.recession().approx_eq(&cone, POLAR_TOL) {
                return Err(validation(format!(
                    "observation {i} has a different recession cone"
                )));
            }
        }
        Ok(SampleOfSets { observations })
    }

    pub fn observations(&self) -> &[ConvexSet2] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }
}

/// The empirical random set: each observation with equal probability.
pub fn empirical_resample(sample: &SampleOfSets) -> Result<RandomConvexSet> {
    let n = sample.len();
    let space = ScenarioSpace::uniform(n)?;
    let cone = *sample.observations()[0].recession();
    RandomConvexSet::new(space, sample.observations().to_vec(), cone)
}

/// Tuning knobs for the depth computation.
#[derive(Clone, Copy, Debug)]
pub struct DepthParams {
    pub grid_size: usize,
    pub mc_samples: u64,
    pub seed: u64,
    pub contain_tol: f64,
}

impl Default for DepthParams {
    fn default() -> Self {
        DepthParams {
            grid_size: 360,
            mc_samples: 20_000,
            seed: 0,
            contain_tol: DEPTH_CONTAIN_TOL,
        }
    }
}

/// Depth of `f` with respect to the distribution of `x`: the largest
/// `lambda` such that the superlinear family value is inside `f` and `f` is
/// inside the sublinear family value. Bisection over the monotone families,
/// accurate to `lambda_tol`; zero when the sandwich fails everywhere.
pub fn depth(f: &ConvexSet2, x: &RandomConvexSet, lambda_tol: f64) -> Result<f64> {
    depth_with(f, x, lambda_tol, DepthParams::default())
}

pub fn depth_with(
    f: &ConvexSet2,
    x: &RandomConvexSet,
    lambda_tol: f64,
    params: DepthParams,
) -> Result<f64> {
    if f.is_empty() {
        return Err(domain("depth of the empty set is undefined"));
    }
    if !(lambda_tol > 0.0 && lambda_tol < 1.0) {
        return Err(domain("lambda tolerance must lie in (0,1)"));
    }
    let sandwiched = |lambda: f64| -> Result<bool> {
        let upper = parametric_sub(x, lambda, params.grid_size)?;
        if !contains(&upper, f, params.contain_tol) {
            return Ok(false);
        }
        let lower = if x.scenario_count() <= 3 {
            parametric_super_exact(x, lambda)?
        } else {
            parametric_super(x, lambda, params.mc_samples, params.seed)?.set
        };
        Ok(contains(f, &lower, params.contain_tol))
    };
    if sandwiched(1.0)? {
        return Ok(1.0);
    }
    // the families widen as lambda declines, so the predicate is monotone:
    // walk the ladder down to find a bracket, then bisect
    let mut hi = 1.0; // fails
    let mut lo = 0.5;
    loop {
        if sandwiched(lo)? {
            break;
        }
        hi = lo;
        lo *= 0.5;
        if lo < lambda_tol {
            return Ok(0.0);
        }
    }
    while hi - lo > lambda_tol {
        let mid = 0.5 * (lo + hi);
        if sandwiched(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Indices of observations whose leave-one-out depth falls below the
/// threshold. Leave-one-out resampling avoids an outlier masking itself.
///
/// The empirical parametric families approach the sample's support hull and
/// fixed points only as `lambda` vanishes, at a rate set by the sample's
/// dispersion, so the containment slack inside the depth is taken
/// proportional to the largest pairwise Hausdorff distance. A clean sample
/// keeps the plain tolerance.
pub fn flag_outliers(
    sample: &SampleOfSets,
    spec: &NonlinearSpec,
    threshold: f64,
) -> Result<Vec<usize>> {
    if sample.len() < 2 {
        return Ok(vec![]);
    }
    for o in sample.observations() {
        if !o.recession().contains_cone(spec.cone(), POLAR_TOL) {
            return Err(domain(
                "observations are not closed under the expectation's cone",
            ));
        }
    }
    let mut spread = 0.0f64;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            spread = spread.max(crate::geometry::hausdorff(
                &sample.observations()[i],
                &sample.observations()[j],
            )?);
        }
    }
    let params = DepthParams {
        contain_tol: DEPTH_CONTAIN_TOL + 0.05 * spread,
        ..DepthParams::default()
    };
    let mut flagged = Vec::new();
    for i in 0..sample.len() {
        let rest: Vec<ConvexSet2> = sample
            .observations()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, o)| o.clone())
            .collect();
        let x = empirical_resample(&SampleOfSets::new(rest)?)?;
        let d = depth_with(&sample.observations()[i], &x, 1e-3, params)?;
        if d < threshold {
            flagged.push(i);
        }
    }
    Ok(flagged)
}
