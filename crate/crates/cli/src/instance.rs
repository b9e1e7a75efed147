//! JSON instance schema: scenario weights plus named random sets, vectors,
//! scalars, deterministic shapes, a sample, and family parameters.

use serde::{Deserialize, Serialize};
use setexp::error::{validation, Error, Result};
use setexp::geometry::{vec2, Cone2, ConvexSet2, UnitVec, Vec2};
use setexp::{RandomConvexSet, RandomScalar, RandomVector2, RepresentingFamily, ScenarioSpace};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeRepr {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dirs: Vec<[f64; 2]>,
}

impl ConeRepr {
    pub fn to_cone(&self, path: &str) -> Result<Cone2> {
        let dir = |i: usize| -> Result<UnitVec> {
            let d = self
                .dirs
                .get(i)
                .ok_or_else(|| validation(format!("{path}: cone kind {} needs a direction", self.kind)))?;
            UnitVec::dir(vec2(d[0], d[1]))
                .map_err(|e| validation(format!("{path}: {e}")))
        };
        match self.kind.as_str() {
            "zero" => Ok(Cone2::Zero),
            "full" => Ok(Cone2::Full),
            "ray" => Ok(Cone2::Ray(dir(0)?)),
            "line" => Ok(Cone2::line(dir(0)?)),
            "halfplane" => Ok(Cone2::HalfPlane { start: dir(0)? }),
            "wedge" => Cone2::wedge(dir(0)?, dir(1)?)
                .map_err(|e| validation(format!("{path}: {e}"))),
            other => Err(validation(format!("{path}: unknown cone kind \"{other}\""))),
        }
    }

    pub fn from_cone(cone: &Cone2) -> ConeRepr {
        let d = |u: &UnitVec| [u.as_vec().x, u.as_vec().y];
        match cone {
            Cone2::Zero => ConeRepr {
                kind: "zero".into(),
                dirs: vec![],
            },
            Cone2::Full => ConeRepr {
                kind: "full".into(),
                dirs: vec![],
            },
            Cone2::Ray(u) => ConeRepr {
                kind: "ray".into(),
                dirs: vec![d(u)],
            },
            Cone2::Line(u) => ConeRepr {
                kind: "line".into(),
                dirs: vec![d(u)],
            },
            Cone2::HalfPlane { start } => ConeRepr {
                kind: "halfplane".into(),
                dirs: vec![d(start)],
            },
            Cone2::Wedge { start, end } => ConeRepr {
                kind: "wedge".into(),
                dirs: vec![d(start), d(end)],
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetRepr {
    #[serde(default, skip_serializing_if = "is_false")]
    pub empty: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeRepr>,
}

fn is_false(b: &bool) -> bool {
    !b
}

impl SetRepr {
    pub fn to_set(&self, path: &str) -> Result<ConvexSet2> {
        if self.empty {
            return Ok(ConvexSet2::empty());
        }
        if self.vertices.is_empty() {
            return Err(validation(format!(
                "{path}: a non-empty set needs at least one vertex"
            )));
        }
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| vec2(v[0], v[1])).collect();
        if pts.iter().any(|p| !p.is_finite()) {
            return Err(validation(format!("{path}: vertex is not finite")));
        }
        let cone = match &self.cone {
            Some(c) => c.to_cone(path)?,
            None => Cone2::Zero,
        };
        Ok(ConvexSet2::from_points_cone(&pts, cone))
    }

    pub fn from_set(set: &ConvexSet2) -> SetRepr {
        if set.is_empty() {
            return SetRepr {
                empty: true,
                vertices: vec![],
                cone: None,
            };
        }
        SetRepr {
            empty: false,
            vertices: set.vertices().iter().map(|v| [v.x, v.y]).collect(),
            cone: Some(ConeRepr::from_cone(set.recession())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDef {
    pub cone: ConeRepr,
    pub values: Vec<SetRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FamilyDoc {
    #[serde(rename = "expectation")]
    Expectation,
    #[serde(rename = "avar")]
    Avar { alpha: f64 },
    #[serde(rename = "max_of_n")]
    MaxOfN { n: u32 },
    #[serde(rename = "density_band")]
    DensityBand { lower: Vec<f64>, upper: Vec<f64> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub probs: Vec<f64>,
    #[serde(default)]
    pub sets: BTreeMap<String, SetDef>,
    #[serde(default)]
    pub vectors: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(default)]
    pub scalars: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    pub shapes: BTreeMap<String, SetRepr>,
    #[serde(default)]
    pub sample: Vec<SetRepr>,
    #[serde(default)]
    pub family: Option<FamilyDoc>,
    #[serde(default)]
    pub exchange_cone: Option<ConeRepr>,
    #[serde(default)]
    pub grid_size: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A fully validated instance.
pub struct Instance {
    pub sets: BTreeMap<String, RandomConvexSet>,
    pub vectors: BTreeMap<String, RandomVector2>,
    pub scalars: BTreeMap<String, RandomScalar>,
    pub shapes: BTreeMap<String, ConvexSet2>,
    pub sample: Vec<ConvexSet2>,
    pub family: RepresentingFamily,
    pub exchange_cone: Option<Cone2>,
    pub grid_size: usize,
    pub seed: u64,
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)
        .map_err(|e| Error::Validation(format!("parse error: {e}")))?;
    let space = ScenarioSpace::new(doc.probs)?;
    let n = space.len();

    let mut sets = BTreeMap::new();
    for (name, def) in &doc.sets {
        let cone = def.cone.to_cone(&format!("sets.{name}.cone"))?;
        if def.values.len() != n {
            return Err(validation(format!(
                "sets.{name}: {} values for {} scenarios",
                def.values.len(),
                n
            )));
        }
        let values: Result<Vec<ConvexSet2>> = def
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v.to_set(&format!("sets.{name}.values[{i}]")))
            .collect();
        let x = RandomConvexSet::new(space.clone(), values?, cone)
            .map_err(|e| validation(format!("sets.{name}: {e}")))?;
        sets.insert(name.clone(), x);
    }

    let mut vectors = BTreeMap::new();
    for (name, pts) in &doc.vectors {
        let pts: Vec<Vec2> = pts.iter().map(|p| vec2(p[0], p[1])).collect();
        let v = RandomVector2::new(space.clone(), pts)
            .map_err(|e| validation(format!("vectors.{name}: {e}")))?;
        vectors.insert(name.clone(), v);
    }

    let mut scalars = BTreeMap::new();
    for (name, vals) in &doc.scalars {
        let s = RandomScalar::from_f64s(space.clone(), vals.clone())
            .map_err(|e| validation(format!("scalars.{name}: {e}")))?;
        scalars.insert(name.clone(), s);
    }

    let mut shapes = BTreeMap::new();
    for (name, repr) in &doc.shapes {
        shapes.insert(name.clone(), repr.to_set(&format!("shapes.{name}"))?);
    }

    let sample: Result<Vec<ConvexSet2>> = doc
        .sample
        .iter()
        .enumerate()
        .map(|(i, v)| v.to_set(&format!("sample[{i}]")))
        .collect();

    let family = match &doc.family {
        None | Some(FamilyDoc::Expectation) => RepresentingFamily::Expectation,
        Some(FamilyDoc::Avar { alpha }) => RepresentingFamily::avar(*alpha)?,
        Some(FamilyDoc::MaxOfN { n }) => RepresentingFamily::max_of_n(*n)?,
        Some(FamilyDoc::DensityBand { lower, upper }) => {
            RepresentingFamily::density_band(&space, lower.clone(), upper.clone())?
        }
    };

    let exchange_cone = match &doc.exchange_cone {
        Some(c) => Some(c.to_cone("exchange_cone")?),
        None => None,
    };

    Ok(Instance {
        sets,
        vectors,
        scalars,
        shapes,
        sample: sample?,
        family,
        exchange_cone,
        grid_size: doc.grid_size.unwrap_or(3600),
        seed: doc.seed.unwrap_or(0),
    })
}

impl Instance {
    pub fn set(&self, name: &str) -> Result<&RandomConvexSet> {
        self.sets
            .get(name)
            .ok_or_else(|| validation(format!("unknown set \"{name}\"")))
    }

    pub fn vector(&self, name: &str) -> Result<&RandomVector2> {
        self.vectors
            .get(name)
            .ok_or_else(|| validation(format!("unknown vector \"{name}\"")))
    }

    pub fn scalar(&self, name: &str) -> Result<&RandomScalar> {
        self.scalars
            .get(name)
            .ok_or_else(|| validation(format!("unknown scalar \"{name}\"")))
    }

    pub fn shape(&self, name: &str) -> Result<&ConvexSet2> {
        self.shapes
            .get(name)
            .ok_or_else(|| validation(format!("unknown shape \"{name}\"")))
    }
}
