//! Output emitters: JSON vertex lists, CSV support tables, and SVG figures
//! with unbounded sets clipped to a declared bounding box. All formatting is
//! deterministic: identical inputs yield byte-identical output.

use crate::instance::SetRepr;
use setexp::error::{validation, Result};
use setexp::geometry::{intersect_sets, vec2, ConvexSet2, DirectionGrid, UnitVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format \"{other}\" (expected json, csv or svg)")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl std::str::FromStr for BBox {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<BBox, String> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| format!("bad bbox: {e}"))?;
        if parts.len() != 4 || parts[0] >= parts[2] || parts[1] >= parts[3] {
            return Err("bbox must be x0,y0,x1,y1 with x0 < x1 and y0 < y1".into());
        }
        Ok(BBox {
            x0: parts[0],
            y0: parts[1],
            x1: parts[2],
            y1: parts[3],
        })
    }
}

pub fn render_set_json(sets: &[(&str, &ConvexSet2)]) -> String {
    if sets.len() == 1 {
        let repr = SetRepr::from_set(sets[0].1);
        return serde_json::to_string_pretty(&repr).unwrap() + "\n";
    }
    let map: serde_json::Map<String, serde_json::Value> = sets
        .iter()
        .map(|(name, set)| {
            (
                name.to_string(),
                serde_json::to_value(SetRepr::from_set(set)).unwrap(),
            )
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap() + "\n"
}

/// CSV rows `ux,uy,support` over a grid on the polar of the set's recession.
pub fn render_set_csv(set: &ConvexSet2, grid_size: usize) -> Result<String> {
    if set.is_empty() {
        return Ok("empty\n".into());
    }
    let mut out = String::from("ux,uy,support\n");
    let grid = DirectionGrid::in_cone(&set.recession().polar(), grid_size.max(4))?;
    for &u in grid.dirs() {
        let h = set.support(u.as_vec())?;
        out.push_str(&format!(
            "{:.12},{:.12},{}\n",
            u.as_vec().x,
            u.as_vec().y,
            match h.as_finite() {
                Some(v) => format!("{v:.12}"),
                None => "inf".to_string(),
            }
        ));
    }
    Ok(out)
}

const SVG_SIZE: f64 = 640.0;
const FILLS: [&str; 4] = ["#bdd7ee", "#7f7f7f99", "#c6e0b4", "#ffd9b3"];
const STROKES: [&str; 4] = ["#2e75b6", "#3b3b3b", "#548235", "#c55a11"];

fn auto_bbox(sets: &[(&str, &ConvexSet2)]) -> BBox {
    let mut lo = vec2(f64::INFINITY, f64::INFINITY);
    let mut hi = vec2(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, s) in sets {
        for v in s.vertices() {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
    }
    if !lo.x.is_finite() {
        return BBox {
            x0: -1.0,
            y0: -1.0,
            x1: 1.0,
            y1: 1.0,
        };
    }
    let pad = 0.25 * ((hi.x - lo.x).max(hi.y - lo.y)).max(1.0);
    BBox {
        x0: lo.x - pad,
        y0: lo.y - pad,
        x1: hi.x + pad,
        y1: hi.y + pad,
    }
}

/// Layered SVG drawing, earlier sets below later ones; unbounded sets are
/// clipped to the bounding box.
pub fn render_svg(sets: &[(&str, &ConvexSet2)], bbox: Option<BBox>) -> Result<String> {
    let bb = bbox.unwrap_or_else(|| auto_bbox(sets));
    let sx = SVG_SIZE / (bb.x1 - bb.x0);
    let sy = SVG_SIZE / (bb.y1 - bb.y0);
    let px = |x: f64| (x - bb.x0) * sx;
    let py = |y: f64| SVG_SIZE - (y - bb.y0) * sy;
    let e1 = UnitVec::new(vec2(1.0, 0.0)).unwrap();
    let e2 = UnitVec::new(vec2(0.0, 1.0)).unwrap();
    let window = intersect_sets(&[
        ConvexSet2::half_space(e1, bb.x1),
        ConvexSet2::half_space(-e1, -bb.x0),
        ConvexSet2::half_space(e2, bb.y1),
        ConvexSet2::half_space(-e2, -bb.y0),
    ]);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        SVG_SIZE
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\" stroke=\"#999\"/>\n",
        SVG_SIZE
    ));
    for (i, (name, set)) in sets.iter().enumerate() {
        if set.is_empty() {
            out.push_str(&format!("  <!-- {name}: empty set -->\n"));
            continue;
        }
        let clipped = intersect_sets(&[(*set).clone(), window.clone()]);
        if clipped.is_empty() {
            out.push_str(&format!("  <!-- {name}: outside the bounding box -->\n"));
            continue;
        }
        if clipped.vertices().len() == 1 {
            let v = clipped.vertices()[0];
            out.push_str(&format!(
                "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"4\" fill=\"{}\"><title>{name}</title></circle>\n",
                px(v.x),
                py(v.y),
                STROKES[i % STROKES.len()],
            ));
            continue;
        }
        let pts: Vec<String> = clipped
            .vertices()
            .iter()
            .map(|v| format!("{:.4},{:.4}", px(v.x), py(v.y)))
            .collect();
        let tag = if clipped.vertices().len() == 2 {
            format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"><title>{name}</title></polyline>\n",
                pts.join(" "),
                STROKES[i % STROKES.len()],
            )
        } else {
            format!(
                "  <polygon points=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"><title>{name}</title></polygon>\n",
                pts.join(" "),
                FILLS[i % FILLS.len()],
                STROKES[i % STROKES.len()],
            )
        };
        out.push_str(&tag);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_sets(
    sets: &[(&str, &ConvexSet2)],
    format: Format,
    grid_size: usize,
    bbox: Option<BBox>,
) -> Result<String> {
    match format {
        Format::Json => Ok(render_set_json(sets)),
        Format::Csv => {
            if sets.len() != 1 {
                return Err(validation(
                    "csv output renders a single set; use json or svg here",
                ));
            }
            render_set_csv(sets[0].1, grid_size)
        }
        Format::Svg => render_svg(sets, bbox),
    }
}
