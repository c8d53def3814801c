use serde::de::{Deserializer, Error as _};
use serde::Deserialize;

use super::{FoldSpec, OrigamiTemplate, PolytopeSpec, Sign, TemplateError};
use crate::geometry::{GeometryError, Halfspace};
use crate::rational::{format_rational, parse_rational};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTemplate {
    dimension: usize,
    #[serde(deserialize_with = "nonempty")]
    polytopes: Vec<RawPolytope>,
    #[serde(default)]
    folds: Vec<RawFold>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    name: String,
    sign: RawSign,
    halfspaces: Vec<RawHalfspace>,
}

#[derive(Deserialize)]
enum RawSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHalfspace {
    normal: Vec<i64>,
    offset: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFold {
    a: (String, usize),
    b: (String, usize),
}

fn nonempty<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RawPolytope>, D::Error> {
    let v = Vec::<RawPolytope>::deserialize(d)?;
    if v.is_empty() {
        return Err(D::Error::custom("template must contain at least one polytope"));
    }
    Ok(v)
}

/// Parses the JSON template format. Geometry is not validated here beyond
/// nonzero normals.
pub fn parse_template(text: &str) -> Result<OrigamiTemplate, TemplateError> {
    let raw: RawTemplate = serde_json::from_str(text).map_err(|e| TemplateError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let mut polytopes = Vec::with_capacity(raw.polytopes.len());
    for p in raw.polytopes {
        let mut halfspaces = Vec::with_capacity(p.halfspaces.len());
        for h in p.halfspaces {
            if h.normal.len() != raw.dimension {
                return Err(TemplateError::DimensionMismatch {
                    polytope: p.name,
                    expected: raw.dimension,
                    got: h.normal.len(),
                });
            }
            let offset = parse_rational(&h.offset).map_err(|_| TemplateError::MalformedRational(h.offset.clone()))?;
            let halfspace = Halfspace::new(h.normal, offset)
                .map_err(|source: GeometryError| TemplateError::Geometry { polytope: p.name.clone(), source })?;
            halfspaces.push(halfspace);
        }
        let sign = match p.sign {
            RawSign::Plus => Sign::Plus,
            RawSign::Minus => Sign::Minus,
        };
        polytopes.push(PolytopeSpec { name: p.name, sign, halfspaces });
    }
    let folds = raw.folds.into_iter().map(|f| FoldSpec { a: f.a, b: f.b }).collect();
    OrigamiTemplate::new(raw.dimension, polytopes, folds)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical rendering: fixed key order, one halfspace per line, rationals
/// as `"p/q"` strings.
pub fn render_template(t: &OrigamiTemplate) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"dimension\": {},\n", t.dimension()));
    out.push_str("  \"polytopes\": [\n");
    for (i, p) in t.polytopes().iter().enumerate() {
        out.push_str("    {\n");
        out.push_str(&format!("      \"name\": {},\n", json_string(&p.name)));
        out.push_str(&format!("      \"sign\": \"{}\",\n", p.sign.symbol()));
        out.push_str("      \"halfspaces\": [\n");
        for (j, h) in p.halfspaces.iter().enumerate() {
            let normal: Vec<String> = h.normal().iter().map(i64::to_string).collect();
            out.push_str(&format!(
                "        {{ \"normal\": [{}], \"offset\": \"{}\" }}{}\n",
                normal.join(", "),
                format_rational(h.offset()),
                if j + 1 < p.halfspaces.len() { "," } else { "" }
            ));
        }
        out.push_str("      ]\n");
        out.push_str(if i + 1 < t.polytopes().len() { "    },\n" } else { "    }\n" });
    }
    out.push_str("  ],\n");
    if t.folds().is_empty() {
        out.push_str("  \"folds\": []\n");
    } else {
        out.push_str("  \"folds\": [\n");
        for (i, f) in t.folds().iter().enumerate() {
            out.push_str(&format!(
                "    {{ \"a\": [{}, {}], \"b\": [{}, {}] }}{}\n",
                json_string(&f.a.0),
                f.a.1,
                json_string(&f.b.0),
                f.b.1,
                if i + 1 < t.folds().len() { "," } else { "" }
            ));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}
