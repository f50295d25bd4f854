//! Deterministic JSON, CSV and DOT serialization of results.
//!
//! JSON objects keep insertion order and always end with a `schema` field.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::characters::{
    classify_sigma_f, kernel_finiteness_f, rational_json, Character, FinitenessReport,
};
use crate::error::{Error, Result};
use crate::explorer::{BallGraph, ComponentReport};
use crate::presentation::normal_form;
use crate::products::{
    classify_sigma_fr, kernel_finiteness_fr, per_skeleton_statement, ProductCharacter,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const COMPONENT_CSV_HEADER: &str =
    "n,N,char_a,char_b,vertices_in_sublevel,components_of_Bn_inside_BN";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub enum Report<'a> {
    /// A single JSON object.
    Object(Value),
    Components(&'a [ComponentReport]),
    Ball {
        ball: &'a BallGraph,
        chi: Option<&'a Character>,
    },
}

pub fn emit_report(report: &Report<'_>, format: Format) -> Result<String> {
    match (report, format) {
        (Report::Object(v), Format::Json) => Ok(to_line(v)),
        (Report::Components(rows), Format::Csv) => Ok(components_csv(rows)),
        (Report::Components(rows), Format::Json) => {
            let arr: Vec<Value> = rows.iter().map(component_json).collect();
            Ok(to_line(&with_schema(json!({ "reports": arr }))))
        }
        (Report::Ball { ball, chi }, Format::Dot) => Ok(ball_dot(ball, *chi)),
        (Report::Ball { ball, .. }, Format::Json) => Ok(to_line(&with_schema(json!({
            "radius": ball.radius,
            "vertices": ball.vertices.len(),
            "edges": ball.edges.len(),
            "sphere_sizes": sphere_sizes(ball),
        })))),
        (_, f) => Err(Error::UnsupportedFormat(format!("{f:?}").to_lowercase())),
    }
}

fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn kernel_fields(m: &mut Map<String, Value>, k: &FinitenessReport) {
    m.insert("kernel_type".into(), json!(k.describe()));
    m.insert(
        "max_type".into(),
        match k.max_type {
            Some(n) => json!(n),
            None => json!("infinity"),
        },
    );
    m.insert("discrete".into(), json!(k.discrete));
}

pub fn classify_json(chi: &Character, with_kernel: bool) -> Result<Value> {
    let verdict = classify_sigma_f(chi)?;
    let mut m = Map::new();
    m.insert("char".into(), json!([rational_json(&chi.a), rational_json(&chi.b)]));
    m.insert("verdict".into(), json!(verdict.as_str()));
    if with_kernel {
        kernel_fields(&mut m, &kernel_finiteness_f(chi)?);
    }
    m.insert("homological_equals_homotopical".into(), json!(true));
    Ok(with_schema(Value::Object(m)))
}

pub fn classify_product_json(chi: &ProductCharacter, with_kernel: bool) -> Result<Value> {
    let verdict = classify_sigma_fr(chi)?;
    let mut m = Map::new();
    m.insert("r".into(), json!(chi.r()));
    m.insert(
        "coords".into(),
        Value::Array(chi.coords().iter().map(rational_json).collect()),
    );
    m.insert("verdict".into(), json!(verdict.to_string()));
    if let crate::products::SkeletonVerdict::Face(k) = verdict {
        m.insert("k".into(), json!(k));
    }
    if with_kernel {
        kernel_fields(&mut m, &kernel_finiteness_fr(chi)?);
    }
    m.insert(
        "per_skeleton_statement".into(),
        json!(per_skeleton_statement(verdict, chi.r())),
    );
    Ok(with_schema(Value::Object(m)))
}

fn component_json(r: &ComponentReport) -> Value {
    json!({
        "n": r.inner_radius,
        "N": r.outer_radius,
        "char_a": r.char_a,
        "char_b": r.char_b,
        "vertices_in_sublevel": r.vertices_in_sublevel,
        "components_of_Bn_inside_BN": r.components,
        "representatives": r.representatives,
        "status": "EVIDENCE",
    })
}

pub fn components_csv(rows: &[ComponentReport]) -> String {
    let mut out = String::from(COMPONENT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.inner_radius, r.outer_radius, r.char_a, r.char_b, r.vertices_in_sublevel, r.components
        );
    }
    out
}

fn sphere_sizes(ball: &BallGraph) -> Vec<usize> {
    let mut sizes = vec![0; ball.radius as usize + 1];
    for v in &ball.vertices {
        sizes[v.word_length as usize] += 1;
    }
    sizes
}

/// Undirected graph, vertices labelled by normal form; with a character,
/// vertices of the sublevel set `chi >= 0` are filled.
pub fn ball_dot(ball: &BallGraph, chi: Option<&Character>) -> String {
    let mut out = String::from("graph ball {\n");
    for (i, v) in ball.vertices.iter().enumerate() {
        let label = normal_form(&v.element).to_string();
        let _ = write!(out, "  v{i} [label=\"{label}\"");
        if let Some(chi) = chi {
            use num_traits::Signed;
            if !ball.char_value(i, chi).is_negative() {
                out.push_str(", style=filled, sublevel=true");
            }
        }
        out.push_str("];\n");
    }
    for e in &ball.edges {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.lo, e.hi, e.letter);
    }
    out.push_str("}\n");
    out
}
