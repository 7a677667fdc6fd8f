//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export takes group specs as strings and returns a JSON string, so
//! the page needs nothing beyond `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use noncyc::cyclic::{cyclicizer, CyclicizerTable};
use noncyc::graph::{analyze as analyze_group, InvariantReport, NonCyclicGraph};
use noncyc::iso::{compare as compare_graphs, CanonOptions};
use noncyc::{build, Error, GroupSpec};

/// Past this many vertices the page shows the report but no drawing.
pub const DRAW_LIMIT: usize = 160;

#[derive(Serialize)]
struct Drawing {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Analyzed {
    report: InvariantReport,
    cyc: Vec<String>,
    drawing: Option<Drawing>,
}

#[derive(Serialize)]
struct Cyclicizer {
    element: String,
    order: usize,
    members: Vec<String>,
}

fn parse(spec: &str) -> Result<GroupSpec, Error> {
    spec.trim().parse()
}

fn to_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn analyze_spec(spec: &str) -> Result<String, Error> {
    let g = build(&parse(spec)?)?;
    let a = analyze_group(&g)?;
    let graph = &a.graph;
    let drawing = (graph.vertex_count() <= DRAW_LIMIT).then(|| {
        let adj = graph.adjacency();
        let n = graph.vertex_count();
        Drawing {
            labels: graph.labels().to_vec(),
            edges: (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| adj.get(i, j))
                .collect(),
        }
    });
    Ok(json(&Analyzed {
        cyc: a.cyc.cyc().iter().map(|x| g.label(x).to_owned()).collect(),
        report: a.report,
        drawing,
    }))
}

pub fn compare_specs(a: &str, b: &str) -> Result<String, Error> {
    let (ga, gb) = (build(&parse(a)?)?, build(&parse(b)?)?);
    let (ta, tb) = (CyclicizerTable::new(&ga), CyclicizerTable::new(&gb));
    let (xa, xb) = (
        NonCyclicGraph::build(&ga, &ta)?,
        NonCyclicGraph::build(&gb, &tb)?,
    );
    let c = compare_graphs(
        xa.adjacency(),
        xa.labels(),
        xb.adjacency(),
        xb.labels(),
        &CanonOptions::default(),
    )?;
    Ok(json(&c))
}

pub fn cyclicizer_of(spec: &str, element: &str) -> Result<String, Error> {
    let g = build(&parse(spec)?)?;
    let x = g.index_of(element).ok_or_else(|| {
        Error::InvalidParameter(format!("no element labelled {element} in {}", g.name()))
    })?;
    let c = cyclicizer(&g, x);
    Ok(json(&Cyclicizer {
        element: element.to_owned(),
        order: c.count(),
        members: c.iter().map(|y| g.label(y).to_owned()).collect(),
    }))
}

/// Invariant report, `Cyc(G)` and (for small graphs) vertices and edges.
#[wasm_bindgen]
pub fn analyze(spec: &str) -> Result<String, JsError> {
    analyze_spec(spec).map_err(to_js)
}

/// Whether two groups have isomorphic non-cyclic graphs.
#[wasm_bindgen]
pub fn compare(a: &str, b: &str) -> Result<String, JsError> {
    compare_specs(a, b).map_err(to_js)
}

/// Elements `y` with `<x, y>` cyclic.
#[wasm_bindgen]
pub fn cyclicizer_json(spec: &str, element: &str) -> Result<String, JsError> {
    cyclicizer_of(spec, element).map_err(to_js)
}
