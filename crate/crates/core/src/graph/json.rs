//! Graph JSON: `{"d", "vertices", "edges": [{"u","v","offset","label"}], "potential"}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::builders::LabeledGraph;
use super::{Labeling, PeriodicGraph};
use crate::param::ParamPoly;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: String,
    v: String,
    offset: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    d: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    #[serde(default)]
    potential: BTreeMap<String, String>,
}

/// Parses graph JSON. Missing potentials default to `0`; missing edge
/// labels are kept as unlabeled so that validation reports them.
pub fn from_json(text: &str) -> Result<LabeledGraph> {
    let gj: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut graph = PeriodicGraph::new(gj.d, gj.vertices.clone());
    let mut edge_labels = Vec::new();
    let index = |n: &str| {
        graph_index(&gj.vertices, n).ok_or_else(|| Error::Parse(format!("unknown vertex `{n}`")))
    };
    for e in &gj.edges {
        graph.add_edge(index(&e.u)?, index(&e.v)?, e.offset.clone());
        edge_labels.push(e.label.as_deref().map(ParamPoly::parse_label).transpose()?);
    }
    for k in gj.potential.keys() {
        index(k)?;
    }
    let potential = gj
        .vertices
        .iter()
        .map(|v| match gj.potential.get(v) {
            Some(s) => ParamPoly::parse_label(s),
            None => Ok(ParamPoly::zero()),
        })
        .collect::<Result<_>>()?;
    Ok(LabeledGraph {
        graph,
        labels: Labeling {
            potential,
            edge_labels,
        },
    })
}

fn graph_index(vs: &[String], n: &str) -> Option<usize> {
    vs.iter().position(|v| v == n)
}

pub fn to_json(g: &LabeledGraph) -> serde_json::Value {
    let name = |i: usize| g.graph.vertices[i].clone();
    let gj = GraphJson {
        d: g.graph.d,
        vertices: g.graph.vertices.clone(),
        edges: g
            .graph
            .edges
            .iter()
            .zip(&g.labels.edge_labels)
            .map(|(e, l)| EdgeJson {
                u: name(e.u),
                v: name(e.v),
                offset: e.offset.clone(),
                label: l.as_ref().map(ToString::to_string),
            })
            .collect(),
        potential: g
            .graph
            .vertices
            .iter()
            .cloned()
            .zip(g.labels.potential.iter().map(ToString::to_string))
            .collect(),
    };
    serde_json::to_value(gj).expect("serialisable")
}
