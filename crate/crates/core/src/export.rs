//! Serializable snapshot of a graded graph, with JSON and DOT writers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::contfrac::{HJTuple, Lens};
use crate::error::{Error, Result};
use crate::flipgraph::{GradedGraph, GraphEdge, GraphVertex};
use crate::polygon::phi_inverse;
use crate::tuples::ZTuple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportVertex {
    pub id: usize,
    pub tuple: ZTuple,
    pub height: u64,
    pub betti: Option<u64>,
    pub diagonals: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportEdge {
    pub src: usize,
    pub dst: usize,
    pub flips: Vec<usize>,
    pub weights: Option<HJTuple>,
}

/// `p`, `q` and `hj` are `null` for a bare `G_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub k: usize,
    pub hj: Option<HJTuple>,
    pub vertices: Vec<ExportVertex>,
    pub edges: Vec<ExportEdge>,
}

fn diagonals_of(t: &ZTuple) -> Result<Vec<(usize, usize)>> {
    if t.k() < 2 {
        Ok(Vec::new())
    } else {
        Ok(phi_inverse(t)?.diagonals().to_vec())
    }
}

impl GraphExport {
    pub fn new(g: &GradedGraph, lens: Option<&Lens>) -> Result<Self> {
        if let Some(l) = lens {
            if l.k() != g.k() {
                return Err(Error::InvalidInput(format!("lens has k = {}, graph has k = {}", l.k(), g.k())));
            }
        }
        let vertices = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| {
                Ok(ExportVertex {
                    id,
                    tuple: v.tuple.clone(),
                    height: v.height,
                    betti: v.betti,
                    diagonals: diagonals_of(&v.tuple)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = g
            .edges()
            .iter()
            .map(|e| ExportEdge { src: e.src, dst: e.dst, flips: e.flips.clone(), weights: e.weights.clone() })
            .collect();
        Ok(GraphExport {
            p: lens.map(|l| l.p),
            q: lens.map(|l| l.q),
            k: g.k(),
            hj: lens.map(|l| l.b.clone()),
            vertices,
            edges,
        })
    }

    /// Rebuilds the graph, checking dense ids, the root and the diagonals.
    pub fn to_graph(&self) -> Result<GradedGraph> {
        for (pos, v) in self.vertices.iter().enumerate() {
            if v.id != pos {
                return Err(Error::InvalidInput(format!("vertex ids must be dense, found {} at {pos}", v.id)));
            }
            if diagonals_of(&v.tuple)? != v.diagonals {
                return Err(Error::InvalidInput(format!("diagonals of vertex {pos} do not triangulate {}", v.tuple)));
            }
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| GraphVertex { tuple: v.tuple.clone(), height: v.height, betti: v.betti })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| GraphEdge { src: e.src, dst: e.dst, flips: e.flips.clone(), weights: e.weights.clone() })
            .collect();
        let g = GradedGraph::new(self.k, vertices, edges)?;
        if !g.vertices().is_empty() && g.roots() != [0] {
            return Err(Error::InvalidInput("vertex 0 must be the only root".into()));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export is plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let e: GraphExport = serde_json::from_str(s).map_err(|err| Error::InvalidInput(format!("bad graph JSON: {err}")))?;
        e.to_graph()?;
        Ok(e)
    }

    /// Graphviz source: one `rank=same` group per height, edges labelled
    /// by weights (or by flips when there are none).
    pub fn to_dot(&self) -> String {
        let name = match (self.p, self.q) {
            (Some(p), Some(q)) => format!("G^{{{p},{q}}}_{}", self.k),
            _ => format!("G_{}", self.k),
        };
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        s.push_str("  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
        let mut heights: Vec<u64> = self.vertices.iter().map(|v| v.height).collect();
        heights.sort_unstable();
        heights.dedup();
        for h in heights {
            let ids: Vec<String> =
                self.vertices.iter().filter(|v| v.height == h).map(|v| format!("\"v{}\";", v.id)).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
        }
        for v in &self.vertices {
            let mut label = v.tuple.to_string();
            if let Some(b) = v.betti {
                let _ = write!(label, "\\nb2={b}");
            }
            let _ = writeln!(s, "  \"v{}\" [label=\"{label}\"];", v.id);
        }
        for e in &self.edges {
            let label = match &e.weights {
                Some(w) => w.to_string(),
                None => {
                    let f: Vec<String> = e.flips.iter().map(|i| format!("d{i}")).collect();
                    f.join(",")
                }
            };
            let _ = writeln!(s, "  \"v{}\" -> \"v{}\" [label=\"{label}\"];", e.src, e.dst);
        }
        s.push_str("}\n");
        s
    }
}
