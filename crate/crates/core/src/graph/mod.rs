//! The rational-angle distance graph over an exact point set.

mod lines;
mod paths;
mod peel;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, RationalAngleForm};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

pub use lines::{max_points_on_line, max_points_on_line_naive, LineWitness};
pub use paths::{
    count_irredundant_paths, irredundant_paths, path_counts_from, path_direction_tuple,
    paths_lower_bound, paths_lower_bound_discounted, PathOptions, PathRecord, ShortestMode,
    DEFAULT_PATH_BUDGET, DEFAULT_PATH_CAP,
};
pub use peel::{peel, peel_threshold};
pub use report::{
    analyze, AnalysisReport, AnalyzeOptions, Checks, PeelSummary, CSV_HEADER,
    REPORT_FORMAT_VERSION,
};

/// Which rational-angle pairs become edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeMode {
    /// Unit length only.
    Unit,
    /// Any positive rational length.
    Rational,
}

impl fmt::Display for EdgeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeMode::Unit => "unit",
            EdgeMode::Rational => "rational",
        })
    }
}

impl FromStr for EdgeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<EdgeMode> {
        match s {
            "unit" => Ok(EdgeMode::Unit),
            "rational" => Ok(EdgeMode::Rational),
            _ => Err(Error::Parse(format!("unknown edge mode {s:?}"))),
        }
    }
}

/// An undirected edge u < v carrying the polar form of z_v − z_u.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub form: RationalAngleForm,
}

#[derive(Clone, Debug)]
pub(crate) struct Neighbor {
    pub vertex: usize,
    // z_vertex − z_self
    pub vector: CycNum,
    // exponent modulo a half turn
    pub line: u32,
}

#[derive(Clone, Debug)]
pub struct DistanceGraph {
    points: PointSet,
    mode: EdgeMode,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Neighbor>>,
    labels: Vec<usize>,
}

/// Classifies every pair of points and keeps the rational-angle pairs
/// (of unit length in [`EdgeMode::Unit`]).
pub fn build_graph(ps: &PointSet, mode: EdgeMode) -> Result<DistanceGraph> {
    let z = ps.points();
    let mut edges = Vec::new();
    for u in 0..z.len() {
        for v in u + 1..z.len() {
            let Some(form) = (&z[v] - &z[u]).classify_rational_angle()? else {
                continue;
            };
            if mode == EdgeMode::Unit && !form.is_unit() {
                continue;
            }
            edges.push(Edge { u, v, form });
        }
    }
    Ok(DistanceGraph::from_edges(ps.clone(), mode, edges, (0..z.len()).collect()))
}

impl DistanceGraph {
    fn from_edges(points: PointSet, mode: EdgeMode, edges: Vec<Edge>, labels: Vec<usize>) -> DistanceGraph {
        let z = points.points();
        let mut adjacency: Vec<Vec<Neighbor>> = vec![Vec::new(); z.len()];
        for e in &edges {
            let back = e.form.reversed();
            adjacency[e.u].push(Neighbor {
                vertex: e.v,
                vector: &z[e.v] - &z[e.u],
                line: e.form.line_direction(),
            });
            adjacency[e.v].push(Neighbor {
                vertex: e.u,
                vector: &z[e.u] - &z[e.v],
                line: back.line_direction(),
            });
        }
        for list in &mut adjacency {
            list.sort_by_key(|nb| nb.vertex);
        }
        DistanceGraph {
            points,
            mode,
            edges,
            adjacency,
            labels,
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn mode(&self) -> EdgeMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of the vertices in the graph this one was peeled from
    /// (identity for a freshly built graph).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|nb| nb.vertex)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|l| l.binary_search_by_key(&v, |nb| nb.vertex).is_ok())
    }

    /// δ(G); `None` for the graph with no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<Neighbor>] {
        &self.adjacency
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
        Ok(())
    }

    /// Repeatedly deletes vertices of current degree below `threshold`.
    /// The survivor has minimum degree ≥ threshold or no vertices.
    pub fn min_degree_subgraph(&self, threshold: f64) -> Result<DistanceGraph> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let keep = peel(self.vertex_count(), &pairs, threshold)?;
        let kept: Vec<usize> = (0..keep.len()).filter(|&v| keep[v]).collect();
        let mut new_index = vec![usize::MAX; keep.len()];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.u] && keep[e.v])
            .map(|e| Edge {
                u: new_index[e.u],
                v: new_index[e.v],
                form: e.form.clone(),
            })
            .collect();
        let labels = kept.iter().map(|&v| self.labels[v]).collect();
        let points = self.points.subset(&kept)?;
        Ok(DistanceGraph::from_edges(points, self.mode, edges, labels))
    }
}
