use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mann::z_bound;
use crate::pointset::{PointSet, Provenance};

use super::{
    build_graph, max_points_on_line, path_counts_from, paths_lower_bound,
    paths_lower_bound_discounted, peel_threshold, EdgeMode, PathOptions, ShortestMode,
};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Ceiling on noncollinear 2-paths between a fixed pair of vertices.
const TWO_PATH_CEILING: u64 = 144;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub k: u32,
    pub paths: PathOptions,
}

impl AnalyzeOptions {
    pub fn new(k: u32) -> AnalyzeOptions {
        AnalyzeOptions {
            k,
            paths: PathOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelSummary {
    pub threshold: f64,
    pub vertices: usize,
    pub edges: usize,
    /// δ of the survivor; `None` when nothing survives.
    pub min_degree: Option<usize>,
}

/// Outcome of each applicable ceiling; `None` marks a check whose
/// hypothesis does not hold on this input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// Per-pair irredundant k-path count ≤ z_bound(k); needs no three
    /// points on a line.
    pub z_bound: Option<bool>,
    /// Per-pair noncollinear 2-path count ≤ 144.
    pub two_path_ceiling: bool,
    /// Survivor has δ ≥ threshold and keeps more than half the edges.
    pub peeling: bool,
    /// Paths from every vertex ≥ paths_lower_bound(δ, k); needs unit mode
    /// or no three points on a line.
    pub continuation: Option<bool>,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.z_bound != Some(false)
            && self.two_path_ceiling
            && self.peeling
            && self.continuation != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub provenance: Provenance,
    pub mode: EdgeMode,
    pub k: u32,
    pub n: usize,
    pub conductor: u32,
    pub edge_count: usize,
    pub max_collinear: usize,
    /// log(e)/log(n) − 1; undefined without edges.
    pub excess_exponent: Option<f64>,
    pub min_degree: usize,
    pub peel: PeelSummary,
    pub z_bound: String,
    pub paths_lower_bound: String,
    pub paths_lower_bound_discounted: f64,
    /// Largest and smallest irredundant k-path count over ordered pairs.
    pub pair_max: u64,
    pub pair_max_at: Option<(usize, usize)>,
    pub pair_min: u64,
    /// Smallest number of irredundant k-paths starting at one vertex.
    pub vertex_min: u64,
    /// Largest per-pair count of shortest irredundant k-paths.
    pub shortest_pair_max: u64,
    pub two_path_max: u64,
    pub checks: Checks,
}

/// Builds the graph and evaluates every statistic and ceiling at path
/// length `opts.k`. Path counts are exhaustive over all ordered pairs.
pub fn analyze(ps: &PointSet, mode: EdgeMode, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let k = opts.k;
    let n = ps.len();
    let g = build_graph(ps, mode)?;
    let e = g.edge_count();
    let max_collinear = if n >= 2 { max_points_on_line(ps)?.count } else { n };
    let excess_exponent = (e > 0 && n >= 2).then(|| (e as f64).ln() / (n as f64).ln() - 1.0);
    let min_degree = g.min_degree().unwrap_or(0);

    let threshold = peel_threshold(e, n);
    let h = g.min_degree_subgraph(threshold)?;
    let peel = PeelSummary {
        threshold,
        vertices: h.vertex_count(),
        edges: h.edge_count(),
        min_degree: h.min_degree(),
    };
    let peeling_ok = peel.min_degree.map_or(true, |d| d as f64 >= threshold)
        && (e == 0 || 2 * peel.edges > e);

    let plain = PathOptions {
        shortest: ShortestMode::Off,
        noncollinear: false,
        ..opts.paths.clone()
    };
    let shortest = PathOptions {
        shortest: if opts.paths.shortest == ShortestMode::Off {
            ShortestMode::AllVertices
        } else {
            opts.paths.shortest
        },
        ..plain.clone()
    };
    let two_path = PathOptions {
        noncollinear: true,
        cap: plain.cap.max(2),
        ..plain.clone()
    };
    let (mut pair_max, mut pair_max_at, mut pair_min, mut vertex_min) = (0, None, u64::MAX, u64::MAX);
    let (mut shortest_pair_max, mut two_path_max) = (0, 0);
    for v in 0..n {
        let counts = path_counts_from(&g, v, k, &plain)?;
        vertex_min = vertex_min.min(counts.iter().sum());
        for (w, &c) in counts.iter().enumerate() {
            if w == v {
                continue;
            }
            pair_min = pair_min.min(c);
            if c > pair_max {
                pair_max = c;
                pair_max_at = Some((v, w));
            }
        }
        let s = path_counts_from(&g, v, k, &shortest)?;
        shortest_pair_max = shortest_pair_max.max(s.into_iter().max().unwrap_or(0));
        let t = path_counts_from(&g, v, 2, &two_path)?;
        two_path_max = two_path_max.max(t.into_iter().max().unwrap_or(0));
    }
    if n < 2 {
        pair_min = 0;
    }
    if n == 0 {
        vertex_min = 0;
    }

    let zb = z_bound(k);
    let lower = paths_lower_bound(min_degree as u64, k);
    let no_three = max_collinear <= 2;
    let checks = Checks {
        z_bound: no_three.then(|| BigUint::from(pair_max) <= zb),
        two_path_ceiling: two_path_max <= TWO_PATH_CEILING,
        peeling: peeling_ok,
        continuation: (mode == EdgeMode::Unit || no_three).then_some(u128::from(vertex_min) >= lower),
    };
    Ok(AnalysisReport {
        format_version: REPORT_FORMAT_VERSION,
        provenance: ps.provenance().clone(),
        mode,
        k,
        n,
        conductor: ps.conductor(),
        edge_count: e,
        max_collinear,
        excess_exponent,
        min_degree,
        peel,
        z_bound: zb.to_string(),
        paths_lower_bound: lower.to_string(),
        paths_lower_bound_discounted: paths_lower_bound_discounted(
            min_degree as f64,
            max_collinear.max(1) as f64,
            k,
        ),
        pair_max,
        pair_max_at,
        pair_min,
        vertex_min,
        shortest_pair_max,
        two_path_max,
        checks,
    })
}

/// Column names of [`AnalysisReport::csv_row`].
pub const CSV_HEADER: &str = "format_version,construction,seed,mode,k,n,conductor,edge_count,\
max_collinear,excess_exponent,min_degree,peel_threshold,peel_vertices,peel_edges,peel_min_degree,\
z_bound,paths_lower_bound,paths_lower_bound_discounted,pair_max,pair_min,vertex_min,\
shortest_pair_max,two_path_max,check_z_bound,check_two_path,check_peeling,check_continuation,all_pass";

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<AnalysisReport> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value.get("format_version").and_then(serde_json::Value::as_u64);
        if found != Some(u64::from(REPORT_FORMAT_VERSION)) {
            return Err(Error::FormatVersion {
                found: found.unwrap_or(0) as u32,
                expected: REPORT_FORMAT_VERSION,
            });
        }
        Ok(serde_json::from_value(value)?)
    }

    /// One CSV record matching [`CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let name = if self.provenance.name.contains([',', '"', '\n']) {
            format!("\"{}\"", self.provenance.name.replace('"', "\"\""))
        } else {
            self.provenance.name.clone()
        };
        [
            self.format_version.to_string(),
            name,
            self.provenance.seed.to_string(),
            self.mode.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.conductor.to_string(),
            self.edge_count.to_string(),
            self.max_collinear.to_string(),
            opt(self.excess_exponent),
            self.min_degree.to_string(),
            self.peel.threshold.to_string(),
            self.peel.vertices.to_string(),
            self.peel.edges.to_string(),
            opt(self.peel.min_degree),
            self.z_bound.clone(),
            self.paths_lower_bound.clone(),
            self.paths_lower_bound_discounted.to_string(),
            self.pair_max.to_string(),
            self.pair_min.to_string(),
            self.vertex_min.to_string(),
            self.shortest_pair_max.to_string(),
            self.two_path_max.to_string(),
            opt(self.checks.z_bound),
            self.checks.two_path_ceiling.to_string(),
            self.checks.peeling.to_string(),
            opt(self.checks.continuation),
            self.checks.all_pass().to_string(),
        ]
        .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use crate::pointset::{erdos_purdy, square_grid, DEFAULT_LEVEL_CAP, DEFAULT_POINT_BUDGET};
    use num_rational::BigRational;

    #[test]
    fn grid_report() {
        let ps = square_grid(3, 3, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        let r = analyze(&ps, EdgeMode::Rational, &AnalyzeOptions::new(2)).unwrap();
        assert_eq!(r.edge_count, 18);
        assert_eq!(r.max_collinear, 3);
        assert_eq!(r.checks.z_bound, None);
        assert_eq!(r.two_path_max, 2);
        assert!(r.checks.all_pass());
        assert_eq!(CSV_HEADER.split(',').count(), r.csv_row().split(',').count());
    }

    #[test]
    fn doubling_report() {
        let ps = erdos_purdy(4, DEFAULT_LEVEL_CAP).unwrap();
        let r = analyze(&ps, EdgeMode::Unit, &AnalyzeOptions::new(2)).unwrap();
        assert_eq!(r.n, 16);
        assert!(r.edge_count >= 24);
        assert_eq!(r.max_collinear, 2);
        assert_eq!(r.checks.z_bound, Some(true));
        assert_eq!(r.checks.continuation, Some(true));
        assert!(r.checks.all_pass());
    }

    #[test]
    fn no_edges_means_no_exponent() {
        let ps = PointSet::new(
            vec![
                CycNum::zero(4).unwrap(),
                &CycNum::one(4).unwrap() + &CycNum::root_of_unity(1, 4).unwrap(),
            ],
            Provenance::new("diag", 0),
        )
        .unwrap();
        let r = analyze(&ps, EdgeMode::Rational, &AnalyzeOptions::new(1)).unwrap();
        assert_eq!(r.excess_exponent, None);
        assert!(r.csv_row().contains(",none,"));
    }

    #[test]
    fn json_round_trip() {
        let ps = erdos_purdy(3, DEFAULT_LEVEL_CAP).unwrap();
        let r = analyze(&ps, EdgeMode::Rational, &AnalyzeOptions::new(2)).unwrap();
        let text = r.to_json().unwrap();
        let back = AnalysisReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
        let bad = text.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(AnalysisReport::from_json(&bad).is_err());
    }
}
