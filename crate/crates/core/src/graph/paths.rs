use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::geometry::lines_through;
use crate::subsets::SubsetSums;

use super::DistanceGraph;

/// Default cap on path length.
pub const DEFAULT_PATH_CAP: u32 = 8;
/// Default cap on edge extensions attempted by one search.
pub const DEFAULT_PATH_BUDGET: u64 = 50_000_000;

/// Which vertices on the line of a step may not be closer than the step's
/// endpoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShortestMode {
    /// No shortest-path condition.
    #[default]
    Off,
    /// Every point of the set on the line, on either side, ties forbidden.
    AllVertices,
    /// Only graph neighbours of the step's start, ties forbidden.
    NeighborsOnly,
}

#[derive(Clone, Debug)]
pub struct PathOptions {
    pub shortest: ShortestMode,
    /// Reject a step parallel to the previous one (for k = 2: the three
    /// vertices are not collinear).
    pub noncollinear: bool,
    pub cap: u32,
    pub budget: u64,
}

impl Default for PathOptions {
    fn default() -> PathOptions {
        PathOptions {
            shortest: ShortestMode::Off,
            noncollinear: false,
            cap: DEFAULT_PATH_CAP,
            budget: DEFAULT_PATH_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathRecord {
    pub vertices: Vec<usize>,
    pub edge_vectors: Vec<CycNum>,
    pub irredundant: bool,
    /// Satisfies the shortest-step condition (strict all-vertices reading
    /// unless the search ran in [`ShortestMode::NeighborsOnly`]).
    pub shortest: bool,
}

/// Number of irredundant paths of exactly `k` edges from `v` to `w`.
pub fn count_irredundant_paths(g: &DistanceGraph, v: usize, w: usize, k: u32, opts: &PathOptions) -> Result<u64> {
    check_pair(g, v, w)?;
    let mut count = 0u64;
    Search::new(g, v, Some(w), k, opts, false)?.run(&mut |_| count += 1)?;
    Ok(count)
}

/// The irredundant `k`-edge paths from `v` to `w`, in lexicographic order
/// of their vertex sequences.
pub fn irredundant_paths(g: &DistanceGraph, v: usize, w: usize, k: u32, opts: &PathOptions) -> Result<Vec<PathRecord>> {
    check_pair(g, v, w)?;
    let mut out = Vec::new();
    Search::new(g, v, Some(w), k, opts, true)?.run(&mut |s| {
        out.push(PathRecord {
            vertices: s.path.clone(),
            edge_vectors: s
                .steps
                .iter()
                .map(|&(a, idx)| g.adjacency()[a][idx].vector.clone())
                .collect(),
            irredundant: true,
            shortest: *s.shortest.last().expect("path has a start"),
        })
    })?;
    Ok(out)
}

/// Irredundant `k`-edge path counts from `v` to every vertex.
pub fn path_counts_from(g: &DistanceGraph, v: usize, k: u32, opts: &PathOptions) -> Result<Vec<u64>> {
    g.check_vertex(v)?;
    let mut counts = vec![0u64; g.vertex_count()];
    Search::new(g, v, None, k, opts, false)?.run(&mut |s| {
        counts[*s.path.last().expect("path has a start")] += 1
    })?;
    Ok(counts)
}

fn check_pair(g: &DistanceGraph, v: usize, w: usize) -> Result<()> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w {
        return Err(Error::SameEndpoints);
    }
    Ok(())
}

/// Root-of-unity exponents of the path's steps, all with respect to
/// ζ_M, M = lcm(2, conductor).
pub fn path_direction_tuple(p: &PathRecord) -> Result<Vec<u32>> {
    p.edge_vectors
        .iter()
        .map(|d| {
            d.classify_rational_angle()?
                .map(|f| f.exponent)
                .ok_or_else(|| Error::InvalidParameter("edge vector is not rational-angle".into()))
        })
        .collect()
}

/// ∏_{ℓ<k} max(0, δ − 2^ℓ + 1), saturating at u128::MAX.
pub fn paths_lower_bound(delta: u64, k: u32) -> u128 {
    let mut product: u128 = 1;
    for l in 0..k {
        let forbidden = if l >= 64 { u128::MAX } else { (1u128 << l) - 1 };
        let term = u128::from(delta).saturating_sub(forbidden);
        product = product.saturating_mul(term);
    }
    product
}

/// ∏_{ℓ<k} max(0, δ/c − 2^ℓ + 1), with c the largest number of collinear
/// points standing in for n^α.
pub fn paths_lower_bound_discounted(delta: f64, collinear: f64, k: u32) -> f64 {
    (0..k)
        .map(|l| (delta / collinear - 2f64.powi(l as i32) + 1.0).max(0.0))
        .product()
}

struct Search<'g> {
    g: &'g DistanceGraph,
    target: Option<usize>,
    k: usize,
    noncollinear: bool,
    filter_shortest: bool,
    // per vertex a and adjacency slot: points on the line a→b no farther
    // from a than b; the step is shortest iff all of them are on the path
    blockers: Option<Vec<Vec<Vec<usize>>>>,
    budget: u64,
    nodes: u64,
    sums: SubsetSums,
    path: Vec<usize>,
    steps: Vec<(usize, usize)>,
    on_path: Vec<bool>,
    shortest: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(
        g: &'g DistanceGraph,
        start: usize,
        target: Option<usize>,
        k: u32,
        opts: &PathOptions,
        want_shortest_flag: bool,
    ) -> Result<Search<'g>> {
        if k == 0 {
            return Err(Error::InvalidParameter("path length must be at least 1".into()));
        }
        if k > opts.cap {
            return Err(Error::CapExceeded {
                what: "path length",
                value: u64::from(k),
                cap: u64::from(opts.cap),
            });
        }
        let filter_shortest = opts.shortest != ShortestMode::Off;
        let blockers = if filter_shortest || want_shortest_flag {
            let mode = if filter_shortest {
                opts.shortest
            } else {
                ShortestMode::AllVertices
            };
            Some(blocker_table(g, mode)?)
        } else {
            None
        };
        let mut on_path = vec![false; g.vertex_count()];
        on_path[start] = true;
        Ok(Search {
            g,
            target,
            k: k as usize,
            noncollinear: opts.noncollinear,
            filter_shortest,
            blockers,
            budget: opts.budget,
            nodes: 0,
            sums: SubsetSums::new(g.points().conductor(), k as usize)?,
            path: vec![start],
            steps: Vec::with_capacity(k as usize),
            on_path,
            shortest: vec![true],
        })
    }

    fn run(mut self, visit: &mut dyn FnMut(&Search)) -> Result<()> {
        self.dfs(visit)
    }

    fn dfs(&mut self, visit: &mut dyn FnMut(&Search)) -> Result<()> {
        if self.steps.len() == self.k {
            visit(self);
            return Ok(());
        }
        let g = self.g;
        let a = *self.path.last().expect("path has a start");
        let last_step = self.steps.len() + 1 == self.k;
        let prev_line = self.steps.last().map(|&(p, idx)| g.adjacency()[p][idx].line);
        for (idx, nb) in g.adjacency()[a].iter().enumerate() {
            let b = nb.vertex;
            if self.on_path[b] || (last_step && self.target.is_some_and(|w| w != b)) {
                continue;
            }
            if self.noncollinear && prev_line == Some(nb.line) {
                continue;
            }
            let mut shortest = *self.shortest.last().expect("path has a start");
            if let Some(table) = &self.blockers {
                let ok = table[a][idx].iter().all(|&u| self.on_path[u]);
                if self.filter_shortest && !ok {
                    continue;
                }
                shortest &= ok;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::CapExceeded {
                    what: "path search steps",
                    value: self.nodes,
                    cap: self.budget,
                });
            }
            if self.sums.push(&nb.vector, false)?.is_some() {
                self.sums.pop();
                continue;
            }
            self.path.push(b);
            self.steps.push((a, idx));
            self.on_path[b] = true;
            self.shortest.push(shortest);
            let r = self.dfs(visit);
            self.shortest.pop();
            self.on_path[b] = false;
            self.steps.pop();
            self.path.pop();
            self.sums.pop();
            r?;
        }
        Ok(())
    }
}

fn blocker_table(g: &DistanceGraph, mode: ShortestMode) -> Result<Vec<Vec<Vec<usize>>>> {
    let z = g.points().points();
    let mut table = Vec::with_capacity(z.len());
    for (a, adj) in g.adjacency().iter().enumerate() {
        let mut line_of = vec![usize::MAX; z.len()];
        let mut lines = Vec::new();
        if !adj.is_empty() {
            let members: Vec<usize> = (0..z.len())
                .filter(|&u| u != a && (mode != ShortestMode::NeighborsOnly || g.has_edge(a, u)))
                .collect();
            lines = lines_through(&z[a], z, &members);
            for (l, class) in lines.iter().enumerate() {
                for &u in class {
                    line_of[u] = l;
                }
            }
        }
        let mut row = Vec::with_capacity(adj.len());
        for nb in adj {
            let step = nb.vector.norm_sq();
            let mut blockers = Vec::new();
            // every neighbour is among the members in both modes
            for &u in &lines[line_of[nb.vertex]] {
                if u == nb.vertex {
                    continue;
                }
                // blocks unless |z_u − z_a|² > |z_b − z_a|²
                let diff = &(&z[u] - &z[a]).norm_sq() - &step;
                if diff.real_sign()? != Ordering::Greater {
                    blockers.push(u);
                }
            }
            row.push(blockers);
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, EdgeMode};
    use crate::pointset::{square_grid, PointSet, Provenance, DEFAULT_POINT_BUDGET};
    use num_rational::BigRational;

    fn triangle() -> DistanceGraph {
        let ps = PointSet::new(
            vec![
                CycNum::zero(6).unwrap(),
                CycNum::one(6).unwrap(),
                CycNum::root_of_unity(1, 6).unwrap(),
            ],
            Provenance::new("triangle", 0),
        )
        .unwrap();
        build_graph(&ps, EdgeMode::Unit).unwrap()
    }

    fn line(m: usize) -> DistanceGraph {
        let ps = square_grid(1, m, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        build_graph(&ps, EdgeMode::Rational).unwrap()
    }

    #[test]
    fn triangle_paths() {
        let g = triangle();
        let o = PathOptions::default();
        assert_eq!(count_irredundant_paths(&g, 0, 1, 1, &o).unwrap(), 1);
        assert_eq!(count_irredundant_paths(&g, 0, 1, 2, &o).unwrap(), 1);
        // any 3-edge walk would have to revisit a vertex
        assert_eq!(count_irredundant_paths(&g, 0, 1, 3, &o).unwrap(), 0);
        let p = irredundant_paths(&g, 0, 1, 2, &o).unwrap();
        assert_eq!(p[0].vertices, [0, 2, 1]);
        // 0 → ζ_6 → 1: steps at +60° and −60°
        assert_eq!(path_direction_tuple(&p[0]).unwrap(), [1, 5]);
    }

    #[test]
    fn horizontal_path_tuple() {
        let g = line(3);
        let p = irredundant_paths(&g, 0, 2, 2, &PathOptions::default()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(path_direction_tuple(&p[0]).unwrap(), [0, 0]);
        assert!(p[0].shortest);
    }

    #[test]
    fn shortest_readings_on_a_line() {
        // points 0..4 on a line; every pair is an edge
        let g = line(4);
        let all = PathOptions::default();
        assert_eq!(count_irredundant_paths(&g, 0, 3, 2, &all).unwrap(), 2);
        let strict = PathOptions {
            shortest: ShortestMode::AllVertices,
            ..PathOptions::default()
        };
        // 0→1→3 jumps over 2; 0→2→3 jumps over 1; only unit steps survive
        assert_eq!(count_irredundant_paths(&g, 0, 3, 2, &strict).unwrap(), 0);
        assert_eq!(count_irredundant_paths(&g, 0, 3, 3, &strict).unwrap(), 1);
        let recs = irredundant_paths(&g, 0, 3, 2, &all).unwrap();
        assert!(recs.iter().all(|r| !r.shortest));
    }

    #[test]
    fn shortest_ignores_points_already_on_the_path() {
        // x = 0, 1, 3: the step 1 → 0 is shortest, and 0 → 3 passes back
        // over x = 1, which is already on the path
        let ps = PointSet::new(
            [0, 1, 3].iter().map(|&x| CycNum::from_integer(x, 4).unwrap()).collect(),
            Provenance::new("line", 0),
        )
        .unwrap();
        let g = build_graph(&ps, EdgeMode::Rational).unwrap();
        let strict = PathOptions {
            shortest: ShortestMode::AllVertices,
            ..PathOptions::default()
        };
        let p = irredundant_paths(&g, 1, 2, 2, &strict).unwrap();
        assert_eq!(p.iter().map(|r| r.vertices.clone()).collect::<Vec<_>>(), [vec![1, 0, 2]]);
    }

    #[test]
    fn neighbor_reading_only_sees_edges() {
        // unit mode: 0 - 1 - 2 but 0 and 2 are not adjacent
        let ps = square_grid(1, 3, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap();
        let g = build_graph(&ps, EdgeMode::Unit).unwrap();
        let nbr = PathOptions {
            shortest: ShortestMode::NeighborsOnly,
            ..PathOptions::default()
        };
        assert_eq!(count_irredundant_paths(&g, 0, 2, 2, &nbr).unwrap(), 1);
    }

    #[test]
    fn caps_and_endpoints() {
        let g = triangle();
        let o = PathOptions::default();
        assert!(matches!(
            count_irredundant_paths(&g, 0, 1, 9, &o),
            Err(Error::CapExceeded { what: "path length", .. })
        ));
        assert!(matches!(count_irredundant_paths(&g, 0, 0, 2, &o), Err(Error::SameEndpoints)));
        assert!(count_irredundant_paths(&g, 0, 5, 2, &o).is_err());
        let tight = PathOptions { budget: 1, ..o };
        assert!(count_irredundant_paths(&g, 0, 1, 2, &tight).is_err());
    }

    #[test]
    fn noncollinear_filter() {
        let g = build_graph(
            &square_grid(3, 3, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap(),
            EdgeMode::Rational,
        )
        .unwrap();
        let nc = PathOptions {
            noncollinear: true,
            ..PathOptions::default()
        };
        // corners 0 and 4 (diagonal neighbours): via 1 or via 3
        assert_eq!(count_irredundant_paths(&g, 0, 4, 2, &nc).unwrap(), 2);
        assert_eq!(count_irredundant_paths(&g, 0, 2, 2, &nc).unwrap(), 0);
        assert_eq!(count_irredundant_paths(&g, 0, 2, 2, &PathOptions::default()).unwrap(), 1);
    }

    #[test]
    fn counts_from_agree_with_pairwise() {
        let g = build_graph(
            &square_grid(3, 3, &BigRational::from_integer(1.into()), DEFAULT_POINT_BUDGET).unwrap(),
            EdgeMode::Rational,
        )
        .unwrap();
        let o = PathOptions::default();
        for k in 1..=3 {
            let counts = path_counts_from(&g, 4, k, &o).unwrap();
            for w in 0..9 {
                if w != 4 {
                    assert_eq!(counts[w], count_irredundant_paths(&g, 4, w, k, &o).unwrap());
                }
            }
            assert_eq!(counts[4], 0);
        }
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(paths_lower_bound(1, 1), 1);
        assert_eq!(paths_lower_bound(4, 2), 12);
        assert_eq!(paths_lower_bound(2, 3), 0);
        assert_eq!(paths_lower_bound(5, 0), 1);
        assert_eq!(paths_lower_bound(u64::MAX, 100), 0);
        assert_eq!(paths_lower_bound_discounted(8.0, 2.0, 2), 12.0);
    }
}
