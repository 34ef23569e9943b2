use std::collections::VecDeque;

use crate::error::{Error, Result};

/// e / (2n): peeling at this threshold removes fewer than e/2 edges.
pub fn peel_threshold(edge_count: usize, vertex_count: usize) -> f64 {
    if vertex_count == 0 {
        return 0.0;
    }
    edge_count as f64 / (2.0 * vertex_count as f64)
}

/// Degree peeling on a simple graph given by its edge list. Returns the
/// survivor mask: every surviving vertex has at least `threshold` surviving
/// neighbours. Each deleted vertex takes fewer than `threshold` edges with it.
pub fn peel(n: usize, edges: &[(usize, usize)], threshold: f64) -> Result<Vec<bool>> {
    if !(threshold >= 0.0) {
        return Err(Error::InvalidParameter(format!("peeling threshold {threshold} must be ≥ 0")));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| (degree[v] as f64) < threshold).collect();
    let mut queued: Vec<bool> = (0..n).map(|v| (degree[v] as f64) < threshold).collect();
    while let Some(v) = queue.pop_front() {
        alive[v] = false;
        for &u in &adj[v] {
            if !alive[u] {
                continue;
            }
            degree[u] -= 1;
            if !queued[u] && (degree[u] as f64) < threshold {
                queued[u] = true;
                queue.push_back(u);
            }
        }
    }
    Ok(alive)
}
