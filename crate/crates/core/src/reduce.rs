//! Graph downsizing: edge-weight threshold, k-core peeling, isolate removal.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::PerceptionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceParams {
    pub k_weight: u64,
    pub k_core: usize,
}

impl Default for ReduceParams {
    fn default() -> Self {
        ReduceParams { k_weight: 2, k_core: 2 }
    }
}

/// Keeps edges of weight ≥ `k`. Nodes are kept even when left isolated.
pub fn k_weight_filter(g: &PerceptionGraph, k: u64) -> PerceptionGraph {
    let mut out = g.clone();
    out.retain_edges(|e| e.weight >= k);
    out
}

/// Maximal subgraph whose nodes all have at least `k` distinct incident
/// edges, direction and weight ignored.
pub fn k_core(g: &PerceptionGraph, k: usize) -> PerceptionGraph {
    if k == 0 {
        return g.clone();
    }
    let mut adj: HashMap<&str, HashSet<&str>> = g.nodes().map(|(l, _)| (l, HashSet::new())).collect();
    for e in g.edges() {
        adj.get_mut(e.src).unwrap().insert(e.dst);
        adj.get_mut(e.dst).unwrap().insert(e.src);
    }
    let mut degree: HashMap<&str, usize> = adj.iter().map(|(l, n)| (*l, n.len())).collect();
    let mut removed: HashSet<&str> = HashSet::new();
    let mut stack: Vec<&str> = g.nodes().map(|(l, _)| l).filter(|l| degree[l] < k).collect();
    while let Some(v) = stack.pop() {
        if !removed.insert(v) {
            continue;
        }
        for &u in &adj[v] {
            if removed.contains(u) {
                continue;
            }
            let d = degree.get_mut(u).unwrap();
            *d -= 1;
            if *d + 1 == k {
                stack.push(u);
            }
        }
    }
    let mut out = g.clone();
    out.retain_nodes(|l| !removed.contains(l));
    out
}

pub fn remove_isolates(g: &PerceptionGraph) -> PerceptionGraph {
    let degree = g.distinct_degrees();
    let keep: HashSet<String> = degree
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(l, _)| l.to_string())
        .collect();
    let mut out = g.clone();
    out.retain_nodes(|l| keep.contains(l));
    out
}

/// k-weight, then k-core, then isolate removal.
pub fn reduce(g: &PerceptionGraph, params: ReduceParams) -> PerceptionGraph {
    remove_isolates(&k_core(&k_weight_filter(g, params.k_weight), params.k_core))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PerceptionGraph {
        let mut g = PerceptionGraph::new();
        g.add_undirected("a2n", "b2n", 1).unwrap();
        g.add_undirected("b2n", "c2n", 1).unwrap();
        g.add_undirected("a2n", "c2n", 1).unwrap();
        g
    }

    #[test]
    fn weight_filter() {
        let mut g = PerceptionGraph::new();
        g.add_directed("x2a", "a2n", 1).unwrap();
        g.add_directed("y2a", "a2n", 2).unwrap();
        g.add_undirected("a2n", "b2n", 3).unwrap();
        let f = k_weight_filter(&g, 2);
        assert_eq!(f.edge_count(), 2);
        assert_eq!(f.node_count(), 4);
        assert_eq!(k_weight_filter(&g, 1), g);
    }

    #[test]
    fn core_of_triangle_and_path() {
        assert_eq!(k_core(&triangle(), 2), triangle());
        let mut path = PerceptionGraph::new();
        path.add_undirected("a2n", "b2n", 1).unwrap();
        path.add_undirected("b2n", "c2n", 1).unwrap();
        assert!(k_core(&path, 2).is_empty());
        assert_eq!(k_core(&path, 0), path);
    }

    #[test]
    fn core_counts_arcs_regardless_of_direction() {
        let mut g = triangle();
        g.add_directed("x2a", "a2n", 5).unwrap();
        g.add_directed("x2a", "b2n", 1).unwrap();
        g.add_directed("y2a", "c2n", 9).unwrap();
        let c = k_core(&g, 2);
        assert!(c.contains("x2a"));
        assert!(!c.contains("y2a"));
        assert_eq!(c.edge_count(), 5);
    }

    #[test]
    fn isolates() {
        let mut g = triangle();
        g.add_node("lonely2n").unwrap();
        let r = remove_isolates(&g);
        assert_eq!(r, triangle());
        assert_eq!(remove_isolates(&triangle()), triangle());
    }

    #[test]
    fn composite_defaults() {
        let mut g = triangle();
        g.add_directed("x2a", "a2n", 1).unwrap();
        assert!(reduce(&g, ReduceParams::default()).is_empty());
        assert_eq!(reduce(&g, ReduceParams { k_weight: 1, k_core: 2 }), triangle());
    }
}
