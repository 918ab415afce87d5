//! Directed modularity and Leiden-style community detection.
//!
//! Quality is the unnormalized directed modularity
//! `Q = Σ_ij (A_ij − γ k_i^out k_j^in / m) δ(σ_i, σ_j)`.
//! Undirected edges enter as two opposite arcs of equal weight.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{NodeKind, PerceptionGraph};

/// Moves must raise Q by more than this fraction of the total arc weight.
const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedView {
    pub labels: Vec<String>,
    /// `(src, dst, weight)`; may contain self-loops only after aggregation.
    pub arcs: Vec<(usize, usize, f64)>,
    pub out_degree: Vec<f64>,
    pub in_degree: Vec<f64>,
    pub m: f64,
}

impl DirectedView {
    /// Nodes in label order; NN edges become two arcs.
    pub fn from_graph(g: &PerceptionGraph) -> Self {
        let labels: Vec<String> = g.nodes().map(|(l, _)| l.to_string()).collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut arcs = Vec::with_capacity(g.directed_count() + 2 * g.undirected_count());
        for (s, d, w) in g.directed_edges() {
            arcs.push((index[s], index[d], w as f64));
        }
        for (u, v, w) in g.undirected_edges() {
            arcs.push((index[u], index[v], w as f64));
            arcs.push((index[v], index[u], w as f64));
        }
        Self::build(labels, arcs)
    }

    /// A view from raw arcs. Parallel arcs add up; self-loops and
    /// non-positive weights are rejected.
    pub fn from_arcs(labels: Vec<String>, arcs: &[(usize, usize, f64)]) -> Result<Self> {
        let n = labels.len();
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for &(s, d, w) in arcs {
            if s >= n || d >= n {
                return Err(Error::Argument(format!("arc ({s}, {d}) outside {n} nodes")));
            }
            if s == d {
                return Err(Error::Argument(format!("self-loop on node {s}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::Argument(format!("arc ({s}, {d}) has weight {w}")));
            }
            *merged.entry((s, d)).or_insert(0.0) += w;
        }
        Ok(Self::build(labels, merged.into_iter().map(|((s, d), w)| (s, d, w)).collect()))
    }

    fn build(labels: Vec<String>, arcs: Vec<(usize, usize, f64)>) -> Self {
        let n = labels.len();
        let mut out_degree = vec![0.0; n];
        let mut in_degree = vec![0.0; n];
        let mut m = 0.0;
        for &(s, d, w) in &arcs {
            out_degree[s] += w;
            in_degree[d] += w;
            m += w;
        }
        DirectedView {
            labels,
            arcs,
            out_degree,
            in_degree,
            m,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Q for a membership vector indexed like `view.labels`.
pub fn modularity(view: &DirectedView, membership: &[usize], gamma: f64) -> f64 {
    if view.m == 0.0 {
        return 0.0;
    }
    let mut inside = 0.0;
    for &(s, d, w) in &view.arcs {
        if membership[s] == membership[d] {
            inside += w;
        }
    }
    let mut k_out: HashMap<usize, f64> = HashMap::new();
    let mut k_in: HashMap<usize, f64> = HashMap::new();
    for (i, &c) in membership.iter().enumerate() {
        *k_out.entry(c).or_insert(0.0) += view.out_degree[i];
        *k_in.entry(c).or_insert(0.0) += view.in_degree[i];
    }
    let mut communities: Vec<usize> = k_out.keys().copied().collect();
    communities.sort_unstable();
    let expected: f64 = communities.iter().map(|c| k_out[c] * k_in[c]).sum();
    inside - gamma * expected / view.m
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub assignment: BTreeMap<String, usize>,
    /// Q as defined above, without the 1/m factor.
    pub quality: f64,
    /// `quality / m`.
    pub normalized: f64,
    pub gamma: f64,
}

impl Partition {
    pub fn community_count(&self) -> usize {
        self.assignment.values().max().map_or(0, |&c| c + 1)
    }

    /// Members of each community, in id order, labels sorted.
    pub fn communities(&self) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (l, &c) in &self.assignment {
            out[c].push(l.clone());
        }
        out
    }

    /// Membership vector aligned with `view.labels`.
    pub fn membership(&self, view: &DirectedView) -> Result<Vec<usize>> {
        view.labels
            .iter()
            .map(|l| {
                self.assignment
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::Argument(format!("partition does not assign {l}")))
            })
            .collect()
    }
}

/// Q of `p` on `view`. Every node of the view must be assigned.
pub fn directed_modularity(view: &DirectedView, p: &Partition, gamma: f64) -> Result<f64> {
    Ok(modularity(view, &p.membership(view)?, gamma))
}

/// Relabels so communities are numbered by their first node in label order.
fn canonical(membership: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    membership
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

fn partition_of(view: &DirectedView, membership: &[usize], gamma: f64) -> Partition {
    let membership = canonical(membership);
    let quality = modularity(view, &membership, gamma);
    Partition {
        assignment: view.labels.iter().cloned().zip(membership).collect(),
        quality,
        normalized: if view.m > 0.0 { quality / view.m } else { 0.0 },
        gamma,
    }
}

pub fn detect_communities(g: &PerceptionGraph, gamma: f64, seed: u64) -> Result<Partition> {
    detect_communities_view(&DirectedView::from_graph(g), gamma, seed)
}

/// Local moving, refinement and aggregation, repeated until no move
/// improves Q. Deterministic for a fixed seed.
pub fn detect_communities_view(view: &DirectedView, gamma: f64, seed: u64) -> Result<Partition> {
    if view.is_empty() {
        return Err(Error::Argument("cannot partition an empty graph".into()));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Argument(format!("gamma must be positive, got {gamma}")));
    }
    let n = view.len();
    if view.m == 0.0 {
        return Ok(partition_of(view, &(0..n).collect::<Vec<_>>(), gamma));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = TOLERANCE * view.m;
    let mut level = Level::from_view(view);
    // Level node of every original node.
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut membership: Vec<usize> = (0..n).collect();
    loop {
        level.local_move(&mut membership, gamma, eps, &mut rng);
        let communities = distinct(&membership);
        if communities == level.len() {
            break;
        }
        let mut refined = level.refine(&membership, gamma, eps, &mut rng);
        if distinct(&refined) == level.len() {
            refined = membership.clone();
        }
        let (next, block) = level.aggregate(&refined);
        let mut next_membership = vec![0; next.len()];
        for (v, &b) in block.iter().enumerate() {
            next_membership[b] = membership[v];
        }
        for v in node_of.iter_mut() {
            *v = block[*v];
        }
        level = next;
        membership = canonical(&next_membership);
    }
    let result: Vec<usize> = node_of.iter().map(|&v| membership[v]).collect();
    let found = partition_of(view, &result, gamma);
    let whole = partition_of(view, &vec![0; n], gamma);
    Ok(if whole.quality > found.quality + eps { whole } else { found })
}

fn distinct(membership: &[usize]) -> usize {
    let mut seen: Vec<usize> = membership.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Weighted graph at one aggregation level. Self-loops carry the weight
/// internal to a super-node.
struct Level {
    out_arcs: Vec<Vec<(usize, f64)>>,
    in_arcs: Vec<Vec<(usize, f64)>>,
    k_out: Vec<f64>,
    k_in: Vec<f64>,
    m: f64,
}

impl Level {
    fn from_view(view: &DirectedView) -> Self {
        Self::from_arcs(view.len(), view.arcs.iter().copied(), view.m)
    }

    fn from_arcs(n: usize, arcs: impl Iterator<Item = (usize, usize, f64)>, m: f64) -> Self {
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        let mut k_out = vec![0.0; n];
        let mut k_in = vec![0.0; n];
        for (s, d, w) in arcs {
            out_arcs[s].push((d, w));
            in_arcs[d].push((s, w));
            k_out[s] += w;
            k_in[d] += w;
        }
        Level {
            out_arcs,
            in_arcs,
            k_out,
            k_in,
            m,
        }
    }

    fn len(&self) -> usize {
        self.k_out.len()
    }

    /// Arc weight between `v` and each neighbouring community, both
    /// directions summed, self-loops excluded. Sorted by community id.
    fn links(&self, v: usize, membership: &[usize], allowed: impl Fn(usize) -> bool) -> Vec<(usize, f64)> {
        let mut links: BTreeMap<usize, f64> = BTreeMap::new();
        for &(u, w) in self.out_arcs[v].iter().chain(&self.in_arcs[v]) {
            if u != v && allowed(u) {
                *links.entry(membership[u]).or_insert(0.0) += w;
            }
        }
        links.into_iter().collect()
    }

    /// Gain of placing the isolated node `v` into a community with the
    /// given link weight and degree totals (which exclude `v`).
    fn gain(&self, v: usize, link: f64, tot_out: f64, tot_in: f64, gamma: f64) -> f64 {
        link - gamma * (self.k_out[v] * tot_in + self.k_in[v] * tot_out) / self.m
    }

    fn local_move(&self, membership: &mut [usize], gamma: f64, eps: f64, rng: &mut ChaCha8Rng) -> bool {
        let n = self.len();
        let mut tot_out = vec![0.0; n];
        let mut tot_in = vec![0.0; n];
        let mut size = vec![0usize; n];
        for v in 0..n {
            tot_out[membership[v]] += self.k_out[v];
            tot_in[membership[v]] += self.k_in[v];
            size[membership[v]] += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut queue: std::collections::VecDeque<usize> = order.into();
        let mut queued = vec![true; n];
        let mut moved = false;
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            let own = membership[v];
            tot_out[own] -= self.k_out[v];
            tot_in[own] -= self.k_in[v];
            size[own] -= 1;
            let links = self.links(v, membership, |_| true);
            let link_to = |c: usize| links.iter().find(|(x, _)| *x == c).map_or(0.0, |x| x.1);
            let stay = self.gain(v, link_to(own), tot_out[own], tot_in[own], gamma);
            let mut best = own;
            let mut best_gain = stay;
            for &(c, w) in &links {
                if c == own {
                    continue;
                }
                let g = self.gain(v, w, tot_out[c], tot_in[c], gamma);
                if g > best_gain + eps || (g > stay + eps && (g - best_gain).abs() <= eps && c < best) {
                    best = c;
                    best_gain = g;
                }
            }
            if size[own] > 0 && best_gain < -eps {
                if let Some(empty) = (0..n).find(|&c| size[c] == 0) {
                    best = empty;
                }
            }
            membership[v] = best;
            tot_out[best] += self.k_out[v];
            tot_in[best] += self.k_in[v];
            size[best] += 1;
            if best != own {
                moved = true;
                for &(u, _) in self.out_arcs[v].iter().chain(&self.in_arcs[v]) {
                    if u != v && !queued[u] && membership[u] != best {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        moved
    }

    /// Greedy merges of singletons inside each community, starting from a
    /// singleton partition.
    fn refine(&self, membership: &[usize], gamma: f64, eps: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let n = self.len();
        let mut refined: Vec<usize> = (0..n).collect();
        let mut tot_out = self.k_out.clone();
        let mut tot_in = self.k_in.clone();
        let mut size = vec![1usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for v in order {
            if size[refined[v]] != 1 {
                continue;
            }
            let own = refined[v];
            let links = self.links(v, &refined, |u| membership[u] == membership[v]);
            let mut best = own;
            let mut best_gain = 0.0;
            for &(c, w) in &links {
                let g = self.gain(v, w, tot_out[c], tot_in[c], gamma);
                if g > best_gain + eps {
                    best = c;
                    best_gain = g;
                }
            }
            if best != own {
                tot_out[own] -= self.k_out[v];
                tot_in[own] -= self.k_in[v];
                size[own] -= 1;
                refined[v] = best;
                tot_out[best] += self.k_out[v];
                tot_in[best] += self.k_in[v];
                size[best] += 1;
            }
        }
        refined
    }

    /// Collapses each block of `blocks` into one node. Returns the new
    /// level and the block index of every current node.
    fn aggregate(&self, blocks: &[usize]) -> (Level, Vec<usize>) {
        let canon = canonical(blocks);
        let count = distinct(&canon);
        let mut arcs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (s, list) in self.out_arcs.iter().enumerate() {
            for &(d, w) in list {
                *arcs.entry((canon[s], canon[d])).or_insert(0.0) += w;
            }
        }
        let level = Level::from_arcs(count, arcs.into_iter().map(|((s, d), w)| (s, d, w)), self.m);
        (level, canon)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommunityCensus {
    pub id: usize,
    pub nodes: Vec<String>,
    pub adj: usize,
    pub verb: usize,
    pub noun: usize,
    /// No adjective or verb members.
    pub noun_only: bool,
}

pub fn community_pos_census(g: &PerceptionGraph, p: &Partition) -> Result<Vec<CommunityCensus>> {
    p.communities()
        .into_iter()
        .enumerate()
        .map(|(id, nodes)| {
            let (mut adj, mut verb, mut noun) = (0, 0, 0);
            for l in &nodes {
                match g.kind(l) {
                    Some(NodeKind::Adj) => adj += 1,
                    Some(NodeKind::Verb) => verb += 1,
                    Some(NodeKind::Noun) => noun += 1,
                    None => return Err(Error::Argument(format!("partition node {l} is not in the graph"))),
                }
            }
            Ok(CommunityCensus {
                id,
                nodes,
                adj,
                verb,
                noun,
                noun_only: adj + verb == 0,
            })
        })
        .collect()
}
