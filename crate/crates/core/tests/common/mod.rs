//! Oracles and generators shared by the integration and acceptance tests.

#![allow(dead_code)]

pub mod props;

use std::collections::{BTreeMap, BTreeSet};

use keypartx::community::DirectedView;
use keypartx::corpus_io::{RawCorpus, RawDocument};
use keypartx::normalize::Lexicon;
use keypartx::PerceptionGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WORKED_EXAMPLE: &str = "Thai food was great, delicousr and not expensive, we loved it. We visited 3 beach resorts , they are highly recommended... We had \"Fire-Vodka\" !!!";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every set partition of `n` elements as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=max + 1 {
            prefix.push(c);
            let next_max = if c > max { c } else { max };
            grow(prefix, next_max, n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    grow(&mut prefix, 0, n, &mut out);
    out
}

pub fn bell(n: usize) -> usize {
    // Bell triangle.
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

/// Directed modularity straight from the double sum over ordered pairs.
pub fn modularity_double_sum(view: &DirectedView, membership: &[usize], gamma: f64) -> f64 {
    let n = view.len();
    if view.m == 0.0 {
        return 0.0;
    }
    let mut a = vec![vec![0.0; n]; n];
    for &(s, d, w) in &view.arcs {
        a[s][d] += w;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if membership[i] == membership[j] {
                q += a[i][j] - gamma * view.out_degree[i] * view.in_degree[j] / view.m;
            }
        }
    }
    q
}

/// Maximum Q over all partitions, with every maximizer.
pub fn brute_force_best(view: &DirectedView, gamma: f64) -> (f64, Vec<Vec<usize>>) {
    let mut best = f64::NEG_INFINITY;
    let mut argmax = Vec::new();
    for p in set_partitions(view.len()) {
        let q = modularity_double_sum(view, &p, gamma);
        if q > best + 1e-9 {
            best = q;
            argmax = vec![p];
        } else if (q - best).abs() <= 1e-9 {
            argmax.push(p);
        }
    }
    (best, argmax)
}

/// Random perception graph with up to `max_nodes` nodes, mixing A→N, V→N
/// and N–N edges.
pub fn random_graph(r: &mut ChaCha8Rng, max_nodes: usize, max_weight: u64) -> PerceptionGraph {
    let n = r.gen_range(2..=max_nodes);
    let labels: Vec<String> = (0..n)
        .map(|i| {
            let suffix = match r.gen_range(0..4) {
                0 => "2a",
                1 => "2v",
                _ => "2n",
            };
            format!("w{i}{suffix}")
        })
        .collect();
    let density: f64 = r.gen_range(0.2..0.8);
    let mut g = PerceptionGraph::new();
    for l in &labels {
        g.add_node(l).unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !r.gen_bool(density) {
                continue;
            }
            let (a, b) = (&labels[i], &labels[j]);
            let w = r.gen_range(1..=max_weight);
            match (a.ends_with("2n"), b.ends_with("2n")) {
                (false, true) => g.add_directed(a, b, w).unwrap(),
                (true, true) if i < j => g.add_undirected(a, b, w).unwrap(),
                _ => {}
            }
        }
    }
    g
}

pub fn scaled(g: &PerceptionGraph, s: u64) -> PerceptionGraph {
    let mut out = PerceptionGraph::new();
    for (l, _) in g.nodes() {
        out.add_node(l).unwrap();
    }
    for (a, b, w) in g.directed_edges() {
        out.add_directed(a, b, w * s).unwrap();
    }
    for (a, b, w) in g.undirected_edges() {
        out.add_undirected(a, b, w * s).unwrap();
    }
    out
}

/// Two directed 3-cycles joined by one bridge arc.
pub fn two_triangles_bridge() -> DirectedView {
    let labels = (0..6).map(|i| format!("v{i}")).collect();
    let arcs = [
        (0, 1, 1.0),
        (1, 2, 1.0),
        (2, 0, 1.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (5, 3, 1.0),
        (2, 3, 1.0),
    ];
    DirectedView::from_arcs(labels, &arcs).unwrap()
}

/// k-core by exhaustive search: the largest node subset whose induced
/// subgraph has minimum degree ≥ k. Checks that it contains every other
/// valid subset.
pub fn k_core_oracle(g: &PerceptionGraph, k: usize) -> BTreeSet<String> {
    let labels: Vec<&str> = g.nodes().map(|(l, _)| l).collect();
    let n = labels.len();
    assert!(n <= 16, "oracle is exponential");
    let idx: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (idx[e.src], idx[e.dst])).collect();
    let valid = |mask: u32| {
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            if mask & (1 << a) != 0 && mask & (1 << b) != 0 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        (0..n).all(|i| mask & (1 << i) == 0 || deg[i] >= k)
    };
    let mut best = 0u32;
    let mut all_valid = Vec::new();
    for mask in 0..(1u32 << n) {
        if valid(mask) {
            all_valid.push(mask);
            if mask.count_ones() > best.count_ones() {
                best = mask;
            }
        }
    }
    for m in all_valid {
        assert_eq!(m & !best, 0, "valid subsets must nest inside the maximum");
    }
    (0..n).filter(|i| best & (1 << i) != 0).map(|i| labels[i].to_string()).collect()
}

/// Edit distance as the length of the shortest chain of single-character
/// insertions, deletions, substitutions and adjacent swaps, found by
/// breadth-first search. Only practical for short strings.
pub fn dl_by_search(a: &str, b: &str) -> usize {
    use std::collections::{HashSet, VecDeque};
    let alphabet: BTreeSet<char> = a.chars().chain(b.chars()).collect();
    let target: Vec<char> = b.chars().collect();
    let start: Vec<char> = a.chars().collect();
    let limit = target.len() + 2;
    let mut seen: HashSet<Vec<char>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((cur, d)) = queue.pop_front() {
        if cur == target {
            return d;
        }
        let mut next = Vec::new();
        for i in 0..=cur.len() {
            if cur.len() < limit {
                for &c in &alphabet {
                    let mut v = cur.clone();
                    v.insert(i, c);
                    next.push(v);
                }
            }
            if i < cur.len() {
                let mut v = cur.clone();
                v.remove(i);
                next.push(v);
                for &c in &alphabet {
                    if c != cur[i] {
                        let mut v = cur.clone();
                        v[i] = c;
                        next.push(v);
                    }
                }
            }
            if i + 1 < cur.len() {
                let mut v = cur.clone();
                v.swap(i, i + 1);
                next.push(v);
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back((v, d + 1));
            }
        }
    }
    unreachable!("the target is always reachable")
}

/// Highest-frequency lexicon word at the smallest distance (1, then 2),
/// found by scanning the whole lexicon.
pub fn brute_force_correction(word: &str, lex: &Lexicon) -> Option<String> {
    use keypartx::normalize::damerau_levenshtein;
    for limit in 1..=2 {
        let best = lex
            .words()
            .filter(|(w, _)| damerau_levenshtein(w, word) == limit)
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)));
        if let Some((w, _)) = best {
            return Some(w.to_string());
        }
    }
    None
}

/// Seeded single-typo corruptions of common lexicon words. Corruptions that
/// are themselves lexicon words are skipped.
pub fn typo_cases(lex: &Lexicon, seed: u64, count: usize) -> Vec<(String, String)> {
    let mut pool: Vec<(&str, u64)> = lex
        .words()
        .filter(|(w, f)| w.len() >= 7 && *f >= 50 && w.chars().all(|c| c.is_ascii_lowercase()))
        .collect();
    pool.sort();
    let mut r = rng(seed);
    let letters: Vec<char> = ('a'..='z').collect();
    let mut out = Vec::new();
    while out.len() < count {
        let (word, _) = *pool.choose(&mut r).unwrap();
        let mut chars: Vec<char> = word.chars().collect();
        let i = r.gen_range(0..chars.len() - 1);
        match r.gen_range(0..4) {
            0 => {
                chars.remove(i);
            }
            1 => chars.insert(i, *letters.choose(&mut r).unwrap()),
            2 => chars[i] = *letters.choose(&mut r).unwrap(),
            _ => chars.swap(i, i + 1),
        }
        let typo: String = chars.into_iter().collect();
        if typo != word && !lex.contains(&typo) {
            out.push((typo, word.to_string()));
        }
    }
    out
}

const NOUNS: &[&str] = &[
    "room", "beach", "hotel", "staff", "food", "pool", "view", "island", "market", "restaurant",
    "temple", "breakfast", "service", "bar", "night", "boat", "water", "price", "trip", "city",
];
const ADJS: &[&str] = &[
    "great", "clean", "friendly", "beautiful", "cheap", "amazing", "nice", "busy", "quiet", "delicious",
    "expensive", "big", "small", "helpful", "lovely",
];
const VERBS: &[&str] = &["loved", "enjoyed", "visited", "liked", "recommend", "hated", "booked", "tried"];

/// Seeded review-like documents built from simple templates.
pub fn synthetic_reviews(seed: u64, docs: usize) -> RawCorpus {
    let mut r = rng(seed);
    let mut documents = Vec::new();
    for d in 0..docs {
        let mut sentences = Vec::new();
        for _ in 0..r.gen_range(2..6) {
            let n = NOUNS.choose(&mut r).unwrap();
            let n2 = NOUNS.choose(&mut r).unwrap();
            let a = ADJS.choose(&mut r).unwrap();
            let a2 = ADJS.choose(&mut r).unwrap();
            let v = VERBS.choose(&mut r).unwrap();
            let s = match r.gen_range(0..5) {
                0 => format!("The {n} was {a} and {a2}."),
                1 => format!("We {v} the {n}."),
                2 => format!("A {a} {n} near the {n2}!"),
                3 => format!("The {n} is not {a}, but the {n2} was {a2}."),
                _ => format!("They {v} the {a} {n}."),
            };
            sentences.push(s);
        }
        documents.push(RawDocument {
            id: format!("s{d}"),
            text: sentences.join(" "),
        });
    }
    RawCorpus { documents }
}
