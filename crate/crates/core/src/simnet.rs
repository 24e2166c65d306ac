//! Cosine similarity networks over incidence-matrix columns and the
//! shortest-path target distances fed to the layout.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::windowing::{Attribute, IncidenceMatrix, TimeWindow};

/// Shortest allowed edge length; keeps cosine-1 pairs apart.
pub const MIN_EDGE_LENGTH: f64 = 0.05;

/// Slack allowed above 1 for rounded cosine values.
pub const COSINE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("vectors have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("cosine undefined for a zero vector")]
    ZeroVector,
}

/// Salton's cosine of two nonnegative vectors. Sums run in index order so the
/// result is bit-identical under argument swap.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, SimError> {
    if u.len() != v.len() {
        return Err(SimError::DimensionMismatch(u.len(), v.len()));
    }
    let (mut dot, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for (&a, &b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(SimError::ZeroVector);
    }
    Ok((dot / (nu * nv).sqrt()).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    /// Node indices with `a < b`.
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Thresholded cosine network of one window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceGraph {
    pub window: TimeWindow,
    pub nodes: Vec<Attribute>,
    /// Sorted by `(a, b)`.
    pub edges: Vec<Edge>,
    /// Connected components, each sorted ascending, ordered by first node.
    pub components: Vec<Vec<usize>>,
}

impl SliceGraph {
    pub fn empty(window: TimeWindow) -> Self {
        SliceGraph {
            window,
            nodes: Vec::new(),
            edges: Vec::new(),
            components: Vec::new(),
        }
    }

    /// Graph over explicit nodes and edges; components are derived.
    pub fn from_edges(window: TimeWindow, nodes: Vec<Attribute>, mut edges: Vec<Edge>) -> Self {
        for e in &mut edges {
            if e.a > e.b {
                std::mem::swap(&mut e.a, &mut e.b);
            }
        }
        edges.sort_by_key(|e| (e.a, e.b));
        let components = connected_components(nodes.len(), &edges);
        SliceGraph {
            window,
            nodes,
            edges,
            components,
        }
    }

    pub fn node_index(&self, attr: &Attribute) -> Option<usize> {
        self.nodes.binary_search(attr).ok().or_else(|| self.nodes.iter().position(|n| n == attr))
    }

    pub fn neighbors(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.weight));
            adj[e.b].push((e.a, e.weight));
        }
        adj
    }

    pub fn mean_weight(&self) -> f64 {
        if self.edges.is_empty() {
            return 0.0;
        }
        self.edges.iter().map(|e| e.weight).sum::<f64>() / self.edges.len() as f64
    }

    /// `kind:label <TAB> kind:label <TAB> cosine` per edge.
    pub fn edges_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{}\t{}\t{:.6}\n",
                self.nodes[e.a], self.nodes[e.b], e.weight
            ));
        }
        out
    }
}

fn connected_components(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        by_root[r].push(i);
    }
    let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

/// All-pairs cosine over attribute columns, keeping pairs with
/// `cosine >= threshold`.
pub fn build_slice_graph(matrix: &IncidenceMatrix, threshold: f64) -> SliceGraph {
    let columns: Vec<Vec<f64>> = (0..matrix.n_attributes()).map(|j| matrix.column(j)).collect();
    let mut edges = Vec::new();
    for a in 0..columns.len() {
        for b in a + 1..columns.len() {
            // Zero columns cannot occur after filtering; skip them if they do.
            if let Ok(w) = cosine(&columns[a], &columns[b]) {
                if w >= threshold {
                    edges.push(Edge { a, b, weight: w });
                }
            }
        }
    }
    SliceGraph::from_edges(matrix.window.clone(), matrix.attributes.clone(), edges)
}

/// Target distances and stress weights of one connected component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentDistances {
    /// Graph node indices, ascending.
    pub nodes: Vec<usize>,
    /// Row-major `nodes.len()^2` shortest-path distances.
    dist: Vec<f64>,
}

impl ComponentDistances {
    pub fn new(nodes: Vec<usize>, dist: Vec<f64>) -> Self {
        assert_eq!(dist.len(), nodes.len() * nodes.len());
        ComponentDistances { nodes, dist }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Distance between local indices `i` and `j`.
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.nodes.len() + j]
    }

    /// Stress weight `d^-2` between local indices (`i != j`).
    pub fn w(&self, i: usize, j: usize) -> f64 {
        let d = self.d(i, j);
        1.0 / (d * d)
    }
}

/// Per-component distance tables of one slice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceTable {
    pub n_nodes: usize,
    pub components: Vec<ComponentDistances>,
}

impl DistanceTable {
    /// `(d, w)` for graph nodes `i != j` in the same component.
    pub fn get(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        if i == j {
            return None;
        }
        self.components.iter().find_map(|c| {
            let li = c.nodes.binary_search(&i).ok()?;
            let lj = c.nodes.binary_search(&j).ok()?;
            Some((c.d(li, lj), c.w(li, lj)))
        })
    }
}

#[derive(Copy, Clone, PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapItem { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for &(next, len) in &adj[node] {
            let nd = d + len;
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(HeapItem { dist: nd, node: next });
            }
        }
    }
    dist
}

/// Edge length for a cosine weight.
pub fn edge_length(weight: f64) -> f64 {
    (1.0 - weight).max(MIN_EDGE_LENGTH)
}

/// Shortest-path distances over `1 - cosine` edge lengths (floored at
/// [`MIN_EDGE_LENGTH`]) within each connected component.
pub fn target_distances(graph: &SliceGraph) -> DistanceTable {
    let adj: Vec<Vec<(usize, f64)>> = graph
        .neighbors()
        .into_iter()
        .map(|ns| ns.into_iter().map(|(j, w)| (j, edge_length(w))).collect())
        .collect();
    let components = graph
        .components
        .iter()
        .map(|comp| {
            let n = comp.len();
            let mut dist = vec![0.0; n * n];
            for (li, &gi) in comp.iter().enumerate() {
                let from = dijkstra(&adj, gi);
                for (lj, &gj) in comp.iter().enumerate() {
                    dist[li * n + lj] = from[gj];
                }
            }
            // Symmetrize against summation-order differences between sources.
            for i in 0..n {
                for j in i + 1..n {
                    let m = dist[i * n + j].min(dist[j * n + i]);
                    dist[i * n + j] = m;
                    dist[j * n + i] = m;
                }
            }
            ComponentDistances::new(comp.clone(), dist)
        })
        .collect();
    DistanceTable {
        n_nodes: graph.nodes.len(),
        components,
    }
}
