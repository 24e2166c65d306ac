#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use chronogram::ingest::{normalize_author, Corpus, StopwordSet};
use chronogram::layout::Point;
use chronogram::simnet::{target_distances, DistanceTable, Edge, SliceGraph};
use chronogram::windowing::{
    extract_attributes, Attribute, AttributeKind, IncidenceMatrix, IncidenceOptions, TimeWindow,
};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// Random connected-or-not graph with `n` nodes, edge probability `p` and
/// cosine weights in `[0.2, 1]`.
pub fn random_graph(rng: &mut impl Rng, window: TimeWindow, n: usize, p: f64) -> (SliceGraph, DistanceTable) {
    let kinds = [AttributeKind::Word, AttributeKind::Author, AttributeKind::Journal];
    let mut nodes: Vec<Attribute> = (0..n)
        .map(|i| Attribute::new(kinds[rng.gen_range(0..3)], format!("n{i:03}")))
        .collect();
    nodes.sort();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge {
                    a,
                    b,
                    weight: rng.gen_range(0.2..=1.0),
                });
            }
        }
    }
    let graph = SliceGraph::from_edges(window, nodes, edges);
    let table = target_distances(&graph);
    (graph, table)
}

pub fn random_positions(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
        .collect()
}

/// All-pairs shortest paths by Floyd-Warshall over `max(1 - w, 0.05)`.
pub fn floyd_warshall(graph: &SliceGraph) -> Vec<Vec<f64>> {
    let n = graph.nodes.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in &graph.edges {
        let len = (1.0 - e.weight).max(0.05);
        d[e.a][e.b] = d[e.a][e.b].min(len);
        d[e.b][e.a] = d[e.b][e.a].min(len);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Cosine of two nonzero integer vectors via exact big-integer arithmetic:
/// `floor(sqrt(dot^2 * 10^60 / (|u|^2 |v|^2))) / 10^30`.
pub fn rational_cosine(u: &[u64], v: &[u64]) -> f64 {
    let big = |x: u64| BigUint::from(x);
    let dot: BigUint = u.iter().zip(v).map(|(&a, &b)| big(a) * big(b)).sum();
    let nu: BigUint = u.iter().map(|&a| big(a) * big(a)).sum();
    let nv: BigUint = v.iter().map(|&b| big(b) * big(b)).sum();
    let scale = BigUint::from(10u32).pow(60);
    let scaled = (&dot * &dot * scale) / (nu * nv);
    scaled.sqrt().to_f64().unwrap() / 1e30
}

/// Incidence matrix by brute force: the largest document subset in which
/// every document keeps a Word/Author attribute of document frequency
/// `>= min_occ` (computed over that subset), found by trying every subset.
pub fn exhaustive_incidence(
    corpus: &Corpus,
    window: &TimeWindow,
    stopwords: &StopwordSet,
    opts: &IncidenceOptions,
) -> Option<IncidenceMatrix> {
    let anchor = opts.anchor.as_deref().map(normalize_author);
    let mut records: Vec<_> = corpus.records.iter().filter(|r| window.contains(r.year)).collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    assert!(records.len() <= 16, "exhaustive oracle is exponential");
    let docs: Vec<BTreeMap<Attribute, u32>> = records
        .iter()
        .map(|r| {
            let mut a = extract_attributes(r, stopwords, opts.extract);
            if let Some(anchor) = &anchor {
                a.remove(&Attribute::author(anchor.clone()));
            }
            a
        })
        .collect();

    let df = |subset: &[usize]| {
        let mut df: BTreeMap<&Attribute, u32> = BTreeMap::new();
        for &d in subset {
            for a in docs[d].keys() {
                *df.entry(a).or_default() += 1;
            }
        }
        df
    };
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..(1 << docs.len()) {
        let subset: Vec<usize> = (0..docs.len()).filter(|i| mask & (1 << i) != 0).collect();
        if subset.len() <= best.len() {
            continue;
        }
        let freq = df(&subset);
        let stable = subset.iter().all(|&d| {
            docs[d].keys().any(|a| {
                matches!(a.kind, AttributeKind::Word | AttributeKind::Author) && freq[a] >= opts.min_occ
            })
        });
        if stable {
            best = subset;
        }
    }
    if best.is_empty() {
        return None;
    }
    let freq = df(&best);
    let mut attributes: BTreeSet<Attribute> = freq
        .iter()
        .filter(|&(_, &n)| n >= opts.min_occ)
        .map(|(a, _)| (*a).clone())
        .collect();
    if let Some(anchor) = &anchor {
        attributes.insert(Attribute::new(AttributeKind::Anchor, anchor.clone()));
    }
    let attributes: Vec<Attribute> = attributes.into_iter().collect();
    let rows: Vec<Vec<u32>> = best
        .iter()
        .map(|&d| {
            attributes
                .iter()
                .map(|a| {
                    let n = if a.kind == AttributeKind::Anchor { 1 } else { docs[d].get(a).copied().unwrap_or(0) };
                    if opts.binarize {
                        n.min(1)
                    } else {
                        n
                    }
                })
                .collect()
        })
        .collect();
    let ids = best.iter().map(|&d| records[d].id.clone()).collect();
    Some(IncidenceMatrix::from_rows(window.clone(), ids, attributes, &rows))
}
