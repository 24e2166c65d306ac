use std::collections::BTreeMap;

use serde::Serialize;

use super::Viewport;
use crate::layout::{LayoutSlice, Point, Trajectory};
use crate::simnet::SliceGraph;
use crate::windowing::Attribute;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameNode {
    pub attr: Attribute,
    /// Normalized to `[0.05, 0.95]^2`.
    pub pos: Point,
    pub opacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameEdge {
    /// `a < b`
    pub a: Attribute,
    pub b: Attribute,
    pub weight: f64,
    pub opacity: f64,
}

/// One drawable picture. Nodes are sorted by attribute, edges by endpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    pub label: String,
    pub nodes: Vec<FrameNode>,
    pub edges: Vec<FrameEdge>,
}

impl Frame {
    pub fn from_slice(graph: &SliceGraph, layout: &LayoutSlice, viewport: &Viewport) -> Self {
        let mut nodes: Vec<FrameNode> = layout
            .nodes
            .iter()
            .zip(&layout.positions)
            .map(|(attr, &p)| FrameNode {
                attr: attr.clone(),
                pos: viewport.map(p),
                opacity: 1.0,
            })
            .collect();
        nodes.sort_by(|x, y| x.attr.cmp(&y.attr));
        let mut edges: Vec<FrameEdge> = graph
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (&graph.nodes[e.a], &graph.nodes[e.b]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                FrameEdge {
                    a: a.clone(),
                    b: b.clone(),
                    weight: e.weight,
                    opacity: 1.0,
                }
            })
            .collect();
        edges.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        Frame {
            label: graph.window.label.clone(),
            nodes,
            edges,
        }
    }

    pub fn node(&self, attr: &Attribute) -> Option<&FrameNode> {
        self.nodes.iter().find(|n| &n.attr == attr)
    }

    pub fn position(&self, attr: &Attribute) -> Option<Point> {
        self.node(attr).map(|n| n.pos)
    }
}

/// One key frame per slice, all in the trajectory-wide viewport.
pub fn keyframes(trajectory: &Trajectory, graphs: &[SliceGraph]) -> Vec<Frame> {
    let viewport = Viewport::global(trajectory);
    trajectory
        .slices
        .iter()
        .zip(graphs)
        .map(|(s, g)| Frame::from_slice(g, s, &viewport))
        .collect()
}

fn lerp(a: f64, b: f64, s: f64) -> f64 {
    (1.0 - s) * a + s * b
}

/// Linear blend of two frames. Shared nodes move along the segment; nodes
/// only in `a` fade out in place, nodes only in `b` fade in at their target.
/// Edges follow the same rule. Fully transparent items are dropped, so the
/// endpoints reproduce `a` and `b`.
pub fn interpolate(a: &Frame, b: &Frame, s: f64) -> Frame {
    let s = s.clamp(0.0, 1.0);
    let mut nodes: BTreeMap<&Attribute, FrameNode> = BTreeMap::new();
    for n in &a.nodes {
        nodes.insert(
            &n.attr,
            FrameNode {
                attr: n.attr.clone(),
                pos: n.pos,
                opacity: n.opacity * (1.0 - s),
            },
        );
    }
    for n in &b.nodes {
        match nodes.get_mut(&n.attr) {
            Some(shared) => {
                let from = a.node(&n.attr).expect("present in a");
                shared.pos = from.pos.lerp(n.pos, s);
                shared.opacity = lerp(from.opacity, n.opacity, s);
            }
            None => {
                nodes.insert(
                    &n.attr,
                    FrameNode {
                        attr: n.attr.clone(),
                        pos: n.pos,
                        opacity: n.opacity * s,
                    },
                );
            }
        }
    }

    type Key<'f> = (&'f Attribute, &'f Attribute);
    let mut edges: BTreeMap<Key, FrameEdge> = BTreeMap::new();
    for e in &a.edges {
        edges.insert(
            (&e.a, &e.b),
            FrameEdge {
                opacity: e.opacity * (1.0 - s),
                ..e.clone()
            },
        );
    }
    for e in &b.edges {
        match edges.get_mut(&(&e.a, &e.b)) {
            Some(shared) => {
                let from = a
                    .edges
                    .iter()
                    .find(|x| x.a == e.a && x.b == e.b)
                    .expect("present in a");
                shared.weight = lerp(from.weight, e.weight, s);
                shared.opacity = lerp(from.opacity, e.opacity, s);
            }
            None => {
                edges.insert(
                    (&e.a, &e.b),
                    FrameEdge {
                        opacity: e.opacity * s,
                        ..e.clone()
                    },
                );
            }
        }
    }

    Frame {
        label: if s < 0.5 { a.label.clone() } else { b.label.clone() },
        nodes: nodes.into_values().filter(|n| n.opacity > 0.0).collect(),
        edges: edges.into_values().filter(|e| e.opacity > 0.0).collect(),
    }
}

/// Key frames with `transition_frames` blends between each consecutive pair:
/// `k + (k - 1) * transition_frames` frames for `k` key frames.
pub fn animation_frames(keys: &[Frame], transition_frames: usize) -> Vec<Frame> {
    let mut out = Vec::with_capacity(keys.len() + keys.len().saturating_sub(1) * transition_frames);
    for (i, key) in keys.iter().enumerate() {
        out.push(key.clone());
        if let Some(next) = keys.get(i + 1) {
            for k in 1..=transition_frames {
                let s = k as f64 / (transition_frames + 1) as f64;
                out.push(interpolate(key, next, s));
            }
        }
    }
    out
}
