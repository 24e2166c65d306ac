use std::collections::HashMap;

use rayon::prelude::*;

use super::pack::cell_size;
use super::{
    classical_init, majorize, mix_seed, pack_components, separate_coincident, slice_stress, Anchor,
    BBox, ComponentLayout, LayoutSlice, Point, StressParams, Trajectory,
};
use crate::simnet::{DistanceTable, SliceGraph};
use crate::windowing::Attribute;

const JITTER_STREAM: u64 = 0x6A17;

fn component_seed(params: &StressParams, graph: &SliceGraph, component: usize) -> u64 {
    mix_seed(mix_seed(params.seed, graph.window.index as u64), component as u64)
}

fn jitter_seed(params: &StressParams, graph: &SliceGraph) -> u64 {
    mix_seed(mix_seed(params.seed, graph.window.index as u64), JITTER_STREAM)
}

/// Classical scaling per component, each centered on its centroid.
fn fresh_components(
    graph: &SliceGraph,
    table: &DistanceTable,
    params: &StressParams,
    which: &[usize],
) -> Vec<ComponentLayout> {
    which
        .iter()
        .map(|&k| {
            let mut pos = classical_init(&table.components[k], component_seed(params, graph, k));
            center(&mut pos);
            ComponentLayout::new(pos)
        })
        .collect()
}

fn center(points: &mut [Point]) {
    if points.is_empty() {
        return;
    }
    let mut c = Point::ORIGIN;
    for p in points.iter() {
        c += *p;
    }
    let c = c * (1.0 / points.len() as f64);
    for p in points.iter_mut() {
        *p = *p - c;
    }
}

/// Independent layout of one slice: classical scaling and majorization per
/// component, then grid packing. Seeds depend on the window index and the
/// component, never on neighboring slices.
pub fn solve_slice(graph: &SliceGraph, table: &DistanceTable, params: &StressParams) -> (LayoutSlice, f64) {
    let mut positions = vec![Point::ORIGIN; graph.nodes.len()];
    let all: Vec<usize> = (0..table.components.len()).collect();
    for (comp, layout) in table.components.iter().zip(fresh_components(graph, table, params, &all)) {
        for (&node, p) in comp.nodes.iter().zip(layout.positions) {
            positions[node] = p;
        }
    }
    separate_coincident(&mut positions, table, jitter_seed(params, graph));
    majorize(&mut positions, table, &[], params.max_iters, params.rel_tol);

    let layouts: Vec<ComponentLayout> = table
        .components
        .iter()
        .map(|comp| {
            let mut pos: Vec<Point> = comp.nodes.iter().map(|&n| positions[n]).collect();
            center(&mut pos);
            ComponentLayout::new(pos)
        })
        .collect();
    for (comp, packed) in table.components.iter().zip(pack_components(&layouts)) {
        for (&node, p) in comp.nodes.iter().zip(packed) {
            positions[node] = p;
        }
    }
    let stress = slice_stress(&positions, table, &[]);
    (
        LayoutSlice {
            window: graph.window.clone(),
            nodes: graph.nodes.clone(),
            positions,
        },
        stress,
    )
}

struct Coupled<'a> {
    graphs: &'a [SliceGraph],
    tables: &'a [DistanceTable],
    params: &'a StressParams,
    index: Vec<HashMap<&'a Attribute, usize>>,
    positions: Vec<Vec<Point>>,
    placed: Vec<bool>,
}

impl<'a> Coupled<'a> {
    fn new(graphs: &'a [SliceGraph], tables: &'a [DistanceTable], params: &'a StressParams) -> Self {
        let index = graphs
            .iter()
            .map(|g| g.nodes.iter().enumerate().map(|(i, a)| (a, i)).collect())
            .collect();
        Coupled {
            graphs,
            tables,
            params,
            index,
            positions: graphs.iter().map(|g| vec![Point::ORIGIN; g.nodes.len()]).collect(),
            placed: vec![false; graphs.len()],
        }
    }

    fn window_range(&self, t: usize, future: bool) -> impl Iterator<Item = usize> {
        let w = self.params.stability_window;
        let lo = t.saturating_sub(w);
        let hi = if future { (t + w).min(self.graphs.len() - 1) } else { t.saturating_sub(1) };
        (lo..=hi).filter(move |&u| u != t && (future || u < t))
    }

    fn anchors(&self, t: usize, future: bool) -> Vec<Anchor> {
        let mut anchors = Vec::new();
        for u in self.window_range(t, future) {
            if !self.placed[u] {
                continue;
            }
            for (i, attr) in self.graphs[t].nodes.iter().enumerate() {
                if let Some(&j) = self.index[u].get(attr) {
                    anchors.push(Anchor {
                        node: i,
                        target: self.positions[u][j],
                        weight: self.params.alpha,
                    });
                }
            }
        }
        anchors
    }

    /// Shared nodes start where they were most recently placed within the
    /// window; new nodes go to the centroid of placed neighbors; components
    /// with no placed node at all get classical scaling and are packed to
    /// the right of everything placed.
    fn initialize(&mut self, t: usize) {
        let graph = &self.graphs[t];
        let n = graph.nodes.len();
        let mut pos = vec![Point::ORIGIN; n];
        let mut known = vec![false; n];
        for (i, attr) in graph.nodes.iter().enumerate() {
            for u in self.window_range(t, false).collect::<Vec<_>>().into_iter().rev() {
                if let Some(&j) = self.index[u].get(attr) {
                    pos[i] = self.positions[u][j];
                    known[i] = true;
                    break;
                }
            }
        }

        let adj = graph.neighbors();
        loop {
            let mut progressed = false;
            for i in 0..n {
                if known[i] {
                    continue;
                }
                let placed: Vec<Point> = adj[i].iter().filter(|(j, _)| known[*j]).map(|(j, _)| pos[*j]).collect();
                if !placed.is_empty() {
                    let mut c = Point::ORIGIN;
                    for p in &placed {
                        c += *p;
                    }
                    pos[i] = c * (1.0 / placed.len() as f64);
                    known[i] = true;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }

        let table = &self.tables[t];
        let fresh: Vec<usize> = (0..table.components.len())
            .filter(|&k| table.components[k].nodes.iter().all(|&i| !known[i]))
            .collect();
        if !fresh.is_empty() {
            let layouts = fresh_components(graph, table, self.params, &fresh);
            let packed = pack_components(&layouts);
            let placed_points: Vec<Point> = (0..n).filter(|&i| known[i]).map(|i| pos[i]).collect();
            let offset = match BBox::of(&placed_points) {
                Some(b) => {
                    let gap = 0.1 * cell_size(&layouts).max(b.width()).max(b.height());
                    Point::new(b.max.x + gap, b.min.y)
                }
                None => Point::ORIGIN,
            };
            for (&k, comp_pos) in fresh.iter().zip(packed) {
                for (&node, p) in table.components[k].nodes.iter().zip(comp_pos) {
                    pos[node] = p + offset;
                }
            }
        }
        separate_coincident(&mut pos, table, jitter_seed(self.params, graph));
        self.positions[t] = pos;
    }

    fn relax(&mut self, t: usize, future: bool) {
        let anchors = self.anchors(t, future);
        let p = self.params;
        majorize(&mut self.positions[t], &self.tables[t], &anchors, p.max_iters, p.rel_tol);
        self.placed[t] = true;
    }

    fn stresses(&self) -> Vec<f64> {
        self.positions
            .iter()
            .zip(self.tables)
            .map(|(p, t)| slice_stress(p, t, &[]))
            .collect()
    }

    fn slices(&self) -> Vec<LayoutSlice> {
        self.graphs
            .iter()
            .zip(&self.positions)
            .map(|(g, p)| LayoutSlice {
                window: g.window.clone(),
                nodes: g.nodes.clone(),
                positions: p.clone(),
            })
            .collect()
    }
}

/// Total coupled objective: every slice's stress plus `alpha` times the
/// squared displacement of each shared node, once per slice pair at most
/// `stability_window` apart.
pub fn total_objective(
    slices: &[LayoutSlice],
    tables: &[DistanceTable],
    params: &StressParams,
) -> f64 {
    let mut total: f64 = slices
        .iter()
        .zip(tables)
        .map(|(s, t)| slice_stress(&s.positions, t, &[]))
        .sum();
    if params.alpha > 0.0 {
        for t in 0..slices.len() {
            let index: HashMap<&Attribute, usize> =
                slices[t].nodes.iter().enumerate().map(|(i, a)| (a, i)).collect();
            for u in t + 1..slices.len().min(t + params.stability_window + 1) {
                for (j, attr) in slices[u].nodes.iter().enumerate() {
                    if let Some(&i) = index.get(attr) {
                        total += params.alpha * (slices[t].positions[i] - slices[u].positions[j]).norm_sq();
                    }
                }
            }
        }
    }
    total
}

/// Lay out a sequence of slices. With `alpha == 0` (or a zero stability
/// window) every slice is solved independently. Otherwise the first sweep
/// runs forward, anchoring each slice to already solved earlier slices;
/// later sweeps run forward then backward anchoring to both sides, until
/// `sweeps` passes or the total objective stops changing.
pub fn solve_trajectory(
    graphs: &[SliceGraph],
    tables: &[DistanceTable],
    params: &StressParams,
) -> Trajectory {
    assert_eq!(graphs.len(), tables.len(), "graphs and tables must align");
    let coupled = params.alpha > 0.0 && params.stability_window > 0 && graphs.len() > 1;
    if !coupled {
        let solved: Vec<(LayoutSlice, f64)> = graphs
            .par_iter()
            .zip(tables)
            .map(|(g, t)| solve_slice(g, t, params))
            .collect();
        let stress_log: Vec<f64> = solved.iter().map(|(_, s)| *s).collect();
        return Trajectory {
            slices: solved.into_iter().map(|(s, _)| s).collect(),
            sweep_log: vec![stress_log.clone()],
            stress_log,
        };
    }

    let mut state = Coupled::new(graphs, tables, params);
    let mut sweep_log = Vec::new();

    for t in 0..graphs.len() {
        if t == 0 {
            let (slice, _) = solve_slice(&graphs[0], &tables[0], params);
            state.positions[0] = slice.positions;
            state.placed[0] = true;
            continue;
        }
        state.initialize(t);
        state.relax(t, false);
    }
    sweep_log.push(state.stresses());
    let mut objective = total_objective(&state.slices(), tables, params);

    for _ in 1..params.sweeps {
        let order: Vec<usize> = (0..graphs.len()).chain((0..graphs.len()).rev()).collect();
        for t in order {
            state.relax(t, true);
        }
        sweep_log.push(state.stresses());
        let next = total_objective(&state.slices(), tables, params);
        let change = (objective - next).abs();
        objective = next;
        if change <= params.rel_tol * objective.max(f64::MIN_POSITIVE) {
            break;
        }
    }

    Trajectory {
        slices: state.slices(),
        stress_log: state.stresses(),
        sweep_log,
    }
}

/// Mean Euclidean displacement of the nodes two slices share (0 if none).
pub fn mean_displacement(a: &LayoutSlice, b: &LayoutSlice) -> f64 {
    let index: HashMap<&Attribute, usize> = a.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let moves: Vec<f64> = b
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(j, n)| index.get(n).map(|&i| a.positions[i].dist(b.positions[j])))
        .collect();
    if moves.is_empty() {
        0.0
    } else {
        moves.iter().sum::<f64>() / moves.len() as f64
    }
}
