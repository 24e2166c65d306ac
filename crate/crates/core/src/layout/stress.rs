use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Point;
use crate::simnet::DistanceTable;

/// Quadratic pull of `node` towards `target` with coefficient `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub node: usize,
    pub target: Point,
    pub weight: f64,
}

/// Neumaier-compensated sum; keeps descent checks meaningful near 1e-12.
#[derive(Default)]
struct Sum {
    sum: f64,
    comp: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `sum_{i<j} w_ij (|x_i - x_j| - d_ij)^2 + sum_anchors c |x - t|^2`
pub fn slice_stress(positions: &[Point], distances: &DistanceTable, anchors: &[Anchor]) -> f64 {
    let mut total = Sum::default();
    for comp in &distances.components {
        for i in 0..comp.len() {
            let xi = positions[comp.nodes[i]];
            for j in i + 1..comp.len() {
                let r = xi.dist(positions[comp.nodes[j]]) - comp.d(i, j);
                total.add(comp.w(i, j) * r * r);
            }
        }
    }
    for a in anchors {
        total.add(a.weight * (positions[a.node] - a.target).norm_sq());
    }
    total.value()
}

/// Analytic gradient of [`slice_stress`] with respect to every position.
/// Coincident pairs contribute zero (the subgradient at the kink).
pub fn stress_gradient(positions: &[Point], distances: &DistanceTable, anchors: &[Anchor]) -> Vec<Point> {
    let mut grad = vec![Point::ORIGIN; positions.len()];
    for comp in &distances.components {
        for i in 0..comp.len() {
            let gi = comp.nodes[i];
            for j in i + 1..comp.len() {
                let gj = comp.nodes[j];
                let diff = positions[gi] - positions[gj];
                let len = diff.norm();
                if len == 0.0 {
                    continue;
                }
                let g = diff * (2.0 * comp.w(i, j) * (len - comp.d(i, j)) / len);
                grad[gi] += g;
                grad[gj] = grad[gj] - g;
            }
        }
    }
    for a in anchors {
        grad[a.node] += (positions[a.node] - a.target) * (2.0 * a.weight);
    }
    grad
}

fn anchors_by_node(n: usize, anchors: &[Anchor]) -> Vec<Vec<Anchor>> {
    let mut by_node = vec![Vec::new(); n];
    for a in anchors {
        by_node[a.node].push(*a);
    }
    by_node
}

fn sweep_in_place(positions: &mut [Point], distances: &DistanceTable, anchors: &[Vec<Anchor>]) {
    for comp in &distances.components {
        for i in 0..comp.len() {
            let gi = comp.nodes[i];
            let xi = positions[gi];
            let mut num = Point::ORIGIN;
            let mut den = 0.0;
            for j in 0..comp.len() {
                if j == i {
                    continue;
                }
                let xj = positions[comp.nodes[j]];
                let w = comp.w(i, j);
                let diff = xi - xj;
                let len = diff.norm();
                let pull = if len > 0.0 {
                    diff * (comp.d(i, j) / len)
                } else {
                    Point::ORIGIN
                };
                num += (xj + pull) * w;
                den += w;
            }
            for a in &anchors[gi] {
                num += a.target * a.weight;
                den += a.weight;
            }
            if den > 0.0 {
                positions[gi] = num * (1.0 / den);
            }
        }
    }
}

/// One Gauss-Seidel pass of localized majorization updates in canonical node
/// order. Anchors add their coefficient to the denominator and the weighted
/// target to the numerator.
pub fn majorize_sweep(positions: &[Point], distances: &DistanceTable, anchors: &[Anchor]) -> Vec<Point> {
    let mut out = positions.to_vec();
    let by_node = anchors_by_node(positions.len(), anchors);
    sweep_in_place(&mut out, distances, &by_node);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    pub iterations: usize,
    pub stress: f64,
}

/// Sweep until the relative stress change drops below `rel_tol` or
/// `max_iters` sweeps have run.
pub fn majorize(
    positions: &mut [Point],
    distances: &DistanceTable,
    anchors: &[Anchor],
    max_iters: usize,
    rel_tol: f64,
) -> Convergence {
    let by_node = anchors_by_node(positions.len(), anchors);
    let mut stress = slice_stress(positions, distances, anchors);
    let mut iterations = 0;
    while iterations < max_iters && stress > 0.0 {
        sweep_in_place(positions, distances, &by_node);
        iterations += 1;
        let next = slice_stress(positions, distances, anchors);
        let change = (stress - next).abs();
        stress = next;
        if change <= rel_tol * stress.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Convergence { iterations, stress }
}

/// Nudge nodes that sit exactly on a same-component node by a seeded offset
/// of magnitude ~1e-9 so the update's unit vectors are defined.
pub fn separate_coincident(positions: &mut [Point], distances: &DistanceTable, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for comp in &distances.components {
        for i in 0..comp.len() {
            for j in i + 1..comp.len() {
                let (gi, gj) = (comp.nodes[i], comp.nodes[j]);
                while positions[gi] == positions[gj] {
                    let dx: f64 = rng.gen_range(-1.0..1.0);
                    let dy: f64 = rng.gen_range(-1.0..1.0);
                    positions[gj] += Point::new(dx, dy) * 1e-9;
                }
            }
        }
    }
}
