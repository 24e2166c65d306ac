//! Temporally coupled stress-majorization layout.
//!
//! Each slice minimizes the weighted stress of its own distance table; with
//! coupling enabled, nodes are additionally pulled towards their positions in
//! up to `stability_window` neighboring slices by quadratic penalties.

mod classical;
mod pack;
mod stress;
mod trajectory;

use std::ops::{Add, AddAssign, Mul, Sub};

use serde::Serialize;

pub use classical::classical_init;
pub use pack::{pack_components, BBox, ComponentLayout};
pub use stress::{
    majorize, majorize_sweep, separate_coincident, slice_stress, stress_gradient, Anchor,
    Convergence,
};
pub use trajectory::{mean_displacement, solve_slice, solve_trajectory, total_objective};

use crate::windowing::{Attribute, TimeWindow};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// `(1 - s) * self + s * other`
    pub fn lerp(self, other: Point, s: f64) -> Point {
        Point::new(
            (1.0 - s) * self.x + s * other.x,
            (1.0 - s) * self.y + s * other.y,
        )
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StressParams {
    /// Weight of the quadratic pull towards neighboring slices; 0 decouples.
    pub alpha: f64,
    /// Number of slices on each side that enter a slice's objective.
    pub stability_window: usize,
    pub max_iters: usize,
    /// Stop when the relative objective change falls below this.
    pub rel_tol: f64,
    /// Passes over the slice sequence; the first is forward only, later ones
    /// forward then backward.
    pub sweeps: usize,
    pub seed: u64,
}

impl Default for StressParams {
    fn default() -> Self {
        StressParams {
            alpha: 1.0,
            stability_window: 4,
            max_iters: 1000,
            rel_tol: 1e-6,
            sweeps: 3,
            seed: 1,
        }
    }
}

/// Positions of one slice, parallel to the slice graph's node list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayoutSlice {
    pub window: TimeWindow,
    pub nodes: Vec<Attribute>,
    pub positions: Vec<Point>,
}

impl LayoutSlice {
    pub fn position(&self, attr: &Attribute) -> Option<Point> {
        self.nodes
            .iter()
            .position(|n| n == attr)
            .map(|i| self.positions[i])
    }

    pub fn bbox(&self) -> Option<BBox> {
        BBox::of(&self.positions)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub slices: Vec<LayoutSlice>,
    /// Final stress per slice, anchor terms excluded.
    pub stress_log: Vec<f64>,
    /// Stress per slice after each sweep.
    pub sweep_log: Vec<Vec<f64>>,
}

/// SplitMix64 finalizer, used to derive independent seeds.
pub(crate) fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
