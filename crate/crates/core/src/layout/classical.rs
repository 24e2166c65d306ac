use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Point;
use crate::simnet::ComponentDistances;

const POWER_MAX_ITERS: usize = 1000;
const POWER_TOL: f64 = 1e-12;

/// Classical scaling of one component: double-center the squared distances
/// and take the top two eigenvectors (power iteration with a Gershgorin
/// shift and deflation), scaled by the square roots of their eigenvalues.
/// Returned positions are indexed by the component's local node order.
pub fn classical_init(distances: &ComponentDistances, seed: u64) -> Vec<Point> {
    let n = distances.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![Point::ORIGIN],
        2 => {
            let half = distances.d(0, 1) / 2.0;
            return vec![Point::new(-half, 0.0), Point::new(half, 0.0)];
        }
        _ => {}
    }

    let sq: Vec<f64> = (0..n * n)
        .map(|k| {
            let d = distances.d(k / n, k % n);
            d * d
        })
        .collect();
    let row_mean: Vec<f64> = (0..n)
        .map(|i| sq[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            b[i * n + j] = -0.5 * (sq[i * n + j] - row_mean[i] - row_mean[j] + grand);
        }
    }
    let shift = (0..n)
        .map(|i| b[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let constant = vec![1.0 / (n as f64).sqrt(); n];
    let mut basis: Vec<Vec<f64>> = vec![constant];
    let mut coords = [vec![0.0; n], vec![0.0; n]];

    for axis in coords.iter_mut() {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        orthonormalize(&mut v, &basis);
        for _ in 0..POWER_MAX_ITERS {
            let mut next = mat_vec(&b, &v, n);
            for (x, vi) in next.iter_mut().zip(&v) {
                *x += shift * vi;
            }
            if !orthonormalize(&mut next, &basis) {
                break;
            }
            let delta: f64 = next.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum();
            v = next;
            if delta.sqrt() < POWER_TOL {
                break;
            }
        }
        let bv = mat_vec(&b, &v, n);
        let eigenvalue: f64 = v.iter().zip(&bv).map(|(a, b)| a * b).sum();
        let scale = eigenvalue.max(0.0).sqrt();
        for (c, vi) in axis.iter_mut().zip(&v) {
            *c = vi * scale;
        }
        basis.push(v);
    }

    (0..n).map(|i| Point::new(coords[0][i], coords[1][i])).collect()
}

fn mat_vec(m: &[f64], v: &[f64], n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| m[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Gram-Schmidt against `basis`, then normalize. False if nothing is left.
fn orthonormalize(v: &mut [f64], basis: &[Vec<f64>]) -> bool {
    for u in basis {
        let p: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
        for (x, ui) in v.iter_mut().zip(u) {
            *x -= p * ui;
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-300 {
        return false;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    true
}
