mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chronogram::layout::{
    pack_components, slice_stress, solve_slice, solve_trajectory, BBox, ComponentLayout, Point, StressParams,
};
use chronogram::windowing::TimeWindow;

#[test]
fn stress_is_invariant_under_rigid_motion() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..40 {
        let n = rng.gen_range(2..20);
        let (_, table) = common::random_graph(&mut rng, TimeWindow::new(i, 1950, 5), n, 0.4);
        let pos = common::random_positions(&mut rng, n, 3.0);
        let (theta, tx, ty) = (rng.gen_range(0.0..6.3f64), rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let moved: Vec<Point> = pos
            .iter()
            .map(|p| Point::new(p.x * theta.cos() - p.y * theta.sin() + tx, p.x * theta.sin() + p.y * theta.cos() + ty))
            .collect();
        let (a, b) = (slice_stress(&pos, &table, &[]), slice_stress(&moved, &table, &[]));
        assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{a} vs {b}");
    }
}

fn sequence(seed: u64, slices: usize) -> (Vec<chronogram::simnet::SliceGraph>, Vec<chronogram::simnet::DistanceTable>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..slices)
        .map(|i| common::random_graph(&mut rng, TimeWindow::new(i, 1950 + 5 * i as i32, 5), 14, 0.25))
        .unzip()
}

#[test]
fn trajectory_is_deterministic() {
    let (graphs, tables) = sequence(22, 6);
    for alpha in [0.0, 1.0] {
        let params = StressParams {
            alpha,
            ..StressParams::default()
        };
        assert_eq!(
            solve_trajectory(&graphs, &tables, &params),
            solve_trajectory(&graphs, &tables, &params)
        );
    }
}

#[test]
fn single_slice_ignores_alpha() {
    let (graphs, tables) = sequence(23, 1);
    let base = solve_slice(&graphs[0], &tables[0], &StressParams::default()).0;
    for alpha in [0.0, 1.0, 10.0] {
        let params = StressParams {
            alpha,
            ..StressParams::default()
        };
        assert_eq!(solve_trajectory(&graphs, &tables, &params).slices[0], base);
    }
}

#[test]
fn every_node_gets_a_finite_position() {
    let (graphs, tables) = sequence(24, 8);
    let t = solve_trajectory(&graphs, &tables, &StressParams::default());
    for (s, g) in t.slices.iter().zip(&graphs) {
        assert_eq!(s.nodes, g.nodes);
        assert!(s.positions.iter().all(|p| p.is_finite()));
    }
}

#[test]
fn packed_components_keep_shape_and_do_not_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..30 {
        let k = rng.gen_range(1..9);
        let comps: Vec<ComponentLayout> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..6);
                let scale = rng.gen_range(0.1..3.0);
                ComponentLayout::new(common::random_positions(&mut rng, n, scale))
            })
            .collect();
        let packed = pack_components(&comps);
        assert_eq!(packed.len(), k);
        let boxes: Vec<BBox> = packed.iter().map(|p| BBox::of(p).unwrap()).collect();
        for (c, p) in comps.iter().zip(&packed) {
            let shift = p[0] - c.positions[0];
            for (a, b) in c.positions.iter().zip(p) {
                assert!((*b - *a - shift).norm() < 1e-12);
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                assert!(!boxes[i].overlaps(&boxes[j]), "components {i} and {j} overlap");
            }
        }
    }
}
