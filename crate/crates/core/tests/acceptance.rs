//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chronogram::export::{read_pajek_net, write_pajek_net};
use chronogram::ingest::{filter_corpus, load_stopwords, parse_field_tagged, YearRange, DEFAULT_STOPWORDS};
use chronogram::layout::{
    classical_init, majorize, majorize_sweep, mean_displacement, slice_stress, solve_slice,
    solve_trajectory, stress_gradient, Anchor, LayoutSlice, Point, StressParams,
};
use chronogram::simnet::{cosine, ComponentDistances, DistanceTable, SliceGraph};
use chronogram::windowing::{build_incidence, windows_through, IncidenceOptions, TimeWindow};
use chronogram::{run_pipeline, RunConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_defaults() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_chronogram"))
        .current_dir(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    check(status.status.success(), || format!("exit status {}", status.status))?;
    let text = std::fs::read_to_string(dir.path().join("chronogram-out/manifest.json")).map_err(|e| e.to_string())?;
    let m: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let c = &m["config"];
    let got = (
        c["window_length"].as_i64(),
        c["min_occ"].as_i64(),
        c["threshold"].as_f64(),
        c["stability_window"].as_i64(),
    );
    check(got == (Some(5), Some(2), Some(0.2), Some(4)), || format!("manifest has {got:?}"))?;
    Ok("window 5, min_occ 2, threshold 0.2, stability 4".into())
}

fn c2_table_labels() -> Outcome {
    let labels: Vec<String> = windows_through(1950, 5, 2009)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|w| w.label)
        .collect();
    let expected: Vec<String> = (0..12).map(|i| format!("{}-{}", 1950 + 5 * i, 1954 + 5 * i)).collect();
    check(labels == expected, || format!("got {labels:?}"))?;
    Ok(format!("{} .. {}", labels[0], labels[11]))
}

fn c3_cosine_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 200 {
        let dim = rng.gen_range(1..=20);
        let hi = if done % 2 == 0 { 10 } else { 1_000_000 };
        let u: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..hi)).collect();
        let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..hi)).collect();
        if u.iter().all(|&x| x == 0) || v.iter().all(|&x| x == 0) {
            continue;
        }
        let uf: Vec<f64> = u.iter().map(|&x| x as f64).collect();
        let vf: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        let got = cosine(&uf, &vf).map_err(|e| e.to_string())?;
        worst = worst.max((got - common::rational_cosine(&u, &v)).abs());
        done += 1;
    }
    check(worst <= 1e-12, || format!("max error {worst:e}"))?;
    Ok(format!("200 pairs, max error {worst:.1e}"))
}

fn random_anchors(rng: &mut ChaCha8Rng, n: usize, max_weight: f64) -> Vec<Anchor> {
    let mut anchors = Vec::new();
    for node in 0..n {
        if rng.gen_bool(0.3) {
            anchors.push(Anchor {
                node,
                target: Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                weight: rng.gen_range(0.0..max_weight),
            });
        }
    }
    anchors
}

fn c4_descent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    let mut sweeps = 0;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(0.1..0.9);
        let (graph, table) = common::random_graph(&mut rng, TimeWindow::new(i, 1950, 5), n, p);
        let mut pos = common::random_positions(&mut rng, graph.nodes.len(), 3.0);
        let anchors = random_anchors(&mut rng, n, 10.0);
        let mut stress = slice_stress(&pos, &table, &anchors);
        for _ in 0..60 {
            pos = majorize_sweep(&pos, &table, &anchors);
            let next = slice_stress(&pos, &table, &anchors);
            sweeps += 1;
            if next > stress + 1e-12 {
                violations += 1;
                worst = worst.max(next - stress);
            }
            stress = next;
        }
    }
    check(violations == 0, || format!("{violations} violations, worst increase {worst:e}"))?;
    Ok(format!("100 instances, {sweeps} sweeps, 0 violations"))
}

fn c5_gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = 1e-5;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = rng.gen_range(2..=15);
        let (graph, table) = common::random_graph(&mut rng, TimeWindow::new(i, 1950, 5), n, 0.5);
        let pos = common::random_positions(&mut rng, graph.nodes.len(), 2.0);
        let anchors = random_anchors(&mut rng, n, 5.0);
        let grad = stress_gradient(&pos, &table, &anchors);
        let scale = grad.iter().map(|g| g.x.abs().max(g.y.abs())).fold(0.0, f64::max).max(1e-8);
        for k in 0..pos.len() {
            for axis in 0..2 {
                let shifted = |delta: f64| {
                    let mut p = pos.clone();
                    if axis == 0 {
                        p[k].x += delta;
                    } else {
                        p[k].y += delta;
                    }
                    slice_stress(&p, &table, &anchors)
                };
                let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
                let g = if axis == 0 { grad[k].x } else { grad[k].y };
                worst = worst.max((g - fd).abs() / scale);
            }
        }
    }
    check(worst < 1e-5, || format!("max relative error {worst:e}"))?;
    Ok(format!("50 configurations, max relative error {worst:.1e}"))
}

fn metric_table(points: &[(f64, f64)]) -> DistanceTable {
    let n = points.len();
    let mut dist = Vec::with_capacity(n * n);
    for a in points {
        for b in points {
            dist.push(((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt());
        }
    }
    DistanceTable {
        n_nodes: n,
        components: vec![ComponentDistances::new((0..n).collect(), dist)],
    }
}

fn c6_exact_recovery() -> Outcome {
    let triangle = [(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)];
    let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let mut report = Vec::new();
    for (name, pts) in [("triangle", &triangle[..]), ("square", &square[..])] {
        let table = metric_table(pts);
        let mut pos = classical_init(&table.components[0], 7);
        let conv = majorize(&mut pos, &table, &[], 500, 0.0);
        check(conv.stress < 1e-8, || format!("{name}: stress {:e} after {} iterations", conv.stress, conv.iterations))?;
        // Random starts are not part of the criterion: stress is non-convex
        // and some starts stall in a folded local minimum.
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let recovered = (0..10)
            .filter(|_| {
                let mut p = common::random_positions(&mut rng, pts.len(), 2.0);
                majorize(&mut p, &table, &[], 500, 0.0).stress < 1e-8
            })
            .count();
        let max_iters = conv.iterations;
        report.push(format!("{name} in {max_iters} iterations ({recovered}/10 random starts also recover)"));
    }
    Ok(report.join(", "))
}

fn c7_coupling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = Vec::new();
    let mut tables = Vec::new();
    for i in 0..8 {
        let (g, t) = common::random_graph(&mut rng, TimeWindow::new(i, 1950 + 5 * i as i32, 5), 12, 0.3);
        graphs.push(g);
        tables.push(t);
    }
    let params = StressParams {
        alpha: 0.0,
        ..StressParams::default()
    };
    let traj = solve_trajectory(&graphs, &tables, &params);
    for ((slice, g), t) in traj.slices.iter().zip(&graphs).zip(&tables) {
        let (alone, _) = solve_slice(g, t, &params);
        let same = alone.positions.len() == slice.positions.len()
            && alone
                .positions
                .iter()
                .zip(&slice.positions)
                .all(|(a, b)| a.x.to_bits() == b.x.to_bits() && a.y.to_bits() == b.y.to_bits());
        check(same, || format!("slice {} differs from its independent solve", slice.window.label))?;
    }

    let (g, t) = common::random_graph(&mut rng, TimeWindow::new(0, 1950, 5), 10, 0.4);
    let twin = SliceGraph {
        window: TimeWindow::new(1, 1955, 5),
        ..g.clone()
    };
    let graphs = [g, twin];
    let tables = [t.clone(), t];
    let mut shown = Vec::new();
    let mut last = f64::INFINITY;
    for alpha in [0.0, 1.0, 10.0] {
        let params = StressParams {
            alpha,
            ..StressParams::default()
        };
        let traj = solve_trajectory(&graphs, &tables, &params);
        let d = mean_displacement(&traj.slices[0], &traj.slices[1]);
        check(d <= last, || format!("displacement rises to {d:e} at alpha {alpha} (was {last:e})"))?;
        last = d;
        shown.push(format!("{alpha}: {d:.2e}"));
    }
    Ok(format!("alpha 0 bit-identical over 8 slices; displacement {}", shown.join(", ")))
}

fn c8_pajek() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..20 {
        let n = rng.gen_range(0..=25);
        let (graph, _) = common::random_graph(&mut rng, TimeWindow::new(i, 1950, 5), n, 0.3);
        let layout = LayoutSlice {
            window: graph.window.clone(),
            nodes: graph.nodes.clone(),
            positions: common::random_positions(&mut rng, n, 10.0),
        };
        let text = write_pajek_net(&graph, &layout);
        let back = read_pajek_net(&text).map_err(|e| format!("slice {i}: {e}"))?.to_text();
        check(back == text, || format!("slice {i} re-writes differently"))?;
    }
    let golden = common::read_fixture("golden.net");
    let back = read_pajek_net(&golden).map_err(|e| e.to_string())?.to_text();
    check(back == golden, || "golden fixture re-writes differently".into())?;
    Ok("20 random slices and the golden fixture re-write byte-identically".into())
}

fn c9_fixed_point() -> Outcome {
    let records = parse_field_tagged(&common::read_fixture("small-windows.txt")).map_err(|e| e.to_string())?;
    let corpus = filter_corpus(records, &Default::default(), YearRange::all());
    let (first, last) = corpus.year_span().ok_or("empty fixture")?;
    let windows = windows_through(first - first.rem_euclid(5), 5, last).map_err(|e| e.to_string())?;
    let stopwords = load_stopwords(DEFAULT_STOPWORDS);
    let mut compared = 0;
    for w in &windows {
        let n = corpus.records.iter().filter(|r| w.contains(r.year)).count();
        if n == 0 || n > 8 {
            continue;
        }
        for min_occ in 1..=3 {
            for anchor in [None, Some("Garfield, E.".to_string())] {
                for binarize in [false, true] {
                    let opts = IncidenceOptions {
                        min_occ,
                        anchor: anchor.clone(),
                        binarize,
                        ..IncidenceOptions::default()
                    };
                    let got = build_incidence(&corpus, w, &stopwords, &opts).ok();
                    let want = common::exhaustive_incidence(&corpus, w, &stopwords, &opts);
                    check(got == want, || format!("window {} min_occ {min_occ} anchor {anchor:?} binarize {binarize}", w.label))?;
                    compared += 1;
                }
            }
        }
    }
    check(compared > 0, || "no windows compared".into())?;
    Ok(format!("{compared} window/option combinations match"))
}

/// 300 documents over 1950-2009 with a vocabulary sized to give roughly
/// 500 distinct attributes.
fn scale_corpus() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let words: Vec<String> = (0..480).map(|i| format!("term{i}")).collect();
    let authors: Vec<String> = (0..140).map(|i| format!("Author{i}, A.")).collect();
    let journals: Vec<String> = (0..40).map(|i| format!("JOURNAL {i}")).collect();
    let mut out = String::from("FN scale\nVR 1.0\n");
    for d in 0..300i32 {
        let year = 1950 + d * 60 / 300;
        let k = rng.gen_range(4..10);
        // Skewed choice: low indices are common.
        let pick = |rng: &mut ChaCha8Rng, n: usize| ((rng.gen::<f64>().powi(2)) * n as f64) as usize;
        let title: Vec<&str> = (0..k).map(|_| words[pick(&mut rng, words.len())].as_str()).collect();
        out.push_str(&format!("AU {}\n", authors[pick(&mut rng, authors.len())]));
        out.push_str(&format!("   {}\n", authors[pick(&mut rng, authors.len())]));
        out.push_str(&format!("TI {}\n", title.join(" ")));
        out.push_str(&format!("SO {}\n", journals[pick(&mut rng, journals.len())]));
        out.push_str(&format!("PY {year}\nUT SCALE:{d:04}\nER\n\n"));
    }
    out.push_str("EF\n");
    out
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/");
                let mut bytes = std::fs::read(&path).unwrap();
                if rel == "manifest.json" {
                    let mut v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
                    v.as_object_mut().unwrap().remove("timings_ms");
                    bytes = serde_json::to_vec(&v).unwrap();
                }
                out.insert(rel, bytes);
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

fn c10_scale() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("scale.txt");
    std::fs::write(&input, scale_corpus()).map_err(|e| e.to_string())?;
    let config = RunConfig {
        input: Some(input),
        out: dir.path().join("out"),
        ..RunConfig::default()
    };
    let start = Instant::now();
    let manifest = run_pipeline(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    check(manifest.windows.len() == 12, || format!("{} slices", manifest.windows.len()))?;
    check(manifest.input.retained == 300, || format!("{} documents", manifest.input.retained))?;
    let first = snapshot(&config.out);
    let listed: Vec<&String> = manifest.outputs.iter().collect();
    check(first.keys().collect::<Vec<_>>().len() == listed.len() && listed.iter().all(|p| first.contains_key(*p)), || {
        "manifest output list does not match the files written".into()
    })?;
    for required in ["project.paj", "animation.html", "stats.csv", "stress_log.csv", "manifest.json"] {
        check(first.contains_key(required), || format!("missing {required}"))?;
    }
    let nets = first.keys().filter(|k| k.starts_with("slices/") && k.ends_with(".net")).count();
    let svgs = first.keys().filter(|k| k.starts_with("frames/")).count();
    check(nets == 12 && svgs == 12 + 11 * config.transition_frames, || format!("{nets} nets, {svgs} frames"))?;

    run_pipeline(&config).map_err(|e| e.to_string())?;
    let second = snapshot(&config.out);
    check(first == second, || "re-run differs".into())?;

    let total: usize = manifest.windows.iter().map(|w| w.attributes).sum();
    Ok(format!(
        "300 docs, {total} window attributes, 12 slices in {:.2} s; re-run byte-identical",
        elapsed.as_secs_f64()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("defaults recorded in manifest", c1_defaults, Duration::from_secs(1)),
        ("window labels 1950-1954 .. 2005-2009", c2_table_labels, Duration::from_secs(1)),
        ("cosine vs rational oracle", c3_cosine_oracle, Duration::from_secs(1)),
        ("majorization descent", c4_descent, Duration::from_secs(10)),
        ("gradient vs finite differences", c5_gradient, Duration::from_secs(5)),
        ("exact embedding recovery", c6_exact_recovery, Duration::from_secs(1)),
        ("temporal coupling laws", c7_coupling, Duration::from_secs(5)),
        ("pajek round-trip", c8_pajek, Duration::from_secs(1)),
        ("filtering fixed point", c9_fixed_point, Duration::from_secs(5)),
        ("end-to-end scale and reproducibility", c10_scale, Duration::from_secs(20)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; exceeded {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.3} s]", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.3} s]", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
