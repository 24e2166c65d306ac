//! End-to-end run: ingest, window, build networks, lay out, write outputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::export::{
    animation_frames, keyframes, render_svg_frame, write_animation_html, write_pajek_net_in,
    write_pajek_project_in, write_stats, write_stress_log, Canvas, Frame, StyleMap, Viewport,
};
use crate::ingest::{
    filter_corpus, load_stopwords, parse_records, IngestError, StopwordSet, YearRange,
    DEFAULT_STOPWORDS,
};
use crate::layout::{solve_trajectory, StressParams, Trajectory};
use crate::simnet::{build_slice_graph, target_distances, DistanceTable, SliceGraph};
use crate::windowing::{build_incidence, windows_through, IncidenceMatrix, IncidenceOptions, TimeWindow};

/// Forty synthetic records spanning 1950-2009, used when no input is given.
pub const SAMPLE_CORPUS: &str = include_str!("../data/sample-corpus.txt");
pub const SAMPLE_INPUT_NAME: &str = "<bundled sample corpus>";
pub const TOOL_NAME: &str = "chronogram";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Malformed(#[from] IngestError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("failed to write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl PipelineError {
    /// 1 for malformed input, 2 for configuration problems, 3 when writing
    /// outputs fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Malformed(_) => 1,
            PipelineError::Config(_) => 2,
            PipelineError::Output { .. } => 3,
        }
    }
}

fn config_err(msg: impl Into<String>) -> PipelineError {
    PipelineError::Config(msg.into())
}

/// Every knob of a run. Defaults: five-year windows, attributes in at least
/// two documents, cosine >= 0.2 and a four-slice stability window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// `None` runs the bundled sample corpus.
    pub input: Option<PathBuf>,
    /// `None` uses the bundled stopword list.
    pub stopwords: Option<PathBuf>,
    /// `None` aligns the first window to a multiple of the window length at
    /// or before the earliest retained year.
    pub origin: Option<i32>,
    pub window_length: i32,
    pub min_occ: u32,
    pub threshold: f64,
    pub anchor: Option<String>,
    pub exclude_journals: Vec<String>,
    pub alpha: f64,
    pub stability_window: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub fps: f64,
    pub transition_frames: usize,
    pub binarize: bool,
    pub keep_hyphens: bool,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub sweeps: usize,
    pub canvas: Canvas,
    /// Key-value file the configuration was read from, if any.
    pub config_file: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let layout = StressParams::default();
        RunConfig {
            input: None,
            stopwords: None,
            origin: None,
            window_length: 5,
            min_occ: 2,
            threshold: 0.2,
            anchor: None,
            exclude_journals: Vec::new(),
            alpha: layout.alpha,
            stability_window: layout.stability_window,
            seed: layout.seed,
            out: PathBuf::from("chronogram-out"),
            fps: 10.0,
            transition_frames: 10,
            binarize: false,
            keep_hyphens: false,
            max_iters: layout.max_iters,
            rel_tol: layout.rel_tol,
            sweeps: layout.sweeps,
            canvas: Canvas::default(),
            config_file: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, PipelineError> {
    value
        .parse()
        .map_err(|_| config_err(format!("invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, PipelineError> {
    match value.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(config_err(format!("invalid boolean {value:?} for {key}"))),
    }
}

impl RunConfig {
    /// Apply one `key = value` setting. Keys are the long flag names with or
    /// without the leading dashes; `exclude-journal` accumulates.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), PipelineError> {
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        match key.as_str() {
            "input" => self.input = Some(PathBuf::from(value)),
            "stopwords" => self.stopwords = Some(PathBuf::from(value)),
            "origin" => self.origin = Some(parse_value(&key, value)?),
            "window-length" => self.window_length = parse_value(&key, value)?,
            "min-occ" => self.min_occ = parse_value(&key, value)?,
            "threshold" => self.threshold = parse_value(&key, value)?,
            "anchor" => self.anchor = Some(value.to_string()),
            "exclude-journal" => self.exclude_journals.push(value.to_string()),
            "alpha" => self.alpha = parse_value(&key, value)?,
            "stability-window" => self.stability_window = parse_value(&key, value)?,
            "seed" => self.seed = parse_value(&key, value)?,
            "out" => self.out = PathBuf::from(value),
            "fps" => self.fps = parse_value(&key, value)?,
            "transition-frames" => self.transition_frames = parse_value(&key, value)?,
            "binarize" => self.binarize = parse_bool(&key, value)?,
            "keep-hyphens" => self.keep_hyphens = parse_bool(&key, value)?,
            "max-iters" => self.max_iters = parse_value(&key, value)?,
            "rel-tol" => self.rel_tol = parse_value(&key, value)?,
            "sweeps" => self.sweeps = parse_value(&key, value)?,
            _ => return Err(config_err(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    /// Apply a plain `key = value` file (`#` comments, blank lines allowed).
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), PipelineError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("config line {}: expected key = value", i + 1)))?;
            self.apply(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.window_length < 1 {
            return Err(config_err(format!("window length must be >= 1, got {}", self.window_length)));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(config_err(format!("threshold must lie in [0, 1], got {}", self.threshold)));
        }
        if self.min_occ < 1 {
            return Err(config_err("min-occ must be >= 1"));
        }
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(config_err(format!("alpha must be finite and >= 0, got {}", self.alpha)));
        }
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(config_err(format!("fps must be > 0, got {}", self.fps)));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol >= 0.0) {
            return Err(config_err("rel-tol must be finite and >= 0"));
        }
        if self.sweeps < 1 {
            return Err(config_err("sweeps must be >= 1"));
        }
        if let Some(a) = &self.anchor {
            if crate::ingest::normalize_author(a).is_empty() {
                return Err(config_err("anchor label is empty"));
            }
        }
        Ok(())
    }

    pub fn stress_params(&self) -> StressParams {
        StressParams {
            alpha: self.alpha,
            stability_window: self.stability_window,
            max_iters: self.max_iters,
            rel_tol: self.rel_tol,
            sweeps: self.sweeps,
            seed: self.seed,
        }
    }

    pub fn incidence_options(&self) -> IncidenceOptions {
        IncidenceOptions {
            min_occ: self.min_occ,
            anchor: self.anchor.clone(),
            binarize: self.binarize,
            extract: crate::windowing::ExtractOptions {
                keep_hyphens: self.keep_hyphens,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputSummary {
    pub path: String,
    pub sha256: String,
    pub records: usize,
    pub retained: usize,
    pub filtered: Vec<crate::ingest::FilterEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StopwordSummary {
    pub source: String,
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowSummary {
    pub label: String,
    pub documents: usize,
    pub attributes: usize,
    pub edges: usize,
    pub components: usize,
}

/// Everything needed to reproduce a run. `timings_ms` is the only field
/// that varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    /// Raw `key = value` entries of the config file, echoed verbatim.
    pub config_file_entries: BTreeMap<String, String>,
    pub input: InputSummary,
    pub stopwords: StopwordSummary,
    pub origin: Option<i32>,
    pub windows: Vec<WindowSummary>,
    pub outputs: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// The computed slices of a run, before anything is written.
#[derive(Debug, Clone)]
pub struct Chronogram {
    pub windows: Vec<TimeWindow>,
    pub matrices: Vec<IncidenceMatrix>,
    pub graphs: Vec<SliceGraph>,
    pub tables: Vec<DistanceTable>,
    pub trajectory: Trajectory,
}

/// Window, filter, network and lay out an already filtered corpus.
pub fn build_chronogram(
    corpus: &crate::ingest::Corpus,
    windows: Vec<TimeWindow>,
    stopwords: &StopwordSet,
    opts: &IncidenceOptions,
    threshold: f64,
    params: &StressParams,
) -> Chronogram {
    let per_window: Vec<(IncidenceMatrix, SliceGraph, DistanceTable)> = windows
        .par_iter()
        .map(|w| {
            let matrix = build_incidence(corpus, w, stopwords, opts)
                .unwrap_or_else(|_| IncidenceMatrix::empty(w.clone()));
            let graph = if matrix.is_empty() {
                SliceGraph::empty(w.clone())
            } else {
                build_slice_graph(&matrix, threshold)
            };
            let table = target_distances(&graph);
            (matrix, graph, table)
        })
        .collect();
    let mut matrices = Vec::with_capacity(per_window.len());
    let mut graphs = Vec::with_capacity(per_window.len());
    let mut tables = Vec::with_capacity(per_window.len());
    for (m, g, t) in per_window {
        matrices.push(m);
        graphs.push(g);
        tables.push(t);
    }
    let trajectory = solve_trajectory(&graphs, &tables, params);
    Chronogram {
        windows,
        matrices,
        graphs,
        tables,
        trajectory,
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn aligned_origin(first_year: i32, length: i32) -> i32 {
    first_year - first_year.rem_euclid(length)
}

/// Run the whole pipeline and write every artifact into `config.out`.
/// Nothing is written unless all computation succeeds; if writing fails,
/// files written so far (and the output directory, when this run created
/// it) are removed.
pub fn run_pipeline(config: &RunConfig) -> Result<RunManifest, PipelineError> {
    config.validate()?;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };

    let (input_name, bytes) = match &config.input {
        Some(path) => {
            let bytes = fs::read(path)
                .map_err(|e| config_err(format!("cannot read input {}: {e}", path.display())))?;
            (path.display().to_string(), bytes)
        }
        None => (SAMPLE_INPUT_NAME.to_string(), SAMPLE_CORPUS.as_bytes().to_vec()),
    };
    let text = String::from_utf8(bytes.clone()).map_err(|e| IngestError::MalformedRecord {
        line: 1 + bytes[..e.utf8_error().valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
        reason: "input is not valid UTF-8".into(),
    })?;
    let path_for_format = config.input.clone().unwrap_or_else(|| PathBuf::from("sample.txt"));
    let records = parse_records(&path_for_format, &text)?;
    let n_records = records.len();

    let (stop_source, stopwords) = match &config.stopwords {
        Some(path) => {
            let t = fs::read_to_string(path)
                .map_err(|e| config_err(format!("cannot read stopwords {}: {e}", path.display())))?;
            (path.display().to_string(), load_stopwords(&t))
        }
        None => ("<bundled onix list>".to_string(), load_stopwords(DEFAULT_STOPWORDS)),
    };
    lap("ingest", &mut timings);

    let excluded: BTreeSet<String> = config.exclude_journals.iter().cloned().collect();
    let by_journal = filter_corpus(records, &excluded, YearRange::all());
    let origin = config.origin.or_else(|| {
        by_journal
            .year_span()
            .map(|(first, _)| aligned_origin(first, config.window_length))
    });
    let corpus = match origin {
        Some(o) => {
            let mut c = filter_corpus(by_journal.records, &BTreeSet::new(), YearRange::new(o, i32::MAX)?);
            let mut log = by_journal.filter_log;
            log.append(&mut c.filter_log);
            c.filter_log = log;
            c
        }
        None => by_journal,
    }
    .with_source(input_name.clone());

    let windows = match (origin, corpus.year_span()) {
        (Some(o), Some((_, last))) => windows_through(o, config.window_length, last)
            .map_err(|e| config_err(e.to_string()))?,
        _ => Vec::new(),
    };
    lap("filter", &mut timings);

    let chrono = build_chronogram(
        &corpus,
        windows,
        &stopwords,
        &config.incidence_options(),
        config.threshold,
        &config.stress_params(),
    );
    lap("layout", &mut timings);

    let files = render_outputs(&chrono, config);
    lap("render", &mut timings);

    let mut outputs: Vec<String> = files.iter().map(|(p, _)| p.clone()).collect();
    outputs.push("manifest.json".to_string());

    let config_file_entries = match &config.config_file {
        Some(p) => read_config_entries(p)?,
        None => BTreeMap::new(),
    };

    let mut manifest = RunManifest {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        config: config.clone(),
        config_file_entries,
        input: InputSummary {
            path: input_name,
            sha256: sha256_hex(&bytes),
            records: n_records,
            retained: corpus.records.len(),
            filtered: corpus.filter_log.clone(),
        },
        stopwords: StopwordSummary {
            source: stop_source,
            entries: stopwords.len(),
        },
        origin,
        windows: chrono
            .matrices
            .iter()
            .zip(&chrono.graphs)
            .map(|(m, g)| WindowSummary {
                label: m.window.label.clone(),
                documents: m.n_docs(),
                attributes: m.n_attributes(),
                edges: g.edges.len(),
                components: g.components.len(),
            })
            .collect(),
        outputs,
        timings_ms: BTreeMap::new(),
    };

    write_outputs(&config.out, &files, || {
        lap("write", &mut timings);
        manifest.timings_ms = timings.clone();
        manifest.to_json()
    })?;
    Ok(manifest)
}

fn read_config_entries(path: &Path) -> Result<BTreeMap<String, String>, PipelineError> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
    let mut entries = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some((k, v)) = line.split_once('=') {
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            entries
                .entry(k)
                .and_modify(|e: &mut String| {
                    e.push_str("; ");
                    e.push_str(&v);
                })
                .or_insert(v);
        }
    }
    Ok(entries)
}

/// Relative path and contents of every artifact except the manifest.
pub fn render_outputs(chrono: &Chronogram, config: &RunConfig) -> Vec<(String, String)> {
    let viewport = Viewport::global(&chrono.trajectory);
    let style = StyleMap::default();
    let mut files = Vec::new();

    for (slice, graph) in chrono.trajectory.slices.iter().zip(&chrono.graphs) {
        files.push((
            format!("slices/window-{}.net", slice.window.label),
            write_pajek_net_in(graph, slice, &viewport),
        ));
    }
    files.push((
        "project.paj".to_string(),
        write_pajek_project_in(&chrono.trajectory, &chrono.graphs, &viewport),
    ));

    let mut keys = keyframes(&chrono.trajectory, &chrono.graphs);
    if keys.is_empty() {
        keys.push(Frame {
            label: "no data".to_string(),
            nodes: Vec::new(),
            edges: Vec::new(),
        });
    }
    let frames = animation_frames(&keys, config.transition_frames);
    let svgs: Vec<String> = frames
        .par_iter()
        .map(|f| render_svg_frame(f, &style, config.canvas))
        .collect();
    for (i, svg) in svgs.into_iter().enumerate() {
        files.push((format!("frames/frame-{i:04}.svg"), svg));
    }
    files.push((
        "animation.html".to_string(),
        write_animation_html(&keys, &style, config.canvas, config.fps, config.transition_frames),
    ));
    files.push((
        "stats.csv".to_string(),
        write_stats(&chrono.trajectory, &chrono.graphs, &chrono.matrices),
    ));
    files.push(("stress_log.csv".to_string(), write_stress_log(&chrono.trajectory)));
    files
}

fn write_outputs(
    out: &Path,
    files: &[(String, String)],
    manifest: impl FnOnce() -> String,
) -> Result<(), PipelineError> {
    let created_root = !out.exists();
    let mut written: Vec<PathBuf> = Vec::new();
    let mut result = (|| -> Result<(), PipelineError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| PipelineError::Output { path, source }
        };
        fs::create_dir_all(out).map_err(io(out))?;
        for (rel, contents) in files {
            let path = out.join(rel);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(io(parent))?;
            }
            fs::write(&path, contents).map_err(io(&path))?;
            written.push(path);
        }
        Ok(())
    })();
    if result.is_ok() {
        let path = out.join("manifest.json");
        result = fs::write(&path, manifest()).map_err(|source| PipelineError::Output {
            path: path.clone(),
            source,
        });
    }
    if result.is_err() {
        if created_root {
            let _ = fs::remove_dir_all(out);
        } else {
            for p in &written {
                let _ = fs::remove_file(p);
            }
        }
    }
    result
}
