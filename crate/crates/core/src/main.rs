use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use chronogram::{run_pipeline, PipelineError, RunConfig};

/// Build an animated chronogram from a bibliographic corpus.
#[derive(Debug, Parser)]
#[command(name = "chronogram", version)]
struct Cli {
    /// Field-tagged (.txt) or tab-separated (.tsv) records; defaults to the bundled sample.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Stopword file, whitespace separated, `#` comments.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// First year of the first window.
    #[arg(long)]
    origin: Option<i32>,
    #[arg(long)]
    window_length: Option<i32>,
    /// Minimum document frequency of a word or author within a window.
    #[arg(long)]
    min_occ: Option<u32>,
    /// Minimum cosine similarity for an edge (inclusive).
    #[arg(long)]
    threshold: Option<f64>,
    /// Label of a node attached to every document.
    #[arg(long)]
    anchor: Option<String>,
    /// Journal to drop; may be repeated.
    #[arg(long = "exclude-journal")]
    exclude_journal: Vec<String>,
    /// Strength of the coupling between neighbouring slices.
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of slices on each side a slice is coupled to.
    #[arg(long)]
    stability_window: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Playback rate of the HTML animation.
    #[arg(long)]
    fps: Option<f64>,
    /// Interpolated frames between consecutive windows.
    #[arg(long)]
    transition_frames: Option<usize>,
    /// Use 0/1 incidence instead of counts.
    #[arg(long)]
    binarize: bool,
    /// `key = value` file with the same keys as the long flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(cli: Cli) -> Result<RunConfig, PipelineError> {
    let mut c = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            PipelineError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        c.apply_file_text(&text)?;
        c.config_file = Some(path.clone());
    }
    if let Some(v) = cli.input {
        c.input = Some(v);
    }
    if let Some(v) = cli.stopwords {
        c.stopwords = Some(v);
    }
    if let Some(v) = cli.origin {
        c.origin = Some(v);
    }
    if let Some(v) = cli.window_length {
        c.window_length = v;
    }
    if let Some(v) = cli.min_occ {
        c.min_occ = v;
    }
    if let Some(v) = cli.threshold {
        c.threshold = v;
    }
    if let Some(v) = cli.anchor {
        c.anchor = Some(v);
    }
    if !cli.exclude_journal.is_empty() {
        c.exclude_journals = cli.exclude_journal;
    }
    if let Some(v) = cli.alpha {
        c.alpha = v;
    }
    if let Some(v) = cli.stability_window {
        c.stability_window = v;
    }
    if let Some(v) = cli.seed {
        c.seed = v;
    }
    if let Some(v) = cli.out {
        c.out = v;
    }
    if let Some(v) = cli.fps {
        c.fps = v;
    }
    if let Some(v) = cli.transition_frames {
        c.transition_frames = v;
    }
    if cli.binarize {
        c.binarize = true;
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|c| run_pipeline(&c).map(|m| (c, m)));
    match result {
        Ok((config, manifest)) => {
            let edges: usize = manifest.windows.iter().map(|w| w.edges).sum();
            println!(
                "{} records, {} windows, {} edges -> {}",
                manifest.input.retained,
                manifest.windows.len(),
                edges,
                config.out.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
