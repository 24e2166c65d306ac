//! Animated networks of title words, authors and journals over time windows
//! of a bibliographic corpus.

pub mod export;
pub mod ingest;
pub mod layout;
pub mod pipeline;
pub mod simnet;
pub mod windowing;

pub use pipeline::{run_pipeline, PipelineError, RunConfig, RunManifest};
