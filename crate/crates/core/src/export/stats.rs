use std::fmt::Write as _;

use crate::layout::Trajectory;
use crate::simnet::SliceGraph;
use crate::windowing::{AttributeKind, IncidenceMatrix};

pub const STATS_HEADER: &str = "window,documents,words,authors,journals,edges,mean_cosine,final_stress";

/// One CSV row per window; windows without documents report zeros.
pub fn write_stats(trajectory: &Trajectory, graphs: &[SliceGraph], matrices: &[IncidenceMatrix]) -> String {
    assert_eq!(graphs.len(), matrices.len(), "graphs and matrices must align");
    assert_eq!(graphs.len(), trajectory.slices.len(), "graphs and slices must align");
    let mut out = String::from(STATS_HEADER);
    out.push('\n');
    for ((m, g), stress) in matrices.iter().zip(graphs).zip(&trajectory.stress_log) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6}",
            m.window.label,
            m.n_docs(),
            m.count_kind(AttributeKind::Word),
            m.count_kind(AttributeKind::Author),
            m.count_kind(AttributeKind::Journal),
            g.edges.len(),
            g.mean_weight(),
            stress
        );
    }
    out
}

/// `sweep,window,stress` for every slice after every sweep.
pub fn write_stress_log(trajectory: &Trajectory) -> String {
    let mut out = String::from("sweep,window,stress\n");
    for (k, row) in trajectory.sweep_log.iter().enumerate() {
        for (slice, stress) in trajectory.slices.iter().zip(row) {
            let _ = writeln!(out, "{},{},{:.6}", k + 1, slice.window.label, stress);
        }
    }
    out
}
