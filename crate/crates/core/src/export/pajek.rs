//! Pajek `.net` / `.paj` dialect.
//!
//! ```text
//! *Vertices 2
//! 1 "word:citation" 0.050000 0.500000 0.5 ellipse ic Green
//! 2 "journal:SCIENCE" 0.950000 0.500000 0.5 diamond ic Blue
//! *Edges
//! 1 2 0.250000
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{StyleMap, Viewport};
use crate::layout::{LayoutSlice, Trajectory};
use crate::simnet::SliceGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pajek parse error at line {line}: {message}")]
pub struct PajekError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> PajekError {
    PajekError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PajekVertex {
    pub label: String,
    /// `(x, y, z)`; z defaults to 0.5 when a file gives only x and y.
    pub coords: Option<(f64, f64, f64)>,
    pub shape: Option<String>,
    pub color: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PajekEdge {
    /// 1-based vertex ids.
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PajekNetwork {
    pub vertices: Vec<PajekVertex>,
    pub edges: Vec<PajekEdge>,
}

pub const DEFAULT_Z: f64 = 0.5;

impl PajekNetwork {
    /// Serialize in the emitted dialect (LF newlines, `.` decimals).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "*Vertices {}", self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = write!(out, "{} \"{}\"", i + 1, v.label.replace('"', "'"));
            if let Some((x, y, z)) = v.coords {
                let _ = write!(out, " {x:.6} {y:.6} {z}");
            }
            if let Some(shape) = &v.shape {
                let _ = write!(out, " {shape}");
            }
            if let Some(color) = &v.color {
                let _ = write!(out, " ic {color}");
            }
            out.push('\n');
        }
        out.push_str("*Edges\n");
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {:.6}", e.from, e.to, e.weight);
        }
        out
    }
}

/// Build the Pajek view of one slice: vertices in the graph's canonical order
/// with coordinates mapped through `viewport`.
pub fn pajek_network(graph: &SliceGraph, layout: &LayoutSlice, viewport: &Viewport, style: &StyleMap) -> PajekNetwork {
    assert_eq!(graph.nodes, layout.nodes, "layout must cover the graph's nodes");
    let vertices = graph
        .nodes
        .iter()
        .zip(&layout.positions)
        .map(|(attr, &p)| {
            let q = viewport.map(p);
            let s = style.get(attr.kind);
            PajekVertex {
                label: attr.to_string(),
                coords: Some((q.x, q.y, DEFAULT_Z)),
                shape: Some(s.shape.as_str().to_string()),
                color: Some(s.color.pajek_name().to_string()),
            }
        })
        .collect();
    let edges = graph
        .edges
        .iter()
        .map(|e| PajekEdge {
            from: e.a + 1,
            to: e.b + 1,
            weight: e.weight,
        })
        .collect();
    PajekNetwork { vertices, edges }
}

/// One slice as `.net` text, normalized with the slice's own bounding box.
pub fn write_pajek_net(graph: &SliceGraph, layout: &LayoutSlice) -> String {
    let viewport = Viewport::fit(layout.bbox());
    write_pajek_net_in(graph, layout, &viewport)
}

/// One slice as `.net` text within a shared viewport.
pub fn write_pajek_net_in(graph: &SliceGraph, layout: &LayoutSlice, viewport: &Viewport) -> String {
    pajek_network(graph, layout, viewport, &StyleMap::default()).to_text()
}

/// `*Network <label>` followed by each slice's `.net` body, all normalized
/// with the trajectory-wide viewport.
pub fn write_pajek_project(trajectory: &Trajectory, graphs: &[SliceGraph]) -> String {
    let viewport = Viewport::global(trajectory);
    write_pajek_project_in(trajectory, graphs, &viewport)
}

pub fn write_pajek_project_in(trajectory: &Trajectory, graphs: &[SliceGraph], viewport: &Viewport) -> String {
    assert_eq!(trajectory.slices.len(), graphs.len(), "slices and graphs must align");
    let mut out = String::new();
    for (slice, graph) in trajectory.slices.iter().zip(graphs) {
        let _ = writeln!(out, "*Network {}", slice.window.label);
        out.push_str(&write_pajek_net_in(graph, slice, viewport));
    }
    out
}

fn parse_num(tok: &str, line: usize) -> Result<f64, PajekError> {
    tok.parse::<f64>().map_err(|_| err(line, format!("expected a number, found {tok:?}")))
}

fn parse_vertex(rest: &str, line: usize, expected_id: usize) -> Result<PajekVertex, PajekError> {
    let rest = rest.trim();
    let (id, after_id) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let id: usize = id.parse().map_err(|_| err(line, format!("bad vertex id {id:?}")))?;
    if id != expected_id {
        return Err(err(line, format!("expected vertex id {expected_id}, found {id}")));
    }
    let after_id = after_id.trim_start();
    let (label, tail) = if let Some(quoted) = after_id.strip_prefix('"') {
        let end = quoted.find('"').ok_or_else(|| err(line, "unterminated vertex label"))?;
        (quoted[..end].to_string(), &quoted[end + 1..])
    } else {
        let (label, tail) = after_id.split_once(char::is_whitespace).unwrap_or((after_id, ""));
        if label.is_empty() {
            return Err(err(line, "missing vertex label"));
        }
        (label.to_string(), tail)
    };

    let toks: Vec<&str> = tail.split_whitespace().collect();
    let numeric = toks.iter().take_while(|t| t.parse::<f64>().is_ok()).count().min(3);
    let coords = match numeric {
        0 => None,
        1 => return Err(err(line, "vertex has a single coordinate")),
        2 => Some((parse_num(toks[0], line)?, parse_num(toks[1], line)?, DEFAULT_Z)),
        _ => Some((
            parse_num(toks[0], line)?,
            parse_num(toks[1], line)?,
            parse_num(toks[2], line)?,
        )),
    };
    let mut shape = None;
    let mut color = None;
    let mut k = numeric;
    if k < toks.len() && toks[k] != "ic" {
        shape = Some(toks[k].to_string());
        k += 1;
    }
    if k < toks.len() && toks[k] == "ic" {
        color = Some(
            toks.get(k + 1)
                .ok_or_else(|| err(line, "ic without a color"))?
                .to_string(),
        );
    }
    Ok(PajekVertex {
        label,
        coords,
        shape,
        color,
    })
}

fn parse_edge(rest: &str, line: usize, n_vertices: usize) -> Result<PajekEdge, PajekError> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(err(line, "edge needs two endpoints"));
    }
    let id = |t: &str| -> Result<usize, PajekError> {
        let v: usize = t.parse().map_err(|_| err(line, format!("bad vertex id {t:?}")))?;
        if v == 0 || v > n_vertices {
            return Err(err(line, format!("vertex id {v} out of range")));
        }
        Ok(v)
    };
    let weight = match toks.get(2) {
        Some(t) => parse_num(t, line)?,
        None => 1.0,
    };
    Ok(PajekEdge {
        from: id(toks[0])?,
        to: id(toks[1])?,
        weight,
    })
}

#[derive(PartialEq)]
enum Section {
    Start,
    Vertices,
    Edges,
}

struct NetParser {
    net: PajekNetwork,
    section: Section,
    declared: usize,
}

impl NetParser {
    fn new() -> Self {
        NetParser {
            net: PajekNetwork::default(),
            section: Section::Start,
            declared: 0,
        }
    }

    fn line(&mut self, line: &str, no: usize) -> Result<(), PajekError> {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            return Ok(());
        }
        if let Some(directive) = trimmed.strip_prefix('*') {
            let (name, arg) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
            match name.to_ascii_lowercase().as_str() {
                "vertices" if self.section == Section::Start => {
                    let n = arg.split_whitespace().next().unwrap_or("");
                    self.declared = n.parse().map_err(|_| err(no, format!("bad vertex count {n:?}")))?;
                    self.section = Section::Vertices;
                }
                "edges" if self.section == Section::Vertices => {
                    self.check_count(no)?;
                    self.section = Section::Edges;
                }
                _ => return Err(err(no, format!("unexpected directive *{name}"))),
            }
            return Ok(());
        }
        match self.section {
            Section::Start => Err(err(no, "data before *Vertices")),
            Section::Vertices => {
                let v = parse_vertex(trimmed, no, self.net.vertices.len() + 1)?;
                self.net.vertices.push(v);
                Ok(())
            }
            Section::Edges => {
                let e = parse_edge(trimmed, no, self.net.vertices.len())?;
                self.net.edges.push(e);
                Ok(())
            }
        }
    }

    fn check_count(&self, no: usize) -> Result<(), PajekError> {
        if self.net.vertices.len() != self.declared {
            return Err(err(
                no,
                format!("*Vertices {} declared, {} listed", self.declared, self.net.vertices.len()),
            ));
        }
        Ok(())
    }

    fn finish(self, no: usize) -> Result<PajekNetwork, PajekError> {
        match self.section {
            Section::Start => Err(err(no, "missing *Vertices")),
            Section::Vertices => {
                self.check_count(no)?;
                Ok(self.net)
            }
            Section::Edges => Ok(self.net),
        }
    }
}

/// Parse one `.net` in the emitted dialect. Tolerates `%` comments, CRLF,
/// missing z coordinates and a missing `*Edges` section.
pub fn read_pajek_net(text: &str) -> Result<PajekNetwork, PajekError> {
    let mut parser = NetParser::new();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        last = i + 1;
        parser.line(line, last)?;
    }
    parser.finish(last)
}

/// Parse a `.paj` project into `(network label, network)` pairs.
pub fn read_pajek_project(text: &str) -> Result<Vec<(String, PajekNetwork)>, PajekError> {
    let mut out = Vec::new();
    let mut current: Option<(String, NetParser)> = None;
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        last = i + 1;
        let trimmed = line.trim();
        let lower = trimmed.to_ascii_lowercase();
        if lower.starts_with("*network") {
            if let Some((label, p)) = current.take() {
                out.push((label, p.finish(last)?));
            }
            let label = trimmed["*network".len()..].trim().to_string();
            current = Some((label, NetParser::new()));
            continue;
        }
        match current.as_mut() {
            Some((_, p)) => p.line(line, last)?,
            None if trimmed.is_empty() => {}
            None => return Err(err(last, "content before the first *Network")),
        }
    }
    if let Some((label, p)) = current {
        out.push((label, p.finish(last)?));
    }
    Ok(out)
}
