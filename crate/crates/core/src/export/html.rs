use serde::Serialize;

use super::svg::{escape_xml, node_radius};
use super::{animation_frames, Canvas, Frame, StyleMap};
use crate::windowing::AttributeKind;

#[derive(Serialize)]
struct Payload<'a> {
    fps: f64,
    width: u32,
    height: u32,
    radius: f64,
    /// Indexed by attribute kind: `[shape, fill]`.
    styles: Vec<[&'static str; 2]>,
    frames: Vec<FramePayload<'a>>,
}

#[derive(Serialize)]
struct FramePayload<'a> {
    label: &'a str,
    /// `[x, y, opacity, kind, label]`
    nodes: Vec<(f64, f64, f64, usize, &'a str)>,
    /// `[x1, y1, x2, y2, weight, opacity]`
    edges: Vec<[f64; 6]>,
}

fn round5(v: f64) -> f64 {
    (v * 1e5).round() / 1e5
}

fn frame_payload(frame: &Frame) -> FramePayload<'_> {
    let nodes = frame
        .nodes
        .iter()
        .map(|n| {
            (
                round5(n.pos.x),
                round5(n.pos.y),
                round5(n.opacity),
                n.attr.kind as usize,
                n.attr.label.as_str(),
            )
        })
        .collect();
    let edges = frame
        .edges
        .iter()
        .filter_map(|e| {
            let a = frame.position(&e.a)?;
            let b = frame.position(&e.b)?;
            Some([a.x, a.y, b.x, b.y, e.weight, e.opacity].map(round5))
        })
        .collect();
    FramePayload {
        label: &frame.label,
        nodes,
        edges,
    }
}

const PLAYER_JS: &str = r##"
(function () {
  var data = JSON.parse(document.getElementById("frames").textContent);
  var canvas = document.getElementById("view");
  var ctx = canvas.getContext("2d");
  var colors = { red: "#d62728", green: "#2ca02c", blue: "#1f77b4" };
  var r = data.radius;
  function draw(f) {
    var w = data.width, h = data.height;
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, w, h);
    ctx.strokeStyle = "#888888";
    f.edges.forEach(function (e) {
      ctx.globalAlpha = e[5] * (0.3 + 0.7 * e[4]);
      ctx.lineWidth = 0.5 + 3 * e[4];
      ctx.beginPath();
      ctx.moveTo(e[0] * w, e[1] * h);
      ctx.lineTo(e[2] * w, e[3] * h);
      ctx.stroke();
    });
    ctx.font = "10px sans-serif";
    f.nodes.forEach(function (n) {
      var x = n[0] * w, y = n[1] * h, s = data.styles[n[3]];
      ctx.globalAlpha = n[2];
      ctx.fillStyle = colors[s[1]];
      ctx.beginPath();
      if (s[0] === "diamond") {
        ctx.moveTo(x, y - 1.3 * r); ctx.lineTo(x + 1.3 * r, y);
        ctx.lineTo(x, y + 1.3 * r); ctx.lineTo(x - 1.3 * r, y);
        ctx.closePath();
      } else {
        ctx.arc(x, y, r, 0, 2 * Math.PI);
      }
      ctx.fill();
      ctx.fillStyle = "#222222";
      ctx.fillText(n[4], x + r + 2, y + 3);
    });
    ctx.globalAlpha = 1;
    ctx.font = "18px sans-serif";
    ctx.fillText(f.label, 0.02 * w, 0.04 * h);
    document.getElementById("counter").textContent = f.label;
  }
  var i = 0;
  draw(data.frames[0]);
  if (data.frames.length > 1) {
    setInterval(function () {
      i = (i + 1) % data.frames.length;
      draw(data.frames[i]);
    }, 1000 / data.fps);
  }
})();
"##;

/// Self-contained HTML5 player. All frames (key frames plus
/// `transition_frames` blends between consecutive key frames) are embedded
/// as JSON and drawn on a canvas at `fps`. No external resources.
pub fn write_animation_html(
    keys: &[Frame],
    style: &StyleMap,
    canvas: Canvas,
    fps: f64,
    transition_frames: usize,
) -> String {
    assert!(!keys.is_empty(), "an animation needs at least one frame");
    let frames = animation_frames(keys, transition_frames);
    let styles = AttributeKind::ALL
        .iter()
        .map(|&k| {
            let s = style.get(k);
            [s.shape.as_str(), s.color.css()]
        })
        .collect();
    let payload = Payload {
        fps: if fps > 0.0 { fps } else { 1.0 },
        width: canvas.width,
        height: canvas.height,
        radius: node_radius(canvas),
        styles,
        frames: frames.iter().map(frame_payload).collect(),
    };
    let json = serde_json::to_string(&payload)
        .expect("payload serializes")
        .replace("</", "<\\/")
        .replace("<!--", "<\\!--");
    let title = format!(
        "{} \u{2013} {}",
        escape_xml(&keys[0].label),
        escape_xml(&keys[keys.len() - 1].label)
    );
    format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{title}</title>\n\
<style>body{{font-family:sans-serif;margin:1em}}canvas{{border:1px solid #ccc}}</style>\n</head>\n\
<body data-frame-count=\"{count}\">\n<div id=\"counter\"></div>\n\
<canvas id=\"view\" width=\"{w}\" height=\"{h}\"></canvas>\n\
<script id=\"frames\" type=\"application/json\">{json}</script>\n<script>{PLAYER_JS}</script>\n</body>\n</html>\n",
        count = frames.len(),
        w = canvas.width,
        h = canvas.height,
    )
}
