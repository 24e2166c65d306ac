use std::fmt::Write as _;

use super::{Frame, Shape, StyleMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas {
            width: 800,
            height: 800,
        }
    }
}

pub(crate) fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Node radius in pixels for a canvas.
pub(crate) fn node_radius(canvas: Canvas) -> f64 {
    0.012 * canvas.width.min(canvas.height) as f64
}

/// Deterministic SVG 1.1 rendering of one frame. Edge stroke width and
/// opacity grow with the cosine weight.
pub fn render_svg_frame(frame: &Frame, style: &StyleMap, canvas: Canvas) -> String {
    let (w, h) = (canvas.width as f64, canvas.height as f64);
    let r = node_radius(canvas);
    let px = |x: f64| x * w;
    let py = |y: f64| y * h;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        canvas.width, canvas.height, canvas.width, canvas.height
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    out.push_str("<g class=\"edges\" stroke=\"#888888\">\n");
    let pos = |attr| frame.position(attr);
    for e in &frame.edges {
        let (Some(a), Some(b)) = (pos(&e.a), pos(&e.b)) else {
            continue;
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke-width=\"{:.3}\" stroke-opacity=\"{:.3}\"/>",
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y),
            0.5 + 3.0 * e.weight,
            e.opacity * (0.3 + 0.7 * e.weight),
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"nodes\">\n");
    for n in &frame.nodes {
        let s = style.get(n.attr.kind);
        let (cx, cy) = (px(n.pos.x), py(n.pos.y));
        match s.shape {
            Shape::Ellipse => {
                let _ = writeln!(
                    out,
                    "<ellipse class=\"{}\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" rx=\"{r:.2}\" ry=\"{r:.2}\" fill=\"{}\" fill-opacity=\"{:.3}\"/>",
                    n.attr.kind.as_str(),
                    s.color.css(),
                    n.opacity
                );
            }
            Shape::Diamond => {
                let _ = writeln!(
                    out,
                    "<path class=\"diamond {}\" d=\"M {cx:.2} {:.2} L {:.2} {cy:.2} L {cx:.2} {:.2} L {:.2} {cy:.2} Z\" fill=\"{}\" fill-opacity=\"{:.3}\"/>",
                    n.attr.kind.as_str(),
                    cy - r * 1.3,
                    cx + r * 1.3,
                    cy + r * 1.3,
                    cx - r * 1.3,
                    s.color.css(),
                    n.opacity
                );
            }
        }
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#222222\">\n");
    for n in &frame.nodes {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill-opacity=\"{:.3}\">{}</text>",
            px(n.pos.x) + r + 2.0,
            py(n.pos.y) + 3.0,
            n.opacity,
            escape_xml(&n.attr.label)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<text class=\"caption\" x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"18\">{}</text>",
        w * 0.02,
        h * 0.04,
        escape_xml(&frame.label)
    );
    out.push_str("</svg>\n");
    out
}
