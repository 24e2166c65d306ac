//! Output formats: Pajek networks and projects, SVG frames, a self-contained
//! HTML animation and the per-window statistics table.

mod frame;
mod html;
mod pajek;
mod stats;
mod svg;

use serde::Serialize;

pub use frame::{animation_frames, interpolate, keyframes, Frame, FrameEdge, FrameNode};
pub use html::write_animation_html;
pub use pajek::{
    pajek_network, read_pajek_net, read_pajek_project, write_pajek_net, write_pajek_net_in,
    write_pajek_project, write_pajek_project_in, PajekEdge, PajekError, PajekNetwork, PajekVertex,
    DEFAULT_Z,
};
pub use stats::{write_stats, write_stress_log, STATS_HEADER};
pub use svg::{render_svg_frame, Canvas};

use crate::layout::{BBox, Point, Trajectory};
use crate::windowing::AttributeKind;

/// Lower/upper bound of normalized coordinates.
pub const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Ellipse,
    Diamond,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Ellipse => "ellipse",
            Shape::Diamond => "diamond",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub fn pajek_name(self) -> &'static str {
        match self {
            Color::Red => "Red",
            Color::Green => "Green",
            Color::Blue => "Blue",
        }
    }

    pub fn css(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeStyle {
    pub shape: Shape,
    pub color: Color,
}

/// Authors red circles, words green, journals blue diamonds; the anchor is
/// drawn like an author.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StyleMap {
    styles: [NodeStyle; 4],
}

impl Default for StyleMap {
    fn default() -> Self {
        let style = |shape, color| NodeStyle { shape, color };
        StyleMap {
            styles: [
                style(Shape::Ellipse, Color::Green),
                style(Shape::Ellipse, Color::Red),
                style(Shape::Diamond, Color::Blue),
                style(Shape::Ellipse, Color::Red),
            ],
        }
    }
}

impl StyleMap {
    pub fn get(&self, kind: AttributeKind) -> NodeStyle {
        self.styles[kind as usize]
    }

    pub fn set(&mut self, kind: AttributeKind, style: NodeStyle) {
        self.styles[kind as usize] = style;
    }
}

/// Uniform-scale map of a layout box onto `[MARGIN, 1 - MARGIN]^2`, centered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Viewport {
    pub center: Point,
    pub scale: f64,
}

impl Viewport {
    pub fn fit(bbox: Option<BBox>) -> Self {
        match bbox {
            None => Viewport {
                center: Point::ORIGIN,
                scale: 0.0,
            },
            Some(b) => {
                let extent = b.width().max(b.height());
                let scale = if extent > 0.0 { (1.0 - 2.0 * MARGIN) / extent } else { 0.0 };
                Viewport {
                    center: b.center(),
                    scale,
                }
            }
        }
    }

    /// Fit the union of every slice's box, so motion between slices shows.
    pub fn global(trajectory: &Trajectory) -> Self {
        let bbox = trajectory
            .slices
            .iter()
            .filter_map(|s| s.bbox())
            .reduce(BBox::union);
        Viewport::fit(bbox)
    }

    pub fn map(&self, p: Point) -> Point {
        let clamp = |v: f64| v.clamp(MARGIN, 1.0 - MARGIN);
        Point::new(
            clamp(0.5 + (p.x - self.center.x) * self.scale),
            clamp(0.5 + (p.y - self.center.y) * self.scale),
        )
    }
}
