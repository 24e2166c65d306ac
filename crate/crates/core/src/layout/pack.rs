use serde::Serialize;

use super::Point;

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of(points: &[Point]) -> Option<BBox> {
        let first = *points.first()?;
        Some(points.iter().fold(BBox { min: first, max: first }, |b, p| BBox {
            min: Point::new(b.min.x.min(p.x), b.min.y.min(p.y)),
            max: Point::new(b.max.x.max(p.x), b.max.y.max(p.y)),
        }))
    }

    pub fn union(self, other: BBox) -> BBox {
        BBox {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn center(&self) -> Point {
        self.min.lerp(self.max, 0.5)
    }

    /// Closed boxes sharing any point overlap.
    pub fn overlaps(&self, other: &BBox) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentLayout {
    pub positions: Vec<Point>,
    pub bbox: BBox,
}

impl ComponentLayout {
    pub fn new(positions: Vec<Point>) -> Self {
        let bbox = BBox::of(&positions).unwrap_or(BBox {
            min: Point::ORIGIN,
            max: Point::ORIGIN,
        });
        ComponentLayout { positions, bbox }
    }
}

/// Grid cell side: the largest box dimension, or 1 when every box is a point.
pub fn cell_size(components: &[ComponentLayout]) -> f64 {
    let largest = components
        .iter()
        .map(|c| c.bbox.width().max(c.bbox.height()))
        .fold(0.0, f64::max);
    if largest > 0.0 {
        largest
    } else {
        1.0
    }
}

/// Place components on a square grid, row-major with rows running downward
/// (+y), largest components first. Cells are `cell` wide with a gap of
/// 10% of `cell`; each component is centered in its cell. Output order
/// matches input order.
pub fn pack_components(components: &[ComponentLayout]) -> Vec<Vec<Point>> {
    if components.is_empty() {
        return Vec::new();
    }
    let cell = cell_size(components);
    let pitch = cell * 1.1;
    let columns = (components.len() as f64).sqrt().ceil() as usize;

    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&a, &b| components[b].positions.len().cmp(&components[a].positions.len()));

    let mut out = vec![Vec::new(); components.len()];
    for (slot, &k) in order.iter().enumerate() {
        let (row, col) = (slot / columns, slot % columns);
        let cell_center = Point::new(col as f64 * pitch + cell / 2.0, row as f64 * pitch + cell / 2.0);
        let shift = cell_center - components[k].bbox.center();
        out[k] = components[k].positions.iter().map(|&p| p + shift).collect();
    }
    out
}
