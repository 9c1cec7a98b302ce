//! Minimal SVG 1.1 output for a walk over its grid.

use std::fmt::Write;

use crate::grid::Walk;
use crate::rectifiable::polyline_of_walk;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell_px: u32,
    pub show_grid: bool,
    pub start_marker: bool,
    pub end_marker: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            cell_px: 40,
            show_grid: true,
            start_marker: true,
            end_marker: true,
        }
    }
}

impl RenderSpec {
    pub const MIN_CELL_PX: u32 = 8;

    pub fn with_cell_px(cell_px: u32) -> Option<Self> {
        (cell_px >= Self::MIN_CELL_PX).then(|| Self {
            cell_px,
            ..Self::default()
        })
    }
}

/// Renders `walk` as SVG text. Output depends only on the inputs.
pub fn render(walk: &Walk, spec: &RenderSpec) -> String {
    let n = walk.grid().n();
    let px = spec.cell_px as f64;
    let size = n as f64 * px;
    let mut out = String::new();
    // `write!` into a String cannot fail
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r#"  <rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#
    );
    if spec.show_grid {
        let _ = writeln!(out, r##"  <g stroke="#999999" stroke-width="1">"##);
        for k in 0..=n {
            let at = k as f64 * px;
            let _ = writeln!(out, r#"    <line x1="0" y1="{at}" x2="{size}" y2="{at}"/>"#);
            let _ = writeln!(out, r#"    <line x1="{at}" y1="0" x2="{at}" y2="{size}"/>"#);
        }
        let _ = writeln!(out, "  </g>");
    }
    let points: Vec<String> = polyline_of_walk(walk)
        .knots()
        .iter()
        .map(|p| format!("{},{}", p.x * px, p.y * px))
        .collect();
    let stroke = (px / 8.0).max(1.0);
    let _ = writeln!(
        out,
        r##"  <polyline points="{}" fill="none" stroke="#1f5fbf" stroke-width="{stroke}" stroke-linejoin="round" stroke-linecap="round"/>"##,
        points.join(" ")
    );
    let radius = px / 5.0;
    let knots = polyline_of_walk(walk);
    if spec.start_marker {
        let p = knots.knots()[0];
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="{radius}" fill="#2e9e44"/>"##,
            p.x * px,
            p.y * px
        );
    }
    if spec.end_marker {
        let p = *knots.knots().last().expect("walks are non-empty");
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="{radius}" fill="#c8312b"/>"##,
            p.x * px,
            p.y * px
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Cell, GridSpec};

    #[test]
    fn renders_grid_and_path() {
        let w = Walk::new(
            GridSpec::king(2).unwrap(),
            vec![Cell::new(1, 1), Cell::new(2, 2), Cell::new(1, 2)],
        )
        .unwrap();
        let svg = render(&w, &RenderSpec::default());
        assert!(svg.contains(r#"points="20,20 60,60 60,20""#));
        assert_eq!(svg.matches("<line ").count(), 6);
        assert_eq!(svg.matches("<circle ").count(), 2);
        assert_eq!(svg, render(&w, &RenderSpec::default()));
        let bare = RenderSpec {
            show_grid: false,
            start_marker: false,
            end_marker: false,
            cell_px: 8,
        };
        let svg = render(&w, &bare);
        assert_eq!(svg.matches("<line ").count(), 0);
        assert_eq!(svg.matches("<circle ").count(), 0);
    }

    #[test]
    fn cell_size_floor() {
        assert!(RenderSpec::with_cell_px(7).is_none());
        assert_eq!(RenderSpec::with_cell_px(8).unwrap().cell_px, 8);
    }
}
