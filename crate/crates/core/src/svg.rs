//! SVG pictures of walks, north up.

use std::fmt::Write;

use crate::error::{Result, SawError};
use crate::lattice::{Point, Walk};
use crate::samplers::ProbTrace;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixels per lattice step.
    pub cell: f64,
    pub stroke: f64,
    /// Draw steps taken with probability 1 thick (needs traces).
    pub highlight_forced: bool,
    /// Panels per row; `None` picks a near-square grid.
    pub columns: Option<usize>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            cell: 20.0,
            stroke: 2.0,
            highlight_forced: true,
            columns: None,
        }
    }
}

fn bounds(walk: &Walk) -> (Point, Point) {
    let vs = walk.vertices();
    let min = Point::new(
        vs.iter().map(|p| p.x).min().unwrap_or(0),
        vs.iter().map(|p| p.y).min().unwrap_or(0),
    );
    let max = Point::new(
        vs.iter().map(|p| p.x).max().unwrap_or(0),
        vs.iter().map(|p| p.y).max().unwrap_or(0),
    );
    (min, max)
}

/// One panel per walk in a grid, each walk a single polyline. With
/// `traces` and `highlight_forced`, forced steps are overdrawn as thick
/// segments.
pub fn render_svg(
    walks: &[Walk],
    traces: Option<&[ProbTrace]>,
    opts: &SvgOptions,
) -> Result<String> {
    if walks.is_empty() {
        return Err(SawError::NothingToRender);
    }
    if let Some(t) = traces {
        if t.len() != walks.len() {
            return Err(SawError::InvalidParameter(format!(
                "{} traces for {} walks",
                t.len(),
                walks.len()
            )));
        }
    }
    let cols = opts
        .columns
        .unwrap_or_else(|| (walks.len() as f64).sqrt().ceil() as usize)
        .max(1);
    let rows = walks.len().div_ceil(cols);
    let boxes: Vec<(Point, Point)> = walks.iter().map(bounds).collect();
    let span_w = boxes.iter().map(|(a, b)| b.x - a.x).max().unwrap_or(0) as f64;
    let span_h = boxes.iter().map(|(a, b)| b.y - a.y).max().unwrap_or(0) as f64;
    let pad = opts.cell;
    let panel_w = span_w * opts.cell + 2.0 * pad;
    let panel_h = span_h * opts.cell + 2.0 * pad;
    let width = panel_w * cols as f64;
    let height = panel_h * rows as f64;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-linecap="round" stroke-linejoin="round" stroke-width="{}">"#,
        opts.stroke
    );
    for (i, walk) in walks.iter().enumerate() {
        let (min, max) = boxes[i];
        let ox = (i % cols) as f64 * panel_w + pad;
        let oy = (i / cols) as f64 * panel_h + pad;
        let to_svg = |p: Point| {
            (
                ox + (p.x - min.x) as f64 * opts.cell,
                oy + (max.y - p.y) as f64 * opts.cell,
            )
        };
        let vs = walk.vertices();
        let points: Vec<String> = vs
            .iter()
            .map(|&p| {
                let (x, y) = to_svg(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(out, r#"<polyline points="{}"/>"#, points.join(" "));
        if let (true, Some(traces)) = (opts.highlight_forced, traces) {
            for (j, forced) in traces[i].forced_steps().into_iter().enumerate() {
                if !forced || j + 1 >= vs.len() {
                    continue;
                }
                let (x1, y1) = to_svg(vs[j]);
                let (x2, y2) = to_svg(vs[j + 1]);
                let _ = writeln!(
                    out,
                    r#"<line class="forced" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke-width="{}"/>"#,
                    3.0 * opts.stroke
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_walk() {
        let w: Walk = "EN".parse().unwrap();
        let svg = render_svg(&[w], None, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        // two segments: three points, north drawn upward
        assert!(svg.contains(r#"points="20,40 40,40 40,20""#), "{svg}");
    }

    #[test]
    fn forced_steps_are_thick() {
        let w: Walk = "ENWN".parse().unwrap();
        let t = ProbTrace::from_sizes([2, 3, 1, 1]);
        let svg = render_svg(
            std::slice::from_ref(&w),
            Some(std::slice::from_ref(&t)),
            &SvgOptions::default(),
        )
        .unwrap();
        assert_eq!(svg.matches(r#"class="forced""#).count(), 2);
        let plain = SvgOptions {
            highlight_forced: false,
            ..SvgOptions::default()
        };
        let svg = render_svg(&[w], Some(&[t]), &plain).unwrap();
        assert_eq!(svg.matches(r#"class="forced""#).count(), 0);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            render_svg(&[], None, &SvgOptions::default()),
            Err(SawError::NothingToRender)
        );
    }
}
