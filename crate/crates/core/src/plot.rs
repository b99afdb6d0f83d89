//! SVG plots of permutations: one dot at `(i, x(i))` per position, one panel
//! per permutation. Output is a pure function of the input (fixed-precision
//! coordinates, no timestamps).

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::weak::Permutation;

#[derive(Clone, Debug)]
pub struct PlotStyle {
    /// Side of one square panel, in px.
    pub panel_size: f64,
    pub columns: usize,
    pub gap: f64,
    /// Dot radius; `None` picks one from `n`.
    pub dot_radius: Option<f64>,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            panel_size: 240.0,
            columns: 4,
            gap: 24.0,
            dot_radius: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub title: String,
    pub perm: Permutation,
}

const TITLE_H: f64 = 18.0;

/// Lays the panels out row by row, `style.columns` per row.
pub fn permutation_svg(panels: &[Panel], style: &PlotStyle) -> Result<String> {
    if panels.is_empty() {
        return Err(Error::invalid("nothing to plot"));
    }
    if style.columns == 0 || !(style.panel_size > 0.0) {
        return Err(Error::invalid("plot style needs columns > 0 and a positive panel size"));
    }
    let cols = style.columns.min(panels.len());
    let rows = panels.len().div_ceil(cols);
    let cell_w = style.panel_size + style.gap;
    let cell_h = style.panel_size + style.gap + TITLE_H;
    let width = cols as f64 * cell_w + style.gap;
    let height = rows as f64 * cell_h + style.gap;
    let mut s = String::new();
    let w = &mut s;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .ok();
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#).ok();
    for (k, panel) in panels.iter().enumerate() {
        let n = panel.perm.len().max(1) as f64;
        let x0 = style.gap + (k % cols) as f64 * cell_w;
        let y0 = style.gap + (k / cols) as f64 * cell_h + TITLE_H;
        let r = style
            .dot_radius
            .unwrap_or_else(|| (style.panel_size / n * 0.35).clamp(0.6, 6.0));
        let unit = style.panel_size / n;
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            x0 + style.panel_size / 2.0,
            y0 - 5.0,
            escape(&panel.title)
        )
        .ok();
        writeln!(
            w,
            r#"<rect x="{x0:.2}" y="{y0:.2}" width="{0:.2}" height="{0:.2}" fill="none" stroke="gray" stroke-width="0.8"/>"#,
            style.panel_size
        )
        .ok();
        writeln!(w, "<g fill=\"black\">").ok();
        for (i, &v) in panel.perm.values().iter().enumerate() {
            // position i+1 left to right, value bottom to top
            let cx = x0 + (i as f64 + 0.5) * unit;
            let cy = y0 + style.panel_size - (v as f64 - 0.5) * unit;
            writeln!(w, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}"/>"#).ok();
        }
        writeln!(w, "</g>").ok();
    }
    writeln!(w, "</svg>").ok();
    Ok(s)
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn write_permutation_svg(path: &Path, panels: &[Panel], style: &PlotStyle) -> Result<()> {
    let svg = permutation_svg(panels, style)?;
    std::fs::write(path, svg).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Panels titled `t = …` from `(time, values)` snapshots.
pub fn snapshot_panels(snapshots: &[(u64, Vec<u16>)]) -> Result<Vec<Panel>> {
    snapshots
        .iter()
        .map(|(t, v)| {
            Ok(Panel {
                title: format!("t = {t}"),
                perm: Permutation::new(v.clone())?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dots(svg: &str) -> Vec<(f64, f64)> {
        svg.lines()
            .filter(|l| l.starts_with("<circle"))
            .map(|l| {
                let attr = |name: &str| -> f64 {
                    let start = l.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                    let end = start + l[start..].find('"').unwrap();
                    l[start..end].parse().unwrap()
                };
                (attr("cx"), attr("cy"))
            })
            .collect()
    }

    #[test]
    fn identity_is_the_diagonal() {
        let panel = Panel {
            title: "id".into(),
            perm: Permutation::identity(5),
        };
        let svg = permutation_svg(&[panel], &PlotStyle::default()).unwrap();
        let d = dots(&svg);
        assert_eq!(d.len(), 5);
        // x increases and y decreases (SVG y points down) at the same rate
        for w in d.windows(2) {
            assert!(w[1].0 > w[0].0 && w[1].1 < w[0].1);
            assert!(((w[1].0 - w[0].0) - (w[0].1 - w[1].1)).abs() < 0.02);
        }
    }

    #[test]
    fn decreasing_is_the_antidiagonal() {
        let panel = Panel {
            title: "w0".into(),
            perm: Permutation::decreasing(5),
        };
        let d = dots(&permutation_svg(&[panel], &PlotStyle::default()).unwrap());
        for w in d.windows(2) {
            assert!(w[1].0 > w[0].0 && (w[1].1 - w[0].1 - (w[1].0 - w[0].0)).abs() < 0.02);
        }
    }

    #[test]
    fn multi_panel_and_deterministic() {
        let snaps: Vec<(u64, Vec<u16>)> = vec![(0, vec![3, 2, 1]), (1, vec![2, 1, 3]), (2, vec![1, 2, 3])];
        let panels = snapshot_panels(&snaps).unwrap();
        let a = permutation_svg(&panels, &PlotStyle::default()).unwrap();
        let b = permutation_svg(&panels, &PlotStyle::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(dots(&a).len(), 9);
        assert_eq!(a.matches("t = ").count(), 3);
        assert!(permutation_svg(&[], &PlotStyle::default()).is_err());
        assert!(snapshot_panels(&[(0, vec![1, 1])]).is_err());
    }
}
