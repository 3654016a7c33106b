//! Text and SVG grids of a coloring.

use std::fmt::Write as _;

use crate::coloring::{display_color, Coloring};
use crate::error::{Error, Result};
use crate::latin::raw_label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderFormat {
    #[default]
    Text,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RenderSpec {
    pub format: RenderFormat,
    /// Text mode: print `color/label` instead of just the color.
    pub show_labels: bool,
    /// Append the two extra columns of the even construction.
    pub show_extended_columns: bool,
    /// Show 1-based colors (residue 0 as `k`) instead of residues.
    pub paper_colors: bool,
    /// SVG fill colors, one per color residue. `None` picks evenly spaced
    /// hues.
    pub palette: Option<Vec<String>>,
}

/// `k` evenly spaced hues as `#rrggbb`.
pub fn default_palette(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            let hue = 360.0 * i as f64 / k.max(1) as f64;
            let (r, g, b) = hsl_to_rgb(hue, 0.65, 0.62);
            format!("#{r:02x}{g:02x}{b:02x}")
        })
        .collect()
}

fn hsl_to_rgb(hue: f64, saturation: f64, lightness: f64) -> (u8, u8, u8) {
    let chroma = (1.0 - (2.0 * lightness - 1.0).abs()) * saturation;
    let h = hue / 60.0;
    let x = chroma * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (chroma, x, 0.0),
        1 => (x, chroma, 0.0),
        2 => (0.0, chroma, x),
        3 => (0.0, x, chroma),
        4 => (x, 0.0, chroma),
        _ => (chroma, 0.0, x),
    };
    let m = lightness - chroma / 2.0;
    let to_byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (to_byte(r), to_byte(g), to_byte(b))
}

/// Colors that a row lacks, ascending. For the even construction these are
/// exactly the two extra-column entries, in column order.
fn missing_colors(coloring: &Coloring, row: usize) -> Vec<usize> {
    let mut present = vec![false; coloring.num_colors()];
    for &c in coloring.row(row) {
        present[c] = true;
    }
    (0..coloring.num_colors())
        .filter(|&c| !present[c])
        .collect()
}

fn extra_columns(coloring: &Coloring) -> Result<Option<Vec<Vec<usize>>>> {
    let n = coloring.order();
    if n % 2 == 1 {
        return Ok(None);
    }
    (1..=n)
        .map(|row| {
            let missing = missing_colors(coloring, row);
            if missing.len() == 2 {
                Ok(missing)
            } else {
                Err(Error::NotExtendable {
                    row,
                    missing: missing.len(),
                })
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn render_grid(coloring: &Coloring, spec: &RenderSpec) -> Result<String> {
    let extras = if spec.show_extended_columns {
        extra_columns(coloring)?
    } else {
        None
    };
    match spec.format {
        RenderFormat::Text => Ok(render_text(coloring, spec, extras.as_deref())),
        RenderFormat::Svg => render_svg(coloring, spec, extras.as_deref()),
    }
}

fn render_text(coloring: &Coloring, spec: &RenderSpec, extras: Option<&[Vec<usize>]>) -> String {
    let n = coloring.order();
    let k = coloring.num_colors();
    let shown = |c: usize| {
        if spec.paper_colors {
            display_color(c, k)
        } else {
            c
        }
    };

    let rows: Vec<(Vec<String>, Vec<String>)> = (1..=n)
        .map(|row| {
            let board = coloring
                .row(row)
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    if spec.show_labels {
                        format!("{}/{}", shown(c), raw_label(n, row, i + 1))
                    } else {
                        shown(c).to_string()
                    }
                })
                .collect();
            let extra = extras
                .map(|e| e[row - 1].iter().map(|&c| shown(c).to_string()).collect())
                .unwrap_or_default();
            (board, extra)
        })
        .collect();
    let width = rows
        .iter()
        .flat_map(|(a, b)| a.iter().chain(b))
        .map(String::len)
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    for (board, extra) in rows {
        let mut line: Vec<String> = board.iter().map(|t| format!("{t:>width$}")).collect();
        if extras.is_some() {
            line.push("|".to_string());
            line.extend(extra.iter().map(|t| format!("{t:>width$}")));
        }
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

const CELL: usize = 40;
const GAP: usize = 12;

fn render_svg(
    coloring: &Coloring,
    spec: &RenderSpec,
    extras: Option<&[Vec<usize>]>,
) -> Result<String> {
    let n = coloring.order();
    let k = coloring.num_colors();
    let palette = spec.palette.clone().unwrap_or_else(|| default_palette(k));
    if palette.len() < k {
        return Err(Error::PaletteTooShort {
            palette: palette.len(),
            num_colors: k,
        });
    }
    let extra_width = extras.map_or(0, |_| GAP + 2 * CELL);
    let width = n * CELL + extra_width;
    let height = n * CELL;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"<g font-family="sans-serif" font-size="14" text-anchor="middle" stroke="#333333" stroke-width="1">"##
    );
    for row in 1..=n {
        let y = (row - 1) * CELL;
        for (i, &c) in coloring.row(row).iter().enumerate() {
            let x = i * CELL;
            let _ = writeln!(
                out,
                r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                palette[c]
            );
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{}" stroke="none" fill="#000000">{}</text>"##,
                x + CELL / 2,
                y + CELL / 2 + 5,
                raw_label(n, row, i + 1)
            );
        }
        if let Some(extras) = extras {
            for (i, &c) in extras[row - 1].iter().enumerate() {
                let x = n * CELL + GAP + i * CELL;
                let _ = writeln!(
                    out,
                    r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" stroke-dasharray="4 2"/>"#,
                    palette[c]
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
