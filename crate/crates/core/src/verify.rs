//! Executable checks for colorings of `T_n`.
//!
//! Besides properness and equitability this module checks the label
//! structure the even construction relies on. Fix a color and split the
//! board into the first half (rows `i <= n/2`) and the second half. Within a
//! half, the labels of the cells carrying that color all share one parity,
//! the two halves have opposite parities, and walking down the rows the
//! labels advance by 2 between consecutive rows and by 4 across a pair of
//! blank rows (rows where the color sits in one of the two extra columns).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::{color_board, colors_needed, extended_board, residue_of, Coloring};
use crate::error::{Error, Result};
use crate::latin::{raw_label, Cell, LatinSquareGraph};

/// Outcome of [`check_proper`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub proper: bool,
    /// Monochromatic adjacent pairs, each unordered pair once, first cell
    /// smaller.
    pub conflicts: Vec<(Cell, Cell)>,
    /// Size of every color class `0..num_colors`, including empty ones.
    pub class_sizes: BTreeMap<usize, usize>,
    pub equitable: bool,
    pub max_class: usize,
    pub min_class: usize,
}

/// Checks `coloring` against the adjacency of `graph`.
pub fn check_proper(graph: &LatinSquareGraph, coloring: &Coloring) -> Result<VerificationReport> {
    if graph.order() != coloring.order() {
        return Err(Error::OrderMismatch {
            graph: graph.order(),
            coloring: coloring.order(),
        });
    }
    let colors = coloring.colors();
    let mut conflicts = Vec::new();
    for (u, list) in graph.adjacency().iter().enumerate() {
        for &v in list.iter().filter(|&&v| v > u) {
            if colors[u] == colors[v] {
                conflicts.push((graph.cell_of_slot(u), graph.cell_of_slot(v)));
            }
        }
    }
    let class_sizes = color_class_sizes(coloring);
    let max_class = class_sizes.values().copied().max().unwrap_or(0);
    let min_class = class_sizes.values().copied().min().unwrap_or(0);
    Ok(VerificationReport {
        proper: conflicts.is_empty(),
        conflicts,
        class_sizes,
        equitable: max_class - min_class <= 1,
        max_class,
        min_class,
    })
}

/// Number of cells of each color, with an entry for every residue.
pub fn color_class_sizes(coloring: &Coloring) -> BTreeMap<usize, usize> {
    let mut sizes: BTreeMap<usize, usize> = (0..coloring.num_colors()).map(|c| (c, 0)).collect();
    for &c in coloring.colors() {
        *sizes.entry(c).or_default() += 1;
    }
    sizes
}

/// Whether any two color classes differ in size by at most one.
pub fn check_equitable(coloring: &Coloring) -> bool {
    let sizes = color_class_sizes(coloring);
    match (sizes.values().max(), sizes.values().min()) {
        (Some(max), Some(min)) => max - min <= 1,
        _ => true,
    }
}

/// Checks the class sizes of an even-order coloring with `n + 2` colors:
/// residues `n/2`, `n/2 + 1`, `n + 1` and `0` appear `n - 1` times and every
/// other residue `n - 2` times.
pub fn check_class_pattern(coloring: &Coloring) -> bool {
    let n = coloring.order();
    let k = n + 2;
    if n % 2 == 1 || n < 4 || coloring.num_colors() != k {
        return false;
    }
    let large = [n / 2, n / 2 + 1, n + 1, n + 2].map(|c| residue_of(c, k));
    color_class_sizes(coloring).iter().all(|(color, &size)| {
        if large.contains(color) {
            size == n - 1
        } else {
            size == n - 2
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Empty,
    Mixed,
}

impl Parity {
    fn of(labels: &[(usize, usize)]) -> Parity {
        let mut it = labels.iter().map(|&(_, l)| l % 2);
        match it.next() {
            None => Parity::Empty,
            Some(first) if it.all(|p| p == first) => {
                if first == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            }
            Some(_) => Parity::Mixed,
        }
    }
}

/// Labels carried by one color, split into the two halves of the board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityFinding {
    pub color: usize,
    /// `(row, label)` in row order for rows `<= n/2`.
    pub first_half_labels: Vec<(usize, usize)>,
    pub second_half_labels: Vec<(usize, usize)>,
    pub first_half_parity: Parity,
    pub second_half_parity: Parity,
    pub distinct_within_halves: bool,
}

impl ParityFinding {
    /// Both halves have a single parity, and they differ when both are
    /// nonempty.
    pub fn parities_opposite(&self) -> bool {
        use Parity::*;
        match (self.first_half_parity, self.second_half_parity) {
            (Mixed, _) | (_, Mixed) => false,
            (Empty, _) | (_, Empty) => true,
            (a, b) => a != b,
        }
    }

    /// Each half lists at most `n/2` labels.
    pub fn within_length_bound(&self, n: usize) -> bool {
        self.first_half_labels.len() <= n / 2 && self.second_half_labels.len() <= n / 2
    }

    pub fn holds(&self, n: usize) -> bool {
        self.parities_opposite() && self.distinct_within_halves && self.within_length_bound(n)
    }
}

fn check_even_color(n: usize, num_colors: usize, color: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n % 2 == 1 {
        return Err(Error::ExpectedEvenOrder { order: n });
    }
    if color >= num_colors {
        return Err(Error::ColorOutOfRange { color, num_colors });
    }
    Ok(())
}

/// Parity finding for `color` in the closed-form coloring of even `n`.
pub fn parity_structure(n: usize, color: usize) -> Result<ParityFinding> {
    check_even_color(n, n + 2, color)?;
    parity_structure_of(&color_board(n)?, color)
}

/// Parity finding for `color` in an arbitrary coloring of even order.
pub fn parity_structure_of(coloring: &Coloring, color: usize) -> Result<ParityFinding> {
    let n = coloring.order();
    check_even_color(n, coloring.num_colors(), color)?;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (cell, c) in coloring.iter() {
        if c != color {
            continue;
        }
        let entry = (cell.row, raw_label(n, cell.row, cell.col));
        if cell.row <= n / 2 {
            first.push(entry);
        } else {
            second.push(entry);
        }
    }
    let distinct = |labels: &[(usize, usize)]| {
        let mut seen = vec![false; n];
        labels
            .iter()
            .all(|&(_, l)| !std::mem::replace(&mut seen[l], true))
    };
    Ok(ParityFinding {
        color,
        first_half_parity: Parity::of(&first),
        second_half_parity: Parity::of(&second),
        distinct_within_halves: distinct(&first) && distinct(&second),
        first_half_labels: first,
        second_half_labels: second,
    })
}

/// What one row holds for a fixed color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowEntry {
    /// The color is not on the `n x n` part of the row.
    Blank,
    Labeled(usize),
    /// The color occurs more than once in the row.
    Repeated,
}

/// Walks one half and checks the +2 / +4 label steps.
fn half_conforms(n: usize, entries: &[(usize, RowEntry)]) -> bool {
    let mut previous: Option<(usize, usize)> = None;
    for &(row, entry) in entries {
        match entry {
            RowEntry::Blank => {}
            RowEntry::Repeated => return false,
            RowEntry::Labeled(label) => {
                if let Some((prev_row, prev_label)) = previous {
                    let step = (label + n - prev_label) % n;
                    let ok = match row - prev_row {
                        1 => step == 2 % n,
                        3 => step == 4 % n,
                        _ => false,
                    };
                    if !ok {
                        return false;
                    }
                }
                previous = Some((row, label));
            }
        }
    }
    true
}

fn sequence_conforms(n: usize, entries: Vec<(usize, RowEntry)>) -> bool {
    let (first, second): (Vec<_>, Vec<_>) = entries.into_iter().partition(|&(r, _)| r <= n / 2);
    half_conforms(n, &first) && half_conforms(n, &second)
}

fn check_sequence_args(n: usize, num_colors: usize, color: usize) -> Result<()> {
    check_even_color(n, num_colors, color)?;
    if n < 4 {
        return Err(Error::OrderTooSmall { order: n });
    }
    Ok(())
}

/// Checks the label steps of `color` in the closed-form coloring of even
/// `n >= 4`. Blank rows are read off the extended board.
pub fn label_sequence_check(n: usize, color: usize) -> Result<bool> {
    check_sequence_args(n, n + 2, color)?;
    let board = extended_board(n)?;
    let entries = (1..=n)
        .map(|row| {
            let entry = match board.column_of(row, color) {
                Some(col) if col <= n => RowEntry::Labeled(raw_label(n, row, col)),
                _ => RowEntry::Blank,
            };
            (row, entry)
        })
        .collect();
    Ok(sequence_conforms(n, entries))
}

/// Same check for an arbitrary coloring of even order `n >= 4`. A row
/// without the color counts as blank; a row with it twice fails.
pub fn label_sequence_check_of(coloring: &Coloring, color: usize) -> Result<bool> {
    let n = coloring.order();
    check_sequence_args(n, coloring.num_colors(), color)?;
    let entries = (1..=n)
        .map(|row| {
            let mut hits = coloring
                .row(row)
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == color)
                .map(|(i, _)| i + 1);
            let entry = match (hits.next(), hits.next()) {
                (None, _) => RowEntry::Blank,
                (Some(col), None) => RowEntry::Labeled(raw_label(n, row, col)),
                (Some(_), Some(_)) => RowEntry::Repeated,
            };
            (row, entry)
        })
        .collect();
    Ok(sequence_conforms(n, entries))
}

/// Parity, distinctness, length and step checks for every color of an
/// even-order coloring. Returns `None` when they do not apply (odd order).
pub fn structure_holds(coloring: &Coloring) -> Option<bool> {
    let n = coloring.order();
    if n % 2 == 1 {
        return None;
    }
    let ok = (0..coloring.num_colors()).all(|color| {
        let parity = parity_structure_of(coloring, color).map(|f| f.holds(n));
        let steps = if n >= 4 {
            label_sequence_check_of(coloring, color)
        } else {
            Ok(true)
        };
        matches!((parity, steps), (Ok(true), Ok(true)))
    });
    Some(ok)
}

/// Everything the verifier knows how to check for one coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub order: usize,
    pub num_colors: usize,
    /// `n` for odd orders, `n + 2` for even ones.
    pub expected_colors: usize,
    pub report: VerificationReport,
    /// Per-color parity findings, even orders only.
    pub parity: Vec<ParityFinding>,
    /// Per-color step check results, even orders `>= 4` only.
    pub sequences: Vec<(usize, bool)>,
    /// Class-size pattern of the even construction, even orders `>= 4` with
    /// `n + 2` colors only.
    pub class_pattern: Option<bool>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        let n = self.order;
        self.report.proper
            && self.report.equitable
            && self.num_colors == self.expected_colors
            && self.parity.iter().all(|f| f.holds(n))
            && self.sequences.iter().all(|&(_, ok)| ok)
            && self.class_pattern.unwrap_or(true)
    }
}

/// Runs properness, equitability and, for even orders, the structure checks.
pub fn verify_suite(graph: &LatinSquareGraph, coloring: &Coloring) -> Result<SuiteReport> {
    let report = check_proper(graph, coloring)?;
    let n = coloring.order();
    let k = coloring.num_colors();
    let even = n.is_multiple_of(2);
    let parity = if even {
        (0..k)
            .map(|c| parity_structure_of(coloring, c))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let sequences = if even && n >= 4 {
        (0..k)
            .map(|c| label_sequence_check_of(coloring, c).map(|ok| (c, ok)))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let class_pattern = (even && n >= 4 && k == n + 2).then(|| check_class_pattern(coloring));
    Ok(SuiteReport {
        order: n,
        num_colors: k,
        expected_colors: colors_needed(n),
        report,
        parity,
        sequences,
        class_pattern,
    })
}
