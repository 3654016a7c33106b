//! The cyclic Latin square `T_n` and its Latin square graph.
//!
//! Cells are 1-based `(row, col)` pairs. Cell `(i, j)` of `T_n` carries the
//! label `i + j - 2 (mod n)`, and two distinct cells are adjacent when they
//! share a row, a column or a label.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Coordinate, Error, Result};

/// A cell of the `n x n` board, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Checks that the cell lies on the board of order `n`.
    pub fn check(self, n: usize) -> Result<Self> {
        self.check_within(n, n)
    }

    /// Same as [`Cell::check`] but with a wider column range, used by the
    /// extended board.
    pub(crate) fn check_within(self, rows: usize, cols: usize) -> Result<Self> {
        if self.row == 0 || self.row > rows {
            return Err(Error::CellOutOfRange {
                coordinate: Coordinate::Row,
                value: self.row,
                max: rows,
                order: rows,
            });
        }
        if self.col == 0 || self.col > cols {
            return Err(Error::CellOutOfRange {
                coordinate: Coordinate::Col,
                value: self.col,
                max: cols,
                order: rows,
            });
        }
        Ok(self)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Iterates the cells of the `n x n` board in row-major order.
pub fn cells(n: usize) -> impl Iterator<Item = Cell> + Clone {
    (1..=n).flat_map(move |row| (1..=n).map(move |col| Cell { row, col }))
}

/// The Cayley table of the cyclic group of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicLatinSquare {
    order: usize,
}

impl CyclicLatinSquare {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(CyclicLatinSquare { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self, cell: Cell) -> Result<usize> {
        label(self.order, cell)
    }

    /// The full table of labels, one `Vec` per row.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        (1..=n)
            .map(|row| (1..=n).map(|col| raw_label(n, row, col)).collect())
            .collect()
    }
}

#[inline]
pub(crate) fn raw_label(n: usize, row: usize, col: usize) -> usize {
    (row + col - 2) % n
}

/// Label of `cell` in `T_n`: `row + col - 2 (mod n)`.
pub fn label(n: usize, cell: Cell) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let cell = cell.check(n)?;
    Ok(raw_label(n, cell.row, cell.col))
}

/// Adjacency in the Latin square graph of `T_n`. A cell is never adjacent to
/// itself.
pub fn adjacent(n: usize, a: Cell, b: Cell) -> Result<bool> {
    let la = label(n, a)?;
    let lb = label(n, b)?;
    if a == b {
        return Ok(false);
    }
    Ok(a.row == b.row || a.col == b.col || la == lb)
}

/// Latin square graph of `T_n` with materialized adjacency lists.
///
/// Vertices are numbered `(row - 1) * n + col`, starting at 1. Internally the
/// adjacency lists use the 0-based slot `(row - 1) * n + (col - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquareGraph {
    order: usize,
    adjacency: Vec<Vec<usize>>,
}

/// Builds the Latin square graph of `T_n`.
pub fn build_graph(n: usize) -> Result<LatinSquareGraph> {
    LatinSquareGraph::new(n)
}

impl LatinSquareGraph {
    pub fn new(order: usize) -> Result<Self> {
        let square = CyclicLatinSquare::new(order)?;
        let n = square.order();
        let mut adjacency = Vec::with_capacity(n * n);
        for cell in cells(n) {
            let own = raw_label(n, cell.row, cell.col);
            let mut list = Vec::with_capacity(3 * (n - 1));
            for col in (1..=n).filter(|&c| c != cell.col) {
                list.push((cell.row - 1) * n + col - 1);
            }
            for row in (1..=n).filter(|&r| r != cell.row) {
                list.push((row - 1) * n + cell.col - 1);
                // the unique column in this row carrying the same label
                let col = (own + n + 2 - row) % n;
                let col = if col == 0 { n } else { col };
                if col != cell.col {
                    list.push((row - 1) * n + col - 1);
                }
            }
            list.sort_unstable();
            adjacency.push(list);
        }
        Ok(LatinSquareGraph {
            order: n,
            adjacency,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.order * self.order
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// 1-based vertex number of `cell`, as used in DIMACS output.
    pub fn vertex_index(&self, cell: Cell) -> Result<usize> {
        let cell = cell.check(self.order)?;
        Ok((cell.row - 1) * self.order + cell.col)
    }

    /// Inverse of [`LatinSquareGraph::vertex_index`].
    pub fn cell_at(&self, index: usize) -> Option<Cell> {
        if index == 0 || index > self.vertex_count() {
            return None;
        }
        Some(self.cell_of_slot(index - 1))
    }

    pub(crate) fn slot(&self, cell: Cell) -> usize {
        (cell.row - 1) * self.order + cell.col - 1
    }

    pub(crate) fn cell_of_slot(&self, slot: usize) -> Cell {
        Cell {
            row: slot / self.order + 1,
            col: slot % self.order + 1,
        }
    }

    /// 0-based adjacency lists, sorted ascending.
    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degree(&self, cell: Cell) -> Result<usize> {
        let cell = cell.check(self.order)?;
        Ok(self.adjacency[self.slot(cell)].len())
    }

    pub fn is_edge(&self, a: Cell, b: Cell) -> Result<bool> {
        let a = a.check(self.order)?;
        let b = b.check(self.order)?;
        Ok(self.adjacency[self.slot(a)]
            .binary_search(&self.slot(b))
            .is_ok())
    }

    pub fn neighbors(&self, cell: Cell) -> Result<BTreeSet<Cell>> {
        let cell = cell.check(self.order)?;
        Ok(self.adjacency[self.slot(cell)]
            .iter()
            .map(|&s| self.cell_of_slot(s))
            .collect())
    }

    /// Edges as 1-based vertex pairs `(u, v)` with `u < v`, in lexicographic
    /// order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u + 1, v + 1))
        })
    }
}

/// Neighborhood of `cell` in `graph`.
pub fn neighbors(graph: &LatinSquareGraph, cell: Cell) -> Result<BTreeSet<Cell>> {
    graph.neighbors(cell)
}
