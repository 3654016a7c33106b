//! Closed-form colorings of `T_n`.
//!
//! Odd `n` uses `n` colors: cell `(i, j)` gets `j - i (mod n)`, so every row
//! is the previous one shifted by one.
//!
//! Even `n` uses `n + 2` colors. The board is widened by two columns and
//! colored by the same shifting rule modulo `n + 2`, except that row
//! `n/2 + 1` is shifted twice. Cell `(i, j)` gets `j - i (mod n + 2)` for
//! `i <= n/2` and `j - i - 1 (mod n + 2)` otherwise.
//!
//! Colors are residues `0..k`. The 1-based colors `1..=k` used when talking
//! about the construction map to residues by `c mod k`, so color `k` is
//! residue 0.

use crate::error::{Error, Result};
use crate::latin::{cells, Cell};

/// A total assignment of color residues to the cells of the `n x n` board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    order: usize,
    num_colors: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// Builds a coloring from row-major residues.
    pub fn new(order: usize, num_colors: usize, colors: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if colors.len() != order * order {
            return Err(Error::CellCountMismatch {
                expected: order * order,
                found: colors.len(),
            });
        }
        if let Some(&color) = colors.iter().find(|&&c| c >= num_colors) {
            return Err(Error::ColorOutOfRange { color, num_colors });
        }
        Ok(Coloring {
            order,
            num_colors,
            colors,
        })
    }

    /// Every cell gets `color`.
    pub fn constant(order: usize, num_colors: usize, color: usize) -> Result<Self> {
        Coloring::new(order, num_colors, vec![color; order * order])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Row-major residues.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn get(&self, cell: Cell) -> Result<usize> {
        let cell = cell.check(self.order)?;
        Ok(self.colors[(cell.row - 1) * self.order + cell.col - 1])
    }

    /// Colors of row `row` (1-based).
    pub fn row(&self, row: usize) -> &[usize] {
        let n = self.order;
        &self.colors[(row - 1) * n..row * n]
    }

    /// Exchanges the colors of two cells.
    pub fn swap(&mut self, a: Cell, b: Cell) -> Result<()> {
        let a = a.check(self.order)?;
        let b = b.check(self.order)?;
        let n = self.order;
        self.colors
            .swap((a.row - 1) * n + a.col - 1, (b.row - 1) * n + b.col - 1);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        cells(self.order).zip(self.colors.iter().copied())
    }
}

/// Residue of the 1-based color `color` among `k` colors.
pub fn residue_of(color: usize, k: usize) -> usize {
    color % k
}

/// 1-based color for a residue: residue 0 is shown as `k`.
pub fn display_color(residue: usize, k: usize) -> usize {
    if residue == 0 {
        k
    } else {
        residue
    }
}

/// Number of colors the construction uses for order `n`.
pub fn colors_needed(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n + 2
    }
}

#[inline]
fn shift(col: usize, row: usize, extra: usize, k: usize) -> usize {
    (col + k * 2 - row - extra) % k
}

/// Color of a cell for odd `n`: `col - row (mod n)`.
pub fn color_cell_odd(n: usize, cell: Cell) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n.is_multiple_of(2) {
        return Err(Error::ExpectedOddOrder { order: n });
    }
    let cell = cell.check(n)?;
    Ok(shift(cell.col, cell.row, 0, n))
}

/// Color of a cell for even `n`. Columns `n + 1` and `n + 2` address the two
/// extra columns of the extended board.
pub fn color_cell_even(n: usize, cell: Cell) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n % 2 == 1 {
        return Err(Error::ExpectedEvenOrder { order: n });
    }
    let cell = cell.check_within(n, n + 2)?;
    let extra = usize::from(cell.row > n / 2);
    Ok(shift(cell.col, cell.row, extra, n + 2))
}

/// The closed-form coloring of `T_n`: `n` colors for odd `n`, `n + 2` for
/// even `n`.
pub fn color_board(n: usize) -> Result<Coloring> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let k = colors_needed(n);
    let colors = cells(n)
        .map(|cell| {
            if n % 2 == 1 {
                color_cell_odd(n, cell)
            } else {
                color_cell_even(n, cell)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(n, k, colors)
}

/// The `n x (n + 2)` board behind the even construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedBoard {
    order: usize,
    rows: Vec<Vec<usize>>,
}

/// Builds the extended board for even `n`.
pub fn extended_board(n: usize) -> Result<ExtendedBoard> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if n % 2 == 1 {
        return Err(Error::ExpectedEvenOrder { order: n });
    }
    let rows = (1..=n)
        .map(|row| {
            (1..=n + 2)
                .map(|col| color_cell_even(n, Cell::new(row, col)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtendedBoard { order: n, rows })
}

impl ExtendedBoard {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_colors(&self) -> usize {
        self.order + 2
    }

    pub fn width(&self) -> usize {
        self.order + 2
    }

    /// Row `row` (1-based), all `n + 2` columns.
    pub fn row(&self, row: usize) -> &[usize] {
        &self.rows[row - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, cell: Cell) -> Result<usize> {
        let cell = cell.check_within(self.order, self.order + 2)?;
        Ok(self.rows[cell.row - 1][cell.col - 1])
    }

    /// Column of `color` in `row`; above `n` means one of the extra columns.
    pub fn column_of(&self, row: usize, color: usize) -> Option<usize> {
        self.rows
            .get(row.wrapping_sub(1))?
            .iter()
            .position(|&c| c == color)
            .map(|i| i + 1)
    }

    /// The coloring of the `n x n` square, i.e. the first `n` columns.
    pub fn restrict(&self) -> Coloring {
        let n = self.order;
        let colors = self
            .rows
            .iter()
            .flat_map(|r| r[..n].iter().copied())
            .collect();
        Coloring {
            order: n,
            num_colors: n + 2,
            colors,
        }
    }
}
