use thiserror::Error;

/// Which coordinate of a cell was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Row,
    Col,
}

impl std::fmt::Display for Coordinate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coordinate::Row => f.write_str("row"),
            Coordinate::Col => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("{coordinate} {value} is outside 1..={max} for order {order}")]
    CellOutOfRange {
        coordinate: Coordinate,
        value: usize,
        max: usize,
        order: usize,
    },

    #[error("order {order} is even; use the even construction (color_cell_even)")]
    ExpectedOddOrder { order: usize },

    #[error(
        "order {order} is odd; the even construction needs an even order (use color_cell_odd)"
    )]
    ExpectedEvenOrder { order: usize },

    #[error("label sequence check needs an even order of at least 4, got {order}")]
    OrderTooSmall { order: usize },

    #[error("color {color} is outside 0..{num_colors}")]
    ColorOutOfRange { color: usize, num_colors: usize },

    #[error("coloring has order {coloring} but graph has order {graph}")]
    OrderMismatch { graph: usize, coloring: usize },

    #[error("coloring has {found} cells, expected {expected}")]
    CellCountMismatch { expected: usize, found: usize },

    #[error("palette has {palette} entries but the coloring uses {num_colors} colors")]
    PaletteTooShort { palette: usize, num_colors: usize },

    #[error("row {row} misses {missing} colors; extended columns need exactly 2")]
    NotExtendable { row: usize, missing: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
