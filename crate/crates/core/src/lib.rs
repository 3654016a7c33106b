//! Cyclic Latin square graphs and their optimal colorings.
//!
//! [`latin`] builds `T_n` and its Latin square graph, [`coloring`] produces
//! the closed-form colorings with `n` colors (odd `n`) and `n + 2` colors
//! (even `n`), [`verify`] checks them, and [`oracle`] confirms chromatic
//! numbers by exact search on small orders.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod io;
pub mod latin;
pub mod oracle;
pub mod verify;

pub use coloring::{
    color_board, color_cell_even, color_cell_odd, colors_needed, extended_board, Coloring,
    ExtendedBoard,
};
pub use error::{Error, Result};
pub use latin::{
    adjacent, build_graph, label, neighbors, Cell, CyclicLatinSquare, LatinSquareGraph,
};
pub use oracle::{
    chromatic_number, clique_lower_bound, exists_coloring, verify_theorem, ChiResult, ChiStatus,
    Decision, SearchBudget,
};
pub use verify::{
    check_equitable, check_proper, color_class_sizes, label_sequence_check, parity_structure,
    ParityFinding, VerificationReport,
};
