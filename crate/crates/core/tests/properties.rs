use proptest::prelude::*;

use cyclic_latin::io::{export_coloring_json, export_dimacs, import_coloring_json};
use cyclic_latin::verify::{check_equitable, check_proper, color_class_sizes};
use cyclic_latin::{adjacent, build_graph, color_board, label, Cell, Coloring};

fn cell_in(n: usize) -> impl Strategy<Value = Cell> {
    (1..=n, 1..=n).prop_map(|(r, c)| Cell::new(r, c))
}

fn order_and_two_cells() -> impl Strategy<Value = (usize, Cell, Cell)> {
    (1usize..=12).prop_flat_map(|n| (Just(n), cell_in(n), cell_in(n)))
}

fn any_coloring() -> impl Strategy<Value = Coloring> {
    (1usize..=6, 1usize..=9).prop_flat_map(|(n, k)| {
        proptest::collection::vec(0..k, n * n)
            .prop_map(move |colors| Coloring::new(n, k, colors).unwrap())
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric((n, a, b) in order_and_two_cells()) {
        prop_assert_eq!(adjacent(n, a, b).unwrap(), adjacent(n, b, a).unwrap());
        prop_assert!(!adjacent(n, a, a).unwrap());
    }

    #[test]
    fn label_is_a_residue((n, a, _b) in order_and_two_cells()) {
        prop_assert!(label(n, a).unwrap() < n);
    }

    #[test]
    fn json_round_trip(coloring in any_coloring()) {
        let text = export_coloring_json(&coloring, None);
        prop_assert_eq!(import_coloring_json(&text).unwrap(), coloring);
    }

    #[test]
    fn report_invariants(coloring in any_coloring()) {
        let n = coloring.order();
        let report = check_proper(&build_graph(n).unwrap(), &coloring).unwrap();
        prop_assert_eq!(report.proper, report.conflicts.is_empty());
        prop_assert_eq!(report.class_sizes.values().sum::<usize>(), n * n);
        prop_assert_eq!(report.equitable, report.max_class - report.min_class <= 1);
        prop_assert_eq!(report.equitable, check_equitable(&coloring));
        prop_assert_eq!(report.class_sizes, color_class_sizes(&coloring));
    }

    #[test]
    fn dimacs_is_stable(n in 1usize..=10) {
        let g = build_graph(n).unwrap();
        prop_assert_eq!(export_dimacs(&g), export_dimacs(&build_graph(n).unwrap()));
    }

    #[test]
    fn closed_form_colors_in_range(n in 1usize..=40) {
        let c = color_board(n).unwrap();
        prop_assert!(c.colors().iter().all(|&x| x < c.num_colors()));
    }
}
