//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p cyclic-latin --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclic_latin::cli;
use cyclic_latin::io::{export_coloring_json, export_dimacs, import_coloring_json};
use cyclic_latin::oracle::{chromatic_number, exists_coloring, ChiStatus, Decision, SearchBudget};
use cyclic_latin::verify::{
    check_proper, color_class_sizes, label_sequence_check, parity_structure, structure_holds,
};
use cyclic_latin::{build_graph, color_board, Cell, Coloring};

// Thresholds, one per criterion.
const UPPER_BOUND_LIMIT: Duration = Duration::from_secs(5);
const SMALL_CHI_LIMIT: Duration = Duration::from_secs(10);
const CHI_FIVE_LIMIT: Duration = Duration::from_secs(60);
const REFUTE_FOUR_LIMIT: Duration = Duration::from_secs(60);
const REFUTE_SIX_BUDGET: Duration = Duration::from_secs(600);
const EQUITABLE_LIMIT: Duration = Duration::from_secs(5);
const STRUCTURE_LIMIT: Duration = Duration::from_secs(10);
const MUTATION_LIMIT: Duration = Duration::from_secs(30);
const MUTATIONS_PER_ORDER: usize = 100;
const SERIALIZATION_LIMIT: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure(spent <= limit, || {
        format!("took {spent:?}, limit {limit:?}")
    })?;
    Ok(spent)
}

/// Adjacency straight from the definition, independent of the library.
fn naive_adjacent(n: usize, a: Cell, b: Cell) -> bool {
    a != b && (a.row == b.row || a.col == b.col || (a.row + a.col) % n == (b.row + b.col) % n)
}

fn naive_conflicts(coloring: &Coloring) -> BTreeSet<(Cell, Cell)> {
    let n = coloring.order();
    let all: Vec<(Cell, usize)> = coloring.iter().collect();
    let mut out = BTreeSet::new();
    for (i, &(a, ca)) in all.iter().enumerate() {
        for &(b, cb) in &all[i + 1..] {
            if ca == cb && naive_adjacent(n, a, b) {
                out.insert((a, b));
            }
        }
    }
    out
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cyclic-latin").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in (1..=31).step_by(2) {
        let order = n.to_string();
        let (code, out) = run_cli(&["verify", "--order", &order]);
        ensure(code == 0, || format!("verify --order {n} exited {code}"))?;
        ensure(
            out.contains("proper=true") && out.contains("conflicts=0"),
            || format!("verify --order {n} did not report a proper coloring"),
        )?;
        ensure(out.contains(&format!("colors={n} expected={n}")), || {
            format!("order {n} does not use {n} colors")
        })?;
    }
    let spent = within(start, UPPER_BOUND_LIMIT)?;
    Ok(format!(
        "16 odd orders, zero conflicts with n colors ({spent:.2?})"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in (2..=30).step_by(2) {
        let coloring = color_board(n).map_err(|e| e.to_string())?;
        ensure(coloring.num_colors() == n + 2, || {
            format!("order {n}: {} colors", coloring.num_colors())
        })?;
        let report = check_proper(&build_graph(n).unwrap(), &coloring).unwrap();
        ensure(report.proper, || {
            format!("order {n}: {} conflicts", report.conflicts.len())
        })?;
    }
    let spent = within(start, UPPER_BOUND_LIMIT)?;
    Ok(format!(
        "15 even orders, zero conflicts with n+2 colors ({spent:.2?})"
    ))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (n, expected) in [(3, 3), (2, 4), (5, 5), (4, 6)] {
        let start = Instant::now();
        let r = chromatic_number(&build_graph(n).unwrap(), SearchBudget::unbounded());
        ensure(
            r.status == ChiStatus::Exact && r.chi == Some(expected),
            || {
                format!(
                    "order {n}: {:?} chi={:?}, expected {expected}",
                    r.status, r.chi
                )
            },
        )?;
        let witness = r.witness.as_ref().ok_or("missing witness")?;
        ensure(
            witness.num_colors() == expected && naive_conflicts(witness).is_empty(),
            || format!("order {n}: witness is not a proper {expected}-coloring"),
        )?;
        let limit = if n <= 4 {
            SMALL_CHI_LIMIT
        } else {
            CHI_FIVE_LIMIT
        };
        let spent = within(start, limit)?;
        notes.push(format!("chi(T_{n})={expected} [{spent:.1?}]"));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let out = exists_coloring(&build_graph(4).unwrap(), 5, SearchBudget::unbounded());
    ensure(out.decision == Decision::NotFound, || {
        format!("got {:?}", out.decision)
    })?;
    let spent = within(start, REFUTE_FOUR_LIMIT)?;
    Ok(format!(
        "no 5-coloring of T_4 ({} nodes, {spent:.2?})",
        out.stats.nodes_explored
    ))
}

fn criterion_5() -> Outcome {
    let graph = build_graph(6).unwrap();
    let out = exists_coloring(&graph, 7, SearchBudget::time(REFUTE_SIX_BUDGET));
    match out.decision {
        Decision::NotFound => Ok(format!(
            "no 7-coloring of T_6 ({} nodes, {:.2?})",
            out.stats.nodes_explored, out.stats.elapsed
        )),
        Decision::Inconclusive => {
            let r = chromatic_number(&graph, SearchBudget::time(REFUTE_SIX_BUDGET));
            ensure(
                r.status != ChiStatus::Exact && (r.lower_bound, r.upper_bound) == (7, 8),
                || {
                    format!(
                        "budget exhausted and bounds are [{}, {}]",
                        r.lower_bound, r.upper_bound
                    )
                },
            )?;
            Ok("downgraded: budget exhausted, bounds [7,8] reported".to_string())
        }
        Decision::Found(_) => Err("found a 7-coloring of T_6".to_string()),
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    for n in (4..=30).step_by(2) {
        let sizes = color_class_sizes(&color_board(n).unwrap());
        let large: BTreeSet<usize> = sizes
            .iter()
            .filter(|(_, &s)| s == n - 1)
            .map(|(&c, _)| c)
            .collect();
        let small = sizes.values().filter(|&&s| s == n - 2).count();
        let expected: BTreeSet<usize> = [n / 2, n / 2 + 1, n + 1, 0].into_iter().collect();
        ensure(large == expected, || {
            format!("order {n}: size n-1 residues {large:?}")
        })?;
        ensure(small == n - 2 && sizes.len() == n + 2, || {
            format!(
                "order {n}: {small} classes of size n-2 among {}",
                sizes.len()
            )
        })?;
    }
    let spent = within(start, EQUITABLE_LIMIT)?;
    Ok(format!(
        "14 even orders, sizes {{n-1 x4, n-2 x(n-2)}} ({spent:.2?})"
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in (4..=20).step_by(2) {
        for color in 0..n + 2 {
            let f = parity_structure(n, color).map_err(|e| e.to_string())?;
            ensure(f.parities_opposite(), || {
                format!(
                    "order {n} color {color}: parities {:?}/{:?}",
                    f.first_half_parity, f.second_half_parity
                )
            })?;
            ensure(f.distinct_within_halves, || {
                format!("order {n} color {color}: repeated label")
            })?;
            ensure(f.within_length_bound(n), || {
                format!("order {n} color {color}: sequence longer than n/2")
            })?;
            ensure(label_sequence_check(n, color) == Ok(true), || {
                format!("order {n} color {color}: label steps do not conform")
            })?;
            checked += 1;
        }
    }
    let spent = within(start, STRUCTURE_LIMIT)?;
    Ok(format!("{checked} (order, color) pairs ({spent:.2?})"))
}

/// Single swaps of two differently colored cells. All of them when there
/// are at most `MUTATIONS_PER_ORDER`, otherwise a seeded sample.
fn swaps(coloring: &Coloring, rng: &mut ChaCha8Rng) -> Vec<(Cell, Cell)> {
    let all: Vec<(Cell, usize)> = coloring.iter().collect();
    let mut pairs = Vec::new();
    for (i, &(a, ca)) in all.iter().enumerate() {
        for &(b, cb) in &all[i + 1..] {
            if ca != cb {
                pairs.push((a, b));
            }
        }
    }
    if pairs.len() > MUTATIONS_PER_ORDER {
        pairs.shuffle(rng);
        pairs.truncate(MUTATIONS_PER_ORDER);
    }
    pairs
}

/// A swap between two singleton color classes only renames colors.
fn is_renaming(coloring: &Coloring, a: Cell, b: Cell) -> bool {
    let sizes = color_class_sizes(coloring);
    let ca = coloring.get(a).unwrap();
    let cb = coloring.get(b).unwrap();
    sizes[&ca] == 1 && sizes[&cb] == 1
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a71);
    let mut compared = 0;
    let mut flagged = 0;
    let mut renamings = 0;
    for n in 1..=8 {
        let graph = build_graph(n).unwrap();
        let base = color_board(n).unwrap();
        let mut agrees = |coloring: &Coloring| -> Result<bool, String> {
            let report = check_proper(&graph, coloring).unwrap();
            let naive = naive_conflicts(coloring);
            let ours: BTreeSet<_> = report.conflicts.iter().copied().collect();
            ensure(report.proper == naive.is_empty() && ours == naive, || {
                format!("order {n}: verifier and all-pairs check disagree")
            })?;
            compared += 1;
            Ok(report.proper)
        };
        ensure(agrees(&base)?, || format!("order {n}: closed form flagged"))?;
        for (a, b) in swaps(&base, &mut rng) {
            let mut mutant = base.clone();
            mutant.swap(a, b).unwrap();
            let proper = agrees(&mutant)?;
            if is_renaming(&base, a, b) {
                renamings += 1;
                continue;
            }
            let caught = !proper || structure_holds(&mutant) == Some(false);
            ensure(caught, || {
                format!("order {n}: swap {a} <-> {b} went unnoticed")
            })?;
            flagged += 1;
        }
    }
    let spent = within(start, MUTATION_LIMIT)?;
    Ok(format!(
        "{compared} colorings agree with the all-pairs check; {flagged} mutations flagged, \
         {renamings} color renamings (order 2) skipped ({spent:.2?})"
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let golden = [
        (2, include_str!("golden/dimacs_n2.col")),
        (5, include_str!("golden/dimacs_n5.col")),
    ];
    for (n, expected) in golden {
        let text = export_dimacs(&build_graph(n).unwrap());
        ensure(text == expected, || {
            format!("DIMACS for order {n} differs from golden file")
        })?;
    }
    for n in 1..=12 {
        let coloring = color_board(n).unwrap();
        let report = check_proper(&build_graph(n).unwrap(), &coloring).unwrap();
        for doc in [
            export_coloring_json(&coloring, None),
            export_coloring_json(&coloring, Some(&report)),
        ] {
            let back = import_coloring_json(&doc).map_err(|e| e.to_string())?;
            ensure(back == coloring, || {
                format!("order {n}: JSON round trip changed the coloring")
            })?;
        }
    }
    let spent = within(start, SERIALIZATION_LIMIT)?;
    Ok(format!(
        "golden DIMACS n=2,5; JSON round trip n=1..=12 ({spent:.2?})"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("constructive upper bound, odd n in 1..=31", criterion_1),
        ("constructive upper bound, even n in 2..=30", criterion_2),
        ("exact chromatic numbers for n = 2..=5", criterion_3),
        ("no 5-coloring of T_4", criterion_4),
        ("no 7-coloring of T_6 (extended)", criterion_5),
        ("equitable class sizes, even n in 4..=30", criterion_6),
        (
            "parity and label-step structure, even n in 4..=20",
            criterion_7,
        ),
        (
            "verifier agrees with all-pairs check; mutations flagged",
            criterion_8,
        ),
        ("DIMACS golden files and JSON round trip", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} [FAIL] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
