//! Exact chromatic numbers of Latin square graphs by backtracking search.
//!
//! The decision procedure colors vertices in saturation-degree order with
//! forward checking. Two symmetry reductions keep it small: the first row is
//! a clique, so it is pre-colored `0..n`, and colors beyond the ones already
//! in use are interchangeable, so only the smallest unused color is ever
//! tried.
//!
//! This module only uses the graph's adjacency. The closed-form colorings
//! enter solely as the starting upper bound of [`chromatic_number`].

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{color_board, colors_needed, Coloring};
use crate::latin::LatinSquareGraph;
use crate::verify::check_proper;

/// Largest color count the exact search handles; domains are `u128` masks.
pub const MAX_SEARCH_COLORS: usize = 128;

/// Node and wall-clock limits for one decision run. Both `None` means
/// unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn unbounded() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn time(max_time: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            max_time: Some(max_time),
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.max_nodes.is_none() && self.max_time.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

fn serialize_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, other: Self) {
        self.nodes_explored += other.nodes_explored;
        self.elapsed += other.elapsed;
    }
}

/// Verdict of [`exists_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Found(Coloring),
    NotFound,
    /// The budget ran out first.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub decision: Decision,
    pub stats: SearchStats,
}

/// Shared search control: budget, node counter and the stop flag.
struct Control {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    stop: AtomicBool,
    exhausted: AtomicBool,
}

impl Control {
    fn new(budget: SearchBudget, start: Instant) -> Self {
        Control {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| start + d),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts a node. Returns false once the search must stop.
    #[inline]
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|max| count > max);
        let over_time =
            count.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

const UNCOLORED: usize = usize::MAX;

#[inline]
fn prefix_mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

/// Partial coloring with forward-checked domains.
#[derive(Clone)]
struct Searcher<'a> {
    adjacency: &'a [Vec<usize>],
    k: usize,
    colors: Vec<usize>,
    /// `blocked[v * k + c]`: colored neighbors of `v` holding `c`.
    blocked: Vec<u16>,
    domain: Vec<u128>,
    /// Uncolored neighbors per vertex, for tie-breaking.
    free_degree: Vec<usize>,
    /// Colors `0..used` have been introduced.
    used: usize,
    uncolored: usize,
}

impl<'a> Searcher<'a> {
    fn new(adjacency: &'a [Vec<usize>], k: usize) -> Self {
        let v = adjacency.len();
        Searcher {
            adjacency,
            k,
            colors: vec![UNCOLORED; v],
            blocked: vec![0; v * k],
            domain: vec![prefix_mask(k); v],
            free_degree: adjacency.iter().map(Vec::len).collect(),
            used: 0,
            uncolored: v,
        }
    }

    #[inline]
    fn allowed(&self, v: usize) -> u128 {
        self.domain[v] & prefix_mask((self.used + 1).min(self.k))
    }

    /// Colors `v` with `c`. Returns false if some uncolored neighbor is left
    /// without a color; the assignment stays in place either way.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        debug_assert_eq!(self.colors[v], UNCOLORED);
        self.colors[v] = c;
        self.uncolored -= 1;
        if c == self.used {
            self.used += 1;
        }
        let mut alive = true;
        for &w in &self.adjacency[v] {
            self.free_degree[w] -= 1;
            let slot = &mut self.blocked[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.domain[w] &= !(1u128 << c);
                if self.colors[w] == UNCOLORED && self.domain[w] == 0 {
                    alive = false;
                }
            }
        }
        alive
    }

    fn unassign(&mut self, v: usize, c: usize, used_before: usize) {
        for &w in &self.adjacency[v] {
            self.free_degree[w] += 1;
            let slot = &mut self.blocked[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.domain[w] |= 1u128 << c;
            }
        }
        self.colors[v] = UNCOLORED;
        self.uncolored += 1;
        self.used = used_before;
    }

    /// Uncolored vertex with the fewest allowed colors, ties broken by most
    /// uncolored neighbors and then by index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, std::cmp::Reverse<usize>, usize)> = None;
        for v in 0..self.colors.len() {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            let key = (
                self.allowed(v).count_ones(),
                std::cmp::Reverse(self.free_degree[v]),
                v,
            );
            if best.is_none_or(|b| key < b) {
                best = Some(key);
                if key.0 == 0 {
                    break;
                }
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn search(&mut self, control: &Control) -> Step {
        if self.uncolored == 0 {
            return Step::Found;
        }
        let v = match self.pick() {
            Some(v) => v,
            None => return Step::Found,
        };
        let mut options = self.allowed(v);
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            if !control.tick() {
                return Step::Stopped;
            }
            let used_before = self.used;
            if self.assign(v, c) {
                match self.search(control) {
                    Step::Found => return Step::Found,
                    Step::Stopped => {
                        self.unassign(v, c, used_before);
                        return Step::Stopped;
                    }
                    Step::Exhausted => {}
                }
            }
            self.unassign(v, c, used_before);
        }
        Step::Exhausted
    }

    /// Children of this state one decision deeper, skipping dead ones.
    /// `Err` carries a completed state.
    fn expand(&self) -> Result<Vec<Searcher<'a>>, Box<Searcher<'a>>> {
        if self.uncolored == 0 {
            return Err(Box::new(self.clone()));
        }
        let Some(v) = self.pick() else {
            return Err(Box::new(self.clone()));
        };
        let mut children = Vec::new();
        let mut options = self.allowed(v);
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            let mut child = self.clone();
            if child.assign(v, c) {
                if child.uncolored == 0 {
                    return Err(Box::new(child));
                }
                children.push(child);
            }
        }
        Ok(children)
    }

    fn into_coloring(self, order: usize) -> Coloring {
        Coloring::new(order, self.k, self.colors)
            .expect("complete search state is a valid coloring")
    }
}

/// Greedy saturation-degree coloring without backtracking. Used only when the
/// color count exceeds the exact search's range.
fn greedy_coloring(graph: &LatinSquareGraph) -> Vec<usize> {
    let adjacency = graph.adjacency();
    let v = adjacency.len();
    let mut colors = vec![UNCOLORED; v];
    for _ in 0..v {
        let next = (0..v)
            .filter(|&u| colors[u] == UNCOLORED)
            .max_by_key(|&u| {
                let mut seen: Vec<usize> = adjacency[u]
                    .iter()
                    .map(|&w| colors[w])
                    .filter(|&c| c != UNCOLORED)
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                (seen.len(), adjacency[u].len(), std::cmp::Reverse(u))
            })
            .expect("an uncolored vertex remains");
        let mut c = 0;
        while adjacency[next].iter().any(|&w| colors[w] == c) {
            c += 1;
        }
        colors[next] = c;
    }
    colors
}

/// Trivial lower bound: a row of `T_n` is a clique of size `n`. This is not
/// the clique number in general.
pub fn clique_lower_bound(graph: &LatinSquareGraph) -> usize {
    graph.order()
}

/// Decides whether `graph` has a proper `k`-coloring.
pub fn exists_coloring(graph: &LatinSquareGraph, k: usize, budget: SearchBudget) -> SearchOutcome {
    run_decision(graph, k, budget, 1)
}

/// [`exists_coloring`] with disjoint subtrees spread over `threads` workers.
/// The verdict matches the single-threaded one; the witness and node counts
/// may differ.
pub fn exists_coloring_parallel(
    graph: &LatinSquareGraph,
    k: usize,
    budget: SearchBudget,
    threads: usize,
) -> SearchOutcome {
    run_decision(graph, k, budget, threads.max(1))
}

fn run_decision(
    graph: &LatinSquareGraph,
    k: usize,
    budget: SearchBudget,
    threads: usize,
) -> SearchOutcome {
    let start = Instant::now();
    let n = graph.order();
    let finish = |decision, nodes| SearchOutcome {
        decision,
        stats: SearchStats {
            nodes_explored: nodes,
            elapsed: start.elapsed(),
        },
    };

    if k < clique_lower_bound(graph) {
        return finish(Decision::NotFound, 0);
    }
    if k > MAX_SEARCH_COLORS {
        let colors = greedy_coloring(graph);
        let used = colors.iter().max().map_or(0, |&c| c + 1);
        let decision = if used <= k {
            Decision::Found(Coloring::new(n, k, colors).expect("greedy coloring is total"))
        } else {
            Decision::Inconclusive
        };
        return finish(decision, 0);
    }

    let mut root = Searcher::new(graph.adjacency(), k);
    for col in 1..=n {
        // the first row is a clique: any proper coloring can be renamed so
        // that it reads 0, 1, ..., n-1
        if !root.assign(col - 1, col - 1) {
            return finish(Decision::NotFound, 0);
        }
    }

    let control = Control::new(budget, start);
    let decision = if threads == 1 {
        match root.search(&control) {
            Step::Found => Decision::Found(root.into_coloring(n)),
            Step::Exhausted => Decision::NotFound,
            Step::Stopped => Decision::Inconclusive,
        }
    } else {
        parallel_search(root, n, threads, &control)
    };
    finish(decision, control.nodes.load(Ordering::Relaxed))
}

fn parallel_search(root: Searcher<'_>, n: usize, threads: usize, control: &Control) -> Decision {
    let target = threads * 16;
    let mut frontier = vec![root];
    // breadth-first split until there is enough work to share
    while frontier.len() < target {
        let mut next = Vec::new();
        for state in &frontier {
            if !control.tick() {
                return Decision::Inconclusive;
            }
            match state.expand() {
                Ok(children) => next.extend(children),
                Err(done) => return Decision::Found(done.into_coloring(n)),
            }
        }
        if next.is_empty() {
            return Decision::NotFound;
        }
        let stalled = next.len() <= frontier.len();
        frontier = next;
        if stalled && frontier.len() >= threads {
            break;
        }
    }

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(_) => {
            // fall back to working through the subtrees in order
            for mut state in frontier {
                match state.search(control) {
                    Step::Found => return Decision::Found(state.into_coloring(n)),
                    Step::Stopped => return Decision::Inconclusive,
                    Step::Exhausted => {}
                }
            }
            return Decision::NotFound;
        }
    };
    let found = pool.install(|| {
        frontier
            .into_par_iter()
            .find_map_any(|mut state| match state.search(control) {
                Step::Found => {
                    control.stop.store(true, Ordering::Relaxed);
                    Some(state.into_coloring(n))
                }
                _ => None,
            })
    });
    match found {
        Some(witness) => Decision::Found(witness),
        None if control.exhausted.load(Ordering::Relaxed) => Decision::Inconclusive,
        None => Decision::NotFound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiStatus {
    Exact,
    /// The budget ran out, but the bounds moved past the starting ones.
    LowerAndUpperBounds,
    /// The budget ran out with only the starting bounds known.
    Timeout,
}

/// Result of [`chromatic_number`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiResult {
    pub status: ChiStatus,
    pub chi: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    #[serde(skip)]
    pub witness: Option<Coloring>,
    pub stats: SearchStats,
}

/// Options for [`chromatic_number_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiOptions {
    /// Budget for each decision run.
    pub budget: SearchBudget,
    pub threads: usize,
}

impl Default for ChiOptions {
    fn default() -> Self {
        ChiOptions {
            budget: SearchBudget::unbounded(),
            threads: 1,
        }
    }
}

/// Computes `chi(T_n)`. The closed-form coloring is the starting witness,
/// and colorings with one fewer color are searched for until one is ruled
/// out. The budget applies to each decision run separately.
pub fn chromatic_number(graph: &LatinSquareGraph, budget: SearchBudget) -> ChiResult {
    chromatic_number_with(graph, ChiOptions { budget, threads: 1 })
}

pub fn chromatic_number_with(graph: &LatinSquareGraph, options: ChiOptions) -> ChiResult {
    let n = graph.order();
    let start_lower = clique_lower_bound(graph);
    let start_upper = colors_needed(n);
    let mut lower = start_lower;
    let mut upper = start_upper;
    let mut witness = color_board(n)
        .ok()
        .filter(|c| check_proper(graph, c).map(|r| r.proper).unwrap_or(false));
    if witness.is_none() {
        // without a usable starting witness, every color count must be searched
        upper = graph.vertex_count().max(1);
    }
    let mut stats = SearchStats::default();
    let mut unresolved = false;

    let mut k = if witness.is_some() { upper - 1 } else { upper };
    while k >= lower && k >= 1 {
        let outcome = run_decision(graph, k, options.budget, options.threads.max(1));
        stats += outcome.stats;
        match outcome.decision {
            Decision::Found(w) => {
                upper = k;
                witness = Some(w);
            }
            Decision::NotFound => {
                lower = k + 1;
                break;
            }
            Decision::Inconclusive => unresolved = true,
        }
        k -= 1;
    }
    if witness.is_some() && lower > upper {
        lower = upper;
    }

    let status = if lower == upper && witness.is_some() {
        ChiStatus::Exact
    } else if unresolved && (lower > start_lower || upper < start_upper) {
        ChiStatus::LowerAndUpperBounds
    } else {
        ChiStatus::Timeout
    };
    ChiResult {
        status,
        chi: (status == ChiStatus::Exact).then_some(upper),
        lower_bound: lower,
        upper_bound: upper,
        witness,
        stats,
    }
}

/// `n` for odd orders and `n + 2` for even ones.
pub fn theorem_value(n: usize) -> usize {
    colors_needed(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Match,
    Mismatch,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub order: usize,
    pub expected: usize,
    pub agreement: Agreement,
    pub result: ChiResult,
}

/// Compares the searched chromatic number with the closed-form value.
pub fn verify_theorem(n: usize, budget: SearchBudget) -> crate::error::Result<TheoremCheck> {
    verify_theorem_with(n, ChiOptions { budget, threads: 1 })
}

pub fn verify_theorem_with(n: usize, options: ChiOptions) -> crate::error::Result<TheoremCheck> {
    let graph = LatinSquareGraph::new(n)?;
    let result = chromatic_number_with(&graph, options);
    let expected = theorem_value(n);
    let agreement = match result.chi {
        Some(chi) if chi == expected => Agreement::Match,
        Some(_) => Agreement::Mismatch,
        None if expected < result.lower_bound || expected > result.upper_bound => {
            Agreement::Mismatch
        }
        None => Agreement::Inconclusive,
    };
    Ok(TheoremCheck {
        order: n,
        expected,
        agreement,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::build_graph;

    fn is_proper(graph: &LatinSquareGraph, c: &Coloring) -> bool {
        check_proper(graph, c).unwrap().proper
    }

    #[test]
    fn clique_bound_is_order() {
        for n in [1, 5, 6] {
            assert_eq!(clique_lower_bound(&build_graph(n).unwrap()), n);
        }
    }

    #[test]
    fn small_decisions() {
        let g = build_graph(3).unwrap();
        assert_eq!(
            exists_coloring(&g, 2, SearchBudget::unbounded()).decision,
            Decision::NotFound
        );

        let g = build_graph(4).unwrap();
        match exists_coloring(&g, 6, SearchBudget::unbounded()).decision {
            Decision::Found(w) => {
                assert_eq!(w.num_colors(), 6);
                assert!(is_proper(&g, &w));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn tiny_node_budget_is_inconclusive() {
        let g = build_graph(4).unwrap();
        let out = exists_coloring(&g, 5, SearchBudget::nodes(3));
        assert_eq!(out.decision, Decision::Inconclusive);
        assert!(out.stats.nodes_explored <= 4);
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in 2..=5 {
            let g = build_graph(n).unwrap();
            for k in n..=n + 2 {
                let seq = exists_coloring(&g, k, SearchBudget::unbounded());
                let par = exists_coloring_parallel(&g, k, SearchBudget::unbounded(), 4);
                assert_eq!(
                    matches!(seq.decision, Decision::Found(_)),
                    matches!(par.decision, Decision::Found(_)),
                    "n = {n}, k = {k}"
                );
                if let Decision::Found(w) = par.decision {
                    assert!(is_proper(&g, &w));
                }
            }
        }
    }

    #[test]
    fn greedy_path_for_many_colors() {
        let g = build_graph(3).unwrap();
        match exists_coloring(&g, 200, SearchBudget::unbounded()).decision {
            Decision::Found(w) => assert!(is_proper(&g, &w)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn chromatic_numbers_of_small_orders() {
        for (n, chi) in [(1, 1), (2, 4), (3, 3), (4, 6)] {
            let r = chromatic_number(&build_graph(n).unwrap(), SearchBudget::unbounded());
            assert_eq!(r.status, ChiStatus::Exact);
            assert_eq!(r.chi, Some(chi), "n = {n}");
            assert_eq!((r.lower_bound, r.upper_bound), (chi, chi));
        }
    }

    #[test]
    fn theorem_agreement() {
        for n in [2, 3, 4] {
            let check = verify_theorem(n, SearchBudget::unbounded()).unwrap();
            assert_eq!(check.agreement, Agreement::Match);
        }
    }
}
