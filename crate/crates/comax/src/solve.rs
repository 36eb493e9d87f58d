//! Exact solvers for the NP-hard invariants: clique number, chromatic
//! number, domination number, independence number.
//!
//! Every search is budgeted by an explicit node count, never by wall-clock
//! time, so results are reproducible across machines. When a budget runs
//! out the solver reports `Undecided` rather than guessing.

use crate::graph::AdjMatrix;
use thiserror::Error;

/// Default node budget, ample for every catalog graph in the test fields.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// A hint coloring that is not actually a proper coloring is an error,
/// reported with a witness rather than silently ignored.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HintError {
    #[error("hint coloring has {got} entries for {want} vertices")]
    WrongLength { want: usize, got: usize },
    #[error("hint coloring gives adjacent vertices {0} and {1} the same color")]
    ImproperEdge(usize, usize),
}

/// An exact answer, or an admission that the budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solved<T> {
    Exact(T),
    Undecided,
}

impl<T> Solved<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            Solved::Exact(t) => Some(t),
            Solved::Undecided => None,
        }
    }

    pub fn as_ref(&self) -> Solved<&T> {
        match self {
            Solved::Exact(t) => Solved::Exact(t),
            Solved::Undecided => Solved::Undecided,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Solved<U> {
        match self {
            Solved::Exact(t) => Solved::Exact(f(t)),
            Solved::Undecided => Solved::Undecided,
        }
    }
}

struct Exhausted;

struct Counter {
    used: u64,
    budget: u64,
}

impl Counter {
    fn new(budget: u64) -> Counter {
        Counter { used: 0, budget }
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }
}

/// Small fixed-width bitset over the vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn empty(words: usize) -> Bits {
        Bits {
            words: vec![0; words],
        }
    }

    fn all(n: usize, words: usize) -> Bits {
        let mut b = Bits::empty(words);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and_row(&self, row: &[u64]) -> Bits {
        Bits {
            words: self.words.iter().zip(row).map(|(a, b)| a & b).collect(),
        }
    }

    fn remove_row(&mut self, row: &[u64]) {
        for (w, r) in self.words.iter_mut().zip(row) {
            *w &= !r;
        }
    }

    fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

// ---------------------------------------------------------------------
// Certificate checkers. Cheap, and applied to every witness the solvers
// return, so a wrong search can never report a bad certificate silently.
// ---------------------------------------------------------------------

pub fn verify_clique(adj: &AdjMatrix, vs: &[usize]) -> bool {
    vs.iter().all(|&v| v < adj.n())
        && vs
            .iter()
            .enumerate()
            .all(|(a, &i)| vs.iter().skip(a + 1).all(|&j| i != j && adj.get(i, j)))
}

pub fn verify_independent(adj: &AdjMatrix, vs: &[usize]) -> bool {
    vs.iter().all(|&v| v < adj.n())
        && vs
            .iter()
            .enumerate()
            .all(|(a, &i)| vs.iter().skip(a + 1).all(|&j| i != j && !adj.get(i, j)))
}

pub fn verify_coloring(adj: &AdjMatrix, colors: &[usize], k: usize) -> bool {
    colors.len() == adj.n()
        && colors.iter().all(|&c| c < k)
        && (0..adj.n()).all(|i| adj.neighbors(i).all(|j| colors[i] != colors[j]))
}

pub fn verify_dominating(adj: &AdjMatrix, vs: &[usize]) -> bool {
    if !vs.iter().all(|&v| v < adj.n()) {
        return false;
    }
    (0..adj.n()).all(|u| vs.iter().any(|&d| d == u || adj.get(u, d)))
}

// ---------------------------------------------------------------------
// Maximum clique: branch and bound with greedy-coloring upper bounds.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// Greedy color classes over the candidate set; returns (vertex, color)
/// pairs with colors ascending, colors starting at 1. A clique inside the
/// set can use at most `max color` vertices.
fn color_sort(adj: &AdjMatrix, cands: &Bits) -> Vec<(usize, usize)> {
    let mut uncolored = cands.clone();
    let mut out = Vec::new();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = class.first() {
            out.push((v, color));
            uncolored.clear(v);
            class.clear(v);
            class.remove_row(adj.row(v));
        }
    }
    out
}

fn greedy_clique(adj: &AdjMatrix) -> Vec<usize> {
    let words = adj.words_per_row();
    let mut cands = Bits::all(adj.n(), words);
    let mut out = Vec::new();
    while !cands.is_empty() {
        // Highest remaining degree within the candidate set, lowest index
        // on ties: deterministic.
        let v = cands
            .ones()
            .max_by_key(|&v| (cands.and_row(adj.row(v)).count(), usize::MAX - v))
            .unwrap();
        out.push(v);
        cands.clear(v);
        cands = cands.and_row(adj.row(v));
    }
    out.sort_unstable();
    out
}

fn clique_expand(
    adj: &AdjMatrix,
    current: &mut Vec<usize>,
    mut cands: Bits,
    best: &mut Vec<usize>,
    counter: &mut Counter,
) -> Result<(), Exhausted> {
    counter.tick()?;
    let colored = color_sort(adj, &cands);
    for &(v, color) in colored.iter().rev() {
        if current.len() + color <= best.len() {
            return Ok(());
        }
        current.push(v);
        let next = cands.and_row(adj.row(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            clique_expand(adj, current, next, best, counter)?;
        }
        current.pop();
        cands.clear(v);
    }
    Ok(())
}

pub fn max_clique(adj: &AdjMatrix, budget: u64) -> Solved<CliqueResult> {
    let mut best = greedy_clique(adj);
    let mut counter = Counter::new(budget);
    let cands = Bits::all(adj.n(), adj.words_per_row());
    let outcome = clique_expand(adj, &mut Vec::new(), cands, &mut best, &mut counter);
    if outcome.is_err() {
        return Solved::Undecided;
    }
    best.sort_unstable();
    assert!(
        verify_clique(adj, &best),
        "clique witness failed verification"
    );
    Solved::Exact(CliqueResult {
        size: best.len(),
        witness: best,
    })
}

/// Maximum independent set, via cliques of the complement.
pub fn max_independent_set(adj: &AdjMatrix, budget: u64) -> Solved<CliqueResult> {
    max_clique(&adj.complement(), budget).map(|r| {
        assert!(
            verify_independent(adj, &r.witness),
            "independent-set witness failed verification"
        );
        r
    })
}

// ---------------------------------------------------------------------
// Chromatic number: clique lower bound, DSATUR upper bound, then
// k-coloring backtracking to close the gap.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    pub coloring: Vec<usize>,
}

/// DSATUR greedy coloring: always color the vertex with the most distinct
/// neighbor colors (ties: higher degree, then lower index).
fn dsatur(adj: &AdjMatrix) -> Vec<usize> {
    let n = adj.n();
    let mut colors = vec![usize::MAX; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let sat = neighbor_colors[v].iter().filter(|&&b| b).count();
                (sat, adj.degree(v), usize::MAX - v)
            })
            .unwrap();
        let c = (0..).find(|&c| !neighbor_colors[v][c]).unwrap();
        colors[v] = c;
        for u in adj.neighbors(v) {
            neighbor_colors[u][c] = true;
        }
    }
    colors
}

/// Number of colors a coloring uses, assuming colors are `0..k`.
pub fn color_count(colors: &[usize]) -> usize {
    colors.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Backtracking k-colorability along a fixed vertex order, with the usual
/// symmetry break: a vertex may only open one fresh color.
fn k_colorable(
    adj: &AdjMatrix,
    order: &[usize],
    k: usize,
    colors: &mut Vec<usize>,
    pos: usize,
    used: usize,
    counter: &mut Counter,
) -> Result<bool, Exhausted> {
    if pos == order.len() {
        return Ok(true);
    }
    counter.tick()?;
    let v = order[pos];
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if adj.neighbors(v).any(|u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        let used_next = used.max(c + 1);
        if k_colorable(adj, order, k, colors, pos + 1, used_next, counter)? {
            return Ok(true);
        }
        colors[v] = usize::MAX;
    }
    Ok(false)
}

/// Exact chromatic number. `hint` may carry a known proper coloring (for
/// instance one read off from algebra structure); a valid hint tightens
/// the upper bound before any search, an invalid one is rejected with a
/// witness to the violation.
pub fn chromatic_number(
    adj: &AdjMatrix,
    budget: u64,
    hint: Option<&[usize]>,
) -> Result<Solved<ChromaticResult>, HintError> {
    let n = adj.n();
    if let Some(h) = hint {
        if h.len() != n {
            return Err(HintError::WrongLength {
                want: n,
                got: h.len(),
            });
        }
        for (u, v) in adj.edges() {
            if h[u] == h[v] {
                return Err(HintError::ImproperEdge(u, v));
            }
        }
    }
    if n == 0 {
        return Ok(Solved::Exact(ChromaticResult {
            chi: 0,
            coloring: vec![],
        }));
    }
    let mut counter = Counter::new(budget);

    // Lower bound: a clique, exact if the budget allows, greedy otherwise.
    let mut lb_witness = greedy_clique(adj);
    let mut best_clique = lb_witness.clone();
    let cands = Bits::all(n, adj.words_per_row());
    if clique_expand(adj, &mut Vec::new(), cands, &mut best_clique, &mut counter).is_ok() {
        lb_witness = best_clique;
    }
    let lb = lb_witness.len().max(1);

    // Upper bound: DSATUR, possibly improved by the (already validated) hint.
    let mut coloring = dsatur(adj);
    debug_assert!(verify_coloring(adj, &coloring, color_count(&coloring)));
    if let Some(h) = hint {
        if color_count(h) < color_count(&coloring) {
            coloring = h.to_vec();
        }
    }
    let mut ub = color_count(&coloring);

    if lb == ub {
        return Ok(Solved::Exact(ChromaticResult { chi: ub, coloring }));
    }

    // Decreasing-degree order works well with the symmetry break.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - adj.degree(v), v));
    for k in lb..ub {
        let mut attempt = vec![usize::MAX; n];
        match k_colorable(adj, &order, k, &mut attempt, 0, 0, &mut counter) {
            Err(Exhausted) => return Ok(Solved::Undecided),
            Ok(true) => {
                coloring = attempt;
                ub = k;
                break;
            }
            Ok(false) => {}
        }
    }
    assert!(
        verify_coloring(adj, &coloring, ub),
        "coloring witness failed verification"
    );
    Ok(Solved::Exact(ChromaticResult { chi: ub, coloring }))
}

// ---------------------------------------------------------------------
// Minimum dominating set: iterative deepening on the solution size.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationResult {
    pub gamma: usize,
    pub witness: Vec<usize>,
}

fn greedy_dominating(adj: &AdjMatrix) -> Vec<usize> {
    let n = adj.n();
    let words = adj.words_per_row();
    let mut undominated = Bits::all(n, words);
    let mut out = Vec::new();
    while !undominated.is_empty() {
        let v = (0..n)
            .max_by_key(|&v| {
                let mut covered = undominated.and_row(adj.row(v)).count();
                if undominated.get(v) {
                    covered += 1;
                }
                (covered, usize::MAX - v)
            })
            .unwrap();
        out.push(v);
        undominated.clear(v);
        undominated.remove_row(adj.row(v));
    }
    out.sort_unstable();
    out
}

fn dominating_search(
    adj: &AdjMatrix,
    undominated: &Bits,
    chosen: &mut Vec<usize>,
    k: usize,
    counter: &mut Counter,
) -> Result<bool, Exhausted> {
    if undominated.is_empty() {
        return Ok(true);
    }
    if chosen.len() == k {
        return Ok(false);
    }
    counter.tick()?;
    // Branch on the undominated vertex with the fewest candidates able to
    // cover it; one of them must be picked.
    let v = undominated.ones().min_by_key(|&v| adj.degree(v)).unwrap();
    let mut options: Vec<usize> = vec![v];
    options.extend(adj.neighbors(v));
    for u in options {
        chosen.push(u);
        let mut next = undominated.clone();
        next.clear(u);
        next.remove_row(adj.row(u));
        if dominating_search(adj, &next, chosen, k, counter)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

pub fn min_dominating_set(adj: &AdjMatrix, budget: u64) -> Solved<DominationResult> {
    let n = adj.n();
    if n == 0 {
        return Solved::Exact(DominationResult {
            gamma: 0,
            witness: vec![],
        });
    }
    let mut counter = Counter::new(budget);
    let greedy = greedy_dominating(adj);
    let max_degree = (0..n).map(|i| adj.degree(i)).max().unwrap();
    let lb = n.div_ceil(max_degree + 1);
    for k in lb..greedy.len() {
        let undominated = Bits::all(n, adj.words_per_row());
        let mut chosen = Vec::new();
        match dominating_search(adj, &undominated, &mut chosen, k, &mut counter) {
            Err(Exhausted) => return Solved::Undecided,
            Ok(true) => {
                chosen.sort_unstable();
                assert!(
                    verify_dominating(adj, &chosen),
                    "dominating witness failed verification"
                );
                return Solved::Exact(DominationResult {
                    gamma: k,
                    witness: chosen,
                });
            }
            Ok(false) => {}
        }
    }
    assert!(verify_dominating(adj, &greedy));
    Solved::Exact(DominationResult {
        gamma: greedy.len(),
        witness: greedy,
    })
}
