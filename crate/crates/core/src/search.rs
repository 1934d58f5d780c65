//! Depth-first search over leftmost-canonical wiring diagrams for
//! arrangements with many triangles.
//!
//! Structural rules (non-adjacent crosses, no re-crossing, leftmost
//! placement) are enforced by [`enumerate_children`]. On top of that each
//! child is rejected once its provably unused segments exceed the allowed
//! budget. The budget is the tighter of the configured one and what is
//! still compatible with beating the best diagram found so far. Faces that
//! share a side with a closed triangle are dead at once, so a child that
//! would spend an exhausted budget is never generated.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds;
use crate::diagram::{Column, WiringDiagram};
use crate::faces::{count_triangles, Sweep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Stop as soon as a diagram with at least this many triangles is found.
    pub target: Option<usize>,
    /// Maximum number of unused bounded segments in an acceptable diagram.
    pub budget: Option<usize>,
    /// Keep searching past the target for the true maximum.
    pub exhaustive: bool,
    pub max_columns: Option<usize>,
    pub parallel_width: usize,
    /// Disables the budget rules; only the structural rules remain.
    pub prune: bool,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            target: None,
            budget: None,
            exhaustive: false,
            max_columns: None,
            parallel_width: 1,
            prune: true,
        }
    }

    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }

    pub fn with_threads(mut self, width: usize) -> Self {
        self.parallel_width = width;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn bounded_segments(&self) -> usize {
        self.n * self.n.saturating_sub(2)
    }

    /// The configured budget, or the one implied by the target.
    pub fn effective_budget(&self) -> Option<usize> {
        self.budget.or_else(|| {
            self.target
                .map(|t| self.bounded_segments().saturating_sub(3 * t))
        })
    }

    pub fn effective_max_columns(&self) -> usize {
        self.max_columns
            .unwrap_or(self.n * self.n.saturating_sub(1) / 2)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 {
            return Err(SearchError::InvalidConfig("n must be at least 1".into()));
        }
        if self.parallel_width == 0 {
            return Err(SearchError::InvalidConfig(
                "parallel width must be at least 1".into(),
            ));
        }
        if let Some(t) = self.target {
            let cap = self.bounded_segments() / 3;
            if t > cap {
                return Err(SearchError::InvalidConfig(format!(
                    "target {t} exceeds floor(n(n-2)/3) = {cap}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub best_count: usize,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<WiringDiagram>,
    pub nodes_visited: u64,
    /// True iff no better diagram exists under the configuration.
    pub complete: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn serialize_witness<S: serde::Serializer>(
    w: &Option<WiringDiagram>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match w {
        Some(d) => s.serialize_some(&d.columns()),
        None => s.serialize_none(),
    }
}

impl SearchResult {
    pub fn target_met(&self, target: Option<usize>) -> bool {
        match target {
            Some(t) => self.witness.is_some() && self.best_count >= t,
            None => true,
        }
    }
}

fn eligible_rows(sweep: &Sweep, last: Option<&Column>) -> Vec<usize> {
    let state = sweep.state();
    let n = state.order().len();
    (1..n)
        .filter(|&r| state.can_cross(r) && last.is_none_or(|c| c.blocks(r)))
        .collect()
}

fn push_subsets(rows: &[usize], start: usize, current: &mut Vec<usize>, out: &mut Vec<Column>) {
    for i in start..rows.len() {
        if current.last().is_some_and(|&l| rows[i] == l + 1) {
            continue;
        }
        current.push(rows[i]);
        out.push(Column::from_sorted_unchecked(current.clone()));
        push_subsets(rows, i + 1, current, out);
        current.pop();
    }
}

fn children_of(sweep: &Sweep, last: Option<&Column>) -> Vec<Column> {
    let rows = eligible_rows(sweep, last);
    let mut out = Vec::new();
    push_subsets(&rows, 0, &mut Vec::new(), &mut out);
    out
}

/// Every column that extends `d` to a valid, leftmost-canonical diagram,
/// in lexicographic order of row sets.
pub fn enumerate_children(d: &WiringDiagram) -> Vec<Column> {
    if d.is_complete() {
        return Vec::new();
    }
    children_of(&Sweep::run(d), d.columns().last())
}

/// All leftmost-canonical complete diagrams on `n` wires, in search order.
/// Grows very fast with `n`; intended for small cases.
pub fn canonical_complete_diagrams(n: usize) -> Vec<WiringDiagram> {
    fn walk(sweep: &Sweep, path: &mut Vec<Column>, n: usize, out: &mut Vec<WiringDiagram>) {
        if sweep.is_complete() {
            out.push(WiringDiagram::from_columns(n, path.clone()).expect("valid path"));
            return;
        }
        for c in children_of(sweep, path.last()) {
            let mut next = sweep.clone();
            next.apply(&c);
            path.push(c);
            walk(&next, path, n, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        walk(&Sweep::new(n), &mut Vec::new(), n, &mut out);
    }
    out
}

pub fn verify_witness(d: &WiringDiagram, claimed: usize) -> bool {
    d.is_complete() && count_triangles(d).triangle_count == claimed
}

/// Shared between parallel subtrees: only the early-exit signal.
struct Shared {
    best: AtomicUsize,
    stop: AtomicBool,
}

struct Searcher<'a> {
    target: Option<usize>,
    exhaustive: bool,
    budget: Option<usize>,
    prune: bool,
    max_columns: usize,
    bounded: usize,
    best: Option<usize>,
    witness: Option<Vec<Column>>,
    nodes: u64,
    stopped: bool,
    path: Vec<Column>,
    shared: Option<&'a Shared>,
}

impl<'a> Searcher<'a> {
    fn new(cfg: &SearchConfig, shared: Option<&'a Shared>) -> Self {
        Searcher {
            target: cfg.target,
            exhaustive: cfg.exhaustive,
            budget: cfg.effective_budget(),
            prune: cfg.prune,
            max_columns: cfg.effective_max_columns(),
            bounded: cfg.bounded_segments(),
            best: None,
            witness: None,
            nodes: 0,
            stopped: false,
            path: Vec::new(),
            shared,
        }
    }

    /// Largest number of unused segments a diagram may have and still be
    /// worth reaching. `None` means nothing better can exist.
    fn allowed_unused(&self) -> Option<usize> {
        let improving = match self.best {
            Some(b) => self.bounded.checked_sub(3 * (b + 1))?,
            None => self.bounded,
        };
        Some(match self.budget {
            Some(b) => b.min(improving),
            None => improving,
        })
    }

    fn target_reached(&self) -> bool {
        matches!((self.target, self.best), (Some(t), Some(b)) if b >= t)
    }

    fn should_stop(&self) -> bool {
        self.stopped || self.shared.is_some_and(|s| s.stop.load(Ordering::Relaxed))
    }

    fn record(&mut self, count: usize) {
        if self.best.is_none_or(|b| count > b) {
            self.best = Some(count);
            self.witness = Some(self.path.clone());
            if let Some(s) = self.shared {
                s.best.fetch_max(count, Ordering::Relaxed);
            }
            if self.target_reached() && !self.exhaustive {
                self.stopped = true;
                if let Some(s) = self.shared {
                    s.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    fn admissible(&self, next: &Sweep) -> bool {
        if !self.prune {
            return true;
        }
        match self.allowed_unused() {
            Some(limit) => next.provably_unused() <= limit,
            None => false,
        }
    }

    fn visit(&mut self, sweep: &Sweep) {
        self.nodes += 1;
        if sweep.is_complete() {
            let admissible =
                !self.prune || self.budget.is_none_or(|b| sweep.provably_unused() <= b);
            if admissible {
                self.record(sweep.closed_triangles());
            }
            return;
        }
        if self.path.len() >= self.max_columns {
            return;
        }
        for c in children_of(sweep, self.path.last()) {
            if self.should_stop() {
                return;
            }
            let mut next = sweep.clone();
            next.apply(&c);
            if !self.admissible(&next) {
                continue;
            }
            self.path.push(c);
            self.visit(&next);
            self.path.pop();
        }
    }
}

fn trivial_result(n: usize, start: Instant) -> SearchResult {
    let witness = if n == 1 {
        WiringDiagram::new(1)
    } else {
        WiringDiagram::from_rows(2, &[&[1]])
    }
    .expect("valid");
    SearchResult {
        best_count: 0,
        witness: Some(witness),
        nodes_visited: 1,
        complete: true,
        elapsed: start.elapsed(),
    }
}

pub fn depth_first_search(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let start = Instant::now();
    if cfg.n <= 2 {
        return Ok(trivial_result(cfg.n, start));
    }
    let (best, witness, nodes, stopped) = if cfg.parallel_width <= 1 {
        let mut s = Searcher::new(cfg, None);
        s.visit(&Sweep::new(cfg.n));
        (s.best, s.witness, s.nodes, s.stopped)
    } else {
        parallel_search(cfg)?
    };
    let cap = bounds::affine_pseudoline_cap(cfg.n);
    let witness = witness.map(|cols| {
        WiringDiagram::from_columns(cfg.n, cols).expect("search only builds valid diagrams")
    });
    let best_count = best.unwrap_or(0);
    Ok(SearchResult {
        best_count,
        complete: !stopped || best_count >= cap,
        witness,
        nodes_visited: nodes,
        elapsed: start.elapsed(),
    })
}

type Outcome = (Option<usize>, Option<Vec<Column>>, u64, bool);

fn parallel_search(cfg: &SearchConfig) -> Result<Outcome, SearchError> {
    // Split the tree into enough independent subtrees to keep every worker busy.
    let wanted = 8 * cfg.parallel_width;
    let probe = Searcher::new(cfg, None);
    let mut frontier: Vec<(Sweep, Vec<Column>)> = vec![(Sweep::new(cfg.n), Vec::new())];
    let mut nodes = 0u64;
    let mut leaves: Vec<(usize, Vec<Column>)> = Vec::new();
    while frontier.len() < wanted {
        let mut next_frontier = Vec::new();
        let mut grew = false;
        for (sweep, path) in frontier {
            if sweep.is_complete() || path.len() >= probe.max_columns {
                next_frontier.push((sweep, path));
                continue;
            }
            nodes += 1;
            grew = true;
            for c in children_of(&sweep, path.last()) {
                let mut next = sweep.clone();
                next.apply(&c);
                if !probe.admissible(&next) {
                    continue;
                }
                let mut p = path.clone();
                p.push(c);
                next_frontier.push((next, p));
            }
        }
        frontier = next_frontier;
        if !grew {
            break;
        }
    }
    frontier.retain(|(sweep, path)| {
        if sweep.is_complete() {
            let ok = !cfg.prune || probe.budget.is_none_or(|b| sweep.provably_unused() <= b);
            if ok {
                leaves.push((sweep.closed_triangles(), path.clone()));
            }
            nodes += 1;
            false
        } else {
            true
        }
    });

    let shared = Shared {
        best: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel_width)
        .build()
        .map_err(|e| SearchError::InvalidConfig(e.to_string()))?;
    let outcomes: Vec<Outcome> = pool.install(|| {
        frontier
            .par_iter()
            .map(|(sweep, path)| {
                let mut s = Searcher::new(cfg, Some(&shared));
                s.path = path.clone();
                s.visit(sweep);
                (s.best, s.witness, s.nodes, s.stopped)
            })
            .collect()
    });

    let mut best: Option<usize> = None;
    let mut witness: Option<Vec<Column>> = None;
    let mut stopped = shared.stop.load(Ordering::Relaxed);
    let candidates = leaves
        .into_iter()
        .map(|(c, p)| (Some(c), Some(p), 0, false))
        .chain(outcomes);
    for (b, w, k, st) in candidates {
        nodes += k;
        stopped |= st;
        if let (Some(b), Some(w)) = (b, w) {
            let better = match (best, &witness) {
                (None, _) => true,
                (Some(cur), Some(cw)) => b > cur || (b == cur && w < *cw),
                (Some(_), None) => true,
            };
            if better {
                best = Some(b);
                witness = Some(w);
            }
        }
    }
    if let (Some(t), Some(b)) = (cfg.target, best) {
        if b >= t && !cfg.exhaustive {
            stopped = true;
        }
    }
    Ok((best, witness, nodes, stopped))
}
