//! Pure-pair search and verification.
//!
//! Exact search maximizes `min(|Z1|, |Z2|)` over anticomplete pairs, and the
//! tie-breaking contract is lexicographic-least `(Z1, Z2)` so every driver
//! downstream is reproducible. The key structural fact: for a fixed `Z1`,
//! the best partner is the whole set of vertices outside `Z1` with no
//! neighbour in `Z1`, so the search walks subsets `Z1` only, in sorted-list
//! lexicographic order, with a min-of-two-sides bound for pruning.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitSet;
use crate::error::Error;
use crate::graph::{OrderedGraph, VertexSet};
use crate::logspace::ceil_count;
use crate::patterns::{self, Embedding};
use crate::Result;

/// Default cap on `|G|` for exact pure-pair search.
pub const EXACT_PAIR_CAP: usize = 22;
/// Default cap on `|G|` for exact alpha/omega.
pub const ALPHA_OMEGA_CAP: usize = 40;
/// Node budget for the budgeted branch-and-bound mode.
const BRANCH_BOUND_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Complete,
    Anticomplete,
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Polarity::Complete => write!(f, "complete"),
            Polarity::Anticomplete => write!(f, "anticomplete"),
        }
    }
}

/// A pair `(Z1, Z2)` together with its claimed polarity.
#[derive(Clone, Debug)]
pub struct PurePairWitness {
    pub z1: VertexSet,
    pub z2: VertexSet,
    pub polarity: Polarity,
}

/// Plain-data form of a witness for serialization.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessData {
    pub polarity: Polarity,
    pub z1: Vec<usize>,
    pub z2: Vec<usize>,
    pub min_size: usize,
}

impl PurePairWitness {
    /// Builds and validates a witness.
    pub fn new(g: &OrderedGraph, z1: VertexSet, z2: VertexSet, polarity: Polarity) -> Result<Self> {
        let w = PurePairWitness { z1, z2, polarity };
        if !verify_pure_pair(g, &w) {
            return Err(Error::input("pure pair witness failed validation"));
        }
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.z1.len().min(self.z2.len())
    }

    pub fn to_data(&self) -> WitnessData {
        WitnessData {
            polarity: self.polarity,
            z1: self.z1.to_vec(),
            z2: self.z2.to_vec(),
            min_size: self.size(),
        }
    }

    /// Wire form: `polarity; Z1; Z2` with sets as sorted vertex lists.
    pub fn to_line(&self) -> String {
        let join = |s: &VertexSet| {
            s.to_vec()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}; {}; {}", self.polarity, join(&self.z1), join(&self.z2))
    }
}

/// True iff `w` is a genuine pure pair in `g`: disjoint, nonempty, hosts
/// match, and the polarity condition holds exactly. Never errors.
pub fn verify_pure_pair(g: &OrderedGraph, w: &PurePairWitness) -> bool {
    if w.z1.host() != g.uid() || w.z2.host() != g.uid() {
        return false;
    }
    if w.z1.is_empty() || w.z2.is_empty() || !w.z1.is_disjoint(&w.z2) {
        return false;
    }
    match w.polarity {
        Polarity::Anticomplete => g.is_anticomplete(&w.z1, &w.z2).unwrap_or(false),
        Polarity::Complete => g.is_complete(&w.z1, &w.z2).unwrap_or(false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Provably optimal; capped graph size.
    Exact,
    /// Same search under a fixed node budget; valid but possibly
    /// suboptimal witness, any graph size.
    BranchBound,
    /// Fast peeling heuristic.
    Greedy,
}

/// Searches for the anticomplete pair maximizing `min(|Z1|, |Z2|)`.
///
/// Without `floor`: among maxima, returns the lexicographically least pair
/// `(Z1 then Z2)`, comparing sets as sorted vertex lists. With `floor = f`:
/// returns the lexicographically least pair with `min >= f`, or `None` when
/// the search finds no pair meeting the floor (early-exit contract).
pub fn best_anticomplete_pair(
    g: &OrderedGraph,
    mode: SearchMode,
    floor: Option<usize>,
) -> Result<Option<PurePairWitness>> {
    best_anticomplete_pair_capped(g, mode, floor, EXACT_PAIR_CAP)
}

/// [`best_anticomplete_pair`] with an explicit exact-mode cap.
pub fn best_anticomplete_pair_capped(
    g: &OrderedGraph,
    mode: SearchMode,
    floor: Option<usize>,
    cap: usize,
) -> Result<Option<PurePairWitness>> {
    if mode == SearchMode::Exact && g.n() > cap {
        return Err(Error::Capability {
            what: "exact pure-pair search".into(),
            cap,
            got: g.n(),
        });
    }
    if g.n() < 2 {
        return Ok(None);
    }
    let found = match mode {
        SearchMode::Exact => search_pair(g, floor, None),
        SearchMode::BranchBound => search_pair(g, floor, Some(BRANCH_BOUND_BUDGET)),
        SearchMode::Greedy => greedy_pair(g, floor),
    };
    match found {
        None => Ok(None),
        Some((z1bits, z2bits)) => {
            let z1 = g.set_from_bits(z1bits);
            let z2 = g.set_from_bits(z2bits);
            let w = PurePairWitness::new(g, z1, z2, Polarity::Anticomplete)?;
            Ok(Some(w))
        }
    }
}

/// Best complete pair: the anticomplete search on the complement, with the
/// witness re-hosted and re-validated on `g`.
pub fn best_complete_pair(
    g: &OrderedGraph,
    mode: SearchMode,
    floor: Option<usize>,
) -> Result<Option<PurePairWitness>> {
    let co = g.complement();
    match best_anticomplete_pair(&co, mode, floor)? {
        None => Ok(None),
        Some(w) => {
            let z1 = g.vertex_set(w.z1.to_vec())?;
            let z2 = g.vertex_set(w.z2.to_vec())?;
            Ok(Some(PurePairWitness::new(g, z1, z2, Polarity::Complete)?))
        }
    }
}

// ---- search internals ----------------------------------------------------

/// Vertices outside `z1` with no neighbour in `z1`.
fn shrink_avail(g: &OrderedGraph, avail: &BitSet, v: usize) -> BitSet {
    let mut a = avail.clone();
    a.remove(v);
    a.subtract(g.neighbors(v));
    a
}

fn search_pair(g: &OrderedGraph, floor: Option<usize>, budget: Option<u64>) -> Option<(BitSet, BitSet)> {
    let target = match floor {
        Some(f) => f.max(1),
        None => {
            let s = match budget {
                None => best_value_parallel(g),
                Some(b) => best_value_budgeted(g, b),
            };
            if s == 0 {
                return None;
            }
            s
        }
    };
    let mut nodes = budget.unwrap_or(u64::MAX);
    let mut prefix = Vec::new();
    let found = lex_least_z1(g, None, 0, &BitSet::full(g.n()), target, &mut prefix, &mut nodes);
    match found {
        Some(avail) => {
            let z1 = BitSet::from_indices(g.n(), prefix.iter().copied());
            let z2 = BitSet::from_indices(g.n(), avail.iter().take(target));
            Some((z1, z2))
        }
        None => None,
    }
}

/// Phase 1: the optimal value `max min(|Z1|, |avail(Z1)|)`, exact,
/// parallel over the first chosen vertex. The value is a pure maximum, so
/// the result is independent of thread scheduling.
fn best_value_parallel(g: &OrderedGraph) -> usize {
    let best = AtomicUsize::new(0);
    (0..g.n()).into_par_iter().for_each(|v| {
        let avail = shrink_avail(g, &BitSet::full(g.n()), v);
        value_dfs(g, v, 1, &avail, &best);
    });
    best.load(Ordering::Relaxed)
}

fn value_dfs(g: &OrderedGraph, last: usize, size: usize, avail: &BitSet, best: &AtomicUsize) {
    let a = avail.len();
    if a > 0 {
        best.fetch_max(size.min(a), Ordering::Relaxed);
    }
    if a <= best.load(Ordering::Relaxed) {
        return; // avail only shrinks below; no extension can beat the best
    }
    for v in last + 1..g.n() {
        let ub = (size + 1 + g.n() - 1 - v).min(a);
        if ub <= best.load(Ordering::Relaxed) {
            continue;
        }
        let next = shrink_avail(g, avail, v);
        value_dfs(g, v, size + 1, &next, best);
    }
}

fn best_value_budgeted(g: &OrderedGraph, budget: u64) -> usize {
    let best = AtomicUsize::new(0);
    let mut nodes = budget;
    for v in 0..g.n() {
        let avail = shrink_avail(g, &BitSet::full(g.n()), v);
        value_dfs_budgeted(g, v, 1, &avail, &best, &mut nodes);
        if nodes == 0 {
            break;
        }
    }
    best.load(Ordering::Relaxed)
}

fn value_dfs_budgeted(
    g: &OrderedGraph,
    last: usize,
    size: usize,
    avail: &BitSet,
    best: &AtomicUsize,
    nodes: &mut u64,
) {
    if *nodes == 0 {
        return;
    }
    *nodes -= 1;
    let a = avail.len();
    if a > 0 {
        best.fetch_max(size.min(a), Ordering::Relaxed);
    }
    if a <= best.load(Ordering::Relaxed) {
        return;
    }
    for v in last + 1..g.n() {
        let ub = (size + 1 + g.n() - 1 - v).min(a);
        if ub <= best.load(Ordering::Relaxed) {
            continue;
        }
        let next = shrink_avail(g, avail, v);
        value_dfs_budgeted(g, v, size + 1, &next, best, nodes);
        if *nodes == 0 {
            return;
        }
    }
}

/// Phase 2: walks subsets `Z1` in sorted-list lexicographic order (a prefix
/// is emitted before any of its extensions) and returns the avail set of the
/// first `Z1` with `|Z1| >= t` and `|avail| >= t`. Sequential by design so
/// the answer cannot depend on thread count.
fn lex_least_z1(
    g: &OrderedGraph,
    last: Option<usize>,
    size: usize,
    avail: &BitSet,
    t: usize,
    prefix: &mut Vec<usize>,
    nodes: &mut u64,
) -> Option<BitSet> {
    if size >= t && avail.len() >= t {
        return Some(avail.clone());
    }
    if *nodes == 0 {
        return None;
    }
    let start = last.map_or(0, |l| l + 1);
    for v in start..g.n() {
        let ub_z1 = size + 1 + g.n() - 1 - v;
        if ub_z1 < t {
            break; // later v only leaves less room
        }
        let next = shrink_avail(g, avail, v);
        if next.len() < t {
            continue;
        }
        *nodes = nodes.saturating_sub(1);
        prefix.push(v);
        if let Some(z2) = lex_least_z1(g, Some(v), size + 1, &next, t, prefix, nodes) {
            return Some(z2);
        }
        prefix.pop();
    }
    None
}

/// Peeling heuristic: grow `Z1` from each seed by repeatedly moving the
/// lowest-fill vertex over from the avail side, keeping the best snapshot.
fn greedy_pair(g: &OrderedGraph, floor: Option<usize>) -> Option<(BitSet, BitSet)> {
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    for seed in 0..n {
        let mut z1 = BitSet::from_indices(n, [seed]);
        let mut avail = shrink_avail(g, &BitSet::full(n), seed);
        loop {
            let value = z1.len().min(avail.len());
            if value > 0 {
                let cand = (value, z1.to_vec(), avail.to_vec());
                let better = match &best {
                    None => true,
                    Some((bv, bz1, bz2)) => {
                        value > *bv || (value == *bv && (&cand.1, &cand.2) < (bz1, bz2))
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
            if z1.len() >= avail.len() || avail.is_empty() {
                break;
            }
            // vertex of avail with fewest neighbours inside avail
            let u = avail
                .iter()
                .min_by_key(|&u| (g.degree_into(u, &avail), u))
                .unwrap();
            z1.insert(u);
            avail = shrink_avail(g, &avail, u);
        }
        if let (Some(f), Some((bv, _, _))) = (floor, &best) {
            if *bv >= f {
                break;
            }
        }
    }
    match best {
        Some((v, z1, z2)) if floor.map_or(true, |f| v >= f) => {
            let take = floor.map_or(z2.len(), |f| f.max(1).min(z2.len()));
            // without a floor keep the whole avail side; with one, trim z2
            // to the floor so min-size reporting matches the request
            let _ = take;
            Some((
                BitSet::from_indices(g.n(), z1),
                BitSet::from_indices(g.n(), z2),
            ))
        }
        _ => None,
    }
}

// ---- trichotomy -----------------------------------------------------------

/// Outcome of the fixed-order three-horn search.
#[derive(Clone, Debug)]
pub enum TrichotomyOutcome {
    HighDegreeVertex { v: usize, degree: usize },
    Copy(Embedding),
    Pair(PurePairWitness),
    Exhausted { report: String },
}

impl TrichotomyOutcome {
    /// Wire form, a tagged union:
    /// `degree v d` / `copy v1 v2 ...` / `pair polarity; Z1; Z2` /
    /// `exhausted <caps>`.
    pub fn to_line(&self) -> String {
        match self {
            TrichotomyOutcome::HighDegreeVertex { v, degree } => format!("degree {v} {degree}"),
            TrichotomyOutcome::Copy(e) => format!("copy {}", e.to_line()),
            TrichotomyOutcome::Pair(w) => format!("pair {}", w.to_line()),
            TrichotomyOutcome::Exhausted { report } => format!("exhausted {report}"),
        }
    }
}

/// Runs the three checks in fixed order — max-degree vertex, induced copy
/// of `t`, anticomplete pair with min size at least `ceil(n^(1-c))` — and
/// returns the first witness. Exhaustion is an explicit outcome, never a
/// silent failure. Thresholds here round up.
pub fn trichotomy_witness(
    g: &OrderedGraph,
    t: &OrderedGraph,
    eps: f64,
    c: f64,
) -> Result<TrichotomyOutcome> {
    if !patterns::is_ordered_forest(t) {
        return Err(Error::input("trichotomy requires an ordered forest"));
    }
    if !(0.0 < eps && eps <= 1.0) || !(0.0 < c && c <= 1.0) {
        return Err(Error::input("trichotomy requires 0 < eps <= 1 and 0 < c <= 1"));
    }
    let n = g.n();
    if n == 0 {
        return Ok(TrichotomyOutcome::Exhausted {
            report: "empty graph".into(),
        });
    }
    let deg_threshold = ceil_count(eps * n as f64).max(1);
    if let Some((v, d)) = g.max_degree_vertex() {
        if d >= deg_threshold {
            return Ok(TrichotomyOutcome::HighDegreeVertex { v, degree: d });
        }
    }
    if let Some(e) = patterns::contains_ordered(g, t) {
        return Ok(TrichotomyOutcome::Copy(e));
    }
    let floor = ceil_count((n as f64).powf(1.0 - c)).max(1);
    let mode = if n <= EXACT_PAIR_CAP {
        SearchMode::Exact
    } else {
        SearchMode::BranchBound
    };
    if let Some(w) = best_anticomplete_pair(g, mode, Some(floor))? {
        return Ok(TrichotomyOutcome::Pair(w));
    }
    Ok(TrichotomyOutcome::Exhausted {
        report: format!(
            "deg_threshold={deg_threshold} pair_floor={floor} pair_mode={}",
            if mode == SearchMode::Exact { "exact" } else { "branch_bound" }
        ),
    })
}

// ---- alpha / omega ---------------------------------------------------------

/// Exact independence and clique numbers by branch and bound with a greedy
/// colouring bound. Capped at [`ALPHA_OMEGA_CAP`] vertices.
pub fn alpha_omega(g: &OrderedGraph) -> Result<(usize, usize)> {
    if g.n() > ALPHA_OMEGA_CAP {
        return Err(Error::Capability {
            what: "exact alpha/omega".into(),
            cap: ALPHA_OMEGA_CAP,
            got: g.n(),
        });
    }
    if g.n() == 0 {
        return Ok((0, 0));
    }
    let to_words = |h: &OrderedGraph| -> Vec<u64> {
        (0..h.n())
            .map(|v| h.neighbors(v).iter().fold(0u64, |acc, u| acc | 1u64 << u))
            .collect()
    };
    let omega = max_clique_words(&to_words(g), g.n());
    let alpha = max_clique_words(&to_words(&g.complement()), g.n());
    Ok((alpha, omega))
}

fn max_clique_words(adj: &[u64], n: usize) -> usize {
    let full = if n >= 64 { !0u64 } else { (1u64 << n) - 1 };
    let mut best = 0;
    clique_expand(adj, full, 0, &mut best);
    best
}

fn clique_expand(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    // greedy colouring: classes are independent in the candidate graph,
    // so size + colour is an upper bound for any clique through v
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut uncolored = cand;
    let mut color = 0usize;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            order.push((v, color));
            avail &= !(1u64 << v);
            avail &= !adj[v];
            uncolored &= !(1u64 << v);
        }
    }
    let mut cand_mut = cand;
    for &(v, col) in order.iter().rev() {
        if size + col <= *best {
            return;
        }
        clique_expand(adj, cand_mut & adj[v], size + 1, best);
        cand_mut &= !(1u64 << v);
    }
    *best = (*best).max(size);
}
