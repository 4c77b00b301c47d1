//! Blockades and their calculus: width/shrinkage/linkage measures,
//! shrink-resistant contraction, band classification over pair types, and
//! the composed selectors that feed the leaf-covering stage.
//!
//! Exact sub-pair checks exploit a one-sided reduction: for a fixed `Y`,
//! the max-degree from `X` to `Y` over all `X` of a given minimum size is
//! minimized by taking the bottom-degree vertices, so only one side is ever
//! enumerated. That turns a double-exponential definition into a single
//! subset sweep, capped at block size 14.

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::Error;
use crate::gen::SplitMix64;
use crate::graph::{OrderedGraph, VertexSet};
use crate::logspace::{self, ceil_count, floor_count, log2_count};
use crate::purepair::{Polarity, PurePairWitness};
use crate::Result;

/// Cap on block size for exact sub-pair enumeration.
pub const EXACT_SUBSET_CAP: usize = 14;
/// Cap on blockade length for exact monochromatic subset search.
pub const EXACT_MONO_CAP: usize = 20;

/// An ordered family of pairwise disjoint, order-separated, nonempty vertex
/// sets with strictly increasing integer indices.
#[derive(Clone, Debug)]
pub struct Blockade {
    host_uid: u64,
    host_n: usize,
    indices: Vec<usize>,
    blocks: Vec<VertexSet>,
    pos_of_vertex: Vec<u32>,
}

const NO_BLOCK: u32 = u32::MAX;

impl Blockade {
    pub fn new(g: &OrderedGraph, entries: Vec<(usize, VertexSet)>) -> Result<Self> {
        let mut indices = Vec::with_capacity(entries.len());
        let mut blocks = Vec::with_capacity(entries.len());
        for (i, s) in entries {
            indices.push(i);
            blocks.push(s);
        }
        let b = Blockade {
            host_uid: g.uid(),
            host_n: g.n(),
            indices,
            blocks,
            pos_of_vertex: Vec::new(),
        };
        b.validated()
    }

    fn validated(mut self) -> Result<Self> {
        for w in self.indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::input("blockade indices must strictly increase"));
            }
        }
        let mut pos_of_vertex = vec![NO_BLOCK; self.host_n];
        for (pos, blk) in self.blocks.iter().enumerate() {
            if blk.host() != self.host_uid {
                return Err(Error::input("blockade block from a different graph"));
            }
            if blk.is_empty() {
                return Err(Error::input(format!(
                    "blockade block at index {} is empty",
                    self.indices[pos]
                )));
            }
            for v in blk.iter() {
                if pos_of_vertex[v] != NO_BLOCK {
                    return Err(Error::input(format!("vertex {v} appears in two blocks")));
                }
                pos_of_vertex[v] = pos as u32;
            }
        }
        for pos in 1..self.blocks.len() {
            let prev_max = self.blocks[pos - 1].bits().last().unwrap();
            let cur_min = self.blocks[pos].bits().first().unwrap();
            if prev_max >= cur_min {
                return Err(Error::input(format!(
                    "blocks at indices {} and {} are not order-separated",
                    self.indices[pos - 1],
                    self.indices[pos]
                )));
            }
        }
        self.pos_of_vertex = pos_of_vertex;
        Ok(self)
    }

    /// `K` consecutive intervals of sizes differing by at most one, the
    /// earlier blocks taking the extra vertices; indices `1..=K`.
    pub fn equal(g: &OrderedGraph, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::input("equal blockade needs K >= 1"));
        }
        if g.n() < k {
            return Err(Error::input(format!(
                "equal blockade needs |G| >= K, got |G|={} K={k}",
                g.n()
            )));
        }
        let q = g.n() / k;
        let r = g.n() % k;
        let mut entries = Vec::with_capacity(k);
        let mut start = 0;
        for i in 0..k {
            let size = q + usize::from(i < r);
            let set = g.vertex_set(start..start + size)?;
            entries.push((i + 1, set));
            start += size;
        }
        Self::new(g, entries)
    }

    pub fn check_host(&self, g: &OrderedGraph) -> Result<()> {
        if g.uid() != self.host_uid {
            return Err(Error::input("blockade belongs to a different graph"));
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    #[inline]
    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn block_at(&self, pos: usize) -> &VertexSet {
        &self.blocks[pos]
    }

    pub fn index_at(&self, pos: usize) -> usize {
        self.indices[pos]
    }

    pub fn position_of_index(&self, index: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == index)
    }

    pub fn block_by_index(&self, index: usize) -> Result<&VertexSet> {
        self.position_of_index(index)
            .map(|p| &self.blocks[p])
            .ok_or_else(|| Error::input(format!("no block with index {index}")))
    }

    /// Position (not index) of the block containing `v`, if any.
    pub fn block_position_of_vertex(&self, v: usize) -> Option<usize> {
        match self.pos_of_vertex.get(v) {
            Some(&p) if p != NO_BLOCK => Some(p as usize),
            _ => None,
        }
    }

    pub fn widths(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// New blockade with the block at `pos` replaced by a nonempty subset.
    pub fn with_block_replaced(&self, pos: usize, bits: BitSet) -> Result<Self> {
        if !bits.is_subset(self.blocks[pos].bits()) {
            return Err(Error::input("replacement is not a subset of the block"));
        }
        let mut blocks = self.blocks.clone();
        blocks[pos] = self.blocks[pos].with_bits(bits);
        Blockade {
            host_uid: self.host_uid,
            host_n: self.host_n,
            indices: self.indices.clone(),
            blocks,
            pos_of_vertex: Vec::new(),
        }
        .validated()
    }

    /// Sub-blockade on the given index values (order preserved).
    pub fn sub_blockade(&self, keep_indices: &[usize]) -> Result<Self> {
        let mut entries = Vec::with_capacity(keep_indices.len());
        for &i in keep_indices {
            let pos = self
                .position_of_index(i)
                .ok_or_else(|| Error::input(format!("no block with index {i}")))?;
            entries.push((i, self.blocks[pos].clone()));
        }
        Blockade {
            host_uid: self.host_uid,
            host_n: self.host_n,
            indices: entries.iter().map(|(i, _)| *i).collect(),
            blocks: entries.into_iter().map(|(_, s)| s).collect(),
            pos_of_vertex: Vec::new(),
        }
        .validated()
    }

    /// One JSON array of sorted vertices per line, in block order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for blk in &self.blocks {
            out.push_str(&serde_json::to_string(&blk.to_vec()).expect("json"));
            out.push('\n');
        }
        out
    }

    /// Parses JSON-lines blocks; indices are assigned `1..=lines`.
    pub fn from_jsonl(g: &OrderedGraph, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let verts: Vec<usize> = serde_json::from_str(line)
                .map_err(|e| Error::format(format!("blockade line {}: {e}", lineno + 1)))?;
            entries.push((entries.len() + 1, g.vertex_set(verts)?));
        }
        Self::new(g, entries)
    }

    pub fn to_data(&self) -> BlockadeData {
        BlockadeData {
            indices: self.indices.clone(),
            blocks: self.blocks.iter().map(|b| b.to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockadeData {
    pub indices: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

// ---- measures --------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BlockadeMeasures {
    pub width: usize,
    pub shrinkage: f64,
    pub linkage: f64,
    /// Position-indexed max-degree matrix, `maxdeg[p][q]` from block p to q.
    pub maxdeg: Vec<Vec<usize>>,
    /// Base-2 log of the product of off-diagonal entries; -inf if any is 0.
    pub log2_maxdeg_product: f64,
}

pub fn measures(g: &OrderedGraph, b: &Blockade) -> Result<BlockadeMeasures> {
    b.check_host(g)?;
    let l = b.len();
    let width = if l == 0 {
        g.n()
    } else {
        b.widths().into_iter().min().unwrap()
    };
    let shrinkage = if l == 0 || g.n() < 2 {
        0.0
    } else {
        1.0 - log2_count(width) / (g.n() as f64).log2()
    };
    let mut maxdeg = vec![vec![0usize; l]; l];
    let mut linkage: f64 = 0.0;
    let mut log_prod = 0.0f64;
    for p in 0..l {
        for q in 0..l {
            if p == q {
                continue;
            }
            let d = g.max_degree_from_bits(b.block_at(p).bits(), b.block_at(q).bits());
            maxdeg[p][q] = d;
            linkage = linkage.max(d as f64 / b.block_at(q).len() as f64);
            log_prod += log2_count(d);
        }
    }
    if l <= 1 {
        linkage = 0.0;
        log_prod = 0.0;
    }
    Ok(BlockadeMeasures {
        width,
        shrinkage,
        linkage,
        maxdeg,
        log2_maxdeg_product: log_prod,
    })
}

// ---- shrink-resistance ------------------------------------------------------

/// How quantified sub-pair conditions are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceCounterexample {
    /// Index values of the offending pair.
    pub h: usize,
    pub j: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub maxdeg: usize,
    pub d_hj: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceReport {
    pub resistant: bool,
    pub mode: CheckMode,
    pub counterexample: Option<ResistanceCounterexample>,
}

fn subset_cap_check(b: &Blockade, what: &str) -> Result<()> {
    if let Some(&w) = b.widths().iter().max() {
        if w > EXACT_SUBSET_CAP {
            return Err(Error::Capability {
                what: what.into(),
                cap: EXACT_SUBSET_CAP,
                got: w,
            });
        }
    }
    Ok(())
}

/// Decides whether every mu-fraction sub-pair keeps max-degree above
/// `d_hj * |G|^(-phi)`. Exact mode enumerates `Y` and takes the
/// bottom-degree `X`; sampled mode reports only "no counterexample found".
/// A returned counterexample is the least one in (pair, Y) order.
pub fn is_shrink_resistant(
    g: &OrderedGraph,
    b: &Blockade,
    phi: f64,
    mu: f64,
    check: CheckMode,
) -> Result<ResistanceReport> {
    b.check_host(g)?;
    check_phi_mu(phi, mu)?;
    let log2n = log2_count(g.n()).max(0.0);
    let threshold = move |d: usize, _bqlen: usize| log2_count(d) - phi * log2n;
    let cx = match check {
        CheckMode::Exact => {
            subset_cap_check(b, "exact shrink-resistance check")?;
            sweep_with_mu_exact(g, b, mu, threshold)
        }
        CheckMode::Sampled { trials, seed } => {
            sweep_pairs_sampled(g, b, trials, seed, threshold, mu)
        }
    };
    Ok(ResistanceReport {
        resistant: cx.is_none(),
        mode: check,
        counterexample: cx,
    })
}

fn check_phi_mu(phi: f64, mu: f64) -> Result<()> {
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::input("phi must be in (0, 1]"));
    }
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::input("mu must be in (0, 1]"));
    }
    Ok(())
}

/// Shared exact sweep: for each ordered pair of blocks, enumerate `Y` of the
/// minimum allowed size in lexicographic order; for each `Y`, the worst `X`
/// is the bottom-degree slice. `threshold(d_hj, |B_q|)` gives the log2 bound
/// that a counterexample must fail to exceed.
fn sweep_with_mu_exact(
    g: &OrderedGraph,
    b: &Blockade,
    mu: f64,
    threshold: impl Fn(usize, usize) -> f64,
) -> Option<ResistanceCounterexample> {
    let l = b.len();
    for p in 0..l {
        for q in 0..l {
            if p == q {
                continue;
            }
            let bh = b.block_at(p);
            let bj = b.block_at(q);
            let d = g.max_degree_from_bits(bh.bits(), bj.bits());
            let thr = threshold(d, bj.len());
            let my = ceil_count(mu * bj.len() as f64).clamp(1, bj.len());
            let mx = ceil_count(mu * bh.len() as f64).clamp(1, bh.len());
            let members: Vec<usize> = bj.to_vec();
            let mut found = None;
            for_each_combination(&members, my, &mut |ysel| {
                let ybits = BitSet::from_indices(g.n(), ysel.iter().copied());
                if let Some((x, maxdeg)) = bottom_slice_maxdeg(g, bh, &ybits, mx) {
                    if logspace::le(log2_count(maxdeg), thr) {
                        found = Some(ResistanceCounterexample {
                            h: b.index_at(p),
                            j: b.index_at(q),
                            x,
                            y: ysel.to_vec(),
                            maxdeg,
                            d_hj: d,
                        });
                        return false;
                    }
                }
                true
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn sweep_pairs_sampled(
    g: &OrderedGraph,
    b: &Blockade,
    trials: u64,
    seed: u64,
    threshold: impl Fn(usize, usize) -> f64,
    mu: f64,
) -> Option<ResistanceCounterexample> {
    let l = b.len();
    if l < 2 {
        return None;
    }
    let pairs: Vec<(usize, usize)> = (0..l)
        .flat_map(|p| (0..l).filter(move |&q| q != p).map(move |q| (p, q)))
        .collect();
    let mut rng = SplitMix64::new(seed);
    for t in 0..trials {
        let (p, q) = pairs[(t as usize) % pairs.len()];
        let bh = b.block_at(p);
        let bj = b.block_at(q);
        let d = g.max_degree_from_bits(bh.bits(), bj.bits());
        let thr = threshold(d, bj.len());
        let my = ceil_count(mu * bj.len() as f64).clamp(1, bj.len());
        let mx = ceil_count(mu * bh.len() as f64).clamp(1, bh.len());
        let mut members = bj.to_vec();
        // partial Fisher-Yates for a uniform my-subset
        for i in 0..my {
            let j = i + (rng.next_below((members.len() - i) as u64) as usize);
            members.swap(i, j);
        }
        let mut ysel: Vec<usize> = members[..my].to_vec();
        ysel.sort_unstable();
        let ybits = BitSet::from_indices(g.n(), ysel.iter().copied());
        if let Some((x, maxdeg)) = bottom_slice_maxdeg(g, bh, &ybits, mx) {
            if logspace::le(log2_count(maxdeg), thr) {
                return Some(ResistanceCounterexample {
                    h: b.index_at(p),
                    j: b.index_at(q),
                    x,
                    y: ysel,
                    maxdeg,
                    d_hj: d,
                });
            }
        }
    }
    None
}

/// The `mx` vertices of `bh` with fewest neighbours in `ybits` (ties by
/// vertex), and the max degree over that slice.
fn bottom_slice_maxdeg(
    g: &OrderedGraph,
    bh: &VertexSet,
    ybits: &BitSet,
    mx: usize,
) -> Option<(Vec<usize>, usize)> {
    let mut degs: Vec<(usize, usize)> = bh.iter().map(|v| (g.degree_into(v, ybits), v)).collect();
    if degs.len() < mx {
        return None;
    }
    degs.sort_unstable();
    let slice = &degs[..mx];
    let maxdeg = slice.iter().map(|&(d, _)| d).max().unwrap_or(0);
    let mut x: Vec<usize> = slice.iter().map(|&(_, v)| v).collect();
    x.sort_unstable();
    Some((x, maxdeg))
}

/// Visits k-combinations of `items` in lexicographic order; the visitor
/// returns false to stop early.
fn for_each_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            cur.push(items[i]);
            if !rec(items, k, i + 1, cur, f) {
                return false;
            }
            cur.pop();
        }
        true
    }
    if k == 0 {
        f(&[]);
        return;
    }
    if k > items.len() {
        return;
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, f);
}

// ---- shrink-resistant contraction -------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ContractionStep {
    pub h: usize,
    pub j: usize,
    pub size_h_before: usize,
    pub size_j_before: usize,
    pub d_hj_before: usize,
    pub maxdeg_after: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceCertificate {
    pub phi: f64,
    pub mu: f64,
    pub iterations: usize,
    pub iteration_cap: usize,
    pub beta_log2: f64,
    pub original_sizes: Vec<usize>,
    pub final_sizes: Vec<usize>,
    pub check: CheckMode,
    pub trace: Vec<ContractionStep>,
}

#[derive(Clone, Debug)]
pub enum ShrinkResistOutcome {
    /// Some pair of contracted blocks became anticomplete; both still hold
    /// at least a beta fraction of their original blocks.
    Anticomplete {
        h: usize,
        j: usize,
        witness: PurePairWitness,
        blockade: Blockade,
        certificate: ResistanceCertificate,
    },
    /// The contraction passed the resistance check in the given mode.
    Resistant {
        blockade: Blockade,
        certificate: ResistanceCertificate,
    },
}

impl ShrinkResistOutcome {
    pub fn certificate(&self) -> &ResistanceCertificate {
        match self {
            ShrinkResistOutcome::Anticomplete { certificate, .. } => certificate,
            ShrinkResistOutcome::Resistant { certificate, .. } => certificate,
        }
    }

    pub fn blockade(&self) -> &Blockade {
        match self {
            ShrinkResistOutcome::Anticomplete { blockade, .. } => blockade,
            ShrinkResistOutcome::Resistant { blockade, .. } => blockade,
        }
    }
}

/// Falsification loop: while some mu-fraction sub-pair `(X, Y)` drives the
/// pair max-degree down to `d_hj * |G|^(-phi)` or lower, contract the two
/// blocks to `(X, Y)` and repeat. Each step multiplies one max-degree entry
/// by at most `|G|^(-phi)` and increases none, so within `floor(L^2/phi)`
/// steps the loop either stops (resistant) or exposes an anticomplete pair
/// whose blocks kept at least `mu^(1 + L^2/phi)` of their original size.
pub fn shrink_resist(
    g: &OrderedGraph,
    b: &Blockade,
    phi: f64,
    mu: f64,
    check: CheckMode,
) -> Result<ShrinkResistOutcome> {
    b.check_host(g)?;
    check_phi_mu(phi, mu)?;
    let l = b.len();
    let iteration_cap = if l == 0 {
        0
    } else {
        floor_count((l * l) as f64 / phi)
    };
    let beta_log2 = (1.0 + (l * l) as f64 / phi) * logspace::log2_pos(mu);
    let original_sizes = b.widths();
    let mut cur = b.clone();
    let mut trace: Vec<ContractionStep> = Vec::new();
    loop {
        // an exposed anticomplete pair ends the loop, least (h, j) first
        let mut exposed = None;
        'outer: for p in 0..l {
            for q in 0..l {
                if p == q {
                    continue;
                }
                let d = g.max_degree_from_bits(cur.block_at(p).bits(), cur.block_at(q).bits());
                if d == 0 {
                    exposed = Some((p, q));
                    break 'outer;
                }
            }
        }
        if let Some((p, q)) = exposed {
            let certificate = ResistanceCertificate {
                phi,
                mu,
                iterations: trace.len(),
                iteration_cap,
                beta_log2,
                original_sizes,
                final_sizes: cur.widths(),
                check,
                trace,
            };
            let witness = PurePairWitness::new(
                g,
                cur.block_at(p).clone(),
                cur.block_at(q).clone(),
                Polarity::Anticomplete,
            )?;
            return Ok(ShrinkResistOutcome::Anticomplete {
                h: cur.index_at(p),
                j: cur.index_at(q),
                witness,
                blockade: cur,
                certificate,
            });
        }

        let report = is_shrink_resistant(g, &cur, phi, mu, check)?;
        match report.counterexample {
            None => {
                let certificate = ResistanceCertificate {
                    phi,
                    mu,
                    iterations: trace.len(),
                    iteration_cap,
                    beta_log2,
                    original_sizes,
                    final_sizes: cur.widths(),
                    check,
                    trace,
                };
                return Ok(ShrinkResistOutcome::Resistant {
                    blockade: cur,
                    certificate,
                });
            }
            Some(cx) => {
                if trace.len() > iteration_cap {
                    return Err(Error::Analysis(format!(
                        "contraction exceeded its budget of {iteration_cap} steps"
                    )));
                }
                let p = cur.position_of_index(cx.h).unwrap();
                let q = cur.position_of_index(cx.j).unwrap();
                let step = ContractionStep {
                    h: cx.h,
                    j: cx.j,
                    size_h_before: cur.block_at(p).len(),
                    size_j_before: cur.block_at(q).len(),
                    d_hj_before: cx.d_hj,
                    maxdeg_after: cx.maxdeg,
                    x: cx.x.clone(),
                    y: cx.y.clone(),
                };
                let xbits = BitSet::from_indices(g.n(), cx.x.iter().copied());
                let ybits = BitSet::from_indices(g.n(), cx.y.iter().copied());
                cur = cur.with_block_replaced(p, xbits)?;
                cur = cur.with_block_replaced(q, ybits)?;
                trace.push(step);
            }
        }
    }
}

// ---- pair types and bands -----------------------------------------------

/// The smallest nonnegative integer `t` such that both density ratios
/// `d_hj/|B_j|` and `d_jh/|B_h|` lie in `(|G|^(-2t*phi), |G|^(-2(t-2)*phi)]`.
pub fn pair_type(g: &OrderedGraph, b: &Blockade, h: usize, j: usize, phi: f64) -> Result<u32> {
    b.check_host(g)?;
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::input("phi must be in (0, 1]"));
    }
    let p = b
        .position_of_index(h)
        .ok_or_else(|| Error::input(format!("no block with index {h}")))?;
    let q = b
        .position_of_index(j)
        .ok_or_else(|| Error::input(format!("no block with index {j}")))?;
    if p == q {
        return Err(Error::input("pair type needs two distinct blocks"));
    }
    let d_hj = g.max_degree_from_bits(b.block_at(p).bits(), b.block_at(q).bits());
    let d_jh = g.max_degree_from_bits(b.block_at(q).bits(), b.block_at(p).bits());
    if d_hj == 0 || d_jh == 0 {
        return Err(Error::Analysis(format!(
            "pair type needs d_hj, d_jh >= 1; got d_{h},{j}={d_hj}, d_{j},{h}={d_jh}"
        )));
    }
    let log2n = log2_count(g.n());
    let r1 = log2_count(d_hj) - log2_count(b.block_at(q).len());
    let r2 = log2_count(d_jh) - log2_count(b.block_at(p).len());
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    let t_max = floor_count(1.0 / (2.0 * phi)) + 3;
    for t in 0..=t_max {
        let left = -2.0 * t as f64 * phi * log2n;
        let right = -2.0 * (t as f64 - 2.0) * phi * log2n;
        if logspace::lt(left, lo) && logspace::le(hi, right) {
            debug_assert!(t > 0 && (t as f64) <= 1.0 / (2.0 * phi) + 2.0 + 1e-9);
            return Ok(t as u32);
        }
    }
    Err(Error::Analysis(format!(
        "no pair type: need |G|^(-2t*phi) < {lo:.6} (log2) and {hi:.6} (log2) <= |G|^(-2(t-2)*phi); no integer t satisfies both"
    )))
}

#[derive(Clone, Debug, Serialize)]
pub enum BandViolation {
    UpperBound {
        h: usize,
        j: usize,
        maxdeg: usize,
    },
    LowerBound {
        h: usize,
        j: usize,
        x: Vec<usize>,
        y: Vec<usize>,
        maxdeg: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct BandVerdict {
    pub holds: bool,
    pub mode: CheckMode,
    pub violation: Option<BandViolation>,
}

/// Checks that `tau` is a `(phi, mu)`-band for `b`: max-degrees bounded by
/// `tau|B_j|` above, and every mu-fraction sub-pair stays above
/// `tau |G|^(-phi) |B_j|`.
pub fn is_band(
    g: &OrderedGraph,
    b: &Blockade,
    tau: f64,
    phi: f64,
    mu: f64,
    check: CheckMode,
) -> Result<BandVerdict> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::input("band value tau must be in (0, 1]"));
    }
    is_band_log(g, b, logspace::log2_pos(tau), phi, mu, check)
}

/// [`is_band`] with tau given in base-2 log form (must be <= 0).
pub fn is_band_log(
    g: &OrderedGraph,
    b: &Blockade,
    tau_log2: f64,
    phi: f64,
    mu: f64,
    check: CheckMode,
) -> Result<BandVerdict> {
    b.check_host(g)?;
    check_phi_mu(phi, mu)?;
    let l = b.len();
    let log2n = log2_count(g.n());
    // upper bullet is cheap either way
    for p in 0..l {
        for q in 0..l {
            if p == q {
                continue;
            }
            let d = g.max_degree_from_bits(b.block_at(p).bits(), b.block_at(q).bits());
            let bound = tau_log2 + log2_count(b.block_at(q).len());
            if !logspace::le(log2_count(d), bound) {
                return Ok(BandVerdict {
                    holds: false,
                    mode: check,
                    violation: Some(BandViolation::UpperBound {
                        h: b.index_at(p),
                        j: b.index_at(q),
                        maxdeg: d,
                    }),
                });
            }
        }
    }
    let threshold = |_d: usize, bqlen: usize| tau_log2 - phi * log2n + log2_count(bqlen);
    let cx = match check {
        CheckMode::Exact => {
            subset_cap_check(b, "exact band check")?;
            sweep_with_mu_exact(g, b, mu, threshold)
        }
        CheckMode::Sampled { trials, seed } => {
            sweep_pairs_sampled(g, b, trials, seed, threshold, mu)
        }
    };
    Ok(BandVerdict {
        holds: cx.is_none(),
        mode: check,
        violation: cx.map(|c| BandViolation::LowerBound {
            h: c.h,
            j: c.j,
            x: c.x,
            y: c.y,
            maxdeg: c.maxdeg,
        }),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BandCertificate {
    pub tau: f64,
    pub tau_log2: f64,
    pub band_phi: f64,
    pub mu: f64,
    pub indices: Vec<usize>,
    pub pair_type: Option<u32>,
    pub check: CheckMode,
    pub validated: bool,
}

#[derive(Clone, Debug)]
pub struct BandSelection {
    pub indices: Vec<usize>,
    pub blockade: Blockade,
    pub certificate: BandCertificate,
}

/// Colors every unordered pair of blocks by its type, finds a k-subset of
/// indices whose pairs all share one type (exact subset search up to length
/// 20, greedy by majority color above), and certifies
/// `tau = min(1, |G|^(-2(t-2)*phi))` as a `(5*phi, mu)`-band for it.
pub fn find_band(
    g: &OrderedGraph,
    b: &Blockade,
    phi: f64,
    mu: f64,
    k: usize,
    check: CheckMode,
) -> Result<BandSelection> {
    b.check_host(g)?;
    check_phi_mu(phi, mu)?;
    let l = b.len();
    if k > l {
        return Err(Error::input(format!(
            "cannot select {k} blocks from a blockade of length {l}"
        )));
    }
    if k <= 1 {
        let indices: Vec<usize> = b.indices()[..k].to_vec();
        let blockade = b.sub_blockade(&indices)?;
        return Ok(BandSelection {
            certificate: BandCertificate {
                tau: 1.0,
                tau_log2: 0.0,
                band_phi: 5.0 * phi,
                mu,
                indices: indices.clone(),
                pair_type: None,
                check,
                validated: true,
            },
            indices,
            blockade,
        });
    }
    // color all unordered pairs
    let mut color = vec![vec![0u32; l]; l];
    for p in 0..l {
        for q in p + 1..l {
            let t = pair_type(g, b, b.index_at(p), b.index_at(q), phi)?;
            color[p][q] = t;
            color[q][p] = t;
        }
    }
    let chosen = if l <= EXACT_MONO_CAP {
        mono_subset_exact(&color, l, k)
    } else {
        mono_subset_greedy(&color, l, k)
    };
    let positions = match chosen {
        Ok(pos) => pos,
        Err(largest) => {
            let idx: Vec<usize> = largest.iter().map(|&p| b.index_at(p)).collect();
            return Err(Error::Capability {
                what: format!(
                    "monochromatic subset of length {k}; largest found has indices {idx:?}"
                ),
                cap: k,
                got: largest.len(),
            });
        }
    };
    let t = color[positions[0]][positions[1]];
    let log2n = log2_count(g.n());
    let tau_log2 = (-2.0 * (t as f64 - 2.0) * phi * log2n).min(0.0);
    let indices: Vec<usize> = positions.iter().map(|&p| b.index_at(p)).collect();
    let blockade = b.sub_blockade(&indices)?;
    let verdict = is_band_log(g, &blockade, tau_log2, 5.0 * phi, mu, check)?;
    Ok(BandSelection {
        certificate: BandCertificate {
            tau: tau_log2.exp2(),
            tau_log2,
            band_phi: 5.0 * phi,
            mu,
            indices: indices.clone(),
            pair_type: Some(t),
            check,
            validated: verdict.holds,
        },
        indices,
        blockade,
    })
}

/// Lexicographically least monochromatic k-subset of positions, or the
/// largest one found.
fn mono_subset_exact(color: &[Vec<u32>], l: usize, k: usize) -> std::result::Result<Vec<usize>, Vec<usize>> {
    fn rec(
        color: &[Vec<u32>],
        l: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) -> bool {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if cur.len() == k {
            return true;
        }
        for p in start..l {
            if l - p < k - cur.len() {
                break;
            }
            let ok = cur.iter().all(|&s| {
                cur.len() < 2 || color[s][p] == color[cur[0]][cur[1]]
            }) && (cur.len() < 2 || color[cur[0]][cur[1]] == color[cur[0]][p])
                && cur.iter().all(|&s| color[s][p] == color[cur[0]][p]);
            if ok {
                cur.push(p);
                if rec(color, l, k, p + 1, cur, best) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut best = Vec::new();
    let mut cur = Vec::new();
    if rec(color, l, k, 0, &mut cur, &mut best) {
        Ok(cur)
    } else {
        Err(best)
    }
}

fn mono_subset_greedy(color: &[Vec<u32>], l: usize, k: usize) -> std::result::Result<Vec<usize>, Vec<usize>> {
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for p in 0..l {
        for q in p + 1..l {
            *counts.entry(color[p][q]).or_default() += 1;
        }
    }
    // majority color, ties to the smaller type
    let target = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&t, _)| t)
        .unwrap_or(0);
    let mut chosen: Vec<usize> = Vec::new();
    for p in 0..l {
        if chosen.iter().all(|&s| color[s][p] == target) {
            chosen.push(p);
            if chosen.len() == k {
                return Ok(chosen);
            }
        }
    }
    Err(chosen)
}

// ---- composed selectors -----------------------------------------------------

#[derive(Clone, Debug)]
pub enum HomogOutcome {
    Anticomplete {
        witness: PurePairWitness,
        certificate: ResistanceCertificate,
    },
    Selected {
        resistant: Blockade,
        resistance: ResistanceCertificate,
        selection: BandSelection,
    },
}

/// Shrink-resist at `phi/5`, then band-select: either an anticomplete pair
/// with both blocks at least `mu^(1 + 5L^2/phi)` of their originals, or a
/// k-subset carrying a `(phi, mu)`-band.
pub fn homog(
    g: &OrderedGraph,
    b: &Blockade,
    k: usize,
    phi: f64,
    mu: f64,
    check: CheckMode,
) -> Result<HomogOutcome> {
    if k > b.len() {
        return Err(Error::input(format!(
            "cannot select {k} blocks from a blockade of length {}",
            b.len()
        )));
    }
    match shrink_resist(g, b, phi / 5.0, mu, check)? {
        ShrinkResistOutcome::Anticomplete {
            witness,
            certificate,
            ..
        } => Ok(HomogOutcome::Anticomplete {
            witness,
            certificate,
        }),
        ShrinkResistOutcome::Resistant {
            blockade,
            certificate,
        } => {
            let selection = find_band(g, &blockade, phi / 5.0, mu, k, check)?;
            Ok(HomogOutcome::Selected {
                resistant: blockade,
                resistance: certificate,
                selection,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    /// Check every hypothesis up front; fail with a precondition report.
    Theoretical,
    /// Run anyway and collect warnings; validators are the source of truth.
    Practical,
}

#[derive(Clone, Debug)]
pub struct Homog2Params {
    pub c: f64,
    pub phi: f64,
    pub mu: f64,
    pub sigma: f64,
    /// Shrinkage budget for the output (the capital-sigma of the contract).
    pub sigma_out: f64,
    /// Band budget for the output (the capital-lambda of the contract).
    pub lambda_out: f64,
}

#[derive(Clone, Debug)]
pub enum Homog2Outcome {
    Anticomplete {
        witness: PurePairWitness,
        certificate: ResistanceCertificate,
        /// True when the pair is large enough to contradict the standing
        /// "no anticomplete pair of size |G|^(1-c)" hypothesis.
        hypothesis_violated: bool,
    },
    Selected(Homog2Selection),
}

#[derive(Clone, Debug)]
pub struct Homog2Selection {
    pub indices: Vec<usize>,
    pub blockade: Blockade,
    pub certificate: BandCertificate,
    pub shrinkage: f64,
    pub warnings: Vec<String>,
}

/// The shrinkage-and-band selector: on success the selected contraction has
/// shrinkage at most `sigma_out` and a band at most `lambda_out`. An
/// anticomplete outcome is reported rather than treated as an error; at
/// desk scale it usually means the standing hypothesis failed on this G.
pub fn homog2(
    g: &OrderedGraph,
    b: &Blockade,
    k: usize,
    params: &Homog2Params,
    rigor: Rigor,
    check: CheckMode,
) -> Result<Homog2Outcome> {
    b.check_host(g)?;
    let l = b.len();
    if k > l {
        return Err(Error::input(format!(
            "cannot select {k} blocks from a blockade of length {l}"
        )));
    }
    let log2n = log2_count(g.n());
    let beta_log2 = (1.0 + 5.0 * (l * l) as f64 / params.phi) * logspace::log2_pos(params.mu);
    let mut warnings = Vec::new();
    {
        let mut failures = Vec::new();
        let m = measures(g, b)?;
        if !(params.sigma < params.sigma_out) {
            failures.push(format!(
                "sigma < Sigma fails: {} >= {}",
                params.sigma, params.sigma_out
            ));
        }
        if !(params.sigma_out < params.c) {
            failures.push(format!(
                "Sigma < c fails: {} >= {}",
                params.sigma_out, params.c
            ));
        }
        if !logspace::le(logspace::log2_pos(m.shrinkage), logspace::log2_pos(params.sigma)) {
            failures.push(format!(
                "shrinkage(B) <= sigma fails: {} > {}",
                m.shrinkage, params.sigma
            ));
        }
        let lambda_in_log = beta_log2 + logspace::log2_pos(params.lambda_out);
        if !logspace::le(logspace::log2_pos(m.linkage), lambda_in_log) {
            failures.push(format!(
                "linkage(B) <= beta*Lambda fails: {} > 2^{lambda_in_log}",
                m.linkage
            ));
        }
        if !logspace::ge((params.sigma_out - params.sigma) * log2n, -beta_log2) {
            failures.push("|G|^(Sigma-sigma) >= 1/beta fails".into());
        }
        if !(params.mu < 1.0)
            || !logspace::ge(params.phi / 5.0 * log2n, -logspace::log2_pos(1.0 - params.mu))
        {
            failures.push("|G|^(phi/5) >= 1/(1-mu) fails".into());
        }
        match rigor {
            Rigor::Theoretical if !failures.is_empty() => {
                return Err(Error::Precondition {
                    context: "homog2".into(),
                    failures,
                });
            }
            _ => warnings.extend(failures),
        }
    }
    if k == 0 {
        return Ok(Homog2Outcome::Selected(Homog2Selection {
            indices: vec![],
            blockade: b.sub_blockade(&[])?,
            certificate: BandCertificate {
                tau: params.lambda_out.min(1.0),
                tau_log2: logspace::log2_pos(params.lambda_out.min(1.0)),
                band_phi: params.phi,
                mu: params.mu,
                indices: vec![],
                pair_type: None,
                check,
                validated: true,
            },
            shrinkage: 0.0,
            warnings,
        }));
    }
    match homog(g, b, k, params.phi, params.mu, check)? {
        HomogOutcome::Anticomplete {
            witness,
            certificate,
        } => {
            let need = (1.0 - params.c) * log2n;
            let hypothesis_violated = logspace::ge(log2_count(witness.z1.len()), need)
                && logspace::ge(log2_count(witness.z2.len()), need);
            Ok(Homog2Outcome::Anticomplete {
                witness,
                certificate,
                hypothesis_violated,
            })
        }
        HomogOutcome::Selected { selection, .. } => {
            let m = measures(g, &selection.blockade)?;
            if !logspace::le(
                logspace::log2_pos(m.shrinkage),
                logspace::log2_pos(params.sigma_out),
            ) {
                warnings.push(format!(
                    "selected shrinkage {} exceeds budget {}",
                    m.shrinkage, params.sigma_out
                ));
            }
            let mut certificate = selection.certificate.clone();
            let lambda_log = logspace::log2_pos(params.lambda_out);
            if !logspace::le(certificate.tau_log2, lambda_log) {
                if logspace::le(logspace::log2_pos(m.linkage), lambda_log) {
                    // any value between the linkage and the found band is
                    // itself a band; settle on the budget
                    let new_log = lambda_log.min(0.0);
                    let verdict = is_band_log(
                        g,
                        &selection.blockade,
                        new_log,
                        certificate.band_phi,
                        certificate.mu,
                        check,
                    )?;
                    certificate.tau_log2 = new_log;
                    certificate.tau = new_log.exp2();
                    certificate.validated = verdict.holds;
                    warnings.push("band value lowered to the lambda budget".into());
                } else {
                    let msg = format!(
                        "band {} and linkage {} both exceed the lambda budget {}",
                        certificate.tau, m.linkage, params.lambda_out
                    );
                    if rigor == Rigor::Theoretical {
                        return Err(Error::Precondition {
                            context: "homog2".into(),
                            failures: vec![msg],
                        });
                    }
                    warnings.push(msg);
                }
            }
            Ok(Homog2Outcome::Selected(Homog2Selection {
                indices: selection.indices,
                blockade: selection.blockade,
                certificate,
                shrinkage: m.shrinkage,
                warnings,
            }))
        }
    }
}

// ---- theoretical parameter reports ------------------------------------------

/// Number of colors needed to band the density ratios at resolution `phi`.
pub fn band_color_count(phi: f64) -> u64 {
    floor_count(1.0 / (2.0 * phi) + 2.0) as u64
}

/// Crude multicolor bound on the symbol count needed to force a
/// monochromatic k-subset: exact for k <= 2, `r^(r*k)` above.
pub fn ramsey_upper(colors: f64, k: f64) -> (f64, f64) {
    if k <= 1.0 {
        return (k.max(0.0), if k >= 1.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if k <= 2.0 {
        return (2.0, 1.0);
    }
    let log2 = colors * k * colors.log2();
    (log2.exp2(), log2)
}

/// `log2` of the contraction retention factor `mu^(1 + L^2/phi)`.
pub fn beta_log2_shrink(mu: f64, len: f64, phi: f64) -> f64 {
    (1.0 + len * len / phi) * logspace::log2_pos(mu)
}

/// `log2` of the two-stage retention factor `mu^(1 + 5L^2/phi)`.
pub fn beta_log2_homog(mu: f64, len: f64, phi: f64) -> f64 {
    (1.0 + 5.0 * len * len / phi) * logspace::log2_pos(mu)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelParams {
    pub level: usize,
    pub sigma: f64,
    pub sigma_next: f64,
    pub k: f64,
    pub phi: f64,
    pub log2_mu: f64,
    pub log2_lambda_budget: f64,
    pub colors: f64,
    pub log2_ramsey_k: f64,
    pub log2_beta: f64,
    pub log2_lambda: f64,
    pub log2_n: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoreticalReport {
    pub t_size: usize,
    pub c: f64,
    pub levels: Vec<LevelParams>,
    pub log2_final_length: f64,
    pub log2_final_n: f64,
    pub log2_eps_inv: f64,
}

/// Builds the full parameter chain for embedding a tree of `t_size`
/// vertices at exponent budget `c`, reporting every constant in base-2
/// logs. Values overflow to infinity instead of failing; the chain is a
/// tower already for four-vertex trees.
pub fn theoretical_chain(t_size: usize, c: f64) -> Result<TheoreticalReport> {
    if t_size == 0 {
        return Err(Error::input("tree size must be at least 1"));
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::input("c must be in (0, 1]"));
    }
    // sigma ladder: the top level works at c/2, each level below works
    // halfway closer to c
    let mut sigmas = vec![0.0f64; t_size + 1];
    sigmas[t_size] = c / 2.0;
    for t in (1..t_size).rev() {
        sigmas[t] = (sigmas[t + 1] + c) / 2.0;
    }
    let mut levels = Vec::new();
    // level 1: a single vertex embeds in any nonempty block
    let mut prev_log_lambda = 0.0f64;
    let mut prev_k_value = 1.0f64; // blockade length demanded one level down
    let mut prev_log_n = 0.0f64;
    for t in 2..=t_size {
        let sigma = sigmas[t];
        let sigma_next = sigmas[t - 1];
        let k = 2.0 * prev_k_value + 1.0;
        let cap_sigma = (sigma + sigma_next) / 2.0;
        let phi = (sigma_next - cap_sigma) / (k * (k - 1.0).exp2() + 1.0);
        let log2_mu = -k - k.log2();
        let log2_lambda_budget = prev_log_lambda - 2.0 * k - (2.0 * k).log2();
        let colors = if phi > 0.0 {
            (5.0 / (2.0 * phi) + 2.0).floor()
        } else {
            f64::INFINITY
        };
        let (ramsey_value, log2_ramsey_k) = ramsey_upper(colors, k);
        let log2_beta = (1.0 + (5.0 / phi) * ramsey_value * ramsey_value) * log2_mu;
        let log2_lambda = log2_beta + log2_lambda_budget;
        let mu = log2_mu.exp2();
        let n1 = [
            -log2_beta / (cap_sigma - sigma),
            if mu < 1.0 {
                -(1.0 - mu).log2() / (phi / 5.0)
            } else {
                f64::INFINITY
            },
            (1.0 + k * (16.0 * k * k).log2()) / phi,
            prev_log_n,
        ]
        .into_iter()
        .fold(0.0f64, f64::max);
        levels.push(LevelParams {
            level: t,
            sigma,
            sigma_next,
            k,
            phi,
            log2_mu,
            log2_lambda_budget,
            colors,
            log2_ramsey_k,
            log2_beta,
            log2_lambda,
            log2_n: n1,
        });
        prev_log_lambda = log2_lambda;
        prev_k_value = ramsey_value;
        prev_log_n = n1;
    }
    let log2_k = if prev_k_value.is_infinite() {
        f64::INFINITY
    } else {
        prev_k_value.log2()
    };
    let sigma_top = sigmas[t_size];
    let log2_m = prev_log_n
        .max(log2_k)
        .max((1.0 + log2_k) / sigma_top.max(f64::MIN_POSITIVE));
    let log2_eps_inv = log2_m.max(1.0 + log2_k - prev_log_lambda);
    Ok(TheoreticalReport {
        t_size,
        c,
        levels,
        log2_final_length: log2_k,
        log2_final_n: prev_log_n,
        log2_eps_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_ordered;

    #[test]
    fn equal_blockade_splits() {
        let g = OrderedGraph::empty(10);
        let b = Blockade::equal(&g, 2).unwrap();
        assert_eq!(b.block_at(0).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(b.block_at(1).to_vec(), vec![5, 6, 7, 8, 9]);

        let b3 = Blockade::equal(&g, 3).unwrap();
        assert_eq!(b3.widths(), vec![4, 3, 3]);
        assert_eq!(b3.indices(), &[1, 2, 3]);
        assert!(measures(&g, &b3).unwrap().width >= 10 / 3);

        let b1 = Blockade::equal(&g, 1).unwrap();
        let m = measures(&g, &b1).unwrap();
        assert_eq!(m.width, 10);
        assert_eq!(m.shrinkage, 0.0);

        assert!(Blockade::equal(&OrderedGraph::empty(2), 3).is_err());
    }

    #[test]
    fn blockade_validation_rejects_bad_families() {
        let g = OrderedGraph::empty(6);
        // overlap
        let a = g.vertex_set([0, 1]).unwrap();
        let c = g.vertex_set([1, 2]).unwrap();
        assert!(Blockade::new(&g, vec![(1, a.clone()), (2, c)]).is_err());
        // not order-separated
        let d = g.vertex_set([3, 5]).unwrap();
        let e = g.vertex_set([4]).unwrap();
        assert!(Blockade::new(&g, vec![(1, d), (2, e)]).is_err());
        // empty block
        let f = g.vertex_set([]).unwrap();
        assert!(Blockade::new(&g, vec![(1, a), (2, f)]).is_err());
    }

    #[test]
    fn measures_on_complete_cross() {
        // two blocks of 4 with all 16 cross edges
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(8, &edges).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        let m = measures(&g, &b).unwrap();
        assert_eq!(m.linkage, 1.0);
        assert_eq!(m.maxdeg[0][1], 4);
        assert_eq!(m.maxdeg[1][0], 4);
        assert_eq!(m.width, 4);
    }

    #[test]
    fn shrinkage_quarter_on_sixteen() {
        let g = OrderedGraph::empty(16);
        let b = Blockade::equal(&g, 2).unwrap();
        let m = measures(&g, &b).unwrap();
        assert!((m.shrinkage - 0.25).abs() < 1e-12);
    }

    #[test]
    fn anticomplete_blocks_kill_the_product() {
        let g = OrderedGraph::empty(8);
        let b = Blockade::equal(&g, 2).unwrap();
        let m = measures(&g, &b).unwrap();
        assert_eq!(m.maxdeg[0][1], 0);
        assert_eq!(m.log2_maxdeg_product, f64::NEG_INFINITY);
    }

    #[test]
    fn complete_cross_is_resistant() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in 6..12 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(12, &edges).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        // mu well above |G|^(-phi)
        let r = is_shrink_resistant(&g, &b, 0.5, 0.5, CheckMode::Exact).unwrap();
        assert!(r.resistant, "{:?}", r.counterexample);
    }

    #[test]
    fn single_cross_edge_has_counterexample() {
        let g = OrderedGraph::build(8, &[(0, 4)]).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        let r = is_shrink_resistant(&g, &b, 0.5, 0.5, CheckMode::Exact).unwrap();
        assert!(!r.resistant);
        let cx = r.counterexample.unwrap();
        assert!(cx.maxdeg == 0);
    }

    #[test]
    fn exact_check_cap_is_enforced() {
        let g = OrderedGraph::empty(40);
        let b = Blockade::equal(&g, 2).unwrap();
        assert!(matches!(
            is_shrink_resistant(&g, &b, 0.5, 0.5, CheckMode::Exact),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn sampled_check_is_deterministic() {
        let g = random_ordered(24, 0.3, 7);
        let b = Blockade::equal(&g, 3).unwrap();
        let mode = CheckMode::Sampled {
            trials: 64,
            seed: 11,
        };
        let r1 = is_shrink_resistant(&g, &b, 0.4, 0.5, mode).unwrap();
        let r2 = is_shrink_resistant(&g, &b, 0.4, 0.5, mode).unwrap();
        assert_eq!(r1.resistant, r2.resistant);
        assert_eq!(
            format!("{:?}", r1.counterexample),
            format!("{:?}", r2.counterexample)
        );
    }

    #[test]
    fn shrink_resist_keeps_resistant_input_unchanged() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in 6..12 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(12, &edges).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        match shrink_resist(&g, &b, 0.5, 0.5, CheckMode::Exact).unwrap() {
            ShrinkResistOutcome::Resistant {
                blockade,
                certificate,
            } => {
                assert_eq!(certificate.iterations, 0);
                assert_eq!(blockade.widths(), vec![6, 6]);
            }
            _ => panic!("expected resistant"),
        }
    }

    #[test]
    fn shrink_resist_reports_anticomplete_blocks_immediately() {
        let g = OrderedGraph::empty(8);
        let b = Blockade::equal(&g, 2).unwrap();
        match shrink_resist(&g, &b, 0.5, 0.5, CheckMode::Exact).unwrap() {
            ShrinkResistOutcome::Anticomplete {
                h, j, certificate, ..
            } => {
                assert_eq!((h, j), (1, 2));
                assert_eq!(certificate.iterations, 0);
            }
            _ => panic!("expected anticomplete"),
        }
    }

    #[test]
    fn pair_type_arithmetic() {
        // both density ratios exactly 1: complete cross blocks
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(8, &edges).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        assert_eq!(pair_type(&g, &b, 1, 2, 0.1).unwrap(), 1);

        // zero degree is an analysis error
        let e = OrderedGraph::empty(8);
        let be = Blockade::equal(&e, 2).unwrap();
        assert!(matches!(
            pair_type(&e, &be, 1, 2, 0.1),
            Err(Error::Analysis(_))
        ));
    }

    #[test]
    fn pair_type_exponent_case() {
        // |G| = 2^10, both ratios 2^-3, phi = 0.1: smallest t with
        // 2^-2t < 2^-3 <= 2^-2(t-2) is t = 2
        let n = 1024usize;
        let bs = 128usize;
        let d = 16usize; // 16/128 = 2^-3
        let mut edges = Vec::new();
        for u in 0..bs {
            for t in 0..d {
                edges.push((u, bs + (u + t) % bs));
            }
        }
        let g = OrderedGraph::build(n, &edges).unwrap();
        let b1 = g.vertex_set(0..bs).unwrap();
        let b2 = g.vertex_set(bs..2 * bs).unwrap();
        let b = Blockade::new(&g, vec![(1, b1), (2, b2)]).unwrap();
        assert_eq!(pair_type(&g, &b, 1, 2, 0.1).unwrap(), 2);
    }

    #[test]
    fn find_band_on_complete_cross_clamps_tau() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                edges.push((u, v));
            }
        }
        for u in 4..8 {
            for v in 8..12 {
                edges.push((u, v));
            }
        }
        for u in 0..4 {
            for v in 8..12 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(12, &edges).unwrap();
        let b = Blockade::equal(&g, 3).unwrap();
        let sel = find_band(&g, &b, 0.1, 0.75, 3, CheckMode::Exact).unwrap();
        assert_eq!(sel.certificate.tau, 1.0);
        assert!(sel.certificate.validated);
        assert_eq!(sel.indices, vec![1, 2, 3]);
        // the band value dominates the linkage of the selection
        let m = measures(&g, &sel.blockade).unwrap();
        assert!(m.linkage <= sel.certificate.tau + 1e-12);
    }

    #[test]
    fn vacuous_band_selection() {
        let g = OrderedGraph::empty(10);
        let b = Blockade::equal(&g, 4).unwrap();
        let sel = find_band(&g, &b, 0.2, 0.5, 1, CheckMode::Exact).unwrap();
        assert_eq!(sel.indices, vec![1]);
        assert!(sel.certificate.validated);
        assert!(find_band(&g, &b, 0.2, 0.5, 5, CheckMode::Exact).is_err());
    }

    #[test]
    fn theoretical_constants_match_formulas() {
        assert_eq!(band_color_count(0.5), 3);
        let beta = beta_log2_shrink(0.5, 2.0, 1.0);
        assert!((beta.exp2() - 1.0 / 32.0).abs() < 1e-15);
        assert_eq!(ramsey_upper(3.0, 1.0).0, 1.0);
        assert_eq!(ramsey_upper(3.0, 2.0).0, 2.0);
        let (v, l) = ramsey_upper(3.0, 3.0);
        assert!((l - 9.0 * 3f64.log2()).abs() < 1e-12);
        assert!((v - 3f64.powi(9)).abs() < 1e-3);
    }

    #[test]
    fn theoretical_chain_is_monotone_and_overflows_gracefully() {
        let r = theoretical_chain(3, 0.5).unwrap();
        assert_eq!(r.levels.len(), 2);
        assert!(r.log2_eps_inv > 0.0);
        let big = theoretical_chain(6, 0.5).unwrap();
        assert!(big.log2_eps_inv.is_infinite() || big.log2_eps_inv > 1e6);
    }

    #[test]
    fn jsonl_round_trip() {
        let g = OrderedGraph::empty(9);
        let b = Blockade::equal(&g, 3).unwrap();
        let text = b.to_jsonl();
        let b2 = Blockade::from_jsonl(&g, &text).unwrap();
        assert_eq!(b2.widths(), b.widths());
        assert_eq!(b2.indices(), b.indices());
        assert!(Blockade::from_jsonl(&g, "[0,1]\n[1,2]\n").is_err());
    }
}
