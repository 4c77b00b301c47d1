//! Drivers that turn the blockade machinery into embeddings and witnesses.
//!
//! The rainbow embedder follows the constructive recursion: remove a leaf,
//! leaf-cover a selection of blocks, embed the smaller tree into the even
//! blocks, then pull the missing leaf out of a cover set in the interleaved
//! odd block between its neighbours. At desk scale the machinery usually
//! trips a precondition and the driver falls back to direct search; which
//! stage produced the answer is recorded so tests can assert it.

use serde::Serialize;

use crate::blockade::{Blockade, CheckMode, Rigor};
use crate::error::Error;
use crate::graph::{OrderedGraph, VertexSet};
use crate::leafcover::{full_leaf_cover, FullLeafCover};
use crate::logspace::{self, floor_count, log2_count};
use crate::patterns::{self, Embedding};
use crate::purepair::{self, Polarity, PurePairWitness, SearchMode, TrichotomyOutcome};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbedMode {
    Theoretical,
    Practical,
    Direct,
}

impl EmbedMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "theoretical" => Ok(EmbedMode::Theoretical),
            "practical" => Ok(EmbedMode::Practical),
            "direct" => Ok(EmbedMode::Direct),
            other => Err(Error::input(format!("unknown embed mode: {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbedStage {
    Machinery,
    Direct,
}

#[derive(Clone, Debug)]
pub struct RainbowOutcome {
    pub embedding: Option<Embedding>,
    pub stage: Option<EmbedStage>,
    pub trace: Vec<String>,
}

/// Practical machinery constants: the largest legal resolution and a
/// three-quarter fraction keep the resistance and band thresholds above one
/// vertex at desk-scale |G|, where the derived constants cannot.
pub const PRACTICAL_PHI: f64 = 1.0;
pub const PRACTICAL_MU: f64 = 0.75;

/// Rainbow-embeds an ordered tree into the blockade. Direct mode searches
/// outright; practical mode runs the leaf-covering recursion and falls back
/// to direct search when the machinery cannot complete; theoretical mode
/// demands the full parameter chain and reports which hypothesis failed.
/// `phi_mu` overrides the leaf-covering constants; `None` means the
/// practical defaults in practical mode and the derived ones otherwise.
pub fn embed_rainbow_tree(
    g: &OrderedGraph,
    blockade: &Blockade,
    tree: &OrderedGraph,
    c: f64,
    sigma: f64,
    mode: EmbedMode,
    phi_mu: Option<(f64, f64)>,
    check: CheckMode,
) -> Result<RainbowOutcome> {
    blockade.check_host(g)?;
    if !patterns::is_ordered_tree(tree) {
        return Err(Error::input("rainbow embedding requires an ordered tree"));
    }
    if !(0.0 < c && c <= 1.0 && 0.0 <= sigma && sigma < c) {
        return Err(Error::input("need 0 <= sigma < c <= 1"));
    }
    let mut trace = Vec::new();
    match mode {
        EmbedMode::Direct => {
            let embedding = patterns::find_rainbow_copy(g, blockade, tree)?;
            let stage = embedding.is_some().then_some(EmbedStage::Direct);
            Ok(RainbowOutcome {
                embedding,
                stage,
                trace,
            })
        }
        EmbedMode::Practical => {
            let knobs = Some(phi_mu.unwrap_or((PRACTICAL_PHI, PRACTICAL_MU)));
            match embed_recursive(g, blockade, tree, c, sigma, knobs, check, &mut trace) {
                Ok(Some(emb)) => {
                    emb.validate_rainbow(g, blockade, tree)?;
                    Ok(RainbowOutcome {
                        embedding: Some(emb),
                        stage: Some(EmbedStage::Machinery),
                        trace,
                    })
                }
                Ok(None) | Err(_) => {
                    trace.push("machinery incomplete; trying direct search".into());
                    let embedding = patterns::find_rainbow_copy(g, blockade, tree)?;
                    let stage = embedding.is_some().then_some(EmbedStage::Direct);
                    Ok(RainbowOutcome {
                        embedding,
                        stage,
                        trace,
                    })
                }
            }
        }
        EmbedMode::Theoretical => {
            let chain = crate::blockade::theoretical_chain(tree.n(), c)?;
            let mut failures = Vec::new();
            if !logspace::ge(log2_count(g.n()), chain.log2_final_n) {
                failures.push(format!(
                    "|G| >= N fails: log2|G|={:.3} < log2 N={:.3}",
                    log2_count(g.n()),
                    chain.log2_final_n
                ));
            }
            if !logspace::ge(log2_count(blockade.len()), chain.log2_final_length) {
                failures.push(format!(
                    "blockade length >= K fails: log2 len={:.3} < log2 K={:.3}",
                    log2_count(blockade.len()),
                    chain.log2_final_length
                ));
            }
            let m = crate::blockade::measures(g, blockade)?;
            if !logspace::le(logspace::log2_pos(m.shrinkage), logspace::log2_pos(sigma)) {
                failures.push(format!("shrinkage {} exceeds sigma {}", m.shrinkage, sigma));
            }
            if !failures.is_empty() {
                failures.push("fallback: rerun with mode=practical".into());
                return Err(Error::Precondition {
                    context: "embed_rainbow_tree (theoretical)".into(),
                    failures,
                });
            }
            let embedding = embed_recursive(g, blockade, tree, c, sigma, phi_mu, check, &mut trace)?;
            if let Some(e) = &embedding {
                e.validate_rainbow(g, blockade, tree)?;
            }
            let stage = embedding.is_some().then_some(EmbedStage::Machinery);
            Ok(RainbowOutcome {
                embedding,
                stage,
                trace,
            })
        }
    }
}

/// Blocks needed by the recursion for a tree of the given size: one block
/// for a single vertex, then length 2k+1 per level up.
fn blocks_needed(tree_size: usize) -> usize {
    (1usize << tree_size.max(1)) - 1
}

#[allow(clippy::too_many_arguments)]
fn embed_recursive(
    g: &OrderedGraph,
    blockade: &Blockade,
    tree: &OrderedGraph,
    c: f64,
    sigma: f64,
    phi_mu: Option<(f64, f64)>,
    check: CheckMode,
    trace: &mut Vec<String>,
) -> Result<Option<Embedding>> {
    if tree.n() == 1 {
        if blockade.is_empty() {
            trace.push("no block for the final vertex".into());
            return Ok(None);
        }
        let v = blockade.block_at(0).first().unwrap();
        return Ok(Some(Embedding { map: vec![v] }));
    }
    // drop the leaf with the largest order position
    let leaf = (0..tree.n())
        .rev()
        .find(|&v| tree.degree(v) == 1)
        .expect("a tree on >= 2 vertices has a leaf");
    let parent = tree.neighbors(leaf).first().unwrap();
    let smaller = delete_vertex(tree, leaf);
    trace.push(format!("drop leaf at position {leaf}, neighbour {parent}"));
    let k = 2 * blocks_needed(smaller.n()) + 1;
    if blockade.len() < k {
        trace.push(format!(
            "need {k} blocks for a {}-vertex tree, have {}",
            tree.n(),
            blockade.len()
        ));
        return Ok(None);
    }
    let sigma_next = (sigma + c) / 2.0;
    let cover = full_leaf_cover(
        g,
        blockade,
        k,
        c,
        sigma,
        sigma_next,
        1.0,
        phi_mu,
        Rigor::Practical,
        check,
    )?;
    let selection = match cover {
        FullLeafCover::Anticomplete { .. } => {
            trace.push("selector produced an anticomplete pair, not a band".into());
            return Ok(None);
        }
        FullLeafCover::Selected(sel) => sel,
    };
    let picked = selection.indices.clone();
    trace.push(format!("selected blocks {picked:?}"));
    // even positions host the smaller tree, odd positions hold covers
    let h_part: Vec<usize> = picked.iter().skip(1).step_by(2).copied().collect();
    let j_part: Vec<usize> = picked.iter().step_by(2).copied().collect();
    let part = selection.for_partition(g, &h_part, &j_part, Rigor::Practical, check)?;
    if !part.warnings.is_empty() {
        trace.push(format!("partition warnings: {}", part.warnings.join("; ")));
    }
    let h_blockade = part.leaf.blockade.sub_blockade(&h_part)?;
    let inner = embed_recursive(g, &h_blockade, &smaller, c, sigma_next, phi_mu, check, trace)?;
    let images = match inner {
        Some(e) => e.map,
        None => {
            trace.push("no rainbow copy of the smaller tree".into());
            return Ok(None);
        }
    };
    // block (index value) of the images on either side of the leaf position
    let block_of = |v: usize| -> usize {
        let pos = part.leaf.blockade.block_position_of_vertex(v).unwrap();
        part.leaf.blockade.index_at(pos)
    };
    let before = (leaf > 0).then(|| block_of(images[leaf - 1]));
    let after = (leaf < tree.n() - 1).then(|| block_of(images[leaf]));
    let j = j_part
        .iter()
        .copied()
        .find(|&j| before.map_or(true, |b| b < j) && after.map_or(true, |a| j < a));
    let j = match j {
        Some(j) => j,
        None => {
            trace.push("no interleaved block between the neighbour images".into());
            return Ok(None);
        }
    };
    let parent_image = images[if parent < leaf { parent } else { parent - 1 }];
    let parent_block = block_of(parent_image);
    let cover = match part.leaf.covers.get(&(parent_block, j)) {
        Some(x) => x,
        None => {
            trace.push(format!("no cover for pair ({parent_block},{j})"));
            return Ok(None);
        }
    };
    let attach = cover
        .iter()
        .copied()
        .find(|&v| g.has_edge(v, parent_image));
    let attach = match attach {
        Some(v) => v,
        None => {
            trace.push("cover does not reach the neighbour image".into());
            return Ok(None);
        }
    };
    trace.push(format!("leaf carried by vertex {attach} of block {j}"));
    let mut map = images;
    map.insert(leaf, attach);
    let emb = Embedding { map };
    if emb.validate_rainbow(g, blockade, tree).is_err() {
        trace.push("assembled embedding failed validation".into());
        return Ok(None);
    }
    Ok(Some(emb))
}

fn delete_vertex(t: &OrderedGraph, drop: usize) -> OrderedGraph {
    let shift = |v: usize| if v > drop { v - 1 } else { v };
    let edges: Vec<(usize, usize)> = t
        .edges()
        .into_iter()
        .filter(|&(u, v)| u != drop && v != drop)
        .map(|(u, v)| (shift(u), shift(v)))
        .collect();
    OrderedGraph::build(t.n() - 1, &edges).expect("vertex deletion")
}

/// Connects a forest into a tree by one trailing hub vertex adjacent to the
/// last vertex of each component. New vertices occupy strictly later
/// positions, so any induced ordered copy of the result restricts to one of
/// the original forest.
pub fn augment_to_tree(forest: &OrderedGraph) -> Result<(OrderedGraph, bool)> {
    if forest.n() == 0 {
        return Err(Error::input("cannot augment an empty forest"));
    }
    if !patterns::is_ordered_forest(forest) {
        return Err(Error::input("augmentation requires a forest"));
    }
    if patterns::is_ordered_tree(forest) {
        return Ok((forest.clone(), false));
    }
    // last vertex of each component
    let mut parent: Vec<usize> = (0..forest.n()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in forest.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut last_of = std::collections::BTreeMap::new();
    for v in 0..forest.n() {
        let r = find(&mut parent, v);
        last_of.insert(r, v); // ascending sweep keeps the largest
    }
    let hub = forest.n();
    let mut edges = forest.edges();
    for (_, &v) in &last_of {
        edges.push((v, hub));
    }
    let tree = OrderedGraph::build(forest.n() + 1, &edges)?;
    debug_assert!(patterns::is_ordered_tree(&tree));
    Ok((tree, true))
}

// ---- the sparse trichotomy driver ---------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SparseDriverReport {
    pub eps: f64,
    pub eps_source: String,
    pub c: f64,
    pub blockade_length: usize,
    pub blockade_width: usize,
    pub degree_threshold: usize,
    pub pair_floor: usize,
    pub tree_augmented: bool,
    pub copy_stage: Option<EmbedStage>,
    pub log2_theoretical_eps_inv: f64,
}

/// The sparse trichotomy: builds an equal blockade, then checks the horns
/// in fixed order — heavy vertex, copy of the forest (machinery first,
/// plain containment as the complete fallback), anticomplete pair.
///
/// Desk-scale thresholds round *down*: a vertex qualifies at degree
/// `floor(eps*n)` and the pair floor is `floor(n^(1-c))`, both at least 1.
/// With the ceiling reading the conclusion is already false on five-vertex
/// instances, so the floor reading is what keeps the trichotomy total on
/// small graphs.
pub fn verysparse_witness(
    g: &OrderedGraph,
    forest: &OrderedGraph,
    c: f64,
    eps_override: Option<f64>,
    check: CheckMode,
) -> Result<(TrichotomyOutcome, SparseDriverReport)> {
    if !patterns::is_ordered_forest(forest) {
        return Err(Error::input("the sparse driver requires an ordered forest"));
    }
    if !(0.0 < c && c <= 1.0) {
        return Err(Error::input("c must be in (0, 1]"));
    }
    let n = g.n();
    let (tree, augmented) = if forest.n() == 0 {
        (OrderedGraph::build(1, &[])?, true)
    } else {
        augment_to_tree(forest)?
    };
    let chain = crate::blockade::theoretical_chain(tree.n(), c)?;
    let (eps, eps_source) = match eps_override {
        Some(e) => {
            if !(0.0 < e && e <= 1.0) {
                return Err(Error::input("eps must be in (0, 1]"));
            }
            (e, "override".to_string())
        }
        None => ((-chain.log2_eps_inv).exp2(), "theoretical".to_string()),
    };
    let degree_threshold = floor_count(eps * n as f64).max(1);
    let pair_floor = floor_count((n as f64).powf(1.0 - c)).max(1);
    let blockade_length = blocks_needed(tree.n()).clamp(1, n.max(1));
    let mut report = SparseDriverReport {
        eps,
        eps_source,
        c,
        blockade_length,
        blockade_width: 0,
        degree_threshold,
        pair_floor,
        tree_augmented: augmented,
        copy_stage: None,
        log2_theoretical_eps_inv: chain.log2_eps_inv,
    };
    if n == 0 {
        return Ok((
            TrichotomyOutcome::Exhausted {
                report: "empty graph".into(),
            },
            report,
        ));
    }
    // horn 1: a heavy vertex
    if let Some((v, d)) = g.max_degree_vertex() {
        if d >= degree_threshold {
            return Ok((TrichotomyOutcome::HighDegreeVertex { v, degree: d }, report));
        }
    }
    // horn 2: a copy of the forest; machinery on the augmented tree first,
    // plain containment of the forest itself as the complete fallback
    if forest.n() == 0 {
        return Ok((TrichotomyOutcome::Copy(Embedding { map: vec![] }), report));
    }
    if n >= blockade_length {
        let blockade = Blockade::equal(g, blockade_length)?;
        report.blockade_width = blockade.widths().into_iter().min().unwrap_or(0);
        let outcome = embed_rainbow_tree(
            g,
            &blockade,
            &tree,
            c,
            c / 2.0,
            EmbedMode::Practical,
            None,
            check,
        )?;
        if let Some(emb) = outcome.embedding {
            report.copy_stage = outcome.stage;
            let restricted = Embedding {
                map: emb.map[..forest.n()].to_vec(),
            };
            restricted.validate(g, forest)?;
            return Ok((TrichotomyOutcome::Copy(restricted), report));
        }
    }
    if let Some(emb) = patterns::contains_ordered(g, forest) {
        report.copy_stage = Some(EmbedStage::Direct);
        return Ok((TrichotomyOutcome::Copy(emb), report));
    }
    // horn 3: an anticomplete pair above the floor
    let mode = if n <= purepair::EXACT_PAIR_CAP {
        SearchMode::Exact
    } else {
        SearchMode::BranchBound
    };
    if let Some(w) = purepair::best_anticomplete_pair(g, mode, Some(pair_floor))? {
        return Ok((TrichotomyOutcome::Pair(w), report));
    }
    Ok((
        TrichotomyOutcome::Exhausted {
            report: format!(
                "degree_threshold={degree_threshold} pair_floor={pair_floor} pair_mode={}",
                if mode == SearchMode::Exact { "exact" } else { "branch_bound" }
            ),
        },
        report,
    ))
}

// ---- degree peeling --------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractSide {
    Sparse,
    Dense,
}

#[derive(Clone, Debug)]
pub struct RodlExtract {
    pub set: VertexSet,
    pub side: ExtractSide,
    pub delta_effective: f64,
}

/// Greedy peeling: on each side (the graph or its complement), repeatedly
/// delete the maximum-degree vertex of the current induced subgraph until
/// every degree is below `eps * |X|`; the larger surviving set wins, the
/// sparse side on ties. A singleton always qualifies, so the result is
/// never empty. No size guarantee is claimed; the degree condition is
/// re-validated before returning.
pub fn rodl_extract(g: &OrderedGraph, eps: f64) -> Result<RodlExtract> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::input("eps must be in (0, 1]"));
    }
    if g.n() == 0 {
        return Err(Error::input("cannot extract from the empty graph"));
    }
    let sparse = peel(g, eps);
    let co = g.complement();
    let dense = peel(&co, eps);
    let (verts, side) = if dense.len() > sparse.len() {
        (dense, ExtractSide::Dense)
    } else {
        (sparse, ExtractSide::Sparse)
    };
    // independent re-check of the degree condition
    let host = match side {
        ExtractSide::Sparse => g.clone(),
        ExtractSide::Dense => co,
    };
    let bits = crate::bits::BitSet::from_indices(g.n(), verts.iter().copied());
    for &v in &verts {
        if (host.degree_into(v, &bits) as f64) >= eps * verts.len() as f64 {
            return Err(Error::Analysis(format!(
                "peeling left vertex {v} above the degree bound"
            )));
        }
    }
    Ok(RodlExtract {
        set: g.vertex_set(verts.iter().copied())?,
        side,
        delta_effective: verts.len() as f64 / g.n() as f64,
    })
}

fn peel(h: &OrderedGraph, eps: f64) -> Vec<usize> {
    let mut alive = crate::bits::BitSet::full(h.n());
    loop {
        let size = alive.len();
        let worst = alive
            .iter()
            .map(|v| (h.degree_into(v, &alive), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .unwrap();
        if (worst.0 as f64) < eps * size as f64 {
            return alive.to_vec();
        }
        alive.remove(worst.1);
    }
}

// ---- the pure-pair driver ----------------------------------------------------------

#[derive(Clone, Debug)]
pub enum MainPairOutcome {
    Pure(PurePairWitness),
    /// The freeness precondition failed; the found copy is the diagnostic.
    ContainsPattern {
        complemented: bool,
        embedding: Embedding,
    },
    Exhausted {
        report: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct MainPairReport {
    pub side: Option<ExtractSide>,
    pub delta_effective: f64,
    pub extract_size: usize,
    pub pair_floor: usize,
    pub log2_target_size: f64,
}

/// Full pure-pair driver: peel a one-sided-sparse set, then search it for
/// an anticomplete pair, complementing back if the dense side won. Two
/// singletons are always a pure pair, so graphs whose extraction degenerates
/// still produce a witness.
///
/// The excluded pattern may be any ordered graph; the size guarantee of the
/// underlying argument only covers forests, but the search is well-defined
/// whenever the pattern and its complement are absent.
pub fn main_pure_pair(
    g: &OrderedGraph,
    forest: &OrderedGraph,
    c: f64,
    eps: f64,
) -> Result<(MainPairOutcome, MainPairReport)> {
    if !(0.0 < c && c <= 1.0) {
        return Err(Error::input("c must be in (0, 1]"));
    }
    let mut report = MainPairReport {
        side: None,
        delta_effective: 0.0,
        extract_size: 0,
        pair_floor: 0,
        log2_target_size: (1.0 - c) * log2_count(g.n().max(1)),
    };
    if let Some(e) = patterns::contains_ordered(g, forest) {
        return Ok((
            MainPairOutcome::ContainsPattern {
                complemented: false,
                embedding: e,
            },
            report,
        ));
    }
    if let Some(e) = patterns::contains_ordered(g, &forest.complement()) {
        return Ok((
            MainPairOutcome::ContainsPattern {
                complemented: true,
                embedding: e,
            },
            report,
        ));
    }
    if g.n() < 2 {
        return Ok((
            MainPairOutcome::Exhausted {
                report: "need at least two vertices".into(),
            },
            report,
        ));
    }
    let extract = rodl_extract(g, eps)?;
    report.side = Some(extract.side);
    report.delta_effective = extract.delta_effective;
    report.extract_size = extract.set.len();
    if extract.set.len() == 1 {
        // two singletons are pure whatever the adjacency says
        let z1 = g.vertex_set([0])?;
        let z2 = g.vertex_set([1])?;
        let polarity = if g.has_edge(0, 1) {
            Polarity::Complete
        } else {
            Polarity::Anticomplete
        };
        let w = PurePairWitness::new(g, z1, z2, polarity)?;
        return Ok((MainPairOutcome::Pure(w), report));
    }
    let (induced, labels) = match extract.side {
        ExtractSide::Sparse => g.induced(&extract.set)?,
        ExtractSide::Dense => {
            let co = g.complement();
            let set = co.vertex_set(extract.set.to_vec())?;
            co.induced(&set)?
        }
    };
    let floor = floor_count((induced.n() as f64).powf(1.0 - c)).max(1);
    report.pair_floor = floor;
    let mode = if induced.n() <= purepair::EXACT_PAIR_CAP {
        SearchMode::Exact
    } else {
        SearchMode::BranchBound
    };
    let found = purepair::best_anticomplete_pair(&induced, mode, Some(floor))?
        .or(purepair::best_anticomplete_pair(&induced, SearchMode::Greedy, None)?);
    match found {
        Some(w) => {
            let z1 = g.vertex_set(w.z1.iter().map(|v| labels[v]))?;
            let z2 = g.vertex_set(w.z2.iter().map(|v| labels[v]))?;
            let polarity = match extract.side {
                ExtractSide::Sparse => Polarity::Anticomplete,
                ExtractSide::Dense => Polarity::Complete,
            };
            let w = PurePairWitness::new(g, z1, z2, polarity)?;
            Ok((MainPairOutcome::Pure(w), report))
        }
        None => Ok((
            MainPairOutcome::Exhausted {
                report: format!("no anticomplete pair in the extract at floor {floor}"),
            },
            report,
        )),
    }
}
