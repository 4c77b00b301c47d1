//! Ordered induced-subgraph containment, rainbow containment relative to a
//! blockade, and the library of named gadget patterns.
//!
//! The matcher is depth-first over pattern vertices in label order with two
//! prunings: candidate host vertices must exceed the previous image, and
//! adjacency to all earlier images must match exactly. The first complete
//! assignment in this order is the lexicographically least embedding, which
//! is the tie-breaking contract all drivers rely on.

use serde::Serialize;

use crate::blockade::Blockade;
use crate::error::Error;
use crate::graph::OrderedGraph;
use crate::Result;

/// An order-preserving induced-subgraph witness: `map[i]` is the host vertex
/// carrying pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Independent validator, deliberately a separate code path from the
    /// search: checks the map is strictly increasing and induced.
    pub fn validate(&self, host: &OrderedGraph, pattern: &OrderedGraph) -> Result<()> {
        if self.map.len() != pattern.n() {
            return Err(Error::input(format!(
                "embedding has {} images for a {}-vertex pattern",
                self.map.len(),
                pattern.n()
            )));
        }
        for w in self.map.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::input("embedding is not strictly increasing"));
            }
        }
        if let Some(&last) = self.map.last() {
            if last >= host.n() {
                return Err(Error::input("embedding image out of range"));
            }
        }
        for i in 0..self.map.len() {
            for j in i + 1..self.map.len() {
                let want = pattern.has_edge(i, j);
                let got = host.has_edge(self.map[i], self.map[j]);
                if want != got {
                    return Err(Error::input(format!(
                        "embedding not induced at pattern pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Validator for rainbow embeddings: induced + order-preserving, every
    /// image inside a block, at most one image per block.
    pub fn validate_rainbow(
        &self,
        host: &OrderedGraph,
        blockade: &Blockade,
        pattern: &OrderedGraph,
    ) -> Result<()> {
        self.validate(host, pattern)?;
        let mut used = Vec::with_capacity(self.map.len());
        for &v in &self.map {
            match blockade.block_position_of_vertex(v) {
                Some(pos) => {
                    if used.contains(&pos) {
                        return Err(Error::input(format!(
                            "two embedding images share block at position {pos}"
                        )));
                    }
                    used.push(pos);
                }
                None => {
                    return Err(Error::input(format!(
                        "embedding image {v} lies outside every block"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Space-separated host-vertex list, the CLI wire form.
    pub fn to_line(&self) -> String {
        self.map
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Finds the lexicographically least order-preserving induced embedding of
/// `pattern` in `host`, if any.
pub fn contains_ordered(host: &OrderedGraph, pattern: &OrderedGraph) -> Option<Embedding> {
    if pattern.n() == 0 {
        return Some(Embedding { map: vec![] });
    }
    if pattern.n() > host.n() {
        return None;
    }
    let mut images = Vec::with_capacity(pattern.n());
    if dfs_match(host, pattern, &mut images, None) {
        let emb = Embedding { map: images };
        debug_assert!(emb.validate(host, pattern).is_ok());
        Some(emb)
    } else {
        None
    }
}

/// Finds the lexicographically least embedding that is additionally rainbow
/// with respect to `blockade`: every image in a block, one image per block.
pub fn find_rainbow_copy(
    host: &OrderedGraph,
    blockade: &Blockade,
    pattern: &OrderedGraph,
) -> Result<Option<Embedding>> {
    blockade.check_host(host)?;
    if pattern.n() == 0 {
        return Ok(Some(Embedding { map: vec![] }));
    }
    if pattern.n() > blockade.len() {
        return Ok(None);
    }
    let mut images = Vec::with_capacity(pattern.n());
    let found = dfs_match(host, pattern, &mut images, Some(blockade));
    Ok(found.then(|| {
        let emb = Embedding { map: images };
        debug_assert!(emb.validate_rainbow(host, blockade, pattern).is_ok());
        emb
    }))
}

fn dfs_match(
    host: &OrderedGraph,
    pattern: &OrderedGraph,
    images: &mut Vec<usize>,
    rainbow: Option<&Blockade>,
) -> bool {
    let pv = images.len();
    if pv == pattern.n() {
        return true;
    }
    let start = images.last().map_or(0, |&h| h + 1);
    // Leave room for the remaining pattern vertices.
    let end = host.n() - (pattern.n() - pv - 1);
    'candidates: for h in start..end {
        if let Some(b) = rainbow {
            match b.block_position_of_vertex(h) {
                // Blocks are order-separated, so strictly increasing block
                // positions are forced by checking against the previous one.
                Some(pos) => {
                    if let Some(&prev) = images.last() {
                        let prev_pos = b.block_position_of_vertex(prev).unwrap();
                        if pos <= prev_pos {
                            continue 'candidates;
                        }
                    }
                    // Remaining pattern vertices need remaining blocks.
                    if b.len() - pos < pattern.n() - pv {
                        return false;
                    }
                }
                None => continue 'candidates,
            }
        }
        for (pu, &hu) in images.iter().enumerate() {
            if pattern.has_edge(pu, pv) != host.has_edge(hu, h) {
                continue 'candidates;
            }
        }
        images.push(h);
        if dfs_match(host, pattern, images, rainbow) {
            return true;
        }
        images.pop();
    }
    false
}

/// True iff the underlying graph of `h` is acyclic.
pub fn is_ordered_forest(h: &OrderedGraph) -> bool {
    // union-find over vertices; an edge closing a component is a cycle
    let mut parent: Vec<usize> = (0..h.n()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in h.edges() {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// True iff `h` is a tree: acyclic and connected (and nonempty).
pub fn is_ordered_tree(h: &OrderedGraph) -> bool {
    h.n() >= 1 && is_ordered_forest(h) && h.m() == h.n() - 1
}

/// The gadget pattern library. `k` is only consulted for `monotone_path`.
pub fn pattern(name: &str, k: Option<usize>) -> Result<OrderedGraph> {
    match name {
        "monotone_path" => {
            let k = k.ok_or_else(|| Error::input("monotone_path requires a size k >= 1"))?;
            if k < 1 {
                return Err(Error::input("monotone_path requires k >= 1"));
            }
            let edges: Vec<_> = (0..k - 1).map(|i| (i, i + 1)).collect();
            OrderedGraph::build(k, &edges)
        }
        "fox_path" => OrderedGraph::build(3, &[(0, 1), (1, 2)]),
        "double_leaf_forest" => OrderedGraph::build(4, &[(0, 1), (1, 3)]),
        "h1" => OrderedGraph::build(4, &[(0, 1), (0, 2), (0, 3)]),
        "h2" => OrderedGraph::build(4, &[(1, 2), (0, 2), (0, 3)]),
        other => Err(Error::input(format!("unknown pattern name: {other}"))),
    }
}

/// Names accepted by [`pattern`].
pub const PATTERN_NAMES: [&str; 5] = [
    "monotone_path",
    "fox_path",
    "double_leaf_forest",
    "h1",
    "h2",
];
