//! Ordered graphs with packed-bit adjacency rows.
//!
//! Vertex identity *is* the order: vertex `i` precedes vertex `j` iff
//! `i < j`. No separate permutation is stored; callers relabel on ingestion.
//! Graphs and vertex sets are immutable after construction and safe to read
//! from any number of threads; all mutation happens by building new values.

use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::bits::BitSet;
use crate::error::Error;
use crate::Result;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// A finite ordered graph: no loops, no parallel edges, symmetric adjacency.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    uid: u64,
    n: usize,
    m: usize,
    adj: Vec<BitSet>,
}

/// A subset of the vertices of one particular [`OrderedGraph`]. Carries the
/// host's identity so that cross-graph set use is a checked error rather
/// than silent nonsense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    host: u64,
    bits: BitSet,
}

impl OrderedGraph {
    /// Builds a graph on `n` vertices with exactly the given edges,
    /// symmetrized; duplicates coalesce.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BitSet::new(n); n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            if !adj[u].contains(v) {
                adj[u].insert(v);
                adj[v].insert(u);
                m += 1;
            }
        }
        Ok(OrderedGraph {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            n,
            m,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, &[]).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::build(n, &edges).expect("complete graph")
    }

    /// Same vertices, same order, complemented edge set.
    pub fn complement(&self) -> Self {
        let mut adj = Vec::with_capacity(self.n);
        for (v, row) in self.adj.iter().enumerate() {
            let mut r = BitSet::full(self.n).minus(row);
            r.remove(v);
            adj.push(r);
        }
        let m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        OrderedGraph {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            n: self.n,
            m,
            adj,
        }
    }

    /// Relabels `i -> n-1-i`, reversing the vertex order.
    pub fn reverse(&self) -> Self {
        let n = self.n;
        let mut edges = Vec::with_capacity(self.m);
        for (u, v) in self.edges() {
            edges.push((n - 1 - v, n - 1 - u));
        }
        Self::build(n, &edges).expect("reverse")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn uid(&self) -> u64 {
        self.uid
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    /// Degree of `v` into an arbitrary bit set (word-parallel popcount).
    #[inline]
    pub fn degree_into(&self, v: usize, set: &BitSet) -> usize {
        self.adj[v].and_count(set)
    }

    /// Edges in canonical order: (u,v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Max over `v` of degree; `None` on the empty graph.
    pub fn max_degree_vertex(&self) -> Option<(usize, usize)> {
        (0..self.n).map(|v| (v, self.degree(v))).max_by(|a, b| {
            a.1.cmp(&b.1).then(b.0.cmp(&a.0)) // largest degree, least vertex
        })
    }

    // ---- vertex sets -------------------------------------------------

    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, iter: I) -> Result<VertexSet> {
        let mut bits = BitSet::new(self.n);
        for v in iter {
            if v >= self.n {
                return Err(Error::input(format!("vertex {v} out of range (n={})", self.n)));
            }
            bits.insert(v);
        }
        Ok(VertexSet {
            host: self.uid,
            bits,
        })
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet {
            host: self.uid,
            bits: BitSet::full(self.n),
        }
    }

    pub fn set_from_bits(&self, bits: BitSet) -> VertexSet {
        debug_assert_eq!(bits.capacity(), self.n);
        VertexSet {
            host: self.uid,
            bits,
        }
    }

    fn check_host(&self, s: &VertexSet, what: &str) -> Result<()> {
        if s.host != self.uid {
            return Err(Error::input(format!(
                "{what}: vertex set belongs to a different graph"
            )));
        }
        Ok(())
    }

    /// Max over `v in x` of `|N(v) ∩ y|`. Asymmetric in general.
    pub fn max_degree_from(&self, x: &VertexSet, y: &VertexSet) -> Result<usize> {
        self.check_host(x, "max_degree_from")?;
        self.check_host(y, "max_degree_from")?;
        if x.is_empty() {
            return Err(Error::input("max_degree_from: X is empty"));
        }
        if x.bits.intersects(&y.bits) {
            return Err(Error::input("max_degree_from: X and Y overlap"));
        }
        Ok(self.max_degree_from_bits(&x.bits, &y.bits))
    }

    /// Unchecked bit-level variant used by the blockade machinery, where
    /// disjointness is a structural invariant.
    pub fn max_degree_from_bits(&self, x: &BitSet, y: &BitSet) -> usize {
        x.iter().map(|v| self.adj[v].and_count(y)).max().unwrap_or(0)
    }

    /// True iff there are no edges between `a` and `b`.
    pub fn is_anticomplete(&self, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        self.check_pair(a, b, "is_anticomplete")?;
        Ok(self.anticomplete_bits(&a.bits, &b.bits))
    }

    /// True iff all `|A||B|` edges between `a` and `b` are present.
    pub fn is_complete(&self, a: &VertexSet, b: &VertexSet) -> Result<bool> {
        self.check_pair(a, b, "is_complete")?;
        let bn = b.bits.len();
        Ok(a.bits.iter().all(|v| self.adj[v].and_count(&b.bits) == bn))
    }

    pub fn anticomplete_bits(&self, a: &BitSet, b: &BitSet) -> bool {
        a.iter().all(|v| !self.adj[v].intersects(b))
    }

    fn check_pair(&self, a: &VertexSet, b: &VertexSet, what: &str) -> Result<()> {
        self.check_host(a, what)?;
        self.check_host(b, what)?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::input(format!("{what}: empty side")));
        }
        if a.bits.intersects(&b.bits) {
            return Err(Error::input(format!("{what}: sides overlap")));
        }
        Ok(())
    }

    /// Induced subgraph on `set`, relabeled to `0..|set|` in order.
    /// Returns the graph and the map from new labels to old.
    pub fn induced(&self, set: &VertexSet) -> Result<(OrderedGraph, Vec<usize>)> {
        self.check_host(set, "induced")?;
        let keep = set.to_vec();
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Ok((OrderedGraph::build(keep.len(), &edges)?, keep))
    }

    // ---- OGR v1 text format ------------------------------------------

    /// Canonical OGR v1 serialization: `n m` then one `u v` line per edge,
    /// edges sorted lexicographically.
    pub fn to_ogr_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n, self.m));
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses OGR v1 text. Lines starting with `#` are comments and may
    /// appear anywhere; blank lines are ignored.
    pub fn from_ogr_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::format("empty OGR input"))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::format("bad OGR header: expected `n m`"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::format("bad OGR header: expected `n m`"))?;
        if it.next().is_some() {
            return Err(Error::format("bad OGR header: trailing tokens"));
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::format(format!("bad OGR edge line: {line:?}")))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::format(format!("bad OGR edge line: {line:?}")))?;
            if it.next().is_some() {
                return Err(Error::format(format!("bad OGR edge line: {line:?}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::format(format!(
                "OGR header says {m} edges, file has {}",
                edges.len()
            )));
        }
        Self::build(n, &edges)
    }

    pub fn read_ogr<R: BufRead>(mut reader: R) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::from_ogr_str(&text)
    }

    pub fn write_ogr<W: Write>(&self, mut writer: W) -> Result<()> {
        writer.write_all(self.to_ogr_string().as_bytes())?;
        Ok(())
    }
}

impl VertexSet {
    #[inline]
    pub fn host(&self) -> u64 {
        self.host
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    #[inline]
    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    /// Members in increasing order.
    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.first()
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            host: self.host,
            bits: self.bits.minus(&other.bits),
        }
    }

    /// Same host, new members. Crate-internal: used by contraction code
    /// that has already checked the subset relation.
    pub(crate) fn with_bits(&self, bits: BitSet) -> VertexSet {
        debug_assert_eq!(bits.capacity(), self.bits.capacity());
        VertexSet {
            host: self.host,
            bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_basic_patterns() {
        // three vertices, edges 0-1 and 1-2
        let g = OrderedGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));

        let single = OrderedGraph::build(1, &[]).unwrap();
        assert_eq!((single.n(), single.m()), (1, 0));

        let forest = OrderedGraph::build(4, &[(0, 1), (1, 3)]).unwrap();
        assert_eq!(forest.edges(), vec![(0, 1), (1, 3)]);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(OrderedGraph::build(3, &[(0, 3)]).is_err());
        assert!(OrderedGraph::build(3, &[(1, 1)]).is_err());
        // duplicates coalesce
        let g = OrderedGraph::build(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn complement_matches_hand_computation() {
        let empty3 = OrderedGraph::empty(3);
        let k3 = empty3.complement();
        assert_eq!(k3.m(), 3);
        assert!(k3.has_edge(0, 2));

        // path 0-1-2 complements to the single edge {0,2}
        let p = OrderedGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let c = p.complement();
        assert_eq!(c.edges(), vec![(0, 2)]);
    }

    #[test]
    fn max_degree_from_path() {
        let g = OrderedGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let mid = g.vertex_set([1]).unwrap();
        let ends = g.vertex_set([0, 2]).unwrap();
        assert_eq!(g.max_degree_from(&mid, &ends).unwrap(), 2);
        assert_eq!(g.max_degree_from(&ends, &mid).unwrap(), 1);
    }

    #[test]
    fn max_degree_from_rejects_bad_inputs() {
        let g = OrderedGraph::empty(4);
        let e = g.vertex_set([]).unwrap();
        let a = g.vertex_set([0, 1]).unwrap();
        let b = g.vertex_set([1, 2]).unwrap();
        assert!(g.max_degree_from(&e, &a).is_err());
        assert!(g.max_degree_from(&a, &b).is_err());
    }

    #[test]
    fn cross_graph_sets_rejected() {
        let g = OrderedGraph::empty(4);
        let h = OrderedGraph::empty(4);
        let a = g.vertex_set([0]).unwrap();
        let b = h.vertex_set([1]).unwrap();
        assert!(g.max_degree_from(&a, &b).is_err());
        assert!(g.is_anticomplete(&a, &b).is_err());
    }

    #[test]
    fn anticomplete_and_complete() {
        let empty = OrderedGraph::empty(4);
        let full = OrderedGraph::complete(4);
        let a = empty.vertex_set([0, 1]).unwrap();
        let b = empty.vertex_set([2, 3]).unwrap();
        assert!(empty.is_anticomplete(&a, &b).unwrap());
        assert!(!empty.is_complete(&a, &b).unwrap());
        let a = full.vertex_set([0, 1]).unwrap();
        let b = full.vertex_set([2, 3]).unwrap();
        assert!(full.is_complete(&a, &b).unwrap());

        let path = OrderedGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let z0 = path.vertex_set([0]).unwrap();
        let z1 = path.vertex_set([1]).unwrap();
        let z2 = path.vertex_set([2]).unwrap();
        assert!(path.is_anticomplete(&z0, &z2).unwrap());
        assert!(!path.is_anticomplete(&z0, &z1).unwrap());
    }

    #[test]
    fn ogr_round_trip_is_canonical() {
        let g = OrderedGraph::build(5, &[(3, 4), (0, 2), (0, 1)]).unwrap();
        let text = g.to_ogr_string();
        assert_eq!(text, "5 3\n0 1\n0 2\n3 4\n");
        let h = OrderedGraph::from_ogr_str(&text).unwrap();
        assert_eq!(h.to_ogr_string(), text);
        // comments and blank lines are tolerated
        let with_comments = format!("# header comment\n{text}\n# trailing\n");
        let k = OrderedGraph::from_ogr_str(&with_comments).unwrap();
        assert_eq!(k.to_ogr_string(), text);
    }

    #[test]
    fn ogr_rejects_malformed() {
        assert!(OrderedGraph::from_ogr_str("").is_err());
        assert!(OrderedGraph::from_ogr_str("2 1\n").is_err());
        assert!(OrderedGraph::from_ogr_str("2 1\n0 0\n").is_err());
        assert!(OrderedGraph::from_ogr_str("2 1\n0 1 9\n").is_err());
    }

    #[test]
    fn induced_keeps_order() {
        let g = OrderedGraph::build(5, &[(0, 2), (2, 4), (1, 3)]).unwrap();
        let s = g.vertex_set([0, 2, 4]).unwrap();
        let (h, map) = g.induced(&s).unwrap();
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }
}
