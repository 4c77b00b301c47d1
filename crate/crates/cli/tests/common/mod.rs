//! Independent oracles for the acceptance suite. Deliberately naive code,
//! kept apart from the library's search paths.

#![allow(dead_code)]

use ordpure_core::graph::OrderedGraph;

/// First (lexicographic) induced order-preserving embedding by plain
/// enumeration of strictly increasing tuples.
pub fn oracle_first_embedding(host: &OrderedGraph, pattern: &OrderedGraph) -> Option<Vec<usize>> {
    fn rec(host: &OrderedGraph, pattern: &OrderedGraph, cur: &mut Vec<usize>) -> Option<Vec<usize>> {
        if cur.len() == pattern.n() {
            return Some(cur.clone());
        }
        let start = cur.last().map_or(0, |&v| v + 1);
        for h in start..host.n() {
            let pv = cur.len();
            if cur
                .iter()
                .enumerate()
                .all(|(pu, &hu)| pattern.has_edge(pu, pv) == host.has_edge(hu, h))
            {
                cur.push(h);
                if let Some(hit) = rec(host, pattern, cur) {
                    return Some(hit);
                }
                cur.pop();
            }
        }
        None
    }
    if pattern.n() > host.n() {
        return None;
    }
    rec(host, pattern, &mut Vec::new())
}

/// The anticomplete pair maximizing min size over all 3^n disjoint subset
/// assignments, lexicographically least.
pub fn oracle_best_anticomplete(g: &OrderedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    oracle_best_pair(g, false)
}

pub fn oracle_best_complete(g: &OrderedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    oracle_best_pair(g, true)
}

fn oracle_best_pair(g: &OrderedGraph, complete: bool) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    assert!(n <= 12);
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut assign = vec![0u8; n];
    loop {
        let z1: Vec<usize> = (0..n).filter(|&v| assign[v] == 1).collect();
        let z2: Vec<usize> = (0..n).filter(|&v| assign[v] == 2).collect();
        if !z1.is_empty() && !z2.is_empty() {
            let ok = z1
                .iter()
                .all(|&u| z2.iter().all(|&v| g.has_edge(u, v) == complete));
            if ok {
                let size = z1.len().min(z2.len());
                let better = match &best {
                    None => true,
                    Some((bs, b1, b2)) => size > *bs || (size == *bs && (&z1, &z2) < (b1, b2)),
                };
                if better {
                    best = Some((size, z1, z2));
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best.map(|(_, a, b)| (a, b));
            }
            assign[i] += 1;
            if assign[i] == 3 {
                assign[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Is there an anticomplete pair with both sides of size at least `t`?
/// Enumerates size-t seed sets and takes all compatible partners.
pub fn oracle_has_anticomplete_at(g: &OrderedGraph, t: usize) -> bool {
    let n = g.n();
    if t == 0 || 2 * t > n {
        return t == 0;
    }
    let mut pick = Vec::new();
    fn rec(g: &OrderedGraph, t: usize, start: usize, pick: &mut Vec<usize>) -> bool {
        if pick.len() == t {
            let rest: Vec<usize> = (0..g.n())
                .filter(|&v| !pick.contains(&v) && pick.iter().all(|&u| !g.has_edge(u, v)))
                .collect();
            return rest.len() >= t;
        }
        for v in start..g.n() {
            pick.push(v);
            if rec(g, t, v + 1, pick) {
                return true;
            }
            pick.pop();
        }
        false
    }
    rec(g, t, 0, &mut pick)
}

/// Floor-threshold three-horn oracle: a vertex of degree at least
/// `max(1, floor(eps*n))`, a copy of the forest, or an anticomplete pair
/// with both sides at least `max(1, floor(n^(1-c)))`.
pub fn oracle_three_horns(g: &OrderedGraph, forest: &OrderedGraph, eps: f64, c: f64) -> bool {
    let n = g.n();
    let t1 = ((eps * n as f64).floor() as usize).max(1);
    if (0..n).any(|v| g.degree(v) >= t1) {
        return true;
    }
    if oracle_first_embedding(g, forest).is_some() {
        return true;
    }
    let t2 = ((n as f64).powf(1.0 - c).floor() as usize).max(1);
    oracle_has_anticomplete_at(g, t2)
}

/// All ordered forests on three vertices: every 3-vertex graph except the
/// triangle.
pub fn all_three_vertex_forests() -> Vec<OrderedGraph> {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut out = Vec::new();
    for mask in 0u8..8 {
        if mask == 7 {
            continue; // the triangle is the only non-forest
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(OrderedGraph::build(3, &edges).unwrap());
    }
    out
}

/// All graphs on `n` vertices, by edge mask.
pub fn all_graphs(n: usize) -> Vec<OrderedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            OrderedGraph::build(n, &edges).unwrap()
        })
        .collect()
}
