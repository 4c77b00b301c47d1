//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and independent of the library's search paths.

#![allow(dead_code)]

use ordpure_core::blockade::Blockade;
use ordpure_core::gen::SplitMix64;
use ordpure_core::graph::OrderedGraph;

/// All strictly increasing |H|-tuples, checked for induced equality; returns
/// the first match in lexicographic order and the total count.
pub fn exhaustive_embeddings(
    host: &OrderedGraph,
    pattern: &OrderedGraph,
) -> (Option<Vec<usize>>, usize) {
    let mut first = None;
    let mut count = 0;
    let mut cur = Vec::new();
    enumerate_tuples(host, pattern, &mut cur, &mut |tuple| {
        count += 1;
        if first.is_none() {
            first = Some(tuple.to_vec());
        }
    });
    (first, count)
}

fn enumerate_tuples(
    host: &OrderedGraph,
    pattern: &OrderedGraph,
    cur: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == pattern.n() {
        emit(cur);
        return;
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
            enumerate_tuples(host, pattern, cur, emit);
            cur.pop();
        }
    }
}

/// Exhaustive rainbow enumeration: block-respecting increasing tuples.
pub fn exhaustive_rainbow(
    host: &OrderedGraph,
    blockade: &Blockade,
    pattern: &OrderedGraph,
) -> (Option<Vec<usize>>, usize) {
    let mut first = None;
    let mut count = 0;
    let (emit_first, emit_count) = (&mut first, &mut count);
    let mut cur = Vec::new();
    fn rec(
        host: &OrderedGraph,
        blockade: &Blockade,
        pattern: &OrderedGraph,
        cur: &mut Vec<usize>,
        first: &mut Option<Vec<usize>>,
        count: &mut usize,
    ) {
        if cur.len() == pattern.n() {
            *count += 1;
            if first.is_none() {
                *first = Some(cur.clone());
            }
            return;
        }
        let start = cur.last().map_or(0, |&v| v + 1);
        for h in start..host.n() {
            let pos = match blockade.block_position_of_vertex(h) {
                Some(p) => p,
                None => continue,
            };
            if let Some(&prev) = cur.last() {
                if blockade.block_position_of_vertex(prev).unwrap() >= pos {
                    continue;
                }
            }
            let pv = cur.len();
            if cur
                .iter()
                .enumerate()
                .all(|(pu, &hu)| pattern.has_edge(pu, pv) == host.has_edge(hu, h))
            {
                cur.push(h);
                rec(host, blockade, pattern, cur, first, count);
                cur.pop();
            }
        }
    }
    rec(host, blockade, pattern, &mut cur, emit_first, emit_count);
    (first, count)
}

/// Full enumeration over ordered pairs of disjoint nonempty subsets: the
/// anticomplete pair maximizing min size, lexicographically least. 3^n
/// assignments, usable to n around 12.
pub fn brute_best_anticomplete(g: &OrderedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    brute_best_pair(g, false)
}

/// Same, for complete pairs.
pub fn brute_best_complete(g: &OrderedGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    brute_best_pair(g, true)
}

fn brute_best_pair(g: &OrderedGraph, complete: bool) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    assert!(n <= 12, "oracle is 3^n");
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut assign = vec![0u8; n];
    loop {
        let z1: Vec<usize> = (0..n).filter(|&v| assign[v] == 1).collect();
        let z2: Vec<usize> = (0..n).filter(|&v| assign[v] == 2).collect();
        if !z1.is_empty() && !z2.is_empty() {
            let ok = z1.iter().all(|&u| {
                z2.iter()
                    .all(|&v| g.has_edge(u, v) == complete)
            });
            if ok {
                let size = z1.len().min(z2.len());
                let better = match &best {
                    None => true,
                    Some((bs, b1, b2)) => {
                        size > *bs || (size == *bs && (&z1, &z2) < (b1, b2))
                    }
                };
                if better {
                    best = Some((size, z1, z2));
                }
            }
        }
        // odometer over base-3 assignments
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

/// Does any anticomplete pair with both sides >= t exist? Exhaustive.
pub fn brute_has_anticomplete_at(g: &OrderedGraph, t: usize) -> bool {
    match brute_best_anticomplete(g) {
        Some((a, b)) => a.len().min(b.len()) >= t,
        None => false,
    }
}

/// Exhaustive check of the shrink-resistance definition over BOTH subset
/// sides, no one-sided reduction: the double oracle.
pub fn brute_is_shrink_resistant(
    g: &OrderedGraph,
    b: &Blockade,
    phi: f64,
    mu: f64,
) -> bool {
    let n = g.n() as f64;
    for p in 0..b.len() {
        for q in 0..b.len() {
            if p == q {
                continue;
            }
            let bh = b.block_at(p).to_vec();
            let bj = b.block_at(q).to_vec();
            assert!(bh.len() <= 16 && bj.len() <= 16, "oracle is 2^|B| each side");
            let d = {
                let bjset = ordpure_core::bits::BitSet::from_indices(g.n(), bj.iter().copied());
                bh.iter()
                    .map(|&v| g.degree_into(v, &bjset))
                    .max()
                    .unwrap()
            };
            let bound = d as f64 * n.powf(-phi);
            for xm in 1u32..(1 << bh.len()) {
                let x: Vec<usize> = bh
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| xm >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                if (x.len() as f64) < mu * bh.len() as f64 {
                    continue;
                }
                for ym in 1u32..(1 << bj.len()) {
                    let y: Vec<usize> = bj
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| ym >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    if (y.len() as f64) < mu * bj.len() as f64 {
                        continue;
                    }
                    let yset =
                        ordpure_core::bits::BitSet::from_indices(g.n(), y.iter().copied());
                    let maxdeg = x.iter().map(|&v| g.degree_into(v, &yset)).max().unwrap();
                    if (maxdeg as f64) <= bound + 1e-12 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Instance family with exactly regular cross adjacency: `k` consecutive
/// blocks of `m` vertices inside a host of `n` vertices; between each pair
/// of blocks every vertex has exactly `d` neighbours (a random circulant),
/// and inside blocks edges appear with probability 1/2.
pub fn regular_cross_instance(
    n: usize,
    k: usize,
    m: usize,
    d: usize,
    seed: u64,
) -> (OrderedGraph, Blockade) {
    assert!(k * m <= n && d <= m);
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for bp in 0..k {
        for bq in bp + 1..k {
            // random offset set of size d
            let mut offsets: Vec<usize> = (0..m).collect();
            for i in 0..d {
                let j = i + rng.next_below((m - i) as u64) as usize;
                offsets.swap(i, j);
            }
            for r in 0..m {
                for &s in &offsets[..d] {
                    edges.push((bp * m + r, bq * m + (r + s) % m));
                }
            }
        }
        for u in 0..m {
            for v in u + 1..m {
                if rng.next_f64() < 0.5 {
                    edges.push((bp * m + u, bp * m + v));
                }
            }
        }
    }
    let g = OrderedGraph::build(n, &edges).expect("instance edges in range");
    let entries: Vec<_> = (0..k)
        .map(|i| {
            (
                i + 1,
                g.vertex_set(i * m..(i + 1) * m).expect("block range"),
            )
        })
        .collect();
    let b = Blockade::new(&g, entries).expect("blocks are valid");
    (g, b)
}

/// Random blockade over a seeded G(n, p): `k` consecutive blocks of size
/// `m` starting at vertex 0.
pub fn random_blockade(
    n: usize,
    p: f64,
    k: usize,
    m: usize,
    seed: u64,
) -> (OrderedGraph, Blockade) {
    assert!(k * m <= n);
    let g = ordpure_core::gen::random_ordered(n, p, seed);
    let entries: Vec<_> = (0..k)
        .map(|i| {
            (
                i + 1,
                g.vertex_set(i * m..(i + 1) * m).expect("block range"),
            )
        })
        .collect();
    let b = Blockade::new(&g, entries).expect("blocks are valid");
    (g, b)
}
