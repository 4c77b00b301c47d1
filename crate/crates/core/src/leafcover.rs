//! Leaf-covered blockades.
//!
//! A blockade over a partition (H, I, J) is leaf-covered when the H-family
//! keeps width and linkage guarantees, the I-family keeps width, every
//! (h, j) pair carries a cover set inside the j-block that dominates the
//! h-block while avoiding every other H и I block, the I∪J family carries a
//! band, and H-to-rest max-degrees stay below the band value.
//!
//! The covering step shrinks one distinguished block to the part dominated
//! by small greedily-built cover sets, one per J-block; the induction step
//! promotes one I-block into H per application; the iterated version moves
//! a whole subset across, doubling the soft parameters each time.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::BitSet;
use crate::blockade::{
    homog2, is_band_log, measures, BandCertificate, Blockade, CheckMode, Homog2Outcome,
    Homog2Params, Rigor,
};
use crate::error::Error;
use crate::graph::OrderedGraph;
use crate::logspace::{self, ceil_count, floor_count, log2_count, log2_pos};
use crate::purepair::PurePairWitness;
use crate::Result;

/// The six-tuple of parameters a leaf-covered structure is certified
/// against. Widths are carried in base-2 logs; the recurrence divides them
/// by powers of two, which is exact there.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LeafParams {
    pub w_log2: f64,
    pub cap_w_log2: f64,
    pub lambda: f64,
    pub phi: f64,
    pub mu: f64,
    pub tau: f64,
}

#[derive(Clone, Debug)]
pub struct LeafCovered {
    pub blockade: Blockade,
    pub part_h: Vec<usize>,
    pub part_i: Vec<usize>,
    pub part_j: Vec<usize>,
    pub params: LeafParams,
    /// `(h, j)` to the cover set inside block `j`.
    pub covers: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafCoveredData {
    pub part_h: Vec<usize>,
    pub part_i: Vec<usize>,
    pub part_j: Vec<usize>,
    pub params: LeafParams,
    pub blocks: Vec<(usize, Vec<usize>)>,
    pub covers: Vec<(usize, usize, Vec<usize>)>,
}

impl LeafCovered {
    pub fn to_data(&self) -> LeafCoveredData {
        LeafCoveredData {
            part_h: self.part_h.clone(),
            part_i: self.part_i.clone(),
            part_j: self.part_j.clone(),
            params: self.params,
            blocks: self
                .blockade
                .indices()
                .iter()
                .enumerate()
                .map(|(p, &i)| (i, self.blockade.block_at(p).to_vec()))
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|(&(h, j), x)| (h, j, x.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafVerdict {
    pub ok: bool,
    pub first_violation: Option<String>,
}

/// Checks the five defining conditions in order and reports the first
/// violation. The band condition is checked in `band_check` mode, with
/// doubled parameters clamped into their legal ranges.
pub fn verify_leaf_covered(
    g: &OrderedGraph,
    lc: &LeafCovered,
    band_check: CheckMode,
) -> Result<LeafVerdict> {
    lc.blockade.check_host(g)?;
    let fail = |msg: String| {
        Ok(LeafVerdict {
            ok: false,
            first_violation: Some(msg),
        })
    };
    let p = &lc.params;
    // 1: H-family width and linkage
    if !lc.part_h.is_empty() {
        let hb = lc.blockade.sub_blockade(&lc.part_h)?;
        let m = measures(g, &hb)?;
        if !logspace::ge(log2_count(m.width), p.w_log2) {
            return fail(format!(
                "bullet 1: H width {} below 2^{:.6}",
                m.width, p.w_log2
            ));
        }
        if !logspace::le(log2_pos(m.linkage), log2_pos(p.lambda)) {
            return fail(format!(
                "bullet 1: H linkage {} above {}",
                m.linkage, p.lambda
            ));
        }
    }
    // 2: I-family width
    if !lc.part_i.is_empty() {
        let ib = lc.blockade.sub_blockade(&lc.part_i)?;
        let m = measures(g, &ib)?;
        if !logspace::ge(log2_count(m.width), p.cap_w_log2) {
            return fail(format!(
                "bullet 2: I width {} below 2^{:.6}",
                m.width, p.cap_w_log2
            ));
        }
    }
    // 3: covers
    for &h in &lc.part_h {
        for &j in &lc.part_j {
            let x = match lc.covers.get(&(h, j)) {
                Some(x) => x,
                None => return fail(format!("bullet 3: no cover for pair ({h},{j})")),
            };
            let bj = lc.blockade.block_by_index(j)?;
            if !x.iter().all(|&v| bj.contains(v)) {
                return fail(format!("bullet 3: cover ({h},{j}) not inside block {j}"));
            }
            let xbits = BitSet::from_indices(g.n(), x.iter().copied());
            let bh = lc.blockade.block_by_index(h)?;
            if let Some(v) = bh.iter().find(|&v| !g.neighbors(v).intersects(&xbits)) {
                return fail(format!(
                    "bullet 3: vertex {v} of block {h} uncovered by cover ({h},{j})"
                ));
            }
            for &i in lc.part_h.iter().chain(&lc.part_i) {
                if i == h {
                    continue;
                }
                let bi = lc.blockade.block_by_index(i)?;
                if !g.anticomplete_bits(&xbits, bi.bits()) {
                    return fail(format!(
                        "bullet 3: cover ({h},{j}) touches block {i}"
                    ));
                }
            }
        }
    }
    // 4: band over I ∪ J
    let mut ij: Vec<usize> = lc.part_i.iter().chain(&lc.part_j).copied().collect();
    ij.sort_unstable();
    if ij.len() >= 2 {
        let sub = lc.blockade.sub_blockade(&ij)?;
        let tau_eff = p.tau.min(1.0);
        let phi_eff = p.phi.min(1.0);
        let mu_eff = p.mu.min(1.0);
        let verdict = is_band_log(g, &sub, log2_pos(tau_eff), phi_eff, mu_eff, band_check)?;
        if !verdict.holds {
            return fail(format!("bullet 4: band fails: {:?}", verdict.violation));
        }
    }
    // 5: H into I ∪ J max-degrees
    for &h in &lc.part_h {
        let bh = lc.blockade.block_by_index(h)?;
        for &i in &ij {
            let bi = lc.blockade.block_by_index(i)?;
            let d = g.max_degree_from_bits(bh.bits(), bi.bits());
            if !logspace::le(log2_count(d), log2_pos(p.tau) + log2_count(bi.len())) {
                return fail(format!(
                    "bullet 5: max-degree {d} from block {h} to {i} above tau*|B_{i}|"
                ));
            }
        }
    }
    Ok(LeafVerdict {
        ok: true,
        first_violation: None,
    })
}

// ---- the single covering step ------------------------------------------------

#[derive(Clone, Debug)]
pub struct MatchRoles {
    pub zero: usize,
    pub h: Vec<usize>,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl MatchRoles {
    fn validate(&self, a: &Blockade) -> Result<()> {
        let mut all: Vec<usize> = std::iter::once(self.zero)
            .chain(self.h.iter().copied())
            .chain(self.i.iter().copied())
            .chain(self.j.iter().copied())
            .collect();
        all.sort_unstable();
        let mut expected = a.indices().to_vec();
        expected.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("match roles overlap"));
        }
        if all != expected {
            return Err(Error::input(
                "match roles must partition the blockade indices",
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverRound {
    pub j: usize,
    pub y_before: usize,
    pub y_after: usize,
    /// `(vertex, newly covered)` per accepted pick.
    pub picks: Vec<(usize, usize)>,
    pub branch: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct MatchTrace {
    pub d_sizes: Vec<(usize, usize)>,
    pub rounds: Vec<CoverRound>,
    pub cover_cap: usize,
}

#[derive(Clone, Debug)]
pub struct MatchStepResult {
    /// Contracted blocks; `None` when some block came out empty.
    pub blockade: Option<Blockade>,
    pub blocks: BTreeMap<usize, Vec<usize>>,
    pub covers: BTreeMap<usize, Vec<usize>>,
    pub feasible: bool,
    pub warnings: Vec<String>,
    pub trace: MatchTrace,
    /// Violations of the five conclusion guarantees, empty when all hold.
    pub conclusion_violations: Vec<String>,
}

/// One covering step. Deletes high-H-degree vertices from the 0- and
/// J-blocks and low-J-degree vertices from the 0-block, then for each
/// J-block greedily grows a cover of the shrinking core: each pick is the
/// vertex with most new coverage (least vertex on ties), the cover stops at
/// half coverage or at the size cap `1/(4k^2*tau)`. The 0-block contracts
/// to the final covered core; H and I blocks drop every vertex the covers
/// touch; J blocks stay whole.
pub fn match_step(
    g: &OrderedGraph,
    a: &Blockade,
    roles: &MatchRoles,
    tau: f64,
    phi: f64,
    mu: f64,
    rigor: Rigor,
    check: CheckMode,
) -> Result<MatchStepResult> {
    a.check_host(g)?;
    roles.validate(a)?;
    if !(tau > 0.0 && phi > 0.0 && mu > 0.0) {
        return Err(Error::input("match step needs positive tau, phi, mu"));
    }
    let k = a.len();
    let kf = k as f64;
    let n = g.n();
    let log2n = log2_count(n);
    let mut warnings = Vec::new();
    // doubled parameters walk out of (0,1] during iterated promotion;
    // definitional uses clamp, thresholds degrade gracefully
    if tau > 1.0 || mu > 1.0 {
        warnings.push(format!("parameters above 1: tau={tau} mu={mu}"));
    }
    {
        let mut failures = Vec::new();
        if 2.0 * kf * mu > 1.0 {
            failures.push(format!("2k*mu <= 1 fails: {}", 2.0 * kf * mu));
        }
        if phi > 0.5 {
            failures.push(format!("phi <= 1/2 fails: {phi}"));
        }
        if 4.0 * kf * kf * tau > 1.0 {
            failures.push(format!("4k^2*tau <= 1 fails: {}", 4.0 * kf * kf * tau));
        }
        let size_req = 1.0 + kf * (16.0 * kf * kf).log2(); // log2 of 2(16k^2)^k
        if !logspace::ge(phi * log2n, size_req) {
            failures.push("|G|^phi >= 2(16k^2)^k fails".into());
        }
        for &h in &roles.h {
            let bh = a.block_by_index(h)?;
            for &i in std::iter::once(&roles.zero).chain(roles.i.iter()).chain(roles.j.iter()) {
                let bi = a.block_by_index(i)?;
                let d = g.max_degree_from_bits(bh.bits(), bi.bits());
                if !logspace::le(log2_count(d), log2_pos(tau) + log2_count(bi.len())) {
                    failures.push(format!(
                        "max-degree from block {h} to {i} exceeds tau*|A_{i}|"
                    ));
                }
            }
        }
        if rigor == Rigor::Theoretical && !failures.is_empty() {
            return Err(Error::Precondition {
                context: "match_step".into(),
                failures,
            });
        }
        warnings.extend(failures);
    }

    let mut trace = MatchTrace::default();
    // cover size cap; a degenerate cap is clamped to one pick so the
    // construction can still make progress outside the theoretical regime
    let raw_cap = floor_count(1.0 / (4.0 * kf * kf * tau));
    let cover_cap = raw_cap.max(1);
    if raw_cap == 0 {
        warnings.push("cover size cap clamped to 1".into());
    }
    trace.cover_cap = cover_cap;

    // high-H-degree deletions for the 0-block and every J-block
    let d_of = |idx: usize| -> Result<BitSet> {
        let blk = a.block_by_index(idx)?;
        let mut bits = blk.bits().clone();
        for &h in &roles.h {
            let bh = a.block_by_index(h)?;
            let thr = ceil_count(2.0 * kf * tau * bh.len() as f64).max(1);
            for v in blk.iter() {
                if g.degree_into(v, bh.bits()) >= thr {
                    bits.remove(v);
                }
            }
        }
        Ok(bits)
    };
    let mut d_j: BTreeMap<usize, BitSet> = BTreeMap::new();
    for &j in &roles.j {
        let bits = d_of(j)?;
        trace.d_sizes.push((j, bits.len()));
        d_j.insert(j, bits);
    }
    let mut d0 = d_of(roles.zero)?;
    for (&j, dj) in &d_j {
        let aj = a.block_by_index(j)?;
        // drop 0-vertices too poorly connected into the pruned j-block
        let thr = log2_pos(tau) - phi * log2n + log2_count(aj.len());
        let victims: Vec<usize> = d0
            .iter()
            .filter(|&v| logspace::le(log2_count(g.degree_into(v, dj)), thr))
            .collect();
        for v in victims {
            d0.remove(v);
        }
    }
    trace.d_sizes.push((roles.zero, d0.len()));

    // greedy covers, one round per J-block, each shrinking the core
    let mut y = d0.clone();
    let mut covers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &j in &roles.j {
        let pool = &d_j[&j];
        let mut round = CoverRound {
            j,
            y_before: y.len(),
            y_after: 0,
            picks: Vec::new(),
            branch: String::new(),
        };
        let mut covered = BitSet::new(n);
        let mut x: Vec<usize> = Vec::new();
        loop {
            if 2 * covered.len() >= y.len() {
                round.branch = "half".into();
                break;
            }
            if x.len() >= cover_cap {
                round.branch = "cap".into();
                break;
            }
            let mut best: Option<(usize, usize)> = None; // (gain, vertex) max gain, least v
            for v in pool.iter() {
                if x.contains(&v) {
                    continue;
                }
                let gain = g.neighbors(v).and_count(&y.minus(&covered));
                let better = match best {
                    None => true,
                    Some((bg, bv)) => gain > bg || (gain == bg && v < bv),
                };
                if better {
                    best = Some((gain, v));
                }
            }
            match best {
                Some((gain, v)) if gain > 0 => {
                    x.push(v);
                    covered.union_with(&g.neighbors(v).intersection(&y));
                    round.picks.push((v, gain));
                }
                _ => {
                    round.branch = "stall".into();
                    warnings.push(format!("cover round for block {j} stalled"));
                    break;
                }
            }
        }
        x.sort_unstable();
        y = covered;
        round.y_after = y.len();
        trace.rounds.push(round);
        covers.insert(j, x);
    }

    // final blocks
    let mut union_cover_nbrs = BitSet::new(n);
    for x in covers.values() {
        for &v in x {
            union_cover_nbrs.union_with(g.neighbors(v));
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    blocks.insert(roles.zero, y.to_vec());
    for &i in roles.h.iter().chain(&roles.i) {
        let bits = a.block_by_index(i)?.bits().minus(&union_cover_nbrs);
        blocks.insert(i, bits.to_vec());
    }
    for &j in &roles.j {
        blocks.insert(j, a.block_by_index(j)?.to_vec());
    }
    let feasible = blocks.values().all(|b| !b.is_empty());
    let blockade = if feasible {
        let mut cur = a.clone();
        for (&idx, verts) in &blocks {
            let pos = cur.position_of_index(idx).unwrap();
            cur = cur.with_block_replaced(pos, BitSet::from_indices(n, verts.iter().copied()))?;
        }
        Some(cur)
    } else {
        warnings.push("some contracted block is empty".into());
        None
    };

    let conclusion_violations = match &blockade {
        Some(b) => conclusion_check(g, a, roles, b, &covers, tau, phi, mu, k, check)?,
        None => vec!["construction infeasible".into()],
    };

    Ok(MatchStepResult {
        blockade,
        blocks,
        covers,
        feasible,
        warnings,
        trace,
        conclusion_violations,
    })
}

/// Direct checks of the five conclusion guarantees of the covering step,
/// independent of how the construction reached them.
#[allow(clippy::too_many_arguments)]
fn conclusion_check(
    g: &OrderedGraph,
    a: &Blockade,
    roles: &MatchRoles,
    out: &Blockade,
    covers: &BTreeMap<usize, Vec<usize>>,
    tau: f64,
    phi: f64,
    mu: f64,
    k: usize,
    check: CheckMode,
) -> Result<Vec<String>> {
    let mut violations = Vec::new();
    let n = g.n();
    let log2n = log2_count(n);
    let kf = k as f64;
    let b0 = out.block_by_index(roles.zero)?;
    let a0 = a.block_by_index(roles.zero)?;
    // 1: sizes
    if !logspace::ge(
        log2_count(b0.len()),
        log2_count(a0.len()) - kf * phi * log2n,
    ) {
        violations.push(format!(
            "size: |B_0|={} below |G|^(-k*phi)*|A_0|",
            b0.len()
        ));
    }
    for &i in roles.h.iter().chain(&roles.i) {
        let bi = out.block_by_index(i)?;
        let ai = a.block_by_index(i)?;
        if 2 * bi.len() < ai.len() {
            violations.push(format!("size: |B_{i}|={} below |A_{i}|/2", bi.len()));
        }
    }
    // 2: covers dominate the core and avoid H ∪ I
    for &j in &roles.j {
        let x = &covers[&j];
        let xbits = BitSet::from_indices(n, x.iter().copied());
        if let Some(v) = b0.iter().find(|&v| !g.neighbors(v).intersects(&xbits)) {
            violations.push(format!("cover: vertex {v} of the core misses cover {j}"));
        }
        for &i in roles.h.iter().chain(&roles.i) {
            let bi = out.block_by_index(i)?;
            if !g.anticomplete_bits(&xbits, bi.bits()) {
                violations.push(format!("cover: cover {j} touches block {i}"));
            }
        }
    }
    // 3: doubled band over I ∪ J
    let mut ij: Vec<usize> = roles.i.iter().chain(&roles.j).copied().collect();
    ij.sort_unstable();
    if ij.len() >= 2 {
        let sub = out.sub_blockade(&ij)?;
        let verdict = is_band_log(
            g,
            &sub,
            log2_pos((2.0 * tau).min(1.0)),
            (2.0 * phi).min(1.0),
            (2.0 * mu).min(1.0),
            check,
        )?;
        if !verdict.holds {
            violations.push(format!("band: {:?}", verdict.violation));
        }
    }
    // 4: zero and H into I ∪ J
    for &h in std::iter::once(&roles.zero).chain(roles.h.iter()) {
        let bh = out.block_by_index(h)?;
        for &i in &ij {
            let bi = out.block_by_index(i)?;
            let d = g.max_degree_from_bits(bh.bits(), bi.bits());
            if !logspace::le(log2_count(d), log2_pos(2.0 * tau) + log2_count(bi.len())) {
                violations.push(format!(
                    "maxdeg: from {h} to {i} is {d}, above 2*tau*|B_{i}|"
                ));
            }
        }
    }
    // 5: zero into H
    for &h in &roles.h {
        let bh = out.block_by_index(h)?;
        let d = g.max_degree_from_bits(b0.bits(), bh.bits());
        if !logspace::le(
            log2_count(d),
            log2_pos(4.0 * kf * tau) + log2_count(bh.len()),
        ) {
            violations.push(format!(
                "maxdeg: from the core to {h} is {d}, above 4k*tau*|B_{h}|"
            ));
        }
    }
    let _ = mu;
    Ok(violations)
}

// ---- the induction step -------------------------------------------------------

/// Promotes `g_index` from I to H: runs the covering step with it in the
/// distinguished role, filters each old H-block down to the vertices with
/// few neighbours in the new core, and doubles the soft parameters. Output
/// parameters are exactly `(w/4, W/2, 4*lambda, 2*phi, 2*mu, 2*tau)`.
pub fn more_leaves(
    g: &OrderedGraph,
    lc: &LeafCovered,
    g_index: usize,
    rigor: Rigor,
    check: CheckMode,
) -> Result<LeafCovered> {
    if !lc.part_i.contains(&g_index) {
        return Err(Error::input(format!(
            "block {g_index} is not in the I part"
        )));
    }
    let k = lc.blockade.len();
    let kf = k as f64;
    let p = lc.params;
    let log2n = log2_count(g.n());
    {
        let mut failures = Vec::new();
        if p.lambda < 2.0 * kf * p.tau {
            failures.push(format!(
                "lambda >= 2k*tau fails: {} < {}",
                p.lambda,
                2.0 * kf * p.tau
            ));
        }
        if !logspace::ge(-kf * p.phi * log2n + p.cap_w_log2, p.w_log2 - 2.0) {
            failures.push("|G|^(-k*phi)*W >= w/4 fails".into());
        }
        if rigor == Rigor::Theoretical && !failures.is_empty() {
            return Err(Error::Precondition {
                context: "more_leaves".into(),
                failures,
            });
        }
        // remaining hypotheses are checked inside the covering step
        let _ = failures;
    }
    let roles = MatchRoles {
        zero: g_index,
        h: lc.part_h.clone(),
        i: lc.part_i.iter().copied().filter(|&i| i != g_index).collect(),
        j: lc.part_j.clone(),
    };
    let step = match_step(g, &lc.blockade, &roles, p.tau, p.phi, p.mu, rigor, check)?;
    let mut out = match step.blockade {
        Some(b) => b,
        None => {
            return Err(Error::Analysis(format!(
                "covering step infeasible while promoting block {g_index}: {}",
                step.warnings.join("; ")
            )))
        }
    };
    // keep only old-H vertices with few neighbours in the new core
    let core = out.block_by_index(g_index)?.clone();
    let deg_cap = floor_count(8.0 * kf * p.tau * core.len() as f64);
    for &h in &lc.part_h {
        let pos = out.position_of_index(h).unwrap();
        let keep: Vec<usize> = out
            .block_at(pos)
            .iter()
            .filter(|&v| g.degree_into(v, core.bits()) <= deg_cap)
            .collect();
        if keep.is_empty() {
            return Err(Error::Analysis(format!(
                "block {h} emptied by the core-degree filter"
            )));
        }
        out = out.with_block_replaced(pos, BitSet::from_indices(g.n(), keep))?;
    }
    let mut part_h = lc.part_h.clone();
    part_h.push(g_index);
    part_h.sort_unstable();
    let mut covers = lc.covers.clone();
    for (&j, x) in &step.covers {
        covers.insert((g_index, j), x.clone());
    }
    Ok(LeafCovered {
        blockade: out,
        part_h,
        part_i: roles.i,
        part_j: lc.part_j.clone(),
        params: LeafParams {
            w_log2: p.w_log2 - 2.0,
            cap_w_log2: p.cap_w_log2 - 1.0,
            lambda: 4.0 * p.lambda,
            phi: 2.0 * p.phi,
            mu: 2.0 * p.mu,
            tau: 2.0 * p.tau,
        },
        covers,
    })
}

// ---- the iterated version ------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LeafCoverAll {
    pub result: LeafCovered,
    /// Parameter six-tuples per step, starting with the base case.
    pub trace: Vec<LeafParams>,
}

/// Iterates the induction step over `h_target` in ascending order, starting
/// from the band hypothesis on (I, J).
#[allow(clippy::too_many_arguments)]
pub fn leaf_cover_all(
    g: &OrderedGraph,
    a: &Blockade,
    i_set: &[usize],
    j_set: &[usize],
    h_target: &[usize],
    tau: f64,
    phi: f64,
    mu: f64,
    rigor: Rigor,
    check: CheckMode,
) -> Result<LeafCoverAll> {
    a.check_host(g)?;
    if !h_target.iter().all(|h| i_set.contains(h)) {
        return Err(Error::input("target set must be a subset of I"));
    }
    let k = a.len();
    let kf = k as f64;
    let log2n = log2_count(g.n());
    {
        let mut failures = Vec::new();
        if kf * kf.exp2() * mu > 1.0 {
            failures.push("k*2^k*mu <= 1 fails".into());
        }
        if phi * kf.exp2() > 1.0 {
            failures.push("phi*2^k <= 1 fails".into());
        }
        if kf * kf * (kf + 1.0).exp2() * tau > 1.0 {
            failures.push("k^2*2^(k+1)*tau <= 1 fails".into());
        }
        let size_req = 1.0 + kf * (16.0 * kf * kf).log2();
        if !logspace::ge(phi * log2n, size_req) {
            failures.push("|G|^phi >= 2(16k^2)^k fails".into());
        }
        if rigor == Rigor::Theoretical && !failures.is_empty() {
            return Err(Error::Precondition {
                context: "leaf_cover_all".into(),
                failures,
            });
        }
    }
    let cap_w_log2 = if i_set.is_empty() {
        log2_count(g.n())
    } else {
        let widths: Vec<usize> = i_set
            .iter()
            .map(|&i| a.block_by_index(i).map(|b| b.len()))
            .collect::<Result<_>>()?;
        log2_count(widths.into_iter().min().unwrap())
    };
    let base = LeafParams {
        w_log2: cap_w_log2 - kf * (kf - 1.0).exp2() * phi * log2n,
        cap_w_log2,
        lambda: 2.0 * kf * tau,
        phi,
        mu,
        tau,
    };
    let mut lc = LeafCovered {
        blockade: a.clone(),
        part_h: vec![],
        part_i: {
            let mut v = i_set.to_vec();
            v.sort_unstable();
            v
        },
        part_j: {
            let mut v = j_set.to_vec();
            v.sort_unstable();
            v
        },
        params: base,
        covers: BTreeMap::new(),
    };
    let mut trace = vec![lc.params];
    let mut order = h_target.to_vec();
    order.sort_unstable();
    for g_idx in order {
        lc = more_leaves(g, &lc, g_idx, rigor, check)?;
        trace.push(lc.params);
    }
    Ok(LeafCoverAll { result: lc, trace })
}

/// Closed-form parameter six-tuple after `h_count` promotions, used to
/// cross-check traces.
pub fn closed_form_params(
    n: usize,
    k: usize,
    cap_w_log2: f64,
    tau: f64,
    phi: f64,
    mu: f64,
    h_count: usize,
) -> LeafParams {
    let kf = k as f64;
    let log2n = log2_count(n);
    let h = h_count as f64;
    LeafParams {
        w_log2: cap_w_log2 - kf * (kf - 1.0).exp2() * phi * log2n - 2.0 * h,
        cap_w_log2: cap_w_log2 - h,
        lambda: (2.0 * h).exp2() * 2.0 * kf * tau,
        phi: h.exp2() * phi,
        mu: h.exp2() * mu,
        tau: h.exp2() * tau,
    }
}

// ---- the full selector -----------------------------------------------------------

#[derive(Clone, Debug)]
pub enum FullLeafCover {
    Anticomplete {
        witness: PurePairWitness,
        hypothesis_violated: bool,
    },
    Selected(FullLeafSelection),
}

#[derive(Clone, Debug)]
pub struct FullLeafSelection {
    pub indices: Vec<usize>,
    pub blockade: Blockade,
    pub certificate: BandCertificate,
    pub k: usize,
    pub c: f64,
    pub sigma_out: f64,
    pub lambda_out: f64,
    pub phi: f64,
    pub mu: f64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PartitionCover {
    pub leaf: LeafCovered,
    pub trace: Vec<LeafParams>,
    pub h_shrinkage: f64,
    pub h_linkage: f64,
    pub warnings: Vec<String>,
}

/// Selects `k` blocks whose contraction carries a band tight enough that
/// every partition (H, J) of the selection can be leaf-covered on demand,
/// with the H-family keeping shrinkage at most `sigma_out` and linkage at
/// most `lambda_out`.
///
/// The derived constants `phi = (sigma'-Sigma)/(k*2^(k-1)+1)` and
/// `mu = 2^(-k)/k` are what the asymptotic argument needs, but at desk
/// scale they put the band's lower bullet below one vertex, so `phi_mu`
/// can override them; validators remain the source of truth either way.
#[allow(clippy::too_many_arguments)]
pub fn full_leaf_cover(
    g: &OrderedGraph,
    a: &Blockade,
    k: usize,
    c: f64,
    sigma: f64,
    sigma_out: f64,
    lambda_out: f64,
    phi_mu: Option<(f64, f64)>,
    rigor: Rigor,
    check: CheckMode,
) -> Result<FullLeafCover> {
    if !(sigma < sigma_out && sigma_out < c) {
        return Err(Error::input(
            "full leaf cover needs sigma < sigma' < c",
        ));
    }
    let kf = k.max(1) as f64;
    let mid_sigma = (sigma + sigma_out) / 2.0;
    let (phi, mu) = phi_mu.unwrap_or((
        (sigma_out - mid_sigma) / (kf * (kf - 1.0).exp2() + 1.0),
        (-kf).exp2() / kf,
    ));
    let lambda_band = lambda_out * (-2.0 * kf).exp2() / (2.0 * kf);
    let params = Homog2Params {
        c,
        phi,
        mu,
        sigma,
        sigma_out: mid_sigma,
        lambda_out: lambda_band,
    };
    match homog2(g, a, k, &params, rigor, check)? {
        Homog2Outcome::Anticomplete {
            witness,
            hypothesis_violated,
            ..
        } => Ok(FullLeafCover::Anticomplete {
            witness,
            hypothesis_violated,
        }),
        Homog2Outcome::Selected(sel) => Ok(FullLeafCover::Selected(FullLeafSelection {
            indices: sel.indices,
            blockade: sel.blockade,
            certificate: sel.certificate,
            k,
            c,
            sigma_out,
            lambda_out,
            phi,
            mu,
            warnings: sel.warnings,
        })),
    }
}

impl FullLeafSelection {
    /// Leaf-covers the selection for one concrete partition (H, J): every
    /// H-block is contracted, covers land in the J-blocks, and the H-family
    /// shrinkage/linkage are measured against the budgets.
    pub fn for_partition(
        &self,
        g: &OrderedGraph,
        h_part: &[usize],
        j_part: &[usize],
        rigor: Rigor,
        check: CheckMode,
    ) -> Result<PartitionCover> {
        let mut all: Vec<usize> = h_part.iter().chain(j_part).copied().collect();
        all.sort_unstable();
        let mut expected = self.indices.clone();
        expected.sort_unstable();
        if all != expected {
            return Err(Error::input(
                "partition must split the selected indices exactly",
            ));
        }
        let run = leaf_cover_all(
            g,
            &self.blockade,
            h_part,
            j_part,
            h_part,
            self.certificate.tau,
            self.phi,
            self.mu,
            rigor,
            check,
        )?;
        let mut warnings: Vec<String> = Vec::new();
        let (h_shrinkage, h_linkage) = if h_part.is_empty() {
            (0.0, 0.0)
        } else {
            let hb = run.result.blockade.sub_blockade(&{
                let mut v = h_part.to_vec();
                v.sort_unstable();
                v
            })?;
            let m = measures(g, &hb)?;
            (m.shrinkage, m.linkage)
        };
        if !logspace::le(log2_pos(h_shrinkage), log2_pos(self.sigma_out)) {
            warnings.push(format!(
                "H shrinkage {} exceeds budget {}",
                h_shrinkage, self.sigma_out
            ));
        }
        if !logspace::le(log2_pos(h_linkage), log2_pos(self.lambda_out)) {
            warnings.push(format!(
                "H linkage {} exceeds budget {}",
                h_linkage, self.lambda_out
            ));
        }
        Ok(PartitionCover {
            leaf: run.result,
            trace: run.trace,
            h_shrinkage,
            h_linkage,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_cross_pair() -> (OrderedGraph, Blockade) {
        // two blocks, complete between them
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in 5..10 {
                edges.push((u, v));
            }
        }
        let g = OrderedGraph::build(10, &edges).unwrap();
        let b = Blockade::equal(&g, 2).unwrap();
        (g, b)
    }

    #[test]
    fn empty_partition_is_vacuously_leaf_covered() {
        let g = OrderedGraph::empty(4);
        let b = Blockade::new(&g, vec![]).unwrap();
        let lc = LeafCovered {
            blockade: b,
            part_h: vec![],
            part_i: vec![],
            part_j: vec![],
            params: LeafParams {
                w_log2: 0.0,
                cap_w_log2: 0.0,
                lambda: 1.0,
                phi: 0.5,
                mu: 0.5,
                tau: 0.5,
            },
            covers: BTreeMap::new(),
        };
        assert!(verify_leaf_covered(&g, &lc, CheckMode::Exact).unwrap().ok);
    }

    #[test]
    fn single_vertex_cover_on_complete_pair() {
        // distinguished block 0 complete to the single J-block: one vertex
        // of the J-block covers everything
        let (g, b) = complete_cross_pair();
        let roles = MatchRoles {
            zero: 1,
            h: vec![],
            i: vec![],
            j: vec![2],
        };
        let res = match_step(
            &g,
            &b,
            &roles,
            0.5,
            0.45,
            0.45,
            Rigor::Practical,
            CheckMode::Exact,
        )
        .unwrap();
        assert!(res.feasible);
        let cover = &res.covers[&2];
        assert_eq!(cover.len(), 1);
        assert_eq!(res.blocks[&1], vec![0, 1, 2, 3, 4]);
        assert!(res.conclusion_violations.is_empty(), "{:?}", res.conclusion_violations);
    }

    #[test]
    fn no_j_blocks_short_circuits() {
        let (g, b) = complete_cross_pair();
        let roles = MatchRoles {
            zero: 1,
            h: vec![],
            i: vec![2],
            j: vec![],
        };
        let res = match_step(
            &g,
            &b,
            &roles,
            0.5,
            0.45,
            0.45,
            Rigor::Practical,
            CheckMode::Exact,
        )
        .unwrap();
        assert!(res.feasible);
        assert!(res.covers.is_empty());
        // the core keeps the whole pruned block
        assert_eq!(res.blocks[&1].len(), 5);
    }

    #[test]
    fn theoretical_mode_reports_failed_hypotheses() {
        let (g, b) = complete_cross_pair();
        let roles = MatchRoles {
            zero: 1,
            h: vec![],
            i: vec![],
            j: vec![2],
        };
        let err = match_step(
            &g,
            &b,
            &roles,
            0.5,
            0.45,
            0.45,
            Rigor::Theoretical,
            CheckMode::Exact,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn parameter_bookkeeping_is_exact() {
        let p = LeafParams {
            w_log2: 5.0,
            cap_w_log2: 6.0,
            lambda: 0.125,
            phi: 0.25,
            mu: 0.0625,
            tau: 0.03125,
        };
        // one promotion: (w/4, W/2, 4l, 2phi, 2mu, 2tau)
        let next = LeafParams {
            w_log2: p.w_log2 - 2.0,
            cap_w_log2: p.cap_w_log2 - 1.0,
            lambda: 4.0 * p.lambda,
            phi: 2.0 * p.phi,
            mu: 2.0 * p.mu,
            tau: 2.0 * p.tau,
        };
        assert_eq!(next.w_log2, 3.0);
        assert_eq!(next.cap_w_log2, 5.0);
        assert_eq!(next.lambda, 0.5);
        assert_eq!(next.phi, 0.5);
        assert_eq!(next.mu, 0.125);
        assert_eq!(next.tau, 0.0625);
    }

    #[test]
    fn closed_form_matches_recurrence_shape() {
        let k = 4;
        let tau = 1.0 / 64.0;
        let phi = 0.05;
        let mu = 1.0 / 64.0;
        let w = 5.0;
        for h in 0..=3usize {
            let cf = closed_form_params(256, k, w, tau, phi, mu, h);
            let mut p = closed_form_params(256, k, w, tau, phi, mu, 0);
            for _ in 0..h {
                p = LeafParams {
                    w_log2: p.w_log2 - 2.0,
                    cap_w_log2: p.cap_w_log2 - 1.0,
                    lambda: 4.0 * p.lambda,
                    phi: 2.0 * p.phi,
                    mu: 2.0 * p.mu,
                    tau: 2.0 * p.tau,
                };
            }
            assert!((cf.w_log2 - p.w_log2).abs() < 1e-12);
            assert!((cf.cap_w_log2 - p.cap_w_log2).abs() < 1e-12);
            assert!((cf.lambda - p.lambda).abs() < 1e-15);
            assert!((cf.phi - p.phi).abs() < 1e-15);
            assert!((cf.mu - p.mu).abs() < 1e-15);
            assert!((cf.tau - p.tau).abs() < 1e-15);
        }
    }
}
