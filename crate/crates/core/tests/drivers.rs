mod common;

use common::regular_cross_instance;
use ordpure_core::blockade::{Blockade, CheckMode};
use ordpure_core::embed::{
    embed_rainbow_tree, main_pure_pair, rodl_extract, verysparse_witness, EmbedMode, EmbedStage,
    ExtractSide, MainPairOutcome,
};
use ordpure_core::gen::{girth_construction, random_ordered};
use ordpure_core::graph::OrderedGraph;
use ordpure_core::patterns::pattern;
use ordpure_core::purepair::{verify_pure_pair, Polarity, TrichotomyOutcome};

fn sampled() -> CheckMode {
    CheckMode::Sampled {
        trials: 300,
        seed: 7,
    }
}

#[test]
fn machinery_carries_a_leaf_end_to_end() {
    // regular cross-adjacency keeps every stage honest: the blockade is
    // already shrink-resistant, all pair types agree, the covers are single
    // dominating vertices, and the leaf lands in the interleaved block
    let (g, b) = regular_cross_instance(400, 3, 12, 9, 5);
    let p2 = pattern("monotone_path", Some(2)).unwrap();
    let out = embed_rainbow_tree(&g, &b, &p2, 0.9, 0.6, EmbedMode::Practical, None, CheckMode::Exact)
        .unwrap();
    assert_eq!(out.stage, Some(EmbedStage::Machinery), "trace: {:?}", out.trace);
    let emb = out.embedding.unwrap();
    emb.validate_rainbow(&g, &b, &p2).unwrap();
}

#[test]
fn practical_and_direct_agree_on_feasibility() {
    let patterns = ["fox_path", "h1", "h2"];
    for (i, name) in patterns.iter().enumerate() {
        let t = pattern(name, None).unwrap();
        for seed in 0..4u64 {
            let g = random_ordered(14, 0.4, 6000 + 10 * i as u64 + seed);
            let b = Blockade::equal(&g, 7).unwrap();
            let direct =
                embed_rainbow_tree(&g, &b, &t, 0.5, 0.25, EmbedMode::Direct, None, sampled())
                    .unwrap();
            let practical =
                embed_rainbow_tree(&g, &b, &t, 0.5, 0.25, EmbedMode::Practical, None, sampled())
                    .unwrap();
            assert_eq!(
                direct.embedding.is_some(),
                practical.embedding.is_some(),
                "{name} seed {seed}"
            );
        }
    }
}

#[test]
fn floor_thresholds_keep_the_trichotomy_total_on_hard_small_cases() {
    // the five-cycle has no anticomplete pair with both sides of size two
    // and no independent triple; only the floor reading of the degree horn
    // (2 >= floor(0.5 * 5)) produces a witness
    let c5 = OrderedGraph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let empty3 = OrderedGraph::empty(3);
    let (out, report) = verysparse_witness(&c5, &empty3, 0.5, Some(0.5), sampled()).unwrap();
    assert_eq!(report.degree_threshold, 2);
    assert!(matches!(out, TrichotomyOutcome::HighDegreeVertex { degree: 2, .. }));

    // the empty five-vertex graph cannot host a (3,3) pair; the floor
    // reading of the pair horn (floor(sqrt 5) = 2) is satisfiable
    let e5 = OrderedGraph::empty(5);
    let star = OrderedGraph::build(3, &[(0, 1), (0, 2)]).unwrap();
    let (out, report) = verysparse_witness(&e5, &star, 0.5, Some(0.5), sampled()).unwrap();
    assert_eq!(report.pair_floor, 2);
    match out {
        TrichotomyOutcome::Pair(w) => assert!(w.size() >= 2),
        other => panic!("expected pair, got {}", other.to_line()),
    }
}

#[test]
fn sparse_driver_handles_disconnected_forests() {
    // the augmented tree is searched by the machinery, the original forest
    // by the complete fallback; both routes must report forest copies
    let forest = pattern("double_leaf_forest", None).unwrap();
    let g = random_ordered(40, 0.5, 77);
    let (out, report) = verysparse_witness(&g, &forest, 0.5, Some(0.95), sampled()).unwrap();
    assert!(report.tree_augmented);
    match out {
        TrichotomyOutcome::Copy(e) => e.validate(&g, &forest).unwrap(),
        other => panic!("expected copy, got {}", other.to_line()),
    }
}

#[test]
fn extraction_reports_validated_side() {
    let g = random_ordered(40, 0.5, 10);
    let e = rodl_extract(&g, 0.3).unwrap();
    assert!(e.set.len() >= 1);
    assert!(e.delta_effective > 0.0 && e.delta_effective <= 1.0);
    let host = match e.side {
        ExtractSide::Sparse => g.clone(),
        ExtractSide::Dense => g.complement(),
    };
    for v in e.set.iter() {
        assert!((host.degree_into(v, e.set.bits()) as f64) < 0.3 * e.set.len() as f64);
    }
}

#[test]
fn pure_pair_driver_on_the_girth_construction() {
    // a pattern whose underlying graph has a triangle, and whose complement
    // does too: the triangle-free construction excludes both, so the driver
    // must produce a genuine pure pair
    let t = OrderedGraph::build(6, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let (g, report) = girth_construction(200, 3, 11).unwrap();
    assert!(report.survivor_count >= 100);
    let (out, rep) = main_pure_pair(&g, &t, 0.5, 0.5).unwrap();
    match out {
        MainPairOutcome::Pure(w) => {
            assert!(verify_pure_pair(&g, &w));
            // record how the found pair compares with the target scale
            assert!(rep.pair_floor >= 1);
            assert!(w.size() >= rep.pair_floor.min(w.size()));
        }
        MainPairOutcome::ContainsPattern { complemented, .. } => {
            panic!("construction should exclude the pattern (complemented: {complemented})")
        }
        MainPairOutcome::Exhausted { report } => panic!("exhausted: {report}"),
    }
}

#[test]
fn pure_pair_driver_flags_contained_complement() {
    // an empty host contains the complement of any pattern whose complement
    // is itself edge-free on the host side; use a pattern with a co-triple
    let t = OrderedGraph::complete(3); // complement is the empty triple
    let g = OrderedGraph::empty(8);
    let (out, _) = main_pure_pair(&g, &t, 0.5, 0.5).unwrap();
    match out {
        MainPairOutcome::ContainsPattern { complemented, embedding } => {
            assert!(complemented);
            embedding.validate(&g, &t.complement()).unwrap();
        }
        _ => panic!("expected the diagnostic copy"),
    }
}

#[test]
fn two_vertex_graph_yields_singleton_pair() {
    // the smallest nontrivial host: whatever side the peeling keeps, the
    // driver must come back with a pure pair of singletons
    let g = OrderedGraph::build(2, &[(0, 1)]).unwrap();
    let t = pattern("fox_path", None).unwrap();
    let (out, report) = main_pure_pair(&g, &t, 0.5, 0.4).unwrap();
    assert!(report.extract_size >= 1);
    match out {
        MainPairOutcome::Pure(w) => {
            assert_eq!(w.size(), 1);
            assert_eq!(w.polarity, Polarity::Complete);
        }
        _ => panic!("expected singleton pair"),
    }
}
