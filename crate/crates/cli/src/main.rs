//! Command-line surface for the ordered pure-pair toolkit.
//!
//! Exit codes: 0 means a witness or other success, 2 means a legitimate
//! "no witness / exhausted" outcome, 1 means a usage or input error. Every
//! witness-producing command re-validates its witness before printing, and
//! identical configurations produce byte-identical stdout, including under
//! `--threads`.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use ordpure_core::blockade::{self, Blockade, CheckMode, Rigor};
use ordpure_core::embed::{self, EmbedMode, MainPairOutcome};
use ordpure_core::gen::{self, Construction};
use ordpure_core::graph::OrderedGraph;
use ordpure_core::leafcover::{self, FullLeafCover};
use ordpure_core::patterns;
use ordpure_core::purepair::{self, SearchMode, TrichotomyOutcome};
use ordpure_core::Error;

#[derive(Parser, Debug, Serialize)]
#[command(name = "ordpure", version, about = "ordered graphs, pure pairs, blockades")]
struct Cli {
    /// Worker thread cap; the default keeps runs single-threaded.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Ordered induced containment of a pattern in a host graph.
    Contains {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Rainbow containment relative to a blockade.
    Rainbow {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Best anticomplete (or complete) pair search.
    Purepair {
        #[command(flatten)]
        host: HostArg,
        /// exact | bb | greedy
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Early-exit floor on the pair min-size.
        #[arg(long)]
        floor: Option<usize>,
        /// Search the complete polarity instead.
        #[arg(long, default_value_t = false)]
        complete: bool,
        /// Also report exact independence and clique numbers.
        #[arg(long, default_value_t = false)]
        alpha_omega: bool,
    },
    /// Blockade measures and certificates.
    Blockade {
        #[command(subcommand)]
        kind: BlockadeKind,
    },
    /// Leaf-covered selection of a blockade.
    Leafcover {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        sigma: f64,
        /// Output shrinkage budget (the sigma-prime of the contract).
        #[arg(long)]
        sigma_out: f64,
        /// Output linkage budget.
        #[arg(long)]
        lambda_out: f64,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        /// H-part of a partition to certify, comma-separated indices;
        /// the rest of the selection becomes J.
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        check: CheckArg,
        #[arg(long, default_value = "practical")]
        rigor: String,
    },
    /// Rainbow tree embedding via the covering machinery.
    Embed {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
        #[command(flatten)]
        pattern: PatternArg,
        /// theoretical | practical | direct
        #[arg(long, default_value = "practical")]
        mode: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[command(flatten)]
        check: CheckArg,
    },
    /// Degree / copy / pair trichotomy drivers.
    Trichotomy {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        c: f64,
        /// simple: fixed-order search with ceiling thresholds;
        /// sparse: the blockade driver with floor thresholds.
        #[arg(long, default_value = "simple")]
        driver: String,
        #[command(flatten)]
        check: CheckArg,
    },
    /// Pure pair in a pattern-excluding graph via degree peeling.
    Mainpair {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Theoretical parameter reports in base-2 logs.
    Params {
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        mu: Option<f64>,
        /// Blockade length entering the retention exponent.
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        tsize: Option<usize>,
        #[arg(long)]
        c: Option<f64>,
    },
    /// Pure-pair scaling experiment, CSV on stdout.
    Experiment {
        /// empty | complete | girth3
        #[arg(long)]
        construction: String,
        /// Comma-separated sizes.
        #[arg(long)]
        n: String,
        /// Comma-separated seeds.
        #[arg(long)]
        seeds: String,
        /// Measure wall time per cell; off by default so identical
        /// configurations emit identical bytes.
        #[arg(long, default_value_t = false)]
        timing: bool,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
enum GenKind {
    /// G(n, p) with counter-based edge sampling.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Short-cycle deletion construction.
    Girth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
enum BlockadeKind {
    /// Width, shrinkage, linkage, max-degree table.
    Measures {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
    },
    /// Shrink-resistant contraction with iteration trace.
    ShrinkResist {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        check: CheckArg,
    },
    /// Band classification over pair types.
    Band {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        blocks: BlocksArg,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        check: CheckArg,
    },
}

#[derive(Args, Debug, Serialize)]
struct HostArg {
    /// OGR v1 graph file; `-` reads standard input.
    #[arg(long)]
    host: String,
}

#[derive(Args, Debug, Serialize)]
struct BlocksArg {
    /// Blockade file, one JSON array of vertices per line.
    #[arg(long)]
    blocks: Option<String>,
    /// Alternatively, split the host into this many equal intervals.
    #[arg(long)]
    equal: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct PatternArg {
    /// Named pattern: monotone_path, fox_path, double_leaf_forest, h1, h2.
    #[arg(long)]
    pattern: Option<String>,
    /// Size for monotone_path.
    #[arg(long)]
    k: Option<usize>,
    /// OGR file holding the pattern instead of a name.
    #[arg(long)]
    pattern_file: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct CheckArg {
    /// exact | sampled
    #[arg(long, default_value = "exact")]
    check: String,
    #[arg(long, default_value_t = 2000)]
    trials: u64,
    /// Seed for sampled checks; required whenever sampling is requested.
    #[arg(long)]
    seed: Option<u64>,
}

impl CheckArg {
    fn mode(&self) -> Result<CheckMode, Error> {
        match self.check.as_str() {
            "exact" => Ok(CheckMode::Exact),
            "sampled" => {
                let seed = self.seed.ok_or_else(|| {
                    Error::input("sampled checks require an explicit --seed")
                })?;
                Ok(CheckMode::Sampled {
                    trials: self.trials,
                    seed,
                })
            }
            other => Err(Error::input(format!("unknown check mode: {other}"))),
        }
    }
}

impl HostArg {
    fn load(&self) -> Result<OrderedGraph, Error> {
        let text = if self.host == "-" {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        } else {
            std::fs::read_to_string(&self.host)?
        };
        OrderedGraph::from_ogr_str(&text)
    }
}

impl BlocksArg {
    fn load(&self, g: &OrderedGraph) -> Result<Blockade, Error> {
        match (&self.blocks, self.equal) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)?;
                Blockade::from_jsonl(g, &text)
            }
            (None, Some(k)) => Blockade::equal(g, k),
            _ => Err(Error::input("give exactly one of --blocks or --equal")),
        }
    }
}

impl PatternArg {
    fn load(&self) -> Result<OrderedGraph, Error> {
        match (&self.pattern, &self.pattern_file) {
            (Some(name), None) => patterns::pattern(name, self.k),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                OrderedGraph::from_ogr_str(&text)
            }
            _ => Err(Error::input(
                "give exactly one of --pattern or --pattern-file",
            )),
        }
    }
}

/// Outcome triage for the shell: witness/success, no-witness, usage error.
enum Outcome {
    Witness,
    NoWitness,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let hash = config_hash(&cli.command);
    match run(&cli.command, &hash) {
        Ok(Outcome::Witness) => ExitCode::SUCCESS,
        Ok(Outcome::NoWitness) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Deterministic hash over the canonical serialization of the parsed
/// configuration.
fn config_hash(command: &Command) -> String {
    let canonical = serde_json::to_string(command).expect("config serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    hex::encode(&digest[..8])
}

fn emit(out: &Option<String>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_search_mode(s: &str) -> Result<SearchMode, Error> {
    match s {
        "exact" => Ok(SearchMode::Exact),
        "bb" | "branch_bound" => Ok(SearchMode::BranchBound),
        "greedy" => Ok(SearchMode::Greedy),
        other => Err(Error::input(format!("unknown search mode: {other}"))),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::input(format!("bad {what} entry: {t}")))
        })
        .collect()
}

fn run(command: &Command, hash: &str) -> Result<Outcome, Error> {
    match command {
        Command::Gen { kind } => run_gen(kind, hash),
        Command::Contains { host, pattern } => {
            let g = host.load()?;
            let h = pattern.load()?;
            match patterns::contains_ordered(&g, &h) {
                Some(e) => {
                    e.validate(&g, &h)?;
                    println!("{}", e.to_line());
                    Ok(Outcome::Witness)
                }
                None => {
                    println!("absent");
                    Ok(Outcome::NoWitness)
                }
            }
        }
        Command::Rainbow {
            host,
            blocks,
            pattern,
        } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let h = pattern.load()?;
            match patterns::find_rainbow_copy(&g, &b, &h)? {
                Some(e) => {
                    e.validate_rainbow(&g, &b, &h)?;
                    println!("{}", e.to_line());
                    Ok(Outcome::Witness)
                }
                None => {
                    println!("absent");
                    Ok(Outcome::NoWitness)
                }
            }
        }
        Command::Purepair {
            host,
            mode,
            floor,
            complete,
            alpha_omega,
        } => {
            let g = host.load()?;
            if *alpha_omega {
                let (a, o) = purepair::alpha_omega(&g)?;
                println!("alpha {a} omega {o}");
            }
            let m = parse_search_mode(mode)?;
            let found = if *complete {
                purepair::best_complete_pair(&g, m, *floor)?
            } else {
                purepair::best_anticomplete_pair(&g, m, *floor)?
            };
            match found {
                Some(w) => {
                    if !purepair::verify_pure_pair(&g, &w) {
                        return Err(Error::Analysis("witness failed re-validation".into()));
                    }
                    println!("{}", w.to_line());
                    Ok(Outcome::Witness)
                }
                None => {
                    println!("absent");
                    Ok(Outcome::NoWitness)
                }
            }
        }
        Command::Blockade { kind } => run_blockade(kind),
        Command::Leafcover {
            host,
            blocks,
            k,
            c,
            sigma,
            sigma_out,
            lambda_out,
            phi,
            mu,
            partition,
            check,
            rigor,
        } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let rigor = parse_rigor(rigor)?;
            let check = check.mode()?;
            let overrides = match (phi, mu) {
                (Some(p), Some(m)) => Some((*p, *m)),
                (None, None) => None,
                _ => return Err(Error::input("give both --phi and --mu or neither")),
            };
            let cover = leafcover::full_leaf_cover(
                &g, &b, *k, *c, *sigma, *sigma_out, *lambda_out, overrides, rigor, check,
            )?;
            match cover {
                FullLeafCover::Anticomplete {
                    witness,
                    hypothesis_violated,
                } => {
                    if !purepair::verify_pure_pair(&g, &witness) {
                        return Err(Error::Analysis("witness failed re-validation".into()));
                    }
                    println!("anticomplete-outcome hypothesis_violated={hypothesis_violated}");
                    println!("{}", witness.to_line());
                    Ok(Outcome::Witness)
                }
                FullLeafCover::Selected(sel) => {
                    #[derive(Serialize)]
                    struct SelectionOut<'a> {
                        indices: &'a [usize],
                        certificate: &'a blockade::BandCertificate,
                        warnings: &'a [String],
                    }
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&SelectionOut {
                            indices: &sel.indices,
                            certificate: &sel.certificate,
                            warnings: &sel.warnings,
                        })
                        .expect("selection serializes")
                    );
                    if let Some(hpart) = partition {
                        let h: Vec<usize> = parse_list(hpart, "partition index")?;
                        let j: Vec<usize> = sel
                            .indices
                            .iter()
                            .copied()
                            .filter(|i| !h.contains(i))
                            .collect();
                        let part = sel.for_partition(&g, &h, &j, rigor, check)?;
                        let verdict =
                            leafcover::verify_leaf_covered(&g, &part.leaf, check)?;
                        #[derive(Serialize)]
                        struct PartitionOut {
                            leaf: leafcover::LeafCoveredData,
                            trace: Vec<leafcover::LeafParams>,
                            h_shrinkage: f64,
                            h_linkage: f64,
                            warnings: Vec<String>,
                            verdict: leafcover::LeafVerdict,
                        }
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&PartitionOut {
                                leaf: part.leaf.to_data(),
                                trace: part.trace,
                                h_shrinkage: part.h_shrinkage,
                                h_linkage: part.h_linkage,
                                warnings: part.warnings,
                                verdict,
                            })
                            .expect("partition serializes")
                        );
                    }
                    Ok(Outcome::Witness)
                }
            }
        }
        Command::Embed {
            host,
            blocks,
            pattern,
            mode,
            c,
            sigma,
            phi,
            mu,
            check,
        } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let t = pattern.load()?;
            let mode = EmbedMode::parse(mode)?;
            let check = check.mode()?;
            let overrides = match (phi, mu) {
                (Some(p), Some(m)) => Some((*p, *m)),
                (None, None) => None,
                _ => return Err(Error::input("give both --phi and --mu or neither")),
            };
            let out = embed::embed_rainbow_tree(&g, &b, &t, *c, *sigma, mode, overrides, check)?;
            for line in &out.trace {
                eprintln!("trace: {line}");
            }
            match out.embedding {
                Some(e) => {
                    e.validate_rainbow(&g, &b, &t)?;
                    let stage = match out.stage {
                        Some(embed::EmbedStage::Machinery) => "machinery",
                        Some(embed::EmbedStage::Direct) => "direct",
                        None => "none",
                    };
                    println!("stage {stage}");
                    println!("{}", e.to_line());
                    Ok(Outcome::Witness)
                }
                None => {
                    println!("absent");
                    Ok(Outcome::NoWitness)
                }
            }
        }
        Command::Trichotomy {
            host,
            pattern,
            eps,
            c,
            driver,
            check,
        } => {
            let g = host.load()?;
            let t = pattern.load()?;
            let outcome = match driver.as_str() {
                "simple" => purepair::trichotomy_witness(&g, &t, *eps, *c)?,
                "sparse" => {
                    let check = check.mode()?;
                    embed::verysparse_witness(&g, &t, *c, Some(*eps), check)?.0
                }
                other => return Err(Error::input(format!("unknown driver: {other}"))),
            };
            validate_trichotomy(&g, &t, &outcome)?;
            println!("{}", outcome.to_line());
            match outcome {
                TrichotomyOutcome::Exhausted { .. } => Ok(Outcome::NoWitness),
                _ => Ok(Outcome::Witness),
            }
        }
        Command::Mainpair {
            host,
            pattern,
            c,
            eps,
        } => {
            let g = host.load()?;
            let t = pattern.load()?;
            let (out, report) = embed::main_pure_pair(&g, &t, *c, *eps)?;
            eprintln!(
                "report: {}",
                serde_json::to_string(&report).expect("report serializes")
            );
            match out {
                MainPairOutcome::Pure(w) => {
                    if !purepair::verify_pure_pair(&g, &w) {
                        return Err(Error::Analysis("witness failed re-validation".into()));
                    }
                    println!("{}", w.to_line());
                    Ok(Outcome::Witness)
                }
                MainPairOutcome::ContainsPattern {
                    complemented,
                    embedding,
                } => {
                    println!(
                        "copy{} {}",
                        if complemented { "-complement" } else { "" },
                        embedding.to_line()
                    );
                    Ok(Outcome::NoWitness)
                }
                MainPairOutcome::Exhausted { report } => {
                    println!("exhausted {report}");
                    Ok(Outcome::NoWitness)
                }
            }
        }
        Command::Params {
            phi,
            k,
            mu,
            len,
            tsize,
            c,
        } => {
            let mut printed = false;
            if let Some(phi) = phi {
                println!("colors {}", blockade::band_color_count(*phi));
                printed = true;
                if let Some(k) = k {
                    let colors = blockade::band_color_count(*phi) as f64;
                    let (_, log2) = blockade::ramsey_upper(colors, *k as f64);
                    println!("log2_ramsey_K {log2}");
                }
                if let (Some(mu), Some(len)) = (mu, len) {
                    println!(
                        "log2_beta_shrink {}",
                        blockade::beta_log2_shrink(*mu, *len as f64, *phi)
                    );
                    println!(
                        "log2_beta_band {}",
                        blockade::beta_log2_homog(*mu, *len as f64, *phi)
                    );
                }
            }
            if let (Some(tsize), Some(c)) = (tsize, c) {
                let chain = blockade::theoretical_chain(*tsize, *c)?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&chain).expect("chain serializes")
                );
                printed = true;
            }
            if !printed {
                return Err(Error::input(
                    "give --phi (optionally with --k, --mu, --len) and/or --tsize with --c",
                ));
            }
            Ok(Outcome::Witness)
        }
        Command::Experiment {
            construction,
            n,
            seeds,
            timing,
            out,
        } => {
            let construction = Construction::parse(construction)?;
            let ns: Vec<usize> = parse_list(n, "size")?;
            let seed_list: Vec<u64> = parse_list(seeds, "seed")?;
            if seed_list.is_empty() || ns.is_empty() {
                return Err(Error::input("need at least one size and one seed"));
            }
            let report = gen::scaling_experiment(&ns, construction, &seed_list, *timing)?;
            let csv = gen::experiment_csv(&report, hash);
            emit(out, &csv)?;
            Ok(Outcome::Witness)
        }
    }
}

fn run_gen(kind: &GenKind, hash: &str) -> Result<Outcome, Error> {
    match kind {
        GenKind::Random { n, p, seed, out } => {
            let g = gen::random_ordered(*n, *p, *seed);
            let content = format!("# ordpure gen random config {hash}\n{}", g.to_ogr_string());
            emit(out, &content)?;
            Ok(Outcome::Witness)
        }
        GenKind::Girth { n, g, seed, out } => {
            let (graph, report) = gen::girth_construction(*n, *g, *seed)?;
            if gen::has_cycle_at_most(&graph, *g) {
                return Err(Error::Analysis(
                    "construction output failed the cycle validator".into(),
                ));
            }
            let content = format!(
                "# ordpure gen girth config {hash}\n# survivors {} of {} deletions {} at_least_half {}\n{}",
                report.survivor_count,
                report.n,
                report.deletions.len(),
                report.at_least_half,
                graph.to_ogr_string()
            );
            emit(out, &content)?;
            Ok(Outcome::Witness)
        }
    }
}

fn run_blockade(kind: &BlockadeKind) -> Result<Outcome, Error> {
    match kind {
        BlockadeKind::Measures { host, blocks } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let m = blockade::measures(&g, &b)?;
            println!("length {}", b.len());
            println!("width {}", m.width);
            println!("shrinkage {}", m.shrinkage);
            println!("linkage {}", m.linkage);
            println!("log2_maxdeg_product {}", m.log2_maxdeg_product);
            for (p, row) in m.maxdeg.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
                println!("maxdeg {} {}", b.index_at(p), cells.join(" "));
            }
            Ok(Outcome::Witness)
        }
        BlockadeKind::ShrinkResist {
            host,
            blocks,
            phi,
            mu,
            check,
        } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let outcome = blockade::shrink_resist(&g, &b, *phi, *mu, check.mode()?)?;
            #[derive(Serialize)]
            struct ResistOut<'a> {
                outcome: &'a str,
                witness: Option<purepair::WitnessData>,
                blocks: blockade::BlockadeData,
                certificate: &'a blockade::ResistanceCertificate,
            }
            let (label, witness) = match &outcome {
                blockade::ShrinkResistOutcome::Anticomplete { witness, .. } => {
                    if !purepair::verify_pure_pair(&g, witness) {
                        return Err(Error::Analysis("witness failed re-validation".into()));
                    }
                    ("anticomplete", Some(witness.to_data()))
                }
                blockade::ShrinkResistOutcome::Resistant { .. } => ("resistant", None),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&ResistOut {
                    outcome: label,
                    witness,
                    blocks: outcome.blockade().to_data(),
                    certificate: outcome.certificate(),
                })
                .expect("certificate serializes")
            );
            Ok(Outcome::Witness)
        }
        BlockadeKind::Band {
            host,
            blocks,
            phi,
            mu,
            k,
            check,
        } => {
            let g = host.load()?;
            let b = blocks.load(&g)?;
            let sel = blockade::find_band(&g, &b, *phi, *mu, *k, check.mode()?)?;
            #[derive(Serialize)]
            struct BandOut<'a> {
                indices: &'a [usize],
                certificate: &'a blockade::BandCertificate,
                blocks: blockade::BlockadeData,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&BandOut {
                    indices: &sel.indices,
                    certificate: &sel.certificate,
                    blocks: sel.blockade.to_data(),
                })
                .expect("certificate serializes")
            );
            Ok(Outcome::Witness)
        }
    }
}

fn parse_rigor(s: &str) -> Result<Rigor, Error> {
    match s {
        "theoretical" => Ok(Rigor::Theoretical),
        "practical" => Ok(Rigor::Practical),
        other => Err(Error::input(format!("unknown rigor: {other}"))),
    }
}

fn validate_trichotomy(
    g: &OrderedGraph,
    t: &OrderedGraph,
    out: &TrichotomyOutcome,
) -> Result<(), Error> {
    match out {
        TrichotomyOutcome::HighDegreeVertex { v, degree } => {
            if g.degree(*v) != *degree {
                return Err(Error::Analysis("reported degree does not match".into()));
            }
            Ok(())
        }
        TrichotomyOutcome::Copy(e) => e.validate(g, t),
        TrichotomyOutcome::Pair(w) => {
            if !purepair::verify_pure_pair(g, w) {
                return Err(Error::Analysis("pair failed re-validation".into()));
            }
            Ok(())
        }
        TrichotomyOutcome::Exhausted { .. } => Ok(()),
    }
}

