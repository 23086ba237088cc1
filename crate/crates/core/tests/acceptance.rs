//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufReader, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use burst_core::constructions::Side;
use burst_core::generators::random_corpus;
use burst_core::search::{open_output, InputIdentity};
use burst_core::{
    all_graphs, are_isomorphic, brute_force_induced_cycles, check_tran_condition, find_isomorphism,
    gen_complete, gen_cycle, gen_hypercube, gen_path, induced_cycles, is_burst, parse_edge_list,
    parse_graph6, scan_stream, star_double_minus, to_graph6_string, Graph, ScanOptions,
    TranOptions,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn data_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_edges(name: &str) -> Result<Graph, String> {
    let text = fs::read_to_string(data_file(name)).map_err(|e| format!("{name}: {e}"))?;
    parse_edge_list(&text).map_err(|e| format!("{name}: {e}"))
}

fn cycle_sets(cycles: &[burst_core::InducedCycle]) -> BTreeSet<Vec<usize>> {
    cycles
        .iter()
        .map(|c| {
            let mut v = c.vertices().to_vec();
            v.sort();
            v
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let known = [1usize, 1, 2, 4, 11, 34, 156, 1044];
    let mut graphs = 0;
    let mut cycles = 0;
    for (n, &count) in known.iter().enumerate() {
        let corpus = all_graphs(n).map_err(|e| e.to_string())?;
        ensure!(
            corpus.len() == count,
            "{} graphs on {n} vertices, expected {count}",
            corpus.len()
        );
        for g in &corpus {
            let fast = induced_cycles(g, 3, n);
            let fast_set: BTreeSet<_> = fast.iter().cloned().collect();
            ensure!(
                fast_set.len() == fast.len(),
                "duplicate cycle in {}",
                to_graph6_string(g).unwrap()
            );
            let brute: BTreeSet<_> = brute_force_induced_cycles(g, n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            ensure!(
                fast_set == brute,
                "enumerator differs from brute force on {}",
                to_graph6_string(g).unwrap()
            );
            let subsets: BTreeSet<_> = common::subset_cycles(g, 3, n).into_iter().collect();
            ensure!(
                cycle_sets(&fast) == subsets,
                "enumerator differs from subset oracle on {}",
                to_graph6_string(g).unwrap()
            );
            graphs += 1;
            cycles += fast.len();
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{graphs} graphs, {cycles} cycles, {elapsed:.2?}"))
}

fn cube_census() -> Outcome {
    let q3 = gen_hypercube(3).map_err(|e| e.to_string())?;
    let c4 = induced_cycles(&q3, 4, 4);
    let c6 = induced_cycles(&q3, 6, 6);
    ensure!(
        c4.len() == 6 && c6.len() == 4,
        "{} four-cycles, {} six-cycles",
        c4.len(),
        c6.len()
    );
    ensure!(
        induced_cycles(&q3, 3, 8).len() == 10,
        "cycles of other lengths present"
    );
    for c in c4.iter().chain(&c6) {
        ensure!(
            is_burst(&q3, c).unwrap().is_some(),
            "{:?} not burst",
            c.labels(&q3)
        );
    }
    let v = check_tran_condition(&q3, &TranOptions::default());
    ensure!(v.all_burst && !v.truncated, "condition fails on Q3");
    Ok("6 induced 4-cycles, 4 induced 6-cycles, all burst".into())
}

fn lambda_checks() -> Outcome {
    let lambda = load_edges("lambda.edges")?;
    let lambda_prime = load_edges("lambda_prime.edges")?;
    let x = lambda.vertex("x").map_err(|e| e.to_string())?;
    let v = check_tran_condition(&lambda, &TranOptions::default());
    ensure!(
        v.all_burst && !v.truncated,
        "base graph has a non-burst cycle"
    );
    ensure!(
        common::naive_condition(&lambda).all_burst,
        "oracle finds a non-burst cycle in the base graph"
    );

    let d = star_double_minus(&lambda, x).map_err(|e| e.to_string())?;
    ensure!(
        d.graph.n() == 2 * lambda.n() - lambda.degree(x) - 2,
        "double has {} vertices",
        d.graph.n()
    );
    ensure!(
        d.graph.n() == lambda_prime.n(),
        "order differs from the shipped double"
    );
    let map = find_isomorphism(&d.graph, &lambda_prime)
        .ok_or("double is not isomorphic to the shipped graph")?;
    for (u, w) in d.graph.edges() {
        ensure!(
            lambda_prime.has_edge(map[u], map[w]),
            "isomorphism does not preserve edges"
        );
    }

    let vp = check_tran_condition(&lambda_prime, &TranOptions::default());
    ensure!(
        !vp.all_burst && !vp.truncated,
        "shipped double satisfies the condition"
    );
    let witness = vp
        .non_burst_cycles
        .first()
        .ok_or("no non-burst cycle reported")?;
    ensure!(
        witness.validate(&lambda_prime).is_ok(),
        "witness is not an induced cycle"
    );
    ensure!(
        !common::naive_burst(&lambda_prime, witness.vertices()),
        "oracle finds the witness burst"
    );
    Ok(format!(
        "base {}v/{}e all burst; double {}v/{}e, non-burst {:?}",
        lambda.n(),
        lambda.edge_count(),
        lambda_prime.n(),
        lambda_prime.edge_count(),
        witness.labels(&lambda_prime)
    ))
}

fn construction_identities() -> Outcome {
    let c4 = gen_cycle(4).unwrap();
    let c5 = gen_cycle(5).unwrap();
    let c6 = gen_cycle(6).unwrap();
    for v in 0..5 {
        let d = star_double_minus(&c5, v).unwrap();
        ensure!(
            are_isomorphic(&d.graph, &c6).unwrap(),
            "double of C5 at {v} is not C6"
        );
    }
    for v in 0..4 {
        let d = star_double_minus(&c4, v).unwrap();
        ensure!(
            are_isomorphic(&d.graph, &c4).unwrap(),
            "double of C4 at {v} is not C4"
        );
    }
    let densities = [0.15, 0.3, 0.5, 0.7, 0.9];
    for i in 0..1000u64 {
        let n = 1 + (i % 14) as usize;
        let g = random_corpus(n, densities[i as usize % densities.len()], i, 1).remove(0);
        let x = (i as usize * 7) % n;
        let d = star_double_minus(&g, x).map_err(|e| e.to_string())?;
        let deg = g.degree(x);
        let star_edges = g
            .edges()
            .into_iter()
            .filter(|&(u, w)| (u == x || g.has_edge(u, x)) && (w == x || g.has_edge(w, x)))
            .count();
        ensure!(
            d.graph.n() == 2 * n - deg - 2,
            "vertex count wrong for seed {i}"
        );
        ensure!(
            d.graph.edge_count() == 2 * g.edge_count() - star_edges - deg,
            "edge count wrong for seed {i}"
        );
        let sigma = d.swap_involution();
        for u in 0..d.graph.n() {
            ensure!(
                sigma[sigma[u]] == u,
                "swap is not an involution for seed {i}"
            );
            ensure!(
                (sigma[u] == u) == (d.origin[u].side == Side::Shared),
                "swap moves a shared vertex"
            );
            for w in 0..d.graph.n() {
                ensure!(
                    d.graph.has_edge(u, w) == d.graph.has_edge(sigma[u], sigma[w]),
                    "swap is not an automorphism for seed {i}"
                );
            }
        }
        ensure!(
            find_isomorphism(&d.graph, &common::naive_star_double(&g, x)).is_some(),
            "differs from the direct construction for seed {i}"
        );
    }
    Ok("C5 -> C6, C4 -> C4, 1000 random pairs".into())
}

fn trivial_families() -> Outcome {
    let check = |g: &Graph| check_tran_condition(g, &TranOptions::default());
    ensure!(check(&gen_cycle(4).unwrap()).all_burst, "C4");
    ensure!(!check(&gen_cycle(5).unwrap()).all_burst, "C5");
    for n in 0..=16 {
        let v = check(&gen_complete(n).unwrap());
        ensure!(v.all_burst && v.examined() == 0, "K{n}");
    }
    let mut trees = 0;
    for n in 2..=7usize {
        let total = n.pow(n as u32 - 2);
        for code in 0..total {
            let seq: Vec<usize> = (0..n - 2).map(|i| code / n.pow(i as u32) % n).collect();
            let t = common::pruefer_tree(&seq);
            ensure!(t.edge_count() == n - 1, "bad tree");
            let v = check(&t);
            ensure!(v.all_burst && v.examined() == 0, "tree {seq:?}");
            trees += 1;
        }
    }
    for n in [1, 20, 64, 100] {
        ensure!(check(&gen_path(n)).all_burst, "P{n}");
    }
    Ok(format!(
        "C4, C5, K0..K16, {trees} labelled trees, long paths"
    ))
}

fn graph6_codec() -> Outcome {
    let mut exhaustive = 0;
    for n in 0..=8 {
        for g in all_graphs(n).unwrap() {
            let text = to_graph6_string(&g).unwrap();
            let h = parse_graph6(text.as_bytes()).map_err(|e| e.to_string())?;
            ensure!(
                h.n() == g.n() && h.edges() == g.edges(),
                "round trip failed for {text}"
            );
            ensure!(
                to_graph6_string(&h).unwrap() == text,
                "re-encoding differs for {text}"
            );
            exhaustive += 1;
        }
    }
    for i in 0..1000u64 {
        let n = (i % 33) as usize;
        let g = random_corpus(n, 0.1 + 0.8 * (i % 7) as f64 / 6.0, 1000 + i, 1).remove(0);
        let text = to_graph6_string(&g).unwrap();
        let h = parse_graph6(text.as_bytes()).map_err(|e| e.to_string())?;
        ensure!(
            h.n() == n && h.edges() == g.edges(),
            "random round trip failed for {text}"
        );
    }
    let mut labelled = 0;
    for n in 0..=5usize {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let text = to_graph6_string(&g).unwrap();
            ensure!(
                text == common::reference_encode(n, &edges),
                "encoding differs from reference"
            );
            let (rn, mut redges) = common::reference_decode(&text);
            redges.sort();
            ensure!(
                rn == n && redges == g.edges(),
                "reference decode differs for {text}"
            );
            labelled += 1;
        }
    }
    Ok(format!(
        "{exhaustive} unlabelled n<=8, 1000 random n<=32, {labelled} labelled n<=5"
    ))
}

fn search_corpus(dir: &Path) -> PathBuf {
    let path = dir.join("corpus.g6");
    let mut f = fs::File::create(&path).unwrap();
    for (k, p) in [0.3, 0.4, 0.5, 0.6, 0.7].into_iter().enumerate() {
        for g in random_corpus(9, p, 77 + k as u64, 2000) {
            writeln!(f, "{}", to_graph6_string(&g).unwrap()).unwrap();
        }
    }
    path
}

fn run_search(
    input: &Path,
    out: &Path,
    opts: &ScanOptions,
) -> Result<burst_core::search::ScanOutcome, String> {
    let identity = InputIdentity::of_file(input).map_err(|e| e.to_string())?;
    let mut sink = open_output(out, opts.checkpoint.as_deref()).map_err(|e| e.to_string())?;
    let reader = BufReader::new(fs::File::open(input).map_err(|e| e.to_string())?);
    scan_stream(reader, Some(identity), opts, &mut sink).map_err(|e| e.to_string())
}

fn search_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = search_corpus(dir.path());
    let one = dir.path().join("one.jsonl");
    let eight = dir.path().join("eight.jsonl");
    let resumed = dir.path().join("resumed.jsonl");
    let checkpoint = dir.path().join("cp.json");
    let base = ScanOptions {
        batch_size: 512,
        ..ScanOptions::default()
    };

    let a = run_search(
        &input,
        &one,
        &ScanOptions {
            workers: 1,
            ..base.clone()
        },
    )?;
    let b = run_search(
        &input,
        &eight,
        &ScanOptions {
            workers: 8,
            ..base.clone()
        },
    )?;
    ensure!(
        a.stats.graphs_seen == 10_000,
        "saw {} records",
        a.stats.graphs_seen
    );
    ensure!(
        a.stats == b.stats,
        "statistics differ between worker counts"
    );
    let bytes_one = fs::read(&one).unwrap();
    ensure!(
        bytes_one == fs::read(&eight).unwrap(),
        "1-worker and 8-worker outputs differ"
    );
    ensure!(
        a.stats.counterexamples > 0,
        "corpus produced no records to compare"
    );

    let with_cp = ScanOptions {
        workers: 8,
        checkpoint: Some(checkpoint.clone()),
        ..base.clone()
    };
    let first = run_search(
        &input,
        &resumed,
        &ScanOptions {
            stop_after: Some(4321),
            ..with_cp.clone()
        },
    )?;
    ensure!(first.interrupted, "first leg was not interrupted");
    // Bytes written after the last checkpoint, as after a crash.
    fs::OpenOptions::new()
        .append(true)
        .open(&resumed)
        .unwrap()
        .write_all(b"{\"partial\":")
        .unwrap();
    let second = run_search(
        &input,
        &resumed,
        &ScanOptions {
            stop_after: Some(7777),
            ..with_cp.clone()
        },
    )?;
    ensure!(second.interrupted, "second leg was not interrupted");
    let last = run_search(&input, &resumed, &with_cp)?;
    ensure!(
        !last.interrupted && last.stats == a.stats,
        "resumed statistics differ"
    );
    ensure!(
        fs::read(&resumed).unwrap() == bytes_one,
        "resumed output differs"
    );
    let again = run_search(&input, &resumed, &with_cp)?;
    ensure!(
        again.already_complete,
        "completed checkpoint not recognised"
    );

    for line in bytes_one.split(|b| *b == b'\n').filter(|l| !l.is_empty()) {
        let rec: burst_core::CounterexampleRecord =
            serde_json::from_slice(line).map_err(|e| e.to_string())?;
        rec.verify().map_err(|e| e.to_string())?;
    }
    Ok(format!(
        "10000 records, {} counterexamples, 1 = 8 workers, resume identical",
        a.stats.counterexamples
    ))
}

fn performance() -> Outcome {
    let q4 = gen_hypercube(4).unwrap();
    let start = Instant::now();
    let v = check_tran_condition(
        &q4,
        &TranOptions {
            max_len: Some(12),
            ..TranOptions::default()
        },
    );
    let q4_time = start.elapsed();
    ensure!(v.all_burst, "Q4 check failed");
    ensure!(q4_time < Duration::from_secs(1), "Q4 took {q4_time:?}");

    let mut corpus = Vec::new();
    for (k, p) in [0.3, 0.5, 0.7].into_iter().enumerate() {
        for g in random_corpus(9, p, 500 + k as u64, 10_000) {
            corpus.extend_from_slice(to_graph6_string(&g).unwrap().as_bytes());
            corpus.push(b'\n');
        }
    }
    let opts = ScanOptions {
        workers: 1,
        ..ScanOptions::default()
    };
    let start = Instant::now();
    let outcome =
        scan_stream(&corpus[..], None, &opts, &mut std::io::sink()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let rate = outcome.stats.graphs_seen as f64 / secs;
    ensure!(
        outcome.stats.graphs_seen == 30_000,
        "saw {}",
        outcome.stats.graphs_seen
    );
    ensure!(rate >= 5000.0, "{rate:.0} graphs/s on one worker");
    Ok(format!(
        "Q4 {q4_time:.2?}, search {rate:.0} graphs/s on one worker"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 oracle equivalence, all graphs n<=7", oracle_equivalence),
        ("2 Q3 census", cube_census),
        ("3 Lambda and its star double", lambda_checks),
        ("4 construction identities", construction_identities),
        ("5 trivial families", trivial_families),
        ("6 graph6 codec", graph6_codec),
        ("7 search determinism and resume", search_determinism),
        ("8 performance", performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {name}: {reason}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
