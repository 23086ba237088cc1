use std::fs;
use std::io::{BufReader, Write};
use std::path::Path;

use burst_core::generators::random_corpus;
use burst_core::search::{open_output, InputIdentity, ScanOutcome, SearchError};
use burst_core::{
    scan_stream, to_graph6_string, CounterexampleRecord, ScanOptions, SearchCheckpoint,
    VertexPolicy,
};

fn write_corpus(path: &Path, seed: u64, count: usize) {
    let mut f = fs::File::create(path).unwrap();
    for g in random_corpus(9, 0.45, seed, count) {
        writeln!(f, "{}", to_graph6_string(&g).unwrap()).unwrap();
    }
}

fn run(input: &Path, out: &Path, opts: &ScanOptions) -> Result<ScanOutcome, SearchError> {
    let identity = InputIdentity::of_file(input).unwrap();
    let mut sink = open_output(out, opts.checkpoint.as_deref())?;
    let reader = BufReader::new(fs::File::open(input).unwrap());
    scan_stream(reader, Some(identity), opts, &mut sink)
}

fn options(cp: &Path) -> ScanOptions {
    ScanOptions {
        workers: 3,
        batch_size: 97,
        checkpoint: Some(cp.to_path_buf()),
        ..ScanOptions::default()
    }
}

#[test]
fn resume_after_each_possible_stop_point() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    write_corpus(&input, 5, 1500);
    let reference = dir.path().join("ref.jsonl");
    let full = run(
        &input,
        &reference,
        &ScanOptions {
            workers: 1,
            ..ScanOptions::default()
        },
    )
    .unwrap();
    let expected = fs::read(&reference).unwrap();
    assert!(full.stats.counterexamples > 0);

    for stop in [1, 96, 97, 98, 500, 1499, 1500] {
        let cp = dir.path().join(format!("cp{stop}.json"));
        let out = dir.path().join(format!("out{stop}.jsonl"));
        let opts = options(&cp);
        let first = run(
            &input,
            &out,
            &ScanOptions {
                stop_after: Some(stop),
                ..opts.clone()
            },
        )
        .unwrap();
        assert_eq!(first.stats.graphs_seen, stop.min(1500));
        let saved = SearchCheckpoint::load(&cp).unwrap().unwrap();
        assert_eq!(saved.next_record, stop);
        assert_eq!(saved.output_bytes, fs::metadata(&out).unwrap().len());
        fs::OpenOptions::new()
            .append(true)
            .open(&out)
            .unwrap()
            .write_all(b"garbage\n")
            .unwrap();
        let rest = run(&input, &out, &opts).unwrap();
        assert_eq!(rest.stats, full.stats, "stop at {stop}");
        assert_eq!(fs::read(&out).unwrap(), expected, "stop at {stop}");
    }
}

#[test]
fn records_verify_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    write_corpus(&input, 11, 800);
    let out = dir.path().join("out.jsonl");
    run(&input, &out, &ScanOptions::default()).unwrap();
    let text = fs::read_to_string(&out).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let rec: CounterexampleRecord = serde_json::from_str(line).unwrap();
        rec.verify().unwrap();
        assert_eq!(serde_json::to_string(&rec).unwrap(), line);
        let mut reordered = rec.clone();
        reordered.non_burst_cycle.reverse();
        reordered.non_burst_cycle.rotate_left(1);
        reordered.verify().unwrap();
        let mut wrong_x = rec.clone();
        wrong_x.x = "nope".into();
        assert!(wrong_x.verify().is_err());
    }
}

#[test]
fn listed_policy_restricts_doubles() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    write_corpus(&input, 3, 400);
    let out = dir.path().join("out.jsonl");
    let all = run(&input, &out, &ScanOptions::default()).unwrap();
    let one = run(
        &input,
        &out,
        &ScanOptions {
            policy: VertexPolicy::Listed(vec!["0".into()]),
            ..ScanOptions::default()
        },
    )
    .unwrap();
    assert_eq!(one.stats.doubles_tested, one.stats.passed_filter);
    assert_eq!(all.stats.doubles_tested, 9 * all.stats.passed_filter);
    for line in fs::read_to_string(&out).unwrap().lines() {
        let rec: CounterexampleRecord = serde_json::from_str(line).unwrap();
        assert_eq!(rec.x, "0");
    }
}

#[test]
fn checkpoint_mismatches_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let out = dir.path().join("out.jsonl");
    let cp = dir.path().join("cp.json");
    write_corpus(&input, 1, 300);
    let opts = options(&cp);
    run(
        &input,
        &out,
        &ScanOptions {
            stop_after: Some(100),
            ..opts.clone()
        },
    )
    .unwrap();

    let other = ScanOptions {
        max_len: Some(6),
        ..opts.clone()
    };
    assert!(matches!(
        run(&input, &out, &other),
        Err(SearchError::OptionsMismatch)
    ));

    write_corpus(&input, 2, 300);
    assert!(matches!(
        run(&input, &out, &opts),
        Err(SearchError::InputMismatch(_))
    ));

    let mut saved: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cp).unwrap()).unwrap();
    saved["schema_version"] = 99.into();
    fs::write(&cp, saved.to_string()).unwrap();
    assert!(matches!(
        run(&input, &out, &opts),
        Err(SearchError::SchemaMismatch { found: 99, .. })
    ));

    fs::write(&cp, "{not json").unwrap();
    assert!(run(&input, &out, &opts).is_err());
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    write_corpus(&input, 21, 2000);
    let mut outputs = Vec::new();
    for (workers, batch_size) in [(1, 1), (2, 7), (4, 256), (8, 5000)] {
        let out = dir.path().join(format!("w{workers}.jsonl"));
        run(
            &input,
            &out,
            &ScanOptions {
                workers,
                batch_size,
                ..ScanOptions::default()
            },
        )
        .unwrap();
        outputs.push(fs::read(&out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}
