//! Streaming counterexample search over graph6 corpora.
//!
//! Each record is filtered by the burst condition; every graph that passes
//! is star-doubled at each selected vertex, and a record is emitted whenever
//! the double has a non-burst induced cycle. Records are processed in
//! batches by a worker pool and written strictly in input order, so the
//! output does not depend on the worker count. A checkpoint written after
//! every batch allows an interrupted scan to resume with identical output.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::burst::is_burst;
use crate::constructions::{star_double_minus, VertexPolicy};
use crate::cycles::InducedCycle;
use crate::graph::GraphSource;
use crate::graph6::{parse_graph6, Graph6Error};
use crate::tran::{check_tran_condition, TranOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// Malformed records remembered in full; the rest are only counted.
const MALFORMED_KEEP: usize = 100;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("checkpoint schema version {found}, expected {expected}")]
    SchemaMismatch { found: u32, expected: u32 },
    #[error("checkpoint was written for a different input ({0})")]
    InputMismatch(String),
    #[error("checkpoint was written with different search options")]
    OptionsMismatch,
    #[error("checkpointing needs a named input file")]
    CheckpointNeedsFile,
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("record does not verify: {0}")]
    Verification(String),
}

/// Counters reported at the end of a scan. `graphs_seen` always equals
/// `passed_filter + failed_filter + malformed`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub graphs_seen: u64,
    pub passed_filter: u64,
    pub failed_filter: u64,
    /// Subset of `failed_filter` rejected only because the check was capped.
    pub filter_truncated: u64,
    pub malformed: u64,
    pub doubles_tested: u64,
    pub counterexamples: u64,
}

impl ScanStats {
    /// Fixed `key=value` summary line.
    pub fn kv_line(&self) -> String {
        format!(
            "graphs_seen={} passed_filter={} failed_filter={} filter_truncated={} malformed={} doubles_tested={} counterexamples={}",
            self.graphs_seen,
            self.passed_filter,
            self.failed_filter,
            self.filter_truncated,
            self.malformed,
            self.doubles_tested,
            self.counterexamples
        )
    }
}

/// Identity of a named input: its path and the SHA-256 of its contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputIdentity {
    pub path: String,
    pub sha256: String,
}

impl InputIdentity {
    pub fn of_file(path: &Path) -> io::Result<Self> {
        let mut file = File::open(path)?;
        let mut hasher = Sha256::new();
        let mut buf = vec![0u8; 1 << 16];
        loop {
            let k = file.read(&mut buf)?;
            if k == 0 {
                break;
            }
            hasher.update(&buf[..k]);
        }
        Ok(InputIdentity {
            path: path.display().to_string(),
            sha256: format!("{:x}", hasher.finalize()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    /// Induced cycles of the base graph, by length.
    pub base_cycles: BTreeMap<usize, u64>,
    /// Induced cycles of the double examined before the first non-burst one.
    pub double_cycles_examined: BTreeMap<usize, u64>,
}

/// One counterexample: a base graph satisfying the burst condition whose
/// star double at `x` violates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub schema: u32,
    pub source: GraphSource,
    pub base_graph6: String,
    pub base_n: usize,
    pub x: String,
    pub double_n: usize,
    /// Labels of the non-burst cycle in the double, in canonical order.
    pub non_burst_cycle: Vec<String>,
    pub verdict_summary: VerdictSummary,
}

impl CounterexampleRecord {
    /// Re-derives the record from its graph6 text alone.
    pub fn verify(&self) -> Result<(), SearchError> {
        let fail = |m: &str| Err(SearchError::Verification(m.to_string()));
        let base = parse_graph6(self.base_graph6.as_bytes())
            .map_err(|e| SearchError::Verification(e.to_string()))?;
        if base.n() != self.base_n {
            return fail("base order differs");
        }
        if !check_tran_condition(&base, &TranOptions::default()).all_burst {
            return fail("base graph has a non-burst induced cycle");
        }
        let Some(x) = base.index_of(&self.x) else {
            return fail("x is not a vertex of the base graph");
        };
        let double = star_double_minus(&base, x).expect("x exists").graph;
        if double.n() != self.double_n {
            return fail("double order differs");
        }
        let seq: Option<Vec<usize>> = self
            .non_burst_cycle
            .iter()
            .map(|l| double.index_of(l))
            .collect();
        let Some(seq) = seq else {
            return fail("cycle mentions a vertex missing from the double");
        };
        let cycle = InducedCycle::canonical(&seq);
        match is_burst(&double, &cycle) {
            Err(e) => return Err(SearchError::Verification(e.to_string())),
            Ok(Some(_)) => return fail("cycle is burst in the double"),
            Ok(None) => {}
        }
        if check_tran_condition(&double, &TranOptions::early_exit()).all_burst {
            return fail("double satisfies the burst condition");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub schema_version: u32,
    pub input: InputIdentity,
    /// Fingerprint of the options that affect output.
    pub options: String,
    pub next_record: u64,
    pub next_offset: u64,
    pub output_bytes: u64,
    pub stats: ScanStats,
    pub complete: bool,
}

impl SearchCheckpoint {
    pub fn load(path: &Path) -> Result<Option<Self>, SearchError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        let found = value
            .get("schema_version")
            .and_then(|v| v.as_u64())
            .unwrap_or(0) as u32;
        if found != SCHEMA_VERSION {
            return Err(SearchError::SchemaMismatch {
                found,
                expected: SCHEMA_VERSION,
            });
        }
        serde_json::from_value(value)
            .map(Some)
            .map_err(|e| SearchError::Checkpoint {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn store(&self, path: &Path) -> Result<(), SearchError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, self).map_err(io::Error::other)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Opens `path` for JSON-Lines output. With an existing checkpoint the file
/// is cut back to the checkpointed length, dropping anything written after
/// the last completed batch; otherwise it is truncated.
pub fn open_output(path: &Path, checkpoint: Option<&Path>) -> Result<File, SearchError> {
    let resume = match checkpoint {
        Some(cp) => SearchCheckpoint::load(cp)?,
        None => None,
    };
    let mut file = OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(false)
        .open(path)?;
    let keep = resume.map_or(0, |cp| cp.output_bytes);
    file.set_len(keep)?;
    file.seek(SeekFrom::Start(keep))?;
    Ok(file)
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub max_len: Option<usize>,
    pub policy: VertexPolicy,
    pub workers: usize,
    pub batch_size: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop cleanly once this many records have been consumed in total
    /// (counting records from before a resume).
    pub stop_after: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_len: None,
            policy: VertexPolicy::All,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            batch_size: 1024,
            checkpoint: None,
            stop_after: None,
        }
    }
}

impl ScanOptions {
    fn fingerprint(&self) -> String {
        let policy = match &self.policy {
            VertexPolicy::All => "all".to_string(),
            VertexPolicy::Listed(ls) => format!("listed:{}", ls.join(",")),
        };
        format!("max_len={:?};policy={policy}", self.max_len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalformedRecord {
    pub record: u64,
    pub offset: u64,
    pub error: Graph6Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub stats: ScanStats,
    /// First malformed records, with their byte offsets.
    pub malformed: Vec<MalformedRecord>,
    /// True when `stop_after` ended the scan before the input did.
    pub interrupted: bool,
    /// True when the checkpoint said the input was already fully scanned.
    pub already_complete: bool,
}

enum Processed {
    Malformed(Graph6Error),
    Failed { truncated: bool },
    Passed { doubles: u64, lines: Vec<String> },
}

struct RawRecord {
    index: u64,
    offset: u64,
    bytes: Vec<u8>,
}

fn process(raw: &RawRecord, source_path: &str, opts: &ScanOptions) -> Processed {
    let g = match parse_graph6(&raw.bytes) {
        Ok(g) => g,
        Err(e) => return Processed::Malformed(e),
    };
    let filter_opts = TranOptions {
        max_len: opts.max_len,
        ..TranOptions::early_exit()
    };
    let base = check_tran_condition(&g, &filter_opts);
    if !base.all_burst {
        return Processed::Failed {
            truncated: base.non_burst_total == 0,
        };
    }
    let base_graph6 = String::from_utf8_lossy(strip_header(&raw.bytes)).into_owned();
    let mut lines = Vec::new();
    let mut doubles = 0;
    for x in opts.policy.select(&g) {
        let d = star_double_minus(&g, x).expect("selected vertex exists");
        doubles += 1;
        let v = check_tran_condition(&d.graph, &filter_opts);
        let Some(cycle) = v.non_burst_cycles.first() else {
            continue;
        };
        let rec = CounterexampleRecord {
            schema: SCHEMA_VERSION,
            source: GraphSource::File {
                path: source_path.to_string(),
                record: raw.index,
            },
            base_graph6: base_graph6.clone(),
            base_n: g.n(),
            x: g.label(x).to_string(),
            double_n: d.graph.n(),
            non_burst_cycle: cycle
                .labels(&d.graph)
                .into_iter()
                .map(String::from)
                .collect(),
            verdict_summary: VerdictSummary {
                base_cycles: base.counts.clone(),
                double_cycles_examined: v.counts.clone(),
            },
        };
        lines.push(serde_json::to_string(&rec).expect("record serialises"));
    }
    Processed::Passed { doubles, lines }
}

fn strip_header(bytes: &[u8]) -> &[u8] {
    bytes.strip_prefix(crate::graph6::HEADER).unwrap_or(bytes)
}

/// Scans newline-separated graph6 records from `input`, writing one JSON
/// line per counterexample to `sink`.
///
/// `identity`, when given, names the input in each record's `source`.
/// With `opts.checkpoint` set it is required and must match the file; an
/// existing checkpoint is validated and the scan resumes after its last
/// completed batch. The sink must then already be positioned at the
/// checkpointed output length (see [`open_output`]).
pub fn scan_stream<R: BufRead, W: Write>(
    mut input: R,
    identity: Option<InputIdentity>,
    opts: &ScanOptions,
    sink: &mut W,
) -> Result<ScanOutcome, SearchError> {
    let source_path = identity
        .as_ref()
        .map_or("-".to_string(), |i| i.path.clone());
    let mut stats = ScanStats::default();
    let mut next_record = 0u64;
    let mut offset = 0u64;
    let mut output_bytes = 0u64;

    let checkpoint = match &opts.checkpoint {
        None => None,
        Some(path) => {
            let id = identity.clone().ok_or(SearchError::CheckpointNeedsFile)?;
            if let Some(cp) = SearchCheckpoint::load(path)? {
                if cp.input.sha256 != id.sha256 {
                    return Err(SearchError::InputMismatch(cp.input.path));
                }
                if cp.options != opts.fingerprint() {
                    return Err(SearchError::OptionsMismatch);
                }
                if cp.complete {
                    return Ok(ScanOutcome {
                        stats: cp.stats,
                        malformed: vec![],
                        interrupted: false,
                        already_complete: true,
                    });
                }
                io::copy(&mut (&mut input).take(cp.next_offset), &mut io::sink())?;
                stats = cp.stats;
                next_record = cp.next_record;
                offset = cp.next_offset;
                output_bytes = cp.output_bytes;
            }
            Some((path.clone(), id))
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let batch_size = opts.batch_size.max(1);
    let mut malformed = Vec::new();
    let mut interrupted = false;
    let mut line = Vec::new();

    loop {
        let mut batch = Vec::with_capacity(batch_size);
        let mut eof = false;
        while batch.len() < batch_size {
            if opts
                .stop_after
                .is_some_and(|s| next_record + batch.len() as u64 >= s)
            {
                interrupted = true;
                break;
            }
            line.clear();
            let start = offset;
            let k = input.read_until(b'\n', &mut line)?;
            if k == 0 {
                eof = true;
                break;
            }
            offset += k as u64;
            let mut rec = line.as_slice();
            rec = rec.strip_suffix(b"\n").unwrap_or(rec);
            rec = rec.strip_suffix(b"\r").unwrap_or(rec);
            if rec.iter().all(u8::is_ascii_whitespace) {
                continue;
            }
            batch.push(RawRecord {
                index: next_record + batch.len() as u64,
                offset: start,
                bytes: rec.to_vec(),
            });
        }

        let results: Vec<Processed> = if opts.workers <= 1 {
            batch
                .iter()
                .map(|r| process(r, &source_path, opts))
                .collect()
        } else {
            pool.install(|| {
                batch
                    .par_iter()
                    .map(|r| process(r, &source_path, opts))
                    .collect()
            })
        };

        for (raw, result) in batch.iter().zip(results) {
            stats.graphs_seen += 1;
            match result {
                Processed::Malformed(error) => {
                    stats.malformed += 1;
                    if malformed.len() < MALFORMED_KEEP {
                        malformed.push(MalformedRecord {
                            record: raw.index,
                            offset: raw.offset,
                            error,
                        });
                    }
                }
                Processed::Failed { truncated } => {
                    stats.failed_filter += 1;
                    stats.filter_truncated += truncated as u64;
                }
                Processed::Passed { doubles, lines } => {
                    stats.passed_filter += 1;
                    stats.doubles_tested += doubles;
                    for l in lines {
                        sink.write_all(l.as_bytes())?;
                        sink.write_all(b"\n")?;
                        output_bytes += l.len() as u64 + 1;
                        stats.counterexamples += 1;
                    }
                }
            }
        }
        next_record += batch.len() as u64;
        sink.flush()?;

        let done = eof || interrupted;
        if let Some((path, id)) = &checkpoint {
            SearchCheckpoint {
                schema_version: SCHEMA_VERSION,
                input: id.clone(),
                options: opts.fingerprint(),
                next_record,
                next_offset: offset,
                output_bytes,
                stats: stats.clone(),
                complete: eof,
            }
            .store(path)?;
        }
        if done {
            break;
        }
    }

    Ok(ScanOutcome {
        stats,
        malformed,
        interrupted,
        already_complete: false,
    })
}
