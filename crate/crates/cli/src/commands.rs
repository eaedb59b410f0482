use std::path::{Path, PathBuf};
use std::time::Instant;

use latgap::instances::generate::{
    generate_no_hypergraph, generate_no_set_cover, generate_yes_hypergraph,
    generate_yes_set_cover, GenerateError, PromiseSampler,
};
use latgap::instances::{parse_instance, serialize_instance, ParseError};
use latgap::lemmas::{audit_file, AuditError, AuditReport};
use latgap::oracle::{
    classify_hypergraph, classify_set_cover, Classification, OracleConfig, OracleError,
    OracleReport,
};
use latgap::{
    distinguish_hypergraph_vc, distinguish_set_cover, DistinguishError, Eta, GapParams,
    InstanceFile, Verdict,
};
use serde::Serialize;

use crate::{digest, exit};

/// Result of `solve`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub instance_digest: String,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub instance_type: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<GapParams>,
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Only present with `--timing`, so default reports are reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
    pub exit_code: i32,
}

#[derive(Debug, Serialize)]
pub struct OracleCheck {
    pub classification: Classification,
    /// `None` when the instance is outside the promise.
    pub agreement: Option<bool>,
    pub certificate: OracleReport,
}

pub struct SolveOptions {
    pub verify: bool,
    pub timing: bool,
    pub oracle: OracleConfig,
}

fn oracle_report(file: &InstanceFile, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    match file {
        InstanceFile::SetCover { instance, params } => classify_set_cover(instance, params, cfg),
        InstanceFile::Hypergraph { instance, params } => classify_hypergraph(instance, params, cfg),
    }
}

fn distinguish(file: &InstanceFile) -> Result<Verdict, DistinguishError> {
    match file {
        InstanceFile::SetCover { instance, params } => distinguish_set_cover(instance, params),
        InstanceFile::Hypergraph { instance, params } => distinguish_hypergraph_vc(instance, params),
    }
}

fn parse_error_code(e: &ParseError) -> i32 {
    match e {
        ParseError::Malformed { .. } | ParseError::Invalid(_) => exit::INVALID_INSTANCE,
    }
}

pub fn solve_bytes(bytes: &[u8], opts: &SolveOptions) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport {
        instance_digest: digest(bytes),
        instance_type: None,
        params: None,
        verdict: None,
        oracle: None,
        error: None,
        wall_time_us: None,
        exit_code: exit::OK,
    };
    let finish = |mut r: RunReport| {
        if opts.timing {
            r.wall_time_us = Some(start.elapsed().as_micros() as u64);
        }
        r
    };

    let file = match parse_instance(bytes) {
        Ok(f) => f,
        Err(e) => {
            report.exit_code = parse_error_code(&e);
            report.error = Some(e.to_string());
            return finish(report);
        }
    };
    report.instance_type = Some(file.type_tag());
    report.params = Some(file.params());

    match distinguish(&file) {
        Ok(v) => report.verdict = Some(v),
        Err(e) => {
            report.exit_code = match e {
                DistinguishError::OutOfRange(_) => exit::OUT_OF_RANGE,
                _ => exit::INVALID_INSTANCE,
            };
            report.error = Some(e.to_string());
            return finish(report);
        }
    }

    if opts.verify {
        match oracle_report(&file, &opts.oracle) {
            Ok(cert) => {
                let answer = report.verdict.as_ref().map(|v| v.answer);
                report.oracle = Some(OracleCheck {
                    classification: cert.classification,
                    agreement: cert.classification.answer().map(|a| Some(a) == answer),
                    certificate: cert,
                });
            }
            Err(e) => {
                report.exit_code = exit::BUDGET;
                report.error = Some(e.to_string());
            }
        }
    }
    finish(report)
}

pub fn solve(path: &Path, opts: &SolveOptions) -> RunReport {
    match std::fs::read(path) {
        Ok(bytes) => solve_bytes(&bytes, opts),
        Err(e) => RunReport {
            instance_digest: String::new(),
            instance_type: None,
            params: None,
            verdict: None,
            oracle: None,
            error: Some(format!("cannot read {}: {e}", path.display())),
            wall_time_us: None,
            exit_code: exit::IO,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerateKind {
    YesSetCover,
    NoSetCover,
    YesHypergraph,
    NoHypergraph,
}

impl std::str::FromStr for GenerateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "yes-set-cover" => Ok(GenerateKind::YesSetCover),
            "no-set-cover" => Ok(GenerateKind::NoSetCover),
            "yes-hypergraph" => Ok(GenerateKind::YesHypergraph),
            "no-hypergraph" => Ok(GenerateKind::NoHypergraph),
            other => Err(format!(
                "unknown kind {other:?}; expected yes-set-cover, no-set-cover, yes-hypergraph or no-hypergraph"
            )),
        }
    }
}

pub struct GenerateRequest {
    pub kind: GenerateKind,
    /// Elements (set cover) or vertices (hypergraph).
    pub n: usize,
    /// Sets, or edges for YES hypergraphs; the edge cap for NO hypergraphs.
    pub m: usize,
    pub k: usize,
    pub d: u64,
    pub eta: Eta,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct GenerateReport {
    pub instance_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub certificate: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

pub fn generate_file(req: &GenerateRequest) -> Result<InstanceFile, GenerateError> {
    let params = GapParams::new(req.d, req.eta)?;
    Ok(match req.kind {
        GenerateKind::YesSetCover => InstanceFile::SetCover {
            instance: generate_yes_set_cover(req.n, req.m, req.d, req.eta, req.seed)?,
            params,
        },
        GenerateKind::NoSetCover => InstanceFile::SetCover {
            instance: generate_no_set_cover(req.n, req.m, req.d, req.eta, req.seed)?,
            params,
        },
        GenerateKind::YesHypergraph => InstanceFile::Hypergraph {
            instance: generate_yes_hypergraph(req.n, req.k, req.m, req.d, req.eta, req.seed)?,
            params,
        },
        GenerateKind::NoHypergraph => InstanceFile::Hypergraph {
            instance: generate_no_hypergraph(req.n, req.k, req.d, req.eta, req.m, req.seed)?,
            params,
        },
    })
}

/// Generates, writes and certifies an instance. Returns the report and, when
/// no output path was given, the instance bytes for stdout.
pub fn generate(req: &GenerateRequest, cfg: &OracleConfig) -> (GenerateReport, Option<Vec<u8>>) {
    let fail = |code, msg: String| GenerateReport {
        instance_digest: String::new(),
        out: req.out.clone(),
        certificate: None,
        error: Some(msg),
        exit_code: code,
    };
    let file = match generate_file(req) {
        Ok(f) => f,
        Err(e) => {
            let code = match e {
                GenerateError::Oracle(_) => exit::BUDGET,
                _ => exit::OUT_OF_RANGE,
            };
            return (fail(code, e.to_string()), None);
        }
    };
    let bytes = serialize_instance(&file);
    let certificate = match oracle_report(&file, cfg) {
        Ok(c) => c,
        Err(e) => return (fail(exit::BUDGET, e.to_string()), None),
    };
    let mut report = GenerateReport {
        instance_digest: digest(&bytes),
        out: req.out.clone(),
        certificate: Some(certificate),
        error: None,
        exit_code: exit::OK,
    };
    match &req.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &bytes) {
                report.error = Some(format!("cannot write {}: {e}", path.display()));
                report.exit_code = exit::IO;
            }
            (report, None)
        }
        None => (report, Some(bytes)),
    }
}

#[derive(Debug, Serialize)]
pub struct OracleCommandReport {
    pub instance_digest: String,
    pub report: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

pub fn oracle(path: &Path, cfg: &OracleConfig) -> OracleCommandReport {
    let mut out = OracleCommandReport {
        instance_digest: String::new(),
        report: None,
        error: None,
        exit_code: exit::OK,
    };
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            out.error = Some(format!("cannot read {}: {e}", path.display()));
            out.exit_code = exit::IO;
            return out;
        }
    };
    out.instance_digest = digest(&bytes);
    match parse_instance(&bytes) {
        Ok(file) => match oracle_report(&file, cfg) {
            Ok(r) => out.report = Some(r),
            Err(e) => {
                out.error = Some(e.to_string());
                out.exit_code = exit::BUDGET;
            }
        },
        Err(e) => {
            out.exit_code = parse_error_code(&e);
            out.error = Some(e.to_string());
        }
    }
    out
}

/// One audited instance in a lemma-check run.
#[derive(Debug, Serialize)]
pub struct LemmaEntry {
    pub index: usize,
    pub instance_digest: String,
    pub expected: Option<latgap::Answer>,
    #[serde(flatten)]
    pub audit: AuditReport,
}

#[derive(Debug, Serialize)]
pub struct LemmaSummary {
    pub instances: usize,
    pub promise_instances: usize,
    pub agreements: usize,
    pub violations: usize,
    pub entries: Vec<LemmaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

impl LemmaSummary {
    fn from_entries(entries: Vec<LemmaEntry>) -> Self {
        let promise_instances = entries
            .iter()
            .filter(|e| e.audit.classification != Classification::Outside)
            .count();
        let agreements = entries.iter().filter(|e| e.audit.agrees()).count();
        let violations = entries.iter().map(|e| e.audit.violations.len()).sum();
        // Instances generated for one side must land on that side.
        let misplaced = entries
            .iter()
            .any(|e| e.expected.is_some_and(|x| e.audit.classification.answer() != Some(x)));
        let exit_code = if violations > 0 || misplaced {
            exit::LEMMA_VIOLATION
        } else {
            exit::OK
        };
        LemmaSummary {
            instances: entries.len(),
            promise_instances,
            agreements,
            violations,
            entries,
            error: None,
            exit_code,
        }
    }

    fn failed(code: i32, msg: String) -> Self {
        LemmaSummary {
            instances: 0,
            promise_instances: 0,
            agreements: 0,
            violations: 0,
            entries: Vec::new(),
            error: Some(msg),
            exit_code: code,
        }
    }
}

fn audit_error_code(e: &AuditError) -> i32 {
    match e {
        AuditError::Oracle(_) => exit::BUDGET,
        AuditError::Distinguish(DistinguishError::OutOfRange(_)) => exit::OUT_OF_RANGE,
        AuditError::Distinguish(_) => exit::INVALID_INSTANCE,
    }
}

/// Audits every instance in `files`, spreading the work over `threads`
/// workers; entries come back in input order.
pub fn check_lemmas(
    files: &[(InstanceFile, Option<latgap::Answer>)],
    cfg: &OracleConfig,
    threads: usize,
) -> LemmaSummary {
    let threads = threads.max(1);
    let chunk = files.len().div_ceil(threads).max(1);
    let results: Vec<Result<LemmaEntry, AuditError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(i, (file, expected))| {
                            audit_file(file, cfg).map(|audit| LemmaEntry {
                                index: c * chunk + i,
                                instance_digest: digest(&serialize_instance(file)),
                                expected: *expected,
                                audit,
                            })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("audit worker panicked"))
            .collect()
    });
    let mut entries = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => return LemmaSummary::failed(audit_error_code(&e), e.to_string()),
        }
    }
    LemmaSummary::from_entries(entries)
}

pub fn check_lemmas_path(path: &Path, cfg: &OracleConfig) -> LemmaSummary {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            return LemmaSummary::failed(exit::IO, format!("cannot read {}: {e}", path.display()))
        }
    };
    match parse_instance(&bytes) {
        Ok(file) => check_lemmas(&[(file, None)], cfg, 1),
        Err(e) => LemmaSummary::failed(parse_error_code(&e), e.to_string()),
    }
}

/// The η values used for random batches.
pub fn default_etas() -> Vec<Eta> {
    [(3, 2), (2, 1), (3, 1)]
        .into_iter()
        .map(|(p, q)| Eta::new(p, q).expect("constant etas are valid"))
        .collect()
}

/// Random mixed batch with elements/vertices and sets/edges capped at 12.
pub fn random_batch(
    count: usize,
    seed: u64,
) -> Result<Vec<(InstanceFile, Option<latgap::Answer>)>, GenerateError> {
    let mut sampler = PromiseSampler::new(seed, 12, 12, default_etas());
    Ok(sampler
        .batch(count)?
        .into_iter()
        .map(|g| (g.file, Some(g.kind.expected())))
        .collect())
}

pub fn check_lemmas_random(count: usize, seed: u64, cfg: &OracleConfig, threads: usize) -> LemmaSummary {
    match random_batch(count, seed) {
        Ok(files) => check_lemmas(&files, cfg, threads),
        Err(GenerateError::Oracle(e)) => LemmaSummary::failed(exit::BUDGET, e.to_string()),
        Err(e) => LemmaSummary::failed(exit::OUT_OF_RANGE, e.to_string()),
    }
}
