use std::time::Instant;

use latgap::instances::generate::{plant_yes_set_cover, GenerateError};
use latgap::instances::{serialize_instance, SetCoverInstance};
use latgap::linalg::kernel_lattice_basis;
use latgap::{distinguish_set_cover, Answer, DecisionStep, DistinguishError, Eta, GapParams, InstanceFile};
use serde::Serialize;
use thiserror::Error;

use crate::digest;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("empty ladder: from={from} to={to} step={step}")]
    EmptyLadder { from: usize, to: usize, step: usize },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Distinguish(#[from] DistinguishError),
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    pub digest: String,
    pub answer: Answer,
    pub decided_at: DecisionStep,
    /// Median over the repetitions, microseconds.
    pub kernel_us: u64,
    pub total_us: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Ladder {
    pub from: usize,
    pub to: usize,
    pub step: usize,
}

impl Ladder {
    pub fn sizes(&self) -> Vec<usize> {
        if self.step == 0 || self.from == 0 {
            return Vec::new();
        }
        (self.from..=self.to).step_by(self.step).collect()
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Smallest d that keeps an n = m instance inside the range for η = 2.
pub fn bench_params(m: usize) -> GapParams {
    let eta = Eta::new(2, 1).expect("2 is a valid eta");
    let d = (2 * m as u64) / 5 + 1;
    GapParams::new(d, eta).expect("d is positive")
}

pub fn bench_instance(size: usize, seed: u64) -> Result<(SetCoverInstance, GapParams), BenchError> {
    let params = bench_params(size);
    let inst = plant_yes_set_cover(size, size, params.d() as usize, seed ^ size as u64)?;
    Ok((inst, params))
}

pub fn run(ladder: Ladder, seed: u64, reps: usize) -> Result<Vec<BenchRow>, BenchError> {
    let sizes = ladder.sizes();
    if sizes.is_empty() {
        return Err(BenchError::EmptyLadder {
            from: ladder.from,
            to: ladder.to,
            step: ladder.step,
        });
    }
    let reps = reps.max(1);
    let mut rows = Vec::with_capacity(sizes.len());
    for size in sizes {
        let (inst, params) = bench_instance(size, seed)?;
        let bytes = serialize_instance(&InstanceFile::SetCover {
            instance: inst.clone(),
            params,
        });
        let b = inst.incidence_matrix();
        let mut kernel = Vec::with_capacity(reps);
        let mut total = Vec::with_capacity(reps);
        let mut verdict = None;
        for _ in 0..reps {
            let t = Instant::now();
            std::hint::black_box(kernel_lattice_basis(&b));
            kernel.push(t.elapsed().as_micros() as u64);
            let t = Instant::now();
            verdict = Some(distinguish_set_cover(&inst, &params)?);
            total.push(t.elapsed().as_micros() as u64);
        }
        let verdict = verdict.expect("at least one repetition");
        rows.push(BenchRow {
            n: size,
            m: size,
            d: params.d(),
            digest: digest(&bytes),
            answer: verdict.answer,
            decided_at: verdict.decided_at,
            kernel_us: median(kernel),
            total_us: median(total),
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,m,d,digest,answer,decided_at,kernel_us,total_us\n");
    for r in rows {
        let answer = serde_json::to_value(r.answer).expect("enum serialises");
        let step = serde_json::to_value(r.decided_at).expect("enum serialises");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.d,
            r.digest,
            answer.as_str().unwrap_or_default(),
            step.as_str().unwrap_or_default(),
            r.kernel_us,
            r.total_us
        ));
    }
    out
}
