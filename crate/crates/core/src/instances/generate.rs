//! Seeded generators of promise instances. Every public generator re-checks
//! its output with the exhaustive oracle before returning it.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Answer, Eta, GapParams, HypergraphInstance, InstanceError, InstanceFile, SetCoverInstance};
use crate::oracle::{self, OracleConfig, OracleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("parameters outside the admissible range: {0}")]
    OutOfRange(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[usize], size: usize) -> Vec<usize> {
    let mut out: Vec<usize> = index::sample(rng, pool.len(), size)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    out.sort_unstable();
    out
}

/// Splits `elements` into `parts` non-empty blocks at random cut points.
fn random_partition(rng: &mut ChaCha8Rng, elements: &[usize], parts: usize) -> Vec<Vec<usize>> {
    debug_assert!(parts >= 1 && parts <= elements.len());
    let mut cuts: Vec<usize> = index::sample(rng, elements.len() - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(elements.len());
    let mut start = 0;
    cuts.into_iter()
        .map(|end| {
            let mut block = elements[start..end].to_vec();
            block.sort_unstable();
            start = end;
            block
        })
        .collect()
}

/// A set-cover instance with a planted exact cover of at most `max_planted`
/// blocks plus random distractors. No oracle check; used where instances are
/// too large for exhaustive search.
pub fn plant_yes_set_cover(
    n: usize,
    m: usize,
    max_planted: usize,
    seed: u64,
) -> Result<SetCoverInstance, GenerateError> {
    if n == 0 || m == 0 || max_planted == 0 {
        return Err(GenerateError::Infeasible("n, m and d must be positive".into()));
    }
    let mut rng = rng_for(seed);
    let planted = rng.gen_range(1..=max_planted.min(n).min(m));
    let mut elements: Vec<usize> = (0..n).collect();
    elements.shuffle(&mut rng);
    let universe: Vec<usize> = (0..n).collect();
    let mut sets = random_partition(&mut rng, &elements, planted);
    for _ in planted..m {
        let size = rng.gen_range(1..=n);
        sets.push(random_subset(&mut rng, &universe, size));
    }
    sets.shuffle(&mut rng);
    Ok(SetCoverInstance::new(n, sets)?)
}

/// A promise-YES set-cover instance: some exact cover of size at most `d`
/// exists.
pub fn generate_yes_set_cover(
    n: usize,
    m: usize,
    d: u64,
    eta: Eta,
    seed: u64,
) -> Result<SetCoverInstance, GenerateError> {
    let params = GapParams::new(d, eta)?;
    if !params.set_cover_in_range(m) {
        return Err(GenerateError::OutOfRange(format!(
            "d = {d} must exceed 2m/(3 eta - 1) with m = {m}, eta = {eta}"
        )));
    }
    let limit = usize::try_from(d).unwrap_or(usize::MAX);
    let inst = plant_yes_set_cover(n, m, limit, seed)?;
    let check = oracle::min_exact_cover_size(&inst, limit, &OracleConfig::default())?;
    if !check.is_feasible() {
        return Err(GenerateError::Infeasible("planted exact cover not confirmed".into()));
    }
    Ok(inst)
}

/// A promise-NO set-cover instance: every cover has more than `eta d` sets.
///
/// Built from `p > eta d` sets that each own a private element, so every
/// cover uses all of them; the remaining sets draw only from shared elements.
pub fn generate_no_set_cover(
    n: usize,
    m: usize,
    d: u64,
    eta: Eta,
    seed: u64,
) -> Result<SetCoverInstance, GenerateError> {
    let params = GapParams::new(d, eta)?;
    if !params.set_cover_in_range(m) {
        return Err(GenerateError::OutOfRange(format!(
            "d = {d} must exceed 2m/(3 eta - 1) with m = {m}, eta = {eta}"
        )));
    }
    if !params.exceeds_eta_d(m) {
        return Err(GenerateError::Infeasible(format!(
            "eta d = {eta} * {d} is at least m = {m}; no cover can exceed it"
        )));
    }
    let candidates: Vec<usize> = (1..=m)
        .filter(|&p| params.exceeds_eta_d(p))
        .filter(|&p| if p == m { n >= m } else { n > p })
        .collect();
    let mut rng = rng_for(seed);
    let Some(&private) = candidates.choose(&mut rng) else {
        return Err(GenerateError::Infeasible(format!(
            "n = {n} is too small for {m} sets with more than eta d private elements"
        )));
    };

    let mut elements: Vec<usize> = (0..n).collect();
    elements.shuffle(&mut rng);
    let (owned, shared) = elements.split_at(private);
    let mut sets: Vec<Vec<usize>> = owned.iter().map(|&e| vec![e]).collect();
    for _ in private..m {
        let size = rng.gen_range(1..=shared.len());
        sets.push(random_subset(&mut rng, shared, size));
    }
    for set in sets.iter_mut().take(private) {
        for &e in shared {
            if rng.gen_ratio(1, 3) {
                set.push(e);
            }
        }
    }
    for &e in shared {
        if !sets.iter().any(|s| s.contains(&e)) {
            let j = rng.gen_range(0..m);
            sets[j].push(e);
        }
    }
    for set in &mut sets {
        set.sort_unstable();
    }
    sets.shuffle(&mut rng);
    let inst = SetCoverInstance::new(n, sets)?;

    let check = oracle::min_cover_size(&inst, &OracleConfig::default())?;
    match check.optimum {
        Some(opt) if params.exceeds_eta_d(opt) => Ok(inst),
        _ => Err(GenerateError::Infeasible("minimum cover does not exceed eta d".into())),
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// A promise-YES hypergraph: a planted vertex set of size at most `d` meets
/// each of the `m` distinct edges in exactly one vertex.
pub fn generate_yes_hypergraph(
    n: usize,
    k: usize,
    m: usize,
    d: u64,
    eta: Eta,
    seed: u64,
) -> Result<HypergraphInstance, GenerateError> {
    let params = GapParams::new(d, eta)?;
    if !params.hypergraph_in_range(n) {
        return Err(GenerateError::OutOfRange(format!(
            "d = {d} must exceed n/(2 eta) with n = {n}, eta = {eta}"
        )));
    }
    if k < 2 || m == 0 {
        return Err(GenerateError::Infeasible("need k >= 2 and at least one edge".into()));
    }
    let limit = usize::try_from(d).unwrap_or(usize::MAX);
    let sizes: Vec<usize> = (1..=limit.min(n))
        .filter(|&t| n - t >= k - 1 && t as u128 * binomial(n - t, k - 1) >= m as u128)
        .collect();
    let mut rng = rng_for(seed);
    let Some(&t) = sizes.choose(&mut rng) else {
        return Err(GenerateError::Infeasible(format!(
            "cannot place {m} distinct {k}-edges around an exact cover of size <= {d} on {n} vertices"
        )));
    };
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(&mut rng);
    let (cover, rest) = vertices.split_at(t);
    let mut edges = BTreeSet::new();
    while edges.len() < m {
        let mut edge = random_subset(&mut rng, rest, k - 1);
        edge.push(*cover.choose(&mut rng).expect("cover is non-empty"));
        edge.sort_unstable();
        edges.insert(edge);
    }
    let mut edges: Vec<Vec<usize>> = edges.into_iter().collect();
    edges.shuffle(&mut rng);
    let inst = HypergraphInstance::new(n, k, edges)?;
    let check = oracle::has_exact_vertex_cover(&inst, limit, &OracleConfig::default())?;
    if !check.is_feasible() {
        return Err(GenerateError::Infeasible("planted exact vertex cover not confirmed".into()));
    }
    Ok(inst)
}

fn k_subsets(block: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn go(block: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..block.len() {
            cur.push(block[i]);
            go(block, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(block, k, 0, &mut Vec::new(), out);
}

/// A promise-NO hypergraph with at most `max_edges` edges: every vertex
/// cover has more than `eta d` vertices.
///
/// Vertex-disjoint complete `k`-uniform blocks of sizes `s_i` force covers of
/// size `sum (s_i - k + 1)`; random extra edges can only raise that.
pub fn generate_no_hypergraph(
    n: usize,
    k: usize,
    d: u64,
    eta: Eta,
    max_edges: usize,
    seed: u64,
) -> Result<HypergraphInstance, GenerateError> {
    const ATTEMPTS: usize = 400;
    let params = GapParams::new(d, eta)?;
    if !params.hypergraph_in_range(n) {
        return Err(GenerateError::OutOfRange(format!(
            "d = {d} must exceed n/(2 eta) with n = {n}, eta = {eta}"
        )));
    }
    if k < 2 || n < k || !params.exceeds_eta_d(n - k + 1) {
        return Err(GenerateError::Infeasible(format!(
            "no {k}-uniform hypergraph on {n} vertices has a vertex cover larger than eta d"
        )));
    }
    let mut rng = rng_for(seed);
    for _ in 0..ATTEMPTS {
        let mut vertices: Vec<usize> = (0..n).collect();
        vertices.shuffle(&mut rng);
        let mut blocks = Vec::new();
        let mut start = 0;
        while n - start >= k && !(start > 0 && rng.gen_ratio(1, 6)) {
            let s = rng.gen_range(k..=n - start);
            blocks.push(&vertices[start..start + s]);
            start += s;
        }
        let forced: usize = blocks.iter().map(|b| b.len() - k + 1).sum();
        let count: u128 = blocks.iter().map(|b| binomial(b.len(), k)).sum();
        if !params.exceeds_eta_d(forced) || count > max_edges as u128 {
            continue;
        }
        let mut edges = Vec::new();
        for block in &blocks {
            let mut sorted = block.to_vec();
            sorted.sort_unstable();
            k_subsets(&sorted, k, &mut edges);
        }
        let mut present: BTreeSet<Vec<usize>> = edges.iter().cloned().collect();
        let room = max_edges - edges.len();
        let extra = if room == 0 { 0 } else { rng.gen_range(0..=room.min(3)) };
        let all: Vec<usize> = (0..n).collect();
        let total = binomial(n, k);
        let target = (edges.len() + extra).min(max_edges);
        while edges.len() < target && (present.len() as u128) < total {
            let e = random_subset(&mut rng, &all, k);
            if present.insert(e.clone()) {
                edges.push(e);
            }
        }
        edges.shuffle(&mut rng);
        let inst = HypergraphInstance::new(n, k, edges)?;
        let check = oracle::min_vertex_cover_size(&inst, &OracleConfig::default())?;
        if check.optimum.is_some_and(|opt| params.exceeds_eta_d(opt)) {
            return Ok(inst);
        }
    }
    Err(GenerateError::Infeasible(format!(
        "no block structure within {max_edges} edges found after {ATTEMPTS} attempts"
    )))
}

/// Which side of which promise problem to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PromiseKind {
    YesSetCover,
    NoSetCover,
    YesHypergraph,
    NoHypergraph,
}

impl PromiseKind {
    pub const ALL: [PromiseKind; 4] = [
        PromiseKind::YesSetCover,
        PromiseKind::NoSetCover,
        PromiseKind::YesHypergraph,
        PromiseKind::NoHypergraph,
    ];

    pub fn expected(self) -> Answer {
        match self {
            PromiseKind::YesSetCover | PromiseKind::YesHypergraph => Answer::Yes,
            PromiseKind::NoSetCover | PromiseKind::NoHypergraph => Answer::No,
        }
    }
}

/// A generated instance together with the side of the promise it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub kind: PromiseKind,
    pub file: InstanceFile,
}

/// Draws in-range promise instances with random sizes bounded by `max_n`
/// (elements or vertices) and `max_m` (sets or edges), cycling through the
/// four kinds.
pub struct PromiseSampler {
    rng: ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    etas: Vec<Eta>,
}

impl PromiseSampler {
    pub fn new(seed: u64, max_n: usize, max_m: usize, etas: Vec<Eta>) -> Self {
        assert!(!etas.is_empty(), "at least one eta is required");
        assert!(max_n >= 5 && max_m >= 10, "size caps too small to realise every kind");
        PromiseSampler {
            rng: rng_for(seed),
            max_n,
            max_m,
            etas,
        }
    }

    fn smallest_d(mut in_range: impl FnMut(u64) -> bool) -> u64 {
        (1..).find(|&d| in_range(d)).expect("range predicates hold for large d")
    }

    fn try_draw(&mut self, kind: PromiseKind) -> Result<InstanceFile, GenerateError> {
        let eta = *self.etas.choose(&mut self.rng).expect("non-empty");
        let seed = self.rng.gen();
        let params_for = |d| GapParams::new(d, eta);
        match kind {
            PromiseKind::YesSetCover => {
                let m = self.rng.gen_range(1..=self.max_m);
                let n = self.rng.gen_range(1..=self.max_n);
                let lo = Self::smallest_d(|d| params_for(d).unwrap().set_cover_in_range(m));
                if lo > m as u64 {
                    return Err(GenerateError::Infeasible("range empty".into()));
                }
                let d = self.rng.gen_range(lo..=m as u64);
                let instance = generate_yes_set_cover(n, m, d, eta, seed)?;
                Ok(InstanceFile::SetCover { instance, params: params_for(d)? })
            }
            PromiseKind::NoSetCover => {
                let m = self.rng.gen_range(2..=self.max_m);
                let lo = Self::smallest_d(|d| params_for(d).unwrap().set_cover_in_range(m));
                let ds: Vec<u64> =
                    (lo..=m as u64).filter(|&d| params_for(d).unwrap().exceeds_eta_d(m)).collect();
                let &d = ds.choose(&mut self.rng).ok_or_else(|| GenerateError::Infeasible("no d".into()))?;
                let n = self.rng.gen_range(1..=self.max_n);
                let instance = generate_no_set_cover(n, m, d, eta, seed)?;
                Ok(InstanceFile::SetCover { instance, params: params_for(d)? })
            }
            PromiseKind::YesHypergraph => {
                let n = self.rng.gen_range(3..=self.max_n);
                let k = self.rng.gen_range(2..=3);
                let m = self.rng.gen_range(1..=self.max_m);
                let lo = Self::smallest_d(|d| params_for(d).unwrap().hypergraph_in_range(n));
                let d = self.rng.gen_range(lo..=(n as u64).max(lo));
                let instance = generate_yes_hypergraph(n, k, m, d, eta, seed)?;
                Ok(InstanceFile::Hypergraph { instance, params: params_for(d)? })
            }
            PromiseKind::NoHypergraph => {
                let n = self.rng.gen_range(3..=self.max_n);
                let k = self.rng.gen_range(2..=3);
                let d = Self::smallest_d(|d| params_for(d).unwrap().hypergraph_in_range(n));
                let instance = generate_no_hypergraph(n, k, d, eta, self.max_m, seed)?;
                Ok(InstanceFile::Hypergraph { instance, params: params_for(d)? })
            }
        }
    }

    /// Retries parameter draws until the generator for `kind` succeeds.
    pub fn draw(&mut self, kind: PromiseKind) -> Result<GeneratedInstance, GenerateError> {
        const ATTEMPTS: usize = 10_000;
        let mut last = None;
        for _ in 0..ATTEMPTS {
            match self.try_draw(kind) {
                Ok(file) => return Ok(GeneratedInstance { kind, file }),
                Err(e @ (GenerateError::Infeasible(_) | GenerateError::OutOfRange(_))) => {
                    last = Some(e)
                }
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("at least one attempt"))
    }

    /// `count` instances, kinds in round-robin order.
    pub fn batch(&mut self, count: usize) -> Result<Vec<GeneratedInstance>, GenerateError> {
        (0..count)
            .map(|i| self.draw(PromiseKind::ALL[i % PromiseKind::ALL.len()]))
            .collect()
    }
}
