//! Exhaustive ground truth for small instances: minimum exact cover, minimum
//! cover, minimum vertex cover and minimum exact vertex cover.
//!
//! All searches run over `u128` bit masks and count visited nodes; when the
//! configured node budget runs out they fail instead of running on.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::instances::{Answer, GapParams, HypergraphInstance, SetCoverInstance};

type Mask = u128;
const MAX_ELEMENTS: usize = Mask::BITS as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("instance has {size} elements; the oracle handles at most {max}")]
    TooLarge { size: usize, max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub node_limit: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            node_limit: 20_000_000,
        }
    }
}

/// Optimum of a search, `None` meaning no feasible solution within the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Option<usize>,
    pub witness: Option<Vec<usize>>,
    pub nodes_explored: u64,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }
}

impl Serialize for OracleResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OracleResult", 3)?;
        match self.optimum {
            Some(v) => st.serialize_field("optimum", &v)?,
            None => st.serialize_field("optimum", "infeasible")?,
        }
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("nodes_explored", &self.nodes_explored)?;
        st.end()
    }
}

struct Search {
    nodes: u64,
    limit: u64,
    best: usize,
    witness: Option<Vec<usize>>,
}

impl Search {
    /// `bound` is an exclusive upper limit on solution sizes worth finding.
    fn new(cfg: &OracleConfig, bound: usize) -> Self {
        Search {
            nodes: 0,
            limit: cfg.node_limit,
            best: bound,
            witness: None,
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(OracleError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }

    fn record(&mut self, chosen: &[usize]) {
        if chosen.len() < self.best {
            self.best = chosen.len();
            let mut w = chosen.to_vec();
            w.sort_unstable();
            self.witness = Some(w);
        }
    }

    fn finish(self) -> OracleResult {
        OracleResult {
            optimum: self.witness.as_ref().map(Vec::len),
            witness: self.witness,
            nodes_explored: self.nodes,
        }
    }
}

fn mask_of(members: &[usize]) -> Mask {
    members.iter().fold(0, |m, &e| m | (1 << e))
}

fn full_mask(n: usize) -> Mask {
    if n == MAX_ELEMENTS {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > MAX_ELEMENTS {
        return Err(OracleError::TooLarge {
            size: n,
            max: MAX_ELEMENTS,
        });
    }
    Ok(())
}

struct SetSystem {
    full: Mask,
    masks: Vec<Mask>,
    /// For each element, indices of the sets containing it, with duplicate
    /// sets collapsed onto their first occurrence.
    containing: Vec<Vec<usize>>,
    largest: u32,
}

impl SetSystem {
    fn new(inst: &SetCoverInstance) -> Result<Self, OracleError> {
        let n = inst.universe_size();
        check_size(n)?;
        let masks: Vec<Mask> = inst.sets().iter().map(|s| mask_of(s)).collect();
        let mut containing = vec![Vec::new(); n];
        for (j, &mask) in masks.iter().enumerate() {
            if masks[..j].contains(&mask) {
                continue;
            }
            for (e, list) in containing.iter_mut().enumerate() {
                if mask >> e & 1 == 1 {
                    list.push(j);
                }
            }
        }
        // Try large sets first so good solutions show up early.
        for list in &mut containing {
            list.sort_by_key(|&j| std::cmp::Reverse(masks[j].count_ones()));
        }
        let largest = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1);
        Ok(SetSystem {
            full: full_mask(n),
            masks,
            containing,
            largest,
        })
    }

    fn lower_bound(&self, covered: Mask) -> usize {
        let left = (self.full & !covered).count_ones();
        left.div_ceil(self.largest) as usize
    }
}

/// Smallest `t <= limit` such that `t` pairwise disjoint sets partition the
/// ground set.
pub fn min_exact_cover_size(
    inst: &SetCoverInstance,
    limit: usize,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    fn go(
        sys: &SetSystem,
        covered: Mask,
        chosen: &mut Vec<usize>,
        search: &mut Search,
    ) -> Result<(), OracleError> {
        search.tick()?;
        if covered == sys.full {
            search.record(chosen);
            return Ok(());
        }
        if chosen.len() + sys.lower_bound(covered) >= search.best {
            return Ok(());
        }
        let e = (!covered & sys.full).trailing_zeros() as usize;
        for &j in &sys.containing[e] {
            if sys.masks[j] & covered == 0 {
                chosen.push(j);
                go(sys, covered | sys.masks[j], chosen, search)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    let sys = SetSystem::new(inst)?;
    let mut search = Search::new(cfg, limit.saturating_add(1));
    go(&sys, 0, &mut Vec::new(), &mut search)?;
    let result = search.finish();
    if let Some(w) = &result.witness {
        debug_assert!(is_exact_cover(inst, w));
    }
    Ok(result)
}

/// Minimum number of sets whose union is the ground set.
pub fn min_cover_size(
    inst: &SetCoverInstance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    fn go(
        sys: &SetSystem,
        covered: Mask,
        chosen: &mut Vec<usize>,
        search: &mut Search,
    ) -> Result<(), OracleError> {
        search.tick()?;
        if covered == sys.full {
            search.record(chosen);
            return Ok(());
        }
        if chosen.len() + sys.lower_bound(covered) >= search.best {
            return Ok(());
        }
        let e = (!covered & sys.full).trailing_zeros() as usize;
        for &j in &sys.containing[e] {
            chosen.push(j);
            go(sys, covered | sys.masks[j], chosen, search)?;
            chosen.pop();
        }
        Ok(())
    }

    let sys = SetSystem::new(inst)?;
    let mut search = Search::new(cfg, inst.num_sets() + 1);
    go(&sys, 0, &mut Vec::new(), &mut search)?;
    let result = search.finish();
    if let Some(w) = &result.witness {
        debug_assert!(is_cover(inst, w));
    }
    Ok(result)
}

struct EdgeSystem {
    edges: Vec<Mask>,
    /// For each vertex, the union of the edges containing it.
    neighbourhood: Vec<Mask>,
}

impl EdgeSystem {
    fn new(inst: &HypergraphInstance) -> Result<Self, OracleError> {
        let n = inst.vertex_count();
        check_size(n)?;
        let edges: Vec<Mask> = inst.edges().iter().map(|e| mask_of(e)).collect();
        let mut neighbourhood = vec![0; n];
        for &e in &edges {
            for (v, nb) in neighbourhood.iter_mut().enumerate() {
                if e >> v & 1 == 1 {
                    *nb |= e;
                }
            }
        }
        Ok(EdgeSystem {
            edges,
            neighbourhood,
        })
    }

    /// Size of a greedy vertex-disjoint set of edges missed by `chosen`.
    fn matching_bound(&self, chosen: Mask) -> usize {
        let mut used: Mask = 0;
        let mut count = 0;
        for &e in &self.edges {
            if e & chosen == 0 && e & used == 0 {
                used |= e;
                count += 1;
            }
        }
        count
    }
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |&i| mask >> i & 1 == 1)
}

/// Minimum size of a vertex set meeting every edge.
pub fn min_vertex_cover_size(
    inst: &HypergraphInstance,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    fn go(
        sys: &EdgeSystem,
        chosen_mask: Mask,
        excluded: Mask,
        chosen: &mut Vec<usize>,
        search: &mut Search,
    ) -> Result<(), OracleError> {
        search.tick()?;
        let Some(&edge) = sys.edges.iter().find(|&&e| e & chosen_mask == 0) else {
            search.record(chosen);
            return Ok(());
        };
        if chosen.len() + sys.matching_bound(chosen_mask) >= search.best {
            return Ok(());
        }
        // Branch i takes the i-th free vertex and rules out the earlier ones.
        let mut excluded = excluded;
        for v in bits(edge & !excluded) {
            chosen.push(v);
            go(sys, chosen_mask | 1 << v, excluded, chosen, search)?;
            chosen.pop();
            excluded |= 1 << v;
        }
        Ok(())
    }

    let sys = EdgeSystem::new(inst)?;
    let mut search = Search::new(cfg, inst.vertex_count() + 1);
    go(&sys, 0, 0, &mut Vec::new(), &mut search)?;
    let result = search.finish();
    if let Some(w) = &result.witness {
        debug_assert!(is_vertex_cover(inst, w));
    }
    Ok(result)
}

/// Smallest `t <= d` such that some `t` vertices meet every edge in exactly
/// one vertex.
pub fn has_exact_vertex_cover(
    inst: &HypergraphInstance,
    d: usize,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    fn go(
        sys: &EdgeSystem,
        chosen_mask: Mask,
        forbidden: Mask,
        chosen: &mut Vec<usize>,
        search: &mut Search,
    ) -> Result<(), OracleError> {
        search.tick()?;
        // The open edge with the fewest admissible vertices.
        let open = sys
            .edges
            .iter()
            .filter(|&&e| e & chosen_mask == 0)
            .min_by_key(|&&e| (e & !forbidden).count_ones());
        let Some(&edge) = open else {
            search.record(chosen);
            return Ok(());
        };
        if chosen.len() + 1 >= search.best {
            return Ok(());
        }
        let mut forbidden = forbidden;
        for v in bits(edge & !forbidden) {
            chosen.push(v);
            let blocked = forbidden | (sys.neighbourhood[v] & !(1 << v));
            go(sys, chosen_mask | 1 << v, blocked, chosen, search)?;
            chosen.pop();
            forbidden |= 1 << v;
        }
        Ok(())
    }

    let sys = EdgeSystem::new(inst)?;
    let mut search = Search::new(cfg, d.saturating_add(1));
    go(&sys, 0, 0, &mut Vec::new(), &mut search)?;
    let result = search.finish();
    if let Some(w) = &result.witness {
        debug_assert!(is_exact_vertex_cover(inst, w));
    }
    Ok(result)
}

pub fn is_cover(inst: &SetCoverInstance, chosen: &[usize]) -> bool {
    let mut covered = vec![false; inst.universe_size()];
    for &j in chosen {
        for &e in &inst.sets()[j] {
            covered[e] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

pub fn is_exact_cover(inst: &SetCoverInstance, chosen: &[usize]) -> bool {
    let mut hits = vec![0usize; inst.universe_size()];
    for &j in chosen {
        for &e in &inst.sets()[j] {
            hits[e] += 1;
        }
    }
    hits.into_iter().all(|h| h == 1)
}

pub fn is_vertex_cover(inst: &HypergraphInstance, vertices: &[usize]) -> bool {
    inst.edges().iter().all(|e| e.iter().any(|v| vertices.contains(v)))
}

pub fn is_exact_vertex_cover(inst: &HypergraphInstance, vertices: &[usize]) -> bool {
    inst.edges()
        .iter()
        .all(|e| e.iter().filter(|v| vertices.contains(v)).count() == 1)
}

/// Where an instance sits relative to the promise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// An exact cover of size at most `d` exists.
    Yes,
    /// Every cover has size greater than `eta d`.
    No,
    /// Neither; the promise does not hold.
    Outside,
}

impl Classification {
    pub fn answer(self) -> Option<Answer> {
        match self {
            Classification::Yes => Some(Answer::Yes),
            Classification::No => Some(Answer::No),
            Classification::Outside => None,
        }
    }
}

/// Ground-truth classification with the certifying searches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub classification: Classification,
    pub exact: OracleResult,
    pub minimum: OracleResult,
}

fn bound_as_usize(d: u64) -> usize {
    usize::try_from(d).unwrap_or(usize::MAX)
}

pub fn classify_set_cover(
    inst: &SetCoverInstance,
    params: &GapParams,
    cfg: &OracleConfig,
) -> Result<OracleReport, OracleError> {
    let exact = min_exact_cover_size(inst, bound_as_usize(params.d()), cfg)?;
    let minimum = min_cover_size(inst, cfg)?;
    let optimum = minimum.optimum.expect("valid instances are coverable");
    let classification = if exact.is_feasible() {
        Classification::Yes
    } else if params.exceeds_eta_d(optimum) {
        Classification::No
    } else {
        Classification::Outside
    };
    Ok(OracleReport {
        classification,
        exact,
        minimum,
    })
}

pub fn classify_hypergraph(
    inst: &HypergraphInstance,
    params: &GapParams,
    cfg: &OracleConfig,
) -> Result<OracleReport, OracleError> {
    let exact = has_exact_vertex_cover(inst, bound_as_usize(params.d()), cfg)?;
    let minimum = min_vertex_cover_size(inst, cfg)?;
    let optimum = minimum.optimum.expect("the full vertex set is a cover");
    let classification = if exact.is_feasible() {
        Classification::Yes
    } else if params.exceeds_eta_d(optimum) {
        Classification::No
    } else {
        Classification::Outside
    };
    Ok(OracleReport {
        classification,
        exact,
        minimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: usize, sets: &[&[usize]]) -> SetCoverInstance {
        SetCoverInstance::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn hg(n: usize, k: usize, edges: &[&[usize]]) -> HypergraphInstance {
        HypergraphInstance::new(n, k, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn k4() -> HypergraphInstance {
        hg(4, 2, &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]])
    }

    fn path4() -> HypergraphInstance {
        hg(4, 2, &[&[0, 1], &[1, 2], &[2, 3]])
    }

    fn singletons(n: usize) -> SetCoverInstance {
        SetCoverInstance::new(n, (0..n).map(|i| vec![i]).collect()).unwrap()
    }

    #[test]
    fn exact_cover_examples() {
        let four = sc(4, &[&[0, 1], &[2, 3], &[0, 2], &[1, 3]]);
        let r = min_exact_cover_size(&four, 4, &cfg()).unwrap();
        assert_eq!(r.optimum, Some(2));
        let w = r.witness.unwrap();
        assert!(w == vec![0, 1] || w == vec![2, 3]);

        assert_eq!(min_exact_cover_size(&singletons(13), 13, &cfg()).unwrap().optimum, Some(13));
        assert_eq!(min_exact_cover_size(&singletons(13), 12, &cfg()).unwrap().optimum, None);

        let chain = sc(3, &[&[0, 1], &[1, 2]]);
        let r = min_exact_cover_size(&chain, 10, &cfg()).unwrap();
        assert_eq!(r.optimum, None);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn min_cover_examples() {
        assert_eq!(min_cover_size(&singletons(13), &cfg()).unwrap().optimum, Some(13));
        let tri = sc(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(min_cover_size(&tri, &cfg()).unwrap().optimum, Some(2));
        assert_eq!(min_cover_size(&sc(5, &[&[0, 1, 2, 3, 4]]), &cfg()).unwrap().optimum, Some(1));
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(min_vertex_cover_size(&k4(), &cfg()).unwrap().optimum, Some(3));
        let r = min_vertex_cover_size(&path4(), &cfg()).unwrap();
        assert_eq!(r.optimum, Some(2));
        assert!(is_vertex_cover(&path4(), &r.witness.unwrap()));
        assert_eq!(min_vertex_cover_size(&hg(2, 2, &[&[0, 1]]), &cfg()).unwrap().optimum, Some(1));
    }

    #[test]
    fn exact_vertex_cover_examples() {
        let r = has_exact_vertex_cover(&path4(), 2, &cfg()).unwrap();
        assert_eq!(r.optimum, Some(2));
        let w = r.witness.unwrap();
        assert!(is_exact_vertex_cover(&path4(), &w));
        assert!(w == vec![0, 2] || w == vec![1, 3]);

        let k3 = hg(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        for d in 0..4 {
            assert_eq!(has_exact_vertex_cover(&k3, d, &cfg()).unwrap().optimum, None);
        }
        assert_eq!(has_exact_vertex_cover(&hg(2, 2, &[&[0, 1]]), 1, &cfg()).unwrap().optimum, Some(1));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = OracleConfig { node_limit: 3 };
        assert_eq!(
            min_cover_size(&singletons(13), &tight),
            Err(OracleError::BudgetExceeded { limit: 3 })
        );
    }

    #[test]
    fn oversized_instances_are_refused() {
        assert!(matches!(
            min_cover_size(&singletons(200), &cfg()),
            Err(OracleError::TooLarge { size: 200, .. })
        ));
    }

    #[test]
    fn result_json() {
        let r = OracleResult {
            optimum: None,
            witness: None,
            nodes_explored: 4,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"optimum":"infeasible","witness":null,"nodes_explored":4}"#
        );
    }

    /// Brute force over all subfamilies, independent of the searches above.
    fn brute(inst: &SetCoverInstance) -> (usize, Option<usize>) {
        let m = inst.num_sets();
        let mut min = usize::MAX;
        let mut exact = None::<usize>;
        for mask in 0u32..1 << m {
            let chosen: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
            if is_cover(inst, &chosen) {
                min = min.min(chosen.len());
            }
            if is_exact_cover(inst, &chosen) {
                exact = Some(exact.map_or(chosen.len(), |x| x.min(chosen.len())));
            }
        }
        (min, exact)
    }

    fn brute_vc(inst: &HypergraphInstance) -> (usize, Option<usize>) {
        let n = inst.vertex_count();
        let mut min = usize::MAX;
        let mut exact = None::<usize>;
        for mask in 0u32..1 << n {
            let chosen: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if is_vertex_cover(inst, &chosen) {
                min = min.min(chosen.len());
            }
            if is_exact_vertex_cover(inst, &chosen) {
                exact = Some(exact.map_or(chosen.len(), |x| x.min(chosen.len())));
            }
        }
        (min, exact)
    }

    use proptest::prelude::*;

    fn arb_set_cover() -> impl Strategy<Value = SetCoverInstance> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n), 1..9).prop_map(
                move |sets| {
                    let mut sets: Vec<Vec<usize>> =
                        sets.into_iter().map(|s| s.into_iter().collect()).collect();
                    let covered: std::collections::BTreeSet<usize> =
                        sets.iter().flatten().copied().collect();
                    for e in 0..n {
                        if !covered.contains(&e) {
                            sets.push(vec![e]);
                        }
                    }
                    SetCoverInstance::new(n, sets).unwrap()
                },
            )
        })
    }

    fn arb_hypergraph() -> impl Strategy<Value = HypergraphInstance> {
        (3usize..9, 2usize..4).prop_flat_map(|(n, k)| {
            proptest::collection::vec(proptest::sample::subsequence((0..n).collect::<Vec<_>>(), k), 1..10)
                .prop_map(move |edges| HypergraphInstance::new(n, k, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn set_cover_searches_match_brute_force(inst in arb_set_cover()) {
            let (min, exact) = brute(&inst);
            prop_assert_eq!(min_cover_size(&inst, &cfg()).unwrap().optimum, Some(min));
            let r = min_exact_cover_size(&inst, inst.num_sets(), &cfg()).unwrap();
            prop_assert_eq!(r.optimum, exact);
            if let Some(e) = exact {
                prop_assert!(e >= min);
            }
        }

        #[test]
        fn vertex_searches_match_brute_force(inst in arb_hypergraph()) {
            let (min, exact) = brute_vc(&inst);
            prop_assert_eq!(min_vertex_cover_size(&inst, &cfg()).unwrap().optimum, Some(min));
            let r = has_exact_vertex_cover(&inst, inst.vertex_count(), &cfg()).unwrap();
            prop_assert_eq!(r.optimum, exact);
        }

        #[test]
        fn set_order_does_not_matter(inst in arb_set_cover(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut sets = inst.sets().to_vec();
            sets.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = SetCoverInstance::new(inst.universe_size(), sets).unwrap();
            prop_assert_eq!(
                min_cover_size(&inst, &cfg()).unwrap().optimum,
                min_cover_size(&shuffled, &cfg()).unwrap().optimum
            );
            prop_assert_eq!(
                min_exact_cover_size(&inst, 8, &cfg()).unwrap().optimum,
                min_exact_cover_size(&shuffled, 8, &cfg()).unwrap().optimum
            );
        }

        #[test]
        fn edge_order_does_not_matter(inst in arb_hypergraph(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut edges = inst.edges().to_vec();
            edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = HypergraphInstance::new(inst.vertex_count(), inst.uniformity(), edges).unwrap();
            prop_assert_eq!(
                min_vertex_cover_size(&inst, &cfg()).unwrap().optimum,
                min_vertex_cover_size(&shuffled, &cfg()).unwrap().optimum
            );
            prop_assert_eq!(
                has_exact_vertex_cover(&inst, 8, &cfg()).unwrap().optimum,
                has_exact_vertex_cover(&shuffled, 8, &cfg()).unwrap().optimum
            );
        }
    }
}
