use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::InstanceError;
use crate::linalg::IntMatrix;

/// A ground set `{0, .., n-1}` together with `m` subsets whose union is the
/// whole ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetCoverInstance {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    /// Validates and builds an instance. Every set must be non-empty and
    /// strictly increasing, every element in range, and the sets must cover
    /// the universe. Duplicate sets are allowed.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        if universe_size == 0 {
            return Err(InstanceError::EmptyGroundSet);
        }
        if sets.is_empty() {
            return Err(InstanceError::NoSets);
        }
        let mut covered = vec![false; universe_size];
        for (index, set) in sets.iter().enumerate() {
            check_members(index, set, universe_size)?;
            for &e in set {
                covered[e] = true;
            }
        }
        let uncovered: Vec<usize> = covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(e, _)| e)
            .collect();
        if !uncovered.is_empty() {
            return Err(InstanceError::Uncovered { elements: uncovered });
        }
        Ok(SetCoverInstance {
            universe_size,
            sets,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The `n x m` element/set incidence matrix; column `j` is the
    /// characteristic vector of `sets[j]`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.universe_size, self.sets.len());
        for (j, set) in self.sets.iter().enumerate() {
            for &e in set {
                b[(e, j)] = BigInt::one();
            }
        }
        b
    }
}

/// A `k`-uniform hypergraph on vertices `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HypergraphInstance {
    vertex_count: usize,
    uniformity: usize,
    edges: Vec<Vec<usize>>,
}

impl HypergraphInstance {
    pub fn new(
        vertex_count: usize,
        uniformity: usize,
        edges: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        if vertex_count == 0 {
            return Err(InstanceError::EmptyGroundSet);
        }
        if uniformity < 2 {
            return Err(InstanceError::UniformityTooSmall { k: uniformity });
        }
        if edges.is_empty() {
            return Err(InstanceError::NoSets);
        }
        for (index, edge) in edges.iter().enumerate() {
            if edge.len() != uniformity {
                return Err(InstanceError::EdgeSize {
                    index,
                    expected: uniformity,
                    found: edge.len(),
                });
            }
            check_members(index, edge, vertex_count)?;
        }
        Ok(HypergraphInstance {
            vertex_count,
            uniformity,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// The `m x n` edge/vertex incidence matrix. Every row sums to `k`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.edges.len(), self.vertex_count);
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                b[(e, v)] = BigInt::one();
            }
        }
        b
    }
}

fn check_members(index: usize, members: &[usize], bound: usize) -> Result<(), InstanceError> {
    if members.is_empty() {
        return Err(InstanceError::EmptySet { index });
    }
    if let Some(&element) = members.iter().find(|&&e| e >= bound) {
        return Err(InstanceError::OutOfRange {
            index,
            element,
            bound,
        });
    }
    if members.windows(2).any(|w| w[0] >= w[1]) {
        return Err(InstanceError::NotStrictlyIncreasing { index });
    }
    Ok(())
}

pub fn build_set_cover_incidence(inst: &SetCoverInstance) -> IntMatrix {
    inst.incidence_matrix()
}

pub fn build_hypergraph_incidence(inst: &HypergraphInstance) -> IntMatrix {
    inst.incidence_matrix()
}

pub fn append_ones_column(b: &IntMatrix) -> IntMatrix {
    b.append_ones_column()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_covering_set() {
        let inst = SetCoverInstance::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(inst.incidence_matrix(), IntMatrix::from_rows(&[[1], [1], [1]]));
    }

    #[test]
    fn four_set_incidence() {
        let inst =
            SetCoverInstance::new(4, vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]]).unwrap();
        let expected =
            IntMatrix::from_rows(&[[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]]);
        assert_eq!(inst.incidence_matrix(), expected);
        let ext = append_ones_column(&expected);
        assert_eq!(ext.column(4), vec![BigInt::one(); 4]);
    }

    #[test]
    fn singletons_give_identity() {
        let inst = SetCoverInstance::new(13, (0..13).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(inst.incidence_matrix(), IntMatrix::identity(13));
    }

    #[test]
    fn path_graph_incidence() {
        let g = HypergraphInstance::new(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let expected = IntMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]);
        assert_eq!(g.incidence_matrix(), expected);
    }

    #[test]
    fn k4_incidence() {
        let edges = vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]];
        let b = HypergraphInstance::new(4, 2, edges).unwrap().incidence_matrix();
        assert_eq!((b.rows(), b.cols()), (6, 4));
        for i in 0..6 {
            assert_eq!(b.row(i).iter().sum::<BigInt>(), BigInt::from(2));
        }
        for j in 0..4 {
            assert_eq!(b.column(j).iter().sum::<BigInt>(), BigInt::from(3));
        }
    }

    #[test]
    fn rejects_bad_set_cover_inputs() {
        assert_eq!(SetCoverInstance::new(0, vec![vec![0]]), Err(InstanceError::EmptyGroundSet));
        assert_eq!(SetCoverInstance::new(2, vec![]), Err(InstanceError::NoSets));
        assert_eq!(
            SetCoverInstance::new(2, vec![vec![0, 1], vec![]]),
            Err(InstanceError::EmptySet { index: 1 })
        );
        assert_eq!(
            SetCoverInstance::new(2, vec![vec![0, 2]]),
            Err(InstanceError::OutOfRange { index: 0, element: 2, bound: 2 })
        );
        assert_eq!(
            SetCoverInstance::new(3, vec![vec![1, 0], vec![2]]),
            Err(InstanceError::NotStrictlyIncreasing { index: 0 })
        );
        assert_eq!(
            SetCoverInstance::new(5, vec![vec![0, 1], vec![3]]),
            Err(InstanceError::Uncovered { elements: vec![2, 4] })
        );
    }

    #[test]
    fn duplicate_sets_are_allowed() {
        let inst = SetCoverInstance::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(inst.num_sets(), 2);
    }

    #[test]
    fn rejects_bad_hypergraphs() {
        assert_eq!(
            HypergraphInstance::new(3, 1, vec![vec![0]]),
            Err(InstanceError::UniformityTooSmall { k: 1 })
        );
        assert_eq!(
            HypergraphInstance::new(3, 2, vec![vec![0, 1, 2]]),
            Err(InstanceError::EdgeSize { index: 0, expected: 2, found: 3 })
        );
        assert_eq!(
            HypergraphInstance::new(3, 2, vec![vec![1, 1]]),
            Err(InstanceError::NotStrictlyIncreasing { index: 0 })
        );
    }
}
