use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Answer {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// Which step of a decision procedure produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionStep {
    /// Zero-position count compared against `2 eta d - total`.
    Step2,
    /// The extended kernel equals the embedded kernel.
    Step3,
    /// Projection norm of a vector of the extended kernel.
    Step4,
    /// Zero-kernel shortcut: the kernel is nonzero.
    KernelNonzero,
    /// Zero-kernel shortcut: decided by the weight of a rational solution.
    SolutionWeight,
}

/// Evidence attached to a verdict, enough to re-check the decision.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ZeroPositions {
        count: usize,
        required: i128,
    },
    LatticesEqual {
        rank: usize,
        zero_positions: usize,
    },
    Projection {
        /// The chosen vector of the extended kernel, including its last
        /// coordinate.
        #[serde(with = "crate::bigint_serde::vec")]
        vector: Vec<BigInt>,
        positions: Vec<usize>,
        #[serde(with = "crate::bigint_serde::single")]
        norm_sq: BigInt,
        bound: u64,
    },
    KernelVector {
        #[serde(with = "crate::bigint_serde::vec")]
        vector: Vec<BigInt>,
    },
    SolutionWeight {
        weight: usize,
        length: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub decided_at: DecisionStep,
    pub witness: Option<Witness>,
}
