//! JSON instance files.
//!
//! ```json
//! {"type":"set_cover","universe_size":4,"sets":[[0,1],[2,3]],"d":2,"eta":{"num":2,"den":1}}
//! {"type":"hypergraph_vc","vertex_count":4,"k":2,"edges":[[0,1],[1,2]],"d":2,"eta":{"num":2,"den":1}}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Eta, GapParams, HypergraphInstance, InstanceError, SetCoverInstance};

/// A parsed instance file: the instance plus its promise parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InstanceFile {
    SetCover {
        instance: SetCoverInstance,
        params: GapParams,
    },
    Hypergraph {
        instance: HypergraphInstance,
        params: GapParams,
    },
}

impl InstanceFile {
    pub fn params(&self) -> GapParams {
        match self {
            InstanceFile::SetCover { params, .. } | InstanceFile::Hypergraph { params, .. } => {
                *params
            }
        }
    }

    pub fn type_tag(&self) -> &'static str {
        match self {
            InstanceFile::SetCover { .. } => "set_cover",
            InstanceFile::Hypergraph { .. } => "hypergraph_vc",
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed instance file at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("instance violates an invariant: {0}")]
    Invalid(#[from] InstanceError),
}

#[derive(Serialize, Deserialize)]
struct RawEta {
    num: u64,
    den: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum RawFile {
    #[serde(rename = "set_cover")]
    SetCover {
        universe_size: usize,
        sets: Vec<Vec<usize>>,
        d: u64,
        eta: RawEta,
    },
    #[serde(rename = "hypergraph_vc")]
    Hypergraph {
        vertex_count: usize,
        k: usize,
        edges: Vec<Vec<usize>>,
        d: u64,
        eta: RawEta,
    },
}

fn params_from(d: u64, eta: RawEta) -> Result<GapParams, InstanceError> {
    GapParams::new(d, Eta::new(eta.num, eta.den)?)
}

pub fn parse_instance(bytes: &[u8]) -> Result<InstanceFile, ParseError> {
    let raw: RawFile = serde_json::from_slice(bytes).map_err(|e| ParseError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(match raw {
        RawFile::SetCover {
            universe_size,
            sets,
            d,
            eta,
        } => InstanceFile::SetCover {
            instance: SetCoverInstance::new(universe_size, sets)?,
            params: params_from(d, eta)?,
        },
        RawFile::Hypergraph {
            vertex_count,
            k,
            edges,
            d,
            eta,
        } => InstanceFile::Hypergraph {
            instance: HypergraphInstance::new(vertex_count, k, edges)?,
            params: params_from(d, eta)?,
        },
    })
}

/// Canonical single-line encoding, terminated by a newline.
pub fn serialize_instance(file: &InstanceFile) -> Vec<u8> {
    let raw_eta = |p: &GapParams| RawEta {
        num: p.eta().num(),
        den: p.eta().den(),
    };
    let raw = match file {
        InstanceFile::SetCover { instance, params } => RawFile::SetCover {
            universe_size: instance.universe_size(),
            sets: instance.sets().to_vec(),
            d: params.d(),
            eta: raw_eta(params),
        },
        InstanceFile::Hypergraph { instance, params } => RawFile::Hypergraph {
            vertex_count: instance.vertex_count(),
            k: instance.uniformity(),
            edges: instance.edges().to_vec(),
            d: params.d(),
            eta: raw_eta(params),
        },
    };
    let mut out = serde_json::to_vec(&raw).expect("instance encoding cannot fail");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FOUR_SET: &str =
        r#"{"type":"set_cover","universe_size":4,"sets":[[0,1],[2,3],[0,2],[1,3]],"d":2,"eta":{"num":2,"den":1}}"#;

    #[test]
    fn exact_encoding() {
        let file = parse_instance(FOUR_SET.as_bytes()).unwrap();
        assert_eq!(serialize_instance(&file), format!("{FOUR_SET}\n").into_bytes());
        let hyper = r#"{"type":"hypergraph_vc","vertex_count":4,"k":2,"edges":[[0,1],[1,2],[2,3]],"d":2,"eta":{"num":2,"den":1}}"#;
        let file = parse_instance(hyper.as_bytes()).unwrap();
        assert!(matches!(file, InstanceFile::Hypergraph { .. }));
        assert_eq!(serialize_instance(&file), format!("{hyper}\n").into_bytes());
    }

    #[test]
    fn out_of_range_element_is_an_invariant_violation() {
        let text = r#"{"type":"set_cover","universe_size":2,"sets":[[0,2]],"d":1,"eta":{"num":2,"den":1}}"#;
        let err = parse_instance(text.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid(InstanceError::OutOfRange { element: 2, bound: 2, .. })
        ));
    }

    #[test]
    fn uncovered_elements_are_named() {
        let text = r#"{"type":"set_cover","universe_size":4,"sets":[[0],[2]],"d":1,"eta":{"num":2,"den":1}}"#;
        let err = parse_instance(text.as_bytes()).unwrap_err();
        assert!(matches!(
            &err,
            ParseError::Invalid(InstanceError::Uncovered { elements }) if elements == &vec![1, 3]
        ));
        assert!(err.to_string().contains("[1, 3]"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\"type\":\"set_cover\",\n\"universe_size\": x}";
        match parse_instance(text.as_bytes()).unwrap_err() {
            ParseError::Malformed { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"type":"set_cover","universe_size":2,"sets":[[0,1]],"d":1,"eta":{"num":2,"den":1},"extra":1}"#;
        assert!(matches!(
            parse_instance(text.as_bytes()).unwrap_err(),
            ParseError::Malformed { .. }
        ));
        let text = r#"{"type":"tsp","n":3}"#;
        assert!(matches!(
            parse_instance(text.as_bytes()).unwrap_err(),
            ParseError::Malformed { .. }
        ));
    }

    #[test]
    fn bad_params_are_invariant_violations() {
        let text = r#"{"type":"set_cover","universe_size":1,"sets":[[0]],"d":1,"eta":{"num":1,"den":1}}"#;
        assert!(matches!(
            parse_instance(text.as_bytes()).unwrap_err(),
            ParseError::Invalid(InstanceError::InvalidEta { .. })
        ));
        let text = r#"{"type":"set_cover","universe_size":1,"sets":[[0]],"d":0,"eta":{"num":2,"den":1}}"#;
        assert!(matches!(
            parse_instance(text.as_bytes()).unwrap_err(),
            ParseError::Invalid(InstanceError::ZeroBound)
        ));
    }

    fn arb_set_cover() -> impl Strategy<Value = InstanceFile> {
        (1usize..10, 1u64..6, 2u64..7, 1u64..4)
            .prop_flat_map(|(n, d, p, q)| {
                let set = proptest::collection::btree_set(0..n, 1..=n);
                (Just(n), proptest::collection::vec(set, 1..8), Just(d), Just(p), Just(q))
            })
            .prop_map(|(n, sets, d, p, q)| {
                let mut sets: Vec<Vec<usize>> =
                    sets.into_iter().map(|s| s.into_iter().collect()).collect();
                sets.push((0..n).collect());
                let eta = Eta::new(p + q, q).unwrap();
                InstanceFile::SetCover {
                    instance: SetCoverInstance::new(n, sets).unwrap(),
                    params: GapParams::new(d, eta).unwrap(),
                }
            })
    }

    proptest! {
        #[test]
        fn parse_inverts_serialize(file in arb_set_cover()) {
            let bytes = serialize_instance(&file);
            prop_assert_eq!(parse_instance(&bytes).unwrap(), file);
        }
    }
}
