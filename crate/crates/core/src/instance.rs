//! JSON instance files: a ground set, a function spec, an optional
//! constraint and optional check/solve options.
//!
//! ```json
//! {
//!   "ground_set": 4,
//!   "function": {"type": "threshold", "params": {"k": 2, "B": 5}},
//!   "constraint": {"type": "cardinality", "p": 2},
//!   "options": {"mode": "exhaustive"}
//! }
//! ```
//!
//! `ground_set` is a size or a list of labels. Functions whose size is not
//! implied by their parameters (`cardinality_poly`, `threshold`) take it
//! from `ground_set` or from an `n` parameter. Integral JSON numbers are
//! read as exact integers.

use std::sync::Arc;

use serde::Deserialize;

use crate::check::Mode;
use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::ground::GroundSet;
use crate::matroid::Matroid;
use crate::value::Value;
use crate::zoo;

/// Largest ground set an instance may declare.
pub const MAX_GROUND: usize = 4096;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroundSpec {
    Size(usize),
    Labels(Vec<String>),
}

impl GroundSpec {
    pub fn len(&self) -> usize {
        match self {
            GroundSpec::Size(n) => *n,
            GroundSpec::Labels(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Linear {
        weights: Vec<Value>,
    },
    Coverage {
        sets: Vec<Vec<usize>>,
        item_weights: Vec<Value>,
    },
    Dispersion {
        distances: Vec<Vec<Value>>,
    },
    Segmentation {
        matrix: Vec<Vec<Value>>,
    },
    CardinalityPoly {
        #[serde(default)]
        n: Option<usize>,
        coeffs: Vec<Value>,
        #[serde(default)]
        raw: bool,
    },
    Threshold {
        #[serde(default)]
        n: Option<usize>,
        k: usize,
        #[serde(rename = "B")]
        b: Value,
    },
    Combination {
        functions: Vec<FunctionSpec>,
        alphas: Vec<Value>,
    },
    Complement {
        function: Box<FunctionSpec>,
    },
    ZeroAtTop {
        function: Box<FunctionSpec>,
    },
    MaxCut {
        #[serde(default)]
        vertices: Option<usize>,
        #[serde(default)]
        edges: Option<Vec<(usize, usize, Value)>>,
        #[serde(default)]
        star: Option<usize>,
    },
    SupermodularPair {
        #[serde(rename = "B")]
        b: Value,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintSpec {
    Cardinality { p: usize },
    Uniform { rank: usize },
    Partition { blocks: Vec<Vec<usize>>, caps: Vec<usize> },
    Explicit { independent_sets: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub mode: Option<ModeName>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub epsilon: Option<f64>,
    pub precision: Option<String>,
}

impl Options {
    /// Checker mode; sampled mode defaults to 10 000 samples and seed 0.
    pub fn mode(&self) -> Mode {
        match self.mode {
            Some(ModeName::Sampled) => Mode::Sampled { samples: self.samples.unwrap_or(10_000), seed: self.seed.unwrap_or(0) },
            _ => Mode::Exhaustive,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub ground_set: Option<GroundSpec>,
    pub function: FunctionSpec,
    #[serde(default)]
    pub constraint: Option<ConstraintSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone)]
pub enum Constraint {
    Cardinality(usize),
    Matroid(Matroid),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub function: SetFunction,
    pub constraint: Option<Constraint>,
    pub options: Options,
}

fn cap(n: usize) -> Result<usize> {
    if n > MAX_GROUND {
        return Err(Error::Schema(format!("ground set of {n} elements exceeds {MAX_GROUND}")));
    }
    Ok(n)
}

fn need_n(explicit: Option<usize>, hint: Option<usize>, what: &str) -> Result<usize> {
    match (explicit, hint) {
        (Some(a), Some(b)) if a != b => Err(Error::Schema(format!("{what}: n = {a} but the ground set has {b} elements"))),
        (Some(a), _) | (None, Some(a)) => cap(a),
        (None, None) => Err(Error::Schema(format!("{what} needs a ground set size"))),
    }
}

impl FunctionSpec {
    /// Builds the function. `n` is the ground-set size when known.
    pub fn build(&self, n: Option<usize>) -> Result<SetFunction> {
        let f = match self {
            FunctionSpec::Linear { weights } => zoo::linear(weights)?,
            FunctionSpec::Coverage { sets, item_weights } => zoo::coverage(sets.clone(), item_weights)?,
            FunctionSpec::Dispersion { distances } => zoo::metric_dispersion(&zoo::DistanceMatrix::new(distances.clone())?)?,
            FunctionSpec::Segmentation { matrix } => zoo::segmentation(&zoo::SegmentationMatrix::new(matrix.clone())?)?,
            FunctionSpec::CardinalityPoly { n: pn, coeffs, raw } => {
                let n = need_n(*pn, n, "cardinality_poly")?;
                if *raw {
                    zoo::raw_cardinality_profile(n, coeffs)
                } else {
                    zoo::cardinality_polynomial(n, coeffs)?
                }
            }
            FunctionSpec::Threshold { n: pn, k, b } => zoo::threshold(need_n(*pn, n, "threshold")?, *k, *b)?,
            FunctionSpec::Combination { functions, alphas } => {
                let fs = functions.iter().map(|f| f.build(n)).collect::<Result<Vec<_>>>()?;
                zoo::linear_combination(&fs, alphas)?
            }
            FunctionSpec::Complement { function } => zoo::complement(&function.build(n)?),
            FunctionSpec::ZeroAtTop { function } => zoo::zero_at_top(&function.build(n)?),
            FunctionSpec::MaxCut { vertices, edges, star } => match (star, edges) {
                (Some(k), None) if vertices.is_none() => zoo::max_cut(&zoo::star_counterexample(cap(k.saturating_add(2))? - 2))?,
                (None, Some(edges)) => {
                    let v = match vertices {
                        Some(v) => cap(*v)?,
                        None => cap(edges.iter().map(|e| e.0.max(e.1).saturating_add(1)).max().unwrap_or(0))?,
                    };
                    zoo::max_cut(&zoo::Graph::new(v, edges.clone())?)?
                }
                _ => return Err(Error::Schema("max_cut takes either `star` or `edges` (with optional `vertices`)".into())),
            },
            FunctionSpec::SupermodularPair { b } => zoo::supermodular_pair(*b)?,
        };
        cap(f.n())?;
        if let Some(n) = n {
            if f.n() != n {
                return Err(Error::Schema(format!("function `{}` has {} elements but the ground set has {n}", f.name(), f.n())));
            }
        }
        Ok(f)
    }
}

impl ConstraintSpec {
    pub fn build(&self, n: usize) -> Result<Constraint> {
        Ok(match self {
            ConstraintSpec::Cardinality { p } => Constraint::Cardinality(*p),
            ConstraintSpec::Uniform { rank } => Constraint::Matroid(Matroid::uniform(n, *rank)),
            ConstraintSpec::Partition { blocks, caps } => Constraint::Matroid(Matroid::partition(n, blocks.clone(), caps.clone())?),
            ConstraintSpec::Explicit { independent_sets } => Constraint::Matroid(Matroid::explicit(n, independent_sets)?),
        })
    }
}

impl ConstraintSpec {
    /// Like [`ConstraintSpec::build`], but explicit families are stored
    /// without checking the matroid axioms.
    pub fn build_unvalidated(&self, n: usize) -> Result<Constraint> {
        match self {
            ConstraintSpec::Explicit { independent_sets } => Ok(Constraint::Matroid(Matroid::explicit_unchecked(n, independent_sets)?)),
            other => other.build(n),
        }
    }
}

impl InstanceFile {
    pub fn build(&self) -> Result<Instance> {
        let n = self.ground_set.as_ref().map(GroundSpec::len).map(cap).transpose()?;
        let mut function = self.function.build(n)?;
        if let Some(GroundSpec::Labels(labels)) = &self.ground_set {
            function = function.with_ground(GroundSet::new(labels.iter().cloned())?)?;
        }
        let constraint = self.constraint.as_ref().map(|c| c.build(function.n())).transpose()?;
        if let Some(eps) = self.options.epsilon {
            if eps.is_nan() || eps < 0.0 {
                return Err(Error::Schema(format!("epsilon = {eps} must be non-negative")));
            }
        }
        Ok(Instance { function, constraint, options: self.options.clone() })
    }
}

/// Parses and builds a full instance file.
pub fn parse_instance(json: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceFile>(json)?.build()
}

/// Parses a bare function spec over a ground set of size `n` if given.
pub fn parse_function(json: &str, n: Option<usize>) -> Result<SetFunction> {
    serde_json::from_str::<FunctionSpec>(json)?.build(n)
}

/// Parses a matroid spec over `n` elements.
pub fn parse_matroid(json: &str, n: usize) -> Result<Matroid> {
    match serde_json::from_str::<ConstraintSpec>(json)?.build(cap(n)?)? {
        Constraint::Matroid(m) => Ok(m),
        Constraint::Cardinality(_) => Err(Error::Schema("expected a matroid, got a cardinality constraint".into())),
    }
}

/// Ground set of an instance, for reporting.
pub fn ground_of(inst: &Instance) -> Arc<GroundSet> {
    inst.function.ground().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::Subset;

    #[test]
    fn threshold_instance() {
        let inst = parse_instance(
            r#"{"ground_set": 4, "function": {"type": "threshold", "params": {"k": 2, "B": 5}},
                "constraint": {"type": "cardinality", "p": 2}}"#,
        )
        .unwrap();
        assert_eq!(inst.function.n(), 4);
        assert_eq!(inst.function.evaluate(&Subset::from_mask(4, 0b11)).unwrap(), Value::Int(5));
        assert!(matches!(inst.constraint, Some(Constraint::Cardinality(2))));
    }

    #[test]
    fn labels_attach() {
        let inst = parse_instance(r#"{"ground_set": ["x", "y"], "function": {"type": "linear", "params": {"weights": [1, 2]}}}"#).unwrap();
        assert_eq!(inst.function.ground().label(1), "y");
    }

    #[test]
    fn size_mismatch_is_schema_error() {
        let e = parse_instance(r#"{"ground_set": 3, "function": {"type": "linear", "params": {"weights": [1, 2]}}}"#).unwrap_err();
        assert!(matches!(e, Error::Schema(_)));
    }

    #[test]
    fn threshold_without_size_fails() {
        assert!(parse_function(r#"{"type": "threshold", "params": {"k": 2, "B": 1}}"#, None).is_err());
    }

    #[test]
    fn star_max_cut() {
        let f = parse_function(r#"{"type": "max_cut", "params": {"star": 3}}"#, None).unwrap();
        assert_eq!(f.n(), 5);
    }

    #[test]
    fn decimal_stays_real_integer_stays_exact() {
        let f = parse_function(r#"{"type": "linear", "params": {"weights": [1, 0.5]}}"#, None).unwrap();
        assert!(!f.is_exact());
        let f = parse_function(r#"{"type": "linear", "params": {"weights": [1, 2]}}"#, None).unwrap();
        assert!(f.is_exact());
    }

    #[test]
    fn matroid_specs() {
        assert_eq!(parse_matroid(r#"{"type": "uniform", "rank": 2}"#, 5).unwrap().rank(), 2);
        assert_eq!(parse_matroid(r#"{"type": "partition", "blocks": [[0, 1], [2]], "caps": [1, 1]}"#, 3).unwrap().rank(), 2);
        assert!(parse_matroid(r#"{"type": "explicit", "independent_sets": [[], [0], [1], [0, 1], [2]]}"#, 3).is_err());
        assert!(parse_matroid(r#"{"type": "cardinality", "p": 2}"#, 3).is_err());
        assert!(parse_matroid("{", 3).is_err());
    }

    #[test]
    fn unknown_type_rejected() {
        assert!(parse_function(r#"{"type": "mystery", "params": {}}"#, Some(2)).is_err());
    }
}
