use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parser::{parse_expr, parse_relation, ParseError};
use crate::algebra::Var;
use crate::diffalg::{Model, ModelError, RationalExpr};
use crate::semialg::{Constraint, ConstraintSet};

/// A model as stored on disk.
///
/// ```json
/// {
///   "states": ["x"],
///   "params": ["k"],
///   "odes": { "x": "-k*x" },
///   "outputs": { "y": "x" },
///   "constraints": ["k > 0"]
/// }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    pub params: Vec<String>,
    pub odes: IndexMap<String, String>,
    pub outputs: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    /// Analyse with the initial conditions as extra parameters.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub initial_conditions: bool,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid model document at {line}:{column}: {message}")]
    Json { message: String, line: usize, column: usize },
    #[error("in {field}: {source}")]
    Expression { field: String, source: ParseError },
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<ModelDocument, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ModelDocument, DocumentError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
            path: path.display().to_string(),
            source,
        })?;
        ModelDocument::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// The document describing `model`.
    pub fn from_model(model: &Model) -> ModelDocument {
        let names = |vs: &[Var]| vs.iter().map(|v| v.name().to_string()).collect::<Vec<_>>();
        ModelDocument {
            states: names(&model.states),
            inputs: names(&model.inputs),
            params: names(&model.params),
            odes: model
                .states
                .iter()
                .zip(&model.dynamics)
                .map(|(x, g)| (x.name().to_string(), g.to_string()))
                .collect(),
            outputs: model.outputs.iter().map(|(y, h)| (y.name().to_string(), h.to_string())).collect(),
            constraints: model.constraints.relations.iter().map(|c| c.to_string()).collect(),
            initial_conditions: false,
        }
    }
}

fn expr(field: String, src: &str) -> Result<RationalExpr, DocumentError> {
    parse_expr(src).map_err(|source| DocumentError::Expression { field, source })
}

/// Builds and validates the model of a document.
pub fn parse_model(doc: &ModelDocument) -> Result<Model, DocumentError> {
    let vars = |names: &[String]| -> Result<Vec<Var>, DocumentError> {
        names
            .iter()
            .map(|n| {
                if super::is_identifier(n) {
                    Ok(Var::new(n))
                } else {
                    Err(ModelError::InvalidIdentifier(n.clone()).into())
                }
            })
            .collect()
    };
    let states = vars(&doc.states)?;
    let inputs = vars(&doc.inputs)?;
    let params = vars(&doc.params)?;
    for key in doc.odes.keys() {
        if !doc.states.contains(key) {
            return Err(ModelError::UndeclaredIdentifier {
                name: key.clone(),
                context: "odes".into(),
            }
            .into());
        }
    }
    let mut dynamics = Vec::new();
    for x in &doc.states {
        match doc.odes.get(x) {
            Some(src) => dynamics.push(expr(format!("odes.{x}"), src)?),
            None => return Err(ModelError::MissingDynamics(x.clone()).into()),
        }
    }
    let mut outputs = Vec::new();
    for (y, src) in &doc.outputs {
        if !super::is_identifier(y) {
            return Err(ModelError::InvalidIdentifier(y.clone()).into());
        }
        outputs.push((Var::new(y), expr(format!("outputs.{y}"), src)?));
    }
    let mut constraints = ConstraintSet::default();
    for (i, src) in doc.constraints.iter().enumerate() {
        let (e, rel) = parse_relation(src).map_err(|source| DocumentError::Expression {
            field: format!("constraints[{i}]"),
            source,
        })?;
        for c in Constraint::from_rational(&e, rel) {
            constraints.push(c);
        }
    }
    Ok(Model::new(states, inputs, params, dynamics, outputs, constraints)?)
}

/// Reads and validates a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<(Model, ModelDocument), DocumentError> {
    let doc = ModelDocument::load(path)?;
    let model = parse_model(&doc)?;
    Ok((model, doc))
}
