use std::collections::HashSet;

use thiserror::Error;

use super::RationalExpr;
use crate::algebra::Var;
use crate::semialg::ConstraintSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate identifier '{0}'")]
    DuplicateIdentifier(String),
    #[error("undeclared identifier '{name}' in {context}")]
    UndeclaredIdentifier { name: String, context: String },
    #[error("invalid identifier '{0}'")]
    InvalidIdentifier(String),
    #[error("state '{0}' has no dynamics")]
    MissingDynamics(String),
    #[error("model has no outputs")]
    NoOutputs,
}

/// A rational parametrized ODE system `x' = g(x, u, θ)`, `y = h(x, u, θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub states: Vec<Var>,
    pub inputs: Vec<Var>,
    pub params: Vec<Var>,
    /// Parallel to `states`.
    pub dynamics: Vec<RationalExpr>,
    pub outputs: Vec<(Var, RationalExpr)>,
    pub constraints: ConstraintSet,
}

impl Model {
    pub fn new(
        states: Vec<Var>,
        inputs: Vec<Var>,
        params: Vec<Var>,
        dynamics: Vec<RationalExpr>,
        outputs: Vec<(Var, RationalExpr)>,
        constraints: ConstraintSet,
    ) -> Result<Model, ModelError> {
        let m = Model {
            states,
            inputs,
            params,
            dynamics,
            outputs,
            constraints,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let mut seen = HashSet::new();
        let names = self
            .states
            .iter()
            .chain(&self.inputs)
            .chain(&self.params)
            .chain(self.outputs.iter().map(|(y, _)| y));
        for v in names {
            if !crate::cli::is_identifier(v.name()) {
                return Err(ModelError::InvalidIdentifier(v.name().to_string()));
            }
            if !seen.insert(*v) {
                return Err(ModelError::DuplicateIdentifier(v.name().to_string()));
            }
        }
        if self.dynamics.len() != self.states.len() {
            let missing = self.states[self.dynamics.len().min(self.states.len())..]
                .first()
                .map(|v| v.name().to_string())
                .unwrap_or_default();
            return Err(ModelError::MissingDynamics(missing));
        }
        if self.outputs.is_empty() {
            return Err(ModelError::NoOutputs);
        }
        let allowed: HashSet<Var> = self.states.iter().chain(&self.inputs).chain(&self.params).copied().collect();
        let check = |e: &RationalExpr, context: String| -> Result<(), ModelError> {
            for v in e.vars() {
                if !allowed.contains(&v) {
                    return Err(ModelError::UndeclaredIdentifier {
                        name: v.name().to_string(),
                        context,
                    });
                }
            }
            Ok(())
        };
        for (x, g) in self.states.iter().zip(&self.dynamics) {
            check(g, format!("dynamics of {x}"))?;
        }
        for (y, h) in &self.outputs {
            check(h, format!("output {y}"))?;
        }
        let params: HashSet<Var> = self.params.iter().copied().collect();
        for c in &self.constraints.relations {
            for v in c.poly.vars() {
                if !params.contains(&v) {
                    return Err(ModelError::UndeclaredIdentifier {
                        name: v.name().to_string(),
                        context: "constraints".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dynamics_of(&self, x: Var) -> Option<&RationalExpr> {
        self.states.iter().position(|&s| s == x).map(|i| &self.dynamics[i])
    }

    pub fn is_param(&self, v: Var) -> bool {
        self.params.contains(&v)
    }

    /// Whether `v` is an output, an input or one of their derivatives.
    pub fn is_differential(&self, v: Var) -> bool {
        let (base, _) = split_derivative(v);
        self.inputs.contains(&base) || self.outputs.iter().any(|(y, _)| *y == base)
    }

    pub fn output_names(&self) -> Vec<Var> {
        self.outputs.iter().map(|(y, _)| *y).collect()
    }

    /// Copy of the model with only the listed outputs.
    pub fn with_outputs(&self, keep: &[Var]) -> Model {
        let mut m = self.clone();
        m.outputs.retain(|(y, _)| keep.contains(y));
        m
    }

    pub fn without_constraints(&self) -> Model {
        let mut m = self.clone();
        m.constraints = ConstraintSet::default();
        m
    }
}

/// The variable standing for the `order`-th time derivative of `base`:
/// `y`, `y'`, `y''`, `y'''`, then `y^(4)`, `y^(5)`, ...
pub fn derivative_var(base: Var, order: u32) -> Var {
    let name = base.name();
    match order {
        0 => base,
        1..=3 => Var::new(&format!("{name}{}", "'".repeat(order as usize))),
        _ => Var::new(&format!("{name}^({order})")),
    }
}

/// Inverse of [`derivative_var`].
pub fn split_derivative(v: Var) -> (Var, u32) {
    let name = v.name();
    if let Some(stripped) = name.strip_suffix(')') {
        if let Some(idx) = stripped.rfind("^(") {
            if let Ok(k) = stripped[idx + 2..].parse::<u32>() {
                return (Var::new(&name[..idx]), k);
            }
        }
    }
    let base = name.trim_end_matches('\'');
    let k = (name.len() - base.len()) as u32;
    if k == 0 {
        (v, 0)
    } else {
        (Var::new(base), k)
    }
}
