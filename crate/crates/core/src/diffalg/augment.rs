use std::collections::HashMap;

use super::io::denominator_factors;
use super::Model;
use crate::algebra::{Poly, Var};
use crate::semialg::{Constraint, Relation};

fn fresh(model: &Model, taken: &[Var], base: &str) -> Var {
    let mut name = base.to_string();
    loop {
        let v = Var::new(&name);
        let clash = model.states.contains(&v)
            || model.inputs.contains(&v)
            || model.params.contains(&v)
            || model.outputs.iter().any(|(y, _)| *y == v)
            || taken.contains(&v);
        if !clash {
            return v;
        }
        name.push('_');
    }
}

/// Treats the initial state and initial derivative of every state as
/// unknown parameters `v0`, `vp0`, tied together by the dynamics at t = 0.
///
/// Inputs occurring in the dynamics get an initial-value parameter `u0`.
/// Denominator factors that involve the new parameters are required to be
/// nonzero.
pub fn augment_initial_conditions(model: &Model) -> Model {
    let mut out = model.clone();
    let mut added: Vec<Var> = Vec::new();
    let mut at_zero: HashMap<Var, Var> = HashMap::new();
    let mut slopes = Vec::new();
    for &x in &model.states {
        let x0 = fresh(model, &added, &format!("{}0", x.name()));
        added.push(x0);
        let xp0 = fresh(model, &added, &format!("{}p0", x.name()));
        added.push(xp0);
        at_zero.insert(x, x0);
        slopes.push(xp0);
    }
    for &u in &model.inputs {
        if model.dynamics.iter().any(|g| g.vars().contains(&u)) {
            let u0 = fresh(model, &added, &format!("{}0", u.name()));
            added.push(u0);
            at_zero.insert(u, u0);
        }
    }
    for (g, &xp0) in model.dynamics.iter().zip(&slopes) {
        let g0 = g.rename(&at_zero);
        let eq = &(g0.den() * &Poly::var(xp0)) - g0.num();
        out.constraints.push(Constraint::new(eq, Relation::Eq));
        for f in denominator_factors([g0.den()]) {
            if f.vars().iter().any(|v| added.contains(v)) {
                out.constraints.push(Constraint::new(f, Relation::Ne));
            }
        }
    }
    out.params.extend(added);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_expr;
    use crate::semialg::ConstraintSet;

    #[test]
    fn linear_model() {
        let x = Var::new("x");
        let m = Model::new(
            vec![x],
            vec![],
            vec![Var::new("th")],
            vec![parse_expr("th*x").unwrap()],
            vec![(Var::new("y"), parse_expr("x").unwrap())],
            ConstraintSet::default(),
        )
        .unwrap();
        let a = augment_initial_conditions(&m);
        let names: Vec<&str> = a.params.iter().map(|v| v.name()).collect();
        assert_eq!(names, ["th", "x0", "xp0"]);
        assert_eq!(a.constraints.relations.len(), 1);
        let c = &a.constraints.relations[0];
        assert_eq!(c.rel, Relation::Eq);
        assert!(c.poly.proportionality(&crate::cli::parse_poly("xp0 - th*x0").unwrap()).is_some());
    }
}
