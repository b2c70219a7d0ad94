use super::model::{derivative_var, split_derivative};
use super::{Model, RationalExpr};

/// Time derivative of `e` along the model's trajectories: states follow the
/// dynamics, parameters are constant and each input derivative `u^(j)` is
/// promoted to `u^(j+1)`.
pub fn lie_derivative(model: &Model, e: &RationalExpr) -> RationalExpr {
    let mut acc = RationalExpr::zero();
    for v in e.vars() {
        let step = if let Some(g) = model.dynamics_of(v) {
            g.clone()
        } else {
            let (base, k) = split_derivative(v);
            if model.inputs.contains(&base) {
                RationalExpr::var(derivative_var(base, k + 1))
            } else {
                continue;
            }
        };
        let d = e.derivative(v);
        if !d.is_zero() {
            acc = acc.add(&d.mul(&step));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;
    use crate::cli::parse_expr;
    use crate::semialg::ConstraintSet;

    #[test]
    fn chain_rule_and_inputs() {
        let x = Var::new("x");
        let u = Var::new("u");
        let th = Var::new("th");
        let m = Model::new(
            vec![x],
            vec![u],
            vec![th],
            vec![parse_expr("x + u").unwrap()],
            vec![(Var::new("y"), parse_expr("x").unwrap())],
            ConstraintSet::default(),
        )
        .unwrap();
        let d = lie_derivative(&m, &parse_expr("x^2 + th*u").unwrap());
        let du = RationalExpr::var(th).mul(&RationalExpr::var(derivative_var(u, 1)));
        assert_eq!(d, parse_expr("2*x^2 + 2*x*u").unwrap().add(&du));
        assert!(lie_derivative(&m, &parse_expr("th").unwrap()).is_zero());
    }
}
