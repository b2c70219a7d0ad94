use std::collections::HashMap;

use crate::algebra::{Poly, Rational, Var};

use super::{Constraint, Relation, SemiAlgebraicSystem};

/// Purely equational form of a semialgebraic system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedSystem {
    pub equations: Vec<Poly>,
    /// Original variables followed by the auxiliary ones.
    pub variables: Vec<Var>,
    pub auxiliary: Vec<Var>,
    /// The relation each auxiliary variable encodes.
    pub provenance: Vec<(Var, Constraint)>,
}

/// Replaces every non-equation by an equation in a fresh variable:
///
/// | relation | encoding    |
/// |----------|-------------|
/// | p ≠ 0    | p·v − 1 = 0 |
/// | p > 0    | p·v² − 1 = 0 |
/// | p < 0    | p·v² + 1 = 0 |
/// | p ≥ 0    | p − w² = 0  |
/// | p ≤ 0    | p + w² = 0  |
///
/// Auxiliary variables are named `$v1`, `$v2`, ... and `$w1`, `$w2`, ...,
/// which no model identifier can collide with.
pub fn encode(sys: &SemiAlgebraicSystem) -> EncodedSystem {
    let mut equations = sys.equations.clone();
    let mut auxiliary = Vec::new();
    let mut provenance = Vec::new();
    let (mut nv, mut nw) = (0, 0);
    let one = Poly::one();
    for c in sys.relations() {
        let p = &c.poly;
        let (aux, eq) = match c.rel {
            Relation::Eq => continue,
            Relation::Ne => {
                nv += 1;
                let v = Var::new(&format!("$v{nv}"));
                (v, &(p * &Poly::var(v)) - &one)
            }
            Relation::Gt | Relation::Lt => {
                nv += 1;
                let v = Var::new(&format!("$v{nv}"));
                let pv2 = p * &Poly::var(v).pow(2);
                (v, if c.rel == Relation::Gt { &pv2 - &one } else { &pv2 + &one })
            }
            Relation::Ge | Relation::Le => {
                nw += 1;
                let w = Var::new(&format!("$w{nw}"));
                let w2 = Poly::var(w).pow(2);
                (w, if c.rel == Relation::Ge { p - &w2 } else { p + &w2 })
            }
        };
        equations.push(eq);
        auxiliary.push(aux);
        provenance.push((aux, c.clone()));
    }
    let mut variables = sys.all_vars();
    variables.extend(auxiliary.iter().copied());
    EncodedSystem {
        equations,
        variables,
        auxiliary,
        provenance,
    }
}

/// A relaxation used only to prove emptiness over the complex numbers:
/// strict inequalities and disequations become `p·v − 1 = 0`, non-strict
/// inequalities are dropped. Every real solution of the original system
/// extends to a solution of the relaxation.
pub(crate) fn relaxed_equations(sys: &SemiAlgebraicSystem) -> Vec<Poly> {
    let mut eqs = sys.equations.clone();
    let one = Poly::one();
    let mut k = 0;
    for p in sys.disequations.iter().chain(sys.strict.iter().map(|(p, _)| p)) {
        k += 1;
        let v = Var::new(&format!("$r{k}"));
        eqs.push(&(p * &Poly::var(v)) - &one);
    }
    eqs
}

impl EncodedSystem {
    /// Whether `point` (over the original and auxiliary variables) solves
    /// every equation.
    pub fn satisfied_by(&self, point: &HashMap<Var, Rational>) -> Option<bool> {
        for e in &self.equations {
            if !e.eval(point)?.eq(&num_traits::Zero::zero()) {
                return Some(false);
            }
        }
        Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;

    #[test]
    fn encodings() {
        let mut sys = SemiAlgebraicSystem::new(vec![Var::new("th"), Var::new("tht")]);
        sys.add(parse_poly("th - tht").unwrap(), Relation::Ne);
        let e = encode(&sys);
        assert_eq!(e.equations.len(), 1);
        assert_eq!(e.equations[0].to_string(), "$v1*th - $v1*tht - 1");
        let mut sys = SemiAlgebraicSystem::new(vec![Var::new("mu")]);
        sys.add(parse_poly("mu").unwrap(), Relation::Gt);
        sys.add(parse_poly("mu - 3").unwrap(), Relation::Le);
        let e = encode(&sys);
        assert_eq!(e.equations[0].to_string(), "$v1^2*mu - 1");
        assert_eq!(e.equations[1].to_string(), "$w1^2 + mu - 3");
        assert_eq!(e.auxiliary.len(), 2);
        assert!(encode(&SemiAlgebraicSystem::default()).equations.is_empty());
    }
}
