use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::algebra::{Poly, Rational, Var};

use super::{Constraint, Relation, SemiAlgebraicSystem};

/// A system after eliminating variables defined linearly by an equation.
#[derive(Clone, Debug)]
pub(crate) struct Presolved {
    pub system: SemiAlgebraicSystem,
    /// `(x, e)`: `x = e`, in elimination order. Each `e` may mention
    /// variables eliminated later, so lift in reverse.
    pub substitutions: Vec<(Var, Poly)>,
    /// A relation that became a false constant.
    pub contradiction: Option<Constraint>,
}

impl Presolved {
    /// Extends a point of the reduced system to the original variables.
    pub fn lift(&self, point: &HashMap<Var, Rational>) -> Option<HashMap<Var, Rational>> {
        let mut full = point.clone();
        for (x, e) in self.substitutions.iter().rev() {
            let v = e.eval(&full)?;
            full.insert(*x, v);
        }
        Some(full)
    }
}

fn sign(c: &Rational) -> i32 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Repeatedly solves equations of the form `c·x + r = 0` with `c` a
/// nonzero rational and `x` absent from `r`, preferring variables declared
/// last. Constant relations are checked and dropped; duplicates removed.
pub(crate) fn presolve(sys: &SemiAlgebraicSystem) -> Presolved {
    let mut rels: Vec<Constraint> = sys.relations();
    let mut vars = sys.all_vars();
    let mut substitutions = Vec::new();
    loop {
        let mut kept: Vec<Constraint> = Vec::new();
        for c in rels.drain(..) {
            if let Some(k) = c.poly.constant_value().or_else(|| c.poly.is_zero().then(Rational::zero)) {
                if c.rel.holds(sign(&k)) {
                    continue;
                }
                return Presolved {
                    system: sys.clone(),
                    substitutions,
                    contradiction: Some(c),
                };
            }
            let c = normalize(c);
            if !kept.contains(&c) {
                kept.push(c);
            }
        }
        rels = kept;
        let mut found = None;
        'outer: for (i, c) in rels.iter().enumerate() {
            if c.rel != Relation::Eq {
                continue;
            }
            let present = c.poly.vars();
            for &x in vars.iter().rev() {
                if !present.contains(&x) || c.poly.degree_in(x) != 1 {
                    continue;
                }
                if let Some(k) = c.poly.derivative(x).constant_value() {
                    let value = &Poly::var(x) - &c.poly.scale(&k.recip());
                    found = Some((i, x, value));
                    break 'outer;
                }
            }
        }
        let Some((i, x, value)) = found else { break };
        rels.remove(i);
        for c in rels.iter_mut() {
            if c.poly.contains_var(x) {
                c.poly = c.poly.substitute(x, &value);
            }
        }
        vars.retain(|&v| v != x);
        substitutions.push((x, value));
    }
    let mut system = SemiAlgebraicSystem::new(vars);
    for c in &rels {
        system.add_constraint(c);
    }
    Presolved {
        system,
        substitutions,
        contradiction: None,
    }
}

/// Scales a relation to integer coprime coefficients, keeping its meaning.
fn normalize(c: Constraint) -> Constraint {
    let p = c.poly.primitive();
    let flipped = p.canonical_leading().map(|(_, a)| a.is_positive()) != c.poly.canonical_leading().map(|(_, a)| a.is_positive());
    let rel = if flipped {
        match c.rel {
            Relation::Lt => Relation::Gt,
            Relation::Gt => Relation::Lt,
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            r => r,
        }
    } else {
        c.rel
    };
    Constraint::new(p, rel)
}
