use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rational, Var};
use crate::diffalg::RationalExpr;

/// Comparison of a polynomial against zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    /// Whether a value of the given sign satisfies `value rel 0`.
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Relation::Eq => sign == 0,
            Relation::Ne => sign != 0,
            Relation::Lt => sign < 0,
            Relation::Le => sign <= 0,
            Relation::Gt => sign > 0,
            Relation::Ge => sign >= 0,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub poly: Poly,
    pub rel: Relation,
}

impl Constraint {
    pub fn new(poly: Poly, rel: Relation) -> Constraint {
        Constraint { poly, rel }
    }

    /// Polynomial form of `expr rel 0`. The sign of `n/d` is the sign of
    /// `n*d`, and a nonconstant denominator adds `d != 0`.
    pub fn from_rational(expr: &RationalExpr, rel: Relation) -> Vec<Constraint> {
        let den = expr.den();
        if den.is_constant() {
            return vec![Constraint::new(expr.num().clone(), rel)];
        }
        let poly = match rel {
            Relation::Eq | Relation::Ne => expr.num().clone(),
            _ => expr.num() * den,
        };
        vec![Constraint::new(poly, rel), Constraint::new(den.clone(), Relation::Ne)]
    }

    pub fn holds_at(&self, point: &HashMap<Var, Rational>) -> Option<bool> {
        Some(self.rel.holds(self.poly.sign_at(point)?))
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> Constraint {
        Constraint::new(self.poly.rename(map), self.rel)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel)
    }
}

/// Constraints on model parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub relations: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn new(relations: Vec<Constraint>) -> ConstraintSet {
        ConstraintSet { relations }
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn push(&mut self, c: Constraint) {
        if !self.relations.contains(&c) {
            self.relations.push(c);
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.relations.iter().flat_map(|c| c.poly.vars()).collect()
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> ConstraintSet {
        ConstraintSet::new(self.relations.iter().map(|c| c.rename(map)).collect())
    }
}

/// A finite conjunction of polynomial sign conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemiAlgebraicSystem {
    pub equations: Vec<Poly>,
    /// Relations `<` and `>`.
    pub strict: Vec<(Poly, Relation)>,
    /// Relations `<=` and `>=`.
    pub nonstrict: Vec<(Poly, Relation)>,
    pub disequations: Vec<Poly>,
    pub variables: Vec<Var>,
}

impl SemiAlgebraicSystem {
    pub fn new(variables: Vec<Var>) -> SemiAlgebraicSystem {
        SemiAlgebraicSystem {
            variables,
            ..Default::default()
        }
    }

    pub fn add(&mut self, poly: Poly, rel: Relation) {
        match rel {
            Relation::Eq => self.equations.push(poly),
            Relation::Ne => self.disequations.push(poly),
            Relation::Lt | Relation::Gt => self.strict.push((poly, rel)),
            Relation::Le | Relation::Ge => self.nonstrict.push((poly, rel)),
        }
    }

    pub fn add_constraint(&mut self, c: &Constraint) {
        self.add(c.poly.clone(), c.rel);
    }

    /// All relations in a fixed order: equations, disequations, strict,
    /// nonstrict.
    pub fn relations(&self) -> Vec<Constraint> {
        let mut out: Vec<Constraint> = self.equations.iter().map(|p| Constraint::new(p.clone(), Relation::Eq)).collect();
        out.extend(self.disequations.iter().map(|p| Constraint::new(p.clone(), Relation::Ne)));
        out.extend(self.strict.iter().map(|(p, r)| Constraint::new(p.clone(), *r)));
        out.extend(self.nonstrict.iter().map(|(p, r)| Constraint::new(p.clone(), *r)));
        out
    }

    /// Declared variables followed by any undeclared ones, sorted by name.
    pub fn all_vars(&self) -> Vec<Var> {
        let mut out = self.variables.clone();
        let mut extra: Vec<Var> = self
            .relations()
            .iter()
            .flat_map(|c| c.poly.vars())
            .filter(|v| !out.contains(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        extra.sort_by_key(|v| v.name());
        out.extend(extra);
        out
    }

    /// Exact check of every relation; `None` if some variable is unassigned.
    pub fn satisfied_by(&self, point: &HashMap<Var, Rational>) -> Option<bool> {
        for c in self.relations() {
            if !c.holds_at(point)? {
                return Some(false);
            }
        }
        Some(true)
    }

    pub fn is_trivial(&self) -> bool {
        self.equations.is_empty() && self.strict.is_empty() && self.nonstrict.is_empty() && self.disequations.is_empty()
    }
}

impl fmt::Display for SemiAlgebraicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.relations() {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
