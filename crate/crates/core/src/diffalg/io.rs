use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::lie::lie_derivative;
use super::model::{derivative_var, split_derivative};
use super::substitution::io_by_substitution;
use super::{Model, RationalExpr};
use crate::algebra::{AlgebraError, GbLimits, GroebnerBasis, Monomial, MonomialOrder, Poly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffAlgError {
    #[error("states not eliminated for output '{output}' after {max_prolong} prolongations")]
    EliminationIncomplete { output: String, max_prolong: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One coefficient of an input-output polynomial with the differential
/// part it multiplies. The differential part is a sum of monomials when
/// several monomials share the same coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoTerm {
    pub monomial: Poly,
    pub coeff: RationalExpr,
}

/// A differential polynomial `m0 + Σ c_k m_k` in outputs and inputs that
/// vanishes along every trajectory of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IOPolynomial {
    pub output: Var,
    /// Part with coefficient 1 after normalization.
    pub m0: Poly,
    pub terms: Vec<IoTerm>,
    /// Differential part whose coefficient was divided out when no
    /// parameter-free coefficient existed.
    pub pivot: Option<Poly>,
    /// Whether the polynomial has been through [`normalize_io`].
    pub normalized: bool,
}

impl IOPolynomial {
    /// Splits a polynomial into differential monomials and parameter
    /// coefficients. Variables for which `is_differential` holds form the
    /// monomials.
    pub fn from_poly(output: Var, poly: &Poly, is_differential: impl Fn(Var) -> bool) -> IOPolynomial {
        let terms = poly
            .coefficients_by(is_differential)
            .into_iter()
            .map(|(m, c)| IoTerm {
                monomial: Poly::term(num_traits::One::one(), m),
                coeff: RationalExpr::poly(c),
            })
            .collect();
        IOPolynomial {
            output,
            m0: Poly::zero(),
            terms,
            pivot: None,
            normalized: false,
        }
    }

    /// The differential polynomial with coefficients as rational functions,
    /// flattened to `(differential monomial, coefficient)` pairs.
    pub fn flattened(&self) -> BTreeMap<Monomial, RationalExpr> {
        let mut out: BTreeMap<Monomial, RationalExpr> = BTreeMap::new();
        let mut push = |m: &Monomial, c: RationalExpr| {
            let e = out.entry(m.clone()).or_insert_with(RationalExpr::zero);
            *e = e.add(&c);
        };
        for (m, c) in self.m0.terms() {
            push(m, RationalExpr::constant(c.clone()));
        }
        for t in &self.terms {
            for (m, c) in t.monomial.terms() {
                push(m, t.coeff.scale(c));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Cleared polynomial form: the flattened polynomial multiplied by the
    /// product of the distinct coefficient denominators.
    pub fn to_poly(&self) -> Poly {
        let flat = self.flattened();
        let mut dens: Vec<Poly> = Vec::new();
        for c in flat.values() {
            if !c.den().is_constant() && !dens.contains(c.den()) {
                dens.push(c.den().clone());
            }
        }
        let mut total = Poly::zero();
        for (m, c) in &flat {
            let mut t = c.num().mul_monomial(m);
            for d in &dens {
                if d != c.den() {
                    t = &t * d;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Coefficients `c_k`, excluding the unit part.
    pub fn coefficients(&self) -> Vec<&RationalExpr> {
        self.terms.iter().map(|t| &t.coeff).collect()
    }

    /// Differential parts `m_k`, excluding the unit part.
    pub fn monomials(&self) -> Vec<&Poly> {
        self.terms.iter().map(|t| &t.monomial).collect()
    }

    /// Highest derivative order of any output or input occurring.
    pub fn order(&self) -> u32 {
        self.flattened()
            .keys()
            .flat_map(|m| m.vars().map(|v| split_derivative(v).1))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for IOPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        for t in &self.terms {
            let c = t.coeff.to_string();
            let c = if c.contains(' ') { format!("({c})") } else { c };
            if t.monomial == Poly::one() {
                parts.push(c);
            } else {
                parts.push(format!("{c}*{}", wrap(&t.monomial)));
            }
        }
        if !self.m0.is_zero() {
            parts.push(self.m0.to_string());
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        f.write_str(&out)
    }
}

/// Normalizes the scaling of an input-output polynomial.
///
/// If some coefficient is a nonzero rational, the polynomial is scaled so
/// that the canonically leading such coefficient is 1 and every
/// parameter-free term joins `m0`. Otherwise the polynomial is divided by
/// the coefficient of its canonically last monomial (the pivot). Terms
/// sharing an identical coefficient are then merged.
pub fn normalize_io(p: &IOPolynomial) -> IOPolynomial {
    let flat = p.flattened();
    if flat.is_empty() {
        return p.clone();
    }
    let constants: Vec<(&Monomial, &RationalExpr)> = flat.iter().filter(|(_, c)| c.constant_value().is_some()).collect();
    let (scale, pivot) = if let Some((_, c)) = constants.iter().min_by(|a, b| a.0.canonical_cmp(b.0)) {
        (RationalExpr::constant(c.constant_value().unwrap().recip()), None)
    } else {
        let (m, c) = flat.iter().max_by(|a, b| a.0.canonical_cmp(b.0)).unwrap();
        (c.inv().unwrap(), Some(Poly::term(num_traits::One::one(), m.clone())))
    };
    let mut m0 = Poly::zero();
    let mut groups: Vec<(RationalExpr, Poly)> = Vec::new();
    let mut ordered: Vec<(&Monomial, &RationalExpr)> = flat.iter().collect();
    ordered.sort_by(|a, b| a.0.canonical_cmp(b.0));
    for (m, c) in ordered {
        let c = c.mul(&scale);
        if let Some(k) = c.constant_value() {
            m0.add_term(m.clone(), k);
            continue;
        }
        match groups.iter_mut().find(|(g, _)| *g == c) {
            Some((_, mono)) => mono.add_term(m.clone(), num_traits::One::one()),
            None => groups.push((c, Poly::term(num_traits::One::one(), m.clone()))),
        }
    }
    IOPolynomial {
        output: p.output,
        m0,
        terms: groups.into_iter().map(|(coeff, monomial)| IoTerm { monomial, coeff }).collect(),
        pivot,
        normalized: true,
    }
}

/// Name of the auxiliary variable inverting the product of denominators.
const SATURATION_VAR: &str = "$z";

/// Distinct factors of the given denominators, found by exact division
/// only. Their product vanishes exactly where some denominator does.
pub(crate) fn denominator_factors<'a>(dens: impl IntoIterator<Item = &'a Poly>) -> Vec<Poly> {
    let mut factors: Vec<Poly> = Vec::new();
    for d in dens {
        if d.is_constant() {
            continue;
        }
        let mut rest = d.primitive();
        for f in &factors {
            while let Some(q) = rest.div_exact(f) {
                rest = q.primitive();
            }
        }
        if rest.is_constant() {
            continue;
        }
        let mut next = Vec::new();
        for f in factors.drain(..) {
            match f.div_exact(&rest) {
                Some(q) if !q.is_constant() => next.push(q.primitive()),
                Some(_) => {}
                None => next.push(f),
            }
        }
        next.push(rest);
        factors = next;
    }
    factors
}

/// Prolongation equations for all outputs up to `order`, plus the
/// saturation equation.
fn prolongation_system(model: &Model, order: u32) -> (Vec<Poly>, Option<Var>) {
    let mut eqs = Vec::new();
    let mut dens: Vec<Poly> = model.dynamics.iter().map(|g| g.den().clone()).collect();
    for (y, h) in &model.outputs {
        let mut e = h.clone();
        for j in 0..=order {
            let yj = Poly::var(derivative_var(*y, j));
            eqs.push(&(e.den() * &yj) - e.num());
            dens.push(e.den().clone());
            if j < order {
                e = lie_derivative(model, &e);
            }
        }
    }
    let factors = denominator_factors(&dens);
    if factors.is_empty() {
        return (eqs, None);
    }
    let z = Var::new(SATURATION_VAR);
    let d = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
    eqs.push(&(&Poly::var(z) * &d) - &Poly::one());
    (eqs, Some(z))
}

fn block_order(model: &Model, eqs: &[Poly], order: u32, z: Option<Var>) -> MonomialOrder {
    let mut first: Vec<Var> = model.states.clone();
    first.extend(z);
    let mut blocks = vec![first];
    let outs = model.output_names();
    let derivs = |y: Var| (0..=order).rev().map(move |j| derivative_var(y, j));
    for &y in outs.iter().skip(1).rev() {
        blocks.push(derivs(y).collect());
    }
    let mut last: Vec<Var> = derivs(outs[0]).collect();
    let present: BTreeSet<Var> = eqs.iter().flat_map(|e| e.vars()).collect();
    for &u in &model.inputs {
        let mut us: Vec<(u32, Var)> = present
            .iter()
            .filter(|v| split_derivative(**v).0 == u)
            .map(|&v| (split_derivative(v).1, v))
            .collect();
        us.sort_by(|a, b| b.0.cmp(&a.0));
        last.extend(us.into_iter().map(|(_, v)| v));
    }
    last.extend(model.params.iter().copied());
    blocks.push(last);
    MonomialOrder::Block(blocks)
}

/// Selection key, smallest first: order in the output itself, then order
/// of any differential variable, then term count, then canonical text.
fn selection_key(p: &Poly, y: Var) -> (u32, u32, usize, String) {
    let mut own = 0;
    let mut any = 0;
    for v in p.vars() {
        let (base, k) = split_derivative(v);
        if base == y {
            own = own.max(k);
        }
        any = any.max(k);
    }
    (own, any, p.num_terms(), p.to_string())
}

/// Input-output polynomials, one per output, computed by prolongation and
/// block elimination of the states. Prolongation orders from the number of
/// states up to `max_prolong` (default twice the number of states) are
/// tried in turn.
///
/// Relations found by solving prolongation equations for states are used
/// directly when each involves no later output, and otherwise only when
/// elimination fails.
pub fn io_polynomials(model: &Model, max_prolong: Option<usize>, limits: &GbLimits) -> Result<Vec<IOPolynomial>, DiffAlgError> {
    let n = model.states.len();
    let hi = max_prolong.unwrap_or(2 * n).max(n.min(1));
    let lo = n.min(hi);
    let outs = model.output_names();
    let solved = io_by_substitution(model, hi as u32);
    let triangular = solved.as_ref().is_some_and(|found| {
        found
            .iter()
            .enumerate()
            .all(|(i, p)| p.vars().iter().all(|&v| !outs[i + 1..].contains(&split_derivative(v).0)))
    });
    if triangular {
        return Ok(from_solved(model, solved.unwrap()));
    }
    let mut last_missing = outs[0];
    for k in lo..=hi {
        let (eqs, z) = prolongation_system(model, k as u32);
        let order = block_order(model, &eqs, k as u32, z);
        let gb = match GroebnerBasis::compute(&eqs, &order, limits) {
            Ok(gb) => gb,
            Err(e) => return solved.map(|found| from_solved(model, found)).ok_or(DiffAlgError::Algebra(e)),
        };
        let mut found = Vec::new();
        for (i, &y) in outs.iter().enumerate() {
            let allowed = |v: Var| {
                let (base, _) = split_derivative(v);
                model.is_param(v) || model.inputs.contains(&base) || outs[..=i].contains(&base)
            };
            let best = gb
                .polys()
                .iter()
                .filter(|p| p.vars().iter().all(|&v| allowed(v)))
                .filter(|p| p.vars().iter().any(|&v| split_derivative(v).0 == y && !model.is_param(v)))
                .min_by_key(|p| selection_key(p, y));
            match best {
                Some(p) => found.push(p.primitive()),
                None => {
                    last_missing = y;
                    break;
                }
            }
        }
        if found.len() == outs.len() {
            return Ok(outs
                .iter()
                .zip(found)
                .map(|(&y, p)| normalize_io(&IOPolynomial::from_poly(y, &p, |v| model.is_differential(v))))
                .collect());
        }
    }
    solved
        .map(|found| from_solved(model, found))
        .ok_or(DiffAlgError::EliminationIncomplete {
            output: last_missing.name().to_string(),
            max_prolong: hi,
        })
}

fn from_solved(model: &Model, found: Vec<Poly>) -> Vec<IOPolynomial> {
    model
        .output_names()
        .into_iter()
        .zip(found)
        .map(|(y, p)| normalize_io(&IOPolynomial::from_poly(y, &p, |v| model.is_differential(v))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_by_exact_division() {
        let a = crate::cli::parse_poly("k + s").unwrap();
        let b = crate::cli::parse_poly("y*k + y*s").unwrap();
        let f = denominator_factors([&a, &b]);
        let prod = f.iter().fold(Poly::one(), |acc, p| &acc * p);
        assert!(prod.proportionality(&b).is_some(), "{f:?}");
    }
}
