use std::collections::{BTreeSet, HashMap};

use super::io::denominator_factors;
use super::lie::lie_derivative;
use super::model::derivative_var;
use super::{Model, RationalExpr};
use crate::algebra::{Monomial, Poly, Var};

/// States solved so far, each as `num / den` over outputs, inputs and
/// parameters.
#[derive(Default)]
struct Solved {
    values: HashMap<Var, (Poly, Poly)>,
    /// Every denominator met, to be divided out of the final relations.
    factors: Vec<Poly>,
}

impl Solved {
    /// `p` with solved states replaced, as a numerator and denominator.
    fn substitute(&self, p: &Poly) -> (Poly, Poly) {
        let mut top: HashMap<Var, u32> = HashMap::new();
        for (m, _) in p.terms() {
            for &(v, e) in m.pairs() {
                if self.values.contains_key(&v) {
                    let t = top.entry(v).or_default();
                    *t = (*t).max(e);
                }
            }
        }
        let mut num = Poly::zero();
        for (m, c) in p.terms() {
            let mut kept = Vec::new();
            let mut t = Poly::one();
            for (&v, &emax) in &top {
                let e = m.exponent(v);
                let (n, d) = &self.values[&v];
                t = &t * &(&n.pow(e) * &d.pow(emax - e));
            }
            for &(v, e) in m.pairs() {
                if !self.values.contains_key(&v) {
                    kept.push((v, e));
                }
            }
            num = &num + &(&t * &Poly::term(c.clone(), Monomial::from_pairs(kept)));
        }
        let den = top.iter().fold(Poly::one(), |acc, (v, &e)| &acc * &self.values[v].1.pow(e));
        (num, den)
    }

    fn substitute_expr(&self, e: &RationalExpr) -> (Poly, Poly) {
        let (n1, d1) = self.substitute(e.num());
        let (n2, d2) = self.substitute(e.den());
        self.reduce(&n1 * &d2, &n2 * &d1)
    }

    /// Cancels known factors shared by `num` and `den`.
    fn reduce(&self, mut num: Poly, mut den: Poly) -> (Poly, Poly) {
        for f in &self.factors {
            while let (Some(a), Some(b)) = (num.div_exact(f), den.div_exact(f)) {
                num = a;
                den = b;
            }
        }
        if let Some(q) = num.div_exact(&den) {
            return (q, Poly::one());
        }
        (num, den)
    }

    /// Divides out every known factor of `p` and its monomial content.
    fn strip(&self, mut p: Poly) -> Poly {
        for f in &self.factors {
            while let Some(q) = p.div_exact(f) {
                if q.is_constant() {
                    break;
                }
                p = q;
            }
        }
        let content = p
            .terms()
            .map(|(m, _)| m.clone())
            .reduce(|a, b| a.gcd(&b))
            .unwrap_or_else(Monomial::one);
        p.div_monomial(&content).primitive()
    }

    fn add_factors(&mut self, d: &Poly) {
        let all: Vec<&Poly> = self.factors.iter().chain(std::iter::once(d)).collect();
        self.factors = denominator_factors(all);
    }
}

/// Input-output relations, one per output, found by solving prolongation
/// equations for states that occur linearly.
///
/// Outputs are differentiated level by level in declaration order. At each
/// step the known states are substituted; if the equation still involves
/// an unknown state that occurs linearly, with a coefficient free of the
/// unknown states, it is solved for that state, and otherwise, once no
/// unknown state remains, the equation is the relation of its output.
/// Returns `None` when some equation has no such state.
pub(crate) fn io_by_substitution(model: &Model, max_order: u32) -> Option<Vec<Poly>> {
    let states: BTreeSet<Var> = model.states.iter().copied().collect();
    let mut solved = Solved::default();
    let mut exprs: Vec<Option<RationalExpr>> = model.outputs.iter().map(|(_, h)| Some(h.clone())).collect();
    let mut found: Vec<Option<Poly>> = vec![None; model.outputs.len()];
    for k in 0..=max_order {
        for (j, (y, _)) in model.outputs.iter().enumerate() {
            let Some(e) = exprs[j].take() else { continue };
            let (num, den) = solved.substitute_expr(&e);
            let eq = &(&den * &Poly::var(derivative_var(*y, k))) - &num;
            let unknown: Vec<Var> = eq.vars().into_iter().filter(|v| states.contains(v)).collect();
            if unknown.is_empty() {
                found[j] = Some(solved.strip(eq));
                continue;
            }
            let pick = unknown.iter().find_map(|&x| {
                if eq.degree_in(x) != 1 {
                    return None;
                }
                let a = eq.derivative(x);
                let b = eq.substitute(x, &Poly::zero());
                let free = |p: &Poly| p.vars().iter().all(|v| !states.contains(v));
                (free(&a) && free(&b)).then_some((x, a, b))
            })?;
            let (x, a, b) = pick;
            let (n, d) = solved.reduce(-&b, a);
            solved.add_factors(&d);
            solved.values.insert(x, (n, d));
            exprs[j] = Some(lie_derivative(model, &e));
        }
        if found.iter().all(Option::is_some) {
            return found.into_iter().collect();
        }
    }
    None
}
