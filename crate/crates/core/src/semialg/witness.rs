use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::{Poly, Rational, Var};

use super::presolve::presolve;
use super::SemiAlgebraicSystem;

/// Rationals of height at most `h` (numerator and denominator bounded by
/// `h` in absolute value), by increasing height: 0, 1, −1, 2, −2, 1/2, ...
pub fn height_candidates(h: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for k in 1..=h as i64 {
        for j in (1..=k).filter(|j| j.gcd(&k) == 1) {
            let mut fracs = vec![(k, j)];
            if j != k {
                fracs.push((j, k));
            }
            for (num, den) in fracs {
                for s in [1, -1] {
                    out.push(Rational::new(BigInt::from(s * num), BigInt::from(den)));
                }
            }
        }
    }
    out
}

fn fix(sys: &SemiAlgebraicSystem, x: Var, value: &Rational) -> SemiAlgebraicSystem {
    let c = Poly::constant(value.clone());
    let mut out = SemiAlgebraicSystem::new(sys.variables.iter().copied().filter(|&v| v != x).collect());
    for r in sys.relations() {
        let p = if r.poly.contains_var(x) { r.poly.substitute(x, &c) } else { r.poly };
        out.add(p, r.rel);
    }
    out
}

/// The variable to branch on: in the equation with fewest unknowns, the
/// one of highest degree (ties by declaration order), so that what remains
/// is as low-degree as possible. Without equations, the first variable of
/// some remaining relation.
fn branch_var(sys: &SemiAlgebraicSystem) -> Option<Var> {
    let pos = |v: &Var| sys.variables.iter().position(|w| w == v).unwrap_or(usize::MAX);
    if let Some(eq) = sys.equations.iter().min_by_key(|e| e.vars().len()) {
        let mut vs: Vec<Var> = eq.vars().into_iter().collect();
        vs.sort_by_key(|v| (std::cmp::Reverse(eq.degree_in(*v)), pos(v)));
        return vs.first().copied();
    }
    let mut vs: Vec<Var> = sys.relations().iter().flat_map(|c| c.poly.vars()).collect();
    vs.sort_by_key(pos);
    vs.first().copied()
}

struct Search<'r, R: Rng> {
    candidates: Vec<Rational>,
    deadline: Option<Instant>,
    nodes: usize,
    node_limit: usize,
    rng: Option<&'r mut R>,
    exhausted: bool,
}

impl<R: Rng> Search<'_, R> {
    fn dfs(&mut self, sys: &SemiAlgebraicSystem) -> Option<HashMap<Var, Rational>> {
        self.nodes += 1;
        if self.nodes > self.node_limit || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.exhausted = true;
            return None;
        }
        let pre = presolve(sys);
        if pre.contradiction.is_some() {
            return None;
        }
        let s = &pre.system;
        if s.is_trivial() {
            let zeros = s.variables.iter().map(|&v| (v, Rational::zero())).collect();
            return pre.lift(&zeros);
        }
        let uni = s.equations.iter().find_map(|e| {
            let vs = e.vars();
            (vs.len() == 1).then(|| {
                let x = *vs.iter().next().unwrap();
                (x, e.to_univariate(x).unwrap())
            })
        });
        if let Some((x, u)) = uni {
            for r in u.rational_roots() {
                if let Some(mut pt) = self.dfs(&fix(s, x, &r)) {
                    pt.insert(x, r);
                    return pre.lift(&pt);
                }
                if self.exhausted {
                    return None;
                }
            }
            return None;
        }
        let x = branch_var(s)?;
        let values: Vec<Rational> = match self.rng.as_mut() {
            None => self.candidates.clone(),
            Some(rng) => (0..3)
                .map(|_| self.candidates[rng.gen_range(0..self.candidates.len())].clone())
                .collect(),
        };
        for c in values {
            if let Some(mut pt) = self.dfs(&fix(s, x, &c)) {
                pt.insert(x, c);
                return pre.lift(&pt);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

/// Searches for an exact rational point of `sys`.
///
/// Equations that define a variable linearly are used to eliminate it and
/// univariate equations are solved for their rational roots; remaining
/// variables are enumerated over small-height rationals, with iterative
/// deepening on the height up to `height`, then randomized dives over
/// larger heights until the deadline. Any returned point satisfies every
/// relation of `sys` exactly.
pub fn rational_witness_search(
    sys: &SemiAlgebraicSystem,
    height: u32,
    deadline: Option<Instant>,
    rng: &mut impl Rng,
) -> Option<HashMap<Var, Rational>> {
    let all = sys.all_vars();
    let complete = |pt: HashMap<Var, Rational>| {
        let mut pt = pt;
        for &v in &all {
            pt.entry(v).or_insert_with(Rational::zero);
        }
        (sys.satisfied_by(&pt) == Some(true)).then_some(pt)
    };
    for h in 1..=height.max(1) {
        let mut search = Search::<rand_chacha::ChaCha8Rng> {
            candidates: height_candidates(h),
            deadline,
            nodes: 0,
            node_limit: 1_000 * h as usize,
            rng: None,
            exhausted: false,
        };
        if let Some(pt) = search.dfs(sys) {
            return complete(pt);
        }
    }
    let Some(deadline) = deadline else { return None };
    let mut round = 0u32;
    while Instant::now() < deadline && round < 16 {
        round += 1;
        let mut search = Search {
            candidates: height_candidates(height.max(1) + 2 * round),
            deadline: Some(deadline),
            nodes: 0,
            node_limit: 300,
            rng: Some(&mut *rng),
            exhausted: false,
        };
        if let Some(pt) = search.dfs(sys) {
            return complete(pt);
        }
    }
    None
}

/// Checks that a point satisfies every relation of `sys` exactly.
pub fn verify_witness(sys: &SemiAlgebraicSystem, point: &HashMap<Var, Rational>) -> bool {
    sys.satisfied_by(point) == Some(true)
}
