use std::collections::HashMap;

use num_traits::Signed;

use crate::algebra::{Monomial, Poly, Rational, Var};

use super::{Constraint, Relation, SemiAlgebraicSystem};

/// What is known about the sign of a quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Pos,
    Neg,
    NonNeg,
    NonPos,
    NonZero,
    Any,
}

impl Sign {
    fn of(c: &Rational) -> Sign {
        if c.is_positive() {
            Sign::Pos
        } else if c.is_negative() {
            Sign::Neg
        } else {
            Sign::NonNeg
        }
    }

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::NonNeg => Sign::NonPos,
            Sign::NonPos => Sign::NonNeg,
            s => s,
        }
    }

    fn mul(self, o: Sign) -> Sign {
        use Sign::*;
        match (self, o) {
            (Pos, s) | (s, Pos) => s,
            (Neg, s) | (s, Neg) => s.neg(),
            (NonZero, NonZero) => NonZero,
            (NonNeg, NonNeg) | (NonPos, NonPos) => NonNeg,
            (NonNeg, NonPos) | (NonPos, NonNeg) => NonPos,
            _ => Any,
        }
    }

    fn pow(self, e: u32) -> Sign {
        if e % 2 == 1 {
            return self;
        }
        match self {
            Sign::Pos | Sign::Neg | Sign::NonZero => Sign::Pos,
            _ => Sign::NonNeg,
        }
    }

    fn add(self, o: Sign) -> Sign {
        use Sign::*;
        match (self, o) {
            (Pos, Pos) | (Pos, NonNeg) | (NonNeg, Pos) => Pos,
            (Neg, Neg) | (Neg, NonPos) | (NonPos, Neg) => Neg,
            (NonNeg, NonNeg) => NonNeg,
            (NonPos, NonPos) => NonPos,
            _ => Any,
        }
    }

    /// Whether a quantity of this sign can satisfy `q rel 0`.
    fn compatible(self, rel: Relation) -> bool {
        use Sign::*;
        !matches!(
            (self, rel),
            (Pos, Relation::Eq | Relation::Lt | Relation::Le)
                | (Neg, Relation::Eq | Relation::Gt | Relation::Ge)
                | (NonNeg, Relation::Lt)
                | (NonPos, Relation::Gt)
                | (NonZero, Relation::Eq)
        )
    }

    fn meet(self, o: Sign) -> Sign {
        use Sign::*;
        match (self, o) {
            (Any, s) | (s, Any) => s,
            (NonNeg, NonZero) | (NonZero, NonNeg) => Pos,
            (NonPos, NonZero) | (NonZero, NonPos) => Neg,
            (NonNeg, NonPos) | (NonPos, NonNeg) => NonNeg,
            (a, b) if a == b => a,
            (Pos, _) | (_, Pos) => Pos,
            (Neg, _) | (_, Neg) => Neg,
            _ => self,
        }
    }
}

fn relation_sign(rel: Relation) -> Sign {
    match rel {
        Relation::Gt => Sign::Pos,
        Relation::Lt => Sign::Neg,
        Relation::Ge => Sign::NonNeg,
        Relation::Le => Sign::NonPos,
        Relation::Ne => Sign::NonZero,
        Relation::Eq => Sign::Any,
    }
}

fn monomial_sign(m: &Monomial, signs: &HashMap<Var, Sign>) -> Sign {
    m.pairs().iter().fold(Sign::Pos, |acc, &(v, e)| {
        acc.mul(signs.get(&v).copied().unwrap_or(Sign::Any).pow(e))
    })
}

fn poly_sign(p: &Poly, signs: &HashMap<Var, Sign>) -> Sign {
    let mut acc: Option<Sign> = None;
    for (m, c) in p.terms() {
        let s = Sign::of(c).mul(monomial_sign(m, signs));
        acc = Some(match acc {
            None => s,
            Some(a) => a.add(s),
        });
    }
    acc.unwrap_or(Sign::NonNeg)
}

/// Finds a relation that no real point can satisfy, judged from the signs
/// of its terms given the signs of single variables implied by relations
/// of the form `c·x^k ⋈ 0`.
pub(crate) fn sign_contradiction(sys: &SemiAlgebraicSystem) -> Option<Constraint> {
    let rels = sys.relations();
    let mut signs: HashMap<Var, Sign> = HashMap::new();
    for c in &rels {
        let mut terms = c.poly.terms();
        let (Some((m, k)), None) = (terms.next(), terms.next()) else {
            continue;
        };
        let [(v, e)] = m.pairs() else { continue };
        let mut s = relation_sign(c.rel);
        if k.is_negative() {
            s = s.neg();
        }
        let s = match (e % 2, s) {
            (1, s) => s,
            (_, Sign::Pos | Sign::NonZero) => Sign::NonZero,
            _ => Sign::Any,
        };
        let cur = signs.get(v).copied().unwrap_or(Sign::Any);
        signs.insert(*v, cur.meet(s));
    }
    rels.into_iter()
        .find(|c| !c.poly.is_zero() && !poly_sign(&c.poly, &signs).compatible(c.rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;

    fn sys(rels: &[(&str, Relation)]) -> SemiAlgebraicSystem {
        let mut s = SemiAlgebraicSystem::default();
        for (p, r) in rels {
            s.add(parse_poly(p).unwrap(), *r);
        }
        s
    }

    #[test]
    fn opposite_signs() {
        let s = sys(&[("mu", Relation::Gt), ("-mu", Relation::Gt)]);
        assert!(sign_contradiction(&s).is_some());
        let s = sys(&[("a", Relation::Gt), ("b", Relation::Gt), ("a*b + b^2 + 1", Relation::Eq)]);
        assert!(sign_contradiction(&s).is_some());
        let s = sys(&[("a", Relation::Gt), ("a*b + 1", Relation::Eq)]);
        assert!(sign_contradiction(&s).is_none());
        let s = sys(&[("x^2 + 1", Relation::Eq)]);
        assert!(sign_contradiction(&s).is_some());
    }
}
