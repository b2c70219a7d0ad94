use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Poly, Rational, Var};

/// A quotient of polynomials. The denominator is never zero and its
/// canonically leading coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalExpr {
    num: Poly,
    den: Poly,
}

fn monomial_content(p: &Poly) -> Monomial {
    p.terms()
        .map(|(m, _)| m.clone())
        .reduce(|a, b| a.gcd(&b))
        .unwrap_or_else(Monomial::one)
}

impl RationalExpr {
    pub fn new(num: Poly, den: Poly) -> RationalExpr {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalExpr::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalExpr {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RationalExpr { num: q, den: Poly::one() };
        }
        let common = monomial_content(&num).gcd(&monomial_content(&den));
        let (num, den) = if common.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&common), den.div_monomial(&common))
        };
        if let Some(c) = den.constant_value() {
            return RationalExpr {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let lc = den.canonical_leading().unwrap().1.clone();
        let inv = lc.recip();
        RationalExpr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn poly(p: Poly) -> RationalExpr {
        RationalExpr { num: p, den: Poly::one() }
    }

    pub fn zero() -> RationalExpr {
        RationalExpr::poly(Poly::zero())
    }

    pub fn one() -> RationalExpr {
        RationalExpr::poly(Poly::one())
    }

    pub fn constant(c: Rational) -> RationalExpr {
        RationalExpr::poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> RationalExpr {
        RationalExpr::poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        if self.den == o.den {
            return RationalExpr::new(&self.num + &o.num, self.den.clone());
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if let Some(q) = self.den.div_exact(&o.den) {
            return RationalExpr::new(&self.num + &(&o.num * &q), self.den.clone());
        }
        if let Some(q) = o.den.div_exact(&self.den) {
            return RationalExpr::new(&(&self.num * &q) + &o.num, o.den.clone());
        }
        RationalExpr::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RationalExpr) -> RationalExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Option<RationalExpr> {
        if self.is_zero() {
            return None;
        }
        Some(RationalExpr::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RationalExpr) -> Option<RationalExpr> {
        Some(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Rational) -> RationalExpr {
        RationalExpr::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Option<RationalExpr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Some(RationalExpr::new(base.num.pow(k), base.den.pow(k)))
    }

    pub fn derivative(&self, v: Var) -> RationalExpr {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return RationalExpr::new(dn, self.den.clone());
        }
        RationalExpr::new(&(&dn * &self.den) - &(&self.num * &dd), &self.den * &self.den)
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> RationalExpr {
        RationalExpr::new(self.num.rename(map), self.den.rename(map))
    }

    pub fn eval(&self, point: &HashMap<Var, Rational>) -> Option<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point)? / d)
    }

    pub fn eval_partial(&self, point: &HashMap<Var, Rational>) -> Option<RationalExpr> {
        let d = self.den.eval_partial(point);
        if d.is_zero() {
            return None;
        }
        Some(RationalExpr::new(self.num.eval_partial(point), d))
    }

    /// Whether `other == c * self` for a nonzero rational `c`, checked by
    /// exact cross-multiplication.
    pub fn proportional_to(&self, other: &RationalExpr) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        (&self.num * &other.den).proportionality(&(&other.num * &self.den)).is_some()
    }

    /// Representative scaled so the numerator's canonically leading
    /// coefficient is 1.
    pub fn monic(&self) -> RationalExpr {
        match self.num.canonical_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => RationalExpr::zero(),
        }
    }
}

impl From<Poly> for RationalExpr {
    fn from(p: Poly) -> Self {
        RationalExpr::poly(p)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
                s
            } else {
                format!("({s})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> RationalExpr {
        RationalExpr::var(Var::new(n))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let x = v("x");
        let k = v("k");
        let e = x.div(&k.add(&x)).unwrap();
        let back = e.mul(&k.add(&x));
        assert_eq!(back, x);
        assert_eq!(e.to_string(), "x/(k + x)");
        assert!(e.scale(&Rational::from_integer(3.into())).proportional_to(&e));
        assert!(!e.proportional_to(&x));
    }

    #[test]
    fn quotient_rule() {
        let x = v("x");
        let e = RationalExpr::one().div(&x).unwrap();
        let d = e.derivative(Var::new("x"));
        assert_eq!(d, x.pow(-2).unwrap().neg());
    }
}
