use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, UPoly, Var};

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn named(name: &str) -> Poly {
        Poly::var(Var::new(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Variables occurring in the polynomial, ordered by interning id.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    /// Division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(t, a)| (m.quotient_of(t).expect("monomial does not divide"), a.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e > 0 {
                let nm = rest.mul(&Monomial::var_pow(v, e - 1));
                out.add_term(nm, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let t = powers[e as usize].mul_monomial(&rest).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Renames variables; variables absent from `map` are kept.
    pub fn rename(&self, map: &HashMap<Var, Var>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let nm = Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e)));
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Substitutes rational values for the variables present in `point`.
    pub fn eval_partial(&self, point: &HashMap<Var, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.pairs() {
                match point.get(&v) {
                    Some(x) => coeff *= pow_rat(x, e),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(rest), coeff);
        }
        out
    }

    /// Full evaluation; returns `None` if some variable has no value.
    pub fn eval(&self, point: &HashMap<Var, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                t *= pow_rat(point.get(&v)?, e);
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn eval_f64(&self, point: &HashMap<Var, f64>) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for &(v, e) in m.pairs() {
                t *= point.get(&v).copied().unwrap_or(0.0).powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Groups terms by their monomial in the variables selected by `keep`;
    /// the values are the cofactor polynomials in the remaining variables.
    pub fn coefficients_by(&self, keep: impl Fn(Var) -> bool) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, rest) = m.split_by(&keep);
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Univariate view, if the polynomial involves at most the variable `v`.
    pub fn to_univariate(&self, v: Var) -> Option<UPoly> {
        let d = self.degree_in(v) as usize;
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if !rest.is_one() {
                return None;
            }
            coeffs[e as usize] += c;
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UPoly, v: Var) -> Poly {
        Poly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var_pow(v, i as u32), c.clone())),
        )
    }

    /// Term with the canonically largest monomial (graded lex by name).
    pub fn canonical_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().min_by(|a, b| a.0.canonical_cmp(b.0))
    }

    /// Scales so the canonically leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.canonical_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Scales to an integer polynomial with coprime coefficients and a
    /// positive canonically leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Rational::new(lcm, g);
        if self.canonical_leading().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// If `other == c * self` for a nonzero rational `c`, returns `c`.
    pub fn proportionality(&self, other: &Poly) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for (m, a) in &self.terms {
            let b = other.terms.get(m)?;
            let r = b / a;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let lead = |p: &Poly| -> (Monomial, Rational) {
            let (m, c) = p.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0)).unwrap();
            (m.clone(), c.clone())
        };
        let (dm, dc) = lead(d);
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while !rem.is_zero() {
            let (rm, rc) = lead(&rem);
            let t = dm.quotient_of(&rm)?;
            let c = &rc / &dc;
            let step = Poly::term(c.clone(), t.clone());
            rem = &rem - &(d * &step);
            q.add_term(t, c);
        }
        Some(q)
    }

    pub fn sign_at(&self, point: &HashMap<Var, Rational>) -> Option<i32> {
        let v = self.eval(point)?;
        Some(if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        })
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

pub(crate) fn rat_to_f64(c: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().bits() as i64;
        let d = c.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        if shift > 0 {
            (c / Rational::from_integer(BigInt::one() << shift as usize))
                .to_f64()
                .unwrap_or(f64::NAN)
                * 2f64.powi(shift as i32)
        } else {
            (c * Rational::from_integer(BigInt::one() << (-shift) as usize))
                .to_f64()
                .unwrap_or(f64::NAN)
                * 2f64.powi(shift as i32)
        }
    })
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m = a.mul(b);
                let c = x * y;
                acc.entry(m).and_modify(|e| *e += &c).or_insert(c);
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in graded lex order (variables ranked by name),
    /// explicit signs, `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
