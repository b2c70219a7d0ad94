use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// A power product of variables, stored as `(variable, exponent)` pairs
/// sorted by variable id. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs; duplicates are merged and
    /// zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(x, _)| x);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| Some((v, e.min(other.exponent(v)))).filter(|x| x.1 > 0))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(other.0.len());
        for &(v, e) in &other.0 {
            let d = self.exponent(v);
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if self.0.iter().any(|&(v, _)| other.exponent(v) == 0) {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits off the exponent of `v`, returning it and the remaining factor.
    pub fn split_var(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = self.0.iter().copied().filter(|&(x, _)| x != v).collect();
        (e, Monomial(rest))
    }

    /// Restriction to a subset of variables and its complement.
    pub fn split_by(&self, keep: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|&&(v, _)| keep(v));
        (Monomial(a), Monomial(b))
    }

    /// Lexicographic comparison with lower interning id ranked higher; a
    /// genuine term order, used where any fixed order will do.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(x, e)), Some(&(y, f))) => match x.cmp(&y) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(&f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Graded lexicographic comparison with variables ranked by name; used
    /// only for the canonical text form.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let mut a: Vec<(&str, u32)> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
            let mut b: Vec<(&str, u32)> = other.0.iter().map(|&(v, e)| (v.name(), e)).collect();
            a.sort();
            b.sort();
            // Higher power of the alphabetically first variable comes first.
            for (x, y) in a.iter().zip(b.iter()) {
                match x.0.cmp(y.0) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match y.1.cmp(&x.1) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                }
            }
            b.len().cmp(&a.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts: Vec<(&str, u32)> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
        parts.sort();
        for (i, (name, e)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divide() {
        let x = Var::new("x");
        let y = Var::new("y");
        let a = Monomial::from_pairs([(x, 2), (y, 1)]);
        let b = Monomial::from_pairs([(y, 3)]);
        let p = a.mul(&b);
        assert_eq!(p.exponent(y), 4);
        assert_eq!(p.degree(), 6);
        assert!(a.divides(&p));
        assert_eq!(a.quotient_of(&p), Some(b.clone()));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(p.to_string(), "x^2*y^4");
    }
}
