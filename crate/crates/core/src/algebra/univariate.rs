//! Dense univariate polynomials over the rationals, Sturm sequences and
//! real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Rational;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Rational>,
}

/// An interval endpoint, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// An isolating interval. When `lo == hi` the root is exactly `lo`;
/// otherwise it is the unique root in the open interval `(lo, hi)` and the
/// polynomial has opposite nonzero signs at the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: Rational,
}

pub(crate) fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> UPoly {
        UPoly { c: vec![Rational::one()] }
    }

    /// The monic linear polynomial `x - a`.
    pub fn linear_root(a: &Rational) -> UPoly {
        UPoly::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * x + super::poly::rat_to_f64(a);
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        int_sign_at(&to_ints(self), x)
    }

    /// Sign as x → +∞ (`pos = true`) or −∞.
    pub fn sign_at_infinity(&self, pos: bool) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign(&self.lc());
                if pos || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new(
            (0..n)
                .map(|i| self.c.get(i).cloned().unwrap_or_default() + o.c.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lc().recip();
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * b;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.monic();
        }
        let (mut a, mut b) = (to_ints(self), to_ints(o));
        while !b.is_empty() {
            let (r, _) = prem(&a, &b);
            a = b;
            b = primitive(r);
        }
        from_ints(&a).monic()
    }

    /// Rescaled copy with integer coprime coefficients (sign preserved);
    /// used to keep remainder sequences small.
    fn primitive_rational(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut l = BigInt::one();
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let mut g = BigInt::zero();
        for a in &self.c {
            g = g.gcd(&(a.numer() * (&l / a.denom())));
        }
        self.scale(&Rational::new(l, g))
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let p = self.primitive_rational();
        let flip = p.lc().is_negative();
        p.c.iter()
            .map(|a| {
                let n = a.to_integer();
                if flip {
                    -n
                } else {
                    n
                }
            })
            .collect()
    }

    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sturm sequence of the squarefree part.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        int_sturm(self).iter().map(|p| from_ints(p)).collect()
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn sturm_count(&self, a: &Bound, b: &Bound) -> usize {
        assert!(!self.is_zero(), "sturm_count of the zero polynomial");
        let seq = int_sturm(self);
        let p = &seq[0];
        // Roots in (−∞, c] are V(−∞) − V(c).
        let at_most = |c: &Bound| -> i64 {
            match c {
                Bound::NegInf => 0,
                Bound::PosInf => variations_at(&seq, &Bound::NegInf) as i64 - variations_at(&seq, &Bound::PosInf) as i64,
                Bound::Finite(_) => variations_at(&seq, &Bound::NegInf) as i64 - variations_at(&seq, c) as i64,
            }
        };
        let mut n = at_most(b) - at_most(a);
        if let Bound::Finite(x) = b {
            if int_sign_at(p, x) == 0 {
                n -= 1;
            }
        }
        n.max(0) as usize
    }

    pub fn count_real_roots(&self) -> usize {
        self.sturm_count(&Bound::NegInf, &Bound::PosInf)
    }

    /// A power of two `B` with all real roots in `(−B, B)` (Fujiwara's
    /// bound `2·max |a_i/a_n|^(1/(n−i))`, rounded up).
    pub fn root_bound(&self) -> Rational {
        let ints = to_ints(self);
        let n = ints.len() - 1;
        let lc_bits = ints[n].bits() as i64 - 1;
        let mut e: i64 = 0;
        for (i, a) in ints[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let k = (n - i) as i64;
            let num = a.bits() as i64 - lc_bits;
            e = e.max(num.div_euclid(k) + 1);
        }
        Rational::from_integer(BigInt::one() << (e + 1) as usize)
    }

    /// One isolating interval per distinct real root, in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = int_sturm(self);
        let p = seq[0].clone();
        let b = from_ints(&p).root_bound();
        let mut out = Vec::new();
        let mut work = vec![(-b.clone(), b)];
        let count = |lo: &Rational, hi: &Rational| -> usize {
            let v = |x: &Rational| variations_at(&seq, &Bound::Finite(x.clone())) as i64;
            let mut n = v(lo) - v(hi);
            if int_sign_at(&p, hi) == 0 {
                n -= 1;
            }
            n.max(0) as usize
        };
        while let Some((lo, hi)) = work.pop() {
            let n = count(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && int_sign_at(&p, &lo) * int_sign_at(&p, &hi) < 0 {
                out.push(RootInterval { lo, hi });
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            if int_sign_at(&p, &mid) == 0 {
                out.push(RootInterval {
                    lo: mid.clone(),
                    hi: mid.clone(),
                });
            }
            work.push((mid.clone(), hi));
            work.push((lo, mid));
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Halves an isolating interval of a root of `self` until narrower than `width`.
    pub fn refine(&self, iv: &RootInterval, width: &Rational) -> RootInterval {
        let p = to_ints(&self.squarefree());
        let mut iv = iv.clone();
        while !iv.is_exact() && iv.width() >= *width {
            let mid = iv.midpoint();
            let s = int_sign_at(&p, &mid);
            if s == 0 {
                return RootInterval { lo: mid.clone(), hi: mid };
            }
            if s == int_sign_at(&p, &iv.lo) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        iv
    }

    /// All rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(d) = self.degree() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let p = self.squarefree();
        let ints = p.primitive_integer();
        let lc = ints.last().unwrap().abs();
        // A rational root p/q has q | lc, so an interval narrower than
        // 1/(2 lc^2) contains at most one such candidate.
        let w = Rational::new(BigInt::one(), BigInt::from(2) * &lc * &lc);
        let mut out = Vec::new();
        for iv in p.isolate_real_roots() {
            if iv.is_exact() {
                out.push(iv.lo);
                continue;
            }
            let iv = p.refine(&iv, &w);
            if iv.is_exact() {
                out.push(iv.lo);
                continue;
            }
            let cand = simplest_between(&iv.lo, &iv.hi);
            if cand.denom() <= &lc && p.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
        out.sort();
        out
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations_at(seq: &[Vec<BigInt>], x: &Bound) -> usize {
    let signs = seq.iter().map(|p| {
        let lc = p.last().map_or(0, |c| c.signum().to_i32().unwrap_or(0));
        match x {
            Bound::NegInf if p.len() % 2 == 0 => -lc,
            Bound::NegInf | Bound::PosInf => lc,
            Bound::Finite(v) => int_sign_at(p, v),
        }
    });
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Positive rescaling to integer coefficients, constant term first.
fn to_ints(p: &UPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for a in &p.c {
        l = l.lcm(a.denom());
    }
    primitive(p.c.iter().map(|a| a.numer() * (&l / a.denom())).collect())
}

fn from_ints(c: &[BigInt]) -> UPoly {
    UPoly::new(c.iter().map(|a| Rational::from_integer(a.clone())).collect())
}

/// Divides out the (positive) content.
fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let g = c.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if !g.is_zero() && !g.is_one() {
        for a in c.iter_mut() {
            *a = &*a / &g;
        }
    }
    c
}

/// Pseudo-remainder of `a` by `b`, with the sign of the factor
/// `lc(b)^k` it was multiplied by.
fn prem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, i32) {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    let mut sgn = 1;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        if lb.is_negative() {
            sgn = -sgn;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    (r, sgn)
}

/// Sturm sequence of the squarefree part, with primitive integer members.
fn int_sturm(p: &UPoly) -> Vec<Vec<BigInt>> {
    let p = to_ints(&p.squarefree());
    let d = to_ints(&from_ints(&p).derivative());
    let mut seq = vec![p, d];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        if seq[n - 1].len() == 1 {
            break;
        }
        let (r, sgn) = prem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        let mut r = primitive(r);
        // The next member is −rem up to a positive factor.
        if sgn > 0 {
            for x in r.iter_mut() {
                *x = -&*x;
            }
        }
        seq.push(r);
    }
    seq
}

/// Sign of an integer polynomial at `x = a/b`, from `b^n·p(a/b)`.
fn int_sign_at(p: &[BigInt], x: &Rational) -> i32 {
    let Some(last) = p.last() else { return 0 };
    let (a, b) = (x.numer(), x.denom());
    let mut acc = last.clone();
    let mut bp = BigInt::one();
    for c in p[..p.len() - 1].iter().rev() {
        bp *= b;
        acc = acc * a + c * &bp;
    }
    acc.signum().to_i32().unwrap_or(0)
}

/// Rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo <= hi: continued-fraction descent.
    let fl = lo.floor();
    if fl == *lo {
        return lo.clone();
    }
    if &(fl.clone() + Rational::one()) <= hi {
        return fl + Rational::one();
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    // lo < fl + 1 > hi: recurse on reciprocals (order flips).
    fl + simplest_between(&frac_hi.recip(), &frac_lo.recip()).recip()
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let m = a.abs();
            match i {
                0 => write!(f, "{m}")?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{m}*")?;
                    }
                    if i == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of distinct real roots of `f` in the open interval `(a, b)`.
pub fn sturm_count(f: &UPoly, a: &Bound, b: &Bound) -> usize {
    f.sturm_count(a, b)
}

pub fn isolate_real_roots(f: &UPoly) -> Vec<RootInterval> {
    f.isolate_real_roots()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fin(n: i64) -> Bound {
        Bound::Finite(q(n, 1))
    }

    #[test]
    fn sturm_examples() {
        let x = UPoly::from_ints(&[0, 1]);
        assert_eq!(x.sturm_count(&fin(-1), &fin(1)), 1);
        let x2p1 = UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(x2p1.sturm_count(&Bound::NegInf, &Bound::PosInf), 0);
        let x2m2 = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(x2m2.sturm_count(&fin(0), &fin(2)), 1);
        // open interval excludes endpoint roots
        let x2m1 = UPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(x2m1.sturm_count(&fin(-1), &fin(1)), 0);
        assert_eq!(x2m1.sturm_count(&fin(-1), &fin(2)), 1);
        assert_eq!(x2m1.sturm_count(&Bound::NegInf, &Bound::PosInf), 2);
    }

    #[test]
    fn multiplicities_collapse() {
        // (x-1)^3 (x+2)^2
        let p = UPoly::from_ints(&[-1, 1])
            .mul(&UPoly::from_ints(&[-1, 1]))
            .mul(&UPoly::from_ints(&[-1, 1]));
        let p = p.mul(&UPoly::from_ints(&[2, 1])).mul(&UPoly::from_ints(&[2, 1]));
        assert_eq!(p.count_real_roots(), 2);
        assert_eq!(p.squarefree().degree(), Some(2));
    }

    #[test]
    fn isolation_examples() {
        let x2m2 = UPoly::from_ints(&[-2, 0, 1]);
        let ivs = x2m2.isolate_real_roots();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].hi <= Rational::zero());
        assert!(ivs[1].lo >= Rational::zero());
        for iv in &ivs {
            assert!(x2m2.sign_at(&iv.lo) * x2m2.sign_at(&iv.hi) < 0);
        }
        let x2 = UPoly::from_ints(&[0, 0, 1]);
        let ivs = x2.isolate_real_roots();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].lo <= Rational::zero() && ivs[0].hi >= Rational::zero());
        assert!(UPoly::one().isolate_real_roots().is_empty());
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 3)(x + 5)(x^2 - 2)
        let p = UPoly::from_ints(&[-3, 2])
            .mul(&UPoly::from_ints(&[5, 1]))
            .mul(&UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(p.rational_roots(), vec![q(-5, 1), q(3, 2)]);
        assert!(UPoly::from_ints(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_between(&q(-1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(simplest_between(&q(7, 5), &q(3, 2)), q(3, 2));
        assert_eq!(simplest_between(&q(-4, 10), &q(-3, 10)), q(-1, 3));
    }
}
