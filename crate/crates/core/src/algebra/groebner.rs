//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are converted to a dense exponent layout fixed by the
//! monomial order and carried with primitive integer coefficients
//! (fraction-free reduction). Pair selection uses the sugar strategy and
//! pairs are pruned with the Gebauer–Möller criteria.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::order::{Layout, LayoutKind};
use super::{AlgebraError, Monomial, MonomialOrder, Poly, Rational, Var};

/// Resource caps for a single Gröbner basis computation.
#[derive(Clone, Debug)]
pub struct GbLimits {
    pub max_degree: u32,
    pub max_basis: usize,
    pub timeout: Duration,
    /// Absolute deadline shared with an enclosing computation; the earlier
    /// of this and `timeout` applies.
    pub deadline: Option<Instant>,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_degree: 40,
            max_basis: 20_000,
            timeout: Duration::from_secs(300),
            deadline: None,
        }
    }
}

impl GbLimits {
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(match self.deadline {
            Some(d) if d < deadline => d,
            _ => deadline,
        });
        self
    }

    fn effective_deadline(&self) -> Instant {
        let own = Instant::now() + self.timeout;
        match self.deadline {
            Some(d) if d < own => d,
            _ => own,
        }
    }
}

type Exps = SmallVec<[u16; 32]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct DMono {
    e: Exps,
    bdeg: SmallVec<[u32; 4]>,
    deg: u32,
    mask: u64,
}

impl DMono {
    fn mul(&self, o: &DMono) -> DMono {
        DMono {
            e: self.e.iter().zip(o.e.iter()).map(|(a, b)| a + b).collect(),
            bdeg: self.bdeg.iter().zip(o.bdeg.iter()).map(|(a, b)| a + b).collect(),
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    fn divides(&self, o: &DMono) -> bool {
        self.mask & !o.mask == 0 && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    fn coprime(&self, o: &DMono) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Dense polynomial: terms sorted strictly descending in the ring order.
#[derive(Clone, Debug, Default)]
pub(crate) struct DPoly {
    pub terms: Vec<(DMono, BigInt)>,
}

impl DPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &DMono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive;
    /// returns the factor the polynomial was divided by.
    fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c /= &g;
            }
        }
        g
    }
}

/// Dense polynomial ring fixed by a monomial order.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub layout: Layout,
}

impl Ring {
    pub fn new(order: &MonomialOrder, polys: &[&Poly]) -> Ring {
        Ring {
            layout: order.layout(polys),
        }
    }

    pub fn nvars(&self) -> usize {
        self.layout.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.layout.vars
    }

    pub fn cmp(&self, a: &DMono, b: &DMono) -> Ordering {
        match self.layout.kind {
            LayoutKind::Lex => a.e.cmp(&b.e),
            LayoutKind::Blocks => {
                for (bi, &(s, t)) in self.layout.blocks.iter().enumerate() {
                    match a.bdeg[bi].cmp(&b.bdeg[bi]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    for i in (s..t).rev() {
                        if a.e[i] != b.e[i] {
                            return b.e[i].cmp(&a.e[i]);
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn mono_from_exps(&self, e: Exps) -> DMono {
        let mut mask = 0u64;
        let mut deg = 0u32;
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                mask |= 1u64 << (i % 64);
                deg += x as u32;
            }
        }
        let bdeg = match self.layout.kind {
            LayoutKind::Lex => SmallVec::new(),
            LayoutKind::Blocks => self
                .layout
                .blocks
                .iter()
                .map(|&(s, t)| e[s..t].iter().map(|&x| x as u32).sum())
                .collect(),
        };
        DMono { e, bdeg, deg, mask }
    }

    pub fn one_mono(&self) -> DMono {
        self.mono_from_exps(SmallVec::from_elem(0, self.nvars()))
    }

    pub fn var_mono(&self, i: usize) -> DMono {
        let mut e: Exps = SmallVec::from_elem(0, self.nvars());
        e[i] = 1;
        self.mono_from_exps(e)
    }

    fn lcm(&self, a: &DMono, b: &DMono) -> DMono {
        self.mono_from_exps(a.e.iter().zip(b.e.iter()).map(|(x, y)| *x.max(y)).collect())
    }

    fn quot(&self, num: &DMono, den: &DMono) -> DMono {
        self.mono_from_exps(num.e.iter().zip(den.e.iter()).map(|(x, y)| x - y).collect())
    }

    pub fn to_dense_mono(&self, m: &Monomial) -> DMono {
        let mut e: Exps = SmallVec::from_elem(0, self.nvars());
        for &(v, x) in m.pairs() {
            let i = self.layout.vars.iter().position(|&w| w == v).expect("variable outside ring");
            e[i] = x as u16;
        }
        self.mono_from_exps(e)
    }

    pub fn to_sparse_mono(&self, m: &DMono) -> Monomial {
        Monomial::from_pairs(
            m.e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (self.layout.vars[i], x as u32)),
        )
    }

    /// Converts to a primitive integer polynomial; returns the rational
    /// factor `s` with `dense = s * p`.
    pub fn to_dense(&self, p: &Poly) -> (DPoly, Rational) {
        let mut lcm = BigInt::one();
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut terms: Vec<(DMono, BigInt)> = p
            .terms()
            .map(|(m, c)| (self.to_dense_mono(m), c.numer() * (&lcm / c.denom())))
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut d = DPoly { terms };
        let g = d.make_primitive();
        (d, Rational::new(lcm, g))
    }

    pub fn to_sparse(&self, d: &DPoly) -> Poly {
        Poly::from_terms(
            d.terms
                .iter()
                .map(|(m, c)| (self.to_sparse_mono(m), Rational::from_integer(c.clone()))),
        )
    }

    /// `a*p - b*(m*q)` where the leading terms cancel, skipping both heads.
    fn combine_tail(&self, a: &BigInt, p: &[(DMono, BigInt)], b: &BigInt, m: &DMono, q: &[(DMono, BigInt)]) -> Vec<(DMono, BigInt)> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        let mut qm: Option<DMono> = q.first().map(|t| t.0.mul(m));
        while i < p.len() || j < q.len() {
            let ord = match (p.get(i), &qm) {
                (Some(x), Some(y)) => self.cmp(&x.0, y),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    let c = if a.is_one() { p[i].1.clone() } else { a * &p[i].1 };
                    out.push((p[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let c = -(b * &q[j].1);
                    out.push((qm.take().unwrap(), c));
                    j += 1;
                    qm = q.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let c = a * &p[i].1 - b * &q[j].1;
                    if !c.is_zero() {
                        out.push((p[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    qm = q.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out
    }

    fn find_reducer<'a>(&self, m: &DMono, basis: &'a [DPoly], active: &[usize]) -> Option<&'a DPoly> {
        active.iter().map(|&i| &basis[i]).find(|g| g.lm().divides(m))
    }

    /// Reduces `f` modulo `basis[active]`. With `full`, every term is
    /// reduced; otherwise only the head. Returns the reduced polynomial and
    /// the rational factor `s` with `result = s * (f - combination)`.
    pub fn reduce(
        &self,
        f: DPoly,
        basis: &[DPoly],
        active: &[usize],
        full: bool,
        deadline: Option<Instant>,
    ) -> Result<(DPoly, Rational), AlgebraError> {
        let mut scale = Rational::one();
        let mut done: Vec<(DMono, BigInt)> = Vec::new();
        let mut rest = f.terms;
        let mut start = 0usize;
        let mut steps = 0u64;
        while start < rest.len() {
            let lm = &rest[start].0;
            match self.find_reducer(lm, basis, active) {
                Some(g) => {
                    let lc = &rest[start].1;
                    let q = self.quot(lm, g.lm());
                    let gcd = lc.gcd(g.lc());
                    let mut a = g.lc() / &gcd;
                    let mut b = lc / &gcd;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    rest = self.combine_tail(&a, &rest[start + 1..], &b, &q, &g.terms[1..]);
                    start = 0;
                    if !a.is_one() {
                        for (_, c) in done.iter_mut() {
                            *c *= &a;
                        }
                        scale *= Rational::from_integer(a);
                    }
                    steps += 1;
                    if steps % 32 == 0 {
                        if let Some(d) = deadline {
                            if Instant::now() > d {
                                return Err(AlgebraError::ResourceExceeded("time budget exhausted during reduction".into()));
                            }
                        }
                        let mut g = BigInt::zero();
                        for (_, c) in done.iter().chain(rest.iter()) {
                            g = g.gcd(c);
                            if g.is_one() {
                                break;
                            }
                        }
                        if !g.is_one() && !g.is_zero() {
                            for (_, c) in done.iter_mut().chain(rest.iter_mut()) {
                                *c /= &g;
                            }
                            scale /= Rational::from_integer(g);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        done.extend(rest.drain(start..));
        let mut out = DPoly { terms: done };
        let g = out.make_primitive();
        if !g.is_one() {
            scale /= Rational::from_integer(g);
        }
        Ok((out, scale))
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: DMono,
    sugar: u32,
}

/// A reduced Gröbner basis together with its dense ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    ring: Ring,
    dense: Vec<DPoly>,
    polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn compute(gens: &[Poly], order: &MonomialOrder, limits: &GbLimits) -> Result<GroebnerBasis, AlgebraError> {
        let refs: Vec<&Poly> = gens.iter().collect();
        let ring = Ring::new(order, &refs);
        let deadline = limits.effective_deadline();
        let dense = buchberger(&ring, gens, limits, deadline)?;
        let polys = dense.iter().map(|d| monic_sparse(&ring, d)).collect();
        Ok(GroebnerBasis {
            order: order.clone(),
            ring,
            dense,
            polys,
        })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Poly> {
        self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring_vars(&self) -> &[Var] {
        self.ring.vars()
    }

    pub fn is_unit(&self) -> bool {
        self.dense.len() == 1 && self.dense[0].lm().deg == 0
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.dense.iter().map(|d| self.ring.to_sparse_mono(d.lm())).collect()
    }

    /// Exact normal form of `f` (the remainder of multivariate division).
    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form_in(&self.ring, &self.dense, f)
    }

    /// Krull dimension from the leading-term staircase; −1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        let lms: Vec<u64> = self.dense.iter().map(|d| support_bits(d.lm())).collect();
        max_independent(n, &lms) as i64
    }

    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return false;
        }
        (0..self.ring.nvars()).all(|i| {
            self.dense.iter().any(|d| {
                let e = &d.lm().e;
                e[i] > 0 && e.iter().enumerate().all(|(k, &x)| k == i || x == 0)
            })
        })
    }

    /// Monomials outside the leading-term ideal, if finitely many (up to `cap`).
    pub fn standard_monomials(&self, cap: usize) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let n = self.ring.nvars();
        let lms: Vec<&DMono> = self.dense.iter().map(|d| d.lm()).collect();
        let mut out: Vec<DMono> = Vec::new();
        let mut stack = vec![self.ring.one_mono()];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.e.clone()) {
                continue;
            }
            if lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            out.push(m.clone());
            if out.len() > cap {
                return None;
            }
            for i in 0..n {
                stack.push(m.mul(&self.ring.var_mono(i)));
            }
        }
        out.sort_by(|a, b| self.ring.cmp(a, b));
        Some(out.iter().map(|m| self.ring.to_sparse_mono(m)).collect())
    }
}

fn support_bits(m: &DMono) -> u64 {
    let mut b = 0u64;
    for (i, &x) in m.e.iter().enumerate() {
        if x > 0 && i < 64 {
            b |= 1 << i;
        }
    }
    b
}

/// Largest set of variables containing the support of no leading monomial.
fn max_independent(n: usize, lms: &[u64]) -> usize {
    fn rec(i: usize, n: usize, cur: u64, size: usize, lms: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = cur | (1 << i);
        if lms.iter().all(|&l| l & !with != 0) {
            rec(i + 1, n, with, size + 1, lms, best);
        }
        rec(i + 1, n, cur, size, lms, best);
    }
    let mut best = 0;
    rec(0, n.min(64), 0, 0, lms, &mut best);
    best
}

pub(crate) fn normal_form_in(ring: &Ring, basis: &[DPoly], f: &Poly) -> Poly {
    if f.is_zero() {
        return Poly::zero();
    }
    let (d, s0) = ring.to_dense(f);
    let active: Vec<usize> = (0..basis.len()).collect();
    let (r, s) = ring.reduce(d, basis, &active, true, None).expect("no deadline");
    // r = s * (s0 * f - combination)
    ring.to_sparse(&r).scale(&(s * s0).recip())
}

fn monic_sparse(ring: &Ring, d: &DPoly) -> Poly {
    let inv = Rational::new(BigInt::one(), d.lc().clone());
    ring.to_sparse(d).scale(&inv)
}

fn buchberger(ring: &Ring, gens: &[Poly], limits: &GbLimits, deadline: Instant) -> Result<Vec<DPoly>, AlgebraError> {
    let mut basis: Vec<DPoly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<DPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.to_dense(g).0).collect();
    if inputs.is_empty() {
        return Ok(Vec::new());
    }
    inputs.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    for f in inputs {
        let (h, _) = ring.reduce(f, &basis, &active, true, Some(deadline))?;
        if h.is_zero() {
            continue;
        }
        if h.lm().deg == 0 {
            return Ok(vec![unit(ring)]);
        }
        let s = h.terms.iter().map(|t| t.0.deg).max().unwrap();
        insert(ring, h, s, &mut basis, &mut sugar, &mut active, &mut pairs, limits)?;
    }

    while !pairs.is_empty() {
        if Instant::now() > deadline {
            return Err(AlgebraError::ResourceExceeded("Gröbner basis time budget exhausted".into()));
        }
        let k = select_pair(ring, &pairs);
        let p = pairs.swap_remove(k);
        let s = spoly(ring, &basis[p.i], &basis[p.j], &p.lcm);
        if s.is_zero() {
            continue;
        }
        let (h, _) = ring.reduce(s, &basis, &active, true, Some(deadline))?;
        if h.is_zero() {
            continue;
        }
        if h.lm().deg == 0 {
            return Ok(vec![unit(ring)]);
        }
        insert(ring, h, p.sugar, &mut basis, &mut sugar, &mut active, &mut pairs, limits)?;
    }

    interreduce(ring, &basis, &active, deadline)
}

fn unit(ring: &Ring) -> DPoly {
    DPoly {
        terms: vec![(ring.one_mono(), BigInt::one())],
    }
}

fn select_pair(ring: &Ring, pairs: &[Pair]) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let better = match a.sugar.cmp(&b.sugar) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match ring.cmp(&a.lcm, &b.lcm) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => (a.i, a.j) < (b.i, b.j),
            },
        };
        if better {
            best = k;
        }
    }
    best
}

fn spoly(ring: &Ring, f: &DPoly, g: &DPoly, lcm: &DMono) -> DPoly {
    let mf = ring.quot(lcm, f.lm());
    let mg = ring.quot(lcm, g.lm());
    let gcd = f.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = f.lc() / &gcd;
    // a*mf*f - b*mg*g, heads cancel
    let fm: Vec<(DMono, BigInt)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let terms = ring.combine_tail(&a, &fm, &b, &mg, &g.terms[1..]);
    let mut d = DPoly { terms };
    d.make_primitive();
    d
}

#[allow(clippy::too_many_arguments)]
fn insert(
    ring: &Ring,
    h: DPoly,
    h_sugar: u32,
    basis: &mut Vec<DPoly>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    limits: &GbLimits,
) -> Result<(), AlgebraError> {
    let hdeg = h.terms.iter().map(|t| t.0.deg).max().unwrap_or(0);
    if hdeg > limits.max_degree {
        return Err(AlgebraError::ResourceExceeded(format!(
            "basis element of degree {hdeg} exceeds cap {}",
            limits.max_degree
        )));
    }
    if basis.len() >= limits.max_basis {
        return Err(AlgebraError::ResourceExceeded(format!(
            "basis size exceeds cap {}",
            limits.max_basis
        )));
    }
    let t = basis.len();
    let hl = h.lm().clone();

    // Gebauer–Möller update.
    let mut cands: Vec<Pair> = active
        .iter()
        .map(|&g| {
            let lcm = ring.lcm(&hl, basis[g].lm());
            let s = pair_sugar(ring, &lcm, &hl, h_sugar, basis[g].lm(), sugar[g]);
            Pair { i: g, j: t, lcm, sugar: s }
        })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = cands.pop() {
        let coprime = hl.coprime(basis[p.i].lm());
        let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    kept.retain(|p| !hl.coprime(basis[p.i].lm()));
    pairs.retain(|p| !(hl.divides(&p.lcm) && ring.lcm(basis[p.i].lm(), &hl) != p.lcm && ring.lcm(&hl, basis[p.j].lm()) != p.lcm));
    pairs.extend(kept);
    active.retain(|&g| !hl.divides(basis[g].lm()));
    basis.push(h);
    sugar.push(h_sugar);
    active.push(t);
    Ok(())
}

fn pair_sugar(_ring: &Ring, lcm: &DMono, a: &DMono, sa: u32, b: &DMono, sb: u32) -> u32 {
    (sa + lcm.deg - a.deg).max(sb + lcm.deg - b.deg)
}

fn interreduce(ring: &Ring, basis: &[DPoly], active: &[usize], deadline: Instant) -> Result<Vec<DPoly>, AlgebraError> {
    // Minimal basis: drop elements whose head is divisible by another head.
    let mut idx: Vec<usize> = Vec::new();
    for &i in active {
        let li = basis[i].lm();
        let redundant = active
            .iter()
            .any(|&j| j != i && basis[j].lm().divides(li) && (basis[j].lm() != li || j < i));
        if !redundant {
            idx.push(i);
        }
    }
    let mut out: Vec<DPoly> = Vec::with_capacity(idx.len());
    for (k, &i) in idx.iter().enumerate() {
        let others: Vec<usize> = idx.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &j)| j).collect();
        let f = basis[i].clone();
        let head = f.terms[0].clone();
        let tail = DPoly {
            terms: f.terms[1..].to_vec(),
        };
        let (r, s) = ring.reduce(tail, basis, &others, true, Some(deadline))?;
        // head*s + r, with s rational: scale to integers.
        let num = s.numer().clone();
        let den = s.denom().clone();
        let mut terms = vec![(head.0, head.1 * &num)];
        terms.extend(r.terms.into_iter().map(|(m, c)| (m, c * &den)));
        let mut d = DPoly { terms };
        d.make_primitive();
        out.push(d);
    }
    out.sort_by(|a, b| ring.cmp(b.lm(), a.lm()));
    Ok(out)
}

/// Reduced Gröbner basis of `gens` under `order`, with default limits.
pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>, AlgebraError> {
    Ok(GroebnerBasis::compute(gens, order, &GbLimits::default())?.into_polys())
}

/// Remainder of `f` under multivariate division by `basis`.
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    let mut refs: Vec<&Poly> = basis.iter().collect();
    refs.push(f);
    let ring = Ring::new(order, &refs);
    let dense: Vec<DPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| ring.to_dense(b).0).collect();
    normal_form_in(&ring, &dense, f)
}

/// Leading monomial of `f` under `order`.
pub fn leading_monomial(f: &Poly, order: &MonomialOrder) -> Option<Monomial> {
    if f.is_zero() {
        return None;
    }
    let ring = Ring::new(order, &[f]);
    let (d, _) = ring.to_dense(f);
    Some(ring.to_sparse_mono(d.lm()))
}

/// Generators of the elimination ideal `I ∩ Q[vars \ drop]`.
pub fn eliminate(gens: &[Poly], drop: &[Var], keep_order: Option<&[Var]>, limits: &GbLimits) -> Result<Vec<Poly>, AlgebraError> {
    let dropset: BTreeSet<Var> = drop.iter().copied().collect();
    let mut rest: Vec<Var> = match keep_order {
        Some(v) => v.iter().copied().filter(|v| !dropset.contains(v)).collect(),
        None => Vec::new(),
    };
    let mut all: BTreeSet<Var> = gens.iter().flat_map(|g| g.vars()).collect();
    for v in &rest {
        all.remove(v);
    }
    let mut extra: Vec<Var> = all.into_iter().filter(|v| !dropset.contains(v)).collect();
    extra.sort_by_key(|v| v.name());
    rest.extend(extra);
    let order = MonomialOrder::Block(vec![drop.to_vec(), rest]);
    let gb = GroebnerBasis::compute(gens, &order, limits)?;
    Ok(gb
        .into_polys()
        .into_iter()
        .filter(|p| !p.vars().iter().any(|v| dropset.contains(v)))
        .collect())
}

/// Krull dimension of the ideal generated by a Gröbner basis under `order`.
pub fn ideal_dimension(basis: &[Poly], order: &MonomialOrder) -> i64 {
    let lms: Vec<Monomial> = basis.iter().filter_map(|p| leading_monomial(p, order)).collect();
    if lms.iter().any(Monomial::is_one) {
        return -1;
    }
    let refs: Vec<&Poly> = basis.iter().collect();
    let ring = Ring::new(order, &refs);
    let bits: Vec<u64> = lms.iter().map(|m| support_bits(&ring.to_dense_mono(m))).collect();
    max_independent(ring.nvars(), &bits) as i64
}
