#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::Rng;
use relident::algebra::{Monomial, Poly, Rational, Var};
use relident::cli::ModelDocument;
use relident::semialg::Relation;

pub fn p(s: &str) -> Poly {
    relident::parse_poly(s).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

/// Plain lexicographic comparison on an explicit variable list.
pub fn lex_oracle(vars: &[Var]) -> impl Fn(&Monomial, &Monomial) -> Ordering + '_ {
    move |a, b| {
        for &v in vars {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Graded reverse lexicographic comparison: total degree, then the smaller
/// exponent in the last differing variable wins.
pub fn grevlex_oracle(vars: &[Var]) -> impl Fn(&Monomial, &Monomial) -> Ordering + '_ {
    move |a, b| {
        let da: u32 = vars.iter().map(|&v| a.exponent(v)).sum();
        let db: u32 = vars.iter().map(|&v| b.exponent(v)).sum();
        if da != db {
            return da.cmp(&db);
        }
        for &v in vars.iter().rev() {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

pub fn oracle_lt(f: &Poly, cmp: &dyn Fn(&Monomial, &Monomial) -> Ordering) -> Option<(Monomial, Rational)> {
    f.terms().max_by(|a, b| cmp(a.0, b.0)).map(|(m, c)| (m.clone(), c.clone()))
}

/// Remainder of full multivariate division.
pub fn oracle_reduce(f: &Poly, basis: &[Poly], cmp: &dyn Fn(&Monomial, &Monomial) -> Ordering) -> Poly {
    let lts: Vec<_> = basis.iter().map(|g| oracle_lt(g, cmp).unwrap()).collect();
    let mut rest = f.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = oracle_lt(&rest, cmp) {
        let hit = lts.iter().enumerate().find(|(_, (lm, _))| lm.divides(&m));
        match hit {
            Some((i, (lm, lc))) => {
                let quot = lm.quotient_of(&m).unwrap();
                let factor = Poly::term(&c / lc, quot);
                rest = &rest - &(&factor * &basis[i]);
            }
            None => {
                let t = Poly::term(c, m);
                rest = &rest - &t;
                rem = &rem + &t;
            }
        }
    }
    rem
}

pub fn oracle_spoly(f: &Poly, g: &Poly, cmp: &dyn Fn(&Monomial, &Monomial) -> Ordering) -> Poly {
    let (fm, fc) = oracle_lt(f, cmp).unwrap();
    let (gm, gc) = oracle_lt(g, cmp).unwrap();
    let l = Monomial::from_pairs(
        fm.vars()
            .chain(gm.vars())
            .map(|v| (v, fm.exponent(v).max(gm.exponent(v))))
            .collect::<BTreeMap<_, _>>(),
    );
    let a = Poly::term(fc.recip(), fm.quotient_of(&l).unwrap());
    let b = Poly::term(gc.recip(), gm.quotient_of(&l).unwrap());
    &(&a * f) - &(&b * g)
}

/// `Some(c)` when `b = c·a` term by term with `c ≠ 0`.
pub fn proportional(a: &Poly, b: &Poly) -> Option<Rational> {
    let ta: BTreeMap<&Monomial, &Rational> = a.terms().collect();
    let tb: BTreeMap<&Monomial, &Rational> = b.terms().collect();
    if ta.is_empty() || ta.len() != tb.len() {
        return None;
    }
    let mut ratio = None;
    for (m, ca) in ta {
        let r = *tb.get(m)? / ca;
        match &ratio {
            None => ratio = Some(r),
            Some(x) if *x == r => {}
            Some(_) => return None,
        }
    }
    ratio
}

/// Integer polynomial in up to three variables, kept apart from the
/// library's representation so it can be evaluated independently.
#[derive(Clone, Debug)]
pub struct IntPoly {
    pub terms: Vec<(i64, [u32; 3])>,
}

pub const GRID_VARS: [&str; 3] = ["x", "y", "z"];

impl IntPoly {
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (c, e) in &self.terms {
            let m = Monomial::from_pairs(GRID_VARS.iter().zip(e).map(|(n, &k)| (Var::new(n), k)));
            out = &out + &Poly::term(q(*c, 1), m);
        }
        out
    }

    /// `4^3·f(k/4)` for a grid point `k/4`, exact for degree at most 3.
    pub fn quarter_grid_value(&self, k: [i64; 3]) -> i128 {
        self.terms
            .iter()
            .map(|(c, e)| {
                let d: u32 = e.iter().sum();
                let mut v = *c as i128 * 4i128.pow(3 - d);
                for i in 0..3 {
                    v *= (k[i] as i128).pow(e[i]);
                }
                v
            })
            .sum()
    }

    pub fn eval(&self, pt: &[Rational; 3]) -> Rational {
        let mut s = Rational::zero();
        for (c, e) in &self.terms {
            let mut t = q(*c, 1);
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &pt[i];
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_f64(&self, pt: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| *c as f64 * (0..3).map(|i| pt[i].powi(e[i] as i32)).product::<f64>())
            .sum()
    }
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Random polynomial in the first `nvars` grid variables with degree at
/// most `max_deg` and coefficients in `[-5, 5]`.
pub fn random_int_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, max_terms: usize) -> IntPoly {
    loop {
        let mut terms: BTreeMap<[u32; 3], i64> = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let mut e = [0u32; 3];
            let d = rng.gen_range(0..=max_deg);
            for _ in 0..d {
                e[rng.gen_range(0..nvars)] += 1;
            }
            *terms.entry(e).or_default() += rng.gen_range(-5..=5);
        }
        let terms: Vec<(i64, [u32; 3])> = terms
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (c.clamp(-5, 5), e))
            .collect();
        if !terms.is_empty() {
            return IntPoly { terms };
        }
    }
}

pub const RELATIONS: [Relation; 6] = [Relation::Eq, Relation::Ne, Relation::Gt, Relation::Ge, Relation::Lt, Relation::Le];

/// Complex roots of `c[0] + c[1] x + ... + c[n] x^n` by the Aberth method.
pub fn numeric_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for &k in a.iter().rev() {
            df = df * z + f;
            f = f * z + k;
        }
        (f, df)
    };
    let radius = 1.0 + a[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (f, df) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Distinct real roots among numeric roots: imaginary part below `tol`,
/// clustered within `tol`.
pub fn distinct_real(roots: &[Complex64], tol: f64) -> Vec<f64> {
    let mut re: Vec<f64> = roots
        .iter()
        .filter(|z| z.im.abs() < tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    re.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::new();
    for r in re {
        if out.last().map_or(true, |&l| (r - l).abs() > tol * (1.0 + r.abs())) {
            out.push(r);
        }
    }
    out
}

/// A random linear compartment model with 3 or 4 parameters, each entering
/// as a product of one or two parameters.
pub fn toy_model(rng: &mut impl Rng) -> ModelDocument {
    let m = rng.gen_range(3..=4);
    let params: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
    let pick = |rng: &mut dyn rand::RngCore, must: &str| -> String {
        if rng.gen_bool(0.5) {
            must.to_string()
        } else {
            let other = &params[rng.gen_range(0..params.len())];
            if rng.gen_bool(0.5) {
                format!("{must}*{other}")
            } else {
                format!("({must} + {other})")
            }
        }
    };
    let mut odes = indexmap::IndexMap::new();
    let mut outputs = indexmap::IndexMap::new();
    let states;
    if rng.gen_bool(0.5) {
        let a = pick(rng, &params[0]);
        let b = pick(rng, &params[1]);
        let c = pick(rng, &params[2]);
        let extra = if m == 4 { format!(" + {}", params[3]) } else { String::new() };
        states = vec!["x".to_string()];
        odes.insert("x".into(), format!("-{a}*x + {b}{extra}"));
        outputs.insert("y".into(), format!("{c}*x"));
    } else {
        let a = pick(rng, &params[0]);
        let b = pick(rng, &params[1]);
        let c = pick(rng, &params[2]);
        let tail = if m == 4 { format!("{}*x1", params[3]) } else { "x1".to_string() };
        states = vec!["x1".to_string(), "x2".to_string()];
        odes.insert("x1".into(), format!("-{a}*x1 + {b}*x2"));
        odes.insert("x2".into(), format!("-{c}*x2 + {tail}"));
        outputs.insert("y".into(), "x1".into());
    }
    let constraints = if rng.gen_bool(0.5) {
        params.iter().map(|p| format!("{p} > 0")).collect()
    } else {
        Vec::new()
    };
    ModelDocument {
        states,
        inputs: Vec::new(),
        params,
        odes,
        outputs,
        constraints,
        initial_conditions: false,
    }
}

pub fn point(names: &[&str], values: &[Rational]) -> HashMap<Var, Rational> {
    names.iter().zip(values).map(|(n, v)| (Var::new(n), v.clone())).collect()
}
