use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::model::split_derivative;
use super::IOPolynomial;
use crate::algebra::{Poly, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WronskianVerdict {
    /// Some evaluation was nonzero; the determinant is certainly not
    /// identically zero.
    Pass,
    /// Every evaluation vanished; the determinant is identically zero with
    /// high probability.
    Fail,
}

const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    add(a, PRIME - b)
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    let m = n % BigInt::from(PRIME);
    let m = if m < BigInt::zero() { m + BigInt::from(PRIME) } else { m };
    m.to_u64().unwrap()
}

fn reduce_rat(q: &Rational) -> Option<u64> {
    let d = reduce_int(q.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer()), inv(d)))
}

fn from_i64(x: i64) -> u64 {
    if x >= 0 {
        x as u64 % PRIME
    } else {
        PRIME - ((-x) as u64 % PRIME)
    }
}

/// Truncated power series product.
fn series_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = add(out[i + j], mul(x, y));
        }
    }
    out
}

fn determinant(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            det = sub(0, det);
        }
        det = mul(det, m[c][c]);
        let iv = inv(m[c][c]);
        for i in c + 1..n {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul(m[i][c], iv);
            for j in c..n {
                let t = mul(f, m[c][j]);
                m[i][j] = sub(m[i][j], t);
            }
        }
    }
    det
}

/// Evaluates the Wronskian of the differential parts at one random point.
///
/// Each output or input `w` is given random Taylor data `w^(j)(0)` drawn
/// from the integers in [-999, 999]; row `d` of the matrix holds the
/// `t^d` Taylor coefficients of the differential parts, which is the
/// Wronskian evaluated at that data up to nonzero row factors `d!`.
fn wronskian_at(monomials: &[&Poly], rng: &mut ChaCha8Rng) -> Option<u64> {
    let n = monomials.len();
    let vars: BTreeSet<Var> = monomials.iter().flat_map(|m| m.vars()).collect();
    let mut bases: Vec<(Var, u32)> = Vec::new();
    for &v in &vars {
        let (b, k) = split_derivative(v);
        match bases.iter_mut().find(|(x, _)| *x == b) {
            Some(e) => e.1 = e.1.max(k),
            None => bases.push((b, k)),
        }
    }
    bases.sort_by_key(|(b, _)| b.name());
    let mut fact_inv = vec![1u64; n + 1];
    for i in 1..=n {
        fact_inv[i] = mul(fact_inv[i - 1], inv(i as u64));
    }
    let mut series: HashMap<Var, Vec<u64>> = HashMap::new();
    for (b, kmax) in bases {
        let data: Vec<u64> = (0..kmax as usize + n).map(|_| from_i64(rng.gen_range(-999..=999))).collect();
        for &v in &vars {
            let (vb, k) = split_derivative(v);
            if vb != b {
                continue;
            }
            let s = (0..n).map(|l| mul(data[k as usize + l], fact_inv[l])).collect();
            series.insert(v, s);
        }
    }
    let mut cols = Vec::with_capacity(n);
    for m in monomials {
        let mut total = vec![0u64; n];
        for (mono, c) in m.terms() {
            let mut s = vec![0u64; n];
            s[0] = reduce_rat(c)?;
            for &(v, e) in mono.pairs() {
                for _ in 0..e {
                    s = series_mul(&s, &series[&v]);
                }
            }
            for i in 0..n {
                total[i] = add(total[i], s[i]);
            }
        }
        cols.push(total);
    }
    let matrix: Vec<Vec<u64>> = (0..n).map(|d| cols.iter().map(|c| c[d]).collect()).collect();
    Some(determinant(matrix))
}

/// Checks that the differential parts `m_k` of `p` have a Wronskian that is
/// not identically zero.
pub fn wronskian_check(p: &IOPolynomial, trials: usize, seed: u64) -> WronskianVerdict {
    let monomials = p.monomials();
    if monomials.is_empty() {
        return WronskianVerdict::Pass;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        if wronskian_at(&monomials, &mut rng).is_some_and(|d| d != 0) {
            return WronskianVerdict::Pass;
        }
    }
    WronskianVerdict::Fail
}
