use std::collections::HashMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::linalg::{charpoly, rank, Matrix};
use crate::algebra::{GroebnerBasis, Monomial, Poly, Rational, RootInterval, UPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealCountError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("more than {0} standard monomials")]
    TooLarge(usize),
    #[error("deadline reached")]
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// Sturm count on the characteristic polynomial of a separating linear
    /// form.
    LinearForm,
    /// Signature of the Hermite trace form.
    HermiteSignature,
}

/// Real and complex solution counts of a zero-dimensional ideal.
#[derive(Clone, Debug)]
pub struct RealCount {
    /// Distinct complex solutions (rank of the trace form).
    pub complex_points: usize,
    pub real_points: usize,
    pub method: CountMethod,
    /// The separating form `t` and the squarefree eliminant of its values,
    /// with isolating intervals of its real roots.
    pub linear_form: Vec<(Var, Rational)>,
    pub eliminant: Option<UPoly>,
    pub intervals: Vec<RootInterval>,
}

struct Quotient<'a> {
    gb: &'a GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    deadline: Option<Instant>,
}

impl Quotient<'_> {
    fn coords(&self, p: &Poly) -> Result<Vec<Rational>, RealCountError> {
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(RealCountError::Timeout);
        }
        let nf = self.gb.normal_form(p);
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            out[self.index[m]] = c.clone();
        }
        Ok(out)
    }

    /// Matrix of multiplication by `x`; column `j` holds the coordinates of
    /// `x·b_j`.
    fn mult_matrix(&self, x: Var) -> Result<Matrix, RealCountError> {
        let d = self.basis.len();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coords(&Poly::term(Rational::from_integer(1.into()), b.mul(&Monomial::var(x))))?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Hermite quadratic form `H[i][j] = Tr(M_{b_i b_j})`.
    fn hermite(&self) -> Result<Matrix, RealCountError> {
        let d = self.basis.len();
        let one = Rational::from_integer(1.into());
        let mut prod: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                if j < i {
                    let c = prod[j][i].clone();
                    prod[i].push(c);
                } else {
                    let c = self.coords(&Poly::term(one.clone(), self.basis[i].mul(&self.basis[j])))?;
                    prod[i].push(c);
                }
            }
        }
        let trace: Vec<Rational> = (0..d).map(|m| (0..d).map(|k| prod[m][k][k].clone()).sum()).collect();
        let mut h = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                h[i][j] = prod[i][j].iter().zip(&trace).map(|(a, t)| a * t).sum();
            }
        }
        Ok(h)
    }
}

/// Number of sign changes in a coefficient sequence, zeros skipped.
fn sign_changes(c: &[Rational]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Signature of a real symmetric matrix from its characteristic
/// polynomial, whose roots are all real, by Descartes' rule.
fn signature(h: &Matrix) -> i64 {
    let chi = charpoly(h);
    let pos = sign_changes(chi.coeffs());
    let flipped: Vec<Rational> = chi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect();
    let neg = sign_changes(&flipped);
    pos as i64 - neg as i64
}

/// Counts the distinct real solutions of a zero-dimensional ideal.
///
/// The trace form's rank gives the number of distinct complex solutions.
/// A random integer linear form `t` separates them when the squarefree part
/// of the characteristic polynomial of multiplication by `t` has that
/// degree; its real roots then correspond one-to-one with the real
/// solutions. After `retries` non-separating forms the signature of the
/// trace form is used instead.
pub fn real_count_zero_dim(
    gb: &GroebnerBasis,
    rng: &mut impl Rng,
    retries: usize,
    max_points: usize,
    deadline: Option<Instant>,
) -> Result<RealCount, RealCountError> {
    if gb.is_unit() {
        return Ok(RealCount {
            complex_points: 0,
            real_points: 0,
            method: CountMethod::HermiteSignature,
            linear_form: Vec::new(),
            eliminant: None,
            intervals: Vec::new(),
        });
    }
    if !gb.is_zero_dimensional() {
        return Err(RealCountError::NotZeroDimensional);
    }
    let basis = gb.standard_monomials(max_points).ok_or(RealCountError::TooLarge(max_points))?;
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let q = Quotient {
        gb,
        basis,
        index,
        deadline,
    };
    let h = q.hermite()?;
    let r = rank(&h);
    let vars: Vec<Var> = gb.ring_vars().to_vec();
    let mut mats = Vec::new();
    for &x in &vars {
        mats.push(q.mult_matrix(x)?);
    }
    let d = q.basis.len();
    for _ in 0..retries {
        let form: Vec<(Var, Rational)> = vars
            .iter()
            .map(|&x| {
                let k: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (x, Rational::from_integer(k.into()))
            })
            .collect();
        let mut mt = vec![vec![Rational::zero(); d]; d];
        for ((_, c), m) in form.iter().zip(&mats) {
            for i in 0..d {
                for j in 0..d {
                    if !m[i][j].is_zero() {
                        mt[i][j] += c * &m[i][j];
                    }
                }
            }
        }
        if deadline.is_some_and(|dl| Instant::now() > dl) {
            return Err(RealCountError::Timeout);
        }
        let sf = charpoly(&mt).squarefree();
        if sf.degree() == Some(r) {
            let intervals = sf.isolate_real_roots();
            return Ok(RealCount {
                complex_points: r,
                real_points: intervals.len(),
                method: CountMethod::LinearForm,
                linear_form: form,
                eliminant: Some(sf.monic()),
                intervals,
            });
        }
    }
    let s = signature(&h);
    Ok(RealCount {
        complex_points: r,
        real_points: s.max(0) as usize,
        method: CountMethod::HermiteSignature,
        linear_form: Vec::new(),
        eliminant: None,
        intervals: Vec::new(),
    })
}
