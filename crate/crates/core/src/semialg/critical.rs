use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::Rng;

use crate::algebra::{GbLimits, GroebnerBasis, MonomialOrder, Poly, Rational, Var};

use super::realcount::{real_count_zero_dim, RealCountError};
use super::verdict::{is_empty_at_depth, rat_map, Certificate, EmptinessStatus, SolveConfig, Stage};
use super::{EncodedSystem, Relation, SemiAlgebraicSystem};

/// Outcome of the critical-point method on an encoded system.
pub(crate) struct CriticalOutcome {
    pub status: EmptinessStatus,
    pub certificate: Certificate,
}

fn unknown(reason: impl Into<String>) -> CriticalOutcome {
    CriticalOutcome {
        status: EmptinessStatus::Unknown,
        certificate: Certificate::Unknown {
            stage: Stage::CriticalPoints,
            reason: reason.into(),
        },
    }
}

/// Decides whether the real variety of `enc` is empty.
///
/// The squared distance to a random point `p` attains its minimum on each
/// nonempty closed real variety. At a minimizer either the gradients of the
/// equations are linearly dependent, or `x − p` is a combination of them.
/// The second set is the Lagrange system, solved exactly when it is
/// zero-dimensional. The first is the system `f = 0, Jᵀμ = 0, |μ|² = 1`,
/// decided recursively. The variety is empty iff both have no real point.
pub(crate) fn critical_point_emptiness(
    enc: &EncodedSystem,
    cfg: &SolveConfig,
    rng: &mut impl Rng,
    deadline: Instant,
    depth: usize,
) -> CriticalOutcome {
    let f: Vec<Poly> = enc.equations.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut vars = enc.variables.clone();
    for p in &f {
        for v in p.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    let (n, s) = (vars.len(), f.len());
    if s == 0 {
        return CriticalOutcome {
            status: EmptinessStatus::NonEmpty,
            certificate: Certificate::Witness {
                point: vars
                    .iter()
                    .map(|v| (v.name().to_string(), Rational::from_integer(0.into())))
                    .collect(),
            },
        };
    }
    if s > n {
        return unknown(format!("{s} equations in {n} variables: gradients always dependent"));
    }
    let limits = GbLimits {
        deadline: Some(deadline),
        ..cfg.limits.clone()
    };
    let mults: Vec<Var> = (1..=s).map(|i| Var::new(&format!("$l{i}"))).collect();
    let grads: Vec<Vec<Poly>> = f.iter().map(|p| vars.iter().map(|&x| p.derivative(x)).collect()).collect();
    let mut lag_real = None;
    let mut base = BTreeMap::new();
    for attempt in 0..cfg.retries.max(1) {
        let p: Vec<Rational> = vars
            .iter()
            .map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into()))
            .collect();
        let mut system = f.clone();
        for (j, &x) in vars.iter().enumerate() {
            let mut e = &Poly::var(x) - &Poly::constant(p[j].clone());
            for (i, &l) in mults.iter().enumerate() {
                e = &e - &(&Poly::var(l) * &grads[i][j]);
            }
            system.push(e);
        }
        let order = MonomialOrder::GrevLex(vars.iter().chain(&mults).copied().collect());
        let gb = match GroebnerBasis::compute(&system, &order, &limits) {
            Ok(gb) => gb,
            Err(e) => return unknown(format!("Lagrange system: {e}")),
        };
        match real_count_zero_dim(&gb, rng, cfg.retries, cfg.max_points, Some(deadline)) {
            Ok(c) => {
                base = vars.iter().zip(&p).map(|(v, c)| (v.name().to_string(), c.clone())).collect();
                if c.real_points > 0 {
                    return CriticalOutcome {
                        status: EmptinessStatus::NonEmpty,
                        certificate: Certificate::CriticalPoints {
                            base_point: base,
                            complex_points: c.complex_points,
                            real_points: c.real_points,
                            singular: None,
                        },
                    };
                }
                lag_real = Some(c.complex_points);
                break;
            }
            Err(RealCountError::NotZeroDimensional) if attempt + 1 < cfg.retries => continue,
            Err(e) => return unknown(format!("Lagrange system: {e}")),
        }
    }
    let Some(complex_points) = lag_real else {
        return unknown("Lagrange system not zero-dimensional for any base point");
    };
    if depth >= 2 {
        return unknown("singular locus nesting too deep");
    }
    let kernel: Vec<Var> = (1..=s).map(|i| Var::new(&format!("$k{}_{i}", depth + 1))).collect();
    let mut sing = SemiAlgebraicSystem::new(vars.iter().chain(&kernel).copied().collect());
    for p in &f {
        sing.add(p.clone(), Relation::Eq);
    }
    for j in 0..n {
        let mut e = Poly::zero();
        for (i, &k) in kernel.iter().enumerate() {
            e = &e + &(&Poly::var(k) * &grads[i][j]);
        }
        sing.add(e, Relation::Eq);
    }
    let mut norm = Poly::int(-1);
    for &k in &kernel {
        norm = &norm + &Poly::var(k).pow(2);
    }
    sing.add(norm, Relation::Eq);
    let sub = is_empty_at_depth(&sing, cfg, Some(deadline), depth + 1);
    match sub.status {
        EmptinessStatus::Empty => CriticalOutcome {
            status: EmptinessStatus::Empty,
            certificate: Certificate::CriticalPoints {
                base_point: base,
                complex_points,
                real_points: 0,
                singular: Some(Box::new(sub)),
            },
        },
        EmptinessStatus::NonEmpty => {
            let point = sub.witness().map(|w| {
                let keep: HashMap<Var, Rational> = w.into_iter().filter(|(v, _)| vars.contains(v)).collect();
                rat_map(&keep)
            });
            CriticalOutcome {
                status: EmptinessStatus::NonEmpty,
                certificate: match point {
                    Some(point) => Certificate::Witness { point },
                    None => Certificate::CriticalPoints {
                        base_point: base,
                        complex_points,
                        real_points: 0,
                        singular: Some(Box::new(sub)),
                    },
                },
            }
        }
        EmptinessStatus::Unknown => unknown("singular locus undecided"),
    }
}
