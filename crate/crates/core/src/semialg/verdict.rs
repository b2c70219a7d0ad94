use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algebra::{GbLimits, GroebnerBasis, MonomialOrder, Poly, Rational, RootInterval, Var};

use super::critical::critical_point_emptiness;
use super::encode::{encode, relaxed_equations};
use super::presolve::{presolve, Presolved};
use super::realcount::{real_count_zero_dim, CountMethod, RealCountError};
use super::signs::sign_contradiction;
use super::witness::rational_witness_search;
use super::SemiAlgebraicSystem;

/// Resource configuration for [`is_empty`].
#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub seed: u64,
    /// Total wall-clock budget for one call.
    pub budget: Duration,
    /// Shares of the budget for the unit-ideal, witness, zero-dimensional
    /// and critical-point stages. Unused time rolls over to later stages.
    pub stage_fractions: [f64; 4],
    pub witness_height: u32,
    /// Fresh random choices tried before a stage gives up.
    pub retries: usize,
    /// Largest quotient-ring dimension handled by exact real counting.
    pub max_points: usize,
    pub limits: GbLimits,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            seed: 0,
            budget: Duration::from_secs(60),
            stage_fractions: [0.1, 0.2, 0.3, 0.4],
            witness_height: 8,
            retries: 3,
            max_points: 400,
            limits: GbLimits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptinessStatus {
    Empty,
    NonEmpty,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Presolve,
    UnitIdeal,
    Witness,
    ZeroDimensional,
    CriticalPoints,
}

fn ser_rat_map<S: Serializer>(m: &BTreeMap<String, Rational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k, v.to_string())))
}

/// The decisive data behind a verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "proof", rename_all = "snake_case")]
pub enum Certificate {
    /// A relation reduced to a false statement between constants.
    ConstantRelation {
        relation: String,
    },
    /// A relation whose sign is forced by the signs of its terms, after
    /// adding the equations listed.
    SignContradiction {
        relation: String,
        implied_equations: Vec<String>,
    },
    /// The equations, with each disequation and strict inequality `p` turned
    /// into `p·r − 1`, generate the unit ideal.
    UnitIdeal {
        equations: Vec<String>,
    },
    /// The encoded system has finitely many complex solutions, none real.
    ZeroRealCount {
        complex_points: usize,
        method: CountMethod,
        eliminant: Option<String>,
    },
    /// Critical points of the distance to `base_point`, and if none is real,
    /// the verdict on points where the gradients are dependent.
    CriticalPoints {
        #[serde(serialize_with = "ser_rat_map")]
        base_point: BTreeMap<String, Rational>,
        complex_points: usize,
        real_points: usize,
        singular: Option<Box<EmptinessVerdict>>,
    },
    /// An exact rational point satisfying every relation.
    Witness {
        #[serde(serialize_with = "ser_rat_map")]
        point: BTreeMap<String, Rational>,
    },
    /// A real solution of a zero-dimensional encoding: the linear form `t`
    /// takes the value of the eliminant's root isolated in `interval`.
    RealPoint {
        #[serde(serialize_with = "ser_rat_map")]
        linear_form: BTreeMap<String, Rational>,
        eliminant: String,
        interval: RootInterval,
        real_points: usize,
    },
    Unknown {
        stage: Stage,
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct EmptinessVerdict {
    pub status: EmptinessStatus,
    pub certificate: Certificate,
    pub seed: u64,
}

impl EmptinessVerdict {
    /// The witness point, if the certificate carries one.
    pub fn witness(&self) -> Option<HashMap<Var, Rational>> {
        match &self.certificate {
            Certificate::Witness { point } => Some(point.iter().map(|(k, v)| (Var::new(k), v.clone())).collect()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.status == EmptinessStatus::Empty
    }
}

pub(crate) fn rat_map(m: &HashMap<Var, Rational>) -> BTreeMap<String, Rational> {
    m.iter().map(|(k, v)| (k.name().to_string(), v.clone())).collect()
}

fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Decides whether a semialgebraic system has a real solution.
///
/// Stages, in order:
/// 1. linear definitions are substituted away, constant relations checked;
/// 2. the equations with disequations and strict inequalities relaxed to
///    `p·r − 1 = 0` are tested for the unit ideal, and the implied
///    equations in the original variables are added; term signs are
///    checked against the sign constraints;
/// 3. an exact rational witness is searched for;
/// 4. a zero-dimensional encoding has its real solutions counted exactly;
/// 5. otherwise the critical-point method is applied.
///
/// `Empty` and `NonEmpty` are always sound; when a stage runs out of budget
/// or meets a degenerate case the answer is `Unknown`.
pub fn is_empty(sys: &SemiAlgebraicSystem, cfg: &SolveConfig) -> EmptinessVerdict {
    is_empty_at_depth(sys, cfg, None, 0)
}

pub(crate) fn is_empty_at_depth(sys: &SemiAlgebraicSystem, cfg: &SolveConfig, outer: Option<Instant>, depth: usize) -> EmptinessVerdict {
    let start = Instant::now();
    let total = match outer {
        Some(d) => d.saturating_duration_since(start).min(cfg.budget),
        None => cfg.budget,
    };
    let mut acc = 0.0;
    let deadlines: Vec<Instant> = cfg
        .stage_fractions
        .iter()
        .map(|f| {
            acc += f;
            start + total.mul_f64(acc.min(1.0))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv1a(&format!("{:?}\n{sys}", sys.variables)));
    let verdict = |status, certificate| EmptinessVerdict {
        status,
        certificate,
        seed: cfg.seed,
    };
    let unknown = |stage, reason: String| verdict(EmptinessStatus::Unknown, Certificate::Unknown { stage, reason });

    let mut chain: Vec<Presolved> = Vec::new();
    let first = presolve(sys);
    if let Some(c) = &first.contradiction {
        return verdict(EmptinessStatus::Empty, Certificate::ConstantRelation { relation: c.to_string() });
    }
    let mut current = first.system.clone();
    chain.push(first);
    if let Some(c) = sign_contradiction(&current) {
        return verdict(
            EmptinessStatus::Empty,
            Certificate::SignContradiction {
                relation: c.to_string(),
                implied_equations: Vec::new(),
            },
        );
    }

    // Stage 2: unit ideal of the relaxation, and implied equations.
    let relaxed = relaxed_equations(&current);
    let aux: Vec<Var> = relaxed
        .iter()
        .flat_map(|p| p.vars())
        .filter(|v| !current.variables.contains(v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let order = MonomialOrder::Block(vec![aux.clone(), current.all_vars()]);
    let limits = cfg.limits.clone().with_deadline(deadlines[0]);
    if !relaxed.is_empty() {
        match GroebnerBasis::compute(&relaxed, &order, &limits) {
            Ok(gb) if gb.is_unit() => {
                return verdict(
                    EmptinessStatus::Empty,
                    Certificate::UnitIdeal {
                        equations: relaxed.iter().map(|p| p.to_string()).collect(),
                    },
                );
            }
            Ok(gb) => {
                let implied: Vec<Poly> = gb
                    .polys()
                    .iter()
                    .filter(|p| aux.iter().all(|a| !p.contains_var(*a)))
                    .cloned()
                    .collect();
                if implied.len() != current.equations.len() || implied.iter().any(|p| !current.equations.contains(p)) {
                    let mut strengthened = SemiAlgebraicSystem::new(current.variables.clone());
                    strengthened.equations = implied.clone();
                    strengthened.disequations = current.disequations.clone();
                    strengthened.strict = current.strict.clone();
                    strengthened.nonstrict = current.nonstrict.clone();
                    let next = presolve(&strengthened);
                    let implied_text = || implied.iter().map(|p| p.to_string()).collect::<Vec<_>>();
                    if let Some(c) = &next.contradiction {
                        return verdict(
                            EmptinessStatus::Empty,
                            Certificate::SignContradiction {
                                relation: c.to_string(),
                                implied_equations: implied_text(),
                            },
                        );
                    }
                    if let Some(c) = sign_contradiction(&next.system) {
                        return verdict(
                            EmptinessStatus::Empty,
                            Certificate::SignContradiction {
                                relation: c.to_string(),
                                implied_equations: implied_text(),
                            },
                        );
                    }
                    current = next.system.clone();
                    chain.push(next);
                }
            }
            Err(_) => {}
        }
    }

    let lift = |pt: &HashMap<Var, Rational>| -> Option<HashMap<Var, Rational>> {
        let mut p = pt.clone();
        for pre in chain.iter().rev() {
            for v in pre.system.all_vars() {
                p.entry(v).or_insert_with(|| Rational::from_integer(0.into()));
            }
            p = pre.lift(&p)?;
        }
        for v in sys.all_vars() {
            p.entry(v).or_insert_with(|| Rational::from_integer(0.into()));
        }
        let p: HashMap<Var, Rational> = p.into_iter().filter(|(v, _)| sys.all_vars().contains(v)).collect();
        (sys.satisfied_by(&p) == Some(true)).then_some(p)
    };

    // Stage 3: rational witness.
    if let Some(w) = rational_witness_search(&current, cfg.witness_height, Some(deadlines[1]), &mut rng) {
        if let Some(p) = lift(&w) {
            return verdict(EmptinessStatus::NonEmpty, Certificate::Witness { point: rat_map(&p) });
        }
    }

    // Stage 4: exact count on a zero-dimensional encoding.
    let enc = encode(&current);
    let limits = cfg.limits.clone().with_deadline(deadlines[2]);
    let order = MonomialOrder::GrevLex(enc.variables.clone());
    let gb = match GroebnerBasis::compute(&enc.equations, &order, &limits) {
        Ok(gb) => gb,
        Err(e) => return unknown(Stage::ZeroDimensional, e.to_string()),
    };
    if gb.is_unit() {
        return verdict(
            EmptinessStatus::Empty,
            Certificate::UnitIdeal {
                equations: enc.equations.iter().map(|p| p.to_string()).collect(),
            },
        );
    }
    if gb.is_zero_dimensional() {
        return match real_count_zero_dim(&gb, &mut rng, cfg.retries, cfg.max_points, Some(deadlines[2])) {
            Ok(c) if c.real_points == 0 => verdict(
                EmptinessStatus::Empty,
                Certificate::ZeroRealCount {
                    complex_points: c.complex_points,
                    method: c.method,
                    eliminant: c.eliminant.map(|e| e.to_string()),
                },
            ),
            Ok(c) => match (c.eliminant, c.intervals.first()) {
                (Some(e), Some(iv)) => verdict(
                    EmptinessStatus::NonEmpty,
                    Certificate::RealPoint {
                        linear_form: c.linear_form.iter().map(|(v, k)| (v.name().to_string(), k.clone())).collect(),
                        eliminant: e.to_string(),
                        interval: iv.clone(),
                        real_points: c.real_points,
                    },
                ),
                _ => verdict(
                    EmptinessStatus::NonEmpty,
                    Certificate::ZeroRealCount {
                        complex_points: c.complex_points,
                        method: c.method,
                        eliminant: None,
                    },
                ),
            },
            Err(RealCountError::Timeout) => unknown(Stage::ZeroDimensional, "deadline reached".into()),
            Err(e) => unknown(Stage::ZeroDimensional, e.to_string()),
        };
    }

    // Stage 5: critical points.
    let out = critical_point_emptiness(&enc, cfg, &mut rng, deadlines[3], depth);
    if let Certificate::Witness { point } = &out.certificate {
        let pt: HashMap<Var, Rational> = point.iter().map(|(k, v)| (Var::new(k), v.clone())).collect();
        return match lift(&pt) {
            Some(p) => verdict(EmptinessStatus::NonEmpty, Certificate::Witness { point: rat_map(&p) }),
            None => verdict(out.status, out.certificate),
        };
    }
    verdict(out.status, out.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;
    use crate::semialg::Relation;

    fn system(rels: &[(&str, Relation)]) -> SemiAlgebraicSystem {
        let mut s = SemiAlgebraicSystem::default();
        for (p, r) in rels {
            s.add(parse_poly(p).unwrap(), *r);
        }
        s
    }

    fn status(rels: &[(&str, Relation)]) -> EmptinessStatus {
        is_empty(&system(rels), &SolveConfig::default()).status
    }

    #[test]
    fn spec_examples() {
        use EmptinessStatus::*;
        use Relation::*;
        assert_eq!(status(&[("x^2 + 1", Eq)]), Empty);
        assert_eq!(status(&[("x", Eq), ("x - 1", Eq)]), Empty);
        assert_eq!(status(&[]), NonEmpty);
        assert_eq!(status(&[("x^2 - 2", Eq)]), NonEmpty);
        assert_eq!(status(&[("x^2 + y^2 - 1", Eq)]), NonEmpty);
        assert_eq!(status(&[("x^2 + y^2 + 1", Eq)]), Empty);
        assert_eq!(status(&[("x*y - 1", Eq), ("x + y", Eq)]), Empty);
        assert_eq!(status(&[("mu", Gt), ("mu + 1", Lt)]), Empty);
    }

    #[test]
    fn positive_dimensional_without_rational_points() {
        use Relation::*;
        let v = is_empty(&system(&[("x^2 + y^2 - 3", Eq)]), &SolveConfig::default());
        assert_eq!(v.status, EmptinessStatus::NonEmpty);
        let v = is_empty(&system(&[("x^2 + y^2 - 3", Eq), ("x^2 - 2*y^2 - 1", Gt)]), &SolveConfig::default());
        assert_eq!(v.status, EmptinessStatus::NonEmpty);
    }
}
