use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Poly, Rational, Var};
use crate::diffalg::{ExhaustiveSummary, Model, RationalExpr};
use crate::semialg::{is_empty, ConstraintSet, EmptinessStatus, EmptinessVerdict, Relation, SemiAlgebraicSystem, SolveConfig};

/// Outcome of one relative identifiability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelIdent {
    Identifiable,
    NotIdentifiable,
    Undetermined,
}

impl From<EmptinessStatus> for RelIdent {
    fn from(s: EmptinessStatus) -> RelIdent {
        match s {
            EmptinessStatus::Empty => RelIdent::Identifiable,
            EmptinessStatus::NonEmpty => RelIdent::NotIdentifiable,
            EmptinessStatus::Unknown => RelIdent::Undetermined,
        }
    }
}

/// One oracle call: the known set, the candidate and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct TestRecord {
    pub known: Vec<Var>,
    pub candidate: Var,
    pub result: RelIdent,
    pub verdict: EmptinessVerdict,
}

/// Oracle results keyed by (set of known parameters, candidate).
#[derive(Debug, Default)]
pub struct TestCache {
    map: RwLock<HashMap<(BTreeSet<Var>, Var), EmptinessVerdict>>,
}

impl TestCache {
    pub fn get(&self, known: &BTreeSet<Var>, candidate: Var) -> Option<EmptinessVerdict> {
        self.map.read().unwrap().get(&(known.clone(), candidate)).cloned()
    }

    /// Inserts unless present and returns the stored verdict.
    pub fn insert(&self, known: BTreeSet<Var>, candidate: Var, verdict: EmptinessVerdict) -> EmptinessVerdict {
        self.map.write().unwrap().entry((known, candidate)).or_insert(verdict).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All cached tests, sorted by known-set names then candidate name.
    pub fn records(&self) -> Vec<TestRecord> {
        let mut out: Vec<TestRecord> = self
            .map
            .read()
            .unwrap()
            .iter()
            .map(|((k, c), v)| TestRecord {
                known: sorted_by_name(k.iter().copied()),
                candidate: *c,
                result: v.status.into(),
                verdict: v.clone(),
            })
            .collect();
        out.sort_by(|a, b| {
            let key = |r: &TestRecord| (r.known.iter().map(|v| v.name()).collect::<Vec<_>>(), r.candidate.name());
            key(a).cmp(&key(b))
        });
        out
    }
}

fn sorted_by_name(vs: impl Iterator<Item = Var>) -> Vec<Var> {
    let mut v: Vec<Var> = vs.collect();
    v.sort_by_key(|x| x.name());
    v
}

/// Name of the copy of a parameter in the second parameter vector.
pub fn tilde(v: Var) -> Var {
    Var::new(&format!("{}~", v.name()))
}

/// Everything a relative identifiability test needs: the exhaustive
/// summary, the constraints on the parameters and a copy of both over a
/// second parameter vector.
#[derive(Debug)]
pub struct IdentContext {
    pub summary: ExhaustiveSummary,
    pub constraints: ConstraintSet,
    pub parameters: Vec<Var>,
    pub tilde_parameters: Vec<Var>,
    pub tilde_constraints: ConstraintSet,
    /// Denominators of summary entries, required nonzero in both copies.
    pub side_conditions: Vec<Poly>,
    pub solve: SolveConfig,
    /// When false every test is recomputed.
    pub use_cache: bool,
    cache: TestCache,
    tests: AtomicUsize,
    hits: AtomicUsize,
}

impl IdentContext {
    pub fn new(summary: ExhaustiveSummary, constraints: ConstraintSet, parameters: Vec<Var>, solve: SolveConfig) -> IdentContext {
        let tilde_parameters: Vec<Var> = parameters.iter().map(|&p| tilde(p)).collect();
        let map = rename_map(&parameters, &tilde_parameters);
        let tilde_constraints = constraints.rename(&map);
        let mut side_conditions = summary.side_conditions.clone();
        for r in &summary.representatives {
            let d = r.den();
            if !d.is_constant() && !side_conditions.iter().any(|s| s == d) {
                side_conditions.push(d.clone());
            }
        }
        IdentContext {
            summary,
            constraints,
            parameters,
            tilde_parameters,
            tilde_constraints,
            side_conditions,
            solve,
            use_cache: true,
            cache: TestCache::default(),
            tests: AtomicUsize::new(0),
            hits: AtomicUsize::new(0),
        }
    }

    pub fn from_model(model: &Model, summary: ExhaustiveSummary, solve: SolveConfig) -> IdentContext {
        IdentContext::new(summary, model.constraints.clone(), model.params.clone(), solve)
    }

    pub fn without_cache(mut self) -> IdentContext {
        self.use_cache = false;
        self
    }

    fn tilde_map(&self) -> HashMap<Var, Var> {
        rename_map(&self.parameters, &self.tilde_parameters)
    }

    /// Number of emptiness tests actually run.
    pub fn emptiness_tests(&self) -> usize {
        self.tests.load(Ordering::Relaxed)
    }

    pub fn cache_hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn cache(&self) -> &TestCache {
        &self.cache
    }
}

fn rename_map(from: &[Var], to: &[Var]) -> HashMap<Var, Var> {
    from.iter().copied().zip(to.iter().copied()).collect()
}

/// The auxiliary variable of the equation `v·(θ − θ̃) − 1 = 0`.
pub fn separation_var() -> Var {
    Var::new("$v")
}

/// Builds the system whose real emptiness is equivalent to `candidate`
/// being identifiable once the parameters in `known` are known.
///
/// Variables are `Θ`, then `Θ̃`, then `v`. Relations: `C(Θ)`, `C(Θ̃)`, the
/// nonvanishing of every summary denominator in both copies, `θ = θ̃` for
/// `θ ∈ known`, `c(Θ) = c(Θ̃)` cleared of denominators for each summary
/// representative `c`, and `v·(θ_c − θ̃_c) − 1 = 0`.
pub fn build_relident_system(ctx: &IdentContext, known: &[Var], candidate: Var) -> SemiAlgebraicSystem {
    debug_assert!(!known.contains(&candidate));
    let map = ctx.tilde_map();
    let v = separation_var();
    let mut vars = ctx.parameters.clone();
    vars.extend(&ctx.tilde_parameters);
    vars.push(v);
    let mut sys = SemiAlgebraicSystem::new(vars);
    for c in ctx.constraints.relations.iter().chain(&ctx.tilde_constraints.relations) {
        sys.add_constraint(c);
    }
    for d in &ctx.side_conditions {
        sys.add(d.clone(), Relation::Ne);
        sys.add(d.rename(&map), Relation::Ne);
    }
    for &k in &ctx.parameters {
        if known.contains(&k) {
            sys.add(&Poly::var(k) - &Poly::var(map[&k]), Relation::Eq);
        }
    }
    for r in &ctx.summary.representatives {
        if r.constant_value().is_some() {
            continue;
        }
        let t = r.rename(&map);
        let eq = &(r.num() * t.den()) - &(t.num() * r.den());
        if !eq.is_zero() {
            sys.add(eq, Relation::Eq);
        }
    }
    let diff = &Poly::var(candidate) - &Poly::var(map[&candidate]);
    sys.add(&(&Poly::var(v) * &diff) - &Poly::int(1), Relation::Eq);
    sys
}

/// Runs (or recalls) the oracle for `candidate` given `known`.
pub fn relative_identifiability_verdict(ctx: &IdentContext, known: &[Var], candidate: Var) -> EmptinessVerdict {
    let key: BTreeSet<Var> = known.iter().copied().collect();
    if ctx.use_cache {
        if let Some(v) = ctx.cache.get(&key, candidate) {
            ctx.hits.fetch_add(1, Ordering::Relaxed);
            return v;
        }
    }
    let ordered: Vec<Var> = ctx.parameters.iter().copied().filter(|p| key.contains(p)).collect();
    let sys = build_relident_system(ctx, &ordered, candidate);
    let verdict = is_empty(&sys, &ctx.solve);
    ctx.tests.fetch_add(1, Ordering::Relaxed);
    ctx.cache.insert(key, candidate, verdict)
}

/// Whether `candidate` is identifiable relative to the parameters `known`.
pub fn relative_identifiability(ctx: &IdentContext, known: &[Var], candidate: Var) -> RelIdent {
    relative_identifiability_verdict(ctx, known, candidate).status.into()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness stored for '{candidate}': the test answered {result:?}")]
    NoWitnessStored { candidate: String, result: RelIdent },
}

/// Two parameter vectors that satisfy the constraints, agree on the known
/// parameters and on every summary entry, and differ on the candidate.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub known: Vec<Var>,
    pub candidate: Var,
    #[serde(serialize_with = "ser_assignment")]
    pub theta: Vec<(Var, Rational)>,
    #[serde(serialize_with = "ser_assignment")]
    pub theta_tilde: Vec<(Var, Rational)>,
    /// Each summary representative with its common value.
    pub summary_values: Vec<(String, String)>,
}

fn ser_assignment<S: serde::Serializer>(a: &[(Var, Rational)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(a.iter().map(|(k, v)| (k.name(), v.to_string())))
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.theta.iter().map(|(v, _)| v.name()).collect();
        let tuple = |a: &[(Var, Rational)]| a.iter().map(|(_, x)| x.to_string()).collect::<Vec<_>>().join(", ");
        writeln!(
            f,
            "({}) = ({}) vs ({})",
            names.join(", "),
            tuple(&self.theta),
            tuple(&self.theta_tilde)
        )?;
        for (e, val) in &self.summary_values {
            writeln!(f, "  {e} = {val}")?;
        }
        Ok(())
    }
}

/// Renders the witness of a `NotIdentifiable` answer as the pair `(Θ, Θ̃)`.
pub fn explain_witness(ctx: &IdentContext, known: &[Var], candidate: Var) -> Result<WitnessReport, WitnessError> {
    let verdict = relative_identifiability_verdict(ctx, known, candidate);
    let point = match verdict.witness() {
        Some(p) if verdict.status == EmptinessStatus::NonEmpty => p,
        _ => {
            return Err(WitnessError::NoWitnessStored {
                candidate: candidate.name().to_string(),
                result: verdict.status.into(),
            })
        }
    };
    let value = |v: &Var| point.get(v).cloned().unwrap_or_default();
    let theta: Vec<(Var, Rational)> = ctx.parameters.iter().map(|p| (*p, value(p))).collect();
    let theta_tilde: Vec<(Var, Rational)> = ctx
        .parameters
        .iter()
        .zip(&ctx.tilde_parameters)
        .map(|(p, t)| (*p, value(t)))
        .collect();
    let at: HashMap<Var, Rational> = theta.iter().cloned().collect();
    let summary_values = ctx
        .summary
        .representatives
        .iter()
        .map(|r: &RationalExpr| {
            (
                r.to_string(),
                r.eval(&at).map(|x| x.to_string()).unwrap_or_else(|| "undefined".into()),
            )
        })
        .collect();
    Ok(WitnessReport {
        known: known.to_vec(),
        candidate,
        theta,
        theta_tilde,
        summary_values,
    })
}
