use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};
use thiserror::Error;

use super::document::{load_model, DocumentError};
use crate::algebra::{GbLimits, Var};
use crate::diffalg::{
    augment_initial_conditions, exhaustive_summary, io_polynomials, wronskian_check, DiffAlgError, ExhaustiveSummary, IOPolynomial, Model,
    WronskianVerdict,
};
use crate::identtree::{explain_witness, identifiability_tree, IdentContext, IdentTree, WitnessError};
use crate::semialg::SolveConfig;

/// Text marking outputs computed without the Wronskian check.
pub const WATERMARK: &str = "hypothesis unverified";

/// How the selected input-output polynomial is chosen among the
/// elimination ideal's generators.
pub const SELECTION_RULE: &str = "lowest order in the output, then lowest differential order, then fewest terms, then canonical text";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    /// Budget of each emptiness test.
    pub budget: Duration,
    pub max_prolong: Option<usize>,
    pub witness_height: u32,
    pub wronskian_trials: usize,
    pub format: OutputFormat,
    pub no_constraints: bool,
    pub with_initial_conditions: bool,
    /// Skip the Wronskian check and watermark every output.
    pub skip_wronskian_check: bool,
    pub stats: bool,
    /// Keep only these outputs.
    pub outputs: Option<Vec<String>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            budget: Duration::from_secs(60),
            max_prolong: None,
            witness_height: 8,
            wronskian_trials: 5,
            format: OutputFormat::Text,
            no_constraints: false,
            with_initial_conditions: false,
            skip_wronskian_check: false,
            stats: false,
            outputs: None,
        }
    }
}

impl RunConfig {
    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            seed: self.seed,
            budget: self.budget,
            witness_height: self.witness_height,
            ..SolveConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    IoPolys,
    Summary,
    CheckWronskian,
    Tree,
    Witness { known: Vec<String>, target: String },
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("{0} output is not available for this command")]
    Format(&'static str),
    #[error("elimination failed: {0}")]
    Elimination(#[from] DiffAlgError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Document(_) | PipelineError::Unknown { .. } | PipelineError::Format(_) => 2,
            PipelineError::Elimination(_) => 3,
            PipelineError::Witness(_) => 1,
        }
    }
}

/// Rendered result of a command and the process exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutput {
    pub text: String,
    pub exit_code: i32,
}

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const ELIMINATION: i32 = 3;
    pub const PARTIAL_TREE: i32 = 4;
    pub const WRONSKIAN: i32 = 5;
}

/// The model after applying the configuration's output selection,
/// constraint removal and initial-condition augmentation.
pub fn prepare_model(model: &Model, cfg: &RunConfig) -> Result<Model, PipelineError> {
    let mut m = model.clone();
    if let Some(keep) = &cfg.outputs {
        let mut vars = Vec::new();
        for name in keep {
            let v = Var::new(name);
            if !m.outputs.iter().any(|(y, _)| *y == v) {
                return Err(PipelineError::Unknown {
                    kind: "output",
                    name: name.clone(),
                });
            }
            vars.push(v);
        }
        m = m.with_outputs(&vars);
    }
    if cfg.no_constraints {
        m = m.without_constraints();
    }
    if cfg.with_initial_conditions {
        m = augment_initial_conditions(&m);
    }
    Ok(m)
}

/// Loads a model file and runs a command on it. The document's
/// `initial_conditions` flag has the same effect as the configuration's.
pub fn run_file(path: impl AsRef<Path>, cfg: &RunConfig, cmd: &Command) -> Result<PipelineOutput, PipelineError> {
    let (model, doc) = load_model(path)?;
    let mut cfg = cfg.clone();
    cfg.with_initial_conditions |= doc.initial_conditions;
    run_pipeline(&model, &cfg, cmd)
}

struct Steps {
    model: Model,
    io: Vec<IOPolynomial>,
    summary: ExhaustiveSummary,
}

fn eliminate(model: &Model, cfg: &RunConfig) -> Result<Steps, PipelineError> {
    let model = prepare_model(model, cfg)?;
    let io = io_polynomials(&model, cfg.max_prolong, &GbLimits::default())?;
    let summary = exhaustive_summary(&io);
    Ok(Steps { model, io, summary })
}

fn wronskian_report(io: &[IOPolynomial], cfg: &RunConfig) -> Vec<(Var, WronskianVerdict)> {
    io.iter()
        .map(|p| (p.output, wronskian_check(p, cfg.wronskian_trials, cfg.seed)))
        .collect()
}

fn watermark(cfg: &RunConfig, mut text: String) -> String {
    if !cfg.skip_wronskian_check {
        return text;
    }
    let line = match cfg.format {
        OutputFormat::Text => format!("# {WATERMARK}\n"),
        OutputFormat::Dot => format!("// {WATERMARK}\n"),
        OutputFormat::Json => return text,
    };
    text.insert_str(0, &line);
    text
}

fn to_json(cfg: &RunConfig, mut v: Value) -> String {
    if cfg.skip_wronskian_check {
        v["watermark"] = Value::String(WATERMARK.into());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}

fn io_json(io: &[IOPolynomial]) -> Value {
    let polys: Vec<Value> = io
        .iter()
        .map(|p| {
            json!({
                "output": p.output.name(),
                "polynomial": p.to_string(),
                "order": p.order(),
                "m0": p.m0.to_string(),
                "pivot": p.pivot.as_ref().map(|q| q.to_string()),
                "terms": p.terms.iter().map(|t| json!({"monomial": t.monomial.to_string(), "coefficient": t.coeff.to_string()})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "io_polynomials": polys, "selection_rule": SELECTION_RULE })
}

fn summary_json(s: &ExhaustiveSummary) -> Value {
    json!({
        "raw_count": s.raw_count(),
        "representatives": s.representatives.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "classes": s.classes,
        "entries": s.entries.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "side_conditions": s.side_conditions.iter().map(|d| format!("{d} != 0")).collect::<Vec<_>>(),
    })
}

fn summary_text(s: &ExhaustiveSummary) -> String {
    let mut out = format!("raw coefficients: {}\nrepresentatives: {}\n", s.raw_count(), s.len());
    for (i, r) in s.representatives.iter().enumerate() {
        out.push_str(&format!("  c{}: {}\n", i + 1, r));
    }
    for d in &s.side_conditions {
        out.push_str(&format!("  side condition: {d} != 0\n"));
    }
    out
}

fn tree_text(tree: &IdentTree, stats: bool) -> String {
    let mut out = tree.to_string();
    if tree.is_partial() {
        out.push_str("tree is partial\n");
    }
    if stats {
        let s = &tree.stats;
        out.push_str(&format!(
            "emptiness tests: {}\ncache hits: {}\nreused prefixes: {}\nbound: {}\n",
            s.emptiness_tests, s.cache_hits, s.reused_prefixes, s.bound
        ));
        for t in &tree.tests {
            let known: Vec<&str> = t.known.iter().map(|v| v.name()).collect();
            out.push_str(&format!("  {{{}}} {}: {:?}\n", known.join(", "), t.candidate, t.result));
        }
    }
    out
}

/// Runs one step of the analysis on a model.
///
/// `io-polys` stops after elimination, `summary` after the exhaustive
/// summary, `check-wronskian` after the Wronskian check; `tree` runs all
/// steps and fails with exit code 5 when the check fails (unless skipped);
/// `witness` explains a non-identifiable answer.
pub fn run_pipeline(model: &Model, cfg: &RunConfig, cmd: &Command) -> Result<PipelineOutput, PipelineError> {
    let steps = eliminate(model, cfg)?;
    let ok = |text: String| PipelineOutput {
        text: watermark(cfg, text),
        exit_code: exit::SUCCESS,
    };
    match cmd {
        Command::IoPolys => match cfg.format {
            OutputFormat::Json => Ok(ok(to_json(cfg, io_json(&steps.io)))),
            OutputFormat::Text => Ok(ok(steps.io.iter().map(|p| format!("{}: {p}\n", p.output)).collect())),
            OutputFormat::Dot => Err(PipelineError::Format("dot")),
        },
        Command::Summary => match cfg.format {
            OutputFormat::Json => Ok(ok(to_json(cfg, summary_json(&steps.summary)))),
            OutputFormat::Text => Ok(ok(summary_text(&steps.summary))),
            OutputFormat::Dot => Err(PipelineError::Format("dot")),
        },
        Command::CheckWronskian => {
            let report = wronskian_report(&steps.io, cfg);
            let failed = report.iter().any(|(_, v)| *v == WronskianVerdict::Fail);
            let text = match cfg.format {
                OutputFormat::Json => to_json(
                    cfg,
                    json!({ "wronskian": report.iter().map(|(y, v)| json!({"output": y.name(), "verdict": v})).collect::<Vec<_>>() }),
                ),
                OutputFormat::Text => report
                    .iter()
                    .map(|(y, v)| format!("{y}: {}\n", if *v == WronskianVerdict::Pass { "pass" } else { "fail" }))
                    .collect(),
                OutputFormat::Dot => return Err(PipelineError::Format("dot")),
            };
            Ok(PipelineOutput {
                text,
                exit_code: if failed { exit::WRONSKIAN } else { exit::SUCCESS },
            })
        }
        Command::Tree => {
            if !cfg.skip_wronskian_check {
                let failing: Vec<String> = wronskian_report(&steps.io, cfg)
                    .into_iter()
                    .filter(|(_, v)| *v == WronskianVerdict::Fail)
                    .map(|(y, _)| y.name().to_string())
                    .collect();
                if !failing.is_empty() {
                    return Ok(PipelineOutput {
                        text: format!(
                            "Wronskian vanishes for output(s) {}; the tree would be unsound\n",
                            failing.join(", ")
                        ),
                        exit_code: exit::WRONSKIAN,
                    });
                }
            }
            let ctx = IdentContext::from_model(&steps.model, steps.summary, cfg.solve_config());
            let tree = identifiability_tree(&ctx);
            let text = match cfg.format {
                OutputFormat::Json => to_json(cfg, tree.to_json(cfg.stats)),
                OutputFormat::Dot => tree.to_dot(),
                OutputFormat::Text => tree_text(&tree, cfg.stats),
            };
            Ok(PipelineOutput {
                text: watermark(cfg, text),
                exit_code: if tree.is_partial() { exit::PARTIAL_TREE } else { exit::SUCCESS },
            })
        }
        Command::Witness { known, target } => {
            let param = |name: &String| {
                let v = Var::new(name);
                if steps.model.params.contains(&v) {
                    Ok(v)
                } else {
                    Err(PipelineError::Unknown {
                        kind: "parameter",
                        name: name.clone(),
                    })
                }
            };
            let known: Vec<Var> = known.iter().map(param).collect::<Result<_, _>>()?;
            let target = param(target)?;
            let ctx = IdentContext::from_model(&steps.model, steps.summary, cfg.solve_config());
            let report = explain_witness(&ctx, &known, target)?;
            match cfg.format {
                OutputFormat::Json => Ok(ok(to_json(cfg, serde_json::to_value(&report).expect("report serializes")))),
                OutputFormat::Text => Ok(ok(report.to_string())),
                OutputFormat::Dot => Err(PipelineError::Format("dot")),
            }
        }
    }
}
