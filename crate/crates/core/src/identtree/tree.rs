use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Var;

use super::context::{relative_identifiability, IdentContext, RelIdent, TestRecord};

/// A parameter in a list of the tree, marked when it is not identifiable
/// relative to the parameters before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedParam {
    pub name: Var,
    pub identifiable: bool,
}

impl MarkedParam {
    pub fn new(name: Var, identifiable: bool) -> MarkedParam {
        MarkedParam { name, identifiable }
    }
}

impl fmt::Display for MarkedParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.identifiable {
            write!(f, "{}", self.name)
        } else {
            write!(f, "/{}", self.name)
        }
    }
}

/// A test the oracle could not decide, with the prefix it was asked for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndeterminedTest {
    pub prefix: Vec<MarkedParam>,
    pub parameter: Var,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub emptiness_tests: usize,
    pub cache_hits: usize,
    /// Prefixes completed from an earlier expansion of the same set.
    pub reused_prefixes: usize,
    /// `(2m − ν + 2)·2^(ν−1)`.
    pub bound: u128,
}

/// The identifiability tree: every list of all parameters in which each
/// prefix is followed by an identifiable parameter whenever one exists.
#[derive(Clone, Debug, Serialize)]
pub struct IdentTree {
    pub parameters: Vec<Var>,
    pub lists: Vec<Vec<MarkedParam>>,
    pub undetermined: Vec<UndeterminedTest>,
    pub stats: TreeStats,
    #[serde(skip)]
    pub tests: Vec<TestRecord>,
}

type Suffixes = (Vec<Vec<MarkedParam>>, Vec<(Vec<MarkedParam>, Var)>);

struct Builder<'c> {
    ctx: &'c IdentContext,
    expanded: HashMap<BTreeSet<Var>, Suffixes>,
    reused: usize,
}

impl Builder<'_> {
    /// All completions of a prefix with parameter set `known`, and the
    /// undecided tests met on the way (relative to the prefix).
    fn complete(&mut self, known: &BTreeSet<Var>) -> Suffixes {
        if self.ctx.use_cache {
            if let Some(s) = self.expanded.get(known) {
                self.reused += 1;
                return s.clone();
            }
        }
        let out = self.expand(known);
        if self.ctx.use_cache {
            self.expanded.insert(known.clone(), out.clone());
        }
        out
    }

    fn expand(&mut self, known: &BTreeSet<Var>) -> Suffixes {
        let remaining: Vec<Var> = self.ctx.parameters.iter().copied().filter(|p| !known.contains(p)).collect();
        if remaining.is_empty() {
            return (vec![Vec::new()], Vec::new());
        }
        let known_list: Vec<Var> = self.ctx.parameters.iter().copied().filter(|p| known.contains(p)).collect();
        let mut run = Vec::new();
        let mut rest = Vec::new();
        let mut undecided = Vec::new();
        for &p in &remaining {
            match relative_identifiability(self.ctx, &known_list, p) {
                RelIdent::Identifiable => run.push(p),
                RelIdent::NotIdentifiable => rest.push(p),
                RelIdent::Undetermined => undecided.push((Vec::new(), p)),
            }
        }
        if !undecided.is_empty() {
            return (Vec::new(), undecided);
        }
        // Identifiable parameters are appended as one run. What was not
        // identifiable relative to the prefix stays so after the run, since
        // the run is determined by the prefix.
        let head: Vec<MarkedParam> = run.iter().map(|&p| MarkedParam::new(p, true)).collect();
        let mut known = known.clone();
        known.extend(run.iter().copied());
        if rest.is_empty() {
            return (vec![head], Vec::new());
        }
        let mut lists = Vec::new();
        for &p in &rest {
            let mut next = known.clone();
            next.insert(p);
            let mut prefix = head.clone();
            prefix.push(MarkedParam::new(p, false));
            let (tails, und) = self.complete(&next);
            for t in tails {
                let mut l = prefix.clone();
                l.extend(t);
                lists.push(l);
            }
            for (pre, q) in und {
                let mut l = prefix.clone();
                l.extend(pre);
                undecided.push((l, q));
            }
        }
        (lists, undecided)
    }
}

/// Computes the identifiability tree of the context's parameters.
///
/// Lists are canonical: identifiable runs follow declaration order and the
/// set of lists is sorted by (name, mark). Undecided tests abort their
/// branch and are listed in `undetermined`.
pub fn identifiability_tree(ctx: &IdentContext) -> IdentTree {
    let tests_before = ctx.emptiness_tests();
    let hits_before = ctx.cache_hits();
    let mut b = Builder {
        ctx,
        expanded: HashMap::new(),
        reused: 0,
    };
    let (lists, und) = b.complete(&BTreeSet::new());
    let lists = canonicalize(lists, &ctx.parameters);
    let mut undetermined: Vec<UndeterminedTest> = und
        .into_iter()
        .map(|(prefix, parameter)| UndeterminedTest { prefix, parameter })
        .collect();
    undetermined.sort_by_key(|u| (marks_key(&u.prefix), u.parameter.name()));
    undetermined.dedup();
    let nu = slashed(&lists).len();
    IdentTree {
        parameters: ctx.parameters.clone(),
        stats: TreeStats {
            emptiness_tests: ctx.emptiness_tests() - tests_before,
            cache_hits: ctx.cache_hits() - hits_before,
            reused_prefixes: b.reused,
            bound: complexity_bound(ctx.parameters.len(), nu),
        },
        lists,
        undetermined,
        tests: ctx.cache().records(),
    }
}

fn marks_key(l: &[MarkedParam]) -> Vec<(&'static str, bool)> {
    l.iter().map(|m| (m.name.name(), m.identifiable)).collect()
}

/// Sorts each maximal identifiable run by declaration order, then the set
/// of lists by (name, mark), removing duplicates.
pub fn canonicalize(lists: Vec<Vec<MarkedParam>>, declared: &[Var]) -> Vec<Vec<MarkedParam>> {
    let pos = |v: Var| declared.iter().position(|&d| d == v).unwrap_or(usize::MAX);
    let mut out: Vec<Vec<MarkedParam>> = lists
        .into_iter()
        .map(|mut l| {
            let mut i = 0;
            while i < l.len() {
                let mut j = i;
                while j < l.len() && l[j].identifiable {
                    j += 1;
                }
                l[i..j].sort_by_key(|m| pos(m.name));
                i = j + 1;
            }
            l
        })
        .collect();
    out.sort_by(|a, b| marks_key(a).cmp(&marks_key(b)));
    out.dedup();
    out
}

fn slashed(lists: &[Vec<MarkedParam>]) -> BTreeSet<Var> {
    lists.iter().flatten().filter(|m| !m.identifiable).map(|m| m.name).collect()
}

/// `(2m − ν + 2)·2^(ν−1)`, exact for every `ν ≤ m`.
pub fn complexity_bound(m: usize, nu: usize) -> u128 {
    (((2 * m - nu + 2) as u128) << nu) >> 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub nu: usize,
    pub emptiness_tests: usize,
    pub bound: u128,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m = {}, nu = {}: {} emptiness tests <= {}",
            self.m, self.nu, self.emptiness_tests, self.bound
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound violated: {0}")]
    BoundViolated(BoundReport),
    #[error("tree is partial")]
    PartialTree,
}

/// Checks the number of emptiness tests against `(2m − ν + 2)·2^(ν−1)`,
/// where `ν` counts the parameters slashed somewhere in the tree.
pub fn verify_complexity_bound(tree: &IdentTree, m: usize) -> Result<BoundReport, BoundError> {
    if tree.is_partial() {
        return Err(BoundError::PartialTree);
    }
    let nu = slashed(&tree.lists).len();
    let report = BoundReport {
        m,
        nu,
        emptiness_tests: tree.stats.emptiness_tests,
        bound: complexity_bound(m, nu),
    };
    if report.emptiness_tests as u128 <= report.bound {
        Ok(report)
    } else {
        Err(BoundError::BoundViolated(report))
    }
}

impl IdentTree {
    pub fn is_partial(&self) -> bool {
        !self.undetermined.is_empty()
    }

    /// Parameters slashed in at least one list.
    pub fn non_identifiable(&self) -> BTreeSet<Var> {
        slashed(&self.lists)
    }

    pub fn to_json(&self, with_tests: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("tree serializes");
        v["partial"] = serde_json::Value::Bool(self.is_partial());
        if with_tests {
            v["stats"]["tests"] = serde_json::to_value(&self.tests).expect("tests serialize");
        }
        v
    }

    /// One shared-prefix tree; non-identifiable nodes are dashed and
    /// labelled with a leading `/`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph identifiability_tree {\n  node [shape=box];\n  root [label=\"\", shape=point];\n");
        let mut ids: HashMap<Vec<(MarkedParam, bool)>, usize> = HashMap::new();
        let mut paths: Vec<Vec<(MarkedParam, bool)>> = self.lists.iter().map(|l| l.iter().map(|&m| (m, true)).collect()).collect();
        for u in &self.undetermined {
            let mut p: Vec<(MarkedParam, bool)> = u.prefix.iter().map(|&m| (m, true)).collect();
            p.push((MarkedParam::new(u.parameter, false), false));
            paths.push(p);
        }
        for l in &paths {
            for k in 1..=l.len() {
                if ids.contains_key(&l[..k]) {
                    continue;
                }
                let id = ids.len();
                ids.insert(l[..k].to_vec(), id);
                let (m, decided) = l[k - 1];
                let (label, style) = match (decided, m.identifiable) {
                    (false, _) => (format!("?{}", m.name), "dotted"),
                    (true, true) => (m.to_string(), "solid"),
                    (true, false) => (m.to_string(), "dashed"),
                };
                out.push_str(&format!("  n{id} [label=\"{label}\", style={style}];\n"));
                let parent = if k == 1 {
                    "root".to_string()
                } else {
                    format!("n{}", ids[&l[..k - 1]])
                };
                out.push_str(&format!("  {parent} -> n{id};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for IdentTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lists {
            let items: Vec<String> = l.iter().map(|m| m.to_string()).collect();
            writeln!(f, "[{}]", items.join(", "))?;
        }
        for u in &self.undetermined {
            let items: Vec<String> = u.prefix.iter().map(|m| m.to_string()).collect();
            writeln!(f, "undetermined: [{}] then {}", items.join(", "), u.parameter)?;
        }
        Ok(())
    }
}
