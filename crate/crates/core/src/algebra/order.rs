use std::collections::BTreeSet;

use super::{Poly, Var};

/// A term order on an explicitly listed variable sequence.
///
/// The first variable listed is the largest. Variables that occur in a
/// computation but are not named by the order are appended as one trailing
/// graded-reverse-lexicographic block, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex(Vec<Var>),
    GrevLex(Vec<Var>),
    /// Lexicographic between blocks, grevlex inside each block; the first
    /// block is eliminated first.
    Block(Vec<Vec<Var>>),
}

impl MonomialOrder {
    pub fn lex(vars: &[&str]) -> MonomialOrder {
        MonomialOrder::Lex(vars.iter().map(|n| Var::new(n)).collect())
    }

    pub fn grevlex(vars: &[&str]) -> MonomialOrder {
        MonomialOrder::GrevLex(vars.iter().map(|n| Var::new(n)).collect())
    }

    pub fn block(blocks: &[&[&str]]) -> MonomialOrder {
        MonomialOrder::Block(blocks.iter().map(|b| b.iter().map(|n| Var::new(n)).collect()).collect())
    }

    /// Dense layout: the full variable sequence and the block boundaries
    /// (as `(start, end)` ranges) once extra variables are appended.
    pub(crate) fn layout(&self, polys: &[&Poly]) -> Layout {
        let mut seen: BTreeSet<Var> = BTreeSet::new();
        let mut vars = Vec::new();
        let mut blocks = Vec::new();
        let listed: Vec<Vec<Var>> = match self {
            MonomialOrder::Lex(v) | MonomialOrder::GrevLex(v) => vec![v.clone()],
            MonomialOrder::Block(b) => b.clone(),
        };
        for block in &listed {
            let start = vars.len();
            for &v in block {
                if seen.insert(v) {
                    vars.push(v);
                }
            }
            if vars.len() > start {
                blocks.push((start, vars.len()));
            }
        }
        let mut extra: Vec<Var> = polys
            .iter()
            .flat_map(|p| p.vars())
            .filter(|v| !seen.contains(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        extra.sort_by_key(|v| v.name());
        let kind = match self {
            MonomialOrder::Lex(_) => LayoutKind::Lex,
            _ => LayoutKind::Blocks,
        };
        if !extra.is_empty() {
            let start = vars.len();
            vars.extend(extra);
            match kind {
                LayoutKind::Lex => {}
                LayoutKind::Blocks => {
                    if matches!(self, MonomialOrder::GrevLex(_)) && !blocks.is_empty() {
                        // Plain grevlex: extra variables join the single block.
                        blocks[0].1 = vars.len();
                    } else {
                        blocks.push((start, vars.len()));
                    }
                }
            }
        }
        if blocks.is_empty() && !vars.is_empty() {
            blocks.push((0, vars.len()));
        }
        Layout { vars, blocks, kind }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LayoutKind {
    Lex,
    Blocks,
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub vars: Vec<Var>,
    pub blocks: Vec<(usize, usize)>,
    pub kind: LayoutKind,
}
