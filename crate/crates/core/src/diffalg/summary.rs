use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IOPolynomial, RationalExpr};
use crate::algebra::{Poly, Rational, Var};

/// Coefficients of the input-output polynomials, grouped into classes that
/// agree up to a nonzero rational factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveSummary {
    /// Every coefficient in order of appearance.
    pub entries: Vec<RationalExpr>,
    /// Indices into `entries`, one class per representative.
    pub classes: Vec<Vec<usize>>,
    /// One scaled representative per class.
    pub representatives: Vec<RationalExpr>,
    /// Denominators that must not vanish.
    pub side_conditions: Vec<Poly>,
}

impl ExhaustiveSummary {
    pub fn raw_count(&self) -> usize {
        self.entries.len()
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Collects all coefficients `c_{i,k}` and deduplicates them up to nonzero
/// rational multiples.
pub fn exhaustive_summary(polys: &[IOPolynomial]) -> ExhaustiveSummary {
    let entries: Vec<RationalExpr> = polys.iter().flat_map(|p| p.coefficients().into_iter().cloned()).collect();
    let vars: Vec<Var> = {
        let mut s = std::collections::BTreeSet::new();
        for e in &entries {
            s.extend(e.vars());
        }
        let mut v: Vec<Var> = s.into_iter().collect();
        v.sort_by_key(|x| x.name());
        v
    };
    let points = sample_points(&vars, &entries);
    // Bucket by the scale-invariant ratios e(p_k)/e(p_0), then confirm
    // exactly by cross-multiplication.
    let mut buckets: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        buckets.entry(signature(e, &points)).or_default().push(i);
    }
    let mut class_of: Vec<Option<usize>> = vec![None; entries.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..entries.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        class_of[i] = Some(id);
        let mut members = vec![i];
        for &j in &buckets[&signature(&entries[i], &points)] {
            if j > i && class_of[j].is_none() && entries[i].proportional_to(&entries[j]) {
                class_of[j] = Some(id);
                members.push(j);
            }
        }
        classes.push(members);
    }
    let representatives = classes.iter().map(|c| entries[c[0]].monic()).collect();
    let mut side_conditions: Vec<Poly> = Vec::new();
    for e in &entries {
        let d = e.den();
        if !d.is_constant() && !side_conditions.contains(d) {
            side_conditions.push(d.clone());
        }
    }
    ExhaustiveSummary {
        entries,
        classes,
        representatives,
        side_conditions,
    }
}

/// Two random integer points at which no entry vanishes or is undefined.
fn sample_points(vars: &[Var], entries: &[RationalExpr]) -> Vec<HashMap<Var, Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_5u64);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < 2 {
        attempts += 1;
        let span = 50 + 10 * attempts;
        let pt: HashMap<Var, Rational> = vars
            .iter()
            .map(|&v| (v, Rational::from_integer(rng.gen_range(-span..=span).into())))
            .collect();
        let ok = entries.iter().all(|e| e.eval(&pt).is_some_and(|x| !x.is_zero()));
        if ok || attempts > 200 {
            out.push(pt);
        }
    }
    out
}

fn signature(e: &RationalExpr, points: &[HashMap<Var, Rational>]) -> Vec<Rational> {
    let vals: Vec<Option<Rational>> = points.iter().map(|p| e.eval(p)).collect();
    match (&vals[0], &vals[1]) {
        (Some(a), Some(b)) if !a.is_zero() => vec![b / a],
        // Degenerate sample: put everything in one bucket and rely on the
        // exact check.
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_expr;

    #[test]
    fn dedup_up_to_scalars() {
        let y = Var::new("y");
        let mk = |cs: &[&str]| IOPolynomial {
            output: y,
            m0: Poly::zero(),
            terms: cs
                .iter()
                .enumerate()
                .map(|(i, c)| super::super::IoTerm {
                    monomial: Poly::var(Var::new(&format!("w{i}"))),
                    coeff: parse_expr(c).unwrap(),
                })
                .collect(),
            pivot: None,
            normalized: true,
        };
        let s = exhaustive_summary(&[mk(&["2*a*b", "a + b", "a/(b+1)"]), mk(&["-a*b", "3*a/(b+1)"])]);
        assert_eq!(s.raw_count(), 5);
        assert_eq!(s.len(), 3);
        assert_eq!(s.classes, vec![vec![0, 3], vec![1], vec![2, 4]]);
        assert_eq!(s.representatives[0].to_string(), "a*b");
        assert_eq!(s.side_conditions.len(), 1);
    }
}
