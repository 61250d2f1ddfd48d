use std::collections::BTreeMap;

use super::{enumerate_exchange_graph, generate_root_system, AnalysisError, EnumerateOptions};
use crate::cluster::{DynkinSpec, DynkinType, Family};
use crate::symbolic::RationalFunction;

/// Largest rank for which symbolic enumeration is run.
pub const MAX_BIJECTION_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub dynkin: DynkinType,
    /// Almost-positive root with its cluster variable, ordered as the roots are.
    pub pairs: Vec<(Vec<i64>, RationalFunction)>,
}

impl BijectionReport {
    pub fn variable_count(&self) -> usize {
        self.pairs.len()
    }
}

/// Denominator vectors of the cluster variables against `R⁺ ∪ (−Δ)` of the
/// Cartan counterpart, plus nonzero constant terms of the numerators.
pub fn check_denominator_bijection(family: Family, rank: usize) -> Result<BijectionReport, AnalysisError> {
    let spec = DynkinSpec::new(family, rank)?;
    if rank > MAX_BIJECTION_RANK {
        return Err(AnalysisError::InvalidInput(format!(
            "symbolic check limited to rank <= {MAX_BIJECTION_RANK}, got {rank}"
        )));
    }
    let b = spec.exchange_matrix()?;
    let roots = generate_root_system(&b.cartan_counterpart())?;
    let graph = enumerate_exchange_graph(&b, &EnumerateOptions { symbolic: true, ..EnumerateOptions::default() })?;
    graph.certify_fingerprints()?;

    let mut by_root: BTreeMap<Vec<i64>, RationalFunction> = BTreeMap::new();
    let mut problems = Vec::new();
    for (_, f) in graph.cluster_variables() {
        let f = f.ok_or(AnalysisError::SymbolicRequired)?;
        let d = f.denominator_vector()?;
        let initial = d.iter().all(|&c| c <= 0);
        if !initial && f.num().constant_term() == 0 {
            problems.push(format!("{f}: numerator has zero constant term"));
        }
        if initial {
            let i = d.iter().position(|&c| c == -1);
            let is_xi = i.is_some_and(|i| f == RationalFunction::var(rank, f.modulus(), i));
            if !is_xi {
                problems.push(format!("{f}: nonpositive denominator vector {d:?} on a non-initial variable"));
            }
        }
        if let Some(prev) = by_root.insert(d.clone(), f.clone()) {
            problems.push(format!("{prev} and {f} share denominator vector {d:?}"));
        }
    }
    let expected = roots.almost_positive();
    for root in &expected {
        if !by_root.contains_key(root) {
            problems.push(format!("root {root:?} has no cluster variable"));
        }
    }
    for d in by_root.keys() {
        if !expected.contains(d) {
            problems.push(format!("denominator vector {d:?} is not an almost-positive root"));
        }
    }
    if !problems.is_empty() {
        return Err(AnalysisError::Counterexample(format!("{}{}: {}", family, rank, problems.join("; "))));
    }
    let pairs = expected
        .into_iter()
        .map(|r| {
            let f = by_root.remove(&r).expect("checked");
            (r, f)
        })
        .collect();
    Ok(BijectionReport { dynkin: spec.dynkin_type(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types() {
        for (f, r, n) in [(Family::A, 1, 2), (Family::A, 2, 5), (Family::A, 3, 9), (Family::B, 2, 6), (Family::G, 2, 8)] {
            let report = check_denominator_bijection(f, r).unwrap();
            assert_eq!(report.variable_count(), n, "{f}{r}");
        }
    }

    #[test]
    fn initial_variables_are_negative_simples() {
        let report = check_denominator_bijection(Family::A, 2).unwrap();
        let (root, f) = report.pairs.iter().find(|(r, _)| r == &vec![-1, 0]).unwrap();
        assert_eq!(root, &vec![-1, 0]);
        assert_eq!(f.to_string(), "x0");
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(check_denominator_bijection(Family::A, 5), Err(AnalysisError::InvalidInput(_))));
    }
}
