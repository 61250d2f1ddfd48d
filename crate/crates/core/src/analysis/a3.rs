use std::collections::HashMap;

use super::graph::{fingerprint_field, fingerprint_value};
use super::{AnalysisError, ExchangeGraph, FINGERPRINT_PRIME};
use crate::cluster::ExchangeMatrix;
use crate::symbolic::RationalFunction;

type Listed = (&'static str, [&'static str; 3], [[i64; 3]; 3]);

/// The published A_3 mutation classes, as printed (juxtaposition multiplies).
pub const A3_SEED_LIST: [Listed; 14] = [
    ("C1", ["x0", "x1", "x2"], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]),
    ("C2", ["x0", "x1", "(x1+1)/x2"], [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]),
    ("C3", ["x0", "(x0x2+1)/x1", "x2"], [[0, -1, 0], [1, 0, -1], [0, 1, 0]]),
    ("C4", ["(x1+1)/x0", "x1", "x2"], [[0, -1, 0], [1, 0, 1], [0, -1, 0]]),
    ("C5", ["x0", "(x0x2+x1+1)/(x1x2)", "(x1+1)/x2"], [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]),
    ("C6", ["(x1+1)/x0", "x1", "(x1+1)/x2"], [[0, -1, 0], [1, 0, 1], [0, -1, 0]]),
    ("C7", ["(x1+1)/x0", "(x0x2+x1+1)/(x0x1)", "x2"], [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]),
    ("C8", ["x0", "(x0x2+1)/x1", "(x0x2+x1+1)/(x1x2)"], [[0, -1, 0], [1, 0, 1], [0, -1, 0]]),
    ("C9", ["(x0x2+x1+1)/(x0x1)", "(x0x2+1)/x1", "x2"], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]),
    (
        "C10",
        ["(x1+1)/x0", "(x1^2+x0x2+2x1+1)/(x0x1x2)", "(x1+1)/x2"],
        [[0, 1, 0], [-1, 0, -1], [0, 1, 0]],
    ),
    (
        "C11",
        ["(x1+1)/x0", "(x0x2+x1+1)/(x0x1)", "(x1^2+x0x2+2x1+1)/(x0x1x2)"],
        [[0, 0, 1], [0, 0, -1], [-1, 1, 0]],
    ),
    (
        "C12",
        ["(x1^2+x0x2+2x1+1)/(x0x1x2)", "(x0x2+x1+1)/(x1x2)", "(x1+1)/x2"],
        [[0, 1, -1], [-1, 0, 0], [1, 0, 0]],
    ),
    (
        "C13",
        ["(x0x2+x1+1)/(x0x1)", "(x0x2+1)/x1", "(x0x2+x1+1)/(x1x2)"],
        [[0, 1, 0], [-1, 0, -1], [0, 1, 0]],
    ),
    (
        "C14",
        ["(x0x2+x1+1)/(x1x2)", "(x0x2+x1+1)/(x0x1)", "(x1^2+x0x2+2x1+1)/(x0x1x2)"],
        [[0, 0, -1], [0, 0, 1], [1, -1, 0]],
    ),
];

/// A relabelled listing of C2.
pub const A3_C2_PRIME: Listed = ("C2'", ["(x1+1)/x2", "x0", "x1"], [[0, 0, -1], [0, 0, 1], [1, -1, 0]]);

/// The initial matrix the listed clusters are generated from: the bipartite
/// A_3 orientation with vertex 1 a sink. The matrix printed beside C1 is the
/// linear orientation, whose exchange graph does not contain C3.
pub fn a3_list_matrix() -> ExchangeMatrix {
    ExchangeMatrix::from_rows(vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]).expect("skew-symmetric")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedListMatch {
    pub label: &'static str,
    pub vertex: Option<usize>,
    /// Listed variables equal the vertex's symbolic cluster variables;
    /// `None` when the graph has no symbolic data.
    pub symbolic: Option<bool>,
    /// Listed matrix equals the vertex matrix under the matching relabelling.
    /// Informational: the printed list contains matrix typos.
    pub matrix_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedListReport {
    pub matches: Vec<SeedListMatch>,
    pub c2_prime: SeedListMatch,
    /// Enumerated vertices no listed class landed on.
    pub unmatched_vertices: Vec<usize>,
    pub notes: Vec<String>,
}

impl SeedListReport {
    pub fn is_bijection(&self) -> bool {
        let mut hit: Vec<usize> = self.matches.iter().filter_map(|m| m.vertex).collect();
        let all_matched = hit.len() == self.matches.len();
        hit.sort_unstable();
        hit.dedup();
        all_matched
            && hit.len() == self.matches.len()
            && self.unmatched_vertices.is_empty()
            && self.matches.iter().all(|m| m.symbolic != Some(false))
    }

    pub fn matrix_disagreements(&self) -> Vec<&'static str> {
        self.matches
            .iter()
            .chain(std::iter::once(&self.c2_prime))
            .filter(|m| m.matrix_agrees == Some(false))
            .map(|m| m.label)
            .collect()
    }
}

/// Matches every enumerated A_3 cluster to exactly one listed class, as sets of
/// rational functions: by fingerprint over Z_P, then symbolically when the
/// graph carries symbolic seeds.
pub fn verify_seed_list_a3(graph: &ExchangeGraph) -> Result<SeedListReport, AnalysisError> {
    let mut notes = Vec::new();
    if graph.rank() != 3 {
        notes.push(format!("graph has rank {}, the list is rank 3", graph.rank()));
        let unmatched = (0..graph.vertex_count()).collect();
        let none = |label| SeedListMatch { label, vertex: None, symbolic: None, matrix_agrees: None };
        return Err(AnalysisError::Mismatch(Box::new(SeedListReport {
            matches: A3_SEED_LIST.iter().map(|l| none(l.0)).collect(),
            c2_prime: none(A3_C2_PRIME.0),
            unmatched_vertices: unmatched,
            notes,
        })));
    }
    if graph.initial_matrix() != &a3_list_matrix() {
        notes.push("graph was not enumerated from the list's initial matrix".into());
    }
    let field = fingerprint_field();
    let point: Vec<_> = graph.fingerprint_point().iter().map(|&v| field.constant(v)).collect();
    let mut by_key: HashMap<Vec<u64>, usize> = HashMap::new();
    for (id, vx) in graph.vertices().iter().enumerate() {
        by_key.insert(vx.sorted_fingerprints.clone(), id);
    }

    let match_one = |listed: &Listed| -> Result<SeedListMatch, AnalysisError> {
        let (label, vars, matrix) = listed;
        let funcs = vars
            .iter()
            .map(|s| RationalFunction::parse(s, 3, FINGERPRINT_PRIME))
            .collect::<Result<Vec<_>, _>>()?;
        let fps = funcs
            .iter()
            .map(|f| f.evaluate(&field, &point).map(|e| fingerprint_value(&e)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut sorted = fps.clone();
        sorted.sort_unstable();
        let Some(&id) = by_key.get(&sorted) else {
            return Ok(SeedListMatch { label, vertex: None, symbolic: None, matrix_agrees: None });
        };
        let vx = graph.vertex(id);
        let rep = vx.fingerprints();
        let perm: Vec<usize> = fps.iter().map(|f| rep.iter().position(|g| g == f).expect("same multiset")).collect();
        let m = vx.seed.matrix();
        let matrix_agrees = (0..3).all(|i| (0..3).all(|k| matrix[i][k] == m.get(perm[i], perm[k])));
        let symbolic = vx
            .symbolic
            .as_ref()
            .map(|s| funcs.iter().zip(&perm).all(|(f, &j)| f.same_function(&s.entries()[j])));
        Ok(SeedListMatch { label, vertex: Some(id), symbolic, matrix_agrees: Some(matrix_agrees) })
    };

    let matches = A3_SEED_LIST.iter().map(match_one).collect::<Result<Vec<_>, _>>()?;
    let c2_prime = match_one(&A3_C2_PRIME)?;
    let hit: Vec<usize> = matches.iter().filter_map(|m| m.vertex).collect();
    let unmatched_vertices = (0..graph.vertex_count()).filter(|v| !hit.contains(v)).collect();
    for m in &matches {
        if m.vertex.is_none() {
            notes.push(format!("{} matches no enumerated cluster", m.label));
        }
    }
    if c2_prime.vertex != matches[1].vertex {
        notes.push("C2' is not in the class of C2".into());
    }
    let report = SeedListReport { matches, c2_prime, unmatched_vertices, notes };
    if report.is_bijection() && report.c2_prime.vertex == report.matches[1].vertex {
        Ok(report)
    } else {
        Err(AnalysisError::Mismatch(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{enumerate_exchange_graph, EnumerateOptions};
    use crate::cluster::{DynkinSpec, Family};

    fn list_graph(symbolic: bool) -> ExchangeGraph {
        enumerate_exchange_graph(&a3_list_matrix(), &EnumerateOptions { symbolic, ..Default::default() }).unwrap()
    }

    #[test]
    fn list_is_a_bijection() {
        let report = verify_seed_list_a3(&list_graph(true)).unwrap();
        assert!(report.is_bijection());
        assert!(report.matches.iter().all(|m| m.symbolic == Some(true)));
        assert_eq!(report.c2_prime.vertex, report.matches[1].vertex);
        assert_eq!(report.c2_prime.symbolic, Some(true));
    }

    #[test]
    fn fingerprints_alone_suffice() {
        let report = verify_seed_list_a3(&list_graph(false)).unwrap();
        assert!(report.matches.iter().all(|m| m.symbolic.is_none()));
    }

    #[test]
    fn known_matrix_typos() {
        let report = verify_seed_list_a3(&list_graph(false)).unwrap();
        // printed matrices beside these clusters come from the linear orientation
        assert_eq!(report.matrix_disagreements(), vec!["C1", "C2", "C3", "C4", "C8", "C14"]);
    }

    #[test]
    fn a2_graph_is_a_mismatch() {
        let b = DynkinSpec::new(Family::A, 2).unwrap().exchange_matrix().unwrap();
        let g = enumerate_exchange_graph(&b, &EnumerateOptions::default()).unwrap();
        match verify_seed_list_a3(&g) {
            Err(AnalysisError::Mismatch(r)) => assert_eq!(r.unmatched_vertices.len(), 5),
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn list_orientation_is_the_default() {
        assert_eq!(DynkinSpec::new(Family::A, 3).unwrap().exchange_matrix().unwrap(), a3_list_matrix());
    }

    #[test]
    fn printed_c1_orientation_is_a_mismatch() {
        let linear = ExchangeMatrix::from_rows(A3_SEED_LIST[0].2.iter().map(|r| r.to_vec()).collect()).unwrap();
        let g = enumerate_exchange_graph(&linear, &EnumerateOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 14);
        match verify_seed_list_a3(&g) {
            Err(AnalysisError::Mismatch(r)) => {
                let missing: Vec<_> = r.matches.iter().filter(|m| m.vertex.is_none()).map(|m| m.label).collect();
                assert!(missing.contains(&"C3"));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }
}
