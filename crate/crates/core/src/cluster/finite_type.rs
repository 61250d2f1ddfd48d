//! Finite-type detection: search the mutation class for a matrix whose Cartan
//! counterpart is a finite-type Cartan matrix up to simultaneous permutation.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::{DynkinType, ExchangeMatrix, Family};

/// Largest exchange graph among ranks up to 8 (`E_8`).
pub const LARGEST_EXCHANGE_GRAPH: usize = 25_080;

/// Default number of matrices the search may visit.
pub const DEFAULT_FINITE_TYPE_BUDGET: usize = 10 * LARGEST_EXCHANGE_GRAPH;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteTypeVerdict {
    /// Components of the Dynkin diagram found, sorted.
    Finite(Vec<DynkinType>),
    /// The mutation class holds a pair with `|b_ij b_ji| >= 4`, or was
    /// exhausted without meeting a Dynkin diagram.
    NotFinite,
    /// The search budget ran out first.
    Unknown,
}

impl FiniteTypeVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, FiniteTypeVerdict::Finite(_))
    }

    /// The single connected type, if there is exactly one component.
    pub fn single(&self) -> Option<DynkinType> {
        match self {
            FiniteTypeVerdict::Finite(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

impl fmt::Display for FiniteTypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteTypeVerdict::Finite(types) => {
                let parts: Vec<String> = types.iter().map(ToString::to_string).collect();
                write!(f, "finite type {}", parts.join(" x "))
            }
            FiniteTypeVerdict::NotFinite => write!(f, "not finite type"),
            FiniteTypeVerdict::Unknown => write!(f, "unknown (search budget exhausted)"),
        }
    }
}

pub fn is_finite_type(b: &ExchangeMatrix) -> FiniteTypeVerdict {
    is_finite_type_with_budget(b, DEFAULT_FINITE_TYPE_BUDGET)
}

pub fn is_finite_type_with_budget(b: &ExchangeMatrix, budget: usize) -> FiniteTypeVerdict {
    let mut seen: HashSet<ExchangeMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(b.clone());
    queue.push_back(b.clone());
    while let Some(m) = queue.pop_front() {
        if has_infinite_pair(&m) {
            return FiniteTypeVerdict::NotFinite;
        }
        if let Some(types) = classify_cartan(&m.cartan_counterpart()) {
            return FiniteTypeVerdict::Finite(types);
        }
        for k in 0..m.rank() {
            let next = m.mutate(k).expect("vertex in range");
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return FiniteTypeVerdict::Unknown;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    FiniteTypeVerdict::NotFinite
}

fn has_infinite_pair(m: &ExchangeMatrix) -> bool {
    let n = m.rank();
    (0..n).any(|i| ((i + 1)..n).any(|j| (m.get(i, j) * m.get(j, i)).abs() >= 4))
}

/// Identifies a generalized Cartan matrix (2 on the diagonal, non-positive
/// off the diagonal) as a product of finite-type Cartan matrices, up to
/// simultaneous permutation of rows and columns.
pub fn classify_cartan(a: &[Vec<i64>]) -> Option<Vec<DynkinType>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return None;
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return None;
        }
        for j in 0..n {
            if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                return None;
            }
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut types = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        component[start] = start;
        let mut idx = 0;
        while idx < members.len() {
            let v = members[idx];
            idx += 1;
            for w in 0..n {
                if w != v && a[v][w] != 0 && component[w] == usize::MAX {
                    component[w] = start;
                    members.push(w);
                }
            }
        }
        types.push(classify_component(a, &members)?);
    }
    types.sort();
    Some(types)
}

fn classify_component(a: &[Vec<i64>], members: &[usize]) -> Option<DynkinType> {
    let k = members.len();
    if k == 1 {
        return Some(DynkinType { family: Family::A, rank: 1 });
    }
    let mut edges = Vec::new();
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            if a[i][j] != 0 {
                edges.push((i, j, a[i][j] * a[j][i]));
            }
        }
    }
    // connected with k-1 edges means a tree
    if edges.len() != k - 1 || edges.iter().any(|e| e.2 >= 4) {
        return None;
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let triple: Vec<_> = edges.iter().filter(|e| e.2 == 3).collect();
    let double: Vec<_> = edges.iter().filter(|e| e.2 == 2).collect();
    if !triple.is_empty() {
        return (k == 2).then_some(DynkinType { family: Family::G, rank: 2 });
    }
    let max_degree = members.iter().map(|&v| degree(v)).max().unwrap_or(0);
    match double.len() {
        0 => {}
        1 => {
            if max_degree > 2 {
                return None;
            }
            if k == 2 {
                return Some(DynkinType { family: Family::B, rank: 2 });
            }
            let (i, j, _) = *double[0];
            let (leaf, inner) = match (degree(i), degree(j)) {
                (1, _) => (i, j),
                (_, 1) => (j, i),
                _ => return (k == 4).then_some(DynkinType { family: Family::F, rank: 4 }),
            };
            let family = if a[inner][leaf] == -2 { Family::B } else { Family::C };
            return Some(DynkinType { family, rank: k });
        }
        _ => return None,
    }
    if max_degree <= 2 {
        return Some(DynkinType { family: Family::A, rank: k });
    }
    let branch: Vec<usize> = members.iter().copied().filter(|&v| degree(v) >= 3).collect();
    if branch.len() != 1 || degree(branch[0]) != 3 {
        return None;
    }
    let center = branch[0];
    let mut arms: Vec<usize> = edges
        .iter()
        .filter_map(|&(i, j, _)| {
            if i == center {
                Some(j)
            } else if j == center {
                Some(i)
            } else {
                None
            }
        })
        .map(|first| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            loop {
                let next = edges.iter().find_map(|&(i, j, _)| {
                    if i == cur && j != prev {
                        Some(j)
                    } else if j == cur && i != prev {
                        Some(i)
                    } else {
                        None
                    }
                });
                match next {
                    Some(nx) => {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    None => return len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(DynkinType { family: Family::D, rank: k }),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType { family: Family::E, rank: k }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::DynkinSpec;

    #[test]
    fn dynkin_matrices_classify_as_themselves() {
        for family in Family::ALL {
            for rank in 1..=8 {
                if !family.valid_rank(rank) {
                    continue;
                }
                let b = DynkinSpec::new(family, rank).unwrap().exchange_matrix().unwrap();
                let expected = match (family, rank) {
                    (Family::C, 2) => DynkinType { family: Family::B, rank: 2 },
                    _ => DynkinType { family, rank },
                };
                assert_eq!(is_finite_type(&b), FiniteTypeVerdict::Finite(vec![expected]), "{family}{rank}");
            }
        }
    }

    #[test]
    fn mutated_dynkin_still_found() {
        let b = DynkinSpec::new(Family::D, 6).unwrap().exchange_matrix().unwrap();
        let m = b.mutate(2).unwrap().mutate(3).unwrap().mutate(4).unwrap().mutate(1).unwrap();
        assert_eq!(is_finite_type(&m).single(), Some(DynkinType { family: Family::D, rank: 6 }));
    }

    #[test]
    fn markov_quiver_is_not_finite() {
        let m = ExchangeMatrix::from_rows(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap();
        assert_eq!(is_finite_type(&m), FiniteTypeVerdict::NotFinite);
    }

    #[test]
    fn affine_a_is_not_finite() {
        // oriented 3-cycle with a single arrow reversed: affine A_2 (acyclic)
        let m = ExchangeMatrix::from_rows(vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]).unwrap();
        let v = is_finite_type_with_budget(&m, 10_000);
        assert!(!v.is_finite(), "{v}");
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let b = DynkinSpec::new(Family::A, 4).unwrap().exchange_matrix().unwrap();
        // three-cycles at every step, never a Dynkin tree before the budget runs out
        let start = b.mutate(1).unwrap().mutate(2).unwrap();
        assert!(classify_cartan(&start.cartan_counterpart()).is_none());
        assert_eq!(is_finite_type_with_budget(&start, 1), FiniteTypeVerdict::Unknown);
    }

    #[test]
    fn disconnected_types() {
        let z = ExchangeMatrix::zero(2);
        let a1 = DynkinType { family: Family::A, rank: 1 };
        assert_eq!(is_finite_type(&z), FiniteTypeVerdict::Finite(vec![a1, a1]));
    }

    #[test]
    fn non_dynkin_trees_rejected() {
        // star with four leaves (affine D_4)
        let mut a = vec![vec![0i64; 5]; 5];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for leaf in 1..5 {
            a[0][leaf] = -1;
            a[leaf][0] = -1;
        }
        assert_eq!(classify_cartan(&a), None);
    }
}
