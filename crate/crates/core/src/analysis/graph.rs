use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AnalysisError;
use crate::cluster::{is_finite_type, ExchangeMatrix, FiniteTypeVerdict, NumericSeed, LARGEST_EXCHANGE_GRAPH};
use crate::fields::{FieldElement, FieldParams};
use crate::symbolic::{RationalFunction, SymbolicSeed};

/// Mersenne prime 2^61 - 1: the fingerprint field.
pub const FINGERPRINT_PRIME: u64 = (1 << 61) - 1;

/// Seed of the ChaCha stream that draws the fingerprint point.
pub const FINGERPRINT_SEED: u64 = 0x0063_6c75_7374_6572;

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Maximum number of vertices.
    pub budget: usize,
    /// Also carry symbolic seeds, for certificates and denominator vectors.
    pub symbolic: bool,
    pub fingerprint_seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { budget: 2 * LARGEST_EXCHANGE_GRAPH, symbolic: false, fingerprint_seed: FINGERPRINT_SEED }
    }
}

/// An unlabeled seed: a labeled representative plus its canonical key.
#[derive(Debug, Clone)]
pub struct GraphVertex {
    /// Representative over Z_P; cluster values are the fingerprints.
    pub seed: NumericSeed,
    pub symbolic: Option<SymbolicSeed>,
    pub sorted_fingerprints: Vec<u64>,
    pub canonical_matrix: ExchangeMatrix,
}

impl GraphVertex {
    /// Fingerprints in the representative's labeling.
    pub fn fingerprints(&self) -> Vec<u64> {
        self.seed.values().iter().map(fingerprint_value).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    rank: usize,
    initial: ExchangeMatrix,
    vertices: Vec<GraphVertex>,
    /// `adjacency[v][k]`: the vertex reached by mutating the representative of `v` at `k`.
    adjacency: Vec<Vec<usize>>,
    point: Vec<u64>,
    fingerprint_seed: u64,
}

pub(crate) fn fingerprint_value(e: &FieldElement) -> u64 {
    e.coords()[0]
}

pub(crate) fn fingerprint_field() -> FieldParams {
    FieldParams::prime_field(FINGERPRINT_PRIME).expect("Mersenne prime")
}

/// The point `x_i -> point[i]` used for fingerprints.
pub fn fingerprint_point(rank: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rank).map(|_| rng.gen_range(1..FINGERPRINT_PRIME)).collect()
}

fn canonical_key(seed: &NumericSeed) -> Result<(Vec<u64>, ExchangeMatrix), AnalysisError> {
    let fp: Vec<u64> = seed.values().iter().map(fingerprint_value).collect();
    let mut order: Vec<usize> = (0..fp.len()).collect();
    order.sort_by_key(|&i| fp[i]);
    if order.windows(2).any(|w| fp[w[0]] == fp[w[1]]) {
        // two cluster variables of one seed never coincide as functions
        return Err(AnalysisError::FingerprintCollision);
    }
    let sorted = order.iter().map(|&i| fp[i]).collect();
    Ok((sorted, seed.matrix().permuted(&order)))
}

/// Breadth-first enumeration of the exchange graph of a finite-type matrix.
pub fn enumerate_exchange_graph(b: &ExchangeMatrix, options: &EnumerateOptions) -> Result<ExchangeGraph, AnalysisError> {
    match is_finite_type(b) {
        FiniteTypeVerdict::Finite(_) => {}
        other => return Err(AnalysisError::NotFiniteType(other.to_string())),
    }
    let n = b.rank();
    let field = fingerprint_field();
    let point = fingerprint_point(n, options.fingerprint_seed);
    let values = point.iter().map(|&v| field.constant(v)).collect();
    let start = NumericSeed::new(values, b.clone())?;
    let start_sym = options.symbolic.then(|| SymbolicSeed::initial(b.clone(), FINGERPRINT_PRIME));

    let mut index: HashMap<(Vec<u64>, ExchangeMatrix), usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let (sorted, canon) = canonical_key(&start)?;
    index.insert((sorted.clone(), canon.clone()), 0);
    vertices.push(GraphVertex { seed: start, symbolic: start_sym, sorted_fingerprints: sorted, canonical_matrix: canon });
    let mut queue = VecDeque::from([0usize]);

    while let Some(v) = queue.pop_front() {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let next = vertices[v]
                .seed
                .mutate(&field, k)
                .map_err(|_| AnalysisError::DegenerateFingerprint)?;
            if next.values()[k].is_zero() {
                return Err(AnalysisError::DegenerateFingerprint);
            }
            let key = canonical_key(&next)?;
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if vertices.len() >= options.budget {
                        return Err(AnalysisError::BudgetExceeded { budget: options.budget });
                    }
                    let sym = match &vertices[v].symbolic {
                        Some(s) => Some(s.mutate(k)?),
                        None => None,
                    };
                    let id = vertices.len();
                    let (sorted, canon) = key.clone();
                    index.insert(key, id);
                    vertices.push(GraphVertex {
                        seed: next,
                        symbolic: sym,
                        sorted_fingerprints: sorted,
                        canonical_matrix: canon,
                    });
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if adjacency.len() <= v {
            adjacency.resize(v + 1, Vec::new());
        }
        adjacency[v] = row;
    }
    Ok(ExchangeGraph { rank: n, initial: b.clone(), vertices, adjacency, point, fingerprint_seed: options.fingerprint_seed })
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn initial_matrix(&self) -> &ExchangeMatrix {
        &self.initial
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &GraphVertex {
        &self.vertices[v]
    }

    /// Neighbours indexed by mutation direction of the representative.
    pub fn mutation_neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Distinct neighbours, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = self.adjacency[v].clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.neighbors(v).len()).sum::<usize>() / 2
    }

    pub fn fingerprint_point(&self) -> &[u64] {
        &self.point
    }

    pub fn fingerprint_seed(&self) -> u64 {
        self.fingerprint_seed
    }

    /// Every vertex has `rank` distinct neighbours, none of them itself, and
    /// adjacency is symmetric.
    pub fn is_regular(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let nb = self.neighbors(v);
            nb.len() == self.rank && !nb.contains(&v) && nb.iter().all(|&w| self.adjacency[w].contains(&v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Distinct cluster variables keyed by fingerprint, with a symbolic
    /// representative when enumerated symbolically.
    pub fn cluster_variables(&self) -> Vec<(u64, Option<RationalFunction>)> {
        let mut seen: HashMap<u64, Option<RationalFunction>> = HashMap::new();
        for vx in &self.vertices {
            for (i, fp) in vx.fingerprints().into_iter().enumerate() {
                seen.entry(fp).or_insert_with(|| vx.symbolic.as_ref().map(|s| s.entries()[i].clone()));
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Symbolic certificate: every pair of cluster variables sharing a
    /// fingerprint is equal as a rational function. Requires symbolic enumeration.
    pub fn certify_fingerprints(&self) -> Result<usize, AnalysisError> {
        let mut first: HashMap<u64, RationalFunction> = HashMap::new();
        let mut checked = 0;
        for vx in &self.vertices {
            let sym = vx.symbolic.as_ref().ok_or(AnalysisError::SymbolicRequired)?;
            for (i, fp) in vx.fingerprints().into_iter().enumerate() {
                let f = &sym.entries()[i];
                match first.get(&fp) {
                    Some(g) => {
                        if !g.same_function(f) {
                            return Err(AnalysisError::FingerprintCollision);
                        }
                        checked += 1;
                    }
                    None => {
                        first.insert(fp, f.clone());
                    }
                }
            }
        }
        Ok(checked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{DynkinSpec, Family};

    fn graph(f: Family, r: usize) -> ExchangeGraph {
        let b = DynkinSpec::new(f, r).unwrap().exchange_matrix().unwrap();
        enumerate_exchange_graph(&b, &EnumerateOptions::default()).unwrap()
    }

    #[test]
    fn small_vertex_counts() {
        for (f, r, n) in [
            (Family::A, 1, 2),
            (Family::A, 2, 5),
            (Family::A, 3, 14),
            (Family::A, 4, 42),
            (Family::B, 2, 6),
            (Family::C, 3, 20),
            (Family::B, 3, 20),
            (Family::D, 4, 50),
            (Family::G, 2, 8),
        ] {
            let g = graph(f, r);
            assert_eq!(g.vertex_count(), n, "{f}{r}");
            assert!(g.is_regular(), "{f}{r}");
            assert!(g.is_connected(), "{f}{r}");
        }
    }

    #[test]
    fn pentagon() {
        let g = graph(Family::A, 2);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.cluster_variables().len(), 5);
    }

    #[test]
    fn orientation_independent() {
        let lin = DynkinSpec::with_orientation(Family::A, 4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = lin.exchange_matrix().unwrap();
        let g = enumerate_exchange_graph(&b, &EnumerateOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 42);
    }

    #[test]
    fn symbolic_certificate() {
        let b = DynkinSpec::new(Family::A, 3).unwrap().exchange_matrix().unwrap();
        let opts = EnumerateOptions { symbolic: true, ..Default::default() };
        let g = enumerate_exchange_graph(&b, &opts).unwrap();
        assert!(g.certify_fingerprints().unwrap() > 0);
        assert_eq!(g.cluster_variables().len(), 9);
    }

    #[test]
    fn errors() {
        let b = DynkinSpec::new(Family::A, 3).unwrap().exchange_matrix().unwrap();
        let opts = EnumerateOptions { budget: 5, ..Default::default() };
        assert_eq!(
            enumerate_exchange_graph(&b, &opts).unwrap_err(),
            AnalysisError::BudgetExceeded { budget: 5 }
        );
        let markov = ExchangeMatrix::from_rows(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap();
        assert!(matches!(
            enumerate_exchange_graph(&markov, &EnumerateOptions::default()),
            Err(AnalysisError::NotFiniteType(_))
        ));
    }
}
