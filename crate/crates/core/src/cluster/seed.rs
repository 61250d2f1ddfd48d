use serde::{Deserialize, Serialize};

use super::{ClusterError, ExchangeMatrix};
use crate::fields::{FieldElement, FieldParams};

/// The two monomials of the exchange relation at `k`, as `(vertex, exponent)`
/// lists: the first from positive entries of row `k`, the second from negative.
pub fn exchange_monomials(b: &ExchangeMatrix, k: usize) -> (Vec<(usize, u32)>, Vec<(usize, u32)>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (j, &v) in b.row(k).iter().enumerate() {
        if v > 0 {
            pos.push((j, v as u32));
        } else if v < 0 {
            neg.push((j, (-v) as u32));
        }
    }
    (pos, neg)
}

/// A seed whose cluster holds concrete field elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericSeed {
    values: Vec<FieldElement>,
    matrix: ExchangeMatrix,
}

impl NumericSeed {
    pub fn new(values: Vec<FieldElement>, matrix: ExchangeMatrix) -> Result<Self, ClusterError> {
        if values.len() != matrix.rank() {
            return Err(ClusterError::RankMismatch { values: values.len(), rank: matrix.rank() });
        }
        Ok(NumericSeed { values, matrix })
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn into_parts(self) -> (Vec<FieldElement>, ExchangeMatrix) {
        (self.values, self.matrix)
    }

    /// Mutation at `k`: `v'_k = (Π_{b_kj>0} v_j^{b_kj} + Π_{b_kj<0} v_j^{-b_kj}) / v_k`.
    pub fn mutate(&self, field: &FieldParams, k: usize) -> Result<NumericSeed, ClusterError> {
        self.mutate_step(field, k, 0)
    }

    fn mutate_step(&self, field: &FieldParams, k: usize, step: usize) -> Result<NumericSeed, ClusterError> {
        self.matrix.check_vertex(k)?;
        let old = &self.values[k];
        let inv = field
            .inv(old)
            .map_err(|_| ClusterError::DivisionByZero { vertex: k, step })?;
        let (pos, neg) = exchange_monomials(&self.matrix, k);
        let product = |terms: &[(usize, u32)]| {
            terms.iter().fold(field.one(), |acc, &(j, e)| {
                field.mul(&acc, &field.pow_u64(&self.values[j], e as u64))
            })
        };
        let binomial = field.add(&product(&pos), &product(&neg));
        let mut values = self.values.clone();
        values[k] = field.mul(&binomial, &inv);
        Ok(NumericSeed { values, matrix: self.matrix.mutate(k)? })
    }

    /// Applies `ks` left to right, stopping at the first vanishing value.
    /// Errors carry the zero-based step index.
    pub fn apply_sequence(&self, field: &FieldParams, ks: &[usize]) -> Result<NumericSeed, ClusterError> {
        let mut seed = self.clone();
        for (step, &k) in ks.iter().enumerate() {
            seed = seed.mutate_step(field, k, step)?;
        }
        Ok(seed)
    }

    /// See [`find_equivalence`].
    pub fn equivalent_to(&self, other: &NumericSeed) -> Result<Option<Vec<usize>>, ClusterError> {
        find_equivalence(&self.values, &self.matrix, &other.values, &other.matrix)
    }
}

/// Searches for a permutation π with `y_i = x_{π(i)}` and `C_ij = B_{π(i)π(j)}`,
/// where `(y, C)` is the first seed and `(x, B)` the second.
pub fn find_equivalence<V: PartialEq>(
    y: &[V],
    c: &ExchangeMatrix,
    x: &[V],
    b: &ExchangeMatrix,
) -> Result<Option<Vec<usize>>, ClusterError> {
    let n = c.rank();
    if b.rank() != n || y.len() != n || x.len() != n {
        return Err(ClusterError::RankMismatch { values: y.len().max(x.len()), rank: n.max(b.rank()) });
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(extend_equivalence(y, c, x, b, &mut perm, &mut used).then_some(perm))
}

fn extend_equivalence<V: PartialEq>(
    y: &[V],
    c: &ExchangeMatrix,
    x: &[V],
    b: &ExchangeMatrix,
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = perm.len();
    if i == y.len() {
        return true;
    }
    for cand in 0..x.len() {
        if used[cand] || x[cand] != y[i] || c.get(i, i) != b.get(cand, cand) {
            continue;
        }
        let consistent = perm
            .iter()
            .enumerate()
            .all(|(j, &pj)| c.get(i, j) == b.get(cand, pj) && c.get(j, i) == b.get(pj, cand));
        if !consistent {
            continue;
        }
        perm.push(cand);
        used[cand] = true;
        if extend_equivalence(y, c, x, b, perm, used) {
            return true;
        }
        perm.pop();
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{DynkinSpec, Family};

    fn gf5() -> FieldParams {
        FieldParams::prime_field(5).unwrap()
    }

    #[test]
    fn a2_hand_computation() {
        let f = gf5();
        let b = ExchangeMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let seed = NumericSeed::new(vec![f.constant(2), f.constant(3)], b).unwrap();
        let next = seed.mutate(&f, 0).unwrap();
        assert_eq!(next.values(), &[f.constant(2), f.constant(3)]);
        assert_eq!(next.matrix().rows(), vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn zero_value_fails_with_position() {
        let f = gf5();
        let b = DynkinSpec::new(Family::A, 3).unwrap().exchange_matrix().unwrap();
        let seed = NumericSeed::new(vec![f.constant(1), f.constant(0), f.constant(2)], b).unwrap();
        assert_eq!(seed.mutate(&f, 1), Err(ClusterError::DivisionByZero { vertex: 1, step: 0 }));
        assert_eq!(
            seed.apply_sequence(&f, &[0, 2, 1]),
            Err(ClusterError::DivisionByZero { vertex: 1, step: 2 })
        );
    }

    #[test]
    fn empty_and_doubled_sequences() {
        let f = FieldParams::new(2, 5, vec![1, 0, 1, 0, 0, 1]).unwrap();
        let b = DynkinSpec::new(Family::A, 5).unwrap().exchange_matrix().unwrap();
        let seed = NumericSeed::new((0..5).map(|i| f.alpha_pow(i)).collect(), b).unwrap();
        assert_eq!(seed.apply_sequence(&f, &[]).unwrap(), seed);
        for k in 0..5 {
            assert_eq!(seed.apply_sequence(&f, &[k, k]).unwrap(), seed);
        }
    }

    #[test]
    fn equivalence_search() {
        let f = gf5();
        let b = ExchangeMatrix::from_rows(vec![vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]).unwrap();
        let vals = vec![f.constant(1), f.constant(2), f.constant(3)];
        let s = NumericSeed::new(vals.clone(), b.clone()).unwrap();
        assert_eq!(s.equivalent_to(&s).unwrap(), Some(vec![0, 1, 2]));

        let perm = [2, 0, 1];
        let shifted = NumericSeed::new(perm.iter().map(|&i| vals[i].clone()).collect(), b.permuted(&perm)).unwrap();
        assert_eq!(shifted.equivalent_to(&s).unwrap(), Some(perm.to_vec()));

        let other = NumericSeed::new(vec![f.constant(1), f.constant(2), f.constant(4)], b.clone()).unwrap();
        assert_eq!(other.equivalent_to(&s).unwrap(), None);

        let small = NumericSeed::new(vec![f.constant(1)], ExchangeMatrix::zero(1)).unwrap();
        assert!(small.equivalent_to(&s).is_err());
    }
}
