use std::fmt;

use serde::{Deserialize, Serialize};

use super::ClusterError;

/// Square sign-skew-symmetric integer matrix `(b_ij)`.
///
/// Serializes as row-major nested arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = ClusterError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        ExchangeMatrix::from_rows(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.rows()
    }
}

impl ExchangeMatrix {
    /// Rejects non-square input (frozen rows are not supported) and anything
    /// that is not sign-skew-symmetric.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|row| row.len() != n) {
            return Err(ClusterError::NotSquare { rows: n, cols: row.len() });
        }
        let m = ExchangeMatrix { n, entries: rows.into_iter().flatten().collect() };
        m.check_sign_skew_symmetric()?;
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix { n, entries: vec![0; n * n] }
    }

    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<i64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        ExchangeMatrix { n, entries }
    }

    fn check_sign_skew_symmetric(&self) -> Result<(), ClusterError> {
        for i in 0..self.n {
            for j in i..self.n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                let ok = if i == j { a == 0 } else { (a == 0 && b == 0) || a * b < 0 };
                if !ok {
                    return Err(ClusterError::NotSignSkewSymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Vertices `j` with `b_kj != 0`.
    pub fn neighbors(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(k).iter().enumerate().filter(|(_, &b)| b != 0).map(|(j, _)| j)
    }

    pub fn check_vertex(&self, k: usize) -> Result<(), ClusterError> {
        if k >= self.n {
            Err(ClusterError::InvalidVertex { vertex: k, rank: self.n })
        } else {
            Ok(())
        }
    }

    /// Matrix mutation at `k`:
    /// `b'_ij = -b_ij` when `i = k` or `j = k`, otherwise
    /// `b'_ij = b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, ClusterError> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut out = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                if i == k || j == k {
                    out[idx] = -self.get(i, j);
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    out[idx] = self.get(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / 2;
                }
            }
        }
        Ok(ExchangeMatrix { n, entries: out })
    }

    /// `C_ij = B_{π(i) π(j)}`.
    pub fn permuted(&self, perm: &[usize]) -> ExchangeMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                entries.push(self.get(pi, pj));
            }
        }
        ExchangeMatrix { n, entries }
    }

    /// Cartan counterpart: 2 on the diagonal, `-|b_ij|` elsewhere.
    pub fn cartan_counterpart(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { 2 } else { -self.get(i, j).abs() })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ExchangeMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]),
            Err(ClusterError::NotSignSkewSymmetric { .. })
        ));
        assert!(matches!(
            ExchangeMatrix::from_rows(vec![vec![1]]),
            Err(ClusterError::NotSignSkewSymmetric { .. })
        ));
        assert!(matches!(
            ExchangeMatrix::from_rows(vec![vec![0, 1, 0], vec![-1, 0, 0]]),
            Err(ClusterError::NotSquare { .. })
        ));
        // skew-symmetrizable is fine
        m(&[&[0, 2], &[-1, 0]]);
    }

    #[test]
    fn mutation_is_involutive_and_pure() {
        let b = m(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        for k in 0..3 {
            let once = b.mutate(k).unwrap();
            assert_eq!(once.mutate(k).unwrap(), b);
        }
        assert!(matches!(b.mutate(3), Err(ClusterError::InvalidVertex { vertex: 3, rank: 3 })));
    }

    #[test]
    fn cartan_counterpart_examples() {
        let a3 = m(&[&[0, 1, 0], &[-1, 0, -1], &[0, 1, 0]]);
        assert_eq!(a3.cartan_counterpart(), vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(ExchangeMatrix::zero(2).cartan_counterpart(), vec![vec![2, 0], vec![0, 2]]);
        let b2 = m(&[&[0, 2], &[-1, 0]]);
        assert_eq!(b2.cartan_counterpart(), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn serde_is_row_major() {
        let b = m(&[&[0, 1], &[-1, 0]]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, "[[0,1],[-1,0]]");
        assert_eq!(serde_json::from_str::<ExchangeMatrix>(&s).unwrap(), b);
        assert!(serde_json::from_str::<ExchangeMatrix>("[[0,1],[1,0]]").is_err());
    }
}
