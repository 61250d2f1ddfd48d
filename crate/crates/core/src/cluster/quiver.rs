use std::fmt::Write as _;

use super::{ClusterError, ExchangeMatrix};

/// Arrow-count view of a skew-symmetric exchange matrix: `b_ij > 0` means
/// `b_ij` arrows `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<u32>,
}

impl Quiver {
    pub fn from_matrix(b: &ExchangeMatrix) -> Result<Self, ClusterError> {
        if !b.is_skew_symmetric() {
            return Err(ClusterError::NotSkewSymmetric);
        }
        let n = b.rank();
        let arrows = b.entries().iter().map(|&v| v.max(0) as u32).collect();
        Ok(Quiver { n, arrows })
    }

    /// Builds from an arrow list; parallel arrows may repeat. Loops and
    /// 2-cycles are rejected.
    pub fn from_arrows(n: usize, list: &[(usize, usize)]) -> Result<Self, ClusterError> {
        let mut arrows = vec![0u32; n * n];
        for &(i, j) in list {
            if i >= n || j >= n {
                return Err(ClusterError::InvalidVertex { vertex: i.max(j), rank: n });
            }
            if i == j {
                return Err(ClusterError::LoopOrTwoCycle { i, j });
            }
            arrows[i * n + j] += 1;
        }
        let q = Quiver { n, arrows };
        for i in 0..n {
            for j in 0..n {
                if q.count(i, j) > 0 && q.count(j, i) > 0 {
                    return Err(ClusterError::LoopOrTwoCycle { i, j });
                }
            }
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of arrows `i -> j`.
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i * self.n + j]
    }

    pub fn to_matrix(&self) -> ExchangeMatrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                self.count(i, j) as i64 - self.count(j, i) as i64
            })
            .collect();
        ExchangeMatrix::from_entries_unchecked(n, entries)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.count(i, j) > 0 || self.count(j, i) > 0
    }

    /// Quiver mutation at `k`:
    /// 1. for every path `i -> k -> j` add `a*b` arrows `i -> j`;
    /// 2. cancel a maximal set of 2-cycles;
    /// 3. reverse every arrow incident with `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver, ClusterError> {
        let n = self.n;
        if k >= n {
            return Err(ClusterError::InvalidVertex { vertex: k, rank: n });
        }
        let mut next = self.arrows.clone();
        for i in (0..n).filter(|&i| i != k) {
            let into_k = self.count(i, k);
            if into_k == 0 {
                continue;
            }
            for j in (0..n).filter(|&j| j != k && j != i) {
                next[i * n + j] += into_k * self.count(k, j);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let c = next[i * n + j].min(next[j * n + i]);
                next[i * n + j] -= c;
                next[j * n + i] -= c;
            }
        }
        for j in 0..n {
            let (out, inn) = (next[k * n + j], next[j * n + k]);
            next[k * n + j] = inn;
            next[j * n + k] = out;
        }
        Ok(Quiver { n, arrows: next })
    }

    /// Arrow list with multiplicity, `(tail, head, count)`.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.count(i, j);
                if c > 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// DOT digraph; multiple arrows are emitted as parallel edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for i in 0..self.n {
            let _ = writeln!(s, "  x{i};");
        }
        for (i, j, c) in self.arrows() {
            for _ in 0..c {
                let _ = writeln!(s, "  x{i} -> x{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_only() {
        let q = Quiver::from_arrows(3, &[(0, 1), (2, 1)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m, Quiver::from_arrows(3, &[(1, 0), (1, 2)]).unwrap());
    }

    #[test]
    fn through_path_adds_arrow() {
        let q = Quiver::from_arrows(3, &[(0, 1), (1, 2)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m, Quiver::from_arrows(3, &[(1, 0), (2, 1), (0, 2)]).unwrap());
    }

    #[test]
    fn double_arrow_reverses() {
        let q = Quiver::from_arrows(2, &[(0, 1), (0, 1)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m, Quiver::from_arrows(2, &[(1, 0), (1, 0)]).unwrap());
        assert_eq!(m.count(1, 0), 2);
    }

    #[test]
    fn rejects_two_cycles_and_loops() {
        assert!(Quiver::from_arrows(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Quiver::from_arrows(2, &[(1, 1)]).is_err());
        let b2 = ExchangeMatrix::from_rows(vec![vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(Quiver::from_matrix(&b2), Err(ClusterError::NotSkewSymmetric));
    }

    #[test]
    fn dot_export() {
        let q = Quiver::from_arrows(2, &[(0, 1)]).unwrap();
        assert_eq!(q.to_dot(), "digraph quiver {\n  x0;\n  x1;\n  x0 -> x1;\n}\n");
    }
}
