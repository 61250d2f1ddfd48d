use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{AnalysisError, ExchangeGraph};

/// Default bound on DFS path length.
pub const DEFAULT_DFS_MAX_LEN: usize = 12;

/// Default cap on the number of paths a DFS may return.
pub const DEFAULT_DFS_MAX_PATHS: usize = 100_000;

fn check_vertex(g: &ExchangeGraph, v: usize) -> Result<(), AnalysisError> {
    if v >= g.vertex_count() {
        return Err(AnalysisError::InvalidVertex { vertex: v, count: g.vertex_count() });
    }
    Ok(())
}

type Dense = Vec<Vec<BigUint>>;

pub fn adjacency_matrix(g: &ExchangeGraph) -> Dense {
    let n = g.vertex_count();
    let mut m = vec![vec![BigUint::zero(); n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        for w in g.neighbors(v) {
            row[w] = BigUint::one();
        }
    }
    m
}

fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `M^t` by repeated squaring, exact.
pub fn adjacency_power(g: &ExchangeGraph, t: u32) -> Dense {
    let n = g.vertex_count();
    let mut acc: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
        .collect();
    let mut base = adjacency_matrix(g);
    let mut e = t;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// Number of walks of length `t` from `u` to `v`: `(M^t)_{uv}`.
pub fn path_count(g: &ExchangeGraph, u: usize, v: usize, t: u32) -> Result<BigUint, AnalysisError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    Ok(adjacency_power(g, t).swap_remove(u).swap_remove(v))
}

/// Row `u` of `M^t` by `t` sparse vector steps; cheap on large graphs.
pub fn walk_counts_from(g: &ExchangeGraph, u: usize, t: u32) -> Result<Vec<BigUint>, AnalysisError> {
    check_vertex(g, u)?;
    let n = g.vertex_count();
    let mut cur = vec![BigUint::zero(); n];
    cur[u] = BigUint::one();
    for _ in 0..t {
        let mut next = vec![BigUint::zero(); n];
        for (v, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for w in g.neighbors(v) {
                next[w] += c;
            }
        }
        cur = next;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSearch {
    /// Vertex sequences from `u` to `v`.
    pub paths: Vec<Vec<usize>>,
    /// The path cap was hit; `paths` is a prefix of the full list.
    pub truncated: bool,
}

/// All simple paths from `u` to `v` with at most `max_len` edges, in
/// depth-first order over ascending neighbours.
pub fn dfs_paths(
    g: &ExchangeGraph,
    u: usize,
    v: usize,
    max_len: usize,
    max_paths: usize,
) -> Result<PathSearch, AnalysisError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let mut out = PathSearch { paths: Vec::new(), truncated: false };
    if u == v {
        out.paths.push(vec![u]);
        return Ok(out);
    }
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = vec![u];
    on_path[u] = true;
    dfs(g, v, max_len, max_paths, &mut path, &mut on_path, &mut out);
    Ok(out)
}

fn dfs(
    g: &ExchangeGraph,
    target: usize,
    max_len: usize,
    max_paths: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut PathSearch,
) {
    if out.truncated || path.len() > max_len {
        return;
    }
    let last = *path.last().expect("nonempty");
    for w in g.neighbors(last) {
        if on_path[w] {
            continue;
        }
        if w == target {
            if out.paths.len() >= max_paths {
                out.truncated = true;
                return;
            }
            path.push(w);
            out.paths.push(path.clone());
            path.pop();
            continue;
        }
        if path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            dfs(g, target, max_len, max_paths, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{enumerate_exchange_graph, EnumerateOptions};
    use crate::cluster::{DynkinSpec, Family};
    use num_traits::ToPrimitive;

    fn graph(f: Family, r: usize) -> ExchangeGraph {
        let b = DynkinSpec::new(f, r).unwrap().exchange_matrix().unwrap();
        enumerate_exchange_graph(&b, &EnumerateOptions::default()).unwrap()
    }

    #[test]
    fn pentagon_counts() {
        let g = graph(Family::A, 2);
        assert_eq!(path_count(&g, 0, 0, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(path_count(&g, 0, 0, 0).unwrap(), BigUint::one());
        assert_eq!(path_count(&g, 0, 1, 0).unwrap(), BigUint::zero());
        assert!(path_count(&g, 0, 9, 1).is_err());
    }

    #[test]
    fn row_sums_are_powers_of_rank() {
        for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::D, 4)] {
            let g = graph(f, r);
            for t in 0..=8u32 {
                let dense = adjacency_power(&g, t);
                let sparse = walk_counts_from(&g, 0, t).unwrap();
                assert_eq!(dense[0], sparse, "{f}{r} t={t}");
                let total: BigUint = sparse.iter().sum();
                assert_eq!(total, BigUint::from(r).pow(t));
                if t == 1 {
                    for w in 0..g.vertex_count() {
                        let adj = g.neighbors(0).contains(&w);
                        assert_eq!(dense[0][w].to_u32().unwrap(), adj as u32);
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_dfs() {
        let g = graph(Family::A, 2);
        let v = g.neighbors(0)[0];
        let found = dfs_paths(&g, 0, v, 4, DEFAULT_DFS_MAX_PATHS).unwrap();
        assert!(!found.truncated);
        let mut lens: Vec<usize> = found.paths.iter().map(|p| p.len() - 1).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 4]);
        assert_eq!(dfs_paths(&g, 0, 0, 4, 10).unwrap().paths, vec![vec![0]]);
        assert!(dfs_paths(&g, 0, v, 0, 10).unwrap().paths.is_empty());
        let capped = dfs_paths(&g, 0, v, 4, 1).unwrap();
        assert!(capped.truncated);
        assert_eq!(capped.paths.len(), 1);
    }

    #[test]
    fn dfs_paths_are_simple() {
        let g = graph(Family::A, 3);
        let found = dfs_paths(&g, 0, 7, 6, DEFAULT_DFS_MAX_PATHS).unwrap();
        assert!(!found.paths.is_empty());
        for p in &found.paths {
            let mut s = p.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), p.len());
            assert!(p.windows(2).all(|w| g.neighbors(w[0]).contains(&w[1])));
            assert!(p.len() - 1 <= 6);
        }
    }
}
