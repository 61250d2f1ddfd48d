//! Dynkin diagrams, their Cartan matrices, and oriented exchange matrices.
//!
//! Vertex labelling:
//! - `A_n`, `B_n`, `C_n`, `F_4`, `G_2`: the path `0 - 1 - ... - (n-1)`.
//!   `B_n` carries the double bond on its last edge with `a_{n-2,n-1} = -2`,
//!   `C_n` is its transpose, `F_4` has `a_{1,2} = -2`, `G_2` has `a_{1,0} = -3`.
//! - `D_n` (n >= 4): the path `0 - ... - (n-3)` with leaves `n-2` and `n-1`
//!   both attached to `n-3`.
//! - `E_n` (n = 6, 7, 8): the path `0 - ... - (n-2)` with `n-1` attached to `2`.
//!
//! The default orientation is bipartite: vertices at even distance from
//! vertex 0 are sources. This reproduces `x0 -> x1 <- x2 -> x3 <- x4` for
//! `A_5` and the `D_7` quiver with `x4` pointing at `x3`, `x5` and `x6`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClusterError, ExchangeMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(ClusterError::InvalidSpec(format!("unknown family {s:?}"))),
        }
    }
}

/// A Dynkin type such as `D7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self, ClusterError> {
        if !family.valid_rank(rank) {
            return Err(ClusterError::InvalidSpec(format!("{family}{rank} is not a Dynkin diagram")));
        }
        Ok(DynkinType { family, rank })
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s
            .char_indices()
            .nth(1)
            .map(|(i, _)| i)
            .ok_or_else(|| ClusterError::InvalidSpec(format!("bad diagram {s:?}")))?;
        let family: Family = s[..split].parse()?;
        let rank = s[split..]
            .trim_start_matches('_')
            .parse()
            .map_err(|_| ClusterError::InvalidSpec(format!("bad rank in {s:?}")))?;
        DynkinType::new(family, rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    /// Bipartite, vertex 0 a source.
    #[default]
    Standard,
    /// One `(tail, head)` pair per diagram edge.
    Explicit(Vec<(usize, usize)>),
}

/// Diagram family, rank and orientation of the initial quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct DynkinSpec {
    pub family: Family,
    pub rank: usize,
    pub orientation: Orientation,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    family: Family,
    rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation: Option<Vec<(usize, usize)>>,
}

impl TryFrom<RawSpec> for DynkinSpec {
    type Error = ClusterError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        let spec = DynkinSpec {
            family: raw.family,
            rank: raw.rank,
            orientation: raw.orientation.map_or(Orientation::Standard, Orientation::Explicit),
        };
        spec.exchange_matrix()?;
        Ok(spec)
    }
}

impl From<DynkinSpec> for RawSpec {
    fn from(s: DynkinSpec) -> Self {
        RawSpec {
            family: s.family,
            rank: s.rank,
            orientation: match s.orientation {
                Orientation::Standard => None,
                Orientation::Explicit(v) => Some(v),
            },
        }
    }
}

impl DynkinSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, ClusterError> {
        DynkinType::new(family, rank)?;
        Ok(DynkinSpec { family, rank, orientation: Orientation::Standard })
    }

    pub fn with_orientation(
        family: Family,
        rank: usize,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self, ClusterError> {
        let spec = DynkinSpec { family, rank, orientation: Orientation::Explicit(arrows) };
        spec.exchange_matrix()?;
        Ok(spec)
    }

    pub fn dynkin_type(&self) -> DynkinType {
        DynkinType { family: self.family, rank: self.rank }
    }

    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>, ClusterError> {
        standard_cartan(self.dynkin_type())
    }

    /// Oriented exchange matrix: for an arrow `i -> j` on a diagram edge,
    /// `b_ij = |a_ij|` and `b_ji = -|a_ji|`.
    pub fn exchange_matrix(&self) -> Result<ExchangeMatrix, ClusterError> {
        let ty = DynkinType::new(self.family, self.rank)?;
        let cartan = standard_cartan(ty)?;
        let edges = diagram_edges(&cartan);
        let arrows: Vec<(usize, usize)> = match &self.orientation {
            Orientation::Standard => bipartite_orientation(self.rank, &edges),
            Orientation::Explicit(list) => {
                let mut seen = vec![false; edges.len()];
                for &(t, h) in list {
                    let key = (t.min(h), t.max(h));
                    let idx = edges.iter().position(|&e| e == key).ok_or_else(|| {
                        ClusterError::InvalidSpec(format!("{t} -> {h} is not an edge of {ty}"))
                    })?;
                    if std::mem::replace(&mut seen[idx], true) {
                        return Err(ClusterError::InvalidSpec(format!(
                            "edge {{{t}, {h}}} oriented twice"
                        )));
                    }
                }
                if seen.iter().any(|s| !s) {
                    return Err(ClusterError::InvalidSpec(format!(
                        "orientation must cover every edge of {ty}"
                    )));
                }
                list.clone()
            }
        };
        let n = self.rank;
        let mut entries = vec![0i64; n * n];
        for (t, h) in arrows {
            entries[t * n + h] = cartan[t][h].abs();
            entries[h * n + t] = -cartan[h][t].abs();
        }
        Ok(ExchangeMatrix::from_entries_unchecked(n, entries))
    }
}

impl fmt::Display for DynkinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)?;
        if let Orientation::Explicit(list) = &self.orientation {
            let arrows: Vec<String> = list.iter().map(|(t, h)| format!("{t}->{h}")).collect();
            write!(f, " [{}]", arrows.join(", "))?;
        }
        Ok(())
    }
}

/// Standard Cartan matrix `a_ij = <α_i, α_j>` in the labelling described above.
pub fn standard_cartan(ty: DynkinType) -> Result<Vec<Vec<i64>>, ClusterError> {
    let DynkinType { family, rank: n } = DynkinType::new(ty.family, ty.rank)?;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 1..n {
                link(i - 1, i);
            }
        }
        Family::D => {
            for i in 1..=n - 3 {
                link(i - 1, i);
            }
            link(n - 3, n - 2);
            link(n - 3, n - 1);
        }
        Family::E => {
            for i in 1..=n - 2 {
                link(i - 1, i);
            }
            link(2, n - 1);
        }
    }
    match family {
        Family::B => a[n - 2][n - 1] = -2,
        Family::C => a[n - 1][n - 2] = -2,
        Family::F => a[1][2] = -2,
        Family::G => a[1][0] = -3,
        _ => {}
    }
    Ok(a)
}

fn diagram_edges(cartan: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let n = cartan.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if cartan[i][j] != 0 {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn bipartite_orientation(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut parity = vec![None::<bool>; n];
    let mut stack = Vec::new();
    for start in 0..n {
        if parity[start].is_some() {
            continue;
        }
        parity[start] = Some(true);
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &(i, j) in edges {
                let other = if i == v {
                    j
                } else if j == v {
                    i
                } else {
                    continue;
                };
                if parity[other].is_none() {
                    parity[other] = Some(!parity[v].unwrap());
                    stack.push(other);
                }
            }
        }
    }
    edges
        .iter()
        .map(|&(i, j)| if parity[i] == Some(true) { (i, j) } else { (j, i) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_default_matches_displayed_matrix() {
        let b = DynkinSpec::new(Family::A, 5).unwrap().exchange_matrix().unwrap();
        assert_eq!(
            b.rows(),
            vec![
                vec![0, 1, 0, 0, 0],
                vec![-1, 0, -1, 0, 0],
                vec![0, 1, 0, 1, 0],
                vec![0, 0, -1, 0, -1],
                vec![0, 0, 0, 1, 0],
            ]
        );
    }

    #[test]
    fn d7_default_matches_displayed_matrix() {
        let b = DynkinSpec::new(Family::D, 7).unwrap().exchange_matrix().unwrap();
        assert_eq!(
            b.rows(),
            vec![
                vec![0, 1, 0, 0, 0, 0, 0],
                vec![-1, 0, -1, 0, 0, 0, 0],
                vec![0, 1, 0, 1, 0, 0, 0],
                vec![0, 0, -1, 0, -1, 0, 0],
                vec![0, 0, 0, 1, 0, 1, 1],
                vec![0, 0, 0, 0, -1, 0, 0],
                vec![0, 0, 0, 0, -1, 0, 0],
            ]
        );
    }

    #[test]
    fn a1_is_zero() {
        let b = DynkinSpec::new(Family::A, 1).unwrap().exchange_matrix().unwrap();
        assert_eq!(b, ExchangeMatrix::zero(1));
    }

    #[test]
    fn invalid_ranks() {
        for (f, r) in [(Family::E, 5), (Family::F, 5), (Family::G, 3), (Family::D, 3), (Family::B, 1), (Family::A, 0)] {
            assert!(matches!(DynkinSpec::new(f, r), Err(ClusterError::InvalidSpec(_))), "{f}{r}");
        }
    }

    #[test]
    fn cartan_counterpart_is_standard() {
        for family in Family::ALL {
            for rank in 1..=8 {
                if !family.valid_rank(rank) {
                    continue;
                }
                let spec = DynkinSpec::new(family, rank).unwrap();
                let b = spec.exchange_matrix().unwrap();
                assert_eq!(b.cartan_counterpart(), spec.cartan_matrix().unwrap(), "{spec}");
            }
        }
    }

    #[test]
    fn explicit_orientation() {
        let spec = DynkinSpec::with_orientation(Family::A, 3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(spec.exchange_matrix().unwrap().rows(), vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        assert!(DynkinSpec::with_orientation(Family::A, 3, vec![(0, 1)]).is_err());
        assert!(DynkinSpec::with_orientation(Family::A, 3, vec![(0, 2), (1, 2)]).is_err());
        assert!(DynkinSpec::with_orientation(Family::A, 3, vec![(0, 1), (1, 0), (1, 2)]).is_err());
    }

    #[test]
    fn valued_edges() {
        let b = DynkinSpec::new(Family::B, 2).unwrap().exchange_matrix().unwrap();
        assert_eq!(b.rows(), vec![vec![0, 2], vec![-1, 0]]);
        let c = DynkinSpec::new(Family::C, 3).unwrap().exchange_matrix().unwrap();
        assert_eq!(c.get(1, 2).abs(), 1);
        assert_eq!(c.get(2, 1).abs(), 2);
        let g = DynkinSpec::new(Family::G, 2).unwrap().exchange_matrix().unwrap();
        assert_eq!(g.rows(), vec![vec![0, 1], vec![-3, 0]]);
    }

    #[test]
    fn spec_serde() {
        let spec = DynkinSpec::new(Family::D, 7).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), r#"{"family":"D","rank":7}"#);
        let lin = DynkinSpec::with_orientation(Family::A, 2, vec![(1, 0)]).unwrap();
        let s = serde_json::to_string(&lin).unwrap();
        assert_eq!(s, r#"{"family":"A","rank":2,"orientation":[[1,0]]}"#);
        assert_eq!(serde_json::from_str::<DynkinSpec>(&s).unwrap(), lin);
        assert!(serde_json::from_str::<DynkinSpec>(r#"{"family":"E","rank":9}"#).is_err());
    }

    #[test]
    fn parse_type() {
        assert_eq!("D7".parse::<DynkinType>().unwrap(), DynkinType { family: Family::D, rank: 7 });
        assert_eq!("a_3".parse::<DynkinType>().unwrap(), DynkinType { family: Family::A, rank: 3 });
        assert!("Q3".parse::<DynkinType>().is_err());
    }
}
