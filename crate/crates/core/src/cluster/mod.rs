//! Exchange matrices, quivers, Dynkin constructors and seed mutation.

mod dynkin;
mod finite_type;
mod matrix;
mod quiver;
mod seed;

use thiserror::Error;

pub use dynkin::{standard_cartan, DynkinSpec, DynkinType, Family, Orientation};
pub use finite_type::{
    classify_cartan, is_finite_type, is_finite_type_with_budget, FiniteTypeVerdict,
    DEFAULT_FINITE_TYPE_BUDGET, LARGEST_EXCHANGE_GRAPH,
};
pub use matrix::ExchangeMatrix;
pub use quiver::Quiver;
pub use seed::{exchange_monomials, find_equivalence, NumericSeed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("vertex {vertex} out of range for rank {rank}")]
    InvalidVertex { vertex: usize, rank: usize },
    #[error("matrix is not sign-skew-symmetric at ({i}, {j})")]
    NotSignSkewSymmetric { i: usize, j: usize },
    #[error("matrix must be square ({rows} rows, a row of length {cols}); frozen variables are not supported")]
    NotSquare { rows: usize, cols: usize },
    #[error("quivers need a skew-symmetric matrix")]
    NotSkewSymmetric,
    #[error("loop or 2-cycle between {i} and {j}")]
    LoopOrTwoCycle { i: usize, j: usize },
    #[error("{values} cluster values for a rank-{rank} matrix")]
    RankMismatch { values: usize, rank: usize },
    #[error("invalid diagram: {0}")]
    InvalidSpec(String),
    #[error("division by zero mutating at vertex {vertex} (step {step})")]
    DivisionByZero { vertex: usize, step: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldParams;
    use proptest::prelude::*;

    fn arb_finite_matrix() -> impl Strategy<Value = ExchangeMatrix> {
        let specs: Vec<DynkinSpec> = [Family::A, Family::B, Family::C, Family::D]
            .into_iter()
            .flat_map(|f| (2..=8).filter(move |&r| f.valid_rank(r)).map(move |r| DynkinSpec::new(f, r).unwrap()))
            .collect();
        (proptest::sample::select(specs), proptest::collection::vec(0usize..8, 0..12)).prop_map(|(spec, walk)| {
            let mut b = spec.exchange_matrix().unwrap();
            for k in walk {
                b = b.mutate(k % b.rank()).unwrap();
            }
            b
        })
    }

    proptest! {
        #[test]
        fn matrix_mutation_involution(b in arb_finite_matrix(), k in 0usize..8) {
            let k = k % b.rank();
            let once = b.mutate(k).unwrap();
            prop_assert!(ExchangeMatrix::from_rows(once.rows()).is_ok(), "sign-skew-symmetry lost");
            prop_assert_eq!(once.mutate(k).unwrap(), b);
        }

        #[test]
        fn quiver_and_matrix_mutation_commute(b in arb_finite_matrix(), k in 0usize..8) {
            prop_assume!(b.is_skew_symmetric());
            let k = k % b.rank();
            let q = Quiver::from_matrix(&b).unwrap();
            prop_assert_eq!(q.mutate(k).unwrap().to_matrix(), b.mutate(k).unwrap());
            prop_assert_eq!(q.to_matrix(), b);
        }

        #[test]
        fn numeric_mutation_involution(b in arb_finite_matrix(), k in 0usize..8, vals in proptest::collection::vec(0u64..101, 8)) {
            let f = FieldParams::prime_field(101).unwrap();
            let k = k % b.rank();
            let values = vals[..b.rank()].iter().map(|&v| f.constant(v)).collect();
            let seed = NumericSeed::new(values, b).unwrap();
            if let Ok(once) = seed.mutate(&f, k) {
                if let Ok(twice) = once.mutate(&f, k) {
                    prop_assert_eq!(twice, seed);
                }
            }
        }
    }
}
