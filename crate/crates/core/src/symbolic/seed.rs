use super::{Evaluator, Polynomial, RationalFunction, SymbolicError};
use crate::cluster::{exchange_monomials, ExchangeMatrix};

/// A seed whose cluster entries are rational functions in the initial variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSeed {
    entries: Vec<RationalFunction>,
    matrix: ExchangeMatrix,
}

impl SymbolicSeed {
    /// Initial seed `(x0, ..., x_{n-1})` over Z_p.
    pub fn initial(matrix: ExchangeMatrix, modulus: u64) -> Self {
        let n = matrix.rank();
        let entries = (0..n).map(|i| RationalFunction::var(n, modulus, i)).collect();
        SymbolicSeed { entries, matrix }
    }

    pub fn new(entries: Vec<RationalFunction>, matrix: ExchangeMatrix) -> Result<Self, SymbolicError> {
        if entries.len() != matrix.rank() {
            return Err(SymbolicError::ArityMismatch { expected: matrix.rank(), got: entries.len() });
        }
        Ok(SymbolicSeed { entries, matrix })
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn into_parts(self) -> (Vec<RationalFunction>, ExchangeMatrix) {
        (self.entries, self.matrix)
    }

    /// Exchange relation at `k`, simplified structurally.
    pub fn mutate(&self, k: usize) -> Result<SymbolicSeed, SymbolicError> {
        let matrix = self.matrix.mutate(k)?;
        let old = &self.entries[k];
        if old.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let (pos, neg) = exchange_monomials(&self.matrix, k);
        let (n, p) = (old.nvars(), old.modulus());
        let product = |terms: &[(usize, u32)]| {
            terms
                .iter()
                .fold(RationalFunction::constant(n, p, 1), |acc, &(j, e)| acc.mul(&self.entries[j].pow(e)))
        };
        let binomial = product(&pos).add(&product(&neg));
        // binomial / (num/den) = binomial * den / num
        let raw = RationalFunction::new(&binomial.num().clone() * old.den(), &binomial.den().clone() * old.num())?;
        let mut entries = self.entries.clone();
        entries[k] = raw.simplify();
        Ok(SymbolicSeed { entries, matrix })
    }

    pub fn apply_sequence(&self, ks: &[usize]) -> Result<SymbolicSeed, SymbolicError> {
        let mut seed = self.clone();
        for &k in ks {
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// Substitutes `x_var -> replacement` in every entry.
    pub fn substitute(&self, var: usize, replacement: &RationalFunction) -> Result<SymbolicSeed, SymbolicError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(var, replacement))
            .collect::<Result<_, _>>()?;
        Ok(SymbolicSeed { entries, matrix: self.matrix.clone() })
    }

    pub fn evaluate<E: Evaluator>(&self, ev: &E, point: &[E::Elem]) -> Result<Vec<E::Elem>, SymbolicError> {
        self.entries.iter().map(|e| e.evaluate(ev, point)).collect()
    }

    /// Entries divided through by their GCDs.
    pub fn reduced(&self) -> SymbolicSeed {
        SymbolicSeed { entries: self.entries.iter().map(RationalFunction::reduce).collect(), matrix: self.matrix.clone() }
    }
}

/// Linear form `Σ a_i x_i` as a rational function.
pub fn linear_form(modulus: u64, coeffs: &[u64]) -> RationalFunction {
    RationalFunction::from_polynomial(Polynomial::linear(modulus, coeffs))
}
