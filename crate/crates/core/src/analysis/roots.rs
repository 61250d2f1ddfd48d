use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;

use super::AnalysisError;

/// Closure bound; E_8 has 240 roots.
const MAX_ROOTS: usize = 1000;

/// Roots in simple-root coordinates. Reflections use
/// `s_i(β) = β - (Σ_j β_j A_ji) α_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    /// `d` with `A_ij d_j = A_ji d_i`; the symmetric form is `(α_i, α_j) = A_ij d_j`.
    symmetrizer: Vec<i64>,
    roots: Vec<Vec<i64>>,
}

/// Outcome of checking the root-system axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub finite_and_spanning: bool,
    pub only_plus_minus_multiples: bool,
    pub closed_under_reflections: bool,
    pub integral_pairings: bool,
    /// `⟨α,β⟩⟨β,α⟩ ∈ {0,1,2,3}` whenever `β ≠ ±α`.
    pub finiteness_lemma: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.finite_and_spanning
            && self.only_plus_minus_multiples
            && self.closed_under_reflections
            && self.integral_pairings
            && self.finiteness_lemma
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, AnalysisError> {
    let n = a.len();
    // d as rationals num/den, propagated along edges, then scaled to integers
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (pi, qi) = d[i].expect("set");
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_j = A_ji d_i / A_ij
                let (mut p, mut q) = (a[j][i] * pi, a[i][j] * qi);
                if q < 0 {
                    p = -p;
                    q = -q;
                }
                let g = p.gcd(&q);
                let (p, q) = (p / g, q / g);
                match d[j] {
                    None => {
                        d[j] = Some((p, q));
                        queue.push_back(j);
                    }
                    Some(existing) if existing == (p, q) => {}
                    Some(_) => return Err(AnalysisError::NotFiniteType("Cartan matrix is not symmetrizable".into())),
                }
            }
        }
    }
    let l = d.iter().fold(1i64, |acc, x| acc.lcm(&x.expect("set").1));
    Ok(d.iter().map(|x| x.map(|(p, q)| p * (l / q)).expect("set")).collect())
}

/// Closure of the simple roots under the simple reflections.
pub fn generate_root_system(cartan: &[Vec<i64>]) -> Result<RootSystem, AnalysisError> {
    let n = cartan.len();
    if n == 0 || cartan.iter().any(|row| row.len() != n) {
        return Err(AnalysisError::NotFiniteType("Cartan matrix must be square and nonempty".into()));
    }
    let d = symmetrizer(cartan)?;
    if d.iter().any(|&x| x <= 0) {
        return Err(AnalysisError::NotFiniteType("symmetrizer is not positive".into()));
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let r = simple_reflection(cartan, &beta, i);
            if seen.insert(r.clone()) {
                if seen.len() > MAX_ROOTS {
                    return Err(AnalysisError::NotFiniteType(format!("more than {MAX_ROOTS} roots")));
                }
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    // positive roots first, by height then coordinates
    roots.sort_by_key(|r| (r.iter().sum::<i64>() < 0, r.iter().sum::<i64>().abs(), r.clone()));
    Ok(RootSystem { cartan: cartan.to_vec(), symmetrizer: d, roots })
}

fn simple_reflection(a: &[Vec<i64>], beta: &[i64], i: usize) -> Vec<i64> {
    let c: i64 = beta.iter().enumerate().map(|(j, &b)| b * a[j][i]).sum();
    let mut out = beta.to_vec();
    out[i] -= c;
    out
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive(&self) -> Vec<Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect()
    }

    pub fn negative(&self) -> Vec<Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c <= 0)).cloned().collect()
    }

    pub fn simple(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                e
            })
            .collect()
    }

    /// `R⁺ ∪ (−Δ)`.
    pub fn almost_positive(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive();
        out.extend(self.simple().into_iter().map(|e| e.into_iter().map(|c| -c).collect::<Vec<_>>()));
        out
    }

    /// Symmetric form `(α, β) = Σ α_i β_j A_ij d_j`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * b[j] * self.cartan[i][j] * self.symmetrizer[j];
            }
        }
        s
    }

    /// `⟨β, α⟩ = 2(β, α)/(α, α)`, if integral.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> Option<i64> {
        let num = 2 * self.form(beta, alpha);
        let den = self.form(alpha, alpha);
        (den != 0 && num % den == 0).then(|| num / den)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let set: BTreeSet<&Vec<i64>> = self.roots.iter().collect();
        let neg = |v: &[i64]| v.iter().map(|c| -c).collect::<Vec<_>>();
        let spans = (0..self.rank()).all(|i| self.roots.iter().any(|r| r.iter().enumerate().all(|(j, &c)| c == (i == j) as i64)));
        let mut multiples = true;
        let mut closed = true;
        let mut integral = true;
        let mut lemma = true;
        for a in &self.roots {
            if !set.contains(&neg(a)) {
                multiples = false;
            }
            for b in &self.roots {
                // parallel roots must be ±a
                if parallel(a, b) && b != a && *b != neg(a) {
                    multiples = false;
                }
                let (Some(ba), Some(ab)) = (self.pairing(b, a), self.pairing(a, b)) else {
                    integral = false;
                    continue;
                };
                let reflected: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - ba * y).collect();
                if !set.contains(&reflected) {
                    closed = false;
                }
                if b != a && *b != neg(a) && !(0..=3).contains(&(ab * ba)) {
                    lemma = false;
                }
            }
        }
        AxiomReport {
            finite_and_spanning: self.roots.len() <= MAX_ROOTS && spans,
            only_plus_minus_multiples: multiples,
            closed_under_reflections: closed,
            integral_pairings: integral,
            finiteness_lemma: lemma,
        }
    }
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| a[i] * b[j] == a[j] * b[i]))
}
