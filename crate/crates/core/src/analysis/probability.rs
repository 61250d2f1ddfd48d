use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{AnalysisError, ExchangeGraph};
use crate::cluster::{DynkinType, Family};

/// A closed-form probability kept unreduced, so it prints the way it was
/// derived (`15/40320` rather than `1/2688`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub formula: &'static str,
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl ClosedForm {
    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator.clone()), BigInt::from(self.denominator.clone()))
    }

    /// `N_C` implied by `p = 1/(N_C r!)`.
    pub fn implied_nc(&self, rank: usize) -> BigRational {
        let v = self.value();
        BigRational::one() / (v * BigRational::from_integer(BigInt::from(factorial(rank as u64))))
    }
}

/// A table value reproduced as published; `exceeds_one` marks values that
/// cannot be probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedValue {
    pub label: &'static str,
    pub value: &'static str,
    pub exceeds_one: bool,
}

pub const FLAG_CLOSED_FORM_MISMATCH: &str = "closed-form-mismatch";
pub const FLAG_NOT_A_PROBABILITY: &str = "published-exceeds-1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityRow {
    pub dynkin: DynkinType,
    pub nc_enumerated: Option<usize>,
    pub closed_form: Option<ClosedForm>,
    /// `N_C · r!` when `N_C` is enumerated.
    pub labeled_seeds: Option<BigUint>,
    /// `1/(N_C · r!)` from enumeration.
    pub probability: Option<BigRational>,
    /// Enumeration agrees with the closed form; `None` if either side is missing.
    pub matches: Option<bool>,
    pub published: Option<PublishedValue>,
    pub fingerprint_seed: Option<u64>,
    pub flags: Vec<&'static str>,
    pub notes: Vec<String>,
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Closed-form `1/(N_C r!)` for the classical families.
pub fn closed_form_probability(ty: DynkinType) -> Option<ClosedForm> {
    let r = ty.rank as u64;
    let (formula, numerator, denominator) = match ty.family {
        Family::A => ("r(r+2)/(2r+2)!", BigUint::from(r * (r + 2)), factorial(2 * r + 2)),
        Family::B | Family::C => ("r!/(2r)!", factorial(r), factorial(2 * r)),
        Family::D => ("(r-1)!/((3r-2)(2r-2)!)", factorial(r - 1), BigUint::from(3 * r - 2) * factorial(2 * r - 2)),
        Family::E | Family::F | Family::G => return None,
    };
    Some(ClosedForm { formula, numerator, denominator })
}

/// The exceptional-type table, verbatim.
pub fn published_value(ty: DynkinType) -> Option<PublishedValue> {
    let value = match (ty.family, ty.rank) {
        (Family::E, 6) => "1.66",
        (Family::E, 7) => "4.76",
        (Family::E, 8) => "9.88",
        (Family::F, 4) => "3.9",
        (Family::G, 2) => "0.0625",
        _ => return None,
    };
    let exceeds_one = value.parse::<f64>().expect("literal") > 1.0;
    Some(PublishedValue { label: "1/(N_c*r)", value, exceeds_one })
}

fn render(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Key-recovery probability `1/(N_C r!)`, from the graph when supplied,
/// alongside the closed form and any published value.
pub fn key_recovery_probability(
    family: Family,
    rank: usize,
    graph: Option<&ExchangeGraph>,
) -> Result<ProbabilityRow, AnalysisError> {
    let dynkin = DynkinType::new(family, rank)?;
    if let Some(g) = graph {
        if g.rank() != rank {
            return Err(AnalysisError::InvalidInput(format!(
                "graph has rank {} but {dynkin} was requested",
                g.rank()
            )));
        }
    }
    let closed_form = closed_form_probability(dynkin);
    let published = published_value(dynkin);
    let rfact = factorial(rank as u64);
    let nc_enumerated = graph.map(ExchangeGraph::vertex_count);
    let labeled_seeds = nc_enumerated.map(|n| BigUint::from(n) * &rfact);
    let probability = labeled_seeds
        .as_ref()
        .map(|s| BigRational::new(BigInt::one(), BigInt::from(s.clone())));
    let matches = match (&probability, &closed_form) {
        (Some(p), Some(c)) => Some(*p == c.value()),
        _ => None,
    };

    let mut flags = Vec::new();
    let mut notes = Vec::new();
    if let Some(c) = &closed_form {
        if matches == Some(false) {
            flags.push(FLAG_CLOSED_FORM_MISMATCH);
            notes.push(format!(
                "closed form {} = {}/{} (= {}, implied N_C = {}) disagrees with 1/(N_C*r!) = {} from enumeration",
                c.formula,
                c.numerator,
                c.denominator,
                render(&c.value()),
                render(&c.implied_nc(rank)),
                render(probability.as_ref().expect("matches implies probability")),
            ));
        }
    }
    if let Some(p) = &published {
        if p.exceeds_one {
            flags.push(FLAG_NOT_A_PROBABILITY);
            notes.push(format!("published {} = {} is not a probability, exceeds 1", p.label, p.value));
        }
        if let Some(n) = nc_enumerated {
            let ours = BigRational::new(BigInt::one(), BigInt::from(n * rank));
            notes.push(format!("1/(N_c*r) from enumeration = {} ~ {:.6}", render(&ours), ours.to_f64().unwrap_or(0.0)));
        }
    }
    Ok(ProbabilityRow {
        dynkin,
        nc_enumerated,
        closed_form,
        labeled_seeds,
        probability,
        matches,
        published,
        fingerprint_seed: graph.map(ExchangeGraph::fingerprint_seed),
        flags,
        notes,
    })
}

impl ProbabilityRow {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.contains(&flag)
    }

    /// `N_C` from the closed form, if any.
    pub fn nc_closed_form(&self) -> Option<BigRational> {
        self.closed_form.as_ref().map(|c| c.implied_nc(self.dynkin.rank))
    }
}

pub const CSV_HEADER: &str = "family,rank,nc_enumerated,nc_closed_form,labeled_seeds,probability,closed_form,match,flags";

/// One row per type, with `;`-joined flags; no field contains a comma.
pub fn report_csv(rows: &[ProbabilityRow]) -> String {
    let opt = |s: Option<String>| s.unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.dynkin.family,
            row.dynkin.rank,
            opt(row.nc_enumerated.map(|n| n.to_string())),
            opt(row.nc_closed_form().map(|q| render(&q))),
            opt(row.labeled_seeds.as_ref().map(|s| s.to_string())),
            opt(row.probability.as_ref().map(render)),
            opt(row.closed_form.as_ref().map(|c| format!("{}/{}", c.numerator, c.denominator))),
            opt(row.matches.map(|m| m.to_string())),
            row.flags.join(";"),
        );
    }
    out
}

pub fn report_text(rows: &[ProbabilityRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let _ = writeln!(out, "{}:", row.dynkin);
        if let (Some(n), Some(s), Some(p)) = (row.nc_enumerated, &row.labeled_seeds, &row.probability) {
            let _ = writeln!(out, "  N_C enumerated     {n}");
            let _ = writeln!(out, "  labeled seeds      {s}");
            let _ = writeln!(out, "  1/(N_C*r!)         {}", render(p));
        }
        if let Some(c) = &row.closed_form {
            let _ = writeln!(out, "  closed form        {} = {}/{}", c.formula, c.numerator, c.denominator);
            let _ = writeln!(out, "  N_C implied        {}", render(&c.implied_nc(row.dynkin.rank)));
        }
        if let Some(m) = row.matches {
            let _ = writeln!(out, "  match              {}", if m { "yes" } else { "NO" });
        }
        if let Some(p) = &row.published {
            let _ = writeln!(out, "  published {:<8} {}", p.label, p.value);
        }
        if let Some(seed) = row.fingerprint_seed {
            let _ = writeln!(out, "  fingerprint seed   {seed:#x}");
        }
        for note in &row.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        if row.nc_enumerated.is_none() && row.closed_form.is_none() && row.published.is_none() {
            let _ = writeln!(out, "  no data (enumerate the graph)");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{enumerate_exchange_graph, EnumerateOptions};
    use crate::cluster::DynkinSpec;

    fn graph(f: Family, r: usize) -> ExchangeGraph {
        let b = DynkinSpec::new(f, r).unwrap().exchange_matrix().unwrap();
        enumerate_exchange_graph(&b, &EnumerateOptions::default()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a3_enumerated_and_flagged() {
        let row = key_recovery_probability(Family::A, 3, Some(&graph(Family::A, 3))).unwrap();
        assert_eq!(row.probability, Some(q(1, 84)));
        assert_eq!(row.labeled_seeds, Some(BigUint::from(84u32)));
        let c = row.closed_form.as_ref().unwrap();
        assert_eq!((c.numerator.clone(), c.denominator.clone()), (BigUint::from(15u32), BigUint::from(40320u32)));
        assert_eq!(row.matches, Some(false));
        assert!(row.has_flag(FLAG_CLOSED_FORM_MISMATCH));
        assert_eq!(row.nc_closed_form(), Some(q(448, 1)));
        assert!(report_text(&[row]).contains("15/40320"));
    }

    #[test]
    fn classical_closed_forms_agree_with_enumeration() {
        assert_eq!(closed_form_probability(DynkinType::new(Family::B, 2).unwrap()).unwrap().value(), q(1, 12));
        for (f, r) in [(Family::B, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::D, 5)] {
            let row = key_recovery_probability(f, r, Some(&graph(f, r))).unwrap();
            assert_eq!(row.matches, Some(true), "{f}{r}");
            assert!(row.flags.is_empty());
        }
    }

    #[test]
    fn exceptional_table_is_annotated() {
        let e6 = key_recovery_probability(Family::E, 6, None).unwrap();
        assert!(e6.has_flag(FLAG_NOT_A_PROBABILITY));
        assert!(e6.closed_form.is_none() && e6.matches.is_none());
        let g2 = key_recovery_probability(Family::G, 2, Some(&graph(Family::G, 2))).unwrap();
        assert!(!g2.has_flag(FLAG_NOT_A_PROBABILITY));
        assert_eq!(g2.probability, Some(q(1, 16)));
        assert!(g2.notes.iter().any(|n| n.contains("1/16")));
    }

    #[test]
    fn csv_shape() {
        let rows = vec![
            key_recovery_probability(Family::A, 3, Some(&graph(Family::A, 3))).unwrap(),
            key_recovery_probability(Family::B, 2, None).unwrap(),
        ];
        let csv = report_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "A,3,14,448,84,1/84,15/40320,false,closed-form-mismatch");
        assert_eq!(lines[2], "B,2,,6,,,2/24,,");
    }

    #[test]
    fn rank_must_agree() {
        assert!(key_recovery_probability(Family::A, 2, Some(&graph(Family::A, 3))).is_err());
        assert!(key_recovery_probability(Family::D, 3, None).is_err());
    }
}
