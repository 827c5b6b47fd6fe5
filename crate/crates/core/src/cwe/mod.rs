//! Complete weight enumerators and weight distributions.

mod brute;
mod closed;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::Composition;
use crate::error::{Error, Result};

pub use brute::cwe_brute;
pub use closed::{closed_terms, cwe_closed, table_closed, table_rows, ClosedTerm, TableRow};
pub use verify::{verify, DefiningSetSummary, Diff, FormalRow, Mode, TaggedCwe, TaggedTerm, Verdict, VerificationReport};

/// A complete weight enumerator: composition -> number of codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwePolynomial {
    n: u64,
    terms: BTreeMap<Composition, u64>,
}

impl CwePolynomial {
    pub fn new(n: u64) -> Self {
        CwePolynomial { n, terms: BTreeMap::new() }
    }

    /// Adds `frequency` codewords of the given composition. Zero frequencies
    /// are ignored.
    pub fn add(&mut self, composition: Composition, frequency: u64) -> Result<()> {
        if composition.length() != self.n {
            return Err(Error::Internal(format!(
                "composition {composition} does not sum to the length {}",
                self.n
            )));
        }
        if frequency > 0 {
            *self.terms.entry(composition).or_insert(0) += frequency;
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Composition, u64> {
        &self.terms
    }

    pub fn frequency(&self, composition: &Composition) -> u64 {
        self.terms.get(composition).copied().unwrap_or(0)
    }

    /// Sum of all frequencies, the number of codewords counted.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        weight_distribution_of(self)
    }
}

#[derive(Serialize, Deserialize)]
struct CweTermRepr {
    composition: Composition,
    frequency: u64,
}

#[derive(Serialize, Deserialize)]
struct CweRepr {
    n: u64,
    terms: Vec<CweTermRepr>,
}

impl Serialize for CwePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CweRepr {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, &f)| CweTermRepr { composition: c.clone(), frequency: f })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CwePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CweRepr::deserialize(d)?;
        let mut cwe = CwePolynomial::new(repr.n);
        for t in repr.terms {
            cwe.add(t.composition, t.frequency).map_err(serde::de::Error::custom)?;
        }
        Ok(cwe)
    }
}

/// Hamming weight -> number of codewords of that weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightDistribution {
    rows: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, weight: u64, multiplicity: u64) {
        if multiplicity > 0 {
            *self.rows.entry(weight).or_insert(0) += multiplicity;
        }
    }

    pub fn rows(&self) -> &BTreeMap<u64, u64> {
        &self.rows
    }

    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }
}

impl FromIterator<(u64, u64)> for WeightDistribution {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut wd = WeightDistribution::new();
        for (w, a) in iter {
            wd.add(w, a);
        }
        wd
    }
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    w: u64,
    #[serde(rename = "A")]
    a: u64,
}

#[derive(Serialize, Deserialize)]
struct WdRepr {
    rows: Vec<RowRepr>,
}

impl Serialize for WeightDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WdRepr { rows: self.rows.iter().map(|(&w, &a)| RowRepr { w, a }).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(WdRepr::deserialize(d)?.rows.into_iter().map(|r| (r.w, r.a)).collect())
    }
}

/// Each composition contributes its frequency at weight n - t_0.
pub fn weight_distribution_of(cwe: &CwePolynomial) -> WeightDistribution {
    cwe.terms.iter().map(|(c, &f)| (c.weight(), f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes_round_trip() {
        let mut cwe = CwePolynomial::new(3);
        cwe.add(Composition(vec![1, 2, 0]), 4).unwrap();
        cwe.add(Composition(vec![0, 3, 0]), 1).unwrap();
        cwe.add(Composition(vec![1, 2, 0]), 1).unwrap();
        let json = serde_json::to_string(&cwe).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"terms":[{"composition":[0,3,0],"frequency":1},{"composition":[1,2,0],"frequency":5}]}"#
        );
        assert_eq!(serde_json::from_str::<CwePolynomial>(&json).unwrap(), cwe);

        let wd = weight_distribution_of(&cwe);
        let json = serde_json::to_string(&wd).unwrap();
        assert_eq!(json, r#"{"rows":[{"w":2,"A":5},{"w":3,"A":1}]}"#);
        assert_eq!(serde_json::from_str::<WeightDistribution>(&json).unwrap(), wd);
    }

    #[test]
    fn wrong_length_composition_is_rejected() {
        let mut cwe = CwePolynomial::new(3);
        assert!(cwe.add(Composition(vec![1, 1, 0]), 1).is_err());
    }

    #[test]
    fn zero_rows_are_dropped() {
        let wd: WeightDistribution = [(5, 0), (8, 9), (8, 1)].into_iter().collect();
        assert_eq!(wd.rows().iter().map(|(&w, &a)| (w, a)).collect::<Vec<_>>(), vec![(8, 10)]);
    }
}
