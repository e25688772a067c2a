//! File formats for strata reports and point counts.

use std::collections::BTreeMap;

use anyhow::Context;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use krstrata::prank::{count_polynomials, StrataReport, StratumRecord};
use krstrata::{AffinePermutation, Coweight, IntPolynomial};

/// The JSON report. Windows are integer arrays, polynomials ascending
/// coefficient arrays.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ReportFile {
    pub group: String,
    pub n: usize,
    pub mu: Coweight,
    pub elements: Vec<ElementRow>,
    pub total_polynomial: IntPolynomial,
    pub count_polynomials: BTreeMap<usize, IntPolynomial>,
    pub hasse_edges: Vec<(AffinePermutation, AffinePermutation)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ElementRow {
    pub window: AffinePermutation,
    pub length: usize,
    pub p_rank: usize,
    pub is_translation: bool,
    pub translation_part: Coweight,
}

impl ReportFile {
    pub fn from_report(rep: &StrataReport) -> Self {
        ReportFile {
            group: rep.group().to_string(),
            n: rep.n,
            mu: Coweight::fundamental(2 * rep.n, rep.n),
            elements: rep
                .records
                .iter()
                .map(|r| ElementRow {
                    window: r.element.clone(),
                    length: r.length,
                    p_rank: r.p_rank,
                    is_translation: r.is_translation,
                    translation_part: r.translation_part.clone(),
                })
                .collect(),
            total_polynomial: rep.total_polynomial.clone(),
            count_polynomials: rep.count_polynomials.clone(),
            hasse_edges: rep.hasse_edges.clone(),
        }
    }

    /// Aggregates recomputed from the element rows alone.
    pub fn recompute_aggregates(&self) -> (BTreeMap<usize, IntPolynomial>, IntPolynomial) {
        let records: Vec<StratumRecord> = self
            .elements
            .iter()
            .map(|e| StratumRecord {
                element: e.window.clone(),
                length: e.length,
                p_rank: e.p_rank,
                is_translation: e.is_translation,
                translation_part: e.translation_part.clone(),
            })
            .collect();
        count_polynomials(&records)
    }

    pub fn aggregates_consistent(&self) -> bool {
        let (by_rank, total) = self.recompute_aggregates();
        by_rank == self.count_polynomials && total == self.total_polynomial
    }
}

pub fn to_json(rep: &StrataReport) -> anyhow::Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(&ReportFile::from_report(rep)).context("serializing report")?;
    v.push(b'\n');
    Ok(v)
}

pub fn window_string(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// One row per element.
pub fn to_csv(rep: &StrataReport) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["window", "length", "p_rank", "is_translation", "translation_part"])
        .context("writing CSV")?;
    for r in &rep.records {
        w.write_record([
            window_string(r.element.window()),
            r.length.to_string(),
            r.p_rank.to_string(),
            r.is_translation.to_string(),
            window_string(r.translation_part.entries()),
        ])
        .context("writing CSV")?;
    }
    w.into_inner().context("flushing CSV")
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PointSummary {
    pub n: usize,
    pub q: u64,
    pub total: u64,
    pub by_p_rank: BTreeMap<usize, u64>,
    pub matches_polynomial: bool,
}

impl PointSummary {
    /// Compares the histogram with the count polynomials evaluated at `q`.
    pub fn new(n: usize, q: u64, by_p_rank: BTreeMap<usize, u64>, rep: &StrataReport) -> Self {
        let qb = BigInt::from(q);
        let expected: BTreeMap<usize, BigInt> = rep
            .count_polynomials
            .iter()
            .map(|(&r, p)| (r, p.eval(&qb)))
            .collect();
        let actual: BTreeMap<usize, BigInt> = by_p_rank.iter().map(|(&r, &c)| (r, BigInt::from(c))).collect();
        let total = by_p_rank.values().sum();
        let matches_polynomial =
            expected == actual && rep.total_polynomial.eval(&qb) == BigInt::from(total);
        PointSummary {
            n,
            q,
            total,
            by_p_rank,
            matches_polynomial,
        }
    }
}
