//! The p-rank `r(w)` of a stratum and stratification reports over `KR(mu)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::{enumerate_perm_gsp, is_permissible_gsp, orbit_translations, MAX_ADM_N};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::weyl::{AffinePermutation, Coweight, Group, GspElement, WeylGroup};

pub const MAX_REPORT_N: usize = 4;

/// Number of "diagonal t" slots: `#{i in 1..2n : w(i) = i + 2n}`.
///
/// Cross-checked against half the number of fixed points of the finite part;
/// a disagreement means the orientation convention is broken.
pub fn p_rank(w: &GspElement) -> Result<usize> {
    if !is_permissible_gsp(w) {
        return Err(Error::NotPermissible {
            window: w.perm().window().to_vec(),
        });
    }
    let d = w.perm().period() as i64;
    let mut diagonal = 0;
    for (i, &v) in w.perm().window().iter().enumerate() {
        let offset = v - (i as i64 + 1);
        if offset.rem_euclid(d) != 0 {
            continue;
        }
        match offset {
            0 => {}
            o if o == d => diagonal += 1,
            _ => {
                return Err(Error::InvariantViolation(format!(
                    "{w}: fixed residue {} moved by {offset}",
                    i + 1
                )))
            }
        }
    }
    let fixed = w.perm().finite_fixed_points();
    if !fixed.is_multiple_of(2) || fixed / 2 != diagonal {
        return Err(Error::FormulaMismatch {
            window: w.perm().window().to_vec(),
            diagonal,
            fixed,
        });
    }
    Ok(diagonal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub element: AffinePermutation,
    /// Dimension of the stratum.
    pub length: usize,
    pub p_rank: usize,
    pub is_translation: bool,
    pub translation_part: Coweight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataReport {
    pub n: usize,
    /// Sorted by window.
    pub records: Vec<StratumRecord>,
    /// Bruhat covers `(lower, upper)` inside the set, sorted.
    pub hasse_edges: Vec<(AffinePermutation, AffinePermutation)>,
    pub count_polynomials: BTreeMap<usize, IntPolynomial>,
    pub total_polynomial: IntPolynomial,
}

impl StrataReport {
    pub fn group(&self) -> Group {
        Group::Gsp(self.n)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn record(&self, w: &AffinePermutation) -> Option<&StratumRecord> {
        self.records
            .binary_search_by(|r| r.element.cmp(w))
            .ok()
            .map(|i| &self.records[i])
    }
}

/// `sum q^length` over the records, and the same sum split by p-rank.
pub fn count_polynomials(
    records: &[StratumRecord],
) -> (BTreeMap<usize, IntPolynomial>, IntPolynomial) {
    let mut by_rank: BTreeMap<usize, IntPolynomial> = BTreeMap::new();
    let mut total = IntPolynomial::zero();
    for r in records {
        let mono = IntPolynomial::monomial(1, r.length);
        total = &total + &mono;
        let slot = by_rank.entry(r.p_rank).or_default();
        *slot = &*slot + &mono;
    }
    (by_rank, total)
}

pub fn strata_report(n: usize, weyl: &WeylGroup) -> Result<StrataReport> {
    if n == 0 || n > MAX_REPORT_N {
        return Err(Error::SizeLimit {
            what: format!("strata report for n = {n}"),
            limit: format!("1 <= n <= {MAX_REPORT_N}"),
        });
    }
    if weyl.group() != Group::Gsp(n) {
        return Err(Error::PeriodMismatch {
            left: 2 * n,
            right: weyl.group().period(),
        });
    }
    let kr = enumerate_perm_gsp(n)?;
    let records = kr
        .gsp_elements()
        .into_par_iter()
        .map(|g| {
            Ok(StratumRecord {
                length: g.length(),
                p_rank: p_rank(&g)?,
                is_translation: g.perm().is_translation(),
                translation_part: g.perm().translation_part(),
                element: g.into_perm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut hasse_edges = records
        .par_iter()
        .map(|lo| {
            let mut ups = Vec::new();
            for hi in records.iter().filter(|hi| hi.length == lo.length + 1) {
                if weyl.bruhat_leq(&lo.element, &hi.element)? {
                    ups.push((lo.element.clone(), hi.element.clone()));
                }
            }
            Ok(ups)
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    hasse_edges.sort();

    let (count_polynomials, total_polynomial) = count_polynomials(&records);
    Ok(StrataReport {
        n,
        records,
        hasse_edges,
        count_polynomials,
        total_polynomial,
    })
}

/// Elements with no strictly larger element of the report in Bruhat order.
pub fn maximal_elements(report: &StrataReport, weyl: &WeylGroup) -> Result<BTreeSet<AffinePermutation>> {
    let mut out = BTreeSet::new();
    for r in &report.records {
        let mut maximal = true;
        for s in report.records.iter().filter(|s| s.length > r.length) {
            if weyl.bruhat_leq(&r.element, &s.element)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            out.insert(r.element.clone());
        }
    }
    Ok(out)
}

/// Every stratum lies in the closure of an ordinary one: each `w` in
/// `Perm(mu)` is below some translation `t_{y mu}`.
pub fn density_check(n: usize, weyl: &WeylGroup) -> Result<bool> {
    if n == 0 || n > MAX_ADM_N {
        return Err(Error::SizeLimit {
            what: format!("density check for n = {n}"),
            limit: format!("1 <= n <= {MAX_ADM_N}"),
        });
    }
    let kr = enumerate_perm_gsp(n)?;
    let translations = orbit_translations(n);
    let failures: Vec<Result<bool>> = kr
        .elements
        .par_iter()
        .map(|w| {
            for t in &translations {
                if weyl.bruhat_leq(w, t)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect();
    for f in failures {
        if !f? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Records of maximal p-rank.
pub fn ordinary_strata(report: &StrataReport) -> Vec<&StratumRecord> {
    report
        .records
        .iter()
        .filter(|r| r.p_rank == report.n)
        .collect()
}

/// Graphviz digraph of the Bruhat covers, nodes in window order.
pub fn hasse_dot(report: &StrataReport) -> String {
    let mut out = String::from("digraph KR {\n");
    let id = |w: &AffinePermutation| format!("\"{w}\"");
    for r in &report.records {
        let _ = writeln!(
            out,
            "  {} [label=\"{} | {} | {}\"];",
            id(&r.element),
            r.element,
            r.length,
            r.p_rank
        );
    }
    for (lo, hi) in &report.hasse_edges {
        let _ = writeln!(out, "  {} -> {};", id(lo), id(hi));
    }
    out.push_str("}\n");
    out
}
