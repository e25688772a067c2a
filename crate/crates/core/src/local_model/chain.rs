//! Points of the special fiber as chains of subspaces `L_i ⊂ V_i / t V_i`.
//!
//! With the index model of [`crate::weyl::perm`], `V_i = span{index > i}` and
//! `V_i / t V_i` has basis the indices `i+1, ..., i+d`; coordinate `k` of a
//! vector in `V_i / t V_i` is the coefficient of index `i+1+k`. The inclusion
//! `V_i -> V_{i-1}` becomes the shift `k -> k+1` on coordinates, killing the
//! last one (the index `i+d = t * (index i)`).
//!
//! The symplectic form is `<e_a, e_b> = eps_a [a + b = d + 1]` with
//! `eps_a = +1` for `a <= n` and `-1` otherwise, extended `t`-bilinearly.
//! `t^{-1} <,>` reduces to a perfect pairing `V_i/tV_i x V_{d-i}/tV_{d-i}`,
//! nonzero only on indices with `iota + kappa = 2d + 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::is_permissible_gsp;
use crate::error::{Error, Result};
use crate::local_model::field::{Fq, Subspace};
use crate::weyl::{AffinePermutation, GspElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubspaceChain {
    pub n: usize,
    pub q: u64,
    /// `L_0, ..., L_{2n}`; `L_{2n}` has the same coordinates as `L_0`.
    pub spaces: Vec<Subspace>,
}

fn eps(n: usize, iota: i64) -> i64 {
    let d = 2 * n as i64;
    let a = (iota - 1).rem_euclid(d) + 1;
    if a <= n as i64 {
        1
    } else {
        -1
    }
}

/// `t^{-1} <u, v>` for `u in V_i / t V_i`, `v in V_{d-i} / t V_{d-i}`.
fn pairing(fq: &Fq, n: usize, i: usize, u: &[u32], v: &[u32]) -> u32 {
    let d = 2 * n;
    let mut acc = 0;
    for k in 0..d {
        let iota = (i + 1 + k) as i64;
        // partner index 2d + 1 - iota sits at coordinate d - 1 - k of V_{d-i}
        let term = fq.mul(u[k], v[d - 1 - k]);
        let term = if eps(n, iota) == 1 { term } else { fq.neg(term) };
        acc = fq.add(acc, term);
    }
    acc
}

fn alpha(v: &[u32]) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    out[1..].copy_from_slice(&v[..v.len() - 1]);
    out
}

fn maps_into(fq: &Fq, upper: &Subspace, lower: &Subspace) -> bool {
    upper.basis().iter().all(|v| lower.contains(fq, &alpha(v)))
}

/// `L^perp` inside `V_{d-i} / t V_{d-i}`.
fn orthogonal(fq: &Fq, n: usize, i: usize, l: &Subspace) -> Subspace {
    let d = 2 * n;
    // row for u: the linear functional v -> pairing(u, v)
    let rows: Vec<Vec<u32>> = l
        .basis()
        .iter()
        .map(|u| {
            (0..d)
                .map(|c| {
                    let mut e = vec![0; d];
                    e[c] = 1;
                    pairing(fq, n, i, u, &e)
                })
                .collect()
        })
        .collect();
    let basis = if rows.is_empty() {
        (0..d)
            .map(|c| {
                let mut e = vec![0; d];
                e[c] = 1;
                e
            })
            .collect()
    } else {
        fq.nullspace(rows, d)
    };
    Subspace::span(fq, d, basis)
}

fn is_isotropic(fq: &Fq, n: usize, i: usize, l: &Subspace) -> bool {
    l.basis()
        .iter()
        .all(|u| l.basis().iter().all(|v| pairing(fq, n, i, u, v) == 0))
}

pub fn max_points_q(n: usize) -> u64 {
    match n {
        1 => 7,
        2 => 3,
        _ => 0,
    }
}

impl SubspaceChain {
    pub fn d(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> Fq {
        Fq::new(self.q).expect("chains are built over supported fields")
    }

    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }

    /// Checks dimensions, the chain condition `alpha(L_i) ⊂ L_{i-1}`,
    /// periodicity and `L_{d-i} = L_i^perp`.
    pub fn validate(&self) -> Result<()> {
        let fq = Fq::new(self.q)?;
        let (n, d) = (self.n, self.d());
        if self.spaces.len() != d + 1 {
            return Err(Error::InvariantViolation(format!(
                "chain has {} spaces, expected {}",
                self.spaces.len(),
                d + 1
            )));
        }
        for (index, s) in self.spaces.iter().enumerate() {
            if s.dim() != n || s.ambient() != d {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: n,
                    got: s.dim(),
                });
            }
        }
        if self.spaces[d] != self.spaces[0] {
            return Err(Error::InvariantViolation("L_2n differs from t L_0".into()));
        }
        for i in 1..=d {
            if !maps_into(&fq, &self.spaces[i], &self.spaces[i - 1]) {
                return Err(Error::InvariantViolation(format!(
                    "alpha(L_{i}) is not contained in L_{}",
                    i - 1
                )));
            }
        }
        for i in 0..=n {
            if orthogonal(&fq, n, i, &self.spaces[i]) != self.spaces[d - i] {
                return Err(Error::InvariantViolation(format!(
                    "L_{} is not the annihilator of L_{i}",
                    d - i
                )));
            }
        }
        Ok(())
    }

    /// `L_i ∩ ker(V_i/tV_i -> V_{i-1}/tV_{i-1}) = 0`, for `1 <= i <= 2n`.
    pub fn condition1(&self, i: usize) -> bool {
        let d = self.d();
        let mut kernel = vec![0; d];
        kernel[d - 1] = 1;
        !self.spaces[i].contains(&self.field(), &kernel)
    }

    /// `L_{i-1} ⊄ V_i`, for `1 <= i <= 2n`.
    pub fn condition2(&self, i: usize) -> bool {
        self.spaces[i - 1].basis().iter().any(|v| v[0] != 0)
    }

    /// The two conditions are exchanged by duality: condition 1 at `i` is
    /// condition 2 at `2n + 1 - i`, and the two never hold at the same `i`.
    pub fn duality_pairing_holds(&self) -> bool {
        let d = self.d();
        (1..=d).all(|i| {
            self.condition1(i) == self.condition2(d + 1 - i)
                && !(self.condition1(i) && self.condition2(i))
        })
    }
}

/// Number of indices where condition 1 holds.
pub fn point_p_rank(pt: &SubspaceChain) -> usize {
    (1..=pt.d()).filter(|&i| pt.condition1(i)).count()
}

/// Every `F_q`-point: `L_0` and `L_n` isotropic, `alpha(L_{i+1}) ⊂ L_i` for
/// `i < n`, and the rest of the chain by duality.
pub fn enumerate_points(n: usize, q: u64) -> Result<Vec<SubspaceChain>> {
    let fq = Fq::new(q)?;
    if !(1..=2).contains(&n) || q > max_points_q(n) {
        return Err(Error::SizeLimit {
            what: format!("point enumeration for n = {n}, q = {q}"),
            limit: "n = 1 with q <= 7, or n = 2 with q <= 3".into(),
        });
    }
    let d = 2 * n;
    let all = Subspace::all(&fq, d, n);
    let lagrangian_0: Vec<&Subspace> = all.iter().filter(|l| is_isotropic(&fq, n, 0, l)).collect();
    let mut points: Vec<SubspaceChain> = lagrangian_0
        .par_iter()
        .flat_map_iter(|l0| {
            let mut partial = vec![vec![(*l0).clone()]];
            for i in 1..=n {
                let mut next = Vec::new();
                for chain in partial {
                    for cand in all.iter().filter(|c| maps_into(&fq, c, &chain[i - 1])) {
                        if i == n && !is_isotropic(&fq, n, n, cand) {
                            continue;
                        }
                        let mut c = chain.clone();
                        c.push(cand.clone());
                        next.push(c);
                    }
                }
                partial = next;
            }
            partial.into_iter().filter_map(|mut spaces| {
                for i in (0..n).rev() {
                    let perp = orthogonal(&fq, n, i, &spaces[i]);
                    spaces.push(perp);
                }
                let pt = SubspaceChain { n, q, spaces };
                pt.validate().is_ok().then_some(pt)
            })
        })
        .collect();
    points.sort();
    Ok(points)
}

/// `L_i = w V_i` reduced mod `t V_i`: the indices `w(j)`, `j > i`, lying in
/// `(i, i + 2n]`.
pub fn orbit_rep(w: &GspElement, q: u64) -> Result<SubspaceChain> {
    let fq = Fq::new(q)?;
    if !is_permissible_gsp(w) {
        return Err(Error::NotPermissible {
            window: w.perm().window().to_vec(),
        });
    }
    let n = w.n();
    let d = 2 * n as i64;
    let winv = w.perm().inverse();
    let mut spaces = Vec::with_capacity(2 * n + 1);
    for i in 0..=d {
        let basis: Vec<Vec<u32>> = ((i + 1)..=(i + d))
            .filter(|&iota| winv.apply(iota) > i)
            .map(|iota| {
                let mut e = vec![0; d as usize];
                e[(iota - i - 1) as usize] = 1;
                e
            })
            .collect();
        if basis.len() != n {
            return Err(Error::DimensionMismatch {
                index: i as usize,
                expected: n,
                got: basis.len(),
            });
        }
        spaces.push(Subspace::span(&fq, d as usize, basis));
    }
    Ok(SubspaceChain { n, q, spaces })
}

/// The `w` with `pt` in the Iwahori orbit of `orbit_rep(w)`.
///
/// The leading indices of the lattice `L_i` (first nonzero coordinate of its
/// vectors, plus everything above `i + 2n`) are `dim(L_i ∩ V_j)` jumps and so
/// Iwahori-invariant; on `orbit_rep(w)` they are exactly `w V_i`, and
/// `w(i + 1)` is the one index in `w V_i` but not `w V_{i+1}`.
pub fn cell_of_point(pt: &SubspaceChain) -> Result<GspElement> {
    let d = pt.d() as i64;
    let leading = |i: i64| -> Vec<i64> {
        let mut idx: Vec<i64> = pt.spaces[i as usize]
            .pivots()
            .into_iter()
            .map(|k| i + 1 + k as i64)
            .collect();
        idx.sort();
        idx
    };
    let mut window = Vec::with_capacity(d as usize);
    for i in 0..d {
        let upper = leading(i);
        let lower = leading(i + 1);
        // W_i = upper ∪ (i+d, ∞) must contain W_{i+1} = lower ∪ (i+d+1, ∞)
        // with exactly one index to spare
        let mut missing: Vec<i64> = upper.iter().copied().filter(|x| !lower.contains(x)).collect();
        if !lower.contains(&(i + d + 1)) {
            missing.push(i + d + 1);
        }
        let nested = lower.iter().all(|x| upper.contains(x) || *x == i + d + 1);
        if missing.len() != 1 || !nested {
            return Err(Error::NormalFormFailure(format!(
                "leading indices {upper:?} and {lower:?} at step {i} are not nested"
            )));
        }
        window.push(missing[0]);
    }
    let perm = AffinePermutation::new(window.clone())
        .map_err(|_| Error::NormalFormFailure(format!("window {window:?} is not a permutation")))?;
    let g = GspElement::new(perm)
        .map_err(|_| Error::NormalFormFailure(format!("window {window:?} is not symplectic")))?;
    if !is_permissible_gsp(&g) {
        return Err(Error::NormalFormFailure(format!("window {window:?} is not permissible")));
    }
    Ok(g)
}

/// Histogram of `point_p_rank` over all points.
pub fn stratified_count(n: usize, q: u64) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for pt in enumerate_points(n, q)? {
        *out.entry(point_p_rank(&pt)).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::{enumerate_perm_gsp, orbit_translations};

    #[test]
    fn n1_counts() {
        for q in [2u64, 3, 5, 7] {
            let pts = enumerate_points(1, q).unwrap();
            assert_eq!(pts.len() as u64, 2 * q + 1);
        }
        let hist = stratified_count(1, 2).unwrap();
        assert_eq!(hist, BTreeMap::from([(0, 1), (1, 4)]));
        assert!(matches!(enumerate_points(2, 5), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_points(3, 2), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_points(1, 4), Err(Error::UnsupportedField(4))));
    }

    #[test]
    fn orbit_reps_are_points() {
        for n in 1..=2 {
            for w in enumerate_perm_gsp(n).unwrap().gsp_elements() {
                for q in [2, 3] {
                    let pt = orbit_rep(&w, q).unwrap();
                    pt.validate().unwrap();
                    assert!(pt.duality_pairing_holds());
                    assert_eq!(cell_of_point(&pt).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn orbit_rep_ranks() {
        for n in 1..=2 {
            for t in orbit_translations(n) {
                let pt = orbit_rep(&GspElement::new(t).unwrap(), 2).unwrap();
                assert_eq!(point_p_rank(&pt), n);
            }
        }
        let tau = GspElement::from_window(vec![2, 3]).unwrap();
        assert_eq!(point_p_rank(&orbit_rep(&tau, 2).unwrap()), 0);
        // t_(1,0): L_0 is the line of index 2
        let t = GspElement::from_window(vec![3, 2]).unwrap();
        let pt = orbit_rep(&t, 2).unwrap();
        assert_eq!(pt.space(0).basis(), &[vec![0, 1]]);
    }

    #[test]
    fn n1_cells_partition() {
        let pts = enumerate_points(1, 2).unwrap();
        let mut sizes = BTreeMap::new();
        for pt in &pts {
            assert!(pt.duality_pairing_holds());
            *sizes.entry(cell_of_point(pt).unwrap().into_perm()).or_insert(0) += 1;
        }
        let mut counts: Vec<_> = sizes.values().copied().collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2, 2]);
    }
}
