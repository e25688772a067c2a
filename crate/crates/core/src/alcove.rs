//! Base-alcove vertices, the Kottwitz-Rapoport permissibility test in its
//! vertex and lattice forms, and enumeration of the permissible and
//! admissible sets for the minuscule coweight `mu = (1^n, 0^n)` of `GSp(2n)`.
//!
//! Lattices are encoded through the index model of [`crate::weyl::perm`]:
//! the standard chain is `V_i = span{index > i}`, descending in `i`, with
//! `V_{i+d} = t V_i`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{AffinePermutation, Coweight, Group, GspElement, WeylGroup};

pub const MAX_PERM_N: usize = 5;
pub const MAX_ADM_N: usize = 3;

/// Vertices `a_0 = 0, a_i = (1^i, 0^{d-i})` of the base alcove.
pub fn base_alcove_vertices(d: usize) -> Vec<Coweight> {
    (0..d).map(|i| Coweight::fundamental(d, i)).collect()
}

/// `w(a_i) - a_i` under `v -> x(v + lambda)`.
pub fn vertex_displacement(w: &AffinePermutation, i: usize) -> Result<Coweight> {
    let d = w.period();
    if i >= d {
        return Err(Error::IndexOutOfRange { index: i, bound: d });
    }
    let a = Coweight::fundamental(d, i);
    let image = w.act(&a)?;
    Ok(Coweight(
        image.0.iter().zip(&a.0).map(|(u, v)| u - v).collect(),
    ))
}

fn is_minuscule_conjugate(v: &Coweight, r: usize) -> bool {
    v.0.iter().all(|&e| e == 0 || e == 1) && v.sum() == r as i64
}

/// `mu`-permissibility for `mu = (1^r, 0^{d-r})` in `GL(d)`: every vertex
/// displacement is a 0/1 vector with exactly `r` ones.
pub fn is_permissible_gl(w: &AffinePermutation, r: usize) -> bool {
    if w.val_det() != r as i64 {
        return false;
    }
    (0..w.period()).all(|i| {
        vertex_displacement(w, i)
            .map(|v| is_minuscule_conjugate(&v, r))
            .unwrap_or(false)
    })
}

/// Permissibility in `GSp(2n)`: the image in `GL(2n)` is permissible for
/// `mu = (1^n, 0^n)`.
pub fn is_permissible_gsp(w: &GspElement) -> bool {
    is_permissible_gl(w.perm(), w.n())
}

/// Lattice form: `V_i ⊇ w V_i ⊇ t V_i` for `i = 0..d-1`. With
/// `w V_i = {w(j) : j > i}` this is `min w((i, i+d]) > i` together with
/// `max w((i-d, i]) <= i + d`.
pub fn is_permissible_lattice(w: &AffinePermutation, r: usize) -> Result<bool> {
    let actual = w.val_det();
    if actual != r as i64 {
        return Err(Error::ValDetMismatch {
            expected: r as i64,
            actual,
        });
    }
    let d = w.period() as i64;
    Ok((0..d).all(|i| {
        let inside = ((i + 1)..=(i + d)).map(|j| w.apply(j)).min().expect("d >= 1") > i;
        let above = ((i - d + 1)..=i).map(|j| w.apply(j)).max().expect("d >= 1") <= i + d;
        inside && above
    }))
}

/// The `2^n` vectors `v in {0,1}^{2n}` with `v_i + v_{2n+1-i} = 1`.
pub fn weyl_orbit_mu(n: usize) -> Vec<Coweight> {
    let d = 2 * n;
    let mut out: Vec<Coweight> = (0u64..(1u64 << n))
        .map(|bits| {
            let mut v = vec![0i64; d];
            for i in 0..n {
                let b = ((bits >> i) & 1) as i64;
                v[i] = b;
                v[d - 1 - i] = 1 - b;
            }
            Coweight(v)
        })
        .collect();
    out.sort();
    out.reverse();
    out
}

/// The translations `t_{y mu}`, one per element of the orbit.
pub fn orbit_translations(n: usize) -> Vec<AffinePermutation> {
    weyl_orbit_mu(n)
        .iter()
        .map(AffinePermutation::translation)
        .collect()
}

/// A finite subset of `W~_a(GSp(2n))` attached to `mu = (1^n, 0^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrSet {
    pub n: usize,
    pub mu: Coweight,
    pub elements: BTreeSet<AffinePermutation>,
}

impl KrSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &AffinePermutation) -> bool {
        self.elements.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AffinePermutation> {
        self.elements.iter()
    }

    pub fn gsp_elements(&self) -> Vec<GspElement> {
        self.elements
            .iter()
            .map(|w| GspElement::new(w.clone()).expect("KR elements lie in GSp"))
            .collect()
    }
}

/// `Perm(mu)` by exhaustive search over `x * t_lambda` with `x` a signed
/// permutation and `lambda` in the Weyl orbit of `mu` (the `a_0`
/// displacement is `x(lambda)`, which forces `lambda in W mu`).
pub fn enumerate_perm_gsp(n: usize) -> Result<KrSet> {
    if n == 0 || n > MAX_PERM_N {
        return Err(Error::SizeLimit {
            what: format!("Perm(mu) for n = {n}"),
            limit: format!("1 <= n <= {MAX_PERM_N}"),
        });
    }
    let finite = Group::Gsp(n).finite_weyl_group();
    let orbit = weyl_orbit_mu(n);
    let elements: BTreeSet<AffinePermutation> = finite
        .par_iter()
        .flat_map_iter(|x| {
            orbit.iter().filter_map(move |lambda| {
                let w = AffinePermutation::from_parts(x, lambda).expect("same period");
                let g = GspElement::new(w).expect("signed permutations preserve the constraint");
                is_permissible_gsp(&g).then(|| g.into_perm())
            })
        })
        .collect();
    Ok(KrSet {
        n,
        mu: Coweight::fundamental(2 * n, n),
        elements,
    })
}

/// `Adm(mu) = {w : w <= t_{y mu} for some y}`, generated as the union of the
/// Bruhat down-sets of the translations and confirmed element-wise with the
/// lifting-property comparison in `group`.
pub fn enumerate_adm_gsp(n: usize, group: &WeylGroup) -> Result<KrSet> {
    if n == 0 || n > MAX_ADM_N {
        return Err(Error::SizeLimit {
            what: format!("Adm(mu) for n = {n}"),
            limit: format!("1 <= n <= {MAX_ADM_N}"),
        });
    }
    if group.group() != Group::Gsp(n) {
        return Err(Error::PeriodMismatch {
            left: 2 * n,
            right: group.group().period(),
        });
    }
    let translations = orbit_translations(n);
    let mut elements = BTreeSet::new();
    for t in &translations {
        elements.extend(group.group().bruhat_down_set(t)?);
    }
    for w in &elements {
        let mut below = false;
        for t in &translations {
            if group.bruhat_leq(w, t)? {
                below = true;
                break;
            }
        }
        if !below {
            return Err(Error::InvariantViolation(format!(
                "{w} lies in a translation down-set but is not Bruhat-below any translation"
            )));
        }
    }
    Ok(KrSet {
        n,
        mu: Coweight::fundamental(2 * n, n),
        elements,
    })
}
