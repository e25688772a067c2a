//! Affine permutations: the window model of the extended affine Weyl group
//! of `GL(d)`.
//!
//! An element is a bijection `w: Z -> Z` with `w(i + d) = w(i) + d`, stored by
//! its window `[w(1), ..., w(d)]`. The monomial vector `t^m e_j` is encoded by
//! the index `j + d*m`, so `w(j) = k + d*m` means `w` sends `e_j` to `t^m e_k`.
//! Composition is composition of functions on `Z`: `(a * b)(i) = a(b(i))`.
//!
//! Every element factors uniquely as `w = x * t_lambda` with `x` a permutation
//! of `{1..d}` and `t_lambda(i) = i + d * lambda_i`, so `w(i) = x(i) + d * lambda_i`.
//! On coweights this is the affine map `v -> x(v + lambda)` where
//! `(x v)_{x(i)} = v_i`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer vector in `Z^d`: translation parts, `mu`, Weyl orbit vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn zero(d: usize) -> Self {
        Coweight(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `(1, ..., 1, 0, ..., 0)` with `r` ones.
    pub fn fundamental(d: usize, r: usize) -> Self {
        Coweight((0..d).map(|i| i64::from(i < r)).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl TryFrom<Vec<i64>> for AffinePermutation {
    type Error = Error;

    fn try_from(window: Vec<i64>) -> Result<Self> {
        AffinePermutation::new(window)
    }
}

impl From<AffinePermutation> for Vec<i64> {
    fn from(w: AffinePermutation) -> Vec<i64> {
        w.window
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Residue of `i` in `1..=d` and the shift `k` with `i = r + k*d`.
#[inline]
fn split(i: i64, d: i64) -> (i64, i64) {
    let r = (i - 1).rem_euclid(d) + 1;
    (r, (i - r) / d)
}

impl AffinePermutation {
    /// Validates a window; rejects windows whose entries are not a
    /// permutation of `{1..d}` modulo `d`.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let d = window.len();
        if d == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut seen: Vec<Option<i64>> = vec![None; d];
        for &v in &window {
            let r = (v - 1).rem_euclid(d as i64) as usize;
            if let Some(first) = seen[r] {
                return Err(Error::DuplicateResidue {
                    first,
                    second: v,
                    period: d,
                });
            }
            seen[r] = Some(v);
        }
        Ok(AffinePermutation { window })
    }

    pub fn identity(d: usize) -> Self {
        AffinePermutation {
            window: (1..=d as i64).collect(),
        }
    }

    /// The pure translation `t_lambda`.
    pub fn translation(lambda: &Coweight) -> Self {
        let d = lambda.dim() as i64;
        AffinePermutation {
            window: lambda
                .0
                .iter()
                .enumerate()
                .map(|(i, l)| i as i64 + 1 + d * l)
                .collect(),
        }
    }

    /// Rebuilds `x * t_lambda` from a finite permutation and a translation.
    pub fn from_parts(finite: &AffinePermutation, lambda: &Coweight) -> Result<Self> {
        let d = finite.period();
        if lambda.dim() != d {
            return Err(Error::CoweightLength {
                expected: d,
                got: lambda.dim(),
            });
        }
        finite.compose(&AffinePermutation::translation(lambda))
    }

    pub fn period(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn apply(&self, i: i64) -> i64 {
        let d = self.window.len() as i64;
        let (r, k) = split(i, d);
        self.window[(r - 1) as usize] + k * d
    }

    pub fn inverse(&self) -> Self {
        let d = self.window.len() as i64;
        let mut window = vec![0; self.window.len()];
        for (i, &v) in self.window.iter().enumerate() {
            let (r, k) = split(v, d);
            window[(r - 1) as usize] = i as i64 + 1 - k * d;
        }
        AffinePermutation { window }
    }

    pub fn compose(&self, other: &AffinePermutation) -> Result<Self> {
        if self.period() != other.period() {
            return Err(Error::PeriodMismatch {
                left: self.period(),
                right: other.period(),
            });
        }
        Ok(AffinePermutation {
            window: other.window.iter().map(|&v| self.apply(v)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i64 + 1)
    }

    /// `(sum_i w(i) - sum_i i) / d`: the valuation of the determinant.
    pub fn val_det(&self) -> i64 {
        let d = self.window.len() as i64;
        let excess: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| v - (i as i64 + 1))
            .sum();
        excess / d
    }

    /// The finite Weyl part `x`, as an affine permutation with window in `1..=d`.
    pub fn finite_part(&self) -> Self {
        let d = self.window.len() as i64;
        AffinePermutation {
            window: self.window.iter().map(|&v| split(v, d).0).collect(),
        }
    }

    /// The unique `lambda` with `self = finite_part() * t_lambda`.
    pub fn translation_part(&self) -> Coweight {
        let d = self.window.len() as i64;
        Coweight(self.window.iter().map(|&v| split(v, d).1).collect())
    }

    pub fn is_translation(&self) -> bool {
        self.finite_part().is_identity()
    }

    /// Number of fixed points of the finite part.
    pub fn finite_fixed_points(&self) -> usize {
        let d = self.window.len() as i64;
        self.window
            .iter()
            .enumerate()
            .filter(|(i, &v)| split(v, d).0 == *i as i64 + 1)
            .count()
    }

    /// The affine action `v -> x(v + lambda)` on integral coweights.
    pub fn act(&self, v: &Coweight) -> Result<Coweight> {
        let d = self.period();
        if v.dim() != d {
            return Err(Error::CoweightLength {
                expected: d,
                got: v.dim(),
            });
        }
        let x = self.finite_part();
        let lambda = self.translation_part();
        let mut out = vec![0; d];
        for i in 0..d {
            let target = (x.window[i] - 1) as usize;
            out[target] = v.0[i] + lambda.0[i];
        }
        Ok(Coweight(out))
    }

    /// Affine inversions `#{(i, j) : 1 <= i <= d, i < j, w(i) > w(j)}`, summed
    /// over the periodic extension of `j`. This is the length in `GL(d)`.
    pub fn inversions(&self) -> usize {
        let d = self.window.len() as i64;
        let mut count = 0i64;
        for i in 1..=d {
            let wi = self.window[(i - 1) as usize];
            for j0 in 1..=d {
                let wj = self.window[(j0 - 1) as usize];
                // j = j0 + k d with j > i and w(j0) + k d < w(i)
                let lo = (i - j0).div_euclid(d) + 1;
                let hi = -((wj - wi).div_euclid(d)) - 1;
                if hi >= lo {
                    count += hi - lo + 1;
                }
            }
        }
        count as usize
    }
}

impl Mul for &AffinePermutation {
    type Output = AffinePermutation;

    /// Panics on a period mismatch; use [`AffinePermutation::compose`] for
    /// checked composition.
    fn mul(self, rhs: &AffinePermutation) -> AffinePermutation {
        self.compose(rhs).expect("period mismatch in affine permutation product")
    }
}
