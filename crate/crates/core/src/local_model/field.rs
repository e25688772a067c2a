//! Prime fields `F_q`, `q <= 7`, and subspaces of `F_q^m` in reduced row
//! echelon form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fq {
    q: u32,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        match u32::try_from(q) {
            Ok(q) if SUPPORTED_PRIMES.contains(&q) => Ok(Fq { q }),
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    /// Reduces a signed integer into `0..q`.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.q), "inverse of zero");
        // Fermat
        let mut result = 1;
        let mut base = a % self.q;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Reduced row echelon form; zero rows are dropped. Pivots are the first
    /// nonzero column of each row, strictly increasing.
    pub fn rref(&self, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][col]);
            for v in rows[rank].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    let pivot_row = rows[rank].clone();
                    for (x, &p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        rows
    }

    /// Basis of `{v : A v = 0}`.
    pub fn nullspace(&self, rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
        let reduced = self.rref(rows);
        let pivots: Vec<usize> = reduced.iter().map(|r| leading(r).expect("nonzero row")).collect();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = self.neg(row[free]);
            }
            basis.push(v);
        }
        basis
    }
}

fn leading(row: &[u32]) -> Option<usize> {
    row.iter().position(|&v| v != 0)
}

/// A subspace of `F_q^m`, stored as its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(fq: &Fq, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let rows = if vectors.is_empty() {
            Vec::new()
        } else {
            fq.rref(vectors)
        };
        Subspace { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| leading(r).expect("nonzero row")).collect()
    }

    pub fn contains(&self, fq: &Fq, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = leading(row).expect("nonzero row");
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = fq.sub(*x, fq.mul(c, r));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, fq: &Fq, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(fq, r))
    }

    /// Every `dim`-dimensional subspace of `F_q^ambient`, enumerated by pivot
    /// pattern and free entries; each appears once.
    pub fn all(fq: &Fq, ambient: usize, dim: usize) -> Vec<Subspace> {
        let mut out = Vec::new();
        let mut pivots = Vec::with_capacity(dim);
        choose_pivots(fq, ambient, dim, 0, &mut pivots, &mut out);
        out
    }
}

fn choose_pivots(
    fq: &Fq,
    ambient: usize,
    dim: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace>,
) {
    if pivots.len() == dim {
        fill_free(fq, ambient, pivots, out);
        return;
    }
    for p in start..ambient {
        pivots.push(p);
        choose_pivots(fq, ambient, dim, p + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free(fq: &Fq, ambient: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    // free positions: (row, col) with col > pivot[row] and col not a pivot
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| {
            ((p + 1)..ambient)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (r, c))
        })
        .collect();
    let q = fq.order() as u64;
    let total = q.pow(free.len() as u32);
    for mut code in 0..total {
        let mut rows: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&p| {
                let mut row = vec![0; ambient];
                row[p] = 1;
                row
            })
            .collect();
        for &(r, c) in &free {
            rows[r][c] = (code % q) as u32;
            code /= q;
        }
        out.push(Subspace { ambient, rows });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial `[m choose k]_q`.
    fn gaussian(m: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(m - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn field_ops() {
        let f = Fq::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert!(Fq::new(4).is_err());
        assert!(Fq::new(11).is_err());
    }

    #[test]
    fn grassmannian_sizes() {
        for q in [2u64, 3, 5] {
            let f = Fq::new(q).unwrap();
            for (m, k) in [(2, 1), (4, 2), (3, 1), (4, 1)] {
                let all = Subspace::all(&f, m, k);
                assert_eq!(all.len() as u64, gaussian(m as u32, k as u32, q));
                // canonical: re-spanning gives the same key
                for s in all.iter().take(20) {
                    assert_eq!(&Subspace::span(&f, m, s.basis().to_vec()), s);
                }
            }
        }
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fq::new(3).unwrap();
        let ns = f.nullspace(vec![vec![1, 2, 0, 1], vec![0, 1, 1, 1]], 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + v[3]) % 3, 0);
            assert_eq!((v[1] + v[2] + v[3]) % 3, 0);
        }
    }
}
