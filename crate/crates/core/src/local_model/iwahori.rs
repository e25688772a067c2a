//! The standard Iwahori subgroup of `GSp(2n)` acting on points, through its
//! truncation to `F_q[t]/(t^3)`.
//!
//! Since `t V_i ⊂ L_i ⊂ V_i`, only the terms of degree `< 2` act on a point;
//! the degree-2 term is kept so that this can be tested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::local_model::chain::SubspaceChain;
use crate::local_model::field::{Fq, Subspace};

pub const TRUNCATION: usize = 3;

type Matrix = Vec<Vec<u32>>;

/// `g = g_0 + g_1 t + g_2 t^2`, each `g_k` a `2n x 2n` matrix acting on
/// column vectors in the basis `e_1, ..., e_2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwahoriElement {
    n: usize,
    fq: Fq,
    coeffs: Vec<Matrix>,
}

fn zero_matrix(d: usize) -> Matrix {
    vec![vec![0; d]; d]
}

fn identity_matrix(d: usize) -> Matrix {
    let mut m = zero_matrix(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn mat_mul_acc(fq: &Fq, acc: &mut Matrix, a: &Matrix, b: &Matrix) {
    let d = a.len();
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..d {
                acc[i][j] = fq.add(acc[i][j], fq.mul(a[i][k], b[k][j]));
            }
        }
    }
}

fn poly_mat_mul(fq: &Fq, a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    let d = a[0].len();
    let mut out = vec![zero_matrix(d); TRUNCATION];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < TRUNCATION {
                mat_mul_acc(fq, &mut out[i + j], ai, bj);
            }
        }
    }
    out
}

fn transpose(m: &Matrix) -> Matrix {
    let d = m.len();
    (0..d).map(|i| (0..d).map(|j| m[j][i]).collect()).collect()
}

/// Gram matrix of `<e_a, e_b> = eps_a [a + b = d + 1]`.
fn form_matrix(fq: &Fq, n: usize) -> Matrix {
    let d = 2 * n;
    let mut j = zero_matrix(d);
    for (a, row) in j.iter_mut().enumerate() {
        row[d - 1 - a] = if a < n { 1 } else { fq.neg(1) };
    }
    j
}

/// Inverse of a unit `u_0 + u_1 t + u_2 t^2` modulo `t^3`.
fn unit_inverse(fq: &Fq, u: [u32; 3]) -> [u32; 3] {
    let v0 = fq.inv(u[0]);
    let v1 = fq.neg(fq.mul(v0, fq.mul(u[1], v0)));
    let v2 = fq.neg(fq.mul(v0, fq.add(fq.mul(u[1], v1), fq.mul(u[2], v0))));
    [v0, v1, v2]
}

impl IwahoriElement {
    /// Validates that `g_0` is lower triangular and invertible and that
    /// `g^T J g = c(t) J` modulo `t^3` for a unit `c(t)`.
    pub fn new(n: usize, q: u64, coeffs: Vec<Matrix>) -> Result<Self> {
        let fq = Fq::new(q)?;
        let d = 2 * n;
        if coeffs.len() != TRUNCATION || coeffs.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::InvariantViolation(format!(
                "expected {TRUNCATION} matrices of size {d}x{d}"
            )));
        }
        if coeffs.iter().flatten().flatten().any(|&v| v >= fq.order()) {
            return Err(Error::InvariantViolation("entry is not reduced mod q".into()));
        }
        let g0 = &coeffs[0];
        for (r, row) in g0.iter().enumerate() {
            if row[r] == 0 || row[r + 1..].iter().any(|&v| v != 0) {
                return Err(Error::InvariantViolation(
                    "reduction mod t is not lower triangular and invertible".into(),
                ));
            }
        }
        let g = IwahoriElement { n, fq, coeffs };
        g.similitude_factor()?;
        Ok(g)
    }

    pub fn identity(n: usize, q: u64) -> Result<Self> {
        let d = 2 * n;
        IwahoriElement::new(n, q, vec![identity_matrix(d), zero_matrix(d), zero_matrix(d)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// `c(t)` with `g^T J g = c(t) J` mod `t^3`.
    pub fn similitude_factor(&self) -> Result<[u32; 3]> {
        let fq = &self.fq;
        let d = 2 * self.n;
        let j = vec![form_matrix(fq, self.n), zero_matrix(d), zero_matrix(d)];
        let gt: Vec<Matrix> = self.coeffs.iter().map(transpose).collect();
        let m = poly_mat_mul(fq, &poly_mat_mul(fq, &gt, &j), &self.coeffs);
        // <e_1, e_d> = 1, so c(t) is read off the (1, d) entry
        let c = [m[0][0][d - 1], m[1][0][d - 1], m[2][0][d - 1]];
        for (k, mk) in m.iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    let expected = fq.mul(c[k], j[0][a][b]);
                    if mk[a][b] != expected {
                        return Err(Error::InvariantViolation(
                            "element is not a symplectic similitude".into(),
                        ));
                    }
                }
            }
        }
        if c[0] == 0 {
            return Err(Error::InvariantViolation("similitude factor is not a unit".into()));
        }
        Ok(c)
    }

    pub fn mul(&self, other: &IwahoriElement) -> IwahoriElement {
        assert_eq!(self.n, other.n);
        IwahoriElement {
            n: self.n,
            fq: self.fq,
            coeffs: poly_mat_mul(&self.fq, &self.coeffs, &other.coeffs),
        }
    }
}

/// `I + s(t) X` with `X = E_{ab} ± E_{b'a'}` in the symplectic Lie algebra,
/// `a != b` (0-based, `x' = d - 1 - x`).
fn root_element(fq: &Fq, n: usize, a: usize, b: usize, s: [u32; 3]) -> Vec<Matrix> {
    let d = 2 * n;
    let j = form_matrix(fq, n);
    let candidates = [1, fq.neg(1)];
    let x = candidates
        .iter()
        .map(|&sigma| {
            let mut x = zero_matrix(d);
            x[a][b] = 1;
            let (bp, ap) = (d - 1 - b, d - 1 - a);
            x[bp][ap] = fq.add(x[bp][ap], sigma);
            if bp == a && ap == b {
                // long root: one entry, the sign is forced
                x[a][b] = 1;
            }
            x
        })
        .find(|x| {
            let mut lhs = zero_matrix(d);
            mat_mul_acc(fq, &mut lhs, &transpose(x), &j);
            mat_mul_acc(fq, &mut lhs, &j, x);
            lhs.iter().flatten().all(|&v| v == 0)
        })
        .expect("one sign puts X in the symplectic Lie algebra");
    let mut out = vec![identity_matrix(d), zero_matrix(d), zero_matrix(d)];
    for (k, &sk) in s.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                out[k][r][c] = fq.add(out[k][r][c], fq.mul(sk, x[r][c]));
            }
        }
    }
    out
}

/// A random element of the Iwahori subgroup modulo `t^3`, deterministic in
/// `seed`: a torus element times a product of affine root elements.
pub fn random_iwahori(n: usize, q: u64, seed: u64) -> Result<IwahoriElement> {
    let fq = Fq::new(q)?;
    let d = 2 * n;
    let p = fq.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = |rng: &mut ChaCha8Rng| [rng.gen_range(1..p), rng.gen_range(0..p), rng.gen_range(0..p)];

    let c = unit(&mut rng);
    let mut torus = vec![zero_matrix(d), zero_matrix(d), zero_matrix(d)];
    for a in 0..n {
        let u = unit(&mut rng);
        let inv = unit_inverse(&fq, u);
        // u_{a'} = c / u_a
        let partner = [
            fq.mul(c[0], inv[0]),
            fq.add(fq.mul(c[0], inv[1]), fq.mul(c[1], inv[0])),
            fq.add(
                fq.add(fq.mul(c[0], inv[2]), fq.mul(c[1], inv[1])),
                fq.mul(c[2], inv[0]),
            ),
        ];
        for k in 0..TRUNCATION {
            torus[k][a][a] = u[k];
            torus[k][d - 1 - a][d - 1 - a] = partner[k];
        }
    }
    let mut g = IwahoriElement { n, fq, coeffs: torus };
    for _ in 0..4 * d {
        let a = rng.gen_range(0..d);
        let b = loop {
            let b = rng.gen_range(0..d);
            if b != a {
                break b;
            }
        };
        let mut s = [rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p)];
        if a < b {
            // above the diagonal only multiples of t are integral on the chain
            s[0] = 0;
        }
        let x = IwahoriElement {
            n,
            fq,
            coeffs: root_element(&fq, n, a, b, s),
        };
        g = g.mul(&x);
    }
    IwahoriElement::new(n, q, g.coeffs)
}

/// `g . (L_0, ..., L_2n)`.
pub fn iwahori_act(g: &IwahoriElement, pt: &SubspaceChain) -> Result<SubspaceChain> {
    if g.n != pt.n || u64::from(g.fq.order()) != pt.q {
        return Err(Error::InvariantViolation(
            "group element and point live over different data".into(),
        ));
    }
    let fq = g.fq;
    let d = 2 * pt.n;
    let di = d as i64;
    let mut spaces = Vec::with_capacity(d + 1);
    for (i, l) in pt.spaces.iter().enumerate() {
        let i = i as i64;
        let mut images = Vec::with_capacity(l.dim());
        for v in l.basis() {
            let mut out = vec![0u32; d];
            for (k, &coef) in v.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let iota = i + 1 + k as i64;
                let a = (iota - 1).rem_euclid(di);
                let m = (iota - 1 - a) / di;
                for (deg, gk) in g.coeffs.iter().enumerate() {
                    for (b, row) in gk.iter().enumerate() {
                        let entry = row[a as usize];
                        if entry == 0 {
                            continue;
                        }
                        let target = b as i64 + 1 + di * (m + deg as i64);
                        let coord = target - i - 1;
                        if coord < 0 {
                            return Err(Error::InvariantViolation(format!(
                                "element does not stabilize V_{i}"
                            )));
                        }
                        if coord < di {
                            let c = coord as usize;
                            out[c] = fq.add(out[c], fq.mul(entry, coef));
                        }
                    }
                }
            }
            images.push(out);
        }
        spaces.push(Subspace::span(&fq, d, images));
    }
    let moved = SubspaceChain {
        n: pt.n,
        q: pt.q,
        spaces,
    };
    moved.validate()?;
    Ok(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_model::chain::{cell_of_point, enumerate_points, point_p_rank};

    #[test]
    fn random_elements_validate() {
        for seed in 0..20 {
            for (n, q) in [(1, 2), (1, 5), (2, 2), (2, 3)] {
                let g = random_iwahori(n, q, seed).unwrap();
                assert_eq!(g, random_iwahori(n, q, seed).unwrap());
                g.similitude_factor().unwrap();
            }
        }
    }

    #[test]
    fn identity_fixes_points() {
        let id = IwahoriElement::identity(1, 3).unwrap();
        for pt in enumerate_points(1, 3).unwrap() {
            assert_eq!(iwahori_act(&id, &pt).unwrap(), pt);
        }
    }

    #[test]
    fn degree_two_terms_act_trivially() {
        // I + t^2 X, X a root element: nontrivial mod t^3, trivial on points
        let fq = Fq::new(3).unwrap();
        for (a, b) in [(0, 3), (1, 0), (2, 1), (0, 1)] {
            let coeffs = root_element(&fq, 2, a, b, [0, 0, 1]);
            assert!(coeffs[2].iter().flatten().any(|&v| v != 0));
            let g = IwahoriElement::new(2, 3, coeffs).unwrap();
            for pt in enumerate_points(2, 3).unwrap() {
                assert_eq!(iwahori_act(&g, &pt).unwrap(), pt);
            }
        }
    }

    #[test]
    fn action_preserves_rank_and_cell() {
        let pts = enumerate_points(2, 2).unwrap();
        for seed in 0..10 {
            let g = random_iwahori(2, 2, seed).unwrap();
            for pt in &pts {
                let moved = iwahori_act(&g, pt).unwrap();
                assert_eq!(point_p_rank(&moved), point_p_rank(pt));
                assert_eq!(cell_of_point(&moved).unwrap(), cell_of_point(pt).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_iwahori() {
        let mut coeffs = vec![identity_matrix(2), zero_matrix(2), zero_matrix(2)];
        coeffs[0][0][1] = 1;
        assert!(IwahoriElement::new(1, 2, coeffs).is_err());
        // diag(2, 1, 1, 1): the two hyperbolic pairs scale differently
        let mut coeffs = vec![identity_matrix(4), zero_matrix(4), zero_matrix(4)];
        coeffs[0][0][0] = 2;
        assert!(IwahoriElement::new(2, 3, coeffs).is_err());
    }
}
