//! The two ambient groups, `GL(d)` (type `A~_{d-1}`) and `GSp(2n)`
//! (type `C~_n`), realized inside the affine permutations of period `d`
//! resp. `2n`.
//!
//! `GSp(2n)` elements are the affine permutations satisfying
//! `w(i) + w(2n+1-i) = 2n+1 + 2n*c` for a fixed integer `c`, the similitude
//! valuation. The `C~_n` generators are the folded `A~_{2n-1}` generators:
//! `s_0`, `s_k s_{2n-k}` for `0 < k < n`, and `s_n`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::perm::{AffinePermutation, Coweight};

/// Label of the `W_a`-coset `w W_a` inside the extended group: the
/// determinant valuation for `GL(d)`, the similitude valuation for `GSp(2n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct OmegaComponent(pub i64);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Group {
    /// `GL(d)`.
    Gl(usize),
    /// `GSp(2n)`, carrying `n`.
    Gsp(usize),
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Gl(d) => write!(f, "GL({d})"),
            Group::Gsp(n) => write!(f, "GSp({})", 2 * n),
        }
    }
}

impl Group {
    pub fn period(&self) -> usize {
        match *self {
            Group::Gl(d) => d,
            Group::Gsp(n) => 2 * n,
        }
    }

    /// Similitude valuation `c` if `w` satisfies the symplectic constraint.
    pub fn similitude(n: usize, w: &AffinePermutation) -> Option<i64> {
        let d = 2 * n as i64;
        if w.period() != 2 * n {
            return None;
        }
        let win = w.window();
        let first = win[0] + win[(d - 1) as usize] - (d + 1);
        if first.rem_euclid(d) != 0 {
            return None;
        }
        let c = first / d;
        (0..n).all(|i| win[i] + win[2 * n - 1 - i] == d + 1 + d * c).then_some(c)
    }

    pub fn contains(&self, w: &AffinePermutation) -> bool {
        match *self {
            Group::Gl(d) => w.period() == d,
            Group::Gsp(n) => Group::similitude(n, w).is_some(),
        }
    }

    fn check(&self, w: &AffinePermutation) -> Result<()> {
        if w.period() != self.period() {
            return Err(Error::PeriodMismatch {
                left: self.period(),
                right: w.period(),
            });
        }
        if !self.contains(w) {
            return Err(Error::NotInGroup {
                window: w.window().to_vec(),
                group: self.to_string(),
            });
        }
        Ok(())
    }

    pub fn omega_component(&self, w: &AffinePermutation) -> Result<OmegaComponent> {
        self.check(w)?;
        Ok(match *self {
            Group::Gl(_) => OmegaComponent(w.val_det()),
            Group::Gsp(n) => OmegaComponent(Group::similitude(n, w).expect("checked")),
        })
    }

    /// Coxeter generators: `s_0, ..., s_{d-1}` for `GL(d)`, `s_0, ..., s_n`
    /// for `GSp(2n)`. Index `k` of the returned list is generator `s_k`.
    pub fn simple_reflections(&self) -> Vec<AffinePermutation> {
        match *self {
            Group::Gl(d) if d < 2 => Vec::new(),
            Group::Gl(d) => (0..d).map(|k| gl_reflection(d, k)).collect(),
            Group::Gsp(n) => (0..=n)
                .map(|k| {
                    let d = 2 * n;
                    if k == 0 || k == n {
                        gl_reflection(d, k)
                    } else {
                        &gl_reflection(d, k) * &gl_reflection(d, d - k)
                    }
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Group::Gl(d) if d < 2 => 0,
            Group::Gl(d) => d,
            Group::Gsp(n) => n + 1,
        }
    }

    /// `s_k w < w`. In `GL` this is `w^{-1}(k) > w^{-1}(k+1)`; in `GSp` the
    /// folded generator is a descent iff its `GL` constituents are.
    pub fn is_left_descent(&self, k: usize, w: &AffinePermutation) -> bool {
        // GSp generator s_k contains the GL generator with the same index
        let inv = w.inverse();
        let k = k as i64;
        inv.apply(k) > inv.apply(k + 1)
    }

    pub fn first_left_descent(&self, w: &AffinePermutation) -> Option<usize> {
        (0..self.rank()).find(|&k| self.is_left_descent(k, w))
    }

    pub fn left_descents(&self, w: &AffinePermutation) -> Vec<usize> {
        (0..self.rank())
            .filter(|&k| self.is_left_descent(k, w))
            .collect()
    }

    /// `w s_k < w`.
    pub fn is_right_descent(&self, k: usize, w: &AffinePermutation) -> bool {
        self.is_left_descent(k, &w.inverse())
    }

    /// Coxeter length of the `W_a`-part; elements of `Omega` have length 0.
    ///
    /// `GL(d)`: affine inversion count. `GSp(2n)`: half of the `GL` inversion
    /// count plus the long-root term `sum_{i<=n} |floor((w(2n+1-i) - w(i)) / 2n)|`.
    pub fn length(&self, w: &AffinePermutation) -> Result<usize> {
        self.check(w)?;
        Ok(match *self {
            Group::Gl(_) => w.inversions(),
            Group::Gsp(n) => {
                let d = 2 * n as i64;
                let win = w.window();
                let long: i64 = (0..n)
                    .map(|i| (win[2 * n - 1 - i] - win[i]).div_euclid(d).abs())
                    .sum();
                let total = w.inversions() as i64 + long;
                debug_assert!(total % 2 == 0);
                (total / 2) as usize
            }
        })
    }

    /// Finite Weyl group: `S_d`, resp. the signed permutations of `{1..2n}`
    /// commuting with `i -> 2n+1-i`.
    pub fn finite_weyl_group(&self) -> Vec<AffinePermutation> {
        match *self {
            Group::Gl(d) => permutations(d)
                .into_iter()
                .map(|p| AffinePermutation::new(p.into_iter().map(|v| v as i64 + 1).collect()).expect("permutation"))
                .collect(),
            Group::Gsp(n) => signed_permutations(n),
        }
    }

    /// The unique length-0 element of `Omega` with component `+1`, found by
    /// exhaustive search over `x * t_lambda`, `x` finite, `lambda in {0,1}^d`.
    pub fn omega_generator(&self) -> Result<AffinePermutation> {
        let d = self.period();
        let finite = self.finite_weyl_group();
        let mut found = Vec::new();
        for bits in 0u64..(1u64 << d) {
            let lambda = Coweight((0..d).map(|i| ((bits >> i) & 1) as i64).collect());
            match *self {
                Group::Gl(_) if lambda.sum() != 1 => continue,
                Group::Gsp(n) if (0..n).any(|i| lambda.0[i] + lambda.0[d - 1 - i] != 1) => continue,
                _ => {}
            }
            for x in &finite {
                let w = AffinePermutation::from_parts(x, &lambda)?;
                if self.contains(&w)
                    && self.omega_component(&w)? == OmegaComponent(1)
                    && self.length(&w)? == 0
                {
                    found.push(w);
                }
            }
        }
        if found.len() == 1 {
            Ok(found.pop().expect("one element"))
        } else {
            Err(Error::SearchFailed {
                what: "omega generator",
                found: found.len(),
            })
        }
    }

    /// Reduced word by repeated left-descent removal:
    /// `w = s_{k_1} ... s_{k_m} * omega` with `omega` of length 0.
    pub fn reduced_word(&self, w: &AffinePermutation) -> Result<(Vec<usize>, AffinePermutation)> {
        self.check(w)?;
        let gens = self.simple_reflections();
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(k) = self.first_left_descent(&cur) {
            word.push(k);
            cur = &gens[k] * &cur;
        }
        Ok((word, cur))
    }

    /// All elements below `y` in Bruhat order: the distinct products of
    /// subwords of a reduced word of `y`, times its `Omega`-part.
    pub fn bruhat_down_set(&self, y: &AffinePermutation) -> Result<BTreeSet<AffinePermutation>> {
        let (word, omega) = self.reduced_word(y)?;
        let gens = self.simple_reflections();
        let mut down: HashSet<AffinePermutation> = HashSet::from([omega]);
        for &k in word.iter().rev() {
            let shifted: Vec<_> = down.iter().map(|x| &gens[k] * x).collect();
            down.extend(shifted);
        }
        Ok(down.into_iter().collect())
    }
}

/// GL(d) generator `s_k`: swaps `k` and `k+1` (`s_0` swaps `0` and `1`).
fn gl_reflection(d: usize, k: usize) -> AffinePermutation {
    let mut window: Vec<i64> = (1..=d as i64).collect();
    if k == 0 {
        window[0] = 0;
        window[d - 1] = d as i64 + 1;
    } else {
        window.swap(k - 1, k);
    }
    AffinePermutation::new(window).expect("valid reflection")
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    heap_permute(d, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn signed_permutations(n: usize) -> Vec<AffinePermutation> {
    let d = 2 * n;
    let mut out = Vec::new();
    for p in permutations(n) {
        for signs in 0u32..(1 << n) {
            let mut window = vec![0i64; d];
            for i in 0..n {
                let img = p[i] + 1;
                let img = if (signs >> i) & 1 == 1 { d + 1 - img } else { img };
                window[i] = img as i64;
                window[d - 1 - i] = (d + 1 - img) as i64;
            }
            out.push(AffinePermutation::new(window).expect("signed permutation"));
        }
    }
    out.sort();
    out
}

/// A group together with memo caches for Bruhat comparisons. The caches are
/// concurrent maps; results do not depend on evaluation order.
pub struct WeylGroup {
    group: Group,
    generators: Vec<AffinePermutation>,
    bruhat: DashMap<(AffinePermutation, AffinePermutation), bool>,
}

impl WeylGroup {
    pub fn new(group: Group) -> Self {
        WeylGroup {
            group,
            generators: group.simple_reflections(),
            bruhat: DashMap::new(),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn generators(&self) -> &[AffinePermutation] {
        &self.generators
    }

    pub fn length(&self, w: &AffinePermutation) -> Result<usize> {
        self.group.length(w)
    }

    pub fn omega_component(&self, w: &AffinePermutation) -> Result<OmegaComponent> {
        self.group.omega_component(w)
    }

    /// Left multiplication by generator `s_k`.
    pub fn left_mul(&self, k: usize, w: &AffinePermutation) -> AffinePermutation {
        &self.generators[k] * w
    }

    /// Bruhat order on the extended group: same `Omega`-component and
    /// comparable `W_a`-parts. Uses the lifting property: for `s y < y`,
    /// `x <= y` iff `s x <= s y` (when `s x < x`) or `x <= s y` (otherwise).
    pub fn bruhat_leq(&self, x: &AffinePermutation, y: &AffinePermutation) -> Result<bool> {
        if x.period() != y.period() {
            return Err(Error::PeriodMismatch {
                left: x.period(),
                right: y.period(),
            });
        }
        if self.omega_component(x)? != self.omega_component(y)? {
            return Ok(false);
        }
        Ok(self.leq_same_component(x, y))
    }

    fn leq_same_component(&self, x: &AffinePermutation, y: &AffinePermutation) -> bool {
        if x == y {
            return true;
        }
        let lx = self.group.length(x).expect("in group");
        let ly = self.group.length(y).expect("in group");
        if lx >= ly {
            return false;
        }
        if lx == 0 {
            // both share the Omega-part, which lies below everything
            return true;
        }
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.bruhat.get(&key) {
            return *hit;
        }
        let s = self
            .group
            .first_left_descent(y)
            .expect("positive length has a descent");
        let sy = self.left_mul(s, y);
        let result = if self.group.is_left_descent(s, x) {
            let sx = self.left_mul(s, x);
            self.leq_same_component(&sx, &sy)
        } else {
            self.leq_same_component(x, &sy)
        };
        self.bruhat.insert(key, result);
        result
    }

    /// `x < y` with `l(y) = l(x) + 1`.
    pub fn covers(&self, x: &AffinePermutation, y: &AffinePermutation) -> Result<bool> {
        Ok(self.length(y)? == self.length(x)? + 1 && self.bruhat_leq(x, y)?)
    }

    pub fn cache_len(&self) -> usize {
        self.bruhat.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn generators_gl2() {
        let gens = Group::Gl(2).simple_reflections();
        assert_eq!(gens, vec![ap(&[0, 3]), ap(&[2, 1])]);
        for s in &gens {
            assert!((s * s).is_identity());
            assert_eq!(Group::Gl(2).length(s).unwrap(), 1);
        }
    }

    #[test]
    fn generators_gsp() {
        for n in 1..=4 {
            let g = Group::Gsp(n);
            let gens = g.simple_reflections();
            assert_eq!(gens.len(), n + 1);
            for s in &gens {
                assert!(g.contains(s));
                assert_eq!(g.omega_component(s).unwrap(), OmegaComponent(0));
                assert!((s * s).is_identity());
                assert_eq!(g.length(s).unwrap(), 1);
            }
        }
        assert_eq!(Group::Gsp(2).simple_reflections().len(), 3);
    }

    #[test]
    fn omega_generators() {
        assert_eq!(Group::Gl(2).omega_generator().unwrap(), ap(&[2, 3]));
        assert_eq!(Group::Gsp(1).omega_generator().unwrap(), ap(&[2, 3]));
        assert_eq!(Group::Gl(3).omega_generator().unwrap(), ap(&[2, 3, 4]));
        // for GSp(2n) it is the rotation by n
        assert_eq!(Group::Gsp(2).omega_generator().unwrap(), ap(&[3, 4, 5, 6]));
        assert_eq!(Group::Gsp(3).omega_generator().unwrap(), ap(&[4, 5, 6, 7, 8, 9]));
    }

    #[test]
    fn similitude_constraint() {
        assert_eq!(Group::similitude(1, &ap(&[3, 2])), Some(1));
        assert_eq!(Group::similitude(1, &ap(&[1, 2])), Some(0));
        assert_eq!(Group::similitude(2, &ap(&[2, 1, 3, 4])), None);
        assert!(matches!(
            Group::Gsp(2).length(&ap(&[2, 1, 3, 4])),
            Err(Error::NotInGroup { .. })
        ));
    }

    #[test]
    fn gsp_translation_lengths() {
        // l(t_mu) = n(n+1)/2 in type C~_n
        for n in 1..=4 {
            let g = Group::Gsp(n);
            let mu = Coweight::fundamental(2 * n, n);
            let t = AffinePermutation::translation(&mu);
            assert_eq!(g.length(&t).unwrap(), n * (n + 1) / 2, "n = {n}");
        }
    }

    #[test]
    fn finite_weyl_group_orders() {
        assert_eq!(Group::Gl(4).finite_weyl_group().len(), 24);
        assert_eq!(Group::Gsp(3).finite_weyl_group().len(), 48);
        for x in Group::Gsp(2).finite_weyl_group() {
            assert_eq!(Group::similitude(2, &x), Some(0));
        }
    }

    #[test]
    fn bruhat_basics() {
        let g = WeylGroup::new(Group::Gsp(1));
        let tau = ap(&[2, 3]);
        let t = ap(&[3, 2]);
        assert!(g.bruhat_leq(&t, &t).unwrap());
        assert!(g.bruhat_leq(&tau, &t).unwrap());
        assert!(!g.bruhat_leq(&t, &tau).unwrap());
        // different Omega-components are incomparable
        assert!(!g.bruhat_leq(&ap(&[1, 2]), &t).unwrap());
        assert!(matches!(
            g.bruhat_leq(&t, &AffinePermutation::identity(3)),
            Err(Error::PeriodMismatch { .. })
        ));
    }

    #[test]
    fn reduced_word_reconstructs() {
        let g = Group::Gsp(2);
        let t = AffinePermutation::translation(&Coweight::fundamental(4, 2));
        let (word, omega) = g.reduced_word(&t).unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(g.length(&omega).unwrap(), 0);
        let gens = g.simple_reflections();
        let rebuilt = word.iter().rev().fold(omega, |acc, &k| &gens[k] * &acc);
        assert_eq!(rebuilt, t);
    }
}
