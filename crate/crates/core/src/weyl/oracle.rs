//! Brute-force reference computations used to cross-check the fast paths in
//! [`crate::weyl::group`]: breadth-first word length, Bruhat order by subword
//! enumeration and the Iwahori-Matsumoto root-sum length formula.

use std::collections::{HashMap, VecDeque};

use crate::weyl::group::Group;
use crate::weyl::perm::AffinePermutation;

/// Ball of radius `radius` around the identity in `W_a`, keyed by word length
/// as found by breadth-first search over the simple reflections.
pub fn bfs_ball(group: Group, radius: usize) -> HashMap<AffinePermutation, usize> {
    let gens = group.simple_reflections();
    let mut dist = HashMap::new();
    let id = AffinePermutation::identity(group.period());
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let dw = dist[&w];
        if dw == radius {
            continue;
        }
        for s in &gens {
            let sw = s * &w;
            if !dist.contains_key(&sw) {
                dist.insert(sw.clone(), dw + 1);
                queue.push_back(sw);
            }
        }
    }
    dist
}

/// Elements of the ball sorted by (length, window).
pub fn ball_sorted(group: Group, radius: usize) -> Vec<(AffinePermutation, usize)> {
    let mut v: Vec<_> = bfs_ball(group, radius).into_iter().collect();
    v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    v
}

/// `x <= y` iff `x` is the product of a subword of a reduced word of `y`
/// (times the common `Omega`-part). Enumerates all `2^l(y)` subwords.
pub fn bruhat_leq_subword(group: Group, x: &AffinePermutation, y: &AffinePermutation) -> bool {
    if group.omega_component(x).ok() != group.omega_component(y).ok() {
        return false;
    }
    let (word, omega) = group.reduced_word(y).expect("in group");
    let gens = group.simple_reflections();
    let m = word.len();
    (0u64..(1u64 << m)).any(|mask| {
        let mut acc = omega.clone();
        for (pos, &k) in word.iter().enumerate().rev() {
            if (mask >> pos) & 1 == 1 {
                acc = &gens[k] * &acc;
            }
        }
        &acc == x
    })
}

/// Iwahori-Matsumoto formula `l(x t_lambda) = sum_{a > 0} |<a, lambda> + [x a < 0]|`
/// over positive roots `e_i - e_j`, `i < j`. For `GSp(2n)` the sum runs over
/// one representative of each pair `{(i, j), (2n+1-j, 2n+1-i)}`.
pub fn iwahori_matsumoto_length(group: Group, w: &AffinePermutation) -> usize {
    let d = w.period();
    let x = w.finite_part();
    let lambda = w.translation_part();
    let term = |i: usize, j: usize| -> i64 {
        let pairing = lambda.0[i] - lambda.0[j];
        let negative = i64::from(x.window()[i] > x.window()[j]);
        (pairing + negative).abs()
    };
    let mut total = 0i64;
    for i in 0..d {
        for j in (i + 1)..d {
            match group {
                Group::Gl(_) => total += term(i, j),
                Group::Gsp(_) => {
                    // (i, j) ~ (d-1-j, d-1-i); keep the lexicographically smaller
                    let partner = (d - 1 - j, d - 1 - i);
                    if (i, j) <= partner {
                        total += term(i, j);
                    }
                }
            }
        }
    }
    total as usize
}
