//! Kazhdan-Lusztig R-polynomials on the extended affine Weyl group, the
//! semisimple trace of Frobenius on nearby cycles over each stratum, and an
//! Iwahori-Hecke algebra oracle for the R-polynomials.

use std::collections::HashMap;

use dashmap::DashMap;
use num_bigint::BigInt;

use crate::alcove::is_permissible_gsp;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::weyl::oracle::bfs_ball;
use crate::weyl::{AffinePermutation, Group, GspElement, WeylGroup};

pub const MAX_HECKE_BOUND: usize = 4;

/// Memoized R-polynomials for one group.
pub struct RPolynomials {
    weyl: WeylGroup,
    cache: DashMap<(AffinePermutation, AffinePermutation), IntPolynomial>,
}

impl RPolynomials {
    pub fn new(group: Group) -> Self {
        RPolynomials {
            weyl: WeylGroup::new(group),
            cache: DashMap::new(),
        }
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// `R_{x,y}`: zero unless `x <= y`, `R_{x,x} = 1`, and for a left descent
    /// `s` of `y`, `R_{x,y} = R_{sx,sy}` if `sx < x`, else
    /// `(q-1) R_{x,sy} + q R_{sx,sy}`.
    pub fn r(&self, x: &AffinePermutation, y: &AffinePermutation) -> Result<IntPolynomial> {
        if !self.weyl.bruhat_leq(x, y)? {
            return Ok(IntPolynomial::zero());
        }
        Ok(self.r_below(x, y))
    }

    fn r_below(&self, x: &AffinePermutation, y: &AffinePermutation) -> IntPolynomial {
        if x == y {
            return IntPolynomial::one();
        }
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let group = self.weyl.group();
        let s = group
            .first_left_descent(y)
            .expect("x < y forces a descent of y");
        let sy = self.weyl.left_mul(s, y);
        let sx = self.weyl.left_mul(s, x);
        let leq = |a: &AffinePermutation, b: &AffinePermutation| {
            self.weyl.bruhat_leq(a, b).expect("same group")
        };
        let result = if group.is_left_descent(s, x) {
            if leq(&sx, &sy) {
                self.r_below(&sx, &sy)
            } else {
                IntPolynomial::zero()
            }
        } else {
            let q = IntPolynomial::q();
            let qm1 = &q - &IntPolynomial::one();
            let mut acc = IntPolynomial::zero();
            if leq(x, &sy) {
                acc = &acc + &(&qm1 * &self.r_below(x, &sy));
            }
            if leq(&sx, &sy) {
                acc = &acc + &(&q * &self.r_below(&sx, &sy));
            }
            acc
        };
        self.cache.insert(key, result.clone());
        result
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

/// One evaluation of the trace formula on a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsTrace {
    /// `(-1)^{l(t_lambda)} (-1)^{l(w)} R_{w, t_lambda}(q^m)`.
    pub value: BigInt,
    pub translation: AffinePermutation,
    /// Whether `w <= t_lambda`; when false the R-polynomial and the trace vanish.
    pub below_translation: bool,
}

/// Semisimple trace of `Frob_{q^m}` on nearby cycles at a point of the
/// stratum of `w`, where `lambda` is the translation part of `w = x t_lambda`.
pub fn ss_trace(rp: &RPolynomials, w: &GspElement, q: u64, m: u32) -> Result<SsTrace> {
    if !is_prime_power(q) {
        return Err(Error::UnsupportedField(q));
    }
    if !is_permissible_gsp(w) {
        return Err(Error::NotPermissible {
            window: w.perm().window().to_vec(),
        });
    }
    let group = rp.weyl().group();
    if group != w.group() {
        return Err(Error::PeriodMismatch {
            left: group.period(),
            right: w.perm().period(),
        });
    }
    let t = AffinePermutation::translation(&w.perm().translation_part());
    let below_translation = rp.weyl().bruhat_leq(w.perm(), &t)?;
    let r = rp.r(w.perm(), &t)?;
    let value = r.eval(&BigInt::from(q).pow(m));
    let parity = group.length(&t)? + group.length(w.perm())?;
    let value = if parity % 2 == 0 { value } else { -value };
    Ok(SsTrace {
        value,
        translation: t,
        below_translation,
    })
}

type HeckeElement = HashMap<AffinePermutation, IntPolynomial>;

fn add_term(h: &mut HeckeElement, w: AffinePermutation, c: IntPolynomial) {
    if c.is_zero() {
        return;
    }
    let entry = h.entry(w.clone()).or_insert_with(IntPolynomial::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        h.remove(&w);
    }
}

/// `h * T_s` using `T_w T_s = T_{ws}` if `ws > w`, else
/// `(q-1) T_w + q T_{ws}`.
fn right_mul_generator(group: Group, gens: &[AffinePermutation], h: &HeckeElement, k: usize) -> HeckeElement {
    let q = IntPolynomial::q();
    let qm1 = &q - &IntPolynomial::one();
    let mut out = HeckeElement::new();
    for (w, c) in h {
        let ws = w * &gens[k];
        if group.is_right_descent(k, w) {
            add_term(&mut out, w.clone(), &qm1 * c);
            add_term(&mut out, ws, &q * c);
        } else {
            add_term(&mut out, ws, c.clone());
        }
    }
    out
}

/// Checks the defining identity of the R-polynomials in the Iwahori-Hecke
/// algebra: for `y = s_1 ... s_k` reduced,
/// `q^{l(y)} T_{y^{-1}}^{-1} = (T_{s_1} - (q-1)) ... (T_{s_k} - (q-1))`
/// has coefficient `(-1)^{l(y)-l(x)} R_{x,y}(q)` at `T_x`. Every `y` with
/// `l(y) <= length_bound` in `W_a` is checked against every `x` of the ball.
pub fn hecke_verify(group: Group, length_bound: usize) -> Result<bool> {
    if length_bound > MAX_HECKE_BOUND {
        return Err(Error::SizeLimit {
            what: format!("Hecke oracle at length {length_bound}"),
            limit: format!("length <= {MAX_HECKE_BOUND}"),
        });
    }
    let rp = RPolynomials::new(group);
    let gens = group.simple_reflections();
    let ball = bfs_ball(group, length_bound);
    let mut elements: Vec<_> = ball.keys().cloned().collect();
    elements.sort();
    let shift = &IntPolynomial::q() - &IntPolynomial::one();
    for y in &elements {
        let (word, omega) = group.reduced_word(y)?;
        let mut h = HeckeElement::from([(omega, IntPolynomial::one())]);
        for &k in &word {
            let ht = right_mul_generator(group, &gens, &h, k);
            let mut next = ht;
            for (w, c) in &h {
                add_term(&mut next, w.clone(), -&(&shift * c));
            }
            h = next;
        }
        let ly = group.length(y)?;
        for x in &elements {
            let lx = group.length(x)?;
            let expected = rp.r(x, y)?;
            let expected = if (ly + lx) % 2 == 0 { expected } else { -&expected };
            let actual = h.remove(x).unwrap_or_default();
            if actual != expected {
                return Ok(false);
            }
        }
        // a leftover term would be an x outside the ball, which cannot be <= y
        if !h.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
