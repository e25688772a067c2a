//! Univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficients in ascending degree, never with a trailing zero; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_i64s(&[c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        IntPolynomial::from_i64s(&[0, 1])
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_i64s()
            .ok_or_else(|| S::Error::custom("coefficient does not fit in i64"))?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<i64>::deserialize(d)?;
        if coeffs.last() == Some(&0) {
            return Err(D::Error::custom("trailing zero coefficient"));
        }
        Ok(IntPolynomial::from_i64s(&coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let q = IntPolynomial::q();
        let one = IntPolynomial::one();
        let r = &q - &one;
        assert_eq!(r.to_i64s().unwrap(), vec![-1, 1]);
        let sq = &r * &r;
        assert_eq!(sq.to_i64s().unwrap(), vec![1, -2, 1]);
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_monic());
        assert!((&r - &r).is_zero());
        assert_eq!((&r - &r).degree(), None);
        assert_eq!(sq.eval_i64(3), BigInt::from(4));
        assert_eq!(format!("{}", IntPolynomial::from_i64s(&[1, 2])), "2q + 1");
        assert_eq!(format!("{}", IntPolynomial::from_i64s(&[-1, 0, 1])), "q^2 - 1");
    }

    #[test]
    fn serde_round_trip() {
        let p = IntPolynomial::from_i64s(&[1, 2, 0, -3]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,2,0,-3]");
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), p);
        assert!(serde_json::from_str::<IntPolynomial>("[1,0]").is_err());
    }

    fn poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-50i64..50, 0..6).prop_map(|v| IntPolynomial::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), x in -6i64..6) {
            prop_assert_eq!((&a * &b).eval_i64(x), a.eval_i64(x) * b.eval_i64(x));
            prop_assert_eq!((&a + &b).eval_i64(x), a.eval_i64(x) + b.eval_i64(x));
            prop_assert_eq!((&a - &b).eval_i64(x), a.eval_i64(x) - b.eval_i64(x));
        }
    }
}
