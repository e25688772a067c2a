use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::group::Group;
use crate::weyl::perm::AffinePermutation;

/// An element of the extended affine Weyl group of `GSp(2n)`: an affine
/// permutation of period `2n` with `w(i) + w(2n+1-i) = 2n+1 + 2n*c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GspElement {
    perm: AffinePermutation,
    similitude: i64,
}

impl GspElement {
    pub fn new(perm: AffinePermutation) -> Result<Self> {
        if !perm.period().is_multiple_of(2) {
            return Err(Error::NotInGroup {
                window: perm.window().to_vec(),
                group: format!("GSp({})", perm.period()),
            });
        }
        let n = perm.period() / 2;
        match Group::similitude(n, &perm) {
            Some(similitude) => Ok(GspElement { perm, similitude }),
            None => Err(Error::NotInGroup {
                window: perm.window().to_vec(),
                group: Group::Gsp(n).to_string(),
            }),
        }
    }

    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        GspElement::new(AffinePermutation::new(window)?)
    }

    pub fn n(&self) -> usize {
        self.perm.period() / 2
    }

    pub fn group(&self) -> Group {
        Group::Gsp(self.n())
    }

    pub fn perm(&self) -> &AffinePermutation {
        &self.perm
    }

    pub fn into_perm(self) -> AffinePermutation {
        self.perm
    }

    pub fn similitude(&self) -> i64 {
        self.similitude
    }

    pub fn length(&self) -> usize {
        self.group().length(&self.perm).expect("validated element")
    }
}

impl fmt::Debug for GspElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)
    }
}

impl fmt::Display for GspElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)
    }
}
