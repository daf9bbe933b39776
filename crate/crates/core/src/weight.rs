//! Edge weights: classes of nonzero integer vectors up to sign.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{big_to_rat, fmt_intvec, scale_intvec, IntVec, Rat};

/// A primitive direction with canonical sign (first nonzero entry positive)
/// and a positive multiplicity. Represents `±multiplicity·direction`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "crate::rational::serde_big::vec")]
    direction: IntVec,
    #[serde(with = "crate::rational::serde_big")]
    multiplicity: BigInt,
}

/// Canonical representative of the class of `v` in `(Zⁿ∖0)/±1`.
pub fn canonical_weight(v: &[BigInt]) -> Result<Weight> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut direction: IntVec = v.iter().map(|x| x / &g).collect();
    if direction.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        direction.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(Weight {
        direction,
        multiplicity: g,
    })
}

impl Weight {
    /// Builds a weight from an already primitive, canonically signed
    /// direction. Fails otherwise.
    pub fn new(direction: IntVec, multiplicity: BigInt) -> Result<Self> {
        if !multiplicity.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "multiplicity must be positive, got {multiplicity}"
            )));
        }
        let canon = canonical_weight(&direction)?;
        if !canon.multiplicity.is_one() || canon.direction != direction {
            return Err(Error::InvalidArgument(format!(
                "direction {} is not primitive with canonical sign",
                fmt_intvec(&direction)
            )));
        }
        Ok(Weight {
            direction,
            multiplicity,
        })
    }

    pub fn direction(&self) -> &[BigInt] {
        &self.direction
    }

    pub fn multiplicity(&self) -> &BigInt {
        &self.multiplicity
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// `multiplicity · direction`, the canonical integer representative.
    pub fn vector(&self) -> IntVec {
        scale_intvec(&self.direction, &self.multiplicity)
    }

    /// `|w|²`, a positive integer. The norm itself is never materialized.
    pub fn norm_sq(&self) -> BigInt {
        let s: BigInt = self.direction.iter().map(|x| x * x).sum();
        &self.multiplicity * &self.multiplicity * s
    }

    /// `|wⁱ|` for the 0-based axis `axis`.
    pub fn component_abs(&self, axis: usize) -> BigInt {
        (&self.multiplicity * &self.direction[axis]).abs()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.multiplicity, fmt_intvec(&self.direction))
    }
}

/// A rational weight `scale · w` in `W_Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QWeight {
    pub base: Weight,
    pub scale: Rat,
}

impl QWeight {
    /// `w_e / |w_eⁱ|`, the weight a path segment in direction `axis` carries.
    pub fn path_weight(base: &Weight, axis: usize) -> Option<Self> {
        let c = base.component_abs(axis);
        if c.is_zero() {
            return None;
        }
        Some(QWeight {
            base: base.clone(),
            scale: Rat::new(BigInt::one(), c),
        })
    }

    /// The representative as a rational vector.
    pub fn vector(&self) -> Vec<Rat> {
        self.base
            .vector()
            .iter()
            .map(|x| big_to_rat(x) * &self.scale)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn canonical_weight_examples() {
        let w = canonical_weight(&ints(&[2, -4])).unwrap();
        assert_eq!(w.direction(), ints(&[1, -2]).as_slice());
        assert_eq!(w.multiplicity(), &BigInt::from(2));
        assert_eq!(w.vector(), ints(&[2, -4]));

        let w = canonical_weight(&ints(&[1, 1, 1])).unwrap();
        assert_eq!(w.direction(), ints(&[1, 1, 1]).as_slice());
        assert!(w.multiplicity().is_one());

        assert_eq!(canonical_weight(&ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn negative_leading_entry_is_flipped() {
        let w = canonical_weight(&ints(&[0, -3, 6])).unwrap();
        assert_eq!(w.direction(), ints(&[0, 1, -2]).as_slice());
        assert_eq!(w.multiplicity(), &BigInt::from(3));
        assert_eq!(w.norm_sq(), BigInt::from(45));
    }

    #[test]
    fn new_rejects_non_canonical() {
        assert!(Weight::new(ints(&[-1, 2]), BigInt::one()).is_err());
        assert!(Weight::new(ints(&[2, 4]), BigInt::one()).is_err());
        assert!(Weight::new(ints(&[1, 2]), BigInt::zero()).is_err());
        assert!(Weight::new(ints(&[1, 2]), BigInt::from(5)).is_ok());
    }

    #[test]
    fn path_weight_scales_by_component() {
        let w = canonical_weight(&ints(&[2, 4])).unwrap();
        let q = QWeight::path_weight(&w, 1).unwrap();
        assert_eq!(q.scale, Rat::new(1.into(), 4.into()));
        assert!(QWeight::path_weight(&canonical_weight(&ints(&[0, 1])).unwrap(), 0).is_none());
    }
}
