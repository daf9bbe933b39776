//! Exact scalars and vectors.
//!
//! Every coordinate in the crate is a [`Rat`] (an arbitrary-precision
//! rational kept in lowest terms) and every weight or facet normal is an
//! [`IntVec`]. Nothing here ever touches floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rat = BigRational;

/// A point of ℝⁿ with rational coordinates.
pub type Point = Vec<Rat>;

/// An integer vector (weights, facet normals, balancing sums).
pub type IntVec = Vec<BigInt>;

/// Builds `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn big_to_rat(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Parses `"p/q"` or `"p"`. Rejects zero denominators and anything that is
/// not a plain (optionally signed) decimal integer pair.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| format!("malformed rational {s:?}"))?;
    let den = match den {
        Some(d) => parse_int(d).ok_or_else(|| format!("malformed rational {s:?}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_point(p: &[Rat]) -> String {
    let parts: Vec<String> = p.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_intvec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Display adapter for points.
pub struct DisplayPoint<'a>(pub &'a [Rat]);

impl fmt::Display for DisplayPoint<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_point(self.0))
    }
}

pub fn dot_int(a: &[BigInt], p: &[Rat]) -> Rat {
    a.iter()
        .zip(p)
        .fold(Rat::zero(), |acc, (ai, pi)| acc + pi * big_to_rat(ai))
}

pub fn dot_ints(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `p + t·v`
pub fn point_along(p: &[Rat], v: &[BigInt], t: &Rat) -> Point {
    p.iter().zip(v).map(|(pi, vi)| pi + t * big_to_rat(vi)).collect()
}

pub fn sub_points(a: &[Rat], b: &[Rat]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn int_point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn ints(coords: &[i64]) -> IntVec {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn neg_intvec(v: &[BigInt]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

pub fn scale_intvec(v: &[BigInt], k: &BigInt) -> IntVec {
    v.iter().map(|x| x * k).collect()
}

pub fn add_intvec_assign(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

pub fn is_zero_intvec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Returns `Some(λ)` with `d = λ·v` when `d` is parallel to the nonzero
/// integer vector `v` (λ may be zero), `None` otherwise.
pub fn parallel_coefficient(d: &[Rat], v: &[BigInt]) -> Option<Rat> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let lambda = &d[k] / big_to_rat(&v[k]);
    let consistent = d
        .iter()
        .zip(v)
        .all(|(di, vi)| *di == &lambda * big_to_rat(vi));
    consistent.then_some(lambda)
}

/// Whether two nonzero integer vectors are parallel (either orientation).
pub fn parallel_ints(a: &[BigInt], b: &[BigInt]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

pub fn min_rat<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_rat<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a >= b {
        a
    } else {
        b
    }
}

/// Serde helpers writing rationals as canonical strings.
pub mod serde_rat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rat(s).map_err(de::Error::custom))
                .collect()
        }
    }
}

/// Serde helpers writing big integers as bare JSON numbers of any size.
pub mod serde_big {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    fn to_number<E: serde::ser::Error>(v: &BigInt) -> Result<Number, E> {
        Number::from_str(&v.to_string()).map_err(E::custom)
    }

    fn from_number<E: de::Error>(n: &Number) -> Result<BigInt, E> {
        let text = n.to_string();
        parse_int(&text).ok_or_else(|| E::custom(format!("expected an integer, found {text}")))
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_number(v)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_number(&Number::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&to_number::<S::Error>(x)?)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Number>::deserialize(d)?
                .iter()
                .map(from_number)
                .collect()
        }
    }
}
