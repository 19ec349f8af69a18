//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two families are
//! provided: the prime fields [`Fp`] (one type per characteristic, selected at
//! compile time) and the rationals [`BigRational`]. No floating point type
//! implements the trait.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact field usable as the ground ring `k` of a category algebra.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// `0` for the rationals, `p` for `F_p`.
    const CHARACTERISTIC: u64;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Parses an integer or an `a/b` literal.
    fn parse_literal(s: &str) -> Result<Self>;

    /// Smallest non-negative integer lift, for prime fields only.
    fn residue(&self) -> Option<u64>;

    /// All field elements when the field is finite.
    fn elements() -> Option<Vec<Self>>;

    /// A uniformly random element (prime fields) or a random integer in a
    /// wide range (rationals). Used for random isomorphism searches.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// A random element of small height, used for fixture generation.
    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn spec() -> FieldSpec {
        if Self::CHARACTERISTIC == 0 {
            FieldSpec::Rational
        } else {
            FieldSpec::Prime(Self::CHARACTERISTIC)
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Runtime description of a field, used by file formats and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    /// `0` means the rationals.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(FieldSpec::Rational)
        } else if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::InvalidParams(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// True when `char k` does not divide `n`.
    pub fn invertible(&self, n: u64) -> bool {
        match self {
            FieldSpec::Prime(p) => n % p != 0,
            FieldSpec::Rational => true,
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `Z/P`. `P` must be prime and below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub const fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Field::pow(self, P - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let parse = |t: &str| -> Result<Self> {
            t.trim()
                .parse::<i64>()
                .map(Self::from_i64)
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad field literal `{s}`") })
        };
        let n = parse(n)?;
        match d {
            None => Ok(n),
            Some(d) => {
                let d = parse(d)?;
                let di = d.inv().ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("denominator of `{s}` vanishes in F{P}"),
                })?;
                Ok(n * di)
            }
        }
    }

    fn residue(&self) -> Option<u64> {
        Some(self.0)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

impl Field for BigRational {
    const CHARACTERISTIC: u64 = 0;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse { line: 0, msg: format!("bad rational literal `{s}`") };
        match s.split_once('/') {
            None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
                let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }

    fn residue(&self) -> Option<u64> {
        None
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-1_000_000..=1_000_000))
    }

    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-2..=2))
    }
}

/// Renders a field element in the literal syntax accepted by
/// [`Field::parse_literal`].
pub fn literal<F: Field>(x: &F) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, F5, Q};

    #[test]
    fn prime_field_arithmetic() {
        let a = F5::new(3);
        let b = F5::new(4);
        assert_eq!(a + b, F5::new(2));
        assert_eq!(a - b, F5::new(4));
        assert_eq!(a * b, F5::new(2));
        assert_eq!(-a, F5::new(2));
        assert_eq!(a.inv().unwrap() * a, F5::one());
        assert!(F5::zero().inv().is_none());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for x in F3::elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
            assert_eq!(x.inv().unwrap() * x, F3::one());
        }
        assert_eq!(F2::elements().unwrap().len(), 2);
    }

    #[test]
    fn literals() {
        assert_eq!(F5::parse_literal("1/2").unwrap(), F5::new(3));
        assert_eq!(F5::parse_literal("-1").unwrap(), F5::new(4));
        assert!(F5::parse_literal("1/5").is_err());
        let q = Q::parse_literal("-3/6").unwrap();
        assert_eq!(q, Q::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(Q::parse_literal(&literal(&q)).unwrap(), q);
        assert!(Q::parse_literal("1/0").is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!(FieldSpec::from_characteristic(0).unwrap(), FieldSpec::Rational);
        assert!(FieldSpec::from_characteristic(4).is_err());
        assert_eq!(F3::spec(), FieldSpec::Prime(3));
        assert!(FieldSpec::Prime(2).invertible(3));
        assert!(!FieldSpec::Prime(2).invertible(6));
    }
}
