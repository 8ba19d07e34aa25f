//! Coefficient fields: the rationals and prime fields of odd characteristic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syzygy::linalg;

/// Runtime description of a coefficient field: characteristic 0 (the
/// rationals) or an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientField {
    characteristic: u64,
}

impl CoefficientField {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic != 2 && characteristic < (1 << 31) && is_prime(characteristic)) {
            Ok(Self { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Self { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic in a concrete coefficient field. The field value is a context
/// object (it carries the modulus for prime fields); elements are plain data.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> CoefficientField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Multiplier that brings a coefficient list (leading coefficient first)
    /// into canonical form: monic over F_p; primitive integer with positive
    /// leading coefficient over the rationals.
    fn canonical_scale(&self, coeffs: &[Self::Elem]) -> Self::Elem;

    /// Numerator and positive denominator used by the text format. Prime-field
    /// elements use the symmetric range with denominator 1.
    fn to_fraction(&self, a: &Self::Elem) -> (BigInt, BigInt);

    /// Rank of a sparse matrix given as rows of (column, value) pairs.
    fn rank(&self, rows: Vec<Vec<(usize, Self::Elem)>>) -> usize {
        linalg::rank_by_elimination(self, rows)
    }
}

/// The field of rationals with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }

    fn canonical_scale(&self, coeffs: &[BigRational]) -> BigRational {
        let Some(lead) = coeffs.first() else {
            return BigRational::one();
        };
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in coeffs {
            let scaled = c.numer() * (&den / c.denom());
            content = content.gcd(&scaled);
        }
        if content.is_zero() {
            return BigRational::one();
        }
        let mut scale = BigRational::new(den, content);
        if lead.is_negative() {
            scale = -scale;
        }
        scale
    }

    fn to_fraction(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }

    fn rank(&self, rows: Vec<Vec<(usize, BigRational)>>) -> usize {
        linalg::rank_fraction_free(rows)
    }
}

/// The prime field F_p for an odd prime p below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let desc = CoefficientField::new(p)?;
        if desc.is_rational() {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u32;
        base
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField { characteristic: self.p as u64 }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }

    fn canonical_scale(&self, coeffs: &[u32]) -> u32 {
        coeffs.first().map_or(1, |c| self.inv(c))
    }

    fn to_fraction(&self, a: &u32) -> (BigInt, BigInt) {
        let v = *a as i64;
        let p = self.p as i64;
        (BigInt::from(if v > p / 2 { v - p } else { v }), BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite_characteristic() {
        assert_eq!(CoefficientField::new(2), Err(Error::InvalidCharacteristic(2)));
        assert_eq!(CoefficientField::new(9), Err(Error::InvalidCharacteristic(9)));
        assert_eq!(CoefficientField::new(1), Err(Error::InvalidCharacteristic(1)));
        assert!(CoefficientField::new(0).is_ok());
        assert!(CoefficientField::new(5).is_ok());
        assert!(PrimeField::new(0).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.to_fraction(&4), (BigInt::from(-1), BigInt::one()));
    }

    #[test]
    fn rational_canonical_scale_clears_content() {
        let q = Rationals;
        let coeffs = vec![BigRational::new((-2).into(), 3.into()), BigRational::new(4.into(), 9.into())];
        let s = q.canonical_scale(&coeffs);
        let scaled: Vec<_> = coeffs.iter().map(|c| c * &s).collect();
        assert_eq!(scaled[0], BigRational::from_integer(3.into()));
        assert_eq!(scaled[1], BigRational::from_integer((-2).into()));
    }
}
