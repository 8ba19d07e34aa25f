//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of variables a ring may carry.
pub const MAX_VARS: usize = 32;

/// A monomial as a fixed-width exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const fn one() -> Self {
        Self { exps: [0; MAX_VARS], degree: 0 }
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::one();
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| Error::InvalidInput(format!("exponent {e} too large")))?;
            m.degree += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Self { exps, degree: self.degree + other.degree }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Self { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = [0u8; MAX_VARS];
        let mut degree = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            degree += exps[i] as u32;
        }
        Self { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables that occur.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn with_exponent(&self, var: usize, e: u32) -> Self {
        let mut m = *self;
        m.degree = m.degree - m.exps[var] as u32 + e;
        m.exps[var] = u8::try_from(e).expect("exponent overflow");
        m
    }

    /// Rebuild with exponents relocated: slot `i` of the result takes slot
    /// `map[i]` of `self` (or 0 for `None`).
    pub fn remap(&self, map: &[Option<usize>]) -> Self {
        let mut m = Self::one();
        for (i, src) in map.iter().enumerate() {
            if let Some(j) = src {
                m.exps[i] = self.exps[*j];
                m.degree += self.exps[*j] as u32;
            }
        }
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A monomial order over a fixed number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: the blocks are compared
    /// lexicographically, grevlex inside each block.
    Block(usize),
}

impl MonomialOrder {
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, 0..nvars, a.degree, b.degree),
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(k) => {
                let (da, db) = (a.partial_degree(0..k), b.partial_degree(0..k));
                match grevlex(a, b, 0..k, da, db) {
                    Ordering::Equal => grevlex(a, b, k..nvars, a.degree - da, b.degree - db),
                    o => o,
                }
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in range.rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Compare two exponent vectors under `order`.
pub fn compare_monomials(m1: &[u32], m2: &[u32], order: MonomialOrder) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::LengthMismatch(m1.len(), m2.len()));
    }
    if let MonomialOrder::Block(k) = order {
        if k > m1.len() {
            return Err(Error::InvalidBlock(k, m1.len()));
        }
    }
    let a = Monomial::from_exponents(m1)?;
    let b = Monomial::from_exponents(m2)?;
    Ok(order.compare(&a, &b, m1.len()))
}
