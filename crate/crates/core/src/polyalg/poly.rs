//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use super::ring::PolyRing;
use crate::error::{Error, Result};

pub type Term<E> = (Monomial, E);

/// A polynomial with terms stored in strictly descending order under the
/// ring's monomial order and no zero coefficients.
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> Clone for Polynomial<F> {
    fn clone(&self) -> Self {
        Self { ring: self.ring.clone(), terms: self.terms.clone() }
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point.
pub fn poly_arith<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing<F>>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) { vec![] } else { vec![(m, c)] };
        Self { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing<F>>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(index), ring.field().one())
    }

    pub fn var_named(ring: &Arc<PolyRing<F>>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<Term<F::Elem>>) -> Self {
        let order = ring.order();
        let n = ring.nvars();
        let field = ring.field();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0, n));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Self { ring: ring.clone(), terms: out }
    }

    /// Build from sorted, zero-free terms without checking.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0, ring.nvars()) == Ordering::Greater));
        Self { ring: ring.clone(), terms }
    }

    /// Integer-coefficient constructor: `[(coeff, exponents)]`.
    pub fn from_int_terms(ring: &Arc<PolyRing<F>>, terms: &[(i64, &[u32])]) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::LengthMismatch(e.len(), ring.nvars()));
            }
            out.push((Monomial::from_exponents(e)?, ring.field().from_i64(*c)));
        }
        Ok(Self::from_terms(ring, out))
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub(crate) fn terms_vec(&self) -> &Vec<Term<F::Elem>> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Whether the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let one = self.field().one();
        Ok(Self {
            ring: self.ring.clone(),
            terms: add_scaled(
                self.field(),
                self.ring.order(),
                self.ring.nvars(),
                &self.terms,
                &one,
                &Monomial::one(),
                &other.terms,
            ),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let minus = self.field().neg(&self.field().one());
        Ok(Self {
            ring: self.ring.clone(),
            terms: add_scaled(
                self.field(),
                self.ring.order(),
                self.ring.nvars(),
                &self.terms,
                &minus,
                &Monomial::one(),
                &other.terms,
            ),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let field = self.field();
        let order = self.ring.order();
        let n = self.ring.nvars();
        let mut acc: Vec<Term<F::Elem>> = Vec::new();
        for (m, c) in &small.terms {
            acc = add_scaled(field, order, n, &acc, c, m, &large.terms);
        }
        Ok(Self { ring: self.ring.clone(), terms: acc })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (*m, field.mul(a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc)),
        }
    }

    /// Canonical representative of the line through `self`: monic over F_p,
    /// primitive with positive leading coefficient over the rationals.
    pub fn canonical(&self) -> Self {
        let coeffs: Vec<F::Elem> = self.terms.iter().map(|t| t.1.clone()).collect();
        self.scale(&self.field().canonical_scale(&coeffs))
    }

    /// Move into another ring with the same field. `map[i]` names the source
    /// variable feeding target slot `i`; every source variable that occurs must
    /// be mapped.
    pub fn remap(&self, target: &Arc<PolyRing<F>>, map: &[Option<usize>]) -> Result<Self> {
        let mut covered = 0u64;
        for src in map.iter().flatten() {
            covered |= 1 << src;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.support_mask() & !covered != 0 {
                return Err(Error::InvalidMap("polynomial uses a variable that has no image".into()));
            }
            terms.push((m.remap(map), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Evaluate every variable at a polynomial in `target` (a ring
    /// homomorphism on the polynomial ring, without any quotient).
    pub fn substitute(&self, target: &Arc<PolyRing<F>>, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidMap(format!("{} images for {} variables", images.len(), self.ring.nvars())));
        }
        for img in images {
            if !PolyRing::same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let n = self.ring.nvars();
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for v in 0..n {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

/// `f + c * m * g` for sorted term lists.
pub(crate) fn add_scaled<F: Field>(
    field: &F,
    order: MonomialOrder,
    nvars: usize,
    f: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    g: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < f.len() || j < g.len() {
        let ord = match (f.get(i), gm.as_ref()) {
            (Some(a), Some(b)) => order.compare(&a.0, b, nvars),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), field.mul(c, &g[j].1)));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let s = field.add(&f[i].1, &field.mul(c, &g[j].1));
                if !field.is_zero(&s) {
                    out.push((f[i].0, s));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings; use the
            /// `try_*` methods for a checked variant.
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&self.field().neg(&self.field().one()))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_polynomial(self, f)
    }
}
