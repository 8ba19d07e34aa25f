//! Leading-term ideals, Hilbert series of monomial ideals, Krull dimension
//! and multiplicity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyalg::{Field, Monomial, MonomialOrder, Polynomial};

/// `numerator / (1 − t)^denominator_exponent`, plus the reduced form with
/// every factor `(1 − t)` cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
    pub simplified_numerator: Vec<i64>,
    /// Remaining denominator exponent; `None` for the zero series (unit ideal).
    pub dimension: Option<usize>,
}

impl HilbertSeries {
    fn new(numerator: Vec<i64>, denominator_exponent: usize) -> Self {
        let numerator = trim(numerator);
        if numerator.is_empty() {
            return Self { numerator, denominator_exponent, simplified_numerator: vec![], dimension: None };
        }
        let mut simplified = numerator.clone();
        let mut dim = denominator_exponent;
        while dim > 0 && simplified.iter().sum::<i64>() == 0 {
            simplified = divide_by_one_minus_t(&simplified);
            dim -= 1;
        }
        Self { numerator, denominator_exponent, simplified_numerator: simplified, dimension: Some(dim) }
    }

    /// Simplified numerator evaluated at 1 (0 for the zero series).
    pub fn multiplicity(&self) -> i64 {
        self.simplified_numerator.iter().sum()
    }

    /// `dim_k (S/I)_j` read off the series.
    pub fn hilbert_function(&self, j: usize) -> i64 {
        let n = self.denominator_exponent as i64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| *i <= j)
            .map(|(i, c)| c * binomial(j as i64 - i as i64 + n - 1, n - 1))
            .sum()
    }

    /// `series · (1 − t)^k` as a polynomial, when `k` is at least the
    /// simplified denominator exponent.
    pub fn times_one_minus_t_power(&self, k: usize) -> Option<Vec<i64>> {
        match self.dimension {
            None => Some(vec![]),
            Some(d) if k >= d => {
                let mut p = self.simplified_numerator.clone();
                for _ in d..k {
                    p = multiply_by_one_minus_t(&p);
                }
                Some(trim(p))
            }
            Some(_) => None,
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(1-t)^{}", format_poly(&self.simplified_numerator), self.dimension.unwrap_or(0))
    }
}

fn format_poly(p: &[i64]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        let a = c.abs();
        match i {
            0 => s.push_str(&a.to_string()),
            _ => {
                if a != 1 {
                    s.push_str(&format!("{a}*"));
                }
                s.push('t');
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
        }
    }
    s
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return if k == -1 && n == -1 { 1 } else { 0 };
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn multiply_by_one_minus_t(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + 1] -= c;
    }
    out
}

fn divide_by_one_minus_t(p: &[i64]) -> Vec<i64> {
    // q_i = sum_{k <= i} p_k
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        out.push(acc);
    }
    trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Drop generators divisible by another generator; deterministic order.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.exponents(crate::polyalg::MAX_VARS)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S/M` over `(1 − t)^nvars`, by
/// splitting on a pivot power of the most frequent variable.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()), nvars)
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    // most frequent variable, ties broken by ring order
    let mut best = (0usize, 0usize);
    for v in 0..nvars {
        let count = gens.iter().filter(|g| g.exponent(v) > 0).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    let e = gens.iter().map(|g| g.exponent(v)).filter(|&e| e > 0).min().unwrap();
    let pivot = Monomial::one().with_exponent(v, e);

    // M + (pivot)
    let mut plus: Vec<Monomial> = gens.iter().copied().filter(|g| !pivot.divides(g)).collect();
    plus.push(pivot);
    // M : pivot
    let colon: Vec<Monomial> = gens.iter().map(|g| g.with_exponent(v, g.exponent(v).saturating_sub(e))).collect();

    let a = numerator_rec(minimalize(plus), nvars);
    let mut b = vec![0; e as usize];
    b.extend(numerator_rec(minimalize(colon), nvars));
    poly_add(&a, &b)
}

/// Krull dimension of `S/M`: the largest set of variables that contains the
/// support of no minimal generator. `None` for the unit ideal.
pub fn monomial_dimension(gens: &[Monomial], nvars: usize) -> Option<usize> {
    let gens = minimalize(gens.to_vec());
    if gens.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    // dimension = nvars - (minimum hitting set of the supports)
    fn min_cover(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        match supports.iter().filter(|s| *s & chosen == 0).min_by_key(|s| s.count_ones()) {
            None => *best = size,
            Some(&s) => {
                let mut bits = s;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    min_cover(supports, chosen | (1 << v), size + 1, best);
                }
            }
        }
    }
    let mut best = nvars + 1;
    min_cover(&supports, 0, 0, &mut best);
    Some(nvars - best)
}

/// Monomials of degree `d` not divisible by any of `lms`, in a fixed
/// deterministic order.
pub fn standard_monomials(lms: &[Monomial], nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(lms: &[Monomial], nvars: usize, var: usize, left: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        if lms.iter().any(|l| l.divides(&cur)) {
            return;
        }
        if var + 1 == nvars {
            let m = cur.with_exponent(var, left);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in (0..=left).rev() {
            rec(lms, nvars, var + 1, left - e, cur.with_exponent(var, e), out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 && lms.iter().all(|l| !l.is_one()) {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(lms, nvars, 0, d, Monomial::one(), &mut out);
    out
}

fn grevlex_basis_monomials<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Monomial>> {
    let gb = if ideal.ring().order() == MonomialOrder::Grevlex {
        ideal.groebner_basis().leading_monomials()
    } else {
        ideal.with_order(MonomialOrder::Grevlex)?.groebner_basis().leading_monomials()
    };
    Ok(gb)
}

/// Monomial ideal of leading terms under grevlex.
pub fn leading_term_ideal<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    if !ideal.ring().order().is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    let ring = ideal.ring();
    let gens = ideal
        .groebner_basis()
        .leading_monomials()
        .into_iter()
        .map(|m| Polynomial::monomial(ring, m, ring.field().one()))
        .collect();
    Ideal::new(ring, gens)
}

/// Hilbert series of `S/M` for a monomial ideal `M`.
pub fn hilbert_series<F: Field>(monomial_ideal: &Ideal<F>) -> Result<HilbertSeries> {
    let mut gens = Vec::new();
    for g in monomial_ideal.generators() {
        match g.len() {
            0 => {}
            1 => gens.push(g.terms()[0].0),
            _ => return Err(Error::NotMonomial),
        }
    }
    let n = monomial_ideal.ring().nvars();
    Ok(HilbertSeries::new(hilbert_numerator(&gens, n), n))
}

/// Hilbert series of `S/I` for homogeneous `I`, via grevlex leading terms.
pub fn quotient_hilbert_series<F: Field>(ideal: &Ideal<F>) -> Result<HilbertSeries> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let lms = grevlex_basis_monomials(ideal)?;
    let n = ideal.ring().nvars();
    Ok(HilbertSeries::new(hilbert_numerator(&lms, n), n))
}

/// Serialized as the number, or the string `"empty"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    /// The unit ideal: the quotient is the zero ring.
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn value(&self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Finite(d) => Some(*d),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Empty => s.serialize_str("empty"),
            Dimension::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Krull dimension of `S/I` from the grevlex leading-term ideal (valid for
/// inhomogeneous `I` as well).
pub fn krull_dimension<F: Field>(ideal: &Ideal<F>) -> Result<Dimension> {
    let lms = grevlex_basis_monomials(ideal)?;
    Ok(match monomial_dimension(&lms, ideal.ring().nvars()) {
        None => Dimension::Empty,
        Some(d) => Dimension::Finite(d),
    })
}

/// `dim_k (S/I)_j` as the rank of the normal forms of all degree-`j`
/// monomials; independent of the Hilbert-series recursion.
pub fn hilbert_function_by_normal_forms<F: Field>(ideal: &Ideal<F>, j: u32) -> Result<u64> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = ideal.ring();
    let n = ring.nvars();
    let one = ring.field().one();
    let mut columns: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    let rows: Vec<Vec<(usize, F::Elem)>> = standard_monomials(&[], n, j)
        .into_iter()
        .map(|m| {
            let nf = ideal.normal_form(&Polynomial::monomial(ring, m, one.clone()));
            nf.terms()
                .iter()
                .map(|(t, c)| {
                    let next = columns.len();
                    (*columns.entry(*t).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    Ok(ring.field().rank(rows) as u64)
}

/// Degree of `S/I` for homogeneous `I`.
pub fn multiplicity<F: Field>(ideal: &Ideal<F>) -> Result<u64> {
    let hs = quotient_hilbert_series(ideal)?;
    Ok(hs.multiplicity().max(0) as u64)
}
