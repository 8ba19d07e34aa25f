//! Koszul homology `H_n(W; S/I)_j`, graded piece by graded piece.
//!
//! Each `R_d` is spanned by the grevlex standard monomials of degree `d`.
//! The differential preserves every grading for which `I` is homogeneous,
//! so each rank is split into blocks by the finest such multidegree.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BettiTable;
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal};
use crate::invariants::{monomial_dimension, quotient_hilbert_series, standard_monomials};
use crate::par::Execution;
use crate::polyalg::{Field, Monomial, MonomialOrder, Polynomial};

type Sparse<E> = Vec<(usize, E)>;

/// Koszul Betti numbers with variables given by name.
pub fn koszul_betti_named<F: Field>(
    ideal: &Ideal<F>,
    names: &[&str],
    window: (usize, u32),
    exec: Execution,
) -> Result<BettiTable> {
    let vars = names.iter().map(|n| ideal.ring().var_index(n)).collect::<Result<Vec<_>>>()?;
    koszul_betti(ideal, &vars, window, exec)
}

/// `β_{n,j} = dim H_n(K(W; S/I))_j` for `n ≤ max_n`, `j ≤ max_j`.
pub fn koszul_betti<F: Field>(
    ideal: &Ideal<F>,
    vars: &[usize],
    window: (usize, u32),
    exec: Execution,
) -> Result<BettiTable> {
    let nvars = ideal.ring().nvars();
    if vars.iter().any(|&v| v >= nvars) {
        return Err(Error::UnknownVariable(format!("index {}", vars.iter().max().unwrap())));
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vars.len() {
        return Err(Error::DuplicateVariable("repeated Koszul variable".into()));
    }
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ideal = ideal.with_order(MonomialOrder::Grevlex)?;
    let w = vars.len();
    let (max_n, max_j) = (window.0.min(w), window.1);
    let names: Vec<String> = vars.iter().map(|&v| ideal.ring().names()[v].clone()).collect();
    let mut table = BettiTable { koszul_variables: names, window: (max_n, max_j), ..BettiTable::default() };

    let gb = ideal.groebner_basis();
    if gb.is_unit() {
        table.certified = true;
        return Ok(table);
    }

    // R must be finite over k[W]: I + (W) is zero-dimensional
    let ring = ideal.ring().clone();
    let fibre = ideal.with_generators(vars.iter().map(|&v| Polynomial::var(&ring, v)))?;
    let fibre_lms = fibre.groebner_basis().leading_monomials();
    if monomial_dimension(&fibre_lms, nvars) != Some(0) {
        return Err(Error::UnsupportedRegime("quotient is not finite over the Koszul variables".into()));
    }
    let top_generator = (0..).take_while(|&d| !standard_monomials(&fibre_lms, nvars, d).is_empty()).last().unwrap_or(0);
    if max_j < top_generator {
        return Err(Error::WindowTooSmall(format!(
            "module generators reach degree {top_generator}, window stops at {max_j}"
        )));
    }

    let lms = gb.leading_monomials();
    let bases: Vec<Vec<Monomial>> = (0..=max_j).map(|d| standard_monomials(&lms, nvars, d)).collect();
    let weights = grading_weights(ideal.generators(), nvars);
    let mult = multiplication_tables(gb, &bases, vars, exec);

    // rank of ∂_n on the degree-j piece, for 1 ≤ n ≤ min(max_n + 1, w)
    let cells: Vec<(usize, u32)> =
        (1..=(max_n + 1).min(w)).flat_map(|n| (n as u32..=max_j).map(move |j| (n, j))).collect();
    let field = ring.field();
    let ranks: HashMap<(usize, u32), usize> = cells
        .iter()
        .copied()
        .zip(exec.map(&cells, |&(n, j)| differential_rank(field, &bases, &mult, &weights, vars, n, j - n as u32)))
        .collect();
    let rank = |n: usize, j: u32| ranks.get(&(n, j)).copied().unwrap_or(0);

    for n in 0..=max_n {
        for j in n as u32..=max_j {
            let dim = bases[(j - n as u32) as usize].len() * binomial(w, n);
            let beta = dim - rank(n, j) - rank(n + 1, j);
            table.add(n, j, beta as u64);
        }
    }

    let series = quotient_hilbert_series(&ideal)?;
    table.certified = max_n == w
        && match series.times_one_minus_t_power(w) {
            Some(p) => p.len() <= max_j as usize + 1 && table.euler_polynomial() == p,
            None => false,
        };
    Ok(table)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `mult[d][k][i]` = normal form of `x_{vars[k]} · bases[d][i]` as a sparse
/// vector over `bases[d + 1]`.
fn multiplication_tables<F: Field>(
    gb: &GroebnerBasis<F>,
    bases: &[Vec<Monomial>],
    vars: &[usize],
    exec: Execution,
) -> Vec<Vec<Vec<Sparse<F::Elem>>>> {
    let ring = gb.ring();
    let one = ring.field().one();
    let index: Vec<HashMap<Monomial, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect()).collect();
    let degrees: Vec<usize> = (0..bases.len().saturating_sub(1)).collect();
    exec.map(&degrees, |&d| {
        vars.iter()
            .map(|&v| {
                let x = Monomial::var(v);
                bases[d]
                    .iter()
                    .map(|m| {
                        let prod = m.mul(&x);
                        if let Some(&i) = index[d + 1].get(&prod) {
                            return vec![(i, one.clone())];
                        }
                        let nf = gb.normal_form(&Polynomial::monomial(ring, prod, one.clone()));
                        nf.terms().iter().map(|(m, c)| (index[d + 1][m], c.clone())).collect()
                    })
                    .collect()
            })
            .collect()
    })
}

/// Rank of `∂_n : R_d ⊗ Λ^n → R_{d+1} ⊗ Λ^{n−1}`.
fn differential_rank<F: Field>(
    field: &F,
    bases: &[Vec<Monomial>],
    mult: &[Vec<Vec<Sparse<F::Elem>>>],
    weights: &[Vec<i64>],
    vars: &[usize],
    n: usize,
    d: u32,
) -> usize {
    let d = d as usize;
    if bases[d].is_empty() || d + 1 >= bases.len() {
        return 0;
    }
    let w = vars.len();
    let var_weight = |k: usize| -> Vec<i64> { weights.iter().map(|wt| wt[vars[k]]).collect() };
    let var_weights: Vec<Vec<i64>> = (0..w).map(var_weight).collect();
    let mono_weights: Vec<Vec<i64>> = bases[d]
        .iter()
        .map(|m| weights.iter().map(|wt| (0..wt.len()).map(|v| wt[v] * m.exponent(v) as i64).sum()).collect())
        .collect();

    let mut blocks: BTreeMap<Vec<i64>, Vec<Sparse<F::Elem>>> = BTreeMap::new();
    for subset in subsets(w, n) {
        let mut sw = vec![0i64; weights.len()];
        for &k in &subset {
            for (a, b) in sw.iter_mut().zip(&var_weights[k]) {
                *a += b;
            }
        }
        let mask: u64 = subset.iter().map(|&k| 1u64 << k).sum();
        for (i, mw) in mono_weights.iter().enumerate() {
            let mut row: Sparse<F::Elem> = Vec::new();
            for (s, &k) in subset.iter().enumerate() {
                let face = (mask & !(1u64 << k)) as usize;
                let neg = s % 2 == 1;
                for (t, c) in &mult[d][k][i] {
                    let col = t << w | face;
                    row.push((col, if neg { field.neg(c) } else { c.clone() }));
                }
            }
            if row.is_empty() {
                continue;
            }
            let key: Vec<i64> = mw.iter().zip(&sw).map(|(a, b)| a + b).collect();
            blocks.entry(key).or_default().push(row);
        }
    }
    blocks.into_values().map(|rows| field.rank(rows)).sum()
}

/// All `n`-element subsets of `0..w`, increasing.
fn subsets(w: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, w: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..w {
            if w - k < n - cur.len() {
                break;
            }
            cur.push(k);
            rec(k + 1, w, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, w, n, &mut Vec::new(), &mut out);
    out
}

/// Integer weight vectors spanning every grading under which all `gens`
/// are homogeneous: the rational kernel of the term-difference matrix.
fn grading_weights<F: Field>(gens: &[Polynomial<F>], nvars: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in gens {
        let Some((lead, _)) = g.terms().first() else { continue };
        for (m, _) in &g.terms()[1..] {
            rows.push(
                (0..nvars)
                    .map(|v| BigRational::from_integer((m.exponent(v) as i64 - lead.exponent(v) as i64).into()))
                    .collect(),
            );
        }
    }
    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..nvars {
                    let delta = &f * &rows[r][k];
                    rows[i][k] = &rows[i][k] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); nvars];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            let den = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| (x.numer() * (&den / x.denom())).to_i64().expect("small weights")).collect::<Vec<i64>>()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|x| x.abs() > 0))
        .map(|v| {
            if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
                v.iter().map(|x| -x).collect()
            } else {
                v
            }
        })
        .collect()
}
