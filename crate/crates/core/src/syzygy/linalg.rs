//! Exact rank of sparse matrices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polyalg::Field;

type SparseRow<E> = Vec<(usize, E)>;

fn normalize_row<E>(mut row: SparseRow<E>) -> SparseRow<E> {
    row.sort_by_key(|e| e.0);
    row
}

/// Rank by plain Gaussian elimination over the field. Rows are (column,
/// value) lists; duplicate columns are not allowed and zeros are ignored.
pub fn rank_by_elimination<F: Field>(field: &F, rows: Vec<SparseRow<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    let mut rows: Vec<SparseRow<F::Elem>> = rows
        .into_iter()
        .map(|r| normalize_row(r.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()))
        .filter(|r: &SparseRow<F::Elem>| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| (r.len(), r[0].0));
    for mut row in rows {
        while let Some((col, lead)) = row.first().cloned() {
            match pivots.get(&col) {
                Some(pivot) => row = axpy(field, &row, &field.neg(&lead), pivot),
                None => {
                    let inv = field.inv(&lead);
                    let scaled = row.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect();
                    pivots.insert(col, scaled);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row + factor * pivot` with sorted sparse rows.
fn axpy<F: Field>(
    field: &F,
    row: &[(usize, F::Elem)],
    factor: &F::Elem,
    pivot: &[(usize, F::Elem)],
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, field.mul(factor, &pivot[j].1)));
            j += 1;
        } else {
            let v = field.add(&row[i].1, &field.mul(factor, &pivot[j].1));
            if !field.is_zero(&v) {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over the rationals by fraction-free elimination on integer rows.
pub fn rank_fraction_free(rows: Vec<SparseRow<BigRational>>) -> usize {
    let mut int_rows: Vec<SparseRow<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let r: Vec<_> = r.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let den = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let ints = r.into_iter().map(|(c, v)| (c, v.numer() * (&den / v.denom()))).collect();
            primitive(normalize_row(ints))
        })
        .filter(|r: &SparseRow<BigInt>| !r.is_empty())
        .collect();
    int_rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut pivots: HashMap<usize, SparseRow<BigInt>> = HashMap::new();
    for mut row in int_rows {
        while let Some((col, lead)) = row.first().cloned() {
            match pivots.get(&col) {
                Some(pivot) => {
                    // p * row - lead * pivot, divided by gcd(p, lead) first
                    let p = &pivot[0].1;
                    let g = p.gcd(&lead);
                    let a = p / &g;
                    let b = -(&lead / &g);
                    row = primitive(combine(&a, &row, &b, pivot));
                }
                None => {
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b * &y[j].1));
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn primitive(mut row: SparseRow<BigInt>) -> SparseRow<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn dense_rank_q(m: &[Vec<i64>]) -> usize {
        // textbook rational elimination as an independent check
        let mut a: Vec<Vec<BigRational>> =
            m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..cols {
                        let d = &f * &a[rank][k];
                        a[r][k] = &a[r][k] - d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse<E, G: Fn(i64) -> E>(m: &[Vec<i64>], conv: G) -> Vec<SparseRow<E>> {
        m.iter().map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, conv(*v))).collect()).collect()
    }

    #[test]
    fn small_examples() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(Rationals.rank(sparse(&m, |v| BigRational::from_integer(v.into()))), 2);
        let f5 = PrimeField::new(5).unwrap();
        // rank drops mod 5: det = 5
        let m = vec![vec![1, 2], vec![3, 11]];
        assert_eq!(f5.rank(sparse(&m, |v| f5.from_i64(v))), 1);
        assert_eq!(Rationals.rank(sparse(&m, |v| BigRational::from_integer(v.into()))), 2);
    }

    proptest! {
        #[test]
        fn fraction_free_matches_dense(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6)) {
            let expected = dense_rank_q(&m);
            prop_assert_eq!(Rationals.rank(sparse(&m, |v| BigRational::from_integer(v.into()))), expected);
            // rank over F_p is at most the rational rank
            let f = PrimeField::new(3).unwrap();
            prop_assert!(f.rank(sparse(&m, |v| f.from_i64(v))) <= expected);
            let f = PrimeField::new(1_000_003).unwrap();
            prop_assert_eq!(f.rank(sparse(&m, |v| f.from_i64(v))), expected);
        }
    }
}
