//! Ideals of the moduli spaces `A_r`, `B°_r`, `B_r` and `C_r` of tuples of
//! strongly nilpotent 2×2 matrices, their component decompositions and
//! parametrization certificates.
//!
//! A strongly nilpotent matrix is encoded by three variables as
//! `m = [[a, b], [−c, −a]]`, so trace vanishes identically and
//! `det m = bc − a²`. Variables are ordered `a1, b1, c1, …, phi1..phi4, alpha`.

mod components;
mod flatness;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyalg::{CoefficientField, Field, MonomialOrder, PolyRing, Polynomial};

pub use components::{
    a_certificate, a_parametrization, b_certificate, b_parametrization, certify_prime, component_ideals_c,
    ComponentCertificate, DomainCertificate, PrimeVerdict,
};
pub use flatness::{verify_flatness, FiberSummary, FlatnessReport};
pub use verify::{
    betti_space, construct_space, decompose_c, dimensions_across, expected_dimension, expected_generator_count,
    invariants_space, predict_space, verify_space, Decomposition, Windows, CHARACTERISTICS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    A,
    B0,
    B,
    C,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::A => "A",
            Space::B0 => "B0",
            Space::B => "B",
            Space::C => "C",
        })
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Space::A),
            "B0" => Ok(Space::B0),
            "B" => Ok(Space::B),
            "C" => Ok(Space::C),
            other => Err(Error::InvalidInput(format!("unknown space {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliSpec {
    pub space: Space,
    pub r: usize,
    pub field: CoefficientField,
}

impl ModuliSpec {
    pub fn new(space: Space, r: usize, field: CoefficientField) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("r must be at least 1".into()));
        }
        Ok(Self { space, r, field })
    }
}

/// Variable names: `a_i, b_i, c_i` for `1 ≤ i ≤ m`, then optionally
/// `phi1..phi4, alpha`.
pub fn moduli_variable_names(m: usize, with_phi: bool) -> Vec<String> {
    let mut names = Vec::with_capacity(3 * m + 5);
    for i in 1..=m {
        names.extend([format!("a{i}"), format!("b{i}"), format!("c{i}")]);
    }
    if with_phi {
        names.extend(["phi1", "phi2", "phi3", "phi4", "alpha"].map(String::from));
    }
    names
}

fn moduli_ring<F: Field>(field: F, m: usize, with_phi: bool) -> Result<Arc<PolyRing<F>>> {
    PolyRing::new(field, &moduli_variable_names(m, with_phi), MonomialOrder::Grevlex)
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidInput("r must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// A traceless matrix given by its `(a, b, c)` coordinates.
#[derive(Clone)]
pub(crate) struct Nil<F: Field> {
    pub a: Polynomial<F>,
    pub b: Polynomial<F>,
    pub c: Polynomial<F>,
}

impl<F: Field> Nil<F> {
    fn of(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        let base = 3 * (i - 1);
        Self { a: Polynomial::var(ring, base), b: Polynomial::var(ring, base + 1), c: Polynomial::var(ring, base + 2) }
    }

    fn matrix(&self) -> Mat<F> {
        [[self.a.clone(), self.b.clone()], [-&self.c, -&self.a]]
    }
}

type Mat<F> = [[Polynomial<F>; 2]; 2];

fn mat_mul<F: Field>(x: &Mat<F>, y: &Mat<F>) -> Mat<F> {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_sub<F: Field>(x: &Mat<F>, y: &Mat<F>) -> Mat<F> {
    let e = |i: usize, j: usize| &x[i][j] - &y[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_scale<F: Field>(s: &Polynomial<F>, x: &Mat<F>) -> Mat<F> {
    let e = |i: usize, j: usize| s * &x[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn entries<F: Field>(m: Mat<F>) -> [Polynomial<F>; 4] {
    let [[p, q], [r, s]] = m;
    [p, q, r, s]
}

/// `m_i m_j = 0` for all pairs, written as `a_i a_j − b_i c_j` (ordered pairs,
/// including `i = j`), then `a_i b_j − a_j b_i` and `a_i c_j − a_j c_i` (`i < j`).
pub(crate) fn a_relations<F: Field>(ms: &[Nil<F>]) -> Vec<Polynomial<F>> {
    let mut out = Vec::new();
    for mi in ms {
        for mj in ms {
            out.push(&(&mi.a * &mj.a) - &(&mi.b * &mj.c));
        }
    }
    for (i, mi) in ms.iter().enumerate() {
        for mj in &ms[i + 1..] {
            out.push(&(&mi.a * &mj.b) - &(&mj.a * &mi.b));
            out.push(&(&mi.a * &mj.c) - &(&mj.a * &mi.c));
        }
    }
    out
}

pub(crate) struct PhiAlpha<F: Field> {
    pub phi: Mat<F>,
    pub alpha: Polynomial<F>,
}

impl<F: Field> PhiAlpha<F> {
    fn of(ring: &Arc<PolyRing<F>>) -> Self {
        let n = ring.nvars();
        let v = |k: usize| Polynomial::var(ring, n - 5 + k);
        Self { phi: [[v(0), v(1)], [v(2), v(3)]], alpha: v(4) }
    }

    fn trace(&self) -> Polynomial<F> {
        &self.phi[0][0] + &self.phi[1][1]
    }

    fn det(&self) -> Polynomial<F> {
        &(&self.phi[0][0] * &self.phi[1][1]) - &(&self.phi[0][1] * &self.phi[1][0])
    }

    /// Entries of `m φ − α m`.
    fn eigen_relations(&self, m: &Nil<F>) -> [Polynomial<F>; 4] {
        let mm = m.matrix();
        entries(mat_sub(&mat_mul(&mm, &self.phi), &mat_scale(&self.alpha, &mm)))
    }

    /// `α² − tr(φ) α + det(φ)`.
    fn characteristic(&self) -> Polynomial<F> {
        &(&(&self.alpha * &self.alpha) - &(&self.trace() * &self.alpha)) + &self.det()
    }

    fn det_minus_one(&self) -> Polynomial<F> {
        &self.det() - &Polynomial::one(self.alpha.ring())
    }

    /// Entries of `m φ − φ m`.
    fn commutator(&self, m: &Nil<F>) -> [Polynomial<F>; 4] {
        let mm = m.matrix();
        entries(mat_sub(&mat_mul(&mm, &self.phi), &mat_mul(&self.phi, &mm)))
    }
}

/// `A_r` in `k[a_i, b_i, c_i]`, with `C(2r, 2)` quadrics.
pub fn construct_a<F: Field>(field: F, r: usize) -> Result<Ideal<F>> {
    check_r(r)?;
    let ring = moduli_ring(field, r, false)?;
    let ms: Vec<Nil<F>> = (1..=r).map(|i| Nil::of(&ring, i)).collect();
    Ideal::new(&ring, a_relations(&ms))
}

fn b_generators<F: Field>(ring: &Arc<PolyRing<F>>, r: usize) -> Vec<Polynomial<F>> {
    let ms: Vec<Nil<F>> = (1..=r).map(|i| Nil::of(ring, i)).collect();
    let pa = PhiAlpha::of(ring);
    let mut gens = a_relations(&ms);
    for m in &ms {
        gens.extend(pa.eigen_relations(m));
    }
    gens.push(pa.characteristic());
    gens
}

/// `B°_r`: the `A_r` relations, `m_i φ = α m_i` and the characteristic
/// polynomial of `φ` at `α`. Homogeneous of degree 2.
pub fn construct_b0<F: Field>(field: F, r: usize) -> Result<Ideal<F>> {
    check_r(r)?;
    let ring = moduli_ring(field, r, true)?;
    Ideal::new(&ring, b_generators(&ring, r))
}

/// `B_r = B°_r + (det φ − 1)`.
pub fn construct_b<F: Field>(field: F, r: usize) -> Result<Ideal<F>> {
    let b0 = construct_b0(field, r)?;
    b0.with_generators([det_minus_one(b0.ring())])
}

/// `det φ − 1` in a ring ending with `phi1..phi4, alpha`.
pub fn det_minus_one<F: Field>(ring: &Arc<PolyRing<F>>) -> Polynomial<F> {
    PhiAlpha::of(ring).det_minus_one()
}

/// `C_r` in `k[a_i, b_i, c_i (i ≤ r + 1), φ, α]`.
pub fn construct_c<F: Field>(field: F, r: usize) -> Result<Ideal<F>> {
    check_r(r)?;
    let ring = moduli_ring(field, r + 1, true)?;
    let ms: Vec<Nil<F>> = (1..=r + 1).map(|i| Nil::of(&ring, i)).collect();
    let pa = PhiAlpha::of(&ring);
    let mut gens = a_relations(&ms);
    for m in &ms {
        gens.extend(pa.eigen_relations(m));
    }
    gens.extend(pa.commutator(&ms[r]));
    gens.push(pa.characteristic());
    gens.push(pa.det_minus_one());
    Ideal::new(&ring, gens)
}

/// The special fiber of the local deformation ring for `d`: the same ideal
/// as [`construct_c`] with `r = d`.
pub fn deformation_special_fiber<F: Field>(field: F, d: usize) -> Result<Ideal<F>> {
    construct_c(field, d)
}

/// Constructor dispatch by space.
pub fn construct<F: Field>(field: F, space: Space, r: usize) -> Result<Ideal<F>> {
    match space {
        Space::A => construct_a(field, r),
        Space::B0 => construct_b0(field, r),
        Space::B => construct_b(field, r),
        Space::C => construct_c(field, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{PrimeField, Rationals};

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }

    #[test]
    fn generator_counts() {
        let a1 = construct_a(Rationals, 1).unwrap();
        assert_eq!(a1.generators().len(), 1);
        assert_eq!(a1.generators()[0].to_string(), "a1^2 - b1*c1");
        for r in 1..=4 {
            assert_eq!(construct_a(Rationals, r).unwrap().generators().len(), binomial(2 * r, 2));
        }
        let b0 = construct_b0(Rationals, 1).unwrap();
        assert_eq!(b0.generators().len(), 6);
        assert!(b0.is_homogeneous());
        let b = construct_b(Rationals, 1).unwrap();
        assert_eq!(b.generators().len(), 7);
        assert!(!b.is_homogeneous());
        let c = construct_c(Rationals, 1).unwrap();
        assert_eq!((c.generators().len(), c.ring().nvars()), (20, 11));
        assert!(construct_a(Rationals, 0).is_err());
    }

    #[test]
    fn matrices_are_traceless_with_determinant_in_the_ideal() {
        let i = construct_a(PrimeField::new(5).unwrap(), 2).unwrap();
        for k in 1..=2 {
            let m = Nil::of(i.ring(), k).matrix();
            assert!((&m[0][0] + &m[1][1]).is_zero());
            let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
            assert!(i.contains_element(&det));
        }
    }

    #[test]
    fn b_equations_in_text() {
        let b0 = construct_b0(Rationals, 1).unwrap();
        let text: Vec<String> = b0.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "a1^2 - b1*c1",
                "a1*phi1 + b1*phi3 - a1*alpha",
                "a1*phi2 + b1*phi4 - b1*alpha",
                "-c1*phi1 - a1*phi3 + c1*alpha",
                "-c1*phi2 - a1*phi4 + a1*alpha",
                "-phi2*phi3 + phi1*phi4 - phi1*alpha - phi4*alpha + alpha^2",
            ]
        );
    }

    #[test]
    fn space_names_round_trip() {
        for s in [Space::A, Space::B0, Space::B, Space::C] {
            assert_eq!(s.to_string().parse::<Space>().unwrap(), s);
        }
        assert!("D".parse::<Space>().is_err());
    }
}
