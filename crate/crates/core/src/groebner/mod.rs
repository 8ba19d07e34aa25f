//! Ideals with cached reduced Gröbner bases and the ideal-level operations
//! built on them.

mod buchberger;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polyalg::{Field, Monomial, PolyRing, Polynomial};

use buchberger::{Ctx, Reducers, Terms};

pub use ops::{
    contains, eliminate, equal_ideals, exact_division, intersect, kernel_of_map, product, quotient_by_element,
};

/// A reduced Gröbner basis: monic, minimal and fully inter-reduced, sorted by
/// ascending leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    polys: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    fn compute(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>]) -> Self {
        let ctx = ctx(ring);
        let raw: Vec<Terms<F>> = gens.iter().map(|g| g.terms().to_vec()).collect();
        let basis = buchberger::groebner(&ctx, &raw);
        debug_assert!(buchberger::satisfies_buchberger_criterion(&ctx, &basis));
        Self { ring: ring.clone(), polys: basis.into_iter().map(|t| Polynomial::from_sorted(ring, t)).collect() }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn polynomials(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.leading_monomial().unwrap()).collect()
    }

    /// Remainder of `f` under full division by the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert!(PolyRing::same_ring(f.ring(), &self.ring), "ring mismatch");
        let ctx = ctx(&self.ring);
        let reducers = Reducers::<F>::new(self.polys.iter().map(term_ref));
        Polynomial::from_sorted(&self.ring, reducers.reduce(&ctx, f.terms().to_vec()))
    }

    /// Whether every S-polynomial reduces to zero modulo the basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let ctx = ctx(&self.ring);
        let raw: Vec<Terms<F>> = self.polys.iter().map(|p| p.terms().to_vec()).collect();
        buchberger::satisfies_buchberger_criterion(&ctx, &raw)
    }

    /// Basis elements in canonical form (see [`Polynomial::canonical`]).
    pub fn canonical(&self) -> Vec<Polynomial<F>> {
        self.polys.iter().map(Polynomial::canonical).collect()
    }
}

impl<F: Field> fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.polys.iter().map(|p| p.to_string())).finish()
    }
}

fn term_ref<F: Field>(p: &Polynomial<F>) -> &Terms<F> {
    // Polynomial stores exactly a Terms<F>
    p.terms_vec()
}

fn ctx<F: Field>(ring: &Arc<PolyRing<F>>) -> Ctx<'_, F> {
    Ctx { field: ring.field(), order: ring.order(), nvars: ring.nvars() }
}

/// An ideal given by generators, with a write-once cache of its reduced
/// Gröbner basis under the ring's order.
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Self { ring: self.ring.clone(), generators: self.generators.clone(), basis }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("variables", &self.ring.names())
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if generators.iter().any(|g| !PolyRing::same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Self { ring: ring.clone(), generators, basis: OnceLock::new() })
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self { ring: ring.clone(), generators: vec![], basis: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self { ring: ring.clone(), generators: vec![Polynomial::one(ring)], basis: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// The reduced Gröbner basis, computed on first use.
    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        self.basis.get_or_init(|| GroebnerBasis::compute(&self.ring, &self.generators))
    }

    pub fn has_cached_basis(&self) -> bool {
        self.basis.get().is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        self.groebner_basis().normal_form(f)
    }

    pub fn contains_element(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// The same ideal in a ring with identical variables and another order.
    pub fn with_order(&self, order: crate::polyalg::MonomialOrder) -> Result<Self> {
        if order == self.ring.order() {
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order)?;
        let map: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
        let gens = self.generators.iter().map(|g| g.remap(&ring, &map)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if !PolyRing::same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn groebner_basis<F: Field>(ideal: &Ideal<F>) -> &[Polynomial<F>] {
    ideal.groebner_basis().polynomials()
}

pub fn normal_form<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<Polynomial<F>> {
    if !PolyRing::same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(ideal.normal_form(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::text::parse_polynomial;
    use crate::polyalg::{MonomialOrder, PrimeField, Rationals};

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal<Rationals> {
        let ring = PolyRing::new(Rationals, names, MonomialOrder::Grevlex).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(&ring, g).unwrap()).collect();
        Ideal::new(&ring, gens).unwrap()
    }

    #[test]
    fn single_quadric_is_its_own_basis() {
        let i = ideal(&["a1", "b1", "c1"], &["a1^2 - b1*c1"]);
        let gb = groebner_basis(&i);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string(), "a1^2 - b1*c1");
    }

    #[test]
    fn unit_and_zero_ideals() {
        let i = ideal(&["x"], &["x", "x + 1"]);
        assert!(i.is_unit());
        assert_eq!(groebner_basis(&i)[0].to_string(), "1");
        let z = Ideal::zero(i.ring());
        assert!(groebner_basis(&z).is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let i = ideal(&["a1", "b1", "c1"], &["a1^2 - b1*c1"]);
        let r = i.ring().clone();
        assert!(normal_form(&parse_polynomial(&r, "a1^2 - b1*c1").unwrap(), &i).unwrap().is_zero());
        assert_eq!(normal_form(&Polynomial::one(&r), &i).unwrap(), Polynomial::one(&r));
        let f = parse_polynomial(&r, "a1^2*b1").unwrap();
        assert_eq!(normal_form(&f, &i).unwrap(), parse_polynomial(&r, "b1^2*c1").unwrap());
    }

    #[test]
    fn cyclic_three_basis_satisfies_criterion() {
        let i = ideal(&["x", "y", "z"], &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
        let gb = i.groebner_basis();
        assert!(gb.satisfies_buchberger_criterion());
        for g in i.generators() {
            assert!(gb.normal_form(g).is_zero());
        }
        // known leading monomials for cyclic-3 under grevlex: x, y^2, z^3
        let lms: Vec<_> = gb.leading_monomials().iter().map(|m| m.exponents(3)).collect();
        assert!(lms.contains(&vec![1, 0, 0]));
        assert!(lms.contains(&vec![0, 2, 0]));
        assert!(lms.contains(&vec![0, 0, 3]));
    }

    #[test]
    fn lex_basis_over_prime_field() {
        let ring = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y"], MonomialOrder::Lex).unwrap();
        let gens = ["x^2 + y^2 - 1", "x - y"].iter().map(|g| parse_polynomial(&ring, g).unwrap()).collect();
        let i = Ideal::new(&ring, gens).unwrap();
        let gb = groebner_basis(&i);
        let text: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        // 2y^2 = 1, i.e. y^2 = 4 = -3 mod 7
        assert_eq!(text, vec!["y^2 + 3", "x - y"]);
    }
}
