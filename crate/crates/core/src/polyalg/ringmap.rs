use std::sync::Arc;

use super::field::Field;
use super::poly::Polynomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// A ring map `source -> target / (target_relations)` given by the images of
/// the source variables.
#[derive(Clone, Debug)]
pub struct RingMap<F: Field> {
    source: Arc<PolyRing<F>>,
    target: Arc<PolyRing<F>>,
    images: Vec<Polynomial<F>>,
    relations: Ideal<F>,
}

impl<F: Field> RingMap<F> {
    pub fn new(
        source: &Arc<PolyRing<F>>,
        target: &Arc<PolyRing<F>>,
        images: Vec<Polynomial<F>>,
        target_relations: Vec<Polynomial<F>>,
    ) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::InvalidMap(format!("{} images for {} source variables", images.len(), source.nvars())));
        }
        if source.field() != target.field() {
            return Err(Error::InvalidMap("source and target fields differ".into()));
        }
        if images.iter().chain(&target_relations).any(|p| !PolyRing::same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
            relations: Ideal::new(target, target_relations)?,
        })
    }

    pub fn source(&self) -> &Arc<PolyRing<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing<F>> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    pub fn target_relations(&self) -> &[Polynomial<F>] {
        self.relations.generators()
    }

    pub fn relations_ideal(&self) -> &Ideal<F> {
        &self.relations
    }

    /// Substitute the images into `f` and reduce modulo the target relations.
    pub fn apply(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !PolyRing::same_ring(f.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        let raw = f.substitute(&self.target, &self.images)?;
        Ok(self.relations.normal_form(&raw))
    }
}

pub fn apply_map<F: Field>(map: &RingMap<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    map.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::text::parse_polynomial;
    use crate::polyalg::{MonomialOrder, Rationals};

    fn segre_map() -> RingMap<Rationals> {
        let src = PolyRing::new(Rationals, &["a1", "b1", "c1", "a2", "b2", "c2"], MonomialOrder::Grevlex).unwrap();
        let tgt = PolyRing::new(Rationals, &["x", "y", "lam1", "lam2"], MonomialOrder::Grevlex).unwrap();
        let imgs = ["lam1*x*y", "lam1*y^2", "lam1*x^2", "lam2*x*y", "lam2*y^2", "lam2*x^2"]
            .iter()
            .map(|s| parse_polynomial(&tgt, s).unwrap())
            .collect();
        RingMap::new(&src, &tgt, imgs, vec![]).unwrap()
    }

    #[test]
    fn substitution_of_a_square() {
        let map = segre_map();
        let f = parse_polynomial(map.source(), "a1^2").unwrap();
        let image = apply_map(&map, &f).unwrap();
        assert_eq!(image, parse_polynomial(map.target(), "lam1^2*x^2*y^2").unwrap());
    }

    #[test]
    fn antisymmetric_relation_dies() {
        let map = segre_map();
        let f = parse_polynomial(map.source(), "a1*b2 - a2*b1").unwrap();
        assert!(apply_map(&map, &f).unwrap().is_zero());
        let g = parse_polynomial(map.source(), "a1^2 - b1*c1").unwrap();
        assert!(apply_map(&map, &g).unwrap().is_zero());
    }

    #[test]
    fn reduces_modulo_target_relations() {
        // alpha -> c with c^2 + c*s - 1 = 0: c^2 reduces to 1 - c*s
        let src = PolyRing::new(Rationals, &["alpha"], MonomialOrder::Grevlex).unwrap();
        let tgt = PolyRing::new(Rationals, &["c", "s"], MonomialOrder::Grevlex).unwrap();
        let rel = parse_polynomial(&tgt, "c^2 + c*s - 1").unwrap();
        let map = RingMap::new(&src, &tgt, vec![parse_polynomial(&tgt, "c").unwrap()], vec![rel]).unwrap();
        let image = map.apply(&parse_polynomial(&src, "alpha^2").unwrap()).unwrap();
        // grevlex with c > s: c^2 and c*s are both degree 2; c^2 leads
        assert_eq!(image, parse_polynomial(&tgt, "-c*s + 1").unwrap());
        assert!(image.total_degree().unwrap() <= 2);
        assert!(image.terms().iter().all(|(m, _)| m.exponent(0) < 2));
    }

    #[test]
    fn map_is_multiplicative_modulo_relations() {
        let src = PolyRing::new(Rationals, &["u", "v"], MonomialOrder::Grevlex).unwrap();
        let tgt = PolyRing::new(Rationals, &["c", "s"], MonomialOrder::Grevlex).unwrap();
        let rel = parse_polynomial(&tgt, "c^2 + c*s - 1").unwrap();
        let imgs = vec![parse_polynomial(&tgt, "c + s").unwrap(), parse_polynomial(&tgt, "c*s - 2").unwrap()];
        let map = RingMap::new(&src, &tgt, imgs, vec![rel]).unwrap();
        let f = parse_polynomial(&src, "u^2 + v").unwrap();
        let g = parse_polynomial(&src, "u*v - 3").unwrap();
        let lhs = map.apply(&(&f * &g)).unwrap();
        let rhs = map.relations_ideal().normal_form(&(&map.apply(&f).unwrap() * &map.apply(&g).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn image_count_is_checked() {
        let src = PolyRing::new(Rationals, &["u", "v"], MonomialOrder::Grevlex).unwrap();
        let tgt = PolyRing::new(Rationals, &["x"], MonomialOrder::Grevlex).unwrap();
        let err = RingMap::new(&src, &tgt, vec![Polynomial::var(&tgt, 0)], vec![]).unwrap_err();
        assert!(matches!(err, Error::InvalidMap(_)));
    }
}
