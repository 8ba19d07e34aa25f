use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::polyalg::{Field, MonomialOrder, PolyRing, Polynomial, RingMap};

fn check_same<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<()> {
    if PolyRing::same_ring(i.ring(), j.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `J ⊆ I`: every generator of `J` has normal form zero modulo `I`.
pub fn contains<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    check_same(i, j)?;
    Ok(j.generators().iter().all(|g| i.contains_element(g)))
}

/// Equality by comparing canonical reduced Gröbner bases.
pub fn equal_ideals<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    check_same(i, j)?;
    Ok(i.groebner_basis().canonical() == j.groebner_basis().canonical())
}

/// `I ∩ k[x_{k+1}, …, x_n]`, presented in the ring of the last `n − k`
/// variables under grevlex. Eliminating zero variables returns `I` unchanged.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, k: usize) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if k > n {
        return Err(Error::InvalidBlock(k, n));
    }
    if k == 0 {
        return Ok(ideal.clone());
    }
    let block = ideal.with_order(MonomialOrder::Block(k))?;
    let sub = PolyRing::new(ring.field().clone(), &ring.names()[k..], MonomialOrder::Grevlex)?;
    let map: Vec<Option<usize>> = (k..n).map(Some).collect();
    let mut gens = Vec::new();
    for g in block.groebner_basis().polynomials() {
        if (0..k).any(|v| g.involves(v)) {
            continue;
        }
        gens.push(g.remap(&sub, &map)?);
    }
    Ideal::new(&sub, gens)
}

fn fresh_names(taken: &[String], prefix: &str, count: usize) -> Vec<String> {
    let mut prefix = prefix.to_string();
    loop {
        let names: Vec<String> = (0..count).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

/// Bring generators that live in a ring with the same variable names (any
/// order) back into `ring`.
fn into_ring<F: Field>(ring: &Arc<PolyRing<F>>, ideal: Ideal<F>) -> Result<Ideal<F>> {
    if PolyRing::same_ring(ring, ideal.ring()) {
        return Ok(ideal);
    }
    let map: Vec<Option<usize>> =
        ring.names().iter().map(|name| ideal.ring().var_index(name).map(Some)).collect::<Result<_>>()?;
    let gens = ideal.generators().iter().map(|g| g.remap(ring, &map)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I ∩ J` as `(t·I + (1 − t)·J) ∩ k[x]`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    let ring = i.ring();
    let n = ring.nvars();
    let t_name = fresh_names(ring.names(), "_t", 1);
    let mut names = t_name;
    names.extend(ring.names().iter().cloned());
    let big = PolyRing::new(ring.field().clone(), &names, MonomialOrder::Block(1))?;
    let lift: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::with_capacity(i.generators().len() + j.generators().len());
    for g in i.generators() {
        gens.push(&t * &g.remap(&big, &lift)?);
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.remap(&big, &lift)?);
    }
    let elim = eliminate(&Ideal::new(&big, gens)?, 1)?;
    into_ring(ring, elim)
}

/// Generators `f·g` for all pairs of generators.
pub fn product<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    check_same(i, j)?;
    let mut gens = Vec::with_capacity(i.generators().len() * j.generators().len());
    for f in i.generators() {
        for g in j.generators() {
            gens.push(f * g);
        }
    }
    Ideal::new(i.ring(), gens)
}

/// `g / f` when `f` divides `g` exactly.
pub fn exact_division<F: Field>(g: &Polynomial<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("division by zero polynomial".into()));
    }
    let ring = g.ring();
    let field = ring.field();
    let lm_f = *f.leading_monomial().unwrap();
    let lc_f = f.leading_coefficient().unwrap().clone();
    let mut rem = g.clone();
    let mut quotient = Vec::new();
    while let Some(lm) = rem.leading_monomial().copied() {
        let Some(q) = lm_f.quotient_of(&lm) else {
            return Err(Error::DivisionFailure(format!("{f} does not divide {g}")));
        };
        let c = field.div(rem.leading_coefficient().unwrap(), &lc_f);
        let step = f.mul_monomial(&q).scale(&c);
        rem = &rem - &step;
        quotient.push((q, c));
    }
    Ok(Polynomial::from_terms(ring, quotient))
}

/// `(I : f)`, computed as `(I ∩ (f)) / f`.
pub fn quotient_by_element<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>) -> Result<Ideal<F>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("colon by the zero polynomial".into()));
    }
    if !PolyRing::same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    let principal = Ideal::new(ideal.ring(), vec![f.clone()])?;
    let meet = intersect(ideal, &principal)?;
    let gens = meet.generators().iter().map(|g| exact_division(g, f)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// Kernel of `source → target / relations`, by eliminating the target
/// variables from `relations + (s_i − image_i)`.
pub fn kernel_of_map<F: Field>(map: &RingMap<F>) -> Result<Ideal<F>> {
    let source = map.source();
    let target = map.target();
    let m = target.nvars();
    let n = source.nvars();
    let mut names = fresh_names(source.names(), "_g", m);
    names.extend(source.names().iter().cloned());
    let big = PolyRing::new(source.field().clone(), &names, MonomialOrder::Block(m))?;
    let lift_target: Vec<Option<usize>> = (0..m).map(Some).chain((0..n).map(|_| None)).collect();
    let mut gens = Vec::with_capacity(n + map.target_relations().len());
    for rel in map.target_relations() {
        gens.push(rel.remap(&big, &lift_target)?);
    }
    for (s, image) in map.images().iter().enumerate() {
        let graph = &Polynomial::var(&big, m + s) - &image.remap(&big, &lift_target)?;
        gens.push(graph);
    }
    let kernel = into_ring(source, eliminate(&Ideal::new(&big, gens)?, m)?)?;
    for g in kernel.generators() {
        assert!(map.apply(g)?.is_zero(), "kernel generator {g} does not map to zero");
    }
    Ok(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::text::parse_polynomial;
    use crate::polyalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, names, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<PolyRing<F>>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap()).collect()).unwrap()
    }

    fn texts<F: Field>(i: &Ideal<F>) -> Vec<String> {
        i.groebner_basis().canonical().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn containment_examples() {
        let r = ring(&["a1"]);
        let a = ideal(&r, &["a1"]);
        let a2 = ideal(&r, &["a1^2"]);
        assert!(contains(&a, &a).unwrap());
        assert!(contains(&a, &a2).unwrap());
        assert!(!contains(&a2, &a).unwrap());
        assert!(!equal_ideals(&a, &a2).unwrap());
        assert!(equal_ideals(&a, &ideal(&r, &["3*a1", "a1^2 + a1"])).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x", "y"]);
        let i = ideal(&r, &["t*x - 1", "t*y"]);
        assert_eq!(texts(&eliminate(&i, 1).unwrap()), vec!["y"]);
        let graph = ideal(&r, &["x - t", "y - t^2"]);
        assert_eq!(texts(&eliminate(&graph, 1).unwrap()), vec!["x^2 - y"]);
        let same = eliminate(&graph, 0).unwrap();
        assert!(equal_ideals(&same, &graph).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(&["x", "y"]);
        let x = ideal(&r, &["x"]);
        let y = ideal(&r, &["y"]);
        assert_eq!(texts(&intersect(&x, &y).unwrap()), vec!["x*y"]);
        let unit = Ideal::unit(&r);
        assert!(equal_ideals(&intersect(&x, &unit).unwrap(), &x).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring(&["x", "y"]);
        let xy = ideal(&r, &["x*y"]);
        let x = parse_polynomial(&r, "x").unwrap();
        assert_eq!(texts(&quotient_by_element(&xy, &x).unwrap()), vec!["y"]);
        let same = quotient_by_element(&xy, &Polynomial::one(&r)).unwrap();
        assert!(equal_ideals(&same, &xy).unwrap());
        assert!(quotient_by_element(&xy, &Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn exact_division_detects_remainders() {
        let r = ring(&["x", "y"]);
        let g = parse_polynomial(&r, "x^2 - y^2").unwrap();
        let f = parse_polynomial(&r, "x + y").unwrap();
        assert_eq!(exact_division(&g, &f).unwrap(), parse_polynomial(&r, "x - y").unwrap());
        let h = parse_polynomial(&r, "x^2 + y").unwrap();
        assert!(matches!(exact_division(&h, &f), Err(Error::DivisionFailure(_))));
    }

    #[test]
    fn kernel_examples() {
        let src = ring(&["y"]);
        let tgt = ring(&["x"]);
        let map = RingMap::new(&src, &tgt, vec![parse_polynomial(&tgt, "x^2").unwrap()], vec![]).unwrap();
        assert!(kernel_of_map(&map).unwrap().groebner_basis().is_empty());

        let src = ring(&["u", "v", "w"]);
        let tgt = ring(&["x", "y"]);
        let imgs = ["x^2", "x*y", "y^2"].iter().map(|s| parse_polynomial(&tgt, s).unwrap()).collect();
        let map = RingMap::new(&src, &tgt, imgs, vec![]).unwrap();
        assert_eq!(texts(&kernel_of_map(&map).unwrap()), vec!["v^2 - u*w"]);
    }

    #[test]
    fn kernel_with_quadratic_relation() {
        // alpha -> c, beta -> s with c^2 + c*s - 1 = 0
        let src = ring(&["alpha", "beta"]);
        let tgt = ring(&["c", "s"]);
        let imgs = vec![parse_polynomial(&tgt, "c").unwrap(), parse_polynomial(&tgt, "s").unwrap()];
        let rel = parse_polynomial(&tgt, "c^2 + c*s - 1").unwrap();
        let map = RingMap::new(&src, &tgt, imgs, vec![rel]).unwrap();
        assert_eq!(texts(&kernel_of_map(&map).unwrap()), vec!["alpha^2 + alpha*beta - 1"]);
    }

    fn arb_gens() -> impl Strategy<Value = Vec<String>> {
        let term = (1i64..4, 0u32..3, 0u32..3, 0u32..2).prop_map(|(c, a, b, d)| format!("{c}*x^{a}*y^{b}*z^{d}"));
        let poly = prop::collection::vec(term, 1..3).prop_map(|ts| ts.join(" - "));
        prop::collection::vec(poly, 1..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn intersection_is_commutative_and_contained(a in arb_gens(), b in arb_gens()) {
            let r = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
            let i = Ideal::new(&r, a.iter().map(|g| parse_polynomial(&r, g).unwrap()).collect()).unwrap();
            let j = Ideal::new(&r, b.iter().map(|g| parse_polynomial(&r, g).unwrap()).collect()).unwrap();
            let ij = intersect(&i, &j).unwrap();
            let ji = intersect(&j, &i).unwrap();
            prop_assert!(equal_ideals(&ij, &ji).unwrap());
            prop_assert!(contains(&i, &ij).unwrap());
            prop_assert!(contains(&j, &ij).unwrap());
            prop_assert!(contains(&ij, &product(&i, &j).unwrap()).unwrap());
            prop_assert_eq!(
                contains(&i, &j).unwrap() && contains(&j, &i).unwrap(),
                equal_ideals(&i, &j).unwrap()
            );
        }

        #[test]
        fn normal_form_is_idempotent_and_linear(a in arb_gens(), f in arb_gens()) {
            let r = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
            let i = Ideal::new(&r, a.iter().map(|g| parse_polynomial(&r, g).unwrap()).collect()).unwrap();
            let p = parse_polynomial(&r, &f[0]).unwrap();
            let q = parse_polynomial(&r, f.last().unwrap()).unwrap();
            let nf = i.normal_form(&p);
            prop_assert_eq!(i.normal_form(&nf), nf.clone());
            prop_assert!(i.contains_element(&(&p - &nf)));
            let lin = i.normal_form(&(&p.scale(&3) + &q));
            prop_assert_eq!(lin, &nf.scale(&3) + &i.normal_form(&q));
        }
    }
}
