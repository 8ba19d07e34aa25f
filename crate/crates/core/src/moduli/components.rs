//! Parametrizations, primality certificates and the three components of `C_r`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{a_relations, b_generators, construct_a, construct_b, moduli_ring, Nil, PhiAlpha};
use crate::error::{Error, Result};
use crate::groebner::{contains, kernel_of_map, Ideal};
use crate::polyalg::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, RingMap};

/// Why the target of a parametrization is a domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainCertificate {
    PolynomialRing,
    /// `k[…][X]/(X² + sX + u)` with `u` a nonzero constant and `s`
    /// nonconstant: a factorization would give a root that is a unit in a
    /// polynomial ring, hence constant, forcing `s` constant.
    MonicQuadratic {
        variable: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    pub ideal_in_kernel: bool,
    pub kernel_in_ideal: bool,
    pub domain: Option<DomainCertificate>,
}

impl std::fmt::Display for PrimeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ideal in kernel {}, kernel in ideal {}, domain ", self.ideal_in_kernel, self.kernel_in_ideal)?;
        match &self.domain {
            None => f.write_str("none"),
            Some(DomainCertificate::PolynomialRing) => f.write_str("polynomial ring"),
            Some(DomainCertificate::MonicQuadratic { variable }) => write!(f, "monic quadratic in {variable}"),
        }
    }
}

impl PrimeVerdict {
    pub fn is_prime(&self) -> bool {
        self.ideal_in_kernel && self.kernel_in_ideal && self.domain.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct ComponentCertificate<F: Field> {
    pub name: String,
    pub component_ideal: Ideal<F>,
    pub parametrization: RingMap<F>,
    pub verified_prime: bool,
    pub verified_contains_total: bool,
}

impl<F: Field> ComponentCertificate<F> {
    pub fn new(name: &str, component_ideal: Ideal<F>, parametrization: RingMap<F>) -> Result<Self> {
        if !PolyRing::same_ring(component_ideal.ring(), parametrization.source()) {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            name: name.into(),
            component_ideal,
            parametrization,
            verified_prime: false,
            verified_contains_total: false,
        })
    }

    /// Run the prime certificate and, when given, the containment of the
    /// total ideal; records both flags.
    pub fn certify(&mut self, total: Option<&Ideal<F>>) -> Result<PrimeVerdict> {
        let verdict = certify_prime(self)?;
        self.verified_prime = verdict.is_prime();
        if let Some(total) = total {
            self.verified_contains_total = contains(&self.component_ideal, total)?;
        }
        Ok(verdict)
    }
}

/// Kernel equality in both directions plus a domain certificate for the
/// target.
pub fn certify_prime<F: Field>(cert: &ComponentCertificate<F>) -> Result<PrimeVerdict> {
    let map = &cert.parametrization;
    let ideal = &cert.component_ideal;
    let mut ideal_in_kernel = true;
    for g in ideal.generators() {
        if !map.apply(g)?.is_zero() {
            ideal_in_kernel = false;
            break;
        }
    }
    let kernel = kernel_of_map(map)?;
    let kernel_in_ideal = contains(ideal, &kernel)?;
    Ok(PrimeVerdict { ideal_in_kernel, kernel_in_ideal, domain: domain_certificate(map) })
}

fn domain_certificate<F: Field>(map: &RingMap<F>) -> Option<DomainCertificate> {
    let rels = map.target_relations();
    match rels {
        [] => Some(DomainCertificate::PolynomialRing),
        [f] => (0..map.target().nvars()).find_map(|v| {
            monic_quadratic_in(f, v)
                .then(|| DomainCertificate::MonicQuadratic { variable: map.target().names()[v].clone() })
        }),
        _ => None,
    }
}

/// `f = X² + s·X + u` in `X = x_v` with `u` a nonzero constant and `s`
/// nonconstant and free of `X`.
fn monic_quadratic_in<F: Field>(f: &Polynomial<F>, v: usize) -> bool {
    let ring = f.ring();
    let field = ring.field();
    let mut coeffs: [Vec<(Monomial, F::Elem)>; 3] = Default::default();
    for (m, c) in f.terms() {
        let e = m.exponent(v) as usize;
        if e > 2 {
            return false;
        }
        coeffs[e].push((m.with_exponent(v, 0), c.clone()));
    }
    let [u, s, lead] = coeffs;
    let lead_is_one = lead.len() == 1 && lead[0].0.is_one() && field.is_one(&lead[0].1);
    let tail_is_unit = u.len() == 1 && u[0].0.is_one();
    let s_nonconstant = s.iter().any(|(m, _)| !m.is_one());
    lead_is_one && tail_is_unit && s_nonconstant
}

/// How `φ` and `α` are parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PhiChart {
    /// No `φ`, `α` in the source.
    Absent,
    /// `φ = ±1 + λ0·v·wᵀ`, `α = ±1`.
    Unipotent(i64),
    /// `φ = c + v·zᵀ`, `α = c`, with `det φ = 1` as the target relation.
    Borel,
}

/// Images for a source ring `a_i, b_i, c_i (1 ≤ i ≤ m) [, φ, α]`:
/// `m_i = λ_i·v·wᵀ` with `v = (y, −x)`, `w = (x, y)` for `i ≤ param`, and
/// `m_i = 0` beyond.
fn build_parametrization<F: Field>(source: &Arc<PolyRing<F>>, param: usize, chart: PhiChart) -> Result<RingMap<F>> {
    let field = source.field().clone();
    let mut names: Vec<String> = vec!["x".into(), "y".into()];
    if chart == PhiChart::Borel {
        names.extend(["z1", "z2", "c"].map(String::from));
    }
    if matches!(chart, PhiChart::Unipotent(_)) {
        names.push("lambda0".into());
    }
    names.extend((1..=param).map(|i| format!("lambda{i}")));
    let target = PolyRing::new(field, &names, MonomialOrder::Grevlex)?;
    let var = |name: &str| Polynomial::var_named(&target, name);
    let (x, y) = (var("x")?, var("y")?);
    let (xy, yy, xx) = (&x * &y, &y * &y, &x * &x);

    let with_phi = chart != PhiChart::Absent;
    let m = (source.nvars() - if with_phi { 5 } else { 0 }) / 3;
    let mut images = Vec::with_capacity(source.nvars());
    for i in 1..=m {
        if i <= param {
            let l = var(&format!("lambda{i}"))?;
            images.extend([&l * &xy, &l * &yy, &l * &xx]);
        } else {
            images.extend((0..3).map(|_| Polynomial::zero(&target)));
        }
    }
    let mut relations = Vec::new();
    match chart {
        PhiChart::Absent => {}
        PhiChart::Unipotent(s) => {
            let l0 = var("lambda0")?;
            let s = Polynomial::from_i64(&target, s);
            images.extend([&s + &(&l0 * &xy), &l0 * &yy, -&(&l0 * &xx), &s - &(&l0 * &xy), s.clone()]);
        }
        PhiChart::Borel => {
            let (z1, z2, c) = (var("z1")?, var("z2")?, var("c")?);
            images.extend([&c + &(&y * &z1), &y * &z2, -&(&x * &z1), &c - &(&x * &z2), c.clone()]);
            let s = &(&z1 * &y) - &(&z2 * &x);
            relations.push(&(&(&c * &c) + &(&c * &s)) - &Polynomial::one(&target));
        }
    }
    RingMap::new(source, &target, images, relations)
}

/// `a_i ↦ λ_i xy`, `b_i ↦ λ_i y²`, `c_i ↦ λ_i x²` on the ring of `A_r`.
pub fn a_parametrization<F: Field>(ideal: &Ideal<F>) -> Result<RingMap<F>> {
    let m = ideal.ring().nvars() / 3;
    build_parametrization(ideal.ring(), m, PhiChart::Absent)
}

/// The Borel chart on the ring of `B_r`, into `k[x, y, z1, z2, c, λ]/(c² + c(z1y − z2x) − 1)`.
pub fn b_parametrization<F: Field>(ideal: &Ideal<F>) -> Result<RingMap<F>> {
    let m = (ideal.ring().nvars() - 5) / 3;
    build_parametrization(ideal.ring(), m, PhiChart::Borel)
}

/// Certificate for `A_r` against its Segre–Veronese parametrization.
pub fn a_certificate<F: Field>(field: F, r: usize) -> Result<ComponentCertificate<F>> {
    let ideal = construct_a(field, r)?;
    let map = a_parametrization(&ideal)?;
    ComponentCertificate::new(&format!("A_{r}"), ideal, map)
}

/// Certificate for `B_r` against the Borel chart.
pub fn b_certificate<F: Field>(field: F, r: usize) -> Result<ComponentCertificate<F>> {
    let ideal = construct_b(field, r)?;
    let map = b_parametrization(&ideal)?;
    ComponentCertificate::new(&format!("B_{r}"), ideal, map)
}

/// `p1` (`α = 1`), `p2` (`α = −1`) and `p3` (`m_{r+1} = 0`) in the ring of
/// `C_r`, each with its parametrization; certificates are not yet run.
pub fn component_ideals_c<F: Field>(field: F, r: usize) -> Result<Vec<ComponentCertificate<F>>> {
    super::check_r(r)?;
    let ring = moduli_ring(field, r + 1, true)?;
    let ms: Vec<Nil<F>> = (1..=r + 1).map(|i| Nil::of(&ring, i)).collect();
    let pa = PhiAlpha::of(&ring);
    let mut out = Vec::with_capacity(3);
    for (name, s) in [("p1", 1i64), ("p2", -1)] {
        let sv = Polynomial::from_i64(&ring, s);
        // m_0 = φ − s, traceless once tr φ = 2s
        let m0 = Nil { a: &pa.phi[0][0] - &sv, b: pa.phi[0][1].clone(), c: -&pa.phi[1][0] };
        let mut all = vec![m0];
        all.extend(ms.iter().cloned());
        let mut gens = vec![&pa.alpha - &sv, &pa.trace() - &Polynomial::from_i64(&ring, 2 * s)];
        gens.extend(a_relations(&all));
        let ideal = Ideal::new(&ring, gens)?;
        let map = build_parametrization(&ring, r + 1, PhiChart::Unipotent(s))?;
        out.push(ComponentCertificate::new(name, ideal, map)?);
    }
    let mut gens = b_generators(&ring, r);
    gens.push(pa.det_minus_one());
    gens.extend([ms[r].a.clone(), ms[r].b.clone(), ms[r].c.clone()]);
    let ideal = Ideal::new(&ring, gens)?;
    let map = build_parametrization(&ring, r, PhiChart::Borel)?;
    out.push(ComponentCertificate::new("p3", ideal, map)?);
    Ok(out)
}
