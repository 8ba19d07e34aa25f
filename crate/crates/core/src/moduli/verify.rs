//! Full verification pipelines per space, assembled into a
//! [`VerificationReport`].

use std::time::Instant;

use super::{
    a_certificate, b_certificate, component_ideals_c, construct, construct_b0, det_minus_one, ModuliSpec, Space,
};
use crate::error::{Error, Result};
use crate::groebner::{contains, equal_ideals, intersect, product, quotient_by_element, Ideal};
use crate::invariants::{
    hilbert_function_by_normal_forms, krull_dimension, quotient_hilbert_series, Dimension, HilbertSeries,
};
use crate::p1geom::{check_geo1, predict_betti, SplitBundle};
use crate::par::Execution;
use crate::polyalg::text::format_generators;
use crate::polyalg::{CoefficientField, Field, PrimeField, Rationals};
use crate::report::{Anchor, Verdict, VerificationReport};
use crate::syzygy::{homological_verdicts, koszul_betti, BettiTable, Verdicts};

/// Koszul window overrides; unset bounds default to `(|W|, |W| + 2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Windows {
    pub max_hom: Option<usize>,
    pub max_deg: Option<u32>,
}

impl Windows {
    pub fn resolve(&self, w: usize) -> (usize, u32) {
        (self.max_hom.unwrap_or(w), self.max_deg.unwrap_or(w as u32 + 2))
    }
}

/// Degrees up to which the Hilbert series is compared with normal-form
/// counts.
const HILBERT_CHECK_DEGREE: u32 = 6;

/// Characteristics compared by the dimension agreement line.
pub const CHARACTERISTICS: [u64; 4] = [0, 3, 5, 7];

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn expected_generator_count(space: Space, r: usize) -> usize {
    let a = |m: usize| binomial(2 * m, 2);
    match space {
        Space::A => a(r),
        Space::B0 => a(r) + 4 * r + 1,
        Space::B => a(r) + 4 * r + 2,
        Space::C => a(r + 1) + 4 * (r + 1) + 6,
    }
}

pub fn expected_dimension(space: Space, r: usize) -> usize {
    match space {
        Space::A => r + 1,
        Space::B0 => r + 4,
        Space::B | Space::C => r + 3,
    }
}

/// Dimension of the space over `Q` and each odd prime in `chars`.
pub fn dimensions_across(space: Space, r: usize, chars: &[u64], exec: Execution) -> Result<Vec<(u64, Dimension)>> {
    let dims = exec.map(chars, |&p| -> Result<(u64, Dimension)> {
        let d = if p == 0 {
            krull_dimension(&construct(Rationals, space, r)?)?
        } else {
            krull_dimension(&construct(PrimeField::new(p)?, space, r)?)?
        };
        Ok((p, d))
    });
    dims.into_iter().collect()
}

pub fn verify_space(spec: ModuliSpec, windows: Windows, exec: Execution) -> Result<VerificationReport> {
    match spec.field.characteristic() {
        0 => verify_in(Rationals, spec, windows, exec),
        p => verify_in(PrimeField::new(p)?, spec, windows, exec),
    }
}

/// Generator count and homogeneity, plus the generators in plain text
/// preceded by a header naming the ring.
pub fn construct_space(spec: ModuliSpec, command: &str) -> Result<(VerificationReport, String)> {
    fn inner<F: Field>(field: F, spec: ModuliSpec, command: &str) -> Result<(VerificationReport, String)> {
        let (report, ideal) = construction_lines(field, spec, command)?;
        let ring = ideal.ring();
        let text = format!(
            "# {} r={} over {}\n# variables: {}\n{}",
            spec.space,
            spec.r,
            spec.field,
            ring.names().join(" "),
            format_generators(ideal.generators())
        );
        Ok((report, text))
    }
    match spec.field.characteristic() {
        0 => inner(Rationals, spec, command),
        p => inner(PrimeField::new(p)?, spec, command),
    }
}

/// Basis check, dimension across characteristics and the Hilbert series.
pub fn invariants_space(spec: ModuliSpec, exec: Execution) -> Result<VerificationReport> {
    fn inner<F: Field>(field: F, spec: ModuliSpec, exec: Execution) -> Result<VerificationReport> {
        let (mut report, ideal) = construction_lines(field, spec, "invariants")?;
        invariant_lines(&mut report, &ideal, spec, exec)?;
        Ok(report)
    }
    match spec.field.characteristic() {
        0 => inner(Rationals, spec, exec),
        p => inner(PrimeField::new(p)?, spec, exec),
    }
}

/// Koszul Betti table of a homogeneous space, compared with its predictor.
pub fn betti_space(spec: ModuliSpec, windows: Windows, exec: Execution) -> Result<VerificationReport> {
    fn inner<F: Field>(field: F, spec: ModuliSpec, windows: Windows, exec: Execution) -> Result<VerificationReport> {
        let (mut report, ideal) = construction_lines(field, spec, "betti")?;
        let r = spec.r;
        let dim = krull_dimension(&ideal)?;
        report.dimension = Some(dim);
        let (vars, xi, gens) = match spec.space {
            Space::A => ((0..ideal.ring().nvars()).collect(), SplitBundle::uniform(-1, 2 * r), vec![0]),
            Space::B0 => (b0_koszul_vars(&ideal)?, b0_xi(r), vec![0, 1]),
            other => {
                return Err(Error::InvalidInput(format!("Betti tables need a homogeneous ideal; {other} is not")));
            }
        };
        if let Some(table) = betti_lines(&mut report, &ideal, &vars, windows, exec)? {
            predictor_line(&mut report, &table, &xi, &gens)?;
            if let Some(v) = homological(&mut report, &table, dim.value().unwrap_or(0), vars.len()) {
                let anchor = if spec.space == Space::A { Anchor::ACohenMacaulay } else { Anchor::BTransfer };
                report.check("Cohen-Macaulay", anchor, format!("depth {} = dim {}", v.depth, v.dimension), v.is_cm);
            }
        }
        Ok(report)
    }
    match spec.field.characteristic() {
        0 => inner(Rationals, spec, windows, exec),
        p => inner(PrimeField::new(p)?, spec, windows, exec),
    }
}

/// Betti table and singularity verdicts predicted from bundles on P¹ alone.
pub fn predict_space(space: Space, r: usize) -> Result<VerificationReport> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let mut report = VerificationReport::new("predict", &space.to_string(), r, 0);
    match space {
        Space::A => {
            let table = predict_betti(&SplitBundle::uniform(-1, 2 * r), &[0])?;
            let v = homological_verdicts(&table, r + 1, 3 * r);
            let v = v.certified().copied();
            report.check(
                format!("projective dimension and type {}", 2 * r - 1),
                Anchor::Geo2,
                v.map(|v| format!("pd {} type {}", v.proj_dim, v.cm_type)).unwrap_or_default(),
                v.is_some_and(|v| v.proj_dim == 2 * r - 1 && v.cm_type == 2 * r as u64 - 1),
            );
            let eta = SplitBundle::uniform(2, r);
            let geo = check_geo1(&eta)?;
            report.check(
                format!("singularity criterion on {eta}: Cohen-Macaulay, Gorenstein iff r = 1"),
                Anchor::Geo1,
                geo,
                geo.cm_predicted && geo.gorenstein_at_origin_predicted == (r == 1),
            );
            report.betti = Some(table);
        }
        Space::B0 | Space::B => {
            let table = predict_betti(&b0_xi(r), &[0, 1])?;
            let expected = 4 * r as u64 + binomial(2 * r, 2) as u64;
            report.check(
                format!("b12 = {expected}"),
                Anchor::B0FirstSyzygies,
                table.get(1, 2),
                table.get(1, 2) == expected,
            );
            let eta = b0_geo1_eta(r);
            let geo = check_geo1(&eta)?;
            report.check(
                format!("singularity criterion on {eta}: Cohen-Macaulay, not Gorenstein"),
                Anchor::BNotGorenstein,
                geo,
                geo.cm_predicted && !geo.gorenstein_at_origin_predicted,
            );
            report.betti = Some(table);
        }
        Space::C => return Err(Error::InvalidInput("no bundle predictor for space C".into())),
    }
    Ok(report)
}

fn verify_in<F: Field>(field: F, spec: ModuliSpec, windows: Windows, exec: Execution) -> Result<VerificationReport> {
    let (mut report, ideal) = construction_lines(field.clone(), spec, "verify")?;
    invariant_lines(&mut report, &ideal, spec, exec)?;
    let ModuliSpec { space, r, .. } = spec;
    match space {
        Space::A => verify_a(&mut report, field, &ideal, r, windows, exec)?,
        Space::B0 => {
            verify_b0(&mut report, &ideal, r, windows, exec)?;
        }
        Space::B => verify_b(&mut report, field, r, windows, exec)?,
        Space::C => verify_c(&mut report, field, &ideal, r, exec)?,
    }
    Ok(report)
}

/// Generator count and homogeneity.
fn construction_lines<F: Field>(field: F, spec: ModuliSpec, command: &str) -> Result<(VerificationReport, Ideal<F>)> {
    let ModuliSpec { space, r, field: desc } = spec;
    let mut report = VerificationReport::new(command, &space.to_string(), r, desc.characteristic());
    let ideal = construct(field, space, r)?;
    let count = ideal.generators().len();
    let anchor = match space {
        Space::A => Anchor::AEquations,
        Space::B0 => Anchor::B0Presentation,
        Space::B => Anchor::BDimension,
        Space::C => Anchor::CEquations,
    };
    report.check(
        format!("{count} generators in {} variables", ideal.ring().nvars()),
        anchor,
        count,
        count == expected_generator_count(space, r),
    );
    let homogeneous = ideal.is_homogeneous();
    report.check("homogeneous", anchor, homogeneous, homogeneous == matches!(space, Space::A | Space::B0));
    Ok((report, ideal))
}

/// Basis, dimension across characteristics and, for homogeneous ideals,
/// the Hilbert series.
fn invariant_lines<F: Field>(
    report: &mut VerificationReport,
    ideal: &Ideal<F>,
    spec: ModuliSpec,
    exec: Execution,
) -> Result<()> {
    let ModuliSpec { space, r, field: desc } = spec;
    let t = Instant::now();
    ideal.groebner_basis();
    report.time("groebner", t.elapsed());
    report.check(
        "reduced basis passes the Buchberger criterion",
        Anchor::EngineBuchberger,
        format!("{} elements", ideal.groebner_basis().len()),
        ideal.groebner_basis().satisfies_buchberger_criterion(),
    );

    let dim = krull_dimension(ideal)?;
    let expected_dim = expected_dimension(space, r);
    let dim_anchor = match space {
        Space::A => Anchor::ADimension,
        Space::B0 => Anchor::B0Presentation,
        Space::B => Anchor::BDimension,
        Space::C => Anchor::CDimension,
    };
    report.check(format!("dimension {expected_dim}"), dim_anchor, dim, dim.value() == Some(expected_dim));
    report.dimension = Some(dim);

    let t = Instant::now();
    let others: Vec<u64> = CHARACTERISTICS.iter().copied().filter(|&p| p != desc.characteristic()).collect();
    let dims = dimensions_across(space, r, &others, exec)?;
    let agree = dims.iter().all(|(_, d)| *d == dim);
    let shown: Vec<String> = std::iter::once((desc.characteristic(), dim))
        .chain(dims)
        .map(|(p, d)| format!("{}:{d}", CoefficientField::new(p).map(|f| f.to_string()).unwrap_or_default()))
        .collect();
    report.check("dimension independent of the characteristic", Anchor::EngineCharacteristic, shown.join(" "), agree);
    report.time("characteristics", t.elapsed());
    if ideal.is_homogeneous() {
        hilbert_lines(report, ideal)?;
    }
    Ok(())
}

fn hilbert_lines<F: Field>(report: &mut VerificationReport, ideal: &Ideal<F>) -> Result<HilbertSeries> {
    let hs = quotient_hilbert_series(ideal)?;
    let mut ok = true;
    let mut counts = Vec::new();
    for j in 0..=HILBERT_CHECK_DEGREE {
        let nf = hilbert_function_by_normal_forms(ideal, j)?;
        counts.push(nf.to_string());
        ok &= nf as i64 == hs.hilbert_function(j as usize);
    }
    report.check(
        format!("Hilbert function matches normal-form counts for j <= {HILBERT_CHECK_DEGREE}"),
        Anchor::EngineHilbert,
        counts.join(","),
        ok,
    );
    report.multiplicity = Some(hs.multiplicity().max(0) as u64);
    report.hilbert_numerator = Some(hs.numerator.clone());
    Ok(hs)
}

/// Koszul Betti table over `vars` with the Euler certification line.
/// Returns `None` after an inconclusive line when the window is too small
/// or the module is not finite over `k[W]`.
fn betti_lines<F: Field>(
    report: &mut VerificationReport,
    ideal: &Ideal<F>,
    vars: &[usize],
    windows: Windows,
    exec: Execution,
) -> Result<Option<BettiTable>> {
    let window = windows.resolve(vars.len());
    let t = Instant::now();
    let table = match koszul_betti(ideal, vars, window, exec) {
        Ok(table) => table,
        Err(e @ (Error::WindowTooSmall(_) | Error::UnsupportedRegime(_))) => {
            report.push("Betti table", Anchor::EngineEuler, e, Verdict::Inconclusive);
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    report.time("betti", t.elapsed());
    let verdict = if table.certified { Verdict::Pass } else { Verdict::Inconclusive };
    report.push(
        format!("Betti table certified by the Euler identity in window {window:?}"),
        Anchor::EngineEuler,
        &table,
        verdict,
    );
    report.betti = Some(table.clone());
    Ok(Some(table))
}

fn homological(report: &mut VerificationReport, table: &BettiTable, dim: usize, nvars: usize) -> Option<Verdicts> {
    match homological_verdicts(table, dim, nvars) {
        crate::syzygy::HomologicalVerdict::Certified(v) => {
            report.verdicts.cm = Some(v.is_cm);
            report.verdicts.gorenstein = Some(v.is_gorenstein);
            report.verdicts.cm_type = Some(v.cm_type);
            Some(v)
        }
        crate::syzygy::HomologicalVerdict::Inconclusive(why) => {
            report.push("homological verdicts", Anchor::EngineEuler, why, Verdict::Inconclusive);
            None
        }
    }
}

fn predictor_line(report: &mut VerificationReport, table: &BettiTable, xi: &SplitBundle, gens: &[u32]) -> Result<()> {
    let predicted = predict_betti(xi, gens)?;
    let verdict = if !table.certified {
        Verdict::Inconclusive
    } else if table.same_entries(&predicted) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.push(format!("Betti table equals the cohomology of wedge powers of {xi}"), Anchor::Geo2, predicted, verdict);
    Ok(())
}

fn dim_of(report: &VerificationReport) -> usize {
    report.dimension.and_then(|d| d.value()).unwrap_or(0)
}

fn verify_a<F: Field>(
    report: &mut VerificationReport,
    field: F,
    ideal: &Ideal<F>,
    r: usize,
    windows: Windows,
    exec: Execution,
) -> Result<()> {
    let e = report.multiplicity.unwrap_or(0);
    report.check(format!("multiplicity {}", 2 * r), Anchor::ADegree, e, e == 2 * r as u64);
    let nvars = ideal.ring().nvars();
    let vars: Vec<usize> = (0..nvars).collect();
    let integral = {
        let t = Instant::now();
        let mut cert = a_certificate(field, r)?;
        let v = cert.certify(None)?;
        report.time("certificate", t.elapsed());
        report.check(
            "kernel of the Segre-Veronese parametrization equals the ideal",
            Anchor::AIntegral,
            &v,
            v.is_prime(),
        );
        v.is_prime()
    };
    let geo = check_geo1(&SplitBundle::uniform(2, r))?;
    let mut cm_ok = None;
    if let Some(table) = betti_lines(report, ideal, &vars, windows, exec)? {
        predictor_line(report, &table, &SplitBundle::uniform(-1, 2 * r), &[0])?;
        if let Some(v) = homological(report, &table, dim_of(report), nvars) {
            let codim = nvars - v.dimension;
            report.check(
                format!("projective dimension {} equals codimension", 2 * r - 1),
                Anchor::ACohenMacaulay,
                v.proj_dim,
                v.proj_dim == codim && codim == 2 * r - 1,
            );
            report.check("Cohen-Macaulay", Anchor::ACohenMacaulay, v.is_cm, v.is_cm);
            cm_ok = Some(v.is_cm);
            report.check(
                format!("type {}, Gorenstein iff r = 1", 2 * r - 1),
                Anchor::ANotGorenstein,
                format!("type {}, gorenstein {}", v.cm_type, v.is_gorenstein),
                v.cm_type == 2 * r as u64 - 1 && v.is_gorenstein == (r == 1),
            );
            report.check(
                "singularity criterion on O(2)^r matches",
                Anchor::Geo1,
                geo,
                geo.cm_predicted == v.is_cm && geo.gorenstein_at_origin_predicted == v.is_gorenstein,
            );
        }
    }
    report.cite_if_known(
        "normal",
        Anchor::ANormal,
        format!(
            "integral {integral}, Cohen-Macaulay {}; R1 not machine-checked",
            cm_ok.map_or("undecided".to_string(), |b| b.to_string())
        ),
        cm_ok.map(|cm| cm && integral),
    );
    Ok(())
}

fn b0_koszul_vars<F: Field>(ideal: &Ideal<F>) -> Result<Vec<usize>> {
    let alpha = ideal.ring().var_index("alpha")?;
    Ok((0..ideal.ring().nvars()).filter(|&v| v != alpha).collect())
}

/// `ξ = O(−2) ⊕ O(−1)^{2r}`, whose cohomology yields the generators `1, α`.
fn b0_xi(r: usize) -> SplitBundle {
    SplitBundle::line(-2).direct_sum(&SplitBundle::uniform(-1, 2 * r))
}

fn verify_b0<F: Field>(
    report: &mut VerificationReport,
    ideal: &Ideal<F>,
    r: usize,
    windows: Windows,
    exec: Execution,
) -> Result<Option<Verdicts>> {
    let vars = b0_koszul_vars(ideal)?;
    let Some(table) = betti_lines(report, ideal, &vars, windows, exec)? else {
        return Ok(None);
    };
    let (b00, b01) = (table.get(0, 0), table.get(0, 1));
    report.check(
        "module generators 1 and alpha",
        Anchor::B0ModuleGenerators,
        format!("b00={b00} b01={b01} row0={}", table.row_total(0)),
        b00 == 1 && b01 == 1 && table.row_total(0) == 2,
    );
    let b12 = table.get(1, 2);
    let expected = 4 * r as u64 + binomial(2 * r, 2) as u64;
    report.check(format!("b12 = {expected}"), Anchor::B0FirstSyzygies, b12, b12 == expected);
    predictor_line(report, &table, &b0_xi(r), &[0, 1])?;
    let Some(v) = homological(report, &table, dim_of(report), vars.len()) else {
        return Ok(None);
    };
    report.check("Cohen-Macaulay", Anchor::BTransfer, v.is_cm, v.is_cm);
    report.check("not Gorenstein", Anchor::BNotGorenstein, format!("type {}", v.cm_type), !v.is_gorenstein);
    let geo = check_geo1(&b0_geo1_eta(r))?;
    report.check(
        format!("singularity criterion on {} matches", b0_geo1_eta(r)),
        Anchor::Geo1,
        geo,
        geo.cm_predicted == v.is_cm && geo.gorenstein_at_origin_predicted == v.is_gorenstein,
    );
    Ok(Some(v))
}

fn b0_geo1_eta(r: usize) -> SplitBundle {
    SplitBundle::uniform(1, 2).direct_sum(&SplitBundle::uniform(2, r))
}

fn verify_b<F: Field>(
    report: &mut VerificationReport,
    field: F,
    r: usize,
    windows: Windows,
    exec: Execution,
) -> Result<()> {
    let b0 = construct_b0(field.clone(), r)?;
    let t = Instant::now();
    let q = quotient_by_element(&b0, &det_minus_one(b0.ring()))?;
    let nzd = equal_ideals(&q, &b0)?;
    report.time("nonzerodivisor", t.elapsed());
    report.check("(I : det(phi) - 1) = I on the homogeneous ring", Anchor::BNonzerodivisor, nzd, nzd);

    let t = Instant::now();
    let mut cert = b_certificate(field, r)?;
    let v = cert.certify(None)?;
    report.time("certificate", t.elapsed());
    report.check("kernel of the Borel chart equals the ideal", Anchor::BIntegral, &v, v.is_prime());

    let vars = b0_koszul_vars(&b0)?;
    let window = windows.resolve(vars.len());
    let b0_verdicts = match koszul_betti(&b0, &vars, window, exec) {
        Ok(table) => {
            report.push(
                "homogeneous ring Betti table",
                Anchor::EngineEuler,
                &table,
                if table.certified { Verdict::Pass } else { Verdict::Inconclusive },
            );
            let dim = krull_dimension(&b0)?.value().unwrap_or(0);
            let hv = homological_verdicts(&table, dim, vars.len());
            report.betti = Some(table);
            hv.certified().copied()
        }
        Err(e @ (Error::WindowTooSmall(_) | Error::UnsupportedRegime(_))) => {
            report.push("homogeneous ring Betti table", Anchor::EngineEuler, e, Verdict::Inconclusive);
            None
        }
        Err(e) => return Err(e),
    };
    let cm = b0_verdicts.is_some_and(|v| v.is_cm);
    let not_gor = b0_verdicts.is_some_and(|v| !v.is_gorenstein);
    let known = |h: bool| b0_verdicts.map(|_| h);
    report.cite_if_known(
        "Cohen-Macaulay",
        Anchor::BTransfer,
        format!("homogeneous ring Cohen-Macaulay {cm}, nonzerodivisor {nzd}"),
        known(cm && nzd),
    );
    report.cite_if_known(
        "local ring at b not Gorenstein",
        Anchor::BNotGorenstein,
        format!(
            "homogeneous ring type {}, nonzerodivisor {nzd}",
            b0_verdicts.map(|v| v.cm_type.to_string()).unwrap_or_else(|| "?".into())
        ),
        known(not_gor && nzd),
    );
    if cm && nzd {
        report.verdicts.cm = Some(true);
        report.verdicts.gorenstein = Some(false);
        report.verdicts.cm_type = b0_verdicts.map(|v| v.cm_type);
    }
    let eta = b0_geo1_eta(r);
    let geo = check_geo1(&eta)?;
    report.check(
        format!("singularity criterion on {eta}: Cohen-Macaulay, not Gorenstein"),
        Anchor::Geo1,
        geo,
        geo.cm_predicted && !geo.gorenstein_at_origin_predicted,
    );
    report.cite_if_known(
        "normal",
        Anchor::BNormal,
        format!("integral {}, Cohen-Macaulay {cm}; R1 not machine-checked", v.is_prime()),
        known(v.is_prime() && cm),
    );
    Ok(())
}

/// Outcome of checking `C_r` against its three explicit primes.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub names: Vec<String>,
    pub dims: Vec<Dimension>,
    pub prime: Vec<bool>,
    pub contains_total: Vec<bool>,
    /// `(i, j, p_i ⊆ p_j)` for `i ≠ j`.
    pub containments: Vec<(usize, usize, bool)>,
    pub intersection_equal: bool,
    pub product_contained: bool,
}

impl Decomposition {
    pub fn all_prime(&self) -> bool {
        self.prime.iter().all(|&b| b) && self.contains_total.iter().all(|&b| b)
    }

    pub fn irredundant(&self) -> bool {
        self.containments.iter().all(|&(_, _, c)| !c)
    }

    /// Reducedness through the decomposition: the ideal is an intersection
    /// of certified primes.
    pub fn reduced_certified(&self) -> bool {
        self.all_prime() && self.intersection_equal
    }

    pub fn component_count(&self) -> Option<usize> {
        (self.reduced_certified() && self.irredundant()).then_some(self.names.len())
    }

    pub fn equidimensional(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn decompose_c<F: Field>(field: F, r: usize, total: &Ideal<F>, exec: Execution) -> Result<Decomposition> {
    let certs = component_ideals_c(field, r)?;
    let per = exec.map(&certs, |cert| -> Result<(bool, bool, Dimension)> {
        let mut cert = cert.clone();
        let v = cert.certify(Some(total))?;
        Ok((v.is_prime(), cert.verified_contains_total, krull_dimension(&cert.component_ideal)?))
    });
    let per = per.into_iter().collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..certs.len()).flat_map(|i| (0..certs.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let containments = exec
        .map(&pairs, |&(i, j)| contains(&certs[j].component_ideal, &certs[i].component_ideal).map(|c| (i, j, c)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let ideals: Vec<&Ideal<F>> = certs.iter().map(|c| &c.component_ideal).collect();
    let (meet, prod) = exec.join(
        || -> Result<bool> {
            let mut acc = ideals[0].clone();
            for p in &ideals[1..] {
                acc = intersect(&acc, p)?;
            }
            equal_ideals(&acc, total)
        },
        || -> Result<bool> {
            let mut acc = ideals[0].clone();
            for p in &ideals[1..] {
                acc = product(&acc, p)?;
            }
            contains(total, &acc)
        },
    );
    Ok(Decomposition {
        names: certs.iter().map(|c| c.name.clone()).collect(),
        dims: per.iter().map(|p| p.2).collect(),
        prime: per.iter().map(|p| p.0).collect(),
        contains_total: per.iter().map(|p| p.1).collect(),
        containments,
        intersection_equal: meet?,
        product_contained: prod?,
    })
}

pub(crate) fn decomposition_lines(report: &mut VerificationReport, d: &Decomposition, r: usize) {
    for (k, name) in d.names.iter().enumerate() {
        report.check(
            format!("{name} contains the ideal"),
            Anchor::CEquations,
            d.contains_total[k],
            d.contains_total[k],
        );
        report.check(
            format!("{name} has dimension {}", r + 3),
            Anchor::CDimension,
            d.dims[k],
            d.dims[k].value() == Some(r + 3),
        );
        report.check(format!("{name} prime by parametrization"), Anchor::CComponentsPrime, d.prime[k], d.prime[k]);
    }
    for &(i, j, c) in &d.containments {
        report.check(
            format!("{} not contained in {}", d.names[i], d.names[j]),
            Anchor::CNoContainment,
            format!("contained {c}"),
            !c,
        );
    }
    report.check(
        "intersection of the three primes equals the ideal",
        Anchor::CThreeComponents,
        d.intersection_equal,
        d.intersection_equal,
    );
    report.check(
        "product of the three primes lies in the ideal",
        Anchor::CProductZero,
        d.product_contained,
        d.product_contained,
    );
    report.check(
        "reduced: intersection of certified primes",
        Anchor::CReduced,
        d.reduced_certified(),
        d.reduced_certified(),
    );
}

fn verify_c<F: Field>(
    report: &mut VerificationReport,
    field: F,
    ideal: &Ideal<F>,
    r: usize,
    exec: Execution,
) -> Result<()> {
    let t = Instant::now();
    let d = decompose_c(field, r, ideal, exec)?;
    report.time("decomposition", t.elapsed());
    decomposition_lines(report, &d, r);
    report.verdicts.components = d.component_count();
    report.verdicts.intersection_equal = Some(d.intersection_equal);
    report.cite(
        "completion at c is the deformation special fiber",
        Anchor::DeformationFiber,
        format!("decomposition verified {}", d.component_count().is_some()),
        d.component_count().is_some(),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(space: Space, r: usize, p: u64) -> ModuliSpec {
        ModuliSpec::new(space, r, CoefficientField::new(p).unwrap()).unwrap()
    }

    fn assert_pass(report: &VerificationReport) {
        for l in &report.lines {
            assert!(
                matches!(l.verdict, Verdict::Pass | Verdict::CitedInference),
                "{} -> {:?}: {}",
                l.claim,
                l.verdict,
                l.computed
            );
        }
        assert_eq!(report.overall, Verdict::Pass);
    }

    #[test]
    fn counts() {
        assert_eq!(expected_generator_count(Space::A, 3), 15);
        assert_eq!(expected_generator_count(Space::B0, 1), 6);
        assert_eq!(expected_generator_count(Space::C, 1), 20);
    }

    #[test]
    fn a1_over_f3() {
        let rep = verify_space(spec(Space::A, 1, 3), Windows::default(), Execution::Sequential).unwrap();
        assert_pass(&rep);
        assert_eq!(rep.verdicts.gorenstein, Some(true));
    }

    #[test]
    fn b0_and_b_over_f5() {
        let rep = verify_space(spec(Space::B0, 1, 5), Windows::default(), Execution::Parallel).unwrap();
        assert_pass(&rep);
        let rep = verify_space(spec(Space::B, 1, 5), Windows::default(), Execution::Parallel).unwrap();
        assert_pass(&rep);
        assert_eq!(rep.verdicts.cm_type, Some(3));
    }

    #[test]
    fn small_window_is_inconclusive() {
        let w = Windows { max_hom: Some(1), max_deg: Some(3) };
        let rep = verify_space(spec(Space::A, 2, 5), w, Execution::Sequential).unwrap();
        assert_eq!(rep.overall, Verdict::Inconclusive);
    }
}
