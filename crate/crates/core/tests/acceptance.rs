//! Acceptance criteria. Each test prints one `PASS`/`FAIL criterion N` line
//! and then asserts every check it ran.

use std::time::{Duration, Instant};

use nilmoduli::groebner::{equal_ideals, quotient_by_element, Ideal};
use nilmoduli::invariants::{hilbert_function_by_normal_forms, krull_dimension, multiplicity, quotient_hilbert_series};
use nilmoduli::moduli::{
    a_certificate, b_certificate, component_ideals_c, construct, construct_a, construct_b, construct_b0, construct_c,
    decompose_c, det_minus_one, verify_flatness, verify_space, ModuliSpec, Space, Windows,
};
use nilmoduli::p1geom::{check_geo1, predict_betti, SplitBundle};
use nilmoduli::par::Execution;
use nilmoduli::polyalg::text::format_generators;
use nilmoduli::polyalg::{CoefficientField, Field, PrimeField, Rationals};
use nilmoduli::report::{Anchor, Verdict};
use nilmoduli::syzygy::{homological_verdicts, koszul_betti, koszul_betti_named, BettiTable};

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    start: Instant,
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new(number: u32, title: &'static str, budget_secs: u64) -> Self {
        Self { number, title, budget: Duration::from_secs(budget_secs), start: Instant::now(), checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        self.check(format!("within {:?}", self.budget), elapsed <= self.budget);
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        if failed.is_empty() {
            println!(
                "PASS criterion {}: {} ({} checks, {:.2}s)",
                self.number,
                self.title,
                self.checks.len(),
                elapsed.as_secs_f64()
            );
        } else {
            println!("FAIL criterion {}: {} [{}]", self.number, self.title, failed.join("; "));
        }
        assert!(failed.is_empty(), "criterion {} failed: {failed:?}", self.number);
    }
}

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn table(entries: &[((usize, u32), u64)]) -> BettiTable {
    BettiTable::from_entries(entries.iter().copied(), (0, 0))
}

fn all_vars<F: Field>(i: &Ideal<F>) -> Vec<usize> {
    (0..i.ring().nvars()).collect()
}

#[test]
fn criterion_1_a1_suite() {
    let mut c = Criterion::new(1, "A_1 hypersurface", 1);
    let a1 = construct_a(Rationals, 1).unwrap();
    c.check("generator a1^2 - b1*c1", format_generators(a1.generators()) == "a1^2 - b1*c1\n");
    c.check("dimension 2", krull_dimension(&a1).unwrap().value() == Some(2));
    let t = koszul_betti(&a1, &all_vars(&a1), (3, 5), Execution::Parallel).unwrap();
    c.check("Betti {b00=1, b12=1}", t.certified && t.same_entries(&table(&[((0, 0), 1), ((1, 2), 1)])));
    let v = homological_verdicts(&t, 2, 3);
    let v = v.certified().copied();
    c.check("Cohen-Macaulay", v.is_some_and(|v| v.is_cm));
    c.check("Gorenstein of type 1", v.is_some_and(|v| v.is_gorenstein && v.cm_type == 1));
    c.finish();
}

fn a2_checks<F: Field>(c: &mut Criterion, field: F, label: &str) {
    let a2 = construct_a(field.clone(), 2).unwrap();
    c.check(format!("{label}: 6 generators"), a2.generators().len() == 6);
    c.check(format!("{label}: dimension 3"), krull_dimension(&a2).unwrap().value() == Some(3));
    c.check(format!("{label}: multiplicity 4"), multiplicity(&a2).unwrap() == 4);
    let t = koszul_betti(&a2, &all_vars(&a2), (6, 8), Execution::Parallel).unwrap();
    let expected = table(&[((0, 0), 1), ((1, 2), 6), ((2, 3), 8), ((3, 4), 3)]);
    c.check(format!("{label}: Betti {{6@2, 8@3, 3@4}}"), t.certified && t.same_entries(&expected));
    let v = homological_verdicts(&t, 3, 6);
    let v = v.certified().copied();
    c.check(format!("{label}: proj_dim 3 = codim"), v.is_some_and(|v| v.proj_dim == 3 && 6 - v.dimension == 3));
    c.check(format!("{label}: Cohen-Macaulay"), v.is_some_and(|v| v.is_cm));
    c.check(format!("{label}: type 3, not Gorenstein"), v.is_some_and(|v| v.cm_type == 3 && !v.is_gorenstein));
    let predicted = predict_betti(&SplitBundle::uniform(-1, 4), &[0]).unwrap();
    c.check(format!("{label}: Koszul table equals predictor"), t.same_entries(&predicted));
    let mut cert = a_certificate(field, 2).unwrap();
    c.check(format!("{label}: parametrization certificate"), cert.certify(None).unwrap().is_prime());
}

#[test]
fn criterion_2_a2_suite() {
    let mut c = Criterion::new(2, "A_2 Segre-Veronese cone", 30 + 300);
    a2_checks(&mut c, f5(), "F_5");
    a2_checks(&mut c, Rationals, "Q");
    let rep = verify_space(
        ModuliSpec::new(Space::A, 2, CoefficientField::rationals()).unwrap(),
        Windows::default(),
        Execution::Parallel,
    )
    .unwrap();
    c.check("verify A 2 over Q passes", rep.overall == Verdict::Pass);
    c.finish();
}

#[test]
fn criterion_3_b0_b_suite() {
    let mut c = Criterion::new(3, "B0_1 and B_1", 120);
    let b0 = construct_b0(f5(), 1).unwrap();
    let vars = ["a1", "b1", "c1", "phi1", "phi2", "phi3", "phi4"];
    let t = koszul_betti_named(&b0, &vars, (7, 9), Execution::Parallel).unwrap();
    c.check("B0_1 Betti certified", t.certified);
    c.check("b00 = 1, b01 = 1", t.get(0, 0) == 1 && t.get(0, 1) == 1);
    c.check("b12 = 5", t.get(1, 2) == 5);
    let q = quotient_by_element(&b0, &det_minus_one(b0.ring())).unwrap();
    c.check("(I : det(phi) - 1) = I", equal_ideals(&q, &b0).unwrap());
    let b1 = construct_b(f5(), 1).unwrap();
    c.check("dim B_1 = 4", krull_dimension(&b1).unwrap().value() == Some(4));
    let rep = verify_space(
        ModuliSpec::new(Space::B, 1, CoefficientField::new(5).unwrap()).unwrap(),
        Windows::default(),
        Execution::Parallel,
    )
    .unwrap();
    for anchor in [Anchor::BTransfer, Anchor::BNotGorenstein] {
        let cited = rep.lines.iter().any(|l| l.anchor == anchor.key() && l.verdict == Verdict::CitedInference);
        c.check(format!("{} emitted as a cited inference", anchor.key()), cited);
    }
    c.check("verify B 1 passes", rep.overall == Verdict::Pass);
    let mut cert = b_certificate(f5(), 1).unwrap();
    c.check("Borel chart certificate", cert.certify(None).unwrap().is_prime());
    c.finish();
}

fn c1_checks<F: Field>(c: &mut Criterion, field: F, label: &str) {
    let ideal = construct_c(field.clone(), 1).unwrap();
    c.check(
        format!("{label}: 20 generators in 11 variables"),
        ideal.generators().len() == 20 && ideal.ring().nvars() == 11,
    );
    c.check(format!("{label}: dimension 4"), krull_dimension(&ideal).unwrap().value() == Some(4));
    let d = decompose_c(field, 1, &ideal, Execution::Parallel).unwrap();
    for (k, name) in d.names.iter().enumerate() {
        c.check(format!("{label}: {name} dimension 4"), d.dims[k].value() == Some(4));
        c.check(format!("{label}: {name} prime and contains I_C"), d.prime[k] && d.contains_total[k]);
    }
    c.check(format!("{label}: six non-containments"), d.containments.len() == 6 && d.irredundant());
    c.check(format!("{label}: p1 ∩ p2 ∩ p3 = I_C"), d.intersection_equal);
    c.check(format!("{label}: p1·p2·p3 ⊆ I_C"), d.product_contained);
}

#[test]
fn criterion_4_c1_decomposition() {
    let mut c = Criterion::new(4, "C_1 three components", 300 + 1800);
    c1_checks(&mut c, f5(), "F_5");
    c1_checks(&mut c, Rationals, "Q");
    c.finish();
}

#[test]
fn criterion_5_flatness() {
    let mut c = Criterion::new(5, "flatness criterion for C_1", 600);
    for p in [5, 3] {
        let f = verify_flatness(Space::C, 1, p, Execution::Parallel).unwrap();
        c.check(format!("p={p}: equal dimensions"), f.generic_fiber.dimension == f.special_fiber.dimension);
        c.check(
            format!("p={p}: three components in both fibers"),
            f.generic_fiber.components == Some(3) && f.special_fiber.components == Some(3),
        );
        c.check(format!("p={p}: special fiber reduced"), f.special_fiber.reduced_certified);
        c.check(format!("p={p}: criterion satisfied"), f.criterion_satisfied);
        c.check(format!("p={p}: two cited conclusions"), f.conclusions.len() == 2);
        let rep = f.to_report();
        let cited = [Anchor::FlatNonzerodivisor, Anchor::FlatReduced]
            .iter()
            .all(|a| rep.lines.iter().any(|l| l.anchor == a.key() && l.verdict == Verdict::CitedInference));
        c.check(format!("p={p}: conclusions flagged as cited"), cited);
    }
    c.finish();
}

#[test]
fn criterion_6_predictor_properties() {
    let mut c = Criterion::new(6, "bundle predictor", 1);
    for r in 1..=6usize {
        let a = check_geo1(&SplitBundle::uniform(2, r)).unwrap();
        c.check(format!("O(2)^{r}: Gorenstein at origin iff r = 1"), a.gorenstein_at_origin_predicted == (r == 1));
        let b = check_geo1(&SplitBundle::uniform(1, 2).direct_sum(&SplitBundle::uniform(2, r))).unwrap();
        c.check(format!("O(1)^2 + O(2)^{r}: never Gorenstein"), !b.gorenstein_at_origin_predicted);
        let t = predict_betti(&SplitBundle::uniform(-1, 2 * r), &[0]).unwrap();
        let v = homological_verdicts(&t, r + 1, 3 * r);
        c.check(
            format!("O(-1)^{}: proj_dim and type {}", 2 * r, 2 * r - 1),
            v.certified().is_some_and(|v| v.proj_dim == 2 * r - 1 && v.cm_type == 2 * r as u64 - 1),
        );
    }
    let mut serre = true;
    let mut euler = true;
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            let e = SplitBundle::new(vec![a, b]);
            serre &= e.h1() == e.dual().twist(-2).h0() && e.h0() == e.dual().twist(-2).h1();
            euler &= e.h0() as i64 - e.h1() as i64 == e.degree() + e.rank() as i64;
        }
    }
    c.check("Serre duality on twists in [-10, 10]", serre);
    c.check("Euler characteristic on twists in [-10, 10]", euler);
    c.finish();
}

#[test]
fn criterion_7_engine_properties() {
    let mut c = Criterion::new(7, "engine properties", 60);
    let mut ideals: Vec<(String, Ideal<PrimeField>)> = Vec::new();
    for space in [Space::A, Space::B0, Space::B, Space::C] {
        for r in 1..=2 {
            ideals.push((format!("{space}_{r}"), construct(f5(), space, r).unwrap()));
        }
    }
    for cert in component_ideals_c(f5(), 1).unwrap() {
        ideals.push((cert.name.clone(), cert.component_ideal));
    }
    for (_, ideal) in &ideals {
        ideal.groebner_basis();
    }
    let rationals: Vec<Ideal<Rationals>> =
        [Space::A, Space::B0, Space::C].iter().map(|&s| construct(Rationals, s, 1).unwrap()).collect();
    for i in &rationals {
        i.groebner_basis();
    }
    for (name, ideal) in &ideals {
        c.check(format!("Buchberger criterion on {name}"), ideal.groebner_basis().satisfies_buchberger_criterion());
    }
    for (k, i) in rationals.iter().enumerate() {
        c.check(
            format!("Buchberger criterion on rational ideal {k}"),
            i.groebner_basis().satisfies_buchberger_criterion(),
        );
    }

    let homogeneous = [("A_1", &ideals[0].1), ("A_2", &ideals[1].1), ("B0_1", &ideals[2].1)];
    for (name, ideal) in homogeneous {
        let hs = quotient_hilbert_series(ideal).unwrap();
        let agree = (0..=6u32)
            .all(|j| hilbert_function_by_normal_forms(ideal, j).unwrap() as i64 == hs.hilbert_function(j as usize));
        c.check(format!("{name}: Hilbert function = standard monomial count, j <= 6"), agree);
    }

    let alpha = ideals[2].1.ring().var_index("alpha").unwrap();
    let cases: [(&str, &Ideal<PrimeField>, Vec<usize>); 3] = [
        ("A_1", &ideals[0].1, all_vars(&ideals[0].1)),
        ("A_2", &ideals[1].1, all_vars(&ideals[1].1)),
        ("B0_1", &ideals[2].1, (0..ideals[2].1.ring().nvars()).filter(|&v| v != alpha).collect()),
    ];
    for (name, ideal, vars) in cases {
        let w = vars.len();
        let t = koszul_betti(ideal, &vars, (w, w as u32 + 2), Execution::Parallel).unwrap();
        let hs = quotient_hilbert_series(ideal).unwrap();
        let mut lhs = hs.times_one_minus_t_power(w).unwrap_or_default();
        let mut rhs = t.euler_polynomial();
        for p in [&mut lhs, &mut rhs] {
            while p.last() == Some(&0) {
                p.pop();
            }
        }
        c.check(format!("{name}: Euler identity"), t.certified && lhs == rhs);
    }

    for space in [Space::A, Space::B0, Space::B, Space::C] {
        for r in 1..=2 {
            let d0 = krull_dimension(&construct(Rationals, space, r).unwrap()).unwrap();
            let same = [3, 5, 7]
                .iter()
                .all(|&p| krull_dimension(&construct(PrimeField::new(p).unwrap(), space, r).unwrap()).unwrap() == d0);
            c.check(format!("{space}_{r}: dimension over Q equals F_3, F_5, F_7"), same);
        }
    }
    c.finish();
}

#[test]
#[ignore = "stretch: larger cases, run with --ignored"]
fn criterion_8_stretch() {
    let mut c = Criterion::new(8, "A_3 Betti table and C_2 decomposition", 3600);
    let a3 = construct_a(f5(), 3).unwrap();
    let t = koszul_betti(&a3, &all_vars(&a3), (9, 11), Execution::Parallel).unwrap();
    let linear = (1..=5usize).all(|n| {
        let binom = (0..n + 1).fold(1u64, |acc, i| acc * (6 - i as u64) / (i as u64 + 1));
        t.get(n, n as u32 + 1) == n as u64 * binom
    });
    c.check("A_3: b(n, n+1) = n * C(6, n+1)", t.certified && linear);
    let predicted = predict_betti(&SplitBundle::uniform(-1, 6), &[0]).unwrap();
    c.check("A_3: Koszul table equals predictor", t.same_entries(&predicted));
    let c2 = construct_c(f5(), 2).unwrap();
    let d = decompose_c(f5(), 2, &c2, Execution::Parallel).unwrap();
    c.check("C_2: intersection equals the ideal", d.intersection_equal);
    c.check("C_2: three certified primes", d.component_count() == Some(3));
    c.check("C_2: product contained", d.product_contained);
    c.finish();
}
