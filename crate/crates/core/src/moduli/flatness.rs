//! The flatness criterion for `C_r`: compare the fiber over `Q` with the
//! fiber over `F_p` built from the same integer generators.

use serde::Serialize;

use super::verify::{decompose_c, decomposition_lines, Decomposition};
use super::{construct_c, Space};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::invariants::{krull_dimension, Dimension};
use crate::par::Execution;
use crate::polyalg::text::{format_generators, parse_generators};
use crate::polyalg::{is_prime, Field, PrimeField, Rationals};
use crate::report::{Anchor, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub characteristic: u64,
    pub dimension: Dimension,
    /// Certified irreducible components; `None` when the decomposition
    /// checks fail.
    pub components: Option<usize>,
    pub component_dims: Vec<Dimension>,
    pub equidimensional: bool,
    pub reduced_certified: bool,
    #[serde(skip)]
    generators_text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatnessReport {
    pub space: Space,
    pub r: usize,
    pub p: u64,
    /// The special-fiber generators are the reductions mod `p` of the
    /// integer generators of the generic fiber.
    pub shared_generators: bool,
    pub generic_fiber: FiberSummary,
    pub special_fiber: FiberSummary,
    pub criterion_satisfied: bool,
    pub conclusions: Vec<String>,
    #[serde(skip)]
    decompositions: Vec<Decomposition>,
}

fn fiber<F: Field>(field: F, r: usize, exec: Execution) -> Result<(FiberSummary, Decomposition)> {
    let ideal = construct_c(field.clone(), r)?;
    let text = format_generators(ideal.generators());
    let dimension = krull_dimension(&ideal)?;
    let d = decompose_c(field.clone(), r, &ideal, exec)?;
    let summary = FiberSummary {
        characteristic: field.descriptor().characteristic(),
        dimension,
        components: d.component_count(),
        component_dims: d.dims.clone(),
        equidimensional: d.equidimensional() && d.dims.first() == Some(&dimension),
        reduced_certified: d.reduced_certified(),
        generators_text: text,
    };
    Ok((summary, d))
}

/// Parse the generic generators into the special ring and compare.
fn reduces_to(generic: &str, special: &Ideal<PrimeField>) -> Result<bool> {
    let reduced = parse_generators(special.ring(), generic)?;
    Ok(reduced.len() == special.generators().len()
        && reduced.iter().zip(special.generators()).all(|(a, b)| a.canonical() == b.canonical()))
}

pub fn verify_flatness(space: Space, r: usize, p: u64, exec: Execution) -> Result<FlatnessReport> {
    if space != Space::C {
        return Err(Error::InvalidInput(format!("flatness is only defined for space C, not {space}")));
    }
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
    }
    let special_field = PrimeField::new(p)?;
    let (generic, special) = exec.join(|| fiber(Rationals, r, exec), || fiber(special_field, r, exec));
    let (generic, dg) = generic?;
    let (special, ds) = special?;
    let shared_generators = reduces_to(&generic.generators_text, &construct_c(special_field, r)?)?;
    let criterion_satisfied = shared_generators
        && generic.equidimensional
        && special.equidimensional
        && generic.dimension == special.dimension
        && generic.components.is_some()
        && generic.components == special.components
        && special.reduced_certified;
    let conclusions = if criterion_satisfied {
        vec![
            format!("{p} is not a zero-divisor in the interpolating ring (cited)"),
            "the interpolating ring is reduced, given p-adic separatedness (cited)".to_string(),
        ]
    } else {
        Vec::new()
    };
    Ok(FlatnessReport {
        space,
        r,
        p,
        shared_generators,
        generic_fiber: generic,
        special_fiber: special,
        criterion_satisfied,
        conclusions,
        decompositions: vec![dg, ds],
    })
}

impl FlatnessReport {
    pub fn to_report(&self) -> VerificationReport {
        let mut rep = VerificationReport::new("flatness", &self.space.to_string(), self.r, self.p);
        rep.check(
            "special generators reduce from the generic ones",
            Anchor::FlatHypotheses,
            self.shared_generators,
            self.shared_generators,
        );
        for (fib, d) in [(&self.generic_fiber, &self.decompositions[0]), (&self.special_fiber, &self.decompositions[1])]
        {
            let label = if fib.characteristic == 0 { "Q".to_string() } else { format!("F_{}", fib.characteristic) };
            let mut sub = VerificationReport::new("", "", self.r, fib.characteristic);
            decomposition_lines(&mut sub, d, self.r);
            for mut line in sub.lines {
                line.claim = format!("{label}: {}", line.claim);
                rep.push(line.claim, anchor_of(&line.anchor), line.computed, line.verdict);
            }
            rep.check(
                format!("{label}: equidimensional of dimension {}", self.r + 3),
                Anchor::CDimension,
                fib.dimension,
                fib.equidimensional && fib.dimension.value() == Some(self.r + 3),
            );
        }
        rep.check(
            "equal dimension, equal component count, reduced special fiber",
            Anchor::FlatHypotheses,
            format!(
                "dims {}/{}, components {:?}/{:?}, reduced {}",
                self.generic_fiber.dimension,
                self.special_fiber.dimension,
                self.generic_fiber.components,
                self.special_fiber.components,
                self.special_fiber.reduced_certified
            ),
            self.criterion_satisfied,
        );
        rep.cite(
            format!("{} is not a zero-divisor", self.p),
            Anchor::FlatNonzerodivisor,
            format!("hypotheses hold {}", self.criterion_satisfied),
            self.criterion_satisfied,
        );
        rep.cite(
            "interpolating ring reduced",
            Anchor::FlatReduced,
            format!("hypotheses hold {}", self.criterion_satisfied),
            self.criterion_satisfied,
        );
        rep.dimension = Some(self.special_fiber.dimension);
        rep.verdicts.components = self.special_fiber.components;
        rep.verdicts.intersection_equal = Some(self.decompositions[1].intersection_equal);
        rep.verdicts.flat_criterion = Some(self.criterion_satisfied);
        rep
    }
}

fn anchor_of(key: &str) -> Anchor {
    Anchor::ALL.into_iter().find(|a| a.key() == key).expect("anchor keys come from the table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn c1_mod_5() {
        let f = verify_flatness(Space::C, 1, 5, Execution::Parallel).unwrap();
        assert!(f.criterion_satisfied);
        assert_eq!(f.special_fiber.components, Some(3));
        assert_eq!(f.generic_fiber.dimension, Dimension::Finite(4));
        assert_eq!(f.conclusions.len(), 2);
        assert_eq!(f.to_report().overall, Verdict::Pass);
    }

    #[test]
    fn reduction_mod_3_is_recognized() {
        // -2 prints as +1 over F_3
        let f = verify_flatness(Space::C, 1, 3, Execution::Sequential).unwrap();
        assert!(f.shared_generators && f.criterion_satisfied);
    }

    #[test]
    fn rejects_bad_input() {
        for (space, p) in [(Space::C, 2), (Space::C, 9), (Space::A, 5)] {
            assert!(matches!(verify_flatness(space, 1, p, Execution::Sequential), Err(Error::InvalidInput(_))));
        }
    }
}
