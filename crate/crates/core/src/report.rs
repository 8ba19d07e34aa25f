//! Verification reports: one line per checked claim, each tied to a fixed
//! citation key, plus the machine-readable summary fields.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::invariants::Dimension;
use crate::syzygy::BettiTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    /// A conclusion taken from the literature once its computed hypotheses
    /// pass; never a direct computation.
    CitedInference,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::CitedInference => "CITED",
        })
    }
}

/// Citation keys. Every report line carries one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    AEquations,
    ADimension,
    ADegree,
    AIntegral,
    ACohenMacaulay,
    ANotGorenstein,
    ANormal,
    Geo1,
    Geo2,
    B0Presentation,
    B0ModuleGenerators,
    B0FirstSyzygies,
    BDimension,
    BIntegral,
    BNonzerodivisor,
    BTransfer,
    BNotGorenstein,
    BNormal,
    CEquations,
    CDimension,
    CComponentsPrime,
    CNoContainment,
    CThreeComponents,
    CProductZero,
    CReduced,
    DeformationFiber,
    FlatHypotheses,
    FlatNonzerodivisor,
    FlatReduced,
    EngineBuchberger,
    EngineHilbert,
    EngineEuler,
    EngineCharacteristic,
}

impl Anchor {
    pub const ALL: [Anchor; 33] = [
        Anchor::AEquations,
        Anchor::ADimension,
        Anchor::ADegree,
        Anchor::AIntegral,
        Anchor::ACohenMacaulay,
        Anchor::ANotGorenstein,
        Anchor::ANormal,
        Anchor::Geo1,
        Anchor::Geo2,
        Anchor::B0Presentation,
        Anchor::B0ModuleGenerators,
        Anchor::B0FirstSyzygies,
        Anchor::BDimension,
        Anchor::BIntegral,
        Anchor::BNonzerodivisor,
        Anchor::BTransfer,
        Anchor::BNotGorenstein,
        Anchor::BNormal,
        Anchor::CEquations,
        Anchor::CDimension,
        Anchor::CComponentsPrime,
        Anchor::CNoContainment,
        Anchor::CThreeComponents,
        Anchor::CProductZero,
        Anchor::CReduced,
        Anchor::DeformationFiber,
        Anchor::FlatHypotheses,
        Anchor::FlatNonzerodivisor,
        Anchor::FlatReduced,
        Anchor::EngineBuchberger,
        Anchor::EngineHilbert,
        Anchor::EngineEuler,
        Anchor::EngineCharacteristic,
    ];

    pub fn key(self) -> &'static str {
        self.entry().0
    }

    pub fn description(self) -> &'static str {
        self.entry().1
    }

    fn entry(self) -> (&'static str, &'static str) {
        match self {
            Anchor::AEquations => ("A.equations", "A_r is cut out by the entries of m_i m_j"),
            Anchor::ADimension => ("A.dimension", "A_r has dimension r + 1"),
            Anchor::ADegree => ("A.degree", "cone over P^1 x P^(r-1) embedded by O(2,1)"),
            Anchor::AIntegral => ("A.integral", "A_r is geometrically integral"),
            Anchor::ACohenMacaulay => ("A.cohen-macaulay", "A_r is Cohen-Macaulay"),
            Anchor::ANotGorenstein => {
                ("A.not-gorenstein", "the local ring at the origin of A_r is Gorenstein only for r = 1")
            }
            Anchor::ANormal => ("A.normal", "A_r is normal"),
            Anchor::Geo1 => ("geo1.criterion", "singularity criterion for the ring of sections of Sym(eta)"),
            Anchor::Geo2 => ("geo2.betti", "Tor_n as cohomology of exterior powers of xi"),
            Anchor::B0Presentation => ("B0.presentation", "B0_r is cut out by quadrics"),
            Anchor::B0ModuleGenerators => {
                ("B0.module-generators", "R0 is generated by 1 and alpha over the ring without alpha")
            }
            Anchor::B0FirstSyzygies => ("B0.first-syzygies", "degree-2 relations of R0 number 4r + C(2r,2)"),
            Anchor::BDimension => ("B.dimension", "B_r has dimension r + 3"),
            Anchor::BIntegral => ("B.integral", "B_r is geometrically integral"),
            Anchor::BNonzerodivisor => ("B.nonzerodivisor", "det(phi) - 1 is a nonzerodivisor on R0"),
            Anchor::BTransfer => ("B.transfer", "B_r is Cohen-Macaulay as a quotient of R0 by a nonzerodivisor"),
            Anchor::BNotGorenstein => ("B.not-gorenstein", "the local ring of B_r at b is not Gorenstein"),
            Anchor::BNormal => ("B.normal", "B_r is normal"),
            Anchor::CEquations => ("C.equations", "C_r is cut out by the matrix identities defining it"),
            Anchor::CDimension => ("C.dimension", "C_r is equidimensional of dimension r + 3"),
            Anchor::CComponentsPrime => {
                ("C.components-prime", "the loci alpha = 1, alpha = -1 and m_(r+1) = 0 are prime")
            }
            Anchor::CNoContainment => ("C.no-containment", "no containment between the three primes"),
            Anchor::CThreeComponents => ("C.three-components", "C_r has exactly three irreducible components"),
            Anchor::CProductZero => ("C.product-zero", "the product of the three primes vanishes on C_r"),
            Anchor::CReduced => ("C.reduced", "C_r is reduced"),
            Anchor::DeformationFiber => {
                ("deformation.special-fiber", "the deformation special fiber completes C_d at c")
            }
            Anchor::FlatHypotheses => {
                ("flat.hypotheses", "equal dimension, equal number of minimal primes, reduced special fiber")
            }
            Anchor::FlatNonzerodivisor => ("flat.nonzerodivisor", "p is not a zero-divisor in the interpolating ring"),
            Anchor::FlatReduced => ("flat.reduced", "the interpolating ring is reduced"),
            Anchor::EngineBuchberger => {
                ("engine.buchberger", "every S-polynomial of the reduced basis reduces to zero")
            }
            Anchor::EngineHilbert => ("engine.hilbert", "Hilbert series agrees with normal-form counts"),
            Anchor::EngineEuler => {
                ("engine.euler", "Betti table satisfies the Euler identity against the Hilbert series")
            }
            Anchor::EngineCharacteristic => {
                ("engine.characteristic", "dimension agrees across characteristics 0, 3, 5, 7")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportLine {
    pub claim: String,
    pub anchor: String,
    pub computed: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryVerdicts {
    pub cm: Option<bool>,
    pub gorenstein: Option<bool>,
    #[serde(rename = "type")]
    pub cm_type: Option<u64>,
    pub components: Option<usize>,
    pub intersection_equal: Option<bool>,
    pub flat_criterion: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub command: String,
    pub space: String,
    pub r: usize,
    pub characteristic: u64,
    pub dimension: Option<Dimension>,
    pub multiplicity: Option<u64>,
    pub hilbert_numerator: Option<Vec<i64>>,
    pub betti: Option<BettiTable>,
    pub verdicts: SummaryVerdicts,
    pub lines: Vec<ReportLine>,
    pub overall: Verdict,
    /// Wall-clock stage durations; printed, never serialized.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn new(command: &str, space: &str, r: usize, characteristic: u64) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            space: space.into(),
            r,
            characteristic,
            dimension: None,
            multiplicity: None,
            hilbert_numerator: None,
            betti: None,
            verdicts: SummaryVerdicts::default(),
            lines: Vec::new(),
            overall: Verdict::Pass,
            timings: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: impl Into<String>, anchor: Anchor, computed: impl fmt::Display, verdict: Verdict) {
        self.lines.push(ReportLine {
            claim: claim.into(),
            anchor: anchor.key().into(),
            computed: computed.to_string(),
            verdict,
        });
        self.overall = overall(&self.lines);
    }

    /// Pass when `ok`, fail otherwise.
    pub fn check(&mut self, claim: impl Into<String>, anchor: Anchor, computed: impl fmt::Display, ok: bool) {
        self.push(claim, anchor, computed, if ok { Verdict::Pass } else { Verdict::Fail });
    }

    /// A cited conclusion, emitted only as such when `hypotheses_hold`;
    /// otherwise the line fails.
    pub fn cite(
        &mut self,
        claim: impl Into<String>,
        anchor: Anchor,
        hypotheses: impl fmt::Display,
        hypotheses_hold: bool,
    ) {
        let verdict = if hypotheses_hold { Verdict::CitedInference } else { Verdict::Fail };
        self.push(claim, anchor, hypotheses, verdict);
    }

    /// Like [`cite`](Self::cite), but inconclusive while a hypothesis is
    /// still undecided.
    pub fn cite_if_known(
        &mut self,
        claim: impl Into<String>,
        anchor: Anchor,
        hypotheses: impl fmt::Display,
        hypotheses_hold: Option<bool>,
    ) {
        match hypotheses_hold {
            Some(h) => self.cite(claim, anchor, hypotheses, h),
            None => self.push(claim, anchor, hypotheses, Verdict::Inconclusive),
        }
    }

    pub fn time(&mut self, stage: &str, d: Duration) {
        self.timings.push((stage.into(), d));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Verdict::Pass => 0,
            _ => 1,
        }
    }
}

/// Pass iff no line fails and every non-inference line passes.
pub fn overall(lines: &[ReportLine]) -> Verdict {
    if lines.iter().any(|l| l.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if lines.iter().all(|l| matches!(l.verdict, Verdict::Pass | Verdict::CitedInference)) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = if self.characteristic == 0 { "Q".to_string() } else { format!("F_{}", self.characteristic) };
        writeln!(f, "{} {} r={} over {}", self.command, self.space, self.r, field)?;
        let width = self.lines.iter().map(|l| l.claim.chars().count()).max().unwrap_or(0);
        for l in &self.lines {
            let pad = width - l.claim.chars().count();
            writeln!(
                f,
                "  [{:<12}] {}{}  = {}  ({})",
                l.verdict.to_string(),
                l.claim,
                " ".repeat(pad),
                l.computed,
                l.anchor
            )?;
        }
        writeln!(f, "overall: {}", self.overall)?;
        if !self.timings.is_empty() {
            let parts: Vec<String> = self.timings.iter().map(|(s, d)| format!("{s} {:.3}s", d.as_secs_f64())).collect();
            writeln!(f, "timings: {}", parts.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_rules() {
        let mut r = VerificationReport::new("verify", "A", 1, 0);
        r.check("x", Anchor::ADimension, 2, true);
        r.cite("y", Anchor::ANormal, "hypotheses hold", true);
        assert_eq!(r.overall, Verdict::Pass);
        r.push("z", Anchor::EngineEuler, "window", Verdict::Inconclusive);
        assert_eq!(r.overall, Verdict::Inconclusive);
        r.check("w", Anchor::ADegree, 3, false);
        assert_eq!(r.overall, Verdict::Fail);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn anchor_keys_unique() {
        let mut keys: Vec<&str> = Anchor::ALL.iter().map(|a| a.key()).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), Anchor::ALL.len());
    }

    #[test]
    fn timings_stay_out_of_json() {
        let mut r = VerificationReport::new("verify", "A", 1, 0);
        r.time("groebner", Duration::from_millis(5));
        let json = r.to_json();
        assert!(!json.contains("timings"));
        assert!(json.contains("\"verdicts\""));
        assert!(r.to_string().contains("timings: groebner"));
    }
}
