//! JSON projections of analyses and comparisons. Every integer that can grow
//! without bound is a decimal string; maps keyed by primes are arrays sorted
//! by the prime.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use tracegenus::genus::{CrossValidation, SpinorReport, TheoremPrediction};
use tracegenus::{Error, FieldAnalysis, IntPoly};

pub const SCHEMA_VERSION: u32 = 1;

fn s(v: &BigInt) -> String {
    v.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub polynomial: String,
    /// Lowest degree first.
    pub coefficients: Vec<String>,
}

impl InputEcho {
    pub fn new(f: &IntPoly, label: Option<String>) -> Self {
        InputEcho { label, polynomial: f.to_string(), coefficients: f.coeffs().iter().map(s).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: String,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub denominator: String,
    /// Row `i` holds the power-basis numerators of the `i`-th basis element.
    pub numerators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDoc {
    pub p: String,
    /// `[e, f]` pairs, ascending.
    pub pairs: Vec<[u32; 2]>,
    pub g: usize,
    pub residue_degree_sum: u32,
    pub tame: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFormDoc {
    pub gram: Vec<Vec<String>>,
    pub det: String,
    pub signature: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDoc {
    pub p: String,
    pub legendre: i8,
    pub unit_rep: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BulletsDoc {
    pub p: String,
    pub eps_split: bool,
    pub g_odd: bool,
    pub n_over_e_odd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDoc {
    pub is_tame: bool,
    pub is_gamma: bool,
    pub exceptional: Option<String>,
    pub per_prime: Vec<BulletsDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub input: InputEcho,
    pub degree: usize,
    /// `[r, s]`.
    pub signature: [usize; 2],
    pub disc: String,
    pub disc_factorization: FactorizationDoc,
    pub poly_disc: String,
    pub index: String,
    pub integral_basis: BasisDoc,
    pub splittings: Vec<SplittingDoc>,
    pub trace_form: TraceFormDoc,
    pub alphas: Vec<AlphaDoc>,
    pub gamma: GammaDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_warning: Option<String>,
}

impl AnalysisDocument {
    pub fn from_analysis(a: &FieldAnalysis, label: Option<String>) -> Self {
        let m = &a.max_order;
        let rows = |mat: &tracegenus::IntMatrix| -> Vec<Vec<String>> {
            mat.to_rows().iter().map(|r| r.iter().map(s).collect()).collect()
        };
        AnalysisDocument {
            schema_version: SCHEMA_VERSION,
            input: InputEcho::new(&a.f, label),
            degree: a.n,
            signature: [a.signature.0, a.signature.1],
            disc: s(&a.disc),
            disc_factorization: FactorizationDoc {
                sign: a.disc_factored.sign,
                factors: a
                    .disc_factored
                    .factors
                    .iter()
                    .map(|(p, &e)| PrimePower { p: s(p), e })
                    .collect(),
            },
            poly_disc: s(&m.poly_disc),
            index: s(&m.index),
            integral_basis: BasisDoc {
                denominator: s(m.order.denom()),
                numerators: rows(m.order.basis()),
            },
            splittings: a
                .splittings
                .values()
                .map(|t| SplittingDoc {
                    p: s(&t.p),
                    pairs: t.pairs.iter().map(|&(e, f)| [e, f]).collect(),
                    g: t.g(),
                    residue_degree_sum: t.residue_degree_sum(),
                    tame: t.is_tame(),
                })
                .collect(),
            trace_form: TraceFormDoc {
                gram: rows(&a.trace_form.gram),
                det: s(&a.trace_form.det),
                signature: [a.trace_form.signature.0, a.trace_form.signature.1],
            },
            alphas: a
                .alphas
                .values()
                .map(|c| AlphaDoc { p: s(&c.p), legendre: c.legendre, unit_rep: s(&c.unit_rep) })
                .collect(),
            gamma: GammaDoc {
                is_tame: a.gamma.is_tame,
                is_gamma: a.gamma.is_gamma,
                exceptional: a.gamma.exceptional.as_ref().map(s),
                per_prime: a
                    .gamma
                    .per_prime
                    .iter()
                    .map(|(p, b)| BulletsDoc {
                        p: s(p),
                        eps_split: b.eps_split,
                        g_odd: b.g_odd,
                        n_over_e_odd: b.n_over_e_odd,
                    })
                    .collect(),
            },
            cache_warning: None,
        }
    }

    pub fn splitting(&self, p: &str) -> Option<&SplittingDoc> {
        self.splittings.iter().find(|t| t.p == p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
}

impl ErrorDoc {
    pub fn new(e: &Error) -> Self {
        let kind = match e {
            Error::Parse(_) => "parse",
            Error::NotMonic => "not-monic",
            Error::Degenerate(_) => "degenerate",
            Error::Reducible(_) => "reducible",
            Error::FactorizationBudget(_) => "factorization-budget",
            Error::PrimeTooLarge(_) => "prime-too-large",
            _ => "internal",
        };
        let factors = match e {
            Error::Reducible(f) => f.clone(),
            _ => Vec::new(),
        };
        ErrorDoc { kind: kind.to_string(), message: e.to_string(), factors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub polynomial: String,
    pub degree: usize,
    pub disc: String,
    pub signature: [usize; 2],
    pub is_tame: bool,
    pub is_gamma: bool,
    pub exceptional: Option<String>,
}

impl FieldSummary {
    pub fn new(a: &FieldAnalysis) -> Self {
        FieldSummary {
            polynomial: a.f.to_string(),
            degree: a.n,
            disc: s(&a.disc),
            signature: [a.signature.0, a.signature.1],
            is_tame: a.gamma.is_tame,
            is_gamma: a.gamma.is_gamma,
            exceptional: a.gamma.exceptional.as_ref().map(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeComparisonDoc {
    pub p: String,
    pub legendre_k: i8,
    pub legendre_l: i8,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorDoc {
    pub verdict: String,
    pub disc_equal: bool,
    pub signature_equal: bool,
    pub informational: bool,
    pub per_prime: Vec<PrimeComparisonDoc>,
}

impl SpinorDoc {
    pub fn new(r: &SpinorReport) -> Self {
        SpinorDoc {
            verdict: r.verdict.to_string(),
            disc_equal: r.disc_equal,
            signature_equal: r.signature_equal,
            informational: r.informational,
            per_prime: r
                .per_prime
                .iter()
                .map(|(p, c)| PrimeComparisonDoc {
                    p: s(p),
                    legendre_k: c.legendre_k,
                    legendre_l: c.legendre_l,
                    equal: c.equal,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDoc {
    pub applicable: bool,
    pub reason: String,
    pub predicted_equivalent: bool,
    pub isometry_claim: bool,
}

impl TheoremDoc {
    pub fn new(t: &TheoremPrediction) -> Self {
        TheoremDoc {
            applicable: t.applicable,
            reason: t.reason.clone(),
            predicted_equivalent: t.predicted_equivalent,
            isometry_claim: t.isometry_claim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossDoc {
    pub consistent: bool,
}

impl CrossDoc {
    pub fn new(c: &CrossValidation) -> Self {
        CrossDoc { consistent: c.consistent }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareDocument {
    pub schema_version: u32,
    pub fields: [FieldSummary; 2],
    pub spinor: SpinorDoc,
    pub theorem: TheoremDoc,
    pub cross_validation: Option<CrossDoc>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("documents serialize");
    out.push('\n');
    out
}
