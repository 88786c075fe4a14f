//! Spinor-genus comparison of integral trace forms of tame fields, and the
//! prediction for Gamma fields from discriminant and signature alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::analysis::FieldAnalysis;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotApplicable {
    /// Some ramified prime divides a ramification index.
    Wild,
    /// Degree below 3 or the degrees differ.
    Degree,
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotApplicable::Wild => "wild",
            NotApplicable::Degree => "degree",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Same,
    Different,
    NotApplicable(NotApplicable),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Same => f.write_str("same-spinor-genus"),
            Verdict::Different => f.write_str("different"),
            Verdict::NotApplicable(r) => write!(f, "not-applicable({r})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeComparison {
    pub legendre_k: i8,
    pub legendre_l: i8,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorReport {
    pub disc_equal: bool,
    pub signature_equal: bool,
    /// Odd primes dividing both discriminants.
    pub per_prime: BTreeMap<BigInt, PrimeComparison>,
    /// Set when the discriminants differ; `per_prime` is then only
    /// informational.
    pub informational: bool,
    pub verdict: Verdict,
}

fn applicability(a: &FieldAnalysis, b: &FieldAnalysis) -> Option<NotApplicable> {
    if !a.is_tame() || !b.is_tame() {
        Some(NotApplicable::Wild)
    } else if a.n != b.n || a.n < 3 {
        Some(NotApplicable::Degree)
    } else {
        None
    }
}

/// Decides whether the integral trace forms of two tame fields of the same
/// degree `n >= 3` lie in the same spinor genus.
pub fn compare_spinor_genus(a: &FieldAnalysis, b: &FieldAnalysis) -> SpinorReport {
    let disc_equal = a.disc == b.disc;
    let signature_equal = a.signature.1 == b.signature.1;
    if let Some(reason) = applicability(a, b) {
        return SpinorReport {
            disc_equal,
            signature_equal,
            per_prime: BTreeMap::new(),
            informational: false,
            verdict: Verdict::NotApplicable(reason),
        };
    }
    let common = a.disc.gcd(&b.disc);
    let per_prime: BTreeMap<BigInt, PrimeComparison> = a
        .alphas
        .iter()
        .filter(|(p, _)| common.is_multiple_of(p))
        .filter_map(|(p, ak)| {
            let al = b.alphas.get(p)?;
            Some((
                p.clone(),
                PrimeComparison {
                    legendre_k: ak.legendre,
                    legendre_l: al.legendre,
                    equal: ak.legendre == al.legendre,
                },
            ))
        })
        .collect();
    let same = disc_equal && signature_equal && per_prime.values().all(|c| c.equal);
    SpinorReport {
        disc_equal,
        signature_equal,
        per_prime,
        informational: !disc_equal,
        verdict: if same { Verdict::Same } else { Verdict::Different },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremPrediction {
    pub applicable: bool,
    pub reason: String,
    pub predicted_equivalent: bool,
    /// The forms are claimed isometric over Z, not only spinor-genus
    /// equivalent.
    pub isometry_claim: bool,
}

/// Prediction for a pair of Gamma fields with at most one exceptional prime
/// between them.
pub fn predict_by_theorem(a: &FieldAnalysis, b: &FieldAnalysis) -> TheoremPrediction {
    let refuse = |reason: &str| TheoremPrediction {
        applicable: false,
        reason: reason.to_string(),
        predicted_equivalent: false,
        isometry_claim: false,
    };
    if !a.gamma.is_gamma || !b.gamma.is_gamma {
        return refuse("not both Gamma fields");
    }
    let exceptional: BTreeSet<&BigInt> =
        a.gamma.exceptional.iter().chain(b.gamma.exceptional.iter()).collect();
    if exceptional.len() > 1 {
        return refuse("exceptional primes differ");
    }
    let predicted_equivalent = a.disc == b.disc && a.signature == b.signature;
    TheoremPrediction {
        applicable: true,
        reason: match exceptional.first() {
            Some(q) => format!("Gamma fields, exceptional prime {q}"),
            None => "Gamma fields, no exceptional prime".to_string(),
        },
        predicted_equivalent,
        isometry_claim: predicted_equivalent && a.signature.1 > 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub prediction: TheoremPrediction,
    pub report: SpinorReport,
    /// The prediction agrees with the comparator.
    pub consistent: bool,
}

/// Runs both decision paths on a pair where both apply.
pub fn cross_validate(a: &FieldAnalysis, b: &FieldAnalysis) -> Result<CrossValidation> {
    let prediction = predict_by_theorem(a, b);
    if !prediction.applicable {
        return Err(Error::OutOfDomain(format!("prediction not applicable: {}", prediction.reason)));
    }
    let report = compare_spinor_genus(a, b);
    if let Verdict::NotApplicable(r) = report.verdict {
        return Err(Error::OutOfDomain(format!("comparator not applicable: {r}")));
    }
    let consistent = prediction.predicted_equivalent == (report.verdict == Verdict::Same);
    Ok(CrossValidation { prediction, report, consistent })
}
