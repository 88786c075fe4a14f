//! The full invariant record of a number field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::integer::PrimeFactorization;
use crate::error::{Error, Result};
use crate::invariants::{
    alpha_invariant, classify_splittings, field_signature, gram_matrix, lemma_square_class,
    AlphaClass, GammaClassification, TraceForm,
};
use crate::order::{maximal_order, MaximalOrder};
use crate::splitting::{split_prime, SplittingType};
use crate::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAnalysis {
    pub f: IntPoly,
    pub n: usize,
    /// `(r, s)`.
    pub signature: (usize, usize),
    pub max_order: MaximalOrder,
    pub disc: BigInt,
    pub disc_factored: PrimeFactorization,
    /// Every prime dividing the discriminant.
    pub splittings: BTreeMap<BigInt, SplittingType>,
    pub trace_form: TraceForm,
    /// Odd tame ramified primes only.
    pub alphas: BTreeMap<BigInt, AlphaClass>,
    pub gamma: GammaClassification,
}

impl FieldAnalysis {
    pub fn is_tame(&self) -> bool {
        self.gamma.is_tame
    }

    pub fn is_totally_real(&self) -> bool {
        self.signature.1 == 0
    }

    pub fn ramified_primes(&self) -> impl Iterator<Item = &BigInt> {
        self.splittings.keys()
    }
}

/// Analyzes the field `Q[x]/(f)` for monic irreducible `f`.
pub fn analyze(f: &IntPoly) -> Result<FieldAnalysis> {
    let max_order = maximal_order(f)?;
    let n = max_order.degree();
    let signature = field_signature(f)?;
    let disc = max_order.disc().clone();
    let disc_factored = max_order.disc_factored.clone();
    let primes: Vec<BigInt> = disc_factored.primes().cloned().collect();
    let splittings = primes
        .par_iter()
        .map(|p| split_prime(&max_order, p).map(|s| (p.clone(), s)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let trace_form = gram_matrix(&max_order)?;
    let two = BigInt::from(2);
    let alphas = splittings
        .iter()
        .filter(|(p, s)| **p != two && s.is_tame())
        .map(|(p, s)| alpha_invariant(s).map(|a| (p.clone(), a)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let gamma = classify_splittings(n, splittings.values());
    Ok(FieldAnalysis {
        f: f.clone(),
        n,
        signature,
        max_order,
        disc,
        disc_factored,
        splittings,
        trace_form,
        alphas,
        gamma,
    })
}

/// Checks the square-class formula at a non-exceptional odd ramified prime
/// of a Gamma field.
pub fn verify_lemma(a: &FieldAnalysis, p: &BigInt) -> Result<bool> {
    if !a.gamma.is_gamma {
        return Err(Error::OutOfDomain("not a Gamma field".into()));
    }
    if a.gamma.exceptional.as_ref() == Some(p) {
        return Err(Error::OutOfDomain(format!("{p} is the exceptional prime")));
    }
    let alpha = a
        .alphas
        .get(p)
        .ok_or_else(|| Error::OutOfDomain(format!("{p} is not an odd ramified prime")))?;
    let v = a.disc_factored.valuation(p) as usize;
    Ok(alpha.legendre == lemma_square_class(a.n, v, p)?.legendre)
}
