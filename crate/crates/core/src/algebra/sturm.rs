//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `f, f', -rem(f, f'), ...` down to the last nonzero remainder.
pub fn sturm_sequence<T: Field + Signed>(f: &Poly<T>) -> Vec<Poly<T>> {
    let mut seq = vec![f.clone()];
    let mut next = f.derivative();
    while !next.is_zero() {
        let r = -&seq.last().unwrap().rem(&next);
        seq.push(next);
        next = r;
    }
    seq
}

fn sign_changes<T: Signed>(signs: impl Iterator<Item = T>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for s in signs {
        if s.is_zero() {
            continue;
        }
        let pos = s.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// Sign changes of the sequence at `+inf` (`at_pos = true`) or `-inf`.
fn changes_at_infinity<T: Field + Signed>(seq: &[Poly<T>], at_pos: bool) -> usize {
    sign_changes(seq.iter().map(|p| {
        let l = p.lead().unwrap().clone();
        if !at_pos && p.degree().unwrap() % 2 == 1 {
            -l
        } else {
            l
        }
    }))
}

fn changes_at<T: Field + Signed>(seq: &[Poly<T>], x: &T) -> usize {
    sign_changes(seq.iter().map(|p| p.eval(x)))
}

fn check_squarefree<T: Field + Signed>(seq: &[Poly<T>]) -> Result<()> {
    if seq.last().unwrap().degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots<T: Field + Signed>(f: &Poly<T>) -> Result<usize> {
    match f.degree() {
        None => return Err(Error::Degenerate("zero polynomial".into())),
        Some(0) => return Ok(0),
        _ => {}
    }
    let seq = sturm_sequence(f);
    check_squarefree(&seq)?;
    Ok(changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true))
}

/// Number of real roots in the half-open interval `(a, b]`.
pub fn count_roots_between<T: Field + Signed>(f: &Poly<T>, a: &T, b: &T) -> Result<usize> {
    let seq = sturm_sequence(f);
    check_squarefree(&seq)?;
    Ok(changes_at(&seq, a).saturating_sub(changes_at(&seq, b)))
}

/// Real roots of an integer polynomial, computed over the rationals.
pub fn sturm_count_real_roots(f: &Poly<BigInt>) -> Result<usize> {
    count_real_roots(&f.to_rational())
}
