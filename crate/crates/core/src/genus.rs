//! Different degrees, genera, and the asymptotic invariants of the
//! `gst2` tower, in exact integer and rational arithmetic.
//!
//! Everything here is generic over [`Scalar`]; the crate-root aliases
//! [`crate::Int`] / [`crate::Rat`] instantiate it with big integers.
//! No floating point appears anywhere: square-root bounds are compared
//! in squared form.
//!
//! Index convention: the public level `N` counts generators minus one,
//! so `F_N = K(x_0, ..., x_N)` and `g(F_0) = 0` (a rational function
//! field). Different degrees are indexed by the lower level:
//! `different_degree_*(q, n)` is `deg Diff(F_{n+1}/F_n)`. This is the
//! single point where the two-index bookkeeping is fixed; nothing else
//! re-indexes.

use num_rational::Ratio;
use thiserror::Error;

use crate::scalar::{from_u64, pow_u, Scalar};
use crate::tower::TowerKind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenusError {
    #[error("q must exceed two, got {0}")]
    BadQ(u64),
    #[error("Hurwitz recursion produced an odd intermediate at level {level}")]
    ParityViolation { level: u64 },
    #[error("no closed forms exist for {0:?}; use the oracle engine")]
    NoClosedForm(TowerKind),
}

fn check_q(q: u64) -> Result<(), GenusError> {
    if q <= 2 {
        Err(GenusError::BadQ(q))
    } else {
        Ok(())
    }
}

/// `deg Diff(F_{n+1}/F_n)` as the stratified sum: `(q-1)(q-2)` from the
/// totally ramified columns plus, for each of the `q-2` pivot values and
/// each stratum depth `t` below `floor(n/2)`, a tame contribution
/// `(q-2)(q-1)^(t+1)`.
pub fn different_degree_sum<T: Scalar>(q: u64, n: u64) -> Result<T, GenusError> {
    check_q(q)?;
    let qm1: T = from_u64(q - 1);
    let qm2: T = from_u64(q - 2);
    let mut total = qm1.clone() * qm2.clone();
    for _alpha in 0..(q - 2) {
        for t in 0..(n / 2) {
            total += qm2.clone() * pow_u(&qm1, t + 1);
        }
    }
    Ok(total)
}

/// `deg Diff(F_{n+1}/F_n)` in closed form: `(q-2)(q-1)^(floor(n/2)+1)`.
pub fn different_degree_closed<T: Scalar>(q: u64, n: u64) -> Result<T, GenusError> {
    check_q(q)?;
    let qm1: T = from_u64(q - 1);
    let qm2: T = from_u64(q - 2);
    Ok(qm2 * pow_u(&qm1, n / 2 + 1))
}

/// `g(F_N)` in closed form, with `g(F_0) = 0`:
/// `N` odd:       `(q-2)(q-1)^N / 2 - (q-1)^((N+1)/2) + 1`;
/// `N` even >= 2: `(q-2)(q-1)^N / 2 - q(q-1)^(N/2) / 2 + 1`.
pub fn genus_closed<T: Scalar>(q: u64, big_n: u64) -> Result<T, GenusError> {
    check_q(q)?;
    if big_n == 0 {
        return Ok(T::zero());
    }
    let qm1: T = from_u64(q - 1);
    let qm2: T = from_u64(q - 2);
    let two: T = T::from(2u32);
    let lead = qm2 * pow_u(&qm1, big_n) / two.clone();
    let mid = if big_n % 2 == 1 {
        pow_u(&qm1, big_n.div_ceil(2))
    } else {
        from_u64::<T>(q) * pow_u(&qm1, big_n / 2) / two
    };
    Ok(lead - mid + T::one())
}

/// `g(F_N)` by the Hurwitz recursion
/// `2 g_{K+1} - 2 = (q-1)(2 g_K - 2) + deg Diff(F_{K+1}/F_K)`
/// from `g_0 = 0`. The right-hand side must stay even; an odd value
/// signals an inconsistent different degree and is reported rather than
/// rounded.
pub fn genus_hurwitz<T: Scalar>(q: u64, big_n: u64) -> Result<T, GenusError> {
    check_q(q)?;
    let qm1: T = from_u64(q - 1);
    let two: T = T::from(2u32);
    let mut two_g_minus_2: T = -two.clone();
    for level in 0..big_n {
        let diff: T = different_degree_closed(q, level)?;
        let rhs = qm1.clone() * two_g_minus_2 + diff;
        if !(rhs.clone() % two.clone()).is_zero() {
            return Err(GenusError::ParityViolation { level });
        }
        two_g_minus_2 = rhs;
    }
    Ok((two_g_minus_2 + two.clone()) / two)
}

/// `g(F_N) / (q-1)^N` as an exact rational.
pub fn genus_rate<T: Scalar>(q: u64, big_n: u64) -> Result<Ratio<T>, GenusError> {
    let g = genus_closed::<T>(q, big_n)?;
    let degree = pow_u(&from_u64::<T>(q - 1), big_n);
    Ok(Ratio::new(g, degree))
}

/// The asymptotic constants of the tower over `F_{q^2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits<T: Scalar> {
    /// `lim g(F_N) / (q-1)^N = (q-2)/2`.
    pub gamma: Ratio<T>,
    /// `lim N(F_N) / g(F_N) = 2/(q-2)`.
    pub lambda: Ratio<T>,
}

pub fn limits<T: Scalar>(q: u64) -> Result<Limits<T>, GenusError> {
    check_q(q)?;
    let qm2: T = from_u64(q - 2);
    let two: T = T::from(2u32);
    Ok(Limits {
        gamma: Ratio::new(qm2.clone(), two.clone()),
        lambda: Ratio::new(two, qm2),
    })
}

/// Drinfeld-Vladut comparison `lambda <= sqrt(Q) - 1`, tested in squared
/// form `(lambda + 1)^2 <= Q` to stay exact.
pub fn satisfies_dv_bound<T: Scalar>(lambda: &Ratio<T>, field_order: u64) -> bool {
    let shifted = lambda.clone() + Ratio::from_integer(T::one());
    let squared = shifted.clone() * shifted;
    squared <= Ratio::from_integer(from_u64(field_order))
}

/// One row of the per-level genus table.
#[derive(Debug, Clone)]
pub struct GenusRow {
    pub level: u64,
    /// `[F_N : F_0] = (q-1)^N`.
    pub ext_degree: crate::Int,
    /// `deg Diff(F_N / F_{N-1})`; absent at level zero.
    pub diff_prev: Option<crate::Int>,
    pub genus: crate::Int,
    /// `g(F_N) / (q-1)^N`.
    pub gamma: crate::Rat,
}

/// Genus table for levels `0..=max_level`, plus the limit `(q-2)/2`.
#[derive(Debug, Clone)]
pub struct GenusReport {
    pub q: u64,
    pub rows: Vec<GenusRow>,
    pub gamma_limit: crate::Rat,
}

/// Closed forms exist only for the plain `gst2` tower; other kinds are
/// served by the oracle engine and refused here.
pub fn require_closed_forms(kind: TowerKind) -> Result<(), GenusError> {
    if kind == TowerKind::Gst2 {
        Ok(())
    } else {
        Err(GenusError::NoClosedForm(kind))
    }
}

pub fn genus_report(q: u64, max_level: u64) -> Result<GenusReport, GenusError> {
    check_q(q)?;
    let qm1 = crate::Int::from(q - 1);
    let mut rows = Vec::with_capacity(max_level as usize + 1);
    for level in 0..=max_level {
        rows.push(GenusRow {
            level,
            ext_degree: pow_u(&qm1, level),
            diff_prev: if level == 0 {
                None
            } else {
                Some(different_degree_closed(q, level - 1)?)
            },
            genus: genus_closed(q, level)?,
            gamma: genus_rate(q, level)?,
        });
    }
    Ok(GenusReport {
        q,
        rows,
        gamma_limit: limits::<crate::Int>(q)?.gamma,
    })
}
