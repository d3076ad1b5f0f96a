//! Stratified census of rational places of `F_n` over `F_{q^2}`.
//!
//! The count splits over the base places of `F_0`: the place at
//! infinity (splits completely), the zeroes of `x_0 - a` for `a` in
//! `F_q` minus `-1` (totally ramified columns), the zero of `x_0 + 1`
//! (three regimes governed by the 2-adic valuation of `q + 1`), and the
//! quadratic base places `x_0 = a` with `a` in `F_{q^2}` minus `F_q`
//! (forced coefficient chains that die in characteristic 3 and persist
//! otherwise).
//!
//! Closed counting formulas are specific to the plain `gst2` tower; the
//! shifted variant and the `F_q`-constant-field readings are served by
//! the enumeration oracle instead.

use num_rational::Ratio;
use thiserror::Error;

use crate::genus::{genus_closed, GenusError};
use crate::gf::{Fe, GfError};
use crate::scalar::{from_u64, pow_u, Scalar};
use crate::tower::{prime_power, ProjValue, Tower, TowerKind};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("q must be a prime power above two, got {0}")]
    BadQ(u64),
    #[error("arguments outside the valid range: {0}")]
    BadRange(String),
    #[error("the center analysis needs odd characteristic")]
    Char2Unsupported,
    #[error("beta must lie in F_q^* minus -1")]
    BadBeta,
    #[error("degenerate denominator in the forced chain at level {level}")]
    DegenerateDenominator { level: u64 },
    #[error("no closed census for {0:?}; use the oracle engine")]
    NoClosedForm(TowerKind),
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

fn split_q(q: u64) -> Result<(u64, u32), CensusError> {
    if q <= 2 {
        return Err(CensusError::BadQ(q));
    }
    prime_power(q).ok_or(CensusError::BadQ(q))
}

fn two_adic_valuation(mut x: u64) -> u32 {
    debug_assert!(x > 0);
    let mut v = 0;
    while x.is_multiple_of(2) {
        x /= 2;
        v += 1;
    }
    v
}

/// Rational places of `F_n` above the place at infinity: it splits
/// completely, so one per element of the fiber, `(q-1)^n` in total.
pub fn census_infinity<T: Scalar>(q: u64, n: u64) -> Result<T, CensusError> {
    split_q(q)?;
    Ok(pow_u(&from_u64(q - 1), n))
}

/// Rational places above the zeroes of `x_0 - a`, `a` in `F_q` minus
/// `-1`: each column is totally ramified with residue degree one, so
/// there are exactly `q - 1` at every level.
pub fn census_fq_stratum<T: Scalar>(q: u64, _n: u64) -> Result<T, CensusError> {
    split_q(q)?;
    Ok(from_u64(q - 1))
}

/// Rational places of `F_n` (`n >= 1`) above the zero of `x_0 + 1`.
///
/// In characteristic two there are exactly `q - 1`. In odd
/// characteristic, with `l` the 2-adic valuation of `q + 1`:
/// `(q-1)(2^(l+1) - 1)` once `n > 2l`, `(q-1)(2^((n+1)/2) - 1)` for odd
/// `n <= 2l`, and `(q-1)(3 * 2^(n/2 - 1) - 1)` for even `n <= 2l`.
pub fn minus_one_total<T: Scalar>(q: u64, n: u64) -> Result<T, CensusError> {
    let (p, _) = split_q(q)?;
    if n == 0 {
        return Err(CensusError::BadRange("n must be at least 1".into()));
    }
    let qm1: T = from_u64(q - 1);
    if p == 2 {
        return Ok(qm1);
    }
    let l = two_adic_valuation(q + 1) as u64;
    let two: T = T::from(2u32);
    let factor: T = if n > 2 * l {
        pow_u(&two, l + 1) - T::one()
    } else if n % 2 == 1 {
        pow_u(&two, n.div_ceil(2)) - T::one()
    } else {
        T::from(3u32) * pow_u(&two, n / 2 - 1) - T::one()
    };
    Ok(qm1 * factor)
}

/// Rational places of `F_n` above `x_0 = -1` whose pivot coordinate sits
/// at level `m` (the places are zeroes of `x_m - a` for `a` in `F_q^*`
/// minus `-1`), totalled over all such `a`: the center analysis forces
/// the pivot value to `-1/2`, so a single `a` carries everything.
///
/// With `l` the 2-adic valuation of `q + 1`:
/// `2m <= n`: `2^(m-1)(q-1)` when `m <= l`, else 0;
/// `n > m`, `2m > n`: `2^(n-m-1)(q-1)` when `n - m <= l`, else 0;
/// `m = n`: `q - 2`.
pub fn minus_one_pivot_count<T: Scalar>(q: u64, n: u64, m: u64) -> Result<T, CensusError> {
    let (p, _) = split_q(q)?;
    if p == 2 {
        return Err(CensusError::Char2Unsupported);
    }
    if m == 0 || m > n {
        return Err(CensusError::BadRange(format!("m = {m}, n = {n}")));
    }
    let l = two_adic_valuation(q + 1) as u64;
    let qm1: T = from_u64(q - 1);
    let two: T = T::from(2u32);
    if m == n {
        return Ok(from_u64(q - 2));
    }
    let a = m.min(n - m);
    if a > l {
        return Ok(T::zero());
    }
    Ok(pow_u(&two, a - 1) * qm1)
}

/// Completion tuples `(a_1, ..., a_t)` of a center place: `a_1^2 = -1`,
/// `a_i^2 = -1/a_{i-1}` for the middle entries, and
/// `a_t^(q-1) = -a_{t-1}` (with `a_0 = 1`). Each tuple pins one rational
/// place in the window of half-width `t` around a pivot coordinate held
/// at `-1/2`. There are `2^(t-1)(q-1)` tuples when `q = -1 mod 2^t`,
/// none otherwise.
pub fn center_tuples(tower: &Tower, t: u32) -> Result<Vec<Vec<Fe>>, CensusError> {
    if tower.characteristic() == 2 {
        return Err(CensusError::Char2Unsupported);
    }
    if t == 0 {
        return Err(CensusError::BadRange(
            "tuple length must be positive".into(),
        ));
    }
    let ctx = tower.ctx();
    let q = tower.q();
    let minus_one = ctx.from_int(-1);
    let mut tuples: Vec<Vec<Fe>> = vec![vec![]];
    for i in 1..=t {
        let mut next = Vec::new();
        for tuple in &tuples {
            let prev = if i == 1 {
                ctx.one()
            } else {
                tuple.last().unwrap().clone()
            };
            let target = if i == 1 {
                minus_one.clone()
            } else {
                ctx.div(&minus_one, &prev)?
            };
            if i == t {
                // last entry satisfies a^(q-1) = -a_{t-1}
                let rhs = ctx.neg(&prev);
                for y in ctx.roots_of(&rhs, q - 1) {
                    let mut ext = tuple.clone();
                    ext.push(y);
                    next.push(ext);
                }
            } else {
                for y in ctx.roots_of(&target, 2) {
                    let mut ext = tuple.clone();
                    ext.push(y);
                    next.push(ext);
                }
            }
        }
        tuples = next;
    }
    Ok(tuples)
}

/// Rationality of the place of `F_2` that is a zero of `x_1 - beta`,
/// `beta` in `F_q^*` minus `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterClass {
    /// Not rational over `F_{q^2}` (nor over `F_q`).
    NotRational,
    /// Rational over `F_{q^2}` but never over `F_q`.
    RationalOverQ2,
}

/// In odd characteristic the place is `F_{q^2}`-rational exactly when
/// `beta = -1/2`; in characteristic two, never.
pub fn center_rationality(tower: &Tower, beta: &Fe) -> Result<CenterClass, CensusError> {
    let ctx = tower.ctx();
    ctx.ensure_member(beta)?;
    let in_base = ctx.in_subfield(beta, tower.base_subfield_degree())?;
    if !in_base || beta.is_zero() || *beta == ctx.from_int(-1) {
        return Err(CensusError::BadBeta);
    }
    if tower.characteristic() == 2 {
        return Ok(CenterClass::NotRational);
    }
    if *beta == ctx.minus_half()? {
        Ok(CenterClass::RationalOverQ2)
    } else {
        Ok(CenterClass::NotRational)
    }
}

/// A quadratic base value `alpha` in `F_{q^2}` minus `F_q` that admits a
/// rational coordinate above it: `z = (alpha + s)^(q-1)` satisfies
/// `z^2 - z + 1 = 0`, equivalently `z + 1/z = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticAlphaRecord {
    pub alpha: Fe,
    pub z: Fe,
}

/// Enumerate the quadratic base values admitting rational extensions.
/// Empty when the constant field equals `F_q` (no quadratic values
/// exist) and in fields where no sixth root of unity is a `(q-1)`-power.
pub fn quadratic_alpha_set(tower: &Tower) -> Result<Vec<QuadraticAlphaRecord>, CensusError> {
    let ctx = tower.ctx();
    let q = tower.q();
    let one = ctx.one();
    let d = tower.base_subfield_degree();
    let mut out = Vec::new();
    for alpha in ctx.elements() {
        if ctx.in_subfield(&alpha, d)? {
            continue;
        }
        let w = ctx.add(&alpha, tower.shift());
        let z = ctx.pow(&w, q - 1);
        let zinv = ctx.inv(&z)?;
        if ctx.add(&z, &zinv) == one {
            // z + 1/z = 1 is the trace form of z^2 - z + 1 = 0
            let check = ctx.add(&ctx.sub(&ctx.mul(&z, &z), &z), &one);
            debug_assert!(check.is_zero());
            out.push(QuadraticAlphaRecord { alpha, z });
        }
    }
    Ok(out)
}

/// Outcome of following the forced chain above one quadratic base value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainFate {
    /// The chain reaches level `n`; `alphas` are the forced coordinates
    /// `x_1 .. x_{n-1}`, `cs` the forced `F_q^*` coefficients with
    /// `x_i = c_i / (x_{i-1} + s)`, and `completions` counts the free
    /// choices of the final coordinate.
    Extended {
        alphas: Vec<Fe>,
        cs: Vec<Fe>,
        completions: u64,
    },
    /// No coordinate exists in `F_{q^2}` at `level`.
    Dead { level: u64 },
}

/// Follow the chain above `record.alpha` up to level `n >= 1`.
///
/// Every candidate coordinate is scanned; a candidate continues only if
/// it admits a rational coordinate above it in turn. In characteristic
/// other than 3 exactly one candidate continues at each interior level
/// and its coefficient is cross-checked against the closed form
/// `c = ((1+a)^(2q-1) - (1+a)^q) / (1 - (1+a)^(2q-2))` (plain tower);
/// in characteristic 3 no candidate ever continues past the first level.
pub fn quadratic_chain(
    tower: &Tower,
    record: &QuadraticAlphaRecord,
    n: u64,
) -> Result<ChainFate, CensusError> {
    if n == 0 {
        return Err(CensusError::BadRange("n must be at least 1".into()));
    }
    let ctx = tower.ctx();
    let q = tower.q();
    let m = tower.exponent();
    let one = ctx.one();
    let mut alphas: Vec<Fe> = Vec::new();
    let mut cs: Vec<Fe> = Vec::new();
    let mut prev = record.alpha.clone();
    for level in 1..=n {
        let (u_val, _) = tower.rhs_val(&ProjValue::Finite(prev.clone()));
        let target = u_val.finite().expect("finite image").clone();
        if level == n {
            let completions = ctx.root_count(&target, m);
            if completions == 0 {
                return Ok(ChainFate::Dead { level });
            }
            // the claim: every forced coordinate shares the z of the base
            for a in &alphas {
                let w = ctx.add(a, tower.shift());
                assert_eq!(ctx.pow(&w, q - 1), record.z, "shared-z claim violated");
            }
            return Ok(ChainFate::Extended {
                alphas,
                cs,
                completions,
            });
        }
        let candidates = ctx.roots_of(&target, m);
        if candidates.is_empty() {
            return Ok(ChainFate::Dead { level });
        }
        let continuing: Vec<Fe> = candidates
            .into_iter()
            .filter(|y| {
                let w = ctx.add(y, tower.shift());
                if w.is_zero() {
                    return false;
                }
                let z = ctx.pow(&w, q - 1);
                let zinv = ctx.inv(&z).expect("nonzero");
                ctx.add(&z, &zinv) == one
            })
            .collect();
        match continuing.len() {
            0 => return Ok(ChainFate::Dead { level: level + 1 }),
            1 => {
                let next = continuing.into_iter().next().unwrap();
                let denom = ctx.add(&prev, tower.shift());
                let c = ctx.mul(&next, &denom);
                // c lands in F_q^*: (x_{i-1}+s) and x_i have reciprocal
                // (q-1)-th powers
                assert!(
                    !c.is_zero() && ctx.in_subfield(&c, tower.base_subfield_degree())?,
                    "forced coefficient must lie in F_q^*"
                );
                if tower.kind() != TowerKind::Gst2Shifted {
                    let formula = forced_coefficient(tower, &prev)?;
                    assert_eq!(formula, c, "scan and closed form disagree");
                }
                cs.push(c);
                alphas.push(next.clone());
                prev = next;
            }
            k => unreachable!("{k} continuing candidates; the shared-z argument forbids this"),
        }
    }
    unreachable!("loop returns at level n")
}

/// The closed-form forced coefficient
/// `c = ((1+a)^(2q-1) - (1+a)^q) / (1 - (1+a)^(2q-2))` for the plain
/// tower. The denominator `1 - z^2` could only vanish for `z = +/-1`,
/// which never solves `z^2 - z + 1 = 0` away from characteristic 3, but
/// it is checked rather than assumed.
fn forced_coefficient(tower: &Tower, alpha: &Fe) -> Result<Fe, CensusError> {
    let ctx = tower.ctx();
    let q = tower.q();
    let w = ctx.add(&ctx.one(), alpha);
    let numer = ctx.sub(&ctx.pow(&w, 2 * q - 1), &ctx.pow(&w, q));
    let denom = ctx.sub(&ctx.one(), &ctx.pow(&w, 2 * q - 2));
    if denom.is_zero() {
        return Err(CensusError::DegenerateDenominator { level: 0 });
    }
    Ok(ctx.div(&numer, &denom)?)
}

/// Rational places of `F_n` (`n >= 1`) above all quadratic base values:
/// zero from level 2 on in characteristic 3, and `(q-1)` times the
/// number of admissible base values otherwise. Level 1 is always served
/// by enumeration, since the collapse argument needs two steps.
pub fn quadratic_census<T: Scalar>(tower: &Tower, n: u64) -> Result<T, CensusError> {
    if n == 0 {
        return Err(CensusError::BadRange("n must be at least 1".into()));
    }
    let records = quadratic_alpha_set(tower)?;
    if tower.characteristic() == 3 && n >= 2 {
        return Ok(T::zero());
    }
    if n == 1 {
        let mut total = T::zero();
        for rec in &records {
            if let ChainFate::Extended { completions, .. } = quadratic_chain(tower, rec, 1)? {
                total += from_u64::<T>(completions);
            }
        }
        return Ok(total);
    }
    Ok(from_u64::<T>(tower.q() - 1) * from_u64(records.len() as u64))
}

/// Per-level census over `F_{q^2}`, stratified by base place.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub level: u64,
    pub stratum_infinity: Int,
    pub stratum_fq: Int,
    pub stratum_minus_one: Int,
    pub stratum_quadratic: Int,
    pub total: Int,
    /// Places above `x_0 = -1` that are rational already over `F_q`
    /// (`q - 1` of them at every level `n >= 1`, in any characteristic).
    pub fq_rational: Int,
    pub genus: Int,
    /// `N(F_n) / (q-1)^n`.
    pub nu: Rat,
    /// `N(F_n) / g(F_n)`; absent while the genus vanishes.
    pub lambda: Option<Rat>,
}

/// Closed-form census for the plain `gst2` tower. Level 0 is the
/// projective line: `q^2 + 1` places split as `1 + (q-1) + 1 + (q^2-q)`.
pub fn total_census(tower: &Tower, n: u64) -> Result<CensusReport, CensusError> {
    if tower.kind() != TowerKind::Gst2 {
        return Err(CensusError::NoClosedForm(tower.kind()));
    }
    let q = tower.q();
    let (inf, fq, minus_one, quadratic, fq_rational) = if n == 0 {
        (
            Int::from(1),
            Int::from(q - 1),
            Int::from(1),
            Int::from(q * q - q),
            Int::from(1),
        )
    } else {
        (
            census_infinity(q, n)?,
            census_fq_stratum(q, n)?,
            minus_one_total(q, n)?,
            quadratic_census(tower, n)?,
            Int::from(q - 1),
        )
    };
    let total = &inf + &fq + &minus_one + &quadratic;
    let genus: Int = genus_closed(q, n)?;
    let degree = pow_u(&Int::from(q - 1), n);
    let lambda = if genus > Int::from(0) {
        Some(Rat::new(total.clone(), genus.clone()))
    } else {
        None
    };
    Ok(CensusReport {
        level: n,
        stratum_infinity: inf,
        stratum_fq: fq,
        stratum_minus_one: minus_one,
        stratum_quadratic: quadratic,
        nu: Ratio::new(total.clone(), degree),
        total,
        fq_rational,
        genus,
        lambda,
    })
}
