//! Ramification through the tower via the subfield pyramid.
//!
//! For a place of `F_n = K(x_0, ..., x_n)` with coordinate trace
//! `(v_0, ..., v_n)`, the pyramid holds the ramification indices of its
//! restrictions to every window field `K(x_i, ..., x_j)`:
//!
//! * `r[i][j]` — index of the trace in `K(x_i..x_j)` over the trace in
//!   `K(x_i..x_{j-1})` (window extended on the right);
//! * `l[i][j]` — index over `K(x_{i+1}..x_j)` (extended on the left).
//!
//! The base layer `j = i + 1` comes from the one-step table; higher
//! layers follow from Abhyankar's lemma applied to the compositum
//! `K(x_i..x_j) = K(x_i..x_{j-1}) * K(x_{i+1}..x_j)`: with
//! `A = l[i][j-1]` and `B = r[i+1][j]`, the index over the common base
//! is `lcm(A, B)`, so `r[i][j] = lcm(A, B)/A` and `l[i][j] = lcm(A, B)/B`.
//! Every step here is tame, which is exactly the hypothesis Abhyankar
//! needs.
//!
//! Indices depend only on the value trace: each step is a Kummer
//! extension with full roots of unity in the constant field, hence
//! Galois, so distinct places sharing a trace share all pyramid entries.
//! Aggregate stratum degrees account for the multiplicity.

use num_integer::Integer as _;
use thiserror::Error;

use crate::gf::Fe;
use crate::scalar::{pow_u, Scalar};
use crate::tower::{BasicRamTable, ProjValue, Tower, TowerKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PyramidError {
    #[error("incompatible chain at position {position}")]
    IncompatibleChain { position: usize },
    #[error("wild step: characteristic divides a ramification index")]
    WildStep,
    #[error("arguments outside the valid range: {0}")]
    BadRange(String),
    #[error("operation requires the gst2 family: {0}")]
    UnsupportedTower(&'static str),
    #[error("stratum ramification index {found} differs from the uniform {expected}")]
    UnexpectedNonuniform { expected: u64, found: u64 },
}

/// A coordinate-value trace `(x_0(Q), ..., x_n(Q))` of a place of `F_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceChain {
    values: Vec<ProjValue>,
}

impl PlaceChain {
    pub fn new(values: Vec<ProjValue>) -> Self {
        assert!(!values.is_empty(), "a chain holds at least x_0");
        PlaceChain { values }
    }

    pub fn from_fes(values: Vec<Fe>) -> Self {
        Self::new(values.into_iter().map(ProjValue::Finite).collect())
    }

    /// Level `n`: the chain describes a place of `F_n`.
    pub fn level(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[ProjValue] {
        &self.values
    }
}

/// The ramification pyramid of one chain; entries default to 1.
#[derive(Debug, Clone)]
pub struct PyramidMatrix {
    n: usize,
    r: Vec<Vec<u64>>,
    l: Vec<Vec<u64>>,
}

impl PyramidMatrix {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn r(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < j && j <= self.n);
        self.r[i][j]
    }

    pub fn l(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < j && j <= self.n);
        self.l[i][j]
    }

    /// `e` of the full place over its trace in `K(x_0)`:
    /// the product of the `r[0][s]` along the top edge.
    pub fn e_over_first(&self) -> u64 {
        (1..=self.n).map(|s| self.r[0][s]).product()
    }

    /// `e` of the full place over its trace in the single-variable field
    /// `K(x_j)`: climb `K(x_j) .. K(x_0..x_j)` on the left, then extend
    /// right up to `K(x_0..x_n)`.
    pub fn e_over_pivot(&self, j: usize) -> u64 {
        debug_assert!(j <= self.n);
        let left: u64 = (0..j).map(|s| self.l[s][j]).product();
        let right: u64 = (j + 1..=self.n).map(|s| self.r[0][s]).product();
        left * right
    }
}

fn chain_steps_compatible(tower: &Tower, chain: &PlaceChain) -> Result<(), PyramidError> {
    let m = tower.exponent();
    let ctx = tower.ctx();
    for (pos, pair) in chain.values().windows(2).enumerate() {
        let ok = match (&pair[0], &pair[1]) {
            (ProjValue::Infinity, next) => next.is_infinity(),
            // u is a polynomial: finite values never map to infinity
            (ProjValue::Finite(_), ProjValue::Infinity) => false,
            (v @ ProjValue::Finite(_), ProjValue::Finite(y)) => {
                let (u_val, _) = tower.rhs_val(v);
                ctx.pow(y, m) == *u_val.finite().expect("finite image")
            }
        };
        if !ok {
            return Err(PyramidError::IncompatibleChain { position: pos + 1 });
        }
    }
    Ok(())
}

/// Build the pyramid of a compatible chain.
pub fn pyramid(tower: &Tower, chain: &PlaceChain) -> Result<PyramidMatrix, PyramidError> {
    let table = tower.basic_table();
    pyramid_with_table(tower, &table, chain)
}

/// As [`pyramid`], reusing a precomputed one-step table.
pub fn pyramid_with_table(
    tower: &Tower,
    table: &BasicRamTable,
    chain: &PlaceChain,
) -> Result<PyramidMatrix, PyramidError> {
    chain_steps_compatible(tower, chain)?;
    let n = chain.level();
    let vals = chain.values();
    let p = tower.characteristic();
    let mut r = vec![vec![1u64; n + 1]; n + 1];
    let mut l = vec![vec![1u64; n + 1]; n + 1];
    for i in 0..n {
        r[i][i + 1] = table.e_over_x(&vals[i]);
        l[i][i + 1] = table.e_over_y(&vals[i + 1]);
        if r[i][i + 1].is_multiple_of(p) || l[i][i + 1].is_multiple_of(p) {
            return Err(PyramidError::WildStep);
        }
    }
    for span in 2..=n {
        for i in 0..=(n - span) {
            let j = i + span;
            let a = l[i][j - 1];
            let b = r[i + 1][j];
            let lcm = a.lcm(&b);
            r[i][j] = lcm / a;
            l[i][j] = lcm / b;
        }
    }
    Ok(PyramidMatrix { n, r, l })
}

/// Ramification index picked up by the place of `F_n` in `F_{n+1}`.
///
/// Extending the chain by one coordinate adds the base entry
/// `r[n][n+1] = e_x(v_n)` and the recursion never consults the new
/// `l`-column, so the index is independent of which root continues the
/// chain.
pub fn extension_index(tower: &Tower, pyr: &PyramidMatrix, chain: &PlaceChain) -> u64 {
    let n = pyr.level();
    let table = tower.basic_table();
    let mut acc = table.e_over_x(&chain.values()[n]);
    for i in (0..n).rev() {
        let a = pyr.l(i, n);
        acc = a.lcm(&acc) / a;
    }
    acc
}

/// Ramification verdict for one step of the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RamificationVerdict {
    Unramified,
    Ramified { index: u64 },
}

/// Closed-form one-step verdict for a place of `F_n` that is a zero of
/// `x_{t+1} - a` with `a` in `F_q^*` minus `-1` (or, for `t = -1`, lies
/// in the totally ramified column over a base zero of `x_0 - a`):
/// unramified in `F_{n+1}` exactly when `n < 2t + 2`, ramified of index
/// `q - 1` otherwise.
pub fn stratum_ramifies(q: u64, t: i64, n: i64) -> Result<RamificationVerdict, PyramidError> {
    if t < -1 || n <= t {
        return Err(PyramidError::BadRange(format!("t = {t}, n = {n}")));
    }
    if n < 2 * t + 2 {
        Ok(RamificationVerdict::Unramified)
    } else {
        Ok(RamificationVerdict::Ramified { index: q - 1 })
    }
}

/// `e(Q | Q_{t+1}) = (q-1)^(n-t-1)`: the index of a stratum place over
/// its trace in the pivot field `K(x_{t+1})`.
pub fn stratum_pivot_index<T: Scalar>(q: u64, n: u64, t: u64) -> Result<T, PyramidError> {
    if n < 2 || t > n / 2 - 1 {
        return Err(PyramidError::BadRange(format!("t = {t}, n = {n}")));
    }
    let base = crate::scalar::from_u64::<T>(q - 1);
    Ok(pow_u(&base, n - t - 1))
}

/// A class of places of `F_n` sharing a trace pattern, all ramified in
/// `F_{n+1}` with the same index.
///
/// `t = -1` encodes the totally ramified columns over the base zeroes of
/// `x_0 - alpha` (`alpha` in `F_q` minus `-1`, one rational place each).
/// For `t >= 0` the places are the zeroes of `x_{t+1} - alpha` with
/// `alpha` in `F_q^*` minus `-1`, preceded by `t + 1` coordinates at
/// `-1` and followed by zeroes.
#[derive(Debug, Clone)]
pub struct RamifiedStratum {
    pub t: i64,
    pub alpha: Fe,
    pub common_e: u64,
    pub aggregate_degree: crate::Int,
    pub pivot_index: crate::Int,
}

impl RamifiedStratum {
    /// The value trace every place of this stratum shares at level `n`.
    pub fn witness_chain(&self, tower: &Tower, n: usize) -> PlaceChain {
        let ctx = tower.ctx();
        let mut values = Vec::with_capacity(n + 1);
        if self.t < 0 {
            values.push(ProjValue::Finite(self.alpha.clone()));
        } else {
            let minus_one = ctx.from_int(-1);
            for _ in 0..=(self.t as usize) {
                values.push(ProjValue::Finite(minus_one.clone()));
            }
            values.push(ProjValue::Finite(self.alpha.clone()));
        }
        while values.len() <= n {
            values.push(ProjValue::Finite(ctx.zero()));
        }
        PlaceChain::new(values)
    }
}

/// Enumerate the ramified strata of `F_n -> F_{n+1}` for the plain
/// `gst2` tower: `q - 1` totally ramified columns (aggregate degree 1)
/// plus, for each `t` below `floor(n/2)` and each `alpha` in `F_q^*`
/// minus `-1`, a stratum of aggregate degree `(q-1)^(t+1)`. Strata the
/// one-step rule declares unramified are excluded by the `t` range
/// itself. Order: `t` ascending, then `alpha` in field enumeration
/// order.
pub fn classify(tower: &Tower, n: u64) -> Result<Vec<RamifiedStratum>, PyramidError> {
    if tower.kind() != TowerKind::Gst2 {
        return Err(PyramidError::UnsupportedTower(
            "the closed-form stratum list is specific to the plain gst2 tower",
        ));
    }
    let q = tower.q();
    let ctx = tower.ctx();
    let minus_one = ctx.from_int(-1);
    let qm1 = crate::scalar::from_u64::<crate::Int>(q - 1);
    let mut out = Vec::new();
    for alpha in tower.base_subfield() {
        if alpha == minus_one {
            continue;
        }
        out.push(RamifiedStratum {
            t: -1,
            alpha,
            common_e: q - 1,
            aggregate_degree: crate::Int::from(1),
            pivot_index: pow_u(&qm1, n),
        });
    }
    for t in 0..(n / 2) {
        for alpha in tower.base_subfield() {
            if alpha.is_zero() || alpha == minus_one {
                continue;
            }
            out.push(RamifiedStratum {
                t: t as i64,
                alpha,
                common_e: q - 1,
                aggregate_degree: pow_u(&qm1, t + 1),
                pivot_index: pow_u(&qm1, n - t - 1),
            });
        }
    }
    Ok(out)
}

/// One ramified chain found by the generic engine.
#[derive(Debug, Clone)]
pub struct RamifiedChain {
    pub chain: PlaceChain,
    /// Index picked up in `F_{n+1}` by every place on the chain.
    pub step_index: u64,
    /// Sum of the degrees of the places of `F_n` sharing the chain.
    pub aggregate_degree: u128,
}

/// Enumerate every chain of `F_n` that ramifies in `F_{n+1}`, from first
/// principles, for towers with exponent `q - 1` (the whole `gst2` family
/// and `gst1` in characteristic two).
///
/// Ramified chains of these towers have all coordinates in `F_q`: the
/// extension step ramifies only when `x_n` lands on a zero of `u`, and
/// walking such a chain backwards stays inside `F_q` because
/// `mu_{q-1} = F_q^*`. Aggregate degrees come from the fundamental
/// identity over a pivot coordinate `x_j` that forces the whole chain:
/// all of `[F_n : K(x_j)] = (q-1)^n` is spent on this one trace, so the
/// degree sum is `(q-1)^n / e(Q | K(x_j))`.
pub fn ramified_chains(tower: &Tower, n: u64) -> Result<Vec<RamifiedChain>, PyramidError> {
    if tower.exponent() != tower.q() - 1 {
        return Err(PyramidError::UnsupportedTower(
            "chain enumeration relies on mu_m = F_q^*, which needs m = q - 1",
        ));
    }
    let ctx = tower.ctx();
    let m = tower.exponent();
    let table = tower.basic_table();
    let subfield = tower.base_subfield();

    // successors within F_q
    let succ = |v: &Fe| -> Vec<Fe> {
        let (u_val, _) = tower.rhs_val(&ProjValue::Finite(v.clone()));
        let target = u_val.finite().expect("finite image").clone();
        subfield
            .iter()
            .filter(|y| ctx.pow(y, m) == target)
            .cloned()
            .collect()
    };

    let mut chains: Vec<Vec<Fe>> = subfield.iter().map(|v| vec![v.clone()]).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &chains {
            for y in succ(c.last().unwrap()) {
                let mut ext = c.clone();
                ext.push(y);
                next.push(ext);
            }
        }
        chains = next;
    }

    let one = ctx.one();
    let mut out = Vec::new();
    for values in chains {
        let chain = PlaceChain::from_fes(values.clone());
        let pyr = pyramid_with_table(tower, &table, &chain)?;
        let step_index = extension_index(tower, &pyr, &chain);
        if step_index == 1 {
            continue;
        }
        // pivot position: forward of it every value is a locus (successor
        // forced to 0 over the algebraic closure), backward of it every
        // value lies in mu_m (predecessor forced to -s over the closure)
        let n_us = n as usize;
        let pivot = (0..=n_us)
            .find(|&j| {
                let fwd = (j..n_us).all(|i| tower.is_locus(&ProjValue::Finite(values[i].clone())));
                let bwd = (1..=j).all(|i| ctx.pow(&values[i], m) == one);
                fwd && bwd
            })
            .ok_or_else(|| {
                PyramidError::BadRange("ramified chain without a forcing pivot".into())
            })?;
        let total = (m as u128)
            .checked_pow(n as u32)
            .ok_or_else(|| PyramidError::BadRange("level too deep for 128-bit degrees".into()))?;
        let e_pivot = pyr.e_over_pivot(pivot) as u128;
        assert_eq!(
            total % e_pivot,
            0,
            "pivot index must divide the window degree"
        );
        out.push(RamifiedChain {
            chain,
            step_index,
            aggregate_degree: total / e_pivot,
        });
    }
    Ok(out)
}

/// `deg Diff(F_{n+1}/F_n)` computed by the chain engine: every step is
/// tame, so each ramified place contributes `e - 1` times its degree.
pub fn engine_different_degree(tower: &Tower, n: u64) -> Result<u128, PyramidError> {
    let mut total = 0u128;
    for rc in ramified_chains(tower, n)? {
        total += (rc.step_index as u128 - 1) * rc.aggregate_degree;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{Tower, TowerKind};

    fn gst2(q: u64) -> Tower {
        Tower::new(TowerKind::Gst2, q, None).unwrap()
    }

    fn chain_of_ints(tower: &Tower, vals: &[i64]) -> PlaceChain {
        PlaceChain::from_fes(vals.iter().map(|&v| tower.ctx().from_int(v)).collect())
    }

    #[test]
    fn base_layer_q3_zero_chain() {
        let t = gst2(3);
        let chain = chain_of_ints(&t, &[0, 0]);
        let pyr = pyramid(&t, &chain).unwrap();
        assert_eq!(pyr.r(0, 1), 2);
        assert_eq!(pyr.l(0, 1), 1);
    }

    #[test]
    fn totally_ramified_column_q3() {
        let t = gst2(3);
        let chain = chain_of_ints(&t, &[0, 0, 0]);
        let pyr = pyramid(&t, &chain).unwrap();
        assert_eq!(pyr.e_over_first(), 4);
    }

    #[test]
    fn pivot_trace_index_on_mixed_chain() {
        // chain (-1, 1, 0): top chain unramified over F_1 (the t = 0 place
        // ramifies only from level 2 on), while the index over the pivot
        // field K(x_1) is (q-1)^(n-t-1) = 2
        let t = gst2(3);
        let chain = chain_of_ints(&t, &[-1, 1, 0]);
        let pyr = pyramid(&t, &chain).unwrap();
        assert_eq!(pyr.r(0, 1), 1);
        assert_eq!(pyr.r(1, 2), 2);
        assert_eq!(pyr.r(0, 2), 1);
        assert_eq!(pyr.e_over_pivot(1), 2);
    }

    #[test]
    fn incompatible_chains_rejected() {
        let t = gst2(3);
        let ctx = t.ctx();
        // 2^2 = 1 != u(0) = 0
        let bad = PlaceChain::from_fes(vec![ctx.zero(), ctx.from_int(-1)]);
        assert_eq!(
            pyramid(&t, &bad).unwrap_err(),
            PyramidError::IncompatibleChain { position: 1 }
        );
        // infinity after a finite coordinate cannot occur
        let bad = PlaceChain::new(vec![
            ProjValue::Finite(ctx.from_int(-1)),
            ProjValue::Infinity,
        ]);
        assert_eq!(
            pyramid(&t, &bad).unwrap_err(),
            PyramidError::IncompatibleChain { position: 1 }
        );
    }

    #[test]
    fn abhyankar_consistency_identity() {
        for q in [3u64, 5] {
            let t = gst2(q);
            for rc in ramified_chains(&t, 6).unwrap() {
                let pyr = pyramid(&t, &rc.chain).unwrap();
                let n = pyr.level();
                for span in 2..=n {
                    for i in 0..=(n - span) {
                        let j = i + span;
                        let a = pyr.l(i, j - 1);
                        let b = pyr.r(i + 1, j);
                        let lcm = a.lcm(&b);
                        assert_eq!(pyr.r(i, j) * a, lcm);
                        assert_eq!(pyr.l(i, j) * b, lcm);
                    }
                }
            }
        }
    }

    #[test]
    fn total_ramification_of_base_zero_columns() {
        // chains (alpha, 0, ..., 0) are totally ramified at every level
        for q in [3u64, 4, 5, 7, 8, 9] {
            let t = gst2(q);
            let ctx = t.ctx();
            let minus_one = ctx.from_int(-1);
            for alpha in t.base_subfield() {
                if alpha == minus_one {
                    continue;
                }
                for n in 1..=(if q <= 5 { 8 } else { 5 }) {
                    let mut vals = vec![alpha.clone()];
                    vals.extend(std::iter::repeat_n(ctx.zero(), n));
                    let chain = PlaceChain::from_fes(vals);
                    let pyr = pyramid(&t, &chain).unwrap();
                    assert_eq!(pyr.e_over_first(), (q - 1).pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn engine_agrees_with_step_rule() {
        // stratum chains (-1)^(t+1), alpha, 0...: engine-computed extension
        // index must match the closed-form verdict
        for q in [3u64, 5] {
            let t = gst2(q);
            let ctx = t.ctx();
            let alpha = ctx.one();
            for tt in 0i64..=3 {
                for n in (tt + 1)..=8 {
                    let mut vals = Vec::new();
                    for _ in 0..=(tt as usize) {
                        vals.push(ctx.from_int(-1));
                    }
                    vals.push(alpha.clone());
                    while vals.len() <= n as usize {
                        vals.push(ctx.zero());
                    }
                    let chain = PlaceChain::from_fes(vals);
                    let pyr = pyramid(&t, &chain).unwrap();
                    let engine = extension_index(&t, &pyr, &chain);
                    let verdict = stratum_ramifies(q, tt, n).unwrap();
                    match verdict {
                        RamificationVerdict::Unramified => {
                            assert_eq!(engine, 1, "q={q} t={tt} n={n}")
                        }
                        RamificationVerdict::Ramified { index } => {
                            assert_eq!(engine, index, "q={q} t={tt} n={n}")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn step_rule_examples() {
        assert_eq!(
            stratum_ramifies(3, 0, 2).unwrap(),
            RamificationVerdict::Ramified { index: 2 }
        );
        assert_eq!(
            stratum_ramifies(3, 1, 3).unwrap(),
            RamificationVerdict::Unramified
        );
        assert_eq!(
            stratum_ramifies(3, -1, 0).unwrap(),
            RamificationVerdict::Ramified { index: 2 }
        );
        assert!(matches!(
            stratum_ramifies(3, -2, 0),
            Err(PyramidError::BadRange(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let t3 = gst2(3);
        let strata = classify(&t3, 0).unwrap();
        assert_eq!(strata.len(), 2);
        assert!(strata.iter().all(|s| s.t == -1));

        let strata = classify(&t3, 2).unwrap();
        assert_eq!(strata.len(), 3);
        let s = strata.iter().find(|s| s.t == 0).unwrap();
        assert_eq!(s.alpha, t3.ctx().one());
        assert_eq!(s.aggregate_degree, crate::Int::from(2));
        assert_eq!(s.common_e, 2);

        let t5 = gst2(5);
        let strata = classify(&t5, 5).unwrap();
        assert_eq!(strata.len(), 4 + 6);
        let degrees: Vec<crate::Int> = strata
            .iter()
            .filter(|s| s.t >= 0)
            .map(|s| s.aggregate_degree.clone())
            .collect();
        assert_eq!(
            degrees
                .iter()
                .filter(|d| **d == crate::Int::from(4))
                .count(),
            3
        );
        assert_eq!(
            degrees
                .iter()
                .filter(|d| **d == crate::Int::from(16))
                .count(),
            3
        );
    }

    #[test]
    fn classify_ordering_is_deterministic() {
        let t = gst2(5);
        let strata = classify(&t, 6).unwrap();
        let mut last_t = -2i64;
        let mut last_alpha = 0u64;
        for s in &strata {
            if s.t != last_t {
                assert!(s.t > last_t);
                last_t = s.t;
                last_alpha = 0;
            } else {
                let idx = t.ctx().index_of(&s.alpha);
                assert!(idx > last_alpha);
                last_alpha = idx;
            }
        }
    }

    #[test]
    fn pivot_index_consistency() {
        // aggregate degree times pivot index exhausts [F_n : K(x_{t+1})]
        for q in [3u64, 5] {
            let t = gst2(q);
            for n in 2..=8u64 {
                for s in classify(&t, n).unwrap() {
                    if s.t < 0 {
                        continue;
                    }
                    let lhs = &s.aggregate_degree * &s.pivot_index;
                    let expect = pow_u(&crate::Int::from(q - 1), n);
                    assert_eq!(lhs, expect);
                    let formula: crate::Int = stratum_pivot_index(q, n, s.t as u64).unwrap();
                    assert_eq!(formula, s.pivot_index);
                }
            }
        }
    }

    #[test]
    fn pivot_index_examples() {
        assert_eq!(stratum_pivot_index::<i128>(3, 2, 0).unwrap(), 2);
        assert_eq!(stratum_pivot_index::<i128>(5, 4, 1).unwrap(), 16);
        assert_eq!(stratum_pivot_index::<i128>(3, 4, 1).unwrap(), 4);
        assert!(stratum_pivot_index::<i128>(3, 3, 1).is_err());
    }

    #[test]
    fn engine_chains_match_classification() {
        // every engine chain at level n is either a totally ramified column
        // or a stratum witness, with matching aggregate degree and index;
        // q = 4 and 8 exercise characteristic two, where -1 = 1
        for q in [3u64, 4, 5, 8, 9] {
            let t = gst2(q);
            let max_n = if q <= 5 { 6 } else { 4 };
            for n in 1..=max_n {
                let chains = ramified_chains(&t, n).unwrap();
                let strata = classify(&t, n).unwrap();
                // ramified strata of F_n -> F_{n+1}: counts must agree
                assert_eq!(chains.len(), strata.len(), "q={q} n={n}");
                for s in &strata {
                    let witness = s.witness_chain(&t, n as usize);
                    let found = chains
                        .iter()
                        .find(|rc| rc.chain == witness)
                        .unwrap_or_else(|| panic!("missing witness q={q} n={n} t={}", s.t));
                    assert_eq!(found.step_index, s.common_e);
                    assert_eq!(crate::Int::from(found.aggregate_degree), s.aggregate_degree);
                }
            }
        }
    }

    #[test]
    fn engine_rejects_gst1_with_proper_exponent() {
        // q = 9 has m = 4 < q - 1, so the mu_m = F_q^* argument fails
        let t = Tower::new(TowerKind::Gst1, 9, None).unwrap();
        assert!(matches!(
            ramified_chains(&t, 2),
            Err(PyramidError::UnsupportedTower(_))
        ));
        // in characteristic two m = q - 1 and the engine applies
        let t4 = Tower::new(TowerKind::Gst1, 4, None).unwrap();
        assert_eq!(engine_different_degree(&t4, 0).unwrap(), 6);
        assert_eq!(engine_different_degree(&t4, 1).unwrap(), 6);
        assert_eq!(engine_different_degree(&t4, 2).unwrap(), 18);
    }

    #[test]
    fn shifted_towers_share_the_different_degrees() {
        // translation by a nonzero F_q shift relabels the ramification
        // loci without changing any index or degree, so the engine must
        // reproduce the plain tower's different degrees at every shift
        for q in [3u64, 4, 5] {
            let plain = gst2(q);
            for shift_index in 1..q {
                let shifted = Tower::new(TowerKind::Gst2Shifted, q, Some(shift_index)).unwrap();
                for n in 0..=6u64 {
                    let a = engine_different_degree(&plain, n).unwrap();
                    let b = engine_different_degree(&shifted, n).unwrap();
                    assert_eq!(a, b, "q={q} shift#{shift_index} n={n}");
                }
            }
        }
    }
}
