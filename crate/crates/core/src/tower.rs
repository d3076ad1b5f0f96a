//! Recursive Kummer towers `x_{i+1}^m = 1 - (x_i + s)^m`.
//!
//! Three tower families are supported, all tame:
//!
//! * `Gst2` — exponent `m = q - 1`, shift `s = 1`, constant field
//!   `F_{q^2}`: the Garcia-Stichtenoth-Thomas tower
//!   `x_{i+1}^{q-1} + (x_i + 1)^{q-1} = 1` read over the quadratic
//!   extension.
//! * `Gst1` — exponent `m = (q-1)/(p-1)`, shift `1`, constant field
//!   `F_q` itself (requires `q = p^e` with `e > 1`).
//! * `Gst2Shifted` — like `Gst2` but with the recursion
//!   `y^{q-1} = 1 - (x + s)^{q-1}` for a nonzero shift `s` in `F_q`;
//!   `s = 1` reproduces `Gst2` exactly.
//!
//! The basic one-step ramification table is derived from first
//! principles with the Kummer rule `e(v) = m / gcd(m, ord_v(u))` rather
//! than transcribed, so the same engine serves every family; the known
//! closed table for `Gst2` becomes a test oracle.

use thiserror::Error;

use crate::gf::{Fe, FieldCtx, GfError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("bad q for {kind:?}: {reason}")]
    BadQ { kind: TowerKind, reason: String },
    #[error("tower would be wildly ramified: p = {p} divides m = {m}")]
    WildTower { p: u64, m: u64 },
    #[error("shift must be a nonzero element of F_q")]
    BadShift,
    #[error("stepping through a ramification locus; route through the pyramid instead")]
    RamifiedStep,
    #[error(transparent)]
    Gf(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TowerKind {
    Gst2,
    Gst1,
    Gst2Shifted,
}

/// A coordinate value on the projective line over the constant field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjValue {
    Finite(Fe),
    Infinity,
}

impl ProjValue {
    pub fn finite(&self) -> Option<&Fe> {
        match self {
            ProjValue::Finite(a) => Some(a),
            ProjValue::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjValue::Infinity)
    }
}

/// One-step ramification data for `K(x, y) / K(x)` and `K(x, y) / K(y)`:
/// only places with index greater than one are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicRamTable {
    pub over_x: Vec<(ProjValue, u64)>,
    pub over_y: Vec<(ProjValue, u64)>,
}

impl BasicRamTable {
    pub fn e_over_x(&self, v: &ProjValue) -> u64 {
        self.over_x
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(1)
    }

    pub fn e_over_y(&self, v: &ProjValue) -> u64 {
        self.over_y
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(1)
    }
}

/// A fully validated tower specification plus its constant-field context.
#[derive(Debug, Clone)]
pub struct Tower {
    kind: TowerKind,
    q: u64,
    p: u64,
    e: u32,
    m: u64,
    /// Shift `s` as an element of the constant field (always inside the
    /// `F_q` subfield); `1` except for `Gst2Shifted`.
    shift: Fe,
    /// Position of the shift in the `F_q` subfield enumeration; lets a
    /// probe field over a different modulus rebuild an equivalent shift.
    shift_index: u64,
    ctx: FieldCtx,
    const_degree: u32,
}

/// Factor `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl Tower {
    /// Build a tower with the default field-order cap.
    pub fn new(kind: TowerKind, q: u64, shift_index: Option<u64>) -> Result<Self, TowerError> {
        Self::with_cap(kind, q, shift_index, crate::gf::DEFAULT_ORDER_CAP)
    }

    /// Build a tower; `shift_index` (for `Gst2Shifted`) selects the shift
    /// by its position in the enumeration of the `F_q` subfield.
    pub fn with_cap(
        kind: TowerKind,
        q: u64,
        shift_index: Option<u64>,
        cap: u64,
    ) -> Result<Self, TowerError> {
        let (p, e) = prime_power(q).ok_or_else(|| TowerError::BadQ {
            kind,
            reason: format!("{q} is not a prime power"),
        })?;
        let (m, ctx, const_degree) = match kind {
            TowerKind::Gst2 | TowerKind::Gst2Shifted => {
                if q <= 2 {
                    return Err(TowerError::BadQ {
                        kind,
                        reason: "q must exceed two".into(),
                    });
                }
                (q - 1, FieldCtx::with_cap(p, 2 * e, cap)?, 2)
            }
            TowerKind::Gst1 => {
                if e < 2 {
                    return Err(TowerError::BadQ {
                        kind,
                        reason: "q must be a proper prime power".into(),
                    });
                }
                ((q - 1) / (p - 1), FieldCtx::with_cap(p, e, cap)?, 1)
            }
        };
        if m % p == 0 {
            return Err(TowerError::WildTower { p, m });
        }
        // Kummer condition: m divides Q - 1 for the constant field F_Q
        debug_assert_eq!((ctx.order() - 1) % m, 0);

        let (shift, shift_index) = match kind {
            TowerKind::Gst2Shifted => {
                let subfield = ctx.subfield_elements(e)?;
                let idx = shift_index.unwrap_or(1);
                let s = subfield
                    .get(idx as usize)
                    .cloned()
                    .ok_or(TowerError::BadShift)?;
                if s.is_zero() {
                    return Err(TowerError::BadShift);
                }
                (s, idx)
            }
            _ => (ctx.one(), 1),
        };
        Ok(Tower {
            kind,
            q,
            p,
            e,
            m,
            shift,
            shift_index,
            ctx,
            const_degree,
        })
    }

    pub fn kind(&self) -> TowerKind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Kummer exponent of every step.
    pub fn exponent(&self) -> u64 {
        self.m
    }

    pub fn shift(&self) -> &Fe {
        &self.shift
    }

    /// Index of the shift in the `F_q` subfield enumeration.
    pub fn shift_index(&self) -> u64 {
        self.shift_index
    }

    /// The constant field the tower is read over.
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// 2 when the constant field is `F_{q^2}`, 1 when it is `F_q`.
    pub fn constant_field_degree(&self) -> u32 {
        self.const_degree
    }

    /// Extension degree such that `p^d = q` inside the constant field.
    pub fn base_subfield_degree(&self) -> u32 {
        self.e
    }

    /// Elements of the `F_q` subfield of the constant field, in
    /// enumeration order.
    pub fn base_subfield(&self) -> Vec<Fe> {
        self.ctx
            .subfield_elements(self.e)
            .expect("e divides the constant-field degree")
    }

    /// `u(v) = 1 - (v + s)^m` together with the order of `u` at `v` as a
    /// function of `x`: `+1` at each of the `m` simple zeroes, `-m` at
    /// infinity, `0` elsewhere.
    pub fn rhs_val(&self, v: &ProjValue) -> (ProjValue, i64) {
        match v {
            ProjValue::Infinity => (ProjValue::Infinity, -(self.m as i64)),
            ProjValue::Finite(a) => {
                let shifted = self.ctx.add(a, &self.shift);
                let val = self
                    .ctx
                    .sub(&self.ctx.one(), &self.ctx.pow(&shifted, self.m));
                let ord = if val.is_zero() { 1 } else { 0 };
                (ProjValue::Finite(val), ord)
            }
        }
    }

    /// True iff `v` is a zero of `u`, i.e. a ramification locus on the
    /// `x` side.
    pub fn is_locus(&self, v: &ProjValue) -> bool {
        match v {
            ProjValue::Infinity => false,
            ProjValue::Finite(_) => self.rhs_val(v).1 > 0,
        }
    }

    /// One-step table from the Kummer rule on both sides of the defining
    /// relation. For `Gst2` this must reproduce the classical sets:
    /// zeroes of `x - a` for `a` in `F_q` minus `-1`, and zeroes of
    /// `y - a` for `a` in `F_q^*`, each of index `q - 1`.
    pub fn basic_table(&self) -> BasicRamTable {
        let mut over_x = Vec::new();
        let mut over_y = Vec::new();
        for a in self.ctx.elements() {
            let v = ProjValue::Finite(a);
            let (_, ord) = self.rhs_val(&v);
            let e = self.m / num_integer::gcd(self.m, ord.unsigned_abs());
            if e > 1 {
                over_x.push((v.clone(), e));
            }
            // y side: rewrite as (x + s)^m = 1 - y^m and apply the same rule
            let (_, ord_y) = self.rhs_y_ord(&v);
            let ey = self.m / num_integer::gcd(self.m, ord_y.unsigned_abs());
            if ey > 1 {
                over_y.push((v, ey));
            }
        }
        // infinity on either side: order -m, hence gcd m and index 1
        BasicRamTable { over_x, over_y }
    }

    /// Order of `w(y) = 1 - y^m` at a finite `y` value.
    fn rhs_y_ord(&self, v: &ProjValue) -> (ProjValue, i64) {
        match v {
            ProjValue::Infinity => (ProjValue::Infinity, -(self.m as i64)),
            ProjValue::Finite(a) => {
                let val = self.ctx.sub(&self.ctx.one(), &self.ctx.pow(a, self.m));
                let ord = if val.is_zero() { 1 } else { 0 };
                (ProjValue::Finite(val), ord)
            }
        }
    }

    /// Next-coordinate values over the constant field, as
    /// `(value, multiplicity)` pairs.
    ///
    /// At a finite non-locus `v` these are the `m`-th roots of `u(v)`,
    /// each of multiplicity one (possibly none). At infinity the fiber
    /// stays at infinity with multiplicity `#{z : z^m = -1}`: the place
    /// count above the all-infinity chain grows by that factor per step
    /// and the coordinate chain carries no datum distinguishing the
    /// places. Stepping through a locus is refused; ramified chains are
    /// the pyramid's business.
    pub fn step_roots(&self, v: &ProjValue) -> Result<Vec<(ProjValue, u64)>, TowerError> {
        if self.is_locus(v) {
            return Err(TowerError::RamifiedStep);
        }
        match v {
            ProjValue::Infinity => {
                let minus_one = self.ctx.from_int(-1);
                let mult = self.ctx.root_count(&minus_one, self.m);
                Ok(vec![(ProjValue::Infinity, mult)])
            }
            ProjValue::Finite(_) => {
                let (val, _) = self.rhs_val(v);
                let target = val.finite().expect("u maps finite values to finite values");
                Ok(self
                    .ctx
                    .roots_of(target, self.m)
                    .into_iter()
                    .map(|y| (ProjValue::Finite(y), 1))
                    .collect())
            }
        }
    }
}
