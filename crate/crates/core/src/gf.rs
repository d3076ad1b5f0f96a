//! Exact arithmetic in finite fields `F_{p^k}`.
//!
//! A [`FieldCtx`] owns the field: characteristic `p`, extension degree
//! `k`, and a deterministic irreducible modulus. Elements are dense
//! coefficient vectors reduced mod `p`. The modulus is the
//! lexicographically smallest monic irreducible of degree `k` over
//! `F_p`, comparing coefficient sequences low-degree-first, so two
//! contexts built from the same `(p, k)` are identical in every
//! observable way.
//!
//! Element enumeration order is fixed: the element with index `i` has
//! coefficient `c_j = (i / p^j) % p`, i.e. the index is the base-`p`
//! encoding of the coefficient vector with the constant term least
//! significant. For prime fields the index is the natural residue.

use thiserror::Error;

/// Default cap on the field order; constructions above it are refused
/// unless the caller raises the cap explicitly.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {order} exceeds the cap {cap}")]
    OrderTooLarge { order: u128, cap: u64 },
    #[error("element belongs to F_{{{found_p}^{found_k}}}, expected F_{{{want_p}^{want_k}}}")]
    ContextMismatch {
        want_p: u64,
        want_k: u32,
        found_p: u64,
        found_k: u32,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide the extension degree {k}")]
    NonDivisorDegree { d: u32, k: u32 },
    #[error("-1/2 is undefined in characteristic two")]
    EvenCharacteristic,
}

/// An element of a finite field: `k` residues mod `p`, constant term first.
///
/// Elements remember their `(p, k)` so a context can refuse foreign
/// elements; since moduli are deterministic, equal `(p, k)` means the
/// same field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fe {
    p: u64,
    k: u32,
    c: Vec<u64>,
}

impl Fe {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Coefficient of degree `j`, zero beyond the stored length.
    pub fn coeff(&self, j: usize) -> u64 {
        self.c.get(j).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
}

/// Immutable description of `F_{p^k}`; all operations are pure.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    k: u32,
    order: u64,
    /// Monic, degree `k`, length `k + 1`, constant term first.
    modulus: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// ---- dense polynomial helpers over F_p (constant term first) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_deg(v: &[u64]) -> usize {
    let mut d = v.len() - 1;
    while d > 0 && v[d] == 0 {
        d -= 1;
    }
    d
}

fn poly_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = poly_deg(m);
    let lead_inv = mod_inv(m[dm], p);
    let mut r = a.to_vec();
    while !poly_is_zero(&r) && poly_deg(&r) >= dm {
        let dr = poly_deg(&r);
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (j, &mj) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * mj % p;
            r[shift + j] = (r[shift + j] + p - sub) % p;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^reps) mod m`, by repeated exponentiation by `p`.
fn frobenius_power_of_x(m: &[u64], p: u64, reps: u32) -> Vec<u64> {
    let mut acc = vec![0, 1]; // x
    for _ in 0..reps {
        acc = poly_powmod(&acc, p, m, p);
    }
    acc
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &sq, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            sq = poly_rem(&poly_mul(&sq, &sq, p), m, p);
        }
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// Degree-`k` monic `f` is irreducible over `F_p` iff it shares no factor
/// with `x^(p^i) - x` for any `i <= k/2`: those products sweep every
/// irreducible of degree `<= k/2`, and a reducible degree-`k` polynomial
/// must have a factor in that range.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = poly_deg(f);
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    for i in 1..=(k as u32 / 2) {
        let xpi = frobenius_power_of_x(f, p, i);
        // x^(p^i) - x mod f
        let mut diff = xpi;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if poly_deg(&g) > 0 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// Build `F_{p^k}` with the default order cap.
    pub fn new(p: u64, k: u32) -> Result<Self, GfError> {
        Self::with_cap(p, k, DEFAULT_ORDER_CAP)
    }

    /// Build `F_{p^k}` allowing orders up to `cap`.
    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if k == 0 {
            return Err(GfError::DegreeZero);
        }
        let mut order: u128 = 1;
        for _ in 0..k {
            order *= p as u128;
            if order > cap as u128 {
                return Err(GfError::OrderTooLarge { order, cap });
            }
        }
        let modulus = Self::smallest_irreducible(p, k);
        Ok(FieldCtx {
            p,
            k,
            order: order as u64,
            modulus,
        })
    }

    /// Lexicographically smallest monic irreducible of degree `k`,
    /// coefficient sequences compared low-degree-first.
    fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
        let k = k as usize;
        let mut coeffs = vec![0u64; k]; // c_0 .. c_{k-1}
        loop {
            let mut f = coeffs.clone();
            f.push(1); // monic x^k
            if is_irreducible(&f, p) {
                return f;
            }
            // increment the sequence with c_{k-1} as the fastest digit,
            // so c_0 is compared first and candidates arrive in lex order
            let mut pos = k;
            loop {
                debug_assert!(pos > 0, "no irreducible of degree {k} found");
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < p {
                    break;
                }
                coeffs[pos] = 0;
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Error unless `a` belongs to this context.
    pub fn ensure_member(&self, a: &Fe) -> Result<(), GfError> {
        if a.p != self.p || a.k != self.k {
            return Err(GfError::ContextMismatch {
                want_p: self.p,
                want_k: self.k,
                found_p: a.p,
                found_k: a.k,
            });
        }
        Ok(())
    }

    fn member(&self, a: &Fe) {
        if let Err(e) = self.ensure_member(a) {
            panic!("{e}");
        }
    }

    fn make(&self, c: Vec<u64>) -> Fe {
        debug_assert_eq!(c.len(), self.k as usize);
        Fe {
            p: self.p,
            k: self.k,
            c,
        }
    }

    pub fn zero(&self) -> Fe {
        self.make(vec![0; self.k as usize])
    }

    pub fn one(&self) -> Fe {
        let mut c = vec![0; self.k as usize];
        c[0] = 1;
        self.make(c)
    }

    /// Constant element from an integer (reduced mod `p`; negatives allowed).
    pub fn from_int(&self, v: i64) -> Fe {
        let mut c = vec![0; self.k as usize];
        c[0] = v.rem_euclid(self.p as i64) as u64;
        self.make(c)
    }

    /// Element with the given enumeration index (base-`p` digits of
    /// `idx`, constant term least significant).
    pub fn element(&self, idx: u64) -> Fe {
        debug_assert!(idx < self.order);
        let mut c = vec![0; self.k as usize];
        let mut v = idx;
        for slot in c.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        self.make(c)
    }

    /// Enumeration index of `a`; inverse of [`Self::element`].
    pub fn index_of(&self, a: &Fe) -> u64 {
        self.member(a);
        let mut idx = 0u64;
        for &ci in a.c.iter().rev() {
            idx = idx * self.p + ci;
        }
        idx
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        self.member(a);
        self.member(b);
        let c =
            a.c.iter()
                .zip(&b.c)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect();
        self.make(c)
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        self.member(a);
        let c = a.c.iter().map(|&x| (self.p - x) % self.p).collect();
        self.make(c)
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        self.member(a);
        self.member(b);
        let prod = poly_mul(&a.c, &b.c, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.make(r)
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe, GfError> {
        self.member(a);
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        // a^(Q-2) = a^(-1) in F_Q
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` for a nonnegative exponent, by square and multiply.
    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
        self.member(a);
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `a^e` with negative exponents allowed for nonzero `a`.
    pub fn pow_signed(&self, a: &Fe, e: i64) -> Result<Fe, GfError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(&inv, e.unsigned_abs()))
        }
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: &Fe) -> Fe {
        self.pow(a, self.p)
    }

    /// True iff `a` lies in the subfield `F_{p^d}`, i.e. `a^(p^d) = a`.
    pub fn in_subfield(&self, a: &Fe, d: u32) -> Result<bool, GfError> {
        self.member(a);
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(GfError::NonDivisorDegree { d, k: self.k });
        }
        let mut img = a.clone();
        for _ in 0..d {
            img = self.frobenius(&img);
        }
        Ok(&img == a)
    }

    /// Elements of the subfield `F_{p^d}`, in enumeration order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Fe>, GfError> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(GfError::NonDivisorDegree { d, k: self.k });
        }
        Ok(self
            .elements()
            .filter(|a| self.in_subfield(a, d).expect("divisor checked"))
            .collect())
    }

    /// Number of solutions of `y^m = c` in this field.
    ///
    /// `1` for `c = 0`; otherwise `d = gcd(m, Q-1)` when `c^((Q-1)/d) = 1`
    /// and `0` when not.
    pub fn root_count(&self, c: &Fe, m: u64) -> u64 {
        self.member(c);
        debug_assert!(m >= 1);
        if c.is_zero() {
            return 1;
        }
        let d = num_integer::gcd(m, self.order - 1);
        if self.pow(c, (self.order - 1) / d) == self.one() {
            d
        } else {
            0
        }
    }

    /// Number of solutions of `y^m = c` inside the subfield of order
    /// `sub_order = p^d`. Zero when `c` itself is outside that subfield.
    pub fn root_count_in_subfield(&self, c: &Fe, m: u64, d: u32) -> Result<u64, GfError> {
        if !self.in_subfield(c, d)? {
            return Ok(0);
        }
        if c.is_zero() {
            return Ok(1);
        }
        let sub_order = (self.p as u128).pow(d) as u64;
        let g = num_integer::gcd(m, sub_order - 1);
        if self.pow(c, (sub_order - 1) / g) == self.one() {
            Ok(g)
        } else {
            Ok(0)
        }
    }

    /// All solutions of `y^m = c`, by full scan; for bulk queries use
    /// [`Self::pow_preimage_buckets`].
    pub fn roots_of(&self, c: &Fe, m: u64) -> Vec<Fe> {
        self.member(c);
        self.elements().filter(|y| &self.pow(y, m) == c).collect()
    }

    /// `buckets[i]` lists the indices of every `y` with `y^m = element(i)`;
    /// one pass over the field.
    pub fn pow_preimage_buckets(&self, m: u64) -> Vec<Vec<u64>> {
        let mut buckets = vec![Vec::new(); self.order as usize];
        for y in 0..self.order {
            let img = self.pow(&self.element(y), m);
            buckets[self.index_of(&img) as usize].push(y);
        }
        buckets
    }

    /// `-1/2`; defined only in odd characteristic.
    pub fn minus_half(&self) -> Result<Fe, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        let two = self.from_int(2);
        Ok(self.neg(&self.inv(&two)?))
    }

    /// Roots of the sixth cyclotomic polynomial `x^2 - x + 1`, with
    /// multiplicity. In characteristic 3 the polynomial is `(x + 1)^2`,
    /// so the unique root `-1` is returned with multiplicity 2; in any
    /// other characteristic the roots (if present) are the two primitive
    /// sixth roots of unity, each simple.
    pub fn cyclotomic6_roots(&self) -> Vec<(Fe, u32)> {
        let one = self.one();
        let roots: Vec<Fe> = self
            .elements()
            .filter(|a| {
                let sq = self.mul(a, a);
                self.add(&self.sub(&sq, a), &one).is_zero()
            })
            .collect();
        if self.p == 3 {
            debug_assert_eq!(roots.len(), 1);
            debug_assert_eq!(roots[0], self.from_int(-1));
            roots.into_iter().map(|r| (r, 2)).collect()
        } else {
            roots.into_iter().map(|r| (r, 1)).collect()
        }
    }
}
