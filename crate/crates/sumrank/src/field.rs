//! Finite-field towers `F_q ⊂ F_{q^m} ⊂ F_{q^{mh}}` with a chosen
//! automorphism `σ = θ^u` (θ the q-Frobenius) and inner derivation
//! `δ = d·(Id − σ)`.
//!
//! Elements are stored as `u64` indices: the base-q integer whose digits are
//! the little-endian coordinate vector over `F_q`. Index arithmetic keeps the
//! hot paths allocation-free; fields with at most 2^16 elements additionally
//! get log/antilog tables.

use std::fmt;
use std::sync::Arc;

use crate::fqpoly;
use crate::{Error, Result};

/// A field element, encoded as the base-q integer of its coordinate vector.
pub type Elem = u64;

/// Upper bound on supported field sizes.
const MAX_FIELD_SIZE: u64 = 1 << 32;
/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

const MODULUS_TABLE: &str = include_str!("../data/moduli.txt");

enum Repr {
    /// Coefficients over the prime field, reduced modulo a monic irreducible.
    Prime { modulus: Vec<u32> },
    /// Degree-h extension of `base`; coordinates are chunks of base elements.
    Tower {
        base: Arc<FieldContext>,
        modulus: Vec<Elem>,
        h: usize,
    },
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// q^j mod (size-1) for j in 0..dim, for O(1) Frobenius powers.
    qj_mod_order: Vec<u64>,
}

/// Immutable context for one finite field, shared via `Arc`.
pub struct FieldContext {
    q: u64,
    dim: usize,
    size: u64,
    order: u64,
    u: usize,
    d: Elem,
    alpha: Elem,
    qpow: Vec<u64>,
    repr: Repr,
    tables: Option<LogTables>,
    /// θ^j as F_q-linear maps (column-major dim×dim), for fields without tables.
    theta_mats: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldContext(q={}, dim={}, u={}, d={}, alpha={})",
            self.q, self.dim, self.u, self.d, self.alpha
        )
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.dim == other.dim
            && self.u == other.u
            && self.d == other.d
            && self.modulus_fingerprint() == other.modulus_fingerprint()
    }
}
impl Eq for FieldContext {}

impl FieldContext {
    /// Field `F_{q^m}` with the default Frobenius automorphism (`u = 1`,
    /// or `u = 0` when `m = 1`) and zero derivation, using the shipped
    /// modulus table.
    pub fn new(q: u64, m: usize) -> Result<Arc<Self>> {
        let u = if m > 1 { 1 } else { 0 };
        Self::with_params(q, m, u, 0)
    }

    /// Field `F_{q^m}` with automorphism σ = θ^u and derivation scalar `d`.
    pub fn with_params(q: u64, m: usize, u: usize, d: Elem) -> Result<Arc<Self>> {
        let modulus = lookup_modulus(q, m)
            .or_else(|| fqpoly::search_primitive_modulus(q, m))
            .ok_or_else(|| {
                Error::InvalidParameter(format!("no modulus available for q={q}, m={m}"))
            })?;
        Self::from_modulus(q, &modulus, u, d)
    }

    /// Field from an explicit monic irreducible modulus over `F_q`.
    pub fn from_modulus(q: u64, modulus: &[u32], u: usize, d: Elem) -> Result<Arc<Self>> {
        if !fqpoly::is_prime_u64(q) {
            return Err(Error::InvalidParameter(format!(
                "q must be prime, got {q} (prime-power orders are reached as F_{{q^m}})"
            )));
        }
        let m = modulus.len().saturating_sub(1);
        if m == 0 || modulus.last() != Some(&1) {
            return Err(Error::InvalidParameter("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= q) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        if !fqpoly::is_irreducible(modulus, q) {
            return Err(Error::InvalidParameter("modulus is not irreducible".into()));
        }
        if u >= m {
            return Err(Error::InvalidParameter(format!("aut exponent u={u} not in 0..{m}")));
        }
        let size = checked_size(q, m)?;
        let mut ctx = FieldContext {
            q,
            dim: m,
            size,
            order: size - 1,
            u,
            d: 0,
            alpha: 0,
            qpow: qpow_vec(q, m),
            repr: Repr::Prime {
                modulus: modulus.to_vec(),
            },
            tables: None,
            theta_mats: Vec::new(),
        };
        ctx.finish_init()?;
        if d >= size {
            return Err(Error::InvalidParameter("derivation scalar out of range".into()));
        }
        ctx.d = d;
        Ok(Arc::new(ctx))
    }

    /// The extension field `F_{q^{m·h}}` of this field, together with
    /// embed/project maps relative to the polynomial basis of the tower
    /// modulus. For `h = 1` the tower is the field itself.
    pub fn extension_tower(self: &Arc<Self>, h: usize) -> Result<Tower> {
        if h == 0 {
            return Err(Error::InvalidParameter("tower degree must be >= 1".into()));
        }
        if h == 1 {
            return Ok(Tower {
                base: Arc::clone(self),
                big: Arc::clone(self),
                h: 1,
            });
        }
        checked_size(self.q, self.dim * h)?;
        let modulus = self.search_tower_modulus(h)?;
        let mut ctx = FieldContext {
            q: self.q,
            dim: self.dim * h,
            size: 0,
            order: 0,
            u: self.u,
            d: 0,
            alpha: 0,
            qpow: qpow_vec(self.q, self.dim * h),
            repr: Repr::Tower {
                base: Arc::clone(self),
                modulus,
                h,
            },
            tables: None,
            theta_mats: Vec::new(),
        };
        ctx.size = checked_size(ctx.q, ctx.dim)?;
        ctx.order = ctx.size - 1;
        ctx.finish_init()?;
        // The derivation scalar carries over through the embedding, so the
        // tower restricts to (σ, δ) on the base field.
        let big = {
            let d_big = tower_embed_raw(&ctx, self.d);
            let mut c = ctx;
            c.d = d_big;
            Arc::new(c)
        };
        Ok(Tower {
            base: Arc::clone(self),
            big,
            h,
        })
    }

    fn finish_init(&mut self) -> Result<()> {
        if self.size <= TABLE_LIMIT {
            self.build_tables()?;
        } else {
            self.alpha = self.search_primitive()?;
        }
        if self.tables.is_none() {
            self.build_theta_mats();
        }
        Ok(())
    }

    fn build_tables(&mut self) -> Result<()> {
        let alpha = self.search_primitive()?;
        self.alpha = alpha;
        let size = self.size as usize;
        let order = self.order as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![0u32; size];
        let mut acc: Elem = 1;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = acc as u32;
            log[acc as usize] = i as u32;
            acc = self.mul_repr(acc, alpha);
        }
        if acc != 1 {
            return Err(Error::InvalidParameter("primitive element search failed".into()));
        }
        let qj_mod_order = (0..self.dim)
            .map(|j| {
                let mut v = 1u64;
                for _ in 0..j {
                    v = v * self.q % self.order;
                }
                v
            })
            .collect();
        self.tables = Some(LogTables {
            exp,
            log,
            qj_mod_order,
        });
        Ok(())
    }

    fn build_theta_mats(&mut self) {
        // θ(x) = x^q is F_q-linear; precompute θ^j on the coordinate basis.
        let dim = self.dim;
        let mut theta = vec![0u32; dim * dim];
        for j in 0..dim {
            let img = self.pow_repr(self.qpow[j], self.q);
            let digits = self.expand(img);
            for i in 0..dim {
                theta[j * dim + i] = digits[i];
            }
        }
        let mut mats = Vec::with_capacity(dim);
        let mut ident = vec![0u32; dim * dim];
        for i in 0..dim {
            ident[i * dim + i] = 1;
        }
        mats.push(ident);
        for j in 1..dim {
            let prev = &mats[j - 1];
            let mut next = vec![0u32; dim * dim];
            for c in 0..dim {
                for r in 0..dim {
                    let mut acc = 0u64;
                    for t in 0..dim {
                        acc += theta[c * dim + t] as u64 * prev[t * dim + r] as u64;
                    }
                    next[c * dim + r] = (acc % self.q) as u32;
                }
            }
            mats.push(next);
        }
        self.theta_mats = mats;
    }

    fn search_primitive(&self) -> Result<Elem> {
        let factors = fqpoly::prime_factors(self.order);
        let start = if self.dim == 1 { 2 } else { self.q };
        for cand in start..self.size {
            if self.is_primitive_with(cand, &factors) {
                return Ok(cand);
            }
        }
        // dim == 1, q in {2,3}: 2 can be the only candidate
        for cand in 1..self.size {
            if self.is_primitive_with(cand, &factors) {
                return Ok(cand);
            }
        }
        Err(Error::InvalidParameter("no primitive element found".into()))
    }

    fn is_primitive_with(&self, cand: Elem, factors: &[u64]) -> bool {
        if cand == 0 {
            return false;
        }
        for &p in factors {
            if self.pow_repr(cand, self.order / p) == 1 {
                return false;
            }
        }
        self.pow_repr(cand, self.order) == 1
    }

    fn search_tower_modulus(&self, h: usize) -> Result<Vec<Elem>> {
        // Smallest monic irreducible of degree h over this field, in the
        // constant-first counter order; deterministic so the tower basis is
        // reproducible.
        let cap = 1u128 << 40;
        let mut counter: u128 = 1; // skip constant coefficient 0 (divisible by w)
        loop {
            if counter >= cap {
                return Err(Error::InvalidParameter("tower modulus search exhausted".into()));
            }
            let mut coeffs: Vec<Elem> = Vec::with_capacity(h + 1);
            let mut c = counter;
            for _ in 0..h {
                coeffs.push((c % self.size as u128) as Elem);
                c /= self.size as u128;
            }
            if c > 0 {
                return Err(Error::InvalidParameter(format!(
                    "no irreducible tower modulus of degree {h} found"
                )));
            }
            coeffs.push(1);
            if coeffs[0] != 0 && self.poly_is_irreducible(&coeffs) {
                return Ok(coeffs);
            }
            counter += 1;
        }
    }

    // ------------------------------------------------------------------
    // basic parameters
    // ------------------------------------------------------------------

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Extension degree over the prime field F_q.
    pub fn extension_degree(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Exponent u with σ = θ^u.
    pub fn aut_exponent(&self) -> usize {
        self.u
    }

    /// Derivation scalar d with δ = d(Id − σ).
    pub fn derivation_scalar(&self) -> Elem {
        self.d
    }

    pub fn has_zero_derivation(&self) -> bool {
        self.d == 0
    }

    /// A fixed primitive element.
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// Number of conjugacy classes minus the trivial one: q^gcd(u,m) − 1.
    pub fn nontrivial_class_count(&self) -> u64 {
        let g = if self.u == 0 {
            self.dim as u64
        } else {
            gcd_u64(self.u as u64, self.dim as u64)
        };
        let mut v = 1u64;
        for _ in 0..g {
            v = v.saturating_mul(self.q);
        }
        v - 1
    }

    fn modulus_fingerprint(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Prime { modulus } => modulus.iter().map(|&c| c as u64).collect(),
            Repr::Tower { base, modulus, .. } => {
                let mut v: Vec<u64> = modulus.clone();
                v.extend(base.modulus_fingerprint());
                v
            }
        }
    }

    pub fn compatible(&self, other: &FieldContext) -> bool {
        self == other
    }

    // ------------------------------------------------------------------
    // element arithmetic
    // ------------------------------------------------------------------

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.q == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut a = a;
        let mut b = b;
        let mut scale = 1u64;
        while a != 0 || b != 0 {
            let s = (a % self.q + b % self.q) % self.q;
            out += s * scale;
            a /= self.q;
            b /= self.q;
            scale *= self.q;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.q == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut a = a;
        let mut scale = 1u64;
        while a != 0 {
            let d = a % self.q;
            if d != 0 {
                out += (self.q - d) * scale;
            }
            a /= self.q;
            scale *= self.q;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.tables {
            if a == 0 || b == 0 {
                return 0;
            }
            let i = t.log[a as usize] as u64 + t.log[b as usize] as u64;
            return t.exp[(i % self.order) as usize] as Elem;
        }
        self.mul_repr(a, b)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u64;
            return Ok(t.exp[((self.order - l) % self.order) as usize] as Elem);
        }
        Ok(self.pow_repr(a, self.order - 1))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u64;
            let r = (l as u128 * (e % self.order) as u128 % self.order as u128) as u64;
            return t.exp[r as usize] as Elem;
        }
        self.pow_repr(a, e)
    }

    /// σ^e(x), negative e meaning the inverse automorphism.
    pub fn apply_aut(&self, x: Elem, e: i64) -> Elem {
        let m = self.dim as i64;
        let j = ((self.u as i64 * e) % m + m) % m;
        self.theta_pow(x, j as usize)
    }

    /// θ^j(x) = x^(q^j) for 0 <= j < dim.
    pub fn theta_pow(&self, x: Elem, j: usize) -> Elem {
        if x == 0 || j == 0 {
            return x;
        }
        if let Some(t) = &self.tables {
            let l = t.log[x as usize] as u64;
            let r = (l as u128 * t.qj_mod_order[j] as u128 % self.order as u128) as u64;
            return t.exp[r as usize] as Elem;
        }
        let mat = &self.theta_mats[j];
        let dim = self.dim;
        let digits = self.expand(x);
        let mut out = vec![0u64; dim];
        for (c, &dc) in digits.iter().enumerate() {
            if dc == 0 {
                continue;
            }
            for r in 0..dim {
                out[r] += mat[c * dim + r] as u64 * dc as u64;
            }
        }
        let mut enc = 0u64;
        for r in (0..dim).rev() {
            enc = enc * self.q + out[r] % self.q;
        }
        enc
    }

    /// δ(x) = d·(x − σ(x)).
    pub fn derivation(&self, x: Elem) -> Elem {
        if self.d == 0 {
            return 0;
        }
        self.mul(self.d, self.sub(x, self.apply_aut(x, 1)))
    }

    /// The (σ, δ)-conjugate a^c = σ(c)·a·c^{-1} + δ(c)·c^{-1}.
    pub fn conjugate(&self, a: Elem, c: Elem) -> Result<Elem> {
        let cinv = self.inv(c)?;
        let main = self.mul(self.mul(self.apply_aut(c, 1), a), cinv);
        if self.d == 0 {
            return Ok(main);
        }
        Ok(self.add(main, self.mul(self.derivation(c), cinv)))
    }

    /// The operator D_a(b) = σ(b)·a + δ(b).
    #[inline]
    pub fn operator(&self, a: Elem, b: Elem) -> Elem {
        let v = self.mul(self.apply_aut(b, 1), a);
        if self.d == 0 {
            v
        } else {
            self.add(v, self.derivation(b))
        }
    }

    /// D_a^i(b).
    pub fn operator_pow(&self, a: Elem, b: Elem, i: usize) -> Elem {
        let mut v = b;
        for _ in 0..i {
            v = self.operator(a, v);
        }
        v
    }

    /// Generalized power N_i(a) = ∏_{k<i} σ^k(a); requires zero derivation.
    pub fn generalized_power(&self, a: Elem, i: usize) -> Result<Elem> {
        if self.d != 0 {
            return Err(Error::NonzeroDerivation);
        }
        let mut acc: Elem = 1;
        let mut cur = a;
        for _ in 0..i {
            acc = self.mul(acc, cur);
            cur = self.apply_aut(cur, 1);
        }
        Ok(acc)
    }

    /// `count` pairwise non-conjugate elements outside the trivial class of d:
    /// d + α^i for i = 0..count (so 1, α, α², … in the zero-derivation case).
    pub fn conjugacy_representatives(&self, count: usize) -> Result<Vec<Elem>> {
        if count as u64 > self.nontrivial_class_count() {
            return Err(Error::InvalidParameter(format!(
                "requested {count} class representatives, field has only {}",
                self.nontrivial_class_count()
            )));
        }
        let mut out = Vec::with_capacity(count);
        let mut p: Elem = 1;
        for _ in 0..count {
            out.push(self.add(self.d, p));
            p = self.mul(p, self.alpha);
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // coordinates
    // ------------------------------------------------------------------

    /// Little-endian F_q coordinates, length = extension degree.
    pub fn expand(&self, x: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.dim);
        let mut x = x;
        for _ in 0..self.dim {
            out.push((x % self.q) as u32);
            x /= self.q;
        }
        out
    }

    pub fn collapse(&self, digits: &[u32]) -> Elem {
        debug_assert!(digits.len() <= self.dim);
        let mut enc = 0u64;
        for &d in digits.iter().rev() {
            enc = enc * self.q + d as u64;
        }
        enc
    }

    pub fn validate(&self, x: Elem) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "element {x} out of range for field of size {}",
                self.size
            )))
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.size)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.size)
    }

    // ------------------------------------------------------------------
    // representation backends
    // ------------------------------------------------------------------

    fn mul_repr(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.repr {
            Repr::Prime { modulus } => {
                let da = self.expand(a);
                let db = self.expand(b);
                let prod = fqpoly::mul(&da, &db, self.q);
                let red = fqpoly::rem(&prod, modulus, self.q);
                self.collapse(&red)
            }
            Repr::Tower { base, modulus, h } => {
                let ca = self.chunks_raw(a);
                let cb = self.chunks_raw(b);
                let mut prod: Vec<Elem> = vec![0; 2 * h - 1];
                for (i, &ai) in ca.iter().enumerate() {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &bj) in cb.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(ai, bj));
                    }
                }
                // reduce modulo the monic tower modulus
                for i in (*h..prod.len()).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (j, &mj) in modulus.iter().enumerate().take(*h) {
                        let t = base.mul(c, mj);
                        prod[i - h + j] = base.sub(prod[i - h + j], t);
                    }
                }
                prod.truncate(*h);
                self.collapse_chunks_raw(&prod)
            }
        }
    }

    fn pow_repr(&self, a: Elem, mut e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut acc: Elem = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_repr(acc, b);
            }
            b = self.mul_repr(b, b);
            e >>= 1;
        }
        acc
    }

    fn poly_is_irreducible(&self, f: &[Elem]) -> bool {
        // Rabin's test in K[w] for monic f over this field.
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0 as Elem, 1];
        let xqn = self.kpoly_frob_pow(n, f);
        if xqn != self.kpoly_rem(&x, f) {
            return false;
        }
        for p in fqpoly::prime_factors(n as u64) {
            let t = self.kpoly_frob_pow(n / p as usize, f);
            let mut diff = t;
            while diff.len() < 2 {
                diff.push(0);
            }
            diff[1] = self.sub(diff[1], 1);
            kpoly_trim(&mut diff);
            let g = self.kpoly_gcd(&diff, f);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    fn kpoly_frob_pow(&self, e: usize, m: &[Elem]) -> Vec<Elem> {
        // x^(|K|^e) mod m
        let mut x = self.kpoly_rem(&[0, 1], m);
        for _ in 0..e {
            x = self.kpoly_powmod(&x, self.size, m);
        }
        x
    }

    fn kpoly_powmod(&self, base: &[Elem], mut e: u64, m: &[Elem]) -> Vec<Elem> {
        let mut acc = vec![1 as Elem];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.kpoly_rem(&self.kpoly_mul(&acc, &b), m);
            }
            b = self.kpoly_rem(&self.kpoly_mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    fn kpoly_mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0 as Elem; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ai, bj));
            }
        }
        kpoly_trim(&mut out);
        out
    }

    fn kpoly_rem(&self, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
        let dm = m.len() - 1;
        let lead_inv = self.inv(m[dm]).expect("monic or invertible lead");
        let mut r = a.to_vec();
        kpoly_trim(&mut r);
        while r.len() > dm {
            let c = self.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate().take(dm) {
                    let t = self.mul(c, mj);
                    r[shift + j] = self.sub(r[shift + j], t);
                }
            }
            r.pop();
            kpoly_trim(&mut r);
        }
        r
    }

    fn kpoly_gcd(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        kpoly_trim(&mut a);
        kpoly_trim(&mut b);
        while !b.is_empty() {
            let r = self.kpoly_rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            if lead != 1 {
                let inv = self.inv(lead).unwrap();
                for c in a.iter_mut() {
                    *c = self.mul(*c, inv);
                }
            }
        }
        a
    }

    fn chunks_raw(&self, x: Elem) -> Vec<Elem> {
        match &self.repr {
            Repr::Tower { base, h, .. } => {
                let mut out = Vec::with_capacity(*h);
                let mut x = x;
                for _ in 0..*h {
                    out.push(x % base.size);
                    x /= base.size;
                }
                out
            }
            _ => vec![x],
        }
    }

    fn collapse_chunks_raw(&self, chunks: &[Elem]) -> Elem {
        match &self.repr {
            Repr::Tower { base, .. } => {
                let mut enc = 0u64;
                for &c in chunks.iter().rev() {
                    enc = enc * base.size + c;
                }
                enc
            }
            _ => chunks[0],
        }
    }
}

fn kpoly_trim(v: &mut Vec<Elem>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

// Chunk 0 of the tower encoding is the embedded base element.
fn tower_embed_raw(_tower_ctx: &FieldContext, base_elem: Elem) -> Elem {
    base_elem
}

fn checked_size(q: u64, dim: usize) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..dim {
        size = size.checked_mul(q).ok_or_else(|| {
            Error::InvalidParameter(format!("field size q^{dim} exceeds supported range"))
        })?;
        if size > MAX_FIELD_SIZE {
            return Err(Error::InvalidParameter(format!(
                "field size q^{dim} exceeds supported range (~2^32)"
            )));
        }
    }
    if size < 2 {
        return Err(Error::InvalidParameter("field must have at least 2 elements".into()));
    }
    Ok(size)
}

fn qpow_vec(q: u64, dim: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(dim + 1);
    let mut acc = 1u64;
    for _ in 0..=dim {
        v.push(acc);
        acc = acc.saturating_mul(q);
    }
    v
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn lookup_modulus(q: u64, m: usize) -> Option<Vec<u32>> {
    for line in MODULUS_TABLE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let lq: u64 = it.next()?.parse().ok()?;
        let lm: usize = it.next()?.parse().ok()?;
        if lq == q && lm == m {
            let coeffs: Option<Vec<u32>> = it.map(|t| t.parse().ok()).collect();
            return coeffs;
        }
    }
    None
}

/// The tower `F_{q^m} ⊂ F_{q^{mh}}` with its embed/project maps.
#[derive(Clone)]
pub struct Tower {
    base: Arc<FieldContext>,
    big: Arc<FieldContext>,
    h: usize,
}

impl Tower {
    pub fn base(&self) -> &Arc<FieldContext> {
        &self.base
    }

    pub fn big(&self) -> &Arc<FieldContext> {
        &self.big
    }

    pub fn degree(&self) -> usize {
        self.h
    }

    /// Field embedding of the base field into the tower field.
    pub fn embed(&self, x: Elem) -> Elem {
        x
    }

    /// Coordinates of a tower element over the base field, relative to the
    /// polynomial basis (1, w, ..., w^{h-1}) of the tower modulus.
    pub fn chunks(&self, x: Elem) -> Vec<Elem> {
        if self.h == 1 {
            return vec![x];
        }
        let mut out = Vec::with_capacity(self.h);
        let mut x = x;
        for _ in 0..self.h {
            out.push(x % self.base.size);
            x /= self.base.size;
        }
        out
    }

    /// Inverse of `chunks`: collapse base-field coordinates into one element.
    pub fn collapse(&self, chunks: &[Elem]) -> Elem {
        debug_assert!(chunks.len() <= self.h.max(1));
        let mut enc = 0u64;
        for &c in chunks.iter().rev() {
            enc = enc * self.base.size + c;
        }
        enc
    }
}
