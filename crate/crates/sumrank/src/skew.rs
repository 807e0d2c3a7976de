//! The skew polynomial ring `F_{q^m}[x; σ, δ]`: multiplication under the
//! rule `x·b = σ(b)·x + δ(b)`, generalized operator evaluation, remainder
//! evaluation, Moore matrices, least common left multiples, and remainder
//! interpolation.

use std::sync::Arc;

use crate::field::{Elem, FieldContext};
use crate::linalg::ExtMatrix;
use crate::{Error, Result};

/// Skew polynomial with coefficients indexed by the power of x.
///
/// The zero polynomial has an empty coefficient vector and degree `None`
/// (minus infinity); nonzero polynomials never store trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolynomial {
    coeffs: Vec<Elem>,
    ctx: Arc<FieldContext>,
}

impl SkewPolynomial {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        SkewPolynomial {
            coeffs: Vec::new(),
            ctx: Arc::clone(ctx),
        }
    }

    pub fn constant(ctx: &Arc<FieldContext>, c: Elem) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::constant(ctx, 1)
    }

    /// x - b
    pub fn linear(ctx: &Arc<FieldContext>, b: Elem) -> Self {
        Self::from_coeffs(ctx, vec![ctx.neg(b), 1])
    }

    pub fn from_coeffs(ctx: &Arc<FieldContext>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        SkewPolynomial {
            coeffs,
            ctx: Arc::clone(ctx),
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` is the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> SkewPolynomial {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect();
        Self::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &SkewPolynomial) -> SkewPolynomial {
        self.add(&other.neg())
    }

    /// c·f (left multiplication by a constant scales the coefficients).
    pub fn scale_left(&self, c: Elem) -> SkewPolynomial {
        let coeffs = self.coeffs.iter().map(|&v| self.ctx.mul(c, v)).collect();
        Self::from_coeffs(&self.ctx, coeffs)
    }

    /// f·c as a ring product.
    pub fn scale_right(&self, c: Elem) -> SkewPolynomial {
        self.mul(&Self::constant(&self.ctx, c))
            .expect("same context")
    }

    /// x·f = Σ σ(f_j)·x^{j+1} + δ(f_j)·x^j.
    fn times_x(&self) -> SkewPolynomial {
        let ctx = &self.ctx;
        let mut coeffs = vec![0; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = ctx.add(coeffs[j + 1], ctx.apply_aut(c, 1));
            if !ctx.has_zero_derivation() {
                coeffs[j] = ctx.add(coeffs[j], ctx.derivation(c));
            }
        }
        Self::from_coeffs(ctx, coeffs)
    }

    /// Ring product.
    pub fn mul(&self, other: &SkewPolynomial) -> Result<SkewPolynomial> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let ctx = &self.ctx;
        let mut acc = vec![0; self.coeffs.len() + other.coeffs.len()];
        let mut shifted = other.clone(); // x^i · other
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi != 0 {
                for (j, &c) in shifted.coeffs.iter().enumerate() {
                    acc[j] = ctx.add(acc[j], ctx.mul(fi, c));
                }
            }
            if i + 1 < self.coeffs.len() {
                shifted = shifted.times_x();
            }
        }
        Ok(Self::from_coeffs(ctx, acc))
    }

    /// Right division: f = quo·d + rem with deg(rem) < deg(d).
    pub fn right_divmod(&self, d: &SkewPolynomial) -> Result<(SkewPolynomial, SkewPolynomial)> {
        if self.ctx != d.ctx {
            return Err(Error::ContextMismatch);
        }
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let ctx = &self.ctx;
        let d_lead = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![0; self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let e = dr - dd;
            // leading coefficient of c·x^e·d is c·σ^e(d_lead)
            let c = ctx.mul(
                rem.leading().unwrap(),
                ctx.inv(ctx.apply_aut(d_lead, e as i64))?,
            );
            quo[e] = ctx.add(quo[e], c);
            let term = {
                let mut v = vec![0; e + 1];
                v[e] = c;
                SkewPolynomial::from_coeffs(ctx, v).mul(d)?
            };
            rem = rem.sub(&term);
            debug_assert!(rem.degree().map_or(true, |r| r < dr));
        }
        Ok((Self::from_coeffs(ctx, quo), rem))
    }

    /// Left-normalize to a monic polynomial.
    pub fn monic(&self) -> SkewPolynomial {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(l) => self.scale_left(self.ctx.inv(l).expect("nonzero leading")),
        }
    }

    /// Generalized operator evaluation f(b)_a = Σ f_i · D_a^i(b).
    pub fn op_evaluate(&self, b: Elem, a: Elem) -> Elem {
        let ctx = &self.ctx;
        let mut acc = 0;
        let mut power = b; // D_a^i(b)
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi != 0 {
                acc = ctx.add(acc, ctx.mul(fi, power));
            }
            if i + 1 < self.coeffs.len() {
                power = ctx.operator(a, power);
            }
        }
        acc
    }

    /// Remainder evaluation f[b] = Σ f_i·N_i(b); zero-derivation only.
    pub fn rem_evaluate(&self, b: Elem) -> Result<Elem> {
        let ctx = &self.ctx;
        if !ctx.has_zero_derivation() {
            return Err(Error::NonzeroDerivation);
        }
        let mut acc = 0;
        let mut npow: Elem = 1; // N_i(b)
        let mut conj = b; // σ^i(b)
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi != 0 {
                acc = ctx.add(acc, ctx.mul(fi, npow));
            }
            if i + 1 < self.coeffs.len() {
                npow = ctx.mul(npow, conj);
                conj = ctx.apply_aut(conj, 1);
            }
        }
        Ok(acc)
    }

    /// Remainder of the right division by (x − b); oracle for
    /// [`SkewPolynomial::rem_evaluate`].
    pub fn rem_by_division(&self, b: Elem) -> Result<Elem> {
        let (_, r) = self.right_divmod(&Self::linear(&self.ctx, b))?;
        Ok(r.coeff(0))
    }

    /// Evaluate f[c^j·b] through the twisted polynomial with coefficients
    /// f_i·N_i(c^j); equals the direct remainder evaluation.
    pub fn scaled_point_eval(&self, c: Elem, j: usize, b: Elem) -> Result<Elem> {
        let ctx = &self.ctx;
        let cj = ctx.pow(c, j as u64);
        let coeffs: Vec<Elem> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &fi)| Ok(ctx.mul(fi, ctx.generalized_power(cj, i)?)))
            .collect::<Result<_>>()?;
        Self::from_coeffs(ctx, coeffs).rem_evaluate(b)
    }

    /// Uniform random polynomial of degree < k.
    pub fn random<R: rand::Rng + ?Sized>(
        ctx: &Arc<FieldContext>,
        k: usize,
        rng: &mut R,
    ) -> SkewPolynomial {
        let coeffs = (0..k).map(|_| ctx.random(rng)).collect();
        Self::from_coeffs(ctx, coeffs)
    }
}

/// Both sides of the operator/remainder bridge
/// f[D_a(b)·b^{-1}] = f(b)_a·b^{-1} for nonzero b (zero derivation).
pub fn rem_op_bridge(f: &SkewPolynomial, b: Elem, a: Elem) -> Result<(Elem, Elem)> {
    let ctx = f.ctx();
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let binv = ctx.inv(b)?;
    let point = ctx.mul(ctx.operator(a, b), binv);
    let lhs = f.rem_evaluate(point)?;
    let rhs = ctx.mul(f.op_evaluate(b, a), binv);
    Ok((lhs, rhs))
}

/// Least common left multiple of (x − c_1), ..., (x − c_r): the monic h of
/// minimal degree with h = g_i·(x − c_i) for every i. Empty input gives 1.
pub fn lclm_linear(ctx: &Arc<FieldContext>, roots: &[Elem]) -> Result<SkewPolynomial> {
    let mut acc = SkewPolynomial::one(ctx);
    for &c in roots {
        let f = SkewPolynomial::linear(ctx, c);
        acc = lclm_pair(&acc, &f)?;
    }
    Ok(acc)
}

/// lclm of two skew polynomials via the right-division Euclidean algorithm
/// with cofactor bookkeeping.
pub fn lclm_pair(f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial> {
    if f.ctx() != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = f.ctx();
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    // chain r_{i+1} = r_{i-1} - q_i·r_i with u_i·f + v_i·g = r_i
    let mut r_prev = f.clone();
    let mut r_cur = g.clone();
    let mut u_prev = SkewPolynomial::one(ctx);
    let mut u_cur = SkewPolynomial::zero(ctx);
    while !r_cur.is_zero() {
        let (q, r_next) = r_prev.right_divmod(&r_cur)?;
        let u_next = u_prev.sub(&q.mul(&u_cur)?);
        r_prev = r_cur;
        r_cur = r_next;
        u_prev = u_cur;
        u_cur = u_next;
    }
    // now u_cur·f + v_cur·g = 0, so u_cur·f = lclm(f, g) up to left scaling
    let lc = u_cur.mul(f)?;
    Ok(lc.monic())
}

/// True iff the set is P-independent: the lclm of the (x − b_i) has degree
/// |B|. Requires zero derivation.
pub fn is_p_independent(ctx: &Arc<FieldContext>, points: &[Elem]) -> Result<bool> {
    if !ctx.has_zero_derivation() {
        return Err(Error::NonzeroDerivation);
    }
    let l = lclm_linear(ctx, points)?;
    Ok(l.degree() == Some(points.len()))
}

/// The generalized Moore matrix: d rows; block ℓ contributes one column per
/// entry of `x_blocks[ℓ]` holding D_{a_ℓ}^i of that entry in row i.
pub fn moore_matrix(
    ctx: &Arc<FieldContext>,
    d: usize,
    x_blocks: &[Vec<Elem>],
    a: &[Elem],
) -> Result<ExtMatrix> {
    if x_blocks.len() != a.len() {
        return Err(Error::InvalidParameter(
            "need one evaluation parameter per block".into(),
        ));
    }
    let n: usize = x_blocks.iter().map(|b| b.len()).sum();
    let mut m = ExtMatrix::zeros(ctx, d, n);
    let mut col = 0;
    for (block, &ai) in x_blocks.iter().zip(a) {
        for &x in block {
            let mut v = x;
            for row in 0..d {
                m[(row, col)] = v;
                if row + 1 < d {
                    v = ctx.operator(ai, v);
                }
            }
            col += 1;
        }
    }
    Ok(m)
}

/// The unique f of degree < |B| with f[b_j] = x_j on a P-independent set B,
/// found by solving the generalized-power linear system.
pub fn rem_interpolate(
    ctx: &Arc<FieldContext>,
    points: &[Elem],
    values: &[Elem],
) -> Result<SkewPolynomial> {
    if points.len() != values.len() {
        return Err(Error::InvalidParameter(
            "points and values must have equal length".into(),
        ));
    }
    if !ctx.has_zero_derivation() {
        return Err(Error::NonzeroDerivation);
    }
    let n = points.len();
    if n == 0 {
        return Ok(SkewPolynomial::zero(ctx));
    }
    let mut sys = ExtMatrix::zeros(ctx, n, n);
    for (j, &b) in points.iter().enumerate() {
        let mut npow: Elem = 1;
        let mut conj = b;
        for i in 0..n {
            sys[(j, i)] = npow;
            if i + 1 < n {
                npow = ctx.mul(npow, conj);
                conj = ctx.apply_aut(conj, 1);
            }
        }
    }
    match crate::linalg::solve(&sys, values) {
        Some((coeffs, hom)) if hom.is_empty() => Ok(SkewPolynomial::from_coeffs(ctx, coeffs)),
        _ => Err(Error::NotPIndependent),
    }
}

/// Interpolation polynomial in s+1 variables:
/// Q(x, y_1..y_s) = Q_0(x) + Σ_r Q_r(x)·y_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariateSkewPolynomial {
    components: Vec<SkewPolynomial>,
}

impl MultivariateSkewPolynomial {
    pub fn new(components: Vec<SkewPolynomial>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidParameter(
                "need Q_0 plus at least one y-component".into(),
            ));
        }
        Ok(MultivariateSkewPolynomial { components })
    }

    /// Number of y-variables.
    pub fn s(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, r: usize) -> &SkewPolynomial {
        &self.components[r]
    }

    pub fn components(&self) -> &[SkewPolynomial] {
        &self.components
    }

    /// Generalized operator evaluation at an interpolation point
    /// (p_0, ..., p_s) with parameter a: Σ_r Q_r(p_r)_a.
    pub fn eval_point(&self, point: &[Elem], a: Elem) -> Elem {
        debug_assert_eq!(point.len(), self.components.len());
        let ctx = self.components[0].ctx();
        let mut acc = 0;
        for (q, &p) in self.components.iter().zip(point) {
            acc = ctx.add(acc, q.op_evaluate(p, a));
        }
        acc
    }

    /// P(x) = Q_0(x) + Σ_r Q_r(x)·f(x)·α^{r-1}; the message candidates are
    /// the roots of this univariate polynomial.
    pub fn plug_message(&self, f: &SkewPolynomial) -> Result<SkewPolynomial> {
        let ctx = self.components[0].ctx();
        let alpha = ctx.alpha();
        let mut acc = self.components[0].clone();
        let mut fa = f.clone(); // f·α^{r-1}
        for r in 1..self.components.len() {
            acc = acc.add(&self.components[r].mul(&fa)?);
            if r + 1 < self.components.len() {
                fa = fa.scale_right(alpha);
            }
        }
        Ok(acc)
    }
}
