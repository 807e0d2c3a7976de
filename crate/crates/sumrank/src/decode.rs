//! Interpolation-based decoding of FLRS codes: sliding-window interpolation
//! points (plain and high-rate wrap-around variants), the interpolation
//! linear system, root finding, decoding-radius predicates, list and
//! probabilistic unique decoding, and FSRS decoding through the isometry.

use std::sync::Arc;

use crate::codes::{self, FlrsCode, FsrsCode};
use crate::field::{Elem, FieldContext};
use crate::linalg::{self, ExtMatrix, MatrixTuple};
use crate::skew::{MultivariateSkewPolynomial, SkewPolynomial};
use crate::{Error, Result};

/// Interpolation-point selection scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Sliding window confined to single columns.
    Standard,
    /// Window additionally wraps into the next column, for high-rate codes.
    HighRate,
}

/// Decoder output discipline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Return the affine solution space of message candidates.
    List,
    /// Return a single message or declare a failure.
    Unique,
}

#[derive(Clone, Copy, Debug)]
pub struct DecoderConfig {
    /// Interpolation parameter, 1 <= s <= min h_i.
    pub s: usize,
    /// Enforced lower bound on the interpolation solution dimension;
    /// 1 in list mode.
    pub mu: usize,
    pub variant: Variant,
    pub mode: Mode,
}

impl DecoderConfig {
    pub fn list(s: usize, variant: Variant) -> Self {
        DecoderConfig {
            s,
            mu: 1,
            variant,
            mode: Mode::List,
        }
    }

    pub fn unique(s: usize, mu: usize, variant: Variant) -> Self {
        DecoderConfig {
            s,
            mu,
            variant,
            mode: Mode::Unique,
        }
    }

    pub fn validate(&self, code: &FlrsCode) -> Result<()> {
        let h_min = *code.folding().iter().min().unwrap();
        if self.s == 0 || self.s > h_min {
            return Err(Error::InvalidParameter(format!(
                "interpolation parameter s={} out of range 1..={h_min}",
                self.s
            )));
        }
        if self.mu == 0 {
            return Err(Error::InvalidParameter("mu must be at least 1".into()));
        }
        // degenerate degree constraints admit no decoding
        let d = degree_constraint(code, self.s, self.mu, self.variant)?;
        let _ = d;
        Ok(())
    }
}

/// One interpolation point (p_0, ..., p_s) together with its block index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationPoint {
    pub coords: Vec<Elem>,
    pub block: usize,
}

/// Number of interpolation points of the variant.
pub fn point_count(h: &[usize], n_folded: &[usize], s: usize, variant: Variant) -> usize {
    match variant {
        Variant::Standard => h
            .iter()
            .zip(n_folded)
            .map(|(&hi, &ni)| ni * (hi - s + 1))
            .sum(),
        Variant::HighRate => {
            let n: usize = h.iter().zip(n_folded).map(|(&hi, &ni)| hi * ni).sum();
            n - h.len() * (s - 1)
        }
    }
}

/// Build the interpolation points of the received word, blockwise. Points
/// appear block-major and, within a block, by ascending window start in the
/// unfolded stream (column-major, top-down).
pub fn build_points(
    code: &FlrsCode,
    received: &MatrixTuple,
    s: usize,
    variant: Variant,
) -> Result<Vec<InterpolationPoint>> {
    check_shape(code, received)?;
    let ctx = code.ctx();
    let h_min = *code.folding().iter().min().unwrap();
    if s == 0 || s > h_min {
        return Err(Error::InvalidParameter(format!(
            "interpolation parameter s={s} out of range 1..={h_min}"
        )));
    }
    let mut points = Vec::new();
    for (i, blk) in received.blocks().iter().enumerate() {
        let hi = code.folding()[i];
        let ni = code.folded_lengths()[i];
        let stream = codes::unfold_block(blk);
        // eligible 1-based window starts in the unfolded stream
        let mut starts = Vec::new();
        match variant {
            Variant::Standard => {
                for j in 1..=ni {
                    for l in 1..=(hi - s + 1) {
                        starts.push((j - 1) * hi + l);
                    }
                }
            }
            Variant::HighRate => {
                for j in 1..ni {
                    for l in 1..=hi {
                        starts.push((j - 1) * hi + l);
                    }
                }
                for l in 1..=(hi - s + 1) {
                    starts.push((ni - 1) * hi + l);
                }
            }
        }
        starts.sort_unstable();
        for w in starts {
            let mut coords = Vec::with_capacity(s + 1);
            coords.push(ctx.pow(ctx.alpha(), (w - 1) as u64));
            for offset in 0..s {
                coords.push(stream[w - 1 + offset]);
            }
            points.push(InterpolationPoint { coords, block: i });
        }
    }
    Ok(points)
}

/// Degree bound D = ⌈(|P| + s(k−1) + μ)/(s+1)⌉ guaranteeing an
/// interpolation solution space of dimension at least μ.
pub fn degree_constraint(
    code: &FlrsCode,
    s: usize,
    mu: usize,
    variant: Variant,
) -> Result<usize> {
    let p = point_count(code.folding(), code.folded_lengths(), s, variant);
    let k = code.dimension();
    let d = (p + s * (k - 1) + mu).div_ceil(s + 1);
    if d < k {
        return Err(Error::InvalidParameter(format!(
            "degenerate degree constraint: D={d} < k={k}; \
             these parameters admit no decoding"
        )));
    }
    Ok(d)
}

/// The interpolation matrix S: one row per point, with D operator-power
/// columns of p_0 followed by D−k+1 operator-power columns of each p_r,
/// all with the evaluation parameter of the point's block.
pub fn build_interpolation_matrix(
    code: &FlrsCode,
    points: &[InterpolationPoint],
    degree_bound: usize,
) -> ExtMatrix {
    let ctx = code.ctx();
    let s = points.first().map_or(1, |p| p.coords.len() - 1);
    let k = code.dimension();
    let y_cols = degree_bound - k + 1;
    let cols = degree_bound + s * y_cols;
    let mut m = ExtMatrix::zeros(ctx, points.len(), cols);
    for (row, pt) in points.iter().enumerate() {
        let a = code.evaluation_params()[pt.block];
        let mut col = 0;
        for (r, &p) in pt.coords.iter().enumerate() {
            let width = if r == 0 { degree_bound } else { y_cols };
            let mut v = p;
            for j in 0..width {
                m[(row, col)] = v;
                col += 1;
                if j + 1 < width {
                    v = ctx.operator(a, v);
                }
            }
        }
    }
    m
}

/// Canonical basis of the interpolation solution space, reassembled into
/// (s+1)-variate skew polynomials.
pub fn solve_interpolation(
    code: &FlrsCode,
    matrix: &ExtMatrix,
    degree_bound: usize,
    s: usize,
) -> Vec<MultivariateSkewPolynomial> {
    let ctx = code.ctx();
    let k = code.dimension();
    let y_cols = degree_bound - k + 1;
    matrix
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut components = Vec::with_capacity(s + 1);
            components.push(SkewPolynomial::from_coeffs(ctx, v[..degree_bound].to_vec()));
            for r in 0..s {
                let lo = degree_bound + r * y_cols;
                components.push(SkewPolynomial::from_coeffs(
                    ctx,
                    v[lo..lo + y_cols].to_vec(),
                ));
            }
            MultivariateSkewPolynomial::new(components).expect("s >= 1")
        })
        .collect()
}

/// Exact decoding-radius predicate on a weight decomposition.
///
/// List mode (strict): (s+1)·Σ t_i·w_i < s·cap.
/// Unique mode: (s+1)·Σ t_i·w_i <= s·cap − μ.
/// The weights w_i and cap depend on the variant: h_i−s+1 and
/// Σ N_i(h_i−s+1) − k + 1 for the plain decoder, h_i+s−1 and
/// Σ N_i·h_i − ℓ(s−1) − k + 1 for the high-rate decoder.
pub fn radius_ok(
    t_vec: &[usize],
    h: &[usize],
    n_folded: &[usize],
    k: usize,
    s: usize,
    mu: usize,
    mode: Mode,
    variant: Variant,
) -> bool {
    assert_eq!(t_vec.len(), h.len());
    let lhs: i128 = t_vec
        .iter()
        .zip(h)
        .map(|(&ti, &hi)| {
            ti as i128
                * match variant {
                    Variant::Standard => (hi - s + 1) as i128,
                    Variant::HighRate => (hi + s - 1) as i128,
                }
        })
        .sum();
    let cap: i128 = point_count(h, n_folded, s, variant) as i128 - k as i128 + 1;
    let s = s as i128;
    match mode {
        Mode::List => (s + 1) * lhs < s * cap,
        Mode::Unique => (s + 1) * lhs <= s * cap - mu as i128,
    }
}

/// Why a unique-mode decode declared failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// The root-finding system has no solution.
    Inconsistent,
    /// The root-finding solution space has positive dimension.
    MultipleCandidates,
}

#[derive(Clone, Debug)]
pub enum DecodeOutcome {
    /// Unique-mode success.
    Unique(SkewPolynomial),
    /// List-mode result: the affine candidate space f = particular + Σ b_i·c_i
    /// with right scalars c_i in F_{q^m}.
    List {
        particular: SkewPolynomial,
        basis: Vec<SkewPolynomial>,
    },
    Failure(FailureKind),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecodeDiagnostics {
    /// Degree bound D of the interpolation problem.
    pub degree_bound: usize,
    /// Number of interpolation points.
    pub point_count: usize,
    /// Dimension d_I of the interpolation solution space.
    pub interp_dim: usize,
    /// Dimension d_RF of the root-finding solution space.
    pub root_dim: usize,
}

#[derive(Clone, Debug)]
pub struct DecodeResult {
    pub outcome: DecodeOutcome,
    pub diag: DecodeDiagnostics,
    /// The interpolation basis Q^(1), ..., Q^(d_I).
    pub interpolation_basis: Vec<MultivariateSkewPolynomial>,
}

impl DecodeResult {
    pub fn message(&self) -> Option<&SkewPolynomial> {
        match &self.outcome {
            DecodeOutcome::Unique(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.outcome, DecodeOutcome::Failure(_))
    }

    /// Whether g satisfies Q(x, g, gα, ..., gα^{s−1}) = 0 for every basis
    /// polynomial, i.e. whether g lies in the returned candidate space.
    pub fn is_candidate(&self, g: &SkewPolynomial) -> Result<bool> {
        for q in &self.interpolation_basis {
            if !q.plug_message(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficients of the polynomials B_0^(u)(y) = Σ_r q_{r,0}^(u) y^{r−1}
    /// for u = 1..=mu, pooled; the statistic tracked by the simulation
    /// harness.
    pub fn b0_coefficients(&self, mu: usize) -> Vec<Elem> {
        let mut out = Vec::new();
        for q in self.interpolation_basis.iter().take(mu) {
            for r in 1..=q.s() {
                out.push(q.component(r).coeff(0));
            }
        }
        out
    }
}

fn check_shape(code: &FlrsCode, word: &MatrixTuple) -> Result<()> {
    if word.ctx() != code.ctx() {
        return Err(Error::ContextMismatch);
    }
    if word.heights() != code.folding() || word.widths() != code.folded_lengths() {
        return Err(Error::InvalidParameter(
            "received word shape does not match the code".into(),
        ));
    }
    Ok(())
}

/// Full decoding pipeline: points, interpolation, root finding.
pub fn decode(code: &FlrsCode, received: &MatrixTuple, cfg: &DecoderConfig) -> Result<DecodeResult> {
    cfg.validate(code)?;
    check_shape(code, received)?;
    let degree_bound = degree_constraint(code, cfg.s, cfg.mu, cfg.variant)?;
    let points = build_points(code, received, cfg.s, cfg.variant)?;
    let matrix = build_interpolation_matrix(code, &points, degree_bound);
    let q_basis = solve_interpolation(code, &matrix, degree_bound, cfg.s);
    let mut diag = DecodeDiagnostics {
        degree_bound,
        point_count: points.len(),
        interp_dim: q_basis.len(),
        root_dim: 0,
    };
    debug_assert!(diag.interp_dim >= cfg.mu, "structural kernel bound");
    let root = if code.ctx().has_zero_derivation() {
        root_find_twisted(code, &q_basis, degree_bound)
    } else {
        root_find_general(code, &q_basis, degree_bound)
    }?;
    let outcome = match root {
        None => DecodeOutcome::Failure(FailureKind::Inconsistent),
        Some((particular, basis)) => {
            diag.root_dim = basis.len();
            match cfg.mode {
                Mode::List => DecodeOutcome::List { particular, basis },
                Mode::Unique => {
                    if basis.is_empty() {
                        DecodeOutcome::Unique(particular)
                    } else {
                        DecodeOutcome::Failure(FailureKind::MultipleCandidates)
                    }
                }
            }
        }
    };
    Ok(DecodeResult {
        outcome,
        diag,
        interpolation_basis: q_basis,
    })
}

type AffineSolutions = Option<(SkewPolynomial, Vec<SkewPolynomial>)>;

/// Root finding for zero derivation: the banded σ-twisted linear system over
/// F_{q^m} in the unknown (f_0, σ^{-1}(f_1), ..., σ^{-k+1}(f_{k-1})).
fn root_find_twisted(
    code: &FlrsCode,
    q_basis: &[MultivariateSkewPolynomial],
    degree_bound: usize,
) -> Result<AffineSolutions> {
    let ctx = code.ctx();
    let k = code.dimension();
    let d_i = q_basis.len();
    let alpha = ctx.alpha();
    let mut sys = ExtMatrix::zeros(ctx, degree_bound * d_i, k);
    let mut rhs = vec![0; degree_bound * d_i];
    for a in 0..degree_bound {
        let sig_a_alpha = ctx.apply_aut(alpha, a as i64);
        for (u, q) in q_basis.iter().enumerate() {
            let row = a * d_i + u;
            rhs[row] = ctx.neg(ctx.apply_aut(q.component(0).coeff(a), -(a as i64)));
            for c in 0..k {
                if a < c || a - c > degree_bound - k {
                    continue;
                }
                let j = a - c;
                // B_j^(u)(σ^a(α)) = Σ_r q_{r,j} (σ^a(α))^{r-1}, then σ^{-a}
                let mut val = 0;
                for r in (1..=q.s()).rev() {
                    val = ctx.add(ctx.mul(val, sig_a_alpha), q.component(r).coeff(j));
                }
                sys[(row, c)] = ctx.apply_aut(val, -(a as i64));
            }
        }
    }
    let Some((xp, hom)) = linalg::solve(&sys, &rhs) else {
        return Ok(None);
    };
    let untwist = |v: &[Elem]| {
        let coeffs: Vec<Elem> = v
            .iter()
            .enumerate()
            .map(|(i, &c)| ctx.apply_aut(c, i as i64))
            .collect();
        SkewPolynomial::from_coeffs(ctx, coeffs)
    };
    Ok(Some((
        untwist(&xp),
        hom.iter().map(|v| untwist(v)).collect(),
    )))
}

/// Root finding for arbitrary derivations: P(x) = Q_0 + Σ_r Q_r·f·α^{r−1}
/// has coefficients that are F_q-linear in the mk base-field coordinates of
/// f; solve the stacked F_q system symbolically.
fn root_find_general(
    code: &FlrsCode,
    q_basis: &[MultivariateSkewPolynomial],
    degree_bound: usize,
) -> Result<AffineSolutions> {
    let ctx = code.ctx();
    let k = code.dimension();
    let m = ctx.extension_degree();
    let prime = FieldContext::new(ctx.q(), 1)?;
    let unknowns = m * k;
    let rows = degree_bound * m * q_basis.len();
    let mut sys = ExtMatrix::zeros(&prime, rows, unknowns);
    let mut rhs = vec![0; rows];

    // the homogeneous part evaluated on each F_q-unit coordinate of f
    let mut col = 0;
    for i in 0..k {
        for t in 0..m {
            let mut coeffs = vec![0; i + 1];
            coeffs[i] = ctx.collapse(&{
                let mut digits = vec![0u32; m];
                digits[t] = 1;
                digits
            });
            let unit = SkewPolynomial::from_coeffs(ctx, coeffs);
            let mut row = 0;
            for q in q_basis {
                let p_hom = plug_homogeneous(q, &unit)?;
                for a in 0..degree_bound {
                    for &digit in &ctx.expand(p_hom.coeff(a)) {
                        sys[(row, col)] = digit as Elem;
                        row += 1;
                    }
                }
            }
            col += 1;
        }
    }
    let mut row = 0;
    for q in q_basis {
        for a in 0..degree_bound {
            for &digit in &ctx.expand(q.component(0).coeff(a)) {
                rhs[row] = prime.neg(digit as Elem);
                row += 1;
            }
        }
    }
    let Some((xp, hom)) = linalg::solve(&sys, &rhs) else {
        return Ok(None);
    };
    let assemble = |v: &[Elem]| {
        let coeffs: Vec<Elem> = (0..k)
            .map(|i| {
                let digits: Vec<u32> = (0..m).map(|t| v[i * m + t] as u32).collect();
                ctx.collapse(&digits)
            })
            .collect();
        SkewPolynomial::from_coeffs(ctx, coeffs)
    };
    let particular = assemble(&xp);
    // The homogeneous space is a right F_{q^m}-module (replacing f by f·c
    // leaves Σ Q_r·f·c·α^{r−1} = (Σ Q_r·f·α^{r−1})·c); compress the F_q
    // basis into a right basis over the extension field.
    let hom_polys: Vec<SkewPolynomial> = hom.iter().map(|v| assemble(v)).collect();
    let mut right_basis: Vec<SkewPolynomial> = Vec::new();
    let mut span = Vec::new(); // F_q row space of coefficient digit vectors
    let flatten = |g: &SkewPolynomial| {
        let mut v = Vec::with_capacity(unknowns);
        for i in 0..k {
            for d in ctx.expand(g.coeff(i)) {
                v.push(d as Elem);
            }
        }
        v
    };
    let in_span = |span: &ExtMatrix, v: &[Elem]| {
        if span.rows() == 0 {
            return false;
        }
        let mut stacked = ExtMatrix::zeros(&prime, span.rows() + 1, span.cols());
        for i in 0..span.rows() {
            for j in 0..span.cols() {
                stacked[(i, j)] = span[(i, j)];
            }
        }
        for (j, &x) in v.iter().enumerate() {
            stacked[(span.rows(), j)] = x;
        }
        stacked.rank() == span.rank()
    };
    let mut span_mat = ExtMatrix::zeros(&prime, 0, unknowns);
    for g in &hom_polys {
        let v = flatten(g);
        if in_span(&span_mat, &v) {
            continue;
        }
        right_basis.push(g.clone());
        // add the whole right-module orbit g·α^j to the span
        let mut scaled = g.clone();
        for _ in 0..m {
            span.push(flatten(&scaled));
            scaled = scaled.scale_right(ctx.alpha());
        }
        span_mat = ExtMatrix::from_rows(&prime, &span);
    }
    debug_assert_eq!(
        right_basis.len() * m,
        hom_polys.len(),
        "homogeneous space must be a right F_{{q^m}}-module"
    );
    Ok(Some((particular, right_basis)))
}

/// Q(x, f, fα, ...) minus its constant component: Σ_r Q_r·f·α^{r−1}.
fn plug_homogeneous(
    q: &MultivariateSkewPolynomial,
    f: &SkewPolynomial,
) -> Result<SkewPolynomial> {
    let ctx = f.ctx();
    let alpha = ctx.alpha();
    let mut acc = SkewPolynomial::zero(ctx);
    let mut fa = f.clone();
    for r in 1..=q.s() {
        acc = acc.add(&q.component(r).mul(&fa)?);
        if r < q.s() {
            fa = fa.scale_right(alpha);
        }
    }
    Ok(acc)
}

/// Decode a skew-metric received word of an FSRS code by mapping it to the
/// matched FLRS decoding problem through the inverse isometry.
pub fn fsrs_decode(
    code: &FsrsCode,
    received: &MatrixTuple,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    let mapped = codes::isometry_inv(received)?;
    decode(code.flrs(), &mapped, cfg)
}

/// Heuristic failure-probability bound k·(k/q^m)^μ as an exact fraction
/// (numerator, denominator), plus its f64 value.
pub fn failure_bound(k: usize, q: u64, m: usize, mu: usize) -> (num_bigint::BigUint, num_bigint::BigUint) {
    use num_bigint::BigUint;
    let num = BigUint::from(k).pow(mu as u32 + 1);
    let den = BigUint::from(q).pow((m * mu) as u32);
    (num, den)
}

pub fn failure_bound_f64(k: usize, q: u64, m: usize, mu: usize) -> f64 {
    let (num, den) = failure_bound(k, q, m, mu);
    biguint_to_f64(&num) / biguint_to_f64(&den)
}

fn biguint_to_f64(x: &num_bigint::BigUint) -> f64 {
    x.to_string().parse().unwrap_or(f64::INFINITY)
}

/// Asymptotic normalized decoding radius τ(R) for a uniform folding
/// parameter, maximized over the interpolation parameter s <= h.
pub fn normalized_radius(h: usize, rate: f64, variant: Variant) -> f64 {
    let mut best: f64 = 0.0;
    for s in 1..=h {
        let s_f = s as f64;
        let tau = match variant {
            Variant::Standard => {
                s_f / (s_f + 1.0) * (1.0 - h as f64 * rate / (h as f64 - s_f + 1.0))
            }
            Variant::HighRate => {
                s_f / (s_f + 1.0) * (h as f64 / (h as f64 + s_f - 1.0)) * (1.0 - rate)
            }
        };
        best = best.max(tau);
    }
    best.max(0.0)
}

/// τ(R) over a rate grid, for each variant plus the Singleton (1−R) and
/// classical unique-decoding ((1−R)/2) reference lines.
pub fn normalized_radius_curve(h: usize, rates: &[f64]) -> Vec<CurvePoint> {
    rates
        .iter()
        .map(|&rate| CurvePoint {
            rate,
            standard: normalized_radius(h, rate, Variant::Standard),
            high_rate: normalized_radius(h, rate, Variant::HighRate),
            singleton: 1.0 - rate,
            unique: (1.0 - rate) / 2.0,
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct CurvePoint {
    pub rate: f64,
    pub standard: f64,
    pub high_rate: f64,
    pub singleton: f64,
    pub unique: f64,
}

/// Finite-length decoding radius as an exact fraction t_max_num/t_max_den:
/// errors of weight t strictly below it are decodable regardless of their
/// decomposition; for uniform folding this is the exact radius.
pub fn radius_bound(
    h: &[usize],
    n_folded: &[usize],
    k: usize,
    s: usize,
    variant: Variant,
    worst_case: bool,
) -> (i128, i128) {
    let cap = point_count(h, n_folded, s, variant) as i128 - k as i128 + 1;
    let h_ref = if worst_case {
        *h.iter().max().unwrap()
    } else {
        *h.iter().min().unwrap()
    } as i128;
    let weight = match variant {
        Variant::Standard => h_ref - s as i128 + 1,
        Variant::HighRate => h_ref + s as i128 - 1,
    };
    (s as i128 * cap, (s as i128 + 1) * weight)
}
