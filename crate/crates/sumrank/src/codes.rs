//! Folded linearized Reed-Solomon codes, folded skew Reed-Solomon codes,
//! folding operators, distance computations, and the isometry between the
//! sum-rank and skew metrics.

use std::sync::Arc;

use crate::field::{Elem, FieldContext, Tower};
use crate::linalg::{ExtMatrix, MatrixTuple};
use crate::skew::{self, SkewPolynomial};
use crate::{Error, Result};

/// Column-major reshape of a length-n vector into an h × (n/h) matrix.
pub fn fold_block(ctx: &Arc<FieldContext>, v: &[Elem], h: usize) -> Result<ExtMatrix> {
    if h == 0 || v.len() % h != 0 {
        return Err(Error::InvalidParameter(format!(
            "folding parameter {h} does not divide block length {}",
            v.len()
        )));
    }
    let n_cols = v.len() / h;
    let mut m = ExtMatrix::zeros(ctx, h, n_cols);
    for (idx, &x) in v.iter().enumerate() {
        m[(idx % h, idx / h)] = x;
    }
    Ok(m)
}

/// Inverse of [`fold_block`].
pub fn unfold_block(m: &ExtMatrix) -> Vec<Elem> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            v.push(m[(r, c)]);
        }
    }
    v
}

/// Blockwise folding of a blocked vector.
pub fn fold(ctx: &Arc<FieldContext>, blocks: &[Vec<Elem>], h: &[usize]) -> Result<MatrixTuple> {
    if blocks.len() != h.len() {
        return Err(Error::InvalidParameter(
            "need one folding parameter per block".into(),
        ));
    }
    let folded = blocks
        .iter()
        .zip(h)
        .map(|(b, &hi)| fold_block(ctx, b, hi))
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(folded)
}

/// Blockwise unfolding.
pub fn unfold(t: &MatrixTuple) -> Vec<Vec<Elem>> {
    t.blocks().iter().map(unfold_block).collect()
}

/// Minimum sum-rank distance of an FLRS code with folding parameters `h`,
/// folded block lengths `n_folded` and dimension `k`. Blocks are reordered
/// h-descending internally; the caller's order does not matter.
///
/// A nonzero codeword with z_i zero columns in block i evaluates the
/// message polynomial at Σ h_i·z_i F_q-independent points, so
/// Σ h_i·z_i <= k − 1; conversely a minimal annihilator realizes any such
/// zero pattern. The minimum distance is therefore N minus the largest
/// column count clearable within the degree budget k − 1, filled greedily
/// from the blocks with the smallest folding parameter.
pub fn min_sum_rank_distance(h: &[usize], n_folded: &[usize], k: usize) -> Result<usize> {
    let (h, nf) = sorted_desc(h, n_folded)?;
    let n_total: usize = h.iter().zip(&nf).map(|(a, b)| a * b).sum();
    if k == 0 || k > n_total {
        return Err(Error::InvalidParameter(format!(
            "dimension k={k} out of range 1..={n_total}"
        )));
    }
    let (zeroed, _, _) = max_zero_columns(&h, &nf, k);
    Ok(nf.iter().sum::<usize>() - zeroed)
}

/// Greedy fill of zero columns within the degree budget k − 1, cheapest
/// blocks (ascending h) first. Returns the column count, the index of the
/// first block not completely cleared, and the budget left at that block.
fn max_zero_columns(h_desc: &[usize], nf: &[usize], k: usize) -> (usize, usize, usize) {
    let mut budget = k - 1;
    let mut zeroed = 0;
    let mut stop = 0;
    for i in (0..h_desc.len()).rev() {
        let full = h_desc[i] * nf[i];
        if budget >= full {
            zeroed += nf[i];
            budget -= full;
        } else {
            zeroed += budget / h_desc[i];
            stop = i;
            budget %= h_desc[i];
            break;
        }
    }
    (zeroed, stop, budget)
}

/// The exponent of the Singleton-like bound |C| <= q^exponent for a
/// sum-rank-metric code in F_q^(h×N) with minimum distance d. Heights must
/// be sorted descending; `d` ranges over 1..=N+1 with N+1 giving exponent 0.
pub fn singleton_exponent(h: &[usize], n_folded: &[usize], d: usize) -> Result<usize> {
    if h.len() != n_folded.len() || h.is_empty() {
        return Err(Error::InvalidParameter("shape vectors must match".into()));
    }
    if h.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(
            "heights must be sorted descending".into(),
        ));
    }
    let n_total: usize = n_folded.iter().sum();
    if d == 0 || d > n_total + 1 {
        return Err(Error::InvalidParameter(format!(
            "distance {d} out of range 1..={}",
            n_total + 1
        )));
    }
    if d == n_total + 1 {
        return Ok(0);
    }
    // unique (j*, λ) with d − 1 = Σ_{i<j*} N_i + λ, 0 <= λ < N_{j*}
    let mut rest = d - 1;
    let mut jstar = 0;
    while rest >= n_folded[jstar] {
        rest -= n_folded[jstar];
        jstar += 1;
    }
    let lambda = rest;
    let tail: usize = (jstar..h.len()).map(|i| h[i] * n_folded[i]).sum();
    Ok(tail - h[jstar] * lambda)
}

/// Whether the shape attains the Singleton-like bound with equality.
///
/// With j* the block where the greedy zero-column fill stops, equality
/// holds iff h_{j*} divides k − Σ_{i>j*} h_i·N_i; this follows from the
/// equality chain behind the distance formula and is implied by (though
/// weaker than) "h_{j*} | k and h_{j*} | h_i·N_i for i > j*".
pub fn is_msrd_shape(h: &[usize], n_folded: &[usize], k: usize) -> Result<bool> {
    let (h, nf) = sorted_desc(h, n_folded)?;
    let n_total: usize = h.iter().zip(&nf).map(|(a, b)| a * b).sum();
    if k == 0 || k > n_total {
        return Err(Error::InvalidParameter(format!(
            "dimension k={k} out of range 1..={n_total}"
        )));
    }
    let (_, stop, leftover) = max_zero_columns(&h, &nf, k);
    Ok(leftover == h[stop] - 1)
}

fn sorted_desc(h: &[usize], n_folded: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if h.len() != n_folded.len() || h.is_empty() {
        return Err(Error::InvalidParameter("shape vectors must match".into()));
    }
    if h.iter().any(|&x| x == 0) || n_folded.iter().any(|&x| x == 0) {
        return Err(Error::InvalidParameter(
            "shape entries must be positive".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..h.len()).collect();
    idx.sort_by(|&a, &b| h[b].cmp(&h[a]));
    Ok((
        idx.iter().map(|&i| h[i]).collect(),
        idx.iter().map(|&i| n_folded[i]).collect(),
    ))
}

/// A folded linearized Reed-Solomon code.
///
/// Block i of a codeword is the h_i × N_i column-major folding of the
/// generalized operator evaluation of the message polynomial at the code
/// locators 1, α, ..., α^{n_i−1} with evaluation parameter a_i.
#[derive(Clone, Debug)]
pub struct FlrsCode {
    ctx: Arc<FieldContext>,
    a: Vec<Elem>,
    h: Vec<usize>,
    n_folded: Vec<usize>,
    n_unfolded: Vec<usize>,
    k: usize,
    locators: Vec<Vec<Elem>>,
}

impl FlrsCode {
    pub fn new(
        ctx: &Arc<FieldContext>,
        a: Vec<Elem>,
        h: Vec<usize>,
        n_folded: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        let ell = h.len();
        if ell == 0 || n_folded.len() != ell || a.len() != ell {
            return Err(Error::InvalidParameter(
                "a, h and N must be nonempty and of equal length".into(),
            ));
        }
        if h.iter().any(|&x| x == 0) || n_folded.iter().any(|&x| x == 0) {
            return Err(Error::InvalidParameter(
                "h and N entries must be positive".into(),
            ));
        }
        let m = ctx.extension_degree();
        let n_unfolded: Vec<usize> = h.iter().zip(&n_folded).map(|(&hi, &ni)| hi * ni).collect();
        for &ni in &n_unfolded {
            if ni > m {
                return Err(Error::InvalidParameter(format!(
                    "unfolded block length {ni} exceeds extension degree {m}; code locators \
                     would not be F_q-independent"
                )));
            }
        }
        if ell as u64 > ctx.nontrivial_class_count() {
            return Err(Error::InvalidParameter(format!(
                "{ell} blocks exceed the {} nontrivial conjugacy classes",
                ctx.nontrivial_class_count()
            )));
        }
        let n: usize = n_unfolded.iter().sum();
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "dimension k={k} out of range 1..={n}"
            )));
        }
        for &ai in &a {
            ctx.validate(ai)?;
            if ai == ctx.derivation_scalar() {
                return Err(Error::InvalidParameter(
                    "evaluation parameter lies in the trivial conjugacy class".into(),
                ));
            }
        }
        let locators = n_unfolded
            .iter()
            .map(|&ni| (0..ni).map(|j| ctx.pow(ctx.alpha(), j as u64)).collect())
            .collect();
        Ok(FlrsCode {
            ctx: Arc::clone(ctx),
            a,
            h,
            n_folded,
            n_unfolded,
            k,
            locators,
        })
    }

    /// Code with the default evaluation parameters d + α^i.
    pub fn standard(
        ctx: &Arc<FieldContext>,
        h: Vec<usize>,
        n_folded: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        let a = ctx.conjugacy_representatives(h.len())?;
        Self::new(ctx, a, h, n_folded, k)
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn block_count(&self) -> usize {
        self.h.len()
    }

    pub fn evaluation_params(&self) -> &[Elem] {
        &self.a
    }

    pub fn folding(&self) -> &[usize] {
        &self.h
    }

    pub fn folded_lengths(&self) -> &[usize] {
        &self.n_folded
    }

    pub fn unfolded_lengths(&self) -> &[usize] {
        &self.n_unfolded
    }

    pub fn folded_length_total(&self) -> usize {
        self.n_folded.iter().sum()
    }

    pub fn unfolded_length_total(&self) -> usize {
        self.n_unfolded.iter().sum()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Code locators 1, α, ..., α^{n_i−1} of block i.
    pub fn locators(&self, block: usize) -> &[Elem] {
        &self.locators[block]
    }

    /// Code rate k / (Σ h_i N_i).
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.unfolded_length_total() as f64
    }

    /// Whether the folding satisfies N_i <= h_i for every block (the
    /// convention of the folded-code definition; distance and decoding
    /// computations do not require it).
    pub fn def_folding_convention(&self) -> bool {
        self.h.iter().zip(&self.n_folded).all(|(&hi, &ni)| ni <= hi)
    }

    pub fn min_distance(&self) -> usize {
        min_sum_rank_distance(&self.h, &self.n_folded, self.k).expect("validated shape")
    }

    pub fn is_msrd(&self) -> bool {
        is_msrd_shape(&self.h, &self.n_folded, self.k).expect("validated shape")
    }

    /// Uniform random message polynomial of degree < k.
    pub fn random_message<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> SkewPolynomial {
        SkewPolynomial::random(&self.ctx, self.k, rng)
    }

    pub fn encode(&self, f: &SkewPolynomial) -> Result<MatrixTuple> {
        if f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        if f.degree().map_or(false, |d| d >= self.k) {
            return Err(Error::InvalidParameter(format!(
                "message degree {} exceeds k-1 = {}",
                f.degree().unwrap(),
                self.k - 1
            )));
        }
        let blocks: Vec<Vec<Elem>> = self
            .locators
            .iter()
            .zip(&self.a)
            .map(|(locs, &ai)| locs.iter().map(|&b| f.op_evaluate(b, ai)).collect())
            .collect();
        fold(&self.ctx, &blocks, &self.h)
    }

    /// The all-zero word of the ambient tuple space.
    pub fn zero_word(&self) -> MatrixTuple {
        MatrixTuple::zeros(&self.ctx, &self.h, &self.n_folded)
    }
}

/// Whether the evaluation parameters stay in pairwise distinct conjugacy
/// classes of the degree-h extension field F_{q^{mh}}.
///
/// a and b are conjugate there iff a/b lies in the image of c ↦ σ(c)/c,
/// the subgroup of index q^gcd(u,mh) − 1; membership reduces to the integer
/// condition x^E = 1 in F_{q^m} with E = (q^{mh}−1)/(q^gcd(u,mh)−1) reduced
/// modulo q^m − 1. Folding an SRS code with parameters that collapse classes
/// would void the weight-preserving isometry.
pub fn isometry_classes_distinct(ctx: &FieldContext, a: &[Elem], h: usize) -> Result<bool> {
    let q = ctx.q() as u128;
    let m = ctx.extension_degree();
    let u = ctx.aut_exponent();
    let mh = m * h;
    let g = if u == 0 {
        mh
    } else {
        let (mut x, mut y) = (u, mh);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let pow_u128 = |e: usize| -> u128 { (0..e).fold(1u128, |acc, _| acc * q) };
    let big_order = pow_u128(mh) - 1;
    let subgroup_index = pow_u128(g) - 1;
    let exponent = ((big_order / subgroup_index) % (pow_u128(m) - 1)) as u64;
    for i in 0..a.len() {
        for j in 0..i {
            let ratio = ctx.mul(a[i], ctx.inv(a[j])?);
            if ctx.pow(ratio, exponent) == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A folded skew Reed-Solomon code (zero derivation, uniform folding).
///
/// Codewords are remainder evaluations of the message polynomial at the
/// points β̂^j·a_i with β̂ = σ(α)/α, folded columnwise.
#[derive(Clone, Debug)]
pub struct FsrsCode {
    flrs: FlrsCode,
    h: usize,
    offset: Elem,
    b: Vec<Vec<Elem>>,
}

impl FsrsCode {
    pub fn new(
        ctx: &Arc<FieldContext>,
        a: Vec<Elem>,
        h: usize,
        n_folded: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        if !ctx.has_zero_derivation() {
            return Err(Error::NonzeroDerivation);
        }
        if !isometry_classes_distinct(ctx, &a, h)? {
            return Err(Error::InvalidParameter(
                "evaluation parameters fall into one conjugacy class of the degree-h \
                 extension field; the skew/sum-rank isometry does not apply"
                    .into(),
            ));
        }
        let flrs = FlrsCode::new(ctx, a, vec![h; n_folded.len()], n_folded, k)?;
        let offset = ctx.mul(
            ctx.apply_aut(ctx.alpha(), 1),
            ctx.inv(ctx.alpha()).expect("alpha nonzero"),
        );
        let b: Vec<Vec<Elem>> = flrs
            .unfolded_lengths()
            .iter()
            .zip(flrs.evaluation_params())
            .map(|(&ni, &ai)| {
                (0..ni)
                    .map(|j| ctx.mul(ai, ctx.pow(offset, j as u64)))
                    .collect()
            })
            .collect();
        let flat: Vec<Elem> = b.iter().flatten().copied().collect();
        if !skew::is_p_independent(ctx, &flat)? {
            return Err(Error::NotPIndependent);
        }
        Ok(FsrsCode { flrs, h, offset, b })
    }

    pub fn standard(
        ctx: &Arc<FieldContext>,
        h: usize,
        n_folded: Vec<usize>,
        k: usize,
    ) -> Result<Self> {
        let a = ctx.conjugacy_representatives(n_folded.len())?;
        Self::new(ctx, a, h, n_folded, k)
    }

    /// The FLRS code this code is the φ_α-image of.
    pub fn flrs(&self) -> &FlrsCode {
        &self.flrs
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.flrs.ctx()
    }

    pub fn folding(&self) -> usize {
        self.h
    }

    /// β̂ = σ(α)/α.
    pub fn offset(&self) -> Elem {
        self.offset
    }

    /// Evaluation points b^{(i)} = a_i·(1, β̂, β̂², ...), blockwise.
    pub fn eval_points(&self) -> &[Vec<Elem>] {
        &self.b
    }

    pub fn dimension(&self) -> usize {
        self.flrs.dimension()
    }

    /// Minimum skew distance N − ⌈k/h⌉ + 1.
    pub fn min_skew_distance(&self) -> usize {
        let n: usize = self.flrs.folded_length_total();
        n - self.flrs.dimension().div_ceil(self.h) + 1
    }

    /// The P-basis from the isometry construction:
    /// D_{a_i}(α^{jh})/α^{jh} = β̂^{jh}·a_i for j = 0..N_i, blockwise.
    pub fn skew_p_basis(&self) -> Vec<Vec<Elem>> {
        let ctx = self.ctx();
        self.flrs
            .folded_lengths()
            .iter()
            .zip(self.flrs.evaluation_params())
            .map(|(&ni, &ai)| {
                (0..ni)
                    .map(|j| ctx.mul(ai, ctx.pow(self.offset, (j * self.h) as u64)))
                    .collect()
            })
            .collect()
    }

    pub fn encode(&self, f: &SkewPolynomial) -> Result<MatrixTuple> {
        if f.ctx() != self.ctx() {
            return Err(Error::ContextMismatch);
        }
        if f.degree().map_or(false, |d| d >= self.flrs.dimension()) {
            return Err(Error::InvalidParameter("message degree too large".into()));
        }
        let ctx = self.ctx();
        let blocks: Vec<Vec<Elem>> = self
            .b
            .iter()
            .map(|points| {
                points
                    .iter()
                    .map(|&b| f.rem_evaluate(b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        fold(ctx, &blocks, self.flrs.folding())
    }

    pub fn random_message<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> SkewPolynomial {
        self.flrs.random_message(rng)
    }
}

/// The isometry φ_α: divide each unfolded coordinate by its locator power
/// (blockwise), mapping sum-rank structure onto skew structure. Requires a
/// uniform folding parameter.
pub fn isometry_map(x: &MatrixTuple) -> Result<MatrixTuple> {
    isometry(x, false)
}

/// Inverse of [`isometry_map`]: multiply the coordinates back.
pub fn isometry_inv(x: &MatrixTuple) -> Result<MatrixTuple> {
    isometry(x, true)
}

fn isometry(x: &MatrixTuple, inverse: bool) -> Result<MatrixTuple> {
    let ctx = x.ctx();
    let heights = x.heights();
    let h = heights[0];
    if heights.iter().any(|&hi| hi != h) {
        return Err(Error::InvalidParameter(
            "the isometry needs a uniform folding parameter".into(),
        ));
    }
    let alpha = ctx.alpha();
    let blocks = x
        .blocks()
        .iter()
        .map(|blk| {
            let mut out = blk.clone();
            for c in 0..blk.cols() {
                for r in 0..h {
                    let pw = ctx.pow(alpha, (c * h + r) as u64);
                    let factor = if inverse { pw } else { ctx.inv(pw)? };
                    out[(r, c)] = ctx.mul(out[(r, c)], factor);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(blocks)
}

/// Skew weight of a vector over the given field with respect to a
/// P-independent basis: deg lclm(x − b_i^{x_i}) over the nonzero entries.
pub fn skew_weight_vec(ctx: &Arc<FieldContext>, basis: &[Elem], x: &[Elem]) -> Result<usize> {
    if basis.len() != x.len() {
        return Err(Error::InvalidParameter(
            "basis and vector lengths differ".into(),
        ));
    }
    if !skew::is_p_independent(ctx, basis)? {
        return Err(Error::NotPIndependent);
    }
    let mut roots = Vec::new();
    for (&b, &xi) in basis.iter().zip(x) {
        if xi != 0 {
            roots.push(ctx.conjugate(b, xi)?);
        }
    }
    let l = skew::lclm_linear(ctx, &roots)?;
    Ok(l.degree().unwrap_or(0))
}

/// Skew weight of a matrix tuple with uniform folding parameter: collapse
/// each column to an element of F_{q^{mh}} through the tower basis, then
/// take the skew weight of the resulting vector over the large field.
pub fn skew_weight(x: &MatrixTuple, p_basis: &[Vec<Elem>], tower: &Tower) -> Result<usize> {
    let ctx = x.ctx();
    if tower.base() != ctx {
        return Err(Error::ContextMismatch);
    }
    let heights = x.heights();
    if heights.iter().any(|&hi| hi != tower.degree()) {
        return Err(Error::InvalidParameter(
            "tower degree must match the folding parameter".into(),
        ));
    }
    if p_basis.len() != x.len() || p_basis.iter().zip(x.widths()).any(|(b, w)| b.len() != w) {
        return Err(Error::InvalidParameter(
            "P-basis shape must match the tuple".into(),
        ));
    }
    let big = tower.big();
    let mut collapsed = Vec::new();
    let mut basis_flat = Vec::new();
    for (blk, basis) in x.blocks().iter().zip(p_basis) {
        for c in 0..blk.cols() {
            collapsed.push(tower.collapse(&blk.column(c)));
            basis_flat.push(tower.embed(basis[c]));
        }
    }
    skew_weight_vec(big, &basis_flat, &collapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn f729() -> Arc<FieldContext> {
        FieldContext::new(3, 6).unwrap()
    }

    #[test]
    fn folding_examples() {
        let ctx = FieldContext::new(3, 2).unwrap();
        // h = 1: row matrix, a no-op reshape
        let m = fold_block(&ctx, &[1, 2, 3], 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        // n = 12, h = 3: consecutive chunks become columns
        let v: Vec<Elem> = (0..12).map(|i| (i % 9) as Elem).collect();
        let m = fold_block(&ctx, &v, 3).unwrap();
        assert_eq!(m.column(0), vec![0, 1, 2]);
        assert_eq!(m.column(1), vec![3, 4, 5]);
        assert_eq!(m.column(3), vec![0, 1, 2]);
        assert_eq!(unfold_block(&m), v);
        // divisibility violations are rejected
        assert!(fold_block(&ctx, &[1, 2, 3], 2).is_err());
    }

    #[test]
    fn fold_unfold_roundtrip_random() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for _ in 0..20 {
            let blocks: Vec<Vec<Elem>> = vec![
                (0..6).map(|_| ctx.random(&mut rng)).collect(),
                (0..4).map(|_| ctx.random(&mut rng)).collect(),
            ];
            let t = fold(&ctx, &blocks, &[3, 2]).unwrap();
            assert_eq!(unfold(&t), blocks);
        }
    }

    #[test]
    fn table_one_distances() {
        // the seven (h, N) configurations with k = 2
        let cases: &[(&[usize], &[usize], usize)] = &[
            (&[3, 3], &[2, 2], 4),
            (&[2, 2], &[3, 3], 6),
            (&[3, 2], &[2, 3], 5),
            (&[3, 3, 3], &[2, 2, 2], 6),
            (&[2, 2, 2], &[3, 3, 3], 9),
            (&[3, 3, 2], &[2, 2, 3], 7),
            (&[3, 2, 2], &[2, 3, 3], 8),
        ];
        for &(h, nf, want) in cases {
            assert_eq!(
                min_sum_rank_distance(h, nf, 2).unwrap(),
                want,
                "h={h:?} N={nf:?}"
            );
        }
        // reordering the blocks does not change the distance
        assert_eq!(min_sum_rank_distance(&[2, 3], &[3, 2], 2).unwrap(), 5);
    }

    #[test]
    fn singleton_bound_cases() {
        // d = 1: the whole space
        assert_eq!(singleton_exponent(&[3, 3], &[2, 2], 1).unwrap(), 12);
        // d = N + 1: empty exponent
        assert_eq!(singleton_exponent(&[3, 3], &[2, 2], 5).unwrap(), 0);
        // Table-1 row 1 at its minimum distance: k may be at most 3
        assert_eq!(singleton_exponent(&[3, 3], &[2, 2], 4).unwrap(), 3);
        assert!(singleton_exponent(&[3, 3], &[2, 2], 6).is_err());
        assert!(singleton_exponent(&[2, 3], &[2, 2], 1).is_err()); // unsorted
    }

    #[test]
    fn msrd_verdicts_agree_with_bound_equality() {
        // dual check: the divisibility criterion must agree with direct
        // equality k == singleton exponent at the minimum distance
        let shapes: &[(&[usize], &[usize])] = &[
            (&[3, 3], &[2, 2]),
            (&[2, 2], &[3, 3]),
            (&[3, 2], &[2, 3]),
            (&[3, 3, 3], &[2, 2, 2]),
            (&[2, 2, 2], &[3, 3, 3]),
            (&[3, 3, 2], &[2, 2, 3]),
            (&[3, 2, 2], &[2, 3, 3]),
            (&[2, 2], &[1, 1]),
            (&[4, 2, 1], &[2, 2, 1]),
        ];
        for &(h, nf) in shapes {
            let n: usize = h.iter().zip(nf).map(|(a, b)| a * b).sum();
            for k in 1..=n {
                let verdict = is_msrd_shape(h, nf, k).unwrap();
                let d = min_sum_rank_distance(h, nf, k).unwrap();
                let (hs, ns) = sorted_desc(h, nf).unwrap();
                let expo = singleton_exponent(&hs, &ns, d).unwrap();
                assert!(k <= expo, "Singleton violated for h={h:?} N={nf:?} k={k}");
                assert_eq!(
                    verdict,
                    k == expo,
                    "divisibility vs bound equality for h={h:?} N={nf:?} k={k} (d={d})"
                );
            }
        }
        // explicit examples
        assert!(!is_msrd_shape(&[3, 3], &[2, 2], 2).unwrap());
        assert!(is_msrd_shape(&[2, 2], &[3, 3], 2).unwrap());
        assert!(is_msrd_shape(&[2, 2], &[1, 1], 2).unwrap());
    }

    #[test]
    fn encode_basics() {
        let ctx = f729();
        let code = FlrsCode::standard(&ctx, vec![3, 2], vec![2, 2], 2).unwrap();
        // zero message encodes to the zero tuple
        let zero = code.encode(&SkewPolynomial::zero(&ctx)).unwrap();
        assert_eq!(zero.sum_rank_weight().0, 0);
        // constant one: entries are the code locators
        let one = code.encode(&SkewPolynomial::one(&ctx)).unwrap();
        for (b, blk) in one.blocks().iter().enumerate() {
            let locs = code.locators(b);
            assert_eq!(&unfold_block(blk), locs);
        }
        // degree-k messages are rejected
        let too_big = SkewPolynomial::from_coeffs(&ctx, vec![1, 1, 1]);
        assert!(code.encode(&too_big).is_err());
    }

    #[test]
    fn encode_matches_entrywise_formula() {
        let ctx = f729();
        let code = FlrsCode::standard(&ctx, vec![3, 2], vec![2, 2], 2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..20 {
            let f = code.random_message(&mut rng);
            let c = code.encode(&f).unwrap();
            for (i, blk) in c.blocks().iter().enumerate() {
                let hi = code.folding()[i];
                let ai = code.evaluation_params()[i];
                for col in 0..blk.cols() {
                    for row in 0..hi {
                        let loc = ctx.pow(ctx.alpha(), (col * hi + row) as u64);
                        assert_eq!(blk[(row, col)], f.op_evaluate(loc, ai));
                    }
                }
            }
        }
    }

    #[test]
    fn encoding_is_linear() {
        let ctx = f729();
        let code = FlrsCode::standard(&ctx, vec![3, 2], vec![2, 2], 2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = code.random_message(&mut rng);
            let g = code.random_message(&mut rng);
            let sum = code.encode(&f.add(&g)).unwrap();
            let parts = code
                .encode(&f)
                .unwrap()
                .add(&code.encode(&g).unwrap())
                .unwrap();
            assert_eq!(sum, parts);
            // left scaling by a field element commutes with encoding
            let c = ctx.random(&mut rng);
            let scaled = code.encode(&f.scale_left(c)).unwrap();
            for (b1, b2) in scaled
                .blocks()
                .iter()
                .zip(code.encode(&f).unwrap().blocks())
            {
                for i in 0..b1.rows() {
                    for j in 0..b1.cols() {
                        assert_eq!(b1[(i, j)], ctx.mul(c, b2[(i, j)]));
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustive_min_distance_tiny_codes() {
        // q = 3, m = 2 shapes with at most 9^k codewords
        let ctx = FieldContext::new(3, 2).unwrap();
        let shapes: &[(&[usize], &[usize], usize)] = &[
            (&[2], &[1], 1),
            (&[1], &[2], 1),
            (&[1, 1], &[2, 2], 2),
            (&[2, 1], &[1, 2], 2),
            (&[1, 2], &[2, 1], 1),
        ];
        for &(h, nf, k) in shapes {
            let code = FlrsCode::standard(&ctx, h.to_vec(), nf.to_vec(), k).unwrap();
            let mut min_w = usize::MAX;
            let total = ctx.size().pow(k as u32);
            for idx in 1..total {
                let mut coeffs = Vec::new();
                let mut t = idx;
                for _ in 0..k {
                    coeffs.push(t % ctx.size());
                    t /= ctx.size();
                }
                let f = SkewPolynomial::from_coeffs(&ctx, coeffs);
                let c = code.encode(&f).unwrap();
                min_w = min_w.min(c.sum_rank_weight().0);
            }
            assert_eq!(min_w, code.min_distance(), "h={h:?} N={nf:?} k={k}");
        }
    }

    #[test]
    fn exhaustive_min_distance_nonzero_derivation() {
        let ctx = FieldContext::with_params(3, 2, 1, 5).unwrap();
        let code = FlrsCode::standard(&ctx, vec![1, 1], vec![2, 2], 2).unwrap();
        let mut min_w = usize::MAX;
        for idx in 1..81u64 {
            let f = SkewPolynomial::from_coeffs(&ctx, vec![idx % 9, idx / 9]);
            let c = code.encode(&f).unwrap();
            min_w = min_w.min(c.sum_rank_weight().0);
        }
        assert_eq!(min_w, code.min_distance());
    }

    #[test]
    fn construction_validation() {
        let ctx = f729();
        // block longer than m
        assert!(FlrsCode::standard(&ctx, vec![7], vec![1], 1).is_err());
        // too many blocks for q = 3, u = 1
        assert!(FlrsCode::standard(&ctx, vec![1, 1, 1], vec![1, 1, 1], 1).is_err());
        // k out of range
        assert!(FlrsCode::standard(&ctx, vec![3], vec![2], 7).is_err());
        // the paper's simulated h=(3,2) code violates N_i <= h_i but is valid
        let code = FlrsCode::standard(&ctx, vec![3, 2], vec![2, 3], 2).unwrap();
        assert!(!code.def_folding_convention());
        assert_eq!(code.min_distance(), 5);
    }

    #[test]
    fn isometry_examples() {
        let ctx = f729();
        // the locator tuple maps to the all-ones tuple
        let code = FlrsCode::standard(&ctx, vec![3, 3], vec![2, 2], 2).unwrap();
        let locs = code.encode(&SkewPolynomial::one(&ctx)).unwrap();
        let mapped = isometry_map(&locs).unwrap();
        for blk in mapped.blocks() {
            assert!(blk.data().iter().all(|&x| x == 1));
        }
        // inverse round-trip
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for _ in 0..10 {
            let mut t = MatrixTuple::zeros(&ctx, &[3, 3], &[2, 2]);
            for b in 0..2 {
                let blk = t.block_mut(b);
                for i in 0..blk.rows() {
                    for j in 0..blk.cols() {
                        blk[(i, j)] = ctx.random(&mut rng);
                    }
                }
            }
            assert_eq!(isometry_inv(&isometry_map(&t).unwrap()).unwrap(), t);
        }
        // 3 × (2|3) layout: entry (r, c) of each block is divided by
        // α^{(c·h)+r}, restarting at each block
        let mut t = MatrixTuple::zeros(&ctx, &[3, 3], &[2, 3]);
        for b in 0..2 {
            let blk = t.block_mut(b);
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    blk[(i, j)] = 1;
                }
            }
        }
        let phi = isometry_map(&t).unwrap();
        for blk in phi.blocks() {
            for c in 0..blk.cols() {
                for r in 0..3 {
                    let e = (c * 3 + r) as u64;
                    assert_eq!(blk[(r, c)], ctx.inv(ctx.pow(ctx.alpha(), e)).unwrap());
                }
            }
        }
        // nonuniform folding is rejected
        let bad = MatrixTuple::zeros(&ctx, &[3, 2], &[2, 2]);
        assert!(isometry_map(&bad).is_err());
    }

    #[test]
    fn skew_weight_basics() {
        let ctx = FieldContext::new(3, 4).unwrap();
        let code = FsrsCode::standard(&ctx, 2, vec![2], 1).unwrap();
        let tower = ctx.extension_tower(2).unwrap();
        let basis = code.skew_p_basis();
        // zero tuple has weight 0
        let zero = MatrixTuple::zeros(&ctx, &[2], &[2]);
        assert_eq!(skew_weight(&zero, &basis, &tower).unwrap(), 0);
        // a single nonzero column has weight 1
        let mut one = zero.clone();
        one.block_mut(0)[(0, 0)] = 1;
        assert_eq!(skew_weight(&one, &basis, &tower).unwrap(), 1);
        // weight is at most the Hamming weight of the collapsed vector
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut t = zero.clone();
            let blk = t.block_mut(0);
            for i in 0..2 {
                for j in 0..2 {
                    blk[(i, j)] = ctx.random(&mut rng);
                }
            }
            let hamming = (0..2)
                .filter(|&j| t.block(0).column(j).iter().any(|&x| x != 0))
                .count();
            let w = skew_weight(&t, &basis, &tower).unwrap();
            assert!(w <= hamming);
        }
    }

    #[test]
    fn isometry_preserves_weight() {
        // skw(φ_α(X)) = srw(X) on random tuples, single-block fast case
        let ctx = FieldContext::new(3, 4).unwrap();
        let code = FsrsCode::standard(&ctx, 2, vec![2], 1).unwrap();
        let tower = ctx.extension_tower(2).unwrap();
        let basis = code.skew_p_basis();
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        for _ in 0..200 {
            let mut t = MatrixTuple::zeros(&ctx, &[2], &[2]);
            let blk = t.block_mut(0);
            for i in 0..2 {
                for j in 0..2 {
                    blk[(i, j)] = ctx.random(&mut rng);
                }
            }
            let (srw, _) = t.sum_rank_weight();
            let skw = skew_weight(&isometry_map(&t).unwrap(), &basis, &tower).unwrap();
            assert_eq!(skw, srw);
        }
    }

    #[test]
    fn isometry_preserves_weight_two_blocks() {
        // the paper's parameter regime: odd folding keeps the evaluation
        // parameters in distinct classes of the extension field
        let ctx = f729();
        let code = FsrsCode::standard(&ctx, 3, vec![2, 2], 2).unwrap();
        let tower = ctx.extension_tower(3).unwrap();
        let basis = code.skew_p_basis();
        let mut rng = ChaCha12Rng::seed_from_u64(16);
        for _ in 0..40 {
            let mut t = MatrixTuple::zeros(&ctx, &[3, 3], &[2, 2]);
            for b in 0..2 {
                let blk = t.block_mut(b);
                for i in 0..3 {
                    for j in 0..2 {
                        blk[(i, j)] = ctx.random(&mut rng);
                    }
                }
            }
            let (srw, _) = t.sum_rank_weight();
            let skw = skew_weight(&isometry_map(&t).unwrap(), &basis, &tower).unwrap();
            assert_eq!(skw, srw);
        }
    }

    #[test]
    fn class_collapse_is_rejected() {
        // q=3, h=2: 1 and α become conjugate in F_{q^{2m}}, so the folded
        // SRS construction refuses the two-block shape
        let ctx = FieldContext::new(3, 2).unwrap();
        assert!(matches!(
            FsrsCode::standard(&ctx, 2, vec![1, 1], 1),
            Err(Error::InvalidParameter(_))
        ));
        let ctx6 = f729();
        let a = ctx6.conjugacy_representatives(2).unwrap();
        assert!(isometry_classes_distinct(&ctx6, &a, 3).unwrap());
        assert!(!isometry_classes_distinct(&ctx6, &a, 2).unwrap());
    }

    #[test]
    fn fsrs_encode_basics() {
        let ctx = f729();
        let code = FsrsCode::standard(&ctx, 3, vec![2, 2], 2).unwrap();
        // zero message
        let zero = code.encode(&SkewPolynomial::zero(&ctx)).unwrap();
        assert!(zero.blocks().iter().all(|b| b.is_zero()));
        // constant message: every entry equals the constant
        let c = 17 % ctx.size();
        let cw = code.encode(&SkewPolynomial::constant(&ctx, c)).unwrap();
        for blk in cw.blocks() {
            assert!(blk.data().iter().all(|&x| x == c));
        }
        // nonzero derivation contexts are rejected
        let ctxd = FieldContext::with_params(3, 6, 1, 5).unwrap();
        assert!(FsrsCode::standard(&ctxd, 3, vec![2, 2], 2).is_err());
    }

    #[test]
    fn fsrs_is_isometric_image_of_flrs() {
        let ctx = f729();
        let code = FsrsCode::standard(&ctx, 3, vec![2, 2], 2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..30 {
            let f = code.random_message(&mut rng);
            let skew_cw = code.encode(&f).unwrap();
            let lin_cw = code.flrs().encode(&f).unwrap();
            assert_eq!(skew_cw, isometry_map(&lin_cw).unwrap());
        }
    }

    #[test]
    fn min_skew_distance_formula() {
        let ctx = f729();
        let code = FsrsCode::standard(&ctx, 3, vec![2, 2], 3).unwrap();
        // k = h gives N
        assert_eq!(code.min_skew_distance(), 4);
        let code2 = FsrsCode::standard(&ctx, 3, vec![2, 2], 2).unwrap();
        assert_eq!(code2.min_skew_distance(), 4); // 4 − ⌈2/3⌉ + 1
    }

    #[test]
    fn exhaustive_min_skew_distance_tiny() {
        // q=3, m=4, h=2, N=(2): enumerate all q^{mk} codewords
        let ctx = FieldContext::new(3, 4).unwrap();
        let tower = ctx.extension_tower(2).unwrap();
        for k in [1usize, 2] {
            let code = FsrsCode::standard(&ctx, 2, vec![2], k).unwrap();
            let basis = code.skew_p_basis();
            let mut min_w = usize::MAX;
            let total = ctx.size().pow(k as u32);
            for idx in 1..total {
                let mut coeffs = Vec::new();
                let mut t = idx;
                for _ in 0..k {
                    coeffs.push(t % ctx.size());
                    t /= ctx.size();
                }
                let f = SkewPolynomial::from_coeffs(&ctx, coeffs);
                let cw = code.encode(&f).unwrap();
                min_w = min_w.min(skew_weight(&cw, &basis, &tower).unwrap());
            }
            assert_eq!(min_w, code.min_skew_distance(), "k={k}");
        }
    }
}
