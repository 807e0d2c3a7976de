//! Sum-rank channel simulation: uniform fixed-weight error sampling,
//! decodable-pattern enumeration, Monte Carlo failure-rate campaigns and the
//! coefficient-distribution statistics.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::codes::FlrsCode;
use crate::decode::{self, DecodeOutcome, DecoderConfig, Mode, Variant};
use crate::linalg::{ExtMatrix, MatrixTuple};
use crate::{Error, Result};

/// Number of h×N matrices over F_{q^m} whose F_q-column rank is exactly t:
/// (# ordered F_q-independent t-tuples in F_{q^m}^h) × (# rank-t F_q-maps
/// F_q^N → F_q^t) / |GL_t(F_q)|.
pub fn count_rank_matrices(q: u64, m: usize, h: usize, n_cols: usize, t: usize) -> BigUint {
    assert!(t <= (m * h).min(n_cols), "rank out of range");
    let qm_h = BigUint::from(q).pow((m * h) as u32);
    let qn = BigUint::from(q).pow(n_cols as u32);
    let qt = BigUint::from(q).pow(t as u32);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for j in 0..t {
        let qj = BigUint::from(q).pow(j as u32);
        num *= &qm_h - &qj;
        num *= &qn - &qj;
        den *= &qt - &qj;
    }
    num / den
}

/// All weight decompositions (t_1..t_ℓ) of total weight t with t_i <= N_i.
pub fn enumerate_decompositions(caps: &[usize], t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; caps.len()];
    fn rec(caps: &[usize], idx: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=caps[idx].min(left) {
            cur[idx] = v;
            rec(caps, idx + 1, left - v, cur, out);
        }
        cur[idx] = 0;
    }
    rec(caps, 0, t, &mut cur, &mut out);
    out
}

/// One row of the decodable-pattern table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternRow {
    pub t: usize,
    pub decodable: usize,
    pub total: usize,
}

/// Count, per error weight, how many weight decompositions (capped at the
/// folded block lengths) satisfy the decoding-radius predicate.
pub fn enumerate_decodable_patterns(
    h: &[usize],
    n_folded: &[usize],
    k: usize,
    s: usize,
    mu: usize,
    mode: Mode,
    variant: Variant,
) -> Vec<PatternRow> {
    let t_max: usize = n_folded.iter().sum();
    (0..=t_max)
        .map(|t| {
            let decomps = enumerate_decompositions(n_folded, t);
            let decodable = decomps
                .iter()
                .filter(|d| decode::radius_ok(d, h, n_folded, k, s, mu, mode, variant))
                .count();
            PatternRow {
                t,
                decodable,
                total: decomps.len(),
            }
        })
        .collect()
}

/// Which weight decompositions an error spec admits.
#[derive(Clone, Debug)]
pub enum DecompositionFilter {
    /// Every decomposition of the weight (capped at the block lengths).
    All,
    /// Only decompositions decodable per the radius predicate of the
    /// decoder configuration.
    DecodableOnly,
    /// An explicit list.
    Explicit(Vec<Vec<usize>>),
}

/// Additive error model: fixed sum-rank weight with a prescribed set of
/// admissible decompositions.
#[derive(Clone, Debug)]
pub struct ErrorSpec {
    pub t: usize,
    pub filter: DecompositionFilter,
}

impl ErrorSpec {
    pub fn all(t: usize) -> Self {
        ErrorSpec {
            t,
            filter: DecompositionFilter::All,
        }
    }

    pub fn decodable(t: usize) -> Self {
        ErrorSpec {
            t,
            filter: DecompositionFilter::DecodableOnly,
        }
    }

    /// Admissible decompositions with their exact tuple counts; the
    /// sampling law draws a decomposition proportionally to its count, so
    /// the error is uniform over the union.
    pub fn resolve(&self, code: &FlrsCode, cfg: &DecoderConfig) -> Result<Vec<(Vec<usize>, BigUint)>> {
        let caps: Vec<usize> = code
            .folded_lengths()
            .iter()
            .zip(code.folding())
            .map(|(&ni, &hi)| ni.min(code.ctx().extension_degree() * hi))
            .collect();
        let all = enumerate_decompositions(&caps, self.t);
        let chosen: Vec<Vec<usize>> = match &self.filter {
            DecompositionFilter::All => all,
            DecompositionFilter::DecodableOnly => all
                .into_iter()
                .filter(|d| {
                    decode::radius_ok(
                        d,
                        code.folding(),
                        code.folded_lengths(),
                        code.dimension(),
                        cfg.s,
                        cfg.mu,
                        cfg.mode,
                        cfg.variant,
                    )
                })
                .collect(),
            DecompositionFilter::Explicit(list) => {
                for d in list {
                    if d.len() != code.block_count()
                        || d.iter().sum::<usize>() != self.t
                        || d.iter().zip(&caps).any(|(&ti, &cap)| ti > cap)
                    {
                        return Err(Error::InvalidParameter(format!(
                            "invalid explicit decomposition {d:?} for weight {}",
                            self.t
                        )));
                    }
                }
                list.clone()
            }
        };
        if chosen.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "no admissible weight decompositions for t = {}",
                self.t
            )));
        }
        let q = code.ctx().q();
        let m = code.ctx().extension_degree();
        Ok(chosen
            .into_iter()
            .map(|d| {
                let w = d
                    .iter()
                    .enumerate()
                    .map(|(i, &ti)| {
                        count_rank_matrices(q, m, code.folding()[i], code.folded_lengths()[i], ti)
                    })
                    .product();
                (d, w)
            })
            .collect())
    }
}

/// Uniform random element of the ambient tuple space.
pub fn random_word<R: Rng + ?Sized>(code: &FlrsCode, rng: &mut R) -> MatrixTuple {
    let ctx = code.ctx();
    let mut t = code.zero_word();
    for b in 0..t.len() {
        let blk = t.block_mut(b);
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                blk[(i, j)] = ctx.random(rng);
            }
        }
    }
    t
}

/// Uniform error with the exact given weight decomposition: block i is A·B
/// with A uniform among h_i×t_i matrices with F_q-independent columns and B
/// uniform among full-rank t_i×N_i matrices over F_q (rejection sampling).
/// Every rank-t_i matrix has exactly |GL_t(F_q)| such factorizations, so the
/// product is uniform over the rank-t_i stratum.
pub fn sample_error_with_decomposition<R: Rng + ?Sized>(
    code: &FlrsCode,
    decomposition: &[usize],
    rng: &mut R,
) -> Result<MatrixTuple> {
    if decomposition.len() != code.block_count() {
        return Err(Error::InvalidParameter(
            "decomposition length mismatch".into(),
        ));
    }
    let ctx = code.ctx();
    let q = ctx.q();
    let m = ctx.extension_degree();
    let mut out = Vec::with_capacity(code.block_count());
    for (i, &t) in decomposition.iter().enumerate() {
        let h = code.folding()[i];
        let n_cols = code.folded_lengths()[i];
        if t > (m * h).min(n_cols) {
            return Err(Error::InvalidParameter(format!(
                "rank {t} impossible in a {h}×{n_cols} block over F_{{q^{m}}}"
            )));
        }
        if t == 0 {
            out.push(ExtMatrix::zeros(ctx, h, n_cols));
            continue;
        }
        let a = loop {
            let mut cand = ExtMatrix::zeros(ctx, h, t);
            for r in 0..h {
                for c in 0..t {
                    cand[(r, c)] = ctx.random(rng);
                }
            }
            if cand.fq_rank() == t {
                break cand;
            }
        };
        let b = loop {
            let mut cand = ExtMatrix::zeros(ctx, t, n_cols);
            for r in 0..t {
                for c in 0..n_cols {
                    cand[(r, c)] = rng.gen_range(0..q);
                }
            }
            if cand.fq_rank() == t {
                break cand;
            }
        };
        out.push(a.matmul(&b)?);
    }
    MatrixTuple::new(out)
}

/// Uniform sample over the union of all tuples matching any admissible
/// decomposition of the spec.
pub fn sample_error<R: Rng + ?Sized>(
    code: &FlrsCode,
    resolved: &[(Vec<usize>, BigUint)],
    rng: &mut R,
) -> Result<MatrixTuple> {
    let total: BigUint = resolved.iter().map(|(_, w)| w).sum();
    let draw = random_biguint_below(&total, rng);
    let mut acc = BigUint::from(0u32);
    for (d, w) in resolved {
        acc += w;
        if draw < acc {
            return sample_error_with_decomposition(code, d, rng);
        }
    }
    unreachable!("draw below total")
}

// Rejection sampling masked to the bit length of the bound; acceptance is
// at least 1/2 per draw.
fn random_biguint_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(*bound > BigUint::from(0u32));
    let bytes = bound.to_bytes_be();
    let top_bits = 8 - bytes[0].leading_zeros();
    let mask: u8 = if top_bits >= 8 {
        0xFF
    } else {
        (1u8 << top_bits) - 1
    };
    loop {
        let mut buf = vec![0u8; bytes.len()];
        rng.fill_bytes(&mut buf);
        buf[0] &= mask;
        let cand = BigUint::from_bytes_be(&buf);
        if cand < *bound {
            return cand;
        }
    }
}

/// A random nonzero decodable decomposition of the code under the given
/// decoder parameters, uniform over the set of such decompositions.
pub fn random_decodable_decomposition<R: Rng + ?Sized>(
    code: &FlrsCode,
    s: usize,
    mu: usize,
    mode: Mode,
    variant: Variant,
    rng: &mut R,
) -> Vec<usize> {
    let caps = code.folded_lengths();
    let mut pool = Vec::new();
    for t in 1..=caps.iter().sum::<usize>() {
        for d in enumerate_decompositions(caps, t) {
            if decode::radius_ok(
                &d,
                code.folding(),
                caps,
                code.dimension(),
                s,
                mu,
                mode,
                variant,
            ) {
                pool.push(d);
            }
        }
    }
    assert!(!pool.is_empty(), "code has no decodable nonzero weights");
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Base-2 Kullback–Leibler divergence with the conventions
/// 0·log(0/q) = 0 and p·log(p/0) = ∞.
pub fn kl_divergence(p: &[f64], u: &[f64]) -> f64 {
    assert_eq!(p.len(), u.len(), "pmfs must share the alphabet");
    let mut acc = 0.0;
    for (&pi, &ui) in p.iter().zip(u) {
        if pi == 0.0 {
            continue;
        }
        if ui == 0.0 {
            return f64::INFINITY;
        }
        acc += pi * (pi / ui).log2();
    }
    acc
}

/// KL divergence of a count histogram against the uniform pmf on its
/// alphabet, in bits.
pub fn kl_vs_uniform_bits(hist: &[u64]) -> f64 {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let alphabet = hist.len() as f64;
    let mut acc = 0.0;
    for &c in hist {
        if c == 0 {
            continue;
        }
        let p = c as f64 / total as f64;
        acc += p * (p * alphabet).log2();
    }
    acc
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Per-trial RNG stream derived from the master seed by a splitmix64 chain;
/// documented so campaigns are reproducible across worker counts.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha12Rng {
    let mut state = master_seed ^ (trial.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_mut(8) {
        state = splitmix64(&mut state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha12Rng::from_seed(seed)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Outcome tallies and statistics of a Monte Carlo campaign.
#[derive(Clone, Debug)]
pub struct SimulationReport {
    pub trials: u64,
    pub master_seed: u64,
    /// Declared failures: root-finding space of positive dimension or an
    /// inconsistent system in unique mode.
    pub declared_failures: u64,
    /// Unique decodes that returned a wrong message.
    pub miscorrections: u64,
    /// Trials where the transmitted message fell outside the interpolation
    /// candidate space (must stay 0 for in-radius campaigns).
    pub sent_missing: u64,
    /// Per-decomposition tallies: (decomposition, trials, declared failures).
    pub per_decomposition: Vec<(Vec<usize>, u64, u64)>,
    /// Pooled histogram of the tracked B_0 coefficients over F_{q^m}.
    pub histogram: Vec<u64>,
    /// (trial count, KL divergence in bits) checkpoints.
    pub kl_trace: Vec<(u64, f64)>,
    pub heuristic_bound: f64,
}

impl SimulationReport {
    pub fn total_failures(&self) -> u64 {
        self.declared_failures + self.miscorrections
    }

    pub fn failure_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.total_failures() as f64 / self.trials as f64
        }
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.total_failures(), self.trials)
    }

    pub fn kl_bits(&self) -> f64 {
        kl_vs_uniform_bits(&self.histogram)
    }
}

struct ChunkTally {
    declared: u64,
    miscorrections: u64,
    sent_missing: u64,
    per_decomp: Vec<(u64, u64)>,
    histogram: Vec<u64>,
}

/// Deterministic Monte Carlo campaign: per trial draw a uniform message,
/// encode, add a uniform error of the spec, decode, and tally. Trials are
/// processed in fixed chunks that may run on any number of workers; the
/// aggregation order is fixed, so the report depends only on
/// (seed, trials, configuration).
pub fn run_campaign(
    code: &FlrsCode,
    cfg: &DecoderConfig,
    spec: &ErrorSpec,
    trials: u64,
    master_seed: u64,
) -> Result<SimulationReport> {
    cfg.validate(code)?;
    let resolved = spec.resolve(code, cfg)?;
    let ctx = code.ctx();
    let alphabet = ctx.size() as usize;
    let chunk_size: u64 = 1000;
    let chunks: u64 = trials.div_ceil(chunk_size);
    let tallies: Vec<ChunkTally> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * chunk_size;
            let hi = (lo + chunk_size).min(trials);
            let mut tally = ChunkTally {
                declared: 0,
                miscorrections: 0,
                sent_missing: 0,
                per_decomp: vec![(0, 0); resolved.len()],
                histogram: vec![0; alphabet],
            };
            for trial in lo..hi {
                let mut rng = trial_rng(master_seed, trial);
                let f = code.random_message(&mut rng);
                let c = code.encode(&f).expect("message in range");
                let e = sample_error(code, &resolved, &mut rng).expect("spec resolved");
                let (_, t_vec) = e.sum_rank_weight();
                let decomp_idx = resolved
                    .iter()
                    .position(|(d, _)| *d == t_vec)
                    .expect("sampled decomposition is admissible");
                tally.per_decomp[decomp_idx].0 += 1;
                let r = c.add(&e).expect("same shape");
                let res = decode::decode(code, &r, cfg).expect("valid decode parameters");
                for coeff in res.b0_coefficients(cfg.mu) {
                    tally.histogram[coeff as usize] += 1;
                }
                if !res.is_candidate(&f).expect("same context") {
                    tally.sent_missing += 1;
                }
                match &res.outcome {
                    DecodeOutcome::Unique(g) => {
                        if g != &f {
                            tally.miscorrections += 1;
                        }
                    }
                    DecodeOutcome::Failure(kind) => {
                        tally.declared += 1;
                        tally.per_decomp[decomp_idx].1 += 1;
                        let _ = kind;
                    }
                    DecodeOutcome::List { .. } => {
                        // list-mode campaigns count a missing sent message
                        // as the failure event; tallied above
                    }
                }
            }
            tally
        })
        .collect();

    let mut report = SimulationReport {
        trials,
        master_seed,
        declared_failures: 0,
        miscorrections: 0,
        sent_missing: 0,
        per_decomposition: resolved
            .iter()
            .map(|(d, _)| (d.clone(), 0, 0))
            .collect(),
        histogram: vec![0; alphabet],
        kl_trace: Vec::new(),
        heuristic_bound: decode::failure_bound_f64(
            code.dimension(),
            ctx.q(),
            ctx.extension_degree(),
            cfg.mu,
        ),
    };
    let mut done = 0u64;
    for (chunk, tally) in tallies.into_iter().enumerate() {
        report.declared_failures += tally.declared;
        report.miscorrections += tally.miscorrections;
        report.sent_missing += tally.sent_missing;
        for (slot, add) in report.per_decomposition.iter_mut().zip(&tally.per_decomp) {
            slot.1 += add.0;
            slot.2 += add.1;
        }
        for (h, a) in report.histogram.iter_mut().zip(&tally.histogram) {
            *h += a;
        }
        done = ((chunk as u64 + 1) * chunk_size).min(trials);
        report.kl_trace.push((done, kl_vs_uniform_bits(&report.histogram)));
    }
    debug_assert_eq!(done, trials);
    Ok(report)
}
