//! Text formats: base-q integer encodings for field elements, polynomials
//! and codeword tuples, plus the TOML parameter files consumed by the CLI.

use std::sync::Arc;

use serde::Deserialize;

use crate::codes::{FlrsCode, FsrsCode};
use crate::decode::{DecoderConfig, Mode, Variant};
use crate::field::{Elem, FieldContext};
use crate::linalg::{ExtMatrix, MatrixTuple};
use crate::skew::SkewPolynomial;
use crate::{Error, Result};

/// Polynomial as space-separated base-q integers, lowest degree first; the
/// zero polynomial is a single "0".
pub fn write_poly(f: &SkewPolynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_poly(ctx: &Arc<FieldContext>, text: &str) -> Result<SkewPolynomial> {
    let coeffs = parse_elems(ctx, text)?;
    Ok(SkewPolynomial::from_coeffs(ctx, coeffs))
}

fn parse_elems(ctx: &FieldContext, text: &str) -> Result<Vec<Elem>> {
    text.split_whitespace()
        .map(|tok| {
            let v: Elem = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad element literal {tok:?}")))?;
            ctx.validate(v)?;
            Ok(v)
        })
        .collect()
}

/// Tuple as one line per block holding the unfolded (column-major) symbols.
pub fn write_tuple(t: &MatrixTuple) -> String {
    let mut out = String::new();
    for block in crate::codes::unfold(t) {
        let line: Vec<String> = block.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_tuple(
    ctx: &Arc<FieldContext>,
    h: &[usize],
    n_folded: &[usize],
    text: &str,
) -> Result<MatrixTuple> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.len() != h.len() {
        return Err(Error::Parse(format!(
            "expected {} block lines, found {}",
            h.len(),
            lines.len()
        )));
    }
    let mut blocks = Vec::with_capacity(h.len());
    for ((line, &hi), &ni) in lines.iter().zip(h).zip(n_folded) {
        let vals = parse_elems(ctx, line)?;
        if vals.len() != hi * ni {
            return Err(Error::Parse(format!(
                "block expects {} symbols, found {}",
                hi * ni,
                vals.len()
            )));
        }
        blocks.push(crate::codes::fold_block(ctx, &vals, hi)?);
    }
    MatrixTuple::new(blocks)
}

pub fn write_matrix(m: &ExtMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Code parameter file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeConfig {
    pub q: u64,
    pub m: usize,
    #[serde(default = "default_u")]
    pub u: usize,
    /// Derivation scalar, base-q integer encoding.
    #[serde(default)]
    pub d: Elem,
    /// Exponents e with a_i = d + α^e; defaults to 0, 1, ..., ℓ−1.
    #[serde(default)]
    pub a_indices: Option<Vec<u64>>,
    pub h: Vec<usize>,
    #[serde(rename = "N")]
    pub n_folded: Vec<usize>,
    pub k: usize,
    /// Interpret the code as a folded skew Reed–Solomon code (remainder
    /// evaluation, skew metric); needs uniform h and zero derivation.
    #[serde(default)]
    pub skew: bool,
}

fn default_u() -> usize {
    1
}

impl CodeConfig {
    pub fn context(&self) -> Result<Arc<FieldContext>> {
        let u = if self.m == 1 { 0 } else { self.u };
        FieldContext::with_params(self.q, self.m, u, self.d)
    }

    pub fn eval_params(&self, ctx: &Arc<FieldContext>) -> Result<Vec<Elem>> {
        match &self.a_indices {
            None => ctx.conjugacy_representatives(self.h.len()),
            Some(idx) => {
                if idx.len() != self.h.len() {
                    return Err(Error::InvalidParameter(
                        "a_indices length must match the block count".into(),
                    ));
                }
                Ok(idx
                    .iter()
                    .map(|&e| ctx.add(ctx.derivation_scalar(), ctx.pow(ctx.alpha(), e)))
                    .collect())
            }
        }
    }

    pub fn build(&self) -> Result<FlrsCode> {
        let ctx = self.context()?;
        let a = self.eval_params(&ctx)?;
        FlrsCode::new(&ctx, a, self.h.clone(), self.n_folded.clone(), self.k)
    }

    pub fn build_fsrs(&self) -> Result<FsrsCode> {
        let ctx = self.context()?;
        let a = self.eval_params(&ctx)?;
        let h = self.uniform_h()?;
        FsrsCode::new(&ctx, a, h, self.n_folded.clone(), self.k)
    }

    pub fn uniform_h(&self) -> Result<usize> {
        let h = self.h[0];
        if self.h.iter().any(|&x| x != h) {
            return Err(Error::InvalidParameter(
                "skew codes need a uniform folding parameter".into(),
            ));
        }
        Ok(h)
    }
}

/// Decoder section of a config file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoderSection {
    pub s: usize,
    #[serde(default = "default_mu")]
    pub mu: usize,
    #[serde(default = "default_variant")]
    pub variant: String,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mu() -> usize {
    1
}
fn default_variant() -> String {
    "standard".into()
}
fn default_mode() -> String {
    "unique".into()
}

pub fn parse_variant(s: &str) -> Result<Variant> {
    match s {
        "standard" => Ok(Variant::Standard),
        "high-rate" | "high_rate" => Ok(Variant::HighRate),
        other => Err(Error::Parse(format!(
            "unknown variant {other:?}; expected standard or high-rate"
        ))),
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "list" => Ok(Mode::List),
        "unique" => Ok(Mode::Unique),
        other => Err(Error::Parse(format!(
            "unknown mode {other:?}; expected list or unique"
        ))),
    }
}

impl DecoderSection {
    pub fn build(&self) -> Result<DecoderConfig> {
        Ok(DecoderConfig {
            s: self.s,
            mu: self.mu,
            variant: parse_variant(&self.variant)?,
            mode: parse_mode(&self.mode)?,
        })
    }
}

/// Channel section of a campaign file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    pub t: usize,
    #[serde(default)]
    pub decodable_only: bool,
    #[serde(default)]
    pub decompositions: Option<Vec<Vec<usize>>>,
}

impl ChannelSection {
    pub fn spec(&self) -> crate::sim::ErrorSpec {
        use crate::sim::{DecompositionFilter, ErrorSpec};
        let filter = match (&self.decompositions, self.decodable_only) {
            (Some(list), _) => DecompositionFilter::Explicit(list.clone()),
            (None, true) => DecompositionFilter::DecodableOnly,
            (None, false) => DecompositionFilter::All,
        };
        ErrorSpec { t: self.t, filter }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
}

/// Full campaign file: code + decoder + channel + run sections.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub code: CodeConfig,
    pub decoder: DecoderSection,
    pub channel: ChannelSection,
    pub run: RunSection,
}

pub fn parse_code_config(text: &str) -> Result<CodeConfig> {
    toml::from_str(text).map_err(|e| Error::Parse(format!("code config: {e}")))
}

pub fn parse_campaign_config(text: &str) -> Result<CampaignConfig> {
    toml::from_str(text).map_err(|e| Error::Parse(format!("campaign config: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn poly_roundtrip() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let f = SkewPolynomial::from_coeffs(&ctx, vec![3, 0, 7]);
        assert_eq!(write_poly(&f), "3 0 7");
        assert_eq!(parse_poly(&ctx, "3 0 7").unwrap(), f);
        let z = SkewPolynomial::zero(&ctx);
        assert_eq!(write_poly(&z), "0");
        assert!(parse_poly(&ctx, "3 0 7").unwrap().degree() == Some(2));
        assert!(parse_poly(&ctx, "9").is_err()); // out of range for F_9
        assert!(parse_poly(&ctx, "x").is_err());
    }

    #[test]
    fn tuple_roundtrip() {
        let ctx = FieldContext::new(3, 6).unwrap();
        let code = FlrsCode::standard(&ctx, vec![3, 2], vec![2, 2], 2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let cw = code.encode(&code.random_message(&mut rng)).unwrap();
        let text = write_tuple(&cw);
        let back = parse_tuple(&ctx, code.folding(), code.folded_lengths(), &text).unwrap();
        assert_eq!(back, cw);
        assert!(parse_tuple(&ctx, code.folding(), code.folded_lengths(), "1 2 3\n").is_err());
    }

    #[test]
    fn code_config_parsing() {
        let cfg = parse_code_config(
            r#"
            q = 3
            m = 6
            h = [3, 2]
            N = [2, 3]
            k = 2
            "#,
        )
        .unwrap();
        let code = cfg.build().unwrap();
        assert_eq!(code.min_distance(), 5);
        assert_eq!(code.evaluation_params(), &[1, code.ctx().alpha()]);
        // unknown keys are rejected
        assert!(parse_code_config("q = 3\nm = 6\nh = [3]\nN = [2]\nk = 2\nbogus = 1").is_err());
    }

    #[test]
    fn campaign_config_parsing() {
        let cfg = parse_campaign_config(
            r#"
            [code]
            q = 3
            m = 6
            h = [3, 2]
            N = [2, 3]
            k = 2

            [decoder]
            s = 2
            mu = 1

            [channel]
            t = 2
            decodable_only = true

            [run]
            trials = 100
            seed = 7
            "#,
        )
        .unwrap();
        assert_eq!(cfg.run.trials, 100);
        let dec = cfg.decoder.build().unwrap();
        assert_eq!(dec.mode, Mode::Unique);
        assert_eq!(dec.variant, Variant::Standard);
        assert!(matches!(
            cfg.channel.spec().filter,
            crate::sim::DecompositionFilter::DecodableOnly
        ));
    }
}
