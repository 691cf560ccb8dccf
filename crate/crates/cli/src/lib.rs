//! Command implementations behind the `rarebit` binary.
//!
//! Every command returns `anyhow::Result`; [`exit_code`] maps a failure to
//! the process exit status: 1 for a failed check, 2 for bad input, 3 when a
//! result fails its own re-verification.

pub mod cache;
pub mod checkpoints;
pub mod report;
pub mod reproduce;
pub mod seqfile;

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use rarebit::expansion::{verify_annihilator, BivariatePolyF2};
use rarebit::measure::{measure, MeasureParams};
use rarebit::moc::moc_fast;
use rarebit::witness::{bound_certificate, find_witness, BoundCertificate, Witness};
use rarebit::{generate_prefix, Error, GeneratorDescriptor, IntPolynomial};

use cache::Cache;
use report::RunReport;
use seqfile::SequenceFile;

/// A check ran to completion and its answer was "no".
#[derive(Debug, thiserror::Error)]
#[error("check failed: {0}")]
pub struct CheckFailed(pub String);

/// A computed result did not survive its own re-verification.
#[derive(Debug, thiserror::Error)]
#[error("internal verification failure: {0}")]
pub struct InternalFailure(pub String);

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<CheckFailed>() {
            return 1;
        }
        if cause.is::<InternalFailure>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::SearchExhausted(_) | Error::CertificateRefused(_) => 1,
                _ => 2,
            };
        }
    }
    2
}

/// Builds a descriptor from a generator name plus flag values. The name may
/// already carry `key=value` fields.
pub fn descriptor_from_flags(
    generator: &str,
    k: Option<usize>,
    base: Option<u32>,
    modulus: Option<u32>,
    pattern: Option<&str>,
    poly: Option<&str>,
) -> Result<GeneratorDescriptor> {
    let mut text = generator.trim().to_string();
    let mut push = |key: &str, v: Option<String>| {
        if let Some(v) = v {
            write!(text, " {key}={v}").unwrap();
        }
    };
    push("k", k.map(|v| v.to_string()));
    push("q", base.map(|v| v.to_string()));
    push("m", modulus.map(|v| v.to_string()));
    push("omega", pattern.map(str::to_string));
    push("poly", poly.map(str::to_string));
    Ok(text.parse::<GeneratorDescriptor>()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerateOutcome {
    pub sha256: String,
    pub cache_hit: bool,
    pub len: usize,
}

/// Writes the length-`n` prefix of `g` to `out`, reusing the cache when given.
pub fn cmd_generate(g: &GeneratorDescriptor, n: usize, out: &Path, cache: Option<&Cache>) -> Result<GenerateOutcome> {
    if n == 0 {
        return Err(Error::Precondition("sequence length must be at least 1".into()).into());
    }
    let key = g.to_string();
    if let Some(c) = cache {
        if let Some(bytes) = c.get(&key, n)? {
            seqfile::write_atomic(out, &bytes)?;
            return Ok(GenerateOutcome { sha256: cache::sha256_hex(&bytes), cache_hit: true, len: n });
        }
    }
    let bytes = SequenceFile::new(generate_prefix(g, n)?).to_bytes();
    seqfile::write_atomic(out, &bytes)?;
    let sha256 = match cache {
        Some(c) => c.put(&key, n, &bytes)?,
        None => cache::sha256_hex(&bytes),
    };
    Ok(GenerateOutcome { sha256, cache_hit: false, len: n })
}

/// Runs one measure over a sequence file. Checkpoints default to the full length.
pub fn cmd_measure(file: &Path, name: &str, checkpoints: Option<Vec<usize>>, params: &MeasureParams) -> Result<RunReport> {
    let start = Instant::now();
    let m = measure(name)?;
    let seq = SequenceFile::read(file)?.sequence;
    let checkpoints = checkpoints.unwrap_or_else(|| vec![seq.len()]);
    if let Some(&last) = checkpoints.last() {
        if last > seq.len() {
            return Err(Error::OutOfRange { got: last, expected: format!("checkpoints ≤ file length {}", seq.len()) }.into());
        }
    }
    let mut report = RunReport::new("measure", m.columns())
        .param("file", file.display())
        .param("measure", name)
        .param("length", seq.len())
        .param("sequence", seq.provenance().map_or_else(|| "-".to_string(), |g| g.to_string()))
        .param("checkpoints", checkpoints.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
    report = match name {
        "moc" => report.param("engine", &params.engine),
        "expansion" => report.param("dmax", params.max_degree),
        "subword" | "blocks" => report.param("k", params.block_len),
        _ => report,
    };
    report.rows = m.rows(&seq, &checkpoints, params)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Whether the annihilator in `annihilator` kills the file's generating
/// function modulo x^len (default: the whole file).
pub fn cmd_verify(file: &Path, annihilator: &Path, len: Option<usize>) -> Result<bool> {
    let seq = SequenceFile::read(file)?.sequence;
    let text = std::fs::read_to_string(annihilator).with_context(|| format!("reading {}", annihilator.display()))?;
    let h = BivariatePolyF2::parse_exchange(&text)?;
    Ok(verify_annihilator(&h, &seq, len.unwrap_or(seq.len()))?)
}

pub fn describe_witness(w: &Witness) -> String {
    let mut out = String::new();
    match w {
        Witness::ThueMorse(t) => {
            writeln!(out, "scheme: thue-morse").unwrap();
            writeln!(out, "poly: {}", t.poly.to_literal()).unwrap();
            writeln!(out, "z: {}", t.z).unwrap();
            writeln!(out, "lambda: {}", t.lambda).unwrap();
            writeln!(out, "y: {}", t.y).unwrap();
            writeln!(out, "r: {}", t.r).unwrap();
            writeln!(out, "l0: {}", t.l0).unwrap();
        }
        Witness::Pattern(p) => {
            writeln!(out, "scheme: pattern").unwrap();
            writeln!(out, "poly: {}", p.poly.to_literal()).unwrap();
            writeln!(out, "k: {}", p.k).unwrap();
            writeln!(out, "z: {}", p.z).unwrap();
            writeln!(out, "lambda: {}", p.lambda).unwrap();
            writeln!(out, "a: {}", p.a).unwrap();
            writeln!(out, "u: {}", p.u).unwrap();
            writeln!(out, "y: {}", p.y).unwrap();
            writeln!(out, "s: {}", p.s).unwrap();
            writeln!(out, "l0: {}", p.l0).unwrap();
        }
    }
    out
}

#[derive(Debug)]
pub struct WitnessOutcome {
    pub normalization_shift: String,
    pub witness: Witness,
    pub certificate: Option<(BoundCertificate, usize)>,
}

/// Witness for `poly` (translated to nonnegative coefficients first) and, with
/// `certify`, a bound certificate at that N plus the measured M.
pub fn cmd_witness(poly: &IntPolynomial, k: usize, certify: Option<usize>) -> Result<WitnessOutcome> {
    if !poly.is_monic() {
        let lead = poly.coeffs().last().map_or_else(|| "0".to_string(), |c| c.to_string());
        return Err(Error::Precondition(format!(
            "leading coefficient of {} is {lead}; a monic polynomial is required",
            poly.to_literal()
        ))
        .into());
    }
    let (shift, q) = poly.normalize_nonnegative()?;
    let witness = find_witness(&q, k)?;
    if !witness.verify_at(witness.l0())? {
        return Err(InternalFailure(format!("witness fails its own check at l0 = {}", witness.l0())).into());
    }
    let certificate = match certify {
        None => None,
        Some(n) => {
            let base = if k == 1 { GeneratorDescriptor::thue_morse() } else { GeneratorDescriptor::pattern_k(k)? };
            let cert = bound_certificate(&base.along(poly.clone()), n)?;
            let seq = generate_prefix(&cert.certified_descriptor(), n)?;
            let m = moc_fast(&seq, n)?.m;
            if cert.bound > m as u64 {
                return Err(InternalFailure(format!("certified bound {} exceeds measured M = {m}", cert.bound)).into());
            }
            Some((cert, m))
        }
    };
    Ok(WitnessOutcome { normalization_shift: shift.to_string(), witness, certificate })
}

/// Parses and re-verifies a certificate file.
pub fn cmd_recheck(path: &Path) -> Result<BoundCertificate> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert = BoundCertificate::from_text(&text)?;
    cert.recheck()?;
    Ok(cert)
}
