//! Thue–Morse, k-pattern and general (q, m, ω)-pattern sequences, optionally
//! rarefied along an integer polynomial.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::digits::{count_pattern, digit_sum, BigNat, MAX_BASE};
use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;

/// Largest modulus supported; symbols are stored one per byte.
pub const MAX_MODULUS: u32 = 256;

const CHUNK: usize = 1 << 14;

/// Base q, modulus m and pattern ω defining ρ(n) = e_ω(n) mod m.
///
/// `omega` is stored most-significant digit first, exactly as the pattern is
/// written (so `[0, 1]` is the block "01").
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    q: u32,
    m: u32,
    omega: Vec<u32>,
}

impl PatternSpec {
    pub fn new(q: u32, m: u32, omega: Vec<u32>) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&q) {
            return Err(Error::InvalidBase(q));
        }
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidSpec(format!(
                "modulus {m} outside 2..={MAX_MODULUS}"
            )));
        }
        if omega.is_empty() {
            return Err(Error::InvalidSpec("empty pattern".into()));
        }
        if let Some(d) = omega.iter().find(|&&d| d >= q) {
            return Err(Error::InvalidSpec(format!("pattern digit {d} >= base {q}")));
        }
        if omega.iter().all(|&d| d == 0) {
            return Err(Error::InvalidSpec("pattern must not be all zeros".into()));
        }
        Ok(PatternSpec { q, m, omega })
    }

    /// Binary all-ones pattern of length k with modulus 2.
    pub fn all_ones(k: usize) -> Result<Self> {
        PatternSpec::new(2, 2, vec![1; k])
    }

    pub fn base(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn omega(&self) -> &[u32] {
        &self.omega
    }

    pub fn pattern_len(&self) -> usize {
        self.omega.len()
    }

    /// Some(k) when this is the binary all-ones pattern of length k mod 2.
    pub fn as_pattern_k(&self) -> Option<usize> {
        (self.q == 2 && self.m == 2 && self.omega.iter().all(|&d| d == 1))
            .then_some(self.omega.len())
    }

    fn omega_text(&self) -> String {
        let parts: Vec<String> = self.omega.iter().map(|d| d.to_string()).collect();
        parts.join(".")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    ThueMorse,
    PatternK,
    GeneralPattern,
}

/// Which sequence to generate and along which polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorDescriptor {
    kind: GeneratorKind,
    spec: PatternSpec,
    rarefaction: Option<IntPolynomial>,
}

impl GeneratorDescriptor {
    pub fn thue_morse() -> Self {
        GeneratorDescriptor {
            kind: GeneratorKind::ThueMorse,
            spec: PatternSpec::all_ones(1).unwrap(),
            rarefaction: None,
        }
    }

    /// p_k; k = 1 canonicalizes to Thue–Morse.
    pub fn pattern_k(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("pattern length must be >= 1".into()));
        }
        Ok(GeneratorDescriptor {
            kind: GeneratorKind::PatternK,
            spec: PatternSpec::all_ones(k)?,
            rarefaction: None,
        }
        .canonical())
    }

    pub fn general(spec: PatternSpec) -> Self {
        GeneratorDescriptor {
            kind: GeneratorKind::GeneralPattern,
            spec,
            rarefaction: None,
        }
        .canonical()
    }

    /// Rarefy along `p`. The identity polynomial is stored as no rarefaction.
    pub fn along(mut self, p: IntPolynomial) -> Self {
        self.rarefaction = (p != IntPolynomial::identity()).then_some(p);
        self
    }

    /// Collapses equivalent descriptions: binary all-ones patterns become
    /// `PatternK`, and `PatternK` with k = 1 becomes `ThueMorse`.
    pub fn canonical(mut self) -> Self {
        self.kind = match self.spec.as_pattern_k() {
            Some(1) => GeneratorKind::ThueMorse,
            Some(_) => GeneratorKind::PatternK,
            None => GeneratorKind::GeneralPattern,
        };
        self
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn spec(&self) -> &PatternSpec {
        &self.spec
    }

    pub fn rarefaction(&self) -> Option<&IntPolynomial> {
        self.rarefaction.as_ref()
    }

    pub fn alphabet(&self) -> u32 {
        self.spec.m
    }

    /// Symbol at index n: the base sequence evaluated at P(n).
    pub fn value_at(&self, n: &BigNat) -> Result<u8> {
        let arg = match &self.rarefaction {
            Some(p) => p.eval(n)?,
            None => n.clone(),
        };
        Ok(self.base_value(&arg))
    }

    fn base_value(&self, arg: &BigNat) -> u8 {
        match self.kind {
            GeneratorKind::ThueMorse => thue_morse(arg),
            _ => pattern_value(arg, &self.spec),
        }
    }
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::ThueMorse => write!(f, "tm")?,
            GeneratorKind::PatternK => write!(f, "pattern k={}", self.spec.pattern_len())?,
            GeneratorKind::GeneralPattern => write!(
                f,
                "general q={} m={} omega={}",
                self.spec.q,
                self.spec.m,
                self.spec.omega_text()
            )?,
        }
        if let Some(p) = &self.rarefaction {
            write!(f, " poly={}", p.to_literal())?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorDescriptor {
    type Err = Error;

    /// Parses `tm`, `rs`, `pattern k=K`, or `general q=Q m=M omega=D.D.D`,
    /// each optionally followed by `poly=c0,c1,...`.
    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let head = words
            .next()
            .ok_or_else(|| Error::Parse("empty generator descriptor".into()))?;
        let mut fields = std::collections::BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {w:?}")))?;
            if fields.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate field {k:?}")));
            }
        }
        let take_u32 = |fields: &mut std::collections::BTreeMap<String, String>, key: &str| {
            fields
                .remove(key)
                .ok_or_else(|| Error::Parse(format!("missing {key}= in {s:?}")))?
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad {key}= in {s:?}")))
        };
        let mut g = match head {
            "tm" | "thue-morse" => GeneratorDescriptor::thue_morse(),
            "rs" | "rudin-shapiro" => GeneratorDescriptor::pattern_k(2)?,
            "pattern" => GeneratorDescriptor::pattern_k(take_u32(&mut fields, "k")? as usize)?,
            "general" => {
                let q = take_u32(&mut fields, "q")?;
                let m = take_u32(&mut fields, "m")?;
                let omega = fields
                    .remove("omega")
                    .ok_or_else(|| Error::Parse(format!("missing omega= in {s:?}")))?;
                GeneratorDescriptor::general(PatternSpec::new(q, m, parse_omega(&omega, q)?)?)
            }
            other => return Err(Error::Parse(format!("unknown generator {other:?}"))),
        };
        if let Some(p) = fields.remove("poly") {
            g = g.along(p.parse()?);
        }
        if let Some(k) = fields.keys().next() {
            return Err(Error::Parse(format!("unexpected field {k:?} in {s:?}")));
        }
        Ok(g)
    }
}

/// Parses a most-significant-first pattern: dot-separated digits, or a plain
/// digit string when the base is at most 10.
pub fn parse_omega(text: &str, q: u32) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad pattern {text:?}"));
    if text.contains('.') || q > 10 {
        text.split('.').map(|d| d.parse::<u32>().map_err(|_| bad())).collect()
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    }
}

/// Finite symbol string over {0, ..., m-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    symbols: Vec<u8>,
    alphabet: u32,
    provenance: Option<GeneratorDescriptor>,
}

impl Sequence {
    /// Wraps raw symbols, e.g. data read from a file or a test vector.
    pub fn from_symbols(symbols: Vec<u8>, alphabet: u32) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&alphabet) {
            return Err(Error::InvalidSpec(format!("alphabet size {alphabet}")));
        }
        if let Some(s) = symbols.iter().find(|&&s| s as u32 >= alphabet) {
            return Err(Error::InvalidSpec(format!(
                "symbol {s} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Sequence {
            symbols,
            alphabet,
            provenance: None,
        })
    }

    pub fn binary(symbols: Vec<u8>) -> Result<Self> {
        Sequence::from_symbols(symbols, 2)
    }

    pub fn with_provenance(mut self, g: GeneratorDescriptor) -> Self {
        self.provenance = Some(g);
        self
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn provenance(&self) -> Option<&GeneratorDescriptor> {
        self.provenance.as_ref()
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet == 2
    }

    pub(crate) fn require_binary(&self) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::NonBinary(self.alphabet))
        }
    }

    pub(crate) fn require_len(&self, n: usize, min: usize) -> Result<()> {
        if n < min || n > self.len() {
            return Err(Error::out_of_range(n, format!("{min}..={}", self.len())));
        }
        Ok(())
    }
}

/// t(n) = s_1(n) mod 2.
pub fn thue_morse(n: &BigNat) -> u8 {
    (digit_sum(n, 2).expect("base 2 is valid") & 1) as u8
}

/// e_ω(n) mod m.
pub fn pattern_value(n: &BigNat, spec: &PatternSpec) -> u8 {
    (count_pattern(n, spec) % spec.m as u64) as u8
}

/// The first `len` symbols of the described sequence.
///
/// Terms are evaluated independently in parallel chunks and assembled in
/// index order; if the polynomial is negative somewhere the error names the
/// smallest such index.
pub fn generate_prefix(g: &GeneratorDescriptor, len: usize) -> Result<Sequence> {
    if len == 0 {
        return Err(Error::out_of_range(0, ">= 1"));
    }
    let chunks: Vec<Result<Vec<u8>>> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(len);
            (start..end)
                .map(|n| g.value_at(&BigNat::from(n)))
                .collect()
        })
        .collect();
    let mut symbols = Vec::with_capacity(len);
    for chunk in chunks {
        symbols.extend(chunk?);
    }
    Ok(Sequence {
        symbols,
        alphabet: g.alphabet(),
        provenance: Some(g.clone()),
    })
}
