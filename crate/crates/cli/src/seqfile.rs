//! `.rbsq` sequence files.
//!
//! A text header followed by a blank line and the packed payload:
//!
//! ```text
//! RBSQ1
//! alphabet: 2
//! length: 16
//! generator: tm
//!
//! <payload>
//! ```
//!
//! Symbols take ⌈log₂ m⌉ bits each (1 bit for m = 2) in one continuous
//! stream. Stream bit i is bit i mod 8 of byte i / 8 (LSB first), and symbol
//! n occupies stream bits n·w .. n·w + w − 1, low bit first.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rarebit::{GeneratorDescriptor, Sequence};

pub const MAGIC: &str = "RBSQ1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub sequence: Sequence,
}

/// Bits per symbol for an alphabet of size m.
pub fn symbol_width(alphabet: u32) -> u32 {
    32 - (alphabet - 1).leading_zeros()
}

pub fn pack(symbols: &[u8], alphabet: u32) -> Vec<u8> {
    let w = symbol_width(alphabet) as usize;
    let mut out = vec![0u8; (symbols.len() * w).div_ceil(8)];
    for (n, &s) in symbols.iter().enumerate() {
        for b in 0..w {
            if (s >> b) & 1 == 1 {
                let i = n * w + b;
                out[i / 8] |= 1 << (i % 8);
            }
        }
    }
    out
}

pub fn unpack(payload: &[u8], len: usize, alphabet: u32) -> Vec<u8> {
    let w = symbol_width(alphabet) as usize;
    (0..len)
        .map(|n| {
            (0..w).fold(0u8, |acc, b| {
                let i = n * w + b;
                acc | (((payload[i / 8] >> (i % 8)) & 1) << b)
            })
        })
        .collect()
}

impl SequenceFile {
    pub fn new(sequence: Sequence) -> Self {
        SequenceFile { sequence }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let s = &self.sequence;
        let generator = s.provenance().map_or_else(|| "-".to_string(), |g| g.to_string());
        let mut out = format!(
            "{MAGIC}\nalphabet: {}\nlength: {}\ngenerator: {generator}\n\n",
            s.alphabet(),
            s.len()
        )
        .into_bytes();
        out.extend(pack(s.symbols(), s.alphabet()));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let split = bytes
            .windows(2)
            .position(|w| w == b"\n\n")
            .context("missing blank line after the header")?;
        let header = std::str::from_utf8(&bytes[..split]).context("header is not UTF-8")?;
        let payload = &bytes[split + 2..];
        let mut lines = header.lines();
        if lines.next() != Some(MAGIC) {
            bail!("not a sequence file (expected magic {MAGIC})");
        }
        let (mut alphabet, mut length, mut generator) = (None, None, None);
        for line in lines {
            let (k, v) = line.split_once(':').with_context(|| format!("bad header line {line:?}"))?;
            let v = v.trim();
            match k.trim() {
                "alphabet" => alphabet = Some(v.parse::<u32>().context("bad alphabet")?),
                "length" => length = Some(v.parse::<usize>().context("bad length")?),
                "generator" if v != "-" => generator = Some(v.parse::<GeneratorDescriptor>()?),
                "generator" => {}
                other => bail!("unknown header field {other:?}"),
            }
        }
        let alphabet = alphabet.context("header lacks alphabet")?;
        let length = length.context("header lacks length")?;
        if alphabet < 2 {
            bail!("alphabet size {alphabet} must be at least 2");
        }
        let expected = (length * symbol_width(alphabet) as usize).div_ceil(8);
        if payload.len() != expected {
            bail!("payload has {} bytes, header implies {expected}", payload.len());
        }
        let mut sequence = Sequence::from_symbols(unpack(payload, length, alphabet), alphabet)?;
        if let Some(g) = generator {
            sequence = sequence.with_provenance(g);
        }
        Ok(SequenceFile { sequence })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_bytes(&bytes).with_context(|| format!("parsing {}", path.display()))
    }

    /// Writes through a temporary file in the target directory, then renames.
    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
