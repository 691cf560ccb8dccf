//! Complexity measures behind one interface, selectable by name.

use crate::error::{Error, Result};
use crate::expansion::{expansion_complexity, ExpansionComplexity, DEFAULT_MAX_DEGREE};
use crate::moc;
use crate::sequences::Sequence;
use crate::statistics::{correlation2, normality_deviation, subword_complexity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureParams {
    /// Degree bound for expansion complexity.
    pub max_degree: usize,
    /// Block length for `subword`, largest block length for `blocks`.
    pub block_len: usize,
    /// MOC engine name.
    pub engine: String,
}

impl Default for MeasureParams {
    fn default() -> Self {
        MeasureParams {
            max_degree: DEFAULT_MAX_DEGREE,
            block_len: 4,
            engine: "suffix-automaton".into(),
        }
    }
}

pub type Row = Vec<String>;

pub trait Measure: Send + Sync {
    fn name(&self) -> &'static str;

    fn columns(&self) -> &'static [&'static str];

    /// One or more rows per checkpoint. Checkpoints must be sorted.
    fn rows(&self, seq: &Sequence, checkpoints: &[usize], params: &MeasureParams) -> Result<Vec<Row>>;
}

pub struct Moc;
pub struct Expansion;
pub struct Correlation;
pub struct Subword;
pub struct Blocks;

impl Measure for Moc {
    fn name(&self) -> &'static str {
        "moc"
    }

    fn columns(&self) -> &'static [&'static str] {
        &["N", "M", "i", "j"]
    }

    fn rows(&self, seq: &Sequence, checkpoints: &[usize], params: &MeasureParams) -> Result<Vec<Row>> {
        let engine = moc::engine(&params.engine)?;
        Ok(engine
            .profile(seq, checkpoints)?
            .into_iter()
            .map(|r| {
                let (i, j) = r.witness.map_or((String::new(), String::new()), |(i, j)| (i.to_string(), j.to_string()));
                vec![r.n.to_string(), r.m.to_string(), i, j]
            })
            .collect())
    }
}

impl Measure for Expansion {
    fn name(&self) -> &'static str {
        "expansion"
    }

    fn columns(&self) -> &'static [&'static str] {
        &["N", "E", "status"]
    }

    fn rows(&self, seq: &Sequence, checkpoints: &[usize], params: &MeasureParams) -> Result<Vec<Row>> {
        checkpoints
            .iter()
            .map(|&n| {
                let r = expansion_complexity(seq, n, params.max_degree)?;
                let (e, status) = match &r {
                    ExpansionComplexity::Zero => ("0".to_string(), "zero-prefix".to_string()),
                    ExpansionComplexity::Value { degree, .. } => (degree.to_string(), "value".to_string()),
                    ExpansionComplexity::Exceeded { max_degree } => (String::new(), format!("exceeded>{max_degree}")),
                };
                Ok(vec![n.to_string(), e, status])
            })
            .collect()
    }
}

impl Measure for Correlation {
    fn name(&self) -> &'static str {
        "corr2"
    }

    fn columns(&self) -> &'static [&'static str] {
        &["N", "C2", "M", "d1", "d2"]
    }

    fn rows(&self, seq: &Sequence, checkpoints: &[usize], _params: &MeasureParams) -> Result<Vec<Row>> {
        checkpoints
            .iter()
            .map(|&n| {
                let r = correlation2(seq, n)?;
                Ok(vec![n.to_string(), r.value.to_string(), r.m.to_string(), r.d1.to_string(), r.d2.to_string()])
            })
            .collect()
    }
}

impl Measure for Subword {
    fn name(&self) -> &'static str {
        "subword"
    }

    fn columns(&self) -> &'static [&'static str] {
        &["N", "k", "p"]
    }

    fn rows(&self, seq: &Sequence, checkpoints: &[usize], params: &MeasureParams) -> Result<Vec<Row>> {
        checkpoints
            .iter()
            .map(|&n| {
                let b = subword_complexity(seq, n, params.block_len)?;
                Ok(vec![n.to_string(), b.k().to_string(), b.distinct().to_string()])
            })
            .collect()
    }
}

impl Measure for Blocks {
    fn name(&self) -> &'static str {
        "blocks"
    }

    fn columns(&self) -> &'static [&'static str] {
        &["N", "k", "distinct", "max_deviation"]
    }

    fn rows(&self, seq: &Sequence, checkpoints: &[usize], params: &MeasureParams) -> Result<Vec<Row>> {
        let mut rows = Vec::new();
        for &n in checkpoints {
            for b in normality_deviation(seq, n, params.block_len)? {
                rows.push(vec![
                    n.to_string(),
                    b.k().to_string(),
                    b.distinct().to_string(),
                    format!("{:.6e}", b.max_deviation()),
                ]);
            }
        }
        Ok(rows)
    }
}

pub fn measures() -> Vec<Box<dyn Measure>> {
    vec![Box::new(Moc), Box::new(Expansion), Box::new(Correlation), Box::new(Subword), Box::new(Blocks)]
}

pub fn measure(name: &str) -> Result<Box<dyn Measure>> {
    measures()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "measure",
            name: name.to_string(),
            available: measures().iter().map(|m| m.name()).collect::<Vec<_>>().join(", "),
        })
}
