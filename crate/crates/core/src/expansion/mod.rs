//! Expansion complexity E(S, N): the least total degree of a nonzero
//! h(x, y) over F₂ with h(x, G(x)) ≡ 0 (mod x^N), where G is the generating
//! function of the prefix. An all-zero prefix has E = 0.

mod bivariate;
mod series;

pub use bivariate::{pattern_annihilator, thue_morse_annihilator, x_plus_one_pow, BivariatePolyF2};
pub use series::TruncatedSeries;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequences::Sequence;

pub const DEFAULT_MAX_DEGREE: usize = 30;

/// Generating function of the first `n` symbols.
pub fn series_from(seq: &Sequence, n: usize) -> Result<TruncatedSeries> {
    seq.require_binary()?;
    seq.require_len(n, 0)?;
    Ok(TruncatedSeries::from_bits(&seq.symbols()[..n], n))
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// h(x, G(x)) mod x^order.
pub fn evaluate_at_series(h: &BivariatePolyF2, g: &TruncatedSeries) -> TruncatedSeries {
    let order = g.order();
    let mut acc = TruncatedSeries::zero(order);
    let Some(top) = h.y_degree() else {
        return acc;
    };
    let mut power = TruncatedSeries::one(order);
    for j in 0..=top {
        if j > 0 {
            power = power.mul(g).expect("same order");
        }
        for (i, _) in h.monomials().filter(|&(_, jj)| jj == j) {
            acc.xor_shifted(&power, i);
        }
    }
    acc
}

/// Whether h(x, G(x)) ≡ 0 (mod x^N). The zero polynomial is rejected.
pub fn verify_annihilator(h: &BivariatePolyF2, seq: &Sequence, n: usize) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::precondition("annihilator must be a nonzero polynomial"));
    }
    let g = series_from(seq, n)?;
    Ok(evaluate_at_series(h, &g).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionComplexity {
    /// The prefix is all zeros.
    Zero,
    /// E(S, N) = `degree`, with one annihilator of that total degree.
    Value { degree: usize, annihilator: BivariatePolyF2 },
    /// No annihilator of total degree ≤ the bound.
    Exceeded { max_degree: usize },
}

impl ExpansionComplexity {
    pub fn value(&self) -> Option<usize> {
        match self {
            ExpansionComplexity::Zero => Some(0),
            ExpansionComplexity::Value { degree, .. } => Some(*degree),
            ExpansionComplexity::Exceeded { .. } => None,
        }
    }

    pub fn annihilator(&self) -> Option<&BivariatePolyF2> {
        match self {
            ExpansionComplexity::Value { annihilator, .. } => Some(annihilator),
            _ => None,
        }
    }
}

/// Row-reduced set of columns with pivot at each row's lowest set bit. Every
/// row remembers which input columns were xor-ed together to form it.
struct Eliminator {
    order: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<(TruncatedSeries, Vec<u64>)>,
    columns: usize,
}

impl Eliminator {
    fn new(order: usize) -> Self {
        Eliminator {
            order,
            pivot_of: vec![None; order],
            rows: Vec::new(),
            columns: 0,
        }
    }

    /// Adds the next column. Returns the set of column indices summing to zero
    /// if it is dependent on the previous ones.
    fn push(&mut self, mut v: TruncatedSeries) -> Option<Vec<usize>> {
        let idx = self.columns;
        self.columns += 1;
        let mut combo = vec![0u64; self.columns.div_ceil(64)];
        combo[idx / 64] |= 1 << (idx % 64);
        let mut from = 0;
        while let Some(p) = v.lowest_set_from(from) {
            match self.pivot_of[p] {
                Some(r) => {
                    let (row, rc) = &self.rows[r];
                    v.xor_assign(row);
                    for (a, b) in combo.iter_mut().zip(rc) {
                        *a ^= b;
                    }
                    from = p + 1;
                }
                None => {
                    self.pivot_of[p] = Some(self.rows.len());
                    self.rows.push((v, combo));
                    return None;
                }
            }
        }
        debug_assert!(v.is_zero() && self.order == v.order());
        Some(
            (0..self.columns)
                .filter(|&c| (combo[c / 64] >> (c % 64)) & 1 == 1)
                .collect(),
        )
    }
}

/// Columns of total degree exactly `d`, ordered by ascending y-exponent.
fn degree_columns(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=d).map(move |j| (d - j, j))
}

/// E(S, N), searching total degrees 0, 1, ..., `max_degree`.
pub fn expansion_complexity(seq: &Sequence, n: usize, max_degree: usize) -> Result<ExpansionComplexity> {
    if n == 0 {
        return Err(Error::precondition("prefix length must be at least 1"));
    }
    if max_degree == 0 {
        return Err(Error::precondition("degree bound must be at least 1"));
    }
    let g = series_from(seq, n)?;
    if g.is_zero() {
        return Ok(ExpansionComplexity::Zero);
    }
    let mut powers = vec![TruncatedSeries::one(n)];
    let mut elim = Eliminator::new(n);
    let mut labels: Vec<(usize, usize)> = Vec::new();
    for d in 0..=max_degree {
        if d > 0 {
            let next = powers[d - 1].mul(&g)?;
            powers.push(next);
        }
        let monos: Vec<(usize, usize)> = degree_columns(d).collect();
        let cols: Vec<TruncatedSeries> = monos.par_iter().map(|&(i, j)| powers[j].shifted(i)).collect();
        for (mono, col) in monos.into_iter().zip(cols) {
            labels.push(mono);
            if let Some(dep) = elim.push(col) {
                let h = BivariatePolyF2::from_terms(dep.into_iter().map(|c| labels[c]));
                return Ok(ExpansionComplexity::Value { degree: d, annihilator: h });
            }
        }
    }
    Ok(ExpansionComplexity::Exceeded { max_degree })
}

/// Dimension of the space of h with total degree ≤ `d` annihilating G mod x^N
/// (including h = 0, so a trivial kernel has dimension 0).
pub fn kernel_dimension(seq: &Sequence, n: usize, d: usize) -> Result<usize> {
    let g = series_from(seq, n)?;
    let mut elim = Eliminator::new(n);
    let mut power = TruncatedSeries::one(n);
    let mut dependent = 0;
    let mut cols = Vec::new();
    for j in 0..=d {
        if j > 0 {
            power = power.mul(&g)?;
        }
        for i in 0..=d - j {
            cols.push(power.shifted(i));
        }
    }
    for c in cols {
        if elim.push(c).is_some() {
            dependent += 1;
        }
    }
    Ok(dependent)
}
