use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Polynomial h(x, y) over F₂ as a set of monomials x^i y^j, stored as
/// `(i, j)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolyF2 {
    monomials: BTreeSet<(usize, usize)>,
}

impl BivariatePolyF2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sum of the given monomials over F₂: a repeated monomial cancels.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut h = Self::zero();
        for t in terms {
            h.toggle(t);
        }
        h
    }

    pub fn toggle(&mut self, term: (usize, usize)) {
        if !self.monomials.remove(&term) {
            self.monomials.insert(term);
        }
    }

    /// self += a(x) · y^j, with `a` given by its x-exponents.
    pub fn add_x_poly_times_y(&mut self, x_exponents: &[usize], j: usize) {
        for &i in x_exponents {
            self.toggle((i, j));
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.monomials.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.monomials.iter().map(|&(i, j)| i + j).max()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.monomials.iter().map(|&(_, j)| j).max()
    }

    /// Exchange format: one `i,j` pair per line.
    pub fn to_exchange(&self) -> String {
        self.monomials
            .iter()
            .map(|(i, j)| format!("{i},{j}\n"))
            .collect()
    }

    /// Parses the exchange format. Blank lines and `#` comments are skipped;
    /// repeated pairs cancel as in [`BivariatePolyF2::from_terms`].
    pub fn parse_exchange(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected `i,j`, got {line:?}", lineno + 1));
            let (i, j) = line.split_once(',').ok_or_else(bad)?;
            let i = i.trim().parse().map_err(|_| bad())?;
            let j = j.trim().parse().map_err(|_| bad())?;
            terms.push((i, j));
        }
        Ok(Self::from_terms(terms))
    }
}

impl FromStr for BivariatePolyF2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_exchange(s)
    }
}

impl fmt::Display for BivariatePolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut sorted: Vec<(usize, usize)> = self.monomials().collect();
        sorted.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, j)));
        let terms: Vec<String> = sorted
            .into_iter()
            .map(|(i, j)| match (i, j) {
                (0, 0) => "1".to_string(),
                (i, 0) => monomial("x", i),
                (0, j) => monomial("y", j),
                (i, j) => format!("{}{}", monomial("x", i), monomial("y", j)),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

fn monomial(var: &str, e: usize) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// x-exponents of (x + 1)^e over F₂: C(e, i) is odd iff i's bits are a subset
/// of e's bits.
pub fn x_plus_one_pow(e: usize) -> Vec<usize> {
    (0..=e).filter(|&i| i & !e == 0).collect()
}

/// h(x, y) = (x+1)^3 y^2 + (x+1)^2 y + x, which annihilates the Thue–Morse
/// generating function.
pub fn thue_morse_annihilator() -> BivariatePolyF2 {
    let mut h = BivariatePolyF2::zero();
    h.add_x_poly_times_y(&x_plus_one_pow(3), 2);
    h.add_x_poly_times_y(&x_plus_one_pow(2), 1);
    h.add_x_poly_times_y(&[1], 0);
    h
}

/// h(x, y) = (x+1)^{2^k+1} y^2 + (x+1)^{2^k} y + x^{2^k-1}, which annihilates
/// the generating function of the k-pattern sequence. Total degree 2^k + 3;
/// k = 1 gives [`thue_morse_annihilator`].
pub fn pattern_annihilator(k: usize) -> BivariatePolyF2 {
    let p = 1usize << k;
    let mut h = BivariatePolyF2::zero();
    h.add_x_poly_times_y(&x_plus_one_pow(p + 1), 2);
    h.add_x_poly_times_y(&x_plus_one_pow(p), 1);
    h.add_x_poly_times_y(&[p - 1], 0);
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows_mod_two() {
        assert_eq!(x_plus_one_pow(3), vec![0, 1, 2, 3]);
        assert_eq!(x_plus_one_pow(2), vec![0, 2]);
        assert_eq!(x_plus_one_pow(5), vec![0, 1, 4, 5]);
        assert_eq!(x_plus_one_pow(0), vec![0]);
        // Pascal's rule oracle.
        let mut row = vec![1u8];
        for e in 1..40usize {
            let mut next = vec![1u8; e + 1];
            for i in 1..e {
                next[i] = row[i - 1] ^ row[i];
            }
            row = next;
            let odd: Vec<usize> = (0..=e).filter(|&i| row[i] == 1).collect();
            assert_eq!(x_plus_one_pow(e), odd, "e = {e}");
        }
    }

    #[test]
    fn known_annihilators() {
        let h = thue_morse_annihilator();
        assert_eq!(h.total_degree(), Some(5));
        assert_eq!(pattern_annihilator(1), h);
        assert_eq!(pattern_annihilator(2).total_degree(), Some(7));
        assert_eq!(pattern_annihilator(3).total_degree(), Some(11));
        assert_eq!(h.to_string(), "x^3y^2+x^2y^2+xy^2+x^2y+y^2+y+x");
    }

    #[test]
    fn exchange_format() {
        let h = thue_morse_annihilator();
        let text = h.to_exchange();
        assert_eq!(BivariatePolyF2::parse_exchange(&text).unwrap(), h);
        let p = BivariatePolyF2::parse_exchange("# comment\n1,0\n\n0,1\n1,0\n").unwrap();
        assert_eq!(p, BivariatePolyF2::from_terms([(0, 1)]));
        assert!(BivariatePolyF2::parse_exchange("1;2").is_err());
        assert!(BivariatePolyF2::parse_exchange("a,2").is_err());
    }
}
