use crate::error::{Error, Result};

/// Power series over F₂ truncated at x^N, packed 64 coefficients per word.
/// Bits at positions ≥ N are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    words: Vec<u64>,
    order: usize,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            words: vec![0; order.div_ceil(64)],
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// x^i mod x^order.
    pub fn monomial(i: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if i < order {
            s.set(i, true);
        }
        s
    }

    /// Coefficient i is `bits[i] & 1`, for i < order.
    pub fn from_bits(bits: &[u8], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, &b) in bits.iter().take(order).enumerate() {
            if b & 1 == 1 {
                s.set(i, true);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.order && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.order, "coefficient {i} beyond truncation order {}", self.order);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Coefficients 0..order as 0/1 values.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.order).map(|i| self.get(i) as u8).collect()
    }

    pub fn xor_assign(&mut self, other: &TruncatedSeries) {
        debug_assert_eq!(self.order, other.order);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// self ^= other · x^shift (mod x^order).
    pub fn xor_shifted(&mut self, other: &TruncatedSeries, shift: usize) {
        debug_assert_eq!(self.order, other.order);
        if shift >= self.order {
            return;
        }
        let nw = self.words.len();
        let (ws, bs) = (shift / 64, shift % 64);
        for (k, &w) in other.words.iter().enumerate() {
            if k + ws >= nw {
                break;
            }
            if w == 0 {
                continue;
            }
            self.words[k + ws] ^= w << bs;
            if bs > 0 && k + ws + 1 < nw {
                self.words[k + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.mask_tail();
    }

    /// other · x^shift (mod x^order).
    pub fn shifted(&self, shift: usize) -> TruncatedSeries {
        let mut out = Self::zero(self.order);
        out.xor_shifted(self, shift);
        out
    }

    /// Product modulo x^order; both operands must share the order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.order != other.order {
            return Err(Error::precondition(format!(
                "truncation orders differ: {} vs {}",
                self.order, other.order
            )));
        }
        // Iterate over the sparser operand.
        let (a, b) = if self.popcount() <= other.popcount() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(self.order);
        for (wi, &w) in a.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                out.xor_shifted(b, wi * 64 + bit);
                w &= w - 1;
            }
        }
        Ok(out)
    }

    pub fn popcount(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Index of the lowest nonzero coefficient at or after `from`.
    pub(crate) fn lowest_set_from(&self, from: usize) -> Option<usize> {
        let mut wi = from / 64;
        if wi >= self.words.len() {
            return None;
        }
        let mut w = self.words[wi] & (u64::MAX << (from % 64));
        loop {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    fn mask_tail(&mut self) {
        let r = self.order % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_mul_naive(a: &[u8], b: &[u8], n: usize) -> Vec<u8> {
        let mut out = vec![0u8; n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if i + j < n {
                    out[i + j] ^= x & y;
                }
            }
        }
        out
    }

    #[test]
    fn identities() {
        let n = 4;
        let a = TruncatedSeries::from_bits(&[1, 0, 1, 1], n);
        assert_eq!(a.mul(&TruncatedSeries::one(n)).unwrap(), a);
        let x1 = TruncatedSeries::from_bits(&[1, 1], n);
        assert_eq!(x1.mul(&x1).unwrap().to_bits(), vec![1, 0, 1, 0]);
        let top = TruncatedSeries::monomial(n - 1, n);
        let x = TruncatedSeries::monomial(1, n);
        assert!(top.mul(&x).unwrap().is_zero());
        assert!(a.mul(&TruncatedSeries::zero(5)).is_err());
    }

    #[test]
    fn multiplication_matches_schoolbook() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for n in [1usize, 5, 63, 64, 65, 130, 300] {
            let a: Vec<u8> = (0..n).map(|_| (next() & 1) as u8).collect();
            let b: Vec<u8> = (0..n).map(|_| (next() & 1) as u8).collect();
            let got = TruncatedSeries::from_bits(&a, n)
                .mul(&TruncatedSeries::from_bits(&b, n))
                .unwrap();
            assert_eq!(got.to_bits(), poly_mul_naive(&a, &b, n), "n = {n}");
        }
    }

    #[test]
    fn lowest_set_bit_search() {
        let mut s = TruncatedSeries::zero(200);
        assert_eq!(s.lowest_set_from(0), None);
        s.set(70, true);
        s.set(199, true);
        assert_eq!(s.lowest_set_from(0), Some(70));
        assert_eq!(s.lowest_set_from(71), Some(199));
        assert_eq!(s.lowest_set_from(200), None);
    }
}
