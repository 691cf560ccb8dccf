//! Nonnegative integers, base-q digit expansions, digit sums and pattern
//! occurrence counts.
//!
//! [`BigNat`] keeps values that fit in a `u64` in native form and promotes to
//! an arbitrary-precision magnitude only when needed. Every constructor
//! returns the canonical representation, so two equal values always compare
//! equal regardless of how they were produced.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sequences::PatternSpec;

/// Largest base accepted by the digit routines.
pub const MAX_BASE: u32 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u64),
    Big(BigUint),
}

/// Arbitrary-precision nonnegative integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigNat(Repr);

impl BigNat {
    pub const ZERO: BigNat = BigNat(Repr::Small(0));
    pub const ONE: BigNat = BigNat(Repr::Small(1));

    pub fn from_biguint(value: BigUint) -> Self {
        match value.to_u64() {
            Some(v) => BigNat(Repr::Small(v)),
            None => BigNat(Repr::Big(value)),
        }
    }

    pub fn from_u128(value: u128) -> Self {
        match u64::try_from(value) {
            Ok(v) => BigNat(Repr::Small(v)),
            Err(_) => BigNat(Repr::Big(BigUint::from(value))),
        }
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        if exp < 64 {
            BigNat(Repr::Small(1u64 << exp))
        } else {
            BigNat(Repr::Big(BigUint::one() << exp))
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match &self.0 {
            Repr::Small(v) => Some(*v as u128),
            Repr::Big(b) => b.to_u128(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    /// Number of significant bits; zero for the value 0.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 64 - v.leading_zeros() as u64,
            Repr::Big(b) => b.bits(),
        }
    }

    /// Bit `i` of the binary expansion.
    pub fn bit(&self, i: u64) -> bool {
        match &self.0 {
            Repr::Small(v) => i < 64 && (v >> i) & 1 == 1,
            Repr::Big(b) => b.bit(i),
        }
    }

    pub fn shl(&self, shift: u64) -> Self {
        match &self.0 {
            Repr::Small(v) if shift < 64 && v.leading_zeros() as u64 >= shift => {
                BigNat(Repr::Small(v << shift))
            }
            _ => BigNat::from_biguint(self.to_biguint() << shift),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        if let Repr::Small(v) = self.0 {
            if let Some(p) = v.checked_pow(exp) {
                return BigNat(Repr::Small(p));
            }
        }
        BigNat::from_biguint(self.to_biguint().pow(exp))
    }

    /// `self - rhs`, or an error when `rhs > self`.
    pub fn checked_sub(&self, rhs: &BigNat) -> Result<BigNat> {
        if self < rhs {
            return Err(Error::Underflow(format!("{self} - {rhs}")));
        }
        Ok(match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => BigNat(Repr::Small(a - b)),
            _ => BigNat::from_biguint(self.to_biguint() - rhs.to_biguint()),
        })
    }
}

impl Default for BigNat {
    fn default() -> Self {
        BigNat::ZERO
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(Repr::Small(v))
    }
}

impl From<u32> for BigNat {
    fn from(v: u32) -> Self {
        BigNat(Repr::Small(v as u64))
    }
}

impl From<usize> for BigNat {
    fn from(v: usize) -> Self {
        BigNat::from_u128(v as u128)
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat::from_biguint(v)
    }
}

impl Ord for BigNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for BigNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BigNat {
    type Output = BigNat;

    fn add(self, rhs: &BigNat) -> BigNat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return BigNat(Repr::Small(s));
            }
        }
        BigNat::from_biguint(self.to_biguint() + rhs.to_biguint())
    }
}

impl Add for BigNat {
    type Output = BigNat;

    fn add(self, rhs: BigNat) -> BigNat {
        &self + &rhs
    }
}

impl Mul for &BigNat {
    type Output = BigNat;

    fn mul(self, rhs: &BigNat) -> BigNat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(p) = a.checked_mul(*b) {
                return BigNat(Repr::Small(p));
            }
        }
        BigNat::from_biguint(self.to_biguint() * rhs.to_biguint())
    }
}

impl Mul for BigNat {
    type Output = BigNat;

    fn mul(self, rhs: BigNat) -> BigNat {
        &self * &rhs
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigNat({self})")
    }
}

impl FromStr for BigNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("not a nonnegative integer: {s:?}")));
        }
        BigUint::from_str(s)
            .map(BigNat::from_biguint)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Base-q expansion, least-significant digit first.
///
/// The canonical form has no most-significant zero digit, so the value zero
/// is the empty digit list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u32>,
    base: u32,
}

impl DigitString {
    /// Builds a digit string from least-significant-first digits, stripping
    /// most-significant zeros.
    pub fn new(mut digits: Vec<u32>, base: u32) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::Parse(format!("digit {d} out of range for base {base}")));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(DigitString { digits, base })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits, least-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn value(&self) -> BigNat {
        let base = BigUint::from(self.base);
        let v = self
            .digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + BigUint::from(d));
        BigNat::from_biguint(v)
    }

    /// Digits most-significant first, e.g. `"110"` for 6 in base 2. Digits
    /// above 9 are separated by dots.
    pub fn to_msb_string(&self) -> String {
        if self.base <= 10 {
            self.digits
                .iter()
                .rev()
                .map(|d| char::from_digit(*d, 10).unwrap())
                .collect()
        } else {
            let parts: Vec<String> = self.digits.iter().rev().map(|d| d.to_string()).collect();
            parts.join(".")
        }
    }
}

fn check_base(q: u32) -> Result<()> {
    if !(2..=MAX_BASE).contains(&q) {
        return Err(Error::InvalidBase(q));
    }
    Ok(())
}

pub fn to_digits(n: &BigNat, q: u32) -> Result<DigitString> {
    check_base(q)?;
    Ok(DigitString {
        digits: raw_digits(n, q),
        base: q,
    })
}

fn raw_digits(n: &BigNat, q: u32) -> Vec<u32> {
    match &n.0 {
        Repr::Small(v) => {
            let mut v = *v;
            let q = q as u64;
            let mut out = Vec::with_capacity(64);
            while v > 0 {
                out.push((v % q) as u32);
                v /= q;
            }
            out
        }
        Repr::Big(b) if q <= 256 => b.to_radix_le(q).into_iter().map(u32::from).collect(),
        Repr::Big(b) => {
            let qb = BigUint::from(q);
            let mut v = b.clone();
            let mut out = Vec::new();
            while !v.is_zero() {
                let r = &v % &qb;
                out.push(r.to_u32().unwrap());
                v /= &qb;
            }
            out
        }
    }
}

/// Sum of the base-q digits of `n`.
pub fn digit_sum(n: &BigNat, q: u32) -> Result<u64> {
    check_base(q)?;
    if q == 2 {
        return Ok(popcount(n));
    }
    Ok(raw_digits(n, q).iter().map(|&d| d as u64).sum())
}

fn popcount(n: &BigNat) -> u64 {
    match &n.0 {
        Repr::Small(v) => v.count_ones() as u64,
        Repr::Big(b) => b.iter_u64_digits().map(|w| w.count_ones() as u64).sum(),
    }
}

/// Number of (possibly overlapping) occurrences of the spec's pattern in the
/// canonical base-q expansion of `n`.
pub fn count_pattern(n: &BigNat, spec: &PatternSpec) -> u64 {
    let q = spec.base();
    let omega = spec.omega();
    if q == 2 {
        if let Some(v) = n.to_u64() {
            return count_binary_u64(v, omega);
        }
        if omega.iter().all(|&d| d == 1) {
            return count_ones_runs_big(n, omega.len() as u64);
        }
    }
    let digits = raw_digits(n, q);
    count_in_digits(&digits, omega)
}

/// Fast path for binary patterns on native integers.
pub(crate) fn count_binary_u64(v: u64, omega_msb: &[u32]) -> u64 {
    let k = omega_msb.len() as u32;
    let len = 64 - v.leading_zeros();
    if k > len {
        return 0;
    }
    if omega_msb.iter().all(|&d| d == 1) {
        let mut acc = v;
        for _ in 1..k {
            acc &= acc >> 1;
        }
        return acc.count_ones() as u64;
    }
    let pat = omega_msb.iter().fold(0u64, |acc, &d| (acc << 1) | d as u64);
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    (0..=len - k).filter(|&i| (v >> i) & mask == pat).count() as u64
}

fn count_ones_runs_big(n: &BigNat, k: u64) -> u64 {
    // A run of r ones contributes max(r - k + 1, 0) overlapping occurrences.
    let bits = n.bits();
    let mut total = 0;
    let mut run = 0u64;
    for i in 0..bits {
        if n.bit(i) {
            run += 1;
        } else {
            total += run.saturating_sub(k - 1);
            run = 0;
        }
    }
    total + run.saturating_sub(k - 1)
}

/// Counts occurrences of a most-significant-first pattern inside
/// least-significant-first digits.
fn count_in_digits(digits_lsb: &[u32], omega_msb: &[u32]) -> u64 {
    let k = omega_msb.len();
    if k > digits_lsb.len() {
        return 0;
    }
    let rev: Vec<u32> = omega_msb.iter().rev().copied().collect();
    digits_lsb.windows(k).filter(|w| *w == rev.as_slice()).count() as u64
}
