//! Integer polynomials P(X) used as rarefaction maps.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::BigNat;
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored low-to-high. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    // Coefficients as i64 when they all fit, for the native evaluation path.
    small: Option<Vec<i64>>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let small = coeffs.iter().map(|c| c.to_i64()).collect();
        IntPolynomial { coeffs, small }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// X^d.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![0i64; d + 1];
        c[d] = 1;
        IntPolynomial::from_i64(&c)
    }

    pub fn identity() -> Self {
        IntPolynomial::monomial(1)
    }

    /// Coefficients α_0..α_d, low-to-high.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// max(α_0, ..., α_d) including the leading coefficient.
    pub fn alpha_max(&self) -> BigInt {
        self.coeffs.iter().max().cloned().unwrap_or_default()
    }

    /// Exact value P(n); errors if the value is negative.
    pub fn eval(&self, n: &BigNat) -> Result<BigNat> {
        if let (Some(small), Some(x)) = (&self.small, n.to_u64()) {
            if let Some(v) = horner_i128(small, x) {
                return if v < 0 {
                    Err(Error::NegativeValue { n: n.to_string() })
                } else {
                    Ok(BigNat::from_u128(v as u128))
                };
            }
        }
        let v = self.eval_signed(&BigInt::from(n.to_biguint()));
        match v.sign() {
            Sign::Minus => Err(Error::NegativeValue { n: n.to_string() }),
            _ => Ok(BigNat::from_biguint(v.magnitude().clone())),
        }
    }

    pub fn eval_u64(&self, n: u64) -> Result<BigNat> {
        self.eval(&BigNat::from(n))
    }

    /// P(x) over the integers, sign included.
    pub fn eval_signed(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Q with Q(n) = P(n + a), via β_i = Σ_{j≥i} C(j,i) α_j a^{j-i}.
    pub fn translate(&self, a: &BigNat) -> IntPolynomial {
        let a = BigInt::from(a.to_biguint());
        let d = self.coeffs.len();
        let mut beta = vec![BigInt::zero(); d];
        let mut powers = Vec::with_capacity(d);
        let mut p = BigInt::one();
        for _ in 0..d {
            powers.push(p.clone());
            p *= &a;
        }
        for (j, alpha) in self.coeffs.iter().enumerate() {
            let mut binom = BigInt::one();
            for i in (0..=j).rev() {
                // binom = C(j, i), walking i downward from j
                beta[i] += &binom * alpha * &powers[j - i];
                binom = binom * BigInt::from(i) / BigInt::from(j - i + 1);
            }
        }
        IntPolynomial::new(beta)
    }

    /// Smallest shift a ≥ 0 making every coefficient of P(X + a) nonnegative,
    /// together with the shifted polynomial.
    pub fn normalize_nonnegative(&self) -> Result<(BigNat, IntPolynomial)> {
        if !self.is_monic() || self.degree() < 1 {
            return Err(Error::precondition(
                "normalization needs a monic polynomial of degree >= 1",
            ));
        }
        if self.has_nonnegative_coeffs() {
            return Ok((BigNat::ZERO, self.clone()));
        }
        // Nonnegativity is monotone in the shift: translating a polynomial with
        // nonnegative coefficients by a positive amount keeps them nonnegative.
        let ok = |a: &BigUint| self.translate(&BigNat::from_biguint(a.clone())).has_nonnegative_coeffs();
        let mut hi = BigUint::one();
        while !ok(&hi) {
            hi <<= 1;
        }
        let mut lo = &hi >> 1u32; // known bad (or zero, which is bad)
        while &hi - &lo > BigUint::one() {
            let mid = (&lo + &hi) >> 1u32;
            if ok(&mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let a = BigNat::from_biguint(hi);
        let q = self.translate(&a);
        Ok((a, q))
    }

    /// z = Σ_{1≤i≤d} i·α_i for monic P with nonnegative coefficients, d ≥ 2.
    pub fn z_constant(&self) -> Result<BigNat> {
        self.check_witness_form()?;
        let z = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::zero(), |acc, (i, a)| acc + a * BigInt::from(i));
        Ok(BigNat::from_biguint(z.magnitude().clone()))
    }

    /// Monic, degree ≥ 2, nonnegative coefficients.
    pub fn check_witness_form(&self) -> Result<()> {
        if !self.is_monic() {
            return Err(Error::precondition(format!(
                "leading coefficient of {self} must be 1 (monic polynomial required)"
            )));
        }
        if self.degree() < 2 {
            return Err(Error::precondition(format!("degree of {self} must be at least 2")));
        }
        if !self.has_nonnegative_coeffs() {
            return Err(Error::precondition(format!(
                "coefficients of {self} must be nonnegative (normalize first)"
            )));
        }
        Ok(())
    }

    /// Comma-separated coefficients low-to-high, e.g. `1,2,0,1`.
    pub fn to_literal(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

fn horner_i128(coeffs: &[i64], x: u64) -> Option<i128> {
    let x = x as i128;
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(x)?.checked_add(c as i128)?;
    }
    Some(acc)
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim())
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in polynomial {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}X")?,
                _ => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}
