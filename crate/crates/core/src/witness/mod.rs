//! Explicit witnesses forcing large maximum order complexity along
//! polynomial subsequences, and machine-checkable lower-bound certificates.
//!
//! For monic P of degree d ≥ 2 with nonnegative coefficients, a witness is a
//! pair (y, shift) such that, for large enough l, the sequence takes
//! different values at P(1 + y·2^l + 2^{dl}) and P(1 + y·2^l + 2^{dl+shift}),
//! while it agrees at P(n + 2^{dl}) and P(n + 2^{dl+shift}) for all small n.
//! Here "the sequence" is Thue–Morse (k = 1) or the k-pattern sequence.

mod certificate;
mod pattern;
mod thue_morse;

pub use certificate::{bound_certificate, BoundCertificate, CertificateChecks};
pub use pattern::{pattern_witness, pattern_witness_with, verify_pattern_witness, PatternSearch, PatternWitness};
pub use thue_morse::{tm_witness, tm_witness_with_limit, verify_tm_witness, TmWitness};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::digits::BigNat;
use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;
use crate::sequences::{pattern_value, thue_morse, PatternSpec};

/// Default upper end of the l range scanned when determining l0.
pub const DEFAULT_L_SEARCH: u64 = 64;

/// t(n) for k = 1, p_k(n) for k ≥ 2.
pub fn base_symbol(k: usize, n: &BigNat) -> u8 {
    if k == 1 {
        thue_morse(n)
    } else {
        pattern_value(n, &PatternSpec::all_ones(k).expect("k >= 1"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    ThueMorse(TmWitness),
    Pattern(PatternWitness),
}

impl Witness {
    pub fn poly(&self) -> &IntPolynomial {
        match self {
            Witness::ThueMorse(w) => &w.poly,
            Witness::Pattern(w) => &w.poly,
        }
    }

    /// Pattern length; 1 for Thue–Morse.
    pub fn k(&self) -> usize {
        match self {
            Witness::ThueMorse(_) => 1,
            Witness::Pattern(w) => w.k,
        }
    }

    pub fn y(&self) -> &BigNat {
        match self {
            Witness::ThueMorse(w) => &w.y,
            Witness::Pattern(w) => &w.y,
        }
    }

    /// r for Thue–Morse, s for patterns.
    pub fn shift(&self) -> u64 {
        match self {
            Witness::ThueMorse(w) => w.r,
            Witness::Pattern(w) => w.s,
        }
    }

    pub fn z(&self) -> &BigNat {
        match self {
            Witness::ThueMorse(w) => &w.z,
            Witness::Pattern(w) => &w.z,
        }
    }

    pub fn l0(&self) -> u64 {
        match self {
            Witness::ThueMorse(w) => w.l0,
            Witness::Pattern(w) => w.l0,
        }
    }

    /// Whether property (ii) holds at l.
    pub fn verify_at(&self, l: u64) -> Result<bool> {
        property_ii(self.poly(), self.k(), self.y(), self.shift(), l).map(|c| c.differs())
    }
}

/// Builds witnesses for one family of base sequences.
pub trait WitnessScheme: Send + Sync {
    fn name(&self) -> &'static str;

    fn supports(&self, k: usize) -> bool;

    fn construct(&self, poly: &IntPolynomial, k: usize) -> Result<Witness>;
}

pub struct ThueMorseScheme;

impl WitnessScheme for ThueMorseScheme {
    fn name(&self) -> &'static str {
        "thue-morse"
    }

    fn supports(&self, k: usize) -> bool {
        k == 1
    }

    fn construct(&self, poly: &IntPolynomial, _k: usize) -> Result<Witness> {
        tm_witness(poly).map(Witness::ThueMorse)
    }
}

pub struct PatternScheme;

impl WitnessScheme for PatternScheme {
    fn name(&self) -> &'static str {
        "pattern"
    }

    fn supports(&self, k: usize) -> bool {
        k >= 2
    }

    fn construct(&self, poly: &IntPolynomial, k: usize) -> Result<Witness> {
        pattern_witness(poly, k).map(Witness::Pattern)
    }
}

pub fn schemes() -> Vec<Box<dyn WitnessScheme>> {
    vec![Box::new(ThueMorseScheme), Box::new(PatternScheme)]
}

pub fn scheme(name: &str) -> Result<Box<dyn WitnessScheme>> {
    schemes()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "witness scheme",
            name: name.to_string(),
            available: schemes().iter().map(|s| s.name()).collect::<Vec<_>>().join(", "),
        })
}

/// Witness for pattern length k with whichever scheme handles it.
pub fn find_witness(poly: &IntPolynomial, k: usize) -> Result<Witness> {
    let s = schemes()
        .into_iter()
        .find(|s| s.supports(k))
        .ok_or_else(|| Error::precondition(format!("no witness scheme for pattern length {k}")))?;
    s.construct(poly, k)
}

/// The two evaluations behind property (ii) at one l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyTwoCheck {
    pub left_index: BigNat,
    pub right_index: BigNat,
    pub left_value: u8,
    pub right_value: u8,
}

impl PropertyTwoCheck {
    pub fn differs(&self) -> bool {
        self.left_value != self.right_value
    }
}

/// Evaluates s(P(1 + y·2^l + 2^{dl})) and s(P(1 + y·2^l + 2^{dl+shift})).
pub fn property_ii(poly: &IntPolynomial, k: usize, y: &BigNat, shift: u64, l: u64) -> Result<PropertyTwoCheck> {
    if l < 1 {
        return Err(Error::precondition("l must be at least 1"));
    }
    let d = poly.degree() as u64;
    let base = &BigNat::ONE + &y.shl(l);
    let left_index = &base + &BigNat::pow2(d * l);
    let right_index = &base + &BigNat::pow2(d * l + shift);
    let left_value = base_symbol(k, &poly.eval(&left_index)?);
    let right_value = base_symbol(k, &poly.eval(&right_index)?);
    Ok(PropertyTwoCheck {
        left_index,
        right_index,
        left_value,
        right_value,
    })
}

/// Whether s(P(n + 2^{dl})) = s(P(n + 2^{dl+shift})), with no range check.
pub(crate) fn agrees_shifted(poly: &IntPolynomial, k: usize, l: u64, n: &BigNat, shift: u64) -> Result<bool> {
    let d = poly.degree() as u64;
    let a = poly.eval(&(n + &BigNat::pow2(d * l)))?;
    let b = poly.eval(&(n + &BigNat::pow2(d * l + shift)))?;
    Ok(base_symbol(k, &a) == base_symbol(k, &b))
}

/// 2 for Thue–Morse, 4 for patterns.
pub fn range_denominator(k: usize) -> u64 {
    if k == 1 {
        2
    } else {
        4
    }
}

/// ⌈2^l / (c·(2α_max)^{1/d})⌉ with c = [`range_denominator`]: the smallest
/// integer B with (cB)^d · 2α_max ≥ 2^{dl}. Property (i) is claimed for
/// n < B, and B is the certified lower bound.
pub fn noninterference_limit(poly: &IntPolynomial, l: u64, k: usize) -> Result<u64> {
    poly.check_witness_form()?;
    let d = poly.degree() as u32;
    let c = BigUint::from(range_denominator(k));
    let two_alpha = BigUint::from(2u32) * poly.alpha_max().magnitude();
    let target = BigUint::one() << (d as u64 * l);
    let ok = |b: &BigUint| (&c * b).pow(d) * &two_alpha >= target;
    let (mut lo, mut hi) = (BigUint::zero(), BigUint::one() << l);
    debug_assert!(ok(&hi) && !ok(&lo));
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1u32;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    u64::try_from(hi).map_err(|_| Error::precondition(format!("l = {l} is too large for a u64 range")))
}

/// Property (i) at a single n: s(P(n + 2^{dl})) = s(P(n + 2^{dl+shift})) for
/// 1 ≤ n below [`noninterference_limit`]. Outside that range the claim is not
/// made and a precondition error is returned.
pub fn verify_noninterference(poly: &IntPolynomial, l: u64, n: u64, shift: u64, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::precondition("pattern length must be at least 1"));
    }
    let limit = noninterference_limit(poly, l, k)?;
    if n < 1 || n >= limit {
        return Err(Error::precondition(format!(
            "n = {n} outside the non-interference range 1..{limit} at l = {l}"
        )));
    }
    agrees_shifted(poly, k, l, &BigNat::from(n), shift)
}

/// Smallest l in 1..=cap such that `check` holds for every l' in l..=cap,
/// or None when it fails at cap.
pub(crate) fn stable_l0(cap: u64, check: impl Fn(u64) -> Result<bool> + Sync) -> Result<Option<u64>> {
    let results: Vec<bool> = (1..=cap).into_par_iter().map(&check).collect::<Result<_>>()?;
    if !results.last().copied().unwrap_or(false) {
        return Ok(None);
    }
    let failing = results.iter().rposition(|&ok| !ok);
    Ok(Some(failing.map_or(1, |i| i as u64 + 2)))
}
