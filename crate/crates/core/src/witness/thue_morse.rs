use super::{property_ii, stable_l0, DEFAULT_L_SEARCH};
use crate::digits::BigNat;
use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;

/// Closed-form Thue–Morse witness: z = Σ i·α_i, 2^λ ≤ z < 2^{λ+1},
/// y = 2^λ and r = λ(d − 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmWitness {
    pub poly: IntPolynomial,
    pub z: BigNat,
    pub lambda: u64,
    pub y: BigNat,
    pub r: u64,
    /// Smallest l from which property (ii) held on every l up to the search limit.
    pub l0: u64,
}

pub fn tm_witness(poly: &IntPolynomial) -> Result<TmWitness> {
    tm_witness_with_limit(poly, DEFAULT_L_SEARCH)
}

pub fn tm_witness_with_limit(poly: &IntPolynomial, l_search: u64) -> Result<TmWitness> {
    let z = poly.z_constant()?;
    let lambda = z.bits() - 1;
    let y = BigNat::pow2(lambda);
    let r = lambda * (poly.degree() as u64 - 1);
    let l0 = stable_l0(l_search, |l| property_ii(poly, 1, &y, r, l).map(|c| c.differs()))?.ok_or_else(|| {
        Error::SearchExhausted(format!(
            "property (ii) fails at l = {l_search} for {poly} with z = {z}, y = {y}, r = {r}"
        ))
    })?;
    Ok(TmWitness {
        poly: poly.clone(),
        z,
        lambda,
        y,
        r,
        l0,
    })
}

/// Property (ii) at l for this witness.
pub fn verify_tm_witness(poly: &IntPolynomial, w: &TmWitness, l: u64) -> Result<bool> {
    property_ii(poly, 1, &w.y, w.r, l).map(|c| c.differs())
}
