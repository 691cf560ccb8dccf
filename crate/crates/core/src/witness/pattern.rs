use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{base_symbol, property_ii, stable_l0};
use crate::digits::BigNat;
use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;

/// Pattern witness: y = f_a(2^u) with f_a(x) = ax³ + ax² − x + a, a = 2^λ′,
/// and a shift s aligning z with the long inner 1-run of y^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub poly: IntPolynomial,
    pub k: usize,
    pub z: BigNat,
    /// λ′ with a = 2^λ′.
    pub lambda: u64,
    pub a: BigNat,
    pub u: u64,
    pub y: BigNat,
    pub s: u64,
    pub l0: u64,
}

/// Bounds of the grid scanned by [`pattern_witness_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatternSearch {
    pub max_lambda: u64,
    pub max_u: u64,
    /// s ranges over the alignment centre ± `window_factor`·u.
    pub window_factor: u64,
    /// Extra l values scanned for l0 beyond d·bits(y) + bits(z) + s.
    pub l_margin: u64,
}

impl Default for PatternSearch {
    fn default() -> Self {
        PatternSearch {
            max_lambda: 16,
            max_u: 64,
            window_factor: 3,
            l_margin: 64,
        }
    }
}

/// f_a(2^u) = a·2^{3u} + a·2^{2u} − 2^u + a.
pub fn f_a(a: &BigUint, u: u64) -> BigUint {
    (a << (3 * u)) + (a << (2 * u)) + a - (BigUint::one() << u)
}

fn pk(n: &BigUint, k: usize) -> u8 {
    base_symbol(k, &BigNat::from_biguint(n.clone()))
}

/// (length, lowest bit position) of the longest run of 1-bits; the lowest
/// such run on ties.
fn longest_one_run(n: &BigUint) -> (u64, u64) {
    let (mut best, mut best_lo, mut cur) = (0u64, 0u64, 0u64);
    for pos in 0..n.bits() {
        if n.bit(pos) {
            cur += 1;
            if cur > best {
                best = cur;
                best_lo = pos + 1 - cur;
            }
        } else {
            cur = 0;
        }
    }
    (best, best_lo)
}

/// Length of the run of 1-bits at the top of n's expansion.
fn leading_one_run(n: &BigUint) -> u64 {
    let len = n.bits();
    (0..len).take_while(|&i| n.bit(len - 1 - i)).count() as u64
}

fn ceil_log2(n: &BigUint) -> u64 {
    let b = n.bits();
    if n.count_ones() == 1 {
        b - 1
    } else {
        b
    }
}

/// p_k(y^d + 2^s z) ≡ p_k(y^d) + p_k(z) + 1 (mod 2).
fn parity_flip(yd: &BigUint, z: &BigUint, s: u64, k: usize) -> bool {
    pk(&(yd + (z << s)), k) == (pk(yd, k) + pk(z, k) + 1) % 2
}

/// p_k(y^d + z) + p_k(y^d + 2^s z) ≡ 1 (mod 2).
fn goal_identity(yd: &BigUint, z: &BigUint, s: u64, k: usize) -> bool {
    (pk(&(yd + z), k) + pk(&(yd + (z << s)), k)) % 2 == 1
}

pub fn pattern_witness(poly: &IntPolynomial, k: usize) -> Result<PatternWitness> {
    pattern_witness_with(poly, k, &PatternSearch::default())
}

/// Scans (λ′, u, s) in lexicographic order and accepts the first point where
/// the parity flip holds at (u, s) and (u + 2, s + 2), the combined identity
/// holds at (u, s), y^d has a 1-run longer than max(⌈log₂ z⌉, k), and
/// property (ii) holds on a final stretch of l values.
pub fn pattern_witness_with(poly: &IntPolynomial, k: usize, search: &PatternSearch) -> Result<PatternWitness> {
    if k < 2 {
        return Err(Error::precondition("pattern witnesses need k >= 2"));
    }
    let z_nat = poly.z_constant()?;
    let z = z_nat.to_biguint();
    let d = poly.degree() as u32;
    let z_bits = z.bits();
    let lead = leading_one_run(&z);
    let run_needed = ceil_log2(&z).max(k as u64);
    let scanned = AtomicU64::new(0);
    let flipped = AtomicU64::new(0);

    for lambda in 0..=search.max_lambda {
        let a = BigUint::one() << lambda;
        let mu1 = BigUint::from(d) * a.pow(d - 1);
        let u_floor = (mu1.bits() + 1).max(1);
        let found = (u_floor..=search.max_u).into_par_iter().find_map_first(|u| {
            let y = f_a(&a, u);
            let yd = y.pow(d);
            let (run, lo) = longest_one_run(&yd);
            if run <= run_needed {
                return None;
            }
            let y2d = f_a(&a, u + 2).pow(d);
            let centre = lo as i64 - z_bits as i64 + lead as i64;
            let w = (search.window_factor * u) as i64;
            for s in (centre - w).max(0)..=centre + w {
                let s = s as u64;
                scanned.fetch_add(1, Ordering::Relaxed);
                if !(parity_flip(&yd, &z, s, k) && parity_flip(&y2d, &z, s + 2, k) && goal_identity(&yd, &z, s, k)) {
                    continue;
                }
                flipped.fetch_add(1, Ordering::Relaxed);
                let y_nat = BigNat::from_biguint(y.clone());
                let cap = search.l_margin + d as u64 * y.bits() + z_bits + s;
                match stable_l0(cap, |l| property_ii(poly, k, &y_nat, s, l).map(|c| c.differs())) {
                    Ok(Some(l0)) => {
                        return Some(Ok(PatternWitness {
                            poly: poly.clone(),
                            k,
                            z: z_nat.clone(),
                            lambda,
                            a: BigNat::from_biguint(a.clone()),
                            u,
                            y: y_nat,
                            s,
                            l0,
                        }))
                    }
                    Ok(None) => continue,
                    Err(e) => return Some(Err(e)),
                }
            }
            None
        });
        if let Some(w) = found {
            return w;
        }
    }
    Err(Error::SearchExhausted(format!(
        "no pattern witness for {poly}, k = {k}: scanned λ' 0..={}, u up to {}, s within ±{}u of the alignment centre \
         ({} grid points, {} passed the parity checks but not the l0 scan)",
        search.max_lambda,
        search.max_u,
        search.window_factor,
        scanned.load(Ordering::Relaxed),
        flipped.load(Ordering::Relaxed),
    )))
}

/// Property (ii) at l for this witness.
pub fn verify_pattern_witness(poly: &IntPolynomial, w: &PatternWitness, l: u64) -> Result<bool> {
    property_ii(poly, w.k, &w.y, w.s, l).map(|c| c.differs())
}
