use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::pattern::f_a;
use super::{
    agrees_shifted, find_witness, noninterference_limit, property_ii, PatternWitness, PropertyTwoCheck, TmWitness,
    Witness,
};
use crate::digits::BigNat;
use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;
use crate::sequences::{GeneratorDescriptor, GeneratorKind};

const HEADER: &str = "# rarebit bound certificate v1";

/// Transcript of the checks behind a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateChecks {
    /// Property (ii) at the certificate's l.
    pub separation: PropertyTwoCheck,
    /// Property (i) was checked for every n in 0..range_end.
    pub range_end: u64,
    /// k1 = 2^{dl} and k2 = 2^{dl+shift}, the two agreeing block starts.
    pub k1: BigNat,
    pub k2: BigNat,
}

/// A checked claim M(S, N) ≥ bound for S = s(Q(n)), where Q is the
/// rarefying polynomial translated to have nonnegative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    /// The sequence as requested.
    pub descriptor: GeneratorDescriptor,
    /// Q(n) = P(n + normalization_shift).
    pub normalization_shift: BigNat,
    pub witness: Witness,
    pub n: u64,
    pub l: u64,
    pub bound: u64,
    pub checks: CertificateChecks,
}

/// Largest l ≥ 1 with 1 + y·2^l + 2^{dl+shift} < N, if any.
fn largest_l(y: &BigNat, d: u64, shift: u64, n: u64) -> Option<u64> {
    let n = BigNat::from(n);
    let fits = |l: u64| &(&BigNat::ONE + &y.shl(l)) + &BigNat::pow2(d * l + shift) < n;
    if !fits(1) {
        return None;
    }
    let mut l = 1;
    while fits(l + 1) {
        l += 1;
    }
    Some(l)
}

fn pattern_length(g: &GeneratorDescriptor) -> Result<usize> {
    match g.kind() {
        GeneratorKind::ThueMorse => Ok(1),
        GeneratorKind::PatternK => Ok(g.spec().pattern_len()),
        GeneratorKind::GeneralPattern => Err(Error::precondition(format!(
            "no witness construction for general pattern sequences ({g})"
        ))),
    }
}

/// Builds and checks a lower bound on M(S, N) for S = s(P(n + a)), where a is
/// the smallest shift giving P nonnegative coefficients.
///
/// Chooses the largest l ≥ 2 with 1 + y·2^l + 2^{dl+shift} < N, checks
/// property (ii) at l and property (i) for every n below the bound, and
/// refuses the certificate if any check fails.
pub fn bound_certificate(g: &GeneratorDescriptor, n: usize) -> Result<BoundCertificate> {
    let k = pattern_length(g)?;
    let p = g
        .rarefaction()
        .ok_or_else(|| Error::precondition(format!("{g} has no rarefying polynomial")))?;
    let (shift_a, q) = p.normalize_nonnegative()?;
    q.check_witness_form()?;
    let witness = find_witness(&q, k)?;
    let n = n as u64;
    let d = q.degree() as u64;
    let shift = witness.shift();
    let l = largest_l(witness.y(), d, shift, n).filter(|&l| l >= 2).ok_or_else(|| {
        let need = &(&BigNat::ONE + &witness.y().shl(2)) + &BigNat::pow2(2 * d + shift);
        Error::precondition(format!("N = {n} too small: need N > {need} for l = 2"))
    })?;
    let cert = certify(g.clone(), shift_a, witness, n, l)?;
    Ok(cert)
}

fn certify(descriptor: GeneratorDescriptor, shift_a: BigNat, witness: Witness, n: u64, l: u64) -> Result<BoundCertificate> {
    let poly = witness.poly().clone();
    let k = witness.k();
    let d = poly.degree() as u64;
    let shift = witness.shift();
    let bound = noninterference_limit(&poly, l, k)?;
    let separation = property_ii(&poly, k, witness.y(), shift, l)?;
    let k1 = BigNat::pow2(d * l);
    let k2 = BigNat::pow2(d * l + shift);
    let mut failures = Vec::new();
    if !separation.differs() {
        failures.push(format!(
            "property (ii) fails at l = {l}: both indices give {} (witness l0 = {})",
            separation.left_value,
            witness.l0()
        ));
    }
    let mismatch = (0..bound)
        .into_par_iter()
        .map(|m| agrees_shifted(&poly, k, l, &BigNat::from(m), shift).map(|ok| (!ok).then_some(m)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    if let Some(m) = mismatch {
        failures.push(format!("property (i) fails at n = {m} (l = {l}, range 0..{bound})"));
    }
    if &k2 + &BigNat::from(bound) > BigNat::from(n) {
        failures.push(format!("k2 + bound = {k2} + {bound} exceeds N = {n}"));
    }
    if BigNat::from(bound) > &BigNat::ONE + &witness.y().shl(l) {
        failures.push(format!("bound {bound} exceeds 1 + y·2^l"));
    }
    if !failures.is_empty() {
        return Err(Error::CertificateRefused(failures.join("; ")));
    }
    Ok(BoundCertificate {
        descriptor,
        normalization_shift: shift_a,
        witness,
        n,
        l,
        bound,
        checks: CertificateChecks {
            separation,
            range_end: bound,
            k1,
            k2,
        },
    })
}

impl BoundCertificate {
    /// The sequence the bound is about: the base sequence along Q.
    pub fn certified_descriptor(&self) -> GeneratorDescriptor {
        let base = match self.witness.k() {
            1 => GeneratorDescriptor::thue_morse(),
            k => GeneratorDescriptor::pattern_k(k).expect("k >= 2"),
        };
        base.along(self.witness.poly().clone())
    }

    /// Recomputes every check from the recorded fields.
    pub fn recheck(&self) -> Result<()> {
        let mut failures = Vec::new();
        let w = &self.witness;
        let poly = w.poly();
        poly.check_witness_form()?;
        match w {
            Witness::ThueMorse(t) => {
                let d = poly.degree() as u64;
                if t.z != poly.z_constant()?
                    || t.y != BigNat::pow2(t.lambda)
                    || t.r != t.lambda * (d - 1)
                    || t.z.bits() != t.lambda + 1
                {
                    failures.push("Thue–Morse witness does not match its closed forms".to_string());
                }
            }
            Witness::Pattern(p) => {
                if p.z != poly.z_constant()?
                    || p.a != BigNat::pow2(p.lambda)
                    || p.y.to_biguint() != f_a(&p.a.to_biguint(), p.u)
                {
                    failures.push("pattern witness does not match y = f_a(2^u), a = 2^λ'".to_string());
                }
            }
        }
        if let Some(p) = self.descriptor.rarefaction() {
            if p.translate(&self.normalization_shift) != *poly {
                failures.push("normalized polynomial does not match the descriptor".to_string());
            }
        }
        let d = poly.degree() as u64;
        if largest_l(w.y(), d, w.shift(), self.n) != Some(self.l) || self.l < 2 {
            failures.push(format!("l = {} is not the largest admissible l for N = {}", self.l, self.n));
        }
        match certify(self.descriptor.clone(), self.normalization_shift.clone(), w.clone(), self.n, self.l) {
            Ok(fresh) => {
                if fresh.bound != self.bound || fresh.checks != self.checks {
                    failures.push("recorded bound or transcript differs from recomputation".to_string());
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::CertificateRefused(failures.join("; ")))
        }
    }

    /// Structured text form; see [`BoundCertificate::from_text`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for BoundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witness;
        writeln!(f, "{HEADER}")?;
        writeln!(f, "sequence: {}", self.descriptor)?;
        writeln!(f, "normalization-shift: {}", self.normalization_shift)?;
        writeln!(f, "poly: {}", w.poly().to_literal())?;
        writeln!(f, "k: {}", w.k())?;
        match w {
            Witness::ThueMorse(t) => {
                writeln!(f, "scheme: thue-morse")?;
                writeln!(f, "z: {}", t.z)?;
                writeln!(f, "lambda: {}", t.lambda)?;
                writeln!(f, "y: {}", t.y)?;
                writeln!(f, "r: {}", t.r)?;
            }
            Witness::Pattern(p) => {
                writeln!(f, "scheme: pattern")?;
                writeln!(f, "z: {}", p.z)?;
                writeln!(f, "lambda: {}", p.lambda)?;
                writeln!(f, "a: {}", p.a)?;
                writeln!(f, "u: {}", p.u)?;
                writeln!(f, "y: {}", p.y)?;
                writeln!(f, "s: {}", p.s)?;
            }
        }
        writeln!(f, "l0: {}", w.l0())?;
        writeln!(f, "N: {}", self.n)?;
        writeln!(f, "l: {}", self.l)?;
        writeln!(f, "alpha-max: {}", w.poly().alpha_max())?;
        writeln!(f, "bound: {}", self.bound)?;
        let c = &self.checks;
        writeln!(f, "check.separation.left-index: {}", c.separation.left_index)?;
        writeln!(f, "check.separation.right-index: {}", c.separation.right_index)?;
        writeln!(f, "check.separation.left-value: {}", c.separation.left_value)?;
        writeln!(f, "check.separation.right-value: {}", c.separation.right_value)?;
        writeln!(f, "check.agreement.range: 0..{}", c.range_end)?;
        writeln!(f, "check.k1: {}", c.k1)?;
        writeln!(f, "check.k2: {}", c.k2)
    }
}

impl FromStr for BoundCertificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some(HEADER) {
            return Err(Error::Parse(format!("missing header line {HEADER:?}")));
        }
        let mut fields = BTreeMap::new();
        for line in lines {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got {line:?}")))?;
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |key: &str| -> Result<&str> {
            fields
                .get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
        };
        let num = |key: &str| -> Result<u64> { get(key)?.parse().map_err(|_| Error::Parse(format!("bad {key:?}"))) };
        let big = |key: &str| -> Result<BigNat> { get(key)?.parse() };
        let byte = |key: &str| -> Result<u8> { get(key)?.parse().map_err(|_| Error::Parse(format!("bad {key:?}"))) };

        let poly: IntPolynomial = get("poly")?.parse()?;
        let k = num("k")? as usize;
        let witness = match get("scheme")? {
            "thue-morse" => Witness::ThueMorse(TmWitness {
                poly,
                z: big("z")?,
                lambda: num("lambda")?,
                y: big("y")?,
                r: num("r")?,
                l0: num("l0")?,
            }),
            "pattern" => Witness::Pattern(PatternWitness {
                poly,
                k,
                z: big("z")?,
                lambda: num("lambda")?,
                a: big("a")?,
                u: num("u")?,
                y: big("y")?,
                s: num("s")?,
                l0: num("l0")?,
            }),
            other => return Err(Error::Parse(format!("unknown scheme {other:?}"))),
        };
        if witness.k() != k {
            return Err(Error::Parse(format!("k = {k} does not match the scheme")));
        }
        let range = get("check.agreement.range")?;
        let range_end = range
            .strip_prefix("0..")
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad agreement range {range:?}")))?;
        Ok(BoundCertificate {
            descriptor: get("sequence")?.parse()?,
            normalization_shift: big("normalization-shift")?,
            witness,
            n: num("N")?,
            l: num("l")?,
            bound: num("bound")?,
            checks: CertificateChecks {
                separation: PropertyTwoCheck {
                    left_index: big("check.separation.left-index")?,
                    right_index: big("check.separation.right-index")?,
                    left_value: byte("check.separation.left-value")?,
                    right_value: byte("check.separation.right-value")?,
                },
                range_end,
                k1: big("check.k1")?,
                k2: big("check.k2")?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moc::moc_fast;
    use crate::sequences::generate_prefix;

    fn along(base: &str, c: &[i64]) -> GeneratorDescriptor {
        base.parse::<GeneratorDescriptor>()
            .unwrap()
            .along(IntPolynomial::from_i64(c))
    }

    #[test]
    fn square_at_l_eight() {
        // l = 8 needs 1 + 2·2^8 + 2^17 < N ≤ 1 + 2·2^9 + 2^19.
        let g = along("tm", &[0, 0, 1]);
        let n = (1 << 17) + 600;
        let cert = bound_certificate(&g, n).unwrap();
        assert_eq!(cert.l, 8);
        assert_eq!(cert.bound, 91);
        let s = generate_prefix(&cert.certified_descriptor(), n).unwrap();
        assert!(moc_fast(&s, n).unwrap().m as u64 >= cert.bound);
        cert.recheck().unwrap();
    }

    #[test]
    fn text_round_trip_and_tamper() {
        let g = along("tm", &[-1, 0, 1]);
        let cert = bound_certificate(&g, 1 << 14).unwrap();
        assert_eq!(cert.normalization_shift, BigNat::ONE);
        let text = cert.to_text();
        let back = BoundCertificate::from_text(&text).unwrap();
        assert_eq!(back, cert);
        back.recheck().unwrap();
        let tampered = text.replace(&format!("bound: {}", cert.bound), &format!("bound: {}", cert.bound + 1));
        assert!(BoundCertificate::from_text(&tampered).unwrap().recheck().is_err());
        assert!(BoundCertificate::from_text("nonsense").is_err());
    }

    #[test]
    fn small_n_is_a_precondition_error() {
        let g = along("tm", &[0, 0, 1]);
        assert!(matches!(bound_certificate(&g, 20), Err(Error::Precondition(_))));
        assert!(bound_certificate(&"tm".parse().unwrap(), 1 << 12).is_err());
    }
}
