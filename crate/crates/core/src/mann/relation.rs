use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::cyclotomic::{CycNum, MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::subsets::{vanishing_proper_subset, DEFAULT_SUBSET_CAP};

use super::bounds::{extension_modulus, mann_modulus};

pub const RELATION_FORMAT_VERSION: u32 = 1;

/// A weighted sum Σ coeffs[i]·ζ_M^{exponents[i]} together with its value.
///
/// Constructed only through [`RelationTuple::new`], which checks that the
/// sum equals the target and computes the `minimal` flag (no vanishing sum
/// over a nonempty proper index subset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTuple {
    modulus: u32,
    exponents: Vec<u32>,
    coeffs: Vec<BigRational>,
    target: CycNum,
    minimal: bool,
}

impl RelationTuple {
    pub fn new(
        modulus: u32,
        exponents: Vec<u32>,
        coeffs: Vec<BigRational>,
        target: CycNum,
    ) -> Result<RelationTuple> {
        if modulus == 0 {
            return Err(Error::ZeroConductor);
        }
        if exponents.is_empty() || exponents.len() != coeffs.len() {
            return Err(Error::InvalidRelation(format!(
                "{} roots but {} coefficients",
                exponents.len(),
                coeffs.len()
            )));
        }
        if let Some(&e) = exponents.iter().find(|&&e| e >= modulus) {
            return Err(Error::InvalidRelation(format!(
                "exponent {e} out of range for modulus {modulus}"
            )));
        }
        if coeffs.iter().any(Zero::is_zero) {
            return Err(Error::InvalidRelation("zero coefficient".into()));
        }
        let mut t = RelationTuple {
            modulus,
            exponents,
            coeffs,
            target,
            minimal: false,
        };
        let terms = t.terms()?;
        let sum = terms
            .iter()
            .fold(CycNum::zero(modulus)?, |acc, x| &acc + x);
        if !(&sum - &t.target).is_zero() {
            return Err(Error::RelationMismatch);
        }
        t.minimal = vanishing_proper_subset(&terms, DEFAULT_SUBSET_CAP)?.is_none();
        Ok(t)
    }

    pub(crate) fn from_verified(
        modulus: u32,
        exponents: Vec<u32>,
        coeffs: Vec<BigRational>,
        target: CycNum,
        minimal: bool,
    ) -> RelationTuple {
        RelationTuple {
            modulus,
            exponents,
            coeffs,
            target,
            minimal,
        }
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn target(&self) -> &CycNum {
        &self.target
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    /// The roots ζ_M^{e_i} as field elements of conductor M.
    pub fn roots(&self) -> Vec<CycNum> {
        self.exponents
            .iter()
            .map(|&e| CycNum::root_of_unity(i64::from(e), self.modulus).expect("valid modulus"))
            .collect()
    }

    /// The weighted terms coeffs[i]·roots[i].
    pub fn terms(&self) -> Result<Vec<CycNum>> {
        self.exponents
            .iter()
            .zip(&self.coeffs)
            .map(|(&e, c)| Ok(CycNum::root_of_unity(i64::from(e), self.modulus)?.scale(c)))
            .collect()
    }

    /// Nonempty proper index subset with vanishing weighted sum, if any.
    pub fn vanishing_subsum(&self) -> Result<Option<Vec<usize>>> {
        subsum_vanishes(self, DEFAULT_SUBSET_CAP)
    }

    /// Canonical representative of a vanishing sum under rotation: among all
    /// rotations that send some root to 1, the lexicographically smallest
    /// sorted list of (exponent, coefficient) pairs.
    pub fn normalized(&self) -> Result<RelationTuple> {
        if !self.target.is_zero() {
            return Err(Error::InvalidRelation(
                "rotation normal form applies to vanishing sums only".into(),
            ));
        }
        let pairs = normal_form(self.modulus, &self.exponents, &self.coeffs);
        let (exponents, coeffs) = pairs.into_iter().unzip();
        Ok(RelationTuple {
            modulus: self.modulus,
            exponents,
            coeffs,
            target: self.target.clone(),
            minimal: self.minimal,
        })
    }
}

pub(crate) fn normal_form(modulus: u32, exps: &[u32], coeffs: &[BigRational]) -> Vec<(u32, BigRational)> {
    let mut best: Option<Vec<(u32, BigRational)>> = None;
    let mut rotations: Vec<u32> = exps.to_vec();
    rotations.sort_unstable();
    rotations.dedup();
    for r in rotations {
        let mut cand: Vec<(u32, BigRational)> = exps
            .iter()
            .zip(coeffs)
            .map(|(&e, c)| ((e + modulus - r) % modulus, c.clone()))
            .collect();
        cand.sort();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Finds a nonempty proper index subset whose weighted sum is exactly zero.
pub fn subsum_vanishes(t: &RelationTuple, cap: usize) -> Result<Option<Vec<usize>>> {
    if t.k() > cap {
        return Err(Error::LengthCapExceeded { len: t.k(), cap });
    }
    vanishing_proper_subset(&t.terms()?, cap)
}

/// Outcome of checking Mann's conclusion on one tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MannCertificate {
    pub k: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub modulus: BigUint,
    pub verdict: bool,
    pub witness: Option<(usize, usize)>,
}

fn serialize_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

// (ζ_M^a / ζ_M^b)^m = 1  <=>  M | m·(a − b)
fn ratio_order_divides(a: u64, b: u64, modulus: u64, m: &BigUint) -> bool {
    let diff = (a + modulus - b % modulus) % modulus;
    (m * diff) % modulus == BigUint::zero()
}

/// Checks (ζ_i/ζ_j)^m = 1 for every pair of roots of a minimal vanishing
/// sum, with m = ∏_{p ≤ k} p.
pub fn certify_mann(t: &RelationTuple) -> Result<MannCertificate> {
    if !t.target.is_zero() {
        return Err(Error::NotMinimalVanishingSum("target is nonzero".into()));
    }
    if !t.minimal {
        return Err(Error::NotMinimalVanishingSum(
            "tuple has a vanishing proper subsum".into(),
        ));
    }
    let k = t.k();
    let m = mann_modulus(k as u32);
    let modulus = u64::from(t.modulus);
    let mut witness = None;
    'outer: for i in 0..k {
        for j in 0..k {
            let (a, b) = (u64::from(t.exponents[i]), u64::from(t.exponents[j]));
            if !ratio_order_divides(a, b, modulus, &m) {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(MannCertificate {
        k,
        modulus: m,
        verdict: witness.is_none(),
        witness,
    })
}

/// Outcome of checking the two-representation extension on a pair of
/// tuples with the same nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub modulus: BigUint,
    pub verdict: bool,
    /// For each root of the second tuple, the index of a root of the first
    /// tuple whose ratio with it has order dividing the modulus.
    pub matches: Vec<Option<usize>>,
}

/// For every root ζ*_j of `t2`, looks for a root ζ_i of `t1` with
/// (ζ*_j/ζ_i)^m = 1, m = ∏_{p ≤ 2k} p.
pub fn certify_extension(t1: &RelationTuple, t2: &RelationTuple) -> Result<ExtensionCertificate> {
    if !t1.target.value_eq(&t2.target) {
        return Err(Error::TargetsDiffer);
    }
    if t1.target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    if !t1.minimal || !t2.minimal {
        return Err(Error::InvalidRelation(
            "both tuples must be free of vanishing subsums".into(),
        ));
    }
    let k = t1.k().max(t2.k()) as u32;
    let m = extension_modulus(k);
    let l = lcm(u64::from(t1.modulus), u64::from(t2.modulus));
    if l > u64::from(MAX_CONDUCTOR) {
        return Err(Error::ConductorTooLarge {
            requested: l,
            limit: MAX_CONDUCTOR,
        });
    }
    let s1 = l / u64::from(t1.modulus);
    let s2 = l / u64::from(t2.modulus);
    let matches: Vec<Option<usize>> = t2
        .exponents
        .iter()
        .map(|&b| {
            t1.exponents
                .iter()
                .position(|&a| ratio_order_divides(u64::from(b) * s2, u64::from(a) * s1, l, &m))
        })
        .collect();
    Ok(ExtensionCertificate {
        modulus: m,
        verdict: matches.iter().all(Option::is_some),
        matches,
    })
}

#[derive(Serialize, Deserialize)]
struct RelationFile {
    format_version: u32,
    k: usize,
    conductor: u32,
    roots: Vec<u32>,
    #[serde(with = "crate::serial::rational_vec")]
    coeffs: Vec<BigRational>,
    target: CycNum,
    minimal: bool,
}

impl Serialize for RelationTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationFile {
            format_version: RELATION_FORMAT_VERSION,
            k: self.k(),
            conductor: self.modulus,
            roots: self.exponents.clone(),
            coeffs: self.coeffs.clone(),
            target: self.target.clone(),
            minimal: self.minimal,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<RelationTuple, D::Error> {
        use serde::de::Error as _;
        let f = RelationFile::deserialize(d)?;
        if f.format_version != RELATION_FORMAT_VERSION {
            return Err(D::Error::custom(Error::FormatVersion {
                found: f.format_version,
                expected: RELATION_FORMAT_VERSION,
            }));
        }
        if f.k != f.roots.len() {
            return Err(D::Error::custom("k does not match the number of roots"));
        }
        let t = RelationTuple::new(f.conductor, f.roots, f.coeffs, f.target).map_err(D::Error::custom)?;
        if t.minimal != f.minimal {
            return Err(D::Error::custom("minimal flag does not match the relation"));
        }
        Ok(t)
    }
}
