//! Deciding whether an element is a positive rational multiple of a root of
//! unity.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::field;
use super::num::CycNum;

/// The polar form q·ζ_M^e of an element whose length and angle are both
/// rational (angle measured in turns: e/M).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngleForm {
    #[serde(with = "crate::serial::rational")]
    pub length: BigRational,
    pub exponent: u32,
    pub modulus: u32,
}

impl RationalAngleForm {
    /// Rebuilds q·ζ_M^e inside `conductor`.
    pub fn to_cycnum(&self, conductor: u32) -> Result<CycNum> {
        let root = CycNum::root_of_unity_in(i64::from(self.exponent), self.modulus, conductor)?;
        Ok(root.scale(&self.length))
    }

    /// The form of the negated element (same length, half-turn rotation).
    pub fn reversed(&self) -> RationalAngleForm {
        RationalAngleForm {
            length: self.length.clone(),
            exponent: (self.exponent + self.modulus / 2) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Direction exponent modulo a half turn; equal for parallel vectors.
    pub fn line_direction(&self) -> u32 {
        self.exponent % (self.modulus / 2)
    }

    pub fn is_unit(&self) -> bool {
        self.length == BigRational::from_integer(1.into())
    }
}

pub(crate) struct RootTable {
    pub modulus: u32,
    pub roots: Vec<CycNum>,
    index: HashMap<CycNum, u32>,
}

impl RootTable {
    pub fn exponent_of(&self, x: &CycNum) -> Option<u32> {
        self.index.get(x).copied()
    }
}

/// Every root of unity of Q(ζ_N), indexed by exponent of ζ_{lcm(2,N)}.
pub(crate) fn root_table(conductor: u32) -> Result<Arc<RootTable>> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<RootTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = tables.read().expect("root table poisoned").get(&conductor) {
        return Ok(Arc::clone(t));
    }
    let f = field(conductor)?;
    let modulus = f.roots_modulus();
    let roots: Vec<CycNum> = (0..u64::from(modulus))
        .map(|j| CycNum::root_in_group(&f, j))
        .collect();
    let index = roots
        .iter()
        .enumerate()
        .map(|(e, r)| (r.clone(), e as u32))
        .collect();
    let table = Arc::new(RootTable {
        modulus,
        roots,
        index,
    });
    let mut guard = tables.write().expect("root table poisoned");
    Ok(Arc::clone(guard.entry(conductor).or_insert(table)))
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let exact = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(exact(q.numer())?, exact(q.denom())?))
}

/// Decides whether `w = q·ζ` with `q` a positive rational and `ζ` a root of
/// unity, returning the polar form with ζ = ζ_M^e, M = lcm(2, N).
///
/// If w = q·ζ then |w|² = q² is rational and w/q is one of the finitely many
/// roots of unity of Q(ζ_N), so looking w/q up in the root table decides the
/// question completely.
pub fn classify_rational_angle(w: &CycNum) -> Result<Option<RationalAngleForm>> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    let Some(norm) = w.norm_sq().as_rational() else {
        return Ok(None);
    };
    let Some(length) = rational_sqrt(&norm) else {
        return Ok(None);
    };
    let table = root_table(w.conductor())?;
    let unit = w.scale(&length.recip());
    Ok(table.exponent_of(&unit).map(|exponent| RationalAngleForm {
        length,
        exponent,
        modulus: table.modulus,
    }))
}

/// Reference decision procedure: tries every exponent e ∈ [0, M) and tests
/// whether w·ζ_M^{−e} is a positive rational. Quadratic in M; kept for
/// cross-checking [`classify_rational_angle`].
pub fn classify_rational_angle_scan(w: &CycNum) -> Result<Option<RationalAngleForm>> {
    if w.is_zero() {
        return Err(Error::ZeroInput);
    }
    let table = root_table(w.conductor())?;
    let m = table.modulus;
    for e in 0..m {
        let rotated = w * &table.roots[((m - e) % m) as usize];
        if let Some(q) = rotated.as_rational() {
            if q.is_positive() {
                return Ok(Some(RationalAngleForm {
                    length: q,
                    exponent: e,
                    modulus: m,
                }));
            }
        }
    }
    Ok(None)
}

impl CycNum {
    pub fn classify_rational_angle(&self) -> Result<Option<RationalAngleForm>> {
        classify_rational_angle(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: i64, n: u32) -> CycNum {
        CycNum::root_of_unity(e, n).unwrap()
    }

    #[test]
    fn unit_horizontal() {
        let w = CycNum::one(4).unwrap();
        let form = classify_rational_angle(&w).unwrap().unwrap();
        assert_eq!(form.length, BigRational::from_integer(1.into()));
        assert_eq!(form.exponent, 0);
        assert_eq!(form.modulus, 4);
    }

    #[test]
    fn diagonal_is_irrational() {
        let w = &CycNum::one(4).unwrap() + &z(1, 4);
        assert_eq!(classify_rational_angle(&w).unwrap(), None);
        assert_eq!(classify_rational_angle_scan(&w).unwrap(), None);
    }

    #[test]
    fn three_zeta_six() {
        let w = z(1, 6).scale(&BigRational::from_integer(3.into()));
        let form = classify_rational_angle(&w).unwrap().unwrap();
        assert_eq!(form.length, BigRational::from_integer(3.into()));
        assert_eq!((form.exponent, form.modulus), (1, 6));
        assert_eq!(form.to_cycnum(6).unwrap(), w);
    }

    #[test]
    fn odd_conductor_uses_doubled_modulus() {
        // −1 in conductor 3 is ζ_6^3
        let w = CycNum::from_integer(-2, 3).unwrap();
        let form = classify_rational_angle(&w).unwrap().unwrap();
        assert_eq!((form.exponent, form.modulus), (3, 6));
        assert_eq!(form.length, BigRational::from_integer(2.into()));
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(
            classify_rational_angle(&CycNum::zero(4).unwrap()),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn pythagorean_vector_has_irrational_angle() {
        // 3 + 4i has length 5 but its argument is not a rational multiple of π
        let w = &CycNum::from_integer(3, 4).unwrap() + &z(1, 4).scale(&BigRational::from_integer(4.into()));
        assert_eq!(classify_rational_angle(&w).unwrap(), None);
    }

    #[test]
    fn reversed_form() {
        let w = z(1, 6).scale(&BigRational::new(1.into(), 2.into()));
        let f = classify_rational_angle(&w).unwrap().unwrap();
        let g = classify_rational_angle(&-&w).unwrap().unwrap();
        assert_eq!(f.reversed(), g);
        assert_eq!(f.line_direction(), g.line_direction());
    }

    #[test]
    fn sqrt_helper() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(rational_sqrt(&r(9, 4)), Some(r(3, 2)));
        assert_eq!(rational_sqrt(&r(2, 1)), None);
        assert_eq!(rational_sqrt(&r(-1, 1)), None);
    }
}
