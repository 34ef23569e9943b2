use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::lcm;
use crate::error::{Error, Result};

use super::field::{check_conductor, field, FieldData};
use super::poly;

/// An element of the cyclotomic field Q(ζ_N) in canonical form.
///
/// The element is stored as `num / den` where `num` holds the integer
/// coefficients in the power basis 1, ζ_N, …, ζ_N^{φ(N)−1} and `den` is a
/// positive common denominator. The triple is fully reduced: `den > 0` and
/// `gcd(den, num…) = 1`, with zero stored as all-zero numerators over 1. Two
/// elements with the same conductor are equal iff their fields are equal,
/// so the derived `Eq`/`Hash` are value equality within a conductor.
///
/// Elements with different conductors compare structurally unequal even
/// when they denote the same number; use [`CycNum::value_eq`] or subtract
/// (which lifts both sides) for value comparisons across conductors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    conductor: u32,
    den: BigInt,
    num: Vec<BigInt>,
}

impl CycNum {
    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> CycNum {
        let mut x = CycNum {
            conductor,
            den,
            num,
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    pub fn zero(conductor: u32) -> Result<CycNum> {
        let f = field(conductor)?;
        Ok(CycNum {
            conductor,
            den: BigInt::one(),
            num: vec![BigInt::zero(); f.phi],
        })
    }

    pub fn one(conductor: u32) -> Result<CycNum> {
        CycNum::from_integer(1, conductor)
    }

    pub fn from_integer(value: i64, conductor: u32) -> Result<CycNum> {
        CycNum::from_rational(&BigRational::from_integer(value.into()), conductor)
    }

    pub fn from_rational(value: &BigRational, conductor: u32) -> Result<CycNum> {
        let mut x = CycNum::zero(conductor)?;
        x.num[0] = value.numer().clone();
        x.den = value.denom().clone();
        x.normalize();
        Ok(x)
    }

    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<CycNum> {
        let f = field(conductor)?;
        if coeffs.len() != f.phi {
            return Err(Error::WrongCoefficientCount {
                conductor,
                expected: f.phi,
                got: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(CycNum::from_parts(conductor, num, den))
    }

    /// Builds an element from an arbitrary polynomial in ζ_N (any degree),
    /// reducing with x^N = 1 and Φ_N.
    pub fn from_poly(conductor: u32, coeffs: &[BigRational]) -> Result<CycNum> {
        let f = field(conductor)?;
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); f.phi];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for &(i, p) in &f.sparse_powers[j % f.n as usize] {
                num[i] += &scaled * p;
            }
        }
        Ok(CycNum::from_parts(conductor, num, den))
    }

    /// ζ_N^e in conductor `order`; the exponent is reduced mod `order`.
    pub fn root_of_unity(exponent: i64, order: u32) -> Result<CycNum> {
        let f = field(order)?;
        let e = exponent.rem_euclid(i64::from(order)) as usize;
        Ok(CycNum::from_power_row(&f, e))
    }

    /// ζ_M^e expressed in conductor `conductor`. Succeeds iff μ_M lies in
    /// Q(ζ_N), i.e. `order` divides lcm(2, N).
    pub fn root_of_unity_in(exponent: i64, order: u32, conductor: u32) -> Result<CycNum> {
        let f = field(conductor)?;
        check_conductor(u64::from(order))?;
        let group = f.roots_modulus();
        if group % order != 0 {
            return Err(Error::RootNotInField { order, conductor });
        }
        let j = exponent.rem_euclid(i64::from(order)) as u64 * u64::from(group / order);
        Ok(CycNum::root_in_group(&f, j))
    }

    // ζ_{lcm(2,N)}^j inside conductor N.
    pub(crate) fn root_in_group(f: &FieldData, j: u64) -> CycNum {
        let n = u64::from(f.n);
        if n % 2 == 0 {
            return CycNum::from_power_row(f, (j % n) as usize);
        }
        // N odd: ζ_{2N} = −ζ_N^{(N+1)/2}, so ζ_{2N}^j = (−1)^j ζ_N^{j(N+1)/2}
        let e = ((j % (2 * n)) * ((n + 1) / 2)) % n;
        let x = CycNum::from_power_row(f, e as usize);
        if j % 2 == 1 {
            -x
        } else {
            x
        }
    }

    fn from_power_row(f: &FieldData, e: usize) -> CycNum {
        CycNum {
            conductor: f.n,
            den: BigInt::one(),
            num: f.powers[e].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// True when the element is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Represents the same element in conductor `target`, which must be a
    /// multiple of the current conductor.
    pub fn change_conductor(&self, target: u32) -> Result<CycNum> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::IncompatibleConductor {
                from: self.conductor,
                to: target,
            });
        }
        let f = field(target)?;
        let step = (target / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &f.sparse_powers[(j * step) % f.n as usize] {
                num[i] += c * p;
            }
        }
        Ok(CycNum::from_parts(target, num, self.den.clone()))
    }

    /// Lifts both operands to the lcm of their conductors.
    pub fn lift_pair(a: &CycNum, b: &CycNum) -> Result<(CycNum, CycNum)> {
        let l = check_conductor(lcm(u64::from(a.conductor), u64::from(b.conductor)))?;
        Ok((a.change_conductor(l)?, b.change_conductor(l)?))
    }

    /// Value equality across conductors.
    pub fn value_eq(&self, other: &CycNum) -> bool {
        if self.conductor == other.conductor {
            return self == other;
        }
        match CycNum::lift_pair(self, other) {
            Ok((a, b)) => a == b,
            Err(_) => false,
        }
    }

    /// Complex conjugate, via the Galois map ζ_N ↦ ζ_N^{N−1}.
    pub fn conj(&self) -> CycNum {
        let f = field(self.conductor).expect("conductor validated at construction");
        let n = f.n as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &f.sparse_powers[(n - j % n) % n] {
                num[i] += c * p;
            }
        }
        CycNum {
            conductor: self.conductor,
            den: self.den.clone(),
            num,
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycNum::from_parts(self.conductor, num, &self.den * q.denom())
    }

    /// |x|² = x·conj(x), a totally real element.
    pub fn norm_sq(&self) -> CycNum {
        self * &self.conj()
    }

    pub fn pow(&self, mut exp: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.conductor).expect("valid conductor");
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let f = field(self.conductor)?;
        let modulus: poly::RatPoly = f
            .poly
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let mut a = self.coeffs();
        poly::trim(&mut a);
        let inv = poly::inverse_mod(&a, &modulus).ok_or(Error::ZeroInput)?;
        let mut coeffs = inv;
        coeffs.resize(f.phi, BigRational::zero());
        CycNum::from_coeffs(self.conductor, &coeffs)
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    fn add_same(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.conductor, other.conductor);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return CycNum::from_parts(self.conductor, num, self.den.clone());
        }
        let den = self.den.lcm(&other.den);
        let sa = &den / &self.den;
        let sb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &sa + b * &sb)
            .collect();
        CycNum::from_parts(self.conductor, num, den)
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.conductor, other.conductor);
        let f = field(self.conductor).expect("conductor validated at construction");
        let phi = f.phi;
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(self.conductor).expect("valid conductor");
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let n = f.n as usize;
        let mut num: Vec<BigInt> = prod.drain(..phi).collect();
        for (d, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &f.sparse_powers[(d + phi) % n] {
                num[i] += &c * p;
            }
        }
        CycNum::from_parts(self.conductor, num, &self.den * &other.den)
    }

    fn binary(&self, other: &CycNum, op: fn(&CycNum, &CycNum) -> CycNum) -> CycNum {
        if self.conductor == other.conductor {
            op(self, other)
        } else {
            let (a, b) = CycNum::lift_pair(self, other)
                .expect("lcm of two valid conductors exceeds the conductor limit");
            op(&a, &b)
        }
    }

    /// Addition that reports conductor overflow instead of panicking.
    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        let (a, b) = CycNum::lift_pair(self, other)?;
        Ok(a.add_same(&b))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        let (a, b) = CycNum::lift_pair(self, other)?;
        Ok(a.mul_same(&b))
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.binary(rhs, CycNum::add_same)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.binary(&-rhs, CycNum::add_same)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.binary(rhs, CycNum::mul_same)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            den: self.den.clone(),
            num: self.num.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.num {
            *c = -&*c;
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycNum {
    /// `N:[c0, c1, …]` with each coefficient written as `p/q` (or `p`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.conductor)?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(e: i64, n: u32) -> CycNum {
        CycNum::root_of_unity(e, n).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(0, 1), CycNum::one(1).unwrap());
        assert_eq!(z(1, 2), CycNum::from_integer(-1, 2).unwrap());
        let z6 = z(1, 6);
        assert_eq!(&(&z6 * &z6) * &z6, CycNum::from_integer(-1, 6).unwrap());
        assert_eq!(z(-1, 5), z(4, 5));
        for n in 1..=30 {
            assert_eq!(z(1, n).pow(u64::from(n)), CycNum::one(n).unwrap());
        }
    }

    #[test]
    fn ring_examples() {
        let one = CycNum::one(1).unwrap();
        let m1 = CycNum::from_integer(-1, 1).unwrap();
        assert!((&one + &m1).is_zero());
        let z3 = z(1, 3);
        assert_eq!(&(&z3 * &z3) * &z3, CycNum::one(3).unwrap());
        let s = &(&CycNum::one(3).unwrap() + &z3) + &(&z3 * &z3);
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(1, 4).conj(), -z(1, 4));
        let half = CycNum::from_rational(&rat(3, 2), 7).unwrap();
        assert_eq!(half.conj(), half);
        let one3 = CycNum::one(3).unwrap();
        assert_eq!((&one3 + &z(1, 3)).conj(), &one3 + &z(2, 3));
    }

    #[test]
    fn rationality() {
        assert!(!z(1, 8).is_rational());
        let i = z(1, 4);
        let one = CycNum::one(4).unwrap();
        let p = &(&one + &i) * &(&one - &i);
        assert_eq!(p.as_rational(), Some(rat(2, 1)));
        assert_eq!(i.as_rational(), None);
    }

    #[test]
    fn conductor_changes() {
        let minus_one = CycNum::from_integer(-1, 2).unwrap();
        assert_eq!(minus_one.change_conductor(6).unwrap(), z(3, 6));
        assert_eq!(z(1, 3).change_conductor(12).unwrap(), z(4, 12));
        assert!(CycNum::zero(5).unwrap().change_conductor(35).unwrap().is_zero());
        assert!(matches!(
            z(1, 3).change_conductor(8),
            Err(Error::IncompatibleConductor { from: 3, to: 8 })
        ));
    }

    #[test]
    fn mixed_conductors_auto_lift() {
        let s = &z(1, 3) + &z(1, 4);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, &z(4, 12) + &z(3, 12));
        assert!(z(1, 2).value_eq(&CycNum::from_integer(-1, 10).unwrap()));
    }

    #[test]
    fn odd_conductor_contains_negated_roots() {
        // ζ_6 = −ζ_3² lives in conductor 3
        let r = CycNum::root_of_unity_in(1, 6, 3).unwrap();
        assert_eq!(r, -z(2, 3));
        assert!(r.value_eq(&z(1, 6)));
        assert!(CycNum::root_of_unity_in(1, 4, 3).is_err());
        for j in 0..14 {
            let r = CycNum::root_of_unity_in(j, 14, 7).unwrap();
            assert!(r.value_eq(&z(j, 14)), "j = {j}");
        }
    }

    #[test]
    fn inverse() {
        let x = &CycNum::one(5).unwrap() + &z(1, 5).scale(&rat(2, 3));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycNum::one(5).unwrap());
        assert!(CycNum::zero(5).unwrap().inv().is_err());
    }

    #[test]
    fn wrong_coefficient_count() {
        assert!(matches!(
            CycNum::from_coeffs(5, &[rat(1, 1)]),
            Err(Error::WrongCoefficientCount { expected: 4, got: 1, .. })
        ));
    }

    #[test]
    fn canonical_denominators() {
        let x = CycNum::from_coeffs(4, &[rat(2, 4), rat(-3, 6)]).unwrap();
        assert_eq!(x.to_string(), "4:[1/2, -1/2]");
        assert_eq!(x.denominator(), &BigInt::from(2));
    }
}
