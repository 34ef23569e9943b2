//! Numeric embedding ζ_N ↦ e^{2πi/N}.
//!
//! `to_complex` is for reporting only. `real_sign` decides the sign of a
//! real element exactly: zero is tested exactly, and a nonzero value is
//! evaluated in fixed-point arithmetic with a proven error bound, doubling
//! the precision until the bound separates the value from zero.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::num::CycNum;

// Extra bits carried beyond the target precision; the accumulated error of
// the series below stays far under 2^GUARD ulps for any precision we reach.
const GUARD: u64 = 32;

impl CycNum {
    /// Floating-point value of the element (≈1e-12 relative accuracy for
    /// moderate coefficients). Never used by predicates.
    pub fn to_complex(&self) -> Complex64 {
        let n = f64::from(self.conductor());
        let den = self.denominator().to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.numerators().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = std::f64::consts::TAU * j as f64 / n;
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(c, theta);
        }
        acc / den
    }

    /// Exact sign of a real element.
    pub fn real_sign(&self) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            });
        }
        let n = u64::from(self.conductor());
        let weight: BigInt = self.numerators().iter().map(|c| c.abs()).sum();
        let mut prec = 64u64;
        loop {
            let w = prec + GUARD;
            let pi = fixed_pi(w);
            let mut value = BigInt::zero();
            for (j, c) in self.numerators().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                value += c * fixed_cos_turn(j as u64, n, &pi, w);
            }
            // each cosine is within 2^GUARD ulps of the truth
            let bound = &weight << GUARD;
            if value.abs() > bound {
                return Ok(if value.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
            prec *= 2;
        }
    }
}

// atan(1/x) · 2^w, truncated term by term.
fn fixed_atan_inv(x: u64, w: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::from(1) << w) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

// π · 2^w by Machin's formula.
fn fixed_pi(w: u64) -> BigInt {
    fixed_atan_inv(5, w) * 16 - fixed_atan_inv(239, w) * 4
}

// cos(2π j / n) · 2^w.
fn fixed_cos_turn(j: u64, n: u64, pi: &BigInt, w: u64) -> BigInt {
    let j = j % n;
    // fold into [0, π] using cos(2π - t) = cos(t)
    let j = if 2 * j > n { n - j } else { j };
    let theta: BigInt = pi * BigInt::from(2 * j) / BigInt::from(n);
    let one = BigInt::from(1) << w;
    let theta2 = (&theta * &theta) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 1u64;
    loop {
        term = (&term * &theta2) >> w;
        term /= BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn z(e: i64, n: u32) -> CycNum {
        CycNum::root_of_unity(e, n).unwrap()
    }

    #[test]
    fn approximations() {
        let i = z(1, 4).to_complex();
        assert!((i.re).abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let s = &(&CycNum::one(3).unwrap() + &z(1, 3)) + &z(2, 3);
        assert!(s.to_complex().norm() < 1e-12);
        let e8 = z(1, 8).to_complex();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e8.re - h).abs() < 1e-12 && (e8.im - h).abs() < 1e-12);
    }

    #[test]
    fn pi_digits() {
        let w = 200;
        let pi = fixed_pi(w);
        // compare the top 60 bits with the f64 value
        let approx = (pi >> (w - 60)).to_f64().unwrap() / 2f64.powi(60);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn signs_of_real_elements() {
        // ζ_5 + ζ_5^{-1} = (√5 − 1)/2 > 0
        let golden = &z(1, 5) + &z(4, 5);
        assert_eq!(golden.real_sign().unwrap(), Ordering::Greater);
        // ζ_5^2 + ζ_5^{-2} = (−√5 − 1)/2 < 0
        let other = &z(2, 5) + &z(3, 5);
        assert_eq!(other.real_sign().unwrap(), Ordering::Less);
        // a value very close to zero: (√5−1)/2 − 618034/1000000
        let close = &golden - &CycNum::from_rational(&BigRational::new(618034.into(), 1000000.into()), 5).unwrap();
        assert_eq!(close.real_sign().unwrap(), Ordering::Less);
        assert!(z(1, 4).real_sign().is_err());
        assert_eq!(CycNum::zero(7).unwrap().real_sign().unwrap(), Ordering::Equal);
    }
}
