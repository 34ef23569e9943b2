//! Cyclotomic polynomials and the small rational-polynomial kit used for
//! field inversion.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};

/// The `n`-th cyclotomic polynomial Φ_n, coefficients from the constant term
/// upward.
///
/// Computed from Φ_n(x) = ∏_{d | n} (x^d − 1)^{μ(n/d)}: all factors with
/// μ = +1 are multiplied out first, then each factor with μ = −1 is divided
/// off exactly.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::ZeroConductor);
    }
    let n = u64::from(n);
    let mut poly = vec![1i64];
    let mut divide_by = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => poly = mul_x_pow_minus_one(&poly, d as usize),
            -1 => divide_by.push(d as usize),
            _ => {}
        }
    }
    for d in divide_by {
        poly = div_x_pow_minus_one(&poly, d);
    }
    Ok(poly)
}

fn mul_x_pow_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

// Exact division by x^d - 1; the caller guarantees divisibility.
fn div_x_pow_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let qlen = p.len() - d;
    let mut q = vec![0i64; qlen];
    // p = q * (x^d - 1)  =>  p[i] = q[i - d] - q[i]
    // solve from the top: q[i - d] = p[i] + q[i]
    for i in (d..p.len()).rev() {
        let upper = if i < qlen { q[i] } else { 0 };
        q[i - d] = p[i] + upper;
    }
    debug_assert!((0..d).all(|i| p[i] == -q.get(i).copied().unwrap_or(0)));
    q
}

pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn sub_scaled_shift(a: &mut RatPoly, b: &RatPoly, c: &BigRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            a[i + shift] -= c * bi;
        }
    }
}

/// Polynomial division with remainder over Q; `b` must be nonzero and trimmed.
pub(crate) fn divmod(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lead;
        sub_scaled_shift(&mut r, b, &c, shift);
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut out = a.clone();
    sub_scaled_shift(&mut out, b, &BigRational::one(), 0);
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` via the extended Euclidean
/// algorithm. Returns `None` when `a` is zero modulo `m`.
pub(crate) fn inverse_mod(a: &RatPoly, m: &RatPoly) -> Option<RatPoly> {
    let mut r0 = m.clone();
    let mut r1 = divmod(a, m).1;
    if r1.is_empty() {
        return None;
    }
    let mut s0: RatPoly = Vec::new();
    let mut s1: RatPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the (constant) gcd
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let inv: RatPoly = s0.into_iter().map(|x| x / &c).collect();
    Some(divmod(&inv, m).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3).unwrap(), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap(), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(cyclotomic_polynomial(0), Err(Error::ZeroConductor)));
    }

    #[test]
    fn phi_105_has_a_coefficient_of_minus_two() {
        let p = cyclotomic_polynomial(105).unwrap();
        assert_eq!(p.len(), 49);
        assert_eq!(p[7], -2);
        assert_eq!(p[41], -2);
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=120u32 {
            let p = cyclotomic_polynomial(n).unwrap();
            assert_eq!(p.len() as u64 - 1, crate::arith::totient(u64::from(n)));
            assert_eq!(*p.last().unwrap(), 1);
        }
    }
}
