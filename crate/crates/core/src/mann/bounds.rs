//! Prime products and the algebraic ceilings derived from them.

use num_bigint::BigUint;
use num_traits::One;

/// All primes p ≤ x in increasing order (empty for x < 2).
pub fn primes_upto(x: f64) -> Vec<u64> {
    if !(x >= 2.0) {
        return Vec::new();
    }
    let n = x.floor() as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(p, &is_prime)| is_prime.then_some(p as u64))
        .collect()
}

/// Product of the primes p ≤ x.
pub fn primorial(x: u64) -> BigUint {
    primes_upto(x as f64)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p)
}

/// m = ∏_{p ≤ k} p: every ratio of roots in a minimal vanishing sum of
/// length k has order dividing m.
pub fn mann_modulus(k: u32) -> BigUint {
    primorial(u64::from(k))
}

/// C(k) = ∏_{p ≤ 2k} p, the modulus for two representations of the same
/// nonzero value.
pub fn extension_modulus(k: u32) -> BigUint {
    primorial(2 * u64::from(k))
}

/// (k·C(k))^k, the ceiling on |Z_a^k| for any nonzero a.
pub fn z_bound(k: u32) -> BigUint {
    (extension_modulus(k) * k).pow(k)
}

/// Chebyshev's ϑ(x) = Σ_{p ≤ x} log p, in floating point.
pub fn chebyshev_theta(x: f64) -> f64 {
    primes_upto(x).into_iter().map(|p| (p as f64).ln()).sum()
}

/// Exact test of ϑ(x) < 4x·log 2, i.e. ∏_{p ≤ x} p < 2^{4x}.
pub fn chebyshev_bound_holds(x: u64) -> bool {
    primorial(x).bits() <= 4 * x
}

/// Checks ϑ(x) < 4x·log 2 exactly for every integer 2 ≤ x ≤ `upto`,
/// maintaining the primorial incrementally. Returns the first failing x.
pub fn chebyshev_bound_scan(upto: u64) -> Result<(), u64> {
    let primes = primes_upto(upto as f64);
    let mut next = primes.iter().peekable();
    let mut product = BigUint::one();
    for x in 2..=upto {
        while let Some(&&p) = next.peek() {
            if p > x {
                break;
            }
            product *= p;
            next.next();
        }
        // product < 2^{4x}  <=>  bit length <= 4x
        if product.bits() > 4 * x {
            return Err(x);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_lists() {
        assert!(primes_upto(1.0).is_empty());
        assert!(primes_upto(-3.0).is_empty());
        assert_eq!(primes_upto(4.0), vec![2, 3]);
        assert_eq!(primes_upto(10.0), vec![2, 3, 5, 7]);
        assert_eq!(primes_upto(10.9), vec![2, 3, 5, 7]);
        assert_eq!(primes_upto(10_000.0).len(), 1229);
    }

    #[test]
    fn moduli() {
        assert_eq!(mann_modulus(1), BigUint::from(1u32));
        assert_eq!(mann_modulus(3), BigUint::from(6u32));
        assert_eq!(mann_modulus(5), BigUint::from(30u32));
        assert_eq!(extension_modulus(1), BigUint::from(2u32));
        assert_eq!(extension_modulus(2), BigUint::from(6u32));
        assert_eq!(extension_modulus(3), BigUint::from(30u32));
    }

    #[test]
    fn mann_modulus_divides_extension_modulus() {
        for k in 1..=40 {
            assert_eq!(extension_modulus(k) % mann_modulus(k), BigUint::from(0u32));
        }
    }

    #[test]
    fn z_bounds() {
        assert_eq!(z_bound(1), BigUint::from(2u32));
        assert_eq!(z_bound(2), BigUint::from(144u32));
        assert_eq!(z_bound(3), BigUint::from(729_000u32));
    }

    #[test]
    fn theta_values() {
        assert_eq!(chebyshev_theta(1.0), 0.0);
        assert!((chebyshev_theta(4.0) - 6f64.ln()).abs() < 1e-12);
        let x = 10_000.0;
        assert!(chebyshev_theta(x) < 4.0 * x * 2f64.ln());
        assert!(chebyshev_bound_holds(10_000));
    }

    #[test]
    fn theta_matches_log_of_extension_modulus() {
        // ϑ(2k) = log C(k)
        for k in 1..=20u32 {
            let c = extension_modulus(k);
            let log_c: f64 = c.to_string().parse::<f64>().unwrap().ln();
            assert!((chebyshev_theta(f64::from(2 * k)) - log_c).abs() < 1e-9);
        }
    }
}
