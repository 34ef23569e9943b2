//! Per-conductor tables shared by all elements of Q(ζ_N).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::lcm;
use crate::error::{Error, Result};

use super::poly::cyclotomic_polynomial;

/// Largest conductor the library will build tables for.
pub const MAX_CONDUCTOR: u32 = 1 << 14;

pub(crate) struct FieldData {
    pub n: u32,
    pub phi: usize,
    pub poly: Vec<i64>,
    /// `powers[j]` = x^j mod Φ_N for 0 ≤ j < N, each of length φ(N).
    pub powers: Vec<Vec<i64>>,
    /// Nonzero entries of `powers[j]`, kept for sparse accumulation.
    pub sparse_powers: Vec<Vec<(usize, i64)>>,
}

impl FieldData {
    fn build(n: u32) -> Result<FieldData> {
        let poly = cyclotomic_polynomial(n)?;
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi.max(1)];
        if phi == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce the degree-phi term with the monic Φ_N
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        debug_assert!(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0));
        let sparse_powers = powers
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect()
            })
            .collect();
        Ok(FieldData {
            n,
            phi,
            poly,
            powers,
            sparse_powers,
        })
    }

    /// Order of the root-of-unity group inside Q(ζ_N).
    pub fn roots_modulus(&self) -> u32 {
        lcm(2, u64::from(self.n)) as u32
    }
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn check_conductor(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroConductor);
    }
    if n > u64::from(MAX_CONDUCTOR) {
        return Err(Error::ConductorTooLarge {
            requested: n,
            limit: MAX_CONDUCTOR,
        });
    }
    Ok(n as u32)
}

pub(crate) fn field(n: u32) -> Result<Arc<FieldData>> {
    let n = check_conductor(u64::from(n))?;
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return Ok(Arc::clone(f));
    }
    let built = Arc::new(FieldData::build(n)?);
    let mut guard = cache().write().expect("field cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

/// Euler's totient of a conductor, equal to the length of the coefficient
/// vector of every element in that conductor.
pub fn degree(n: u32) -> Result<usize> {
    Ok(field(n)?.phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_table_wraps_around() {
        let f = field(12).unwrap();
        assert_eq!(f.phi, 4);
        // x^4 = x^2 - 1 mod x^4 - x^2 + 1
        assert_eq!(f.powers[4], vec![-1, 0, 1, 0]);
        // x^6 = -1
        assert_eq!(f.powers[6], vec![-1, 0, 0, 0]);
    }

    #[test]
    fn conductor_one_is_q() {
        let f = field(1).unwrap();
        assert_eq!(f.phi, 1);
        assert_eq!(f.powers, vec![vec![1]]);
        assert_eq!(f.roots_modulus(), 2);
    }

    #[test]
    fn oversize_conductor_rejected() {
        assert!(matches!(
            field(MAX_CONDUCTOR + 1),
            Err(Error::ConductorTooLarge { .. })
        ));
    }
}
