//! Slow, independent reference implementations used as test oracles.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

/// Element of Q[x]/(x^n − 1), stored as integer numerators over one
/// denominator, with no reduction modulo the cyclotomic polynomial until
/// [`Naive::reduce`].
#[derive(Clone, Debug)]
pub struct Naive {
    pub n: usize,
    pub num: Vec<i128>,
    pub den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Naive {
    pub fn new(n: usize, num: Vec<i128>, den: i128) -> Naive {
        assert_eq!(num.len(), n);
        assert!(den != 0);
        let mut x = Naive { n, num, den };
        x.tidy();
        x
    }

    fn tidy(&mut self) {
        let g = self.num.iter().fold(self.den, |g, &c| gcd(g, c));
        let g = if self.den < 0 { -g } else { g };
        if g != 0 && g != 1 {
            self.den /= g;
            for c in &mut self.num {
                *c /= g;
            }
        }
    }

    pub fn root(e: usize, n: usize) -> Naive {
        let mut num = vec![0; n];
        num[e % n] = 1;
        Naive::new(n, num, 1)
    }

    pub fn constant(c: i128, n: usize) -> Naive {
        let mut num = vec![0; n];
        num[0] = c;
        Naive::new(n, num, 1)
    }

    pub fn add(&self, o: &Naive) -> Naive {
        assert_eq!(self.n, o.n);
        let num = (0..self.n).map(|j| self.num[j] * o.den + o.num[j] * self.den).collect();
        Naive::new(self.n, num, self.den * o.den)
    }

    pub fn neg(&self) -> Naive {
        Naive::new(self.n, self.num.iter().map(|c| -c).collect(), self.den)
    }

    pub fn sub(&self, o: &Naive) -> Naive {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Naive) -> Naive {
        assert_eq!(self.n, o.n);
        let mut num = vec![0; self.n];
        for (i, a) in self.num.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                num[(i + j) % self.n] += a * b;
            }
        }
        Naive::new(self.n, num, self.den * o.den)
    }

    pub fn scale(&self, p: i128, q: i128) -> Naive {
        Naive::new(self.n, self.num.iter().map(|c| c * p).collect(), self.den * q)
    }

    /// x ↦ x^{n−1}.
    pub fn conj(&self) -> Naive {
        let mut num = vec![0; self.n];
        for (j, c) in self.num.iter().enumerate() {
            num[(self.n - j) % self.n] += c;
        }
        Naive::new(self.n, num, self.den)
    }

    /// x ↦ x^{m/n} into Q[x]/(x^m − 1).
    pub fn lift(&self, m: usize) -> Naive {
        assert_eq!(m % self.n, 0);
        let s = m / self.n;
        let mut num = vec![0; m];
        for (j, c) in self.num.iter().enumerate() {
            num[j * s] = *c;
        }
        Naive::new(m, num, self.den)
    }

    /// Remainder modulo Φ_n: the power-basis coefficients of the image in
    /// Q(ζ_n).
    pub fn reduce(&self) -> Vec<BigRational> {
        let phi = cyclotomic(self.n);
        let deg = phi.len() - 1;
        let mut r: Vec<i128> = self.num.clone();
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            // Φ_n is monic
            for (i, p) in phi.iter().enumerate() {
                r[top - deg + i] -= c * i128::from(*p);
            }
        }
        r.truncate(deg);
        r.resize(deg, 0);
        r.into_iter()
            .map(|c| BigRational::new(BigInt::from(c), BigInt::from(self.den)))
            .collect()
    }

    pub fn is_zero_in_field(&self) -> bool {
        self.reduce().iter().all(|c| *c == BigRational::from_integer(0.into()))
    }

    /// Coefficient list usable with `CycNum::from_poly`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(self.den)))
            .collect()
    }
}

/// Φ_n by exact division of x^n − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = divide_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn divide_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = r[top];
        q[top - db] = c;
        for (i, x) in b.iter().enumerate() {
            r[top - db + i] -= c * x;
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact division");
    q
}

/// Weighted sum Σ c_i ζ_m^{e_i} with c_i = p_i/q_i.
pub fn weighted_sum(m: usize, terms: &[(usize, (i128, i128))]) -> Naive {
    terms.iter().fold(Naive::constant(0, m), |acc, &(e, (p, q))| {
        acc.add(&Naive::root(e, m).scale(p, q))
    })
}

/// Nonempty proper subset with zero sum, recomputing every subset sum from
/// scratch.
pub fn naive_vanishing_subset(m: usize, terms: &[(usize, (i128, i128))]) -> bool {
    let k = terms.len();
    (1..(1usize << k) - 1).any(|mask| {
        let sub: Vec<_> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| terms[i]).collect();
        weighted_sum(m, &sub).is_zero_in_field()
    })
}

/// Canonical rotation class of a multiset of (exponent, coefficient) pairs:
/// the smallest sorted list over all rotations in μ_m.
pub fn rotation_class(m: usize, terms: &[(usize, (i128, i128))]) -> Vec<(usize, (i128, i128))> {
    (0..m)
        .map(|r| {
            let mut t: Vec<_> = terms.iter().map(|&(e, c)| ((e + r) % m, c)).collect();
            t.sort();
            t
        })
        .min()
        .unwrap()
}

/// Every multiset of `k` exponents from [0, m) containing 0, in increasing
/// order; every rotation class has such a member.
pub fn multisets_with_zero(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..m {
            cur.push(e);
            rec(k, m, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, m, 0, &mut vec![0], &mut out);
    out
}

/// Naive peeling: repeatedly delete the first vertex of degree < t,
/// recounting degrees from the edge list every round.
pub fn naive_peel(n: usize, edges: &[(usize, usize)], t: f64) -> Vec<bool> {
    let mut alive = vec![true; n];
    loop {
        let degree = |v: usize, alive: &[bool]| {
            edges
                .iter()
                .filter(|&&(a, b)| alive[a] && alive[b] && (a == v || b == v))
                .count()
        };
        let Some(v) = (0..n).find(|&v| alive[v] && (degree(v, &alive) as f64) < t) else {
            return alive;
        };
        alive[v] = false;
    }
}

/// ϑ(x) from a plain trial-division prime test.
pub fn theta(x: u64) -> f64 {
    (2..=x)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .map(|p| (p as f64).ln())
        .sum()
}
