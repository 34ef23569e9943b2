//! Exact planar predicates on points of a cyclotomic field viewed as
//! complex numbers.

use crate::cyclotomic::{root_table, CycNum};
use crate::error::Result;

/// 2i·Im(u), computed as u − conj(u); zero iff u is real.
pub fn imaginary_twice(u: &CycNum) -> CycNum {
    u - &u.conj()
}

/// Three points are collinear iff Im((b − a)·conj(c − a)) = 0.
pub fn collinear(a: &CycNum, b: &CycNum, c: &CycNum) -> bool {
    let u = &(b - a) * &(c - a).conj();
    imaginary_twice(&u).is_zero()
}

/// Key identifying the direction of a nonzero vector up to nonzero real
/// scaling: d / conj(d). Two vectors are parallel iff their keys agree.
pub fn direction_key(d: &CycNum) -> Result<CycNum> {
    if let Some(form) = d.classify_rational_angle()? {
        // (q·ζ)/(q·ζ^{-1}) = ζ²
        let table = root_table(d.conductor())?;
        let e = (2 * u64::from(form.exponent)) % u64::from(form.modulus);
        return Ok(table.roots[e as usize].clone());
    }
    d.checked_div(&d.conj())
}

/// Partitions `members` into classes of points lying on a common line
/// through `origin`, each class sorted, classes ordered by first member.
///
/// Directions are sorted by their floating-point angle mod π to find
/// candidate clusters, and every cluster is then split exactly with the
/// collinearity predicate. Parallel vectors have angles within rounding
/// error of each other, so they always share a cluster; a vector whose
/// angle cannot be bounded that tightly (severe cancellation) is compared
/// exactly against every class.
pub fn lines_through(origin: &CycNum, points: &[CycNum], members: &[usize]) -> Vec<Vec<usize>> {
    const GAP: f64 = 1e-6;
    let mut sure: Vec<(f64, usize, CycNum)> = Vec::new();
    let mut unsure: Vec<(usize, CycNum)> = Vec::new();
    for &j in members {
        let d = &points[j] - origin;
        let z = d.to_complex();
        let weight: f64 = d.coeffs().iter().map(|c| ratio_abs_f64(c)).sum();
        if z.norm() >= weight * 1e-4 && z.norm() > 0.0 {
            sure.push((z.im.atan2(z.re).rem_euclid(std::f64::consts::PI), j, d));
        } else {
            unsure.push((j, d));
        }
    }
    sure.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut clusters: Vec<Vec<(usize, CycNum)>> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for (angle, j, d) in sure {
        if angle - prev >= GAP || clusters.is_empty() {
            clusters.push(Vec::new());
        }
        clusters.last_mut().expect("just pushed").push((j, d));
        prev = angle;
    }
    // angles near π wrap around to 0
    if clusters.len() > 1 {
        let first = clusters[0][0].1.to_complex();
        let last = clusters[clusters.len() - 1].last().expect("nonempty").1.to_complex();
        let a0 = first.im.atan2(first.re).rem_euclid(std::f64::consts::PI);
        let a1 = last.im.atan2(last.re).rem_euclid(std::f64::consts::PI);
        if a0 + std::f64::consts::PI - a1 < GAP {
            let tail = clusters.pop().expect("len > 1");
            clusters[0].extend(tail);
        }
    }
    let mut classes: Vec<(CycNum, Vec<usize>)> = Vec::new();
    for cluster in clusters {
        let start = classes.len();
        for (j, d) in cluster {
            match classes[start..].iter_mut().find(|(rep, _)| parallel(rep, &d)) {
                Some((_, class)) => class.push(j),
                None => classes.push((d, vec![j])),
            }
        }
    }
    for (j, d) in unsure {
        match classes.iter_mut().find(|(rep, _)| parallel(rep, &d)) {
            Some((_, class)) => class.push(j),
            None => classes.push((d, vec![j])),
        }
    }
    let mut out: Vec<Vec<usize>> = classes
        .into_iter()
        .map(|(_, mut c)| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort_unstable_by_key(|c| c[0]);
    out
}

fn ratio_abs_f64(q: &num_rational::BigRational) -> f64 {
    use num_traits::{Signed, ToPrimitive};
    q.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// Nonzero vectors u, v are parallel iff u·conj(v) is real.
pub fn parallel(u: &CycNum, v: &CycNum) -> bool {
    imaginary_twice(&(u * &v.conj())).is_zero()
}
