use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{gcd, lcm};
use crate::cyclotomic::{CycNum, MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::geometry::imaginary_twice;

use super::{PointSet, Provenance};

/// Largest accepted number of doubling levels (2^7 = 128 points). Level 8
/// needs several GB for the per-pair tables.
pub const DEFAULT_LEVEL_CAP: u32 = 7;
/// Largest accepted point count for the grid and line constructions.
pub const DEFAULT_POINT_BUDGET: usize = 4096;

/// The translation ζ_order^exponent used by one doubling step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublingStep {
    pub exponent: u32,
    pub order: u32,
}

/// Iterated doubling from {0, 1}: each step adds a translate S + a by a root
/// of unity a chosen so that the union stays free of collinear triples and
/// disjoint from S. Every point gains a unit rational-angle partner, so the
/// unit edge count f satisfies f(2n) ≥ 2f(n) + n.
///
/// Candidates a = ζ_M^e are scanned by increasing M, then increasing e
/// (primitive exponents only; the others were tried at a smaller M).
pub fn erdos_purdy(levels: u32, level_cap: u32) -> Result<PointSet> {
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be at least 1".into()));
    }
    if levels > level_cap {
        return Err(Error::CapExceeded {
            what: "doubling level",
            value: u64::from(levels),
            cap: u64::from(level_cap),
        });
    }
    let mut conductor = 1u32;
    let mut points = vec![CycNum::zero(1)?, CycNum::one(1)?];
    let mut steps = Vec::new();
    for _ in 1..levels {
        let (step, a) = choose_translation(&points, conductor)?;
        conductor = a.conductor();
        let mut next: Vec<CycNum> = points
            .iter()
            .map(|p| p.change_conductor(conductor))
            .collect::<Result<_>>()?;
        let shifted: Vec<CycNum> = next.iter().map(|p| p + &a).collect();
        next.extend(shifted);
        points = next;
        steps.push(step);
    }
    let translations: Vec<String> = steps
        .iter()
        .map(|s| format!("{}/{}", s.exponent, s.order))
        .collect();
    let provenance = Provenance::new("erdos-purdy", 0)
        .with("levels", levels)
        .with("translations", translations);
    PointSet::with_conductor(conductor, points, provenance)
}

/// Pair differences and, per pair (i, j), the set of values
/// 2i·Im(d_ij·conj(d_ik)) over all k, all lifted to one conductor.
struct TranslationTables {
    pair_diffs: Vec<CycNum>,
    forbidden: Vec<HashSet<CycNum>>,
    differences: HashSet<CycNum>,
}

impl TranslationTables {
    fn build(points: &[CycNum]) -> TranslationTables {
        let n = points.len();
        let mut pair_diffs = Vec::new();
        let mut forbidden = Vec::new();
        let mut differences = HashSet::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    differences.insert(&points[j] - &points[i]);
                }
            }
        }
        for i in 0..n {
            let conj_rel: Vec<CycNum> = points.iter().map(|p| (p - &points[i]).conj()).collect();
            for j in i + 1..n {
                let d = &points[j] - &points[i];
                let set = conj_rel
                    .iter()
                    .map(|c| imaginary_twice(&(&d * c)))
                    .collect();
                pair_diffs.push(d);
                forbidden.push(set);
            }
        }
        TranslationTables {
            pair_diffs,
            forbidden,
            differences,
        }
    }

    fn lift(&self, conductor: u32) -> Result<TranslationTables> {
        let lift_set = |s: &HashSet<CycNum>| -> Result<HashSet<CycNum>> {
            s.iter().map(|x| x.change_conductor(conductor)).collect()
        };
        Ok(TranslationTables {
            pair_diffs: self
                .pair_diffs
                .iter()
                .map(|d| d.change_conductor(conductor))
                .collect::<Result<_>>()?,
            forbidden: self.forbidden.iter().map(lift_set).collect::<Result<_>>()?,
            differences: lift_set(&self.differences)?,
        })
    }

    fn admits(&self, a: &CycNum) -> bool {
        if self.differences.contains(a) {
            return false;
        }
        let conj_a = a.conj();
        self.pair_diffs.iter().zip(&self.forbidden).all(|(d, set)| {
            let q = imaginary_twice(&(d * &conj_a));
            !set.contains(&q) && !set.contains(&-q)
        })
    }
}

fn choose_translation(points: &[CycNum], conductor: u32) -> Result<(DoublingStep, CycNum)> {
    let base = TranslationTables::build(points);
    let mut lifted: HashMap<u32, TranslationTables> = HashMap::new();
    let group = lcm(2, u64::from(conductor));
    for order in 1..=MAX_CONDUCTOR {
        let target = if group % u64::from(order) == 0 {
            conductor
        } else {
            let l = lcm(u64::from(conductor), u64::from(order));
            if l > u64::from(MAX_CONDUCTOR) {
                continue;
            }
            l as u32
        };
        if target != conductor && !lifted.contains_key(&target) {
            lifted.insert(target, base.lift(target)?);
        }
        let tables = if target == conductor {
            &base
        } else {
            &lifted[&target]
        };
        for e in 0..order {
            if gcd(u64::from(e), u64::from(order)) != 1 {
                continue;
            }
            let a = CycNum::root_of_unity_in(i64::from(e), order, target)?;
            if tables.admits(&a) {
                return Ok((DoublingStep { exponent: e, order }, a));
            }
        }
    }
    Err(Error::InvalidParameter(
        "no admissible translation below the conductor limit".into(),
    ))
}

fn check_budget(count: usize, budget: usize) -> Result<()> {
    if count > budget {
        return Err(Error::CapExceeded {
            what: "point count",
            value: count as u64,
            cap: budget as u64,
        });
    }
    Ok(())
}

/// Points c·s + r·s·i for 0 ≤ r < rows, 0 ≤ c < cols: `rows` horizontal lines
/// of `cols` points each, spacing `s`, in conductor 4.
pub fn square_grid(rows: usize, cols: usize, spacing: &BigRational, budget: usize) -> Result<PointSet> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    if !spacing.is_positive() {
        return Err(Error::InvalidParameter("spacing must be positive".into()));
    }
    check_budget(rows.saturating_mul(cols), budget)?;
    let i = CycNum::root_of_unity(1, 4)?;
    let mut points = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let y = i.scale(&(spacing * BigInt::from(r)));
        for c in 0..cols {
            let x = CycNum::from_rational(&(spacing * BigInt::from(c)), 4)?;
            points.push(&x + &y);
        }
    }
    let provenance = Provenance::new("square-grid", 0)
        .with("rows", rows)
        .with("cols", cols)
        .with("spacing", spacing.to_string());
    PointSet::with_conductor(4, points, provenance)
}

/// Distinct nonnegative rationals p/q ordered by height max(p, q), then by
/// denominator, then by numerator: 0, 1, 2, 1/2, 3, 3/2, 1/3, 2/3, …
pub fn rational_candidates() -> impl Iterator<Item = BigRational> {
    (1u64..).flat_map(|h| {
        (1..=h).flat_map(move |q| {
            (0..=h).filter_map(move |p| {
                (p.max(q) == h && p.gcd(&q) == 1)
                    .then(|| BigRational::new(BigInt::from(p), BigInt::from(q)))
            })
        })
    })
}

/// Largest accepted seed for [`parallel_lines`] (the seed is a skip count
/// into [`rational_candidates`]).
pub const MAX_LINE_SEED: u64 = 10_000_000;

/// `lines` horizontal lines y = 0, …, lines−1 with `per_line` rational points
/// each, no three points on distinct lines collinear.
///
/// x-coordinates are drawn in order from [`rational_candidates`] after
/// skipping `seed` entries; a candidate is rejected when it lies on a line
/// through two placed points on two other horizontal lines. Lines are filled
/// one after another, so only lines not yet filled need forbidden sets.
pub fn parallel_lines(lines: usize, per_line: usize, seed: u64, budget: usize) -> Result<PointSet> {
    if lines == 0 || per_line == 0 {
        return Err(Error::InvalidParameter("line counts must be positive".into()));
    }
    if seed > MAX_LINE_SEED {
        return Err(Error::CapExceeded {
            what: "seed",
            value: seed,
            cap: MAX_LINE_SEED,
        });
    }
    check_budget(lines.saturating_mul(per_line), budget)?;
    let mut forbidden: Vec<HashSet<BigRational>> = vec![HashSet::new(); lines];
    let mut placed: Vec<(BigRational, usize)> = Vec::with_capacity(lines * per_line);
    let mut candidates = rational_candidates().skip(seed as usize);
    for line in 0..lines {
        let mut count = 0;
        while count < per_line {
            let x = candidates.next().expect("rational candidates are unbounded");
            if forbidden[line].contains(&x) {
                continue;
            }
            for (px, pline) in placed.iter().filter(|(_, l)| *l != line) {
                let dy = BigInt::from(*pline as i64 - line as i64);
                let slope = (px - &x) / dy;
                for other in line + 1..lines {
                    let t = BigInt::from((other - line) as i64);
                    forbidden[other].insert(&x + &slope * t);
                }
            }
            placed.push((x, line));
            count += 1;
        }
    }
    let i = CycNum::root_of_unity(1, 4)?;
    let points = placed
        .iter()
        .map(|(x, line)| {
            let y = i.scale(&BigRational::from_integer(BigInt::from(*line)));
            Ok(&CycNum::from_rational(x, 4)? + &y)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(placed.iter().all(|(x, _)| !x.is_negative() || x.is_zero()));
    let provenance = Provenance::new("parallel-lines", seed)
        .with("lines", lines)
        .with("per_line", per_line);
    PointSet::with_conductor(4, points, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::collinear;

    fn no_three_collinear(ps: &PointSet) -> bool {
        let p = ps.points();
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                for c in b + 1..p.len() {
                    if collinear(&p[a], &p[b], &p[c]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn first_levels() {
        let one = erdos_purdy(1, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(one.len(), 2);
        let two = erdos_purdy(2, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(two.len(), 4);
        // ±1 are differences of {0, 1}; ζ_3 is the first admissible root
        assert_eq!(two.provenance().params["translations"], serde_json::json!(["1/3"]));
        assert!(no_three_collinear(&two));
    }

    #[test]
    fn doubling_is_nested_and_collinear_free() {
        let three = erdos_purdy(3, DEFAULT_LEVEL_CAP).unwrap();
        let four = erdos_purdy(4, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(four.len(), 16);
        assert!(no_three_collinear(&four));
        for (p, q) in three.points().iter().zip(four.points()) {
            assert!(p.value_eq(q));
        }
    }

    #[test]
    fn level_cap() {
        assert!(matches!(
            erdos_purdy(8, DEFAULT_LEVEL_CAP),
            Err(Error::CapExceeded { what: "doubling level", .. })
        ));
        assert!(erdos_purdy(0, DEFAULT_LEVEL_CAP).is_err());
    }

    #[test]
    fn grid_layout() {
        let g = square_grid(2, 3, &BigRational::from_integer(2.into()), DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.conductor(), 4);
        assert_eq!(g.points()[5].to_string(), "4:[4, 2]");
        assert!(square_grid(100, 100, &BigRational::from_integer(1.into()), 4096).is_err());
    }

    #[test]
    fn candidate_order() {
        let first: Vec<String> = rational_candidates().take(8).map(|q| q.to_string()).collect();
        assert_eq!(first, ["0", "1", "2", "1/2", "3", "3/2", "1/3", "2/3"]);
        let distinct: HashSet<BigRational> = rational_candidates().take(5000).collect();
        assert_eq!(distinct.len(), 5000);
    }

    #[test]
    fn lines_avoid_cross_line_collinearity() {
        let ps = parallel_lines(4, 5, 3, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(ps.len(), 20);
        let p = ps.points();
        let line_of = |z: &CycNum| z.coeffs()[1].clone();
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                for c in b + 1..p.len() {
                    let (la, lb, lc) = (line_of(&p[a]), line_of(&p[b]), line_of(&p[c]));
                    if la != lb && lb != lc && la != lc {
                        assert!(!collinear(&p[a], &p[b], &p[c]));
                    }
                }
            }
        }
    }

    #[test]
    fn lines_are_deterministic() {
        let a = parallel_lines(3, 4, 11, DEFAULT_POINT_BUDGET).unwrap();
        let b = parallel_lines(3, 4, 11, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        let c = parallel_lines(3, 4, 12, DEFAULT_POINT_BUDGET).unwrap();
        assert_ne!(a, c);
    }
}
