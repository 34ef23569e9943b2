//! Exhaustive searches over weighted sums of roots of unity in μ_M.
//!
//! All searches grow a tuple one weighted root at a time and keep the sums
//! of every subset in a [`SubsetSums`]; a branch dies as soon as a subset
//! that must stay nonzero vanishes. The last position is filled by a hash
//! lookup of the value still missing instead of a scan.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::lcm;
use crate::cyclotomic::{CycNum, MAX_CONDUCTOR};
use crate::error::{Error, Result};
use crate::subsets::{SubsetSums, DEFAULT_SUBSET_CAP};

use super::relation::{normal_form, RelationTuple};

/// Default refusal threshold for the estimated search cost M^k·|C|^k.
pub const DEFAULT_WORK_BUDGET: u128 = 2_000_000_000;

/// Estimated cost M^k·|C|^k of an exhaustive search (saturating).
pub fn search_cost(k: usize, modulus: u32, coeff_count: usize) -> u128 {
    let base = u128::from(modulus).saturating_mul(coeff_count as u128);
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn check_budget(k: usize, modulus: u32, coeff_count: usize, budget: u128) -> Result<()> {
    let estimate = search_cost(k, modulus, coeff_count);
    if estimate > budget {
        return Err(Error::WorkBudgetExceeded { estimate, budget });
    }
    Ok(())
}

fn clean_coeffs(coeff_set: &[BigRational]) -> Result<Vec<BigRational>> {
    if coeff_set.is_empty() {
        return Err(Error::InvalidParameter("empty coefficient set".into()));
    }
    if coeff_set.iter().any(Zero::is_zero) {
        return Err(Error::InvalidParameter("coefficient set contains zero".into()));
    }
    let set: BTreeSet<BigRational> = coeff_set.iter().cloned().collect();
    Ok(set.into_iter().collect())
}

/// Weighted roots c·ζ_M^e indexed by e·|C| + (index of c).
struct TermTable {
    conductor: u32,
    coeffs: Vec<BigRational>,
    terms: Vec<CycNum>,
    by_value: HashMap<CycNum, Vec<usize>>,
}

impl TermTable {
    fn new(modulus: u32, conductor: u32, coeffs: Vec<BigRational>) -> Result<TermTable> {
        let mut terms = Vec::with_capacity(modulus as usize * coeffs.len());
        for e in 0..modulus {
            let root = CycNum::root_of_unity(i64::from(e), modulus)?.change_conductor(conductor)?;
            for c in &coeffs {
                terms.push(root.scale(c));
            }
        }
        let mut by_value: HashMap<CycNum, Vec<usize>> = HashMap::new();
        for (i, t) in terms.iter().enumerate() {
            by_value.entry(t.clone()).or_default().push(i);
        }
        Ok(TermTable {
            conductor,
            coeffs,
            terms,
            by_value,
        })
    }

    fn exponent(&self, index: usize) -> u32 {
        (index / self.coeffs.len()) as u32
    }

    fn coeff(&self, index: usize) -> &BigRational {
        &self.coeffs[index % self.coeffs.len()]
    }

    fn split(&self, chosen: &[usize]) -> (Vec<u32>, Vec<BigRational>) {
        chosen
            .iter()
            .map(|&i| (self.exponent(i), self.coeff(i).clone()))
            .unzip()
    }
}

fn validate_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::InvalidParameter(format!("tuple length must be at least {min}")));
    }
    if k > DEFAULT_SUBSET_CAP {
        return Err(Error::LengthCapExceeded {
            len: k,
            cap: DEFAULT_SUBSET_CAP,
        });
    }
    Ok(())
}

/// All minimal vanishing sums Σ c_i ζ_i = 0 of length `k` with ζ_i ∈ μ_M and
/// c_i in `coeff_set`, one normalized representative per rotation class,
/// in increasing order of (exponents, coefficients).
pub fn enumerate_minimal_vanishing_sums(
    k: usize,
    modulus: u32,
    coeff_set: &[BigRational],
    budget: u128,
) -> Result<Vec<RelationTuple>> {
    validate_k(k, 2)?;
    let coeffs = clean_coeffs(coeff_set)?;
    check_budget(k, modulus, coeffs.len(), budget)?;
    let table = TermTable::new(modulus, modulus, coeffs)?;
    let mut found: BTreeSet<Vec<(u32, BigRational)>> = BTreeSet::new();
    let mut sums = SubsetSums::new(modulus, k)?;
    let mut chosen = Vec::with_capacity(k);
    // roots[0] = 1 with every coefficient; the rest as a sorted multiset
    for first in 0..table.coeffs.len() {
        sums.push(&table.terms[first], false)?;
        chosen.push(first);
        vanishing_dfs(&table, k, 0, &mut sums, &mut chosen, &mut found)?;
        chosen.pop();
        sums.pop();
    }
    let zero = CycNum::zero(modulus)?;
    Ok(found
        .into_iter()
        .map(|pairs| {
            let (exps, cs) = pairs.into_iter().unzip();
            RelationTuple::from_verified(modulus, exps, cs, zero.clone(), true)
        })
        .collect())
}

fn vanishing_dfs(
    table: &TermTable,
    k: usize,
    min_index: usize,
    sums: &mut SubsetSums,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<(u32, BigRational)>>,
) -> Result<()> {
    if chosen.len() + 1 == k {
        let needed = -sums.total().clone();
        let Some(candidates) = table.by_value.get(&needed) else {
            return Ok(());
        };
        for &idx in candidates.iter().filter(|&&i| i >= min_index) {
            let hit = sums.push(&table.terms[idx], true)?;
            if hit.is_none() {
                chosen.push(idx);
                let (exps, cs) = table.split(chosen);
                found.insert(normal_form(table.conductor, &exps, &cs));
                chosen.pop();
            }
            sums.pop();
        }
        return Ok(());
    }
    for idx in min_index..table.terms.len() {
        if sums.push(&table.terms[idx], false)?.is_none() {
            chosen.push(idx);
            vanishing_dfs(table, k, idx, sums, chosen, found)?;
            chosen.pop();
        }
        sums.pop();
    }
    Ok(())
}

fn search_conductor(modulus: u32, target: &CycNum) -> Result<u32> {
    let l = lcm(u64::from(modulus), u64::from(target.conductor()));
    u32::try_from(l)
        .ok()
        .filter(|&l| l <= MAX_CONDUCTOR)
        .ok_or(Error::ConductorTooLarge {
            requested: l,
            limit: MAX_CONDUCTOR,
        })
}

/// The ordered k-tuples of roots in μ_M admitting coefficients from
/// `coeff_set` with weighted sum `target` and no vanishing subsum. Each
/// root tuple appears once, carrying the first coefficient vector found
/// (coefficients scanned in increasing order) as its witness.
///
/// With a finite coefficient set this is a subset of Z_a^k.
pub fn enumerate_z_a_k(
    target: &CycNum,
    k: usize,
    modulus: u32,
    coeff_set: &[BigRational],
    budget: u128,
) -> Result<Vec<RelationTuple>> {
    if target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    validate_k(k, 1)?;
    let coeffs = clean_coeffs(coeff_set)?;
    check_budget(k, modulus, coeffs.len(), budget)?;
    let conductor = search_conductor(modulus, target)?;
    let table = TermTable::new(modulus, conductor, coeffs)?;
    let target_lifted = target.change_conductor(conductor)?;
    let mut found: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
    let mut sums = SubsetSums::new(conductor, k)?;
    let mut chosen = Vec::with_capacity(k);
    target_dfs(&table, k, &target_lifted, &mut sums, &mut chosen, &mut found)?;
    Ok(found
        .into_iter()
        .map(|(exps, cs)| RelationTuple::from_verified(modulus, exps, cs, target.clone(), true))
        .collect())
}

fn target_dfs(
    table: &TermTable,
    k: usize,
    target: &CycNum,
    sums: &mut SubsetSums,
    chosen: &mut Vec<usize>,
    found: &mut BTreeMap<Vec<u32>, Vec<BigRational>>,
) -> Result<()> {
    if chosen.len() + 1 == k {
        let needed = if sums.is_empty() {
            target.clone()
        } else {
            target - sums.total()
        };
        let Some(candidates) = table.by_value.get(&needed) else {
            return Ok(());
        };
        for &idx in candidates {
            if sums.push(&table.terms[idx], false)?.is_none() {
                chosen.push(idx);
                let (exps, cs) = table.split(chosen);
                found.entry(exps).or_insert(cs);
                chosen.pop();
            }
            sums.pop();
        }
        return Ok(());
    }
    for idx in 0..table.terms.len() {
        if sums.push(&table.terms[idx], false)?.is_none() {
            chosen.push(idx);
            target_dfs(table, k, target, sums, chosen, found)?;
            chosen.pop();
        }
        sums.pop();
    }
    Ok(())
}

/// Z_a^k restricted to μ_M and `coeff_set`, for every nonzero value a
/// reachable by a subsum-free weighted k-tuple, in one pass. Targets are
/// returned in the canonical order of [`CycNum`].
pub fn z_sets_by_target(
    k: usize,
    modulus: u32,
    coeff_set: &[BigRational],
    budget: u128,
) -> Result<Vec<(CycNum, Vec<RelationTuple>)>> {
    validate_k(k, 1)?;
    let coeffs = clean_coeffs(coeff_set)?;
    check_budget(k, modulus, coeffs.len(), budget)?;
    let table = TermTable::new(modulus, modulus, coeffs)?;
    let mut groups: HashMap<CycNum, BTreeMap<Vec<u32>, Vec<BigRational>>> = HashMap::new();
    let mut sums = SubsetSums::new(modulus, k)?;
    let mut chosen = Vec::with_capacity(k);
    grouped_dfs(&table, k, &mut sums, &mut chosen, &mut groups)?;
    let mut out: Vec<(CycNum, Vec<RelationTuple>)> = groups
        .into_iter()
        .map(|(target, tuples)| {
            let tuples = tuples
                .into_iter()
                .map(|(exps, cs)| RelationTuple::from_verified(modulus, exps, cs, target.clone(), true))
                .collect();
            (target, tuples)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn grouped_dfs(
    table: &TermTable,
    k: usize,
    sums: &mut SubsetSums,
    chosen: &mut Vec<usize>,
    groups: &mut HashMap<CycNum, BTreeMap<Vec<u32>, Vec<BigRational>>>,
) -> Result<()> {
    if chosen.len() == k {
        let (exps, cs) = table.split(chosen);
        groups
            .entry(sums.total().clone())
            .or_default()
            .entry(exps)
            .or_insert(cs);
        return Ok(());
    }
    for idx in 0..table.terms.len() {
        if sums.push(&table.terms[idx], false)?.is_none() {
            chosen.push(idx);
            grouped_dfs(table, k, sums, chosen, groups)?;
            chosen.pop();
        }
        sums.pop();
    }
    Ok(())
}
