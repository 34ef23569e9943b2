//! Incremental subset-sum tracking.
//!
//! Shared by the vanishing-subsum checks on relation tuples and by the
//! irredundancy pruning in path enumeration: pushing a new term only forms
//! the sums of subsets that contain it, so a search that grows a sequence
//! one term at a time checks each subset exactly once.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// Default cap on the number of tracked terms (2^cap subset sums).
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Sums of all nonempty subsets of a growing sequence, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct SubsetSums {
    // sums[mask] for mask in 1..2^len; sums[0] is unused zero
    sums: Vec<CycNum>,
    len: usize,
    cap: usize,
    conductor: u32,
}

impl SubsetSums {
    /// All terms must live in `conductor`.
    pub fn new(conductor: u32, cap: usize) -> Result<SubsetSums> {
        if cap > 24 {
            return Err(Error::LengthCapExceeded { len: cap, cap: 24 });
        }
        Ok(SubsetSums {
            sums: vec![CycNum::zero(conductor)?],
            len: 0,
            cap,
            conductor,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Mask with every current term.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.len) - 1) as u32
    }

    /// Appends `term`, forming the sums of all subsets containing it.
    /// Returns the smallest such mask whose sum is zero, if any; masks equal
    /// to the full set are ignored when `allow_full_zero` is set.
    pub fn push(&mut self, term: &CycNum, allow_full_zero: bool) -> Result<Option<u32>> {
        if self.len >= self.cap {
            return Err(Error::LengthCapExceeded {
                len: self.len + 1,
                cap: self.cap,
            });
        }
        let term = if term.conductor() == self.conductor {
            term.clone()
        } else {
            term.change_conductor(self.conductor)?
        };
        let bit = 1usize << self.len;
        let full = (bit << 1) - 1;
        let mut hit = None;
        self.sums.reserve(bit);
        for mask in 0..bit {
            let s = if mask == 0 {
                term.clone()
            } else {
                &self.sums[mask] + &term
            };
            let m = mask | bit;
            if hit.is_none() && s.is_zero() && !(allow_full_zero && m == full) {
                hit = Some(m as u32);
            }
            self.sums.push(s);
        }
        self.len += 1;
        Ok(hit)
    }

    /// Removes the most recently pushed term.
    pub fn pop(&mut self) {
        if self.len == 0 {
            return;
        }
        self.len -= 1;
        self.sums.truncate(1 << self.len);
    }

    pub fn sum(&self, mask: u32) -> &CycNum {
        &self.sums[mask as usize]
    }

    /// Sum of every term pushed so far.
    pub fn total(&self) -> &CycNum {
        &self.sums[self.full_mask() as usize]
    }

    /// Iterates over the sums of all nonempty subsets.
    pub fn nonempty_sums(&self) -> impl Iterator<Item = &CycNum> {
        self.sums[1..].iter()
    }
}

/// Finds a nonempty proper subset of `terms` with zero sum, scanning
/// incrementally. Returns the index set in increasing order.
pub fn vanishing_proper_subset(terms: &[CycNum], cap: usize) -> Result<Option<Vec<usize>>> {
    if terms.len() > cap {
        return Err(Error::LengthCapExceeded {
            len: terms.len(),
            cap,
        });
    }
    let Some(first) = terms.first() else {
        return Ok(None);
    };
    let conductor = terms
        .iter()
        .skip(1)
        .fold(u64::from(first.conductor()), |acc, t| {
            crate::arith::lcm(acc, u64::from(t.conductor()))
        });
    let conductor = u32::try_from(conductor).map_err(|_| Error::ConductorTooLarge {
        requested: conductor,
        limit: crate::cyclotomic::MAX_CONDUCTOR,
    })?;
    let mut sums = SubsetSums::new(conductor, cap)?;
    let last = terms.len() - 1;
    for (i, t) in terms.iter().enumerate() {
        if let Some(mask) = sums.push(t, i == last)? {
            return Ok(Some(mask_to_indices(mask)));
        }
    }
    Ok(None)
}

pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}
