//! Vanishing sums of roots of unity: the moduli of Mann's theorem and its
//! two-representation extension, exhaustive enumeration over μ_M, and
//! certificates checking the theorems' conclusions on the enumerated data.

mod bounds;
mod enumerate;
mod relation;

pub use bounds::{
    chebyshev_bound_holds, chebyshev_bound_scan, chebyshev_theta, extension_modulus,
    mann_modulus, primes_upto, primorial, z_bound,
};
pub use enumerate::{
    enumerate_minimal_vanishing_sums, enumerate_z_a_k, search_cost, z_sets_by_target,
    DEFAULT_WORK_BUDGET,
};
pub use relation::{
    certify_extension, certify_mann, subsum_vanishes, ExtensionCertificate, MannCertificate,
    RelationTuple, RELATION_FORMAT_VERSION,
};
