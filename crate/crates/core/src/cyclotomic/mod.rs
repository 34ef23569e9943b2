//! Exact arithmetic in cyclotomic fields Q(ζ_N).

mod angle;
mod embed;
mod field;
mod num;
mod poly;

pub use angle::{
    classify_rational_angle, classify_rational_angle_scan, rational_sqrt, RationalAngleForm,
};
pub(crate) use angle::root_table;
pub use field::{degree, MAX_CONDUCTOR};
pub use num::CycNum;
pub use poly::cyclotomic_polynomial;

/// ζ_N^e as a field element of conductor N.
pub fn root_of_unity(exponent: i64, order: u32) -> crate::Result<CycNum> {
    CycNum::root_of_unity(exponent, order)
}
