//! Pass/fail thresholds used by the experiment drivers.

pub const EUCLID_ISOMETRY_REL: f64 = 1e-10;
pub const EUCLID_RATIO_REL: f64 = 1e-6;
pub const MU_MASS_ABS: f64 = 1e-8;
pub const MU_SPECIAL_CASE_ABS: f64 = 1e-14;
pub const SU2_ISOMETRY_REL: f64 = 1e-10;
pub const DECOMPOSITION_ABS: f64 = 1e-10;
pub const TRANSFORM_EQUIV_REL: f64 = 1e-7;
pub const HEAT_MASS_ABS: f64 = 1e-8;
pub const HEAT_SEMIGROUP_ABS: f64 = 1e-6;
pub const HEAT_SYMMETRY_ABS: f64 = 1e-10;
/// Allowed distance between Monte Carlo means, in combined standard errors.
pub const MC_SIGMAS: f64 = 3.0;
pub const LARGE_S_RATE: f64 = 0.75;
pub const LARGE_S_RATE_REL: f64 = 0.05;
pub const UNCERTAINTY_DEFECT_ABS: f64 = 1e-8;
pub const ROUNDTRIP_ABS: f64 = 1e-12;
pub const LABC_ABS: f64 = 1e-12;
pub const AD_INVARIANCE_ABS: f64 = 1e-12;
pub const TRACE_FORMULA_ABS: f64 = 1e-12;
