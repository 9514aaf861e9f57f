//! Growth series of structure groups.

mod class2;
mod defect;

pub use class2::{
    as_reflections_group_gf, as_transpositions_group_gf, class2_lift, class2_lift_series, eventually_constant,
    solomon_series,
};
pub use defect::{
    as_full_conjugation_gf, defect_measure, defect_series, AxisRay, DefectContext, DefectOptions, DefectPresentation,
    DefectRecord, DefectSeriesResult, FullConjugationGrowth, GeometricTail, SupportClass, DEFAULT_DEFECT_BUDGET,
};
