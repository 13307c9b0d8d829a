//! Laplace transforms, semigroup tables and the Cauchy-equation machinery
//! used to identify `R_α(x) = x^{-α}` from a table.

pub mod additive;
pub mod fit;
pub mod laplace;
pub mod table;

pub use additive::{extend_additive, AdditiveSamples};
pub use fit::{fit_affine, fit_affine_nd, FitResult};
pub use laplace::{kernel_laplace_transform, laplace_transform, GrowthBound, LaplaceValue};
pub use table::{
    kernel_table, laplace_transform_nd, semigroup_table, semigroup_table_nd, GridPoints, TableMeta,
    TransformTable,
};
