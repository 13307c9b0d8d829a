//! Fractional integral operators and a harness that checks candidate operator
//! families against the classical axioms for fractional integrals.
//!
//! Layout:
//! - [`grid`]: uniform grids and sampled functions (1D and up to 3D boxes).
//! - [`rl`]: Riemann–Liouville integrals by product integration.
//! - [`family`]: the operator-family trait and the counterexample catalog.
//! - [`rl_nd`]: tensorized multidimensional integrals and truncated convolutions.
//! - [`transforms`]: Laplace transforms, semigroup tables, affine log-fits and
//!   additive extension.
//! - [`riesz`]: Riesz potentials as periodic Fourier multipliers.
//! - [`transmute`]: integrals with respect to increasing integrators.
//! - [`harness`]: axiom checks, reports and the command-line surface.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod family;
pub mod grid;
pub mod harness;
pub mod riesz;
pub mod rl;
pub mod rl_nd;
pub mod special;
pub mod transforms;
pub mod transmute;

pub use error::{FracError, Result};
pub use family::{make_family, AxiomProfile, CatalogFamily, OperatorFamily};
pub use grid::{BoxGridND, SampledFunction1D, SampledFunctionND, UniformGrid1D};
pub use rl::{estimate_order, rl_integral, rl_integral_shifted, rl_kernel, FractionalOrder};
