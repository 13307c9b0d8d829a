//! Operator families indexed by a positive order, and the catalog of
//! constructive counterexamples to the fractional-integral axioms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::grid::SampledFunction1D;
use crate::rl::{rl_integral, FractionalOrder};

/// Which of the four axioms a family is expected to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomProfile {
    pub identity: bool,
    pub index_law: bool,
    pub continuity: bool,
    pub positivity: bool,
}

impl AxiomProfile {
    pub const ALL: AxiomProfile =
        AxiomProfile { identity: true, index_law: true, continuity: true, positivity: true };
}

/// A mapping `(α, f) ↦ J^α f` on sampled functions.
pub trait OperatorFamily: Send + Sync {
    fn name(&self) -> &str;

    fn apply(&self, alpha: f64, f: &SampledFunction1D) -> Result<SampledFunction1D>;

    fn expected_profile(&self) -> AxiomProfile;

    /// The ordinary integral the family must reproduce at order one.
    fn order_one_integral(&self, f: &SampledFunction1D) -> Result<SampledFunction1D> {
        Ok(f.cumulative_trapezoid())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogFamily {
    /// `I^α` itself.
    RiemannLiouville,
    /// `α I¹`: identity and continuity hold, the index law does not.
    ScaledOrder,
    /// `I^{2α}`: index law and continuity hold, identity does not.
    DoubledOrder,
    /// `2^α I^α`: index law and continuity hold, identity does not.
    Geometric,
    /// `e^{2πiα} I^α`: everything but positivity.
    Phase,
}

impl CatalogFamily {
    pub const ALL: [CatalogFamily; 5] = [
        CatalogFamily::RiemannLiouville,
        CatalogFamily::ScaledOrder,
        CatalogFamily::DoubledOrder,
        CatalogFamily::Geometric,
        CatalogFamily::Phase,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogFamily::RiemannLiouville => "riemann_liouville",
            CatalogFamily::ScaledOrder => "scaled_order",
            CatalogFamily::DoubledOrder => "doubled_order",
            CatalogFamily::Geometric => "geometric",
            CatalogFamily::Phase => "phase",
        }
    }

    /// Sorted by name, the order reports are emitted in.
    pub fn sorted_by_name() -> Vec<CatalogFamily> {
        let mut all = Self::ALL.to_vec();
        all.sort_by_key(|f| f.as_str());
        all
    }

    fn valid_names() -> String {
        Self::ALL.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(", ")
    }

    /// True for families of the form `I^{g(α)}`.
    pub fn is_pure_order_map(self) -> bool {
        matches!(self, CatalogFamily::RiemannLiouville | CatalogFamily::DoubledOrder)
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogFamily {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| FracError::UnknownFamily { name: s.to_string(), valid: Self::valid_names() })
    }
}

pub fn make_family(name: &str) -> Result<CatalogFamily> {
    name.parse()
}

// e^{2πiα}, exact at integer orders
fn unit_phase(alpha: f64) -> Complex64 {
    let frac = alpha - alpha.floor();
    if frac == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * frac)
    }
}

impl OperatorFamily for CatalogFamily {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn apply(&self, alpha: f64, f: &SampledFunction1D) -> Result<SampledFunction1D> {
        let alpha = FractionalOrder::new(alpha)?.get();
        match self {
            CatalogFamily::RiemannLiouville => rl_integral(alpha, f),
            CatalogFamily::ScaledOrder => Ok(rl_integral(1.0, f)?.scale_real(alpha)),
            CatalogFamily::DoubledOrder => rl_integral(2.0 * alpha, f),
            CatalogFamily::Geometric => Ok(rl_integral(alpha, f)?.scale_real(2f64.powf(alpha))),
            CatalogFamily::Phase => Ok(rl_integral(alpha, f)?.scale(unit_phase(alpha))),
        }
    }

    fn expected_profile(&self) -> AxiomProfile {
        let (identity, index_law, continuity, positivity) = match self {
            CatalogFamily::RiemannLiouville => (true, true, true, true),
            CatalogFamily::ScaledOrder => (true, false, true, true),
            CatalogFamily::DoubledOrder => (false, true, true, true),
            CatalogFamily::Geometric => (false, true, true, true),
            CatalogFamily::Phase => (true, true, true, false),
        };
        AxiomProfile { identity, index_law, continuity, positivity }
    }
}
