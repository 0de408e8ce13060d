//! Common output of the three gradient methods.

use ndarray::Array1;

use crate::workbench::WorkCount;

/// Which engine produced a gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Forward sensitivity propagation (also tags the unrolled product-rule
    /// derivation in the HMM application, which differentiates in the same
    /// forward direction).
    Forward,
    /// Backward adjoint recursion.
    Adjoint,
    /// Central finite differences.
    Fd,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Forward => "forward",
            Method::Adjoint => "adjoint",
            Method::Fd => "fd",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Gradient of a functional with respect to the parameters, together with
/// the functional value and the exact operation counts of the run.
#[derive(Debug, Clone)]
pub struct GradientReport {
    /// The functional value `J(psi)` (or the marginal likelihood for HMMs).
    pub value: f64,
    /// `dJ/dpsi`, length `k`.
    pub gradient: Array1<f64>,
    pub method: Method,
    pub work: WorkCount,
}
