//! Difference systems, summand functionals and the forward solve.
//!
//! A sequence is defined by the forward difference equation
//! `u[n+1] - u[n] = delta(n, u[n], psi)` together with an initial state
//! `u[0] = initial(psi)`, and is consumed by a scalar functional
//! `J(psi) = sum_{n=0}^{N-1} j(n, u[n], psi)`. Everything downstream
//! (sensitivities, adjoints, finite differences) is expressed against the
//! two traits defined here.

use ndarray::{Array1, Array2, ArrayView1};

use crate::error::{Error, Result};

/// Dimensions of a difference system: `m` latent states, `k` parameters,
/// horizon `n` (the sequence has `n + 1` entries `u[0]..u[n]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub m: usize,
    pub k: usize,
    pub n: usize,
}

/// A sequence defined by forward difference equations.
///
/// Implementations must be pure: the same inputs always produce identical
/// outputs, and a value may be shared across concurrent solver invocations
/// once constructed. `delta` is defined for step indices `0..n`.
///
/// The Jacobians are exposed both as full matrices and as vector-Jacobian
/// products. The adjoint solver only ever calls the VJP forms, so an
/// implementation with cheap contractions (for example a sparse or
/// structured step) should override `vjp_state` / `vjp_param`; the defaults
/// materialize the corresponding Jacobian.
pub trait DifferenceSystem {
    fn dims(&self) -> Dims;

    /// The step `delta(n, u, psi)`, an `m`-vector.
    fn delta(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>) -> Array1<f64>;

    /// `d delta / d u`, an `m x m` matrix.
    fn jac_state(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>)
        -> Array2<f64>;

    /// `d delta / d psi`, an `m x k` matrix.
    fn jac_param(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>)
        -> Array2<f64>;

    /// The initial state `initial(psi)`, an `m`-vector.
    fn initial(&self, psi: ArrayView1<'_, f64>) -> Array1<f64>;

    /// `d initial / d psi`, an `m x k` matrix.
    fn initial_jac(&self, psi: ArrayView1<'_, f64>) -> Array2<f64>;

    /// Row-vector contraction `v^T (d delta / d u)`, an `m`-vector.
    fn vjp_state(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
        v: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        v.dot(&self.jac_state(n, u, psi))
    }

    /// Row-vector contraction `v^T (d delta / d psi)`, a `k`-vector.
    fn vjp_param(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
        v: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        v.dot(&self.jac_param(n, u, psi))
    }
}

/// The summand of a discrete functional, `j(n, u[n], psi)` for `n = 0..N-1`.
///
/// The summand depends on the state at its own index only; the final state
/// `u[N]` never enters the functional. A consumer that needs derivatives
/// through `u[N]` should use [`crate::adjoint::vjp_final_state`] instead.
pub trait SummandFunctional {
    fn j(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>) -> f64;

    /// `d j / d u`, an `m`-vector.
    fn grad_state(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>)
        -> Array1<f64>;

    /// `d j / d psi`, a `k`-vector.
    fn grad_param(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>)
        -> Array1<f64>;
}

// Blanket impls so `&S`, `Box<S>` and trait objects plug into every solver.
impl<S: DifferenceSystem + ?Sized> DifferenceSystem for &S {
    fn dims(&self) -> Dims {
        (**self).dims()
    }
    fn delta(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>) -> Array1<f64> {
        (**self).delta(n, u, psi)
    }
    fn jac_state(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
    ) -> Array2<f64> {
        (**self).jac_state(n, u, psi)
    }
    fn jac_param(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
    ) -> Array2<f64> {
        (**self).jac_param(n, u, psi)
    }
    fn initial(&self, psi: ArrayView1<'_, f64>) -> Array1<f64> {
        (**self).initial(psi)
    }
    fn initial_jac(&self, psi: ArrayView1<'_, f64>) -> Array2<f64> {
        (**self).initial_jac(psi)
    }
    fn vjp_state(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
        v: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        (**self).vjp_state(n, u, psi, v)
    }
    fn vjp_param(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
        v: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        (**self).vjp_param(n, u, psi, v)
    }
}

impl<F: SummandFunctional + ?Sized> SummandFunctional for &F {
    fn j(&self, n: usize, u: ArrayView1<'_, f64>, psi: ArrayView1<'_, f64>) -> f64 {
        (**self).j(n, u, psi)
    }
    fn grad_state(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        (**self).grad_state(n, u, psi)
    }
    fn grad_param(
        &self,
        n: usize,
        u: ArrayView1<'_, f64>,
        psi: ArrayView1<'_, f64>,
    ) -> Array1<f64> {
        (**self).grad_param(n, u, psi)
    }
}

/// The solved sequence `u[0]..u[N]` (`N + 1` states).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<Array1<f64>>,
}

impl Trajectory {
    /// Number of steps `N` (one less than the number of states).
    pub fn horizon(&self) -> usize {
        self.states.len() - 1
    }

    pub fn state(&self, n: usize) -> ArrayView1<'_, f64> {
        self.states[n].view()
    }

    /// The last state `u[N]`.
    pub fn final_state(&self) -> ArrayView1<'_, f64> {
        self.states[self.states.len() - 1].view()
    }
}

fn check_dims(system: &(impl DifferenceSystem + ?Sized), psi: ArrayView1<'_, f64>) -> Result<Dims> {
    let dims = system.dims();
    if dims.n == 0 {
        return Err(Error::EmptyHorizon(dims.n));
    }
    if psi.len() != dims.k {
        return Err(Error::DimensionMismatch {
            context: "parameter vector",
            expected: dims.k,
            actual: psi.len(),
        });
    }
    Ok(dims)
}

/// Forward-solve the difference equation, producing all `N + 1` states.
///
/// The defining identity `states[n+1] - states[n] == delta(n, states[n], psi)`
/// holds bitwise for the returned trajectory: each state is computed as
/// `states[n] + delta` and never revisited.
pub fn forward_solve(
    system: &(impl DifferenceSystem + ?Sized),
    psi: ArrayView1<'_, f64>,
) -> Result<Trajectory> {
    let dims = check_dims(system, psi)?;
    let mut states = Vec::with_capacity(dims.n + 1);
    let u0 = system.initial(psi);
    if u0.len() != dims.m {
        return Err(Error::DimensionMismatch {
            context: "initial state",
            expected: dims.m,
            actual: u0.len(),
        });
    }
    if !u0.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite {
            context: "initial state",
            index: 0,
        });
    }
    states.push(u0);
    for n in 0..dims.n {
        let step = system.delta(n, states[n].view(), psi);
        if step.len() != dims.m {
            return Err(Error::DimensionMismatch {
                context: "step",
                expected: dims.m,
                actual: step.len(),
            });
        }
        let next = &states[n] + &step;
        if !next.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "forward state (divergent system?)",
                index: n + 1,
            });
        }
        states.push(next);
    }
    Ok(Trajectory { states })
}

/// Evaluate `J(psi) = sum_{n=0}^{N-1} j(n, u[n], psi)` over a solved
/// trajectory. The final state `u[N]` is never passed to the summand.
pub fn evaluate_functional(
    functional: &(impl SummandFunctional + ?Sized),
    trajectory: &Trajectory,
    psi: ArrayView1<'_, f64>,
) -> Result<f64> {
    if trajectory.states.len() < 2 {
        return Err(Error::EmptyHorizon(0));
    }
    let mut total = 0.0;
    for n in 0..trajectory.horizon() {
        let term = functional.j(n, trajectory.state(n), psi);
        if !term.is_finite() {
            return Err(Error::NonFinite {
                context: "functional summand",
                index: n,
            });
        }
        total += term;
    }
    Ok(total)
}
