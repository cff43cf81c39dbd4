//! Numerical core for a tripartite atom-cavity-mirror model with a complex
//! atom-photon coupling phase.
//!
//! The crate covers four layers of the analysis:
//!
//! - [`steady`]: the gain-loss balance equation, compound ratio, matching
//!   phases, mirror branch solutions, saddle and meeting points;
//! - [`spectral`]: the characteristic quadratic of the coupled linear
//!   response, its complex discriminant, the net-gain inequality and grid
//!   sweeps;
//! - [`hysteresis`]: the cubic quadrature relation between the atomic input
//!   and the cavity output, its inversion and multistability counts;
//! - [`dynamics`]: fixed-step integration of the equations of motion and
//!   long-time classification, plus the frozen-atom driven comparison.
//!
//! All rates and couplings are angular frequencies in MHz, phases in
//! radians, times in microseconds, and mirror displacement in units chosen
//! so that `eta * x` is in MHz.
//!
//! Everything is generic over the scalar type through [`scalar::Real`];
//! `f64` aliases are exported at the crate root.

pub mod dynamics;
pub mod hysteresis;
pub mod params;
pub mod scalar;
pub mod spectral;
pub mod steady;
pub mod verify;

pub use params::{Branch, ParamsError, SteadySolution, SystemParams};
pub use scalar::Real;

/// Default-precision parameter set.
pub type SystemParams64 = params::SystemParams<f64>;
/// Default-precision steady solution.
pub type SteadySolution64 = params::SteadySolution<f64>;
/// Default-precision gain sample.
pub type GainSample64 = spectral::GainSample<f64>;
/// Default-precision hysteresis curve.
pub type HysteresisCurve64 = hysteresis::HysteresisCurve<f64>;
/// Default-precision dynamical state.
pub type ModeState64 = dynamics::ModeState<f64>;
/// Default-precision trajectory.
pub type Trajectory64 = dynamics::Trajectory<f64>;
