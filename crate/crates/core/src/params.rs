//! Physical parameters of the tripartite atom-cavity-mirror system.
//!
//! Units convention, used everywhere in this crate: all rates, couplings and
//! detunings are angular frequencies in MHz; the coupling phase is in
//! radians; mirror displacement is in "displacement units" chosen so that
//! `eta * x` is in MHz; time is in microseconds (1/MHz).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;

/// Validation failures for [`SystemParams`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("{0} must be strictly positive")]
    NonPositive(&'static str),
    #[error("gamma_m must be nonnegative")]
    NegativeMirrorDamping,
    #[error("g (collective coupling) must be nonnegative")]
    NegativeCoupling,
    #[error("eta must be nonzero")]
    ZeroEta,
    #[error("delta must equal omega_abs - omega0_abs when both absolute frequencies are set")]
    DetuningMismatch,
    #[error("parameter {0} is not finite")]
    NonFinite(&'static str),
}

/// All physical rates, couplings and the coupling phase.
///
/// This is the single source of truth for every formula in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct SystemParams<T> {
    /// Cavity linewidth kappa, MHz.
    pub kappa: T,
    /// Relaxation rate gamma of the collective atomic mode, MHz.
    pub gamma: T,
    /// Mirror damping rate, MHz.
    pub gamma_m: T,
    /// Atom-cavity detuning delta = Omega - omega0, MHz (signed).
    pub delta: T,
    /// Radiation-pressure coupling eta, MHz per displacement unit.
    pub eta: T,
    /// Collective atom-cavity coupling G, MHz.
    pub g: T,
    /// Coupling phase phi, radians.
    pub phi: T,
    /// Single-atom coupling g, MHz.
    pub g_single: T,
    /// Atom count.
    pub n_atoms: u64,
    /// Mechanical response beta = eta^2 / (m omega_m^2), MHz per unit photon
    /// number. Replaces the pair (m, omega_m^2) in every steady-state formula.
    pub beta: T,
    /// Mirror frequency omega_m, MHz.
    pub omega_m: T,
    /// Absolute atomic level spacing Omega, MHz. Informational; all formulas
    /// use `delta`.
    pub omega_abs: Option<T>,
    /// Absolute cavity frequency omega0, MHz. Informational.
    pub omega0_abs: Option<T>,
}

impl<T: Real> SystemParams<T> {
    /// Reference parameter set: kappa = 1.3, gamma = 3.0, eta = sqrt(1.8) kappa,
    /// g_single = 10.9, delta = 32000 (all MHz), beta = kappa, gamma_m = 0.01,
    /// omega_m = 1.0, one atom.
    pub fn reference() -> Self {
        let kappa = T::of(1.3);
        Self {
            kappa,
            gamma: T::of(3.0),
            gamma_m: T::of(0.01),
            delta: T::of(32_000.0),
            eta: T::of(1.8).sqrt() * kappa,
            g: T::of(10.9),
            phi: T::zero(),
            g_single: T::of(10.9),
            n_atoms: 1,
            beta: kappa,
            omega_m: T::one(),
            omega_abs: None,
            omega0_abs: None,
        }
    }

    /// Check the structural invariants. Call after hand-editing fields.
    pub fn validate(&self) -> Result<(), ParamsError> {
        let finite = [
            (self.kappa, "kappa"),
            (self.gamma, "gamma"),
            (self.gamma_m, "gamma_m"),
            (self.delta, "delta"),
            (self.eta, "eta"),
            (self.g, "g"),
            (self.phi, "phi"),
            (self.g_single, "g_single"),
            (self.beta, "beta"),
            (self.omega_m, "omega_m"),
        ];
        for (v, name) in finite {
            if !v.is_finite() {
                return Err(ParamsError::NonFinite(name));
            }
        }
        if self.kappa <= T::zero() {
            return Err(ParamsError::NonPositive("kappa"));
        }
        if self.gamma <= T::zero() {
            return Err(ParamsError::NonPositive("gamma"));
        }
        if self.omega_m <= T::zero() {
            return Err(ParamsError::NonPositive("omega_m"));
        }
        if self.beta <= T::zero() {
            return Err(ParamsError::NonPositive("beta"));
        }
        if self.gamma_m < T::zero() {
            return Err(ParamsError::NegativeMirrorDamping);
        }
        if self.g < T::zero() {
            return Err(ParamsError::NegativeCoupling);
        }
        if self.eta == T::zero() {
            return Err(ParamsError::ZeroEta);
        }
        if let (Some(omega), Some(omega0)) = (self.omega_abs, self.omega0_abs) {
            if omega - omega0 != self.delta {
                return Err(ParamsError::DetuningMismatch);
            }
        }
        Ok(())
    }

    /// Copy with a different collective coupling.
    pub fn with_g(mut self, g: T) -> Self {
        self.g = g;
        self
    }

    /// Copy with a different detuning.
    pub fn with_delta(mut self, delta: T) -> Self {
        self.delta = delta;
        self
    }

    /// Copy with a different coupling phase.
    pub fn with_phi(mut self, phi: T) -> Self {
        self.phi = phi;
        self
    }
}

/// Which equilibrium of the mirror coordinate a solution belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// The always-present zero equilibrium.
    Zero,
    /// Positive mirror displacement, exists for rho > 1.
    Upper,
    /// Negative mirror displacement, exists for rho > 1.
    Lower,
}

/// One admissible equilibrium of the mirror coordinate.
///
/// For `Upper`/`Lower`, substituting `(x_ss, phi0)` into the gain-loss
/// balance equation gives a residual below `1e-9 * kappa * gamma`. The zero
/// solution exists for every coupling phase and is exempt from that
/// constraint (the balance equation is the degeneracy condition for the
/// non-zero amplitudes only); its `phi0` records the ambient phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct SteadySolution<T> {
    pub branch: Branch,
    /// Mirror displacement, displacement units (0 for `Zero`).
    pub x_ss: T,
    /// Matching phase, radians.
    pub phi0: T,
    /// Compound gain-loss ratio at these parameters.
    pub rho: T,
    /// Integer period index of the phase family.
    pub k: i32,
}
