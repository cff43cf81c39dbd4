//! Steady-state theory of the mirror coordinate: gain-loss balance,
//! compound ratio, phase matching, branch solutions, saddle and meeting
//! points, and the degenerate-matrix condition.

use num_complex::Complex;
use thiserror::Error;

use crate::params::{Branch, SteadySolution, SystemParams};
use crate::scalar::Real;

/// Errors from the steady-state operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteadyError {
    /// The supplied displacement is not a balance-consistent branch value;
    /// no coupling phase can make the balance residual vanish there.
    #[error("displacement {x} admits no matching phase (|target| differs from G^2 by {mismatch})")]
    InconsistentDisplacement { x: f64, mismatch: f64 },
    /// G^4/kappa^2 < gamma^2: the two phase curves never meet on the real
    /// detuning axis.
    #[error("no real meeting detuning: G^2 <= kappa*gamma")]
    NoMeetingPoint,
}

/// Collective coupling of N identical atoms: sqrt(N) * g_single.
pub fn hopfield_g<T: Real>(g_single: T, n_atoms: u64) -> T {
    T::of(n_atoms as f64).sqrt() * g_single
}

/// Effective drive amplitude of the frozen-atom comparison model: G * sqrt(N).
pub fn bogoliubov_drive<T: Real>(p: &SystemParams<T>) -> T {
    p.g * T::of(p.n_atoms as f64).sqrt()
}

/// Compound gain-loss ratio (G^2/kappa^2) * (G^2/(gamma^2 + delta^2)).
///
/// Strictly increasing in G; rho > 1 marks the onset of non-zero mirror
/// equilibria.
pub fn compute_rho<T: Real>(p: &SystemParams<T>) -> T {
    let g2 = p.g * p.g;
    (g2 / (p.kappa * p.kappa)) * (g2 / (p.gamma * p.gamma + p.delta * p.delta))
}

/// Left-hand side of the gain-loss balance equation at displacement `x`:
///
/// `kappa*gamma + delta*eta*x + G^2 e^{2i phi} + i (kappa*delta - gamma*eta*x)`
///
/// Zero exactly at matched steady states. Units MHz^2.
pub fn balance_residual<T: Real>(p: &SystemParams<T>, x: T) -> Complex<T> {
    let eta_x = p.eta * x;
    let two_phi = p.phi + p.phi;
    let g2 = p.g * p.g;
    Complex::new(
        p.kappa * p.gamma + p.delta * eta_x + g2 * two_phi.cos(),
        p.kappa * p.delta - p.gamma * eta_x + g2 * two_phi.sin(),
    )
}

/// Determinant of the homogeneous steady-state matrix,
/// `(kappa - i eta x)(i delta + gamma) + G^2 e^{2i phi}`.
///
/// Algebraically identical to [`balance_residual`]; kept as an independent
/// code path (complex product rather than expanded components) so the
/// identity can be tested rather than assumed.
pub fn degenerate_det<T: Real>(p: &SystemParams<T>, x: T) -> Complex<T> {
    let row = Complex::new(p.kappa, -(p.eta * x));
    let col = Complex::new(p.gamma, p.delta);
    let phase = Complex::new(T::zero(), p.phi + p.phi).exp();
    row * col + phase * p.g * p.g
}

/// Complex number that `G^2 e^{2i phi}` must equal for the balance residual
/// to vanish at displacement `x`.
fn balance_target<T: Real>(p: &SystemParams<T>, x: T) -> Complex<T> {
    let eta_x = p.eta * x;
    Complex::new(
        -(p.kappa * p.gamma + p.delta * eta_x),
        p.gamma * eta_x - p.kappa * p.delta,
    )
}

/// Matching phase for a branch displacement: half the two-argument angle of
/// the balance target, plus `k * pi`.
///
/// The returned family is pi-periodic in `k` and satisfies the balance
/// equation exactly for every integer `k`. Rejects displacements where the
/// target modulus differs from G^2, i.e. anything that is not a branch value
/// (including x = 0 unless rho = 1).
pub fn phi_matching<T: Real>(p: &SystemParams<T>, x_ss: T, k: i32) -> Result<T, SteadyError> {
    let target = balance_target(p, x_ss);
    let g2 = p.g * p.g;
    let mismatch = (target.norm() - g2).abs();
    // Branch values reproduce |target| = G^2 to rounding; anything else is
    // off by a finite amount. sqrt(eps) keeps the gate scale-aware in f32.
    let tol = T::epsilon().sqrt() * (g2 + target.norm());
    if mismatch > tol {
        return Err(SteadyError::InconsistentDisplacement {
            x: x_ss.to_f64().unwrap_or(f64::NAN),
            mismatch: mismatch.to_f64().unwrap_or(f64::NAN),
        });
    }
    let half = T::of(0.5);
    Ok(half * target.arg() + T::of(k as f64) * T::PI())
}

/// All admissible equilibria of the mirror coordinate at phase index `k`.
///
/// Always contains the zero solution. Iff rho > 1 (strictly), additionally
/// contains the Upper and Lower branches at `x = +/- (kappa/eta) sqrt(rho-1)`
/// paired with their matching phases. At rho = 1 the branches coincide with
/// zero and only the zero solution is returned.
pub fn steady_states<T: Real>(p: &SystemParams<T>, k: i32) -> Vec<SteadySolution<T>> {
    let rho = compute_rho(p);
    let mut out = vec![SteadySolution {
        branch: Branch::Zero,
        x_ss: T::zero(),
        phi0: p.phi,
        rho,
        k,
    }];
    if rho > T::one() {
        let x = p.kappa / p.eta * (rho - T::one()).sqrt();
        for (branch, x_ss) in [(Branch::Upper, x), (Branch::Lower, -x)] {
            let phi0 = phi_matching(p, x_ss, k)
                .expect("branch displacement is balance-consistent by construction");
            out.push(SteadySolution {
                branch,
                x_ss,
                phi0,
                rho,
                k,
            });
        }
    }
    out
}

/// Inflection point of the branch curve x_ss(G): `[3 kappa^2 (gamma^2 + delta^2)]^{1/4}`.
///
/// Separates the near-threshold parabolic region from the far quadratic one.
pub fn saddle_g<T: Real>(p: &SystemParams<T>) -> T {
    let three = T::of(3.0);
    (three * p.kappa * p.kappa * (p.gamma * p.gamma + p.delta * p.delta))
        .sqrt()
        .sqrt()
}

/// Detunings `+/- sqrt(G^4/kappa^2 - gamma^2)` where rho = 1 and the two
/// matching-phase curves coincide. Returns `(negative, positive)`.
pub fn meeting_delta<T: Real>(p: &SystemParams<T>) -> Result<(T, T), SteadyError> {
    let g2 = p.g * p.g;
    let radicand = g2 * g2 / (p.kappa * p.kappa) - p.gamma * p.gamma;
    if radicand < T::zero() {
        return Err(SteadyError::NoMeetingPoint);
    }
    let d = radicand.sqrt();
    Ok((-d, d))
}
