//! Time-domain integration of the coupled mirror/cavity/atom equations of
//! motion in the cavity rotating frame, long-time classification, and the
//! frozen-atom driven-cavity comparison.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::SystemParams;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("state became non-finite at t = {t} us")]
    NonFiniteState { t: f64 },
    #[error("time step must be positive and no larger than the horizon")]
    BadStep,
}

/// Instantaneous dynamical state: complex cavity and atomic amplitudes,
/// mirror displacement and velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub x: T,
    pub v: T,
}

impl<T: Real> ModeState<T> {
    pub fn zero() -> Self {
        Self {
            a: Complex::new(T::zero(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
            x: T::zero(),
            v: T::zero(),
        }
    }

    /// Euclidean norm over all real components.
    pub fn norm(&self) -> T {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.x * self.x + self.v * self.v).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.a.re.is_finite()
            && self.a.im.is_finite()
            && self.b.re.is_finite()
            && self.b.im.is_finite()
            && self.x.is_finite()
            && self.v.is_finite()
    }

    fn scaled(&self, s: T) -> Self {
        Self {
            a: self.a * s,
            b: self.b * s,
            x: self.x * s,
            v: self.v * s,
        }
    }

    fn plus(&self, other: &Self) -> Self {
        Self {
            a: self.a + other.a,
            b: self.b + other.b,
            x: self.x + other.x,
            v: self.v + other.v,
        }
    }
}

/// How an integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    /// Norm fell below 1e-12 of the initial norm.
    Decayed,
    /// Norm exceeded 1e12 of the initial norm.
    Diverged,
    /// Relative state change per mirror period fell below 1e-8 (only
    /// produced by [`settle`]).
    Settled,
    /// The time horizon was reached first.
    MaxTime,
}

/// Recorded integration output.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    /// Strictly increasing sample times, microseconds; `times[0] = 0`.
    pub times: Vec<T>,
    pub states: Vec<ModeState<T>>,
    pub dt: T,
    /// Every `stride`-th step was recorded (plus the final step).
    pub stride: usize,
    pub termination: Termination,
}

impl<T: Real> Trajectory<T> {
    pub fn final_state(&self) -> &ModeState<T> {
        self.states.last().expect("trajectory records at least t = 0")
    }

    pub fn final_time(&self) -> T {
        *self.times.last().expect("trajectory records at least t = 0")
    }
}

/// Right-hand side of the equations of motion:
///
/// `x'' = -Gamma x' - omega_m^2 x + (eta/m) |a|^2`, with
/// `eta/m = beta omega_m^2 / eta`
/// `a' = i eta x a - kappa a - i G e^{i phi} b`
/// `b' = -i delta b - gamma b - i G e^{i phi} a`
pub fn derivatives<T: Real>(p: &SystemParams<T>, s: &ModeState<T>) -> ModeState<T> {
    let i = Complex::new(T::zero(), T::one());
    let coupling = i * Complex::new(T::zero(), p.phi).exp() * p.g;
    let da = i * s.a * (p.eta * s.x) - s.a * p.kappa - coupling * s.b;
    let db = s.b * Complex::new(-p.gamma, -p.delta) - coupling * s.a;
    let omega2 = p.omega_m * p.omega_m;
    let dv = -p.gamma_m * s.v - omega2 * s.x + p.beta * omega2 / p.eta * s.a.norm_sqr();
    ModeState {
        a: da,
        b: db,
        x: s.v,
        v: dv,
    }
}

fn rk4_step<T: Real>(
    rhs: &impl Fn(&ModeState<T>) -> ModeState<T>,
    s: &ModeState<T>,
    dt: T,
) -> ModeState<T> {
    let half = T::of(0.5);
    let sixth = T::of(1.0 / 6.0);
    let third = T::of(1.0 / 3.0);
    let k1 = rhs(s);
    let k2 = rhs(&s.plus(&k1.scaled(dt * half)));
    let k3 = rhs(&s.plus(&k2.scaled(dt * half)));
    let k4 = rhs(&s.plus(&k3.scaled(dt)));
    let incr = k1
        .scaled(sixth)
        .plus(&k2.scaled(third))
        .plus(&k3.scaled(third))
        .plus(&k4.scaled(sixth));
    s.plus(&incr.scaled(dt))
}

/// Relative norm thresholds for early termination.
const DECAY_FACTOR: f64 = 1e-12;
const DIVERGE_FACTOR: f64 = 1e12;

fn integrate_with<T: Real>(
    rhs: impl Fn(&ModeState<T>) -> ModeState<T>,
    s0: ModeState<T>,
    dt: T,
    t_max: T,
    stride: usize,
) -> Result<Trajectory<T>, DynamicsError> {
    if dt <= T::zero() || t_max < dt || !dt.is_finite() || !t_max.is_finite() {
        return Err(DynamicsError::BadStep);
    }
    let stride = stride.max(1);
    let n_steps = (t_max / dt)
        .round()
        .to_f64()
        .map(|v| v as usize)
        .unwrap_or(0)
        .max(1);
    let norm0 = s0.norm();
    let decay = T::of(DECAY_FACTOR) * norm0;
    let diverge = T::of(DIVERGE_FACTOR) * norm0;

    let mut times = vec![T::zero()];
    let mut states = vec![s0];
    let mut s = s0;
    let mut termination = Termination::MaxTime;
    for step in 1..=n_steps {
        s = rk4_step(&rhs, &s, dt);
        let t = dt * T::of_usize(step);
        if !s.is_finite() {
            return Err(DynamicsError::NonFiniteState {
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        let record = step.is_multiple_of(stride) || step == n_steps;
        let norm = s.norm();
        let stop = if norm0 > T::zero() && norm > diverge {
            termination = Termination::Diverged;
            true
        } else if norm0 > T::zero() && norm < decay {
            termination = Termination::Decayed;
            true
        } else {
            false
        };
        if record || stop {
            times.push(t);
            states.push(s);
        }
        if stop {
            break;
        }
    }
    Ok(Trajectory {
        times,
        states,
        dt,
        stride,
        termination,
    })
}

/// Fixed-step fourth-order integration of the full equations of motion.
///
/// Records every `stride`-th step plus the final one; terminates early when
/// the state norm leaves `[1e-12, 1e12]` relative to the initial norm.
/// A step `dt <= 0.1 / max(kappa, gamma, omega_m, |delta|, |eta x|)` keeps
/// the scheme in its accurate regime (documented, not enforced).
pub fn integrate<T: Real>(
    p: &SystemParams<T>,
    s0: ModeState<T>,
    dt: T,
    t_max: T,
    stride: usize,
) -> Result<Trajectory<T>, DynamicsError> {
    integrate_with(|s| derivatives(p, s), s0, dt, t_max, stride)
}

/// Frozen-atom comparison: the atomic amplitude is pinned to sqrt(N) and the
/// phase to pi/2, turning the coupling into a real drive `G sqrt(N)` on the
/// cavity; only (a, x, v) evolve.
pub fn driven_mode<T: Real>(
    p: &SystemParams<T>,
    s0: ModeState<T>,
    dt: T,
    t_max: T,
    stride: usize,
) -> Result<Trajectory<T>, DynamicsError> {
    let drive = crate::steady::bogoliubov_drive(p);
    let b_frozen = Complex::new(T::of(p.n_atoms as f64).sqrt(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let omega2 = p.omega_m * p.omega_m;
    let rhs = move |s: &ModeState<T>| {
        let da = i * s.a * (p.eta * s.x) - s.a * p.kappa + Complex::new(drive, T::zero());
        let dv = -p.gamma_m * s.v - omega2 * s.x + p.beta * omega2 / p.eta * s.a.norm_sqr();
        ModeState {
            a: da,
            b: Complex::new(T::zero(), T::zero()),
            x: s.v,
            v: dv,
        }
    };
    let start = ModeState { b: b_frozen, ..s0 };
    integrate_with(rhs, start, dt, t_max, stride)
}

/// Outcome of [`settle`].
#[derive(Debug, Clone, PartialEq)]
pub struct SettleOutcome<T> {
    pub termination: Termination,
    pub state: ModeState<T>,
    pub t: T,
}

/// Integrate until the state decays, diverges, or stops changing (relative
/// change per mirror period below 1e-8), or `t_max` elapses.
pub fn settle<T: Real>(
    p: &SystemParams<T>,
    s0: ModeState<T>,
    dt: T,
    t_max: T,
) -> Result<SettleOutcome<T>, DynamicsError> {
    if dt <= T::zero() || t_max < dt || !dt.is_finite() || !t_max.is_finite() {
        return Err(DynamicsError::BadStep);
    }
    let period = T::of(2.0) * T::PI() / p.omega_m;
    let steps_per_period = (period / dt)
        .ceil()
        .to_f64()
        .map(|v| v as usize)
        .unwrap_or(1)
        .max(1);
    let norm0 = s0.norm();
    let decay = T::of(DECAY_FACTOR) * norm0;
    let diverge = T::of(DIVERGE_FACTOR) * norm0;
    let settle_tol = T::of(1e-8);

    let mut s = s0;
    let mut t = T::zero();
    let mut period_mark = s0;
    let mut step = 0usize;
    while t < t_max {
        s = rk4_step(&|state| derivatives(p, state), &s, dt);
        step += 1;
        t = dt * T::of_usize(step);
        if !s.is_finite() {
            return Err(DynamicsError::NonFiniteState {
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        let norm = s.norm();
        if norm0 > T::zero() && norm > diverge {
            return Ok(SettleOutcome {
                termination: Termination::Diverged,
                state: s,
                t,
            });
        }
        if norm0 > T::zero() && norm < decay {
            return Ok(SettleOutcome {
                termination: Termination::Decayed,
                state: s,
                t,
            });
        }
        if step.is_multiple_of(steps_per_period) {
            let delta = period_mark.plus(&s.scaled(-T::one())).norm();
            let scale = norm.max(T::of(1e-300));
            if delta <= settle_tol * scale {
                return Ok(SettleOutcome {
                    termination: Termination::Settled,
                    state: s,
                    t,
                });
            }
            period_mark = s;
        }
    }
    Ok(SettleOutcome {
        termination: Termination::MaxTime,
        state: s,
        t,
    })
}
