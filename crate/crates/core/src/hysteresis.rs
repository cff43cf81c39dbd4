//! Input-output hysteresis between the atomic and cavity quadratures: the
//! steady-state b-from-a relation, the cubic quadrature map, its inversion,
//! fold detection and multistability counting across branches.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{Branch, SystemParams};
use crate::scalar::Real;
use crate::steady::{compute_rho, phi_matching};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HysteresisError {
    #[error("collective coupling G is zero")]
    ZeroCoupling,
    #[error("rho <= 1: no non-zero branches exist")]
    BelowThreshold,
    #[error("curve needs at least 2 samples")]
    TooFewSamples,
    #[error("the zero branch has no hysteresis curve")]
    ZeroBranch,
}

/// Sampled quadrature relation for one (branch, k) pair.
///
/// Every sample satisfies `X_b = c3 X_a^3 + c1 X_a`; the curve is
/// odd-symmetric; a fold interval is present iff `c3 * c1 < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct HysteresisCurve<T> {
    pub branch: Branch,
    pub k: i32,
    pub phi0: T,
    /// `(X_a, X_b)` pairs, uniformly spaced in X_a.
    pub samples: Vec<(T, T)>,
    /// `(X_b_low, X_b_high)` where the inversion has three real roots.
    pub fold: Option<(T, T)>,
    /// Cubic coefficient `beta cos(phi0) / (4G)`.
    pub c3: T,
    /// Linear coefficient `kappa sin(phi0) / G`.
    pub c1: T,
}

/// Distinct cavity-quadrature values reachable at one atomic-quadrature
/// input, combined over the Upper and Lower branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct MultistabilityCount<T> {
    pub upper_roots: Vec<T>,
    pub lower_roots: Vec<T>,
    /// Union of the two root lists, distinct within 1e-8 quadrature units.
    pub union: Vec<T>,
    pub total: usize,
}

/// Steady-state atomic amplitude driven by a cavity amplitude `a`:
/// `(1 / (G e^{i phi})) (beta |a|^2 + i kappa) a`.
///
/// In phase with `a` up to the constant complex factor.
pub fn b_from_a<T: Real>(
    p: &SystemParams<T>,
    a: Complex<T>,
) -> Result<Complex<T>, HysteresisError> {
    if p.g == T::zero() {
        return Err(HysteresisError::ZeroCoupling);
    }
    let factor = Complex::new(p.beta * a.norm_sqr(), p.kappa);
    let phase = Complex::new(T::zero(), p.phi).exp();
    Ok(factor * a / (phase * p.g))
}

/// Cubic and linear coefficients of the quadrature map at a matched phase.
pub fn cubic_coeffs<T: Real>(p: &SystemParams<T>, phi0: T) -> Result<(T, T), HysteresisError> {
    if p.g == T::zero() {
        return Err(HysteresisError::ZeroCoupling);
    }
    let four = T::of(4.0);
    Ok((
        p.beta * phi0.cos() / (four * p.g),
        p.kappa * phi0.sin() / p.g,
    ))
}

/// Forward quadrature map `X_b = X_a [ (beta X_a^2 / 4G) cos phi0 + (kappa/G) sin phi0 ]`
/// under the zero common-phase convention.
pub fn quadrature_map<T: Real>(
    p: &SystemParams<T>,
    phi0: T,
    x_a: T,
) -> Result<T, HysteresisError> {
    let (c3, c1) = cubic_coeffs(p, phi0)?;
    Ok(c3 * x_a * x_a * x_a + c1 * x_a)
}

/// Turning-point abscissa `sqrt(-c1 / (3 c3))` and the resulting fold
/// interval in X_b, when the cubic folds (`c3 * c1 < 0`).
pub fn fold_interval<T: Real>(c3: T, c1: T) -> Option<(T, T)> {
    if c3 * c1 >= T::zero() || c3 == T::zero() {
        return None;
    }
    let three = T::of(3.0);
    let x_star = (-c1 / (three * c3)).sqrt();
    let extremum = (T::of(2.0) * c1 / three * x_star).abs();
    Some((-extremum, extremum))
}

/// All real roots `X_a` of `c3 X^3 + c1 X = X_b`, sorted ascending.
///
/// Closed form (trigonometric for three roots, Cardano for one) followed by
/// a Newton polish; accurate to 1e-10 relative. Returns 1, 2 or 3 roots;
/// exactly 2 at a fold boundary.
pub fn invert_map<T: Real>(
    p: &SystemParams<T>,
    phi0: T,
    x_b: T,
) -> Result<Vec<T>, HysteresisError> {
    let (c3, c1) = cubic_coeffs(p, phi0)?;
    Ok(solve_cubic(c3, c1, x_b))
}

/// Real roots of `c3 X^3 + c1 X - x_b = 0`, sorted ascending.
pub fn solve_cubic<T: Real>(c3: T, c1: T, x_b: T) -> Vec<T> {
    if c3 == T::zero() {
        if c1 == T::zero() {
            return vec![];
        }
        return vec![x_b / c1];
    }
    if x_b == T::zero() {
        // X (c3 X^2 + c1) = 0 factors exactly
        return if c3 * c1 < T::zero() {
            let r = (-c1 / c3).sqrt();
            vec![-r, T::zero(), r]
        } else {
            vec![T::zero()]
        };
    }

    // depressed form t^3 + p t + q = 0
    let p = c1 / c3;
    let q = -x_b / c3;
    let four = T::of(4.0);
    let twenty_seven = T::of(27.0);
    let half = T::of(0.5);
    let disc = -(four * p * p * p + twenty_seven * q * q);
    let scale = (four * p * p * p).abs() + (twenty_seven * q * q).abs();

    let mut roots = if disc.abs() <= T::of(1e-12) * scale {
        // boundary: double root at a, simple root at -2a with q = 2a^3
        let a = (q * half).cbrt();
        vec![a, -(a + a)]
    } else if disc > T::zero() {
        // three distinct real roots, trigonometric form (p < 0 here)
        let three = T::of(3.0);
        let m = (-p / three).sqrt();
        let arg = (three * q / (T::of(2.0) * p * m)).max(-T::one()).min(T::one());
        let theta = arg.acos() / three;
        let tau = T::of(2.0) * T::PI() / three;
        vec![
            (m + m) * theta.cos(),
            (m + m) * (theta - tau).cos(),
            (m + m) * (theta + tau).cos(),
        ]
    } else {
        // one real root, Cardano
        let r = (q * q * T::of(0.25) + p * p * p / twenty_seven).sqrt();
        vec![(-q * half + r).cbrt() + (-q * half - r).cbrt()]
    };

    // Newton polish on the original cubic
    for t in roots.iter_mut() {
        for _ in 0..3 {
            let f = c3 * *t * *t * *t + c1 * *t - x_b;
            let df = T::of(3.0) * c3 * *t * *t + c1;
            if df.abs() > T::of(1e-300) {
                let step = f / df;
                if step.is_finite() {
                    *t = *t - step;
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= T::of(1e-10) * (T::one() + a.abs()));
    roots
}

fn branch_phi0<T: Real>(
    p: &SystemParams<T>,
    branch: Branch,
    k: i32,
) -> Result<T, HysteresisError> {
    if p.g == T::zero() {
        return Err(HysteresisError::ZeroCoupling);
    }
    let rho = compute_rho(p);
    if rho <= T::one() {
        return Err(HysteresisError::BelowThreshold);
    }
    let x = p.kappa / p.eta * (rho - T::one()).sqrt();
    let x_ss = match branch {
        Branch::Upper => x,
        Branch::Lower => -x,
        Branch::Zero => return Err(HysteresisError::ZeroBranch),
    };
    Ok(phi_matching(p, x_ss, k).expect("branch displacement is balance-consistent"))
}

/// Invert both branch cubics at input `X_b` and merge the root lists
/// (distinct within 1e-8 quadrature units).
pub fn multistability_count<T: Real>(
    p: &SystemParams<T>,
    k: i32,
    x_b: T,
) -> Result<MultistabilityCount<T>, HysteresisError> {
    let upper = invert_map(p, branch_phi0(p, Branch::Upper, k)?, x_b)?;
    let lower = invert_map(p, branch_phi0(p, Branch::Lower, k)?, x_b)?;
    let mut union: Vec<T> = upper.iter().chain(lower.iter()).copied().collect();
    union.sort_by(|a, b| a.partial_cmp(b).unwrap());
    union.dedup_by(|a, b| (*a - *b).abs() <= T::of(1e-8));
    let total = union.len();
    Ok(MultistabilityCount {
        upper_roots: upper,
        lower_roots: lower,
        union,
        total,
    })
}

/// Uniformly sampled hysteresis curve for one branch at phase index `k`.
pub fn trace_curve<T: Real>(
    p: &SystemParams<T>,
    branch: Branch,
    k: i32,
    x_a_min: T,
    x_a_max: T,
    n_samples: usize,
) -> Result<HysteresisCurve<T>, HysteresisError> {
    if n_samples < 2 {
        return Err(HysteresisError::TooFewSamples);
    }
    let phi0 = branch_phi0(p, branch, k)?;
    let (c3, c1) = cubic_coeffs(p, phi0)?;
    let step = (x_a_max - x_a_min) / T::of_usize(n_samples - 1);
    let samples = (0..n_samples)
        .map(|i| {
            let x_a = x_a_min + step * T::of_usize(i);
            (x_a, c3 * x_a * x_a * x_a + c1 * x_a)
        })
        .collect();
    Ok(HysteresisCurve {
        branch,
        k,
        phi0,
        samples,
        fold: fold_interval(c3, c1),
        c3,
        c1,
    })
}
