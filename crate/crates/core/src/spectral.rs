//! Laplace-domain gain analysis: characteristic quadratic of the coupled
//! cavity/atom response, its complex discriminant, the net-gain inequality
//! margin, and grid sweeps over (delta, G, phi).

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::SystemParams;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("discriminant magnitude below {tol}: polar angle undefined")]
    DegenerateDiscriminant { tol: f64 },
    #[error("grid spec invalid: {0}")]
    BadGrid(&'static str),
}

/// Three-way classification of the coupled linear response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    NetGain,
    NetLoss,
    Balanced,
}

/// One evaluated point of the gain-loss inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Serialize"))]
pub struct GainSample<T> {
    pub delta: T,
    pub g: T,
    pub phi: T,
    pub x: T,
    /// Undivided left-minus-right of the net-gain inequality, MHz^4.
    pub margin: T,
    /// Zeros of the characteristic quadratic, MHz.
    #[serde(skip)]
    pub roots: [Complex<T>; 2],
    pub classification: Classification,
}

/// Classification tolerance on root real parts: `1e-6 * (kappa + gamma)`.
pub fn balanced_tol<T: Real>(p: &SystemParams<T>) -> T {
    T::of(1e-6) * (p.kappa + p.gamma)
}

/// Monic characteristic quadratic `s^2 + b s + c` of the coupled (a, b)
/// response at mirror coordinate `x`. Returns `[1, b, c]` with
///
/// `b = kappa + gamma + i (delta - eta x)`
/// `c = delta*eta*x + kappa*gamma + i (delta*kappa - gamma*eta*x) + G^2 e^{2i phi}`
pub fn char_quadratic<T: Real>(p: &SystemParams<T>, x: T) -> [Complex<T>; 3] {
    let eta_x = p.eta * x;
    let g2 = p.g * p.g;
    let phase = Complex::new(T::zero(), p.phi + p.phi).exp();
    let b = Complex::new(p.kappa + p.gamma, p.delta - eta_x);
    let c = Complex::new(
        p.delta * eta_x + p.kappa * p.gamma,
        p.delta * p.kappa - p.gamma * eta_x,
    ) + phase * g2;
    [Complex::new(T::one(), T::zero()), b, c]
}

/// Complex discriminant of the characteristic quadratic, written out in
/// components (independent of `b^2 - 4c`, which tests check against):
///
/// `D = (kappa-gamma)^2 - (delta+eta x)^2 - 4G^2 cos 2phi
///      - 2i [ (kappa-gamma)(delta+eta x) + 2G^2 sin 2phi ]`
pub fn discriminant<T: Real>(p: &SystemParams<T>, x: T) -> Complex<T> {
    let kg = p.kappa - p.gamma;
    let de = p.delta + p.eta * x;
    let g2 = p.g * p.g;
    let two_phi = p.phi + p.phi;
    let four = T::of(4.0);
    let two = T::of(2.0);
    Complex::new(
        kg * kg - de * de - four * g2 * two_phi.cos(),
        -two * (kg * de + two * g2 * two_phi.sin()),
    )
}

/// Polar angle of the discriminant family,
/// `theta = atan[(2 kg de + 4G^2 sin 2phi)/(kg^2 - de^2 - 4G^2 cos 2phi)] + k pi`
/// with the arctangent valued in (-pi/2, pi/2). The real part of sqrt(D)
/// reconstructed from theta is positive for even `k` and negative for odd.
pub fn theta_angle<T: Real>(p: &SystemParams<T>, x: T, k: i32) -> Result<T, SpectralError> {
    let d = discriminant(p, x);
    let scale = (p.kappa + p.gamma) * (p.kappa + p.gamma);
    if d.norm() < T::of(1e-12) * scale {
        return Err(SpectralError::DegenerateDiscriminant {
            tol: 1e-12 * scale.to_f64().unwrap_or(f64::NAN),
        });
    }
    // numerator = -Im D, denominator = Re D
    Ok((-d.im / d.re).atan() + T::of(k as f64) * T::PI())
}

/// Square root of the discriminant reconstructed through the polar angle:
/// `|D|^{1/2} e^{-i theta / 2}` at index `k`.
pub fn sqrt_disc_from_theta<T: Real>(
    p: &SystemParams<T>,
    x: T,
    k: i32,
) -> Result<Complex<T>, SpectralError> {
    let d = discriminant(p, x);
    let theta = theta_angle(p, x, k)?;
    let half = T::of(0.5);
    Ok(Complex::from_polar(d.norm().sqrt(), -half * theta))
}

/// Undivided net-gain margin, MHz^4:
///
/// `(G^2 sin 2phi)^2 + (kappa-gamma)(delta+eta x) G^2 sin 2phi
///  - (kappa+gamma)^2 G^2 cos 2phi - kappa gamma [(kappa+gamma)^2 + (delta+eta x)^2]`
///
/// The net-gain inequality holds iff this is nonnegative. The divided-by-G^4
/// textbook form is singular at G = 0; the sign is identical.
pub fn gain_margin<T: Real>(p: &SystemParams<T>, x: T) -> T {
    let kg = p.kappa - p.gamma;
    let ks = p.kappa + p.gamma;
    let de = p.delta + p.eta * x;
    let g2 = p.g * p.g;
    let two_phi = p.phi + p.phi;
    let a = g2 * two_phi.sin();
    a * a + kg * de * a - ks * ks * g2 * two_phi.cos() - p.kappa * p.gamma * (ks * ks + de * de)
}

/// Roots of the monic quadratic `s^2 + b s + c`, computed with the
/// cancellation-avoiding variant: the larger-magnitude root from the
/// quadratic formula, the other from the product `c`.
pub fn quadratic_roots<T: Real>(b: Complex<T>, c: Complex<T>) -> [Complex<T>; 2] {
    let four = T::of(4.0);
    let half = T::of(0.5);
    let disc = b * b - c * four;
    let sq = disc.sqrt();
    // pick the sign that avoids subtracting nearly equal quantities
    let q = if (b.conj() * sq).re >= T::zero() {
        -(b + sq) * half
    } else {
        -(b - sq) * half
    };
    if q.norm() == T::zero() {
        [q, -b]
    } else {
        [q, c / q]
    }
}

/// Characteristic roots of the coupled response at mirror coordinate `x`.
pub fn char_roots<T: Real>(p: &SystemParams<T>, x: T) -> [Complex<T>; 2] {
    let [_, b, c] = char_quadratic(p, x);
    quadratic_roots(b, c)
}

/// Largest real part among the characteristic roots.
pub fn max_root_re<T: Real>(p: &SystemParams<T>, x: T) -> T {
    let [r0, r1] = char_roots(p, x);
    r0.re.max(r1.re)
}

fn classify_roots<T: Real>(max_re: T, tol: T) -> Classification {
    if max_re > tol {
        Classification::NetGain
    } else if max_re < -tol {
        Classification::NetLoss
    } else {
        Classification::Balanced
    }
}

/// Classify the linear response by the sign of the maximal root real part
/// against the balanced band `+/- 1e-6 (kappa + gamma)`.
pub fn classify<T: Real>(p: &SystemParams<T>, x: T) -> Classification {
    classify_roots(max_root_re(p, x), balanced_tol(p))
}

/// Evaluate one full gain sample (margin, roots, classification).
pub fn gain_sample<T: Real>(p: &SystemParams<T>, x: T) -> GainSample<T> {
    let roots = char_roots(p, x);
    let max_re = roots[0].re.max(roots[1].re);
    GainSample {
        delta: p.delta,
        g: p.g,
        phi: p.phi,
        x,
        margin: gain_margin(p, x),
        roots,
        classification: classify_roots(max_re, balanced_tol(p)),
    }
}

/// Sweep axis for [`gain_map`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Delta,
    G,
    Phi,
}

/// Axis spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// One axis of a two-dimensional sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct AxisSpec<T> {
    pub axis: SweepAxis,
    pub min: T,
    pub max: T,
    pub count: usize,
    pub spacing: Spacing,
}

impl<T: Real> AxisSpec<T> {
    pub fn validate(&self) -> Result<(), SpectralError> {
        if self.count < 2 {
            return Err(SpectralError::BadGrid("axis needs at least 2 points"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(SpectralError::BadGrid("axis bounds must be finite"));
        }
        if self.max <= self.min {
            return Err(SpectralError::BadGrid("axis max must exceed min"));
        }
        if self.spacing == Spacing::Log && self.min <= T::zero() {
            return Err(SpectralError::BadGrid("log spacing requires positive bounds"));
        }
        Ok(())
    }

    /// Grid coordinate at index `i`.
    pub fn value(&self, i: usize) -> T {
        let t = T::of_usize(i) / T::of_usize(self.count - 1);
        match self.spacing {
            Spacing::Linear => self.min + (self.max - self.min) * t,
            Spacing::Log => {
                let (a, b) = (self.min.ln(), self.max.ln());
                (a + (b - a) * t).exp()
            }
        }
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Row-major grid of gain samples over two swept axes; the non-swept
/// parameters (including the third of {delta, G, phi}) stay at their values
/// in `p`.
#[derive(Debug, Clone)]
pub struct GainMap<T> {
    pub rows: AxisSpec<T>,
    pub cols: AxisSpec<T>,
    /// `samples[r * cols.count + c]`
    pub samples: Vec<GainSample<T>>,
}

impl<T: Real> GainMap<T> {
    pub fn at(&self, row: usize, col: usize) -> &GainSample<T> {
        &self.samples[row * self.cols.count + col]
    }
}

/// Evaluate the gain inequality over a two-axis grid at mirror coordinate `x`.
///
/// Deterministic: samples are produced in row-major order; values do not
/// depend on evaluation schedule.
pub fn gain_map<T: Real>(
    p: &SystemParams<T>,
    rows: AxisSpec<T>,
    cols: AxisSpec<T>,
    x: T,
) -> Result<GainMap<T>, SpectralError> {
    rows.validate()?;
    cols.validate()?;
    if rows.axis == cols.axis {
        return Err(SpectralError::BadGrid("row and column axes must differ"));
    }
    let set = |q: &mut SystemParams<T>, axis: SweepAxis, v: T| match axis {
        SweepAxis::Delta => q.delta = v,
        SweepAxis::G => q.g = v,
        SweepAxis::Phi => q.phi = v,
    };
    let mut samples = Vec::with_capacity(rows.count * cols.count);
    for r in 0..rows.count {
        for c in 0..cols.count {
            let mut q = *p;
            set(&mut q, rows.axis, rows.value(r));
            set(&mut q, cols.axis, cols.value(c));
            samples.push(gain_sample(&q, x));
        }
    }
    Ok(GainMap {
        rows,
        cols,
        samples,
    })
}
