//! Chordal Loewner evolution of tracked points.

use num_complex::Complex64;

use super::config::LoewnerScheme;

/// Root of `s² = x` in the closed upper half-plane.
pub fn sqrt_upper(x: Complex64) -> Complex64 {
    let s = x.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// State of the centred map `w_i = g_t(z_i) − U_t` at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoewnerState {
    pub t: f64,
    /// Driving value `U_t`.
    pub u: f64,
    pub points: Vec<Complex64>,
    /// Accumulated `log ∂w/∂z` per point.
    pub dlogw: Vec<Complex64>,
    pub swallowed: Vec<bool>,
    /// Irrep vector carried by the group factor.
    pub repvec: Vec<Complex64>,
}

impl LoewnerState {
    pub fn new(points: Vec<Complex64>) -> Self {
        let n = points.len();
        Self {
            t: 0.0,
            u: 0.0,
            points,
            dlogw: vec![Complex64::new(0.0, 0.0); n],
            swallowed: vec![false; n],
            repvec: Vec::new(),
        }
    }

    pub fn with_repvec(mut self, v: Vec<Complex64>) -> Self {
        self.repvec = v;
        self
    }

    /// Advance by `dt` with driving increment `du`. Points inside `radius` are
    /// flagged and frozen.
    pub fn step(&mut self, du: f64, dt: f64, scheme: LoewnerScheme, radius: f64) {
        for i in 0..self.points.len() {
            if self.swallowed[i] {
                continue;
            }
            let w = self.points[i];
            if w.norm() < radius {
                self.swallowed[i] = true;
                continue;
            }
            match scheme {
                LoewnerScheme::Euler => {
                    self.points[i] = w + 2.0 * dt / w - du;
                    self.dlogw[i] -= 2.0 * dt / (w * w);
                }
                LoewnerScheme::Slit => {
                    let s = sqrt_upper(w * w + 4.0 * dt);
                    self.points[i] = s - du;
                    self.dlogw[i] += (w / s).ln();
                }
            }
        }
        self.t += dt;
        self.u += du;
    }

    pub fn derivative(&self, i: usize) -> Complex64 {
        self.dlogw[i].exp()
    }
}

/// Swallow radius used by the Euler–Maruyama scheme.
pub fn swallow_radius(dt: f64) -> f64 {
    1.5 * dt.sqrt()
}

/// One Euler step with the default swallow radius.
pub fn loewner_step(state: &LoewnerState, du: f64, dt: f64) -> LoewnerState {
    let mut s = state.clone();
    s.step(du, dt, LoewnerScheme::Euler, swallow_radius(dt));
    s
}

/// Closed form for zero driving: `g_t(z) = √(z² + 4t)`.
pub fn kappa_zero_map(z: Complex64, t: f64) -> Complex64 {
    sqrt_upper(z * z + 4.0 * t)
}
