//! Einstein velocity addition on the open ball of radius `c` in ℝ³.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GyroError, Result};
use crate::gyro::{within_tolerance, Gyrogroup, DEFAULT_TOLERANCE};

/// Velocity in units where `c` is the speed bound carried by the vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinVector {
    pub v: [f64; 3],
    pub c: f64,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl EinsteinVector {
    pub fn new(v: [f64; 3], c: f64) -> Result<Self> {
        let u = EinsteinVector { v, c };
        u.validate()?;
        Ok(u)
    }

    pub fn zero(c: f64) -> Self {
        EinsteinVector { v: [0.0; 3], c }
    }

    pub fn norm(&self) -> f64 {
        dot(&self.v, &self.v).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(GyroError::Domain(format!("speed bound c = {} must be positive", self.c)));
        }
        let n = self.norm();
        if !n.is_finite() || n >= self.c * (1.0 - 1e-12) {
            return Err(GyroError::Domain(format!(
                "velocity norm {n} not strictly below c = {}",
                self.c
            )));
        }
        Ok(())
    }
}

/// Lorentz factor `1/√(1 − u·u/c²)`.
pub fn gamma(u: &EinsteinVector) -> Result<f64> {
    u.validate()?;
    Ok(gamma_raw(u))
}

fn gamma_raw(u: &EinsteinVector) -> f64 {
    1.0 / (1.0 - dot(&u.v, &u.v) / (u.c * u.c)).sqrt()
}

fn add_raw(u: &EinsteinVector, v: &EinsteinVector) -> EinsteinVector {
    let c2 = u.c * u.c;
    let uv = dot(&u.v, &v.v);
    let g = gamma_raw(u);
    let scale = 1.0 / (1.0 + uv / c2);
    let k = g / (1.0 + g) * uv / c2;
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = scale * (u.v[i] + v.v[i] / g + k * u.v[i]);
    }
    EinsteinVector { v: out, c: u.c }
}

/// `u ⊕ v = 1/(1 + u·v/c²) · (u + v/γ_u + (1/c²)·γ_u/(1 + γ_u)·(u·v)·u)`.
pub fn einstein_add(u: &EinsteinVector, v: &EinsteinVector) -> Result<EinsteinVector> {
    u.validate()?;
    v.validate()?;
    if u.c != v.c {
        return Err(GyroError::Domain(format!(
            "mismatched speed bounds {} and {}",
            u.c, v.c
        )));
    }
    let w = add_raw(u, v);
    if !(w.norm() < w.c) {
        return Err(GyroError::Domain(format!(
            "sum left the ball: norm {} ≥ c = {}",
            w.norm(),
            w.c
        )));
    }
    Ok(w)
}

/// The Einstein gyrogroup `(ℝ³_c, ⊕)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinBall {
    pub c: f64,
    pub tolerance: f64,
    /// Samples are drawn uniformly from the ball of radius `sample_fraction·c`.
    pub sample_fraction: f64,
}

impl Default for EinsteinBall {
    fn default() -> Self {
        Self {
            c: 1.0,
            tolerance: DEFAULT_TOLERANCE,
            sample_fraction: 0.9,
        }
    }
}

impl EinsteinBall {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(GyroError::Domain(format!("speed bound c = {c} must be positive")));
        }
        Ok(Self {
            c,
            ..Self::default()
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

impl Gyrogroup for EinsteinBall {
    type Element = EinsteinVector;

    fn op(&self, a: &EinsteinVector, b: &EinsteinVector) -> EinsteinVector {
        add_raw(a, b)
    }

    fn identity(&self) -> EinsteinVector {
        EinsteinVector::zero(self.c)
    }

    fn inverse(&self, a: &EinsteinVector) -> EinsteinVector {
        EinsteinVector {
            v: [-a.v[0], -a.v[1], -a.v[2]],
            c: a.c,
        }
    }

    fn approx_eq(&self, a: &EinsteinVector, b: &EinsteinVector) -> bool {
        let d = [a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2]];
        within_tolerance(dot(&d, &d).sqrt(), a.norm().max(b.norm()), self.tolerance)
    }

    fn tolerance(&self) -> Option<f64> {
        Some(self.tolerance)
    }

    fn check_domain(&self, a: &EinsteinVector) -> Result<()> {
        if a.c != self.c {
            return Err(GyroError::Domain(format!(
                "vector carries c = {}, ball has c = {}",
                a.c, self.c
            )));
        }
        a.validate()
    }

    fn elements(&self) -> Option<Vec<EinsteinVector>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> EinsteinVector {
        // uniform direction, radius with density ∝ r²
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi = rng.gen::<f64>() * std::f64::consts::TAU;
        let r = self.sample_fraction * self.c * rng.gen::<f64>().cbrt();
        let s = (1.0 - z * z).sqrt();
        EinsteinVector {
            v: [r * s * phi.cos(), r * s * phi.sin(), r * z],
            c: self.c,
        }
    }
}
