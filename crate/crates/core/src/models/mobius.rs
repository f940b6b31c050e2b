//! Möbius addition on the complex open unit disk.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GyroError, Result};
use crate::gyro::{within_tolerance, Gyrogroup, DEFAULT_TOLERANCE};

/// Points with modulus at or above this are rejected by constructors.
pub const BOUNDARY_GUARD: f64 = 1.0 - 1e-12;

/// Denominators `|1 + ā b|` below this signal corrupted input.
const MIN_DENOMINATOR: f64 = 1e-15;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusPoint {
    pub re: f64,
    pub im: f64,
}

impl MobiusPoint {
    pub const ZERO: MobiusPoint = MobiusPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        let p = MobiusPoint { re, im };
        p.validate()?;
        Ok(p)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub(crate) fn raw(z: Complex64) -> Self {
        MobiusPoint { re: z.re, im: z.im }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.modulus();
        if !m.is_finite() || m >= BOUNDARY_GUARD {
            return Err(GyroError::Domain(format!(
                "Möbius point {}{:+}i has modulus {m}, must be below {BOUNDARY_GUARD}",
                self.re, self.im
            )));
        }
        Ok(())
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

fn add_raw(a: Complex64, b: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) + a.conj() * b;
    if den.norm() < MIN_DENOMINATOR {
        return Err(GyroError::Domain(format!(
            "degenerate Möbius denominator |1 + ā b| = {}",
            den.norm()
        )));
    }
    Ok((a + b) / den)
}

/// Unit-modulus factor `(1 + a b̄)/(1 + ā b)` of `gyr[a, b]`.
pub fn gyration_factor(a: MobiusPoint, b: MobiusPoint) -> Result<Complex64> {
    a.validate()?;
    b.validate()?;
    let (a, b) = (a.to_complex(), b.to_complex());
    let one = Complex64::new(1.0, 0.0);
    let den = one + a.conj() * b;
    if den.norm() < MIN_DENOMINATOR {
        return Err(GyroError::Domain("degenerate Möbius denominator".into()));
    }
    Ok((one + a * b.conj()) / den)
}

/// `a ⊕ b = (a + b)/(1 + ā b)`.
pub fn mobius_add(a: MobiusPoint, b: MobiusPoint) -> Result<MobiusPoint> {
    a.validate()?;
    b.validate()?;
    add_raw(a.to_complex(), b.to_complex()).map(MobiusPoint::raw)
}

/// `gyr[a, b](c) = (1 + a b̄)/(1 + ā b) · c`, a rotation of `c` about 0.
pub fn mobius_gyr(a: MobiusPoint, b: MobiusPoint, c: MobiusPoint) -> Result<MobiusPoint> {
    c.validate()?;
    let f = gyration_factor(a, b)?;
    Ok(MobiusPoint::raw(f * c.to_complex()))
}

/// The Möbius gyrogroup `(𝔻, ⊕)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusDisk {
    pub tolerance: f64,
    /// Samples are drawn uniformly from the disk of this radius.
    pub sample_radius: f64,
}

impl Default for MobiusDisk {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            sample_radius: 0.9,
        }
    }
}

impl MobiusDisk {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

impl Gyrogroup for MobiusDisk {
    type Element = MobiusPoint;

    fn op(&self, a: &MobiusPoint, b: &MobiusPoint) -> MobiusPoint {
        // Interior points keep |1 + ā b| ≥ 1 - |a||b| > 0.
        let (a, b) = (a.to_complex(), b.to_complex());
        MobiusPoint::raw((a + b) / (Complex64::new(1.0, 0.0) + a.conj() * b))
    }

    fn identity(&self) -> MobiusPoint {
        MobiusPoint::ZERO
    }

    fn inverse(&self, a: &MobiusPoint) -> MobiusPoint {
        MobiusPoint { re: -a.re, im: -a.im }
    }

    fn native_gyr(&self, a: &MobiusPoint, b: &MobiusPoint, c: &MobiusPoint) -> Option<MobiusPoint> {
        let (a, b) = (a.to_complex(), b.to_complex());
        let one = Complex64::new(1.0, 0.0);
        let f = (one + a * b.conj()) / (one + a.conj() * b);
        Some(MobiusPoint::raw(f * c.to_complex()))
    }

    fn approx_eq(&self, a: &MobiusPoint, b: &MobiusPoint) -> bool {
        let diff = (a.to_complex() - b.to_complex()).norm();
        within_tolerance(diff, a.modulus().max(b.modulus()), self.tolerance)
    }

    fn tolerance(&self) -> Option<f64> {
        Some(self.tolerance)
    }

    fn check_domain(&self, a: &MobiusPoint) -> Result<()> {
        a.validate()
    }

    fn elements(&self) -> Option<Vec<MobiusPoint>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> MobiusPoint {
        let r = self.sample_radius * rng.gen::<f64>().sqrt();
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        MobiusPoint::raw(Complex64::from_polar(r, theta))
    }

    fn probe_triples(&self) -> Vec<[MobiusPoint; 3]> {
        vec![[
            MobiusPoint { re: 0.5, im: 0.0 },
            MobiusPoint { re: 0.0, im: 0.5 },
            MobiusPoint { re: -0.5, im: 0.0 },
        ]]
    }
}
