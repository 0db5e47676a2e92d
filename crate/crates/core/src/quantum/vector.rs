use std::ops::Neg;

use rand::Rng;

use crate::error::{Error, Result};
use crate::quantum::CONSTRUCTION_TOL;

/// A point on the unit sphere: a measurement direction, a particle position,
/// or the Bloch image of a spin state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVector3 = UnitVector3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVector3 = UnitVector3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Builds a unit vector; `x² + y² + z²` must equal 1 within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidDirection(format!(
                "({x}, {y}, {z}) has squared norm {n2}, expected 1"
            )));
        }
        Ok(UnitVector3 { x, y, z })
    }

    /// Projects an arbitrary non-zero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n < 1e-12 {
            return Err(Error::InvalidDirection(format!(
                "({x}, {y}, {z}) has no direction"
            )));
        }
        Ok(UnitVector3 {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Direction at polar angle `theta` from ẑ in the x–z plane. Convenient
    /// for sweeps where only the angle to the measurement axis matters.
    pub fn polar_xz(theta: f64) -> Self {
        UnitVector3 {
            x: theta.sin(),
            y: 0.0,
            z: theta.cos(),
        }
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn z(self) -> f64 {
        self.z
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }

    /// Angle between the two directions, in [0, π].
    pub fn angle_to(self, other: Self) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }

    /// Euclidean distance; handy for closeness assertions.
    pub fn distance(self, other: Self) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Uniformly distributed direction (area measure on the sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        UnitVector3 {
            x: r * phi.cos(),
            y: r * phi.sin(),
            z,
        }
    }

    /// The lexicographically smallest unit vector orthogonal to `self`:
    /// the one minimizing the x component, then the y component. Used as the
    /// deterministic rotation axis for antipodal state pairs.
    pub fn canonical_perpendicular(self) -> Self {
        for e in [Self::X, Self::Y] {
            let proj = self.dot(e);
            let rx = e.x - proj * self.x;
            let ry = e.y - proj * self.y;
            let rz = e.z - proj * self.z;
            let n2 = rx * rx + ry * ry + rz * rz;
            if n2 > 1e-12 {
                let n = n2.sqrt();
                return UnitVector3 {
                    x: -rx / n,
                    y: -ry / n,
                    z: -rz / n,
                };
            }
        }
        // self was (±1, 0, 0) within tolerance; -ŷ minimizes (x, y).
        -Self::Y
    }
}

impl Neg for UnitVector3 {
    type Output = Self;

    fn neg(self) -> Self {
        UnitVector3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}
