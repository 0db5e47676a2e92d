use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::quantum::{state_from_direction, SpinState, UnitVector3};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix: projectors, rotations, spin observables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator2 {
    m: [[Complex64; 2]; 2],
}

impl Operator2 {
    pub fn new(rows: [[Complex64; 2]; 2]) -> Self {
        Operator2 { m: rows }
    }

    pub fn identity() -> Self {
        Operator2 {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Self {
        Operator2 {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Raw amplitudes of `self` applied to `s`; not renormalized, so it is
    /// meaningful for non-unitary operators too.
    pub fn apply(&self, s: &SpinState) -> (Complex64, Complex64) {
        (
            self.m[0][0] * s.alpha() + self.m[0][1] * s.beta(),
            self.m[1][0] * s.alpha() + self.m[1][1] * s.beta(),
        )
    }

    /// ⟨s| self |s⟩.
    pub fn expectation(&self, s: &SpinState) -> Complex64 {
        let (a, b) = self.apply(s);
        s.alpha().conj() * a + s.beta().conj() * b
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    /// P² = P and P† = P.
    pub fn is_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && (*self * *self).max_abs_diff(self) <= tol
    }
}

impl Add for Operator2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut m = self.m;
        for (row, rhs_row) in m.iter_mut().zip(rhs.m.iter()) {
            for (cell, other) in row.iter_mut().zip(rhs_row.iter()) {
                *cell += *other;
            }
        }
        Operator2 { m }
    }
}

impl Sub for Operator2 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut m = self.m;
        for (row, rhs_row) in m.iter_mut().zip(rhs.m.iter()) {
            for (cell, other) in row.iter_mut().zip(rhs_row.iter()) {
                *cell -= *other;
            }
        }
        Operator2 { m }
    }
}

impl Neg for Operator2 {
    type Output = Self;

    fn neg(self) -> Self {
        self * Complex64::new(-1.0, 0.0)
    }
}

impl Mul for Operator2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        Operator2 { m }
    }
}

impl Mul<Complex64> for Operator2 {
    type Output = Self;

    fn mul(self, rhs: Complex64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for cell in row {
                *cell *= rhs;
            }
        }
        Operator2 { m }
    }
}

/// The ±1-eigenvalue spin observable along `n`: `n̂·σ` with the standard
/// 2×2 spin matrices (ħ = 1 scaling).
pub fn spin_observable(n: UnitVector3) -> Operator2 {
    Operator2::new([
        [
            Complex64::new(n.z(), 0.0),
            Complex64::new(n.x(), -n.y()),
        ],
        [
            Complex64::new(n.x(), n.y()),
            Complex64::new(-n.z(), 0.0),
        ],
    ])
}

/// The projector `P_û = |+⟩_û ⟨+|_û` onto the states with spin up along `u`.
pub fn projector(u: UnitVector3) -> Operator2 {
    let s = state_from_direction(u);
    let (a, b) = (s.alpha(), s.beta());
    Operator2::new([
        [a * a.conj(), a * b.conj()],
        [b * a.conj(), b * b.conj()],
    ])
}

/// The rotation operator `R_n̂(γ) = cos(γ/2) 𝕀 - i sin(γ/2) (n̂·σ)`.
///
/// Rotating by 2π returns -𝕀 (the spinor sign flip), which is the same ray
/// as 𝕀.
pub fn rotation_operator(n: UnitVector3, gamma: f64) -> Operator2 {
    let c = Complex64::new((0.5 * gamma).cos(), 0.0);
    let s = Complex64::new(0.0, -(0.5 * gamma).sin());
    Operator2::identity() * c + spin_observable(n) * s
}

/// The rotation carrying `|+⟩_û` onto the ray of `|+⟩_v̂`: the axis is the
/// unit vector along û×v̂ and the angle is the one between `u` and `v`.
///
/// Degenerate pairs are handled deterministically: `v = u` yields 𝕀, and
/// `v = -u` rotates by π about the canonical perpendicular of `u` (any
/// orthogonal axis lands on the same ray).
pub fn rotation_aligning(u: UnitVector3, v: UnitVector3) -> Operator2 {
    let cos_gamma = u.dot(v).clamp(-1.0, 1.0);
    if cos_gamma >= 1.0 - 1e-12 {
        return Operator2::identity();
    }
    if cos_gamma <= -1.0 + 1e-12 {
        return rotation_operator(u.canonical_perpendicular(), std::f64::consts::PI);
    }
    let [x, y, z] = u.cross(v);
    let axis = UnitVector3::normalized(x, y, z).expect("non-parallel pair has an axis");
    rotation_operator(axis, cos_gamma.acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::DERIVED_TOL;
    use crate::rng;
    use std::f64::consts::TAU;

    #[test]
    fn projector_along_the_axes() {
        let pz = projector(UnitVector3::Z);
        let expected = Operator2::new([[ONE, ZERO], [ZERO, ZERO]]);
        assert!(pz.max_abs_diff(&expected) < 1e-15);

        let pmz = projector(-UnitVector3::Z);
        let expected = Operator2::new([[ZERO, ZERO], [ZERO, ONE]]);
        assert!(pmz.max_abs_diff(&expected) < 1e-15);

        let px = projector(UnitVector3::X);
        let h = Complex64::new(0.5, 0.0);
        let expected = Operator2::new([[h, h], [h, h]]);
        assert!(px.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn projectors_are_rank_one_and_complete() {
        let mut r = rng::master(11);
        for _ in 0..200 {
            let u = UnitVector3::random(&mut r);
            let p = projector(u);
            assert!(p.is_projector(DERIVED_TOL));
            assert!((p.trace() - ONE).norm() < DERIVED_TOL);
            let completeness = p + projector(-u);
            assert!(completeness.max_abs_diff(&Operator2::identity()) < DERIVED_TOL);
        }
    }

    #[test]
    fn rotation_limits() {
        let n = UnitVector3::Y;
        assert!(rotation_operator(n, 0.0).max_abs_diff(&Operator2::identity()) < 1e-15);
        // Full turn: the spinor picks up a sign.
        let full = rotation_operator(n, TAU);
        assert!(full.max_abs_diff(&-Operator2::identity()) < 1e-12);
        let s = SpinState::up();
        let (a, b) = full.apply(&s);
        assert!(SpinState::new(a, b).unwrap().ray_eq(&s));
    }

    #[test]
    fn rotations_are_unitary() {
        let mut r = rng::master(13);
        for _ in 0..200 {
            let n = UnitVector3::random(&mut r);
            let gamma: f64 = rand::Rng::random_range(&mut r, 0.0..TAU);
            assert!(rotation_operator(n, gamma).is_unitary(DERIVED_TOL));
        }
    }

    #[test]
    fn aligning_rotation_maps_plus_u_to_plus_v() {
        let u = UnitVector3::Z;
        let v = UnitVector3::X;
        let rot = rotation_aligning(u, v);
        let (a, b) = rot.apply(&state_from_direction(u));
        let rotated = SpinState::new(a, b).unwrap();
        assert!(rotated.ray_eq(&state_from_direction(v)));

        // Degenerate pairs.
        assert!(rotation_aligning(u, u).max_abs_diff(&Operator2::identity()) < 1e-15);
        let flip = rotation_aligning(u, -u);
        let (a, b) = flip.apply(&state_from_direction(u));
        let flipped = SpinState::new(a, b).unwrap();
        assert!(flipped.ray_eq(&state_from_direction(-u)));
    }

    #[test]
    fn spin_observable_matches_the_component_action() {
        // S_x̂ |±⟩_ẑ = (ħ/2) |∓⟩_ẑ and S_ŷ |±⟩_ẑ = ±i (ħ/2) |∓⟩_ẑ, stated here
        // for the rescaled ±1-eigenvalue observables (ħ/2 → 1).
        let sx = spin_observable(UnitVector3::X);
        let (a, b) = sx.apply(&SpinState::up());
        assert!((a - ZERO).norm() < 1e-15 && (b - ONE).norm() < 1e-15);

        let sy = spin_observable(UnitVector3::Y);
        let (a, b) = sy.apply(&SpinState::up());
        assert!((a - ZERO).norm() < 1e-15 && (b - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let (a, b) = sy.apply(&SpinState::down());
        assert!((a - Complex64::new(0.0, -1.0)).norm() < 1e-15 && (b - ZERO).norm() < 1e-15);
    }

    #[test]
    fn spin_commutator_identity() {
        // [S_x̂, S_ŷ] = i ħ S_ẑ with S = (ħ/2) σ; at ħ = 1 this is the matrix
        // identity [σx/2, σy/2] = i σz/2.
        let half = Complex64::new(0.5, 0.0);
        let sx = spin_observable(UnitVector3::X) * half;
        let sy = spin_observable(UnitVector3::Y) * half;
        let sz = spin_observable(UnitVector3::Z) * half;
        let commutator = sx * sy - sy * sx;
        assert!(commutator.max_abs_diff(&(sz * Complex64::new(0.0, 1.0))) < 1e-15);
    }

    #[test]
    fn orthogonal_spin_component_has_zero_expectation() {
        let mut r = rng::master(17);
        for _ in 0..200 {
            let u = UnitVector3::random(&mut r);
            let n = u.canonical_perpendicular();
            let e = spin_observable(n).expectation(&state_from_direction(u));
            assert!(e.norm() < 1e-12);
        }
    }
}
