//! Minkowski 2+1 geometry, the null cone, spinors, and the double cover.
//!
//! The bridge between the vector and matrix pictures is the linear bijection
//! `b(x) = [[x0−x1, x2], [x2, x0+x1]]` from vectors to symmetric 2×2 matrices,
//! under which `det(b(x))` is the Minkowski norm and the congruence action
//! `gᵀ b(x) g` of SL(2,R) realizes a Lorentz transformation `x ↦ xΛ` — the
//! two-to-one cover γ: SL(2,R) → SO(2,1) with kernel {±I}.
//!
//! Points of the projective future null cone (a circle) are carried in the
//! angle chart θ ∈ [0, 2π) and exposed in three other views: the projective
//! coordinate ρ = cot(θ/2) (with θ = 0 ↦ ρ = ∞ as an explicit tagged value),
//! the unit vector m = (sin θ, cos θ), and the unit half-spinor
//! (cos θ/2, sin θ/2) whose sign ambiguity is fixed by θ/2 ∈ [0, π). All
//! ρ-chart computations route through the spinor chart, which has no
//! singularity at infinity.

use crate::{defaults, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A 2+1 Minkowski vector with signature (+, −, −).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x0: 0.0,
        x1: 0.0,
        x2: 0.0,
    };

    pub fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Vec3 { x0, x1, x2 }
    }

    /// Minkowski inner product x·y = x⁰y⁰ − x¹y¹ − x²y².
    pub fn minkowski_inner(&self, other: &Vec3) -> f64 {
        self.x0 * other.x0 - self.x1 * other.x1 - self.x2 * other.x2
    }

    /// Minkowski norm x·x. Every norm in the crate goes through this routine.
    pub fn minkowski_norm(&self) -> f64 {
        self.minkowski_inner(self)
    }

    /// True iff |x·x| ≤ tol and x⁰ > 0 (a future-pointing null vector).
    pub fn is_future_null(&self, tol: f64) -> bool {
        self.minkowski_norm().abs() <= tol && self.x0 > 0.0
    }

    pub fn scale(&self, t: f64) -> Vec3 {
        Vec3::new(t * self.x0, t * self.x1, t * self.x2)
    }

    /// Row-vector action x ↦ xΛ.
    pub fn act(&self, lambda: &Mat3) -> Vec3 {
        let x = [self.x0, self.x1, self.x2];
        let mut out = [0.0; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = x[0] * lambda[0][j] + x[1] * lambda[1][j] + x[2] * lambda[2][j];
        }
        Vec3::new(out[0], out[1], out[2])
    }
}

/// A real symmetric 2×2 matrix; only the three independent entries are stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymMat2 {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl SymMat2 {
    pub fn new(m11: f64, m12: f64, m22: f64) -> Self {
        SymMat2 { m11, m12, m22 }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    /// Congruence gᵀ M g by a 2×2 matrix g = [[a,b],[c,d]].
    pub fn congruence(&self, g: &crate::group_action::GroupElement) -> SymMat2 {
        let (a, b, c, d) = (g.a, g.b, g.c, g.d);
        SymMat2 {
            m11: a * a * self.m11 + 2.0 * a * c * self.m12 + c * c * self.m22,
            m12: a * b * self.m11 + (a * d + b * c) * self.m12 + c * d * self.m22,
            m22: b * b * self.m11 + 2.0 * b * d * self.m12 + d * d * self.m22,
        }
    }

    pub fn max_abs_diff(&self, other: &SymMat2) -> f64 {
        (self.m11 - other.m11)
            .abs()
            .max((self.m12 - other.m12).abs())
            .max((self.m22 - other.m22).abs())
    }
}

/// The matrix model of a vector: b(x) = [[x0−x1, x2], [x2, x0+x1]].
pub fn b_map(x: &Vec3) -> SymMat2 {
    SymMat2 {
        m11: x.x0 - x.x1,
        m12: x.x2,
        m22: x.x0 + x.x1,
    }
}

/// The inverse of [`b_map`]: ((m11+m22)/2, (m22−m11)/2, m12).
pub fn b_inverse(m: &SymMat2) -> Vec3 {
    Vec3 {
        x0: 0.5 * (m.m11 + m.m22),
        x1: 0.5 * (m.m22 - m.m11),
        x2: m.m12,
    }
}

/// A real row 2-spinor σ = (s1, s2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Spinor {
    pub s1: f64,
    pub s2: f64,
}

impl Spinor {
    pub fn new(s1: f64, s2: f64) -> Self {
        Spinor { s1, s2 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.s1 * self.s1 + self.s2 * self.s2
    }

    /// Row-vector right action σ ↦ σg.
    pub fn act(&self, g: &crate::group_action::GroupElement) -> Spinor {
        Spinor {
            s1: self.s1 * g.a + self.s2 * g.c,
            s2: self.s1 * g.b + self.s2 * g.d,
        }
    }

    pub fn neg(&self) -> Spinor {
        Spinor::new(-self.s1, -self.s2)
    }
}

/// The rank-one projection π(σ) = σᵀσ onto spin space modulo sign.
///
/// The result has trace |σ|² > 0 and determinant 0, so its [`b_inverse`] is a
/// future null vector; π(−σ) = π(σ).
pub fn spinor_project(sigma: &Spinor) -> Result<SymMat2> {
    spinor_project_tol(sigma, defaults::TOL_ZERO)
}

/// [`spinor_project`] with an explicit zero tolerance on |σ|.
pub fn spinor_project_tol(sigma: &Spinor, tol_zero: f64) -> Result<SymMat2> {
    if sigma.norm_sq() <= tol_zero * tol_zero {
        return Err(Error::ZeroSpinor { tol: tol_zero });
    }
    Ok(SymMat2 {
        m11: sigma.s1 * sigma.s1,
        m12: sigma.s1 * sigma.s2,
        m22: sigma.s2 * sigma.s2,
    })
}

/// A plain 3×3 real matrix in row-major order, acting on row vectors.
pub type Mat3 = [[f64; 3]; 3];

pub const MAT3_IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// The Minkowski metric η = diag(1, −1, −1).
pub const MINKOWSKI_METRIC: Mat3 = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];

pub fn mat3_mul(p: &Mat3, q: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j] + p[i][2] * q[2][j];
        }
    }
    out
}

pub fn mat3_transpose(p: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = p[j][i];
        }
    }
    out
}

/// Frobenius distance between two 3×3 matrices.
pub fn mat3_dist(p: &Mat3, q: &Mat3) -> f64 {
    let mut sum = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let d = p[i][j] - q[i][j];
            sum += d * d;
        }
    }
    sum.sqrt()
}

/// The covering homomorphism γ: SL(2,R) → SO(2,1).
///
/// Row i of Λ is `b_inverse(gᵀ · b(e_i) · g)`, so that
/// `b_inverse(gᵀ b(x) g) = xΛ` for every x. γ(−g) = γ(g), and Λ preserves the
/// Minkowski form.
pub fn gamma_of(g: &crate::group_action::GroupElement) -> Result<Mat3> {
    gamma_of_tol(g, defaults::TOL_DET)
}

/// [`gamma_of`] with an explicit determinant tolerance.
pub fn gamma_of_tol(g: &crate::group_action::GroupElement, tol_det: f64) -> Result<Mat3> {
    let det = g.det();
    if (det - 1.0).abs() > tol_det {
        return Err(Error::Determinant { det, tol: tol_det });
    }
    let basis = [
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let mut lambda = [[0.0; 3]; 3];
    for (i, e) in basis.iter().enumerate() {
        let row = b_inverse(&b_map(e).congruence(g));
        lambda[i] = [row.x0, row.x1, row.x2];
    }
    Ok(lambda)
}

/// The projective coordinate ρ = cot(θ/2), with the point at infinity (θ = 0)
/// carried as an explicit tag rather than a float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rho {
    Finite(f64),
    Infinity,
}

/// Chart selector for [`chart_convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartTag {
    Theta,
    Rho,
    M,
    HalfSpinor,
}

/// A chart value returned by [`chart_convert`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartValue {
    Theta(f64),
    Rho(Rho),
    /// The unit vector m = (sin θ, cos θ).
    M([f64; 2]),
    HalfSpinor(Spinor),
}

/// A point of the projective future null cone P(N⁺), stored in the angle chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    /// Construct from an angle; any real input is normalized into [0, 2π).
    pub fn from_theta(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid can round up to 2π for tiny negative inputs.
        if t >= TAU {
            t = 0.0;
        }
        CirclePoint { theta: t }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The projective coordinate ρ = cot(θ/2); θ = 0 is the point at infinity.
    pub fn rho(&self) -> Rho {
        if self.theta == 0.0 {
            Rho::Infinity
        } else {
            let h = 0.5 * self.theta;
            Rho::Finite(h.cos() / h.sin())
        }
    }

    /// The unit-vector view m = (sin θ, cos θ).
    pub fn m(&self) -> [f64; 2] {
        [self.theta.sin(), self.theta.cos()]
    }

    /// The canonical unit half-spinor (cos θ/2, sin θ/2), θ/2 ∈ [0, π).
    pub fn half_spinor(&self) -> Spinor {
        let h = 0.5 * self.theta;
        Spinor::new(h.cos(), h.sin())
    }

    /// Construct from a projective coordinate.
    pub fn from_rho(rho: Rho) -> Self {
        match rho {
            Rho::Infinity => CirclePoint { theta: 0.0 },
            // ρ = cot(θ/2) with θ/2 ∈ (0, π) inverts to θ = 2·atan2(1, ρ).
            Rho::Finite(r) => CirclePoint::from_theta(2.0 * 1.0_f64.atan2(r)),
        }
    }

    /// Construct from the unit-vector view.
    pub fn from_m(m: [f64; 2]) -> Self {
        CirclePoint::from_theta(m[0].atan2(m[1]))
    }

    /// Construct from any nonzero spinor: normalize, reduce modulo sign to the
    /// representative with θ/2 ∈ [0, π), and read the angle.
    pub fn from_spinor(sigma: &Spinor) -> Result<Self> {
        if sigma.norm_sq() <= defaults::TOL_ZERO * defaults::TOL_ZERO {
            return Err(Error::ZeroSpinor {
                tol: defaults::TOL_ZERO,
            });
        }
        let s = if sigma.s2 < 0.0 || (sigma.s2 == 0.0 && sigma.s1 < 0.0) {
            sigma.neg()
        } else {
            *sigma
        };
        Ok(CirclePoint::from_theta(2.0 * s.s2.atan2(s.s1)))
    }

    /// Construct from a future null vector, with tolerance `tol` on |x·x|
    /// relative to the squared scale of x.
    ///
    /// Uses b(x) = σᵀσ: the larger diagonal entry is square-rooted and the
    /// other spinor component recovered from the off-diagonal product, which
    /// stays accurate near both chart poles.
    pub fn from_null(x: &Vec3, tol: f64) -> Result<Self> {
        let scale = x.x0 * x.x0 + x.x1 * x.x1 + x.x2 * x.x2;
        let norm = x.minkowski_norm();
        if norm.abs() > tol * scale.max(1.0) || x.x0 <= 0.0 {
            return Err(Error::NotNull { norm, x0: x.x0 });
        }
        let m = b_map(x);
        let sigma = if m.m22 >= m.m11 {
            let s2 = m.m22.max(0.0).sqrt();
            Spinor::new(if s2 > 0.0 { m.m12 / s2 } else { 0.0 }, s2)
        } else {
            let s1 = m.m11.max(0.0).sqrt();
            Spinor::new(s1, if s1 > 0.0 { m.m12 / s1 } else { 0.0 })
        };
        CirclePoint::from_spinor(&sigma)
    }

    /// Distance on the circle (shorter arc between the two angles).
    pub fn arc_dist(&self, other: &CirclePoint) -> f64 {
        let d = (self.theta - other.theta).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// Convert a circle point into any chart view.
pub fn chart_convert(p: &CirclePoint, target: ChartTag) -> ChartValue {
    match target {
        ChartTag::Theta => ChartValue::Theta(p.theta()),
        ChartTag::Rho => ChartValue::Rho(p.rho()),
        ChartTag::M => ChartValue::M(p.m()),
        ChartTag::HalfSpinor => ChartValue::HalfSpinor(p.half_spinor()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::GroupElement;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn b_map_golden_values() {
        // Unit time vector, zero, and a null vector with its determinant.
        assert_eq!(
            b_map(&Vec3::new(1.0, 0.0, 0.0)),
            SymMat2::new(1.0, 0.0, 1.0)
        );
        assert_eq!(b_map(&Vec3::ZERO), SymMat2::new(0.0, 0.0, 0.0));
        let null = b_map(&Vec3::new(1.0, 1.0, 0.0));
        assert_eq!(null, SymMat2::new(0.0, 0.0, 2.0));
        assert_eq!(null.det(), 0.0);
    }

    #[test]
    fn b_inverse_golden_values() {
        assert_eq!(
            b_inverse(&SymMat2::new(1.0, 0.0, 1.0)),
            Vec3::new(1.0, 0.0, 0.0)
        );
        assert_eq!(
            b_inverse(&SymMat2::new(0.0, 0.0, 2.0)),
            Vec3::new(1.0, 1.0, 0.0)
        );
    }

    #[test]
    fn spinor_project_golden_values() {
        let p = spinor_project(&Spinor::new(1.0, 0.0)).unwrap();
        assert_eq!(p, SymMat2::new(1.0, 0.0, 0.0));
        let pm = spinor_project(&Spinor::new(-1.0, 0.0)).unwrap();
        assert_eq!(pm, p);

        // (1,1) projects onto the null vector (1, 0, 1).
        let q = spinor_project(&Spinor::new(1.0, 1.0)).unwrap();
        assert_eq!(q, SymMat2::new(1.0, 1.0, 1.0));
        let x = b_inverse(&q);
        assert_eq!(x, Vec3::new(1.0, 0.0, 1.0));
        assert!(x.is_future_null(1e-15));

        assert!(matches!(
            spinor_project(&Spinor::new(0.0, 0.0)),
            Err(Error::ZeroSpinor { .. })
        ));
    }

    #[test]
    fn gamma_rejects_non_unimodular() {
        let g = GroupElement::new_unchecked(2.0, 0.0, 0.0, 1.0);
        assert!(matches!(gamma_of(&g), Err(Error::Determinant { .. })));
    }

    #[test]
    fn gamma_identity_and_kernel() {
        let id = gamma_of(&GroupElement::IDENTITY).unwrap();
        assert_eq!(id, MAT3_IDENTITY);
        let neg = gamma_of(&GroupElement::new_unchecked(-1.0, 0.0, 0.0, -1.0)).unwrap();
        assert_eq!(neg, MAT3_IDENTITY);
    }

    /// Golden orientation of the double cover on rotations: γ(R(φ)) fixes x⁰
    /// and rotates the (x¹,x²) plane by 2φ, with x′¹ = x¹cos2φ − x²sin2φ and
    /// x′² = x¹sin2φ + x²cos2φ under the row action x ↦ xΛ.
    #[test]
    fn gamma_rotation_golden_orientation() {
        let phi = 0.3_f64;
        let lambda = gamma_of(&GroupElement::rotation(phi)).unwrap();
        let (c2, s2) = ((2.0 * phi).cos(), (2.0 * phi).sin());
        let expected: Mat3 = [[1.0, 0.0, 0.0], [0.0, c2, s2], [0.0, -s2, c2]];
        assert!(mat3_dist(&lambda, &expected) < 1e-14);
    }

    #[test]
    fn chart_golden_values() {
        assert_eq!(
            CirclePoint::from_theta(PI).rho(),
            Rho::Finite(std::f64::consts::FRAC_PI_2.cos() / std::f64::consts::FRAC_PI_2.sin())
        );
        match CirclePoint::from_theta(PI).rho() {
            Rho::Finite(r) => assert_abs_diff_eq!(r, 0.0, epsilon = 1e-15),
            Rho::Infinity => panic!("θ = π is finite in the ρ chart"),
        }
        match CirclePoint::from_theta(PI / 2.0).rho() {
            Rho::Finite(r) => assert_abs_diff_eq!(r, 1.0, epsilon = 1e-15),
            Rho::Infinity => panic!("θ = π/2 is finite in the ρ chart"),
        }
        assert_eq!(CirclePoint::from_theta(0.0).rho(), Rho::Infinity);
        assert_eq!(
            CirclePoint::from_rho(Rho::Infinity),
            CirclePoint::from_theta(0.0)
        );
    }

    #[test]
    fn from_null_recovers_boundary_points() {
        // θ = 0 corresponds to the ray of (1, −1, 0): x0 + x1 = 0.
        let p = CirclePoint::from_null(&Vec3::new(1.0, -1.0, 0.0), 1e-12).unwrap();
        assert_eq!(p.theta(), 0.0);
        // θ = π corresponds to (1, 1, 0).
        let q = CirclePoint::from_null(&Vec3::new(1.0, 1.0, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(q.theta(), PI, epsilon = 1e-15);
        // Timelike and past-null vectors are rejected.
        assert!(CirclePoint::from_null(&Vec3::new(1.0, 0.0, 0.0), 1e-12).is_err());
        assert!(CirclePoint::from_null(&Vec3::new(-1.0, 1.0, 0.0), 1e-12).is_err());
    }

    /// The null vector attached to θ via the half-spinor is (1, −cos θ, sin θ)
    /// on the x⁰ = 1 section; from_null must invert that correspondence.
    #[test]
    fn null_vector_angle_correspondence() {
        for k in 0..16 {
            let theta = TAU * (k as f64) / 16.0;
            let x = Vec3::new(1.0, -theta.cos(), theta.sin());
            let p = CirclePoint::from_null(&x, 1e-12).unwrap();
            assert!(
                p.arc_dist(&CirclePoint::from_theta(theta)) < 1e-12,
                "θ = {theta}"
            );
        }
    }

    proptest! {
        #[test]
        fn b_round_trip(x0 in -10.0..10.0f64, x1 in -10.0..10.0f64, x2 in -10.0..10.0f64) {
            let x = Vec3::new(x0, x1, x2);
            let back = b_inverse(&b_map(&x));
            prop_assert!((back.x0 - x.x0).abs() <= 1e-14 * (1.0 + x0.abs()));
            prop_assert!((back.x1 - x.x1).abs() <= 1e-14 * (1.0 + x1.abs()));
            prop_assert!((back.x2 - x.x2).abs() <= 1e-14 * (1.0 + x2.abs()));
        }

        #[test]
        fn det_of_b_is_minkowski_norm(x0 in -10.0..10.0f64, x1 in -10.0..10.0f64, x2 in -10.0..10.0f64) {
            let x = Vec3::new(x0, x1, x2);
            let scale = x0 * x0 + x1 * x1 + x2 * x2;
            prop_assert!((b_map(&x).det() - x.minkowski_norm()).abs() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn theta_rho_round_trip(theta in 1e-6..(TAU - 1e-6)) {
            let p = CirclePoint::from_theta(theta);
            let back = CirclePoint::from_rho(p.rho());
            prop_assert!(p.arc_dist(&back) < 1e-12);
        }

        #[test]
        fn theta_m_round_trip(theta in 0.0..TAU) {
            let p = CirclePoint::from_theta(theta);
            let back = CirclePoint::from_m(p.m());
            prop_assert!(p.arc_dist(&back) < 1e-12);
        }

        #[test]
        fn theta_spinor_round_trip(theta in 0.0..TAU) {
            let p = CirclePoint::from_theta(theta);
            let back = CirclePoint::from_spinor(&p.half_spinor()).unwrap();
            prop_assert!(p.arc_dist(&back) < 1e-12);
            // The sign-flipped spinor lands on the same point.
            let flipped = CirclePoint::from_spinor(&p.half_spinor().neg()).unwrap();
            prop_assert!(p.arc_dist(&flipped) < 1e-12);
        }

        #[test]
        fn half_spinor_is_canonical(theta in 0.0..TAU) {
            let s = CirclePoint::from_theta(theta).half_spinor();
            prop_assert!(s.s2 >= 0.0);
            prop_assert!((s.norm_sq() - 1.0).abs() < 1e-14);
        }
    }
}
