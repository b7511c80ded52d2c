//! Supertranslations as truncated Fourier series on the circle.
//!
//! The supertranslation space 𝒜 (and, through the Riesz identification, its
//! dual 𝒜′ of supermomenta) is modelled by real trigonometric polynomials
//!
//! ```text
//! α(θ) = c0·e0 + Σ_{n=1..N} (c_n·e_n + s_n·ε_n),
//! e0 = 1/√(2π),  e_n = cos(nθ)/√π,  ε_n = sin(nθ)/√π,
//! ```
//!
//! an orthonormal family with respect to ∫…dθ, which is the inner product
//! used throughout (the normalized measure dλ = dθ/2π appears only inside
//! measure-ratio formulas, where the constant cancels). The degree ≤ 1 slice
//! is the translation subspace 𝒯; its orthogonal complement 𝒮 holds the
//! proper supertranslations.

use crate::geometry::{CirclePoint, Spinor, Vec3};
use crate::{defaults, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// 1/√(2π), the constant basis function e0.
pub const E0: f64 = 0.398_942_280_401_432_7;
/// 1/√π, the amplitude of the e_n and ε_n basis functions.
pub const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Selector for the translation / proper-supertranslation split 𝒜 = 𝒯 ⊕ 𝒮.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubspaceTag {
    /// Harmonics 0 and 1 — the three-dimensional translation subspace 𝒯.
    Translation,
    /// Harmonics ≥ 2 — the proper supertranslations 𝒮.
    ProperSupertranslation,
}

/// A real truncated Fourier series of order N: cos coefficients c0…cN and sin
/// coefficients s1…sN against the orthonormal basis above.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct FourierSeries {
    #[serde(rename = "n")]
    order: usize,
    #[serde(rename = "cos")]
    cos: Vec<f64>,
    #[serde(rename = "sin")]
    sin: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    n: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TryFrom<RawSeries> for FourierSeries {
    type Error = String;

    fn try_from(raw: RawSeries) -> std::result::Result<Self, String> {
        if raw.cos.len() != raw.n + 1 {
            return Err(format!(
                "cos coefficient array must have length n+1 = {}, got {}",
                raw.n + 1,
                raw.cos.len()
            ));
        }
        if raw.sin.len() != raw.n {
            return Err(format!(
                "sin coefficient array must have length n = {}, got {}",
                raw.n,
                raw.sin.len()
            ));
        }
        if raw.cos.iter().chain(raw.sin.iter()).any(|v| !v.is_finite()) {
            return Err("coefficients must be finite".to_string());
        }
        Ok(FourierSeries {
            order: raw.n,
            cos: raw.cos,
            sin: raw.sin,
        })
    }
}

impl FourierSeries {
    /// The zero series of the given truncation order.
    pub fn zeros(order: usize) -> Self {
        FourierSeries {
            order,
            cos: vec![0.0; order + 1],
            sin: vec![0.0; order],
        }
    }

    /// Build from coefficient arrays; `cos` has length N+1 and `sin` length N.
    pub fn from_coefficients(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.is_empty() || sin.len() + 1 != cos.len() {
            return Err(Error::BadOrder {
                n: cos.len() as u32,
                reason: "need cos length N+1 and sin length N",
            });
        }
        if cos.iter().chain(sin.iter()).any(|v| !v.is_finite()) {
            return Err(Error::BadOrder {
                n: cos.len() as u32,
                reason: "coefficients must be finite",
            });
        }
        Ok(FourierSeries {
            order: cos.len() - 1,
            cos,
            sin,
        })
    }

    /// The basis function e_n (e0 for n = 0) at truncation order `order`.
    pub fn basis_e(order: usize, n: usize) -> Result<Self> {
        if n > order {
            return Err(Error::BadOrder {
                n: n as u32,
                reason: "harmonic exceeds truncation order",
            });
        }
        let mut s = FourierSeries::zeros(order);
        s.cos[n] = 1.0;
        Ok(s)
    }

    /// The basis function ε_n (1 ≤ n ≤ order).
    pub fn basis_eps(order: usize, n: usize) -> Result<Self> {
        if n == 0 || n > order {
            return Err(Error::BadOrder {
                n: n as u32,
                reason: "sine harmonic must satisfy 1 ≤ n ≤ order",
            });
        }
        let mut s = FourierSeries::zeros(order);
        s.sin[n - 1] = 1.0;
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of e_n (0 for harmonics beyond the truncation order).
    pub fn cos_coeff(&self, n: usize) -> f64 {
        self.cos.get(n).copied().unwrap_or(0.0)
    }

    /// Coefficient of ε_n (0 for n = 0 or beyond the truncation order).
    pub fn sin_coeff(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.sin.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    pub(crate) fn set_cos(&mut self, n: usize, value: f64) {
        self.cos[n] = value;
    }

    pub(crate) fn set_sin(&mut self, n: usize, value: f64) {
        self.sin[n - 1] = value;
    }

    /// Pointwise value of the series at a circle point.
    pub fn evaluate(&self, p: &CirclePoint) -> f64 {
        self.evaluate_theta(p.theta())
    }

    /// Pointwise value at angle θ, using the recurrence for cos nθ / sin nθ.
    pub fn evaluate_theta(&self, theta: f64) -> f64 {
        let mut sum = self.cos[0] * E0;
        let (sin1, cos1) = theta.sin_cos();
        // cos(nθ), sin(nθ) by the angle-addition recurrence.
        let (mut cos_n, mut sin_n) = (cos1, sin1);
        for n in 1..=self.order {
            sum += (self.cos[n] * cos_n + self.sin[n - 1] * sin_n) * INV_SQRT_PI;
            let next_cos = cos_n * cos1 - sin_n * sin1;
            let next_sin = sin_n * cos1 + cos_n * sin1;
            cos_n = next_cos;
            sin_n = next_sin;
        }
        sum
    }

    /// Coefficient-form inner product Σ c c′ + Σ s s′ (the ∫…dθ product, for
    /// which the basis is orthonormal). Differing orders are zero-padded.
    pub fn inner_product(&self, other: &FourierSeries) -> f64 {
        let n = self.order.min(other.order);
        let mut sum = 0.0;
        for k in 0..=n {
            sum += self.cos[k] * other.cos[k];
        }
        for k in 0..n {
            sum += self.sin[k] * other.sin[k];
        }
        sum
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner_product(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// Sum with zero-padding to the larger order.
    pub fn add(&self, other: &FourierSeries) -> FourierSeries {
        let order = self.order.max(other.order);
        let mut out = FourierSeries::zeros(order);
        for n in 0..=order {
            out.cos[n] = self.cos_coeff(n) + other.cos_coeff(n);
        }
        for n in 1..=order {
            out.sin[n - 1] = self.sin_coeff(n) + other.sin_coeff(n);
        }
        out
    }

    pub fn sub(&self, other: &FourierSeries) -> FourierSeries {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> FourierSeries {
        FourierSeries {
            order: self.order,
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|s| s * factor).collect(),
        }
    }

    /// Distance in the coefficient norm, zero-padded.
    pub fn distance(&self, other: &FourierSeries) -> f64 {
        self.sub(other).norm()
    }

    /// Re-truncate (or zero-extend) to a new order.
    pub fn truncate_to(&self, order: usize) -> FourierSeries {
        let mut out = FourierSeries::zeros(order);
        for n in 0..=order {
            out.cos[n] = self.cos_coeff(n);
        }
        for n in 1..=order {
            out.sin[n - 1] = self.sin_coeff(n);
        }
        out
    }

    /// The translation components (p0, p1, p2) of the expansion
    /// β(θ) = p0 + p1·cos θ + p2·sin θ + (higher harmonics).
    pub fn translation_components(&self) -> [f64; 3] {
        [
            self.cos_coeff(0) * E0,
            self.cos_coeff(1) * INV_SQRT_PI,
            self.sin_coeff(1) * INV_SQRT_PI,
        ]
    }
}

/// Uniform sample grid θ_j = 2πj/M, j = 0…M−1.
pub fn grid_theta(j: usize, points: usize) -> f64 {
    TAU * (j as f64) / (points as f64)
}

/// Orthogonal projection of uniform-grid samples onto the order-N basis by the
/// periodic trapezoid rule, which is exact for trigonometric polynomials of
/// degree ≤ N once M ≥ 2N + 2. Returns the series together with the RMS
/// residual of (input − reconstruction) on the grid — the aliasing report.
pub fn from_samples(values: &[f64], order: usize) -> Result<(FourierSeries, f64)> {
    let m = values.len();
    let min = 2 * order + 2;
    if m < min {
        return Err(Error::GridTooCoarse {
            points: m,
            order,
            min,
        });
    }
    let mf = m as f64;
    let mut series = FourierSeries::zeros(order);
    // c0 = (2π/M) Σ v_j e0; c_n = (2π/M) Σ v_j cos(nθ_j)/√π, similarly s_n.
    series.set_cos(0, values.iter().sum::<f64>() * TAU / mf * E0);
    for n in 1..=order {
        let mut cs = 0.0;
        let mut sn = 0.0;
        for (j, v) in values.iter().enumerate() {
            let (s, c) = (n as f64 * grid_theta(j, m)).sin_cos();
            cs += v * c;
            sn += v * s;
        }
        series.set_cos(n, cs * TAU / mf * INV_SQRT_PI);
        series.set_sin(n, sn * TAU / mf * INV_SQRT_PI);
    }
    let mut sq = 0.0;
    for (j, v) in values.iter().enumerate() {
        let r = v - series.evaluate_theta(grid_theta(j, m));
        sq += r * r;
    }
    Ok((series, (sq / mf).sqrt()))
}

/// Projection onto the translation subspace 𝒯 (harmonics 0, 1) or its
/// complement 𝒮; the two projections are orthogonal and sum to the identity.
pub fn project_subspace(alpha: &FourierSeries, tag: SubspaceTag) -> FourierSeries {
    let mut out = FourierSeries::zeros(alpha.order());
    match tag {
        SubspaceTag::Translation => {
            out.cos[0] = alpha.cos_coeff(0);
            if alpha.order() >= 1 {
                out.cos[1] = alpha.cos_coeff(1);
                out.sin[0] = alpha.sin_coeff(1);
            }
        }
        SubspaceTag::ProperSupertranslation => {
            for n in 2..=alpha.order() {
                out.cos[n] = alpha.cos_coeff(n);
                out.sin[n - 1] = alpha.sin_coeff(n);
            }
        }
    }
    out
}

/// Where to realize a series as a homogeneous function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealizationSite {
    /// On the future null cone: f(x) = √(x1² + x2²)·α(θ(x)), homogeneous of
    /// degree 1.
    NullCone(Vec3),
    /// On spin space: ψ(σ) = |σ|²·α(θ(σ)), homogeneous of degree 2 and even.
    SpinSpace(Spinor),
}

/// Realize a series as the homogeneous function attached to it on the null
/// cone or on spin space; both restrict to `evaluate` on the unit sections.
pub fn realize(alpha: &FourierSeries, site: &RealizationSite) -> Result<f64> {
    match site {
        RealizationSite::NullCone(x) => {
            let p = CirclePoint::from_null(x, 1e-9)?;
            Ok((x.x1 * x.x1 + x.x2 * x.x2).sqrt() * alpha.evaluate(&p))
        }
        RealizationSite::SpinSpace(sigma) => {
            let p = CirclePoint::from_spinor(sigma)?;
            Ok(sigma.norm_sq() * alpha.evaluate(&p))
        }
    }
}

/// The character χ_β(α) = exp(i·⟨β, α⟩) of the abelian supertranslation group,
/// with β acting as the Riesz representative of the linear functional.
pub fn character_eval(beta: &FourierSeries, alpha: &FourierSeries) -> Complex64 {
    Complex64::cis(beta.inner_product(alpha))
}
