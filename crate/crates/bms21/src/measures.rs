//! Invariant and quasi-invariant measures: the round measure λ on the circle
//! in both charts, its transformation under the Möbius action, quadrature
//! rules, and Monte-Carlo verification of the Haar measure on SL(2,R).
//!
//! λ is the normalized round measure dλ = dθ/2π. It is not Möbius-invariant;
//! its distortion is exactly the conformal factor: under θ′ = θg the angular
//! derivative is dθ′/dθ = 1/κ_g(θ), giving the substitution rule
//!
//! ```text
//! ∫ f(θg⁻¹)·κ_{g⁻¹}(θ)⁻¹ dλ(θ) = ∫ f dλ,
//! ```
//!
//! equivalently d(g_*λ)/dλ (ξ) = κ_{g⁻¹}(ξ)⁻¹ = κ_g(ξg⁻¹) for the pushforward
//! g_*λ. Rotations (κ ≡ 1) leave λ invariant.

use crate::exec;
use crate::geometry::{CirclePoint, Rho};
use crate::group_action::{kappa, GroupElement};
use crate::supertranslation::{grid_theta, FourierSeries};
use crate::{Error, Result};
use std::f64::consts::{PI, TAU};

/// Coordinate chart in which a density on the circle is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureChart {
    /// Angle chart θ ∈ [0, 2π).
    Theta,
    /// Cotangent chart ρ = cot(θ/2) ∈ R (θ = 0 sits at infinity).
    Rho,
}

/// Density of the round measure λ in the given chart: 1/(2π) w.r.t. dθ, or
/// 1/(π(1 + ρ²)) w.r.t. dρ. The point at infinity has no finite ρ-density.
pub fn lambda_weight(chart: MeasureChart, p: &CirclePoint) -> Result<f64> {
    match chart {
        MeasureChart::Theta => Ok(1.0 / TAU),
        MeasureChart::Rho => match p.rho() {
            Rho::Infinity => Err(Error::InfinitePoint),
            Rho::Finite(rho) => Ok(1.0 / (PI * (1.0 + rho * rho))),
        },
    }
}

/// The measure ratio dλ(p)/dλ(pg) = κ_g(p): how much λ-mass near p is
/// compressed (κ > 1) or stretched (κ < 1) when p is pushed to pg.
pub fn radon_nikodym(g: &GroupElement, p: &CirclePoint) -> f64 {
    kappa(g, p)
}

/// Haar density of SL(2,R) in the chart (a, b, c) with d = (1 + bc)/a:
/// dg = da db dc / |a|. Singular on the a = 0 slice.
pub fn haar_weight(a: f64, tol: f64) -> Result<f64> {
    if a.abs() <= tol {
        return Err(Error::ChartSingular {
            a_abs: a.abs(),
            tol,
        });
    }
    Ok(1.0 / a.abs())
}

/// ∫ f dλ by the periodic rectangle rule: (1/M)·Σ f(θ_j) on the uniform grid.
/// Exact for trigonometric polynomials of degree < M.
pub fn integrate_circle<F>(f: F, points: usize) -> f64
where
    F: Fn(&CirclePoint) -> f64 + Sync + Send,
{
    exec::sum_indexed(points, |j| f(&CirclePoint::from_theta(grid_theta(j, points))))
        / points as f64
}

/// ∫ f dθ = 2π·∫ f dλ.
pub fn integrate_theta<F>(f: F, points: usize) -> f64
where
    F: Fn(&CirclePoint) -> f64 + Sync + Send,
{
    TAU * integrate_circle(f, points)
}

/// ∫ f dλ evaluated in the cotangent chart: substituting ρ = tan(u) turns
/// ∫ f(ρ) dρ/(π(1+ρ²)) into (1/π)∫ f(tan u) du over u ∈ (−π/2, π/2), which
/// the midpoint rule handles without touching the singular endpoint.
pub fn integrate_rho_chart<F>(f: F, points: usize) -> f64
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let h = PI / points as f64;
    exec::sum_indexed(points, |j| {
        let u = -0.5 * PI + (j as f64 + 0.5) * h;
        f(u.tan())
    }) / points as f64
}

/// ‖T′(g)β‖² with respect to ∫…dθ, computed on the source side:
/// substituting θ′ = θg in ∫ κ_g(θ)⁻⁴ β(θg)² dθ collapses the weight to
/// κ_{g⁻¹}³, giving ∫ κ_{g⁻¹}(ξ)³ β(ξ)² dθ(ξ) — no composed evaluation, so
/// large boosts lose no accuracy to the moving sample points.
pub fn dual_norm_sq_kappa3(g: &GroupElement, beta: &FourierSeries, points: usize) -> f64 {
    let g_inv = g.inverse();
    integrate_theta(
        |p| {
            let k = kappa(&g_inv, p);
            let b = beta.evaluate(p);
            k * k * k * b * b
        },
        points,
    )
}

/// Axis-aligned sampling box in the (a, b, c) chart used for Monte-Carlo
/// integration against the Haar measure: a ∈ [0.1, 1.9], b, c ∈ [−1, 1].
pub const HAAR_BOX: [(f64, f64); 3] = [(0.1, 1.9), (-1.0, 1.0), (-1.0, 1.0)];

/// Volume of `HAAR_BOX`.
pub fn haar_box_volume() -> f64 {
    HAAR_BOX.iter().map(|(lo, hi)| hi - lo).product()
}

/// Smooth bump on the (a, b, c) chart, supported in the Euclidean ball of the
/// given radius around the identity (a, b, c) = (1, 0, 0); used as the test
/// integrand for Haar-invariance checks because every moderate translate of
/// its support stays inside `HAAR_BOX`.
pub fn haar_bump(g: &GroupElement, radius: f64) -> f64 {
    let da = g.a - 1.0;
    let r_sq = (da * da + g.b * g.b + g.c * g.c) / (radius * radius);
    if r_sq >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r_sq)).exp()
    }
}

/// Paired Monte-Carlo estimate of ∫ f(g) dg and ∫ f(τ(g)) dg over `HAAR_BOX`
/// with the Haar weight 1/|a|: same uniform draws feed both estimators, and
/// the standard error is computed on the per-sample differences, which is the
/// quantity an invariance check needs. Deterministic for a given seed and
/// independent of the parallel schedule. Returns (base, transformed,
/// se_of_difference).
pub fn haar_mc_pair<F, T>(f: F, transform: T, samples: usize, seed: u64) -> (f64, f64, f64)
where
    F: Fn(&GroupElement) -> f64 + Sync + Send,
    T: Fn(&GroupElement) -> GroupElement + Sync + Send,
{
    use rand::Rng;
    assert!(samples >= 2, "need at least two samples for a standard error");
    let vol = haar_box_volume();
    let terms = exec::map_indexed(samples, |j| {
        let mut rng = exec::stream_rng(seed, j as u64);
        let a = rng.gen_range(HAAR_BOX[0].0..HAAR_BOX[0].1);
        let b = rng.gen_range(HAAR_BOX[1].0..HAAR_BOX[1].1);
        let c = rng.gen_range(HAAR_BOX[2].0..HAAR_BOX[2].1);
        let d = (1.0 + b * c) / a;
        let g = GroupElement::new_unchecked(a, b, c, d);
        let w = vol / a.abs();
        (f(&g) * w, f(&transform(&g)) * w)
    });
    let n = samples as f64;
    let base = terms.iter().map(|t| t.0).sum::<f64>() / n;
    let moved = terms.iter().map(|t| t.1).sum::<f64>() / n;
    let mean_d = moved - base;
    let var = terms
        .iter()
        .map(|t| {
            let d = (t.1 - t.0) - mean_d;
            d * d
        })
        .sum::<f64>()
        / (n - 1.0);
    (base, moved, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::{mobius_act, sample_element};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_series(order: usize, r: &mut impl Rng) -> FourierSeries {
        let cos = (0..=order).map(|_| r.gen_range(-1.0..1.0)).collect();
        let sin = (0..order).map(|_| r.gen_range(-1.0..1.0)).collect();
        FourierSeries::from_coefficients(cos, sin).unwrap()
    }

    #[test]
    fn lambda_total_mass_in_both_charts() {
        assert_abs_diff_eq!(integrate_circle(|_| 1.0, 64), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(integrate_rho_chart(|_| 1.0, 64), 1.0, epsilon = 1e-15);
        // Chart densities at reference points.
        let at_pi = CirclePoint::from_theta(PI); // ρ = 0
        assert_abs_diff_eq!(
            lambda_weight(MeasureChart::Rho, &at_pi).unwrap(),
            1.0 / PI,
            epsilon = 1e-15
        );
        let at_half = CirclePoint::from_theta(PI / 2.0); // ρ = 1
        assert_abs_diff_eq!(
            lambda_weight(MeasureChart::Rho, &at_half).unwrap(),
            1.0 / (2.0 * PI),
            epsilon = 1e-12
        );
        assert!(matches!(
            lambda_weight(MeasureChart::Rho, &CirclePoint::from_theta(0.0)),
            Err(Error::InfinitePoint)
        ));
        assert_abs_diff_eq!(
            lambda_weight(MeasureChart::Theta, &at_pi).unwrap(),
            1.0 / TAU,
            epsilon = 1e-16
        );
    }

    #[test]
    fn chart_integrals_agree_on_smooth_functions() {
        let mut r = rng(5);
        let f = random_series(6, &mut r);
        let via_theta = integrate_circle(|p| f.evaluate(p), 256);
        let via_rho = integrate_rho_chart(
            |rho| f.evaluate(&CirclePoint::from_rho(Rho::Finite(rho))),
            256,
        );
        assert_abs_diff_eq!(via_theta, via_rho, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_exactness_threshold() {
        // Exact for harmonics 1..M−1, aliased to full mass exactly at M.
        let m = 32;
        for k in 1..m {
            let val = integrate_theta(|p| (k as f64 * p.theta()).cos(), m);
            assert_abs_diff_eq!(val, 0.0, epsilon = 1e-12);
        }
        let aliased = integrate_theta(|p| (m as f64 * p.theta()).cos(), m);
        assert_abs_diff_eq!(aliased, TAU, epsilon = 1e-12);
    }

    #[test]
    fn radon_nikodym_matches_finite_difference() {
        // κ_g(θ) is the reciprocal of the angular stretch dθ′/dθ.
        let g = GroupElement::boost(1.0);
        let theta = PI / 2.0;
        let h = 1e-4;
        let plus = mobius_act(&g, &CirclePoint::from_theta(theta + h));
        let minus = mobius_act(&g, &CirclePoint::from_theta(theta - h));
        let mut delta = plus.theta() - minus.theta();
        // Unwrap across the 2π seam if the images straddle it.
        if delta > PI {
            delta -= TAU;
        } else if delta < -PI {
            delta += TAU;
        }
        let stretch = delta / (2.0 * h);
        let rn = radon_nikodym(&g, &CirclePoint::from_theta(theta));
        assert_abs_diff_eq!(1.0 / stretch, rn, epsilon = 1e-6);
        assert!(stretch > 0.0, "Möbius maps preserve orientation");
    }

    #[test]
    fn substitution_rule_holds_with_reciprocal_weight() {
        // ∫ f(θg⁻¹)·κ_{g⁻¹}(θ)⁻¹ dλ(θ) = ∫ f dλ.
        let m = 2048;
        let mut r = rng(17);
        for _ in 0..10 {
            let g = sample_element(&mut r, 1.2);
            let g_inv = g.inverse();
            let f = random_series(8, &mut r);
            let lhs = integrate_circle(
                |p| f.evaluate(&mobius_act(&g_inv, p)) / kappa(&g_inv, p),
                m,
            );
            let rhs = integrate_circle(|p| f.evaluate(p), m);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn substitution_rule_pushforward_form() {
        // Same rule written as ∫ f(θg) dλ(θ) = ∫ f(ξ)·κ_{g⁻¹}(ξ)⁻¹ dλ(ξ).
        let m = 2048;
        let mut r = rng(19);
        for _ in 0..10 {
            let g = sample_element(&mut r, 1.2);
            let g_inv = g.inverse();
            let f = random_series(8, &mut r);
            let lhs = integrate_circle(|p| f.evaluate(&mobius_act(&g, p)), m);
            let rhs = integrate_circle(|p| f.evaluate(p) / kappa(&g_inv, p), m);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn naive_direct_weight_is_not_invariant() {
        // Weighting by κ_{g⁻¹} itself (instead of its reciprocal) fails: for
        // f ≡ 1 it returns the mean of κ_{g⁻¹}, which is cosh t for a boost.
        let t = 1.0;
        let g_inv = GroupElement::boost(t).inverse();
        let naive = integrate_circle(|p| 1.0 * kappa(&g_inv, p), 512);
        assert_abs_diff_eq!(naive, t.cosh(), epsilon = 1e-12);
        assert!((naive - 1.0).abs() > 0.5);
    }

    #[test]
    fn kappa_cubed_norm_route_matches_direct_quadrature() {
        let m = 2048;
        let mut r = rng(23);
        for _ in 0..10 {
            let g = sample_element(&mut r, 1.5);
            let beta = random_series(10, &mut r);
            let direct = integrate_theta(
                |p| {
                    let k = kappa(&g, p);
                    let b = beta.evaluate(&mobius_act(&g, p));
                    b * b / (k * k * k * k)
                },
                m,
            );
            let via_kappa3 = dual_norm_sq_kappa3(&g, &beta, m);
            assert!((direct - via_kappa3).abs() <= 1e-9 * direct.max(1.0));
        }
    }

    #[test]
    fn kappa_cubed_norm_boost_golden() {
        // β = e0, g = boost(t): ‖T′(g)β‖² = cosh³t + 1.5·cosh t·sinh²t.
        let beta = FourierSeries::basis_e(4, 0).unwrap();
        for t in [0.4, 1.0, 1.7] {
            let expected = t.cosh().powi(3) + 1.5 * t.cosh() * t.sinh() * t.sinh();
            let got = dual_norm_sq_kappa3(&GroupElement::boost(t), &beta, 1024);
            assert_abs_diff_eq!(got, expected, epsilon = 1e-10 * expected);
        }
    }

    #[test]
    fn haar_weight_rejects_singular_chart_slice() {
        assert!(haar_weight(0.0, 1e-12).is_err());
        assert!(matches!(
            haar_weight(1e-13, 1e-12),
            Err(Error::ChartSingular { .. })
        ));
        assert_abs_diff_eq!(haar_weight(-2.0, 1e-12).unwrap(), 0.5, epsilon = 1e-16);
    }

    #[test]
    fn haar_measure_is_translation_invariant_mc() {
        // Bump supported near the identity; translating by a small g0 keeps
        // both supports inside the sampling box, so both integrals estimate
        // the same group integral and must agree within Monte-Carlo error.
        let g0 = GroupElement::rotation(0.1).mul(&GroupElement::boost(0.15));
        let f = |g: &GroupElement| haar_bump(g, 0.25);
        let n = 100_000;

        // Left translation g ↦ g0·g: ∫f(g0·g)dg = ∫f dg.
        let (base, moved, se) = haar_mc_pair(f, |g| g0.mul(g), n, 2026);
        assert!(base > 0.0);
        assert!(
            (moved - base).abs() <= 3.0 * se + 1e-12,
            "left invariance violated: {base} vs {moved} (se {se})"
        );

        // Right translation g ↦ g·g0.
        let (base_r, moved_r, se_r) = haar_mc_pair(f, |g| g.mul(&g0), n, 2027);
        assert!(
            (moved_r - base_r).abs() <= 3.0 * se_r + 1e-12,
            "right invariance violated: {base_r} vs {moved_r} (se {se_r})"
        );
    }

    #[test]
    fn haar_mc_is_deterministic_for_fixed_seed() {
        let f = |g: &GroupElement| haar_bump(g, 0.25);
        let a = haar_mc_pair(f, |g| *g, 4096, 99);
        let b = haar_mc_pair(f, |g| *g, 4096, 99);
        assert_eq!(a, b);
        let c = haar_mc_pair(f, |g| *g, 4096, 100);
        assert_ne!(a.0, c.0);
    }
}
