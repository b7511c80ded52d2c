//! Little groups (stabilizers) of supermomenta under the dual action, their
//! canonical orbit representatives and unitary characters, and the two
//! quantitative witnesses that separate the orbit classes: unbounded
//! blueshift and dual-norm growth along boosts.
//!
//! The classification realized here, by stabilizer subgroup of SL(2,R):
//! - the zero supermomentum is fixed by the whole group;
//! - β = e0 (a massive momentum at rest) is stabilized exactly by the
//!   rotation subgroup SO(2);
//! - β = e0 + e_{n/2} (massive with an order-n/2 angular pattern, n even) is
//!   stabilized exactly by the cyclic subgroup C_n = {R(2πj/n)}, which always
//!   contains −I = R(π).
//!
//! Characters: U^{(ν)}(R(φ)) = e^{iνφ} on SO(2) with ν ∈ Z, and
//! U^{(λ)}(R(2πj/n)) = e^{2πiλj/n} on C_n with λ ∈ {0, …, n−1}.

use crate::group_action::{dual_act, GridSpec, GroupElement};
use crate::measures::integrate_circle;
use crate::supertranslation::FourierSeries;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// The stabilizer class of a supermomentum orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LittleGroupKind {
    /// All of SL(2,R) — the zero supermomentum.
    FullG,
    /// The rotation subgroup SO(2) — pure massive momenta.
    Rotation,
    /// The cyclic subgroup C_n (n even ≥ 2) — massive momenta carrying an
    /// order-n/2 harmonic.
    CyclicEven(u32),
}

/// A label for an irreducible unitary character of a (compact) little group.
/// The full group is not compact and carries no such label here; orbits with
/// that stabilizer are handled separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LittleRepLabel {
    /// U(R(φ)) = e^{iνφ} on SO(2); ν must be an integer for single-valuedness
    /// since R(2π) = I in SL(2,R).
    RotationCharacter { nu: i64 },
    /// U(R(2πj/n)) = e^{2πiλj/n} on C_n, with λ ∈ {0, …, n−1}.
    CyclicCharacter { n: u32, lambda: u32 },
}

impl LittleRepLabel {
    pub fn kind(&self) -> LittleGroupKind {
        match self {
            LittleRepLabel::RotationCharacter { .. } => LittleGroupKind::Rotation,
            LittleRepLabel::CyclicCharacter { n, .. } => LittleGroupKind::CyclicEven(*n),
        }
    }

    /// Reject ill-formed labels (odd or zero n, λ out of range).
    pub fn validate(&self) -> Result<()> {
        match self {
            LittleRepLabel::RotationCharacter { .. } => Ok(()),
            LittleRepLabel::CyclicCharacter { n, lambda } => {
                if *n < 2 || n % 2 != 0 {
                    return Err(Error::BadOrder {
                        n: *n,
                        reason: "cyclic stabilizers occur only for even order ≥ 2",
                    });
                }
                if lambda >= n {
                    return Err(Error::BadOrder {
                        n: *lambda,
                        reason: "character label must satisfy 0 ≤ λ < n",
                    });
                }
                Ok(())
            }
        }
    }
}

/// An element of a little group in whichever form the caller has it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LittleGroupElement {
    /// A rotation given by its angle: R(φ).
    Angle(f64),
    /// The j-th element R(2πj/n) of a cyclic group (any integer j; reduced
    /// modulo n).
    Index(i64),
    /// An explicit matrix, required to lie in the subgroup within tolerance.
    Matrix(GroupElement),
}

/// Whether g fixes β under the dual action: ‖T′(g)β − β‖ ≤ tol·max(1, ‖β‖).
pub fn stabilizes(
    g: &GroupElement,
    beta: &FourierSeries,
    grid: &GridSpec,
    tol: f64,
) -> Result<bool> {
    let moved = dual_act(g, beta, grid)?;
    Ok(moved.series.distance(beta) <= tol * beta.norm().max(1.0))
}

/// The canonical supermomentum whose stabilizer is exactly the requested
/// subgroup: 0 for the full group, e0 for SO(2), e0 + e_{n/2} for C_n.
pub fn canonical_supermomentum(kind: LittleGroupKind, order: usize) -> Result<FourierSeries> {
    match kind {
        LittleGroupKind::FullG => Ok(FourierSeries::zeros(order)),
        LittleGroupKind::Rotation => FourierSeries::basis_e(order, 0),
        LittleGroupKind::CyclicEven(n) => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::BadOrder {
                    n,
                    reason: "cyclic stabilizers occur only for even order ≥ 2",
                });
            }
            let half = (n / 2) as usize;
            if half > order {
                return Err(Error::BadOrder {
                    n,
                    reason: "harmonic n/2 exceeds the truncation order",
                });
            }
            Ok(FourierSeries::basis_e(order, 0)?.add(&FourierSeries::basis_e(order, half)?))
        }
    }
}

/// Angular distance to the nearest integer multiple of `step`, together with
/// that integer.
fn snap_to_lattice(phi: f64, step: f64) -> (i64, f64) {
    let j = (phi / step).round();
    (j as i64, (phi - j * step).abs())
}

/// Evaluate the unitary character `label` on a little-group element. Elements
/// presented as matrices (or angles, for cyclic labels) must lie in the
/// subgroup within `tol`, otherwise the evaluation refuses rather than
/// silently projecting.
pub fn little_rep_eval(
    label: &LittleRepLabel,
    element: &LittleGroupElement,
    tol: f64,
) -> Result<Complex64> {
    label.validate()?;
    match label {
        LittleRepLabel::RotationCharacter { nu } => {
            let phi = match element {
                LittleGroupElement::Angle(phi) => *phi,
                LittleGroupElement::Matrix(g) => g.rotation_angle(tol)?,
                LittleGroupElement::Index(_) => {
                    return Err(Error::NotInGroup {
                        reason: "a lattice index does not name an element of SO(2); \
                                 pass an angle or a matrix"
                            .to_string(),
                    })
                }
            };
            Ok(Complex64::cis(*nu as f64 * phi))
        }
        LittleRepLabel::CyclicCharacter { n, lambda } => {
            let step = TAU / *n as f64;
            let j = match element {
                LittleGroupElement::Index(j) => *j,
                LittleGroupElement::Angle(phi) => {
                    let (j, err) = snap_to_lattice(*phi, step);
                    if err > tol {
                        return Err(Error::NotInGroup {
                            reason: format!(
                                "angle {phi:.6} is {err:.3e} away from the C_{n} lattice"
                            ),
                        });
                    }
                    j
                }
                LittleGroupElement::Matrix(g) => {
                    let phi = g.rotation_angle(tol)?;
                    let (j, err) = snap_to_lattice(phi, step);
                    if err > tol {
                        return Err(Error::NotInGroup {
                            reason: format!(
                                "rotation angle {phi:.6} is {err:.3e} away from the C_{n} lattice"
                            ),
                        });
                    }
                    j
                }
            };
            // e^{2πiλj/n}, evaluated through the reduced residue to keep the
            // argument small for large |j|.
            let r = (*lambda as i64 * j).rem_euclid(*n as i64);
            Ok(Complex64::cis(TAU * r as f64 / *n as f64))
        }
    }
}

/// Witness that a boost drives the conformal factor above any bound M on all
/// but an arbitrarily small part of the circle: at the reported rapidity the
/// set {θ : κ ≤ M} has λ-measure below ε.
#[derive(Debug, Clone, Serialize)]
pub struct BlueshiftWitness {
    #[serde(rename = "M")]
    pub bound: f64,
    pub epsilon: f64,
    pub t: f64,
    pub complement_measure: f64,
    #[serde(skip)]
    pub boost: GroupElement,
}

/// Construct the blueshift witness for bound M > 0 and tolerance ε ∈ (0, 1):
/// rapidity t = max(0, 2·ln(2√M/(πε))) + 1 makes λ{κ_boost(t) ≤ M} < ε (the
/// leading-order complement measure is 2√M·e^{−t/2}/π); the complement is
/// then measured by quadrature of the indicator with `quad_points` samples.
pub fn blueshift_witness(bound: f64, epsilon: f64, quad_points: usize) -> Result<BlueshiftWitness> {
    if !(bound > 0.0) || !bound.is_finite() {
        return Err(Error::Mismatch {
            reason: format!("blueshift bound must be positive and finite, got {bound}"),
        });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Mismatch {
            reason: format!("tolerance must lie in (0, 1), got {epsilon}"),
        });
    }
    let t = (2.0 * (2.0 * bound.sqrt() / (std::f64::consts::PI * epsilon)).ln()).max(0.0) + 1.0;
    let boost = GroupElement::boost(t);
    let complement_measure = complement_measure_quadrature(t, bound, quad_points);
    Ok(BlueshiftWitness {
        bound,
        epsilon,
        t,
        complement_measure,
        boost,
    })
}

/// λ{θ : κ_boost(t)(θ) ≤ M} by indicator quadrature; κ(θ) = cosh t +
/// sinh t·cos θ is evaluated in closed form to keep the scan cheap.
pub fn complement_measure_quadrature(t: f64, bound: f64, points: usize) -> f64 {
    let (ch, sh) = (t.cosh(), t.sinh());
    integrate_circle(
        |p| {
            if ch + sh * p.theta().cos() <= bound {
                1.0
            } else {
                0.0
            }
        },
        points,
    )
}

/// Exact value of the same measure: κ ≤ M ⟺ cos θ ≤ (M − cosh t)/sinh t,
/// giving 1 − arccos(clamp)/π for t > 0.
pub fn complement_measure_exact(t: f64, bound: f64) -> f64 {
    if t == 0.0 {
        return if bound >= 1.0 { 1.0 } else { 0.0 };
    }
    let x = ((bound - t.cosh()) / t.sinh()).clamp(-1.0, 1.0);
    1.0 - x.acos() / std::f64::consts::PI
}

/// ‖T′(boost(t))β‖ for each requested rapidity, through the κ³ substitution
/// identity (a plain quadrature on the source side). Unbounded in t for every
/// β ≠ 0 — the quantitative obstruction to a nonzero invariant supermomentum.
pub fn dual_norm_growth(
    beta: &FourierSeries,
    t_values: &[f64],
    points: usize,
) -> Result<Vec<f64>> {
    if beta.norm() <= crate::defaults::TOL_ZERO {
        return Err(Error::ZeroMomentum {
            context: "dual-norm growth is a witness for nonzero supermomenta only",
        });
    }
    Ok(t_values
        .iter()
        .map(|&t| {
            crate::measures::dual_norm_sq_kappa3(&GroupElement::boost(t), beta, points).sqrt()
        })
        .collect())
}
