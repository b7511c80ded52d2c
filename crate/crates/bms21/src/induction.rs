//! Induced unitary representations: sampled coset spaces G/K for the compact
//! little groups, equivariant vectors, and the operators Q(α) (supertranslation
//! phases) and V(g) (conformal relocation) whose pair realizes the
//! semidirect-product representation attached to an orbit and a character.
//!
//! Carrier model. A vector is a function ψ on G with ψ(g·l) = U(l⁻¹)ψ(g) for
//! l in the little group K, handled through canonical coset representatives:
//! every g factors as g = r·k (Iwasawa form) with
//!
//! ```text
//! r = [[u, w], [0, 1/u]],  u = 1/√(c² + d²) > 0,  k = R(φ),  φ = atan2(c, d);
//! ```
//!
//! for K = SO(2) the representative is r itself; for K = C_n the angle is
//! split as φ = φ₀ + 2πj/n with φ₀ ∈ [0, 2π/n), the representative is
//! r·R(φ₀) and k = R(2πj/n). The invariant measure on G/SO(2) is du dw/u²
//! (and du dw dφ₀/u² on G/C_n), so the relocation operator V carries no
//! Radon–Nikodym factor.
//!
//! Operators, for an orbit through β with character U:
//!
//! ```text
//! (Q(α)ψ)(q) = exp(i⟨T′(q)β, α⟩)·ψ(q)
//! (V(g)ψ)(q) = U(k⁻¹)·ψ(r)           where g⁻¹q = r·k
//! W(α, g)    = Q(α)·V(g)
//! ```
//!
//! and the pair satisfies V(g)Q(α)V(g)⁻¹ = Q(T(g)α), which is exactly the
//! semidirect-product law.

use crate::group_action::{act_T, dual_act, BmsElement, GridSpec, GroupElement};
use crate::little_groups::{
    canonical_supermomentum, little_rep_eval, LittleGroupElement, LittleGroupKind, LittleRepLabel,
};
use crate::supertranslation::FourierSeries;
use crate::{exec, Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// One sampled coset: its canonical representative, its quadrature weight for
/// the invariant measure, and the supermomentum T′(rep)β sitting over it.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub rep: GroupElement,
    pub weight: f64,
    pub momentum: FourierSeries,
}

/// Sampling window in the coset coordinates (u, w) of the representative
/// r = [[u, w], [0, 1/u]]. The invariant measure restricted to the window is
/// du dw/u², with total mass (w₁ − w₀)·(1/u₀ − 1/u₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitWindow {
    pub u: (f64, f64),
    pub w: (f64, f64),
}

impl OrbitWindow {
    pub fn validate(&self) -> Result<()> {
        if !(self.u.0 > 0.0 && self.u.1 > self.u.0 && self.w.1 > self.w.0) {
            return Err(Error::Mismatch {
                reason: format!(
                    "window must satisfy 0 < u0 < u1 and w0 < w1, got u = {:?}, w = {:?}",
                    self.u, self.w
                ),
            });
        }
        Ok(())
    }

    /// Euclidean box volume in the (u, w) chart.
    pub fn chart_volume(&self) -> f64 {
        (self.u.1 - self.u.0) * (self.w.1 - self.w.0)
    }

    /// Mass of the invariant measure du dw/u² on the window.
    pub fn invariant_mass(&self) -> f64 {
        (self.w.1 - self.w.0) * (1.0 / self.u.0 - 1.0 / self.u.1)
    }
}

impl Default for OrbitWindow {
    fn default() -> Self {
        OrbitWindow {
            u: (0.35, 2.85),
            w: (-1.6, 1.6),
        }
    }
}

/// How the coset space is sampled.
#[derive(Debug, Clone)]
pub enum SampleMode {
    /// Independent uniform draws from the window, importance-weighted against
    /// the invariant measure. Suited to Monte-Carlo integrals.
    Random { count: usize },
    /// All reduced words of length ≤ depth in the given generators and their
    /// inverses, applied to `seeds` starting representatives (the identity
    /// coset first), deduplicated and clipped to the window. Suited to exact
    /// relocation tests, where V must find the image of a sample point in the
    /// sample again.
    Closure {
        seeds: usize,
        generators: Vec<GroupElement>,
        depth: usize,
    },
}

/// Parameters for building an orbit sample.
#[derive(Debug, Clone)]
pub struct SampleParams {
    pub mode: SampleMode,
    pub seed: u64,
    pub window: OrbitWindow,
    /// Coset-matching tolerance used for deduplication and for resolving
    /// relocated points back into the sample.
    pub match_tol: f64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            mode: SampleMode::Random { count: 256 },
            seed: crate::defaults::SEED,
            window: OrbitWindow::default(),
            match_tol: crate::defaults::MATCH_TOL,
        }
    }
}

/// A sampled orbit: the base supermomentum, its little group and character,
/// and the sampled cosets.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    pub base: FourierSeries,
    pub kind: LittleGroupKind,
    pub label: LittleRepLabel,
    pub match_tol: f64,
    pub grid: GridSpec,
    pub points: Vec<OrbitPoint>,
}

impl OrbitSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The canonical representative r(u, w) = [[u, w], [0, 1/u]] of a coset of
/// the rotation subgroup.
pub fn coset_rep(u: f64, w: f64) -> GroupElement {
    GroupElement::new_unchecked(u, w, 0.0, 1.0 / u)
}

/// Factor g = r·k with r the canonical coset representative for `kind` and k
/// in the little group: for SO(2), r upper-triangular with positive diagonal
/// and k the full Iwasawa rotation; for C_n, the lattice part of the rotation
/// only, leaving the residual angle φ₀ ∈ [0, 2π/n) inside r.
pub fn reduce(g: &GroupElement, kind: LittleGroupKind) -> Result<(GroupElement, LittleGroupElement)> {
    let h = g.c.hypot(g.d);
    let phi = g.c.atan2(g.d);
    match kind {
        LittleGroupKind::FullG => Err(Error::Mismatch {
            reason: "the full group stabilizes only the zero supermomentum, which has a single \
                     coset and no sampled orbit"
                .to_string(),
        }),
        LittleGroupKind::Rotation => {
            let r = GroupElement::new_unchecked(
                1.0 / h,
                (g.a * g.c + g.b * g.d) / h,
                0.0,
                h,
            );
            Ok((r, LittleGroupElement::Angle(phi)))
        }
        LittleGroupKind::CyclicEven(n) => {
            let step = TAU / n as f64;
            let j = (phi / step).floor();
            let r = g.mul(&GroupElement::rotation(-j * step));
            Ok((r, LittleGroupElement::Index(j as i64)))
        }
    }
}

/// Whether g already is the canonical representative of its coset, within an
/// entrywise tolerance.
pub fn is_reduced(g: &GroupElement, kind: LittleGroupKind, tol: f64) -> bool {
    match kind {
        LittleGroupKind::FullG => false,
        LittleGroupKind::Rotation => g.c.abs() <= tol && g.a > 0.0,
        LittleGroupKind::CyclicEven(n) => {
            let step = TAU / n as f64;
            let phi = g.c.atan2(g.d);
            phi >= -tol && phi <= step + tol
        }
    }
}

/// Distance between the cosets of two canonical representatives: for SO(2)
/// the Frobenius distance of the representatives themselves; for C_n the
/// minimum over lattice shifts (so points straddling the fundamental-domain
/// seam still compare as close), returned with the minimizing shift.
fn coset_distance(kind: LittleGroupKind, r1: &GroupElement, r2: &GroupElement) -> (f64, i64) {
    match kind {
        LittleGroupKind::FullG => (f64::INFINITY, 0),
        LittleGroupKind::Rotation => (r1.frobenius_dist(r2), 0),
        LittleGroupKind::CyclicEven(n) => {
            let step = TAU / n as f64;
            let mut best = (f64::INFINITY, 0i64);
            for j in 0..n as i64 {
                let shifted = r1.mul(&GroupElement::rotation(j as f64 * step));
                let d = shifted.frobenius_dist(r2);
                if d < best.0 {
                    best = (d, j);
                }
            }
            best
        }
    }
}

/// Build a sampled orbit through the canonical supermomentum of `kind`,
/// carrying the character `label`. `beta` must be that canonical
/// supermomentum (the construction is tied to the stabilizer being exactly
/// the named subgroup), and `label` must be a character of the same subgroup.
pub fn build_orbit_sample(
    beta: &FourierSeries,
    kind: LittleGroupKind,
    label: LittleRepLabel,
    params: &SampleParams,
    grid: &GridSpec,
) -> Result<OrbitSample> {
    if matches!(kind, LittleGroupKind::FullG) {
        return Err(Error::Mismatch {
            reason: "the zero supermomentum induces no sampled coset space: its little group is \
                     the whole group"
                .to_string(),
        });
    }
    if label.kind() != kind {
        return Err(Error::Mismatch {
            reason: format!(
                "character {label:?} belongs to {:?}, not to {kind:?}",
                label.kind()
            ),
        });
    }
    label.validate()?;
    params.window.validate()?;
    let canonical = canonical_supermomentum(kind, beta.order())?;
    if beta.distance(&canonical) > params.match_tol * canonical.norm().max(1.0) {
        return Err(Error::Mismatch {
            reason: "base supermomentum is not the canonical representative of the requested \
                     stabilizer class"
                .to_string(),
        });
    }

    let fiber = match kind {
        LittleGroupKind::CyclicEven(n) => TAU / n as f64,
        _ => 0.0,
    };
    let reps: Vec<GroupElement> = match &params.mode {
        SampleMode::Random { count } => {
            let window = params.window;
            exec::map_indexed(*count, |i| {
                use rand::Rng;
                let mut rng = exec::stream_rng(params.seed, i as u64);
                let u = rng.gen_range(window.u.0..window.u.1);
                let w = rng.gen_range(window.w.0..window.w.1);
                let base = coset_rep(u, w);
                if fiber > 0.0 {
                    base.mul(&GroupElement::rotation(rng.gen_range(0.0..fiber)))
                } else {
                    base
                }
            })
        }
        SampleMode::Closure {
            seeds,
            generators,
            depth,
        } => closure_reps(kind, params, *seeds, generators, *depth)?,
    };

    // Importance weight for the invariant measure: uniform box draws against
    // du dw/u² (times the fiber length for cyclic kinds); closure samples get
    // equal weights, normalized to the window's invariant mass. The chart
    // coordinate u is recovered from the representative as 1/√(c² + d²) — for
    // cyclic kinds the matrix entry `a` is u·cos φ₀, not u.
    let n = reps.len().max(1) as f64;
    let uniform = match &params.mode {
        SampleMode::Random { .. } => None,
        SampleMode::Closure { .. } => Some(params.window.invariant_mass() / n),
    };
    let chart_vol = params.window.chart_volume() * if fiber > 0.0 { fiber } else { 1.0 };

    let points: Vec<Result<OrbitPoint>> = exec::map_indexed(reps.len(), |i| {
        let rep = reps[i];
        let weight = match uniform {
            Some(wt) => wt,
            None => {
                let u = 1.0 / rep.c.hypot(rep.d);
                chart_vol / (n * u * u)
            }
        };
        let momentum = dual_act(&rep, beta, grid)?.series;
        Ok(OrbitPoint {
            rep,
            weight,
            momentum,
        })
    });
    let points = points.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(OrbitSample {
        base: beta.clone(),
        kind,
        label,
        match_tol: params.match_tol,
        grid: *grid,
        points,
    })
}

/// Enumerate reduced representatives of all words of length ≤ depth in the
/// generators and their inverses, applied to the seed representatives,
/// deduplicated by coset distance and clipped to the window.
fn closure_reps(
    kind: LittleGroupKind,
    params: &SampleParams,
    seeds: usize,
    generators: &[GroupElement],
    depth: usize,
) -> Result<Vec<GroupElement>> {
    use rand::Rng;
    let mut alphabet: Vec<GroupElement> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        alphabet.push(*g);
        alphabet.push(g.inverse());
    }
    // Seed representatives: the identity coset first, then random window draws.
    let mut frontier: Vec<GroupElement> = vec![reduce(&GroupElement::IDENTITY, kind)?.0];
    for i in 1..seeds {
        let mut rng = exec::stream_rng(params.seed, 0x5EED_0000 + i as u64);
        let u = rng.gen_range(params.window.u.0..params.window.u.1);
        let w = rng.gen_range(params.window.w.0..params.window.w.1);
        frontier.push(coset_rep(u, w));
    }
    let mut kept: Vec<GroupElement> = Vec::new();
    let inside = |r: &GroupElement| -> bool {
        // Chart coordinates of the coset under the reduced representative.
        let u = 1.0 / r.c.hypot(r.d);
        let w = (r.a * r.c + r.b * r.d) * u;
        (params.window.u.0..=params.window.u.1).contains(&u)
            && (params.window.w.0..=params.window.w.1).contains(&w)
    };
    let push_unique = |kept: &mut Vec<GroupElement>, r: GroupElement| {
        if !inside(&r) {
            return;
        }
        if kept
            .iter()
            .all(|existing| coset_distance(kind, &r, existing).0 > params.match_tol)
        {
            kept.push(r);
        }
    };
    for &r in &frontier {
        push_unique(&mut kept, r);
    }
    let mut current = frontier;
    for _ in 0..depth {
        let mut next = Vec::new();
        for rep in &current {
            for gen in &alphabet {
                let (r, _) = reduce(&gen.mul(rep), kind)?;
                push_unique(&mut kept, r);
                next.push(r);
            }
        }
        current = next;
    }
    Ok(kept)
}

/// A vector in the sampled carrier space: one complex value per orbit point.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantVector {
    pub values: Vec<Complex64>,
}

impl EquivariantVector {
    pub fn zeros(len: usize) -> Self {
        EquivariantVector {
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }
}

fn check_shape(orbit: &OrbitSample, values: &[Complex64]) -> Result<()> {
    if values.len() != orbit.len() {
        return Err(Error::Shape {
            expected: orbit.len(),
            got: values.len(),
        });
    }
    Ok(())
}

/// Character value U(k) for a little-group element produced by `reduce`.
fn character(orbit: &OrbitSample, k: &LittleGroupElement) -> Complex64 {
    little_rep_eval(&orbit.label, k, orbit.match_tol)
        .expect("reduction always lands in the little group")
}

/// Combine a reduction h = r·R(m·step) with a lattice shift found by coset
/// matching (C_n seam case): r·R(j·step) ≈ rep means h ≈ rep·R((m−j)·step).
fn shifted_element(k: &LittleGroupElement, shift: i64) -> LittleGroupElement {
    match (k, shift) {
        (LittleGroupElement::Index(m), j) => LittleGroupElement::Index(m - j),
        (other, _) => *other,
    }
}

/// Find the sample index whose coset matches the reduced representative,
/// within the orbit's matching tolerance. Returns the index and the lattice
/// shift the match absorbed.
fn match_coset(orbit: &OrbitSample, r: &GroupElement) -> Option<(usize, i64)> {
    let mut best: Option<(usize, i64, f64)> = None;
    for (i, p) in orbit.points.iter().enumerate() {
        let (d, j) = coset_distance(orbit.kind, r, &p.rep);
        if d <= orbit.match_tol && best.map_or(true, |b| d < b.2) {
            best = Some((i, j, d));
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Turn raw graph data {(g, ψ(g))} into a vector on the sample by enforcing
/// the equivariance ψ(r·k) = U(k⁻¹)ψ(r): each datum contributes U(k)·value to
/// its coset's representative, contributions to the same coset are averaged,
/// data outside the sample are skipped, and cosets with no datum stay zero.
pub fn enforce_equivariance(
    orbit: &OrbitSample,
    data: &[(GroupElement, Complex64)],
) -> EquivariantVector {
    let mut sums = vec![Complex64::new(0.0, 0.0); orbit.len()];
    let mut counts = vec![0usize; orbit.len()];
    for (g, value) in data {
        let Ok((r, k)) = reduce(g, orbit.kind) else {
            continue;
        };
        let Some((i, shift)) = match_coset(orbit, &r) else {
            continue;
        };
        let k_eff = shifted_element(&k, shift);
        sums[i] += character(orbit, &k_eff) * value;
        counts[i] += 1;
    }
    let values = sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| if c == 0 { s } else { s / c as f64 })
        .collect();
    EquivariantVector { values }
}

/// Evaluate a sampled vector at an arbitrary group element h = r·k:
/// U(k⁻¹)·ψ(r) when the coset of r is in the sample, None when it is not.
pub fn evaluate_equivariant(
    orbit: &OrbitSample,
    psi: &EquivariantVector,
    h: &GroupElement,
) -> Result<Option<Complex64>> {
    check_shape(orbit, &psi.values)?;
    let (r, k) = reduce(h, orbit.kind)?;
    Ok(match_coset(orbit, &r).map(|(i, shift)| {
        let k_eff = shifted_element(&k, shift);
        character(orbit, &k_eff).conj() * psi.values[i]
    }))
}

/// The supertranslation operator (Q(α)ψ)(q) = exp(i⟨T′(q)β, α⟩)·ψ(q); the
/// phases use the cached momenta T′(rep)β, so Q is exactly diagonal and
/// exactly unitary on the sample.
#[allow(non_snake_case)]
pub fn op_Q(
    alpha: &FourierSeries,
    orbit: &OrbitSample,
    psi: &EquivariantVector,
) -> Result<EquivariantVector> {
    check_shape(orbit, &psi.values)?;
    let values = orbit
        .points
        .iter()
        .zip(&psi.values)
        .map(|(p, v)| Complex64::cis(p.momentum.inner_product(alpha)) * v)
        .collect();
    Ok(EquivariantVector { values })
}

/// Result of a relocation operator on a finite sample: the vector, the output
/// indices whose relocated coset fell outside the sample (their values are
/// zero — reported, not silently dropped), and for resolved indices the
/// source index the value came from.
#[derive(Debug, Clone)]
pub struct VOutcome {
    pub vector: EquivariantVector,
    pub off_sample: Vec<usize>,
    pub sources: Vec<Option<usize>>,
}

/// The conformal relocation operator (V(g)ψ)(q) = U(k⁻¹)ψ(r) with g⁻¹q = r·k.
/// The invariant measure on the coset space makes the Radon–Nikodym factor
/// identically 1, so relocation and the character twist are the whole story.
#[allow(non_snake_case)]
pub fn op_V(
    g: &GroupElement,
    orbit: &OrbitSample,
    psi: &EquivariantVector,
) -> Result<VOutcome> {
    check_shape(orbit, &psi.values)?;
    let g_inv = g.inverse();
    let mut values = Vec::with_capacity(orbit.len());
    let mut off_sample = Vec::new();
    let mut sources = Vec::with_capacity(orbit.len());
    for (j, p) in orbit.points.iter().enumerate() {
        let h = g_inv.mul(&p.rep);
        let (r, k) = reduce(&h, orbit.kind)?;
        match match_coset(orbit, &r) {
            Some((i, shift)) => {
                let k_eff = shifted_element(&k, shift);
                values.push(character(orbit, &k_eff).conj() * psi.values[i]);
                sources.push(Some(i));
            }
            None => {
                off_sample.push(j);
                values.push(Complex64::new(0.0, 0.0));
                sources.push(None);
            }
        }
    }
    Ok(VOutcome {
        vector: EquivariantVector { values },
        off_sample,
        sources,
    })
}

/// The full semidirect-product operator W(α, g) = Q(α)·V(g); satisfies
/// W(x₁)·W(x₂) = W(x₁·x₂) for the group law (α₁, g₁)(α₂, g₂) =
/// (α₁ + T(g₁)α₂, g₁g₂). Off-sample indices propagate from the V step.
pub fn op_full(
    x: &BmsElement,
    orbit: &OrbitSample,
    psi: &EquivariantVector,
) -> Result<VOutcome> {
    let moved = op_V(&x.g, orbit, psi)?;
    let vector = op_Q(&x.alpha, orbit, &moved.vector)?;
    Ok(VOutcome {
        vector,
        off_sample: moved.off_sample,
        sources: moved.sources,
    })
}

/// The sampled L²(dμ) inner product Σ w_i·conj(ψ₁_i)·ψ₂_i, conjugate-linear
/// in the FIRST slot.
pub fn inner_dmu(
    orbit: &OrbitSample,
    psi1: &EquivariantVector,
    psi2: &EquivariantVector,
) -> Result<Complex64> {
    check_shape(orbit, &psi1.values)?;
    check_shape(orbit, &psi2.values)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for ((p, v1), v2) in orbit.points.iter().zip(&psi1.values).zip(&psi2.values) {
        sum += p.weight * v1.conj() * v2;
    }
    Ok(sum)
}

/// Sample a closed-form section: ψ_i = f(rep_i). The function must depend on
/// the coset only (i.e. be a function of the reduced representative) for the
/// result to be a genuine carrier vector.
pub fn vector_from_fn<F>(orbit: &OrbitSample, f: F) -> EquivariantVector
where
    F: Fn(&GroupElement) -> Complex64,
{
    EquivariantVector {
        values: orbit.points.iter().map(|p| f(&p.rep)).collect(),
    }
}

/// V(g) applied to a function-backed section, evaluated by exact relocation:
/// (V(g)ψ_f)(rep_j) = U(k⁻¹)·f(r) with g⁻¹·rep_j = r·k. No sample matching is
/// involved, so there are no off-sample losses — this is the form Monte-Carlo
/// unitarity checks use.
pub fn op_v_fn<F>(g: &GroupElement, orbit: &OrbitSample, f: F) -> Result<EquivariantVector>
where
    F: Fn(&GroupElement) -> Complex64,
{
    let g_inv = g.inverse();
    let mut values = Vec::with_capacity(orbit.len());
    for p in &orbit.points {
        let (r, k) = reduce(&g_inv.mul(&p.rep), orbit.kind)?;
        values.push(character(orbit, &k).conj() * f(&r));
    }
    Ok(EquivariantVector { values })
}

/// Intertwining check data: ‖[V(g)Q(α)V(g)⁻¹ − Q(T(g)α)]ψ‖ evaluated with a
/// function-backed section, returning the maximum pointwise defect over the
/// sample together with the residual of the T(g)α projection.
pub fn intertwining_defect_fn<F>(
    g: &GroupElement,
    alpha: &FourierSeries,
    orbit: &OrbitSample,
    f: F,
) -> Result<(f64, f64)>
where
    F: Fn(&GroupElement) -> Complex64 + Copy,
{
    let moved_alpha = act_T(g, alpha, &orbit.grid)?;
    let g_inv = g.inverse();
    let mut max_defect = 0.0f64;
    for p in &orbit.points {
        // Left side, unrolled through the three factors at this sample point:
        // V(g)·Q(α)·V(g⁻¹) with exact relocations.
        let (r1, k1) = reduce(&g_inv.mul(&p.rep), orbit.kind)?;
        let phase1 = Complex64::cis(dual_act(&r1, &orbit.base, &orbit.grid)?
            .series
            .inner_product(alpha));
        let (r2, k2) = reduce(&g.mul(&r1), orbit.kind)?;
        let lhs = character(orbit, &k1).conj()
            * phase1
            * character(orbit, &k2).conj()
            * f(&r2);
        // Right side: Q(T(g)α) at the same point.
        let rhs = Complex64::cis(p.momentum.inner_product(&moved_alpha.series)) * f(&p.rep);
        max_defect = max_defect.max((lhs - rhs).norm());
    }
    Ok((max_defect, moved_alpha.residual_rms))
}
