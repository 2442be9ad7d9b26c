//! Constructors for every state family used by the simulator: number,
//! coherent, squeezed, displaced-squeezed and thermal single-mode states,
//! SU(2)-unpolarized two-mode states with their separable decomposition,
//! displaced-number mixtures, classical coherent mixtures, matched-squeezed
//! pairs, and convex combinations of displaced/squeezed unpolarized states.
//!
//! Gaussian unitaries are exponentials of truncated generators, which makes
//! them exactly unitary on the retained space. Truncation inadequacy is
//! therefore measured on a padded trial space: the constructor builds the
//! target state at a larger cutoff, reads off how much weight lies above
//! `n_max`, records it as leakage, and fails when it exceeds the tolerance.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{CutoffConfig, JointState, SingleModeState};
use crate::linalg::{expm_anti_hermitian, CMat};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Displacement amplitude α and squeeze parameter γ for one mode.
///
/// |γ| is the squeeze strength r and arg γ the squeeze-axis phase. The bounds
/// |α| ≤ 6 and |γ| ≤ 2 keep states representable near the default cutoff
/// guidance; the per-construction leakage measurement is the binding check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianOpParams {
    alpha: C64,
    gamma: C64,
}

impl GaussianOpParams {
    pub fn new(alpha: C64, gamma: C64) -> Result<Self> {
        if !alpha.is_finite() || !gamma.is_finite() {
            return Err(Error::Spec("α and γ must be finite".into()));
        }
        if alpha.norm() > 6.0 {
            return Err(Error::Spec(format!(
                "|α| = {:.3} exceeds the guard |α| ≤ 6",
                alpha.norm()
            )));
        }
        if gamma.norm() > 2.0 {
            return Err(Error::Spec(format!(
                "|γ| = {:.3} exceeds the guard |γ| ≤ 2",
                gamma.norm()
            )));
        }
        Ok(Self { alpha, gamma })
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }
}

/// Annihilation operator on the truncated basis: a|n⟩ = √n |n−1⟩.
pub fn annihilation_matrix(cutoff: CutoffConfig) -> CMat {
    let dim = cutoff.dim();
    let mut a = CMat::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Number state |n⟩.
pub fn fock(n: usize, cutoff: CutoffConfig) -> Result<SingleModeState> {
    if n > cutoff.n_max() {
        return Err(Error::AboveCutoff { n, n_max: cutoff.n_max() });
    }
    let mut amps = vec![ZERO; cutoff.dim()];
    amps[n] = ONE;
    SingleModeState::pure_from_amplitudes(amps, cutoff)
}

fn displacement_generator(alpha: C64, dim: usize) -> CMat {
    // α a† − α* a
    let mut g = CMat::zeros(dim, dim);
    for n in 1..dim {
        let root = (n as f64).sqrt();
        g[(n, n - 1)] = alpha * root;
        g[(n - 1, n)] = -alpha.conj() * root;
    }
    g
}

fn squeeze_generator(gamma: C64, dim: usize) -> CMat {
    // (γ a² − γ* a†²)/2
    let mut g = CMat::zeros(dim, dim);
    for n in 2..dim {
        let root = ((n * (n - 1)) as f64).sqrt();
        g[(n - 2, n)] += gamma * (0.5 * root);
        g[(n, n - 2)] += -gamma.conj() * (0.5 * root);
    }
    g
}

/// Largest trial dimension used when measuring truncation weight.
const MAX_TRIAL_DIM: usize = 600;

/// Weight above `n_max` of D(α)S(γ)|m⟩ evaluated on a padded trial space,
/// together with the smallest cutoff that would keep that weight below `tol`.
/// The trial space grows until the recommendation converges or the window is
/// exhausted.
fn gaussian_tail(alpha: C64, gamma: C64, m: usize, n_max: usize, tol: f64) -> (f64, Option<usize>) {
    let mut pad = (2 * (n_max + 1) + 40).max(m + 30).min(MAX_TRIAL_DIM);
    loop {
        let mut v = vec![ZERO; pad];
        v[m] = ONE;
        if gamma != ZERO {
            v = expm_anti_hermitian(&squeeze_generator(gamma, pad)).matvec(&v);
        }
        if alpha != ZERO {
            v = expm_anti_hermitian(&displacement_generator(alpha, pad)).matvec(&v);
        }
        // Cumulative weight strictly above each candidate cutoff.
        let mut tail = 0.0;
        let mut tails = vec![0.0; pad];
        for n in (0..pad).rev() {
            tails[n] = tail;
            tail += v[n].norm_sqr();
        }
        let measured = tails[n_max.min(pad - 1)];
        let recommended = (0..pad - 10).find(|&k| tails[k] <= tol);
        if recommended.is_some() || pad >= MAX_TRIAL_DIM {
            return (measured, recommended);
        }
        pad = (2 * pad).min(MAX_TRIAL_DIM);
    }
}

fn leakage_guard(tail: f64, tol: f64, recommended: Option<usize>) -> Result<()> {
    if tail > tol {
        return Err(Error::Leakage { leakage: tail, tol, recommended_n_max: recommended });
    }
    Ok(())
}

/// Truncated displacement operator exp(α a† − α* a).
///
/// The generator is truncated and then exponentiated exactly, so the result
/// is unitary on the retained space regardless of α; the leakage check fails
/// when a coherent state at this α would not fit below the cutoff.
pub fn displacement_matrix(alpha: C64, cutoff: CutoffConfig) -> Result<CMat> {
    GaussianOpParams::new(alpha, ZERO)?;
    let (tail, rec) = gaussian_tail(alpha, ZERO, 0, cutoff.n_max(), cutoff.leakage_tol());
    leakage_guard(tail, cutoff.leakage_tol(), rec)?;
    Ok(expm_anti_hermitian(&displacement_generator(alpha, cutoff.dim())))
}

/// Truncated squeeze operator exp[(γ a² − γ* a†²)/2].
pub fn squeeze_matrix(gamma: C64, cutoff: CutoffConfig) -> Result<CMat> {
    GaussianOpParams::new(ZERO, gamma)?;
    let (tail, rec) = gaussian_tail(ZERO, gamma, 0, cutoff.n_max(), cutoff.leakage_tol());
    leakage_guard(tail, cutoff.leakage_tol(), rec)?;
    Ok(expm_anti_hermitian(&squeeze_generator(gamma, cutoff.dim())))
}

/// D(α)S(γ)|m⟩ on the truncated space, with the measured truncation weight.
fn gaussian_applied_to_fock(
    alpha: C64,
    gamma: C64,
    m: usize,
    cutoff: CutoffConfig,
) -> Result<(Vec<C64>, f64)> {
    GaussianOpParams::new(alpha, gamma)?;
    if m > cutoff.n_max() {
        return Err(Error::AboveCutoff { n: m, n_max: cutoff.n_max() });
    }
    let (tail, rec) = gaussian_tail(alpha, gamma, m, cutoff.n_max(), cutoff.leakage_tol());
    leakage_guard(tail, cutoff.leakage_tol(), rec)?;
    let dim = cutoff.dim();
    let mut v = vec![ZERO; dim];
    v[m] = ONE;
    if gamma != ZERO {
        v = expm_anti_hermitian(&squeeze_generator(gamma, dim)).matvec(&v);
    }
    if alpha != ZERO {
        v = expm_anti_hermitian(&displacement_generator(alpha, dim)).matvec(&v);
    }
    Ok((v, tail))
}

fn gaussian_pure(alpha: C64, gamma: C64, cutoff: CutoffConfig) -> Result<SingleModeState> {
    let (amps, tail) = gaussian_applied_to_fock(alpha, gamma, 0, cutoff)?;
    SingleModeState::pure_with_leakage(amps, cutoff, tail)
}

/// Coherent state |α⟩ = D(α)|0⟩.
pub fn coherent(alpha: C64, cutoff: CutoffConfig) -> Result<SingleModeState> {
    gaussian_pure(alpha, ZERO, cutoff)
}

/// Squeezed vacuum S(γ)|0⟩.
pub fn squeezed_vacuum(gamma: C64, cutoff: CutoffConfig) -> Result<SingleModeState> {
    gaussian_pure(ZERO, gamma, cutoff)
}

/// Displaced squeezed vacuum D(α)S(γ)|0⟩ (squeeze first, then displace).
pub fn displaced_squeezed(alpha: C64, gamma: C64, cutoff: CutoffConfig) -> Result<SingleModeState> {
    gaussian_pure(alpha, gamma, cutoff)
}

/// Smallest cutoff at which D(α)S(γ)|0⟩ keeps its truncation weight below
/// `tol`, when one exists below the measurement window.
pub fn recommended_cutoff(alpha: C64, gamma: C64, tol: f64) -> Option<usize> {
    recommended_cutoff_fock(alpha, gamma, 0, tol)
}

/// Smallest cutoff at which D(α)S(γ)|m⟩ keeps its truncation weight below
/// `tol`, when one exists below the measurement window.
pub fn recommended_cutoff_fock(alpha: C64, gamma: C64, m: usize, tol: f64) -> Option<usize> {
    let (_, rec) = gaussian_tail(alpha, gamma, m, 1, tol);
    rec
}

/// Measured weight of D(α)S(γ)|m⟩ above `n_max`, evaluated on a padded trial
/// space.
pub fn measured_tail(alpha: C64, gamma: C64, m: usize, n_max: usize) -> f64 {
    gaussian_tail(alpha, gamma, m, n_max, 1.0).0
}

/// Photon-number distribution of D(α)S(γ)|m⟩ measured on a trial space large
/// enough that the neglected remainder is below `floor`.
pub fn photon_distribution(alpha: C64, gamma: C64, m: usize, floor: f64) -> Vec<f64> {
    let mut pad = (m + 40).min(MAX_TRIAL_DIM);
    loop {
        let mut v = vec![ZERO; pad];
        v[m] = ONE;
        if gamma != ZERO {
            v = expm_anti_hermitian(&squeeze_generator(gamma, pad)).matvec(&v);
        }
        if alpha != ZERO {
            v = expm_anti_hermitian(&displacement_generator(alpha, pad)).matvec(&v);
        }
        let probs: Vec<f64> = v.iter().map(|z| z.norm_sqr()).collect();
        let tail: f64 = probs[pad - pad / 4..].iter().sum();
        if tail < floor || pad >= MAX_TRIAL_DIM {
            return probs;
        }
        pad = (2 * pad).min(MAX_TRIAL_DIM);
    }
}

/// Thermal state with mean occupation n̄: p_n = n̄ⁿ/(n̄+1)^{n+1}.
pub fn thermal(nbar: f64, cutoff: CutoffConfig) -> Result<SingleModeState> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::Spec(format!("n̄ must be a finite non-negative number, got {nbar}")));
    }
    let dim = cutoff.dim();
    let q = nbar / (nbar + 1.0);
    // Tail weight beyond the cutoff: q^(n_max+1).
    let tail = q.powi(dim as i32);
    if tail > cutoff.leakage_tol() {
        let recommended = (tail > 0.0).then(|| {
            (cutoff.leakage_tol().ln() / q.ln()).ceil() as usize
        });
        return Err(Error::Leakage {
            leakage: tail,
            tol: cutoff.leakage_tol(),
            recommended_n_max: recommended,
        });
    }
    let mut rho = CMat::zeros(dim, dim);
    let mut p = 1.0 / (nbar + 1.0);
    for n in 0..dim {
        rho[(n, n)] = C64::new(p, 0.0);
        p *= q;
    }
    SingleModeState::mixed_from_density(rho, cutoff)
}

/// Projector onto total photon number N: Σ_m |m⟩⟨m| ⊗ |N−m⟩⟨N−m|.
pub fn sector_projector(n_total: usize, cutoff: CutoffConfig) -> Result<CMat> {
    if n_total > cutoff.n_max() {
        return Err(Error::AboveCutoff { n: n_total, n_max: cutoff.n_max() });
    }
    let mut p = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    for m in 0..=n_total {
        let k = cutoff.flat_index(m, n_total - m);
        p[(k, k)] = ONE;
    }
    Ok(p)
}

/// Weights λ_N of an SU(2)-unpolarized state Σ_N λ_N Î_N, normalized so that
/// Σ_N λ_N (N+1) = 1 up to the recorded truncation leakage.
#[derive(Clone, Debug, PartialEq)]
pub struct UnpolarizedSpec {
    lambdas: Vec<f64>,
}

impl UnpolarizedSpec {
    const NORM_TOL: f64 = 1e-10;

    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::Spec("unpolarized spec needs at least one weight".into()));
        }
        if lambdas.iter().any(|&l| !(l >= 0.0) || !l.is_finite()) {
            return Err(Error::Spec("unpolarized weights must be finite and ≥ 0".into()));
        }
        let norm: f64 = lambdas
            .iter()
            .enumerate()
            .map(|(n, &l)| l * (n + 1) as f64)
            .sum();
        if norm > 1.0 + Self::NORM_TOL || norm < 1.0 - 1e-3 {
            return Err(Error::Spec(format!(
                "unpolarized weights must satisfy Σ λ_N (N+1) = 1, got {norm}"
            )));
        }
        Ok(Self { lambdas })
    }

    /// All weight in one total-photon-number sector: λ_N = 1/(N+1).
    pub fn single_sector(n_total: usize) -> Self {
        let mut lambdas = vec![0.0; n_total + 1];
        lambdas[n_total] = 1.0 / (n_total + 1) as f64;
        Self { lambdas }
    }

    /// Geometric weights λ_N ∝ qᴺ with q = n̄/(n̄+1), matching a product of
    /// equal-temperature thermal states.
    pub fn thermal_equivalent(nbar: f64, n_max: usize) -> Self {
        let q = nbar / (nbar + 1.0);
        let scale = (1.0 - q) * (1.0 - q);
        let lambdas = (0..=n_max).map(|n| scale * q.powi(n as i32)).collect();
        Self { lambdas }
    }

    /// Poissonian weights λ_N = e^{−I} Iᴺ/(N+1)! from averaging a laser of
    /// intensity I = |α|² over polarization.
    pub fn laser(intensity: f64, n_max: usize) -> Self {
        let mut lambdas = vec![0.0; n_max + 1];
        let mut poisson = (-intensity).exp();
        for (n, l) in lambdas.iter_mut().enumerate() {
            *l = poisson / (n + 1) as f64;
            poisson *= intensity / (n + 1) as f64;
        }
        Self { lambdas }
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// 1 − Σ λ_N (N+1): the weight a truncated spec loses.
    pub fn leakage(&self) -> f64 {
        let norm: f64 = self
            .lambdas
            .iter()
            .enumerate()
            .map(|(n, &l)| l * (n + 1) as f64)
            .sum();
        (1.0 - norm).max(0.0)
    }
}

/// SU(2)-unpolarized state ρ = Σ_N λ_N Î_N.
pub fn unpolarized(spec: &UnpolarizedSpec, cutoff: CutoffConfig) -> Result<JointState> {
    if spec.lambdas.len() > cutoff.dim() {
        return Err(Error::AboveCutoff {
            n: spec.lambdas.len() - 1,
            n_max: cutoff.n_max(),
        });
    }
    let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    for (n_total, &lambda) in spec.lambdas.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        for m in 0..=n_total {
            let k = cutoff.flat_index(m, n_total - m);
            rho[(k, k)] = C64::new(lambda, 0.0);
        }
    }
    JointState::mixed_from_density(rho, cutoff)
}

/// Polarization-averaged laser output: an unpolarized state with Poissonian
/// sector weights.
pub fn laser_average(intensity: f64, cutoff: CutoffConfig) -> Result<JointState> {
    if !(intensity >= 0.0) || !intensity.is_finite() {
        return Err(Error::Spec(format!(
            "intensity must be a finite non-negative number, got {intensity}"
        )));
    }
    let spec = UnpolarizedSpec::laser(intensity, cutoff.n_max());
    let tail = spec.leakage();
    if tail > cutoff.leakage_tol() {
        return Err(Error::Leakage {
            leakage: tail,
            tol: cutoff.leakage_tol(),
            recommended_n_max: None,
        });
    }
    unpolarized(&spec, cutoff)
}

/// One product term of a separable (Werner-form) decomposition.
#[derive(Clone, Debug)]
pub struct SeparableTerm {
    pub weight: f64,
    pub state_a: SingleModeState,
    pub state_b: SingleModeState,
}

/// Convex mixture of product states Σ_m p_m ρ_m^(A) ⊗ ρ_m^(B).
#[derive(Clone, Debug)]
pub struct SeparableDecomposition {
    pub terms: Vec<SeparableTerm>,
}

impl SeparableDecomposition {
    /// Rebuilds Σ_m p_m ρ_m^(A) ⊗ ρ_m^(B).
    pub fn reassemble(&self, cutoff: CutoffConfig) -> Result<JointState> {
        let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
        for term in &self.terms {
            let product = CMat::kron(&term.state_a.density(), &term.state_b.density());
            rho.add_assign(&product.scale(C64::new(term.weight, 0.0)));
        }
        JointState::mixed_from_density(rho, cutoff)
    }
}

/// Explicit separable decomposition of an unpolarized state:
/// weights p_m = Σ_{N≥m} λ_N with factors |m⟩⟨m| and
/// (1/p_m) Σ_{N≥m} λ_N |N−m⟩⟨N−m|.
///
/// Terms with p_m below 1e−14 are dropped; their factors are undefined.
pub fn unpolarized_separable_decomposition(
    spec: &UnpolarizedSpec,
    cutoff: CutoffConfig,
) -> Result<SeparableDecomposition> {
    if spec.lambdas.len() > cutoff.dim() {
        return Err(Error::AboveCutoff {
            n: spec.lambdas.len() - 1,
            n_max: cutoff.n_max(),
        });
    }
    let dim = cutoff.dim();
    let mut terms = Vec::new();
    for m in 0..spec.lambdas.len() {
        let weight: f64 = spec.lambdas[m..].iter().sum();
        if weight <= 1e-14 {
            continue;
        }
        let state_a = fock(m, cutoff)?;
        let mut rho_b = CMat::zeros(dim, dim);
        for (offset, &lambda) in spec.lambdas[m..].iter().enumerate() {
            rho_b[(offset, offset)] = C64::new(lambda / weight, 0.0);
        }
        let state_b = SingleModeState::mixed_from_density(rho_b, cutoff)?;
        terms.push(SeparableTerm { weight, state_a, state_b });
    }
    Ok(SeparableDecomposition { terms })
}

fn flatten_product(va: &[C64], vb: &[C64], cutoff: CutoffConfig) -> Vec<C64> {
    let dim = cutoff.dim();
    let mut flat = vec![ZERO; cutoff.joint_dim()];
    for m in 0..dim {
        for n in 0..dim {
            flat[cutoff.flat_index(m, n)] = va[m] * vb[n];
        }
    }
    flat
}

/// Uniform mixture of displaced number-state products,
/// ρ^(N) = (1/(N+1)) Σ_m |m,α⟩⟨m,α| ⊗ |N−m,β⟩⟨N−m,β|.
pub fn displaced_number_mixture(
    n_total: usize,
    alpha: C64,
    beta: C64,
    cutoff: CutoffConfig,
) -> Result<JointState> {
    if n_total > cutoff.n_max() {
        return Err(Error::AboveCutoff { n: n_total, n_max: cutoff.n_max() });
    }
    let weight = 1.0 / (n_total + 1) as f64;
    let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    let mut worst_tail = 0.0f64;
    for m in 0..=n_total {
        let (va, tail_a) = gaussian_applied_to_fock(alpha, ZERO, m, cutoff)?;
        let (vb, tail_b) = gaussian_applied_to_fock(beta, ZERO, n_total - m, cutoff)?;
        worst_tail = worst_tail.max(tail_a + tail_b);
        rho.add_scaled_outer(weight, &flatten_product(&va, &vb, cutoff));
    }
    let mut state = JointState::mixed_from_density(rho, cutoff)?;
    state.set_leakage(worst_tail);
    Ok(state)
}

/// Pure product state D_a(α)S_a(γ)|0⟩ ⊗ D_b(β)S_b(e^{−2iφ}γ)|0⟩, the squeeze
/// axes matched to the beam-splitter phase φ.
pub fn matched_squeezed_pair(
    alpha: C64,
    beta: C64,
    gamma: C64,
    phi: f64,
    cutoff: CutoffConfig,
) -> Result<JointState> {
    let gamma_b = gamma * C64::from_polar(1.0, -2.0 * phi);
    let a = gaussian_pure(alpha, gamma, cutoff)?;
    let b = gaussian_pure(beta, gamma_b, cutoff)?;
    crate::fock::tensor(&a, &b)
}

/// One component of the zero-entanglement convex family: a weighted,
/// displaced and squeezed unpolarized state.
#[derive(Clone, Debug)]
pub struct FamilySample {
    pub weight: f64,
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub spec: UnpolarizedSpec,
}

/// Convex combination Σ_k g_k T(k) ρ_un(k) T†(k) with
/// T(k) = D_a(α_k)S_a(γ_k) ⊗ D_b(β_k)S_b(e^{−2iφ}γ_k).
///
/// All components share the beam-splitter phase φ that fixes the mode-b
/// squeeze axis.
pub fn zero_entanglement_family(
    samples: &[FamilySample],
    phi: f64,
    cutoff: CutoffConfig,
) -> Result<JointState> {
    MixtureSpec::new(samples.iter().map(|s| s.weight).collect())?;
    let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    let mut worst_tail = 0.0f64;
    for sample in samples {
        if sample.spec.lambdas.len() > cutoff.dim() {
            return Err(Error::AboveCutoff {
                n: sample.spec.lambdas.len() - 1,
                n_max: cutoff.n_max(),
            });
        }
        let gamma_b = sample.gamma * C64::from_polar(1.0, -2.0 * phi);
        for (n_total, &lambda) in sample.spec.lambdas.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            for m in 0..=n_total {
                let (va, ta) = gaussian_applied_to_fock(sample.alpha, sample.gamma, m, cutoff)?;
                let (vb, tb) =
                    gaussian_applied_to_fock(sample.beta, gamma_b, n_total - m, cutoff)?;
                worst_tail = worst_tail.max(ta + tb);
                rho.add_scaled_outer(
                    sample.weight * lambda,
                    &flatten_product(&va, &vb, cutoff),
                );
            }
        }
    }
    let mut state = JointState::mixed_from_density(rho, cutoff)?;
    state.set_leakage(worst_tail);
    Ok(state)
}

/// Validated convex-mixture weights: strictly positive, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MixtureSpec {
    weights: Vec<f64>,
}

impl MixtureSpec {
    const NORM_TOL: f64 = 1e-10;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Spec("mixture needs at least one component".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::Spec("mixture weights must be finite and > 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Spec(format!(
                "mixture weights must sum to 1, got {total}"
            )));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Classical mixture of coherent products, Σ_k p_k |α_k⟩⟨α_k| ⊗ |β_k⟩⟨β_k|.
pub fn classical_coherent_mixture(
    components: &[(f64, C64, C64)],
    cutoff: CutoffConfig,
) -> Result<JointState> {
    MixtureSpec::new(components.iter().map(|c| c.0).collect())?;
    let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    let mut worst_tail = 0.0f64;
    for &(weight, alpha, beta) in components {
        let (va, ta) = gaussian_applied_to_fock(alpha, ZERO, 0, cutoff)?;
        let (vb, tb) = gaussian_applied_to_fock(beta, ZERO, 0, cutoff)?;
        worst_tail = worst_tail.max(ta + tb);
        rho.add_scaled_outer(weight, &flatten_product(&va, &vb, cutoff));
    }
    let mut state = JointState::mixed_from_density(rho, cutoff)?;
    state.set_leakage(worst_tail);
    Ok(state)
}

/// First and second moments of the mode operators against a single-mode
/// state, normalized by the state's trace.
#[derive(Clone, Copy, Debug)]
pub struct Moments {
    /// ⟨a⟩
    pub a: C64,
    /// ⟨a†⟩
    pub a_dag: C64,
    /// ⟨a²⟩
    pub a_sq: C64,
    /// ⟨a†²⟩
    pub a_dag_sq: C64,
    /// ⟨a†a⟩
    pub number: f64,
}

impl Moments {
    /// Δ²a = ⟨a²⟩ − ⟨a⟩².
    pub fn var_a(&self) -> C64 {
        self.a_sq - self.a * self.a
    }

    /// Δ²a† = ⟨a†²⟩ − ⟨a†⟩².
    pub fn var_a_dag(&self) -> C64 {
        self.a_dag_sq - self.a_dag * self.a_dag
    }

    /// ⟨a†a⟩ − ⟨a†⟩⟨a⟩, the Cauchy–Schwarz gap; zero only for coherent
    /// states.
    pub fn centered_number(&self) -> f64 {
        self.number - (self.a_dag * self.a).re
    }
}

/// Expectation values of a, a², a†a (and conjugates) for a single-mode state.
pub fn moments(state: &SingleModeState) -> Moments {
    let cutoff = state.cutoff();
    let a = annihilation_matrix(cutoff);
    let trace = state.trace();
    let (exp_a, exp_a_sq, exp_n) = match state.amplitudes() {
        Some(psi) => {
            let av = a.matvec(psi);
            let aav = a.matvec(&av);
            let dot = |x: &[C64], y: &[C64]| -> C64 {
                x.iter().zip(y).map(|(xi, yi)| xi.conj() * yi).sum()
            };
            (dot(psi, &av), dot(psi, &aav), dot(&av, &av).re)
        }
        None => {
            let rho = state.density();
            let dim = cutoff.dim();
            // Tr[ρ a] and Tr[ρ a²] against the banded ladder structure.
            let mut exp_a = ZERO;
            let mut exp_a_sq = ZERO;
            let mut exp_n = 0.0;
            for n in 1..dim {
                exp_a += rho[(n, n - 1)] * (n as f64).sqrt();
                exp_n += rho[(n, n)].re * n as f64;
            }
            for n in 2..dim {
                exp_a_sq += rho[(n, n - 2)] * ((n * (n - 1)) as f64).sqrt();
            }
            (exp_a, exp_a_sq, exp_n)
        }
    };
    let t = if trace > 0.0 { trace } else { 1.0 };
    let exp_a = exp_a / t;
    let exp_a_sq = exp_a_sq / t;
    Moments {
        a: exp_a,
        a_dag: exp_a.conj(),
        a_sq: exp_a_sq,
        a_dag_sq: exp_a_sq.conj(),
        number: exp_n / t,
    }
}
