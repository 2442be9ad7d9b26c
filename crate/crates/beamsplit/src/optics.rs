//! Beam-splitter SU(2) rotations on the truncated two-mode space.
//!
//! R(θ, φ) = exp(−ξ a†b + ξ* b†a) with ξ = (θ/2)e^{−iφ}; the reflectivity is
//! sin²(θ/2). The generator conserves total photon number, so the unitary is
//! block-diagonal over sectors N = m + n and each block is the exponential of
//! the sector-restricted generator. Blocks with N ≤ n_max act on complete
//! sectors and carry no truncation error; blocks above that are unitary on
//! the retained corner but approximate, which is why input states must keep
//! their weight well below the cutoff.
//!
//! The Schrödinger-picture sign convention is pinned by an executable test:
//! the amplitudes of R|1,0⟩ reproduce `rotated_fock_coefficients(1, θ, φ)`,
//! i.e. R|N,0⟩ = Σ_m √(N choose m) cos^m(θ/2) sin^{N−m}(θ/2) e^{iφ(N−m)}
//! |m, N−m⟩. The generator as written above satisfies this with no sign flip.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{CutoffConfig, JointState};
use crate::linalg::{expm_anti_hermitian, CMat};

/// Rotation angle θ (reflectivity sin²(θ/2)) and phase φ, in radians.
///
/// Angles are kept exactly as given: θ and θ + 2π differ by a physical sign
/// on odd-photon-number sectors, and inverse/finite-difference sweeps need
/// negative angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitterParams {
    theta: f64,
    phi: f64,
}

impl BeamSplitterParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::Config(format!(
                "beam-splitter angles must be finite, got θ = {theta}, φ = {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn reflectivity(&self) -> f64 {
        (self.theta / 2.0).sin().powi(2)
    }

    /// ξ = (θ/2) e^{−iφ}.
    pub fn xi(&self) -> C64 {
        C64::from_polar(self.theta / 2.0, -self.phi)
    }
}

/// Unitary block acting on the total-photon-number-N sector.
///
/// Rows and columns are indexed by m − m_min, where m counts photons in mode
/// a and m_min = max(0, N − n_max) is the lowest retained value.
#[derive(Clone, Debug)]
pub struct SectorBlock {
    n_total: usize,
    m_min: usize,
    matrix: CMat,
}

impl SectorBlock {
    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn m_min(&self) -> usize {
        self.m_min
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Sector-restricted generator −ξ a†b + ξ* b†a on the basis
/// {|m, N−m⟩ : m_min ≤ m ≤ m_max}.
fn sector_generator(params: BeamSplitterParams, n_total: usize, m_min: usize, dim: usize) -> CMat {
    let xi = params.xi();
    let mut g = CMat::zeros(dim, dim);
    for r in 0..dim - 1 {
        let m = m_min + r; // coupling |m, N−m⟩ ↔ |m+1, N−m−1⟩
        let amp = (((m + 1) * (n_total - m)) as f64).sqrt();
        g[(r + 1, r)] = -xi * amp;
        g[(r, r + 1)] = xi.conj() * amp;
    }
    g
}

/// Block-diagonal beam-splitter unitary, one block per total photon number.
///
/// Building the blocks is the expensive part; a built value is immutable and
/// reusable across a sweep.
#[derive(Clone, Debug)]
pub struct BsUnitary {
    params: BeamSplitterParams,
    cutoff: CutoffConfig,
    blocks: Vec<SectorBlock>,
}

impl BsUnitary {
    pub fn new(params: BeamSplitterParams, cutoff: CutoffConfig) -> Self {
        let n_max = cutoff.n_max();
        let blocks = (0..=2 * n_max)
            .map(|n_total| {
                let m_min = n_total.saturating_sub(n_max);
                let m_max = n_total.min(n_max);
                let dim = m_max - m_min + 1;
                let matrix = if dim == 1 || params.theta == 0.0 {
                    // exp of an exactly zero generator.
                    CMat::identity(dim)
                } else {
                    expm_anti_hermitian(&sector_generator(params, n_total, m_min, dim))
                };
                SectorBlock { n_total, m_min, matrix }
            })
            .collect();
        Self { params, cutoff, blocks }
    }

    pub fn params(&self) -> BeamSplitterParams {
        self.params
    }

    pub fn cutoff(&self) -> CutoffConfig {
        self.cutoff
    }

    pub fn blocks(&self) -> &[SectorBlock] {
        &self.blocks
    }

    pub fn block(&self, n_total: usize) -> Option<&SectorBlock> {
        self.blocks.get(n_total)
    }

    /// R·v on the flattened joint basis.
    pub fn apply_vector(&self, v: &[C64]) -> Vec<C64> {
        let dim = self.cutoff.dim();
        assert_eq!(v.len(), self.cutoff.joint_dim());
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for block in &self.blocks {
            let bd = block.dim();
            let mut x = vec![C64::new(0.0, 0.0); bd];
            for r in 0..bd {
                let m = block.m_min + r;
                x[r] = v[m * dim + (block.n_total - m)];
            }
            let y = block.matrix.matvec(&x);
            for r in 0..bd {
                let m = block.m_min + r;
                out[m * dim + (block.n_total - m)] = y[r];
            }
        }
        out
    }

    fn apply_to_columns(&self, m: &CMat) -> CMat {
        let rows = m.rows();
        let cols = m.cols();
        let mut out = CMat::zeros(rows, cols);
        let mut col = vec![C64::new(0.0, 0.0); rows];
        for j in 0..cols {
            for i in 0..rows {
                col[i] = m[(i, j)];
            }
            let transformed = self.apply_vector(&col);
            for i in 0..rows {
                out[(i, j)] = transformed[i];
            }
        }
        out
    }

    /// R M R† for an arbitrary operator on the flattened joint basis.
    pub fn conjugate_matrix(&self, m: &CMat) -> CMat {
        let x = self.apply_to_columns(m); // R M
        self.apply_to_columns(&x.dagger()).dagger() // (R (R M)†)† = R M R†
    }

    /// R|Ψ⟩ for pure states, R ρ R† for mixed ones. Trace and purity are
    /// preserved because every block is unitary.
    pub fn apply(&self, state: &JointState) -> JointState {
        assert_eq!(
            state.cutoff(),
            self.cutoff,
            "state was built with a different cutoff"
        );
        let dim = self.cutoff.dim();
        let result = match state.grid() {
            Some(grid) => {
                let flat: Vec<C64> = (0..self.cutoff.joint_dim())
                    .map(|k| grid[(k / dim, k % dim)])
                    .collect();
                let rotated = self.apply_vector(&flat);
                let grid = CMat::from_fn(dim, dim, |m, n| rotated[m * dim + n]);
                JointState::pure_from_grid(grid, self.cutoff)
            }
            None => {
                let rho = state.density();
                JointState::mixed_from_density(self.conjugate_matrix(&rho), self.cutoff)
            }
        };
        let mut out = result.expect("unitary application preserves state validity");
        out.set_leakage(state.leakage());
        out
    }

    /// Worst unitarity defect over all blocks.
    pub fn unitarity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.matrix.unitarity_defect())
            .fold(0.0, f64::max)
    }
}

/// Builds the block-diagonal beam-splitter unitary.
pub fn bs_unitary(params: BeamSplitterParams, cutoff: CutoffConfig) -> BsUnitary {
    BsUnitary::new(params, cutoff)
}

/// Applies a beam splitter to a state. For sweeps over many states at fixed
/// angles, build the [`BsUnitary`] once and call [`BsUnitary::apply`].
pub fn apply_bs(state: &JointState, params: BeamSplitterParams) -> JointState {
    BsUnitary::new(params, state.cutoff()).apply(state)
}

/// Closed-form coefficients of R|N,0⟩ = Σ_m c_m |m, N−m⟩:
/// c_m = √(N choose m) cos^m(θ/2) sin^{N−m}(θ/2) e^{iφ(N−m)}.
pub fn rotated_fock_coefficients(n_total: usize, theta: f64, phi: f64) -> Vec<C64> {
    let half = theta / 2.0;
    let (cos, sin) = (half.cos(), half.sin());
    (0..=n_total)
        .map(|m| {
            let magnitude = binomial(n_total, m).sqrt()
                * cos.powi(m as i32)
                * sin.powi((n_total - m) as i32);
            C64::from_polar(1.0, phi * (n_total - m) as f64) * magnitude
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Closed-form sector block from the SU(2) (Wigner small-d) rotation matrix:
/// entry (m', m) = e^{iφ(m−m')} d^j_{m'−j, m−j}(θ) with j = N/2.
///
/// This is the optional fast path; [`BsUnitary`] built from dense sector
/// exponentials is the normative construction and the oracle this is tested
/// against. Only complete sectors (N ≤ n_max) have a closed form.
pub fn closed_form_sector_block(n_total: usize, params: BeamSplitterParams) -> CMat {
    let n = n_total;
    let half = params.theta / 2.0;
    let (cos, sin) = (half.cos(), half.sin());
    let lnf: Vec<f64> = (0..=n).map(ln_factorial).collect();
    CMat::from_fn(n + 1, n + 1, |mp, m| {
        // d^j_{μ'μ}(θ) summed over s with integer photon-number labels:
        // j+m ↦ m, j−m ↦ N−m, μ'−μ ↦ mp−m.
        let s_min = m.saturating_sub(mp);
        let s_max = m.min(n - mp);
        if s_min > s_max {
            return C64::new(0.0, 0.0);
        }
        let pref = 0.5 * (lnf[mp] + lnf[n - mp] + lnf[m] + lnf[n - m]);
        let mut d = 0.0f64;
        for s in s_min..=s_max {
            // (−1)^{mp−m+s}, exponents 2j+m−m'−2s on cos and m'−m+2s on sin
            // with the labels mapped to photon numbers.
            let sign = if (mp + m + s) % 2 == 0 { 1.0 } else { -1.0 };
            let ln_den = lnf[m - s] + lnf[s] + lnf[mp + s - m] + lnf[n - mp - s];
            let cos_pow = (m - s) + (n - mp - s);
            let sin_pow = (mp + 2 * s - m) as i32;
            d += sign
                * (pref - ln_den).exp()
                * cos.powi(cos_pow as i32)
                * sin.powi(sin_pow);
        }
        C64::from_polar(1.0, params.phi * (m as f64 - mp as f64)) * d
    })
}

/// Coherent amplitudes after the beam splitter:
/// (α, β) ↦ (α cos(θ/2) − β e^{−iφ} sin(θ/2), α e^{iφ} sin(θ/2) + β cos(θ/2)).
pub fn transform_displacement(
    alpha: C64,
    beta: C64,
    params: BeamSplitterParams,
) -> (C64, C64) {
    let half = params.theta / 2.0;
    let (cos, sin) = (half.cos(), half.sin());
    let alpha_out = alpha * cos - beta * C64::from_polar(1.0, -params.phi) * sin;
    let beta_out = alpha * C64::from_polar(1.0, params.phi) * sin + beta * cos;
    (alpha_out, beta_out)
}

/// Generator coefficients of the conjugated product of squeeze operators:
/// R S_a(γ_a) ⊗ S_b(γ_b) R† = exp[(a²/2)γ_a′ + (b²/2)γ_b′ + ab·c − H.c.].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeTransformResult {
    pub gamma_a: C64,
    pub gamma_b: C64,
    /// Coefficient c = ½ sinθ (γ_a e^{−iφ} − γ_b e^{iφ}) of the two-mode
    /// term ab; zero exactly when the squeeze axes match the beam-splitter
    /// phase, γ_a = e^{2iφ} γ_b.
    pub two_mode: C64,
}

/// Heisenberg transform of a two-mode squeeze product under the beam
/// splitter. Written in terms of the matched-axis defect
/// d = γ_a − e^{2iφ}γ_b so that the matched case is a floating-point fixed
/// point:
///   γ_a′ = γ_a − sin²(θ/2)·d
///   γ_b′ = γ_b + sin²(θ/2)·e^{−2iφ}·d
///   two_mode = ½ sin(θ)·e^{−iφ}·d
pub fn transform_squeeze(
    gamma_a: C64,
    gamma_b: C64,
    params: BeamSplitterParams,
) -> SqueezeTransformResult {
    let half = params.theta / 2.0;
    let sin_sq = half.sin() * half.sin();
    let phase2 = C64::from_polar(1.0, 2.0 * params.phi);
    let d = gamma_a - phase2 * gamma_b;
    SqueezeTransformResult {
        gamma_a: gamma_a - d * sin_sq,
        gamma_b: gamma_b + d * sin_sq * C64::from_polar(1.0, -2.0 * params.phi),
        two_mode: d * C64::from_polar(0.5 * params.theta.sin(), -params.phi),
    }
}

/// Two-mode quadratic generator (a²/2)γ_a + (b²/2)γ_b + ab·c − H.c. on the
/// flattened joint basis. Exponentiating it rebuilds the conjugated squeeze
/// product from the coefficients returned by [`transform_squeeze`].
pub fn two_mode_squeeze_generator(
    gamma_a: C64,
    gamma_b: C64,
    two_mode: C64,
    cutoff: CutoffConfig,
) -> CMat {
    let a = crate::states::annihilation_matrix(cutoff);
    let id = CMat::identity(cutoff.dim());
    let a_joint = CMat::kron(&a, &id);
    let b_joint = CMat::kron(&id, &a);
    let mut g = a_joint.mul(&a_joint).scale(gamma_a * 0.5);
    g.add_assign(&b_joint.mul(&b_joint).scale(gamma_b * 0.5));
    g.add_assign(&a_joint.mul(&b_joint).scale(two_mode));
    g.sub(&g.dagger())
}
