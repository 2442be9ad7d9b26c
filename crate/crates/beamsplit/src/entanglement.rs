//! Entanglement and separability diagnostics: Schmidt decomposition,
//! partial-trace purity E_p = 1 − Tr[ρ_b²], partial transpose with
//! negativity, and the closed-form small-angle predictor for the θ²
//! growth of E_p behind a weakly reflecting beam splitter.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{partial_trace, JointState, Mode, SingleModeState};
use crate::linalg::CMat;
use crate::states::{moments, Moments};

/// Schmidt values below `RANK_THRESHOLD_REL` times the largest value count as
/// truncation noise, not Schmidt content.
pub const RANK_THRESHOLD_REL: f64 = 1e-8;

/// Partial-transpose eigenvalues above −`PPT_EPS` count as positive.
pub const PPT_EPS: f64 = 1e-9;

/// Bundle of the entanglement diagnostics for one state.
#[derive(Clone, Debug, Serialize)]
pub struct EntanglementReport {
    /// 1 − Tr[ρ_b²] of the reduced state.
    pub e_p: f64,
    /// Schmidt values, descending; pure inputs only.
    pub schmidt_values: Option<Vec<f64>>,
    pub schmidt_rank: Option<usize>,
    /// (‖ρ^{T_b}‖₁ − 1)/2, the magnitude of the negative partial-transpose
    /// spectrum.
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
    pub ppt: bool,
}

/// Schmidt values (descending) and rank of a pure two-mode state.
///
/// The values are the singular values of the amplitude grid; their squares
/// sum to the squared norm.
pub fn schmidt(state: &JointState) -> Result<(Vec<f64>, usize)> {
    let grid = state.grid().ok_or(Error::MixedInput)?;
    let values = grid.singular_values();
    let rank = schmidt_rank_of(&values);
    Ok((values, rank))
}

fn schmidt_rank_of(values: &[f64]) -> usize {
    let largest = values.first().copied().unwrap_or(0.0);
    values
        .iter()
        .filter(|&&v| v > RANK_THRESHOLD_REL * largest)
        .count()
}

/// Purity entanglement E_p = 1 − Tr[ρ_b²] with ρ_b = Tr_a[ρ].
///
/// Zero for separable pure states; for mixed states it is a diagnostic, not
/// an entanglement measure.
pub fn e_p(state: &JointState) -> f64 {
    1.0 - partial_trace(state, Mode::B).purity()
}

/// Transpose of the chosen mode's indices:
/// for mode b, out[(m,n),(m′,n′)] = ρ[(m,n′),(m′,n)].
pub fn partial_transpose(state: &JointState, mode: Mode) -> CMat {
    let cutoff = state.cutoff();
    let dim = cutoff.dim();
    let rho = state.density();
    CMat::from_fn(cutoff.joint_dim(), cutoff.joint_dim(), |row, col| {
        let (m, n) = (row / dim, row % dim);
        let (mp, np) = (col / dim, col % dim);
        match mode {
            Mode::B => rho[(cutoff.flat_index(m, np), cutoff.flat_index(mp, n))],
            Mode::A => rho[(cutoff.flat_index(mp, n), cutoff.flat_index(m, np))],
        }
    })
}

/// Outcome of the Peres–Horodecki check.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NegativityResult {
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
    pub ppt: bool,
}

/// Negativity and the minimum eigenvalue of ρ^{T_b}. `ppt` holds when the
/// spectrum is nonnegative within [`PPT_EPS`].
pub fn negativity(state: &JointState) -> NegativityResult {
    let pt = partial_transpose(state, Mode::B);
    let eigenvalues = pt.eigvalsh();
    let min_pt_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
    let neg: f64 = eigenvalues.iter().filter(|&&v| v < 0.0).map(|v| -v).sum();
    NegativityResult {
        negativity: neg,
        min_pt_eigenvalue,
        ppt: min_pt_eigenvalue >= -PPT_EPS,
    }
}

/// θ² coefficient of E_p for a pure product input |ψ⟩⊗|φ⟩ behind a weakly
/// reflecting beam splitter of phase φ.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SmallThetaPrediction {
    /// A·B + (A+B)/2 − Re[e^{2iφ}·Δ²b†·Δ²a]
    pub coefficient: f64,
    /// A = ⟨a†a⟩ − ⟨a†⟩⟨a⟩
    pub a_var: f64,
    /// B = ⟨b†b⟩ − ⟨b†⟩⟨b⟩
    pub b_var: f64,
    /// Δ²b† · Δ²a
    pub cross_term: C64,
}

/// Evaluates the closed-form θ² coefficient from the first and second
/// moments of the two pure single-mode factors. With mode b in vacuum this
/// reduces to (⟨a†a⟩ − ⟨a†⟩⟨a⟩)/2.
pub fn small_theta_predict(
    a: &SingleModeState,
    b: &SingleModeState,
    phi: f64,
) -> Result<SmallThetaPrediction> {
    if !a.is_pure() || !b.is_pure() {
        return Err(Error::MixedInput);
    }
    let ma: Moments = moments(a);
    let mb: Moments = moments(b);
    let a_var = ma.centered_number();
    let b_var = mb.centered_number();
    let cross_term = mb.var_a_dag() * ma.var_a();
    let coefficient = a_var * b_var + 0.5 * (a_var + b_var)
        - (C64::from_polar(1.0, 2.0 * phi) * cross_term).re;
    Ok(SmallThetaPrediction { coefficient, a_var, b_var, cross_term })
}

/// Full diagnostic bundle; Schmidt data is included for pure inputs.
pub fn report(state: &JointState) -> EntanglementReport {
    let (schmidt_values, schmidt_rank) = match schmidt(state) {
        Ok((values, rank)) => (Some(values), Some(rank)),
        Err(_) => (None, None),
    };
    let neg = negativity(state);
    EntanglementReport {
        e_p: e_p(state),
        schmidt_values,
        schmidt_rank,
        negativity: neg.negativity,
        min_pt_eigenvalue: neg.min_pt_eigenvalue,
        ppt: neg.ppt,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{tensor, CutoffConfig};
    use crate::optics::{apply_bs, rotated_fock_coefficients, BeamSplitterParams};
    use crate::states;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cutoff(n_max: usize) -> CutoffConfig {
        CutoffConfig::with_default_tol(n_max).unwrap()
    }

    fn params(theta: f64, phi: f64) -> BeamSplitterParams {
        BeamSplitterParams::new(theta, phi).unwrap()
    }

    fn bell_like(co: CutoffConfig) -> JointState {
        let mut grid = CMat::zeros(co.dim(), co.dim());
        grid[(1, 0)] = c(FRAC_1_SQRT_2, 0.0);
        grid[(0, 1)] = c(FRAC_1_SQRT_2, 0.0);
        JointState::pure_from_grid(grid, co).unwrap()
    }

    #[test]
    fn schmidt_of_product_state_has_rank_one() {
        let co = cutoff(15);
        let state = tensor(
            &states::coherent(c(0.6, 0.1), co).unwrap(),
            &states::fock(1, co).unwrap(),
        )
        .unwrap();
        let (_, rank) = schmidt(&state).unwrap();
        assert_eq!(rank, 1);
        assert!(e_p(&state).abs() < 1e-10);
    }

    #[test]
    fn schmidt_of_bell_like_state() {
        let co = cutoff(2);
        let (values, rank) = schmidt(&bell_like(co)).unwrap();
        assert_eq!(rank, 2);
        assert!((values[0] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((values[1] - FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn schmidt_rejects_mixed_input() {
        let co = cutoff(20);
        let th = states::thermal(0.2, co).unwrap();
        let joint = tensor(&th, &th).unwrap();
        assert!(matches!(schmidt(&joint), Err(Error::MixedInput)));
    }

    #[test]
    fn rotated_fock_schmidt_values_match_coefficients() {
        let co = cutoff(8);
        let (theta, phi) = (PI / 3.0, 0.7);
        for n_total in 1..=5 {
            let input = tensor(
                &states::fock(n_total, co).unwrap(),
                &states::fock(0, co).unwrap(),
            )
            .unwrap();
            let rotated = apply_bs(&input, params(theta, phi));
            let (values, rank) = schmidt(&rotated).unwrap();
            assert_eq!(rank, n_total + 1, "Schmidt rank at N = {n_total}");
            let mut expected: Vec<f64> = rotated_fock_coefficients(n_total, theta, phi)
                .iter()
                .map(|z| z.norm())
                .collect();
            expected.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for (v, e) in values.iter().zip(&expected) {
                assert!((v - e).abs() < 1e-10, "value {v} vs coefficient {e}");
            }
        }
    }

    #[test]
    fn e_p_of_bell_like_state_is_half() {
        let co = cutoff(2);
        assert!((e_p(&bell_like(co)) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn e_p_of_rotated_coherent_product_stays_zero() {
        let co = cutoff(25);
        let input = tensor(
            &states::coherent(c(0.8, 0.0), co).unwrap(),
            &states::coherent(c(0.0, -0.5), co).unwrap(),
        )
        .unwrap();
        for theta in [0.0, 0.4, PI / 2.0, 2.4] {
            let rotated = apply_bs(&input, params(theta, 0.9));
            assert!(e_p(&rotated) < 1e-10, "θ = {theta}");
        }
    }

    #[test]
    fn e_p_equals_schmidt_route_for_pure_states() {
        // Dual route: 1 − Σ v_k⁴ from the Schmidt values must agree with the
        // partial-trace purity.
        let co = cutoff(10);
        let input = tensor(
            &states::fock(2, co).unwrap(),
            &states::coherent(c(0.4, 0.3), co).unwrap(),
        )
        .unwrap();
        let rotated = apply_bs(&input, params(1.2, 0.3));
        let (values, _) = schmidt(&rotated).unwrap();
        let via_schmidt = 1.0 - values.iter().map(|v| v.powi(4)).sum::<f64>();
        assert!((e_p(&rotated) - via_schmidt).abs() < 1e-10);
    }

    #[test]
    fn partial_transpose_of_product_state_is_psd() {
        let co = cutoff(22);
        let th = states::thermal(0.3, co).unwrap();
        let coh = states::coherent(c(0.5, 0.0), co).unwrap();
        let joint = tensor(&coh, &th).unwrap();
        let pt = partial_transpose(&joint, Mode::B);
        // For a product state the partial transpose is ρ_a ⊗ ρ_b^T.
        let expected = CMat::kron(&coh.density(), &th.density().transpose());
        assert!(pt.sub(&expected).max_abs() < 1e-14);
        let min_ev = pt.eigvalsh()[0];
        assert!(min_ev > -1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let co = cutoff(4);
        let state = apply_bs(&bell_like(co), params(0.7, 1.1));
        let rho = state.density();
        let pt = partial_transpose(&state, Mode::B);
        // Transposing the same mode again restores the density matrix.
        let dim = co.dim();
        let ptpt = CMat::from_fn(co.joint_dim(), co.joint_dim(), |row, col| {
            let (m, n) = (row / dim, row % dim);
            let (mp, np) = (col / dim, col % dim);
            pt[(co.flat_index(m, np), co.flat_index(mp, n))]
        });
        assert!(ptpt.sub(&rho).max_abs() < 1e-15);
    }

    #[test]
    fn bell_like_negativity_is_half() {
        let co = cutoff(2);
        let result = negativity(&bell_like(co));
        assert!((result.negativity - 0.5).abs() < 1e-12);
        assert!((result.min_pt_eigenvalue + 0.5).abs() < 1e-12);
        assert!(!result.ppt);
    }

    #[test]
    fn product_state_negativity_vanishes() {
        let co = cutoff(20);
        let joint = tensor(
            &states::coherent(c(0.4, 0.0), co).unwrap(),
            &states::thermal(0.2, co).unwrap(),
        )
        .unwrap();
        let result = negativity(&joint);
        assert!(result.negativity < 1e-11);
        assert!(result.ppt);
    }

    #[test]
    fn small_theta_examples() {
        let co = cutoff(25);
        let coh_a = states::coherent(c(0.9, 0.2), co).unwrap();
        let coh_b = states::coherent(c(-0.4, 0.1), co).unwrap();
        let pred = small_theta_predict(&coh_a, &coh_b, 0.6).unwrap();
        assert!(pred.coefficient.abs() < 1e-10);

        let one = states::fock(1, co).unwrap();
        let vac = states::fock(0, co).unwrap();
        let pred = small_theta_predict(&one, &vac, 0.0).unwrap();
        assert!((pred.coefficient - 0.5).abs() < 1e-12);
    }

    #[test]
    fn small_theta_vanishes_for_matched_squeezing() {
        let co = cutoff(40);
        let phi = 0.8;
        let gamma = c(0.35, 0.0);
        let a = states::displaced_squeezed(c(0.5, 0.1), gamma, co).unwrap();
        let b = states::displaced_squeezed(
            c(-0.2, 0.3),
            gamma * C64::from_polar(1.0, -2.0 * phi),
            co,
        )
        .unwrap();
        let pred = small_theta_predict(&a, &b, phi).unwrap();
        assert!(pred.coefficient.abs() < 1e-10, "coefficient {}", pred.coefficient);
    }

    #[test]
    fn small_theta_rejects_mixed_input() {
        let co = cutoff(20);
        let th = states::thermal(0.2, co).unwrap();
        let vac = states::fock(0, co).unwrap();
        assert!(matches!(
            small_theta_predict(&th, &vac, 0.0),
            Err(Error::MixedInput)
        ));
    }

    #[test]
    fn report_for_vacuum() {
        let co = cutoff(3);
        let vac = tensor(
            &states::fock(0, co).unwrap(),
            &states::fock(0, co).unwrap(),
        )
        .unwrap();
        let rep = report(&vac);
        assert!(rep.e_p.abs() < 1e-14);
        assert_eq!(rep.schmidt_rank, Some(1));
        assert!(rep.negativity < 1e-13);
        assert!(rep.ppt);
    }

    #[test]
    fn report_rank_for_rotated_two_photon_state() {
        let co = cutoff(4);
        let input = tensor(
            &states::fock(2, co).unwrap(),
            &states::fock(0, co).unwrap(),
        )
        .unwrap();
        let rep = report(&apply_bs(&input, params(PI / 3.0, 0.0)));
        assert_eq!(rep.schmidt_rank, Some(3));
        assert!(!rep.ppt);
    }

    #[test]
    fn report_of_unpolarized_state_is_rotation_invariant() {
        let co = cutoff(6);
        let unpol = states::unpolarized(&states::UnpolarizedSpec::single_sector(2), co).unwrap();
        let before = report(&unpol);
        let after = report(&apply_bs(&unpol, params(1.3, 0.4)));
        assert!((before.e_p - after.e_p).abs() < 1e-12);
        assert!((before.negativity - after.negativity).abs() < 1e-10);
        assert_eq!(before.ppt, after.ppt);
    }
}
