//! Claim suite: one named, independently runnable check per analytic
//! expectation about beam-splitter entanglement, each with a pinned
//! tolerance, a fixed seed, and a negative control where one exists. Results
//! serialize to a JSON manifest.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::{e_p, negativity, schmidt, small_theta_predict};
use crate::error::Result;
use crate::fock::{tensor, trace_distance, CutoffConfig, JointState};
use crate::linalg::CMat;
use crate::optics::{apply_bs, rotated_fock_coefficients, BeamSplitterParams};
use crate::states::{
    self, classical_coherent_mixture, displaced_number_mixture, laser_average,
    matched_squeezed_pair, thermal, unpolarized, unpolarized_separable_decomposition,
    FamilySample, UnpolarizedSpec,
};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Outcome of one claim check.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    /// What the check asserts, in words.
    pub anchor: String,
    /// Worst observed value of the claim's figure of merit.
    pub metric: f64,
    pub threshold: f64,
    pub pass: bool,
    pub runtime_ms: u128,
    pub seed: u64,
}

/// Knobs for the claim suite. Defaults reproduce the documented grids; the
/// CLI can override them from a JSON config.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Hard upper bound on the per-mode photon cutoff.
    pub cutoff_cap: usize,
    /// Target truncation leakage per constructed input state.
    pub leakage_target: f64,
    /// Target truncation leakage for partial-transpose eigenvalue claims.
    /// The PT spectrum amplifies truncation weight w to negative eigenvalues
    /// of order √w, so clearing a −1e−10 bound needs w ≲ (1e−10/5)².
    pub pt_leakage_target: f64,
    /// Finite-difference step for the small-angle law.
    pub fd_step: f64,
    /// Points per axis in (θ, φ) separability grids.
    pub grid_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 2026,
            cutoff_cap: 60,
            leakage_target: 1e-12,
            pt_leakage_target: 4e-22,
            fd_step: 1e-3,
            grid_points: 5,
        }
    }
}

fn params(theta: f64, phi: f64) -> BeamSplitterParams {
    BeamSplitterParams::new(theta, phi).expect("finite angles")
}

/// One D(α)S(γ)|m⟩ factor of a product component.
type Factor = (C64, C64, usize);

/// Smallest cutoff that keeps the TOTAL-photon-number tail of every listed
/// product component below `joint_tol`, capped. Beam splitters conserve
/// total photon number, so the joint sector tail — not the per-mode
/// marginals — bounds the error a rotation can introduce. The config
/// tolerance is widened to the measured per-mode tails when the cap binds.
fn capped_cutoff(
    pairs: &[(Factor, Factor)],
    joint_tol: f64,
    cap: usize,
) -> Result<CutoffConfig> {
    let floor = (joint_tol * 1e-4).max(1e-28);
    let mut n_max = 1usize;
    for &((alpha_a, gamma_a, m_a), (alpha_b, gamma_b, m_b)) in pairs {
        let pa = states::photon_distribution(alpha_a, gamma_a, m_a, floor);
        let pb = states::photon_distribution(alpha_b, gamma_b, m_b, floor);
        let mut total = vec![0.0f64; pa.len() + pb.len() - 1];
        for (i, &x) in pa.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in pb.iter().enumerate() {
                total[i + j] += x * y;
            }
        }
        let mut tail = 0.0;
        let mut needed = total.len();
        for k in (0..total.len()).rev() {
            if tail <= joint_tol {
                needed = k;
            }
            tail += total[k];
        }
        n_max = n_max.max(needed.min(cap));
    }
    let worst_mode_tail: f64 = pairs
        .iter()
        .flat_map(|&(fa, fb)| [fa, fb])
        .map(|(alpha, gamma, m)| states::measured_tail(alpha, gamma, m, n_max))
        .fold(0.0, f64::max);
    let tol = 1e-12f64.max(4.0 * worst_mode_tail);
    CutoffConfig::new(n_max, tol)
}

fn run_claim(
    claim_id: &str,
    anchor: &str,
    threshold: f64,
    seed: u64,
    body: impl FnOnce() -> Result<(f64, bool)>,
) -> ClaimResult {
    let start = Instant::now();
    let (metric, controls_ok) = match body() {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("  {claim_id}: aborted: {err}");
            (f64::INFINITY, false)
        }
    };
    ClaimResult {
        claim_id: claim_id.to_string(),
        anchor: anchor.to_string(),
        metric,
        threshold,
        pass: metric <= threshold && controls_ok,
        runtime_ms: start.elapsed().as_millis(),
        seed,
    }
}

/// Rotating |N,0⟩ produces Schmidt rank N+1 with Schmidt values equal to the
/// magnitudes of the closed-form expansion coefficients.
pub fn claim_schmidt_rank(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "schmidt_rank",
        "rotated |N,0> has Schmidt rank N+1 with closed-form Schmidt values",
        1e-10,
        config.seed,
        || {
            let cutoff = CutoffConfig::new(8, config.leakage_target)?;
            let (theta, phi) = (PI / 3.0, 0.7);
            let mut worst = 0.0f64;
            let mut ranks_ok = true;
            for n_total in 0..=5usize {
                let input = tensor(
                    &states::fock(n_total, cutoff)?,
                    &states::fock(0, cutoff)?,
                )?;
                let rotated = apply_bs(&input, params(theta, phi));
                let (values, rank) = schmidt(&rotated)?;
                ranks_ok &= rank == n_total + 1;
                let mut expected: Vec<f64> = rotated_fock_coefficients(n_total, theta, phi)
                    .iter()
                    .map(|z| z.norm())
                    .collect();
                expected.sort_by(|x, y| y.partial_cmp(x).unwrap());
                for (v, e) in values.iter().zip(&expected) {
                    worst = worst.max((v - e).abs());
                }
            }
            Ok((worst, ranks_ok))
        },
    )
}

/// E_p grows as θ² with the closed-form coefficient
/// AB + (A+B)/2 − Re[e^{2iφ}Δ²b†Δ²a], checked against centered finite
/// differences of the exact E_p(θ).
pub fn claim_small_theta_law(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "small_theta_law",
        "theta^2 coefficient of E_p matches the moment formula",
        1e-3,
        config.seed,
        || {
            let cutoff = CutoffConfig::new(32, config.leakage_target)?;
            let inputs: Vec<(&str, crate::SingleModeState, crate::SingleModeState)> = vec![
                (
                    "fock2-vacuum",
                    states::fock(2, cutoff)?,
                    states::fock(0, cutoff)?,
                ),
                (
                    "coherent-fock1",
                    states::coherent(C64::new(1.0, 0.0), cutoff)?,
                    states::fock(1, cutoff)?,
                ),
                (
                    "squeezed-squeezed",
                    states::squeezed_vacuum(C64::new(0.4, 0.0), cutoff)?,
                    states::squeezed_vacuum(C64::from_polar(0.2, 0.3), cutoff)?,
                ),
                (
                    "displaced-squeezed-coherent",
                    states::displaced_squeezed(C64::new(1.0, 0.0), C64::new(0.3, 0.0), cutoff)?,
                    states::coherent(C64::new(0.0, 0.5), cutoff)?,
                ),
            ];
            let h = config.fd_step;
            let mut worst_rel = 0.0f64;
            let mut small_ok = true;
            for (_, a, b) in &inputs {
                for phi in [0.0, 0.9] {
                    let joint = tensor(a, b)?;
                    let fd = quadratic_coefficient(&joint, phi, h);
                    let predicted = small_theta_predict(a, b, phi)?.coefficient;
                    if predicted.abs() > 1e-6 {
                        worst_rel = worst_rel.max((fd - predicted).abs() / predicted.abs());
                    } else {
                        small_ok &= (fd - predicted).abs() < 1e-8;
                    }
                }
            }
            // Coherent inputs on both ports: coefficient vanishes both ways.
            let coh_a = states::coherent(C64::new(0.7, 0.3), cutoff)?;
            let coh_b = states::coherent(C64::new(-0.2, 0.4), cutoff)?;
            let joint = tensor(&coh_a, &coh_b)?;
            for phi in [0.0, 0.9] {
                let fd = quadratic_coefficient(&joint, phi, h);
                let predicted = small_theta_predict(&coh_a, &coh_b, phi)?.coefficient;
                small_ok &= fd.abs() < 1e-8 && predicted.abs() < 1e-8;
            }
            // Vacuum-port special case: coefficient 1/2 for a single photon.
            let one = states::fock(1, cutoff)?;
            let vac = states::fock(0, cutoff)?;
            let pred = small_theta_predict(&one, &vac, 0.0)?.coefficient;
            small_ok &= (pred - 0.5).abs() < 1e-12;
            Ok((worst_rel, small_ok))
        },
    )
}

/// Centered five-point estimate of d²E_p/dθ²|₀ / 2.
fn quadratic_coefficient(joint: &JointState, phi: f64, h: f64) -> f64 {
    let f = |theta: f64| e_p(&apply_bs(joint, params(theta, phi)));
    (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (24.0 * h * h)
}

/// Matched-squeezed displaced pairs stay separable at the matching
/// beam-splitter phase for every reflectivity; a mismatched pair does not.
pub fn claim_matched_squeeze_separable(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "matched_squeeze_separable",
        "squeeze axes matched to the splitter phase generate no entanglement",
        1e-9,
        config.seed,
        || {
            let alpha = C64::new(1.0, 0.5);
            let beta = C64::new(-0.3, 0.0);
            let thetas = [PI / 7.0, PI / 3.0, PI / 2.0, 2.0];
            let mut worst_ep = 0.0f64;
            let mut worst_neg = 0.0f64;
            for r in [0.2, 0.5, 0.8] {
                let gamma = C64::new(r, 0.0);
                for phi in [0.0, PI / 5.0] {
                    let gamma_b = gamma * C64::from_polar(1.0, -2.0 * phi);
                    let cutoff = capped_cutoff(
                        &[((alpha, gamma, 0), (beta, gamma_b, 0))],
                        config.leakage_target,
                        config.cutoff_cap,
                    )?;
                    let pair = matched_squeezed_pair(alpha, beta, gamma, phi, cutoff)?;
                    for theta in thetas {
                        let rotated = apply_bs(&pair, params(theta, phi));
                        worst_ep = worst_ep.max(e_p(&rotated).abs());
                        worst_neg = worst_neg.max(negativity(&rotated).negativity);
                    }
                }
            }
            // Negative control: same squeeze parameter on both modes is
            // mismatched at φ = π/5 and must entangle.
            let phi = PI / 5.0;
            let gamma = C64::new(0.5, 0.0);
            let cutoff = capped_cutoff(
                &[((alpha, gamma, 0), (beta, gamma, 0))],
                config.leakage_target,
                config.cutoff_cap,
            )?;
            let mismatched = tensor(
                &states::displaced_squeezed(alpha, gamma, cutoff)?,
                &states::displaced_squeezed(beta, gamma, cutoff)?,
            )?;
            let control = e_p(&apply_bs(&mismatched, params(PI / 3.0, phi)));
            eprintln!(
                "  matched_squeeze_separable: worst E_p {worst_ep:.3e}, worst negativity \
                 {worst_neg:.3e}, mismatched control E_p {control:.3e}"
            );
            // The negativity bound is kept as stated even though the PT
            // spectrum of a truncated state floors at ~5·√(sector leakage):
            // at the r = 0.8 corner that floor sits near 1e-5 for any cutoff
            // that fits in memory, so this check documents the gap instead
            // of hiding it.
            let negativity_ok = worst_neg < 1e-9;
            Ok((worst_ep, control > 1e-4 && negativity_ok))
        },
    )
}

fn non_unpolarized_control(cutoff: CutoffConfig) -> Result<JointState> {
    // Unequal weights inside the N = 1 sector.
    let mut rho = CMat::zeros(cutoff.joint_dim(), cutoff.joint_dim());
    let k10 = cutoff.flat_index(1, 0);
    let k01 = cutoff.flat_index(0, 1);
    rho[(k10, k10)] = C64::new(0.75, 0.0);
    rho[(k01, k01)] = C64::new(0.25, 0.0);
    JointState::mixed_from_density(rho, cutoff)
}

/// SU(2)-unpolarized states pass through any beam splitter unchanged; a
/// state with unequal weights inside a sector does not.
pub fn claim_unpolarized_invariance(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "unpolarized_invariance",
        "unpolarized states are invariant under every beam splitter",
        1e-10,
        config.seed,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let cases: Vec<JointState> = vec![
                unpolarized(
                    &UnpolarizedSpec::single_sector(2),
                    CutoffConfig::new(6, config.leakage_target)?,
                )?,
                laser_average(1.0, CutoffConfig::new(20, config.leakage_target)?)?,
                unpolarized(
                    &UnpolarizedSpec::thermal_equivalent(0.7, 36),
                    CutoffConfig::new(36, config.leakage_target)?,
                )?,
            ];
            let mut worst = 0.0f64;
            for state in &cases {
                for _ in 0..3 {
                    let theta = rng.random_range(0.1..PI - 0.1);
                    let phi = rng.random_range(0.0..2.0 * PI);
                    let rotated = apply_bs(state, params(theta, phi));
                    worst = worst.max(trace_distance(&rotated, state)?);
                }
            }
            let control = non_unpolarized_control(CutoffConfig::new(4, config.leakage_target)?)?;
            let moved = trace_distance(&apply_bs(&control, params(PI / 2.0, 0.3)), &control)?;
            Ok((worst, moved > 1e-3))
        },
    )
}

/// The explicit product decomposition of an unpolarized state has weights in
/// [0,1] and reassembles the state exactly.
pub fn claim_unpolarized_separable(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "unpolarized_separable",
        "unpolarized states admit an explicit separable decomposition",
        1e-12,
        config.seed,
        || {
            let cases: Vec<(UnpolarizedSpec, CutoffConfig)> = vec![
                (
                    UnpolarizedSpec::single_sector(2),
                    CutoffConfig::new(6, config.leakage_target)?,
                ),
                (
                    UnpolarizedSpec::laser(1.0, 20),
                    CutoffConfig::new(20, config.leakage_target)?,
                ),
                (
                    UnpolarizedSpec::thermal_equivalent(0.7, 36),
                    CutoffConfig::new(36, config.leakage_target)?,
                ),
            ];
            let mut worst = 0.0f64;
            let mut weights_ok = true;
            for (spec, cutoff) in &cases {
                let decomposition = unpolarized_separable_decomposition(spec, *cutoff)?;
                let mut total = 0.0;
                for term in &decomposition.terms {
                    weights_ok &= (0.0..=1.0 + 1e-12).contains(&term.weight);
                    total += term.weight;
                }
                weights_ok &= (total - 1.0).abs() <= spec.leakage() + 1e-10;
                let rebuilt = decomposition.reassemble(*cutoff)?;
                let target = unpolarized(spec, *cutoff)?;
                worst = worst.max(trace_distance(&rebuilt, &target)?);
            }
            Ok((worst, weights_ok))
        },
    )
}

/// Equal-temperature thermal products are unpolarized; unequal temperatures
/// break the beam-splitter invariance.
pub fn claim_thermal_is_unpolarized(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "thermal_is_unpolarized",
        "equal-temperature thermal products are unpolarized states",
        1e-10,
        config.seed,
        || {
            let mut worst = 0.0f64;
            // The sector-weight form drops whole truncated sectors, so its
            // trace deficit exceeds the thermal product's; the tolerance has
            // to cover it (9.8e-12 at n̄ = 1, n_max = 40).
            for (nbar, n_max, tol) in [(0.3, 20usize, config.leakage_target), (1.0, 40, 1e-10)] {
                let cutoff = CutoffConfig::new(n_max, tol)?;
                let th = thermal(nbar, cutoff)?;
                let product = tensor(&th, &th)?;
                let unpol = unpolarized(&UnpolarizedSpec::thermal_equivalent(nbar, n_max), cutoff)?;
                worst = worst.max(trace_distance(&product, &unpol)?);
            }
            // Negative control: unequal occupations are not invariant.
            let cutoff = CutoffConfig::new(40, config.leakage_target)?;
            let product = tensor(&thermal(0.3, cutoff)?, &thermal(1.0, cutoff)?)?;
            let moved = trace_distance(&apply_bs(&product, params(PI / 2.0, 0.9)), &product)?;
            Ok((worst, moved > 1e-3))
        },
    )
}

fn family_samples() -> Vec<FamilySample> {
    vec![
        FamilySample {
            weight: 0.5,
            alpha: C64::new(0.4, 0.0),
            beta: C64::new(0.0, -0.2),
            gamma: C64::new(0.2, 0.0),
            spec: UnpolarizedSpec::single_sector(1),
        },
        FamilySample {
            weight: 0.3,
            alpha: C64::new(-0.3, 0.1),
            beta: C64::new(0.5, 0.0),
            gamma: C64::from_polar(0.15, 0.4),
            spec: UnpolarizedSpec::new(vec![1.0]).expect("vacuum spec"),
        },
        FamilySample {
            weight: 0.2,
            alpha: C64::new(0.2, 0.0),
            beta: C64::new(0.0, 0.3),
            gamma: C64::new(0.1, 0.0),
            spec: UnpolarizedSpec::single_sector(2),
        },
    ]
}

/// Displaced-number mixtures and the displaced/squeezed unpolarized convex
/// family keep a positive partial transpose across the (θ, φ) grid, while a
/// rotated single photon shows the full −1/2 violation.
pub fn claim_zero_entanglement_family(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "zero_entanglement_family",
        "displaced/squeezed unpolarized mixtures stay PPT at every splitter",
        1e-10,
        config.seed,
        || {
            let g = config.grid_points.max(5);
            let thetas: Vec<f64> = (0..g).map(|i| PI * (i + 1) as f64 / (g + 1) as f64).collect();
            let phis: Vec<f64> = (0..g).map(|j| 0.05 + 2.0 * PI * j as f64 / g as f64).collect();
            let mut min_pt = f64::INFINITY;

            // Displaced-number mixtures are phase-free: one state, full grid.
            let alpha = C64::new(0.8, 0.0);
            let beta = C64::new(0.0, -0.4);
            for n_total in 0..=3usize {
                let pairs: Vec<(Factor, Factor)> = (0..=n_total)
                    .map(|m| ((alpha, ZERO, m), (beta, ZERO, n_total - m)))
                    .collect();
                let cutoff =
                    capped_cutoff(&pairs, config.pt_leakage_target, config.cutoff_cap)?;
                let mixture = displaced_number_mixture(n_total, alpha, beta, cutoff)?;
                for &theta in &thetas {
                    for &phi in &phis {
                        let rotated = apply_bs(&mixture, params(theta, phi));
                        min_pt = min_pt.min(negativity(&rotated).min_pt_eigenvalue);
                    }
                }
            }

            // The squeezed family is tied to the splitter phase: rebuild the
            // mixture for each φ and sweep θ.
            for &phi in &phis {
                let samples = family_samples();
                let pairs: Vec<(Factor, Factor)> = samples
                    .iter()
                    .flat_map(|s| {
                        let gamma_b = s.gamma * C64::from_polar(1.0, -2.0 * phi);
                        let support = s.spec.lambdas().len() - 1;
                        (0..=support).map(move |m| {
                            ((s.alpha, s.gamma, m), (s.beta, gamma_b, support - m))
                        })
                    })
                    .collect();
                let cutoff =
                    capped_cutoff(&pairs, config.pt_leakage_target, config.cutoff_cap)?;
                let family = states::zero_entanglement_family(&samples, phi, cutoff)?;
                for &theta in &thetas {
                    let rotated = apply_bs(&family, params(theta, phi));
                    min_pt = min_pt.min(negativity(&rotated).min_pt_eigenvalue);
                }
            }

            // Entangled control: rotated single photon hits −1/2 exactly.
            let cutoff = CutoffConfig::new(4, config.leakage_target)?;
            let one_zero = tensor(&states::fock(1, cutoff)?, &states::fock(0, cutoff)?)?;
            let control = negativity(&apply_bs(&one_zero, params(PI / 2.0, 0.0)));
            let control_ok = (control.min_pt_eigenvalue + 0.5).abs() <= 1e-9;

            Ok(((-min_pt).max(0.0), control_ok))
        },
    )
}

/// Classical coherent mixtures stay PPT under random beam splitters and land
/// exactly on the coherent-amplitude transform prediction.
pub fn claim_classical_mixture_separable(config: &VerifyConfig) -> ClaimResult {
    run_claim(
        "classical_mixture_separable",
        "coherent-product mixtures stay separable and follow the amplitude transform",
        1e-9,
        config.seed,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xC1A551CA1);
            let mut draw = |limit: f64| {
                C64::new(rng.random_range(-limit..limit), rng.random_range(-limit..limit))
            };
            let raw: Vec<(f64, C64, C64)> = (0..4)
                .map(|_| (0.0, draw(0.6), draw(0.6)))
                .collect();
            let mut weights: Vec<f64> = (0..4).map(|_| rng.random_range(0.2..1.0)).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let components: Vec<(f64, C64, C64)> = raw
                .iter()
                .zip(&weights)
                .map(|(&(_, a, b), &w)| (w, a, b))
                .collect();

            let pairs: Vec<(Factor, Factor)> = components
                .iter()
                .map(|&(_, a, b)| ((a, ZERO, 0), (b, ZERO, 0)))
                .collect();
            let cutoff = capped_cutoff(&pairs, config.pt_leakage_target, config.cutoff_cap)?;
            let mixture = classical_coherent_mixture(&components, cutoff)?;

            let mut worst_distance = 0.0f64;
            let mut ppt_ok = true;
            for _ in 0..3 {
                let p = params(
                    rng.random_range(0.3..2.8),
                    rng.random_range(0.0..2.0 * PI),
                );
                let rotated = apply_bs(&mixture, p);
                ppt_ok &= negativity(&rotated).min_pt_eigenvalue >= -1e-10;
                let predicted_components: Vec<(f64, C64, C64)> = components
                    .iter()
                    .map(|&(w, a, b)| {
                        let (ap, bp) = crate::optics::transform_displacement(a, b, p);
                        (w, ap, bp)
                    })
                    .collect();
                let predicted = classical_coherent_mixture(&predicted_components, cutoff)?;
                worst_distance = worst_distance.max(trace_distance(&rotated, &predicted)?);
            }

            // Single component: the prediction is exact for one coherent pair.
            let single = classical_coherent_mixture(&[(1.0, components[0].1, components[0].2)], cutoff)?;
            let p = params(1.1, 0.8);
            let (ap, bp) = crate::optics::transform_displacement(components[0].1, components[0].2, p);
            let predicted = classical_coherent_mixture(&[(1.0, ap, bp)], cutoff)?;
            worst_distance = worst_distance.max(trace_distance(&apply_bs(&single, p), &predicted)?);

            Ok((worst_distance, ppt_ok))
        },
    )
}

/// Runs every claim, printing one line per result.
pub fn run_all(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claims: Vec<fn(&VerifyConfig) -> ClaimResult> = vec![
        claim_schmidt_rank,
        claim_small_theta_law,
        claim_matched_squeeze_separable,
        claim_unpolarized_invariance,
        claim_unpolarized_separable,
        claim_thermal_is_unpolarized,
        claim_zero_entanglement_family,
        claim_classical_mixture_separable,
    ];
    let mut results = Vec::with_capacity(claims.len());
    for claim in claims {
        let result = claim(config);
        println!(
            "{} {:<28} metric={:.3e} threshold={:.3e} ({} ms)",
            if result.pass { "PASS" } else { "FAIL" },
            result.claim_id,
            result.metric,
            result.threshold,
            result.runtime_ms
        );
        results.push(result);
    }
    results
}

/// JSON manifest for a set of claim results.
pub fn manifest_json(results: &[ClaimResult]) -> String {
    serde_json::to_string_pretty(results).expect("claim results serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_claims_pass() {
        let config = VerifyConfig::default();
        for claim in [
            claim_schmidt_rank,
            claim_small_theta_law,
            claim_unpolarized_invariance,
            claim_unpolarized_separable,
            claim_thermal_is_unpolarized,
        ] {
            let result = claim(&config);
            assert!(
                result.pass,
                "{} failed: metric {:.3e} vs threshold {:.3e}",
                result.claim_id, result.metric, result.threshold
            );
        }
    }

    #[test]
    fn manifest_is_valid_json() {
        let result = claim_schmidt_rank(&VerifyConfig::default());
        let json = manifest_json(&[result]);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["claim_id"], "schmidt_rank");
    }
}
