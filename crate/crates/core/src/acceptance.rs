//! Self-check suite: every release-gating numerical claim, runnable from
//! the CLI (`chent check`) and from the `acceptance` integration test.
//!
//! Each criterion pins its tolerances in code and reports the worst
//! deviation it saw, so a failure message says how far off the build is,
//! not just that it failed.

use num_complex::Complex64;

use crate::bosonic::{constrained_entropy, unconstrained_entropy, BosonicChannel};
use crate::channel::{random_channel, standard_channel, KrausChannel, StandardChannel};
use crate::divergence::{
    adversarial_divergence, choi_divergence, generalized_channel_divergence, DivergenceKind,
};
use crate::engine::{
    cb_one_to_alpha_norm, channel_entropy, closed_form_entropy, conditional_output_entropy,
    conditional_output_entropy_gradient, min_entropy_channel, renyi_channel_entropy,
    ClosedFormEntropy,
};
use crate::entropy::{
    petz_conditional_optimized, petz_renyi, relative_entropy, sandwiched_renyi, von_neumann_entropy,
};
use crate::linalg::{hermitian_eig, kron, ComplexMatrix};
use crate::opt::{finite_difference_gradient, FD_STEP};
use crate::policy::NumericPolicy;
use crate::rng::{random_density, rng_for};
use crate::superchannel::{make_superchannel, SuperchannelSpec};
use crate::Result;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed vs. the tolerance, or the error message.
    pub detail: String,
}

impl CriterionResult {
    fn evaluate(id: usize, name: &'static str, worst: f64, tol: f64) -> Self {
        CriterionResult {
            id,
            name,
            passed: worst <= tol,
            detail: format!("worst deviation {worst:.3e} (tolerance {tol:.1e})"),
        }
    }

    fn from_error(id: usize, name: &'static str, err: &crate::Error) -> Self {
        CriterionResult {
            id,
            name,
            passed: false,
            detail: format!("errored: {err}"),
        }
    }
}

fn guard(
    id: usize,
    name: &'static str,
    f: impl FnOnce() -> Result<CriterionResult>,
) -> CriterionResult {
    match f() {
        Ok(r) => r,
        Err(e) => CriterionResult::from_error(id, name, &e),
    }
}

/// Run the full acceptance suite with the given policy. Returns one result
/// per criterion, in order.
pub fn run_all(policy: &NumericPolicy) -> Vec<CriterionResult> {
    vec![
        guard(1, "closed-form finite-dimensional entropies", || {
            c1_closed_forms(policy)
        }),
        guard(2, "dimension saturation", || {
            c2_dimension_saturation(policy)
        }),
        guard(3, "reduction to states", || c3_reduction_to_states(policy)),
        guard(4, "additivity", || c4_additivity(policy)),
        guard(5, "Rényi bridge to min-entropy", || {
            c5_renyi_bridge(policy)
        }),
        guard(6, "completely bounded norm relation", || c6_cb_norm(policy)),
        guard(7, "divergence collapses", || {
            c7_divergence_collapses(policy)
        }),
        guard(8, "superchannel monotonicity", || {
            c8_superchannel_monotonicity(policy)
        }),
        guard(9, "bosonic formulas", || c9_bosonic(policy)),
        guard(10, "property suites", || c10_property_suites(policy)),
    ]
}

fn c1_closed_forms(policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    let mut check = |ch: &KrausChannel, expected: f64| -> Result<()> {
        let got = channel_entropy(ch, policy)?.value;
        worst = worst.max((got - expected).abs());
        Ok(())
    };

    for d in [2usize, 3] {
        for p in [0.0, 0.3, 0.5, 1.0] {
            let ch = standard_channel(&StandardChannel::Erasure { d, p })?;
            check(
                &ch,
                closed_form_entropy(&ClosedFormEntropy::Erasure { d, p })?,
            )?;
        }
    }
    // Three probability vectors per dephasing dimension.
    let prob_sets: [&[f64]; 6] = [
        &[0.5, 0.5],
        &[0.9, 0.1],
        &[0.75, 0.25],
        &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        &[0.2, 0.3, 0.5],
        &[0.6, 0.25, 0.15],
    ];
    for probs in prob_sets {
        let probs = probs.to_vec();
        let ch = standard_channel(&StandardChannel::Dephasing {
            probs: probs.clone(),
        })?;
        check(
            &ch,
            closed_form_entropy(&ClosedFormEntropy::Dephasing { probs })?,
        )?;
    }
    for d in [2usize, 3, 4] {
        let ch = standard_channel(&StandardChannel::WernerHolevo { d })?;
        check(
            &ch,
            closed_form_entropy(&ClosedFormEntropy::WernerHolevo { d })?,
        )?;
    }
    for d in [2usize, 3] {
        for p in [0.0, 0.5, 1.0] {
            let ch = standard_channel(&StandardChannel::Depolarizing { d, p })?;
            check(
                &ch,
                closed_form_entropy(&ClosedFormEntropy::Depolarizing { d, p })?,
            )?;
        }
    }
    Ok(CriterionResult::evaluate(
        1,
        "closed-form finite-dimensional entropies",
        worst,
        1e-5,
    ))
}

fn c2_dimension_saturation(policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    for d in [2usize, 3] {
        let id = standard_channel(&StandardChannel::Identity { d })?;
        let h = channel_entropy(&id, policy)?.value;
        worst = worst.max((h + (d as f64).log2()).abs());

        let r = standard_channel(&StandardChannel::Randomizing { d_in: d, d_out: d })?;
        let h = channel_entropy(&r, policy)?.value;
        worst = worst.max((h - (d as f64).log2()).abs());
    }
    Ok(CriterionResult::evaluate(
        2,
        "dimension saturation",
        worst,
        1e-6,
    ))
}

fn c3_reduction_to_states(policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    for i in 0..10u64 {
        let mut rng = rng_for(policy.seed, 300 + i);
        let d = if i % 2 == 0 { 2 } else { 3 };
        let sigma = random_density(d, &mut rng);
        let ch = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: sigma.clone(),
        })?;
        let spectrum = hermitian_eig(&sigma)?.eigenvalues;

        let h = channel_entropy(&ch, policy)?.value;
        worst = worst.max((h - von_neumann_entropy(&sigma, policy.eigen_cutoff)?).abs());

        for alpha in [0.5, 2.0, 10.0] {
            let h = renyi_channel_entropy(&ch, alpha, policy)?.value;
            let expected = spectrum
                .iter()
                .map(|l| l.max(0.0).powf(alpha))
                .sum::<f64>()
                .log2()
                / (1.0 - alpha);
            worst = worst.max((h - expected).abs());
        }

        let hmin = min_entropy_channel(&ch)?;
        let expected = -spectrum.iter().cloned().fold(0.0f64, f64::max).log2();
        worst = worst.max((hmin - expected).abs());
    }
    Ok(CriterionResult::evaluate(
        3,
        "reduction to states",
        worst,
        1e-5,
    ))
}

fn c4_additivity(policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    let mut worst_min: f64 = 0.0;
    for i in 0..5u64 {
        let mut rng = rng_for(policy.seed, 400 + i);
        let n = random_channel(2, 2, 2, &mut rng);
        let m = random_channel(2, 2, 2, &mut rng);
        let joint = n.tensor(&m);

        let h_joint = channel_entropy(&joint, policy)?.value;
        let h_n = channel_entropy(&n, policy)?.value;
        let h_m = channel_entropy(&m, policy)?.value;
        worst = worst.max((h_joint - h_n - h_m).abs());

        let min_joint = min_entropy_channel(&joint)?;
        let min_sum = min_entropy_channel(&n)? + min_entropy_channel(&m)?;
        worst_min = worst_min.max((min_joint - min_sum).abs());
    }
    if worst_min > 1e-10 {
        return Ok(CriterionResult {
            id: 4,
            name: "additivity",
            passed: false,
            detail: format!("min-entropy additivity defect {worst_min:.3e} exceeds 1e-10"),
        });
    }
    let mut result = CriterionResult::evaluate(4, "additivity", worst, 2e-4);
    result.detail = format!(
        "{} ; min-entropy defect {worst_min:.3e} (tolerance 1e-10)",
        result.detail
    );
    Ok(result)
}

fn c5_renyi_bridge(policy: &NumericPolicy) -> Result<CriterionResult> {
    let alphas = [1.1, 2.0, 5.0, 20.0, 100.0];
    let mut worst_mono: f64 = 0.0;
    let mut worst_limit: f64 = 0.0;
    for i in 0..5u64 {
        let mut rng = rng_for(policy.seed, 500 + i);
        let ch = random_channel(2, 2, 2, &mut rng);
        let mut values = Vec::new();
        for &alpha in &alphas {
            values.push(renyi_channel_entropy(&ch, alpha, policy)?.value);
        }
        for w in values.windows(2) {
            worst_mono = worst_mono.max(w[1] - w[0]);
        }
        let hmin = min_entropy_channel(&ch)?;
        worst_limit = worst_limit.max((values[alphas.len() - 1] - hmin).abs());
    }
    let passed = worst_mono <= 1e-6 && worst_limit <= 2e-2;
    Ok(CriterionResult {
        id: 5,
        name: "Rényi bridge to min-entropy",
        passed,
        detail: format!(
            "monotonicity violation {worst_mono:.3e} (tolerance 1e-6); \
             |H_100 − H_min| {worst_limit:.3e} (tolerance 2e-2)"
        ),
    })
}

fn c6_cb_norm(policy: &NumericPolicy) -> Result<CriterionResult> {
    let alpha = 2.0;
    let mut worst: f64 = 0.0;
    for i in 0..5u64 {
        let mut rng = rng_for(policy.seed, 600 + i);
        let ch = random_channel(2, 2, 2, &mut rng);
        let h = renyi_channel_entropy(&ch, alpha, policy)?.value;
        let norm = cb_one_to_alpha_norm(&ch, alpha, policy)?.value;
        let via_norm = alpha / (1.0 - alpha) * norm.log2();
        worst = worst.max((h - via_norm).abs());
    }
    Ok(CriterionResult::evaluate(
        6,
        "completely bounded norm relation",
        worst,
        1e-5,
    ))
}

fn c7_divergence_collapses(policy: &NumericPolicy) -> Result<CriterionResult> {
    let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 })?;
    let mut worst_rel: f64 = 0.0;
    let mut worst_max: f64 = 0.0;
    for i in 0..5u64 {
        let mut rng = rng_for(policy.seed, 700 + i);
        let ch = random_channel(2, 2, 2, &mut rng);

        let gen = generalized_channel_divergence(&ch, &r, DivergenceKind::Relative, None, policy)?;
        let adv = adversarial_divergence(&ch, &r, DivergenceKind::Relative, None, policy)?;
        worst_rel = worst_rel.max((gen.value - adv.value).abs());

        let hmin = min_entropy_channel(&ch)?;
        let expected = 1.0 - hmin; // log₂|B| − H_min for |B| = 2
        let adv_max = adversarial_divergence(&ch, &r, DivergenceKind::Max, None, policy)?;
        let choi_max = choi_divergence(&ch, &r, DivergenceKind::Max, None, policy.eigen_cutoff)?;
        worst_max = worst_max.max((adv_max.value - expected).abs());
        worst_max = worst_max.max((choi_max.value - expected).abs());
    }
    let passed = worst_rel <= 1e-4 && worst_max <= 1e-6;
    Ok(CriterionResult {
        id: 7,
        name: "divergence collapses",
        passed,
        detail: format!(
            "relative collapse deviation {worst_rel:.3e} (tolerance 1e-4); \
             max collapse deviation {worst_max:.3e} (tolerance 1e-6)"
        ),
    })
}

fn c8_superchannel_monotonicity(policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut rng = rng_for(policy.seed, 800);
    let base = random_channel(2, 2, 2, &mut rng);
    let h_base = channel_entropy(&base, policy)?.value;
    let mut worst_entropy: f64 = 0.0;
    for i in 0..20u64 {
        let theta = make_superchannel(
            &SuperchannelSpec::RandomUnitary {
                dim_a: 2,
                dim_b: 2,
                terms: 2 + (i % 2) as usize,
            },
            crate::rng::derive_seed(policy.seed, 810 + i),
        )?;
        let mapped = theta.apply(&base)?;
        let h = channel_entropy(&mapped, policy)?.value;
        worst_entropy = worst_entropy.max(h_base - h);
    }

    let m = random_channel(2, 2, 2, &mut rng);
    let d_base = choi_divergence(
        &base,
        &m,
        DivergenceKind::Relative,
        None,
        policy.eigen_cutoff,
    )?
    .value;
    let mut worst_choi: f64 = 0.0;
    for i in 0..20u64 {
        let theta = make_superchannel(
            &SuperchannelSpec::UnitalPreMix {
                dim_a: 2,
                dim_b: 2,
                dim_e: 2,
                dim_d: 2,
                terms: 1 + (i % 2) as usize,
            },
            crate::rng::derive_seed(policy.seed, 840 + i),
        )?;
        let mapped_n = theta.apply(&base)?;
        let mapped_m = theta.apply(&m)?;
        let d = choi_divergence(
            &mapped_n,
            &mapped_m,
            DivergenceKind::Relative,
            None,
            policy.eigen_cutoff,
        )?
        .value;
        worst_choi = worst_choi.max(d - d_base);
    }
    let passed = worst_entropy <= 1e-5 && worst_choi <= 1e-6;
    Ok(CriterionResult {
        id: 8,
        name: "superchannel monotonicity",
        passed,
        detail: format!(
            "entropy decrease {worst_entropy:.3e} (slack 1e-5); \
             Choi divergence increase {worst_choi:.3e} (slack 1e-6)"
        ),
    })
}

fn c9_bosonic(_policy: &NumericPolicy) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    let thermal = BosonicChannel::Thermal { eta: 0.5, n_b: 0.0 };
    worst = worst.max((unconstrained_entropy(thermal)? + 1.0).abs());
    let amp = BosonicChannel::Amplifier {
        gain: 2.0,
        n_b: 0.0,
    };
    worst = worst.max(unconstrained_entropy(amp)?.abs());
    let add = BosonicChannel::AdditiveNoise { xi: 1.0 };
    worst = worst.max((unconstrained_entropy(add)? - 1.0 / std::f64::consts::LN_2).abs());
    if worst > 1e-9 {
        return Ok(CriterionResult::evaluate(
            9,
            "bosonic formulas",
            worst,
            1e-9,
        ));
    }

    let mut worst_limit: f64 = 0.0;
    for ch in [
        BosonicChannel::Thermal { eta: 0.5, n_b: 0.3 },
        BosonicChannel::Amplifier {
            gain: 2.0,
            n_b: 0.3,
        },
        BosonicChannel::AdditiveNoise { xi: 1.0 },
    ] {
        let limit = unconstrained_entropy(ch)?;
        let at_budget = constrained_entropy(ch, 1e6)?;
        worst_limit = worst_limit.max((at_budget - limit).abs());
    }
    let passed = worst_limit <= 1e-3;
    Ok(CriterionResult {
        id: 9,
        name: "bosonic formulas",
        passed,
        detail: format!(
            "unconstrained deviation {worst:.3e} (tolerance 1e-9); \
             constrained→unconstrained gap {worst_limit:.3e} (tolerance 1e-3)"
        ),
    })
}

/// Qubit state from a Bloch vector, radially clipped into the ball.
pub fn bloch_state(v: [f64; 3]) -> ComplexMatrix {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let scale = if r > 0.9999 { 0.9999 / r } else { 1.0 };
    let (x, y, z) = (v[0] * scale, v[1] * scale, v[2] * scale);
    let mut sigma = ComplexMatrix::zeros(2, 2);
    sigma[(0, 0)] = Complex64::new((1.0 + z) / 2.0, 0.0);
    sigma[(1, 1)] = Complex64::new((1.0 - z) / 2.0, 0.0);
    sigma[(0, 1)] = Complex64::new(x / 2.0, -y / 2.0);
    sigma[(1, 0)] = Complex64::new(x / 2.0, y / 2.0);
    sigma
}

/// Maximize a function of a qubit state over the Bloch ball with a
/// deterministic grid: a coarse Fibonacci-sphere × radius sweep followed
/// by `rounds` box refinements around the incumbent (three rounds ≈ 10⁴
/// points; kinked objectives such as λ_max want a couple more).
pub fn bloch_grid_maximize(
    mut objective: impl FnMut(&ComplexMatrix) -> Result<f64>,
    rounds: usize,
) -> Result<f64> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let mut best = f64::NEG_INFINITY;
    let mut best_vec = [0.0f64; 3];
    let (radii, directions) = (10, 300);
    for j in 0..radii {
        let r = 0.999 * (j as f64 + 0.5) / radii as f64;
        for k in 0..directions {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / directions as f64;
            let ring = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            let v = [r * ring * phi.cos(), r * ring * phi.sin(), r * z];
            let value = objective(&bloch_state(v))?;
            if value > best {
                best = value;
                best_vec = v;
            }
        }
    }
    let mut width = 0.35;
    for _ in 0..rounds {
        let center = best_vec;
        let n = 13;
        for ix in 0..n {
            for iy in 0..n {
                for iz in 0..n {
                    let frac = |i: usize| (2.0 * (i as f64 + 0.5) / n as f64 - 1.0) * width;
                    let v = [
                        center[0] + frac(ix),
                        center[1] + frac(iy),
                        center[2] + frac(iz),
                    ];
                    let value = objective(&bloch_state(v))?;
                    if value > best {
                        best = value;
                        best_vec = v;
                    }
                }
            }
        }
        width *= 0.18;
    }
    Ok(best)
}

fn c10_property_suites(policy: &NumericPolicy) -> Result<CriterionResult> {
    let cutoff = policy.eigen_cutoff;

    // Analytic gradient vs central finite differences at interior states.
    let mut worst_grad: f64 = 0.0;
    let mut rng = rng_for(policy.seed, 1000);
    let ch = random_channel(2, 2, 2, &mut rng);
    let comp = ch.complementary();
    let objective = |rho: &ComplexMatrix| conditional_output_entropy(&comp, rho, cutoff);
    for _ in 0..10 {
        let rho = random_density(2, &mut rng);
        let analytic = conditional_output_entropy_gradient(&comp, &rho, cutoff)?;
        let fd = finite_difference_gradient(&objective, &rho, FD_STEP)?;
        worst_grad = worst_grad.max(analytic.sub(&fd).max_abs());
    }

    // Sibson closed form vs a dense Bloch-ball grid (10⁴ points).
    let mut worst_sibson: f64 = 0.0;
    let alpha = 2.0;
    for i in 0..2u64 {
        let mut srng = rng_for(policy.seed, 1010 + i);
        let rho = random_density(4, &mut srng);
        let closed = petz_conditional_optimized(&rho, &[2, 2], 1, alpha, cutoff)?;
        let best = bloch_grid_maximize(
            |sigma| {
                let full = kron(&ComplexMatrix::identity(2), sigma);
                Ok(-petz_renyi(&rho, &full, alpha, cutoff)?.value)
            },
            3,
        )?;
        // The grid can only undershoot the true optimum.
        worst_sibson = worst_sibson.max(closed - best);
        worst_sibson = worst_sibson.max(best - closed - 1e-9);
    }

    // Data-processing spot checks under a random channel.
    let mut worst_dp: f64 = 0.0;
    let mut drng = rng_for(policy.seed, 1020);
    for _ in 0..3 {
        let n = random_channel(2, 2, 2, &mut drng);
        let rho = random_density(2, &mut drng);
        let sigma = random_density(2, &mut drng);
        let out_rho = n.apply_raw(&rho);
        let out_sigma = n.apply_raw(&sigma);
        let before = relative_entropy(&rho, &sigma, cutoff)?.value;
        let after = relative_entropy(&out_rho, &out_sigma, cutoff)?.value;
        worst_dp = worst_dp.max(after - before);
        for a in [0.5, 0.9, 2.0, 50.0] {
            let before = sandwiched_renyi(&rho, &sigma, a, cutoff)?.value;
            let after = sandwiched_renyi(&out_rho, &out_sigma, a, cutoff)?.value;
            worst_dp = worst_dp.max(after - before);
        }
        for a in [0.5, 0.9, 1.5, 2.0] {
            let before = petz_renyi(&rho, &sigma, a, cutoff)?.value;
            let after = petz_renyi(&out_rho, &out_sigma, a, cutoff)?.value;
            worst_dp = worst_dp.max(after - before);
        }
    }

    // Frank–Wolfe gap certificates on concave runs.
    let mut worst_gap: f64 = 0.0;
    let mut all_converged = true;
    let concave_cases = [
        standard_channel(&StandardChannel::Identity { d: 2 })?,
        standard_channel(&StandardChannel::Erasure { d: 2, p: 0.3 })?,
        standard_channel(&StandardChannel::Depolarizing { d: 3, p: 0.5 })?,
        random_channel(2, 3, 2, &mut rng_for(policy.seed, 1030)),
    ];
    for ch in &concave_cases {
        let report = channel_entropy(ch, policy)?;
        all_converged &= report.converged;
        if let Some(gap) = report.fw_gap {
            worst_gap = worst_gap.max(gap);
        }
    }

    let passed = worst_grad <= 1e-5
        && worst_sibson <= 2e-4
        && worst_dp <= 1e-9
        && all_converged
        && worst_gap <= policy.opt_tol;
    Ok(CriterionResult {
        id: 10,
        name: "property suites",
        passed,
        detail: format!(
            "gradient dev {worst_grad:.3e} (1e-5); Sibson vs grid {worst_sibson:.3e} (2e-4); \
             DP violation {worst_dp:.3e} (1e-9); FW gap {worst_gap:.3e} (≤ {:.1e}, all converged: {})",
            policy.opt_tol, all_converged
        ),
    })
}
