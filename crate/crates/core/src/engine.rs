//! Channel entropy functions.
//!
//! The von Neumann entropy of a channel is computed through the duality
//! H(N) = −sup_ρ H(B|E), where the conditional entropy of the Stinespring
//! output splits as H(B|E) = H(ρ) − H(N^c(ρ)). That objective is concave
//! with the analytic gradient −log₂ρ + (N^c)†(log₂ N^c(ρ)), so mirror
//! ascent from the maximally mixed state carries a Frank–Wolfe
//! global-optimality certificate.
//!
//! The Rényi entropy runs two routes: the reported value comes from the
//! closed-form Sibson expression for the Petz conditional entropy of the
//! complementary output at β = 1/α (outer multi-start over the input
//! state), cross-checked against the direct sandwiched conditional-entropy
//! minimization over purified inputs. The min-entropy needs no
//! optimization at all: it is −log₂ of the largest Choi eigenvalue.

use crate::channel::{covariance_check, KrausChannel};
use crate::entropy::{conditional_renyi_fixed, entropy_of_spectrum, DensityMatrix, RenyiKind};
use crate::linalg::{
    gamma_purification, hermitian_eig_unchecked, kron, partial_trace, psd_log2, psd_power,
    ComplexMatrix,
};
use crate::opt::{density_maximize, OptimizationReport};
use crate::policy::NumericPolicy;
use crate::{Error, Result};

/// H(B|E) of the Stinespring output at input ρ: H(ρ) − H(N^c(ρ)).
/// This is the concave objective behind the channel entropy.
pub fn conditional_output_entropy(
    complementary: &KrausChannel,
    rho: &ComplexMatrix,
    rel_cutoff: f64,
) -> Result<f64> {
    let env = complementary.apply_raw(rho);
    let h_in = entropy_of_spectrum(&hermitian_eig_unchecked(rho).eigenvalues, rel_cutoff);
    let h_env = entropy_of_spectrum(&hermitian_eig_unchecked(&env).eigenvalues, rel_cutoff);
    Ok(h_in - h_env)
}

/// Analytic gradient of [`conditional_output_entropy`]:
/// G(ρ) = −log₂ ρ + (N^c)†(log₂ N^c(ρ)).
pub fn conditional_output_entropy_gradient(
    complementary: &KrausChannel,
    rho: &ComplexMatrix,
    rel_cutoff: f64,
) -> Result<ComplexMatrix> {
    let env = complementary.apply_raw(rho);
    let log_env = psd_log2(&env, rel_cutoff)?;
    let pulled = complementary.apply_adjoint_raw(&log_env);
    Ok(pulled.sub(&psd_log2(rho, rel_cutoff)?))
}

/// Entropy of a channel, H(N) = −sup_ρ H(B|E); the report's value is H(N),
/// its optimizer state the maximizing input, and its Frank–Wolfe gap a
/// global-optimality certificate for the concave inner problem.
pub fn channel_entropy(
    channel: &KrausChannel,
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    channel.validate()?;
    let comp = channel.complementary();
    let cutoff = policy.eigen_cutoff;
    let objective = move |rho: &ComplexMatrix| conditional_output_entropy(&comp, rho, cutoff);
    let comp2 = channel.complementary();
    let gradient =
        move |rho: &ComplexMatrix| conditional_output_entropy_gradient(&comp2, rho, cutoff);
    let report = density_maximize(&objective, Some(&gradient), channel.dim_in, policy, true)?;
    Ok(report.negated().with_route("conditional-entropy-duality"))
}

/// The quantum channel merging capacity, C_M(N) = H(N).
pub fn channel_merging_capacity(
    channel: &KrausChannel,
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    Ok(channel_entropy(channel, policy)?.with_route("merging-capacity"))
}

/// Channel entropy via the covariant shortcut: for channels covariant with
/// respect to a one-design, the optimal input is maximally mixed, so no
/// optimization is needed. Errors unless the covariance check passes with
/// `one_design = true`.
pub fn channel_entropy_covariant(
    channel: &KrausChannel,
    input_unitaries: &[ComplexMatrix],
    output_unitaries: &[ComplexMatrix],
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    let report = covariance_check(channel, input_unitaries, output_unitaries)?;
    if !report.covariant || !report.one_design {
        return Err(Error::Validation(format!(
            "covariant shortcut requires a covariant channel and a one-design \
             (covariant: {}, one-design: {}, max Choi distance {:.3e})",
            report.covariant, report.one_design, report.max_choi_distance
        )));
    }
    let comp = channel.complementary();
    let pi = ComplexMatrix::identity(channel.dim_in).scale_re(1.0 / channel.dim_in as f64);
    let value = -conditional_output_entropy(&comp, &pi, policy.eigen_cutoff)?;
    Ok(OptimizationReport {
        value,
        optimizer_state: DensityMatrix::maximally_mixed(channel.dim_in),
        fw_gap: None,
        iterations: 0,
        restarts_used: 0,
        converged: true,
        route: "covariant-shortcut".into(),
        restart_spread: None,
        cross_check_delta: None,
    })
}

// ---------------------------------------------------------------------------
// Closed forms for the standard families
// ---------------------------------------------------------------------------

/// Binary entropy in bits, with h₂(0) = h₂(1) = 0.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// Shannon entropy of a probability vector, in bits.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Channel family selector for [`closed_form_entropy`].
#[derive(Debug, Clone)]
pub enum ClosedFormEntropy {
    Erasure { d: usize, p: f64 },
    Dephasing { probs: Vec<f64> },
    WernerHolevo { d: usize },
    Depolarizing { d: usize, p: f64 },
}

/// Closed-form channel entropies for the four standard families.
pub fn closed_form_entropy(kind: &ClosedFormEntropy) -> Result<f64> {
    match kind {
        ClosedFormEntropy::Erasure { d, p } => {
            if *d < 2 || !(0.0..=1.0).contains(p) {
                return Err(Error::Validation(
                    "erasure needs d ≥ 2 and p ∈ [0,1]".into(),
                ));
            }
            Ok(binary_entropy(*p) + (p - 1.0) * (*d as f64).log2())
        }
        ClosedFormEntropy::Dephasing { probs } => {
            let total: f64 = probs.iter().sum();
            if probs.is_empty() || probs.iter().any(|&p| p < 0.0) || (total - 1.0).abs() > 1e-10 {
                return Err(Error::Validation(
                    "dephasing needs a probability vector".into(),
                ));
            }
            Ok(shannon_entropy(probs) - (probs.len() as f64).log2())
        }
        ClosedFormEntropy::WernerHolevo { d } => {
            if *d < 2 {
                return Err(Error::Validation("Werner–Holevo needs d ≥ 2".into()));
            }
            Ok(((*d as f64 - 1.0) / 2.0).log2())
        }
        ClosedFormEntropy::Depolarizing { d, p } => {
            if *d < 2 || !(0.0..=1.0).contains(p) {
                return Err(Error::Validation(
                    "depolarizing needs d ≥ 2 and p ∈ [0,1]".into(),
                ));
            }
            let df = *d as f64;
            let keep = 1.0 - p + p / (df * df);
            let keep_term = if keep > 0.0 { -keep * keep.log2() } else { 0.0 };
            let spread_term = if *p > 0.0 {
                -(df * df - 1.0) * (p / (df * df)) * (p / (df * df)).log2()
            } else {
                0.0
            };
            Ok(keep_term + spread_term - df.log2())
        }
    }
}

// ---------------------------------------------------------------------------
// Rényi entropy of a channel
// ---------------------------------------------------------------------------

fn check_channel_renyi_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.5 || alpha == 1.0 {
        return Err(Error::Domain(format!(
            "channel Rényi entropy needs α ∈ [1/2,1)∪(1,∞), got {alpha}"
        )));
    }
    Ok(())
}

/// The Sibson-route objective: H̄_β(B|E) of the Stinespring output at
/// input ρ, using Tr_B(VρV†)^β = N^c(ρ^β).
pub fn sibson_env_objective(
    complementary: &KrausChannel,
    rho: &ComplexMatrix,
    beta: f64,
    rel_cutoff: f64,
) -> Result<f64> {
    let rho_beta = psd_power(rho, beta, rel_cutoff)?;
    let reduced = complementary.apply_raw(&rho_beta);
    let trace: f64 = hermitian_eig_unchecked(&reduced)
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l.powf(1.0 / beta))
        .sum();
    if trace <= 0.0 {
        return Err(Error::Numerical("Sibson objective hit a zero trace".into()));
    }
    Ok(beta / (1.0 - beta) * trace.log2())
}

/// Rényi entropy of a channel for α ∈ [1/2,1)∪(1,∞).
///
/// Route B (reported): H_α(N) = −sup_ρ H̄_β(B|E) with β = 1/α, the inner
/// conditional optimization resolved by the Sibson closed form. Route A
/// (cross-check): inf over purified inputs of the fixed-marginal sandwiched
/// conditional entropy H_α(B|R). The report carries |A − B| as
/// `cross_check_delta`. Neither outer problem is assumed concave, so both
/// run seeded multi-start.
pub fn renyi_channel_entropy(
    channel: &KrausChannel,
    alpha: f64,
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    check_channel_renyi_alpha(alpha)?;
    channel.validate()?;
    let beta = 1.0 / alpha;
    let cutoff = policy.eigen_cutoff;

    let comp = channel.complementary();
    let sibson = move |rho: &ComplexMatrix| sibson_env_objective(&comp, rho, beta, cutoff);
    let route_b = density_maximize(&sibson, None, channel.dim_in, policy, false)?;

    let (da, db) = (channel.dim_in, channel.dim_out);
    let direct = move |rho: &ComplexMatrix| {
        let psi = gamma_purification(rho, cutoff)?;
        let omega = channel.apply_embedded_raw(&ComplexMatrix::outer(&psi, &psi), da);
        let h =
            conditional_renyi_fixed(&omega, &[da, db], 0, alpha, RenyiKind::Sandwiched, cutoff)?;
        Ok(-h)
    };
    let route_a = density_maximize(&direct, None, da, policy, false)?;

    let value_b = -route_b.value;
    let value_a = -route_a.value;
    let mut report = route_b.negated().with_route("sibson-closed-form");
    report.cross_check_delta = Some((value_a - value_b).abs());
    Ok(report)
}

/// Min-entropy of a channel: exactly −log₂ λ_max of the unnormalized Choi
/// operator, no optimization involved.
pub fn min_entropy_channel(channel: &KrausChannel) -> Result<f64> {
    channel.validate()?;
    Ok(-channel.choi().max_eigenvalue()?.log2())
}

/// Extended min-entropy: H_min(B|R) of the Choi state, i.e.
/// −inf_{σ_R} D_max(N(Φ_RA) ‖ σ_R ⊗ I_B), by mirror descent over σ_R with
/// the top-eigenvector subgradient.
pub fn extended_min_entropy(
    channel: &KrausChannel,
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    channel.validate()?;
    let omega = channel.choi().state();
    let (da, db) = (channel.dim_in, channel.dim_out);
    let cutoff = policy.eigen_cutoff;

    let omega_obj = omega.clone();
    // Maximize −D_max(ω‖σ⊗I); D_max is quasi-convex in σ, so multi-start.
    let objective = move |sigma: &ComplexMatrix| {
        let inv_sqrt = psd_power(sigma, -0.5, cutoff)?;
        let sandwich = kron(&inv_sqrt, &ComplexMatrix::identity(db));
        let t = sandwich
            .matmul(&omega_obj)
            .matmul(&sandwich)
            .hermitian_part();
        let top = hermitian_eig_unchecked(&t).max_eigenvalue().max(0.0);
        if top <= 0.0 {
            return Err(Error::Numerical(
                "degenerate sandwich in extended min-entropy".into(),
            ));
        }
        Ok(-top.log2())
    };
    let omega_grad = omega.clone();
    // Subgradient of −log₂ λ_max from the top eigenvector: with
    // u = (σ^{-1/2}⊗I)v the gradient is Tr_B(|u⟩⟨u|)/ln 2.
    let gradient = move |sigma: &ComplexMatrix| {
        let inv_sqrt = psd_power(sigma, -0.5, cutoff)?;
        let sandwich = kron(&inv_sqrt, &ComplexMatrix::identity(db));
        let t = sandwich
            .matmul(&omega_grad)
            .matmul(&sandwich)
            .hermitian_part();
        let eig = hermitian_eig_unchecked(&t);
        let v = eig.eigenvector(eig.eigenvalues.len() - 1);
        let u = sandwich.matvec(&v);
        let uu = ComplexMatrix::outer(&u, &u);
        let reduced = partial_trace(&uu, &[da, db], &[0])?;
        Ok(reduced.scale_re(1.0 / std::f64::consts::LN_2))
    };
    let report = density_maximize(&objective, Some(&gradient), da, policy, false)?;
    Ok(report.with_route("dmax-mirror-descent"))
}

/// Completely bounded 1→α norm, ‖N‖ = sup_ρ ‖ρ^{1/2α} N(Γ) ρ^{1/2α}‖_α for
/// α > 1, by direct multi-start maximization over the reference state.
pub fn cb_one_to_alpha_norm(
    channel: &KrausChannel,
    alpha: f64,
    policy: &NumericPolicy,
) -> Result<OptimizationReport> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::Domain(format!(
            "completely bounded 1→α norm needs α > 1, got {alpha}"
        )));
    }
    channel.validate()?;
    let gamma = channel.choi().gamma().clone();
    let db = channel.dim_out;
    let cutoff = policy.eigen_cutoff;
    let objective = move |rho: &ComplexMatrix| {
        let weight = psd_power(rho, 1.0 / (2.0 * alpha), cutoff)?;
        let sandwich = kron(&weight, &ComplexMatrix::identity(db));
        let x = sandwich.matmul(&gamma).matmul(&sandwich).hermitian_part();
        let total: f64 = hermitian_eig_unchecked(&x)
            .eigenvalues
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| l.powf(alpha))
            .sum();
        Ok(total.powf(1.0 / alpha))
    };
    let report = density_maximize(&objective, None, channel.dim_in, policy, false)?;
    Ok(report.with_route("cb-norm-direct"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        heisenberg_weyl_group, random_channel, standard_channel, StandardChannel,
    };
    use crate::entropy::von_neumann_entropy;
    use crate::linalg::hermitian_eig;
    use crate::opt::{finite_difference_gradient, FD_STEP};
    use crate::rng::{random_density, rng_for};

    fn policy() -> NumericPolicy {
        NumericPolicy {
            opt_tol: 1e-9,
            ..NumericPolicy::default()
        }
    }

    #[test]
    fn identity_channel_saturates_lower_bound() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let report = channel_entropy(&id, &policy()).unwrap();
        assert!(report.converged, "gap {:?}", report.fw_gap);
        assert!(
            (report.value + 1.0).abs() < 1e-6,
            "H(id) = {}",
            report.value
        );
    }

    #[test]
    fn randomizing_channel_saturates_upper_bound() {
        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let report = channel_entropy(&r, &policy()).unwrap();
        assert!(report.converged);
        assert!((report.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn erasure_half_has_entropy_half() {
        let ch = standard_channel(&StandardChannel::Erasure { d: 2, p: 0.5 }).unwrap();
        let report = channel_entropy(&ch, &policy()).unwrap();
        assert!((report.value - 0.5).abs() < 1e-6, "H = {}", report.value);
    }

    #[test]
    fn replacer_reduces_to_state_entropy() {
        let mut rng = rng_for(41, 0);
        let sigma = random_density(3, &mut rng);
        let ch = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: sigma.clone(),
        })
        .unwrap();
        let report = channel_entropy(&ch, &policy()).unwrap();
        let expected = von_neumann_entropy(&sigma, 1e-14).unwrap();
        assert!((report.value - expected).abs() < 1e-6);
    }

    #[test]
    fn covariant_shortcut_matches_closed_forms() {
        // Dephasing(1/2,1/2): H = H(p) − 1 = 0.
        let deph = standard_channel(&StandardChannel::Dephasing {
            probs: vec![0.5, 0.5],
        })
        .unwrap();
        let group = heisenberg_weyl_group(2);
        let report = channel_entropy_covariant(&deph, &group, &group, &policy()).unwrap();
        assert!(report.value.abs() < 1e-10);

        // Werner–Holevo d=3: H = log₂((3−1)/2) = 0; covariance is with
        // U on the input and conj(U) on the output.
        let wh = standard_channel(&StandardChannel::WernerHolevo { d: 3 }).unwrap();
        let group = heisenberg_weyl_group(3);
        let conj: Vec<ComplexMatrix> = group.iter().map(|u| u.conjugate()).collect();
        let report = channel_entropy_covariant(&wh, &group, &conj, &policy()).unwrap();
        assert!(report.value.abs() < 1e-10, "H(WH3) = {}", report.value);

        // Depolarizing p=1 is the randomizing channel: H = 1.
        let dep = standard_channel(&StandardChannel::Depolarizing { d: 2, p: 1.0 }).unwrap();
        let group = heisenberg_weyl_group(2);
        let report = channel_entropy_covariant(&dep, &group, &group, &policy()).unwrap();
        assert!((report.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn covariant_shortcut_rejects_non_covariant() {
        let mut rng = rng_for(42, 0);
        let ch = random_channel(2, 2, 2, &mut rng);
        let group = heisenberg_weyl_group(2);
        assert!(channel_entropy_covariant(&ch, &group, &group, &policy()).is_err());
    }

    #[test]
    fn closed_form_values() {
        let v = closed_form_entropy(&ClosedFormEntropy::Erasure { d: 2, p: 0.0 }).unwrap();
        assert!((v + 1.0).abs() < 1e-12);
        let v = closed_form_entropy(&ClosedFormEntropy::Depolarizing { d: 2, p: 1.0 }).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v = closed_form_entropy(&ClosedFormEntropy::WernerHolevo { d: 2 }).unwrap();
        assert!((v + 1.0).abs() < 1e-12);
        let v = closed_form_entropy(&ClosedFormEntropy::Dephasing {
            probs: vec![0.5, 0.5],
        })
        .unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn analytic_gradient_matches_finite_differences() {
        let mut rng = rng_for(43, 0);
        let ch = random_channel(2, 2, 2, &mut rng);
        let comp = ch.complementary();
        let objective = |rho: &ComplexMatrix| conditional_output_entropy(&comp, rho, 1e-14);
        for _ in 0..10 {
            let rho = random_density(2, &mut rng);
            let analytic = conditional_output_entropy_gradient(&comp, &rho, 1e-14).unwrap();
            let fd = finite_difference_gradient(&objective, &rho, FD_STEP).unwrap();
            let dev = analytic.sub(&fd).max_abs();
            assert!(dev <= 1e-5, "gradient deviation {dev:.3e}");
        }
    }

    #[test]
    fn renyi_identity_channel_any_alpha() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        for alpha in [0.6, 2.0, 5.0] {
            let report = renyi_channel_entropy(&id, alpha, &policy()).unwrap();
            assert!(
                (report.value + 1.0).abs() < 1e-6,
                "H_{alpha}(id) = {}",
                report.value
            );
            assert!(report.cross_check_delta.unwrap() < 1e-5);
        }
    }

    #[test]
    fn renyi_replacer_reduces_to_state_renyi() {
        let mut rng = rng_for(44, 0);
        let sigma = random_density(2, &mut rng);
        let ch = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: sigma.clone(),
        })
        .unwrap();
        let spectrum = hermitian_eig(&sigma).unwrap().eigenvalues;
        for alpha in [0.5, 2.0] {
            let report = renyi_channel_entropy(&ch, alpha, &policy()).unwrap();
            let expected =
                spectrum.iter().map(|l| l.powf(alpha)).sum::<f64>().log2() / (1.0 - alpha);
            assert!(
                (report.value - expected).abs() < 1e-5,
                "α={alpha}: {} vs {expected}",
                report.value
            );
        }
    }

    #[test]
    fn renyi_alpha_domain() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        assert!(renyi_channel_entropy(&id, 0.3, &policy()).is_err());
        assert!(renyi_channel_entropy(&id, 1.0, &policy()).is_err());
    }

    #[test]
    fn min_entropy_closed_forms() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        assert!((min_entropy_channel(&id).unwrap() + 1.0).abs() < 1e-12);

        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        assert!((min_entropy_channel(&r).unwrap() - 1.0).abs() < 1e-12);

        let deph = standard_channel(&StandardChannel::Dephasing {
            probs: vec![0.5, 0.5],
        })
        .unwrap();
        assert!(min_entropy_channel(&deph).unwrap().abs() < 1e-12);
    }

    #[test]
    fn min_entropy_additivity_is_exact() {
        let mut rng = rng_for(45, 0);
        let n = random_channel(2, 2, 2, &mut rng);
        let m = random_channel(2, 2, 2, &mut rng);
        let lhs = min_entropy_channel(&n.tensor(&m)).unwrap();
        let rhs = min_entropy_channel(&n).unwrap() + min_entropy_channel(&m).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn extended_min_entropy_cases() {
        let pol = policy();
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let report = extended_min_entropy(&id, &pol).unwrap();
        assert!((report.value + 1.0).abs() < 1e-6, "value {}", report.value);

        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let report = extended_min_entropy(&r, &pol).unwrap();
        assert!((report.value - 1.0).abs() < 1e-6);

        let pure = ComplexMatrix::diag(&[1.0, 0.0]);
        let rep = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: pure,
        })
        .unwrap();
        let report = extended_min_entropy(&rep, &pol).unwrap();
        assert!(report.value.abs() < 1e-6);
    }

    #[test]
    fn merging_capacity_equals_channel_entropy() {
        let mut rng = rng_for(50, 0);
        let ch = random_channel(2, 2, 2, &mut rng);
        let pol = policy();
        let h = channel_entropy(&ch, &pol).unwrap().value;
        let cm = crate::engine::channel_merging_capacity(&ch, &pol)
            .unwrap()
            .value;
        assert!((h - cm).abs() < 1e-12);
    }

    #[test]
    fn extended_min_entropy_matches_bloch_grid_oracle() {
        // Brute-force grid over σ_R on the Bloch ball as an independent
        // route to −inf_σ D_max(N(Φ)‖σ⊗I).
        let pol = policy();
        let mut rng = rng_for(51, 0);
        for _ in 0..2 {
            let ch = random_channel(2, 2, 2, &mut rng);
            let descent = extended_min_entropy(&ch, &pol).unwrap().value;
            let omega = ch.choi().state();
            let grid = crate::acceptance::bloch_grid_maximize(
                |sigma| {
                    let full = kron(sigma, &ComplexMatrix::identity(2));
                    Ok(-crate::entropy::max_relative_entropy(&omega, &full, 1e-14)?.value)
                },
                5,
            )
            .unwrap();
            assert!(
                (descent - grid).abs() < 1e-4,
                "descent {descent} vs grid {grid}"
            );
        }
    }

    #[test]
    fn extended_min_entropy_dominates_min_entropy() {
        let mut rng = rng_for(46, 0);
        for _ in 0..3 {
            let ch = random_channel(2, 2, 2, &mut rng);
            let ext = extended_min_entropy(&ch, &policy()).unwrap().value;
            let min = min_entropy_channel(&ch).unwrap();
            assert!(ext >= min - 1e-7, "ext {ext} < min {min}");
        }
    }

    #[test]
    fn cb_norm_closed_cases_and_relation() {
        let pol = policy();
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let norm = cb_one_to_alpha_norm(&id, 2.0, &pol).unwrap().value;
        assert!((norm - 2.0_f64.sqrt()).abs() < 1e-6, "‖id‖ = {norm}");

        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let norm = cb_one_to_alpha_norm(&r, 2.0, &pol).unwrap().value;
        assert!((norm - 2.0_f64.powf(-0.5)).abs() < 1e-6, "‖R‖ = {norm}");

        // H_α(N) = (α/(1−α)) log₂ ‖N‖ at α = 2 on a random qubit channel.
        let mut rng = rng_for(47, 0);
        let ch = random_channel(2, 2, 2, &mut rng);
        let h2 = renyi_channel_entropy(&ch, 2.0, &pol).unwrap().value;
        let norm = cb_one_to_alpha_norm(&ch, 2.0, &pol).unwrap().value;
        let via_norm = 2.0 / (1.0 - 2.0) * norm.log2();
        assert!((h2 - via_norm).abs() < 1e-5, "{h2} vs {via_norm}");
    }

    #[test]
    fn cb_norm_alpha_domain() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        assert!(cb_one_to_alpha_norm(&id, 1.0, &policy()).is_err());
    }

    #[test]
    fn normalization_axiom_for_replacers() {
        let pol = policy();
        let pure = ComplexMatrix::diag(&[1.0, 0.0, 0.0]);
        let to_pure = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: pure,
        })
        .unwrap();
        assert!(channel_entropy(&to_pure, &pol).unwrap().value.abs() < 1e-6);

        let pi3 = ComplexMatrix::identity(3).scale_re(1.0 / 3.0);
        let to_pi = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: pi3,
        })
        .unwrap();
        let h = channel_entropy(&to_pi, &pol).unwrap().value;
        assert!((h - 3.0_f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn triple_route_agreement() {
        let mut rng = rng_for(48, 0);
        let pol = policy();
        for trial in 0..2 {
            let ch = random_channel(2, 3, 2, &mut rng);
            let report = channel_entropy(&ch, &pol).unwrap();

            // Entropy-gain route: an independent run without the analytic
            // gradient, maximizing H(A) − H(E) directly.
            let comp = ch.complementary();
            let objective = |rho: &ComplexMatrix| conditional_output_entropy(&comp, rho, 1e-14);
            let fd_report = density_maximize(&objective, None, 2, &pol, true).unwrap();
            assert!(
                (report.value + fd_report.value).abs() < 1e-5,
                "trial {trial}: duality route {} vs entropy-gain route {}",
                report.value,
                -fd_report.value
            );

            // Sampled pure inputs upper-bound the entropy: H(B|R) ≥ H(N).
            let mut min_sampled = f64::INFINITY;
            for s in 0..64 {
                let mut srng = rng_for(49, (trial * 64 + s) as u64);
                let rho = random_density(2, &mut srng);
                let psi = gamma_purification(&rho, 1e-14).unwrap();
                let omega = ch.apply_embedded_raw(&ComplexMatrix::outer(&psi, &psi), 2);
                let omega_r = partial_trace(&omega, &[2, 3], &[0]).unwrap();
                let h = von_neumann_entropy(&omega, 1e-14).unwrap()
                    - von_neumann_entropy(&omega_r, 1e-14).unwrap();
                min_sampled = min_sampled.min(h);
            }
            assert!(min_sampled >= report.value - 1e-4);
        }
    }
}
