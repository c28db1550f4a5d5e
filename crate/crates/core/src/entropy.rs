//! State-level entropies and divergences.
//!
//! Von Neumann and conditional entropy, quantum relative entropy, the
//! sandwiched and Petz Rényi families, max-relative entropy, and the
//! conditional Rényi entropies (fixed conditioning marginal, and the
//! Petz variant optimized over the marginal in closed form).
//!
//! All divergences return a [`DivergenceValue`] rather than a bare float so
//! that support violations are an explicit, testable outcome instead of a
//! silent infinity. α = 1 is excluded everywhere; callers use the von
//! Neumann quantities, and the α → 1 limits are verified in tests rather
//! than interpolated in code.

use crate::linalg::{self, herm_power, hermitian_eig, partial_trace, ComplexMatrix};
use crate::{Error, Result};

/// Null-space mass up to which the support condition counts as satisfied.
pub const SUPPORT_TOL: f64 = 1e-10;
/// Null-space mass above which a divergence is reported as +∞; between
/// [`SUPPORT_TOL`] and this bound the value is finite but flagged.
pub const SUPPORT_WARN: f64 = 1e-6;

/// A density matrix: Hermitian, positive semi-definite, unit trace.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    /// Optional tensor-factor dimensions, leftmost slowest-varying.
    pub subsystem_dims: Option<Vec<usize>>,
}

impl DensityMatrix {
    /// Validate and wrap. Tolerances: Hermiticity 1e-10 entrywise, smallest
    /// eigenvalue ≥ -1e-10, |Tr − 1| ≤ 1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation("density matrix must be square".into()));
        }
        let defect = matrix.hermitian_defect();
        if defect > linalg::HERMITIAN_TOL {
            return Err(Error::Validation(format!(
                "density matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "density matrix trace is {:.12}, expected 1",
                tr.re
            )));
        }
        let min = hermitian_eig(&matrix)?.min_eigenvalue();
        if min < -1e-10 {
            return Err(Error::Validation(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix {
            matrix,
            subsystem_dims: None,
        })
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        if dims.iter().product::<usize>() != self.dim() {
            return Err(Error::Validation(
                "subsystem dims do not multiply to the state dimension".into(),
            ));
        }
        self.subsystem_dims = Some(dims);
        Ok(self)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
            subsystem_dims: None,
        }
    }

    /// Wrap without validation. For matrices that are states by
    /// construction (channel outputs, optimizer iterates).
    pub fn trusted(matrix: ComplexMatrix) -> Self {
        DensityMatrix {
            matrix,
            subsystem_dims: None,
        }
    }

    /// Pure state |ψ⟩⟨ψ| from an (unnormalized) vector.
    pub fn pure(psi: &[num_complex::Complex64]) -> Result<Self> {
        let norm = linalg::vec_norm(psi);
        if norm < 1e-12 {
            return Err(Error::Validation("zero vector cannot be normalized".into()));
        }
        let scaled: Vec<_> = psi.iter().map(|a| a / norm).collect();
        Ok(DensityMatrix {
            matrix: ComplexMatrix::outer(&scaled, &scaled),
            subsystem_dims: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Outcome of a divergence computation. `support_violation` forces the
/// value to +∞; `warning` marks near-boundary support mass where the finite
/// value is dominated by eigen-cutoff noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceValue {
    pub value: f64,
    pub support_violation: bool,
    pub warning: bool,
}

impl DivergenceValue {
    pub fn finite(value: f64) -> Self {
        DivergenceValue {
            value,
            support_violation: false,
            warning: false,
        }
    }

    pub fn infinite() -> Self {
        DivergenceValue {
            value: f64::INFINITY,
            support_violation: true,
            warning: false,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// Tr(ρ Π_null(σ)): how much of ρ lives outside the support of σ.
fn null_space_mass(
    rho: &ComplexMatrix,
    sigma_eig: &linalg::HermitianEigen,
    rel_cutoff: f64,
) -> f64 {
    let cutoff = rel_cutoff
        * sigma_eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0f64, f64::max);
    let d = rho.rows;
    let mut mass = 0.0;
    for (k, &lambda) in sigma_eig.eigenvalues.iter().enumerate() {
        if lambda.abs() > cutoff {
            continue;
        }
        let v = sigma_eig.eigenvector(k);
        let mut amp = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                amp += v[i].conj() * rho[(i, j)] * v[j];
            }
        }
        mass += amp.re;
    }
    mass.max(0.0)
}

/// How a support check resolves under the two-threshold rule.
enum SupportStatus {
    Ok,
    Warn,
    Violated,
}

fn support_status(mass: f64) -> SupportStatus {
    if mass <= SUPPORT_TOL {
        SupportStatus::Ok
    } else if mass <= SUPPORT_WARN {
        SupportStatus::Warn
    } else {
        SupportStatus::Violated
    }
}

/// −Tr(ρ log₂ ρ) in bits. Eigenvalues at or below the relative cutoff are
/// skipped (0·log 0 = 0 convention).
pub fn von_neumann_entropy(rho: &ComplexMatrix, rel_cutoff: f64) -> Result<f64> {
    let eig = hermitian_eig(rho)?;
    Ok(entropy_of_spectrum(&eig.eigenvalues, rel_cutoff))
}

/// Shannon entropy (bits) of a nonnegative spectrum.
pub fn entropy_of_spectrum(spectrum: &[f64], rel_cutoff: f64) -> f64 {
    let top = spectrum.iter().map(|l| l.abs()).fold(0.0f64, f64::max);
    let cutoff = rel_cutoff * top;
    -spectrum
        .iter()
        .filter(|&&l| l > cutoff)
        .map(|&l| l * l.log2())
        .sum::<f64>()
}

/// Quantum relative entropy D(ρ‖σ) = Tr ρ(log₂ ρ − log₂ σ), +∞ when ρ has
/// mass outside the support of σ.
pub fn relative_entropy(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    rel_cutoff: f64,
) -> Result<DivergenceValue> {
    let rho_eig = hermitian_eig(rho)?;
    let sigma_eig = hermitian_eig(sigma)?;
    let mass = null_space_mass(rho, &sigma_eig, rel_cutoff);
    let warn = match support_status(mass) {
        SupportStatus::Violated => return Ok(DivergenceValue::infinite()),
        SupportStatus::Warn => true,
        SupportStatus::Ok => false,
    };

    let rho_top = rho_eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let rho_term: f64 = rho_eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > rel_cutoff * rho_top)
        .map(|&l| l * l.log2())
        .sum();

    let sig_top = sigma_eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let sig_cutoff = rel_cutoff * sig_top;
    let d = rho.rows;
    let mut cross = 0.0;
    for (k, &mu) in sigma_eig.eigenvalues.iter().enumerate() {
        if mu <= sig_cutoff {
            continue;
        }
        let v = sigma_eig.eigenvector(k);
        let mut amp = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                amp += v[i].conj() * rho[(i, j)] * v[j];
            }
        }
        cross += amp.re * mu.log2();
    }
    Ok(DivergenceValue {
        value: rho_term - cross,
        support_violation: false,
        warning: warn,
    })
}

/// H(rest | condition) = H(full) − H(condition marginal), both in bits.
pub fn conditional_entropy(
    rho: &ComplexMatrix,
    dims: &[usize],
    condition_on: usize,
    rel_cutoff: f64,
) -> Result<f64> {
    let marginal = partial_trace(rho, dims, &[condition_on])?;
    Ok(von_neumann_entropy(rho, rel_cutoff)? - von_neumann_entropy(&marginal, rel_cutoff)?)
}

fn check_renyi_alpha(alpha: f64) -> Result<()> {
    if alpha == 1.0 {
        return Err(Error::Domain(
            "α = 1 is excluded; use relative_entropy for the von Neumann case".into(),
        ));
    }
    if alpha.is_nan() || alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Rényi order must lie in (0,1)∪(1,∞), got {alpha}"
        )));
    }
    Ok(())
}

/// Sandwiched Rényi divergence
/// D_α(ρ‖σ) = (α−1)⁻¹ log₂ Tr[(σ^{(1−α)/2α} ρ σ^{(1−α)/2α})^α].
///
/// For α > 1 the support of ρ must lie in the support of σ, otherwise +∞.
pub fn sandwiched_renyi(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    alpha: f64,
    rel_cutoff: f64,
) -> Result<DivergenceValue> {
    check_renyi_alpha(alpha)?;
    let sigma_eig = hermitian_eig(sigma)?;
    let mut warn = false;
    if alpha > 1.0 {
        match support_status(null_space_mass(rho, &sigma_eig, rel_cutoff)) {
            SupportStatus::Violated => return Ok(DivergenceValue::infinite()),
            SupportStatus::Warn => warn = true,
            SupportStatus::Ok => {}
        }
    }
    let exponent = (1.0 - alpha) / (2.0 * alpha);
    let sig_pow = linalg::psd_power_eig(&sigma_eig, exponent, rel_cutoff);
    let x = sig_pow.matmul(rho).matmul(&sig_pow).hermitian_part();
    let x_eig = hermitian_eig(&x)?;
    let trace: f64 = x_eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l.powf(alpha))
        .sum();
    if trace <= 0.0 {
        return Ok(DivergenceValue::infinite());
    }
    Ok(DivergenceValue {
        value: trace.log2() / (alpha - 1.0),
        support_violation: false,
        warning: warn,
    })
}

/// Petz–Rényi divergence D̄_α(ρ‖σ) = (α−1)⁻¹ log₂ Tr[ρ^α σ^{1−α}], with the
/// same support rule as the sandwiched family for α > 1.
pub fn petz_renyi(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    alpha: f64,
    rel_cutoff: f64,
) -> Result<DivergenceValue> {
    check_renyi_alpha(alpha)?;
    let sigma_eig = hermitian_eig(sigma)?;
    let mut warn = false;
    if alpha > 1.0 {
        match support_status(null_space_mass(rho, &sigma_eig, rel_cutoff)) {
            SupportStatus::Violated => return Ok(DivergenceValue::infinite()),
            SupportStatus::Warn => warn = true,
            SupportStatus::Ok => {}
        }
    }
    let rho_pow = herm_power(rho, alpha, rel_cutoff)?;
    let sig_pow = linalg::psd_power_eig(&sigma_eig, 1.0 - alpha, rel_cutoff);
    let trace = rho_pow.trace_product_re(&sig_pow);
    if trace <= 0.0 {
        return Ok(DivergenceValue::infinite());
    }
    Ok(DivergenceValue {
        value: trace.log2() / (alpha - 1.0),
        support_violation: false,
        warning: warn,
    })
}

/// Max-relative entropy D_max(ρ‖σ) = log₂ λ_max(σ^{-1/2} ρ σ^{-1/2}), +∞
/// when ρ has mass outside the support of σ.
pub fn max_relative_entropy(
    rho: &ComplexMatrix,
    sigma: &ComplexMatrix,
    rel_cutoff: f64,
) -> Result<DivergenceValue> {
    let sigma_eig = hermitian_eig(sigma)?;
    let warn = match support_status(null_space_mass(rho, &sigma_eig, rel_cutoff)) {
        SupportStatus::Violated => return Ok(DivergenceValue::infinite()),
        SupportStatus::Warn => true,
        SupportStatus::Ok => false,
    };
    let inv_sqrt = linalg::psd_power_eig(&sigma_eig, -0.5, rel_cutoff);
    let t = inv_sqrt.matmul(rho).matmul(&inv_sqrt).hermitian_part();
    let top = hermitian_eig(&t)?.max_eigenvalue().max(0.0);
    if top <= 0.0 {
        // ρ entirely outside supp(σ) would have been caught above; a zero
        // operator here means ρ = 0 on the common support.
        return Ok(DivergenceValue::infinite());
    }
    Ok(DivergenceValue {
        value: top.log2(),
        support_violation: false,
        warning: warn,
    })
}

/// The two Rényi divergence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenyiKind {
    Sandwiched,
    Petz,
}

/// Build I ⊗ marginal (ordered to match `dims`) for conditional entropies.
fn identity_tensor_marginal(
    rho: &ComplexMatrix,
    dims: &[usize],
    condition_on: usize,
) -> Result<ComplexMatrix> {
    if dims.len() != 2 || condition_on > 1 {
        return Err(Error::Validation(
            "conditional entropies expect a bipartite state and a subsystem index in {0,1}".into(),
        ));
    }
    let marginal = partial_trace(rho, dims, &[condition_on])?;
    Ok(if condition_on == 0 {
        marginal.kron(&ComplexMatrix::identity(dims[1]))
    } else {
        ComplexMatrix::identity(dims[0]).kron(&marginal)
    })
}

/// Conditional Rényi entropy with fixed conditioning marginal:
/// H_α(rest|cond)_{ρ|ρ} = −D_α(ρ ‖ I ⊗ ρ_cond), sandwiched or Petz;
/// α = ∞ (sandwiched) gives the conditional min-entropy
/// −D_max(ρ ‖ I ⊗ ρ_cond).
pub fn conditional_renyi_fixed(
    rho: &ComplexMatrix,
    dims: &[usize],
    condition_on: usize,
    alpha: f64,
    kind: RenyiKind,
    rel_cutoff: f64,
) -> Result<f64> {
    let sigma = identity_tensor_marginal(rho, dims, condition_on)?;
    let div = if alpha.is_infinite() {
        if kind != RenyiKind::Sandwiched {
            return Err(Error::Domain(
                "α = ∞ is defined for the sandwiched family only".into(),
            ));
        }
        max_relative_entropy(rho, &sigma, rel_cutoff)?
    } else {
        if alpha < 0.5 && kind == RenyiKind::Sandwiched {
            return Err(Error::Domain(format!(
                "sandwiched conditional entropy needs α ≥ 1/2, got {alpha}"
            )));
        }
        match kind {
            RenyiKind::Sandwiched => sandwiched_renyi(rho, &sigma, alpha, rel_cutoff)?,
            RenyiKind::Petz => petz_renyi(rho, &sigma, alpha, rel_cutoff)?,
        }
    };
    Ok(-div.value)
}

/// Petz conditional Rényi entropy optimized over the conditioning marginal,
/// via the quantum Sibson identity in closed form:
/// H̄_α(rest|cond)_ρ = (α/(1−α)) log₂ Tr[(Tr_rest ρ^α)^{1/α}].
pub fn petz_conditional_optimized(
    rho: &ComplexMatrix,
    dims: &[usize],
    condition_on: usize,
    alpha: f64,
    rel_cutoff: f64,
) -> Result<f64> {
    check_renyi_alpha(alpha)?;
    if dims.len() != 2 || condition_on > 1 {
        return Err(Error::Validation(
            "petz_conditional_optimized expects a bipartite state".into(),
        ));
    }
    let rho_pow = herm_power(rho, alpha, rel_cutoff)?;
    let reduced = partial_trace(&rho_pow, dims, &[condition_on])?;
    let trace: f64 = hermitian_eig(&reduced)?
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l.powf(1.0 / alpha))
        .sum();
    if trace <= 0.0 {
        return Err(Error::Numerical(
            "Sibson closed form hit an identically zero reduced power".into(),
        ));
    }
    Ok(alpha / (1.0 - alpha) * trace.log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vector, kron, vec_kron};
    use crate::rng::{random_density, rng_for};

    const CUT: f64 = 1e-14;

    fn pi(d: usize) -> ComplexMatrix {
        ComplexMatrix::identity(d).scale_re(1.0 / d as f64)
    }

    fn bell() -> ComplexMatrix {
        let psi: Vec<_> = [
            vec_kron(&basis_vector(2, 0), &basis_vector(2, 0)),
            vec_kron(&basis_vector(2, 1), &basis_vector(2, 1)),
        ]
        .iter()
        .fold(vec![num_complex::Complex64::new(0.0, 0.0); 4], |acc, v| {
            acc.iter().zip(v).map(|(a, b)| a + b).collect()
        });
        let psi: Vec<_> = psi.iter().map(|a| a / 2.0_f64.sqrt()).collect();
        ComplexMatrix::outer(&psi, &psi)
    }

    /// Classical Rényi divergence (1/(α−1)) log₂ Σ p^α q^{1−α}.
    fn classical_renyi(p: &[f64], q: &[f64], alpha: f64) -> f64 {
        let s: f64 = p
            .iter()
            .zip(q)
            .filter(|(&pi, _)| pi > 0.0)
            .map(|(&pi, &qi)| pi.powf(alpha) * qi.powf(1.0 - alpha))
            .sum();
        s.log2() / (alpha - 1.0)
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(pi(3)).is_ok());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[0.9, 0.2])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[1.5, -0.5])).is_err());
    }

    #[test]
    fn entropy_of_maximally_mixed() {
        for d in [2, 3, 5] {
            let h = von_neumann_entropy(&pi(d), CUT).unwrap();
            assert!((h - (d as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let rho = DensityMatrix::pure(&basis_vector(4, 2)).unwrap();
        assert!(von_neumann_entropy(rho.matrix(), CUT).unwrap().abs() < 1e-12);
    }

    #[test]
    fn entropy_three_quarters_one_quarter() {
        let h = von_neumann_entropy(&ComplexMatrix::diag(&[0.75, 0.25]), CUT).unwrap();
        // -(3/4)log2(3/4) - (1/4)log2(1/4), frozen from the scalar formula.
        assert!((h - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_basics() {
        let mut rng = rng_for(5, 0);
        let rho = random_density(3, &mut rng);
        let same = relative_entropy(&rho, &rho, CUT).unwrap();
        assert!(same.value.abs() < 1e-10 && !same.support_violation);

        // D(ρ‖π_d) = log₂ d − H(ρ)
        let d = relative_entropy(&rho, &pi(3), CUT).unwrap();
        let h = von_neumann_entropy(&rho, CUT).unwrap();
        assert!((d.value - (3.0_f64.log2() - h)).abs() < 1e-10);

        let e0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let e1 = ComplexMatrix::diag(&[0.0, 1.0]);
        let inf = relative_entropy(&e0, &e1, CUT).unwrap();
        assert!(inf.support_violation && inf.value.is_infinite());
    }

    #[test]
    fn relative_entropy_scaling_identity() {
        // D(ρ‖cσ) = D(ρ‖σ) − log₂ c
        let mut rng = rng_for(6, 0);
        let rho = random_density(3, &mut rng);
        let sigma = random_density(3, &mut rng);
        let c = 2.5;
        let lhs = relative_entropy(&rho, &sigma.scale_re(c), CUT)
            .unwrap()
            .value;
        let rhs = relative_entropy(&rho, &sigma, CUT).unwrap().value - c.log2();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn conditional_entropy_cases() {
        // Product state: H(A|B) = H(A).
        let rho_a = ComplexMatrix::diag(&[0.75, 0.25]);
        let prod = kron(&rho_a, &pi(2));
        let h = conditional_entropy(&prod, &[2, 2], 1, CUT).unwrap();
        assert!((h - 0.811_278_124_459_132_8).abs() < 1e-10);

        // Bell state: conditioning on either side gives −1.
        let phi = bell();
        for side in [0, 1] {
            let h = conditional_entropy(&phi, &[2, 2], side, CUT).unwrap();
            assert!((h + 1.0).abs() < 1e-10);
        }

        // Uniform classical correlation: H(A|B) = 0.
        let mut cc = ComplexMatrix::zeros(4, 4);
        cc[(0, 0)] = num_complex::Complex64::new(0.5, 0.0);
        cc[(3, 3)] = num_complex::Complex64::new(0.5, 0.0);
        assert!(conditional_entropy(&cc, &[2, 2], 1, CUT).unwrap().abs() < 1e-10);
    }

    #[test]
    fn renyi_divergences_vanish_on_equal_args() {
        let mut rng = rng_for(7, 0);
        let rho = random_density(3, &mut rng);
        for alpha in [0.5, 0.7, 2.0, 5.0] {
            let s = sandwiched_renyi(&rho, &rho, alpha, CUT).unwrap();
            let p = petz_renyi(&rho, &rho, alpha, CUT).unwrap();
            assert!(s.value.abs() < 1e-9, "sandwiched α={alpha}: {}", s.value);
            assert!(p.value.abs() < 1e-9, "petz α={alpha}: {}", p.value);
        }
        let m = max_relative_entropy(&rho, &rho, CUT).unwrap();
        assert!(m.value.abs() < 1e-9);
    }

    #[test]
    fn renyi_reduces_to_classical_on_commuting_states() {
        let p = [0.6, 0.3, 0.1];
        let q = [0.2, 0.5, 0.3];
        let rho = ComplexMatrix::diag(&p);
        let sigma = ComplexMatrix::diag(&q);
        for alpha in [0.5, 0.8, 1.5, 3.0] {
            let cls = classical_renyi(&p, &q, alpha);
            let s = sandwiched_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
            let pz = petz_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
            assert!((s - cls).abs() < 1e-10, "sandwiched α={alpha}");
            assert!((pz - cls).abs() < 1e-10, "petz α={alpha}");
        }
    }

    #[test]
    fn renyi_alpha_one_is_domain_error() {
        let rho = pi(2);
        assert!(matches!(
            sandwiched_renyi(&rho, &rho, 1.0, CUT),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            petz_renyi(&rho, &rho, 1.0, CUT),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn renyi_limit_alpha_to_one_matches_relative_entropy() {
        let mut rng = rng_for(8, 0);
        for _ in 0..3 {
            let rho = random_density(2, &mut rng);
            let sigma = random_density(2, &mut rng);
            let d = relative_entropy(&rho, &sigma, CUT).unwrap().value;
            for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
                let s = sandwiched_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
                assert!((s - d).abs() < 1e-3, "α={alpha}: {s} vs {d}");
            }
        }
    }

    #[test]
    fn petz_two_versus_purity() {
        // D̄₂(ρ‖π_d) = log₂(d · Tr ρ²)
        let mut rng = rng_for(9, 0);
        let rho = random_density(3, &mut rng);
        let purity = rho.matmul(&rho).trace().re;
        let d = petz_renyi(&rho, &pi(3), 2.0, CUT).unwrap().value;
        assert!((d - (3.0 * purity).log2()).abs() < 1e-10);
    }

    #[test]
    fn max_relative_entropy_cases() {
        let e0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let d = max_relative_entropy(&e0, &pi(2), CUT).unwrap();
        assert!((d.value - 1.0).abs() < 1e-10);

        let e1 = ComplexMatrix::diag(&[0.0, 1.0]);
        let inf = max_relative_entropy(&e0, &e1, CUT).unwrap();
        assert!(inf.support_violation);
    }

    #[test]
    fn monotone_in_alpha() {
        let mut rng = rng_for(10, 0);
        let rho = random_density(2, &mut rng);
        let sigma = random_density(2, &mut rng);
        let grid = [0.5, 0.8, 1.2, 2.0, 4.0, 10.0];
        let mut prev = f64::NEG_INFINITY;
        for &alpha in &grid {
            let v = sandwiched_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
            assert!(v >= prev - 1e-9, "not monotone at α={alpha}");
            prev = v;
        }
    }

    #[test]
    fn data_processing_under_partial_trace() {
        // Partial trace is a channel, so divergences cannot increase.
        let mut rng = rng_for(11, 0);
        for _ in 0..3 {
            let rho = random_density(4, &mut rng);
            let sigma = random_density(4, &mut rng);
            let rho_a = partial_trace(&rho, &[2, 2], &[0]).unwrap();
            let sigma_a = partial_trace(&sigma, &[2, 2], &[0]).unwrap();
            for alpha in [0.5, 0.9, 2.0, 8.0] {
                let before = sandwiched_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
                let after = sandwiched_renyi(&rho_a, &sigma_a, alpha, CUT)
                    .unwrap()
                    .value;
                assert!(after <= before + 1e-9, "sandwiched DP fails at α={alpha}");
            }
            for alpha in [0.5, 0.9, 1.5, 2.0] {
                let before = petz_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
                let after = petz_renyi(&rho_a, &sigma_a, alpha, CUT).unwrap().value;
                assert!(after <= before + 1e-9, "petz DP fails at α={alpha}");
            }
            let before = relative_entropy(&rho, &sigma, CUT).unwrap().value;
            let after = relative_entropy(&rho_a, &sigma_a, CUT).unwrap().value;
            assert!(after <= before + 1e-9);
        }
    }

    #[test]
    fn conditional_min_entropy_of_bell_state() {
        // −D_max(Φ‖I⊗π): (I⊗π^{-1/2})Φ(I⊗π^{-1/2}) = 2Φ, so the value is −1.
        let h = conditional_renyi_fixed(
            &bell(),
            &[2, 2],
            1,
            f64::INFINITY,
            RenyiKind::Sandwiched,
            CUT,
        )
        .unwrap();
        assert!((h + 1.0).abs() < 1e-10);
    }

    #[test]
    fn conditional_renyi_fixed_on_product_state() {
        let rho_a = ComplexMatrix::diag(&[0.75, 0.25]);
        let prod = kron(&rho_a, &pi(2));
        for alpha in [0.5, 2.0, 6.0] {
            // H_α(A|B) on a product state is the Rényi entropy of ρ_A.
            let h = conditional_renyi_fixed(&prod, &[2, 2], 1, alpha, RenyiKind::Sandwiched, CUT)
                .unwrap();
            let spectrum_term: f64 = [0.75_f64, 0.25].iter().map(|l| l.powf(alpha)).sum();
            let expected = spectrum_term.log2() / (1.0 - alpha);
            assert!((h - expected).abs() < 1e-10, "α={alpha}");
        }
    }

    #[test]
    fn conditional_renyi_fixed_alpha_near_one() {
        let mut rng = rng_for(12, 0);
        let rho = random_density(4, &mut rng);
        let h1 = conditional_entropy(&rho, &[2, 2], 1, CUT).unwrap();
        for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
            let h = conditional_renyi_fixed(&rho, &[2, 2], 1, alpha, RenyiKind::Sandwiched, CUT)
                .unwrap();
            assert!((h - h1).abs() < 1e-3);
        }
    }

    #[test]
    fn sibson_closed_form_on_products_and_uniform() {
        // Product input: the optimized marginal is the true marginal.
        let rho_a = ComplexMatrix::diag(&[0.75, 0.25]);
        let prod = kron(&rho_a, &pi(2));
        for alpha in [0.5, 2.0] {
            let h = petz_conditional_optimized(&prod, &[2, 2], 1, alpha, CUT).unwrap();
            let spectrum_term: f64 = [0.75_f64, 0.25].iter().map(|l| l.powf(alpha)).sum();
            let expected = spectrum_term.log2() / (1.0 - alpha);
            assert!((h - expected).abs() < 1e-10, "α={alpha}");
        }
        // Maximally mixed bipartite: log₂|A|.
        let h = petz_conditional_optimized(&kron(&pi(2), &pi(2)), &[2, 2], 1, 2.0, CUT).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duality_of_conditional_renyi_entropies() {
        // For τ_RBE pure, H_α(B|R)_{ω|ω} = −H̄_β(B|E)_τ with β = 1/α,
        // where ω = Tr_E τ and the Petz side is marginal-optimized.
        use crate::channel::random_channel;
        let mut rng = rng_for(14, 0);
        for trial in 0..3 {
            let ch = random_channel(2, 2, 2, &mut rng);
            let rho_a = random_density(2, &mut rng);
            let psi = crate::linalg::gamma_purification(&rho_a, CUT).unwrap();
            let iso = ch.stinespring();
            // Purified input on R ⊗ A, then the isometry acts on A.
            let mut joint = ComplexMatrix::outer(&psi, &psi);
            let embed = crate::channel::KrausChannel::new(
                2,
                2 * iso.dim_env,
                vec![iso.isometry().clone()],
                "iso",
            )
            .unwrap();
            joint = embed.apply_embedded_raw(&joint, 2);
            // τ_RBE with dims [R, B, E].
            let dims_rbe = [2, 2, iso.dim_env];
            let omega = partial_trace(&joint, &dims_rbe, &[0, 1]).unwrap();
            let tau = partial_trace(&joint, &dims_rbe, &[1, 2]).unwrap();
            for alpha in [0.6, 2.0, 4.0] {
                let lhs =
                    conditional_renyi_fixed(&omega, &[2, 2], 0, alpha, RenyiKind::Sandwiched, CUT)
                        .unwrap();
                let rhs = petz_conditional_optimized(&tau, &[2, iso.dim_env], 1, 1.0 / alpha, CUT)
                    .unwrap();
                assert!(
                    (lhs + rhs).abs() < 1e-7,
                    "trial {trial}, α={alpha}: {lhs} vs {}",
                    -rhs
                );
            }
        }
    }

    #[test]
    fn sibson_beats_every_fixed_marginal() {
        // The closed form is the sup over conditioning marginals, so any
        // fixed σ can only give a smaller entropy.
        let mut rng = rng_for(13, 0);
        let rho = random_density(4, &mut rng);
        let alpha = 2.0;
        let opt = petz_conditional_optimized(&rho, &[2, 2], 1, alpha, CUT).unwrap();
        for _ in 0..32 {
            let sigma_b = random_density(2, &mut rng);
            let sigma = kron(&ComplexMatrix::identity(2), &sigma_b);
            let fixed = -petz_renyi(&rho, &sigma, alpha, CUT).unwrap().value;
            assert!(fixed <= opt + 1e-9);
        }
    }
}
