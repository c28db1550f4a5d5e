//! Channel representations and standard channel constructors.
//!
//! A channel lives here as a [`KrausChannel`]; conversions to the Choi
//! operator and the Stinespring isometry are exact and round-trippable. The
//! canonical Kraus form (eigenvectors of the Choi operator, ascending
//! eigenvalue, leading entry real-positive) makes equality tests
//! deterministic.
//!
//! Conventions, fixed once:
//! * Choi operators are unnormalized: γ = (id_R ⊗ N)(Γ) with
//!   Γ = Σ_ij |ii⟩⟨jj|, so Tr_B γ = I_R and Tr γ = |A|. The reference
//!   system R is the slower tensor factor.
//! * Stinespring output order is B ⊗ E with V = Σ_e K_e ⊗ |e⟩_E.
//! * The erasure flag is the last basis vector of the (d+1)-dim output.

use num_complex::Complex64;

use crate::entropy::DensityMatrix;
use crate::linalg::{self, hermitian_eig, kron, partial_trace, ComplexMatrix};
use crate::{Error, Result};

/// Eigenvalue cutoff (relative to the largest Choi eigenvalue) below which
/// a Kraus operator is dropped during canonicalization.
const KRAUS_CUTOFF: f64 = 1e-12;

/// A completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub dim_in: usize,
    pub dim_out: usize,
    kraus: Vec<ComplexMatrix>,
    pub name: String,
}

/// Result of [`KrausChannel::validate`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// ‖Σ K†K − I‖_max: zero for an exactly trace-preserving channel.
    pub tp_defect: f64,
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus_count: usize,
    /// Complete positivity is automatic in Kraus form.
    pub completely_positive: bool,
    pub valid: bool,
}

impl KrausChannel {
    /// Wrap a Kraus family, checking shapes and trace preservation.
    pub fn new(
        dim_in: usize,
        dim_out: usize,
        kraus: Vec<ComplexMatrix>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let ch = KrausChannel {
            dim_in,
            dim_out,
            kraus,
            name: name.into(),
        };
        let report = ch.validate()?;
        if !report.valid {
            return Err(Error::Validation(format!(
                "channel '{}' is not trace preserving (defect {:.3e})",
                ch.name, report.tp_defect
            )));
        }
        Ok(ch)
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn kraus_count(&self) -> usize {
        self.kraus.len()
    }

    /// Shape and trace-preservation report; errors only on structurally
    /// broken input (empty family, inconsistent shapes).
    pub fn validate(&self) -> Result<ValidationReport> {
        if self.kraus.is_empty() {
            return Err(Error::Validation(format!(
                "channel '{}' has an empty Kraus sequence",
                self.name
            )));
        }
        for (i, k) in self.kraus.iter().enumerate() {
            if k.rows != self.dim_out || k.cols != self.dim_in {
                return Err(Error::Validation(format!(
                    "channel '{}': Kraus operator {} is {}x{}, expected {}x{}",
                    self.name, i, k.rows, k.cols, self.dim_out, self.dim_in
                )));
            }
        }
        let mut tp = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            tp = tp.add(&k.adjoint().matmul(k));
        }
        let tp_defect = tp.sub(&ComplexMatrix::identity(self.dim_in)).max_abs();
        Ok(ValidationReport {
            tp_defect,
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            kraus_count: self.kraus.len(),
            completely_positive: true,
            valid: tp_defect <= 1e-10,
        })
    }

    /// N(ρ) = Σ K ρ K† on a raw matrix of the channel's input dimension.
    pub fn apply_raw(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = out.add(&k.matmul(m).matmul(&k.adjoint()));
        }
        out
    }

    /// (id_R ⊗ N)(ρ) for a matrix on R ⊗ A with |R| = `ref_dim`.
    pub fn apply_embedded_raw(&self, m: &ComplexMatrix, ref_dim: usize) -> ComplexMatrix {
        let (da, db) = (self.dim_in, self.dim_out);
        assert_eq!(m.rows, ref_dim * da, "embedded apply: dimension mismatch");
        let mut out = ComplexMatrix::zeros(ref_dim * db, ref_dim * db);
        // Work blockwise: m consists of ref_dim² blocks of size da×da.
        for u in 0..ref_dim {
            for v in 0..ref_dim {
                let block = ComplexMatrix::from_fn(da, da, |i, j| m[(u * da + i, v * da + j)]);
                let mapped = self.apply_raw(&block);
                for i in 0..db {
                    for j in 0..db {
                        out[(u * db + i, v * db + j)] = mapped[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// Adjoint (Heisenberg-picture) map N†(X) = Σ K† X K; unital whenever
    /// the channel is trace preserving.
    pub fn apply_adjoint_raw(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            out = out.add(&k.adjoint().matmul(m).matmul(k));
        }
        out
    }

    /// Apply to a density matrix, optionally tensored with an untouched
    /// reference system of dimension `embed` on the left.
    pub fn apply(&self, rho: &DensityMatrix, embed: Option<usize>) -> Result<DensityMatrix> {
        let out = match embed {
            None => {
                if rho.dim() != self.dim_in {
                    return Err(Error::Validation(format!(
                        "channel '{}' expects input dimension {}, got {}",
                        self.name,
                        self.dim_in,
                        rho.dim()
                    )));
                }
                self.apply_raw(rho.matrix())
            }
            Some(r) => {
                if rho.dim() != r * self.dim_in {
                    return Err(Error::Validation(format!(
                        "channel '{}' with reference {} expects dimension {}, got {}",
                        self.name,
                        r,
                        r * self.dim_in,
                        rho.dim()
                    )));
                }
                self.apply_embedded_raw(rho.matrix(), r)
            }
        };
        Ok(DensityMatrix::trusted(out))
    }

    /// The unnormalized Choi operator (id ⊗ N)(Γ).
    pub fn choi(&self) -> ChoiOperator {
        let (da, db) = (self.dim_in, self.dim_out);
        let mut gamma = ComplexMatrix::zeros(da * db, da * db);
        for k in &self.kraus {
            for i in 0..da {
                for m in 0..db {
                    let a = k[(m, i)];
                    if a.norm_sqr() == 0.0 {
                        continue;
                    }
                    for j in 0..da {
                        for n in 0..db {
                            gamma[(i * db + m, j * db + n)] += a * k[(n, j)].conj();
                        }
                    }
                }
            }
        }
        ChoiOperator {
            dim_in: da,
            dim_out: db,
            gamma,
        }
    }

    /// Stinespring isometry V = Σ_e K_e ⊗ |e⟩_E with output order B ⊗ E,
    /// so Tr_E(VρV†) recovers the channel.
    pub fn stinespring(&self) -> StinespringIsometry {
        let k = self.kraus.len();
        let (da, db) = (self.dim_in, self.dim_out);
        let mut v = ComplexMatrix::zeros(db * k, da);
        for (e, op) in self.kraus.iter().enumerate() {
            for m in 0..db {
                for a in 0..da {
                    v[(m * k + e, a)] = op[(m, a)];
                }
            }
        }
        StinespringIsometry {
            isometry: v,
            dim_in: da,
            dim_out: db,
            dim_env: k,
        }
    }

    /// Complementary channel N^c(ρ) = Tr_B(VρV†) with entries
    /// [N^c(ρ)]_{ef} = Tr(K_e ρ K_f†); output dimension is the Kraus count.
    pub fn complementary(&self) -> KrausChannel {
        let k = self.kraus.len();
        let (da, db) = (self.dim_in, self.dim_out);
        // One Kraus operator per output basis vector of B: C_m[e,a] = K_e[m,a].
        let comp: Vec<ComplexMatrix> = (0..db)
            .map(|m| ComplexMatrix::from_fn(k, da, |e, a| self.kraus[e][(m, a)]))
            .collect();
        KrausChannel {
            dim_in: da,
            dim_out: k,
            kraus: comp,
            name: format!("{}^c", self.name),
        }
    }

    /// Tensor product channel with Kraus family {K_i ⊗ L_j}.
    pub fn tensor(&self, other: &KrausChannel) -> KrausChannel {
        let kraus: Vec<ComplexMatrix> = self
            .kraus
            .iter()
            .flat_map(|k| other.kraus.iter().map(move |l| kron(k, l)))
            .collect();
        KrausChannel {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            kraus,
            name: format!("{}⊗{}", self.name, other.name),
        }
    }

    /// Canonical Kraus form via the Choi eigendecomposition; at most
    /// |A|·|B| operators, deterministic ordering and phases.
    pub fn canonicalize(&self) -> Result<KrausChannel> {
        let mut ch = self.choi().into_kraus()?;
        ch.name = self.name.clone();
        Ok(ch)
    }

    /// Largest entrywise distance between the Choi operators of two
    /// channels; zero iff the channel actions agree.
    pub fn choi_distance(&self, other: &KrausChannel) -> f64 {
        self.choi().gamma().sub(other.choi().gamma()).max_abs()
    }
}

/// The unnormalized Choi operator of a channel.
#[derive(Debug, Clone)]
pub struct ChoiOperator {
    pub dim_in: usize,
    pub dim_out: usize,
    gamma: ComplexMatrix,
}

impl ChoiOperator {
    /// Validate PSD and trace preservation (Tr_B γ = I_R within 1e-9).
    pub fn new(dim_in: usize, dim_out: usize, gamma: ComplexMatrix) -> Result<Self> {
        if gamma.rows != dim_in * dim_out || !gamma.is_square() {
            return Err(Error::Validation(format!(
                "Choi operator must be {0}x{0}, got {1}x{2}",
                dim_in * dim_out,
                gamma.rows,
                gamma.cols
            )));
        }
        if gamma.hermitian_defect() > linalg::HERMITIAN_TOL {
            return Err(Error::Validation("Choi operator is not Hermitian".into()));
        }
        let min = hermitian_eig(&gamma)?.min_eigenvalue();
        if min < -1e-10 {
            return Err(Error::Validation(format!(
                "Choi operator has negative eigenvalue {min:.3e}"
            )));
        }
        let reduced = partial_trace(&gamma, &[dim_in, dim_out], &[0])?;
        let defect = reduced.sub(&ComplexMatrix::identity(dim_in)).max_abs();
        if defect > 1e-9 {
            return Err(Error::Validation(format!(
                "Choi operator violates trace preservation (Tr_B defect {defect:.3e})"
            )));
        }
        Ok(ChoiOperator {
            dim_in,
            dim_out,
            gamma,
        })
    }

    pub fn gamma(&self) -> &ComplexMatrix {
        &self.gamma
    }

    /// The normalized Choi state γ/|A|.
    pub fn state(&self) -> ComplexMatrix {
        self.gamma.scale_re(1.0 / self.dim_in as f64)
    }

    /// Largest eigenvalue of the unnormalized Choi operator.
    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eig(&self.gamma)?.max_eigenvalue())
    }

    /// Extract the canonical Kraus family: one operator per Choi eigenvalue
    /// above the cutoff, ascending eigenvalue order, scaled by √eigenvalue,
    /// leading nonzero entry made real-positive.
    pub fn into_kraus(&self) -> Result<KrausChannel> {
        let eig = hermitian_eig(&self.gamma)?;
        let (da, db) = (self.dim_in, self.dim_out);
        let cutoff = KRAUS_CUTOFF * eig.max_eigenvalue().max(0.0).max(1e-300);
        let mut kraus = Vec::new();
        for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= cutoff {
                continue;
            }
            let v = eig.eigenvector(idx);
            let w = lambda.sqrt();
            let mut k = ComplexMatrix::from_fn(db, da, |m, a| v[a * db + m].scale(w));
            // Phase fixing: leading (row-major) nonzero entry real-positive.
            if let Some(lead) = k.entries().iter().find(|e| e.norm() > 1e-12 * w) {
                let phase = lead / lead.norm();
                k = k.scale(phase.conj());
            }
            kraus.push(k);
        }
        KrausChannel::new(da, db, kraus, "from-choi")
    }
}

/// Stinespring dilation V: A → B ⊗ E with V†V = I.
#[derive(Debug, Clone)]
pub struct StinespringIsometry {
    isometry: ComplexMatrix,
    pub dim_in: usize,
    pub dim_out: usize,
    pub dim_env: usize,
}

impl StinespringIsometry {
    pub fn isometry(&self) -> &ComplexMatrix {
        &self.isometry
    }

    /// ‖V†V − I‖_max.
    pub fn isometry_defect(&self) -> f64 {
        self.isometry
            .adjoint()
            .matmul(&self.isometry)
            .sub(&ComplexMatrix::identity(self.dim_in))
            .max_abs()
    }

    /// VρV† on B ⊗ E.
    pub fn conjugate(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.isometry.matmul(rho).matmul(&self.isometry.adjoint())
    }
}

// ---------------------------------------------------------------------------
// Standard channels
// ---------------------------------------------------------------------------

/// Γ = Σ_ij |ii⟩⟨jj|, the unnormalized maximally entangled operator.
pub fn gamma_operator(d: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            g[(i * d + i, j * d + j)] = Complex64::new(1.0, 0.0);
        }
    }
    g
}

/// The normalized maximally entangled state Φ = Γ/d.
pub fn max_entangled_state(d: usize) -> ComplexMatrix {
    gamma_operator(d).scale_re(1.0 / d as f64)
}

/// SWAP operator on d ⊗ d.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |rc, cc| {
        let (i, j) = (rc / d, rc % d);
        let (k, l) = (cc / d, cc % d);
        if i == l && j == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Parameter block for [`standard_channel`].
#[derive(Debug, Clone)]
pub enum StandardChannel {
    Identity {
        d: usize,
    },
    /// R(X) = Tr(X) π_out.
    Randomizing {
        d_in: usize,
        d_out: usize,
    },
    /// Replaces every input with the given state.
    Replacer {
        d_in: usize,
        sigma: ComplexMatrix,
    },
    /// (1−p)ρ ⊕ 0 + p Tr(ρ)|e⟩⟨e| with the erasure flag last.
    Erasure {
        d: usize,
        p: f64,
    },
    /// Σ_ℓ p_ℓ Z^ℓ ρ Z^{ℓ†} with Z|x⟩ = e^{2πi x/d}|x⟩.
    Dephasing {
        probs: Vec<f64>,
    },
    /// (1−p)ρ + p π.
    Depolarizing {
        d: usize,
        p: f64,
    },
    /// (Tr(ρ) I − ρ^T)/(d−1); realized through its Choi operator, which is
    /// proportional to the antisymmetric projector.
    WernerHolevo {
        d: usize,
    },
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Validation(format!(
            "{what} probability must lie in [0,1], got {p}"
        )));
    }
    Ok(())
}

/// Build one of the standard channel families.
pub fn standard_channel(spec: &StandardChannel) -> Result<KrausChannel> {
    match spec {
        StandardChannel::Identity { d } => {
            if *d == 0 {
                return Err(Error::Validation("identity channel needs d ≥ 1".into()));
            }
            KrausChannel::new(
                *d,
                *d,
                vec![ComplexMatrix::identity(*d)],
                format!("identity{d}"),
            )
        }
        StandardChannel::Randomizing { d_in, d_out } => {
            if *d_in == 0 || *d_out == 0 {
                return Err(Error::Validation(
                    "randomizing channel needs positive dims".into(),
                ));
            }
            let scale = 1.0 / (*d_out as f64).sqrt();
            let mut kraus = Vec::with_capacity(d_in * d_out);
            for m in 0..*d_out {
                for a in 0..*d_in {
                    let mut k = ComplexMatrix::zeros(*d_out, *d_in);
                    k[(m, a)] = Complex64::new(scale, 0.0);
                    kraus.push(k);
                }
            }
            KrausChannel::new(*d_in, *d_out, kraus, format!("randomizing{d_in}to{d_out}"))
        }
        StandardChannel::Replacer { d_in, sigma } => {
            let state = DensityMatrix::new(sigma.clone())
                .map_err(|e| Error::Validation(format!("replacer target: {e}")))?;
            let d_out = state.dim();
            let eig = hermitian_eig(state.matrix())?;
            let mut kraus = Vec::new();
            for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
                if lambda <= 1e-14 {
                    continue;
                }
                let v = eig.eigenvector(idx);
                let w = lambda.sqrt();
                for a in 0..*d_in {
                    kraus.push(ComplexMatrix::from_fn(d_out, *d_in, |m, col| {
                        if col == a {
                            v[m].scale(w)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    }));
                }
            }
            KrausChannel::new(*d_in, d_out, kraus, format!("replacer{d_in}to{d_out}"))
        }
        StandardChannel::Erasure { d, p } => {
            check_probability(*p, "erasure")?;
            if *d < 2 {
                return Err(Error::Validation("erasure channel needs d ≥ 2".into()));
            }
            let (da, db) = (*d, *d + 1);
            let mut kraus = Vec::new();
            if *p < 1.0 {
                let keep = ComplexMatrix::from_fn(db, da, |m, a| {
                    if m == a {
                        Complex64::new((1.0 - p).sqrt(), 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                kraus.push(keep);
            }
            if *p > 0.0 {
                for a in 0..da {
                    let mut k = ComplexMatrix::zeros(db, da);
                    k[(db - 1, a)] = Complex64::new(p.sqrt(), 0.0);
                    kraus.push(k);
                }
            }
            KrausChannel::new(da, db, kraus, format!("erasure{d}(p={p})"))
        }
        StandardChannel::Dephasing { probs } => {
            let d = probs.len();
            if d == 0 {
                return Err(Error::Validation(
                    "dephasing needs a probability vector".into(),
                ));
            }
            if probs.iter().any(|&p| p < 0.0) {
                return Err(Error::Validation(
                    "dephasing probabilities must be ≥ 0".into(),
                ));
            }
            let total: f64 = probs.iter().sum();
            if (total - 1.0).abs() > 1e-10 {
                return Err(Error::Validation(format!(
                    "dephasing probabilities sum to {total}, expected 1"
                )));
            }
            let z = clock_operator(d);
            let mut kraus = Vec::new();
            let mut zl = ComplexMatrix::identity(d);
            for &p in probs {
                if p > 0.0 {
                    kraus.push(zl.scale_re(p.sqrt()));
                }
                zl = zl.matmul(&z);
            }
            KrausChannel::new(d, d, kraus, format!("dephasing{d}"))
        }
        StandardChannel::Depolarizing { d, p } => {
            check_probability(*p, "depolarizing")?;
            if *d < 2 {
                return Err(Error::Validation("depolarizing channel needs d ≥ 2".into()));
            }
            let df = *d as f64;
            let gamma = gamma_operator(*d)
                .scale_re(1.0 - p)
                .add(&ComplexMatrix::identity(d * d).scale_re(p / df));
            let mut ch = ChoiOperator::new(*d, *d, gamma)?.into_kraus()?;
            ch.name = format!("depolarizing{d}(p={p})");
            Ok(ch)
        }
        StandardChannel::WernerHolevo { d } => {
            if *d < 2 {
                return Err(Error::Validation(
                    "Werner–Holevo channel needs d ≥ 2".into(),
                ));
            }
            let gamma = ComplexMatrix::identity(d * d)
                .sub(&swap_operator(*d))
                .scale_re(1.0 / (*d as f64 - 1.0));
            let mut ch = ChoiOperator::new(*d, *d, gamma)?.into_kraus()?;
            ch.name = format!("werner-holevo{d}");
            Ok(ch)
        }
    }
}

/// Generalized Pauli Z (clock) operator: Z|x⟩ = e^{2πi x/d}|x⟩.
pub fn clock_operator(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / d as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Generalized Pauli X (shift) operator: X|x⟩ = |x+1 mod d⟩.
pub fn shift_operator(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Seeded random channel: a Haar-like isometry A → B ⊗ E sliced into
/// `kraus_count` Kraus blocks.
pub fn random_channel(
    d_in: usize,
    d_out: usize,
    kraus_count: usize,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> KrausChannel {
    let v = crate::rng::random_isometry(d_out * kraus_count, d_in, rng);
    // K_e[m,a] = V[(m,e),a], matching the Stinespring ordering.
    let kraus: Vec<ComplexMatrix> = (0..kraus_count)
        .map(|e| ComplexMatrix::from_fn(d_out, d_in, |m, a| v[(m * kraus_count + e, a)]))
        .collect();
    KrausChannel::new(d_in, d_out, kraus, "random").expect("random isometry gives a valid channel")
}

/// The Heisenberg–Weyl unitaries {X^a Z^b}; a unitary one-design.
pub fn heisenberg_weyl_group(d: usize) -> Vec<ComplexMatrix> {
    let x = shift_operator(d);
    let z = clock_operator(d);
    let mut group = Vec::with_capacity(d * d);
    let mut xa = ComplexMatrix::identity(d);
    for _ in 0..d {
        let mut xz = xa.clone();
        for _ in 0..d {
            group.push(xz.clone());
            xz = xz.matmul(&z);
        }
        xa = xa.matmul(&x);
    }
    group
}

// ---------------------------------------------------------------------------
// Covariance check
// ---------------------------------------------------------------------------

/// Outcome of [`covariance_check`].
#[derive(Debug, Clone, Copy)]
pub struct CovarianceReport {
    /// N ∘ U^g = V^g ∘ N for every g (Choi distance ≤ 1e-9).
    pub covariant: bool,
    /// The averaged input conjugation equals the randomizing channel.
    pub one_design: bool,
    /// Largest Choi distance seen across the group elements.
    pub max_choi_distance: f64,
}

/// Check channel covariance with respect to paired unitary representations
/// on the input and output, and whether the input representation averages
/// to a unitary one-design.
pub fn covariance_check(
    channel: &KrausChannel,
    input_unitaries: &[ComplexMatrix],
    output_unitaries: &[ComplexMatrix],
) -> Result<CovarianceReport> {
    if input_unitaries.len() != output_unitaries.len() || input_unitaries.is_empty() {
        return Err(Error::Validation(
            "covariance check needs matching nonempty unitary sequences".into(),
        ));
    }
    for (label, seq, dim) in [
        ("input", input_unitaries, channel.dim_in),
        ("output", output_unitaries, channel.dim_out),
    ] {
        for (g, u) in seq.iter().enumerate() {
            if u.rows != dim || u.cols != dim {
                return Err(Error::Validation(format!(
                    "{label} unitary {g} has wrong dimensions"
                )));
            }
            let defect = u
                .adjoint()
                .matmul(u)
                .sub(&ComplexMatrix::identity(dim))
                .max_abs();
            if defect > 1e-10 {
                return Err(Error::Validation(format!(
                    "{label} operator {g} is not unitary (defect {defect:.3e})"
                )));
            }
        }
    }

    let mut max_dist: f64 = 0.0;
    for (u, v) in input_unitaries.iter().zip(output_unitaries) {
        let pre: Vec<ComplexMatrix> = channel.kraus.iter().map(|k| k.matmul(u)).collect();
        let post: Vec<ComplexMatrix> = channel.kraus.iter().map(|k| v.matmul(k)).collect();
        let lhs = KrausChannel {
            dim_in: channel.dim_in,
            dim_out: channel.dim_out,
            kraus: pre,
            name: String::new(),
        };
        let rhs = KrausChannel {
            dim_in: channel.dim_in,
            dim_out: channel.dim_out,
            kraus: post,
            name: String::new(),
        };
        max_dist = max_dist.max(lhs.choi_distance(&rhs));
    }

    let weight = 1.0 / (input_unitaries.len() as f64).sqrt();
    let averaged = KrausChannel {
        dim_in: channel.dim_in,
        dim_out: channel.dim_in,
        kraus: input_unitaries.iter().map(|u| u.scale_re(weight)).collect(),
        name: String::new(),
    };
    let randomizing = standard_channel(&StandardChannel::Randomizing {
        d_in: channel.dim_in,
        d_out: channel.dim_in,
    })?;
    let one_design = averaged.choi_distance(&randomizing) <= 1e-9;

    Ok(CovarianceReport {
        covariant: max_dist <= 1e-9,
        one_design,
        max_choi_distance: max_dist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::von_neumann_entropy;
    use crate::linalg::permute_subsystems;
    use crate::rng::{random_density, rng_for};

    const CUT: f64 = 1e-14;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validate_erasure_and_scaled_family() {
        let ch = standard_channel(&StandardChannel::Erasure { d: 2, p: 0.5 }).unwrap();
        assert!(ch.validate().unwrap().tp_defect <= 1e-12);

        let scaled: Vec<ComplexMatrix> = ch.kraus().iter().map(|k| k.scale_re(0.9)).collect();
        let broken = KrausChannel {
            dim_in: 2,
            dim_out: 3,
            kraus: scaled,
            name: "scaled".into(),
        };
        let report = broken.validate().unwrap();
        assert!(!report.valid);
        assert!((report.tp_defect - 0.19).abs() < 1e-12);
    }

    #[test]
    fn empty_kraus_is_error() {
        let ch = KrausChannel {
            dim_in: 2,
            dim_out: 2,
            kraus: vec![],
            name: "empty".into(),
        };
        assert!(ch.validate().is_err());
    }

    #[test]
    fn choi_of_identity_channel() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let eigs = hermitian_eig(id.choi().gamma()).unwrap().eigenvalues;
        let expected = [0.0, 0.0, 0.0, 2.0];
        for (a, b) in eigs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn choi_of_randomizing_and_replacer() {
        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let expected = kron(
            &ComplexMatrix::identity(2),
            &ComplexMatrix::diag(&[0.5, 0.5]),
        );
        assert!(r.choi().gamma().sub(&expected).max_abs() < 1e-12);

        let mut rng = rng_for(21, 0);
        let sigma = random_density(3, &mut rng);
        let rep = standard_channel(&StandardChannel::Replacer {
            d_in: 2,
            sigma: sigma.clone(),
        })
        .unwrap();
        let expected = kron(&ComplexMatrix::identity(2), &sigma);
        assert!(rep.choi().gamma().sub(&expected).max_abs() < 1e-10);
    }

    #[test]
    fn choi_to_kraus_identity_channel() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let back = id.choi().into_kraus().unwrap();
        assert_eq!(back.kraus_count(), 1);
        assert!(back.kraus()[0].sub(&ComplexMatrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn choi_to_kraus_randomizing_action() {
        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let back = r.choi().into_kraus().unwrap();
        assert_eq!(back.kraus_count(), 4);
        let mut rng = rng_for(22, 0);
        let rho = random_density(2, &mut rng);
        let out = back.apply_raw(&rho);
        assert!(out.sub(&ComplexMatrix::diag(&[0.5, 0.5])).max_abs() < 1e-10);
    }

    #[test]
    fn kraus_count_equals_choi_rank() {
        let mut rng = rng_for(23, 0);
        let ch = random_channel(2, 3, 2, &mut rng);
        let canon = ch.canonicalize().unwrap();
        let rank = hermitian_eig(ch.choi().gamma())
            .unwrap()
            .eigenvalues
            .iter()
            .filter(|&&l| l > 1e-10)
            .count();
        assert_eq!(canon.kraus_count(), rank);
    }

    #[test]
    fn round_trip_preserves_action_on_operator_basis() {
        let mut rng = rng_for(24, 0);
        let ch = random_channel(3, 2, 3, &mut rng);
        let back = ch.canonicalize().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut basis = ComplexMatrix::zeros(3, 3);
                basis[(i, j)] = c(1.0, 0.0);
                let diff = ch.apply_raw(&basis).sub(&back.apply_raw(&basis)).max_abs();
                assert!(diff < 1e-8, "action differs on basis ({i},{j}): {diff:.3e}");
            }
        }
    }

    #[test]
    fn stinespring_identity_and_dephasing() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let v = id.stinespring();
        assert_eq!(v.dim_env, 1);
        assert!(v.isometry().sub(&ComplexMatrix::identity(2)).max_abs() < 1e-14);

        let p = 0.3;
        let deph = standard_channel(&StandardChannel::Dephasing {
            probs: vec![1.0 - p, p],
        })
        .unwrap();
        let v = deph.stinespring();
        assert!(v.isometry_defect() < 1e-12);
        // V = √(1−p)·I⊗|0⟩ + √p·Z⊗|1⟩ in the B ⊗ E ordering.
        let z = clock_operator(2);
        let expected = ComplexMatrix::from_fn(4, 2, |row, a| {
            let (m, e) = (row / 2, row % 2);
            if e == 0 {
                if m == a {
                    c((1.0 - p).sqrt(), 0.0)
                } else {
                    c(0.0, 0.0)
                }
            } else {
                z[(m, a)].scale(p.sqrt())
            }
        });
        assert!(v.isometry().sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn stinespring_matches_kraus_action() {
        let mut rng = rng_for(25, 0);
        let ch = random_channel(2, 3, 2, &mut rng);
        let v = ch.stinespring();
        let rho = random_density(2, &mut rng);
        let joint = v.conjugate(&rho);
        let out = partial_trace(&joint, &[3, v.dim_env], &[0]).unwrap();
        assert!(out.sub(&ch.apply_raw(&rho)).max_abs() < 1e-10);
        // Tracing out B instead gives the complementary channel.
        let env = partial_trace(&joint, &[3, v.dim_env], &[1]).unwrap();
        assert!(env.sub(&ch.complementary().apply_raw(&rho)).max_abs() < 1e-10);
    }

    #[test]
    fn complementary_identity_and_dephasing() {
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let comp = id.complementary();
        assert_eq!(comp.dim_out, 1);
        let rho = ComplexMatrix::diag(&[0.25, 0.75]);
        let out = comp.apply_raw(&rho);
        assert!((out[(0, 0)].re - 1.0).abs() < 1e-12);

        let deph = standard_channel(&StandardChannel::Dephasing {
            probs: vec![0.5, 0.5],
        })
        .unwrap();
        let out = deph
            .complementary()
            .apply_raw(&ComplexMatrix::diag(&[0.5, 0.5]));
        assert!(out.sub(&ComplexMatrix::diag(&[0.5, 0.5])).max_abs() < 1e-12);
    }

    #[test]
    fn isometric_invariance_of_entropy() {
        let mut rng = rng_for(26, 0);
        let ch = random_channel(3, 2, 2, &mut rng);
        let rho = random_density(3, &mut rng);
        let joint = ch.stinespring().conjugate(&rho);
        let h_joint = von_neumann_entropy(&joint, CUT).unwrap();
        let h_in = von_neumann_entropy(&rho, CUT).unwrap();
        assert!((h_joint - h_in).abs() < 1e-9);
    }

    #[test]
    fn apply_standard_channels() {
        let mut rng = rng_for(27, 0);
        let rho = DensityMatrix::new(random_density(2, &mut rng)).unwrap();

        let r = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let out = r.apply(&rho, None).unwrap();
        assert!(
            out.matrix()
                .sub(&ComplexMatrix::diag(&[0.5, 0.5]))
                .max_abs()
                < 1e-12
        );

        let er = standard_channel(&StandardChannel::Erasure { d: 2, p: 1.0 }).unwrap();
        let out = er.apply(&rho, None).unwrap();
        assert!(
            out.matrix()
                .sub(&ComplexMatrix::diag(&[0.0, 0.0, 1.0]))
                .max_abs()
                < 1e-12
        );
    }

    #[test]
    fn embedded_apply_reproduces_choi() {
        let mut rng = rng_for(28, 0);
        let ch = random_channel(2, 3, 2, &mut rng);
        let gamma_in = gamma_operator(2);
        let via_apply = ch.apply_embedded_raw(&gamma_in, 2);
        assert!(via_apply.sub(ch.choi().gamma()).max_abs() < 1e-12);
    }

    #[test]
    fn depolarizing_limit_is_randomizing() {
        for d in [2, 3] {
            let dep = standard_channel(&StandardChannel::Depolarizing { d, p: 1.0 }).unwrap();
            let r = standard_channel(&StandardChannel::Randomizing { d_in: d, d_out: d }).unwrap();
            assert!(dep.choi_distance(&r) < 1e-12);
        }
    }

    #[test]
    fn trivial_dephasing_is_identity() {
        let deph = standard_channel(&StandardChannel::Dephasing {
            probs: vec![1.0, 0.0],
        })
        .unwrap();
        let id = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        assert!(deph.choi_distance(&id) < 1e-12);
    }

    #[test]
    fn constructors_are_trace_preserving() {
        let specs = [
            StandardChannel::Erasure { d: 3, p: 0.3 },
            StandardChannel::Depolarizing { d: 3, p: 0.4 },
            StandardChannel::WernerHolevo { d: 3 },
            StandardChannel::Dephasing {
                probs: vec![0.2, 0.3, 0.5],
            },
        ];
        for spec in &specs {
            let ch = standard_channel(spec).unwrap();
            let reduced = partial_trace(ch.choi().gamma(), &[ch.dim_in, ch.dim_out], &[0]).unwrap();
            let defect = reduced.sub(&ComplexMatrix::identity(ch.dim_in)).max_abs();
            assert!(defect < 1e-9, "{}: Tr_B Choi defect {defect:.3e}", ch.name);
        }
    }

    #[test]
    fn tensor_of_identities_and_randomizing() {
        let id2 = standard_channel(&StandardChannel::Identity { d: 2 }).unwrap();
        let id4 = standard_channel(&StandardChannel::Identity { d: 4 }).unwrap();
        assert!(id2.tensor(&id2).choi_distance(&id4) < 1e-12);

        let r2 = standard_channel(&StandardChannel::Randomizing { d_in: 2, d_out: 2 }).unwrap();
        let r4 = standard_channel(&StandardChannel::Randomizing { d_in: 4, d_out: 4 }).unwrap();
        assert!(r2.tensor(&r2).choi_distance(&r4) < 1e-12);
    }

    #[test]
    fn tensor_choi_is_permuted_kron_of_chois() {
        let mut rng = rng_for(29, 0);
        let n = random_channel(2, 2, 2, &mut rng);
        let m = random_channel(2, 3, 2, &mut rng);
        let prod_choi = n.tensor(&m).choi();
        // kron(Choi_N, Choi_M) lives on R1 B1 R2 B2; the product Choi is on
        // R1 R2 B1 B2.
        let permuted = permute_subsystems(
            &kron(n.choi().gamma(), m.choi().gamma()),
            &[2, 2, 2, 3],
            &[0, 2, 1, 3],
        )
        .unwrap();
        assert!(prod_choi.gamma().sub(&permuted).max_abs() < 1e-10);
    }

    #[test]
    fn dephasing_is_heisenberg_weyl_covariant() {
        for d in [2, 3] {
            let probs: Vec<f64> = (0..d).map(|i| i as f64 + 1.0).collect();
            let total: f64 = probs.iter().sum();
            let probs: Vec<f64> = probs.iter().map(|p| p / total).collect();
            let ch = standard_channel(&StandardChannel::Dephasing { probs }).unwrap();
            let group = heisenberg_weyl_group(d);
            let report = covariance_check(&ch, &group, &group).unwrap();
            assert!(report.covariant, "d={d}: {:.3e}", report.max_choi_distance);
            assert!(report.one_design);
        }
    }

    #[test]
    fn depolarizing_is_pauli_covariant() {
        let ch = standard_channel(&StandardChannel::Depolarizing { d: 2, p: 0.3 }).unwrap();
        let group = heisenberg_weyl_group(2);
        let report = covariance_check(&ch, &group, &group).unwrap();
        assert!(report.covariant && report.one_design);
    }

    #[test]
    fn amplitude_damping_is_not_pauli_covariant() {
        let g: f64 = 0.5;
        let k0 = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c((1.0 - g).sqrt(), 0.0)],
        ])
        .unwrap();
        let k1 = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(g.sqrt(), 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let ch = KrausChannel::new(2, 2, vec![k0, k1], "amplitude-damping").unwrap();
        let group = heisenberg_weyl_group(2);
        let report = covariance_check(&ch, &group, &group).unwrap();
        assert!(!report.covariant);
    }

    #[test]
    fn complementary_of_complementary_matches_original() {
        let mut rng = rng_for(30, 0);
        let ch = random_channel(2, 3, 2, &mut rng);
        let cc = ch.complementary().complementary();
        let rho = random_density(2, &mut rng);
        assert!(cc.apply_raw(&rho).sub(&ch.apply_raw(&rho)).max_abs() < 1e-10);
    }
}
