//! Superchannels: transformations of channels into channels.
//!
//! Physical realization: pre-processing Λ: C → A ⊗ E with a memory system
//! E, the input channel acting on A, and post-processing Ω: B ⊗ E → D. The
//! constructors here build the classes the channel entropy functions must
//! be monotone under: random-unitary superchannels, mixtures of unital
//! pre-processing with arbitrary post-processing, and doubly stochastic
//! candidates (both marginal conditions hold by construction).

use num_complex::Complex64;

use crate::channel::{random_channel, standard_channel, KrausChannel, StandardChannel};
use crate::linalg::{kron, ComplexMatrix};
use crate::rng::{self, random_probabilities, random_unitary};
use crate::{Error, Result};

/// Structural class of a superchannel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperchannelKind {
    General,
    /// Σ_x p(x) V^x ∘ N ∘ U^x with unitary pre and post conjugations.
    RandomUnitary,
    /// Verified to map the randomizing channel to the randomizing channel.
    UniformityPreserving,
    /// Built so that Tr_E ∘ Λ is unital and Ω(I_B ⊗ ρ_ER) = I_D ⊗ ρ_R.
    DoublyStochasticCandidate,
}

/// A superchannel in pre/post realization.
#[derive(Debug, Clone)]
pub struct Superchannel {
    /// Pre-processing Λ: C → A ⊗ E (A slow, E fast).
    pub pre: KrausChannel,
    /// Post-processing Ω: B ⊗ E → D.
    pub post: KrausChannel,
    pub dim_memory: usize,
    pub kind: SuperchannelKind,
    /// Input dimension A of channels this superchannel accepts.
    pub dim_a: usize,
    /// Output dimension B of channels this superchannel accepts.
    pub dim_b: usize,
}

impl Superchannel {
    /// Validate the dimension chaining C → A⊗E, B⊗E → D.
    pub fn new(
        pre: KrausChannel,
        post: KrausChannel,
        dim_memory: usize,
        dim_a: usize,
        dim_b: usize,
        kind: SuperchannelKind,
    ) -> Result<Self> {
        if pre.dim_out != dim_a * dim_memory {
            return Err(Error::Validation(format!(
                "superchannel pre-processing outputs dimension {}, expected |A||E| = {}",
                pre.dim_out,
                dim_a * dim_memory
            )));
        }
        if post.dim_in != dim_b * dim_memory {
            return Err(Error::Validation(format!(
                "superchannel post-processing consumes dimension {}, expected |B||E| = {}",
                post.dim_in,
                dim_b * dim_memory
            )));
        }
        Ok(Superchannel {
            pre,
            post,
            dim_memory,
            kind,
            dim_a,
            dim_b,
        })
    }

    pub fn dim_c(&self) -> usize {
        self.pre.dim_in
    }

    pub fn dim_d(&self) -> usize {
        self.post.dim_out
    }

    /// Θ(N) = Ω ∘ (N ⊗ id_E) ∘ Λ with composite Kraus family
    /// {Ω_c (K_i ⊗ I_E) Λ_a}. The result is canonicalized when the raw
    /// family outgrows |C||D|.
    pub fn apply(&self, channel: &KrausChannel) -> Result<KrausChannel> {
        if channel.dim_in != self.dim_a || channel.dim_out != self.dim_b {
            return Err(Error::Validation(format!(
                "superchannel expects a {}→{} channel, got {}→{}",
                self.dim_a, self.dim_b, channel.dim_in, channel.dim_out
            )));
        }
        let id_e = ComplexMatrix::identity(self.dim_memory);
        let mut kraus = Vec::new();
        for omega in self.post.kraus() {
            for k in channel.kraus() {
                let mid = omega.matmul(&kron(k, &id_e));
                for lambda in self.pre.kraus() {
                    kraus.push(mid.matmul(lambda));
                }
            }
        }
        let out = KrausChannel::new(
            self.dim_c(),
            self.dim_d(),
            kraus,
            format!("Θ[{}]", channel.name),
        )?;
        if out.kraus_count() > self.dim_c() * self.dim_d() {
            out.canonicalize()
        } else {
            Ok(out)
        }
    }
}

/// Parameter block for [`make_superchannel`]. All randomized constructions
/// are deterministic functions of the seed passed to `make_superchannel`.
#[derive(Debug, Clone)]
pub enum SuperchannelSpec {
    /// Σ_x p(x) V^x ∘ N ∘ U^x with Haar-like U^x, V^x and random p.
    RandomUnitary {
        dim_a: usize,
        dim_b: usize,
        terms: usize,
    },
    /// Mixture Σ_x p(x) Ω^x ∘ N ∘ Λ^x with unital Λ^x: C → A⊗E (so
    /// |C| = |A||E|) and arbitrary channels Ω^x: B⊗E → D.
    UnitalPreMix {
        dim_a: usize,
        dim_b: usize,
        dim_e: usize,
        dim_d: usize,
        terms: usize,
    },
    /// Memory-free Ω ∘ N ∘ Λ from explicit channels Λ: C → A, Ω: B → D.
    PrePost {
        pre: KrausChannel,
        post: KrausChannel,
    },
    /// Doubly stochastic candidate with |C| = |A|, |D| = |B|:
    /// Λ(ρ) = Σ_x q_x U^x ρ U^x† ⊗ θ^x and Ω = measure E, rotate B.
    DoublyStochastic {
        dim_a: usize,
        dim_b: usize,
        dim_e: usize,
        terms: usize,
    },
}

/// Build a superchannel from a spec and a seed.
pub fn make_superchannel(spec: &SuperchannelSpec, seed: u64) -> Result<Superchannel> {
    match spec {
        SuperchannelSpec::RandomUnitary {
            dim_a,
            dim_b,
            terms,
        } => {
            if *terms == 0 {
                return Err(Error::Validation(
                    "random-unitary superchannel needs ≥ 1 term".into(),
                ));
            }
            let mut rng = rng::rng_for(seed, 0);
            let probs = if *terms == 1 {
                vec![1.0]
            } else {
                random_probabilities(*terms, &mut rng)
            };
            let us: Vec<ComplexMatrix> = (0..*terms)
                .map(|_| random_unitary(*dim_a, &mut rng))
                .collect();
            let vs: Vec<ComplexMatrix> = (0..*terms)
                .map(|_| random_unitary(*dim_b, &mut rng))
                .collect();
            let theta = random_unitary_superchannel(&probs, &us, &vs)?;
            // A random unitary superchannel is uniformity preserving; check
            // the construction by applying it to the randomizing channel.
            let r_in = standard_channel(&StandardChannel::Randomizing {
                d_in: *dim_a,
                d_out: *dim_b,
            })?;
            let mapped = theta.apply(&r_in)?;
            if mapped.choi_distance(&r_in) > 1e-9 {
                return Err(Error::Numerical(
                    "random-unitary superchannel failed the uniformity-preservation check".into(),
                ));
            }
            Ok(theta)
        }
        SuperchannelSpec::UnitalPreMix {
            dim_a,
            dim_b,
            dim_e,
            dim_d,
            terms,
        } => {
            if *terms == 0 || *dim_e == 0 {
                return Err(Error::Validation(
                    "unital-pre-mix needs ≥ 1 term and |E| ≥ 1".into(),
                ));
            }
            let mut rng = rng::rng_for(seed, 1);
            let dim_c = dim_a * dim_e;
            let probs = if *terms == 1 {
                vec![1.0]
            } else {
                random_probabilities(*terms, &mut rng)
            };
            let mut pre_kraus = Vec::new();
            let mut post_kraus = Vec::new();
            for (x, &px) in probs.iter().enumerate() {
                // Unital Λ^x: a seeded mixture of two unitaries on C ≅ A⊗E.
                let mix = random_probabilities(2, &mut rng);
                for &q in &mix {
                    let w = random_unitary(dim_c, &mut rng);
                    pre_kraus.push(append_classical_flag(
                        &w.scale_re((px * q).sqrt()),
                        x,
                        *terms,
                    ));
                }
                // Arbitrary Ω^x: B⊗E → D.
                let omega = random_channel(dim_b * dim_e, *dim_d, 2, &mut rng);
                for k in omega.kraus() {
                    post_kraus.push(select_classical_flag(k, x, *terms));
                }
            }
            let pre =
                KrausChannel::new(dim_c, dim_a * dim_e * terms, pre_kraus, "unital-pre-mix-Λ")?;
            let post = KrausChannel::new(
                dim_b * dim_e * terms,
                *dim_d,
                post_kraus,
                "unital-pre-mix-Ω",
            )?;
            Superchannel::new(
                pre,
                post,
                dim_e * terms,
                *dim_a,
                *dim_b,
                SuperchannelKind::General,
            )
        }
        SuperchannelSpec::PrePost { pre, post } => {
            let (dim_a, dim_b) = (pre.dim_out, post.dim_in);
            Superchannel::new(
                pre.clone(),
                post.clone(),
                1,
                dim_a,
                dim_b,
                SuperchannelKind::General,
            )
        }
        SuperchannelSpec::DoublyStochastic {
            dim_a,
            dim_b,
            dim_e,
            terms,
        } => {
            if *terms == 0 || *dim_e == 0 {
                return Err(Error::Validation(
                    "doubly stochastic candidate needs ≥ 1 term and |E| ≥ 1".into(),
                ));
            }
            let mut rng = rng::rng_for(seed, 2);
            // Λ(ρ) = Σ_x q_x U^x ρ U^x† ⊗ θ^x: Tr_E Λ(I_C) = I_A holds for
            // any states θ^x on E.
            let probs = random_probabilities(*terms, &mut rng);
            let mut pre_kraus = Vec::new();
            for &q in &probs {
                let u = random_unitary(*dim_a, &mut rng);
                let theta_e = rng::random_density(*dim_e, &mut rng);
                let eig = crate::linalg::hermitian_eig(&theta_e)?;
                for (j, &s) in eig.eigenvalues.iter().enumerate() {
                    if s <= 1e-14 {
                        continue;
                    }
                    let w = eig.eigenvector(j);
                    let scaled = u.scale_re((q * s).sqrt());
                    pre_kraus.push(tensor_with_env_ket(&scaled, &w));
                }
            }
            // Ω: measure E in a rotated basis, apply a conditional unitary
            // on B; then Ω(I_B ⊗ ρ_ER) = I_D ⊗ ρ_R.
            let s_rot = random_unitary(*dim_e, &mut rng);
            let mut post_kraus = Vec::new();
            for y in 0..*dim_e {
                let v = random_unitary(*dim_b, &mut rng);
                let bra: Vec<Complex64> = (0..*dim_e).map(|e| s_rot[(e, y)].conj()).collect();
                post_kraus.push(tensor_with_env_bra(&v, &bra));
            }
            let pre = KrausChannel::new(*dim_a, dim_a * dim_e, pre_kraus, "doubly-stochastic-Λ")?;
            let post = KrausChannel::new(dim_b * dim_e, *dim_b, post_kraus, "doubly-stochastic-Ω")?;
            Superchannel::new(
                pre,
                post,
                *dim_e,
                *dim_a,
                *dim_b,
                SuperchannelKind::DoublyStochasticCandidate,
            )
        }
    }
}

/// Σ_x p(x) V^x ∘ N ∘ U^x as an explicit pre/post realization with a
/// classical memory register of dimension `terms`.
pub fn random_unitary_superchannel(
    probs: &[f64],
    us: &[ComplexMatrix],
    vs: &[ComplexMatrix],
) -> Result<Superchannel> {
    let terms = probs.len();
    if terms == 0 || us.len() != terms || vs.len() != terms {
        return Err(Error::Validation(
            "random-unitary superchannel needs matching probability and unitary lists".into(),
        ));
    }
    let dim_a = us[0].rows;
    let dim_b = vs[0].rows;
    let mut pre_kraus = Vec::with_capacity(terms);
    let mut post_kraus = Vec::with_capacity(terms);
    for x in 0..terms {
        pre_kraus.push(append_classical_flag(
            &us[x].scale_re(probs[x].sqrt()),
            x,
            terms,
        ));
        post_kraus.push(select_classical_flag(&vs[x], x, terms));
    }
    let pre = KrausChannel::new(dim_a, dim_a * terms, pre_kraus, "random-unitary-Λ")?;
    let post = KrausChannel::new(dim_b * terms, dim_b, post_kraus, "random-unitary-Ω")?;
    Superchannel::new(
        pre,
        post,
        terms,
        dim_a,
        dim_b,
        SuperchannelKind::RandomUnitary,
    )
}

/// K ⊗ |x⟩ on a classical flag register appended as the fastest factor.
fn append_classical_flag(k: &ComplexMatrix, x: usize, terms: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(k.rows * terms, k.cols, |row, col| {
        if row % terms == x {
            k[(row / terms, col)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// K ⊗ ⟨x| consuming a classical flag register appended as the fastest
/// factor of the input.
fn select_classical_flag(k: &ComplexMatrix, x: usize, terms: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(k.rows, k.cols * terms, |row, col| {
        if col % terms == x {
            k[(row, col / terms)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// U ⊗ |w⟩_E: maps C → A ⊗ E with the environment ket as the fast factor.
fn tensor_with_env_ket(u: &ComplexMatrix, w: &[Complex64]) -> ComplexMatrix {
    let dim_e = w.len();
    ComplexMatrix::from_fn(u.rows * dim_e, u.cols, |row, col| {
        u[(row / dim_e, col)] * w[row % dim_e]
    })
}

/// V ⊗ ⟨w|_E: consumes B ⊗ E, outputs D.
fn tensor_with_env_bra(v: &ComplexMatrix, w: &[Complex64]) -> ComplexMatrix {
    let dim_e = w.len();
    ComplexMatrix::from_fn(v.rows, v.cols * dim_e, |row, col| {
        v[(row, col / dim_e)] * w[col % dim_e]
    })
}
