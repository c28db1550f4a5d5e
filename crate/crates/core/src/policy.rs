//! The single numeric-policy record threaded through every computation.

/// Numerical knobs shared by the eigensolver cutoffs and the optimizers.
///
/// One policy value is passed explicitly wherever a cutoff or tolerance is
/// needed, so a run is reproducible from (inputs, policy) alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Relative spectral cutoff: eigenvalues below `eigen_cutoff * ||M||_inf`
    /// are treated as zero by support-projected matrix functions.
    pub eigen_cutoff: f64,
    /// Convergence tolerance for optimizers (Frank–Wolfe gap or restart
    /// spread).
    pub opt_tol: f64,
    /// Iteration cap per optimizer run.
    pub max_iter: usize,
    /// Number of seeded restarts for non-concave objectives.
    pub restarts: usize,
    /// Initial mirror-ascent step size.
    pub step_init: f64,
    /// Root seed; all random draws derive from it.
    pub seed: u64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            eigen_cutoff: 1e-14,
            opt_tol: 1e-8,
            max_iter: 5000,
            restarts: 8,
            step_init: 1.0,
            seed: 42,
        }
    }
}

impl NumericPolicy {
    /// Policy with a different seed, everything else default.
    pub fn with_seed(seed: u64) -> Self {
        NumericPolicy {
            seed,
            ..NumericPolicy::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.eigen_cutoff)
            || !positive(self.opt_tol)
            || !positive(self.step_init)
            || self.max_iter == 0
            || self.restarts == 0
        {
            return Err(crate::Error::Validation(
                "numeric policy fields must all be positive".into(),
            ));
        }
        Ok(())
    }
}
