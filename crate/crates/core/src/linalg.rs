//! Dense complex matrix kernel.
//!
//! Everything downstream — Choi operators, entropies, optimizers — runs on
//! the types here: a row-major dense [`ComplexMatrix`], a cyclic-Jacobi
//! Hermitian eigensolver, spectral matrix functions with an explicit
//! zero-eigenvalue policy, Kronecker products, partial traces, Schatten
//! norms, and canonical purifications.
//!
//! Subsystem ordering convention: in any tensor product the *leftmost*
//! factor is the slowest-varying (most significant) index. For dims
//! `[d0, d1]` the composite index of `(i0, i1)` is `i0 * d1 + i1`. The
//! maximally-entangled examples in the tests pin this down.
//!
//! Dimensions in this crate never exceed a few hundred, so the O(d³)
//! unblocked Jacobi solver is deliberate: it is deterministic, dependency
//! free, and accurate to near machine precision on Hermitian input.

use num_complex::Complex64;

use crate::{Error, Result};

/// Hermiticity tolerance used by validation: max entrywise |M - M†|.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows; errors if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Validation("ragged matrix rows".into()));
        }
        Ok(ComplexMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// Rank-1 matrix |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise |M - M†| (0 for exactly Hermitian input).
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= tol
    }

    /// (M + M†)/2; cheap way to strip accumulated asymmetry before an
    /// eigendecomposition.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Real part of Tr(self · other).
    pub fn trace_product_re(&self, other: &Self) -> f64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = 0.0;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += (self[(i, k)] * other[(k, i)]).re;
            }
        }
        acc
    }

    /// Kronecker product; `self` is the slowest-varying factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product with the row-major convention (first factor most
/// significant).
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)
// ---------------------------------------------------------------------------

/// Eigendecomposition M = V Λ V† of a Hermitian matrix; eigenvalues
/// ascending, eigenvectors the matching columns of a unitary `V`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Largest eigenvalue.
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Column `k` of V.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// Reassemble Σ f(λ_k) |v_k⟩⟨v_k| over the selected eigenvalues.
    pub fn assemble(&self, mut f: impl FnMut(usize, f64) -> Option<f64>) -> ComplexMatrix {
        let d = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(d, d);
        for k in 0..d {
            let y = match f(k, self.eigenvalues[k]) {
                Some(y) if y != 0.0 => y,
                _ => continue,
            };
            for i in 0..d {
                let vi = self.eigenvectors[(i, k)] * y;
                for j in 0..d {
                    out[(i, j)] += vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Errors if the input is non-square or fails the entrywise Hermiticity
/// tolerance; the offending entry is named in the message.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::Validation(format!(
            "hermitian_eig: matrix is {}x{}, not square",
            m.rows, m.cols
        )));
    }
    for i in 0..m.rows {
        for j in i..m.cols {
            let defect = (m[(i, j)] - m[(j, i)].conj()).norm();
            if defect > HERMITIAN_TOL {
                return Err(Error::Validation(format!(
                    "hermitian_eig: entry ({i},{j}) violates Hermiticity by {defect:.3e}"
                )));
            }
        }
    }
    Ok(hermitian_eig_unchecked(m))
}

/// Jacobi eigensolver without the Hermiticity check; the Hermitian part of
/// the input is used. Internal fast path for matrices that are Hermitian by
/// construction.
pub fn hermitian_eig_unchecked(m: &ComplexMatrix) -> HermitianEigen {
    let d = m.rows;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(d);

    if d <= 1 {
        return HermitianEigen {
            eigenvalues: (0..d).map(|i| a[(i, i)].re).collect(),
            eigenvectors: v,
        };
    }

    let scale = a.max_abs().max(1e-300);
    let stop = 1e-15 * scale;
    const MAX_SWEEPS: usize = 100;

    for _ in 0..MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= stop * 1e-2 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Smallest-|t| root of t² + 2θt − 1 = 0 zeroes the (p,q)
                // entry while keeping the rotation angle below π/4.
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U differs from the identity only in the (p,q) block:
                // U[p][p]=c, U[p][q]=s·phase, U[q][p]=-s·conj(phase), U[q][q]=c.
                let sp = phase.scale(s);
                // A <- U† A U, acting on rows p,q then columns p,q.
                for k in 0..d {
                    let akp = a[(p, k)];
                    let akq = a[(q, k)];
                    a[(p, k)] = akp.scale(c) - sp * akq;
                    a[(q, k)] = sp.conj() * akp + akq.scale(c);
                }
                for k in 0..d {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp.scale(c) - sp.conj() * akq;
                    a[(k, q)] = sp * akp + akq.scale(c);
                }
                for k in 0..d {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp.scale(c) - sp.conj() * vkq;
                    v[(k, q)] = sp * vkp + vkq.scale(c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(d, d, |i, j| v[(i, order[j])]);
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

/// How spectral functions treat (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroPolicy {
    /// Eigenvalues below the relative cutoff contribute nothing: x·log x and
    /// x^p vanish there, and inverse powers act on the support only.
    Support,
    /// Apply `f` to every eigenvalue as-is.
    Full,
}

/// V f(Λ) V† for Hermitian input.
///
/// With [`ZeroPolicy::Support`], eigenvalues of modulus below
/// `rel_cutoff * ||M||_inf` are dropped before `f` is applied. Errors if `f`
/// returns a non-finite value on a retained eigenvalue.
pub fn matrix_func(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    policy: ZeroPolicy,
    rel_cutoff: f64,
) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    matrix_func_eig(&eig, f, policy, rel_cutoff)
}

/// [`matrix_func`] on an existing eigendecomposition.
pub fn matrix_func_eig(
    eig: &HermitianEigen,
    f: impl Fn(f64) -> f64,
    policy: ZeroPolicy,
    rel_cutoff: f64,
) -> Result<ComplexMatrix> {
    let norm_inf = eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let cutoff = rel_cutoff * norm_inf;
    let mut bad: Option<f64> = None;
    let out = eig.assemble(|_, lambda| {
        if policy == ZeroPolicy::Support && lambda.abs() <= cutoff {
            return None;
        }
        let y = f(lambda);
        if !y.is_finite() {
            bad = Some(lambda);
            return None;
        }
        Some(y)
    });
    match bad {
        Some(lambda) => Err(Error::Domain(format!(
            "matrix function undefined on retained eigenvalue {lambda:.6e}"
        ))),
        None => Ok(out),
    }
}

/// Support-projected power M^p (inverse powers act on the support only).
pub fn herm_power(m: &ComplexMatrix, p: f64, rel_cutoff: f64) -> Result<ComplexMatrix> {
    psd_power(m, p, rel_cutoff)
}

/// Support-projected base-2 logarithm.
pub fn herm_log2(m: &ComplexMatrix, rel_cutoff: f64) -> Result<ComplexMatrix> {
    psd_log2(m, rel_cutoff)
}

/// Power of a PSD-by-construction matrix: eigenvalues at or below the
/// relative cutoff (including small negative numerical noise) are treated
/// as null space. Never produces NaN on near-PSD Hermitian input.
pub fn psd_power(m: &ComplexMatrix, p: f64, rel_cutoff: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    Ok(psd_power_eig(&eig, p, rel_cutoff))
}

/// [`psd_power`] on an existing eigendecomposition.
pub fn psd_power_eig(eig: &HermitianEigen, p: f64, rel_cutoff: f64) -> ComplexMatrix {
    let cutoff = rel_cutoff
        * eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0f64, f64::max);
    eig.assemble(|_, l| if l > cutoff { Some(l.powf(p)) } else { None })
}

/// Base-2 logarithm on the positive support of a PSD-by-construction
/// matrix; eigenvalues at or below the cutoff contribute nothing.
pub fn psd_log2(m: &ComplexMatrix, rel_cutoff: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let cutoff = rel_cutoff
        * eig
            .eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0f64, f64::max);
    Ok(eig.assemble(|_, l| if l > cutoff { Some(l.log2()) } else { None }))
}

/// Fréchet derivative of the natural logarithm at a PSD matrix X, applied
/// to a Hermitian direction W: in the eigenbasis of X the entries of W are
/// multiplied by the divided differences (ln μ_i − ln μ_j)/(μ_i − μ_j).
/// Eigenvalues are floored at the relative cutoff so directions brushing
/// the boundary get a large but finite slope. Self-adjoint in W, which is
/// what gradient chain rules rely on.
pub fn log_frechet(x: &ComplexMatrix, w: &ComplexMatrix, rel_cutoff: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig_unchecked(x);
    let d = x.rows;
    let top = eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max);
    let floor = (rel_cutoff * top).max(1e-300);
    let mu: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(floor)).collect();
    let v = &eig.eigenvectors;
    let w_tilde = v.adjoint().matmul(w).matmul(v);
    let mut scaled = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let phi = if (mu[i] - mu[j]).abs() <= 1e-12 * mu[i].max(mu[j]) {
                2.0 / (mu[i] + mu[j])
            } else {
                (mu[i].ln() - mu[j].ln()) / (mu[i] - mu[j])
            };
            scaled[(i, j)] = w_tilde[(i, j)].scale(phi);
        }
    }
    Ok(v.matmul(&scaled).matmul(&v.adjoint()))
}

/// Projector onto the null space (eigenvalues below the relative cutoff).
pub fn null_projector(m: &ComplexMatrix, rel_cutoff: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let cutoff = rel_cutoff * eig.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(eig.assemble(|_, l| if l.abs() <= cutoff { Some(1.0) } else { None }))
}

// ---------------------------------------------------------------------------
// Partial trace and subsystem permutation
// ---------------------------------------------------------------------------

fn composite_index(multi: &[usize], dims: &[usize]) -> usize {
    let mut idx = 0;
    for (i, &d) in multi.iter().zip(dims) {
        idx = idx * d + i;
    }
    idx
}

fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut multi = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        multi[k] = idx % dims[k];
        idx /= dims[k];
    }
    multi
}

/// Partial trace over the subsystems *not* listed in `keep`.
///
/// `dims` are the subsystem dimensions, leftmost slowest-varying; kept
/// subsystems retain their original relative order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows != total {
        return Err(Error::Validation(format!(
            "partial_trace: dims product {} does not match matrix dimension {}x{}",
            total, m.rows, m.cols
        )));
    }
    if keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Validation(
            "partial_trace: keep index out of range".into(),
        ));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    let traced: Vec<usize> = (0..dims.len())
        .filter(|k| !keep_sorted.contains(k))
        .collect();

    let keep_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = keep_dims.iter().product::<usize>().max(1);
    let tr_dim: usize = traced_dims.iter().product::<usize>().max(1);

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let mut row_multi = vec![0usize; dims.len()];
    let mut col_multi = vec![0usize; dims.len()];
    for r in 0..out_dim {
        let r_multi = split_index(r, &keep_dims);
        for c in 0..out_dim {
            let c_multi = split_index(c, &keep_dims);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..tr_dim {
                let t_multi = split_index(t, &traced_dims);
                for (slot, &sys) in keep_sorted.iter().enumerate() {
                    row_multi[sys] = r_multi[slot];
                    col_multi[sys] = c_multi[slot];
                }
                for (slot, &sys) in traced.iter().enumerate() {
                    row_multi[sys] = t_multi[slot];
                    col_multi[sys] = t_multi[slot];
                }
                acc += m[(
                    composite_index(&row_multi, dims),
                    composite_index(&col_multi, dims),
                )];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Reorder tensor factors: output subsystem `k` is input subsystem `perm[k]`.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows != total {
        return Err(Error::Validation(
            "permute_subsystems: dims do not match matrix".into(),
        ));
    }
    let mut seen = vec![false; dims.len()];
    for &p in perm {
        if p >= dims.len() || seen[p] {
            return Err(Error::Validation(
                "permute_subsystems: invalid permutation".into(),
            ));
        }
        seen[p] = true;
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = ComplexMatrix::zeros(total, total);
    let mut row_old = vec![0usize; dims.len()];
    let mut col_old = vec![0usize; dims.len()];
    for r in 0..total {
        let r_new = split_index(r, &new_dims);
        for c in 0..total {
            let c_new = split_index(c, &new_dims);
            for (k, &p) in perm.iter().enumerate() {
                row_old[p] = r_new[k];
                col_old[p] = c_new[k];
            }
            out[(r, c)] = m[(
                composite_index(&row_old, dims),
                composite_index(&col_old, dims),
            )];
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Schatten norms
// ---------------------------------------------------------------------------

/// Singular values, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    // Eigenvalues of M†M are the squared singular values; Hermitian by
    // construction, so the unchecked path is fine.
    let gram = m.adjoint().matmul(m);
    let mut sv: Vec<f64> = hermitian_eig_unchecked(&gram)
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    sv.reverse();
    sv
}

/// Schatten α-norm ‖X‖_α = [Tr |X|^α]^{1/α}; `f64::INFINITY` selects the
/// operator norm. Errors for α < 1.
pub fn schatten_norm(m: &ComplexMatrix, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 1.0 {
        return Err(Error::Domain(format!(
            "schatten_norm: order must be >= 1, got {alpha}"
        )));
    }
    let sv = singular_values(m);
    if alpha.is_infinite() {
        return Ok(sv.first().copied().unwrap_or(0.0));
    }
    Ok(sv
        .iter()
        .map(|s| s.powf(alpha))
        .sum::<f64>()
        .powf(1.0 / alpha))
}

// ---------------------------------------------------------------------------
// Purification
// ---------------------------------------------------------------------------

/// Canonical purification |φ⟩ = Σ_k √λ_k |k⟩_S ⊗ |v_k⟩_A of a density
/// matrix on A, with |S| = |A|; built from the eigendecomposition, so
/// Tr_S |φ⟩⟨φ| reproduces the input.
pub fn canonical_purification(rho: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let eig = hermitian_eig(rho)?;
    let d = rho.rows;
    let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let w = lambda.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for a in 0..d {
            psi[k * d + a] += eig.eigenvectors[(a, k)].scale(w);
        }
    }
    Ok(psi)
}

/// Purification in the Γ form |ψ⟩ = (X_R ⊗ I_A)|Γ⟩ with X = (ρ^T)^{1/2}:
/// smooth in ρ, reference marginal ρ^T, channel-input marginal ρ. Agrees
/// with [`canonical_purification`] up to a unitary on the reference side.
///
/// The amplitude at composite index (r, a) is X[r, a], so the returned
/// vector is just X flattened row-major.
pub fn gamma_purification(rho: &ComplexMatrix, rel_cutoff: f64) -> Result<Vec<Complex64>> {
    let x = herm_power(&rho.transpose(), 0.5, rel_cutoff)?;
    Ok(x.entries.clone())
}

/// ⟨u|v⟩ with the physics convention (conjugate-linear in the first slot).
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// |u⟩ ⊗ |v⟩.
pub fn vec_kron(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b);
        }
    }
    out
}

/// Computational basis vector |i⟩ in dimension `d`.
pub fn basis_vector(d: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d];
    v[i] = Complex64::new(1.0, 0.0);
    v
}
