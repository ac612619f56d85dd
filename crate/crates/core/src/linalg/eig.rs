//! Cyclic Jacobi eigensolver for complex Hermitian matrices and the
//! spectral matrix exponential built on it.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a
//! diagonal unitary, then applies the classic real Jacobi rotation to the
//! resulting real symmetric 2×2 block. The combined 2×2 unitary is
//!
//! ```text
//!     [ c              s           ]
//!     [ -s·e^{-iφ}     c·e^{-iφ}   ]      a_pq = |a_pq|·e^{iφ}
//! ```
//!
//! acting on rows/columns `p`, `q`.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::LinalgError;
use crate::tolerances::{
    DEGENERACY_TOL, HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAG_TOL, PHASE_ZERO_TOL,
};

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut v = ComplexMatrix::zeros(n);
        for (j, vec) in self.eigenvectors.iter().enumerate() {
            for i in 0..n {
                v[(i, j)] = vec[i];
            }
        }
        v
    }

    /// `V · diag(f(νᵢ)) · V†`.
    pub fn reconstruct_with<F: Fn(f64) -> Complex64>(&self, f: F) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, vec) in self.eigenvectors.iter().enumerate() {
            let w = f(self.eigenvalues[k]);
            if w == ZERO {
                continue;
            }
            for i in 0..n {
                let vi = vec[i] * w;
                for j in 0..n {
                    out[(i, j)] += vi * vec[j].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| Complex64::new(x, 0.0))
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Spectrum, LinalgError> {
    let deviation = h.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(LinalgError::NonHermitian { deviation });
    }
    let n = h.dim();
    let mut a = h.clone();
    // Symmetrize so round-off in the input cannot leak into the rotations.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_OFF_DIAG_TOL * h.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::ConvergenceFailure { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut col = v.column(k);
            phase_normalize(&mut col);
            (a[(k, k)].re, col)
        })
        .collect();
    sort_pairs(&mut pairs, h.frobenius_norm());

    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `exp(c·H)` for Hermitian `H` via its spectrum.
pub fn expm_hermitian(h: &ComplexMatrix, c: Complex64) -> Result<ComplexMatrix, LinalgError> {
    let spectrum = hermitian_eig(h)?;
    Ok(spectrum.reconstruct_with(|x| (c * x).exp()))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let h = apq.norm();
    if h == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / h; // e^{iφ}
    let theta = (aqq - app) / (2.0 * h);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // 2x2 block of U (rows p,q; columns p,q).
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.dim();
    // A ← A·U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    // A ← U†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V ← V·U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Rotate the vector's global phase so its first nonzero component is real positive.
fn phase_normalize(v: &mut [Complex64]) {
    if let Some(first) = v.iter().find(|z| z.norm() > PHASE_ZERO_TOL).copied() {
        let rot = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

fn first_nonzero(v: &[Complex64]) -> usize {
    v.iter()
        .position(|z| z.norm() > PHASE_ZERO_TOL)
        .unwrap_or(v.len())
}

/// Descending lexicographic order on (re, im) of the components.
fn lexicographic(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = y
            .re
            .total_cmp(&x.re)
            .then_with(|| y.im.total_cmp(&x.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn sort_pairs(pairs: &mut [(f64, Vec<Complex64>)], norm: f64) {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let tie = DEGENERACY_TOL * (1.0 + norm);
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| {
                first_nonzero(&a.1)
                    .cmp(&first_nonzero(&b.1))
                    .then_with(|| lexicographic(&a.1, &b.1))
            });
        }
        start = end;
    }
}
