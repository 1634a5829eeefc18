//! Symmetric eigenvalue solvers.
//!
//! Two independent algorithm families live here:
//!
//! * Householder tridiagonalization followed by implicit-shift QL, used for every
//!   eigenvalue solve the identity engine performs ([`eigenvalues`]). The same code
//!   path with vector accumulation gives [`eigendecomposition`], the full
//!   decomposition the benchmark times as its reference.
//! * Cyclic Jacobi rotations ([`jacobi_eigendecomposition`]), the correctness oracle.
//!   It shares no code with the QL path.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` ascending. Fails if any value is not finite.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InternalInconsistency(
                "eigenvalue solver produced a non-finite value".into(),
            ));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_max − λ_min`.
    pub fn range(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl std::ops::Index<usize> for Spectrum {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.values[index]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalForm {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalForm {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// The tridiagonal matrix as a dense symmetric matrix.
    pub fn to_matrix(&self) -> SymmetricMatrix {
        let n = self.n();
        let mut data = vec![0.0; n * n];
        for (k, &d) in self.diag.iter().enumerate() {
            data[k * n + k] = d;
        }
        for (k, &e) in self.offdiag.iter().enumerate() {
            data[k * n + k + 1] = e;
            data[(k + 1) * n + k] = e;
        }
        SymmetricMatrix::from_parts_unchecked(n, data)
    }
}

/// Eigenvalues and orthonormal eigenvectors, sorted by eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    // Row i holds the unit eigenvector for spectrum[i].
    vectors_t: Vec<f64>,
}

impl EigenDecomposition {
    fn from_unsorted(n: usize, values: Vec<f64>, vectors_t: Vec<f64>) -> Result<Self> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let mut sorted = Vec::with_capacity(n * n);
        for &k in &order {
            sorted.extend_from_slice(&vectors_t[k * n..(k + 1) * n]);
        }
        let spectrum = Spectrum::new(order.iter().map(|&k| values[k]).collect())?;
        Ok(Self {
            spectrum,
            vectors_t: sorted,
        })
    }

    pub fn n(&self) -> usize {
        self.spectrum.len()
    }

    /// Unit eigenvector `v_i` for `spectrum[i]`.
    pub fn vector(&self, i: usize) -> &[f64] {
        let n = self.n();
        &self.vectors_t[i * n..(i + 1) * n]
    }

    /// `V[j][i]`, component `j` of eigenvector `i`.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.vectors_t[i * self.n() + j]
    }

    /// Row-major `n × n` array whose entry `[j][i]` is `V[j][i]²`.
    pub fn squared_components(&self) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for (j, v) in self.vector(i).iter().enumerate() {
                out[j * n + i] = v * v;
            }
        }
        out
    }

    /// `max_i ‖A v_i − λ_i v_i‖₂`.
    pub fn max_residual(&self, a: &SymmetricMatrix) -> f64 {
        (0..self.n())
            .map(|i| {
                let v = self.vector(i);
                let lambda = self.spectrum[i];
                a.mul_vec(v)
                    .iter()
                    .zip(v)
                    .map(|(av, x)| (av - lambda * x).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max |VᵀV − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for k in i..n {
                let dot: f64 = self
                    .vector(i)
                    .iter()
                    .zip(self.vector(k))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Plug-in point for the eigenvalue-only solve the identity engine depends on.
pub trait EigenvalueSolver: Send + Sync {
    fn eigenvalues(&self, a: &SymmetricMatrix) -> Result<Spectrum>;
}

/// Householder tridiagonalization plus implicit-shift QL.
#[derive(Debug, Clone, Copy, Default)]
pub struct QlSolver;

impl EigenvalueSolver for QlSolver {
    fn eigenvalues(&self, a: &SymmetricMatrix) -> Result<Spectrum> {
        eigenvalues(a)
    }
}

/// Eigenvalues taken from a full Jacobi decomposition. Slow; mostly useful for testing.
#[derive(Debug, Clone, Copy)]
pub struct JacobiSolver {
    pub relative_tol: f64,
}

impl Default for JacobiSolver {
    fn default() -> Self {
        Self {
            relative_tol: DEFAULT_JACOBI_RELATIVE_TOL,
        }
    }
}

impl EigenvalueSolver for JacobiSolver {
    fn eigenvalues(&self, a: &SymmetricMatrix) -> Result<Spectrum> {
        let tol = self.relative_tol * a.frobenius_norm();
        Ok(jacobi_eigendecomposition(a, tol)?.spectrum)
    }
}

/// Householder vectors of one reduction; `vectors[k]` acts on indices `k+1..n`.
struct Reflectors {
    vectors: Vec<Vec<f64>>,
    betas: Vec<f64>,
}

struct Reflector {
    v: Vec<f64>,
    beta: f64,
    alpha: f64,
}

/// Reflector annihilating column `k` below the subdiagonal. Only the lower
/// triangle of `w` is read.
fn reflector(w: &[f64], n: usize, k: usize) -> Reflector {
    let mut v: Vec<f64> = (k + 1..n).map(|r| w[r * n + k]).collect();
    let tail_sq: f64 = v[1..].iter().map(|x| x * x).sum();
    let x0 = v[0];
    if tail_sq == 0.0 {
        return Reflector {
            v: Vec::new(),
            beta: 0.0,
            alpha: x0,
        };
    }
    let norm = (x0 * x0 + tail_sq).sqrt();
    let alpha = if x0 >= 0.0 { -norm } else { norm };
    v[0] = x0 - alpha;
    let beta = 2.0 / (v[0] * v[0] + tail_sq);
    Reflector { v, beta, alpha }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in ca.zip(cb) {
        for t in 0..4 {
            acc[t] += x[t] * y[t];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// One sweep over the lower triangle of the block `start..n`.
///
/// With `update = Some((v, p, off))` each entry gets `b_rc -= v_r p_c + p_r v_c`
/// (vectors indexed from `off`). With `matvec = Some(u)` the block, after the
/// update, is multiplied into `y = B u` (indexed from `start`).
fn sweep(
    w: &mut [f64],
    n: usize,
    start: usize,
    update: Option<(&[f64], &[f64], usize)>,
    matvec: Option<&[f64]>,
    y: &mut [f64],
) {
    if matvec.is_some() {
        y[..n - start].fill(0.0);
    }
    for r in start..n {
        let row = &mut w[r * n + start..=r * n + r];
        if let Some((v, p, off)) = update {
            let (vr, pr) = (v[r - off], p[r - off]);
            let cols = start - off..=r - off;
            for ((b, vc), pc) in row.iter_mut().zip(&v[cols.clone()]).zip(&p[cols]) {
                *b -= vr * pc + pr * vc;
            }
        }
        if let Some(u) = matvec {
            let len = row.len() - 1;
            let ur = u[r - start];
            let (off_diag, d) = row.split_at(len);
            y[r - start] += dot(off_diag, &u[..len]) + d[0] * ur;
            for (yc, b) in y[..len].iter_mut().zip(off_diag) {
                *yc += b * ur;
            }
        }
    }
}

// Works on the lower triangle only. The rank-2 update of one step is fused with
// the product needed by the next: the first column of the updated block is
// finished separately, which fixes the next reflector before the sweep.
fn householder(a: &SymmetricMatrix, keep_reflectors: bool) -> (TridiagonalForm, Reflectors) {
    let n = a.n();
    let mut w = a.as_slice().to_vec();
    let mut diag = vec![0.0; n];
    let mut offdiag = vec![0.0; n.saturating_sub(1)];
    let mut reflectors = Reflectors {
        vectors: Vec::new(),
        betas: Vec::new(),
    };
    let steps = n.saturating_sub(2);
    let mut y = vec![0.0; n];
    let mut next_y = vec![0.0; n];
    let mut p = vec![0.0; n];

    let mut current = (steps > 0).then(|| reflector(&w, n, 0));
    if let Some(r) = current.as_ref().filter(|r| r.beta != 0.0) {
        sweep(&mut w, n, 1, None, Some(&r.v), &mut y);
    }
    for k in 0..steps {
        let s = k + 1;
        let m = n - s;
        let refl = current.take().expect("reflector prepared for every step");
        diag[k] = w[k * n + k];
        offdiag[k] = refl.alpha;
        let has_next = k + 1 < steps;

        if refl.beta != 0.0 {
            let v = &refl.v;
            for (pr, yr) in p[..m].iter_mut().zip(&y[..m]) {
                *pr = refl.beta * yr;
            }
            let kappa = 0.5 * refl.beta * dot(&p[..m], v);
            for (pr, vr) in p[..m].iter_mut().zip(v) {
                *pr -= kappa * vr;
            }
            for r in s..n {
                w[r * n + s] -= v[r - s] * p[0] + p[r - s] * v[0];
            }
            let next = has_next.then(|| reflector(&w, n, s));
            let u = next
                .as_ref()
                .filter(|r| r.beta != 0.0)
                .map(|r| r.v.as_slice());
            sweep(&mut w, n, s + 1, Some((v, &p[..m], s)), u, &mut next_y);
            current = next;
        } else {
            let next = has_next.then(|| reflector(&w, n, s));
            if let Some(r) = next.as_ref().filter(|r| r.beta != 0.0) {
                sweep(&mut w, n, s + 1, None, Some(&r.v), &mut next_y);
            }
            current = next;
        }
        std::mem::swap(&mut y, &mut next_y);
        if keep_reflectors {
            reflectors.vectors.push(refl.v);
            reflectors.betas.push(refl.beta);
        }
    }
    match n {
        0 => {}
        1 => diag[0] = w[0],
        _ => {
            diag[n - 2] = w[(n - 2) * n + n - 2];
            diag[n - 1] = w[(n - 1) * n + n - 1];
            offdiag[n - 2] = w[(n - 1) * n + n - 2];
        }
    }
    (TridiagonalForm { diag, offdiag }, reflectors)
}

/// Orthogonal similarity reduction of `a` to tridiagonal form.
pub fn tridiagonalize(a: &SymmetricMatrix) -> TridiagonalForm {
    householder(a, false).0
}

/// Implicit-shift QL on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[k]` couples `k` and `k+1` with `e[n-1] == 0`. When
/// `rows` is given it is an `n × n` row-major array whose rows are rotated along
/// with the iteration (row `k` ends up as the eigenvector for `d[k]`).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut rows: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    let budget = 30 * n.max(1);
    let mut iterations = 0usize;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > budget {
                return Err(Error::ConvergenceFailure { iterations: budget });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut early_exit = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early_exit = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = rows.as_deref_mut() {
                    let (head, tail) = z.split_at_mut((i + 1) * n);
                    let zi = &mut head[i * n..];
                    let zi1 = &mut tail[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if early_exit {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn tridiagonal_eigenvalues(t: &TridiagonalForm) -> Result<Spectrum> {
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    tridiagonal_ql(&mut d, &mut e, None)?;
    Spectrum::new(d)
}

/// Eigenvalues of `a`, ascending; no eigenvectors are formed.
pub fn eigenvalues(a: &SymmetricMatrix) -> Result<Spectrum> {
    tridiagonal_eigenvalues(&tridiagonalize(a))
}

/// Full decomposition through the QL path with accumulated transformations.
pub fn eigendecomposition(a: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    let (t, reflectors) = householder(a, true);

    // Q = H_0 H_1 ... H_{n-3}, accumulated from the right end so each step only
    // touches the trailing block.
    let mut q = vec![0.0; n * n];
    for k in 0..n {
        q[k * n + k] = 1.0;
    }
    let mut vq = vec![0.0; n];
    for (k, (v, &beta)) in reflectors
        .vectors
        .iter()
        .zip(&reflectors.betas)
        .enumerate()
        .rev()
    {
        if beta == 0.0 {
            continue;
        }
        let s = k + 1;
        let m = n - s;
        // vq = vᵀ Q[s.., s..]
        vq[..m].iter_mut().for_each(|x| *x = 0.0);
        for (r, &vr) in v.iter().enumerate() {
            let row = &q[(s + r) * n + s..(s + r + 1) * n];
            for (acc, qv) in vq[..m].iter_mut().zip(row) {
                *acc += vr * qv;
            }
        }
        for (r, &vr) in v.iter().enumerate() {
            let scale = beta * vr;
            let row = &mut q[(s + r) * n + s..(s + r + 1) * n];
            for (qv, acc) in row.iter_mut().zip(&vq[..m]) {
                *qv -= scale * acc;
            }
        }
    }
    // Rows of Qᵀ get rotated by QL, ending as eigenvectors.
    let mut rows = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            rows[c * n + r] = q[r * n + c];
        }
    }
    let mut d = t.diag;
    let mut e = t.offdiag;
    e.push(0.0);
    tridiagonal_ql(&mut d, &mut e, Some(&mut rows))?;
    EigenDecomposition::from_unsorted(n, d, rows)
}

pub const DEFAULT_JACOBI_RELATIVE_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps over all `(p, q)` pairs until the off-diagonal Frobenius norm is at most
/// `tol`. A typical choice is `1e-12 * ‖A‖_F`.
pub fn jacobi_eigendecomposition(a: &SymmetricMatrix, tol: f64) -> Result<EigenDecomposition> {
    let positive = tol > 0.0;
    if !positive && a.frobenius_norm() > 0.0 {
        return Err(Error::Config(format!(
            "Jacobi tolerance must be positive, got {tol}"
        )));
    }
    let n = a.n();
    let mut w = a.as_slice().to_vec();
    let mut vt = vec![0.0; n * n];
    for k in 0..n {
        vt[k * n + k] = 1.0;
    }
    let off_norm = |w: &[f64]| -> f64 {
        let mut sum = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sum += w[p * n + q] * w[p * n + q];
            }
        }
        (2.0 * sum).sqrt()
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&w) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate_rows(&mut w, n, p, q, c, s);
                for r in 0..n {
                    w[r * n + p] = w[p * n + r];
                    w[r * n + q] = w[q * n + r];
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                rotate_rows(&mut vt, n, p, q, c, s);
            }
        }
    }
    if !converged && off_norm(&w) > tol {
        return Err(Error::ConvergenceFailure {
            iterations: JACOBI_MAX_SWEEPS,
        });
    }
    let values = (0..n).map(|k| w[k * n + k]).collect();
    EigenDecomposition::from_unsorted(n, values, vt)
}

/// `row_p ← c·row_p − s·row_q`, `row_q ← s·row_p + c·row_q`, with `p < q`.
fn rotate_rows(w: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = w.split_at_mut(q * n);
    let rp = &mut head[p * n..(p + 1) * n];
    let rq = &mut tail[..n];
    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}
