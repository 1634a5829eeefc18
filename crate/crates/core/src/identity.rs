//! Squared eigenvector components from eigenvalues of `A` and its minors.
//!
//! With eigenvalues indexed ascending by `i` and `M_j` the minor without row and
//! column `j`:
//!
//! ```text
//! |v_{i,j}|² = ∏_{k=0}^{n-2} (λ_i(A) − λ_k(M_j)) / ∏_{k≠i} (λ_i(A) − λ_k(A))
//! ```
//!
//! Cauchy interlacing (`λ_k(A) ≤ λ_k(M_j) ≤ λ_{k+1}(A)`) means that pairing the `k`-th
//! numerator factor with the denominator factor built from the `k`-th remaining
//! eigenvalue of `A` gives ratios in `[0, 1]`. The batched evaluator multiplies
//! those pairs in fixed-size batches and combines per-batch ratios in batch order,
//! so the result does not depend on how many workers computed the batches.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::eigensolve::{EigenvalueSolver, QlSolver, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

pub const DEFAULT_BATCH_SIZE: usize = 64;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-12;
/// Components whose squared magnitude is at or below this get no sign decision.
pub const SIGN_TOL: f64 = 1e-10;
/// Wrong-signed numerator factors this close to zero (relative to the spectral
/// range) are treated as exact interlacing coincidences.
const ZERO_FACTOR_TOL: f64 = 1e-12;
const SIGN_RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    PairedBatched,
    LogDomain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityConfig {
    pub batch_size: usize,
    pub workers: usize,
    /// Relative eigenvalue gap (against `λ_max − λ_min`) treated as a repeated eigenvalue.
    pub degeneracy_tol: f64,
    pub evaluation: Evaluation,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        Self {
            batch_size: DEFAULT_BATCH_SIZE,
            workers: default_workers(),
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
            evaluation: Evaluation::PairedBatched,
        }
    }
}

/// Logical core count, or 1 if it cannot be determined.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl IdentityConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::Config("batch size must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        if !(self.degeneracy_tol >= 0.0 && self.degeneracy_tol.is_finite()) {
            return Err(Error::Config(format!(
                "degeneracy tolerance must be a finite non-negative number, got {}",
                self.degeneracy_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Baseline,
    Batched,
    BatchedParallel,
    LogDomain,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Baseline => "baseline",
            Method::Batched => "batched",
            Method::BatchedParallel => "batched-parallel",
            Method::LogDomain => "log-domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnitudeResult {
    /// `|v_{i,j}|²` clamped to `[0, 1]`.
    pub value: f64,
    /// The ratio before clamping.
    pub raw: f64,
    pub i: usize,
    pub j: usize,
    pub method: Method,
    /// Smallest `|λ_i − λ_k|`, `k ≠ i`, divided by the spectral range.
    pub condition: f64,
    /// Set when the batched products left the normal range and the value was
    /// recomputed in the log domain.
    pub log_domain_fallback: bool,
}

impl MagnitudeResult {
    fn new(raw: f64, i: usize, j: usize, method: Method, condition: f64) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            raw,
            i,
            j,
            method,
            condition,
            log_domain_fallback: false,
        }
    }
}

/// Numerator and denominator factors, paired in sorted order.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPairing {
    pub i: usize,
    pub j: usize,
    /// `(numerator, denominator)` pairs.
    pairs: Vec<(f64, f64)>,
    range: f64,
    condition: f64,
}

impl FactorPairing {
    /// Factors for component `j` of eigenvector `i`, given the spectra of `A` and `M_j`.
    pub fn new(spectrum: &Spectrum, minor_spectrum: &Spectrum, i: usize, j: usize) -> Result<Self> {
        let n = spectrum.len();
        if minor_spectrum.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n.saturating_sub(1),
                found: minor_spectrum.len(),
            });
        }
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let lambda = spectrum[i];
        let values = spectrum.values();
        // Both lists are descending in k, so index-wise pairing is sorted pairing.
        let pairs: Vec<(f64, f64)> = minor_spectrum
            .values()
            .iter()
            .enumerate()
            .map(|(k, &mu)| {
                let other = if k < i { values[k] } else { values[k + 1] };
                (lambda - mu, lambda - other)
            })
            .collect();
        let range = spectrum.range();
        let condition = min_abs(pairs.iter().map(|p| p.1)) / range;
        Ok(Self {
            i,
            j,
            pairs,
            range,
            condition,
        })
    }

    /// Pairs arbitrary factor lists: both are sorted ascending and matched index-wise.
    pub fn from_factors(mut numerators: Vec<f64>, mut denominators: Vec<f64>) -> Result<Self> {
        if numerators.len() != denominators.len() {
            return Err(Error::DimensionMismatch {
                expected: numerators.len(),
                found: denominators.len(),
            });
        }
        numerators.sort_by(f64::total_cmp);
        denominators.sort_by(f64::total_cmp);
        let range = denominators
            .iter()
            .chain(&numerators)
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let pairs: Vec<(f64, f64)> = numerators.into_iter().zip(denominators).collect();
        let condition = if range > 0.0 {
            min_abs(pairs.iter().map(|p| p.1)) / range
        } else {
            0.0
        };
        Ok(Self {
            i: 0,
            j: 0,
            pairs,
            range,
            condition,
        })
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn numerators(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn denominators(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }
}

fn min_abs(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(f64::INFINITY, |m, v| m.min(v.abs()))
}

/// Contiguous slices of a [`FactorPairing`]; the last batch may be short.
#[derive(Debug, Clone)]
pub struct BatchPlan<'a> {
    pub batch_size: usize,
    batches: Vec<&'a [(f64, f64)]>,
}

impl<'a> BatchPlan<'a> {
    pub fn batches(&self) -> &[&'a [(f64, f64)]] {
        &self.batches
    }

    pub fn n_batch(&self) -> usize {
        self.batches.len()
    }
}

/// Splits the pairing into batches of `batch_size` pairs.
pub fn prepare_batches(factors: &FactorPairing, batch_size: usize) -> Result<BatchPlan<'_>> {
    if batch_size == 0 {
        return Err(Error::Config("batch size must be at least 1".into()));
    }
    Ok(BatchPlan {
        batch_size,
        batches: factors.pairs.chunks(batch_size).collect(),
    })
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    numerator: f64,
    denominator: f64,
    exact_zero: bool,
}

impl Partial {
    fn of(batch: &[(f64, f64)]) -> Self {
        let (mut numerator, mut denominator, mut exact_zero) = (1.0, 1.0, false);
        for &(num, den) in batch {
            numerator *= num;
            denominator *= den;
            exact_zero |= num == 0.0;
        }
        Self {
            numerator,
            denominator,
            exact_zero,
        }
    }

    /// Both products are usable without precision loss.
    fn is_sound(&self) -> bool {
        self.denominator.is_normal()
            && (self.numerator.is_normal() || (self.numerator == 0.0 && self.exact_zero))
    }
}

/// Evaluates the pairing as `exp(Σ ln|num_k| − Σ ln|den_k|)`, with a sign check.
pub fn log_domain_product(factors: &FactorPairing) -> Result<MagnitudeResult> {
    let zero_tol = ZERO_FACTOR_TOL * factors.range;
    let mut log_sum = 0.0;
    let mut negative = 0usize;
    let mut coincidence = false;
    for &(num, den) in &factors.pairs {
        if den == 0.0 || !den.is_finite() {
            return Err(Error::DegenerateEigenvalue {
                index: factors.i,
                gap: den.abs(),
                tolerance: 0.0,
            });
        }
        // A tiny numerator of the wrong sign is an interlacing coincidence blurred by roundoff.
        if num == 0.0 || (num.signum() != den.signum() && num.abs() <= zero_tol) {
            coincidence = true;
            continue;
        }
        negative += usize::from(num < 0.0) + usize::from(den < 0.0);
        log_sum += num.abs().ln() - den.abs().ln();
    }
    let raw = if coincidence {
        0.0
    } else {
        if negative % 2 == 1 {
            return Err(Error::InternalInconsistency(format!(
                "negative squared magnitude for component ({}, {})",
                factors.i, factors.j
            )));
        }
        log_sum.exp()
    };
    Ok(MagnitudeResult::new(
        raw,
        factors.i,
        factors.j,
        Method::LogDomain,
        factors.condition,
    ))
}

/// Smallest gap between `spectrum[i]` and the rest; fails when it is within tolerance.
fn check_nondegenerate(spectrum: &Spectrum, i: usize, tol: f64) -> Result<f64> {
    let values = spectrum.values();
    let lambda = values[i];
    let gap = min_abs(
        values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &v)| lambda - v),
    );
    let tolerance = tol * spectrum.range();
    if gap <= tolerance {
        return Err(Error::DegenerateEigenvalue {
            index: i,
            gap,
            tolerance,
        });
    }
    Ok(gap)
}

/// All `n × n` squared magnitudes; entry `[j][i]` is `|v_{i,j}|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeMatrix {
    n: usize,
    values: Vec<f64>,
    raw: Vec<f64>,
    fallbacks: usize,
}

impl MagnitudeMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|v_{i,j}|²`, clamped.
    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.values[j * self.n + i]
    }

    pub fn raw(&self, j: usize, i: usize) -> f64 {
        self.raw[j * self.n + i]
    }

    /// Row-major values, `[j][i]`.
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn raw_slice(&self) -> &[f64] {
        &self.raw
    }

    /// Number of entries that needed the log-domain fallback.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    /// Sum over eigenvectors for each component `j`.
    pub fn row_sums(&self) -> Vec<f64> {
        self.values.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    /// Sum over components for each eigenvector `i`.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for row in self.values.chunks(self.n) {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }
}

/// Evaluates identity magnitudes with a fixed configuration and a reusable worker pool.
pub struct Engine<S = QlSolver> {
    config: IdentityConfig,
    solver: S,
    pool: Option<rayon::ThreadPool>,
    solves: AtomicUsize,
}

impl Engine<QlSolver> {
    pub fn new(config: IdentityConfig) -> Result<Self> {
        Self::with_solver(config, QlSolver)
    }
}

impl<S: EigenvalueSolver> Engine<S> {
    pub fn with_solver(config: IdentityConfig, solver: S) -> Result<Self> {
        config.validate()?;
        let pool = if config.workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.workers)
                    .thread_name(|k| format!("eigenid-{k}"))
                    .build()
                    .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self {
            config,
            solver,
            pool,
            solves: AtomicUsize::new(0),
        })
    }

    pub fn config(&self) -> &IdentityConfig {
        &self.config
    }

    /// Number of eigenvalue solves performed since construction or the last reset.
    pub fn solve_count(&self) -> usize {
        self.solves.load(Ordering::Relaxed)
    }

    pub fn reset_solve_count(&self) {
        self.solves.store(0, Ordering::Relaxed);
    }

    /// Eigenvalues of `a` through the configured solver (counted).
    pub fn spectrum(&self, a: &SymmetricMatrix) -> Result<Spectrum> {
        self.solves.fetch_add(1, Ordering::Relaxed);
        self.solver.eigenvalues(a)
    }

    fn minor_spectrum(&self, a: &SymmetricMatrix, j: usize) -> Result<Spectrum> {
        self.spectrum(&a.minor(j)?)
    }

    fn batched_method(&self) -> Method {
        match self.config.evaluation {
            Evaluation::LogDomain => Method::LogDomain,
            Evaluation::PairedBatched if self.pool.is_some() => Method::BatchedParallel,
            Evaluation::PairedBatched => Method::Batched,
        }
    }

    fn join<A, B, RA, RB>(&self, left: A, right: B) -> (RA, RB)
    where
        A: FnOnce() -> RA + Send,
        B: FnOnce() -> RB + Send,
        RA: Send,
        RB: Send,
    {
        match &self.pool {
            Some(pool) => pool.join(left, right),
            None => (left(), right()),
        }
    }

    /// Maps `f` over `0..n` on the pool, keeping index order.
    fn map_indices<T, F>(&self, n: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            None => (0..n).map(f).collect(),
        }
    }

    fn check_indices(a: &SymmetricMatrix, i: usize, j: usize) -> Result<()> {
        let n = a.n();
        if n < 2 {
            return Err(Error::MatrixTooSmall { n });
        }
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        Ok(())
    }

    /// Direct evaluation: two solves, then two sequential products and one division.
    pub fn component_magnitude_baseline(
        &self,
        a: &SymmetricMatrix,
        i: usize,
        j: usize,
    ) -> Result<MagnitudeResult> {
        Self::check_indices(a, i, j)?;
        let spectrum = self.spectrum(a)?;
        let minor_spectrum = self.minor_spectrum(a, j)?;
        let gap = check_nondegenerate(&spectrum, i, self.config.degeneracy_tol)?;
        let lambda = spectrum[i];
        let mut numerator = 1.0;
        for &mu in minor_spectrum.values() {
            numerator *= lambda - mu;
        }
        let mut denominator = 1.0;
        for (k, &other) in spectrum.values().iter().enumerate() {
            if k != i {
                denominator *= lambda - other;
            }
        }
        let raw = numerator / denominator;
        if !numerator.is_finite()
            || !denominator.is_finite()
            || denominator == 0.0
            || !raw.is_finite()
        {
            return Err(Error::NonFiniteIntermediate { i, j });
        }
        Ok(MagnitudeResult::new(
            raw,
            i,
            j,
            Method::Baseline,
            gap / spectrum.range(),
        ))
    }

    /// Batched evaluation, optionally reusing spectra the caller already holds.
    ///
    /// `cached_spectrum` must belong to `a` and `cached_minor_spectrum` to `a.minor(j)`.
    pub fn component_magnitude(
        &self,
        a: &SymmetricMatrix,
        i: usize,
        j: usize,
        cached_spectrum: Option<&Spectrum>,
        cached_minor_spectrum: Option<&Spectrum>,
    ) -> Result<MagnitudeResult> {
        Self::check_indices(a, i, j)?;
        let (spectrum, minor_spectrum) = match (cached_spectrum, cached_minor_spectrum) {
            (Some(s), Some(m)) => (s.clone(), m.clone()),
            (Some(s), None) => (s.clone(), self.minor_spectrum(a, j)?),
            (None, Some(m)) => (self.spectrum(a)?, m.clone()),
            (None, None) => {
                let (s, m) = self.join(|| self.spectrum(a), || self.minor_spectrum(a, j));
                (s?, m?)
            }
        };
        check_nondegenerate(&spectrum, i, self.config.degeneracy_tol)?;
        let pairing = FactorPairing::new(&spectrum, &minor_spectrum, i, j)?;
        self.evaluate(&pairing, self.pool.is_some())
    }

    fn evaluate(&self, pairing: &FactorPairing, parallel_batches: bool) -> Result<MagnitudeResult> {
        if self.config.evaluation == Evaluation::LogDomain {
            return log_domain_product(pairing);
        }
        let plan = prepare_batches(pairing, self.config.batch_size)?;
        let partials: Vec<Partial> = match (&self.pool, parallel_batches && plan.n_batch() > 1) {
            (Some(pool), true) => {
                pool.install(|| plan.batches().par_iter().map(|b| Partial::of(b)).collect())
            }
            _ => plan.batches().iter().map(|b| Partial::of(b)).collect(),
        };
        let mut raw = 1.0;
        let mut sound = true;
        for partial in &partials {
            sound &= partial.is_sound();
            raw *= partial.numerator / partial.denominator;
        }
        if sound && raw.is_finite() {
            return Ok(MagnitudeResult::new(
                raw,
                pairing.i,
                pairing.j,
                self.batched_method(),
                pairing.condition,
            ));
        }
        let mut result = log_domain_product(pairing)?;
        result.log_domain_fallback = true;
        Ok(result)
    }

    /// Every component of eigenvector `i`: one solve for `A` and one per minor.
    pub fn vector_magnitudes(&self, a: &SymmetricMatrix, i: usize) -> Result<Vec<MagnitudeResult>> {
        Self::check_indices(a, i, 0)?;
        let spectrum = self.spectrum(a)?;
        check_nondegenerate(&spectrum, i, self.config.degeneracy_tol)?;
        self.map_indices(a.n(), |j| {
            let minor_spectrum = self.minor_spectrum(a, j)?;
            let pairing = FactorPairing::new(&spectrum, &minor_spectrum, i, j)?;
            self.evaluate(&pairing, false)
        })
    }

    /// The full matrix of squared magnitudes, `n + 1` solves in total.
    pub fn all_magnitudes(&self, a: &SymmetricMatrix) -> Result<MagnitudeMatrix> {
        let n = a.n();
        if n < 2 {
            return Err(Error::MatrixTooSmall { n });
        }
        let spectrum = self.spectrum(a)?;
        for i in 0..n {
            check_nondegenerate(&spectrum, i, self.config.degeneracy_tol)?;
        }
        let rows = self.map_indices(n, |j| {
            let minor_spectrum = self.minor_spectrum(a, j)?;
            (0..n)
                .map(|i| {
                    let pairing = FactorPairing::new(&spectrum, &minor_spectrum, i, j)?;
                    self.evaluate(&pairing, false)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let mut values = Vec::with_capacity(n * n);
        let mut raw = Vec::with_capacity(n * n);
        let mut fallbacks = 0;
        for r in rows.iter().flatten() {
            values.push(r.value);
            raw.push(r.raw);
            fallbacks += usize::from(r.log_domain_fallback);
        }
        Ok(MagnitudeMatrix {
            n,
            values,
            raw,
            fallbacks,
        })
    }

    /// Attaches signs to the magnitudes of eigenvector `i`.
    ///
    /// The largest component is kept positive and the remaining rows of
    /// `(A − λI) v = 0` are solved for the other components; their signs are taken
    /// from that solution and their magnitudes from `magnitudes`. The vector is then
    /// oriented so its first component above [`SIGN_TOL`] is positive, and accepted
    /// only if `‖A v − λ v‖₂ ≤ 1e-6 ‖A‖_F`.
    pub fn recover_signs(
        &self,
        a: &SymmetricMatrix,
        i: usize,
        magnitudes: &[f64],
        lambda: f64,
    ) -> Result<Vec<f64>> {
        let n = a.n();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if magnitudes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: magnitudes.len(),
            });
        }
        if magnitudes.iter().any(|m| !m.is_finite()) || !lambda.is_finite() {
            return Err(Error::Config(
                "magnitudes and eigenvalue must be finite".into(),
            ));
        }
        let abs: Vec<f64> = magnitudes.iter().map(|m| m.max(0.0).sqrt()).collect();
        let anchor = (0..n)
            .max_by(|&x, &y| abs[x].total_cmp(&abs[y]))
            .expect("n >= 1");
        let mut v = vec![0.0; n];
        v[anchor] = abs[anchor];
        if n > 1 {
            let others: Vec<usize> = (0..n).filter(|&k| k != anchor).collect();
            let m = n - 1;
            let mut system = vec![0.0; m * m];
            let mut rhs = vec![0.0; m];
            for (r, &row) in others.iter().enumerate() {
                for (c, &col) in others.iter().enumerate() {
                    system[r * m + c] = a.get(row, col) - if row == col { lambda } else { 0.0 };
                }
                rhs[r] = -a.get(row, anchor) * abs[anchor];
            }
            let pivot_tol = self.config.degeneracy_tol * a.frobenius_norm();
            let direction = solve_linear(m, &mut system, &mut rhs, pivot_tol).map_err(|gap| {
                Error::DegenerateEigenvalue {
                    index: i,
                    gap,
                    tolerance: pivot_tol,
                }
            })?;
            for (&k, &d) in others.iter().zip(&direction) {
                v[k] = abs[k].copysign(d);
            }
        }
        if let Some(first) = magnitudes.iter().position(|&m| m > SIGN_TOL) {
            if v[first] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let residual = a
            .mul_vec(&v)
            .iter()
            .zip(&v)
            .map(|(av, x)| (av - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt();
        let tolerance = SIGN_RESIDUAL_TOL * a.frobenius_norm();
        let accepted = residual <= tolerance;
        if !accepted {
            return Err(Error::SignRecoveryFailure {
                residual,
                tolerance,
            });
        }
        Ok(v)
    }
}

/// Gaussian elimination with partial pivoting; `Err` carries the offending pivot.
fn solve_linear(
    m: usize,
    a: &mut [f64],
    b: &mut [f64],
    pivot_tol: f64,
) -> std::result::Result<Vec<f64>, f64> {
    for col in 0..m {
        let pivot_row = (col..m)
            .max_by(|&x, &y| a[x * m + col].abs().total_cmp(&a[y * m + col].abs()))
            .expect("non-empty range");
        let pivot = a[pivot_row * m + col];
        let usable = pivot.abs() > pivot_tol;
        if !usable {
            return Err(pivot.abs());
        }
        if pivot_row != col {
            for c in 0..m {
                a.swap(col * m + c, pivot_row * m + c);
            }
            b.swap(col, pivot_row);
        }
        for r in (col + 1)..m {
            let factor = a[r * m + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..m {
                a[r * m + c] -= factor * a[col * m + c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let tail: f64 = ((r + 1)..m).map(|c| a[r * m + c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r * m + r];
    }
    Ok(x)
}
