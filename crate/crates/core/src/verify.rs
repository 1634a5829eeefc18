//! Cross-checks identity magnitudes against the Jacobi oracle.

use crate::eigensolve::{
    eigenvalues, jacobi_eigendecomposition, Spectrum, DEFAULT_JACOBI_RELATIVE_TOL,
};
use crate::error::{Error, Result};
use crate::identity::Engine;
use crate::matrix::SymmetricMatrix;

pub const DEFAULT_ORACLE_CAP: usize = 200;
/// Interlacing slack, relative to `‖A‖_F`.
pub const INTERLACING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyStatus {
    Ok(VerificationSummary),
    /// The spectrum has a repeated eigenvalue, so components are not unique.
    Degenerate {
        index: usize,
        gap: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationSummary {
    pub n: usize,
    /// `max |identity[j][i] − oracle[j][i]|`.
    pub max_deviation: f64,
    pub max_row_sum_deviation: f64,
    pub max_column_sum_deviation: f64,
    pub interlacing_violations: usize,
    pub log_domain_fallbacks: usize,
}

/// Number of `k` with `λ_k(A) ≤ λ_k(M) ≤ λ_{k+1}(A)` violated by more than `slack`.
pub fn interlacing_violations(spectrum: &Spectrum, minor_spectrum: &Spectrum, slack: f64) -> usize {
    let lam = spectrum.values();
    minor_spectrum
        .values()
        .iter()
        .enumerate()
        .filter(|&(k, &mu)| mu < lam[k] - slack || mu > lam[k + 1] + slack)
        .count()
}

pub fn verify(a: &SymmetricMatrix, engine: &Engine, oracle_cap: usize) -> Result<VerifyStatus> {
    let n = a.n();
    if n > oracle_cap {
        return Err(Error::OracleCapExceeded { n, cap: oracle_cap });
    }
    let magnitudes = match engine.all_magnitudes(a) {
        Ok(m) => m,
        Err(Error::DegenerateEigenvalue { index, gap, .. }) => {
            return Ok(VerifyStatus::Degenerate { index, gap });
        }
        Err(e) => return Err(e),
    };
    let norm = a.frobenius_norm();
    let oracle = jacobi_eigendecomposition(a, DEFAULT_JACOBI_RELATIVE_TOL * norm)?;
    let max_deviation = magnitudes
        .as_slice()
        .iter()
        .zip(oracle.squared_components())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let dev = |sums: Vec<f64>| sums.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);

    let spectrum = eigenvalues(a)?;
    let mut violations = 0;
    for j in 0..n {
        let minor = eigenvalues(&a.minor(j)?)?;
        violations += interlacing_violations(&spectrum, &minor, INTERLACING_TOL * norm);
    }
    Ok(VerifyStatus::Ok(VerificationSummary {
        n,
        max_deviation,
        max_row_sum_deviation: dev(magnitudes.row_sums()),
        max_column_sum_deviation: dev(magnitudes.column_sums()),
        interlacing_violations: violations,
        log_domain_fallbacks: magnitudes.fallbacks(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::IdentityConfig;
    use crate::matrix::random_gaussian;

    fn engine() -> Engine {
        Engine::new(IdentityConfig {
            workers: 1,
            ..IdentityConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn diagonal_is_exact() {
        let d = SymmetricMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let VerifyStatus::Ok(s) = verify(&d, &engine(), DEFAULT_ORACLE_CAP).unwrap() else {
            panic!("diagonal reported degenerate");
        };
        assert_eq!(s.max_deviation, 0.0);
        assert_eq!(s.interlacing_violations, 0);
    }

    #[test]
    fn random_within_tolerance() {
        let a = random_gaussian(0, 50).unwrap();
        let VerifyStatus::Ok(s) = verify(&a, &engine(), DEFAULT_ORACLE_CAP).unwrap() else {
            panic!("random matrix reported degenerate");
        };
        assert!(s.max_deviation <= 1e-8);
        assert!(s.max_row_sum_deviation <= 1e-8 && s.max_column_sum_deviation <= 1e-8);
        assert_eq!(s.interlacing_violations, 0);
    }

    #[test]
    fn identity_is_degenerate() {
        let id = SymmetricMatrix::identity(5).unwrap();
        assert!(matches!(
            verify(&id, &engine(), DEFAULT_ORACLE_CAP).unwrap(),
            VerifyStatus::Degenerate { .. }
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let a = random_gaussian(0, 12).unwrap();
        assert!(matches!(
            verify(&a, &engine(), 10),
            Err(Error::OracleCapExceeded { n: 12, cap: 10 })
        ));
    }

    #[test]
    fn violation_counting() {
        let s = Spectrum::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(
            interlacing_violations(&s, &Spectrum::new(vec![0.5, 1.5]).unwrap(), 0.0),
            0
        );
        assert_eq!(
            interlacing_violations(&s, &Spectrum::new(vec![1.2, 2.5]).unwrap(), 0.0),
            2
        );
    }
}
