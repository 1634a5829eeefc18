//! Dense real symmetric matrices.
//!
//! A [`SymmetricMatrix`] is immutable once built. Storage is the full row-major
//! `n × n` array, so rows are contiguous and minors can be copied out row by row.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::io;

/// How [`SymmetricMatrix`] constructors treat input that is not exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetryPolicy {
    /// Reject any pair with `a[r][c] != a[c][r]`.
    #[default]
    Strict,
    /// Replace `A` with `(A + Aᵀ) / 2`.
    Symmetrize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds a matrix from `n * n` row-major values.
    pub fn from_row_major(n: usize, mut data: Vec<f64>, policy: SymmetryPolicy) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: pos / n,
                col: pos % n,
            });
        }
        match policy {
            SymmetryPolicy::Strict => {
                let mut worst: Option<(usize, usize, f64)> = None;
                for r in 0..n {
                    for c in (r + 1)..n {
                        let diff = (data[r * n + c] - data[c * n + r]).abs();
                        if diff > 0.0 && worst.is_none_or(|(_, _, w)| diff > w) {
                            worst = Some((r, c, diff));
                        }
                    }
                }
                if let Some((row, col, difference)) = worst {
                    return Err(Error::AsymmetricInput {
                        row,
                        col,
                        difference,
                    });
                }
            }
            SymmetryPolicy::Symmetrize => {
                for r in 0..n {
                    for c in (r + 1)..n {
                        let avg = 0.5 * (data[r * n + c] + data[c * n + r]);
                        data[r * n + c] = avg;
                        data[c * n + r] = avg;
                    }
                }
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a list of rows; every row must have as many entries as there are rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], policy: SymmetryPolicy) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data, policy)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (k, &v) in values.iter().enumerate() {
            data[k * n + k] = v;
        }
        Self::from_row_major(n, data, SymmetryPolicy::Strict)
    }

    /// Internal constructor for data already known to be symmetric and finite.
    pub(crate) fn from_parts_unchecked(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Returns `factor * A`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let data: Vec<f64> = self.data.iter().map(|v| v * factor).collect();
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: pos / self.n,
                col: pos % self.n,
            });
        }
        Ok(Self { n: self.n, data })
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The principal minor obtained by deleting row `j` and column `j`.
    pub fn minor(&self, j: usize) -> Result<Self> {
        let n = self.n;
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        if n < 2 {
            return Err(Error::MatrixTooSmall { n });
        }
        let m = n - 1;
        let mut data = Vec::with_capacity(m * m);
        for (r, row) in self.data.chunks(n).enumerate() {
            if r == j {
                continue;
            }
            data.extend_from_slice(&row[..j]);
            data.extend_from_slice(&row[j + 1..]);
        }
        Ok(Self { n: m, data })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Gaussian,
    /// Uniform on `[-1, 1)`.
    Uniform,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Gaussian => "gaussian",
            Distribution::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" | "normal" => Ok(Distribution::Gaussian),
            "uniform" => Ok(Distribution::Uniform),
            other => Err(Error::Config(format!("unknown distribution `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    MatrixMarket,
    DenseCsv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    File {
        path: PathBuf,
        format: FileFormat,
    },
    Random {
        seed: u64,
        distribution: Distribution,
        n: usize,
    },
}

/// Materializes a matrix from a file or a seeded random draw.
///
/// Random matrices draw a full `n × n` array from a ChaCha8 stream seeded with `seed`
/// and then symmetrize it, so a given `(seed, distribution, n)` is bit-identical on
/// every platform and run.
pub fn generate(source: &MatrixSource) -> Result<SymmetricMatrix> {
    match source {
        MatrixSource::File { path, format } => load(path, *format),
        MatrixSource::Random {
            seed,
            distribution,
            n,
        } => random(*seed, *distribution, *n),
    }
}

pub fn random(seed: u64, distribution: Distribution, n: usize) -> Result<SymmetricMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<f64> = match distribution {
        Distribution::Gaussian => (0..n * n).map(|_| rng.sample(StandardNormal)).collect(),
        Distribution::Uniform => (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect(),
    };
    SymmetricMatrix::from_row_major(n, data, SymmetryPolicy::Symmetrize)
}

/// Shorthand for a symmetrized Gaussian matrix.
pub fn random_gaussian(seed: u64, n: usize) -> Result<SymmetricMatrix> {
    random(seed, Distribution::Gaussian, n)
}

pub fn load(path: &Path, format: FileFormat) -> Result<SymmetricMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    match format {
        FileFormat::DenseCsv => io::parse_dense_csv(&text, SymmetryPolicy::Strict),
        FileFormat::MatrixMarket => io::parse_matrix_market(&text),
    }
}

pub fn store(matrix: &SymmetricMatrix, path: &Path, format: FileFormat) -> Result<()> {
    let text = match format {
        FileFormat::DenseCsv => io::write_dense_csv(matrix),
        FileFormat::MatrixMarket => io::write_matrix_market(matrix),
    };
    std::fs::write(path, text)?;
    Ok(())
}
