//! Text formats for symmetric matrices.
//!
//! * Dense CSV: one row per line, comma separated, no header.
//! * MatrixMarket: `%%MatrixMarket matrix coordinate real symmetric`, 1-based
//!   indices, lower triangle stored.
//!
//! Both writers emit values with 17 significant digits, which round-trips every `f64`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{SymmetricMatrix, SymmetryPolicy};

/// Largest dimension [`parse_matrix_market`] will allocate for.
pub const DEFAULT_MAX_DIMENSION: usize = 1 << 14;

pub(crate) fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| parse_error(line, format!("invalid number `{}`", token.trim())))
}

pub fn parse_dense_csv(text: &str, policy: SymmetryPolicy) -> Result<SymmetricMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| parse_value(tok, idx + 1))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(parse_error(
                    idx + 1,
                    format!("expected {} values, found {}", first.len(), row.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    SymmetricMatrix::from_rows(&rows, policy)
}

pub fn write_dense_csv(matrix: &SymmetricMatrix) -> String {
    let mut out = String::new();
    for r in 0..matrix.n() {
        let line: Vec<String> = matrix.row(r).iter().map(|&v| format_f64(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_matrix_market(text: &str) -> Result<SymmetricMatrix> {
    parse_matrix_market_limited(text, DEFAULT_MAX_DIMENSION)
}

/// Like [`parse_matrix_market`], rejecting size lines that declare more than `max_dim` rows.
pub fn parse_matrix_market_limited(text: &str, max_dim: usize) -> Result<SymmetricMatrix> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (_, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let fields: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    let expected = [
        "%%matrixmarket",
        "matrix",
        "coordinate",
        "real",
        "symmetric",
    ];
    if fields.len() != expected.len() || fields.iter().zip(expected).any(|(f, e)| f != e) {
        return Err(parse_error(
            1,
            "header must be `%%MatrixMarket matrix coordinate real symmetric`",
        ));
    }

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_error(2, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_error(size_line, format!("invalid size `{t}`")))
        })
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_error(
            size_line,
            "size line must be `rows cols entries`",
        ));
    };
    if rows != cols {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: cols,
        });
    }
    let n = rows;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if n > max_dim {
        return Err(parse_error(
            size_line,
            format!("dimension {n} exceeds limit {max_dim}"),
        ));
    }
    if nnz > n * (n + 1) / 2 {
        return Err(parse_error(
            size_line,
            format!("{nnz} entries cannot fit in the lower triangle of a {n}x{n} matrix"),
        ));
    }

    let mut data = vec![0.0; n * n];
    let mut seen = vec![false; n * (n + 1) / 2];
    let mut count = 0usize;
    for (line_no, line) in body {
        if count == nnz {
            return Err(parse_error(line_no, format!("more than {nnz} entries")));
        }
        let mut tokens = line.split_whitespace();
        let (Some(ti), Some(tj), Some(tv), None) =
            (tokens.next(), tokens.next(), tokens.next(), tokens.next())
        else {
            return Err(parse_error(line_no, "entry must be `row col value`"));
        };
        let index = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(parse_error(
                    line_no,
                    format!("index `{t}` out of range 1..={n}"),
                )),
            }
        };
        let (i, j) = (index(ti)?, index(tj)?);
        if i < j {
            return Err(parse_error(
                line_no,
                "symmetric storage requires lower-triangle entries (row >= col)",
            ));
        }
        let v = parse_value(tv, line_no)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteEntry { row: i, col: j });
        }
        let slot = i * (i + 1) / 2 + j;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(parse_error(
                line_no,
                format!("duplicate entry ({}, {})", i + 1, j + 1),
            ));
        }
        data[i * n + j] = v;
        data[j * n + i] = v;
        count += 1;
    }
    if count != nnz {
        return Err(parse_error(
            text.lines().count(),
            format!("expected {nnz} entries, found {count}"),
        ));
    }
    Ok(SymmetricMatrix::from_parts_unchecked(n, data))
}

pub fn write_matrix_market(matrix: &SymmetricMatrix) -> String {
    let n = matrix.n();
    let entries: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|i| (0..=i).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, matrix.get(i, j)))
        .filter(|&(_, _, v)| v != 0.0)
        .collect();
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    let _ = writeln!(out, "{n} {n} {}", entries.len());
    for (i, j, v) in entries {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, format_f64(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_gaussian;
    use proptest::prelude::*;

    #[test]
    fn csv_direct_parse() {
        let a = parse_dense_csv("2,1\n1,2", SymmetryPolicy::Strict).unwrap();
        assert_eq!(a.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let b = parse_dense_csv(" 2 , 1 \r\n1,2\n\n", SymmetryPolicy::Strict).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(
            parse_dense_csv("1,x\n2,3", SymmetryPolicy::Strict),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dense_csv("1,2\n2", SymmetryPolicy::Strict),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dense_csv("1,2,3\n2,3,4", SymmetryPolicy::Strict),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            parse_dense_csv("\n\n", SymmetryPolicy::Strict),
            Err(Error::EmptyMatrix)
        ));
        assert!(matches!(
            parse_dense_csv("0,1\n0,0", SymmetryPolicy::Strict),
            Err(Error::AsymmetricInput { .. })
        ));
    }

    #[test]
    fn mm_lower_triangle_expands() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 3\n1 1 2.0\n2 1 1.0\n2 2 2.0\n";
        let a = parse_matrix_market(text).unwrap();
        assert_eq!(a.to_rows(), vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(parse_matrix_market(&write_matrix_market(&a)).unwrap(), a);
    }

    #[test]
    fn mm_errors() {
        let head = "%%MatrixMarket matrix coordinate real symmetric\n";
        let cases = [
            "%%MatrixMarket matrix array real general\n2 2\n",
            &format!("{head}2 3 1\n1 1 1.0\n"),
            &format!("{head}2 2 1\n1 2 1.0\n"),
            &format!("{head}2 2 1\n3 1 1.0\n"),
            &format!("{head}2 2 2\n1 1 1.0\n1 1 2.0\n"),
            &format!("{head}2 2 2\n1 1 1.0\n"),
            &format!("{head}2 2 1\n1 1 1.0\n2 2 1.0\n"),
            &format!("{head}2 2 1\n1 1 abc\n"),
            &format!("{head}2 2 9\n"),
            &format!("{head}0 0 0\n"),
            &format!("{head}1000000 1000000 0\n"),
            "",
        ];
        for text in cases {
            assert!(parse_matrix_market(text).is_err(), "accepted: {text:?}");
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let a = random_gaussian(17, 9).unwrap();
        let b = parse_dense_csv(&write_dense_csv(&a), SymmetryPolicy::Strict).unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
    }

    #[test]
    fn mm_round_trip_within_tolerance() {
        let a = random_gaussian(18, 12).unwrap().scaled(1e-3).unwrap();
        let b = parse_matrix_market(&write_matrix_market(&a)).unwrap();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= 1e-15 * x.abs());
        }
    }

    proptest! {
        #[test]
        fn csv_round_trip_any_values(n in 1usize..6, seed in any::<u64>(), exp in -300i32..300) {
            let a = random_gaussian(seed, n).unwrap().scaled(10f64.powi(exp)).unwrap();
            let b = parse_dense_csv(&write_dense_csv(&a), SymmetryPolicy::Strict).unwrap();
            prop_assert_eq!(a.as_slice(), b.as_slice());
        }

        #[test]
        fn parsers_never_panic(text in "\\PC{0,200}") {
            let _ = parse_dense_csv(&text, SymmetryPolicy::Symmetrize);
            let _ = parse_matrix_market_limited(&text, 64);
        }
    }
}
