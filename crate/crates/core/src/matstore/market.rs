//! Matrix Market coordinate-format ingestion.
//!
//! Supports real/complex/integer values with general, symmetric,
//! skew-symmetric, and hermitian storage. Pattern files are rejected (the
//! library needs values), rectangular matrices are rejected, duplicates are
//! summed, and symmetric variants are mirrored on read.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use num_complex::Complex64;

use super::diagmatrix::DiagMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmSymmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

/// A parsed Matrix Market file: real or complex square matrix in
/// diagonal-sparse storage.
#[derive(Debug, Clone)]
pub enum MarketMatrix {
    Real(DiagMatrix<f64>),
    Complex(DiagMatrix<Complex64>),
}

impl MarketMatrix {
    pub fn n(&self) -> usize {
        match self {
            MarketMatrix::Real(m) => m.n(),
            MarketMatrix::Complex(m) => m.n(),
        }
    }

    /// The real matrix, if the file was real-valued.
    pub fn into_real(self) -> Option<DiagMatrix<f64>> {
        match self {
            MarketMatrix::Real(m) => Some(m),
            MarketMatrix::Complex(_) => None,
        }
    }
}

pub fn read_matrix_market<P: AsRef<Path>>(path: P) -> Result<MarketMatrix> {
    let file = File::open(path.as_ref())?;
    read_matrix_market_from(BufReader::new(file))
}

pub fn read_matrix_market_from<R: Read>(reader: R) -> Result<MarketMatrix> {
    let mut lines = BufReader::new(reader).lines().enumerate();

    let (field, symmetry) = {
        let (_, banner) = lines
            .next()
            .ok_or_else(|| Error::MmMalformedHeader("empty file".into()))?;
        parse_banner(&banner.map_err(Error::from)?)?
    };

    // skip comments and blank lines, then read the size line
    let (size_line_no, size_line) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line.map_err(Error::from)?;
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('%') {
                    continue;
                }
                break (no + 1, line);
            }
            None => return Err(Error::MmMalformedHeader("missing size line".into())),
        }
    };

    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(Error::MmParse {
            line: size_line_no,
            message: "size line must hold `rows cols nnz`".into(),
        });
    }
    let rows: usize = parse_num(dims[0], size_line_no)?;
    let cols: usize = parse_num(dims[1], size_line_no)?;
    let nnz: usize = parse_num(dims[2], size_line_no)?;
    if rows != cols {
        return Err(Error::MmNotSquare { rows, cols });
    }
    let n = rows;
    if n == 0 {
        return Err(Error::MmMalformedHeader("zero-dimensional matrix".into()));
    }

    let mut real = DiagMatrix::<f64>::zeros(n);
    let mut complex = DiagMatrix::<Complex64>::zeros(n);
    let is_complex = field == MmField::Complex;

    let mut seen = 0usize;
    for (no, line) in lines {
        let line = line.map_err(Error::from)?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        let want = if is_complex { 4 } else { 3 };
        if parts.len() != want {
            return Err(Error::MmParse {
                line: no + 1,
                message: format!("expected {want} fields, found {}", parts.len()),
            });
        }
        let i: usize = parse_num(parts[0], no + 1)?;
        let j: usize = parse_num(parts[1], no + 1)?;
        if i < 1 || i > n || j < 1 || j > n {
            return Err(Error::MmIndexOutOfBounds { row: i, col: j, n });
        }
        if is_complex {
            let re: f64 = parse_num(parts[2], no + 1)?;
            let im: f64 = parse_num(parts[3], no + 1)?;
            let v = Complex64::new(re, im);
            complex.add_assign_entry(i, j, v);
            if i != j {
                match symmetry {
                    MmSymmetry::General => {}
                    MmSymmetry::Symmetric => complex.add_assign_entry(j, i, v),
                    MmSymmetry::SkewSymmetric => complex.add_assign_entry(j, i, -v),
                    MmSymmetry::Hermitian => complex.add_assign_entry(j, i, v.conj()),
                }
            }
        } else {
            let v: f64 = parse_num(parts[2], no + 1)?;
            real.add_assign_entry(i, j, v);
            if i != j {
                match symmetry {
                    MmSymmetry::General => {}
                    MmSymmetry::Symmetric | MmSymmetry::Hermitian => {
                        real.add_assign_entry(j, i, v)
                    }
                    MmSymmetry::SkewSymmetric => real.add_assign_entry(j, i, -v),
                }
            }
        }
        seen += 1;
    }

    if seen != nnz {
        return Err(Error::MmParse {
            line: 0,
            message: format!("size line declared {nnz} entries, file holds {seen}"),
        });
    }

    Ok(if is_complex { MarketMatrix::Complex(complex) } else { MarketMatrix::Real(real) })
}

fn parse_banner(line: &str) -> Result<(MmField, MmSymmetry)> {
    let lower = line.to_ascii_lowercase();
    let words: Vec<&str> = lower.split_whitespace().collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" {
        return Err(Error::MmMalformedHeader(line.trim().into()));
    }
    if words[1] != "matrix" || words[2] != "coordinate" {
        return Err(Error::MmMalformedHeader(format!(
            "only `matrix coordinate` objects are supported, found `{} {}`",
            words[1], words[2]
        )));
    }
    let field = match words[3] {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "complex" => MmField::Complex,
        "pattern" => return Err(Error::MmPatternUnsupported),
        other => return Err(Error::MmMalformedHeader(format!("unknown field `{other}`"))),
    };
    let symmetry = match words[4] {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        "skew-symmetric" => MmSymmetry::SkewSymmetric,
        "hermitian" => MmSymmetry::Hermitian,
        other => return Err(Error::MmMalformedHeader(format!("unknown symmetry `{other}`"))),
    };
    Ok((field, symmetry))
}

fn parse_num<T: std::str::FromStr>(token: &str, line: usize) -> Result<T> {
    token.parse::<T>().map_err(|_| Error::MmParse {
        line,
        message: format!("cannot parse `{token}`"),
    })
}
