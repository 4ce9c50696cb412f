//! Input matrices: Matrix Market files, built-in generators, and the scalar
//! function flag.

use funmat::densefun::ScalarFunction;
use funmat::matstore::{read_matrix_market, DiagMatrix, MarketMatrix, ToeplitzMatrix};
use funmat::rng::SplitMix64;

use crate::args::InputArgs;
use crate::CliError;

/// A loaded input, keeping the Toeplitz representation when the source is
/// structurally Toeplitz.
pub enum Input {
    Diag(DiagMatrix<f64>),
    Toeplitz(ToeplitzMatrix<f64>),
}

impl Input {
    pub fn into_diag(self) -> DiagMatrix<f64> {
        match self {
            Input::Diag(a) => a,
            Input::Toeplitz(t) => t.to_diag_matrix(0.0),
        }
    }

    pub fn into_toeplitz(self) -> Result<ToeplitzMatrix<f64>, CliError> {
        match self {
            Input::Toeplitz(t) => Ok(t),
            Input::Diag(_) => Err(CliError::usage(
                "this subcommand needs a Toeplitz input (use a toeplitz/tridiag/circulant/toeplitz-random generator)",
            )),
        }
    }

    fn scale(self, c: f64) -> Input {
        if c == 1.0 {
            return self;
        }
        match self {
            Input::Diag(a) => Input::Diag(a.scale(c)),
            Input::Toeplitz(t) => Input::Toeplitz(t.scale(c)),
        }
    }
}

pub fn load_input(args: &InputArgs) -> Result<Input, CliError> {
    let raw = match (&args.mtx, &args.gen) {
        (Some(path), None) => match read_matrix_market(path).map_err(CliError::input)? {
            MarketMatrix::Real(m) => Input::Diag(m),
            MarketMatrix::Complex(_) => {
                return Err(CliError::input_msg(
                    "complex Matrix Market inputs are not wired to the CLI engines; use the library API",
                ))
            }
        },
        (None, Some(spec)) => generate(spec)?,
        _ => return Err(CliError::usage("exactly one of --mtx or --gen is required")),
    };
    Ok(raw.scale(args.scale))
}

fn parse_nums(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(&format!("cannot parse number list `{text}`")))
}

fn parse_usizes(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(&format!("cannot parse integer list `{text}`")))
}

/// Built-in matrix generators covering the reproduction runs.
pub fn generate(spec: &str) -> Result<Input, CliError> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::usage("generator spec must look like name:args"))?;
    match name {
        "kron-laplacian" => {
            let n: usize = rest
                .parse()
                .map_err(|_| CliError::usage("kron-laplacian:N needs an integer N"))?;
            Ok(Input::Diag(funmat::matstore::kron_sum_laplacian(n)))
        }
        "tridiag" => {
            let v = parse_nums(rest)?;
            if v.len() != 3 {
                return Err(CliError::usage("tridiag:b,c,N"));
            }
            let n = v[2] as usize;
            if n < 2 {
                return Err(CliError::usage("tridiag needs N >= 2"));
            }
            let mut col = vec![0.0; n];
            col[0] = v[1];
            col[1] = v[0];
            Ok(Input::Toeplitz(
                ToeplitzMatrix::symmetric(col).map_err(CliError::input)?,
            ))
        }
        "banded-random" => {
            let v = parse_usizes(rest)?;
            if v.len() != 3 {
                return Err(CliError::usage("banded-random:N,M,SEED"));
            }
            let (n, m, seed) = (v[0], v[1], v[2] as u64);
            let mut rng = SplitMix64::new(seed);
            let mut a = DiagMatrix::zeros(n);
            for r in -(m as i64)..=(m as i64) {
                let len = DiagMatrix::<f64>::diag_len(n, r);
                let vals: Vec<f64> = (0..len).map(|_| rng.uniform(-1.0, 1.0)).collect();
                a.set_diag(r, vals).map_err(CliError::input)?;
            }
            Ok(Input::Diag(a))
        }
        "toeplitz-random" => {
            let v = parse_usizes(rest)?;
            if v.len() != 3 {
                return Err(CliError::usage("toeplitz-random:N,D,SEED"));
            }
            let (n, d, seed) = (v[0], v[1], v[2] as u64);
            let mut rng = SplitMix64::new(seed);
            let mut col = vec![0.0; n];
            let mut row = vec![0.0; n];
            col[0] = rng.uniform(-1.0, 1.0);
            row[0] = col[0];
            for _ in 0..d {
                let r = 1 + rng.below(n - 1);
                if rng.next_f64() < 0.5 {
                    col[r] = rng.uniform(-1.0, 1.0);
                } else {
                    row[r] = rng.uniform(-1.0, 1.0);
                }
            }
            Ok(Input::Toeplitz(
                ToeplitzMatrix::new(col, row).map_err(CliError::input)?,
            ))
        }
        "toeplitz" => {
            let (c_text, r_text) = rest
                .split_once('|')
                .ok_or_else(|| CliError::usage("toeplitz:c0,c1,..|r0,r1,.."))?;
            let col = parse_nums(c_text)?;
            let row = parse_nums(r_text)?;
            Ok(Input::Toeplitz(
                ToeplitzMatrix::new(col, row).map_err(CliError::input)?,
            ))
        }
        "circulant" => {
            let (v_text, n_text) = rest
                .split_once(';')
                .ok_or_else(|| CliError::usage("circulant:v0,v1,..;N"))?;
            let v = parse_nums(v_text)?;
            let n: usize = n_text
                .trim()
                .parse()
                .map_err(|_| CliError::usage("circulant size must be an integer"))?;
            if v.is_empty() || v.len() > n {
                return Err(CliError::usage("circulant needs 1..=N first-row values"));
            }
            // first row v (zero padded), wrapped into the first column
            let mut row = vec![0.0; n];
            row[..v.len()].copy_from_slice(&v);
            let mut col = vec![0.0; n];
            col[0] = row[0];
            for i in 1..n {
                col[i] = row[n - i];
            }
            Ok(Input::Toeplitz(
                ToeplitzMatrix::new(col, row).map_err(CliError::input)?,
            ))
        }
        other => Err(CliError::usage(&format!("unknown generator `{other}`"))),
    }
}

pub fn parse_function(tag: &str) -> Result<ScalarFunction, CliError> {
    match tag {
        "exp" => Ok(ScalarFunction::Exp),
        "log" => Ok(ScalarFunction::Log),
        "sqrt" => Ok(ScalarFunction::Sqrt),
        "inv" => Ok(ScalarFunction::Inv),
        "inv-sqrt" => Ok(ScalarFunction::InvSqrt),
        _ => match tag.strip_prefix("poly:") {
            Some(coeffs) => Ok(ScalarFunction::Polynomial(parse_nums(coeffs)?)),
            None => Err(CliError::usage(&format!(
                "unknown function `{tag}` (expected exp|log|sqrt|inv|inv-sqrt|poly:c0,c1,...)"
            ))),
        },
    }
}

/// "lo..hi" or a single value.
pub fn parse_k_range(text: &str) -> Result<(usize, usize), CliError> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| CliError::usage("bad k range"))?;
        let hi = hi.trim().parse().map_err(|_| CliError::usage("bad k range"))?;
        if lo > hi {
            return Err(CliError::usage("k range must be increasing"));
        }
        Ok((lo, hi))
    } else {
        let k = text.trim().parse().map_err(|_| CliError::usage("bad k"))?;
        Ok((k, k))
    }
}
