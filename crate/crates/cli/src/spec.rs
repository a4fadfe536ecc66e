//! Group specifications and the input file formats.
//!
//! Grammar:
//! ```text
//! sym:N | alt:N | dihedral:N:K | quaternion | cyclic:N
//! regrep:<cayley-file> | scalars:a+bi,c+di,... | gens:<matrix-file>
//! ```
//! Cayley file: line 1 the order N, then N lines of N space-separated
//! 0-based indices. Matrix file: line 1 `dim count`, then `count` blocks of
//! `dim` lines of `dim` complex literals.

use std::fmt;
use std::fs;

use hullspectra::groups::{
    close_group, cyclic_scalar_group, dihedral_irrep, permutation_group, quaternion_irrep,
    regular_representation, CayleyTable, GroupError, MatrixGroup, PermutationKind,
};
use hullspectra::linalg::ComplexMatrix;
use num_complex::Complex64;

/// Closure cap for `scalars:` groups (roots of unity up to this order).
const SCALAR_CLOSURE_CAP: usize = 4096;
/// Closure cap for generator-file groups.
const GENS_CLOSURE_CAP: usize = 1024;

#[derive(Debug, Clone)]
pub enum SpecError {
    /// Malformed input: maps to exit code 2.
    Usage(String),
    /// Numerical or closure failure: maps to exit code 3.
    Numerical(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Usage(msg) => write!(f, "{msg}"),
            SpecError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

fn from_group_error(e: GroupError, context: &str) -> SpecError {
    match e {
        GroupError::PossiblyInfinite { .. }
        | GroupError::UnboundedClosure { .. }
        | GroupError::Linalg(_) => SpecError::Numerical(format!("{context}: {e}")),
        other => SpecError::Usage(format!("{context}: {other}")),
    }
}

/// Parse and materialize a group specification.
pub fn parse_group_spec(spec: &str) -> Result<MatrixGroup, SpecError> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    match (head, rest) {
        ("quaternion", None) => Ok(quaternion_irrep()),
        ("sym", Some(n)) | ("alt", Some(n)) => {
            let degree: usize = n
                .parse()
                .map_err(|_| SpecError::Usage(format!("invalid degree '{n}' in '{spec}'")))?;
            let kind = if head == "sym" {
                PermutationKind::Symmetric
            } else {
                PermutationKind::Alternating
            };
            permutation_group(degree, kind).map_err(|e| from_group_error(e, spec))
        }
        ("dihedral", Some(params)) => {
            let (n, k) = params.split_once(':').ok_or_else(|| {
                SpecError::Usage(format!("dihedral spec needs N:K, got '{spec}'"))
            })?;
            let n: u32 = n
                .parse()
                .map_err(|_| SpecError::Usage(format!("invalid N '{n}' in '{spec}'")))?;
            let k: u32 = k
                .parse()
                .map_err(|_| SpecError::Usage(format!("invalid K '{k}' in '{spec}'")))?;
            dihedral_irrep(n, k).map_err(|e| from_group_error(e, spec))
        }
        ("cyclic", Some(n)) => {
            let order: u32 = n
                .parse()
                .map_err(|_| SpecError::Usage(format!("invalid order '{n}' in '{spec}'")))?;
            cyclic_scalar_group(order).map_err(|e| from_group_error(e, spec))
        }
        ("regrep", Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| SpecError::Usage(format!("cannot read '{path}': {e}")))?;
            let table = CayleyTable::parse(path, &text).map_err(|e| from_group_error(e, spec))?;
            Ok(regular_representation(&table))
        }
        ("scalars", Some(list)) => {
            let mut generators = Vec::new();
            for token in list.split(',') {
                let z = parse_complex(token)
                    .map_err(|e| SpecError::Usage(format!("in '{spec}': {e}")))?;
                generators.push(
                    ComplexMatrix::new(1, vec![z])
                        .map_err(|e| SpecError::Usage(format!("in '{spec}': {e}")))?,
                );
            }
            close_group(&generators, SCALAR_CLOSURE_CAP)
                .map(|g| g.renamed(spec))
                .map_err(|e| from_group_error(e, spec))
        }
        ("gens", Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| SpecError::Usage(format!("cannot read '{path}': {e}")))?;
            let generators = parse_matrix_file(&text)
                .map_err(|e| SpecError::Usage(format!("in '{path}': {e}")))?;
            close_group(&generators, GENS_CLOSURE_CAP)
                .map(|g| g.renamed(spec))
                .map_err(|e| from_group_error(e, spec))
        }
        _ => Err(SpecError::Usage(format!(
            "unknown group spec '{spec}' (expected sym:N, alt:N, dihedral:N:K, quaternion, \
             cyclic:N, regrep:<file>, scalars:<list>, gens:<file>)"
        ))),
    }
}

/// Complex literal: `a`, `bi`, or `a+bi` with optional scientific notation.
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let bytes = s.as_bytes();
    let mut split = None;
    for pos in 1..bytes.len() {
        let c = bytes[pos];
        if (c == b'+' || c == b'-') && !matches!(bytes[pos - 1], b'e' | b'E') {
            split = Some(pos);
            break;
        }
    }
    let parse_real = |text: &str| -> Result<f64, String> {
        text.parse::<f64>()
            .map_err(|_| format!("invalid number '{text}' in complex literal '{s}'"))
    };
    let parse_imag_body = |body: &str| -> Result<f64, String> {
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => parse_real(other),
        }
    };
    match split {
        Some(pos) => {
            let re = parse_real(&s[..pos])?;
            let imag_part = &s[pos..];
            let body = imag_part
                .strip_suffix('i')
                .ok_or_else(|| format!("expected trailing 'i' in '{s}'"))?;
            Ok(Complex64::new(re, parse_imag_body(body)?))
        }
        None => {
            if let Some(body) = s.strip_suffix('i') {
                Ok(Complex64::new(0.0, parse_imag_body(body)?))
            } else {
                Ok(Complex64::new(parse_real(s)?, 0.0))
            }
        }
    }
}

/// Matrix file: `dim count` header, then `count` blocks of `dim` rows of
/// `dim` whitespace-separated complex literals. Blank lines are ignored.
pub fn parse_matrix_file(text: &str) -> Result<Vec<ComplexMatrix>, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let mut header_tokens = header.split_whitespace();
    let dim: usize = header_tokens
        .next()
        .ok_or("missing dim in header")?
        .parse()
        .map_err(|_| format!("invalid dim in header '{header}'"))?;
    let count: usize = header_tokens
        .next()
        .ok_or("missing count in header")?
        .parse()
        .map_err(|_| format!("invalid count in header '{header}'"))?;
    if header_tokens.next().is_some() {
        return Err(format!("unexpected extra tokens in header '{header}'"));
    }
    if dim == 0 {
        return Err("dim must be at least 1".into());
    }

    let mut matrices = Vec::with_capacity(count);
    for block in 0..count {
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| format!("matrix {block} is missing row {row}"))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != dim {
                return Err(format!(
                    "matrix {block} row {row} has {} entries, expected {dim}",
                    tokens.len()
                ));
            }
            for token in tokens {
                entries.push(parse_complex(token)?);
            }
        }
        matrices
            .push(ComplexMatrix::new(dim, entries).map_err(|e| format!("matrix {block}: {e}"))?);
    }
    if lines.next().is_some() {
        return Err("trailing content after the last matrix block".into());
    }
    Ok(matrices)
}
