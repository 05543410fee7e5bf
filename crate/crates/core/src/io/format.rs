//! JSON matrix files.
//!
//! ```text
//! {
//!   "kind": "block-toeplitz",
//!   "n": 2,
//!   "d": 1,
//!   "payload": {
//!     "-1": [[[0.5, 0.0]]],
//!     "0": [[[1.0, 0.0]]],
//!     "1": [[[0.0, -2.0]]]
//!   }
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. `dense` payloads are an `n x n`
//! array of `d x d` blocks; `block-toeplitz` payloads map every symbol index
//! `-(n-1) ..= n-1` to a `d x d` block; `diagonal-block-toeplitz` payloads map
//! it to the length-`d` diagonal. The canonical form written by
//! [`serialize`] uses the key order above, sorts symbol keys numerically and
//! prints floats with the shortest representation that round-trips.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Block, BlockGrid, BlockToeplitz, C64};
use crate::normality::DiagonalBlockToeplitz;
use crate::oracle::DENSE_CAP;

/// Cap on `n * d` for structured inputs.
pub const STRUCTURED_CAP: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Dense,
    BlockToeplitz,
    DiagonalBlockToeplitz,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Dense => "dense",
            Kind::BlockToeplitz => "block-toeplitz",
            Kind::DiagonalBlockToeplitz => "diagonal-block-toeplitz",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFile {
    Dense(BlockGrid),
    BlockToeplitz(BlockToeplitz),
    DiagonalBlockToeplitz(DiagonalBlockToeplitz),
}

impl MatrixFile {
    pub fn kind(&self) -> Kind {
        match self {
            MatrixFile::Dense(_) => Kind::Dense,
            MatrixFile::BlockToeplitz(_) => Kind::BlockToeplitz,
            MatrixFile::DiagonalBlockToeplitz(_) => Kind::DiagonalBlockToeplitz,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MatrixFile::Dense(g) => g.n(),
            MatrixFile::BlockToeplitz(t) => t.n(),
            MatrixFile::DiagonalBlockToeplitz(t) => t.n(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            MatrixFile::Dense(g) => g.d(),
            MatrixFile::BlockToeplitz(t) => t.d(),
            MatrixFile::DiagonalBlockToeplitz(t) => t.d(),
        }
    }

    /// The full block grid, whatever the storage kind.
    pub fn to_grid(&self) -> BlockGrid {
        match self {
            MatrixFile::Dense(g) => g.clone(),
            MatrixFile::BlockToeplitz(t) => t.expand(),
            MatrixFile::DiagonalBlockToeplitz(t) => t.to_block_toeplitz().expand(),
        }
    }
}

fn err(at: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse {
        at: at.into(),
        msg: msg.into(),
    }
}

fn parse_size(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    let at = format!("$.{key}");
    let v = obj.get(key).ok_or_else(|| err("$", format!("missing key \"{key}\"")))?;
    let x = v
        .as_u64()
        .ok_or_else(|| err(&at, "expected a positive integer"))?;
    if x == 0 {
        return Err(err(&at, "must be at least 1"));
    }
    usize::try_from(x).map_err(|_| err(&at, "too large"))
}

fn parse_complex(v: &Value, at: &str) -> Result<C64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| err(at, "expected a [re, im] pair"))?;
    let mut parts = [0.0; 2];
    for (k, x) in pair.iter().enumerate() {
        let f = x
            .as_f64()
            .ok_or_else(|| err(format!("{at}[{k}]"), "expected a number"))?;
        if !f.is_finite() {
            return Err(err(format!("{at}[{k}]"), "non-finite number"));
        }
        parts[k] = f;
    }
    Ok(C64::new(parts[0], parts[1]))
}

fn parse_array<'a>(v: &'a Value, len: usize, at: &str) -> Result<&'a Vec<Value>> {
    let a = v
        .as_array()
        .ok_or_else(|| err(at, format!("expected an array of length {len}")))?;
    if a.len() != len {
        return Err(err(at, format!("expected length {len}, found {}", a.len())));
    }
    Ok(a)
}

fn parse_diagonal(v: &Value, d: usize, at: &str) -> Result<Vec<C64>> {
    parse_array(v, d, at)?
        .iter()
        .enumerate()
        .map(|(k, z)| parse_complex(z, &format!("{at}[{k}]")))
        .collect()
}

fn parse_block(v: &Value, d: usize, at: &str) -> Result<Block> {
    let mut data = Vec::with_capacity(d * d);
    for (r, row) in parse_array(v, d, at)?.iter().enumerate() {
        data.extend(parse_diagonal(row, d, &format!("{at}[{r}]"))?);
    }
    Ok(Block::from_row_major(d, data).expect("validated block"))
}

/// Values of a symbol map in order `-(n-1) ..= n-1`.
fn symbol_entries(v: &Value, n: usize) -> Result<Vec<(String, &Value)>> {
    let map = v
        .as_object()
        .ok_or_else(|| err("$.payload", "expected an object keyed by symbol index"))?;
    let m = n as i64 - 1;
    for key in map.keys() {
        match key.parse::<i64>() {
            Ok(k) if (-m..=m).contains(&k) && k.to_string() == *key => {}
            _ => {
                return Err(err(
                    format!("$.payload[\"{key}\"]"),
                    format!("unexpected symbol key; keys must be {} ..= {}", -m, m),
                ))
            }
        }
    }
    (-m..=m)
        .map(|k| {
            let key = k.to_string();
            let val = map
                .get(&key)
                .ok_or_else(|| err("$.payload", format!("missing symbol key \"{key}\"")))?;
            Ok((format!("$.payload[\"{key}\"]"), val))
        })
        .collect()
}

/// Parses a matrix file. Errors carry a line/column for syntax problems and
/// a JSON path for schema problems.
pub fn parse(text: &str) -> Result<MatrixFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| err("$", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "kind" | "n" | "d" | "payload") {
            return Err(err(format!("$.{key}"), "unknown key"));
        }
    }
    let kind = match obj.get("kind").and_then(Value::as_str) {
        Some("dense") => Kind::Dense,
        Some("block-toeplitz") => Kind::BlockToeplitz,
        Some("diagonal-block-toeplitz") => Kind::DiagonalBlockToeplitz,
        Some(other) => return Err(err("$.kind", format!("unknown kind \"{other}\""))),
        None => return Err(err("$", "missing string key \"kind\"")),
    };
    let n = parse_size(obj, "n")?;
    let d = parse_size(obj, "d")?;
    let cap = if kind == Kind::Dense { DENSE_CAP } else { STRUCTURED_CAP };
    if n.saturating_mul(d) > cap {
        return Err(Error::SizeLimit(format!(
            "{} file with n*d = {} exceeds {cap}",
            kind.as_str(),
            n.saturating_mul(d)
        )));
    }
    let payload = obj
        .get("payload")
        .ok_or_else(|| err("$", "missing key \"payload\""))?;
    let file = match kind {
        Kind::Dense => {
            let mut blocks = Vec::with_capacity(n * n);
            for (i, row) in parse_array(payload, n, "$.payload")?.iter().enumerate() {
                let at = format!("$.payload[{i}]");
                for (j, b) in parse_array(row, n, &at)?.iter().enumerate() {
                    blocks.push(parse_block(b, d, &format!("{at}[{j}]"))?);
                }
            }
            MatrixFile::Dense(BlockGrid::from_blocks(n, d, blocks)?)
        }
        Kind::BlockToeplitz => {
            let symbols = symbol_entries(payload, n)?
                .into_iter()
                .map(|(at, v)| parse_block(v, d, &at))
                .collect::<Result<Vec<_>>>()?;
            MatrixFile::BlockToeplitz(BlockToeplitz::new(n, d, symbols)?)
        }
        Kind::DiagonalBlockToeplitz => {
            let symbols = symbol_entries(payload, n)?
                .into_iter()
                .map(|(at, v)| parse_diagonal(v, d, &at))
                .collect::<Result<Vec<_>>>()?;
            MatrixFile::DiagonalBlockToeplitz(DiagonalBlockToeplitz::new(n, d, symbols)?)
        }
    };
    Ok(file)
}

/// Shortest round-trip decimal; always valid JSON for finite input.
pub fn format_f64(x: f64) -> String {
    format!("{x:?}")
}

fn write_complex(out: &mut String, z: C64) {
    let _ = write!(out, "[{}, {}]", format_f64(z.re), format_f64(z.im));
}

fn write_list<T>(out: &mut String, items: impl IntoIterator<Item = T>, mut f: impl FnMut(&mut String, T)) {
    out.push('[');
    for (k, item) in items.into_iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        f(out, item);
    }
    out.push(']');
}

fn write_block(out: &mut String, b: &Block) {
    let d = b.dim();
    write_list(out, 0..d, |o, r| write_list(o, 0..d, |o, c| write_complex(o, b.get(r, c))));
}

fn write_symbol_map(out: &mut String, n: usize, mut f: impl FnMut(&mut String, isize)) {
    out.push_str("{\n");
    let m = n as isize - 1;
    for k in -m..=m {
        let _ = write!(out, "    \"{k}\": ");
        f(out, k);
        out.push_str(if k < m { ",\n" } else { "\n" });
    }
    out.push_str("  }");
}

/// Canonical text of a matrix file, newline terminated.
pub fn serialize(file: &MatrixFile) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\n  \"kind\": \"{}\",\n  \"n\": {},\n  \"d\": {},\n  \"payload\": ",
        file.kind().as_str(),
        file.n(),
        file.d()
    );
    match file {
        MatrixFile::Dense(g) => {
            let n = g.n();
            out.push_str("[\n");
            for i in 0..n {
                out.push_str("    ");
                write_list(&mut out, 0..n, |o, j| write_block(o, g.block(i, j)));
                out.push_str(if i + 1 < n { ",\n" } else { "\n" });
            }
            out.push_str("  ]");
        }
        MatrixFile::BlockToeplitz(t) => {
            write_symbol_map(&mut out, t.n(), |o, k| write_block(o, t.symbol(k)));
        }
        MatrixFile::DiagonalBlockToeplitz(t) => {
            write_symbol_map(&mut out, t.n(), |o, k| {
                write_list(o, t.symbol(k).iter(), |o, z| write_complex(o, *z))
            });
        }
    }
    out.push_str("\n}\n");
    out
}
