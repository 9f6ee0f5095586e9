//! Text format for framing matrices: a line holding `n`, then `n` rows of
//! `n` whitespace-separated integers. Blank lines and `#` comments are
//! ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;

pub fn parse_framing(text: &str) -> Result<IntMatrix> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty framing file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {tok:?} in row {}", r + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                r + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing content {extra:?}")));
    }
    let m = IntMatrix::from_rows(&rows);
    m.check_symmetric()?;
    Ok(m)
}

pub fn format_framing(m: &IntMatrix) -> String {
    let mut out = format!("{}\n", m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
