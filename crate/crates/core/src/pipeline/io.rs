use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::LatticeSupport;

/// Square integer matrix in the `{"n": n, "rows": [[...]]}` format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<MatrixRepr> for IntMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        if r.rows.len() != r.n {
            return Err(Error::DimensionMismatch {
                expected: r.n,
                found: r.rows.len(),
            });
        }
        IntMatrix::new(r.rows)
    }
}

impl From<IntMatrix> for MatrixRepr {
    fn from(m: IntMatrix) -> Self {
        MatrixRepr {
            n: m.rows.len(),
            rows: m.rows,
        }
    }
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|&v| v >= 0)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Supports from either a JSON array of `{"dim", "points"}` objects or `{"supports": [...]}`.
pub fn parse_supports(text: &str) -> Result<Vec<LatticeSupport>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        List(Vec<LatticeSupport>),
        Wrapped { supports: Vec<LatticeSupport> },
    }
    let v: Input = serde_json::from_str(text)?;
    let list = match v {
        Input::List(l) | Input::Wrapped { supports: l } => l,
    };
    if list.is_empty() {
        return Err(Error::Empty);
    }
    Ok(list)
}
