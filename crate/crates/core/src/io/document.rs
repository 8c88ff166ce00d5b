use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, C64};
use crate::pencil::MatrixTuple;

use super::expr;

/// A matrix entry component: a JSON number or a constant expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Expr(String),
}

impl Scalar {
    pub fn value(&self) -> Result<f64> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Expr(s) => expr::eval(s),
        }
    }
}

/// JSON form of a matrix tuple: `matrices[k][i][j] = [re, im]`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    pub n: usize,
    pub d: usize,
    pub matrices: Vec<Vec<Vec<[Scalar; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl TupleDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_tuple(f: &MatrixTuple, name: Option<String>, source: Option<String>) -> Self {
        let matrices = f
            .matrices()
            .iter()
            .map(|m| {
                (0..f.d())
                    .map(|i| {
                        (0..f.d())
                            .map(|j| {
                                let z = m.get(i, j);
                                [Scalar::Number(z.re + 0.0), Scalar::Number(z.im + 0.0)]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { n: f.n(), d: f.d(), matrices, name, source }
    }

    /// Entries evaluated and shape-checked, row-major per matrix.
    fn values(&self) -> Result<Vec<Vec<C64>>> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::Parse("n and d must be positive".into()));
        }
        if self.matrices.len() != self.n {
            return Err(Error::Parse(format!("expected {} matrices, found {}", self.n, self.matrices.len())));
        }
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, m)| {
                if m.len() != self.d || m.iter().any(|row| row.len() != self.d) {
                    return Err(Error::Parse(format!("matrix {k} is not {0}×{0}", self.d)));
                }
                m.iter().flatten().map(|[re, im]| Ok(C64::new(re.value()?, im.value()?))).collect()
            })
            .collect()
    }

    /// With `symmetrize`, each matrix is replaced by `(A + A*)/2`; otherwise
    /// non-hermitian input is rejected.
    pub fn to_tuple(&self, symmetrize: bool) -> Result<MatrixTuple> {
        let mats = self
            .values()?
            .into_iter()
            .map(|e| if symmetrize { HermitianMatrix::symmetrized(self.d, e) } else { HermitianMatrix::new(self.d, e) })
            .collect::<Result<Vec<_>>>()?;
        MatrixTuple::new(mats)
    }

    /// SHA-256 of the evaluated entries, so that `"1/2"` and `0.5` agree.
    pub fn digest(&self) -> Result<String> {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        h.update((self.d as u64).to_le_bytes());
        // Adding 0.0 folds -0.0 into 0.0.
        for z in self.values()?.iter().flatten() {
            h.update((z.re + 0.0).to_le_bytes());
            h.update((z.im + 0.0).to_le_bytes());
        }
        Ok(hex::encode(h.finalize()))
    }
}
