//! The JSON code-file format.
//!
//! ```json
//! { "kind": "vector", "q": 2, "m": 3, "n": 2, "generators": [[[1], [0, 1]]] }
//! ```
//!
//! Field elements are integers over a prime field and ascending coefficient
//! arrays over an extension (`[1, 0, 1]` is `1 + α²`). For vector codes `m`
//! is the extension degree; matrix codes may set `degree` to put their
//! entries in GF(q^degree).

use rankmetric::{Field, Mat, MatrixCode, Subspace, VectorCode};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Matrix,
    Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Prime(u32),
    Coeffs(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub kind: Kind,
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub m: usize,
    /// Matrix kind: one `n × m` grid per generator. Vector kind: one
    /// length-`n` row per generator, wrapped as a `1 × n` grid.
    pub generators: Vec<Vec<Vec<Entry>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Code {
    Matrix(MatrixCode),
    Vector(VectorCode),
}

impl Code {
    pub fn field(&self) -> &Field {
        match self {
            Code::Matrix(c) => c.field(),
            Code::Vector(c) => c.field(),
        }
    }
}

fn entry_value(field: &Field, e: &Entry) -> Result<u32, CliError> {
    let v = match e {
        Entry::Prime(x) if field.is_prime_field() => *x,
        Entry::Prime(x) if *x < field.characteristic() => *x,
        Entry::Prime(x) => {
            return Err(CliError::Schema(format!(
                "entry {x} must be written as a coefficient array over GF({}^{})",
                field.characteristic(),
                field.degree()
            )))
        }
        Entry::Coeffs(c) => field.from_coeffs(c)?,
    };
    field.element(v)?;
    Ok(v)
}

fn entry_of(field: &Field, v: u32) -> Entry {
    if field.is_prime_field() {
        Entry::Prime(v)
    } else {
        Entry::Coeffs(field.coeffs(v))
    }
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<CodeFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files always serialize")
    }

    fn field(&self) -> Result<Field, CliError> {
        let degree = match self.kind {
            Kind::Vector => {
                if let Some(d) = self.degree {
                    if d != self.m {
                        return Err(CliError::Schema(format!(
                            "vector codes have degree = m, got degree {d} and m {}",
                            self.m
                        )));
                    }
                }
                self.m
            }
            Kind::Matrix => self.degree.unwrap_or(1),
        };
        let field = match &self.modulus {
            Some(md) => {
                if md.len() != degree + 1 {
                    return Err(CliError::Schema(format!(
                        "modulus {md:?} has degree {}, expected {degree}",
                        md.len().saturating_sub(1)
                    )));
                }
                Field::extension(self.q, md.clone())?
            }
            None => Field::default_extension(self.q, degree)?,
        };
        Ok(field)
    }

    pub fn to_code(&self) -> Result<Code, CliError> {
        let field = self.field()?;
        match self.kind {
            Kind::Matrix => {
                let mut mats = Vec::with_capacity(self.generators.len());
                for (g, grid) in self.generators.iter().enumerate() {
                    if grid.len() != self.n || grid.iter().any(|r| r.len() != self.m) {
                        return Err(CliError::Schema(format!(
                            "generator {g} is not a {}x{} grid",
                            self.n, self.m
                        )));
                    }
                    let data = grid
                        .iter()
                        .flatten()
                        .map(|e| entry_value(&field, e))
                        .collect::<Result<Vec<_>, _>>()?;
                    mats.push(Mat::new(&field, self.n, self.m, data)?);
                }
                Ok(Code::Matrix(MatrixCode::new(&field, self.n, self.m, &mats)?))
            }
            Kind::Vector => {
                let mut rows = Vec::with_capacity(self.generators.len());
                for (g, grid) in self.generators.iter().enumerate() {
                    if grid.len() != 1 || grid[0].len() != self.n {
                        return Err(CliError::Schema(format!(
                            "generator {g} must be a single row of length {}",
                            self.n
                        )));
                    }
                    rows.push(
                        grid[0]
                            .iter()
                            .map(|e| entry_value(&field, e))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Ok(Code::Vector(VectorCode::new(&field, self.n, &rows)?))
            }
        }
    }

    /// The canonical file of `code`: reduced generators, explicit modulus
    /// for extension fields.
    pub fn from_code(code: &Code) -> CodeFile {
        let field = code.field();
        let q = field.characteristic();
        let modulus = (!field.is_prime_field()).then(|| field.modulus().to_vec());
        match code {
            Code::Matrix(c) => CodeFile {
                kind: Kind::Matrix,
                q,
                degree: (!field.is_prime_field()).then(|| field.degree()),
                modulus,
                n: c.n(),
                m: c.m(),
                generators: grids(field, c.space(), c.m()),
            },
            Code::Vector(c) => CodeFile {
                kind: Kind::Vector,
                q,
                degree: None,
                modulus,
                n: c.n(),
                m: c.m(),
                generators: grids(field, c.space(), c.n())
                    .into_iter()
                    .map(|g| vec![g.concat()])
                    .collect(),
            },
        }
    }
}

fn grids(field: &Field, space: &Subspace, width: usize) -> Vec<Vec<Vec<Entry>>> {
    space
        .rows()
        .map(|r| {
            r.chunks(width)
                .map(|row| row.iter().map(|&v| entry_of(field, v)).collect())
                .collect()
        })
        .collect()
}
