//! JSON document handling: the shared schema-version marker, the strict
//! on-disk matrix format, and atomic file writes.
//!
//! Every document this crate reads or writes carries `"version": 1` and is
//! parsed strictly — unknown fields and version mismatches are errors, so a
//! file from a future incompatible format fails loudly instead of being
//! half-understood.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::signpat::SignPattern;

// ---- Schema version ----

/// Marker that serializes as the integer 1 and refuses anything else on the
/// way in. Embed it as a `version` field to pin a document schema.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SchemaVersion;

pub const SCHEMA_VERSION: u32 = 1;

impl TryFrom<u32> for SchemaVersion {
    type Error = String;

    fn try_from(v: u32) -> std::result::Result<Self, String> {
        if v == SCHEMA_VERSION {
            Ok(SchemaVersion)
        } else {
            Err(format!("unsupported document version {v}, expected {SCHEMA_VERSION}"))
        }
    }
}

impl From<SchemaVersion> for u32 {
    fn from(_: SchemaVersion) -> u32 {
        SCHEMA_VERSION
    }
}

// ---- Matrix documents ----

/// An input document: either a sign pattern or an exact rational matrix.
///
/// On disk:
/// ```json
/// { "version": 1, "kind": "sign-pattern", "rows": 2, "cols": 2,
///   "entries": [[1, -1], [0, 1]] }
/// { "version": 1, "kind": "exact-matrix", "rows": 1, "cols": 2,
///   "entries": [["1/2", "-3"]] }
/// ```
///
/// Pattern entries are the integers -1/0/1; matrix entries are rational
/// strings `"p/q"` (bare integers also accepted on input).
#[derive(Clone, PartialEq, Debug)]
pub enum MatrixDocument {
    Pattern(SignPattern),
    Matrix(ExactMatrix),
}

impl MatrixDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixDocument::Pattern(_) => "sign-pattern",
            MatrixDocument::Matrix(_) => "exact-matrix",
        }
    }

    pub fn to_json(&self) -> Value {
        let (rows, cols, entries) = match self {
            MatrixDocument::Pattern(p) => {
                let grid: Vec<Vec<Value>> = (0..p.rows())
                    .map(|i| (0..p.cols()).map(|j| p.get(i, j).as_i8().into()).collect())
                    .collect();
                (p.rows(), p.cols(), grid)
            }
            MatrixDocument::Matrix(m) => {
                let grid: Vec<Vec<Value>> = (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| crate::exact::rational::format_rational(m.get(i, j)).into())
                            .collect()
                    })
                    .collect();
                (m.rows(), m.cols(), grid)
            }
        };
        serde_json::json!({
            "version": SCHEMA_VERSION,
            "kind": self.kind(),
            "rows": rows,
            "cols": cols,
            "entries": entries,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("value to string")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix document must be a JSON object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "version" | "kind" | "rows" | "cols" | "entries") {
                return Err(Error::Parse(format!("unknown field {key:?}")));
            }
        }
        let version = obj
            .get("version")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"version\"".into()))?;
        if version != SCHEMA_VERSION as u64 {
            return Err(Error::Parse(format!(
                "unsupported document version {version}, expected {SCHEMA_VERSION}"
            )));
        }
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing string field \"kind\"".into()))?;
        let int_field = |name: &str| {
            obj.get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("missing integer field {name:?}")))
        };
        let (rows, cols) = (int_field("rows")? as usize, int_field("cols")? as usize);
        let entries = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing 2D array field \"entries\"".into()))?;
        if entries.len() != rows {
            return Err(Error::Parse(format!(
                "entries has {} rows, document says {rows}",
                entries.len()
            )));
        }
        let grid: Vec<&Vec<Value>> = entries
            .iter()
            .map(|row| {
                row.as_array()
                    .filter(|r| r.len() == cols)
                    .ok_or_else(|| {
                        Error::Parse(format!("each entries row must be an array of {cols} values"))
                    })
            })
            .collect::<Result<_>>()?;
        match kind {
            "sign-pattern" => {
                let signs = grid
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|v| {
                        let s = v
                            .as_i64()
                            .and_then(|x| i8::try_from(x).ok())
                            .ok_or_else(|| {
                                Error::Parse(format!("sign entries must be -1, 0, or 1; got {v}"))
                            })?;
                        crate::signpat::Sign::from_i8(s)
                            .map_err(|e| Error::Parse(e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MatrixDocument::Pattern(SignPattern::new(rows, cols, signs)?))
            }
            "exact-matrix" => {
                if rows == 0 || cols == 0 {
                    return Err(Error::Parse("matrix dimensions must be positive".into()));
                }
                let mut m = ExactMatrix::zeros(rows, cols);
                for (i, row) in grid.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        let x = match v {
                            Value::String(s) => crate::exact::rational::parse_rational(s)?,
                            Value::Number(num) => num
                                .as_i64()
                                .map(crate::exact::rational::rat_int)
                                .ok_or_else(|| {
                                    Error::Parse(format!("matrix entry {num} is not an integer"))
                                })?,
                            other => {
                                return Err(Error::Parse(format!(
                                    "matrix entries must be rational strings, got {other}"
                                )))
                            }
                        };
                        m.set(i, j, x);
                    }
                }
                Ok(MatrixDocument::Matrix(m))
            }
            other => Err(Error::Parse(format!(
                "unknown document kind {other:?}; expected \"sign-pattern\" or \"exact-matrix\""
            ))),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json_string().as_bytes())
    }
}

/// Write via a sibling temp file and rename, so readers never observe a
/// half-written document.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Parse(format!("{} has no file name", path.display())))?;
    let mut tmp = file_name.to_os_string();
    tmp.push(".tmp");
    let tmp_path = match dir {
        Some(d) => d.join(&tmp),
        None => Path::new(&tmp).to_path_buf(),
    };
    let fail = |stage: &str, e: std::io::Error| {
        Error::Resource(format!("{stage} {}: {e}", path.display()))
    };
    fs::write(&tmp_path, bytes).map_err(|e| fail("cannot write", e))?;
    fs::rename(&tmp_path, path).map_err(|e| {
        let _ = fs::remove_file(&tmp_path);
        fail("cannot replace", e)
    })?;
    Ok(())
}
