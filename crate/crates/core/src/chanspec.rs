//! Channel-specification JSON.
//!
//! The CLI consumes channel files of the form
//!
//! ```json
//! {
//!   "name": "erasure-half",
//!   "dim_in": 2,
//!   "dim_out": 3,
//!   "standard": { "kind": "erasure", "params": { "d": 2, "p": 0.5 } }
//! }
//! ```
//!
//! with exactly one of `"kraus"` (array of matrices), `"choi"` (one
//! matrix, the unnormalized Choi operator with Tr_B γ = I), or
//! `"standard"`. A matrix is an array of rows, a row an array of complex
//! entries, and a complex entry a two-element array `[re, im]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{standard_channel, ChoiOperator, KrausChannel, StandardChannel};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

/// JSON-facing matrix: rows of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

/// Standard-family selector in a channel file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardSpec {
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

/// On-disk channel description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub name: String,
    pub dim_in: usize,
    pub dim_out: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<JsonMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi: Option<JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<StandardSpec>,
}

pub fn matrix_from_json(m: &JsonMatrix) -> Result<ComplexMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("matrix rows are empty or ragged".into()));
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(m[i][j][0], m[i][j][1])
    }))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn param_f64(params: &serde_json::Value, key: &str) -> Result<f64> {
    params
        .get(key)
        .and_then(|v| v.as_f64())
        .ok_or_else(|| Error::Parse(format!("standard params missing numeric field '{key}'")))
}

fn param_usize(params: &serde_json::Value, key: &str) -> Result<usize> {
    params
        .get(key)
        .and_then(|v| v.as_u64())
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("standard params missing integer field '{key}'")))
}

fn standard_from_spec(spec: &StandardSpec, dim_in: usize, dim_out: usize) -> Result<KrausChannel> {
    let p = &spec.params;
    let standard = match spec.kind.as_str() {
        "identity" => StandardChannel::Identity {
            d: param_usize(p, "d").unwrap_or(dim_in),
        },
        "randomizing" => StandardChannel::Randomizing {
            d_in: param_usize(p, "d_in").or_else(|_| param_usize(p, "d")).unwrap_or(dim_in),
            d_out: param_usize(p, "d_out").or_else(|_| param_usize(p, "d")).unwrap_or(dim_out),
        },
        "replacer" => {
            let sigma = p
                .get("sigma")
                .ok_or_else(|| Error::Parse("replacer params need a 'sigma' matrix".into()))?;
            let sigma: JsonMatrix = serde_json::from_value(sigma.clone())
                .map_err(|e| Error::Parse(format!("replacer sigma: {e}")))?;
            StandardChannel::Replacer {
                d_in: param_usize(p, "d_in").unwrap_or(dim_in),
                sigma: matrix_from_json(&sigma)?,
            }
        }
        "erasure" => StandardChannel::Erasure {
            d: param_usize(p, "d").unwrap_or(dim_in),
            p: param_f64(p, "p")?,
        },
        "dephasing" => {
            let probs = p
                .get("probs")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse("dephasing params need a 'probs' array".into()))?;
            let probs: Vec<f64> = probs
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| Error::Parse("non-numeric probability".into())))
                .collect::<Result<_>>()?;
            StandardChannel::Dephasing { probs }
        }
        "depolarizing" => StandardChannel::Depolarizing {
            d: param_usize(p, "d").unwrap_or(dim_in),
            p: param_f64(p, "p")?,
        },
        "werner_holevo" => StandardChannel::WernerHolevo {
            d: param_usize(p, "d").unwrap_or(dim_in),
        },
        other => {
            return Err(Error::Parse(format!(
                "unknown standard channel kind '{other}' \
                 (expected identity|randomizing|replacer|erasure|dephasing|depolarizing|werner_holevo)"
            )))
        }
    };
    standard_channel(&standard)
}

impl ChannelSpec {
    /// Materialize the channel this spec describes, enforcing that exactly
    /// one representation is present and that dimensions agree.
    pub fn build(&self) -> Result<KrausChannel> {
        let provided = [
            self.kraus.is_some(),
            self.choi.is_some(),
            self.standard.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if provided != 1 {
            return Err(Error::Parse(format!(
                "channel '{}' must carry exactly one of kraus/choi/standard, found {provided}",
                self.name
            )));
        }
        let mut channel = if let Some(kraus) = &self.kraus {
            let ops: Vec<ComplexMatrix> =
                kraus.iter().map(matrix_from_json).collect::<Result<_>>()?;
            KrausChannel::new(self.dim_in, self.dim_out, ops, self.name.clone())?
        } else if let Some(choi) = &self.choi {
            let gamma = matrix_from_json(choi)?;
            let mut ch = ChoiOperator::new(self.dim_in, self.dim_out, gamma)?.into_kraus()?;
            ch.name = self.name.clone();
            ch
        } else {
            let spec = self.standard.as_ref().expect("exactly one branch");
            standard_from_spec(spec, self.dim_in, self.dim_out)?
        };
        if channel.dim_in != self.dim_in || channel.dim_out != self.dim_out {
            return Err(Error::Validation(format!(
                "channel '{}' declares dimensions {}→{} but materializes as {}→{}",
                self.name, self.dim_in, self.dim_out, channel.dim_in, channel.dim_out
            )));
        }
        channel.name = self.name.clone();
        Ok(channel)
    }

    /// Spec carrying an explicit Kraus representation of a channel.
    pub fn from_channel(channel: &KrausChannel) -> Self {
        ChannelSpec {
            name: channel.name.clone(),
            dim_in: channel.dim_in,
            dim_out: channel.dim_out,
            kraus: Some(channel.kraus().iter().map(matrix_to_json).collect()),
            choi: None,
            standard: None,
        }
    }
}

/// Load and materialize a channel from a JSON file.
pub fn load_channel(path: &std::path::Path) -> Result<KrausChannel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let spec: ChannelSpec = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    spec.build()
}
