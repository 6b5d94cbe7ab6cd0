//! JSON instance files for the finite-dimensional evaluator.
//!
//! ```json
//! {
//!   "input_dim": 2,
//!   "output_dim": 2,
//!   "kraus": [
//!     [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]],
//!     [[0.7071067811865476, 0], [0, 0], [0, 0], [-0.7071067811865476, 0]]
//!   ],
//!   "ensemble": [
//!     { "weight": 0.5, "pure": { "amplitudes": [[1, 0], [0, 0]] } },
//!     { "weight": 0.5, "density": [[0, 0], [0, 0], [0, 0], [1, 0]] }
//!   ]
//! }
//! ```
//!
//! Every matrix is a row-major list of `[re, im]` pairs. A Kraus operator is
//! `output_dim x input_dim`; a density matrix is `input_dim x input_dim`.
//! Pure states live on `reference_dim x input_dim` (default reference
//! dimension 1) with index `r * input_dim + i`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{EnsembleEntry, EnsembleState, FdChannel, FdEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};

type Pair = [f64; 2];

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureFile {
    #[serde(default = "one")]
    pub reference_dim: usize,
    pub amplitudes: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFile {
    Pure(PureFile),
    Density(Vec<Pair>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryFile {
    pub weight: f64,
    #[serde(flatten)]
    pub state: StateFile,
}

/// On-disk schema, mirrored one-to-one by serde.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub input_dim: usize,
    pub output_dim: usize,
    pub kraus: Vec<Vec<Pair>>,
    pub ensemble: Vec<EntryFile>,
}

/// A validated channel together with its ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct FdInstance {
    pub channel: FdChannel,
    pub ensemble: FdEnsemble,
}

fn matrix(rows: usize, cols: usize, data: &[Pair], what: &str) -> Result<CMatrix> {
    if data.len() != rows * cols {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} entries, expected {rows} x {cols}",
            data.len()
        )));
    }
    let entries: Vec<_> = data.iter().map(|[re, im]| c(*re, *im)).collect();
    Ok(CMatrix::from_row_slice(rows, cols, &entries))
}

fn pairs(m: &CMatrix) -> Vec<Pair> {
    // nalgebra stores column-major; the file is row-major
    (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| [m[(i, j)].re, m[(i, j)].im]))
        .collect()
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<FdInstance> {
        let kraus = self
            .kraus
            .iter()
            .map(|k| matrix(self.output_dim, self.input_dim, k, "Kraus operator"))
            .collect::<Result<Vec<_>>>()?;
        let channel = FdChannel::new(kraus)?;
        let entries = self
            .ensemble
            .iter()
            .map(|e| {
                let state = match &e.state {
                    StateFile::Pure(p) => EnsembleState::Pure {
                        reference_dim: p.reference_dim,
                        amplitudes: p.amplitudes.iter().map(|[re, im]| c(*re, *im)).collect(),
                    },
                    StateFile::Density(d) => {
                        EnsembleState::Density(matrix(self.input_dim, self.input_dim, d, "density matrix")?)
                    }
                };
                Ok(EnsembleEntry {
                    weight: e.weight,
                    state,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ensemble = FdEnsemble::new(self.input_dim, entries)?;
        Ok(FdInstance { channel, ensemble })
    }

    pub fn from_instance(inst: &FdInstance) -> Self {
        InstanceFile {
            input_dim: inst.channel.input_dim(),
            output_dim: inst.channel.output_dim(),
            kraus: inst.channel.kraus().iter().map(pairs).collect(),
            ensemble: inst
                .ensemble
                .entries()
                .iter()
                .map(|e| EntryFile {
                    weight: e.weight,
                    state: match &e.state {
                        EnsembleState::Pure {
                            reference_dim,
                            amplitudes,
                        } => StateFile::Pure(PureFile {
                            reference_dim: *reference_dim,
                            amplitudes: amplitudes.iter().map(|z| [z.re, z.im]).collect(),
                        }),
                        EnsembleState::Density(m) => StateFile::Density(pairs(m)),
                    },
                })
                .collect(),
        }
    }
}

impl FdInstance {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(s).map_err(|e| Error::InvalidEnsemble(format!("instance file: {e}")))?;
        file.into_instance()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from_instance(self)).expect("instance serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidEnsemble(format!("{}: {e}", path.display())))?;
        FdInstance::from_json_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_dim::protocol_rates;

    const DEPHASING: &str = r#"{
      "input_dim": 2,
      "output_dim": 2,
      "kraus": [
        [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]],
        [[0.7071067811865476, 0], [0, 0], [0, 0], [-0.7071067811865476, 0]]
      ],
      "ensemble": [
        { "weight": 0.5, "pure": { "amplitudes": [[1, 0], [0, 0]] } },
        { "weight": 0.5, "density": [[0, 0], [0, 0], [0, 0], [1, 0]] }
      ]
    }"#;

    #[test]
    fn documented_example_parses() {
        let inst = FdInstance::from_json_str(DEPHASING).unwrap();
        assert_eq!(inst.channel.env_dim(), 2);
        let r = protocol_rates(&inst.channel, &inst.ensemble).unwrap();
        assert!((r.bits - 1.0).abs() < 1e-10);
    }

    #[test]
    fn round_trip_preserves_instance() {
        let inst = FdInstance::from_json_str(DEPHASING).unwrap();
        let again = FdInstance::from_json_str(&inst.to_json_string()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn row_major_layout() {
        let text = r#"{"input_dim": 2, "output_dim": 2,
            "kraus": [[[0,0],[1,0],[1,0],[0,0]]],
            "ensemble": [{"weight": 1, "pure": {"amplitudes": [[1,0],[0,0]]}}]}"#;
        let inst = FdInstance::from_json_str(text).unwrap();
        let file = InstanceFile::from_instance(&inst);
        assert_eq!(file.kraus[0], vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]);
        let asym = r#"{"input_dim": 2, "output_dim": 2,
            "kraus": [[[1,0],[0,0],[0,0],[0,1]]],
            "ensemble": [{"weight": 1, "pure": {"amplitudes": [[1,0],[0,0]]}}]}"#;
        let inst = FdInstance::from_json_str(asym).unwrap();
        assert_eq!(inst.channel.kraus()[0][(1, 1)], c(0.0, 1.0));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(FdInstance::from_json_str("{").is_err());
        let short = DEPHASING.replace(
            "[[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]],",
            "[[1, 0]],",
        );
        assert!(matches!(
            FdInstance::from_json_str(&short),
            Err(Error::DimensionMismatch(_))
        ));
        let extra = DEPHASING.replacen("\"input_dim\": 2,", "\"input_dim\": 2, \"bogus\": 1,", 1);
        assert!(FdInstance::from_json_str(&extra).is_err());
    }
}
