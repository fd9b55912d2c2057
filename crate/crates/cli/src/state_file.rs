//! The JSON state file: `{"qubits": n, "amplitudes": [[re, im], ...]}` with
//! `2^n` amplitudes in big-endian basis order (qubit 1 is the leftmost slot).

use std::fs;
use std::path::Path;

use qgeom::{AnySpinor, Complex};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    /// Unit-norm file for a state.
    pub fn from_state(state: &AnySpinor) -> Result<Self, CliError> {
        let unit = state.normalized().map_err(CliError::input)?;
        Ok(StateFile {
            qubits: unit.qubits(),
            amplitudes: unit.components().iter().map(|z| [z.re, z.im]).collect(),
        })
    }

    pub fn to_state(&self) -> Result<AnySpinor, CliError> {
        if !(1..=3).contains(&self.qubits) {
            return Err(CliError::Input(format!(
                "qubits must be 1, 2 or 3, got {}",
                self.qubits
            )));
        }
        let want = 1usize << self.qubits;
        if self.amplitudes.len() != want {
            return Err(CliError::Input(format!(
                "{} qubits need {want} amplitudes, got {}",
                self.qubits,
                self.amplitudes.len()
            )));
        }
        if self.amplitudes.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::Input("amplitudes must be finite".into()));
        }
        if self.amplitudes.iter().flatten().all(|&v| v == 0.0) {
            return Err(CliError::Input("amplitudes are all zero".into()));
        }
        let c: Vec<Complex> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex::new(re, im))
            .collect();
        AnySpinor::from_components(self.qubits, &c).map_err(CliError::input)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed state file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
