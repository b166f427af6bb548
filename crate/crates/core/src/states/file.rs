//! JSON state files.
//!
//! Pure state: `{"dims":[3,2,3,2,3,2],"amps":[[re,im],...]}`.
//! Mixed state: `{"ensemble":[{"weight":w,"amps":[[re,im],...]},...]}` with an
//! optional top-level `"dims"` (defaults to the composite dims).

use std::fs;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{composite_shape, CompositeState, MixedState, SPIN_DIM};
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, FactorShape, StateVector};
use crate::tol;

/// Contents of a state file.
#[derive(Clone, Debug, PartialEq)]
pub enum StoredState {
    Pure {
        shape: FactorShape,
        vector: StateVector,
    },
    Mixed {
        shape: FactorShape,
        ensemble: Vec<(f64, StateVector)>,
    },
}

impl StoredState {
    pub fn shape(&self) -> &FactorShape {
        match self {
            StoredState::Pure { shape, .. } | StoredState::Mixed { shape, .. } => shape,
        }
    }

    pub fn is_composite(&self) -> bool {
        *self.shape() == composite_shape()
    }

    pub fn is_spin(&self) -> bool {
        self.shape().dims() == [2, 2, 2]
    }

    pub fn density(&self) -> ComplexMatrix {
        match self {
            StoredState::Pure { vector, .. } => vector.projector(),
            StoredState::Mixed { ensemble, .. } => ensemble
                .iter()
                .map(|(w, v)| v.projector().scale_real(*w))
                .reduce(|a, b| &a + &b)
                .expect("validated ensembles are non-empty"),
        }
    }

    /// Three-qubit spin density matrix: the state itself for spin files,
    /// the momentum-traced reduction for composite files.
    pub fn spin_density(&self) -> Result<ComplexMatrix> {
        if self.is_spin() {
            Ok(self.density())
        } else if self.is_composite() {
            match self {
                StoredState::Pure { vector, .. } => Ok(CompositeState::new(vector.clone())?.spin_density()),
                StoredState::Mixed { .. } => Ok(self.to_mixed()?.spin_density()),
            }
        } else {
            Err(Error::Input(format!(
                "cannot extract spins from a state with dims {:?}",
                self.shape().dims()
            )))
        }
    }

    pub fn to_mixed(&self) -> Result<MixedState> {
        if !self.is_composite() {
            return Err(Error::Input(format!(
                "expected composite dims {:?}, got {:?}",
                composite_shape().dims(),
                self.shape().dims()
            )));
        }
        match self {
            StoredState::Pure { vector, .. } => Ok(MixedState::pure(CompositeState::new(vector.clone())?)),
            StoredState::Mixed { ensemble, .. } => MixedState::new(
                ensemble
                    .iter()
                    .map(|(w, v)| Ok((*w, CompositeState::new(v.clone())?)))
                    .collect::<Result<_>>()?,
            ),
        }
    }

    pub fn from_composite(state: &CompositeState) -> Self {
        StoredState::Pure {
            shape: composite_shape(),
            vector: state.vector().clone(),
        }
    }

    pub fn from_mixed(state: &MixedState) -> Self {
        StoredState::Mixed {
            shape: composite_shape(),
            ensemble: state.members().iter().map(|(w, s)| (*w, s.vector().clone())).collect(),
        }
    }

    pub fn spin_pure(vector: StateVector) -> Result<Self> {
        if vector.dim() != SPIN_DIM {
            return Err(Error::Shape(format!(
                "spin state needs 8 amplitudes, got {}",
                vector.dim()
            )));
        }
        Ok(StoredState::Pure {
            shape: FactorShape::qubits(3),
            vector,
        })
    }

    pub fn spin_ensemble(ensemble: Vec<(f64, StateVector)>) -> Self {
        StoredState::Mixed {
            shape: FactorShape::qubits(3),
            ensemble,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureFile {
    dims: Vec<usize>,
    amps: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberFile {
    weight: f64,
    amps: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
    ensemble: Vec<MemberFile>,
}

#[derive(Serialize)]
struct SpinMatrixFile {
    dims: [usize; 3],
    rho: Vec<Vec<[f64; 2]>>,
}

fn to_pairs(v: &StateVector) -> Vec<[f64; 2]> {
    v.amps().iter().map(|a| [a.re, a.im]).collect()
}

fn vector_from(amps: &[[f64; 2]], dim: usize, field: &str) -> Result<StateVector> {
    if amps.len() != dim {
        return Err(Error::Input(format!(
            "{field}: expected {dim} amplitudes for the declared dims, found {}",
            amps.len()
        )));
    }
    if let Some(i) = amps.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
        return Err(Error::Input(format!("{field}[{i}]: non-finite amplitude")));
    }
    let v = StateVector::new(amps.iter().map(|&[re, im]| C64::new(re, im)).collect())?;
    if !v.is_normalized(tol::PHYS) {
        return Err(Error::Input(format!(
            "{field}: squared norm {} differs from 1",
            v.norm_sqr()
        )));
    }
    Ok(v)
}

fn parse(text: &str) -> Result<StoredState> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Input("state file must hold a JSON object".into()))?;
    if obj.contains_key("ensemble") {
        let file: MixedFile = serde_json::from_value(value).map_err(|e| Error::Input(format!("mixed state: {e}")))?;
        let shape = FactorShape::new(file.dims.unwrap_or_else(|| composite_shape().dims().to_vec()))
            .map_err(|e| Error::Input(format!("dims: {e}")))?;
        if file.ensemble.is_empty() {
            return Err(Error::Input("ensemble: at least one member required".into()));
        }
        let mut ensemble = Vec::with_capacity(file.ensemble.len());
        for (i, m) in file.ensemble.iter().enumerate() {
            if !(m.weight.is_finite() && m.weight > 0.0) {
                return Err(Error::Input(format!("ensemble[{i}].weight: {} must be > 0", m.weight)));
            }
            let v = vector_from(&m.amps, shape.total(), &format!("ensemble[{i}].amps"))?;
            ensemble.push((m.weight, v));
        }
        let total: f64 = ensemble.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tol::PHYS {
            return Err(Error::Input(format!("ensemble: weights sum to {total}, expected 1")));
        }
        Ok(StoredState::Mixed { shape, ensemble })
    } else if obj.contains_key("amps") {
        let file: PureFile = serde_json::from_value(value).map_err(|e| Error::Input(format!("pure state: {e}")))?;
        let shape = FactorShape::new(file.dims).map_err(|e| Error::Input(format!("dims: {e}")))?;
        let vector = vector_from(&file.amps, shape.total(), "amps")?;
        Ok(StoredState::Pure { shape, vector })
    } else {
        Err(Error::Input(
            "state file needs either an \"amps\" or an \"ensemble\" field".into(),
        ))
    }
}

pub fn read_state(path: impl AsRef<Path>) -> Result<StoredState> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|e| match e {
        Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string(value).expect("state files always serialise");
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_state(state: &StoredState, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    match state {
        StoredState::Pure { shape, vector } => write_json(
            &PureFile {
                dims: shape.dims().to_vec(),
                amps: to_pairs(vector),
            },
            path,
        ),
        StoredState::Mixed { shape, ensemble } => write_json(
            &MixedFile {
                dims: (*shape != composite_shape()).then(|| shape.dims().to_vec()),
                ensemble: ensemble
                    .iter()
                    .map(|(w, v)| MemberFile {
                        weight: *w,
                        amps: to_pairs(v),
                    })
                    .collect(),
            },
            path,
        ),
    }
}

/// Writes an 8×8 spin density matrix as `{"dims":[2,2,2],"rho":[[[re,im],..],..]}`.
pub fn write_spin_matrix(rho: &ComplexMatrix, path: impl AsRef<Path>) -> Result<()> {
    if rho.rows() != SPIN_DIM || rho.cols() != SPIN_DIM {
        return Err(Error::Shape(format!(
            "spin matrix must be 8x8, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let rows = (0..SPIN_DIM)
        .map(|i| rho.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect();
    write_json(
        &SpinMatrixFile {
            dims: [2, 2, 2],
            rho: rows,
        },
        path.as_ref(),
    )
}
