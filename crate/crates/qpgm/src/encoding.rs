//! Feature-vector encodings into unit states and density matrices.
//!
//! Two encodings are supported. Amplitude encoding prepends a bias term and
//! normalizes, mapping `x` to `(1, r·x) / ‖(1, r·x)‖`. Stereographic encoding
//! applies the inverse stereographic projection onto the unit sphere one
//! dimension up, with the last coordinate as the pole axis. Both produce real
//! unit vectors of dimension `d + 1`.

use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use serde::{Deserialize, Serialize};

/// Side length above which tensor powers refuse to materialize.
pub const DIMENSION_CAP: usize = 4096;

/// Norm tolerance accepted when constructing a state from raw amplitudes.
const STATE_NORM_TOL: f64 = 1e-8;

/// Which map takes feature vectors to unit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingMethod {
    Amplitude,
    Stereographic,
}

impl std::fmt::Display for EncodingMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EncodingMethod::Amplitude => write!(f, "amplitude"),
            EncodingMethod::Stereographic => write!(f, "stereo"),
        }
    }
}

/// Floating-point width used while computing the encoding.
///
/// `Single` rounds the arithmetic through f32 (a timing-study knob); the
/// stored amplitudes are always f64 and are renormalized to unit length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Single,
    Double,
}

/// Encoding configuration: method, multiplicative rescale, precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncodingConfig {
    pub method: EncodingMethod,
    pub rescale: f64,
    pub precision: Precision,
}

impl Default for EncodingConfig {
    fn default() -> Self {
        Self {
            method: EncodingMethod::Amplitude,
            rescale: 1.0,
            precision: Precision::Double,
        }
    }
}

impl EncodingConfig {
    pub fn new(method: EncodingMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    #[must_use]
    pub fn with_rescale(mut self, rescale: f64) -> Self {
        assert!(rescale > 0.0, "rescale must be positive");
        self.rescale = rescale;
        self
    }

    #[must_use]
    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }
}

/// A real unit vector representing a pure state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Array1<f64>,
}

impl StateVector {
    /// Wraps raw amplitudes, requiring unit norm within 1e-8.
    pub fn new(amplitudes: Array1<f64>) -> Result<Self> {
        let norm = amplitudes.dot(&amplitudes).sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > STATE_NORM_TOL {
            return Err(Error::InvalidState { deviation });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> ArrayView1<'_, f64> {
        self.amplitudes.view()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Inner product with another state.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.amplitudes.dot(&other.amplitudes)
    }
}

/// A real symmetric PSD matrix with unit trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    entries: Array2<f64>,
}

impl DensityMatrix {
    /// Wraps a matrix, checking symmetry and unit trace (both within 1e-10).
    ///
    /// Positive semidefiniteness is the caller's responsibility; operations
    /// that depend on it (`psd_inv_sqrt`) verify and report `NotPsd`.
    pub fn new(entries: Array2<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Dimension(format!(
                "density matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let asym = linalg::max_asymmetry(entries.view());
        if asym > 1e-10 {
            return Err(Error::Dimension(format!(
                "density matrix asymmetry {asym:.3e} exceeds tolerance"
            )));
        }
        let trace = entries.diag().sum();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::Dimension(format!(
                "density matrix trace {trace} deviates from 1"
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_parts_unchecked(entries: Array2<f64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> ArrayView2<'_, f64> {
        self.entries.view()
    }

    pub fn side(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().sum()
    }

    /// Smallest eigenvalue; an explicit PSD check for tests and validation.
    pub fn min_eigenvalue(&self) -> f64 {
        let (w, _) = linalg::eigh_sym(self.entries.view());
        w[0]
    }
}

/// Encodes a feature vector with the configured method.
pub fn encode(x: &[f64], cfg: &EncodingConfig) -> StateVector {
    match cfg.method {
        EncodingMethod::Amplitude => encode_amplitude(x, cfg),
        EncodingMethod::Stereographic => encode_stereographic(x, cfg),
    }
}

/// Amplitude encoding: prepend a bias term, rescale, normalize.
///
/// The bias occupies index 0 and guarantees a nonzero norm even for x = 0.
pub fn encode_amplitude(x: &[f64], cfg: &EncodingConfig) -> StateVector {
    debug_assert!(x.iter().all(|v| v.is_finite()));
    let amplitudes = match cfg.precision {
        Precision::Double => {
            let mut v = Array1::zeros(x.len() + 1);
            v[0] = 1.0;
            for (i, &xi) in x.iter().enumerate() {
                v[i + 1] = cfg.rescale * xi;
            }
            v
        }
        Precision::Single => {
            let r = cfg.rescale as f32;
            let mut v = Array1::zeros(x.len() + 1);
            v[0] = 1.0f32 as f64;
            for (i, &xi) in x.iter().enumerate() {
                v[i + 1] = (r * xi as f32) as f64;
            }
            v
        }
    };
    normalize(amplitudes)
}

/// Inverse stereographic encoding onto the unit sphere S^d.
///
/// With u = rescale·x and r² = ‖u‖², maps to (2u, r² − 1) / (r² + 1).
pub fn encode_stereographic(x: &[f64], cfg: &EncodingConfig) -> StateVector {
    debug_assert!(x.iter().all(|v| v.is_finite()));
    let amplitudes = match cfg.precision {
        Precision::Double => {
            let u: Vec<f64> = x.iter().map(|&xi| cfg.rescale * xi).collect();
            let r2: f64 = u.iter().map(|v| v * v).sum();
            let denom = r2 + 1.0;
            let mut v = Array1::zeros(x.len() + 1);
            for (i, &ui) in u.iter().enumerate() {
                v[i] = 2.0 * ui / denom;
            }
            v[x.len()] = (r2 - 1.0) / denom;
            v
        }
        Precision::Single => {
            let r = cfg.rescale as f32;
            let u: Vec<f32> = x.iter().map(|&xi| r * xi as f32).collect();
            let r2: f32 = u.iter().map(|v| v * v).sum();
            let denom = r2 + 1.0;
            let mut v = Array1::zeros(x.len() + 1);
            for (i, &ui) in u.iter().enumerate() {
                v[i] = (2.0 * ui / denom) as f64;
            }
            v[x.len()] = ((r2 - 1.0) / denom) as f64;
            v
        }
    };
    normalize(amplitudes)
}

fn normalize(mut v: Array1<f64>) -> StateVector {
    let norm = v.dot(&v).sqrt();
    v.mapv_inplace(|a| a / norm);
    StateVector { amplitudes: v }
}

/// Rank-1 density matrix ψψᵀ from a unit state.
pub fn density_from_state(psi: &StateVector) -> Result<DensityMatrix> {
    let v = psi.amplitudes();
    let norm = v.dot(&v).sqrt();
    let deviation = (norm - 1.0).abs();
    if deviation > STATE_NORM_TOL {
        return Err(Error::InvalidState { deviation });
    }
    let q = v.len();
    let mut entries = Array2::zeros((q, q));
    for i in 0..q {
        for j in 0..q {
            entries[[i, j]] = v[i] * v[j];
        }
    }
    Ok(DensityMatrix { entries })
}

/// n-fold Kronecker power of a density matrix.
///
/// Preserves unit trace and positive semidefiniteness; refuses outputs whose
/// side would exceed [`DIMENSION_CAP`].
pub fn tensor_power(rho: &DensityMatrix, n: usize) -> Result<DensityMatrix> {
    assert!(n >= 1, "tensor power requires n >= 1");
    let side = rho.side();
    let mut requested: usize = 1;
    for _ in 0..n {
        requested = requested.checked_mul(side).unwrap_or(usize::MAX);
        if requested > DIMENSION_CAP {
            return Err(Error::DimensionOverflow {
                requested,
                cap: DIMENSION_CAP,
            });
        }
    }
    let mut out = rho.entries.clone();
    for _ in 1..n {
        out = linalg::kron(out.view(), rho.entries());
    }
    Ok(DensityMatrix { entries: out })
}
