//! Pretty Good Measurement classifier on density matrices.
//!
//! Fitting averages each class's lifted density matrices into a quantum
//! centroid, forms the ensemble average state σ, and builds the measurement
//! operators E_i = σ^{-1/2} p_i ρ_i σ^{-1/2}. When σ is rank-deficient the
//! operators are completed with an equal share of the kernel projector so
//! they sum to the identity. Scoring is the Born rule: f_i = Tr(F_i ρ^{⊗n}).

use crate::encoding::{self, DensityMatrix, EncodingConfig, StateVector};
use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array2, ArrayView2};
use serde::{Deserialize, Serialize};

/// Class centroids with their empirical (or overridden) priors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassEnsemble {
    centroids: Vec<DensityMatrix>,
    priors: Vec<f64>,
    n_copies: usize,
}

impl ClassEnsemble {
    /// Assembles an ensemble from per-class centroids and priors.
    pub fn new(centroids: Vec<DensityMatrix>, priors: Vec<f64>, n_copies: usize) -> Result<Self> {
        if centroids.len() != priors.len() {
            return Err(Error::Dimension(format!(
                "{} centroids but {} priors",
                centroids.len(),
                priors.len()
            )));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 || priors.iter().any(|&p| p < 0.0) {
            return Err(Error::Dimension(format!(
                "priors must be nonnegative and sum to 1, got sum {total}"
            )));
        }
        let side = centroids[0].side();
        if centroids.iter().any(|c| c.side() != side) {
            return Err(Error::Dimension("centroid sides differ".into()));
        }
        Ok(Self {
            centroids,
            priors,
            n_copies,
        })
    }

    /// Replaces the empirical priors with explicit class weights, renormalized.
    pub fn with_priors(mut self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.priors.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} classes",
                weights.len(),
                self.priors.len()
            )));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 || weights.iter().any(|&w| w < 0.0) {
            return Err(Error::Dimension("class weights must be nonnegative".into()));
        }
        self.priors = weights.iter().map(|&w| w / total).collect();
        Ok(self)
    }

    pub fn centroids(&self) -> &[DensityMatrix] {
        &self.centroids
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn n_classes(&self) -> usize {
        self.centroids.len()
    }

    pub fn n_copies(&self) -> usize {
        self.n_copies
    }

    pub fn side(&self) -> usize {
        self.centroids[0].side()
    }
}

/// The fitted PGM model: POVM operators plus the encoding it was fit under.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmSet {
    operators: Vec<Array2<f64>>,
    kernel_projector: Array2<f64>,
    encoding: EncodingConfig,
    n_copies: usize,
    rank_tolerance: f64,
    input_dim: usize,
}

impl PovmSet {
    pub fn operators(&self) -> &[Array2<f64>] {
        &self.operators
    }

    pub fn kernel_projector(&self) -> ArrayView2<'_, f64> {
        self.kernel_projector.view()
    }

    pub fn encoding(&self) -> &EncodingConfig {
        &self.encoding
    }

    pub fn n_copies(&self) -> usize {
        self.n_copies
    }

    pub fn rank_tolerance(&self) -> f64 {
        self.rank_tolerance
    }

    /// Feature dimension the model was fitted on.
    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn n_classes(&self) -> usize {
        self.operators.len()
    }

    pub fn side(&self) -> usize {
        self.kernel_projector.nrows()
    }

    /// Largest entrywise deviation of Σ_i F_i from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let side = self.side();
        let mut sum = Array2::<f64>::zeros((side, side));
        for f in &self.operators {
            sum += f;
        }
        linalg::max_dev_from_identity(sum.view())
    }

    /// Smallest eigenvalue over all operators; ≥ 0 up to roundoff for a
    /// valid POVM.
    pub fn min_operator_eigenvalue(&self) -> f64 {
        self.operators
            .iter()
            .map(|f| linalg::eigh_sym(f.view()).0[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Per-class Born-rule scores and the argmax label.
#[derive(Debug, Clone, PartialEq)]
pub struct PgmPrediction {
    pub scores: Vec<f64>,
    pub label: usize,
}

/// Index of the largest score; ties resolve to the lowest class index.
pub(crate) fn argmax_label(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Averages lifted density matrices per class into quantum centroids.
///
/// Labels index classes from 0; every class in `0..=max_label` must occur.
/// Priors are the empirical class frequencies.
pub fn class_centroids(
    states: &[DensityMatrix],
    labels: &[usize],
    n_copies: usize,
) -> Result<ClassEnsemble> {
    assert_eq!(states.len(), labels.len());
    assert!(!states.is_empty(), "need at least one sample");
    assert!(n_copies >= 1);
    let n_classes = labels.iter().max().map_or(0, |&m| m + 1);
    let side = states[0].side();
    let mut lifted_side = 1usize;
    for _ in 0..n_copies {
        lifted_side = lifted_side
            .checked_mul(side)
            .ok_or(Error::DimensionOverflow {
                requested: usize::MAX,
                cap: encoding::DIMENSION_CAP,
            })?;
    }
    if lifted_side > encoding::DIMENSION_CAP {
        return Err(Error::DimensionOverflow {
            requested: lifted_side,
            cap: encoding::DIMENSION_CAP,
        });
    }

    let mut sums: Vec<Array2<f64>> = vec![Array2::zeros((lifted_side, lifted_side)); n_classes];
    let mut counts = vec![0usize; n_classes];
    for (rho, &label) in states.iter().zip(labels) {
        if rho.side() != side {
            return Err(Error::DimensionMismatch {
                expected: side,
                got: rho.side(),
            });
        }
        let lifted = encoding::tensor_power(rho, n_copies)?;
        sums[label] += &lifted.entries();
        counts[label] += 1;
    }
    for (class, &count) in counts.iter().enumerate() {
        if count == 0 {
            return Err(Error::EmptyClass { class });
        }
    }
    let total = labels.len() as f64;
    let centroids = sums
        .into_iter()
        .zip(&counts)
        .map(|(sum, &count)| DensityMatrix::from_parts_unchecked(sum / count as f64))
        .collect();
    let priors = counts.iter().map(|&c| c as f64 / total).collect();
    ClassEnsemble::new(centroids, priors, n_copies)
}

/// The ensemble average state σ = Σ_i p_i ρ_i.
pub fn average_state(ensemble: &ClassEnsemble) -> DensityMatrix {
    let side = ensemble.side();
    let mut sigma = Array2::zeros((side, side));
    for (rho, &p) in ensemble.centroids.iter().zip(&ensemble.priors) {
        sigma.scaled_add(p, &rho.entries());
    }
    DensityMatrix::from_parts_unchecked(sigma)
}

/// Pseudoinverse square root of a symmetric PSD matrix.
///
/// Eigenvalues at or below `rel_tol · λ_max` count as zero and accumulate
/// into the kernel projector; the rest contribute λ^{-1/2} to the inverse
/// square root, so `inv_sqrt · M · inv_sqrt` is the range projector.
pub fn psd_inv_sqrt(m: ArrayView2<'_, f64>, rel_tol: f64) -> Result<(Array2<f64>, Array2<f64>)> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::Dimension("psd_inv_sqrt expects a square matrix".into()));
    }
    if linalg::max_asymmetry(m) > 1e-10 {
        return Err(Error::Dimension("matrix is not symmetric".into()));
    }
    let (w, v) = linalg::eigh_sym(m);
    if w[0] < -1e-8 {
        return Err(Error::NotPsd {
            min_eigenvalue: w[0],
        });
    }
    let lambda_max = w[n - 1].max(0.0);
    let cutoff = rel_tol * lambda_max;
    let mut inv_sqrt = Array2::zeros((n, n));
    let mut kernel = Array2::zeros((n, n));
    for k in 0..n {
        let col = v.column(k);
        let target = if w[k] <= cutoff {
            &mut kernel
        } else {
            &mut inv_sqrt
        };
        let scale = if w[k] <= cutoff { 1.0 } else { 1.0 / w[k].sqrt() };
        for i in 0..n {
            let vi = col[i] * scale;
            if vi == 0.0 {
                continue;
            }
            for j in 0..n {
                target[[i, j]] += vi * col[j];
            }
        }
    }
    linalg::symmetrize(&mut inv_sqrt);
    linalg::symmetrize(&mut kernel);
    Ok((inv_sqrt, kernel))
}

/// Default relative rank tolerance: side · machine epsilon.
pub fn default_rank_tolerance(side: usize) -> f64 {
    side as f64 * f64::EPSILON
}

/// Builds the kernel-corrected POVM {F_i} from a class ensemble.
///
/// F_i = σ^{-1/2} p_i ρ_i σ^{-1/2} + P_ker(σ)/ℓ, which guarantees
/// Σ_i F_i = I even when σ is rank-deficient. `rank_tolerance` of `None`
/// uses the side · ε default.
pub fn fit_pgm(
    ensemble: &ClassEnsemble,
    encoding: EncodingConfig,
    rank_tolerance: Option<f64>,
) -> Result<PovmSet> {
    let side = ensemble.side();
    let tol = rank_tolerance.unwrap_or_else(|| default_rank_tolerance(side));
    let sigma = average_state(ensemble);
    let (inv_sqrt, kernel) = psd_inv_sqrt(sigma.entries(), tol)?;
    let share = 1.0 / ensemble.n_classes() as f64;
    let operators = ensemble
        .centroids
        .iter()
        .zip(&ensemble.priors)
        .map(|(rho, &p)| {
            let mut f = inv_sqrt.dot(&rho.entries()).dot(&inv_sqrt) * p;
            f.scaled_add(share, &kernel);
            linalg::symmetrize(&mut f);
            f
        })
        .collect();

    // Recover the base dimension d from side = (d+1)^n_copies.
    let base = integer_root(side, ensemble.n_copies).ok_or_else(|| {
        Error::Dimension(format!(
            "side {side} is not a perfect {}-th power",
            ensemble.n_copies
        ))
    })?;

    Ok(PovmSet {
        operators,
        kernel_projector: kernel,
        encoding,
        n_copies: ensemble.n_copies,
        rank_tolerance: tol,
        input_dim: base - 1,
    })
}

fn integer_root(value: usize, n: usize) -> Option<usize> {
    let mut root = (value as f64).powf(1.0 / n as f64).round() as usize;
    for candidate in root.saturating_sub(1)..=root + 1 {
        if candidate.checked_pow(n as u32) == Some(value) {
            root = candidate;
            return Some(root);
        }
    }
    None
}

/// Scores a feature vector under a fitted POVM and picks the argmax class.
pub fn pgm_predict(povm: &PovmSet, x: &[f64]) -> Result<PgmPrediction> {
    if x.len() != povm.input_dim {
        return Err(Error::DimensionMismatch {
            expected: povm.input_dim,
            got: x.len(),
        });
    }
    let psi = encoding::encode(x, &povm.encoding);
    let prediction = pgm_predict_state(povm, &psi);
    Ok(prediction)
}

/// Scores an already-encoded unit state.
pub fn pgm_predict_state(povm: &PovmSet, psi: &StateVector) -> PgmPrediction {
    let lifted = linalg::vec_tensor_power(psi.amplitudes(), povm.n_copies);
    let scores: Vec<f64> = povm
        .operators
        .iter()
        .map(|f| linalg::quad_form(f.view(), lifted.view()))
        .collect();
    let label = argmax_label(&scores);
    PgmPrediction { scores, label }
}

/// Scores many feature vectors at once via batched matrix products.
pub fn pgm_predict_batch(
    povm: &PovmSet,
    queries: ndarray::ArrayView2<'_, f64>,
) -> Result<Vec<PgmPrediction>> {
    if queries.ncols() != povm.input_dim {
        return Err(Error::DimensionMismatch {
            expected: povm.input_dim,
            got: queries.ncols(),
        });
    }
    let n = queries.nrows();
    let side = povm.side();
    let mut lifted = Array2::zeros((n, side));
    for (i, row) in queries.rows().into_iter().enumerate() {
        let psi = encoding::encode(row.as_slice().expect("contiguous row"), &povm.encoding);
        lifted
            .row_mut(i)
            .assign(&linalg::vec_tensor_power(psi.amplitudes(), povm.n_copies));
    }
    let mut score_table = Array2::zeros((n, povm.n_classes()));
    for (class, f) in povm.operators.iter().enumerate() {
        let product = lifted.dot(f);
        for i in 0..n {
            score_table[[i, class]] = product.row(i).dot(&lifted.row(i));
        }
    }
    Ok((0..n)
        .map(|i| {
            let scores = score_table.row(i).to_vec();
            let label = argmax_label(&scores);
            PgmPrediction { scores, label }
        })
        .collect())
}

/// Analytical success bound Σ_i p_i Tr(F_i ρ_i) for the fitted measurement.
pub fn pgm_bound(ensemble: &ClassEnsemble, povm: &PovmSet) -> f64 {
    ensemble
        .centroids
        .iter()
        .zip(&ensemble.priors)
        .zip(&povm.operators)
        .map(|((rho, &p), f)| p * frob_inner(f.view(), rho.entries()))
        .sum()
}

/// Tr(A·B) for symmetric A, B.
fn frob_inner(a: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// The optimal binary measurement built from Δ = p₀ρ₀ − p₁ρ₁.
///
/// Predicts class 0 when the test state weighs at least as much on the
/// nonnegative eigenspace of Δ as on the negative one; eigenvalue 0 belongs
/// to the nonnegative side. `success_probability` is ½(1 + ‖Δ‖₁).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HelstromBinary {
    positive_projector: Array2<f64>,
    pub success_probability: f64,
    n_copies: usize,
}

impl HelstromBinary {
    /// Classifies a density matrix of the lifted side.
    pub fn classify_density(&self, rho: &DensityMatrix) -> usize {
        let p_pos = frob_inner(self.positive_projector.view(), rho.entries());
        let p_neg = rho.trace() - p_pos;
        usize::from(p_pos < p_neg)
    }

    /// Classifies a base unit state, lifting it by the ensemble's copy count.
    pub fn classify_state(&self, psi: &StateVector) -> usize {
        let lifted = linalg::vec_tensor_power(psi.amplitudes(), self.n_copies);
        let p_pos = linalg::quad_form(self.positive_projector.view(), lifted.view());
        let p_neg = lifted.dot(&lifted) - p_pos;
        usize::from(p_pos < p_neg)
    }

    pub fn positive_projector(&self) -> ArrayView2<'_, f64> {
        self.positive_projector.view()
    }
}

/// Builds the Helstrom measurement for a two-class ensemble.
pub fn helstrom_binary(ensemble: &ClassEnsemble) -> Result<HelstromBinary> {
    if ensemble.n_classes() != 2 {
        return Err(Error::NotBinary {
            classes: ensemble.n_classes(),
        });
    }
    let delta = {
        let mut d = ensemble.centroids[0].entries().to_owned() * ensemble.priors[0];
        d.scaled_add(-ensemble.priors[1], &ensemble.centroids[1].entries());
        d
    };
    let (w, v) = linalg::eigh_sym(delta.view());
    let n = delta.nrows();
    let mut positive = Array2::zeros((n, n));
    let mut trace_norm = 0.0;
    for k in 0..n {
        trace_norm += w[k].abs();
        if w[k] >= 0.0 {
            let col = v.column(k);
            for i in 0..n {
                for j in 0..n {
                    positive[[i, j]] += col[i] * col[j];
                }
            }
        }
    }
    linalg::symmetrize(&mut positive);
    Ok(HelstromBinary {
        positive_projector: positive,
        success_probability: 0.5 * (1.0 + trace_norm),
        n_copies: ensemble.n_copies,
    })
}

/// End-to-end PGM classifier over raw feature vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PgmClassifier {
    povm: PovmSet,
    ensemble: ClassEnsemble,
}

impl PgmClassifier {
    /// Encodes rows, builds class centroids with `n_copies` tensor copies,
    /// and fits the POVM.
    pub fn fit(
        features: ndarray::ArrayView2<'_, f64>,
        labels: &[usize],
        encoding_cfg: EncodingConfig,
        n_copies: usize,
        rank_tolerance: Option<f64>,
    ) -> Result<Self> {
        let states = encode_rows(features, &encoding_cfg)?;
        let ensemble = class_centroids(&states, labels, n_copies)?;
        let povm = fit_pgm(&ensemble, encoding_cfg, rank_tolerance)?;
        Ok(Self { povm, ensemble })
    }

    pub fn predict(&self, x: &[f64]) -> Result<PgmPrediction> {
        pgm_predict(&self.povm, x)
    }

    pub fn predict_batch(
        &self,
        queries: ndarray::ArrayView2<'_, f64>,
    ) -> Result<Vec<PgmPrediction>> {
        pgm_predict_batch(&self.povm, queries)
    }

    pub fn bound(&self) -> f64 {
        pgm_bound(&self.ensemble, &self.povm)
    }

    pub fn povm(&self) -> &PovmSet {
        &self.povm
    }

    pub fn ensemble(&self) -> &ClassEnsemble {
        &self.ensemble
    }
}

/// Encodes each row of a feature matrix into a rank-1 density matrix.
pub fn encode_rows(
    features: ndarray::ArrayView2<'_, f64>,
    cfg: &EncodingConfig,
) -> Result<Vec<DensityMatrix>> {
    features
        .rows()
        .into_iter()
        .map(|row| {
            let psi = encoding::encode(row.as_slice().expect("contiguous row"), cfg);
            encoding::density_from_state(&psi)
        })
        .collect()
}

/// Helstrom classifier over raw feature vectors, for binary problems.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HelstromClassifier {
    measurement: HelstromBinary,
    encoding: EncodingConfig,
    input_dim: usize,
}

impl HelstromClassifier {
    pub fn fit(
        features: ndarray::ArrayView2<'_, f64>,
        labels: &[usize],
        encoding_cfg: EncodingConfig,
        n_copies: usize,
    ) -> Result<Self> {
        let states = encode_rows(features, &encoding_cfg)?;
        let ensemble = class_centroids(&states, labels, n_copies)?;
        let measurement = helstrom_binary(&ensemble)?;
        Ok(Self {
            measurement,
            encoding: encoding_cfg,
            input_dim: features.ncols(),
        })
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        let psi = encoding::encode(x, &self.encoding);
        Ok(self.measurement.classify_state(&psi))
    }

    pub fn success_probability(&self) -> f64 {
        self.measurement.success_probability
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::density_from_state;
    use crate::oracle;
    use ndarray::{array, Array1};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn basis_state(dim: usize, index: usize) -> DensityMatrix {
        let mut v = Array1::zeros(dim);
        v[index] = 1.0;
        density_from_state(&StateVector::new(v).unwrap()).unwrap()
    }

    fn random_pure(dim: usize, rng: &mut ChaCha12Rng) -> DensityMatrix {
        let mut v = Array1::from_iter((0..dim).map(|_| rng.random_range(-1.0..1.0f64)));
        let norm = v.dot(&v).sqrt();
        v.mapv_inplace(|a| a / norm);
        density_from_state(&StateVector::new(v).unwrap()).unwrap()
    }

    /// Two pure states at overlap 1/sqrt(2), equal priors.
    fn diagonal_pair() -> ClassEnsemble {
        let s0 = StateVector::new(array![1.0, 0.0]).unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        let s1 = StateVector::new(array![r, r]).unwrap();
        class_centroids(
            &[
                density_from_state(&s0).unwrap(),
                density_from_state(&s1).unwrap(),
            ],
            &[0, 1],
            1,
        )
        .unwrap()
    }

    #[test]
    fn centroids_average_within_a_class() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let a = random_pure(3, &mut rng);
        let b = random_pure(3, &mut rng);
        let ensemble = class_centroids(&[a.clone(), b.clone()], &[0, 0], 1).unwrap();
        assert_eq!(ensemble.n_classes(), 1);
        assert_eq!(ensemble.priors(), &[1.0]);
        let mean = (a.entries().to_owned() + b.entries()) * 0.5;
        for (x, y) in ensemble.centroids()[0].entries().iter().zip(mean.iter()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn centroid_priors_count_samples() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let states: Vec<_> = (0..4).map(|_| random_pure(3, &mut rng)).collect();
        let ensemble = class_centroids(&states, &[0, 1, 1, 1], 1).unwrap();
        assert_eq!(ensemble.priors(), &[0.25, 0.75]);
    }

    #[test]
    fn centroid_of_basis_states_with_two_copies() {
        let ensemble =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 2).unwrap();
        // centroid_i is the rank-1 projector onto |i>⊗|i>, hand-expanded.
        for (i, slot) in [(0usize, 0usize), (1, 3)] {
            let c = &ensemble.centroids()[i];
            assert_eq!(c.side(), 4);
            for ((r, col), &v) in c.entries().indexed_iter() {
                let want = if r == slot && col == slot { 1.0 } else { 0.0 };
                assert_eq!(v, want, "class {i} entry ({r},{col})");
            }
        }
    }

    #[test]
    fn empty_class_is_reported() {
        let err = class_centroids(&[basis_state(2, 0)], &[1], 1).unwrap_err();
        assert!(matches!(err, Error::EmptyClass { class: 0 }));
    }

    #[test]
    fn average_state_of_single_class_is_the_centroid() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let rho = random_pure(4, &mut rng);
        let ensemble = class_centroids(&[rho.clone()], &[0], 1).unwrap();
        let sigma = average_state(&ensemble);
        assert_eq!(sigma.entries(), rho.entries());
    }

    #[test]
    fn average_state_of_orthogonal_projectors_is_maximally_mixed() {
        let ensemble =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 1).unwrap();
        let sigma = average_state(&ensemble);
        for ((i, j), &v) in sigma.entries().indexed_iter() {
            let want = if i == j { 0.5 } else { 0.0 };
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn average_state_weights_by_priors() {
        let states = vec![
            basis_state(2, 0),
            basis_state(2, 1),
            basis_state(2, 1),
            basis_state(2, 1),
        ];
        let ensemble = class_centroids(&states, &[0, 1, 1, 1], 1).unwrap();
        let sigma = average_state(&ensemble);
        assert!((sigma.entries()[[0, 0]] - 0.25).abs() < 1e-15);
        assert!((sigma.entries()[[1, 1]] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn inv_sqrt_of_identity_is_identity() {
        let eye = Array2::<f64>::eye(3);
        let (inv_sqrt, kernel) = psd_inv_sqrt(eye.view(), 1e-12).unwrap();
        assert!(linalg::max_dev_from_identity(inv_sqrt.view()) < 1e-12);
        assert!(kernel.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn inv_sqrt_of_rank_deficient_diagonal() {
        let m = array![[4.0, 0.0], [0.0, 0.0]];
        let (inv_sqrt, kernel) = psd_inv_sqrt(m.view(), 1e-12).unwrap();
        let want_inv = array![[0.5, 0.0], [0.0, 0.0]];
        let want_ker = array![[0.0, 0.0], [0.0, 1.0]];
        for (got, want) in inv_sqrt.iter().zip(want_inv.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
        for (got, want) in kernel.iter().zip(want_ker.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn inv_sqrt_whitens_onto_the_range_projector() {
        // Random PSD of known rank r; checked against the Jacobi oracle.
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for &(n, r) in &[(5usize, 2usize), (6, 4), (7, 7)] {
            let mut m = Array2::<f64>::zeros((n, n));
            for _ in 0..r {
                let v = Array1::from_iter((0..n).map(|_| rng.random_range(-1.0..1.0f64)));
                for i in 0..n {
                    for j in 0..n {
                        m[[i, j]] += v[i] * v[j];
                    }
                }
            }
            linalg::symmetrize(&mut m);
            let tol = default_rank_tolerance(n);
            let (inv_sqrt, kernel) = psd_inv_sqrt(m.view(), tol).unwrap();
            let projector = inv_sqrt.dot(&m).dot(&inv_sqrt);
            let (w, _) = oracle::jacobi_eigh(projector.view());
            let ones = w.iter().filter(|&&x| (x - 1.0).abs() < 1e-8).count();
            let zeros = w.iter().filter(|&&x| x.abs() < 1e-8).count();
            assert_eq!(ones, r, "rank mismatch at n={n}");
            assert_eq!(zeros, n - r);
            // Oracle route agrees with the production route.
            let (oracle_inv, oracle_ker) = oracle::jacobi_inv_sqrt(m.view(), tol);
            for (a, b) in inv_sqrt.iter().zip(oracle_inv.iter()) {
                assert!((a - b).abs() < 1e-8);
            }
            for (a, b) in kernel.iter().zip(oracle_ker.iter()) {
                assert!((a - b).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn inv_sqrt_rejects_indefinite_input() {
        let m = array![[1.0, 0.0], [0.0, -0.5]];
        assert!(matches!(
            psd_inv_sqrt(m.view(), 1e-12),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn povm_for_orthogonal_pure_states_is_projective() {
        let ensemble =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 1).unwrap();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        for (i, f) in povm.operators().iter().enumerate() {
            for ((r, c), &v) in f.indexed_iter() {
                let want = if r == i && c == i { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_class_povm_is_the_identity() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let rho = random_pure(3, &mut rng);
        let ensemble = class_centroids(&[rho], &[0], 1).unwrap();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        assert!(linalg::max_dev_from_identity(povm.operators()[0].view()) < 1e-10);
    }

    #[test]
    fn diagonal_pair_povm_matches_oracle_and_completes() {
        // Frozen from the Jacobi-oracle route: for states |0> and (|0>+|1>)/√2
        // with equal priors, the PGM succeeds with probability
        // (2 + sqrt(2)) / 4 = 0.8535533905932737 and the POVM sums to I.
        let ensemble = diagonal_pair();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        let sum = povm.operators()[0].clone() + &povm.operators()[1];
        assert!(linalg::max_dev_from_identity(sum.view()) < 1e-12);

        let sigma = average_state(&ensemble);
        let tol = default_rank_tolerance(2);
        let (oracle_inv, _) = oracle::jacobi_inv_sqrt(sigma.entries(), tol);
        for (i, rho) in ensemble.centroids().iter().enumerate() {
            let expected = oracle_inv.dot(&rho.entries()).dot(&oracle_inv) * 0.5;
            for (a, b) in povm.operators()[i].iter().zip(expected.iter()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
        let bound = pgm_bound(&ensemble, &povm);
        assert!((bound - 0.853_553_390_593_273_7).abs() < 1e-12);
    }

    #[test]
    fn prediction_on_orthogonal_training_state_is_certain() {
        let ensemble =
            class_centroids(&[basis_state(3, 0), basis_state(3, 1)], &[0, 1], 1).unwrap();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        let psi = StateVector::new(array![1.0, 0.0, 0.0]).unwrap();
        let pred = pgm_predict_state(&povm, &psi);
        assert_eq!(pred.label, 0);
        assert!((pred.scores[0] - 1.0).abs() < 1e-12);
        assert!(pred.scores[1].abs() < 1e-12);
    }

    #[test]
    fn scores_sum_to_one_even_outside_the_support() {
        let ensemble =
            class_centroids(&[basis_state(3, 0), basis_state(3, 1)], &[0, 1], 1).unwrap();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        // |2> lies entirely in the kernel of sigma.
        let psi = StateVector::new(array![0.0, 0.0, 1.0]).unwrap();
        let pred = pgm_predict_state(&povm, &psi);
        let total: f64 = pred.scores.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((pred.scores[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn diagonal_pair_prediction_favors_the_training_class() {
        let ensemble = diagonal_pair();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        let pred = pgm_predict_state(&povm, &StateVector::new(array![1.0, 0.0]).unwrap());
        assert_eq!(pred.label, 0);
        // Frozen from the Jacobi-oracle route.
        assert!((pred.scores[0] - 0.853_553_390_593_273_7).abs() < 1e-10);
        assert!((pred.scores[1] - 0.146_446_609_406_726_3).abs() < 1e-10);
    }

    #[test]
    fn prediction_rejects_wrong_dimension() {
        let features = array![[0.1, 0.2], [0.8, 0.9]];
        let model = PgmClassifier::fit(
            features.view(),
            &[0, 1],
            EncodingConfig::default(),
            1,
            None,
        )
        .unwrap();
        assert!(matches!(
            model.predict(&[0.1, 0.2, 0.3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bound_extremes() {
        let orthogonal =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 1).unwrap();
        let povm = fit_pgm(&orthogonal, EncodingConfig::default(), None).unwrap();
        assert!((pgm_bound(&orthogonal, &povm) - 1.0).abs() < 1e-12);

        let identical =
            class_centroids(&[basis_state(2, 0), basis_state(2, 0)], &[0, 1], 1).unwrap();
        let povm = fit_pgm(&identical, EncodingConfig::default(), None).unwrap();
        assert!((pgm_bound(&identical, &povm) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn povm_completeness_on_random_ensembles() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for trial in 0..50 {
            let n_classes = 2 + trial % 3;
            let dim = 2 + rng.random_range(0..4usize);
            let n_copies = 1 + trial % 2;
            if dim.pow(n_copies as u32) > 81 {
                continue;
            }
            let mut states = Vec::new();
            let mut labels = Vec::new();
            for class in 0..n_classes {
                for _ in 0..1 + rng.random_range(0..4usize) {
                    states.push(random_pure(dim, &mut rng));
                    labels.push(class);
                }
            }
            let ensemble = class_centroids(&states, &labels, n_copies).unwrap();
            let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
            let side = povm.side();
            let mut sum = Array2::<f64>::zeros((side, side));
            for f in povm.operators() {
                sum += f;
                let (w, _) = linalg::eigh_sym(f.view());
                assert!(w[0] >= -1e-10, "operator not PSD: {}", w[0]);
            }
            assert!(
                linalg::max_dev_from_identity(sum.view()) < 1e-10,
                "completeness violated at trial {trial}"
            );
        }
    }

    #[test]
    fn prior_scaling_leaves_labels_unchanged() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let states: Vec<_> = (0..6).map(|_| random_pure(4, &mut rng)).collect();
        let labels = [0, 0, 1, 1, 1, 1];
        let ensemble = class_centroids(&states, &labels, 1).unwrap();
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();

        // Duplicate every sample three times: same priors, same labels.
        let mut tripled_states = Vec::new();
        let mut tripled_labels = Vec::new();
        for (s, &l) in states.iter().zip(&labels) {
            for _ in 0..3 {
                tripled_states.push(s.clone());
                tripled_labels.push(l);
            }
        }
        let tripled = class_centroids(&tripled_states, &tripled_labels, 1).unwrap();
        let povm_tripled = fit_pgm(&tripled, EncodingConfig::default(), None).unwrap();

        for _ in 0..20 {
            let probe = random_pure(4, &mut rng);
            let scores_a: Vec<f64> = povm
                .operators()
                .iter()
                .map(|f| frob_inner(f.view(), probe.entries()))
                .collect();
            let scores_b: Vec<f64> = povm_tripled
                .operators()
                .iter()
                .map(|f| frob_inner(f.view(), probe.entries()))
                .collect();
            assert_eq!(argmax_label(&scores_a), argmax_label(&scores_b));
        }
    }

    #[test]
    fn lifted_operator_side_is_exact() {
        let features = array![[0.1, 0.2, 0.3], [0.7, 0.8, 0.9], [0.4, 0.5, 0.6]];
        for n_copies in [1usize, 2] {
            let model = PgmClassifier::fit(
                features.view(),
                &[0, 1, 0],
                EncodingConfig::default(),
                n_copies,
                None,
            )
            .unwrap();
            assert_eq!(model.povm().side(), 4usize.pow(n_copies as u32));
        }
    }

    #[test]
    fn helstrom_success_extremes() {
        let orthogonal =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 1).unwrap();
        let h = helstrom_binary(&orthogonal).unwrap();
        assert!((h.success_probability - 1.0).abs() < 1e-12);

        let identical =
            class_centroids(&[basis_state(2, 0), basis_state(2, 0)], &[0, 1], 1).unwrap();
        let h = helstrom_binary(&identical).unwrap();
        assert!((h.success_probability - 0.5).abs() < 1e-12);
        // Zero eigenvalues side with the positive projector: ties go to class 0.
        assert_eq!(h.classify_density(&basis_state(2, 0)), 0);
    }

    #[test]
    fn helstrom_matches_the_pure_state_formula() {
        // Overlap c = 1/sqrt(2), equal priors: success = (1 + sqrt(1 - c^2))/2.
        let ensemble = diagonal_pair();
        let h = helstrom_binary(&ensemble).unwrap();
        let expected = 0.5 * (1.0 + (0.5f64).sqrt());
        assert!((h.success_probability - expected).abs() < 1e-12);
    }

    #[test]
    fn helstrom_requires_two_classes() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let states: Vec<_> = (0..3).map(|_| random_pure(3, &mut rng)).collect();
        let ensemble = class_centroids(&states, &[0, 1, 2], 1).unwrap();
        assert!(matches!(
            helstrom_binary(&ensemble),
            Err(Error::NotBinary { classes: 3 })
        ));
    }

    #[test]
    fn class_weight_override_renormalizes() {
        let ensemble =
            class_centroids(&[basis_state(2, 0), basis_state(2, 1)], &[0, 1], 1).unwrap();
        let weighted = ensemble.with_priors(&[3.0, 1.0]).unwrap();
        assert_eq!(weighted.priors(), &[0.75, 0.25]);
    }
}
