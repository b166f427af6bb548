//! Property harness for observer-independent entanglement classes.
//!
//! "Class" is operationalised through local-unitary invariants: the
//! three-tangle, m-concurrences over every partition and the purities of the
//! single-qubit reductions. Two states in the same class must agree on all of them.
//!
//! All randomness is drawn from [`ChaCha8Rng`] seeded explicitly; a trial's
//! seed is reported whenever it fails.

use std::fmt;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::boost::{boost_mixed, boost_pure, boosted_spin_density_fast, permutation_composite, SpinEnsemble};
use crate::error::{Error, Result};
use crate::kinematics::{BoostScenario, MomentumGeometry};
use crate::measures::{
    m_concurrence_pure, single_qubit_purities, three_tangle, witness_hmgh, WitnessPath, WitnessVariant,
};
use crate::states::{ghz, ghz_alpha, w_state, MixedState, PartitionSpec, SPIN_DIM};
use crate::tensor::{ComplexMatrix, FactorShape, StateVector};
use crate::tol;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state of dimension `dim`.
pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    loop {
        let v = StateVector::new((0..dim).map(|_| gaussian_complex(rng)).collect()).expect("finite samples");
        if let Ok(n) = v.normalized() {
            return n;
        }
    }
}

/// Haar SU(2) element from a uniform unit quaternion, times a uniform phase.
fn haar_qubit_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let q: [f64; 4] = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            break q.map(|x| x / n);
        }
    };
    let phase = C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    // a0 I − i (a·σ)
    let m = ComplexMatrix::from_rows(&[
        vec![C64::new(q[0], -q[3]), C64::new(-q[2], -q[1])],
        vec![C64::new(q[2], -q[1]), C64::new(q[0], q[3])],
    ])
    .expect("2x2");
    m.scale(phase)
}

/// Haar unitary by Gram–Schmidt on a complex Ginibre matrix.
fn haar_unitary_gram_schmidt(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    'retry: loop {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v: Vec<C64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
            // two passes for numerical orthogonality
            for _ in 0..2 {
                for u in &cols {
                    let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (x, a) in v.iter_mut().zip(u) {
                        *x -= proj * a;
                    }
                }
            }
            let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-10 {
                continue 'retry;
            }
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        return m;
    }
}

pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    if dim == 2 {
        haar_qubit_unitary(rng)
    } else {
        haar_unitary_gram_schmidt(dim, rng)
    }
}

/// One Haar unitary per tensor factor.
#[derive(Clone, Debug)]
pub struct LocalUnitarySample {
    pub factors: Vec<ComplexMatrix>,
}

impl LocalUnitarySample {
    pub fn identity(shape: &FactorShape) -> Self {
        LocalUnitarySample {
            factors: shape.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    pub fn full(&self) -> ComplexMatrix {
        self.factors
            .iter()
            .skip(1)
            .fold(self.factors[0].clone(), |acc, f| acc.kron(f))
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.full().apply(state)
    }
}

pub fn random_local_unitary(shape: &FactorShape, seed: u64) -> LocalUnitarySample {
    let mut rng = rng_from_seed(seed);
    LocalUnitarySample {
        factors: shape.dims().iter().map(|&d| haar_unitary(d, &mut rng)).collect(),
    }
}

/// The three bipartitions `{i} | rest` of three qubits.
pub fn qubit_bipartitions() -> [PartitionSpec; 3] {
    std::array::from_fn(|i| PartitionSpec::one_vs_rest(i, 3).expect("static partition"))
}

fn random_product_across(bipartition: &PartitionSpec, rng: &mut impl Rng) -> Result<StateVector> {
    if bipartition.n_parts() != 2 || bipartition.n_factors() != 3 {
        return Err(Error::Input(format!(
            "expected a bipartition of 3 qubits, got {}",
            bipartition.label()
        )));
    }
    let parts = bipartition.parts();
    let a = random_pure_state(1 << parts[0].len(), rng);
    let b = random_pure_state(1 << parts[1].len(), rng);
    let bits_of = |idx: usize, part: &[usize]| part.iter().fold(0usize, |acc, &q| (acc << 1) | ((idx >> (2 - q)) & 1));
    let amps = (0..SPIN_DIM)
        .map(|i| a[bits_of(i, &parts[0])] * b[bits_of(i, &parts[1])])
        .collect();
    StateVector::new(amps)
}

/// Ensemble of `n_terms` random product states across `bipartition`, with
/// random convex weights.
pub fn sample_biseparable_ensemble(
    bipartition: &PartitionSpec,
    n_terms: usize,
    seed: u64,
) -> Result<Vec<(f64, StateVector)>> {
    biseparable_terms(n_terms, seed, |_| Ok(bipartition.clone()))
}

/// Like [`sample_biseparable_ensemble`] but each term picks its own
/// bipartition at random.
pub fn sample_biseparable_mixed_ensemble(n_terms: usize, seed: u64) -> Result<Vec<(f64, StateVector)>> {
    let parts = qubit_bipartitions();
    biseparable_terms(n_terms, seed, |rng| Ok(parts[rng.gen_range(0..3)].clone()))
}

fn biseparable_terms(
    n_terms: usize,
    seed: u64,
    mut pick: impl FnMut(&mut ChaCha8Rng) -> Result<PartitionSpec>,
) -> Result<Vec<(f64, StateVector)>> {
    if n_terms == 0 {
        return Err(Error::Input("n_terms must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let bp = pick(&mut rng)?;
        let w: f64 = rng.gen_range(0.05..1.0);
        terms.push((w, random_product_across(&bp, &mut rng)?));
    }
    let total: f64 = terms.iter().map(|(w, _)| w).sum();
    for (w, _) in &mut terms {
        *w /= total;
    }
    Ok(terms)
}

fn ensemble_density(terms: &[(f64, StateVector)]) -> ComplexMatrix {
    terms
        .iter()
        .map(|(w, v)| v.projector().scale_real(*w))
        .fold(ComplexMatrix::zeros(SPIN_DIM, SPIN_DIM), |a, b| &a + &b)
}

/// Convex mixture of random product states across a two-part partition of
/// the three spins.
pub fn sample_biseparable(bipartition: &PartitionSpec, n_terms: usize, seed: u64) -> Result<ComplexMatrix> {
    Ok(ensemble_density(&sample_biseparable_ensemble(
        bipartition,
        n_terms,
        seed,
    )?))
}

/// Mixture whose terms are biseparable across randomly chosen bipartitions.
pub fn sample_biseparable_mixed(n_terms: usize, seed: u64) -> Result<ComplexMatrix> {
    Ok(ensemble_density(&sample_biseparable_mixed_ensemble(n_terms, seed)?))
}

/// LU-invariant fingerprint of a pure state.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub tangle: Option<f64>,
    pub concurrences: Vec<f64>,
}

impl Invariants {
    pub fn of(state: &StateVector, shape: &FactorShape, partitions: &[PartitionSpec]) -> Result<Self> {
        let tangle = if shape.dims() == [2, 2, 2] {
            Some(three_tangle(state)?)
        } else {
            None
        };
        let concurrences = partitions
            .iter()
            .map(|p| m_concurrence_pure(state, shape, p))
            .collect::<Result<_>>()?;
        Ok(Invariants { tangle, concurrences })
    }

    pub fn max_deviation(&self, other: &Invariants) -> f64 {
        let t = match (self.tangle, other.tangle) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => 0.0,
        };
        self.concurrences
            .iter()
            .zip(&other.concurrences)
            .map(|(a, b)| (a - b).abs())
            .fold(t, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct Condition1Report {
    pub trials: usize,
    pub max_deviation: f64,
    /// Seeds of trials whose deviation exceeded the tolerance.
    pub failing_seeds: Vec<u64>,
    pub reference: Invariants,
}

impl Condition1Report {
    pub fn passed(&self) -> bool {
        self.failing_seeds.is_empty()
    }
}

/// Trial seed `k` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64)
}

/// Applies `trials` random local unitaries and compares every LU invariant
/// against the untouched state.
pub fn check_condition1(
    state: &StateVector,
    shape: &FactorShape,
    trials: usize,
    seed: u64,
) -> Result<Condition1Report> {
    if !state.is_normalized(tol::PHYS) {
        return Err(Error::Input("condition 1 check needs a normalised state".into()));
    }
    let partitions = PartitionSpec::all(shape.len());
    let reference = Invariants::of(state, shape, &partitions)?;
    let results: Vec<(u64, f64)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = trial_seed(seed, k);
            let lu = random_local_unitary(shape, s);
            let moved = lu.apply(state)?;
            let inv = Invariants::of(&moved, shape, &partitions)?;
            Ok((s, inv.max_deviation(&reference)))
        })
        .collect::<Result<_>>()?;
    let max_deviation = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let failing_seeds = results
        .iter()
        .filter(|r| r.1.is_nan() || r.1 > tol::PHYS)
        .map(|r| r.0)
        .collect();
    Ok(Condition1Report {
        trials,
        max_deviation,
        failing_seeds,
        reference,
    })
}

/// A spin state's class witness: a base pure state and the convex
/// decomposition of the boosted spin state into rotated copies.
#[derive(Clone, Debug)]
pub struct ClassCertificate {
    pub base: StateVector,
    pub ensemble: SpinEnsemble,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport {
    pub reconstruction_error: f64,
    pub max_lu_deviation: f64,
    pub weight_sum: f64,
}

impl CertificateReport {
    pub fn reconstruction_ok(&self) -> bool {
        self.reconstruction_error <= 1e-10 && (self.weight_sum - 1.0).abs() <= tol::PHYS
    }

    pub fn lu_equivalence_ok(&self) -> bool {
        self.max_lu_deviation <= tol::PHYS
    }

    pub fn passed(&self) -> bool {
        self.reconstruction_ok() && self.lu_equivalence_ok()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "reconstruction {:.3e} ({}), LU deviation {:.3e} ({}), weights sum {:.12}",
            self.reconstruction_error,
            if self.reconstruction_ok() { "ok" } else { "FAIL" },
            self.max_lu_deviation,
            if self.lu_equivalence_ok() { "ok" } else { "FAIL" },
            self.weight_sum
        )
    }
}

/// Pure state of a rank-one projector, read from its heaviest column.
fn vector_of_projector(p: &ComplexMatrix) -> Result<StateVector> {
    let k = (0..p.rows())
        .max_by(|&a, &b| p[(a, a)].re.total_cmp(&p[(b, b)].re))
        .expect("non-empty");
    p.column(k).normalized()
}

/// Three-tangle plus the purity of each single-qubit reduction. A 2×2 unit
/// trace spectrum is fixed by its purity, which unlike the eigenvalues stays
/// well conditioned at the degenerate point (½, ½).
fn lu_fingerprint(v: &StateVector) -> Result<Vec<f64>> {
    let mut out = vec![three_tangle(v)?];
    out.extend(single_qubit_purities(v)?);
    Ok(out)
}

/// Checks that the ensemble reconstructs `rho` and that every rotated term
/// is LU-equivalent to the base state.
pub fn verify_certificate(cert: &ClassCertificate, rho: &ComplexMatrix) -> Result<CertificateReport> {
    let reconstruction_error = cert.ensemble.density().distance(rho);
    let base = lu_fingerprint(&cert.base)?;
    let mut max_lu_deviation: f64 = 0.0;
    for term in cert.ensemble.terms() {
        let pure = term.unitary.apply(&vector_of_projector(&term.base)?)?;
        let fp = lu_fingerprint(&pure)?;
        let dev = fp.iter().zip(&base).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        max_lu_deviation = max_lu_deviation.max(dev);
    }
    Ok(CertificateReport {
        reconstruction_error,
        max_lu_deviation,
        weight_sum: cert.ensemble.total_weight(),
    })
}

/// Certificate of the boosted spin state of `(Σ α_i |Π_i⟩) ⊗ |φ⟩`.
pub fn certificate_for(
    mom_coeffs: &[C64; 6],
    spin: &StateVector,
    scenario: &BoostScenario,
) -> Result<(ClassCertificate, ComplexMatrix)> {
    let fast = boosted_spin_density_fast(mom_coeffs, spin, scenario)?;
    Ok((
        ClassCertificate {
            base: spin.clone(),
            ensemble: fast.ensemble,
        },
        fast.density,
    ))
}

/// Random normalised permutation coefficients.
pub fn random_coeffs(rng: &mut impl Rng) -> [C64; 6] {
    let v = random_pure_state(6, rng);
    std::array::from_fn(|i| v[i])
}

/// Random scenario: δ uniform on [0, π/2], random in-plane azimuths.
pub fn random_scenario(rng: &mut impl Rng) -> Result<BoostScenario> {
    let az: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..std::f64::consts::TAU));
    let geometry = MomentumGeometry::from_azimuths(az, rng.gen_range(0.1..0.99))?;
    BoostScenario::with_delta(rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2), geometry)
}

/// Outcome of one CLI property suite.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub max_deviation: f64,
    pub failures: Vec<String>,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, label: String, deviation: f64, ok: bool, seeds: &[u64]) {
        self.checks += 1;
        if deviation.is_finite() {
            self.max_deviation = self.max_deviation.max(deviation);
        }
        let status = if ok { "ok" } else { "FAIL" };
        self.lines
            .push(format!("{status:4} {label}: max deviation {deviation:.3e}"));
        if !ok {
            let seeds: Vec<String> = seeds.iter().map(u64::to_string).collect();
            self.failures.push(format!("{label} (seeds: {})", seeds.join(", ")));
        }
    }
}

/// LU invariance for GHZ, W, GHZ(α) on a grid and Haar-random states, plus
/// spin invariants under separable-momentum boosts.
pub fn run_condition1_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("condition1");
    let shape = FactorShape::qubits(3);
    let mut states: Vec<(String, StateVector)> = vec![("ghz".into(), ghz()), ("w".into(), w_state())];
    for k in 0..=8 {
        let alpha = std::f64::consts::PI * k as f64 / 8.0;
        states.push((format!("ghz_alpha({alpha:.4})"), ghz_alpha(alpha)));
    }
    let mut rng = rng_from_seed(seed);
    for k in 0..50 {
        states.push((format!("haar#{k}"), random_pure_state(8, &mut rng)));
    }
    for (i, (label, state)) in states.iter().enumerate() {
        let r = check_condition1(state, &shape, trials, trial_seed(seed, 1000 + i))?;
        report.record(
            format!("LU invariants of {label}"),
            r.max_deviation,
            r.passed(),
            &r.failing_seeds,
        );
    }

    // separable momentum: the boost is a local unitary on the spins
    let partitions = PartitionSpec::all(3);
    let mut rng = rng_from_seed(trial_seed(seed, 7));
    for k in 0..trials {
        let s = trial_seed(seed, 2000 + k);
        let mut trial_rng = rng_from_seed(s);
        let scenario = random_scenario(&mut trial_rng)?;
        let spin = random_pure_state(8, &mut rng);
        let perm = rng.gen_range(0..6);
        let mut coeffs = [C64::new(0.0, 0.0); 6];
        coeffs[perm] = C64::new(1.0, 0.0);
        let composite = permutation_composite(&coeffs, &spin)?;
        let boosted = boost_pure(&composite, &scenario).spin_density();
        let after = vector_of_projector(&boosted)?;
        let purity_dev = (crate::tensor::purity(&boosted)? - 1.0).abs();
        let before_inv = Invariants::of(&spin, &shape, &partitions)?;
        let after_inv = Invariants::of(&after, &shape, &partitions)?;
        let mut dev = before_inv.max_deviation(&after_inv).max(purity_dev);
        for (a, b) in single_qubit_purities(&spin)?.iter().zip(single_qubit_purities(&after)?) {
            dev = dev.max((a - b).abs());
        }
        if k + 1 == trials || dev > tol::PHYS {
            report.record(
                format!("separable-momentum boost trial {k}"),
                dev,
                dev <= tol::PHYS,
                &[s],
            );
        }
    }
    Ok(report)
}

/// Certificates of boosted `(momentum ⊗ pure spin)` states and of boosted
/// mixed ensembles.
pub fn run_condition2_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("condition2");
    let results: Vec<(u64, CertificateReport, CertificateReport)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = trial_seed(seed, k);
            let mut rng = rng_from_seed(s);
            let scenario = random_scenario(&mut rng)?;
            let coeffs = random_coeffs(&mut rng);
            let spin = random_pure_state(8, &mut rng);
            let (cert, rho) = certificate_for(&coeffs, &spin, &scenario)?;
            let fast = verify_certificate(&cert, &rho)?;

            // Two-member ensemble sharing one spin state; certificate from boost_mixed.
            let other = random_coeffs(&mut rng);
            let q: f64 = rng.gen_range(0.1..0.9);
            let mixed = MixedState::new(vec![
                (q, permutation_composite(&coeffs, &spin)?),
                (1.0 - q, permutation_composite(&other, &spin)?),
            ])?;
            let boosted = boost_mixed(&mixed, &scenario)?;
            let cert = ClassCertificate {
                base: spin.clone(),
                ensemble: boosted.certificate,
            };
            let mixed_report = verify_certificate(&cert, &boosted.spin)?;
            Ok((s, fast, mixed_report))
        })
        .collect::<Result<_>>()?;
    for (k, (s, fast, mixed)) in results.iter().enumerate() {
        let dev = fast.max_lu_deviation.max(mixed.max_lu_deviation);
        let recon = fast.reconstruction_error.max(mixed.reconstruction_error);
        let ok = fast.passed() && mixed.passed();
        report.record(
            format!("scenario {k}: reconstruction {recon:.3e}"),
            dev.max(recon),
            ok,
            &[*s],
        );
    }
    Ok(report)
}

/// Witness ≤ 0 on biseparable samples across each bipartition and across
/// mixtures of bipartitions.
pub fn run_soundness_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("soundness");
    let bps = qubit_bipartitions();
    let values: Vec<(u64, usize, f64)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = trial_seed(seed, k);
            let mut rng = rng_from_seed(s);
            let kind = k % 4;
            let n_terms = rng.gen_range(1..=4);
            let rho = if kind < 3 {
                sample_biseparable(&bps[kind], n_terms, rng.gen())?
            } else {
                sample_biseparable_mixed(n_terms, rng.gen())?
            };
            let w = witness_hmgh(&rho, WitnessPath::MatrixElements, WitnessVariant::Symmetric)?;
            Ok((s, kind, w.value))
        })
        .collect::<Result<_>>()?;
    let names = ["{0}|{1,2}", "{1}|{0,2}", "{2}|{0,1}", "mixed bipartitions"];
    for (kind, name) in names.iter().enumerate() {
        let of_kind: Vec<&(u64, usize, f64)> = values.iter().filter(|v| v.1 == kind).collect();
        if of_kind.is_empty() {
            continue;
        }
        let max = of_kind.iter().map(|v| v.2).fold(f64::NEG_INFINITY, f64::max);
        let bad: Vec<u64> = of_kind.iter().filter(|v| v.2 > tol::PHYS).map(|v| v.0).collect();
        report.checks += of_kind.len() - 1;
        report.record(
            format!("{} samples across {name}: max witness {max:.3e}", of_kind.len()),
            max.max(0.0),
            bad.is_empty(),
            &bad,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::antisymmetric_coeffs;
    use crate::tensor::is_density_matrix;

    #[test]
    fn local_unitaries_are_unitary_and_deterministic() {
        let shape = FactorShape::new(vec![3, 2, 3, 2, 3, 2]).unwrap();
        for seed in 0..100 {
            let s = random_local_unitary(&shape, seed);
            assert!(s.factors.iter().all(|u| u.unitarity_deviation() <= 1e-12));
        }
        let a = random_local_unitary(&shape, 42);
        let b = random_local_unitary(&shape, 42);
        for (x, y) in a.factors.iter().zip(&b.factors) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn haar_first_moment() {
        let mut rng = rng_from_seed(99);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| haar_unitary(2, &mut rng)[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
        let mean3: f64 = (0..n)
            .map(|_| haar_unitary(3, &mut rng)[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean3 - 1.0 / 3.0).abs() < 0.02, "mean {mean3}");
    }

    #[test]
    fn single_term_biseparable_is_pure_product() {
        let bp = PartitionSpec::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let rho = sample_biseparable(&bp, 1, 5).unwrap();
        assert!((crate::tensor::purity(&rho).unwrap() - 1.0).abs() < 1e-12);
        let w = witness_hmgh(&rho, WitnessPath::MatrixElements, WitnessVariant::Symmetric).unwrap();
        assert!(w.value <= 1e-9);
        let v = vector_of_projector(&rho).unwrap();
        assert!(m_concurrence_pure(&v, &FactorShape::qubits(3), &bp).unwrap() < 1e-7);
    }

    #[test]
    fn biseparable_samples_are_density_matrices() {
        for seed in 0..20 {
            let rho = sample_biseparable_mixed(3, seed).unwrap();
            assert!(is_density_matrix(&rho, 1e-9).valid);
        }
        let tri = PartitionSpec::singletons(3).unwrap();
        assert!(sample_biseparable(&tri, 2, 0).is_err());
        assert!(sample_biseparable_mixed(0, 0).is_err());
    }

    #[test]
    fn condition1_identity_trial_is_exact() {
        let shape = FactorShape::qubits(3);
        let parts = PartitionSpec::all(3);
        let id = LocalUnitarySample::identity(&shape);
        let moved = id.apply(&ghz()).unwrap();
        let a = Invariants::of(&ghz(), &shape, &parts).unwrap();
        let b = Invariants::of(&moved, &shape, &parts).unwrap();
        assert_eq!(a.max_deviation(&b), 0.0);
    }

    #[test]
    fn condition1_ghz_and_w() {
        let shape = FactorShape::qubits(3);
        let r = check_condition1(&ghz(), &shape, 100, 7).unwrap();
        assert!(r.passed(), "max dev {}", r.max_deviation);
        let r = check_condition1(&w_state(), &shape, 100, 7).unwrap();
        assert!(r.passed());
        assert!(r.reference.tangle.unwrap().abs() < 1e-12);
    }

    #[test]
    fn certificate_of_boosted_ghz_passes() {
        let s = BoostScenario::symmetric_with_delta(0.7).unwrap();
        let (cert, rho) = certificate_for(&antisymmetric_coeffs(), &ghz(), &s).unwrap();
        let r = verify_certificate(&cert, &rho).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn zero_delta_certificate_is_trivial() {
        let s = BoostScenario::symmetric_with_delta(0.0).unwrap();
        let (cert, rho) = certificate_for(&antisymmetric_coeffs(), &w_state(), &s).unwrap();
        for t in cert.ensemble.terms() {
            assert!(t.unitary.distance(&ComplexMatrix::identity(8)) < 1e-15);
        }
        assert!(verify_certificate(&cert, &rho).unwrap().passed());
    }

    #[test]
    fn tampered_weights_fail_reconstruction_only() {
        let s = BoostScenario::symmetric_with_delta(0.7).unwrap();
        let (cert, rho) = certificate_for(&antisymmetric_coeffs(), &ghz(), &s).unwrap();
        let mut terms = cert.ensemble.terms().to_vec();
        terms[0].weight *= 3.0;
        let total: f64 = terms.iter().map(|t| t.weight).sum();
        for t in &mut terms {
            t.weight /= total;
        }
        let tampered = ClassCertificate {
            base: cert.base.clone(),
            ensemble: SpinEnsemble::from_terms_unchecked(terms),
        };
        let r = verify_certificate(&tampered, &rho).unwrap();
        assert!(!r.reconstruction_ok());
        assert!(r.lu_equivalence_ok());
    }

    #[test]
    fn foreign_base_fails_lu_check() {
        let s = BoostScenario::symmetric_with_delta(0.4).unwrap();
        let (cert, rho) = certificate_for(&antisymmetric_coeffs(), &ghz(), &s).unwrap();
        let wrong = ClassCertificate {
            base: w_state(),
            ensemble: cert.ensemble,
        };
        let r = verify_certificate(&wrong, &rho).unwrap();
        assert!(r.reconstruction_ok());
        assert!(!r.lu_equivalence_ok());
    }

    #[test]
    fn small_suites_pass() {
        assert!(run_condition2_suite(5, 1).unwrap().passed());
        assert!(run_soundness_suite(40, 1).unwrap().passed());
    }
}
