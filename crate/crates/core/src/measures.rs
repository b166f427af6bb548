//! Entanglement quantifiers.
//!
//! The three-qubit GME witness compares the `|↑↑↑⟩⟨↓↓↓|` coherence with the
//! populations of the three complementary basis pairs:
//!
//! ```text
//! W(ρ) = 2|ρ_{↑↑↑,↓↓↓}| − 2 Σ_pairs √(ρ_{ii} ρ_{jj})
//! ```
//!
//! Positive values certify genuine multipartite entanglement and the value is
//! a lower bound on the GME concurrence, tight for `cos α|↓↓↓⟩ + sin α|↑↑↑⟩`.
//! It is evaluated along two independent routes: from local Pauli-string and
//! `P±` projector expectations (the nine measurement settings), and directly
//! from matrix elements.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::states::{spin_index, PartitionSpec, SPIN_DIM, SPIN_DOWN, SPIN_UP};
use crate::tensor::{pauli, reduced_pure, require_density, ComplexMatrix, FactorShape, StateVector};
use crate::tol;

/// Which evaluation route produced a [`WitnessReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessPath {
    PauliSettings,
    MatrixElements,
}

/// Which population product forms the third subtracted term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WitnessVariant {
    /// `√(⟨P₁⁻P₂⁺P₃⁺⟩⟨P₁⁻P₂⁺P₃⁺⟩)`, i.e. the same population twice. Not a
    /// valid witness on its own; kept for comparison.
    AsPrinted,
    /// `√(⟨P₁⁻P₂⁺P₃⁺⟩⟨P₁⁺P₂⁻P₃⁻⟩)`, completing the bit-complement pairing.
    #[default]
    Symmetric,
}

impl fmt::Display for WitnessVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessVariant::AsPrinted => "as-printed",
            WitnessVariant::Symmetric => "symmetric",
        })
    }
}

impl std::str::FromStr for WitnessVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" | "as_printed" => Ok(WitnessVariant::AsPrinted),
            "symmetric" => Ok(WitnessVariant::Symmetric),
            other => Err(Error::Input(format!("unknown witness variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    /// `offdiag_term − Σ population_terms`; positive ⇒ GME.
    pub value: f64,
    /// `2|ρ_{↑↑↑,↓↓↓}|`.
    pub offdiag_term: f64,
    /// `2√(ρ_ii ρ_jj)` for the three complementary pairs, in the order
    /// (↑↑↓,↓↓↑), (↑↓↑,↓↑↓), third pair per variant.
    pub population_terms: [f64; 3],
    /// `|2 Re c + 2 Im c|` with `c = ρ_{↑↑↑,↓↓↓}`: the sum of the two Pauli
    /// brackets taken before the modulus. Diagnostic only.
    pub printed_offdiag: f64,
    pub path: WitnessPath,
    pub variant: WitnessVariant,
}

impl WitnessReport {
    pub fn detects_gme(&self) -> bool {
        self.value > tol::PHYS
    }
}

fn clamped_sqrt(x: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x > -tol::RADICAND_NOISE {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!("negative radicand {x:.3e} in {what}")))
    }
}

/// Basis index pairs (a, b) of the three population products, per variant.
fn population_pairs(variant: WitnessVariant) -> [(usize, usize); 3] {
    let (u, d) = (SPIN_UP, SPIN_DOWN);
    let third = match variant {
        WitnessVariant::AsPrinted => (spin_index([d, u, u]), spin_index([d, u, u])),
        WitnessVariant::Symmetric => (spin_index([d, u, u]), spin_index([u, d, d])),
    };
    [
        (spin_index([u, u, d]), spin_index([d, d, u])),
        (spin_index([u, d, u]), spin_index([d, u, d])),
        third,
    ]
}

fn finish(a: f64, b: f64, pops: [(f64, f64); 3], path: WitnessPath, variant: WitnessVariant) -> Result<WitnessReport> {
    // a = 2 Re c, b = 2 Im c
    let offdiag_term = (a * a + b * b).sqrt();
    let mut population_terms = [0.0; 3];
    for (t, (p, q)) in population_terms.iter_mut().zip(pops) {
        *t = 2.0 * clamped_sqrt(p * q, "witness population product")?;
    }
    Ok(WitnessReport {
        value: offdiag_term - population_terms.iter().sum::<f64>(),
        offdiag_term,
        population_terms,
        printed_offdiag: (a + b).abs(),
        path,
        variant,
    })
}

fn pauli_string(ops: [&ComplexMatrix; 3]) -> ComplexMatrix {
    ops[0].kron(ops[1]).kron(ops[2])
}

fn projector_plus() -> ComplexMatrix {
    (&ComplexMatrix::identity(2) + &pauli::z()).scale_real(0.5)
}

fn projector_minus() -> ComplexMatrix {
    (&ComplexMatrix::identity(2) - &pauli::z()).scale_real(0.5)
}

fn witness_pauli(rho: &ComplexMatrix, variant: WitnessVariant) -> Result<WitnessReport> {
    let (x, y) = (pauli::x(), pauli::y());
    let ev = |ops: [&ComplexMatrix; 3]| -> Result<f64> { Ok(rho.expectation(&pauli_string(ops))?.re) };
    let a = 0.25 * (ev([&x, &x, &x])? - ev([&x, &y, &y])? - ev([&y, &x, &y])? - ev([&y, &y, &x])?);
    let b = 0.25 * (ev([&y, &y, &y])? - ev([&x, &x, &y])? - ev([&y, &x, &x])? - ev([&x, &y, &x])?);
    let (pp, pm) = (projector_plus(), projector_minus());
    let proj = |s: usize| -> &ComplexMatrix {
        if s == SPIN_UP {
            &pp
        } else {
            &pm
        }
    };
    let pop = |idx: usize| -> Result<f64> {
        let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
        ev([proj(bits[0]), proj(bits[1]), proj(bits[2])])
    };
    let mut pops = [(0.0, 0.0); 3];
    for (slot, (i, j)) in pops.iter_mut().zip(population_pairs(variant)) {
        *slot = (pop(i)?, pop(j)?);
    }
    finish(a, b, pops, WitnessPath::PauliSettings, variant)
}

fn witness_elements(rho: &ComplexMatrix, variant: WitnessVariant) -> Result<WitnessReport> {
    let c: C64 = rho[(spin_index([SPIN_UP; 3]), spin_index([SPIN_DOWN; 3]))];
    let mut pops = [(0.0, 0.0); 3];
    for (slot, (i, j)) in pops.iter_mut().zip(population_pairs(variant)) {
        *slot = (rho[(i, i)].re, rho[(j, j)].re);
    }
    finish(2.0 * c.re, 2.0 * c.im, pops, WitnessPath::MatrixElements, variant)
}

/// Evaluates the witness on a validated three-qubit density matrix.
pub fn witness_hmgh(rho: &ComplexMatrix, path: WitnessPath, variant: WitnessVariant) -> Result<WitnessReport> {
    if rho.rows() != SPIN_DIM || rho.cols() != SPIN_DIM {
        return Err(Error::Shape(format!(
            "witness needs an 8x8 matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    require_density(rho, "witness input")?;
    match path {
        WitnessPath::PauliSettings => witness_pauli(rho, variant),
        WitnessPath::MatrixElements => witness_elements(rho, variant),
    }
}

/// `max(0, W_symmetric(ρ))`: a lower bound on the GME concurrence.
pub fn gme_lower_bound(rho: &ComplexMatrix) -> Result<f64> {
    let w = witness_hmgh(rho, WitnessPath::MatrixElements, WitnessVariant::Symmetric)?;
    Ok(w.value.max(0.0))
}

/// Pure-state m-concurrence across a partition into `m` parts:
/// `2^(1−m/2) √((2^m − 2) − Σ_γ Tr ρ_γ²)` over proper non-empty part subsets.
pub fn m_concurrence_pure(state: &StateVector, shape: &FactorShape, partition: &PartitionSpec) -> Result<f64> {
    if partition.n_factors() != shape.len() {
        return Err(Error::Input(format!(
            "partition over {} factors used with {} factors",
            partition.n_factors(),
            shape.len()
        )));
    }
    if state.dim() != shape.total() {
        return Err(Error::Shape(format!(
            "state of dim {} does not match dims {:?}",
            state.dim(),
            shape.dims()
        )));
    }
    if !state.is_normalized(tol::PHYS) {
        return Err(Error::Input(format!(
            "m-concurrence needs a normalised state (norm² {})",
            state.norm_sqr()
        )));
    }
    let m = partition.n_parts();
    let full = (1usize << m) - 1;
    let mut purities = vec![f64::NAN; 1 << m];
    let mut sum = 0.0;
    for mask in 1..full {
        // Tr ρ_γ² = Tr ρ_{γᶜ}² for pure states
        let p = if !purities[full ^ mask].is_nan() {
            purities[full ^ mask]
        } else {
            let keep: Vec<usize> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| partition.parts()[i].iter().copied())
                .collect();
            let rho = reduced_pure(state, shape, &keep)?;
            rho.data().iter().map(|z| z.norm_sqr()).sum()
        };
        purities[mask] = p;
        sum += p;
    }
    let radicand = (full - 1) as f64 - sum;
    let prefactor = 2f64.powf(1.0 - m as f64 / 2.0);
    // The radicand of a product state is a difference of O(1) sums that
    // cancel exactly; rounding leaves |radicand| ~ 1e-15 whose square root
    // (~3e-8) would swamp the invariance tolerance. Treat the whole noise
    // band as zero.
    if radicand.abs() <= tol::RADICAND_NOISE {
        return Ok(0.0);
    }
    Ok(prefactor * clamped_sqrt(radicand, "m-concurrence")?)
}

/// Three-tangle `4|d₁ − 2d₂ + 4d₃|` from Cayley's hyperdeterminant.
pub fn three_tangle(state: &StateVector) -> Result<f64> {
    if state.dim() != SPIN_DIM {
        return Err(Error::Shape(format!(
            "three-tangle needs 8 amplitudes, got {}",
            state.dim()
        )));
    }
    if !state.is_normalized(tol::PHYS) {
        return Err(Error::Input(format!(
            "three-tangle needs a normalised state (norm² {})",
            state.norm_sqr()
        )));
    }
    let a = |i: usize, j: usize, k: usize| state[i * 4 + j * 2 + k];
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    Ok(4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm())
}

/// Descending spectra of the three single-qubit reductions.
pub fn single_qubit_spectra(state: &StateVector) -> Result<[[f64; 2]; 3]> {
    let shape = FactorShape::qubits(3);
    let mut out = [[0.0; 2]; 3];
    for (q, slot) in out.iter_mut().enumerate() {
        let r = reduced_pure(state, &shape, &[q])?;
        // closed form for a 2×2 Hermitian matrix
        let tr = r[(0, 0)].re + r[(1, 1)].re;
        let det = r[(0, 0)].re * r[(1, 1)].re - r[(0, 1)].norm_sqr();
        let disc = clamped_sqrt(tr * tr / 4.0 - det, "qubit spectrum")?;
        *slot = [tr / 2.0 + disc, tr / 2.0 - disc];
    }
    Ok(out)
}

/// `Tr ρ_q²` of the three single-qubit reductions.
pub fn single_qubit_purities(state: &StateVector) -> Result<[f64; 3]> {
    let shape = FactorShape::qubits(3);
    let mut out = [0.0; 3];
    for (q, slot) in out.iter_mut().enumerate() {
        let r = reduced_pure(state, &shape, &[q])?;
        *slot = r.data().iter().map(|z| z.norm_sqr()).sum();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz, ghz_alpha, w_state};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn both(rho: &ComplexMatrix, variant: WitnessVariant) -> (WitnessReport, WitnessReport) {
        (
            witness_hmgh(rho, WitnessPath::PauliSettings, variant).unwrap(),
            witness_hmgh(rho, WitnessPath::MatrixElements, variant).unwrap(),
        )
    }

    #[test]
    fn ghz_violates_maximally() {
        for variant in [WitnessVariant::Symmetric, WitnessVariant::AsPrinted] {
            let (p, e) = both(&ghz().projector(), variant);
            assert!((p.value - 1.0).abs() < 1e-12);
            assert!((e.value - 1.0).abs() < 1e-12);
            assert!(p.detects_gme());
        }
        assert!((gme_lower_bound(&ghz().projector()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_alpha_gives_abs_sin_two_alpha() {
        for k in 0..=60 {
            let alpha = PI * k as f64 / 60.0;
            let (p, e) = both(&ghz_alpha(alpha).projector(), WitnessVariant::Symmetric);
            let expected = (2.0 * alpha).sin().abs();
            assert!((p.value - expected).abs() < 1e-12, "alpha {alpha}");
            assert!((e.value - expected).abs() < 1e-12, "alpha {alpha}");
        }
        let peak = witness_hmgh(
            &ghz_alpha(3.0 * FRAC_PI_4).projector(),
            WitnessPath::MatrixElements,
            WitnessVariant::Symmetric,
        )
        .unwrap();
        assert!((peak.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_and_w_give_zero() {
        let down = StateVector::basis(8, 7).projector();
        assert_eq!(both(&down, WitnessVariant::Symmetric).1.value, 0.0);
        let (p, e) = both(&w_state().projector(), WitnessVariant::Symmetric);
        assert!(p.value.abs() < 1e-12 && e.value.abs() < 1e-12);
        assert!(!e.detects_gme());
        assert_eq!(gme_lower_bound(&down).unwrap(), 0.0);
    }

    #[test]
    fn biseparable_plus_bell_is_not_detected() {
        // |+⟩ ⊗ (|00⟩ + e^{iπ/4}|11⟩)/√2 makes |2Re c + 2Im c| exceed 2|c|.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::from_reals(&[s, s]).unwrap();
        let ph = C64::from_polar(1.0, -FRAC_PI_4);
        let bell = StateVector::new(vec![C64::new(s, 0.0), C64::default(), C64::default(), ph * s]).unwrap();
        let rho = plus.kron(&bell).projector();
        let r = witness_hmgh(&rho, WitnessPath::MatrixElements, WitnessVariant::Symmetric).unwrap();
        assert!(r.value <= 1e-12, "value {}", r.value);
        assert!(r.printed_offdiag > r.offdiag_term);
    }

    #[test]
    fn witness_rejects_invalid_input() {
        assert!(matches!(
            witness_hmgh(
                &ComplexMatrix::identity(8),
                WitnessPath::MatrixElements,
                WitnessVariant::Symmetric
            ),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            witness_hmgh(
                &ComplexMatrix::identity(4),
                WitnessPath::MatrixElements,
                WitnessVariant::Symmetric
            ),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn m_concurrence_closed_forms() {
        let shape = FactorShape::qubits(3);
        let tri = PartitionSpec::singletons(3).unwrap();
        let bi = PartitionSpec::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        assert!((m_concurrence_pure(&ghz(), &shape, &tri).unwrap() - 1.5f64.sqrt()).abs() < 1e-12);
        assert!((m_concurrence_pure(&ghz(), &shape, &bi).unwrap() - 1.0).abs() < 1e-12);
        assert!((m_concurrence_pure(&w_state(), &shape, &tri).unwrap() - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);
        let prod = StateVector::basis(8, 3);
        assert!(m_concurrence_pure(&prod, &shape, &tri).unwrap().abs() < 1e-9);
        let wrong = PartitionSpec::singletons(4).unwrap();
        assert!(m_concurrence_pure(&ghz(), &shape, &wrong).is_err());
    }

    #[test]
    fn three_tangle_closed_forms() {
        assert!((three_tangle(&ghz()).unwrap() - 1.0).abs() < 1e-12);
        assert!(three_tangle(&w_state()).unwrap().abs() < 1e-12);
        assert!(three_tangle(&StateVector::basis(8, 5)).unwrap().abs() < 1e-15);
        let a = 0.3f64;
        assert!((three_tangle(&ghz_alpha(a)).unwrap() - (2.0 * a).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn spectra_of_ghz_and_w() {
        for s in single_qubit_spectra(&ghz()).unwrap() {
            assert!((s[0] - 0.5).abs() < 1e-12 && (s[1] - 0.5).abs() < 1e-12);
        }
        for s in single_qubit_spectra(&w_state()).unwrap() {
            assert!((s[0] - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn clamped_sqrt_behaviour() {
        assert_eq!(clamped_sqrt(-1e-14, "t").unwrap(), 0.0);
        assert!(matches!(clamped_sqrt(-1e-6, "t"), Err(Error::Numeric(_))));
    }
}
