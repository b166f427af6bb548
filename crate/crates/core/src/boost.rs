//! Lorentz boosts of composite states.
//!
//! Three routes are provided:
//!
//! * the full 216×216 unitary `⊗_particles Σ_p |p⟩⟨p| ⊗ U(p, δ)` applied to
//!   the composite vector (used as the brute-force reference),
//! * the six-term permutation mixture for `(Σ_i α_i |Π_i⟩) ⊗ |φ⟩` inputs,
//! * the ensemble transformation for arbitrary mixtures, which also returns
//!   the `(weight, U_local, σ)` decomposition of the boosted spin state.
//!
//! Boosted sharp momenta are identified with their original labels; only
//! their orthogonality matters for anything computed here.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::kinematics::{local_unitary, BoostScenario, MomentumLabel};
use crate::states::{
    compose, composite_shape, permutation_momentum, CompositeState, MixedState, PERMUTATIONS, SPIN_DIM, SPIN_FACTORS,
};
use crate::tensor::{partial_trace, ComplexMatrix, StateVector};
use crate::tol;

/// Full unitary representation of the boost on the composite space.
#[derive(Clone, Debug)]
pub struct BoostUnitary {
    matrix: ComplexMatrix,
    scenario: BoostScenario,
}

impl BoostUnitary {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn scenario(&self) -> &BoostScenario {
        &self.scenario
    }

    pub fn apply(&self, state: &CompositeState) -> CompositeState {
        let out = self.matrix.apply(state.vector()).expect("216-dim operands");
        CompositeState::new(out).expect("unitary evolution preserves the norm")
    }
}

/// Momentum-controlled spin rotation of one particle, `Σ_p |p⟩⟨p| ⊗ U(p, δ)`
/// on its (mom, spin) = 3×2 factor pair.
fn particle_operator(scenario: &BoostScenario) -> ComplexMatrix {
    let mut op = ComplexMatrix::zeros(6, 6);
    for label in MomentumLabel::ALL {
        let u = scenario.rotation(label);
        let base = label.index() * 2;
        for i in 0..2 {
            for j in 0..2 {
                op[(base + i, base + j)] = u[(i, j)];
            }
        }
    }
    op
}

pub fn build_boost_unitary(scenario: &BoostScenario) -> BoostUnitary {
    let w = particle_operator(scenario);
    BoostUnitary {
        matrix: w.kron(&w).kron(&w),
        scenario: scenario.clone(),
    }
}

pub fn boost_pure(state: &CompositeState, scenario: &BoostScenario) -> CompositeState {
    build_boost_unitary(scenario).apply(state)
}

/// Brute-force boosted spin density: full unitary, then `Tr_mom` of the
/// 216×216 projector.
pub fn boosted_spin_density_brute(state: &CompositeState, scenario: &BoostScenario) -> ComplexMatrix {
    let boosted = boost_pure(state, scenario);
    partial_trace(&boosted.vector().projector(), &composite_shape(), &SPIN_FACTORS).expect("static composite shape")
}

/// One term `w · U σ U†` of a spin ensemble.
#[derive(Clone, Debug)]
pub struct EnsembleTerm {
    pub weight: f64,
    /// Product of three 2×2 spin rotations.
    pub unitary: ComplexMatrix,
    /// Pre-boost pure-state projector.
    pub base: ComplexMatrix,
}

impl EnsembleTerm {
    pub fn rotated(&self) -> ComplexMatrix {
        self.base.conjugate_by(&self.unitary).expect("8x8 operands")
    }
}

/// Convex decomposition `Σ w U σ U†` of a boosted spin state.
#[derive(Clone, Debug)]
pub struct SpinEnsemble {
    terms: Vec<EnsembleTerm>,
}

impl SpinEnsemble {
    pub fn new(terms: Vec<EnsembleTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Input("spin ensemble needs at least one term".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if !(t.weight > 0.0 && t.weight.is_finite()) {
                return Err(Error::Input(format!("term {i} has weight {}", t.weight)));
            }
            let dims = [t.unitary.rows(), t.unitary.cols(), t.base.rows(), t.base.cols()];
            if dims != [SPIN_DIM; 4] {
                return Err(Error::Shape(format!("term {i} has operand dims {dims:?}")));
            }
        }
        Ok(SpinEnsemble { terms })
    }

    /// Builds without validation; used to construct deliberately tampered
    /// certificates in tests.
    pub fn from_terms_unchecked(terms: Vec<EnsembleTerm>) -> Self {
        SpinEnsemble { terms }
    }

    pub fn terms(&self) -> &[EnsembleTerm] {
        &self.terms
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.weight).collect()
    }

    /// `Σ w U σ U†`.
    pub fn density(&self) -> ComplexMatrix {
        self.terms
            .iter()
            .map(|t| t.rotated().scale_real(t.weight))
            .fold(ComplexMatrix::zeros(SPIN_DIM, SPIN_DIM), |a, b| &a + &b)
    }
}

/// Result of the permutation fast path.
#[derive(Clone, Debug)]
pub struct FastBoost {
    pub density: ComplexMatrix,
    pub ensemble: SpinEnsemble,
}

/// Boosted spin state of `(Σ_i α_i |Π_i(p_A p_B p_C)⟩) ⊗ |φ⟩` as the
/// mixture `Σ_i |α_i|² U_i |φ⟩⟨φ| U_i†`, where particle `j` is rotated about
/// the axis of the momentum that `Π_i` puts in slot `j`.
pub fn boosted_spin_density_fast(
    mom_coeffs: &[C64; 6],
    spin: &StateVector,
    scenario: &BoostScenario,
) -> Result<FastBoost> {
    let n: f64 = mom_coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (n - 1.0).abs() > tol::PHYS {
        return Err(Error::Input(format!(
            "momentum coefficients have squared norm {n}, expected 1"
        )));
    }
    if spin.dim() != SPIN_DIM || !spin.is_normalized(tol::PHYS) {
        return Err(Error::Input(format!(
            "spin state must be a normalised 8-dim vector (dim {}, norm² {})",
            spin.dim(),
            spin.norm_sqr()
        )));
    }
    let base = spin.projector();
    let mut terms = Vec::with_capacity(6);
    for (perm, c) in PERMUTATIONS.iter().zip(mom_coeffs) {
        let weight = c.norm_sqr();
        if weight == 0.0 {
            continue;
        }
        terms.push(EnsembleTerm {
            weight,
            unitary: local_unitary(perm, scenario)?,
            base: base.clone(),
        });
    }
    let ensemble = SpinEnsemble::new(terms)?;
    Ok(FastBoost {
        density: ensemble.density(),
        ensemble,
    })
}

/// Result of boosting a mixed ensemble.
#[derive(Clone, Debug)]
pub struct MixedBoost {
    pub full: MixedState,
    pub spin: ComplexMatrix,
    pub certificate: SpinEnsemble,
}

/// Components below this squared norm carry no weight in the certificate.
const NEGLIGIBLE_WEIGHT: f64 = 1e-30;

/// Spin decomposition of one composite member in the sharp-momentum basis:
/// `|Ψ⟩ = Σ_m |m⟩ ⊗ |φ_m⟩`, giving terms `(‖φ_m‖², U_local(m), φ̂_m φ̂_m†)`.
fn member_terms(weight: f64, state: &CompositeState, scenario: &BoostScenario) -> Result<Vec<EnsembleTerm>> {
    let mut terms = Vec::new();
    for m1 in 0..3 {
        for m2 in 0..3 {
            for m3 in 0..3 {
                let phi = state.spin_component([m1, m2, m3]);
                let w = phi.norm_sqr();
                if w <= NEGLIGIBLE_WEIGHT {
                    continue;
                }
                let labels = [
                    MomentumLabel::from_index(m1)?,
                    MomentumLabel::from_index(m2)?,
                    MomentumLabel::from_index(m3)?,
                ];
                terms.push(EnsembleTerm {
                    weight: weight * w,
                    unitary: local_unitary(&labels, scenario)?,
                    base: phi.normalized()?.projector(),
                });
            }
        }
    }
    Ok(terms)
}

pub fn boost_mixed(state: &MixedState, scenario: &BoostScenario) -> Result<MixedBoost> {
    let unitary = build_boost_unitary(scenario);
    let mut members = Vec::with_capacity(state.members().len());
    let mut spin = ComplexMatrix::zeros(SPIN_DIM, SPIN_DIM);
    let mut terms = Vec::new();
    for (q, member) in state.members() {
        let boosted = unitary.apply(member);
        spin = &spin + &boosted.spin_density().scale_real(*q);
        terms.extend(member_terms(*q, member, scenario)?);
        members.push((*q, boosted));
    }
    Ok(MixedBoost {
        full: MixedState::new(members)?,
        spin,
        certificate: SpinEnsemble::new(terms)?,
    })
}

/// Composite state `(Σ_i α_i |Π_i⟩) ⊗ |φ⟩`.
pub fn permutation_composite(mom_coeffs: &[C64; 6], spin: &StateVector) -> Result<CompositeState> {
    compose(&permutation_momentum(mom_coeffs)?, spin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{antisymmetric_coeffs, ghz, product_coeffs};
    use crate::tensor::{is_density_matrix, purity};

    #[test]
    fn zero_delta_is_identity() {
        let s = BoostScenario::symmetric_with_delta(0.0).unwrap();
        let u = build_boost_unitary(&s);
        assert!(u.matrix().distance(&ComplexMatrix::identity(216)) < 1e-14);
        let c = permutation_composite(&antisymmetric_coeffs(), &ghz()).unwrap();
        assert!(boost_pure(&c, &s).vector().distance(c.vector()) < 1e-14);
    }

    #[test]
    fn boost_unitary_is_unitary() {
        for delta in [0.1, 0.7, 1.3, std::f64::consts::FRAC_PI_2] {
            let s = BoostScenario::symmetric_with_delta(delta).unwrap();
            assert!(build_boost_unitary(&s).matrix().unitarity_deviation() <= 1e-10);
        }
    }

    #[test]
    fn product_momentum_keeps_spin_pure() {
        let s = BoostScenario::symmetric_with_delta(0.9).unwrap();
        let c = permutation_composite(&product_coeffs(), &ghz()).unwrap();
        let rho = boost_pure(&c, &s).spin_density();
        assert!((purity(&rho).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn antisymmetric_momentum_mixes_spin() {
        let s = BoostScenario::symmetric_with_delta(0.5).unwrap();
        let c = permutation_composite(&antisymmetric_coeffs(), &ghz()).unwrap();
        let boosted = boost_pure(&c, &s);
        assert!((boosted.vector().norm_sqr() - 1.0).abs() < 1e-12);
        assert!(purity(&boosted.spin_density()).unwrap() < 1.0 - 1e-6);
    }

    #[test]
    fn fast_path_zero_delta_returns_input_projector() {
        let s = BoostScenario::symmetric_with_delta(0.0).unwrap();
        let fast = boosted_spin_density_fast(&antisymmetric_coeffs(), &ghz(), &s).unwrap();
        assert!(fast.density.distance(&ghz().projector()) < 1e-14);
        for (w, c) in fast.ensemble.weights().iter().zip(antisymmetric_coeffs()) {
            assert!((w - c.norm_sqr()).abs() < 1e-15);
        }
        assert!(is_density_matrix(&fast.density, 1e-9).valid);
    }

    #[test]
    fn fast_path_rejects_bad_input() {
        let s = BoostScenario::symmetric_with_delta(0.3).unwrap();
        let bad = [C64::new(1.0, 0.0); 6];
        assert!(boosted_spin_density_fast(&bad, &ghz(), &s).is_err());
        let short = StateVector::basis(4, 0);
        assert!(boosted_spin_density_fast(&product_coeffs(), &short, &s).is_err());
    }

    #[test]
    fn single_member_mixed_matches_pure() {
        let s = BoostScenario::symmetric_with_delta(0.6).unwrap();
        let c = permutation_composite(&antisymmetric_coeffs(), &ghz()).unwrap();
        let mixed = boost_mixed(&MixedState::pure(c.clone()), &s).unwrap();
        let pure = boost_pure(&c, &s);
        assert!(mixed.full.members()[0].1.vector().distance(pure.vector()) < 1e-14);
        assert!(mixed.spin.distance(&pure.spin_density()) < 1e-12);
        assert!((mixed.certificate.total_weight() - 1.0).abs() < 1e-9);
        assert!(mixed.certificate.density().distance(&mixed.spin) <= 1e-10);
    }
}
