//! Momentum, spin and composite states of three particles.
//!
//! Spin basis per particle: index 0 = |↑⟩ (σ_z = +1), index 1 = |↓⟩.
//! Momentum basis per particle: index 0, 1, 2 = p_A, p_B, p_C.
//!
//! The composite space interleaves the factors per particle as
//! `(mom₁, spin₁, mom₂, spin₂, mom₃, spin₃)` with dims `(3,2,3,2,3,2)`,
//! big-endian with `mom₁` most significant.

mod file;

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

pub use file::{read_state, write_spin_matrix, write_state, StoredState};

use crate::error::{Error, Result};
use crate::kinematics::MomentumLabel;
use crate::tensor::{partial_trace, reduced_pure, ComplexMatrix, FactorShape, StateVector};
use crate::tol;

pub const SPIN_UP: usize = 0;
pub const SPIN_DOWN: usize = 1;

/// Factor dims of the composite space.
pub const COMPOSITE_DIMS: [usize; 6] = [3, 2, 3, 2, 3, 2];
pub const COMPOSITE_DIM: usize = 216;
pub const MOMENTUM_DIM: usize = 27;
pub const SPIN_DIM: usize = 8;

/// Momentum factors of the composite space.
pub const MOMENTUM_FACTORS: [usize; 3] = [0, 2, 4];
/// Spin factors of the composite space.
pub const SPIN_FACTORS: [usize; 3] = [1, 3, 5];

/// The six orderings of (p_A, p_B, p_C), alternating even and odd parity
/// so that the `i`-th has sign `(−1)^i`.
pub const PERMUTATIONS: [[MomentumLabel; 3]; 6] = {
    use MomentumLabel::{A, B, C};
    [[A, B, C], [A, C, B], [B, C, A], [B, A, C], [C, A, B], [C, B, A]]
};

pub fn composite_shape() -> FactorShape {
    FactorShape::new(COMPOSITE_DIMS.to_vec()).expect("static dims are valid")
}

/// Index of `|m₁ s₁ m₂ s₂ m₃ s₃⟩` in the composite space.
pub fn composite_index(mom: [usize; 3], spin: [usize; 3]) -> usize {
    ((((mom[0] * 2 + spin[0]) * 3 + mom[1]) * 2 + spin[1]) * 3 + mom[2]) * 2 + spin[2]
}

/// Index of `|m₁ m₂ m₃⟩` in the 27-dim momentum space.
pub fn momentum_index(mom: [usize; 3]) -> usize {
    (mom[0] * 3 + mom[1]) * 3 + mom[2]
}

/// Index of `|s₁ s₂ s₃⟩` in the 8-dim spin space.
pub fn spin_index(spin: [usize; 3]) -> usize {
    (spin[0] * 2 + spin[1]) * 2 + spin[2]
}

/// `cos α |↓↓↓⟩ + sin α |↑↑↑⟩`.
pub fn ghz_alpha(alpha: f64) -> StateVector {
    let mut amps = vec![C64::new(0.0, 0.0); SPIN_DIM];
    amps[spin_index([SPIN_DOWN; 3])] = C64::new(alpha.cos(), 0.0);
    amps[spin_index([SPIN_UP; 3])] = C64::new(alpha.sin(), 0.0);
    StateVector::new(amps).expect("finite amplitudes")
}

/// `(|↓↓↓⟩ + |↑↑↑⟩)/√2`.
pub fn ghz() -> StateVector {
    let mut amps = vec![C64::new(0.0, 0.0); SPIN_DIM];
    amps[spin_index([SPIN_DOWN; 3])] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[spin_index([SPIN_UP; 3])] = C64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(amps).expect("finite amplitudes")
}

/// `(|↓↓↑⟩ + |↓↑↓⟩ + |↑↓↓⟩)/√3`.
pub fn w_state() -> StateVector {
    let a = C64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut amps = vec![C64::new(0.0, 0.0); SPIN_DIM];
    amps[spin_index([SPIN_DOWN, SPIN_DOWN, SPIN_UP])] = a;
    amps[spin_index([SPIN_DOWN, SPIN_UP, SPIN_DOWN])] = a;
    amps[spin_index([SPIN_UP, SPIN_DOWN, SPIN_DOWN])] = a;
    StateVector::new(amps).expect("finite amplitudes")
}

/// Coefficients `(−1)^i/√6` of the totally antisymmetric momentum state.
pub fn antisymmetric_coeffs() -> [C64; 6] {
    let a = 1.0 / 6f64.sqrt();
    std::array::from_fn(|i| C64::new(if i % 2 == 0 { a } else { -a }, 0.0))
}

/// Coefficients selecting the single ket `|p_A p_B p_C⟩`.
pub fn product_coeffs() -> [C64; 6] {
    let mut c = [C64::new(0.0, 0.0); 6];
    c[0] = C64::new(1.0, 0.0);
    c
}

pub fn permutation_ket_index(perm: &[MomentumLabel; 3]) -> usize {
    momentum_index(perm.map(MomentumLabel::index))
}

/// `Σ_i α_i |Π_i(p_A p_B p_C)⟩` in the 27-dim momentum space.
pub fn permutation_momentum(coeffs: &[C64; 6]) -> Result<StateVector> {
    let n: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (n - 1.0).abs() > tol::PHYS {
        return Err(Error::Input(format!(
            "permutation coefficients have squared norm {n}, expected 1"
        )));
    }
    let mut amps = vec![C64::new(0.0, 0.0); MOMENTUM_DIM];
    for (perm, c) in PERMUTATIONS.iter().zip(coeffs) {
        amps[permutation_ket_index(perm)] = *c;
    }
    StateVector::new(amps)
}

/// Normalised pure state on the interleaved (3,2,3,2,3,2) space.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeState {
    vector: StateVector,
}

impl CompositeState {
    pub fn new(vector: StateVector) -> Result<Self> {
        if vector.dim() != COMPOSITE_DIM {
            return Err(Error::Shape(format!(
                "composite state needs {COMPOSITE_DIM} amplitudes, got {}",
                vector.dim()
            )));
        }
        if !vector.is_normalized(tol::PHYS) {
            return Err(Error::Input(format!(
                "composite state has squared norm {}, expected 1",
                vector.norm_sqr()
            )));
        }
        Ok(CompositeState { vector })
    }

    pub fn vector(&self) -> &StateVector {
        &self.vector
    }

    pub fn into_vector(self) -> StateVector {
        self.vector
    }

    pub fn shape() -> FactorShape {
        composite_shape()
    }

    /// Spin component `⟨m₁m₂m₃|Ψ⟩` as an (unnormalised) 8-dim vector.
    pub fn spin_component(&self, mom: [usize; 3]) -> StateVector {
        let amps = (0..SPIN_DIM)
            .map(|s| {
                let bits = [(s >> 2) & 1, (s >> 1) & 1, s & 1];
                self.vector[composite_index(mom, bits)]
            })
            .collect();
        StateVector::new(amps).expect("finite amplitudes")
    }

    /// Reduced spin density matrix `Tr_mom |Ψ⟩⟨Ψ|`.
    pub fn spin_density(&self) -> ComplexMatrix {
        reduced_pure(&self.vector, &composite_shape(), &SPIN_FACTORS).expect("static shape")
    }

    /// Same reduction routed through the full 216×216 projector.
    pub fn spin_density_via_projector(&self) -> ComplexMatrix {
        partial_trace(&self.vector.projector(), &composite_shape(), &SPIN_FACTORS).expect("static shape")
    }
}

/// `|ψ_mom⟩ ⊗ |φ_spin⟩`, re-interleaved into composite factor order.
pub fn compose(mom: &StateVector, spin: &StateVector) -> Result<CompositeState> {
    if mom.dim() != MOMENTUM_DIM || spin.dim() != SPIN_DIM {
        return Err(Error::Shape(format!(
            "compose expects dims ({MOMENTUM_DIM}, {SPIN_DIM}), got ({}, {})",
            mom.dim(),
            spin.dim()
        )));
    }
    let mut amps = vec![C64::new(0.0, 0.0); COMPOSITE_DIM];
    for m in 0..MOMENTUM_DIM {
        let md = [m / 9, (m / 3) % 3, m % 3];
        for s in 0..SPIN_DIM {
            let sd = [(s >> 2) & 1, (s >> 1) & 1, s & 1];
            amps[composite_index(md, sd)] = mom[m] * spin[s];
        }
    }
    CompositeState::new(StateVector::new(amps)?)
}

/// Weighted ensemble `Σ q_i |Ψ_i⟩⟨Ψ_i|` of composite pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedState {
    ensemble: Vec<(f64, CompositeState)>,
}

impl MixedState {
    pub fn new(ensemble: Vec<(f64, CompositeState)>) -> Result<Self> {
        if ensemble.is_empty() {
            return Err(Error::Input("ensemble must have at least one member".into()));
        }
        if let Some((i, (w, _))) = ensemble
            .iter()
            .enumerate()
            .find(|(_, (w, _))| !(w.is_finite() && *w > 0.0))
        {
            return Err(Error::Input(format!("ensemble[{i}].weight = {w} must be > 0")));
        }
        let total: f64 = ensemble.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tol::PHYS {
            return Err(Error::Input(format!("ensemble weights sum to {total}, expected 1")));
        }
        Ok(MixedState { ensemble })
    }

    pub fn pure(state: CompositeState) -> Self {
        MixedState {
            ensemble: vec![(1.0, state)],
        }
    }

    pub fn members(&self) -> &[(f64, CompositeState)] {
        &self.ensemble
    }

    pub fn spin_density(&self) -> ComplexMatrix {
        self.ensemble
            .iter()
            .map(|(w, s)| s.spin_density().scale_real(*w))
            .reduce(|a, b| &a + &b)
            .expect("non-empty ensemble")
    }
}

/// Grouping of tensor factors into disjoint, covering, non-empty parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionSpec {
    parts: Vec<Vec<usize>>,
    n_factors: usize,
}

impl PartitionSpec {
    pub fn new(parts: Vec<Vec<usize>>, n_factors: usize) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Input(format!(
                "a partition needs at least 2 parts, got {}",
                parts.len()
            )));
        }
        let mut seen = vec![false; n_factors];
        let mut parts = parts;
        for part in &mut parts {
            if part.is_empty() {
                return Err(Error::Input("partition has an empty part".into()));
            }
            part.sort_unstable();
            for &f in part.iter() {
                if f >= n_factors {
                    return Err(Error::Input(format!("factor {f} out of range for {n_factors} factors")));
                }
                if seen[f] {
                    return Err(Error::Input(format!("factor {f} appears in two parts")));
                }
                seen[f] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Input(format!("factor {missing} is not covered")));
        }
        Ok(PartitionSpec { parts, n_factors })
    }

    /// Every factor in its own part.
    pub fn singletons(n_factors: usize) -> Result<Self> {
        Self::new((0..n_factors).map(|f| vec![f]).collect(), n_factors)
    }

    /// `{m₁s₁} | {m₂s₂} | {m₃s₃}` of the composite space.
    pub fn particles() -> Self {
        Self::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]], 6).expect("static partition")
    }

    /// `{s₁s₂s₃} | {m₁m₂m₃}` of the composite space.
    pub fn spins_vs_momenta() -> Self {
        Self::new(vec![SPIN_FACTORS.to_vec(), MOMENTUM_FACTORS.to_vec()], 6).expect("static partition")
    }

    /// One factor against all the others.
    pub fn one_vs_rest(factor: usize, n_factors: usize) -> Result<Self> {
        let rest = (0..n_factors).filter(|&f| f != factor).collect();
        Self::new(vec![vec![factor], rest], n_factors)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn n_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    /// Factor sets in brace notation, e.g. `{0,1}|{2,3}|{4,5}`.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| {
                let inner: Vec<String> = p.iter().map(usize::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// All set partitions of `n_factors` factors with at least two parts.
    pub fn all(n_factors: usize) -> Vec<PartitionSpec> {
        fn grow(f: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if f == n {
                out.push(current.clone());
                return;
            }
            for i in 0..current.len() {
                current[i].push(f);
                grow(f + 1, n, current, out);
                current[i].pop();
            }
            current.push(vec![f]);
            grow(f + 1, n, current, out);
            current.pop();
        }
        let mut raw = Vec::new();
        grow(0, n_factors, &mut Vec::new(), &mut raw);
        raw.into_iter()
            .filter(|p| p.len() >= 2)
            .map(|p| PartitionSpec::new(p, n_factors).expect("generated partitions are valid"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
        StateVector::new(
            (0..dim)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
        .normalized()
        .unwrap()
    }

    #[test]
    fn ghz_alpha_examples() {
        let g = ghz_alpha(std::f64::consts::FRAC_PI_4);
        assert!(g.distance(&ghz()) < 1e-15);
        let down = ghz_alpha(0.0);
        assert_eq!(down[7], C64::new(1.0, 0.0));
        assert!(down.amps()[..7].iter().all(|a| a.norm() == 0.0));
        for k in 0..50 {
            assert!(ghz_alpha(k as f64 * 0.1).is_normalized(1e-15));
        }
    }

    #[test]
    fn w_state_amplitudes() {
        let w = w_state();
        assert!((w[spin_index([1, 1, 0])].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(w[spin_index([1, 1, 1])].norm(), 0.0);
        assert!(w.is_normalized(1e-15));
    }

    #[test]
    fn permutation_order_alternates_parity() {
        for (i, p) in PERMUTATIONS.iter().enumerate() {
            let idx = p.map(MomentumLabel::index);
            let inversions = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .filter(|&(a, b)| idx[a] > idx[b])
                .count();
            assert_eq!(inversions % 2, i % 2, "permutation {i}");
        }
    }

    #[test]
    fn permutation_momentum_examples() {
        let prod = permutation_momentum(&product_coeffs()).unwrap();
        assert_eq!(prod, StateVector::basis(27, momentum_index([0, 1, 2])));
        let anti = permutation_momentum(&antisymmetric_coeffs()).unwrap();
        assert!(anti.is_normalized(1e-15));
        let kets: Vec<usize> = PERMUTATIONS.iter().map(permutation_ket_index).collect();
        let mut dedup = kets.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 6);
        let bad = [C64::new(0.5, 0.0); 6];
        assert!(matches!(permutation_momentum(&bad), Err(Error::Input(_))));
    }

    #[test]
    fn antisymmetric_state_flips_sign_under_transposition() {
        let anti = permutation_momentum(&antisymmetric_coeffs()).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let mut swapped = vec![C64::new(0.0, 0.0); 27];
            for m in 0..27 {
                let mut d = [m / 9, (m / 3) % 3, m % 3];
                d.swap(a, b);
                swapped[momentum_index(d)] = anti[m];
            }
            let swapped = StateVector::new(swapped).unwrap();
            let neg = StateVector::new(anti.amps().iter().map(|x| -x).collect()).unwrap();
            assert!(swapped.distance(&neg) < 1e-15);
        }
    }

    #[test]
    fn index_convention_matches_shape_digits() {
        let shape = composite_shape();
        for i in 0..COMPOSITE_DIM {
            let d = shape.digits(i);
            assert_eq!(composite_index([d[0], d[2], d[4]], [d[1], d[3], d[5]]), i);
        }
    }

    #[test]
    fn compose_basis_product() {
        let m = StateVector::basis(27, momentum_index([0, 1, 2]));
        let s = StateVector::basis(8, spin_index([1, 1, 1]));
        let c = compose(&m, &s).unwrap();
        let idx = composite_index([0, 1, 2], [1, 1, 1]);
        assert_eq!(c.vector()[idx], C64::new(1.0, 0.0));
        assert!((c.vector().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn compose_spin_reduction_of_product_is_spin_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let m = random_state(&mut rng, 27);
            let s = random_state(&mut rng, 8);
            let c = compose(&m, &s).unwrap();
            assert!(c.spin_density().distance(&s.projector()) < 1e-12);
            assert!(c.spin_density_via_projector().distance(&s.projector()) < 1e-12);
        }
    }

    #[test]
    fn compose_rejects_wrong_dims() {
        let m = StateVector::basis(8, 0);
        assert!(matches!(compose(&m, &m), Err(Error::Shape(_))));
    }

    #[test]
    fn partition_validation() {
        assert!(PartitionSpec::new(vec![vec![0, 1, 2]], 3).is_err());
        assert!(PartitionSpec::new(vec![vec![0], vec![0, 1, 2]], 3).is_err());
        assert!(PartitionSpec::new(vec![vec![0], vec![1]], 3).is_err());
        assert!(PartitionSpec::new(vec![vec![0], vec![]], 1).is_err());
        assert!(PartitionSpec::new(vec![vec![2, 0], vec![1]], 3).is_ok());
        assert_eq!(PartitionSpec::particles().label(), "{0,1}|{2,3}|{4,5}");
    }

    #[test]
    fn all_partitions_counts_match_bell_numbers() {
        // Bell numbers B3 = 5, B4 = 15, B6 = 203, minus the one-part partition.
        assert_eq!(PartitionSpec::all(3).len(), 4);
        assert_eq!(PartitionSpec::all(4).len(), 14);
        assert_eq!(PartitionSpec::all(6).len(), 202);
    }

    #[test]
    fn mixed_state_validation() {
        let c = compose(&permutation_momentum(&product_coeffs()).unwrap(), &ghz()).unwrap();
        assert!(MixedState::new(vec![(0.5, c.clone()), (0.5, c.clone())]).is_ok());
        assert!(MixedState::new(vec![(0.5, c.clone()), (0.6, c.clone())]).is_err());
        assert!(MixedState::new(vec![(1.5, c.clone()), (-0.5, c)]).is_err());
    }
}
