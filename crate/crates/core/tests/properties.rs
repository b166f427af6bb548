//! Randomised invariants checked with proptest.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use relent_core::classcheck::{random_local_unitary, random_pure_state, rng_from_seed, sample_biseparable_mixed};
use relent_core::kinematics::{spin_rotation, wigner_angle, MomentumGeometry, MomentumLabel, Rapidity};
use relent_core::measures::{m_concurrence_pure, three_tangle, witness_hmgh, WitnessPath, WitnessVariant};
use relent_core::tensor::{is_density_matrix, partial_trace, purity, ComplexMatrix, FactorShape};
use relent_core::C64;

fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let v = random_pure_state(rows * cols, &mut rng_from_seed(seed));
    ComplexMatrix::from_vec(rows, cols, v.into_amps()).unwrap()
}

fn random_density(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    let a = random_pure_state(dim, &mut rng).projector();
    let b = random_pure_state(dim, &mut rng).projector();
    let c = random_pure_state(dim, &mut rng).projector();
    &(&a.scale_real(0.5) + &b.scale_real(0.3)) + &c.scale_real(0.2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in 1usize..4, b in 1usize..4, c in 1usize..4, seed in any::<u64>()) {
        let x = random_matrix(a, b, seed);
        let y = random_matrix(b, c, seed ^ 1);
        let z = random_matrix(c, a, seed ^ 2);
        let left = x.kron(&y).kron(&z);
        let right = x.kron(&y.kron(&z));
        prop_assert!(left.distance(&right) <= 1e-14);
    }

    #[test]
    fn partial_traces_compose(seed in any::<u64>()) {
        let shape = FactorShape::new(vec![2, 3, 2]).unwrap();
        let rho = random_density(12, seed);
        let direct = partial_trace(&rho, &shape, &[0]).unwrap();
        let first = partial_trace(&rho, &shape, &[0, 1]).unwrap();
        let staged = partial_trace(&first, &FactorShape::new(vec![2, 3]).unwrap(), &[0]).unwrap();
        prop_assert!(direct.distance(&staged) <= 1e-12);
        prop_assert!((direct.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(is_density_matrix(&direct, 1e-9).valid);
    }

    #[test]
    fn purity_is_bounded(seed in any::<u64>(), dim in 2usize..9) {
        let p = purity(&random_density(dim, seed)).unwrap();
        prop_assert!(p >= 1.0 / dim as f64 - 1e-9 && p <= 1.0 + 1e-9);
    }

    #[test]
    fn wigner_angle_is_symmetric_and_monotone(e in 0.0f64..10.0, x in 0.0f64..10.0, de in 0.0f64..1.0) {
        let r = |v: f64| Rapidity::from_value(v).unwrap();
        prop_assert!((wigner_angle(r(e), r(x)) - wigner_angle(r(x), r(e))).abs() <= 1e-12);
        prop_assert!(wigner_angle(r(e + de), r(x)) >= wigner_angle(r(e), r(x)) - 1e-15);
        let d = wigner_angle(r(e), r(x));
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_2).contains(&d));
    }

    #[test]
    fn spin_rotations_about_one_axis_compose(theta in -3.0f64..3.0, phi in -3.0f64..3.0, az in 0.0f64..6.3) {
        let axis = [az.cos(), az.sin(), 0.0];
        let product = spin_rotation(&axis, theta).matmul(&spin_rotation(&axis, phi)).unwrap();
        prop_assert!(product.distance(&spin_rotation(&axis, theta + phi)) <= 1e-12);
    }

    #[test]
    fn witness_paths_agree(seed in any::<u64>()) {
        let rho = random_density(8, seed);
        for variant in [WitnessVariant::Symmetric, WitnessVariant::AsPrinted] {
            let a = witness_hmgh(&rho, WitnessPath::PauliSettings, variant).unwrap();
            let b = witness_hmgh(&rho, WitnessPath::MatrixElements, variant).unwrap();
            prop_assert!((a.value - b.value).abs() <= 1e-10);
        }
    }

    #[test]
    fn witness_is_sound_on_biseparable_mixtures(seed in any::<u64>(), n in 1usize..8) {
        let rho = sample_biseparable_mixed(n, seed).unwrap();
        let r = witness_hmgh(&rho, WitnessPath::MatrixElements, WitnessVariant::Symmetric).unwrap();
        prop_assert!(r.value <= 1e-9, "value {}", r.value);
    }

    #[test]
    fn tangle_and_concurrence_are_lu_invariant(seed in any::<u64>()) {
        let shape = FactorShape::qubits(3);
        let psi = random_pure_state(8, &mut rng_from_seed(seed));
        let rotated = random_local_unitary(&shape, seed ^ 0xABCD).apply(&psi).unwrap();
        prop_assert!((three_tangle(&psi).unwrap() - three_tangle(&rotated).unwrap()).abs() <= 1e-9);
        for p in relent_core::states::PartitionSpec::all(3) {
            let a = m_concurrence_pure(&psi, &shape, &p).unwrap();
            let b = m_concurrence_pure(&rotated, &shape, &p).unwrap();
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn symmetric_geometry_has_axes_at_120_degrees() {
    let g = MomentumGeometry::symmetric(0.8).unwrap();
    let dirs: Vec<_> = MomentumLabel::ALL.iter().map(|&l| g.direction(l)).collect();
    for i in 0..3 {
        let (a, b) = (dirs[i], dirs[(i + 1) % 3]);
        assert_abs_diff_eq!(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], -0.5, epsilon = 1e-14);
    }
}
