//! Relativistic bookkeeping: rapidities, the Wigner rotation angle and the
//! spin rotations it induces for each sharp momentum.
//!
//! Only speeds enter the angle; momentum magnitudes and masses are not
//! modelled. The rotation axis for a particle moving along `p̂` seen by an
//! observer boosted along `b̂` is `b̂ × p̂`, and the spin transforms by
//! `exp(−i δ/2 n̂·σ)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensor::{pauli, ComplexMatrix};
use crate::tol;

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn require_unit(v: &Vec3, what: &str) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) || (norm(v) - 1.0).abs() > tol::ALGEBRA {
        return Err(Error::Domain(format!("{what} {v:?} is not a unit vector")));
    }
    Ok(())
}

/// Rapidity `η` with `tanh η = speed` (units of c).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Rapidity(f64);

impl Rapidity {
    /// Rapidity of a speed in `[0, 1)`.
    pub fn from_speed(speed: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&speed) {
            return Err(Error::Domain(format!("speed {speed} outside [0, 1) in units of c")));
        }
        Ok(Rapidity(speed.atanh()))
    }

    pub fn from_value(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!("rapidity {value} is not finite")));
        }
        Ok(Rapidity(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn speed(self) -> f64 {
        self.0.tanh()
    }
}

pub fn rapidity(speed: f64) -> Result<Rapidity> {
    Rapidity::from_speed(speed)
}

/// Wigner rotation angle for an observer with rapidity `eta` watching a
/// particle with rapidity `xi` moving perpendicular to the boost:
/// `tan δ = sinh η sinh ξ / (cosh η + cosh ξ)`.
pub fn wigner_angle(eta: Rapidity, xi: Rapidity) -> f64 {
    let (e, x) = (eta.value(), xi.value());
    (e.sinh() * x.sinh() / (e.cosh() + x.cosh())).atan()
}

/// Wigner angle straight from the two speeds.
pub fn wigner_angle_from_speeds(observer_speed: f64, particle_speed: f64) -> Result<f64> {
    Ok(wigner_angle(
        Rapidity::from_speed(observer_speed)?,
        Rapidity::from_speed(particle_speed)?,
    ))
}

/// Normalised `boost_axis × momentum_dir`.
pub fn rotation_axis(boost_axis: &Vec3, momentum_dir: &Vec3) -> Result<Vec3> {
    require_unit(boost_axis, "boost axis")?;
    require_unit(momentum_dir, "momentum direction")?;
    let n = cross(boost_axis, momentum_dir);
    let len = norm(&n);
    if len < 1e-9 {
        return Err(Error::Domain(format!(
            "degenerate geometry: boost axis {boost_axis:?} parallel to momentum {momentum_dir:?}"
        )));
    }
    Ok([n[0] / len, n[1] / len, n[2] / len])
}

/// `U = cos(δ/2) I − i sin(δ/2) (n̂·σ)`.
pub fn spin_rotation(axis: &Vec3, delta: f64) -> ComplexMatrix {
    let (s, c) = (delta / 2.0).sin_cos();
    let n_sigma =
        &(&pauli::x().scale_real(axis[0]) + &pauli::y().scale_real(axis[1])) + &pauli::z().scale_real(axis[2]);
    &ComplexMatrix::identity(2).scale_real(c) + &n_sigma.scale(C64::new(0.0, -s))
}

/// One of the three sharp momenta.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MomentumLabel {
    A,
    B,
    C,
}

impl MomentumLabel {
    pub const ALL: [MomentumLabel; 3] = [MomentumLabel::A, MomentumLabel::B, MomentumLabel::C];

    /// Basis index of this momentum in a single particle's 3-dim space.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown momentum label index {i}")))
    }
}

impl fmt::Display for MomentumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MomentumLabel::A => "A",
            MomentumLabel::B => "B",
            MomentumLabel::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for MomentumLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" | "PA" | "P_A" => Ok(MomentumLabel::A),
            "B" | "PB" | "P_B" => Ok(MomentumLabel::B),
            "C" | "PC" | "P_C" => Ok(MomentumLabel::C),
            other => Err(Error::Input(format!("unknown momentum label {other:?}"))),
        }
    }
}

/// Directions of the three equal-magnitude momenta, all in the x–y plane.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGeometry {
    directions: [Vec3; 3],
    particle_speed: f64,
    boost_axis: Vec3,
}

impl MomentumGeometry {
    pub fn new(directions: [Vec3; 3], particle_speed: f64, boost_axis: Vec3) -> Result<Self> {
        for (label, d) in MomentumLabel::ALL.iter().zip(&directions) {
            require_unit(d, &format!("direction of p_{label}"))?;
            if d[2].abs() > tol::ALGEBRA {
                return Err(Error::Domain(format!(
                    "direction of p_{label} {d:?} leaves the x-y plane"
                )));
            }
        }
        require_unit(&boost_axis, "boost axis")?;
        if !(0.0..1.0).contains(&particle_speed) || particle_speed == 0.0 {
            return Err(Error::Domain(format!("particle speed {particle_speed} outside (0, 1)")));
        }
        Ok(MomentumGeometry {
            directions,
            particle_speed,
            boost_axis,
        })
    }

    /// Momenta at azimuths 0°, 120°, 240° with the observer moving along +z.
    pub fn symmetric(particle_speed: f64) -> Result<Self> {
        Self::from_azimuths([0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0], particle_speed)
    }

    pub fn from_azimuths(azimuths: [f64; 3], particle_speed: f64) -> Result<Self> {
        let directions = azimuths.map(|phi| [phi.cos(), phi.sin(), 0.0]);
        Self::new(directions, particle_speed, [0.0, 0.0, 1.0])
    }

    pub fn direction(&self, label: MomentumLabel) -> Vec3 {
        self.directions[label.index()]
    }

    pub fn particle_speed(&self) -> f64 {
        self.particle_speed
    }

    pub fn boost_axis(&self) -> Vec3 {
        self.boost_axis
    }
}

/// Observer boost plus the momentum geometry it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct BoostScenario {
    observer_speed: Option<f64>,
    delta: f64,
    geometry: MomentumGeometry,
    axes: [Vec3; 3],
}

impl BoostScenario {
    /// Scenario for an observer at `observer_speed`; δ follows from the
    /// two rapidities.
    pub fn from_speeds(observer_speed: f64, geometry: MomentumGeometry) -> Result<Self> {
        let delta = wigner_angle_from_speeds(observer_speed, geometry.particle_speed)?;
        let mut s = Self::with_delta(delta, geometry)?;
        s.observer_speed = Some(observer_speed);
        Ok(s)
    }

    /// Scenario parameterised directly by the Wigner angle, `δ ∈ [0, π/2]`.
    pub fn with_delta(delta: f64, geometry: MomentumGeometry) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&delta) {
            return Err(Error::Domain(format!("Wigner angle {delta} outside [0, pi/2]")));
        }
        let mut axes = [[0.0; 3]; 3];
        for label in MomentumLabel::ALL {
            axes[label.index()] = rotation_axis(&geometry.boost_axis, &geometry.direction(label))?;
        }
        Ok(BoostScenario {
            observer_speed: None,
            delta,
            geometry,
            axes,
        })
    }

    /// Symmetric geometry at a fixed particle speed of 0.8 c, parameterised by δ.
    pub fn symmetric_with_delta(delta: f64) -> Result<Self> {
        Self::with_delta(delta, MomentumGeometry::symmetric(0.8)?)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn observer_speed(&self) -> Option<f64> {
        self.observer_speed
    }

    pub fn geometry(&self) -> &MomentumGeometry {
        &self.geometry
    }

    pub fn axis(&self, label: MomentumLabel) -> Vec3 {
        self.axes[label.index()]
    }

    /// Spin rotation `U(p, δ)` for a particle carrying momentum `label`.
    pub fn rotation(&self, label: MomentumLabel) -> ComplexMatrix {
        spin_rotation(&self.axis(label), self.delta)
    }
}

/// `U(p₁,δ) ⊗ U(p₂,δ) ⊗ U(p₃,δ)` for the momenta assigned to particles 1..3.
pub fn local_unitary(assignment: &[MomentumLabel], scenario: &BoostScenario) -> Result<ComplexMatrix> {
    if assignment.len() != 3 {
        return Err(Error::Input(format!(
            "expected 3 momentum labels, got {}",
            assignment.len()
        )));
    }
    Ok(scenario
        .rotation(assignment[0])
        .kron(&scenario.rotation(assignment[1]))
        .kron(&scenario.rotation(assignment[2])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rapidity_values() {
        assert_eq!(rapidity(0.0).unwrap().value(), 0.0);
        assert!((rapidity(0.8).unwrap().value() - 1.0986).abs() < 1e-4);
        assert!(matches!(rapidity(1.0), Err(Error::Domain(_))));
        assert!(matches!(rapidity(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn rapidity_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let s: f64 = rng.gen_range(0.0..0.999);
            assert!((rapidity(s).unwrap().speed() - s).abs() < 1e-14);
        }
    }

    #[test]
    fn wigner_angle_examples() {
        let zero = Rapidity::from_value(0.0).unwrap();
        let xi = rapidity(0.9).unwrap();
        assert_eq!(wigner_angle(zero, xi), 0.0);
        let d = wigner_angle_from_speeds(0.8, 0.8).unwrap();
        assert!((d - 0.4900).abs() < 1e-3);
        let big = Rapidity::from_value(20.0).unwrap();
        assert!((wigner_angle(big, big) - FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn rotation_axis_right_hand_rule() {
        let z = [0.0, 0.0, 1.0];
        let a = rotation_axis(&z, &[1.0, 0.0, 0.0]).unwrap();
        assert!(norm(&[a[0], a[1] - 1.0, a[2]]) < 1e-15);
        let b = rotation_axis(&z, &[0.0, 1.0, 0.0]).unwrap();
        assert!(norm(&[b[0] + 1.0, b[1], b[2]]) < 1e-15);
        assert!(matches!(rotation_axis(&z, &z), Err(Error::Domain(_))));
    }

    #[test]
    fn rotation_axis_orthogonal_for_random_planar_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let z = [0.0, 0.0, 1.0];
        for _ in 0..100 {
            let phi: f64 = rng.gen_range(0.0..2.0 * PI);
            let p = [phi.cos(), phi.sin(), 0.0];
            let n = rotation_axis(&z, &p).unwrap();
            assert!(dot(&n, &z).abs() < 1e-12);
            assert!(dot(&n, &p).abs() < 1e-12);
            assert!((norm(&n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spin_rotation_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert!(spin_rotation(&[0.3f64.cos(), 0.3f64.sin(), 0.0], 0.0).distance(&i2) < 1e-15);
        let u = spin_rotation(&[0.0, 1.0, 0.0], PI);
        let expected = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        assert!(u.distance(&expected) < 1e-15);
    }

    #[test]
    fn spin_rotation_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let v: Vec3 = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let l = norm(&v);
            let axis = [v[0] / l, v[1] / l, v[2] / l];
            let u = spin_rotation(&axis, rng.gen_range(-PI..PI));
            assert!(u.unitarity_deviation() < 1e-12);
            let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
            assert!((det - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn local_unitary_identity_at_zero_delta() {
        let s = BoostScenario::symmetric_with_delta(0.0).unwrap();
        let u = local_unitary(&[MomentumLabel::A, MomentumLabel::B, MomentumLabel::C], &s).unwrap();
        assert!(u.distance(&ComplexMatrix::identity(8)) < 1e-15);
    }

    #[test]
    fn local_unitary_rejects_wrong_length() {
        let s = BoostScenario::symmetric_with_delta(0.5).unwrap();
        assert!(matches!(local_unitary(&[MomentumLabel::A], &s), Err(Error::Input(_))));
        assert!(matches!(MomentumLabel::from_index(3), Err(Error::Input(_))));
        assert!("D".parse::<MomentumLabel>().is_err());
    }

    #[test]
    fn geometry_validation() {
        assert!(MomentumGeometry::new(
            [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]],
            0.5,
            [0.0, 0.0, 1.0]
        )
        .is_err());
        assert!(MomentumGeometry::symmetric(1.0).is_err());
        assert!(BoostScenario::symmetric_with_delta(2.0).is_err());
    }

    #[test]
    fn scenario_from_speeds_matches_wigner_angle() {
        let g = MomentumGeometry::symmetric(0.8).unwrap();
        let s = BoostScenario::from_speeds(0.8, g).unwrap();
        assert!((s.delta() - wigner_angle_from_speeds(0.8, 0.8).unwrap()).abs() < 1e-15);
        assert_eq!(s.observer_speed(), Some(0.8));
    }
}
