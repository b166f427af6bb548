//! Simulation and analysis of Lorentz-boosted spin–momentum states of three
//! spin-½ particles.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor`]: dense complex vectors and matrices, Kronecker products,
//!   partial traces and a Jacobi Hermitian eigensolver.
//! * [`kinematics`]: rapidities, the Wigner rotation angle and the
//!   momentum-dependent SU(2) spin rotations.
//! * [`states`]: GHZ/W spin states, permutation momentum states, the
//!   interleaved composite space and the JSON state file format.
//! * [`boost`]: the full 216-dimensional boost unitary, the six-term
//!   permutation fast path and the mixed-ensemble transformation.
//! * [`measures`]: the three-qubit GME witness, m-concurrence over arbitrary
//!   partitions and the three-tangle.
//! * [`classcheck`]: seeded local-unitary sampling, biseparable sampling and
//!   the two observer-independence property suites.
//! * [`scan`]: deterministic CSV parameter sweeps.

pub mod boost;
pub mod classcheck;
pub mod error;
pub mod kinematics;
pub mod measures;
pub mod scan;
pub mod states;
pub mod tensor;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
