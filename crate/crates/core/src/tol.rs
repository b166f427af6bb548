//! Named tolerances shared across the crate.

/// Default tolerance for physics checks (normalisation, density matrices).
pub const PHYS: f64 = 1e-9;

/// Tolerance for exact algebraic identities evaluated in floating point.
pub const ALGEBRA: f64 = 1e-12;

/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN: f64 = 1e-10;

/// Off-diagonal Frobenius threshold at which Jacobi sweeps stop.
pub const JACOBI_OFFDIAG: f64 = 1e-14;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Negative radicands smaller than this in magnitude are rounding noise.
pub const RADICAND_NOISE: f64 = 1e-12;
