//! Deterministic parameter sweeps.
//!
//! `fig2`: witness and GME bound of `Σ α_i|Π_i⟩ ⊗ (cos α|↓↓↓⟩ + sin α|↑↑↑⟩)`
//! over an (α, δ) grid. `fig3`: m-concurrence of the boosted composite state
//! over a catalog of partitions of the six factors, as a function of δ.
//!
//! Grid points are evaluated independently (in parallel when allowed) and
//! emitted in a fixed order, so output is byte-identical across thread
//! counts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
pub use rayon::ThreadPool;

use crate::boost::{boost_pure, boosted_spin_density_fast, permutation_composite};
use crate::error::{Error, Result};
use crate::kinematics::{wigner_angle_from_speeds, BoostScenario, MomentumGeometry};
use crate::measures::{gme_lower_bound, m_concurrence_pure, witness_hmgh, WitnessPath, WitnessVariant};
use crate::states::{antisymmetric_coeffs, composite_shape, ghz, ghz_alpha, product_coeffs, w_state, PartitionSpec};
use crate::tensor::StateVector;
use crate::tol;

pub const FIG2_DEFAULT_GRID: usize = 61;
pub const FIG3_DEFAULT_GRID: usize = 121;
pub const DEFAULT_PARTICLE_SPEED: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpinChoice {
    Ghz,
    W,
    GhzAlpha(f64),
}

impl SpinChoice {
    pub fn state(self) -> StateVector {
        match self {
            SpinChoice::Ghz => ghz(),
            SpinChoice::W => w_state(),
            SpinChoice::GhzAlpha(a) => ghz_alpha(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MomentumChoice {
    Product,
    Antisymmetric,
    Custom([C64; 6]),
}

impl MomentumChoice {
    pub fn coeffs(self) -> [C64; 6] {
        match self {
            MomentumChoice::Product => product_coeffs(),
            MomentumChoice::Antisymmetric => antisymmetric_coeffs(),
            MomentumChoice::Custom(c) => c,
        }
    }
}

impl FromStr for MomentumChoice {
    type Err = Error;

    /// `product`, `antisymmetric`, or six comma-separated coefficients, each
    /// `re` or `re:im`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "product" => Ok(MomentumChoice::Product),
            "antisymmetric" => Ok(MomentumChoice::Antisymmetric),
            list => {
                let parts: Vec<&str> = list.split(',').map(str::trim).collect();
                if parts.len() != 6 {
                    return Err(Error::Input(format!(
                        "momentum must be product, antisymmetric or 6 coefficients, got {s:?}"
                    )));
                }
                let mut c = [C64::new(0.0, 0.0); 6];
                for (slot, p) in c.iter_mut().zip(parts) {
                    let (re, im) = p.split_once(':').unwrap_or((p, "0"));
                    let parse = |x: &str| {
                        x.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Input(format!("bad momentum coefficient {p:?}")))
                    };
                    *slot = C64::new(parse(re)?, parse(im)?);
                }
                let n: f64 = c.iter().map(|z| z.norm_sqr()).sum();
                if (n - 1.0).abs() > tol::PHYS {
                    return Err(Error::Input(format!(
                        "momentum coefficients have squared norm {n}, expected 1"
                    )));
                }
                Ok(MomentumChoice::Custom(c))
            }
        }
    }
}

/// Upper end of the δ grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeltaRange {
    /// δ ∈ [0, max].
    Direct { max: f64 },
    /// δ ∈ [0, δ(u, v)] for observer speed `u` and the particle speed.
    ObserverSpeed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub delta_range: DeltaRange,
    pub particle_speed: f64,
    pub n_alpha: usize,
    pub n_delta: usize,
    pub spin: SpinChoice,
    pub momentum: MomentumChoice,
    pub variant: WitnessVariant,
    /// `None` uses rayon's global pool; `Some(1)` runs serially.
    pub threads: Option<usize>,
}

impl ScanConfig {
    pub fn fig2_default() -> Self {
        ScanConfig {
            delta_range: DeltaRange::Direct { max: FRAC_PI_2 },
            particle_speed: DEFAULT_PARTICLE_SPEED,
            n_alpha: FIG2_DEFAULT_GRID,
            n_delta: FIG2_DEFAULT_GRID,
            spin: SpinChoice::Ghz,
            momentum: MomentumChoice::Antisymmetric,
            variant: WitnessVariant::Symmetric,
            threads: None,
        }
    }

    pub fn fig3_default(spin: SpinChoice) -> Self {
        ScanConfig {
            n_alpha: 2,
            n_delta: FIG3_DEFAULT_GRID,
            spin,
            ..Self::fig2_default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_alpha < 2 || self.n_delta < 2 {
            return Err(Error::Input(format!(
                "grid sizes must be >= 2 (got {} x {})",
                self.n_alpha, self.n_delta
            )));
        }
        if !(0.0..1.0).contains(&self.particle_speed) || self.particle_speed == 0.0 {
            return Err(Error::Domain(format!(
                "particle speed {} outside (0, 1)",
                self.particle_speed
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Input("--threads must be positive".into()));
        }
        self.delta_max().map(|_| ())
    }

    pub fn delta_max(&self) -> Result<f64> {
        match self.delta_range {
            DeltaRange::Direct { max } if (0.0..=FRAC_PI_2).contains(&max) => Ok(max),
            DeltaRange::Direct { max } => Err(Error::Domain(format!("delta {max} outside [0, pi/2]"))),
            DeltaRange::ObserverSpeed(u) => wigner_angle_from_speeds(u, self.particle_speed),
        }
    }

    pub fn delta_grid(&self) -> Result<Vec<f64>> {
        Ok(linspace(0.0, self.delta_max()?, self.n_delta))
    }

    pub fn alpha_grid(&self) -> Vec<f64> {
        linspace(0.0, PI, self.n_alpha)
    }

    fn scenario(&self, delta: f64) -> Result<BoostScenario> {
        BoostScenario::with_delta(delta, MomentumGeometry::symmetric(self.particle_speed)?)
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(job()),
            Some(n) => Ok(thread_pool(n)?.install(job)),
        }
    }
}

/// A dedicated pool with exactly `n` worker threads.
pub fn thread_pool(n: usize) -> Result<ThreadPool> {
    if n == 0 {
        return Err(Error::Input("thread count must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::Input(format!("cannot build thread pool: {e}")))
}

/// `n` evenly spaced points with both endpoints exact.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    end
                } else {
                    start + (end - start) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Rounds to 12 significant digits and prints the shortest round-trip form
/// of the rounded value; magnitudes outside [1e-5, 1e15) use exponent
/// notation (`1.22464679915e-16`).
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig2Row {
    pub alpha: f64,
    pub delta: f64,
    pub witness: f64,
    pub gme_bound: f64,
}

pub fn scan_fig2(config: &ScanConfig) -> Result<Vec<Fig2Row>> {
    config.validate()?;
    let coeffs = config.momentum.coeffs();
    let deltas = config.delta_grid()?;
    let points: Vec<(f64, f64)> = config
        .alpha_grid()
        .into_iter()
        .flat_map(|a| deltas.iter().map(move |&d| (a, d)))
        .collect();
    let eval = |&(alpha, delta): &(f64, f64)| -> Result<Fig2Row> {
        let scenario = config.scenario(delta)?;
        let rho = boosted_spin_density_fast(&coeffs, &ghz_alpha(alpha), &scenario)?.density;
        let w = witness_hmgh(&rho, WitnessPath::MatrixElements, config.variant)?;
        Ok(Fig2Row {
            alpha,
            delta,
            witness: w.value,
            gme_bound: gme_lower_bound(&rho)?,
        })
    };
    config.run(|| points.par_iter().map(eval).collect::<Result<Vec<_>>>())?
}

pub fn fig2_csv(rows: &[Fig2Row]) -> String {
    let mut out = String::from("alpha,delta,witness,gme_bound\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_sig12(r.alpha),
            format_sig12(r.delta),
            format_sig12(r.witness),
            format_sig12(r.gme_bound)
        );
    }
    out
}

/// Partitions of the six composite factors swept by `fig3`, with their ids.
pub fn fig3_catalog() -> Vec<PartitionSpec> {
    let mut cat = vec![
        PartitionSpec::spins_vs_momenta(),
        PartitionSpec::particles(),
        PartitionSpec::singletons(6).expect("static partition"),
    ];
    for spin in [1, 3, 5] {
        cat.push(PartitionSpec::one_vs_rest(spin, 6).expect("static partition"));
    }
    cat.push(PartitionSpec::new(vec![vec![1], vec![3], vec![5], vec![0, 2, 4]], 6).expect("static partition"));
    cat
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig3Row {
    pub delta: f64,
    pub partition: usize,
    pub m_concurrence: f64,
}

pub fn scan_fig3(config: &ScanConfig) -> Result<Vec<Fig3Row>> {
    config.validate()?;
    let composite = permutation_composite(&config.momentum.coeffs(), &config.spin.state())?;
    let catalog = fig3_catalog();
    let shape = composite_shape();
    let deltas = config.delta_grid()?;
    let eval = |&delta: &f64| -> Result<Vec<Fig3Row>> {
        let boosted = boost_pure(&composite, &config.scenario(delta)?);
        catalog
            .iter()
            .enumerate()
            .map(|(id, p)| {
                Ok(Fig3Row {
                    delta,
                    partition: id,
                    m_concurrence: m_concurrence_pure(boosted.vector(), &shape, p)?,
                })
            })
            .collect()
    };
    let nested = config.run(|| deltas.par_iter().map(eval).collect::<Result<Vec<_>>>())??;
    Ok(nested.into_iter().flatten().collect())
}

pub fn fig3_csv(rows: &[Fig3Row]) -> String {
    let catalog: Vec<String> = fig3_catalog()
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{i}={}", p.label()))
        .collect();
    let mut out = format!(
        "# partitions: {} (factors 0,2,4 = momenta; 1,3,5 = spins)\ndelta,partition,m_concurrence\n",
        catalog.join("; ")
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sig12(r.delta),
            r.partition,
            format_sig12(r.m_concurrence)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.5f64.sqrt()), "1.22474487139");
        assert_eq!(format_sig12(PI), "3.14159265359");
        assert_eq!(format_sig12(1e-20), "1e-20");
        assert_eq!(format_sig12(1.2246467991473532e-16), "1.22464679915e-16");
        assert_eq!(format_sig12(1.0 - 1e-15), "1");
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, FRAC_PI_2, 61);
        assert_eq!(g.len(), 61);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[60], FRAC_PI_2);
    }

    #[test]
    fn momentum_choice_parsing() {
        assert_eq!("product".parse::<MomentumChoice>().unwrap(), MomentumChoice::Product);
        let c: MomentumChoice = "0,0,1,0,0,0".parse().unwrap();
        assert_eq!(c.coeffs()[2], C64::new(1.0, 0.0));
        let c: MomentumChoice = "0.6,0:0.8,0,0,0,0".parse().unwrap();
        assert_eq!(c.coeffs()[1], C64::new(0.0, 0.8));
        assert!("1,1,0,0,0,0".parse::<MomentumChoice>().is_err());
        assert!("1,0".parse::<MomentumChoice>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = ScanConfig::fig2_default();
        c.n_delta = 1;
        assert!(matches!(c.validate(), Err(Error::Input(_))));
        let mut c = ScanConfig::fig2_default();
        c.particle_speed = 1.0;
        assert!(c.validate().is_err());
        let mut c = ScanConfig::fig2_default();
        c.delta_range = DeltaRange::ObserverSpeed(0.8);
        assert!((c.delta_max().unwrap() - wigner_angle_from_speeds(0.8, 0.8).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn small_fig2_corner_rows() {
        let mut c = ScanConfig::fig2_default();
        c.n_alpha = 5;
        c.n_delta = 3;
        let rows = scan_fig2(&c).unwrap();
        assert_eq!(rows.len(), 15);
        let r = rows.iter().find(|r| r.alpha == PI / 4.0 && r.delta == 0.0).unwrap();
        assert!((r.witness - 1.0).abs() < 1e-12 && (r.gme_bound - 1.0).abs() < 1e-12);
        assert!(rows.iter().filter(|r| r.alpha == 0.0).all(|r| r.gme_bound == 0.0));
        assert!(fig2_csv(&rows).starts_with("alpha,delta,witness,gme_bound\n0,0,"));
    }

    #[test]
    fn fig3_catalog_labels() {
        let cat = fig3_catalog();
        assert_eq!(cat[0].label(), "{1,3,5}|{0,2,4}");
        assert_eq!(cat[1].label(), "{0,1}|{2,3}|{4,5}");
        assert_eq!(cat[2].n_parts(), 6);
        let mut c = ScanConfig::fig3_default(SpinChoice::W);
        c.n_delta = 2;
        let csv = fig3_csv(&scan_fig3(&c).unwrap());
        assert!(csv.starts_with("# partitions: 0={1,3,5}|{0,2,4}; 1={0,1}|{2,3}|{4,5}"));
        assert_eq!(csv.lines().count(), 2 + 2 * cat.len());
    }
}
