//! Sweeps over the nuclear charge and crossover searches.
//!
//! A crossover is a sign change of a position-minus-momentum difference as a
//! function of a continuous nuclear charge `Z`:
//!
//! ```text
//! one-electron:  g(Z) = S_ρ(Z) − S_π(Z)
//! two-electron:  g(Z) = S_Γ(Z) − S_Π(Z)
//! information:   g(Z) = I_r(Z) − I_p(Z)
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::densities::{one_density, pair_density, RadialDensity, Space};
use crate::error::{Error, Result};
use crate::hamiltonian::{default_start, optimize, EnergyBreakdown};
use crate::measures::{shannon_one, shannon_two, MeasureReport};
use crate::quadrature::{interpolate_root, try_find_root, QuadSpec};
use crate::wavefunctions::{StateKind, TwoElectronState};

/// Bracket width at which a bisection stops.
pub const CROSSOVER_TOL: f64 = 1e-3;

/// Momentum-space entropy of the hydrogenic 1s density at `Z = 1`, computed
/// once.
pub fn hydrogenic_momentum_entropy_unit() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        let spec = QuadSpec {
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            max_panels: 1024,
            ..QuadSpec::default()
        };
        let d = RadialDensity::hydrogenic(1.0, Space::Momentum).expect("Z = 1 is valid");
        shannon_one(&d, &spec).expect("hydrogenic momentum entropy converges")
    })
}

/// `(S_ρ, S_π)` of a hydrogenic 1s density for charge `z`.
pub fn hydrogenic_entropies(z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    let s_rho = 3.0 + PI.ln() - 3.0 * z.ln();
    let s_pi = hydrogenic_momentum_entropy_unit() + 3.0 * z.ln();
    Ok((s_rho, s_pi))
}

/// One optimized state of a sweep and its measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub z_nuclear: f64,
    pub kind: StateKind,
    pub params: [f64; 2],
    pub energy: EnergyBreakdown,
    pub report: MeasureReport,
}

/// Optimizes from `initial` and evaluates every measure. Triplet rows carry
/// the reference-subtracted information against the non-interacting state.
pub fn evaluate_point(
    kind: StateKind,
    z: f64,
    initial: [f64; 2],
    spec: &QuadSpec,
) -> Result<SweepRow> {
    let opt = optimize(kind, z, initial)?;
    let state = opt.state()?;
    let mut report = MeasureReport::evaluate(&state, spec)?;
    match kind {
        StateKind::Singlet => {}
        StateKind::NonInteractingTriplet => {
            let reference = report.clone();
            report = report.with_reference(&reference)?;
        }
        StateKind::Triplet => {
            let reference = MeasureReport::evaluate(&TwoElectronState::non_interacting(z)?, spec)?;
            report = report.with_reference(&reference)?;
        }
    }
    Ok(SweepRow {
        z_nuclear: z,
        kind,
        params: opt.params,
        energy: opt.energy,
        report,
    })
}

/// One result per charge, in ascending charge order; failures stay in place.
pub fn sweep_rows(kind: StateKind, z_values: &[f64], spec: &QuadSpec) -> Vec<(f64, Result<SweepRow>)> {
    let mut zs = z_values.to_vec();
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    zs.par_iter()
        .map(|&z| (z, evaluate_point(kind, z, default_start(kind, z), spec)))
        .collect()
}

/// Rows for every charge in `z_values`, sorted by charge. The first failure
/// is returned as the error.
pub fn sweep(kind: StateKind, z_values: &[f64], spec: &QuadSpec) -> Result<Vec<SweepRow>> {
    if z_values.is_empty() {
        return Err(Error::InvalidInput("empty charge list".into()));
    }
    sweep_rows(kind, z_values, spec)
        .into_iter()
        .map(|(_, r)| r)
        .collect()
}

/// `lo, lo + step, …` up to `hi` inclusive (within a small tolerance).
pub fn charge_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && step > 0.0 && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "bad charge range {lo}..{hi} step {step}"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverQuantity {
    OneElectronEntropy,
    TwoElectronEntropy,
    MutualInformation,
}

impl CrossoverQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            CrossoverQuantity::OneElectronEntropy => "one-electron-entropy",
            CrossoverQuantity::TwoElectronEntropy => "two-electron-entropy",
            CrossoverQuantity::MutualInformation => "mutual-information",
        }
    }
}

impl FromStr for CrossoverQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-electron-entropy" | "one-electron" => Ok(CrossoverQuantity::OneElectronEntropy),
            "two-electron-entropy" | "two-electron" => Ok(CrossoverQuantity::TwoElectronEntropy),
            "mutual-information" | "mi" => Ok(CrossoverQuantity::MutualInformation),
            other => Err(Error::InvalidInput(format!("unknown crossover quantity '{other}'"))),
        }
    }
}

impl fmt::Display for CrossoverQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The system whose crossover is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverSystem {
    /// One-electron 1s ion.
    Hydrogenic,
    Singlet,
    Triplet,
    #[serde(rename = "ni-triplet")]
    NiTriplet,
}

impl CrossoverSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            CrossoverSystem::Hydrogenic => "hydrogenic",
            CrossoverSystem::Singlet => "singlet",
            CrossoverSystem::Triplet => "triplet",
            CrossoverSystem::NiTriplet => "ni-triplet",
        }
    }

    pub fn state_kind(self) -> Option<StateKind> {
        match self {
            CrossoverSystem::Hydrogenic => None,
            CrossoverSystem::Singlet => Some(StateKind::Singlet),
            CrossoverSystem::Triplet => Some(StateKind::Triplet),
            CrossoverSystem::NiTriplet => Some(StateKind::NonInteractingTriplet),
        }
    }
}

impl From<StateKind> for CrossoverSystem {
    fn from(kind: StateKind) -> Self {
        match kind {
            StateKind::Singlet => CrossoverSystem::Singlet,
            StateKind::Triplet => CrossoverSystem::Triplet,
            StateKind::NonInteractingTriplet => CrossoverSystem::NiTriplet,
        }
    }
}

impl FromStr for CrossoverSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hydrogenic" => Ok(CrossoverSystem::Hydrogenic),
            other => other.parse::<StateKind>().map(Into::into),
        }
    }
}

impl fmt::Display for CrossoverSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the sign change is located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverMethod {
    /// Bisection on a continuous charge, reoptimizing at every probe.
    Bisection,
    /// Linear interpolation between unit-spaced charges from the lower end
    /// of the bracket.
    Interpolation,
}

impl FromStr for CrossoverMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bisection" => Ok(CrossoverMethod::Bisection),
            "interpolation" => Ok(CrossoverMethod::Interpolation),
            other => Err(Error::InvalidInput(format!("unknown crossover method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    pub quantity: CrossoverQuantity,
    pub kind: CrossoverSystem,
    pub z_star: f64,
    pub bracket: (f64, f64),
    pub method: CrossoverMethod,
}

/// Evaluates `g(Z)`, reoptimizing with warm starts from the nearest charge
/// already seen.
struct Prober<'a> {
    system: CrossoverSystem,
    quantity: CrossoverQuantity,
    spec: &'a QuadSpec,
    seen: Vec<(f64, [f64; 2])>,
}

impl Prober<'_> {
    fn warm_start(&self, kind: StateKind, z: f64) -> [f64; 2] {
        self.seen
            .iter()
            .min_by(|a, b| (a.0 - z).abs().total_cmp(&(b.0 - z).abs()))
            .map(|&(z0, p)| [p[0] * z / z0, p[1] * z / z0])
            .unwrap_or_else(|| default_start(kind, z))
    }

    fn probe(&mut self, z: f64) -> Result<f64> {
        let kind = match self.system.state_kind() {
            None => {
                if self.quantity != CrossoverQuantity::OneElectronEntropy {
                    return Err(Error::InvalidInput(format!(
                        "a one-electron ion has no {} crossover",
                        self.quantity
                    )));
                }
                let (s_rho, s_pi) = hydrogenic_entropies(z)?;
                return Ok(s_rho - s_pi);
            }
            Some(kind) => kind,
        };
        let state = if kind == StateKind::NonInteractingTriplet {
            TwoElectronState::non_interacting(z)?
        } else {
            let opt = optimize(kind, z, self.warm_start(kind, z))?;
            self.seen.push((z, opt.params));
            opt.state()?
        };
        state_difference(&state, self.quantity, self.spec)
    }
}

/// `g` for one state, computing only the entropies it needs.
pub fn state_difference(
    state: &TwoElectronState,
    quantity: CrossoverQuantity,
    spec: &QuadSpec,
) -> Result<f64> {
    let one = |space| -> Result<f64> { shannon_one(&one_density(state, space).to_unity()?, spec) };
    let two = |space| -> Result<f64> { shannon_two(&pair_density(state, space).to_unity()?, spec) };
    match quantity {
        CrossoverQuantity::OneElectronEntropy => Ok(one(Space::Position)? - one(Space::Momentum)?),
        CrossoverQuantity::TwoElectronEntropy => Ok(two(Space::Position)? - two(Space::Momentum)?),
        CrossoverQuantity::MutualInformation => {
            let r = MeasureReport::evaluate(state, spec)?;
            Ok(r.i_r - r.i_p)
        }
    }
}

/// Locates the charge where the position and momentum sides of `quantity`
/// are equal.
pub fn find_crossover(
    system: CrossoverSystem,
    quantity: CrossoverQuantity,
    bracket: (f64, f64),
    method: CrossoverMethod,
    spec: &QuadSpec,
) -> Result<CrossoverResult> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidInput(format!("bad bracket ({lo}, {hi})")));
    }
    let mut prober = Prober {
        system,
        quantity,
        spec,
        seen: Vec::new(),
    };
    let (z_star, bracket) = match method {
        CrossoverMethod::Bisection => try_find_root(|z| prober.probe(z), lo, hi, CROSSOVER_TOL)?,
        CrossoverMethod::Interpolation => {
            let mut zs = charge_grid(lo, hi, 1.0)?;
            if hi - zs[zs.len() - 1] > 1e-9 {
                zs.push(hi);
            }
            let gs = zs
                .iter()
                .map(|&z| prober.probe(z))
                .collect::<Result<Vec<f64>>>()?;
            interpolate_root(&zs, &gs).ok_or(Error::NoSignChange {
                lo,
                hi,
                g_lo: gs[0],
                g_hi: gs[gs.len() - 1],
            })?
        }
    };
    Ok(CrossoverResult {
        quantity,
        kind: system,
        z_star,
        bracket,
        method,
    })
}

/// Crossover implied by exact charge scaling, available for systems whose
/// shape does not depend on `Z`: position entropies fall by `3 ln Z` per
/// electron and momentum entropies rise by the same amount, so
/// `Z* = exp[(S_x(1) − S_p(1)) / 6n]` for `n` electrons.
pub fn scaling_crossover(
    system: CrossoverSystem,
    quantity: CrossoverQuantity,
    spec: &QuadSpec,
) -> Result<f64> {
    let diff_at_one = match (system, quantity) {
        (CrossoverSystem::Hydrogenic, CrossoverQuantity::OneElectronEntropy) => {
            let (r, p) = hydrogenic_entropies(1.0)?;
            (r - p) / 6.0
        }
        (CrossoverSystem::NiTriplet, CrossoverQuantity::OneElectronEntropy) => {
            state_difference(&TwoElectronState::non_interacting(1.0)?, quantity, spec)? / 6.0
        }
        (CrossoverSystem::NiTriplet, CrossoverQuantity::TwoElectronEntropy) => {
            state_difference(&TwoElectronState::non_interacting(1.0)?, quantity, spec)? / 12.0
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "no scaling form for the {quantity} crossover of {system}"
            )))
        }
    };
    Ok(diff_at_one.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogenic_values() {
        let (r, p) = hydrogenic_entropies(1.0).unwrap();
        assert!((r - 4.14473).abs() < 1e-5);
        assert!((p - 2.42186).abs() < 1e-5);
        let (r2, p2) = hydrogenic_entropies(2.0).unwrap();
        assert!(r2 < p2);
        assert!(hydrogenic_entropies(0.0).is_err());
    }

    #[test]
    fn hydrogenic_crossover() {
        let spec = QuadSpec::default();
        let r = find_crossover(
            CrossoverSystem::Hydrogenic,
            CrossoverQuantity::OneElectronEntropy,
            (1.0, 2.0),
            CrossoverMethod::Bisection,
            &spec,
        )
        .unwrap();
        assert!((r.z_star - 1.333).abs() < 0.005, "{}", r.z_star);
        assert!(r.bracket.0 <= r.z_star && r.z_star <= r.bracket.1);
        assert!(r.bracket.1 - r.bracket.0 <= CROSSOVER_TOL);
        let closed = scaling_crossover(
            CrossoverSystem::Hydrogenic,
            CrossoverQuantity::OneElectronEntropy,
            &spec,
        )
        .unwrap();
        assert!((r.z_star - closed).abs() < CROSSOVER_TOL);
    }

    #[test]
    fn crossover_needs_sign_change() {
        let r = find_crossover(
            CrossoverSystem::Hydrogenic,
            CrossoverQuantity::OneElectronEntropy,
            (2.0, 3.0),
            CrossoverMethod::Bisection,
            &QuadSpec::default(),
        );
        assert!(matches!(r, Err(Error::NoSignChange { .. })));
        let r = find_crossover(
            CrossoverSystem::Hydrogenic,
            CrossoverQuantity::TwoElectronEntropy,
            (1.0, 2.0),
            CrossoverMethod::Bisection,
            &QuadSpec::default(),
        );
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn charge_grid_inclusive() {
        let g = charge_grid(2.0, 30.0, 1.0).unwrap();
        assert_eq!(g.len(), 29);
        assert_eq!(g[28], 30.0);
        assert_eq!(charge_grid(2.0, 3.0, 0.25).unwrap().len(), 5);
        assert!(charge_grid(3.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in ["hydrogenic", "singlet", "triplet", "ni-triplet"] {
            assert_eq!(s.parse::<CrossoverSystem>().unwrap().as_str(), s);
        }
        for q in [
            CrossoverQuantity::OneElectronEntropy,
            CrossoverQuantity::TwoElectronEntropy,
            CrossoverQuantity::MutualInformation,
        ] {
            assert_eq!(q.as_str().parse::<CrossoverQuantity>().unwrap(), q);
        }
    }

    #[test]
    fn sweep_sorted_with_references() {
        let spec = QuadSpec::default();
        let rows = sweep(StateKind::Triplet, &[3.0, 2.0], &spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].z_nuclear < rows[1].z_nuclear);
        for r in &rows {
            assert!(r.report.i_r_prime.is_some());
            assert!(r.report.bound_margin() > 0.0);
        }
        let s = sweep(StateKind::Singlet, &[2.0], &spec).unwrap();
        assert!(s[0].report.i_r_prime.is_none());
        assert!(sweep(StateKind::Singlet, &[], &spec).is_err());
    }
}
