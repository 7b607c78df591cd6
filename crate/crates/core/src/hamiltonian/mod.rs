//! Energy of `H = −½∇₁² − ½∇₂² − Z/r₁ − Z/r₂ + 1/r₁₂` and variational
//! optimization of the two orbital exponents.
//!
//! Every matrix element reduces to moments `∫ rⁿ e^{-sr} dr`. For the
//! repulsion only the l = 0 term of `1/r₁₂` survives between spherical
//! densities, leaving the kernel `1/max(r₁, r₂)`, which is integrated
//! exactly with incomplete-gamma sums.

pub mod simplex;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbitals::{factorial, gamma_moment, OrbitalCombo};
use crate::wavefunctions::{StateKind, TwoElectronState};

pub use simplex::{SimplexOptions, SimplexOutcome};

/// A bound state must lie this far below `−Z²/2`.
pub const BOUND_MARGIN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub nuclear_attraction: f64,
    pub electron_repulsion: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn potential(&self) -> f64 {
        self.nuclear_attraction + self.electron_repulsion
    }

    /// Kinetic plus nuclear attraction.
    pub fn one_electron(&self) -> f64 {
        self.kinetic + self.nuclear_attraction
    }

    /// `|2T + V| / |E|`; zero at a stationary point of a scaling family.
    pub fn virial_defect(&self) -> f64 {
        (2.0 * self.kinetic + self.potential()).abs() / self.total.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub kind: StateKind,
    pub z_nuclear: f64,
    pub params: [f64; 2],
    pub energy: EnergyBreakdown,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl OptimizationResult {
    pub fn state(&self) -> Result<TwoElectronState> {
        TwoElectronState::build(self.kind, self.z_nuclear, self.params)
    }
}

/// `−½ ⟨a|∇²|b⟩`.
pub fn kinetic_element(a: &OrbitalCombo, b: &OrbitalCombo) -> f64 {
    // ∇²(rᵏe^{-ζr}) = [k(k+1) r^{k−2} − 2ζ(k+1) r^{k−1} + ζ² rᵏ] e^{-ζr}
    let mut sum = 0.0;
    for (cb, pb) in b.terms() {
        let k = pb.power() as i32;
        let z = pb.exponent();
        for (ca, pa) in a.terms() {
            let s = pa.exponent() + z;
            let base = 2 + pa.power() as i32 + k;
            let mut lap = z * z * gamma_moment(base, s) - 2.0 * z * (k + 1) as f64 * gamma_moment(base - 1, s);
            if k > 0 {
                lap += (k * (k + 1)) as f64 * gamma_moment(base - 2, s);
            }
            sum += ca * cb * lap;
        }
    }
    -0.5 * 4.0 * PI * sum
}

/// `⟨a| −Z/r |b⟩`.
pub fn nuclear_element(a: &OrbitalCombo, b: &OrbitalCombo, z: f64) -> f64 {
    -z * a.radial_moment(b, -1)
}

/// `⟨a|p²|b⟩` evaluated in momentum space by quadrature; equals twice the
/// kinetic element.
pub fn momentum_square_element(
    a: &OrbitalCombo,
    b: &OrbitalCombo,
    spec: &crate::quadrature::QuadSpec,
) -> Result<f64> {
    let scale = a.max_exponent().max(b.max_exponent());
    let spec = spec.with_scale(scale);
    Ok(crate::quadrature::integrate_radial(
        |p| 4.0 * PI * p.powi(4) * a.eval_momentum(p) * b.eval_momentum(p),
        &spec,
    )?
    .value)
}

/// Expansion of an orbital product `f(r) g(r)` into `(c, m, α)` terms
/// `c rᵐ e^{-αr}`.
fn product_terms(f: &OrbitalCombo, g: &OrbitalCombo) -> Vec<(f64, i32, f64)> {
    let mut out = Vec::with_capacity(f.terms().len() * g.terms().len());
    for (cf, pf) in f.terms() {
        for (cg, pg) in g.terms() {
            out.push((
                cf * cg,
                (pf.power() + pg.power()) as i32,
                pf.exponent() + pg.exponent(),
            ));
        }
    }
    out
}

/// `∫∫ r₁^{m+2} r₂^{n+2} e^{-αr₁ − βr₂} / max(r₁, r₂) dr₁ dr₂`.
pub fn max_kernel_moment(m: i32, alpha: f64, n: i32, beta: f64) -> f64 {
    let s = alpha + beta;
    // region r₂ < r₁: ∫ r₁^{m+1} e^{-αr₁} ∫₀^{r₁} r₂^{n+2} e^{-βr₂}
    let full = gamma_moment(n + 2, beta) * gamma_moment(m + 1, alpha);
    let mut tail = 0.0;
    for j in 0..=(n + 2) {
        tail += factorial((n + 2) as u32) / (factorial(j as u32) * beta.powi(n + 3 - j))
            * gamma_moment(m + 1 + j, s);
    }
    // region r₂ > r₁: ∫ r₁^{m+2} e^{-αr₁} ∫_{r₁}^∞ r₂^{n+1} e^{-βr₂}
    let mut upper = 0.0;
    for j in 0..=(n + 1) {
        upper += factorial((n + 1) as u32) / (factorial(j as u32) * beta.powi(n + 2 - j))
            * gamma_moment(m + 2 + j, s);
    }
    full - tail + upper
}

/// `∫∫ f(r₁) g(r₂) / r₁₂ d³r₁ d³r₂` for spherical densities given as orbital
/// products `f = f₁f₂`, `g = g₁g₂`.
pub fn coulomb_integral(
    f: (&OrbitalCombo, &OrbitalCombo),
    g: (&OrbitalCombo, &OrbitalCombo),
) -> f64 {
    let ft = product_terms(f.0, f.1);
    let gt = product_terms(g.0, g.1);
    let mut sum = 0.0;
    for &(cf, m, a) in &ft {
        for &(cg, n, b) in &gt {
            sum += cf * cg * max_kernel_moment(m, a, n, b);
        }
    }
    16.0 * PI * PI * sum
}

/// Energy expectation value of a normalized state.
pub fn energy(state: &TwoElectronState) -> EnergyBreakdown {
    let a = state.orbital_a();
    let b = state.orbital_b();
    let sigma = state.sym_sign();
    let c2 = state.norm_const().powi(2);
    let (s_aa, s_bb, s_ab) = state.overlaps();
    let z = state.z_nuclear();

    // ⟨Ψ|h₁ + h₂|Ψ⟩ = 2C²[h_aa S_bb + h_bb S_aa + 2σ h_ab S_ab]
    let one_body = |h: &dyn Fn(&OrbitalCombo, &OrbitalCombo) -> f64| {
        2.0 * c2 * (h(a, a) * s_bb + h(b, b) * s_aa + 2.0 * sigma * h(a, b) * s_ab)
    };
    let kinetic = one_body(&kinetic_element);
    let nuclear_attraction = one_body(&|x, y| nuclear_element(x, y, z));
    let electron_repulsion =
        c2 * (2.0 * coulomb_integral((a, a), (b, b)) + 2.0 * sigma * coulomb_integral((a, b), (a, b)));
    EnergyBreakdown {
        kinetic,
        nuclear_attraction,
        electron_repulsion,
        total: kinetic + nuclear_attraction + electron_repulsion,
    }
}

/// Starting exponents used when the caller has none.
pub fn default_start(kind: StateKind, z: f64) -> [f64; 2] {
    match kind {
        StateKind::Singlet => [1.1 * z, 0.6 * z],
        StateKind::Triplet => [z - 0.1, 0.5 * z - 0.05],
        StateKind::NonInteractingTriplet => [z, 0.5 * z],
    }
}

/// Minimizes the total energy over the two exponents.
///
/// Exponents are kept positive by mirroring (`ζ ↦ |ζ|`). Singlet exponents
/// are reported in descending order; the triplet's are not reordered because
/// swapping them changes which orbital carries the node. The non-interacting
/// triplet is returned as is at `(Z, Z/2)`.
///
/// Fails with [`Error::NoBoundState`] when the optimum does not lie below the
/// one-electron threshold `−Z²/2`.
pub fn optimize(kind: StateKind, z: f64, initial: [f64; 2]) -> Result<OptimizationResult> {
    optimize_with(kind, z, initial, &SimplexOptions::default())
}

pub fn optimize_with(
    kind: StateKind,
    z: f64,
    initial: [f64; 2],
    opts: &SimplexOptions,
) -> Result<OptimizationResult> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "nuclear charge must be positive, got {z}"
        )));
    }
    if kind == StateKind::NonInteractingTriplet {
        let state = TwoElectronState::non_interacting(z)?;
        return Ok(OptimizationResult {
            kind,
            z_nuclear: z,
            params: state.params(),
            energy: energy(&state),
            iterations: 0,
            evaluations: 0,
            converged: true,
        });
    }
    for &p in &initial {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::NonPositiveExponent(p));
        }
    }

    let objective = |q: &[f64]| -> f64 {
        match TwoElectronState::build(kind, z, [q[0].abs(), q[1].abs()]) {
            Ok(state) => energy(&state).total,
            Err(_) => f64::INFINITY,
        }
    };
    let outcome = simplex::minimize(objective, &initial, opts);
    if !outcome.converged {
        return Err(Error::OptimizerNonConvergence {
            evaluations: outcome.evaluations,
        });
    }
    let mut params = [outcome.x[0].abs(), outcome.x[1].abs()];
    if kind == StateKind::Singlet && params[0] < params[1] {
        params.swap(0, 1);
    }
    let state = TwoElectronState::build(kind, z, params)?;
    let energy = energy(&state);
    let threshold = -0.5 * z * z;
    if energy.total >= threshold - BOUND_MARGIN {
        return Err(Error::NoBoundState {
            z,
            energy: energy.total,
            threshold,
        });
    }
    Ok(OptimizationResult {
        kind,
        z_nuclear: z,
        params,
        energy,
        iterations: outcome.iterations,
        evaluations: outcome.evaluations,
        converged: true,
    })
}
