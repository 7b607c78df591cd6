//! Entropic and information measures for the helium isoelectronic series.
//!
//! The crate builds variationally optimized singlet and triplet two-electron
//! wavefunctions from s-type Slater primitives, carries them into momentum
//! space through closed-form transforms, and evaluates one- and two-electron
//! Shannon entropies, mutual information and their local densities in both
//! spaces.
//!
//! Modules, bottom-up:
//!
//! - [`quadrature`]: mapped composite Gauss-Legendre rules on `[0, ∞)` and
//!   `[0, ∞)²`, plus bisection.
//! - [`orbitals`]: Slater primitives, their linear combinations and momentum
//!   transforms.
//! - [`wavefunctions`]: normalized two-electron states.
//! - [`densities`]: one- and two-electron radial densities.
//! - [`hamiltonian`]: energy expectation values and the Nelder-Mead optimizer.
//! - [`measures`]: entropies, mutual information and profile curves.
//! - [`series`]: sweeps over nuclear charge and crossover searches.

pub mod densities;
pub mod error;
pub mod hamiltonian;
pub mod measures;
pub mod orbitals;
pub mod quadrature;
pub mod series;
pub mod wavefunctions;

pub use densities::{Normalization, PairRadialDensity, RadialDensity, Space};
pub use error::{Error, Result};
pub use hamiltonian::{EnergyBreakdown, OptimizationResult};
pub use measures::{MeasureReport, MiMode, ProfileCurve, ProfileQuantity};
pub use orbitals::{OrbitalCombo, SlaterPrimitive};
pub use quadrature::{Estimate, Mapping, QuadSpec, RadialGrid};
pub use series::{CrossoverMethod, CrossoverQuantity, CrossoverResult, SweepRow};
pub use wavefunctions::{StateKind, TwoElectronState};
