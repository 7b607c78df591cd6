//! One- and two-electron radial densities in position or momentum space.
//!
//! Densities are evaluated pointwise from the orbitals; nothing is tabulated.
//! All states here are built from s orbitals, so the three-dimensional
//! densities are already spherically symmetric and a radial profile is the
//! whole density.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbitals::{overlap, OrbitalCombo};
use crate::quadrature::{integrate_radial, QuadSpec};
use crate::wavefunctions::TwoElectronState;

/// Electrons in every state of the series.
pub const ELECTRONS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Integrates to N (one-electron) or N(N − 1) (pair).
    Particle,
    Unity,
}

#[inline]
fn eval_orbital(o: &OrbitalCombo, space: Space, x: f64) -> f64 {
    match space {
        Space::Position => o.eval_position(x),
        Space::Momentum => o.eval_momentum(x),
    }
}

/// Natural mapping scale for integrals over a state's densities: the widest
/// orbital in position space, the widest momentum distribution in momentum
/// space.
pub fn natural_scale(state: &TwoElectronState, space: Space) -> f64 {
    match space {
        Space::Position => 1.0 / state.min_exponent(),
        Space::Momentum => state.max_exponent(),
    }
}

/// `ρ(x) = Σᵢⱼ cᵢⱼ φᵢ(x) φⱼ(x)` over a small orbital set.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDensity {
    space: Space,
    normalization: Normalization,
    // integral under particle normalization
    particles: f64,
    orbitals: Vec<OrbitalCombo>,
    // row-major, symmetric
    coeffs: Vec<f64>,
    scale: f64,
}

impl RadialDensity {
    /// One-electron density of a two-electron state, normalized to N = 2:
    /// `ρ = 2C²[a² S_bb + b² S_aa + 2σ a b S_ab]`.
    pub fn of_state(state: &TwoElectronState, space: Space) -> Self {
        let (s_aa, s_bb, s_ab) = state.overlaps();
        let c2 = 2.0 * state.norm_const().powi(2);
        let cross = c2 * state.sym_sign() * s_ab;
        RadialDensity {
            space,
            normalization: Normalization::Particle,
            particles: ELECTRONS,
            orbitals: vec![state.orbital_a().clone(), state.orbital_b().clone()],
            coeffs: vec![c2 * s_bb, cross, cross, c2 * s_aa],
            scale: natural_scale(state, space),
        }
    }

    /// Hydrogenic 1s density for charge `z`. A one-electron system, so the
    /// particle and unity normalizations coincide; the density is tagged
    /// unity.
    pub fn hydrogenic(z: f64, space: Space) -> Result<Self> {
        let orbital = OrbitalCombo::slater(z)?;
        let norm = overlap(&orbital, &orbital);
        Ok(RadialDensity {
            space,
            normalization: Normalization::Unity,
            particles: 1.0,
            orbitals: vec![orbital],
            coeffs: vec![1.0 / norm],
            scale: match space {
                Space::Position => 1.0 / z,
                Space::Momentum => z,
            },
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_unity(&self) -> bool {
        self.normalization == Normalization::Unity
    }

    /// Declared value of `4π ∫ x² ρ dx`.
    pub fn declared_integral(&self) -> f64 {
        match self.normalization {
            Normalization::Particle => self.particles,
            Normalization::Unity => 1.0,
        }
    }

    /// Characteristic length (position) or momentum (momentum) scale.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.orbitals.len();
        let values: Vec<f64> = self
            .orbitals
            .iter()
            .map(|o| eval_orbital(o, self.space, x))
            .collect();
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum += self.coeffs[i * n + j] * values[i] * values[j];
            }
        }
        sum
    }

    /// Same density rescaled to integrate to one.
    pub fn to_unity(&self) -> Result<Self> {
        if self.is_unity() {
            return Err(Error::AlreadyUnity);
        }
        let mut out = self.clone();
        let k = 1.0 / self.particles;
        out.coeffs.iter_mut().for_each(|c| *c *= k);
        out.normalization = Normalization::Unity;
        Ok(out)
    }

    /// `4π ∫ x² ρ dx` by quadrature.
    pub fn integral(&self, spec: &QuadSpec) -> Result<f64> {
        let spec = spec.with_scale(self.scale);
        Ok(integrate_radial(|x| 4.0 * PI * x * x * self.eval(x), &spec)?.value)
    }

    /// Spherical average. For s-orbital states it is the density itself.
    pub fn spherical_average(&self, x: f64) -> f64 {
        self.eval(x)
    }
}

/// `Γ(x₁, x₂) = N(N − 1) |Ψ|²` or its unity-normalized form.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRadialDensity {
    space: Space,
    normalization: Normalization,
    state: TwoElectronState,
}

impl PairRadialDensity {
    pub fn of_state(state: &TwoElectronState, space: Space) -> Self {
        PairRadialDensity {
            space,
            normalization: Normalization::Particle,
            state: state.clone(),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_unity(&self) -> bool {
        self.normalization == Normalization::Unity
    }

    pub fn state(&self) -> &TwoElectronState {
        &self.state
    }

    pub fn declared_integral(&self) -> f64 {
        match self.normalization {
            Normalization::Particle => ELECTRONS * (ELECTRONS - 1.0),
            Normalization::Unity => 1.0,
        }
    }

    pub fn scale(&self) -> f64 {
        natural_scale(&self.state, self.space)
    }

    fn factor(&self) -> f64 {
        match self.normalization {
            Normalization::Particle => ELECTRONS * (ELECTRONS - 1.0),
            Normalization::Unity => 1.0,
        }
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let psi = match self.space {
            Space::Position => self.state.amplitude(x1, x2),
            Space::Momentum => self.state.amplitude_p(x1, x2),
        };
        self.factor() * psi * psi
    }

    /// Evaluates from orbital values already computed at both points.
    #[inline]
    pub fn eval_from_orbitals(&self, a1: f64, b1: f64, a2: f64, b2: f64) -> f64 {
        let psi = self.state.combine(a1, b1, a2, b2);
        self.factor() * psi * psi
    }

    /// `(a(x), b(x))` in this density's space.
    #[inline]
    pub fn orbital_values(&self, x: f64) -> (f64, f64) {
        (
            eval_orbital(self.state.orbital_a(), self.space, x),
            eval_orbital(self.state.orbital_b(), self.space, x),
        )
    }

    pub fn to_unity(&self) -> Result<Self> {
        if self.is_unity() {
            return Err(Error::AlreadyUnity);
        }
        Ok(PairRadialDensity {
            normalization: Normalization::Unity,
            ..self.clone()
        })
    }

    /// `4π ∫ x₂² Γ(x₁, x₂) dx₂` by quadrature. Equals `(N − 1) ρ(x₁)` for the
    /// particle normalization and `ρᵘ(x₁)` for unity.
    pub fn marginal(&self, x1: f64, spec: &QuadSpec) -> Result<f64> {
        let spec = spec.with_scale(self.scale());
        Ok(integrate_radial(|x2| 4.0 * PI * x2 * x2 * self.eval(x1, x2), &spec)?.value)
    }

    /// The one-electron density this pair density reduces to, under the
    /// matching normalization.
    pub fn one_density(&self) -> RadialDensity {
        let d = RadialDensity::of_state(&self.state, self.space);
        match self.normalization {
            Normalization::Particle => d,
            Normalization::Unity => d.to_unity().expect("fresh density is particle-normalized"),
        }
    }
}

/// `ρ` or `π` of a state, normalized to N.
pub fn one_density(state: &TwoElectronState, space: Space) -> RadialDensity {
    RadialDensity::of_state(state, space)
}

/// `Γ` or `Π` of a state, normalized to N(N − 1).
pub fn pair_density(state: &TwoElectronState, space: Space) -> PairRadialDensity {
    PairRadialDensity::of_state(state, space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_pair;
    use crate::wavefunctions::StateKind;

    fn states() -> Vec<TwoElectronState> {
        vec![
            TwoElectronState::build(StateKind::Singlet, 2.0, [2.18, 1.19]).unwrap(),
            TwoElectronState::build(StateKind::Triplet, 2.0, [1.99, 0.78]).unwrap(),
            TwoElectronState::non_interacting(2.0).unwrap(),
        ]
    }

    #[test]
    fn product_singlet_density() {
        let zeta: f64 = 1.7;
        let s = TwoElectronState::build(StateKind::Singlet, 2.0, [zeta, zeta]).unwrap();
        let rho = one_density(&s, Space::Position);
        for r in [0.0, 0.5, 2.0] {
            let expect = 2.0 * zeta.powi(3) / PI * (-2.0 * zeta * r).exp();
            assert!((rho.eval(r) - expect).abs() < 1e-13 * expect.max(1.0));
        }
        let gamma = pair_density(&s, Space::Position);
        for (x, y) in [(0.2, 0.9), (1.5, 0.1)] {
            let product = rho.eval(x) * rho.eval(y) / 2.0;
            assert!((gamma.eval(x, y) - product).abs() < 1e-13 * product);
        }
    }

    #[test]
    fn normalizations() {
        let spec = QuadSpec::default();
        for s in &states() {
            for space in [Space::Position, Space::Momentum] {
                let rho = one_density(s, space);
                assert!((rho.integral(&spec).unwrap() - 2.0).abs() < 2e-8);
                let unity = rho.to_unity().unwrap();
                assert!((unity.integral(&spec).unwrap() - 1.0).abs() < 1e-8);
                let pair = pair_density(s, space);
                let pspec = spec.with_scale(pair.scale());
                let total = integrate_pair(
                    |x, y| 16.0 * PI * PI * x * x * y * y * pair.eval(x, y),
                    &pspec,
                )
                .unwrap()
                .value;
                assert!((total - 2.0).abs() < 2e-8, "{space:?} {total}");
            }
        }
    }

    #[test]
    fn to_unity_rejects_second_application() {
        let s = TwoElectronState::non_interacting(2.0).unwrap();
        let rho = one_density(&s, Space::Position).to_unity().unwrap();
        assert_eq!(rho.to_unity(), Err(Error::AlreadyUnity));
        let pair = pair_density(&s, Space::Momentum).to_unity().unwrap();
        assert_eq!(pair.to_unity(), Err(Error::AlreadyUnity));
        assert!(RadialDensity::hydrogenic(1.0, Space::Position)
            .unwrap()
            .to_unity()
            .is_err());
    }

    #[test]
    fn marginal_consistency() {
        let spec = QuadSpec::default();
        for s in &states() {
            for space in [Space::Position, Space::Momentum] {
                let rho = one_density(s, space);
                let pair = pair_density(s, space);
                for x in [0.2, 1.0, 3.0] {
                    let m = pair.marginal(x, &spec).unwrap();
                    assert!((m - rho.eval(x)).abs() < 1e-8, "{space:?} x={x}: {m} vs {}", rho.eval(x));
                }
            }
        }
    }

    #[test]
    fn non_interacting_density_at_nucleus() {
        // hydrogenic 1s and 2s with ⟨1s|2s⟩ = 0 give ρ(0) = |1s(0)|² + |2s(0)|²
        let z: f64 = 2.0;
        let s = TwoElectronState::non_interacting(z).unwrap();
        let rho = one_density(&s, Space::Position);
        // |1s(0)|² = Z³/π, |2s(0)|² = Z³/(8π)
        let expect = z.powi(3) / PI + z.powi(3) / (8.0 * PI);
        assert!((rho.eval(0.0) - expect).abs() < 1e-12 * expect);
        let m = pair_density(&s, Space::Position)
            .marginal(0.0, &QuadSpec::default())
            .unwrap();
        assert!((m - expect).abs() < 1e-8 * expect);
    }

    #[test]
    fn triplet_pair_vanishes_on_diagonal() {
        for s in &states()[1..] {
            for space in [Space::Position, Space::Momentum] {
                let pair = pair_density(s, space);
                for x in [0.0, 0.3, 1.0, 4.0] {
                    assert_eq!(pair.eval(x, x), 0.0);
                }
            }
        }
    }

    #[test]
    fn hydrogenic_density() {
        let rho = RadialDensity::hydrogenic(1.0, Space::Position).unwrap();
        assert!((rho.eval(0.0) - 1.0 / PI).abs() < 1e-15);
        let pi = RadialDensity::hydrogenic(1.0, Space::Momentum).unwrap();
        assert!((pi.eval(0.0) - 8.0 / (PI * PI)).abs() < 1e-14);
    }
}
