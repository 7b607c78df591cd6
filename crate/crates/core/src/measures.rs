//! Shannon entropies, mutual information and their local densities.
//!
//! Scalars are reported in nats for unity-normalized densities:
//!
//! ```text
//! S_ρ = −4π ∫ x² ρ ln ρ dx
//! S_Γ = −(4π)² ∫∫ x₁² x₂² Γ ln Γ dx₁ dx₂
//! I   = 2 S_ρ − S_Γ = ∫∫ Γ ln[Γ / (ρ ⊗ ρ)]
//! ```
//!
//! The momentum information density uses the particle-normalized densities
//! (`∫π = N`, `∫Π = N(N − 1)`, N = 2):
//!
//! ```text
//! I_p(p) = (ln 2 / 2) I(p) + S_π(p) / 2
//!        + 8π² p² ∫ p₁² Π(p, p₁) ln[Π(p, p₁) / π(p₁)] dp₁
//! ```
//!
//! with `I(p) = 4π p² π(p)` and `S_π(p) = −4π p² π ln π`. Under this
//! convention `∫ I_p(p) dp` is exactly the unity-normalized `2 S_π − S_Π`.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::densities::{one_density, pair_density, PairRadialDensity, RadialDensity, Space};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_interval, integrate_pair_symmetric, integrate_radial, log_space, trapezoid, QuadSpec,
};
use crate::wavefunctions::{StateKind, TwoElectronState};

/// Densities below this are treated as zero inside logarithms.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// `3(1 + ln π)`, lower bound on `S_ρ + S_π`.
pub const ENTROPY_BOUND_1E: f64 = 6.434_189_657_548_2;

/// `6(1 + ln π)`, lower bound on `S_Γ + S_Π`.
pub const ENTROPY_BOUND_2E: f64 = 12.868_379_315_096_4;

/// Relative tolerance of the marginal check in [`mutual_information`].
pub const MARGINAL_TOL: f64 = 1e-6;

/// Default profile grid: points per curve.
pub const PROFILE_POINTS: usize = 400;

/// Default profile range in position space (bohr).
pub const PROFILE_RANGE_R: (f64, f64) = (1e-3, 20.0);

/// Default profile range in momentum space (atomic units).
pub const PROFILE_RANGE_P: (f64, f64) = (1e-3, 10.0);

/// `−d ln d` with `0 ln 0 = 0`.
#[inline]
fn neg_xlnx(d: f64) -> f64 {
    if d < DENSITY_FLOOR {
        0.0
    } else {
        -d * d.ln()
    }
}

/// One-electron entropy of a unity-normalized density.
pub fn shannon_one(d: &RadialDensity, spec: &QuadSpec) -> Result<f64> {
    if !d.is_unity() {
        return Err(Error::NotUnityNormalized);
    }
    let spec = spec.with_scale(d.scale());
    let four_pi = 4.0 * PI;
    Ok(integrate_radial(|x| four_pi * x * x * neg_xlnx(d.eval(x)), &spec)?.value)
}

/// Two-electron entropy of a unity-normalized pair density.
pub fn shannon_two(pair: &PairRadialDensity, spec: &QuadSpec) -> Result<f64> {
    if !pair.is_unity() {
        return Err(Error::NotUnityNormalized);
    }
    let spec = spec.with_scale(pair.scale());
    let w = 16.0 * PI * PI;
    Ok(integrate_pair_symmetric(
        |x, y| {
            let (a1, b1) = pair.orbital_values(x);
            let (a2, b2) = pair.orbital_values(y);
            w * x * x * y * y * neg_xlnx(pair.eval_from_orbitals(a1, b1, a2, b2))
        },
        &spec,
    )?
    .value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiMode {
    /// Integrates the Kullback-Leibler form directly.
    Direct,
    /// `2 S_ρ − S_Γ`.
    EntropyDifference,
}

/// Checks that `one` is the marginal of `pair` at a few points around the
/// density's natural scale.
fn check_marginal(pair: &PairRadialDensity, one: &RadialDensity, spec: &QuadSpec) -> Result<()> {
    if pair.space() != one.space() {
        return Err(Error::InvalidInput(
            "pair and one-electron densities live in different spaces".into(),
        ));
    }
    let tight = QuadSpec {
        rel_tol: spec.rel_tol.min(1e-10),
        ..*spec
    };
    for k in [0.3, 1.0, 3.0] {
        let x = k * one.scale();
        let expect = one.eval(x);
        let got = pair.marginal(x, &tight)?;
        let deviation = (got - expect).abs();
        if deviation > MARGINAL_TOL * expect.abs().max(1e-12) {
            return Err(Error::MarginalMismatch { at: x, deviation });
        }
    }
    Ok(())
}

/// Mutual information between the two electrons in one space.
///
/// Both densities must be unity-normalized and `one` must be the marginal of
/// `pair`.
pub fn mutual_information(
    pair: &PairRadialDensity,
    one: &RadialDensity,
    mode: MiMode,
    spec: &QuadSpec,
) -> Result<f64> {
    if !pair.is_unity() || !one.is_unity() {
        return Err(Error::NotUnityNormalized);
    }
    check_marginal(pair, one, spec)?;
    match mode {
        MiMode::EntropyDifference => Ok(2.0 * shannon_one(one, spec)? - shannon_two(pair, spec)?),
        MiMode::Direct => {
            let spec = spec.with_scale(pair.scale());
            let w = 16.0 * PI * PI;
            let est = integrate_pair_symmetric(
                |x, y| {
                    let g = pair.eval(x, y);
                    if g < DENSITY_FLOOR {
                        return 0.0;
                    }
                    w * x * x * y * y * g * (g.ln() - one.eval(x).ln() - one.eval(y).ln())
                },
                &spec,
            )?;
            Ok(est.value)
        }
    }
}

/// `I − I_NI`, the part of the mutual information due to the interaction.
pub fn reference_subtracted(value: f64, reference: f64) -> f64 {
    value - reference
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileQuantity {
    /// `−4π r² ρ ln ρ`
    EntropyDensityR,
    /// `−4π p² π ln π`
    EntropyDensityP,
    /// Local momentum-space mutual information.
    InfoDensityP,
    /// `4π p² π(p)`
    RadialMomentum,
}

impl ProfileQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileQuantity::EntropyDensityR => "entropy-density-r",
            ProfileQuantity::EntropyDensityP => "entropy-density-p",
            ProfileQuantity::InfoDensityP => "info-density-p",
            ProfileQuantity::RadialMomentum => "radial-momentum",
        }
    }

    pub fn space(self) -> Space {
        match self {
            ProfileQuantity::EntropyDensityR => Space::Position,
            _ => Space::Momentum,
        }
    }

    /// The default grid for this quantity.
    pub fn default_grid(self) -> Vec<f64> {
        let (lo, hi) = match self.space() {
            Space::Position => PROFILE_RANGE_R,
            Space::Momentum => PROFILE_RANGE_P,
        };
        log_space(lo, hi, PROFILE_POINTS)
    }
}

impl std::str::FromStr for ProfileQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ProfileQuantity::EntropyDensityR,
            ProfileQuantity::EntropyDensityP,
            ProfileQuantity::InfoDensityP,
            ProfileQuantity::RadialMomentum,
        ]
        .into_iter()
        .find(|q| q.as_str() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown profile quantity '{s}'")))
    }
}

/// A tabulated radial curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub quantity: ProfileQuantity,
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub z_nuclear: Option<f64>,
    pub kind: Option<StateKind>,
}

impl ProfileCurve {
    fn new(quantity: ProfileQuantity, abscissae: Vec<f64>, values: Vec<f64>) -> Self {
        ProfileCurve {
            quantity,
            abscissae,
            values,
            z_nuclear: None,
            kind: None,
        }
    }

    /// Tags the curve with the system it was computed for.
    pub fn with_source(mut self, z_nuclear: f64, kind: Option<StateKind>) -> Self {
        self.z_nuclear = Some(z_nuclear);
        self.kind = kind;
        self
    }

    /// Trapezoid integral over the tabulated range.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.abscissae, &self.values)
    }

    /// `(abscissa, value)` of the largest value.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.abscissae
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| (x, v))
            .fold(None, |best, (x, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((x, v)),
            })
    }

    /// `(abscissa, value)` of the smallest value with abscissa `≤ upto`.
    pub fn min_below(&self, upto: f64) -> Option<(f64, f64)> {
        self.abscissae
            .iter()
            .zip(&self.values)
            .filter(|(&x, _)| x <= upto)
            .map(|(&x, &v)| (x, v))
            .fold(None, |best, (x, v)| match best {
                Some((_, bv)) if bv <= v => best,
                _ => Some((x, v)),
            })
    }
}

fn check_grid(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("empty profile grid".into()));
    }
    if xs.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(Error::InvalidInput(
            "profile abscissae must be finite and non-negative".into(),
        ));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "profile abscissae must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `−4π x² d ln d` on `xs`, in whatever normalization `d` carries.
pub fn entropy_density(d: &RadialDensity, xs: &[f64]) -> Result<ProfileCurve> {
    check_grid(xs)?;
    let quantity = match d.space() {
        Space::Position => ProfileQuantity::EntropyDensityR,
        Space::Momentum => ProfileQuantity::EntropyDensityP,
    };
    let values = xs
        .iter()
        .map(|&x| 4.0 * PI * x * x * neg_xlnx(d.eval(x)))
        .collect();
    Ok(ProfileCurve::new(quantity, xs.to_vec(), values))
}

/// `4π p² π(p)` on `ps`.
pub fn radial_momentum(d: &RadialDensity, ps: &[f64]) -> Result<ProfileCurve> {
    check_grid(ps)?;
    if d.space() != Space::Momentum {
        return Err(Error::InvalidInput(
            "radial momentum distribution needs a momentum density".into(),
        ));
    }
    let values = ps.iter().map(|&p| 4.0 * PI * p * p * d.eval(p)).collect();
    Ok(ProfileCurve::new(ProfileQuantity::RadialMomentum, ps.to_vec(), values))
}

/// Local momentum-space mutual information on `ps`.
pub fn info_density_p(state: &TwoElectronState, ps: &[f64], spec: &QuadSpec) -> Result<ProfileCurve> {
    check_grid(ps)?;
    let one = one_density(state, Space::Momentum);
    let pair = pair_density(state, Space::Momentum);
    let inner_spec = spec.with_scale(pair.scale());
    let values: Result<Vec<f64>> = ps
        .par_iter()
        .map(|&p| {
            let rho_p = one.eval(p);
            let radial = 4.0 * PI * p * p * rho_p;
            let local_s = 4.0 * PI * p * p * neg_xlnx(rho_p);
            let kernel = |q: f64| {
                let g = pair.eval(p, q);
                if g < DENSITY_FLOOR {
                    0.0
                } else {
                    q * q * g * (g.ln() - one.eval(q).ln())
                }
            };
            // split at p₁ = p where a triplet pair density has its zero
            let below = integrate_interval(kernel, 0.0, p, &inner_spec)?.value;
            let above = integrate_radial(|u| kernel(p + u), &inner_spec)?.value;
            Ok(0.5 * LN_2 * radial + 0.5 * local_s + 8.0 * PI * PI * p * p * (below + above))
        })
        .collect();
    Ok(ProfileCurve::new(ProfileQuantity::InfoDensityP, ps.to_vec(), values?)
        .with_source(state.z_nuclear(), Some(state.kind())))
}

/// Any profile of a two-electron state. Entropy densities and the radial
/// momentum distribution use unity-normalized densities.
pub fn profile(
    state: &TwoElectronState,
    quantity: ProfileQuantity,
    xs: &[f64],
    spec: &QuadSpec,
) -> Result<ProfileCurve> {
    let unity = |space| {
        one_density(state, space)
            .to_unity()
            .expect("fresh density is particle-normalized")
    };
    let curve = match quantity {
        ProfileQuantity::EntropyDensityR => entropy_density(&unity(Space::Position), xs)?,
        ProfileQuantity::EntropyDensityP => entropy_density(&unity(Space::Momentum), xs)?,
        ProfileQuantity::RadialMomentum => radial_momentum(&unity(Space::Momentum), xs)?,
        ProfileQuantity::InfoDensityP => info_density_p(state, xs, spec)?,
    };
    Ok(curve.with_source(state.z_nuclear(), Some(state.kind())))
}

/// Every scalar measure of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub z_nuclear: f64,
    pub kind: StateKind,
    pub s_rho_u: f64,
    pub s_pi_u: f64,
    pub s_gamma_u: f64,
    pub s_pi2_u: f64,
    pub entropy_sum_1e: f64,
    pub entropy_sum_2e: f64,
    pub i_r: f64,
    pub i_p: f64,
    pub i_r_prime: Option<f64>,
    pub i_p_prime: Option<f64>,
    pub s_cond_r: f64,
    pub s_cond_p: f64,
}

impl MeasureReport {
    pub fn evaluate(state: &TwoElectronState, spec: &QuadSpec) -> Result<Self> {
        let space_entropies = |space: Space| -> Result<(f64, f64)> {
            let one = one_density(state, space).to_unity()?;
            let pair = pair_density(state, space).to_unity()?;
            let (s1, s2) = rayon::join(|| shannon_one(&one, spec), || shannon_two(&pair, spec));
            Ok((s1?, s2?))
        };
        let (r, p) = rayon::join(
            || space_entropies(Space::Position),
            || space_entropies(Space::Momentum),
        );
        let ((s_rho_u, s_gamma_u), (s_pi_u, s_pi2_u)) = (r?, p?);
        let s_cond_r = s_gamma_u - s_rho_u;
        let s_cond_p = s_pi2_u - s_pi_u;
        Ok(MeasureReport {
            z_nuclear: state.z_nuclear(),
            kind: state.kind(),
            s_rho_u,
            s_pi_u,
            s_gamma_u,
            s_pi2_u,
            entropy_sum_1e: s_rho_u + s_pi_u,
            entropy_sum_2e: s_gamma_u + s_pi2_u,
            i_r: s_rho_u - s_cond_r,
            i_p: s_pi_u - s_cond_p,
            i_r_prime: None,
            i_p_prime: None,
            s_cond_r,
            s_cond_p,
        })
    }

    /// Fills the reference-subtracted mutual information from the report of
    /// the non-interacting reference at the same charge.
    pub fn with_reference(mut self, reference: &MeasureReport) -> Result<Self> {
        if reference.z_nuclear != self.z_nuclear {
            return Err(Error::InvalidInput(format!(
                "reference at Z = {} does not match Z = {}",
                reference.z_nuclear, self.z_nuclear
            )));
        }
        self.i_r_prime = Some(reference_subtracted(self.i_r, reference.i_r));
        self.i_p_prime = Some(reference_subtracted(self.i_p, reference.i_p));
        Ok(self)
    }

    /// Smallest slack among the entropic and information inequalities; a
    /// negative value means a bound is violated.
    pub fn bound_margin(&self) -> f64 {
        [
            self.entropy_sum_1e - ENTROPY_BOUND_1E,
            self.entropy_sum_2e - ENTROPY_BOUND_2E,
            self.i_r,
            self.i_p,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::log_space;

    fn hydrogen(z: f64, space: Space) -> RadialDensity {
        RadialDensity::hydrogenic(z, space).unwrap()
    }

    #[test]
    fn bound_constants() {
        assert!((ENTROPY_BOUND_1E - 3.0 * (1.0 + PI.ln())).abs() < 1e-15);
        assert!((ENTROPY_BOUND_2E - 6.0 * (1.0 + PI.ln())).abs() < 1e-14);
    }

    #[test]
    fn hydrogenic_position_entropy() {
        let s = shannon_one(&hydrogen(1.0, Space::Position), &QuadSpec::default()).unwrap();
        // ln π + 2⟨r⟩ with ⟨r⟩ = 3/2
        assert!((s - (3.0 + PI.ln())).abs() < 1e-9);
        assert!((s - 4.14473).abs() < 1e-5);
    }

    #[test]
    fn hydrogenic_momentum_entropy() {
        let s = shannon_one(&hydrogen(1.0, Space::Momentum), &QuadSpec::default()).unwrap();
        // ln(π²/8) + 4⟨ln(1 + p²)⟩, the average taken by an independent rule
        let spec = QuadSpec::default().with_mapping(crate::Mapping::Algebraic);
        let avg = integrate_radial(
            |p| 4.0 * PI * p * p * 8.0 / (PI * PI * (1.0 + p * p).powi(4)) * (1.0 + p * p).ln(),
            &spec,
        )
        .unwrap()
        .value;
        let closed = (PI * PI / 8.0).ln() + 4.0 * avg;
        assert!((s - closed).abs() < 1e-9);
        assert!((s - 2.42186).abs() < 1e-5);
    }

    #[test]
    fn hydrogenic_scaling() {
        let spec = QuadSpec::default();
        let r1 = shannon_one(&hydrogen(1.0, Space::Position), &spec).unwrap();
        let p1 = shannon_one(&hydrogen(1.0, Space::Momentum), &spec).unwrap();
        for z in [0.5, 2.0, 7.0] {
            let rz = shannon_one(&hydrogen(z, Space::Position), &spec).unwrap();
            let pz = shannon_one(&hydrogen(z, Space::Momentum), &spec).unwrap();
            assert!((rz - r1 + 3.0 * z.ln()).abs() < 1e-8);
            assert!((pz - p1 - 3.0 * z.ln()).abs() < 1e-8);
            assert!((rz + pz - r1 - p1).abs() < 1e-8);
        }
    }

    #[test]
    fn requires_unity() {
        let s = TwoElectronState::non_interacting(2.0).unwrap();
        let spec = QuadSpec::default();
        assert_eq!(
            shannon_one(&one_density(&s, Space::Position), &spec),
            Err(Error::NotUnityNormalized)
        );
        assert_eq!(
            shannon_two(&pair_density(&s, Space::Position), &spec),
            Err(Error::NotUnityNormalized)
        );
    }

    #[test]
    fn product_state_is_uncorrelated() {
        let spec = QuadSpec::default();
        let s = TwoElectronState::build(StateKind::Singlet, 2.0, [1.6875, 1.6875]).unwrap();
        for space in [Space::Position, Space::Momentum] {
            let one = one_density(&s, space).to_unity().unwrap();
            let pair = pair_density(&s, space).to_unity().unwrap();
            let s1 = shannon_one(&one, &spec).unwrap();
            let s2 = shannon_two(&pair, &spec).unwrap();
            assert!((s2 - 2.0 * s1).abs() < 1e-8, "{space:?}");
            for mode in [MiMode::Direct, MiMode::EntropyDifference] {
                let i = mutual_information(&pair, &one, mode, &spec).unwrap();
                assert!(i.abs() < 1e-8, "{space:?} {mode:?} {i}");
            }
        }
    }

    #[test]
    fn modes_agree() {
        let spec = QuadSpec::default();
        let states = [
            TwoElectronState::build(StateKind::Singlet, 2.0, [2.18, 1.19]).unwrap(),
            TwoElectronState::build(StateKind::Triplet, 2.0, [1.99, 0.78]).unwrap(),
            TwoElectronState::non_interacting(3.0).unwrap(),
        ];
        for s in &states {
            for space in [Space::Position, Space::Momentum] {
                let one = one_density(s, space).to_unity().unwrap();
                let pair = pair_density(s, space).to_unity().unwrap();
                let d = mutual_information(&pair, &one, MiMode::Direct, &spec).unwrap();
                let e = mutual_information(&pair, &one, MiMode::EntropyDifference, &spec).unwrap();
                assert!((d - e).abs() < 1e-6, "{:?} {space:?}: {d} vs {e}", s.kind());
                assert!(d > 0.0);
            }
        }
    }

    #[test]
    fn marginal_mismatch_detected() {
        let spec = QuadSpec::default();
        let s = TwoElectronState::non_interacting(2.0).unwrap();
        let pair = pair_density(&s, Space::Position).to_unity().unwrap();
        let wrong = hydrogen(2.0, Space::Position);
        assert!(matches!(
            mutual_information(&pair, &wrong, MiMode::Direct, &spec),
            Err(Error::MarginalMismatch { .. })
        ));
        let unnormalized = one_density(&s, Space::Position);
        assert_eq!(
            mutual_information(&pair, &unnormalized, MiMode::Direct, &spec),
            Err(Error::NotUnityNormalized)
        );
    }

    #[test]
    fn non_interacting_reference_values() {
        let r = MeasureReport::evaluate(&TwoElectronState::non_interacting(2.0).unwrap(), &QuadSpec::default())
            .unwrap();
        assert!((r.i_r - 0.50).abs() < 0.005, "{}", r.i_r);
        assert!((r.i_p - 0.51).abs() < 0.005, "{}", r.i_p);
        assert_eq!(r.s_cond_r, r.s_gamma_u - r.s_rho_u);
        assert_eq!(r.i_r, r.s_rho_u - r.s_cond_r);
        assert!(r.bound_margin() > 0.0);
    }

    #[test]
    fn reference_subtraction() {
        assert_eq!(reference_subtracted(0.5, 0.5), 0.0);
        let spec = QuadSpec::default();
        let ni = MeasureReport::evaluate(&TwoElectronState::non_interacting(2.0).unwrap(), &spec).unwrap();
        let t = TwoElectronState::build(StateKind::Triplet, 2.0, [1.99363, 0.77547]).unwrap();
        let r = MeasureReport::evaluate(&t, &spec).unwrap().with_reference(&ni).unwrap();
        let (ir, ip) = (r.i_r_prime.unwrap(), r.i_p_prime.unwrap());
        assert!(ir > ip && ip > 0.0, "{ir} {ip}");
        let other = MeasureReport::evaluate(&TwoElectronState::non_interacting(3.0).unwrap(), &spec).unwrap();
        assert!(r.with_reference(&other).is_err());
    }

    #[test]
    fn entropy_density_integrates_to_scalar() {
        let spec = QuadSpec::default();
        let d = hydrogen(1.0, Space::Position);
        let scalar = shannon_one(&d, &spec).unwrap();
        // Gauss nodes reproduce the scalar exactly
        let grid = crate::RadialGrid::new(spec.mapping, d.scale(), 64);
        let curve = entropy_density(&d, grid.nodes()).unwrap();
        let on_nodes: f64 = curve.values.iter().zip(grid.weights()).map(|(v, w)| v * w).sum();
        assert!((on_nodes - scalar).abs() < 1e-6 * scalar);
        let fine = entropy_density(&d, &log_space(1e-5, 60.0, 4000)).unwrap();
        assert!((fine.integral() - scalar).abs() < 1e-4);
        assert!(fine.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn grid_validation() {
        let d = hydrogen(1.0, Space::Position);
        assert!(entropy_density(&d, &[]).is_err());
        assert!(entropy_density(&d, &[1.0, 0.5]).is_err());
        assert!(radial_momentum(&d, &[1.0]).is_err());
    }

    #[test]
    fn info_density_of_product_state_vanishes() {
        let s = TwoElectronState::build(StateKind::Singlet, 2.0, [1.6875, 1.6875]).unwrap();
        let curve = info_density_p(&s, &[0.1, 0.7, 2.0, 5.0], &QuadSpec::default()).unwrap();
        for v in &curve.values {
            assert!(v.abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn profile_quantity_names() {
        for q in [
            ProfileQuantity::EntropyDensityR,
            ProfileQuantity::EntropyDensityP,
            ProfileQuantity::InfoDensityP,
            ProfileQuantity::RadialMomentum,
        ] {
            assert_eq!(q.as_str().parse::<ProfileQuantity>().unwrap(), q);
        }
        let g = ProfileQuantity::EntropyDensityP.default_grid();
        assert_eq!(g.len(), PROFILE_POINTS);
        assert_eq!(g[g.len() - 1], PROFILE_RANGE_P.1);
    }
}
