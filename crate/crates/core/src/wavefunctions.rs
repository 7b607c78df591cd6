//! Normalized two-electron spatial wavefunctions
//!
//! ```text
//! singlet: Ψ = C [e^{-Z₁r₁} e^{-Z₂r₂} + e^{-Z₂r₁} e^{-Z₁r₂}]
//! triplet: Ψ = C [e^{-Z₁r₁} (1 − Z₂r₂) e^{-Z₂r₂} − (1 − Z₂r₁) e^{-Z₂r₁} e^{-Z₁r₂}]
//! ```
//!
//! Both have the form `C [a(1) b(2) + σ b(1) a(2)]`. The momentum-space
//! amplitude is the same combination of the transformed orbitals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbitals::{overlap, OrbitalCombo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Singlet,
    Triplet,
    /// Triplet with exponents pinned at `(Z, Z/2)`: hydrogenic 1s and 2s.
    #[serde(rename = "ni-triplet")]
    NonInteractingTriplet,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Singlet => "singlet",
            StateKind::Triplet => "triplet",
            StateKind::NonInteractingTriplet => "ni-triplet",
        }
    }

    /// `+1` for symmetric spatial parts, `−1` for antisymmetric ones.
    pub fn sym_sign(self) -> f64 {
        match self {
            StateKind::Singlet => 1.0,
            StateKind::Triplet | StateKind::NonInteractingTriplet => -1.0,
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singlet" => Ok(StateKind::Singlet),
            "triplet" => Ok(StateKind::Triplet),
            "ni-triplet" | "ni" | "non-interacting-triplet" => Ok(StateKind::NonInteractingTriplet),
            other => Err(Error::InvalidInput(format!("unknown state kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoElectronState {
    kind: StateKind,
    z_nuclear: f64,
    orbital_a: OrbitalCombo,
    orbital_b: OrbitalCombo,
    sym_sign: f64,
    norm_const: f64,
    params: [f64; 2],
    // ⟨a|a⟩, ⟨b|b⟩, ⟨a|b⟩
    overlaps: [f64; 3],
}

impl TwoElectronState {
    /// Builds and normalizes a state.
    ///
    /// For [`StateKind::NonInteractingTriplet`] the exponents must be
    /// `(Z, Z/2)`; use [`TwoElectronState::non_interacting`] to get them
    /// filled in.
    pub fn build(kind: StateKind, z_nuclear: f64, params: [f64; 2]) -> Result<Self> {
        if !(z_nuclear > 0.0 && z_nuclear.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "nuclear charge must be positive, got {z_nuclear}"
            )));
        }
        for &p in &params {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::NonPositiveExponent(p));
            }
        }
        let (orbital_a, orbital_b) = match kind {
            StateKind::Singlet => (
                OrbitalCombo::slater(params[0])?,
                OrbitalCombo::slater(params[1])?,
            ),
            StateKind::Triplet | StateKind::NonInteractingTriplet => {
                if kind == StateKind::NonInteractingTriplet
                    && params != [z_nuclear, 0.5 * z_nuclear]
                {
                    return Err(Error::InvalidInput(format!(
                        "non-interacting triplet exponents are fixed at (Z, Z/2), got {params:?}"
                    )));
                }
                (
                    OrbitalCombo::slater(params[0])?,
                    OrbitalCombo::nodal(params[1])?,
                )
            }
        };
        let sym_sign = kind.sym_sign();
        let s_aa = overlap(&orbital_a, &orbital_a);
        let s_bb = overlap(&orbital_b, &orbital_b);
        let s_ab = overlap(&orbital_a, &orbital_b);
        let norm_sq = 2.0 * (s_aa * s_bb + sym_sign * s_ab * s_ab);
        if !(norm_sq > f64::EPSILON * s_aa * s_bb) {
            return Err(Error::DegenerateTriplet(params[0]));
        }
        Ok(TwoElectronState {
            kind,
            z_nuclear,
            orbital_a,
            orbital_b,
            sym_sign,
            norm_const: norm_sq.sqrt().recip(),
            params,
            overlaps: [s_aa, s_bb, s_ab],
        })
    }

    /// The non-interacting triplet reference at charge `z`.
    pub fn non_interacting(z_nuclear: f64) -> Result<Self> {
        Self::build(
            StateKind::NonInteractingTriplet,
            z_nuclear,
            [z_nuclear, 0.5 * z_nuclear],
        )
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn z_nuclear(&self) -> f64 {
        self.z_nuclear
    }

    pub fn params(&self) -> [f64; 2] {
        self.params
    }

    pub fn orbital_a(&self) -> &OrbitalCombo {
        &self.orbital_a
    }

    pub fn orbital_b(&self) -> &OrbitalCombo {
        &self.orbital_b
    }

    pub fn sym_sign(&self) -> f64 {
        self.sym_sign
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// `(⟨a|a⟩, ⟨b|b⟩, ⟨a|b⟩)`, valid in both spaces.
    pub fn overlaps(&self) -> (f64, f64, f64) {
        let [aa, bb, ab] = self.overlaps;
        (aa, bb, ab)
    }

    /// Smallest orbital exponent; sets the widest position-space scale.
    pub fn min_exponent(&self) -> f64 {
        self.orbital_a
            .min_exponent()
            .min(self.orbital_b.min_exponent())
    }

    pub fn max_exponent(&self) -> f64 {
        self.orbital_a
            .max_exponent()
            .max(self.orbital_b.max_exponent())
    }

    #[inline]
    pub fn combine(&self, a1: f64, b1: f64, a2: f64, b2: f64) -> f64 {
        self.norm_const * (a1 * b2 + self.sym_sign * b1 * a2)
    }

    pub fn amplitude(&self, r1: f64, r2: f64) -> f64 {
        self.combine(
            self.orbital_a.eval_position(r1),
            self.orbital_b.eval_position(r1),
            self.orbital_a.eval_position(r2),
            self.orbital_b.eval_position(r2),
        )
    }

    pub fn amplitude_p(&self, p1: f64, p2: f64) -> f64 {
        self.combine(
            self.orbital_a.eval_momentum(p1),
            self.orbital_b.eval_momentum(p1),
            self.orbital_a.eval_momentum(p2),
            self.orbital_b.eval_momentum(p2),
        )
    }
}
