//! s-type Slater primitives `r^k e^{-ζr}` (k ∈ {0, 1}), their linear
//! combinations, and the closed-form l = 0 momentum transforms
//!
//! ```text
//! φ̃(p) = (2/π)^{1/2} p⁻¹ ∫₀^∞ r φ(r) sin(pr) dr
//! e^{-ζr}    ↦ 2√(2/π) ζ / (ζ² + p²)²
//! r e^{-ζr}  ↦ 2√(2/π) (3ζ² − p²) / (ζ² + p²)³
//! ```
//!
//! The transform is unitary, so every overlap computed in position space is
//! also the momentum-space overlap.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2√(2/π)`, the prefactor shared by both momentum transforms.
pub const MOMENTUM_PREFACTOR: f64 = 1.595_769_121_605_730_7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlaterPrimitive {
    power: u8,
    exponent: f64,
}

impl SlaterPrimitive {
    pub fn new(power: u8, exponent: f64) -> Result<Self> {
        if power > 1 {
            return Err(Error::InvalidInput(format!(
                "only r^0 and r^1 prefactors are supported, got r^{power}"
            )));
        }
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::NonPositiveExponent(exponent));
        }
        Ok(SlaterPrimitive { power, exponent })
    }

    pub fn power(&self) -> u8 {
        self.power
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    #[inline]
    pub fn eval_position(&self, r: f64) -> f64 {
        let e = (-self.exponent * r).exp();
        if self.power == 0 {
            e
        } else {
            r * e
        }
    }

    #[inline]
    pub fn eval_momentum(&self, p: f64) -> f64 {
        let z2 = self.exponent * self.exponent;
        let d = z2 + p * p;
        if self.power == 0 {
            MOMENTUM_PREFACTOR * self.exponent / (d * d)
        } else {
            MOMENTUM_PREFACTOR * (3.0 * z2 - p * p) / (d * d * d)
        }
    }
}

/// `Σ cᵢ r^{kᵢ} e^{-ζᵢ r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitalCombo {
    terms: Vec<(f64, SlaterPrimitive)>,
}

impl OrbitalCombo {
    pub fn new(terms: Vec<(f64, SlaterPrimitive)>) -> Self {
        OrbitalCombo { terms }
    }

    /// `e^{-ζr}`
    pub fn slater(exponent: f64) -> Result<Self> {
        Ok(OrbitalCombo {
            terms: vec![(1.0, SlaterPrimitive::new(0, exponent)?)],
        })
    }

    /// `(1 − ζr) e^{-ζr}`, the nodal factor of the triplet's outer orbital.
    pub fn nodal(exponent: f64) -> Result<Self> {
        Ok(OrbitalCombo {
            terms: vec![
                (1.0, SlaterPrimitive::new(0, exponent)?),
                (-exponent, SlaterPrimitive::new(1, exponent)?),
            ],
        })
    }

    pub fn terms(&self) -> &[(f64, SlaterPrimitive)] {
        &self.terms
    }

    pub fn min_exponent(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, p)| p.exponent)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_exponent(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, p)| p.exponent)
            .fold(0.0, f64::max)
    }

    pub fn eval_position(&self, r: f64) -> f64 {
        // consecutive terms usually share an exponent; reuse the exponential
        let mut sum = 0.0;
        let mut cached: Option<(f64, f64)> = None;
        for (c, prim) in &self.terms {
            let e = match cached {
                Some((z, e)) if z == prim.exponent => e,
                _ => {
                    let e = (-prim.exponent * r).exp();
                    cached = Some((prim.exponent, e));
                    e
                }
            };
            sum += if prim.power == 0 { c * e } else { c * r * e };
        }
        sum
    }

    pub fn eval_momentum(&self, p: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, prim)| c * prim.eval_momentum(p))
            .sum()
    }

    /// `4π ∫ r^{2+extra} a(r) b(r) dr` from Γ-function moments.
    ///
    /// `extra` may be negative as long as every resulting power is ≥ 0.
    pub fn radial_moment(&self, other: &OrbitalCombo, extra: i32) -> f64 {
        let mut sum = 0.0;
        for (ca, pa) in &self.terms {
            for (cb, pb) in &other.terms {
                let n = 2 + extra + pa.power as i32 + pb.power as i32;
                sum += ca * cb * gamma_moment(n, pa.exponent + pb.exponent);
            }
        }
        4.0 * PI * sum
    }
}

/// `⟨a|b⟩ = 4π ∫ r² a(r) b(r) dr`; identical in momentum space.
pub fn overlap(a: &OrbitalCombo, b: &OrbitalCombo) -> f64 {
    a.radial_moment(b, 0)
}

/// `∫₀^∞ rⁿ e^{-sr} dr = n! / s^{n+1}`.
pub fn gamma_moment(n: i32, s: f64) -> f64 {
    assert!(n >= 0, "moment power must be non-negative, got {n}");
    factorial(n as u32) / s.powi(n + 1)
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
