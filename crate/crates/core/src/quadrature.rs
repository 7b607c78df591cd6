//! Integration on `[0, ∞)` and `[0, ∞)²`, root bracketing and small table
//! utilities.
//!
//! The half line is mapped onto `t ∈ (0, 1)` and covered with equal panels,
//! each carrying a fixed-order Gauss-Legendre rule. Accuracy is controlled by
//! panel doubling: the error estimate is `|I(2n) - I(n)|`.
//!
//! Two-dimensional integrals are split along the diagonal. Each triangle is
//! parametrized by `(x, s) ↦ (x, x s)` with `s ∈ (0, 1)`, which puts any kink
//! or zero of the integrand on `x = y` onto the boundary `s = 1` of a smooth
//! tensor-product rule:
//!
//! ```text
//! ∫∫ f(x, y) dx dy = ∫₀^∞ x dx ∫₀¹ [f(x, x s) + f(x s, x)] ds
//! ```

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gauss-Legendre points per panel.
pub const GL_ORDER: usize = 20;

/// Panel count of the coarsest level in a doubling sequence.
pub const START_PANELS: usize = 4;

/// Change of variables from `t ∈ (0, 1)` to `x ∈ (0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mapping {
    /// `x = L t / (1 - t)`; rational tails map to polynomial end behaviour.
    Algebraic,
    /// `x = -L ln(1 - t)`; exact for pure exponential tails, poor for
    /// power-law tails.
    Exponential,
}

impl Mapping {
    pub fn id(self) -> &'static str {
        match self {
            Mapping::Algebraic => "algebraic",
            Mapping::Exponential => "exponential",
        }
    }

    /// Returns `(x, dx/dt)`.
    #[inline]
    fn apply(self, t: f64, scale: f64) -> (f64, f64) {
        let u = 1.0 - t;
        match self {
            Mapping::Algebraic => (scale * t / u, scale / (u * u)),
            Mapping::Exponential => (-scale * u.ln(), scale / u),
        }
    }
}

/// Tolerances and mapping for a doubling integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub mapping: Mapping,
    /// Length scale `L` of the mapping.
    pub scale: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_panels: 512,
            mapping: Mapping::Algebraic,
            scale: 1.0,
        }
    }
}

impl QuadSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_panels: usize) -> Result<Self> {
        let spec = QuadSpec {
            rel_tol,
            abs_tol,
            max_panels,
            ..QuadSpec::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerances must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_panels < 1 {
            return Err(Error::InvalidInput("max_panels must be at least 1".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "mapping scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_mapping(mut self, mapping: Mapping) -> Self {
        self.mapping = mapping;
        self
    }

    #[inline]
    fn accepts(&self, value: f64, error: f64) -> bool {
        error <= self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// `|I(2n) - I(n)|` at the accepted level.
    pub error: f64,
    pub panels: usize,
}

/// Nodes and weights of a mapped composite rule on `(0, ∞)`.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    mapping: Mapping,
    scale: f64,
    panel_count: usize,
}

impl RadialGrid {
    pub fn new(mapping: Mapping, scale: f64, panel_count: usize) -> Self {
        assert!(panel_count >= 1, "panel_count must be positive");
        assert!(scale > 0.0, "mapping scale must be positive");
        let (t, w) = unit_rule(panel_count);
        let mut nodes = Vec::with_capacity(t.len());
        let mut weights = Vec::with_capacity(t.len());
        for (&ti, &wi) in t.iter().zip(&w) {
            let (x, jac) = mapping.apply(ti, scale);
            nodes.push(x);
            weights.push(wi * jac);
        }
        RadialGrid {
            nodes,
            weights,
            mapping,
            scale,
            panel_count,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mapping_id(&self) -> &'static str {
        self.mapping.id()
    }

    pub fn mapping(&self) -> Mapping {
        self.mapping
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn panel_count(&self) -> usize {
        self.panel_count
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wᵢ f(xᵢ)` with pairwise summation.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum(&terms)
    }

    /// `∫₀^∞ dx ∫₀^x f(x, y) dy` with the same construction as
    /// [`RadialGrid::integrate_pair`].
    pub fn integrate_lower_triangle<F>(&self, inner_panels: usize, f: F) -> f64
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let (s, ws) = unit_rule(inner_panels.max(1));
        let rows: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(&x, &w)| {
                let inner: Vec<f64> = s
                    .iter()
                    .zip(&ws)
                    .map(|(&si, &wi)| wi * f(x, x * si))
                    .collect();
                w * x * pairwise_sum(&inner)
            })
            .collect();
        pairwise_sum(&rows)
    }

    /// Triangle-split tensor rule over `(0, ∞)²` using this grid for the
    /// radial variable and `inner_panels` panels on the ratio `s`.
    pub fn integrate_pair<F>(&self, inner_panels: usize, f: F) -> f64
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        let (s, ws) = unit_rule(inner_panels.max(1));
        let rows: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(&x, &w)| {
                let inner: Vec<f64> = s
                    .iter()
                    .zip(&ws)
                    .map(|(&si, &wi)| {
                        let y = x * si;
                        wi * (f(x, y) + f(y, x))
                    })
                    .collect();
                w * x * pairwise_sum(&inner)
            })
            .collect();
        pairwise_sum(&rows)
    }
}

/// Composite Gauss-Legendre on `(0, 1)` with `panels` equal panels.
fn unit_rule(panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (g, w) = gauss_legendre();
    let h = 1.0 / panels as f64;
    let mut t = Vec::with_capacity(panels * GL_ORDER);
    let mut wt = Vec::with_capacity(panels * GL_ORDER);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (&gi, &wi) in g.iter().zip(w) {
            t.push(mid + 0.5 * h * gi);
            wt.push(0.5 * h * wi);
        }
    }
    (t, wt)
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
fn gauss_legendre() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (x, w) = RULE.get_or_init(|| legendre_rule(GL_ORDER));
    (x, w)
}

fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_and_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Fixed-order pairwise summation; the result depends only on the order of
/// `values`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

fn finite(value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidInput(format!(
            "integrand produced a non-finite sum ({value})"
        )))
    }
}

/// Panel-doubling driver shared by every integrator: `level(n)` is the rule
/// with `n` panels.
fn refine<L: FnMut(usize) -> Result<f64>>(spec: &QuadSpec, mut level: L) -> Result<Estimate> {
    spec.validate()?;
    let mut panels = START_PANELS.min(spec.max_panels);
    let mut prev = finite(level(panels)?)?;
    loop {
        let next = panels * 2;
        if next > spec.max_panels {
            return Err(Error::NonConvergence {
                value: prev,
                error: f64::INFINITY,
                panels,
            });
        }
        let cur = finite(level(next)?)?;
        let error = (cur - prev).abs();
        if spec.accepts(cur, error) {
            return Ok(Estimate {
                value: cur,
                error,
                panels: next,
            });
        }
        if next * 2 > spec.max_panels {
            return Err(Error::NonConvergence {
                value: cur,
                error,
                panels: next,
            });
        }
        prev = cur;
        panels = next;
    }
}

/// Integrates `f` over `(0, ∞)` by panel doubling.
pub fn integrate_radial<F: Fn(f64) -> f64>(f: F, spec: &QuadSpec) -> Result<Estimate> {
    refine(spec, |n| {
        Ok(RadialGrid::new(spec.mapping, spec.scale, n).integrate(&f))
    })
}

/// Integrates `f` over the finite interval `[a, b]` by panel doubling. The
/// mapping and scale of `spec` are ignored.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidInput(format!("bad interval [{a}, {b}]")));
    }
    let h = b - a;
    refine(spec, |n| {
        let (t, w) = unit_rule(n);
        let terms: Vec<f64> = t
            .iter()
            .zip(&w)
            .map(|(&ti, &wi)| wi * h * f(a + h * ti))
            .collect();
        Ok(pairwise_sum(&terms))
    })
}

/// Integrates `f(x, y)` over `(0, ∞)²` by panel doubling of the
/// triangle-split rule.
pub fn integrate_pair<F>(f: F, spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    refine(spec, |n| {
        let grid = RadialGrid::new(spec.mapping, spec.scale, n);
        Ok(grid.integrate_pair(inner_panels(n), &f))
    })
}

/// As [`integrate_pair`] for `f(x, y) = f(y, x)`: only the lower triangle is
/// sampled, halving the work.
pub fn integrate_pair_symmetric<F>(f: F, spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    refine(spec, |n| {
        let grid = RadialGrid::new(spec.mapping, spec.scale, n);
        Ok(2.0 * grid.integrate_lower_triangle(inner_panels(n), &f))
    })
}

/// Ratio-variable panels paired with `panels` radial panels.
pub fn inner_panels(panels: usize) -> usize {
    (panels / 2).max(1)
}

/// Bisection for a sign change of `g` on `[lo, hi]`; stops once the bracket
/// is narrower than `tol` and returns its midpoint.
pub fn find_root<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    try_find_root(|z| Ok(g(z)), lo, hi, tol).map(|(z, _)| z)
}

/// Fallible bisection; returns the root and the final bracket.
pub fn try_find_root<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<(f64, (f64, f64))>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "bad bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut ga = g(a)?;
    let gb = g(b)?;
    if ga == 0.0 {
        return Ok((a, (a, a)));
    }
    if gb == 0.0 {
        return Ok((b, (b, b)));
    }
    if !(ga * gb < 0.0) {
        return Err(Error::NoSignChange {
            lo,
            hi,
            g_lo: ga,
            g_hi: gb,
        });
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok((mid, (mid, mid)));
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok((0.5 * (a + b), (a, b)))
}

/// First sign change of tabulated `ys` over ascending `xs`, located by linear
/// interpolation. Returns the root and the bracketing abscissae.
pub fn interpolate_root(xs: &[f64], ys: &[f64]) -> Option<(f64, (f64, f64))> {
    xs.windows(2).zip(ys.windows(2)).find_map(|(x, y)| {
        if y[0] == 0.0 {
            Some((x[0], (x[0], x[0])))
        } else if y[0] * y[1] < 0.0 {
            let root = x[0] - y[0] * (x[1] - x[0]) / (y[1] - y[0]);
            Some((root, (x[0], x[1])))
        } else {
            None
        }
    })
}

/// Trapezoid rule over tabulated, ascending abscissae.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    let terms: Vec<f64> = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .collect();
    pairwise_sum(&terms)
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}
