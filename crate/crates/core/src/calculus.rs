//! Scalar algebra of isotropic two-qubit states.
//!
//! An isotropic pair is `(1 - q) |phi+><phi+| + q I/4`, fully described by its
//! white-noise weight `q` or, equivalently on the entangled branch, by its
//! concurrence `c = max(0, 1 - 3q/2)`. Everything in this module works at
//! that scalar level: swapping along a path, Deutsch pumping, the usefulness
//! criterion for a pump step and the first-order estimates built on it.

use std::fmt;

use crate::error::{domain, invalid, Error, Result};

/// Noise weight above which an isotropic pair is separable.
pub const SEPARABLE_NOISE: f64 = 2.0 / 3.0;

/// Concurrence of a two-qubit state, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Concurrence(f64);

impl Concurrence {
    pub const ZERO: Concurrence = Concurrence(0.0);
    pub const ONE: Concurrence = Concurrence(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Concurrence(value))
        } else {
            Err(Error::OutOfRange {
                what: "concurrence",
                value,
            })
        }
    }

    /// Clamps `value` into `[0, 1]`. NaN maps to zero.
    pub fn saturating(value: f64) -> Self {
        if value.is_nan() {
            Concurrence(0.0)
        } else {
            Concurrence(value.clamp(0.0, 1.0))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - c`.
    #[inline]
    pub fn deficit(self) -> f64 {
        1.0 - self.0
    }
}

impl fmt::Display for Concurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Concurrence {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Concurrence::new(value)
    }
}

/// White-noise weight `q` of an isotropic pair, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct NoiseParam(f64);

impl NoiseParam {
    pub const ZERO: NoiseParam = NoiseParam(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(NoiseParam(value))
        } else {
            Err(Error::OutOfRange {
                what: "noise parameter",
                value,
            })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_entangled(self) -> bool {
        self.0 < SEPARABLE_NOISE
    }
}

impl fmt::Display for NoiseParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bounded distribution of edge concurrences around a mean of `1 - delta`.
///
/// The extremes are `max = 1 - a * delta` and `min = 1 - b * delta`; the
/// spread `b - a` vanishes for homogeneous networks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeDistribution {
    delta: f64,
    a: f64,
    b: f64,
}

impl EdgeDistribution {
    pub fn new(delta: f64, a: f64, b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(invalid(format!("delta {delta} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(invalid(format!("a {a} outside [0, 1]")));
        }
        if b < 1.0 || !b.is_finite() {
            return Err(invalid(format!("b {b} must be finite and >= 1")));
        }
        if a > b {
            return Err(invalid(format!("a {a} exceeds b {b}")));
        }
        if 1.0 - b * delta < -1e-12 {
            return Err(invalid(format!(
                "minimum concurrence 1 - b*delta = {} is negative",
                1.0 - b * delta
            )));
        }
        Ok(EdgeDistribution { delta, a, b })
    }

    /// Every edge at concurrence `1 - delta`.
    pub fn homogeneous(delta: f64) -> Result<Self> {
        Self::new(delta, 1.0, 1.0)
    }

    /// Builds the distribution from its three stated moments.
    pub fn from_bounds(max: f64, mean: f64, min: f64) -> Result<Self> {
        for (name, v) in [("max", max), ("mean", mean), ("min", min)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("{name} concurrence {v} outside [0, 1]")));
            }
        }
        if !(min <= mean && mean <= max) {
            return Err(invalid(format!(
                "expected min <= mean <= max, got {min}, {mean}, {max}"
            )));
        }
        let delta = 1.0 - mean;
        if delta == 0.0 {
            if max != 1.0 || min != 1.0 {
                return Err(invalid("mean 1 requires max = min = 1"));
            }
            return Self::homogeneous(0.0);
        }
        Self::new(delta, (1.0 - max) / delta, (1.0 - min) / delta)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn max(&self) -> f64 {
        1.0 - self.a * self.delta
    }

    pub fn mean(&self) -> f64 {
        1.0 - self.delta
    }

    pub fn min(&self) -> f64 {
        (1.0 - self.b * self.delta).max(0.0)
    }

    pub fn spread(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_homogeneous(&self) -> bool {
        self.spread() == 0.0 || self.delta == 0.0
    }
}

/// `c = max(0, 1 - 3q/2)`.
pub fn concurrence_from_noise(q: NoiseParam) -> Concurrence {
    Concurrence((1.0 - 1.5 * q.0).max(0.0))
}

/// Inverse of [`concurrence_from_noise`] on the entangled branch; `c = 0` maps
/// to the separability boundary `q = 2/3`.
pub fn noise_from_concurrence(c: Concurrence) -> NoiseParam {
    NoiseParam(noise_raw(c.0))
}

#[inline]
pub(crate) fn noise_raw(c: f64) -> f64 {
    SEPARABLE_NOISE * (1.0 - c)
}

/// Concurrence of the pair obtained by swapping the isotropic pairs along a
/// path. The `(1 - q)` weights multiply, giving `max(0, 1.5 * prod(1 - q) - 0.5)`.
pub fn swap_path(edge_noises: &[NoiseParam]) -> Result<Concurrence> {
    if edge_noises.is_empty() {
        return Err(domain("cannot swap along an empty path"));
    }
    let fidelity_weight: f64 = edge_noises.iter().map(|q| 1.0 - q.0).product();
    Ok(Concurrence((1.5 * fidelity_weight - 0.5).max(0.0)))
}

/// [`swap_path`] over edge concurrences instead of noise weights.
pub fn swap_concurrences<I>(edges: I) -> Result<Concurrence>
where
    I: IntoIterator<Item = Concurrence>,
{
    let mut any = false;
    let mut weight = 1.0;
    for c in edges {
        any = true;
        weight *= 1.0 - noise_raw(c.0);
    }
    if !any {
        return Err(domain("cannot swap along an empty path"));
    }
    Ok(Concurrence((1.5 * weight - 0.5).max(0.0)))
}

#[inline]
pub(crate) fn pump_raw(q: f64, q_prime: f64) -> f64 {
    // Both terms go through q + q' so the result is exactly symmetric.
    let sum = q + q_prime;
    let fidelity = (1.0 - q) * (1.0 - q_prime);
    let numerator = sum - 1.0 + 10.0 * fidelity;
    let denominator = 1.0 + 2.0 * sum + 8.0 * fidelity;
    (numerator / denominator).clamp(0.0, 1.0)
}

/// Output concurrence of one Deutsch pumping step on two isotropic pairs,
/// clamped to `[0, 1]`.
pub fn pump_step(q: NoiseParam, q_prime: NoiseParam) -> Concurrence {
    Concurrence(pump_raw(q.0, q_prime.0))
}

/// [`pump_step`] taking both inputs as concurrences.
pub fn pump_concurrences(c1: Concurrence, c2: Concurrence) -> Concurrence {
    Concurrence(pump_raw(noise_raw(c1.0), noise_raw(c2.0)))
}

/// `h(c) = 2c(c + 2) / ((1 + c)(1 - c))`.
///
/// Returns positive infinity at the pole `c = 1`.
pub fn h_function(c1: Concurrence) -> f64 {
    let c = c1.0;
    if c >= 1.0 {
        return f64::INFINITY;
    }
    2.0 * c * (c + 2.0) / ((1.0 + c) * (1.0 - c))
}

/// Right-hand side of the usefulness inequality, `6 / (h(c1) + 6) + c1 - 1`.
pub fn usefulness_margin(c1: Concurrence) -> f64 {
    6.0 / (h_function(c1) + 6.0) + c1.0 - 1.0
}

/// Whether pumping `c2` into `c1` is useful according to the closed-form
/// criterion `c1 - c2 < 6 / (h(c1) + 6) + c1 - 1`. Arguments are reordered so
/// that `c1 >= c2`.
pub fn pump_useful(c1: Concurrence, c2: Concurrence) -> bool {
    let (hi, lo) = if c1 >= c2 { (c1, c2) } else { (c2, c1) };
    hi.0 - lo.0 < usefulness_margin(hi)
}

/// Whether one pump step actually raises the concurrence above both inputs.
pub fn pump_improves(c1: Concurrence, c2: Concurrence) -> bool {
    let best = if c1 >= c2 { c1 } else { c2 };
    pump_concurrences(c1, c2).0 > best.0
}

/// Upper bound on the probability that an alternate path of `l + d` hops can
/// purify the shortest path of `l` hops, `1 + (l - d) delta / d`, capped at 1.
pub fn purify_probability_bound(l: u32, d: u32, delta: f64) -> Result<f64> {
    if l == 0 {
        return Err(domain("path length must be at least one hop"));
    }
    if d == 0 {
        return Err(domain("extra length d must be at least one hop"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(domain(format!("delta {delta} outside [0, 1]")));
    }
    let raw = 1.0 + (f64::from(l) - f64::from(d)) / f64::from(d) * delta;
    Ok(raw.min(1.0))
}

/// First-order concurrence gain `(l - d) delta / 3`.
pub fn expected_gain(l: u32, d: u32, delta: f64) -> f64 {
    (f64::from(l) - f64::from(d)) * delta / 3.0
}

/// Asymptotic concurrence from combining `k_max` equal-length paths,
/// `1 - (2/3)^(k_max - 1) l delta`, clamped to `[0, 1]`.
pub fn asymptotic_combined(k_max: u32, l: u32, delta: f64) -> Result<Concurrence> {
    if k_max == 0 {
        return Err(domain("k_max must be at least 1"));
    }
    let exponent = i32::try_from(k_max - 1).map_err(|_| domain("k_max too large"))?;
    let value = 1.0 - (2.0f64 / 3.0).powi(exponent) * f64::from(l) * delta;
    Ok(Concurrence::saturating(value))
}

/// Left fold of [`pump_step`] over path concurrences in pumping order. Each
/// intermediate output is treated as an isotropic pair of the same concurrence.
pub fn sequential_pump(path_concurrences: &[Concurrence]) -> Result<Concurrence> {
    let (first, rest) = path_concurrences
        .split_first()
        .ok_or_else(|| domain("sequential pumping needs at least one pair"))?;
    let out = rest
        .iter()
        .fold(first.0, |acc, next| pump_raw(noise_raw(acc), noise_raw(next.0)));
    Ok(Concurrence(out))
}
