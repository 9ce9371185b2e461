//! Pumping orders over a set of edge-disjoint paths.

use std::fmt;
use std::str::FromStr;

use crate::calculus::{noise_raw, pump_raw, Concurrence};
use crate::error::{domain, invalid, Error, Result};
use crate::paths::PathSet;

/// Order in which path states are pumped into each other.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Shortest path first: ascending length, the shortest path enters the
    /// first pump step.
    Spf,
    /// Shortest path last: descending length, the shortest path enters the
    /// final pump step. Equal lengths keep discovery order.
    Spl,
    /// Explicit order over the `min(k, |paths|)` shortest paths.
    Custom(Vec<usize>),
    /// No purification: the shortest path alone.
    Baseline,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Spf => "SPF",
            Strategy::Spl => "SPL",
            Strategy::Custom(_) => "CUSTOM",
            Strategy::Baseline => "BASELINE",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Custom(order) => {
                let parts: Vec<String> = order.iter().map(usize::to_string).collect();
                write!(f, "CUSTOM({})", parts.join(","))
            }
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Accepts `SPF`, `SPL`, `BASELINE` and `CUSTOM(2,0,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        match upper.as_str() {
            "SPF" => return Ok(Strategy::Spf),
            "SPL" => return Ok(Strategy::Spl),
            "BASELINE" => return Ok(Strategy::Baseline),
            _ => {}
        }
        let inner = upper
            .strip_prefix("CUSTOM(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| {
                invalid(format!(
                    "unknown strategy `{s}` (expected SPF, SPL, BASELINE or CUSTOM(i,j,...))"
                ))
            })?;
        let order = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("bad CUSTOM permutation `{inner}`: {e}")))?;
        check_permutation(&order, order.len())?;
        Ok(Strategy::Custom(order))
    }
}

/// Whether detrimental pump steps are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PumpMode {
    /// Every step in the order is applied.
    #[default]
    Oblivious,
    /// A step is skipped when it would lower the running concurrence.
    AdaptiveSkip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MepOutcome {
    pub final_concurrence: Concurrence,
    pub paths_used: usize,
    /// Path indices in pumping order.
    pub order: Vec<usize>,
    /// Concurrence of the shortest path alone.
    pub baseline_concurrence: Concurrence,
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(invalid(format!(
            "CUSTOM permutation has {} entries but {n} paths are in use",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(invalid(format!("{order:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Pumping order over the first `min(k, |ps|)` paths of `ps`.
pub fn order_paths(ps: &PathSet, strategy: &Strategy, k: usize) -> Result<Vec<usize>> {
    if ps.is_empty() {
        return Err(domain("path set is empty"));
    }
    let n = k.min(ps.len()).max(1);
    // Stable sorts: equal-length paths stay in discovery order both ways.
    let mut order: Vec<usize> = (0..n).collect();
    Ok(match strategy {
        Strategy::Spf => {
            order.sort_by_key(|&i| ps.paths[i].length());
            order
        }
        Strategy::Spl => {
            order.sort_by_key(|&i| std::cmp::Reverse(ps.paths[i].length()));
            order
        }
        Strategy::Custom(order) => {
            check_permutation(order, n)?;
            order.clone()
        }
        Strategy::Baseline => vec![0],
    })
}

/// Sequential pumping over ordered concurrences.
pub fn fold_pump(values: impl IntoIterator<Item = f64>, mode: PumpMode) -> Option<f64> {
    let mut it = values.into_iter();
    let first = it.next()?;
    Some(it.fold(first, |acc, next| {
        let out = pump_raw(noise_raw(acc), noise_raw(next));
        match mode {
            PumpMode::AdaptiveSkip if out < acc => acc,
            _ => out,
        }
    }))
}

pub fn run_mep(ps: &PathSet, strategy: &Strategy, k: usize) -> Result<MepOutcome> {
    run_mep_with(ps, strategy, k, PumpMode::Oblivious)
}

pub fn run_mep_with(ps: &PathSet, strategy: &Strategy, k: usize, mode: PumpMode) -> Result<MepOutcome> {
    let order = order_paths(ps, strategy, k)?;
    let baseline = ps.paths[0].concurrence();
    let final_value = fold_pump(order.iter().map(|&i| ps.paths[i].concurrence().value()), mode)
        .expect("order is non-empty");
    Ok(MepOutcome {
        final_concurrence: Concurrence::saturating(final_value),
        paths_used: order.len(),
        order,
        baseline_concurrence: baseline,
    })
}
