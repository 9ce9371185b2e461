//! Closed forms for three-path pumping in homogeneous networks.
//!
//! [`c_k3`] gives the concurrence after pumping paths of lengths
//! `(l0, l1, l2)` in that order when every edge has concurrence `c`. The
//! lattice averages mix [`c_k3`] over the destination classes found at a
//! given shortest distance, with class weights and path lengths from
//! [`lattice_classes`].

use crate::calculus::Concurrence;
use crate::error::{domain, Result};
use crate::network::TopologyKind;

/// Pumping order for which a lattice average is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    ShortestFirst,
    ShortestLast,
}

/// One destination class: its share of the nodes at distance `l0` and the
/// three path lengths in pumping order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeClass {
    pub weight: f64,
    pub lengths: [u32; 3],
}

/// Raw numerator and denominator of the three-path closed form.
pub fn c_k3_parts(l0: u32, l1: u32, l2: u32, c: f64) -> (f64, f64) {
    let (a, b, z) = (f64::from(l0), f64::from(l1), f64::from(l2));
    let e = 1.0 - c;
    let f1 = 3.0 * a + 3.0 * b + 4.0 * z;
    let f2 = 4.0 * a * b + 5.0 * b * z + 5.0 * a * z;
    let f3 = 6.0 * a * b + 4.0 * b * z + 4.0 * a * z;
    let f4 = a * b * z;
    let numerator = 1.0 - f1 * e / 6.0 + f2 * e * e / 18.0 - 7.0 / 54.0 * f4 * e.powi(3);
    let denominator = 1.0 - (f1 - 2.0 * z) * e / 6.0 + f3 * e * e / 18.0 - 4.0 / 27.0 * f4 * e.powi(3);
    (numerator, denominator)
}

/// Concurrence after pumping paths of lengths `l0`, `l1`, `l2` in order,
/// clamped to `[0, 1]`.
pub fn c_k3(l0: u32, l1: u32, l2: u32, c: Concurrence) -> Result<Concurrence> {
    if l0 == 0 || l1 == 0 || l2 == 0 {
        return Err(domain("path lengths must be at least one hop"));
    }
    if c.value() <= 0.0 {
        return Err(domain("edge concurrence must be positive"));
    }
    let (n, d) = c_k3_parts(l0, l1, l2, c.value());
    Ok(Concurrence::saturating(n / d))
}

/// Whether [`c_k3`] changes by more than `1e-12` under some reordering of the
/// three lengths.
pub fn c_k3_not_symmetric_check(l0: u32, l1: u32, l2: u32, c: Concurrence) -> Result<bool> {
    let perms = [
        [l0, l1, l2],
        [l0, l2, l1],
        [l1, l0, l2],
        [l1, l2, l0],
        [l2, l0, l1],
        [l2, l1, l0],
    ];
    let values = perms
        .iter()
        .map(|p| c_k3(p[0], p[1], p[2], c).map(Concurrence::value))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    Ok(hi - lo > 1e-12)
}

/// Destination classes at shortest distance `l0` on a lattice, with their
/// three shortest edge-disjoint path lengths in shortest-first order.
pub fn lattice_classes(topology: TopologyKind, l0: u32) -> Result<Vec<LatticeClass>> {
    if l0 == 0 {
        return Err(domain("l0 must be at least one hop"));
    }
    let l = f64::from(l0);
    let class = |weight: f64, lengths: [u32; 3]| LatticeClass { weight, lengths };
    let even = l0 % 2 == 0;
    Ok(match topology {
        TopologyKind::Tln if l0 == 1 => vec![class(1.0, [1, 2, 2])],
        TopologyKind::Tln => vec![
            class(1.0 / l, [l0, l0 + 1, l0 + 1]),
            class((l - 1.0) / l, [l0, l0, l0 + 2]),
        ],
        TopologyKind::Sln if even => vec![
            class(1.0 / l, [l0, l0, l0 + 4]),
            class((l - 1.0) / l, [l0, l0 + 2, l0 + 2]),
        ],
        TopologyKind::Sln => vec![class(1.0, [l0, l0 + 2, l0 + 2])],
        TopologyKind::Hln if even => vec![class(1.0, [l0, l0 + 2, l0 + 6])],
        TopologyKind::Hln => vec![
            class((l + 1.0) / (2.0 * l), [l0, l0 + 2, l0 + 6]),
            class((l - 1.0) / (2.0 * l), [l0, l0, l0 + 8]),
        ],
        TopologyKind::Rn | TopologyKind::Ban => {
            return Err(domain(format!("{topology} has no closed-form lattice average")))
        }
    })
}

/// Lattice average of [`c_k3`] for the given pumping order.
pub fn lattice_average(topology: TopologyKind, order: Order, l0: u32, c: Concurrence) -> Result<Concurrence> {
    let mut total = 0.0;
    for class in lattice_classes(topology, l0)? {
        let [a, b, z] = match order {
            Order::ShortestFirst => class.lengths,
            Order::ShortestLast => {
                let [a, b, z] = class.lengths;
                [z, b, a]
            }
        };
        total += class.weight * c_k3(a, b, z, c)?.value();
    }
    Ok(Concurrence::saturating(total))
}

pub fn avg_spf(topology: TopologyKind, l0: u32, c: Concurrence) -> Result<Concurrence> {
    lattice_average(topology, Order::ShortestFirst, l0, c)
}

pub fn avg_spl(topology: TopologyKind, l0: u32, c: Concurrence) -> Result<Concurrence> {
    lattice_average(topology, Order::ShortestLast, l0, c)
}
