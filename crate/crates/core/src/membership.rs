//! One-sided membership test for a simple normal subgroup `Y`, using gcds of
//! element orders.
//!
//! If `u` is not in `Y`, every `o(u y)` is divisible by the order of `uY` in
//! `X/Y`, so a gcd of 1 proves membership.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::blackbox::{BlackBox, RandomSource};
use crate::element::GroupElement;
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    DefiniteIn,
    ProbablyOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub kind: VerdictKind,
    /// The running gcd `D` when sampling stopped.
    pub witness_gcd: u128,
    pub samples_used: usize,
}

/// Draws up to `k` elements `y` of `Y` and accumulates `gcd(o(u y))`, stopping
/// as soon as the gcd reaches 1. `order_fn` must be an order oracle for the
/// ambient group.
pub fn contains(
    bb: &BlackBox,
    y_oracle: &mut dyn RandomSource,
    order_fn: &dyn Fn(&GroupElement) -> Result<u128>,
    u: &GroupElement,
    k: usize,
) -> Result<MembershipVerdict> {
    if k == 0 {
        return Err(Error::invalid("membership test needs at least one sample"));
    }
    let mut d: u128 = 0;
    for used in 1..=k {
        let y = y_oracle.next_element()?;
        d = d.gcd(&order_fn(&bb.multiply(u, &y))?);
        if d == 1 {
            return Ok(MembershipVerdict {
                kind: VerdictKind::DefiniteIn,
                witness_gcd: 1,
                samples_used: used,
            });
        }
    }
    Ok(MembershipVerdict {
        kind: VerdictKind::ProbablyOut,
        witness_gcd: d,
        samples_used: k,
    })
}

/// Tests whether `u` and `v` are equal in `X/Y`, i.e. whether `u v^-1` is in `Y`.
pub fn quotient_equal(
    bb: &BlackBox,
    y_oracle: &mut dyn RandomSource,
    order_fn: &dyn Fn(&GroupElement) -> Result<u128>,
    u: &GroupElement,
    v: &GroupElement,
    k: usize,
) -> Result<MembershipVerdict> {
    let w = bb.multiply(u, &bb.invert(v));
    contains(bb, y_oracle, order_fn, &w, k)
}
