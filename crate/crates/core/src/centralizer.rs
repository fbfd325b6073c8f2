//! Black boxes for centralisers of involutions, built on the dihedral trick.
//!
//! For an involution `i` and any `x`, the element `z = i * i^x` is inverted by
//! both `i` and `i^x`. If `z` has odd order its square root `y` conjugates
//! `i` to `i^x`, so `y * x^-1` centralises `i` (the map `zeta1`). If `z` has
//! even order, the involution of `<z>` is central in `<i, i^x>` (`zeta0`).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blackbox::{BlackBox, RandomSource};
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// `z = i * i^x`.
pub fn dihedral_product(bb: &BlackBox, i: &GroupElement, x: &GroupElement) -> GroupElement {
    bb.multiply(i, &bb.conjugate(i, x))
}

/// `zeta1(x) = (i i^x)^((r+1)/2) * x^-1` when `i i^x` has odd order, else `None`.
pub fn zeta1(bb: &BlackBox, i: &GroupElement, x: &GroupElement) -> Option<GroupElement> {
    let z = dihedral_product(bb, i, x);
    zeta1_from_product(bb, &z, x)
}

fn zeta1_from_product(bb: &BlackBox, z: &GroupElement, x: &GroupElement) -> Option<GroupElement> {
    let y = bb.sqrt_odd_order(z).ok()?;
    Some(bb.multiply(&y, &bb.invert(x)))
}

/// `zeta0(x) = i(i i^x)` when `i i^x` has even order, else `None`.
pub fn zeta0(bb: &BlackBox, i: &GroupElement, x: &GroupElement) -> Option<GroupElement> {
    let z = dihedral_product(bb, i, x);
    zeta0_from_product(bb, &z)
}

fn zeta0_from_product(bb: &BlackBox, z: &GroupElement) -> Option<GroupElement> {
    if bb.has_odd_order(z) {
        return None;
    }
    bb.involution_from(z).ok()
}

/// The combined map: exactly one of the two branches applies to each `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Zeta {
    Odd(GroupElement),
    Even(GroupElement),
}

impl Zeta {
    pub fn element(&self) -> &GroupElement {
        match self {
            Zeta::Odd(g) | Zeta::Even(g) => g,
        }
    }
}

pub fn zeta(bb: &BlackBox, i: &GroupElement, x: &GroupElement) -> Result<Zeta> {
    let z = dihedral_product(bb, i, x);
    if bb.has_odd_order(&z) {
        let v = zeta1_from_product(bb, &z, x).ok_or(Error::NotOddOrder)?;
        Ok(Zeta::Odd(v))
    } else {
        Ok(Zeta::Even(bb.involution_from(&z)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Rejection-sample `zeta1`.
    Odd,
    /// Cumulative product of `zeta0` values.
    Even,
    /// Cumulative product of whichever of `zeta0`, `zeta1` is defined.
    Mixed,
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(OracleMode::Odd),
            "even" => Ok(OracleMode::Even),
            "mixed" => Ok(OracleMode::Mixed),
            _ => Err(Error::invalid(format!("unknown centraliser mode {s:?}"))),
        }
    }
}

pub const DEFAULT_REJECTION_BUDGET: usize = 256;
pub const DEFAULT_DISCARD: usize = 100;

/// `ceil(n log(n) / 2)`: outputs to skip when the centraliser contains
/// `Sym(n)` generated by transposition-like involutions.
pub fn transposition_discard(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (0.5 * n as f64 * (n as f64).ln()).ceil() as usize
}

/// A random-element oracle for `C_X(i)` (odd mode) or for the subgroup
/// generated by `zeta0` values (even mode).
pub struct CentralizerOracle {
    bb: BlackBox,
    involution: GroupElement,
    source: Box<dyn RandomSource>,
    mode: OracleMode,
    cumulative: GroupElement,
    rejection_budget: usize,
    discard: usize,
    warmed_up: bool,
    draws: u64,
}

impl std::fmt::Debug for CentralizerOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CentralizerOracle")
            .field("involution", &self.bb.format(&self.involution))
            .field("mode", &self.mode)
            .field("rejection_budget", &self.rejection_budget)
            .field("discard", &self.discard)
            .finish_non_exhaustive()
    }
}

impl CentralizerOracle {
    pub fn new(
        bb: &BlackBox,
        involution: GroupElement,
        source: impl RandomSource + 'static,
        mode: OracleMode,
    ) -> Result<Self> {
        if !bb.is_involution(&involution) {
            return Err(Error::NotInvolution);
        }
        Ok(CentralizerOracle {
            bb: bb.clone(),
            involution,
            source: Box::new(source),
            mode,
            cumulative: bb.identity(),
            rejection_budget: DEFAULT_REJECTION_BUDGET,
            discard: DEFAULT_DISCARD,
            warmed_up: false,
            draws: 0,
        })
    }

    pub fn with_rejection_budget(mut self, budget: usize) -> Self {
        self.rejection_budget = budget.max(1);
        self
    }

    /// Initial outputs skipped in even and mixed modes.
    pub fn with_discard(mut self, discard: usize) -> Self {
        self.discard = discard;
        self
    }

    pub fn involution(&self) -> &GroupElement {
        &self.involution
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    /// Elements drawn from the source so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    fn draw(&mut self) -> Result<GroupElement> {
        self.draws += 1;
        self.source.next_element()
    }

    fn raw_next(&mut self) -> Result<GroupElement> {
        let i = self.involution.clone();
        let out = match self.mode {
            OracleMode::Odd => {
                let mut found = None;
                for _ in 0..self.rejection_budget {
                    let x = self.draw()?;
                    if let Some(v) = zeta1(&self.bb, &i, &x) {
                        found = Some(v);
                        break;
                    }
                }
                found.ok_or(Error::Starvation {
                    attempts: self.rejection_budget,
                })?
            }
            OracleMode::Even => {
                let mut found = None;
                for _ in 0..self.rejection_budget {
                    let x = self.draw()?;
                    if let Some(v) = zeta0(&self.bb, &i, &x) {
                        found = Some(v);
                        break;
                    }
                }
                let v = found.ok_or(Error::Starvation {
                    attempts: self.rejection_budget,
                })?;
                self.cumulative = self.bb.multiply(&self.cumulative, &v);
                self.cumulative.clone()
            }
            OracleMode::Mixed => {
                let x = self.draw()?;
                let v = zeta(&self.bb, &i, &x)?;
                self.cumulative = self.bb.multiply(&self.cumulative, v.element());
                self.cumulative.clone()
            }
        };
        if !self.bb.commutes(&out, &i) {
            return Err(Error::NotCentralising);
        }
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Result<GroupElement> {
        if !self.warmed_up {
            self.warmed_up = true;
            if self.mode != OracleMode::Odd {
                for _ in 0..self.discard {
                    self.raw_next()?;
                }
            }
        }
        self.raw_next()
    }
}

pub fn centralizer_next(oracle: &mut CentralizerOracle) -> Result<GroupElement> {
    oracle.next()
}

impl RandomSource for CentralizerOracle {
    fn next_element(&mut self) -> Result<GroupElement> {
        self.next()
    }
}

/// Applies `i(x)` to random elements until it yields a non-identity element.
pub fn find_involution(
    bb: &BlackBox,
    source: &mut dyn RandomSource,
    budget: usize,
) -> Result<GroupElement> {
    if budget == 0 {
        return Err(Error::invalid("budget must be at least 1"));
    }
    for _ in 0..budget {
        let x = source.next_element()?;
        let i = bb.involution_from(&x)?;
        if !bb.is_identity(&i) {
            return Ok(i);
        }
    }
    Err(Error::BudgetExhausted { budget })
}

/// Monte Carlo estimate of `P(o(i i^x) odd)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShareEstimate {
    pub trials: u64,
    pub odd: u64,
    pub share: f64,
    pub std_error: f64,
}

impl ShareEstimate {
    pub fn from_counts(odd: u64, trials: u64) -> Self {
        let share = odd as f64 / trials as f64;
        ShareEstimate {
            trials,
            odd,
            share,
            std_error: (share * (1.0 - share) / trials as f64).sqrt(),
        }
    }
}

pub fn odd_order_share(
    bb: &BlackBox,
    i: &GroupElement,
    source: &mut dyn RandomSource,
    trials: u64,
) -> Result<ShareEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let mut odd = 0;
    for _ in 0..trials {
        let x = source.next_element()?;
        if bb.has_odd_order(&dihedral_product(bb, i, &x)) {
            odd += 1;
        }
    }
    Ok(ShareEstimate::from_counts(odd, trials))
}

/// Exact count of `x` in `elements` with `i i^x` of odd order.
pub fn odd_order_count(bb: &BlackBox, i: &GroupElement, elements: &[GroupElement]) -> u64 {
    elements
        .iter()
        .filter(|x| bb.has_odd_order(&dihedral_product(bb, i, x)))
        .count() as u64
}
