//! Product replacement: a random walk on generating k-tuples.
//!
//! Each step picks an ordered pair `i != j` and one of the four moves
//! `x_i <- x_j x_i`, `x_i <- x_j^-1 x_i`, `x_i <- x_i x_j`, `x_i <- x_i x_j^-1`,
//! all uniformly, then folds the new `x_i` into a running cumulative product.

use serde::{Deserialize, Serialize};

use crate::blackbox::{BlackBox, RandomSource};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::rng::StreamRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    /// A uniformly chosen entry of the tuple.
    Component,
    /// The running product of the replaced entries.
    #[default]
    Cumulative,
}

impl std::str::FromStr for OutputMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "component" => Ok(OutputMode::Component),
            "cumulative" => Ok(OutputMode::Cumulative),
            _ => Err(Error::invalid(format!("unknown output mode {s:?}"))),
        }
    }
}

/// One of the four product-replacement moves on slot `i` using slot `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    LeftMul,
    LeftMulInverse,
    RightMul,
    RightMulInverse,
}

impl Move {
    const ALL: [Move; 4] = [
        Move::LeftMul,
        Move::LeftMulInverse,
        Move::RightMul,
        Move::RightMulInverse,
    ];

    pub fn inverse(self) -> Move {
        match self {
            Move::LeftMul => Move::LeftMulInverse,
            Move::LeftMulInverse => Move::LeftMul,
            Move::RightMul => Move::RightMulInverse,
            Move::RightMulInverse => Move::RightMul,
        }
    }

    /// The new value of slot `i` given `x_i` and `y` (the multiplier, already
    /// conjugated if needed).
    pub(crate) fn apply(self, bb: &BlackBox, xi: &GroupElement, y: &GroupElement) -> GroupElement {
        match self {
            Move::LeftMul => bb.multiply(y, xi),
            Move::LeftMulInverse => bb.multiply(&bb.invert(y), xi),
            Move::RightMul => bb.multiply(xi, y),
            Move::RightMulInverse => bb.multiply(xi, &bb.invert(y)),
        }
    }
}

pub fn default_k(generators: usize) -> usize {
    (generators + 5).max(10)
}

pub fn default_burn_in(k: usize) -> usize {
    (20 * k).max(100)
}

#[derive(Debug, Clone)]
pub struct PraState {
    bb: BlackBox,
    tuple: Vec<GroupElement>,
    cumulative: GroupElement,
    rng: StreamRng,
    steps_taken: u64,
    mode: OutputMode,
}

/// Pads `generators` cyclically to length `k`.
pub(crate) fn padded_tuple(generators: &[GroupElement], k: usize) -> Result<Vec<GroupElement>> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let min = generators.len().max(2);
    if k < min {
        return Err(Error::TupleTooSmall { k, min });
    }
    Ok(generators.iter().cycle().take(k).cloned().collect())
}

/// Sets up a walk at the padded generator tuple. No burn-in is applied.
pub fn pra_init(bb: &BlackBox, generators: &[GroupElement], k: usize, seed: u64) -> Result<PraState> {
    Ok(PraState {
        bb: bb.clone(),
        tuple: padded_tuple(generators, k)?,
        cumulative: bb.identity(),
        rng: StreamRng::new(seed),
        steps_taken: 0,
        mode: OutputMode::default(),
    })
}

impl PraState {
    /// Default tuple size and burn-in, ready to sample.
    pub fn with_defaults(bb: &BlackBox, generators: &[GroupElement], seed: u64) -> Result<Self> {
        let k = default_k(generators.len());
        let mut s = pra_init(bb, generators, k, seed)?;
        s.burn_in(default_burn_in(k));
        Ok(s)
    }

    pub fn with_mode(mut self, mode: OutputMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn mode(&self) -> OutputMode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.tuple.len()
    }

    pub fn tuple(&self) -> &[GroupElement] {
        &self.tuple
    }

    pub fn cumulative(&self) -> &GroupElement {
        &self.cumulative
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps_taken
    }

    pub fn black_box(&self) -> &BlackBox {
        &self.bb
    }

    /// Applies a specific move; exposed so that walks can be replayed.
    pub fn apply_move(&mut self, i: usize, j: usize, mv: Move) {
        assert!(i != j && i < self.k() && j < self.k());
        let new = mv.apply(&self.bb, &self.tuple[i], &self.tuple[j]);
        self.tuple[i] = new;
    }

    pub fn step(&mut self) {
        let (i, j) = self.rng.distinct_pair(self.k());
        let mv = Move::ALL[self.rng.below_usize(4)];
        self.apply_move(i, j, mv);
        self.cumulative = self.bb.multiply(&self.cumulative, &self.tuple[i]);
        self.steps_taken += 1;
    }

    pub fn burn_in(&mut self, steps: usize) {
        for _ in 0..steps {
            self.step();
        }
    }

    /// One step, then either a random tuple entry or the cumulative product.
    pub fn next_with(&mut self, mode: OutputMode) -> GroupElement {
        self.step();
        match mode {
            OutputMode::Component => {
                let k = self.rng.below_usize(self.k());
                self.tuple[k].clone()
            }
            OutputMode::Cumulative => self.cumulative.clone(),
        }
    }
}

pub fn pra_step(state: &mut PraState) {
    state.step();
}

pub fn pra_next(state: &mut PraState, mode: OutputMode) -> GroupElement {
    state.next_with(mode)
}

impl RandomSource for PraState {
    fn next_element(&mut self) -> Result<GroupElement> {
        Ok(self.next_with(self.mode))
    }
}
