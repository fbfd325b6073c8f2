//! Random elements of a normal closure `N = <y_1^X, ..., y_k^X>` via a walk on
//! Andrews-Curtis tuples with a cumulative-product output.

use crate::blackbox::{BlackBox, RandomSource};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::randgen::{padded_tuple, Move};
use crate::rng::StreamRng;

/// The Andrews-Curtis oracle state.
pub struct AcState {
    bb: BlackBox,
    tuple: Vec<GroupElement>,
    cumulative: GroupElement,
    ambient: Box<dyn RandomSource>,
    rng: StreamRng,
    conjugation_probability: f64,
}

impl std::fmt::Debug for AcState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AcState")
            .field("k", &self.tuple.len())
            .field("conjugation_probability", &self.conjugation_probability)
            .finish_non_exhaustive()
    }
}

/// Starts an AC walk at the cyclically padded tuple of normal generators.
/// `ambient` supplies the conjugating elements `w`.
pub fn ac_init(
    bb: &BlackBox,
    ambient: impl RandomSource + 'static,
    normal_generators: &[GroupElement],
    k: usize,
    seed: u64,
) -> Result<AcState> {
    Ok(AcState {
        bb: bb.clone(),
        tuple: padded_tuple(normal_generators, k)?,
        cumulative: bb.identity(),
        ambient: Box::new(ambient),
        rng: StreamRng::new(seed),
        conjugation_probability: 0.5,
    })
}

impl AcState {
    /// Probability of choosing one of the four conjugated moves. The default
    /// 0.5 makes all eight elementary replacements equally likely.
    pub fn with_conjugation_probability(mut self, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("conjugation probability {p} outside [0, 1]")));
        }
        self.conjugation_probability = p;
        Ok(self)
    }

    pub fn tuple(&self) -> &[GroupElement] {
        &self.tuple
    }

    pub fn cumulative(&self) -> &GroupElement {
        &self.cumulative
    }

    pub fn k(&self) -> usize {
        self.tuple.len()
    }

    /// Replaces `x_i` by a move with `x_j`, or with `x_j^w` when `w` is given.
    pub fn apply_move(&mut self, i: usize, j: usize, mv: Move, w: Option<&GroupElement>) {
        assert!(i != j && i < self.k() && j < self.k());
        let y = match w {
            Some(w) => self.bb.conjugate(&self.tuple[j], w),
            None => self.tuple[j].clone(),
        };
        self.tuple[i] = mv.apply(&self.bb, &self.tuple[i], &y);
    }

    /// One random move; returns the updated cumulative product.
    pub fn step(&mut self) -> Result<GroupElement> {
        let (i, j) = self.rng.distinct_pair(self.k());
        let conjugated = if self.conjugation_probability == 0.5 {
            self.rng.below(2) == 1
        } else {
            self.rng.unit_f64() < self.conjugation_probability
        };
        let mv = [
            Move::LeftMul,
            Move::LeftMulInverse,
            Move::RightMul,
            Move::RightMulInverse,
        ][self.rng.below_usize(4)];
        let w = if conjugated {
            Some(self.ambient.next_element()?)
        } else {
            None
        };
        self.apply_move(i, j, mv, w.as_ref());
        self.cumulative = self.bb.multiply(&self.cumulative, &self.tuple[i]);
        Ok(self.cumulative.clone())
    }

    pub fn discard(&mut self, n: usize) -> Result<()> {
        for _ in 0..n {
            self.step()?;
        }
        Ok(())
    }
}

pub fn ac_next(state: &mut AcState) -> Result<GroupElement> {
    state.step()
}

impl RandomSource for AcState {
    fn next_element(&mut self) -> Result<GroupElement> {
        self.step()
    }
}

/// Baseline: a cumulative random walk whose steps are random conjugates
/// `y_s^w` of the normal generators.
pub struct ConjugateWalk {
    bb: BlackBox,
    generators: Vec<GroupElement>,
    current: GroupElement,
    ambient: Box<dyn RandomSource>,
    rng: StreamRng,
}

impl ConjugateWalk {
    pub fn new(
        bb: &BlackBox,
        ambient: impl RandomSource + 'static,
        normal_generators: &[GroupElement],
        seed: u64,
    ) -> Result<Self> {
        if normal_generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(ConjugateWalk {
            bb: bb.clone(),
            generators: normal_generators.to_vec(),
            current: bb.identity(),
            ambient: Box::new(ambient),
            rng: StreamRng::new(seed),
        })
    }
}

impl RandomSource for ConjugateWalk {
    fn next_element(&mut self) -> Result<GroupElement> {
        let s = self.rng.below_usize(self.generators.len());
        let w = self.ambient.next_element()?;
        let step = self.bb.conjugate(&self.generators[s], &w);
        self.current = self.bb.multiply(&self.current, &step);
        Ok(self.current.clone())
    }
}
