//! Exact and empirical distributions on finite groups.

pub mod census;
pub mod distribution;
pub mod gamma;
pub mod measures;

pub use census::{chi_square_uniform, conjugation_invariance, ChiSquare, SampleCensus};
pub use distribution::{
    convolution_power, convolution_power_iterated, convolve, mixing_time, tv_distance, tv_profile,
    Distribution, ExactDistribution, Weight, CONVOLUTION_GUARD, DEFAULT_MIXING_CAP,
};
pub use measures::{cutoff_steps, random_transpositions, uniform_transpositions};
