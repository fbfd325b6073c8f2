//! Algorithms for black-box groups.
//!
//! A black-box group exposes only multiplication, inversion, equality of
//! opaque fixed-length encodings, and a source of random elements. This crate
//! provides:
//!
//! * [`blackbox`]: the [`BlackBox`] interface with exponent-driven primitives
//!   (`pow`, pseudo-orders, the involution `i(x)` of `<x>`, odd-order square
//!   roots).
//! * [`backends`]: symmetric groups, prime-field matrix groups, modular unit
//!   groups and direct products.
//! * [`randgen`]: product replacement with an optional cumulative product.
//! * [`normal_closure`]: the Andrews-Curtis oracle for normal closures.
//! * [`centralizer`]: oracles for centralisers of involutions (`zeta0`,
//!   `zeta1`, odd/even/mixed modes).
//! * [`membership`]: the gcd-of-orders membership test.
//! * [`primality`]: Miller-Rabin phrased as involution hunting.
//! * [`stats`]: exact convolutions, total variation, mixing times and
//!   goodness-of-fit tests used to check all of the above on small groups.
//! * [`cli`]: the batch experiment driver behind the `bbg` binary.

pub mod backends;
pub mod blackbox;
pub mod centralizer;
pub mod cli;
pub mod element;
pub mod enumerate;
pub mod error;
pub mod exponent;
pub mod membership;
pub mod normal_closure;
pub mod primality;
pub mod randgen;
pub mod rng;
pub mod stats;

pub use backends::{make_backend, BackendKind};
pub use blackbox::{BlackBox, GroupBackend, ListSource, RandomSource, UniformSource};
pub use element::GroupElement;
pub use error::{Error, Result};
pub use exponent::{coprime_refine, FactoredExponent};
pub use rng::StreamRng;
