//! The black-box group interface and the exponent-driven primitives built on it.
//!
//! Conjugation is `x^g = g^-1 * x * g` everywhere in the crate.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::exponent::FactoredExponent;
use crate::rng::StreamRng;

/// Arithmetic of one concrete group. Implementations must produce canonical
/// encodings of a fixed length.
pub trait GroupBackend: Send + Sync + fmt::Debug {
    /// Short description, e.g. `sym:5`. Used to tag distributions and reports.
    fn name(&self) -> String;
    fn encoding_len(&self) -> usize;
    fn identity(&self) -> GroupElement;
    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement;
    fn invert(&self, a: &GroupElement) -> GroupElement;
    fn exponent(&self) -> FactoredExponent;

    /// Checks that `bytes` is a canonical encoding of an element.
    fn decode(&self, bytes: &[u8]) -> Result<GroupElement>;
    fn parse_element(&self, literal: &str) -> Result<GroupElement>;
    fn format_element(&self, x: &GroupElement) -> String;

    /// A uniformly distributed element drawn from `rng`.
    fn random_element(&self, rng: &mut StreamRng) -> GroupElement;

    /// Exact element order when the backend can read it off directly.
    fn true_order(&self, _x: &GroupElement) -> Option<u128> {
        None
    }

    /// Group order, if known.
    fn order(&self) -> Option<u128> {
        None
    }

    /// Every element, for groups of at most `limit` elements.
    fn enumerate(&self, _limit: usize) -> Option<Vec<GroupElement>> {
        None
    }
}

struct Inner {
    backend: Box<dyn GroupBackend>,
    exponent: FactoredExponent,
    mults: AtomicU64,
}

/// A black-box group: multiplication, inversion, equality, identity and a
/// global exponent, plus a count of the multiplications performed.
///
/// Cloning is cheap and clones share the multiplication counter.
#[derive(Clone)]
pub struct BlackBox {
    inner: Arc<Inner>,
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBox")
            .field("group", &self.name())
            .field("exponent", &self.inner.exponent)
            .finish()
    }
}

impl BlackBox {
    pub fn new(backend: Box<dyn GroupBackend>) -> Self {
        let exponent = backend.exponent();
        Self::with_exponent(backend, exponent)
    }

    /// Uses a caller-supplied exponent instead of the backend's.
    pub fn with_exponent(backend: Box<dyn GroupBackend>, exponent: FactoredExponent) -> Self {
        BlackBox {
            inner: Arc::new(Inner {
                backend,
                exponent,
                mults: AtomicU64::new(0),
            }),
        }
    }

    pub fn backend(&self) -> &dyn GroupBackend {
        self.inner.backend.as_ref()
    }

    pub fn name(&self) -> String {
        self.inner.backend.name()
    }

    pub fn exponent(&self) -> &FactoredExponent {
        &self.inner.exponent
    }

    pub fn identity(&self) -> GroupElement {
        self.inner.backend.identity()
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        *x == self.identity()
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.inner.mults.fetch_add(1, Ordering::Relaxed);
        self.inner.backend.multiply(a, b)
    }

    pub fn invert(&self, a: &GroupElement) -> GroupElement {
        self.inner.backend.invert(a)
    }

    /// `x^g = g^-1 x g`.
    pub fn conjugate(&self, x: &GroupElement, g: &GroupElement) -> GroupElement {
        let gi = self.invert(g);
        self.multiply(&self.multiply(&gi, x), g)
    }

    pub fn commutes(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    pub fn multiplications(&self) -> u64 {
        self.inner.mults.load(Ordering::Relaxed)
    }

    pub fn reset_multiplications(&self) {
        self.inner.mults.store(0, Ordering::Relaxed);
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        self.inner.backend.decode(bytes)
    }

    pub fn parse(&self, literal: &str) -> Result<GroupElement> {
        self.inner.backend.parse_element(literal)
    }

    pub fn format(&self, x: &GroupElement) -> String {
        self.inner.backend.format_element(x)
    }

    pub fn random_element(&self, rng: &mut StreamRng) -> GroupElement {
        self.inner.backend.random_element(rng)
    }

    pub fn enumerate(&self, limit: usize) -> Result<Vec<GroupElement>> {
        self.inner
            .backend
            .enumerate(limit)
            .ok_or_else(|| Error::NotEnumerable(self.name()))
    }

    /// Square-and-multiply; at most `2 * floor(log2 e)` multiplications.
    pub fn pow(&self, x: &GroupElement, e: u128) -> GroupElement {
        if e == 0 {
            return self.identity();
        }
        let top = 127 - e.leading_zeros();
        let mut acc = x.clone();
        for bit in (0..top).rev() {
            acc = self.multiply(&acc, &acc);
            if (e >> bit) & 1 == 1 {
                acc = self.multiply(&acc, x);
            }
        }
        acc
    }

    /// The least `l` built from the exponent's factor base with `x^l = 1`.
    ///
    /// Equals the order of `x` whenever every base is prime.
    pub fn pseudo_order(&self, x: &GroupElement) -> Result<u128> {
        let e = self.exponent();
        let mut l = e.value();
        if !self.is_identity(&self.pow(x, l)) {
            return Err(Error::ExponentViolation);
        }
        for &(base, mult) in e.factors() {
            for _ in 0..mult {
                let candidate = l / base;
                if self.is_identity(&self.pow(x, candidate)) {
                    l = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(l)
    }

    /// Order via the backend's order oracle when it has one, otherwise the
    /// pseudo-order.
    pub fn order(&self, x: &GroupElement) -> Result<u128> {
        match self.inner.backend.true_order(x) {
            Some(o) => Ok(o),
            None => self.pseudo_order(x),
        }
    }

    /// `i(x)`: the involution in `<x>`, or the identity when `x` has odd order.
    ///
    /// Computes `x^m` for the odd part `m` of `E`, then squares at most `t`
    /// times and keeps the last non-identity value.
    pub fn involution_from(&self, x: &GroupElement) -> Result<GroupElement> {
        let e = self.exponent();
        let mut y = self.pow(x, e.odd_part());
        if self.is_identity(&y) {
            return Ok(y);
        }
        for _ in 0..e.two_part() {
            let sq = self.multiply(&y, &y);
            if self.is_identity(&sq) {
                return Ok(y);
            }
            y = sq;
        }
        Err(Error::InvolutionFailure {
            steps: e.two_part(),
        })
    }

    /// `y = x^((r+1)/2)` with `y^2 = x`, for `x` of odd order.
    pub fn sqrt_odd_order(&self, x: &GroupElement) -> Result<GroupElement> {
        let r = self.exponent().odd_part();
        if !self.is_identity(&self.pow(x, r)) {
            return Err(Error::NotOddOrder);
        }
        Ok(self.pow(x, r.div_ceil(2)))
    }

    /// True when `x` has odd order, tested as `x^r = 1`.
    pub fn has_odd_order(&self, x: &GroupElement) -> bool {
        self.is_identity(&self.pow(x, self.exponent().odd_part()))
    }

    pub fn is_involution(&self, x: &GroupElement) -> bool {
        !self.is_identity(x) && self.is_identity(&self.multiply(x, x))
    }
}

/// Anything that hands out group elements one at a time.
pub trait RandomSource: Send {
    fn next_element(&mut self) -> Result<GroupElement>;
}

impl<S: RandomSource + ?Sized> RandomSource for Box<S> {
    fn next_element(&mut self) -> Result<GroupElement> {
        (**self).next_element()
    }
}

/// Uniform elements from the backend's native sampler.
#[derive(Debug)]
pub struct UniformSource {
    bb: BlackBox,
    rng: StreamRng,
}

impl UniformSource {
    pub fn new(bb: &BlackBox, seed: u64) -> Self {
        UniformSource {
            bb: bb.clone(),
            rng: StreamRng::new(seed),
        }
    }
}

impl RandomSource for UniformSource {
    fn next_element(&mut self) -> Result<GroupElement> {
        Ok(self.bb.random_element(&mut self.rng))
    }
}

/// Uniform draws from an explicit list, e.g. an enumerated subgroup.
#[derive(Debug, Clone)]
pub struct ListSource {
    elements: Vec<GroupElement>,
    rng: StreamRng,
}

impl ListSource {
    pub fn new(elements: Vec<GroupElement>, seed: u64) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(ListSource {
            elements,
            rng: StreamRng::new(seed),
        })
    }
}

impl RandomSource for ListSource {
    fn next_element(&mut self) -> Result<GroupElement> {
        let k = self.rng.below_usize(self.elements.len());
        Ok(self.elements[k].clone())
    }
}
