//! Direct products `A x B`, encoded as the concatenation of the factors.

use crate::blackbox::GroupBackend;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::exponent::FactoredExponent;
use crate::rng::StreamRng;

#[derive(Debug)]
pub struct DirectProduct {
    left: Box<dyn GroupBackend>,
    right: Box<dyn GroupBackend>,
}

impl DirectProduct {
    pub fn new(left: Box<dyn GroupBackend>, right: Box<dyn GroupBackend>) -> Self {
        DirectProduct { left, right }
    }

    pub fn split(&self, x: &GroupElement) -> (GroupElement, GroupElement) {
        let (a, b) = x.as_bytes().split_at(self.left.encoding_len());
        (GroupElement::from_bytes(a), GroupElement::from_bytes(b))
    }

    pub fn pair(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.as_bytes().iter().chain(b.as_bytes()).copied().collect()
    }

    pub fn left(&self) -> &dyn GroupBackend {
        self.left.as_ref()
    }

    pub fn right(&self) -> &dyn GroupBackend {
        self.right.as_ref()
    }
}

impl GroupBackend for DirectProduct {
    fn name(&self) -> String {
        format!("{}*{}", self.left.name(), self.right.name())
    }

    fn encoding_len(&self) -> usize {
        self.left.encoding_len() + self.right.encoding_len()
    }

    fn identity(&self) -> GroupElement {
        self.pair(&self.left.identity(), &self.right.identity())
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        self.pair(&self.left.multiply(&a1, &b1), &self.right.multiply(&a2, &b2))
    }

    fn invert(&self, a: &GroupElement) -> GroupElement {
        let (a1, a2) = self.split(a);
        self.pair(&self.left.invert(&a1), &self.right.invert(&a2))
    }

    fn exponent(&self) -> FactoredExponent {
        self.left
            .exponent()
            .lcm(&self.right.exponent())
            .expect("lcm of two valid exponents")
    }

    fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != self.encoding_len() {
            return Err(Error::BadEncoding {
                group: self.name(),
                expected: self.encoding_len(),
                got: bytes.len(),
            });
        }
        let (a, b) = bytes.split_at(self.left.encoding_len());
        Ok(self.pair(&self.left.decode(a)?, &self.right.decode(b)?))
    }

    /// Components separated by `|`, e.g. `(1 2) | [0,1,6,0]`.
    fn parse_element(&self, literal: &str) -> Result<GroupElement> {
        let (a, b) = literal
            .split_once('|')
            .ok_or_else(|| Error::parse(literal, "expected `left | right`"))?;
        Ok(self.pair(&self.left.parse_element(a)?, &self.right.parse_element(b)?))
    }

    fn format_element(&self, x: &GroupElement) -> String {
        let (a, b) = self.split(x);
        format!("{} | {}", self.left.format_element(&a), self.right.format_element(&b))
    }

    fn random_element(&self, rng: &mut StreamRng) -> GroupElement {
        let a = self.left.random_element(rng);
        let b = self.right.random_element(rng);
        self.pair(&a, &b)
    }

    fn true_order(&self, x: &GroupElement) -> Option<u128> {
        let (a, b) = self.split(x);
        let oa = self.left.true_order(&a)?;
        let ob = self.right.true_order(&b)?;
        Some(num_integer::lcm(oa, ob))
    }

    fn order(&self) -> Option<u128> {
        self.left.order()?.checked_mul(self.right.order()?)
    }

    fn enumerate(&self, limit: usize) -> Option<Vec<GroupElement>> {
        if self.order()? > limit as u128 {
            return None;
        }
        let a = self.left.enumerate(limit)?;
        let b = self.right.enumerate(limit)?;
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                out.push(self.pair(x, y));
            }
        }
        Some(out)
    }
}
