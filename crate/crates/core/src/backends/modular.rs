//! The unit group `(Z/nZ)*`, with `E = n - 1` assumed as the global exponent.

use num_integer::Integer;

use crate::blackbox::GroupBackend;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::exponent::{coprime_refine, FactoredExponent};
use crate::rng::StreamRng;

/// A residue coprime to the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModularUnit {
    residue: u64,
    modulus: u64,
}

impl ModularUnit {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        let r = residue % modulus;
        if r.gcd(&modulus) != 1 {
            return Err(Error::invalid(format!("{residue} is not a unit modulo {modulus}")));
        }
        Ok(ModularUnit {
            residue: r,
            modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

#[derive(Debug, Clone)]
pub struct ModularUnits {
    n: u64,
}

impl ModularUnits {
    /// `n` must be odd and at least 3.
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::invalid(format!("modulus {n} must be odd and at least 3")));
        }
        Ok(ModularUnits { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn element(&self, residue: u64) -> Result<GroupElement> {
        Ok(encode(ModularUnit::new(residue, self.n)?.residue))
    }

    pub fn residue(&self, x: &GroupElement) -> u64 {
        decode_u64(x)
    }
}

fn encode(r: u64) -> GroupElement {
    GroupElement::from_bytes(&r.to_le_bytes())
}

fn decode_u64(x: &GroupElement) -> u64 {
    let mut b = [0u8; 8];
    b.copy_from_slice(x.as_bytes());
    u64::from_le_bytes(b)
}

impl GroupBackend for ModularUnits {
    fn name(&self) -> String {
        format!("units:{}", self.n)
    }

    fn encoding_len(&self) -> usize {
        8
    }

    fn identity(&self) -> GroupElement {
        encode(1)
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        encode(mul_mod(decode_u64(a), decode_u64(b), self.n))
    }

    fn invert(&self, a: &GroupElement) -> GroupElement {
        encode(inv_mod(decode_u64(a), self.n).expect("units are invertible"))
    }

    fn exponent(&self) -> FactoredExponent {
        coprime_refine(&[(self.n as u128 - 1, 1)]).expect("n - 1 >= 2")
    }

    fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != 8 {
            return Err(Error::BadEncoding {
                group: self.name(),
                expected: 8,
                got: bytes.len(),
            });
        }
        let x = GroupElement::from_bytes(bytes);
        let r = decode_u64(&x);
        if r >= self.n || r.gcd(&self.n) != 1 {
            return Err(Error::NotAnElement(self.name()));
        }
        Ok(x)
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement> {
        let v: i128 = literal
            .trim()
            .parse()
            .map_err(|e| Error::parse(literal, format!("{e}")))?;
        let r = v.rem_euclid(self.n as i128) as u64;
        self.element(r)
            .map_err(|e| Error::parse(literal, e.to_string()))
    }

    fn format_element(&self, x: &GroupElement) -> String {
        decode_u64(x).to_string()
    }

    fn random_element(&self, rng: &mut StreamRng) -> GroupElement {
        loop {
            let r = 1 + rng.below(self.n - 1);
            if r.gcd(&self.n) == 1 {
                return encode(r);
            }
        }
    }

    fn order(&self) -> Option<u128> {
        if self.n > 10_000_000 {
            return None;
        }
        Some((1..self.n).filter(|r| r.gcd(&self.n) == 1).count() as u128)
    }

    fn enumerate(&self, limit: usize) -> Option<Vec<GroupElement>> {
        if self.n as u128 > limit as u128 * 4 {
            return None;
        }
        let out: Vec<_> = (1..self.n)
            .filter(|r| r.gcd(&self.n) == 1)
            .map(encode)
            .collect();
        (out.len() <= limit).then_some(out)
    }
}
