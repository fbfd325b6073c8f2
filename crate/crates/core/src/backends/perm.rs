//! Symmetric groups acting on points `1..=n`.
//!
//! Products are applied left to right: `(s * t)(p) = t(s(p))`.

use std::fmt;

use num_integer::Integer;

use crate::blackbox::GroupBackend;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::exponent::{coprime_refine, FactoredExponent};
use crate::rng::StreamRng;

/// A permutation of `1..=n`, stored as zero-based images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From one-based images: `images[p-1]` is the image of point `p`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > 255 {
            return Err(Error::invalid("permutation degree above 255"));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(Error::invalid(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[im - 1] = true;
            out.push((im - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Product of the given one-based cycles, applied left to right.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut acc = Permutation::identity(n);
        for c in cycles {
            acc = acc.compose(&Self::single_cycle(n, c)?);
        }
        Ok(acc)
    }

    fn single_cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut p = Permutation::identity(n);
        for (k, &a) in cycle.iter().enumerate() {
            if a == 0 || a > n {
                return Err(Error::invalid(format!("point {a} outside 1..={n}")));
            }
            if cycle[..k].contains(&a) {
                return Err(Error::invalid(format!("point {a} repeated in a cycle")));
            }
            let b = cycle[(k + 1) % cycle.len()];
            p.images[a - 1] = (b - 1) as u8;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q as usize] = p as u8;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length at least 2, one-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn to_element(&self) -> GroupElement {
        GroupElement::from_bytes(&self.images)
    }

    pub fn from_element(x: &GroupElement) -> Permutation {
        Permutation {
            images: x.as_bytes().to_vec(),
        }
    }

    /// Cycle notation (`(1 2 3)(4 5)`) or one-line image notation (`[2,3,1]`).
    pub fn parse(n: usize, literal: &str) -> Result<Self> {
        let s = literal.trim();
        if s.is_empty() || s == "()" || s == "id" {
            return Ok(Permutation::identity(n));
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let images = parse_points(inner).map_err(|r| Error::parse(literal, r))?;
            if images.len() != n {
                return Err(Error::parse(literal, format!("expected {n} images")));
            }
            return Self::from_images(&images).map_err(|e| Error::parse(literal, e.to_string()));
        }
        let mut acc = Permutation::identity(n);
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(literal, "expected '('"))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::parse(literal, "unclosed cycle"))?;
            let points = parse_points(&body[..close]).map_err(|r| Error::parse(literal, r))?;
            let c = Self::single_cycle(n, &points).map_err(|e| Error::parse(literal, e.to_string()))?;
            acc = acc.compose(&c);
            rest = body[close + 1..].trim_start();
        }
        Ok(acc)
    }
}

fn parse_points(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("bad point {t:?}: {e}")))
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Order of a permutation: the lcm of its cycle lengths.
pub fn perm_order(x: &Permutation) -> u128 {
    x.cycles()
        .iter()
        .fold(1u128, |acc, c| acc.lcm(&(c.len() as u128)))
}

/// `Sym(n)` as a black-box backend.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    n: usize,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::invalid(format!("symmetric group degree {n} not in 1..=255")));
        }
        Ok(SymmetricGroup { n })
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

/// `lcm(1, ..., n)`, i.e. the exponent of `Sym(n)`, as `(prime, power)` pairs.
fn lcm_up_to(n: usize) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    for p in 2..=n {
        if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            continue;
        }
        let mut e = 0;
        let mut q = p;
        while q <= n {
            e += 1;
            q *= p;
        }
        out.push((p as u128, e));
    }
    out
}

impl GroupBackend for SymmetricGroup {
    fn name(&self) -> String {
        format!("sym:{}", self.n)
    }

    fn encoding_len(&self) -> usize {
        self.n
    }

    fn identity(&self) -> GroupElement {
        (0..self.n as u8).collect()
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let bb = b.as_bytes();
        a.as_bytes().iter().map(|&p| bb[p as usize]).collect()
    }

    fn invert(&self, a: &GroupElement) -> GroupElement {
        Permutation::from_element(a).inverse().to_element()
    }

    fn exponent(&self) -> FactoredExponent {
        let raw = lcm_up_to(self.n);
        if raw.is_empty() {
            // Sym(1): the trivial group; any exponent works.
            return coprime_refine(&[(2, 1)]).expect("constant");
        }
        coprime_refine(&raw).expect("lcm(1..n) fits")
    }

    fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != self.n {
            return Err(Error::BadEncoding {
                group: self.name(),
                expected: self.n,
                got: bytes.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &b in bytes {
            let b = b as usize;
            if b >= self.n || seen[b] {
                return Err(Error::NotAnElement(self.name()));
            }
            seen[b] = true;
        }
        Ok(GroupElement::from_bytes(bytes))
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement> {
        Ok(Permutation::parse(self.n, literal)?.to_element())
    }

    fn format_element(&self, x: &GroupElement) -> String {
        Permutation::from_element(x).to_string()
    }

    fn random_element(&self, rng: &mut StreamRng) -> GroupElement {
        let mut images: Vec<u8> = (0..self.n as u8).collect();
        for k in (1..self.n).rev() {
            let j = rng.below_usize(k + 1);
            images.swap(k, j);
        }
        GroupElement::from_bytes(&images)
    }

    fn true_order(&self, x: &GroupElement) -> Option<u128> {
        Some(perm_order(&Permutation::from_element(x)))
    }

    fn order(&self) -> Option<u128> {
        (1..=self.n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
    }

    fn enumerate(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let total = self.order()?;
        if total > limit as u128 {
            return None;
        }
        let mut current: Vec<u8> = (0..self.n as u8).collect();
        let mut out = Vec::with_capacity(total as usize);
        loop {
            out.push(GroupElement::from_bytes(&current));
            if !next_lexicographic(&mut current) {
                break;
            }
        }
        Some(out)
    }
}

fn next_lexicographic(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn orders_from_cycle_structure() {
        assert_eq!(perm_order(&Permutation::identity(5)), 1);
        assert_eq!(perm_order(&p(5, "(1 2 3)(4 5)")), 6);
        assert_eq!(perm_order(&p(5, "(1 2 3 4 5)")), 5);
    }

    #[test]
    fn composition_is_left_to_right() {
        // (1 2) then (1 3): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1.
        let prod = p(3, "(1 2)").compose(&p(3, "(1 3)"));
        assert_eq!(prod, p(3, "(1 2 3)"));
        assert_eq!(p(3, "(1 2)(1 3)"), prod);
    }

    #[test]
    fn display_round_trips() {
        for s in ["()", "(1 2)", "(1 3 5)(2 4)", "(2 6 4 3)"] {
            assert_eq!(p(6, s).to_string(), s);
        }
        assert_eq!(p(4, "[2,1,4,3]").to_string(), "(1 2)(3 4)");
        assert_eq!(p(4, "(1,2)(3,4)").to_string(), "(1 2)(3 4)");
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(Permutation::parse(3, "(1 4)").is_err());
        assert!(Permutation::parse(3, "(1 1)").is_err());
        assert!(Permutation::parse(3, "(1 2").is_err());
        assert!(Permutation::parse(3, "[1,1,2]").is_err());
        assert!(Permutation::parse(3, "[1,2]").is_err());
    }

    #[test]
    fn exponent_is_lcm() {
        assert_eq!(SymmetricGroup::new(3).unwrap().exponent().value(), 6);
        assert_eq!(SymmetricGroup::new(5).unwrap().exponent().value(), 60);
        assert_eq!(SymmetricGroup::new(7).unwrap().exponent().value(), 420);
        assert_eq!(SymmetricGroup::new(1).unwrap().exponent().value(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let g = SymmetricGroup::new(5).unwrap();
        let all = g.enumerate(1000).unwrap();
        assert_eq!(all.len(), 120);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 120);
        assert!(g.enumerate(100).is_none());
    }

    #[test]
    fn decode_validates() {
        let g = SymmetricGroup::new(3).unwrap();
        assert!(g.decode(&[0, 1, 2]).is_ok());
        assert!(g.decode(&[0, 0, 2]).is_err());
        assert!(g.decode(&[0, 1]).is_err());
    }
}
