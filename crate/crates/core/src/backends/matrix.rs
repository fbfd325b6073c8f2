//! Matrix groups over prime fields: `GL(n, p)`, `SL(n, p)` and `PSL(2, p)`.
//!
//! Elements are encoded row-major, one little-endian `u16` per entry, with
//! entries reduced to `0..p`. `PSL(2, p)` elements are `SL(2, p)` matrices
//! normalised so that the first nonzero entry is at most `(p - 1) / 2`.

use std::fmt;

use crate::blackbox::GroupBackend;
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::exponent::{coprime_refine, FactoredExponent};
use crate::rng::StreamRng;

/// An `n x n` matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    n: usize,
    p: u32,
    entries: Vec<u32>,
}

fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i64) as u32)
}

impl MatrixElement {
    pub fn new(n: usize, p: u32, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|e| e.rem_euclid(p as i64) as u32)
            .collect();
        Ok(MatrixElement { n, p, entries })
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut entries = vec![0; n * n];
        for k in 0..n {
            entries[k * n + k] = 1;
        }
        MatrixElement { n, p, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &MatrixElement) -> MatrixElement {
        let n = self.n;
        let p = self.p as u64;
        let mut entries = vec![0u32; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.entries[r * n + k] as u64 * other.entries[k * n + c] as u64;
                }
                entries[r * n + c] = (acc % p) as u32;
            }
        }
        MatrixElement {
            n,
            p: self.p,
            entries,
        }
    }

    pub fn scale(&self, s: u32) -> MatrixElement {
        let p = self.p as u64;
        MatrixElement {
            n: self.n,
            p: self.p,
            entries: self
                .entries
                .iter()
                .map(|&e| ((e as u64 * s as u64) % p) as u32)
                .collect(),
        }
    }

    pub fn determinant(&self) -> u32 {
        let n = self.n;
        let p = self.p as u64;
        let mut m: Vec<u64> = self.entries.iter().map(|&e| e as u64).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for k in 0..n {
                    m.swap(pivot * n + k, col * n + k);
                }
                det = (p - det) % p;
            }
            let pv = m[col * n + col];
            det = det * pv % p;
            let pinv = inv_mod(pv as u32, self.p).expect("nonzero mod prime") as u64;
            for r in col + 1..n {
                let f = m[r * n + col] * pinv % p;
                if f == 0 {
                    continue;
                }
                for k in col..n {
                    m[r * n + k] = (m[r * n + k] + p * p - f * m[col * n + k]) % p;
                }
            }
        }
        det as u32
    }

    fn to_element(&self) -> GroupElement {
        self.entries
            .iter()
            .flat_map(|&e| (e as u16).to_le_bytes())
            .collect()
    }

    fn from_element(n: usize, p: u32, x: &GroupElement) -> MatrixElement {
        let entries = x
            .as_bytes()
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
            .collect();
        MatrixElement { n, p, entries }
    }

    /// Canonical representative of `{x, -x}`.
    fn projective_normalise(self) -> MatrixElement {
        let half = (self.p - 1) / 2;
        match self.entries.iter().find(|&&e| e != 0) {
            Some(&e) if e > half => self.scale(self.p - 1),
            _ => self,
        }
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self} mod {}", self.p)
    }
}

/// Gauss-Jordan inverse over `F_p`.
pub fn matrix_invert(x: &MatrixElement) -> Result<MatrixElement> {
    let n = x.n;
    let p = x.p as u64;
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for r in 0..n {
        for c in 0..n {
            m[r * w + c] = x.entries[r * n + c] as u64;
        }
        m[r * w + n + r] = 1;
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r * w + col] != 0)
            .ok_or(Error::Singular)?;
        if pivot != col {
            for k in 0..w {
                m.swap(pivot * w + k, col * w + k);
            }
        }
        let pinv = inv_mod(m[col * w + col] as u32, x.p).ok_or(Error::Singular)? as u64;
        for k in 0..w {
            m[col * w + k] = m[col * w + k] * pinv % p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * w + col];
            if f == 0 {
                continue;
            }
            for k in 0..w {
                m[r * w + k] = (m[r * w + k] + p * p - f * m[col * w + k]) % p;
            }
        }
    }
    let mut entries = vec![0u32; n * n];
    for r in 0..n {
        for c in 0..n {
            entries[r * n + c] = m[r * w + n + c] as u32;
        }
    }
    Ok(MatrixElement { n, p: x.p, entries })
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `|GL(n, p)| = p^(n(n-1)/2) (p - 1)(p^2 - 1)...(p^n - 1)` as a refined
/// factor base.
pub fn gl_exponent(n: u32, p: u64) -> Result<FactoredExponent> {
    if n == 0 || !is_prime(p) {
        return Err(Error::invalid(format!("gl_exponent needs n >= 1 and p prime (n={n}, p={p})")));
    }
    let p = p as u128;
    let mut raw = vec![(p, n * (n - 1) / 2)];
    let mut q: u128 = 1;
    for _ in 0..n {
        q = q
            .checked_mul(p)
            .ok_or_else(|| Error::invalid("|GL(n, p)| overflows 128 bits"))?;
        if q > 2 {
            raw.push((q - 1, 1));
        }
    }
    coprime_refine(&raw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    General,
    Special,
    /// `PSL(2, p)`; only `n = 2`.
    ProjectiveSpecial,
}

#[derive(Debug, Clone)]
pub struct MatrixGroup {
    n: usize,
    p: u32,
    kind: MatrixKind,
}

/// Largest `p^(n^2)` the brute-force enumerator will scan.
const ENUMERATION_SCAN_LIMIT: u128 = 20_000_000;

impl MatrixGroup {
    pub fn new(kind: MatrixKind, n: usize, p: u32) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::invalid(format!("matrix dimension {n} not in 1..=16")));
        }
        if p == 2 || !is_prime(p as u64) || p > u16::MAX as u32 {
            return Err(Error::invalid(format!("modulus {p} is not an odd prime below 2^16")));
        }
        if kind == MatrixKind::ProjectiveSpecial && n != 2 {
            return Err(Error::invalid("PSL is only supported in dimension 2"));
        }
        Ok(MatrixGroup { n, p, kind })
    }

    pub fn general(n: usize, p: u32) -> Result<Self> {
        Self::new(MatrixKind::General, n, p)
    }

    pub fn special(n: usize, p: u32) -> Result<Self> {
        Self::new(MatrixKind::Special, n, p)
    }

    pub fn psl2(p: u32) -> Result<Self> {
        Self::new(MatrixKind::ProjectiveSpecial, 2, p)
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn matrix(&self, x: &GroupElement) -> MatrixElement {
        MatrixElement::from_element(self.n, self.p, x)
    }

    /// Checks membership and canonicalises a raw matrix.
    pub fn element(&self, m: MatrixElement) -> Result<GroupElement> {
        if m.n != self.n || m.p != self.p {
            return Err(Error::NotAnElement(self.name()));
        }
        let det = m.determinant();
        let ok = match self.kind {
            MatrixKind::General => det != 0,
            _ => det == 1,
        };
        if !ok {
            return Err(Error::NotAnElement(self.name()));
        }
        Ok(self.finish(m))
    }

    fn finish(&self, m: MatrixElement) -> GroupElement {
        match self.kind {
            MatrixKind::ProjectiveSpecial => m.projective_normalise().to_element(),
            _ => m.to_element(),
        }
    }

    fn gl_order(&self) -> Option<u128> {
        let p = self.p as u128;
        let n = self.n as u32;
        let mut total = p.checked_pow(n * (n - 1) / 2)?;
        for k in 1..=n {
            total = total.checked_mul(p.checked_pow(k)? - 1)?;
        }
        Some(total)
    }
}

impl GroupBackend for MatrixGroup {
    fn name(&self) -> String {
        match self.kind {
            MatrixKind::General => format!("gl:{}:{}", self.n, self.p),
            MatrixKind::Special => format!("sl:{}:{}", self.n, self.p),
            MatrixKind::ProjectiveSpecial => format!("psl2:{}", self.p),
        }
    }

    fn encoding_len(&self) -> usize {
        2 * self.n * self.n
    }

    fn identity(&self) -> GroupElement {
        MatrixElement::identity(self.n, self.p).to_element()
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.finish(self.matrix(a).mul(&self.matrix(b)))
    }

    fn invert(&self, a: &GroupElement) -> GroupElement {
        let inv = matrix_invert(&self.matrix(a)).expect("group elements are invertible");
        self.finish(inv)
    }

    fn exponent(&self) -> FactoredExponent {
        gl_exponent(self.n as u32, self.p as u64).expect("validated at construction")
    }

    fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != self.encoding_len() {
            return Err(Error::BadEncoding {
                group: self.name(),
                expected: self.encoding_len(),
                got: bytes.len(),
            });
        }
        let x = GroupElement::from_bytes(bytes);
        let m = self.matrix(&x);
        if m.entries.iter().any(|&e| e >= self.p) {
            return Err(Error::NotAnElement(self.name()));
        }
        let canon = self.element(m)?;
        if canon != x {
            return Err(Error::NotAnElement(self.name()));
        }
        Ok(x)
    }

    fn parse_element(&self, literal: &str) -> Result<GroupElement> {
        let values: std::result::Result<Vec<i64>, _> = literal
            .split(|c: char| c == ',' || c == '[' || c == ']' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>())
            .collect();
        let values = values.map_err(|e| Error::parse(literal, e.to_string()))?;
        let m = MatrixElement::new(self.n, self.p, values)
            .map_err(|e| Error::parse(literal, e.to_string()))?;
        self.element(m)
            .map_err(|e| Error::parse(literal, e.to_string()))
    }

    fn format_element(&self, x: &GroupElement) -> String {
        self.matrix(x).to_string()
    }

    fn random_element(&self, rng: &mut StreamRng) -> GroupElement {
        loop {
            let entries: Vec<i64> = (0..self.n * self.n)
                .map(|_| rng.below(self.p as u64) as i64)
                .collect();
            let m = MatrixElement::new(self.n, self.p, entries).expect("sized");
            let det = m.determinant();
            if det == 0 {
                continue;
            }
            if self.kind == MatrixKind::General {
                return m.to_element();
            }
            // Scaling the first row by det^-1 maps GL onto SL, (p-1) to 1.
            let dinv = inv_mod(det, self.p).expect("nonzero") as u64;
            let mut m = m;
            for c in 0..self.n {
                m.entries[c] = ((m.entries[c] as u64 * dinv) % self.p as u64) as u32;
            }
            return self.finish(m);
        }
    }

    fn order(&self) -> Option<u128> {
        let gl = self.gl_order()?;
        let p = self.p as u128;
        Some(match self.kind {
            MatrixKind::General => gl,
            MatrixKind::Special => gl / (p - 1),
            MatrixKind::ProjectiveSpecial => gl / (p - 1) / 2,
        })
    }

    fn enumerate(&self, limit: usize) -> Option<Vec<GroupElement>> {
        if self.order()? > limit as u128 {
            return None;
        }
        let cells = self.n * self.n;
        let scan = (self.p as u128).checked_pow(cells as u32)?;
        if scan > ENUMERATION_SCAN_LIMIT {
            return None;
        }
        let mut out = Vec::new();
        let mut digits = vec![0i64; cells];
        for _ in 0..scan {
            let m = MatrixElement::new(self.n, self.p, digits.clone()).expect("sized");
            let raw = m.to_element();
            // Keep only canonical representatives (matters for PSL).
            if matches!(self.element(m), Ok(x) if x == raw) {
                out.push(raw);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < self.p as i64 {
                    break;
                }
                *d = 0;
            }
        }
        out.sort();
        Some(out)
    }
}
