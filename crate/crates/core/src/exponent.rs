//! Global exponents kept as a pairwise-coprime factor base.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A global exponent `E = 2^t * m` (m odd) stored as pairwise-coprime
/// `(base, multiplicity)` pairs. When `t > 0` the pair `(2, t)` is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredExponent {
    factors: Vec<(u128, u32)>,
    two_part: u32,
    odd_part: u128,
}

impl FactoredExponent {
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    /// `t` in `E = 2^t * m`.
    pub fn two_part(&self) -> u32 {
        self.two_part
    }

    /// `m` in `E = 2^t * m`.
    pub fn odd_part(&self) -> u128 {
        self.odd_part
    }

    pub fn value(&self) -> u128 {
        self.odd_part << self.two_part
    }

    /// Least common multiple of two exponents, refined over a joint base.
    pub fn lcm(&self, other: &FactoredExponent) -> Result<FactoredExponent> {
        let mut joint: Vec<(u128, u32)> = self.factors.clone();
        joint.extend_from_slice(&other.factors);
        let base = coprime_refine(&joint)?;
        let mut out = Vec::with_capacity(base.factors.len());
        for &(b, _) in &base.factors {
            let m = valuation(self.value(), b).max(valuation(other.value(), b));
            out.push((b, m));
        }
        build(out)
    }
}

fn valuation(mut n: u128, b: u128) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(b) {
        n /= b;
        v += 1;
    }
    v
}

/// Smallest `r` with `r^e = n` for the largest possible `e`.
fn perfect_power_root(n: u128) -> (u128, u32) {
    let mut best = (n, 1);
    let bits = 128 - n.leading_zeros();
    for e in 2..bits {
        let r = integer_root(n, e);
        if r >= 2 && checked_pow(r, e) == Some(n) {
            best = (r, e);
        }
    }
    best
}

fn checked_pow(b: u128, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

fn integer_root(n: u128, e: u32) -> u128 {
    let guess = (n as f64).powf(1.0 / e as f64).round() as u128;
    let lo = guess.saturating_sub(1).max(1);
    for r in lo..=guess + 1 {
        if checked_pow(r, e) == Some(n) {
            return r;
        }
    }
    guess
}

/// Refine a list of `(integer, multiplicity)` pairs into a pairwise-coprime
/// base whose product equals the product of the input, with every power of
/// two collected into the base `2`.
pub fn coprime_refine(raw: &[(u128, u32)]) -> Result<FactoredExponent> {
    let mut two = 0u32;
    let mut odd: Vec<(u128, u32)> = Vec::new();
    for &(n, mult) in raw {
        if n < 2 {
            return Err(Error::invalid(format!("factor {n} is less than 2")));
        }
        if mult == 0 {
            continue;
        }
        let tz = n.trailing_zeros();
        two += tz * mult;
        let rest = n >> tz;
        if rest > 1 {
            odd.push((rest, mult));
        }
    }

    // Split any two bases sharing a gcd until the whole list is coprime.
    loop {
        merge_equal(&mut odd);
        let mut split = None;
        'search: for a in 0..odd.len() {
            for b in a + 1..odd.len() {
                let g = odd[a].0.gcd(&odd[b].0);
                if g > 1 {
                    split = Some((a, b, g));
                    break 'search;
                }
            }
        }
        let Some((a, b, g)) = split else { break };
        let (xa, ma) = odd[a];
        let (xb, mb) = odd[b];
        odd.remove(b);
        odd.remove(a);
        for (x, m) in [(xa / g, ma), (xb / g, mb)] {
            if x > 1 {
                odd.push((x, m));
            }
        }
        odd.push((g, ma + mb));
    }

    // Reduce perfect powers: 9^1 becomes 3^2. Roots of coprime bases stay coprime.
    for f in odd.iter_mut() {
        let (r, e) = perfect_power_root(f.0);
        *f = (r, f.1 * e);
    }
    merge_equal(&mut odd);

    let mut factors = Vec::with_capacity(odd.len() + 1);
    if two > 0 {
        factors.push((2, two));
    }
    factors.extend(odd);
    build(factors)
}

fn merge_equal(v: &mut Vec<(u128, u32)>) {
    v.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::with_capacity(v.len());
    for &(b, m) in v.iter() {
        match out.last_mut() {
            Some(last) if last.0 == b => last.1 += m,
            _ => out.push((b, m)),
        }
    }
    *v = out;
}

fn build(mut factors: Vec<(u128, u32)>) -> Result<FactoredExponent> {
    factors.retain(|&(_, m)| m > 0);
    factors.sort_unstable();
    let mut two_part = 0;
    let mut odd_part: u128 = 1;
    for &(b, m) in &factors {
        if b == 2 {
            two_part = m;
        } else {
            let p = checked_pow(b, m)
                .ok_or_else(|| Error::invalid("exponent overflows 128 bits"))?;
            odd_part = odd_part
                .checked_mul(p)
                .ok_or_else(|| Error::invalid("exponent overflows 128 bits"))?;
        }
    }
    if two_part >= 127 || (odd_part << two_part) >> two_part != odd_part {
        return Err(Error::invalid("exponent overflows 128 bits"));
    }
    Ok(FactoredExponent {
        factors,
        two_part,
        odd_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_and_four() {
        let e = coprime_refine(&[(6, 1), (4, 1)]).unwrap();
        assert_eq!(e.factors(), &[(2, 3), (3, 1)]);
        assert_eq!(e.two_part(), 3);
        assert_eq!(e.odd_part(), 3);
        assert_eq!(e.value(), 24);
    }

    #[test]
    fn odd_prime_power() {
        let e = coprime_refine(&[(7, 2)]).unwrap();
        assert_eq!(e.factors(), &[(7, 2)]);
        assert_eq!((e.two_part(), e.odd_part()), (0, 49));
    }

    #[test]
    fn pure_two_power() {
        let e = coprime_refine(&[(2, 3)]).unwrap();
        assert_eq!(e.factors(), &[(2, 3)]);
        assert_eq!((e.two_part(), e.odd_part()), (3, 1));
    }

    #[test]
    fn composite_bases_are_split() {
        // 15 and 21 share 3; 9 is reduced to 3^2.
        let e = coprime_refine(&[(15, 1), (21, 1), (9, 1)]).unwrap();
        assert_eq!(e.factors(), &[(3, 4), (5, 1), (7, 1)]);
        assert_eq!(e.value(), 15 * 21 * 9);
    }

    #[test]
    fn unsplittable_composite_stays() {
        let e = coprime_refine(&[(560, 1)]).unwrap();
        assert_eq!(e.factors(), &[(2, 4), (35, 1)]);
    }

    #[test]
    fn rejects_small_factors() {
        assert!(coprime_refine(&[(1, 1)]).is_err());
    }

    #[test]
    fn lcm_of_equal_exponents_is_itself() {
        let e = coprime_refine(&[(2, 4), (3, 2), (7, 1)]).unwrap();
        assert_eq!(e.lcm(&e).unwrap(), e);
        let f = coprime_refine(&[(6, 1)]).unwrap();
        assert_eq!(e.lcm(&f).unwrap().value(), 16 * 9 * 7);
        let g = coprime_refine(&[(35, 1)]).unwrap();
        assert_eq!(f.lcm(&g).unwrap().value(), 210);
    }
}
