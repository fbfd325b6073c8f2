//! Miller-Rabin as involution hunting in `(Z/nZ)*`, run through the generic
//! black-box `i(x)` under the working hypothesis `E = n - 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::backends::ModularUnits;
use crate::blackbox::BlackBox;
use crate::error::{Error, Result};
use crate::rng::StreamRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimalityKind {
    Composite,
    ProbablyPrime,
}

/// Why a number was declared composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `x` shares the factor `gcd` with `n`.
    NonUnit { x: u64, gcd: u64 },
    /// The squares of `x^m` never reach 1, so `n - 1` is not an exponent.
    ExponentFailure { x: u64 },
    /// `i(x)` is an involution other than `-1`.
    NontrivialInvolution { x: u64, involution: u64 },
}

impl Witness {
    pub fn x(&self) -> u64 {
        match *self {
            Witness::NonUnit { x, .. }
            | Witness::ExponentFailure { x }
            | Witness::NontrivialInvolution { x, .. } => x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityVerdict {
    pub kind: PrimalityKind,
    /// Rounds actually run.
    pub rounds: u32,
    /// `4^-rounds` for `ProbablyPrime`; zero for `Composite`.
    #[serde(with = "rational_string")]
    pub error_bound: BigRational,
    pub witness: Option<Witness>,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of one round for a fixed `x`.
pub fn round_outcome(bb: &BlackBox, units: &ModularUnits, x: u64) -> Option<Witness> {
    let n = units.modulus();
    let g = x.gcd(&n);
    if g != 1 {
        return Some(Witness::NonUnit { x, gcd: g });
    }
    let el = units.element(x).expect("unit");
    match bb.involution_from(&el) {
        Err(_) => Some(Witness::ExponentFailure { x }),
        Ok(inv) => {
            let r = units.residue(&inv);
            if r == 1 || r == n - 1 {
                None
            } else {
                Some(Witness::NontrivialInvolution { x, involution: r })
            }
        }
    }
}

pub fn miller_rabin(n: u64, rounds: u32, seed: u64) -> Result<PrimalityVerdict> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("miller_rabin needs an odd n >= 3, got {n}")));
    }
    if rounds == 0 {
        return Err(Error::invalid("rounds must be at least 1"));
    }
    let units = ModularUnits::new(n)?;
    let bb = BlackBox::new(Box::new(units.clone()));
    miller_rabin_on(&bb, &units, rounds, seed)
}

/// [`miller_rabin`] against a caller-supplied box, so its multiplication
/// counter can be inspected afterwards. `bb` must wrap `units`.
pub fn miller_rabin_on(
    bb: &BlackBox,
    units: &ModularUnits,
    rounds: u32,
    seed: u64,
) -> Result<PrimalityVerdict> {
    let n = units.modulus();
    if rounds == 0 {
        return Err(Error::invalid("rounds must be at least 1"));
    }
    let mut rng = StreamRng::new(seed);
    for round in 1..=rounds {
        // x uniform in 2..=n-2; n = 3 only has x = 2.
        let x = if n > 4 { 2 + rng.below(n - 3) } else { 2 };
        if let Some(w) = round_outcome(bb, units, x) {
            return Ok(PrimalityVerdict {
                kind: PrimalityKind::Composite,
                rounds: round,
                error_bound: BigRational::from_integer(0.into()),
                witness: Some(w),
            });
        }
    }
    let four = BigInt::from(4);
    Ok(PrimalityVerdict {
        kind: PrimalityKind::ProbablyPrime,
        rounds,
        error_bound: BigRational::new(BigInt::one(), four.pow(rounds)),
        witness: None,
    })
}

/// `(gcd(n, x - 1), gcd(n, x + 1))` for a nontrivial square root `x` of 1.
pub fn factor_from_involution(n: u64, x: u64) -> Result<(u64, u64)> {
    if n < 3 {
        return Err(Error::invalid("modulus must be at least 3"));
    }
    let x = x % n;
    let sq = ((x as u128 * x as u128) % n as u128) as u64;
    if sq != 1 || x == 1 || x == n - 1 {
        return Err(Error::TrivialInvolution { n, x });
    }
    Ok((n.gcd(&(x - 1)), n.gcd(&(x + 1))))
}

pub const COUNT_INVOLUTIONS_LIMIT: u64 = 1_000_000;

/// Number of solutions of `x^2 = 1 (mod n)`, by exhaustive scan.
pub fn count_involutions(n: u64) -> Result<u64> {
    if n < 3 || n.is_multiple_of(2) || n > COUNT_INVOLUTIONS_LIMIT {
        return Err(Error::invalid(format!(
            "count_involutions needs odd 3 <= n <= {COUNT_INVOLUTIONS_LIMIT}, got {n}"
        )));
    }
    Ok((1..n).filter(|&x| x * x % n == 1).count() as u64)
}
