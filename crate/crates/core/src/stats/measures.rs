//! Standard step distributions on symmetric groups.

use super::distribution::{Distribution, Weight};
use crate::backends::Permutation;
use crate::blackbox::BlackBox;
use crate::error::{Error, Result};

fn transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            out.push(Permutation::from_cycles(n, &[&[a, b]]).expect("valid points"));
        }
    }
    out
}

fn degree(bb: &BlackBox) -> Result<usize> {
    let name = bb.name();
    name.strip_prefix("sym:")
        .and_then(|n| n.parse().ok())
        .filter(|&n: &usize| n >= 2)
        .ok_or_else(|| Error::invalid(format!("transposition measures need sym:n with n >= 2, got {name}")))
}

/// Uniform on the `n(n-1)/2` transpositions.
pub fn uniform_transpositions<W: Weight>(bb: &BlackBox) -> Result<Distribution<W>> {
    let n = degree(bb)?;
    let ts: Vec<_> = transpositions(n).iter().map(|t| t.to_element()).collect();
    Distribution::uniform_on(bb, &ts)
}

/// The random-transposition shuffle: two positions chosen independently and
/// uniformly and swapped, so the identity has mass `1/n` and each
/// transposition `2/n^2`.
pub fn random_transpositions<W: Weight>(bb: &BlackBox) -> Result<Distribution<W>> {
    let n = degree(bb)?;
    let nn = (n * n) as u64;
    let mut masses = vec![(bb.identity(), W::from_ratio(1, n as u64))];
    for t in transpositions(n) {
        masses.push((t.to_element(), W::from_ratio(2, nn)));
    }
    Distribution::from_masses(bb, masses)
}

/// `ceil(n ln(n) / 2 + c n)`: the step count at offset `c` past the cutoff.
pub fn cutoff_steps(n: usize, c: f64) -> usize {
    let n = n as f64;
    (0.5 * n * n.ln() + c * n).ceil() as usize
}
