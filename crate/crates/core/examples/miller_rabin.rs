//! Miller-Rabin phrased as a search for involutions in (Z/nZ)*, and the
//! factorisation that a nontrivial involution yields.

use blackbox_groups::primality::{count_involutions, factor_from_involution, miller_rabin, Witness};
use blackbox_groups::Result;

fn main() -> Result<()> {
    for n in [561u64, 1105, 7919, 1_000_003, 3_215_031_751] {
        let v = miller_rabin(n, 20, 1)?;
        print!("{n:>10}: {:?} after {} round(s)", v.kind, v.rounds);
        match v.witness {
            Some(Witness::NontrivialInvolution { x, involution }) => {
                let (p, q) = factor_from_involution(n, involution)?;
                println!(", i({x}) = {involution} splits n as {p} * {q}");
            }
            Some(w) => println!(", witness {w:?}"),
            None => println!(", error bound {}", v.error_bound),
        }
    }
    for n in [561u64, 1105, 15, 105] {
        println!("square roots of 1 mod {n}: {}", count_involutions(n)?);
    }
    Ok(())
}
