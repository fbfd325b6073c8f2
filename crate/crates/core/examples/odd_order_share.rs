//! The share of x for which i i^x has odd order, in PSL(2, 7) and in the
//! direct square with a diagonal involution.

use blackbox_groups::centralizer::{odd_order_count, odd_order_share};
use blackbox_groups::{make_backend, Result, UniformSource};

fn main() -> Result<()> {
    for (spec, lit) in [
        ("psl2:7", "[0,1,6,0]"),
        ("psl2:7^2", "[0,1,6,0] | [0,1,6,0]"),
    ] {
        let bb = make_backend(&spec.parse()?)?;
        let i = bb.parse(lit)?;
        let all = bb.enumerate(100_000)?;
        let exact = odd_order_count(&bb, &i, &all) as f64 / all.len() as f64;
        let est = odd_order_share(&bb, &i, &mut UniformSource::new(&bb, 9), 50_000)?;
        println!(
            "{spec:<9} |X| = {:>5}  exact {exact:.5}  estimate {:.5} +- {:.5}",
            all.len(),
            est.share,
            est.std_error
        );
    }
    Ok(())
}
