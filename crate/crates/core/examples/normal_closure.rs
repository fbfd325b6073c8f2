//! Random elements of the normal closure of (1 2 3) in Sym(5) from the
//! Andrews-Curtis walk, checked against a brute-force closure.

use blackbox_groups::enumerate::normal_closure;
use blackbox_groups::normal_closure::{ac_init, ConjugateWalk};
use blackbox_groups::randgen::PraState;
use blackbox_groups::stats::{tv_distance, Distribution, SampleCensus};
use blackbox_groups::{make_backend, BackendKind, RandomSource, Result};

fn main() -> Result<()> {
    let bb = make_backend(&BackendKind::Permutation(5))?;
    let ambient = [bb.parse("(1 2)")?, bb.parse("(1 2 3 4 5)")?];
    let y = [bb.parse("(1 2 3)")?];

    let n: Vec<_> = normal_closure(&bb, &ambient, &y, 1000)?.into_iter().collect();
    println!("brute-force normal closure has {} elements", n.len());
    let uniform = Distribution::<f64>::uniform_on(&bb, &n)?;

    let w = PraState::with_defaults(&bb, &ambient, 2)?;
    let mut ac = ac_init(&bb, w, &y, 10, 3)?;
    ac.discard(1000)?;
    let census: SampleCensus = (0..50_000).map(|_| ac.next_element()).collect::<Result<_>>()?;
    println!(
        "AC walk:        support {}, TV {:.4}",
        census.support_len(),
        tv_distance(&census.distribution(&bb)?, &uniform)?
    );

    let w = PraState::with_defaults(&bb, &ambient, 4)?;
    let mut walk = ConjugateWalk::new(&bb, w, &y, 5)?;
    let census: SampleCensus = (0..50_000).map(|_| walk.next_element()).collect::<Result<_>>()?;
    println!(
        "conjugate walk: support {}, TV {:.4}",
        census.support_len(),
        tv_distance(&census.distribution(&bb)?, &uniform)?
    );
    Ok(())
}
