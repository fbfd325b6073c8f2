//! Centraliser of the transposition (1 2) in Sym(6) via the dihedral trick:
//! exact uniformity of zeta1 over the whole group, then the odd and even
//! oracles fed by uniform random elements.

use std::collections::BTreeMap;

use blackbox_groups::centralizer::{zeta1, CentralizerOracle, OracleMode};
use blackbox_groups::enumerate::centraliser;
use blackbox_groups::stats::{chi_square_uniform, conjugation_invariance, SampleCensus};
use blackbox_groups::{make_backend, BackendKind, RandomSource, Result, UniformSource};

fn main() -> Result<()> {
    let bb = make_backend(&BackendKind::Permutation(6))?;
    let i = bb.parse("(1 2)")?;
    let all = bb.enumerate(1000)?;
    let c = centraliser(&bb, &all, &i);
    println!("|Sym(6)| = {}, |C(i)| = {}", all.len(), c.len());

    let mut hits = BTreeMap::new();
    for x in &all {
        if let Some(v) = zeta1(&bb, &i, x) {
            *hits.entry(v).or_insert(0u64) += 1;
        }
    }
    let lo = hits.values().min().copied().unwrap_or(0);
    let hi = hits.values().max().copied().unwrap_or(0);
    println!(
        "zeta1 defined on {} elements; {} centraliser elements hit between {lo} and {hi} times",
        hits.values().sum::<u64>(),
        hits.len(),
    );

    for (mode, seed) in [(OracleMode::Odd, 1), (OracleMode::Even, 2)] {
        let src = UniformSource::new(&bb, seed);
        let mut oracle = CentralizerOracle::new(&bb, i.clone(), src, mode)?.with_discard(3);
        let census: SampleCensus = (0..20_000)
            .map(|_| oracle.next_element())
            .collect::<Result<_>>()?;
        let domain = census.support_len() as u64;
        let chi = chi_square_uniform(&census, domain)?;
        let disc = conjugation_invariance(&census, &bb, &c)?;
        println!(
            "{mode:?} oracle: support {domain}, chi-square p = {:.3}, conjugation discrepancy {disc:.4}",
            chi.p_value
        );
    }
    Ok(())
}
