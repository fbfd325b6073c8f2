//! Membership in Alt(5) inside Sym(5) from gcds of element orders.

use blackbox_groups::membership::{contains, VerdictKind};
use blackbox_groups::randgen::PraState;
use blackbox_groups::{make_backend, BackendKind, GroupElement, Result};

fn main() -> Result<()> {
    let bb = make_backend(&BackendKind::Permutation(5))?;
    let alt = [bb.parse("(1 2 3)")?, bb.parse("(1 2 3 4 5)")?];
    let order = |x: &GroupElement| bb.order(x);
    for lit in ["(1 2 3)", "(1 2)(3 4)", "(1 2 3 4 5)", "(1 2)", "(1 2 3 4)"] {
        let u = bb.parse(lit)?;
        let mut y = PraState::with_defaults(&bb, &alt, 17)?;
        let v = contains(&bb, &mut y, &order, &u, 32)?;
        let verdict = match v.kind {
            VerdictKind::DefiniteIn => "in Alt(5)",
            VerdictKind::ProbablyOut => "probably outside",
        };
        println!(
            "{lit:<12} {verdict:<17} gcd {} after {} samples",
            v.witness_gcd, v.samples_used
        );
    }
    Ok(())
}
