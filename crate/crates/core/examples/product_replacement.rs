//! Product replacement on Sym(5): census of cumulative outputs compared with
//! the uniform distribution. Component outputs are strongly correlated from
//! one step to the next, and the chi-square test notices.

use blackbox_groups::randgen::{OutputMode, PraState};
use blackbox_groups::stats::{chi_square_uniform, tv_distance, Distribution, SampleCensus};
use blackbox_groups::{make_backend, BackendKind, RandomSource, Result};

fn main() -> Result<()> {
    let bb = make_backend(&BackendKind::Permutation(5))?;
    let gens = [bb.parse("(1 2)")?, bb.parse("(1 2 3 4 5)")?];
    let uniform = Distribution::<f64>::uniform(&bb, 200)?;

    for mode in [OutputMode::Cumulative, OutputMode::Component] {
        let mut pra = PraState::with_defaults(&bb, &gens, 11)?.with_mode(mode);
        let census: SampleCensus = (0..60_000)
            .map(|_| pra.next_element())
            .collect::<Result<_>>()?;
        let tv = tv_distance(&census.distribution(&bb)?, &uniform)?;
        let chi = chi_square_uniform(&census, 120)?;
        println!(
            "{mode:?}: {} distinct, TV to uniform {tv:.4}, chi-square p = {:.3}",
            census.support_len(),
            chi.p_value
        );
    }
    println!("multiplications: {}", bb.multiplications());
    Ok(())
}
