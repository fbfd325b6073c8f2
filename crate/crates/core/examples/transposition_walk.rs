//! Exact convolution powers of the random-transposition shuffle on Sym(5)
//! and its distance from uniform around the cutoff n ln(n) / 2.

use blackbox_groups::stats::{
    cutoff_steps, mixing_time, random_transpositions, tv_profile, uniform_transpositions,
    Distribution, ExactDistribution,
};
use blackbox_groups::{make_backend, BackendKind, Result};
use num_rational::BigRational;

fn main() -> Result<()> {
    let n = 5;
    let bb = make_backend(&BackendKind::Permutation(n))?;
    let p = random_transpositions::<BigRational>(&bb)?;
    let u = ExactDistribution::uniform(&bb, 200)?;
    let profile = tv_profile(&p, &u, 20, &bb)?;
    for c in [1.0, 2.0, 3.0] {
        let k = cutoff_steps(n, c);
        let tv = &profile[k - 1];
        let bound = 0.5 * (-2.0 * c).exp();
        println!("c = {c}: k = {k:>2}, TV = {tv} ({:.6}), 0.5 e^-2c = {bound:.6}", tv_f64(tv));
    }
    println!("mixing time (TV < 1/e): {}", mixing_time(&p, &bb, (-1.0f64).exp(), 100)?);

    let t = uniform_transpositions::<f64>(&bb)?;
    let uf = Distribution::<f64>::uniform(&bb, 200)?;
    let lazy_free = tv_profile(&t, &uf, 6, &bb)?;
    println!("pure transpositions stay on one parity coset: {lazy_free:.3?}");
    Ok(())
}

fn tv_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
