mod common;

use std::collections::BTreeMap;

use blackbox_groups::stats::gamma::{chi_square_sf, gamma_q, ln_gamma};
use blackbox_groups::stats::{
    convolution_power, convolution_power_iterated, convolve, mixing_time, random_transpositions,
    tv_distance, tv_profile, uniform_transpositions, Distribution, ExactDistribution,
    SampleCensus,
};
use blackbox_groups::{Error, GroupElement, StreamRng};
use num_rational::BigRational;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use common::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn gamma_functions_agree_with_statrs() {
    for &x in &[0.1, 0.5, 1.0, 1.5, 2.5, 7.0, 10.3, 50.0, 170.5] {
        let ours = ln_gamma(x);
        let theirs = statrs::function::gamma::ln_gamma(x);
        assert!((ours - theirs).abs() <= 1e-9 * theirs.abs().max(1.0), "ln_gamma({x})");
    }
    for &a in &[0.5, 1.0, 2.5, 10.0, 59.5, 200.0] {
        for &x in &[0.01, 0.5, 1.0, 3.0, 10.0, 60.0, 250.0] {
            let ours = gamma_q(a, x);
            let theirs = statrs::function::gamma::gamma_ur(a, x);
            assert!((ours - theirs).abs() < 1e-9, "Q({a}, {x}): {ours} vs {theirs}");
        }
    }
    for &dof in &[1.0, 5.0, 23.0, 47.0, 119.0] {
        let chi = ChiSquared::new(dof).unwrap();
        for &x in &[0.5, dof / 2.0, dof, 2.0 * dof, 4.0 * dof] {
            let ours = chi_square_sf(x, dof);
            assert!((ours - chi.sf(x)).abs() < 1e-6, "sf({x}; {dof})");
        }
    }
}

#[test]
fn transposition_square_on_sym3_matches_pair_enumeration() {
    let bb = group("sym:3");
    let t = uniform_transpositions::<BigRational>(&bb).unwrap();
    let sq = convolve(&t, &t, &bb).unwrap();
    let ts: Vec<GroupElement> = ["(1 2)", "(1 3)", "(2 3)"].iter().map(|l| bb.parse(l).unwrap()).collect();
    let mut brute: BTreeMap<GroupElement, BigRational> = BTreeMap::new();
    for a in &ts {
        for b in &ts {
            *brute.entry(bb.multiply(a, b)).or_insert_with(|| q(0, 1)) += q(1, 9);
        }
    }
    assert_eq!(sq.support_len(), brute.len());
    for (g, m) in &brute {
        assert_eq!(&sq.mass(g), m);
    }
    assert_eq!(sq.mass(&bb.identity()), q(1, 3));
    assert_eq!(sq.mass(&bb.parse("(1 2 3)").unwrap()), q(1, 3));
}

#[test]
fn convolution_identities() {
    let bb = group("sym:4");
    let all = bb.enumerate(100).unwrap();
    let a = bb.parse("(1 2 3)").unwrap();
    let b = bb.parse("(3 4)").unwrap();
    let da = ExactDistribution::point_mass(&bb, a.clone());
    let db = ExactDistribution::point_mass(&bb, b.clone());
    assert_eq!(convolve(&da, &db, &bb).unwrap(), ExactDistribution::point_mass(&bb, bb.multiply(&a, &b)));
    let u = ExactDistribution::uniform_on(&bb, &all).unwrap();
    let p = random_transpositions::<BigRational>(&bb).unwrap();
    assert_eq!(convolve(&u, &p, &bb).unwrap(), u);
    assert_eq!(convolve(&p, &u, &bb).unwrap(), u);
    assert_eq!(convolution_power(&da, 7, &bb).unwrap(), ExactDistribution::point_mass(&bb, bb.pow(&a, 7)));
    for k in 1..=9 {
        assert_eq!(
            convolution_power(&p, k, &bb).unwrap(),
            convolution_power_iterated(&p, k, &bb).unwrap()
        );
    }
    assert_eq!(convolution_power(&p, 1, &bb).unwrap(), p);
}

#[test]
fn transposition_walks_are_monotone() {
    for n in 3..=5 {
        let bb = group(&format!("sym:{n}"));
        let u = ExactDistribution::uniform(&bb, 200).unwrap();
        for p in [
            uniform_transpositions::<BigRational>(&bb).unwrap(),
            random_transpositions::<BigRational>(&bb).unwrap(),
        ] {
            let profile = tv_profile(&p, &u, 16, &bb).unwrap();
            for w in profile.windows(2) {
                assert!(w[1] <= w[0], "Sym({n}): {} then {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn mixing_time_examples() {
    let bb = group("sym:3");
    let u = ExactDistribution::uniform(&bb, 10).unwrap();
    let threshold = (-1.0f64).exp();
    assert_eq!(mixing_time(&u, &bb, threshold, 10).unwrap(), 1);
    let flip = ExactDistribution::point_mass(&bb, bb.parse("(1 2)").unwrap());
    assert!(matches!(mixing_time(&flip, &bb, threshold, 50), Err(Error::NonConvergence { cap: 50 })));
    // Without identity mass the walk alternates parity cosets.
    let t = uniform_transpositions::<BigRational>(&bb).unwrap();
    assert!(matches!(mixing_time(&t, &bb, threshold, 50), Err(Error::NonConvergence { .. })));
    let lazy = random_transpositions::<BigRational>(&bb).unwrap();
    let k = mixing_time(&lazy, &bb, threshold, 50).unwrap();
    let pk = convolution_power(&lazy, k, &bb).unwrap();
    assert!(tv_distance(&pk, &u).unwrap() < q(1, 2));
    if k > 1 {
        let prev = convolution_power(&lazy, k - 1, &bb).unwrap();
        assert!(tv_distance(&prev, &u).unwrap() >= q(1, 3));
    }
}

#[test]
fn csv_round_trips() {
    let bb = group("sym:4");
    let mut rng = StreamRng::new(4);
    let census: SampleCensus = (0..500).map(|_| bb.random_element(&mut rng)).collect();
    let mut buf = Vec::new();
    census.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("encoding,count\n"));
    assert_eq!(SampleCensus::read_csv(&bb, &buf[..]).unwrap(), census);

    let p = random_transpositions::<BigRational>(&bb).unwrap();
    let mut buf = Vec::new();
    p.write_csv(&mut buf).unwrap();
    assert_eq!(ExactDistribution::read_csv(&bb, &buf[..]).unwrap(), p);
    let f = p.to_f64();
    let mut buf = Vec::new();
    f.write_csv(&mut buf).unwrap();
    assert_eq!(Distribution::<f64>::read_csv(&bb, &buf[..]).unwrap(), f);
}

#[test]
fn censuses_merge_by_adding_counts() {
    let bb = group("sym:3");
    let mut rng = StreamRng::new(9);
    let xs: Vec<_> = (0..300).map(|_| bb.random_element(&mut rng)).collect();
    let whole: SampleCensus = xs.iter().cloned().collect();
    let mut a: SampleCensus = xs[..100].iter().cloned().collect();
    let b: SampleCensus = xs[100..].iter().cloned().collect();
    a.merge(&b);
    assert_eq!(a, whole);
    assert_eq!(a.n_samples(), 300);
}

#[test]
fn distributions_from_different_groups_do_not_mix() {
    let s3 = group("sym:3");
    let s4 = group("sym:4");
    let a = Distribution::<f64>::uniform(&s3, 10).unwrap();
    let b = Distribution::<f64>::uniform(&s4, 100).unwrap();
    assert!(matches!(tv_distance(&a, &b), Err(Error::MismatchedGroups(..))));
}
