//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use blackbox_groups::backends::ModularUnits;
use blackbox_groups::centralizer::{dihedral_product, odd_order_share, zeta0, zeta1};
use blackbox_groups::membership::{contains, VerdictKind};
use blackbox_groups::normal_closure::ac_init;
use blackbox_groups::primality::{miller_rabin, round_outcome, PrimalityKind};
use blackbox_groups::randgen::PraState;
use blackbox_groups::stats::{
    cutoff_steps, random_transpositions, tv_distance, tv_profile, Distribution, ExactDistribution,
    SampleCensus,
};
use blackbox_groups::{BlackBox, GroupElement, RandomSource, UniformSource};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use common::*;

type Criterion = fn() -> Result<String, String>;

const MINUTE: Duration = Duration::from_secs(60);

fn within_minute(start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > MINUTE {
        return Err(format!("{what} took {t:?}"));
    }
    Ok(())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every element of `spec`, enumerated independently of the library.
fn elements(spec: &str) -> (BlackBox, Vec<GroupElement>) {
    let bb = group(spec);
    let all = if let Some(n) = spec.strip_prefix("sym:") {
        sym_elements(&bb, n.parse().unwrap())
    } else {
        let mut parts = spec.split(':').skip(1);
        let n: usize = parts.next().unwrap().parse().unwrap();
        let p: i64 = parts.next().unwrap().parse().unwrap();
        let mut set = BTreeSet::new();
        for lit in gl_literals(n, p) {
            // Literals outside SL are rejected by the sl backend.
            if let Ok(x) = bb.parse(&lit) {
                set.insert(x);
            }
        }
        set.into_iter().collect()
    };
    (bb, all)
}

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let cases = [
        ("sym:4", "(1 2)"),
        ("sym:5", "(1 2)"),
        ("sym:6", "(1 2)"),
        ("sl:2:3", "[2,0,0,2]"),
        ("sl:2:5", "[4,0,0,4]"),
    ];
    let mut summary = Vec::new();
    for (spec, lit) in cases {
        let (bb, all) = elements(spec);
        let i = bb.parse(lit).unwrap();
        let c: BTreeSet<_> = naive_centraliser(&bb, &all, &i).into_iter().collect();
        let mut counts: BTreeMap<GroupElement, u64> = BTreeMap::new();
        for x in &all {
            if let Some(v) = zeta1(&bb, &i, x) {
                *counts.entry(v).or_default() += 1;
            }
        }
        let keys: BTreeSet<_> = counts.keys().cloned().collect();
        check(keys == c, || format!("{spec}: zeta1 image is not C(i)"))?;
        let per: BTreeSet<u64> = counts.values().copied().collect();
        check(per.len() == 1, || format!("{spec}: unequal counts {per:?}"))?;
        summary.push(format!("{spec} {}x{}", c.len(), per.iter().next().unwrap()));
    }
    within_minute(start, "criterion 1")?;
    Ok(summary.join(", "))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let mut pairs = 0u64;
    for (spec, lits) in [
        ("sym:4", &["(1 2)", "(1 2)(3 4)"][..]),
        ("sym:5", &["(1 2)", "(1 2)(3 4)"][..]),
    ] {
        let (bb, all) = elements(spec);
        for lit in lits {
            let i = bb.parse(lit).unwrap();
            let c = naive_centraliser(&bb, &all, &i);
            for x in &all {
                let z0 = zeta0(&bb, &i, x);
                let z1 = zeta1(&bb, &i, x);
                for cc in &c {
                    let conj = |v: &GroupElement| bb.multiply(&bb.multiply(&bb.invert(cc), v), cc);
                    let lhs0 = zeta0(&bb, &i, &bb.multiply(x, cc));
                    check(lhs0 == z0.as_ref().map(conj), || {
                        format!("{spec}, i = {lit}: zeta0(xc) != zeta0(x)^c")
                    })?;
                    let lhs1 = zeta1(&bb, &i, &bb.multiply(cc, x));
                    let rhs1 = z1.as_ref().map(|v| bb.multiply(v, &bb.invert(cc)));
                    check(lhs1 == rhs1, || {
                        format!("{spec}, i = {lit}: zeta1(cx) != zeta1(x) c^-1")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    within_minute(start, "criterion 2")?;
    Ok(format!("{pairs} (x, c) pairs"))
}

/// `{(1 2)^{sgn s} s : s in Sym{3..n}}` built from one-line images.
fn twisted_copy(bb: &BlackBox, n: usize) -> BTreeSet<GroupElement> {
    all_images(n - 2)
        .into_iter()
        .map(|im| {
            let odd = inversions(&im) % 2 == 1;
            let mut full = if odd { vec![2, 1] } else { vec![1, 2] };
            full.extend(im.iter().map(|p| p + 2));
            bb.parse(&one_line(&full)).unwrap()
        })
        .collect()
}

fn undefined_share(m: u64) -> BigRational {
    BigRational::new((4 * m + 2).into(), ((m + 1) * (m + 2)).into())
}

fn criterion_3() -> Result<String, String> {
    let start = Instant::now();
    let (bb, all) = elements("sym:7");
    let i = bb.parse("(1 2)").unwrap();
    let mut values = BTreeSet::new();
    let mut undefined = 0u64;
    for x in &all {
        match zeta0(&bb, &i, x) {
            None => undefined += 1,
            Some(v) => {
                let im = images_of(&v);
                let moved: Vec<usize> = (1..=7).filter(|&p| im[p - 1] != p).collect();
                let shape = moved.len() == 4
                    && moved[0] == 1
                    && moved[1] == 2
                    && im[0] == 2
                    && moved[2] >= 3
                    && im[moved[2] - 1] == moved[3];
                check(shape, || format!("zeta0 value {} is not (1 2)(s t)", bb.format(&v)))?;
                values.insert(v);
            }
        }
    }
    let c0 = naive_closure(&bb, &values.into_iter().collect::<Vec<_>>());
    let copy = twisted_copy(&bb, 7);
    check(c0 == copy, || "C0 differs from the copy of Sym(5) on {3..7}".into())?;
    // Projection to {3..7} is a bijection onto Sym{3..7}.
    let projected: BTreeSet<Vec<usize>> = c0.iter().map(|g| images_of(g)[2..].to_vec()).collect();
    check(projected.len() == 120, || "projection to {3..7} is not injective".into())?;
    let with_i: BTreeSet<_> = c0.iter().flat_map(|g| [g.clone(), bb.multiply(g, &i)]).collect();
    let c: BTreeSet<_> = naive_centraliser(&bb, &all, &i).into_iter().collect();
    check(with_i == c, || "C0 <i> is not the full centraliser".into())?;

    let measured = BigRational::new(undefined.into(), (all.len() as u64).into());
    check(measured == undefined_share(5), || {
        format!("undefined share {measured} != {}", undefined_share(5))
    })?;
    // The same closed form holds for Sym(5), Sym(6), Sym(8), and m P stays below 4.
    for m in [3u64, 4, 6] {
        let (bb, all) = elements(&format!("sym:{}", m + 2));
        let i = bb.parse("(1 2)").unwrap();
        let u = all.iter().filter(|x| zeta0(&bb, &i, x).is_none()).count() as u64;
        let share = BigRational::new(u.into(), (all.len() as u64).into());
        check(share == undefined_share(m), || format!("Sym({}): share {share}", m + 2))?;
        let scaled = (share * BigRational::from_integer(m.into())).to_f64().unwrap();
        check(scaled < 4.0, || format!("m P = {scaled} for m = {m}"))?;
    }
    within_minute(start, "criterion 3")?;
    Ok(format!("|C0| = 120, undefined {undefined}/5040 = {measured}"))
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    let n = 5;
    let (bb, all) = elements("sym:5");
    let p = random_transpositions::<BigRational>(&bb).map_err(|e| e.to_string())?;
    let u = ExactDistribution::uniform_on(&bb, &all).map_err(|e| e.to_string())?;
    let k_max = cutoff_steps(n, 3.0);
    let profile = tv_profile(&p, &u, k_max, &bb).map_err(|e| e.to_string())?;
    for w in profile.windows(2) {
        check(w[1] <= w[0], || format!("TV increased from {} to {}", w[0], w[1]))?;
    }

    // Independent dense iteration of the same chain at each k_c.
    let step: Vec<(GroupElement, BigRational)> = {
        let mut v = vec![(bb.identity(), BigRational::new(1.into(), 5.into()))];
        for a in 1..=n {
            for b in a + 1..=n {
                v.push((bb.parse(&format!("({a} {b})")).unwrap(), BigRational::new(2.into(), 25.into())));
            }
        }
        v
    };
    let uniform_mass = BigRational::new(1.into(), 120.into());
    let mut a_fit = 0.0f64;
    let mut parts = Vec::new();
    for c in [1.0, 2.0, 3.0] {
        let k = cutoff_steps(n, c);
        let dense = dense_walk(&bb, &all, &step, k);
        let tv_dense = dense
            .values()
            .fold(BigRational::zero(), |acc, m| acc + (m - &uniform_mass).abs())
            / BigRational::from_integer(2.into());
        check(tv_dense == profile[k - 1], || format!("k = {k}: convolution and dense walk disagree"))?;
        let tv = profile[k - 1].to_f64().unwrap();
        let ratio = tv / (0.5 * (-2.0 * c).exp());
        a_fit = a_fit.max(ratio);
        parts.push(format!("k={k} TV={tv:.3e}"));
    }
    for c in [1.0, 2.0, 3.0] {
        let tv = profile[cutoff_steps(n, c) - 1].to_f64().unwrap();
        check(tv <= 0.5 * (-2.0 * c).exp() * a_fit * (1.0 + 1e-12), || "bound fails".into())?;
    }
    check(a_fit <= 10.0, || format!("a_fit = {a_fit}"))?;
    within_minute(start, "criterion 4")?;
    Ok(format!("{}, a_fit = {a_fit:.3}, monotone", parts.join(", ")))
}

fn criterion_5() -> Result<String, String> {
    let start = Instant::now();
    let (bb, all) = elements("sym:5");
    let alt_gens = [bb.parse("(1 2 3)").unwrap(), bb.parse("(1 2 3 4 5)").unwrap()];
    let alt = naive_closure(&bb, &alt_gens);
    check(alt.len() == 60, || "Alt(5) closure has wrong size".into())?;
    let order = |x: &GroupElement| Ok(naive_order(&bb, x));
    let mut worst_rate = 1.0f64;
    for u in &all {
        let inside = alt.contains(u);
        check(inside == is_even_perm(u), || "parity and closure disagree".into())?;
        let mut hits = 0;
        for seed in 0..10u64 {
            let mut y = PraState::with_defaults(&bb, &alt_gens, seed).unwrap();
            let v = contains(&bb, &mut y, &order, u, 32).map_err(|e| e.to_string())?;
            if v.kind == VerdictKind::DefiniteIn {
                check(inside, || format!("false DefiniteIn for {}", bb.format(u)))?;
                hits += 1;
            } else if !inside {
                check(v.witness_gcd % 2 == 0, || {
                    format!("odd D = {} for {}", v.witness_gcd, bb.format(u))
                })?;
            }
        }
        if inside {
            worst_rate = worst_rate.min(hits as f64 / 10.0);
        }
    }
    check(worst_rate >= 0.99, || format!("DefiniteIn rate {worst_rate}"))?;
    within_minute(start, "criterion 5")?;
    Ok(format!("1200 runs, no false DefiniteIn, worst in-rate {worst_rate}"))
}

fn criterion_6() -> Result<String, String> {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in [561u64, 1105] {
        let units = ModularUnits::new(n).unwrap();
        let bb = BlackBox::new(Box::new(units.clone()));
        let mut liars = 0u64;
        let mut phi = 0u64;
        for x in 1..n {
            if gcd(x as u128, n as u128) != 1 {
                continue;
            }
            phi += 1;
            let liar = round_outcome(&bb, &units, x).is_none();
            check(liar == is_strong_liar(n, x), || format!("n = {n}, x = {x}: disagrees with textbook test"))?;
            liars += liar as u64;
        }
        check(4 * liars <= phi, || format!("n = {n}: {liars}/{phi} non-witnesses"))?;
        for seed in 0..100 {
            let v = miller_rabin(n, 20, seed).map_err(|e| e.to_string())?;
            check(v.kind == PrimalityKind::Composite, || format!("n = {n}, seed {seed}: not Composite"))?;
        }
        parts.push(format!("{n}: {liars}/{phi} non-witnesses"));
    }
    let mut primes = 0;
    for n in (3..10_000u64).step_by(2).filter(|&n| is_prime_trial(n)) {
        let v = miller_rabin(n, 20, n).map_err(|e| e.to_string())?;
        check(v.kind == PrimalityKind::ProbablyPrime, || format!("prime {n} declared composite"))?;
        primes += 1;
    }
    within_minute(start, "criterion 6")?;
    Ok(format!("{}, {primes} odd primes < 10^4 ProbablyPrime", parts.join(", ")))
}

fn criterion_7() -> Result<String, String> {
    let (bb, all) = elements("sym:5");
    let ambient = [bb.parse("(1 2)").unwrap(), bb.parse("(1 2 3 4 5)").unwrap()];
    let y = [bb.parse("(1 2 3)").unwrap()];
    let n = naive_normal_closure(&bb, &all, &y);
    let alt: BTreeSet<_> = all.iter().filter(|g| is_even_perm(g)).cloned().collect();
    check(n == alt, || "brute-force closure is not Alt(5)".into())?;

    let w = PraState::with_defaults(&bb, &ambient, 101).unwrap();
    let mut ac = ac_init(&bb, w, &y, 10, 7).map_err(|e| e.to_string())?;
    ac.discard(1000).map_err(|e| e.to_string())?;
    let census: SampleCensus = (0..100_000)
        .map(|_| ac.next_element())
        .collect::<blackbox_groups::Result<_>>()
        .map_err(|e| e.to_string())?;
    let support: BTreeSet<_> = census.support().cloned().collect();
    check(support == n, || format!("support has {} elements", support.len()))?;
    let uniform = Distribution::<f64>::uniform_on(&bb, &n.iter().cloned().collect::<Vec<_>>()).unwrap();
    let tv = tv_distance(&census.distribution(&bb).unwrap(), &uniform).unwrap();
    check(tv < 0.05, || format!("TV = {tv}"))?;
    Ok(format!("support = Alt(5), TV = {tv:.4}"))
}

fn exact_share(bb: &BlackBox, all: &[GroupElement], i: &GroupElement) -> BigRational {
    let odd = all
        .iter()
        .filter(|x| naive_order(bb, &dihedral_product(bb, i, x)) % 2 == 1)
        .count() as u64;
    BigRational::new(odd.into(), (all.len() as u64).into())
}

fn criterion_8() -> Result<String, String> {
    let start = Instant::now();
    let trials = 100_000u64;
    let bb = group("psl2:7");
    let all = bb.enumerate(1000).unwrap();
    check(all.len() == 168, || format!("|PSL(2,7)| = {}", all.len()))?;
    let i = bb.parse("[0,1,6,0]").unwrap();
    let p = exact_share(&bb, &all, &i);
    let pf = p.to_f64().unwrap();
    check((0.25..=0.5).contains(&pf), || format!("share {p} outside [1/4, 1/2]"))?;
    let est = odd_order_share(&bb, &i, &mut UniformSource::new(&bb, 3), trials).unwrap();
    let se = (pf * (1.0 - pf) / trials as f64).sqrt();
    let z = (est.share - pf) / se;
    check(z.abs() <= 3.0, || format!("PSL(2,7): estimate {} vs exact {pf}, z = {z:.2}", est.share))?;

    let sq = group("psl2:7^2");
    let di = sq.parse("[0,1,6,0] | [0,1,6,0]").unwrap();
    let target = pf * pf;
    let est2 = odd_order_share(&sq, &di, &mut UniformSource::new(&sq, 4), trials).unwrap();
    let se2 = (target * (1.0 - target) / trials as f64).sqrt();
    let z2 = (est2.share - target) / se2;
    check(z2.abs() <= 3.0, || format!("PSL(2,7)^2: estimate {} vs {target}, z = {z2:.2}", est2.share))?;
    check(est2.share < est.share, || "share did not drop".into())?;
    within_minute(start, "criterion 8")?;
    Ok(format!(
        "exact {p} = {pf:.4}, MC {:.4} (z {z:+.2}); square {target:.4}, MC {:.4} (z {z2:+.2})",
        est.share, est2.share
    ))
}

fn criterion_9() -> Result<String, String> {
    let start = Instant::now();
    let mut counted = 0;
    for spec in ["sym:6", "gl:2:3"] {
        let (bb, all) = elements(spec);
        let expected = if spec == "sym:6" { 720 } else { 48 };
        check(all.len() == expected, || format!("{spec}: {} elements", all.len()))?;
        for x in &all {
            let o = naive_order(&bb, x);
            let po = bb.pseudo_order(x).map_err(|e| e.to_string())?;
            check(po == o, || format!("{spec}: pseudo_order {po} != {o} for {}", bb.format(x)))?;
            if spec == "sym:6" {
                check(cycle_type_order(&images_of(x)) == o, || "cycle type order".into())?;
            }
            let inv = bb.involution_from(x).map_err(|e| e.to_string())?;
            check(inv == naive_involution(&bb, x), || format!("{spec}: i(x) wrong for {}", bb.format(x)))?;
            if o % 2 == 1 {
                let r = bb.sqrt_odd_order(x).map_err(|e| e.to_string())?;
                check(r == naive_sqrt(&bb, x), || format!("{spec}: sqrt wrong for {}", bb.format(x)))?;
            } else {
                check(bb.sqrt_odd_order(x).is_err(), || "sqrt of even-order element".into())?;
            }
            counted += 1;
        }
    }
    within_minute(start, "criterion 9")?;
    Ok(format!("{counted} elements"))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("zeta1 exactly uniform on C(i)", criterion_1),
        ("zeta0/zeta1 equivariance", criterion_2),
        ("transposition centraliser in Sym(7)", criterion_3),
        ("random-transposition threshold on Sym(5)", criterion_4),
        ("membership one-sidedness in Sym(5)/Alt(5)", criterion_5),
        ("Miller-Rabin on Carmichael numbers and primes", criterion_6),
        ("normal-closure oracle for (1 2 3) in Sym(5)", criterion_7),
        ("odd-order share in PSL(2,7) and its square", criterion_8),
        ("core primitives on Sym(6) and GL(2,3)", criterion_9),
    ];
    let mut failures = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}. {name} ({secs:.1}s): {detail}", n + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  {}. {name} ({secs:.1}s): {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
