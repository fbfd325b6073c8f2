//! Naive reference computations used as oracles by the integration tests.
//! They share no code with the library beyond multiplication, inversion and
//! parsing.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use blackbox_groups::{make_backend, BackendKind, BlackBox, GroupElement};
use num_rational::BigRational;

pub fn group(spec: &str) -> BlackBox {
    make_backend(&spec.parse::<BackendKind>().unwrap()).unwrap()
}

/// Order by repeated multiplication.
pub fn naive_order(bb: &BlackBox, x: &GroupElement) -> u128 {
    let id = bb.identity();
    let mut y = x.clone();
    let mut n = 1;
    while y != id {
        y = bb.multiply(&y, x);
        n += 1;
        assert!(n < 1_000_000, "runaway order computation");
    }
    n
}

/// `x, x^2, ..., x^o = 1`.
pub fn powers(bb: &BlackBox, x: &GroupElement) -> Vec<GroupElement> {
    let id = bb.identity();
    let mut out = vec![x.clone()];
    while out.last().unwrap() != &id {
        out.push(bb.multiply(out.last().unwrap(), x));
    }
    out
}

/// The unique involution of `<x>`, or the identity when `o(x)` is odd.
pub fn naive_involution(bb: &BlackBox, x: &GroupElement) -> GroupElement {
    let ps = powers(bb, x);
    let o = ps.len();
    if o % 2 == 1 {
        bb.identity()
    } else {
        ps[o / 2 - 1].clone()
    }
}

/// The square root of an odd-order `x` inside `<x>`, by search.
pub fn naive_sqrt(bb: &BlackBox, x: &GroupElement) -> GroupElement {
    powers(bb, x)
        .into_iter()
        .find(|y| &bb.multiply(y, y) == x)
        .expect("odd-order elements have a square root in their cyclic group")
}

/// All products of pairs, repeated until nothing new appears.
pub fn naive_closure(bb: &BlackBox, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut set: BTreeSet<GroupElement> = gens.iter().cloned().collect();
    set.insert(bb.identity());
    loop {
        let items: Vec<_> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &items {
            for b in &items {
                grew |= set.insert(bb.multiply(a, b));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// The subgroup generated by all conjugates `y^g`, `g` over `all`.
pub fn naive_normal_closure(
    bb: &BlackBox,
    all: &[GroupElement],
    gens: &[GroupElement],
) -> BTreeSet<GroupElement> {
    let conjugates: BTreeSet<GroupElement> = gens
        .iter()
        .flat_map(|y| all.iter().map(move |g| (y, g)))
        .map(|(y, g)| bb.multiply(&bb.multiply(&bb.invert(g), y), g))
        .collect();
    naive_closure(bb, &conjugates.into_iter().collect::<Vec<_>>())
}

pub fn naive_centraliser(bb: &BlackBox, all: &[GroupElement], i: &GroupElement) -> Vec<GroupElement> {
    all.iter()
        .filter(|x| bb.multiply(x, i) == bb.multiply(i, x))
        .cloned()
        .collect()
}

/// Permutations of `1..=n` in one-line notation, all `n!` of them.
pub fn all_images(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..left.len() {
            let v = left.remove(idx);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

pub fn one_line(images: &[usize]) -> String {
    let parts: Vec<String> = images.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Every element of `sym:n`, built from one-line literals.
pub fn sym_elements(bb: &BlackBox, n: usize) -> Vec<GroupElement> {
    all_images(n).iter().map(|im| bb.parse(&one_line(im)).unwrap()).collect()
}

/// Parity by counting inversions of the one-line image list.
pub fn inversions(images: &[usize]) -> usize {
    let mut c = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                c += 1;
            }
        }
    }
    c
}

/// One-line images of a permutation, read from its encoding (one zero-based
/// image byte per point).
pub fn images_of(x: &GroupElement) -> Vec<usize> {
    x.as_bytes().iter().map(|&b| b as usize + 1).collect()
}

pub fn is_even_perm(x: &GroupElement) -> bool {
    inversions(&images_of(x)).is_multiple_of(2)
}

/// Order of a permutation as the lcm of its cycle lengths.
pub fn cycle_type_order(images: &[usize]) -> u128 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut l: u128 = 1;
    for s in 0..n {
        let mut len = 0u128;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = images[p] - 1;
            len += 1;
        }
        if len > 0 {
            l = lcm(l, len);
        }
    }
    l
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// All invertible `n x n` matrices over `F_p` as row-major literals.
pub fn gl_literals(n: usize, p: i64) -> Vec<String> {
    let cells = n * n;
    let total = (p as usize).pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let entries: Vec<i64> = (0..cells)
            .map(|_| {
                let e = (c % p as usize) as i64;
                c /= p as usize;
                e
            })
            .collect();
        if det(&entries, n, p) != 0 {
            let s: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
            out.push(format!("[{}]", s.join(",")));
        }
    }
    out
}

/// Determinant mod `p` by cofactor expansion.
pub fn det(m: &[i64], n: usize, p: i64) -> i64 {
    if n == 1 {
        return m[0].rem_euclid(p);
    }
    let mut total = 0;
    for col in 0..n {
        let minor: Vec<i64> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| m[r * n + c])
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * m[col] * det(&minor, n - 1, p);
    }
    total.rem_euclid(p)
}

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn distinct_prime_factors(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += 1;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

pub fn pow_mod(b: u64, mut e: u64, n: u64) -> u64 {
    let n = n as u128;
    let mut b = b as u128 % n;
    let mut r = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r as u64
}

/// Textbook strong-probable-prime test to base `a`.
pub fn is_strong_liar(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = pow_mod(x, 2, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// `P^{*k}` by pushing a dense probability vector through `k` steps.
pub fn dense_walk(
    bb: &BlackBox,
    all: &[GroupElement],
    step: &[(GroupElement, BigRational)],
    k: usize,
) -> BTreeMap<GroupElement, BigRational> {
    let mut cur: BTreeMap<GroupElement, BigRational> = BTreeMap::new();
    cur.insert(bb.identity(), BigRational::from_integer(1.into()));
    for _ in 0..k {
        let mut next: BTreeMap<GroupElement, BigRational> = BTreeMap::new();
        for (x, px) in &cur {
            for (s, ps) in step {
                *next
                    .entry(bb.multiply(x, s))
                    .or_insert_with(|| BigRational::from_integer(0.into())) += px * ps;
            }
        }
        cur = next;
    }
    for g in all {
        cur.entry(g.clone())
            .or_insert_with(|| BigRational::from_integer(0.into()));
    }
    cur
}
