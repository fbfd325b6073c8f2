use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::blackbox::BlackBox;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Probability masses: exact rationals or floats.
pub trait Weight:
    Clone + fmt::Debug + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    fn from_ratio(num: u64, den: u64) -> Self;
    fn render(&self) -> String;
    fn parse_mass(s: &str) -> Option<Self>;
    /// Whether the total mass is acceptably close to one.
    fn is_unit_total(total: &Self) -> bool;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Weight for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn parse_mass(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn is_unit_total(total: &Self) -> bool {
        (total - 1.0).abs() <= 1e-9
    }
}

impl Weight for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn parse_mass(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn is_unit_total(total: &Self) -> bool {
        *total == BigRational::from_u8(1).expect("one")
    }
}

/// A probability distribution on the elements of one group.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<W> {
    group: String,
    masses: BTreeMap<GroupElement, W>,
}

pub type ExactDistribution = Distribution<BigRational>;

/// Largest `|supp P| * |supp Q|` a single convolution may touch.
pub const CONVOLUTION_GUARD: u128 = 100_000_000;

impl<W: Weight> Distribution<W> {
    /// Masses are summed per element and zero masses dropped. Fails if any
    /// mass is negative or the total is not one.
    pub fn from_masses(
        bb: &BlackBox,
        masses: impl IntoIterator<Item = (GroupElement, W)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<GroupElement, W> = BTreeMap::new();
        for (g, w) in masses {
            if w.is_negative() {
                return Err(Error::invalid("negative probability mass"));
            }
            let entry = map.entry(g).or_insert_with(W::zero);
            *entry = entry.clone() + w;
        }
        map.retain(|_, w| !w.is_zero());
        let d = Distribution {
            group: bb.name(),
            masses: map,
        };
        if !W::is_unit_total(&d.total()) {
            return Err(Error::invalid(format!(
                "masses sum to {} rather than 1",
                d.total().render()
            )));
        }
        Ok(d)
    }

    pub fn point_mass(bb: &BlackBox, g: GroupElement) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(g, W::one());
        Distribution {
            group: bb.name(),
            masses,
        }
    }

    /// Uniform on a list of distinct elements.
    pub fn uniform_on(bb: &BlackBox, elements: &[GroupElement]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("uniform distribution on an empty set"));
        }
        let m = elements.len() as u64;
        Self::from_masses(bb, elements.iter().map(|g| (g.clone(), W::from_ratio(1, m))))
    }

    pub fn uniform(bb: &BlackBox, limit: usize) -> Result<Self> {
        Self::uniform_on(bb, &bb.enumerate(limit)?)
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn mass(&self, g: &GroupElement) -> W {
        self.masses.get(g).cloned().unwrap_or_else(W::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &W)> {
        self.masses.iter()
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }

    pub fn total(&self) -> W {
        self.masses.values().fold(W::zero(), |a, b| a + b.clone())
    }

    pub fn to_f64(&self) -> Distribution<f64> {
        Distribution {
            group: self.group.clone(),
            masses: self
                .masses
                .iter()
                .map(|(g, w)| (g.clone(), w.to_f64_lossy()))
                .collect(),
        }
    }

    /// The pushforward under `x -> x^c`.
    pub fn conjugated(&self, bb: &BlackBox, c: &GroupElement) -> Self {
        let mut masses = BTreeMap::new();
        for (g, w) in &self.masses {
            masses.insert(bb.conjugate(g, c), w.clone());
        }
        Distribution {
            group: self.group.clone(),
            masses,
        }
    }

    pub fn write_csv<Wr: std::io::Write>(&self, out: Wr) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["encoding", "mass"])?;
        for (g, m) in &self.masses {
            w.write_record([g.to_hex(), m.render()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(bb: &BlackBox, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let mut masses = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let g = GroupElement::from_hex(&rec[0])
                .ok_or_else(|| Error::parse(&rec[0], "not hex"))?;
            let g = bb.decode(g.as_bytes())?;
            let w = W::parse_mass(&rec[1]).ok_or_else(|| Error::parse(&rec[1], "bad mass"))?;
            masses.push((g, w));
        }
        Self::from_masses(bb, masses)
    }
}

fn check_same_group<W>(p: &Distribution<W>, q: &Distribution<W>) -> Result<()> {
    if p.group != q.group {
        return Err(Error::MismatchedGroups(p.group.clone(), q.group.clone()));
    }
    Ok(())
}

/// `||P - Q|| = 1/2 sum_g |P(g) - Q(g)|`.
pub fn tv_distance<W: Weight>(p: &Distribution<W>, q: &Distribution<W>) -> Result<W> {
    check_same_group(p, q)?;
    let mut sum = W::zero();
    for (g, pm) in &p.masses {
        sum = sum + (pm.clone() - q.mass(g)).abs();
    }
    for (g, qm) in &q.masses {
        if !p.masses.contains_key(g) {
            sum = sum + qm.clone();
        }
    }
    Ok(sum / (W::one() + W::one()))
}

/// `(P * Q)(x) = sum_y P(x y^-1) Q(y)`, accumulated over pairs `(a, b)` with
/// `a b = x`.
pub fn convolve<W: Weight>(
    p: &Distribution<W>,
    q: &Distribution<W>,
    bb: &BlackBox,
) -> Result<Distribution<W>> {
    check_same_group(p, q)?;
    let work = p.masses.len() as u128 * q.masses.len() as u128;
    if work > CONVOLUTION_GUARD {
        return Err(Error::SizeGuard {
            size: work,
            limit: CONVOLUTION_GUARD,
        });
    }
    let mut out: BTreeMap<GroupElement, W> = BTreeMap::new();
    for (a, pa) in &p.masses {
        for (b, qb) in &q.masses {
            let w = pa.clone() * qb.clone();
            let entry = out.entry(bb.multiply(a, b)).or_insert_with(W::zero);
            *entry = entry.clone() + w;
        }
    }
    out.retain(|_, w| !w.is_zero());
    Ok(Distribution {
        group: p.group.clone(),
        masses: out,
    })
}

/// `P^{*k}` by repeated squaring.
pub fn convolution_power<W: Weight>(
    p: &Distribution<W>,
    k: usize,
    bb: &BlackBox,
) -> Result<Distribution<W>> {
    if k == 0 {
        return Err(Error::invalid("convolution power needs k >= 1"));
    }
    let mut result: Option<Distribution<W>> = None;
    let mut base = p.clone();
    let mut e = k;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => convolve(&r, &base, bb)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = convolve(&base, &base, bb)?;
    }
    Ok(result.expect("k >= 1"))
}

/// `P^{*k} = P * P^{*(k-1)}`, one convolution at a time.
pub fn convolution_power_iterated<W: Weight>(
    p: &Distribution<W>,
    k: usize,
    bb: &BlackBox,
) -> Result<Distribution<W>> {
    if k == 0 {
        return Err(Error::invalid("convolution power needs k >= 1"));
    }
    let mut acc = p.clone();
    for _ in 1..k {
        acc = convolve(p, &acc, bb)?;
    }
    Ok(acc)
}

/// TV distance to `uniform` for `P^{*1}, ..., P^{*k_max}`.
pub fn tv_profile<W: Weight>(
    p: &Distribution<W>,
    uniform: &Distribution<W>,
    k_max: usize,
    bb: &BlackBox,
) -> Result<Vec<W>> {
    let mut out = Vec::with_capacity(k_max);
    let mut acc = p.clone();
    for k in 1..=k_max {
        if k > 1 {
            acc = convolve(p, &acc, bb)?;
        }
        out.push(tv_distance(&acc, uniform)?);
    }
    Ok(out)
}

pub const DEFAULT_MIXING_CAP: usize = 1000;

/// Least `k` with `||P^{*k} - U|| < threshold`, `U` uniform on the whole
/// (enumerable) group. Fails with `NonConvergence` after `cap` steps, which
/// happens for walks confined to a coset or a proper subgroup.
pub fn mixing_time<W: Weight>(
    p: &Distribution<W>,
    bb: &BlackBox,
    threshold: f64,
    cap: usize,
) -> Result<usize> {
    let elements = bb.enumerate(CONVOLUTION_GUARD as usize)?;
    let uniform = Distribution::<W>::uniform_on(bb, &elements)?;
    let mut acc = p.clone();
    for k in 1..=cap {
        if k > 1 {
            acc = convolve(p, &acc, bb)?;
        }
        if tv_distance(&acc, &uniform)?.to_f64_lossy() < threshold {
            return Ok(k);
        }
    }
    Err(Error::NonConvergence { cap })
}
