use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::distribution::{tv_distance, Distribution};
use super::gamma::chi_square_sf;
use crate::blackbox::BlackBox;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// Observed counts of sampled elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SampleCensus {
    counts: BTreeMap<GroupElement, u64>,
    n_samples: u64,
}

impl SampleCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, g: GroupElement) {
        *self.counts.entry(g).or_insert(0) += 1;
        self.n_samples += 1;
    }

    pub fn merge(&mut self, other: &SampleCensus) {
        for (g, c) in &other.counts {
            *self.counts.entry(g.clone()).or_insert(0) += c;
        }
        self.n_samples += other.n_samples;
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn count(&self, g: &GroupElement) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> {
        self.counts.iter().map(|(g, &c)| (g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.counts.keys()
    }

    /// Empirical frequencies.
    pub fn distribution(&self, bb: &BlackBox) -> Result<Distribution<f64>> {
        if self.n_samples == 0 {
            return Err(Error::InsufficientSamples { got: 0, needed: 1 });
        }
        let n = self.n_samples as f64;
        Distribution::from_masses(bb, self.counts.iter().map(|(g, &c)| (g.clone(), c as f64 / n)))
    }

    /// CSV with columns `encoding,count`, rows ordered by encoding bytes.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["encoding", "count"])?;
        for (g, c) in &self.counts {
            w.write_record([g.to_hex(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(bb: &BlackBox, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let mut census = SampleCensus::new();
        for rec in r.records() {
            let rec = rec?;
            let g = GroupElement::from_hex(&rec[0])
                .ok_or_else(|| Error::parse(&rec[0], "not hex"))?;
            let g = bb.decode(g.as_bytes())?;
            let c: u64 = rec[1]
                .trim()
                .parse()
                .map_err(|_| Error::parse(&rec[1], "bad count"))?;
            *census.counts.entry(g).or_insert(0) += c;
            census.n_samples += c;
        }
        Ok(census)
    }
}

impl FromIterator<GroupElement> for SampleCensus {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        let mut c = SampleCensus::new();
        for g in iter {
            c.record(g);
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

/// Pearson's goodness-of-fit test against the uniform distribution on a
/// domain of `domain_size` elements. Elements never observed count as zero.
/// Requires at least five expected observations per cell.
pub fn chi_square_uniform(census: &SampleCensus, domain_size: u64) -> Result<ChiSquare> {
    if domain_size < 2 {
        return Err(Error::invalid("chi-square needs a domain of at least 2 elements"));
    }
    if census.support_len() as u64 > domain_size {
        return Err(Error::invalid(format!(
            "census has {} distinct elements, more than the domain size {domain_size}",
            census.support_len()
        )));
    }
    let needed = 5 * domain_size;
    if census.n_samples() < needed {
        return Err(Error::InsufficientSamples {
            got: census.n_samples(),
            needed,
        });
    }
    let expected = census.n_samples() as f64 / domain_size as f64;
    let missing = domain_size - census.support_len() as u64;
    let mut statistic = missing as f64 * expected;
    for (_, c) in census.iter() {
        let d = c as f64 - expected;
        statistic += d * d / expected;
    }
    let dof = domain_size - 1;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: chi_square_sf(statistic, dof as f64),
    })
}

/// Largest TV distance between the empirical distribution and its conjugate
/// by each `c`.
pub fn conjugation_invariance(
    census: &SampleCensus,
    bb: &BlackBox,
    conjugators: &[GroupElement],
) -> Result<f64> {
    let p = census.distribution(bb)?;
    let mut worst = 0.0f64;
    for c in conjugators {
        worst = worst.max(tv_distance(&p, &p.conjugated(bb, c))?);
    }
    Ok(worst)
}
