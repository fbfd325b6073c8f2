//! Brute-force subgroup computations for small groups.

use std::collections::BTreeSet;

use crate::blackbox::BlackBox;
use crate::element::GroupElement;
use crate::error::{Error, Result};

/// The subgroup generated by `gens`, by breadth-first closure under right
/// multiplication by generators. Fails once more than `limit` elements appear.
pub fn subgroup_closure(
    bb: &BlackBox,
    gens: &[GroupElement],
    limit: usize,
) -> Result<BTreeSet<GroupElement>> {
    let mut seen = BTreeSet::new();
    let id = bb.identity();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = bb.multiply(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::SizeGuard {
                        size: seen.len() as u128,
                        limit: limit as u128,
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

/// The normal closure of `gens` in the group generated by `ambient_gens`:
/// close the conjugates of `gens` under conjugation by the ambient generators,
/// then take the generated subgroup.
pub fn normal_closure(
    bb: &BlackBox,
    ambient_gens: &[GroupElement],
    gens: &[GroupElement],
    limit: usize,
) -> Result<BTreeSet<GroupElement>> {
    let mut group = subgroup_closure(bb, gens, limit)?;
    loop {
        let mut extra = Vec::new();
        for x in &group {
            for g in ambient_gens {
                let c = bb.conjugate(x, g);
                if !group.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(group);
        }
        let mut new_gens: Vec<GroupElement> = gens.to_vec();
        new_gens.extend(extra);
        new_gens.sort();
        new_gens.dedup();
        group = subgroup_closure(bb, &new_gens, limit)?;
    }
}

/// Elements of `elements` commuting with `i`.
pub fn centraliser(bb: &BlackBox, elements: &[GroupElement], i: &GroupElement) -> Vec<GroupElement> {
    elements
        .iter()
        .filter(|x| bb.commutes(x, i))
        .cloned()
        .collect()
}
