//! Mutually disjoint compatible subsets built from images of a seed set
//! under random lattice automorphisms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::ceil_even;
use crate::config::{is_antipodal, Configuration, FamilyOfSubsets};
use crate::conway::{Automorphism, SamplerState};
use crate::error::{Error, Result};
use crate::leech::{MinimalVectorSet, KISSING_24};

/// Candidates sampled and scored together. Selection only depends on this,
/// never on the thread count.
const CHUNK: usize = 32;

pub fn overlap(gs: &Configuration, used: &[bool]) -> usize {
    gs.members().iter().filter(|&&m| used[m as usize]).count()
}

/// `g(S)` as indices into `set`.
pub fn image(g: &Automorphism, s: &Configuration, set: &MinimalVectorSet) -> Result<Configuration> {
    let members = s
        .members()
        .iter()
        .map(|&m| {
            let w = g.apply(set.get(m))?;
            set.index_of(&w)
                .ok_or_else(|| Error::NotMinimal(w.to_i64().to_vec()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Configuration::new(members, s.is_antipodal_flagged()))
}

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    pub count: usize,
    pub tries_per_set: usize,
    /// Greedily extend each new subset with unused compatible vectors.
    pub augment: bool,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            count: 51,
            tries_per_set: 5000,
            augment: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetProvenance {
    /// Position in construction order, 1-based.
    pub index: usize,
    /// Try that produced the kept candidate, `None` for the seed.
    pub try_index: Option<usize>,
    pub tries_used: usize,
    /// `|gS ∩ U|` before deletion.
    pub overlap: usize,
    pub added_by_augmentation: usize,
    pub size: usize,
    /// Sampler steps taken when the candidate was drawn.
    pub sampler_step: u64,
}

#[derive(Clone, Debug)]
pub struct FamilyBuild {
    /// Sorted to nonincreasing size.
    pub family: FamilyOfSubsets,
    /// In construction order.
    pub provenance: Vec<SetProvenance>,
    pub warnings: Vec<String>,
}

impl FamilyBuild {
    pub fn construction_sizes(&self) -> Vec<usize> {
        self.provenance.iter().map(|p| p.size).collect()
    }
}

/// `(index, size, floor)` for every set whose size falls short of
/// `⌈|S|(1 − Σ_{j<i}|S_j|/196560)⌉₂`, in construction order.
pub fn floor_shortfalls(sizes: &[usize]) -> Vec<(usize, usize, i64)> {
    let Some(&base) = sizes.first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut sum = base as i64;
    for (i, &size) in sizes.iter().enumerate().skip(1) {
        let expected = num_rational::Ratio::new(base as i64 * sum, KISSING_24 as i64);
        let floor = ceil_even(num_rational::Ratio::from_integer(base as i64) - expected);
        if (size as i64) < floor {
            out.push((i + 1, size, floor));
        }
        sum += size as i64;
    }
    out
}

fn augment(s: &mut Configuration, used: &[bool], set: &MinimalVectorSet) -> usize {
    let mut blocked = used.to_vec();
    for &m in s.members() {
        for c in set.conflicts_of(m) {
            blocked[c as usize] = true;
        }
    }
    let mut added = 0;
    for v in 0..set.len() as u32 {
        let nv = set.negation(v);
        if blocked[v as usize] || blocked[nv as usize] || v > nv {
            continue;
        }
        let mut fresh = vec![v];
        if s.is_antipodal_flagged() {
            fresh.push(nv);
        }
        for &x in &fresh {
            s.insert(x);
            added += 1;
            for c in set.conflicts_of(x) {
                blocked[c as usize] = true;
            }
        }
    }
    added
}

/// Builds `S_1 = S, S_2, …` with each `S_i = g_i(S) ∖ (S_1 ∪ … ∪ S_{i−1})`,
/// choosing `g_i` among up to `tries_per_set` samples by least overlap.
pub fn build_family(
    s: &Configuration,
    opts: &FamilyOptions,
    sampler: &mut SamplerState,
    set: &MinimalVectorSet,
) -> Result<FamilyBuild> {
    if opts.count == 0 {
        return Err(Error::InvalidParams("family size must be at least 1".into()));
    }
    if opts.tries_per_set == 0 {
        return Err(Error::InvalidParams("tries per set must be at least 1".into()));
    }
    s.check_indices(set)?;
    if let Some((a, b, d)) = crate::config::first_incompatible_pair(s, set) {
        return Err(Error::InvalidConfiguration(format!(
            "seed set is not compatible: members {a} and {b} have dot {d}"
        )));
    }
    if !is_antipodal(s, set) {
        return Err(Error::InvalidConfiguration("seed set is not antipodal".into()));
    }
    let mut seed = s.clone();
    seed.set_antipodal_flag(true);

    let mut used = vec![false; set.len()];
    for &m in seed.members() {
        used[m as usize] = true;
    }
    let mut subsets = vec![seed.clone()];
    let mut provenance = vec![SetProvenance {
        index: 1,
        try_index: None,
        tries_used: 0,
        overlap: 0,
        added_by_augmentation: 0,
        size: seed.len(),
        sampler_step: sampler.steps(),
    }];
    let mut warnings = Vec::new();

    for index in 2..=opts.count {
        let mut best: Option<(usize, usize, u64, Configuration)> = None;
        let mut tried = 0;
        while tried < opts.tries_per_set && best.as_ref().map_or(true, |b| b.1 > 0) {
            let n = CHUNK.min(opts.tries_per_set - tried);
            let mut batch = Vec::with_capacity(n);
            for _ in 0..n {
                batch.push((sampler.random_element()?, sampler.steps()));
            }
            let scored = batch
                .par_iter()
                .map(|(g, _)| image(g, &seed, set).map(|img| (overlap(&img, &used), img)))
                .collect::<Result<Vec<_>>>()?;
            for (k, ((ov, img), (_, step))) in scored.into_iter().zip(&batch).enumerate() {
                if best.as_ref().map_or(true, |b| ov < b.1) {
                    best = Some((tried + k, ov, *step, img));
                }
            }
            tried += n;
        }
        let (try_index, ov, step, img) = best.expect("at least one try");
        if ov > 0 {
            warnings.push(format!(
                "set {index}: no disjoint image in {tried} tries, kept overlap {ov}"
            ));
        }
        let mut next = img.difference(&used);
        let added = if opts.augment { augment(&mut next, &used, set) } else { 0 };
        debug_assert!(is_antipodal(&next, set));
        for &m in next.members() {
            used[m as usize] = true;
        }
        provenance.push(SetProvenance {
            index,
            try_index: Some(try_index),
            tries_used: tried,
            overlap: ov,
            added_by_augmentation: added,
            size: next.len(),
            sampler_step: step,
        });
        subsets.push(next);
    }

    let mut family = FamilyOfSubsets::new(subsets);
    family.sort_nonincreasing();
    Ok(FamilyBuild {
        family,
        provenance,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_edge_cases() {
        let s = Configuration::new(vec![1, 5, 9], true);
        let mut used = vec![false; 16];
        assert_eq!(overlap(&s, &used), 0);
        for m in s.members() {
            used[*m as usize] = true;
        }
        assert_eq!(overlap(&s, &used), 3);
    }

    #[test]
    fn floors() {
        assert!(floor_shortfalls(&[480, 480, 478, 478]).is_empty());
        assert_eq!(floor_shortfalls(&[480, 480, 476]), vec![(3, 476, 478)]);
        assert!(floor_shortfalls(&[]).is_empty());
    }
}
