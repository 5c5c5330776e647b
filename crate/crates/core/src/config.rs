//! Compatible subsets of the minimal vectors and families of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leech::{MinimalVectorSet, COMPATIBLE_MAX};

/// A set of minimal-vector indices, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    members: Vec<u32>,
    antipodal: bool,
}

impl Configuration {
    pub fn new(mut members: Vec<u32>, antipodal: bool) -> Self {
        members.sort_unstable();
        members.dedup();
        Configuration { members, antipodal }
    }

    pub fn empty(antipodal: bool) -> Self {
        Configuration {
            members: Vec::new(),
            antipodal,
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_antipodal_flagged(&self) -> bool {
        self.antipodal
    }

    pub fn set_antipodal_flag(&mut self, flag: bool) {
        self.antipodal = flag;
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: u32) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: u32) -> bool {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Members not contained in `other`.
    pub fn difference(&self, other: &[bool]) -> Configuration {
        Configuration {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| !other[m as usize])
                .collect(),
            antipodal: self.antipodal,
        }
    }

    pub fn check_indices(&self, set: &MinimalVectorSet) -> Result<()> {
        match self.members.last() {
            Some(&m) if m as usize >= set.len() => Err(Error::InvalidConfiguration(format!(
                "index {m} out of range for {} vectors",
                set.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// First pair of members with scaled dot above 8, if any.
pub fn first_incompatible_pair(s: &Configuration, set: &MinimalVectorSet) -> Option<(u32, u32, i32)> {
    let m = s.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            let d = set.dot(a, b);
            if d > COMPATIBLE_MAX {
                return Some((a, b, d));
            }
        }
    }
    None
}

/// All distinct pairs have `int_dot ≤ 8`.
pub fn is_compatible(s: &Configuration, set: &MinimalVectorSet) -> bool {
    first_incompatible_pair(s, set).is_none()
}

/// `v ∉ S` and `int_dot(v, x) ≤ 8` for every member `x`.
pub fn can_add(v: u32, s: &Configuration, set: &MinimalVectorSet) -> bool {
    !s.contains(v) && s.members().iter().all(|&x| set.dot(v, x) <= COMPATIBLE_MAX)
}

/// Closed under negation.
pub fn is_antipodal(s: &Configuration, set: &MinimalVectorSet) -> bool {
    s.members().iter().all(|&m| s.contains(set.negation(m)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOfSubsets {
    pub subsets: Vec<Configuration>,
}

impl FamilyOfSubsets {
    pub fn new(subsets: Vec<Configuration>) -> Self {
        FamilyOfSubsets { subsets }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.subsets.iter().map(Configuration::len).collect()
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Stable sort by nonincreasing size.
    pub fn sort_nonincreasing(&mut self) {
        self.subsets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    }

    /// Membership bitmap of the union.
    pub fn union_mask(&self, universe: usize) -> Vec<bool> {
        let mut mask = vec![false; universe];
        for s in &self.subsets {
            for &m in s.members() {
                mask[m as usize] = true;
            }
        }
        mask
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub size: usize,
    pub compatible: bool,
    pub antipodal: bool,
    /// `(a, b, int_dot)` for the first incompatible pair.
    pub violation: Option<(u32, u32, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub subsets: Vec<SubsetReport>,
    pub disjoint: bool,
    /// `(i, j, shared)` for every overlapping pair of subsets.
    pub overlaps: Vec<(usize, usize, usize)>,
    pub nonincreasing: bool,
    pub indices_valid: bool,
}

impl FamilyReport {
    /// Every subset compatible and antipodal, subsets pairwise disjoint.
    pub fn all_pass(&self) -> bool {
        self.indices_valid
            && self.disjoint
            && self.subsets.iter().all(|s| s.compatible && s.antipodal)
    }
}

pub fn validate_family(family: &FamilyOfSubsets, set: &MinimalVectorSet) -> FamilyReport {
    let indices_valid = family.subsets.iter().all(|s| s.check_indices(set).is_ok());
    if !indices_valid {
        return FamilyReport {
            subsets: Vec::new(),
            disjoint: false,
            overlaps: Vec::new(),
            nonincreasing: false,
            indices_valid,
        };
    }
    let subsets = family
        .subsets
        .iter()
        .map(|s| {
            let violation = first_incompatible_pair(s, set);
            SubsetReport {
                size: s.len(),
                compatible: violation.is_none(),
                antipodal: is_antipodal(s, set),
                violation,
            }
        })
        .collect();

    let mut owner: Vec<u32> = vec![u32::MAX; set.len()];
    let mut counts = std::collections::BTreeMap::new();
    for (i, s) in family.subsets.iter().enumerate() {
        for &m in s.members() {
            let o = owner[m as usize];
            if o == u32::MAX {
                owner[m as usize] = i as u32;
            } else {
                *counts.entry((o as usize, i)).or_insert(0usize) += 1;
            }
        }
    }
    let overlaps: Vec<_> = counts.into_iter().map(|((i, j), c)| (i, j, c)).collect();
    let sizes = family.sizes();
    FamilyReport {
        subsets,
        disjoint: overlaps.is_empty(),
        overlaps,
        nonincreasing: sizes.windows(2).all(|w| w[0] >= w[1]),
        indices_valid,
    }
}
