//! Root systems realizing tangent configurations, and their partition into
//! zero-sum triples and antipodal pairs.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Roots with integer coordinates in `ambient` coordinates. Every root has
/// self-dot `norm`; normalized dots are `raw · 2 / norm`, so roots behave as
/// norm-2 vectors. The `constraints` vanish on every root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub name: String,
    pub d: usize,
    pub ambient: usize,
    pub norm: i32,
    pub roots: Vec<Vec<i32>>,
    pub constraints: Vec<Vec<i32>>,
}

fn raw_dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All vectors with two nonzero entries `±s`.
fn two_hot(m: usize, s: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for (a, b) in [(s, s), (s, -s), (-s, s), (-s, -s)] {
                let mut v = vec![0; m];
                v[i] = a;
                v[j] = b;
                out.push(v);
            }
        }
    }
    out
}

/// Doubled E8 roots: `(±2², 0⁶)` and `(±1⁸)` with an even number of minus signs.
fn e8_doubled() -> Vec<Vec<i32>> {
    let mut out = two_hot(8, 2);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out
}

pub fn build_root_system(d: usize) -> Result<RootSystem> {
    let (name, ambient, norm, roots, constraints) = match d {
        1 => ("A1", 2, 2, vec![vec![1, -1], vec![-1, 1]], vec![vec![1, 1]]),
        2 => {
            let mut r = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = vec![0; 3];
                        v[i] = 1;
                        v[j] = -1;
                        r.push(v);
                    }
                }
            }
            ("A2", 3, 2, r, vec![vec![1, 1, 1]])
        }
        3 => ("D3", 3, 2, two_hot(3, 1), vec![]),
        4 => ("D4", 4, 2, two_hot(4, 1), vec![]),
        5 => ("D5", 5, 2, two_hot(5, 1), vec![]),
        6 => {
            let c = vec![vec![0, 0, 0, 0, 0, 0, 1, 1], vec![0, 0, 0, 0, 0, 1, -1, 0]];
            let r = e8_doubled()
                .into_iter()
                .filter(|v| c.iter().all(|f| raw_dot(f, v) == 0))
                .collect();
            ("E6", 8, 8, r, c)
        }
        7 => {
            let c = vec![vec![0, 0, 0, 0, 0, 0, 1, 1]];
            let r = e8_doubled()
                .into_iter()
                .filter(|v| raw_dot(&c[0], v) == 0)
                .collect();
            ("E7", 8, 8, r, c)
        }
        _ => return Err(Error::InvalidParams(format!("no root system for d = {d}"))),
    };
    let mut roots: Vec<Vec<i32>> = roots;
    roots.sort();
    Ok(RootSystem {
        name: name.into(),
        d,
        ambient,
        norm,
        roots,
        constraints,
    })
}

/// Expected root count for intrinsic dimension `d`.
pub fn expected_root_count(d: usize) -> Option<usize> {
    [0, 2, 6, 12, 24, 40, 72, 126].get(d).copied().filter(|&n| n > 0)
}

pub fn rank(rows: &[Vec<i32>]) -> usize {
    let mut m: Vec<Vec<Ratio<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i64)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != Ratio::from_integer(0) {
                let f = m[i][c] / m[r][c];
                for k in c..cols {
                    let sub = f * m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Dot of roots `i` and `j` on the norm-2 scale.
    pub fn dot(&self, i: usize, j: usize) -> i32 {
        let raw = raw_dot(&self.roots[i], &self.roots[j]) * 2;
        debug_assert_eq!(raw % self.norm, 0);
        raw / self.norm
    }

    pub fn index_of(&self, v: &[i32]) -> Option<usize> {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).ok()
    }

    /// Problems with the system itself, empty if sound: norms, integral
    /// normalized dots within `[-2, 2]`, negation closure, vanishing
    /// constraints and `rank(constraints) = ambient − d = ambient − rank(roots)`.
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.norm <= 0 {
            return vec![format!("root norm {} out of range", self.norm)];
        }
        if expected_root_count(self.d) != Some(self.len()) {
            out.push(format!("{} roots for d = {}", self.len(), self.d));
        }
        for (i, r) in self.roots.iter().enumerate() {
            if r.len() != self.ambient || raw_dot(r, r) != self.norm {
                out.push(format!("root {i} has wrong length or norm"));
            }
            let neg: Vec<i32> = r.iter().map(|x| -x).collect();
            if self.index_of(&neg).is_none() {
                out.push(format!("root {i} has no negative"));
            }
            for f in &self.constraints {
                if raw_dot(f, r) != 0 {
                    out.push(format!("constraint does not vanish on root {i}"));
                }
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let raw = 2 * raw_dot(&self.roots[i], &self.roots[j]);
                if raw % self.norm != 0 || !(-2..=1).contains(&(raw / self.norm)) {
                    out.push(format!("roots {i} and {j} have dot {raw}/{}", self.norm));
                }
            }
        }
        let root_rank = rank(&self.roots);
        if root_rank != self.d {
            out.push(format!("roots span dimension {root_rank}, expected {}", self.d));
        }
        if rank(&self.constraints) != self.ambient - self.d {
            out.push("constraint rank does not witness the dimension".into());
        }
        out
    }
}

/// Zero-sum triples and antipodal pairs covering every root exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentPartition {
    pub triples: Vec<[usize; 3]>,
    pub pairs: Vec<[usize; 2]>,
}

impl TangentPartition {
    /// Blocks with triples first.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.triples
            .iter()
            .map(|t| t.to_vec())
            .chain(self.pairs.iter().map(|p| p.to_vec()))
            .collect()
    }

    pub fn defects(&self, rs: &RootSystem) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = vec![0u32; rs.len()];
        for b in self.blocks() {
            for &r in &b {
                if r >= rs.len() {
                    out.push(format!("root index {r} out of range"));
                    return out;
                }
                seen[r] += 1;
            }
            let want = if b.len() == 3 { -1 } else { -2 };
            for (k, &a) in b.iter().enumerate() {
                for &c in &b[k + 1..] {
                    if rs.dot(a, c) != want {
                        out.push(format!("roots {a} and {c} have dot {} in a block of {}", rs.dot(a, c), b.len()));
                    }
                }
            }
        }
        if let Some(r) = seen.iter().position(|&c| c != 1) {
            out.push(format!("root {r} is covered {} times", seen[r]));
        }
        out
    }
}

/// `(triples, pairs, d)` for a dimension 25..=31.
pub fn required_partition(dim: usize) -> Result<(usize, usize, usize)> {
    Ok(match dim {
        25 => (0, 1, 1),
        26 => (2, 0, 2),
        27 => (2, 3, 3),
        28 => (8, 0, 4),
        29 => (8, 8, 5),
        30 => (24, 0, 6),
        31 => (24, 27, 7),
        _ => return Err(Error::UnsupportedDimension(dim)),
    })
}

struct Partitioner<'a> {
    rs: &'a RootSystem,
    neg: Vec<usize>,
    third: HashMap<(usize, usize), usize>,
    used: Vec<bool>,
    triples: Vec<[usize; 3]>,
    pairs: Vec<[usize; 2]>,
}

impl Partitioner<'_> {
    fn solve(&mut self, triples_left: usize, pairs_left: usize) -> bool {
        let Some(r) = self.used.iter().position(|&u| !u) else {
            return triples_left == 0 && pairs_left == 0;
        };
        self.used[r] = true;
        if triples_left > 0 {
            for b in r + 1..self.rs.len() {
                if self.used[b] {
                    continue;
                }
                let Some(&c) = self.third.get(&(r, b)) else { continue };
                if self.used[c] {
                    continue;
                }
                self.used[b] = true;
                self.used[c] = true;
                self.triples.push([r, b, c]);
                if self.solve(triples_left - 1, pairs_left) {
                    return true;
                }
                self.triples.pop();
                self.used[b] = false;
                self.used[c] = false;
            }
        }
        if pairs_left > 0 && !self.used[self.neg[r]] {
            let n = self.neg[r];
            self.used[n] = true;
            self.pairs.push([r, n]);
            if self.solve(triples_left, pairs_left - 1) {
                return true;
            }
            self.pairs.pop();
            self.used[n] = false;
        }
        self.used[r] = false;
        false
    }
}

pub fn partition_tangent(rs: &RootSystem, num_triples: usize, num_pairs: usize) -> Result<TangentPartition> {
    let infeasible = || Error::InfeasiblePartition {
        roots: rs.len(),
        triples: num_triples,
        pairs: num_pairs,
    };
    if 3 * num_triples + 2 * num_pairs != rs.len() {
        return Err(infeasible());
    }
    let neg: Vec<usize> = rs
        .roots
        .iter()
        .map(|r| {
            let n: Vec<i32> = r.iter().map(|x| -x).collect();
            rs.index_of(&n).ok_or_else(infeasible)
        })
        .collect::<Result<_>>()?;
    let mut third = HashMap::new();
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            if rs.dot(a, b) == -1 {
                let c: Vec<i32> = rs.roots[a].iter().zip(&rs.roots[b]).map(|(x, y)| -x - y).collect();
                if let Some(c) = rs.index_of(&c) {
                    third.insert((a, b), c);
                }
            }
        }
    }
    let mut p = Partitioner {
        rs,
        neg,
        third,
        used: vec![false; rs.len()],
        triples: Vec::new(),
        pairs: Vec::new(),
    };
    if p.solve(num_triples, num_pairs) {
        Ok(TangentPartition {
            triples: p.triples,
            pairs: p.pairs,
        })
    } else {
        Err(infeasible())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_soundness() {
        for d in 1..=7 {
            let rs = build_root_system(d).unwrap();
            assert_eq!(Some(rs.len()), expected_root_count(d), "{}", rs.name);
            assert!(rs.defects().is_empty(), "{}: {:?}", rs.name, rs.defects());
        }
        assert!(build_root_system(0).is_err());
        assert!(build_root_system(8).is_err());
    }

    #[test]
    fn small_partitions() {
        let a1 = build_root_system(1).unwrap();
        let p = partition_tangent(&a1, 0, 1).unwrap();
        assert_eq!(p.pairs.len(), 1);
        let a2 = build_root_system(2).unwrap();
        let p = partition_tangent(&a2, 2, 0).unwrap();
        assert!(p.defects(&a2).is_empty());
        assert!(matches!(partition_tangent(&a2, 1, 1), Err(Error::InfeasiblePartition { .. })));
        assert!(partition_tangent(&a2, 0, 2).is_err());
    }

    #[test]
    fn rank_of_simple_rows() {
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]]), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
