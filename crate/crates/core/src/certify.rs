//! Explicit kissing configurations in dimensions 25 through 31 and their
//! exact verification.
//!
//! For a family `S_1, S_2, …` and a root system partitioned into blocks
//! `T_1, T_2, …`, the configuration consists of
//!
//! * class A: `(x, 0)` for every minimal vector `x` outside all `S_i`;
//! * class B: `(x·√(2/3), y·√(4/3))` for `x ∈ S_i` and every root `y` of `T_i`,
//!   with roots normalized to unit length.
//!
//! Every vector has squared length 4. With `xd` the scaled Leech dot and
//! `rd` the root dot on the norm-2 scale, the pairwise conditions become
//!
//! * B–B: `xd + 8·rd ≤ 24`;
//! * A–B: `xd ≤ 0` or `xd² ≤ 384`;
//! * A–A: `xd ≤ 16`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::FamilyOfSubsets;
use crate::error::{Error, Result};
use crate::leech::{MinimalVectorSet, KISSING_MAX, MIN_NORM};
use crate::roots::{build_root_system, partition_tangent, required_partition, RootSystem, TangentPartition};

/// Right-hand side of the B–B condition on the integer scale.
pub const BB_LIMIT: i32 = 24;
/// Largest `xd²` allowed for A–B pairs with `xd > 0`.
pub const AB_SQUARE_LIMIT: i32 = 384;
const MAX_VIOLATIONS: usize = 100;
const AA_SPOT_CHECKS: usize = 1_000_000;
const AB_SPOT_CHECKS: usize = 100_000;
const SCAN_FLOOR: i32 = 15;

pub fn bb_value(xd: i32, rd: i32) -> i32 {
    xd + 8 * rd
}

pub fn ab_ok(xd: i32) -> bool {
    xd <= 0 || xd * xd <= AB_SQUARE_LIMIT
}

/// Same block, same root, compatible `x ≠ x'`.
pub const BOUNDARY_SAME_ROOT: i32 = crate::leech::COMPATIBLE_MAX + 8 * 2;
/// Same block, same `x`, two roots of a triple.
pub const BOUNDARY_SAME_VECTOR: i32 = MIN_NORM + 8 * -1;
/// Different blocks, `xd = 16`, `rd = 1`.
pub const BOUNDARY_CROSS_BLOCK: i32 = KISSING_MAX + 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassBEntry {
    pub x: u32,
    pub block: u32,
    pub root: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub dim: usize,
    pub d: usize,
    pub roots: RootSystem,
    pub partition: TangentPartition,
    /// Root indices per block, triples first. Block `i` carries subset `i`.
    pub blocks: Vec<Vec<usize>>,
    /// Subset members per block.
    pub subsets: Vec<Vec<u32>>,
    /// Empty subsets appended because the family was short.
    pub padded: usize,
    pub class_a: Vec<u32>,
    pub class_b: Vec<ClassBEntry>,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.class_a.len() + self.class_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `196560 + Σ (|T_i| − 1) |S_i|`.
    pub fn expected_len(&self) -> usize {
        crate::leech::KISSING_24
            + self
                .blocks
                .iter()
                .zip(&self.subsets)
                .map(|(b, s)| (b.len() - 1) * s.len())
                .sum::<usize>()
    }

    /// Rebuilds class B after the partition or blocks were changed.
    pub fn rebuild_class_b(&mut self) {
        self.class_b = class_b_entries(&self.blocks, &self.subsets);
    }
}

fn class_b_entries(blocks: &[Vec<usize>], subsets: &[Vec<u32>]) -> Vec<ClassBEntry> {
    let mut out = Vec::new();
    for (i, (b, s)) in blocks.iter().zip(subsets).enumerate() {
        for &x in s {
            for &r in b {
                out.push(ClassBEntry {
                    x,
                    block: i as u32,
                    root: r as u32,
                });
            }
        }
    }
    out
}

/// Assigns triples to the largest subsets, then pairs to the next ones.
/// Short families are padded with empty subsets when `pad` is set.
pub fn build_certificate(
    family: &FamilyOfSubsets,
    dim: usize,
    set: &MinimalVectorSet,
    pad: bool,
) -> Result<Certificate> {
    let (t, p, d) = required_partition(dim)?;
    let need = t + p;
    if family.len() < need && !pad {
        return Err(Error::FamilyTooSmall {
            dim,
            have: family.len(),
            need,
            missing: need - family.len(),
        });
    }
    for s in &family.subsets {
        s.check_indices(set)?;
    }
    let roots = build_root_system(d)?;
    let partition = partition_tangent(&roots, t, p)?;
    let blocks = partition.blocks();

    let mut ordered: Vec<&crate::config::Configuration> = family.subsets.iter().collect();
    ordered.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut subsets: Vec<Vec<u32>> = ordered.iter().take(need).map(|s| s.members().to_vec()).collect();
    let padded = need - subsets.len();
    subsets.resize(need, Vec::new());

    let mut used = vec![false; set.len()];
    for s in &subsets {
        for &x in s {
            if std::mem::replace(&mut used[x as usize], true) {
                return Err(Error::InvalidConfiguration(format!(
                    "vector {x} appears in two subsets"
                )));
            }
        }
    }
    let class_a = (0..set.len() as u32).filter(|&i| !used[i as usize]).collect();
    let class_b = class_b_entries(&blocks, &subsets);
    Ok(Certificate {
        dim,
        d,
        roots,
        partition,
        blocks,
        subsets,
        padded,
        class_a,
        class_b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyMode {
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    AA,
    AB,
    BB,
}

/// An offending pair. Indices refer to `class_a` or `class_b` according to
/// the class; `value` is `xd` for A pairs and `xd + 8·rd` for B–B pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub class: PairClass,
    pub first: usize,
    pub second: usize,
    pub xd: i32,
    pub rd: Option<i32>,
    pub value: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    /// Pairs examined directly, spot checks included.
    pub pairs_checked: u64,
    /// Largest `xd` (A classes) or `xd + 8·rd` (B–B) seen, if any pair was seen.
    pub max_value: Option<i32>,
    pub method: String,
}

impl ClassSummary {
    fn see(&mut self, v: i32) {
        self.max_value = Some(self.max_value.map_or(v, |m| m.max(v)));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dim: usize,
    pub mode: VerifyMode,
    pub size: usize,
    pub expected_size: usize,
    pub structural: Vec<String>,
    pub aa: ClassSummary,
    pub ab: ClassSummary,
    pub bb: ClassSummary,
    /// First offending pairs, at most 100.
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    pub boundary_constants: [i32; 3],
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.structural.is_empty() && self.violation_count == 0 && self.size == self.expected_size
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dimension {}: {} vectors (expected {}), mode {:?}\n",
            self.dim, self.size, self.expected_size, self.mode
        );
        for (name, c) in [("A-A", &self.aa), ("A-B", &self.ab), ("B-B", &self.bb)] {
            out += &format!(
                "  {name}: {} pairs checked, max {}, {}\n",
                c.pairs_checked,
                c.max_value.map_or("-".into(), |v| v.to_string()),
                c.method
            );
        }
        for s in &self.structural {
            out += &format!("  structural: {s}\n");
        }
        for v in &self.violations {
            out += &format!("  violation: {v:?}\n");
        }
        out += if self.passed() { "PASS\n" } else { "FAIL\n" };
        out
    }
}

struct Sink {
    list: Vec<Violation>,
    count: u64,
}

impl Sink {
    fn push(&mut self, v: Violation) {
        self.count += 1;
        if self.list.len() < MAX_VIOLATIONS {
            self.list.push(v);
        }
    }
}

fn structural_checks(cert: &Certificate, set: &MinimalVectorSet) -> Vec<String> {
    let mut out = cert.roots.defects();
    if !out.is_empty() {
        return out;
    }
    out.extend(cert.partition.defects(&cert.roots));
    match required_partition(cert.dim) {
        Ok((t, p, d)) => {
            if cert.d != d || cert.partition.triples.len() != t || cert.partition.pairs.len() != p {
                out.push("partition shape does not match the dimension".into());
            }
        }
        Err(e) => out.push(e.to_string()),
    }
    if cert.blocks != cert.partition.blocks() || cert.subsets.len() != cert.blocks.len() {
        out.push("blocks do not match the partition".into());
    }
    if cert.class_b != class_b_entries(&cert.blocks, &cert.subsets) {
        out.push("class B does not list every (x, root) of every block exactly once".into());
    }
    let sizes: Vec<usize> = cert.subsets.iter().map(Vec::len).collect();
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        out.push("subsets are not ordered by nonincreasing size".into());
    }
    // The composite norm (2/3)·4 + (4/3)·1 equals 4.
    let composite = num_rational::Ratio::new(2, 3) * 4 + num_rational::Ratio::new(4, 3);
    if composite != num_rational::Ratio::from_integer(4) {
        out.push("composite norm identity fails".into());
    }
    let n = set.len();
    let mut seen = vec![0u8; n];
    for &a in &cert.class_a {
        if (a as usize) >= n {
            out.push(format!("class A index {a} out of range"));
            return out;
        }
        seen[a as usize] += 1;
    }
    for s in &cert.subsets {
        for &x in s {
            if (x as usize) >= n {
                out.push(format!("class B index {x} out of range"));
                return out;
            }
            seen[x as usize] += 2;
        }
    }
    if let Some(i) = seen.iter().position(|&c| c > 2 || c == 0) {
        out.push(format!("vector {i} is missing or used more than once across A and the subsets"));
    }
    if let Some(&a) = cert.class_a.iter().find(|&&a| set.get(a).norm() != MIN_NORM) {
        out.push(format!("class A vector {a} is not minimal"));
    }
    out
}

/// Checks the certificate in exact integer arithmetic.
///
/// B–B pairs are checked exactly in both modes. In fast mode A–A pairs rest
/// on the minimality of the class A vectors (distinct minimal vectors have
/// `xd ≤ 16`) plus random spot checks, and A–B pairs rest on A being
/// disjoint from every `S_i`: an A–B violation needs `xd ≥ 20`, and the
/// only dot that large between minimal vectors is `xd = 32`, i.e. `x = x'`.
/// Full mode checks every A–A and A–B pair by scanning.
pub fn verify_certificate(cert: &Certificate, set: &MinimalVectorSet, mode: VerifyMode, seed: u64) -> VerificationReport {
    let structural = structural_checks(cert, set);
    let mut sink = Sink {
        list: Vec::new(),
        count: 0,
    };
    let mut aa = ClassSummary::default();
    let mut ab = ClassSummary::default();
    let mut bb = ClassSummary::default();
    let indexable = structural.iter().all(|s| !s.contains("out of range"))
        && cert.blocks == cert.partition.blocks()
        && cert.subsets.len() == cert.blocks.len()
        && cert.roots.defects().is_empty();
    if indexable {
        check_bb(cert, set, &mut bb, &mut sink);
        match mode {
            VerifyMode::Fast => check_a_fast(cert, set, seed, &mut aa, &mut ab, &mut sink),
            VerifyMode::Full => check_a_full(cert, set, &mut aa, &mut ab, &mut sink),
        }
    }
    VerificationReport {
        dim: cert.dim,
        mode,
        size: cert.len(),
        expected_size: cert.expected_len(),
        structural,
        aa,
        ab,
        bb,
        violations: sink.list,
        violation_count: sink.count,
        boundary_constants: [BOUNDARY_SAME_ROOT, BOUNDARY_SAME_VECTOR, BOUNDARY_CROSS_BLOCK],
    }
}

/// Offsets of each block's first class B entry.
fn block_offsets(cert: &Certificate) -> Vec<usize> {
    let mut off = Vec::with_capacity(cert.blocks.len());
    let mut acc = 0;
    for (b, s) in cert.blocks.iter().zip(&cert.subsets) {
        off.push(acc);
        acc += b.len() * s.len();
    }
    off
}

/// Every B–B pair, grouped by block pair: for blocks `(i, j)` and vectors
/// `x ∈ S_i`, `x' ∈ S_j` the Leech dot is computed once and combined with
/// every root pair.
fn check_bb(cert: &Certificate, set: &MinimalVectorSet, summary: &mut ClassSummary, sink: &mut Sink) {
    summary.method = "all pairs".into();
    let off = block_offsets(cert);
    let nb = cert.blocks.len();
    let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (i..nb).map(move |j| (i, j))).collect();
    let results: Vec<(u64, Option<i32>, Vec<Violation>, u64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (bi, bj) = (&cert.blocks[i], &cert.blocks[j]);
            let (si, sj) = (&cert.subsets[i], &cert.subsets[j]);
            let rd: Vec<Vec<i32>> = bi
                .iter()
                .map(|&a| bj.iter().map(|&b| cert.roots.dot(a, b)).collect())
                .collect();
            let mut checked = 0u64;
            let mut max: Option<i32> = None;
            let mut viol = Vec::new();
            let mut count = 0u64;
            for (p, &x) in si.iter().enumerate() {
                let q0 = if i == j { p } else { 0 };
                for (q, &y) in sj.iter().enumerate().skip(q0) {
                    let xd = set.dot(x, y);
                    for (ra, row) in rd.iter().enumerate() {
                        for (rb, &r) in row.iter().enumerate() {
                            let first = off[i] + p * bi.len() + ra;
                            let second = off[j] + q * bj.len() + rb;
                            if first >= second {
                                continue;
                            }
                            checked += 1;
                            let v = bb_value(xd, r);
                            max = Some(max.map_or(v, |m| m.max(v)));
                            if v > BB_LIMIT {
                                count += 1;
                                if viol.len() < MAX_VIOLATIONS {
                                    viol.push(Violation {
                                        class: PairClass::BB,
                                        first,
                                        second,
                                        xd,
                                        rd: Some(r),
                                        value: v,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            (checked, max, viol, count)
        })
        .collect();
    for (checked, max, viol, count) in results {
        summary.pairs_checked += checked;
        if let Some(m) = max {
            summary.see(m);
        }
        let extra = count - viol.len() as u64;
        for v in viol {
            sink.push(v);
        }
        sink.count += extra;
    }
}

fn check_a_fast(
    cert: &Certificate,
    set: &MinimalVectorSet,
    seed: u64,
    aa: &mut ClassSummary,
    ab: &mut ClassSummary,
    sink: &mut Sink,
) {
    aa.method = format!("minimality of distinct class A vectors plus {AA_SPOT_CHECKS} random pairs");
    ab.method = format!("class A disjoint from every subset plus {AB_SPOT_CHECKS} random pairs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let na = cert.class_a.len();
    if na >= 2 {
        for _ in 0..AA_SPOT_CHECKS {
            let p = rng.gen_range(0..na);
            let mut q = rng.gen_range(0..na - 1);
            if q >= p {
                q += 1;
            }
            let xd = set.dot(cert.class_a[p], cert.class_a[q]);
            aa.pairs_checked += 1;
            aa.see(xd);
            if xd > KISSING_MAX {
                sink.push(Violation {
                    class: PairClass::AA,
                    first: p.min(q),
                    second: p.max(q),
                    xd,
                    rd: None,
                    value: xd,
                });
            }
        }
    }
    let nb = cert.class_b.len();
    if na > 0 && nb > 0 {
        for _ in 0..AB_SPOT_CHECKS {
            let p = rng.gen_range(0..na);
            let q = rng.gen_range(0..nb);
            push_ab(cert, set, p, q, ab, sink);
        }
    }
    // Exhaustive part of the A–B argument: identical vectors across the classes.
    let mut in_a = vec![false; set.len()];
    for &a in &cert.class_a {
        in_a[a as usize] = true;
    }
    let pos_a: std::collections::HashMap<u32, usize> =
        cert.class_a.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    for (q, e) in cert.class_b.iter().enumerate() {
        if in_a[e.x as usize] {
            push_ab(cert, set, pos_a[&e.x], q, ab, sink);
        }
    }
}

fn push_ab(cert: &Certificate, set: &MinimalVectorSet, p: usize, q: usize, ab: &mut ClassSummary, sink: &mut Sink) {
    let xd = set.dot(cert.class_a[p], cert.class_b[q].x);
    ab.pairs_checked += 1;
    ab.see(xd);
    if !ab_ok(xd) {
        sink.push(Violation {
            class: PairClass::AB,
            first: p,
            second: q,
            xd,
            rd: None,
            value: xd,
        });
    }
}

/// Scans every class A vector against all minimal vectors. Pairs with
/// `xd ≤ 15` pass both A tests, so only dots above that are examined; the
/// reported maxima are over those.
fn check_a_full(cert: &Certificate, set: &MinimalVectorSet, aa: &mut ClassSummary, ab: &mut ClassSummary, sink: &mut Sink) {
    aa.method = "all pairs by scanning for xd > 15".into();
    ab.method = "all pairs by scanning for xd > 15".into();
    let n = set.len();
    let mut pos_a = vec![u32::MAX; n];
    for (i, &a) in cert.class_a.iter().enumerate() {
        pos_a[a as usize] = i as u32;
    }
    let mut b_entries: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (q, e) in cert.class_b.iter().enumerate() {
        b_entries[e.x as usize].push(q as u32);
    }
    let table = set.table();
    let na = cert.class_a.len() as u64;
    let nb = cert.class_b.len() as u64;
    // A–A pairs are counted as the unordered pairs; the scan sees each twice.
    let partial: Vec<(Option<i32>, Option<i32>, Vec<Violation>)> = cert
        .class_a
        .par_chunks(1024)
        .enumerate()
        .map(|(chunk, members)| {
            let mut max_aa: Option<i32> = None;
            let mut max_ab: Option<i32> = None;
            let mut viol = Vec::new();
            let mut near = Vec::new();
            for (k, &a) in members.iter().enumerate() {
                let p = chunk * 1024 + k;
                near.clear();
                // every A–A or A–B violation has xd > 16
                table.scan_above(set.get(a), SCAN_FLOOR, &mut near);
                for &j in &near {
                    let xd = set.dot(a, j);
                    let pa = pos_a[j as usize];
                    if pa != u32::MAX && pa as usize != p {
                        max_aa = Some(max_aa.map_or(xd, |m| m.max(xd)));
                        if xd > KISSING_MAX && (pa as usize) > p {
                            viol.push(Violation {
                                class: PairClass::AA,
                                first: p,
                                second: pa as usize,
                                xd,
                                rd: None,
                                value: xd,
                            });
                        }
                    }
                    for &q in &b_entries[j as usize] {
                        max_ab = Some(max_ab.map_or(xd, |m| m.max(xd)));
                        if !ab_ok(xd) {
                            viol.push(Violation {
                                class: PairClass::AB,
                                first: p,
                                second: q as usize,
                                xd,
                                rd: None,
                                value: xd,
                            });
                        }
                    }
                }
            }
            (max_aa, max_ab, viol)
        })
        .collect();
    aa.pairs_checked = na * na.saturating_sub(1) / 2;
    ab.pairs_checked = na * nb;
    for (ma, mb, viol) in partial {
        if let Some(m) = ma {
            aa.see(m);
        }
        if let Some(m) = mb {
            ab.see(m);
        }
        for v in viol {
            sink.push(v);
        }
    }
}

/// Exchanges root `a_pos` of block `i` with root `b_pos` of block `j` in
/// both the partition and the blocks, and rebuilds class B.
pub fn swap_roots(cert: &mut Certificate, i: usize, a_pos: usize, j: usize, b_pos: usize) {
    let tmp = cert.blocks[i][a_pos];
    cert.blocks[i][a_pos] = cert.blocks[j][b_pos];
    cert.blocks[j][b_pos] = tmp;
    for (k, pos) in [(i, a_pos), (j, b_pos)] {
        let root = cert.blocks[k][pos];
        let nt = cert.partition.triples.len();
        if k < nt {
            cert.partition.triples[k][pos] = root;
        } else {
            cert.partition.pairs[k - nt][pos] = root;
        }
    }
    cert.rebuild_class_b();
}
